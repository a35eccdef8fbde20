//! Bivariate polynomials over the rationals: parsing, resultants and
//! rational roots.

use ahtorus::poly::{parse_plane, UPoly};
use ahtorus::qmath::Q;
use ahtorus::serial::fmt_q;

fn roots(p: &UPoly) -> Vec<String> {
    p.rational_roots().iter().map(|(r, m): &(Q, usize)| format!("{} (multiplicity {m})", fmt_q(r))).collect()
}

fn main() {
    let f = parse_plane("u").unwrap();
    let g = parse_plane("u + v + v^2").unwrap();
    let res = g.resultant(&f, 0, 1);
    println!("Res_u({g}, {f}) = {}", res.fmt_in("v"));
    println!("rational roots: {:?}", roots(&res));

    let h = parse_plane("u^2 - 2*v").unwrap();
    let k = parse_plane("v - 1").unwrap();
    let r = h.resultant(&k, 1, 0);
    println!("Res_v({h}, {k}) = {}", r.fmt_in("u"));
    println!("rational roots: {:?}, irrational part: {}", roots(&r), r.strip_rational_roots().fmt_in("u"));

    let p = UPoly::from_i64(&[-6, 11, -6, 1]);
    println!("{} = 0 at {:?}", p.fmt_in("t"), roots(&p));
}
