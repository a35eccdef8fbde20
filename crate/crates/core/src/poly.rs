//! Polynomials with rational coefficients.
//!
//! [`UPoly`] is dense and univariate, with Euclidean division, gcd and exact
//! rational roots. [`Poly`] is sparse and multivariate over a named variable
//! list; it is printed in descending lexicographic order of exponents with
//! respect to that list.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::qmath::Q;
use crate::serial::fmt_q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyParseError {
    #[error("unexpected character {ch:?} at offset {at}")]
    Unexpected { ch: char, at: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("exponent must be a small nonnegative integer")]
    BadExponent,
    #[error("division by zero")]
    DivisionByZero,
}

/// Dense univariate polynomial, coefficients from degree 0 upwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<Q>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x - a`.
    pub fn linear_root(a: &Q) -> Self {
        Self::new(vec![-a.clone(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Distinct rational roots with multiplicities, in increasing order.
    pub fn rational_roots(&self) -> Vec<(Q, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let mut p = self.clone();
        let mut zero_mult = 0;
        while p.coeffs[0].is_zero() {
            p = UPoly::new(p.coeffs[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            out.push((Q::zero(), zero_mult));
        }
        if p.degree().unwrap_or(0) > 0 {
            let ints = integer_coefficients(&p);
            let a0 = ints[0].abs();
            let an = ints[ints.len() - 1].abs();
            let mut candidates = Vec::new();
            for num in divisors(&a0) {
                for den in divisors(&an) {
                    let c = Q::new(num.clone(), den);
                    candidates.push(c.clone());
                    candidates.push(-c);
                }
            }
            candidates.sort();
            candidates.dedup();
            for c in candidates {
                let mut m = 0;
                while p.degree().unwrap_or(0) > 0 && p.eval(&c).is_zero() {
                    p = p.div_rem(&UPoly::linear_root(&c)).0;
                    m += 1;
                }
                if m > 0 {
                    out.push((c, m));
                }
            }
        }
        out.sort();
        out
    }

    /// Part of the polynomial without rational roots: `self` divided by
    /// `(x - r)^m` for every rational root.
    pub fn strip_rational_roots(&self) -> UPoly {
        let mut p = self.clone();
        for (r, m) in self.rational_roots() {
            for _ in 0..m {
                p = p.div_rem(&UPoly::linear_root(&r)).0;
            }
        }
        p
    }

    pub fn fmt_in(&self, var: &str) -> String {
        let vars = [var.to_string()];
        Poly::from_upoly(&vars, 0, self).to_string()
    }
}

/// Scales to a primitive integer vector (clears denominators, divides by the content).
fn integer_coefficients(p: &UPoly) -> Vec<BigInt> {
    let lcm = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

/// Positive divisors of a positive integer by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let e = n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[Q], i: usize| v.get(i).cloned().unwrap_or_else(Q::zero);
        UPoly::new((0..n).map(|i| get(&self.coeffs, i) + get(&rhs.coeffs, i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &(-rhs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

/// Lagrange interpolation through `(x_i, y_i)` with distinct `x_i`.
pub fn interpolate(points: &[(Q, Q)]) -> UPoly {
    let mut acc = UPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = UPoly::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &UPoly::linear_root(xj);
                basis = basis.scale(&(xi - xj).recip());
            }
        }
        acc = &acc + &basis;
    }
    acc
}

fn det_q(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            let f = &m[r][c] / &piv;
            if f.is_zero() {
                continue;
            }
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Sylvester resultant of two univariate polynomials of formal degrees
/// `da`, `db` (coefficient vectors may be shorter).
fn sylvester_det(a: &[Q], da: usize, b: &[Q], db: usize) -> Q {
    let n = da + db;
    if n == 0 {
        return Q::one();
    }
    let get = |v: &[Q], i: usize| v.get(i).cloned().unwrap_or_else(Q::zero);
    let mut m = vec![vec![Q::zero(); n]; n];
    for r in 0..db {
        for i in 0..=da {
            m[r][r + i] = get(a, da - i);
        }
    }
    for r in 0..da {
        for i in 0..=db {
            m[db + r][r + i] = get(b, db - i);
        }
    }
    det_q(m)
}

/// Sparse multivariate polynomial over a fixed list of variable names.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(vars: &[String]) -> Self {
        Poly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: Q) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn monomial(vars: &[String], exps: Vec<u32>, c: Q) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn var(vars: &[String], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Q::one())
    }

    pub fn from_upoly(vars: &[String], i: usize, p: &UPoly) -> Self {
        let mut out = Self::zero(vars);
        for (d, c) in p.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; vars.len()];
                e[i] = d as u32;
                out.terms.insert(e, c.clone());
            }
        }
        out
    }

    pub fn parse(text: &str, vars: &[&str]) -> Result<Self, PolyParseError> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut p = Parser { src: text.as_bytes(), pos: 0, vars: &vars };
        let out = p.expr()?;
        p.skip_ws();
        match p.peek() {
            None => Ok(out),
            Some(ch) => Err(PolyParseError::Unexpected { ch: ch as char, at: p.pos }),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&vec![0; self.vars.len()]).cloned().unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.vars.len()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    fn insert_add(&mut self, e: Vec<u32>, c: Q) {
        let entry = self.terms.entry(e).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(&self.vars);
        if !c.is_zero() {
            for (e, a) in &self.terms {
                out.terms.insert(e.clone(), a * c);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(&self.vars, Q::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (e, c)| {
            let mut m = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    m *= x;
                }
            }
            acc + m
        })
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.insert_add(e2, c * Q::from_integer(e[i].into()));
            }
        }
        out
    }

    /// Replaces variable `j` by `images[j]`; all images share one variable list.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.vars.len());
        let target = images[0].vars.clone();
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::constant(&target, Q::one()), p.clone()]).collect();
        let mut out = Poly::zero(&target);
        for (e, c) in &self.terms {
            let mut m = Poly::constant(&target, c.clone());
            for (j, &k) in e.iter().enumerate() {
                while powers[j].len() <= k as usize {
                    let next = &powers[j][powers[j].len() - 1] * &images[j];
                    powers[j].push(next);
                }
                m = &m * &powers[j][k as usize];
            }
            out = &out + &m;
        }
        out
    }

    /// Sets variable `i` to `value`; the variable stays in the list with exponent 0.
    pub fn specialize(&self, i: usize, value: &Q) -> Poly {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let mut m = c.clone();
            for _ in 0..e[i] {
                m *= value;
            }
            e2[i] = 0;
            out.insert_add(e2, m);
        }
        out
    }

    /// Univariate view when at most variable `i` occurs.
    pub fn to_upoly(&self, i: usize) -> Option<UPoly> {
        let mut coeffs = vec![Q::zero(); self.degree_in(i) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return None;
            }
            coeffs[e[i] as usize] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }

    /// Coefficients with respect to variable `i`: `self = sum_d c_d * x_i^d`.
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] = 0;
            out.entry(e[i]).or_insert_with(|| Poly::zero(&self.vars)).insert_add(e2, c.clone());
        }
        out
    }

    /// Same polynomial over a larger variable list, matched by name.
    pub fn embed(&self, vars: &[String]) -> Option<Poly> {
        let map: Option<Vec<usize>> =
            self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let map = map?;
        let mut out = Poly::zero(vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; vars.len()];
            for (j, &k) in e.iter().enumerate() {
                e2[map[j]] += k;
            }
            out.insert_add(e2, c.clone());
        }
        Some(out)
    }

    /// Resultant with respect to variable `elim` of two polynomials in which
    /// only `elim` and `keep` occur, as a univariate polynomial in `keep`.
    /// Computed by evaluating the Sylvester determinant at enough points and
    /// interpolating.
    pub fn resultant(&self, other: &Poly, elim: usize, keep: usize) -> UPoly {
        let da = self.degree_in(elim) as usize;
        let db = other.degree_in(elim) as usize;
        let bound = (self.total_degree() * other.total_degree()) as usize;
        let points: Vec<(Q, Q)> = (0..=bound)
            .map(|t| {
                let x = Q::from_integer(t.into());
                let a = self.specialize(keep, &x).to_upoly(elim).expect("two-variable input");
                let b = other.specialize(keep, &x).to_upoly(elim).expect("two-variable input");
                (x, sylvester_det(a.coeffs(), da, b.coeffs(), db))
            })
            .collect();
        interpolate(&points)
    }

    /// Exponent vectors of the monomials.
    pub fn monomials(&self) -> Vec<Vec<u32>> {
        self.terms.keys().cloned().collect()
    }

    /// Whether the two polynomials differ by a nonzero constant factor.
    pub fn is_proportional(&self, other: &Poly) -> bool {
        let (Some((e1, c1)), Some((e2, c2))) = (self.terms.iter().next(), other.terms.iter().next()) else {
            return self.is_zero() && other.is_zero();
        };
        e1 == e2 && self.scale(&(c2 / c1)) == *other
    }

    /// Irreducibility over `Q` for polynomials involving at most two
    /// variables. Decided for: total degree one; univariate of degree at most
    /// three (or with a rational root); degree one in some variable (a
    /// gcd-of-coefficients test); binomials `a x^m + b y^n`. `None` otherwise.
    pub fn irreducible(&self) -> Option<bool> {
        if self.is_constant() {
            return Some(false);
        }
        if self.total_degree() == 1 {
            return Some(true);
        }
        let support = self.support_vars();
        match support.as_slice() {
            [i] => {
                let up = self.to_upoly(*i).expect("single variable");
                let deg = up.degree().unwrap_or(0);
                let has_root = !up.rational_roots().is_empty();
                match (has_root, deg) {
                    (true, _) => Some(false),
                    (false, 2 | 3) => Some(true),
                    _ => None,
                }
            }
            [a, b] => {
                for (x, y) in [(*a, *b), (*b, *a)] {
                    if self.degree_in(x) == 1 {
                        let cs = self.coefficients_in(x);
                        let c0 = cs.get(&0).and_then(|p| p.to_upoly(y)).unwrap_or_else(UPoly::zero);
                        let c1 = cs[&1].to_upoly(y).expect("two variables");
                        return Some(UPoly::gcd(&c0, &c1).degree() == Some(0));
                    }
                }
                if self.terms.len() == 2 {
                    let es: Vec<&Vec<u32>> = self.terms.keys().collect();
                    let common = (0..self.vars.len()).any(|j| es[0][j] > 0 && es[1][j] > 0);
                    if common {
                        return Some(false);
                    }
                    let pure = |e: &Vec<u32>| e.iter().filter(|&&k| k > 0).count() == 1;
                    if pure(es[0]) && pure(es[1]) {
                        let m = es[0].iter().copied().max().unwrap_or(0);
                        let n = es[1].iter().copied().max().unwrap_or(0);
                        if m.gcd(&n) == 1 {
                            return Some(true);
                        }
                    }
                }
                None
            }
            _ => None,
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "polynomials over different variables");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.vars, rhs.vars, "polynomials over different variables");
        let mut out = Poly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_add(e, c1 * c2);
            }
        }
        out
    }
}

fn fmt_monomial(vars: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = fmt_monomial(&self.vars, e);
            let neg = c.is_negative();
            let a = c.abs();
            let body = if mono.is_empty() {
                fmt_q(&a)
            } else if a.is_one() {
                mono
            } else {
                format!("{}*{}", fmt_q(&a), mono)
            };
            match (idx, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Poly, PolyParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyParseError> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(PolyParseError::DivisionByZero);
                    }
                    acc = acc.scale(&Q::new(BigInt::one(), d));
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'_' => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, PolyParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, PolyParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?.to_u32().filter(|&k| k <= 64).ok_or(PolyParseError::BadExponent)?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, PolyParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.peek() {
                Some(c) => Err(PolyParseError::Unexpected { ch: c as char, at: self.pos }),
                None => Err(PolyParseError::UnexpectedEnd),
            };
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Poly, PolyParseError> {
        self.skip_ws();
        match self.peek() {
            None => Err(PolyParseError::UnexpectedEnd),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return match self.peek() {
                        Some(c) => Err(PolyParseError::Unexpected { ch: c as char, at: self.pos }),
                        None => Err(PolyParseError::UnexpectedEnd),
                    };
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Poly::constant(self.vars, Q::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                let i = self
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| PolyParseError::UnknownVariable(name.to_string()))?;
                Ok(Poly::var(self.vars, i))
            }
            Some(c) => Err(PolyParseError::Unexpected { ch: c as char, at: self.pos }),
        }
    }
}

/// Variable list `u, v` used for plane curves.
pub fn plane_vars() -> Vec<String> {
    vec!["u".to_string(), "v".to_string()]
}

pub fn parse_plane(text: &str) -> Result<Poly, PolyParseError> {
    Poly::parse(text, &["u", "v"])
}
