//! Exact rational linear algebra on dense row lists.
//!
//! Everything here works on `Vec<Q>` rows; matrices are slices of rows. The
//! routines are small and intentionally naive: all callers operate at desk
//! scale (ambient dimension at most 16).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

/// Vector of exact rationals (an element of `N_R` or `M_R`).
pub type QVector = Vec<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(xs: &[i64]) -> QVector {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn int_to_q(xs: &[BigInt]) -> QVector {
    xs.iter().cloned().map(Q::from_integer).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Q], b: &[Q]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Q, a: &[Q]) -> QVector {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Q]) -> QVector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Scales a nonzero rational vector to the primitive integer vector with the
/// same direction. Returns `None` on the zero vector.
pub fn primitive_direction(a: &[Q]) -> Option<Vec<BigInt>> {
    if is_zero_vec(a) {
        return None;
    }
    let lcm = a
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = a.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Some(ints.into_iter().map(|x| x / &g).collect())
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[QVector], ncols: usize) -> (Vec<QVector>, Vec<usize>) {
    let mut m: Vec<QVector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[QVector], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : row . x = 0 for all rows}`, one vector per free column.
pub fn nullspace(rows: &[QVector], ncols: usize) -> Vec<QVector> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Canonical basis of the span of `vectors`: the rows of its reduced echelon
/// form, each rescaled to a primitive integer vector with positive pivot.
pub fn canonical_span(vectors: &[QVector], ncols: usize) -> Vec<QVector> {
    let (r, _) = rref(vectors, ncols);
    r.iter()
        .map(|row| int_to_q(&primitive_direction(row).expect("rref rows are nonzero")))
        .collect()
}

/// Solves `A x = b` for a square or overdetermined consistent system. Returns
/// one solution (free variables set to zero) or `None` if inconsistent.
pub fn solve(a: &[QVector], b: &[Q], ncols: usize) -> Option<QVector> {
    let aug: Vec<QVector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`.
pub fn project_off(v: &[Q], basis: &[QVector]) -> QVector {
    if basis.is_empty() {
        return v.to_vec();
    }
    let k = basis.len();
    let gram: Vec<QVector> = basis
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: Vec<Q> = basis.iter().map(|a| dot(a, v)).collect();
    let coeffs = solve(&gram, &rhs, k).expect("basis is linearly independent");
    let mut out = v.to_vec();
    for (c, b) in coeffs.iter().zip(basis) {
        for (o, bi) in out.iter_mut().zip(b) {
            *o -= c * bi;
        }
    }
    out
}

/// Lexicographic comparison helper for rational vectors.
pub fn lex_cmp(a: &[Q], b: &[Q]) -> std::cmp::Ordering {
    a.cmp(b)
}

pub fn floor(x: &Q) -> BigInt {
    x.floor().to_integer()
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_single_row() {
        let ns = nullspace(&[qvec(&[1, 1, 0])], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(v, &qvec(&[1, 1, 0])).is_zero());
        }
    }

    #[test]
    fn primitive_direction_clears_denominators() {
        let v = vec![qfrac(1, 2), qfrac(-3, 4)];
        assert_eq!(
            primitive_direction(&v).unwrap(),
            vec![BigInt::from(2), BigInt::from(-3)]
        );
        assert!(primitive_direction(&[q(0), q(0)]).is_none());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = vec![qvec(&[1, 1]), qvec(&[1, 1])];
        assert!(solve(&a, &[q(1), q(2)], 2).is_none());
        let x = solve(&a, &[q(3), q(3)], 2).unwrap();
        assert_eq!(x[0].clone() + x[1].clone(), q(3));
    }

    #[test]
    fn projection_is_orthogonal() {
        let basis = vec![qvec(&[1, 1, 0])];
        let p = project_off(&qvec(&[2, 0, 5]), &basis);
        assert_eq!(p, qvec(&[1, -1, 5]));
    }
}
