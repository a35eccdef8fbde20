//! Evaluating a polyhedral divisor at a degree and the graded pieces of its
//! algebra `A = sum_u H^0(Y, O(D(u))) chi^u`; invariant monomials and
//! homogeneity with respect to a weight matrix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::lattice::IntMatrix;
use crate::polyhedra::{self, SupportValue};
use crate::poly::{Poly, PolyParseError};
use crate::presentation::{AHPresentation, Base, DivisorLabel};
use crate::qmath::{self, Q, QVector};
use crate::serial::fmt_q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("degree has {got} entries, the lattice has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("evaluation is unbounded below on {0}")]
    UnboundedEvaluation(String),
    #[error("curve {0} has no polynomial")]
    MissingCurve(String),
    #[error("curve {0} is not irreducible")]
    NotIrreducible(String),
    #[error("irreducibility of curve {0} is not decided by the available criteria")]
    IrreducibilityUndecided(String),
    #[error("curves {0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("polynomial is not homogeneous: {}", fmt_offenders(.0))]
    NotHomogeneous(Vec<(String, Vec<BigInt>)>),
    #[error("polynomial has {got} variables, weight matrix has {expected} rows")]
    VariableCount { expected: usize, got: usize },
    #[error(transparent)]
    Parse(#[from] PolyParseError),
}

fn fmt_offenders(v: &[(String, Vec<BigInt>)]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|(m, w)| format!("{m} has weight {}", crate::serial::fmt_int_vec(w)))
        .collect();
    parts.join(", ")
}

/// A `Q`-divisor supported on the labelled prime divisors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QDivisor(pub BTreeMap<DivisorLabel, Q>);

impl QDivisor {
    pub fn coefficient(&self, label: &DivisorLabel) -> Q {
        self.0.get(label).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient-wise `self >= other`.
    pub fn dominates(&self, other: &QDivisor) -> bool {
        let labels = self.0.keys().chain(other.0.keys());
        labels.into_iter().all(|l| self.coefficient(l) >= other.coefficient(l))
    }

    pub fn add(&self, other: &QDivisor) -> QDivisor {
        let mut out = self.clone();
        for (l, c) in &other.0 {
            *out.0.entry(l.clone()).or_insert_with(Q::zero) += c;
        }
        QDivisor(out.0)
    }

    /// Round down every coefficient.
    pub fn floor(&self) -> BTreeMap<DivisorLabel, BigInt> {
        self.0.iter().map(|(l, c)| (l.clone(), qmath::floor(c))).collect()
    }
}

impl std::fmt::Display for QDivisor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(l, c)| format!("{}*{}", fmt_q(c), l)).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for QDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (l, c) in &self.0 {
            m.serialize_entry(&l.to_string(), &crate::serial::JsonQ(c.clone()))?;
        }
        m.end()
    }
}

/// `D(u) = sum_Z min <u, Delta_Z> Z`.
pub fn evaluate(pres: &AHPresentation, u: &[BigInt]) -> Result<QDivisor, AlgebraError> {
    if u.len() != pres.lattice_rank {
        return Err(AlgebraError::DimensionMismatch { expected: pres.lattice_rank, got: u.len() });
    }
    let uq = qmath::int_to_q(u);
    let mut out = BTreeMap::new();
    for t in &pres.terms {
        match t.coefficient.support_min(&uq).expect("dimensions checked") {
            SupportValue::Finite(c) => {
                out.insert(t.label.clone(), c);
            }
            SupportValue::MinusInfinity => return Err(AlgebraError::UnboundedEvaluation(t.label.to_string())),
        }
    }
    Ok(QDivisor(out))
}

/// A graded piece on the plane: all multiples `g * h` with `h` in `Q[u, v]`,
/// where `g = prod f_i^(-floor c_i)` may have negative exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: Vec<BigInt>,
    pub factors: Vec<(DivisorLabel, Poly, BigInt)>,
}

impl GradedPiece {
    pub fn exponent(&self, label: &DivisorLabel) -> BigInt {
        self.factors.iter().find(|f| &f.0 == label).map_or_else(BigInt::zero, |f| f.2.clone())
    }

    pub fn generator(&self) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .filter(|f| !f.2.is_zero())
            .map(|(_, p, e)| if e == &BigInt::from(1) { format!("({p})") } else { format!("({p})^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.factors.iter().all(|f| !f.2.is_negative())
    }

    /// Expanded generator, when all exponents are nonnegative.
    pub fn generator_poly(&self) -> Option<Poly> {
        let vars = crate::poly::plane_vars();
        let mut g = Poly::constant(&vars, Q::from_integer(1.into()));
        for (_, p, e) in &self.factors {
            g = &g * &p.pow(e.to_u32()?);
        }
        Some(g)
    }

    /// `A_self * A_other` lies in `A_sum`: the generator of `sum` divides the
    /// product of the two generators.
    pub fn product_lands_in(&self, other: &GradedPiece, sum: &GradedPiece) -> bool {
        sum.factors
            .iter()
            .all(|(l, _, e)| self.exponent(l) + other.exponent(l) >= *e)
    }
}

impl Serialize for GradedPiece {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("degree", &self.degree.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
        let ex: BTreeMap<String, String> =
            self.factors.iter().map(|(l, _, e)| (l.to_string(), e.to_string())).collect();
        m.serialize_entry("exponents", &ex)?;
        m.serialize_entry("generator", &self.generator())?;
        m.serialize_entry("structure", "generator * Q[u,v]")?;
        m.end()
    }
}

/// Checks that the curves of a plane presentation are irreducible and
/// pairwise coprime.
pub fn validate_curves(curves: &BTreeMap<String, Poly>) -> Result<(), AlgebraError> {
    for (name, f) in curves {
        match f.irreducible() {
            Some(true) => {}
            Some(false) => return Err(AlgebraError::NotIrreducible(name.clone())),
            None => return Err(AlgebraError::IrreducibilityUndecided(name.clone())),
        }
    }
    let list: Vec<(&String, &Poly)> = curves.iter().collect();
    for (i, (a, f)) in list.iter().enumerate() {
        for (b, g) in &list[i + 1..] {
            if f.is_proportional(g) {
                return Err(AlgebraError::NotCoprime((*a).clone(), (*b).clone()));
            }
        }
    }
    Ok(())
}

/// Sections of a `Q`-divisor supported on irreducible plane curves.
pub fn sections_plane(
    divisor: &QDivisor,
    curves: &BTreeMap<String, Poly>,
    degree: &[BigInt],
) -> Result<GradedPiece, AlgebraError> {
    let mut used = BTreeMap::new();
    for label in divisor.0.keys() {
        let name = label.to_string();
        let f = curves.get(&name).ok_or_else(|| AlgebraError::MissingCurve(name.clone()))?;
        used.insert(name, f.clone());
    }
    validate_curves(&used)?;
    let factors = divisor
        .0
        .iter()
        .map(|(l, c)| (l.clone(), used[&l.to_string()].clone(), -qmath::floor(c)))
        .collect();
    Ok(GradedPiece { degree: degree.to_vec(), factors })
}

/// `A_u` of a plane presentation.
pub fn graded_piece(pres: &AHPresentation, u: &[BigInt]) -> Result<GradedPiece, AlgebraError> {
    let Base::Plane { curves } = &pres.base else {
        return Err(AlgebraError::UnsupportedShape("graded pieces are computed on the plane".into()));
    };
    sections_plane(&evaluate(pres, u)?, curves, u)
}

/// `A_u` over a toric surface: characters `w` of the surface torus with
/// `<w, v> >= -floor(D(u)_v)` for every ray `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricPiece {
    pub degree: Vec<BigInt>,
    pub bounds: Vec<(Vec<BigInt>, BigInt)>,
}

impl Serialize for ToricPiece {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let bounds: Vec<_> = self.bounds.iter().map(|(r, b)| (strs(r), b.to_string())).collect();
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("degree", &strs(&self.degree))?;
        m.serialize_entry("bounds", &bounds)?;
        m.end()
    }
}

impl ToricPiece {
    pub fn contains(&self, w: &[BigInt]) -> bool {
        self.bounds.iter().all(|(v, b)| {
            let pairing: BigInt = v.iter().zip(w).map(|(a, b)| a * b).sum();
            pairing >= *b
        })
    }
}

pub fn sections_toric(pres: &AHPresentation, u: &[BigInt]) -> Result<ToricPiece, AlgebraError> {
    let d = evaluate(pres, u)?;
    let mut bounds = Vec::new();
    for t in &pres.terms {
        let ray = t
            .ray
            .clone()
            .ok_or_else(|| AlgebraError::UnsupportedShape("toric sections need rays".into()))?;
        bounds.push((ray, -qmath::floor(&d.coefficient(&t.label))));
    }
    Ok(ToricPiece { degree: u.to_vec(), bounds })
}

/// Generator `x_i = g(w) chi^w` of the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraGenerator {
    pub name: String,
    pub weight: Vec<String>,
    pub section: String,
}

/// Generators and relations of `A(Y, D)` over the base ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub base_vars: Vec<String>,
    pub generators: Vec<AlgebraGenerator>,
    generator_weights: Vec<Vec<BigInt>>,
    pub relations: Vec<Poly>,
    pub weight_bound: u32,
}

impl Serialize for AlgebraPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("variables", &self.variables())?;
        m.serialize_entry("generators", &self.generators)?;
        let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        m.serialize_entry("relations", &rels)?;
        m.serialize_entry("weight_bound", &self.weight_bound)?;
        m.end()
    }
}

impl AlgebraPresentation {
    /// Generator names followed by the base variables; the monomial order
    /// used for printing is lexicographic in this order.
    pub fn variables(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).chain(self.base_vars.iter().cloned()).collect()
    }

    /// Weight of every variable: generators carry their degree, base
    /// variables weight zero.
    pub fn weight_of(&self, var: usize) -> Vec<BigInt> {
        let rank = self.generator_weights.first().map_or(0, Vec::len);
        self.generator_weights.get(var).cloned().unwrap_or_else(|| vec![BigInt::zero(); rank])
    }

    pub fn is_homogeneous(&self, p: &Poly) -> bool {
        let weights: Vec<Vec<BigInt>> = p
            .monomials()
            .iter()
            .map(|e| {
                let rank = self.weight_of(0).len();
                let mut w = vec![BigInt::zero(); rank];
                for (j, &k) in e.iter().enumerate() {
                    for (wi, gi) in w.iter_mut().zip(self.weight_of(j)) {
                        *wi += gi * BigInt::from(k);
                    }
                }
                w
            })
            .collect();
        weights.windows(2).all(|p| p[0] == p[1])
    }

    /// Solves one relation of the form `c * var - rest` (with `var` absent
    /// from `rest`) for `var` and substitutes into the remaining relations.
    pub fn eliminate(&self, var: &str) -> Result<AlgebraPresentation, AlgebraError> {
        let vars = self.variables();
        let idx = vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| AlgebraError::UnsupportedShape(format!("no variable {var}")))?;
        let mut e = vec![0u32; vars.len()];
        e[idx] = 1;
        let pos = self
            .relations
            .iter()
            .position(|r| r.degree_in(idx) == 1 && r.coefficients_in(idx)[&1].is_constant())
            .ok_or_else(|| AlgebraError::UnsupportedShape(format!("{var} is not solvable from a relation")))?;
        let rel = &self.relations[pos];
        let c = rel.terms()[&e].clone();
        // var = -(rel - c var) / c
        let rest = &rel.clone() - &Poly::monomial(&vars, e.clone(), c.clone());
        let value = rest.scale(&(-c.recip()));
        let new_vars: Vec<String> = vars.iter().filter(|v| *v != var).cloned().collect();
        let images: Vec<Poly> = (0..vars.len())
            .map(|j| if j == idx { value.clone() } else { Poly::var(&vars, j) })
            .collect();
        let relations = self
            .relations
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pos)
            .map(|(_, r)| r.substitute(&images).embed_dropping(&new_vars, idx))
            .collect();
        let mut out = self.clone();
        out.relations = relations;
        if idx < self.generators.len() {
            out.generators.remove(idx);
            out.generator_weights.remove(idx);
        } else {
            out.base_vars.retain(|v| v != var);
        }
        Ok(out)
    }
}

trait DropVar {
    fn embed_dropping(&self, vars: &[String], idx: usize) -> Poly;
}

impl DropVar for Poly {
    /// Restricts to the variable list without position `idx`; the variable
    /// must not occur.
    fn embed_dropping(&self, vars: &[String], idx: usize) -> Poly {
        debug_assert_eq!(self.degree_in(idx), 0);
        let mut out = Poly::zero(vars);
        for (e, c) in self.terms() {
            let mut e2 = e.clone();
            e2.remove(idx);
            out = &out + &Poly::monomial(vars, e2, c.clone());
        }
        out
    }
}

fn exponent_vector(pres: &AHPresentation, u: &[BigInt]) -> Result<Vec<BigInt>, AlgebraError> {
    let d = evaluate(pres, u)?;
    Ok(pres.terms.iter().map(|t| -qmath::floor(&d.coefficient(&t.label))).collect())
}

fn box_points(rank: usize, bound: i64) -> Vec<Vec<BigInt>> {
    let mut pts = vec![Vec::new()];
    for _ in 0..rank {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<BigInt>| {
                (-bound..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(BigInt::from(x));
                    q
                })
            })
            .collect();
    }
    pts
}

/// Generators and relations for two curves on the plane whose coefficients
/// make the algebra generated by two pairs of opposite degrees, as in
/// `Q[u, v, x1..x4] / (x1 x2 - f1, x3 x4 - f2)`. Degrees up to `weight_bound`
/// (max-norm) are searched for indecomposable pieces.
pub fn presentation_bounded(pres: &AHPresentation, weight_bound: u32) -> Result<AlgebraPresentation, AlgebraError> {
    let Base::Plane { curves } = &pres.base else {
        return Err(AlgebraError::UnsupportedShape("base must be the plane with named curves".into()));
    };
    if pres.terms.len() != 2 || pres.lattice_rank != 2 {
        return Err(AlgebraError::UnsupportedShape("need exactly two curve terms in rank two".into()));
    }
    validate_curves(curves)?;
    if weight_bound == 0 {
        return Err(AlgebraError::UnsupportedShape("weight bound must be positive".into()));
    }
    let pts = box_points(2, weight_bound as i64);
    let mut exps: BTreeMap<Vec<BigInt>, Vec<BigInt>> = BTreeMap::new();
    for u in &pts {
        exps.insert(u.clone(), exponent_vector(pres, u)?);
    }
    let zero = vec![BigInt::zero(); 2];
    let decomposable = |u: &Vec<BigInt>| {
        exps.keys().any(|a| {
            if a == &zero || a == u {
                return false;
            }
            let b: Vec<BigInt> = u.iter().zip(a).map(|(x, y)| x - y).collect();
            match exps.get(&b) {
                Some(eb) => {
                    let sum: Vec<BigInt> = exps[a].iter().zip(eb).map(|(x, y)| x + y).collect();
                    sum == exps[u]
                }
                None => false,
            }
        })
    };
    let indecomposable: Vec<Vec<BigInt>> = pts.iter().filter(|u| **u != zero && !decomposable(u)).cloned().collect();

    // pair up opposite degrees, positive representative first
    let mut pairs: Vec<(Vec<BigInt>, Vec<BigInt>)> = Vec::new();
    for w in &indecomposable {
        let minus: Vec<BigInt> = w.iter().map(|x| -x).collect();
        if !indecomposable.contains(&minus) {
            return Err(AlgebraError::UnsupportedShape(format!(
                "indecomposable degree {} has no opposite",
                crate::serial::fmt_int_vec(w)
            )));
        }
        if w > &minus {
            pairs.push((w.clone(), minus));
        }
    }
    pairs.sort_by(|a, b| b.0.cmp(&a.0));
    let dirs: Vec<QVector> = pairs.iter().map(|p| qmath::int_to_q(&p.0)).collect();
    if pairs.len() != 2 || qmath::rank(&dirs, 2) != 2 {
        return Err(AlgebraError::UnsupportedShape(format!(
            "expected two independent pairs of opposite generator degrees, found {}",
            pairs.len()
        )));
    }

    let base_vars = crate::poly::plane_vars();
    let names: Vec<String> = (1..=4).map(|i| format!("x{i}")).collect();
    let all_vars: Vec<String> = names.iter().cloned().chain(base_vars.iter().cloned()).collect();
    let mut generators = Vec::new();
    let mut generator_weights = Vec::new();
    let mut relations = Vec::new();
    for (j, (w, mw)) in pairs.iter().enumerate() {
        let mut product = Poly::constant(&all_vars, Q::from_integer(1.into()));
        for (name, deg) in [(&names[2 * j], w), (&names[2 * j + 1], mw)] {
            let piece = graded_piece(pres, deg)?;
            let g = piece.generator_poly().ok_or_else(|| {
                AlgebraError::UnsupportedShape(format!("degree {} has a non-polynomial generator", crate::serial::fmt_int_vec(deg)))
            })?;
            product = &product * &g.embed(&all_vars).expect("plane variables are included");
            generators.push(AlgebraGenerator {
                name: name.clone(),
                weight: deg.iter().map(|x| x.to_string()).collect(),
                section: format!("{} chi^{}", piece.generator(), crate::serial::fmt_int_vec(deg)),
            });
            generator_weights.push(deg.clone());
        }
        let lhs = &Poly::var(&all_vars, 2 * j) * &Poly::var(&all_vars, 2 * j + 1);
        relations.push(&lhs - &product);
    }
    Ok(AlgebraPresentation { base_vars, generators, generator_weights, relations, weight_bound })
}

/// Status of a bounded Hilbert basis search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisStatus {
    /// The bound exceeds the sum of the largest extreme ray norms.
    CertifiedComplete,
    /// Some extreme ray is longer than the bound.
    ProvablyIncomplete,
    /// Neither certificate applies.
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub bound: u32,
    pub generators: Vec<Vec<u32>>,
    pub extreme_rays: Vec<Vec<String>>,
    pub status: BasisStatus,
}

impl InvariantReport {
    /// Monomials in the given variable names, e.g. `z^2*y1*y2^2`.
    pub fn monomials(&self, vars: &[String]) -> Vec<String> {
        self.generators
            .iter()
            .map(|m| Poly::monomial(vars, m.clone(), Q::from_integer(1.into())).to_string())
            .collect()
    }
}

/// Exponent vectors `m >= 0` with `F^T m = 0` and `|m|_1 <= bound` that are
/// not sums of two nonzero such vectors.
pub fn invariant_ring_generators(f: &IntMatrix, bound: u32) -> Result<InvariantReport, AlgebraError> {
    let n = f.nrows();
    let ft = f.transpose();
    let mut found: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<(Vec<u32>, u32)> = vec![(Vec::new(), bound)];
    while let Some((prefix, left)) = stack.pop() {
        if prefix.len() == n {
            if prefix.iter().any(|&x| x > 0) {
                let m: Vec<BigInt> = prefix.iter().map(|&x| BigInt::from(x)).collect();
                if ft.apply(&m).iter().all(Zero::is_zero) {
                    found.push(prefix);
                }
            }
            continue;
        }
        for x in 0..=left {
            let mut p = prefix.clone();
            p.push(x);
            stack.push((p, left - x));
        }
    }
    found.sort();
    let leq = |a: &Vec<u32>, b: &Vec<u32>| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut generators: Vec<Vec<u32>> =
        found.iter().filter(|m| !found.iter().any(|o| o != *m && leq(o, m))).cloned().collect();
    generators.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum()).then(b.cmp(a)));

    let eqs: Vec<(QVector, Q)> = ft.to_q_rows().into_iter().map(|r| (r, Q::zero())).collect();
    let nonneg: Vec<(QVector, Q)> = (0..n)
        .map(|i| {
            let mut e = vec![Q::zero(); n];
            e[i] = Q::from_integer(1.into());
            (e, Q::zero())
        })
        .collect();
    let cone = polyhedra::vertex_enumeration(n, &eqs, &nonneg)
        .map_err(|e| AlgebraError::UnsupportedShape(e.to_string()))?
        .expect("origin is feasible");
    let rays = cone.rays();
    let mut norms: Vec<BigInt> = rays.iter().map(|r| r.iter().map(|x| x.abs()).sum()).collect();
    norms.sort();
    let dim = qmath::rank(&rays.iter().map(|r| qmath::int_to_q(r)).collect::<Vec<_>>(), n);
    let big = BigInt::from(bound);
    let status = if norms.iter().any(|x| x > &big) {
        BasisStatus::ProvablyIncomplete
    } else if norms.iter().rev().take(dim).sum::<BigInt>() <= big {
        BasisStatus::CertifiedComplete
    } else {
        BasisStatus::Unverified
    };
    Ok(InvariantReport {
        bound,
        generators,
        extreme_rays: rays.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        status,
    })
}

/// Common weight `F^T m` of all monomials `x^m` of `g`.
pub fn check_equivariant_hypersurface(f: &IntMatrix, g: &Poly) -> Result<Vec<BigInt>, AlgebraError> {
    if g.nvars() != f.nrows() {
        return Err(AlgebraError::VariableCount { expected: f.nrows(), got: g.nvars() });
    }
    let ft = f.transpose();
    let weights: Vec<(Vec<u32>, Vec<BigInt>)> = g
        .monomials()
        .into_iter()
        .map(|m| {
            let mb: Vec<BigInt> = m.iter().map(|&x| BigInt::from(x)).collect();
            let w = ft.apply(&mb);
            (m, w)
        })
        .collect();
    let Some(first) = weights.first() else {
        return Err(AlgebraError::UnsupportedShape("zero polynomial".into()));
    };
    if weights.iter().all(|(_, w)| w == &first.1) {
        return Ok(first.1.clone());
    }
    // report every monomial, grouped by weight, so the mismatch is visible
    let offenders = weights
        .iter()
        .map(|(m, w)| (Poly::monomial(g.vars(), m.clone(), Q::from_integer(1.into())).to_string(), w.clone()))
        .collect();
    Err(AlgebraError::NotHomogeneous(offenders))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_plane;
    use crate::polyhedra::Polyhedron;
    use crate::qmath::qvec;

    fn b(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn curve_model(f1: &str, f2: &str) -> AHPresentation {
        let d1 = Polyhedron::polytope(&[qvec(&[-1, 0]), qvec(&[0, 0])]).unwrap();
        let d2 = Polyhedron::polytope(&[qvec(&[0, -1]), qvec(&[0, 0])]).unwrap();
        AHPresentation::plane(
            2,
            vec![("C1".into(), parse_plane(f1).unwrap(), d1), ("C2".into(), parse_plane(f2).unwrap(), d2)],
        )
        .unwrap()
    }

    #[test]
    fn evaluation_on_linear_model() {
        let p = curve_model("u", "v");
        let d = evaluate(&p, &b(&[1, 0])).unwrap();
        assert_eq!(d.coefficient(&DivisorLabel::Curve("C1".into())), Q::from_integer((-1).into()));
        assert_eq!(d.coefficient(&DivisorLabel::Curve("C2".into())), Q::zero());
        let z = evaluate(&p, &b(&[0, 0])).unwrap();
        assert!(z.0.values().all(Zero::is_zero));
        assert!(evaluate(&p, &b(&[1])).is_err());
    }

    #[test]
    fn plane_sections_follow_the_floor_rule() {
        let curves: BTreeMap<String, Poly> = [("C1".to_string(), parse_plane("u").unwrap())].into();
        let label = DivisorLabel::Curve("C1".into());
        let d = QDivisor([(label.clone(), Q::from_integer((-1).into()))].into());
        assert_eq!(sections_plane(&d, &curves, &b(&[1, 0])).unwrap().generator(), "(u)");
        let half = QDivisor([(label.clone(), Q::new(1.into(), 2.into()))].into());
        assert_eq!(sections_plane(&half, &curves, &b(&[1, 0])).unwrap().generator(), "1");
        let zero = QDivisor([(label, Q::zero())].into());
        assert_eq!(sections_plane(&zero, &curves, &b(&[0, 0])).unwrap().generator(), "1");
    }

    #[test]
    fn linear_model_relations() {
        let alg = presentation_bounded(&curve_model("u", "v"), 2).unwrap();
        let rels: Vec<String> = alg.relations.iter().map(|r| r.to_string()).collect();
        assert_eq!(rels, vec!["x1*x2 - u", "x3*x4 - v"]);
        assert!(alg.relations.iter().all(|r| alg.is_homogeneous(r)));
    }

    #[test]
    fn curve_model_relations_after_elimination() {
        let alg = presentation_bounded(&curve_model("u", "u + v + v^2"), 2).unwrap();
        let elim = alg.eliminate("u").unwrap();
        assert_eq!(elim.relations.len(), 1);
        assert_eq!(elim.relations[0].to_string(), "-x1*x2 + x3*x4 - v^2 - v");
        assert_eq!(elim.variables(), vec!["x1", "x2", "x3", "x4", "v"]);
    }

    #[test]
    fn coincident_curves_are_rejected() {
        assert_eq!(
            presentation_bounded(&curve_model("u", "u"), 2),
            Err(AlgebraError::NotCoprime("C1".into(), "C2".into()))
        );
    }

    #[test]
    fn small_invariant_rings() {
        let hyp = IntMatrix::from_i64(&[&[1], &[-1]]);
        let r = invariant_ring_generators(&hyp, 4).unwrap();
        assert_eq!(r.generators, vec![vec![1, 1]]);
        assert_eq!(r.status, BasisStatus::CertifiedComplete);
        let ex10 = IntMatrix::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let r = invariant_ring_generators(&ex10, 4).unwrap();
        assert_eq!(r.generators, vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
        let r1 = invariant_ring_generators(&ex10, 1).unwrap();
        assert_eq!(r1.status, BasisStatus::ProvablyIncomplete);
    }

    #[test]
    fn homogeneity() {
        let ex10 = IntMatrix::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let vars = ["x1", "x2", "x3", "x4"];
        let g = Poly::parse("x1", &vars).unwrap();
        assert_eq!(check_equivariant_hypersurface(&ex10, &g).unwrap(), b(&[1, 0]));
        let h = Poly::parse("x1 + x2", &vars).unwrap();
        assert!(matches!(check_equivariant_hypersurface(&ex10, &h), Err(AlgebraError::NotHomogeneous(_))));
    }
}
