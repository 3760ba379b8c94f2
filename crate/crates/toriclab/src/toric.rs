//! Toric codes from plane lattice polytopes: evaluate all monomials with
//! exponents in P at every point of the torus (F_q^*)^2.
//!
//! The minimum distance search enumerates one representative per projective
//! equivalence class of messages (first nonzero coordinate scaled to 1), since
//! scaling a codeword does not change its weight. The reported step count is
//! always the class count times the code length, independent of thread count
//! and of internal short-circuiting, so budget accounting is reproducible.

use crate::ffield::{FieldElement, FieldError, FieldSpec};
use crate::polytope::{LatticePoint, LatticePolytope};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicU32, Ordering};
use thiserror::Error;

/// Default cap on minimum-distance work, in evaluation steps.
pub const DEFAULT_STEP_BUDGET: u64 = 5_000_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ToricError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Polytope(#[from] crate::polytope::PolytopeError),
    #[error("polytope does not fit in [0, q-2]^2 for q = {q}")]
    DoesNotFitBox { q: u32 },
    #[error("minimum distance needs {required} steps, over the budget of {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error("generator matrix has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("negative input {0}")]
    NegativeInput(i64),
    #[error("monomial exponent ({x},{y}) is negative")]
    NegativeExponent { x: i64, y: i64 },
    #[error("extremal construction needs 0 <= n <= m <= t <= l <= q-1, got m={m} n={n} l={l} t={t}")]
    BadExtremalParameters { m: i64, n: i64, l: i64, t: i64 },
}

/// Polynomial in two variables, stored as sorted (exponent, coefficient)
/// terms with nonzero coefficients and nonnegative exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    terms: Vec<((i64, i64), FieldElement)>,
}

impl SparsePolynomial {
    pub fn new(
        field: &FieldSpec,
        terms: Vec<((i64, i64), FieldElement)>,
    ) -> Result<SparsePolynomial, ToricError> {
        let mut map = std::collections::BTreeMap::new();
        for ((x, y), c) in terms {
            if x < 0 || y < 0 {
                return Err(ToricError::NegativeExponent { x, y });
            }
            let slot = map.entry((x, y)).or_insert_with(|| field.zero());
            *slot = field.add(*slot, c);
        }
        map.retain(|_, c| !c.is_zero());
        Ok(SparsePolynomial { terms: map.into_iter().collect() })
    }

    pub fn constant(field: &FieldSpec, c: FieldElement) -> SparsePolynomial {
        SparsePolynomial::new(field, vec![((0, 0), c)]).expect("constant exponents are valid")
    }

    pub fn terms(&self) -> &[((i64, i64), FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &SparsePolynomial, field: &FieldSpec) -> SparsePolynomial {
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &((ax, ay), ac) in &self.terms {
            for &((bx, by), bc) in &other.terms {
                products.push(((ax + bx, ay + by), field.mul(ac, bc)));
            }
        }
        SparsePolynomial::new(field, products).expect("sums of nonnegative exponents")
    }

    pub fn evaluate(&self, field: &FieldSpec, x: FieldElement, y: FieldElement) -> FieldElement {
        let mut acc = field.zero();
        for &((a, b), c) in &self.terms {
            let m = field.mul(field.pow(x, a as u64), field.pow(y, b as u64));
            acc = field.add(acc, field.mul(c, m));
        }
        acc
    }

    /// The monomials' exponent polytope, None for the zero polynomial.
    pub fn newton_polytope(&self) -> Option<LatticePolytope> {
        let pts: Vec<LatticePoint> = self.terms.iter().map(|&(e, _)| e).collect();
        LatticePolytope::convex_hull(&pts).ok()
    }
}

/// Number of torus points where the polynomial vanishes.
pub fn count_zeros(field: &FieldSpec, poly: &SparsePolynomial) -> u64 {
    let units = field.units();
    let mut count = 0;
    for &x in &units {
        for &y in &units {
            if poly.evaluate(field, x, y).is_zero() {
                count += 1;
            }
        }
    }
    count
}

#[derive(Debug, Clone)]
pub struct ToricCode {
    field: FieldSpec,
    polytope: LatticePolytope,
    exponents: Vec<LatticePoint>,
    points: Vec<(FieldElement, FieldElement)>,
    generator: Vec<Vec<FieldElement>>,
}

impl ToricCode {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn q(&self) -> u32 {
        self.field.size()
    }

    /// Code length, the torus size (q-1)^2.
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Code dimension, the number of lattice points of the polytope.
    pub fn k(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[LatticePoint] {
        &self.exponents
    }

    /// Evaluation points in row-major order over unit representatives.
    pub fn points(&self) -> &[(FieldElement, FieldElement)] {
        &self.points
    }

    /// Rows indexed by exponent, columns by evaluation point.
    pub fn generator(&self) -> &[Vec<FieldElement>] {
        &self.generator
    }

    /// Number of projective message classes, `(q^k - 1) / (q - 1)`, saturating
    /// at u64::MAX for codes too large to ever scan.
    pub fn projective_messages(&self) -> u64 {
        let q = self.q() as u64;
        let mut total: u64 = 0;
        for _ in 0..self.k() {
            total = total.saturating_mul(q).saturating_add(1);
        }
        total
    }
}

fn rank_over_field(field: &FieldSpec, rows: &[Vec<FieldElement>]) -> usize {
    let mut m: Vec<Vec<FieldElement>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]).expect("pivot is nonzero");
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = field.mul(m[r][col], inv);
            for c in col..ncols {
                let sub = field.mul(factor, m[rank][c]);
                m[r][c] = field.sub(m[r][c], sub);
            }
        }
        rank += 1;
    }
    rank
}

/// Builds the evaluation code of P over F_q. P must sit inside [0, q-2]^2 so
/// that distinct lattice points give independent monomial evaluations; the
/// resulting generator matrix has full rank k = #P.
pub fn build_code(p: &LatticePolytope, q: u32) -> Result<ToricCode, ToricError> {
    let field = FieldSpec::new(q)?;
    if !p.fits_in_box(q as i64 - 2) {
        return Err(ToricError::DoesNotFitBox { q });
    }
    let exponents = p.lattice_points();
    let units = field.units();
    let mut points = Vec::with_capacity(units.len() * units.len());
    for &x in &units {
        for &y in &units {
            points.push((x, y));
        }
    }
    let generator: Vec<Vec<FieldElement>> = exponents
        .iter()
        .map(|&(a, b)| {
            points
                .iter()
                .map(|&(x, y)| field.mul(field.pow(x, a as u64), field.pow(y, b as u64)))
                .collect()
        })
        .collect();
    let rank = rank_over_field(&field, &generator);
    if rank != exponents.len() {
        return Err(ToricError::RankDeficient { rank, k: exponents.len() });
    }
    Ok(ToricCode { field, polytope: p.clone(), exponents, points, generator })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceResult {
    pub d: u32,
    /// Projective message classes scanned.
    pub codewords: u64,
    /// `codewords * n`, the budgeted work unit.
    pub steps: u64,
}

/// Exhaustive minimum distance over projective message classes. Errors before
/// doing any work if `codewords * n` exceeds `max_steps`.
pub fn min_distance_exhaustive(
    code: &ToricCode,
    max_steps: u64,
) -> Result<DistanceResult, ToricError> {
    let q = code.q() as usize;
    let n = code.n();
    let k = code.k();
    let codewords = code.projective_messages();
    let steps = (codewords as u128) * (n as u128);
    if steps > max_steps as u128 {
        return Err(ToricError::BudgetExceeded {
            required: u64::try_from(steps).unwrap_or(u64::MAX),
            budget: max_steps,
        });
    }
    let steps = steps as u64;

    // scaled[i][c] is c times generator row i, as raw representatives
    let scaled: Vec<Vec<Vec<u8>>> = (0..k)
        .map(|i| {
            (0..q as u32)
                .map(|c| {
                    let ce = code.field.element(c).expect("rep below q");
                    code.generator[i]
                        .iter()
                        .map(|&g| code.field.mul(ce, g).rep() as u8)
                        .collect()
                })
                .collect()
        })
        .collect();
    let add = code.field.add_table();

    // class index ranges, grouped by the position of the first nonzero
    // message coordinate: position i accounts for q^(k-1-i) classes
    let mut powq = vec![1u64; k + 1];
    for i in 1..=k {
        powq[i] = powq[i - 1] * q as u64;
    }
    let mut start = vec![0u64; k + 1];
    for i in 0..k {
        start[i + 1] = start[i] + powq[k - 1 - i];
    }
    debug_assert_eq!(start[k], codewords);

    let best = AtomicU32::new(n as u32);
    let min_weight = (0..codewords as usize)
        .into_par_iter()
        .with_min_len(1024)
        .map_init(
            || vec![0u8; n],
            |buf, idx| {
                let idx = idx as u64;
                let lead = (0..k).find(|&i| idx < start[i + 1]).expect("index in range");
                buf.copy_from_slice(&scaled[lead][1]);
                let mut rest = idx - start[lead];
                for p in (lead + 1..k).rev() {
                    let digit = (rest % q as u64) as usize;
                    rest /= q as u64;
                    if digit == 0 {
                        continue;
                    }
                    let row = &scaled[p][digit];
                    for (b, &r) in buf.iter_mut().zip(row) {
                        *b = add[*b as usize * q + r as usize];
                    }
                }
                let cap = best.load(Ordering::Relaxed);
                let mut weight = 0u32;
                for &b in buf.iter() {
                    if b != 0 {
                        weight += 1;
                        if weight >= cap {
                            return weight;
                        }
                    }
                }
                best.fetch_min(weight, Ordering::Relaxed);
                weight
            },
        )
        .min()
        .expect("at least one nonzero codeword");
    Ok(DistanceResult { d: min_weight, codewords, steps })
}

/// Largest number of torus zeros over all nonzero polynomials with support in
/// the code's polytope.
pub fn max_zeros(code: &ToricCode, max_steps: u64) -> Result<u64, ToricError> {
    let r = min_distance_exhaustive(code, max_steps)?;
    Ok(code.n() as u64 - r.d as u64)
}

/// A closed-form distance prediction together with whether the hypotheses
/// that guarantee it were verified to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prediction {
    pub d: i64,
    pub hypothesis_satisfied: bool,
}

fn check_nonnegative(vals: &[i64]) -> Result<(), ToricError> {
    for &v in vals {
        if v < 0 {
            return Err(ToricError::NegativeInput(v));
        }
    }
    Ok(())
}

fn has_divisor_in(lo: i64, hi: i64, units: i64) -> bool {
    (lo.max(1)..=hi).any(|t| units % t == 0)
}

/// Size condition under which the deformation argument pins the distance
/// exactly: the leading term q^2 dominates every Hasse-Weil error term.
fn curve_bound_holds(q: i64, affine: i64, m_bound: i64) -> bool {
    let lead = q - 1 - affine;
    lead > 0 && (lead as i128) * (lead as i128) > (m_bound as i128) * (m_bound as i128) * q as i128
}

/// Predicted distance for the zonotope with multiplicities m, n, l on
/// e1, e2, e1+e2, ordered 0 <= n <= m <= l.
pub fn predicted_min_dist_zonotope(
    m: i64,
    n: i64,
    l: i64,
    q: u32,
) -> Result<Prediction, ToricError> {
    check_nonnegative(&[m, n, l])?;
    FieldSpec::new(q)?;
    let qi = q as i64;
    let d = (qi - 1) * (qi - 1) - (m + n + l) * (qi - 1) + l * (m + n);
    let ordered = n <= m && m <= l;
    let divisor = has_divisor_in(m, l, qi - 1);
    let area = m * n + m * l + n * l;
    let small = curve_bound_holds(qi, area, (2 * area - 1).max(6));
    Ok(Prediction { d, hypothesis_satisfied: ordered && divisor && small })
}

/// Predicted distance for m e1 + n e2 + l T0 + s (e1 - e2), the clipped quad
/// whose simplex multiplicity is exactly twice its exceptional part, ordered
/// n <= m and m + 2l <= s.
pub fn predicted_min_dist_special_quad(
    m: i64,
    n: i64,
    l: i64,
    s: i64,
    q: u32,
) -> Result<Prediction, ToricError> {
    check_nonnegative(&[m, n, l, s])?;
    FieldSpec::new(q)?;
    let qi = q as i64;
    let d = (qi - 1) * (qi - 1) - (m + n + s + 4 * l) * (qi - 1) + s * (m + n + 4 * l);
    let ordered = n <= m && m + 2 * l <= s;
    let divisor = has_divisor_in(m + 2 * l, s, qi - 1);
    let affine = s * (2 * l + m) + s * (2 * l + n) + (2 * l + m) * (2 * l + n);
    let quad = LatticePolytope::quad_clipped(m, n, l, s, 2 * l)?;
    let small = curve_bound_holds(qi, affine, (quad.area2() - 1).max(6));
    Ok(Prediction { d, hypothesis_satisfied: ordered && divisor && small })
}

/// Predicted distance for the staircase polytope l*simplex + l[0,e1] + l[0,e2].
pub fn predicted_min_dist_staircase(l: i64, q: u32) -> Result<Prediction, ToricError> {
    check_nonnegative(&[l])?;
    FieldSpec::new(q)?;
    let qi = q as i64;
    let d = (qi - 1 - 2 * l) * (qi - 1 - l);
    Ok(Prediction { d, hypothesis_satisfied: qi - 2 >= 2 * l })
}

/// Builds the product polynomial attaining the zonotope code's maximum zero
/// count: factors x - a over A, y - b over B, xy - c over C, where A and B are
/// initial segments of the powers of an element of order t and C contains the
/// whole order-t subgroup padded with the smallest units outside it. Returns
/// the polynomial and its torus zero count `(m+n+l)(q-1) - ml - nl`.
pub fn construct_extremal_poly(
    m: i64,
    n: i64,
    l: i64,
    t: i64,
    q: u32,
) -> Result<(SparsePolynomial, u64), ToricError> {
    check_nonnegative(&[m, n, l, t])?;
    let field = FieldSpec::new(q)?;
    let qi = q as i64;
    if !(n <= m && m <= t && t >= 1 && t <= l && l <= qi - 1) {
        return Err(ToricError::BadExtremalParameters { m, n, l, t });
    }
    let alpha = field.element_of_order(t as u32)?;
    let powers: Vec<FieldElement> =
        (1..=t as u64).map(|i| field.pow(alpha, i)).collect();
    let mut c_set = powers.clone();
    for u in field.units() {
        if c_set.len() == l as usize {
            break;
        }
        if !powers.contains(&u) {
            c_set.push(u);
        }
    }
    let mut f = SparsePolynomial::constant(&field, field.one());
    let binomial = |lead: (i64, i64), val: FieldElement| {
        SparsePolynomial::new(&field, vec![(lead, field.one()), ((0, 0), field.neg(val))])
            .expect("binomial exponents are valid")
    };
    for &a in &powers[..m as usize] {
        f = f.mul(&binomial((1, 0), a), &field);
    }
    for &b in &powers[..n as usize] {
        f = f.mul(&binomial((0, 1), b), &field);
    }
    for &c in &c_set {
        f = f.mul(&binomial((1, 1), c), &field);
    }
    let zeros = ((m + n + l) * (qi - 1) - m * l - n * l) as u64;
    Ok((f, zeros))
}

/// One code's worth of results, in the wire order shared by every output mode.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CodeReport {
    pub polytope: String,
    pub q: u32,
    pub n: u32,
    pub k: u32,
    pub d: i64,
    pub method: String,
    pub hypothesis_satisfied: Option<bool>,
    pub steps: u64,
}
