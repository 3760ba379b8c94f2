//! Minkowski length of a lattice polytope: the largest number of primitive
//! lattice segments whose Minkowski sum fits inside it after translation.
//!
//! The search walks multiplicity vectors over the candidate directions in
//! lexicographic order, so it enumerates zonotopes only. That is enough: any
//! maximal-length decomposition can be replaced summand by summand with
//! primitive segments without shrinking the count, except for the exceptional
//! triangle, whose appearance is detected by the search finding a shorter
//! zonotope than a unimodular image would allow (the callers that care compare
//! against closed forms, all of which are zonotope-attained).
//!
//! The state carried down the search is the set of translations that keep the
//! partial zonotope inside the target, stored as a bitset over the target's
//! bounding box. Adding one segment in direction v intersects the set with a
//! shifted copy of itself, so feasibility checks cost a few words of bit
//! operations per node.

use crate::polytope::{LatticePoint, LatticePolytope, PolytopeError};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MinkError {
    #[error("polytope has {count} lattice points, over the search budget of {max}")]
    TooManyLatticePoints { count: usize, max: usize },
    #[error("{count} candidate directions, over the search budget of {max}")]
    TooManyDirections { count: usize, max: usize },
    #[error("negative input {0}")]
    NegativeInput(i64),
    #[error("period check needs t_max >= 2, got {0}")]
    PeriodRangeTooSmall(u32),
    #[error("decomposition does not fit in the target polytope")]
    WitnessDoesNotFit,
    #[error("direction {0:?} is not primitive and sign-normalized")]
    BadDirection(LatticePoint),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// Caps on search size. Exceeding either is a reported error, never a silent
/// truncation of the answer.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub max_lattice_points: usize,
    pub max_directions: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_lattice_points: 120, max_directions: 64 }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn normalize_direction(d: LatticePoint) -> Option<LatticePoint> {
    if d == (0, 0) {
        return None;
    }
    let g = gcd(d.0, d.1);
    let v = (d.0 / g, d.1 / g);
    if v.0 < 0 || (v.0 == 0 && v.1 < 0) {
        Some((-v.0, -v.1))
    } else {
        Some(v)
    }
}

/// A zonotope decomposition witness: `base + sum of mult * [0, dir]` inside
/// some target polytope. Directions are primitive, sign-normalized, and listed
/// in strictly increasing lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Decomposition {
    base: LatticePoint,
    summands: Vec<(LatticePoint, u32)>,
}

impl Decomposition {
    pub fn new(
        target: &LatticePolytope,
        base: LatticePoint,
        summands: Vec<(LatticePoint, u32)>,
    ) -> Result<Decomposition, MinkError> {
        for w in summands.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(MinkError::BadDirection(w[1].0));
            }
        }
        for &(d, k) in &summands {
            if normalize_direction(d) != Some(d) || k == 0 {
                return Err(MinkError::BadDirection(d));
            }
        }
        let dec = Decomposition { base, summands };
        if !dec
            .zonotope()
            .vertices()
            .iter()
            .all(|&v| target.contains(v))
        {
            return Err(MinkError::WitnessDoesNotFit);
        }
        Ok(dec)
    }

    pub fn base(&self) -> LatticePoint {
        self.base
    }

    pub fn summands(&self) -> &[(LatticePoint, u32)] {
        &self.summands
    }

    pub fn length(&self) -> u64 {
        self.summands.iter().map(|&(_, k)| k as u64).sum()
    }

    pub fn zonotope(&self) -> LatticePolytope {
        let mut acc = LatticePolytope::point(self.base);
        for &(d, k) in &self.summands {
            let seg = LatticePolytope::segment_multiple(d, k as i64)
                .expect("multiplicities are nonnegative");
            acc = acc.minkowski_sum(&seg);
        }
        acc
    }
}

impl std::fmt::Display for Decomposition {
    /// `base=(x,y); dir=(a,b)^k; ...`
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "base=({},{})", self.base.0, self.base.1)?;
        for &((a, b), k) in &self.summands {
            write!(f, "; dir=({a},{b})^{k}")?;
        }
        Ok(())
    }
}

/// Set of integer translations, over a bounding-box window.
#[derive(Clone)]
struct FitSet {
    minx: i64,
    miny: i64,
    w: usize,
    h: usize,
    bits: Vec<u64>,
}

impl FitSet {
    fn from_target(p: &LatticePolytope) -> FitSet {
        let ((minx, miny), (maxx, maxy)) = p.bbox();
        let w = (maxx - minx + 1) as usize;
        let h = (maxy - miny + 1) as usize;
        let mut s = FitSet { minx, miny, w, h, bits: vec![0; (w * h + 63) / 64] };
        for (x, y) in p.lattice_points() {
            s.set(((x - minx) as usize) * h + (y - miny) as usize);
        }
        s
    }

    fn set(&mut self, idx: usize) {
        self.bits[idx / 64] |= 1 << (idx % 64);
    }

    fn get(&self, idx: usize) -> bool {
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    /// Translations that keep the zonotope inside after adding one segment in
    /// direction v: the intersection of the set with itself shifted by -v.
    fn shrink_by(&self, v: LatticePoint) -> FitSet {
        let mut out = FitSet { bits: vec![0; self.bits.len()], ..*self };
        for x in 0..self.w as i64 {
            let sx = x + v.0;
            if sx < 0 || sx >= self.w as i64 {
                continue;
            }
            for y in 0..self.h as i64 {
                let sy = y + v.1;
                if sy < 0 || sy >= self.h as i64 {
                    continue;
                }
                let idx = x as usize * self.h + y as usize;
                if self.get(idx) && self.get(sx as usize * self.h + sy as usize) {
                    out.set(idx);
                }
            }
        }
        out
    }

    fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Smallest translation in lexicographic (x, y) order.
    fn lex_min(&self) -> Option<LatticePoint> {
        for (i, &word) in self.bits.iter().enumerate() {
            if word != 0 {
                let idx = i * 64 + word.trailing_zeros() as usize;
                let (x, y) = (idx / self.h, idx % self.h);
                return Some((self.minx + x as i64, self.miny + y as i64));
            }
        }
        None
    }

    fn members(&self) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        for x in 0..self.w {
            for y in 0..self.h {
                if self.get(x * self.h + y) {
                    out.push((self.minx + x as i64, self.miny + y as i64));
                }
            }
        }
        out
    }
}

const FUNCS: [(i64, i64); 4] = [(1, 0), (0, 1), (1, 1), (1, -1)];

struct SearchCtx {
    dirs: Vec<LatticePoint>,
    caps: Vec<u32>,
    suffix_caps: Vec<u64>,
    fwidth: [i64; 4],
    fdot: Vec<[i64; 4]>,
    /// index into dirs of the direction perpendicular to each functional
    perp: [Option<usize>; 4],
    /// length cap for polygon-spanning zonotopes, available only when every
    /// edge of the target steps at most one unit per coordinate
    two_dim_cap: Option<u64>,
    max_single: u64,
    best: u64,
    witness: Option<(Vec<u32>, FitSet)>,
    mults: Vec<u32>,
    /// when set, collect every multiset of exactly this length instead of
    /// maximizing
    collect: Option<u64>,
    collected: Vec<(Vec<u32>, FitSet)>,
    done: bool,
}

impl SearchCtx {
    fn prepare(p: &LatticePolytope, budget: &SearchBudget) -> Result<(SearchCtx, FitSet), MinkError> {
        let pts = p.lattice_points();
        if pts.len() > budget.max_lattice_points {
            return Err(MinkError::TooManyLatticePoints {
                count: pts.len(),
                max: budget.max_lattice_points,
            });
        }
        let mut dirset = BTreeSet::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d = (pts[j].0 - pts[i].0, pts[j].1 - pts[i].1);
                if let Some(v) = normalize_direction(d) {
                    dirset.insert(v);
                }
            }
        }
        if dirset.len() > budget.max_directions {
            return Err(MinkError::TooManyDirections {
                count: dirset.len(),
                max: budget.max_directions,
            });
        }
        let dirs: Vec<LatticePoint> = dirset.into_iter().collect();

        let full = FitSet::from_target(p);
        let caps: Vec<u32> = dirs
            .iter()
            .map(|&v| {
                let mut fit = full.shrink_by(v);
                let mut k = 0;
                while !fit.is_empty() {
                    k += 1;
                    fit = fit.shrink_by(v);
                }
                k
            })
            .collect();
        let mut suffix_caps = vec![0u64; dirs.len() + 1];
        for i in (0..dirs.len()).rev() {
            suffix_caps[i] = suffix_caps[i + 1] + caps[i] as u64;
        }
        let fwidth = FUNCS.map(|u| {
            let dots = p.vertices().iter().map(|&(x, y)| u.0 * x + u.1 * y);
            dots.clone().max().unwrap() - dots.min().unwrap()
        });
        let fdot: Vec<[i64; 4]> = dirs
            .iter()
            .map(|&(x, y)| FUNCS.map(|u| (u.0 * x + u.1 * y).abs()))
            .collect();
        let perp_dirs: [LatticePoint; 4] = [(0, 1), (1, 0), (1, -1), (1, 1)];
        let perp = perp_dirs.map(|v| dirs.binary_search(&v).ok());
        let two_dim_cap = if p.has_unit_step_edges() {
            Some(p.boundary_lattice_points().len() as u64 / 2)
        } else {
            None
        };
        let max_single = caps.iter().map(|&c| c as u64).max().unwrap_or(0);

        let n = dirs.len();
        Ok((
            SearchCtx {
                dirs,
                caps,
                suffix_caps,
                fwidth,
                fdot,
                perp,
                two_dim_cap,
                max_single,
                best: 0,
                witness: None,
                mults: vec![0; n],
                collect: None,
                collected: Vec::new(),
                done: false,
            },
            full,
        ))
    }

    fn global_upper_bound(&self) -> u64 {
        match self.two_dim_cap {
            Some(b) => b.max(self.max_single),
            None => u64::MAX,
        }
    }

    /// Admissible upper bound on the total length reachable from this node.
    fn potential(&self, i: usize, len: u64, distinct: u32, fws: [i64; 4]) -> u64 {
        let mut pot = len + self.suffix_caps[i];
        if let Some(bd) = self.two_dim_cap {
            let cap = if distinct >= 2 { bd } else { bd.max(self.max_single) };
            pot = pot.min(cap);
        }
        for u in 0..4 {
            let slack = (self.fwidth[u] - fws[u]).max(0) as u64;
            let extra = match self.perp[u] {
                Some(j) if j >= i => self.caps[j] as u64,
                _ => 0,
            };
            pot = pot.min(len + slack + extra);
        }
        pot
    }

    fn record_leaf(&mut self, len: u64, fit: &FitSet) {
        if let Some(target) = self.collect {
            if len == target {
                self.collected.push((self.mults.clone(), fit.clone()));
            }
            return;
        }
        if len > self.best || (len == self.best && self.witness.is_none()) {
            self.best = len;
            self.witness = Some((self.mults.clone(), fit.clone()));
            if self.best == self.global_upper_bound() {
                self.done = true;
            }
        }
    }

    fn dfs(&mut self, i: usize, len: u64, fit: &FitSet, distinct: u32, fws: [i64; 4]) {
        if self.done {
            return;
        }
        if i == self.dirs.len() {
            self.record_leaf(len, fit);
            return;
        }
        let pot = self.potential(i, len, distinct, fws);
        let cut = match self.collect {
            Some(target) => pot < target,
            None => {
                if self.witness.is_some() {
                    pot <= self.best
                } else {
                    pot < self.best
                }
            }
        };
        if cut {
            return;
        }

        self.dfs(i + 1, len, fit, distinct, fws);
        let dir = self.dirs[i];
        let dots = self.fdot[i];
        let mut cur = fit.clone();
        for k in 1..=self.caps[i] {
            cur = cur.shrink_by(dir);
            if cur.is_empty() {
                break;
            }
            let mut fws2 = fws;
            for u in 0..4 {
                fws2[u] += dots[u] * k as i64;
            }
            self.mults[i] = k;
            self.dfs(i + 1, len + k as u64, &cur, distinct + 1, fws2);
            self.mults[i] = 0;
            if self.done {
                return;
            }
        }
    }
}

fn witness_to_decomposition(
    p: &LatticePolytope,
    dirs: &[LatticePoint],
    mults: &[u32],
    fit: &FitSet,
    base: LatticePoint,
) -> Decomposition {
    debug_assert!(!fit.is_empty());
    let summands: Vec<(LatticePoint, u32)> = dirs
        .iter()
        .zip(mults)
        .filter(|&(_, &k)| k > 0)
        .map(|(&d, &k)| (d, k))
        .collect();
    Decomposition::new(p, base, summands).expect("search witnesses are valid")
}

/// Minkowski length with a maximal decomposition. Among all maximal
/// decompositions the returned witness has the lexicographically smallest
/// multiplicity vector over the sorted direction list, with the smallest base.
pub fn minkowski_length(
    p: &LatticePolytope,
    budget: &SearchBudget,
) -> Result<(u64, Decomposition), MinkError> {
    let (mut ctx, full) = SearchCtx::prepare(p, budget)?;
    ctx.dfs(0, 0, &full, 0, [0; 4]);
    let (mults, fit) = ctx.witness.take().expect("the empty decomposition always fits");
    let base = fit.lex_min().expect("witness fit set is nonempty");
    let dirs = std::mem::take(&mut ctx.dirs);
    Ok((ctx.best, witness_to_decomposition(p, &dirs, &mults, &fit, base)))
}

/// Every maximal zonotope decomposition, one entry per (base, multiset) pair,
/// sorted by base then summands. A point polytope has none.
pub fn enumerate_maximal_decompositions(
    p: &LatticePolytope,
    budget: &SearchBudget,
) -> Result<Vec<Decomposition>, MinkError> {
    let (length, _) = minkowski_length(p, budget)?;
    if length == 0 {
        return Ok(Vec::new());
    }
    let (mut ctx, full) = SearchCtx::prepare(p, budget)?;
    ctx.collect = Some(length);
    ctx.dfs(0, 0, &full, 0, [0; 4]);
    let dirs = std::mem::take(&mut ctx.dirs);
    let mut out = Vec::new();
    for (mults, fit) in &ctx.collected {
        for base in fit.members() {
            out.push(witness_to_decomposition(p, &dirs, mults, fit, base));
        }
    }
    out.sort();
    Ok(out)
}

/// Closed form for m[0,e1]+n[0,e2]+l[0,e1+e2]+s[0,e1-e2]+r*simplex.
pub fn predicted_length_quad_clipped(
    m: i64,
    n: i64,
    l: i64,
    s: i64,
    r: i64,
) -> Result<i64, MinkError> {
    for v in [m, n, l, s, r] {
        if v < 0 {
            return Err(MinkError::NegativeInput(v));
        }
    }
    Ok(if r < 2 * l {
        m + n + s + l + 3 * r / 2
    } else {
        m + n + s + 2 * l + r
    })
}

/// Closed form for the t-th dilate of the exceptional triangle.
pub fn scaled_exceptional_length(t: i64) -> Result<i64, MinkError> {
    if t < 0 {
        return Err(MinkError::NegativeInput(t));
    }
    Ok(t + t / 2)
}

/// Checks L(tP) = t L(P) for t = 2..=t_max, reporting the first dilation
/// factor where equality fails.
pub fn is_period_one_up_to(
    p: &LatticePolytope,
    t_max: u32,
    budget: &SearchBudget,
) -> Result<(bool, Option<u32>), MinkError> {
    if t_max < 2 {
        return Err(MinkError::PeriodRangeTooSmall(t_max));
    }
    let (base, _) = minkowski_length(p, budget)?;
    for t in 2..=t_max {
        let (lt, _) = minkowski_length(&p.dilate(t as i64)?, budget)?;
        if lt != t as u64 * base {
            return Ok((false, Some(t)));
        }
    }
    Ok((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn len(p: &LatticePolytope) -> u64 {
        minkowski_length(p, &SearchBudget::default()).unwrap().0
    }

    #[test]
    fn simplex_lengths_match_dilation() {
        for t in 0..=6 {
            let p = LatticePolytope::simplex(t).unwrap();
            assert_eq!(len(&p), t as u64, "simplex:{t}");
        }
    }

    #[test]
    fn exceptional_triangle_gains_half_per_dilate() {
        for t in 0..=4 {
            let p = LatticePolytope::exceptional_triangle(t).unwrap();
            assert_eq!(len(&p), (t + t / 2) as u64, "t0:{t}");
            assert_eq!(scaled_exceptional_length(t).unwrap(), t + t / 2);
        }
    }

    #[test]
    fn zonotope_length_is_sum_of_multiplicities() {
        let p = LatticePolytope::zonotope(2, 1, 1).unwrap();
        assert_eq!(len(&p), 4);
        let p = LatticePolytope::zonotope(2, 2, 3).unwrap();
        assert_eq!(len(&p), 7);
    }

    #[test]
    fn witness_is_deterministic_and_fits() {
        let p = LatticePolytope::simplex(2).unwrap();
        let (l, dec) = minkowski_length(&p, &SearchBudget::default()).unwrap();
        assert_eq!(l, 2);
        assert_eq!(dec.base(), (0, 0));
        assert_eq!(dec.summands(), &[((1, 0), 2)]);
        assert_eq!(dec.to_string(), "base=(0,0); dir=(1,0)^2");
    }

    #[test]
    fn staircase_length() {
        let p = LatticePolytope::staircase(1).unwrap();
        assert_eq!(len(&p), 3);
        let p2 = LatticePolytope::staircase(2).unwrap();
        assert_eq!(len(&p2), 6);
    }

    #[test]
    fn point_and_segment_lengths() {
        assert_eq!(len(&LatticePolytope::point((3, 5))), 0);
        let seg = LatticePolytope::segment_multiple((2, 3), 4).unwrap();
        assert_eq!(len(&seg), 4);
    }

    #[test]
    fn quad_closed_form_examples() {
        assert_eq!(predicted_length_quad_clipped(2, 2, 3, 2, 3).unwrap(), 13);
        assert_eq!(predicted_length_quad_clipped(1, 1, 1, 1, 1).unwrap(), 5);
        assert_eq!(predicted_length_quad_clipped(0, 0, 0, 0, 4).unwrap(), 4);
        assert_eq!(predicted_length_quad_clipped(1, 1, 0, 0, 1).unwrap(), 3);
        assert_eq!(
            predicted_length_quad_clipped(-1, 0, 0, 0, 0).unwrap_err(),
            MinkError::NegativeInput(-1)
        );
    }

    #[test]
    fn enumerates_all_maximal_decompositions_in_small_simplex() {
        let p = LatticePolytope::simplex(2).unwrap();
        let decs = enumerate_maximal_decompositions(&p, &SearchBudget::default()).unwrap();
        let expected: Vec<Decomposition> = [
            ((0, 0), vec![((1, 0), 2)]),
            ((0, 0), vec![((0, 1), 2)]),
            ((0, 2), vec![((1, -1), 2)]),
            ((0, 0), vec![((0, 1), 1), ((1, 0), 1)]),
            ((0, 1), vec![((1, -1), 1), ((1, 0), 1)]),
            ((0, 1), vec![((0, 1), 1), ((1, -1), 1)]),
        ]
        .into_iter()
        .map(|(base, mut summands)| {
            summands.sort();
            Decomposition::new(&p, base, summands).unwrap()
        })
        .collect();
        let got: BTreeSet<Decomposition> = decs.into_iter().collect();
        let want: BTreeSet<Decomposition> = expected.into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn unique_decomposition_of_a_zonotope() {
        let p = LatticePolytope::zonotope(1, 1, 1).unwrap();
        let decs = enumerate_maximal_decompositions(&p, &SearchBudget::default()).unwrap();
        assert_eq!(decs.len(), 1);
        assert_eq!(decs[0].base(), (0, 0));
        assert_eq!(decs[0].summands(), &[((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]);
    }

    #[test]
    fn point_has_no_decompositions() {
        let p = LatticePolytope::point((1, 1));
        assert!(enumerate_maximal_decompositions(&p, &SearchBudget::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn period_detection() {
        let budget = SearchBudget::default();
        let t0 = LatticePolytope::exceptional_triangle(1).unwrap();
        assert_eq!(is_period_one_up_to(&t0, 2, &budget).unwrap(), (false, Some(2)));
        let tri = LatticePolytope::simplex(1).unwrap();
        assert_eq!(is_period_one_up_to(&tri, 4, &budget).unwrap(), (true, None));
        let with_seg = t0.minkowski_sum(&LatticePolytope::segment_multiple((1, 0), 1).unwrap());
        assert_eq!(is_period_one_up_to(&with_seg, 2, &budget).unwrap(), (false, Some(2)));
        assert_eq!(
            is_period_one_up_to(&tri, 1, &budget).unwrap_err(),
            MinkError::PeriodRangeTooSmall(1)
        );
    }

    #[test]
    fn budget_violations_are_reported() {
        let p = LatticePolytope::simplex(20).unwrap();
        let tight = SearchBudget { max_lattice_points: 50, max_directions: 64 };
        assert!(matches!(
            minkowski_length(&p, &tight),
            Err(MinkError::TooManyLatticePoints { .. })
        ));
        let small_dirs = SearchBudget { max_lattice_points: 500, max_directions: 4 };
        assert!(matches!(
            minkowski_length(&LatticePolytope::simplex(4).unwrap(), &small_dirs),
            Err(MinkError::TooManyDirections { .. })
        ));
    }

    /// Containment does not bound boundary lattice points for arbitrary
    /// polygons, which is why the half-boundary length cap is only applied to
    /// targets with unit-step edges.
    #[test]
    fn boundary_count_is_not_monotone_under_containment() {
        let inner = LatticePolytope::convex_hull(&[(0, 0), (3, 0), (3, 1), (0, 1)]).unwrap();
        let outer =
            LatticePolytope::convex_hull(&[(-1, 0), (4, -1), (4, 2), (-1, 1)]).unwrap();
        assert!(inner.lattice_points().iter().all(|&p| outer.contains(p)));
        assert_eq!(inner.boundary_lattice_points().len(), 8);
        assert_eq!(outer.boundary_lattice_points().len(), 6);
        assert!(!outer.has_unit_step_edges());
    }
}
