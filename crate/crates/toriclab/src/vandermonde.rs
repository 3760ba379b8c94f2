//! Staircase point configurations and the generalized Vandermonde matrices
//! they induce.
//!
//! A staircase configuration for parameter l lives on 2l+1 distinct lines
//! x = x_i of the torus: l+1 full columns of 2l+1 points each, then l partial
//! columns of 2l, 2l-1, ..., l+1 points. These counts mirror the column
//! heights of the staircase polytope, so the evaluation matrix of its
//! monomials at the configuration is square. Multiplying by a unitriangular
//! change of basis, replacing the powers x^a by the falling products
//! (x - x_1)...(x - x_a), makes the matrix block upper triangular with scaled
//! ordinary Vandermonde blocks on the diagonal, which is how nonsingularity
//! is certified.

use crate::ffield::{FieldElement, FieldError, FieldSpec};
use crate::polytope::LatticePolytope;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VandermondeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("staircase parameter {l} needs 2l+1 <= q-1, but q = {q}")]
    FieldTooSmall { l: u32, q: u32 },
    #[error("expected {expected} columns, got {got}")]
    WrongColumnCount { expected: usize, got: usize },
    #[error("column {index} has {got} points, expected {expected}")]
    WrongColumnSize { index: usize, expected: usize, got: usize },
    #[error("column x values are not pairwise distinct")]
    DuplicateX,
    #[error("column {index} y values are not strictly ascending")]
    YsNotAscending { index: usize },
    #[error("configuration points must have unit coordinates")]
    NotAUnit,
    #[error("requested {requested} points but the torus has {available}")]
    SubsetTooLarge { requested: u64, available: u64 },
    #[error("polytope is not the staircase polytope for l = {l}")]
    WrongPolytope { l: u32 },
}

/// Lattice points of the staircase polytope, `7l(l+1)/2 + 1`.
pub fn staircase_size(l: u32) -> u64 {
    let l = l as u64;
    7 * l * (l + 1) / 2 + 1
}

/// Smallest subset size that forces a staircase configuration to appear:
/// `3lq - 2l^2 - 3l + 1`, one more than the torus minus the staircase code's
/// minimum distance.
pub fn threshold_size(l: u32, q: u32) -> u64 {
    let (l, q) = (l as i64, q as i64);
    (3 * l * q - 2 * l * l - 3 * l + 1) as u64
}

/// One column of a configuration: the common x coordinate and the y values,
/// stored in strictly ascending representative order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseColumn {
    pub x: FieldElement,
    pub ys: Vec<FieldElement>,
}

/// A validated staircase configuration: l+1 full columns then l partial ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseConfig {
    l: u32,
    columns: Vec<StaircaseColumn>,
}

fn required_column_size(l: u32, index: usize) -> usize {
    if index <= l as usize {
        (2 * l + 1) as usize
    } else {
        let j = index - l as usize - 1;
        (2 * l) as usize - j
    }
}

impl StaircaseConfig {
    pub fn new(
        field: &FieldSpec,
        l: u32,
        columns: Vec<StaircaseColumn>,
    ) -> Result<StaircaseConfig, VandermondeError> {
        let q = field.size();
        if 2 * l + 1 > q - 1 {
            return Err(VandermondeError::FieldTooSmall { l, q });
        }
        let expected = (2 * l + 1) as usize;
        if columns.len() != expected {
            return Err(VandermondeError::WrongColumnCount { expected, got: columns.len() });
        }
        let mut seen_x = BTreeSet::new();
        for (index, col) in columns.iter().enumerate() {
            let need = required_column_size(l, index);
            if col.ys.len() != need {
                return Err(VandermondeError::WrongColumnSize {
                    index,
                    expected: need,
                    got: col.ys.len(),
                });
            }
            if col.x.is_zero() || col.ys.iter().any(|y| y.is_zero()) {
                return Err(VandermondeError::NotAUnit);
            }
            if !seen_x.insert(col.x) {
                return Err(VandermondeError::DuplicateX);
            }
            if !col.ys.windows(2).all(|w| w[0] < w[1]) {
                return Err(VandermondeError::YsNotAscending { index });
            }
        }
        Ok(StaircaseConfig { l, columns })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn columns(&self) -> &[StaircaseColumn] {
        &self.columns
    }

    pub fn full_columns(&self) -> &[StaircaseColumn] {
        &self.columns[..=self.l as usize]
    }

    pub fn partial_columns(&self) -> &[StaircaseColumn] {
        &self.columns[self.l as usize + 1..]
    }

    /// All configuration points in column order.
    pub fn points(&self) -> Vec<(FieldElement, FieldElement)> {
        self.columns
            .iter()
            .flat_map(|c| c.ys.iter().map(move |&y| (c.x, y)))
            .collect()
    }

    pub fn size(&self) -> usize {
        self.columns.iter().map(|c| c.ys.len()).sum()
    }
}

impl std::fmt::Display for StaircaseConfig {
    /// `l=1; full: 1->1,2,3; full: 2->1,2,3; partial[0]: 3->1,2`
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "l={}", self.l)?;
        for (index, col) in self.columns.iter().enumerate() {
            if index <= self.l as usize {
                write!(f, "; full: {}->", col.x)?;
            } else {
                write!(f, "; partial[{}]: {}->", index - self.l as usize - 1, col.x)?;
            }
            for (i, y) in col.ys.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{y}")?;
            }
        }
        Ok(())
    }
}

/// Greedy search for a staircase configuration inside an arbitrary set of
/// torus points. Columns are ranked by size, largest first with smallest x
/// representative breaking ties, and each column keeps its smallest y values.
/// Matching sorted demands against sorted capacities is lossless here because
/// any column can play any role, so Some/None is an exact answer.
pub fn find_staircase(
    field: &FieldSpec,
    l: u32,
    points: &[(FieldElement, FieldElement)],
) -> Result<Option<StaircaseConfig>, VandermondeError> {
    let q = field.size();
    if 2 * l + 1 > q - 1 {
        return Err(VandermondeError::FieldTooSmall { l, q });
    }
    let mut by_x: BTreeMap<FieldElement, BTreeSet<FieldElement>> = BTreeMap::new();
    for &(x, y) in points {
        if x.is_zero() || y.is_zero() {
            return Err(VandermondeError::NotAUnit);
        }
        by_x.entry(x).or_default().insert(y);
    }
    let mut ranked: Vec<(&FieldElement, &BTreeSet<FieldElement>)> = by_x.iter().collect();
    ranked.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(b.0)));

    let needed = (2 * l + 1) as usize;
    if ranked.len() < needed {
        return Ok(None);
    }
    let mut columns = Vec::with_capacity(needed);
    for (index, &(x, ys)) in ranked[..needed].iter().enumerate() {
        let need = required_column_size(l, index);
        if ys.len() < need {
            return Ok(None);
        }
        columns.push(StaircaseColumn { x: *x, ys: ys.iter().copied().take(need).collect() });
    }
    Ok(Some(StaircaseConfig::new(field, l, columns)?))
}

/// Uniformly random valid configuration: random distinct x lines, random
/// distinct y values per column, each column sorted ascending.
pub fn random_staircase<R: Rng>(
    field: &FieldSpec,
    l: u32,
    rng: &mut R,
) -> Result<StaircaseConfig, VandermondeError> {
    let q = field.size();
    if 2 * l + 1 > q - 1 {
        return Err(VandermondeError::FieldTooSmall { l, q });
    }
    let mut xs = field.units();
    xs.shuffle(rng);
    let columns = (0..(2 * l + 1) as usize)
        .map(|index| {
            let mut ys = field.units();
            ys.shuffle(rng);
            ys.truncate(required_column_size(l, index));
            ys.sort();
            StaircaseColumn { x: xs[index], ys }
        })
        .collect();
    StaircaseConfig::new(field, l, columns)
}

/// Random subset of the torus of the requested size, without replacement.
pub fn random_torus_subset<R: Rng>(
    field: &FieldSpec,
    size: u64,
    rng: &mut R,
) -> Result<Vec<(FieldElement, FieldElement)>, VandermondeError> {
    let units = field.units();
    let available = (units.len() * units.len()) as u64;
    if size > available {
        return Err(VandermondeError::SubsetTooLarge { requested: size, available });
    }
    let mut all: Vec<(FieldElement, FieldElement)> = units
        .iter()
        .flat_map(|&x| units.iter().map(move |&y| (x, y)))
        .collect();
    all.shuffle(rng);
    all.truncate(size as usize);
    Ok(all)
}

/// Dense matrix over a finite field, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixOverField {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl MatrixOverField {
    pub fn zero(field: &FieldSpec, rows: usize, cols: usize) -> MatrixOverField {
        MatrixOverField { rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn matmul(&self, other: &MatrixOverField, field: &FieldSpec) -> MatrixOverField {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = MatrixOverField::zero(field, self.rows, other.cols);
        for r in 0..self.rows {
            for i in 0..self.cols {
                let a = self.get(r, i);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = field.mul(a, other.get(i, c));
                    out.set(r, c, field.add(out.get(r, c), add));
                }
            }
        }
        out
    }

    /// Gaussian elimination with first-nonzero pivoting.
    pub fn determinant(&self, field: &FieldSpec) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = field.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return field.zero();
            };
            if pivot != col {
                for c in 0..n {
                    let (a, b) = (m.get(col, c), m.get(pivot, c));
                    m.set(col, c, b);
                    m.set(pivot, c, a);
                }
                det = field.neg(det);
            }
            let p = m.get(col, col);
            det = field.mul(det, p);
            let inv = field.inv(p).expect("pivot is nonzero");
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = field.mul(m.get(r, col), inv);
                for c in col..n {
                    let sub = field.mul(factor, m.get(col, c));
                    m.set(r, c, field.sub(m.get(r, c), sub));
                }
            }
        }
        det
    }
}

fn staircase_rows(l: u32) -> Vec<(i64, i64)> {
    LatticePolytope::staircase(l as i64)
        .expect("l is nonnegative")
        .lattice_points()
}

/// Evaluation matrix of the staircase polytope's monomials at the
/// configuration points: rows follow the polytope's lattice points sorted by
/// x then y, columns follow the configuration in column order. The polytope
/// argument must be the staircase polytope for the configuration's parameter.
pub fn vandermonde_matrix(
    p: &LatticePolytope,
    config: &StaircaseConfig,
    field: &FieldSpec,
) -> Result<MatrixOverField, VandermondeError> {
    let l = config.l();
    if *p != LatticePolytope::staircase(l as i64).expect("l is nonnegative") {
        return Err(VandermondeError::WrongPolytope { l });
    }
    let rows = staircase_rows(l);
    let points = config.points();
    debug_assert_eq!(rows.len(), points.len());
    let mut m = MatrixOverField::zero(field, rows.len(), points.len());
    for (r, &(a, b)) in rows.iter().enumerate() {
        for (c, &(x, y)) in points.iter().enumerate() {
            m.set(r, c, field.mul(field.pow(x, a as u64), field.pow(y, b as u64)));
        }
    }
    Ok(m)
}

/// Unitriangular change of basis that replaces each monomial x^a y^b by
/// (x - x_1)...(x - x_a) y^b, where x_i runs over the configuration's column
/// lines. Acting on the left of the evaluation matrix it produces the block
/// upper triangular form; its determinant is 1.
pub fn block_triangularizer(
    config: &StaircaseConfig,
    field: &FieldSpec,
) -> MatrixOverField {
    let l = config.l();
    let rows = staircase_rows(l);
    let max_x = (2 * l) as usize;
    // falling[a] holds the coefficients of (X - x_1)...(X - x_a)
    let mut falling: Vec<Vec<FieldElement>> = Vec::with_capacity(max_x + 1);
    falling.push(vec![field.one()]);
    for a in 1..=max_x {
        let xi = config.columns()[a - 1].x;
        let prev = &falling[a - 1];
        let mut next = vec![field.zero(); a + 1];
        for (deg, &c) in prev.iter().enumerate() {
            next[deg + 1] = field.add(next[deg + 1], c);
            next[deg] = field.sub(next[deg], field.mul(xi, c));
        }
        falling.push(next);
    }
    let k = rows.len();
    let mut m = MatrixOverField::zero(field, k, k);
    for (r, &(a, yr)) in rows.iter().enumerate() {
        for (c, &(deg, yc)) in rows.iter().enumerate() {
            if yr == yc && deg <= a {
                m.set(r, c, falling[a as usize][deg as usize]);
            }
        }
    }
    m
}

/// Outcome of checking the block triangular structure of the transformed
/// evaluation matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockReport {
    /// every entry strictly below the diagonal blocks vanishes
    pub zero_pattern_ok: bool,
    /// diagonal block d equals the Vandermonde matrix of column d's y values
    /// scaled by (x_d - x_1)...(x_d - x_(d-1))
    pub diagonal_blocks_ok: bool,
    pub det_v_nonzero: bool,
    pub det_a_is_one: bool,
}

impl BlockReport {
    pub fn all_ok(&self) -> bool {
        self.zero_pattern_ok && self.diagonal_blocks_ok && self.det_v_nonzero && self.det_a_is_one
    }
}

/// Computes V, the change of basis A, and their product, then checks the
/// block structure entry by entry together with both determinants.
pub fn verify_block_structure(
    config: &StaircaseConfig,
    field: &FieldSpec,
) -> Result<BlockReport, VandermondeError> {
    let l = config.l();
    let p = LatticePolytope::staircase(l as i64).expect("l is nonnegative");
    let v = vandermonde_matrix(&p, config, field)?;
    let a = block_triangularizer(config, field);
    let m = a.matmul(&v, field);

    let rows = staircase_rows(l);
    // column group of each matrix column, 1-based
    let mut col_group = Vec::with_capacity(v.cols());
    for (index, col) in config.columns().iter().enumerate() {
        col_group.extend(std::iter::repeat(index + 1).take(col.ys.len()));
    }
    let mut zero_pattern_ok = true;
    for (r, &(x, _)) in rows.iter().enumerate() {
        for c in 0..m.cols() {
            if x as usize >= col_group[c] && !m.get(r, c).is_zero() {
                zero_pattern_ok = false;
            }
        }
    }

    let mut diagonal_blocks_ok = true;
    let mut col_offset = 0;
    for (index, col) in config.columns().iter().enumerate() {
        let d = index + 1;
        let mut scale = field.one();
        for prev in &config.columns()[..index] {
            scale = field.mul(scale, field.sub(col.x, prev.x));
        }
        // rows with x = d-1 are contiguous in the sorted lattice point order
        let row_offset = rows
            .iter()
            .position(|&(x, _)| x as usize == d - 1)
            .expect("every column height is positive");
        for (i, &(_, ypow)) in rows[row_offset..row_offset + col.ys.len()].iter().enumerate() {
            for (j, &y) in col.ys.iter().enumerate() {
                let want = field.mul(scale, field.pow(y, ypow as u64));
                if m.get(row_offset + i, col_offset + j) != want {
                    diagonal_blocks_ok = false;
                }
            }
        }
        col_offset += col.ys.len();
    }

    let det_v_nonzero = !v.determinant(field).is_zero();
    let det_a_is_one = a.determinant(field) == field.one();
    Ok(BlockReport { zero_pattern_ok, diagonal_blocks_ok, det_v_nonzero, det_a_is_one })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn full_torus(field: &FieldSpec) -> Vec<(FieldElement, FieldElement)> {
        let units = field.units();
        units
            .iter()
            .flat_map(|&x| units.iter().map(move |&y| (x, y)))
            .collect()
    }

    #[test]
    fn sizes_and_thresholds() {
        assert_eq!(staircase_size(1), 8);
        assert_eq!(staircase_size(2), 22);
        assert_eq!(staircase_size(3), 43);
        assert_eq!(threshold_size(1, 5), 11);
        assert_eq!(threshold_size(1, 7), 17);
        assert_eq!(threshold_size(2, 8), 35);
        assert_eq!(threshold_size(2, 11), 53);
        for (l, q) in [(1u32, 5u32), (1, 7), (1, 8), (2, 8), (2, 9), (2, 11), (3, 13)] {
            let torus = ((q - 1) * (q - 1)) as i64;
            let dist = (q as i64 - 1 - 2 * l as i64) * (q as i64 - 1 - l as i64);
            assert_eq!(threshold_size(l, q) as i64, torus - dist + 1, "l={l} q={q}");
        }
    }

    #[test]
    fn staircase_size_matches_polytope() {
        for l in 0..=4 {
            let p = LatticePolytope::staircase(l as i64).unwrap();
            assert_eq!(p.lattice_points().len() as u64, staircase_size(l));
        }
    }

    #[test]
    fn finds_staircase_in_full_torus() {
        let field = FieldSpec::new(5).unwrap();
        let config = find_staircase(&field, 1, &full_torus(&field)).unwrap().unwrap();
        assert_eq!(config.size(), 8);
        assert_eq!(
            config.to_string(),
            "l=1; full: 1->1,2,3; full: 2->1,2,3; partial[0]: 3->1,2"
        );
        assert_eq!(config.full_columns().len(), 2);
        assert_eq!(config.partial_columns().len(), 1);
    }

    #[test]
    fn reports_when_no_staircase_exists() {
        let field = FieldSpec::new(5).unwrap();
        let one = field.element(1).unwrap();
        // every point on a single line: not enough columns
        let line: Vec<_> = field.units().into_iter().map(|y| (one, y)).collect();
        assert_eq!(find_staircase(&field, 1, &line).unwrap(), None);
        // enough columns but one is too short to serve as the second full one
        let field7 = FieldSpec::new(7).unwrap();
        let mut pts = Vec::new();
        for x in [1u32, 2, 3] {
            let xe = field7.element(x).unwrap();
            let height = if x == 1 { 3 } else { 2 };
            for y in 1..=height {
                pts.push((xe, field7.element(y).unwrap()));
            }
        }
        assert_eq!(find_staircase(&field7, 1, &pts).unwrap(), None);
    }

    #[test]
    fn field_too_small_is_an_error() {
        let field = FieldSpec::new(5).unwrap();
        assert_eq!(
            find_staircase(&field, 2, &full_torus(&field)).unwrap_err(),
            VandermondeError::FieldTooSmall { l: 2, q: 5 }
        );
    }

    #[test]
    fn config_validation() {
        let field = FieldSpec::new(5).unwrap();
        let e = |r: u32| field.element(r).unwrap();
        let col = |x: u32, ys: &[u32]| StaircaseColumn {
            x: e(x),
            ys: ys.iter().map(|&r| e(r)).collect(),
        };
        let good = StaircaseConfig::new(
            &field,
            1,
            vec![col(1, &[1, 2, 3]), col(2, &[1, 2, 3]), col(3, &[1, 2])],
        );
        assert!(good.is_ok());
        let dup = StaircaseConfig::new(
            &field,
            1,
            vec![col(1, &[1, 2, 3]), col(1, &[1, 2, 3]), col(3, &[1, 2])],
        );
        assert_eq!(dup.unwrap_err(), VandermondeError::DuplicateX);
        let short = StaircaseConfig::new(
            &field,
            1,
            vec![col(1, &[1, 2, 3]), col(2, &[1, 2]), col(3, &[1, 2])],
        );
        assert_eq!(
            short.unwrap_err(),
            VandermondeError::WrongColumnSize { index: 1, expected: 3, got: 2 }
        );
        let unsorted = StaircaseConfig::new(
            &field,
            1,
            vec![col(1, &[1, 2, 3]), col(2, &[3, 2, 1]), col(3, &[1, 2])],
        );
        assert_eq!(unsorted.unwrap_err(), VandermondeError::YsNotAscending { index: 1 });
        let zero = StaircaseConfig::new(
            &field,
            1,
            vec![col(1, &[0, 2, 3]), col(2, &[1, 2, 3]), col(3, &[1, 2])],
        );
        assert_eq!(zero.unwrap_err(), VandermondeError::NotAUnit);
    }

    #[test]
    fn evaluation_matrix_entries() {
        let field = FieldSpec::new(5).unwrap();
        let config = find_staircase(&field, 1, &full_torus(&field)).unwrap().unwrap();
        let p = LatticePolytope::staircase(1).unwrap();
        let v = vandermonde_matrix(&p, &config, &field).unwrap();
        assert_eq!((v.rows(), v.cols()), (8, 8));
        // row of the constant monomial is all ones
        let const_row = staircase_rows(1).iter().position(|&e| e == (0, 0)).unwrap();
        for c in 0..8 {
            assert_eq!(v.get(const_row, c), field.one());
        }
        // row (1,1) at the sixth point (2,3) evaluates to 2*3 = 1
        let row_xy = staircase_rows(1).iter().position(|&e| e == (1, 1)).unwrap();
        assert_eq!(v.get(row_xy, 5), field.element(1).unwrap());

        let wrong = LatticePolytope::simplex(2).unwrap();
        assert_eq!(
            vandermonde_matrix(&wrong, &config, &field).unwrap_err(),
            VandermondeError::WrongPolytope { l: 1 }
        );
    }

    #[test]
    fn triangularizer_entries_for_unit_staircase() {
        let field = FieldSpec::new(5).unwrap();
        let config = find_staircase(&field, 1, &full_torus(&field)).unwrap().unwrap();
        let a = block_triangularizer(&config, &field);
        let rows = staircase_rows(1);
        let idx = |e: (i64, i64)| rows.iter().position(|&r| r == e).unwrap();
        let e = |r: u32| field.element(r).unwrap();
        // x_1 = 1, x_2 = 2: (X-1) has constant term -1, (X-1)(X-2) has
        // constant term 2 and linear term -3
        assert_eq!(a.get(idx((1, 0)), idx((0, 0))), field.neg(e(1)));
        assert_eq!(a.get(idx((2, 0)), idx((0, 0))), e(2));
        assert_eq!(a.get(idx((2, 0)), idx((1, 0))), field.neg(e(3)));
        assert_eq!(a.get(idx((2, 1)), idx((0, 1))), e(2));
        assert_eq!(a.get(idx((2, 1)), idx((0, 0))), field.zero());
        for r in 0..8 {
            assert_eq!(a.get(r, r), field.one());
        }
        assert_eq!(a.determinant(&field), field.one());
    }

    #[test]
    fn block_structure_on_canonical_configs() {
        for (l, q) in [(1u32, 5u32), (1, 7), (2, 7), (2, 9)] {
            let field = FieldSpec::new(q).unwrap();
            let config = find_staircase(&field, l, &full_torus(&field)).unwrap().unwrap();
            let report = verify_block_structure(&config, &field).unwrap();
            assert!(report.all_ok(), "l={l} q={q}: {report:?}");
        }
    }

    #[test]
    fn block_structure_on_random_configs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (l, q) in [(1u32, 8u32), (2, 11)] {
            let field = FieldSpec::new(q).unwrap();
            for _ in 0..5 {
                let config = random_staircase(&field, l, &mut rng).unwrap();
                assert_eq!(config.size() as u64, staircase_size(l));
                let report = verify_block_structure(&config, &field).unwrap();
                assert!(report.all_ok(), "l={l} q={q}: {report:?}");
            }
        }
    }

    #[test]
    fn random_sampling_is_seed_deterministic() {
        let field = FieldSpec::new(9).unwrap();
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        assert_eq!(
            random_staircase(&field, 2, &mut a).unwrap(),
            random_staircase(&field, 2, &mut b).unwrap()
        );
        assert_eq!(
            random_torus_subset(&field, 20, &mut a).unwrap(),
            random_torus_subset(&field, 20, &mut b).unwrap()
        );
        assert_eq!(
            random_torus_subset(&field, 100, &mut a).unwrap_err(),
            VandermondeError::SubsetTooLarge { requested: 100, available: 64 }
        );
    }

    #[test]
    fn determinant_examples() {
        let field = FieldSpec::new(5).unwrap();
        let e = |r: u32| field.element(r).unwrap();
        let mut m = MatrixOverField::zero(&field, 2, 2);
        m.set(0, 0, e(1));
        m.set(0, 1, e(2));
        m.set(1, 0, e(3));
        m.set(1, 1, e(4));
        assert_eq!(m.determinant(&field), e(3));
        let mut singular = MatrixOverField::zero(&field, 2, 2);
        singular.set(0, 0, e(2));
        singular.set(0, 1, e(4));
        singular.set(1, 0, e(1));
        singular.set(1, 1, e(2));
        assert_eq!(singular.determinant(&field), field.zero());
        let mut id = MatrixOverField::zero(&field, 3, 3);
        for i in 0..3 {
            id.set(i, i, e(1));
        }
        assert_eq!(id.determinant(&field), e(1));
        assert_eq!(id.matmul(&m_padded(&field, &m), &field), m_padded(&field, &m));
    }

    fn m_padded(field: &FieldSpec, m: &MatrixOverField) -> MatrixOverField {
        let mut out = MatrixOverField::zero(field, 3, 3);
        for r in 0..2 {
            for c in 0..2 {
                out.set(r, c, m.get(r, c));
            }
        }
        out.set(2, 2, field.one());
        out
    }
}
