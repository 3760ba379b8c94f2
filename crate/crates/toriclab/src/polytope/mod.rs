//! Lattice polytopes in the plane: points, segments, and polygons with
//! integer vertices, all kept in a canonical form so equality is structural.
//!
//! The canonical form lists vertices counterclockwise starting from the
//! lexicographically smallest one; degenerate polytopes keep the minimal
//! vertex set (one point, or the two endpoints of a segment).

mod dsl;

pub use dsl::{parse_polytope, DslError};

use thiserror::Error;

pub type LatticePoint = (i64, i64);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("cannot build a polytope from an empty point set")]
    EmptyPointSet,
    #[error("dilation factor {0} is negative")]
    NegativeDilation(i64),
    #[error("matrix with determinant {0} is not unimodular")]
    NotUnimodular(i64),
    #[error("multiplier {0} is negative")]
    NegativeMultiplier(i64),
}

fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn div_floor(a: i64, b: i64) -> i64 {
    debug_assert!(b != 0);
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

/// A convex lattice polytope of dimension 0, 1, or 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    vertices: Vec<LatticePoint>,
}

impl LatticePolytope {
    /// Convex hull of a nonempty point set, in canonical form. Collinear and
    /// duplicate input points are dropped.
    pub fn convex_hull(points: &[LatticePoint]) -> Result<LatticePolytope, PolytopeError> {
        if points.is_empty() {
            return Err(PolytopeError::EmptyPointSet);
        }
        let mut pts = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        if pts.len() == 1 {
            return Ok(LatticePolytope { vertices: pts });
        }
        // monotone chain; popping on cross <= 0 keeps only strict turns
        let mut lower: Vec<LatticePoint> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<LatticePoint> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        if lower.len() == 1 && upper.len() == 1 {
            // collinear input: keep the two extreme points
            let vertices = vec![pts[0], *pts.last().unwrap()];
            return Ok(LatticePolytope { vertices });
        }
        lower.extend(upper);
        Ok(LatticePolytope { vertices: lower })
    }

    pub fn point(p: LatticePoint) -> LatticePolytope {
        LatticePolytope { vertices: vec![p] }
    }

    /// c copies of the segment from the origin to v; c = 0 gives the origin.
    pub fn segment_multiple(v: LatticePoint, c: i64) -> Result<LatticePolytope, PolytopeError> {
        if c < 0 {
            return Err(PolytopeError::NegativeMultiplier(c));
        }
        Self::convex_hull(&[(0, 0), (c * v.0, c * v.1)])
    }

    /// The standard simplex conv{(0,0),(r,0),(0,r)}.
    pub fn simplex(r: i64) -> Result<LatticePolytope, PolytopeError> {
        if r < 0 {
            return Err(PolytopeError::NegativeMultiplier(r));
        }
        Self::convex_hull(&[(0, 0), (r, 0), (0, r)])
    }

    /// t-th dilate of the exceptional triangle conv{(0,0),(2,1),(1,2)}, the
    /// smallest lattice triangle whose Minkowski length exceeds its lattice
    /// diameter under dilation.
    pub fn exceptional_triangle(t: i64) -> Result<LatticePolytope, PolytopeError> {
        if t < 0 {
            return Err(PolytopeError::NegativeMultiplier(t));
        }
        Self::convex_hull(&[(0, 0), (2 * t, t), (t, 2 * t)])
    }

    /// m[0,e1] + n[0,e2] + l[0,e1+e2].
    pub fn zonotope(m: i64, n: i64, l: i64) -> Result<LatticePolytope, PolytopeError> {
        let s = Self::segment_multiple((1, 0), m)?
            .minkowski_sum(&Self::segment_multiple((0, 1), n)?);
        Ok(s.minkowski_sum(&Self::segment_multiple((1, 1), l)?))
    }

    /// m[0,e1] + n[0,e2] + l[0,e1+e2] + s[0,e1-e2] + r*simplex, translated by
    /// (0, s) so the polytope sits in the nonnegative quadrant.
    pub fn quad_clipped(
        m: i64,
        n: i64,
        l: i64,
        s: i64,
        r: i64,
    ) -> Result<LatticePolytope, PolytopeError> {
        let z = Self::zonotope(m, n, l)?
            .minkowski_sum(&Self::segment_multiple((1, -1), s)?);
        Ok(z.minkowski_sum(&Self::simplex(r)?).translate((0, s)))
    }

    /// l*simplex + l[0,e1] + l[0,e2], the row-staircase polytope.
    pub fn staircase(l: i64) -> Result<LatticePolytope, PolytopeError> {
        Ok(Self::simplex(l)?
            .minkowski_sum(&Self::segment_multiple((1, 0), l)?)
            .minkowski_sum(&Self::segment_multiple((0, 1), l)?))
    }

    /// Canonical vertex list: counterclockwise from the lexicographically
    /// smallest vertex.
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn dim(&self) -> u8 {
        match self.vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    pub fn bbox(&self) -> (LatticePoint, LatticePoint) {
        let xs = self.vertices.iter().map(|v| v.0);
        let ys = self.vertices.iter().map(|v| v.1);
        (
            (xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            (xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    pub fn minkowski_sum(&self, other: &LatticePolytope) -> LatticePolytope {
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for &a in &self.vertices {
            for &b in &other.vertices {
                sums.push((a.0 + b.0, a.1 + b.1));
            }
        }
        LatticePolytope::convex_hull(&sums).expect("sum of nonempty sets is nonempty")
    }

    pub fn dilate(&self, t: i64) -> Result<LatticePolytope, PolytopeError> {
        if t < 0 {
            return Err(PolytopeError::NegativeDilation(t));
        }
        let scaled: Vec<LatticePoint> =
            self.vertices.iter().map(|&(x, y)| (t * x, t * y)).collect();
        LatticePolytope::convex_hull(&scaled)
    }

    pub fn translate(&self, d: LatticePoint) -> LatticePolytope {
        let moved: Vec<LatticePoint> =
            self.vertices.iter().map(|&(x, y)| (x + d.0, y + d.1)).collect();
        LatticePolytope { vertices: moved }
    }

    /// Image under x -> Mx + t. M must have determinant +-1 so the lattice
    /// and its point counts are preserved.
    pub fn apply_unimodular(
        &self,
        m: [[i64; 2]; 2],
        t: LatticePoint,
    ) -> Result<LatticePolytope, PolytopeError> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.abs() != 1 {
            return Err(PolytopeError::NotUnimodular(det));
        }
        let mapped: Vec<LatticePoint> = self
            .vertices
            .iter()
            .map(|&(x, y)| (m[0][0] * x + m[0][1] * y + t.0, m[1][0] * x + m[1][1] * y + t.1))
            .collect();
        LatticePolytope::convex_hull(&mapped)
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        match self.dim() {
            0 => self.vertices[0] == p,
            1 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                cross(a, b, p) == 0
                    && p.0 >= a.0.min(b.0)
                    && p.0 <= a.0.max(b.0)
                    && p.1 >= a.1.min(b.1)
                    && p.1 <= a.1.max(b.1)
            }
            _ => {
                let n = self.vertices.len();
                (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0)
            }
        }
    }

    /// True if every vertex lies in the box [0,b] x [0,b].
    pub fn fits_in_box(&self, b: i64) -> bool {
        self.vertices
            .iter()
            .all(|&(x, y)| x >= 0 && x <= b && y >= 0 && y <= b)
    }

    /// All lattice points, sorted by x then y. This order is a contract:
    /// downstream code indexes code monomials and matrix rows by it.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        match self.dim() {
            0 => vec![self.vertices[0]],
            1 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                let (dx, dy) = (b.0 - a.0, b.1 - a.1);
                let g = gcd(dx, dy);
                let step = (dx / g, dy / g);
                let mut pts: Vec<LatticePoint> = (0..=g)
                    .map(|i| (a.0 + i * step.0, a.1 + i * step.1))
                    .collect();
                pts.sort_unstable();
                pts
            }
            _ => {
                let ((minx, _), (maxx, _)) = self.bbox();
                let mut pts = Vec::new();
                for x in minx..=maxx {
                    if let Some((lo, hi)) = self.column_range(x) {
                        for y in lo..=hi {
                            pts.push((x, y));
                        }
                    }
                }
                pts
            }
        }
    }

    /// y-range of the column at fixed x, from the edge half-plane constraints.
    fn column_range(&self, x: i64) -> Option<(i64, i64)> {
        let n = self.vertices.len();
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            // interior side of edge a->b: (b-a) x (p-a) >= 0
            let c = b.0 - a.0;
            let rhs = c * a.1 + (b.1 - a.1) * (x - a.0);
            if c > 0 {
                lo = lo.max(div_ceil(rhs, c));
            } else if c < 0 {
                hi = hi.min(div_floor(rhs, c));
            } else if -(b.1 - a.1) * (x - a.0) < 0 {
                return None;
            }
        }
        if lo <= hi {
            Some((lo, hi))
        } else {
            None
        }
    }

    /// Lattice points on the topological boundary, sorted by x then y. For a
    /// polygon the count equals the sum of edge gcds; for lower-dimensional
    /// polytopes every lattice point is boundary.
    pub fn boundary_lattice_points(&self) -> Vec<LatticePoint> {
        if self.dim() < 2 {
            return self.lattice_points();
        }
        let n = self.vertices.len();
        let mut pts = Vec::new();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let g = gcd(dx, dy);
            let step = (dx / g, dy / g);
            for j in 0..g {
                pts.push((a.0 + j * step.0, a.1 + j * step.1));
            }
        }
        pts.sort_unstable();
        pts
    }

    /// Twice the Euclidean area (shoelace); an integer for lattice polytopes.
    pub fn area2(&self) -> i64 {
        if self.dim() < 2 {
            return 0;
        }
        let n = self.vertices.len();
        let mut s = 0;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            s += a.0 * b.1 - b.0 * a.1;
        }
        s.abs()
    }

    /// Largest number of unit lattice steps on a segment between two lattice
    /// points of the polytope.
    pub fn lattice_diameter(&self) -> i64 {
        let pts = self.lattice_points();
        let mut best = 0;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                best = best.max(gcd(pts[j].0 - pts[i].0, pts[j].1 - pts[i].1));
            }
        }
        best
    }

    /// True if every boundary edge advances at most one lattice unit per step
    /// in each coordinate. For such polygons every lattice line meets the
    /// boundary in lattice points, which justifies the boundary-count pruning
    /// bound used by the Minkowski length search.
    pub(crate) fn has_unit_step_edges(&self) -> bool {
        if self.dim() < 2 {
            return false;
        }
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let g = gcd(dx, dy);
            (dx / g).abs() <= 1 && (dy / g).abs() <= 1
        })
    }
}

impl std::fmt::Display for LatticePolytope {
    /// Canonical serialization: `(x1,y1);(x2,y2);...`
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (x, y)) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "({x},{y})")?;
        }
        Ok(())
    }
}

/// Smallest integer translation making `zono` a subset of `target`, scanning
/// offsets in lexicographic order, or None. Checking vertices suffices since
/// both sets are convex.
pub fn translate_fits(zono: &LatticePolytope, target: &LatticePolytope) -> Option<LatticePoint> {
    let (zmin, zmax) = zono.bbox();
    let (tmin, tmax) = target.bbox();
    for dx in (tmin.0 - zmin.0)..=(tmax.0 - zmax.0) {
        for dy in (tmin.1 - zmin.1)..=(tmax.1 - zmax.1) {
            if zono
                .vertices()
                .iter()
                .all(|&(x, y)| target.contains((x + dx, y + dy)))
            {
                return Some((dx, dy));
            }
        }
    }
    None
}

/// Random unimodular map (matrix with determinant +-1 plus translation) with
/// small entries, for invariance testing.
pub fn random_unimodular_map<R: rand::Rng>(rng: &mut R) -> ([[i64; 2]; 2], LatticePoint) {
    const GENS: [[[i64; 2]; 2]; 5] = [
        [[1, 1], [0, 1]],
        [[1, -1], [0, 1]],
        [[1, 0], [1, 1]],
        [[1, 0], [-1, 1]],
        [[0, 1], [1, 0]],
    ];
    loop {
        let mut m = [[1, 0], [0, 1]];
        for _ in 0..rng.gen_range(1..=4) {
            let g = GENS[rng.gen_range(0..GENS.len())];
            m = [
                [
                    g[0][0] * m[0][0] + g[0][1] * m[1][0],
                    g[0][0] * m[0][1] + g[0][1] * m[1][1],
                ],
                [
                    g[1][0] * m[0][0] + g[1][1] * m[1][0],
                    g[1][0] * m[0][1] + g[1][1] * m[1][1],
                ],
            ];
        }
        if m.iter().flatten().all(|e| e.abs() <= 6) {
            let t = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
            return (m, t);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hull(pts: &[LatticePoint]) -> LatticePolytope {
        LatticePolytope::convex_hull(pts).unwrap()
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let p = hull(&[(0, 0), (1, 2), (2, 1), (1, 1)]);
        assert_eq!(p.vertices(), &[(0, 0), (2, 1), (1, 2)]);
        let seg = hull(&[(0, 0), (2, 2), (1, 1)]);
        assert_eq!(seg.vertices(), &[(0, 0), (2, 2)]);
        assert_eq!(seg.dim(), 1);
        let pt = hull(&[(3, 4), (3, 4)]);
        assert_eq!(pt.vertices(), &[(3, 4)]);
        assert_eq!(pt.dim(), 0);
        let collinear = hull(&[(0, 0), (1, 0), (2, 0), (0, 1)]);
        assert_eq!(collinear.vertices(), &[(0, 0), (2, 0), (0, 1)]);
    }

    #[test]
    fn canonical_order_is_ccw_from_lex_min() {
        let square = hull(&[(1, 1), (0, 1), (1, 0), (0, 0)]);
        assert_eq!(square.vertices(), &[(0, 0), (1, 0), (1, 1), (0, 1)]);
    }

    #[test]
    fn minkowski_sum_examples() {
        let e1 = LatticePolytope::segment_multiple((1, 0), 1).unwrap();
        let e2 = LatticePolytope::segment_multiple((0, 1), 1).unwrap();
        let square = e1.minkowski_sum(&e2);
        assert_eq!(square.vertices(), &[(0, 0), (1, 0), (1, 1), (0, 1)]);

        let hex = LatticePolytope::zonotope(1, 1, 1).unwrap();
        assert_eq!(
            hex.vertices(),
            &[(0, 0), (1, 0), (2, 1), (2, 2), (1, 2), (0, 1)]
        );
    }

    #[test]
    fn dilation() {
        let d = LatticePolytope::simplex(1).unwrap().dilate(3).unwrap();
        assert_eq!(d, LatticePolytope::simplex(3).unwrap());
        let origin = d.dilate(0).unwrap();
        assert_eq!(origin.vertices(), &[(0, 0)]);
        assert!(d.dilate(-1).is_err());
    }

    #[test]
    fn lattice_point_enumeration() {
        assert_eq!(
            LatticePolytope::simplex(1).unwrap().lattice_points(),
            vec![(0, 0), (0, 1), (1, 0)]
        );
        assert_eq!(LatticePolytope::zonotope(1, 1, 1).unwrap().lattice_points().len(), 7);
        let st = LatticePolytope::staircase(1).unwrap();
        assert_eq!(
            st.lattice_points(),
            vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1)]
        );
        let seg = hull(&[(0, 0), (3, 3)]);
        assert_eq!(seg.lattice_points(), vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
    }

    #[test]
    fn boundary_counts() {
        let square = hull(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(square.boundary_lattice_points().len(), 4);
        let t0 = LatticePolytope::exceptional_triangle(1).unwrap();
        assert_eq!(t0.boundary_lattice_points().len(), 3);
        let q = LatticePolytope::quad_clipped(1, 1, 1, 1, 1).unwrap();
        assert_eq!(q.boundary_lattice_points().len(), 11);
        // sum of edge gcds equals the count
        let verts = q.vertices();
        let g: i64 = (0..verts.len())
            .map(|i| {
                let a = verts[i];
                let b = verts[(i + 1) % verts.len()];
                super::gcd(b.0 - a.0, b.1 - a.1)
            })
            .sum();
        assert_eq!(g as usize, q.boundary_lattice_points().len());
    }

    #[test]
    fn area2_examples() {
        assert_eq!(LatticePolytope::simplex(1).unwrap().area2(), 1);
        assert_eq!(LatticePolytope::zonotope(1, 1, 1).unwrap().area2(), 6);
        assert_eq!(LatticePolytope::exceptional_triangle(1).unwrap().area2(), 3);
        assert_eq!(hull(&[(0, 0), (4, 4)]).area2(), 0);
    }

    #[test]
    fn pick_identity_on_small_shapes() {
        for p in [
            LatticePolytope::simplex(3).unwrap(),
            LatticePolytope::zonotope(2, 1, 1).unwrap(),
            LatticePolytope::quad_clipped(1, 1, 1, 1, 2).unwrap(),
            LatticePolytope::exceptional_triangle(2).unwrap(),
            LatticePolytope::staircase(2).unwrap(),
        ] {
            let interior =
                p.lattice_points().len() as i64 - p.boundary_lattice_points().len() as i64;
            assert_eq!(
                p.area2(),
                2 * interior + p.boundary_lattice_points().len() as i64 - 2,
                "pick fails on {p}"
            );
        }
    }

    #[test]
    fn unimodular_maps() {
        let t0 = LatticePolytope::exceptional_triangle(1).unwrap();
        let sheared = t0.apply_unimodular([[1, 0], [1, 1]], (0, 0)).unwrap();
        assert_eq!(sheared.vertices(), &[(0, 0), (2, 3), (1, 3)]);
        assert_eq!(sheared.area2(), t0.area2());
        assert_eq!(sheared.lattice_points().len(), t0.lattice_points().len());
        assert_eq!(
            t0.apply_unimodular([[2, 0], [0, 1]], (0, 0)).unwrap_err(),
            PolytopeError::NotUnimodular(2)
        );
    }

    #[test]
    fn containment() {
        let tri = LatticePolytope::simplex(2).unwrap();
        assert!(tri.contains((1, 1)));
        assert!(tri.contains((0, 2)));
        assert!(!tri.contains((2, 1)));
        let seg = hull(&[(0, 0), (2, 2)]);
        assert!(seg.contains((1, 1)));
        assert!(!seg.contains((1, 0)));
        assert!(!seg.contains((3, 3)));
    }

    #[test]
    fn box_membership() {
        assert!(LatticePolytope::simplex(3).unwrap().fits_in_box(3));
        assert!(!LatticePolytope::simplex(4).unwrap().fits_in_box(3));
        assert!(!hull(&[(-1, 0), (1, 0)]).fits_in_box(3));
    }

    #[test]
    fn translate_fitting() {
        let square = hull(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let tri = LatticePolytope::simplex(1).unwrap();
        assert_eq!(translate_fits(&square, &tri), None);
        let seg2 = LatticePolytope::segment_multiple((1, 0), 2).unwrap();
        let tri2 = LatticePolytope::simplex(2).unwrap();
        assert_eq!(translate_fits(&seg2, &tri2), Some((0, 0)));
        let diag = LatticePolytope::segment_multiple((1, -1), 1).unwrap();
        assert_eq!(translate_fits(&diag, &tri2), Some((0, 1)));
    }

    #[test]
    fn diameters() {
        assert_eq!(LatticePolytope::simplex(1).unwrap().lattice_diameter(), 1);
        assert_eq!(LatticePolytope::simplex(3).unwrap().lattice_diameter(), 3);
        assert_eq!(LatticePolytope::exceptional_triangle(1).unwrap().lattice_diameter(), 1);
        assert_eq!(LatticePolytope::point((2, 2)).lattice_diameter(), 0);
    }

    #[test]
    fn column_ranges_handle_slanted_edges() {
        // triangle with non-integral slice extremes
        let p = hull(&[(0, 0), (2, 1), (2, -1)]);
        assert_eq!(
            p.lattice_points(),
            vec![(0, 0), (1, 0), (2, -1), (2, 0), (2, 1)]
        );
    }

    #[test]
    fn serialization_round_trip_shape() {
        let p = LatticePolytope::zonotope(1, 1, 1).unwrap();
        assert_eq!(p.to_string(), "(0,0);(1,0);(2,1);(2,2);(1,2);(0,1)");
    }

    #[test]
    fn unit_step_edge_detection() {
        assert!(LatticePolytope::quad_clipped(2, 2, 3, 2, 3).unwrap().has_unit_step_edges());
        assert!(LatticePolytope::simplex(4).unwrap().has_unit_step_edges());
        assert!(!LatticePolytope::exceptional_triangle(1).unwrap().has_unit_step_edges());
        assert!(!hull(&[(0, 0), (2, 1), (0, 1)]).has_unit_step_edges());
    }
}
