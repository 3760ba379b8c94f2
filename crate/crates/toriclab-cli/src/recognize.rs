//! Recognizers for the polytope families with closed-form distance
//! predictions. Parameters are read off the bounding box, then confirmed by
//! rebuilding the family member and comparing polytopes exactly, so a false
//! positive is impossible.

use toriclab::polytope::LatticePolytope;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// `l*simplex + l[0,e1] + l[0,e2]`.
    Staircase { l: i64 },
    /// `m[0,e1] + n[0,e2] + l[0,e1+e2]`, reordered so n <= m <= l. The family
    /// is symmetric under permuting the three directions, so the reordered
    /// parameters name a unimodular image with the same code metrics.
    Zonotope { m: i64, n: i64, l: i64 },
    /// `m[0,e1] + n[0,e2] + l[0,e1+e2] + s[0,e1-e2] + 2l*simplex`, reordered
    /// so n <= m; swapping m and n reflects the polytope across the diagonal.
    SpecialQuad { m: i64, n: i64, l: i64, s: i64 },
}

/// Matches a polytope, up to translation, against the families above. The
/// staircase check runs first since a staircase is never a zonotope or a
/// special quad for l > 0, and the zonotope check runs before the quad check
/// so rectangles report the zonotope form.
pub fn recognize(p: &LatticePolytope) -> Option<Shape> {
    let ((minx, miny), (maxx, maxy)) = p.bbox();
    let norm = p.translate((-minx, -miny));
    let (xe, ye) = (maxx - minx, maxy - miny);

    if xe == ye && ye % 2 == 0 {
        let l = ye / 2;
        if LatticePolytope::staircase(l).ok().as_ref() == Some(&norm) {
            return Some(Shape::Staircase { l });
        }
    }

    for l in 0..=xe.min(ye) {
        let (m, n) = (xe - l, ye - l);
        if LatticePolytope::zonotope(m, n, l).ok().as_ref() == Some(&norm) {
            let mut v = [m, n, l];
            v.sort();
            return Some(Shape::Zonotope { m: v[1], n: v[0], l: v[2] });
        }
    }

    for l in 0..=ye / 3 {
        for s in 0..=ye - 3 * l {
            let m = xe - 3 * l - s;
            let n = ye - 3 * l - s;
            if m < 0 {
                continue;
            }
            if LatticePolytope::quad_clipped(m, n, l, s, 2 * l).ok().as_ref() == Some(&norm) {
                let (m, n) = if n <= m { (m, n) } else { (n, m) };
                return Some(Shape::SpecialQuad { m, n, l, s });
            }
        }
    }

    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognizes_each_family_up_to_translation() {
        let stair = LatticePolytope::staircase(2).unwrap().translate((3, 1));
        assert_eq!(recognize(&stair), Some(Shape::Staircase { l: 2 }));

        let zono = LatticePolytope::zonotope(1, 2, 3).unwrap().translate((-1, 4));
        assert_eq!(recognize(&zono), Some(Shape::Zonotope { m: 2, n: 1, l: 3 }));

        let quad = LatticePolytope::quad_clipped(0, 1, 1, 3, 2).unwrap();
        assert_eq!(recognize(&quad), Some(Shape::SpecialQuad { m: 1, n: 0, l: 1, s: 3 }));
    }

    #[test]
    fn rectangles_and_degenerate_shapes_are_zonotopes() {
        let rect = LatticePolytope::zonotope(3, 1, 0).unwrap();
        assert_eq!(recognize(&rect), Some(Shape::Zonotope { m: 1, n: 0, l: 3 }));

        let seg = LatticePolytope::segment_multiple((1, 1), 4).unwrap();
        assert_eq!(recognize(&seg), Some(Shape::Zonotope { m: 0, n: 0, l: 4 }));

        let point = LatticePolytope::point((2, 5));
        assert_eq!(recognize(&point), Some(Shape::Staircase { l: 0 }));
    }

    #[test]
    fn unrelated_shapes_are_rejected() {
        let tri = LatticePolytope::simplex(2).unwrap();
        assert_eq!(recognize(&tri), None);

        let skew = LatticePolytope::convex_hull(&[(0, 0), (3, 1), (1, 3)]).unwrap();
        assert_eq!(recognize(&skew), None);
    }
}
