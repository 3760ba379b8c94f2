//! Tiny text format for describing polytopes on the command line.
//!
//! ```text
//! expr    := term ('+' term)*
//! term    := INT '*' '(' expr ')' | primary
//! primary := zono:m,n,l | quad:m,n,l,s,r | simplex:r | t0:t | stair:l
//!          | seg:a,b*c | verts:(x1,y1);(x2,y2);...
//! ```
//!
//! Whitespace is ignored everywhere. `seg:a,b*c` is c copies of the segment
//! from the origin to (a,b); `t0:t` is the t-th dilate of the exceptional
//! triangle; `k*(...)` dilates a parenthesized expression.

use super::{LatticePolytope, PolytopeError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DslError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid polytope: {0}")]
    Domain(#[from] PolytopeError),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, DslError> {
        Err(DslError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<(), DslError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<i64, DslError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| DslError::Parse { pos: start, msg: "integer out of range".into() })
    }

    fn ints(&mut self, n: usize) -> Result<Vec<i64>, DslError> {
        let mut out = vec![self.int()?];
        for _ in 1..n {
            self.eat(b',')?;
            out.push(self.int()?);
        }
        Ok(out)
    }

    fn keyword(&mut self) -> Result<&'a str, DslError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a polytope form");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn pair(&mut self) -> Result<(i64, i64), DslError> {
        self.eat(b'(')?;
        let x = self.int()?;
        self.eat(b',')?;
        let y = self.int()?;
        self.eat(b')')?;
        Ok((x, y))
    }

    fn primary(&mut self) -> Result<LatticePolytope, DslError> {
        let kw_pos = self.pos;
        let kw = self.keyword()?;
        self.eat(b':')?;
        match kw {
            "zono" => {
                let v = self.ints(3)?;
                Ok(LatticePolytope::zonotope(v[0], v[1], v[2])?)
            }
            "quad" => {
                let v = self.ints(5)?;
                Ok(LatticePolytope::quad_clipped(v[0], v[1], v[2], v[3], v[4])?)
            }
            "simplex" => Ok(LatticePolytope::simplex(self.int()?)?),
            "t0" => Ok(LatticePolytope::exceptional_triangle(self.int()?)?),
            "stair" => Ok(LatticePolytope::staircase(self.int()?)?),
            "seg" => {
                let v = self.ints(2)?;
                self.eat(b'*')?;
                let c = self.int()?;
                Ok(LatticePolytope::segment_multiple((v[0], v[1]), c)?)
            }
            "verts" => {
                let mut pts = vec![self.pair()?];
                while self.peek() == Some(b';') {
                    self.pos += 1;
                    pts.push(self.pair()?);
                }
                Ok(LatticePolytope::convex_hull(&pts)?)
            }
            _ => Err(DslError::Parse {
                pos: kw_pos,
                msg: format!("unknown polytope form '{kw}'"),
            }),
        }
    }

    fn term(&mut self) -> Result<LatticePolytope, DslError> {
        // lookahead: INT '*' '(' means dilation, otherwise a primary
        let save = self.pos;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == b'-') {
            let k = self.int()?;
            if self.peek() == Some(b'*') && self.s.get(self.pos + 1) == Some(&b'(') {
                self.pos += 2;
                let inner = self.expr()?;
                self.eat(b')')?;
                return Ok(inner.dilate(k)?);
            }
            self.pos = save;
        }
        self.primary()
    }

    fn expr(&mut self) -> Result<LatticePolytope, DslError> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc = acc.minkowski_sum(&self.term()?);
        }
        Ok(acc)
    }
}

/// Parses a polytope expression, e.g. `zono:2,1,1` or `2*(t0:1)+seg:1,0*3`.
pub fn parse_polytope(input: &str) -> Result<LatticePolytope, DslError> {
    let stripped: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: stripped.as_bytes(), pos: 0 };
    let poly = p.expr()?;
    if p.pos != p.s.len() {
        return p.err("unexpected trailing input");
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_forms() {
        assert_eq!(
            parse_polytope("zono:1,1,1").unwrap(),
            LatticePolytope::zonotope(1, 1, 1).unwrap()
        );
        assert_eq!(
            parse_polytope("quad:1,1,1,1,2").unwrap(),
            LatticePolytope::quad_clipped(1, 1, 1, 1, 2).unwrap()
        );
        assert_eq!(parse_polytope("simplex:3").unwrap(), LatticePolytope::simplex(3).unwrap());
        assert_eq!(
            parse_polytope("t0:2").unwrap(),
            LatticePolytope::exceptional_triangle(2).unwrap()
        );
        assert_eq!(
            parse_polytope("seg:1,-1*3").unwrap(),
            LatticePolytope::segment_multiple((1, -1), 3).unwrap()
        );
        assert_eq!(parse_polytope("stair:2").unwrap(), LatticePolytope::staircase(2).unwrap());
        assert_eq!(
            parse_polytope("verts:(0,0);(2,1);(1,2)").unwrap(),
            LatticePolytope::exceptional_triangle(1).unwrap()
        );
    }

    #[test]
    fn parses_sums_and_dilations() {
        let p = parse_polytope("simplex:1 + seg:1,0*1 + seg:0,1*1").unwrap();
        assert_eq!(p, LatticePolytope::staircase(1).unwrap());
        let d = parse_polytope("3*(simplex:1)").unwrap();
        assert_eq!(d, LatticePolytope::simplex(3).unwrap());
        let nested = parse_polytope("2*( t0:1 + seg:1,0*1 )").unwrap();
        let expect = LatticePolytope::exceptional_triangle(1)
            .unwrap()
            .minkowski_sum(&LatticePolytope::segment_multiple((1, 0), 1).unwrap())
            .dilate(2)
            .unwrap();
        assert_eq!(nested, expect);
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(
            parse_polytope(" zono : 2 , 1 , 1 ").unwrap(),
            parse_polytope("zono:2,1,1").unwrap()
        );
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_polytope("zono:1,1"), Err(DslError::Parse { .. })));
        assert!(matches!(parse_polytope("blob:1"), Err(DslError::Parse { .. })));
        assert!(matches!(parse_polytope("zono:1,1,1)"), Err(DslError::Parse { .. })));
        assert!(matches!(parse_polytope(""), Err(DslError::Parse { .. })));
        assert!(matches!(parse_polytope("verts:"), Err(DslError::Parse { .. })));
        assert!(matches!(
            parse_polytope("simplex:-2"),
            Err(DslError::Domain(PolytopeError::NegativeMultiplier(-2)))
        ));
    }

    #[test]
    fn round_trips_through_verts() {
        for spec in ["zono:2,1,1", "quad:1,0,2,1,3", "t0:2", "simplex:4"] {
            let p = parse_polytope(spec).unwrap();
            let back = parse_polytope(&format!("verts:{p}")).unwrap();
            assert_eq!(p, back, "round trip failed for {spec}");
        }
    }
}
