//! Exact-computation toolkit for toric surface codes: lattice polytopes in the
//! plane, Minkowski length search, code construction over small finite fields
//! with exhaustive minimum-distance search, and the staircase Vandermonde
//! machinery used to certify distance formulas.

pub mod ffield;
pub mod minklen;
pub mod polytope;
pub mod toric;
pub mod vandermonde;
