//! Deterministic construction of bipartite Ramanujan multigraphs.
//!
//! A `d`-regular bipartite multigraph on `n` vertices is built as a sum of `d`
//! perfect matchings, chosen one edge at a time by descending a tree of
//! partially specified matchings. Every tree node carries the expected
//! characteristic polynomial of the graphs it can still become; those
//! polynomials are computed exactly (rationals and `Q[sqrt(l)]`), and the
//! descent always moves to a child whose largest root stays below
//! `2 sqrt(d - 1)`. The final graph is certified with the same exact root test.
//!
//! Layering, bottom up:
//!
//! * [`algebra`]: rationals, quadratic-field numbers, dense polynomials.
//! * [`linalg`]: exact matrices, characteristic polynomials, the Householder
//!   block reduction and the trivariate determinant polynomial.
//! * [`family`]: tree nodes, children and the half-adjacency matrix.
//! * [`expectation`]: expected characteristic polynomial of a node.
//! * [`walk`]: the root test, the greedy descent and certification.
//! * [`oracle`]: brute-force enumeration used as ground truth.
//! * [`cli`]: command-line front end and JSON files.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod expectation;
pub mod family;
pub mod linalg;
pub mod oracle;
pub mod walk;

pub use algebra::{QuadNum, Rational, Sign, TriPoly, UniPoly};
pub use error::{Error, Result};
pub use family::{Multigraph, NodeState, Params};
pub use linalg::{BlockSpec, Matrix};
pub use walk::{certify, find_leaf, Certificate};
