//! Exact iterated integrals along path maps of directed graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: digraphs, digraph maps, line digraphs, box products, cylinders
//!   and the triangle / square / double-edge patterns.
//! - [`path`]: path maps, their steps, concatenation, inversion, reduction and
//!   elementary equivalence.
//! - [`linalg`] and [`forms`]: exact rational linear algebra, 0- and 1-forms,
//!   the degree-2 chain space and closed 1-forms.
//! - [`integral`]: volume numbers and iterated integrals, signatures, order of
//!   a path and commutators.
//! - [`shuffle`]: the shuffle Hopf algebra on arrow words and bounded functional
//!   equality for the path/loop quotients.
//! - [`homotopy`]: the five local moves on loops, bounded homotopy search,
//!   isosceles words and degree-bounded homotopy-invariant loop functionals.
//! - [`io`]: JSON and DOT file formats used by the command-line tool.

pub mod fixtures;
pub mod forms;
pub mod graph;
pub mod homotopy;
pub mod integral;
pub mod io;
pub mod linalg;
pub mod path;
pub mod rational;
pub mod shuffle;

pub use forms::{OneForm, TwoChain, ZeroForm};
pub use graph::{ArrowId, BasedDigraph, Digraph, DigraphMap, GraphError, VertexId};
pub use integral::{iterated_integral, Order};
pub use path::{Orientation, PathError, PathMap, Step};
pub use rational::Rational;
pub use shuffle::{AlgebraElement, ArrowWord, TensorPair};
