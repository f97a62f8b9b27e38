//! Testability of automata and finite semigroups.
//!
//! Decides local, threshold-local, piecewise, right/left-local and strict
//! local testability, aperiodicity and k-testability for languages given by
//! a transition graph or by a finite semigroup, and builds direct products
//! and transition semigroups. Graph properties are decided on the transition
//! semigroup; k-testability and the order of local testability come from a
//! profile-enumeration oracle in [`oracle`].

pub mod construct;
pub mod error;
pub mod graph;
pub mod io;
pub mod model;
pub mod oracle;
pub mod random;
pub mod scc;
pub mod semigroup;

pub use error::{Error, Result};
pub use model::{
    fixtures, format_word, FiniteSemigroup, Fixtures, Holds, Limits, OrderResult, Property,
    PropertyReport, Request, Statistics, Transformation, TransitionGraph, Verdict, Witness, Word,
};
