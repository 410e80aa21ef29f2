//! Derived invariants of gentle algebras given by bound quivers.
//!
//! - [`quiver`]: the [`BoundQuiver`] model, gentleness, saturated cycles.
//! - [`parse_bound_quiver`]: the line-oriented text format.
//! - [`threads`]: permitted/forbidden threads and the `σ`, `ε` sign solver.
//! - [`ag`]: the AG-invariant `φ` as a multiset of pairs.
//! - [`hochschild`]: Hochschild cohomology dimensions from `φ`.
//! - [`atilde`]: root cycles, parameters and normal forms for type Ã.
//! - [`gerstenhaber`]: complete and gentle pairs, cup/bracket nontriviality.
//! - [`cli`]: the command-line front end.

pub mod ag;
pub mod atilde;
pub mod cli;
pub mod fixtures;
pub mod gerstenhaber;
mod graph;
pub mod hochschild;
mod parse;
pub mod quiver;
pub mod threads;

pub use ag::{ag_equal, ag_invariant, format_ag, AgError, AgInvariant};
pub use parse::{parse_bound_quiver, ParseError, ParseErrorKind};
pub use quiver::{ArrowId, BoundQuiver, QuiverBuilder, QuiverError, VertexId};
