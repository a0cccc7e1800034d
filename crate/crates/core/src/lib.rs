//! Edge-space algebra and random-graph experiments around cycle spans.
//!
//! The crate is organized as six modules:
//!
//! - [`gf2`]: bit-packed GF(2) vectors, rank/echelon reduction, orthogonal
//!   complements, subspace intersection, coset weight extremes.
//! - [`graph`]: graphs with dense edge indexing, G(n, p) generation, the
//!   shared-label coupling, cuts, components, and text serialization.
//! - [`subspace`]: cycle/cut/even spaces of a graph, pattern-copy
//!   enumeration, span and coverage tests, and the canonical minimizer of
//!   the orthogonal gap.
//! - [`paths`]: path counts and internally disjoint packings between vertex
//!   pairs, central-path variants, and rope counting with its spectral walk
//!   bound.
//! - [`bounds`]: tail-bound evaluators, the coverage threshold formula,
//!   density parameters, and adjacency spectrum estimation.
//! - [`experiments`]: deterministic Monte Carlo sweeps, coupling runs,
//!   exact verification over complete graphs, and CSV/JSON reporting.

pub mod bounds;
pub mod error;
pub mod experiments;
pub mod gf2;
pub mod graph;
pub mod paths;
pub mod subspace;

pub use error::{Error, Result};
pub use gf2::{EchelonBasis, Gf2Matrix, Gf2Vector};
pub use graph::{CoupledSample, EdgeSubset, LabeledGraph};
pub use subspace::{CopyList, HClass, HPattern, SpaceBasis, SpaceTag};
