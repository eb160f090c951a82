//! Graph products of cyclic groups: normal forms, conjugacy, homology of flag
//! complexes, finiteness of kernels of characters, and quotients by full
//! normal subgroups.

pub mod bnsr;
pub mod error;
pub mod exec;
pub mod graph;
pub mod homology;
pub mod lattice;
pub mod quotient;
pub mod word;

pub use bnsr::{Character, DeadSetFamily, KernelFiniteness};
pub use error::{Error, ParseLocation, Result};
pub use exec::Execution;
pub use graph::{JoinDecomposition, Order, SimplicialGraph, VertexSet};
pub use homology::{HomologyGroup, SimplicialComplex, Verdict};
pub use lattice::{IntMatrix, LatticeQuotient, SmithForm};
pub use quotient::{Budget, Membership, NormalSubgroupGens, Normality, QuotientReport};
pub use word::{GraphProduct, NormalForm, Syllable, Word};
