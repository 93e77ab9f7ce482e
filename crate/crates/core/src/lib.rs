//! Explicit binary sparse solutions X to the upper nilpotent completion
//! problem for N_r (strictly upper triangular X with N_r + X nilpotent of a
//! prescribed type), an independent exact-arithmetic Jordan-type oracle
//! certifying every output, and assembly of the corresponding homogeneous
//! Coxeter connection one-forms.

pub mod batch;
pub mod connection;
pub mod engine;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod jordan;
pub mod laurent;
pub mod matrix;
pub mod partition;

pub use connection::{emit, jordan_upper, residue, ConnectionForm};
pub use engine::{initialize, run, CaseTag, Completion, EngineOptions, EngineState, LoopTag, TraceRecord};
pub use error::{Error, GraftClause, Result};
pub use graph::{canonical_nr_graph, GlnGraph};
pub use invariants::Invariant;
pub use jordan::{exact_rank, is_nilpotent, jordan_type, rank_sequence, JordanType};
pub use laurent::{omega, omega_inverse, LaurentMatrix};
pub use matrix::{make_er, make_nr, IntMatrix};
pub use partition::{nr_type, Multiset, Partition};
