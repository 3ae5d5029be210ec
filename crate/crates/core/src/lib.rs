//! Subspace coding with atomic decompositions.
//!
//! Subspaces of `F_p^N` are kept in canonical RREF form ([`lattice`]). The
//! number of minimal atomic decompositions 𝔑 and the metric it induces live
//! in [`invariant`], with a brute-force cross-check in [`oracle`]. The
//! [`channel`] module simulates atomic erasures and insertions; [`codes`]
//! provides minimum-distance decoding under either metric and the
//! Singleton-type bound; [`experiment`] ties them together into seeded
//! Monte-Carlo runs.

pub mod channel;
pub mod codes;
pub mod error;
pub mod experiment;
pub mod gf;
pub mod invariant;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod rng;

pub use channel::{AtomicDecomposition, ChannelParams, ChannelTranscript, ErasureModel};
pub use codes::{Code, DecodeOutcome, DecodeResult, SingletonReport};
pub use error::{Error, Result};
pub use gf::{FieldElement, FieldSpec};
pub use invariant::{BigCount, DistanceValue, Metric};
pub use lattice::{Atom, Subspace};
pub use linalg::MatrixFq;
