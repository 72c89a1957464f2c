//! Analysis toolkit for ISG (instantaneous stabilizer group) codes.
//!
//! An ISG code is given by a measurement schedule: an ordered list of Abelian
//! groups of Hermitian Paulis, measured round by round. This crate tracks the
//! resulting stabilizer group with symbolic measurement-record signs, derives
//! detectors from deterministic outcomes, follows the logical Pauli group
//! through the normalizer formalism, computes code parameters, and
//! cross-validates the group-theoretic picture against Pauli webs on Clifford
//! CSS ZX-diagrams.

pub mod error;
pub mod gf2;
pub mod logical;
pub mod pauli;
pub mod schedule;
pub mod subsystem;
pub mod tableau;
pub mod zoo;
pub mod zxweb;

pub use error::IsgError;
pub use pauli::{PauliLetter, PauliOperator, QubitLabel};
pub use schedule::{CodeParameters, MeasurementSchedule, Period, RunReport};
pub use tableau::{Detector, OutcomeId, OutcomeSet, SignedGenerator, StabilizerTableau};
