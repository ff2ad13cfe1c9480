//! Exact modular Lie algebra engine.

pub mod field;
pub mod linalg;
pub mod liealg;
pub mod exec;
pub mod classical;
pub mod cartan_w;
pub mod pstruct;
pub mod gen;
pub mod descriptor;
pub mod report;
pub mod verify;
pub mod experiment;
pub mod rng;
