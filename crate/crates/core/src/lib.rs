//! Quantum GAN simulation with label-replacement generator initialization.
//!
//! A small statevector simulator drives a layered Ry/CZ generator whose
//! readout can be relabeled by a classical permutation. The init column and
//! permutation are fitted to a target distribution so training starts near
//! it; the harness then trains the generator against a classical
//! discriminator and tracks relative entropy.

pub mod adversary;
pub mod error;
pub mod generator;
pub mod harness;
pub mod initfit;
pub mod pmf;
pub mod qsim;
pub mod report;
pub mod targets;

pub use adversary::{AmsgradConfig, AmsgradState, Discriminator, DiscriminatorConfig};
pub use error::{Error, Result};
pub use generator::{GeneratorCircuit, InitMode, LabelPermutation};
pub use harness::{relative_entropy, sweep, train_run, GradMode, InitKind, RunRecord, SweepSummary, TrainConfig};
pub use initfit::{fit_angles, make_init_spec, AngleFormula, InitSpec};
pub use pmf::Pmf;
pub use targets::{TailMode, TargetKind, TargetSpec};
