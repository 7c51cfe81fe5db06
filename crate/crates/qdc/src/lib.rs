//! Circuit-cutting toolkit for entangled-chain benchmarks.
//!
//! The crate builds GHZ-style chain circuits, cuts them into fragments that
//! fit smaller devices, simulates each fragment variant under a calibrated
//! noise model (relaxation, dephasing, depolarizing gates, lossy readout),
//! and recombines the variant distributions into the full-circuit outcome
//! distribution.
//!
//! Bit conventions used throughout: wire 0 is the most significant /
//! leftmost bit of every state index and bitstring; measured-bit tables
//! follow the circuit's `measured` wire order.

pub mod circuit;
pub mod cutter;
pub mod error;
pub mod experiment;
pub mod noise;
pub mod qasm;
pub mod recombine;
pub mod router;
pub mod schedule;
pub mod sim;

pub use circuit::{build_ghz_chain, Circuit, Gate, GateKind, WireCut};
pub use cutter::{cut_plan_equal, fragment, CutSet, Fragment, FragmentSet, FragmentVariant};
pub use error::{Error, Result};
pub use noise::{CalibrationFile, KrausChannel, NoiseParameters, ReadoutPovm};
pub use recombine::{recombine, success_probability, RecombinationPlan};
pub use router::{grid_coupling, route, CouplingMap, RoutedCircuit};
pub use schedule::{noise_pass, schedule_asap, NoisyCircuit, ScheduledCircuit};
pub use sim::{
    run_exact, run_trajectories, sample_counts, statevector_oracle, CountTable, ProbTable,
};
