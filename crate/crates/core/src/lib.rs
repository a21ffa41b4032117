//! Edge percolation on finite graphs, exact planarity testing, and
//! checkable non-planarity certificates, with a Monte Carlo harness for
//! threshold experiments.

pub mod analysis;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod percolation;
pub mod planarity;
pub mod rng;
pub mod stats;
pub mod witness;

pub use error::{Error, Result};
pub use generators::FamilySpec;
pub use graph::{build_graph, Adjacency, Edge, GirthResult, Graph, GraphStats, ImplicitComplete};
pub use harness::{ExperimentConfig, SummaryStats, TrialRecord};
pub use percolation::{CoupledSampler, SampleParams};
pub use planarity::{Certificate, DensityGirth};
pub use witness::{WitnessParams, WitnessReport};
