//! Planted clique recovery on hard random geometric graphs.
//!
//! Vertices are scattered uniformly on the unit `d`-torus and joined when
//! their toroidal distance is at most `r`. A uniformly chosen `k`-subset is
//! then completed into a clique, and two estimators try to find it again:
//!
//! * [`algorithms::vd_recover`] returns the `k` vertices of largest degree;
//! * [`algorithms::cn_recover`] scans edges for a pair whose `k - 2` common
//!   neighbours close a clique.
//!
//! The [`theory`] module evaluates the asymptotic degree thresholds and the
//! regime classifier, [`experiments`] runs reproducible Monte Carlo sweeps,
//! and [`oracle`] holds brute-force references used by the test suites.

pub mod algorithms;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod oracle;
pub mod rgg;
pub mod seed;
pub mod theory;

pub use algorithms::{cn_recover, evaluate, vd_recover, Method, RecoveryResult, WorkCounters};
pub use error::{Error, Result};
pub use geometry::{torus_distance, LensSpec, Point};
pub use rgg::{plant_clique, sample_instance, Graph, PlantedInstance, VertexCount};
pub use theory::{classify_regime, ClassifierConfig, ModelParams, RegimeVerdict};
