//! Solvers for shop scheduling combined with s–t path selection.
//!
//! An [`Instance`] is a directed multigraph whose arcs are jobs. A solution
//! picks a simple s–t path and schedules the jobs on its arcs on an open
//! shop or a job shop so that the makespan is minimal.
//!
//! Module map:
//! - [`model`]: graphs, jobs, schedules, validation and trivial bounds
//! - [`path`]: Dijkstra, the exact min-max label DP with required arcs, and its FPTAS
//! - [`shop`]: shop-scheduling subroutines and the exact small-scale solver
//! - [`comb`]: the combination algorithms (SD, UAR presets, SAE)
//! - [`oracle`]: exhaustive exact solver for verification
//! - [`instgen`]: JSON documents, random generators and the 3DM reduction

pub mod comb;
pub mod error;
pub mod instgen;
pub mod model;
pub mod oracle;
pub mod path;
pub mod rational;
pub mod shop;

pub use error::{Error, Result};
pub use model::{
    Arc, Assignment, Graph, Instance, Job, Operation, Schedule, ShopKind, SolveResult, Time,
    Violation,
};
pub use rational::Ratio;
