//! Combination algorithms: pick an s–t path, schedule its jobs.
//!
//! - [`solve_sd`]: Dijkstra on total job length, then a dense scheduler.
//! - [`solve_uar`]: iterative min-max path + scheduler with re-weighting of
//!   long jobs; presets GAR, RAR, JJAR and SAR fix the scheduler and ρ.
//! - [`solve_sae`]: enumerate job subsets of size at most N that the path
//!   must contain.

mod sae;
mod sd;
mod uar;

pub use sae::{SaeConfig, SaeTrace, solve_sae, solve_sae_traced, theoretical_subset_size};
pub use sd::{sd_scheduler, solve_sd};
pub use uar::{Preset, UarConfig, UarTrace, solve_uar, solve_uar_traced};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::Graph;
use crate::path::{MinMaxPath, WeightVectorMap, minmax_path_exact, minmax_path_fptas};
use crate::rational::Ratio;

/// Which min-max path routine the combination algorithms call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathEngine {
    /// FPTAS for K ≤ [`FPTAS_MAX_CRITERIA`], exact DP above that.
    #[default]
    Auto,
    Fptas,
    Exact,
}

/// Largest criterion count routed to the FPTAS under [`PathEngine::Auto`].
pub const FPTAS_MAX_CRITERIA: usize = 4;

impl PathEngine {
    pub(crate) fn find(
        &self,
        graph: &Graph,
        weights: &WeightVectorMap,
        required: &[usize],
        eps: Ratio,
    ) -> Result<Option<MinMaxPath>> {
        let use_fptas = match self {
            PathEngine::Auto => weights.k() <= FPTAS_MAX_CRITERIA,
            PathEngine::Fptas => true,
            PathEngine::Exact => false,
        };
        if use_fptas {
            minmax_path_fptas(graph, weights, required, eps)
        } else {
            minmax_path_exact(graph, weights, required)
        }
    }
}
