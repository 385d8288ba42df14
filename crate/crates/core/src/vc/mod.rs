//! Vertex-cover solvers, their recurrences and the repetition wrapper.

mod algorithms;
mod approx;
mod config;
mod graph;
mod recurrences;

pub use algorithms::{better_vc_run, enhanced_vc3star_run, max_deg2_exact, run_algo, vc3_run, vc3star_run, CoverResult};
pub use approx::{alpha_approx, ApproxResult};
pub use config::{Algo, VcConfig, DEFAULT_DELTA_CAP};
pub use graph::Graph;
pub use recurrences::{
    build_recurrence, choose_excluded_degree, degree_rates, optimize_config, rule_specs, RateReport, RuleSlot,
};
