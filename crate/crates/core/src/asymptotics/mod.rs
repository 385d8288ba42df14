//! Decay rates of composite recurrences and optimization of branching
//! distributions.

mod branching;
mod dual;
mod generic;
mod kl;
mod rules;
mod simple;

pub use branching::{alpha_branching_number, composite_rate, composite_rate_with, BranchingNumberResult};
pub use generic::{optimize_rule_generic, GenericOptions};
pub use kl::{extended_kl, kl_divergence};
pub use rules::{optimize_rule, optimize_rule_set, rule_set_csv, OptimizedRule, RuleSet, RuleSpec};
pub use simple::{optimize_simple_rule, simple_rule_boundaries};

/// Default certification tolerance on branching numbers.
pub const DEFAULT_TOL: f64 = 1e-7;
