//! Independent oracles and statistical checks tying the analysis to the
//! solvers: exact minimum covers, planted instances with known optima,
//! Monte-Carlo lower-bound tests, convergence of the decay exponent, and a
//! brute-force enumeration of rules mappings.

use std::fmt;

mod exact;
mod mapping;
mod planted;
mod stats;

pub use exact::{exact_min_cover, exact_min_hitting_set, EXACT_HS_MAX_N, EXACT_VC_MAX_N};
pub use mapping::{mapping_values, rules_mapping_infimum, MAPPING_MAX_B, MAPPING_MAX_K};
pub use planted::{make_planted_hs, make_planted_vc, PlantedInstance};
pub use stats::{
    convergence_check, monte_carlo, monte_carlo_bound_check, monte_carlo_hs_check, Convergence, MonteCarlo,
    CONVERGENCE_TOL,
};

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub observed: f64,
    pub bound: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, observed: f64, bound: f64) -> Self {
        Check { name: name.into(), pass, observed, bound }
    }
}

fn num(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-3 {
        format!("{x:.3e}")
    } else {
        format!("{x:.6}")
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "CHECK {} {verdict} observed={} bound={}", self.name, num(self.observed), num(self.bound))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_lines() {
        let mut r = Report::default();
        r.push(Check::new("a", true, 0.5, 0.25));
        r.push(Check::new("b", false, 1.0, 1e-9));
        assert!(!r.all_pass());
        assert_eq!(
            r.to_string(),
            "CHECK a PASS observed=0.500000 bound=0.250000\nCHECK b FAIL observed=1.000000 bound=1.000e-9\n"
        );
    }
}
