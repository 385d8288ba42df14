//! The `verify` subcommand: reference rates, oracle agreement and
//! Monte-Carlo lower-bound checks.

use anyhow::Result;
use branchrate::asymptotics::{composite_rate, optimize_simple_rule};
use branchrate::hs::{build_recurrence_3hs, generate_catalog, optimize_catalog_gammas};
use branchrate::recurrence::{dp_eval, naive_eval, DpOptions};
use branchrate::vc::{build_recurrence, choose_excluded_degree, optimize_config, Algo};
use branchrate::verify::{
    convergence_check, make_planted_hs, make_planted_vc, monte_carlo_bound_check, monte_carlo_hs_check,
    rules_mapping_infimum, Check, Report, MAPPING_MAX_B, MAPPING_MAX_K,
};
use branchrate::{budget, Exec};

fn near(name: &str, observed: f64, target: f64, tol: f64) -> Check {
    Check::new(name, (observed - target).abs() <= tol, observed, target)
}

pub fn run(tol: f64, seed: u64, full: bool) -> Result<Report> {
    let mut r = Report::default();
    let exec = Exec::default();

    let simple = optimize_simple_rule(1, 3, 0, 0, 1.5, tol)?;
    r.push(near("vc3_rate_simple", simple.base(), 1.043642, 5e-4));
    let (cfg3, _) = optimize_config(Algo::Vc3, 1.5, 100, tol, exec)?;
    let rec3 = build_recurrence(Algo::Vc3, &cfg3)?;
    let (m3, _) = composite_rate(&rec3, 1.5, tol)?;
    r.push(near("vc3_rate_composite", m3.exp(), 1.043642, 5e-4));

    let (delta, m) = choose_excluded_degree(1.5, 100, tol)?;
    r.push(Check::new("enhanced_excluded_degree", delta == 5, delta as f64, 5.0));
    r.push(near("enhanced_rate", m.exp(), 1.01657, 2e-4));

    let conv = convergence_check(&rec3, 1.5, m3, &[250, 500, 1000], DpOptions::default())?;
    r.push(conv.check("vc3_convergence"));

    let mut worst = 0.0f64;
    let table = dp_eval(&rec3, MAPPING_MAX_B as usize, MAPPING_MAX_K as usize)?;
    for b in -1..=MAPPING_MAX_B {
        for k in 0..=MAPPING_MAX_K {
            let naive = naive_eval(&rec3, b, k)?;
            worst = worst.max((rules_mapping_infimum(&rec3, b, k)? - naive).abs());
            worst = worst.max((table.prob(b, k) - naive).abs());
        }
    }
    r.push(Check::new("mapping_naive_dp_agree", worst <= 1e-9, worst, 1e-9));

    let inst = make_planted_vc(20, 8, 0.1, seed)?;
    let mc = monte_carlo_bound_check(Algo::Vc3, &cfg3, &inst, budget(1.5, 8), 4000, seed, exec)?;
    r.push(mc.check("monte_carlo_vc3"));

    let cat = generate_catalog(3)?;
    let (cat, rate) = optimize_catalog_gammas(&cat, 2.0, tol, exec)?;
    let rec_hs = build_recurrence_3hs(&cat)?;
    let (m_hs, _) = composite_rate(&rec_hs, 2.0, tol)?;
    r.push(near("hs_catalog_rate_consistent", m_hs, rate.m, 1e-4));
    let hinst = make_planted_hs(16, 6, 0.03, seed)?;
    let mc = monte_carlo_hs_check(&cat, &rec_hs, &hinst, budget(2.0, 6), 4000, seed, exec)?;
    r.push(mc.check("monte_carlo_3hs"));

    if full {
        for (a, target) in [(1.1, 1.160), (1.2, 1.096), (1.3, 1.058), (1.4, 1.0331), (1.5, 1.0166)] {
            let (_, rep) = optimize_config(Algo::BetterVc, a, 100, tol, exec)?;
            r.push(near(&format!("better_vc_rate_{a}"), rep.base, target, 2e-3));
        }
        let cat = generate_catalog(7)?;
        let (_, rate) = optimize_catalog_gammas(&cat, 2.0, tol, exec)?;
        r.push(near("hs_rate_delta7", rate.base, 1.0659, 2e-3));
    }
    Ok(r)
}
