use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use branchrate::hs::{
    alpha_hs, build_recurrence_3hs, generate_catalog, optimize_catalog_gammas, Catalog, Hypergraph3,
};
use branchrate::vc::{alpha_approx, build_recurrence, optimize_config, Algo, Graph, RateReport, RuleSlot};
use branchrate::{ApproxOptions, Distribution, Exec};

/// Largest catalog whose distributions are optimized outside the full tier.
pub const QUICK_MAX_HS_DELTA: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Vc(Algo),
    Hs,
}

impl FromStr for Target {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "hs" {
            return Ok(Target::Hs);
        }
        Algo::from_str(s).map(Target::Vc).map_err(|_| {
            let names: Vec<&str> = Algo::ALL.iter().map(|a| a.name()).collect();
            format!("expected one of {}, hs", names.join(", "))
        })
    }
}

fn weights(g: &Distribution) -> String {
    g.weights().iter().map(|w| format!("{w:.6}")).collect::<Vec<_>>().join("/")
}

fn error_row(alpha: f64, e: &dyn std::fmt::Display) -> String {
    format!("{alpha},NaN,error: {}", e.to_string().replace([',', '\n'], ";"))
}

/// Tuned catalog for `delta` at `alpha`, refusing long runs outside the full tier.
pub fn tuned_catalog(delta: usize, alpha: f64, tol: f64, full: bool) -> Result<(Catalog, f64)> {
    if delta > QUICK_MAX_HS_DELTA && !full {
        bail!("optimizing the catalog for delta={delta} is long-running; pass --tier full");
    }
    let cat = generate_catalog(delta)?;
    let (cat, rate) = optimize_catalog_gammas(&cat, alpha, tol, Exec::default())?;
    Ok((cat, rate.base))
}

/// CSV of optimized rates; the flag is false when some row failed.
pub fn rate_csv(target: Target, alphas: &[f64], delta: usize, tol: f64, full: bool) -> Result<(String, bool)> {
    let mut out = String::new();
    let mut ok = true;
    match target {
        Target::Vc(algo) => {
            let rows: Vec<branchrate::Result<RateReport>> =
                Exec::default().map_slice(alphas, |&a| optimize_config(algo, a, delta, tol, Exec::default()).map(|r| r.1));
            let slots: BTreeSet<RuleSlot> =
                rows.iter().flatten().flat_map(|r| r.rules.iter().map(|(s, _)| *s)).collect();
            let names: Vec<String> = slots.iter().map(|s| s.name()).collect();
            writeln!(out, "alpha,base,worst_rule,{}", names.join(","))?;
            for (&a, row) in alphas.iter().zip(&rows) {
                match row {
                    Ok(r) => {
                        write!(out, "{a},{:.6},{}", r.base, r.worst_rule)?;
                        for s in &slots {
                            let cell = r.rules.iter().find(|(t, _)| t == s).map(|(_, o)| weights(&o.gamma_star));
                            write!(out, ",{}", cell.unwrap_or_default())?;
                        }
                        out.push('\n');
                    }
                    Err(e) => {
                        ok = false;
                        writeln!(out, "{}", error_row(a, e))?;
                    }
                }
            }
        }
        Target::Hs => {
            if delta > QUICK_MAX_HS_DELTA && !full {
                bail!("optimizing the catalog for delta={delta} is long-running; pass --tier full");
            }
            let cat = generate_catalog(delta)?;
            let cols: Vec<String> = (0..cat.len()).map(|i| format!("entry_{i}")).collect();
            writeln!(out, "alpha,base,worst_rule,{}", cols.join(","))?;
            for &a in alphas {
                match optimize_catalog_gammas(&cat, a, tol, Exec::default()) {
                    Ok((tuned, rate)) => {
                        write!(out, "{a},{:.6},entry_{}", rate.base, rate.worst_entry)?;
                        for e in &tuned.entries {
                            write!(out, ",{}", e.gamma.as_ref().map(weights).unwrap_or_default())?;
                        }
                        out.push('\n');
                    }
                    Err(e) => {
                        ok = false;
                        writeln!(out, "{}", error_row(a, &e))?;
                    }
                }
            }
        }
    }
    Ok((out, ok))
}

pub struct SolveArgs<'a> {
    pub input: &'a Path,
    pub target: Target,
    pub k: usize,
    pub alpha: f64,
    pub seed: u64,
    pub delta: usize,
    pub tol: f64,
    pub full: bool,
}

/// Runs the repeated randomized solver and returns the report and success flag.
pub fn solve(a: &SolveArgs) -> Result<(String, bool)> {
    let text = std::fs::read_to_string(a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let start = Instant::now();
    let (set, budget, success, trials, r) = match a.target {
        Target::Vc(algo) => {
            let g = Graph::parse_dimacs(&text)?;
            let (cfg, _) = optimize_config(algo, a.alpha, a.delta, a.tol, Exec::default())?;
            let rec = build_recurrence(algo, &cfg)?;
            let out = alpha_approx(&g, a.k, a.alpha, algo, &cfg, &rec, a.seed, ApproxOptions::default())?;
            (out.best.cover, out.budget, out.success, out.trials, out.r)
        }
        Target::Hs => {
            let h = Hypergraph3::parse(&text)?;
            let (cat, _) = tuned_catalog(a.delta, a.alpha, a.tol, a.full)?;
            let rec = build_recurrence_3hs(&cat)?;
            let out = alpha_hs(&h, a.k, a.alpha, &cat, &rec, a.seed, ApproxOptions::default())?;
            (out.best.hitting_set, out.budget, out.success, out.trials, out.r)
        }
    };
    eprintln!("wall_time_s={:.3}", start.elapsed().as_secs_f64());
    let listed: Vec<String> = set.iter().map(|v| (v + 1).to_string()).collect();
    let mut out = String::new();
    writeln!(out, "size={}", set.len())?;
    writeln!(out, "budget={budget}")?;
    writeln!(out, "success={success}")?;
    writeln!(out, "trials={trials}")?;
    writeln!(out, "success_bound={r:.6e}")?;
    writeln!(out, "solution={}", listed.join(" "))?;
    Ok((out, success))
}

/// Catalog JSON plus a one-line summary.
pub fn catalog(delta: usize, alpha: Option<f64>, tol: f64, full: bool) -> Result<(String, String)> {
    let cat = match alpha {
        Some(a) => tuned_catalog(delta, a, tol, full)?.0,
        None => generate_catalog(delta)?,
    };
    Ok((cat.to_json(), format!("entries={} max_m={}", cat.len(), cat.max_m())))
}

/// `(alpha, base)` curves; the VC variant has one column per algorithm and
/// the pointwise best.
pub fn figure_csv(target: Target, alphas: &[f64], delta: usize, tol: f64, full: bool) -> Result<(String, bool)> {
    let mut out = String::new();
    let mut ok = true;
    match target {
        Target::Vc(_) => {
            let names: Vec<&str> = Algo::ALL.iter().map(|a| a.name()).collect();
            writeln!(out, "alpha,{},best", names.join(","))?;
            let rows: Vec<Vec<Option<f64>>> = Exec::default().map_slice(alphas, |&a| {
                Algo::ALL
                    .iter()
                    .map(|&algo| optimize_config(algo, a, delta, tol, Exec::default()).ok().map(|r| r.1.base))
                    .collect()
            });
            for (&a, row) in alphas.iter().zip(&rows) {
                write!(out, "{a}")?;
                for b in row {
                    write!(out, ",{}", b.map(|b| format!("{b:.6}")).unwrap_or_default())?;
                }
                match row.iter().flatten().copied().reduce(f64::min) {
                    Some(best) => writeln!(out, ",{best:.6}")?,
                    None => {
                        ok = false;
                        writeln!(out, ",")?;
                    }
                }
            }
        }
        Target::Hs => {
            writeln!(out, "alpha,base")?;
            if delta > QUICK_MAX_HS_DELTA && !full {
                bail!("optimizing the catalog for delta={delta} is long-running; pass --tier full");
            }
            let cat = generate_catalog(delta)?;
            for &a in alphas {
                match optimize_catalog_gammas(&cat, a, tol, Exec::default()) {
                    Ok((_, rate)) => writeln!(out, "{a},{:.6}", rate.base)?,
                    Err(_) => {
                        ok = false;
                        writeln!(out, "{a},")?;
                    }
                }
            }
        }
    }
    Ok((out, ok))
}
