use anyhow::{bail, Context, Result};

/// Parses `start:stop:step` (inclusive) or a comma-separated list.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    let vals: Vec<f64> = if s.contains(':') {
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().with_context(|| format!("bad grid number `{p}`")))
            .collect::<Result<_>>()?;
        let [start, stop, step] = parts[..] else { bail!("grid ranges are start:stop:step") };
        if step.is_nan() || step <= 0.0 {
            bail!("grid step must be positive");
        }
        let n = ((stop - start) / step + 1e-9).floor();
        if n < 0.0 {
            bail!("grid stop lies below start");
        }
        // multiply rather than accumulate so 1.2:1.7:0.1 prints 1.5, not 1.4999999
        (0..=n as usize).map(|i| round9(start + i as f64 * step)).collect()
    } else {
        s.split(',')
            .map(|p| p.trim().parse::<f64>().with_context(|| format!("bad grid number `{p}`")))
            .collect::<Result<_>>()?
    };
    if vals.is_empty() {
        bail!("empty alpha grid");
    }
    if vals.windows(2).any(|w| w[1] <= w[0]) {
        bail!("alpha grid must be strictly increasing");
    }
    Ok(vals)
}

fn round9(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

/// Alpha values must lie strictly between 1 and `upper`.
pub fn check_range(alphas: &[f64], upper: f64) -> Result<()> {
    if let Some(a) = alphas.iter().find(|&&a| !(a > 1.0 && a < upper)) {
        bail!("alpha {a} outside (1, {upper})");
    }
    Ok(())
}
