use crate::{Error, Result};

/// `sum c_i ln(c_i / d_i)`, with `0 ln 0 = 0` and `+inf` when `c_i > 0 = d_i`.
pub fn kl_divergence(c: &[f64], d: &[f64]) -> Result<f64> {
    if c.len() != d.len() {
        return Err(Error::LengthMismatch(c.len(), d.len()));
    }
    let mut s = 0.0;
    for (&ci, &di) in c.iter().zip(d) {
        if ci > 0.0 {
            if di <= 0.0 {
                return Ok(f64::INFINITY);
            }
            s += ci * (ci / di).ln();
        }
    }
    Ok(s.max(0.0))
}

/// Block-structured divergence of `t` from `upsilon`: `t` sums to one overall,
/// `upsilon` sums to one inside each block, `blocks` lists the block sizes.
///
/// Equals `sum_i t_i ln(t_i / upsilon_i) - sum_j lambda_j ln lambda_j` where
/// `lambda_j` is the mass `t` puts on block `j`. Expanding the first sum block
/// by block shows this is `sum_j lambda_j D(t_j / lambda_j || upsilon_j)`.
pub fn extended_kl(t: &[f64], upsilon: &[f64], blocks: &[usize]) -> Result<f64> {
    let total: usize = blocks.iter().sum();
    if total != t.len() || t.len() != upsilon.len() {
        return Err(Error::LengthMismatch(total, t.len().max(upsilon.len())));
    }
    let mut s = 0.0;
    let mut start = 0;
    for &len in blocks {
        let block = &t[start..start + len];
        let lambda: f64 = block.iter().sum();
        for (&ti, &ui) in block.iter().zip(&upsilon[start..start + len]) {
            if ti > 0.0 {
                if ui <= 0.0 {
                    return Ok(f64::INFINITY);
                }
                s += ti * (ti / ui).ln();
            }
        }
        if lambda > 0.0 {
            s -= lambda * lambda.ln();
        }
        start += len;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kl_examples() {
        assert_eq!(kl_divergence(&[0.5, 0.5], &[0.5, 0.5]).unwrap(), 0.0);
        assert!((kl_divergence(&[1.0, 0.0], &[0.5, 0.5]).unwrap() - 2f64.ln()).abs() < 1e-15);
        let want = 0.3 * 0.5f64.ln() + 0.7 * 1.75f64.ln();
        assert!((kl_divergence(&[0.3, 0.7], &[0.6, 0.4]).unwrap() - want).abs() < 1e-15);
        assert_eq!(kl_divergence(&[0.5, 0.5], &[1.0, 0.0]).unwrap(), f64::INFINITY);
        assert_eq!(kl_divergence(&[0.0, 1.0], &[0.0, 1.0]).unwrap(), 0.0);
        assert!(kl_divergence(&[1.0], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn extended_kl_examples() {
        let ups = [0.2, 0.8, 0.5, 0.5];
        assert!(extended_kl(&[0.2, 0.8, 0.0, 0.0], &ups, &[2, 2]).unwrap().abs() < 1e-15);
        // t is half of each block of upsilon: every conditional divergence is 0
        let t = [0.1, 0.4, 0.25, 0.25];
        assert!(extended_kl(&t, &ups, &[2, 2]).unwrap().abs() < 1e-15);
        let t = [0.3, 0.1, 0.6, 0.0];
        let want = 0.4 * kl_divergence(&[0.75, 0.25], &[0.2, 0.8]).unwrap()
            + 0.6 * kl_divergence(&[1.0, 0.0], &[0.5, 0.5]).unwrap();
        assert!((extended_kl(&t, &ups, &[2, 2]).unwrap() - want).abs() < 1e-12);
        assert!(extended_kl(&t, &ups, &[3, 2]).is_err());
    }
}
