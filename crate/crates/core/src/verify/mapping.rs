//! Brute-force minimum over rules mappings.
//!
//! A rules mapping picks, after every history of chosen options, which term
//! governs the next step; it is k-consistent when the picked term never covers
//! more than what remains. Since every cost is at least 1, only histories that
//! leave a positive budget can influence the outcome, so the enumeration is
//! finite. Every mapping yields a success probability by path summation; the
//! minimum over all of them must equal the recurrence value.

use crate::recurrence::{validate_recurrence, CompositeRecurrence, Term};
use crate::{Error, Result};

pub const MAPPING_MAX_B: i64 = 4;
pub const MAPPING_MAX_K: i64 = 4;
const MAX_TERMS: usize = 2;
const MAX_OPTIONS: usize = 2;
const MAX_MAPPINGS: usize = 1 << 22;

/// Success probability of every k-consistent mapping, one value per mapping
/// (restricted to the histories that can matter), in enumeration order.
pub fn mapping_values(rec: &CompositeRecurrence, b: i64, k: i64) -> Result<Vec<f64>> {
    if b > MAPPING_MAX_B || k > MAPPING_MAX_K {
        return Err(Error::SizeCap(format!("mapping enumeration needs b <= {MAPPING_MAX_B}, k <= {MAPPING_MAX_K}")));
    }
    if rec.terms.len() > MAX_TERMS || rec.terms.iter().any(|t| t.len() > MAX_OPTIONS) {
        return Err(Error::SizeCap(format!(
            "mapping enumeration needs at most {MAX_TERMS} terms of at most {MAX_OPTIONS} options"
        )));
    }
    let rep = validate_recurrence(rec);
    if !rep.is_valid() {
        return Err(Error::InvalidRecurrence(rep.issues.join("; ")));
    }
    values(&rec.terms, b, k)
}

pub fn rules_mapping_infimum(rec: &CompositeRecurrence, b: i64, k: i64) -> Result<f64> {
    let v = mapping_values(rec, b, k)?;
    Ok(v.into_iter().fold(f64::INFINITY, f64::min))
}

fn values(terms: &[Term], b: i64, k: i64) -> Result<Vec<f64>> {
    if b < 0 {
        return Ok(vec![0.0]);
    }
    if k <= 0 {
        return Ok(vec![1.0]);
    }
    if b == 0 {
        // every option overspends, whatever the mapping picks
        return Ok(vec![0.0]);
    }
    let mut out = Vec::new();
    for t in terms.iter().filter(|t| t.max_k() as i64 <= k) {
        // one partial sum per combination of sub-mappings below each option
        let mut sums = vec![0.0f64];
        for i in 0..t.len() {
            let g = t.gamma()[i];
            if g <= 0.0 {
                continue;
            }
            let below = values(terms, b - t.b()[i] as i64, k - t.k()[i] as i64)?;
            if sums.len() * below.len() > MAX_MAPPINGS {
                return Err(Error::SizeCap(format!("more than {MAX_MAPPINGS} rules mappings")));
            }
            sums = sums.iter().flat_map(|&s| below.iter().map(move |&x| s + g * x)).collect();
        }
        if out.len() + sums.len() > MAX_MAPPINGS {
            return Err(Error::SizeCap(format!("more than {MAX_MAPPINGS} rules mappings")));
        }
        out.extend(sums);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{naive_eval, Distribution};

    fn vc3(g: f64) -> CompositeRecurrence {
        let d = Distribution::binary(g).unwrap();
        CompositeRecurrence::new(vec![
            Term::new(vec![1, 3], vec![1, 0], d.clone()).unwrap(),
            Term::new(vec![1, 3], vec![0, 3], d).unwrap(),
        ])
    }

    #[test]
    fn hand_values() {
        let rec = vc3(0.5);
        assert_eq!(rules_mapping_infimum(&rec, 1, 1).unwrap(), 0.5);
        assert_eq!(rules_mapping_infimum(&rec, 3, 0).unwrap(), 1.0);
        assert_eq!(rules_mapping_infimum(&rec, -1, 2).unwrap(), 0.0);
        // at k = 1 only the first term is consistent and its second option overspends
        assert_eq!(mapping_values(&rec, 1, 1).unwrap(), vec![0.5]);
    }

    #[test]
    fn equals_naive_on_domain() {
        let rec = vc3(0.3);
        for b in -1..=MAPPING_MAX_B {
            for k in 0..=MAPPING_MAX_K {
                assert_eq!(rules_mapping_infimum(&rec, b, k).unwrap(), naive_eval(&rec, b, k).unwrap(), "({b},{k})");
            }
        }
    }

    #[test]
    fn caps() {
        assert!(rules_mapping_infimum(&vc3(0.5), 5, 1).is_err());
        let d = Distribution::uniform(3);
        let wide = CompositeRecurrence::new(vec![Term::new(vec![1, 1, 1], vec![1, 1, 1], d).unwrap()]);
        assert!(rules_mapping_infimum(&wide, 2, 2).is_err());
    }
}
