use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const DEFAULT_DELTA_CAP: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algo {
    Vc3,
    Vc3Star,
    EnhancedVc3Star,
    BetterVc,
}

impl Algo {
    pub const ALL: [Algo; 4] = [Algo::Vc3, Algo::Vc3Star, Algo::EnhancedVc3Star, Algo::BetterVc];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Vc3 => "vc3",
            Algo::Vc3Star => "vc3star",
            Algo::EnhancedVc3Star => "enhanced_vc3star",
            Algo::BetterVc => "better_vc",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm `{s}`")))
    }
}

/// Branching probabilities for the vertex-cover algorithms.
///
/// `gamma_by_degree[d]` is the chance of taking `{v}` when branching on a
/// degree-`d` vertex; degrees at or above `delta_cap` use the `delta_cap` entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VcConfig {
    #[serde(default = "default_delta_cap")]
    pub delta_cap: usize,
    #[serde(default)]
    pub excluded_degree: Option<usize>,
    #[serde(default)]
    pub gamma_by_degree: BTreeMap<usize, f64>,
    #[serde(default)]
    pub lambda1: BTreeMap<usize, f64>,
    #[serde(default)]
    pub lambda2: BTreeMap<usize, f64>,
    #[serde(default)]
    pub lambda3: Option<f64>,
    #[serde(default)]
    pub delta3way: BTreeMap<usize, [f64; 3]>,
    #[serde(default)]
    pub rng_seed: u64,
}

fn default_delta_cap() -> usize {
    DEFAULT_DELTA_CAP
}

impl Default for VcConfig {
    fn default() -> Self {
        VcConfig {
            delta_cap: DEFAULT_DELTA_CAP,
            excluded_degree: None,
            gamma_by_degree: BTreeMap::new(),
            lambda1: BTreeMap::new(),
            lambda2: BTreeMap::new(),
            lambda3: None,
            delta3way: BTreeMap::new(),
            rng_seed: 0,
        }
    }
}

fn check_prob(what: &str, p: f64) -> Result<f64> {
    if p > 0.0 && p < 1.0 {
        Ok(p)
    } else {
        Err(Error::Config(format!("{what} = {p} is not in (0,1)")))
    }
}

impl VcConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: VcConfig = serde_json::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Checks the entries that are present; completeness per algorithm is
    /// checked lazily when a case needs an entry.
    pub fn validate(&self) -> Result<()> {
        if self.delta_cap < 3 {
            return Err(Error::Config(format!("delta_cap {} < 3", self.delta_cap)));
        }
        for (d, &g) in &self.gamma_by_degree {
            check_prob(&format!("gamma_by_degree[{d}]"), g)?;
        }
        for (r, &g) in &self.lambda1 {
            check_prob(&format!("lambda1[{r}]"), g)?;
        }
        for (r, &g) in &self.lambda2 {
            check_prob(&format!("lambda2[{r}]"), g)?;
        }
        if let Some(g) = self.lambda3 {
            check_prob("lambda3", g)?;
        }
        for (r, t) in &self.delta3way {
            for (i, &p) in t.iter().enumerate() {
                check_prob(&format!("delta3way[{r}][{i}]"), p)?;
            }
            let s: f64 = t.iter().sum();
            if (s - 1.0).abs() > 1e-12 {
                return Err(Error::Config(format!("delta3way[{r}] sums to {s}")));
            }
        }
        if let Some(d) = self.excluded_degree {
            if d < 2 || d >= self.delta_cap {
                return Err(Error::Config(format!("excluded_degree {d} not in [2, delta_cap)")));
            }
        }
        Ok(())
    }

    pub fn gamma(&self, degree: usize) -> Result<f64> {
        let d = degree.min(self.delta_cap);
        self.gamma_by_degree
            .get(&d)
            .copied()
            .ok_or_else(|| Error::Config(format!("missing gamma_by_degree[{d}]")))
    }

    pub fn lambda1(&self, r: usize) -> Result<f64> {
        self.lambda1.get(&r).copied().ok_or_else(|| Error::Config(format!("missing lambda1[{r}]")))
    }

    pub fn lambda2(&self, r: usize) -> Result<f64> {
        self.lambda2.get(&r).copied().ok_or_else(|| Error::Config(format!("missing lambda2[{r}]")))
    }

    pub fn lambda3(&self) -> Result<f64> {
        self.lambda3.ok_or_else(|| Error::Config("missing lambda3".into()))
    }

    pub fn delta3way(&self, r: usize) -> Result<[f64; 3]> {
        self.delta3way.get(&r).copied().ok_or_else(|| Error::Config(format!("missing delta3way[{r}]")))
    }

    pub fn excluded_degree(&self) -> Result<usize> {
        self.excluded_degree.ok_or_else(|| Error::Config("missing excluded_degree".into()))
    }
}
