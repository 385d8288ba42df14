//! Lagrangian dual of a single branching state.
//!
//! With slack `c = b - alpha * k` and log-weights `lng = ln gamma`,
//!
//! ```text
//! F(t) = min_{mu >= 0} ln sum_i exp(lng_i + t k_i - mu c_i)
//! ```
//!
//! is convex and non-decreasing in `t`, and `min_q D(q || gamma) - t q.k` over
//! feasible `q` equals `-F(t)`. The branching number is therefore the smallest
//! `t >= 0` with `F(t) >= 0`, and the minimizer is the tilted distribution
//! `q_i = exp(lng_i + t k_i - mu c_i - F(t))`. `F` is also concave in `gamma`,
//! with supergradient `q_i / gamma_i`.

pub(crate) struct StateDual {
    pub k: Vec<f64>,
    pub c: Vec<f64>,
}

#[derive(Clone, Debug)]
pub(crate) struct DualPoint {
    pub f: f64,
    pub q: Vec<f64>,
}

fn tilt(a: &[f64], c: &[f64], mu: f64, q: &mut [f64]) -> (f64, f64, f64) {
    let mut m = f64::NEG_INFINITY;
    for (i, &ai) in a.iter().enumerate() {
        if ai > f64::NEG_INFINITY {
            m = m.max(ai - mu * c[i]);
        }
    }
    let mut s = 0.0;
    for (i, &ai) in a.iter().enumerate() {
        q[i] = if ai > f64::NEG_INFINITY { (ai - mu * c[i] - m).exp() } else { 0.0 };
        s += q[i];
    }
    let (mut mean, mut sq) = (0.0, 0.0);
    for (i, qi) in q.iter_mut().enumerate() {
        *qi /= s;
        mean += *qi * c[i];
        sq += *qi * c[i] * c[i];
    }
    (m + s.ln(), mean, (sq - mean * mean).max(0.0))
}

impl StateDual {
    pub fn new(b: &[usize], k: &[usize], alpha: f64) -> Self {
        StateDual {
            k: k.iter().map(|&x| x as f64).collect(),
            c: b.iter().zip(k).map(|(&bi, &ki)| bi as f64 - alpha * ki as f64).collect(),
        }
    }

    /// Some supported option has non-positive slack.
    pub fn feasible(&self, lng: &[f64]) -> bool {
        lng.iter().zip(&self.c).any(|(&l, &c)| l > f64::NEG_INFINITY && c <= 0.0)
    }

    /// Smallest `t` at which a vertex of the feasible set certifies `F(t) >= 0`.
    pub fn vertex_bound(&self, lng: &[f64]) -> f64 {
        let mut best = f64::INFINITY;
        for ((&l, &c), &k) in lng.iter().zip(&self.c).zip(&self.k) {
            if l > f64::NEG_INFINITY && c <= 0.0 && k > 0.0 {
                best = best.min(-l / k);
            }
        }
        best
    }

    pub fn eval(&self, lng: &[f64], t: f64) -> DualPoint {
        let r = lng.len();
        let a: Vec<f64> = (0..r).map(|i| lng[i] + t * self.k[i]).collect();
        let mut q = vec![0.0; r];
        let (f0, mean0, _) = tilt(&a, &self.c, 0.0, &mut q);
        if mean0 <= 0.0 {
            return DualPoint { f: f0, q };
        }
        let has_neg = (0..r).any(|i| a[i] > f64::NEG_INFINITY && self.c[i] < 0.0);
        if !has_neg {
            let az: Vec<f64> = (0..r)
                .map(|i| if self.c[i] == 0.0 { a[i] } else { f64::NEG_INFINITY })
                .collect();
            if az.iter().all(|&x| x == f64::NEG_INFINITY) {
                return DualPoint { f: f64::NEG_INFINITY, q: vec![0.0; r] };
            }
            let (f, _, _) = tilt(&az, &self.c, 0.0, &mut q);
            return DualPoint { f, q };
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..2000 {
            let (_, mean, _) = tilt(&a, &self.c, hi, &mut q);
            if mean <= 0.0 {
                break;
            }
            lo = hi;
            hi *= 2.0;
        }
        let scale = self.c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let mut mu = 0.5 * (lo + hi);
        let mut f = f0;
        for _ in 0..200 {
            let (fm, mean, var) = tilt(&a, &self.c, mu, &mut q);
            f = fm;
            if mean.abs() <= 1e-15 * scale {
                break;
            }
            if mean > 0.0 {
                lo = mu;
            } else {
                hi = mu;
            }
            let newton = if var > 0.0 { mu + mean / var } else { f64::NAN };
            mu = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if hi - lo <= 1e-16 * hi.max(1.0) {
                let (fm, _, _) = tilt(&a, &self.c, mu, &mut q);
                f = fm;
                break;
            }
        }
        DualPoint { f, q }
    }
}

pub(crate) fn ln_weights(gamma: &[f64]) -> Vec<f64> {
    gamma.iter().map(|&g| if g > 0.0 { g.ln() } else { f64::NEG_INFINITY }).collect()
}
