use branchrate::asymptotics::{
    alpha_branching_number, composite_rate, extended_kl, kl_divergence, optimize_rule_generic, optimize_simple_rule,
    RuleSpec,
};
use branchrate::{CompositeRecurrence, Distribution, Term};
use proptest::prelude::*;

fn simplex(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..1.0, n).prop_map(|v| {
        let s: f64 = v.iter().sum();
        v.into_iter().map(|x| x / s).collect()
    })
}

fn dot(a: &[f64], b: &[usize]) -> f64 {
    a.iter().zip(b).map(|(x, &y)| x * y as f64).sum()
}

fn objective(q: &[f64], g: &[f64], k: &[usize]) -> f64 {
    kl_divergence(q, g).unwrap() / dot(q, k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kl_nonnegative(c in simplex(4), d in simplex(4)) {
        let v = kl_divergence(&c, &d).unwrap();
        prop_assert!(v >= 0.0);
        prop_assert!(kl_divergence(&c, &c).unwrap().abs() <= 1e-12);
        if c.iter().zip(&d).any(|(x, y)| (x - y).abs() > 1e-6) {
            prop_assert!(v > 0.0);
        }
    }

    #[test]
    fn extended_kl_block_identity(t in simplex(5), u1 in simplex(2), u2 in simplex(3)) {
        let ups: Vec<f64> = u1.iter().chain(&u2).copied().collect();
        let direct = extended_kl(&t, &ups, &[2, 3]).unwrap();
        let (l1, l2) = (t[0] + t[1], t[2] + t[3] + t[4]);
        let cond = |part: &[f64], l: f64, u: &[f64]| {
            let c: Vec<f64> = part.iter().map(|x| x / l).collect();
            l * kl_divergence(&c, u).unwrap()
        };
        let blocks = cond(&t[..2], l1, &u1) + cond(&t[2..], l2, &u2);
        prop_assert!((direct - blocks).abs() <= 1e-12, "{direct} vs {blocks}");
    }

    #[test]
    fn branching_number_certificate_and_monotone(
        b in prop::collection::vec(1usize..5, 3),
        k in prop::collection::vec(0usize..4, 3),
        g in simplex(3),
        a in 1.05f64..2.5,
    ) {
        prop_assume!(k.iter().any(|&x| x > 0));
        let r = alpha_branching_number(&b, &k, &g, a, 1e-9).unwrap();
        let r2 = alpha_branching_number(&b, &k, &g, a + 0.2, 1e-9).unwrap();
        prop_assert!(r2.m <= r.m + 1e-7, "m({}) = {} > m({a}) = {}", a + 0.2, r2.m, r.m);
        if let Some(q) = &r.q_star {
            prop_assert!(dot(q, &b) <= a * dot(q, &k) + 1e-9);
            prop_assert!((objective(q, &g, &k) - r.m).abs() <= 1e-7);
            prop_assert!((r.base - r.m.exp()).abs() <= 1e-12 * r.base);
        } else {
            prop_assert!(r.m.is_infinite());
        }
    }

    #[test]
    fn objective_is_quasiconvex(
        k in prop::collection::vec(0usize..4, 3),
        g in simplex(3),
        q1 in simplex(3),
        q2 in simplex(3),
        lam in 0.01f64..0.99,
    ) {
        let b = [1usize, 2, 3];
        let alpha = 1.5;
        let feasible = |q: &[f64]| dot(q, &k) > 0.0 && dot(q, &b) <= alpha * dot(q, &k);
        prop_assume!(feasible(&q1) && feasible(&q2));
        let mix: Vec<f64> = q1.iter().zip(&q2).map(|(x, y)| lam * x + (1.0 - lam) * y).collect();
        let m = objective(&mix, &g, &k);
        prop_assert!(m <= objective(&q1, &g, &k).max(objective(&q2, &g, &k)) + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn generic_agrees_with_simple(b1 in 1usize..4, b2 in 2usize..6, ds1 in 1usize..3, ds2 in 1usize..3, a in 1.2f64..1.8) {
        prop_assume!(ds1 <= b1 && ds2 <= b2);
        let (s1, s2) = (b1 - ds1, b2 - ds2);
        let simple = optimize_simple_rule(b1, b2, s1, s2, a, 1e-9).unwrap();
        let rule = RuleSpec::new("r", vec![b1, b2], vec![vec![b1, s2], vec![s1, b2]]);
        let generic = optimize_rule_generic(&rule, a, 1e-9).unwrap();
        prop_assert!((simple.m_star - generic.m_star).abs() <= 1e-4, "{} vs {}", simple.m_star, generic.m_star);
    }
}

#[test]
fn composite_is_max_of_terms() {
    let t1 = Term::new(vec![1, 3], vec![1, 0], Distribution::binary(0.7).unwrap()).unwrap();
    let t2 = Term::new(vec![1, 3], vec![0, 3], Distribution::binary(0.7).unwrap()).unwrap();
    let m1 = alpha_branching_number(t1.b(), t1.k(), t1.gamma(), 1.5, 1e-9).unwrap().m;
    let m2 = alpha_branching_number(t2.b(), t2.k(), t2.gamma(), 1.5, 1e-9).unwrap().m;
    let (m, per) = composite_rate(&CompositeRecurrence::new(vec![t1, t2]), 1.5, 1e-9).unwrap();
    assert_eq!(per.len(), 2);
    assert!((m - m1.max(m2)).abs() < 1e-12);
}
