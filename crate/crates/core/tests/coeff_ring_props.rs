use proptest::prelude::*;
use yh_core::coeff_ring::{close, rat, ComplexVal, Monomial, Poly};

fn monomial() -> impl Strategy<Value = Monomial> {
    (-2i32..3, 0u32..3, prop::collection::vec((1u32..4, 1u32..3), 0..3)).prop_map(|(u, z, x)| Monomial::new(u, z, x))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((monomial(), -5i64..6, 1i64..4), 0..5).prop_map(|terms| {
        let mut p = Poly::zero();
        for (m, n, d) in terms {
            p.add_term(m, rat(n, d));
        }
        p
    })
}

fn sample() -> (ComplexVal, ComplexVal, Vec<ComplexVal>) {
    let x = (1..4).map(|k| ComplexVal::new(0.3 * k as f64, -0.2 + 0.1 * k as f64)).collect();
    (ComplexVal::new(1.7, 0.4), ComplexVal::new(-0.6, 0.9), x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Poly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a * &Poly::zero()).is_zero());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(), b in poly()) {
        let (u, z, x) = sample();
        let ev = |p: &Poly| p.eval(u, z, &x).unwrap();
        prop_assert!(close(ev(&(&a * &b)), ev(&a) * ev(&b), 1e-9));
        prop_assert!(close(ev(&(&a + &b)), ev(&a) + ev(&b), 1e-9));
    }

    #[test]
    fn json_round_trip(a in poly()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: Poly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn relabeling_x_is_a_ring_map(a in poly(), b in poly()) {
        let f = |k: u32| k % 2;
        prop_assert_eq!((&a * &b).map_x(f), &a.map_x(f) * &b.map_x(f));
    }
}

#[test]
fn laurent_powers_cancel() {
    let p = &Poly::u_pow(3) * &Poly::u_pow(-3);
    assert_eq!(p, Poly::one());
    let q = (&Poly::u() - &Poly::one()).pow(3);
    assert_eq!(q.len(), 4);
}
