use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use yh_core::framed_braids::{parse_braid, random_word, FramedBraidWord};

fn word(n: usize) -> impl Strategy<Value = FramedBraidWord> {
    (any::<u64>(), 0usize..8).prop_map(move |(seed, len)| random_word(n, len, 5, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn split_form_is_a_homomorphism(a in word(3), b in word(3)) {
        let ab = a.concat(&b).unwrap();
        prop_assert_eq!(ab.split_form(), a.split_form().braid_mul(&b.split_form()).unwrap());
    }

    #[test]
    fn exponent_is_additive(a in word(4), b in word(4)) {
        prop_assert_eq!(a.concat(&b).unwrap().exponent(), a.exponent() + b.exponent());
        prop_assert_eq!(a.split_form().exponent(), a.exponent());
    }

    #[test]
    fn reduction_commutes_with_products(a in word(3), b in word(3), d in 1u32..6) {
        let lhs = a.split_form().braid_mul(&b.split_form()).unwrap().mod_reduce(d).unwrap();
        let rhs = a.split_form().mod_reduce(d).unwrap().braid_mul(&b.split_form().mod_reduce(d).unwrap()).unwrap()
            .mod_reduce(d).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn split_word_round_trip(a in word(3)) {
        prop_assert_eq!(a.split_form().to_word().split_form(), a.split_form());
        prop_assert_eq!(parse_braid(&a.to_string(), 3).unwrap(), a);
    }
}

#[test]
fn framing_moves_along_the_strand() {
    // t1 s1 = s1 t2
    let a = parse_braid("t1 s1", 2).unwrap();
    let b = parse_braid("s1 t2", 2).unwrap();
    assert_eq!(a.split_form(), b.split_form());
    assert_eq!(parse_braid("s1 s2 s1", 3).unwrap().component_count(), 2);
}

#[test]
fn parse_errors_carry_offsets() {
    let e = parse_braid("s1  t2^x", 2).unwrap_err();
    assert_eq!(
        e.to_string(),
        yh_core::Error::Parse { offset: 7, message: "expected an integer exponent".into() }.to_string()
    );
}
