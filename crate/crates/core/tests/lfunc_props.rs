use num_rational::BigRational;
use padic_hyper::lfunc::{gen_bernoulli, lp_interpolation_check, lp_value, OmegaCharacter};
use padic_hyper::series::bernoulli_poly;
use padic_hyper::{Padic, Precision};
use proptest::prelude::*;

fn padic_s(p: u32, digits: Vec<u32>) -> Padic {
    Padic::from_digits(p, 0, &digits)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn odd_branches_vanish(p in prop::sample::select(vec![3u32, 5]), j in 0i64..4, digits in prop::collection::vec(0u32..3, 30)) {
        let chi = OmegaCharacter::new(p, 2 * j + 1).unwrap();
        prop_assume!(!chi.is_even());
        let s = padic_s(p, digits);
        prop_assume!((&s - &Padic::one(p, 30)).valuation() == Some(0));
        let l = lp_value(p, s, i64::from(chi.exponent()), &Precision::new(10)).unwrap();
        prop_assert!(l.value.is_zero());
        prop_assert!(l.value.abs_precision() >= 10);
    }

    #[test]
    fn continuity(p in prop::sample::select(vec![3u32, 5]), j in 0i64..4, base in 2i64..40, unit in 1i64..50, m in 1i64..=6) {
        prop_assume!(unit % i64::from(p) != 0 && (base - 1) % i64::from(p) != 0);
        let prec = Precision::new(10);
        let s1 = Padic::from_integer(base, p, 40);
        let s2 = Padic::from_integer(base + unit * i64::from(p).pow(m as u32), p, 40);
        let a = lp_value(p, s1, j, &prec).unwrap().value;
        let b = lp_value(p, s2, j, &prec).unwrap().value;
        prop_assert!(a.congruent(&b, (m - 1).min(10)), "{} vs {}", a, b);
    }

    #[test]
    fn integer_and_padic_arguments_agree(p in prop::sample::select(vec![3u32, 5]), j in 0i64..4, s in -8i64..12) {
        prop_assume!(s != 1);
        let prec = Precision::new(8);
        let exact = lp_value(p, s, j, &prec).unwrap().value;
        let padic = lp_value(p, Padic::from_integer(s, p, 40), j, &prec).unwrap().value;
        prop_assert!(exact.congruent(&padic, 8));
    }
}

#[test]
fn interpolation_at_negative_integers() {
    let prec = Precision::new(12);
    let ns: Vec<usize> = (1..=8).collect();
    for p in [3u32, 5] {
        for j in 0..i64::from(p) - 1 {
            for (n, agreement) in lp_interpolation_check(p, j, &ns, &prec).unwrap() {
                assert!(
                    agreement >= prec.target() - 2,
                    "p = {p}, j = {j}, n = {n}: {agreement}"
                );
            }
        }
    }
}

#[test]
fn gen_bernoulli_definition() {
    // B_{2,ω²} at p = 5 from the defining sum, with χ(a) as Teichmüller powers
    let prec = Precision::new(10);
    let chi = OmegaCharacter::new(5, 2).unwrap();
    let mut direct = Padic::zero(5, 12);
    for a in 1..5i64 {
        let b = bernoulli_poly(2, &BigRational::new(a.into(), 5.into()))
            * BigRational::from_integer(5.into());
        direct = &direct + &(&chi.eval(a, 14) * &Padic::from_rational(&b, 5, 12));
    }
    let g = gen_bernoulli(2, 2, 5, &prec).unwrap();
    assert!(g.congruent(&direct, 10));
}

#[test]
fn interpolation_examples() {
    let prec = Precision::new(10);
    let third = lp_interpolation_check(3, 0, &[2], &prec).unwrap();
    assert!(third[0].1 >= 10);
    let l = lp_value(3, 0, 1, &prec).unwrap().value;
    assert!(l.is_zero());
    let z5 = lp_value(5, 2, 0, &prec).unwrap().value;
    assert_eq!(z5.valuation(), Some(-1));
}
