use padic_hyper::cyclotomic::CycloElement;
use proptest::prelude::*;

const N: i64 = 12;

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 5, 7])
}

fn element(p: u32) -> impl Strategy<Value = CycloElement> {
    prop::collection::vec(-500i64..500, (p - 1) as usize)
        .prop_map(move |c| CycloElement::from_int_coeffs(p, &c, N))
}

fn pair() -> impl Strategy<Value = (CycloElement, CycloElement, u32)> {
    prime().prop_flat_map(|p| (element(p), element(p), 1..p))
}

/// Largest k with `x·π^{−k}` integral, by repeated division.
fn brute_valuation(x: &CycloElement) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = x.p();
    let pinv = CycloElement::pi_inverse(p, 4 * N);
    let mut y = x.clone();
    let mut k = 0;
    loop {
        let next = &y * &pinv;
        if next.coeffs().iter().any(|c| !c.is_integral()) || next.is_zero() {
            return Some(k);
        }
        y = next;
        k += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuation_matches_division_by_pi((x, _, _) in pair()) {
        prop_assert_eq!(x.valuation(), brute_valuation(&x));
    }

    #[test]
    fn galois_is_a_ring_homomorphism((x, y, i) in pair()) {
        let sx = x.galois_apply(i).unwrap();
        let sy = y.galois_apply(i).unwrap();
        let prod = (&x * &y).galois_apply(i).unwrap();
        let sum = (&x + &y).galois_apply(i).unwrap();
        prop_assert!(prod.agreement(&(&sx * &sy)) >= prod.precision_pi().min((&sx * &sy).precision_pi()));
        prop_assert!(sum.agreement(&(&sx + &sy)) >= sum.precision_pi());
        prop_assert_eq!(sx.valuation(), x.valuation());
    }

    #[test]
    fn galois_group_law((x, _, i) in pair(), j in 1u32..7) {
        let p = x.p();
        prop_assume!(j % p != 0);
        let two = x.galois_apply(j).unwrap().galois_apply(i).unwrap();
        let one = x.galois_apply((i * j) % p).unwrap();
        prop_assert!(two.agreement(&one) >= two.precision_pi().min(one.precision_pi()));
    }

    #[test]
    fn inverse_and_norm((x, y, _) in pair()) {
        prop_assume!(!x.is_zero() && !y.is_zero());
        let p = x.p();
        let q = x.inv().unwrap();
        let one = &x * &q;
        prop_assert!(one.agreement(&CycloElement::one(p, N)) >= one.precision_pi());
        let nxy = (&x * &y).norm().unwrap();
        let nx = x.norm().unwrap();
        let ny = y.norm().unwrap();
        prop_assert!(nxy.agreement(&(&nx * &ny)) >= nxy.abs_precision().min((&nx * &ny).abs_precision()));
    }
}

#[test]
fn zeta_is_a_root_of_unity() {
    for p in [3u32, 5, 7, 11] {
        let z = CycloElement::zeta(p, N);
        let one = CycloElement::one(p, N);
        assert!(z.pow(u64::from(p)).agreement(&one) >= N * (i64::from(p) - 1));
        assert_eq!(CycloElement::pi(p, N).valuation(), Some(1));
        assert_eq!(
            CycloElement::from_int_coeffs(p, &[i64::from(p)], N).valuation(),
            Some(i64::from(p) - 1)
        );
    }
}
