use num_bigint::BigInt;
use padic_hyper::cyclotomic::CycloElement;
use padic_hyper::hyper::f1_exact;
use padic_hyper::theorem1::{
    a_conjugates, a_zeta, a_zeta_series, binom_limit_check, binom_product_exact, theorem_ii_check,
};
use padic_hyper::{Padic, Precision};

#[test]
fn partials_at_three_are_f1_values() {
    let prec = Precision::new(12);
    let report = a_zeta_series(3, 5, 1, &prec).unwrap();
    for (s, x) in report.indices.iter().zip(&report.partials) {
        let n = 3u64.pow(*s);
        let exact = Padic::from_rational(&f1_exact(n), 3, prec.working());
        assert!(x.coeff(0).congruent(&exact, prec.working()), "s = {s}");
        assert!(x.coeff(1).is_zero());
    }
}

#[test]
fn galois_equivariance_at_five() {
    let prec = Precision::new(8);
    let direct = a_zeta_series(5, 3, 1, &prec).unwrap();
    let twisted = a_zeta_series(5, 3, 2, &prec).unwrap();
    for (x, y) in direct.partials.iter().zip(&twisted.partials) {
        let sx = x.galois_apply(2).unwrap();
        assert!(sx.agreement(y) >= y.precision_pi().min(sx.precision_pi()));
    }
}

#[test]
fn conjugates_and_group_law() {
    let (a, _) = a_zeta(5, 3, &Precision::new(6)).unwrap();
    let conj = a_conjugates(&a).unwrap();
    assert_eq!(conj[0], a);
    let back = conj[2].galois_apply(2).unwrap();
    assert!(back.agreement(&a) >= a.precision_pi() - 4);
    let (a3, _) = a_zeta(3, 4, &Precision::new(6)).unwrap();
    assert!(a_conjugates(&a3).unwrap()[1].agreement(&a3) >= a3.precision_pi());
}

#[test]
fn partial_sums_at_five_divisible() {
    let report = a_zeta_series(5, 5, 1, &Precision::new(6)).unwrap();
    assert!(report.stabilized);
    assert_eq!(report.partials.len(), 5);
    // s = 1 again from integer coordinates: Σ_{k<5} binom(2k,k) g^{2(4−k)}
    let g = &CycloElement::zeta_pow(5, 1, 40) + &CycloElement::zeta_pow(5, -1, 40);
    let g2 = &g * &g;
    let mut sum = CycloElement::zero(5, 40);
    for (k, c) in [1i64, 2, 6, 20, 70].iter().enumerate() {
        sum = &sum + &g2.pow(4 - k as u64).scale(&Padic::from_integer(*c, 5, 40));
    }
    assert!(sum.coeffs().iter().all(|c| c.valuation_bound() >= 2));
}

#[test]
fn odd_r_vanishes_at_five() {
    let check = theorem_ii_check(5, 2, 5, &Precision::new(6)).unwrap();
    assert!(check.lhs.is_zero() && check.rhs.is_zero());
    assert!(check.eigen_agreement >= 4 * 6);
}

#[test]
fn gamma_limit_matches_integers() {
    for s in 1..=3 {
        let (b, num, den) = binom_product_exact(3, s);
        assert_eq!(b * den, num, "s = {s}");
    }
    let (b, num, den) = binom_product_exact(5, 2);
    assert_eq!(b * den, num);
    let prec = Precision::new(10);
    let check = binom_limit_check(3, 6, 6, &prec).unwrap();
    assert_eq!(
        check.products[0],
        Padic::from_integer(BigInt::from(20), 3, 16)
    );
    assert!(check
        .report
        .partials
        .iter()
        .all(|b| b.valuation() == Some(0)));
    let doubled = binom_limit_check(3, 6, 6, &prec.doubled()).unwrap();
    for (a, b) in check.against_limit.iter().zip(&doubled.against_limit) {
        assert!(a == b || *a >= prec.working());
    }
}
