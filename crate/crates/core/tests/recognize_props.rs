use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use padic_hyper::padic::rational_recognize;
use padic_hyper::Padic;

#[test]
fn recovers_every_small_fraction() {
    let h = 20i64;
    let n = 8; // 3^8 = 6561 > 2·20²
    for a in -h..=h {
        for b in 1..=h {
            if b % 3 == 0 || a.gcd(&b) != 1 {
                continue;
            }
            let q = BigRational::new(a.into(), b.into());
            let x = Padic::from_rational(&q, 3, n);
            assert_eq!(
                rational_recognize(&x, &BigInt::from(h)).unwrap(),
                Some(q),
                "{a}/{b}"
            );
        }
    }
}

#[test]
fn zagier_constant_is_not_small() {
    // A mod 3^10 has no representative with numerator and denominator ≤ 50
    let a = Padic::from_digits(3, 0, &[2, 1, 2, 0, 0, 0, 2, 1, 2, 2]);
    assert_eq!(rational_recognize(&a, &BigInt::from(50)).unwrap(), None);
}

#[test]
fn rejects_insufficient_precision() {
    let x = Padic::from_integer(7, 5, 3);
    assert!(rational_recognize(&x, &BigInt::from(10)).is_err());
}
