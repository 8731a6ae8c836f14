//! Cross-checks of the transform layer against closed-form counts.

use csk_core::rational::{binomial, int, powi, ratio};
use csk_core::transforms::{self, MomentSequence};
use csk_core::varfun::{self, VarianceFunction};
use csk_core::Rational;

fn bin(n: u64, k: u64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

fn narayana(n: u64, k: u64) -> Rational {
    bin(n, k) * bin(n, k - 1) / int(n as i64)
}

/// Moments of the Marchenko-Pastur law with rate `lambda`.
fn marchenko_pastur_moments(lambda: &Rational, order: u64) -> Vec<Rational> {
    let mut out = vec![int(1)];
    for n in 1..=order {
        out.push(
            (1..=n)
                .map(|k| narayana(n, k) * powi(lambda, k as i64))
                .sum(),
        );
    }
    out
}

#[test]
fn marchenko_pastur_against_narayana() {
    for lambda in [int(1), int(2), int(3), ratio(1, 2), ratio(5, 3)] {
        let s = transforms::marchenko_pastur_s(&lambda, 8).unwrap();
        let m = transforms::moments_from_s(&s);
        assert_eq!(
            m.as_slice(),
            marchenko_pastur_moments(&lambda, 9).as_slice(),
            "lambda = {lambda}"
        );
        let k = transforms::moments_to_free_cumulants(&m);
        assert!(k.as_slice().iter().all(|c| *c == lambda));
    }
}

#[test]
fn fuss_catalan_against_binomials() {
    for p in 1..=4u64 {
        let m = transforms::fuss_catalan_power(&int(1), &int(p as i64), 9).unwrap();
        for n in 0..=9u64 {
            let expected = bin((p + 1) * n, n) / int((p * n + 1) as i64);
            assert_eq!(m.get(n as usize), &expected, "p = {p}, n = {n}");
        }
    }
}

#[test]
fn dilated_marchenko_pastur_from_the_product_form() {
    // (1 + b z)^{-1} is the S-transform of pi_{1/b} dilated by b
    for b in [int(2), ratio(1, 3), ratio(3, 2)] {
        let m = transforms::fuss_catalan_power(&b, &int(1), 8).unwrap();
        let base = MomentSequence::new(marchenko_pastur_moments(&b.recip(), 8)).unwrap();
        assert_eq!(m, transforms::dilate(&base, &b).unwrap());
    }
}

#[test]
fn centered_poisson_has_linear_varfun() {
    // pi_lambda translated by -lambda, dilated to unit variance
    for lambda in [int(1), int(4), ratio(9, 4)] {
        let raw = MomentSequence::new(marchenko_pastur_moments(&lambda, 10)).unwrap();
        let mut k = transforms::moments_to_free_cumulants(&raw);
        k = transforms::translate(&k, &-lambda.clone());
        let scale = if lambda == ratio(9, 4) {
            ratio(2, 3)
        } else if lambda == int(4) {
            ratio(1, 2)
        } else {
            int(1)
        };
        let k = transforms::dilate_cumulants(&k, &scale).unwrap();
        let v = varfun::varfun_from_moments(&transforms::free_cumulants_to_moments(&k)).unwrap();
        let expected = VarianceFunction::polynomial(&[int(1), scale]).unwrap();
        assert!(v.agrees_with(&expected), "lambda = {lambda}");
    }
}
