use csk_core::families::{self, RecursionSpec};
use csk_core::jacobi::jacobi_from_moments;
use csk_core::noncrossing;
use csk_core::rational::{int, ratio};
use csk_core::transforms::{self, FreeCumulants};
use csk_core::varfun::{self, Operand, VarfunOp, VarianceClass, VarianceFunction};
use csk_core::{Polynomial, Rational, Series};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != int(0))
}

fn series(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(small_rational(), order + 1).prop_map(|c| Series::new(c).unwrap())
}

fn unit_series(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(small_rational(), order).prop_map(|mut c| {
        c.insert(0, int(1));
        Series::new(c).unwrap()
    })
}

/// Normalized polynomial variance function of exact degree `degree`.
fn varfun_of_degree(degree: usize) -> impl Strategy<Value = VarianceFunction> {
    (
        prop::collection::vec(small_rational(), degree.saturating_sub(1)),
        nonzero_rational(),
    )
        .prop_map(move |(mut mid, lead)| {
            let mut c = vec![int(1)];
            c.append(&mut mid);
            if degree > 0 {
                c.push(lead);
            }
            VarianceFunction::polynomial(&c).unwrap()
        })
}

fn cumulants(order: usize) -> impl Strategy<Value = FreeCumulants> {
    prop::collection::vec(small_rational(), order).prop_map(FreeCumulants::new)
}

/// Free cumulants `(0, 1, kappa_3, ...)` of a centered, unit-variance law.
fn normalized_cumulants(order: usize) -> impl Strategy<Value = FreeCumulants> {
    prop::collection::vec(small_rational(), order - 2).prop_map(|mut tail| {
        let mut k = vec![int(0), int(1)];
        k.append(&mut tail);
        FreeCumulants::new(k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_ring_laws(a in series(6), b in series(6), c in series(6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn reciprocal_is_inverse(a in unit_series(7), scale in nonzero_rational()) {
        let a = a.scale(&scale);
        prop_assert_eq!(&a * &a.recip().unwrap(), Series::one(7));
    }

    #[test]
    fn reversion_is_an_involution(tail in prop::collection::vec(small_rational(), 6), lead in nonzero_rational()) {
        let mut c = vec![int(0), lead];
        c.extend(tail);
        let g = Series::new(c).unwrap();
        let h = g.revert().unwrap();
        prop_assert_eq!(h.revert().unwrap(), g.clone());
        prop_assert_eq!(g.compose(&h).unwrap(), Series::z(7));
    }

    #[test]
    fn rational_powers_add(a in unit_series(6), p in small_rational(), q in small_rational()) {
        let lhs = &a.pow_rational(&p).unwrap() * &a.pow_rational(&q).unwrap();
        prop_assert_eq!(lhs, a.pow_rational(&(&p + &q)).unwrap());
    }

    #[test]
    fn cumulant_round_trip(k in cumulants(9)) {
        let m = transforms::free_cumulants_to_moments(&k);
        prop_assert_eq!(transforms::moments_to_free_cumulants(&m), k);
    }

    #[test]
    fn noncrossing_oracle_agrees(k in cumulants(8)) {
        let m = transforms::free_cumulants_to_moments(&k);
        for n in 1..=8 {
            prop_assert_eq!(&noncrossing::moments_via_noncrossing(&k, n).unwrap(), m.get(n));
        }
    }

    #[test]
    fn additive_convolution_adds_cumulants(a in cumulants(7), b in cumulants(7), t in 1i64..=3) {
        let sum = transforms::free_additive_convolve(&a, &b).unwrap();
        for n in 1..=7 {
            prop_assert_eq!(sum.get(n), &(a.get(n) + b.get(n)));
        }
        let power = transforms::free_convolution_power(&a, &int(t));
        let mut repeated = a.clone();
        for _ in 1..t {
            repeated = transforms::free_additive_convolve(&repeated, &a).unwrap();
        }
        prop_assert_eq!(power.cumulants, repeated);
    }

    #[test]
    fn varfun_bijection(v in varfun_of_degree(4)) {
        let m = varfun::moments_from_varfun(&v, 12).unwrap();
        let back = varfun::varfun_from_moments(&m).unwrap();
        prop_assert_eq!(back.order(), 10);
        prop_assert!(back.agrees_with(&v));
    }

    #[test]
    fn cumulants_determine_the_varfun(k in normalized_cumulants(10)) {
        let m = transforms::free_cumulants_to_moments(&k);
        let v = varfun::varfun_from_moments(&m).unwrap();
        prop_assert_eq!(varfun::moments_from_varfun(&v, 10).unwrap(), m);
    }

    #[test]
    fn reflection_matches_reflected_moments(k in normalized_cumulants(10)) {
        let m = transforms::free_cumulants_to_moments(&k);
        let v = varfun::varfun_from_moments(&m).unwrap();
        let reflected = transforms::dilate(&m, &int(-1)).unwrap();
        let direct = varfun::varfun_from_moments(&reflected).unwrap();
        let via_op = varfun::apply_varfun_op(&VarfunOp::Reflect, Operand::new(&v, VarianceClass::V), None).unwrap();
        prop_assert_eq!(via_op.varfun, direct);
    }

    #[test]
    fn mean_rescaling_is_power_then_dilation(k in normalized_cumulants(10), c in 1i64..=3) {
        // V(m / c) generates the c^2-th free convolution power dilated by 1/c
        let c = int(c);
        let m = transforms::free_cumulants_to_moments(&k);
        let v = varfun::varfun_from_moments(&m).unwrap();
        let power = transforms::free_convolution_power(&k, &(&c * &c)).cumulants;
        let target = transforms::dilate_cumulants(&power, &c.recip()).unwrap();
        let direct = varfun::varfun_from_moments(&transforms::free_cumulants_to_moments(&target)).unwrap();
        let via_op = varfun::apply_varfun_op(&VarfunOp::ScaleMean(c), Operand::new(&v, VarianceClass::V), None).unwrap();
        prop_assert_eq!(via_op.varfun, direct);
    }

    #[test]
    fn square_addition_and_removal_cancel(v in varfun_of_degree(3)) {
        let added = varfun::apply_varfun_op(&VarfunOp::AddSquare, Operand::new(&v, VarianceClass::V), None).unwrap();
        let back = varfun::apply_varfun_op(
            &VarfunOp::SubSquare,
            Operand::new(&added.varfun, VarianceClass::VInfinity),
            None,
        ).unwrap();
        prop_assert_eq!(back.varfun, v);
    }

    #[test]
    fn quadratic_jacobi_coefficients(a in small_rational(), b in 0i64..=3, shift in small_rational()) {
        // 1 + a m + b m^2 is the three-term recursion with b_n = a, c_n = 1 + b
        let v = VarianceFunction::polynomial(&[int(1), a.clone(), int(b)]).unwrap();
        let j = jacobi_from_moments(&varfun::moments_from_varfun(&v, 11).unwrap()).unwrap();
        prop_assert_eq!(&j.b[0], &int(0));
        prop_assert!(j.b[1..].iter().all(|x| *x == a));
        prop_assert_eq!(&j.c[0], &int(1));
        prop_assert!(j.c[1..].iter().all(|x| *x == int(1 + b)));
        let w = varfun::apply_varfun_op(&VarfunOp::AddLinear(shift.clone()), Operand::new(&v, VarianceClass::V), None)
            .unwrap()
            .varfun;
        let shifted = jacobi_from_moments(&varfun::moments_from_varfun(&w, 11).unwrap()).unwrap();
        prop_assert_eq!(&shifted.b[0], &j.b[0]);
        for n in 1..j.b.len() {
            prop_assert_eq!(&shifted.b[n], &(&j.b[n] + &shift));
        }
        prop_assert_eq!(shifted.c, j.c);
    }

    #[test]
    fn recursion_and_varfun_give_the_same_family(v in varfun_of_degree(4)) {
        let a = v.series_to(9).unwrap().into_coeffs();
        let from_rec = families::polynomials_from_recursion(&RecursionSpec::General(a), 9).unwrap();
        let from_v = families::polynomials_from_varfun(&v, 9).unwrap();
        prop_assert_eq!(from_rec.polys(), from_v.polys());
        prop_assert!(families::generating_function_identity_check(&from_v, &v, 9).unwrap());
    }

    #[test]
    fn finite_recursion_matches_its_varfun(b in prop::collection::vec(small_rational(), 1..4)) {
        let spec = RecursionSpec::Finite(b);
        let v = spec.associated_varfun().unwrap();
        let from_rec = families::polynomials_from_recursion(&spec, 8).unwrap();
        let from_v = families::polynomials_from_varfun(&v, 8).unwrap();
        prop_assert_eq!(from_rec.polys(), from_v.polys());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn d_orthogonality_of_polynomial_varfuns(d in 1usize..=3, seed in varfun_of_degree(4)) {
        // truncate the generated quartic to degree d + 1 with a nonzero top
        let coeffs: Vec<Rational> = (0..=d + 1)
            .map(|k| if k == d + 1 { seed.coeff(4).unwrap() } else { seed.coeff(k).unwrap() })
            .collect();
        let v = VarianceFunction::polynomial(&coeffs).unwrap();
        let n_max = 9;
        let report = families::d_orthogonality_check(&v, d, n_max).unwrap();
        prop_assert!(report.pattern_ok, "{:?}", report.violations);

        let m = varfun::moments_from_varfun(&v, 2 * n_max).unwrap();
        let fam = families::polynomials_from_varfun(&v, n_max).unwrap();
        for n in 1..=n_max {
            prop_assert_eq!(fam.get(n).apply_functional(m.as_slice()), int(0));
            for k in 1..=3usize {
                if n >= 2 + (k - 1) * d {
                    let xk = Polynomial::new((0..=k).map(|j| if j == k { int(1) } else { int(0) }).collect());
                    prop_assert_eq!((&xk * fam.get(n)).apply_functional(m.as_slice()), int(0));
                }
            }
        }
        if d >= 2 {
            let weaker = families::d_orthogonality_check(&v, d - 1, n_max).unwrap();
            prop_assert!(!weaker.pattern_ok);
            let first = &weaker.violations[0];
            prop_assert_eq!((first.n, first.k), (d + 1, 2));
            prop_assert_eq!(&first.value, &coeffs[d + 1]);
        }
    }
}
