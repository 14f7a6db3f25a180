use jacobi_wt1::qseries::*;
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;

fn o(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn exps(s: &FourierJacobiSeries) -> Vec<Rational64> {
    let mut v: Vec<_> = s.terms().map(|(e, _, _)| e).collect();
    v.dedup();
    v
}

#[test]
fn theta_8_4_is_eta_quotient() {
    let lhs = theta_expansion(8, 4, o(10)).unwrap().specialize_y1();
    let e8 = eta_expansion(o(3)).unwrap().rescale_tau(8);
    let e4 = eta_expansion(o(4)).unwrap().rescale_tau(4);
    let rhs = e8.mul(&e8).mul(&e4.invert().unwrap());
    assert!(rhs.order() >= o(10));
    assert!(lhs.eq_on_window(&rhs.truncate(o(10)).unwrap()));
}

#[test]
fn xi_1_12_leading_and_gap() {
    let s = explicit_form(&ExplicitForm::Xi1_12, o(8)).unwrap();
    assert_eq!(s.index(), Some(12));
    let (v, lead) = s.leading();
    assert_eq!(v, o(1));
    assert_eq!(lead, vec![(o(-6), big(1)), (o(6), big(-1))]);
    let e = exps(&s);
    assert!(e[1] >= o(7), "next exponent {}", e[1]);
}

#[test]
fn xi_1_8_leading_and_gap() {
    let s = explicit_form(&ExplicitForm::Xi1_8, o(6)).unwrap();
    let (v, lead) = s.leading();
    assert_eq!(v, o(1));
    assert_eq!(lead, vec![(o(-4), big(1)), (o(4), big(-1))]);
    assert!(exps(&s)[1] >= o(5));
}

#[test]
fn xi_1_8_decomposition() {
    let s = explicit_form(&ExplicitForm::Xi1_8, o(6)).unwrap();
    let v = theta_decompose(&s, 8).unwrap();
    let th = theta_expansion(8, 4, o(6)).unwrap().specialize_y1();
    for (&r, h) in &v.components {
        match r {
            12 => assert!(h.eq_on_window(&th)),
            4 => assert!(h.eq_on_window(&th.neg())),
            _ => assert!(h.is_zero(), "r={r}"),
        }
    }
    assert!(v.is_odd());
}

/// Brute-force Q_{a,b}: expand the three theta factors by a direct triple
/// sum over odd l, then divide by η from the product formula.
fn quark_direct(a: i64, b: i64, ord: i64) -> FourierJacobiSeries {
    // θ⁻_{2,1}(τ, cz/2) = Σ_{l odd} χ(l) q^{l²/8} y^{cl/2}, χ(l) = +1 for l ≡ 3 mod 4
    let chi = |l: i64| if l.rem_euclid(4) == 3 { 1 } else { -1 };
    let lmax = 2 * ((8 * (ord + 2)) as f64).sqrt() as i64 + 3;
    let mut terms = Vec::new();
    for l1 in (-lmax..=lmax).filter(|l| l % 2 != 0) {
        for l2 in (-lmax..=lmax).filter(|l| l % 2 != 0) {
            for l3 in (-lmax..=lmax).filter(|l| l % 2 != 0) {
                let n = l1 * l1 + l2 * l2 + l3 * l3;
                if n < 8 * (ord + 2) {
                    terms.push((n, a * l1 + b * l2 + (a + b) * l3, big(chi(l1) * chi(l2) * chi(l3))));
                }
            }
        }
    }
    let prod = FourierJacobiSeries::from_terms(8, o(ord + 2), terms);
    let eta = eta_by_product(o(ord + 3)).unwrap();
    prod.mul(&eta.invert().unwrap()).truncate(o(ord)).unwrap()
}

#[test]
fn quark_leading_term_and_direct_route() {
    let q = theta_quark(1, 1, o(2)).unwrap();
    assert_eq!(q.index(), Some(3));
    let (v, lead) = q.leading();
    assert_eq!(v, Rational64::new(1, 3));
    assert_eq!(lead, vec![(o(-2), big(1)), (o(-1), big(-2)), (o(1), big(2)), (o(2), big(-1))]);
    for (a, b) in [(1, 1), (1, 2), (2, 3)] {
        let fast = theta_quark(a as u64, b as u64, o(3)).unwrap();
        let slow = quark_direct(a, b, 3);
        assert!(fast.eq_on_window(&slow), "Q_{a},{b}");
    }
}

#[test]
fn quark_symmetry_and_integrality() {
    for (a, b) in [(1u64, 2u64), (1, 3), (2, 3), (3, 5)] {
        let x = theta_quark(a, b, o(3)).unwrap();
        let y = theta_quark(b, a, o(3)).unwrap();
        assert_eq!(x.index(), Some(a * a + a * b + b * b));
        assert!(x.eq_on_window(&y));
        assert!(x.terms().all(|(_, l, _)| l.is_integer()));
    }
}

#[test]
fn quark_rescaled_matches_xi9_up_to_sign() {
    let q = theta_quark(1, 1, Rational64::new(11, 3)).unwrap().rescale(3).unwrap();
    assert_eq!(q.index(), Some(9));
    let xi = explicit_form(&ExplicitForm::Xi9_3A, o(10)).unwrap();
    let q = q.truncate(o(10)).unwrap();
    let c = xi.proportionality(&q).expect("proportional");
    // direct expansion puts a minus sign here
    assert_eq!(c, big(-1));
}

#[test]
fn rescale_both_variables() {
    let a = theta_expansion(2, 1, o(3)).unwrap().rescale(3).unwrap();
    let b = theta_expansion(6, 3, o(9)).unwrap();
    assert!(a.eq_on_window(&b));
    assert_eq!(a.index(), Some(6));
}

#[test]
fn theta_pm_examples() {
    let s = theta_pm(9, 3, -1, o(2)).unwrap();
    let (v, lead) = s.leading();
    assert_eq!(v, Rational64::new(1, 4));
    assert_eq!(lead, vec![(o(-3), big(1)), (o(3), big(-1))]);
    let s = theta_pm(2, 1, 1, o(2)).unwrap().rescale_z(Rational64::new(1, 2)).unwrap();
    let (v, lead) = s.leading();
    assert_eq!(v, Rational64::new(1, 8));
    assert_eq!(lead, vec![(Rational64::new(-1, 2), big(1)), (Rational64::new(1, 2), big(1))]);
    for m in 1..=12u64 {
        assert!(theta_pm(m, 0, -1, o(3)).unwrap().is_zero());
        assert!(theta_pm(m, m as i64, -1, o(3)).unwrap().is_zero());
    }
}

#[test]
fn unary_theta_example() {
    let s = explicit_form(&ExplicitForm::SUnary { m: 4, r: 1 }, o(6)).unwrap();
    let want = FourierJacobiSeries::from_terms(16, o(6), [(1, 0, big(1)), (49, 0, big(-7)), (81, 0, big(9))]);
    assert!(s.eq_on_window(&want));
    let e8 = explicit_form(&ExplicitForm::SE8Component(1), o(2)).unwrap();
    assert_eq!(e8.leading(), (Rational64::new(1, 120), vec![(o(0), big(1))]));
}

#[test]
fn decompose_theta_is_delta() {
    for m in 1..=6u64 {
        for r in 0..2 * m as i64 {
            let v = theta_decompose(&theta_expansion(m, r, o(4)).unwrap(), m).unwrap();
            for (&r2, h) in &v.components {
                if r2 == r {
                    assert!(h.eq_on_window(&FourierJacobiSeries::one(h.order())));
                } else {
                    assert!(h.is_zero());
                }
            }
        }
    }
}

#[test]
fn decompose_rejects_wrong_index() {
    let s = theta_expansion(3, 1, o(4)).unwrap();
    assert!(theta_decompose(&s, 2).is_err());
}

#[test]
fn elliptic_checks() {
    for m in 1..=9u64 {
        for r in 0..2 * m as i64 {
            let t = theta_expansion(m, r, o(12)).unwrap();
            assert!(elliptic_transform_check(&t, m, 1).unwrap(), "m={m} r={r}");
            assert!(elliptic_transform_check(&t, m, 0).unwrap());
        }
    }
    let t = theta_expansion(2, 1, o(12)).unwrap();
    let mut j = t.to_json();
    let last = j.terms.len() / 2;
    j.terms[last].2 = "2".into();
    let bad = FourierJacobiSeries::from_json(&j).unwrap();
    assert!(!elliptic_transform_check(&bad, 2, 1).unwrap());
}

#[test]
fn invert_needs_single_leading_monomial() {
    let s = theta_pm(2, 1, -1, o(2)).unwrap();
    assert_eq!(s.invert(), Err(QSeriesError::NotInvertible));
}

#[test]
fn windows_never_silently_extend() {
    let a = theta_expansion(1, 0, o(3)).unwrap();
    let b = eta_expansion(o(2)).unwrap();
    let p = a.mul(&b);
    assert!(p.order() <= o(2));
    assert!(a.truncate(o(4)).is_err());
    assert!(a.coeff(o(3), o(0)).is_err());
}

fn combo(m: u64, coeffs: &[i64], ord: i64) -> FourierJacobiSeries {
    // Σ_r c_r η(τ)^{k_r}-free combination: h_r = c_r·(1 + q)
    let mut acc = FourierJacobiSeries::zero(1, o(ord));
    for (r, &c) in coeffs.iter().enumerate() {
        let h = FourierJacobiSeries::from_terms(1, o(ord + 2), [(0, 0, big(c)), (1, 0, big(c + 1))]);
        let t = theta_expansion(m, r as i64, o(ord + 2)).unwrap();
        acc = acc.add(&h.mul(&t).truncate(o(ord)).unwrap());
    }
    acc.with_index(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn round_trip(m in 1u64..=12, seed in proptest::collection::vec(-3i64..=3, 24)) {
        let coeffs = &seed[..2 * m as usize];
        let s = combo(m, coeffs, 3);
        let v = theta_decompose(&s, m).unwrap();
        let back = theta_recompose(&v, m, s.order()).unwrap();
        prop_assert!(back.eq_on_window(&s));
    }

    #[test]
    fn theta_minus_is_odd(m in 1u64..=12, r in -30i64..30) {
        let a = theta_pm(m, r, -1, o(4)).unwrap();
        let b = theta_pm(m, -r, -1, o(4)).unwrap();
        prop_assert!(a.eq_on_window(&b.neg()));
        prop_assert!(a.specialize_y1().is_zero());
    }

    #[test]
    fn eta_inverse_is_unit(ord in 1i64..12) {
        let e = eta_expansion(o(ord)).unwrap();
        let p = e.mul(&e.invert().unwrap());
        prop_assert!(p.eq_on_window(&FourierJacobiSeries::one(p.order())));
    }
}
