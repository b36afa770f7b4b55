use proptest::prelude::*;
use quasiinv::calogero::{apply_lm, LmOperator};
use quasiinv::exactalg::{elementary_symmetric, ratio, BigRational, Monomial, MultiPoly, PowerSeries, TPoly};
use quasiinv::json::{poly_from_json, poly_to_json};
use quasiinv::quasi::{graded_dimension_oracle, is_quasiinvariant};
use quasiinv::symgroup::{GroupAlgebraElem, Perm};

const N: usize = 3;

fn coeff() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| ratio(a, b))
}

fn poly_in(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), coeff()), 0..=max_terms).prop_map(
        move |terms| {
            terms
                .into_iter()
                .fold(MultiPoly::zero(n), |acc, (e, c)| &acc + &MultiPoly::monomial(Monomial(e), c))
        },
    )
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    poly_in(N, 3, 5)
}

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(&v).unwrap())
}

fn group_elem(n: usize) -> impl Strategy<Value = GroupAlgebraElem> {
    prop::collection::vec((perm(n), coeff()), 0..4).prop_map(move |terms| {
        let mut f = GroupAlgebraElem::zero(n);
        for (p, c) in terms {
            f.add_term(p, c);
        }
        f
    })
}

fn symmetric(n: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((1..=n, 0u32..3, coeff()), 0..3).prop_map(move |terms| {
        terms.into_iter().fold(MultiPoly::zero(n), |acc, (i, e, c)| {
            &acc + &elementary_symmetric(n, i).unwrap().pow(e).scale(&c)
        })
    })
}

/// Random element of `QI_m` in degree `d`, as an integer combination of an
/// oracle basis.
fn quasiinvariant(n: usize, m: u32, d: u32) -> impl Strategy<Value = MultiPoly> {
    let basis = graded_dimension_oracle(n, m, d).unwrap().basis;
    let len = basis.len();
    prop::collection::vec(-3i64..=3, len).prop_map(move |cs| {
        basis
            .iter()
            .zip(cs)
            .fold(MultiPoly::zero(n), |acc, (b, c)| &acc + &b.scale(&ratio(c, 1)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, MultiPoly::zero(N));
        prop_assert_eq!(&a * &MultiPoly::one(N), a.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly(), d in poly_in(N, 2, 3)) {
        prop_assume!(!d.is_zero());
        prop_assert_eq!((&p * &d).divide_exact(&d).unwrap(), p);
    }

    #[test]
    fn binomial_power_division_inverts(p in poly(), i in 1usize..=N, j in 1usize..=N, s in 0u32..4) {
        prop_assume!(i != j);
        let d = MultiPoly::binomial(N, i, j).unwrap().pow(s);
        prop_assert_eq!((&p * &d).divide_by_binomial_power(i, j, s).unwrap(), p);
    }

    #[test]
    fn permutation_action_is_a_left_action(p in poly(), a in perm(N), b in perm(N)) {
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.act(&p).unwrap(), a.act(&b.act(&p).unwrap()).unwrap());
        prop_assert_eq!(Perm::identity(N).act(&p).unwrap(), p.clone());
    }

    #[test]
    fn permutation_action_is_a_ring_map(p in poly(), q in poly(), a in perm(N)) {
        prop_assert_eq!(a.act(&(&p * &q)).unwrap(), &a.act(&p).unwrap() * &a.act(&q).unwrap());
    }

    #[test]
    fn sign_is_multiplicative(a in perm(5), b in perm(5)) {
        prop_assert_eq!(a.compose(&b).unwrap().sign(), a.sign() * b.sign());
        prop_assert_eq!(a.inverse().sign(), a.sign());
    }

    #[test]
    fn group_algebra_product_acts_as_composition(f in group_elem(N), g in group_elem(N), p in poly()) {
        prop_assert_eq!(f.mul(&g).unwrap().apply(&p).unwrap(), f.apply(&g.apply(&p).unwrap()).unwrap());
    }

    #[test]
    fn symmetric_multipliers_commute_with_group_action(f in group_elem(N), s in symmetric(N), p in poly()) {
        prop_assert_eq!(f.apply(&(&s * &p)).unwrap(), &s * &f.apply(&p).unwrap());
    }

    #[test]
    fn definite_integral_is_linear_and_antisymmetric(
        a in prop::collection::vec(poly_in(N, 2, 2), 0..4),
        b in prop::collection::vec(poly_in(N, 2, 2), 0..4),
        c in coeff(),
    ) {
        let fa = TPoly::from_coeffs(N, a).unwrap();
        let fb = TPoly::from_coeffs(N, b).unwrap();
        let sum = &fa + &fb.scale_by(&MultiPoly::constant(N, c.clone())).unwrap();
        let lhs = sum.integrate_definite(1, 2).unwrap();
        let rhs = &fa.integrate_definite(1, 2).unwrap() + &fb.integrate_definite(1, 2).unwrap().scale(&c);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(fa.integrate_definite(2, 1).unwrap(), -fa.integrate_definite(1, 2).unwrap());
    }

    #[test]
    fn series_factor_division_round_trips(cs in prop::collection::vec(-20i64..20, 1..12), j in 1usize..5) {
        let s = PowerSeries::from_i64(cs.len() - 1, &cs);
        prop_assert_eq!(s.divide_one_minus_q_pow(j).times_one_minus_q_pow(j), s.clone());
        prop_assert_eq!(s.times_one_minus_q_pow(j).divide_one_minus_q_pow(j), s);
    }

    #[test]
    fn json_round_trip(p in poly()) {
        prop_assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn lm_is_linear(a in quasiinvariant(3, 1, 5), b in quasiinvariant(3, 1, 5), c in coeff()) {
        let op = LmOperator::new(3, 1);
        let lhs = apply_lm(&op, &(&a + &b.scale(&c))).unwrap();
        let rhs = &apply_lm(&op, &a).unwrap() + &apply_lm(&op, &b).unwrap().scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lm_lowers_degree_by_two(a in quasiinvariant(3, 1, 6)) {
        let image = apply_lm(&LmOperator::new(3, 1), &a).unwrap();
        prop_assert!(image.is_zero() || (image.is_homogeneous() && image.degree() == Some(4)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quasiinvariance_descends_the_chain(p in quasiinvariant(3, 2, 7)) {
        prop_assert!(is_quasiinvariant(&p, 2));
        prop_assert!(is_quasiinvariant(&p, 1));
        prop_assert!(is_quasiinvariant(&p, 0));
    }

    #[test]
    fn quasiinvariants_form_a_ring(p in quasiinvariant(3, 1, 4), q in quasiinvariant(3, 1, 5)) {
        prop_assert!(is_quasiinvariant(&(&p * &q), 1));
        prop_assert!(is_quasiinvariant(&(&p + &p.scale(&ratio(1, 2))), 1));
    }

    #[test]
    fn quasiinvariants_form_an_sn_module(p in quasiinvariant(3, 1, 5), a in perm(3)) {
        prop_assert!(is_quasiinvariant(&a.act(&p).unwrap(), 1));
    }

    #[test]
    fn m_zero_accepts_every_polynomial(p in poly()) {
        prop_assert!(is_quasiinvariant(&p, 0));
    }
}
