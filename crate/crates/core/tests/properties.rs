use num_traits::Zero;
use proptest::prelude::*;
use singinv::exactgeom::{covolume, polyhedron_of, ExponentVector, MonomialIdeal};
use singinv::germs::{parse_polynomial, Polynomial};
use singinv::invariants::{
    dh_lower_bound, lct_monomial, lelong_numbers, loja_monomial, mixed_multiplicity, multiplicity_oracle,
    samuel_multiplicity,
};
use singinv::rational::{frac, int, Rational};
use singinv::sections::sample_plane;
use singinv::verify::random_ideal;

fn ideal_strategy(n: usize) -> impl Strategy<Value = MonomialIdeal> {
    (prop::collection::vec(1u32..=5, n), prop::collection::vec(prop::collection::vec(0u32..5, n), 0..4)).prop_map(
        move |(powers, mixed)| {
            let mut gens: Vec<ExponentVector> =
                powers.iter().enumerate().map(|(i, &a)| ExponentVector::axis(n, i, a)).collect();
            gens.extend(mixed.into_iter().map(ExponentVector::new).filter(|e| !e.is_zero()));
            MonomialIdeal::new(n, gens).unwrap()
        },
    )
}

fn any_ideal() -> impl Strategy<Value = MonomialIdeal> {
    prop_oneof![ideal_strategy(2), ideal_strategy(3)]
}

fn polynomial_strategy() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..4, 3), -20i64..=20, 1i64..=6), 0..6).prop_map(|terms| {
        Polynomial::from_terms(3, terms.into_iter().map(|(e, p, q)| (ExponentVector::new(e), frac(p, q)))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn power_scaling(a in any_ideal(), k in 2u32..=3) {
        let ak = a.power(k).unwrap();
        let kk = int(i64::from(k));
        prop_assert_eq!(lct_monomial(&ak).unwrap(), lct_monomial(&a).unwrap() / &kk);
        prop_assert_eq!(loja_monomial(&ak).unwrap(), loja_monomial(&a).unwrap() * &kk);
        let mut factor = Rational::from_integer(1.into());
        let (e, ek) = (lelong_numbers(&a).unwrap(), lelong_numbers(&ak).unwrap());
        for j in 1..=a.dim() {
            factor *= &kk;
            prop_assert_eq!(ek.get(j), e.get(j) * &factor);
        }
    }

    #[test]
    fn enlarging_the_ideal_is_monotone(a in ideal_strategy(2), extra in prop::collection::vec(0u32..4, 2)) {
        prop_assume!(extra.iter().any(|&c| c > 0));
        let mut gens = a.generators().to_vec();
        gens.push(ExponentVector::new(extra));
        let b = MonomialIdeal::new(2, gens).unwrap();
        prop_assert!(lct_monomial(&b).unwrap() >= lct_monomial(&a).unwrap());
        prop_assert!(loja_monomial(&b).unwrap() <= loja_monomial(&a).unwrap());
        prop_assert!(samuel_multiplicity(&b).unwrap() <= samuel_multiplicity(&a).unwrap());
    }

    #[test]
    fn minkowski_sum_commutes_and_models_products(a in any_ideal(), b in any_ideal()) {
        prop_assume!(a.dim() == b.dim());
        let (pa, pb) = (polyhedron_of(&a).unwrap(), polyhedron_of(&b).unwrap());
        let ab = pa.minkowski_sum(&pb).unwrap();
        let ba = pb.minkowski_sum(&pa).unwrap();
        prop_assert_eq!(ab.facets(), ba.facets());
        let product = polyhedron_of(&a.product(&b).unwrap()).unwrap();
        prop_assert_eq!(ab.facets(), product.facets());
        prop_assert_eq!(ab.vertices(), product.vertices());
    }

    #[test]
    fn multiplicity_matches_colength_oracle(a in any_ideal()) {
        let oracle = Rational::from_integer(multiplicity_oracle(&a).unwrap().into());
        prop_assert_eq!(samuel_multiplicity(&a).unwrap(), oracle);
        prop_assert!(covolume(&polyhedron_of(&a).unwrap()).unwrap() > Rational::zero());
    }

    #[test]
    fn mixed_multiplicity_is_symmetric_and_additive(a in ideal_strategy(2), b in ideal_strategy(2), c in ideal_strategy(2)) {
        let mu = |x: &MonomialIdeal, y: &MonomialIdeal| mixed_multiplicity(&[x.clone(), y.clone()]).unwrap().value;
        prop_assert_eq!(mu(&a, &b), mu(&b, &a));
        let ab = a.product(&b).unwrap();
        prop_assert_eq!(mu(&ab, &c), mu(&a, &c) + mu(&b, &c));
    }

    #[test]
    fn chain_lower_bound_never_exceeds_lct(a in any_ideal()) {
        prop_assert!(dh_lower_bound(&a).unwrap() <= lct_monomial(&a).unwrap());
        let e = lelong_numbers(&a).unwrap();
        prop_assert!(e.ratio(a.dim()) >= loja_monomial(&a).unwrap().recip());
    }

    #[test]
    fn polynomial_display_parses_back(p in polynomial_strategy()) {
        let text = p.to_string();
        prop_assert_eq!(parse_polynomial(&text, 3).unwrap(), p, "{}", text);
    }

    #[test]
    fn seeded_objects_are_reproducible(seed in any::<u64>(), n in 2usize..=4, budget in 2u32..=6) {
        prop_assert_eq!(random_ideal(n, seed, budget).unwrap(), random_ideal(n, seed, budget).unwrap());
        prop_assert!(random_ideal(n, seed, budget).unwrap().is_zero_dimensional());
        prop_assert_eq!(sample_plane(n, 1, seed).unwrap(), sample_plane(n, 1, seed).unwrap());
    }
}
