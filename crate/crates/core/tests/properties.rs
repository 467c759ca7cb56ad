mod common;

use cai_core::algebra::{rat, ratio, series_nth_root, LaurentSeries, Rational, TowerPoly, UniPoly};
use cai_core::approx_roots::{approx_roots_for_curve, approximate_root};
use cai_core::atlas::enumerate_chains;
use cai_core::moduli::counting_identity_holds;
use cai_core::recognize::{expand_at_infinity, recognize, RecognizeError};
use cai_core::semigroup::{member, member_by_apery, SemigroupTower};
use cai_core::splice::level_generators;
use cai_core::{parse_unipoly, ParamCurve, PuiseuxChain};
use common::*;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn unipoly(max_degree: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(small_rational(), 0..=max_degree + 1).prop_map(UniPoly::from_coeffs)
}

fn monic(degree: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = UniPoly> {
    degree.prop_flat_map(|d| {
        prop::collection::vec(-3i64..=3, d).prop_map(move |mut c| {
            c.push(1);
            UniPoly::from_ints(&c)
        })
    })
}

/// `c_0 + c_1 w + … + O(w^{order+1})` with `c_0 > 0`.
fn unit_series(order: i64) -> impl Strategy<Value = LaurentSeries> {
    ((1i64..=5, 1i64..=3), prop::collection::vec(small_rational(), 0..6)).prop_map(move |((n, d), rest)| {
        let mut c = vec![ratio(n, d)];
        c.extend(rest);
        LaurentSeries::new(0, c, order)
    })
}

fn valid_chain() -> impl Strategy<Value = PuiseuxChain> {
    (2u64..=24, any::<prop::sample::Index>()).prop_filter_map("degree with chains", |(d, i)| {
        let all = enumerate_chains(d, true);
        (!all.is_empty()).then(|| all[i.index(all.len())].chain.clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_parse_round_trip(p in unipoly(8)) {
        let shown = p.to_string();
        prop_assert_eq!(parse_unipoly(&shown).unwrap(), p);
    }

    #[test]
    fn ring_laws(a in unipoly(5), b in unipoly(5), c in unipoly(5), at in small_rational()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a - &a, UniPoly::zero());
        prop_assert_eq!(a.compose(&b).eval(&at), a.eval(&b.eval(&at)));
        prop_assert_eq!(a.pow(3), &(&a * &a) * &a);
    }

    #[test]
    fn series_inverse(s in unit_series(10), shift in -3i64..=3) {
        let s = s.shift(shift);
        let prod = s.mul(&s.inverse().unwrap());
        prop_assert_eq!(prod, LaurentSeries::one(10));
    }

    #[test]
    fn series_roots_of_powers(s in unit_series(10), n in 2u32..=4) {
        let root = series_nth_root(&s.pow(n), n).unwrap();
        prop_assert_eq!(root, s);
    }

    #[test]
    fn membership_oracles_agree(gens in prop::collection::vec(2u64..20, 1..4), v in 0u64..200) {
        prop_assert_eq!(member(&gens, v), member_by_apery(&gens, v));
    }

    #[test]
    fn normal_forms_evaluate_back(c in valid_chain(), v in 0u64..400) {
        let tower = SemigroupTower::new(&c).unwrap();
        let n = c.len();
        let gens = level_generators(c.pairs());
        match tower.normal_form(n, v).unwrap() {
            Some(nf) => {
                prop_assert_eq!(nf.evaluate(&gens), v);
                prop_assert!(member(&gens, v));
                for (i, &a) in nf.coefficients.iter().enumerate().skip(1) {
                    prop_assert!(a < c.q(i));
                }
            }
            None => prop_assert!(!member(&gens, v)),
        }
    }

    #[test]
    fn chain_invariants(c in valid_chain()) {
        let inv = c.invariants().unwrap();
        prop_assert_eq!(inv.genus, gap_count(&c.pole_orders()));
        let tower = SemigroupTower::new(&c).unwrap();
        prop_assert_eq!(tower.gap_size(c.len()).unwrap(), inv.genus);
        if inv.positive_braid {
            prop_assert!(inv.suff_negative);
        }
        prop_assert_eq!(counting_identity_holds(&c), inv.suff_negative);
        let mut d = (c.p(1) + c.q(1)) as i64;
        for k in 2..=c.len() {
            d = c.q(k) as i64 * d + c.delta(k);
        }
        prop_assert_eq!(*inv.d.last().unwrap(), d);
    }

    #[test]
    fn chain_json_round_trip(c in valid_chain()) {
        let s = c.to_json().to_string();
        prop_assert_eq!(PuiseuxChain::from_json(&s).unwrap(), c);
    }

    #[test]
    fn approximate_root_recovers_root(
        r in prop::collection::vec(-3i64..=3, 2..=4),
        tail in prop::collection::vec((0u32..4, -3i64..=3), 0..4),
        q in 2u32..=3,
    ) {
        let vars = ["x", "y"];
        let dr = r.len() as u32;
        let mut root = TowerPoly::monomial(&vars, vec![0, dr], rat(1));
        for (j, &c) in r.iter().enumerate() {
            root.add_term(vec![1, j as u32], rat(c));
        }
        let mut p = root.pow(q);
        // Perturbations of y-degree below (q - 1) deg R leave the root fixed.
        let limit = (q - 1) * dr;
        for &(j, c) in &tail {
            if j < limit {
                p.add_term(vec![2, j], rat(c));
            }
        }
        prop_assert_eq!(approximate_root(&p, q).unwrap(), root);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recognition_of_random_curves(x in monic(2..=8), y in monic(2..=6)) {
        let curve = ParamCurve::new(x, y);
        match recognize(&curve) {
            Ok(r) => {
                let p = r.defining();
                prop_assert!(p.eval_composed(&[curve.x.clone(), curve.y.clone()]).unwrap().is_zero());
                if let Some(chain) = r.chain() {
                    prop_assert!(chain.is_valid());
                    let e = expand_at_infinity(&curve).unwrap();
                    let deltas: Vec<i64> = (2..=chain.len()).map(|k| chain.delta(k)).collect();
                    prop_assert_eq!(e.exponent_jumps, deltas);
                    let (_, report) = approx_roots_for_curve(&curve).unwrap();
                    prop_assert!(report.all_match());
                }
            }
            Err(RecognizeError::NonBirational { .. }) => {
                prop_assert!(implicitize(&curve.x, &curve.y).len() > 1);
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
