use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use twistlab::corpus;
use twistlab::cst::{twist_group, TwistGroup};
use twistlab::io::{Caps, RepInput};
use twistlab::oracle;
use twistlab::pink::{in_sr1, pink_filtration, LieSubmodule};
use twistlab::rep::{characters, GroupTable, Mat2, MatrixRep};
use twistlab::ring::{ring_automorphisms, LocalRing, Ring, RingElem, RingSpec};

fn small_rings() -> &'static [Ring] {
    static RINGS: OnceLock<Vec<Ring>> = OnceLock::new();
    RINGS.get_or_init(|| {
        vec![
            corpus::ring(3, 1, 1),
            corpus::ring(5, 1, 1),
            corpus::ring(3, 1, 2),
            corpus::ring(3, 2, 1),
            corpus::ring(3, 3, 1),
            corpus::ring(5, 2, 1),
            corpus::ring(3, 2, 2),
            corpus::ring(7, 1, 2),
            corpus::ring_ext(3, 2, 1, "u", &[-3, 0, 1]),
            corpus::ring_ext(7, 1, 1, "u", &[0, 0, 1]),
            corpus::ring_ext(5, 1, 2, "u", &[0, 0, 0, 1]),
        ]
    })
}

/// `Gamma(3) cap SL_2(Z/27)`, order 729.
fn gamma3_z27() -> &'static GroupTable {
    static G: OnceLock<GroupTable> = OnceLock::new();
    G.get_or_init(|| {
        let r = corpus::ring(3, 3, 1);
        let gens = [Mat2::from_ints(&r, [1, 3, 0, 1]), Mat2::from_ints(&r, [1, 0, 3, 1]), Mat2::from_ints(&r, [4, 0, 0, 7])];
        GroupTable::close(&r, &gens).unwrap()
    })
}

fn residual_reps() -> &'static [MatrixRep] {
    static REPS: OnceLock<Vec<MatrixRep>> = OnceLock::new();
    REPS.get_or_init(|| corpus::residual_examples().unwrap().into_iter().map(|e| e.rep).collect())
}

fn elem(r: &LocalRing, seed: u64) -> RingElem {
    r.elements().nth((seed % r.size() as u64) as usize).unwrap()
}

fn subgroup_of_gamma3(picks: &[u32]) -> GroupTable {
    let g = gamma3_z27();
    let gens: Vec<Mat2> = picks.iter().map(|i| *g.element(i % g.len() as u32)).collect();
    GroupTable::close(g.ring(), &gens).unwrap()
}

fn as_set(l: &LieSubmodule) -> BTreeSet<Mat2> {
    l.elements().into_iter().collect()
}

fn caps_text(ring: u64, group: usize) -> String {
    format!("ring={ring},group={group}")
}

fn twist_keys(tg: &TwistGroup) -> BTreeSet<(RingElem, Option<RingElem>, Vec<RingElem>)> {
    tg.pairs().iter().map(|p| (p.sigma.x_image(), p.sigma.u_image(), p.eta.values().to_vec())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(k in 0usize..11, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let r = &small_rings()[k];
        let (a, b, c) = (elem(r, a), elem(r, b), elem(r, c));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.add(r.sub(a, b), b), a);
        prop_assert_eq!(r.is_unit(a), !r.in_max_ideal(a));
        if let Some(ai) = r.inv(a) {
            prop_assert_eq!(r.mul(a, ai), r.one());
        }
        prop_assert_eq!(r.residue(r.mul(a, b)), r.residue_field().mul(r.residue(a), r.residue(b)));
    }

    #[test]
    fn roots_of_unity_match_brute_force(k in 0usize..11, order in 1u64..40) {
        let r = &small_rings()[k];
        prop_assume!(order % r.p() != 0);
        let mut brute = oracle::roots_of_unity(r, order);
        brute.sort();
        prop_assert_eq!(r.roots_of_unity(order).unwrap(), brute);
    }

    #[test]
    fn automorphisms_form_a_group(k in 0usize..11, i in any::<usize>(), j in any::<usize>(), a in any::<u64>(), b in any::<u64>()) {
        let r = &small_rings()[k];
        let auts = ring_automorphisms(r).unwrap();
        let (s, t) = (&auts[i % auts.len()], &auts[j % auts.len()]);
        let st = s.compose(t);
        let tables: Vec<Vec<RingElem>> = auts.iter().map(|x| r.elements().map(|e| x.apply(e)).collect()).collect();
        let st_table: Vec<RingElem> = r.elements().map(|e| st.apply(e)).collect();
        prop_assert!(tables.contains(&st_table));
        prop_assert!(s.compose(&s.inverse()).is_identity());
        let (a, b) = (elem(r, a), elem(r, b));
        prop_assert_eq!(s.apply(r.mul(a, b)), r.mul(s.apply(a), s.apply(b)));
        prop_assert_eq!(s.apply(r.add(a, b)), r.add(s.apply(a), s.apply(b)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn filtration_is_nested_and_matches_sets(picks in prop::collection::vec(any::<u32>(), 1..3)) {
        let gamma = subgroup_of_gamma3(&picks);
        let levels = pink_filtration(&gamma, 3).unwrap();
        for w in levels.windows(2) {
            prop_assert!(w[1].is_subset_of(&w[0]));
        }
        for n in 0..2 {
            prop_assert!(levels[0].bracket_with(&levels[n]).is_subset_of(&levels[n + 1]));
        }
        prop_assert!(levels[0].is_bracket_closed());
        let sets = oracle::pink_filtration_sets(&gamma, 3);
        for (l, s) in levels.iter().zip(&sets) {
            prop_assert_eq!(&as_set(l), s);
        }
    }

    #[test]
    fn filtration_commutes_with_reduction(picks in prop::collection::vec(any::<u32>(), 1..4)) {
        let gamma = subgroup_of_gamma3(&picks);
        let r27 = gamma.ring();
        let r9 = corpus::ring(3, 2, 1);
        let reduce = |m: &Mat2| m.map(|a| r9.from_int(r27.coeffs(a)[0] as i64));
        let images: Vec<Mat2> = gamma.elements().iter().map(reduce).collect();
        prop_assert!(images.iter().all(|m| in_sr1(&r9, m)));
        let gamma9 = GroupTable::close(&r9, &images).unwrap();
        let up = pink_filtration(&gamma, 3).unwrap();
        let down = pink_filtration(&gamma9, 3).unwrap();
        for (l, l9) in up.iter().zip(&down) {
            let projected: BTreeSet<Mat2> = l.elements().iter().map(reduce).collect();
            prop_assert_eq!(projected, as_set(l9));
        }
    }

    #[test]
    fn filtration_is_conjugation_equivariant(picks in prop::collection::vec(any::<u32>(), 1..3), x in prop::array::uniform4(0i64..27)) {
        let gamma = subgroup_of_gamma3(&picks);
        let r = gamma.ring();
        let x = Mat2::from_ints(r, x);
        prop_assume!(x.is_invertible(r));
        let xi = x.inv(r).unwrap();
        let conj: Vec<Mat2> = gamma.generators().iter().map(|g| x.mul(r, g).mul(r, &xi)).collect();
        let gamma_x = GroupTable::close(r, &conj).unwrap();
        let before = pink_filtration(&gamma, 3).unwrap();
        let after = pink_filtration(&gamma_x, 3).unwrap();
        for (l, lx) in before.iter().zip(&after) {
            prop_assert!(l.conjugate(&x).unwrap().same_as(lx));
        }
    }

    #[test]
    fn twist_groups_obey_group_law_and_character_twisting(k in any::<usize>(), c in any::<usize>(), x in prop::array::uniform4(0i64..9)) {
        let rho = &residual_reps()[k % residual_reps().len()];
        let r = rho.ring().clone();
        let auts = ring_automorphisms(&r).unwrap();
        let tg = twist_group(&rho.pseudo(), &auts).unwrap();
        prop_assert!(tg.verify_group_law().is_ok());
        prop_assert!(tg.pairs().iter().all(|p| p.satisfies(&rho.pseudo())));

        let x = Mat2::from_ints(&r, x);
        if x.is_invertible(&r) {
            let conj = twist_group(&rho.conjugate(&x).unwrap().pseudo(), &auts).unwrap();
            prop_assert_eq!(twist_keys(&conj), twist_keys(&tg));
        }

        // (sigma, eta) for rho gives (sigma, eta sigma(chi) / chi) for rho (x) chi
        let group: &Arc<GroupTable> = rho.group();
        let chars = characters(group, &r).unwrap();
        let chi = &chars[c % chars.len()];
        let twisted = twist_group(&rho.twist(chi).pseudo(), &auts).unwrap();
        let predicted: BTreeSet<_> = tg
            .pairs()
            .iter()
            .map(|p| {
                let eta = p.eta.mul(&r, &chi.apply_aut(&p.sigma)).mul(&r, &chi.inv(&r));
                (p.sigma.x_image(), p.sigma.u_image(), eta.values().to_vec())
            })
            .collect();
        prop_assert_eq!(twist_keys(&twisted), predicted);
    }

    #[test]
    fn input_json_round_trips(p_idx in 0usize..3, n in 1u32..4, mats in prop::collection::vec(prop::array::uniform4(-50i64..50), 0..4), depth in prop::option::of(1usize..6)) {
        let p = [3u32, 5, 7][p_idx];
        let input = RepInput {
            ring: RingSpec::new(p, n, 1),
            generators: mats.iter().map(|m| m.iter().map(|v| vec![*v]).collect()).collect(),
            labels: None,
            depth,
            coefficient_subring: None,
        };
        let again = RepInput::parse(&input.to_json().to_string()).unwrap();
        prop_assert_eq!(again.to_json(), input.to_json());
    }

    #[test]
    fn caps_parse(ring in 1u64..1_000_000, group in 1usize..1_000_000) {
        let caps = Caps::parse(&caps_text(ring, group)).unwrap();
        prop_assert_eq!(caps, Caps { ring, group });
        prop_assert!(Caps::parse(&(caps_text(ring, group) + ",bogus=1")).is_err());
    }
}
