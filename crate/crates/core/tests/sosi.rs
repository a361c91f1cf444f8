mod common;

use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sosi::digraph::{bidirect, verify_so_si, Digraph, NodeId};
use sosi::mcc;
use sosi::oracle::{
    brute_max_so_si, enumerate_reorientations, random_digraph, random_weights, OracleBudget,
};
use sosi::sosi::*;
use sosi::Rational;

fn instance(seed: u64) -> (Digraph, WeightPair) {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(2..=7);
    let m = rng.gen_range(n - 1..=12);
    let d = random_digraph(&mut rng, n, m);
    let w = random_weights(&mut rng, n, 3);
    (d, w)
}

fn r(x: i64) -> Rational {
    Rational::from_integer(x)
}

#[test]
fn single_arc_and_two_cycle() {
    let ones = WeightPair::from_integers(&[1, 1], &[1, 1]).unwrap();
    let arc = load_digraph("single_arc.json");
    let cert = max_so_si(&arc, &ones).unwrap();
    assert_eq!(cert.value, r(2));
    assert_eq!(cert.cover.cost(&bidirect(&arc)), r(2));
    assert_eq!(
        brute_max_so_si(&arc, &ones, OracleBudget::default())
            .unwrap()
            .value,
        r(2)
    );

    let cycle = load_digraph("twocycle.json");
    let cert = max_so_si(&cycle, &ones).unwrap();
    assert_eq!(cert.value, r(0));
    assert!(cert.y_o.is_empty() && cert.y_i.is_empty());
    // the cover only uses reverse copies
    assert!(cert.cover.total()[..2].iter().all(Zero::is_zero));
}

#[test]
fn bowtie_restricted_to_three_nodes() {
    let d = bowtie();
    let u = nodes(&d, &["a1", "b1", "x"]);
    let cert = resonant_max(&d, &indicator(7, &u)).unwrap();
    assert_eq!(cert.value, r(2));
    assert_eq!(cert.cover.cost(&bidirect(&d)), r(2));
    let chosen: Vec<NodeId> = cert.y_o.iter().chain(&cert.y_i).copied().collect();
    assert!(chosen.iter().all(|v| u.contains(v)));
    let w = WeightPair::new(indicator(7, &u), indicator(7, &u)).unwrap();
    assert_eq!(
        brute_max_so_si(&d, &w, OracleBudget::default())
            .unwrap()
            .value,
        r(2)
    );
}

#[test]
fn bowtie_unit_weights() {
    let d = bowtie();
    let cert = resonant_max(&d, &[r(1); 7]).unwrap();
    assert!(cert.y_o.len() + cert.y_i.len() >= 4);
    let ones = WeightPair::new(vec![r(1); 7], vec![r(1); 7]).unwrap();
    assert_eq!(
        cert.value,
        brute_max_so_si(&d, &ones, OracleBudget::default())
            .unwrap()
            .value
    );
}

#[test]
fn bowtie_each_circuit_alone_is_fine() {
    // U ∩ V(C) is resonant inside each circuit C, yet U is not resonant in D
    let d = bowtie();
    for names in [["x", "a1", "a2", "a3"], ["x", "b1", "b2", "b3"]] {
        let keep: Vec<(&str, &str)> = d
            .arcs()
            .iter()
            .map(|&(u, v)| (d.name(u), d.name(v)))
            .filter(|(u, v)| names.contains(u) && names.contains(v))
            .collect();
        let sub = Digraph::from_named_arcs(&names, &keep).unwrap();
        let u: Vec<NodeId> = ["a1", "b1", "x"]
            .iter()
            .filter_map(|x| sub.node_by_name(x))
            .collect();
        let cert = resonant_max(&sub, &indicator(4, &u)).unwrap();
        assert_eq!(cert.value, r(u.len() as i64));
    }
    let u = nodes(&d, &["a1", "b1", "x"]);
    assert_eq!(resonant_max(&d, &indicator(7, &u)).unwrap().value, r(2));
}

#[test]
fn sink_stable_small_cases() {
    let tri = load_digraph("triangle.json");
    let res = sink_stable_max(&tri, &[r(1), r(1), r(1)]).unwrap();
    let w = WeightPair::new(vec![r(0); 3], vec![r(1); 3]).unwrap();
    assert_eq!(
        r(res.value),
        brute_max_so_si(&tri, &w, OracleBudget::default())
            .unwrap()
            .value
    );

    let cycle = load_digraph("twocycle.json");
    assert_eq!(sink_stable_max(&cycle, &[r(1), r(1)]).unwrap().value, 0);

    let arc = load_digraph("single_arc.json");
    let res = sink_stable_max(&arc, &[r(1), r(1)]).unwrap();
    assert_eq!(res.value, 1);
    let b = bidirect(&arc);
    assert_eq!(res.circuits.len(), 1);
    assert_eq!(res.circuits[0].0.a_value(&b), 1);
    assert_eq!(res.coverage(&b), vec![1, 1]);
}

#[test]
fn cardinality_and_constraints() {
    let tri = load_digraph("triangle.json");
    assert_eq!(cardinality_within(&tri, &[], &[]).unwrap().value, r(0));
    assert_eq!(cardinality_within(&tri, &[0], &[2]).unwrap().value, r(2));
    assert!(constrained_so_si(&tri, &[2], &[2], &[0], &[0])
        .unwrap()
        .is_none());
    assert_eq!(
        constrained_so_si(&tri, &[0], &[1], &[], &[]).unwrap_err(),
        SosiError::ForcedNotAllowed(0)
    );

    let d = bowtie();
    let a1 = node(&d, "a1");
    let b1 = node(&d, "b1");
    let pair = constrained_so_si(&d, &[], &[b1], &[a1], &[a1])
        .unwrap()
        .unwrap();
    assert!(pair.y_i.contains(&a1));
    assert!(verify_so_si(&d, &pair.y_o, &pair.y_i)
        .unwrap()
        .is_feasible());
}

#[test]
fn fractional_weights() {
    let d = bowtie();
    let w = WeightPair::new(
        (0..7).map(|k| Rational::new(k as i64 % 3, 2)).collect(),
        (0..7)
            .map(|k| Rational::new((k as i64 + 1) % 4, 3))
            .collect(),
    )
    .unwrap();
    let cert = max_so_si(&d, &w).unwrap();
    assert_eq!(
        cert.value,
        brute_max_so_si(&d, &w, OracleBudget::default())
            .unwrap()
            .value
    );
    assert!(cert.check(&d, &w).all_pass(false));
}

fn brute_constrained(
    d: &Digraph,
    fo: &[NodeId],
    ao: &[NodeId],
    fi: &[NodeId],
    ai: &[NodeId],
) -> Option<usize> {
    enumerate_reorientations(d, OracleBudget::default())
        .unwrap()
        .filter_map(|r| {
            let (src, snk) = r.digraph.sources_sinks();
            let ok = fo.iter().all(|v| src.contains(v)) && fi.iter().all(|v| snk.contains(v));
            ok.then(|| {
                src.iter().filter(|v| ao.contains(v)).count()
                    + snk.iter().filter(|v| ai.contains(v)).count()
            })
        })
        .max()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn optimum_matches_oracle(seed in any::<u64>()) {
        let (d, w) = instance(seed);
        let cert = max_so_si(&d, &w).unwrap();
        let brute = brute_max_so_si(&d, &w, OracleBudget::default()).unwrap();
        prop_assert_eq!(cert.value, brute.value);
        prop_assert_eq!(cert.cover.cost(&bidirect(&d)), cert.value);
        prop_assert_eq!(cert.objective, cert.value);
        prop_assert!(cert.cover.is_integral());
        prop_assert!(cert.check(&d, &w).all_pass(true));
    }

    #[test]
    fn extraction_invariants(seed in any::<u64>()) {
        let (d, w) = instance(seed);
        let aux = build_aux(&d, &w).unwrap();
        let sol = mcc::solve(aux.instance()).unwrap();
        let pi = &sol.potential;
        let n = d.node_count();
        for v in 0..n {
            let sum = pi.value(aux.in_copy(v)) - pi.value(aux.out_copy(v));
            prop_assert!(sum == 0 || sum == 1);
        }
        let pair = extract_pair(&aux, pi).unwrap();
        prop_assert!(pair.potential.is_small_dropping(&d));
        prop_assert!(pair.y_o.iter().all(|v| !pair.y_i.contains(v)));
        prop_assert_eq!(pair.dual_value, sol.objective);
        let cover = extract_cover(&aux, &sol.flow).unwrap();
        prop_assert!(cover.validate(&bidirect(&d), &w).is_ok());
        prop_assert_eq!(cover.cost(&bidirect(&d)), r(sol.objective));
    }

    #[test]
    fn pairs_never_beat_covers(seed in any::<u64>()) {
        let (d, _) = instance(seed);
        let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
        let b = bidirect(&d);
        let n = d.node_count();
        // a random circular cover, and weights it covers
        let cycles = rng.gen_range(1..6);
        let z = random_circulation(&mut rng, &b, cycles);
        let (mut z_o, mut z_i) = (vec![r(0); z.len()], vec![r(0); z.len()]);
        for a in 0..z.len() {
            let k = rng.gen_range(0..=z[a]);
            z_o[a] = r(k);
            z_i[a] = r(z[a] - k);
        }
        let cover = CircularCover { z_o, z_i };
        let (mut out_o, mut in_i) = (vec![0i64; n], vec![0i64; n]);
        for a in 0..z.len() {
            let (u, v) = b.arc(a);
            out_o[u] += cover.z_o[a].to_integer();
            in_i[v] += cover.z_i[a].to_integer();
        }
        let w = WeightPair::new(
            out_o.iter().map(|&x| r(rng.gen_range(0..=x))).collect(),
            in_i.iter().map(|&x| r(rng.gen_range(0..=x))).collect(),
        ).unwrap();
        prop_assert!(cover.validate(&b, &w).is_ok());
        // a random source-sink pair
        let family: Vec<_> = enumerate_reorientations(&d, OracleBudget::default()).unwrap().collect();
        let pick = &family[rng.gen_range(0..family.len())];
        let (src, snk) = pick.digraph.sources_sinks();
        let y_o: Vec<NodeId> = src.into_iter().filter(|_| rng.gen_bool(0.7)).collect();
        let y_i: Vec<NodeId> = snk.into_iter().filter(|v| !y_o.contains(v) && rng.gen_bool(0.7)).collect();
        prop_assert!(verify_so_si(&d, &y_o, &y_i).unwrap().is_feasible());
        prop_assert!(w.pair_weight(&y_o, &y_i) <= cover.cost(&b));
    }

    #[test]
    fn rational_weights_match_oracle(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(n - 1..=10);
        let d = random_digraph(&mut rng, n, m);
        let mut draw = || -> Vec<Rational> {
            (0..n).map(|_| Rational::new(rng.gen_range(0..=6), rng.gen_range(1..=4))).collect()
        };
        let w = WeightPair::new(draw(), draw()).unwrap();
        let cert = max_so_si(&d, &w).unwrap();
        prop_assert_eq!(cert.value, brute_max_so_si(&d, &w, OracleBudget::default()).unwrap().value);
        prop_assert!(cert.check(&d, &w).all_pass(false));
    }

    #[test]
    fn sink_stable_certificates(seed in any::<u64>()) {
        let (d, w) = instance(seed);
        let res = sink_stable_max(&d, &w.w_i).unwrap();
        let b = bidirect(&d);
        let only_sinks = WeightPair::new(vec![r(0); w.len()], w.w_i.clone()).unwrap();
        let brute = brute_max_so_si(&d, &only_sinks, OracleBudget::default()).unwrap();
        prop_assert_eq!(r(res.value), brute.value);
        prop_assert_eq!(res.circuit_cost(&b), res.value);
        for (v, k) in res.coverage(&b).into_iter().enumerate() {
            prop_assert!(r(k) >= w.w_i[v]);
        }
        // the set is sink-stable: some reorientation makes all of it sinks
        prop_assert!(verify_so_si(&d, &[], &res.set).unwrap().is_feasible());
    }

    #[test]
    fn constrained_pairs_match_oracle(seed in any::<u64>()) {
        let (d, _) = instance(seed);
        let mut rng = StdRng::seed_from_u64(!seed);
        let n = d.node_count();
        let side: Vec<u8> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        let ao: Vec<NodeId> = (0..n).filter(|&v| side[v] == 0).collect();
        let ai: Vec<NodeId> = (0..n).filter(|&v| side[v] == 1).collect();
        let fo: Vec<NodeId> = ao.iter().copied().filter(|_| rng.gen_bool(0.3)).collect();
        let fi: Vec<NodeId> = ai.iter().copied().filter(|_| rng.gen_bool(0.3)).collect();
        let got = constrained_so_si(&d, &fo, &ao, &fi, &ai).unwrap();
        let brute = brute_constrained(&d, &fo, &ao, &fi, &ai);
        match (got, brute) {
            (Some(p), Some(best)) => {
                prop_assert_eq!(p.y_o.len() + p.y_i.len(), best);
                prop_assert!(fo.iter().all(|v| p.y_o.contains(v)));
                prop_assert!(fi.iter().all(|v| p.y_i.contains(v)));
                prop_assert!(verify_so_si(&d, &p.y_o, &p.y_i).unwrap().is_feasible());
            }
            (None, None) => {}
            (got, brute) => prop_assert!(false, "solver {:?} vs oracle {:?}", got.map(|p| (p.y_o, p.y_i)), brute),
        }
        if fo.is_empty() && fi.is_empty() {
            let plain = cardinality_within(&d, &ao, &ai).unwrap();
            prop_assert_eq!(plain.y_o.len() + plain.y_i.len(), brute.unwrap());
        }
    }
}
