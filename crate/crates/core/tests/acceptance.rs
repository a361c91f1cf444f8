//! End-to-end acceptance checks. Runs without the libtest harness and prints
//! one PASS/FAIL line per check; exits nonzero if any check fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sosi::digraph::{bidirect, circulation_cost, verify_so_si, Digraph, NodeId};
use sosi::mcc;
use sosi::oracle::{
    brute_clar_fries, brute_max_so_si, enumerate_matchings, enumerate_reorientations,
    random_digraph, random_weights, OracleBudget,
};
use sosi::plane::{clar_number, fries_number, solve_clar_fries, PlaneBipartiteGraph};
use sosi::sosi::{
    build_aux, extract_cover, extract_pair, max_so_si, resonant_max, sink_stable_max,
    CircularCover, WeightPair,
};
use sosi::Rational;

type Outcome = Result<String, String>;

fn r(x: i64) -> Rational {
    Rational::from_integer(x)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_instance(rng: &mut StdRng) -> (Digraph, WeightPair) {
    let n = rng.gen_range(2..=7);
    let m = rng.gen_range(n - 1..=12);
    let d = random_digraph(rng, n, m);
    let w = random_weights(rng, n, 3);
    (d, w)
}

fn restricted_resonant() -> Outcome {
    let d = bowtie();
    let u = nodes(&d, &["a1", "b1", "x"]);
    let cert = resonant_max(&d, &indicator(7, &u)).map_err(|e| e.to_string())?;
    let cost = cert.cover.cost(&bidirect(&d));
    ensure(cert.value == r(2) && cost == r(2), || {
        format!("value {} cover cost {cost}", cert.value)
    })?;
    Ok(format!("value {}, cover cost {cost}", cert.value))
}

fn unit_resonant() -> Outcome {
    let d = bowtie();
    let cert = resonant_max(&d, &[r(1); 7]).map_err(|e| e.to_string())?;
    let size = cert.y_o.len() + cert.y_i.len();
    let ones = WeightPair::new(vec![r(1); 7], vec![r(1); 7]).unwrap();
    let brute = brute_max_so_si(&d, &ones, OracleBudget::default()).map_err(|e| e.to_string())?;
    let feasible = verify_so_si(&d, &cert.y_o, &cert.y_i)
        .map_err(|e| e.to_string())?
        .is_feasible();
    ensure(size >= 4 && cert.value == brute.value && feasible, || {
        format!(
            "size {size}, value {} vs oracle {}",
            cert.value, brute.value
        )
    })?;
    Ok(format!(
        "resonant set of size {size}, value {} = oracle",
        cert.value
    ))
}

/// Runs the random sweep once and reports min-max equality, integrality and
/// extraction invariants separately.
struct Sweep {
    minmax: Outcome,
    integral: Outcome,
    extraction: Outcome,
}

fn sweep() -> Sweep {
    let mut rng = StdRng::seed_from_u64(0x5050);
    let mut minmax = Ok(());
    let mut integral = Ok(());
    let mut extraction = Ok(());
    for k in 0..300 {
        let (d, w) = small_instance(&mut rng);
        let cert = match max_so_si(&d, &w) {
            Ok(c) => c,
            Err(e) => {
                minmax = Err(format!("instance {k}: {e}"));
                break;
            }
        };
        let b = bidirect(&d);
        let pair = w.pair_weight(&cert.y_o, &cert.y_i);
        let cover = cert.cover.cost(&b);
        let brute = brute_max_so_si(&d, &w, OracleBudget::default()).map(|x| x.value);
        if minmax.is_ok() && !(pair == cover && cover == cert.objective && Ok(pair) == brute) {
            minmax = Err(format!(
                "instance {k}: pair {pair}, cover {cover}, objective {}, oracle {brute:?}",
                cert.objective
            ));
        }
        if integral.is_ok() && !cert.cover.is_integral() {
            integral = Err(format!("instance {k}: fractional cover"));
        }
        if extraction.is_ok() {
            if let Err(e) = extraction_invariants(&d, &w) {
                extraction = Err(format!("instance {k}: {e}"));
            }
        }
    }
    let done = |res: Result<(), String>, msg: &str| res.map(|()| msg.to_string());
    Sweep {
        minmax: done(
            minmax,
            "300 instances: pair weight = cover cost = objective = oracle",
        ),
        integral: done(integral, "300 integral-weight covers are integral"),
        extraction: done(
            extraction,
            "300 runs: small-dropping, vertical sums in {0,1}, disjoint pair",
        ),
    }
}

fn extraction_invariants(d: &Digraph, w: &WeightPair) -> Result<(), String> {
    let aux = build_aux(d, w).map_err(|e| e.to_string())?;
    let sol = mcc::solve(aux.instance()).map_err(|e| e.to_string())?;
    let pi = &sol.potential;
    for v in 0..d.node_count() {
        let sum = pi.value(aux.in_copy(v)) - pi.value(aux.out_copy(v));
        ensure(sum == 0 || sum == 1, || {
            format!("vertical sum {sum} at node {v}")
        })?;
    }
    let pair = extract_pair(&aux, pi).map_err(|e| e.to_string())?;
    ensure(pair.potential.is_small_dropping(d), || {
        "potential is not small-dropping".into()
    })?;
    ensure(pair.y_o.iter().all(|v| !pair.y_i.contains(v)), || {
        "pair overlaps".into()
    })?;
    extract_cover(&aux, &sol.flow).map_err(|e| e.to_string())?;
    Ok(())
}

fn weak_duality() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xd0a1);
    for k in 0..300 {
        let (d, _) = small_instance(&mut rng);
        let b = bidirect(&d);
        let n = d.node_count();
        let cycles = rng.gen_range(1..6);
        let z = random_circulation(&mut rng, &b, cycles);
        let mut cover = CircularCover {
            z_o: vec![r(0); z.len()],
            z_i: vec![r(0); z.len()],
        };
        let (mut out_o, mut in_i) = (vec![0i64; n], vec![0i64; n]);
        for a in 0..z.len() {
            let part = rng.gen_range(0..=z[a]);
            cover.z_o[a] = r(part);
            cover.z_i[a] = r(z[a] - part);
            out_o[b.arc(a).0] += part;
            in_i[b.arc(a).1] += z[a] - part;
        }
        let w = WeightPair::new(
            out_o.iter().map(|&x| r(rng.gen_range(0..=x))).collect(),
            in_i.iter().map(|&x| r(rng.gen_range(0..=x))).collect(),
        )
        .unwrap();
        cover
            .validate(&b, &w)
            .map_err(|e| format!("instance {k}: {e}"))?;
        let family: Vec<_> = enumerate_reorientations(&d, OracleBudget::default())
            .map_err(|e| e.to_string())?
            .collect();
        let (src, snk) = family[rng.gen_range(0..family.len())]
            .digraph
            .sources_sinks();
        let y_o: Vec<NodeId> = src.into_iter().filter(|_| rng.gen_bool(0.8)).collect();
        let y_i: Vec<NodeId> = snk
            .into_iter()
            .filter(|v| !y_o.contains(v) && rng.gen_bool(0.8))
            .collect();
        let pair = w.pair_weight(&y_o, &y_i);
        let cost = cover.cost(&b);
        ensure(pair <= cost, || {
            format!("instance {k}: pair {pair} > cover {cost}")
        })?;
    }
    Ok("300 pair/cover combinations: pair weight <= cover cost".into())
}

fn cost_preservation() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xc0c0);
    for k in 0..200 {
        let (d, _) = small_instance(&mut rng);
        let b = bidirect(&d);
        let family: Vec<_> = enumerate_reorientations(&d, OracleBudget::default())
            .map_err(|e| e.to_string())?
            .collect();
        let reo = &family[rng.gen_range(0..family.len())];
        let z = random_circulation(&mut rng, &b, 4);
        let m = d.arc_count();
        let before = circulation_cost(&b, &z).map_err(|e| e.to_string())?;
        // in the reoriented digraph, a reversed arc's original copy is its reverse
        let after: i64 = (0..2 * m)
            .map(|a| {
                let flipped = reo.reversed.contains(&(a % m));
                z[a] * i64::from((a < m) != flipped)
            })
            .sum();
        ensure(before == after, || {
            format!("instance {k}: cost {before} became {after}")
        })?;
    }
    Ok("200 reorientation/circulation combinations keep their cost".into())
}

fn sink_stable() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x51c);
    for k in 0..100 {
        let (d, w) = small_instance(&mut rng);
        let b = bidirect(&d);
        let res = sink_stable_max(&d, &w.w_i).map_err(|e| format!("instance {k}: {e}"))?;
        let covered = res
            .coverage(&b)
            .iter()
            .zip(&w.w_i)
            .all(|(&c, x)| r(c) >= *x);
        let only_sinks = WeightPair::new(vec![r(0); w.len()], w.w_i.clone()).unwrap();
        let brute =
            brute_max_so_si(&d, &only_sinks, OracleBudget::default()).map_err(|e| e.to_string())?;
        ensure(
            covered && res.circuit_cost(&b) == res.value && r(res.value) == brute.value,
            || {
                format!(
                    "instance {k}: value {}, circuits {}, oracle {}",
                    res.value,
                    res.circuit_cost(&b),
                    brute.value
                )
            },
        )?;
    }
    let cycle = load_digraph("twocycle.json");
    let value = sink_stable_max(&cycle, &[r(1), r(1)])
        .map_err(|e| e.to_string())?
        .value;
    ensure(value == 0, || format!("two-cycle value {value}"))?;
    Ok("100 instances certified by circuit families; two-cycle gives 0".into())
}

fn face_numbers_match(g: &PlaneBipartiteGraph) -> Result<(usize, usize), String> {
    let inner = g.inner_indicator();
    let zero = vec![r(0); g.face_count()];
    let clar = clar_number(g).map_err(|e| e.to_string())?.value;
    let fries = fries_number(g).map_err(|e| e.to_string())?.value;
    let brute_clar = brute_clar_fries(g, &inner, &zero, OracleBudget::default())
        .map_err(|e| e.to_string())?
        .value;
    let brute_fries = brute_clar_fries(g, &inner, &inner, OracleBudget::default())
        .map_err(|e| e.to_string())?
        .value;
    ensure(
        r(clar as i64) == brute_clar && r(fries as i64) == brute_fries,
        || format!("clar {clar} vs {brute_clar}, fries {fries} vs {brute_fries}"),
    )?;
    Ok((clar, fries))
}

fn clar_fries_catalog() -> Outcome {
    let hex = load_plane("hex.json");
    let (clar, fries) = face_numbers_match(&hex)?;
    ensure(clar == 1 && fries == 1, || {
        format!("hexagon clar {clar} fries {fries}")
    })?;
    let naph = load_plane("naphthalene.json");
    let count = enumerate_matchings(&naph, OracleBudget::default())
        .map_err(|e| e.to_string())?
        .len();
    ensure(count == 3, || format!("naphthalene has {count} matchings"))?;
    face_numbers_match(&naph)?;
    let mut graphs: Vec<PlaneBipartiteGraph> =
        benzenoid_catalog().into_iter().map(|(_, g)| g).collect();
    for name in ["anthracene.json", "phenanthrene.json", "pyrene.json"] {
        graphs.push(load_plane(name));
    }
    for g in &graphs {
        face_numbers_match(g)?;
    }
    Ok(format!(
        "hexagon 1/1, naphthalene and {} catalog patches match the oracle",
        graphs.len()
    ))
}

fn calibration() -> Outcome {
    let g = load_plane("hex.json");
    let inner = g.face_by_id("inner").ok_or("no inner face")?;
    let (mut w1, mut w2) = (vec![r(0); 2], vec![r(0); 2]);
    w1[inner] = r(5);
    w2[inner] = r(3);
    let solved = solve_clar_fries(&g, &w1, &w2).map_err(|e| e.to_string())?;
    let brute =
        brute_clar_fries(&g, &w1, &w2, OracleBudget::default()).map_err(|e| e.to_string())?;
    ensure(
        solved.value == r(5) && brute.value == r(5) && solved.cw_faces.contains(&inner),
        || format!("solver {} oracle {}", solved.value, brute.value),
    )?;
    Ok("weights (5, 3) give 5 from solver and oracle".into())
}

fn local_resonance_is_not_enough() -> Outcome {
    let d = bowtie();
    let keep = ["a1", "b1", "x"];
    for names in [["x", "a1", "a2", "a3"], ["x", "b1", "b2", "b3"]] {
        let arcs: Vec<(&str, &str)> = d
            .arcs()
            .iter()
            .map(|&(u, v)| (d.name(u), d.name(v)))
            .filter(|(u, v)| names.contains(u) && names.contains(v))
            .collect();
        let sub = Digraph::from_named_arcs(&names, &arcs).map_err(|e| e.to_string())?;
        let u: Vec<NodeId> = keep.iter().filter_map(|x| sub.node_by_name(x)).collect();
        let value = resonant_max(&sub, &indicator(4, &u))
            .map_err(|e| e.to_string())?
            .value;
        ensure(value == r(u.len() as i64), || {
            format!("circuit {names:?}: value {value}")
        })?;
    }
    let u = nodes(&d, &keep);
    let value = resonant_max(&d, &indicator(7, &u))
        .map_err(|e| e.to_string())?
        .value;
    ensure(value == r(2), || format!("full digraph value {value}"))?;
    Ok("resonant inside each circuit, but only 2 of 3 in the whole digraph".into())
}

fn scale() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xb16);
    let d = random_digraph(&mut rng, 10_000, 50_000);
    let w = random_weights(&mut rng, 10_000, 10);
    let cert = max_so_si(&d, &w).map_err(|e| e.to_string())?;
    let checks = cert.check(&d, &w);
    ensure(checks.all_pass(true), || {
        format!("self-checks failed: {checks:?}")
    })?;
    Ok(format!(
        "10000 nodes, 50000 arcs: value {}, all checks pass",
        cert.value
    ))
}

fn main() -> ExitCode {
    type Check = (
        usize,
        &'static str,
        Box<dyn FnOnce() -> Outcome>,
        Option<Duration>,
    );
    let secs = |s: u64| Some(Duration::from_secs(s));

    let start = Instant::now();
    let swept = sweep();
    let sweep_time = start.elapsed();
    let Sweep {
        minmax,
        integral,
        extraction,
    } = swept;

    let checks: Vec<Check> = vec![
        (
            1,
            "bowtie resonant within {a1, b1, x}",
            Box::new(restricted_resonant),
            secs(1),
        ),
        (
            2,
            "bowtie resonant with unit weights",
            Box::new(unit_resonant),
            secs(1),
        ),
        (3, "min-max equality sweep", Box::new(move || minmax), None),
        (4, "weak duality", Box::new(weak_duality), secs(30)),
        (
            5,
            "reorientation keeps circulation cost",
            Box::new(cost_preservation),
            secs(30),
        ),
        (6, "integral covers", Box::new(move || integral), None),
        (
            7,
            "extraction invariants",
            Box::new(move || extraction),
            None,
        ),
        (
            8,
            "sink-stable circuit certificates",
            Box::new(sink_stable),
            secs(30),
        ),
        (
            9,
            "Clar and Fries numbers on small patches",
            Box::new(clar_fries_catalog),
            secs(10),
        ),
        (
            10,
            "clockwise/anticlockwise weight calibration",
            Box::new(calibration),
            None,
        ),
        (
            11,
            "resonance is not local to circuits",
            Box::new(local_resonance_is_not_enough),
            None,
        ),
        (12, "large random digraph", Box::new(scale), secs(30)),
    ];

    let mut failed = 0;
    for (id, name, check, limit) in checks {
        let t = Instant::now();
        let mut result = check();
        let mut elapsed = t.elapsed();
        if id == 3 {
            elapsed = sweep_time;
            if sweep_time > Duration::from_secs(60) {
                result = Err(format!("took {sweep_time:?}, limit 60s"));
            }
        }
        if let (Some(limit), Ok(_)) = (limit, &result) {
            if elapsed > limit {
                result = Err(format!("took {elapsed:?}, limit {limit:?}"));
            }
        }
        match result {
            Ok(msg) => println!("PASS {id:>2} {name}: {msg} ({:.2?})", elapsed),
            Err(msg) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {msg} ({:.2?})", elapsed);
            }
        }
    }
    if failed == 0 {
        println!("all 12 acceptance checks passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance check(s) failed");
        ExitCode::FAILURE
    }
}
