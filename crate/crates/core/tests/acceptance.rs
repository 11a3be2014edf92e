//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any
//! failure.

mod common;

use std::time::Instant;

use common::{brute_force_star_factors, equalizes, random_tree, three_core_edges_graph, tree_restatement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use starfactor_core::census::generate_connected_girth;
use starfactor_core::classifier::classify_connected_girth5;
use starfactor_core::families::{cycle, path, petersen};
use starfactor_core::{
    classify, decide_uniform_weighting, edge_count_spectrum, enumerate_star_factors, incidence_vectors,
    omega_oracle, parse_graph6_lines, verify_outcome, CaseTag, Graph, OracleVerdict, Verdict, DEFAULT_CAP,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn list(n: usize) -> Vec<Graph> {
    let path = format!("{}/tests/data/connected_girth5_n{n}.g6", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    parse_graph6_lines(&text).unwrap()
}

fn builtin_girth5(orders: std::ops::RangeInclusive<usize>) -> Vec<Graph> {
    orders.flat_map(|n| generate_connected_girth(n, 5).unwrap()).collect()
}

fn is_c5_or_c7(g: &Graph) -> bool {
    g.is_connected() && (0..g.order()).all(|v| g.degree(v) == 2) && matches!(g.order(), 5 | 7)
}

fn oracle_verdict(g: &Graph) -> Verdict {
    match omega_oracle(g, DEFAULT_CAP) {
        OracleVerdict::Member { .. } => Verdict::Member,
        OracleVerdict::NotMember(_) => Verdict::NotMember,
        OracleVerdict::Vacuous => Verdict::Vacuous,
        OracleVerdict::CapExceeded { cap } => panic!("cap {cap} exceeded"),
    }
}

fn cycle_table() -> Outcome {
    let start = Instant::now();
    for n in 5..=12 {
        let g = cycle(n);
        match omega_oracle(&g, DEFAULT_CAP) {
            OracleVerdict::Member { weighting, .. } => {
                ensure(matches!(n, 5 | 7), || format!("C{n} reported Member"))?;
                ensure(weighting.is_constant(), || format!("C{n} witness is not constant"))?;
            }
            OracleVerdict::NotMember(_) => ensure(!matches!(n, 5 | 7), || format!("C{n} reported NotMember"))?,
            other => return Err(format!("C{n}: {other:?}")),
        }
    }
    let ms = start.elapsed().as_millis();
    ensure(ms < 1000, || format!("took {ms} ms"))?;
    Ok(format!("C5..C12 in {ms} ms"))
}

fn min_degree_two_corollary() -> Outcome {
    let mut graphs: Vec<Graph> = builtin_girth5(1..=7);
    graphs.extend(list(8));
    graphs.extend(list(9));
    graphs.retain(|g| g.min_degree() >= Some(2));
    let mut members = 0;
    for g in &graphs {
        let member = omega_oracle(g, DEFAULT_CAP).is_member();
        ensure(member == is_c5_or_c7(g), || format!("{g:?}: oracle member = {member}"))?;
        let structural = classify_connected_girth5(g).map_err(|e| e.to_string())?;
        ensure(structural.is_member() == member, || format!("{g:?}: classifier disagrees"))?;
        members += member as usize;
    }
    ensure(omega_oracle(&petersen(), DEFAULT_CAP).is_not_member(), || "Petersen not refuted".into())?;
    Ok(format!("{} graphs with min degree >= 2, {members} members (all C5/C7); Petersen refuted", graphs.len()))
}

struct Equivalence {
    graphs: usize,
    members: usize,
    disagreements: Vec<String>,
    bad_witnesses: Vec<String>,
}

fn main_theorem_sweep() -> Equivalence {
    let mut graphs = builtin_girth5(2..=7);
    graphs.extend(list(8));
    let mut eq = Equivalence { graphs: graphs.len(), members: 0, disagreements: Vec::new(), bad_witnesses: Vec::new() };
    for g in &graphs {
        let c = classify_connected_girth5(g).expect("connected, girth >= 5, n >= 2");
        if c.verdict != oracle_verdict(g) {
            eq.disagreements.push(starfactor_core::to_graph6(g));
        }
        if let Some(w) = &c.witness {
            eq.members += 1;
            let vs = incidence_vectors(&enumerate_star_factors(g, DEFAULT_CAP).unwrap(), g.size());
            let common = vs[0].bits.iter().zip(&w.weights).filter(|(&b, _)| b).map(|(_, q)| q.clone()).sum();
            let claim = starfactor_core::FeasibilityOutcome::Witness { weighting: w.clone(), common_weight: common };
            if !verify_outcome(&vs, &claim) || !equalizes(g, &w.weights) {
                eq.bad_witnesses.push(starfactor_core::to_graph6(g));
            }
        }
    }
    eq
}

fn three_core_edges() -> Outcome {
    let named = three_core_edges_graph();
    let g = &named.graph;
    ensure(omega_oracle(g, DEFAULT_CAP).is_member(), || "oracle does not accept".into())?;
    let spectrum = edge_count_spectrum(&enumerate_star_factors(g, DEFAULT_CAP).unwrap());
    ensure(spectrum.contains(7) && spectrum.contains(10), || format!("spectrum {:?}", spectrum.to_vec()))?;
    let c = classify(g, DEFAULT_CAP).map_err(|e| e.to_string())?;
    ensure(matches!(c.case_tag, Some(CaseTag::Case4b | CaseTag::Mixed4)), || format!("tag {:?}", c.case_tag))?;
    let w = c.witness.ok_or("no witness")?;
    let heavy = [named.e("Q1", "Q2"), named.e("A", "B"), named.e("Q3", "Q4")];
    for e in 0..g.size() {
        let expected: u32 = if heavy.contains(&e) { 2 } else { 1 };
        ensure(w.integral[e] == expected.into(), || format!("edge {:?} weight {}", g.edge(e), w.integral[e]))?;
    }
    ensure(equalizes(g, &w.weights), || "weights do not equalize".into())?;
    let sizes: Vec<usize> = spectrum.0.keys().copied().collect();
    Ok(format!("star-factor sizes {sizes:?}, weights 2 on a,b,c"))
}

fn stiemke_exclusivity() -> Outcome {
    let mut witnesses = 0;
    let mut refutations = 0;
    let mut total = 0;
    for n in 1..=6 {
        for g in generate_connected_girth(n, 0).unwrap() {
            total += 1;
            let brute = brute_force_star_factors(&g);
            let fs = match enumerate_star_factors(&g, DEFAULT_CAP) {
                Ok(fs) => fs,
                Err(_) => {
                    ensure(brute.is_empty(), || format!("{g:?}: enumerator found nothing"))?;
                    continue;
                }
            };
            let got: Vec<Vec<usize>> = fs.iter().map(|f| f.edges.clone()).collect();
            ensure(got == brute, || format!("{g:?}: enumerator differs from subset filter"))?;
            let outcome = decide_uniform_weighting(&incidence_vectors(&fs, g.size()));
            ensure(verify_outcome(&incidence_vectors(&fs, g.size()), &outcome), || format!("{g:?}: checker rejects"))?;
            if outcome.is_witness() {
                witnesses += 1;
            } else {
                refutations += 1;
            }
        }
    }
    Ok(format!("{total} graphs: {witnesses} witnesses, {refutations} refutations, all verified"))
}

fn path_family() -> Outcome {
    for n in 2..=8 {
        let g = path(n);
        let expected = if n <= 7 { Verdict::Member } else { Verdict::NotMember };
        ensure(oracle_verdict(&g) == expected, || format!("oracle on P{n}"))?;
        let c = classify(&g, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(c.verdict == expected, || format!("classifier on P{n}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_7ee5);
    let mut members = 0;
    for i in 0..1000 {
        let n = 2 + i % 13;
        let t = random_tree(&mut rng, n);
        let restated = tree_restatement(&t);
        let c = classify(&t, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(c.is_member() == restated, || format!("{t:?}: classifier vs restatement"))?;
        ensure((oracle_verdict(&t) == Verdict::Member) == restated, || format!("{t:?}: oracle vs restatement"))?;
        members += restated as usize;
    }
    Ok(format!("P2..P7 members, P8 not; 1000 random trees agree ({members} members)"))
}

fn main() {
    let mut failed = 0;
    let mut report = |id: &str, title: &str, outcome: Outcome, start: Instant| {
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("{id} PASS  {title}: {detail} [{ms} ms]"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL  {title}: {why} [{ms} ms]");
            }
        }
    };

    let t = Instant::now();
    report("AC1", "cycle table", cycle_table(), t);
    let t = Instant::now();
    report("AC2", "min degree >= 2, girth >= 5, n <= 9: members are C5 and C7", min_degree_two_corollary(), t);

    let t = Instant::now();
    let eq = main_theorem_sweep();
    let ac3 = if eq.disagreements.is_empty() {
        Ok(format!("{} connected graphs of girth >= 5, n <= 8, 0 disagreements", eq.graphs))
    } else {
        Err(format!("disagreements on {:?}", eq.disagreements))
    };
    report("AC3", "classifier = oracle", ac3, t);
    let t = Instant::now();
    let ac4 = if eq.bad_witnesses.is_empty() {
        Ok(format!("{} structural witnesses equalize every star-factor (checked in the AC3 sweep)", eq.members))
    } else {
        Err(format!("bad witnesses on {:?}", eq.bad_witnesses))
    };
    report("AC4", "witness validity", ac4, t);

    let t = Instant::now();
    report("AC5", "three core edges graph", three_core_edges(), t);
    let t = Instant::now();
    report("AC6", "Stiemke exclusivity and enumerator, n <= 6", stiemke_exclusivity(), t);
    let t = Instant::now();
    report("AC7", "paths and tree restatement", path_family(), t);

    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
