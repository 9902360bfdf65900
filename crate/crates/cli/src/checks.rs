//! The five property suites behind `homkit check`.
//!
//! Each suite runs the invariants of one slice of the library against
//! exhaustive small corpora (plus seeded random extensions) and reports
//! machine-readable pass/fail per property, with a counterexample on
//! failure. Budgets are pinned generously; an "unknown" from the solver
//! inside a suite counts as a failure of that property.

use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

use homkit_core::functors::{
    arc_digraph, central_binomial, delta_left, delta_right, min_level_for, omega, power_graph, sub,
    subdivide, sym, FunctorId,
};
use homkit_core::graph::{
    circular_clique, clique, cycle, exponential, kneser, power, tensor_product, tuple_decode,
    SizeCap,
};
use homkit_core::hom::{
    chromatic_number, hom_exists, sample_homs, ChiOutcome, EnumOutcome, HomOutcome,
};
use homkit_core::poly::{
    all_polymorphisms, enumerate_polymorphisms, essential_coordinates, minor, MinorMap,
};
use homkit_core::reduce::{color_lift, color_push, compose, replay, StepOp, StepSpec};
use homkit_core::topo::wind::{mirror_map, winding_profile};
use homkit_core::topo::{box_complex, hom_complex, homology, induced_hom_map, quotient};
use homkit_core::{Budget, Coloring, Graph, Polymorphism};

use crate::corpus::{
    digraphs_up_to, random_digraph, random_symmetric, symmetric_graphs_up_to, SplitMix64,
};
use crate::fmt::serialize_graph;

pub const SUITES: &[&str] = &[
    "adjunctions",
    "poljak-rodl",
    "topology",
    "winding",
    "minion",
];

#[derive(Clone, Debug)]
pub struct PropertyResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub results: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

pub fn run_suite(name: &str) -> anyhow::Result<SuiteReport> {
    let results = match name {
        "adjunctions" => suite_adjunctions(),
        "poljak-rodl" => suite_poljak_rodl(),
        "topology" => suite_topology(),
        "winding" => suite_winding(),
        "minion" => suite_minion(),
        other => anyhow::bail!("unknown suite `{other}`; expected one of {SUITES:?}"),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        results,
    })
}

fn prop(name: &str, counterexample: Option<String>) -> PropertyResult {
    PropertyResult {
        name: name.to_string(),
        pass: counterexample.is_none(),
        detail: counterexample.unwrap_or_default(),
    }
}

fn decide(g: &Graph, h: &Graph) -> Result<bool, String> {
    match hom_exists(g, h, Budget::default()).0 {
        HomOutcome::Witness(_) => Ok(true),
        HomOutcome::NoHom => Ok(false),
        HomOutcome::Unknown => Err(format!(
            "budget exhausted deciding hom between graphs with {} and {} vertices",
            g.n(),
            h.n()
        )),
    }
}

fn show_pair(g: &Graph, h: &Graph) -> String {
    format!("G:\n{}H:\n{}", serialize_graph(g), serialize_graph(h))
}

/// Checks one thin-adjunction biconditional on every pair of the given
/// corpora; returns the first counterexample.
fn biconditional(
    name: &str,
    left: &[(Graph, Graph)],  // (original, transformed by the left functor)
    right: &[(Graph, Graph)], // (original, transformed by the right functor)
) -> PropertyResult {
    let failure = left.par_iter().find_map_first(|(g, lg)| {
        for (h, rh) in right {
            let lhs = match decide(lg, h) {
                Ok(b) => b,
                Err(e) => return Some(e),
            };
            let rhs = match decide(g, rh) {
                Ok(b) => b,
                Err(e) => return Some(e),
            };
            if lhs != rhs {
                return Some(format!(
                    "{name}: left({lhs}) != right({rhs}) on\n{}",
                    show_pair(g, h)
                ));
            }
        }
        None
    });
    prop(name, failure)
}

// ---------------------------------------------------------------------------
// adjunctions
// ---------------------------------------------------------------------------

fn suite_adjunctions() -> Vec<PropertyResult> {
    let cap = SizeCap::default();
    let sym4 = symmetric_graphs_up_to(4, true);
    let sym3 = symmetric_graphs_up_to(3, true);
    let digs3 = digraphs_up_to(3);
    let mut results = Vec::new();

    // circular cliques of integer slope are cliques
    results.push(prop(
        "circular-clique integer slope equals clique",
        (3..=8u32).find_map(|p| {
            (circular_clique(p, 1).unwrap() != clique(p)).then(|| format!("p = {p}"))
        }),
    ));

    // tensor product: commutative up to the canonical index bijection
    results.push(prop(
        "tensor product commutes up to re-indexing",
        sym4.par_iter().find_map_first(|g| {
            for h in &sym4 {
                let gh = tensor_product(g, h);
                let hg = tensor_product(h, g);
                let (ng, nh) = (g.n(), h.n());
                let swap = |x: u32| (x % nh) * ng + x / nh;
                let mut mapped: Vec<(u32, u32)> =
                    gh.arcs().iter().map(|&(u, v)| (swap(u), swap(v))).collect();
                mapped.sort_unstable();
                if mapped != hg.arcs() {
                    return Some(show_pair(g, h));
                }
            }
            None
        }),
    ));

    // tensor product: associativity is literal under row-major encoding
    results.push(prop(
        "tensor product associates",
        sym3.par_iter().find_map_first(|f| {
            for g in &sym3 {
                for h in &sym3 {
                    if tensor_product(&tensor_product(f, g), h)
                        != tensor_product(f, &tensor_product(g, h))
                    {
                        return Some(show_pair(f, g));
                    }
                }
            }
            None
        }),
    ));

    // (subdivision, walk power) for k in {3, 5}
    for k in [3u32, 5] {
        let left: Vec<(Graph, Graph)> = sym4
            .iter()
            .map(|g| (g.clone(), subdivide(g, k).unwrap()))
            .collect();
        let right: Vec<(Graph, Graph)> = sym4
            .iter()
            .map(|h| (h.clone(), power_graph(h, k).unwrap()))
            .collect();
        results.push(biconditional(
            &format!("subdivision/walk-power adjunction, k = {k}"),
            &left,
            &right,
        ));
    }

    // (walk power, subset tuples) for k = 3
    {
        let left: Vec<(Graph, Graph)> = sym4
            .iter()
            .map(|g| (g.clone(), power_graph(g, 3).unwrap()))
            .collect();
        let right: Vec<(Graph, Graph)> = sym3
            .iter()
            .map(|h| (h.clone(), omega(h, 3, &cap).unwrap()))
            .collect();
        results.push(biconditional(
            "walk-power/subset-tuple adjunction, k = 3",
            &left,
            &right,
        ));
    }

    // the two one-sided facts: Lambda_k G -> Omega_k G, Gamma_k Lambda_k G -> G
    for (k, corpus) in [(3u32, &sym4), (5u32, &sym3)] {
        let failure = corpus.par_iter().find_map_first(|g| {
            let lam = subdivide(g, k).unwrap();
            let om = omega(g, k, &cap).unwrap();
            match decide(&lam, &om) {
                Ok(true) => {}
                Ok(false) => {
                    return Some(format!(
                        "subdivision misses subset tuples on\n{}",
                        serialize_graph(g)
                    ))
                }
                Err(e) => return Some(e),
            }
            let gl = power_graph(&lam, k).unwrap();
            match decide(&gl, g) {
                Ok(true) => None,
                Ok(false) => Some(format!(
                    "walk power of subdivision misses the base on\n{}",
                    serialize_graph(g)
                )),
                Err(e) => Some(e),
            }
        });
        results.push(prop(&format!("counit and unit facts, k = {k}"), failure));
    }

    // (sym, sub), (delta_L, delta), (delta, delta_R) over small digraphs
    let mut dig_pairs: Vec<(Graph, Graph)> = Vec::new();
    {
        let mut rng = SplitMix64::new(0x5eed_0001);
        for _ in 0..100 {
            dig_pairs.push((random_digraph(&mut rng, 4), random_digraph(&mut rng, 4)));
        }
    }
    {
        let left: Vec<(Graph, Graph)> = digs3
            .iter()
            .chain(dig_pairs.iter().map(|(a, _)| a))
            .map(|d| (d.clone(), sym(d)))
            .collect();
        let right: Vec<(Graph, Graph)> = digs3
            .iter()
            .chain(dig_pairs.iter().map(|(_, b)| b))
            .map(|d| (d.clone(), sub(d)))
            .collect();
        results.push(biconditional("closure/core adjunction", &left, &right));
    }
    {
        let left: Vec<(Graph, Graph)> = digs3
            .iter()
            .chain(dig_pairs.iter().map(|(a, _)| a))
            .map(|d| (d.clone(), delta_left(d)))
            .collect();
        let right: Vec<(Graph, Graph)> = digs3
            .iter()
            .chain(dig_pairs.iter().map(|(_, b)| b))
            .map(|d| (d.clone(), arc_digraph(d)))
            .collect();
        results.push(biconditional(
            "left adjoint of the arc digraph",
            &left,
            &right,
        ));
    }
    {
        let left: Vec<(Graph, Graph)> = digs3
            .iter()
            .chain(dig_pairs.iter().map(|(a, _)| a))
            .map(|d| (d.clone(), arc_digraph(d)))
            .collect();
        let right: Vec<(Graph, Graph)> = digs3
            .iter()
            .chain(dig_pairs.iter().map(|(_, b)| b))
            .map(|d| (d.clone(), delta_right(d, &cap).unwrap().0))
            .collect();
        results.push(biconditional(
            "right adjoint of the arc digraph",
            &left,
            &right,
        ));
    }

    // product/exponential adjunction on exhaustive triples
    {
        let failure = sym3.par_iter().find_map_first(|f| {
            for h in &sym3 {
                let hf = match exponential(h, f, &cap) {
                    Ok(e) => e,
                    Err(e) => return Some(e.to_string()),
                };
                for g in &sym4 {
                    let lhs = match decide(&tensor_product(f, g), h) {
                        Ok(b) => b,
                        Err(e) => return Some(e),
                    };
                    let rhs = match decide(g, &hf) {
                        Ok(b) => b,
                        Err(e) => return Some(e),
                    };
                    if lhs != rhs {
                        return Some(format!(
                            "F x G -> H is {lhs} but G -> H^F is {rhs} with F, H =\n{}G =\n{}",
                            show_pair(f, h),
                            serialize_graph(g)
                        ));
                    }
                }
            }
            None
        });
        results.push(prop("product/exponential adjunction", failure));
    }

    results
}

// ---------------------------------------------------------------------------
// poljak-rodl
// ---------------------------------------------------------------------------

fn exact_chi(g: &Graph) -> Result<u32, String> {
    match chromatic_number(g, Budget::default()).0 {
        ChiOutcome::Exact(k) => Ok(k),
        other => Err(format!("chromatic number not decided: {other:?}")),
    }
}

fn poljak_rodl_identity(g: &Graph) -> Option<String> {
    let delta = arc_digraph(g);
    let chi = match exact_chi(g) {
        Ok(k) => k,
        Err(e) => return Some(e),
    };
    let chi_delta = match exact_chi(&delta) {
        Ok(k) => k,
        Err(e) => return Some(e),
    };
    let expected = min_level_for(chi);
    (chi_delta != expected).then(|| {
        format!(
            "chi(G) = {chi}, chi(arc digraph) = {chi_delta}, expected {expected} on\n{}",
            serialize_graph(g)
        )
    })
}

/// The two colouring transfers, round-tripped on one graph.
fn transfer_round_trip(g: &Graph) -> Option<String> {
    if g.arc_count() == 0 {
        return None;
    }
    let delta = arc_digraph(g);
    let n = match exact_chi(&delta) {
        Ok(k) => k,
        Err(e) => return Some(e),
    };
    // colouring of the arc digraph with n colours, lifted up to G
    let delta_col = match hom_exists(&delta, &clique(n), Budget::default()).0 {
        HomOutcome::Witness(w) => w.as_coloring(n),
        other => {
            return Some(format!(
                "no {n}-colouring witness for the arc digraph: {other:?}"
            ))
        }
    };
    let lifted = match color_lift(&delta_col, g) {
        Ok(c) => c,
        Err(e) => return Some(format!("lift failed: {e}")),
    };
    if lifted.colors > 1 << n {
        return Some(format!(
            "lift used {} colours, allowed {}",
            lifted.colors,
            1u32 << n
        ));
    }
    // b(n)-colouring of G, pushed down to the arc digraph
    let b = central_binomial(n).unwrap() as u32;
    let base_col = match hom_exists(g, &clique(b), Budget::default()).0 {
        HomOutcome::Witness(w) => w.as_coloring(b),
        other => return Some(format!("no b(n)-colouring of the base graph: {other:?}")),
    };
    if let Err(e) = color_push(&base_col, g, n) {
        return Some(format!("push failed: {e} on\n{}", serialize_graph(g)));
    }
    None
}

fn suite_poljak_rodl() -> Vec<PropertyResult> {
    let cap = SizeCap::default();
    let budget = Budget::default();
    let mut results = Vec::new();
    let loopless5 = symmetric_graphs_up_to(5, false);

    results.push(prop(
        "chromatic identity, exhaustive to 5 vertices",
        loopless5.par_iter().find_map_first(poljak_rodl_identity),
    ));

    let randoms: Vec<Graph> = {
        let mut rng = SplitMix64::new(0x5eed_0002);
        (0..30)
            .map(|i| random_symmetric(&mut rng, 6 + (i % 2)))
            .collect()
    };
    results.push(prop(
        "chromatic identity, 30 random graphs on 6-7 vertices",
        randoms.par_iter().find_map_first(poljak_rodl_identity),
    ));

    results.push(prop(
        "colouring transfers round-trip, exhaustive to 5 vertices",
        loopless5.par_iter().find_map_first(transfer_round_trip),
    ));

    // the arc digraph of K_6 takes a proper 4-colouring from 2-subsets of [4]
    results.push(prop(
        "push 2-subset colours onto the arc digraph of K_6",
        (|| {
            let k6 = clique(6);
            let ident = Coloring {
                colors: 6,
                assignment: (0..6).collect(),
            };
            match color_push(&ident, &k6, 4) {
                Ok(c) => {
                    if c.colors != 4 {
                        return Some(format!("got {} colours", c.colors));
                    }
                    c.validate(&arc_digraph(&k6)).err().map(|e| e.to_string())
                }
                Err(e) => Some(e.to_string()),
            }
        })(),
    ));

    // delta(sym(K_b(n))) -> K_n and sub(delta_R(K_k)) -> K_b(k)
    results.push(prop(
        "arc digraph of K_b(n) colours with n colours",
        (2..=4u32).find_map(|n| {
            let b = central_binomial(n).unwrap() as u32;
            let d = arc_digraph(&sym(&clique(b)));
            match decide(&d, &clique(n)) {
                Ok(true) => None,
                Ok(false) => Some(format!("failed at n = {n}")),
                Err(e) => Some(e),
            }
        }),
    ));
    results.push(prop(
        "symmetric core of the right adjoint maps to K_b(k)",
        (2..=4u32).find_map(|k| {
            let b = central_binomial(k).unwrap() as u32;
            let (dr, _) = delta_right(&clique(k), &cap).unwrap();
            match decide(&sub(&dr), &clique(b)) {
                Ok(true) => None,
                Ok(false) => Some(format!("failed at k = {k}")),
                Err(e) => Some(e),
            }
        }),
    ));

    // instance-level contract of the arc reduction
    results.push(prop(
        "arc reduction contract on named instances",
        (|| {
            // K_3 with n = k = 3 (b(3) = 3): both directions
            let d3 = arc_digraph(&clique(3));
            match decide(&d3, &clique(3)) {
                Ok(true) => {}
                _ => return Some("arc digraph of K_3 should 3-colour".to_string()),
            }
            // K_6 with n = 4
            let d6 = arc_digraph(&clique(6));
            match decide(&d6, &clique(4)) {
                Ok(true) => {}
                _ => return Some("arc digraph of K_6 should 4-colour".to_string()),
            }
            // C_5 is 3-chromatic and b(3) = 3, so its arc digraph 3-colours
            let dc5 = arc_digraph(&cycle(5));
            match decide(&dc5, &clique(3)) {
                Ok(true) => None,
                _ => Some("arc digraph of C_5 should 3-colour".to_string()),
            }
        })(),
    ));

    // soundness sample: F -> G implies delta F -> delta G
    results.push(prop(
        "thin functoriality of the arc digraph, 20 sampled pairs",
        (|| {
            let mut rng = SplitMix64::new(0x5eed_0003);
            let mut hits = 0;
            while hits < 20 {
                let nf = 4 + rng.below(2) as u32;
                let f = random_symmetric(&mut rng, nf);
                let ng = 4 + rng.below(2) as u32;
                let g = random_symmetric(&mut rng, ng);
                match decide(&f, &g) {
                    Ok(true) => {
                        hits += 1;
                        match decide(&arc_digraph(&f), &arc_digraph(&g)) {
                            Ok(true) => {}
                            Ok(false) => return Some(show_pair(&f, &g)),
                            Err(e) => return Some(e),
                        }
                    }
                    Ok(false) => {}
                    Err(e) => return Some(e),
                }
            }
            None
        })(),
    ));

    // completeness sample: delta F -> K_3 implies F -> K_{b(3)} = K_3
    results.push(prop(
        "arc colourings pull back, 20 sampled graphs",
        (|| {
            let mut rng = SplitMix64::new(0x5eed_0004);
            for _ in 0..20 {
                let nf = 5 + rng.below(2) as u32;
                let f = random_symmetric(&mut rng, nf);
                match decide(&arc_digraph(&f), &clique(3)) {
                    Ok(true) => match decide(&f, &clique(3)) {
                        Ok(true) => {}
                        Ok(false) => return Some(serialize_graph(&f)),
                        Err(e) => return Some(e),
                    },
                    Ok(false) => {}
                    Err(e) => return Some(e),
                }
            }
            None
        })(),
    ));

    // the chain step behind the main clique reduction, assembled and run
    results.push(prop(
        "relax-then-arc pipeline assembles, runs, and replays",
        (|| {
            // k = 5, m = floor(log 5) = 2, b(m) = 2: relax (K6, K5) down to
            // (K6, K2), then arc-reduce to (K4, K2)
            let k6 = clique(6);
            let steps = vec![
                StepSpec {
                    op: StepOp::Relax,
                    from: Some((k6.clone(), clique(5))),
                    to: Some((k6.clone(), clique(2))),
                },
                StepSpec {
                    op: StepOp::Functor(FunctorId::Delta),
                    from: Some((k6.clone(), clique(2))),
                    to: Some((clique(4), clique(2))),
                },
            ];
            let pipeline = match compose(steps, budget, &cap) {
                Ok(p) => p,
                Err(e) => return Some(format!("assembly failed: {e}")),
            };
            let instance = cycle(5);
            let (out, trace) = match pipeline.run(&instance, &cap) {
                Ok(x) => x,
                Err(e) => return Some(format!("run failed: {e}")),
            };
            if !trace.chained() {
                return Some("trace hashes do not chain".to_string());
            }
            match replay(&trace, &instance, &cap) {
                Ok(replayed) if replayed == out => {}
                Ok(_) => return Some("replay diverged".to_string()),
                Err(e) => return Some(format!("replay failed: {e}")),
            }
            // pipeline soundness on the instance: C_5 -> K_6, so the
            // transformed instance maps to the transformed source template
            match decide(&out, &clique(4)) {
                Ok(true) => None,
                Ok(false) => Some("soundness broke: output misses K_4".to_string()),
                Err(e) => Some(e),
            }
        })(),
    ));

    // universal-vertex step on an instance
    results.push(prop(
        "universal-vertex reduction step",
        (|| {
            let steps = vec![StepSpec {
                op: StepOp::Functor(FunctorId::Universal),
                from: Some((clique(3), clique(3))),
                to: Some((clique(4), clique(4))),
            }];
            let pipeline = match compose(steps, budget, &cap) {
                Ok(p) => p,
                Err(e) => return Some(format!("assembly failed: {e}")),
            };
            let instance = cycle(5);
            let (out, _) = match pipeline.run(&instance, &cap) {
                Ok(x) => x,
                Err(e) => return Some(format!("run failed: {e}")),
            };
            // C_5 -> K_3 and the new instance -> K_4, but not K_3
            match (decide(&out, &clique(4)), decide(&out, &clique(3))) {
                (Ok(true), Ok(false)) => None,
                other => Some(format!("unexpected outcomes {other:?}")),
            }
        })(),
    ));

    // the round trip of the walk-power pair on concrete graphs
    results.push(prop(
        "walk-power equivalence on C_9 and C_5",
        (|| {
            // F -> Gamma_3 G implies Lambda_3 F -> G, at F = C_9, G = C_5
            let f = cycle(9);
            let g = cycle(5);
            let gamma_g = power_graph(&g, 3).unwrap();
            match decide(&f, &gamma_g) {
                Ok(true) => {}
                _ => return Some("C_9 should map to the cube of C_5 (= K_5)".to_string()),
            }
            let lam_f = subdivide(&f, 3).unwrap();
            match decide(&lam_f, &g) {
                Ok(true) => None,
                _ => Some("the subdivided C_9 (= C_27) should map to C_5".to_string()),
            }
        })(),
    ));

    results
}

// ---------------------------------------------------------------------------
// topology
// ---------------------------------------------------------------------------

fn suite_topology() -> Vec<PropertyResult> {
    let cap = SizeCap::default();
    let mut results = Vec::new();

    let table: Vec<(String, Graph, (u32, u32, i64))> = vec![
        ("K_2".into(), clique(2), (2, 0, 2)),
        ("K_3".into(), clique(3), (1, 1, 0)),
        ("K_4".into(), clique(4), (1, 0, 2)),
        ("K_5".into(), clique(5), (1, 0, 0)),
        ("C_5".into(), cycle(5), (1, 1, 0)),
        ("C_7".into(), cycle(7), (1, 1, 0)),
        ("C_9".into(), cycle(9), (1, 1, 0)),
        ("K_7/2".into(), circular_clique(7, 2).unwrap(), (1, 1, 0)),
    ];
    results.push(prop(
        "box complex homology table",
        table
            .par_iter()
            .find_map_first(|(name, g, (b0, b1, euler))| {
                let k = box_complex(g, &cap).unwrap();
                let s = homology(&k.complex, &cap).unwrap();
                if (s.betti0, s.betti1, s.euler) != (*b0, *b1, *euler) || !s.torsion1.is_empty() {
                    return Some(format!(
                        "{name}: got betti0={} betti1={} euler={} torsion={:?}",
                        s.betti0, s.betti1, s.euler, s.torsion1
                    ));
                }
                None
            }),
    ));

    results.push(prop(
        "box complex of the Petersen graph has torsion-free H1",
        (|| {
            let k = box_complex(&kneser(5, 2).unwrap(), &cap).unwrap();
            let s = homology(&k.complex, &cap).unwrap();
            (!s.torsion1.is_empty()).then(|| format!("torsion {:?}", s.torsion1))
        })(),
    ));

    results.push(prop(
        "quotient spaces of K_3 and K_4 box complexes",
        (|| {
            let q3 = quotient(&box_complex(&clique(3), &cap).unwrap(), &cap).unwrap();
            let s3 = homology(&q3, &cap).unwrap();
            if (s3.betti0, s3.betti1) != (1, 1) || !s3.torsion1.is_empty() {
                return Some(format!("K_3 quotient: {s3:?}"));
            }
            let q4 = quotient(&box_complex(&clique(4), &cap).unwrap(), &cap).unwrap();
            let s4 = homology(&q4, &cap).unwrap();
            if (s4.betti0, s4.betti1) != (1, 0) || s4.torsion1 != vec![2] {
                return Some(format!("K_4 quotient: {s4:?}"));
            }
            None
        })(),
    ));

    results.push(prop(
        "hom and box complexes share abelian invariants",
        table.par_iter().find_map_first(|(name, g, _)| {
            let b = homology(&box_complex(g, &cap).unwrap().complex, &cap).unwrap();
            let (h, _) = hom_complex(g, &cap).unwrap();
            let h = homology(&h.complex, &cap).unwrap();
            if (b.betti0, b.betti1, &b.torsion1) != (h.betti0, h.betti1, &h.torsion1) {
                return Some(format!("{name}: box {b:?} vs hom {h:?}"));
            }
            None
        }),
    ));

    results.push(prop(
        "freeness detection",
        (|| {
            if !box_complex(&clique(3), &cap).unwrap().is_free() {
                return Some("box complex of K_3 should be free".into());
            }
            let looped = Graph::new(1, vec![(0, 0)]).unwrap();
            if box_complex(&looped, &cap).unwrap().is_free() {
                return Some("box complex of a loop should not be free".into());
            }
            None
        })(),
    ));

    results.push(prop(
        "hom complex multiplies under the tensor product",
        (|| {
            let g = cycle(5);
            let h = clique(3);
            let (kg, ag) = hom_complex(&g, &cap).unwrap();
            let (kh, ah) = hom_complex(&h, &cap).unwrap();
            let (kp, ap) = hom_complex(&tensor_product(&g, &h), &cap).unwrap();
            if ap.len() != ag.len() * ah.len() {
                return Some("vertex counts do not multiply".into());
            }
            let expected = kg.complex.maximal_faces().len() * kh.complex.maximal_faces().len();
            let got = kp.complex.maximal_faces().len();
            (got != expected).then(|| format!("maximal faces: got {got}, expected {expected}"))
        })(),
    ));

    // induced simplicial maps of polymorphisms
    results.push(prop(
        "identity polymorphism induces the identity on the hom complex",
        (|| {
            let c5 = cycle(5);
            let f = Polymorphism {
                arity: 1,
                source_n: 5,
                table: (0..5).collect(),
            };
            let m = induced_hom_map(&f, &c5, &c5).unwrap();
            let id: Vec<u32> = (0..m.src_arcs.len() as u32).collect();
            (m.table != id).then(|| "table is not the identity".to_string())
        })(),
    ));

    results.push(prop(
        "induced maps are simplicial, equivariant, and minor-compatible",
        (|| {
            let c5 = cycle(5);
            let k3 = clique(3);
            let p2 = power(&c5, 2, &cap).unwrap();
            let samples = sample_homs(&p2, &k3, Budget::default(), 20, 11);
            if samples.is_empty() {
                return Some("no sampled polymorphisms".into());
            }
            let diag = MinorMap::new(1, vec![0, 0]).unwrap();
            for w in &samples {
                let f = Polymorphism::from_vertex_map(w, 5, 2);
                let m = match induced_hom_map(&f, &c5, &k3) {
                    Ok(m) => m,
                    Err(e) => return Some(format!("induced map rejected: {e}")),
                };
                match m.is_simplicial(&c5, &k3, &cap) {
                    Ok(true) => {}
                    Ok(false) => return Some("image of a face is not a face".into()),
                    Err(e) => return Some(e.to_string()),
                }
                if !m.is_equivariant() {
                    return Some("induced map is not equivariant".into());
                }
                // diagonal minor: induced map of the minor equals the
                // diagonal restriction of the induced map
                let fm = minor(&f, &diag).unwrap();
                let mm = induced_hom_map(&fm, &c5, &k3).unwrap();
                for a in 0..m.src_arcs.len() as u32 {
                    if mm.eval(&[a]) != m.eval(&[a, a]) {
                        return Some("diagonal restriction mismatch".into());
                    }
                }
            }
            None
        })(),
    ));

    results
}

// ---------------------------------------------------------------------------
// winding
// ---------------------------------------------------------------------------

/// Full enumeration when at most 10^4 polymorphisms exist, otherwise 200
/// seeded samples.
fn winding_population(n: u32, p: u32, q: u32, l: u32, want: usize) -> Vec<Polymorphism> {
    let cap = SizeCap::default();
    let g = cycle(n);
    let h = circular_clique(p, q).unwrap();
    let mut pols: Vec<Polymorphism> = Vec::new();
    let (outcome, _) = enumerate_polymorphisms(&g, &h, l, &cap, Budget::default(), |f| {
        pols.push(f.clone());
        pols.len() <= 10_000
    })
    .expect("power graph under cap");
    match outcome {
        EnumOutcome::Complete(_) => pols,
        _ => {
            let pg = power(&g, l, &cap).unwrap();
            sample_homs(&pg, &h, Budget::default(), want, 0x5eed_0005)
                .iter()
                .map(|w| Polymorphism::from_vertex_map(w, n, l))
                .collect()
        }
    }
}

fn profile_violation(n: u32, p: u32, q: u32, f: &Polymorphism) -> Option<String> {
    let label = format!("n={n}, target {p}/{q}, arity {}", f.arity);
    let profile = match winding_profile(f, n, p, q) {
        Ok(pr) => pr,
        Err(e) => return Some(format!("{label}: {e}; table {:?}", f.table)),
    };
    // bounded essential arity: fewer than |H|^n of the a_l are non-zero
    let nonzero = profile.a.iter().filter(|&&x| x != 0).count() as u128;
    let bound = (p as u128).saturating_pow(n);
    if nonzero >= bound {
        return Some(format!(
            "{label}: {nonzero} non-zero entries out of bound {bound}"
        ));
    }
    // mirror on every coordinate negates the profile
    let mu = mirror_map(n);
    let mirrored = f.precompose(&vec![mu; f.arity as usize]);
    match winding_profile(&mirrored, n, p, q) {
        Ok(neg) => {
            let expect: Vec<i64> = profile.a.iter().map(|x| -x).collect();
            if neg.a != expect || neg.d != -profile.d {
                return Some(format!(
                    "{label}: mirror gave {:?};{} expected {:?};{}",
                    neg.a, neg.d, expect, -profile.d
                ));
            }
        }
        Err(e) => return Some(format!("{label}: mirrored profile failed: {e}")),
    }
    // merging both coordinates adds the entries
    if f.arity == 2 {
        let diag = MinorMap::new(1, vec![0, 0]).unwrap();
        let merged = minor(f, &diag).unwrap();
        match winding_profile(&merged, n, p, q) {
            Ok(mp) => {
                if mp.a != vec![profile.a[0] + profile.a[1]] || mp.d != profile.d {
                    return Some(format!(
                        "{label}: diagonal minor gave {:?};{} expected [{}];{}",
                        mp.a,
                        mp.d,
                        profile.a[0] + profile.a[1],
                        profile.d
                    ));
                }
            }
            Err(e) => return Some(format!("{label}: merged profile failed: {e}")),
        }
    }
    None
}

fn suite_winding() -> Vec<PropertyResult> {
    let mut results = Vec::new();
    for n in [5u32, 7] {
        for (p, q) in [(3u32, 1u32), (5, 2)] {
            for l in [1u32, 2] {
                let pols = winding_population(n, p, q, l, 200);
                let name = format!("winding profile laws: C_{n} into K_{p}/{q}, arity {l}");
                if pols.is_empty() {
                    results.push(prop(&name, Some("empty polymorphism population".into())));
                    continue;
                }
                let failure = pols
                    .par_iter()
                    .find_map_first(|f| profile_violation(n, p, q, f));
                results.push(prop(&format!("{name} ({} maps)", pols.len()), failure));
            }
        }
        // the 7/2 target from the parity invariant, arity 1 full + sampled pairs
        let pols = winding_population(n, 7, 2, 1, 200);
        let failure = pols
            .par_iter()
            .find_map_first(|f| profile_violation(n, 7, 2, f));
        results.push(prop(
            &format!(
                "winding profile laws: C_{n} into K_7/2, arity 1 ({} maps)",
                pols.len()
            ),
            failure,
        ));
        let pols = winding_population(n, 7, 2, 2, 50);
        let failure = pols
            .par_iter()
            .find_map_first(|f| profile_violation(n, 7, 2, f));
        results.push(prop(
            &format!(
                "winding profile laws: C_{n} into K_7/2, arity 2 ({} maps)",
                pols.len()
            ),
            failure,
        ));
    }
    results
}

// ---------------------------------------------------------------------------
// minion
// ---------------------------------------------------------------------------

fn essential_oracle(f: &Polymorphism) -> Vec<u32> {
    let l = f.arity as usize;
    let total = f.table.len();
    let digits: Vec<Vec<u32>> = (0..total)
        .map(|t| tuple_decode(t, f.source_n, f.arity))
        .collect();
    let mut essential = BTreeSet::new();
    for s in 0..total {
        for t in 0..total {
            if f.table[s] == f.table[t] {
                continue;
            }
            let diff: Vec<usize> = (0..l).filter(|&i| digits[s][i] != digits[t][i]).collect();
            if diff.len() == 1 {
                essential.insert(diff[0] as u32);
            }
        }
    }
    essential.into_iter().collect()
}

fn all_minor_maps(m: u32, n: u32) -> Vec<MinorMap> {
    // every function [m] -> [n]
    let total = (n as usize).pow(m);
    (0..total)
        .map(|t| {
            let map = tuple_decode(t, n, m);
            MinorMap::new(n, map).unwrap()
        })
        .collect()
}

fn minion_closure(g: &Graph, h: &Graph, label: &str) -> Vec<PropertyResult> {
    let cap = SizeCap::default();
    let budget = Budget::default();
    let mut results = Vec::new();
    let mut by_arity: BTreeMap<u32, Vec<Polymorphism>> = BTreeMap::new();
    for arity in [1u32, 2] {
        by_arity.insert(
            arity,
            all_polymorphisms(g, h, arity, &cap, budget).expect("enumeration under cap"),
        );
    }
    let tables: BTreeMap<u32, BTreeSet<Vec<u32>>> = by_arity
        .iter()
        .map(|(&a, pols)| (a, pols.iter().map(|f| f.table.clone()).collect()))
        .collect();

    let failure = by_arity
        .iter()
        .flat_map(|(&m, pols)| pols.iter().map(move |f| (m, f)))
        .collect::<Vec<_>>()
        .par_iter()
        .find_map_first(|&(m, f)| {
            for n in 1..=2u32 {
                for pi in all_minor_maps(m, n) {
                    let fm = minor(f, &pi).unwrap();
                    if !tables[&n].contains(&fm.table) {
                        return Some(format!(
                            "{label}: minor of {:?} under {:?} escapes the set",
                            f.table, pi.map
                        ));
                    }
                }
            }
            None
        });
    results.push(prop(
        &format!("{label}: closed under minors at arity <= 2"),
        failure,
    ));

    let failure = by_arity
        .values()
        .flatten()
        .collect::<Vec<_>>()
        .par_iter()
        .find_map_first(|f| {
            let fast = essential_coordinates(f);
            let slow = essential_oracle(f);
            (fast != slow).then(|| {
                format!(
                    "{label}: essential {fast:?} vs oracle {slow:?} on {:?}",
                    f.table
                )
            })
        });
    results.push(prop(
        &format!("{label}: essential coordinates match the oracle"),
        failure,
    ));

    let id: Vec<u32> = (0..g.n()).collect();
    if g == h {
        results.push(prop(
            &format!("{label}: identity is a unary polymorphism"),
            (!tables[&1].contains(&id)).then(|| "identity missing".to_string()),
        ));
    }
    results
}

fn suite_minion() -> Vec<PropertyResult> {
    let mut results = Vec::new();
    let k2 = clique(2);
    results.push(prop(
        "Pol(K_2, K_2) at arity 2 has exactly 4 elements",
        (|| {
            let pols =
                all_polymorphisms(&k2, &k2, 2, &SizeCap::default(), Budget::default()).unwrap();
            (pols.len() != 4).then(|| format!("got {}", pols.len()))
        })(),
    ));
    results.extend(minion_closure(&k2, &k2, "Pol(K_2, K_2)"));
    results.extend(minion_closure(&cycle(5), &clique(3), "Pol(C_5, K_3)"));
    results.push(prop(
        "identity among unary self-polymorphisms of C_5",
        (|| {
            let pols = all_polymorphisms(
                &cycle(5),
                &cycle(5),
                1,
                &SizeCap::default(),
                Budget::default(),
            )
            .unwrap();
            let id: Vec<u32> = (0..5).collect();
            (!pols.iter().any(|f| f.table == id)).then(|| "identity missing".to_string())
        })(),
    ));
    results
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use homkit_core::hom::{all_homs, enumerate_homs};

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope").is_err());
    }

    #[test]
    fn minion_suite_smoke() {
        // the full C_5/K_3 closure runs in the acceptance tests; here just
        // make sure the K_2 half stands on its own
        let results = minion_closure(&clique(2), &clique(2), "Pol(K_2, K_2)");
        assert!(results.iter().all(|r| r.pass), "{results:?}");
    }

    #[test]
    fn winding_population_full_versus_sampled() {
        // arity 1 into K_3 from C_5: exactly the 30 homs, enumerated fully
        let pols = winding_population(5, 3, 1, 1, 200);
        assert_eq!(pols.len(), 30);
        // arity 2 from C_7 overflows 10^4 and falls back to sampling
        let pols = winding_population(7, 3, 1, 2, 25);
        assert_eq!(pols.len(), 25);
    }

    #[test]
    fn essential_oracle_agrees_on_projections() {
        let f = Polymorphism {
            arity: 2,
            source_n: 3,
            table: (0..9).map(|t| tuple_decode(t, 3, 2)[1]).collect(),
        };
        assert_eq!(essential_oracle(&f), vec![1]);
        assert_eq!(essential_coordinates(&f), vec![1]);
    }

    #[test]
    fn enumerate_homs_completes_on_cycle() {
        let (outcome, _) = enumerate_homs(&cycle(5), &clique(3), Budget::default(), |_| true);
        assert_eq!(outcome, EnumOutcome::Complete(30));
        assert_eq!(all_homs(&cycle(5), &clique(3), Budget::default()).len(), 30);
    }
}
