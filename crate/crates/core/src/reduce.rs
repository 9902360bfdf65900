//! Instance-level reductions between promise colouring problems.
//!
//! A thin adjoint pair turns into a reduction by applying the left functor
//! to the instance; homomorphic relaxation steps leave the instance alone.
//! Pipelines chain such steps, verify that declared template pairs fit,
//! and emit a replayable trace whose hashes pin the intermediate graphs.
//!
//! The colouring transfers realise the two constructive directions of the
//! arc-digraph correspondence: an n-colouring of the arc digraph lifts to a
//! subset-colouring of the base graph, and a `b(n)`-colouring of the base
//! graph pushes down to an n-colouring of the arc digraph.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::functors::{apply_functor, arc_digraph, FunctorId};
use crate::graph::{colex_unrank, tensor_product, Graph, SizeCap};
use crate::hom::{hom_exists, Budget, Coloring, HomOutcome, VertexMap};

/// A promise template: a pair of graphs with a homomorphism between them.
/// Pairs admitting no homomorphism are rejected outright.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcspTemplate {
    pub source: Graph,
    pub target: Graph,
    pub witness: VertexMap,
}

impl PcspTemplate {
    pub fn new(source: Graph, target: Graph, budget: Budget) -> Result<PcspTemplate> {
        match hom_exists(&source, &target, budget).0 {
            HomOutcome::Witness(witness) => Ok(PcspTemplate {
                source,
                target,
                witness,
            }),
            HomOutcome::NoHom => Err(Error::TemplateMismatch(String::from(
                "template source does not map to its target",
            ))),
            HomOutcome::Unknown => Err(Error::TemplateMismatch(String::from(
                "budget too small to certify the template witness",
            ))),
        }
    }
}

/// What a pipeline step does to the instance graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOp {
    Functor(FunctorId),
    ProductWith(Graph),
    Relax,
}

impl StepOp {
    pub fn name(&self) -> String {
        match self {
            StepOp::Functor(id) => id.name(),
            StepOp::ProductWith(g) => format!("product:{}", g.n()),
            StepOp::Relax => String::from("relax"),
        }
    }

    pub fn apply(&self, g: &Graph, cap: &SizeCap) -> Result<Graph> {
        match self {
            StepOp::Functor(id) => apply_functor(*id, g, cap),
            StepOp::ProductWith(f) => {
                cap.vertices(g.n() as u128 * f.n() as u128, "tensor product")?;
                Ok(tensor_product(f, g))
            }
            StepOp::Relax => Ok(g.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub op: StepOp,
    pub input_hash: u64,
    pub output_hash: u64,
}

/// The executed history of a pipeline run; consecutive hashes chain.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn chained(&self) -> bool {
        self.steps
            .windows(2)
            .all(|w| w[0].output_hash == w[1].input_hash)
    }
}

/// Re-runs a trace on an instance and checks every recorded hash on the
/// way; the result is bit-identical to the original run or an error.
pub fn replay(trace: &ReductionTrace, instance: &Graph, cap: &SizeCap) -> Result<Graph> {
    let mut g = instance.clone();
    for step in &trace.steps {
        if g.fingerprint() != step.input_hash {
            return Err(Error::TemplateMismatch(format!(
                "replay input hash mismatch at step {}",
                step.op.name()
            )));
        }
        g = step.op.apply(&g, cap)?;
        if g.fingerprint() != step.output_hash {
            return Err(Error::TemplateMismatch(format!(
                "replay output hash mismatch at step {}",
                step.op.name()
            )));
        }
    }
    Ok(g)
}

/// One declared pipeline step: the instance map plus optional template
/// annotations checked at assembly time.
#[derive(Clone, Debug)]
pub struct StepSpec {
    pub op: StepOp,
    pub from: Option<(Graph, Graph)>,
    pub to: Option<(Graph, Graph)>,
}

impl StepSpec {
    pub fn bare(op: StepOp) -> StepSpec {
        StepSpec {
            op,
            from: None,
            to: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Pipeline {
    pub steps: Vec<StepSpec>,
}

/// Assembles a pipeline, rejecting steps whose declared templates do not
/// chain. Relaxation steps must really be relaxations (source maps forward,
/// target maps backward); functor steps must carry the declared source
/// template onto something mapping into the next source.
pub fn compose(steps: Vec<StepSpec>, budget: Budget, cap: &SizeCap) -> Result<Pipeline> {
    for w in steps.windows(2) {
        if let (Some(to), Some(from)) = (&w[0].to, &w[1].from) {
            if to != from {
                return Err(Error::TemplateMismatch(String::from(
                    "declared output template differs from the next input template",
                )));
            }
        }
    }
    let decided = |g: &Graph, h: &Graph, what: &str| -> Result<bool> {
        match hom_exists(g, h, budget).0 {
            HomOutcome::Witness(_) => Ok(true),
            HomOutcome::NoHom => Ok(false),
            HomOutcome::Unknown => Err(Error::TemplateMismatch(format!(
                "budget too small to verify {what}"
            ))),
        }
    };
    for step in &steps {
        match (&step.op, &step.from, &step.to) {
            (StepOp::Relax, Some((g, h)), Some((g2, h2))) => {
                if !decided(g, g2, "relaxation source")? {
                    return Err(Error::TemplateMismatch(String::from(
                        "relaxation source does not map forward",
                    )));
                }
                if !decided(h2, h, "relaxation target")? {
                    return Err(Error::TemplateMismatch(String::from(
                        "relaxation target does not map backward",
                    )));
                }
            }
            (StepOp::Relax, _, _) => {
                return Err(Error::TemplateMismatch(String::from(
                    "relaxation steps need both templates declared",
                )));
            }
            (op, Some((g, _)), Some((g2, _))) => {
                let image = op.apply(g, cap)?;
                if !decided(&image, g2, "step soundness")? {
                    return Err(Error::TemplateMismatch(String::from(
                        "transformed source template does not map to the declared one",
                    )));
                }
            }
            _ => {}
        }
    }
    Ok(Pipeline { steps })
}

impl Pipeline {
    /// Runs the pipeline on an instance, emitting the full trace.
    pub fn run(&self, instance: &Graph, cap: &SizeCap) -> Result<(Graph, ReductionTrace)> {
        let mut g = instance.clone();
        let mut trace = ReductionTrace::default();
        for step in &self.steps {
            let input_hash = g.fingerprint();
            let next = step.op.apply(&g, cap)?;
            trace.steps.push(TraceStep {
                op: step.op.clone(),
                input_hash,
                output_hash: next.fingerprint(),
            });
            g = next;
        }
        Ok((g, trace))
    }
}

/// Adjoint-functor reduction on one instance: applies the left functor and
/// returns the transformed instance with its trace.
pub fn reduce_adjoint(
    op: &StepOp,
    instance: &Graph,
    cap: &SizeCap,
) -> Result<(Graph, ReductionTrace)> {
    Pipeline {
        steps: alloc::vec![StepSpec::bare(op.clone())],
    }
    .run(instance, cap)
}

/// The arc-digraph reduction between clique templates: the instance is
/// simply replaced by its arc digraph.
pub fn reduce_arc(instance: &Graph) -> (Graph, ReductionTrace) {
    let cap = SizeCap::default();
    reduce_adjoint(&StepOp::Functor(FunctorId::Delta), instance, &cap)
        .expect("arc digraph construction cannot exceed the cap")
}

// ---------------------------------------------------------------------------
// Constructive colouring transfers
// ---------------------------------------------------------------------------

/// Lifts a proper n-colouring of the arc digraph of `G` to a proper
/// colouring of `G` with at most `2^n` colours: each vertex receives the
/// set of colours of its incoming arcs, encoded as an n-bit integer.
pub fn color_lift(delta_coloring: &Coloring, g: &Graph) -> Result<Coloring> {
    let delta = arc_digraph(g);
    delta_coloring.validate(&delta)?;
    let n = delta_coloring.colors;
    if n > 31 {
        return Err(Error::Overflow("subset colours"));
    }
    let mut masks = alloc::vec![0u32; g.n() as usize];
    for (i, &(_, v)) in g.arcs().iter().enumerate() {
        masks[v as usize] |= 1 << delta_coloring.assignment[i];
    }
    let lifted = Coloring {
        colors: 1u32 << n,
        assignment: masks,
    };
    lifted.validate(g)?;
    Ok(lifted)
}

/// Pushes a proper `b(n)`-colouring of `G` down to a proper n-colouring of
/// the arc digraph: colours decode to `floor(n/2)`-subsets of `[n]` by
/// colexicographic rank, and the arc `(u, v)` takes the minimum element of
/// `set(u) - set(v)`.
pub fn color_push(coloring: &Coloring, g: &Graph, n: u32) -> Result<Coloring> {
    coloring.validate(g)?;
    if n == 0 || n > 63 {
        return Err(Error::InvalidParameter(format!(
            "push level n={n} out of range"
        )));
    }
    let b = crate::functors::central_binomial(n)?;
    if (coloring.colors as u128) > b {
        return Err(Error::InvalidParameter(format!(
            "{} colours do not decode into {}-subsets of [{}]",
            coloring.colors,
            n / 2,
            n
        )));
    }
    let masks: Vec<u64> = (0..coloring.colors)
        .map(|r| {
            colex_unrank(r as u128, n / 2, n)
                .iter()
                .fold(0u64, |m, &e| m | 1u64 << e)
        })
        .collect();
    let mut assignment = Vec::with_capacity(g.arc_count());
    for &(u, v) in g.arcs() {
        let su = masks[coloring.assignment[u as usize] as usize];
        let sv = masks[coloring.assignment[v as usize] as usize];
        let diff = su & !sv;
        if diff == 0 {
            return Err(Error::ImproperColoring { u, v });
        }
        assignment.push(diff.trailing_zeros());
    }
    let pushed = Coloring {
        colors: n,
        assignment,
    };
    pushed.validate(&arc_digraph(g))?;
    Ok(pushed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::central_binomial;
    use crate::graph::{add_universal_vertex, clique, cycle};
    use crate::hom::chromatic_number;
    use crate::hom::ChiOutcome;

    fn identity_coloring(n: u32) -> Coloring {
        Coloring {
            colors: n,
            assignment: (0..n).collect(),
        }
    }

    #[test]
    fn template_requires_witness() {
        assert!(PcspTemplate::new(cycle(5), clique(3), Budget::default()).is_ok());
        assert!(PcspTemplate::new(clique(4), cycle(5), Budget::default()).is_err());
    }

    #[test]
    fn push_k3_to_arc_digraph() {
        let g = clique(3);
        let pushed = color_push(&identity_coloring(3), &g, 3).unwrap();
        assert_eq!(pushed.colors, 3);
        pushed.validate(&arc_digraph(&g)).unwrap();
    }

    #[test]
    fn push_k6_gives_4_coloring_of_arc_digraph() {
        let g = clique(6);
        assert_eq!(central_binomial(4).unwrap(), 6);
        let pushed = color_push(&identity_coloring(6), &g, 4).unwrap();
        assert_eq!(pushed.colors, 4);
        pushed.validate(&arc_digraph(&g)).unwrap();
    }

    #[test]
    fn push_any_k2_coloring() {
        let g = clique(2);
        let pushed = color_push(&identity_coloring(2), &g, 2).unwrap();
        pushed.validate(&arc_digraph(&g)).unwrap();
    }

    #[test]
    fn lift_from_arc_digraph_of_k2() {
        let g = clique(2);
        // the two arcs of K_2 form a 2-cycle in the arc digraph
        let delta_col = Coloring {
            colors: 2,
            assignment: alloc::vec![0, 1],
        };
        let lifted = color_lift(&delta_col, &g).unwrap();
        assert_ne!(lifted.assignment[0], lifted.assignment[1]);
        lifted.validate(&g).unwrap();
    }

    #[test]
    fn push_then_lift_round_trip_on_k3() {
        let g = clique(3);
        let pushed = color_push(&identity_coloring(3), &g, 3).unwrap();
        let lifted = color_lift(&pushed, &g).unwrap();
        assert!(lifted.colors <= 1 << 3);
        lifted.validate(&g).unwrap();
    }

    #[test]
    fn lift_three_coloring_of_double_arc_digraph() {
        // the double arc digraph of K_4 is 3-colourable; lifting that
        // colouring gives the arc digraph of K_4 at most 8 colours
        let dk4 = arc_digraph(&clique(4));
        let ddk4 = arc_digraph(&dk4);
        let col = match crate::hom::hom_exists(&ddk4, &clique(3), Budget::default()).0 {
            crate::hom::HomOutcome::Witness(w) => w.as_coloring(3),
            other => panic!("double arc digraph of K_4 should 3-colour, got {other:?}"),
        };
        let lifted = color_lift(&col, &dk4).unwrap();
        assert!(lifted.colors <= 8);
        lifted.validate(&dk4).unwrap();
    }

    #[test]
    fn lift_rejects_improper_input() {
        let g = clique(2);
        let bad = Coloring {
            colors: 2,
            assignment: alloc::vec![0, 0],
        };
        assert!(matches!(
            color_lift(&bad, &g),
            Err(Error::ImproperColoring { .. })
        ));
    }

    #[test]
    fn identity_pipeline_and_replay() {
        let cap = SizeCap::default();
        let pipeline = Pipeline {
            steps: alloc::vec![],
        };
        let g = cycle(7);
        let (out, trace) = pipeline.run(&g, &cap).unwrap();
        assert_eq!(out, g);
        assert!(trace.steps.is_empty());
        assert_eq!(replay(&trace, &g, &cap).unwrap(), g);
    }

    #[test]
    fn product_step_reduces_and_replays() {
        let cap = SizeCap::default();
        let k2 = clique(2);
        let op = StepOp::ProductWith(k2.clone());
        let g = cycle(5);
        let (out, trace) = reduce_adjoint(&op, &g, &cap).unwrap();
        assert_eq!(out, crate::graph::tensor_product(&k2, &g));
        assert_eq!(replay(&trace, &g, &cap).unwrap(), out);
    }

    #[test]
    fn arc_reduction_traces_and_replays() {
        let cap = SizeCap::default();
        let g = cycle(5);
        let (out, trace) = reduce_arc(&g);
        assert_eq!(out, arc_digraph(&g));
        assert!(trace.chained());
        assert_eq!(replay(&trace, &g, &cap).unwrap(), out);
        // a tampered instance is rejected
        assert!(replay(&trace, &cycle(7), &cap).is_err());
    }

    #[test]
    fn universal_vertex_step_respects_templates() {
        let cap = SizeCap::default();
        let budget = Budget::default();
        let step = StepSpec {
            op: StepOp::Functor(FunctorId::Universal),
            from: Some((clique(3), clique(4))),
            to: Some((clique(4), clique(5))),
        };
        let pipeline = compose(alloc::vec![step], budget, &cap).unwrap();
        let g = cycle(5);
        let (out, _) = pipeline.run(&g, &cap).unwrap();
        assert_eq!(out, add_universal_vertex(&g));
        // chi goes up by exactly one on the instance
        let (before, _) = chromatic_number(&g, budget);
        let (after, _) = chromatic_number(&out, budget);
        assert_eq!(before, ChiOutcome::Exact(3));
        assert_eq!(after, ChiOutcome::Exact(4));
    }

    #[test]
    fn compose_rejects_mismatched_chain() {
        let cap = SizeCap::default();
        let s1 = StepSpec {
            op: StepOp::Relax,
            from: Some((clique(3), clique(5))),
            to: Some((clique(3), clique(4))),
        };
        let s2 = StepSpec {
            op: StepOp::Relax,
            from: Some((clique(3), clique(5))),
            to: Some((clique(3), clique(5))),
        };
        assert!(matches!(
            compose(alloc::vec![s1, s2], Budget::default(), &cap),
            Err(Error::TemplateMismatch(_))
        ));
    }

    #[test]
    fn compose_rejects_illegal_relaxation() {
        let cap = SizeCap::default();
        // claiming PCSP(K3,K3) relaxes to PCSP(K3,K4) is backwards
        let bad = StepSpec {
            op: StepOp::Relax,
            from: Some((clique(3), clique(4))),
            to: Some((clique(3), clique(5))),
        };
        assert!(compose(alloc::vec![bad.clone()], Budget::default(), &cap).is_err());
        let good = StepSpec {
            op: StepOp::Relax,
            from: Some((clique(3), clique(5))),
            to: Some((clique(3), clique(4))),
        };
        assert!(compose(alloc::vec![good], Budget::default(), &cap).is_ok());
        let _ = bad;
    }
}
