//! JSON certificates, traces, and run reports.
//!
//! Every machine-readable payload is versioned under `schema_version`, and
//! serialisation is deterministic (struct field order, `BTreeMap` keys), so
//! identical invocations produce byte-identical result payloads.

use std::collections::BTreeMap;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use homkit_core::functors::FunctorId;
use homkit_core::graph::SizeCap;
use homkit_core::reduce::{ReductionTrace, StepOp, TraceStep};
use homkit_core::{Coloring, Graph, Polymorphism, VertexMap};

use crate::fmt::{parse_graph, serialize_graph};

pub const SCHEMA_VERSION: u32 = 1;

pub fn hash_hex(g: &Graph) -> String {
    format!("{:016x}", g.fingerprint())
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphRef {
    pub n: u32,
    pub hash: String,
}

impl GraphRef {
    pub fn of(g: &Graph) -> GraphRef {
        GraphRef {
            n: g.n(),
            hash: hash_hex(g),
        }
    }

    pub fn matches(&self, g: &Graph) -> bool {
        self.n == g.n() && self.hash == hash_hex(g)
    }
}

/// A certificate, as written by `hom`, `chi` and `wind`-adjacent commands
/// and re-checked by `verify`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    Hom {
        schema_version: u32,
        source: GraphRef,
        target: GraphRef,
        map: Vec<u32>,
    },
    Coloring {
        schema_version: u32,
        graph: GraphRef,
        colors: u32,
        assignment: Vec<u32>,
    },
    Pol {
        schema_version: u32,
        /// Family string of the source graph, e.g. `cycle:5`.
        source: String,
        /// Family string of the target graph, e.g. `circular:5/2`.
        target: String,
        arity: u32,
        table: Vec<u32>,
    },
}

impl Certificate {
    pub fn hom(g: &Graph, h: &Graph, w: &VertexMap) -> Certificate {
        Certificate::Hom {
            schema_version: SCHEMA_VERSION,
            source: GraphRef::of(g),
            target: GraphRef::of(h),
            map: w.image.clone(),
        }
    }

    pub fn coloring(g: &Graph, c: &Coloring) -> Certificate {
        Certificate::Coloring {
            schema_version: SCHEMA_VERSION,
            graph: GraphRef::of(g),
            colors: c.colors,
            assignment: c.assignment.clone(),
        }
    }

    pub fn pol(source: &str, target: &str, f: &Polymorphism) -> Certificate {
        Certificate::Pol {
            schema_version: SCHEMA_VERSION,
            source: source.to_string(),
            target: target.to_string(),
            arity: f.arity,
            table: f.table.clone(),
        }
    }
}

/// Parses a family string as accepted by `gen`: `clique:4`, `cycle:7`,
/// `circular:7/2`, `kneser:5,2`, `path:3`.
pub fn parse_family(text: &str) -> anyhow::Result<homkit_core::GraphFamilySpec> {
    use homkit_core::GraphFamilySpec as F;
    let (head, rest) = text
        .split_once(':')
        .with_context(|| format!("family spec `{text}` needs a parameter after `:`"))?;
    let one = |s: &str| -> anyhow::Result<u32> {
        s.parse()
            .with_context(|| format!("bad number `{s}` in `{text}`"))
    };
    Ok(match head {
        "clique" => F::Clique { n: one(rest)? },
        "cycle" => F::Cycle { n: one(rest)? },
        "path" => F::Path { n: one(rest)? },
        "circular" => {
            let (p, q) = rest
                .split_once('/')
                .with_context(|| format!("circular spec `{text}` needs p/q"))?;
            F::CircularClique {
                p: one(p)?,
                q: one(q)?,
            }
        }
        "kneser" => {
            let (n, k) = rest
                .split_once(',')
                .with_context(|| format!("kneser spec `{text}` needs n,k"))?;
            F::Kneser {
                n: one(n)?,
                k: one(k)?,
            }
        }
        other => bail!("unknown family `{other}`"),
    })
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceStepFile {
    pub op: String,
    /// Inline canonical text of the product partner, when the step is a
    /// tensor product; absent otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub with: Option<String>,
    pub input_hash: String,
    pub output_hash: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceFile {
    pub schema_version: u32,
    pub pipeline: String,
    pub steps: Vec<TraceStepFile>,
}

impl TraceFile {
    pub fn from_trace(pipeline: &str, trace: &ReductionTrace) -> TraceFile {
        TraceFile {
            schema_version: SCHEMA_VERSION,
            pipeline: pipeline.to_string(),
            steps: trace
                .steps
                .iter()
                .map(|s| TraceStepFile {
                    op: s.op.name(),
                    with: match &s.op {
                        StepOp::ProductWith(g) => Some(serialize_graph(g)),
                        _ => None,
                    },
                    input_hash: format!("{:016x}", s.input_hash),
                    output_hash: format!("{:016x}", s.output_hash),
                })
                .collect(),
        }
    }

    pub fn to_trace(&self) -> anyhow::Result<ReductionTrace> {
        let mut steps = Vec::new();
        for s in &self.steps {
            let op = match s.op.as_str() {
                "relax" => StepOp::Relax,
                name if name.starts_with("product") => {
                    let text = s
                        .with
                        .as_ref()
                        .context("product step without its partner graph")?;
                    StepOp::ProductWith(parse_graph(text)?)
                }
                name => StepOp::Functor(
                    FunctorId::parse(name).map_err(|e| anyhow::anyhow!(e.to_string()))?,
                ),
            };
            let input_hash =
                u64::from_str_radix(&s.input_hash, 16).context("malformed input hash")?;
            let output_hash =
                u64::from_str_radix(&s.output_hash, 16).context("malformed output hash")?;
            steps.push(TraceStep {
                op,
                input_hash,
                output_hash,
            });
        }
        Ok(ReductionTrace { steps })
    }
}

/// Re-runs a trace file against an instance; errors if any hash drifts.
pub fn replay_trace_file(
    file: &TraceFile,
    instance: &Graph,
    cap: &SizeCap,
) -> anyhow::Result<Graph> {
    let trace = file.to_trace()?;
    homkit_core::reduce::replay(&trace, instance, cap).map_err(|e| anyhow::anyhow!(e.to_string()))
}

// ---------------------------------------------------------------------------
// Run reports
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct BudgetInfo {
    pub limit: u64,
    pub used: u64,
}

/// The envelope every command prints on stdout. `result` is the payload
/// that must be byte-identical across identical invocations; timing lives
/// outside of it.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: serde_json::Value,
    pub budget: BudgetInfo,
    pub wall_time_ms: u128,
}
