//! `homkit` — generate graphs, apply functors, decide homomorphisms, run
//! reductions, compute box-complex invariants and winding profiles, and run
//! the property suites.
//!
//! Exit codes: 0 for a definitive answer, 1 for usage or input errors (and
//! failing checks), 2 for a budget-limited "unknown".

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use homkit_cli::cert::{
    hash_hex, parse_family, replay_trace_file, BudgetInfo, Certificate, RunReport, TraceFile,
    SCHEMA_VERSION,
};
use homkit_cli::checks::{run_suite, SUITES};
use homkit_cli::fmt::{parse_graph, serialize_with_comments};
use homkit_core::functors::FunctorId;
use homkit_core::graph::SizeCap;
use homkit_core::hom::{chromatic_number, hom_exists, ChiOutcome, HomOutcome, VertexMap};
use homkit_core::poly::Polymorphism;
use homkit_core::reduce::{Pipeline, StepOp, StepSpec};
use homkit_core::topo::wind::winding_profile;
use homkit_core::topo::{box_complex, hom_complex, homology, quotient, Z2Complex};
use homkit_core::{Budget, Coloring, Graph};

const BUDGET_ENV: &str = "HOMKIT_BUDGET";

#[derive(Parser)]
#[command(
    name = "homkit",
    version,
    about = "graph homomorphisms, adjoint functors, box complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Search-node budget (default from HOMKIT_BUDGET or 10^7).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Vertex cap for enumerative constructions (default 2*10^6).
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Worker threads for suites; output order does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Emit the JSON run report even for graph-producing commands.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a named family: clique:4, cycle:7, circular:7/2, kneser:5,2, path:3.
    Gen {
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a homomorphism exists, with an optional certificate.
    Hom {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        /// Write the witness certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Re-validate the written certificate from disk.
        #[arg(long)]
        verify: bool,
    },
    /// Exact chromatic number (bounds under budget exhaustion).
    Chi {
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the colouring certificate here (exact outcomes only).
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Re-validate the written certificate from disk.
        #[arg(long)]
        verify: bool,
    },
    /// Apply a functor: delta, delta_l, delta_r, sym, sub, lambda:k, gamma:k, omega:k, universal.
    Apply {
        #[arg(long)]
        functor: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a reduction pipeline: arc, universal, lambda:k, gamma-omega:k, or @file.json.
    Reduce {
        #[arg(long)]
        pipeline: Option<String>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the reduction trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Replay a previously written trace instead of a pipeline.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Box or hom complex invariants (plus the quotient when free).
    Topo {
        #[arg(long)]
        complex: String,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Winding profile of a polymorphism certificate into K_{p/q}.
    Wind {
        #[arg(long)]
        hom: PathBuf,
        /// Target slope, e.g. 5/2.
        #[arg(long)]
        target: String,
    },
    /// Run a property suite: adjunctions, poljak-rodl, topology, winding, minion.
    Check { suite: String },
    /// Independently re-validate a certificate.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long)]
        to: Option<PathBuf>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

struct Ctx {
    budget: Budget,
    cap: SizeCap,
    json: bool,
    started: Instant,
}

impl Ctx {
    fn report(
        &self,
        command: &str,
        inputs: BTreeMap<String, String>,
        result: Value,
        used: u64,
    ) -> String {
        let report = RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            result,
            budget: BudgetInfo {
                limit: self.budget.nodes,
                used,
            },
            wall_time_ms: self.started.elapsed().as_millis(),
        };
        serde_json::to_string_pretty(&report).expect("report serialises")
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("worker pool already initialised")?;
    }
    let budget = Budget::nodes(match cli.budget {
        Some(n) => n,
        None => match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .parse()
                .with_context(|| format!("bad {BUDGET_ENV} value `{v}`"))?,
            Err(_) => Budget::default().nodes,
        },
    });
    let mut cap = SizeCap::default();
    if let Some(c) = cli.cap {
        cap.max_vertices = c;
    }
    let ctx = Ctx {
        budget,
        cap,
        json: cli.json,
        started: Instant::now(),
    };

    match cli.command {
        Cmd::Gen { spec, out } => cmd_gen(&ctx, &spec, out.as_deref()),
        Cmd::Hom {
            from,
            to,
            cert,
            verify,
        } => cmd_hom(&ctx, &from, &to, cert.as_deref(), verify),
        Cmd::Chi {
            input,
            cert,
            verify,
        } => cmd_chi(&ctx, &input, cert.as_deref(), verify),
        Cmd::Apply {
            functor,
            input,
            out,
        } => cmd_apply(&ctx, &functor, &input, out.as_deref()),
        Cmd::Reduce {
            pipeline,
            input,
            out,
            trace,
            replay,
        } => cmd_reduce(
            &ctx,
            pipeline.as_deref(),
            &input,
            out.as_deref(),
            trace.as_deref(),
            replay.as_deref(),
        ),
        Cmd::Topo { complex, input } => cmd_topo(&ctx, &complex, &input),
        Cmd::Wind { hom, target } => cmd_wind(&ctx, &hom, &target),
        Cmd::Check { suite } => cmd_check(&ctx, &suite),
        Cmd::Verify {
            cert,
            from,
            to,
            input,
        } => cmd_verify(
            &ctx,
            &cert,
            from.as_deref(),
            to.as_deref(),
            input.as_deref(),
        ),
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_graph(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

fn emit_graph(
    ctx: &Ctx,
    command: &str,
    g: &Graph,
    comments: &[String],
    out: Option<&Path>,
) -> Result<()> {
    let text = serialize_with_comments(g, comments);
    match out {
        Some(path) => {
            std::fs::write(path, &text)
                .with_context(|| format!("cannot write {}", path.display()))?;
            let mut inputs = BTreeMap::new();
            inputs.insert("output".to_string(), hash_hex(g));
            let result = json!({
                "vertices": g.n(),
                "arcs": g.arc_count(),
                "symmetric": g.is_symmetric(),
                "hash": hash_hex(g),
                "path": path.display().to_string(),
            });
            println!("{}", ctx.report(command, inputs, result, 0));
        }
        None => {
            if ctx.json {
                let result = json!({
                    "vertices": g.n(),
                    "arcs": g.arc_count(),
                    "symmetric": g.is_symmetric(),
                    "hash": hash_hex(g),
                    "text": text,
                });
                println!("{}", ctx.report(command, BTreeMap::new(), result, 0));
            } else {
                print!("{text}");
            }
        }
    }
    Ok(())
}

fn cmd_gen(ctx: &Ctx, spec: &str, out: Option<&Path>) -> Result<ExitCode> {
    let g = parse_family(spec)?
        .build()
        .map_err(|e| anyhow::anyhow!(e.to_string()))?;
    emit_graph(ctx, "gen", &g, &[format!("family: {spec}")], out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_hom(
    ctx: &Ctx,
    from: &Path,
    to: &Path,
    cert_path: Option<&Path>,
    verify: bool,
) -> Result<ExitCode> {
    let g = load_graph(from)?;
    let h = load_graph(to)?;
    let (outcome, stats) = hom_exists(&g, &h, ctx.budget);
    let mut inputs = BTreeMap::new();
    inputs.insert("from".to_string(), hash_hex(&g));
    inputs.insert("to".to_string(), hash_hex(&h));
    let (result, code) = match &outcome {
        HomOutcome::Witness(w) => {
            if let Some(path) = cert_path {
                let cert = Certificate::hom(&g, &h, w);
                std::fs::write(path, serde_json::to_string_pretty(&cert)?)
                    .with_context(|| format!("cannot write {}", path.display()))?;
                if verify {
                    let read: Certificate = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    verify_certificate(&read, Some(&g), Some(&h), None)?;
                }
            }
            (
                json!({ "outcome": "witness", "map": w.image }),
                ExitCode::SUCCESS,
            )
        }
        HomOutcome::NoHom => (json!({ "outcome": "no_hom" }), ExitCode::SUCCESS),
        HomOutcome::Unknown => (json!({ "outcome": "unknown" }), ExitCode::from(2)),
    };
    println!("{}", ctx.report("hom", inputs, result, stats.nodes));
    Ok(code)
}

fn cmd_chi(ctx: &Ctx, input: &Path, cert_path: Option<&Path>, verify: bool) -> Result<ExitCode> {
    let g = load_graph(input)?;
    let (outcome, stats) = chromatic_number(&g, ctx.budget);
    let mut inputs = BTreeMap::new();
    inputs.insert("in".to_string(), hash_hex(&g));
    let (result, code) = match outcome {
        ChiOutcome::Exact(k) => {
            if let Some(path) = cert_path {
                if k > 0 && g.arc_count() > 0 {
                    let coloring = match hom_exists(&g, &homkit_core::graph::clique(k), ctx.budget)
                        .0
                    {
                        HomOutcome::Witness(w) => w.as_coloring(k),
                        other => bail!("no colouring witness at the chromatic number: {other:?}"),
                    };
                    let cert = Certificate::coloring(&g, &coloring);
                    std::fs::write(path, serde_json::to_string_pretty(&cert)?)
                        .with_context(|| format!("cannot write {}", path.display()))?;
                    if verify {
                        let read: Certificate =
                            serde_json::from_str(&std::fs::read_to_string(path)?)?;
                        verify_certificate(&read, None, None, Some(&g))?;
                    }
                } else {
                    bail!("nothing to certify: the graph has no arcs");
                }
            }
            (json!({ "chi": k }), ExitCode::SUCCESS)
        }
        ChiOutcome::HasLoop => (json!({ "chi": "has-loop" }), ExitCode::SUCCESS),
        ChiOutcome::Bounds { lo, hi } => (
            json!({ "bounds": { "lo": lo, "hi": hi } }),
            ExitCode::from(2),
        ),
    };
    println!("{}", ctx.report("chi", inputs, result, stats.nodes));
    Ok(code)
}

fn cmd_apply(ctx: &Ctx, functor: &str, input: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let id = FunctorId::parse(functor).map_err(|e| anyhow::anyhow!(e.to_string()))?;
    let g = load_graph(input)?;
    let result = homkit_core::functors::apply_functor(id, &g, &ctx.cap)
        .map_err(|e| anyhow::anyhow!(e.to_string()))?;
    let comments = vec![
        format!("functor: {}", id.name()),
        format!("input: {}", hash_hex(&g)),
    ];
    emit_graph(ctx, "apply", &result, &comments, out)?;
    Ok(ExitCode::SUCCESS)
}

fn builtin_pipeline(name: &str) -> Result<Vec<StepSpec>> {
    let step = |op: StepOp| StepSpec {
        op,
        from: None,
        to: None,
    };
    let parse_k = |rest: &str| -> Result<u32> {
        rest.parse::<u32>()
            .with_context(|| format!("bad parameter in pipeline `{name}`"))
    };
    if let Some(rest) = name.strip_prefix("lambda:") {
        return Ok(vec![step(StepOp::Functor(FunctorId::Lambda(parse_k(
            rest,
        )?)))]);
    }
    if let Some(rest) = name.strip_prefix("gamma-omega:") {
        // the equivalence pair of the walk power: instances move by subdivision
        return Ok(vec![step(StepOp::Functor(FunctorId::Lambda(parse_k(
            rest,
        )?)))]);
    }
    match name {
        "arc" => Ok(vec![step(StepOp::Functor(FunctorId::Delta))]),
        "universal" => Ok(vec![step(StepOp::Functor(FunctorId::Universal))]),
        other => bail!("unknown pipeline `{other}`"),
    }
}

fn pipeline_from_file(path: &Path) -> Result<Vec<StepSpec>> {
    #[derive(serde::Deserialize)]
    struct FileStep {
        op: String,
        #[serde(default)]
        with: Option<String>,
    }
    #[derive(serde::Deserialize)]
    struct FilePipeline {
        steps: Vec<FileStep>,
    }
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let parsed: FilePipeline = serde_json::from_str(&text)?;
    parsed
        .steps
        .into_iter()
        .map(|s| {
            let op = match s.op.as_str() {
                "relax" => bail!("relax steps need templates; declare them in code"),
                name if name.starts_with("product") => {
                    let with = s.with.context("product step needs `with`")?;
                    StepOp::ProductWith(parse_graph(&with)?)
                }
                name => StepOp::Functor(
                    FunctorId::parse(name).map_err(|e| anyhow::anyhow!(e.to_string()))?,
                ),
            };
            Ok(StepSpec {
                op,
                from: None,
                to: None,
            })
        })
        .collect()
}

fn cmd_reduce(
    ctx: &Ctx,
    pipeline: Option<&str>,
    input: &Path,
    out: Option<&Path>,
    trace_path: Option<&Path>,
    replay_path: Option<&Path>,
) -> Result<ExitCode> {
    let g = load_graph(input)?;
    let (name, result_graph, trace) = match (pipeline, replay_path) {
        (Some(_), Some(_)) => bail!("--pipeline and --replay are mutually exclusive"),
        (None, None) => bail!("one of --pipeline or --replay is required"),
        (Some(name), None) => {
            let steps = if let Some(file) = name.strip_prefix('@') {
                pipeline_from_file(Path::new(file))?
            } else {
                builtin_pipeline(name)?
            };
            let p = Pipeline { steps };
            let (out_g, trace) = p
                .run(&g, &ctx.cap)
                .map_err(|e| anyhow::anyhow!(e.to_string()))?;
            (name.to_string(), out_g, trace)
        }
        (None, Some(path)) => {
            let file: TraceFile = serde_json::from_str(
                &std::fs::read_to_string(path)
                    .with_context(|| format!("cannot read {}", path.display()))?,
            )?;
            let out_g = replay_trace_file(&file, &g, &ctx.cap)?;
            (format!("replay:{}", file.pipeline), out_g, file.to_trace()?)
        }
    };
    if let Some(path) = trace_path {
        let file = TraceFile::from_trace(&name, &trace);
        std::fs::write(path, serde_json::to_string_pretty(&file)?)
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    let comments = vec![
        format!("pipeline: {name}"),
        format!("input: {}", hash_hex(&g)),
    ];
    emit_graph(ctx, "reduce", &result_graph, &comments, out)?;
    Ok(ExitCode::SUCCESS)
}

fn complex_summary(ctx: &Ctx, k: &Z2Complex) -> Result<Value> {
    let s = homology(&k.complex, &ctx.cap).map_err(|e| anyhow::anyhow!(e.to_string()))?;
    let free = k.is_free();
    let quotient_value = if free {
        match quotient(k, &ctx.cap) {
            Ok(q) => {
                let qs = homology(&q, &ctx.cap).map_err(|e| anyhow::anyhow!(e.to_string()))?;
                json!({
                    "vertices": q.n_vertices(),
                    "maximal_faces": q.maximal_faces().len(),
                    "euler": qs.euler,
                    "betti0": qs.betti0,
                    "betti1": qs.betti1,
                    "torsion1": qs.torsion1,
                })
            }
            Err(_) => Value::Null,
        }
    } else {
        Value::Null
    };
    Ok(json!({
        "vertices": k.complex.n_vertices(),
        "maximal_faces": k.complex.maximal_faces().len(),
        "euler": s.euler,
        "betti0": s.betti0,
        "betti1": s.betti1,
        "torsion1": s.torsion1,
        "free": free,
        "quotient": quotient_value,
    }))
}

fn cmd_topo(ctx: &Ctx, complex: &str, input: &Path) -> Result<ExitCode> {
    let g = load_graph(input)?;
    let k = match complex {
        "box" => box_complex(&g, &ctx.cap).map_err(|e| anyhow::anyhow!(e.to_string()))?,
        "hom" => {
            hom_complex(&g, &ctx.cap)
                .map_err(|e| anyhow::anyhow!(e.to_string()))?
                .0
        }
        other => bail!("unknown complex `{other}`; expected box or hom"),
    };
    let result = complex_summary(ctx, &k)?;
    let mut inputs = BTreeMap::new();
    inputs.insert("in".to_string(), hash_hex(&g));
    println!("{}", ctx.report("topo", inputs, result, 0));
    Ok(ExitCode::SUCCESS)
}

fn parse_slope(text: &str) -> Result<(u32, u32)> {
    let (p, q) = text
        .split_once('/')
        .with_context(|| format!("target `{text}` needs p/q"))?;
    Ok((p.parse()?, q.parse()?))
}

fn cmd_wind(ctx: &Ctx, hom: &Path, target: &str) -> Result<ExitCode> {
    let (p, q) = parse_slope(target)?;
    let cert: Certificate = serde_json::from_str(
        &std::fs::read_to_string(hom).with_context(|| format!("cannot read {}", hom.display()))?,
    )?;
    let (n, f) = match &cert {
        Certificate::Pol {
            source,
            target: cert_target,
            arity,
            table,
            ..
        } => {
            let n = source
                .strip_prefix("cycle:")
                .with_context(|| format!("winding needs a cycle source, got `{source}`"))?
                .parse::<u32>()?;
            let expect = format!("circular:{p}/{q}");
            if cert_target != &expect {
                bail!("certificate target `{cert_target}` does not match --target {p}/{q}");
            }
            (
                n,
                Polymorphism {
                    arity: *arity,
                    source_n: n,
                    table: table.clone(),
                },
            )
        }
        Certificate::Hom { source, map, .. } => {
            // arity-1 view of a plain homomorphism certificate
            (
                source.n,
                Polymorphism {
                    arity: 1,
                    source_n: source.n,
                    table: map.clone(),
                },
            )
        }
        Certificate::Coloring { .. } => bail!("winding needs a hom or pol certificate"),
    };
    let profile = winding_profile(&f, n, p, q).map_err(|e| anyhow::anyhow!(e.to_string()))?;
    let mut inputs = BTreeMap::new();
    inputs.insert("hom".to_string(), hom.display().to_string());
    let result = json!({ "a": profile.a, "d": profile.d });
    println!("{}", ctx.report("wind", inputs, result, 0));
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(ctx: &Ctx, suite: &str) -> Result<ExitCode> {
    if suite == "list" {
        println!(
            "{}",
            ctx.report("check", BTreeMap::new(), json!({ "suites": SUITES }), 0)
        );
        return Ok(ExitCode::SUCCESS);
    }
    let report = run_suite(suite)?;
    for r in &report.results {
        eprintln!("[{}] {}", if r.pass { "pass" } else { "FAIL" }, r.name);
    }
    let result = json!({
        "suite": report.suite,
        "pass": report.all_pass(),
        "properties": report
            .results
            .iter()
            .map(|r| json!({ "name": r.name, "pass": r.pass, "detail": r.detail }))
            .collect::<Vec<_>>(),
    });
    let code = if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    };
    println!("{}", ctx.report("check", BTreeMap::new(), result, 0));
    Ok(code)
}

fn verify_certificate(
    cert: &Certificate,
    from: Option<&Graph>,
    to: Option<&Graph>,
    input: Option<&Graph>,
) -> Result<()> {
    match cert {
        Certificate::Hom {
            source,
            target,
            map,
            ..
        } => {
            let g = from.context("hom certificate needs --from")?;
            let h = to.context("hom certificate needs --to")?;
            if !source.matches(g) {
                bail!("--from graph does not match the certificate hash");
            }
            if !target.matches(h) {
                bail!("--to graph does not match the certificate hash");
            }
            let w = VertexMap {
                source_n: g.n(),
                image: map.clone(),
            };
            w.validate(g, h).map_err(|e| anyhow::anyhow!(e.to_string()))
        }
        Certificate::Coloring {
            graph,
            colors,
            assignment,
            ..
        } => {
            let g = input.context("coloring certificate needs --in")?;
            if !graph.matches(g) {
                bail!("--in graph does not match the certificate hash");
            }
            let c = Coloring {
                colors: *colors,
                assignment: assignment.clone(),
            };
            c.validate(g).map_err(|e| anyhow::anyhow!(e.to_string()))
        }
        Certificate::Pol {
            source,
            target,
            arity,
            table,
            ..
        } => {
            let g = parse_family(source)?
                .build()
                .map_err(|e| anyhow::anyhow!(e.to_string()))?;
            let h = parse_family(target)?
                .build()
                .map_err(|e| anyhow::anyhow!(e.to_string()))?;
            let f = Polymorphism {
                arity: *arity,
                source_n: g.n(),
                table: table.clone(),
            };
            f.validate(&g, &h)
                .map_err(|e| anyhow::anyhow!(e.to_string()))
        }
    }
}

fn cmd_verify(
    ctx: &Ctx,
    cert_path: &Path,
    from: Option<&Path>,
    to: Option<&Path>,
    input: Option<&Path>,
) -> Result<ExitCode> {
    let cert: Certificate = serde_json::from_str(
        &std::fs::read_to_string(cert_path)
            .with_context(|| format!("cannot read {}", cert_path.display()))?,
    )?;
    let g = from.map(load_graph).transpose()?;
    let h = to.map(load_graph).transpose()?;
    let i = input.map(load_graph).transpose()?;
    let verdict = verify_certificate(&cert, g.as_ref(), h.as_ref(), i.as_ref());
    let mut inputs = BTreeMap::new();
    inputs.insert("cert".to_string(), cert_path.display().to_string());
    match verdict {
        Ok(()) => {
            println!(
                "{}",
                ctx.report("verify", inputs, json!({ "valid": true }), 0)
            );
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            println!(
                "{}",
                ctx.report(
                    "verify",
                    inputs,
                    json!({ "valid": false, "reason": e.to_string() }),
                    0
                )
            );
            Ok(ExitCode::from(1))
        }
    }
}
