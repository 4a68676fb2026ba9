//! `dualgraph` command-line driver.
//!
//! Exit status: 0 success, 1 check failed, 2 input error, 3 size or
//! insertion cap reached (partial output is still written).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use dualgraph_core::classify::{classify_graph, predict_growth, structural_class, GraphClass};
use dualgraph_core::convert::{
    render_tuple, reverse_convert, straight_convert, AugmentMode, ConvertOptions, Converter,
    DEFAULT_SIZE_CAP,
};
use dualgraph_core::digraph::{cyclomatic_number, validate_f_requirements, Digraph, FMode};
use dualgraph_core::duality::{is_canonical, is_quasi_canonical};
use dualgraph_core::error::{HamiltonError, NormalizeError};
use dualgraph_core::format::{emit, parse, to_dot};
use dualgraph_core::hamilton::{brute_force_hamilton, hamilton_cycles_via_duality, ORACLE_BOUND};
use dualgraph_core::matrix::{Role, RoleMatrix};
use dualgraph_core::normalize::{normalize, reduce, Preserve, ReduceScope, Strategy, Target};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "dualgraph", version, about = "Vertex/arc duality of digraphs")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Common {
    /// Arc-list file, `-` for standard input.
    #[arg(default_value = "-")]
    input: String,
    /// Structured JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Quasi-canonical and canonical tests of the graph's matrix.
    Check {
        #[command(flatten)]
        common: Common,
        /// Fail unless the matrix is canonical too.
        #[arg(long)]
        canonical: bool,
    },
    /// Subdivide arcs until the matrix is quasi-canonical or canonical.
    Normalize {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = TargetArg::Canonical)]
        target: TargetArg,
        #[arg(long, value_enum, default_value_t = StrategyArg::Sweep)]
        strategy: StrategyArg,
        /// Contract degree-(1,1) vertexes afterwards while keeping the form.
        #[arg(long)]
        reduce: bool,
    },
    /// Straight converting trace, or reverse converting with `--reverse`.
    Convert {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        growth: GrowthArgs,
        #[arg(long, value_enum, default_value_t = ConvertFormat::Csv)]
        format: ConvertFormat,
        /// Read the input as an arc-adjacency matrix and rebuild its root.
        #[arg(long)]
        reverse: bool,
    },
    /// Growth class with its witnesses.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Compare predicted and observed growth over this many graphs.
        #[arg(long, value_name = "K")]
        verify: Option<usize>,
    },
    /// Per-step CSV of the converting sequence.
    Grow {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        growth: GrowthArgs,
        /// Append predicted_n and predicted_nu columns.
        #[arg(long)]
        predicted: bool,
    },
    /// Hamilton cycles through the marked edge graph.
    Hamilton {
        #[command(flatten)]
        common: Common,
        /// Print the number of cycles (default).
        #[arg(long)]
        count: bool,
        /// Print every cycle.
        #[arg(long)]
        list: bool,
        /// Compare with brute-force enumeration.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = ORACLE_BOUND)]
        bound: usize,
    },
    /// Straight then reverse converting; reports whether the input returns.
    Roundtrip {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct GrowthArgs {
    /// Number of graphs listed, the input being the first.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,
    #[arg(long, value_enum, default_value_t = AugmentArg::AsNeeded)]
    augment: AugmentArg,
    /// Shorthand for `--augment faithful`.
    #[arg(long)]
    faithful: bool,
    /// Largest vertex count a step may reach.
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    cap: usize,
}

impl GrowthArgs {
    fn mode(&self) -> AugmentMode {
        if self.faithful {
            AugmentMode::Faithful
        } else {
            self.augment.into()
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    Quasi,
    Canonical,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Sweep,
    Immediate,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AugmentArg {
    Never,
    AsNeeded,
    Faithful,
}

impl From<AugmentArg> for AugmentMode {
    fn from(a: AugmentArg) -> Self {
        match a {
            AugmentArg::Never => AugmentMode::Never,
            AugmentArg::AsNeeded => AugmentMode::AsNeeded,
            AugmentArg::Faithful => AugmentMode::Faithful,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConvertFormat {
    /// step,n,m,nu,class
    Csv,
    /// One DOT digraph per step.
    Dot,
    /// step,arc,begin,end,tuple
    Labels,
    /// Last graph in arc-list format.
    Arcs,
}

/// Captured result of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }

    fn note(mut self, msg: impl AsRef<str>) -> Self {
        self.stderr.push_str(msg.as_ref());
        self.stderr.push('\n');
        self
    }
}

fn input_error(msg: impl std::fmt::Display) -> Outcome {
    Outcome::default()
        .with_code(EXIT_INPUT)
        .note(format!("error: {msg}"))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn read_graph(path: &str, stdin: &mut dyn Read) -> anyhow::Result<Digraph> {
    let text = if path == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    parse(&text).with_context(|| format!("parsing {path}"))
}

/// Runs one command line (program name first) against `stdin`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let common = match &cli.verb {
        Verb::Check { common, .. }
        | Verb::Normalize { common, .. }
        | Verb::Convert { common, .. }
        | Verb::Classify { common, .. }
        | Verb::Grow { common, .. }
        | Verb::Hamilton { common, .. }
        | Verb::Roundtrip { common } => common,
    };
    let g = match read_graph(&common.input, stdin) {
        Ok(g) => g,
        Err(e) => return input_error(format!("{e:#}")),
    };
    let json = common.json;
    match &cli.verb {
        Verb::Check { canonical, .. } => check(&g, *canonical, json),
        Verb::Normalize {
            target,
            strategy,
            reduce,
            ..
        } => normalize_cmd(&g, *target, *strategy, *reduce, json),
        Verb::Convert {
            growth,
            format,
            reverse,
            ..
        } => {
            if *reverse {
                reverse_cmd(&g, json)
            } else {
                convert_cmd(&g, growth, *format, json)
            }
        }
        Verb::Classify { verify, .. } => classify_cmd(&g, *verify, json),
        Verb::Grow {
            growth, predicted, ..
        } => grow(&g, growth, *predicted, json),
        Verb::Hamilton {
            list,
            oracle,
            bound,
            ..
        } => hamilton(&g, *list, *oracle, *bound, json),
        Verb::Roundtrip { .. } => roundtrip(&g, json),
    }
}

fn arc_names(g: &Digraph, arcs: &[(usize, usize)]) -> String {
    arcs.iter()
        .map(|&(t, h)| format!("{}->{}", g.display_name(t), g.display_name(h)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn check(g: &Digraph, need_canonical: bool, json: bool) -> Outcome {
    let l = RoleMatrix::new(Role::L, g.clone());
    let quasi = is_quasi_canonical(&l).expect("matrix built with role L");
    let canon = is_canonical(&l);
    let f = validate_f_requirements(g, FMode::Quasicanonical);
    let canonical = canon.canonical.unwrap_or(false);
    let passed = quasi.quasi_canonical && (canonical || !need_canonical);
    let stdout = if json {
        pretty(&json!({
            "quasi_canonical": quasi,
            "canonical": canon,
            "f_requirements": f,
        }))
    } else {
        let mut s = String::new();
        writeln!(s, "quasi-canonical: {}", yes_no(quasi.quasi_canonical)).unwrap();
        writeln!(s, "canonical: {}", yes_no(canonical)).unwrap();
        let nonzero: Vec<_> = quasi
            .violating_arcs
            .iter()
            .map(|v| (v.tail, v.head))
            .collect();
        if !nonzero.is_empty() {
            writeln!(s, "non-zero c: {}", arc_names(g, &nonzero)).unwrap();
        }
        if !quasi.minor_failures.is_empty() {
            writeln!(s, "minor failures: {}", arc_names(g, &quasi.minor_failures)).unwrap();
        }
        let bim: Vec<_> = canon
            .violating_arcs
            .iter()
            .filter(|v| !nonzero.contains(&(v.tail, v.head)))
            .map(|v| (v.tail, v.head))
            .collect();
        if !bim.is_empty() {
            writeln!(s, "branch into merge: {}", arc_names(g, &bim)).unwrap();
        }
        if f.ok {
            writeln!(s, "entrance/exit requirements: ok").unwrap();
        } else {
            for v in &f.violations {
                writeln!(
                    s,
                    "entrance/exit requirements: {} ({})",
                    v.description,
                    v.rule.id()
                )
                .unwrap();
            }
        }
        s
    };
    Outcome::ok(stdout).with_code(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn normalize_cmd(
    g: &Digraph,
    target: TargetArg,
    strategy: StrategyArg,
    do_reduce: bool,
    json: bool,
) -> Outcome {
    let (target, preserve) = match target {
        TargetArg::Quasi => (Target::QuasiCanonical, Preserve::QuasiCanonical),
        TargetArg::Canonical => (Target::Canonical, Preserve::Canonical),
    };
    let strategy = match strategy {
        StrategyArg::Sweep => Strategy::Sweep,
        StrategyArg::Immediate => Strategy::Immediate,
    };
    let report = match normalize(&RoleMatrix::new(Role::L, g.clone()), target, strategy) {
        Ok(r) => r,
        Err(e @ NormalizeError::NotConverged { .. }) => {
            return Outcome::default()
                .with_code(EXIT_CAP)
                .note(format!("error: {e}"))
        }
        Err(e) => return input_error(e),
    };
    let reduction = do_reduce.then(|| reduce(&report.result, ReduceScope::All, preserve));
    let out_graph = reduction
        .as_ref()
        .map_or(report.result.graph(), |r| r.result.graph());
    if json {
        return Outcome::ok(pretty(&json!({
            "report": report,
            "reduction": reduction,
            "graph": emit(out_graph),
        })));
    }
    let mut s = String::new();
    writeln!(
        s,
        "# target: {}",
        match target {
            Target::QuasiCanonical => "quasi-canonical",
            Target::Canonical => "canonical",
        }
    )
    .unwrap();
    writeln!(s, "# insertions: {}", report.s_q).unwrap();
    writeln!(s, "# rounds: {}", report.rounds).unwrap();
    writeln!(s, "# cap: {}", report.cap).unwrap();
    for ins in &report.steps {
        writeln!(s, "# insert {} into {} {}", ins.vertex, ins.tail, ins.head).unwrap();
    }
    if let Some(r) = &reduction {
        writeln!(s, "# contractions: {}", r.log.len()).unwrap();
    }
    s.push_str(&emit(out_graph));
    Outcome::ok(s)
}

/// Graph rows `H_1 .. H_steps` of one converting run, stopping early at the
/// size cap.
struct Run {
    graphs: Vec<Digraph>,
    /// Rendered walk labels, one vector per graph.
    labels: Vec<Vec<String>>,
    cap_hit: Option<String>,
}

fn run_growth(g: &Digraph, args: &GrowthArgs, want_labels: bool) -> Result<Run, Outcome> {
    let opts = ConvertOptions::new(0, args.mode()).with_cap(args.cap);
    let opts = if want_labels {
        opts
    } else {
        opts.without_labels()
    };
    let mut conv = Converter::new(g, &opts).map_err(input_error)?;
    let render = |conv: &Converter<'_>| -> Vec<String> {
        conv.current_labels()
            .map(|ls| ls.iter().map(|t| render_tuple(g, t)).collect())
            .unwrap_or_default()
    };
    let mut run = Run {
        graphs: vec![conv.current().clone()],
        labels: vec![render(&conv)],
        cap_hit: None,
    };
    for _ in 1..args.steps {
        match conv.advance().map_err(input_error)? {
            Some(_) => {
                run.graphs.push(conv.current().clone());
                run.labels.push(render(&conv));
            }
            None => {
                let ev = conv.cap_event.as_ref().expect("cap event set");
                run.cap_hit = Some(format!(
                    "size cap: step {} would have {} vertexes (cap {})",
                    ev.step + 1,
                    ev.predicted_n,
                    ev.cap
                ));
                break;
            }
        }
    }
    Ok(run)
}

fn finish(stdout: String, cap_hit: Option<String>) -> Outcome {
    match cap_hit {
        Some(msg) => Outcome::ok(stdout).with_code(EXIT_CAP).note(msg),
        None => Outcome::ok(stdout),
    }
}

#[derive(Serialize)]
struct StepRow {
    step: usize,
    n: usize,
    m: usize,
    nu: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta_nu: Option<i64>,
    class: GraphClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted_n: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted_nu: Option<String>,
}

fn step_rows(run: &Run) -> Vec<StepRow> {
    let mut prev_nu = None;
    run.graphs
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let nu = cyclomatic_number(h);
            let row = StepRow {
                step: i + 1,
                n: h.vertex_count(),
                m: h.arc_count(),
                nu,
                delta_nu: prev_nu.map(|p| nu - p),
                class: structural_class(h).0,
                predicted_n: None,
                predicted_nu: None,
            };
            prev_nu = Some(nu);
            row
        })
        .collect()
}

fn csv_out(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn convert_cmd(g: &Digraph, args: &GrowthArgs, format: ConvertFormat, json: bool) -> Outcome {
    let want_labels = matches!(
        format,
        ConvertFormat::Labels | ConvertFormat::Dot | ConvertFormat::Arcs
    );
    let run = match run_growth(g, args, want_labels || json) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let labelled = |i: usize| -> Digraph {
        let h = &run.graphs[i];
        if i == 0 {
            return h.clone();
        }
        let names = run.labels[i].iter().cloned().map(Some).collect();
        Digraph::with_labels(h.vertex_count(), h.arcs().iter().copied(), names)
            .unwrap_or_else(|_| h.clone())
    };
    let stdout = if json {
        let steps: Vec<_> = (0..run.graphs.len())
            .map(|i| {
                let h = &run.graphs[i];
                json!({
                    "step": i + 1,
                    "n": h.vertex_count(),
                    "m": h.arc_count(),
                    "nu": cyclomatic_number(h),
                    "class": structural_class(h).0,
                    "labels": run.labels[i],
                    "arcs": h.arcs(),
                })
            })
            .collect();
        pretty(&json!({ "augment": args.mode(), "steps": steps, "cap_hit": run.cap_hit }))
    } else {
        match format {
            ConvertFormat::Csv => csv_out(
                &["step", "n", "m", "nu", "class"],
                step_rows(&run).into_iter().map(|r| {
                    vec![
                        r.step.to_string(),
                        r.n.to_string(),
                        r.m.to_string(),
                        r.nu.to_string(),
                        r.class.to_string(),
                    ]
                }),
            ),
            ConvertFormat::Dot => (0..run.graphs.len())
                .map(|i| to_dot(&labelled(i), &format!("H{}", i + 1)))
                .collect(),
            ConvertFormat::Labels => {
                let mut rows = Vec::new();
                for i in 0..run.graphs.len().saturating_sub(1) {
                    let h = &run.graphs[i];
                    for (a, &(t, hd)) in h.arcs().iter().enumerate() {
                        rows.push(vec![
                            (i + 1).to_string(),
                            a.to_string(),
                            run.labels[i][t].clone(),
                            run.labels[i][hd].clone(),
                            run.labels[i + 1][a].clone(),
                        ]);
                    }
                }
                csv_out(&["step", "arc", "begin", "end", "tuple"], rows)
            }
            ConvertFormat::Arcs => emit(&labelled(run.graphs.len() - 1)),
        }
    };
    finish(stdout, run.cap_hit)
}

fn reverse_cmd(g: &Digraph, json: bool) -> Outcome {
    let root = match reverse_convert(&RoleMatrix::new(Role::R, g.clone())) {
        Ok(r) => r,
        Err(e) => {
            return Outcome::default()
                .with_code(EXIT_CHECK_FAILED)
                .note(format!("not an arc-adjacency matrix: {e}"))
        }
    };
    if json {
        return Outcome::ok(pretty(&json!({
            "root": emit(&root.graph),
            "arc_of": root.arc_of,
        })));
    }
    let mut s = String::new();
    for (e, &(t, h)) in root.arc_of.iter().enumerate() {
        writeln!(s, "# {} is arc {t} {h}", g.display_name(e)).unwrap();
    }
    s.push_str(&emit(&root.graph));
    Outcome::ok(s)
}

fn names(g: &Digraph, vs: &[usize]) -> String {
    vs.iter()
        .map(|&v| g.display_name(v))
        .collect::<Vec<_>>()
        .join(" ")
}

fn classify_cmd(g: &Digraph, verify: Option<usize>, json: bool) -> Outcome {
    let report = classify_graph(g);
    let mut code = EXIT_OK;
    let mut cap_hit = None;
    let table = match verify {
        None => None,
        Some(k) => {
            let args = GrowthArgs {
                steps: k.max(1) as u64,
                augment: AugmentArg::Never,
                faithful: false,
                cap: DEFAULT_SIZE_CAP,
            };
            let mode = report.predicted_growth.augment;
            let args = GrowthArgs {
                faithful: mode == AugmentMode::Faithful,
                ..args
            };
            let run = match run_growth(g, &args, false) {
                Ok(r) => r,
                Err(o) => return o,
            };
            cap_hit = run.cap_hit.clone();
            let pred = predict_growth(g, k.max(1) - 1, mode);
            let rows: Vec<_> = run
                .graphs
                .iter()
                .enumerate()
                .map(|(i, h)| {
                    let observed_dnu = run
                        .graphs
                        .get(i + 1)
                        .map(|next| cyclomatic_number(next) - cyclomatic_number(h));
                    let predicted_n = pred.n.get(i).copied();
                    let predicted_dnu = pred.delta_nu.get(i).copied();
                    let ok = predicted_n == Some(h.vertex_count() as i128)
                        && observed_dnu.is_none_or(|d| predicted_dnu == Some(d as i128));
                    if !ok {
                        code = EXIT_CHECK_FAILED;
                    }
                    (
                        i + 1,
                        predicted_n,
                        h.vertex_count(),
                        predicted_dnu,
                        observed_dnu,
                        ok,
                    )
                })
                .collect();
            Some(rows)
        }
    };
    let stdout = if json {
        let verify: Option<Vec<_>> = table.as_ref().map(|rows| {
            rows.iter()
                .map(|(step, pn, n, pd, od, ok)| {
                    json!({
                        "step": step,
                        "predicted_n": pn.map(|x| x.to_string()),
                        "observed_n": n,
                        "predicted_delta_nu": pd.map(|x| x.to_string()),
                        "observed_delta_nu": od,
                        "match": ok,
                    })
                })
                .collect()
        });
        pretty(&json!({ "report": report, "verify": verify }))
    } else {
        let mut s = String::new();
        writeln!(s, "class: {} ({})", report.class, report.class.name()).unwrap();
        writeln!(s, "contour-rule class: {}", report.contour_rule_class).unwrap();
        writeln!(s, "canonical: {}", yes_no(report.canonical)).unwrap();
        match report.j_max {
            Some(j) => writeln!(s, "j_max: {j}").unwrap(),
            None => writeln!(s, "j_max: none").unwrap(),
        }
        for c in &report.contours {
            writeln!(s, "contour: {}", names(g, c)).unwrap();
        }
        if let Some(c) = &report.growth_contour {
            writeln!(s, "growth contour: {}", names(g, c)).unwrap();
        }
        writeln!(s, "l31 intervals: {}", report.intervals.len()).unwrap();
        for iv in &report.intervals {
            writeln!(s, "  length {}: {}", iv.length, names(g, &iv.path)).unwrap();
        }
        let hol = &report.holonomic;
        match &hol.offending_path {
            None => writeln!(s, "holonomic: yes").unwrap(),
            Some(p) => writeln!(s, "holonomic: no (path {})", names(g, p)).unwrap(),
        }
        match (hol.literal_holonomic, &hol.literal_offending_path) {
            (None, _) => writeln!(s, "degree-sum holonomic: undetermined").unwrap(),
            (Some(true), _) => writeln!(s, "degree-sum holonomic: yes").unwrap(),
            (Some(false), p) => writeln!(
                s,
                "degree-sum holonomic: no (path {})",
                names(g, p.as_deref().unwrap_or_default())
            )
            .unwrap(),
        }
        let pn: Vec<String> = report
            .predicted_growth
            .n
            .iter()
            .map(|x| x.to_string())
            .collect();
        writeln!(s, "predicted n: {}", pn.join(" ")).unwrap();
        for w in &report.warnings {
            writeln!(s, "warning: {w}").unwrap();
        }
        if let Some(rows) = &table {
            let opt = |x: Option<String>| x.unwrap_or_default();
            s.push_str(&csv_out(
                &[
                    "step",
                    "predicted_n",
                    "observed_n",
                    "predicted_delta_nu",
                    "observed_delta_nu",
                    "match",
                ],
                rows.iter().map(|(step, pn, n, pd, od, ok)| {
                    vec![
                        step.to_string(),
                        opt(pn.map(|x| x.to_string())),
                        n.to_string(),
                        opt(pd.map(|x| x.to_string())),
                        opt(od.map(|x| x.to_string())),
                        yes_no(*ok).to_string(),
                    ]
                }),
            ));
        }
        s
    };
    let out = finish(stdout, cap_hit);
    if out.code == EXIT_OK {
        out.with_code(code)
    } else {
        out
    }
}

fn grow(g: &Digraph, args: &GrowthArgs, predicted: bool, json: bool) -> Outcome {
    let run = match run_growth(g, args, false) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let mut rows = step_rows(&run);
    if predicted {
        let pred = predict_growth(g, rows.len() - 1, args.mode());
        let mut nu = cyclomatic_number(g) as i128;
        for (i, row) in rows.iter_mut().enumerate() {
            row.predicted_n = pred.n.get(i).map(|x| x.to_string());
            row.predicted_nu = (i == 0 || i <= pred.delta_nu.len()).then(|| nu.to_string());
            if let Some(d) = pred.delta_nu.get(i) {
                nu += d;
            }
        }
    }
    let stdout = if json {
        pretty(&json!({ "augment": args.mode(), "rows": rows, "cap_hit": run.cap_hit }))
    } else {
        let mut header = vec!["step", "n", "m", "nu", "delta_nu", "class"];
        if predicted {
            header.extend(["predicted_n", "predicted_nu"]);
        }
        csv_out(
            &header,
            rows.into_iter().map(|r| {
                let mut v = vec![
                    r.step.to_string(),
                    r.n.to_string(),
                    r.m.to_string(),
                    r.nu.to_string(),
                    r.delta_nu.map(|d| d.to_string()).unwrap_or_default(),
                    r.class.to_string(),
                ];
                if predicted {
                    v.push(r.predicted_n.unwrap_or_default());
                    v.push(r.predicted_nu.unwrap_or_default());
                }
                v
            }),
        )
    };
    finish(stdout, run.cap_hit)
}

fn hamilton(g: &Digraph, list: bool, oracle: bool, bound: usize, json: bool) -> Outcome {
    let cycles = match hamilton_cycles_via_duality(g) {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    let brute = if oracle {
        match brute_force_hamilton(g, bound) {
            Ok(b) => Some(b),
            Err(e @ HamiltonError::BoundExceeded { .. }) => return input_error(e),
            Err(e) => return input_error(e),
        }
    } else {
        None
    };
    let agree = brute.as_ref().map(|b| *b == cycles);
    let stdout = if json {
        pretty(&json!({
            "count": cycles.len(),
            "cycles": if list { Some(&cycles) } else { None },
            "oracle_count": brute.as_ref().map(Vec::len),
            "agree": agree,
        }))
    } else {
        let mut s = String::new();
        writeln!(s, "cycles: {}", cycles.len()).unwrap();
        if list {
            for c in &cycles {
                writeln!(s, "{}", names(g, c)).unwrap();
            }
        }
        if let (Some(b), Some(a)) = (&brute, agree) {
            writeln!(
                s,
                "oracle: {} ({})",
                b.len(),
                if a { "agree" } else { "DISAGREE" }
            )
            .unwrap();
        }
        s
    };
    Outcome::ok(stdout).with_code(if agree == Some(false) {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    })
}

fn roundtrip(g: &Digraph, json: bool) -> Outcome {
    let line = straight_convert(g).unlabeled();
    let result = reverse_convert(&RoleMatrix::new(Role::R, line));
    let (map, reason) = match &result {
        Ok(root) => match root.vertex_map(g) {
            Some(m) => (Some(m), None),
            None => (None, Some("root differs from the input".to_string())),
        },
        Err(e) => (None, Some(e.to_string())),
    };
    let stdout = if json {
        pretty(&json!({ "isomorphic": map.is_some(), "map": map, "reason": reason }))
    } else {
        let mut s = format!("isomorphic: {}\n", yes_no(map.is_some()));
        if let Some(m) = &map {
            for (v, w) in m.iter().enumerate() {
                writeln!(s, "{} -> {w}", g.display_name(v)).unwrap();
            }
        }
        if let Some(r) = &reason {
            writeln!(s, "reason: {r}").unwrap();
        }
        s
    };
    Outcome::ok(stdout).with_code(if map.is_some() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
