//! Acceptance suite: one PASS/FAIL line per criterion.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;

use dualgraph_core::classify::{classify_graph, delta_nu, predict_growth, GraphClass};
use dualgraph_core::convert::{
    iterate_convert, reverse_convert, straight_convert, AugmentMode, ConvertOptions, Converter,
    DEFAULT_SIZE_CAP,
};
use dualgraph_core::digraph::{cyclomatic_number, transitive_closure, weak_components, Digraph};
use dualgraph_core::duality::{is_canonical, is_quasi_canonical};
use dualgraph_core::format::emit;
use dualgraph_core::gen::{
    digraph_classes, entrance_exit_classes, is_entrance_exit, isomorphic,
    random_acyclic_entrance_exit, random_digraph, random_entrance_exit, seeded, trace_example,
};
use dualgraph_core::hamilton::{
    brute_force_hamilton, hamilton_cycles_via_duality, is_hamilton_cycle, ORACLE_BOUND,
};
use dualgraph_core::matrix::{Role, RoleMatrix};
use dualgraph_core::normalize::{
    insertion_cap, normalize_canonical, quasi_normalize, reduce, undo_normalization, Preserve,
    ReduceScope,
};

const BIN: &str = env!("CARGO_BIN_EXE_dualgraph");
const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");

type Outcome = Result<String, String>;

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let took = start.elapsed();
    if took > limit {
        Err(format!("{detail}; took {took:.2?}, limit {limit:?}"))
    } else {
        Ok(format!("{detail}; {took:.2?}"))
    }
}

fn failures(kind: &str, found: &[String]) -> Outcome {
    match found.first() {
        None => Ok(String::new()),
        Some(first) => Err(format!("{} {kind} failures, first: {first}", found.len())),
    }
}

fn arcs(g: &Digraph) -> String {
    format!("n={} {:?}", g.vertex_count(), g.arcs())
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN)
        .args(args)
        .output()
        .expect("spawn dualgraph");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = trace_example();
    let expected = vec![4, 5, 5, 5];
    let trace = iterate_convert(&g, &ConvertOptions::new(3, AugmentMode::Faithful))
        .map_err(|e| e.to_string())?;
    let nus = trace.nus();
    if nus[1] - nus[0] != delta_nu(&g) || nus != expected {
        return Err(format!("core trace {nus:?}, expected {expected:?}"));
    }
    let after = classify_graph(&trace.steps[1].graph);
    if !after.intervals.is_empty() {
        return Err("l31 interval left after the first converting".into());
    }
    let (code, stdout, stderr) = run_cli(&[
        "grow",
        "--steps",
        "4",
        "--faithful",
        &format!("{DATA}/trace.txt"),
    ]);
    let column: Vec<&str> = stdout
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap_or(""))
        .collect();
    if code != 0 || column != ["4", "5", "5", "5"] {
        return Err(format!(
            "cli exit {code}, nu column {column:?}, stderr {stderr}"
        ));
    }
    within(Duration::from_secs(1), start, format!("nu trace {nus:?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(2);
    let mut bad = Vec::new();
    for _ in 0..5000 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.05..0.7);
        let g = random_digraph(&mut rng, n, p);
        let l = RoleMatrix::new(Role::L, straight_convert(&g).unlabeled());
        let verdict = is_quasi_canonical(&l).map_err(|e| e.to_string())?;
        if !verdict.quasi_canonical {
            bad.push(arcs(&g));
        }
    }
    failures("recognition", &bad)?;
    within(
        Duration::from_secs(30),
        start,
        "5000 line digraphs recognized".into(),
    )
}

fn roundtrip_ok(g: &Digraph) -> bool {
    let line = straight_convert(g).unlabeled();
    match reverse_convert(&RoleMatrix::new(Role::R, line)) {
        Ok(root) => root.vertex_map(g).is_some() && isomorphic(&root.graph, g),
        Err(_) => false,
    }
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    let mut cases = 0;
    let mut classes = 0;
    for n in 2..=6 {
        for g in entrance_exit_classes(n) {
            classes += 1;
            cases += 1;
            if !roundtrip_ok(&g) {
                bad.push(arcs(&g));
            }
        }
    }
    let mut rng = seeded(3);
    while cases < 12_000 {
        let n = rng.gen_range(2..=6);
        let p = rng.gen_range(0.1..0.7);
        let g = random_entrance_exit(&mut rng, n, p);
        cases += 1;
        if !roundtrip_ok(&g) {
            bad.push(arcs(&g));
        }
    }
    failures("round-trip", &bad)?;
    Ok(format!(
        "{cases} cases ({classes} isomorphism classes plus seeded samples)"
    ))
}

fn closure_on(g: &Digraph, n: usize) -> Vec<Vec<bool>> {
    transitive_closure(g)
        .into_iter()
        .take(n)
        .map(|row| row.into_iter().take(n).collect())
        .collect()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(4);
    let mut bad = Vec::new();
    let mut worst = 0.0f64;
    for _ in 0..5000 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.05..0.6);
        let g = random_digraph(&mut rng, n, p);
        let l = RoleMatrix::new(Role::L, g.clone());
        let closure = closure_on(&g, n);
        for canonical in [false, true] {
            let report = if canonical {
                normalize_canonical(&l)
            } else {
                quasi_normalize(&l)
            };
            let report = match report {
                Ok(r) => r,
                Err(e) => {
                    bad.push(format!("{} ({e})", arcs(&g)));
                    continue;
                }
            };
            worst = worst.max(report.s_q as f64 / insertion_cap(n) as f64);
            let out = &report.result;
            let passes = if canonical {
                is_canonical(out).canonical == Some(true)
            } else {
                is_quasi_canonical(out)
                    .map(|v| v.quasi_canonical)
                    .unwrap_or(false)
            };
            let reduced = reduce(out, ReduceScope::Inserted, Preserve::Nothing).result;
            let checks = [
                (
                    "converged",
                    report.converged && report.s_q <= insertion_cap(n),
                ),
                ("form", passes),
                ("reduce", reduced.graph() == &g),
                ("undo", undo_normalization(&report).graph() == &g),
                ("closure", closure_on(out.graph(), n) == closure),
            ];
            for (what, ok) in checks {
                if !ok {
                    bad.push(format!("{what} canonical={canonical} {}", arcs(&g)));
                }
            }
        }
    }
    failures("normalization", &bad)?;
    within(
        Duration::from_secs(300),
        start,
        format!("10000 runs, largest insertions/cap ratio {worst:.3}"),
    )
}

/// Single entrance/exit corpus: every isomorphism class up to 6 vertexes and
/// seeded samples up to 8.
fn growth_corpus() -> Vec<Digraph> {
    let mut corpus: Vec<Digraph> = (2..=6).flat_map(entrance_exit_classes).collect();
    let mut rng = seeded(5);
    for _ in 0..500 {
        let n = rng.gen_range(7..=8);
        let p = rng.gen_range(0.1..0.4);
        corpus.push(random_entrance_exit(&mut rng, n, p));
        corpus.push(random_acyclic_entrance_exit(&mut rng, n, p));
    }
    corpus
}

fn criterion_5(corpus: &[Digraph]) -> Outcome {
    let mut bad = Vec::new();
    let mut counts = [0usize; 3];
    let mut capped = 0;
    for g in corpus {
        if weak_components(g) == 1 {
            let observed = cyclomatic_number(&straight_convert(g)) - cyclomatic_number(g);
            if observed != delta_nu(g) {
                bad.push(format!("delta-nu {} observed {observed}", arcs(g)));
            }
        }
        let trace = iterate_convert(
            g,
            &ConvertOptions::new(6, AugmentMode::Faithful).without_labels(),
        )
        .map_err(|e| e.to_string())?;
        capped += usize::from(trace.cap_event.is_some());
        let ns: Vec<i128> = trace.ns().iter().map(|&x| x as i128).collect();
        let class = classify_graph(g).class;
        counts[class as usize] += 1;
        if class == GraphClass::H1 {
            let d = ns[1] - ns[0];
            if ns.len() != 7
                || ns
                    .iter()
                    .enumerate()
                    .any(|(j, &x)| x != ns[0] + d * j as i128)
            {
                bad.push(format!("linear law {} ns {ns:?}", arcs(g)));
            }
        } else {
            let pred = predict_growth(g, 6, AugmentMode::Faithful);
            if pred.n[..ns.len()] != ns[..] {
                bad.push(format!(
                    "recurrence {} observed {ns:?} predicted {:?}",
                    arcs(g),
                    pred.n
                ));
            }
        }
    }
    failures("growth-law", &bad)?;
    Ok(format!(
        "{} graphs (H1 {}, H2 {}, H3 {}), {capped} stopped at the size cap",
        corpus.len(),
        counts[0],
        counts[1],
        counts[2]
    ))
}

/// Conversion indexes (0-based) at which `ν` rises, up to `steps` or the cap.
fn growth_steps(
    g: &Digraph,
    steps: usize,
    stop_after: usize,
) -> Result<(Vec<usize>, bool), String> {
    let opts = ConvertOptions::new(steps, AugmentMode::Faithful)
        .without_labels()
        .with_cap(DEFAULT_SIZE_CAP);
    let mut conv = Converter::new(g, &opts).map_err(|e| e.to_string())?;
    let mut rises = Vec::new();
    let mut nu = cyclomatic_number(g);
    for j in 0..steps {
        if conv.advance().map_err(|e| e.to_string())?.is_none() {
            return Ok((rises, true));
        }
        let next = cyclomatic_number(conv.current());
        if next > nu {
            rises.push(j);
            if rises.len() >= stop_after {
                break;
            }
        }
        nu = next;
    }
    Ok((rises, false))
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let mut counts = [0usize; 3];
    let exhaustive = (2..=6).flat_map(entrance_exit_classes);
    // H2 needs at least 7 vertexes
    let mut rng = seeded(6);
    let sampled: Vec<Digraph> = (0..1000)
        .map(|i| {
            let n = rng.gen_range(7..=9);
            let p = rng.gen_range(0.1..0.4);
            if i % 2 == 0 {
                random_acyclic_entrance_exit(&mut rng, n, p)
            } else {
                random_entrance_exit(&mut rng, n, p)
            }
        })
        .collect();
    for g in exhaustive.chain(sampled) {
        let report = classify_graph(&g);
        counts[report.class as usize] += 1;
        let (rises6, _) = growth_steps(&g, 6, usize::MAX)?;
        if (report.class == GraphClass::H1) != rises6.is_empty() {
            bad.push(format!(
                "{} class {} rises {rises6:?}",
                arcs(&g),
                report.class
            ));
        }
        match report.class {
            GraphClass::H1 => {}
            GraphClass::H2 => {
                if rises6.first().copied() != report.j_max {
                    bad.push(format!(
                        "{} j_max {:?} first rise {:?}",
                        arcs(&g),
                        report.j_max,
                        rises6.first()
                    ));
                }
            }
            GraphClass::H3 => {
                let (rises, capped) = growth_steps(&g, 10, 2)?;
                if rises.len() < 2 {
                    bad.push(format!("{} rises {rises:?} capped {capped}", arcs(&g)));
                }
            }
        }
    }
    failures("class-boundary", &bad)?;
    Ok(format!(
        "H1 {}, H2 {}, H3 {} over all classes up to 6 vertexes and 1000 samples of 7 to 9",
        counts[0], counts[1], counts[2]
    ))
}

fn hamilton_case(g: &Digraph, bad: &mut Vec<String>) {
    let oracle = brute_force_hamilton(g, ORACLE_BOUND).expect("within bound");
    match hamilton_cycles_via_duality(g) {
        Ok(cycles) => {
            if cycles.len() != oracle.len()
                || cycles != oracle
                || !cycles.iter().all(|c| is_hamilton_cycle(g, c))
            {
                bad.push(format!(
                    "{} duality {} oracle {}",
                    arcs(g),
                    cycles.len(),
                    oracle.len()
                ));
            }
        }
        Err(e) => bad.push(format!("{} error {e}", arcs(g))),
    }
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut exhaustive = 0;
    for n in 1..=5 {
        for g in digraph_classes(n) {
            exhaustive += 1;
            hamilton_case(&g, &mut bad);
        }
    }
    let mut rng = seeded(7);
    for _ in 0..2000 {
        let n = rng.gen_range(1..=9);
        let p = rng.gen_range(0.1..0.6);
        hamilton_case(&random_digraph(&mut rng, n, p), &mut bad);
    }
    failures("counting", &bad)?;
    within(
        Duration::from_secs(300),
        start,
        format!("{exhaustive} exhaustive classes and 2000 random graphs"),
    )
}

fn criterion_8(dir: &Path) -> Outcome {
    let mut files: Vec<String> = std::fs::read_dir(DATA)
        .map_err(|e| e.to_string())?
        .map(|e| e.expect("dir entry").path().display().to_string())
        .collect();
    let mut rng = seeded(8);
    for i in 0..30 {
        let n = rng.gen_range(2..=7);
        let g = if i % 2 == 0 {
            random_entrance_exit(&mut rng, n, 0.3)
        } else {
            random_digraph(&mut rng, n, 0.35)
        };
        let path = dir.join(format!("g{i}.txt"));
        std::fs::write(&path, emit(&g)).map_err(|e| e.to_string())?;
        files.push(path.display().to_string());
    }
    files.sort();
    let verbs: &[&[&str]] = &[
        &["check"],
        &["check", "--json"],
        &["normalize"],
        &["normalize", "--target", "quasi", "--reduce", "--json"],
        &["convert", "--steps", "4"],
        &["convert", "--steps", "3", "--format", "dot"],
        &[
            "convert",
            "--steps",
            "3",
            "--format",
            "labels",
            "--augment",
            "never",
        ],
        &["convert", "--steps", "3", "--format", "arcs", "--json"],
        &["convert", "--reverse"],
        &["classify", "--verify", "5"],
        &["classify", "--json"],
        &["grow", "--steps", "5", "--predicted"],
        &["grow", "--steps", "5", "--faithful", "--json"],
        &["hamilton", "--list", "--oracle"],
        &["roundtrip"],
        &["roundtrip", "--json"],
    ];
    let mut runs = 0;
    let mut bad = Vec::new();
    for file in &files {
        for verb in verbs {
            let mut args: Vec<&str> = verb.to_vec();
            args.push(file);
            let a = run_cli(&args);
            let b = run_cli(&args);
            runs += 2;
            if a != b {
                bad.push(format!("{args:?}"));
            }
            if a.0 == 2 {
                // input errors only come from the entrance/exit requirement
                if !a.2.contains("single-entrance/exit") {
                    bad.push(format!("{args:?} unexpected input error: {}", a.2));
                }
            }
        }
    }
    failures("determinism", &bad)?;
    Ok(format!(
        "{runs} runs over {} files and {} verb variants",
        files.len(),
        verbs.len()
    ))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let corpus = growth_corpus();
    assert!(corpus.iter().all(is_entrance_exit));
    let criteria: Vec<Criterion> = vec![
        ("nu trace of the example graph", Box::new(criterion_1)),
        ("line-digraph recognition", Box::new(criterion_2)),
        ("straight/reverse round trip", Box::new(criterion_3)),
        ("normalization", Box::new(criterion_4)),
        ("growth laws", Box::new(|| criterion_5(&corpus))),
        ("class boundary", Box::new(criterion_6)),
        ("Hamilton counting identity", Box::new(criterion_7)),
        ("CLI determinism", Box::new(|| criterion_8(dir.path()))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} ({name}): PASS {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
