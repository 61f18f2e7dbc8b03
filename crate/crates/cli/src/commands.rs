use std::fmt::Write as _;

use fairrank::fixpoint::{linear_fair_ranking, FixpointError, RecalcConfig, SolverReport};
use fairrank::fraction::display;
use fairrank::optimize::{
    emn_sweep_composite, min_backward_fair, min_backward_injective, reversal_bound_check,
    verify_copeland_upper_bound, EmnReport, OptimizeError, SampleMode,
};
use fairrank::ranking::{backward_arcs, check_fairness, BackwardReport, Ranking};
use fairrank::tournament::{composite, random, rotational, Tournament};
use serde_json::{json, Value};

use crate::{
    grid, read_input, write_file, CheckArgs, CliError, DumpArgs, EmnArgs, Family, Format, GenArgs,
    Method, MinimizeArgs, Output, RankArgs, Space,
};

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn no_csv(verb: &str, format: Format) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Input(format!(
            "csv output is not available for {verb}"
        )));
    }
    Ok(())
}

fn load_tournament(path: &str) -> Result<Tournament, CliError> {
    Tournament::parse(&read_input(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn load_ranking(path: &str) -> Result<Ranking, CliError> {
    Ranking::parse(&read_input(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn optimize_error(e: OptimizeError) -> CliError {
    match e {
        OptimizeError::EmptyClass(_) | OptimizeError::Inconsistent(_) => {
            CliError::Verification(e.to_string())
        }
        _ => CliError::input(e),
    }
}

pub fn gen(args: &GenArgs, format: Format) -> Result<Output, CliError> {
    no_csv("gen", format)?;
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::Input(format!("--{flag} is required for this family")))
    };
    let t = match args.family {
        Family::Rotational => rotational(need(args.l, "l")?),
        Family::Composite => composite(need(args.l, "l")?),
        Family::Random => random(need(args.n, "n")?, args.seed),
    }
    .map_err(CliError::input)?;
    let text = if args.edges {
        t.to_edge_list()
    } else {
        t.to_text()
    };
    let summary = format!("n={} edges={}\n", t.len(), t.arc_count());
    let json = |tournament: Option<&str>| {
        let mut v = json!({"n": t.len(), "edges": t.arc_count()});
        if let Some(text) = tournament {
            v["tournament"] = Value::from(text);
        }
        to_json(&v)
    };
    match (&args.out, format) {
        (Some(path), Format::Json) => {
            write_file(path, &text)?;
            Ok(Output::ok(json(None)))
        }
        (Some(path), _) => {
            write_file(path, &text)?;
            Ok(Output::ok(summary))
        }
        (None, Format::Json) => Ok(Output::ok(json(Some(&text)))),
        (None, _) => Ok(Output {
            stdout: text,
            stderr: summary,
            pass: true,
        }),
    }
}

fn solver_summary(report: &SolverReport) -> String {
    let mut s = String::new();
    for (i, c) in report.components.iter().enumerate() {
        let vertices: Vec<String> = c.vertices.iter().map(|v| (v + 1).to_string()).collect();
        writeln!(
            s,
            "component {}: vertices {}; lambda {:.9}; residual {:.3e}; iterations {}",
            i + 1,
            vertices.join(" "),
            c.lambda,
            c.residual,
            c.iterations
        )
        .unwrap();
    }
    writeln!(s, "escalations: {}", report.escalations).unwrap();
    s
}

pub fn rank(args: &RankArgs, format: Format) -> Result<Output, CliError> {
    let t = load_tournament(&args.input)?;
    let (ranking, solver) = match args.method {
        Method::Copeland => (Ranking::out_degree(&t), None),
        Method::LinearFair => match linear_fair_ranking(&t, &RecalcConfig::default()) {
            Ok(report) => (report.ranking.clone(), Some(report)),
            Err(FixpointError::VerificationFailed { report, .. }) => {
                return Err(CliError::Verification(format!(
                    "linear-fair ranking failed verification\n{}",
                    to_json(&report)
                )))
            }
            Err(e) => return Err(CliError::Verification(e.to_string())),
        },
    };
    let backward = backward_arcs(&t, &ranking).map_err(CliError::input)?;
    let mut summary = backward_text(&backward);
    if let Some(report) = &solver {
        summary.push_str(&solver_summary(report));
    }

    let body = match format {
        Format::Text => ranking.to_text(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["vertex", "value"])
                .map_err(|e| CliError::Io(e.to_string()))?;
            for i in 0..ranking.len() {
                w.write_record([(i + 1).to_string(), ranking.values().format_value(i)])
                    .map_err(|e| CliError::Io(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?)
                .expect("csv output is utf-8")
        }
        Format::Json => {
            let mut v = match &solver {
                Some(report) => serde_json::to_value(report).expect("reports serialize"),
                None => json!({ "ranking": ranking_json(&ranking) }),
            };
            v["method"] = Value::from(match args.method {
                Method::Copeland => "copeland",
                Method::LinearFair => "linear-fair",
            });
            v["backward"] = serde_json::to_value(&backward).expect("reports serialize");
            to_json(&v)
        }
    };
    match &args.out {
        Some(path) => {
            write_file(path, &body)?;
            Ok(Output::ok(summary))
        }
        None if format == Format::Text => {
            let comments: String = summary.lines().map(|l| format!("# {l}\n")).collect();
            Ok(Output::ok(body + &comments))
        }
        None => Ok(Output {
            stdout: body,
            stderr: summary,
            pass: true,
        }),
    }
}

fn ranking_json(r: &Ranking) -> Value {
    if r.is_exact() {
        (0..r.len())
            .map(|i| {
                let s = r.values().format_value(i);
                s.parse::<i64>().map(Value::from).unwrap_or(Value::from(s))
            })
            .collect()
    } else {
        Value::from(r.to_f64())
    }
}

fn backward_text(b: &BackwardReport) -> String {
    let share = fairrank::fraction::to_f64(&b.fraction);
    format!("backward: {}/{} ({share:.6})\n", b.count(), b.total)
}

pub fn check(args: &CheckArgs, format: Format) -> Result<Output, CliError> {
    no_csv("check", format)?;
    let t = load_tournament(&args.input)?;
    let mut ranking = load_ranking(&args.ranking)?;
    if let Some(eps) = args.epsilon {
        ranking = ranking.with_epsilon(eps).map_err(CliError::input)?;
    }
    let violation = check_fairness(&t, &ranking, args.class).map_err(CliError::input)?;
    let backward = backward_arcs(&t, &ranking).map_err(CliError::input)?;
    let stdout = match format {
        Format::Json => to_json(&json!({
            "class": args.class,
            "pass": violation.is_none(),
            "violation": violation,
            "backward": backward,
        })),
        _ => {
            let mut s = match &violation {
                None => format!("PASS {}\n", args.class),
                Some(v) => format!("FAIL {}\nviolation: {v}\n", args.class),
            };
            s.push_str(&backward_text(&backward));
            s
        }
    };
    Ok(Output {
        stdout,
        stderr: String::new(),
        pass: violation.is_none(),
    })
}

pub fn minimize(args: &MinimizeArgs, format: Format) -> Result<Output, CliError> {
    no_csv("minimize", format)?;
    let t = load_tournament(&args.input)?;
    let (result, class) = match args.space {
        Space::Injective => (min_backward_injective(&t).map_err(optimize_error)?, None),
        Space::WeakOrders => (
            min_backward_fair(&t, args.class).map_err(optimize_error)?,
            Some(args.class),
        ),
    };
    let stdout = match format {
        Format::Json => {
            let mut v = serde_json::to_value(&result).expect("reports serialize");
            v["class"] = class.map_or(Value::from("inj"), |c| Value::from(c.name()));
            to_json(&v)
        }
        _ => {
            let mut s = String::new();
            let space = match args.space {
                Space::Injective => "injective",
                Space::WeakOrders => "weak-orders",
            };
            writeln!(s, "space: {space}").unwrap();
            if let Some(c) = class {
                writeln!(s, "class: {c}").unwrap();
            }
            writeln!(s, "count: {}", result.count).unwrap();
            writeln!(s, "fraction: {}", display(&result.fraction)).unwrap();
            if !result.exact {
                writeln!(s, "note: minimum over integer level values only").unwrap();
            }
            writeln!(s, "witness:").unwrap();
            s.push_str(&result.witness.to_text());
            s
        }
    };
    Ok(Output::ok(stdout))
}

fn emn_table(report: &EmnReport) -> String {
    let mut s = format!(
        "{:>5} {:>10} {:>14} {:>14}  {:<30} {}\n",
        "l", "n", "edges", "min_backward", "fraction", "bound"
    );
    for r in &report.rows {
        writeln!(
            s,
            "{:>5} {:>10} {:>14} {:>14}  {:<30} {}",
            r.l,
            r.n,
            r.edges,
            r.min_backward,
            display(&r.fraction),
            display(&r.bound)
        )
        .unwrap();
    }
    writeln!(
        s,
        "limit: {}  monotone: {}  below limit: {}",
        display(&report.limit),
        report.monotone,
        report.below_limit
    )
    .unwrap();
    s
}

fn emn_csv(report: &EmnReport) -> Result<String, CliError> {
    let io = |e: csv::Error| CliError::Io(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["l", "n", "edges", "min_backward", "fraction", "bound"])
        .map_err(io)?;
    for r in &report.rows {
        w.write_record([
            r.l.to_string(),
            r.n.to_string(),
            r.edges.to_string(),
            r.min_backward.to_string(),
            r.fraction.to_string(),
            r.bound.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_pairs(pairs: &[(&str, String)]) -> Result<String, CliError> {
    let io = |e: csv::Error| CliError::Io(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(pairs.iter().map(|(k, _)| *k)).map_err(io)?;
    w.write_record(pairs.iter().map(|(_, v)| v.as_str()))
        .map_err(io)?;
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn emn(args: &EmnArgs, format: Format) -> Result<Output, CliError> {
    if args.family.is_some() {
        let lmax = args.lmax.expect("clap requires --lmax with --family");
        let report = emn_sweep_composite(lmax, args.materialize).map_err(optimize_error)?;
        let stdout = match format {
            Format::Json => to_json(&report),
            Format::Csv => emn_csv(&report)?,
            Format::Text => emn_table(&report),
        };
        return Ok(Output {
            stdout,
            stderr: String::new(),
            pass: report.monotone && report.below_limit,
        });
    }
    let (n, mode) = match (args.exhaustive, args.random) {
        (Some(n), _) => (n, SampleMode::Exhaustive),
        (None, Some(n)) => (
            n,
            SampleMode::Random {
                samples: args.samples,
                seed: args.seed,
            },
        ),
        (None, None) => unreachable!("clap requires a mode"),
    };
    if args.reversal {
        let r = reversal_bound_check(n, mode).map_err(optimize_error)?;
        let stdout = match format {
            Format::Json => to_json(&r),
            Format::Csv => csv_pairs(&[
                ("n", r.n.to_string()),
                ("mode", r.mode.to_string()),
                ("instances", r.instances.to_string()),
                ("half_edges", r.half_edges.to_string()),
                ("max_min_backward", r.max_min_backward.to_string()),
                ("holds", r.holds.to_string()),
            ])?,
            Format::Text => format!(
                "n={} mode={} instances={}\nmax injective minimum: {}\nfloor(|E|/2): {}\nholds: {}\nwitness:\n{}",
                r.n, r.mode, r.instances, r.max_min_backward, r.half_edges, r.holds,
                r.witness.to_text()
            ),
        };
        return Ok(Output {
            stdout,
            stderr: String::new(),
            pass: r.holds,
        });
    }
    let r = verify_copeland_upper_bound(n, mode).map_err(optimize_error)?;
    let stdout = match format {
        Format::Json => to_json(&r),
        Format::Csv => csv_pairs(&[
            ("n", r.n.to_string()),
            ("mode", r.mode.to_string()),
            ("instances", r.instances.to_string()),
            ("max_fraction", r.max_fraction.to_string()),
            ("bound", r.bound.to_string()),
            ("within_bound", r.within_bound.to_string()),
            ("below_limit", r.below_limit.to_string()),
        ])?,
        Format::Text => format!(
            "n={} mode={} instances={}\nmax fraction: {}\nbound: {}\nwithin bound: {}\nbelow 3/4: {}\nwitness:\n{}",
            r.n,
            r.mode,
            r.instances,
            display(&r.max_fraction),
            display(&r.bound),
            r.within_bound,
            r.below_limit,
            r.witness.to_text()
        ),
    };
    Ok(Output {
        stdout,
        stderr: String::new(),
        pass: r.within_bound && r.below_limit,
    })
}

pub fn dump(args: &DumpArgs, format: Format) -> Result<Output, CliError> {
    if format != Format::Text {
        return Err(CliError::Input("dump only prints text".into()));
    }
    let t = load_tournament(&args.input)?;
    let ranking = args.ranking.as_deref().map(load_ranking).transpose()?;
    let grid = grid::render(&t, ranking.as_ref()).map_err(CliError::input)?;
    Ok(Output::ok(grid))
}
