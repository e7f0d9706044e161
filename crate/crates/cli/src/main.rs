//! `srdual` command-line front end.
//!
//! Exit codes: 0 when the command succeeds (or the property holds), 1 when a
//! checked property fails (a witness is printed), 2 on usage, parse or
//! input errors.

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use srdual::constructions::{table1_value, CellStatus};
use srdual::{
    bounds, buchsbaum_witness, build, enumerate_mu, export_dot, export_json, glue, is_connected,
    is_locally_connected, is_s2, parse_facet_file, serialize_facet_file, BuchsbaumFailure,
    Distance, DualGraph, Family, Field, GlueSpec, LabelForm, Params, S2Verdict, SearchConfig,
    SimplicialComplex, Tokenize, VertexSet,
};

#[derive(Parser)]
#[command(
    name = "srdual",
    version,
    about = "Dual graphs of Stanley-Reisner complexes and Serre's condition (S2)"
)]
struct Cli {
    /// Wrap the output in a JSON object.
    #[arg(long, global = true)]
    json: bool,
    /// Read and write facets as runs of one-character vertex names (`ABC`).
    #[arg(long, global = true)]
    letters: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test a property of the complex in FILE (`-` reads stdin).
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
        /// Coefficient field characteristic for `buchsbaum` (default: both).
        #[arg(long, value_parser = parse_field)]
        field: Option<Field>,
    },
    /// Dual-graph diameter, or the distance between two facets.
    Diameter {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["FACET", "FACET"])]
        pair: Option<Vec<String>>,
        /// Also print a shortest path.
        #[arg(long)]
        path: bool,
    },
    /// Export the dual graph.
    DualGraph {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: GraphFormatArg,
        #[arg(long, value_enum, default_value_t = Labels::Facet)]
        labels: Labels,
    },
    /// Generators of the Alexander dual ideal, one monomial per line.
    AlexanderDual { file: PathBuf },
    /// Glue FILE_B onto FILE_A, identifying vertices `a=b` (a in A, b in B).
    Glue {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        identify: Vec<String>,
        #[arg(long, default_value_t = 2)]
        level: usize,
        /// Write the glued complex here instead of stdout.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Build a named family and write it as a facet file.
    Construct {
        family: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Exhaustive search for the largest (S2) dual-graph diameter.
    SearchMu {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget_seconds: Option<f64>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Skip subtrees once the incumbent meets the best upper bound.
        #[arg(long)]
        prune_with_bounds: bool,
        #[arg(long, default_value_t = 4)]
        split_depth: usize,
    },
    /// Upper bounds on the diameter for facet size D on N vertices.
    Bounds {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Build every table witness and compare its diameter with the table.
    VerifyTable,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Pure,
    Connected,
    LocallyConnected,
    S2,
    Buchsbaum,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormatArg {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Labels {
    Facet,
    Complement,
}

fn parse_field(s: &str) -> std::result::Result<Field, String> {
    match s {
        "0" => Ok(Field::Rational),
        "2" => Ok(Field::GF2),
        _ => Err("expected 0 or 2".into()),
    }
}

/// Text for humans, a JSON value for `--json`, and the exit code.
struct Report {
    text: String,
    json: Value,
    code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            code: 0,
        }
    }
}

struct Ctx {
    mode: Tokenize,
}

impl Ctx {
    fn read(&self, path: &Path) -> Result<SimplicialComplex> {
        let text = if path == Path::new("-") {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        } else {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        };
        let parsed = parse_facet_file(&text, self.mode)
            .with_context(|| format!("parsing {}", path.display()))?;
        for w in &parsed.warnings {
            eprintln!("warning: {}: {w}", path.display());
        }
        Ok(parsed.complex)
    }
}

fn set_text(cx: &SimplicialComplex, s: VertexSet) -> String {
    if s.is_empty() {
        "{}".into()
    } else {
        cx.label(s)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("json")
                );
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let ctx = Ctx {
        mode: if cli.letters {
            Tokenize::Letters
        } else {
            Tokenize::Whitespace
        },
    };
    let (name, mut report) = match &cli.command {
        Command::Check {
            file,
            property,
            field,
        } => ("check", check(&ctx, file, *property, *field)?),
        Command::Diameter { file, pair, path } => {
            ("diameter", diameter(&ctx, file, pair.as_deref(), *path)?)
        }
        Command::DualGraph {
            file,
            format,
            labels,
        } => ("dual-graph", dual_graph(&ctx, file, *format, *labels)?),
        Command::AlexanderDual { file } => ("alexander-dual", alexander_dual(&ctx, file)?),
        Command::Glue {
            file_a,
            file_b,
            identify,
            level,
            output,
        } => (
            "glue",
            glue_cmd(
                &ctx,
                file_a,
                file_b,
                identify,
                *level,
                output.as_deref(),
                cli.json,
            )?,
        ),
        Command::Construct {
            family,
            k,
            j,
            d,
            n,
            output,
        } => {
            let p = Params {
                k: *k,
                j: *j,
                d: *d,
                n: *n,
            };
            ("construct", construct(&ctx, family, p, output)?)
        }
        Command::SearchMu {
            d,
            n,
            threads,
            budget_nodes,
            budget_seconds,
            checkpoint,
            prune_with_bounds,
            split_depth,
        } => {
            let max_time = match budget_seconds {
                Some(s) if !(s.is_finite() && *s >= 0.0) => bail!("--budget-seconds must be >= 0"),
                Some(s) => Some(Duration::from_secs_f64(*s)),
                None => None,
            };
            let config = SearchConfig {
                threads: *threads,
                max_nodes: *budget_nodes,
                max_time,
                prune_with_bounds: *prune_with_bounds,
                split_depth: *split_depth,
                checkpoint: checkpoint.clone(),
            };
            ("search-mu", search_mu(*d, *n, &config)?)
        }
        Command::Bounds { d, n } => ("bounds", bounds_cmd(*d, *n)?),
        Command::VerifyTable => ("verify-table", verify_table_cmd()?),
    };
    report.json = json!({
        "command": name,
        "exit_code": report.code,
        "result": report.json,
    });
    Ok(report)
}

fn check(ctx: &Ctx, file: &Path, property: Property, field: Option<Field>) -> Result<Report> {
    let cx = ctx.read(file)?;
    if field.is_some() && !matches!(property, Property::Buchsbaum) {
        bail!("--field only applies to --property buchsbaum");
    }
    let mut text = String::new();
    let (label, holds, witness) = match property {
        Property::Pure => {
            let witness = (!cx.is_pure()).then(|| {
                let smallest = cx.facets().iter().min_by_key(|f| f.len()).copied().unwrap();
                let largest = cx.facets().iter().max_by_key(|f| f.len()).copied().unwrap();
                json!({ "smaller": set_text(&cx, smallest), "larger": set_text(&cx, largest) })
            });
            if let Some(w) = &witness {
                let _ = writeln!(
                    text,
                    "witness: {} and {} differ in size",
                    w["smaller"].as_str().unwrap(),
                    w["larger"].as_str().unwrap()
                );
            }
            ("pure", witness.is_none(), witness)
        }
        Property::Connected => {
            let holds = is_connected(&cx);
            let witness = (!holds).then(|| {
                let (a, b) = separated_facets(&cx);
                let _ = writeln!(
                    text,
                    "witness: {} and {} lie in different components",
                    set_text(&cx, a),
                    set_text(&cx, b)
                );
                json!({ "u": set_text(&cx, a), "v": set_text(&cx, b) })
            });
            ("connected", holds, witness)
        }
        Property::LocallyConnected => {
            let verdict = is_locally_connected(&cx)?;
            let witness = s2_witness(&cx, &verdict, &mut text);
            ("locally-connected", verdict.holds, witness)
        }
        Property::S2 => {
            let verdict = is_s2(&cx)?;
            let witness = s2_witness(&cx, &verdict, &mut text);
            ("s2", verdict.holds, witness)
        }
        Property::Buchsbaum => {
            let fields = match field {
                Some(f) => vec![f],
                None => vec![Field::GF2, Field::Rational],
            };
            let mut all = true;
            let mut per_field = Vec::new();
            for f in fields {
                let failure = buchsbaum_witness(&cx, f)?;
                let _ = writeln!(
                    text,
                    "buchsbaum over {f}: {}",
                    if failure.is_none() { "holds" } else { "fails" }
                );
                let witness = failure.map(|fail| match fail {
                    BuchsbaumFailure::NotPure => {
                        let _ = writeln!(text, "witness: complex is not pure");
                        json!({ "reason": "not_pure" })
                    }
                    BuchsbaumFailure::Link { face, betti } => {
                        let _ = writeln!(text, "witness: link of {} has reduced Betti numbers {:?} (from dimension -1)", set_text(&cx, face), betti.as_slice());
                        json!({ "reason": "link", "face": set_text(&cx, face), "reduced_betti": betti.as_slice() })
                    }
                });
                all &= witness.is_none();
                per_field.push(json!({ "field": f.to_string(), "holds": witness.is_none(), "witness": witness }));
            }
            let code = u8::from(!all);
            return Ok(Report {
                text,
                json: json!({ "property": "buchsbaum", "holds": all, "fields": per_field }),
                code,
            });
        }
    };
    let text = format!("{label}: {}\n{text}", if holds { "holds" } else { "fails" });
    Ok(Report {
        text,
        json: json!({ "property": label, "holds": holds, "witness": witness }),
        code: u8::from(!holds),
    })
}

fn s2_witness(cx: &SimplicialComplex, verdict: &S2Verdict, text: &mut String) -> Option<Value> {
    match verdict.failure? {
        srdual::S2Failure::NotPure => {
            let _ = writeln!(text, "witness: complex is not pure");
            Some(json!({ "reason": "not_pure" }))
        }
        srdual::S2Failure::Separated(w) => {
            let _ = writeln!(
                text,
                "witness: {} and {} are not joined by facets containing {}",
                set_text(cx, w.u),
                set_text(cx, w.v),
                set_text(cx, w.separator)
            );
            Some(json!({
                "reason": "separated",
                "u": set_text(cx, w.u),
                "v": set_text(cx, w.v),
                "separator": set_text(cx, w.separator),
            }))
        }
    }
}

/// First facet and the first facet outside its connected component.
fn separated_facets(cx: &SimplicialComplex) -> (VertexSet, VertexSet) {
    let facets = cx.facets();
    let mut reached = vec![false; facets.len()];
    reached[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..facets.len() {
            if !reached[j] && !facets[i].intersection(facets[j]).is_empty() {
                reached[j] = true;
                stack.push(j);
            }
        }
    }
    let other = reached.iter().position(|r| !r).expect("disconnected");
    (facets[0], facets[other])
}

fn diameter(ctx: &Ctx, file: &Path, pair: Option<&[String]>, with_path: bool) -> Result<Report> {
    let cx = ctx.read(file)?;
    let g = DualGraph::build(&cx)?;
    let (a, b, dist) = match pair {
        Some([a, b]) => {
            let (a, b) = (cx.parse_set(a)?, cx.parse_set(b)?);
            let (ia, ib) = (
                g.node_of(a)
                    .ok_or_else(|| anyhow!("{} is not a facet", set_text(&cx, a)))?,
                g.node_of(b)
                    .ok_or_else(|| anyhow!("{} is not a facet", set_text(&cx, b)))?,
            );
            (ia, ib, g.distance_pair(a, b)?)
        }
        Some(_) => bail!("--pair takes two facets"),
        None => g.diametral_pair()?,
    };
    let key = if pair.is_some() {
        "distance"
    } else {
        "diameter"
    };
    let mut text = format!("{key}: {dist}\n");
    let (fa, fb) = (g.node_facets()[a], g.node_facets()[b]);
    let _ = writeln!(text, "pair: {} {}", set_text(&cx, fa), set_text(&cx, fb));
    let mut out = json!({
        key: dist.finite(),
        "pair": [set_text(&cx, fa), set_text(&cx, fb)],
    });
    if with_path {
        let path: Option<Vec<String>> = g.shortest_path(a, b).map(|p| {
            p.into_iter()
                .map(|i| set_text(&cx, g.node_facets()[i]))
                .collect()
        });
        match &path {
            Some(p) => {
                let _ = writeln!(text, "path: {}", p.join(" -> "));
            }
            None => text.push_str("path: none\n"),
        }
        out["path"] = json!(path);
    }
    if dist == Distance::Unbounded {
        out[key] = json!("unbounded");
    }
    Ok(Report::ok(text, out))
}

fn dual_graph(ctx: &Ctx, file: &Path, format: GraphFormatArg, labels: Labels) -> Result<Report> {
    let cx = ctx.read(file)?;
    let g = DualGraph::build(&cx)?;
    let form = match labels {
        Labels::Facet => LabelForm::Facet,
        Labels::Complement => LabelForm::Complement,
    };
    let (text, value) = match format {
        GraphFormatArg::Dot => {
            let dot = export_dot(&g, form);
            (dot.clone(), json!({ "format": "dot", "graph": dot }))
        }
        GraphFormatArg::Json => {
            let text = export_json(&g, form);
            let parsed: Value = serde_json::from_str(&text)?;
            (
                format!("{text}\n"),
                json!({ "format": "json", "graph": parsed }),
            )
        }
    };
    Ok(Report::ok(text, value))
}

fn alexander_dual(ctx: &Ctx, file: &Path) -> Result<Report> {
    let cx = ctx.read(file)?;
    let ideal = cx.alexander_dual_ideal()?;
    let gens: Vec<String> = ideal
        .generators()
        .iter()
        .map(|&g| ideal.monomial(g))
        .collect();
    let mut text = String::new();
    for g in &gens {
        let _ = writeln!(text, "{g}");
    }
    Ok(Report::ok(
        text,
        json!({ "variables": ideal.names(), "generators": gens, "degree": ideal.degree() }),
    ))
}

fn glue_cmd(
    ctx: &Ctx,
    file_a: &Path,
    file_b: &Path,
    identify: &[String],
    level: usize,
    output: Option<&Path>,
    json_mode: bool,
) -> Result<Report> {
    let left = ctx.read(file_a)?;
    let right = ctx.read(file_b)?;
    let mut pairs = Vec::new();
    for item in identify {
        let (a, b) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("--identify expects a=b, got {item:?}"))?;
        let la = left
            .vertex_by_name(a.trim())
            .ok_or_else(|| anyhow!("{a:?} is not a vertex of {}", file_a.display()))?;
        let rb = right
            .vertex_by_name(b.trim())
            .ok_or_else(|| anyhow!("{b:?} is not a vertex of {}", file_b.display()))?;
        pairs.push((rb, la));
    }
    let glued = glue(&GlueSpec::new(left, right, pairs, level))?;
    let cx = &glued.complex;
    let file = serialize_facet_file(cx, ctx.mode);
    let checked = level.min(2);
    let mut summary = String::new();
    let _ = writeln!(summary, "vertices: {}", cx.n());
    let _ = writeln!(summary, "facets: {}", cx.num_facets());
    let overlap: Vec<String> = glued.overlap.iter().map(|&f| set_text(cx, f)).collect();
    let _ = writeln!(summary, "overlap: {}", overlap.join(" "));
    for (side, holds) in [
        ("A", glued.left_holds),
        ("B", glued.right_holds),
        ("result", glued.result_holds),
    ] {
        let _ = writeln!(
            summary,
            "(S{checked}) {side}: {}",
            if holds { "holds" } else { "fails" }
        );
    }
    let text = match output {
        Some(path) => {
            std::fs::write(path, &file).with_context(|| format!("writing {}", path.display()))?;
            let _ = writeln!(summary, "wrote {}", path.display());
            summary
        }
        None => {
            if !json_mode {
                eprint!("{summary}");
            }
            file.clone()
        }
    };
    let facets: Vec<String> = cx.facets().iter().map(|&f| set_text(cx, f)).collect();
    Ok(Report::ok(
        text,
        json!({
            "vertices": cx.names(),
            "facets": facets,
            "overlap": overlap,
            "shared_facets": glued.shared_facets,
            "checked_level": checked,
            "left_holds": glued.left_holds,
            "right_holds": glued.right_holds,
            "result_holds": glued.result_holds,
        }),
    ))
}

fn construct(ctx: &Ctx, name: &str, params: Params, output: &Path) -> Result<Report> {
    let family = Family::from_name(name, params)?;
    let cx = build(family)?;
    std::fs::write(output, serialize_facet_file(&cx, ctx.mode))
        .with_context(|| format!("writing {}", output.display()))?;
    let diameter = srdual::complex_diameter(&cx)?;
    let s2 = is_s2(&cx)?.holds;
    let text = format!(
        "family: {family}\nvertices: {}\nfacets: {}\ndiameter: {diameter}\ns2: {}\nwrote {}\n",
        cx.n(),
        cx.num_facets(),
        if s2 { "holds" } else { "fails" },
        output.display()
    );
    Ok(Report::ok(
        text,
        json!({
            "family": family.to_string(),
            "vertices": cx.n(),
            "facets": cx.num_facets(),
            "diameter": diameter.finite(),
            "s2": s2,
            "output": output.display().to_string(),
        }),
    ))
}

fn search_mu(d: usize, n: usize, config: &SearchConfig) -> Result<Report> {
    let r = enumerate_mu(d, n, config)?;
    let witness: Option<Vec<String>> = r
        .witness
        .as_ref()
        .map(|cx| cx.facets().iter().map(|&f| set_text(cx, f)).collect());
    let hist: Vec<String> = r
        .histogram
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    let stop = serde_json::to_value(r.stop)?;
    let mut text = String::new();
    let _ = writeln!(text, "d: {d}\nn: {n}\nmu: {}", r.mu);
    let _ = writeln!(text, "optimal: {}\nexhaustive: {}", r.optimal, r.exhaustive);
    let _ = writeln!(text, "stop: {}", stop.as_str().unwrap_or_default());
    let _ = writeln!(text, "upper bound: {}", r.bound);
    let _ = writeln!(text, "canonical nodes: {}", r.nodes_explored);
    let _ = writeln!(text, "spanning nodes evaluated: {}", r.evaluated);
    let _ = writeln!(text, "s2 classes: {}", r.s2_found);
    let _ = writeln!(text, "diameter histogram: {}", hist.join(" "));
    let _ = writeln!(text, "tasks: {} (resumed {})", r.tasks, r.tasks_resumed);
    let _ = writeln!(text, "elapsed: {:.3}s", r.elapsed.as_secs_f64());
    match &witness {
        Some(w) => {
            let _ = writeln!(text, "witness: {}", w.join(" "));
        }
        None => text.push_str("witness: none\n"),
    }
    Ok(Report::ok(
        text,
        json!({
            "d": d,
            "n": n,
            "mu": r.mu,
            "optimal": r.optimal,
            "exhaustive": r.exhaustive,
            "stop": stop,
            "bound_pruned": r.bound_pruned,
            "upper_bound": r.bound,
            "nodes_explored": r.nodes_explored,
            "evaluated": r.evaluated,
            "s2_found": r.s2_found,
            "histogram": r.histogram,
            "tasks": r.tasks,
            "tasks_resumed": r.tasks_resumed,
            "elapsed_seconds": r.elapsed.as_secs_f64(),
            "witness": witness,
        }),
    ))
}

fn bounds_cmd(d: usize, n: usize) -> Result<Report> {
    let b = bounds(d, n)?;
    let mut text = String::new();
    for (name, value) in b.entries() {
        let _ = writeln!(text, "{name}: {value}");
    }
    let _ = writeln!(text, "best: {}", b.best);
    Ok(Report::ok(text, serde_json::to_value(b)?))
}

fn verify_table_cmd() -> Result<Report> {
    let start = Instant::now();
    let checks = srdual::verify_table()?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for c in &checks {
        let printed = c
            .printed
            .map(|v| v.to_string())
            .unwrap_or_else(|| format!("{} (n-2)", c.n - 2));
        let status = match c.status {
            CellStatus::Reproduced => "reproduced".to_string(),
            CellStatus::BoundMet => "lower bound met".to_string(),
            CellStatus::Conflict { searched } => {
                format!("table conflict: exhaustive search gives {searched}")
            }
            CellStatus::Mismatch => {
                mismatches += 1;
                "MISMATCH".to_string()
            }
        };
        let _ = writeln!(
            text,
            "d={} n={:<2} table={:<8} witness={:<3} s2={:<3} {status}",
            c.d,
            c.n,
            printed,
            c.witness_diameter.to_string(),
            if c.s2 { "yes" } else { "no" },
        );
        rows.push(json!({
            "d": c.d,
            "n": c.n,
            "table": c.printed.map(|v| v.to_string()),
            "in_table": table1_value(c.d, c.n).is_some(),
            "witness_diameter": c.witness_diameter.finite(),
            "s2": c.s2,
            "status": status,
        }));
    }
    let elapsed = start.elapsed().as_secs_f64();
    let _ = writeln!(
        text,
        "cells: {}, mismatches: {mismatches}, elapsed: {elapsed:.3}s",
        checks.len()
    );
    Ok(Report {
        text,
        json: json!({ "cells": rows, "mismatches": mismatches, "elapsed_seconds": elapsed }),
        code: u8::from(mismatches > 0),
    })
}
