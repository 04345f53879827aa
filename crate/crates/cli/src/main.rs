use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use quiverhh::algebra::MonomialAlgebra;
use quiverhh::corpus::{self, EXAMPLES};
use quiverhh::field::Field;
use quiverhh::format;
use quiverhh::fundamental::pi1_rank;
use quiverhh::gluing::{glue_named, GluedAlgebra};
use quiverhh::higher::hh_dim_high;
use quiverhh::strametz::LowDegree;
use quiverhh::verify::fuzz::{run_fuzz, FuzzMode};
use quiverhh::verify::random::RandomSpec;
use quiverhh::verify::{run_checks, CheckId, CheckReport, Status};

/// Like `println!`, but a closed stdout (e.g. piping into `head`) ends the process quietly.
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        if write!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(name = "quiverhh", version, about = "Hochschild cohomology of monomial algebras under arrow gluing")]
struct Cli {
    /// Emit line-delimited JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Override the field of the input algebra: `Q` or `F<p>`, e.g. `F2`.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<Field>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of an algebra: sizes, blocks, center and HH¹ dimensions.
    Info { input: String },
    /// Dimensions of HH^n for a range of degrees.
    Hh {
        input: String,
        #[arg(long, default_value = "0..1", value_parser = parse_degrees)]
        degrees: RangeInclusive<usize>,
    },
    /// Basis of the center Z(A) ≅ Ker δ⁰.
    Center { input: String },
    /// Rank of the fundamental group of the quiver.
    #[command(name = "pi1-rank")]
    Pi1Rank { input: String },
    /// Glue two arrows and print the resulting algebra.
    Glue {
        input: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Name of the glued arrow.
        #[arg(long, default_value = "gamma*")]
        name: String,
    },
    /// Run checks on a gluing.
    Verify {
        input: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value = "all")]
        checks: String,
    },
    /// List the bundled examples, or run every check on them.
    Examples {
        #[arg(long)]
        run: bool,
    },
    /// Run the checks on seeded random gluings.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value = "all")]
        checks: String,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    if s == "Q" {
        return Ok(Field::Rationals);
    }
    let p = s
        .strip_prefix('F')
        .ok_or_else(|| format!("expected `Q` or `F<p>`, got `{s}`"))?
        .trim_start_matches(':');
    let p: u64 = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

fn parse_degrees(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (lo, hi) = s.split_once("..").unwrap_or((s, s));
    let hi = hi.trim_start_matches('=');
    let lo: usize = lo.parse().map_err(|_| format!("bad lower degree in `{s}`"))?;
    let hi: usize = hi.parse().map_err(|_| format!("bad upper degree in `{s}`"))?;
    if lo > hi {
        return Err(format!("empty degree range `{s}`"));
    }
    Ok(lo..=hi)
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn load(input: &str, field: Option<Field>) -> Result<MonomialAlgebra, Failure> {
    let path = Path::new(input);
    let a = if path.exists() {
        let text = fs::read_to_string(path)?;
        format::parse(&text).map_err(|e| Failure(format!("{input}:{e}")))?
    } else if let Ok(e) = corpus::example(input) {
        e.algebra()?
    } else {
        return Err(Failure(format!("no such file or example: {input}")));
    };
    Ok(match field {
        Some(f) => a.with_field(f),
        None => a,
    })
}

fn glue_by_name(a: &MonomialAlgebra, alpha: &str, beta: &str, name: &str) -> Result<GluedAlgebra, Failure> {
    let q = a.quiver();
    let find = |n: &str| q.arrow_by_name(n).ok_or_else(|| Failure(format!("unknown arrow `{n}`")));
    Ok(glue_named(a, find(alpha)?, find(beta)?, name)?)
}

#[derive(Serialize)]
struct JsonReport<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    example: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    instance: Option<u64>,
    check: &'a str,
    status: &'a str,
    lhs: &'a str,
    rhs: &'a str,
    witness: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reproduction: Option<&'a str>,
}

fn emit_report(r: &CheckReport, json: bool, example: Option<&str>, instance: Option<u64>) {
    if json {
        let j = JsonReport {
            example,
            instance,
            check: r.check.name(),
            status: r.status.name(),
            lhs: &r.lhs,
            rhs: &r.rhs,
            witness: r.witness.as_deref(),
            note: r.note.as_deref(),
            reproduction: r.reproduction.as_deref(),
        };
        outln!("{}", serde_json::to_string(&j).expect("serializable"));
        return;
    }
    let prefix = match (example, instance) {
        (Some(e), _) => format!("{e:<20} "),
        (None, Some(i)) => format!("#{i:<6} "),
        _ => String::new(),
    };
    let mut line = format!("{prefix}{:<22} {:<19}", r.check.name(), r.status.name());
    if !r.lhs.is_empty() || !r.rhs.is_empty() {
        line.push_str(&format!(" {} | {}", r.lhs, r.rhs));
    }
    if let Some(w) = &r.witness {
        line.push_str(&format!(" [witness: {w}]"));
    }
    if let Some(n) = &r.note {
        line.push_str(&format!(" ({n})"));
    }
    outln!("{line}");
    if let Some(rep) = &r.reproduction {
        for l in rep.lines() {
            outln!("    {l}");
        }
    }
}

fn emit_kv(json: bool, pairs: &[(&str, serde_json::Value)]) {
    if json {
        let map: serde_json::Map<String, serde_json::Value> =
            pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        outln!("{}", serde_json::Value::Object(map));
    } else {
        for (k, v) in pairs {
            match v {
                serde_json::Value::String(s) => outln!("{k}: {s}"),
                other => outln!("{k}: {other}"),
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let json = cli.json;
    match cli.command {
        Command::Info { input } => {
            let a = load(&input, cli.field)?;
            let q = a.quiver();
            let h = LowDegree::compute(&a);
            emit_kv(
                json,
                &[
                    ("field", a.field().to_string().into()),
                    ("vertices", q.vertex_count().into()),
                    ("arrows", q.arrow_count().into()),
                    ("relations", a.relations().len().into()),
                    ("dim", a.dim().into()),
                    ("blocks", q.component_count().into()),
                    ("radical_square_zero", a.is_radical_square_zero().into()),
                    ("pi1_rank", pi1_rank(&a).into()),
                    ("center_dim", h.hh0_dim().into()),
                    ("hh1_dim", h.hh1_dim().into()),
                ],
            );
            Ok(true)
        }
        Command::Hh { input, degrees } => {
            let a = load(&input, cli.field)?;
            let h = LowDegree::compute(&a);
            for n in degrees {
                let d = match n {
                    0 => h.hh0_dim().to_string(),
                    1 => h.hh1_dim().to_string(),
                    _ => hh_dim_high(&a, n).map_err(|e| Failure(format!("HH^{n}: {e}")))?.to_string(),
                };
                if json {
                    outln!("{}", serde_json::json!({ "degree": n, "dim": d }));
                } else {
                    outln!("HH^{n} = {d}");
                }
            }
            Ok(true)
        }
        Command::Center { input } => {
            let a = load(&input, cli.field)?;
            let h = LowDegree::compute(&a);
            let q0 = h.complex.q0();
            let basis: Vec<String> = h.ker0.rows().iter().map(|r| q0.render(&a, r)).collect();
            if json {
                outln!("{}", serde_json::json!({ "dim": basis.len(), "basis": basis }));
            } else {
                outln!("dim Z = {}", basis.len());
                for b in basis {
                    outln!("  {b}");
                }
            }
            Ok(true)
        }
        Command::Pi1Rank { input } => {
            let a = load(&input, cli.field)?;
            emit_kv(json, &[("pi1_rank", pi1_rank(&a).into())]);
            Ok(true)
        }
        Command::Glue { input, alpha, beta, out, name } => {
            let a = load(&input, cli.field)?;
            let g = glue_by_name(&a, &alpha, &beta, &name)?;
            let text = format::print(g.b());
            match out {
                Some(path) => fs::write(&path, text)?,
                None => out!("{text}"),
            }
            Ok(true)
        }
        Command::Verify { input, alpha, beta, checks } => {
            let ids = CheckId::parse_list(&checks).map_err(Failure)?;
            let a = load(&input, cli.field)?;
            let g = glue_by_name(&a, &alpha, &beta, "gamma*")?;
            let reports = run_checks(&g, &ids);
            for r in &reports {
                emit_report(r, json, None, None);
            }
            Ok(reports.iter().all(|r| r.status != Status::Fail))
        }
        Command::Examples { run } => {
            let mut ok = true;
            for e in EXAMPLES {
                if !run {
                    if json {
                        outln!(
                            "{}",
                            serde_json::json!({ "example": e.name, "description": e.description(), "alpha": e.alpha, "beta": e.beta })
                        );
                    } else {
                        outln!("{:<20} {}", e.name, e.description());
                    }
                    continue;
                }
                let a = e.algebra()?;
                let a = match cli.field {
                    Some(f) => a.with_field(f),
                    None => a,
                };
                let g = glue_by_name(&a, e.alpha, e.beta, "gamma*")?;
                for r in run_checks(&g, &CheckId::ALL) {
                    ok &= r.status != Status::Fail;
                    emit_report(&r, json, Some(e.name), None);
                }
            }
            Ok(ok)
        }
        Command::Fuzz { seed, count, checks } => {
            let ids = CheckId::parse_list(&checks).map_err(Failure)?;
            let mut spec = RandomSpec::default();
            if let Some(f) = cli.field {
                spec = spec.with_fields(vec![f]);
            }
            let summary = run_fuzz(seed, count, FuzzMode::Mixed, &spec, &ids);
            for f in &summary.failures {
                emit_report(&f.report, json, None, Some(f.index));
            }
            for (i, e) in &summary.glue_errors {
                if json {
                    outln!("{}", serde_json::json!({ "instance": i, "glue_error": e }));
                } else {
                    outln!("#{i} glue error: {e}");
                }
            }
            for id in &ids {
                let t = summary.tally(*id);
                if json {
                    outln!(
                        "{}",
                        serde_json::json!({
                            "check": id.name(),
                            "pass": t.pass,
                            "fail": t.fail,
                            "not_applicable": t.not_applicable,
                            "assumption_violated": t.assumption_violated,
                        })
                    );
                } else {
                    outln!(
                        "{:<22} pass {:>5}  fail {:>5}  not-applicable {:>5}  assumption-violated {:>5}",
                        id.name(),
                        t.pass,
                        t.fail,
                        t.not_applicable,
                        t.assumption_violated
                    );
                }
            }
            Ok(summary.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
