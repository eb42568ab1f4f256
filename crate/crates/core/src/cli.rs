//! Command-line front end. Exit codes: 0 success, 1 the two deciders (or the
//! flag bijection) disagree, 2 input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::leg::extend;
use crate::oracle::{self, CostGuard, GroupKind};
use crate::quiver::{components, parse_setting, restrict_to_support, DimVector, QuiverSetting};
use crate::roots::classify_root;
use crate::sphericity::{self, SphericityVerdict};

#[derive(Debug, Parser)]
#[command(name = "qsphere", version, about = "Sphericity of quiver representation spaces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Borel,
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run both deciders on a setting and report whether they agree.
    Check {
        /// Setting file, or `-` for stdin.
        #[arg(long)]
        input: String,
    },
    /// Classify a vector as real root, imaginary root or non-root.
    ClassifyRoot {
        #[arg(long)]
        input: String,
        /// Vector as a JSON object `{vertex: n}`; defaults to the dimension
        /// vector of the setting. Missing vertices are 0.
        #[arg(long)]
        vector: Option<String>,
    },
    /// Print the leg-extended setting.
    Extend {
        #[arg(long)]
        input: String,
    },
    /// Print a gentle imaginary root of least entry sum, if one exists.
    Witness {
        #[arg(long)]
        input: String,
    },
    /// Cross-check the deciders on every small tree setting.
    Scan {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 4)]
        max_dim: i64,
        /// Run on a single thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Count orbits over small prime fields.
    Oracle {
        #[arg(long)]
        input: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        #[arg(long, value_enum, default_value_t = KindArg::Borel)]
        kind: KindArg,
        /// Report whether Borel orbit counts strictly grow with p.
        #[arg(long, conflicts_with = "flag_check")]
        growth: bool,
        /// Compare Borel orbits with flag-type orbits of the leg extension.
        #[arg(long)]
        flag_check: bool,
    },
}

struct Output {
    body: String,
    code: u8,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, code: 0 }
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Error::Malformed(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{path}: {e}")))?;
    }
    Ok(text)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

fn verdict_text(v: &SphericityVerdict, indent: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{indent}spherical: {}", v.spherical);
    let _ = writeln!(s, "{indent}method: {}", serde_json::to_value(v.method).unwrap().as_str().unwrap());
    match v.agreement {
        Some(a) => {
            let _ = writeln!(s, "{indent}agreement: {a}");
        }
        None => {
            let _ = writeln!(s, "{indent}agreement: n/a");
        }
    }
    if let Some(w) = &v.witness {
        let _ = writeln!(s, "{indent}witness: {}", serde_json::to_string(w).unwrap());
    }
    for p in v.pieces.iter().flatten() {
        let _ = writeln!(s, "{indent}piece {}: {}", p.shape.label(), p.setting);
    }
    s
}

fn connected_setting(text: &str) -> Result<QuiverSetting> {
    let s = restrict_to_support(&parse_setting(text)?);
    let mut comps = components(&s);
    match comps.len() {
        1 => Ok(comps.remove(0)),
        0 => Err(Error::Precondition("setting has empty support".into())),
        _ => Err(Error::Disconnected),
    }
}

fn cmd_check(text: &str, format: Format) -> Result<Output> {
    let s = restrict_to_support(&parse_setting(text)?);
    let comps = components(&s);
    let verdicts = comps
        .iter()
        .map(sphericity::check)
        .collect::<Result<Vec<_>>>()?;
    let disagree = verdicts.iter().any(|v| v.agreement == Some(false));
    let spherical = verdicts.iter().all(|v| v.spherical);
    let body = match (format, verdicts.len()) {
        (Format::Json, 1) => to_json(&verdicts[0]),
        (Format::Json, _) => {
            let items: Vec<_> = comps
                .iter()
                .zip(&verdicts)
                .map(|(c, v)| json!({ "setting": c, "verdict": v }))
                .collect();
            to_json(&json!({ "spherical": spherical, "components": items }))
        }
        (Format::Text, 1) => verdict_text(&verdicts[0], ""),
        (Format::Text, _) => {
            let mut s = format!("spherical: {spherical}\ncomponents: {}\n", comps.len());
            for (c, v) in comps.iter().zip(&verdicts) {
                let _ = writeln!(s, "- {c}");
                s.push_str(&verdict_text(v, "  "));
            }
            s
        }
    };
    Ok(Output {
        body,
        code: u8::from(disagree),
    })
}

fn cmd_classify(text: &str, vector: Option<&str>, format: Format) -> Result<Output> {
    let s = parse_setting(text)?;
    let d = match vector {
        Some(v) => DimVector::from_labeled_json(&s.quiver, v)?,
        None => s.dims.clone(),
    };
    let class = classify_root(&s.quiver, &d)?;
    let report = class.report(&s.quiver);
    let body = match format {
        Format::Json => to_json(&report),
        Format::Text => {
            let rep = report
                .representative
                .as_ref()
                .map(|r| serde_json::to_string(r).unwrap())
                .unwrap_or_else(|| "none".into());
            format!(
                "kind: {:?}\ntrace: {}\nrepresentative: {rep}\n",
                report.kind,
                report.trace.join(" ")
            )
        }
    };
    Ok(Output::ok(body))
}

fn cmd_extend(text: &str, format: Format) -> Result<Output> {
    let x = extend(&parse_setting(text)?)?;
    let body = match format {
        Format::Json => to_json(&x),
        Format::Text => {
            let mut s = String::new();
            for (v, name) in x.quiver().vertices().iter().enumerate() {
                let _ = writeln!(s, "{name}\t{}", x.hat().0[v]);
            }
            for &(a, b) in x.quiver().arrows() {
                let _ = writeln!(s, "{} -> {}", x.quiver().name(a), x.quiver().name(b));
            }
            s
        }
    };
    Ok(Output::ok(body))
}

fn cmd_witness(text: &str, format: Format) -> Result<Output> {
    let s = connected_setting(text)?;
    let w = sphericity::minimal_witness(&s)?;
    let body = match format {
        Format::Json => to_json(&json!({ "spherical": w.is_none(), "witness": w })),
        Format::Text => match w {
            Some(w) => format!(
                "spherical: false\nwitness: {}\n",
                serde_json::to_string(&w).unwrap()
            ),
            None => "spherical: true\nwitness: none\n".into(),
        },
    };
    Ok(Output::ok(body))
}

fn cmd_scan(max_vertices: usize, max_dim: i64, sequential: bool, format: Format) -> Result<Output> {
    let strategy = if sequential {
        Strategy::Sequential
    } else {
        Strategy::Parallel
    };
    let report = sphericity::scan(max_vertices, max_dim, strategy)?;
    let body = match format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = format!(
                "max_vertices\t{}\nmax_dim\t{}\nquivers\t{}\nsettings\t{}\nspherical\t{}\nnon_spherical\t{}\ndisagreements\t{}\nmonotonicity_violations\t{}\n",
                report.max_vertices,
                report.max_dim,
                report.quivers,
                report.settings,
                report.spherical,
                report.non_spherical,
                report.disagreements.len(),
                report.monotonicity_violations.len()
            );
            for d in &report.disagreements {
                let _ = writeln!(
                    s,
                    "disagreement {} structural={} root_criterion={}",
                    d.setting, d.structural, d.root_criterion
                );
            }
            s
        }
    };
    Ok(Output {
        body,
        code: u8::from(!report.is_clean()),
    })
}

fn cmd_oracle(
    text: &str,
    primes: &[u64],
    kind: KindArg,
    growth: bool,
    flag_check: bool,
    format: Format,
) -> Result<Output> {
    let s = parse_setting(text)?;
    let guard = CostGuard::from_env()?;
    let kind = match kind {
        KindArg::Borel => GroupKind::Borel,
        KindArg::Full => GroupKind::Full,
    };
    if flag_check {
        let checks = primes
            .iter()
            .map(|&p| oracle::flag_bijection_check_with(&s, p, &guard))
            .collect::<Result<Vec<_>>>()?;
        let all = checks.iter().all(|c| c.holds());
        let body = match format {
            Format::Json => to_json(&json!({ "setting": s, "holds": all, "checks": checks })),
            Format::Text => {
                let mut t = String::from("p\tborel\tflag\tholds\n");
                for c in &checks {
                    let _ = writeln!(t, "{}\t{}\t{}\t{}", c.prime, c.borel_orbits, c.flag_orbits, c.holds());
                }
                t
            }
        };
        return Ok(Output {
            body,
            code: u8::from(!all),
        });
    }
    if growth {
        let probe = oracle::growth_probe_with(&s, primes, &guard, Strategy::default())?;
        let body = match format {
            Format::Json => to_json(&probe),
            Format::Text => format!(
                "primes\t{:?}\ncounts\t{:?}\ngrowing\t{}\n",
                probe.primes, probe.counts, probe.growing
            ),
        };
        return Ok(Output::ok(body));
    }
    let reports = primes
        .iter()
        .map(|&p| oracle::count_orbits_with(&s, p, kind, &guard, Strategy::default()))
        .collect::<Result<Vec<_>>>()?;
    let body = match format {
        Format::Json => to_json(&reports),
        Format::Text => {
            let mut t = String::from("setting\tp\tkind\t|G|\torbits\n");
            for r in &reports {
                let _ = writeln!(
                    t,
                    "{}\t{}\t{:?}\t{}\t{}",
                    r.setting, r.prime, r.kind, r.group_order, r.orbit_count
                );
            }
            t
        }
    };
    Ok(Output::ok(body))
}

fn dispatch(cli: Cli, stdin: &mut dyn Read) -> Result<Output> {
    let format = cli.format;
    match cli.command {
        Command::Check { input } => cmd_check(&read_input(&input, stdin)?, format),
        Command::ClassifyRoot { input, vector } => {
            cmd_classify(&read_input(&input, stdin)?, vector.as_deref(), format)
        }
        Command::Extend { input } => cmd_extend(&read_input(&input, stdin)?, format),
        Command::Witness { input } => cmd_witness(&read_input(&input, stdin)?, format),
        Command::Scan {
            max_vertices,
            max_dim,
            sequential,
        } => cmd_scan(max_vertices, max_dim, sequential, format),
        Command::Oracle {
            input,
            primes,
            kind,
            growth,
            flag_check,
        } => cmd_oracle(&read_input(&input, stdin)?, &primes, kind, growth, flag_check, format),
    }
}

/// Parse `args` (program name first), run the subcommand and return the
/// exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, stdin) {
        Ok(output) => {
            let _ = out.write_all(output.body.as_bytes());
            if !output.body.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
