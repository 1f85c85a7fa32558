//! Command-line front end: `classify`, `rep`, `enumerate`, `count`, `verify`.
//!
//! Exit codes: 0 ok, 1 verification failed, 2 usage, 3 the matrix or
//! descriptor admits no symplectic form, 4 not semisimple.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{ColorChoice, Parser, Subcommand};
use serde::Serialize;

use crate::classify::{assemble_rep, descriptor_of, feasible};
use crate::enumerate::{count_classes, emit_representatives, enumerate_descriptors, EnumSpec};
use crate::error::Error;
use crate::ffield::Fp;
use crate::fmatrix::Mat;
use crate::forms::{invariant_form_space, pick_nonsingular_seeded};
use crate::json::{descriptor_from_json, pair_to_json, DescriptorJson, PairJson};
use crate::oracle::crosscheck;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_NOT_SEMISIMPLE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "spclass", version, about = "Semisimple classes of Sp(2m, p)", color = ColorChoice::Never)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Odd prime p.
    #[arg(long)]
    p: u64,
    /// Emit JSON (the default).
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit aligned text for reading.
    #[arg(long)]
    text: bool,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized fallbacks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Descriptor, an invariant alternating form, and feasibility of a matrix.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Matrix file.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Representative pair (X, A) for a descriptor.
    Rep {
        #[command(flatten)]
        common: Common,
        /// Descriptor JSON file.
        #[arg(long)]
        descriptor: PathBuf,
    },
    /// All descriptors of Sp(2m, p), one JSON object per line.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        m: usize,
        /// Emit representatives instead of descriptors.
        #[arg(long)]
        full: bool,
    },
    /// Number of semisimple classes of Sp(2m, p).
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        m: usize,
    },
    /// Brute-force oracle cross-check of Sp(2m, p).
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        m: usize,
    },
}

struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotSemisimple => EXIT_NOT_SEMISIMPLE,
            Error::InfeasibleDescriptor(_)
            | Error::UnpairedFactor { .. }
            | Error::OddMultiplicity(_)
            | Error::OddDimension(_)
            | Error::SingularInput => EXIT_INFEASIBLE,
            _ => EXIT_USAGE,
        };
        Failure { code, msg: e.to_string() }
    }
}

#[derive(Serialize)]
struct ClassifyJson {
    descriptor: Option<DescriptorJson>,
    form: serde_json::Value,
    feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

/// Parses `args` (without the program name) and runs; returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("spclass".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let common = match &cli.command {
        Command::Classify { common, .. }
        | Command::Rep { common, .. }
        | Command::Enumerate { common, .. }
        | Command::Count { common, .. }
        | Command::Verify { common, .. } => common,
    };
    let mut buf = Vec::new();
    let result = dispatch(&cli.command, common, &mut buf);
    let code = match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    };
    let written = match &common.out {
        Some(path) => fs::write(path, &buf).map_err(|e| e.to_string()),
        None => out.write_all(&buf).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    code
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn spec(common: &Common, m: usize) -> Result<EnumSpec, Failure> {
    Ok(EnumSpec::new(m, common.p)?)
}

fn dispatch(cmd: &Command, common: &Common, out: &mut Vec<u8>) -> Result<i32, Failure> {
    let field = Fp::new(common.p)?;
    let text = common.text;
    let w = |out: &mut Vec<u8>, s: &str| {
        out.extend_from_slice(s.as_bytes());
        out.push(b'\n');
    };
    match cmd {
        Command::Classify { input, .. } => classify(field, common, &read(input)?, out),
        Command::Rep { descriptor, .. } => {
            let d = descriptor_from_json(&read(descriptor)?)?;
            if d.field() != field {
                return Err(Failure::usage(format!("descriptor is over {}, --p gives {field}", d.field())));
            }
            let pair = assemble_rep(&d)?;
            if text {
                w(out, &format!("descriptor: {}\nX:\n{}A:\n{}", d, pair.x, pair.a));
            } else {
                w(out, &pair_to_json(&pair));
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate { m, full, .. } => {
            let spec = spec(common, *m)?;
            if *full {
                for pair in emit_representatives(spec)? {
                    let pair = pair?;
                    if text {
                        w(out, &format!("{}\nX:\n{}", pair.descriptor, pair.x));
                    } else {
                        w(out, &serde_json::to_string(&PairJson::from(&pair)).expect("serializes"));
                    }
                }
            } else {
                for d in enumerate_descriptors(spec)? {
                    if text {
                        w(out, &d.to_string());
                    } else {
                        w(out, &serde_json::to_string(&DescriptorJson::from(&d)).expect("serializes"));
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Count { m, .. } => {
            w(out, &count_classes(spec(common, *m)?)?.to_string());
            Ok(EXIT_OK)
        }
        Command::Verify { m, .. } => {
            let report = crosscheck(*m, common.p)?;
            if text {
                for c in &report.claims {
                    w(out, &format!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail));
                }
                for mm in &report.mismatches {
                    w(out, &format!("  {mm}"));
                }
                w(out, if report.matched { "PASS" } else { "FAIL" });
            } else {
                w(out, &report.to_json());
            }
            Ok(if report.matched { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

fn classify(field: Fp, common: &Common, src: &str, out: &mut Vec<u8>) -> Result<i32, Failure> {
    let x = Mat::parse_text(src)?;
    if x.field() != field {
        return Err(Failure::usage(format!("matrix is over {}, --p gives {field}", x.field())));
    }
    if !x.is_square() {
        return Err(Failure::usage("matrix is not square"));
    }
    let (descriptor, reason) = match descriptor_of(&x) {
        Ok(d) => (Some(d), None),
        Err(Error::NotSemisimple) => return Err(Error::NotSemisimple.into()),
        Err(
            e @ (Error::UnpairedFactor { .. } | Error::OddDimension(_) | Error::SingularInput),
        ) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let form = if x.rows() % 2 == 0 {
        let space = invariant_form_space(&x)?;
        pick_nonsingular_seeded(&space, common.seed)
    } else {
        None
    };
    let ok = descriptor.as_ref().is_some_and(feasible);
    assert_eq!(ok, form.is_some(), "feasibility and form search disagree");
    let reason = reason.or_else(|| (!ok).then(|| "odd multiplicity of eigenvalue 1 or -1".to_string()));
    if common.text {
        let d = descriptor.as_ref().map_or("none".to_string(), |d| d.to_string());
        let mut s = format!("descriptor: {d}\nform:");
        match &form {
            Some(a) => s.push_str(&format!("\n{a}")),
            None => s.push_str(" none\n"),
        }
        s.push_str(&format!("feasible: {ok}\n"));
        if let Some(r) = &reason {
            s.push_str(&format!("reason: {r}\n"));
        }
        out.extend_from_slice(s.as_bytes());
    } else {
        let body = ClassifyJson {
            descriptor: descriptor.as_ref().map(DescriptorJson::from),
            form: form.map_or(serde_json::Value::String("none".into()), |a| serde_json::json!(a.to_rows())),
            feasible: ok,
            reason,
        };
        out.extend_from_slice(serde_json::to_string(&body).expect("serializes").as_bytes());
        out.push(b'\n');
    }
    Ok(if ok { EXIT_OK } else { EXIT_INFEASIBLE })
}
