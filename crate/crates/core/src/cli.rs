//! The `addsys` command line. [`run`] is the whole program minus process
//! plumbing, so tests drive it directly.
//!
//! Exit codes: 0 success, 1 verification failed (report on stdout), 2 usage
//! or input error, 3 resource cap or 64-bit range exceeded.

use std::fs;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::cuboid::{build_cuboid, decompose_cuboid, verify_reversible, Cuboid, CuboidDocument};
use crate::error::Error;
use crate::jof::{count_jofs, enumerate_jofs, JointOrderedFactorisation};
use crate::report::VerificationReport;
use crate::sds::{
    flavour_for, sds_to_sumsys, sumsys_to_sds_inclusive, sumsys_to_sds_noninclusive, verify_sds,
    Flavour, SdsDocument, SdsSystem,
};
use crate::sets::{Limits, DEFAULT_MAX_PRODUCT};
use crate::squares::{
    associated_magic_square, most_perfect_square, reversible_square_even, reversible_square_odd,
    verify_square, SquareDocument, SquareKind, SquareMatrix,
};
use crate::sumsystem::{build_sum_system, decompose_sum_system, verify_sum_system, SumSystem, SumSystemDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "addsys", version, about = "Sum systems, sum-and-distance systems and reversible cuboids")]
struct Cli {
    /// Refuse inputs whose target set would exceed this many elements.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PRODUCT)]
    max_product: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Joint ordered factorisations.
    #[command(subcommand)]
    Jof(JofCmd),
    /// Sum systems.
    #[command(subcommand)]
    Sumsys(SumsysCmd),
    /// Sum-and-distance systems.
    #[command(subcommand)]
    Sds(SdsCmd),
    /// Principal reversible cuboids.
    #[command(subcommand)]
    Cuboid(CuboidCmd),
    /// Reversible, associated magic and most perfect squares.
    #[command(subcommand)]
    Square(SquareCmd),
}

#[derive(Subcommand, Debug)]
enum JofCmd {
    /// List every JOF of the given dimensions in lexicographic order.
    Enumerate {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<u64>,
        #[arg(long)]
        count_only: bool,
        /// Stop listing after this many.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = ListFormat::Json)]
        format: ListFormat,
    },
}

#[derive(Subcommand, Debug)]
enum SumsysCmd {
    /// Build the sum system of a JOF such as "1:2,2:3,1:2".
    FromJof { jof: String },
    Verify(InputArg),
    /// Recover the canonical JOF.
    Decompose(InputArg),
}

#[derive(Subcommand, Debug)]
enum SdsCmd {
    /// Convert a sum system; the flavour follows part-size parity unless given.
    FromSumsys {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        flavour: Option<Flavour>,
    },
    ToSumsys(InputArg),
    Verify(InputArg),
}

#[derive(Subcommand, Debug)]
enum CuboidCmd {
    Build {
        #[arg(long)]
        jof: String,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Json)]
        format: MatrixFormat,
    },
    Verify(InputArg),
    Decompose(InputArg),
}

#[derive(Subcommand, Debug)]
enum SquareCmd {
    /// Even square from a non-inclusive system, odd from an inclusive one.
    Reversible(SquareArgs),
    /// Associated magic square; `--signs v,w` e.g. "+-+-,-++-".
    Magic {
        #[command(flatten)]
        args: SquareArgs,
        #[arg(long)]
        signs: Option<String>,
    },
    Mostperfect(SquareArgs),
    Verify {
        #[arg(long, value_parser = parse_kind)]
        kind: SquareKind,
        #[command(flatten)]
        input: InputArg,
    },
}

#[derive(Args, Debug)]
struct InputArg {
    /// Input file, or `-` for standard input.
    input: String,
}

#[derive(Args, Debug)]
struct SquareArgs {
    /// Two-part sum-and-distance system document, or `-`.
    #[arg(long)]
    sds: String,
    #[arg(long, value_enum, default_value_t = MatrixFormat::Json)]
    format: MatrixFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ListFormat {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MatrixFormat {
    Json,
    Csv,
}

fn parse_kind(s: &str) -> Result<SquareKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a command, already sorted by exit code.
enum Failure {
    Report(VerificationReport),
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(report) => Failure::Report(*report),
            Error::CapExceeded { .. } | Error::Overflow(_) => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Serialises through `serde_json::Value`, whose maps keep keys sorted.
fn canonical<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("documents serialise");
    let mut s = v.to_string();
    s.push('\n');
    s
}

fn report_outcome(report: VerificationReport) -> Outcome {
    if report.passed {
        Ok(canonical(&report))
    } else {
        Err(Failure::Report(report))
    }
}

struct Ctx<'a> {
    limits: Limits,
    stdin: &'a mut dyn Read,
}

impl Ctx<'_> {
    fn read(&mut self, source: &str) -> std::result::Result<String, Failure> {
        if source == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
            Ok(s)
        } else {
            fs::read_to_string(source).map_err(|e| Failure::Usage(format!("reading {source}: {e}")))
        }
    }

    fn document<T: serde::de::DeserializeOwned>(&mut self, source: &str) -> std::result::Result<T, Failure> {
        let text = self.read(source)?;
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("malformed document {source}: {e}")))
    }

    fn sum_system(&mut self, source: &str) -> std::result::Result<SumSystem, Failure> {
        let doc: SumSystemDocument = self.document(source)?;
        Ok(SumSystem::try_from(doc)?)
    }

    fn sds(&mut self, source: &str) -> std::result::Result<SdsSystem, Failure> {
        let doc: SdsDocument = self.document(source)?;
        Ok(SdsSystem::try_from(doc)?)
    }

    fn cuboid(&mut self, source: &str) -> std::result::Result<Cuboid, Failure> {
        let doc: CuboidDocument = self.document(source)?;
        Ok(Cuboid::try_from(doc)?)
    }

    fn square(&mut self, source: &str) -> std::result::Result<SquareMatrix, Failure> {
        let doc: SquareDocument = self.document(source)?;
        Ok(SquareMatrix::try_from(doc)?)
    }
}

/// A JOF that fails validation is bad input here, not a verification result.
fn parse_jof(text: &str) -> std::result::Result<JointOrderedFactorisation, Failure> {
    JointOrderedFactorisation::parse(text).map_err(|e| match e {
        Error::Verification(r) => Failure::Usage(format!(
            "invalid JOF {text:?}: {}{}",
            r.violated_invariant.as_deref().unwrap_or("invalid"),
            r.detail.map(|d| format!(" ({d})")).unwrap_or_default()
        )),
        e => e.into(),
    })
}

fn jof_json(jof: &JointOrderedFactorisation) -> String {
    canonical(&json!({ "dims": jof.dims(), "jof": jof.to_string() }))
}

fn enumerate(dims: &[u64], count_only: bool, limit: Option<usize>, format: ListFormat, limits: &Limits) -> Outcome {
    let total = count_jofs(dims)?;
    if count_only {
        return Ok(match format {
            ListFormat::Json => canonical(&json!({ "count": total })),
            ListFormat::Text => format!("{total}\n"),
        });
    }
    let shown = limit.map_or(total, |k| total.min(k as u128));
    limits.check(shown)?;
    let jofs: Vec<String> = enumerate_jofs(dims)?
        .take(shown as usize)
        .map(|j| j.to_string())
        .collect();
    Ok(match format {
        ListFormat::Json => canonical(&json!({ "count": total, "jofs": jofs })),
        ListFormat::Text => jofs.iter().map(|j| format!("{j}\n")).collect(),
    })
}

/// Parses `+-+-,-++-` into the two sign vectors.
fn parse_signs(s: &str) -> std::result::Result<(Vec<i64>, Vec<i64>), Failure> {
    let vectors: Vec<Vec<i64>> = s
        .split(',')
        .map(|part| {
            part.trim()
                .chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    _ => Err(Failure::Usage(format!("sign vectors use only '+' and '-', got {c:?}"))),
                })
                .collect()
        })
        .collect::<std::result::Result<_, _>>()?;
    match <[Vec<i64>; 2]>::try_from(vectors) {
        Ok([v, w]) => Ok((v, w)),
        Err(_) => Err(Failure::Usage("--signs takes exactly two vectors, e.g. +-,-+".into())),
    }
}

fn two_parts(s: &SdsSystem) -> std::result::Result<(&crate::sets::ComponentSet, &crate::sets::ComponentSet), Failure> {
    match s.parts() {
        [a, b] => Ok((a, b)),
        parts => Err(Failure::Usage(format!("squares need a two-part system, got {} parts", parts.len()))),
    }
}

fn emit_square(m: &SquareMatrix, format: MatrixFormat) -> Outcome {
    Ok(match format {
        MatrixFormat::Json => canonical(&SquareDocument::try_from(m)?),
        MatrixFormat::Csv => m.to_csv()?,
    })
}

fn dispatch(cli: Cli, ctx: &mut Ctx<'_>) -> Outcome {
    let limits = ctx.limits;
    match cli.command {
        Command::Jof(JofCmd::Enumerate { dims, count_only, limit, format }) => {
            enumerate(&dims, count_only, limit, format, &limits)
        }
        Command::Sumsys(cmd) => match cmd {
            SumsysCmd::FromJof { jof } => {
                let jof = parse_jof(&jof)?;
                limits.check(jof.dims().iter().map(|&n| u128::from(n)).product())?;
                Ok(canonical(&SumSystemDocument::from(&build_sum_system(&jof)?)))
            }
            SumsysCmd::Verify(i) => {
                let ss = ctx.sum_system(&i.input)?;
                report_outcome(verify_sum_system(&ss, &limits)?)
            }
            SumsysCmd::Decompose(i) => {
                let ss = ctx.sum_system(&i.input)?;
                Ok(jof_json(&decompose_sum_system(&ss, &limits)?))
            }
        },
        Command::Sds(cmd) => match cmd {
            SdsCmd::FromSumsys { input, flavour } => {
                let ss = ctx.sum_system(&input.input)?;
                let flavour = match flavour {
                    Some(f) => f,
                    None => flavour_for(&ss)?,
                };
                let sds = match flavour {
                    Flavour::NonInclusive => sumsys_to_sds_noninclusive(&ss, &limits)?,
                    Flavour::Inclusive => sumsys_to_sds_inclusive(&ss, &limits)?,
                };
                Ok(canonical(&SdsDocument::from(&sds)))
            }
            SdsCmd::ToSumsys(i) => {
                let sds = ctx.sds(&i.input)?;
                Ok(canonical(&SumSystemDocument::from(&sds_to_sumsys(&sds, &limits)?)))
            }
            SdsCmd::Verify(i) => {
                let sds = ctx.sds(&i.input)?;
                report_outcome(verify_sds(&sds, &limits)?)
            }
        },
        Command::Cuboid(cmd) => match cmd {
            CuboidCmd::Build { jof, format } => {
                let jof = parse_jof(&jof)?;
                let c = build_cuboid(&jof, &limits)?;
                Ok(match format {
                    MatrixFormat::Json => canonical(&CuboidDocument::from(&c)),
                    MatrixFormat::Csv => c.to_csv(),
                })
            }
            CuboidCmd::Verify(i) => {
                let c = ctx.cuboid(&i.input)?;
                limits.check(c.len() as u128)?;
                report_outcome(verify_reversible(&c))
            }
            CuboidCmd::Decompose(i) => {
                let c = ctx.cuboid(&i.input)?;
                Ok(jof_json(&decompose_cuboid(&c, &limits)?))
            }
        },
        Command::Square(cmd) => match cmd {
            SquareCmd::Reversible(args) => {
                let sds = ctx.sds(&args.sds)?;
                let (a, b) = two_parts(&sds)?;
                let m = match sds.flavour() {
                    Flavour::NonInclusive => reversible_square_even(a, b)?,
                    Flavour::Inclusive => reversible_square_odd(a, b)?,
                };
                emit_square(&m, args.format)
            }
            SquareCmd::Magic { args, signs } => {
                let sds = ctx.sds(&args.sds)?;
                let (a, b) = two_parts(&sds)?;
                let signs = signs.as_deref().map(parse_signs).transpose()?;
                let m = match &signs {
                    Some((v, w)) => associated_magic_square(a, b, Some(v), Some(w))?,
                    None => associated_magic_square(a, b, None, None)?,
                };
                emit_square(&m, args.format)
            }
            SquareCmd::Mostperfect(args) => {
                let sds = ctx.sds(&args.sds)?;
                let (a, b) = two_parts(&sds)?;
                emit_square(&most_perfect_square(a, b)?, args.format)
            }
            SquareCmd::Verify { kind, input } => {
                let m = ctx.square(&input.input)?;
                report_outcome(verify_square(&m, kind))
            }
        },
    }
}

/// Runs one command. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                CommandResult { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut ctx = Ctx { limits: Limits::new(cli.max_product), stdin };
    match dispatch(cli, &mut ctx) {
        Ok(stdout) => CommandResult { code: EXIT_OK, stdout, stderr: String::new() },
        Err(Failure::Report(report)) => CommandResult {
            code: EXIT_VERIFICATION,
            stdout: canonical(&report),
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => CommandResult { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Cap(msg)) => CommandResult { code: EXIT_CAP, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}
