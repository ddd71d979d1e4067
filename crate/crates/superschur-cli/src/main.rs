use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superschur::chars::{hall_littlewood, hook_schur, schur_character, type_ii_character};
use superschur::exactalg::Field;
use superschur::schurfun::{build_diamond, costandard_labels, diamond_rank, schur_basis, theta_hat_domain};
use superschur::shapes::{Partition, SkewShape};
use superschur::supercore::SuperBasis;
use superschur::verify::{run, Caps, Suite};

/// Schur superfunctors: dimensions, standard bases, characters and verification suites.
#[derive(Parser)]
#[command(name = "superschur", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of a Schur supermodule, computed three ways.
    Dim(ShapeArgs),
    /// Formal character of a Schur supermodule and the matching symmetric function.
    Char {
        #[command(flatten)]
        args: ShapeArgs,
        #[arg(long = "type", value_enum, default_value = "i")]
        kind: CharType,
    },
    /// The standard basis of a Schur supermodule.
    Basis(ShapeArgs),
    /// Run a verification suite.
    Verify {
        /// hopf, kernel, standard, straighten, filtration, algebra, invariants, characters or all.
        suite: String,
        /// Largest number of boxes.
        #[arg(long)]
        max_deg: Option<usize>,
        /// Restrict to one space, `m,n`.
        #[arg(long)]
        space: Option<String>,
        /// Fields to use (`q` or `p=K`), repeatable.
        #[arg(long = "field")]
        fields: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ShapeArgs {
    /// Skew shape, e.g. `4,3,1/2,1` or `2,1/`.
    #[arg(long)]
    shape: String,
    /// Even and odd dimension, `m,n`.
    #[arg(long, default_value = "1,1")]
    space: String,
    /// `q` or `p=K`.
    #[arg(long, default_value = "q")]
    field: String,
    /// Largest number of boxes accepted.
    #[arg(long, default_value_t = 6)]
    cap: usize,
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CharType {
    #[value(name = "I", alias = "i")]
    I,
    #[value(name = "II", alias = "ii")]
    II,
}

/// A usage error (exit code 2) with its message.
struct Usage(String);

struct Parsed {
    shape: SkewShape,
    m: usize,
    n: usize,
    field: Field,
}

fn parse_space(s: &str) -> Result<(usize, usize), Usage> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [m, n] => match (m.trim().parse(), n.trim().parse()) {
            (Ok(m), Ok(n)) => Ok((m, n)),
            _ => Err(Usage(format!("bad space '{s}', expected m,n"))),
        },
        _ => Err(Usage(format!("bad space '{s}', expected m,n"))),
    }
}

fn parse_field(s: &str) -> Result<Field, Usage> {
    Field::parse(s).map_err(|e| Usage(e.to_string()))
}

fn parse_shape_args(a: &ShapeArgs) -> Result<Parsed, Usage> {
    let shape: SkewShape = a.shape.parse().map_err(|e| Usage(format!("{e}")))?;
    if shape.size() > a.cap {
        return Err(Usage(format!("shape has {} boxes, above the cap {}", shape.size(), a.cap)));
    }
    let (m, n) = parse_space(&a.space)?;
    Ok(Parsed { shape, m, n, field: parse_field(&a.field)? })
}

fn emit(value: &Value, out: &Option<PathBuf>) -> Result<(), Usage> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    match out {
        Some(path) => fs::write(path, text + "\n").map_err(|e| Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = writeln!(std::io::stdout(), "{text}");
            Ok(())
        }
    }
}

fn cmd_dim(a: &ShapeArgs) -> Result<bool, Usage> {
    let p = parse_shape_args(a)?;
    let basis = SuperBasis::standard(p.m, p.n);
    let domain = p.shape.conjugate();
    let theta = theta_hat_domain(&domain, &basis);
    let rank = theta.rank(p.field);
    let count = costandard_labels(&domain, &basis).len();
    let dim = theta.domain_dim() - diamond_rank(&build_diamond(&domain, &basis), p.field);
    emit(
        &json!({
            "shape": p.shape.to_string(),
            "space": [p.m, p.n],
            "field": p.field.to_string(),
            "dim": dim,
            "rank": rank,
            "costandard_count": count,
        }),
        &a.out,
    )?;
    Ok(dim == rank && rank == count)
}

fn straight_partition(shape: &SkewShape) -> Result<Partition, Usage> {
    if !shape.mu().is_empty() {
        return Err(Usage("characters need a straight shape".into()));
    }
    Ok(shape.lambda().clone())
}

fn cmd_char(a: &ShapeArgs, kind: CharType) -> Result<bool, Usage> {
    let p = parse_shape_args(a)?;
    let lambda = straight_partition(&p.shape)?;
    let (character, symmetric, name) = match kind {
        CharType::I => (schur_character(&lambda, p.m, p.n, p.field), hook_schur(&lambda, p.m, p.n), "hook_schur"),
        CharType::II => {
            if p.m != p.n {
                return Err(Usage("type II needs a space n,n".into()));
            }
            let ch = type_ii_character(&lambda, p.n).map_err(|e| Usage(e.to_string()))?;
            (ch, hall_littlewood(&lambda, p.n), "hall_littlewood")
        }
    };
    let equal = character == symmetric;
    emit(
        &json!({
            "shape": p.shape.to_string(),
            "space": [p.m, p.n],
            "type": match kind { CharType::I => "I", CharType::II => "II" },
            "character": character,
            name: symmetric,
            "equal": equal,
        }),
        &a.out,
    )?;
    Ok(equal)
}

fn rows_json(rows: &[Vec<u8>]) -> Value {
    json!(rows)
}

fn cmd_basis(a: &ShapeArgs) -> Result<bool, Usage> {
    let p = parse_shape_args(a)?;
    let basis = SuperBasis::standard(p.m, p.n);
    match schur_basis(&p.shape, &basis, p.field) {
        Ok(sb) => {
            let vectors: Vec<Value> = sb
                .vectors()
                .iter()
                .map(|(label, v)| {
                    let terms: Vec<Value> = v.iter().map(|(rows, c)| json!({"coef": c, "rows": rows_json(rows)})).collect();
                    json!({"tableau": rows_json(label), "image": terms})
                })
                .collect();
            emit(
                &json!({
                    "shape": p.shape.to_string(),
                    "space": [p.m, p.n],
                    "field": p.field.to_string(),
                    "dim": sb.len(),
                    "basis": vectors,
                }),
                &a.out,
            )?;
            Ok(true)
        }
        Err(e) => {
            emit(&json!({"shape": p.shape.to_string(), "error": e.to_string()}), &a.out)?;
            Ok(false)
        }
    }
}

fn cmd_verify(
    suite: &str,
    max_deg: Option<usize>,
    space: &Option<String>,
    fields: &[String],
    seed: u64,
    out: &Option<PathBuf>,
) -> Result<bool, Usage> {
    let suite: Suite = suite.parse().map_err(Usage)?;
    let mut caps = Caps { seed, ..Caps::default() };
    if let Some(d) = max_deg {
        caps.max_deg = d;
    }
    if let Some(s) = space {
        caps.space = Some(parse_space(s)?);
    }
    if !fields.is_empty() {
        caps.fields = fields.iter().map(|f| parse_field(f)).collect::<Result<_, _>>()?;
    }
    let report = run(suite, &caps);
    emit(&serde_json::to_value(&report).expect("serializable"), out)?;
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Dim(a) => cmd_dim(a),
        Command::Char { args, kind } => cmd_char(args, *kind),
        Command::Basis(a) => cmd_basis(a),
        Command::Verify { suite, max_deg, space, fields, seed, out } => cmd_verify(suite, *max_deg, space, fields, *seed, out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
