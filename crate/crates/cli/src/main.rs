use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use triflag::decorated::{compare, enumerate_orbits, RankWitness};
use triflag::moves::{verify_equivalence, EquivalenceReport};
use triflag::witness::{uncircling_check, verify_move_degeneration, FamilyReport};
use triflag::{build_poset, find_chain, Composition, DecoratedMatrix, Error};

mod render;

/// Bruhat order on orbits of a line and two partial flags.
#[derive(Parser)]
#[command(name = "triflag", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every orbit of the given shape.
    Enum {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        out: Out,
    },
    /// Emit the Hasse diagram.
    Hasse {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[command(flatten)]
        out: Out,
    },
    /// Compare two elements in the rank order.
    Compare {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        out: Out,
    },
    /// Check rank order, move order and covers by brute force.
    Verify {
        #[command(flatten)]
        shape: Shape,
        /// Also check a degeneration family for every move.
        #[arg(long)]
        witness: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        out: Out,
    },
    /// Print a sequence of moves from the first element up to the second.
    Chain {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct Shape {
    /// Row composition, e.g. 1,2,1.
    #[arg(long, value_delimiter = ',', required = true)]
    b: Vec<u32>,
    /// Column composition.
    #[arg(long, value_delimiter = ',', required = true)]
    c: Vec<u32>,
}

#[derive(Args)]
struct Pair {
    /// Element as a JSON file, inline JSON object, or `-` for stdin.
    lhs: String,
    rhs: String,
}

#[derive(Args)]
struct Out {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

/// A failure mapped to an exit code.
struct Exit(u8, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Exit(2, e.to_string())
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Exit(2, e.to_string())
    }
}

type Run = Result<(String, u8), Exit>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, result) = match cli.command {
        Command::Enum { shape, format, out } => (out, run_enum(&shape, format)),
        Command::Hasse { shape, format, out } => (out, run_hasse(&shape, format)),
        Command::Compare { pair, format, out } => (out, run_compare(&pair, format)),
        Command::Verify {
            shape,
            witness,
            format,
            out,
        } => (out, run_verify(&shape, witness, format)),
        Command::Chain { pair, format, out } => (out, run_chain(&pair, format)),
    };
    let written = result.and_then(|(text, code)| {
        match &out.out {
            Some(path) => fs::write(path, &text)?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        Ok(code)
    });
    match written {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("triflag: {msg}");
            ExitCode::from(code)
        }
    }
}

fn shape(s: &Shape) -> Result<(Composition, Composition), Exit> {
    let b = Composition::new(s.b.clone()).map_err(Error::from)?;
    let c = Composition::new(s.c.clone()).map_err(Error::from)?;
    if b.total() != c.total() {
        return Err(Exit(2, format!("{b} and {c} have different totals")));
    }
    Ok((b, c))
}

fn element(arg: &str) -> Result<DecoratedMatrix, Exit> {
    let text = if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Exit(2, format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Exit(2, format!("{arg}: {e}")))
}

fn pair(p: &Pair) -> Result<(DecoratedMatrix, DecoratedMatrix), Exit> {
    if p.lhs == "-" && p.rhs == "-" {
        return Err(Exit(2, "only one element can come from stdin".into()));
    }
    let (x, y) = (element(&p.lhs)?, element(&p.rhs)?);
    if !x.same_shape(&y) {
        return Err(Error::ShapeMismatch.into());
    }
    Ok((x, y))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn unsupported(format: Format) -> Exit {
    let name = match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Dot => "dot",
    };
    Exit(
        2,
        format!("--format {name} is not available for this command"),
    )
}

fn run_enum(s: &Shape, format: Format) -> Run {
    let (b, c) = shape(s)?;
    let orbits = enumerate_orbits(&b, &c);
    let text = match format {
        Format::Text => orbits
            .iter()
            .map(|x| format!("{}\n", x.notation()))
            .collect(),
        Format::Json => json(&orbits),
        Format::Dot => return Err(unsupported(format)),
    };
    Ok((text, 0))
}

fn run_hasse(s: &Shape, format: Format) -> Run {
    let (b, c) = shape(s)?;
    let poset = build_poset(&b, &c);
    let text = match format {
        Format::Dot => render::dot(&poset),
        Format::Text => render::edges(&poset),
        Format::Json => json(&poset),
    };
    Ok((text, 0))
}

fn witness_line(w: &RankWitness, relation: &str) -> String {
    format!(
        "{relation}: {} at ({},{}) is {} vs {}\n",
        w.table, w.i, w.j, w.lhs, w.rhs
    )
}

fn run_compare(p: &Pair, format: Format) -> Run {
    let (x, y) = pair(p)?;
    let cmp = compare(&x, &y)?;
    let text = match format {
        Format::Json => json(&cmp),
        Format::Text => {
            let mut s = format!("{}\n", cmp.verdict);
            if let Some(w) = &cmp.not_leq {
                s += &witness_line(w, "lhs ≰ rhs");
            }
            if let Some(w) = &cmp.not_geq {
                s += &witness_line(w, "rhs ≰ lhs");
            }
            s
        }
        Format::Dot => return Err(unsupported(format)),
    };
    Ok((text, 0))
}

#[derive(Serialize)]
struct VerifyReport {
    b: Composition,
    c: Composition,
    passed: bool,
    equivalence: EquivalenceReport,
    uncircling_failures: Vec<String>,
    families: Option<Vec<FamilyReport>>,
}

fn run_verify(s: &Shape, witness: bool, format: Format) -> Run {
    let (b, c) = shape(s)?;
    let equivalence = verify_equivalence(&b, &c);
    let poset = build_poset(&b, &c);
    let uncircling_failures: Vec<String> = poset
        .elements
        .iter()
        .filter(|x| !uncircling_check(x.matrix(), &x.matrix().support()).unwrap_or(false))
        .map(|x| x.notation())
        .collect();
    let families = witness.then(|| {
        poset
            .moves
            .iter()
            .enumerate()
            .flat_map(|(k, moves)| moves.iter().map(move |(mv, _)| (k, mv)))
            .map(|(k, mv)| verify_move_degeneration(&poset.elements[k], mv))
            .collect::<Vec<_>>()
    });
    let passed = equivalence.passed()
        && uncircling_failures.is_empty()
        && families
            .as_ref()
            .is_none_or(|fs| fs.iter().all(FamilyReport::passed));
    let report = VerifyReport {
        b,
        c,
        passed,
        equivalence,
        uncircling_failures,
        families,
    };
    let text = match format {
        Format::Json => json(&report),
        Format::Text => render::verify(&report),
        Format::Dot => return Err(unsupported(format)),
    };
    Ok((text, if passed { 0 } else { 1 }))
}

fn run_chain(p: &Pair, format: Format) -> Run {
    let (x, y) = pair(p)?;
    match find_chain(&x, &y) {
        Ok(chain) => {
            let text = match format {
                Format::Json => json(&chain),
                Format::Text => chain.iter().map(|mv| format!("{mv}\n")).collect(),
                Format::Dot => return Err(unsupported(format)),
            };
            Ok((text, 0))
        }
        Err(Error::NotComparable) => Ok(("not comparable\n".into(), 3)),
        Err(e) => Err(e.into()),
    }
}
