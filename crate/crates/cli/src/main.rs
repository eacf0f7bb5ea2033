use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use z2lie::catalog::{catalog_algebra, catalog_def, composition_check, division_check, CatalogName};
use z2lie::freebch::{
    bracket_basis_fit, classical_bch, compare_printed_series, extended_bch, pretty_print, DiscrepancyReport,
    FittedTerm, Generator, MAX_DEGREE,
};
use z2lie::huliu::verify_identities;
use z2lie::liecorr::{correspondence_suite, BlockShape, RoundtripConfig, DEFAULT_TOL};
use z2lie::report::{Check, VerificationReport};
use z2lie::scalar::{format_rational, parse_rational};
use z2lie::z2core::{json, Algebra, Element};
use z2lie::Rational;

#[derive(Parser)]
#[command(name = "z2lie", version, about = "Z2-graded algebras, graded Leibniz brackets and the extended BCH series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the structure constants of a catalog algebra as JSON.
    Catalog {
        name: String,
        #[command(flatten)]
        output: Output,
    },
    /// Run every verification suite on a catalog algebra or a JSON file.
    Verify {
        algebra: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Compute the extended series, its bracket form and the printed-term diff.
    Bch {
        #[arg(long, default_value_t = 4)]
        degree: usize,
        /// Print the series as text instead of JSON.
        #[arg(long)]
        text: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Tangent-space round trips in the block matrix model.
    Correspond {
        #[arg(long, default_value = "2,2", value_parser = parse_shape)]
        shape: BlockShape,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Group elements sampled per subalgebra.
        #[arg(long, default_value_t = 40)]
        budget: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Invert an element given by comma-separated rational coordinates.
    Invert {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_shape(s: &str) -> Result<BlockShape, String> {
    let (p, q) = s.split_once(',').ok_or("expected p,q")?;
    let p = p.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let q = q.trim().parse::<usize>().map_err(|e| e.to_string())?;
    BlockShape::new(p, q).map_err(|e| e.to_string())
}

/// Usage or input problems, reported with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Outcome {
    text: String,
    ok: bool,
}

fn load_algebra(spec: &str) -> Result<(Arc<Algebra>, Option<CatalogName>), InputError> {
    if let Ok(name) = spec.parse::<CatalogName>() {
        return Ok((catalog_algebra(name), Some(name)));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(InputError(format!("{spec} is neither a catalog name nor a file")));
    }
    let text = std::fs::read_to_string(path)?;
    let def = json::from_json(&text)?;
    Ok((def.validate()?, None))
}

fn cmd_catalog(name: &str) -> Result<Outcome, InputError> {
    let name: CatalogName = name.parse()?;
    Ok(Outcome {
        text: json::to_json(&catalog_def(name)),
        ok: true,
    })
}

fn cmd_verify(spec: &str, trials: usize, seed: u64) -> Result<Outcome, InputError> {
    let (alg, name) = load_algebra(spec)?;
    let mut report = VerificationReport::new("verify", alg.name());
    let mut valid = Check::new("valid Z2-algebra", true);
    valid.pass();
    report.push(valid);

    let associative = alg.is_associative();
    let mut assoc = match name {
        Some(n) => Check::new("associativity matches catalog", true)
            .with_note(format!("associative: {associative}, expected: {}", n.is_claimed_associative())),
        None => Check::new("associative", false),
    };
    let expected = name.is_none_or(|n| n.is_claimed_associative());
    assoc.record(associative == expected, || [("triple", format!("{:?}", alg.first_nonassociative_triple()))], || {
        format!("associative: {associative}")
    });
    report.push(assoc);

    let mut alt = Check::new("alternative", name.is_some());
    alt.record(alg.is_alternative(), Vec::<(String, String)>::new, || "alternative laws fail".into());
    report.push(alt);

    report.extend(verify_identities(&alg, trials, seed));
    let mut composition = composition_check(&alg, trials, seed);
    if name.is_none() {
        for c in &mut composition.checks {
            c.claimed = false;
        }
    }
    report.extend(composition);
    report.extend(division_check(&alg, trials, seed));
    Ok(Outcome {
        ok: report.claims_hold(),
        text: report.to_json(),
    })
}

#[derive(Serialize)]
struct BchReport {
    degree: usize,
    words: usize,
    series: Vec<FittedTerm>,
    pretty: String,
    classical_specialization: bool,
    printed: DiscrepancyReport,
}

fn cmd_bch(degree: usize, text: bool) -> Result<Outcome, InputError> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(InputError(format!("degree must be in 1..={MAX_DEGREE}")));
    }
    let z = extended_bch(degree)?;
    let series = bracket_basis_fit(degree)?;
    let pretty = pretty_print(&series);
    let classical = z.specialize_zero(&[Generator::U, Generator::W]) == classical_bch(degree)?;
    let printed = compare_printed_series(degree.min(4))?;
    let text = if text {
        let mut out = pretty.clone();
        for d in &printed.degrees {
            if !d.matches {
                out.push_str(&format!("\ndegree {}: computed - printed = {}", d.degree, d.difference));
            }
        }
        for dup in &printed.duplicates {
            out.push_str(&format!("\n{}: {}", dup.bracket_form, dup.resolution));
        }
        out
    } else {
        let report = BchReport {
            degree,
            words: z.len(),
            series,
            pretty,
            classical_specialization: classical,
            printed,
        };
        serde_json::to_string_pretty(&report)?
    };
    Ok(Outcome { text, ok: classical })
}

fn cmd_correspond(shape: BlockShape, trials: usize, tol: f64, seed: u64, budget: usize) -> Result<Outcome, InputError> {
    if tol.is_nan() || tol <= 0.0 || trials == 0 || budget == 0 {
        return Err(InputError("tol, trials and budget must be positive".into()));
    }
    let config = RoundtripConfig {
        budget,
        trials,
        tol,
        angle_tol: tol.max(z2lie::liecorr::ANGLE_TOL),
        seed,
    };
    let report = correspondence_suite(shape, &config)?;
    Ok(Outcome {
        ok: report.claims_hold(),
        text: report.to_json(),
    })
}

#[derive(Serialize)]
struct InvertReport {
    algebra: String,
    element: Vec<String>,
    invertible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    inverse: Option<Vec<String>>,
}

fn cmd_invert(spec: &str, element: &str) -> Result<Outcome, InputError> {
    let (alg, _) = load_algebra(spec)?;
    let coeffs = element
        .split(',')
        .map(|s| parse_rational(s).ok_or_else(|| InputError(format!("bad rational {s:?}"))))
        .collect::<Result<Vec<Rational>, _>>()?;
    let x = Element::new(&alg, coeffs)?;
    let inverse = x.invert().ok();
    let report = InvertReport {
        algebra: alg.name().to_owned(),
        element: x.coeffs().iter().map(format_rational).collect(),
        invertible: inverse.is_some(),
        inverse: inverse.map(|y| y.coeffs().iter().map(format_rational).collect()),
    };
    Ok(Outcome {
        text: serde_json::to_string_pretty(&report)?,
        ok: true,
    })
}

fn emit(output: &Output, text: &str) -> Result<(), InputError> {
    match &output.out {
        Some(path) => std::fs::write(path, format!("{text}\n"))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, output) = match &cli.command {
        Command::Catalog { name, output } => (cmd_catalog(name), output),
        Command::Verify {
            algebra,
            trials,
            seed,
            output,
        } => (cmd_verify(algebra, *trials, *seed), output),
        Command::Bch { degree, text, output } => (cmd_bch(*degree, *text), output),
        Command::Correspond {
            shape,
            trials,
            tol,
            seed,
            budget,
            output,
        } => (cmd_correspond(*shape, *trials, *tol, *seed, *budget), output),
        Command::Invert {
            algebra,
            element,
            output,
        } => (cmd_invert(algebra, element), output),
    };
    let outcome = match result.and_then(|o| emit(output, &o.text).map(|()| o)) {
        Ok(o) => o,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
