//! `multideriv`: construct and verify bases of the logarithmic derivation
//! modules of even dihedral multi-arrangements.
//!
//! Exit codes: 0 success, 1 verification failed, 2 invalid input,
//! 3 internal/solver failure.

mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use multideriv::arrangement::{Arrangement, Multiplicity};
use multideriv::basis::{table4_exponents, BasisBuilder, BasisCertificate};
use multideriv::deriv::saito_check;
use multideriv::jsonio::BasisInput;
use multideriv::selftest;
use multideriv::universal::DEFAULT_POLE_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Latex,
}

#[derive(Parser)]
#[command(
    name = "multideriv",
    about = "Exact bases of derivation modules D(A, (a1, a2)) for even dihedral arrangements",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a certified basis of D(A, (a1, a2)).
    Basis {
        #[arg(long = "h")]
        h: u32,
        #[arg(long, allow_negative_numbers = true)]
        a1: i64,
        #[arg(long, allow_negative_numbers = true)]
        a2: i64,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
        /// Relabel the two line orbits (equivalent to swapping a1 and a2).
        #[arg(long)]
        orbit_swap: bool,
        /// Extra pole orders the inversion ansatz may try.
        #[arg(long)]
        pole_cap: Option<u32>,
    },
    /// Verify a basis (certificate JSON or {"basis": [...]}) against
    /// membership and the Saito criterion.
    Verify {
        #[arg(long = "h")]
        h: u32,
        #[arg(long, allow_negative_numbers = true)]
        a1: i64,
        #[arg(long, allow_negative_numbers = true)]
        a2: i64,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        orbit_swap: bool,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Closed-form exponent grid for |a1|, |a2| <= range, cross-checked
    /// against constructed certificates.
    Exponents {
        #[arg(long = "h")]
        h: u32,
        #[arg(long, default_value_t = 1)]
        range: i64,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
        #[arg(long)]
        pole_cap: Option<u32>,
    },
    /// Print the arrangement: lines, orbits, defining polynomials,
    /// group generators.
    Show {
        #[arg(long = "h")]
        h: u32,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Run the acceptance suite (one line per criterion).
    Selftest {
        /// Also compare the two universal-derivation variants and run a
        /// wider h = 4 sweep.
        #[arg(long)]
        deep: bool,
    },
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

fn pole_cap(flag: Option<u32>) -> u32 {
    flag.or_else(|| {
        std::env::var("MULTIDERIV_POLE_CAP")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_POLE_CAP)
}

fn build_arrangement(h: u32) -> Result<Arrangement, Failure> {
    Arrangement::build(h).map_err(|e| Failure::invalid(e.to_string()))
}

fn swap_if(swap: bool, a1: i64, a2: i64) -> (i64, i64) {
    if swap {
        eprintln!("note: orbit labels swapped (A1 <-> A2), constructing for ({a2}, {a1})");
        (a2, a1)
    } else {
        (a1, a2)
    }
}

fn construct_failure(e: multideriv::basis::ConstructError) -> Failure {
    use multideriv::basis::ConstructError::*;
    match e {
        Build(b) => Failure::invalid(b.to_string()),
        Verification { .. } => Failure::verification(e.to_string()),
        Universal(_) | Internal { .. } => Failure::internal(e.to_string()),
    }
}

fn cmd_basis(
    h: u32,
    a1: i64,
    a2: i64,
    format: Format,
    orbit_swap: bool,
    cap: Option<u32>,
) -> Result<(), Failure> {
    let (a1, a2) = swap_if(orbit_swap, a1, a2);
    let arr = build_arrangement(h)?;
    let mut builder = BasisBuilder::with_pole_cap(&arr, pole_cap(cap));
    let cert = builder.construct(a1, a2).map_err(construct_failure)?;
    emit::certificate(&cert, &arr, format);
    Ok(())
}

fn cmd_verify(
    h: u32,
    a1: i64,
    a2: i64,
    input: &PathBuf,
    orbit_swap: bool,
    format: Format,
) -> Result<(), Failure> {
    let (a1, a2) = swap_if(orbit_swap, a1, a2);
    let arr = build_arrangement(h)?;
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", input.display())))?;
    let parsed: BasisInput = serde_json::from_str(&text)
        .map_err(|e| Failure::invalid(format!("bad JSON: {e}")))?;
    if let BasisInput::Certificate(c) = &parsed {
        if (c.h, c.a1, c.a2) != (h, a1, a2) {
            return Err(Failure::invalid(format!(
                "certificate is for h={} (a1,a2)=({},{}), flags say h={h} ({a1},{a2})",
                c.h, c.a1, c.a2
            )));
        }
    }
    let (b1, b2) = parsed
        .decode_basis(&arr)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let ok = saito_check(&arr, &b1, &b2, Multiplicity::new(a1, a2))
        .map_err(|e| Failure::verification(e.to_string()))?;
    match format {
        Format::Json => match &parsed {
            // a valid certificate is echoed back bit-identically
            BasisInput::Certificate(c) => {
                println!("{}", serde_json::to_string_pretty(c).unwrap())
            }
            BasisInput::Pair { .. } => {
                let value = serde_json::json!({
                    "h": h, "a1": a1, "a2": a2,
                    "verified": true,
                    "exponents": [ok.exponents.0.min(ok.exponents.1),
                                  ok.exponents.0.max(ok.exponents.1)],
                });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            }
        },
        _ => {
            println!(
                "verified: basis of D(A, ({a1}, {a2})) for h = {h}; exponents ({}, {})",
                ok.exponents.0.min(ok.exponents.1),
                ok.exponents.0.max(ok.exponents.1)
            );
        }
    }
    Ok(())
}

fn cmd_exponents(h: u32, range: i64, format: Format, cap: Option<u32>) -> Result<(), Failure> {
    if range < 0 {
        return Err(Failure::invalid("range must be nonnegative"));
    }
    let arr = build_arrangement(h)?;
    let cells: Vec<(i64, i64)> = (-range..=range)
        .flat_map(|a1| (-range..=range).map(move |a2| (a1, a2)))
        .collect();

    // warm the universal-derivation cache serially, then verify cells in
    // parallel on clones of the warmed builder
    let mut master = BasisBuilder::with_pole_cap(&arr, pole_cap(cap));
    for &(a1, a2) in &cells {
        let plan = multideriv::basis::classify(a1, a2);
        let specs = match plan.kind {
            multideriv::basis::CaseKind::Dual => {
                multideriv::basis::classify(-a1, -a2).zeta.into_iter().collect::<Vec<_>>()
            }
            _ => plan.zeta.into_iter().collect(),
        };
        for spec in specs {
            master
                .universal_mut()
                .build(spec)
                .map_err(|e| Failure::internal(e.to_string()))?;
        }
    }

    use rayon::prelude::*;
    let results: Result<Vec<((i64, i64), BasisCertificate)>, String> = cells
        .par_iter()
        .map_with(master, |builder, &(a1, a2)| {
            builder
                .construct(a1, a2)
                .map(|c| ((a1, a2), c))
                .map_err(|e| format!("({a1},{a2}): {e}"))
        })
        .collect();
    let mut results = results.map_err(Failure::internal)?;
    results.sort_by_key(|(cell, _)| *cell);

    for ((a1, a2), cert) in &results {
        let formula = table4_exponents(h, *a1, *a2);
        if cert.exponents != formula {
            return Err(Failure::internal(format!(
                "({a1},{a2}): constructed exponents {:?} disagree with formula {:?}",
                cert.exponents, formula
            )));
        }
    }
    emit::exponent_grid(h, range, &results, format);
    Ok(())
}

fn cmd_show(h: u32, format: Format) -> Result<(), Failure> {
    let arr = build_arrangement(h)?;
    emit::show_arrangement(&arr, format);
    Ok(())
}

fn cmd_selftest(deep: bool) -> Result<(), Failure> {
    let reports = selftest::run_all();
    let mut failed = false;
    let mut internal = false;
    for r in &reports {
        println!("{}", r.line());
        if !r.passed {
            failed = true;
            if r.detail.starts_with("internal panic") {
                internal = true;
            }
        }
    }
    if deep {
        println!("--- deep diagnostics ---");
        for line in selftest::deep_extras() {
            println!("{line}");
        }
    }
    if internal {
        Err(Failure::internal("self-test hit an internal error"))
    } else if failed {
        Err(Failure::verification("self-test failed"))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes (e.g. `multideriv ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Basis {
            h,
            a1,
            a2,
            format,
            orbit_swap,
            pole_cap,
        } => cmd_basis(h, a1, a2, format, orbit_swap, pole_cap),
        Command::Verify {
            h,
            a1,
            a2,
            input,
            orbit_swap,
            format,
        } => cmd_verify(h, a1, a2, &input, orbit_swap, format),
        Command::Exponents {
            h,
            range,
            format,
            pole_cap,
        } => cmd_exponents(h, range, format, pole_cap),
        Command::Show { h, format } => cmd_show(h, format),
        Command::Selftest { deep } => cmd_selftest(deep),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
