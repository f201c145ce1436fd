//! Command-line entry point: model ingestion, classification, invariant
//! computation, the lemma-verification suites, and spectral-flattening
//! dumps, all emitted as a JSON report.
//!
//! Exit codes: 0 success, 1 schema violation (or suite failure under
//! `verify`), 2 symmetry inconsistency / inapplicable invariant kind,
//! 3 gap failure.

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use std::path::PathBuf;
use std::process::ExitCode;
use tenfold_core::classify::{classify, strong_invariant_group, SymmetryProfile};
use tenfold_core::invariants::{
    chern_number, winding_number, z2_invariant, DEFAULT_CHERN_GRID, DEFAULT_WINDING_GRID,
    DEFAULT_Z2_SEGMENT,
};
use tenfold_core::models::{from_json, verify_symmetries, BlochModel, GridIter, SymmetrySpec};
use tenfold_core::report::{ClassificationBlock, FlattenSample, InputInfo, Report, Tolerances};
use tenfold_core::suites::run_suite;
use tenfold_core::vandaele::sign_matrix;
use tenfold_core::Error;

#[derive(Parser)]
#[command(name = "tenfold", version, about = "Symmetry classification and strong invariants for tight-binding Bloch Hamiltonians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Algebraic residual tolerance.
    #[arg(long, global = true, default_value_t = tenfold_core::TOL_ALG)]
    tol_alg: f64,
    /// Spectral gap tolerance.
    #[arg(long, global = true, default_value_t = tenfold_core::TOL_GAP)]
    tol_gap: f64,
    /// Write the JSON report to a file as well as stdout.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify declared symmetries, classify, and look up the strong-invariant group.
    Classify {
        model_file: PathBuf,
        /// Grid points per dimension for symmetry residuals.
        #[arg(long, default_value_t = 32)]
        grid: usize,
    },
    /// Compute a strong invariant of the model.
    Invariant {
        model_file: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Grid points (1D winding, 2D Chern) or points per half-circle (Z2).
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Run the lemma-verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 17)]
        seed: u64,
    },
    /// Dump the spectrally flattened Hamiltonian sgn(h) at sampled momenta.
    Flatten {
        model_file: PathBuf,
        #[arg(long, default_value_t = 8)]
        grid: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Winding,
    Chern,
    Z2,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Schema { .. } | Error::Json(_) | Error::Io(_) => 1,
        Error::InconsistentProfile { .. }
        | Error::InconsistentReal { .. }
        | Error::Unsupported { .. } => 2,
        Error::GapFailure { .. } => 3,
        _ => 4,
    }
}

fn load_model(path: &PathBuf) -> Result<(BlochModel, SymmetrySpec, Vec<String>, InputInfo), Error> {
    let bytes = std::fs::read(path)?;
    let digest = Sha256::digest(&bytes);
    let sha256 = digest.iter().map(|b| format!("{b:02x}")).collect::<String>();
    let text = String::from_utf8(bytes).map_err(|e| Error::Schema {
        field: "file".into(),
        what: e.to_string(),
    })?;
    let (model, spec, warnings) = from_json(&text)?;
    Ok((
        model,
        spec,
        warnings,
        InputInfo {
            path: path.display().to_string(),
            sha256,
        },
    ))
}

fn emit(report: &Report, json_out: &Option<PathBuf>) {
    let text = report.to_json();
    println!("{text}");
    if let Some(path) = json_out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("failed to write {}: {e}", path.display());
        }
    }
}

fn run(cli: &Cli) -> (Report, u8) {
    let tolerances = Tolerances {
        tol_alg: cli.tol_alg,
        tol_gap: cli.tol_gap,
    };
    let mut report = Report {
        tolerances,
        ..Default::default()
    };
    let code = match &cli.command {
        Command::Classify { model_file, grid } => {
            cmd_classify(&mut report, model_file, *grid, cli.tol_alg, cli.tol_gap)
        }
        Command::Invariant {
            model_file,
            kind,
            grid,
        } => cmd_invariant(&mut report, model_file, *kind, *grid, cli.tol_alg),
        Command::Verify { suite, seed } => cmd_verify(&mut report, suite, *seed),
        Command::Flatten { model_file, grid } => cmd_flatten(&mut report, model_file, *grid),
    };
    (report, code)
}

fn cmd_classify(
    report: &mut Report,
    model_file: &PathBuf,
    grid: usize,
    tol_alg: f64,
    tol_gap: f64,
) -> u8 {
    let (model, spec, warnings, input) = match load_model(model_file) {
        Ok(v) => v,
        Err(e) => {
            report.error = Some(e.to_string());
            eprintln!("{e}");
            return exit_code_for(&e);
        }
    };
    report.input = Some(input);
    report.warnings = warnings;
    report.grid = Some(grid);
    let symmetry = verify_symmetries(&model, &spec, grid);
    report.symmetry = Some(symmetry.clone());
    let gap = model.gap(grid);
    report.gap = Some(gap.clone());
    let profile = match SymmetryProfile::from_report(&symmetry, tol_alg) {
        Ok(p) => p,
        Err(e) => {
            report.error = Some(e.to_string());
            eprintln!("{e}");
            return 2;
        }
    };
    let descriptor = match classify(&profile) {
        Ok(d) => d,
        Err(e) => {
            report.error = Some(e.to_string());
            eprintln!("{e}");
            return 2;
        }
    };
    let group = strong_invariant_group(&descriptor, model.d);
    report.classification = Some(ClassificationBlock {
        descriptor,
        dimension: model.d,
        strong_invariant_group: group,
    });
    if gap.gap < tol_gap {
        let e = Error::GapFailure {
            at: gap.at.clone(),
            value: gap.gap,
        };
        report.error = Some(e.to_string());
        eprintln!("{e}");
        return 3;
    }
    0
}

fn cmd_invariant(
    report: &mut Report,
    model_file: &PathBuf,
    kind: Kind,
    grid: Option<usize>,
    tol_alg: f64,
) -> u8 {
    let (model, spec, warnings, input) = match load_model(model_file) {
        Ok(v) => v,
        Err(e) => {
            report.error = Some(e.to_string());
            eprintln!("{e}");
            return exit_code_for(&e);
        }
    };
    report.input = Some(input);
    report.warnings = warnings;
    // the requested kind must be applicable to the verified class
    let symmetry = verify_symmetries(&model, &spec, 16);
    report.symmetry = Some(symmetry.clone());
    let profile = match SymmetryProfile::from_report(&symmetry, tol_alg) {
        Ok(p) => p,
        Err(e) => {
            report.error = Some(e.to_string());
            eprintln!("{e}");
            return 2;
        }
    };
    let applicable = match kind {
        Kind::Winding => model.d == 1 && profile.chiral,
        Kind::Chern => model.d == 2,
        Kind::Z2 => model.d == 2 && profile.trs == Some(-1),
    };
    if !applicable {
        let e = Error::Unsupported {
            what: "requested invariant kind is not applicable to the verified class".into(),
        };
        report.error = Some(e.to_string());
        eprintln!("{e}");
        return 2;
    }
    let result = match kind {
        Kind::Winding => winding_number(&model, &spec, grid.unwrap_or(DEFAULT_WINDING_GRID)),
        Kind::Chern => chern_number(&model, grid.unwrap_or(DEFAULT_CHERN_GRID)),
        Kind::Z2 => z2_invariant(&model, &spec, grid.unwrap_or(DEFAULT_Z2_SEGMENT)),
    };
    match result {
        Ok(inv) => {
            report.grid = Some(inv.grid);
            report.invariants.push(inv);
            0
        }
        Err(e) => {
            report.error = Some(e.to_string());
            eprintln!("{e}");
            exit_code_for(&e)
        }
    }
}

fn cmd_verify(report: &mut Report, suite: &str, seed: u64) -> u8 {
    report.seed = Some(seed);
    match run_suite(suite, seed) {
        Ok(results) => {
            let ok = results.iter().all(|r| r.all_pass());
            report.verification = results;
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            report.error = Some(e.to_string());
            eprintln!("{e}");
            exit_code_for(&e)
        }
    }
}

fn cmd_flatten(report: &mut Report, model_file: &PathBuf, grid: usize) -> u8 {
    let (model, _, warnings, input) = match load_model(model_file) {
        Ok(v) => v,
        Err(e) => {
            report.error = Some(e.to_string());
            eprintln!("{e}");
            return exit_code_for(&e);
        }
    };
    report.input = Some(input);
    report.warnings = warnings;
    report.grid = Some(grid);
    for idx in GridIter::new(model.d, grid.max(2)) {
        let k: Vec<f64> = idx.iter().map(|&i| i as f64 / grid.max(2) as f64).collect();
        let h = model.evaluate(&k);
        match sign_matrix(&h) {
            Ok((sign, _)) => {
                let n = sign.nrows();
                let mut re = vec![vec![0.0; n]; n];
                let mut im = vec![vec![0.0; n]; n];
                for i in 0..n {
                    for j in 0..n {
                        re[i][j] = sign[(i, j)].re;
                        im[i][j] = sign[(i, j)].im;
                    }
                }
                report.flatten.push(FlattenSample { k, re, im });
            }
            Err(e) => {
                report.error = Some(e.to_string());
                eprintln!("{e}");
                return exit_code_for(&e);
            }
        }
    }
    0
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = run(&cli);
    emit(&report, &cli.json_out);
    ExitCode::from(code)
}
