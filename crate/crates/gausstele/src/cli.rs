//! Batch command-line front end.
//!
//! Subcommands: `sweep` (scenario JSON → CSV), `bounds` (bound tables),
//! `game` (seeded Monte Carlo transcripts), `skc` (key-rate bound
//! arithmetic), and `verify` (the acceptance suite). Exit codes: 0 on
//! success, 2 on validation errors, 3 on numerical-trust failures
//! (truncation floor or quadrature trouble). All diagnostics go to standard
//! error; setting `GT_DETERMINISTIC=1` forces single-threaded execution.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::experiments::{run_sweep, SweepSpec};
use crate::fock::{fidelity_fock, make_tmsv_fock, NumberKernel};
use crate::game::{play_game, GameConfig};
use crate::skc::{c_epsilon, pure_loss_bound, rate_bound_from_entropy_data, thermal_bound};
use crate::telesim::{
    uniform_bound_additive, uniform_bound_amplifier, uniform_bound_thermal, BoundReport,
};
use crate::verify::{run_all, Level};
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "gausstele",
    version,
    about = "Teleportation simulation of bosonic Gaussian channels: sweeps, bounds, games, and verification"
)]
struct Cli {
    /// Worker threads (defaults to all cores); GT_DETERMINISTIC=1 forces 1.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep scenario file and write its CSV table.
    Sweep {
        /// Scenario JSON path.
        scenario: PathBuf,
        /// Output CSV path; defaults to the scenario's `output_path`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the scenario's Fock cutoff.
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Evaluate uniform simulation bounds over a σ̄ grid.
    Bounds {
        /// Channel family: thermal | pure-loss | amplifier | pure-amplifier | additive-noise.
        #[arg(long)]
        channel: String,
        /// Comma-separated family parameters (e.g. "0.5,0" for thermal).
        #[arg(long)]
        params: String,
        /// Comma-separated decreasing σ̄ values.
        #[arg(long = "sigma-grid")]
        sigma_grid: String,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Add a brute-force column: sine distance for a TMSV(2) probe.
        #[arg(long)]
        oracle: bool,
        /// Fock cutoff for the oracle column.
        #[arg(long, default_value_t = 60)]
        cutoff: usize,
    },
    /// Play a seeded discrimination game from a scenario file.
    Game {
        /// Game configuration JSON path.
        scenario: PathBuf,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Transcript JSON path; a `.summary.csv` sibling is written too.
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate secret-key-rate bound arithmetic.
    Skc {
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        epsilon: f64,
        /// Thermal photon number; switches to the thermal-channel bound.
        #[arg(long = "n-b")]
        n_b: Option<f64>,
        /// Externally supplied relative entropy for the pre-limit bound.
        #[arg(long = "d-value")]
        d_value: Option<f64>,
        /// Relative-entropy variance for the thermal/pre-limit bounds.
        #[arg(long = "v-value")]
        v_value: Option<f64>,
    },
    /// Run the acceptance suite and emit a machine-readable report.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyLevel::Fast)]
        level: VerifyLevel,
        /// Optional JSON report path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyLevel {
    Fast,
    Full,
}

fn parse_f64_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::Scenario(format!("bad number {t:?}: {e}")))
        })
        .collect()
}

fn bound_for(kind: &str, params: &[f64], sigma: f64) -> Result<BoundReport> {
    match kind {
        "thermal" => {
            if params.len() != 2 {
                return Err(Error::Scenario("thermal needs params eta,n_b".into()));
            }
            uniform_bound_thermal(params[0], params[1], sigma)
        }
        "pure-loss" => {
            if params.len() != 1 {
                return Err(Error::Scenario("pure-loss needs params eta".into()));
            }
            uniform_bound_thermal(params[0], 0.0, sigma)
        }
        "amplifier" => {
            if params.len() != 2 {
                return Err(Error::Scenario("amplifier needs params gain,n_b".into()));
            }
            uniform_bound_amplifier(params[0], params[1], sigma)
        }
        "pure-amplifier" => {
            if params.len() != 1 {
                return Err(Error::Scenario("pure-amplifier needs params gain".into()));
            }
            uniform_bound_amplifier(params[0], 0.0, sigma)
        }
        "additive-noise" => {
            if params.len() != 1 {
                return Err(Error::Scenario("additive-noise needs params xi".into()));
            }
            uniform_bound_additive(params[0], sigma)
        }
        other => Err(Error::UnsupportedChannel(format!(
            "unknown family {other:?}"
        ))),
    }
}

/// Oracle column for `bounds --oracle`: P for a TMSV(2) probe through the
/// channel vs its simulation.
fn oracle_p(kind: &str, params: &[f64], sigma: f64, cutoff: usize) -> Result<f64> {
    let (k1, k2) = match kind {
        "thermal" | "pure-loss" => {
            let eta = params[0];
            let nb = if kind == "thermal" { params[1] } else { 0.0 };
            (
                NumberKernel::thermal(eta, nb, cutoff)?,
                NumberKernel::thermal(eta, nb + eta * sigma / (1.0 - eta), cutoff)?,
            )
        }
        "amplifier" | "pure-amplifier" => {
            let g = params[0];
            let nb = if kind == "amplifier" { params[1] } else { 0.0 };
            (
                if nb > 0.0 {
                    NumberKernel::amplifier(g, nb, cutoff)?
                } else {
                    NumberKernel::pure_amplifier(g, cutoff)?
                },
                NumberKernel::amplifier(g, nb + g * sigma / (g - 1.0), cutoff)?,
            )
        }
        "additive-noise" => {
            let xi = params[0];
            (
                NumberKernel::teleport(xi, cutoff)?,
                NumberKernel::teleport(xi + sigma, cutoff)?,
            )
        }
        other => {
            return Err(Error::UnsupportedChannel(format!(
                "no oracle for {other:?}"
            )))
        }
    };
    let probe = make_tmsv_fock(2.0, cutoff)?;
    let (o1, _) = k1.apply(&probe, 1)?;
    let (o2, _) = k2.apply(&probe, 1)?;
    Ok((1.0 - fidelity_fock(&o1, &o2)?).sqrt())
}

fn cmd_sweep(scenario: &PathBuf, out: Option<&PathBuf>, cutoff: Option<usize>) -> Result<()> {
    let text = fs::read_to_string(scenario)?;
    let mut spec: SweepSpec = serde_json::from_str(&text)?;
    if let Some(c) = cutoff {
        spec.cutoff = Some(c);
    }
    let out = match (out, &spec.output_path) {
        (Some(path), _) => path.clone(),
        (None, Some(path)) => PathBuf::from(path),
        (None, None) => {
            return Err(Error::Scenario(
                "no output path: pass --out or set `output_path` in the scenario".into(),
            ))
        }
    };
    let table = run_sweep(&spec)?;
    let mut buf = Vec::new();
    table.write_csv(&spec, &mut buf)?;
    fs::write(&out, buf)?;
    eprintln!(
        "wrote {} rows of {} to {}",
        table.rows.len(),
        table.experiment.as_str(),
        out.display()
    );
    Ok(())
}

fn cmd_bounds(
    channel: &str,
    params: &str,
    sigma_grid: &str,
    out: &PathBuf,
    oracle: bool,
    cutoff: usize,
) -> Result<()> {
    let params = parse_f64_list(params)?;
    let sigmas = parse_f64_list(sigma_grid)?;
    if sigmas.is_empty() || !sigmas.windows(2).all(|w| w[0] > w[1]) {
        return Err(Error::Scenario(
            "sigma grid must be nonempty and strictly decreasing".into(),
        ));
    }
    let mut buf = Vec::new();
    if oracle {
        writeln!(buf, "{},oracle_p_tmsv2", BoundReport::csv_header())?;
    } else {
        writeln!(buf, "{}", BoundReport::csv_header())?;
    }
    for &sigma in &sigmas {
        let report = bound_for(channel, &params, sigma)?;
        if oracle {
            let p = oracle_p(channel, &params, sigma, cutoff)?;
            writeln!(buf, "{},{p:.16e}", report.csv_row())?;
        } else {
            writeln!(buf, "{}", report.csv_row())?;
        }
    }
    let digest = Sha256::digest(format!("{channel}|{params:?}|{sigmas:?}|{oracle}").as_bytes());
    writeln!(
        buf,
        "# gausstele={} command=bounds config_sha256={:x}",
        env!("CARGO_PKG_VERSION"),
        digest
    )?;
    fs::write(out, buf)?;
    Ok(())
}

fn cmd_game(scenario: &PathBuf, seed: Option<u64>, out: &PathBuf) -> Result<()> {
    let text = fs::read_to_string(scenario)?;
    let mut config: GameConfig = serde_json::from_str(&text)?;
    if let Some(s) = seed {
        config.rng_seed = s;
    }
    let transcript = play_game(&config)?;
    fs::write(out, serde_json::to_string_pretty(&transcript)?)?;
    let mut summary =
        String::from("seed,probe,sigma_bar,per_round_success_prob,match_fraction,winner\n");
    summary.push_str(&format!(
        "{},{:?},{:.16e},{:.16e},{:.16e},{:?}\n",
        transcript.rng_seed,
        transcript.probe,
        transcript.sigma_bar,
        transcript.per_round_success_prob,
        transcript.match_fraction,
        transcript.winner
    ));
    let digest = Sha256::digest(serde_json::to_string(&config)?.as_bytes());
    summary.push_str(&format!(
        "# gausstele={} command=game config_sha256={:x}\n",
        env!("CARGO_PKG_VERSION"),
        digest
    ));
    let summary_path = out.with_extension("summary.csv");
    fs::write(&summary_path, summary)?;
    eprintln!(
        "winner: {:?} (match fraction {:.4}); transcript at {}, summary at {}",
        transcript.winner,
        transcript.match_fraction,
        out.display(),
        summary_path.display()
    );
    Ok(())
}

fn cmd_skc(
    eta: f64,
    n: u64,
    epsilon: f64,
    n_b: Option<f64>,
    d_value: Option<f64>,
    v_value: Option<f64>,
) -> Result<()> {
    println!("c_epsilon,{epsilon},{:.16e}", c_epsilon(epsilon)?);
    if let Some(d) = d_value {
        let v = v_value
            .ok_or_else(|| Error::InvalidParameter("--d-value needs --v-value as well".into()))?;
        println!(
            "entropy_data_bound,d={d},v={v},n={n},epsilon={epsilon},{:.16e}",
            rate_bound_from_entropy_data(d, v, n, epsilon)?
        );
    }
    match n_b {
        None => {
            println!(
                "pure_loss_bound,eta={eta},n={n},epsilon={epsilon},{:.16e}",
                pure_loss_bound(eta, n, epsilon)?
            );
        }
        Some(nb) => {
            let terms = thermal_bound(eta, nb, n, epsilon, v_value)?;
            println!(
                "thermal_bound,eta={eta},n_b={nb},n={n},epsilon={epsilon},{:.16e}",
                terms.total()
            );
            println!(
                "thermal_bound_terms,leading={:.16e},entropy={:.16e},second_order={:.16e},finite_n={:.16e}",
                terms.leading, terms.entropy_correction, terms.second_order, terms.finite_n
            );
        }
    }
    Ok(())
}

fn cmd_verify(level: VerifyLevel, out: Option<&PathBuf>) -> Result<bool> {
    let level = match level {
        VerifyLevel::Fast => Level::Fast,
        VerifyLevel::Full => Level::Full,
    };
    let results = run_all(level);
    for r in &results {
        println!("{}", r.line());
    }
    let all_passed = results.iter().all(|r| r.passed);
    if let Some(path) = out {
        fs::write(path, serde_json::to_string_pretty(&results)?)?;
    }
    println!(
        "{}: {}/{} checks passed",
        if all_passed { "OK" } else { "FAILED" },
        results.iter().filter(|r| r.passed).count(),
        results.len()
    );
    Ok(all_passed)
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::TruncationFloor(_) | Error::QuadratureFailure(_) => 3,
        Error::Io(_) => 1,
        _ => 2,
    }
}

fn configure_threads(requested: Option<usize>) {
    let n = if std::env::var("GT_DETERMINISTIC").as_deref() == Ok("1") {
        Some(1)
    } else {
        requested
    };
    if let Some(n) = n {
        // ignore the error if a pool already exists (tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

/// Entry point used by `main`; returns the process exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Testable entry point.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success exit codes
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    configure_threads(cli.threads);
    let outcome: Result<bool> = match &cli.command {
        Command::Sweep {
            scenario,
            out,
            cutoff,
        } => cmd_sweep(scenario, out.as_ref(), *cutoff).map(|_| true),
        Command::Bounds {
            channel,
            params,
            sigma_grid,
            out,
            oracle,
            cutoff,
        } => cmd_bounds(channel, params, sigma_grid, out, *oracle, *cutoff).map(|_| true),
        Command::Game {
            scenario,
            seed,
            out,
        } => cmd_game(scenario, *seed, out).map(|_| true),
        Command::Skc {
            eta,
            n,
            epsilon,
            n_b,
            d_value,
            v_value,
        } => cmd_skc(*eta, *n, *epsilon, *n_b, *d_value, *v_value).map(|_| true),
        Command::Verify { level, out } => cmd_verify(*level, out.as_ref()),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
