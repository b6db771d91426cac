//! Command-line front end: `grover`, `tomo`, `calibrate`, `readout`.
//!
//! Every command is deterministic given (config, seed); output files are
//! written atomically (write-temp-then-rename) after all computation, so
//! repeated runs produce byte-identical artifacts. Exit codes: 0 success,
//! 2 configuration error, 3 i/o error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::gates::GateSequence;
use crate::grover::{
    calibrate, ideal_tagged_state, outcome_fidelity, prep_sequence, reference_table,
    run_algorithm, tagged_pure_state, AlgorithmResult, ConditionalTable, OracleId,
    REFERENCE_FIDELITY_FINAL, REFERENCE_FIDELITY_INTERMEDIATE, REFERENCE_SUCCESS,
};
use crate::qmat::{format_density_matrix, state_fidelity, DensityMatrix, PureState};
use crate::rng::subseed;
use crate::tomography::{reconstruct, TomographySettings};

#[derive(Parser, Debug)]
#[command(name = "grover2q", version, about = "Two-transmon Grover-search simulator")]
struct Cli {
    /// Configuration file (flat `key = value` lines, `#` comments).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Master seed; overrides the config file.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Shots per run (0 = exact distribution); overrides the config file.
    /// For `tomo`, applies to the per-setting tomography shots.
    #[arg(long, global = true, value_name = "N")]
    shots: Option<u64>,

    /// Disable decoherence.
    #[arg(long, global = true)]
    no_noise: bool,

    /// Readout crosstalk strength; overrides the config file.
    #[arg(long, global = true, value_name = "X")]
    chi: Option<f64>,

    /// Shelving readout mode: on or off.
    #[arg(long, global = true, value_name = "on|off")]
    shelving: Option<String>,

    /// Output directory; overrides the config file.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// For `grover`: evaluate the shipped golden table instead of simulating.
    #[arg(long, global = true)]
    table1: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run all four oracles; write report.txt and conditional_table.csv.
    Grover {
        /// Also reconstruct the register state after the oracle and at the
        /// end of the algorithm (readout-corrected tomography).
        #[arg(long)]
        tomography: bool,
    },
    /// Simulate tomography of an ideal state: phi, tagged:UV, or basis:UV.
    Tomo {
        #[arg(value_name = "STATE")]
        state: String,
    },
    /// Sweep chi (and optionally the pre-readout idle) against the
    /// reference success probabilities; write calibration.txt.
    Calibrate {
        /// Also sweep the pre-readout idle over [0, 300] ns.
        #[arg(long)]
        sweep_idle: bool,
    },
    /// Write the readout matrix CSV and per-qubit contrasts.
    Readout,
}

/// Parse arguments, execute, and map errors to exit codes.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    let mut config = build_config(&cli)?;
    if matches!(cli.command, Command::Tomo { .. }) {
        if let Some(shots) = cli.shots {
            config.tomo_shots = shots;
        }
    }
    std::fs::create_dir_all(&config.out_dir)?;
    match cli.command {
        Command::Grover { tomography } => cmd_grover(&config, cli.table1, tomography),
        Command::Tomo { ref state } => cmd_tomo(&config, state),
        Command::Calibrate { sweep_idle } => cmd_calibrate(&config, sweep_idle),
        Command::Readout => cmd_readout(&config),
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = RunConfig::default();
    if let Some(path) = &cli.config {
        config.apply_file(path)?;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(shots) = cli.shots {
        config.shots = shots;
    }
    if cli.no_noise {
        config.noise_enabled = false;
    }
    if let Some(chi) = cli.chi {
        config.chi = chi;
    }
    if let Some(mode) = &cli.shelving {
        config.set("shelving", mode)?;
    }
    if let Some(out) = &cli.out {
        config.out_dir = out.clone();
    }
    config.validate()?;
    Ok(config)
}

/// Six significant digits, plain notation where readable.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0.00000".into();
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&exponent) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Write-temp-then-rename so partially written artifacts never appear.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = dir.to_path_buf();
    let name = path
        .file_name()
        .ok_or_else(|| Error::invalid(format!("invalid output path {}", path.display())))?;
    tmp.push(format!(".{}.tmp", name.to_string_lossy()));
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn config_summary(config: &RunConfig) -> String {
    let rates = config.readout_rates().expect("validated");
    let mut out = String::new();
    let _ = writeln!(out, "seed = {}", config.seed);
    let _ = writeln!(out, "shots = {}", config.shots);
    let _ = writeln!(out, "tomo_shots = {}", config.tomo_shots);
    let _ = writeln!(out, "noise_enabled = {}", config.noise_enabled);
    let _ = writeln!(
        out,
        "t1_ns = {} / {}  tphi_ns = {} / {}",
        sig6(config.t1_i_ns),
        sig6(config.t1_ii_ns),
        sig6(config.tphi_i_ns),
        sig6(config.tphi_ii_ns)
    );
    let _ = writeln!(out, "shelving = {}", config.shelving);
    let _ = writeln!(
        out,
        "readout_errors = {} {} {} {}  chi = {}",
        sig6(rates.e0_i),
        sig6(rates.e1_i),
        sig6(rates.e0_ii),
        sig6(rates.e1_ii),
        sig6(config.chi)
    );
    let _ = writeln!(out, "prereadout_idle_ns = {}", sig6(config.prereadout_idle_ns));
    out
}

fn sequence_block(label: &str, seq: &GateSequence) -> String {
    let mut out = format!("[sequence {label}]\n");
    out.push_str(&seq.serialize());
    out
}

fn oracle_block(result: &AlgorithmResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "[oracle {}]", result.oracle.label());
    if let Some(counts) = result.outcome_counts {
        let _ = writeln!(out, "counts = {} {} {} {}", counts[0], counts[1], counts[2], counts[3]);
    }
    let _ = writeln!(
        out,
        "frequencies = {} {} {} {}",
        sig6(result.outcome_frequencies[0]),
        sig6(result.outcome_frequencies[1]),
        sig6(result.outcome_frequencies[2]),
        sig6(result.outcome_frequencies[3])
    );
    let _ = writeln!(out, "p_s = {}", sig6(result.success_probability));
    let _ = writeln!(out, "state_fidelity_after_oracle = {}", sig6(result.fidelity_after_oracle));
    let _ = writeln!(out, "state_fidelity_final = {}", sig6(result.fidelity_final));
    if let Some(tomo) = &result.tomography {
        let _ = writeln!(out, "f_int = {}", sig6(tomo.f_int));
        let _ = writeln!(out, "f_final = {}", sig6(tomo.f_final));
        let _ = writeln!(out, "distance_moved_int = {}", sig6(tomo.after_oracle.distance_moved));
        let _ = writeln!(out, "distance_moved_final = {}", sig6(tomo.final_state.distance_moved));
        let _ = writeln!(out, "rho_int =");
        out.push_str(&format_density_matrix(&tomo.after_oracle.physical));
        let _ = writeln!(out, "rho_final =");
        out.push_str(&format_density_matrix(&tomo.final_state.physical));
    }
    out
}

fn fidelity_block(table: &ConditionalTable) -> Result<String> {
    let (fidelities, average) = outcome_fidelity(table)?;
    let mut out = String::from("[outcome fidelity]\n");
    for (ab, f) in fidelities.iter().enumerate() {
        let _ = writeln!(
            out,
            "f_{:02b} = {} ({:.1} %)",
            ab,
            sig6(*f),
            (f * 1000.0).round() / 10.0
        );
    }
    let _ = writeln!(out, "average = {} ({:.1} %)", sig6(average), (average * 1000.0).round() / 10.0);
    Ok(out)
}

fn cmd_grover(config: &RunConfig, table1: bool, with_tomography: bool) -> Result<()> {
    let mut report = String::from("# grover2q grover report\n");

    let table = if table1 {
        report.push_str("source = golden table1.csv\n");
        reference_table()
    } else {
        report.push_str(&config_summary(config));
        let settings = config.grover_settings()?;
        let r = config.readout_matrix()?;

        report.push_str(&sequence_block("prep", &prep_sequence(&settings.conventions, &settings.timings)));
        report.push_str(&sequence_block(
            "oracle 00",
            &crate::grover::oracle_sequence(OracleId::from_tag(0)?, &settings.conventions, &settings.timings),
        ));
        report.push_str(&sequence_block("decode", &crate::grover::decode_sequence(&settings.conventions, &settings.timings)));

        let mut entries = [[0.0; 4]; 4];
        for id in OracleId::ALL {
            let result =
                run_algorithm(id, &r, &settings, subseed(config.seed, id.tag() as u64), with_tomography)?;
            for row in 0..4 {
                entries[row][id.tag()] = result.outcome_frequencies[row];
            }
            report.push_str(&oracle_block(&result));
        }
        let _ = writeln!(
            report,
            "reference p_s = {} {} {} {}",
            sig6(REFERENCE_SUCCESS[0]),
            sig6(REFERENCE_SUCCESS[1]),
            sig6(REFERENCE_SUCCESS[2]),
            sig6(REFERENCE_SUCCESS[3])
        );
        let _ = writeln!(
            report,
            "reference f_int = {} {} {} {}",
            sig6(REFERENCE_FIDELITY_INTERMEDIATE[0]),
            sig6(REFERENCE_FIDELITY_INTERMEDIATE[1]),
            sig6(REFERENCE_FIDELITY_INTERMEDIATE[2]),
            sig6(REFERENCE_FIDELITY_INTERMEDIATE[3])
        );
        let _ = writeln!(
            report,
            "reference f_final = {} {} {} {}",
            sig6(REFERENCE_FIDELITY_FINAL[0]),
            sig6(REFERENCE_FIDELITY_FINAL[1]),
            sig6(REFERENCE_FIDELITY_FINAL[2]),
            sig6(REFERENCE_FIDELITY_FINAL[3])
        );
        ConditionalTable::new(entries)?
    };

    report.push_str("[conditional table]\n");
    report.push_str(&table.to_csv());
    report.push_str(&fidelity_block(&table)?);

    write_atomic(&config.out_dir.join("report.txt"), &report)?;
    write_atomic(&config.out_dir.join("conditional_table.csv"), &table.to_csv())?;
    print!("{report}");
    Ok(())
}

fn parse_state_spec(spec: &str) -> Result<(DensityMatrix, PureState)> {
    let parse_uv = |text: &str| -> Result<OracleId> {
        let bits: Vec<char> = text.chars().collect();
        if bits.len() != 2 || bits.iter().any(|c| *c != '0' && *c != '1') {
            return Err(Error::invalid(format!("state index `{text}` must be two bits")));
        }
        OracleId::from_bits(if bits[0] == '1' { 1 } else { 0 }, if bits[1] == '1' { 1 } else { 0 })
    };
    if spec == "phi" {
        let psi = PureState::uniform_superposition();
        return Ok((DensityMatrix::from_pure(&psi)?, psi));
    }
    if let Some(uv) = spec.strip_prefix("tagged:") {
        let id = parse_uv(uv)?;
        return Ok((ideal_tagged_state(id), tagged_pure_state(id)));
    }
    if let Some(uv) = spec.strip_prefix("basis:") {
        let id = parse_uv(uv)?;
        let psi = PureState::basis(4, id.tag())?;
        return Ok((DensityMatrix::from_pure(&psi)?, psi));
    }
    Err(Error::invalid(format!(
        "unknown state spec `{spec}` (expected phi, tagged:UV, or basis:UV)"
    )))
}

fn cmd_tomo(config: &RunConfig, spec: &str) -> Result<()> {
    let (rho_true, psi_true) = parse_state_spec(spec)?;
    let settings = TomographySettings {
        sampling: config.tomo_sampling(),
        seed: config.seed,
        conventions: config.conventions(),
        noise: config.noise_params()?,
        timings: config.timings(),
        idealize_pulses: config.ideal_tomo_pulses,
    };
    let r = config.readout_matrix()?;
    let result = reconstruct(&rho_true, &r, &settings)?;
    let fidelity = state_fidelity(&result.physical, &psi_true)?;

    let mut raw_dump = crate::qmat::format_complex_matrix(&result.raw);
    raw_dump.push_str(&format!("# raw linear-inversion matrix for state {spec}\n"));
    write_atomic(&config.out_dir.join("tomo_raw.txt"), &raw_dump)?;

    let physical_dump = result.serialize(fidelity, config.tomo_shots, config.seed);
    write_atomic(&config.out_dir.join("tomo_physical.txt"), &physical_dump)?;

    let mut report = String::from("# grover2q tomo report\n");
    let _ = writeln!(report, "state = {spec}");
    report.push_str(&config_summary(config));
    let _ = writeln!(
        report,
        "fidelity = {}  distance_moved = {}",
        sig6(fidelity),
        sig6(result.distance_moved)
    );
    write_atomic(&config.out_dir.join("tomo_report.txt"), &report)?;
    print!("{report}");
    Ok(())
}

fn cmd_calibrate(config: &RunConfig, sweep_idle: bool) -> Result<()> {
    let settings = config.grover_settings()?;
    let result = calibrate(&settings, config.shelving, sweep_idle)?;

    let mut calibration = String::from("# grover2q best-fit calibration (config-loadable)\n");
    let _ = writeln!(
        calibration,
        "# achieved p_s      = {} {} {} {}",
        sig6(result.success[0]),
        sig6(result.success[1]),
        sig6(result.success[2]),
        sig6(result.success[3])
    );
    let _ = writeln!(
        calibration,
        "# reference p_s     = {} {} {} {}",
        sig6(REFERENCE_SUCCESS[0]),
        sig6(REFERENCE_SUCCESS[1]),
        sig6(REFERENCE_SUCCESS[2]),
        sig6(REFERENCE_SUCCESS[3])
    );
    let _ = writeln!(
        calibration,
        "# fidelity_final    = {} {} {} {}",
        sig6(result.fidelity_final[0]),
        sig6(result.fidelity_final[1]),
        sig6(result.fidelity_final[2]),
        sig6(result.fidelity_final[3])
    );
    let _ = writeln!(calibration, "# residual_sq       = {}", sig6(result.residual));
    let _ = writeln!(
        calibration,
        "# residual reflects device effects outside this model (readout dynamics, pulse errors)"
    );
    let _ = writeln!(calibration, "chi = {}", sig6(result.chi));
    let _ = writeln!(calibration, "prereadout_idle_ns = {}", sig6(result.prereadout_idle_ns));
    write_atomic(&config.out_dir.join("calibration.txt"), &calibration)?;
    print!("{calibration}");
    Ok(())
}

fn cmd_readout(config: &RunConfig) -> Result<()> {
    let rates = config.readout_rates()?;
    let r = config.readout_matrix()?;
    let (c_i, c_ii) = rates.contrasts();

    write_atomic(&config.out_dir.join("readout_matrix.csv"), &r.to_csv())?;

    let mut report = String::from("# grover2q readout report\n");
    let _ = writeln!(report, "shelving = {}", rates.shelving);
    let _ = writeln!(
        report,
        "rates = e0_i {} e1_i {} e0_ii {} e1_ii {} chi {}",
        sig6(rates.e0_i),
        sig6(rates.e1_i),
        sig6(rates.e0_ii),
        sig6(rates.e1_ii),
        sig6(rates.crosstalk)
    );
    let _ = writeln!(report, "contrast_i = {}", sig6(c_i));
    let _ = writeln!(report, "contrast_ii = {}", sig6(c_ii));
    report.push_str(&r.to_csv());
    write_atomic(&config.out_dir.join("readout_report.txt"), &report)?;
    print!("{report}");
    Ok(())
}
