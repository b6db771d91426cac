//! Run configuration: a flat `key = value` text format with `#` comments.
//! Command-line flags override file keys; missing keys take the documented
//! defaults. The same parser backs the calibration output file, so best-fit
//! parameters round-trip through `--config`.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::gates::{Conventions, DecodeAxis, GateTimings, IswapPhase, RotationSign};
use crate::grover::GroverSettings;
use crate::noise::NoiseParams;
use crate::readout::{build_readout_matrix, ReadoutErrorRates, ReadoutMatrix, Sampling};

/// All tunables of a simulation run.
///
/// Defaults: device noise (T1 = 450/500 ns, Tφ = 2 µs) enabled, shelving
/// readout rates with χ = 0.01, 10⁴ shots per run and per tomography
/// setting, seed 1, canonical conventions, default gate timings, no
/// pre-readout idle, noisy tomography pulses, output under `out/`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub t1_i_ns: f64,
    pub t1_ii_ns: f64,
    pub tphi_i_ns: f64,
    pub tphi_ii_ns: f64,
    pub noise_enabled: bool,
    /// Explicit per-qubit assignment errors; `None` selects the device rate
    /// table for the current shelving mode.
    pub e0_i: Option<f64>,
    pub e1_i: Option<f64>,
    pub e0_ii: Option<f64>,
    pub e1_ii: Option<f64>,
    pub chi: f64,
    pub shelving: bool,
    /// Shots per single-run experiment; 0 selects the exact-distribution path.
    pub shots: u64,
    /// Shots per tomography setting; 0 selects the exact-distribution path.
    pub tomo_shots: u64,
    pub seed: u64,
    pub rotation_sign: RotationSign,
    pub iswap_phase: IswapPhase,
    pub decode_axis: DecodeAxis,
    pub single_qubit_gate_ns: f64,
    pub z_gate_ns: f64,
    pub coupling_mhz: f64,
    pub prereadout_idle_ns: f64,
    pub ideal_tomo_pulses: bool,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            t1_i_ns: 450.0,
            t1_ii_ns: 500.0,
            tphi_i_ns: 2000.0,
            tphi_ii_ns: 2000.0,
            noise_enabled: true,
            e0_i: None,
            e1_i: None,
            e0_ii: None,
            e1_ii: None,
            chi: 0.01,
            shelving: true,
            shots: 10_000,
            tomo_shots: 10_000,
            seed: 1,
            rotation_sign: RotationSign::Positive,
            iswap_phase: IswapPhase::MinusI,
            decode_axis: DecodeAxis::X,
            single_qubit_gate_ns: 25.0,
            z_gate_ns: 5.0,
            coupling_mhz: 4.6,
            prereadout_idle_ns: 0.0,
            ideal_tomo_pulses: false,
            out_dir: PathBuf::from("out"),
        }
    }
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        _ => Err(Error::config(key, format!("`{value}` is not a boolean"))),
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value.parse().map_err(|_| Error::config(key, format!("`{value}` is not a number")))
}

fn parse_u64(key: &str, value: &str) -> Result<u64> {
    value.parse().map_err(|_| Error::config(key, format!("`{value}` is not a non-negative integer")))
}

impl RunConfig {
    /// Apply one `key = value` assignment. Unknown keys are rejected with a
    /// diagnostic naming the key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "t1_i_ns" => self.t1_i_ns = parse_f64(key, value)?,
            "t1_ii_ns" => self.t1_ii_ns = parse_f64(key, value)?,
            "tphi_i_ns" => self.tphi_i_ns = parse_f64(key, value)?,
            "tphi_ii_ns" => self.tphi_ii_ns = parse_f64(key, value)?,
            "noise_enabled" => self.noise_enabled = parse_bool(key, value)?,
            "e0_i" => self.e0_i = Some(parse_f64(key, value)?),
            "e1_i" => self.e1_i = Some(parse_f64(key, value)?),
            "e0_ii" => self.e0_ii = Some(parse_f64(key, value)?),
            "e1_ii" => self.e1_ii = Some(parse_f64(key, value)?),
            "chi" => self.chi = parse_f64(key, value)?,
            "shelving" => self.shelving = parse_bool(key, value)?,
            "shots" => self.shots = parse_u64(key, value)?,
            "tomo_shots" => self.tomo_shots = parse_u64(key, value)?,
            "seed" => self.seed = parse_u64(key, value)?,
            "rotation_sign" => {
                self.rotation_sign = match value {
                    "+1" | "1" => RotationSign::Positive,
                    "-1" => RotationSign::Negative,
                    _ => return Err(Error::config(key, format!("`{value}` must be +1 or -1"))),
                }
            }
            "iswap_phase" => {
                self.iswap_phase = match value {
                    "+i" | "i" => IswapPhase::PlusI,
                    "-i" => IswapPhase::MinusI,
                    _ => return Err(Error::config(key, format!("`{value}` must be +i or -i"))),
                }
            }
            "decode_axis" => {
                self.decode_axis = match value.to_ascii_uppercase().as_str() {
                    "X" => DecodeAxis::X,
                    "Y" => DecodeAxis::Y,
                    _ => return Err(Error::config(key, format!("`{value}` must be X or Y"))),
                }
            }
            "single_qubit_gate_ns" => self.single_qubit_gate_ns = parse_f64(key, value)?,
            "z_gate_ns" => self.z_gate_ns = parse_f64(key, value)?,
            "coupling_mhz" => self.coupling_mhz = parse_f64(key, value)?,
            "prereadout_idle_ns" => self.prereadout_idle_ns = parse_f64(key, value)?,
            "ideal_tomo_pulses" => self.ideal_tomo_pulses = parse_bool(key, value)?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            _ => return Err(Error::config(key, "unknown configuration key")),
        }
        Ok(())
    }

    /// Parse a config file into `self`, line by line.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        self.apply_text(&text)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for raw in text.lines() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::config(line, "expected `key = value`"));
            };
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn conventions(&self) -> Conventions {
        Conventions {
            rotation_sign: self.rotation_sign,
            iswap_phase: self.iswap_phase,
            decode_axis: self.decode_axis,
        }
    }

    pub fn timings(&self) -> GateTimings {
        GateTimings {
            single_qubit_ns: self.single_qubit_gate_ns,
            z_rotation_ns: self.z_gate_ns,
            coupling_mhz: self.coupling_mhz,
        }
    }

    pub fn noise_params(&self) -> Result<NoiseParams> {
        NoiseParams::new(self.t1_i_ns, self.t1_ii_ns, self.tphi_i_ns, self.tphi_ii_ns, self.noise_enabled)
    }

    /// Resolve the assignment-error rates: the device table for the current
    /// shelving mode, with any explicit overrides applied on top.
    pub fn readout_rates(&self) -> Result<ReadoutErrorRates> {
        let base = ReadoutErrorRates::device_rates(self.shelving, 0.0)?;
        ReadoutErrorRates::new(
            self.e0_i.unwrap_or(base.e0_i),
            self.e1_i.unwrap_or(base.e1_i),
            self.e0_ii.unwrap_or(base.e0_ii),
            self.e1_ii.unwrap_or(base.e1_ii),
            self.shelving,
            self.chi,
        )
    }

    pub fn readout_matrix(&self) -> Result<ReadoutMatrix> {
        build_readout_matrix(&self.readout_rates()?)
    }

    pub fn run_sampling(&self) -> Sampling {
        if self.shots == 0 {
            Sampling::Exact
        } else {
            Sampling::Shots(self.shots)
        }
    }

    pub fn tomo_sampling(&self) -> Sampling {
        if self.tomo_shots == 0 {
            Sampling::Exact
        } else {
            Sampling::Shots(self.tomo_shots)
        }
    }

    pub fn grover_settings(&self) -> Result<GroverSettings> {
        Ok(GroverSettings {
            noise: self.noise_params()?,
            conventions: self.conventions(),
            timings: self.timings(),
            sampling: self.run_sampling(),
            tomography_sampling: self.tomo_sampling(),
            idealize_tomography_pulses: self.ideal_tomo_pulses,
            prereadout_idle_ns: self.prereadout_idle_ns,
        })
    }

    /// Validate every derived object once, so configuration problems surface
    /// before any computation.
    pub fn validate(&self) -> Result<()> {
        self.noise_params()?;
        self.readout_rates()?;
        if self.prereadout_idle_ns < 0.0 {
            return Err(Error::config("prereadout_idle_ns", "must be non-negative"));
        }
        if self.single_qubit_gate_ns < 0.0 || self.z_gate_ns < 0.0 {
            return Err(Error::config("single_qubit_gate_ns", "gate durations must be non-negative"));
        }
        if !(self.coupling_mhz > 0.0) {
            return Err(Error::config("coupling_mhz", "must be positive"));
        }
        Ok(())
    }
}
