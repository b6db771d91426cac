//! Exercises the C ABI exactly as a foreign caller would: through the
//! exported extern "C" functions, raw pointers and status codes.

use std::ffi::{CStr, CString};

use grover2q_ffi::*;

fn set(config: *mut G2qConfig, key: &str, value: &str) -> G2qStatus {
    let key = CString::new(key).unwrap();
    let value = CString::new(value).unwrap();
    unsafe { g2q_config_set(config, key.as_ptr(), value.as_ptr()) }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(g2q_last_error_message()).to_string_lossy().into_owned() }
}

#[test]
fn version_is_a_c_string() {
    let version = unsafe { CStr::from_ptr(g2q_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn config_lifecycle_and_validation() {
    let config = g2q_config_new();
    assert!(!config.is_null());

    assert_eq!(set(config, "seed", "7"), G2qStatus::Ok);
    assert_eq!(set(config, "shots", "0"), G2qStatus::Ok);
    assert_eq!(set(config, "noise_enabled", "false"), G2qStatus::Ok);

    assert_eq!(set(config, "not_a_key", "1"), G2qStatus::ConfigError);
    assert!(last_error().contains("not_a_key"));

    assert_eq!(set(config, "chi", "0.4"), G2qStatus::InvalidArgument);
    assert!(last_error().contains("crosstalk"));

    unsafe { g2q_config_free(config) };
}

#[test]
fn null_pointers_are_rejected() {
    let status = unsafe { g2q_readout_matrix(std::ptr::null(), std::ptr::null_mut()) };
    assert_eq!(status, G2qStatus::NullPointer);
    assert!(unsafe { g2q_grover_success_probability(std::ptr::null()) }.is_nan());
    unsafe { g2q_config_free(std::ptr::null_mut()) };
    unsafe { g2q_grover_result_free(std::ptr::null_mut()) };
}

#[test]
fn readout_matrix_and_contrasts() {
    let config = g2q_config_new();
    let mut matrix = [0.0f64; 16];
    assert_eq!(unsafe { g2q_readout_matrix(config, matrix.as_mut_ptr()) }, G2qStatus::Ok);
    // Column sums 1 (column-stochastic, row-major layout).
    for col in 0..4 {
        let sum: f64 = (0..4).map(|row| matrix[row * 4 + col]).sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    let (mut c_i, mut c_ii) = (0.0f64, 0.0f64);
    assert_eq!(
        unsafe { g2q_readout_contrasts(config, &mut c_i, &mut c_ii) },
        G2qStatus::Ok
    );
    assert!((c_i - 0.84).abs() < 1e-12);
    assert!((c_ii - 0.83).abs() < 1e-12);

    assert_eq!(set(config, "shelving", "off"), G2qStatus::Ok);
    assert_eq!(
        unsafe { g2q_readout_contrasts(config, &mut c_i, &mut c_ii) },
        G2qStatus::Ok
    );
    assert!((c_i - 0.74).abs() < 1e-12);
    assert!((c_ii - 0.73).abs() < 1e-12);

    unsafe { g2q_config_free(config) };
}

#[test]
fn noiseless_exact_run_is_deterministic_success() {
    let config = g2q_config_new();
    for (key, value) in [
        ("noise_enabled", "false"),
        ("shots", "0"),
        ("chi", "0"),
        ("e0_i", "0"),
        ("e1_i", "0"),
        ("e0_ii", "0"),
        ("e1_ii", "0"),
    ] {
        assert_eq!(set(config, key, value), G2qStatus::Ok);
    }
    for tag in 0u8..4 {
        let mut result: *mut G2qGroverResult = std::ptr::null_mut();
        assert_eq!(unsafe { g2q_run_grover(config, tag, false, &mut result) }, G2qStatus::Ok);
        let p = unsafe { g2q_grover_success_probability(result) };
        assert!((p - 1.0).abs() < 1e-10, "tag {tag}: P_S = {p}");

        // Exact path has no counts.
        let mut counts = [0u64; 4];
        assert_eq!(
            unsafe { g2q_grover_counts(result, counts.as_mut_ptr()) },
            G2qStatus::InvalidArgument
        );

        let mut freq = [0.0f64; 4];
        assert_eq!(unsafe { g2q_grover_frequencies(result, freq.as_mut_ptr()) }, G2qStatus::Ok);
        assert!((freq[tag as usize] - 1.0).abs() < 1e-10);

        unsafe { g2q_grover_result_free(result) };
    }
    assert_eq!(unsafe { g2q_run_grover(config, 4, false, &mut std::ptr::null_mut()) }, {
        G2qStatus::InvalidArgument
    });
    unsafe { g2q_config_free(config) };
}

#[test]
fn sampled_runs_repeat_with_the_same_seed() {
    let run_counts = || -> [u64; 4] {
        let config = g2q_config_new();
        assert_eq!(set(config, "seed", "99"), G2qStatus::Ok);
        assert_eq!(set(config, "shots", "2000"), G2qStatus::Ok);
        let mut result: *mut G2qGroverResult = std::ptr::null_mut();
        assert_eq!(unsafe { g2q_run_grover(config, 2, false, &mut result) }, G2qStatus::Ok);
        let mut counts = [0u64; 4];
        assert_eq!(unsafe { g2q_grover_counts(result, counts.as_mut_ptr()) }, G2qStatus::Ok);
        unsafe { g2q_grover_result_free(result) };
        unsafe { g2q_config_free(config) };
        counts
    };
    let a = run_counts();
    let b = run_counts();
    assert_eq!(a, b);
    assert_eq!(a.iter().sum::<u64>(), 2000);
}

#[test]
fn tomography_run_exposes_fidelities_and_state() {
    let config = g2q_config_new();
    assert_eq!(set(config, "tomo_shots", "2000"), G2qStatus::Ok);
    assert_eq!(set(config, "shots", "1000"), G2qStatus::Ok);

    let mut result: *mut G2qGroverResult = std::ptr::null_mut();
    assert_eq!(unsafe { g2q_run_grover(config, 0, true, &mut result) }, G2qStatus::Ok);

    let (mut f_int, mut f_final) = (0.0f64, 0.0f64);
    assert_eq!(
        unsafe { g2q_grover_tomography_fidelities(result, &mut f_int, &mut f_final) },
        G2qStatus::Ok
    );
    assert!(f_int > 0.5 && f_int <= 1.0);
    assert!(f_final > 0.5 && f_final <= 1.0);

    let direct_int = unsafe { g2q_grover_fidelity_after_oracle(result) };
    let direct_final = unsafe { g2q_grover_fidelity_final(result) };
    assert!((direct_int - f_int).abs() < 0.2, "tomography far from direct fidelity");
    assert!((direct_final - f_final).abs() < 0.2);

    let mut re = [0.0f64; 16];
    let mut im = [0.0f64; 16];
    assert_eq!(
        unsafe { g2q_grover_rho_final(result, re.as_mut_ptr(), im.as_mut_ptr()) },
        G2qStatus::Ok
    );
    let trace: f64 = (0..4).map(|i| re[i * 4 + i]).sum();
    assert!((trace - 1.0).abs() < 1e-9, "reconstructed trace {trace}");

    unsafe { g2q_grover_result_free(result) };

    // A run without tomography reports InvalidArgument for those getters.
    let mut plain: *mut G2qGroverResult = std::ptr::null_mut();
    assert_eq!(unsafe { g2q_run_grover(config, 0, false, &mut plain) }, G2qStatus::Ok);
    assert_eq!(
        unsafe { g2q_grover_tomography_fidelities(plain, &mut f_int, &mut f_final) },
        G2qStatus::InvalidArgument
    );
    unsafe { g2q_grover_result_free(plain) };
    unsafe { g2q_config_free(config) };
}

#[test]
fn conditional_table_and_outcome_fidelity() {
    let config = g2q_config_new();
    assert_eq!(set(config, "shots", "0"), G2qStatus::Ok);
    assert_eq!(set(config, "noise_enabled", "false"), G2qStatus::Ok);
    assert_eq!(set(config, "chi", "0"), G2qStatus::Ok);
    for key in ["e0_i", "e1_i", "e0_ii", "e1_ii"] {
        assert_eq!(set(config, key, "0"), G2qStatus::Ok);
    }

    let mut table = [0.0f64; 16];
    assert_eq!(unsafe { g2q_conditional_table(config, table.as_mut_ptr()) }, G2qStatus::Ok);
    for row in 0..4 {
        for col in 0..4 {
            let expected = if row == col { 1.0 } else { 0.0 };
            assert!((table[row * 4 + col] - expected).abs() < 1e-10);
        }
    }

    let mut fidelities = [0.0f64; 4];
    let mut average = 0.0f64;
    assert_eq!(
        unsafe { g2q_outcome_fidelity(table.as_ptr(), fidelities.as_mut_ptr(), &mut average) },
        G2qStatus::Ok
    );
    for f in fidelities {
        assert!((f - 1.0).abs() < 1e-10);
    }
    assert!((average - 1.0).abs() < 1e-10);

    // A table with an impossible outcome row is a numerical error.
    let degenerate = [
        0.0, 0.0, 0.0, 0.0,
        1.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
    ];
    assert_eq!(
        unsafe {
            g2q_outcome_fidelity(degenerate.as_ptr(), fidelities.as_mut_ptr(), &mut average)
        },
        G2qStatus::NumericalError
    );

    unsafe { g2q_config_free(config) };
}

#[test]
fn calibration_through_the_abi() {
    let config = g2q_config_new();
    let (mut chi, mut idle, mut residual) = (0.0f64, 0.0f64, 0.0f64);
    let mut success = [0.0f64; 4];
    assert_eq!(
        unsafe {
            g2q_calibrate(config, false, &mut chi, &mut idle, success.as_mut_ptr(), &mut residual)
        },
        G2qStatus::Ok
    );
    assert!((0.0..=0.05).contains(&chi));
    assert!(residual.is_finite() && residual >= 0.0);
    for p in success {
        assert!((0.45..=0.75).contains(&p), "P_S {p} out of band");
    }
    unsafe { g2q_config_free(config) };
}
