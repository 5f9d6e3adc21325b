use std::ffi::{CStr, CString};
use std::ptr;

use orthoqkd_ffi::*;

fn last_error() -> String {
    let p = oq_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn simulate_through_handles() {
    let cfg = OqSimConfig {
        rounds: 2000,
        seed: 17,
        attack: OqAttack::DoubleCnot,
        ensemble: OqEnsemble::Cabello,
        alpha: 0.0,
        beta: 0.0,
    };
    let mut report: *mut OqReport = ptr::null_mut();
    assert_eq!(unsafe { oq_simulate(&cfg, &mut report) }, OqStatus::Ok);
    assert!(!report.is_null());

    let mut summary = OqReportSummary::default();
    assert_eq!(
        unsafe { oq_report_summary(report, &mut summary) },
        OqStatus::Ok
    );
    assert_eq!(summary.alphabet_size, 4);
    assert_eq!(summary.per_symbol_counts.iter().sum::<u64>(), 2000);
    assert_eq!(summary.bob_error_rate, 0.0);
    assert_eq!(summary.efficiency, 1.0);
    assert_eq!(summary.knowledge_soundness_violations, 0);
    assert!((summary.analytic_mutual_information_bits - 1.5).abs() < 1e-12);

    let mut text: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { oq_report_render(report, OqFormat::Json, &mut text) },
        OqStatus::Ok
    );
    let json = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
    assert!(json.contains("\"eve_exact_fraction\""));
    unsafe {
        oq_string_free(text);
        oq_report_free(report);
    }
}

#[test]
fn configuration_errors_map_to_status_codes() {
    let mut cfg = OqSimConfig {
        rounds: 10,
        seed: 0,
        attack: OqAttack::InterceptResend,
        ensemble: OqEnsemble::NonMax,
        alpha: 0.3,
        beta: 1.0,
    };
    let mut report: *mut OqReport = ptr::null_mut();
    assert_eq!(
        unsafe { oq_simulate(&cfg, &mut report) },
        OqStatus::InvalidArgument
    );
    assert!(last_error().contains("cabello"));

    cfg.attack = OqAttack::DoubleCnot;
    cfg.alpha = std::f64::consts::FRAC_PI_4;
    assert_eq!(unsafe { oq_simulate(&cfg, &mut report) }, OqStatus::Domain);
    assert!(last_error().contains("pi/4"));

    assert_eq!(
        unsafe { oq_simulate(ptr::null(), &mut report) },
        OqStatus::NullPointer
    );
    assert_eq!(
        unsafe { oq_simulate(&cfg, ptr::null_mut()) },
        OqStatus::NullPointer
    );
    assert!(report.is_null());
}

#[test]
fn mor_check_and_information() {
    let mut r = OqMorResult::default();
    let (a, b) = (std::f64::consts::PI / 6.0, std::f64::consts::PI / 3.0);
    assert_eq!(unsafe { oq_mor_check(a, b, &mut r) }, OqStatus::Ok);
    assert!(r.criterion_satisfied && r.attack_distinguishes);
    assert!((r.tr_rho1_product - 0.375).abs() < 1e-10);
    assert!((r.tr_rho2_product - 0.625).abs() < 1e-10);
    assert_eq!(unsafe { oq_mor_check(0.3, 0.3, &mut r) }, OqStatus::Domain);

    let mut bits = 0.0;
    let st = unsafe {
        oq_eve_mutual_information(
            OqEnsemble::Cabello,
            0.0,
            0.0,
            OqAttack::DoubleCnot,
            &mut bits,
        )
    };
    assert_eq!(st, OqStatus::Ok);
    assert!((bits - 1.5).abs() < 1e-12);

    let mut e = 0.0;
    assert_eq!(unsafe { oq_efficiency(2, 2, 0, &mut e) }, OqStatus::Ok);
    assert_eq!(e, 1.0);
    assert_eq!(
        unsafe { oq_efficiency(1, 0, 0, &mut e) },
        OqStatus::InvalidArgument
    );
}

#[test]
fn state_handle_reproduces_parity_copy() {
    // |psi_1>|0>_e after CNOT(1->e), CNOT(2->e) is |psi_1>|1>_e: amplitude 1/sqrt2 at |011> and |101>
    let mut s: *mut OqState = ptr::null_mut();
    unsafe {
        assert_eq!(
            oq_state_encode(OqEnsemble::Cabello, 0.0, 0.0, 1, &mut s),
            OqStatus::Ok
        );
        assert_eq!(oq_state_append_zero(s, OqQubit::EveAncilla), OqStatus::Ok);
        assert_eq!(
            oq_state_apply_cnot(s, OqQubit::Qubit1, OqQubit::EveAncilla),
            OqStatus::Ok
        );
        assert_eq!(
            oq_state_apply_cnot(s, OqQubit::Qubit2, OqQubit::EveAncilla),
            OqStatus::Ok
        );
        assert_eq!(
            oq_state_apply_cnot(s, OqQubit::Qubit1, OqQubit::Qubit1),
            OqStatus::InvalidArgument
        );

        let (mut re, mut im) = ([0.0; 8], [0.0; 8]);
        let mut n = 0usize;
        assert_eq!(
            oq_state_amplitudes(s, re.as_mut_ptr(), im.as_mut_ptr(), 2, &mut n),
            OqStatus::InvalidArgument
        );
        assert_eq!(n, 8);
        assert_eq!(
            oq_state_amplitudes(s, re.as_mut_ptr(), im.as_mut_ptr(), 8, &mut n),
            OqStatus::Ok
        );
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [0.0, 0.0, 0.0, h, 0.0, h, 0.0, 0.0];
        for i in 0..8 {
            assert!((re[i] - expected[i]).abs() < 1e-12 && im[i] == 0.0);
        }
        oq_state_free(s);
    }
    let mut bad: *mut OqState = ptr::null_mut();
    assert_eq!(
        unsafe { oq_state_encode(OqEnsemble::Cabello, 0.0, 0.0, 4, &mut bad) },
        OqStatus::InvalidArgument
    );
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(oq_version()) };
    assert_eq!(
        v,
        CString::new(env!("CARGO_PKG_VERSION")).unwrap().as_c_str()
    );
}
