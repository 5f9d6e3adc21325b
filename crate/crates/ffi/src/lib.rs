//! C ABI over `orthoqkd`.
//!
//! Every fallible call returns an [`OqStatus`]; on failure the message is
//! available from [`oq_last_error_message`] on the same thread. Reports and
//! states are opaque handles released with their `_free` function. Strings
//! returned through out-parameters are released with [`oq_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orthoqkd::harness::{
    mor_check_pair, simulate, OutputFormat, SimulationConfig, SimulationReport,
};
use orthoqkd::{
    attack_by_name, efficiency, encode, eve_mutual_information, EnsembleKind, Error, QubitId,
    StateEnsemble, StateVector,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    PhaseViolation = 4,
    Invariant = 5,
    Io = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OqAttack {
    None = 0,
    DoubleCnot = 1,
    InterceptResend = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OqEnsemble {
    Cabello = 0,
    NonMax = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OqFormat {
    Json = 0,
    Csv = 1,
    Text = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OqQubit {
    Qubit1 = 0,
    Qubit2 = 1,
    EveAncilla = 2,
    Aux = 3,
}

/// `alpha` and `beta` are read only when `ensemble` is `NonMax`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct OqSimConfig {
    pub rounds: u64,
    pub seed: u64,
    pub attack: OqAttack,
    pub ensemble: OqEnsemble,
    pub alpha: f64,
    pub beta: f64,
}

/// Numeric fields of a simulation report. Only the first `alphabet_size`
/// entries of `per_symbol_counts` are meaningful.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct OqReportSummary {
    pub rounds: u64,
    pub seed: u64,
    pub alphabet_size: u32,
    pub per_symbol_counts: [u64; 4],
    pub bob_error_rate: f64,
    pub mean_bob_fidelity: f64,
    pub eve_exact_fraction: f64,
    pub eve_partition_fraction: f64,
    pub knowledge_soundness_violations: u64,
    pub empirical_mutual_information_bits: f64,
    pub analytic_mutual_information_bits: f64,
    pub efficiency: f64,
    pub elapsed_ms: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct OqMorResult {
    pub rho1_orthogonal: bool,
    pub rho1_identical: bool,
    pub rho2_orthogonal: bool,
    pub criterion_satisfied: bool,
    pub tr_rho1_product: f64,
    pub rho1_distance: f64,
    pub tr_rho2_product: f64,
    pub attack_distinguishes: bool,
    pub attack_min_fidelity: f64,
    pub eve_mutual_information_bits: f64,
}

/// Opaque simulation report.
pub struct OqReport(SimulationReport);

/// Opaque state vector.
pub struct OqState(StateVector);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> OqStatus {
    match e {
        Error::Domain(_) => OqStatus::Domain,
        Error::PhaseViolation { .. } => OqStatus::PhaseViolation,
        Error::Invariant(_) | Error::NotNormalized(_) | Error::NonFinite(_) => OqStatus::Invariant,
        Error::Io(_) => OqStatus::Io,
        _ => OqStatus::InvalidArgument,
    }
}

enum Failure {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> OqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OqStatus::Ok,
        Ok(Err(Failure::Null(name))) => {
            set_last_error(format!("{name} is null"));
            OqStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("panic inside orthoqkd".into());
            OqStatus::Panic
        }
    }
}

fn null_pointer(name: &'static str) -> Failure {
    Failure::Null(name)
}

fn ensemble_kind(ensemble: OqEnsemble, alpha: f64, beta: f64) -> EnsembleKind {
    match ensemble {
        OqEnsemble::Cabello => EnsembleKind::Cabello,
        OqEnsemble::NonMax => EnsembleKind::NonMax { alpha, beta },
    }
}

fn build_ensemble(ensemble: OqEnsemble, alpha: f64, beta: f64) -> Result<StateEnsemble, Error> {
    match ensemble {
        OqEnsemble::Cabello => Ok(StateEnsemble::cabello()),
        OqEnsemble::NonMax => StateEnsemble::nonmax(alpha, beta),
    }
}

fn attack_name(a: OqAttack) -> &'static str {
    match a {
        OqAttack::None => "none",
        OqAttack::DoubleCnot => "double-cnot",
        OqAttack::InterceptResend => "intercept-resend",
    }
}

fn qubit(q: OqQubit) -> QubitId {
    match q {
        OqQubit::Qubit1 => QubitId::Qubit1,
        OqQubit::Qubit2 => QubitId::Qubit2,
        OqQubit::EveAncilla => QubitId::EveAncilla,
        OqQubit::Aux => QubitId::Aux,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn oq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn oq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn oq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a simulation. On success `*out` receives a report handle.
///
/// # Safety
/// `config` must point to a valid `OqSimConfig`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oq_simulate(
    config: *const OqSimConfig,
    out: *mut *mut OqReport,
) -> OqStatus {
    guard(|| {
        let cfg = config.as_ref().ok_or_else(|| null_pointer("config"))?;
        if out.is_null() {
            return Err(null_pointer("out"));
        }
        let report = simulate(&SimulationConfig {
            rounds: cfg.rounds,
            seed: cfg.seed,
            attack_name: attack_name(cfg.attack).to_owned(),
            ensemble: ensemble_kind(cfg.ensemble, cfg.alpha, cfg.beta),
            ..SimulationConfig::default()
        })?;
        *out = Box::into_raw(Box::new(OqReport(report)));
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle from `oq_simulate`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oq_report_summary(
    report: *const OqReport,
    out: *mut OqReportSummary,
) -> OqStatus {
    guard(|| {
        let r = &report.as_ref().ok_or_else(|| null_pointer("report"))?.0;
        let out = out.as_mut().ok_or_else(|| null_pointer("out"))?;
        let mut counts = [0u64; 4];
        for (slot, c) in counts.iter_mut().zip(&r.per_symbol_counts) {
            *slot = *c;
        }
        *out = OqReportSummary {
            rounds: r.config.rounds,
            seed: r.config.seed,
            alphabet_size: r.per_symbol_counts.len() as u32,
            per_symbol_counts: counts,
            bob_error_rate: r.bob_error_rate,
            mean_bob_fidelity: r.mean_bob_fidelity,
            eve_exact_fraction: r.eve_exact_fraction,
            eve_partition_fraction: r.eve_partition_fraction,
            knowledge_soundness_violations: r.knowledge_soundness_violations,
            empirical_mutual_information_bits: r.empirical_mutual_information_bits,
            analytic_mutual_information_bits: r.analytic_mutual_information_bits,
            efficiency: r.efficiency,
            elapsed_ms: r.elapsed_ms,
        };
        Ok(())
    })
}

/// Renders a report; `*out` receives a string to release with `oq_string_free`.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oq_report_render(
    report: *const OqReport,
    format: OqFormat,
    out: *mut *mut c_char,
) -> OqStatus {
    guard(|| {
        let r = &report.as_ref().ok_or_else(|| null_pointer("report"))?.0;
        if out.is_null() {
            return Err(null_pointer("out"));
        }
        let format = match format {
            OqFormat::Json => OutputFormat::Json,
            OqFormat::Csv => OutputFormat::Csv,
            OqFormat::Text => OutputFormat::Text,
        };
        let text = r.render(format)?;
        *out = CString::new(text)
            .map_err(|e| Error::Invariant(e.to_string()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `report` must be NULL or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn oq_report_free(report: *mut OqReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Criterion audit and double-CNOT attack for `psi(alpha)`, `phi(beta)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oq_mor_check(alpha: f64, beta: f64, out: *mut OqMorResult) -> OqStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null_pointer("out"))?;
        let r = mor_check_pair(alpha, beta)?;
        *out = OqMorResult {
            rho1_orthogonal: r.rho1_orthogonal,
            rho1_identical: r.rho1_identical,
            rho2_orthogonal: r.rho2_orthogonal,
            criterion_satisfied: r.criterion_satisfied,
            tr_rho1_product: r.tr_rho1_product,
            rho1_distance: r.rho1_distance,
            tr_rho2_product: r.tr_rho2_product,
            attack_distinguishes: r.attack_distinguishes,
            attack_min_fidelity: r.attack_min_fidelity,
            eve_mutual_information_bits: r.eve_mutual_information_bits,
        };
        Ok(())
    })
}

/// Exact `I(Alice; Eve)` in bits.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oq_eve_mutual_information(
    ensemble: OqEnsemble,
    alpha: f64,
    beta: f64,
    attack: OqAttack,
    out: *mut f64,
) -> OqStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null_pointer("out"))?;
        let e = build_ensemble(ensemble, alpha, beta)?;
        let a = attack_by_name(attack_name(attack))?;
        if !a.supports(&e.kind()) {
            return Err(Error::Config(format!(
                "attack {} does not support this ensemble",
                a.name()
            ))
            .into());
        }
        *out = eve_mutual_information(&e, a.as_ref())?;
        Ok(())
    })
}

/// `secret_bits / (qubits + classical_bits)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oq_efficiency(
    secret_bits: u64,
    qubits: u64,
    classical_bits: u64,
    out: *mut f64,
) -> OqStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null_pointer("out"))?;
        *out = efficiency(secret_bits, qubits, classical_bits)?;
        Ok(())
    })
}

/// Encoded two-qubit state for `symbol`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oq_state_encode(
    ensemble: OqEnsemble,
    alpha: f64,
    beta: f64,
    symbol: u8,
    out: *mut *mut OqState,
) -> OqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_pointer("out"));
        }
        let e = build_ensemble(ensemble, alpha, beta)?;
        let s = encode(&e, e.symbol(symbol)?)?;
        *out = Box::into_raw(Box::new(OqState(s)));
        Ok(())
    })
}

/// Appends a qubit in `|0>` after the existing ones.
///
/// # Safety
/// `state` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn oq_state_append_zero(state: *mut OqState, q: OqQubit) -> OqStatus {
    guard(|| {
        let s = state.as_mut().ok_or_else(|| null_pointer("state"))?;
        s.0 = s.0.tensor_product(&StateVector::zero(qubit(q)))?;
        Ok(())
    })
}

/// # Safety
/// `state` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn oq_state_apply_cnot(
    state: *mut OqState,
    control: OqQubit,
    target: OqQubit,
) -> OqStatus {
    guard(|| {
        let s = state.as_mut().ok_or_else(|| null_pointer("state"))?;
        s.0 = s.0.apply_cnot(qubit(control), qubit(target))?;
        Ok(())
    })
}

/// Copies amplitudes (big-endian basis order) into `re` and `im`, each of
/// capacity `len`. `*written` receives the state's dimension; if `len` is
/// smaller nothing is copied and `InvalidArgument` is returned.
///
/// # Safety
/// `state` must be a live handle; `re` and `im` must hold `len` doubles;
/// `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn oq_state_amplitudes(
    state: *const OqState,
    re: *mut f64,
    im: *mut f64,
    len: usize,
    written: *mut usize,
) -> OqStatus {
    guard(|| {
        let s = &state.as_ref().ok_or_else(|| null_pointer("state"))?.0;
        let written = written.as_mut().ok_or_else(|| null_pointer("written"))?;
        *written = s.dim();
        if len < s.dim() {
            return Err(Error::BadLength {
                expected: s.dim(),
                got: len,
            }
            .into());
        }
        if re.is_null() || im.is_null() {
            return Err(null_pointer("re/im"));
        }
        for (i, a) in s.amplitudes().iter().enumerate() {
            *re.add(i) = a.re;
            *im.add(i) = a.im;
        }
        Ok(())
    })
}

/// # Safety
/// `state` must be NULL or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn oq_state_free(state: *mut OqState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}
