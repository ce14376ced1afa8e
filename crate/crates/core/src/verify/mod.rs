//! End-to-end checks for arrangements: both sides of
//! `c_SM(1_U) = c(Der(-log D)) ∩ [P^n]`, the freeness and linear-type
//! hypotheses, job files and batch runs.
//!
//! Hypotheses are advisory. Both sides are computed whenever they are defined,
//! and a failed hypothesis only changes the verdict.

mod batch;
mod jobs;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arrangement::{build_lattice_with, Arrangement, ArrangementError, CharPoly, IntersectionLattice};
use crate::chow::{ChowClass, ChowError};
use crate::groebner::{is_linear_type_with, GbOptions, GroebnerError, LinearTypeMethod, DEFAULT_STEP_CAP};
use crate::logder::{
    arrangement_freeness, chern_log_sheaf, FreenessOptions, FreenessVerdict, LogderError, NonFreeReason, TeraoVerdict,
};
use crate::par::Execution;
use crate::poly::PolyError;

pub use batch::{batch_verify, BatchRow, BatchSummary};
pub use jobs::{
    exit_code, run_job, run_job_file, JobKind, JobOptions, JobOutcome, JobSpec, EXIT_FALSE, EXIT_INCONCLUSIVE,
    EXIT_INPUT_ERROR, EXIT_OK,
};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Logder(#[from] LogderError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl VerifyError {
    /// Resource limits are inconclusive rather than input errors.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            VerifyError::Groebner(GroebnerError::ResourceLimit { .. })
                | VerifyError::Logder(LogderError::Groebner(GroebnerError::ResourceLimit { .. }))
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub degree_bound: Option<u32>,
    pub step_cap: usize,
    pub execution: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            degree_bound: None,
            step_cap: DEFAULT_STEP_CAP,
            execution: Execution::default(),
        }
    }
}

impl VerifyOptions {
    fn gb(&self) -> GbOptions {
        GbOptions {
            step_cap: self.step_cap,
            execution: self.execution,
        }
    }

    fn freeness(&self) -> FreenessOptions {
        FreenessOptions {
            degree_bound: self.degree_bound,
            execution: self.execution,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FreeStatus {
    Free,
    NotFree,
    Inconclusive,
}

/// Freeness verdict in plain data: polynomials and derivations as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeHypothesis {
    pub status: FreeStatus,
    pub exponents: Option<Vec<u32>>,
    /// Saito basis, one list of coefficient strings per derivation.
    pub basis: Option<Vec<Vec<String>>>,
    pub determinant: Option<String>,
    pub unit: Option<String>,
    pub reason: Option<String>,
    pub terao: Option<TeraoVerdict>,
}

impl FreeHypothesis {
    pub fn from_verdict(verdict: &FreenessVerdict) -> Self {
        let mut out = FreeHypothesis {
            status: FreeStatus::Inconclusive,
            exponents: None,
            basis: None,
            determinant: None,
            unit: None,
            reason: None,
            terao: None,
        };
        match verdict {
            FreenessVerdict::Free { certificate } => {
                out.status = FreeStatus::Free;
                out.exponents = Some(certificate.exponents.clone());
                out.basis = Some(
                    certificate
                        .basis
                        .iter()
                        .map(|d| d.coeffs().iter().map(|p| p.to_string()).collect())
                        .collect(),
                );
                out.determinant = Some(certificate.determinant.to_string());
                out.unit = Some(certificate.unit.to_string());
            }
            FreenessVerdict::NotFree { reason } => {
                out.status = FreeStatus::NotFree;
                out.reason = Some(describe_reason(reason));
                if let NonFreeReason::TeraoFactorization { verdict } = reason {
                    out.terao = Some(verdict.clone());
                }
            }
            FreenessVerdict::Inconclusive { degrees, degree_bound } => {
                out.reason = Some(format!(
                    "only {} generators (degrees {degrees:?}) up to degree {degree_bound}",
                    degrees.len()
                ));
            }
        }
        out
    }

    fn undecided(reason: String) -> Self {
        FreeHypothesis {
            status: FreeStatus::Inconclusive,
            exponents: None,
            basis: None,
            determinant: None,
            unit: None,
            reason: Some(reason),
            terao: None,
        }
    }
}

fn describe_reason(reason: &NonFreeReason) -> String {
    match reason {
        NonFreeReason::TeraoFactorization { verdict } => format!(
            "characteristic polynomial does not split over the nonnegative integers: roots {:?}, residual {:?}",
            verdict.roots, verdict.residual
        ),
        NonFreeReason::TooManyGenerators { degrees } => {
            format!("{} minimal generators of degrees {degrees:?}", degrees.len())
        }
        NonFreeReason::DegreeSumExceeded {
            degrees,
            polynomial_degree,
        } => format!("generator degrees {degrees:?} already sum past the degree {polynomial_degree}"),
        NonFreeReason::SaitoFailure { degrees, failure } => format!(
            "minimal generators of degrees {degrees:?} have determinant {}",
            failure.determinant
        ),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinearTypeStatus {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearTypeWitness {
    /// Indices of the hyperplanes through the flat.
    pub flat: Vec<usize>,
    pub local_polynomial: String,
    /// Rees-ideal element outside the Sym ideal.
    pub element: String,
}

/// Linear type of the Jacobian ideal on `P^n`, checked at every flat. Near a
/// generic point of a flat `X` the divisor is the localization `A_X` times a
/// smooth factor, and `(h, ∂h)` is unchanged by unit factors, so the local
/// question is the graded one for the essential central arrangement `A_X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearTypeHypothesis {
    pub status: LinearTypeStatus,
    pub flats_checked: usize,
    pub witness: Option<LinearTypeWitness>,
    /// Flats where a resource limit stopped the check.
    pub undecided: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub free: FreeHypothesis,
    pub linear_type: LinearTypeHypothesis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Both hypotheses certified and the sides agree.
    Verified,
    /// Both hypotheses certified and the sides differ.
    Counterexample,
    /// A hypothesis is certified false; the identity is not asserted.
    NotAsserted,
    /// A hypothesis could not be decided.
    Inconclusive,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub lattice_us: u64,
    pub freeness_us: u64,
    pub linear_type_us: u64,
    pub total_us: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub arrangement: serde_json::Value,
    pub n: usize,
    pub hyperplanes: usize,
    pub essential: bool,
    pub characteristic_polynomial: CharPoly,
    pub euler_characteristic: i64,
    /// `c_SM(1_U)`, coefficients of `1, h, .., h^n`.
    pub lhs: ChowClass,
    /// `c(Der(-log D)) ∩ [P^n]` when the arrangement is free.
    pub rhs: Option<ChowClass>,
    pub equal: Option<bool>,
    /// The `[P^0]` coefficient of `lhs` equals the Euler characteristic.
    pub euler_check: bool,
    pub hypotheses: Hypotheses,
    pub verdict: Verdict,
    pub timings: Timings,
}

impl VerificationReport {
    /// JSON without timings; identical across reruns.
    pub fn deterministic_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timings");
        }
        v
    }

    pub fn exit_code(&self) -> i32 {
        match (self.verdict, self.equal) {
            (Verdict::Inconclusive, _) | (_, None) => EXIT_INCONCLUSIVE,
            (_, Some(true)) => EXIT_OK,
            (_, Some(false)) => EXIT_FALSE,
        }
    }

    pub fn to_text(&self) -> String {
        let show = |c: &Option<ChowClass>| c.as_ref().map_or("undefined".to_string(), |c| c.to_string());
        let free = &self.hypotheses.free;
        let free_line = match (&free.status, &free.exponents) {
            (FreeStatus::Free, Some(e)) => format!("free, exponents {e:?}"),
            (s, _) => format!("{}: {}", label(s), free.reason.as_deref().unwrap_or("")),
        };
        let lt = &self.hypotheses.linear_type;
        let lt_line = match &lt.witness {
            Some(w) => format!("{} at flat {:?}: {} not in Sym", label(&lt.status), w.flat, w.element),
            None => format!("{} ({} flats)", label(&lt.status), lt.flats_checked),
        };
        format!(
            "n = {}, {} hyperplanes{}\nchi(t) = {}\nlhs = {}\nrhs = {}\nequal = {}\neuler check = {}\nfree: {}\nlinear type: {}\nverdict: {}\n",
            self.n,
            self.hyperplanes,
            if self.essential { "" } else { " (not essential)" },
            self.characteristic_polynomial,
            self.lhs,
            show(&self.rhs),
            self.equal.map_or("n/a".to_string(), |e| e.to_string()),
            self.euler_check,
            free_line,
            lt_line,
            label(&self.verdict),
        )
    }
}

/// The serialized name of a unit enum variant.
fn label<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

fn micros(t: Instant) -> u64 {
    t.elapsed().as_micros() as u64
}

/// Linear type of the Jacobian ideal at every flat of rank `1..=n`.
pub fn local_linear_type(
    a: &Arrangement,
    lattice: &IntersectionLattice,
    opts: &VerifyOptions,
) -> Result<LinearTypeHypothesis, VerifyError> {
    let flats: Vec<_> = lattice
        .flats()
        .iter()
        .filter(|f| f.rank >= 1 && f.rank <= a.n())
        .collect();
    let gb = opts.gb();
    let results = opts.execution.map(&flats, |flat| {
        let local = a.localization(flat);
        let q = local.defining_polynomial();
        // q is homogeneous, so q lies in the ideal of its partials by Euler
        let partials: Vec<_> = (0..q.ring().nvars())
            .map(|i| q.partial_derivative(i))
            .collect::<Result<Vec<_>, _>>()
            .map_err(GroebnerError::from)?
            .into_iter()
            .filter(|p| !p.is_zero())
            .collect();
        let verdict = is_linear_type_with(&partials, &gb, LinearTypeMethod::Saturation)?;
        Ok::<_, GroebnerError>((q, verdict))
    });
    let mut witness = None;
    let mut undecided = Vec::new();
    for (flat, r) in flats.iter().zip(results) {
        match r {
            Ok((q, v)) => {
                if witness.is_none() {
                    if let Some(w) = v.witness {
                        witness = Some(LinearTypeWitness {
                            flat: flat.closed.clone(),
                            local_polynomial: q.to_string(),
                            element: w.to_string(),
                        });
                    }
                }
            }
            Err(GroebnerError::ResourceLimit { .. }) => undecided.push(flat.closed.clone()),
            Err(e) => return Err(e.into()),
        }
    }
    let status = match (&witness, undecided.is_empty()) {
        (Some(_), _) => LinearTypeStatus::Fails,
        (None, true) => LinearTypeStatus::Holds,
        (None, false) => LinearTypeStatus::Inconclusive,
    };
    Ok(LinearTypeHypothesis {
        status,
        flats_checked: flats.len(),
        witness,
        undecided,
    })
}

pub fn verify_formula(a: &Arrangement, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let lattice = build_lattice_with(a, opts.execution);
    let lhs = lattice.csm_complement();
    let euler = lattice.euler_characteristic();
    let chi = lattice.characteristic_polynomial();
    let lattice_us = micros(start);

    let ((free, freeness_us), (linear, linear_type_us)) = opts.execution.join(
        || {
            let t = Instant::now();
            (arrangement_freeness(a, &opts.freeness()), micros(t))
        },
        || {
            let t = Instant::now();
            (local_linear_type(a, &lattice, opts), micros(t))
        },
    );
    let (free, rhs) = match free {
        Ok(verdict) => {
            let rhs = match verdict.exponents() {
                Some(e) => Some(chern_log_sheaf(e, a.n())?),
                None => None,
            };
            (FreeHypothesis::from_verdict(&verdict), rhs)
        }
        Err(LogderError::Groebner(GroebnerError::ResourceLimit { cap })) => (
            FreeHypothesis::undecided(format!("resource limit of {cap} steps")),
            None,
        ),
        Err(e) => return Err(e.into()),
    };
    let linear_type = linear?;

    let equal = rhs.as_ref().map(|r| *r == lhs);
    let verdict = match (free.status, linear_type.status) {
        (FreeStatus::NotFree, _) | (_, LinearTypeStatus::Fails) => Verdict::NotAsserted,
        (FreeStatus::Inconclusive, _) | (_, LinearTypeStatus::Inconclusive) => Verdict::Inconclusive,
        (FreeStatus::Free, LinearTypeStatus::Holds) => {
            if equal == Some(true) {
                Verdict::Verified
            } else {
                Verdict::Counterexample
            }
        }
    };
    Ok(VerificationReport {
        arrangement: a.to_value(),
        n: a.n(),
        hyperplanes: a.len(),
        essential: a.is_essential(),
        characteristic_polynomial: chi,
        euler_characteristic: euler,
        euler_check: lhs.dimension_component(0) == euler,
        lhs,
        rhs,
        equal,
        hypotheses: Hypotheses { free, linear_type },
        verdict,
        timings: Timings {
            lattice_us,
            freeness_us,
            linear_type_us,
            total_us: micros(start),
        },
    })
}
