//! JSON job files: `{"kind": .., payload, "options": {"degree_bound", "step_cap"}}`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{verify_formula, FreeHypothesis, VerifyError, VerifyOptions};
use crate::arrangement::{build_lattice, Arrangement};
use crate::chow::proof_chain_check;
use crate::groebner::{is_linear_type_with, jacobian_ideal, LinearTypeMethod, DEFAULT_STEP_CAP};
use crate::logder::{
    arrangement_freeness, bounded_log_derivations, find_free_basis_with, saito_from_candidates,
    terao_factorization_check, FreenessVerdict,
};
use crate::par::Execution;
use crate::poly::{identifiers, parse_in_ring, Polynomial, Ring};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JobKind {
    VerifyArrangement,
    Freeness,
    LinearType,
    CharPoly,
    ProofChain,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    pub degree_bound: Option<u32>,
    pub step_cap: Option<usize>,
}

impl JobOptions {
    /// Fields set in `other` win.
    pub fn overridden_by(self, other: JobOptions) -> JobOptions {
        JobOptions {
            degree_bound: other.degree_bound.or(self.degree_bound),
            step_cap: other.step_cap.or(self.step_cap),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub kind: JobKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrangement: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    /// Ring variables for `polynomial` / `generators`; inferred when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default)]
    pub options: JobOptions,
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<Self, VerifyError> {
        serde_json::from_str(text).map_err(|e| VerifyError::Input(e.to_string()))
    }

    fn verify_options(&self, execution: Execution) -> VerifyOptions {
        VerifyOptions {
            degree_bound: self.options.degree_bound,
            step_cap: self.options.step_cap.unwrap_or(DEFAULT_STEP_CAP),
            execution,
        }
    }

    fn arrangement(&self) -> Result<Arrangement, VerifyError> {
        let value = self
            .arrangement
            .as_ref()
            .ok_or_else(|| VerifyError::Input(format!("{:?} job needs an \"arrangement\"", self.kind)))?;
        Ok(Arrangement::from_value(value)?)
    }

    fn ring_for(&self, texts: &[&str]) -> Result<Ring, VerifyError> {
        if let Some(vars) = &self.variables {
            return Ok(Ring::new(vars));
        }
        let mut names: Vec<String> = Vec::new();
        for t in texts {
            for id in identifiers(t)? {
                if !names.contains(&id) {
                    names.push(id);
                }
            }
        }
        if names.is_empty() {
            return Err(VerifyError::Input("no variables; give \"variables\"".into()));
        }
        // x, y, z, w first, then the rest alphabetically
        let rank = |s: &String| ["x", "y", "z", "w"].iter().position(|v| v == s).unwrap_or(4);
        names.sort_by(|a, b| rank(a).cmp(&rank(b)).then_with(|| a.cmp(b)));
        Ok(Ring::new(&names))
    }

    fn polynomial(&self) -> Result<Polynomial, VerifyError> {
        let text = self
            .polynomial
            .as_deref()
            .ok_or_else(|| VerifyError::Input(format!("{:?} job needs a \"polynomial\"", self.kind)))?;
        let ring = self.ring_for(&[text])?;
        Ok(parse_in_ring(text, &ring)?)
    }

    fn generators(&self) -> Result<Vec<Polynomial>, VerifyError> {
        let texts = self.generators.as_ref().expect("checked by caller");
        let refs: Vec<&str> = texts.iter().map(|s| s.as_str()).collect();
        let ring = self.ring_for(&refs)?;
        refs.iter()
            .map(|t| parse_in_ring(t, &ring).map_err(VerifyError::from))
            .collect()
    }

    /// Payload fields must match the kind.
    fn check_payload(&self) -> Result<(), VerifyError> {
        let present = [
            ("arrangement", self.arrangement.is_some()),
            ("polynomial", self.polynomial.is_some()),
            ("generators", self.generators.is_some()),
            ("n", self.n.is_some()),
        ];
        let allowed: &[&[&str]] = match self.kind {
            JobKind::VerifyArrangement | JobKind::CharPoly => &[&["arrangement"]],
            JobKind::Freeness => &[&["arrangement"], &["polynomial"]],
            JobKind::LinearType => &[&["polynomial"], &["generators"]],
            JobKind::ProofChain => &[&["n"]],
        };
        let given: Vec<&str> = present.iter().filter(|(_, p)| *p).map(|(k, _)| *k).collect();
        if allowed.contains(&given.as_slice()) {
            Ok(())
        } else {
            Err(VerifyError::Input(format!(
                "{:?} job expects one of {:?}, got {:?}",
                self.kind, allowed, given
            )))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobOutcome {
    pub kind: Option<JobKind>,
    pub report: Value,
    pub exit: i32,
    /// Human-readable rendering.
    pub text: String,
}

impl JobOutcome {
    fn error(kind: Option<JobKind>, e: &VerifyError) -> Self {
        let exit = exit_code(e);
        let status = if exit == EXIT_INCONCLUSIVE {
            "resource-limit"
        } else {
            "input-error"
        };
        JobOutcome {
            kind,
            report: json!({ "status": status, "error": e.to_string() }),
            exit,
            text: format!("{status}: {e}\n"),
        }
    }
}

/// Exit code for a failed job.
pub fn exit_code(e: &VerifyError) -> i32 {
    if e.is_resource_limit() {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_INPUT_ERROR
    }
}

pub fn run_job(spec: &JobSpec, execution: Execution) -> JobOutcome {
    match run_checked(spec, execution) {
        Ok(outcome) => outcome,
        Err(e) => JobOutcome::error(Some(spec.kind), &e),
    }
}

fn freeness_exit(v: &FreenessVerdict) -> i32 {
    match v {
        FreenessVerdict::Free { .. } => EXIT_OK,
        FreenessVerdict::NotFree { .. } => EXIT_FALSE,
        FreenessVerdict::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    }
}

fn run_checked(spec: &JobSpec, execution: Execution) -> Result<JobOutcome, VerifyError> {
    spec.check_payload()?;
    let opts = spec.verify_options(execution);
    let kind = Some(spec.kind);
    match spec.kind {
        JobKind::VerifyArrangement => {
            let report = verify_formula(&spec.arrangement()?, &opts)?;
            Ok(JobOutcome {
                kind,
                exit: report.exit_code(),
                text: report.to_text(),
                report: serde_json::to_value(&report).expect("report serializes"),
            })
        }
        JobKind::CharPoly => {
            let a = spec.arrangement()?;
            let lattice = build_lattice(&a);
            let chi = lattice.characteristic_polynomial();
            let terao = terao_factorization_check(&a);
            let report = json!({
                "kind": spec.kind,
                "characteristic_polynomial": chi,
                "text": chi.to_string(),
                "rank_counts": lattice.rank_counts(),
                "mobius": lattice.mobius(),
                "euler_characteristic": lattice.euler_characteristic(),
                "csm_complement": lattice.csm_complement(),
                "terao": terao,
            });
            let text = format!(
                "chi(t) = {chi}\ninteger roots {:?}, residual {:?}\n",
                terao.roots, terao.residual
            );
            Ok(JobOutcome {
                kind,
                report,
                exit: EXIT_OK,
                text,
            })
        }
        JobKind::Freeness => {
            let verdict = if spec.arrangement.is_some() {
                arrangement_freeness(&spec.arrangement()?, &opts.freeness())?
            } else {
                let h = spec.polynomial()?;
                if h.is_homogeneous() {
                    find_free_basis_with(&h, &opts.freeness())?
                } else {
                    // affine input: bounded search, no completeness claim
                    let bound = opts.degree_bound.unwrap_or_else(|| h.degree().unwrap_or(0));
                    let candidates = bounded_log_derivations(&h, bound)?;
                    match saito_from_candidates(&h, &candidates)? {
                        Some(certificate) => FreenessVerdict::Free { certificate },
                        None => FreenessVerdict::Inconclusive {
                            degrees: Vec::new(),
                            degree_bound: bound,
                        },
                    }
                }
            };
            let free = FreeHypothesis::from_verdict(&verdict);
            let text = match &free.exponents {
                Some(e) => format!(
                    "free, exponents {e:?}, determinant {}\n",
                    free.determinant.as_deref().unwrap_or("")
                ),
                None => format!("{:?}: {}\n", free.status, free.reason.as_deref().unwrap_or("")),
            };
            Ok(JobOutcome {
                kind,
                exit: freeness_exit(&verdict),
                report: json!({ "kind": spec.kind, "free": free }),
                text,
            })
        }
        JobKind::LinearType => {
            let generators = if spec.generators.is_some() {
                spec.generators()?
            } else {
                jacobian_ideal(&spec.polynomial()?)?.generators().to_vec()
            };
            let v = is_linear_type_with(&generators, &opts.gb(), LinearTypeMethod::Saturation)?;
            let strings = |ps: &[Polynomial]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>();
            let report = json!({
                "kind": spec.kind,
                "generators": strings(&generators),
                "linear_type": v.linear_type,
                "witness": v.witness.as_ref().map(|w| w.to_string()),
                "t_variables": v.sym.t_vars(),
                "sym": strings(v.sym.generators()),
            });
            let text = match &v.witness {
                None => "linear type: true\n".to_string(),
                Some(w) => format!("linear type: false, witness {w}\n"),
            };
            Ok(JobOutcome {
                kind,
                exit: if v.linear_type { EXIT_OK } else { EXIT_FALSE },
                report,
                text,
            })
        }
        JobKind::ProofChain => {
            let n = spec.n.expect("checked by check_payload");
            let chain = proof_chain_check(n)?;
            let mut text = String::new();
            for s in &chain.steps {
                text.push_str(&format!(
                    "{} {:<42} = {}\n",
                    if s.matches_previous { "ok" } else { "!!" },
                    s.label,
                    s.value
                ));
            }
            text.push_str(&format!("holds: {}\n", chain.holds));
            Ok(JobOutcome {
                kind,
                exit: if chain.holds { EXIT_OK } else { EXIT_FALSE },
                report: serde_json::to_value(&chain).expect("chain serializes"),
                text,
            })
        }
    }
}

/// Reads a job file, runs it and writes the JSON report to `out` when given.
/// `overrides` replace the file's options field by field.
pub fn run_job_file(input: &Path, out: Option<&Path>, overrides: JobOptions, execution: Execution) -> JobOutcome {
    let outcome = match std::fs::read_to_string(input) {
        Err(e) => JobOutcome::error(
            None,
            &VerifyError::Io {
                path: input.display().to_string(),
                message: e.to_string(),
            },
        ),
        Ok(text) => match JobSpec::from_json(&text) {
            Err(e) => JobOutcome::error(None, &e),
            Ok(mut spec) => {
                spec.options = spec.options.overridden_by(overrides);
                run_job(&spec, execution)
            }
        },
    };
    if let Some(path) = out {
        let body = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
        if let Err(e) = std::fs::write(path, body + "\n") {
            return JobOutcome::error(
                outcome.kind,
                &VerifyError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                },
            );
        }
    }
    outcome
}
