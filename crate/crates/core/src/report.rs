//! Machine-readable reports with stable key names (`status`, `residual`,
//! `witness`) plus a plain-text rendering. Struct field order is fixed, so
//! serialized JSON is byte-for-byte reproducible for identical inputs.

use serde::Serialize;
use serde_json::{json, Value};

use crate::darboux::DarbouxPair;
use crate::field::VectorField;
use crate::integrals::{certify_integral, FirstIntegral, IntegralReport};
use crate::model::Claim;
use crate::ode::DriftReport;
use crate::structure::{
    check_hamiltonian, check_jacobi, check_last_multiplier, check_metriplectic, check_nambu,
    ClaimKind, MetriplecticReport, StructureSpec,
};

pub const STATUS_PASS: &str = "pass";
pub const STATUS_FAIL: &str = "fail";

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub kind: String,
    pub status: String,
    pub residual: Value,
    pub witness: Value,
    pub notes: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == STATUS_PASS
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ToolReport {
    pub command: String,
    pub model: String,
    pub status: String,
    pub results: Vec<CheckResult>,
}

impl ToolReport {
    pub fn new(command: &str, model: &str, results: Vec<CheckResult>) -> ToolReport {
        let status = if results.iter().all(CheckResult::passed) {
            STATUS_PASS
        } else {
            STATUS_FAIL
        };
        ToolReport {
            command: command.to_string(),
            model: model.to_string(),
            status: status.to_string(),
            results,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.status == STATUS_PASS
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} `{}`\n", self.command, self.model));
        for r in &self.results {
            out.push_str(&format!(
                "  {} {} ({}): {}\n",
                if r.passed() { "ok  " } else { "FAIL" },
                r.name,
                r.kind,
                r.status
            ));
            if !r.passed() && !r.residual.is_null() {
                out.push_str(&format!("       residual: {}\n", compact(&r.residual)));
            }
            for n in &r.notes {
                out.push_str(&format!("       note: {n}\n"));
            }
        }
        out.push_str(&format!("overall: {}\n", self.status));
        out
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).unwrap_or_else(|_| "?".into())
}

fn status(pass: bool) -> String {
    (if pass { STATUS_PASS } else { STATUS_FAIL }).to_string()
}

fn vec3(names: &[String; 3], ps: &[crate::poly::Polynomial; 3]) -> Value {
    json!([
        ps[0].render(names),
        ps[1].render(names),
        ps[2].render(names)
    ])
}

fn excluded_note(
    excluded: &[crate::poly::Polynomial],
    names: &[String; 3],
    notes: &mut Vec<String>,
) {
    for p in excluded {
        notes.push(format!(
            "verdict excludes the variety {} = 0",
            p.render(names)
        ));
    }
}

/// Run a structure claim against a field and package the verdict.
pub fn run_claim(field: &VectorField, claim: &Claim) -> CheckResult {
    claim_result(field, &claim.name, &claim.spec)
}

pub fn claim_result(field: &VectorField, name: &str, spec: &StructureSpec) -> CheckResult {
    let names = &field.var_names;
    let mut notes = Vec::new();
    match spec.kind {
        ClaimKind::PoissonVector => {
            let j = spec.j.as_ref().expect("validated");
            let rep = check_jacobi(j);
            CheckResult {
                name: name.into(),
                kind: spec.kind.as_str().into(),
                status: status(rep.pass()),
                residual: json!(rep.residual.render(names)),
                witness: json!({ "J": vec3(names, &j.0) }),
                notes,
            }
        }
        ClaimKind::Hamiltonian => {
            let j = spec.j.as_ref().expect("validated");
            let h = spec.h.as_ref().expect("validated");
            let rep = check_hamiltonian(field, j, h);
            notes.push(format!(
                "algebraic identity X = J x grad H: {}",
                status(rep.algebraic_pass())
            ));
            notes.push(format!(
                "Jacobi identity J . curl J = 0: {}",
                status(rep.jacobi.pass())
            ));
            CheckResult {
                name: name.into(),
                kind: spec.kind.as_str().into(),
                status: status(rep.pass()),
                residual: json!({
                    "algebraic": vec3(names, &rep.algebraic_residual.0),
                    "jacobi": rep.jacobi.residual.render(names),
                }),
                witness: json!({ "J": vec3(names, &j.0), "H": h.render(names) }),
                notes,
            }
        }
        ClaimKind::Nambu => {
            let m = spec.m.as_ref().expect("validated");
            let h1 = spec.h1.as_ref().expect("validated");
            let h2 = spec.h2.as_ref().expect("validated");
            match check_nambu(field, m, h1, h2) {
                Ok(rep) => {
                    excluded_note(&rep.excluded, names, &mut notes);
                    CheckResult {
                        name: name.into(),
                        kind: spec.kind.as_str().into(),
                        status: status(rep.pass()),
                        residual: vec3(names, &rep.residual),
                        witness: json!({
                            "M": m.render(names),
                            "H1": h1.render(names),
                            "H2": h2.render(names),
                        }),
                        notes,
                    }
                }
                Err(e) => error_result(name, spec.kind, e.to_string()),
            }
        }
        ClaimKind::LastMultiplier => {
            let m = spec.m.as_ref().expect("validated");
            match check_last_multiplier(field, m) {
                Ok(rep) => {
                    excluded_note(&rep.excluded, names, &mut notes);
                    CheckResult {
                        name: name.into(),
                        kind: spec.kind.as_str().into(),
                        status: status(rep.pass()),
                        residual: json!(rep.residual.render(names)),
                        witness: json!({ "M": m.render(names) }),
                        notes,
                    }
                }
                Err(e) => error_result(name, spec.kind, e.to_string()),
            }
        }
        ClaimKind::Metriplectic1 | ClaimKind::Metriplectic2 => {
            match check_metriplectic(field, spec) {
                Ok(rep) => metriplectic_result(field, name, spec, &rep, notes),
                Err(e) => error_result(name, spec.kind, e.to_string()),
            }
        }
    }
}

fn metriplectic_result(
    field: &VectorField,
    name: &str,
    spec: &StructureSpec,
    rep: &MetriplecticReport,
    mut notes: Vec<String>,
) -> CheckResult {
    let names = &field.var_names;
    excluded_note(&rep.excluded, names, &mut notes);
    notes.push(format!(
        "metric PSD at {}/{} sampled points ({} skipped); diagnostic only",
        rep.psd.psd_at, rep.psd.samples, rep.psd.skipped
    ));
    if let Some((a, b)) = &rep.compat_strong {
        let ok = a.iter().all(|p| p.is_zero()) && b.iter().all(|p| p.is_zero());
        notes.push(format!(
            "degeneracy conditions N grad S = 0, G grad H = 0: {}",
            status(ok)
        ));
        if !ok {
            if let Some(w) = &rep.compat_weak {
                let weak_ok = w.iter().all(|p| p.is_zero());
                notes.push(format!(
                    "weak degeneracy N grad S + G grad H = 0: {}",
                    status(weak_ok)
                ));
            }
        }
    }
    let witness = json!({
        "H1": spec.h1.as_ref().map(|h| h.render(names)),
        "H2": spec.h2.as_ref().map(|h| h.render(names)),
        "H": spec.h.as_ref().map(|h| h.render(names)),
        "S": spec.s_is.map(|s| match s {
            crate::structure::Generator::H1 => "H1",
            crate::structure::Generator::H2 => "H2",
        }),
        "lambda": spec.lambda.to_string(),
    });
    CheckResult {
        name: name.into(),
        kind: spec.kind.as_str().into(),
        status: status(rep.pass()),
        residual: vec3(names, &rep.residual),
        witness,
        notes,
    }
}

fn error_result(name: &str, kind: ClaimKind, msg: String) -> CheckResult {
    CheckResult {
        name: name.into(),
        kind: kind.as_str().into(),
        status: STATUS_FAIL.into(),
        residual: Value::Null,
        witness: Value::Null,
        notes: vec![msg],
    }
}

/// Package a certified pair list as search results.
pub fn pairs_results(field: &VectorField, pairs: &[DarbouxPair]) -> Vec<CheckResult> {
    let names = &field.var_names;
    pairs
        .iter()
        .enumerate()
        .map(|(i, p)| CheckResult {
            name: format!("pair-{i}"),
            kind: "darboux-pair".into(),
            status: status(p.certified()),
            residual: json!("0"),
            witness: json!({
                "g": p.g.render(names),
                "lambda": p.lambda.render(names),
            }),
            notes: vec!["no factorization performed; reducible pairs are reported as-is".into()],
        })
        .collect()
}

/// Package an integral (claimed or assembled) with its certification.
pub fn integral_result(field: &VectorField, name: &str, integral: &FirstIntegral) -> CheckResult {
    let names = &field.var_names;
    let rep = certify_integral(field, integral);
    let witness = json!({
        "rate": integral.rate.to_string(),
        "factors": integral
            .factors
            .iter()
            .map(|(g, n)| json!({ "g": g.render(names), "n": n.to_string() }))
            .collect::<Vec<_>>(),
        "rendered": integral.render(names),
    });
    let (st, residual, mut notes) = match &rep {
        IntegralReport::Certified { residual, .. } => {
            (true, json!(residual.render(names)), Vec::new())
        }
        IntegralReport::Residual { residual, .. } => {
            (false, json!(residual.render(names)), Vec::new())
        }
        IntegralReport::NotDarboux { factor_index, factor } => (
            false,
            Value::Null,
            vec![format!(
                "factor {} = {} does not divide its derivative exactly; not a Darboux polynomial of this field",
                factor_index,
                factor.render(names)
            )],
        ),
    };
    if let IntegralReport::Certified { cofactors, .. } = &rep {
        notes.push(format!(
            "recomputed cofactors: [{}]",
            cofactors
                .iter()
                .map(|c| c.render(names))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    CheckResult {
        name: name.into(),
        kind: "first-integral".into(),
        status: status(st),
        residual,
        witness,
        notes,
    }
}

/// Drift summary of one integral over a set of probe trajectories.
pub fn drift_result(name: &str, reports: &[DriftReport], tolerance: f64) -> CheckResult {
    let usable: Vec<&DriftReport> = reports.iter().filter(|r| !r.truncated).collect();
    let max_drift = usable
        .iter()
        .map(|r| r.max_relative_drift)
        .fold(0.0f64, f64::max);
    let truncated = reports.len() - usable.len();
    let skipped: usize = reports.iter().map(|r| r.skipped_samples).sum();
    let pass = !usable.is_empty() && max_drift < tolerance;
    let mut notes = Vec::new();
    if truncated > 0 {
        notes.push(format!(
            "{truncated}/{} trajectories truncated (divergent); excluded from the drift verdict",
            reports.len()
        ));
    }
    if skipped > 0 {
        notes.push(format!("{skipped} samples skipped (domain errors)"));
    }
    CheckResult {
        name: name.into(),
        kind: "drift".into(),
        status: status(pass),
        residual: json!(max_drift),
        witness: json!({
            "max_relative_drift": max_drift,
            "tolerance": tolerance,
            "trajectories": reports.len(),
            "usable": usable.len(),
        }),
        notes,
    }
}
