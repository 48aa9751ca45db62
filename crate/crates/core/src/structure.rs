//! Exact certification of structural claims: Jacobi identity for Poisson
//! vectors, Hamiltonian and Nambu forms, the last-multiplier condition, and
//! metriplectic decompositions of both kinds.
//!
//! Every residual is computed symbolically. Where metric or multiplier
//! entries are polynomial ratios, identities are verified after clearing
//! denominators, and the excluded variety (the union of denominator zero
//! sets) is named in the report. Positive semidefiniteness of a metric is
//! only ever a sampled diagnostic, never a pass/fail criterion: the metrics
//! arising in practice are sign-indefinite over parts of phase space.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{cross, curl, gradient, PolyVector, VectorField};
use crate::monomial::Var;
use crate::poly::Polynomial;
use crate::ratio::{Ratio, RatioVector};
use crate::rational::{rat, to_f64, Rational};

/// Which of the two Hamiltonians plays the dissipation generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    H1,
    H2,
}

/// The supported claim kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimKind {
    PoissonVector,
    Hamiltonian,
    Nambu,
    LastMultiplier,
    Metriplectic1,
    Metriplectic2,
}

impl ClaimKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClaimKind::PoissonVector => "poisson-vector",
            ClaimKind::Hamiltonian => "hamiltonian",
            ClaimKind::Nambu => "nambu",
            ClaimKind::LastMultiplier => "last-multiplier",
            ClaimKind::Metriplectic1 => "metriplectic-1",
            ClaimKind::Metriplectic2 => "metriplectic-2",
        }
    }

    pub fn parse(s: &str) -> Option<ClaimKind> {
        Some(match s {
            "poisson-vector" => ClaimKind::PoissonVector,
            "hamiltonian" => ClaimKind::Hamiltonian,
            "nambu" => ClaimKind::Nambu,
            "last-multiplier" => ClaimKind::LastMultiplier,
            "metriplectic-1" => ClaimKind::Metriplectic1,
            "metriplectic-2" => ClaimKind::Metriplectic2,
            _ => return None,
        })
    }
}

/// Claim data bundle. Which fields must be present depends on the kind; see
/// [`StructureSpec::validate`].
#[derive(Clone, Debug)]
pub struct StructureSpec {
    pub kind: ClaimKind,
    /// Poisson vector, for the kinds that take one explicitly.
    pub j: Option<PolyVector>,
    /// Hamiltonian for `kind = hamiltonian`, or the single generator for a
    /// metriplectic-2 claim given through `j`.
    pub h: Option<Polynomial>,
    pub h1: Option<Polynomial>,
    pub h2: Option<Polynomial>,
    /// Last multiplier; defaults to one.
    pub m: Option<Ratio>,
    /// Symmetric metric tensor.
    pub g: Option<[[Ratio; 3]; 3]>,
    /// Generator designator for metriplectic claims with two Hamiltonians.
    pub s_is: Option<Generator>,
    /// Scalar weight of the dissipative part; defaults to -1, matching the
    /// decomposition `X = (1/M) grad H1 x grad H2 - G grad S`.
    pub lambda: Rational,
}

impl StructureSpec {
    pub fn new(kind: ClaimKind) -> StructureSpec {
        StructureSpec {
            kind,
            j: None,
            h: None,
            h1: None,
            h2: None,
            m: None,
            g: None,
            s_is: None,
            lambda: rat(-1, 1),
        }
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        let need = |cond: bool, what: &str| {
            if cond {
                Ok(())
            } else {
                Err(SpecError::Missing {
                    kind: self.kind.as_str(),
                    what: what.to_string(),
                })
            }
        };
        match self.kind {
            ClaimKind::PoissonVector => need(self.j.is_some(), "J")?,
            ClaimKind::Hamiltonian => {
                need(self.j.is_some(), "J")?;
                need(self.h.is_some(), "H")?;
            }
            ClaimKind::Nambu => {
                need(self.m.is_some(), "M")?;
                need(self.h1.is_some(), "H1")?;
                need(self.h2.is_some(), "H2")?;
            }
            ClaimKind::LastMultiplier => need(self.m.is_some(), "M")?,
            ClaimKind::Metriplectic1 | ClaimKind::Metriplectic2 => {
                need(self.g.is_some(), "G")?;
                if self.j.is_some() {
                    need(self.h.is_some(), "H (generator, with explicit J)")?;
                } else {
                    need(self.h1.is_some(), "H1")?;
                    need(self.h2.is_some(), "H2")?;
                    need(self.s_is.is_some(), "S (H1 or H2)")?;
                }
                if let Some(g) = &self.g {
                    let symmetric = (0..3).all(|i| (0..i).all(|j| g[i][j] == g[j][i]));
                    if !symmetric {
                        return Err(SpecError::Asymmetric);
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("claim kind `{kind}` requires `{what}`")]
    Missing { kind: &'static str, what: String },
    #[error("metric tensor must be symmetric")]
    Asymmetric,
    #[error("the multiplier must not be identically zero")]
    ZeroMultiplier,
}

/// Jacobi identity residual `J . (curl J)`; zero iff the vector solves it.
#[derive(Clone, Debug)]
pub struct JacobiReport {
    pub residual: Polynomial,
}

impl JacobiReport {
    pub fn pass(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn check_jacobi(j: &PolyVector) -> JacobiReport {
    JacobiReport {
        residual: j.dot(&curl(j)),
    }
}

/// Ratio-entry variant of the Jacobi residual, for Poisson vectors of the
/// conformal family `f * grad H` with fractional `f`. Returns the cleared
/// numerator and the excluded denominators.
pub fn jacobi_residual_ratio(j: &RatioVector) -> (Polynomial, Vec<Polynomial>) {
    let res = j.dot(&j.curl());
    (res.num, j.excluded_denominators())
}

/// Hamiltonian-form report: the algebraic identity `X = J x grad H` and the
/// Jacobi identity for `J` are separate verdicts.
#[derive(Clone, Debug)]
pub struct HamiltonianReport {
    pub algebraic_residual: PolyVector,
    pub jacobi: JacobiReport,
}

impl HamiltonianReport {
    pub fn algebraic_pass(&self) -> bool {
        self.algebraic_residual.is_zero()
    }

    pub fn pass(&self) -> bool {
        self.algebraic_pass() && self.jacobi.pass()
    }
}

pub fn check_hamiltonian(field: &VectorField, j: &PolyVector, h: &Polynomial) -> HamiltonianReport {
    let rhs = cross(j, &gradient(h));
    HamiltonianReport {
        algebraic_residual: rhs.sub(&field.as_vector()),
        jacobi: check_jacobi(j),
    }
}

/// Nambu-form report: `M X = grad H1 x grad H2` after clearing the
/// multiplier denominator.
#[derive(Clone, Debug)]
pub struct NambuReport {
    /// Cleared residual `M_num X_i - M_den (grad H1 x grad H2)_i`.
    pub residual: [Polynomial; 3],
    pub excluded: Vec<Polynomial>,
}

impl NambuReport {
    pub fn pass(&self) -> bool {
        self.residual.iter().all(Polynomial::is_zero)
    }
}

pub fn check_nambu(
    field: &VectorField,
    m: &Ratio,
    h1: &Polynomial,
    h2: &Polynomial,
) -> Result<NambuReport, SpecError> {
    if m.is_zero() {
        return Err(SpecError::ZeroMultiplier);
    }
    let rhs = cross(&gradient(h1), &gradient(h2));
    let residual: [Polynomial; 3] =
        std::array::from_fn(|i| &(&m.num * &field.comps[i]) - &(&m.den * &rhs.0[i]));
    let mut excluded = Vec::new();
    if m.den.as_constant().is_none() {
        excluded.push(m.den.clone());
    }
    Ok(NambuReport { residual, excluded })
}

/// Last-multiplier report: `div(M X) = 0` after clearing denominators. For
/// `M = n/d` the cleared residual is `d * div(n X) - (n X) . grad d`.
#[derive(Clone, Debug)]
pub struct MultiplierReport {
    pub residual: Polynomial,
    pub excluded: Vec<Polynomial>,
}

impl MultiplierReport {
    pub fn pass(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn check_last_multiplier(
    field: &VectorField,
    m: &Ratio,
) -> Result<MultiplierReport, SpecError> {
    if m.is_zero() {
        return Err(SpecError::ZeroMultiplier);
    }
    let nx = PolyVector([
        &m.num * &field.comps[0],
        &m.num * &field.comps[1],
        &m.num * &field.comps[2],
    ]);
    let div_nx = &(&nx.0[0].diff(Var::X) + &nx.0[1].diff(Var::Y)) + &nx.0[2].diff(Var::Z);
    let grad_d = gradient(&m.den);
    let residual = &(&m.den * &div_nx) - &nx.dot(&grad_d);
    let mut excluded = Vec::new();
    if m.den.as_constant().is_none() {
        excluded.push(m.den.clone());
    }
    Ok(MultiplierReport { residual, excluded })
}

/// Sampled positive-semidefiniteness diagnostic for a symmetric 3x3 metric.
#[derive(Clone, Debug)]
pub struct PsdDiagnostic {
    pub samples: usize,
    pub psd_at: usize,
    pub skipped: usize,
}

/// Metriplectic report. The identity
/// `X = (1/M) grad H1 x grad H2 + lambda G grad S`
/// is checked exactly with denominators cleared; `residual` holds the cleared
/// numerators of `rhs - X`. For first-kind claims the degeneracy conditions
/// (`N grad S = 0`, `G grad H = 0`, and their weak sum) are reported as
/// additional residual vectors.
#[derive(Clone, Debug)]
pub struct MetriplecticReport {
    pub residual: [Polynomial; 3],
    pub excluded: Vec<Polynomial>,
    pub compat_strong: Option<([Polynomial; 3], [Polynomial; 3])>,
    pub compat_weak: Option<[Polynomial; 3]>,
    pub psd: PsdDiagnostic,
}

impl MetriplecticReport {
    pub fn pass(&self) -> bool {
        self.residual.iter().all(Polynomial::is_zero)
    }

    pub fn compat_pass(&self) -> Option<bool> {
        self.compat_strong
            .as_ref()
            .map(|(a, b)| a.iter().all(Polynomial::is_zero) && b.iter().all(Polynomial::is_zero))
    }
}

fn ratio_gradient(h: &Polynomial) -> RatioVector {
    RatioVector::from_polys(gradient(h).0.clone())
}

fn g_times(g: &[[Ratio; 3]; 3], v: &RatioVector) -> RatioVector {
    RatioVector(std::array::from_fn(|i| {
        let mut acc = Ratio::zero();
        for (entry, comp) in g[i].iter().zip(&v.0) {
            acc = &acc + &(entry * comp);
        }
        acc
    }))
}

pub fn check_metriplectic(
    field: &VectorField,
    spec: &StructureSpec,
) -> Result<MetriplecticReport, SpecError> {
    spec.validate()?;
    let g = spec.g.as_ref().unwrap();
    let m = spec.m.clone().unwrap_or_else(Ratio::one);
    if m.is_zero() {
        return Err(SpecError::ZeroMultiplier);
    }
    let inv_m = m.recip().ok_or(SpecError::ZeroMultiplier)?;

    // Conservative part and generator.
    let (conservative, s_poly, h_other) = if let Some(j) = &spec.j {
        let h = spec.h.clone().unwrap();
        let jv = RatioVector::from_polys(j.0.clone());
        (jv.cross(&ratio_gradient(&h)), h, None)
    } else {
        let h1 = spec.h1.clone().unwrap();
        let h2 = spec.h2.clone().unwrap();
        let c = ratio_gradient(&h1)
            .cross(&ratio_gradient(&h2))
            .scale(&inv_m);
        let (s, other) = match spec.s_is.unwrap() {
            Generator::H1 => (h1, h2),
            Generator::H2 => (h2, h1),
        };
        (c, s, Some(other))
    };

    let dissipative =
        g_times(g, &ratio_gradient(&s_poly)).scale(&Ratio::constant(spec.lambda.clone()));
    let residual: [Polynomial; 3] = std::array::from_fn(|i| {
        let rhs = &conservative.0[i] + &dissipative.0[i];
        (&rhs - &Ratio::from_poly(field.comps[i].clone())).num
    });

    let mut excluded: Vec<Polynomial> = Vec::new();
    let note_den = |p: &Polynomial, excluded: &mut Vec<Polynomial>| {
        if p.as_constant().is_none() && !excluded.contains(p) {
            excluded.push(p.clone());
        }
    };
    note_den(&m.den, &mut excluded);
    note_den(&m.num, &mut excluded); // 1/M clears through num as well
    for row in g {
        for e in row {
            note_den(&e.den, &mut excluded);
        }
    }

    // First-kind degeneracy conditions.
    let (compat_strong, compat_weak) = if spec.kind == ClaimKind::Metriplectic1 {
        if let Some(h_other) = &h_other {
            // Poisson vector of the split: J = (1/M) grad(Casimir); with S
            // designated, the Casimir slot is H1 in the cross order.
            let j = ratio_gradient(spec.h1.as_ref().unwrap()).scale(&inv_m);
            let n_grad_s = j.cross(&ratio_gradient(&s_poly));
            let g_grad_h = g_times(g, &ratio_gradient(h_other));
            let strong_a: [Polynomial; 3] = std::array::from_fn(|i| n_grad_s.0[i].num.clone());
            let strong_b: [Polynomial; 3] = std::array::from_fn(|i| g_grad_h.0[i].num.clone());
            let weak: [Polynomial; 3] =
                std::array::from_fn(|i| (&n_grad_s.0[i] + &g_grad_h.0[i]).num);
            (Some((strong_a, strong_b)), Some(weak))
        } else {
            (None, None)
        }
    } else {
        (None, None)
    };

    let psd = psd_diagnostic(g, 32, 0);

    Ok(MetriplecticReport {
        residual,
        excluded,
        compat_strong,
        compat_weak,
        psd,
    })
}

/// Evaluate the metric at seeded random rational points and count where all
/// seven principal minors are nonnegative. Points on a denominator zero set
/// are skipped.
pub fn psd_diagnostic(g: &[[Ratio; 3]; 3], samples: usize, seed: u64) -> PsdDiagnostic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut psd_at = 0;
    let mut skipped = 0;
    for _ in 0..samples {
        let mut coord = || {
            let n = rng.gen_range(-20i64..=20);
            let d = rng.gen_range(1i64..=10);
            rat(n, d)
        };
        let (x, y, z) = (coord(), coord(), coord());
        let s = {
            let n = rng.gen_range(1i64..=10);
            let d = rng.gen_range(1i64..=10);
            rat(n, d)
        };
        let mut vals = [[0.0f64; 3]; 3];
        let mut ok = true;
        for i in 0..3 {
            for j in 0..3 {
                match g[i][j].eval(&x, &y, &z, &s) {
                    Some(v) => vals[i][j] = to_f64(&v),
                    None => {
                        ok = false;
                    }
                }
            }
        }
        if !ok {
            skipped += 1;
            continue;
        }
        if sym3_psd(&vals) {
            psd_at += 1;
        }
    }
    PsdDiagnostic {
        samples,
        psd_at,
        skipped,
    }
}

fn sym3_psd(a: &[[f64; 3]; 3]) -> bool {
    let eps = -1e-9;
    let det2 = |i: usize, j: usize| a[i][i] * a[j][j] - a[i][j] * a[j][i];
    let det3 = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    a[0][0] >= eps
        && a[1][1] >= eps
        && a[2][2] >= eps
        && det2(0, 1) >= eps
        && det2(0, 2) >= eps
        && det2(1, 2) >= eps
        && det3 >= eps
}
