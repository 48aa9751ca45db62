//! Assembling time-dependent first integrals from certified Darboux pairs.
//!
//! If `g_1 .. g_k` are Darboux polynomials of an autonomous field with
//! cofactors `lambda_a = c_a + L_a` (constant plus nonconstant part), then
//! any exponent vector `n` annihilating all the nonconstant parts yields the
//! first integral `I = exp(-r t) * prod g_a^{n_a}` with `r = sum n_a c_a`.
//! The emitted integrals are exactly the null-space lattice of the
//! nonconstant cofactor matrix, with exponent vectors normalized to primitive
//! integers (first nonzero entry positive). When the null space is trivial
//! nothing is emitted: no heuristic output.
//!
//! Certification never trusts the stored cofactors: it recomputes each one by
//! exact polynomial division of `X(g_a)` by `g_a` and checks the identity
//! `sum n_a lambda_a - r = 0` as a polynomial.

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::darboux::DarbouxPair;
use crate::field::VectorField;
use crate::linalg::QMat;
use crate::monomial::Monomial;
use crate::poly::{CompiledPoly, Polynomial};
use crate::rational::{primitive_integer_vector, to_f64, Rational};

/// A time-dependent first integral `I = exp(-r t) * prod g_a^{n_a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstIntegral {
    /// The rate `r` in `exp(-r t)`.
    pub rate: Rational,
    /// Pairwise distinct factors with nonzero rational exponents.
    pub factors: Vec<(Polynomial, Rational)>,
}

impl FirstIntegral {
    pub fn new(rate: Rational, factors: Vec<(Polynomial, Rational)>) -> FirstIntegral {
        FirstIntegral { rate, factors }
    }

    /// A single polynomial as a (possibly time-independent) integral.
    pub fn from_polynomial(rate: Rational, g: Polynomial) -> FirstIntegral {
        FirstIntegral {
            rate,
            factors: vec![(g, Rational::from_integer(1.into()))],
        }
    }

    pub fn all_integer_exponents(&self) -> bool {
        self.factors.iter().all(|(_, n)| n.is_integer())
    }

    /// Expanded numerator/denominator form, defined when all exponents are
    /// integers: positive powers multiplied out, negative powers collected in
    /// the denominator. Used for deduplication and display.
    pub fn expanded(&self) -> Option<(Polynomial, Polynomial)> {
        let mut num = Polynomial::one();
        let mut den = Polynomial::one();
        for (g, n) in &self.factors {
            if !n.is_integer() {
                return None;
            }
            let e = n.to_integer().to_i64()?;
            if e >= 0 {
                num = &num * &g.pow(e as u32);
            } else {
                den = &den * &g.pow((-e) as u32);
            }
        }
        Some((num.monic(), den.monic()))
    }

    /// Render in the `exp(-r t) * g1^n1 * ...` notation.
    pub fn render(&self, names: &[String; 3]) -> String {
        let mut out = String::new();
        let minus_r = -self.rate.clone();
        if !minus_r.is_zero() {
            out.push_str(&format!("exp({minus_r} t)"));
        }
        for (g, n) in &self.factors {
            if !out.is_empty() {
                out.push_str(" * ");
            }
            if n.is_integer() && n.to_integer().to_i64() == Some(1) {
                out.push_str(&format!("({})", g.render(names)));
            } else {
                out.push_str(&format!("({})^({n})", g.render(names)));
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum CombineError {
    #[error("pair (g = {g}) is not a certified Darboux pair of field `{field}`")]
    NotDarboux { field: String, g: String },
}

/// Combine certified pairs of one field into the full lattice of first
/// integrals. Pairs from another field are rejected by re-verification.
pub fn combine_cofactors(
    field: &VectorField,
    pairs: &[DarbouxPair],
) -> Result<Vec<FirstIntegral>, CombineError> {
    for p in pairs {
        if !crate::darboux::verify_darboux(field, &p.g, &p.lambda).pass() {
            return Err(CombineError::NotDarboux {
                field: field.name.clone(),
                g: p.g.render(&field.var_names),
            });
        }
    }
    if pairs.is_empty() {
        return Ok(Vec::new());
    }
    // Rows: nonconstant monomials appearing in any cofactor.
    let mut monos: Vec<Monomial> = Vec::new();
    for p in pairs {
        for (m, _) in p.lambda.terms() {
            if !m.is_constant() && !monos.contains(m) {
                monos.push(*m);
            }
        }
    }
    monos.sort_by(|a, b| b.cmp(a));
    let mat = QMat::from_rows(
        monos
            .iter()
            .map(|m| pairs.iter().map(|p| p.lambda.coeff(m)).collect())
            .collect(),
    );
    let kernel = if monos.is_empty() {
        // no nonconstant parts: every exponent vector works; use the identity
        (0..pairs.len())
            .map(|i| {
                let mut v = vec![Rational::zero(); pairs.len()];
                v[i] = Rational::from_integer(1.into());
                v
            })
            .collect::<Vec<_>>()
    } else {
        mat.null_space()
    };
    let mut out = Vec::new();
    for n in kernel {
        let Some(prim) = primitive_integer_vector(&n) else {
            continue;
        };
        let mut rate = Rational::zero();
        let mut factors = Vec::new();
        for (i, e) in prim.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let ne = Rational::from_integer(e.clone());
            rate += &ne * pairs[i].lambda_constant();
            factors.push((pairs[i].g.clone(), ne));
        }
        out.push(FirstIntegral::new(rate, factors));
    }
    // Deduplicate by expanded canonical form (merges e.g. y*z vs the product
    // pair yz found separately).
    let mut seen: Vec<(Rational, Option<(Polynomial, Polynomial)>)> = Vec::new();
    out.retain(|i| {
        let key = (i.rate.clone(), i.expanded());
        if seen.contains(&key) {
            false
        } else {
            seen.push(key);
            true
        }
    });
    Ok(out)
}

/// Certification report: each cofactor is recomputed by exact division; the
/// residual is `sum n_a lambda_a - r`.
#[derive(Clone, Debug)]
pub enum IntegralReport {
    Certified {
        cofactors: Vec<Polynomial>,
        residual: Polynomial,
    },
    /// Some factor does not divide its derivative exactly, so it is not a
    /// Darboux polynomial of this field (reported, not thrown).
    NotDarboux {
        factor_index: usize,
        factor: Polynomial,
    },
    Residual {
        cofactors: Vec<Polynomial>,
        residual: Polynomial,
    },
}

impl IntegralReport {
    pub fn pass(&self) -> bool {
        matches!(self, IntegralReport::Certified { .. })
    }

    pub fn residual(&self) -> Option<&Polynomial> {
        match self {
            IntegralReport::Certified { residual, .. } => Some(residual),
            IntegralReport::Residual { residual, .. } => Some(residual),
            IntegralReport::NotDarboux { .. } => None,
        }
    }
}

pub fn certify_integral(field: &VectorField, integral: &FirstIntegral) -> IntegralReport {
    let mut cofactors = Vec::new();
    for (i, (g, _)) in integral.factors.iter().enumerate() {
        match field.derive(g).divide_exact(g) {
            Some(lam) => cofactors.push(lam),
            None => {
                return IntegralReport::NotDarboux {
                    factor_index: i,
                    factor: g.clone(),
                }
            }
        }
    }
    let mut residual = -&Polynomial::constant(integral.rate.clone());
    for ((_, n), lam) in integral.factors.iter().zip(&cofactors) {
        residual += &lam.scale(n);
    }
    if residual.is_zero() {
        IntegralReport::Certified {
            cofactors,
            residual,
        }
    } else {
        IntegralReport::Residual {
            cofactors,
            residual,
        }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum EvalError {
    #[error("fractional power of a zero or negative-power-of-zero base")]
    Domain,
    #[error("non-finite value")]
    NonFinite,
}

/// Numeric evaluator for an integral along trajectories: exact integer powers
/// where possible, sign-tracked magnitude powers otherwise (`|g|^n` is a
/// first integral wherever `g` does not vanish).
pub struct IntegralFn {
    rate: f64,
    factors: Vec<(CompiledPoly, FactorPow)>,
}

enum FactorPow {
    Int(i32),
    Frac(f64),
}

impl IntegralFn {
    pub fn compile(integral: &FirstIntegral) -> IntegralFn {
        IntegralFn {
            rate: to_f64(&integral.rate),
            factors: integral
                .factors
                .iter()
                .map(|(g, n)| {
                    let p = if n.is_integer() {
                        match n.to_integer().to_i32() {
                            Some(e) => FactorPow::Int(e),
                            None => FactorPow::Frac(to_f64(n)),
                        }
                    } else {
                        FactorPow::Frac(to_f64(n))
                    };
                    (g.compile_f64(), p)
                })
                .collect(),
        }
    }

    pub fn eval(&self, t: f64, state: [f64; 3]) -> Result<f64, EvalError> {
        let s = t.exp();
        let mut acc = (-self.rate * t).exp();
        for (g, p) in &self.factors {
            let v = g.eval(state[0], state[1], state[2], s);
            match p {
                FactorPow::Int(e) => {
                    if v == 0.0 && *e < 0 {
                        return Err(EvalError::Domain);
                    }
                    acc *= v.powi(*e);
                }
                FactorPow::Frac(n) => {
                    if v == 0.0 {
                        return Err(EvalError::Domain);
                    }
                    acc *= v.abs().powf(*n);
                }
            }
        }
        if acc.is_finite() {
            Ok(acc)
        } else {
            Err(EvalError::NonFinite)
        }
    }
}
