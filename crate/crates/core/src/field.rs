//! 3D polynomial vector fields, the derivation `g -> X(g)`, and the
//! polynomial vector-calculus kit (gradient, curl, divergence, cross).
//!
//! Gradients and curls are spatial: the clock symbol is never differentiated
//! by them. Time dependence enters only through coefficients, and the total
//! time derivative accounts for it with the extra `s * d/ds` term carried by
//! [`VectorField::derive`].

use std::collections::BTreeMap;

use thiserror::Error;

use crate::monomial::Var;
use crate::poly::{canonical_names, CompiledPoly, Polynomial};
use crate::rational::Rational;

/// Three polynomial entries; used for Poisson vectors, gradients and cross
/// products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVector(pub [Polynomial; 3]);

impl PolyVector {
    pub fn zero() -> PolyVector {
        PolyVector([Polynomial::zero(), Polynomial::zero(), Polynomial::zero()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    pub fn dot(&self, other: &PolyVector) -> Polynomial {
        let mut acc = Polynomial::zero();
        for i in 0..3 {
            acc += &(&self.0[i] * &other.0[i]);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> PolyVector {
        PolyVector([self.0[0].scale(c), self.0[1].scale(c), self.0[2].scale(c)])
    }

    pub fn neg(&self) -> PolyVector {
        PolyVector([-&self.0[0], -&self.0[1], -&self.0[2]])
    }

    pub fn sub(&self, other: &PolyVector) -> PolyVector {
        PolyVector([
            &self.0[0] - &other.0[0],
            &self.0[1] - &other.0[1],
            &self.0[2] - &other.0[2],
        ])
    }

    pub fn render(&self, names: &[String; 3]) -> [String; 3] {
        [
            self.0[0].render(names),
            self.0[1].render(names),
            self.0[2].render(names),
        ]
    }
}

/// Spatial gradient `(dH/dx, dH/dy, dH/dz)`; the clock symbol is excluded.
pub fn gradient(h: &Polynomial) -> PolyVector {
    PolyVector([h.diff(Var::X), h.diff(Var::Y), h.diff(Var::Z)])
}

/// Standard curl, clock symbol treated as a parameter.
pub fn curl(j: &PolyVector) -> PolyVector {
    let [j1, j2, j3] = &j.0;
    PolyVector([
        &j3.diff(Var::Y) - &j2.diff(Var::Z),
        &j1.diff(Var::Z) - &j3.diff(Var::X),
        &j2.diff(Var::X) - &j1.diff(Var::Y),
    ])
}

/// Componentwise exact cross product.
pub fn cross(a: &PolyVector, b: &PolyVector) -> PolyVector {
    let [a1, a2, a3] = &a.0;
    let [b1, b2, b3] = &b.0;
    PolyVector([
        &(a2 * b3) - &(a3 * b2),
        &(a3 * b1) - &(a1 * b3),
        &(a1 * b2) - &(a2 * b1),
    ])
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("all three components are zero")]
    ZeroField,
    #[error("field degree is zero; expected a polynomial system of degree >= 1")]
    DegreeZero,
}

/// A 3D polynomial system `x' = P, y' = Q, z' = R` with its display names and
/// the parameter values that were substituted to build it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub name: String,
    pub var_names: [String; 3],
    pub comps: [Polynomial; 3],
    pub params: BTreeMap<String, Rational>,
}

impl VectorField {
    pub fn new(name: &str, comps: [Polynomial; 3]) -> Result<VectorField, FieldError> {
        Self::with_names(name, comps, canonical_names(), BTreeMap::new())
    }

    pub fn with_names(
        name: &str,
        comps: [Polynomial; 3],
        var_names: [String; 3],
        params: BTreeMap<String, Rational>,
    ) -> Result<VectorField, FieldError> {
        if comps.iter().all(Polynomial::is_zero) {
            return Err(FieldError::ZeroField);
        }
        let field = VectorField {
            name: name.to_string(),
            var_names,
            comps,
            params,
        };
        if field.degree() < 1 {
            return Err(FieldError::DegreeZero);
        }
        Ok(field)
    }

    /// Degree `m` of the system: the maximum spatial degree of a component.
    pub fn degree(&self) -> u32 {
        self.comps.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    /// True when no component carries the clock symbol.
    pub fn is_autonomous(&self) -> bool {
        self.comps.iter().all(Polynomial::is_clock_free)
    }

    /// Total time derivative along the flow:
    /// `P dg/dx + Q dg/dy + R dg/dz + s dg/ds`.
    ///
    /// The clock term makes the derivation correct for time-dependent `g`
    /// written as a polynomial in the clock symbol.
    pub fn derive(&self, g: &Polynomial) -> Polynomial {
        let mut out = &(&self.comps[0] * &g.diff(Var::X)) + &(&self.comps[1] * &g.diff(Var::Y));
        out += &(&self.comps[2] * &g.diff(Var::Z));
        out += &g.diff(Var::S).mul_term(
            &crate::monomial::Monomial::var(Var::S),
            &Rational::from_integer(1.into()),
        );
        out
    }

    /// Spatial divergence `dP/dx + dQ/dy + dR/dz`.
    pub fn divergence(&self) -> Polynomial {
        &(&self.comps[0].diff(Var::X) + &self.comps[1].diff(Var::Y)) + &self.comps[2].diff(Var::Z)
    }

    pub fn as_vector(&self) -> PolyVector {
        PolyVector(self.comps.clone())
    }

    /// Float views of the components for trajectory integration.
    pub fn compile_f64(&self) -> [CompiledPoly; 3] {
        [
            self.comps[0].compile_f64(),
            self.comps[1].compile_f64(),
            self.comps[2].compile_f64(),
        ]
    }
}
