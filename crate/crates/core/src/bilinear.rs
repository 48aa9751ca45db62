//! The coefficient equations of `X(g) - lambda g = 0`.
//!
//! With `g` ranging over clock-free monomials of degree `0..=d` (the constant
//! term is allowed, a constant `g` is not a solution) and `lambda` over
//! monomials of degree `0..=m-1`, equating coefficients monomial by monomial
//! yields one equation per monomial of the expansion space. Each equation is
//! linear in the `g` coefficients and bilinear in the `(g, lambda)` pairs —
//! this is what both the exact eigen-method and the numeric least-squares
//! search consume.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::field::VectorField;
use crate::monomial::{monomials_in_degrees, Monomial};
use crate::poly::Polynomial;
use crate::rational::{to_f64, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BilinearError {
    #[error("the field is not autonomous; Darboux search requires clock-free components")]
    NonAutonomous,
    #[error("degree bound must be at least 1")]
    DegreeZero,
}

/// One coefficient equation: `sum_i lin_i a_i - sum_{i,j} bil_{ij} a_i b_j = 0`
/// where `a` are the `g` coefficients and `b` the cofactor coefficients.
#[derive(Clone, Debug, Default)]
pub struct Equation {
    pub linear: Vec<(usize, Rational)>,
    pub bilinear: Vec<(usize, usize, Rational)>,
}

/// The full residual system for a field and degree bound.
#[derive(Clone, Debug)]
pub struct BilinearSystem {
    /// Candidate monomials for `g`, descending graded-lex.
    pub g_basis: Vec<Monomial>,
    /// Candidate monomials for the cofactor, descending graded-lex.
    pub lambda_basis: Vec<Monomial>,
    /// Expansion-space monomials, one equation each, descending graded-lex.
    pub rows: Vec<Monomial>,
    pub equations: Vec<Equation>,
}

impl BilinearSystem {
    pub fn build(field: &VectorField, degree: u32) -> Result<BilinearSystem, BilinearError> {
        if degree == 0 {
            return Err(BilinearError::DegreeZero);
        }
        if !field.is_autonomous() {
            return Err(BilinearError::NonAutonomous);
        }
        let m = field.degree();
        let g_basis = monomials_in_degrees(0, degree);
        let lambda_basis = monomials_in_degrees(0, m.saturating_sub(1));

        // X applied to every candidate monomial of g.
        let images: Vec<Polynomial> = g_basis
            .iter()
            .map(|mono| field.derive(&Polynomial::term(*mono, Rational::from_integer(1.into()))))
            .collect();

        let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
        let mut rows: Vec<Monomial> = Vec::new();
        let mut index_of = |m: Monomial, rows: &mut Vec<Monomial>| -> usize {
            *row_index.entry(m).or_insert_with(|| {
                rows.push(m);
                rows.len() - 1
            })
        };

        let mut linear: Vec<Vec<(usize, Rational)>> = Vec::new();
        let mut bilinear: Vec<Vec<(usize, usize, Rational)>> = Vec::new();
        fn ensure_row(
            k: usize,
            linear: &mut Vec<Vec<(usize, Rational)>>,
            bilinear: &mut Vec<Vec<(usize, usize, Rational)>>,
        ) {
            while linear.len() <= k {
                linear.push(Vec::new());
                bilinear.push(Vec::new());
            }
        }

        for (gi, image) in images.iter().enumerate() {
            for (mono, c) in image.terms() {
                let k = index_of(*mono, &mut rows);
                ensure_row(k, &mut linear, &mut bilinear);
                linear[k].push((gi, c.clone()));
            }
        }
        for (gi, gm) in g_basis.iter().enumerate() {
            for (lj, lm) in lambda_basis.iter().enumerate() {
                let k = index_of(gm.mul(lm), &mut rows);
                ensure_row(k, &mut linear, &mut bilinear);
                bilinear[k].push((gi, lj, Rational::from_integer(1.into())));
            }
        }

        // Canonical row order: descending graded-lex.
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by(|&a, &b| rows[b].cmp(&rows[a]));
        let rows_sorted: Vec<Monomial> = order.iter().map(|&i| rows[i]).collect();
        let equations = order
            .iter()
            .map(|&i| Equation {
                linear: linear[i].clone(),
                bilinear: bilinear[i].clone(),
            })
            .collect();

        Ok(BilinearSystem {
            g_basis,
            lambda_basis,
            rows: rows_sorted,
            equations,
        })
    }

    /// The equation attached to a given expansion monomial, if any.
    pub fn equation_for(&self, m: &Monomial) -> Option<&Equation> {
        self.rows
            .iter()
            .position(|r| r == m)
            .map(|i| &self.equations[i])
    }

    pub fn num_g(&self) -> usize {
        self.g_basis.len()
    }

    pub fn num_lambda(&self) -> usize {
        self.lambda_basis.len()
    }

    /// Float copy for the least-squares search.
    pub fn to_f64(&self) -> BilinearF64 {
        BilinearF64 {
            nrows: self.equations.len(),
            ng: self.g_basis.len(),
            nl: self.lambda_basis.len(),
            linear: self
                .equations
                .iter()
                .enumerate()
                .flat_map(|(k, eq)| eq.linear.iter().map(move |(gi, c)| (k, *gi, to_f64(c))))
                .collect(),
            bilinear: self
                .equations
                .iter()
                .enumerate()
                .flat_map(|(k, eq)| {
                    eq.bilinear
                        .iter()
                        .map(move |(gi, lj, c)| (k, *gi, *lj, to_f64(c)))
                })
                .collect(),
        }
    }
}

/// Flat float view: residual `r_k = sum lin - sum bil * a_i * b_j`.
#[derive(Clone, Debug)]
pub struct BilinearF64 {
    pub nrows: usize,
    pub ng: usize,
    pub nl: usize,
    linear: Vec<(usize, usize, f64)>,
    bilinear: Vec<(usize, usize, usize, f64)>,
}

impl BilinearF64 {
    pub fn nvars(&self) -> usize {
        self.ng + self.nl
    }

    /// Residual vector at `(a, b)`.
    pub fn residual(&self, a: &[f64], b: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        for &(k, gi, c) in &self.linear {
            out[k] += c * a[gi];
        }
        for &(k, gi, lj, c) in &self.bilinear {
            out[k] -= c * a[gi] * b[lj];
        }
    }

    /// Dense row-major Jacobian with columns `[a..., b...]`.
    pub fn jacobian(&self, a: &[f64], b: &[f64], out: &mut [f64]) {
        let n = self.nvars();
        out.iter_mut().for_each(|v| *v = 0.0);
        for &(k, gi, c) in &self.linear {
            out[k * n + gi] += c;
        }
        for &(k, gi, lj, c) in &self.bilinear {
            out[k * n + gi] -= c * b[lj];
            out[k * n + self.ng + lj] -= c * a[gi];
        }
    }
}
