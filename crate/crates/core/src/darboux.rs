//! Darboux polynomial search with exact certification.
//!
//! A Darboux polynomial of a field `X` is a nonconstant polynomial `g` with
//! `X(g) = lambda g` for a polynomial cofactor `lambda` of degree at most
//! `m - 1` (`m` the field degree). Two search routes are provided:
//!
//! - [`search_constant_cofactor_exact`]: for constant cofactors. The
//!   derivation is restricted to the largest invariant subspace of the
//!   degree-bounded polynomial space, its characteristic polynomial is
//!   computed exactly, rational eigenvalues are extracted by the rational
//!   root theorem, and eigenspaces come back as reduced row-echelon bases.
//! - [`search_numeric`]: multi-start damped least squares on the bilinear
//!   coefficient system, followed by continued-fraction rationalization of
//!   the float candidates and exact re-verification. Floats never leak into
//!   results: only exactly certified pairs are returned.
//!
//! Both routes return canonically sorted, deduplicated, certified pairs, so
//! output is independent of thread scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bilinear::{BilinearError, BilinearSystem};
use crate::field::VectorField;
use crate::linalg::{rational_roots, QMat};
use crate::lm::lm_solve;
use crate::monomial::{monomials_in_degrees, Monomial};
use crate::poly::Polynomial;
use crate::rational::{rationalize_f64, Rational};

use num_traits::Zero;

/// A certified eigenpair of the derivation: `X(g) = lambda g` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxPair {
    /// Nonconstant, clock-free, leading coefficient one.
    pub g: Polynomial,
    /// Clock-free cofactor of degree at most `m - 1`.
    pub lambda: Polynomial,
    certified: bool,
}

impl DarbouxPair {
    /// Build a pair only if the eigen relation holds exactly; `g` is
    /// normalized to leading coefficient one (which leaves the cofactor
    /// unchanged).
    pub fn certify(
        field: &VectorField,
        g: &Polynomial,
        lambda: &Polynomial,
    ) -> Option<DarbouxPair> {
        let g = g.monic();
        if g.degree() == 0 || !g.is_clock_free() || !lambda.is_clock_free() {
            return None;
        }
        if verify_darboux(field, &g, lambda).residual.is_zero() {
            Some(DarbouxPair {
                g,
                lambda: lambda.clone(),
                certified: true,
            })
        } else {
            None
        }
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    /// Constant part of the cofactor.
    pub fn lambda_constant(&self) -> Rational {
        self.lambda.coeff(&Monomial::ONE)
    }
}

/// Exact verification report for a claimed pair. The residual is
/// `lambda g - X(g)`; the pair is certified exactly when it vanishes.
#[derive(Clone, Debug)]
pub struct DarbouxReport {
    pub residual: Polynomial,
}

impl DarbouxReport {
    pub fn pass(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn verify_darboux(field: &VectorField, g: &Polynomial, lambda: &Polynomial) -> DarbouxReport {
    DarbouxReport {
        residual: &(lambda * g) - &field.derive(g),
    }
}

/// Search configuration; the defaults match the acceptance suite.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub degree: u32,
    pub starts: usize,
    pub seed: u64,
    /// Max-norm residual below which a float point counts as a candidate.
    pub tol: f64,
    /// Continued-fraction rationalization denominator bound.
    pub denom_bound: u64,
    pub max_iters: usize,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            degree: 2,
            starts: 200,
            seed: 0,
            tol: 1e-10,
            denom_bound: 64,
            max_iters: 200,
        }
    }
}

fn sort_pairs(mut pairs: Vec<DarbouxPair>) -> Vec<DarbouxPair> {
    pairs.sort_by(|a, b| a.g.cmp(&b.g).then_with(|| a.lambda.cmp(&b.lambda)));
    pairs.dedup_by(|a, b| a.g == b.g && a.lambda == b.lambda);
    pairs
}

/// True when `p` lies in the rational span of `basis`.
pub fn in_span(basis: &[Polynomial], p: &Polynomial) -> bool {
    let mut monos: Vec<Monomial> = Vec::new();
    for q in basis.iter().chain(std::iter::once(p)) {
        for (m, _) in q.terms() {
            if !monos.contains(m) {
                monos.push(*m);
            }
        }
    }
    monos.sort_by(|a, b| b.cmp(a));
    let row = |q: &Polynomial| -> Vec<Rational> { monos.iter().map(|m| q.coeff(m)).collect() };
    let mut mat = QMat::from_rows(basis.iter().map(row).collect());
    let pivots = mat.rref();
    let mut target = row(p);
    for (r, &c) in pivots.iter().enumerate() {
        let f = target[c].clone();
        if f.is_zero() {
            continue;
        }
        for j in 0..monos.len() {
            let v = &target[j] - &(&f * &mat[(r, j)]);
            target[j] = v;
        }
    }
    target.iter().all(Rational::is_zero)
}

/// Eigenspaces of the derivation restricted to polynomials of degree at most
/// `degree`, keyed by rational eigenvalue. Constant polynomials (always
/// eigenvectors for eigenvalue zero) are dropped from the reported bases.
pub fn constant_cofactor_eigenspaces(
    field: &VectorField,
    degree: u32,
) -> Result<Vec<(Rational, Vec<Polynomial>)>, BilinearError> {
    if degree == 0 {
        return Err(BilinearError::DegreeZero);
    }
    if !field.is_autonomous() {
        return Err(BilinearError::NonAutonomous);
    }
    let m = field.degree();
    let basis = monomials_in_degrees(0, degree);
    let ext = monomials_in_degrees(0, degree + m.saturating_sub(1));
    let n = basis.len();
    let ne = ext.len();
    // ext is sorted descending, so the low-degree block (the g basis) sits at
    // the tail: ext_index(basis[i]) = ne - n + i.
    let offset = ne - n;
    debug_assert!(basis.iter().enumerate().all(|(i, b)| ext[offset + i] == *b));

    // Derivation images of the basis monomials, as coordinate vectors on ext.
    let images: Vec<Vec<Rational>> = basis
        .iter()
        .map(|mono| {
            let img = field.derive(&Polynomial::term(*mono, Rational::from_integer(1.into())));
            ext.iter().map(|m| img.coeff(m)).collect()
        })
        .collect();

    // Rows of `rows_mat` span the current candidate subspace in basis coords,
    // kept in RREF. Iterate to the largest derivation-invariant subspace.
    let mut rows_mat = QMat::identity(n);
    let mut dim = n;
    let rep = loop {
        if dim == 0 {
            return Ok(Vec::new());
        }
        // Image of each row under the derivation, in ext coords.
        let image_rows: Vec<Vec<Rational>> = (0..dim)
            .map(|i| {
                let mut acc = vec![Rational::zero(); ne];
                for j in 0..n {
                    let c = &rows_mat[(i, j)];
                    if c.is_zero() {
                        continue;
                    }
                    for (k, v) in images[j].iter().enumerate() {
                        if !v.is_zero() {
                            acc[k] += c * v;
                        }
                    }
                }
                acc
            })
            .collect();

        // Reduce images against the embedded row space; remainder nonzero
        // means the row escapes the subspace.
        let pivot_cols: Vec<usize> = (0..dim)
            .map(|i| (0..n).find(|&j| !rows_mat[(i, j)].is_zero()).unwrap())
            .collect();
        let mut rep = QMat::zeros(dim, dim);
        let mut escapes: Vec<Vec<Rational>> = Vec::new();
        for (i, mut img) in image_rows.into_iter().enumerate() {
            for (r, &pc) in pivot_cols.iter().enumerate() {
                let f = img[offset + pc].clone();
                if f.is_zero() {
                    continue;
                }
                rep[(i, r)] = f.clone();
                for j in 0..n {
                    let v = &img[offset + j] - &(&f * &rows_mat[(r, j)]);
                    img[offset + j] = v;
                }
            }
            escapes.push(img);
        }
        if escapes.iter().all(|row| row.iter().all(Rational::is_zero)) {
            break rep;
        }
        // Constrain coefficients c with sum_i c_i * escape_i = 0.
        let mut et = QMat::zeros(ne, dim);
        for (i, row) in escapes.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    et[(k, i)] = v.clone();
                }
            }
        }
        let kernel = et.null_space();
        let mut next = QMat::zeros(kernel.len(), n);
        for (r, c) in kernel.iter().enumerate() {
            for i in 0..dim {
                if c[i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = &next[(r, j)] + &(&c[i] * &rows_mat[(i, j)]);
                    next[(r, j)] = v;
                }
            }
        }
        next.rref();
        let new_dim = kernel.len();
        debug_assert!(new_dim < dim);
        rows_mat = next;
        dim = new_dim;
    };

    // rep: D(row_i) = sum_j rep[i][j] row_j, so eigen coordinates solve
    // rep^T c = eigenvalue c.
    let mut rep_t = QMat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            rep_t[(i, j)] = rep[(j, i)].clone();
        }
    }
    let char_coeffs = rep_t.char_poly();
    let mut out = Vec::new();
    for root in rational_roots(&char_coeffs) {
        let mut shifted = rep_t.clone();
        for i in 0..dim {
            let v = &shifted[(i, i)] - &root;
            shifted[(i, i)] = v;
        }
        let kernel = shifted.null_space();
        if kernel.is_empty() {
            continue;
        }
        // Back to monomial coordinates, canonical RREF basis.
        let mut vec_rows = QMat::zeros(kernel.len(), n);
        for (r, c) in kernel.iter().enumerate() {
            for i in 0..dim {
                if c[i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = &vec_rows[(r, j)] + &(&c[i] * &rows_mat[(i, j)]);
                    vec_rows[(r, j)] = v;
                }
            }
        }
        vec_rows.rref();
        let mut polys = Vec::new();
        for r in 0..kernel.len() {
            let p = Polynomial::from_terms((0..n).map(|j| (basis[j], vec_rows[(r, j)].clone())));
            if !p.is_zero() && p.degree() > 0 {
                polys.push(p);
            }
        }
        if !polys.is_empty() {
            polys.sort();
            out.push((root, polys));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Exact search for pairs whose cofactor is a rational constant. Every
/// member of the returned eigenspace bases is certified individually.
pub fn search_constant_cofactor_exact(
    field: &VectorField,
    degree: u32,
) -> Result<Vec<DarbouxPair>, BilinearError> {
    let spaces = constant_cofactor_eigenspaces(field, degree)?;
    let mut pairs = Vec::new();
    for (lambda, polys) in spaces {
        let lam = Polynomial::constant(lambda);
        for g in polys {
            if let Some(pair) = DarbouxPair::certify(field, &g, &lam) {
                pairs.push(pair);
            }
        }
    }
    Ok(sort_pairs(pairs))
}

fn rationalize_candidate(
    field: &VectorField,
    sys: &BilinearSystem,
    a: &[f64],
    b: &[f64],
    cfg: &SearchConfig,
) -> Option<DarbouxPair> {
    let amax = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if amax < 1e-8 {
        return None;
    }
    let drop = 1e-6 * amax;
    // g basis is descending, so the first surviving entry is the leading term.
    let lead = a.iter().position(|v| v.abs() >= drop)?;
    if sys.g_basis[lead].is_constant() {
        return None;
    }
    let scale = a[lead];
    let mut g = Polynomial::zero();
    for (i, v) in a.iter().enumerate() {
        if v.abs() < drop {
            continue;
        }
        let r = rationalize_f64(v / scale, cfg.denom_bound)?;
        if r.is_zero() {
            continue;
        }
        g = &g + &Polynomial::term(sys.g_basis[i], r);
    }
    if g.degree() == 0 {
        return None;
    }
    let bmax = b.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut lambda = Polynomial::zero();
    for (j, v) in b.iter().enumerate() {
        if v.abs() < 1e-6 * bmax {
            continue;
        }
        let r = rationalize_f64(*v, cfg.denom_bound)?;
        if r.is_zero() {
            continue;
        }
        lambda = &lambda + &Polynomial::term(sys.lambda_basis[j], r);
    }
    if let Some(pair) = DarbouxPair::certify(field, &g, &lambda) {
        return Some(pair);
    }
    // The g part may be exact while the cofactor floats are off; recompute
    // the cofactor by exact division.
    let g = g.monic();
    let q = field.derive(&g).divide_exact(&g)?;
    if q.degree() > field.degree().saturating_sub(1) {
        return None;
    }
    DarbouxPair::certify(field, &g, &q)
}

/// Multi-start numeric search with exact re-certification. Starts run
/// concurrently; the result is sorted canonically and is therefore identical
/// for any thread count.
pub fn search_numeric(
    field: &VectorField,
    cfg: &SearchConfig,
) -> Result<Vec<DarbouxPair>, BilinearError> {
    let sys = BilinearSystem::build(field, cfg.degree)?;
    let fsys = sys.to_f64();
    let ng = sys.num_g();
    let nl = sys.num_lambda();
    let pairs: Vec<DarbouxPair> = (0..cfg.starts)
        .into_par_iter()
        .filter_map(|start| {
            let mut rng = ChaCha8Rng::seed_from_u64(
                cfg.seed ^ (start as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            );
            let a0: Vec<f64> = (0..ng).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let b0: Vec<f64> = (0..nl).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let (a, b) = lm_solve(&fsys, &a0, &b0, cfg.max_iters, cfg.tol)?;
            rationalize_candidate(field, &sys, &a, &b, cfg)
        })
        .collect();
    Ok(sort_pairs(pairs))
}
