//! Damped least squares (Levenberg-Marquardt) on the bilinear residual.
//!
//! The systems are tiny (tens of rows, at most ~20 unknowns), so a dense
//! normal-equation solve with partial pivoting is all that is needed. The
//! solver is deterministic: no randomness, no threading, plain f64.

use crate::bilinear::BilinearF64;

/// Solve `A x = rhs` in place for a dense row-major square system.
/// Returns `None` when the pivot collapses.
pub fn solve_dense(a: &mut [f64], rhs: &mut [f64], n: usize) -> Option<Vec<f64>> {
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .unwrap();
        if a[pivot * n + col].abs() < 1e-14 {
            return None;
        }
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
            }
            rhs.swap(col, pivot);
        }
        let d = a[col * n + col];
        for i in (col + 1)..n {
            let f = a[i * n + col] / d;
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                a[i * n + j] -= f * a[col * n + j];
            }
            rhs[i] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        for j in (i + 1)..n {
            acc -= a[i * n + j] * x[j];
        }
        x[i] = acc / a[i * n + i];
    }
    Some(x)
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x: &f64| m.max(x.abs()))
}

/// Run LM from the start point `(a0, b0)`.
///
/// The `g`-coefficient block is renormalized to unit length at the top of
/// every iteration and the defect `(|a|^2 - 1)/2` is carried as an extra
/// residual row, which keeps the search away from the trivial `g = 0`
/// solution and turns the scale freedom into isolated roots. Returns the
/// converged point when the eigen residual drops below `tol` in the max norm.
pub fn lm_solve(
    sys: &BilinearF64,
    a0: &[f64],
    b0: &[f64],
    max_iters: usize,
    tol: f64,
) -> Option<(Vec<f64>, Vec<f64>)> {
    let ng = sys.ng;
    let nl = sys.nl;
    let n = ng + nl;
    let rows = sys.nrows + 1; // + unit-norm row
    let mut a = a0.to_vec();
    let mut b = b0.to_vec();
    let mut r = vec![0.0; rows];
    let mut jac = vec![0.0; rows * n];
    let mut mu = 1e-3;

    for _ in 0..max_iters {
        let na = norm2(&a);
        if na < 1e-12 {
            return None;
        }
        a.iter_mut().for_each(|v| *v /= na);

        sys.residual(&a, &b, &mut r[..rows - 1]);
        r[rows - 1] = (a.iter().map(|v| v * v).sum::<f64>() - 1.0) / 2.0;
        if max_abs(&r[..rows - 1]) < tol {
            return Some((a, b));
        }
        sys.jacobian(&a, &b, &mut jac[..(rows - 1) * n]);
        for i in 0..n {
            jac[(rows - 1) * n + i] = if i < ng { a[i] } else { 0.0 };
        }

        // normal equations J^T J delta = -J^T r
        let mut jtj = vec![0.0; n * n];
        let mut jtr = vec![0.0; n];
        for k in 0..rows {
            let row = &jac[k * n..(k + 1) * n];
            for i in 0..n {
                if row[i] == 0.0 {
                    continue;
                }
                jtr[i] -= row[i] * r[k];
                for j in i..n {
                    jtj[i * n + j] += row[i] * row[j];
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                jtj[i * n + j] = jtj[j * n + i];
            }
        }

        let cost = r.iter().map(|x| x * x).sum::<f64>();
        let mut stepped = false;
        for _ in 0..16 {
            let mut lhs = jtj.clone();
            for i in 0..n {
                lhs[i * n + i] += mu * (1.0 + jtj[i * n + i]);
            }
            let mut rhs = jtr.clone();
            let Some(delta) = solve_dense(&mut lhs, &mut rhs, n) else {
                mu *= 4.0;
                continue;
            };
            let mut a_try = a.clone();
            let mut b_try = b.clone();
            for i in 0..ng {
                a_try[i] += delta[i];
            }
            for j in 0..nl {
                b_try[j] += delta[ng + j];
            }
            let mut r_try = vec![0.0; rows];
            sys.residual(&a_try, &b_try, &mut r_try[..rows - 1]);
            r_try[rows - 1] = (a_try.iter().map(|v| v * v).sum::<f64>() - 1.0) / 2.0;
            let cost_try = r_try.iter().map(|x| x * x).sum::<f64>();
            if cost_try.is_finite() && cost_try < cost {
                a = a_try;
                b = b_try;
                mu = (mu * 0.3).max(1e-14);
                stepped = true;
                break;
            }
            mu *= 4.0;
        }
        if !stepped {
            // stuck: report convergence only if already below tolerance
            sys.residual(&a, &b, &mut r[..rows - 1]);
            return if max_abs(&r[..rows - 1]) < tol {
                Some((a, b))
            } else {
                None
            };
        }
    }
    sys.residual(&a, &b, &mut r[..rows - 1]);
    if max_abs(&r[..rows - 1]) < tol {
        Some((a, b))
    } else {
        None
    }
}
