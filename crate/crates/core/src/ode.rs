//! Numerical cross-check: fixed-step RK4 trajectories and drift of claimed
//! first integrals along them.
//!
//! Reproducibility beats efficiency here: the step is fixed, a half-step
//! rerun estimates the global error, and the standard probe (five seeded
//! starts in the unit box) is frozen so drift numbers are stable across runs
//! and thread counts. Trajectories whose state norm escapes `1e12` are
//! truncated and flagged; drift on a truncated trajectory is reported but
//! carries no certification weight.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::VectorField;
use crate::integrals::{EvalError, IntegralFn};
use crate::poly::{CompiledPoly, Polynomial};

/// Norm bound beyond which a trajectory is considered divergent.
pub const DIVERGENCE_BOUND: f64 = 1e12;

/// Standard probe: five starts in `[-1, 1]^3`, `h = 1e-4`, `t in [0, 2]`,
/// seed 0.
pub const PROBE_STARTS: usize = 5;
pub const PROBE_H: f64 = 1e-4;
pub const PROBE_T1: f64 = 2.0;
pub const PROBE_SEED: u64 = 0;

/// A uniformly sampled trajectory. `states[k]` is the state at
/// `t0 + k * h`; if `truncated` the trajectory stops early.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub t0: f64,
    pub h: f64,
    pub states: Vec<[f64; 3]>,
    pub truncated: bool,
    /// Max-norm difference of the final state against a half-step rerun;
    /// `None` when either run truncated.
    pub global_error_estimate: Option<f64>,
}

impl Trajectory {
    pub fn time_at(&self, k: usize) -> f64 {
        self.t0 + self.h * k as f64
    }

    pub fn final_state(&self) -> [f64; 3] {
        *self.states.last().unwrap()
    }
}

fn rk4_run(
    comps: &[CompiledPoly; 3],
    x0: [f64; 3],
    t0: f64,
    t1: f64,
    h: f64,
) -> (Vec<[f64; 3]>, bool) {
    let eval = |t: f64, y: [f64; 3]| -> [f64; 3] {
        let s = t.exp();
        [
            comps[0].eval(y[0], y[1], y[2], s),
            comps[1].eval(y[0], y[1], y[2], s),
            comps[2].eval(y[0], y[1], y[2], s),
        ]
    };
    let steps = ((t1 - t0) / h).round() as usize;
    let mut states = Vec::with_capacity(steps + 1);
    let mut y = x0;
    states.push(y);
    for k in 0..steps {
        let t = t0 + h * k as f64;
        let k1 = eval(t, y);
        let add =
            |y: [f64; 3], k: [f64; 3], f: f64| [y[0] + f * k[0], y[1] + f * k[1], y[2] + f * k[2]];
        let k2 = eval(t + h / 2.0, add(y, k1, h / 2.0));
        let k3 = eval(t + h / 2.0, add(y, k2, h / 2.0));
        let k4 = eval(t + h, add(y, k3, h));
        for i in 0..3 {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let bad = y
            .iter()
            .any(|v| !v.is_finite() || v.abs() > DIVERGENCE_BOUND);
        if bad {
            return (states, true);
        }
        states.push(y);
    }
    (states, false)
}

/// Classical RK4 with fixed step `h` from `t0` to `t1`; the clock symbol is
/// bound to `e^t` at every stage. Panics unless `h > 0` and `t1 > t0`.
pub fn integrate(field: &VectorField, x0: [f64; 3], t0: f64, t1: f64, h: f64) -> Trajectory {
    assert!(h > 0.0 && t1 > t0, "need h > 0 and t1 > t0");
    let comps = field.compile_f64();
    let (states, truncated) = rk4_run(&comps, x0, t0, t1, h);
    let global_error_estimate = if truncated {
        None
    } else {
        let (half, half_trunc) = rk4_run(&comps, x0, t0, t1, h / 2.0);
        if half_trunc {
            None
        } else {
            let a = states.last().unwrap();
            let b = half.last().unwrap();
            Some((0..3).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max))
        }
    };
    Trajectory {
        t0,
        h,
        states,
        truncated,
        global_error_estimate,
    }
}

/// Drift of a quantity along a trajectory:
/// `max_k |I(t_k, x_k) - I(t_0, x_0)| / max(1, |I(t_0, x_0)|)`.
#[derive(Clone, Debug)]
pub struct DriftReport {
    pub max_relative_drift: f64,
    pub series: Vec<f64>,
    pub skipped_samples: usize,
    pub truncated: bool,
}

pub fn drift_integral(i: &IntegralFn, traj: &Trajectory) -> DriftReport {
    let mut series = Vec::with_capacity(traj.states.len());
    let mut skipped = 0;
    let mut reference: Option<f64> = None;
    let mut max_drift: f64 = 0.0;
    for (k, state) in traj.states.iter().enumerate() {
        match i.eval(traj.time_at(k), *state) {
            Ok(v) => {
                series.push(v);
                match reference {
                    None => reference = Some(v),
                    Some(r) => {
                        max_drift = max_drift.max((v - r).abs() / r.abs().max(1.0));
                    }
                }
            }
            Err(EvalError::Domain) | Err(EvalError::NonFinite) => {
                skipped += 1;
            }
        }
    }
    DriftReport {
        max_relative_drift: max_drift,
        series,
        skipped_samples: skipped,
        truncated: traj.truncated,
    }
}

pub fn drift_polynomial(p: &Polynomial, traj: &Trajectory) -> DriftReport {
    let i = IntegralFn::compile(&crate::integrals::FirstIntegral::from_polynomial(
        crate::rational::rat_i(0),
        p.clone(),
    ));
    drift_integral(&i, traj)
}

/// Finite-difference probe of a Hamiltonian / entropy pair along a
/// trajectory: the conservation defect of `H` and the sign pattern of `dS/dt`
/// are diagnostics, not pass/fail data.
#[derive(Clone, Debug)]
pub struct DissipationReport {
    pub max_abs_h_dot: f64,
    pub s_dot_nonpositive_fraction: f64,
    pub s_dot_nonnegative_fraction: f64,
}

pub fn dissipation_probe(h: &Polynomial, s: &Polynomial, traj: &Trajectory) -> DissipationReport {
    let hc = h.compile_f64();
    let sc = s.compile_f64();
    let eval = |p: &CompiledPoly, k: usize| {
        let st = traj.states[k];
        p.eval(st[0], st[1], st[2], traj.time_at(k).exp())
    };
    let n = traj.states.len();
    let mut max_h_dot: f64 = 0.0;
    let mut s_nonpos = 0usize;
    let mut s_nonneg = 0usize;
    let mut count = 0usize;
    for k in 1..n {
        let hdot = (eval(&hc, k) - eval(&hc, k - 1)) / traj.h;
        let sdot = (eval(&sc, k) - eval(&sc, k - 1)) / traj.h;
        max_h_dot = max_h_dot.max(hdot.abs());
        if sdot <= 1e-12 {
            s_nonpos += 1;
        }
        if sdot >= -1e-12 {
            s_nonneg += 1;
        }
        count += 1;
    }
    let denom = count.max(1) as f64;
    DissipationReport {
        max_abs_h_dot: max_h_dot,
        s_dot_nonpositive_fraction: s_nonpos as f64 / denom,
        s_dot_nonnegative_fraction: s_nonneg as f64 / denom,
    }
}

/// The five seeded standard-probe starts in the unit box.
pub fn probe_starts(seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..PROBE_STARTS)
        .map(|_| {
            [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ]
        })
        .collect()
}

/// Integrate the standard probe trajectories for a field.
pub fn standard_probe(field: &VectorField) -> Vec<Trajectory> {
    probe_starts(PROBE_SEED)
        .into_iter()
        .map(|x0| integrate(field, x0, 0.0, PROBE_T1, PROBE_H))
        .collect()
}
