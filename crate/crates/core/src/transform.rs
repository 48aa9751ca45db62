//! Exponential changes of variables, tracked symbolically through the clock.
//!
//! The state rescaling `u_i = x_i e^{a_i t}` with integer rates gives
//! `du_i/dt = a_i u_i + e^{a_i t} X_i(x(u))`, where `x_i = u_i s^{-a_i}`
//! stays polynomial in the Laurent clock symbol. A nonzero clock rate `c`
//! additionally rescales time so that slow exponential drift is absorbed:
//! with `dtb = e^{-c t} dt` every component picks up a factor `s^c`. The
//! rescaled-time symbol printed as `t` in transformed systems is then `e^t`
//! itself, i.e. the clock.

use crate::field::VectorField;
use crate::integrals::FirstIntegral;
use crate::monomial::{Monomial, Var};
use crate::poly::Polynomial;
use crate::rational::{rat_i, Rational};

/// Integer exponential scaling: per-variable rates and a clock rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpScaling {
    pub a: [i64; 3],
    pub c: i64,
}

impl ExpScaling {
    pub fn identity() -> ExpScaling {
        ExpScaling { a: [0, 0, 0], c: 0 }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

fn subst_images(a: [i64; 3]) -> [(Rational, Monomial); 4] {
    let image = |v: Var, rate: i64| {
        let mut m = Monomial::var(v);
        m.es = -(rate as i32);
        (rat_i(1), m)
    };
    [
        image(Var::X, a[0]),
        image(Var::Y, a[1]),
        image(Var::Z, a[2]),
        (rat_i(1), Monomial::var(Var::S)),
    ]
}

/// Transform a field by `sc`, optionally renaming the variables for display.
pub fn transform(
    field: &VectorField,
    sc: &ExpScaling,
    new_names: Option<[String; 3]>,
) -> VectorField {
    let images = subst_images(sc.a);
    let comps: [Polynomial; 3] = std::array::from_fn(|i| {
        let substituted = field.comps[i].substitute_monomials(&images);
        let mut comp = substituted.mul_term(&Monomial::clock(sc.a[i] as i32), &rat_i(1));
        comp += &Polynomial::term(Monomial::var(Var::from_spatial_index(i)), rat_i(sc.a[i]));
        comp.mul_term(&Monomial::clock(sc.c as i32), &rat_i(1))
    });
    VectorField {
        name: format!("{}-transformed", field.name),
        var_names: new_names.unwrap_or_else(|| field.var_names.clone()),
        comps,
        params: field.params.clone(),
    }
}

/// Exact inverse of [`transform`]: undo the clock factor, subtract the drift
/// term, strip the per-component clock power, and substitute back.
pub fn invert(field: &VectorField, sc: &ExpScaling, names: Option<[String; 3]>) -> VectorField {
    let back = subst_images([-sc.a[0], -sc.a[1], -sc.a[2]]);
    let comps: [Polynomial; 3] = std::array::from_fn(|i| {
        let mut comp = field.comps[i].mul_term(&Monomial::clock(-(sc.c as i32)), &rat_i(1));
        comp -= &Polynomial::term(Monomial::var(Var::from_spatial_index(i)), rat_i(sc.a[i]));
        let comp = comp.mul_term(&Monomial::clock(-(sc.a[i] as i32)), &rat_i(1));
        comp.substitute_monomials(&back)
    });
    VectorField {
        name: field.name.trim_end_matches("-transformed").to_string(),
        var_names: names.unwrap_or_else(|| field.var_names.clone()),
        comps,
        params: field.params.clone(),
    }
}

/// Which clock powers survive in the components of a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutonomyReport {
    pub autonomous: bool,
    /// Sorted nonzero clock powers that occur in some component.
    pub surviving_powers: Vec<i32>,
}

pub fn autonomy_report(field: &VectorField) -> AutonomyReport {
    let mut powers: Vec<i32> = field
        .comps
        .iter()
        .flat_map(|c| c.clock_powers())
        .filter(|&k| k != 0)
        .collect();
    powers.sort_unstable();
    powers.dedup();
    AutonomyReport {
        autonomous: powers.is_empty(),
        surviving_powers: powers,
    }
}

/// A first integral pushed through a scaling. Each factor becomes
/// `s^{k_a} q_a` with `q_a` clock-minimal; the integral transports to a
/// clock-free function exactly when each `q_a` is clock-free and the total
/// leftover power `-r + sum n_a k_a` vanishes.
#[derive(Clone, Debug)]
pub struct TransportedIntegral {
    pub factors: Vec<(Polynomial, Rational)>,
    /// `-r + sum n_a k_a`.
    pub leftover_power: Rational,
    pub clock_free: bool,
}

pub fn transport_integral(integral: &FirstIntegral, sc: &ExpScaling) -> TransportedIntegral {
    let images = subst_images(sc.a);
    let mut leftover = -integral.rate.clone();
    let mut factors = Vec::new();
    let mut clock_free = true;
    for (g, n) in &integral.factors {
        let p = g.substitute_monomials(&images);
        let kmin = p.clock_powers().first().copied().unwrap_or(0);
        let q = p.mul_term(&Monomial::clock(-kmin), &rat_i(1));
        if !q.is_clock_free() {
            clock_free = false;
        }
        leftover += &rat_i(kmin as i64) * n;
        factors.push((q, n.clone()));
    }
    use num_traits::Zero;
    if !leftover.is_zero() {
        clock_free = false;
    }
    TransportedIntegral {
        factors,
        leftover_power: leftover,
        clock_free,
    }
}
