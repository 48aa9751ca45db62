//! Shared fixtures for the benchmarks.

use darboux_core::field::VectorField;
use darboux_core::monomial::Var;
use darboux_core::poly::Polynomial;
use darboux_core::rational::{rat_i, Rational};

pub fn three_wave(gamma: Rational, delta: Rational) -> VectorField {
    let x = Polynomial::var(Var::X);
    let y = Polynomial::var(Var::Y);
    let z = Polynomial::var(Var::Z);
    VectorField::new(
        "three-wave",
        [
            &(&(&y * &y).scale(&rat_i(-2)) + &x.scale(&gamma)) + &(&z + &y.scale(&delta)),
            &(&(&x * &y).scale(&rat_i(2)) + &y.scale(&gamma)) - &x.scale(&delta),
            &(&x * &z).scale(&rat_i(-2)) - &z.scale(&rat_i(2)),
        ],
    )
    .unwrap()
}

pub fn rabinovich_symmetric() -> VectorField {
    let x = Polynomial::var(Var::X);
    let y = Polynomial::var(Var::Y);
    let z = Polynomial::var(Var::Z);
    VectorField::new(
        "rabinovich",
        [&-&x + &(&y * &z), &-&y - &(&x * &z), &-&z + &(&x * &y)],
    )
    .unwrap()
}
