//! Ratios of polynomials.
//!
//! Structure checks on metric tensors and multipliers need entries like
//! `z/y`; those are verified by clearing denominators, so the fractions are
//! never reduced — `num/den` is carried as-is and the excluded variety
//! (denominator zero set) is reported alongside any verdict.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::One;

use crate::monomial::Var;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// An unreduced polynomial fraction with a nonzero denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl Ratio {
    pub fn new(num: Polynomial, den: Polynomial) -> Option<Ratio> {
        if den.is_zero() {
            None
        } else {
            Some(Ratio { num, den }.fold_constant_den())
        }
    }

    /// Fold an exactly constant denominator into the numerator, so cleared
    /// residuals are not scaled by spurious constants. Polynomial
    /// denominators stay unreduced.
    fn fold_constant_den(self) -> Ratio {
        match self.den.as_constant() {
            Some(c) if !c.is_one() => Ratio {
                num: self.num.scale(&c.recip()),
                den: Polynomial::one(),
            },
            _ => self,
        }
    }

    pub fn from_poly(p: Polynomial) -> Ratio {
        Ratio {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn zero() -> Ratio {
        Ratio::from_poly(Polynomial::zero())
    }

    pub fn one() -> Ratio {
        Ratio::from_poly(Polynomial::one())
    }

    pub fn constant(c: Rational) -> Ratio {
        Ratio::from_poly(Polynomial::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn has_trivial_denominator(&self) -> bool {
        self.den.as_constant().is_some()
    }

    /// The fraction as a plain polynomial when the denominator is constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&c.recip()))
    }

    pub fn recip(&self) -> Option<Ratio> {
        Ratio::new(self.den.clone(), self.num.clone())
    }

    /// Quotient-rule partial derivative: `(num' den - num den') / den^2`.
    pub fn diff(&self, v: Var) -> Ratio {
        let num = &(&self.num.diff(v) * &self.den) - &(&self.num * &self.den.diff(v));
        let den = &self.den * &self.den;
        Ratio { num, den }.fold_constant_den()
    }

    pub fn pow(&self, e: u32) -> Ratio {
        Ratio {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
        .fold_constant_den()
    }

    pub fn eval(&self, x: &Rational, y: &Rational, z: &Rational, s: &Rational) -> Option<Rational> {
        let d = self.den.eval(x, y, z, s);
        if d == Rational::from_integer(0.into()) {
            None
        } else {
            Some(self.num.eval(x, y, z, s) / d)
        }
    }

    pub fn render(&self, names: &[String; 3]) -> String {
        if let Some(p) = self.as_polynomial() {
            p.render(names)
        } else {
            format!(
                "({}) / ({})",
                self.num.render(names),
                self.den.render(names)
            )
        }
    }
}

impl Add for &Ratio {
    type Output = Ratio;
    fn add(self, rhs: &Ratio) -> Ratio {
        if self.den == rhs.den {
            return Ratio {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            }
            .fold_constant_den();
        }
        Ratio {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
        .fold_constant_den()
    }
}

impl Sub for &Ratio {
    type Output = Ratio;
    fn sub(self, rhs: &Ratio) -> Ratio {
        self + &-rhs
    }
}

impl Mul for &Ratio {
    type Output = Ratio;
    fn mul(self, rhs: &Ratio) -> Ratio {
        Ratio {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
        .fold_constant_den()
    }
}

/// Division; panics on a zero divisor (callers check first).
impl Div for &Ratio {
    type Output = Ratio;
    fn div(self, rhs: &Ratio) -> Ratio {
        assert!(!rhs.is_zero(), "division by the zero ratio");
        Ratio {
            num: &self.num * &rhs.den,
            den: &self.den * &rhs.num,
        }
        .fold_constant_den()
    }
}

impl Neg for &Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// Three ratio entries; the general carrier for vector-calculus identities
/// whose inputs may have polynomial denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioVector(pub [Ratio; 3]);

impl RatioVector {
    pub fn from_polys(p: [Polynomial; 3]) -> RatioVector {
        RatioVector(p.map(Ratio::from_poly))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Ratio::is_zero)
    }

    /// Spatial curl via the quotient rule; the clock symbol is a parameter.
    pub fn curl(&self) -> RatioVector {
        let [j1, j2, j3] = &self.0;
        RatioVector([
            &j3.diff(Var::Y) - &j2.diff(Var::Z),
            &j1.diff(Var::Z) - &j3.diff(Var::X),
            &j2.diff(Var::X) - &j1.diff(Var::Y),
        ])
    }

    pub fn dot(&self, other: &RatioVector) -> Ratio {
        let mut acc = Ratio::zero();
        for i in 0..3 {
            acc = &acc + &(&self.0[i] * &other.0[i]);
        }
        acc
    }

    pub fn cross(&self, other: &RatioVector) -> RatioVector {
        let [a1, a2, a3] = &self.0;
        let [b1, b2, b3] = &other.0;
        RatioVector([
            &(a2 * b3) - &(a3 * b2),
            &(a3 * b1) - &(a1 * b3),
            &(a1 * b2) - &(a2 * b1),
        ])
    }

    pub fn scale(&self, f: &Ratio) -> RatioVector {
        RatioVector([&self.0[0] * f, &self.0[1] * f, &self.0[2] * f])
    }

    /// Spatial divergence.
    pub fn divergence(&self) -> Ratio {
        let [j1, j2, j3] = &self.0;
        &(&j1.diff(Var::X) + &j2.diff(Var::Y)) + &j3.diff(Var::Z)
    }

    /// The distinct nonconstant denominators, i.e. the excluded variety of
    /// any identity verified after clearing these entries.
    pub fn excluded_denominators(&self) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = Vec::new();
        for r in &self.0 {
            if r.den.as_constant().is_none() && !out.contains(&r.den) {
                out.push(r.den.clone());
            }
        }
        out
    }
}
