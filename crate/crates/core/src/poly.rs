//! Sparse multivariate polynomials over the rationals in `x`, `y`, `z` and
//! the clock symbol.
//!
//! Terms are held in a `BTreeMap` keyed by [`Monomial`] in the graded-lex
//! order, so the representation is canonical: no zero coefficients are ever
//! stored and iteration order is deterministic. All arithmetic is exact.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::monomial::{Monomial, Var};
use crate::rational::{rat_pow, Rational};

pub const CANONICAL_NAMES: [&str; 3] = ["x", "y", "z"];

pub fn canonical_names() -> [String; 3] {
    CANONICAL_NAMES.map(|s| s.to_string())
}

/// A polynomial as a canonical term map. The zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Polynomial {
        Polynomial::term(Monomial::ONE, c)
    }

    pub fn var(v: Var) -> Polynomial {
        Polynomial::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order (the canonical print order).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Spatial total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// True when every term is free of the clock symbol.
    pub fn is_clock_free(&self) -> bool {
        self.terms.keys().all(|m| m.es == 0)
    }

    /// Clock exponents that occur, sorted ascending and deduplicated.
    pub fn clock_powers(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.terms.keys().map(|m| m.es).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// True for polynomials of spatial degree zero that are clock-free
    /// (including the zero polynomial).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    /// The value of a constant polynomial, `None` otherwise.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.coeff(&Monomial::ONE))
        } else {
            None
        }
    }

    /// Leading term in graded-lex order; `None` for the zero polynomial.
    pub fn leading_term(&self) -> Option<(Monomial, Rational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))
    }

    /// Split into the constant coefficient and the remaining terms.
    pub fn split_constant(&self) -> (Rational, Polynomial) {
        let c = self.coeff(&Monomial::ONE);
        let mut rest = self.clone();
        rest.terms.remove(&Monomial::ONE);
        (c, rest)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(mm, v)| (mm.mul(m), v * c))
                .collect(),
        }
    }

    /// Scale so the leading coefficient is one. No-op on zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut acc = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &acc;
            }
            e >>= 1;
            if e > 0 {
                acc = &acc * &acc;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `v`.
    pub fn diff(&self, v: Var) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().filter_map(|(m, c)| {
            m.diff(v)
                .map(|(e, lowered)| (lowered, c * Rational::from_integer(e.into())))
        }))
    }

    /// Exact evaluation; the clock value must be positive.
    pub fn eval(&self, x: &Rational, y: &Rational, z: &Rational, s: &Rational) -> Rational {
        assert!(
            s.is_positive() || self.is_clock_free(),
            "clock symbol must be bound to a positive rational"
        );
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            t *= rat_pow(x, m.ex as i64);
            t *= rat_pow(y, m.ey as i64);
            t *= rat_pow(z, m.ez as i64);
            if m.es != 0 {
                t *= rat_pow(s, m.es as i64);
            }
            acc += t;
        }
        acc
    }

    /// Flatten into `(coefficient, [ex, ey, ez, es])` rows for fast float
    /// evaluation along trajectories.
    pub fn compile_f64(&self) -> CompiledPoly {
        CompiledPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        c.to_f64().unwrap_or(f64::NAN),
                        [m.ex as i32, m.ey as i32, m.ez as i32, m.es],
                    )
                })
                .collect(),
        }
    }

    /// Substitute each variable by a scaled monomial image. Spatial images
    /// must keep spatial exponents nonnegative by construction (monomial
    /// powers of monomials always do); used by the exponential rescaling
    /// engine where `x_i -> u_i * s^{-a_i}` and `s -> s`.
    pub fn substitute_monomials(&self, images: &[(Rational, Monomial); 4]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = Monomial::ONE;
            for (v, e) in [
                (Var::X, m.ex as i64),
                (Var::Y, m.ey as i64),
                (Var::Z, m.ez as i64),
                (Var::S, m.es as i64),
            ] {
                if e == 0 {
                    continue;
                }
                let (ic, im) = &images[match v {
                    Var::X => 0,
                    Var::Y => 1,
                    Var::Z => 2,
                    Var::S => 3,
                }];
                coeff *= rat_pow(ic, e);
                if e >= 0 {
                    mono = mono.mul(&im.pow(e as u32));
                } else {
                    // Negative powers only make sense for pure clock images.
                    assert!(
                        im.degree() == 0,
                        "negative exponent on a spatial monomial image"
                    );
                    mono.es += im.es * e as i32;
                }
            }
            out.add_term(mono, coeff);
        }
        out
    }

    /// Exact quotient `self / div`, or `None` when the division leaves a
    /// remainder. Greedy leading-term division in the graded-lex order.
    pub fn divide_exact(&self, div: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = div.leading_term()?;
        let mut rem = self.clone();
        let mut quo = Polynomial::zero();
        let mut guard = 0usize;
        while !rem.is_zero() {
            guard += 1;
            if guard > 100_000 {
                return None;
            }
            let (rm, rc) = rem.leading_term().unwrap();
            let qm = rm.try_div(&dm)?;
            let qc = &rc / &dc;
            let t = Polynomial::term(qm, qc);
            rem = &rem - &(&t * div);
            quo += &t;
        }
        Some(quo)
    }

    /// Canonical total order on polynomials (used to sort reports).
    pub fn cmp_canonical(&self, other: &Polynomial) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb).then_with(|| ca.cmp(cb)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
    }

    /// Canonical text rendering: descending graded-lex terms, coefficients as
    /// `a/b`, the clock symbol as `exp(k t)`.
    pub fn render(&self, names: &[String; 3]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms_desc().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = m.render(names);
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    /// Rendering with the default `x, y, z` names.
    pub fn render_canonical(&self) -> String {
        self.render(&canonical_names())
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_canonical(other)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

/// Float view of a polynomial for trajectory work.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(f64, [i32; 4])>,
}

impl CompiledPoly {
    pub fn eval(&self, x: f64, y: f64, z: f64, s: f64) -> f64 {
        let mut acc = 0.0;
        for (c, e) in &self.terms {
            acc += c
                * x.powi(e[0])
                * y.powi(e[1])
                * z.powi(e[2])
                * if e[3] == 0 { 1.0 } else { s.powi(e[3]) };
        }
        acc
    }
}
