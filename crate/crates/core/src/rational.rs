//! Helpers on the exact rational scalar type used everywhere in the crate.
//!
//! The coefficient field is `num_rational::BigRational`: always in lowest
//! terms with a positive denominator, so the canonical-form invariants come
//! for free from the underlying crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact arbitrary-precision rational scalar.
pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat_i(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// The fraction `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"a"` or `"a/b"` with optional sign, returning `None` on anything else.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}

/// `base^exp` for any integer exponent. Panics on `0^negative`.
pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    if base.is_zero() && exp < 0 {
        panic!("zero base with negative exponent");
    }
    let mag = exp.unsigned_abs();
    let mut result = Rational::one();
    let mut acc = base.clone();
    let mut e = mag;
    while e > 0 {
        if e & 1 == 1 {
            result *= &acc;
        }
        e >>= 1;
        if e > 0 {
            acc = &acc * &acc;
        }
    }
    if exp < 0 {
        result.recip()
    } else {
        result
    }
}

/// Lossy conversion to `f64` (`NaN` if out of range, which big rationals
/// produced by this crate never are in practice).
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Best rational approximation of `x` by continued-fraction convergents with
/// denominator at most `max_den`. Returns `None` for non-finite input.
pub fn rationalize_f64(x: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() || max_den == 0 {
        return None;
    }
    // Convergents h_k / k_k of the continued fraction of x.
    let mut h_prev = BigInt::one();
    let mut k_prev = BigInt::zero();
    let mut h = BigInt::from(x.floor() as i64);
    let mut k = BigInt::one();
    let mut frac = x - x.floor();
    let bound = BigInt::from(max_den);
    for _ in 0..64 {
        if frac.abs() < 1e-12 {
            break;
        }
        let inv = 1.0 / frac;
        if !inv.is_finite() || inv >= 1e15 {
            break;
        }
        let a = BigInt::from(inv.floor() as i64);
        frac = inv - inv.floor();
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if k_next > bound {
            return Some(BigRational::new(h, k));
        }
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
    }
    Some(BigRational::new(h, k))
}

/// Scale a rational vector to a primitive integer vector: common denominator
/// cleared, entries coprime, first nonzero entry positive. Returns `None` for
/// the zero vector.
pub fn primitive_integer_vector(v: &[Rational]) -> Option<Vec<BigInt>> {
    if v.iter().all(|r| r.is_zero()) {
        return None;
    }
    let mut lcm = BigInt::one();
    for r in v {
        lcm = lcm.lcm(r.denom());
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    if !g.is_zero() && !g.is_one() {
        for i in &mut ints {
            *i = &*i / &g;
        }
    }
    if let Some(first) = ints.iter().find(|i| !i.is_zero()) {
        if first.is_negative() {
            for i in &mut ints {
                *i = -&*i;
            }
        }
    }
    Some(ints)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3"), Some(rat_i(3)));
        assert_eq!(parse_rational("-1/2"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("4/-8"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn pow_negative_exponent() {
        assert_eq!(rat_pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(rat_pow(&rat(5, 7), 0), rat_i(1));
    }

    #[test]
    fn rationalize_simple_fractions() {
        assert_eq!(rationalize_f64(0.5, 64), Some(rat(1, 2)));
        assert_eq!(rationalize_f64(-1.5, 64), Some(rat(-3, 2)));
        assert_eq!(rationalize_f64(2.0, 64), Some(rat_i(2)));
        // 1/3 is not exactly representable but the convergent recovers it.
        assert_eq!(rationalize_f64(1.0 / 3.0, 64), Some(rat(1, 3)));
        assert_eq!(rationalize_f64(f64::NAN, 64), None);
    }

    #[test]
    fn rationalize_respects_bound() {
        // best convergent with denominator <= 64 is 22/7
        let r = rationalize_f64(std::f64::consts::PI, 64).unwrap();
        assert_eq!(r, rat(22, 7));
        let r = rationalize_f64(std::f64::consts::PI, 200).unwrap();
        assert_eq!(r, rat(355, 113));
    }

    #[test]
    fn primitive_vector_normalization() {
        let v = vec![rat(-1, 2), rat(-1, 2), rat_i(0)];
        assert_eq!(
            primitive_integer_vector(&v),
            Some(vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)])
        );
        assert_eq!(primitive_integer_vector(&[rat_i(0)]), None);
    }
}
