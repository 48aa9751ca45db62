//! Exact linear algebra over the rationals: reduced row echelon form, null
//! spaces, characteristic polynomials and rational root extraction.
//!
//! Matrices here are small (a few dozen rows at most), so simple dense
//! algorithms with big-rational entries are entirely adequate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> QMat {
        QMat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> QMat {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> QMat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .sum()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].clone().recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = &self[(i, j)] - &(&f * &self[(r, j)]);
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Canonical null-space basis: one vector per free column, with a `1` in
    /// that column and the pivot entries filled in from the RREF.
    pub fn null_space(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_rows: Vec<(usize, usize)> = pivots
            .iter()
            .copied()
            .enumerate()
            .map(|(r, c)| (c, r))
            .collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for &(pc, pr) in &pivot_rows {
                v[pc] = -m[(pr, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Characteristic polynomial coefficients, ascending:
    /// `c[0] + c[1] t + ... + c[n] t^n` with `c[n] = 1`.
    ///
    /// Faddeev-LeVerrier recursion; exact and O(n^4), fine at this scale.
    pub fn char_poly(&self) -> Vec<Rational> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = QMat::identity(n);
        for k in 1..=n {
            let am = self.mul(&m);
            let c = -(am.trace() / Rational::from_integer(BigInt::from(k)));
            coeffs[n - k] = c.clone();
            m = am;
            for i in 0..n {
                let v = &m[(i, i)] + &c;
                m[(i, i)] = v;
            }
        }
        coeffs
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Evaluate an ascending-coefficient polynomial at a rational point.
pub fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = &acc * x + c;
    }
    acc
}

const TRIAL_LIMIT: u64 = 1_000_000;
const MAX_DIVISORS: usize = 4096;

/// Divisors of `|n|` by trial division. Any cofactor surviving the trial
/// limit is treated as prime; beyond the corpus scale this can in principle
/// miss composite divisors, which only makes root *candidates* incomplete,
/// never a reported root wrong.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    assert!(!n.is_zero());
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, factors: &mut Vec<(BigInt, u32)>| {
        if let Some(last) = factors.last_mut() {
            if last.0 == p {
                last.1 += 1;
                return;
            }
        }
        factors.push((p, 1));
    };
    let mut d = BigInt::from(2u32);
    while &d * &d <= n && d <= BigInt::from(TRIAL_LIMIT) {
        while (&n % &d).is_zero() {
            n = &n / &d;
            push(d.clone(), &mut factors);
        }
        d += 1;
    }
    if !n.is_one() {
        push(n, &mut factors);
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk = &pk * &p;
                if next.len() > MAX_DIVISORS {
                    break;
                }
            }
        }
        divs = next;
        divs.sort();
        divs.dedup();
        if divs.len() > MAX_DIVISORS {
            divs.truncate(MAX_DIVISORS);
        }
    }
    divs
}

/// All rational roots of a rational-coefficient polynomial (ascending
/// coefficients), via the rational root theorem on the cleared form.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut roots = Vec::new();
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(Rational::is_zero) {
        c.pop();
    }
    if c.is_empty() {
        return roots; // the zero polynomial: callers never pass it
    }
    // strip x^k; zero is then a root
    let mut low = 0;
    while c[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(Rational::zero());
        c.drain(..low);
    }
    if c.len() <= 1 {
        return roots;
    }
    let mut lcm = BigInt::one();
    for r in &c {
        lcm = lcm.lcm(r.denom());
    }
    let ints: Vec<BigInt> = c
        .iter()
        .map(|r| (r * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let a0 = ints.first().unwrap();
    let an = ints.last().unwrap();
    for p in divisors(a0) {
        for q in divisors(an) {
            if !p.gcd(&q).is_one() {
                continue;
            }
            for cand in [
                Rational::new(p.clone(), q.clone()),
                Rational::new(-p.clone(), q.clone()),
            ] {
                if eval_poly(&c, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}
