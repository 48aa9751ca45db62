//! Monomials in the spatial variables `x`, `y`, `z` and the clock symbol.
//!
//! The clock symbol stands for `e^t` (written `exp(k t)` in reports) and may
//! carry any integer exponent; spatial exponents are nonnegative. Total degree
//! counts the spatial part only. The term order is graded lexicographic with
//! `x > y > z`, ties broken by the clock exponent ascending.

use std::cmp::Ordering;

/// The four formal variables of the polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
    /// Clock symbol, representing `e^t` with derivation rule `ds/dt = s`.
    S,
}

impl Var {
    pub const SPATIAL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn spatial_index(self) -> Option<usize> {
        match self {
            Var::X => Some(0),
            Var::Y => Some(1),
            Var::Z => Some(2),
            Var::S => None,
        }
    }

    pub fn from_spatial_index(i: usize) -> Var {
        Var::SPATIAL[i]
    }
}

/// Exponent vector of a single monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub ex: u32,
    pub ey: u32,
    pub ez: u32,
    /// Clock exponent; negative powers are allowed (`e^{-2t}` etc.).
    pub es: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        ex: 0,
        ey: 0,
        ez: 0,
        es: 0,
    };

    pub fn var(v: Var) -> Monomial {
        match v {
            Var::X => Monomial { ex: 1, ..Self::ONE },
            Var::Y => Monomial { ey: 1, ..Self::ONE },
            Var::Z => Monomial { ez: 1, ..Self::ONE },
            Var::S => Monomial { es: 1, ..Self::ONE },
        }
    }

    pub fn clock(es: i32) -> Monomial {
        Monomial { es, ..Self::ONE }
    }

    /// Total degree in the spatial variables; the clock symbol does not count.
    pub fn degree(&self) -> u32 {
        self.ex + self.ey + self.ez
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    /// Degree zero and clock-free.
    pub fn is_constant(&self) -> bool {
        self.is_one()
    }

    pub fn exponent(&self, v: Var) -> i64 {
        match v {
            Var::X => self.ex as i64,
            Var::Y => self.ey as i64,
            Var::Z => self.ez as i64,
            Var::S => self.es as i64,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            ex: self.ex + other.ex,
            ey: self.ey + other.ey,
            ez: self.ez + other.ez,
            es: self.es + other.es,
        }
    }

    /// Componentwise quotient; `None` when a spatial exponent would go
    /// negative. The clock exponent subtracts freely.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        if self.ex < other.ex || self.ey < other.ey || self.ez < other.ez {
            return None;
        }
        Some(Monomial {
            ex: self.ex - other.ex,
            ey: self.ey - other.ey,
            ez: self.ez - other.ez,
            es: self.es - other.es,
        })
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            ex: self.ex * e,
            ey: self.ey * e,
            ez: self.ez * e,
            es: self.es * e as i32,
        }
    }

    /// Formal partial derivative: returns the multiplier and the lowered
    /// monomial, or `None` if the monomial is free of `v`.
    pub fn diff(&self, v: Var) -> Option<(i64, Monomial)> {
        let mut m = *self;
        let e = match v {
            Var::X => {
                if m.ex == 0 {
                    return None;
                }
                m.ex -= 1;
                m.ex as i64 + 1
            }
            Var::Y => {
                if m.ey == 0 {
                    return None;
                }
                m.ey -= 1;
                m.ey as i64 + 1
            }
            Var::Z => {
                if m.ez == 0 {
                    return None;
                }
                m.ez -= 1;
                m.ez as i64 + 1
            }
            Var::S => {
                if m.es == 0 {
                    return None;
                }
                m.es -= 1;
                m.es as i64 + 1
            }
        };
        Some((e, m))
    }

    /// Render with the given spatial variable names, `*`-joined; the clock
    /// prints as `exp(k t)`. The constant monomial renders as an empty string.
    pub fn render(&self, names: &[String; 3]) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (e, name) in [
            (self.ex, &names[0]),
            (self.ey, &names[1]),
            (self.ez, &names[2]),
        ] {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        match self.es {
            0 => {}
            1 => parts.push("exp(t)".to_string()),
            -1 => parts.push("exp(-t)".to_string()),
            k => parts.push(format!("exp({k} t)")),
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.ex, self.ey, self.es).cmp(&(
            other.degree(),
            other.ex,
            other.ey,
            other.es,
        ))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All clock-free monomials of spatial degree `lo..=hi`, in descending order.
pub fn monomials_in_degrees(lo: u32, hi: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in lo..=hi {
        for ex in 0..=d {
            for ey in 0..=(d - ex) {
                let ez = d - ex - ey;
                out.push(Monomial { ex, ey, ez, es: 0 });
            }
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}
