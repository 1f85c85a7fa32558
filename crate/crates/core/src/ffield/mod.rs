//! Prime-field arithmetic GF(p), p odd, and the quotient fields K = GF(p)[t]/(g).
//!
//! [`Fp`] is a copyable handle carrying the modulus. Matrices and polynomials
//! store raw residues (`u32` in `[0, p)`) next to their handle and call the
//! handle's arithmetic directly; [`FieldElem`] is the checked scalar used at
//! API boundaries.

mod ext;

pub use ext::{ext_bar, ext_norm, solve_norm, solve_norm_seeded, ExtElem, ExtField};

use std::fmt;

use crate::error::{Error, Result};

/// Largest admissible prime. Products of two residues fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The prime field GF(p) for an odd prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    p: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Fp { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce(s0))
    }

    pub fn div(self, a: u32, b: u32) -> Result<u32> {
        self.inv(b).map(|bi| self.mul(a, bi)).ok_or(Error::DivisionByZero)
    }

    pub fn is_square(self, a: u32) -> bool {
        a == 0 || self.pow(a, (self.p as u64 - 1) / 2) == 1
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(self) -> u32 {
        let n = self.p as u64 - 1;
        let mut factors = Vec::new();
        let mut rest = n;
        let mut d = 2;
        while d * d <= rest {
            if rest.is_multiple_of(d) {
                factors.push(d);
                while rest.is_multiple_of(d) {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            factors.push(rest);
        }
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, n / q) != 1))
            .unwrap_or(1)
    }

    pub fn elem(self, v: i64) -> FieldElem {
        FieldElem {
            value: self.reduce(v),
            field: self,
        }
    }

    /// Centered representative in `(-p/2, p/2]`, used for display only.
    pub fn signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// A residue in GF(p) tagged with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    field: Fp,
}

/// Selector for [`fp_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Neg,
}

// checked arithmetic, so the std operator traits do not fit
#[allow(clippy::should_implement_trait)]
impl FieldElem {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> Fp {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: FieldElem) -> Result<Fp> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        Ok(self.field)
    }

    pub fn add(self, other: FieldElem) -> Result<FieldElem> {
        let f = self.same_field(other)?;
        Ok(FieldElem { value: f.add(self.value, other.value), field: f })
    }

    pub fn sub(self, other: FieldElem) -> Result<FieldElem> {
        let f = self.same_field(other)?;
        Ok(FieldElem { value: f.sub(self.value, other.value), field: f })
    }

    pub fn mul(self, other: FieldElem) -> Result<FieldElem> {
        let f = self.same_field(other)?;
        Ok(FieldElem { value: f.mul(self.value, other.value), field: f })
    }

    pub fn div(self, other: FieldElem) -> Result<FieldElem> {
        let f = self.same_field(other)?;
        Ok(FieldElem { value: f.div(self.value, other.value)?, field: f })
    }

    pub fn inv(self) -> Result<FieldElem> {
        let value = self.field.inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(FieldElem { value, field: self.field })
    }

    pub fn neg(self) -> FieldElem {
        FieldElem { value: self.field.neg(self.value), field: self.field }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Binary/unary GF(p) arithmetic behind a single entry point. Unary ops ignore `b`.
pub fn fp_arith(a: FieldElem, b: FieldElem, op: FpOp) -> Result<FieldElem> {
    match op {
        FpOp::Add => a.add(b),
        FpOp::Sub => a.sub(b),
        FpOp::Mul => a.mul(b),
        FpOp::Div => a.div(b),
        FpOp::Inv => a.inv(),
        FpOp::Neg => Ok(a.neg()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_rejects_non_odd_primes() {
        for bad in [0, 1, 2, 4, 9, 15] {
            assert_eq!(Fp::new(bad), Err(Error::NotOddPrime(bad)));
        }
        assert!(Fp::new(3).is_ok());
        assert!(Fp::new(101).is_ok());
    }

    #[test]
    fn worked_examples() {
        let f5 = Fp::new(5).unwrap();
        let x = fp_arith(f5.elem(2), f5.elem(0), FpOp::Inv).unwrap();
        assert_eq!(x.value(), 3);
        let f3 = Fp::new(3).unwrap();
        assert_eq!(fp_arith(f3.elem(1), f3.elem(0), FpOp::Neg).unwrap().value(), 2);
        let f7 = Fp::new(7).unwrap();
        assert_eq!(fp_arith(f7.elem(3), f7.elem(5), FpOp::Mul).unwrap().value(), 1);
    }

    #[test]
    fn errors() {
        let f5 = Fp::new(5).unwrap();
        let f7 = Fp::new(7).unwrap();
        assert_eq!(f5.elem(1).div(f5.elem(0)), Err(Error::DivisionByZero));
        assert_eq!(f5.elem(0).inv(), Err(Error::DivisionByZero));
        assert!(matches!(f5.elem(1).add(f7.elem(1)), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn inverse_and_negation_laws() {
        for p in [3u64, 5, 7, 11, 13, 101] {
            let f = Fp::new(p).unwrap();
            for a in 0..f.p() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(Fp::new(3).unwrap().primitive_root(), 2);
        assert_eq!(Fp::new(7).unwrap().primitive_root(), 3);
        assert_eq!(Fp::new(5).unwrap().primitive_root(), 2);
    }
}
