use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Fp;
use crate::error::{Error, Result};
use crate::fpoly::Poly;

/// Above this many elements [`solve_norm`] samples instead of sweeping K.
pub const EXHAUSTIVE_NORM_LIMIT: u128 = 1_000_000;

const RANDOM_NORM_ATTEMPTS: usize = 10_000_000;

#[derive(Debug)]
struct Inner {
    modulus: Poly,
    // class of t^{-1}; present iff g is self-reciprocal of degree >= 2
    t_inv: Option<Poly>,
}

/// K = GF(p)[t]/(g) for a monic irreducible g. Cheap to clone.
#[derive(Clone, Debug)]
pub struct ExtField {
    inner: Arc<Inner>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.modulus == other.inner.modulus
    }
}

impl Eq for ExtField {}

impl ExtField {
    pub fn new(modulus: Poly) -> Result<Self> {
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        if !modulus.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        let t_inv = if modulus.deg() >= 2 && modulus.is_self_reciprocal() {
            let (_, s, _) = Poly::t(modulus.field()).ext_gcd(&modulus);
            Some(s.rem(&modulus))
        } else {
            None
        };
        Ok(ExtField { inner: Arc::new(Inner { modulus, t_inv }) })
    }

    pub fn modulus(&self) -> &Poly {
        &self.inner.modulus
    }

    pub fn base(&self) -> Fp {
        self.inner.modulus.field()
    }

    pub fn degree(&self) -> usize {
        self.inner.modulus.deg()
    }

    /// `p^deg`, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        let p = self.base().p() as u128;
        (0..self.degree()).fold(1u128, |acc, _| acc.saturating_mul(p))
    }

    /// Whether the bar involution `t -> t^{-1}` is defined and nontrivial.
    pub fn has_involution(&self) -> bool {
        self.inner.t_inv.is_some()
    }

    fn involution_check(&self) -> Result<&Poly> {
        if let Some(t) = &self.inner.t_inv {
            return Ok(t);
        }
        if self.degree() == 1 {
            Err(Error::DegreeOne)
        } else {
            Err(Error::NotSelfReciprocal)
        }
    }

    pub fn elem(&self, poly: &Poly) -> ExtElem {
        assert_eq!(poly.field(), self.base(), "mixed-modulus extension element");
        ExtElem { poly: poly.rem(self.modulus()), field: self.clone() }
    }

    pub fn from_i64(&self, coeffs: &[i64]) -> ExtElem {
        self.elem(&Poly::from_i64(self.base(), coeffs))
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem { poly: Poly::zero(self.base()), field: self.clone() }
    }

    pub fn one(&self) -> ExtElem {
        self.scalar(1)
    }

    pub fn scalar(&self, c: u32) -> ExtElem {
        self.elem(&Poly::constant(self.base(), c))
    }

    /// The class of `t`.
    pub fn generator(&self) -> ExtElem {
        self.elem(&Poly::t(self.base()))
    }

    /// All `p^deg` elements, ordered by their coefficient vector read as a
    /// base-p integer with the constant term least significant.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        let p = self.base().p();
        let d = self.degree();
        let mut digits = Some(vec![0u32; d]);
        std::iter::from_fn(move || {
            let cur = digits.as_mut()?;
            let out = ExtElem { poly: Poly::new(self.base(), cur.clone()), field: self.clone() };
            let mut i = 0;
            loop {
                if i == d {
                    digits = None;
                    break;
                }
                cur[i] += 1;
                if cur[i] < p {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
            Some(out)
        })
    }

    pub fn random(&self, rng: &mut impl Rng) -> ExtElem {
        let p = self.base().p();
        let coeffs = (0..self.degree()).map(|_| rng.gen_range(0..p)).collect();
        ExtElem { poly: Poly::new(self.base(), coeffs), field: self.clone() }
    }
}

impl fmt::Display for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[t]/({})", self.base(), self.modulus())
    }
}

/// A residue of K = GF(p)[t]/(g). Arithmetic panics if operands come from
/// different fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElem {
    poly: Poly,
    field: ExtField,
}

impl ExtElem {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_one()
    }

    fn check(&self, other: &ExtElem) {
        assert!(self.field == other.field, "mixed-modulus extension arithmetic");
    }

    fn wrap(&self, poly: Poly) -> ExtElem {
        ExtElem { poly, field: self.field.clone() }
    }

    pub fn add(&self, other: &ExtElem) -> ExtElem {
        self.check(other);
        self.wrap(self.poly.add(&other.poly))
    }

    pub fn sub(&self, other: &ExtElem) -> ExtElem {
        self.check(other);
        self.wrap(self.poly.sub(&other.poly))
    }

    pub fn neg(&self) -> ExtElem {
        self.wrap(self.poly.neg())
    }

    pub fn mul(&self, other: &ExtElem) -> ExtElem {
        self.check(other);
        self.wrap(self.poly.mul_mod(&other.poly, self.field.modulus()))
    }

    pub fn scale(&self, c: u32) -> ExtElem {
        self.wrap(self.poly.scale(c))
    }

    pub fn inv(&self) -> Result<ExtElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.poly.ext_gcd(self.field.modulus());
        debug_assert!(g.is_one());
        Ok(self.wrap(s.rem(self.field.modulus())))
    }

    pub fn pow(&self, e: u64) -> ExtElem {
        self.wrap(self.poly.pow_mod(e, self.field.modulus()))
    }

    /// Image under `phi(t) -> phi(t^{-1})`.
    pub fn bar(&self) -> Result<ExtElem> {
        let t_inv = self.field.involution_check()?;
        let m = self.field.modulus();
        let img = self
            .poly
            .coeffs()
            .iter()
            .rev()
            .fold(Poly::zero(self.field.base()), |acc, &c| {
                acc.mul_mod(t_inv, m).add(&Poly::constant(self.field.base(), c))
            });
        Ok(self.wrap(img))
    }

    /// `x * bar(x)`.
    pub fn norm(&self) -> Result<ExtElem> {
        Ok(self.mul(&self.bar()?))
    }

    pub fn is_bar_fixed(&self) -> Result<bool> {
        Ok(self.bar()? == *self)
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

pub fn ext_bar(x: &ExtElem) -> Result<ExtElem> {
    x.bar()
}

pub fn ext_norm(x: &ExtElem) -> Result<ExtElem> {
    x.norm()
}

/// Some `c` with `c * bar(c) = a`, for `a` nonzero and fixed by bar.
///
/// Sweeps K in [`ExtField::elements`] order when `|K| <= 10^6`, otherwise
/// samples with a ChaCha stream seeded by `seed`. The result is verified
/// before it is returned.
pub fn solve_norm_seeded(a: &ExtElem, seed: u64) -> Result<ExtElem> {
    if a.is_zero() {
        return Err(Error::NoSolution("norm equation with zero right-hand side".into()));
    }
    if !a.is_bar_fixed()? {
        return Err(Error::NoSolution("right-hand side is not fixed by the involution".into()));
    }
    let field = a.field();
    let found = if field.order() <= EXHAUSTIVE_NORM_LIMIT {
        field.elements().find(|c| c.norm().map(|n| n == *a).unwrap_or(false))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..RANDOM_NORM_ATTEMPTS)
            .map(|_| field.random(&mut rng))
            .find(|c| c.norm().map(|n| n == *a).unwrap_or(false))
    };
    let c = found.ok_or_else(|| Error::NoSolution("norm search exhausted".into()))?;
    assert_eq!(c.norm()?, *a, "norm solution failed verification");
    Ok(c)
}

pub fn solve_norm(a: &ExtElem) -> Result<ExtElem> {
    solve_norm_seeded(a, 0)
}
