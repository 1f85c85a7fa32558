//! Univariate polynomials over GF(p).
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial has an empty coefficient vector. The total order used
//! everywhere (descriptor keys, enumeration streams) compares degree first and
//! then the lowest-first coefficient tuple lexicographically.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffield::{FieldElem, Fp};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Fp,
    coeffs: Vec<u32>,
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Selector for [`poly_arith`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivMod,
    Gcd,
    Derivative,
    Eval(u32),
}

/// Result of [`poly_arith`]; the shape depends on the operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyValue {
    Poly(Poly),
    QuotRem(Poly, Poly),
    Scalar(FieldElem),
}

/// Checked entry point over the polynomial ring operations.
pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<PolyValue> {
    if a.field != b.field {
        return Err(Error::ModulusMismatch {
            left: a.field.to_string(),
            right: b.field.to_string(),
        });
    }
    Ok(match op {
        PolyOp::Add => PolyValue::Poly(a.add(b)),
        PolyOp::Sub => PolyValue::Poly(a.sub(b)),
        PolyOp::Mul => PolyValue::Poly(a.mul(b)),
        PolyOp::DivMod => {
            let (q, r) = a.div_rem(b)?;
            PolyValue::QuotRem(q, r)
        }
        PolyOp::Gcd => PolyValue::Poly(a.gcd(b)),
        PolyOp::Derivative => PolyValue::Poly(a.derivative()),
        PolyOp::Eval(x) => PolyValue::Scalar(a.field.elem(a.eval(a.field.reduce(x as i64)) as i64)),
    })
}

impl Poly {
    /// Builds from already-reduced residues, lowest degree first.
    pub fn new(field: Fp, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < field.p()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64(field: Fp, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    pub fn zero(field: Fp) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Fp) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: Fp, c: u32) -> Self {
        Self::new(field, vec![c])
    }

    /// The indeterminate `t`.
    pub fn t(field: Fp) -> Self {
        Poly { field, coeffs: vec![0, 1] }
    }

    /// `t - c`.
    pub fn linear(field: Fp, c: u32) -> Self {
        Poly { field, coeffs: vec![field.neg(c), 1] }
    }

    pub fn monomial(field: Fp, c: u32, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero lead");
        self.scale(inv)
    }

    fn check(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "mixed-modulus polynomial arithmetic");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let p = f.p() as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Poly::new(f, acc.into_iter().map(|c| c as u32).collect())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor);
        let f = self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = f.inv(divisor.lead()).expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(rem[k + dd], inv_lead);
            quot[k] = c;
            if c != 0 {
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = f.sub(rem[k + j], f.mul(c, d));
                }
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    /// Remainder modulo a nonzero polynomial. Panics on a zero modulus.
    pub fn rem(&self, modulus: &Poly) -> Poly {
        self.div_rem(modulus).expect("nonzero modulus").1
    }

    /// Exact quotient; panics if `divisor` is zero.
    pub fn quot(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).expect("nonzero divisor").0
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Bezout coefficients: returns `(g, s, u)` with `s*self + u*other = g`, g monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        self.check(other);
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut u0, mut u1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let u = u0.sub(&q.mul(&u1));
            u0 = std::mem::replace(&mut u1, u);
        }
        if r0.is_zero() {
            return (r0, s0, u0);
        }
        let inv = f.inv(r0.lead()).expect("nonzero");
        (r0.scale(inv), s0.scale(inv), u0.scale(inv))
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        self.mul(other).quot(&self.gcd(other)).monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.reduce(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus);
        let mut acc = Poly::one(self.field).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            e >>= 1;
        }
        acc
    }

    /// The monic reciprocal `g(0)^{-1} t^{deg g} g(1/t)`, whose roots are the
    /// inverses of the roots of `g`.
    pub fn reciprocal(&self) -> Result<Poly> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let c0 = self.coeff(0);
        let inv = self.field.inv(c0).ok_or(Error::ZeroConstantTerm)?;
        let rev: Vec<u32> = self.coeffs.iter().rev().copied().collect();
        Ok(Poly::new(self.field, rev).scale(inv))
    }

    pub fn is_self_reciprocal(&self) -> bool {
        self.reciprocal().map(|r| &r == self).unwrap_or(false)
    }

    /// `gcd(f, f') = 1`. The zero polynomial is not separable.
    pub fn is_separable(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_one()
    }

    /// No monic factor of degree in `[1, deg/2]`. Constants are not irreducible.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let g = self.monic();
        let t = Poly::t(self.field);
        let p = self.field.p() as u64;
        let mut h = t.clone();
        for _ in 1..=n / 2 {
            h = h.pow_mod(p, &g);
            if !g.gcd(&h.sub(&t)).is_one() {
                return false;
            }
        }
        true
    }

    /// Replaces `t` by `t^(1/p)`; valid when only exponents divisible by p occur.
    fn pth_root(&self) -> Poly {
        let p = self.field.p() as usize;
        Poly::new(self.field, self.coeffs.iter().step_by(p).copied().collect())
    }

    /// Monic irreducible factorization with multiplicities, sorted by the
    /// polynomial order. Uses square-free, distinct-degree and equal-degree
    /// (Cantor–Zassenhaus, fixed seed) splitting.
    pub fn factorize(&self) -> Factorization {
        assert!(!self.is_zero(), "factorize(0)");
        let mut factors = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for (sqf, mult) in square_free(&self.monic()) {
            for (part, d) in distinct_degree(&sqf) {
                for g in equal_degree(&part, d, &mut rng) {
                    factors.push((g, mult));
                }
            }
        }
        factors.sort();
        Factorization { lead: self.lead(), factors }
    }

    /// Factorization by trial division against the irreducibles of degree up to
    /// `deg/2`. Slow for large degrees but independent of [`Poly::factorize`].
    pub fn factorize_by_trial_division(&self) -> Factorization {
        assert!(!self.is_zero(), "factorize(0)");
        let mut rest = self.monic();
        let mut factors = Vec::new();
        let mut d = 1;
        while rest.deg() >= 2 * d {
            for g in enumerate_irreducibles(self.field, d) {
                let mut mult = 0;
                while g.divides(&rest) {
                    rest = rest.quot(&g);
                    mult += 1;
                }
                if mult > 0 {
                    factors.push((g, mult));
                }
                if rest.deg() < 2 * d {
                    break;
                }
            }
            d += 1;
        }
        if rest.deg() >= 1 {
            // leftover is irreducible, possibly a repeat of an earlier factor
            match factors.iter_mut().find(|(g, _)| *g == rest) {
                Some((_, m)) => *m += 1,
                None => factors.push((rest, 1)),
            }
        }
        factors.sort();
        Factorization { lead: self.lead(), factors }
    }

    /// Coefficients as signed integers in `[0, p)`, lowest first.
    pub fn to_i64s(&self) -> Vec<i64> {
        self.coeffs.iter().map(|&c| c as i64).collect()
    }
}

fn square_free(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let fd = f.derivative();
    if fd.is_zero() {
        let p = f.field.p() as usize;
        for (g, e) in square_free(&f.pth_root()) {
            out.push((g, e * p));
        }
        return out;
    }
    let mut c = f.gcd(&fd);
    let mut w = f.quot(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.quot(&y);
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.quot(&w);
        i += 1;
    }
    if !c.is_one() {
        let p = f.field.p() as usize;
        for (g, e) in square_free(&c.monic().pth_root()) {
            out.push((g, e * p));
        }
    }
    out
}

fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let t = Poly::t(f.field);
    let p = f.field.p() as u64;
    let mut rest = f.clone();
    let mut h = t.clone();
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.pow_mod(p, &rest);
        let g = rest.gcd(&h.sub(&t));
        if !g.is_one() {
            rest = rest.quot(&g);
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.deg() >= 1 {
        let d = rest.deg();
        out.push((rest.monic(), d));
    }
    out
}

fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.deg();
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field;
    let p = field.p() as u64;
    loop {
        let a = Poly::new(field, (0..n).map(|_| rng.gen_range(0..field.p())).collect());
        if a.deg() == 0 {
            continue;
        }
        // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
        let mut frob = a.clone();
        let mut prod = a.clone();
        for _ in 1..d {
            frob = frob.pow_mod(p, f);
            prod = prod.mul_mod(&frob, f);
        }
        let b = prod.pow_mod((p - 1) / 2, f).sub(&Poly::one(field));
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.quot(&g), d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors with multiplicities, and the leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub lead: u32,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self, field: Fp) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.lead), |acc, (g, m)| acc.mul(&g.pow(*m as u64)))
    }

    pub fn multiplicity(&self, g: &Poly) -> usize {
        self.factors.iter().find(|(h, _)| h == g).map(|(_, m)| *m).unwrap_or(0)
    }
}

/// Iterates the monic polynomials of degree `d` in the polynomial order.
pub struct MonicPolys {
    field: Fp,
    digits: Option<Vec<u32>>,
}

impl MonicPolys {
    pub fn new(field: Fp, d: usize) -> Self {
        MonicPolys { field, digits: Some(vec![0; d]) }
    }
}

impl Iterator for MonicPolys {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        let digits = self.digits.as_mut()?;
        let mut coeffs = digits.clone();
        coeffs.push(1);
        let out = Poly::new(self.field, coeffs);
        // c0 is the most significant digit of the lexicographic order
        let mut i = digits.len();
        loop {
            if i == 0 {
                self.digits = None;
                break;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < self.field.p() {
                break;
            }
            digits[i] = 0;
        }
        Some(out)
    }
}

/// Every monic irreducible of degree `d`, each once, in the polynomial order.
pub fn enumerate_irreducibles(field: Fp, d: usize) -> impl Iterator<Item = Poly> {
    MonicPolys::new(field, d).filter(|g| g.is_irreducible())
}

/// Self-reciprocal monic irreducibles of degree `d >= 2`, in the polynomial order.
///
/// Such polynomials are palindromic with constant term 1 and even degree, so
/// only the `p^(d/2)` palindromes are tested.
pub fn enumerate_self_reciprocal_irreducibles(field: Fp, d: usize) -> impl Iterator<Item = Poly> {
    let half = if d >= 2 && d.is_multiple_of(2) { d / 2 } else { 0 };
    let active = half > 0;
    MonicPolys::new(field, half)
        .take_while(move |_| active)
        .map(move |h| {
            // digits of h are (c1, ..., ck); mirror them into 1 + c1 t + ... + t^d
            let mut coeffs = vec![0u32; d + 1];
            coeffs[0] = 1;
            coeffs[d] = 1;
            for k in 1..=half {
                let c = h.coeff(k - 1);
                coeffs[k] = c;
                coeffs[d - k] = c;
            }
            Poly::new(field, coeffs)
        })
        .filter(|g| g.is_irreducible())
}

fn mobius(mut n: u64) -> i128 {
    let mut result = 1i128;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn checked_pow(p: u32, e: u64) -> Result<i128> {
    let mut acc: i128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p as i128).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// Number of monic irreducibles of degree `d` over GF(p): `(1/d) Σ_{e|d} μ(e) p^{d/e}`.
pub fn count_irreducibles(p: u32, d: usize) -> Result<u128> {
    let d = d as u64;
    let mut sum: i128 = 0;
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        sum += mobius(e) * checked_pow(p, d / e)?;
    }
    Ok((sum / d as i128) as u128)
}

/// Number of self-reciprocal monic irreducibles of degree `d` over GF(p), p odd.
///
/// Degree 1 contributes `t - 1` and `t + 1`. For `d = 2n` the roots are the
/// elements of exact degree `2n` in the norm-one group of order `p^n + 1`,
/// which gives `(1/2n) Σ_{e|n, e odd} μ(e) (p^{n/e} - 1)`.
pub fn count_self_reciprocal_irreducibles(p: u32, d: usize) -> Result<u128> {
    if d == 1 {
        return Ok(2);
    }
    if d == 0 || d % 2 == 1 {
        return Ok(0);
    }
    let n = (d / 2) as u64;
    let mut sum: i128 = 0;
    for e in (1..=n).filter(|e| n.is_multiple_of(*e) && e % 2 == 1) {
        sum += mobius(e) * (checked_pow(p, n / e)? - 1);
    }
    Ok((sum / d as i128) as u128)
}

fn superscript(f: &mut fmt::Formatter<'_>, k: usize) -> fmt::Result {
    match k {
        0 => Ok(()),
        1 => write!(f, "t"),
        _ => write!(f, "t^{k}"),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c != 1 || k == 0 {
                write!(f, "{c}")?;
            }
            superscript(f, k)?;
        }
        Ok(())
    }
}
