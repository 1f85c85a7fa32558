//! Semisimple class descriptors and explicit representatives.
//!
//! A semisimple X in Sp(2m, p) splits by elementary divisors into three kinds
//! of blocks: a non-self-reciprocal irreducible g paired with its reciprocal
//! g⁻ at equal multiplicity, a self-reciprocal irreducible g of degree >= 2,
//! and the eigenvalues ±1. Forms invariant under X are block diagonal across
//! unrelated blocks, so every representative is assembled blockwise and then
//! moved to the standard form J by a Darboux change of basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::Fp;
use crate::fmatrix::{companion, Mat, MAX_DIM};
use crate::forms::{darboux, first_invertible, is_symplectic, standard_j};
use crate::fpoly::Poly;

pub use crate::hermitian::hermitian_canonical;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("sign must be 1 or -1, got {v}"))),
        }
    }

    /// The eigenvalue ±1 as a residue.
    pub fn value(self, field: Fp) -> u32 {
        field.reduce(self.as_i64())
    }
}

/// One tagged elementary-divisor block. The derived order (units, then
/// self-reciprocal entries, then pairs) is the canonical entry order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    Unit { sign: Sign, n: usize },
    SelfRecip { g: Poly, n: usize },
    /// `g` is the smaller of `{g, g⁻}`; stands for both at multiplicity `n`.
    Pair { g: Poly, n: usize },
}

impl Entry {
    pub fn multiplicity(&self) -> usize {
        match self {
            Entry::Unit { n, .. } | Entry::SelfRecip { n, .. } | Entry::Pair { n, .. } => *n,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Entry::Unit { n, .. } => *n,
            Entry::SelfRecip { g, n } => n * g.deg(),
            Entry::Pair { g, n } => 2 * n * g.deg(),
        }
    }
}

/// The semisimple class invariant: entries in canonical order, distinct keys.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassDescriptor {
    field: Fp,
    entries: Vec<Entry>,
}

impl ClassDescriptor {
    /// Validates and canonicalizes. Pair entries may name either g or g⁻.
    pub fn new(field: Fp, entries: Vec<Entry>) -> Result<Self> {
        let mut out = Vec::with_capacity(entries.len());
        for e in entries {
            if e.multiplicity() == 0 {
                return Err(Error::PreconditionViolated("zero multiplicity entry".into()));
            }
            let e = match e {
                Entry::Unit { .. } => e,
                Entry::SelfRecip { g, n } => {
                    check_factor(field, &g)?;
                    if g.deg() < 2 || !g.is_self_reciprocal() {
                        return Err(Error::NotSelfReciprocal);
                    }
                    Entry::SelfRecip { g, n }
                }
                Entry::Pair { g, n } => {
                    check_factor(field, &g)?;
                    let r = g.reciprocal()?;
                    if r == g {
                        return Err(Error::SelfReciprocalInput);
                    }
                    Entry::Pair { g: g.min(r), n }
                }
            };
            out.push(e);
        }
        out.sort();
        if out.windows(2).any(|w| same_key(&w[0], &w[1])) {
            return Err(Error::PreconditionViolated("repeated descriptor key".into()));
        }
        Ok(ClassDescriptor { field, entries: out })
    }

    pub(crate) fn from_sorted_unchecked(field: Fp, entries: Vec<Entry>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] < w[1]));
        ClassDescriptor { field, entries }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn total_dim(&self) -> usize {
        self.entries.iter().map(Entry::dim).sum()
    }
}

fn same_key(a: &Entry, b: &Entry) -> bool {
    match (a, b) {
        (Entry::Unit { sign: s, .. }, Entry::Unit { sign: t, .. }) => s == t,
        (Entry::SelfRecip { g, .. }, Entry::SelfRecip { g: h, .. }) => g == h,
        (Entry::Pair { g, .. }, Entry::Pair { g: h, .. }) => g == h,
        _ => false,
    }
}

fn check_factor(field: Fp, g: &Poly) -> Result<()> {
    if g.field() != field {
        return Err(Error::ModulusMismatch { left: field.to_string(), right: g.field().to_string() });
    }
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    if !g.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    if g.coeff(0) == 0 {
        return Err(Error::ZeroConstantTerm);
    }
    Ok(())
}

impl fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| match e {
                Entry::Unit { sign, n } => format!("unit({:+}, {n})", sign.as_i64()),
                Entry::SelfRecip { g, n } => format!("self({g}, {n})"),
                Entry::Pair { g, n } => format!("pair({g}, {n})"),
            })
            .collect();
        write!(f, "{{{}}} over {}", parts.join(", "), self.field)
    }
}

/// A matrix together with a nondegenerate alternating form it preserves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticPair {
    pub x: Mat,
    pub a: Mat,
    pub descriptor: ClassDescriptor,
}

impl SymplecticPair {
    /// Checks `is_symplectic(x, a)` and computes the descriptor of `x`.
    pub fn new(x: Mat, a: Mat) -> Result<Self> {
        if !is_symplectic(&x, &a)? {
            return Err(Error::PreconditionViolated("x does not preserve the form a".into()));
        }
        let descriptor = descriptor_of(&x)?;
        Ok(SymplecticPair { x, a, descriptor })
    }

    fn built(x: Mat, a: Mat, descriptor: ClassDescriptor) -> Self {
        assert!(is_symplectic(&x, &a).unwrap_or(false), "constructed pair is not symplectic");
        SymplecticPair { x, a, descriptor }
    }
}

/// Reads the class descriptor off the characteristic polynomial.
pub fn descriptor_of(x: &Mat) -> Result<ClassDescriptor> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch("descriptor_of needs a square matrix".into()));
    }
    if x.rows() > MAX_DIM {
        return Err(Error::DimensionCap { got: x.rows(), cap: MAX_DIM });
    }
    if x.rows() % 2 == 1 {
        return Err(Error::OddDimension(x.rows()));
    }
    let field = x.field();
    let cp = x.charpoly();
    if cp.coeff(0) == 0 {
        return Err(Error::SingularInput);
    }
    if !x.minpoly().is_separable() {
        return Err(Error::NotSemisimple);
    }
    let fac = cp.factorize();
    let one = Poly::linear(field, 1);
    let minus_one = Poly::linear(field, field.neg(1));
    let mut entries = Vec::new();
    for (g, mult) in &fac.factors {
        let mult = *mult;
        if *g == one {
            entries.push(Entry::Unit { sign: Sign::Plus, n: mult });
        } else if *g == minus_one {
            entries.push(Entry::Unit { sign: Sign::Minus, n: mult });
        } else {
            let r = g.reciprocal()?;
            if r == *g {
                entries.push(Entry::SelfRecip { g: g.clone(), n: mult });
                continue;
            }
            let mult_r = fac.multiplicity(&r);
            if mult_r != mult {
                return Err(Error::UnpairedFactor { g: g.to_string(), mult, mult_reciprocal: mult_r });
            }
            if *g < r {
                entries.push(Entry::Pair { g: g.clone(), n: mult });
            }
        }
    }
    entries.sort();
    Ok(ClassDescriptor::from_sorted_unchecked(field, entries))
}

/// Over a finite field every self-reciprocal and paired block carries a
/// nondegenerate invariant form; the ±1 blocks need even multiplicity.
pub fn feasible(d: &ClassDescriptor) -> bool {
    d.total_dim().is_multiple_of(2)
        && d.entries.iter().all(|e| match e {
            Entry::Unit { n, .. } => n % 2 == 0,
            _ => true,
        })
}

fn repeat_block(field: Fp, block: &Mat, n: usize) -> Mat {
    Mat::block_diag(field, &vec![block.clone(); n])
}

/// Paired block: `X = diag(X₁, (X₁⁻¹)')` with `X₁` n copies of companion(g),
/// preserving `J`.
pub fn case1_rep(g: &Poly, n: usize) -> Result<SymplecticPair> {
    let field = g.field();
    check_factor(field, g)?;
    let r = g.reciprocal()?;
    if r == *g {
        return Err(Error::SelfReciprocalInput);
    }
    if n == 0 {
        return Err(Error::PreconditionViolated("zero multiplicity".into()));
    }
    let x1 = repeat_block(field, &companion(g)?, n);
    let x2 = x1.inverse()?.transpose();
    let x = Mat::block_diag(field, &[x1, x2]);
    let a = standard_j(field, x.rows())?;
    let descriptor = ClassDescriptor::from_sorted_unchecked(field, vec![Entry::Pair { g: g.clone().min(r), n }]);
    Ok(SymplecticPair::built(x, a, descriptor))
}

fn self_reciprocal_companion(r: &Mat) -> Result<Poly> {
    if !r.is_square() {
        return Err(Error::PreconditionViolated("non-square block".into()));
    }
    let g = r.charpoly();
    if g.deg() < 2 || !g.is_irreducible() || !g.is_self_reciprocal() {
        return Err(Error::PreconditionViolated(format!(
            "characteristic polynomial {g} is not a self-reciprocal irreducible of degree >= 2"
        )));
    }
    Ok(g)
}

/// A nonsingular T with `r T r' = T`.
///
/// Takes the first nullspace basis element of the linearized system that is
/// invertible, then sweeps combinations.
pub fn find_t(r: &Mat) -> Result<Mat> {
    self_reciprocal_companion(r)?;
    let f = r.field();
    let d = r.rows();
    // unknown (i, j) ↦ column of E_ij - r E_ij r'
    let mut sys = Mat::zeros(f, d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let col = i * d + j;
            for a in 0..d {
                for b in 0..d {
                    let e = if (a, b) == (i, j) { 1 } else { 0 };
                    sys.set(a * d + b, col, f.sub(e, f.mul(r.get(a, i), r.get(b, j))));
                }
            }
        }
    }
    let basis: Vec<Mat> = sys
        .nullspace()
        .into_iter()
        .map(|v| Mat::from_vec(f, d, d, v))
        .collect();
    let t = first_invertible(f, d, &basis, 0)
        .ok_or_else(|| Error::NoSolution("no invertible T with r T r' = T".into()))?;
    debug_assert_eq!(r.mul(&t).mul(&r.transpose()), t);
    Ok(t)
}

/// A skew-symmetric nonzero multiple `h(r) t`, still satisfying `r T r' = T`.
///
/// Returns `t` unchanged when already skew; otherwise `t - t'` when `t` is not
/// symmetric, else `r t - (r t)'`.
pub fn skew_t(r: &Mat, t: &Mat) -> Result<Mat> {
    self_reciprocal_companion(r)?;
    if !t.is_square() || t.rows() != r.rows() || !t.is_invertible() {
        return Err(Error::PreconditionViolated("t must be invertible of the same size as r".into()));
    }
    if r.mul(t).mul(&r.transpose()) != *t {
        return Err(Error::PreconditionViolated("r t r' != t".into()));
    }
    let out = if t.is_skew() {
        t.clone()
    } else if !t.is_symmetric() {
        t.sub(&t.transpose())
    } else {
        let rt = r.mul(t);
        rt.sub(&rt.transpose())
    };
    assert!(out.is_skew() && !out.is_zero(), "skew multiple failed verification");
    assert_eq!(r.mul(&out).mul(&r.transpose()), out);
    Ok(out)
}

/// The skew `T̃` used for companion(g), exposed for identity checks.
pub fn skew_form_for(g: &Poly) -> Result<(Mat, Mat)> {
    let r = companion(g)?;
    let t = skew_t(&r, &find_t(&r)?)?;
    Ok((r, t))
}

/// Self-reciprocal block: `X = diag(R, ..., R)`, `A = diag(T̃, ..., T̃)`, the
/// Hermitian matrix being the identity.
pub fn case2_rep(g: &Poly, n: usize) -> Result<SymplecticPair> {
    let field = g.field();
    check_factor(field, g)?;
    if g.deg() == 1 {
        return Err(Error::DegreeOne);
    }
    if !g.is_self_reciprocal() {
        return Err(Error::NotSelfReciprocal);
    }
    if n == 0 {
        return Err(Error::PreconditionViolated("zero multiplicity".into()));
    }
    let (r, t) = skew_form_for(g)?;
    let x = repeat_block(field, &r, n);
    let a = repeat_block(field, &t, n);
    let descriptor = ClassDescriptor::from_sorted_unchecked(field, vec![Entry::SelfRecip { g: g.clone(), n }]);
    Ok(SymplecticPair::built(x, a, descriptor))
}

/// `(±I_n, J_n)` for even n.
pub fn pm_rep(field: Fp, sign: Sign, n: usize) -> Result<SymplecticPair> {
    if n % 2 == 1 {
        return Err(Error::OddMultiplicity(n));
    }
    if n == 0 {
        return Err(Error::PreconditionViolated("zero multiplicity".into()));
    }
    let x = Mat::scalar(field, n, sign.value(field));
    let a = standard_j(field, n)?;
    let descriptor = ClassDescriptor::from_sorted_unchecked(field, vec![Entry::Unit { sign, n }]);
    Ok(SymplecticPair::built(x, a, descriptor))
}

/// Per-entry representatives in descriptor order, before normalization.
pub fn block_reps(d: &ClassDescriptor) -> Result<Vec<SymplecticPair>> {
    if !feasible(d) {
        return Err(Error::InfeasibleDescriptor(d.to_string()));
    }
    d.entries
        .iter()
        .map(|e| match e {
            Entry::Unit { sign, n } => pm_rep(d.field, *sign, *n),
            Entry::SelfRecip { g, n } => case2_rep(g, *n),
            Entry::Pair { g, n } => case1_rep(g, *n),
        })
        .collect()
}

/// Block-diagonal representative normalized so that the form is the standard J.
pub fn assemble_rep(d: &ClassDescriptor) -> Result<SymplecticPair> {
    let blocks = block_reps(d)?;
    let field = d.field;
    if blocks.is_empty() {
        return Err(Error::InfeasibleDescriptor("empty descriptor".into()));
    }
    let x = Mat::block_diag(field, &blocks.iter().map(|b| b.x.clone()).collect::<Vec<_>>());
    let a = Mat::block_diag(field, &blocks.iter().map(|b| b.a.clone()).collect::<Vec<_>>());
    // S a S' = J, so S x S^{-1} preserves J
    let s = darboux(&a)?;
    let x = s.mul(&x).mul(&s.inverse()?);
    let j = standard_j(field, x.rows())?;
    Ok(SymplecticPair::built(x, j, d.clone()))
}

/// Sp-conjugacy of two semisimple pairs over a finite field: equal descriptors.
pub fn sp_conjugate_test(p1: &SymplecticPair, p2: &SymplecticPair) -> Result<bool> {
    if p1.x.rows() != p2.x.rows() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", p1.x.rows(), p2.x.rows())));
    }
    if p1.x.field() != p2.x.field() {
        return Err(Error::ModulusMismatch { left: p1.x.field().to_string(), right: p2.x.field().to_string() });
    }
    for p in [p1, p2] {
        if !is_symplectic(&p.x, &p.a)? {
            return Err(Error::PreconditionViolated("pair is not symplectic".into()));
        }
    }
    Ok(descriptor_of(&p1.x)? == descriptor_of(&p2.x)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Fp {
        Fp::new(p).unwrap()
    }

    fn poly(p: u64, c: &[i64]) -> Poly {
        Poly::from_i64(f(p), c)
    }

    #[test]
    fn descriptor_examples() {
        let j = standard_j(f(3), 2).unwrap();
        let d = descriptor_of(&j).unwrap();
        assert_eq!(d.entries(), &[Entry::SelfRecip { g: poly(3, &[1, 0, 1]), n: 1 }]);
        let d = descriptor_of(&Mat::diag(f(5), &[2, 3])).unwrap();
        // t-3 = [2,1] sorts before t-2 = [3,1]
        assert_eq!(d.entries(), &[Entry::Pair { g: poly(5, &[-3, 1]), n: 1 }]);
        let d = descriptor_of(&Mat::scalar(f(3), 4, 2)).unwrap();
        assert_eq!(d.entries(), &[Entry::Unit { sign: Sign::Minus, n: 4 }]);
        assert_eq!(d.total_dim(), 4);
    }

    #[test]
    fn descriptor_errors() {
        assert!(matches!(descriptor_of(&Mat::diag(f(5), &[2, 2])), Err(Error::UnpairedFactor { .. })));
        let jordan = Mat::from_rows(f(3), &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(descriptor_of(&jordan), Err(Error::NotSemisimple));
        assert_eq!(descriptor_of(&Mat::diag(f(3), &[1, 0])), Err(Error::SingularInput));
        let d = descriptor_of(&Mat::diag(f(3), &[1, 1, 1, 2])).unwrap();
        assert!(!feasible(&d));
    }

    #[test]
    fn feasibility_examples() {
        let d = ClassDescriptor::new(f(3), vec![Entry::Unit { sign: Sign::Plus, n: 3 }]).unwrap();
        assert!(!feasible(&d));
        let d = ClassDescriptor::new(f(3), vec![Entry::SelfRecip { g: poly(3, &[1, 0, 1]), n: 1 }]).unwrap();
        assert!(feasible(&d));
        let d = ClassDescriptor::new(f(5), vec![Entry::Pair { g: poly(5, &[-2, 1]), n: 1 }]).unwrap();
        assert!(feasible(&d));
        // canonical key is the smaller of g and g⁻
        assert_eq!(d.entries(), &[Entry::Pair { g: poly(5, &[-3, 1]), n: 1 }]);
    }

    #[test]
    fn descriptor_validation() {
        let bad = ClassDescriptor::new(f(5), vec![Entry::SelfRecip { g: poly(5, &[2, 0, 1]), n: 1 }]);
        assert_eq!(bad, Err(Error::NotSelfReciprocal));
        let bad = ClassDescriptor::new(f(3), vec![Entry::Pair { g: poly(3, &[1, 0, 1]), n: 1 }]);
        assert_eq!(bad, Err(Error::SelfReciprocalInput));
        let bad = ClassDescriptor::new(
            f(5),
            vec![Entry::Pair { g: poly(5, &[-2, 1]), n: 1 }, Entry::Pair { g: poly(5, &[-3, 1]), n: 2 }],
        );
        assert!(matches!(bad, Err(Error::PreconditionViolated(_))));
        let bad = ClassDescriptor::new(f(5), vec![Entry::Pair { g: poly(5, &[1, 0, 1]), n: 1 }]);
        assert_eq!(bad, Err(Error::NotIrreducible));
    }

    #[test]
    fn case1_examples() {
        let p = case1_rep(&poly(5, &[-2, 1]), 1).unwrap();
        assert_eq!(p.x, Mat::diag(f(5), &[2, 3]));
        assert_eq!(p.a, standard_j(f(5), 2).unwrap());
        let p = case1_rep(&poly(3, &[2, 1, 1]), 1).unwrap();
        assert_eq!(p.x.rows(), 4);
        assert_eq!(descriptor_of(&p.x).unwrap(), p.descriptor);
        let p = case1_rep(&poly(5, &[-2, 1]), 2).unwrap();
        assert_eq!(p.x, Mat::diag(f(5), &[2, 2, 3, 3]));
        assert_eq!(case1_rep(&poly(3, &[1, 0, 1]), 1), Err(Error::SelfReciprocalInput));
    }

    #[test]
    fn find_and_skew_t_examples() {
        let r = companion(&poly(3, &[1, 0, 1])).unwrap();
        let t = find_t(&r).unwrap();
        assert!(t.is_invertible());
        assert_eq!(r.mul(&t).mul(&r.transpose()), t);
        let j = standard_j(f(3), 2).unwrap();
        assert_eq!(r.mul(&j).mul(&r.transpose()), j);
        assert_eq!(skew_t(&r, &j).unwrap(), j);

        // GF(5): t^2 + t + 1 is self-reciprocal; t^2 + 2 is not
        let r5 = companion(&poly(5, &[1, 1, 1])).unwrap();
        let t5 = find_t(&r5).unwrap();
        assert_eq!(r5.mul(&t5).mul(&r5.transpose()), t5);
        let bad = companion(&poly(5, &[2, 0, 1])).unwrap();
        assert!(matches!(find_t(&bad), Err(Error::PreconditionViolated(_))));

        // symmetric and generic inputs follow the two branches
        let basis: Vec<Mat> = [t5.clone(), r5.mul(&t5)].into_iter().collect();
        for cand in basis {
            let out = skew_t(&r5, &cand).unwrap();
            if cand.is_symmetric() {
                let rt = r5.mul(&cand);
                assert_eq!(out, rt.sub(&rt.transpose()));
            } else if !cand.is_skew() {
                assert_eq!(out, cand.sub(&cand.transpose()));
            }
        }
    }

    #[test]
    fn case2_and_pm_examples() {
        let p = case2_rep(&poly(3, &[1, 0, 1]), 1).unwrap();
        assert_eq!(p.x, standard_j(f(3), 2).unwrap());
        let p = case2_rep(&poly(3, &[1, 0, 1]), 2).unwrap();
        assert_eq!(p.x.rows(), 4);
        let p = case2_rep(&poly(5, &[1, 1, 1]), 1).unwrap();
        assert!(is_symplectic(&p.x, &p.a).unwrap());
        assert_eq!(case2_rep(&poly(5, &[-1, 1]), 1), Err(Error::DegreeOne));
        assert_eq!(case2_rep(&poly(5, &[2, 0, 1]), 1), Err(Error::NotSelfReciprocal));

        let p = pm_rep(f(3), Sign::Plus, 2).unwrap();
        assert_eq!((p.x, p.a), (Mat::identity(f(3), 2), standard_j(f(3), 2).unwrap()));
        let p = pm_rep(f(5), Sign::Minus, 4).unwrap();
        assert_eq!(p.x, Mat::scalar(f(5), 4, 4));
        assert_eq!(pm_rep(f(3), Sign::Plus, 3), Err(Error::OddMultiplicity(3)));
    }

    #[test]
    fn assemble_examples() {
        let d = ClassDescriptor::new(f(3), vec![Entry::Unit { sign: Sign::Plus, n: 2 }]).unwrap();
        let p = assemble_rep(&d).unwrap();
        assert_eq!((p.x, p.a), (Mat::identity(f(3), 2), standard_j(f(3), 2).unwrap()));

        let d = ClassDescriptor::new(
            f(5),
            vec![Entry::Pair { g: poly(5, &[-2, 1]), n: 1 }, Entry::SelfRecip { g: poly(5, &[1, 1, 1]), n: 1 }],
        )
        .unwrap();
        let p = assemble_rep(&d).unwrap();
        assert_eq!(p.x.rows(), 4);
        assert_eq!(p.a, standard_j(f(5), 4).unwrap());
        assert_eq!(descriptor_of(&p.x).unwrap(), d);

        let d = ClassDescriptor::new(f(3), vec![Entry::SelfRecip { g: poly(3, &[1, 0, 1]), n: 2 }]).unwrap();
        let p = assemble_rep(&d).unwrap();
        assert_eq!(descriptor_of(&p.x).unwrap(), d);

        let bad = ClassDescriptor::new(f(3), vec![Entry::Unit { sign: Sign::Plus, n: 3 }]).unwrap();
        assert!(matches!(assemble_rep(&bad), Err(Error::InfeasibleDescriptor(_))));
    }

    #[test]
    fn conjugacy_test_examples() {
        let d = ClassDescriptor::new(f(3), vec![Entry::SelfRecip { g: poly(3, &[1, 0, 1]), n: 1 }]).unwrap();
        let p = assemble_rep(&d).unwrap();
        assert!(sp_conjugate_test(&p, &p).unwrap());
        let up = assemble_rep(&ClassDescriptor::new(f(3), vec![Entry::Unit { sign: Sign::Plus, n: 2 }]).unwrap())
            .unwrap();
        let um = assemble_rep(&ClassDescriptor::new(f(3), vec![Entry::Unit { sign: Sign::Minus, n: 2 }]).unwrap())
            .unwrap();
        assert!(!sp_conjugate_test(&up, &um).unwrap());
        // S in Sp(2,3): [[1,1],[0,1]]
        let j = standard_j(f(3), 2).unwrap();
        let s = Mat::from_rows(f(3), &[vec![1, 1], vec![0, 1]]).unwrap();
        let x2 = s.inverse().unwrap().mul(&j).mul(&s);
        let p2 = SymplecticPair::new(x2, j.clone()).unwrap();
        let p1 = SymplecticPair::new(j.clone(), j).unwrap();
        assert!(sp_conjugate_test(&p1, &p2).unwrap());
        let big = pm_rep(f(3), Sign::Plus, 4).unwrap();
        assert!(matches!(sp_conjugate_test(&p1, &big), Err(Error::DimensionMismatch(_))));
    }
}
