//! Alternating bilinear forms: invariant-form spaces, nondegeneracy search,
//! symplectic membership and Darboux normalization.
//!
//! The standard form is `J = (0 I_m; -I_m 0)` throughout the crate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffield::Fp;
use crate::fmatrix::Mat;

/// Span size up to which [`pick_nonsingular`] sweeps every combination.
pub const SWEEP_LIMIT: u128 = 1_000_000;
const RANDOM_PICKS: usize = 10_000;

/// `J_n = (0 I; -I 0)` for even `n`.
pub fn standard_j(field: Fp, n: usize) -> Result<Mat> {
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    let m = n / 2;
    let mut j = Mat::zeros(field, n, n);
    for i in 0..m {
        j.set(i, m + i, 1);
        j.set(m + i, i, field.neg(1));
    }
    Ok(j)
}

/// Basis of `{A : A' = -A, X A X' = A}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpace {
    pub ambient_dim: usize,
    pub field: Fp,
    pub basis: Vec<Mat>,
}

impl FormSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `Σ c_i B_i`.
    pub fn combination(&self, coeffs: &[u32]) -> Mat {
        let n = self.ambient_dim;
        self.basis
            .iter()
            .zip(coeffs)
            .fold(Mat::zeros(self.field, n, n), |acc, (b, &c)| acc.add(&b.scale(c)))
    }
}

/// Solves the linear system for alternating forms invariant under `x`,
/// parametrized by the strictly upper triangular entries of A.
pub fn invariant_form_space(x: &Mat) -> Result<FormSpace> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch("invariant forms need a square matrix".into()));
    }
    let n = x.rows();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    let f = x.field();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let np = pairs.len();
    // column k: upper entries of E_k - X E_k X' with E_k = E_ij - E_ji
    let mut sys = Mat::zeros(f, np, np);
    for (k, &(i, j)) in pairs.iter().enumerate() {
        for (row, &(r, s)) in pairs.iter().enumerate() {
            let xext = f.sub(f.mul(x.get(r, i), x.get(s, j)), f.mul(x.get(r, j), x.get(s, i)));
            let e = if row == k { 1 } else { 0 };
            sys.set(row, k, f.sub(e, xext));
        }
    }
    let basis = sys
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut a = Mat::zeros(f, n, n);
            for (&(i, j), &c) in pairs.iter().zip(&v) {
                a.set(i, j, c);
                a.set(j, i, f.neg(c));
            }
            a
        })
        .collect();
    Ok(FormSpace { ambient_dim: n, field: f, basis })
}

/// A nonsingular member of the span, deterministic for a given seed.
///
/// Tries the basis elements in order, then sweeps all coefficient vectors
/// (first coordinate least significant) when `q^dim <= 10^6`; larger spans
/// are sampled first and swept only if sampling fails.
pub fn pick_nonsingular_seeded(space: &FormSpace, seed: u64) -> Option<Mat> {
    first_invertible(space.field, space.ambient_dim, &space.basis, seed)
}

/// Shared sweep behind [`pick_nonsingular_seeded`]: any list of square
/// matrices spanning a subspace of `n x n` matrices.
pub(crate) fn first_invertible(field: Fp, n: usize, basis: &[Mat], seed: u64) -> Option<Mat> {
    if basis.is_empty() {
        return None;
    }
    if let Some(b) = basis.iter().find(|b| b.is_invertible()) {
        return Some(b.clone());
    }
    let combination = |coeffs: &[u32]| {
        basis
            .iter()
            .zip(coeffs)
            .fold(Mat::zeros(field, n, n), |acc, (b, &c)| acc.add(&b.scale(c)))
    };
    let q = field.p();
    let k = basis.len();
    let size = (0..k).fold(1u128, |acc, _| acc.saturating_mul(q as u128));
    if size > SWEEP_LIMIT {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..RANDOM_PICKS {
            let c: Vec<u32> = (0..k).map(|_| rng.gen_range(0..q)).collect();
            let a = combination(&c);
            if a.is_invertible() {
                return Some(a);
            }
        }
    }
    let mut c = vec![0u32; k];
    loop {
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            c[i] += 1;
            if c[i] < q {
                break;
            }
            c[i] = 0;
            i += 1;
        }
        let a = combination(&c);
        if a.is_invertible() {
            return Some(a);
        }
    }
}

pub fn pick_nonsingular(space: &FormSpace) -> Option<Mat> {
    pick_nonsingular_seeded(space, 0)
}

/// `a' = -a`, `a` nonsingular and `x a x' = a`.
pub fn is_symplectic(x: &Mat, a: &Mat) -> Result<bool> {
    if !x.is_square() || !a.is_square() || x.rows() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "is_symplectic: {}x{} vs {}x{}",
            x.rows(),
            x.cols(),
            a.rows(),
            a.cols()
        )));
    }
    if x.field() != a.field() {
        return Err(Error::ModulusMismatch { left: x.field().to_string(), right: a.field().to_string() });
    }
    if a.rows() % 2 == 1 {
        return Err(Error::OddDimension(a.rows()));
    }
    Ok(a.is_skew() && a.is_invertible() && x.mul(a).mul(&x.transpose()) == *a)
}

fn form_value(f: Fp, a: &Mat, u: &[u32], v: &[u32]) -> u32 {
    let ua = a.vec_mul(u);
    ua.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Symplectic Gram–Schmidt: returns S with `S a S' = J`.
///
/// Rows of S are `e_1..e_m, f_1..f_m` with `f(e_i, f_j) = δ_ij`; each `e_i` is
/// the first remaining vector and `f_i` the first partner it pairs with.
pub fn darboux(a: &Mat) -> Result<Mat> {
    if !a.is_skew() {
        return Err(Error::NotSkew);
    }
    if !a.is_invertible() {
        return Err(Error::SingularForm);
    }
    let f = a.field();
    let n = a.rows();
    let mut pool: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut es = Vec::with_capacity(n / 2);
    let mut fs = Vec::with_capacity(n / 2);
    while !pool.is_empty() {
        let u = pool.remove(0);
        let idx = pool
            .iter()
            .position(|w| form_value(f, a, &u, w) != 0)
            .ok_or(Error::SingularForm)?;
        let mut v = pool.remove(idx);
        let inv = f.inv(form_value(f, a, &u, &v)).expect("nonzero");
        v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        for w in pool.iter_mut() {
            let wv = form_value(f, a, w, &v);
            let wu = form_value(f, a, w, &u);
            for k in 0..n {
                w[k] = f.add(f.sub(w[k], f.mul(wv, u[k])), f.mul(wu, v[k]));
            }
        }
        es.push(u);
        fs.push(v);
    }
    let s = Mat::from_vec(f, n, n, es.into_iter().chain(fs).flatten().collect());
    assert_eq!(s.mul(a).mul(&s.transpose()), standard_j(f, n)?, "Darboux basis failed verification");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmatrix::companion;
    use crate::fpoly::Poly;

    fn f(p: u64) -> Fp {
        Fp::new(p).unwrap()
    }

    fn m(p: u64, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(f(p), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn invariant_space_examples() {
        let s = invariant_form_space(&Mat::identity(f(3), 2)).unwrap();
        assert_eq!(s.basis, vec![m(3, &[&[0, 1], &[2, 0]])]);
        assert_eq!(invariant_form_space(&Mat::diag(f(5), &[2, 2])).unwrap().dim(), 0);
        let c = companion(&Poly::from_i64(f(3), &[1, 0, 1])).unwrap();
        assert_eq!(invariant_form_space(&c).unwrap().dim(), 1);
        assert_eq!(invariant_form_space(&Mat::identity(f(3), 3)), Err(Error::OddDimension(3)));
    }

    #[test]
    fn invariant_space_basis_satisfies_both_equations() {
        let x = Mat::diag(f(7), &[2, 4, 3, 5]);
        let s = invariant_form_space(&x).unwrap();
        assert!(s.dim() > 0);
        for b in &s.basis {
            assert!(b.is_skew());
            assert_eq!(x.mul(b).mul(&x.transpose()), *b);
        }
    }

    #[test]
    fn pick_nonsingular_examples() {
        let j = standard_j(f(3), 2).unwrap();
        let s = FormSpace { ambient_dim: 2, field: f(3), basis: vec![j.clone()] };
        assert_eq!(pick_nonsingular(&s), Some(j));
        let empty = FormSpace { ambient_dim: 2, field: f(3), basis: vec![] };
        assert_eq!(pick_nonsingular(&empty), None);
        // both generators singular, their sum is J_4
        let b1 = m(3, &[&[0, 0, 1, 0], &[0, 0, 0, 0], &[2, 0, 0, 0], &[0, 0, 0, 0]]);
        let b2 = m(3, &[&[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0], &[0, 2, 0, 0]]);
        let s = FormSpace { ambient_dim: 4, field: f(3), basis: vec![b1, b2] };
        assert_eq!(pick_nonsingular(&s), Some(standard_j(f(3), 4).unwrap()));
    }

    #[test]
    fn is_symplectic_examples() {
        let j = standard_j(f(3), 2).unwrap();
        assert!(is_symplectic(&j, &j).unwrap());
        assert!(is_symplectic(&Mat::identity(f(3), 2), &j).unwrap());
        assert!(is_symplectic(&m(3, &[&[1, 1], &[0, 1]]), &j).unwrap());
        let j5 = standard_j(f(5), 2).unwrap();
        assert!(!is_symplectic(&Mat::diag(f(5), &[2, 2]), &j5).unwrap());
        assert!(matches!(
            is_symplectic(&Mat::identity(f(3), 4), &j),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn darboux_examples() {
        let j = standard_j(f(3), 4).unwrap();
        assert_eq!(darboux(&j).unwrap(), Mat::identity(f(3), 4));
        let s = darboux(&m(5, &[&[0, 2], &[3, 0]])).unwrap();
        assert_eq!(s, Mat::diag(f(5), &[1, 3]));
        assert_eq!(darboux(&Mat::identity(f(5), 2)), Err(Error::NotSkew));
        assert_eq!(darboux(&Mat::zeros(f(5), 2, 2)), Err(Error::SingularForm));
    }

    #[test]
    fn invariant_pairs_are_similar_to_inverse() {
        // whenever X preserves A: A^{-1} X^{-1} A = X'
        let x = Mat::diag(f(7), &[2, 4, 4, 2]);
        let s = invariant_form_space(&x).unwrap();
        let a = pick_nonsingular(&s).unwrap();
        assert!(is_symplectic(&x, &a).unwrap());
        let lhs = a.inverse().unwrap().mul(&x.inverse().unwrap()).mul(&a);
        assert_eq!(lhs, x.transpose());
    }
}
