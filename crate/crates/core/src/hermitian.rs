//! Matrices over K = GF(p)[t]/(g) with the bar involution, and the
//! normalization of nondegenerate Hermitian forms to the identity.
//!
//! An element φ of K acts on GF(p)^d as φ(R) for R the companion matrix of g,
//! so an n×n matrix over K expands to an nd×nd block matrix over GF(p).

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ffield::{solve_norm_seeded, ExtElem, ExtField};
use crate::fmatrix::Mat;

/// Dense matrix over an extension field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMat {
    field: ExtField,
    rows: usize,
    cols: usize,
    data: Vec<ExtElem>,
}

impl KMat {
    pub fn from_fn(field: &ExtField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExtElem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert!(*e.field() == *field, "entry from a different extension field");
                data.push(e);
            }
        }
        KMat { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &ExtField, rows: Vec<Vec<ExtElem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(KMat::from_fn(field, n, cols, |i, j| rows[i][j].clone()))
    }

    pub fn zeros(field: &ExtField, rows: usize, cols: usize) -> Self {
        KMat::from_fn(field, rows, cols, |_, _| field.zero())
    }

    pub fn identity(field: &ExtField, n: usize) -> Self {
        KMat::from_fn(field, n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExtElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExtElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &KMat) -> KMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in KMat::mul");
        KMat::from_fn(&self.field, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(self.field.zero(), |acc, k| acc.add(&self.get(i, k).mul(other.get(k, j))))
        })
    }

    pub fn add(&self, other: &KMat) -> KMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in KMat::add");
        KMat::from_fn(&self.field, self.rows, self.cols, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    /// Conjugate transpose with respect to bar.
    pub fn star(&self) -> Result<KMat> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).bar()?);
            }
        }
        Ok(KMat { field: self.field.clone(), rows: self.cols, cols: self.rows, data })
    }

    pub fn is_hermitian(&self) -> Result<bool> {
        Ok(self.rows == self.cols && self.star()? == *self)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (r, c) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..c {
            let Some(piv) = (rank..r).find(|&i| !m[i * c + col].is_zero()) else {
                continue;
            };
            for k in 0..c {
                m.swap(rank * c + k, piv * c + k);
            }
            let inv = m[rank * c + col].inv().expect("nonzero pivot");
            for i in 0..r {
                if i == rank || m[i * c + col].is_zero() {
                    continue;
                }
                let factor = m[i * c + col].mul(&inv);
                for k in 0..c {
                    let v = m[i * c + k].sub(&factor.mul(&m[rank * c + k]));
                    m[i * c + k] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Replaces each entry φ by the d×d block φ(r).
    pub fn to_block_matrix(&self, r: &Mat) -> Mat {
        let d = r.rows();
        let base = self.field.base();
        let mut out = Mat::zeros(base, self.rows * d, self.cols * d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set_block(i * d, j * d, &ext_to_matrix(self.get(i, j), r));
            }
        }
        out
    }

    pub fn random(field: &ExtField, rows: usize, cols: usize, rng: &mut impl Rng) -> KMat {
        KMat::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    /// Uniform off-diagonal entries; diagonal entries are traces `x + bar(x)`.
    pub fn random_hermitian(field: &ExtField, n: usize, rng: &mut impl Rng) -> Result<KMat> {
        let mut b = KMat::zeros(field, n, n);
        for i in 0..n {
            let x = field.random(rng);
            b.set(i, i, x.add(&x.bar()?));
            for j in i + 1..n {
                let y = field.random(rng);
                b.set(j, i, y.bar()?);
                b.set(i, j, y);
            }
        }
        Ok(b)
    }
}

impl fmt::Display for KMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// φ(r) for the residue φ.
pub fn ext_to_matrix(e: &ExtElem, r: &Mat) -> Mat {
    r.eval_poly(e.poly())
}

// h(u, v) = u b v*
fn form(b: &KMat, u: &[ExtElem], v: &[ExtElem]) -> Result<ExtElem> {
    let k = b.field();
    let mut acc = k.zero();
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            acc = acc.add(&ui.mul(b.get(i, j)).mul(&vj.bar()?));
        }
    }
    Ok(acc)
}

fn axpy(w: &mut [ExtElem], c: &ExtElem, v: &[ExtElem]) {
    for (x, y) in w.iter_mut().zip(v) {
        *x = x.add(&c.mul(y));
    }
}

/// Some invertible C with `C b C* = I`, by Hermitian Gram–Schmidt.
///
/// When every remaining vector is isotropic, `u` is replaced by `u + λv` for
/// `λ ∈ {1, t}` and some `v` with `h(u, v) ≠ 0`; one of the two is anisotropic
/// because `t ≠ bar(t)`.
pub fn hermitian_canonical(b: &KMat) -> Result<KMat> {
    if !b.is_hermitian()? {
        return Err(Error::NotHermitian);
    }
    if !b.is_invertible() {
        return Err(Error::SingularForm);
    }
    let k = b.field().clone();
    let n = b.rows();
    let mut pool: Vec<Vec<ExtElem>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { k.one() } else { k.zero() }).collect())
        .collect();
    let mut basis: Vec<Vec<ExtElem>> = Vec::with_capacity(n);
    while !pool.is_empty() {
        let mut idx = None;
        for (i, w) in pool.iter().enumerate() {
            if !form(b, w, w)?.is_zero() {
                idx = Some(i);
                break;
            }
        }
        let idx = match idx {
            Some(i) => i,
            None => {
                let mut partner = None;
                for j in 1..pool.len() {
                    if !form(b, &pool[0], &pool[j])?.is_zero() {
                        partner = Some(j);
                        break;
                    }
                }
                let j = partner.ok_or(Error::SingularForm)?;
                let v = pool[j].clone();
                let mut fixed = false;
                for lambda in [k.one(), k.generator()] {
                    let mut w = pool[0].clone();
                    axpy(&mut w, &lambda, &v);
                    if !form(b, &w, &w)?.is_zero() {
                        pool[0] = w;
                        fixed = true;
                        break;
                    }
                }
                assert!(fixed, "no anisotropic vector in a hyperbolic plane");
                0
            }
        };
        let w = pool.remove(idx);
        let a = form(b, &w, &w)?;
        let c = solve_norm_seeded(&a.inv()?, 0)?;
        let e: Vec<ExtElem> = w.iter().map(|x| c.mul(x)).collect();
        for x in pool.iter_mut() {
            let coeff = form(b, x, &e)?.neg();
            axpy(x, &coeff, &e);
        }
        basis.push(e);
    }
    let c = KMat::from_rows(&k, basis)?;
    assert_eq!(c.mul(b).mul(&c.star()?), KMat::identity(&k, n), "Hermitian normalization failed verification");
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Fp;
    use crate::fmatrix::companion;
    use crate::fpoly::Poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf9() -> ExtField {
        ExtField::new(Poly::from_i64(Fp::new(3).unwrap(), &[1, 0, 1])).unwrap()
    }

    fn gf25() -> ExtField {
        ExtField::new(Poly::from_i64(Fp::new(5).unwrap(), &[1, 1, 1])).unwrap()
    }

    #[test]
    fn scalar_example() {
        let k = gf9();
        let b = KMat::from_rows(&k, vec![vec![k.scalar(2)]]).unwrap();
        let c = hermitian_canonical(&b).unwrap();
        assert_eq!(c.get(0, 0), &k.from_i64(&[1, 1]));
    }

    #[test]
    fn identity_is_fixed() {
        let k = gf25();
        let i3 = KMat::identity(&k, 3);
        assert_eq!(hermitian_canonical(&i3).unwrap(), i3);
    }

    #[test]
    fn two_by_two_example() {
        let k = gf9();
        let t = k.generator();
        let b = KMat::from_rows(&k, vec![vec![k.one(), t.clone()], vec![t.bar().unwrap(), k.one()]]).unwrap();
        assert!(b.is_hermitian().unwrap());
        // det = 1 - N(t) = 0, so this instance is singular
        assert_eq!(hermitian_canonical(&b), Err(Error::SingularForm));
        let b = KMat::from_rows(&k, vec![vec![k.zero(), t.clone()], vec![t.bar().unwrap(), k.zero()]]).unwrap();
        let c = hermitian_canonical(&b).unwrap();
        assert_eq!(c.mul(&b).mul(&c.star().unwrap()), KMat::identity(&k, 2));
    }

    #[test]
    fn rejects_non_hermitian() {
        let k = gf9();
        let b = KMat::from_rows(&k, vec![vec![k.generator()]]).unwrap();
        assert_eq!(hermitian_canonical(&b), Err(Error::NotHermitian));
    }

    #[test]
    fn random_forms_normalize() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in [gf9(), gf25()] {
            let mut done = 0;
            while done < 30 {
                let n = 1 + done % 3;
                let b = KMat::random_hermitian(&k, n, &mut rng).unwrap();
                if !b.is_invertible() {
                    continue;
                }
                let c = hermitian_canonical(&b).unwrap();
                assert!(c.is_invertible());
                done += 1;
            }
        }
    }

    #[test]
    fn block_matrix_is_a_ring_map() {
        let k = gf25();
        let r = companion(k.modulus()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = KMat::random(&k, 2, 3, &mut rng);
            let y = KMat::random(&k, 3, 2, &mut rng);
            assert_eq!(x.mul(&y).to_block_matrix(&r), x.to_block_matrix(&r).mul(&y.to_block_matrix(&r)));
        }
        // bar corresponds to r ↦ r^{-1}
        let e = k.from_i64(&[2, 3]);
        let rinv = r.inverse().unwrap();
        assert_eq!(ext_to_matrix(&e.bar().unwrap(), &r), rinv.eval_poly(e.poly()));
    }
}
