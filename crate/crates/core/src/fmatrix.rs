//! Dense matrices over GF(p).
//!
//! Conventions follow the row-vector action: a matrix X acts by `u -> uX`, a
//! bilinear form with Gram matrix A is `f(u, v) = u A v'`, and X preserves it
//! iff `X A X' = A`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{FieldElem, Fp};
use crate::fpoly::Poly;

/// Largest matrix dimension accepted from callers.
pub const MAX_DIM: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Selector for [`mat_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatOp {
    Mul,
    Add,
    Sub,
    Transpose,
    Inverse,
    Det,
    Solve,
    Nullspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatValue {
    Mat(Mat),
    Scalar(FieldElem),
    Basis(Vec<Mat>),
}

/// Checked entry point over the dense linear-algebra kernels. Unary ops ignore `b`;
/// `Solve` returns one solution of `a x = b`; `Nullspace` returns column vectors.
pub fn mat_arith(a: &Mat, b: &Mat, op: MatOp) -> Result<MatValue> {
    if matches!(op, MatOp::Mul | MatOp::Add | MatOp::Sub | MatOp::Solve) && a.field != b.field {
        return Err(Error::ModulusMismatch { left: a.field.to_string(), right: b.field.to_string() });
    }
    Ok(match op {
        MatOp::Mul => {
            if a.cols != b.rows {
                return Err(dim_err("mul", a, b));
            }
            MatValue::Mat(a.mul(b))
        }
        MatOp::Add | MatOp::Sub => {
            if (a.rows, a.cols) != (b.rows, b.cols) {
                return Err(dim_err("add/sub", a, b));
            }
            MatValue::Mat(if op == MatOp::Add { a.add(b) } else { a.sub(b) })
        }
        MatOp::Transpose => MatValue::Mat(a.transpose()),
        MatOp::Inverse => MatValue::Mat(a.inverse()?),
        MatOp::Det => MatValue::Scalar(a.field.elem(a.det()? as i64)),
        MatOp::Solve => MatValue::Mat(a.solve(b)?),
        MatOp::Nullspace => MatValue::Basis(
            a.nullspace()
                .into_iter()
                .map(|v| Mat::column(a.field, &v))
                .collect(),
        ),
    })
}

fn dim_err(what: &str, a: &Mat, b: &Mat) -> Error {
    Error::DimensionMismatch(format!("{what}: {}x{} vs {}x{}", a.rows, a.cols, b.rows, b.cols))
}

impl Mat {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: Fp, n: usize, c: u32) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn diag(field: Fp, entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(field, n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = field.reduce(e);
        }
        m
    }

    /// From raw residues in row-major order.
    pub fn from_vec(field: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&v| v < field.p()));
        Mat { field, rows, cols, data }
    }

    /// From integer rows, reducing mod p. Enforces [`MAX_DIM`].
    pub fn from_rows(field: Fp, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r > MAX_DIM || c > MAX_DIM {
            return Err(Error::DimensionCap { got: r.max(c), cap: MAX_DIM });
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| field.reduce(v)).collect();
        Ok(Mat { field, rows: r, cols: c, data })
    }

    pub fn column(field: Fp, v: &[u32]) -> Self {
        Mat::from_vec(field, v.len(), 1, v.to_vec())
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn check_field(&self, other: &Mat) {
        assert_eq!(self.field, other.field, "mixed-modulus matrix arithmetic");
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.check_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { data, ..*self }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.check_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { data, ..*self }
    }

    pub fn neg(&self) -> Mat {
        let f = self.field;
        Mat { data: self.data.iter().map(|&a| f.neg(a)).collect(), ..*self }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let f = self.field;
        Mat { data: self.data.iter().map(|&a| f.mul(a, c)).collect(), ..*self }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        self.check_field(other);
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let p = self.field.p() as u64;
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![0u32; n * m];
        let mut acc = vec![0u64; m];
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            for l in 0..k {
                let a = self.data[i * k + l] as u64;
                if a == 0 {
                    continue;
                }
                let row = &other.data[l * m..(l + 1) * m];
                for (s, &b) in acc.iter_mut().zip(row) {
                    *s = (*s + a * b as u64) % p;
                }
            }
            for (o, &s) in out[i * m..(i + 1) * m].iter_mut().zip(&acc) {
                *o = s as u32;
            }
        }
        Mat { field: self.field, rows: n, cols: m, data: out }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_skew(&self) -> bool {
        self.is_square() && self.add(&self.transpose()).is_zero()
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `f(X)` by Horner's rule.
    pub fn eval_poly(&self, f: &Poly) -> Mat {
        assert!(self.is_square());
        assert_eq!(f.field(), self.field);
        let n = self.rows;
        let mut acc = Mat::zeros(self.field, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = acc.get(i, i);
                acc.set(i, i, self.field.add(v, c));
            }
        }
        acc
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(self.field, rows, cols);
        for i in 0..rows {
            out.data[i * cols..(i + 1) * cols]
                .copy_from_slice(&self.data[(r0 + i) * self.cols + c0..(r0 + i) * self.cols + c0 + cols]);
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn block_diag(field: Fp, blocks: &[Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            assert_eq!(b.field, field);
            out.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            m.swap_rows(r, piv);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(v, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Result<u32> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("det of {}x{}", self.rows, self.cols)));
        }
        let f = self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = 1u32;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| m.get(i, c) != 0) else { return Ok(0) };
            if piv != c {
                m.swap_rows(piv, c);
                det = f.neg(det);
            }
            let d = m.get(c, c);
            det = f.mul(det, d);
            let inv = f.inv(d).expect("nonzero");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("inverse of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Mat::zeros(self.field, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Mat::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        Ok(r.submatrix(0, n, n, n))
    }

    /// One solution of `self * x = b`.
    pub fn solve(&self, b: &Mat) -> Result<Mat> {
        if self.rows != b.rows {
            return Err(dim_err("solve", self, b));
        }
        let (n, k) = (self.cols, b.cols);
        let mut aug = Mat::zeros(self.field, self.rows, n + k);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= n) {
            return Err(Error::NoSolution("inconsistent linear system".into()));
        }
        let mut x = Mat::zeros(self.field, n, k);
        for (i, &c) in pivots.iter().enumerate() {
            for j in 0..k {
                x.set(c, j, r.get(i, n + j));
            }
        }
        Ok(x)
    }

    /// Basis of `{x : self * x = 0}`: one vector per free column, with that
    /// coordinate 1 and the other free coordinates 0.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Basis of `{u : u * self = 0}` as row vectors.
    pub fn left_nullspace(&self) -> Vec<Vec<u32>> {
        self.transpose().nullspace()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let p = self.field.p() as u64;
        let mut acc = vec![0u64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (s, &b) in acc.iter_mut().zip(self.row(i)) {
                *s = (*s + a as u64 * b as u64) % p;
            }
        }
        acc.into_iter().map(|s| s as u32).collect()
    }

    /// Characteristic polynomial via reduction to upper Hessenberg form and the
    /// determinant recurrence on its leading principal minors.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square(), "charpoly of non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else { continue };
            if i != m {
                h.swap_rows(i, m);
                h.swap_cols(i, m);
            }
            let inv = f.inv(h.get(m, m - 1)).expect("nonzero pivot");
            for j in m + 1..n {
                let u = f.mul(h.get(j, m - 1), inv);
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(j, c), f.mul(u, h.get(m, c)));
                    h.set(j, c, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, m), f.mul(u, h.get(r, j)));
                    h.set(r, m, v);
                }
            }
        }
        let t = Poly::t(f);
        let mut ps: Vec<Poly> = vec![Poly::one(f)];
        for k in 1..=n {
            let mut pk = t.sub(&Poly::constant(f, h.get(k - 1, k - 1))).mul(&ps[k - 1]);
            let mut prod = 1u32;
            for i in (1..k).rev() {
                prod = f.mul(prod, h.get(i, i - 1));
                if prod == 0 {
                    break;
                }
                let c = f.mul(h.get(i - 1, k - 1), prod);
                pk = pk.sub(&ps[i - 1].scale(c));
            }
            ps.push(pk);
        }
        ps.pop().expect("n+1 entries")
    }

    /// Minimal polynomial: lcm over the standard basis of the Krylov annihilators.
    pub fn minpoly(&self) -> Poly {
        assert!(self.is_square(), "minpoly of non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut result = Poly::one(f);
        for i in 0..n {
            let mut e = vec![0u32; n];
            e[i] = 1;
            let ann = self.krylov_annihilator(&e);
            result = result.lcm(&ann);
        }
        result
    }

    /// Monic least-degree `q` with `u q(X) = 0`.
    pub fn krylov_annihilator(&self, u: &[u32]) -> Poly {
        let f = self.field;
        // echelon rows: (vector, pivot column, polynomial expressing it)
        let mut basis: Vec<(Vec<u32>, usize, Poly)> = Vec::new();
        let mut w = u.to_vec();
        let mut k = 0usize;
        loop {
            let mut vec = w.clone();
            let mut expr = Poly::monomial(f, 1, k);
            for (bv, pc, bp) in &basis {
                let c = vec[*pc];
                if c != 0 {
                    for (x, &y) in vec.iter_mut().zip(bv) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                    expr = expr.sub(&bp.scale(c));
                }
            }
            match vec.iter().position(|&x| x != 0) {
                None => return expr.monic(),
                Some(pc) => {
                    let inv = f.inv(vec[pc]).expect("nonzero");
                    vec.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                    basis.push((vec, pc, expr.scale(inv)));
                }
            }
            w = self.vec_mul(&w);
            k += 1;
        }
    }

    /// Rank profile of `g(X)^k` for each irreducible factor g of the
    /// characteristic polynomial; equal invariants iff the matrices are similar.
    pub fn similarity_invariants(&self) -> SimilarityInvariants {
        let cp = self.charpoly();
        let fac = cp.factorize();
        let ranks = fac
            .factors
            .iter()
            .map(|(g, e)| {
                let gx = self.eval_poly(g);
                let mut pw = gx.clone();
                let mut rs = vec![pw.rank()];
                for _ in 1..*e {
                    pw = pw.mul(&gx);
                    rs.push(pw.rank());
                }
                (g.clone(), rs)
            })
            .collect();
        SimilarityInvariants { charpoly: cp, ranks }
    }

    /// Matrix text format: `p <prime>`, `<rows> <cols>`, then one row per line.
    pub fn parse_text(text: &str) -> Result<Mat> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let perr = |m: &str| Error::Parse(m.to_string());
        let header = lines.next().ok_or_else(|| perr("missing `p <prime>` line"))?;
        let mut hw = header.split_whitespace();
        if hw.next() != Some("p") {
            return Err(perr("first line must be `p <prime>`"));
        }
        let p: u64 = hw
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| perr("bad prime"))?;
        let field = Fp::new(p)?;
        let dims = lines.next().ok_or_else(|| perr("missing `<rows> <cols>` line"))?;
        let dims: Vec<usize> = dims
            .split_whitespace()
            .map(|s| s.parse().map_err(|_| perr("bad dimensions")))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else { return Err(perr("dimension line needs two integers")) };
        if rows > MAX_DIM || cols > MAX_DIM {
            return Err(Error::DimensionCap { got: rows.max(cols), cap: MAX_DIM });
        }
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines.next().ok_or_else(|| perr(&format!("missing row {r}")))?;
            let row: Vec<u64> = line
                .split_whitespace()
                .map(|s| s.parse().map_err(|_| perr(&format!("bad entry `{s}`"))))
                .collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(perr(&format!("row {r} has {} entries, expected {cols}", row.len())));
            }
            for v in row {
                if v >= p {
                    return Err(perr(&format!("entry {v} not in [0, {p})")));
                }
                data.push(v as u32);
            }
        }
        if lines.next().is_some() {
            return Err(perr("trailing data after last row"));
        }
        Ok(Mat { field, rows, cols, data })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("p {}\n{} {}\n", self.field.p(), self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "[ {} ]", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityInvariants {
    pub charpoly: Poly,
    pub ranks: Vec<(Poly, Vec<usize>)>,
}

/// The companion matrix of monic `g`: ones on the superdiagonal, last row the
/// negated low coefficients, so that its characteristic polynomial is `g`.
pub fn companion(g: &Poly) -> Result<Mat> {
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = g.deg();
    if d == 0 {
        return Err(Error::PreconditionViolated("companion of a constant".into()));
    }
    let f = g.field();
    let mut m = Mat::zeros(f, d, d);
    for i in 0..d - 1 {
        m.set(i, i + 1, 1);
    }
    for j in 0..d {
        m.set(d - 1, j, f.neg(g.coeff(j)));
    }
    Ok(m)
}

/// Block form of a semisimple matrix: `P^{-1} X P` is block diagonal with
/// `n_i` copies of `companion(g_i)`, blocks in polynomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub blocks: Vec<(Poly, usize)>,
    pub transform: Mat,
}

impl CanonicalForm {
    pub fn assembled(&self) -> Mat {
        let field = self.transform.field();
        let comps: Vec<Mat> = self
            .blocks
            .iter()
            .flat_map(|(g, n)| std::iter::repeat_n(companion(g).expect("monic"), *n))
            .collect();
        Mat::block_diag(field, &comps)
    }
}

/// Splits a semisimple matrix into companion blocks with an explicit
/// similarity transform, verified before returning.
pub fn semisimple_canonical(x: &Mat) -> Result<CanonicalForm> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch("semisimple_canonical needs a square matrix".into()));
    }
    if x.rows() > MAX_DIM {
        return Err(Error::DimensionCap { got: x.rows(), cap: MAX_DIM });
    }
    let f = x.field();
    let cp = x.charpoly();
    if cp.coeff(0) == 0 {
        return Err(Error::SingularInput);
    }
    if !x.minpoly().is_separable() {
        return Err(Error::NotSemisimple);
    }
    let n = x.rows();
    let fac = cp.factorize();
    let mut q_rows: Vec<Vec<u32>> = Vec::with_capacity(n);
    for (g, mult) in &fac.factors {
        let d = g.deg();
        let kernel = x.eval_poly(g).left_nullspace();
        debug_assert_eq!(kernel.len(), d * mult);
        // echelon copy of the span built so far for this factor
        let mut span: Vec<(Vec<u32>, usize)> = Vec::new();
        let mut taken = 0;
        for u in kernel {
            if taken == *mult {
                break;
            }
            if reduce_against(f, &span, u.clone()).is_none() {
                continue;
            }
            let mut v = u;
            for _ in 0..d {
                if let Some(r) = reduce_against(f, &span, v.clone()) {
                    span.push(r);
                }
                q_rows.push(v.clone());
                v = x.vec_mul(&v);
            }
            taken += 1;
        }
    }
    let q = Mat::from_vec(f, n, n, q_rows.into_iter().flatten().collect());
    let form = CanonicalForm { blocks: fac.factors, transform: q.inverse()? };
    assert_eq!(q.mul(x), form.assembled().mul(&q), "canonical form failed verification");
    Ok(form)
}

/// Reduces `v` against an echelon list; returns the normalized remainder with
/// its pivot, or `None` if `v` lies in the span.
fn reduce_against(f: Fp, span: &[(Vec<u32>, usize)], mut v: Vec<u32>) -> Option<(Vec<u32>, usize)> {
    for (b, pc) in span {
        let c = v[*pc];
        if c != 0 {
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.sub(*x, f.mul(c, y));
            }
        }
    }
    let pc = v.iter().position(|&x| x != 0)?;
    let inv = f.inv(v[pc]).expect("nonzero");
    v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
    Some((v, pc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> Fp {
        Fp::new(p).unwrap()
    }

    fn m(p: u64, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(f(p), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn poly(p: u64, c: &[i64]) -> Poly {
        Poly::from_i64(f(p), c)
    }

    fn random_mat(rng: &mut ChaCha8Rng, field: Fp, n: usize) -> Mat {
        Mat::from_vec(field, n, n, (0..n * n).map(|_| rng.gen_range(0..field.p())).collect())
    }

    fn random_invertible(rng: &mut ChaCha8Rng, field: Fp, n: usize) -> Mat {
        loop {
            let a = random_mat(rng, field, n);
            if a.is_invertible() {
                return a;
            }
        }
    }

    #[test]
    fn arith_examples() {
        let a = m(3, &[&[0, 1], &[2, 0]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, m(3, &[&[0, 2], &[1, 0]]));
        assert_eq!(a.mul(&inv), Mat::identity(f(3), 2));
        assert_eq!(Mat::identity(f(7), 3).transpose(), Mat::identity(f(7), 3));
        assert_eq!(Mat::diag(f(5), &[2, 3]).det().unwrap(), 1);
        assert_eq!(m(5, &[&[1, 2], &[2, 4]]).inverse(), Err(Error::SingularMatrix));
        let r = mat_arith(&m(3, &[&[1, 2]]), &m(3, &[&[1, 2]]), MatOp::Mul);
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
        let r = mat_arith(&m(3, &[&[1]]), &m(5, &[&[1]]), MatOp::Add);
        assert!(matches!(r, Err(Error::ModulusMismatch { .. })));
        assert!(matches!(m(3, &[&[1, 2]]).det(), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn solve_and_nullspace() {
        let a = m(5, &[&[1, 2, 3], &[2, 1, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(a.mul(&Mat::column(f(5), v)).is_zero());
        }
        let b = m(5, &[&[1], &[0]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let inconsistent = m(5, &[&[1, 1], &[1, 1]]).solve(&m(5, &[&[1], &[2]]));
        assert!(matches!(inconsistent, Err(Error::NoSolution(_))));
    }

    #[test]
    fn charpoly_examples() {
        let c = companion(&poly(3, &[1, 0, 1])).unwrap();
        assert_eq!(c.charpoly(), poly(3, &[1, 0, 1]));
        // (t-2)(t-3) = t^2 - 5t + 6 = t^2 + 1 over GF(5)
        assert_eq!(Mat::diag(f(5), &[2, 3]).charpoly(), poly(5, &[1, 0, 1]));
        assert_eq!(Mat::identity(f(3), 2).charpoly(), poly(3, &[1, 1, 1]));
    }

    #[test]
    fn minpoly_examples() {
        assert_eq!(Mat::identity(f(3), 4).minpoly(), poly(3, &[-1, 1]));
        assert_eq!(m(3, &[&[1, 1], &[0, 1]]).minpoly(), poly(3, &[-1, 1]).pow(2));
        let c = companion(&poly(3, &[1, 0, 1])).unwrap();
        let x = Mat::block_diag(f(3), &[c.clone(), c]);
        assert_eq!(x.minpoly(), poly(3, &[1, 0, 1]));
    }

    #[test]
    fn companion_examples() {
        assert_eq!(companion(&poly(3, &[1, 0, 1])).unwrap(), m(3, &[&[0, 1], &[2, 0]]));
        assert_eq!(companion(&poly(5, &[-2, 1])).unwrap(), m(5, &[&[2]]));
        assert_eq!(companion(&poly(3, &[2, 2, 1])).unwrap(), m(3, &[&[0, 1], &[1, 1]]));
        assert_eq!(companion(&poly(3, &[2, 2, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn canonical_examples() {
        let c = companion(&poly(3, &[1, 0, 1])).unwrap();
        let form = semisimple_canonical(&c).unwrap();
        assert_eq!(form.blocks, vec![(poly(3, &[1, 0, 1]), 1)]);
        assert_eq!(form.transform, Mat::identity(f(3), 2));

        let form = semisimple_canonical(&Mat::diag(f(5), &[2, 3])).unwrap();
        assert_eq!(form.blocks, vec![(poly(5, &[-3, 1]), 1), (poly(5, &[-2, 1]), 1)]);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p0 = random_invertible(&mut rng, f(3), 4);
        let x = p0.mul(&Mat::block_diag(f(3), &[c.clone(), c])).mul(&p0.inverse().unwrap());
        let form = semisimple_canonical(&x).unwrap();
        assert_eq!(form.blocks, vec![(poly(3, &[1, 0, 1]), 2)]);
        let p = &form.transform;
        assert_eq!(p.inverse().unwrap().mul(&x).mul(p), form.assembled());

        assert_eq!(semisimple_canonical(&m(3, &[&[1, 1], &[0, 1]])), Err(Error::NotSemisimple));
        assert_eq!(semisimple_canonical(&m(3, &[&[1, 0], &[0, 0]])), Err(Error::SingularInput));
    }

    #[test]
    fn text_format() {
        let x = m(5, &[&[2, 0], &[0, 2]]);
        let text = x.to_text();
        assert_eq!(text, "p 5\n2 2\n2 0\n0 2\n");
        assert_eq!(Mat::parse_text(&text).unwrap(), x);
        assert!(matches!(Mat::parse_text("p 5\n1 1\n7\n"), Err(Error::Parse(_))));
        assert!(matches!(Mat::parse_text("p 4\n1 1\n1\n"), Err(Error::NotOddPrime(4))));
        assert!(matches!(Mat::parse_text("p 5\n1 2\n1\n"), Err(Error::Parse(_))));
        assert!(matches!(Mat::parse_text("p 5\n65 65\n"), Err(Error::DimensionCap { .. })));
    }

    #[test]
    fn similarity_invariants_detect_jordan_structure() {
        let j = m(3, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let d = Mat::identity(f(3), 3);
        assert_ne!(j.similarity_invariants(), d.similarity_invariants());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_invertible(&mut rng, f(3), 3);
        let conj = s.mul(&j).mul(&s.inverse().unwrap());
        assert_eq!(j.similarity_invariants(), conj.similarity_invariants());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn cayley_hamilton_and_minpoly(seed in any::<u64>(), n in 1usize..=8, pi in 0usize..3) {
            let field = f([3, 5, 7][pi]);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_mat(&mut rng, field, n);
            let cp = x.charpoly();
            prop_assert_eq!(cp.deg(), n);
            prop_assert!(cp.is_monic());
            prop_assert!(x.eval_poly(&cp).is_zero());
            let mp = x.minpoly();
            prop_assert!(x.eval_poly(&mp).is_zero());
            prop_assert!(mp.divides(&cp));
            let support = |q: &Poly| q.factorize().factors.into_iter().map(|(g, _)| g).collect::<Vec<_>>();
            prop_assert_eq!(support(&mp), support(&cp));
            // det agrees with the constant term
            let sign = if n % 2 == 0 { 1 } else { field.p() - 1 };
            prop_assert_eq!(field.mul(cp.coeff(0), sign), x.det().unwrap());
        }

        #[test]
        fn inverse_and_nullspace(seed in any::<u64>(), n in 1usize..=7) {
            let field = f(5);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_mat(&mut rng, field, n);
            match x.inverse() {
                Ok(inv) => prop_assert_eq!(x.mul(&inv), Mat::identity(field, n)),
                Err(e) => prop_assert_eq!(e, Error::SingularMatrix),
            }
            let ns = x.nullspace();
            prop_assert_eq!(ns.len() + x.rank(), n);
            let basis = Mat::from_vec(field, ns.len(), n, ns.iter().flatten().copied().collect());
            prop_assert_eq!(basis.rank(), ns.len());
            for v in &ns {
                prop_assert!(x.mul(&Mat::column(field, v)).is_zero());
            }
        }

        #[test]
        fn canonical_round_trip(seed in any::<u64>(), pi in 0usize..2) {
            let field = f([3, 5][pi]);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // semisimple by construction: blocks of random irreducible companions
            let irr: Vec<Poly> = (1..=3).flat_map(|d| crate::fpoly::enumerate_irreducibles(field, d))
                .filter(|g| g.coeff(0) != 0).collect();
            let mut blocks = Vec::new();
            let mut dim = 0;
            while dim < 6 {
                let g = &irr[rng.gen_range(0..irr.len())];
                blocks.push(companion(g).unwrap());
                dim += g.deg();
            }
            let base = Mat::block_diag(field, &blocks);
            let s = random_invertible(&mut rng, field, dim);
            let x = s.mul(&base).mul(&s.inverse().unwrap());
            let form = semisimple_canonical(&x).unwrap();
            let p = &form.transform;
            prop_assert_eq!(p.inverse().unwrap().mul(&x).mul(p), form.assembled());
            prop_assert_eq!(form.blocks.iter().map(|(g, n)| g.deg() * n).sum::<usize>(), dim);
        }
    }
}
