#![allow(dead_code)]

use rand::Rng;
use spclass::ffield::Fp;
use spclass::fmatrix::Mat;
use spclass::fpoly::Poly;

pub fn field(p: u64) -> Fp {
    Fp::new(p).unwrap()
}

pub fn random_mat(f: Fp, r: usize, c: usize, rng: &mut impl Rng) -> Mat {
    let data = (0..r * c).map(|_| rng.gen_range(0..f.p())).collect();
    Mat::from_vec(f, r, c, data)
}

pub fn random_invertible(f: Fp, n: usize, rng: &mut impl Rng) -> Mat {
    loop {
        let m = random_mat(f, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn random_nonsingular_skew(f: Fp, n: usize, rng: &mut impl Rng) -> Mat {
    loop {
        let mut a = Mat::zeros(f, n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = rng.gen_range(0..f.p());
                a.set(i, j, v);
                a.set(j, i, f.neg(v));
            }
        }
        if a.is_invertible() {
            return a;
        }
    }
}

pub fn random_poly(f: Fp, max_deg: usize, rng: &mut impl Rng) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    Poly::new(f, (0..=d).map(|_| rng.gen_range(0..f.p())).collect())
}
