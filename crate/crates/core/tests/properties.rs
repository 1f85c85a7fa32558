mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{field, random_invertible, random_nonsingular_skew};
use spclass::classify::{assemble_rep, descriptor_of, sp_conjugate_test, SymplecticPair};
use spclass::enumerate::{count_classes, enumerate_descriptors, EnumSpec};
use spclass::fmatrix::Mat;
use spclass::forms::{darboux, invariant_form_space, is_symplectic, standard_j};
use spclass::oracle::sp_generators;

fn nth_rep(m: usize, p: u64, idx: usize) -> SymplecticPair {
    let spec = EnumSpec::new(m, p).unwrap();
    let n = count_classes(spec).unwrap() as usize;
    let d = enumerate_descriptors(spec).unwrap().nth(idx % n).unwrap();
    assemble_rep(&d).unwrap()
}

fn random_sp(field: spclass::ffield::Fp, m: usize, rng: &mut ChaCha8Rng) -> Mat {
    let gens = sp_generators(field, m);
    (0..40).fold(Mat::identity(field, 2 * m), |acc, _| acc.mul(&gens[rng.gen_range(0..gens.len())]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn representatives_round_trip(p in prop::sample::select(vec![3u64, 5, 7]), m in 1usize..=3, idx in 0usize..10_000) {
        let r = nth_rep(m, p, idx);
        prop_assert!(is_symplectic(&r.x, &r.a).unwrap());
        prop_assert_eq!(descriptor_of(&r.x).unwrap(), r.descriptor.clone());
        let cp = r.x.charpoly();
        prop_assert_eq!(cp.reciprocal().unwrap(), cp);
    }

    #[test]
    fn form_space_basis_is_invariant(p in prop::sample::select(vec![3u64, 5]), m in 1usize..=2, idx in 0usize..1000, seed in any::<u64>()) {
        let r = nth_rep(m, p, idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_invertible(r.x.field(), 2 * m, &mut rng);
        let x = q.mul(&r.x).mul(&q.inverse().unwrap());
        let space = invariant_form_space(&x).unwrap();
        prop_assert!(!space.is_empty());
        for a in &space.basis {
            prop_assert!(a.is_skew());
            prop_assert_eq!(&x.mul(a).mul(&x.transpose()), a);
        }
    }

    #[test]
    fn symplectic_conjugates_are_detected(p in prop::sample::select(vec![3u64, 5, 7]), m in 1usize..=3, idx in 0usize..1000, seed in any::<u64>()) {
        let r = nth_rep(m, p, idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_sp(r.x.field(), m, &mut rng);
        let y = s.mul(&r.x).mul(&s.inverse().unwrap());
        let other = SymplecticPair::new(y, r.a.clone()).unwrap();
        prop_assert!(sp_conjugate_test(&r, &other).unwrap());
    }

    #[test]
    fn darboux_normalizes(p in prop::sample::select(vec![3u64, 5, 7, 11]), half in 1usize..=4, seed in any::<u64>()) {
        let f = field(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_nonsingular_skew(f, 2 * half, &mut rng);
        let s = darboux(&a).unwrap();
        prop_assert_eq!(s.mul(&a).mul(&s.transpose()), standard_j(f, 2 * half).unwrap());
    }

    #[test]
    fn similar_to_inverse_via_form(p in prop::sample::select(vec![3u64, 5]), m in 1usize..=3, idx in 0usize..1000, seed in any::<u64>()) {
        let r = nth_rep(m, p, idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_invertible(r.x.field(), 2 * m, &mut rng);
        let x = q.mul(&r.x).mul(&q.inverse().unwrap());
        let a = q.mul(&r.a).mul(&q.transpose());
        prop_assert_eq!(a.inverse().unwrap().mul(&x.inverse().unwrap()).mul(&a), x.transpose());
    }
}
