use asymspace_core::exact::{null_space, RMatrix, RVector, Subspace};
use asymspace_testkit::{random_vector, rng, Rng};
use proptest::prelude::*;

fn random_matrix(seed: u64) -> RMatrix {
    let mut r = rng(seed);
    let cols = r.gen_range(1..=5);
    let rows = r.gen_range(0..=5);
    RMatrix::new(cols, (0..rows).map(|_| random_vector(&mut r, cols)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn null_space_is_exact_kernel(seed in any::<u64>()) {
        let m = random_matrix(seed);
        let k = null_space(&m);
        for b in k.basis() {
            prop_assert!(m.apply(b).unwrap().is_zero());
        }
        prop_assert_eq!(m.rank() + k.dim(), m.ncols());
    }

    #[test]
    fn complement_is_an_involution(seed in any::<u64>()) {
        let m = random_matrix(seed);
        let s = Subspace::span(m.ncols(), m.rows()).unwrap();
        let perp = s.orthogonal_complement();
        prop_assert_eq!(s.dim() + perp.dim(), s.ambient_dim());
        for a in s.basis() {
            for b in perp.basis() {
                prop_assert!(num_traits::Zero::is_zero(&a.dot(b)));
            }
        }
        prop_assert_eq!(perp.orthogonal_complement(), s);
    }

    #[test]
    fn span_is_canonical(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_matrix(seed ^ 0x5eed);
        let mut rows: Vec<RVector> = m.rows().to_vec();
        let s1 = Subspace::span(m.ncols(), &rows).unwrap();
        // shuffle and mix in combinations of the spanning set
        for i in (1..rows.len()).rev() {
            rows.swap(i, r.gen_range(0..=i));
        }
        if rows.len() >= 2 {
            let mix = rows[0].add_scaled(&asymspace_testkit::small_rational(&mut r), &rows[1]);
            rows.push(mix);
        }
        let s2 = Subspace::span(m.ncols(), &rows).unwrap();
        prop_assert_eq!(s1, s2);
    }
}
