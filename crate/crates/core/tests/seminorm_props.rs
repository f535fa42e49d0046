use asymspace_core::cone::theta_cone;
use asymspace_core::exact::{frac, RVector};
use asymspace_core::seminorm::{in_kernel_primal, seminorm_dual, seminorm_kernel, seminorm_value, DualSymmetricBody};
use asymspace_testkit::{random_gauge, random_point, rng, Rng};
use num_traits::Signed;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn seminorm_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_gauge(&mut r, 4, 8);
        let x = random_point(&mut r, g.dim());
        let y = random_point(&mut r, g.dim());
        let a = frac(r.gen_range(-10..=10), r.gen_range(1..=10));
        let nx = seminorm_value(&g, &x).unwrap();
        prop_assert_eq!(&nx, &seminorm_value(&g, &-&x).unwrap());
        prop_assert!(seminorm_value(&g, &(&x + &y)).unwrap() <= &nx + seminorm_value(&g, &y).unwrap());
        prop_assert_eq!(seminorm_value(&g, &x.scale(&a)).unwrap(), a.abs() * &nx);
        prop_assert!(nx <= g.value(&x).unwrap());
    }

    #[test]
    fn primal_and_dual_routes_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_gauge(&mut r, 4, 8);
        let body = DualSymmetricBody::new(&g).unwrap();
        for _ in 0..5 {
            let x = random_point(&mut r, g.dim());
            prop_assert_eq!(seminorm_value(&g, &x).unwrap(), body.support(&x));
        }
        let x = random_point(&mut r, g.dim());
        prop_assert_eq!(seminorm_dual(&g, &x).unwrap(), body.support(&x));
    }

    #[test]
    fn dual_body_is_dominated(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_gauge(&mut r, 3, 6);
        let body = DualSymmetricBody::new(&g).unwrap();
        for _ in 0..10 {
            let x = random_point(&mut r, g.dim());
            let qx = g.value(&x).unwrap();
            let nx = seminorm_value(&g, &x).unwrap();
            for f in body.vertices() {
                prop_assert!(body.polyhedron().contains_point(&-f).unwrap());
                prop_assert!(f.dot(&x).abs() <= qx);
                prop_assert!(f.dot(&x).abs() <= nx);
            }
        }
    }

    #[test]
    fn theta_differences_lie_in_the_kernel(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_gauge(&mut r, 4, 8);
        let k = seminorm_kernel(&g).unwrap();
        let t = theta_cone(&g).unwrap();
        for a in t.generators() {
            for b in t.generators() {
                let d: RVector = a - b;
                prop_assert!(k.contains(&d).unwrap());
                prop_assert!(in_kernel_primal(&g, &d).unwrap());
            }
        }
        for b in k.basis() {
            prop_assert!(in_kernel_primal(&g, b).unwrap());
            prop_assert!(num_traits::Zero::is_zero(&seminorm_value(&g, b).unwrap()));
        }
    }
}
