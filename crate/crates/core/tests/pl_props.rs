use num_traits::One;
use ordkit::interval::{dot_add, q, random_monotone, random_u, random_uhat, PLMap, Q};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grid(d: i64) -> Vec<Q> {
    (0..=d).map(|k| q(k, d)).collect()
}

fn u_map(seed: u64) -> PLMap {
    random_u(&mut ChaCha8Rng::seed_from_u64(seed), 4, 12)
}

proptest! {
    #[test]
    fn compose_evaluates_pointwise(s1: u64, s2: u64) {
        let f = u_map(s1);
        let g = random_monotone(&mut ChaCha8Rng::seed_from_u64(s2), 4, 12);
        let fg = f.compose(&g);
        for x in grid(48) {
            prop_assert_eq!(fg.eval(&x), f.eval(&g.eval(&x)));
        }
    }

    #[test]
    fn compose_is_associative(s1: u64, s2: u64, s3: u64) {
        let (f, g, h) = (u_map(s1), u_map(s2), u_map(s3));
        let left = f.compose(&g).compose(&h);
        let right = f.compose(&g.compose(&h));
        prop_assert_eq!(left.to_json_string(), right.to_json_string());
        prop_assert!(f.compose(&g).in_u());
    }

    #[test]
    fn right_adjoint_is_galois(s: u64) {
        let f = u_map(s);
        let g = f.right_adjoint().unwrap();
        for x in grid(24) {
            for y in grid(24) {
                prop_assert_eq!(f.eval(&x) <= y, x <= g.eval(&y));
            }
        }
        let h = f.left_adjoint().unwrap();
        for x in grid(24) {
            for y in grid(24) {
                prop_assert_eq!(h.eval(&x) <= y, x <= f.eval(&y));
            }
        }
    }

    #[test]
    fn json_round_trips(s: u64) {
        let f = random_monotone(&mut ChaCha8Rng::seed_from_u64(s), 5, 16);
        let back = PLMap::from_json_str(&f.to_json_string()).unwrap();
        prop_assert_eq!(back.to_json_string(), f.to_json_string());
        for x in grid(32) {
            prop_assert_eq!(back.eval(&x), f.eval(&x));
        }
    }

    #[test]
    fn linf_rho_is_a_quasimetric(s1: u64, s2: u64, s3: u64) {
        let (f, g, h) = (u_map(s1), u_map(s2), u_map(s3));
        prop_assert_eq!(f.linf_rho(&f), Q::from_integer(0.into()));
        prop_assert!(f.linf_rho(&h) <= f.linf_rho(&g) + g.linf_rho(&h));
        prop_assert_eq!(f.le(&g), f.linf_rho(&g) == Q::from_integer(0.into()));
    }

    #[test]
    fn uhat_maps_compose_into_uhat(s1: u64, s2: u64) {
        let w = random_uhat(&mut ChaCha8Rng::seed_from_u64(s1), 3, 10);
        let u = u_map(s2);
        prop_assert!(w.in_uhat());
        prop_assert!(w.compose(&u).in_uhat());
        prop_assert!(u.compose(&w).in_uhat());
    }

    #[test]
    fn truncated_addition_composes(a in 0i64..=16, b in 0i64..=16) {
        let (r, s) = (q(a, 16), q(b, 16));
        let both = PLMap::trunc_add(&r).unwrap().compose(&PLMap::trunc_add(&s).unwrap());
        let sum = dot_add(&r, &s);
        let direct = PLMap::trunc_add(&sum).unwrap();
        for x in grid(32) {
            prop_assert_eq!(both.eval(&x), direct.eval(&x));
            prop_assert_eq!(direct.eval(&x), (&x + &sum).min(Q::one()));
        }
    }
}

#[test]
fn canonical_isos_split_the_interval() {
    let r = q(1, 3);
    let lower = PLMap::canonical_lower(&r).unwrap();
    let upper = PLMap::canonical_upper(&r).unwrap();
    assert_eq!(lower.eval(&q(1, 6)), q(1, 2));
    assert_eq!(lower.eval(&q(1, 2)), q(1, 1));
    assert_eq!(upper.eval(&q(1, 6)), q(0, 1));
    assert_eq!(upper.eval(&q(2, 3)), q(1, 2));
    assert!(lower.in_u() && upper.in_u());
    assert!(PLMap::canonical_lower(&q(0, 1)).is_err());
}
