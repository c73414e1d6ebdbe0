use proptest::prelude::*;

use siltlab::algebra::{load_algebra, AlgebraData};
use siltlab::catalog::{build_catalog, Strategy as CatalogStrategy};
use siltlab::epi::torsion_closure;
use siltlab::hereditary::{euler_form, is_wide, triangle_check, wide_closure};
use siltlab::linalg::Matrix;
use siltlab::rep::{ext_dim, hom_dim, tau, Representation};
use siltlab::{par, Config};

const A3: &str = "vertices 1 2 3\narrow a 2 1\narrow b 3 2\n";
const KRONECKER: &str = "vertices 1 2\narrow a 1 2\narrow b 1 2\n";
const TWO_VERTEX: &str = "vertices 1 2\narrow α 1 2\narrow β 2 1\nrelation α*β*α\nrelation β*α*β\n";

fn alg(t: &str) -> AlgebraData {
    load_algebra(t, None, 64).unwrap()
}

/// A representation of a quiver without relations with random maps.
fn arb_rep(text: &'static str) -> impl Strategy<Value = Representation> {
    let a = alg(text);
    let n = a.n_vertices();
    (proptest::collection::vec(0usize..=3, n), any::<u64>()).prop_map(move |(dims, seed)| {
        let a = alg(text);
        let f = Config::default().field;
        let mut state = seed | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 5) as u32
        };
        let maps = a
            .arrows
            .iter()
            .map(|ar| {
                let vals: Vec<u32> = (0..dims[ar.source] * dims[ar.target]).map(|_| next()).collect();
                Matrix::from_fn(f, dims[ar.source], dims[ar.target], |i, j| vals[i * dims[ar.target] + j] % f.p())
            })
            .collect();
        Representation::new(&a, dims, maps).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn euler_form_a3(x in arb_rep(A3), y in arb_rep(A3)) {
        let a = alg(A3);
        let lhs = hom_dim(&a, &x, &y) as i64 - ext_dim(&a, &x, &y, 1) as i64;
        prop_assert_eq!(lhs, euler_form(&a, &x.dims, &y.dims));
    }

    #[test]
    fn euler_form_kronecker(x in arb_rep(KRONECKER), y in arb_rep(KRONECKER)) {
        let a = alg(KRONECKER);
        let lhs = hom_dim(&a, &x, &y) as i64 - ext_dim(&a, &x, &y, 1) as i64;
        prop_assert_eq!(lhs, euler_form(&a, &x.dims, &y.dims));
    }

    #[test]
    fn ar_formula_and_ext2(x in arb_rep(KRONECKER), y in arb_rep(KRONECKER)) {
        let a = alg(KRONECKER);
        prop_assert_eq!(ext_dim(&a, &x, &y, 1), hom_dim(&a, &y, &tau(&a, &x)));
        prop_assert_eq!(ext_dim(&a, &x, &y, 2), 0);
    }

    #[test]
    fn wide_closure_is_a_closure(seed in proptest::collection::vec(any::<bool>(), 6)) {
        let cfg = Config::default();
        let a = alg(A3);
        let cat = build_catalog(&a, CatalogStrategy::Knitting, &cfg).unwrap();
        let c = wide_closure(&a, &cat, &seed, &cfg).unwrap();
        prop_assert!(seed.iter().zip(&c).all(|(s, x)| !s || *x));
        prop_assert!(is_wide(&a, &cat, &c, &cfg).unwrap());
        prop_assert_eq!(wide_closure(&a, &cat, &c, &cfg).unwrap(), c);
    }

    #[test]
    fn torsion_closure_is_idempotent(seed in proptest::collection::vec(any::<bool>(), 6)) {
        let cfg = Config::default();
        let a = alg(A3);
        let cat = build_catalog(&a, CatalogStrategy::Knitting, &cfg).unwrap();
        let all = vec![true; cat.len()];
        let c = torsion_closure(&cat, &all, &seed);
        prop_assert!(seed.iter().zip(&c).all(|(s, x)| !s || *x));
        prop_assert_eq!(torsion_closure(&cat, &all, &c), c);
    }

    #[test]
    fn decomposition_recovers_multiplicities(mult in proptest::collection::vec(0usize..=2, 6)) {
        let cfg = Config::default();
        let a = alg(TWO_VERTEX);
        let cat = build_catalog(&a, CatalogStrategy::Nakayama, &cfg).unwrap();
        let m = cat.direct_sum(&a, &mult);
        prop_assume!(!m.is_zero());
        prop_assert_eq!(cat.decompose(&a, &m, &cfg).unwrap(), mult);
    }
}

#[test]
fn sequential_matches_parallel() {
    let cfg = Config::default();
    let a = alg(A3);
    let cat = build_catalog(&a, CatalogStrategy::Knitting, &cfg).unwrap();
    let run = |on: bool| {
        par::set_parallel(on);
        let r = triangle_check(&a, &cat, &cfg).unwrap();
        par::set_parallel(true);
        serde_json::to_string(&r).unwrap()
    };
    assert_eq!(run(false), run(true));
}
