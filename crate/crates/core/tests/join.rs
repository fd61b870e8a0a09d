use proptest::prelude::*;
use twodist_core::geometry::beta_star_numeric;
use twodist_core::graph::{complete_multipartite, Graph, MultipartiteSignature};
use twodist_core::invariants::profile;
use twodist_core::join::{closed_form_dims, dims_via_join, join_decompose, multipartite_dims, BetaStar};

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn arb_signature() -> impl Strategy<Value = MultipartiteSignature> {
    proptest::collection::vec(1usize..5, 1..5)
        .prop_filter("at most nine vertices", |p| p.iter().sum::<usize>() <= 9)
        .prop_map(|p| MultipartiteSignature::new(&p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multipartite_formula_matches_profile(sig in arb_signature()) {
        let g = complete_multipartite(&sig).unwrap();
        prop_assume!(g.n() >= 2);
        let p = profile(&g).unwrap();
        prop_assert_eq!(multipartite_dims(&sig), (p.dim_e, p.dim_s, p.dim_j));
    }

    #[test]
    fn join_dims_match_profile(a in arb_graph(1, 4), b in arb_graph(1, 4)) {
        let g = a.join(&b).unwrap();
        let p = profile(&g).unwrap();
        prop_assert_eq!(dims_via_join(&g).unwrap(), (p.dim_j, p.dim_s, p.dim_e));
        let fac = join_decompose(&g).unwrap();
        if let Some((j, s, e)) = closed_form_dims(&fac, g.n()) {
            prop_assert_eq!(Some(j), p.dim_j);
            if fac.k >= 2 {
                prop_assert_eq!((s, e), (p.dim_s, p.dim_e));
            }
        }
    }

    #[test]
    fn join_beta_is_factor_minimum(a in arb_graph(1, 4), b in arb_graph(1, 4)) {
        let g = a.join(&b).unwrap();
        prop_assume!(!g.is_complete());
        let part = |h: &Graph| if h.is_complete() { f64::INFINITY } else { beta_star_numeric(h).unwrap() };
        let want = part(&a).min(part(&b));
        prop_assert!((beta_star_numeric(&g).unwrap() - want).abs() <= 1e-8);
        prop_assert!((join_decompose(&g).unwrap().beta_star() - want).abs() <= 1e-8);
    }

    #[test]
    fn factors_partition_vertices(g in arb_graph(1, 8)) {
        let fac = join_decompose(&g).unwrap();
        let mut all: Vec<usize> = fac.factors.iter().flat_map(|f| f.vertices.clone()).collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        for w in fac.factors.windows(2) {
            prop_assert!(w[0].beta_star.value() <= w[1].beta_star.value() + 1e-8);
        }
        for f in &fac.factors[..fac.k] {
            prop_assert!(f.beta_star.ties(&fac.factors[0].beta_star));
        }
    }
}

#[test]
fn complete_factors_are_infinite() {
    let g = Graph::complete(4).unwrap();
    let fac = join_decompose(&g).unwrap();
    assert_eq!(fac.k, 0);
    assert!(fac.factors.iter().all(|f| f.beta_star == BetaStar::Infinite));
    assert_eq!(dims_via_join(&g).unwrap(), (None, 3, 3));
}

#[test]
fn star_signature() {
    let sig = MultipartiteSignature::new(&[1, 6]).unwrap();
    let g = complete_multipartite(&sig).unwrap();
    let p = profile(&g).unwrap();
    assert_eq!(multipartite_dims(&sig), (p.dim_e, p.dim_s, p.dim_j));
}
