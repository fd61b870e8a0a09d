use std::f64::consts::SQRT_2;

use proptest::prelude::*;
use twodist_core::error::Error;
use twodist_core::geometry::{
    jspherical_embedding, kuperberg_decompose, min_enclosing_ball, min_enclosing_ball_frank_wolfe, phi, realize,
    FactorType,
};
use twodist_core::graph::{parse_graph6, Graph};
use twodist_core::join::join_decompose;

fn arb_points() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1usize..6, 1usize..12)
        .prop_flat_map(|(d, n)| proptest::collection::vec(proptest::collection::vec(-3.0f64..3.0, d), n))
}

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

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ball_encloses_and_is_tight(pts in arb_points()) {
        let b = min_enclosing_ball(&pts);
        for p in &pts {
            prop_assert!(dist(p, &b.center) <= b.radius * (1.0 + 1e-9) + 1e-12);
        }
        let fw = min_enclosing_ball_frank_wolfe(&pts, 20000, 1e-14);
        prop_assert!(b.radius <= fw.radius + 1e-9);
        prop_assert!(b.duality_gap <= 1e-8 * b.radius.max(1.0).powi(2));
        prop_assert!(!b.support.is_empty());
    }

    #[test]
    fn realization_meets_distances(g in arb_graph(1, 8), x in 1.5f64..3.0) {
        prop_assume!(!g.is_complete());
        if let Ok(cfg) = realize(&g, x, SQRT_2) {
            prop_assert!(cfg.distance_residual(&g) < 1e-8);
            prop_assert!(cfg.rank < g.n().max(1));
        }
    }

    #[test]
    fn phi_is_nondecreasing(g in arb_graph(2, 7)) {
        prop_assume!(!g.is_complete());
        let n = g.n() as f64;
        let base = phi(&g, SQRT_2).unwrap();
        prop_assert!((base - ((n - 1.0) / n).sqrt()).abs() < 1e-9);
        let mut prev = base;
        for i in 1..12 {
            let x = SQRT_2 * (1.0 + 0.02 * i as f64);
            match phi(&g, x) {
                Ok(r) => {
                    prop_assert!(r >= prev - 1e-10);
                    prev = r;
                }
                Err(Error::Infeasible(_)) => break,
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }

    #[test]
    fn jspherical_points_are_unit(g in arb_graph(2, 7)) {
        prop_assume!(!g.is_complete());
        let cfg = jspherical_embedding(&g).unwrap();
        for p in &cfg.points {
            prop_assert!((p.iter().map(|v| v * v).sum::<f64>().sqrt() - 1.0).abs() < 1e-7);
        }
        prop_assert!(cfg.distance_residual(&g) < 1e-7);
        prop_assert!(cfg.min_distance() >= SQRT_2 - 1e-7);
    }

    #[test]
    fn point_factors_follow_graph_factors(g in arb_graph(2, 7)) {
        prop_assume!(!g.is_complete());
        let cfg = jspherical_embedding(&g).unwrap();
        let pf = kuperberg_decompose(&cfg).unwrap();
        let gf = join_decompose(&g).unwrap();
        prop_assert_eq!(pf.factors.len(), gf.factors.len());
        prop_assert_eq!(pf.dimension + pf.k, g.n());
    }
}

#[test]
fn octahedron_factors_are_type_one() {
    let g = parse_graph6("E}lw").unwrap();
    assert!(g.is_complete_multipartite());
    let cfg = jspherical_embedding(&g).unwrap();
    let pf = kuperberg_decompose(&cfg).unwrap();
    assert_eq!(pf.factors.len(), 3);
    assert!(pf.factors.iter().all(|f| f.kind == FactorType::I));
}

#[test]
fn collinear_ball() {
    let b = min_enclosing_ball(&[vec![0.0], vec![4.0], vec![1.0]]);
    assert!((b.center[0] - 2.0).abs() < 1e-12 && (b.radius - 2.0).abs() < 1e-12);
}

#[test]
fn infeasible_distances() {
    // 3 > 1 + 1 breaks the triangle inequality.
    let g = Graph::path(3).unwrap();
    assert!(matches!(realize(&g, 3.0, 1.0), Err(Error::Infeasible(_))));
}
