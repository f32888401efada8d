mod support;

use std::collections::BTreeMap;

use ltq_core::routing::{f_set, tau, v_set, v_set_size, CongestionOptions};
use ltq_core::{canonical_path, congestion_report, edge_congestion, Edge, LtqGraph, VertexLabel};
use proptest::prelude::*;
use support::{adjacency, lambda, oracle_loads, oracle_path};

fn label(x: u64, n: usize) -> VertexLabel {
    VertexLabel::from_decimal(x, n).unwrap()
}

/// For a fixed target `v`: `hits[w][l]` counts sources `u` with
/// `lambda(u, v) = l` whose oracle path to `v` passes through `w`.
fn hits_towards(n: usize, adj: &[Vec<u64>], v: u64) -> Vec<Vec<usize>> {
    let mut hits = vec![vec![0; n + 1]; 1 << n];
    for u in 0..1u64 << n {
        if u == v {
            continue;
        }
        let l = lambda(n, u, v);
        for w in oracle_path(n, adj, u, v) {
            hits[w as usize][l] += 1;
        }
    }
    hits
}

#[test]
fn f_set_sizes_are_powers_of_two() {
    for n in 2..=7 {
        let adj = adjacency(n);
        for v in 0..1u64 << n {
            let hits = hits_towards(n, &adj, v);
            for w in 0..1u64 << n {
                if w == v {
                    continue;
                }
                let d = lambda(n, w, v);
                for k in 1..=d {
                    let size: usize = hits[w as usize][k..=d].iter().sum();
                    assert_eq!(size, 1 << (d - k), "F({v}, {w}; {k}, {d}) in LTQ_{n}");
                }
            }
        }
    }
}

#[test]
fn f_set_matches_the_oracle() {
    for n in 2..=5 {
        let adj = adjacency(n);
        for v in 0..1u64 << n {
            for w in 0..1u64 << n {
                if w == v {
                    continue;
                }
                for t1 in 1..=n {
                    for t2 in t1..=n {
                        let want: Vec<u64> = (0..1u64 << n)
                            .filter(|&u| u != v && (t1..=t2).contains(&lambda(n, u, v)))
                            .filter(|&u| oracle_path(n, &adj, u, v).contains(&w))
                            .collect();
                        let got: Vec<u64> =
                            f_set(&label(v, n), &label(w, n), t1, t2).unwrap().iter().map(VertexLabel::to_decimal).collect();
                        assert_eq!(got, want, "F({v}, {w}; {t1}, {t2}) in LTQ_{n}");
                    }
                }
            }
        }
    }
}

#[test]
fn paths_match_the_oracle() {
    for n in 2..=7 {
        let adj = adjacency(n);
        for u in 0..1u64 << n {
            for v in 0..1u64 << n {
                let got: Vec<u64> =
                    canonical_path(&label(u, n), &label(v, n)).unwrap().vertices().iter().map(VertexLabel::to_decimal).collect();
                assert_eq!(got, oracle_path(n, &adj, u, v), "P({u}, {v}) in LTQ_{n}");
            }
        }
    }
}

#[test]
fn v_sets_follow_the_first_differing_position() {
    for n in 2..=7 {
        let adj = adjacency(n);
        let g = LtqGraph::new(n).unwrap();
        let through: Vec<Vec<usize>> = (0..1u64 << n).map(|v| hits_towards(n, &adj, v).iter().map(|h| h.iter().sum()).collect()).collect();
        for e in g.edges() {
            for (x, y) in [(e.lo(), e.hi()), (e.hi(), e.lo())] {
                let d = lambda(n, x.to_decimal(), y.to_decimal());
                let want: Vec<u64> = (0..1u64 << n).filter(|&v| v != x.to_decimal() && lambda(n, v, x.to_decimal()) == d).collect();
                let got: Vec<u64> = v_set(&x, &y).unwrap().iter().map(VertexLabel::to_decimal).collect();
                assert_eq!(got, want, "V({x}, {y})");
                assert_eq!(v_set_size(&x, &y).unwrap(), 1 << (n - d));
                for &v in &want {
                    assert_eq!(through[v as usize][x.to_decimal() as usize], 1 << (d - 1), "paths into {v} through {x}");
                }
            }
        }
    }
}

#[test]
fn congestion_matches_the_oracle() {
    for n in 2..=6 {
        let want = oracle_loads(n);
        let report = congestion_report(n, CongestionOptions::default()).unwrap();
        assert_eq!(report.per_edge.len(), n << (n - 1));
        for (e, load) in &report.per_edge {
            let (x, y) = (e.lo().to_decimal(), e.hi().to_decimal());
            assert_eq!(load.p_xy, want[&(x, y)], "{e}");
            assert_eq!(load.p_yx, want[&(y, x)], "{e}");
            assert_eq!(load.total, load.p_xy + load.p_yx);
        }
        assert_eq!(report.max_congestion, report.per_edge.values().map(|l| l.total).max().unwrap());
    }
}

#[test]
fn every_edge_carries_two_to_the_n() {
    for n in 2..=9 {
        let report = congestion_report(n, CongestionOptions { max_n: 10, jobs: 4 }).unwrap();
        for (e, load) in &report.per_edge {
            assert_eq!((load.p_xy, load.p_yx, load.total), (1 << (n - 1), 1 << (n - 1), 1 << n), "{e} in LTQ_{n}");
        }
        assert_eq!(report.max_congestion, 1 << n);
    }
}

#[test]
fn worker_count_does_not_change_the_report() {
    let one = congestion_report(6, CongestionOptions { max_n: 10, jobs: 1 }).unwrap();
    for jobs in [2, 3, 7, 64, 1000] {
        assert_eq!(congestion_report(6, CongestionOptions { max_n: 10, jobs }).unwrap(), one);
    }
}

#[test]
fn single_edge_loads_agree_with_the_report() {
    let report = congestion_report(5, CongestionOptions::default()).unwrap();
    let picks: BTreeMap<Edge, _> = report.per_edge.iter().step_by(7).map(|(e, l)| (*e, *l)).collect();
    for (e, load) in picks {
        assert_eq!(edge_congestion(5, &e).unwrap(), load);
    }
}

#[test]
fn documented_paths() {
    let p = canonical_path(&"000".parse().unwrap(), &"111".parse().unwrap()).unwrap();
    let names: Vec<String> = p.vertices().iter().map(ToString::to_string).collect();
    assert_eq!(names, ["000", "100", "110", "111"]);
    let u: VertexLabel = "0101".parse().unwrap();
    let p = canonical_path(&u, &u).unwrap();
    assert!(p.is_empty());
    assert_eq!(p.vertices(), [u]);
}

fn label_pair() -> impl Strategy<Value = (VertexLabel, VertexLabel)> {
    (2usize..=32).prop_flat_map(|n| (0u64..1 << n, 0u64..1 << n).prop_map(move |(a, b)| (label(a, n), label(b, n))))
}

proptest! {
    #[test]
    fn lambda_strictly_increases_along_paths((u, v) in label_pair()) {
        let p = canonical_path(&u, &v).unwrap();
        let lam = p.lambda_sequence();
        prop_assert!(lam.windows(2).all(|w| w[0] < w[1]), "{:?}", lam);
        prop_assert!(p.len() <= u.dim());
        prop_assert_eq!(p.vertices().first(), Some(&u));
        prop_assert_eq!(p.vertices().last(), Some(&v));
    }

    #[test]
    fn each_step_is_forced((u, v) in label_pair()) {
        // the successor is the only neighbor sharing the first differing position with v
        let p = canonical_path(&u, &v).unwrap();
        for w in p.vertices().windows(2) {
            let i = ltq_core::label::lambda_index(&w[0], &v).unwrap();
            let forced: Vec<VertexLabel> = w[0]
                .neighbors()
                .into_iter()
                .filter(|z| ltq_core::label::lambda_index(&w[0], z).unwrap() == i)
                .collect();
            prop_assert_eq!(forced, vec![w[1]]);
            prop_assert_eq!(tau(&v, &w[0]).unwrap(), w[1]);
        }
    }
}
