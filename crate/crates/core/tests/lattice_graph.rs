mod common;

use common::*;
use diamfree::families::{s_set, u_set, MatchingCase};
use diamfree::lattice::{diameter_sq, generate, squared_distance, ColumnCounts};
use diamfree::{DiameterGraph, Signature, TritVector};
use proptest::prelude::*;

fn signature(max_n: usize) -> impl Strategy<Value = Signature> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, m)| (Just(n), Just(m), 0..=n - m))
        .prop_map(|(n, m, k)| Signature::new(m, k, n - m - k).unwrap())
}

fn shuffled(sig: Signature) -> impl Strategy<Value = TritVector> {
    let mut base = vec![-1i8; sig.m()];
    base.extend(std::iter::repeat_n(0, sig.k()));
    base.extend(std::iter::repeat_n(1, sig.l()));
    Just(base).prop_shuffle().prop_map(|e| TritVector::from_entries(&e).unwrap())
}

fn pair(max_n: usize) -> impl Strategy<Value = (TritVector, TritVector)> {
    signature(max_n).prop_flat_map(|s| (shuffled(s), shuffled(s)))
}

fn subset_of(sig: Signature, max: usize) -> impl Strategy<Value = Vec<TritVector>> {
    let all = generate(sig).unwrap();
    let n = all.len();
    proptest::sample::subsequence(all, 1..=n.min(max))
}

proptest! {
    #[test]
    fn squared_distance_matches_entrywise_sum((x, y) in pair(12)) {
        let d = squared_distance(&x, &y).unwrap();
        prop_assert_eq!(d, sq_dist(&x.entries(), &y.entries()));
        prop_assert_eq!(d, squared_distance(&y, &x).unwrap());
        prop_assert!(d <= 4 * x.len() as u32);
        prop_assert_eq!(d == 0, x == y);
    }

    #[test]
    fn generate_matches_a_scan_of_all_words(s in signature(8)) {
        let got: Vec<Vec<i8>> = generate(s).unwrap().iter().map(TritVector::entries).collect();
        let mut want = scan_lattice(s.m(), s.k(), s.l());
        want.sort();
        prop_assert_eq!(got.len() as u128, multinomial(s.m(), s.k(), s.l()));
        prop_assert_eq!(got, want);
    }

    #[test]
    fn zero_counts_sum_to_k_times_size(s in signature(7).prop_filter("nonempty", |s| s.cardinality() > 0)
        .prop_flat_map(|s| (Just(s), subset_of(s, 40))))
    {
        let (s, pts) = s;
        let c = ColumnCounts::of(s.n(), &pts);
        prop_assert_eq!(c.zero.iter().sum::<usize>(), s.k() * pts.len());
        for i in 0..s.n() {
            prop_assert_eq!(c.neg[i] + c.zero[i] + c.pos[i], pts.len());
        }
    }

    #[test]
    fn diameter_is_symmetric_under_negation(s in signature(7).prop_filter("two points", |s| s.cardinality() >= 2)) {
        let a = diameter_sq(&generate(s).unwrap()).unwrap();
        let b = diameter_sq(&generate(s.negated()).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn graph_edges_match_pairwise_distances(
        (pts, t) in signature(6).prop_filter("nonempty", |s| s.cardinality() > 0)
            .prop_flat_map(|s| (subset_of(s, 30), 1u32..=24))
    ) {
        let g = DiameterGraph::build(&pts, t).unwrap();
        let e: Vec<Vec<i8>> = pts.iter().map(TritVector::entries).collect();
        prop_assert_eq!(adjacency_of(&g), adjacency(&e, t));
        let higher = DiameterGraph::build(&pts, t + 1).unwrap();
        prop_assert!(higher.edges().all(|(u, v)| g.has_edge(u, v)));
        let back = DiameterGraph::import(&g.export()).unwrap();
        prop_assert_eq!(adjacency_of(&back), adjacency_of(&g));
    }
}

#[test]
fn l1k2_adjacency_rule() {
    // x ~ y iff each -1 sits on a +1 of the other and the remaining +1s differ
    for k in 0..=6 {
        let pts = generate(Signature::new(1, k, 2).unwrap()).unwrap();
        let g = DiameterGraph::build(&pts, 10).unwrap();
        for (i, x) in pts.iter().enumerate() {
            for (j, y) in pts.iter().enumerate() {
                let rule = i != j
                    && x.neg_mask() & y.pos_mask() != 0
                    && y.neg_mask() & x.pos_mask() != 0
                    && (x.pos_mask() & !y.neg_mask()) & (y.pos_mask() & !x.neg_mask()) == 0;
                assert_eq!(g.has_edge(i, j), rule, "{x} {y}");
            }
        }
    }
}

#[test]
fn isolated_vertices_in_the_matching_graphs() {
    let s = s_set(2, 1).unwrap();
    let u = u_set(2, 2).unwrap();
    let pts: Vec<TritVector> = s.members().iter().chain(u.members()).copied().collect();
    let g = DiameterGraph::build(&pts, 10).unwrap();
    let iso = g.isolated_vertices();
    assert_eq!(iso.len(), 3);
    assert!(iso.iter().all(|&v| v < s.len()));
    let left: Vec<usize> = (0..s.len()).collect();
    let right: Vec<usize> = (s.len()..pts.len()).collect();
    assert!(g.bipartite_view(&left, &right).is_ok());

    let (left, right) = MatchingCase::Third.candidates(4).unwrap();
    let pts: Vec<TritVector> = left.members().iter().chain(right.members()).copied().collect();
    let g = DiameterGraph::build(&pts, 10).unwrap();
    assert_eq!(g.isolated_vertices().len(), 4);
}

#[test]
fn views_reject_internal_edges() {
    let g = DiameterGraph::of_lattice(Signature::new(1, 1, 2).unwrap()).unwrap();
    let (u, v) = g.edges().next().unwrap();
    let rest: Vec<usize> = (0..g.len()).filter(|&w| w != u && w != v).collect();
    assert!(g.bipartite_view(&[u, v], &rest).is_err());
    assert_eq!(g.bipartite_view(&[], &[]).unwrap().vertex_count(), 0);
    let s3 = s_set(3, 1).unwrap();
    let u3 = u_set(3, 3).unwrap();
    let pts: Vec<TritVector> = s3.members().iter().chain(u3.members()).copied().collect();
    let h = DiameterGraph::build(&pts, 10).unwrap();
    let left: Vec<usize> = (0..s3.len()).collect();
    let right: Vec<usize> = (s3.len()..pts.len()).collect();
    assert!(h.bipartite_view(&left, &right).is_ok());
}
