//! Seeded random graph generators for tests and experiments.
//!
//! Both generators are deterministic functions of their arguments; tests
//! freeze seeds so failures reproduce exactly.

use super::OrthoGraph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Erdos-Renyi style graph: each of the `n * (n-1) / 2` candidate edges is
/// kept with probability `edge_prob`.
pub fn random_graph(n: usize, edge_prob: f64, seed: u64) -> OrthoGraph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < edge_prob {
                edges.push((u, v));
            }
        }
    }
    OrthoGraph::from_edges(n, &edges).expect("generated edges are in range")
}

/// Random triangle-free graph: candidate edges are visited in shuffled
/// order and kept whenever their endpoints have no common neighbor yet.
/// `target_edges` caps the number of insertions.
pub fn random_triangle_free(n: usize, target_edges: usize, seed: u64) -> OrthoGraph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    // Fisher-Yates shuffle.
    for i in (1..candidates.len()).rev() {
        let j = rng.random_range(0..=i);
        candidates.swap(i, j);
    }
    let mut adj = vec![crate::bitset::BitSet::new(n); n];
    let mut edges = Vec::new();
    for (u, v) in candidates {
        if edges.len() >= target_edges {
            break;
        }
        if adj[u].is_disjoint(&adj[v]) {
            adj[u].insert(v);
            adj[v].insert(u);
            edges.push((u, v));
        }
    }
    OrthoGraph::from_edges(n, &edges).expect("generated edges are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a = random_graph(10, 0.4, 7);
        let b = random_graph(10, 0.4, 7);
        assert_eq!(a.edges(), b.edges());
        let c = random_graph(10, 0.4, 8);
        assert_ne!(a.edges(), c.edges());
    }

    #[test]
    fn triangle_free_generator_avoids_triangles() {
        for seed in 0..10 {
            let g = random_triangle_free(24, 60, seed);
            assert!(!g.has_triangle(), "seed {seed}");
            assert!(g.edge_count() > 0);
        }
    }
}
