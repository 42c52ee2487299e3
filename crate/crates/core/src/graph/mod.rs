//! Orthogonality graphs and measurement contexts.
//!
//! Vertices are rays; an edge joins two rays whose exact inner product is
//! zero. A *context* is a maximum clique, i.e. a set of omega(G) mutually
//! orthogonal rays; for the catalog sets omega equals the Hilbert-space
//! dimension, so contexts are complete measurement bases. Adjacency is a
//! dense bitset per vertex, which keeps the clique searches allocation-light
//! at the sizes that occur here (n <= a few hundred).

pub mod random;

use crate::bitset::BitSet;
use crate::catalog::{ray_to_string, VectorSet};
use crate::scalar::inner_product;
use serde_json::Value;
use thiserror::Error;

/// A maximum clique, stored as strictly increasing vertex indices.
pub type Context = Vec<usize>;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("malformed graph JSON: {0}")]
    Malformed(String),
    #[error("edge ({0}, {1}) is out of range for {2} vertices")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// An undirected graph with dense bitset adjacency.
#[derive(Clone, Debug)]
pub struct OrthoGraph {
    adjacency: Vec<BitSet>,
    source_labels: Option<Vec<String>>,
    /// Set when the graph is a disjoint union of parts with different
    /// clique numbers; only the larger-omega cliques are contexts then.
    omega_mismatch: bool,
}

impl OrthoGraph {
    /// Builds the orthogonality graph of a ray set: vertex `i` is ray `i`,
    /// with an edge whenever the exact Hermitian inner product vanishes.
    pub fn build(set: &VectorSet) -> OrthoGraph {
        let n = set.len();
        let rays = set.rays();
        let mut adjacency = vec![BitSet::new(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if inner_product(&rays[i], &rays[j]).is_zero() {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        OrthoGraph {
            adjacency,
            source_labels: Some(rays.iter().map(ray_to_string).collect()),
            omega_mismatch: false,
        }
    }

    /// Builds a graph from an explicit edge list (test and experiment
    /// helper; rejects self-loops and out-of-range endpoints).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<OrthoGraph, GraphError> {
        assert!(n >= 1, "graphs here are nonempty");
        let mut adjacency = vec![BitSet::new(n); n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n || v >= n {
                return Err(GraphError::EdgeOutOfRange(u, v, n));
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Ok(OrthoGraph {
            adjacency,
            source_labels: None,
            omega_mismatch: false,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adjacency[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Sorted edge list with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            for v in self.adjacency[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn source_labels(&self) -> Option<&[String]> {
        self.source_labels.as_deref()
    }

    pub fn omega_mismatch(&self) -> bool {
        self.omega_mismatch
    }

    /// The complement graph (used by the independence solver).
    pub fn complement(&self) -> OrthoGraph {
        let n = self.vertex_count();
        let mut adjacency = Vec::with_capacity(n);
        for v in 0..n {
            let mut row = BitSet::full(n);
            row.subtract(&self.adjacency[v]);
            row.remove(v);
            adjacency.push(row);
        }
        OrthoGraph {
            adjacency,
            source_labels: None,
            omega_mismatch: false,
        }
    }

    /// True when some edge has a common neighbor (i.e. the graph contains a
    /// triangle).
    pub fn has_triangle(&self) -> bool {
        for u in 0..self.vertex_count() {
            for v in self.adjacency[u].iter() {
                if v > u && !self.adjacency[u].is_disjoint(&self.adjacency[v]) {
                    return true;
                }
            }
        }
        false
    }

    /// Exact clique number via branch and bound with greedy coloring.
    pub fn clique_number(&self) -> usize {
        self.max_clique().len()
    }

    /// One maximum clique, deterministic (ties resolved by lowest index).
    pub fn max_clique(&self) -> Vec<usize> {
        clique_search(self, None).best
    }

    /// Subgraph induced by `verts`; vertex `i` of the result is `verts[i]`.
    pub fn induced(&self, verts: &[usize]) -> OrthoGraph {
        let k = verts.len();
        assert!(k >= 1, "induced subgraph must be nonempty");
        let mut adjacency = vec![BitSet::new(k); k];
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        OrthoGraph {
            adjacency,
            source_labels: None,
            omega_mismatch: false,
        }
    }

    /// All maximum cliques, each sorted ascending, the list sorted
    /// lexicographically.
    pub fn enumerate_contexts(&self) -> Vec<Context> {
        let omega = self.clique_number();
        let n = self.vertex_count();
        let mut out: Vec<Context> = Vec::new();
        let mut r: Vec<usize> = Vec::new();
        self.bron_kerbosch(
            &mut r,
            BitSet::full(n),
            BitSet::new(n),
            omega,
            &mut out,
        );
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        p: BitSet,
        x: BitSet,
        omega: usize,
        out: &mut Vec<Context>,
    ) {
        if p.is_empty() && x.is_empty() {
            if r.len() == omega {
                out.push(r.clone());
            }
            return;
        }
        if r.len() + p.count() < omega {
            return;
        }
        // Pivot on the vertex (from P or X) with the most candidates among
        // its neighbors; only non-neighbors of the pivot start branches.
        let mut pivot = usize::MAX;
        let mut best_cover = usize::MAX;
        for u in p.iter().chain(x.iter()) {
            let cover = p.count() - p.intersection_count(&self.adjacency[u]);
            if cover < best_cover {
                best_cover = cover;
                pivot = u;
            }
        }
        let mut candidates = p.clone();
        if pivot != usize::MAX {
            candidates.subtract(&self.adjacency[pivot]);
        }
        let mut p = p;
        let mut x = x;
        for v in candidates.iter() {
            let mut p2 = p.clone();
            p2.intersect_with(&self.adjacency[v]);
            let mut x2 = x.clone();
            x2.intersect_with(&self.adjacency[v]);
            r.push(v);
            self.bron_kerbosch(r, p2, x2, omega, out);
            r.pop();
            p.remove(v);
            x.insert(v);
        }
    }

    /// Disjoint union: vertices of `other` are shifted by `self`'s count.
    /// When the parts have different clique numbers the result is flagged,
    /// since only cliques of the larger size are contexts of the union.
    pub fn disjoint_union(&self, other: &OrthoGraph) -> OrthoGraph {
        let n1 = self.vertex_count();
        let n2 = other.vertex_count();
        let n = n1 + n2;
        let mut adjacency = vec![BitSet::new(n); n];
        for (u, row) in self.adjacency.iter().enumerate() {
            for v in row.iter() {
                adjacency[u].insert(v);
            }
        }
        for (u, row) in other.adjacency.iter().enumerate() {
            for v in row.iter() {
                adjacency[n1 + u].insert(n1 + v);
            }
        }
        let labels = match (&self.source_labels, &other.source_labels) {
            (Some(a), Some(b)) => Some(a.iter().chain(b.iter()).cloned().collect()),
            _ => None,
        };
        OrthoGraph {
            adjacency,
            source_labels: labels,
            omega_mismatch: self.omega_mismatch
                || other.omega_mismatch
                || self.clique_number() != other.clique_number(),
        }
    }

    /// DOT rendering; ray labels are attached when available.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph ortho {\n");
        if let Some(labels) = &self.source_labels {
            for (v, label) in labels.iter().enumerate() {
                s.push_str(&format!("  v{v} [label=\"{label}\"];\n"));
            }
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  v{u} -- v{v};\n"));
        }
        s.push_str("}\n");
        s
    }

    /// JSON rendering: vertex count, sorted edges, clique number and the
    /// sorted context list.
    pub fn to_json(&self) -> String {
        let edges: Vec<Value> = self
            .edges()
            .iter()
            .map(|&(u, v)| serde_json::json!([u, v]))
            .collect();
        let contexts = self.enumerate_contexts();
        let mut root = serde_json::json!({
            "n": self.vertex_count(),
            "edges": edges,
            "omega": self.clique_number(),
            "contexts": contexts,
        });
        if self.omega_mismatch {
            root["omega_mismatch"] = Value::Bool(true);
        }
        serde_json::to_string_pretty(&root).expect("graph JSON serialization cannot fail")
    }

    /// Parses the JSON produced by [`OrthoGraph::to_json`]. Only `n` and
    /// `edges` define the graph; `omega` and `contexts` are recomputable.
    pub fn from_json(text: &str) -> Result<OrthoGraph, GraphError> {
        let root: Value =
            serde_json::from_str(text).map_err(|e| GraphError::Malformed(e.to_string()))?;
        let n = root
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| GraphError::Malformed("missing integer field `n`".into()))?
            as usize;
        if n == 0 {
            return Err(GraphError::Malformed("graph must be nonempty".into()));
        }
        let edges_json = root
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| GraphError::Malformed("missing array field `edges`".into()))?;
        let mut edges = Vec::with_capacity(edges_json.len());
        for e in edges_json {
            let pair = e
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| GraphError::Malformed("edges must be [u, v] pairs".into()))?;
            let u = pair[0]
                .as_u64()
                .ok_or_else(|| GraphError::Malformed("edge endpoints must be integers".into()))?;
            let v = pair[1]
                .as_u64()
                .ok_or_else(|| GraphError::Malformed("edge endpoints must be integers".into()))?;
            edges.push((u as usize, v as usize));
        }
        OrthoGraph::from_edges(n, &edges)
    }
}

/// Outcome of the bounded maximum-clique search.
pub(crate) struct CliqueOutcome {
    pub best: Vec<usize>,
    /// False when the deadline interrupted the proof of optimality.
    pub optimal: bool,
    pub nodes: u64,
    /// Greedy-coloring bound on the clique number, valid regardless of
    /// whether the search completed.
    pub color_bound: usize,
}

/// Branch-and-bound maximum clique with a greedy-coloring bound; candidates
/// are processed in descending color. `deadline` interrupts the proof and
/// downgrades `optimal`.
pub(crate) fn clique_search(
    graph: &OrthoGraph,
    deadline: Option<std::time::Instant>,
) -> CliqueOutcome {
    let n = graph.vertex_count();
    let full = BitSet::full(n);
    let (_, root_colors) = color_sort(graph, &full);
    let color_bound = root_colors.last().copied().unwrap_or(0);
    let mut search = CliqueSearch {
        graph,
        best: greedy_clique(graph),
        nodes: 0,
        deadline,
        timed_out: false,
    };
    let mut r = Vec::new();
    search.expand(&mut r, full);
    CliqueOutcome {
        best: search.best,
        optimal: !search.timed_out,
        nodes: search.nodes,
        color_bound,
    }
}

struct CliqueSearch<'g> {
    graph: &'g OrthoGraph,
    best: Vec<usize>,
    nodes: u64,
    deadline: Option<std::time::Instant>,
    timed_out: bool,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, p: BitSet) {
        self.nodes += 1;
        if self.timed_out
            || (self.nodes.is_multiple_of(1024)
                && self
                    .deadline
                    .is_some_and(|d| std::time::Instant::now() >= d))
        {
            self.timed_out = true;
            return;
        }
        if p.is_empty() {
            if r.len() > self.best.len() {
                self.best = r.clone();
            }
            return;
        }
        let (order, colors) = color_sort(self.graph, &p);
        let mut p = p;
        for i in (0..order.len()).rev() {
            if r.len() + colors[i] <= self.best.len() {
                return;
            }
            let v = order[i];
            let mut p2 = p.clone();
            p2.intersect_with(self.graph.neighbors(v));
            r.push(v);
            self.expand(r, p2);
            r.pop();
            if self.timed_out {
                return;
            }
            p.remove(v);
        }
    }
}

/// Greedy coloring of the candidate set; returns vertices grouped by color
/// class with their 1-based color, ascending. The color of a vertex bounds
/// the largest clique containing it within the candidates.
fn color_sort(graph: &OrthoGraph, p: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut uncolored = p.clone();
    let mut order = Vec::with_capacity(p.count());
    let mut colors = Vec::with_capacity(p.count());
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut class_forbidden = BitSet::new(uncolored.universe());
        let members: Vec<usize> = uncolored.iter().collect();
        for v in members {
            if class_forbidden.contains(v) {
                continue;
            }
            order.push(v);
            colors.push(color);
            uncolored.remove(v);
            class_forbidden.union_with(graph.neighbors(v));
            class_forbidden.insert(v);
        }
    }
    (order, colors)
}

/// Deterministic greedy clique used to seed the branch and bound.
fn greedy_clique(graph: &OrthoGraph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut best: Vec<usize> = Vec::new();
    for start in 0..n {
        let mut clique = vec![start];
        let mut candidates = graph.neighbors(start).clone();
        while let Some(v) = candidates.first() {
            clique.push(v);
            candidates.intersect_with(graph.neighbors(v));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_builtin;

    fn graph_of(name: &str) -> OrthoGraph {
        OrthoGraph::build(&load_builtin(name).unwrap())
    }

    #[test]
    fn triangle_basics() {
        let g = OrthoGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.clique_number(), 3);
        assert_eq!(g.enumerate_contexts(), vec![vec![0, 1, 2]]);
        assert!(g.has_triangle());
    }

    #[test]
    fn edgeless_graph_has_singleton_contexts() {
        let g = OrthoGraph::from_edges(5, &[]).unwrap();
        assert_eq!(g.clique_number(), 1);
        assert_eq!(
            g.enumerate_contexts(),
            vec![vec![0], vec![1], vec![2], vec![3], vec![4]]
        );
        assert!(!g.has_triangle());
    }

    #[test]
    fn five_cycle_contexts_are_its_edges() {
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
        let g = OrthoGraph::from_edges(5, &edges).unwrap();
        assert_eq!(g.clique_number(), 2);
        let contexts = g.enumerate_contexts();
        assert_eq!(
            contexts,
            vec![vec![0, 1], vec![0, 4], vec![1, 2], vec![2, 3], vec![3, 4]]
        );
    }

    #[test]
    fn catalog_clique_numbers_equal_dimension() {
        for (name, d) in [
            ("peres33", 3),
            ("cabello18", 4),
            ("peres_mermin24", 4),
            ("stabilizer2q", 4),
        ] {
            assert_eq!(graph_of(name).clique_number(), d, "{name}");
        }
    }

    #[test]
    fn contexts_are_maximum_cliques_of_orthogonal_rays() {
        let set = load_builtin("cabello18").unwrap();
        let g = OrthoGraph::build(&set);
        let contexts = g.enumerate_contexts();
        assert!(!contexts.is_empty());
        for c in &contexts {
            assert_eq!(c.len(), 4);
            for (k, &i) in c.iter().enumerate() {
                for &j in &c[k + 1..] {
                    assert!(g.has_edge(i, j));
                    assert!(crate::scalar::inner_product(
                        &set.rays()[i],
                        &set.rays()[j]
                    )
                    .is_zero());
                }
            }
        }
        // Every ray participates in some context.
        for v in 0..g.vertex_count() {
            assert!(contexts.iter().any(|c| c.contains(&v)), "ray {v} unused");
        }
    }

    #[test]
    fn stabilizer_graph_has_105_contexts() {
        let g = graph_of("stabilizer2q");
        assert_eq!(g.clique_number(), 4);
        assert_eq!(g.enumerate_contexts().len(), 105);
    }

    #[test]
    fn e8_graph_has_2025_contexts() {
        let g = graph_of("e8");
        assert_eq!(g.clique_number(), 8);
        let contexts = g.enumerate_contexts();
        assert_eq!(contexts.len(), 2025);
        // Regular structure: every ray sits in the same number of bases.
        let per_vertex = contexts.iter().flatten().filter(|&&v| v == 0).count();
        assert_eq!(per_vertex * 120, 2025 * 8);
    }

    #[test]
    fn disjoint_union_offsets_and_flags() {
        let t = OrthoGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let p = OrthoGraph::from_edges(2, &[(0, 1)]).unwrap();
        let u = t.disjoint_union(&p);
        assert_eq!(u.vertex_count(), 5);
        assert!(u.has_edge(3, 4));
        assert!(!u.has_edge(2, 3));
        assert!(u.omega_mismatch());
        let same = t.disjoint_union(&t);
        assert!(!same.omega_mismatch());
        assert_eq!(same.clique_number(), 3);
        assert_eq!(
            same.enumerate_contexts(),
            vec![vec![0, 1, 2], vec![3, 4, 5]]
        );
    }

    #[test]
    fn json_round_trip_reproduces_the_graph() {
        let g = graph_of("cabello18");
        let text = g.to_json();
        let back = OrthoGraph::from_json(&text).unwrap();
        assert_eq!(back.vertex_count(), g.vertex_count());
        assert_eq!(back.edges(), g.edges());
        assert_eq!(back.enumerate_contexts(), g.enumerate_contexts());
    }

    #[test]
    fn json_rejects_bad_input() {
        assert!(OrthoGraph::from_json("[]").is_err());
        assert!(OrthoGraph::from_json(r#"{"n": 0, "edges": []}"#).is_err());
        assert!(OrthoGraph::from_json(r#"{"n": 2, "edges": [[0, 2]]}"#).is_err());
        assert!(matches!(
            OrthoGraph::from_edges(3, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        ));
    }

    #[test]
    fn dot_output_lists_vertices_and_edges() {
        let g = graph_of("cabello18");
        let dot = g.to_dot();
        assert!(dot.starts_with("graph ortho {"));
        assert!(dot.contains("v0 [label=\"(0, 0, 0, 1)\"];"));
        assert!(dot.contains(" -- "));
        assert!(dot.trim_end().ends_with('}'));
    }

    #[test]
    fn complement_inverts_adjacency() {
        let g = OrthoGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let c = g.complement();
        assert!(!c.has_edge(0, 1));
        assert!(c.has_edge(0, 2));
        assert!(c.has_edge(0, 3));
        assert_eq!(g.edge_count() + c.edge_count(), 4 * 3 / 2);
    }
}
