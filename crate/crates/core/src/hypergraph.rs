//! Directed hypergraphs, incidence matrices and Laplacians.
//!
//! A hyperedge is a pair of disjoint endsets (sources, targets). The signed
//! incidence matrix carries `+1` for targets and `-1` for sources, and the
//! Laplacian is `ℐℐᵀ`, computed in exact integers.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::IntMatrix;

/// Exact symmetric integer matrix (Laplacians, dual Laplacians).
pub type SymIntMatrix = IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("hyperedge {edge}: vertex {vertex} is both a source and a target")]
    Overlap { edge: usize, vertex: usize },
    #[error("hyperedge {edge}: vertex index {vertex} out of range (#V = {n})")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("hyperedge index {edge} out of range (#E = {count})")]
    EdgeOutOfRange { edge: usize, count: usize },
    #[error("vertex index {vertex} out of range (#V = {n})")]
    NoSuchVertex { vertex: usize, n: usize },
    #[error("vertex {vertex} does not belong to hyperedge {edge}")]
    VertexNotInEdge { vertex: usize, edge: usize },
    #[error("vertex lists differ")]
    VertexMismatch,
    #[error("incidence entry ({row}, {col}) = {value} is not in {{-1, 0, 1}}")]
    BadIncidenceEntry { row: usize, col: usize, value: i64 },
    #[error("incidence matrix has {rows} rows but {labels} vertex labels")]
    LabelCount { rows: usize, labels: usize },
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("hypergraph is not a graph: hyperedge {0} does not have exactly one source and one target")]
    NotAGraph(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Hyperedge {
    pub sources: BTreeSet<usize>,
    pub targets: BTreeSet<usize>,
}

impl Hyperedge {
    pub fn new(
        sources: impl IntoIterator<Item = usize>,
        targets: impl IntoIterator<Item = usize>,
    ) -> Self {
        Hyperedge {
            sources: sources.into_iter().collect(),
            targets: targets.into_iter().collect(),
        }
    }

    /// Ordinary directed edge `s → t`.
    pub fn edge(s: usize, t: usize) -> Self {
        Self::new([s], [t])
    }

    /// `deg(e) = #e_sour + #e_targ`.
    pub fn degree(&self) -> usize {
        self.sources.len() + self.targets.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.sources.contains(&v) || self.targets.contains(&v)
    }

    /// Incidence sign of `v`: `+1` target, `-1` source, `0` otherwise.
    pub fn sign(&self, v: usize) -> i64 {
        if self.targets.contains(&v) {
            1
        } else if self.sources.contains(&v) {
            -1
        } else {
            0
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.sources.iter().chain(self.targets.iter()).copied()
    }

    pub fn reversed(&self) -> Self {
        Hyperedge {
            sources: self.targets.clone(),
            targets: self.sources.clone(),
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.sources.len() == self.targets.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedHypergraph {
    vertices: Vec<String>,
    hyperedges: Vec<Hyperedge>,
}

/// Signed `#V × #E` incidence matrix with entries in `{-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix(IntMatrix);

impl IncidenceMatrix {
    /// Validates that all entries lie in `{-1, 0, 1}`.
    pub fn new(m: IntMatrix) -> Result<Self, HypergraphError> {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let value = m[(i, j)];
                if !(-1..=1).contains(&value) {
                    return Err(HypergraphError::BadIncidenceEntry { row: i, col: j, value });
                }
            }
        }
        Ok(IncidenceMatrix(m))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn transpose(&self) -> IncidenceMatrix {
        IncidenceMatrix(self.0.transpose())
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

impl DirectedHypergraph {
    /// Builds and validates a hypergraph.
    pub fn new(vertices: Vec<String>, hyperedges: Vec<Hyperedge>) -> Result<Self, HypergraphError> {
        let mut seen = BTreeSet::new();
        for label in &vertices {
            if !seen.insert(label.as_str()) {
                return Err(HypergraphError::DuplicateLabel(label.clone()));
            }
        }
        let n = vertices.len();
        for (k, e) in hyperedges.iter().enumerate() {
            for v in e.vertices() {
                if v >= n {
                    return Err(HypergraphError::VertexOutOfRange { edge: k, vertex: v, n });
                }
            }
            if let Some(&v) = e.sources.intersection(&e.targets).next() {
                return Err(HypergraphError::Overlap { edge: k, vertex: v });
            }
        }
        Ok(DirectedHypergraph {
            vertices,
            hyperedges,
        })
    }

    /// Hypergraph on `n` vertices labelled `v1, …, vn`.
    pub fn with_vertex_count(n: usize, hyperedges: Vec<Hyperedge>) -> Result<Self, HypergraphError> {
        Self::new(default_labels(n), hyperedges)
    }

    /// Hypergraph with no hyperedges.
    pub fn empty(n: usize) -> Self {
        DirectedHypergraph {
            vertices: default_labels(n),
            hyperedges: Vec::new(),
        }
    }

    /// Reads a hypergraph back from a signed incidence matrix.
    pub fn from_incidence(
        vertices: Option<Vec<String>>,
        inc: &IntMatrix,
    ) -> Result<Self, HypergraphError> {
        let inc = IncidenceMatrix::new(inc.clone())?;
        let m = inc.matrix();
        let labels = vertices.unwrap_or_else(|| default_labels(m.rows()));
        if labels.len() != m.rows() {
            return Err(HypergraphError::LabelCount {
                rows: m.rows(),
                labels: labels.len(),
            });
        }
        let edges = (0..m.cols())
            .map(|j| {
                let mut e = Hyperedge::default();
                for i in 0..m.rows() {
                    match m[(i, j)] {
                        1 => {
                            e.targets.insert(i);
                        }
                        -1 => {
                            e.sources.insert(i);
                        }
                        _ => {}
                    }
                }
                e
            })
            .collect();
        Self::new(labels, edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|l| l == label)
    }

    pub fn incidence(&self) -> IncidenceMatrix {
        let mut m = IntMatrix::zeros(self.vertex_count(), self.edge_count());
        for (j, e) in self.hyperedges.iter().enumerate() {
            for &v in &e.targets {
                m[(v, j)] = 1;
            }
            for &v in &e.sources {
                m[(v, j)] = -1;
            }
        }
        IncidenceMatrix(m)
    }

    /// `ℒ = ℐℐᵀ`.
    pub fn laplacian(&self) -> SymIntMatrix {
        let i = self.incidence().into_matrix();
        &i * &i.transpose()
    }

    /// `ℒ* = ℐᵀℐ`.
    pub fn dual_laplacian(&self) -> SymIntMatrix {
        let i = self.incidence().into_matrix();
        &i.transpose() * &i
    }

    /// Dual hypergraph: hyperedges become vertices `e1, …` and each vertex
    /// becomes a hyperedge, so that the incidence matrix is transposed.
    pub fn dual(&self) -> DirectedHypergraph {
        let labels = (1..=self.edge_count()).map(|k| format!("e{k}")).collect();
        let mut edges = vec![Hyperedge::default(); self.vertex_count()];
        for (k, e) in self.hyperedges.iter().enumerate() {
            for &v in &e.sources {
                edges[v].sources.insert(k);
            }
            for &v in &e.targets {
                edges[v].targets.insert(k);
            }
        }
        DirectedHypergraph {
            vertices: labels,
            hyperedges: edges,
        }
    }

    /// Concatenates the hyperedge multisets.
    pub fn union(&self, other: &Self) -> Result<Self, HypergraphError> {
        if self.vertices != other.vertices {
            return Err(HypergraphError::VertexMismatch);
        }
        let mut edges = self.hyperedges.clone();
        edges.extend(other.hyperedges.iter().cloned());
        Ok(DirectedHypergraph {
            vertices: self.vertices.clone(),
            hyperedges: edges,
        })
    }

    /// Multiset intersection: each hyperedge kept with the minimum of its two
    /// multiplicities, in the order of first appearance in `self`.
    pub fn intersection(&self, other: &Self) -> Result<Self, HypergraphError> {
        if self.vertices != other.vertices {
            return Err(HypergraphError::VertexMismatch);
        }
        let mut available: BTreeMap<&Hyperedge, usize> = BTreeMap::new();
        for e in &other.hyperedges {
            *available.entry(e).or_default() += 1;
        }
        let mut edges = Vec::new();
        for e in &self.hyperedges {
            if let Some(count) = available.get_mut(e) {
                if *count > 0 {
                    *count -= 1;
                    edges.push(e.clone());
                }
            }
        }
        Ok(DirectedHypergraph {
            vertices: self.vertices.clone(),
            hyperedges: edges,
        })
    }

    fn check_edge(&self, e: usize) -> Result<(), HypergraphError> {
        if e >= self.edge_count() {
            return Err(HypergraphError::EdgeOutOfRange {
                edge: e,
                count: self.edge_count(),
            });
        }
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<(), HypergraphError> {
        if v >= self.vertex_count() {
            return Err(HypergraphError::NoSuchVertex {
                vertex: v,
                n: self.vertex_count(),
            });
        }
        Ok(())
    }

    /// Exchanges sources and targets of hyperedge `e`. Leaves `ℒ` unchanged.
    pub fn swap_hyperedge_orientation(&self, e: usize) -> Result<Self, HypergraphError> {
        self.check_edge(e)?;
        let mut h = self.clone();
        h.hyperedges[e] = h.hyperedges[e].reversed();
        Ok(h)
    }

    /// Moves `v` to the opposite endset of hyperedge `e` (a single incidence
    /// sign flip).
    pub fn move_vertex(&self, v: usize, e: usize) -> Result<Self, HypergraphError> {
        self.check_edge(e)?;
        self.check_vertex(v)?;
        let mut h = self.clone();
        let edge = &mut h.hyperedges[e];
        if edge.sources.remove(&v) {
            edge.targets.insert(v);
        } else if edge.targets.remove(&v) {
            edge.sources.insert(v);
        } else {
            return Err(HypergraphError::VertexNotInEdge { vertex: v, edge: e });
        }
        Ok(h)
    }

    /// Swaps the role of `v` in every hyperedge containing it (flips row `v`
    /// of the incidence matrix). Leaves `ℒ*` unchanged.
    pub fn swap_vertex_role(&self, v: usize) -> Result<Self, HypergraphError> {
        self.check_vertex(v)?;
        let mut h = self.clone();
        for edge in &mut h.hyperedges {
            if edge.sources.remove(&v) {
                edge.targets.insert(v);
            } else if edge.targets.remove(&v) {
                edge.sources.insert(v);
            }
        }
        Ok(h)
    }

    /// Graph with one edge `s → t` for every source/target pair of every
    /// hyperedge.
    pub fn two_section(&self) -> DirectedHypergraph {
        let edges = self
            .hyperedges
            .iter()
            .flat_map(|e| {
                e.sources
                    .iter()
                    .flat_map(move |&s| e.targets.iter().map(move |&t| Hyperedge::edge(s, t)))
            })
            .collect();
        DirectedHypergraph {
            vertices: self.vertices.clone(),
            hyperedges: edges,
        }
    }

    pub fn is_graph(&self) -> bool {
        self.hyperedges
            .iter()
            .all(|e| e.sources.len() == 1 && e.targets.len() == 1)
    }

    pub fn is_equipotent(&self) -> bool {
        self.hyperedges.iter().all(Hyperedge::is_balanced)
    }

    /// First hyperedge that is not an ordinary edge, if any.
    pub fn require_graph(&self) -> Result<(), HypergraphError> {
        match self
            .hyperedges
            .iter()
            .position(|e| e.sources.len() != 1 || e.targets.len() != 1)
        {
            Some(k) => Err(HypergraphError::NotAGraph(k)),
            None => Ok(()),
        }
    }

    /// Component index of every vertex, where two vertices are joined when
    /// they share a hyperedge. Components are numbered by first vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut uf = UnionFind::<usize>::new(n);
        for e in &self.hyperedges {
            let mut it = e.vertices();
            if let Some(first) = it.next() {
                for v in it {
                    uf.union(first, v);
                }
            }
        }
        let mut ids = BTreeMap::new();
        (0..n)
            .map(|v| {
                let root = uf.find(v);
                let next = ids.len();
                *ids.entry(root).or_insert(next)
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Hypergraph with the hyperedges at `indices` removed.
    pub fn without_hyperedges(&self, indices: &[usize]) -> Result<Self, HypergraphError> {
        for &e in indices {
            self.check_edge(e)?;
        }
        let drop: BTreeSet<usize> = indices.iter().copied().collect();
        Ok(DirectedHypergraph {
            vertices: self.vertices.clone(),
            hyperedges: self
                .hyperedges
                .iter()
                .enumerate()
                .filter(|(k, _)| !drop.contains(k))
                .map(|(_, e)| e.clone())
                .collect(),
        })
    }

    pub fn with_hyperedge(&self, e: Hyperedge) -> Result<Self, HypergraphError> {
        let mut edges = self.hyperedges.clone();
        edges.push(e);
        Self::new(self.vertices.clone(), edges)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::of(self)
    }
}

/// Degree statistics and pairwise orientation counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub deg: Vec<i64>,
    pub deg_in: Vec<i64>,
    pub deg_out: Vec<i64>,
    pub edge_deg: Vec<i64>,
    /// `co[v][w]`: hyperedges with `v`, `w` on the same side.
    pub co: Vec<Vec<i64>>,
    /// `anti[v][w]`: hyperedges with `v`, `w` on opposite sides.
    pub anti: Vec<Vec<i64>>,
}

impl DegreeProfile {
    pub fn of(h: &DirectedHypergraph) -> Self {
        let n = h.vertex_count();
        let mut p = DegreeProfile {
            deg: vec![0; n],
            deg_in: vec![0; n],
            deg_out: vec![0; n],
            edge_deg: Vec::with_capacity(h.edge_count()),
            co: vec![vec![0; n]; n],
            anti: vec![vec![0; n]; n],
        };
        for e in h.hyperedges() {
            p.edge_deg.push(e.degree() as i64);
            for &v in &e.targets {
                p.deg_in[v] += 1;
            }
            for &v in &e.sources {
                p.deg_out[v] += 1;
            }
            for v in e.vertices() {
                for w in e.vertices() {
                    if v == w {
                        continue;
                    }
                    if e.sign(v) == e.sign(w) {
                        p.co[v][w] += 1;
                    } else {
                        p.anti[v][w] += 1;
                    }
                }
            }
        }
        for v in 0..n {
            p.deg[v] = p.deg_in[v] + p.deg_out[v];
        }
        p
    }

    pub fn vertex_count(&self) -> usize {
        self.deg.len()
    }

    /// Laplacian from the entry formula: `deg(v)` on the diagonal,
    /// `co(v,w) − anti(v,w)` off it.
    pub fn laplacian_from_counts(&self) -> SymIntMatrix {
        let n = self.vertex_count();
        IntMatrix::from_fn(n, n, |v, w| {
            if v == w {
                self.deg[v]
            } else {
                self.co[v][w] - self.anti[v][w]
            }
        })
    }

    pub fn deg_min(&self) -> i64 {
        self.deg.iter().copied().min().unwrap_or(0)
    }

    pub fn deg_max(&self) -> i64 {
        self.deg.iter().copied().max().unwrap_or(0)
    }

    pub fn edge_deg_max(&self) -> i64 {
        self.edge_deg.iter().copied().max().unwrap_or(0)
    }

    /// `Σ_{e ∋ v} deg(e)` for every vertex.
    pub fn incident_edge_degree_sums(&self, h: &DirectedHypergraph) -> Vec<i64> {
        let mut s = vec![0; self.vertex_count()];
        for (k, e) in h.hyperedges().iter().enumerate() {
            for v in e.vertices() {
                s[v] += self.edge_deg[k];
            }
        }
        s
    }

    /// `Σ_{v ∈ e} deg(v)` for every hyperedge.
    pub fn edge_vertex_degree_sums(&self, h: &DirectedHypergraph) -> Vec<i64> {
        h.hyperedges()
            .iter()
            .map(|e| e.vertices().map(|v| self.deg[v]).sum())
            .collect()
    }
}

/// Standard hypergraph families.
pub mod builders {
    use super::{DirectedHypergraph, Hyperedge};

    fn build(n: usize, edges: Vec<Hyperedge>) -> DirectedHypergraph {
        DirectedHypergraph::with_vertex_count(n, edges).expect("builder produces valid hypergraphs")
    }

    /// One hyperedge with vertices `0..d_minus` as sources and the next
    /// `d_plus` vertices as targets.
    pub fn single_hyperedge(d_minus: usize, d_plus: usize) -> DirectedHypergraph {
        build(
            d_minus + d_plus,
            vec![Hyperedge::new(0..d_minus, d_minus..d_minus + d_plus)],
        )
    }

    /// `n` copies of the hyperedge with every vertex a target; `ℒ = n·J`.
    pub fn signless_class(n: usize) -> DirectedHypergraph {
        build(n, vec![Hyperedge::new([], 0..n); n])
    }

    /// Hyperedge `j` has source `j` and all other vertices as targets;
    /// incidence `J − 2·Id`.
    pub fn rotational_class(n: usize) -> DirectedHypergraph {
        let edges = (0..n)
            .map(|j| Hyperedge::new([j], (0..n).filter(|&v| v != j)))
            .collect();
        build(n, edges)
    }

    /// Graph from a list of directed edges.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> DirectedHypergraph {
        build(n, edges.iter().map(|&(s, t)| Hyperedge::edge(s, t)).collect())
    }

    /// Directed path `0 → 1 → … → n−1`.
    pub fn path(n: usize) -> DirectedHypergraph {
        build(n, (1..n).map(|i| Hyperedge::edge(i - 1, i)).collect())
    }

    /// Directed cycle on `n ≥ 2` vertices.
    pub fn cycle(n: usize) -> DirectedHypergraph {
        build(n, (0..n).map(|i| Hyperedge::edge(i, (i + 1) % n)).collect())
    }

    /// Complete graph with edges `i → j` for `i < j`.
    pub fn complete(n: usize) -> DirectedHypergraph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push(Hyperedge::edge(i, j));
            }
        }
        build(n, edges)
    }

    /// Star with centre `0` and `leaves` outward edges.
    pub fn star(leaves: usize) -> DirectedHypergraph {
        build(leaves + 1, (1..=leaves).map(|i| Hyperedge::edge(0, i)).collect())
    }
}
