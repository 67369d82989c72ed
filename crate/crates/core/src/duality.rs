//! Duals of graphs and Hodge Laplacians of simplicial complexes.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::classify::{self, ClassifyOptions};
use crate::hypergraph::{DirectedHypergraph, Hyperedge, HypergraphError, SymIntMatrix};
use crate::matrix::IntMatrix;
use crate::spectra::{self, SpectraError};

#[derive(Debug, Error)]
pub enum DualityError {
    #[error("face {index} {face:?}: {reason}")]
    MalformedFace {
        index: usize,
        face: Vec<usize>,
        reason: &'static str,
    },
    #[error("degree {degree} out of range for a complex of dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Classify(#[from] classify::ClassifyError),
}

/// Inclusion-closed family of faces; `faces[i]` lists the `i`-faces as
/// strictly increasing tuples in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    n: usize,
    faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Downward closure of the given faces on vertices `0..n`.
    pub fn closure(n: usize, maximal_faces: &[Vec<usize>]) -> Result<Self, DualityError> {
        let mut by_dim: Vec<std::collections::BTreeSet<Vec<usize>>> = Vec::new();
        for (index, f) in maximal_faces.iter().enumerate() {
            let bad = |reason| DualityError::MalformedFace {
                index,
                face: f.clone(),
                reason,
            };
            if f.is_empty() {
                return Err(bad("empty face"));
            }
            if f.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("vertices must be strictly increasing"));
            }
            if f.iter().any(|&v| v >= n) {
                return Err(bad("vertex out of range"));
            }
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let sub: Vec<usize> = (0..k).filter(|j| mask >> j & 1 == 1).map(|j| f[j]).collect();
                let d = sub.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, Default::default);
                }
                by_dim[d].insert(sub);
            }
        }
        // Every vertex is a 0-face.
        if by_dim.is_empty() {
            by_dim.push(Default::default());
        }
        for v in 0..n {
            by_dim[0].insert(vec![v]);
        }
        Ok(SimplicialComplex {
            n,
            faces: by_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.faces.len().saturating_sub(1)
    }

    /// `i`-faces; empty beyond the dimension.
    pub fn faces(&self, i: usize) -> &[Vec<usize>] {
        self.faces.get(i).map_or(&[], |f| f.as_slice())
    }

    fn index_of(&self, i: usize) -> BTreeMap<&[usize], usize> {
        self.faces(i)
            .iter()
            .enumerate()
            .map(|(k, f)| (f.as_slice(), k))
            .collect()
    }

    /// `δ_i` without range checks: `#S_{i+1} × #S_i`, entry `(−1)^j` where
    /// the `i`-face omits vertex `j` of the `(i+1)`-face.
    fn coboundary_raw(&self, i: usize) -> IntMatrix {
        let lower = self.faces(i);
        let upper = self.faces(i + 1);
        let idx = self.index_of(i);
        let mut m = IntMatrix::zeros(upper.len(), lower.len());
        for (r, f) in upper.iter().enumerate() {
            for j in 0..f.len() {
                let mut sub = f.clone();
                sub.remove(j);
                let c = idx[sub.as_slice()];
                m[(r, c)] = if j % 2 == 0 { 1 } else { -1 };
            }
        }
        m
    }

    /// `δ_i : ℝ^{S_i} → ℝ^{S_{i+1}}` for `i < dim`.
    pub fn coboundary(&self, i: usize) -> Result<IntMatrix, DualityError> {
        if i >= self.dim() {
            return Err(DualityError::DegreeOutOfRange {
                degree: i,
                dim: self.dim(),
            });
        }
        Ok(self.coboundary_raw(i))
    }

    fn check_degree(&self, i: usize) -> Result<(), DualityError> {
        if i > self.dim() {
            return Err(DualityError::DegreeOutOfRange {
                degree: i,
                dim: self.dim(),
            });
        }
        Ok(())
    }

    /// `ℒ^{(i)} = δ_{i−1}δ_{i−1}ᵀ + δ_iᵀδ_i` with `δ_{−1} = 0`.
    pub fn hodge_laplacian(&self, i: usize) -> Result<SymIntMatrix, DualityError> {
        self.check_degree(i)?;
        let up = self.coboundary_raw(i);
        let mut l = &up.transpose() * &up;
        if i > 0 {
            let down = self.coboundary_raw(i - 1);
            l = &l + &(&down * &down.transpose());
        }
        Ok(l)
    }

    /// Hypergraph with vertices `S_{i−1} ∪ S_{i+1}`, hyperedges `S_i` and
    /// incidence `[δ_{i−1}ᵀ; δ_i]`; its dual Laplacian is `ℒ^{(i)}`.
    pub fn hypergraph_embedding(&self, i: usize) -> Result<DirectedHypergraph, DualityError> {
        self.check_degree(i)?;
        let up = self.coboundary_raw(i);
        let (inc, mut labels) = if i > 0 {
            let down = self.coboundary_raw(i - 1).transpose();
            (down.vstack(&up), face_labels(self.faces(i - 1)))
        } else {
            (up, Vec::new())
        };
        labels.extend(face_labels(self.faces(i + 1)));
        Ok(DirectedHypergraph::from_incidence(Some(labels), &inc)?)
    }
}

fn face_labels(faces: &[Vec<usize>]) -> Vec<String> {
    faces
        .iter()
        .map(|f| {
            let parts: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            format!("[{}]", parts.join(","))
        })
        .collect()
}

/// Orients every path and cycle component of a graph with maximum degree
/// at most 2 coherently. Returns `None` if some vertex has degree > 2.
pub fn coherent_orientation(g: &DirectedHypergraph) -> Result<Option<DirectedHypergraph>, DualityError> {
    g.require_graph()?;
    let n = g.vertex_count();
    let deg = g.degree_profile().deg;
    if deg.iter().any(|&d| d > 2) {
        return Ok(None);
    }
    let ends: Vec<(usize, usize)> = g
        .hyperedges()
        .iter()
        .map(|e| (*e.sources.first().unwrap(), *e.targets.first().unwrap()))
        .collect();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (k, &(a, b)) in ends.iter().enumerate() {
        adj[a].push((k, b));
        adj[b].push((k, a));
    }
    let mut oriented: Vec<Option<(usize, usize)>> = vec![None; ends.len()];
    // Paths first from an endpoint, then cycles from any vertex.
    let starts = (0..n).filter(|&v| deg[v] == 1).chain(0..n);
    for start in starts {
        let mut cur = start;
        while let Some(&(k, other)) = adj[cur].iter().find(|(k, _)| oriented[*k].is_none()) {
            oriented[k] = Some((cur, other));
            cur = other;
        }
    }
    let edges = oriented
        .into_iter()
        .map(|o| {
            let (s, t) = o.expect("every edge visited");
            Hyperedge::edge(s, t)
        })
        .collect();
    Ok(Some(DirectedHypergraph::new(g.vertices().to_vec(), edges)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphDualReport {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub cyclomatic_number: i64,
    pub dual_kernel_dim: usize,
    pub kernel_matches_cyclomatic: bool,
    pub is_forest: bool,
    pub dual_exponentially_stable: bool,
    pub deg_max: i64,
    pub degrees_all_two: bool,
    /// Positivity of the dual semigroup for the given orientation.
    pub positive_as_given: bool,
    /// Some orientation makes the dual semigroup positive.
    pub positive_orientation_exists: bool,
    pub coherent_orientation: Option<Vec<(usize, usize)>>,
    pub stochastic: bool,
    pub sub_markovian: bool,
    pub dual_eigenvalues: Vec<f64>,
    pub lowest_projector_positive: bool,
    pub lowest_projector_inf_contractive: bool,
}

pub fn graph_dual_report(g: &DirectedHypergraph) -> Result<GraphDualReport, DualityError> {
    g.require_graph()?;
    let n = g.vertex_count();
    let m = g.edge_count();
    let c = g.component_count();
    let cyclomatic = m as i64 - n as i64 + c as i64;
    let ls = g.dual_laplacian();
    let s = spectra::eigh_int::<f64>(&ls)?;
    let kernel = s.kernel_dim();
    let deg_max = g.degree_profile().deg_max();
    let deg = g.degree_profile().deg;

    let coherent = coherent_orientation(g)?;
    let opts = ClassifyOptions::<f64> {
        thresholds: false,
        ..Default::default()
    };
    let (stochastic, sub_markovian) = match &coherent {
        Some(o) => {
            let d = o.dual();
            let r = classify::classify(&d, &opts)?;
            (r.stochastic.value, r.sub_markovian.value)
        }
        None => (false, false),
    };
    let a = classify::asymptotic_and_eventual_flags(&s);
    Ok(GraphDualReport {
        vertices: n,
        edges: m,
        components: c,
        cyclomatic_number: cyclomatic,
        dual_kernel_dim: kernel,
        kernel_matches_cyclomatic: kernel as i64 == cyclomatic,
        is_forest: cyclomatic == 0,
        dual_exponentially_stable: kernel == 0,
        deg_max,
        degrees_all_two: deg.iter().all(|&d| d == 2),
        positive_as_given: classify::positive_generator_flag(&ls).value,
        positive_orientation_exists: coherent.is_some(),
        coherent_orientation: coherent.map(|o| {
            o.hyperedges()
                .iter()
                .map(|e| (*e.sources.first().unwrap(), *e.targets.first().unwrap()))
                .collect()
        }),
        stochastic,
        sub_markovian,
        dual_eigenvalues: s.eigenvalues().to_vec(),
        lowest_projector_positive: a.asymptotically_positive.value,
        lowest_projector_inf_contractive: a.projector_norm_inf <= 1.0 + 1e-9,
    })
}
