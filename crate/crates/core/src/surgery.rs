//! Dirichlet conditions, sub-hypergraphs and graph-plus-hyperedge unions.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::classify::{positive_generator_flag, Witness};
use crate::hypergraph::{DirectedHypergraph, Hyperedge, HypergraphError, SymIntMatrix};
use crate::matrix::{IntMatrix, Matrix};
use crate::scalar::Real;
use crate::semigroup::{self, SemigroupError};
use crate::spectra::{self, SpectraError, SpectralDecomposition};

#[derive(Debug, Error)]
pub enum SurgeryError {
    #[error("vertex {vertex} out of range (#V = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("subset was built for {expected} vertices, hypergraph has {got}")]
    ParentMismatch { expected: usize, got: usize },
    #[error("edge {edge} does not cross the bipartition")]
    NotBipartite { edge: usize },
    #[error("equipotent split needs an even vertex count, got {0}")]
    OddVertexCount(usize),
    #[error("sources must be exactly half of the vertices ({expected}), got {got}")]
    BadHalf { expected: usize, got: usize },
    #[error("graph part is not connected ({0} components)")]
    Disconnected(usize),
    #[error("Dirichlet Laplacian on {subset:?} is not a Z-matrix: entry ({v}, {w}) = {value}")]
    NotPositive {
        subset: Vec<usize>,
        v: usize,
        w: usize,
        value: i64,
    },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// Subset `V′ ⊆ V` of a vertex set of size `n`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexSubset {
    n: usize,
    members: Vec<usize>,
}

impl VertexSubset {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self, SurgeryError> {
        let mut set = BTreeSet::new();
        for v in members {
            if v >= n {
                return Err(SurgeryError::VertexOutOfRange { vertex: v, n });
            }
            if !set.insert(v) {
                return Err(SurgeryError::DuplicateVertex(v));
            }
        }
        Ok(VertexSubset {
            n,
            members: set.into_iter().collect(),
        })
    }

    pub fn all(n: usize) -> Self {
        VertexSubset {
            n,
            members: (0..n).collect(),
        }
    }

    pub fn from_labels<S: AsRef<str>>(h: &DirectedHypergraph, labels: &[S]) -> Result<Self, SurgeryError> {
        let idx = labels
            .iter()
            .map(|l| {
                h.vertex_index(l.as_ref())
                    .ok_or_else(|| SurgeryError::UnknownLabel(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(h.vertex_count(), idx)
    }

    pub fn parent_dim(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// `V′₀ = V \ V′`.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| !self.contains(v)).collect()
    }

    pub fn is_subset_of(&self, other: &VertexSubset) -> bool {
        self.members.iter().all(|&v| other.contains(v))
    }

    fn check_parent(&self, h: &DirectedHypergraph) -> Result<(), SurgeryError> {
        if self.n != h.vertex_count() {
            return Err(SurgeryError::ParentMismatch {
                expected: self.n,
                got: h.vertex_count(),
            });
        }
        Ok(())
    }

    fn local_index(&self, v: usize) -> Option<usize> {
        self.members.binary_search(&v).ok()
    }
}

/// `P_{V′} ℒ P_{V′}`: rows and columns outside `V′` set to zero.
pub fn dirichlet_laplacian(h: &DirectedHypergraph, sub: &VertexSubset) -> Result<SymIntMatrix, SurgeryError> {
    sub.check_parent(h)?;
    let l = h.laplacian();
    let n = l.rows();
    Ok(IntMatrix::from_fn(n, n, |i, j| {
        if sub.contains(i) && sub.contains(j) {
            l[(i, j)]
        } else {
            0
        }
    }))
}

fn sub_labels(h: &DirectedHypergraph, sub: &VertexSubset) -> Vec<String> {
    sub.members().iter().map(|&v| h.vertices()[v].clone()).collect()
}

fn remap(sub: &VertexSubset, set: &BTreeSet<usize>) -> BTreeSet<usize> {
    set.iter().filter_map(|&v| sub.local_index(v)).collect()
}

/// Hyperedges whose endsets both lie inside `V′`, on vertex set `V′`.
pub fn induced_subhypergraph(
    h: &DirectedHypergraph,
    sub: &VertexSubset,
) -> Result<DirectedHypergraph, SurgeryError> {
    sub.check_parent(h)?;
    let edges = h
        .hyperedges()
        .iter()
        .filter(|e| e.vertices().all(|v| sub.contains(v)))
        .map(|e| Hyperedge {
            sources: remap(sub, &e.sources),
            targets: remap(sub, &e.targets),
        })
        .collect();
    Ok(DirectedHypergraph::new(sub_labels(h, sub), edges)?)
}

/// Every hyperedge intersected with `V′`; empty hyperedges are kept.
pub fn d_subhypergraph(h: &DirectedHypergraph, sub: &VertexSubset) -> Result<DirectedHypergraph, SurgeryError> {
    sub.check_parent(h)?;
    let edges = h
        .hyperedges()
        .iter()
        .map(|e| Hyperedge {
            sources: remap(sub, &e.sources),
            targets: remap(sub, &e.targets),
        })
        .collect();
    Ok(DirectedHypergraph::new(sub_labels(h, sub), edges)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnionMode {
    /// One extra hyperedge with every vertex a target.
    CoOrientedFull,
    /// Edges of `G` become signless (both endpoints targets); the extra
    /// hyperedge has `minus` as sources and the rest as targets.
    BipartiteSignless { minus: Vec<usize> },
    /// Extra hyperedge with `#V/2` sources (default: the first half).
    EquipotentHalf { sources: Option<Vec<usize>> },
}

#[derive(Debug, Clone, Serialize)]
pub struct UnionSpectrumReport {
    pub mode: String,
    pub components: usize,
    pub predicted: Option<Vec<f64>>,
    pub computed: Vec<f64>,
    pub max_deviation: Option<f64>,
    /// `ℒ_H = ℒ_G + J` (co-oriented mode only).
    pub laplacian_is_graph_plus_j: Option<bool>,
    pub lambda1_simple: bool,
    pub kernel_vector_positive: bool,
    pub lowest_projector_positive: bool,
    pub lowest_projector_is_identity: bool,
    pub holds: bool,
}

/// Builds `H = G ∪ {e}` for the chosen mode and compares the spectrum of
/// `ℒ_H` with the prediction.
pub fn union_spectrum_verifier(
    g: &DirectedHypergraph,
    mode: &UnionMode,
) -> Result<(DirectedHypergraph, UnionSpectrumReport), SurgeryError> {
    g.require_graph()?;
    let n = g.vertex_count();
    let c = g.component_count();
    let (h, base, mode_name) = match mode {
        UnionMode::CoOrientedFull => {
            let e = Hyperedge::new([], 0..n);
            (g.with_hyperedge(e)?, g.clone(), "co_oriented_full")
        }
        UnionMode::BipartiteSignless { minus } => {
            let minus_set = VertexSubset::new(n, minus.iter().copied())?;
            let mut edges = Vec::new();
            for (k, e) in g.hyperedges().iter().enumerate() {
                let (s, t) = (*e.sources.first().unwrap(), *e.targets.first().unwrap());
                if minus_set.contains(s) == minus_set.contains(t) {
                    return Err(SurgeryError::NotBipartite { edge: k });
                }
                edges.push(Hyperedge::new([], [s, t]));
            }
            let signless = DirectedHypergraph::new(g.vertices().to_vec(), edges)?;
            let e = Hyperedge::new(minus_set.members().iter().copied(), minus_set.complement());
            (signless.with_hyperedge(e)?, signless, "bipartite_signless")
        }
        UnionMode::EquipotentHalf { sources } => {
            if !n.is_multiple_of(2) {
                return Err(SurgeryError::OddVertexCount(n));
            }
            if c != 1 {
                return Err(SurgeryError::Disconnected(c));
            }
            let src = VertexSubset::new(n, sources.clone().unwrap_or_else(|| (0..n / 2).collect()))?;
            if src.members().len() != n / 2 {
                return Err(SurgeryError::BadHalf {
                    expected: n / 2,
                    got: src.members().len(),
                });
            }
            let e = Hyperedge::new(src.members().iter().copied(), src.complement());
            (g.with_hyperedge(e)?, g.clone(), "equipotent_half")
        }
    };

    let s = spectra::eigh_int::<f64>(&h.laplacian())?;
    let computed = s.eigenvalues().to_vec();
    let tol = 1e-8;

    let (predicted, max_deviation) = if matches!(mode, UnionMode::EquipotentHalf { .. }) {
        (None, None)
    } else {
        let sg = spectra::eigh_int::<f64>(&base.laplacian())?;
        let mut p = vec![0.0; c.saturating_sub(1)];
        p.push(n as f64);
        p.extend(sg.nonzero_eigenvalues());
        p.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let dev = if p.len() == computed.len() {
            p.iter()
                .zip(&computed)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        (Some(p), Some(dev))
    };

    let laplacian_is_graph_plus_j = matches!(mode, UnionMode::CoOrientedFull)
        .then(|| h.laplacian() == &g.laplacian() + &IntMatrix::ones(n, n));

    let clusters = s.clusters();
    let lambda1_simple = clusters.first().is_some_and(|c| c.multiplicity == 1);
    let phi = s.vector(0);
    let kernel_vector_positive =
        lambda1_simple && s.lambda1().abs() <= s.zero_tol() && phi.iter().all(|&x| x > 1e-9);
    let p = s.lowest_projector();
    let lowest_projector_positive = p.min_entry().unwrap_or(0.0) >= -1e-9;
    let lowest_projector_is_identity = p.max_abs_diff(&Matrix::identity(n)) <= tol;

    let holds = match mode {
        UnionMode::EquipotentHalf { .. } => kernel_vector_positive,
        _ => {
            max_deviation.is_some_and(|d| d <= tol) && laplacian_is_graph_plus_j.unwrap_or(true)
        }
    };

    Ok((
        h,
        UnionSpectrumReport {
            mode: mode_name.to_string(),
            components: c,
            predicted,
            computed,
            max_deviation,
            laplacian_is_graph_plus_j,
            lambda1_simple,
            kernel_vector_positive,
            lowest_projector_positive,
            lowest_projector_is_identity,
            holds,
        },
    ))
}

/// `e^{−tℒ^{V′,D}}` restricted to `V′` and extended by zero.
pub fn dirichlet_semigroup<T: Real>(
    h: &DirectedHypergraph,
    sub: &VertexSubset,
    t: T,
) -> Result<Matrix<T>, SurgeryError> {
    sub.check_parent(h)?;
    let block = h.laplacian().principal_submatrix(sub.members());
    let s: SpectralDecomposition<T> = spectra::eigh_int(&block)?;
    let e = semigroup::heat_operator(&s, t)?;
    let n = h.vertex_count();
    let mut out = Matrix::zeros(n, n);
    for (a, &i) in sub.members().iter().enumerate() {
        for (b, &j) in sub.members().iter().enumerate() {
            out[(i, j)] = e.matrix[(a, b)];
        }
    }
    Ok(out)
}

/// Sample times for Dirichlet domination checks.
pub const DOMINATION_SAMPLES: [f64; 3] = [0.1, 1.0, 5.0];

#[derive(Debug, Clone, Serialize)]
pub struct DirichletDominationReport {
    pub outer: Vec<usize>,
    pub inner: Vec<usize>,
    pub inner_is_subset: bool,
    /// Whether the `outer` semigroup dominates the `inner` one at every sample.
    pub dominates: bool,
    /// First failing sample, if any.
    pub violation: Option<(f64, Witness)>,
    pub consistent: bool,
}

fn require_positive(h: &DirectedHypergraph, sub: &VertexSubset) -> Result<(), SurgeryError> {
    let l = h.laplacian().principal_submatrix(sub.members());
    let f = positive_generator_flag(&l);
    if let Some(Witness::Pair { v, w, value }) = f.witness {
        return Err(SurgeryError::NotPositive {
            subset: sub.members().to_vec(),
            v: sub.members()[v],
            w: sub.members()[w],
            value,
        });
    }
    Ok(())
}

/// Checks whether the Dirichlet semigroup on `outer` dominates the one on
/// `inner`, which should happen exactly when `inner ⊆ outer`.
pub fn dirichlet_domination_check(
    h: &DirectedHypergraph,
    outer: &VertexSubset,
    inner: &VertexSubset,
) -> Result<DirichletDominationReport, SurgeryError> {
    require_positive(h, outer)?;
    require_positive(h, inner)?;
    let tol = 1e-9;
    let mut violation = None;
    for &t in &DOMINATION_SAMPLES {
        let a = dirichlet_semigroup::<f64>(h, outer, t)?;
        let b = dirichlet_semigroup::<f64>(h, inner, t)?;
        let d = &a - &b.abs();
        let mut worst = (0, 0, f64::INFINITY);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if d[(i, j)] < worst.2 {
                    worst = (i, j, d[(i, j)]);
                }
            }
        }
        if worst.2 < -tol {
            violation = Some((
                t,
                Witness::Entry {
                    i: worst.0,
                    j: worst.1,
                    value: worst.2,
                },
            ));
            break;
        }
    }
    let inner_is_subset = inner.is_subset_of(outer);
    let dominates = violation.is_none();
    Ok(DirichletDominationReport {
        outer: outer.members().to_vec(),
        inner: inner.members().to_vec(),
        inner_is_subset,
        dominates,
        violation,
        consistent: dominates == inner_is_subset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::builders::*;

    fn fig3() -> DirectedHypergraph {
        DirectedHypergraph::with_vertex_count(4, vec![Hyperedge::new([0, 1], [2, 3])]).unwrap()
    }

    #[test]
    fn dirichlet_matches_principal_submatrix() {
        let h = fig3();
        let sub = VertexSubset::new(4, [1, 2]).unwrap();
        let d = dirichlet_laplacian(&h, &sub).unwrap();
        assert_eq!(d.principal_submatrix(&[1, 2]), IntMatrix::from_rows(&[[1, -1], [-1, 1]]));
        assert_eq!(d[(0, 0)], 0);
        assert_eq!(dirichlet_laplacian(&h, &VertexSubset::all(4)).unwrap(), h.laplacian());
        let ds = d_subhypergraph(&h, &sub).unwrap();
        assert_eq!(ds.hyperedges()[0], Hyperedge::new([0], [1]));
        assert_eq!(induced_subhypergraph(&h, &sub).unwrap().edge_count(), 0);
        assert_eq!(sub.complement(), vec![0, 3]);
    }

    #[test]
    fn subset_validation() {
        assert!(matches!(VertexSubset::new(3, [3]), Err(SurgeryError::VertexOutOfRange { .. })));
        assert!(matches!(VertexSubset::new(3, [1, 1]), Err(SurgeryError::DuplicateVertex(1))));
    }

    #[test]
    fn co_oriented_union_of_complete_graph() {
        let (_, r) = union_spectrum_verifier(&complete(4), &UnionMode::CoOrientedFull).unwrap();
        assert!(r.holds && r.lowest_projector_is_identity);
        for l in &r.computed {
            assert!((l - 4.0).abs() < 1e-10);
        }
    }

    #[test]
    fn co_oriented_union_of_two_edges() {
        let g = graph(4, &[(0, 1), (2, 3)]);
        let (_, r) = union_spectrum_verifier(&g, &UnionMode::CoOrientedFull).unwrap();
        assert!(r.holds);
        let expected = [0.0, 2.0, 2.0, 4.0];
        for (a, b) in r.computed.iter().zip(expected) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!(!r.lowest_projector_positive);
    }

    #[test]
    fn equipotent_half_on_path() {
        let (_, r) = union_spectrum_verifier(&path(4), &UnionMode::EquipotentHalf { sources: None }).unwrap();
        assert!(r.holds && r.lambda1_simple && r.kernel_vector_positive);
        assert!(union_spectrum_verifier(&path(3), &UnionMode::EquipotentHalf { sources: None }).is_err());
    }

    #[test]
    fn bipartite_signless() {
        let g = cycle(4);
        let (_, r) = union_spectrum_verifier(&g, &UnionMode::BipartiteSignless { minus: vec![0, 2] }).unwrap();
        assert!(r.holds);
        assert!(union_spectrum_verifier(&g, &UnionMode::BipartiteSignless { minus: vec![0, 1] }).is_err());
    }

    #[test]
    fn dirichlet_domination_on_path() {
        let g = path(4);
        let outer = VertexSubset::new(4, [0, 1, 2]).unwrap();
        let inner = VertexSubset::new(4, [1, 2]).unwrap();
        let r = dirichlet_domination_check(&g, &outer, &inner).unwrap();
        assert!(r.dominates && r.consistent);
        let a = VertexSubset::new(4, [0, 1]).unwrap();
        let b = VertexSubset::new(4, [2, 3]).unwrap();
        let r1 = dirichlet_domination_check(&g, &a, &b).unwrap();
        let r2 = dirichlet_domination_check(&g, &b, &a).unwrap();
        assert!(!r1.dominates || !r2.dominates);
        assert!(r1.consistent && r2.consistent);
        let same = dirichlet_domination_check(&g, &a, &a).unwrap();
        assert!(same.dominates);
    }

    #[test]
    fn dirichlet_domination_refuses_non_positive() {
        let h = fig3();
        let err = dirichlet_domination_check(&h, &VertexSubset::all(4), &VertexSubset::new(4, [1, 2]).unwrap());
        assert!(matches!(err, Err(SurgeryError::NotPositive { v: 0, w: 1, .. })));
    }
}
