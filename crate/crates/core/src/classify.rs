//! Order-theoretic classification of heat semigroups.
//!
//! Combinatorial criteria (positivity, ∞-contractivity, stochasticity) are
//! decided exactly on the integer Laplacian. Asymptotic and eventual
//! properties are read off the lowest eigenvalue cluster.

use petgraph::unionfind::UnionFind;
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{builders, DirectedHypergraph, Hyperedge, HypergraphError};
use crate::matrix::{IntMatrix, Matrix};
use crate::scalar::{Real, Tolerances};
use crate::semigroup::{self, Property, SemigroupError, ThresholdReport};
use crate::spectra::{self, SpectraError, SpectralDecomposition};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("graph part is not connected ({0} components)")]
    Disconnected(usize),
}

/// Evidence attached to a flag.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Off-diagonal Laplacian entry with the wrong sign.
    Pair { v: usize, w: usize, value: i64 },
    /// Row of `ℒ` where the off-diagonal mass exceeds the degree.
    Row { v: usize, off_diagonal: i64, degree: i64 },
    /// Unbalanced hyperedge.
    Hyperedge { edge: usize, sources: usize, targets: usize },
    /// Connected components of the off-diagonal pattern.
    Components { labels: Vec<usize> },
    /// Lowest eigenvalue and its multiplicity.
    Eigenvalue { value: f64, multiplicity: usize },
    /// Eigenvector, typically `φ₁`.
    Vector { values: Vec<f64> },
    /// Entry of a matrix such as the lowest-cluster projector.
    Entry { i: usize, j: usize, value: f64 },
    /// Maximal absolute row sum of a matrix.
    RowNorm { row: usize, value: f64 },
    Matrix { rows: Vec<Vec<f64>> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flag {
    pub value: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Flag {
    pub fn yes() -> Self {
        Flag {
            value: true,
            witness: None,
        }
    }

    pub fn no(w: Witness) -> Self {
        Flag {
            value: false,
            witness: Some(w),
        }
    }

    pub fn with(value: bool, w: Witness) -> Self {
        Flag {
            value,
            witness: Some(w),
        }
    }

    fn and(&self, other: &Flag) -> Flag {
        if !self.value {
            self.clone()
        } else if !other.value {
            other.clone()
        } else {
            Flag::yes()
        }
    }
}

fn to_f64_vec<T: Real>(v: &[T]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64_lossy()).collect()
}

fn matrix_witness<T: Real>(m: &Matrix<T>) -> Witness {
    Witness::Matrix {
        rows: m
            .to_rows()
            .iter()
            .map(|r| to_f64_vec(r))
            .collect(),
    }
}

/// Z-matrix test on `ℒ`: `co(v,w) ≤ anti(v,w)` for all `v ≠ w`.
pub fn positive_generator_flag(l: &IntMatrix) -> Flag {
    let n = l.rows();
    for v in 0..n {
        for w in v + 1..n {
            if l[(v, w)] > 0 {
                return Flag::no(Witness::Pair {
                    v,
                    w,
                    value: l[(v, w)],
                });
            }
        }
    }
    Flag::yes()
}

/// Diagonal dominance of `ℒ`: `Σ_{w≠v} |ℒ_vw| ≤ ℒ_vv`.
pub fn inf_contractive_flag(l: &IntMatrix) -> Flag {
    let n = l.rows();
    for v in 0..n {
        let off: i64 = (0..n).filter(|&w| w != v).map(|w| l[(v, w)].abs()).sum();
        if off > l[(v, v)] {
            return Flag::no(Witness::Row {
                v,
                off_diagonal: off,
                degree: l[(v, v)],
            });
        }
    }
    Flag::yes()
}

pub fn is_positive_generator(h: &DirectedHypergraph) -> Flag {
    positive_generator_flag(&h.laplacian())
}

pub fn is_inf_contractive(h: &DirectedHypergraph) -> Flag {
    inf_contractive_flag(&h.laplacian())
}

pub fn equipotent_flag(h: &DirectedHypergraph) -> Flag {
    match h.hyperedges().iter().position(|e| !e.is_balanced()) {
        Some(k) => {
            let e = &h.hyperedges()[k];
            Flag::no(Witness::Hyperedge {
                edge: k,
                sources: e.sources.len(),
                targets: e.targets.len(),
            })
        }
        None => Flag::yes(),
    }
}

/// Stochastic iff equipotent and positive.
pub fn is_stochastic(h: &DirectedHypergraph) -> Flag {
    equipotent_flag(h).and(&is_positive_generator(h))
}

/// Whether the nonzero off-diagonal pattern of `m` is connected.
pub fn irreducible_flag(m: &IntMatrix) -> Flag {
    let n = m.rows();
    let mut uf = UnionFind::<usize>::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if m[(i, j)] != 0 {
                uf.union(i, j);
            }
        }
    }
    let labels = uf.into_labeling();
    if labels.iter().all(|&r| r == labels[0]) {
        Flag::yes()
    } else {
        let mut ids = std::collections::BTreeMap::new();
        let labels = labels
            .iter()
            .map(|r| {
                let next = ids.len();
                *ids.entry(*r).or_insert(next)
            })
            .collect();
        Flag::no(Witness::Components { labels })
    }
}

/// Spectral flags read off the lowest eigenvalue cluster.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticFlags {
    pub lambda1: f64,
    pub lambda1_multiplicity: usize,
    pub exponentially_stable: Flag,
    pub eventually_irreducible: Flag,
    pub asymptotically_positive: Flag,
    pub asymptotically_inf_contractive: Flag,
    /// `‖P‖∞` for the lowest-cluster projector `P`.
    pub projector_norm_inf: f64,
    /// `‖φ₁‖₁·‖φ₁‖∞` when `λ₁` is simple.
    pub simple_norm_product: Option<f64>,
}

/// `‖φ‖₁ · ‖φ‖∞`.
pub fn norm_product<T: Real>(phi: &[T]) -> T {
    let l1: T = phi.iter().map(|x| x.abs()).sum();
    let linf = phi.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    l1 * linf
}

fn argmax_row_norm<T: Real>(m: &Matrix<T>) -> (usize, T) {
    let mut best = (0, T::zero());
    for i in 0..m.rows() {
        let s: T = m.row(i).iter().map(|x| x.abs()).sum();
        if s > best.1 {
            best = (i, s);
        }
    }
    best
}

fn argmin_entry<T: Real>(m: &Matrix<T>) -> (usize, usize, T) {
    let mut best = (0, 0, T::infinity());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m[(i, j)] < best.2 {
                best = (i, j, m[(i, j)]);
            }
        }
    }
    best
}

pub fn asymptotic_and_eventual_flags<T: Real>(s: &SpectralDecomposition<T>) -> AsymptoticFlags {
    let tol = *s.tolerances();
    let n = s.dim();
    if n == 0 {
        return AsymptoticFlags {
            lambda1: 0.0,
            lambda1_multiplicity: 0,
            exponentially_stable: Flag::yes(),
            eventually_irreducible: Flag::yes(),
            asymptotically_positive: Flag::yes(),
            asymptotically_inf_contractive: Flag::yes(),
            projector_norm_inf: 0.0,
            simple_norm_product: None,
        };
    }
    let clusters = s.clusters();
    let low = clusters[0];
    let lambda1 = s.lambda1();
    let phi1 = s.vector(0);
    let p = s.lowest_projector();

    let eig_witness = Witness::Eigenvalue {
        value: lambda1.to_f64_lossy(),
        multiplicity: low.multiplicity,
    };
    let exponentially_stable = if lambda1 > s.zero_tol() {
        Flag::with(true, eig_witness.clone())
    } else {
        Flag::no(Witness::Vector {
            values: to_f64_vec(&phi1),
        })
    };

    let eventually_irreducible = if low.multiplicity != 1 {
        Flag::no(eig_witness)
    } else if phi1.iter().all(|&x| x > tol.entry) {
        Flag::with(
            true,
            Witness::Vector {
                values: to_f64_vec(&phi1),
            },
        )
    } else {
        Flag::no(Witness::Vector {
            values: to_f64_vec(&phi1),
        })
    };

    let (i, j, min) = argmin_entry(&p);
    let entry = Witness::Entry {
        i,
        j,
        value: min.to_f64_lossy(),
    };
    let asymptotically_positive = Flag::with(min >= -tol.entry, entry);

    let (row, pnorm) = argmax_row_norm(&p);
    let simple = (low.multiplicity == 1).then(|| norm_product(&phi1));
    let measure = simple.unwrap_or(pnorm);
    let asymptotically_inf_contractive = Flag::with(
        measure <= T::one() + tol.norm,
        Witness::RowNorm {
            row,
            value: measure.to_f64_lossy(),
        },
    );

    AsymptoticFlags {
        lambda1: lambda1.to_f64_lossy(),
        lambda1_multiplicity: low.multiplicity,
        exponentially_stable,
        eventually_irreducible,
        asymptotically_positive,
        asymptotically_inf_contractive,
        projector_norm_inf: pnorm.to_f64_lossy(),
        simple_norm_product: simple.map(|x| x.to_f64_lossy()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions<T> {
    /// Run the eventual-positivity / eventual-∞-contractivity threshold scans.
    pub thresholds: bool,
    pub horizon: Option<T>,
    pub tolerances: Tolerances<T>,
}

impl<T: Real> Default for ClassifyOptions<T> {
    fn default() -> Self {
        ClassifyOptions {
            thresholds: true,
            horizon: None,
            tolerances: Tolerances::standard(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport<T> {
    pub vertices: usize,
    pub hyperedges: usize,
    pub positive: Flag,
    pub irreducible_generator: Flag,
    pub inf_contractive: Flag,
    pub sub_markovian: Flag,
    pub stochastic: Flag,
    pub markovian: Flag,
    pub equipotent: Flag,
    pub exponentially_stable: Flag,
    pub eventually_irreducible: Flag,
    pub asymptotically_positive: Flag,
    pub asymptotically_inf_contractive: Flag,
    pub lambda1: f64,
    pub lambda1_multiplicity: usize,
    pub projector_norm_inf: f64,
    pub simple_norm_product: Option<f64>,
    pub eventual_positivity: Option<ThresholdReport<T>>,
    pub eventual_inf_contractivity: Option<ThresholdReport<T>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lowest_projector: Option<Witness>,
}

impl<T> ClassificationReport<T> {
    /// Drops witnesses of true flags and matrix-valued witnesses.
    pub fn strip_witnesses(&mut self) {
        for f in [
            &mut self.positive,
            &mut self.irreducible_generator,
            &mut self.inf_contractive,
            &mut self.sub_markovian,
            &mut self.stochastic,
            &mut self.markovian,
            &mut self.equipotent,
            &mut self.exponentially_stable,
            &mut self.eventually_irreducible,
            &mut self.asymptotically_positive,
            &mut self.asymptotically_inf_contractive,
        ] {
            f.witness = None;
        }
        self.lowest_projector = None;
    }
}

/// Full classification of the semigroup generated by `ℒ_H`.
pub fn classify<T: Real>(
    h: &DirectedHypergraph,
    options: &ClassifyOptions<T>,
) -> Result<ClassificationReport<T>, ClassifyError> {
    let l = h.laplacian();
    let s = spectra::eigh_with(&l.to_real::<T>(), options.tolerances)?;
    let mut report = classify_matrix(&l, &s, options)?;
    report.hyperedges = h.edge_count();
    report.equipotent = equipotent_flag(h);
    report.stochastic = report.equipotent.and(&report.positive);
    report.markovian = report.stochastic.clone();
    Ok(report)
}

/// Classification from a Laplacian-like integer matrix. Equipotency is
/// decided as `ℒ𝟏 = 0`.
pub fn classify_matrix<T: Real>(
    l: &IntMatrix,
    s: &SpectralDecomposition<T>,
    options: &ClassifyOptions<T>,
) -> Result<ClassificationReport<T>, ClassifyError> {
    let n = l.rows();
    let positive = positive_generator_flag(l);
    let inf_contractive = inf_contractive_flag(l);
    let ones = vec![1i64; n];
    let row_sums = l.mul_vec(&ones);
    let equipotent = match row_sums.iter().position(|&x| x != 0) {
        Some(v) => Flag::no(Witness::Row {
            v,
            off_diagonal: row_sums[v] - l[(v, v)],
            degree: l[(v, v)],
        }),
        None => Flag::yes(),
    };
    let stochastic = equipotent.and(&positive);
    let a = asymptotic_and_eventual_flags(s);
    let tol = options.tolerances.entry;
    let (eventual_positivity, eventual_inf_contractivity) = if options.thresholds && n > 0 {
        (
            Some(semigroup::threshold_search(s, Property::Positivity, options.horizon, tol)?),
            Some(semigroup::threshold_search(
                s,
                Property::InfContractivity,
                options.horizon,
                options.tolerances.norm,
            )?),
        )
    } else {
        (None, None)
    };
    Ok(ClassificationReport {
        vertices: n,
        hyperedges: 0,
        sub_markovian: positive.and(&inf_contractive),
        irreducible_generator: irreducible_flag(l),
        markovian: stochastic.clone(),
        stochastic,
        positive,
        inf_contractive,
        equipotent,
        exponentially_stable: a.exponentially_stable,
        eventually_irreducible: a.eventually_irreducible,
        asymptotically_positive: a.asymptotically_positive,
        asymptotically_inf_contractive: a.asymptotically_inf_contractive,
        lambda1: a.lambda1,
        lambda1_multiplicity: a.lambda1_multiplicity,
        projector_norm_inf: a.projector_norm_inf,
        simple_norm_product: a.simple_norm_product,
        eventual_positivity,
        eventual_inf_contractivity,
        lowest_projector: (n > 0).then(|| matrix_witness(&s.lowest_projector())),
    })
}

/// The four equivalent conditions for a union `G ∪ H` with `G` a connected
/// graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnionStability {
    /// `𝟏 ∈ ker ℐ_Hᵀ`.
    pub ones_in_cokernel: bool,
    /// `ker ℒ_{G∪H} = span 𝟏`.
    pub kernel_is_constants: bool,
    /// `e^{−tℒ} → J/#V` (checked at a large time).
    pub converges_to_average: bool,
    pub not_exponentially_stable: bool,
    pub consistent: bool,
}

pub fn union_stability_equivalences<T: Real>(
    g: &DirectedHypergraph,
    h: &DirectedHypergraph,
) -> Result<UnionStability, ClassifyError> {
    g.require_graph()?;
    let c = g.component_count();
    if c != 1 {
        return Err(ClassifyError::Disconnected(c));
    }
    let u = g.union(h)?;
    let n = u.vertex_count();
    let inc = h.incidence().into_matrix();
    let ones_in_cokernel = inc.transpose().mul_vec(&vec![1; n]).iter().all(|&x| x == 0);

    let s = spectra::eigh_int::<T>(&u.laplacian())?;
    let avg = Matrix::<T>::ones(n, n).scale(T::one() / T::from_int(n as i64));
    let slack = T::lit(1e-8);
    let kernel_is_constants =
        s.kernel_dim() == 1 && s.kernel_projector().max_abs_diff(&avg) <= slack;
    let horizon = semigroup::default_horizon(&s) * T::lit(4.0);
    let e = semigroup::heat_operator(&s, horizon)?;
    let converges_to_average = e.matrix.max_abs_diff(&avg) <= T::lit(1e-6);
    let not_exponentially_stable = s.lambda1() <= s.zero_tol();
    let all = [
        ones_in_cokernel,
        kernel_is_constants,
        converges_to_average,
        not_exponentially_stable,
    ];
    Ok(UnionStability {
        ones_in_cokernel,
        kernel_is_constants,
        converges_to_average,
        not_exponentially_stable,
        consistent: all.iter().all(|&x| x == all[0]),
    })
}

/// Adds `ℒ_vw` parallel edges `v → w` for every positive off-diagonal entry;
/// the union generates a positive semigroup. Returns the added multigraph
/// and the union.
pub fn positivity_restoration(h: &DirectedHypergraph) -> (DirectedHypergraph, DirectedHypergraph) {
    let l = h.laplacian();
    let n = l.rows();
    let mut edges = Vec::new();
    for v in 0..n {
        for w in v + 1..n {
            for _ in 0..l[(v, w)].max(0) {
                edges.push((v, w));
            }
        }
    }
    let g = builders::graph(n, &edges);
    let g = DirectedHypergraph::new(h.vertices().to_vec(), g.hyperedges().to_vec())
        .expect("same vertex set");
    let mut all: Vec<Hyperedge> = h.hyperedges().to_vec();
    all.extend(g.hyperedges().iter().cloned());
    let u = DirectedHypergraph::new(h.vertices().to_vec(), all).expect("valid union");
    (g, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::builders::*;

    fn opts() -> ClassifyOptions<f64> {
        ClassifyOptions {
            thresholds: false,
            ..Default::default()
        }
    }

    #[test]
    fn single_edge_is_markovian() {
        let r = classify(&single_hyperedge(1, 1), &opts()).unwrap();
        assert!(r.positive.value && r.irreducible_generator.value);
        assert!(r.stochastic.value && r.inf_contractive.value && r.sub_markovian.value);
    }

    #[test]
    fn single_hyperedge_witnesses() {
        let h = single_hyperedge(1, 2);
        let r = classify(&h, &opts()).unwrap();
        assert_eq!(r.positive.witness, Some(Witness::Pair { v: 1, w: 2, value: 1 }));
        assert!(!r.inf_contractive.value);
        assert!(!r.asymptotically_positive.value);
        assert!(!r.asymptotically_inf_contractive.value);
        assert!((r.projector_norm_inf - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn balanced_hyperedge_is_not_stochastic() {
        let r = classify(&single_hyperedge(2, 2), &opts()).unwrap();
        assert!(r.equipotent.value);
        assert!(!r.positive.value && !r.stochastic.value);
    }

    #[test]
    fn rotational_class_sub_markovian_range() {
        for n in 2..=7 {
            let r = classify(&rotational_class(n), &opts()).unwrap();
            assert_eq!(r.sub_markovian.value, (2..=4).contains(&n), "n = {n}");
            assert_eq!(r.stochastic.value, n == 2, "n = {n}");
        }
    }

    #[test]
    fn irreducibility_of_pattern() {
        let g = graph(4, &[(0, 1), (2, 3)]);
        let f = irreducible_flag(&g.laplacian());
        assert_eq!(f.witness, Some(Witness::Components { labels: vec![0, 0, 1, 1] }));
        assert!(irreducible_flag(&IntMatrix::zeros(1, 1)).value);
    }

    #[test]
    fn norm_product_of_constant_vector() {
        let phi = [0.5f64; 4];
        assert!((norm_product(&phi) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn restoration_yields_positive_generator() {
        let h = rotational_class(5);
        let (g, u) = positivity_restoration(&h);
        assert!(g.is_graph());
        assert!(is_positive_generator(&u).value);
    }

    #[test]
    fn union_stability_on_equipotent_and_unbalanced() {
        let g = path(4);
        let bal = DirectedHypergraph::with_vertex_count(4, vec![Hyperedge::new([0, 1], [2, 3])]).unwrap();
        let r = union_stability_equivalences::<f64>(&g, &bal).unwrap();
        assert!(r.consistent && r.ones_in_cokernel);
        let unb = DirectedHypergraph::with_vertex_count(4, vec![Hyperedge::new([0], [2, 3])]).unwrap();
        let r = union_stability_equivalences::<f64>(&g, &unb).unwrap();
        assert!(r.consistent && !r.ones_in_cokernel);
    }
}
