//! Symmetric eigensolver and eigenvalue bounds.

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{DirectedHypergraph, HypergraphError};
use crate::matrix::{IntMatrix, Matrix};
use crate::scalar::{Real, Tolerances};

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {gap:e}")]
    NotSymmetric { i: usize, j: usize, gap: f64 },
    #[error("matrix contains a non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("cluster index {index} out of range ({count} clusters)")]
    UnknownCluster { index: usize, count: usize },
    #[error("expected a 3x3 matrix, got {rows}x{cols}")]
    NotThreeByThree { rows: usize, cols: usize },
    #[error("hypergraph is not equipotent (hyperedge {0} is unbalanced)")]
    NotEquipotent(usize),
    #[error("need at least two vertices")]
    TooFewVertices,
    #[error("hyperedge {edge} has degree {degree}, expected {expected}")]
    NonUniform { edge: usize, degree: usize, expected: usize },
    #[error("invalid pairing for hyperedge {edge}: {reason}")]
    InvalidPairing { edge: usize, reason: String },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// Ascending eigenvalues with an orthonormal eigenbasis (column `k` is `φ_k`).
#[derive(Debug, Clone, Serialize)]
pub struct SpectralDecomposition<T> {
    eigenvalues: Vec<T>,
    vectors: Matrix<T>,
    residual: T,
    norm_inf: T,
    #[serde(skip)]
    tol: Tolerances<T>,
}

/// A group of numerically equal consecutive eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cluster<T> {
    /// Mean of the grouped eigenvalues.
    pub value: T,
    pub multiplicity: usize,
    /// Index of the first eigenvalue of the cluster.
    pub start: usize,
}

impl<T> Cluster<T> {
    pub fn indices(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.multiplicity
    }
}

fn check_symmetric<T: Real>(m: &Matrix<T>) -> Result<(), SpectraError> {
    if !m.is_square() {
        return Err(SpectraError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let scale = T::one() + m.max_abs();
    let tol = T::epsilon() * T::lit(16.0) * scale;
    for i in 0..n {
        for j in 0..n {
            if !m[(i, j)].is_finite() {
                return Err(SpectraError::NonFinite(i, j));
            }
        }
        for j in 0..i {
            let gap = (m[(i, j)] - m[(j, i)]).abs();
            if gap > tol {
                return Err(SpectraError::NotSymmetric {
                    i,
                    j,
                    gap: gap.to_f64_lossy(),
                });
            }
        }
    }
    Ok(())
}

fn off_diagonal_norm<T: Real>(a: &Matrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Flips `v` so that its entry of largest magnitude is positive; near-ties
/// go to the first index.
pub fn normalize_sign<T: Real>(v: &mut [T]) {
    let max = v.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    if max == T::zero() {
        return;
    }
    let rel = T::lit(1e-9).max(T::epsilon() * T::lit(100.0));
    let pivot = v
        .iter()
        .position(|x| x.abs() >= max * (T::one() - rel))
        .expect("maximum is attained");
    if v[pivot] < T::zero() {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Cyclic Jacobi eigensolver for a symmetric matrix.
pub fn eigh<T: Real>(m: &Matrix<T>) -> Result<SpectralDecomposition<T>, SpectraError> {
    eigh_with(m, Tolerances::standard())
}

pub fn eigh_with<T: Real>(
    m: &Matrix<T>,
    tol: Tolerances<T>,
) -> Result<SpectralDecomposition<T>, SpectraError> {
    check_symmetric(m)?;
    let n = m.rows();
    // Work on the exactly symmetrised copy.
    let half = T::lit(0.5);
    let mut a = Matrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)]) * half);
    let mut v = Matrix::<T>::identity(n);
    let target = T::epsilon() * a.frobenius_norm();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= target || off == T::zero() {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (T::lit(2.0) * apq);
                let t = {
                    let r = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    if theta < T::zero() {
                        -r
                    } else {
                        r
                    }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = T::zero();
                a[(q, p)] = T::zero();
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        let off = off_diagonal_norm(&a);
        if off > target {
            return Err(SpectraError::NoConvergence {
                sweeps: MAX_SWEEPS,
                off_norm: off.to_f64_lossy(),
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .partial_cmp(&a[(j, j)])
            .expect("finite eigenvalues")
            .then(i.cmp(&j))
    });
    let eigenvalues: Vec<T> = order.iter().map(|&k| a[(k, k)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let mut phi = v.column(k);
        normalize_sign(&mut phi);
        for i in 0..n {
            vectors[(i, col)] = phi[i];
        }
    }

    let mut residual = T::zero();
    for (k, &lambda) in eigenvalues.iter().enumerate() {
        let phi = vectors.column(k);
        let lphi = m.mul_vec(&phi);
        let r = lphi
            .iter()
            .zip(&phi)
            .map(|(&x, &y)| (x - lambda * y) * (x - lambda * y))
            .sum::<T>()
            .sqrt();
        residual = residual.max(r);
    }

    Ok(SpectralDecomposition {
        eigenvalues,
        vectors,
        residual,
        norm_inf: m.op_norm_inf(),
        tol,
    })
}

/// Eigendecomposition of an exact integer symmetric matrix.
pub fn eigh_int<T: Real>(m: &IntMatrix) -> Result<SpectralDecomposition<T>, SpectraError> {
    eigh(&m.to_real::<T>())
}

impl<T: Real> SpectralDecomposition<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn vectors(&self) -> &Matrix<T> {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> Vec<T> {
        self.vectors.column(k)
    }

    /// Maximum over `k` of `‖ℒφ_k − λ_kφ_k‖₂`.
    pub fn residual(&self) -> T {
        self.residual
    }

    pub fn tolerances(&self) -> &Tolerances<T> {
        &self.tol
    }

    /// `‖ℒ‖∞` of the decomposed matrix.
    pub fn norm_inf(&self) -> T {
        self.norm_inf
    }

    /// `zero_rel · (1 + ‖ℒ‖∞)`.
    pub fn zero_tol(&self) -> T {
        self.tol.zero_rel * (T::one() + self.norm_inf)
    }

    /// Lowest eigenvalue; zero for the empty matrix.
    pub fn lambda1(&self) -> T {
        self.eigenvalues.first().copied().unwrap_or_else(T::zero)
    }

    pub fn kernel_dim(&self) -> usize {
        let z = self.zero_tol();
        self.eigenvalues.iter().filter(|&&l| l <= z).count()
    }

    pub fn clusters(&self) -> Vec<Cluster<T>> {
        let mut out: Vec<Cluster<T>> = Vec::new();
        let mut sum = T::zero();
        for (k, &l) in self.eigenvalues.iter().enumerate() {
            match out.last_mut() {
                Some(c) if l - self.eigenvalues[k - 1] <= self.tol.cluster => {
                    c.multiplicity += 1;
                    sum += l;
                    c.value = sum / T::from_int(c.multiplicity as i64);
                }
                _ => {
                    sum = l;
                    out.push(Cluster {
                        value: l,
                        multiplicity: 1,
                        start: k,
                    });
                }
            }
        }
        out
    }

    /// Gap between the lowest cluster and the next one, if there is one.
    pub fn spectral_gap(&self) -> Option<T> {
        let c = self.clusters();
        if c.len() < 2 {
            return None;
        }
        Some(self.eigenvalues[c[1].start] - self.eigenvalues[c[0].start + c[0].multiplicity - 1])
    }

    /// `Σ_k f(λ_k) φ_k φ_kᵀ` over the given eigen-indices.
    pub fn synthesize(&self, indices: impl IntoIterator<Item = usize>, f: impl Fn(T) -> T) -> Matrix<T> {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for k in indices {
            let w = f(self.eigenvalues[k]);
            if w == T::zero() {
                continue;
            }
            for i in 0..n {
                let a = self.vectors[(i, k)] * w;
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * self.vectors[(j, k)];
                }
            }
        }
        // Exact symmetry.
        for i in 0..n {
            for j in 0..i {
                let s = (out[(i, j)] + out[(j, i)]) * T::lit(0.5);
                out[(i, j)] = s;
                out[(j, i)] = s;
            }
        }
        out
    }

    /// Orthogonal projector onto the eigenspace of cluster `index`.
    pub fn projector(&self, index: usize) -> Result<Matrix<T>, SpectraError> {
        let clusters = self.clusters();
        let c = clusters.get(index).ok_or(SpectraError::UnknownCluster {
            index,
            count: clusters.len(),
        })?;
        Ok(self.synthesize(c.indices(), |_| T::one()))
    }

    /// Projector onto the eigenspace of the lowest eigenvalue.
    pub fn lowest_projector(&self) -> Matrix<T> {
        if self.dim() == 0 {
            return Matrix::zeros(0, 0);
        }
        self.projector(0).expect("nonempty spectrum has a cluster")
    }

    /// Projector onto the kernel (possibly zero).
    pub fn kernel_projector(&self) -> Matrix<T> {
        self.synthesize(0..self.kernel_dim(), |_| T::one())
    }

    /// `max |QᵀQ − Id|`.
    pub fn orthonormality_defect(&self) -> T {
        let q = &self.vectors;
        let qtq = &q.transpose() * q;
        qtq.max_abs_diff(&Matrix::identity(self.dim()))
    }

    /// Nonzero eigenvalues (those above the kernel tolerance).
    pub fn nonzero_eigenvalues(&self) -> Vec<T> {
        let z = self.zero_tol();
        self.eigenvalues.iter().copied().filter(|&l| l > z).collect()
    }
}

/// Eigenvalue enclosures computed in exact integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralBounds {
    /// `[2·deg_min − max_v Σ_{e∋v} deg e, max_v Σ_{e∋v} deg e]`.
    pub vertex_interval: (i64, i64),
    /// `max_e Σ_{v∈e} deg v`.
    pub edge_upper: i64,
    /// Row-wise Geršgorin discs of `ℒ`: `[min_v (ℒ_vv − r_v), max_v (ℒ_vv + r_v)]`.
    pub gershgorin: (i64, i64),
    /// `deg_min ∓ max_v Σ_{w≠v} |co − anti|` and `deg_max + …`.
    pub pairwise_interval: (i64, i64),
    /// `deg_max(E) + max_e Σ_{f≠e} |ℒ*_ef|`.
    pub pairwise_edge_upper: i64,
    /// `deg(v) > Σ_{w≠v} |co(v,w) − anti(v,w)|` for every vertex.
    pub stable_by_pairwise: bool,
    /// `2·deg(v) > Σ_{e∋v} deg e` for every vertex.
    pub stable_by_degrees: bool,
    /// Intersection of all enclosures, clipped below at 0.
    pub combined: (i64, i64),
}

impl SpectralBounds {
    pub fn contains(&self, lambda: f64, slack: f64) -> bool {
        lambda >= self.combined.0 as f64 - slack && lambda <= self.combined.1 as f64 + slack
    }

    /// Either sufficient condition for `0 ∉ σ(ℒ)`.
    pub fn certifies_exponential_stability(&self) -> bool {
        self.stable_by_pairwise || self.stable_by_degrees
    }
}

pub fn gershgorin_bounds(h: &DirectedHypergraph) -> SpectralBounds {
    let p = h.degree_profile();
    let l = h.laplacian();
    let ls = h.dual_laplacian();
    let n = h.vertex_count();

    let inc_sums = p.incident_edge_degree_sums(h);
    let max_inc = inc_sums.iter().copied().max().unwrap_or(0);
    let vertex_interval = (2 * p.deg_min() - max_inc, max_inc);
    let edge_upper = p
        .edge_vertex_degree_sums(h)
        .into_iter()
        .max()
        .unwrap_or(0);

    let radii: Vec<i64> = (0..n)
        .map(|v| (0..n).filter(|&w| w != v).map(|w| l[(v, w)].abs()).sum())
        .collect();
    let gershgorin = if n == 0 {
        (0, 0)
    } else {
        (
            (0..n).map(|v| l[(v, v)] - radii[v]).min().unwrap_or(0),
            (0..n).map(|v| l[(v, v)] + radii[v]).max().unwrap_or(0),
        )
    };
    let max_radius = radii.iter().copied().max().unwrap_or(0);
    let pairwise_interval = (p.deg_min() - max_radius, p.deg_max() + max_radius);
    let m = h.edge_count();
    let edge_radius = (0..m)
        .map(|e| (0..m).filter(|&f| f != e).map(|f| ls[(e, f)].abs()).sum::<i64>())
        .max()
        .unwrap_or(0);
    let pairwise_edge_upper = p.edge_deg_max() + edge_radius;

    let stable_by_pairwise = (0..n).all(|v| p.deg[v] > radii[v]);
    let stable_by_degrees = (0..n).all(|v| 2 * p.deg[v] > inc_sums[v]);

    let lo = [vertex_interval.0, gershgorin.0, pairwise_interval.0, 0]
        .into_iter()
        .max()
        .unwrap();
    let hi = [
        vertex_interval.1,
        edge_upper,
        gershgorin.1,
        pairwise_interval.1,
        pairwise_edge_upper,
    ]
    .into_iter()
    .min()
    .unwrap();

    SpectralBounds {
        vertex_interval,
        edge_upper,
        gershgorin,
        pairwise_interval,
        pairwise_edge_upper,
        stable_by_pairwise,
        stable_by_degrees,
        combined: (lo, hi),
    }
}

/// Closed interval `[lo, hi]`; points are degenerate intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    pub fn contains(&self, x: T, slack: T) -> bool {
        x >= self.lo - slack && x <= self.hi + slack
    }
}

fn merge_intervals<T: Real>(mut v: Vec<Interval<T>>) -> Vec<Interval<T>> {
    v.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("finite endpoints"));
    let mut out: Vec<Interval<T>> = Vec::new();
    for iv in v {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
            _ => out.push(iv),
        }
    }
    out
}

/// `{λ : −λ² + bλ + c ≥ 0}`.
fn concave_quadratic_nonneg<T: Real>(b: T, c: T) -> Option<(T, T)> {
    let disc = b * b + T::lit(4.0) * c;
    if disc < T::zero() {
        return None;
    }
    let r = disc.sqrt();
    let two = T::lit(2.0);
    Some(((b - r) / two, (b + r) / two))
}

/// `{λ : λ² + bλ + c ≥ 0}` as up to two closed half-lines.
fn convex_quadratic_nonneg<T: Real>(b: T, c: T) -> Vec<(T, T)> {
    let inf = T::infinity();
    let disc = b * b - T::lit(4.0) * c;
    if disc <= T::zero() {
        return vec![(-inf, inf)];
    }
    let r = disc.sqrt();
    let two = T::lit(2.0);
    vec![(-inf, (-b - r) / two), ((-b + r) / two, inf)]
}

/// Region `{λ : |λ − a_ii|·|λ − a_33| ≤ a_i3² + |a_13·a_23 + a_12·(λ − a_33)|}`
/// for one oval, as closed intervals.
fn oval_region<T: Real>(a: &Matrix<T>, i: usize) -> Vec<Interval<T>> {
    let aii = a[(i, i)];
    let a33 = a[(2, 2)];
    let c = a[(i, 2)];
    // Inner term of the absolute value: alpha + beta·λ.
    let beta = a[(0, 1)];
    let alpha = a[(0, 2)] * a[(1, 2)] - beta * a33;
    let (dlo, dhi) = if aii <= a33 { (aii, a33) } else { (a33, aii) };
    let inf = T::infinity();

    let mut pieces: Vec<(T, T, T)> = Vec::new(); // (from, to, sign)
    if beta == T::zero() {
        let s = if alpha < T::zero() { -T::one() } else { T::one() };
        pieces.push((-inf, inf, s));
    } else {
        let star = -alpha / beta;
        if beta > T::zero() {
            pieces.push((-inf, star, -T::one()));
            pieces.push((star, inf, T::one()));
        } else {
            pieces.push((-inf, star, T::one()));
            pieces.push((star, inf, -T::one()));
        }
    }

    let mut out = Vec::new();
    let mut push = |lo: T, hi: T| {
        if lo <= hi {
            out.push(Interval { lo, hi });
        }
    };
    for (from, to, s) in pieces {
        // Outside [dlo, dhi] the product is nonnegative: concave condition.
        if let Some((r1, r2)) =
            concave_quadratic_nonneg(aii + a33 + s * beta, c * c + s * alpha - aii * a33)
        {
            for (wlo, whi) in [(-inf, dlo), (dhi, inf)] {
                push(r1.max(from).max(wlo), r2.min(to).min(whi));
            }
        }
        // Inside [dlo, dhi] the product is nonpositive: convex condition.
        for (q1, q2) in convex_quadratic_nonneg(s * beta - aii - a33, c * c + s * alpha + aii * a33) {
            push(q1.max(from).max(dlo), q2.min(to).min(dhi));
        }
    }
    out
}

/// Eigenvalue inclusion set for a symmetric 3×3 matrix from the two ovals
/// `R₃₁(λ) ≥ 1`, `R₃₂(λ) ≥ 1` with the denominator taken in absolute value,
/// together with the diagonal entries.
pub fn dms_inclusion_3x3<T: Real>(a: &Matrix<T>) -> Result<Vec<Interval<T>>, SpectraError> {
    if a.shape() != (3, 3) {
        return Err(SpectraError::NotThreeByThree {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    check_symmetric(a)?;
    let mut all = oval_region(a, 0);
    all.extend(oval_region(a, 1));
    for d in a.diagonal() {
        all.push(Interval { lo: d, hi: d });
    }
    Ok(merge_intervals(all))
}

#[derive(Debug, Clone, Serialize)]
pub struct Lambda2Check<T> {
    pub lambda2: T,
    pub bound: T,
    pub holds: bool,
}

/// `λ₂ ≤ #V/(#V−1) · deg_min` for equipotent hypergraphs.
pub fn lambda2_bound_check<T: Real>(h: &DirectedHypergraph) -> Result<Lambda2Check<T>, SpectraError> {
    if let Some(k) = h.hyperedges().iter().position(|e| !e.is_balanced()) {
        return Err(SpectraError::NotEquipotent(k));
    }
    let n = h.vertex_count();
    if n < 2 {
        return Err(SpectraError::TooFewVertices);
    }
    let s = eigh_int::<T>(&h.laplacian())?;
    let lambda2 = s.eigenvalues()[1];
    let bound = T::from_int(n as i64) / T::from_int(n as i64 - 1)
        * T::from_int(h.degree_profile().deg_min());
    Ok(Lambda2Check {
        lambda2,
        bound,
        holds: lambda2 <= bound + T::lit(1e-8),
    })
}

/// `(λ₁ before, λ₁ after)` deleting the given hyperedges.
pub fn surgery_monotonicity_oracle<T: Real>(
    h: &DirectedHypergraph,
    edges_to_delete: &[usize],
) -> Result<(T, T), SpectraError> {
    let after = h.without_hyperedges(edges_to_delete)?;
    let before = eigh_int::<T>(&h.laplacian())?.lambda1();
    let after = eigh_int::<T>(&after.laplacian())?.lambda1();
    Ok((before, after))
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingCheck<T> {
    pub m: usize,
    pub lambda1_h: T,
    pub lambda1_g: T,
    pub holds: bool,
    pub tight: bool,
}

/// Compares `λ₁(H)` with `m·λ₁(G)` where `G` replaces every hyperedge by
/// the given source→target pairs. `pairing[e]` lists the pairs of hyperedge `e`.
pub fn pairing_bound_check<T: Real>(
    h: &DirectedHypergraph,
    pairing: &[Vec<(usize, usize)>],
) -> Result<PairingCheck<T>, SpectraError> {
    let edges = h.hyperedges();
    if pairing.len() != edges.len() {
        return Err(SpectraError::InvalidPairing {
            edge: pairing.len().min(edges.len()),
            reason: format!("{} pairings for {} hyperedges", pairing.len(), edges.len()),
        });
    }
    let expected = edges.first().map_or(0, |e| e.degree());
    let mut graph_edges = Vec::new();
    for (k, (e, pairs)) in edges.iter().zip(pairing).enumerate() {
        if !e.is_balanced() {
            return Err(SpectraError::NotEquipotent(k));
        }
        if e.degree() != expected {
            return Err(SpectraError::NonUniform {
                edge: k,
                degree: e.degree(),
                expected,
            });
        }
        let srcs: std::collections::BTreeSet<usize> = pairs.iter().map(|p| p.0).collect();
        let tgts: std::collections::BTreeSet<usize> = pairs.iter().map(|p| p.1).collect();
        if pairs.len() != e.sources.len() || srcs != e.sources || tgts != e.targets {
            return Err(SpectraError::InvalidPairing {
                edge: k,
                reason: "pairs must match sources and targets bijectively".into(),
            });
        }
        graph_edges.extend(pairs.iter().copied());
    }
    let m = expected / 2;
    let g = crate::hypergraph::builders::graph(h.vertex_count(), &graph_edges);
    let g = DirectedHypergraph::new(h.vertices().to_vec(), g.hyperedges().to_vec())?;
    let lambda1_h = eigh_int::<T>(&h.laplacian())?.lambda1();
    let lambda1_g = eigh_int::<T>(&g.laplacian())?.lambda1();
    let rhs = T::from_int(m as i64) * lambda1_g;
    let slack = T::lit(1e-8);
    Ok(PairingCheck {
        m,
        lambda1_h,
        lambda1_g,
        holds: lambda1_h <= rhs + slack,
        tight: (lambda1_h - rhs).abs() <= slack,
    })
}
