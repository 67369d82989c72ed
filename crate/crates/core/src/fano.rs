//! Directed realisations of the Fano plane.
//!
//! Each of the 7 lines carries 3 signed incidences. Reversing a whole line
//! leaves the Laplacian unchanged, so orientations are normalised with the
//! topmost incidence of every column equal to `+1`, leaving 14 free signs.
//! Free sign `2j` (resp. `2j+1`) belongs to the second (resp. third) point
//! of line `j`; a set bit means `-1`.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::classify::{self, AsymptoticFlags};
use crate::hypergraph::DirectedHypergraph;
use crate::matrix::IntMatrix;
use crate::spectra;

pub const POINTS: usize = 7;
pub const ORIENTATIONS: u32 = 1 << 14;

/// Lines of the Fano plane in column order, points 0-indexed.
pub const LINES: [[usize; 3]; 7] = [
    [0, 1, 2],
    [0, 3, 4],
    [0, 5, 6],
    [1, 3, 5],
    [1, 4, 6],
    [2, 3, 6],
    [2, 4, 5],
];

/// All-targets realisation; `ℒ = 2·Id + J`.
pub fn fano_base() -> DirectedHypergraph {
    FanoOrientation::from_index(0).hypergraph()
}

/// Canonical sign pattern on the Fano support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FanoOrientation(u16);

impl FanoOrientation {
    /// Panics if `index ≥ 2¹⁴`.
    pub fn from_index(index: u32) -> Self {
        assert!(index < ORIENTATIONS, "orientation index out of range");
        FanoOrientation(index as u16)
    }

    pub fn index(self) -> u32 {
        self.0 as u32
    }

    pub fn incidence(self) -> IntMatrix {
        let mut m = IntMatrix::zeros(POINTS, LINES.len());
        for (j, line) in LINES.iter().enumerate() {
            m[(line[0], j)] = 1;
            for k in 0..2 {
                let bit = self.0 >> (2 * j + k) & 1;
                m[(line[k + 1], j)] = if bit == 1 { -1 } else { 1 };
            }
        }
        m
    }

    pub fn hypergraph(self) -> DirectedHypergraph {
        DirectedHypergraph::from_incidence(None, &self.incidence()).expect("valid incidence")
    }

    pub fn laplacian(self) -> IntMatrix {
        let i = self.incidence();
        &i * &i.transpose()
    }

    /// Canonical orientation of a hypergraph supported on the Fano plane
    /// (columns in [`LINES`] order); `None` if the support differs.
    pub fn canonicalize(inc: &IntMatrix) -> Option<Self> {
        if inc.shape() != (POINTS, LINES.len()) {
            return None;
        }
        let mut bits = 0u16;
        for (j, line) in LINES.iter().enumerate() {
            for i in 0..POINTS {
                let on_line = line.contains(&i);
                if on_line != (inc[(i, j)] != 0) {
                    return None;
                }
            }
            let top = inc[(line[0], j)];
            for k in 0..2 {
                if inc[(line[k + 1], j)] * top < 0 {
                    bits |= 1 << (2 * j + k);
                }
            }
        }
        Some(FanoOrientation(bits))
    }
}

/// Every canonical orientation with its Laplacian, in index order.
pub fn enumerate_laplacians() -> impl Iterator<Item = (FanoOrientation, IntMatrix)> {
    (0..ORIENTATIONS).map(|k| {
        let o = FanoOrientation::from_index(k);
        (o, o.laplacian())
    })
}

const PAIRS: usize = POINTS * (POINTS - 1) / 2;

fn pair_index() -> [[usize; POINTS]; POINTS] {
    let mut idx = [[usize::MAX; POINTS]; POINTS];
    for (p, (i, j)) in (0..POINTS).tuple_combinations().enumerate() {
        idx[i][j] = p;
        idx[j][i] = p;
    }
    idx
}

/// Packs the off-diagonal signs of a Fano Laplacian (all `±1`) so that
/// integer order equals row-major lexicographic order of the matrix.
pub fn sign_key(l: &IntMatrix) -> u32 {
    let mut key = 0u32;
    let mut p = 0;
    for i in 0..POINTS {
        for j in i + 1..POINTS {
            if l[(i, j)] > 0 {
                key |= 1 << (PAIRS - 1 - p);
            }
            p += 1;
        }
    }
    key
}

pub fn matrix_from_key(key: u32) -> IntMatrix {
    let idx = pair_index();
    IntMatrix::from_fn(POINTS, POINTS, |i, j| {
        if i == j {
            3
        } else if key >> (PAIRS - 1 - idx[i][j]) & 1 == 1 {
            1
        } else {
            -1
        }
    })
}

/// For each permutation `π` of the points, the map sending the pair slot of
/// `(i, j)` in the permuted matrix to the slot of `(π(i), π(j))`.
fn permutation_tables() -> Vec<[usize; PAIRS]> {
    let idx = pair_index();
    (0..POINTS)
        .permutations(POINTS)
        .map(|perm| {
            let mut t = [0usize; PAIRS];
            for i in 0..POINTS {
                for j in i + 1..POINTS {
                    t[idx[i][j]] = idx[perm[i]][perm[j]];
                }
            }
            t
        })
        .collect()
}

fn permute_key(key: u32, table: &[usize; PAIRS]) -> u32 {
    let mut out = 0u32;
    for (p, &src) in table.iter().enumerate() {
        if key >> (PAIRS - 1 - src) & 1 == 1 {
            out |= 1 << (PAIRS - 1 - p);
        }
    }
    out
}

/// Lexicographically minimal simultaneous row/column permutation.
pub fn canonical_key(key: u32) -> u32 {
    permutation_tables()
        .iter()
        .map(|t| permute_key(key, t))
        .min()
        .expect("nonempty symmetric group")
}

#[derive(Debug, Clone, Serialize)]
pub struct FanoClass {
    /// Row-major sign key of the lexicographically minimal representative.
    pub key: u32,
    pub size: usize,
    /// First orientation (by index) in the class.
    pub first_member: FanoOrientation,
    pub members: Vec<FanoOrientation>,
}

impl FanoClass {
    pub fn representative(&self) -> IntMatrix {
        matrix_from_key(self.key)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FanoClassTable {
    pub distinct_laplacians: usize,
    pub classes: Vec<FanoClass>,
}

/// Groups the 2¹⁴ Laplacians into classes under simultaneous permutation
/// of rows and columns, by marking whole orbits at once.
pub fn permutation_classes() -> FanoClassTable {
    let mut by_key: HashMap<u32, FanoOrientation> = HashMap::new();
    let mut order = Vec::new();
    for (o, l) in enumerate_laplacians() {
        let k = sign_key(&l);
        if by_key.insert(k, o).is_none() {
            order.push(k);
        }
    }
    let tables = permutation_tables();
    let mut class_of: HashMap<u32, usize> = HashMap::new();
    let mut classes: Vec<FanoClass> = Vec::new();
    for &k in &order {
        if class_of.contains_key(&k) {
            continue;
        }
        let id = classes.len();
        let mut rep = u32::MAX;
        let mut members = Vec::new();
        for t in &tables {
            let img = permute_key(k, t);
            rep = rep.min(img);
            if let Some(&o) = by_key.get(&img) {
                if class_of.insert(img, id).is_none() {
                    members.push(o);
                }
            }
        }
        members.sort();
        classes.push(FanoClass {
            key: rep,
            size: members.len(),
            first_member: members[0],
            members,
        });
    }
    FanoClassTable {
        distinct_laplacians: by_key.len(),
        classes,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassSummary {
    pub key: u32,
    pub size: usize,
    pub eigenvalues: Vec<f64>,
    pub flags: AsymptoticFlags,
}

/// Spectrum and spectral flags of a class representative.
pub fn summarize_class(c: &FanoClass) -> ClassSummary {
    let s = spectra::eigh_int::<f64>(&c.representative()).expect("7x7 symmetric");
    ClassSummary {
        key: c.key,
        size: c.size,
        eigenvalues: s.eigenvalues().to_vec(),
        flags: classify::asymptotic_and_eventual_flags(&s),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FanoNegativesReport {
    pub realisations: usize,
    pub positive: usize,
    pub inf_contractive: usize,
    pub eventually_irreducible: usize,
    pub asymptotically_positive: usize,
    pub asymptotically_inf_contractive: usize,
    pub exponentially_stable: usize,
    pub classes: usize,
    pub classes_eventually_irreducible: usize,
    pub classes_asymptotically_positive: usize,
    pub classes_asymptotically_inf_contractive: usize,
}

/// Exact positivity and ∞-contractivity checks on every realisation, plus
/// counts of the spectral flags per realisation and per class.
pub fn verify_fano_universal_negatives() -> FanoNegativesReport {
    let mut r = FanoNegativesReport {
        realisations: 0,
        positive: 0,
        inf_contractive: 0,
        eventually_irreducible: 0,
        asymptotically_positive: 0,
        asymptotically_inf_contractive: 0,
        exponentially_stable: 0,
        classes: 0,
        classes_eventually_irreducible: 0,
        classes_asymptotically_positive: 0,
        classes_asymptotically_inf_contractive: 0,
    };
    let table = permutation_classes();
    r.classes = table.classes.len();
    for c in &table.classes {
        let s = summarize_class(c);
        let f = &s.flags;
        let count = |flag: bool| if flag { c.size } else { 0 };
        r.eventually_irreducible += count(f.eventually_irreducible.value);
        r.asymptotically_positive += count(f.asymptotically_positive.value);
        r.asymptotically_inf_contractive += count(f.asymptotically_inf_contractive.value);
        r.exponentially_stable += count(f.exponentially_stable.value);
        r.classes_eventually_irreducible += f.eventually_irreducible.value as usize;
        r.classes_asymptotically_positive += f.asymptotically_positive.value as usize;
        r.classes_asymptotically_inf_contractive += f.asymptotically_inf_contractive.value as usize;
    }
    for (_, l) in enumerate_laplacians() {
        r.realisations += 1;
        r.positive += classify::positive_generator_flag(&l).value as usize;
        r.inf_contractive += classify::inf_contractive_flag(&l).value as usize;
    }
    r
}

/// Realisation with a simple zero eigenvalue and sign-changing kernel
/// vector `(1,−1,0,−1,0,0,1)`.
pub fn fano_l1() -> DirectedHypergraph {
    let inc = IntMatrix::from_rows(&[
        [1, 1, 1, 0, 0, 0, 0],
        [1, 0, 0, -1, 1, 0, 0],
        [1, 0, 0, 0, 0, -1, 1],
        [0, 1, 0, 1, 0, 1, 0],
        [0, -1, 0, 0, -1, 0, 1],
        [0, 0, -1, -1, 0, 0, 1],
        [0, 0, -1, 0, 1, 1, 0],
    ]);
    DirectedHypergraph::from_incidence(None, &inc).expect("valid incidence")
}

/// The pair of realisations differing only in the signs of point 1 on the
/// first two lines; `plus` selects `(+1, +1)`, otherwise `(−1, −1)`.
pub fn fano_l2(plus: bool) -> DirectedHypergraph {
    let s = if plus { 1 } else { -1 };
    let inc = IntMatrix::from_rows(&[
        [s, s, -1, 0, 0, 0, 0],
        [1, 0, 0, -1, -1, 0, 0],
        [1, 0, 0, 0, 0, -1, -1],
        [0, 1, 0, 1, 0, 1, 0],
        [0, 1, 0, 0, 1, 0, 1],
        [0, 0, 1, 1, 0, 0, 1],
        [0, 0, 1, 0, 1, 1, 0],
    ]);
    DirectedHypergraph::from_incidence(None, &inc).expect("valid incidence")
}
