//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use hyperheat::duality::SimplicialComplex;
use hyperheat::{DirectedHypergraph, Hyperedge, IntMatrix, Matrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random hypergraph on 1..=max_n vertices with up to max_m hyperedges.
/// Every vertex joins each hyperedge as source, target or not at all.
pub fn random_hypergraph(r: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> DirectedHypergraph {
    let n = r.gen_range(1..=max_n);
    let m = r.gen_range(0..=max_m);
    let edges = (0..m)
        .map(|_| {
            let mut s = Vec::new();
            let mut t = Vec::new();
            for v in 0..n {
                match r.gen_range(0..3) {
                    0 => s.push(v),
                    1 => t.push(v),
                    _ => {}
                }
            }
            Hyperedge::new(s, t)
        })
        .collect();
    DirectedHypergraph::with_vertex_count(n, edges).unwrap()
}

/// Random hypergraph where every hyperedge has equally many sources and targets.
pub fn random_equipotent(r: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> DirectedHypergraph {
    let n = r.gen_range(2..=max_n.max(2));
    let m = r.gen_range(0..=max_m);
    let mut verts: Vec<usize> = (0..n).collect();
    let edges = (0..m)
        .map(|_| {
            verts.shuffle(r);
            let k = r.gen_range(0..=n / 2);
            Hyperedge::new(verts[..k].to_vec(), verts[k..2 * k].to_vec())
        })
        .collect();
    DirectedHypergraph::with_vertex_count(n, edges).unwrap()
}

/// Random directed multigraph without loops.
pub fn random_graph(r: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> DirectedHypergraph {
    let n = r.gen_range(2..=max_n);
    let m = r.gen_range(0..=max_m);
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| {
            let s = r.gen_range(0..n);
            let mut t = r.gen_range(0..n - 1);
            if t >= s {
                t += 1;
            }
            (s, t)
        })
        .collect();
    hyperheat::builders::graph(n, &edges)
}

/// Random simplicial complex generated by a few random faces.
pub fn random_complex(r: &mut ChaCha8Rng) -> SimplicialComplex {
    let n = r.gen_range(3..=6);
    let k = r.gen_range(1..=4);
    let faces: Vec<Vec<usize>> = (0..k)
        .map(|_| {
            let mut f: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
            if f.is_empty() {
                f.push(r.gen_range(0..n));
            }
            f
        })
        .collect();
    SimplicialComplex::closure(n, &faces).unwrap()
}

/// `ℐℐᵀ` by explicit summation over hyperedges.
pub fn laplacian_by_product(h: &DirectedHypergraph) -> IntMatrix {
    let n = h.vertex_count();
    let mut l = IntMatrix::zeros(n, n);
    for e in h.hyperedges() {
        let col: Vec<i64> = (0..n)
            .map(|v| {
                if e.targets.contains(&v) {
                    1
                } else if e.sources.contains(&v) {
                    -1
                } else {
                    0
                }
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                l[(i, j)] += col[i] * col[j];
            }
        }
    }
    l
}

/// Characteristic polynomial `det(xI − A)` by Faddeev–LeVerrier in exact
/// integers. Coefficients from `x^n` down to the constant term.
pub fn charpoly(a: &IntMatrix) -> Vec<i128> {
    let n = a.rows();
    let a: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| a[(i, j)] as i128).collect()).collect();
    let mul = |x: &Vec<Vec<i128>>, y: &Vec<Vec<i128>>| -> Vec<Vec<i128>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect())
            .collect()
    };
    let mut c = vec![1i128];
    let mut m: Vec<Vec<i128>> = vec![vec![0; n]; n];
    for k in 1..=n {
        let prev = *c.last().unwrap();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += prev;
        }
        let am = mul(&a, &m);
        let tr: i128 = (0..n).map(|i| am[i][i]).sum();
        assert_eq!(tr % k as i128, 0, "Faddeev–LeVerrier division must be exact");
        c.push(-tr / k as i128);
        m = am;
    }
    c
}

/// Exact sign of `p(a / 2^k)` for integer coefficients (highest first).
fn dyadic_sign(p: &[i128], a: i128, k: u32) -> i32 {
    // p(a/2^k) · 2^{k·deg} = Σ c_i a^{deg−i} 2^{k·i}
    let deg = p.len() - 1;
    let mut acc: i128 = 0;
    for (i, &c) in p.iter().enumerate() {
        let term = a
            .checked_pow((deg - i) as u32)
            .and_then(|x| x.checked_mul(c))
            .and_then(|x| x.checked_mul(1i128.checked_shl(k * i as u32)?))
            .expect("dyadic evaluation overflows i128");
        acc = acc.checked_add(term).expect("dyadic evaluation overflows i128");
    }
    acc.signum() as i32
}

/// Root of `p` in `[lo, hi]` (integers with a sign change) by bisection on
/// dyadic rationals with exact evaluation. Returns the bracket midpoint.
pub fn dyadic_root(p: &[i128], lo: i64, hi: i64, bits: u32) -> f64 {
    let mut a = (lo as i128) << bits;
    let mut b = (hi as i128) << bits;
    let sa = dyadic_sign(p, a, bits);
    let sb = dyadic_sign(p, b, bits);
    assert!(sa * sb < 0, "no sign change on [{lo}, {hi}]");
    while b - a > 1 {
        let mid = (a + b) / 2;
        let sm = dyadic_sign(p, mid, bits);
        if sm == 0 {
            return mid as f64 / (1u64 << bits) as f64;
        }
        if sm == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    (a + b) as f64 / 2.0 / (1u64 << bits) as f64
}

/// `e^{−tA}` by scaling and squaring a truncated Taylor series.
pub fn expm_taylor(a: &IntMatrix, t: f64) -> Matrix<f64> {
    let n = a.rows();
    let m = a.to_real::<f64>().scale(-t);
    let norm = m.op_norm_inf();
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.25 {
        s += 1;
    }
    let m = m.scale(1.0 / 2f64.powi(s));
    let mut sum = Matrix::<f64>::identity(n);
    let mut term = Matrix::<f64>::identity(n);
    for k in 1..=24 {
        term = (&term * &m).scale(1.0 / k as f64);
        sum = &sum + &term;
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// Remainder of exact division by a monic integer polynomial.
pub fn poly_rem(p: &[i128], monic: &[i128]) -> Vec<i128> {
    assert_eq!(monic[0], 1, "divisor must be monic");
    let mut r = p.to_vec();
    let d = monic.len() - 1;
    while r.len() > d {
        let lead = r[0];
        for (k, &c) in monic.iter().enumerate() {
            r[k] -= lead * c;
        }
        r.remove(0);
    }
    r
}
