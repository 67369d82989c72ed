mod common;

use hyperheat::duality::{self, DualityError, SimplicialComplex};
use hyperheat::builders;
use proptest::prelude::*;

#[test]
fn closure_and_face_counts() {
    let k = SimplicialComplex::closure(5, &[vec![0, 1, 2], vec![1, 2, 3], vec![1, 3, 4]]).unwrap();
    assert_eq!(k.dim(), 2);
    assert_eq!(k.faces(0).len(), 5);
    assert_eq!(k.faces(1).len(), 7);
    assert_eq!(k.faces(2).len(), 3);
    assert!(matches!(k.coboundary(2), Err(DualityError::DegreeOutOfRange { .. })));
    assert!(k.hodge_laplacian(3).is_err());
    assert!(SimplicialComplex::closure(3, &[vec![0, 5]]).is_err());
}

#[test]
fn embedding_dual_laplacian_is_hodge_laplacian() {
    let k = SimplicialComplex::closure(5, &[vec![0, 1, 2], vec![1, 2, 3], vec![1, 3, 4]]).unwrap();
    for i in 0..=k.dim() {
        let h = k.hypergraph_embedding(i).unwrap();
        assert_eq!(h.dual_laplacian(), k.hodge_laplacian(i).unwrap(), "degree {i}");
    }
    let h = k.hypergraph_embedding(1).unwrap();
    assert_eq!(h.vertices()[0], "[0]");
}

#[test]
fn graph_laplacian_is_degree_zero_hodge_laplacian() {
    let k = SimplicialComplex::closure(4, &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
    assert_eq!(k.hodge_laplacian(0).unwrap(), builders::path(4).laplacian());
}

#[test]
fn coherent_orientation_of_paths_and_cycles() {
    let g = builders::graph(4, &[(1, 0), (1, 2), (3, 2)]);
    let o = duality::coherent_orientation(&g).unwrap().unwrap();
    let r = duality::graph_dual_report(&o).unwrap();
    assert!(r.positive_as_given);
    assert!(duality::coherent_orientation(&builders::star(3)).unwrap().is_none());

    let c = duality::graph_dual_report(&builders::graph(4, &[(0, 1), (2, 1), (2, 3), (0, 3)])).unwrap();
    assert!(c.positive_orientation_exists && c.degrees_all_two);
    assert_eq!(c.cyclomatic_number, 1);
    assert_eq!(c.dual_kernel_dim, 1);
    assert!(c.stochastic);
}

#[test]
fn forests_have_exponentially_stable_duals() {
    let r = duality::graph_dual_report(&builders::star(4)).unwrap();
    assert!(r.is_forest && r.dual_exponentially_stable);
    assert!(!r.positive_orientation_exists);
    assert!(duality::graph_dual_report(&builders::single_hyperedge(1, 2)).is_err());
}

proptest! {
    #[test]
    fn coboundaries_compose_to_zero(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let k = common::random_complex(&mut r);
        for i in 0..k.dim().saturating_sub(1) {
            let p = &k.coboundary(i + 1).unwrap() * &k.coboundary(i).unwrap();
            prop_assert!(p.as_slice().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn cyclomatic_identity(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let g = common::random_graph(&mut r, 8, 12);
        let rep = duality::graph_dual_report(&g).unwrap();
        let cp = common::charpoly(&g.dual_laplacian());
        let kernel = cp.iter().rev().take_while(|&&c| c == 0).count();
        prop_assert_eq!(rep.dual_kernel_dim, kernel);
        prop_assert!(rep.kernel_matches_cyclomatic);
    }
}
