mod common;

use hyperheat::fano::{self, FanoOrientation, LINES, ORIENTATIONS};
use hyperheat::spectra::eigh_int;
use hyperheat::IntMatrix;

#[test]
fn lines_form_a_projective_plane() {
    for a in 0..7 {
        for b in a + 1..7 {
            let n = LINES.iter().filter(|l| l.contains(&a) && l.contains(&b)).count();
            assert_eq!(n, 1, "points {a}, {b}");
        }
    }
}

#[test]
fn base_laplacian_is_two_id_plus_j() {
    let l = fano::fano_base().laplacian();
    assert_eq!(l, &IntMatrix::identity(7).scale(2) + &IntMatrix::ones(7, 7));
}

#[test]
fn keys_round_trip() {
    for idx in (0..ORIENTATIONS).step_by(97) {
        let l = FanoOrientation::from_index(idx).laplacian();
        let k = fano::sign_key(&l);
        assert!(k < 1 << 21);
        assert_eq!(fano::matrix_from_key(k), l);
    }
}

#[test]
fn canonicalize_recovers_the_orientation() {
    for idx in [0, 1, 77, 5000, 16383] {
        let o = FanoOrientation::from_index(idx);
        let mut inc = o.incidence();
        // Reverse line 3 entirely.
        for v in 0..7 {
            inc[(v, 3)] = -inc[(v, 3)];
        }
        assert_eq!(FanoOrientation::canonicalize(&inc), Some(o));
    }
    assert_eq!(FanoOrientation::canonicalize(&IntMatrix::zeros(7, 7)), None);
}

#[test]
fn canonical_key_is_class_invariant() {
    let table = fano::permutation_classes();
    for c in table.classes.iter().take(10) {
        for m in c.members.iter().take(20) {
            assert_eq!(fano::canonical_key(fano::sign_key(&m.laplacian())), c.key);
        }
    }
}

#[test]
fn named_realisations() {
    let l1 = fano::fano_l1();
    let s = eigh_int::<f64>(&l1.laplacian()).unwrap();
    assert!(s.lambda1().abs() < 1e-9);
    assert_eq!(s.kernel_dim(), 1);
    let k = [1.0, -1.0, 0.0, -1.0, 0.0, 0.0, 1.0];
    let phi = s.vector(0);
    let dot: f64 = phi.iter().zip(&k).map(|(a, b)| a * b).sum();
    assert!((dot.abs() - 2.0).abs() < 1e-9);

    let cubic = [1i128, -13, 40, -4];
    let root = common::dyadic_root(&cubic, 0, 1, 36);
    for plus in [false, true] {
        let l = fano::fano_l2(plus).laplacian();
        assert!(FanoOrientation::canonicalize(fano::fano_l2(plus).incidence().matrix()).is_some());
        let s = eigh_int::<f64>(&l).unwrap();
        assert!((s.lambda1() - root).abs() < 1e-9);
        let v = s.vector(0);
        let scaled: Vec<f64> = v.iter().map(|x| x / v[6]).collect();
        assert!((scaled[0] - 2.53982).abs() < 1e-4, "{scaled:?}");
    }
}
