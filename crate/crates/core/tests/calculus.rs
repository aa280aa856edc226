mod common;

use bimop_core::linalg::{det_bareiss, solve_exact, solve_lu, Matrix};
use bimop_core::multiindex::{shift_x, shift_y, total_degree};
use bimop_core::scalar::rational;
use bimop_core::{canonical_path, pair, unpair, BiPoly, MultiIndex, Path, Rational};
use common::mi;
use proptest::prelude::*;

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return rational(1, 1);
    }
    let mut acc = rational(0, 1);
    for c in 0..n {
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != c)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = m[0][c].clone() * cofactor_det(&minor);
        acc = if c % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec((-5i64..=5, 1i64..=3), n), n).prop_map(|rows| {
            rows.into_iter()
                .map(|row| row.into_iter().map(|(p, q)| rational(p, q)).collect())
                .collect()
        })
    })
}

#[test]
fn bareiss_matches_cofactors_at_size_eight() {
    let m: Vec<Vec<Rational>> = (0..8)
        .map(|i| {
            (0..8)
                .map(|j| rational(((i * 7 + j * 3) % 11) as i64 - 5, (i + j + 1) as i64))
                .collect()
        })
        .collect();
    assert_eq!(
        det_bareiss(&Matrix::from_rows(m.clone()).unwrap()).unwrap(),
        cofactor_det(&m)
    );
}

#[test]
fn positions_walk_the_graded_order() {
    let mut z = 0;
    for d in 0..40u64 {
        for s in 0..=d {
            assert_eq!(pair(d - s, s), z);
            assert_eq!(unpair(z), (d - s, s));
            assert_eq!(total_degree(z), d);
            z += 1;
        }
    }
}

#[test]
fn shifts_are_products_with_x_and_y() {
    for z in 0..500 {
        let (t, s) = unpair(z);
        assert_eq!(shift_x(t, s), pair(t + 1, s));
        assert_eq!(shift_y(t, s), pair(t, s + 1));
    }
}

#[test]
fn canonical_path_visits_waypoints() {
    let ws = [mi(&[0, 0]), mi(&[1, 3]), mi(&[6, 8]), mi(&[11, 8])];
    let p = canonical_path(&ws).unwrap();
    for w in &ws {
        assert_eq!(p.at_modulus(w.modulus()), Some(w));
    }
    assert!(Path::is_valid(p.steps()));
    assert!(canonical_path(&[mi(&[2, 0]), mi(&[0, 3])]).is_err());
}

proptest! {
    #[test]
    fn pairing_is_a_bijection(z in 0u64..1_000_000_000) {
        let (t, s) = unpair(z);
        prop_assert_eq!(pair(t, s), z);
    }

    #[test]
    fn pairing_of_sums(n1 in 0u64..=60, m1 in 0u64..=60, n2 in 0u64..=60, m2 in 0u64..=60) {
        prop_assert_eq!(pair(n1 + n2, m1 + m2), pair(n1, m1) + pair(n2, m2) + (n1 + m1) * (n2 + m2));
        prop_assert!((n1 + m1) * (n2 + m2) <= pair(n1, m2) + pair(n2, m1));
    }

    #[test]
    fn bareiss_matches_cofactors(m in small_matrix(6)) {
        let mat = Matrix::from_rows(m.clone()).unwrap();
        prop_assert_eq!(det_bareiss(&mat).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn exact_solve_multiplies_back(m in small_matrix(7), seed in prop::collection::vec(-9i64..=9, 7)) {
        let mat = Matrix::from_rows(m).unwrap();
        let rhs: Vec<Rational> = seed[..mat.rows()].iter().map(|&v| rational(v, 1)).collect();
        match solve_exact(&mat, &rhs) {
            Ok(x) => prop_assert_eq!(mat.mul_vec(&x).unwrap(), rhs),
            Err(_) => prop_assert_eq!(det_bareiss(&mat).unwrap(), rational(0, 1)),
        }
    }

    #[test]
    fn float_solve_multiplies_back(m in small_matrix(7), seed in prop::collection::vec(-9i64..=9, 7)) {
        let exact = Matrix::from_rows(m).unwrap();
        prop_assume!(det_bareiss(&exact).unwrap() != rational(0, 1));
        let mat = exact.map(bimop_core::Scalar::to_f64);
        let rhs: Vec<f64> = seed[..mat.rows()].iter().map(|&v| v as f64).collect();
        if let Ok(x) = solve_lu(&mat, &rhs, 1e-12) {
            let back = mat.mul_vec(&x).unwrap();
            for (a, b) in back.iter().zip(&rhs) {
                prop_assert!((a - b).abs() <= 1e-8 * (1.0 + b.abs()));
            }
        }
    }

    #[test]
    fn polynomial_product_evaluates_pointwise(
        a in prop::collection::vec(-4i64..=4, 0..10),
        b in prop::collection::vec(-4i64..=4, 0..10),
        x in -3i64..=3,
        y in -3i64..=3,
    ) {
        let p = BiPoly::from_coeffs(a.iter().map(|&v| rational(v, 1)).collect());
        let q = BiPoly::from_coeffs(b.iter().map(|&v| rational(v, 1)).collect());
        let (x, y) = (rational(x, 1), rational(y, 1));
        prop_assert_eq!(p.mul(&q).eval(&x, &y), p.eval(&x, &y) * q.eval(&x, &y));
        prop_assert_eq!(p.mul_x().eval(&x, &y), x.clone() * p.eval(&x, &y));
        prop_assert_eq!(p.mul_y().eval(&x, &y), y.clone() * p.eval(&x, &y));
    }

    #[test]
    fn neighbour_steps_raise_one_component(c in prop::collection::vec(0u64..10, 1..5), j in 0usize..5) {
        let n = MultiIndex::new(c);
        prop_assume!(j < n.len());
        let next = n.bump(j, 1);
        prop_assert_eq!(n.neighbour_step(&next), Some(j));
        prop_assert!(n.le(&next));
        prop_assert_eq!(next.modulus(), n.modulus() + 1);
    }
}
