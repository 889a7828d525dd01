//! Cross-checks of the reference oracles against re-implementations written
//! independently in test code.

use lislab::model::{boolean_matvec, maxplus_product, BitVector, Matrix};
use lislab::verify::random_matrix;
use rand::rngs::StdRng;
use rand::SeedableRng;

// second triple loop, written without looking at the library one
fn maxplus_reference(a: &Matrix, b: &Matrix) -> Vec<Vec<i64>> {
    let n = a.n();
    let mut c = vec![vec![i64::MIN; n]; n];
    for row in 0..n {
        for col in 0..n {
            for mid in 0..n {
                let candidate = a.get(row, mid) + b.get(mid, col);
                if candidate > c[row][col] {
                    c[row][col] = candidate;
                }
            }
        }
    }
    c
}

#[test]
fn maxplus_agrees_with_independent_reimplementation() {
    let mut rng = StdRng::seed_from_u64(42);
    let a = random_matrix(&mut rng, 4, 1);
    let b = random_matrix(&mut rng, 4, 1);
    let c = maxplus_product(&a, &b).unwrap();
    let reference = maxplus_reference(&a, &b);
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(c.get(i, j), reference[i][j], "entry [{i}][{j}]");
        }
    }
}

#[test]
fn boolean_matvec_agrees_with_maxplus_columns() {
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..5 {
        let a = random_matrix(&mut rng, 5, 1);
        let b = random_matrix(&mut rng, 5, 1);
        let c = maxplus_product(&a, &b).unwrap();
        for j in 0..5 {
            let col = BitVector::new(b.column(j).iter().map(|&e| e as u8).collect()).unwrap();
            let u = boolean_matvec(&a, &col).unwrap();
            for i in 0..5 {
                assert_eq!(u.get(i) == 1, c.get(i, j) == 2);
            }
        }
    }
}
