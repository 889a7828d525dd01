//! Matrices, bit vectors, weighted points and the brute-force reference
//! oracles for the (max,+)-product and Boolean matrix-vector multiplication.
//!
//! Everything here is exact integer arithmetic. Coordinates and weights are
//! `i64`; magnitudes stay within small polynomials of `n` and `M`, and debug
//! builds panic on overflow.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Dense square matrix with entries in `{0, ..., bound}`.
///
/// Boolean matrices are the `bound == 1` case; there is no separate type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    n: usize,
    bound: i64,
    entries: Vec<i64>,
}

impl Matrix {
    pub fn new(n: usize, bound: i64, entries: Vec<Vec<i64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("matrix dimension must be >= 1".into()));
        }
        if bound < 1 {
            return Err(Error::InvalidInput("entry bound must be >= 1".into()));
        }
        if entries.len() != n || entries.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "expected {n}x{n} entries"
            )));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in entries.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e < 0 || e > bound {
                    return Err(Error::EntryOutOfRange {
                        value: e,
                        bound,
                        place: format!("[{i}][{j}]"),
                    });
                }
                flat.push(e);
            }
        }
        Ok(Matrix {
            n,
            bound,
            entries: flat,
        })
    }

    pub fn zero(n: usize, bound: i64) -> Self {
        Matrix::new(n, bound, vec![vec![0; n]; n]).expect("zero matrix is in range")
    }

    pub fn identity_boolean(n: usize) -> Self {
        let mut rows = vec![vec![0; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        Matrix::new(n, 1, rows).expect("identity is Boolean")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n + col]
    }

    /// Column `k` as a plain vector, the `b` input of an embedding.
    pub fn column(&self, k: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, k)).collect()
    }

    pub fn is_boolean(&self) -> bool {
        self.entries.iter().all(|&e| e == 0 || e == 1)
    }

    /// Parses the text format: first line `n M`, then `n` rows of `n` integers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "empty input".into() })?;
        let mut head = header.split_whitespace();
        let n: usize = head
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse { line: 1, msg: "expected `n M` header".into() })?;
        let bound: i64 = head
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse { line: 1, msg: "expected `n M` header".into() })?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (idx, line) = lines.next().ok_or_else(|| Error::Parse {
                line: rows.len() + 2,
                msg: "missing matrix row".into(),
            })?;
            let row: Vec<i64> = line
                .split_whitespace()
                .map(|t| {
                    t.parse().map_err(|_| Error::Parse {
                        line: idx + 1,
                        msg: format!("bad integer `{t}`"),
                    })
                })
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        Matrix::new(n, bound, rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.bound);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Boolean vector, one bit per element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitVector {
    bits: Vec<u8>,
}

impl BitVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidInput("bit vector entries must be 0 or 1".into()));
        }
        Ok(BitVector { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Parses one line of space-separated bits.
    pub fn parse(line: &str) -> Result<Self> {
        let bits: Vec<u8> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u8>().map_err(|_| Error::Parse {
                    line: 1,
                    msg: format!("bad bit `{t}`"),
                })
            })
            .collect::<Result<_>>()?;
        BitVector::new(bits)
    }

    pub fn to_text(&self) -> String {
        self.bits
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Integer 2D point with a nonnegative weight and an optional structural label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub x: i64,
    pub y: i64,
    pub w: i64,
    pub label: Option<crate::embedding::PointLabel>,
}

impl WeightedPoint {
    pub fn new(x: i64, y: i64, w: i64) -> Self {
        assert!(w >= 0, "point weight must be nonnegative");
        WeightedPoint { x, y, w, label: None }
    }

    pub fn labeled(x: i64, y: i64, w: i64, label: crate::embedding::PointLabel) -> Self {
        assert!(w >= 0, "point weight must be nonnegative");
        WeightedPoint { x, y, w, label: Some(label) }
    }
}

/// Strict dominance: `p` precedes `q` iff `p.x < q.x` and `p.y < q.y`.
pub fn dominates(p: &WeightedPoint, q: &WeightedPoint) -> bool {
    p.x < q.x && p.y < q.y
}

/// Reference oracle: `C[i][j] = max_k (A[i][k] + B[k][j])` by the triple loop.
pub fn maxplus_product(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.n(),
            a.n(),
            b.n(),
            b.n()
        )));
    }
    let n = a.n();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut best = i64::MIN;
            for k in 0..n {
                best = best.max(a.get(i, k) + b.get(k, j));
            }
            rows[i][j] = best;
        }
    }
    Matrix::new(n, a.bound() + b.bound(), rows)
}

/// Reference oracle: `u[i] = OR_j (A[i][j] AND v[j])`.
pub fn boolean_matvec(a: &Matrix, v: &BitVector) -> Result<BitVector> {
    if !a.is_boolean() {
        return Err(Error::InvalidInput("matrix is not Boolean".into()));
    }
    if a.n() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix side {} vs vector length {}",
            a.n(),
            v.len()
        )));
    }
    let n = a.n();
    let bits = (0..n)
        .map(|i| (0..n).any(|j| a.get(i, j) == 1 && v.get(j) == 1) as u8)
        .collect();
    BitVector::new(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominates_is_strict_in_both_coordinates() {
        let p = |x, y| WeightedPoint::new(x, y, 0);
        assert!(dominates(&p(1, 1), &p(2, 2)));
        assert!(!dominates(&p(1, 1), &p(1, 5)));
        assert!(!dominates(&p(3, 0), &p(4, 0)));
    }

    #[test]
    fn maxplus_single_entry() {
        let a = Matrix::new(1, 3, vec![vec![2]]).unwrap();
        let b = Matrix::new(1, 3, vec![vec![3]]).unwrap();
        let c = maxplus_product(&a, &b).unwrap();
        assert_eq!(c.get(0, 0), 5);
    }

    #[test]
    fn maxplus_zero_matrices() {
        let z = Matrix::zero(3, 1);
        let c = maxplus_product(&z, &z).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c.get(i, j), 0);
            }
        }
    }

    #[test]
    fn maxplus_against_zero_gives_row_maxima() {
        let a = Matrix::new(3, 5, vec![vec![1, 4, 2], vec![0, 0, 5], vec![3, 3, 3]]).unwrap();
        let c = maxplus_product(&a, &Matrix::zero(3, 5)).unwrap();
        for i in 0..3 {
            let row_max = (0..3).map(|k| a.get(i, k)).max().unwrap();
            for j in 0..3 {
                assert_eq!(c.get(i, j), row_max);
            }
        }
    }

    #[test]
    fn maxplus_rejects_dimension_mismatch() {
        let a = Matrix::zero(2, 1);
        let b = Matrix::zero(3, 1);
        assert!(maxplus_product(&a, &b).is_err());
    }

    #[test]
    fn boolean_matvec_identity() {
        let a = Matrix::identity_boolean(4);
        let v = BitVector::new(vec![1, 0, 1, 0]).unwrap();
        assert_eq!(boolean_matvec(&a, &v).unwrap(), v);
    }

    #[test]
    fn boolean_matvec_zero_vector() {
        let ones = Matrix::new(3, 1, vec![vec![1; 3]; 3]).unwrap();
        let v = BitVector::new(vec![0, 0, 0]).unwrap();
        assert_eq!(boolean_matvec(&ones, &v).unwrap().bits(), &[0, 0, 0]);
    }

    #[test]
    fn boolean_matvec_direct_evaluation() {
        let a = Matrix::new(2, 1, vec![vec![0, 1], vec![0, 0]]).unwrap();
        let v = BitVector::new(vec![0, 1]).unwrap();
        assert_eq!(boolean_matvec(&a, &v).unwrap().bits(), &[1, 0]);
    }

    #[test]
    fn maxplus_on_boolean_pair_matches_matvec_per_column() {
        // entries of a Boolean (max,+)-product lie in {0,1,2}; 2 exactly when
        // the Boolean product bit is set
        let a = Matrix::new(
            4,
            1,
            vec![
                vec![1, 0, 0, 1],
                vec![0, 0, 1, 0],
                vec![1, 1, 0, 0],
                vec![0, 0, 0, 0],
            ],
        )
        .unwrap();
        let b = Matrix::new(
            4,
            1,
            vec![
                vec![0, 1, 0, 0],
                vec![1, 0, 0, 1],
                vec![0, 0, 1, 1],
                vec![1, 0, 1, 0],
            ],
        )
        .unwrap();
        let c = maxplus_product(&a, &b).unwrap();
        for j in 0..4 {
            let col = BitVector::new(b.column(j).iter().map(|&e| e as u8).collect()).unwrap();
            let u = boolean_matvec(&a, &col).unwrap();
            for i in 0..4 {
                assert!((0..=2).contains(&c.get(i, j)));
                assert_eq!(c.get(i, j) == 2, u.get(i) == 1);
            }
        }
    }

    #[test]
    fn matrix_parse_round_trip_and_range_check() {
        let m = Matrix::parse("2 3\n0 3\n1 2\n").unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m.get(0, 1), 3);
        assert_eq!(Matrix::parse(&m.to_text()).unwrap(), m);
        assert!(Matrix::parse("2 3\n0 4\n1 2\n").is_err());
        assert!(Matrix::parse("2 3\n0 -1\n1 2\n").is_err());
    }

    #[test]
    fn bitvector_parse_rejects_non_bits() {
        assert!(BitVector::parse("0 1 1 0").is_ok());
        assert!(BitVector::parse("0 2").is_err());
    }
}
