//! The six-family point-set embedding of a matrix `A` and a weight vector `b`.
//!
//! The embedding places `3n^2 + 3n` weighted points so that the maximum-weight
//! dominance chain between the j-th start point and the j-th end point encodes
//! `max_i (A[j][i] + b[i])` plus a fixed offset. With multiplier `M = 1` this
//! is the Boolean construction; `M > 1` is the weighted-matrix variant.
//!
//! Family names:
//! - `L`      left-grid chain points, weight `3M(n-j)` in column `j`
//! - `Lp`     left-grid turn points, weight `3M(n-j) + A[j][i]` (transposed access)
//! - `R`      right-grid chain points, weight `3M(j+1)`
//! - `A`      start antichain below the left grid, weight 1
//! - `Ap`     end antichain above the right grid, weight 1
//! - `B`      middle antichain carrying the `b` weights

use crate::error::{Error, Result};
use crate::model::{Matrix, WeightedPoint};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    L,
    Lp,
    R,
    A,
    Ap,
    B,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::L => "L",
            Family::Lp => "Lp",
            Family::R => "R",
            Family::A => "A",
            Family::Ap => "Ap",
            Family::B => "B",
        };
        write!(f, "{s}")
    }
}

/// Structural tag of an embedding point. Grid families carry both indices,
/// special families carry one; the unused index is -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointLabel {
    pub family: Family,
    pub i: i32,
    pub j: i32,
}

impl PointLabel {
    pub fn grid(family: Family, i: usize, j: usize) -> Self {
        debug_assert!(matches!(family, Family::L | Family::Lp | Family::R));
        PointLabel { family, i: i as i32, j: j as i32 }
    }

    pub fn start(j: usize) -> Self {
        PointLabel { family: Family::A, i: -1, j: j as i32 }
    }

    pub fn end(j: usize) -> Self {
        PointLabel { family: Family::Ap, i: -1, j: j as i32 }
    }

    pub fn middle(i: usize) -> Self {
        PointLabel { family: Family::B, i: i as i32, j: -1 }
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.family, self.i, self.j)
    }
}

/// A built embedding: the labeled point set plus its parameters.
#[derive(Debug, Clone)]
pub struct Embedding {
    n: usize,
    multiplier: i64,
    matrix: Matrix,
    b: Vec<i64>,
    points: Vec<WeightedPoint>,
    index: HashMap<PointLabel, usize>,
}

/// One weight change produced by swapping the `b` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightDelta {
    pub label: PointLabel,
    pub old_weight: i64,
    pub new_weight: i64,
}

fn check_vector(b: &[i64], n: usize, bound: i64) -> Result<()> {
    if b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "b has length {}, expected {n}",
            b.len()
        )));
    }
    for (i, &e) in b.iter().enumerate() {
        if e < 0 || e > bound {
            return Err(Error::EntryOutOfRange {
                value: e,
                bound,
                place: format!("b[{i}]"),
            });
        }
    }
    Ok(())
}

/// Builds the embedding of `matrix` and vector `b` with weight multiplier
/// `multiplier`. Requires all entries of `matrix` and `b` in
/// `{0, ..., multiplier}`.
pub fn build_embedding(matrix: &Matrix, b: &[i64], multiplier: i64) -> Result<Embedding> {
    let n = matrix.n();
    let m = multiplier;
    if m < 1 {
        return Err(Error::InvalidInput("multiplier must be >= 1".into()));
    }
    if matrix.bound() > m {
        return Err(Error::InvalidInput(format!(
            "matrix bound {} exceeds multiplier {m}",
            matrix.bound()
        )));
    }
    check_vector(b, n, m)?;

    let ni = n as i64;
    let mut points = Vec::with_capacity(3 * n * n + 3 * n);
    let mut index = HashMap::with_capacity(3 * n * n + 3 * n);
    let mut push = |points: &mut Vec<WeightedPoint>, label: PointLabel, x: i64, y: i64, w: i64| {
        index.insert(label, points.len());
        points.push(WeightedPoint::labeled(x, y, w, label));
    };

    for i in 0..n {
        let ii = i as i64;
        for j in 0..n {
            let jj = j as i64;
            push(
                &mut points,
                PointLabel::grid(Family::L, i, j),
                jj * (2 * ni + 1) + ii + 2,
                ii * (3 * ni + 1) + 2 * ni + jj + 1,
                3 * m * (ni - jj),
            );
            push(
                &mut points,
                PointLabel::grid(Family::Lp, i, j),
                (jj + 1) * (2 * ni + 1) - ii,
                ii * (3 * ni + 1) + 2 * ni - jj,
                3 * m * (ni - jj) + matrix.get(j, i),
            );
            push(
                &mut points,
                PointLabel::grid(Family::R, i, j),
                (2 * ni + jj) * (ni + 1) + ii + 1,
                (ii + 1) * (3 * ni + 1) + jj + 1,
                3 * m * (jj + 1),
            );
        }
    }
    for j in 0..n {
        let jj = j as i64;
        push(
            &mut points,
            PointLabel::start(j),
            jj * (2 * ni + 1) + 1,
            ni - jj,
            1,
        );
        push(
            &mut points,
            PointLabel::end(n - j - 1),
            (2 * ni + jj + 1) * (ni + 1),
            3 * ni * (ni + 1) - jj,
            1,
        );
    }
    for i in 0..n {
        let ii = i as i64;
        push(
            &mut points,
            PointLabel::middle(i),
            2 * ni * (ni + 1) - ii,
            (ii + 1) * (3 * ni + 1),
            b[i],
        );
    }

    Ok(Embedding {
        n,
        multiplier: m,
        matrix: matrix.clone(),
        b: b.to_vec(),
        points,
        index,
    })
}

impl Embedding {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplier(&self) -> i64 {
        self.multiplier
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn points(&self) -> &[WeightedPoint] {
        &self.points
    }

    /// The unique point carrying `label`.
    pub fn special_point(&self, label: PointLabel) -> Result<WeightedPoint> {
        self.index
            .get(&label)
            .map(|&idx| self.points[idx])
            .ok_or_else(|| Error::UnknownLabel(format!("{label}")))
    }

    /// Replaces the middle-antichain weights with `new_b`. Positions are
    /// untouched; the returned deltas let a driver replay the swap as
    /// weight updates on a dynamic structure.
    pub fn swap_b_column(&mut self, new_b: &[i64]) -> Result<Vec<WeightDelta>> {
        check_vector(new_b, self.n, self.multiplier)?;
        let mut deltas = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let label = PointLabel::middle(i);
            let idx = self.index[&label];
            deltas.push(WeightDelta {
                label,
                old_weight: self.points[idx].w,
                new_weight: new_b[i],
            });
            self.points[idx].w = new_b[i];
        }
        self.b = new_b.to_vec();
        Ok(deltas)
    }

    /// Dump format: one line per point, `family i j x y w`, sorted by x.
    pub fn dump(&self) -> String {
        let mut sorted: Vec<&WeightedPoint> = self.points.iter().collect();
        sorted.sort_by_key(|p| p.x);
        let mut out = String::new();
        for p in sorted {
            let label = p.label.expect("embedding points are labeled");
            out.push_str(&format!("{} {} {} {}\n", label, p.x, p.y, p.w));
        }
        out
    }
}

/// Replaces each weight-`w` point by a diagonal run of `w` unit points.
///
/// With scale `s = 1 + max_weight`, point `(x, y, w)` becomes
/// `(x*s + t, y*s + t)` for `0 <= t < w`. The scale keeps every dominance
/// relation of the input intact, so the longest chain of the output equals
/// the maximum-weight chain of the input.
pub fn expand_unweighted(points: &[WeightedPoint]) -> Result<Vec<WeightedPoint>> {
    let max_w = points.iter().map(|p| p.w).max().unwrap_or(0);
    expand_unweighted_scaled(points, max_w + 1)
}

/// Expansion with an explicit scale, for callers that must keep coordinates
/// stable while weights change over time. Requires `scale > max_weight`.
pub fn expand_unweighted_scaled(points: &[WeightedPoint], scale: i64) -> Result<Vec<WeightedPoint>> {
    let mut xs = BTreeSet::new();
    let mut ys = BTreeSet::new();
    for p in points {
        if !xs.insert(p.x) || !ys.insert(p.y) {
            return Err(Error::CoordinateCollision(format!(
                "duplicate coordinate at ({}, {})",
                p.x, p.y
            )));
        }
        if p.w >= scale {
            return Err(Error::InvalidInput(format!(
                "scale {scale} does not exceed weight {}",
                p.w
            )));
        }
    }
    let mut out = Vec::new();
    for p in points {
        for t in 0..p.w {
            let mut q = WeightedPoint::new(p.x * scale + t, p.y * scale + t, 1);
            q.label = p.label;
            out.push(q);
        }
    }
    Ok(out)
}

/// Outcome of one structural check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Report of all structural checks; never mutates the embedding.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    fn record(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn is_chain(mut pts: Vec<WeightedPoint>) -> bool {
    pts.sort_by_key(|p| p.x);
    pts.windows(2).all(|w| w[0].x < w[1].x && w[0].y < w[1].y)
}

fn is_antichain(mut pts: Vec<WeightedPoint>) -> bool {
    pts.sort_by_key(|p| p.x);
    pts.windows(2).all(|w| w[0].x < w[1].x && w[0].y > w[1].y)
}

/// Checks every structural property of a freshly built embedding: per-row and
/// per-column chains and antichains in the grids, the relative placement of
/// the special antichains, global coordinate distinctness and the point count.
pub fn validate_structure(emb: &Embedding) -> ValidationReport {
    let n = emb.n;
    let mut report = ValidationReport { checks: Vec::new() };
    let get = |family, i, j| emb.special_point(PointLabel::grid(family, i, j)).unwrap();

    let expected = 3 * n * n + 3 * n;
    report.record(
        "point-count",
        emb.points.len() == expected,
        format!("{} points, expected {expected}", emb.points.len()),
    );

    let xs: BTreeSet<i64> = emb.points.iter().map(|p| p.x).collect();
    let ys: BTreeSet<i64> = emb.points.iter().map(|p| p.y).collect();
    report.record(
        "distinct-x",
        xs.len() == emb.points.len(),
        format!("{} distinct x of {}", xs.len(), emb.points.len()),
    );
    report.record(
        "distinct-y",
        ys.len() == emb.points.len(),
        format!("{} distinct y of {}", ys.len(), emb.points.len()),
    );

    for (family, chain_expected, name) in [
        (Family::L, true, "left-grid"),
        (Family::Lp, false, "turn"),
        (Family::R, true, "right-grid"),
    ] {
        let col_ok = (0..n).all(|j| {
            let col: Vec<_> = (0..n).map(|i| get(family, i, j)).collect();
            if chain_expected { is_chain(col) } else { is_antichain(col) }
        });
        let row_ok = (0..n).all(|i| {
            let row: Vec<_> = (0..n).map(|j| get(family, i, j)).collect();
            if chain_expected { is_chain(row) } else { is_antichain(row) }
        });
        let kind = if chain_expected { "chains" } else { "antichains" };
        report.record(
            &format!("{name}-columns-{kind}"),
            col_ok,
            format!("all {n} columns"),
        );
        report.record(
            &format!("{name}-rows-{kind}"),
            row_ok,
            format!("all {n} rows"),
        );
    }

    // in each left cell the chain point sits above and to the left of the turn
    let cell_ok = (0..n).all(|i| {
        (0..n).all(|j| {
            let l = get(Family::L, i, j);
            let t = get(Family::Lp, i, j);
            l.x < t.x && l.y > t.y
        })
    });
    report.record("cell-placement", cell_ok, "L left-above Lp in every cell".into());

    for (family, name, labels) in [
        (Family::A, "start-antichain", (0..n).map(PointLabel::start).collect::<Vec<_>>()),
        (Family::Ap, "end-antichain", (0..n).map(PointLabel::end).collect()),
        (Family::B, "middle-antichain", (0..n).map(PointLabel::middle).collect()),
    ] {
        let _ = family;
        let pts: Vec<_> = labels.iter().map(|&l| emb.special_point(l).unwrap()).collect();
        report.record(name, is_antichain(pts), format!("{n} points"));
    }

    // start point j: below the whole left grid, between columns j-1 and j
    let start_ok = (0..n).all(|j| {
        let a = emb.special_point(PointLabel::start(j)).unwrap();
        let below = (0..n).all(|i| {
            (0..n).all(|jj| a.y < get(Family::L, i, jj).y && a.y < get(Family::Lp, i, jj).y)
        });
        let left_of_col = (0..n).all(|i| a.x < get(Family::L, i, j).x && a.x < get(Family::Lp, i, j).x);
        let right_of_prev = j == 0
            || (0..n).all(|i| {
                a.x > get(Family::L, i, j - 1).x && a.x > get(Family::Lp, i, j - 1).x
            });
        below && left_of_col && right_of_prev
    });
    report.record("start-placement", start_ok, "below grid, between columns".into());

    // end point written after right-grid column j: above the grid, between
    // columns j and j+1
    let end_ok = (0..n).all(|j| {
        let a = emb.special_point(PointLabel::end(n - j - 1)).unwrap();
        let above = (0..n).all(|i| (0..n).all(|jj| a.y > get(Family::R, i, jj).y));
        let right_of_col = (0..n).all(|i| a.x > get(Family::R, i, j).x);
        let left_of_next = j + 1 == n || (0..n).all(|i| a.x < get(Family::R, i, j + 1).x);
        above && right_of_col && left_of_next
    });
    report.record("end-placement", end_ok, "above grid, between columns".into());

    // middle point i: above left-grid row i, below right-grid row i
    let mid_ok = (0..n).all(|i| {
        let b = emb.special_point(PointLabel::middle(i)).unwrap();
        (0..n).all(|j| {
            b.y > get(Family::L, i, j).y
                && b.y > get(Family::Lp, i, j).y
                && b.y < get(Family::R, i, j).y
        })
    });
    report.record("middle-placement", mid_ok, "between grid rows".into());

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Matrix;

    fn boolean(n: usize, rows: Vec<Vec<i64>>) -> Matrix {
        Matrix::new(n, 1, rows).unwrap()
    }

    #[test]
    fn named_points_match_coordinate_formulas() {
        let a = boolean(4, vec![vec![0; 4]; 4]);
        let emb = build_embedding(&a, &[0, 0, 1, 0], 1).unwrap();
        let a1 = emb.special_point(PointLabel::start(1)).unwrap();
        assert_eq!((a1.x, a1.y, a1.w), (10, 3, 1));
        let a0 = emb.special_point(PointLabel::start(0)).unwrap();
        assert_eq!((a0.x, a0.y), (1, 4));
        let ap3 = emb.special_point(PointLabel::end(3)).unwrap();
        assert_eq!((ap3.x, ap3.y), (45, 60));
        let b2 = emb.special_point(PointLabel::middle(2)).unwrap();
        assert_eq!((b2.x, b2.y, b2.w), (38, 39, 1));
        let l00 = emb.special_point(PointLabel::grid(Family::L, 0, 0)).unwrap();
        assert_eq!((l00.x, l00.y, l00.w), (2, 9, 12));
    }

    #[test]
    fn point_count_is_3nn_plus_3n() {
        for n in 1..=6 {
            let a = Matrix::zero(n, 1);
            let emb = build_embedding(&a, &vec![0; n], 1).unwrap();
            assert_eq!(emb.points().len(), 3 * n * n + 3 * n);
        }
    }

    #[test]
    fn turn_points_read_the_transposed_matrix() {
        let mut rows = vec![vec![0; 3]; 3];
        rows[1][2] = 1;
        let a = boolean(3, rows);
        let emb = build_embedding(&a, &[0, 0, 0], 1).unwrap();
        // A[1][2] shows up on the turn point of cell i=2, j=1
        let t = emb.special_point(PointLabel::grid(Family::Lp, 2, 1)).unwrap();
        assert_eq!(t.w, 3 * (3 - 1) + 1);
    }

    #[test]
    fn swap_b_column_reports_deltas_and_matches_rebuild() {
        let a = boolean(4, vec![vec![1, 0, 0, 1]; 4]);
        let old_b = vec![0, 0, 0, 0];
        let new_b = vec![1, 1, 1, 1];
        let mut emb = build_embedding(&a, &old_b, 1).unwrap();

        let deltas = emb.swap_b_column(&old_b).unwrap();
        assert!(deltas.iter().all(|d| d.old_weight == d.new_weight));

        let deltas = emb.swap_b_column(&new_b).unwrap();
        assert_eq!(deltas.len(), 4);
        assert!(deltas.iter().all(|d| d.old_weight == 0 && d.new_weight == 1));

        let rebuilt = build_embedding(&a, &new_b, 1).unwrap();
        assert_eq!(emb.points(), rebuilt.points());

        // swap back is the identity
        emb.swap_b_column(&old_b).unwrap();
        let original = build_embedding(&a, &old_b, 1).unwrap();
        assert_eq!(emb.points(), original.points());
    }

    #[test]
    fn swap_b_column_rejects_bad_input() {
        let a = boolean(2, vec![vec![0, 0]; 2]);
        let mut emb = build_embedding(&a, &[0, 0], 1).unwrap();
        assert!(emb.swap_b_column(&[0]).is_err());
        assert!(emb.swap_b_column(&[0, 2]).is_err());
    }

    #[test]
    fn expansion_replica_formula() {
        let pts = vec![WeightedPoint::new(2, 9, 3)];
        let out = expand_unweighted(&pts).unwrap();
        let coords: Vec<(i64, i64)> = out.iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(coords, vec![(8, 36), (9, 37), (10, 38)]);
        assert!(out.iter().all(|p| p.w == 1));
    }

    #[test]
    fn expansion_drops_zero_weight_points() {
        let pts = vec![WeightedPoint::new(5, 5, 0)];
        assert!(expand_unweighted(&pts).unwrap().is_empty());
    }

    #[test]
    fn expansion_rejects_duplicate_coordinates() {
        let pts = vec![WeightedPoint::new(1, 2, 1), WeightedPoint::new(1, 3, 1)];
        assert!(expand_unweighted(&pts).is_err());
        let pts = vec![WeightedPoint::new(1, 2, 1), WeightedPoint::new(3, 2, 1)];
        assert!(expand_unweighted(&pts).is_err());
    }

    #[test]
    fn validate_passes_on_fresh_embeddings() {
        for n in 1..=6 {
            let a = Matrix::zero(n, 1);
            let emb = build_embedding(&a, &vec![0; n], 1).unwrap();
            let report = validate_structure(&emb);
            assert!(report.all_passed(), "n={n}: {:?}", report.failures());
        }
    }

    #[test]
    fn validate_catches_injected_coordinate_fault() {
        let a = Matrix::zero(3, 1);
        let mut emb = build_embedding(&a, &[0, 0, 0], 1).unwrap();
        let j = emb.index[&PointLabel::grid(Family::L, 0, 1)];
        let k = emb.index[&PointLabel::grid(Family::L, 0, 0)];
        emb.points[j].x = emb.points[k].x;
        let report = validate_structure(&emb);
        assert!(report.failures().iter().any(|c| c.name == "distinct-x"));
    }

    #[test]
    fn x_sorted_order_interleaves_starts_and_columns() {
        let n = 4;
        let a = Matrix::zero(n, 1);
        let emb = build_embedding(&a, &vec![0; n], 1).unwrap();
        let mut sorted: Vec<_> = emb.points().to_vec();
        sorted.sort_by_key(|p| p.x);
        let fams: Vec<Family> = sorted.iter().map(|p| p.label.unwrap().family).collect();

        let mut expected = Vec::new();
        for _ in 0..n {
            expected.push(Family::A);
            for _ in 0..n {
                expected.push(Family::L);
            }
            for _ in 0..n {
                expected.push(Family::Lp);
            }
        }
        for _ in 0..n {
            expected.push(Family::B);
        }
        for j in 0..n {
            for _ in 0..n {
                expected.push(Family::R);
            }
            let _ = j;
            expected.push(Family::Ap);
        }
        // within a left column the L points come before the Lp points since
        // L x-range is [j(2n+1)+2, j(2n+1)+n+1] and Lp is [(j+1)(2n+1)-n+1, (j+1)(2n+1)]
        assert_eq!(fams, expected);

        // middle points appear in decreasing i
        let mids: Vec<i32> = sorted
            .iter()
            .filter(|p| p.label.unwrap().family == Family::B)
            .map(|p| p.label.unwrap().i)
            .collect();
        let mut desc = mids.clone();
        desc.sort_by(|a, b| b.cmp(a));
        assert_eq!(mids, desc);
    }

    #[test]
    fn dump_is_x_sorted_with_labels() {
        let a = Matrix::zero(2, 1);
        let emb = build_embedding(&a, &[1, 0], 1).unwrap();
        let dump = emb.dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines.len(), 18);
        assert!(lines[0].starts_with("A -1 0 1 "));
        let xs: Vec<i64> = lines
            .iter()
            .map(|l| l.split_whitespace().nth(3).unwrap().parse().unwrap())
            .collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
    }
}
