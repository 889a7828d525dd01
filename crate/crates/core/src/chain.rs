//! Brute-force maximum-weight-chain oracles and the closed-form chain-weight
//! predictors for embedding point sets.
//!
//! The oracle is deliberately the simplest correct algorithm: sort by x, run
//! the quadratic DP. It is the trust anchor for the dynamic structure and for
//! every closed form, so clarity beats speed here.

use crate::embedding::{Embedding, PointLabel};
use crate::error::{Error, Result};
use crate::model::{dominates, WeightedPoint};
use serde::Serialize;

/// Maximum weight over all dominance chains in `points`. Empty set gives 0.
pub fn max_weight_chain(points: &[WeightedPoint]) -> i64 {
    max_weight_chain_with_path(points).0
}

/// Same DP, also returning one optimal chain (in x order).
pub fn max_weight_chain_with_path(points: &[WeightedPoint]) -> (i64, Vec<WeightedPoint>) {
    let mut pts: Vec<WeightedPoint> = points.to_vec();
    pts.sort_by_key(|p| p.x);
    let mut best = vec![0i64; pts.len()];
    let mut parent = vec![usize::MAX; pts.len()];
    let mut answer = 0i64;
    let mut answer_at = usize::MAX;
    for idx in 0..pts.len() {
        let mut here = pts[idx].w;
        for prev in 0..idx {
            if dominates(&pts[prev], &pts[idx]) && best[prev] + pts[idx].w > here {
                here = best[prev] + pts[idx].w;
                parent[idx] = prev;
            }
        }
        best[idx] = here;
        if here > answer {
            answer = here;
            answer_at = idx;
        }
    }
    let mut path = Vec::new();
    let mut at = answer_at;
    while at != usize::MAX {
        path.push(pts[at]);
        at = parent[at];
    }
    path.reverse();
    (answer, path)
}

/// Maximum weight over chains that start at `start` and end at `end`, both
/// endpoints included. `Err(NoChain)` when no such chain exists.
pub fn max_weight_chain_between(
    points: &[WeightedPoint],
    start: WeightedPoint,
    end: WeightedPoint,
) -> Result<i64> {
    let find = |target: WeightedPoint| {
        points
            .iter()
            .position(|p| p.x == target.x && p.y == target.y)
            .ok_or_else(|| Error::InvalidInput(format!("endpoint ({}, {}) not in set", target.x, target.y)))
    };
    find(start)?;
    find(end)?;
    if start.x == end.x && start.y == end.y {
        return Ok(start.w);
    }
    if !dominates(&start, &end) {
        return Err(Error::NoChain);
    }
    // restrict to the open dominance interval, then chain the interior
    let interior: Vec<WeightedPoint> = points
        .iter()
        .copied()
        .filter(|p| dominates(&start, p) && dominates(p, &end))
        .collect();
    let mut pts = interior;
    pts.sort_by_key(|p| p.x);
    let mut best = vec![0i64; pts.len()];
    let mut answer = 0i64;
    for idx in 0..pts.len() {
        let mut here = pts[idx].w;
        for prev in 0..idx {
            if dominates(&pts[prev], &pts[idx]) {
                here = here.max(best[prev] + pts[idx].w);
            }
        }
        best[idx] = here;
        answer = answer.max(here);
    }
    Ok(start.w + answer + end.w)
}

/// Like `max_weight_chain_between`, also returning one optimal chain
/// (endpoints included, in x order).
pub fn max_weight_chain_between_with_path(
    points: &[WeightedPoint],
    start: WeightedPoint,
    end: WeightedPoint,
) -> Result<(i64, Vec<WeightedPoint>)> {
    let total = max_weight_chain_between(points, start, end)?;
    if start.x == end.x && start.y == end.y {
        return Ok((total, vec![start]));
    }
    let interior: Vec<WeightedPoint> = points
        .iter()
        .copied()
        .filter(|p| dominates(&start, p) && dominates(p, &end))
        .collect();
    let (_, inner) = max_weight_chain_with_path(&interior);
    let mut path = vec![start];
    path.extend(inner);
    path.push(end);
    debug_assert_eq!(total, path.iter().map(|p| p.w).sum::<i64>());
    Ok((total, path))
}

/// Maximum chain weight among points with `xlo <= x <= xhi`.
pub fn max_weight_chain_in_xrange(points: &[WeightedPoint], xlo: i64, xhi: i64) -> Result<i64> {
    if xlo > xhi {
        return Err(Error::InvalidInput(format!("empty range {xlo} > {xhi}")));
    }
    let restricted: Vec<WeightedPoint> = points
        .iter()
        .copied()
        .filter(|p| xlo <= p.x && p.x <= xhi)
        .collect();
    Ok(max_weight_chain(&restricted))
}

/// Selector for the closed-form chain-weight formulas. Grid starts split on
/// whether the start shares the row of the target middle point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormulaCase {
    /// chain from left-grid point `(i, j)` to middle point `i2`, `i <= i2`
    GridToMiddle { i: usize, j: usize, i2: usize },
    /// chain from turn point `(i, j)` to middle point `i2`, `i <= i2`
    TurnToMiddle { i: usize, j: usize, i2: usize },
    /// chain from start point `j` to middle point `i`
    StartToMiddle { j: usize, i: usize },
    /// chain from middle point `i` to end point `j`
    MiddleToEnd { i: usize, j: usize },
    /// chain from start point `j` to end point `j`; the only case defined
    /// for multiplier > 1
    StartToEnd { j: usize },
}

// 1.5(n-j)(n-j+1) is an integer because (n-j)(n-j+1) is even
fn half_term(n: i64, j: i64) -> i64 {
    let prod = (n - j) * (n - j + 1);
    debug_assert!(prod % 2 == 0);
    3 * prod / 2
}

/// Evaluates the selected closed form on `emb`, exactly in integers.
///
/// The grid, start-to-middle and middle-to-end forms are stated for the
/// Boolean construction only and are rejected for multiplier > 1.
pub fn closed_form_c(emb: &Embedding, case: FormulaCase) -> Result<i64> {
    let n = emb.n() as i64;
    let m = emb.multiplier();
    let a = emb.matrix();
    let b = emb.b();
    let check = |idx: usize, what: &str| {
        if idx >= emb.n() {
            Err(Error::InvalidInput(format!("{what} index {idx} out of range")))
        } else {
            Ok(())
        }
    };
    if m > 1 && !matches!(case, FormulaCase::StartToEnd { .. }) {
        return Err(Error::InvalidInput(
            "only the start-to-end form is defined for multiplier > 1".into(),
        ));
    }
    match case {
        FormulaCase::GridToMiddle { i, j, i2 } => {
            check(i, "row")?;
            check(j, "column")?;
            check(i2, "target row")?;
            if i > i2 {
                return Err(Error::InvalidInput("requires i <= i2".into()));
            }
            let (ii, jj, ii2) = (i as i64, j as i64, i2 as i64);
            if i == i2 {
                Ok(half_term(n, jj) + b[i2])
            } else {
                Ok((3 * n - 3 * jj) * (ii2 - ii) + half_term(n, jj) + a.get(j, i2) + b[i2])
            }
        }
        FormulaCase::TurnToMiddle { i, j, i2 } => {
            check(i, "row")?;
            check(j, "column")?;
            check(i2, "target row")?;
            if i > i2 {
                return Err(Error::InvalidInput("requires i <= i2".into()));
            }
            let (ii, jj, ii2) = (i as i64, j as i64, i2 as i64);
            if i == i2 {
                Ok(half_term(n, jj) + a.get(j, i) + b[i2])
            } else {
                // the next-column entry, with the row-n convention A[n][.] = 0
                let next_col = if j + 1 < emb.n() { a.get(j + 1, i2) } else { 0 };
                Ok((3 * n - 3 * jj - 3) * (ii2 - ii)
                    + half_term(n, jj)
                    + a.get(j, i)
                    + next_col
                    + b[i2])
            }
        }
        FormulaCase::StartToMiddle { j, i } => {
            check(j, "column")?;
            check(i, "row")?;
            let (ii, jj) = (i as i64, j as i64);
            Ok((3 * n - 3 * jj) * ii + half_term(n, jj) + 1 + a.get(j, i) + b[i])
        }
        FormulaCase::MiddleToEnd { i, j } => {
            check(i, "row")?;
            check(j, "column")?;
            let (ii, jj) = (i as i64, j as i64);
            Ok((3 * n - 3 * jj) * (n - ii - 1) + half_term(n, jj) + 1 + b[i])
        }
        FormulaCase::StartToEnd { j } => {
            check(j, "column")?;
            let jj = j as i64;
            let best = (0..emb.n())
                .map(|i| a.get(j, i) + b[i])
                .max()
                .expect("n >= 1");
            Ok(m * (3 * n - 3 * jj) * (n - 1) + 3 * m * (n - jj) * (n - jj + 1) + 2 + best)
        }
    }
}

/// Endpoints of the start/end pair for column `j`, a convenience for range
/// queries over `[x(start_j), x(end_j)]`.
pub fn column_query_range(emb: &Embedding, j: usize) -> Result<(i64, i64)> {
    let start = emb.special_point(PointLabel::start(j))?;
    let end = emb.special_point(PointLabel::end(j))?;
    Ok((start.x, end.x))
}
