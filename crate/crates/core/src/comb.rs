//! Combing cliff-shaped families into disjoint ones, and back.
//!
//! The forward basic operation [`disj_step`] makes `P_i` and `P_{i+1}` disjoint
//! up to column `k` by swapping the step types of the two rows wherever the running
//! maximum of `h_0(j) + 1 - h_1(j)` increases, then moves that many vertical
//! steps of column `k` from `P_i` to `P_{i+1}`. [`clify_step`] undoes it using
//! the running minimum of `h'_1(j) - h'_0(j) - 1` scanned right to left.
//!
//! [`comb`] sweeps columns `k = n-1, ..., 0`, applying the forward operation
//! to `i = k, ..., n-2` within each column. [`uncomb`] runs the backward
//! operation in the opposite order.

use crate::pathfam::{bits_of, family_from_bits, is_valid, rows_disjoint, BitTriangle, HeightVector, PathFamily};

/// The `d` sequence produced by one basic operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombTrace {
    pub k: usize,
    pub i: usize,
    /// `(d_0, ..., d_k)`; empty when the trace was not recorded.
    pub d_seq: Vec<u32>,
    /// `d_k`, the number of vertical steps moved between the two paths.
    pub transferred: u32,
}

impl CombTrace {
    /// Starts at 0 and rises by 0 or 1 at each column.
    pub fn is_monotone(&self) -> bool {
        self.d_seq.first().is_none_or(|&d| d == 0)
            && self.d_seq.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
            && self.d_seq.last().is_none_or(|&d| d == self.transferred)
    }

    /// Columns `j < k` whose outgoing steps were interchanged.
    pub fn swap_columns(&self) -> Vec<usize> {
        self.d_seq
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] < w[1])
            .map(|(j, _)| j)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Precondition {
    #[error("indices i={i}, k={k} outside 0 <= k <= i < n-1 for n={n}")]
    IndexOutOfRange { i: usize, k: usize, n: usize },
    #[error("path {row} has vertical steps in column {column} before column k")]
    VerticalStepsBeforeColumn { row: usize, column: usize },
    #[error("path {row} already has {count} vertical steps in column {column}")]
    ResidualVerticalSteps { row: usize, column: usize, count: u32 },
    #[error("path {row} has {available} vertical steps in column {column}, {required} needed")]
    InsufficientVerticalSteps {
        row: usize,
        column: usize,
        available: u32,
        required: u32,
    },
    #[error("paths {lower} and {upper} meet in column {column}")]
    NotDisjoint { lower: usize, upper: usize, column: usize },
    #[error("stored entry level {found} of path {row} differs from its actual level {expected}")]
    HeightMismatch { row: usize, expected: i64, found: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombError {
    #[error("precondition violated: {0}")]
    PreconditionViolation(#[from] Precondition),
    #[error("family is not disjoint")]
    NotDisjoint,
    #[error("family is not a valid Schröder family")]
    InvalidFamily,
    #[error("family is not in the domain of the column-{k} stage")]
    OutsideDomain { k: usize },
}

fn check_indices(f: &PathFamily, i: usize, k: usize) -> Result<(), Precondition> {
    let n = f.n();
    if !(k <= i && i + 1 < n) {
        return Err(Precondition::IndexOutOfRange { i, k, n });
    }
    for row in [i, i + 1] {
        if let Some(column) = (0..k).find(|&j| f.d(row, j) != 0) {
            return Err(Precondition::VerticalStepsBeforeColumn { row, column });
        }
    }
    Ok(())
}

/// Forward operation on `P_i, P_{i+1}` up to column `k`, in place.
/// Nothing is modified when an error is returned.
pub(crate) fn forward_in_place(
    f: &mut PathFamily,
    i: usize,
    k: usize,
    record: bool,
) -> Result<CombTrace, Precondition> {
    check_indices(f, i, k)?;
    let residual = f.d(i + 1, k);
    if residual != 0 {
        return Err(Precondition::ResidualVerticalSteps {
            row: i + 1,
            column: k,
            count: residual,
        });
    }
    let mut cur: i64 = 0;
    let mut d: i64 = 0;
    for j in 0..k {
        cur += f.b(i + 1, j) as i64 - f.b(i, j) as i64;
        d = d.max(cur);
    }
    let available = f.d(i, k);
    if available < d as u32 {
        return Err(Precondition::InsufficientVerticalSteps {
            row: i,
            column: k,
            available,
            required: d as u32,
        });
    }

    let mut d_seq = Vec::with_capacity(if record { k + 1 } else { 0 });
    if record {
        d_seq.push(0);
    }
    let (mut cur, mut d) = (0i64, 0i64);
    for j in 0..k {
        cur += f.b(i + 1, j) as i64 - f.b(i, j) as i64;
        if cur > d {
            d = cur;
            f.set_b(i, j, 1);
            f.set_b(i + 1, j, 0);
        }
        if record {
            d_seq.push(d as u32);
        }
    }
    let d = d as u32;
    f.set_d(i, k, available - d);
    f.set_d(i + 1, k, d);
    Ok(CombTrace {
        k,
        i,
        d_seq,
        transferred: d,
    })
}

/// Backward operation on `P_i, P_{i+1}` up to column `k`, in place; `h` holds
/// the entry levels into column `k` and is updated alongside.
/// Nothing is modified when an error is returned.
pub(crate) fn backward_in_place(
    f: &mut PathFamily,
    h: &mut HeightVector,
    i: usize,
    k: usize,
    record: bool,
) -> Result<CombTrace, Precondition> {
    check_indices(f, i, k)?;
    for row in [i, i + 1] {
        let expected = row as i64 - f.b_prefix(row, k) as i64;
        if h[row] != expected {
            return Err(Precondition::HeightMismatch {
                row,
                expected,
                found: h[row],
            });
        }
    }
    let d0 = f.d(i + 1, k);
    let cur0 = h[i + 1] - h[i] - 1;
    if cur0 < d0 as i64 {
        return Err(Precondition::NotDisjoint {
            lower: i,
            upper: i + 1,
            column: k,
        });
    }
    let mut cur = cur0;
    for j in (0..k).rev() {
        cur += f.b(i + 1, j) as i64 - f.b(i, j) as i64;
        if cur < 0 {
            return Err(Precondition::NotDisjoint {
                lower: i,
                upper: i + 1,
                column: j,
            });
        }
    }

    let mut d = d0 as i64;
    f.set_d(i + 1, k, 0);
    let lower = f.d(i, k);
    f.set_d(i, k, lower + d0);
    h[i + 1] -= d;
    h[i] += d;
    let mut d_seq = if record { vec![0; k + 1] } else { Vec::new() };
    if record {
        d_seq[k] = d0;
    }
    let mut cur = cur0;
    for j in (0..k).rev() {
        cur += f.b(i + 1, j) as i64 - f.b(i, j) as i64;
        if cur < d {
            d = cur;
            f.set_b(i, j, 0);
            f.set_b(i + 1, j, 1);
        }
        if record {
            d_seq[j] = d as u32;
        }
    }
    Ok(CombTrace {
        k,
        i,
        d_seq,
        transferred: d0,
    })
}

/// Forward basic operation: makes `P_i` and `P_{i+1}` disjoint up to column `k`.
pub fn disj_step(f: &PathFamily, i: usize, k: usize) -> Result<(PathFamily, CombTrace), CombError> {
    let mut out = f.clone();
    let trace = forward_in_place(&mut out, i, k, true)?;
    Ok((out, trace))
}

/// Backward basic operation, the inverse of [`disj_step`] on its image.
pub fn clify_step(
    f: &PathFamily,
    h: &HeightVector,
    i: usize,
    k: usize,
) -> Result<(PathFamily, HeightVector, CombTrace), CombError> {
    let mut out = f.clone();
    let mut heights = h.clone();
    let trace = backward_in_place(&mut out, &mut heights, i, k, true)?;
    Ok((out, heights, trace))
}

/// Membership in `Pathfam(n, k)`: no vertical steps before column `k` except in
/// final columns, and `P_k, ..., P_{n-1}` pairwise disjoint.
pub fn in_pathfam_nk(f: &PathFamily, k: usize) -> bool {
    let n = f.n();
    let k = k.min(n);
    (0..n).all(|i| f.d_row(i)[..k.min(i)].iter().all(|&d| d == 0)) && rows_disjoint(f, k..n)
}

fn comb_column_in_place(f: &mut PathFamily, k: usize, traces: Option<&mut Vec<CombTrace>>) -> Result<(), Precondition> {
    let diag = k as u32 - f.b_prefix(k, k);
    f.set_d(k, k, diag);
    let record = traces.is_some();
    let mut sink = traces;
    for i in k..f.n().saturating_sub(1) {
        let trace = forward_in_place(f, i, k, record)?;
        if let Some(out) = sink.as_deref_mut() {
            out.push(trace);
        }
    }
    Ok(())
}

fn uncomb_column_in_place(
    f: &mut PathFamily,
    h: &mut HeightVector,
    k: usize,
    traces: Option<&mut Vec<CombTrace>>,
) -> Result<(), Precondition> {
    let record = traces.is_some();
    let mut sink = traces;
    for i in (k..f.n().saturating_sub(1)).rev() {
        let trace = backward_in_place(f, h, i, k, record)?;
        if let Some(out) = sink.as_deref_mut() {
            out.push(trace);
        }
    }
    Ok(())
}

fn check_stage_domain(f: &PathFamily, k: usize, domain: usize) -> Result<(), CombError> {
    if k >= f.n() {
        return Err(Precondition::IndexOutOfRange { i: k, k, n: f.n() }.into());
    }
    if !is_valid(f) {
        return Err(CombError::InvalidFamily);
    }
    if !in_pathfam_nk(f, domain) {
        return Err(CombError::OutsideDomain { k });
    }
    Ok(())
}

/// One column of the combing sweep, mapping `Pathfam(n, k+1)` to `Pathfam(n, k)`.
/// Traces are returned in call order `i = k, ..., n-2`.
pub fn comb_column_traced(f: &PathFamily, k: usize) -> Result<(PathFamily, Vec<CombTrace>), CombError> {
    check_stage_domain(f, k, k + 1)?;
    let mut out = f.clone();
    let mut traces = Vec::new();
    comb_column_in_place(&mut out, k, Some(&mut traces))?;
    Ok((out, traces))
}

pub fn comb_column(f: &PathFamily, k: usize) -> Result<PathFamily, CombError> {
    comb_column_traced(f, k).map(|(out, _)| out)
}

/// One column of the uncombing sweep, mapping `Pathfam(n, k)` to `Pathfam(n, k+1)`.
/// Traces are returned in call order `i = n-2, ..., k`.
pub fn uncomb_column_traced(f: &PathFamily, k: usize) -> Result<(PathFamily, Vec<CombTrace>), CombError> {
    check_stage_domain(f, k, k)?;
    let mut out = f.clone();
    let mut h = HeightVector::entry_levels(f, k);
    let mut traces = Vec::new();
    uncomb_column_in_place(&mut out, &mut h, k, Some(&mut traces))?;
    Ok((out, traces))
}

pub fn uncomb_column(f: &PathFamily, k: usize) -> Result<PathFamily, CombError> {
    uncomb_column_traced(f, k).map(|(out, _)| out)
}

/// The disjoint family corresponding to a bit triangle.
pub fn comb(t: &BitTriangle) -> PathFamily {
    let mut f = family_from_bits(t);
    for k in (0..t.n()).rev() {
        comb_column_in_place(&mut f, k, None).expect("combing preconditions hold on every column");
    }
    f
}

/// Like [`comb`], also returning every basic-operation trace in call order.
pub fn comb_traced(t: &BitTriangle) -> (PathFamily, Vec<CombTrace>) {
    let mut f = family_from_bits(t);
    let mut traces = Vec::new();
    for k in (0..t.n()).rev() {
        comb_column_in_place(&mut f, k, Some(&mut traces)).expect("combing preconditions hold on every column");
    }
    (f, traces)
}

/// Snapshots of the family before combing and after each column, from
/// `Pathfam(n, n)` down to `Pathfam(n, 0)`.
pub fn comb_stages(t: &BitTriangle) -> Vec<PathFamily> {
    let mut f = family_from_bits(t);
    let mut stages = vec![f.clone()];
    for k in (0..t.n()).rev() {
        comb_column_in_place(&mut f, k, None).expect("combing preconditions hold on every column");
        stages.push(f.clone());
    }
    stages
}

/// The bit triangle of a disjoint Schröder family.
pub fn uncomb(f: &PathFamily) -> Result<BitTriangle, CombError> {
    if !is_valid(f) {
        return Err(CombError::InvalidFamily);
    }
    if !rows_disjoint(f, 0..f.n()) {
        return Err(CombError::NotDisjoint);
    }
    let n = f.n();
    let mut g = f.clone();
    let mut h = HeightVector(vec![0; n]);
    for k in 0..n {
        for i in (k..n).rev() {
            if k == 0 {
                h[i] = i as i64;
            } else {
                h[i] -= g.b(i, k - 1) as i64;
            }
            if i + 1 < n {
                backward_in_place(&mut g, &mut h, i, k, false)?;
            }
        }
    }
    Ok(bits_of(&g))
}
