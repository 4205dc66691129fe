//! Families of Schröder-type lattice paths and their `(B, D)` encoding.
//!
//! Points are `(level, column)` pairs with the level increasing upwards. Path
//! `P_i` of an `n`-family runs from `(i, 0)` to `(0, i)` using horizontal
//! `(0, +1)`, diagonal `(-1, +1)` and vertical `(-1, 0)` steps.
//!
//! A family is stored as two lower triangular matrices: `B[i][j]` (for
//! `j < i`) is the direction of the step of `P_i` from column `j` to `j + 1`
//! (`0` horizontal, `1` diagonal) and `D[i][j]` (for `j <= i`) counts the
//! vertical steps of `P_i` in column `j`. Vertical steps within a column are
//! necessarily consecutive, so this encoding is lossless.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::text::{content_lines, parse_order, parse_token, tokens, ParseError};

/// A lattice point in `(level, column)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub level: i64,
    pub column: i64,
}

impl Point {
    pub const fn new(level: i64, column: i64) -> Self {
        Point { level, column }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Horizontal,
    Diagonal,
    Vertical,
}

impl Step {
    /// Displacement as `(d_level, d_column)`.
    pub const fn delta(self) -> (i64, i64) {
        match self {
            Step::Horizontal => (0, 1),
            Step::Diagonal => (-1, 1),
            Step::Vertical => (-1, 0),
        }
    }

    pub fn from_delta(dl: i64, dc: i64) -> Option<Step> {
        match (dl, dc) {
            (0, 1) => Some(Step::Horizontal),
            (-1, 1) => Some(Step::Diagonal),
            (-1, 0) => Some(Step::Vertical),
            _ => None,
        }
    }

    fn from_bit(bit: u8) -> Step {
        if bit == 0 {
            Step::Horizontal
        } else {
            Step::Diagonal
        }
    }
}

/// A concrete path: starting point plus step sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExplicitPath {
    pub start: Point,
    pub steps: Vec<Step>,
}

impl ExplicitPath {
    pub fn new(start: Point, steps: Vec<Step>) -> Self {
        ExplicitPath { start, steps }
    }

    /// Builds a path from its full point sequence; `None` if some consecutive
    /// difference is not an allowed step.
    pub fn from_points(points: &[Point]) -> Option<Self> {
        let (&start, _) = points.split_first()?;
        let steps = points
            .windows(2)
            .map(|w| Step::from_delta(w[1].level - w[0].level, w[1].column - w[0].column))
            .collect::<Option<Vec<_>>>()?;
        Some(ExplicitPath { start, steps })
    }

    /// The support `p_0, p_1, ..., p_k` in order.
    pub fn points(&self) -> Vec<Point> {
        let mut cur = self.start;
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(cur);
        for step in &self.steps {
            let (dl, dc) = step.delta();
            cur = Point::new(cur.level + dl, cur.column + dc);
            out.push(cur);
        }
        out
    }

    pub fn end(&self) -> Point {
        self.steps.iter().fold(self.start, |p, s| {
            let (dl, dc) = s.delta();
            Point::new(p.level + dl, p.column + dc)
        })
    }
}

fn b_offset(i: usize) -> usize {
    i * i.saturating_sub(1) / 2
}

fn d_offset(i: usize) -> usize {
    i * (i + 1) / 2
}

/// The `n(n-1)/2` free bits `b[i][j]`, `0 <= j < i < n`, of a cliff-shaped family.
///
/// Bit `b[i][j]` is copied verbatim to `B[i][j]`: 0 selects a horizontal
/// step, 1 a diagonal one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitTriangle {
    n: usize,
    bits: Vec<u8>,
}

impl BitTriangle {
    /// All-zero triangle of order `n`.
    pub fn zeros(n: usize) -> Self {
        BitTriangle {
            n,
            bits: vec![0; b_offset(n)],
        }
    }

    pub fn ones(n: usize) -> Self {
        BitTriangle {
            n,
            bits: vec![1; b_offset(n)],
        }
    }

    /// Builds a triangle from rows `1..n`; row `i` must hold exactly `i` bits.
    /// Row 0 is implicit (and empty), so `rows.len() == n - 1` for `n >= 1`.
    pub fn from_rows(n: usize, rows: &[Vec<u8>]) -> Result<Self, FamilyError> {
        if rows.len() != n.saturating_sub(1) {
            return Err(FamilyError::Shape(format!(
                "order {n} needs {} rows, got {}",
                n.saturating_sub(1),
                rows.len()
            )));
        }
        let mut bits = Vec::with_capacity(b_offset(n));
        for (r, row) in rows.iter().enumerate() {
            let i = r + 1;
            if row.len() != i {
                return Err(FamilyError::Shape(format!(
                    "row {i} has {} bits, expected {i}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&b| b > 1) {
                return Err(FamilyError::Shape(format!("row {i} holds non-bit value {bad}")));
            }
            bits.extend_from_slice(row);
        }
        Ok(BitTriangle { n, bits })
    }

    /// Decodes the triangle whose bits, in row-major order
    /// `(1,0), (2,0), (2,1), (3,0), ...`, are the binary digits of `index`
    /// starting from the least significant one.
    pub fn from_index(n: usize, index: u64) -> Self {
        let len = b_offset(n);
        assert!(len <= 64, "order {n} has more than 64 bits");
        let bits = (0..len).map(|p| ((index >> p) & 1) as u8).collect();
        BitTriangle { n, bits }
    }

    /// Every triangle of order `n` in index order.
    pub fn all(n: usize) -> impl Iterator<Item = BitTriangle> {
        let len = b_offset(n);
        assert!(len < 64, "order {n} is too large to enumerate");
        (0..1u64 << len).map(move |idx| BitTriangle::from_index(n, idx))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bit_count(&self) -> usize {
        self.bits.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        assert!(
            j < i && i < self.n,
            "bit ({i},{j}) outside triangle of order {}",
            self.n
        );
        self.bits[b_offset(i) + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            j < i && i < self.n,
            "bit ({i},{j}) outside triangle of order {}",
            self.n
        );
        self.bits[b_offset(i) + j] = value as u8;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.bits[b_offset(i)..b_offset(i) + i]
    }

    /// Number of zero bits in row `i` (the column count of column `i` after combing).
    pub fn row_zeros(&self, i: usize) -> u32 {
        self.row(i).iter().filter(|&&b| b == 0).count() as u32
    }

    /// Number of zero bits `b[i][j]` over `i > j` (the inter-column count between
    /// columns `j` and `j + 1` after combing).
    pub fn column_zeros(&self, j: usize) -> u32 {
        (j + 1..self.n).filter(|&i| self.get(i, j) == 0).count() as u32
    }
}

impl fmt::Display for BitTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 1..self.n {
            let row: Vec<String> = self.row(i).iter().map(u8::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for BitTriangle {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = content_lines(s);
        let n = parse_order(&mut lines)?;
        let mut rows = Vec::with_capacity(n.saturating_sub(1));
        for i in 1..n {
            let (no, line) = lines
                .next()
                .ok_or_else(|| ParseError::new(s.lines().count() + 1, 1, format!("missing row {i}")))?;
            let toks = tokens(line);
            if toks.len() != i {
                let col = toks.get(i).map_or(line.len() + 1, |t| t.column);
                return Err(ParseError::new(
                    no,
                    col,
                    format!("row {i} must hold {i} bits, found {}", toks.len()),
                ));
            }
            let mut row = Vec::with_capacity(i);
            for tok in toks {
                let bit: u8 = parse_token(tok, no, "bit")?;
                if bit > 1 {
                    return Err(ParseError::new(
                        no,
                        tok.column,
                        format!("expected bit, found `{}`", tok.text),
                    ));
                }
                row.push(bit);
            }
            rows.push(row);
        }
        if let Some((no, _)) = lines.next() {
            return Err(ParseError::new(no, 1, "trailing content after triangle"));
        }
        BitTriangle::from_rows(n, &rows).map_err(|e| ParseError::new(1, 1, e))
    }
}

/// An `n`-family in `(B, D)` encoding.
///
/// Shape (triangularity, bit-valued `B`) is enforced on construction; the
/// path invariants are checked by [`validate_family`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathFamily {
    n: usize,
    b: Vec<u8>,
    d: Vec<u32>,
}

impl PathFamily {
    /// Family of order `n` with every entry zero. Not valid for `n >= 2`.
    pub fn zeroed(n: usize) -> Self {
        PathFamily {
            n,
            b: vec![0; b_offset(n)],
            d: vec![0; d_offset(n)],
        }
    }

    /// Builds a family from its rows: `b_rows[i]` has `i` entries in `{0,1}`,
    /// `d_rows[i]` has `i + 1` entries.
    pub fn from_rows(b_rows: &[Vec<u8>], d_rows: &[Vec<u32>]) -> Result<Self, FamilyError> {
        let n = b_rows.len();
        if d_rows.len() != n {
            return Err(FamilyError::Shape(format!(
                "{n} rows of B but {} rows of D",
                d_rows.len()
            )));
        }
        let mut fam = PathFamily::zeroed(n);
        for i in 0..n {
            if b_rows[i].len() != i {
                return Err(FamilyError::Shape(format!(
                    "B row {i} has {} entries, expected {i}",
                    b_rows[i].len()
                )));
            }
            if d_rows[i].len() != i + 1 {
                return Err(FamilyError::Shape(format!(
                    "D row {i} has {} entries, expected {}",
                    d_rows[i].len(),
                    i + 1
                )));
            }
            for (j, &v) in b_rows[i].iter().enumerate() {
                if v > 1 {
                    return Err(FamilyError::Shape(format!("B[{i}][{j}] = {v} is not a bit")));
                }
                fam.b[b_offset(i) + j] = v;
            }
            fam.d[d_offset(i)..d_offset(i) + i + 1].copy_from_slice(&d_rows[i]);
        }
        Ok(fam)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn b(&self, i: usize, j: usize) -> u8 {
        debug_assert!(j < i && i < self.n);
        self.b[b_offset(i) + j]
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> u32 {
        debug_assert!(j <= i && i < self.n);
        self.d[d_offset(i) + j]
    }

    pub fn b_row(&self, i: usize) -> &[u8] {
        &self.b[b_offset(i)..b_offset(i) + i]
    }

    pub fn d_row(&self, i: usize) -> &[u32] {
        &self.d[d_offset(i)..d_offset(i) + i + 1]
    }

    #[inline]
    pub(crate) fn set_b(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!(v <= 1);
        self.b[b_offset(i) + j] = v;
    }

    #[inline]
    pub(crate) fn set_d(&mut self, i: usize, j: usize, v: u32) {
        self.d[d_offset(i) + j] = v;
    }

    /// `Σ_{j<k} B[i][j]`.
    pub fn b_prefix(&self, i: usize, k: usize) -> u32 {
        self.b_row(i)[..k].iter().map(|&b| b as u32).sum()
    }

    /// The steps of `P_i`, read off the encoding without any validity check.
    pub fn walk(&self, i: usize) -> ExplicitPath {
        let mut steps = Vec::new();
        for j in 0..=i {
            steps.extend(std::iter::repeat_n(Step::Vertical, self.d(i, j) as usize));
            if j < i {
                steps.push(Step::from_bit(self.b(i, j)));
            }
        }
        ExplicitPath::new(Point::new(i as i64, 0), steps)
    }

    /// Total number of diagonal steps in the family.
    pub fn diagonal_steps(&self) -> u32 {
        self.b.iter().map(|&b| b as u32).sum()
    }

    pub fn horizontal_steps(&self) -> u32 {
        self.b.iter().filter(|&&b| b == 0).count() as u32
    }

    pub fn vertical_steps(&self) -> u64 {
        self.d.iter().map(|&d| d as u64).sum()
    }
}

impl fmt::Display for PathFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            write!(f, "B:")?;
            for b in self.b_row(i) {
                write!(f, " {b}")?;
            }
            write!(f, " | D:")?;
            for d in self.d_row(i) {
                write!(f, " {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for PathFamily {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = content_lines(s);
        let n = parse_order(&mut lines)?;
        let mut b_rows = Vec::with_capacity(n);
        let mut d_rows = Vec::with_capacity(n);
        for i in 0..n {
            let (no, line) = lines
                .next()
                .ok_or_else(|| ParseError::new(s.lines().count() + 1, 1, format!("missing row {i}")))?;
            let toks = tokens(line);
            let bar = toks
                .iter()
                .position(|t| t.text == "|")
                .ok_or_else(|| ParseError::new(no, 1, "expected `B: ... | D: ...`"))?;
            let (b_part, d_part) = (&toks[..bar], &toks[bar + 1..]);
            match b_part.first() {
                Some(t) if t.text == "B:" => {}
                Some(t) => return Err(ParseError::new(no, t.column, "expected `B:`")),
                None => return Err(ParseError::new(no, 1, "expected `B:`")),
            }
            match d_part.first() {
                Some(t) if t.text == "D:" => {}
                Some(t) => return Err(ParseError::new(no, t.column, "expected `D:`")),
                None => return Err(ParseError::new(no, toks[bar].column + 1, "expected `D:`")),
            }
            if b_part.len() - 1 != i {
                return Err(ParseError::new(
                    no,
                    b_part[0].column,
                    format!("row {i} of B must hold {i} bits"),
                ));
            }
            if d_part.len() - 1 != i + 1 {
                return Err(ParseError::new(
                    no,
                    d_part[0].column,
                    format!("row {i} of D must hold {} counts", i + 1),
                ));
            }
            let mut b_row = Vec::with_capacity(i);
            for &tok in &b_part[1..] {
                let bit: u8 = parse_token(tok, no, "bit")?;
                if bit > 1 {
                    return Err(ParseError::new(
                        no,
                        tok.column,
                        format!("expected bit, found `{}`", tok.text),
                    ));
                }
                b_row.push(bit);
            }
            let d_row = d_part[1..]
                .iter()
                .map(|&tok| parse_token(tok, no, "vertical step count"))
                .collect::<Result<Vec<u32>, _>>()?;
            b_rows.push(b_row);
            d_rows.push(d_row);
        }
        if let Some((no, _)) = lines.next() {
            return Err(ParseError::new(no, 1, "trailing content after family"));
        }
        PathFamily::from_rows(&b_rows, &d_rows).map_err(|e| ParseError::new(1, 1, e))
    }
}

/// Entry levels `h[i]` of the paths into a designated column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightVector(pub Vec<i64>);

impl HeightVector {
    /// `h[i] = i - Σ_{j<k} B[i][j]` for every row that reaches column `k`
    /// (rows `i < k` are left at 0). Exact as long as no path has vertical
    /// steps before column `k`.
    pub fn entry_levels(f: &PathFamily, k: usize) -> Self {
        HeightVector(
            (0..f.n())
                .map(|i| if i >= k { i as i64 - f.b_prefix(i, k) as i64 } else { 0 })
                .collect(),
        )
    }
}

impl std::ops::Index<usize> for HeightVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl std::ops::IndexMut<usize> for HeightVector {
    fn index_mut(&mut self, i: usize) -> &mut i64 {
        &mut self.0[i]
    }
}

/// One violated family invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// `Σ_j B[i][j] + Σ_j D[i][j]` differs from `i`: `P_i` misses `(0, i)`.
    DescentBalance { i: usize, total: u64 },
    /// `P_i` dips below the anti-diagonal `level + column = i` in column `j`.
    Schroder { i: usize, j: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::DescentBalance { i, total } => {
                write!(f, "descent balance: row {i} descends {total} levels, expected {i}")
            }
            Diagnostic::Schroder { i, j } => {
                write!(
                    f,
                    "Schröder condition: path {i} passes below level {} in column {j}",
                    *i as i64 - *j as i64
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("malformed matrices: {0}")]
    Shape(String),
    #[error("invalid family: {}", join_diagnostics(.0))]
    InvalidFamily(Vec<Diagnostic>),
    #[error("malformed path {index}: {reason}")]
    MalformedPath { index: usize, reason: String },
}

fn join_diagnostics(d: &[Diagnostic]) -> String {
    d.iter().map(Diagnostic::to_string).collect::<Vec<_>>().join("; ")
}

/// The cliff-shaped family whose `B` is the triangle and whose vertical steps
/// all sit in the final column.
pub fn family_from_bits(t: &BitTriangle) -> PathFamily {
    let n = t.n();
    let mut f = PathFamily::zeroed(n);
    f.b.copy_from_slice(&t.bits);
    for k in 0..n {
        let diag = k as u32 - f.b_prefix(k, k);
        f.set_d(k, k, diag);
    }
    f
}

/// Reads the bit triangle back off a cliff-shaped family's `B`.
pub fn bits_of(f: &PathFamily) -> BitTriangle {
    BitTriangle {
        n: f.n,
        bits: f.b.clone(),
    }
}

/// Every violated invariant, in row order.
pub fn validate_family(f: &PathFamily) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for i in 0..f.n() {
        let mut descended: u64 = 0;
        for j in 0..=i {
            if descended + f.d(i, j) as u64 > j as u64 {
                out.push(Diagnostic::Schroder { i, j });
            }
            descended += f.d(i, j) as u64;
            if j < i {
                descended += f.b(i, j) as u64;
            }
        }
        if descended != i as u64 {
            out.push(Diagnostic::DescentBalance { i, total: descended });
        }
    }
    out
}

pub fn is_valid(f: &PathFamily) -> bool {
    validate_family(f).is_empty()
}

/// The explicit paths `P_0, ..., P_{n-1}`.
pub fn explicit_paths(f: &PathFamily) -> Result<Vec<ExplicitPath>, FamilyError> {
    let diags = validate_family(f);
    if !diags.is_empty() {
        return Err(FamilyError::InvalidFamily(diags));
    }
    Ok((0..f.n()).map(|i| f.walk(i)).collect())
}

/// Inverse of [`explicit_paths`]: path `i` must run from `(i, 0)` to `(0, i)`.
pub fn family_from_paths(paths: &[ExplicitPath]) -> Result<PathFamily, FamilyError> {
    let n = paths.len();
    let mut f = PathFamily::zeroed(n);
    for (i, path) in paths.iter().enumerate() {
        let malformed = |reason: String| FamilyError::MalformedPath { index: i, reason };
        let start = Point::new(i as i64, 0);
        if path.start != start {
            return Err(malformed(format!("starts at {} instead of {start}", path.start)));
        }
        let mut column = 0usize;
        for step in &path.steps {
            match step {
                Step::Vertical => {
                    let cur = f.d(i, column);
                    f.set_d(i, column, cur + 1);
                }
                Step::Horizontal | Step::Diagonal => {
                    if column >= i {
                        return Err(malformed(format!("leaves column {column}, beyond its final column")));
                    }
                    f.set_b(i, column, (*step == Step::Diagonal) as u8);
                    column += 1;
                }
            }
        }
        let end = Point::new(0, i as i64);
        if path.end() != end {
            return Err(malformed(format!("ends at {} instead of {end}", path.end())));
        }
    }
    Ok(f)
}

/// Whether the paths with indices in `rows` have pairwise disjoint supports.
pub fn rows_disjoint(f: &PathFamily, rows: std::ops::Range<usize>) -> bool {
    let n = f.n() as i64;
    // supports of valid families stay inside the n x n box; the set catches
    // whatever an invalid encoding walks out to
    let mut grid = vec![false; f.n() * f.n()];
    let mut outside = HashSet::new();
    for i in rows {
        for p in f.walk(i).points() {
            let fresh = if (0..n).contains(&p.level) && (0..n).contains(&p.column) {
                !std::mem::replace(&mut grid[(p.level * n + p.column) as usize], true)
            } else {
                outside.insert(p)
            };
            if !fresh {
                return false;
            }
        }
    }
    true
}

pub fn is_disjoint(f: &PathFamily) -> bool {
    rows_disjoint(f, 0..f.n())
}

/// No vertical steps before the final column of any path.
pub fn is_cliff_shaped(f: &PathFamily) -> bool {
    (0..f.n()).all(|i| f.d_row(i)[..i].iter().all(|&d| d == 0))
}
