//! Brute-force ground truth: exhaustive enumeration of disjoint families,
//! step statistics, and an end-to-end check that combing is a bijection.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::comb::{comb, uncomb, CombError};
use crate::pathfam::{family_from_paths, is_disjoint, BitTriangle, ExplicitPath, PathFamily, Point, Step};

/// Largest order enumerated unless the caller raises the cap.
pub const DEFAULT_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("order {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

fn check_cap(n: usize, cap: usize) -> Result<(), EnumError> {
    if n > cap {
        Err(EnumError::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

struct DisjointSearch {
    n: usize,
    occupied: Vec<Vec<bool>>,
    paths: Vec<ExplicitPath>,
    found: BTreeSet<PathFamily>,
}

impl DisjointSearch {
    fn free(&self, p: Point) -> bool {
        !self.occupied[p.level as usize][p.column as usize]
    }

    fn mark(&mut self, p: Point, v: bool) {
        self.occupied[p.level as usize][p.column as usize] = v;
    }

    /// Places `P_i, P_{i-1}, ..., P_0`.
    fn place(&mut self, i: usize) {
        let start = Point::new(i as i64, 0);
        if !self.free(start) {
            return;
        }
        self.mark(start, true);
        let mut steps = Vec::new();
        self.extend(i, start, &mut steps);
        self.mark(start, false);
    }

    fn extend(&mut self, i: usize, at: Point, steps: &mut Vec<Step>) {
        let target = Point::new(0, i as i64);
        if at == target {
            self.paths[i] = ExplicitPath::new(Point::new(i as i64, 0), steps.clone());
            if i == 0 {
                let fam = family_from_paths(&self.paths).expect("search only builds well-formed paths");
                self.found.insert(fam);
            } else {
                self.place(i - 1);
            }
            return;
        }
        for step in [Step::Horizontal, Step::Diagonal, Step::Vertical] {
            let (dl, dc) = step.delta();
            let next = Point::new(at.level + dl, at.column + dc);
            if next.level < 0 || next.column > i as i64 || next.level + next.column < i as i64 {
                continue;
            }
            if !self.free(next) {
                continue;
            }
            self.mark(next, true);
            steps.push(step);
            self.extend(i, next, steps);
            steps.pop();
            self.mark(next, false);
        }
    }
}

/// Every disjoint Schröder `n`-family, found by placing paths from `P_{n-1}`
/// down to `P_0` on an occupancy grid.
pub fn enumerate_disjoint(n: usize, cap: usize) -> Result<BTreeSet<PathFamily>, EnumError> {
    check_cap(n, cap)?;
    if n == 0 {
        return Ok(BTreeSet::from([PathFamily::zeroed(0)]));
    }
    let mut search = DisjointSearch {
        n,
        occupied: vec![vec![false; n]; n],
        paths: vec![ExplicitPath::new(Point::new(0, 0), Vec::new()); n],
        found: BTreeSet::new(),
    };
    search.place(search.n - 1);
    Ok(search.found)
}

/// Every Schröder-type path from `(i, 0)` to `(0, i)`, with no other restriction.
fn all_paths(i: usize) -> Vec<ExplicitPath> {
    fn go(i: i64, at: Point, steps: &mut Vec<Step>, out: &mut Vec<ExplicitPath>) {
        if at == Point::new(0, i) {
            out.push(ExplicitPath::new(Point::new(i, 0), steps.clone()));
            return;
        }
        for step in [Step::Horizontal, Step::Diagonal, Step::Vertical] {
            let (dl, dc) = step.delta();
            let next = Point::new(at.level + dl, at.column + dc);
            if next.level >= 0 && next.column <= i {
                steps.push(step);
                go(i, next, steps, out);
                steps.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(i as i64, Point::new(i as i64, 0), &mut Vec::new(), &mut out);
    out
}

/// Every `n`-family whatsoever (`Π_i a_{i,i}` of them), disjoint or not.
pub fn enumerate_all_families(n: usize, cap: usize) -> Result<Vec<PathFamily>, EnumError> {
    check_cap(n, cap)?;
    let per_row: Vec<Vec<ExplicitPath>> = (0..n).map(all_paths).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        let paths: Vec<ExplicitPath> = choice.iter().enumerate().map(|(i, &c)| per_row[i][c].clone()).collect();
        out.push(family_from_paths(&paths).expect("generated paths are well-formed"));
        let mut r = 0;
        loop {
            if r == n {
                return Ok(out);
            }
            choice[r] += 1;
            if choice[r] < per_row[r].len() {
                break;
            }
            choice[r] = 0;
            r += 1;
        }
    }
}

/// Vertical steps per column.
pub fn column_counts(f: &PathFamily) -> Vec<u32> {
    (0..f.n()).map(|k| (k..f.n()).map(|i| f.d(i, k)).sum()).collect()
}

/// Horizontal steps from column `j` to `j + 1`, for `0 <= j <= n-2`.
pub fn intercolumn_counts(f: &PathFamily) -> Vec<u32> {
    (0..f.n().saturating_sub(1))
        .map(|j| (j + 1..f.n()).filter(|&i| f.b(i, j) == 0).count() as u32)
        .collect()
}

/// Horizontal steps on each level `0..n`.
pub fn row_counts(f: &PathFamily) -> Vec<u32> {
    let mut out = vec![0u32; f.n()];
    for i in 0..f.n() {
        let path = f.walk(i);
        let points = path.points();
        for (step, from) in path.steps.iter().zip(&points) {
            if *step == Step::Horizontal {
                out[from.level as usize] += 1;
            }
        }
    }
    out
}

/// A statistic vector computed from a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    DiagonalSteps,
    HorizontalSteps,
    ColumnCounts,
    IntercolumnCounts,
    RowCounts,
    /// Column counts followed by inter-column counts.
    ColumnAndIntercolumn,
}

impl Statistic {
    pub fn evaluate(self, f: &PathFamily) -> Vec<u32> {
        match self {
            Statistic::DiagonalSteps => vec![f.diagonal_steps()],
            Statistic::HorizontalSteps => vec![f.horizontal_steps()],
            Statistic::ColumnCounts => column_counts(f),
            Statistic::IntercolumnCounts => intercolumn_counts(f),
            Statistic::RowCounts => row_counts(f),
            Statistic::ColumnAndIntercolumn => {
                let mut v = column_counts(f);
                v.extend(intercolumn_counts(f));
                v
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistic::DiagonalSteps => "diagonal",
            Statistic::HorizontalSteps => "horizontal",
            Statistic::ColumnCounts => "column",
            Statistic::IntercolumnCounts => "intercolumn",
            Statistic::RowCounts => "row",
            Statistic::ColumnAndIntercolumn => "column+intercolumn",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    pub const ALL: [Statistic; 6] = [
        Statistic::DiagonalSteps,
        Statistic::HorizontalSteps,
        Statistic::ColumnCounts,
        Statistic::IntercolumnCounts,
        Statistic::RowCounts,
        Statistic::ColumnAndIntercolumn,
    ];
}

/// Exact frequency table, keyed by statistic vector in lexicographic order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Histogram(pub BTreeMap<Vec<u32>, u64>);

impl Histogram {
    pub fn from_values(values: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut map = BTreeMap::new();
        for v in values {
            *map.entry(v).or_insert(0) += 1;
        }
        Histogram(map)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn frequency(&self, key: &[u32]) -> u64 {
        self.0.get(key).copied().unwrap_or(0)
    }

    /// The joint table of independent symmetric binomials with the given trial
    /// counts: `freq(c) = Π_k C(m_k, c_k)`.
    pub fn binomial_product(trials: &[u32]) -> Self {
        let mut map = BTreeMap::from([(Vec::new(), 1u64)]);
        for &m in trials {
            let mut next = BTreeMap::new();
            for (key, freq) in &map {
                for c in 0..=m {
                    let mut k = key.clone();
                    k.push(c);
                    next.insert(k, freq * binomial(m as u64, c as u64));
                }
            }
            map = next;
        }
        Histogram(map)
    }

    /// Marginal of coordinate `idx`.
    pub fn marginal(&self, idx: usize) -> Histogram {
        let mut map = BTreeMap::new();
        for (k, f) in &self.0 {
            *map.entry(vec![k[idx]]).or_insert(0) += f;
        }
        Histogram(map)
    }
}

impl fmt::Display for Histogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (key, freq) in &self.0 {
            let k: Vec<String> = key.iter().map(u32::to_string).collect();
            writeln!(f, "{}\t{}", k.join(" "), freq)?;
        }
        Ok(())
    }
}

pub fn binomial(m: u64, c: u64) -> u64 {
    if c > m {
        return 0;
    }
    let c = c.min(m - c);
    (0..c).fold(1u64, |acc, t| acc * (m - t) / (t + 1))
}

/// Frequency table of `statistic` over all disjoint `n`-families.
pub fn joint_distribution(n: usize, statistic: Statistic, cap: usize) -> Result<Histogram, EnumError> {
    let fams = enumerate_disjoint(n, cap)?;
    Ok(Histogram::from_values(fams.iter().map(|f| statistic.evaluate(f))))
}

/// Frequency table of (zero bits per row, zero bits per column) over all bit
/// triangles of order `n`; the triangle-side counterpart of
/// [`Statistic::ColumnAndIntercolumn`].
pub fn triangle_zero_distribution(n: usize, cap: usize) -> Result<Histogram, EnumError> {
    check_cap(n, cap)?;
    Ok(Histogram::from_values(BitTriangle::all(n).map(|t| {
        let mut v: Vec<u32> = (0..n).map(|i| t.row_zeros(i)).collect();
        v.extend((0..n.saturating_sub(1)).map(|j| t.column_zeros(j)));
        v
    })))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BijectionFailure {
    /// Two triangles comb to the same family.
    Collision { first: BitTriangle, second: BitTriangle },
    /// Combing produced a family outside the enumerated disjoint set.
    Extra { triangle: BitTriangle, family: PathFamily },
    /// A disjoint family never produced by combing.
    Missing(PathFamily),
    /// `uncomb(comb(t)) != t`.
    TriangleRoundTrip {
        triangle: BitTriangle,
        got: Option<BitTriangle>,
    },
    /// `comb(uncomb(f)) != f`.
    FamilyRoundTrip {
        family: PathFamily,
        got: Option<PathFamily>,
    },
}

impl fmt::Display for BijectionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BijectionFailure::Collision { first, second } => {
                write!(f, "collision between triangles\n{first}and\n{second}")
            }
            BijectionFailure::Extra { triangle, family } => {
                write!(f, "triangle\n{triangle}combs to a non-disjoint family\n{family}")
            }
            BijectionFailure::Missing(fam) => write!(f, "disjoint family not reached by combing\n{fam}"),
            BijectionFailure::TriangleRoundTrip { triangle, got } => match got {
                Some(g) => write!(f, "uncomb(comb(t)) differs for\n{triangle}got\n{g}"),
                None => write!(f, "uncomb failed on comb of\n{triangle}"),
            },
            BijectionFailure::FamilyRoundTrip { family, got } => match got {
                Some(g) => write!(f, "comb(uncomb(f)) differs for\n{family}got\n{g}"),
                None => write!(f, "uncomb failed on disjoint family\n{family}"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub n: usize,
    pub triangles: usize,
    pub distinct_images: usize,
    pub disjoint_families: usize,
    /// Images that belong to the enumerated disjoint set.
    pub matched: usize,
    pub failures: Vec<BijectionFailure>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.distinct_images == self.triangles
            && self.matched == self.disjoint_families
            && self.triangles == self.disjoint_families
    }
}

/// Checks that [`comb`] is a bijection from bit triangles onto disjoint
/// families with [`uncomb`] as inverse.
pub fn verify_bijection(n: usize, cap: usize) -> Result<BijectionReport, EnumError> {
    verify_bijection_with(n, cap, comb, uncomb)
}

/// [`verify_bijection`] with the two maps supplied by the caller.
pub fn verify_bijection_with(
    n: usize,
    cap: usize,
    forward: impl Fn(&BitTriangle) -> PathFamily,
    backward: impl Fn(&PathFamily) -> Result<BitTriangle, CombError>,
) -> Result<BijectionReport, EnumError> {
    let disjoint = enumerate_disjoint(n, cap)?;
    let mut failures = Vec::new();
    let mut seen: HashMap<PathFamily, BitTriangle> = HashMap::new();
    let mut triangles = 0;
    for t in BitTriangle::all(n) {
        triangles += 1;
        let f = forward(&t);
        if !disjoint.contains(&f) {
            failures.push(BijectionFailure::Extra {
                triangle: t.clone(),
                family: f.clone(),
            });
        }
        match backward(&f) {
            Ok(back) if back == t => {}
            other => failures.push(BijectionFailure::TriangleRoundTrip {
                triangle: t.clone(),
                got: other.ok(),
            }),
        }
        if let Some(prev) = seen.get(&f) {
            failures.push(BijectionFailure::Collision {
                first: prev.clone(),
                second: t.clone(),
            });
        } else {
            seen.insert(f, t);
        }
    }
    let mut matched = 0;
    for f in &disjoint {
        if seen.contains_key(f) {
            matched += 1;
        } else {
            failures.push(BijectionFailure::Missing(f.clone()));
        }
        let again = backward(f).ok().map(|t| forward(&t));
        if again.as_ref() != Some(f) {
            failures.push(BijectionFailure::FamilyRoundTrip {
                family: f.clone(),
                got: again,
            });
        }
    }
    debug_assert!(disjoint.iter().all(is_disjoint));
    Ok(BijectionReport {
        n,
        triangles,
        distinct_images: seen.len(),
        disjoint_families: disjoint.len(),
        matched,
        failures,
    })
}
