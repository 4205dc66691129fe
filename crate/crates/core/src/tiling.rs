//! Domino tilings of finite square regions and their edge-path families,
//! specialized to Aztec diamonds.
//!
//! Cells are `(i, j)` pairs with `j` the horizontal coordinate; the cell is
//! black when `i ≡ j (mod 2)`. A vertical edge is named by the cell to its
//! right. Paths run through the edges with a white cell on their left and a
//! black cell on their right, stepping by `(1,1)`, `(0,2)` or `(-1,1)`.
//!
//! The Aztec diamond of order `m` is placed as the cells `(i, j)` with
//! `|2i - 2m + 1| + |2j + 1| <= 2m`: rows `0..2m`, columns `-m..m`, centre at
//! the lattice point `(m, 0)`. Path point `(level, column)` of an `(m+1)`-family
//! maps to the edge `(2m - level - column, column - level)`, so horizontal,
//! diagonal and vertical steps become `(-1,1)`, `(0,2)` and `(1,1)`, and `P_i`
//! starts at the entry `(2m - i, -i)`. The zero-step path `P_0` sits on the
//! virtual edge `(2m, 0)` just outside the diamond.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::pathfam::{family_from_paths, is_disjoint, is_valid, ExplicitPath, PathFamily, Point};
use crate::text::{content_lines, parse_token, tokens, ParseError};

/// A unit square `(i, j)`; also names the vertical edge on its left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(pub i64, pub i64);

impl Cell {
    pub fn is_black(self) -> bool {
        (self.0 - self.1).rem_euclid(2) == 0
    }

    fn left(self) -> Cell {
        Cell(self.0, self.1 - 1)
    }

    fn right(self) -> Cell {
        Cell(self.0, self.1 + 1)
    }

    fn adjacent(self, other: Cell) -> bool {
        (self.0 - other.0).abs() + (self.1 - other.1).abs() == 1
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TilingError {
    #[error("not a tiling: {0}")]
    NotATiling(String),
    #[error("invalid path family: {0}")]
    InvalidFamily(String),
    #[error("path family is not disjoint")]
    NotDisjoint,
    #[error("region has {cells} cells, above the enumeration cap {cap}")]
    CapExceeded { cells: usize, cap: usize },
}

/// Finite set of cells; colors follow from parity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Region {
    cells: BTreeSet<Cell>,
}

impl Region {
    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Self {
        Region {
            cells: cells.into_iter().collect(),
        }
    }

    pub fn rectangle(rows: i64, cols: i64) -> Self {
        Region::new((0..rows).flat_map(|i| (0..cols).map(move |j| Cell(i, j))))
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    fn is_black_cell(&self, c: Cell) -> bool {
        c.is_black() && self.contains(c)
    }

    fn is_white_cell(&self, c: Cell) -> bool {
        !c.is_black() && self.contains(c)
    }

    pub fn black_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_black()).count()
    }

    pub fn white_count(&self) -> usize {
        self.len() - self.black_count()
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            writeln!(f, "{} {}", c.0, c.1)?;
        }
        Ok(())
    }
}

impl FromStr for Region {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cells = BTreeSet::new();
        for (no, line) in content_lines(s) {
            let toks = tokens(line);
            if toks.len() != 2 {
                return Err(ParseError::new(no, 1, "expected `i j`"));
            }
            let c = Cell(
                parse_token(toks[0], no, "integer")?,
                parse_token(toks[1], no, "integer")?,
            );
            if !cells.insert(c) {
                return Err(ParseError::new(no, 1, format!("duplicate cell {c}")));
            }
        }
        Ok(Region { cells })
    }
}

/// Entries, interior edges and exits of a region, each edge named by the
/// cell to its right.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeSets {
    pub entries: BTreeSet<Cell>,
    pub interior: BTreeSet<Cell>,
    pub exits: BTreeSet<Cell>,
}

pub fn region_edges(s: &Region) -> EdgeSets {
    let mut sets = EdgeSets::default();
    for &c in s.cells() {
        if c.is_black() {
            if s.is_white_cell(c.left()) {
                sets.interior.insert(c);
            } else {
                sets.entries.insert(c);
            }
        } else if !s.is_black_cell(c.right()) {
            sets.exits.insert(c.right());
        }
    }
    sets
}

/// Two adjacent cells, stored in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Domino(Cell, Cell);

impl Domino {
    pub fn new(a: Cell, b: Cell) -> Option<Self> {
        if !a.adjacent(b) {
            return None;
        }
        Some(if a <= b { Domino(a, b) } else { Domino(b, a) })
    }

    pub fn cells(self) -> (Cell, Cell) {
        (self.0, self.1)
    }

    pub fn black(self) -> Cell {
        if self.0.is_black() {
            self.0
        } else {
            self.1
        }
    }

    pub fn white(self) -> Cell {
        if self.0.is_black() {
            self.1
        } else {
            self.0
        }
    }

    pub fn is_horizontal(self) -> bool {
        self.0 .0 == self.1 .0
    }
}

/// A set of pairwise disjoint dominoes, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominoTiling {
    dominoes: Vec<Domino>,
}

impl DominoTiling {
    pub fn new(dominoes: impl IntoIterator<Item = Domino>) -> Result<Self, TilingError> {
        let mut dominoes: Vec<Domino> = dominoes.into_iter().collect();
        dominoes.sort();
        let mut seen = BTreeSet::new();
        for d in &dominoes {
            for c in [d.0, d.1] {
                if !seen.insert(c) {
                    return Err(TilingError::NotATiling(format!("cell {c} covered twice")));
                }
            }
        }
        Ok(DominoTiling { dominoes })
    }

    pub fn dominoes(&self) -> &[Domino] {
        &self.dominoes
    }

    pub fn len(&self) -> usize {
        self.dominoes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dominoes.is_empty()
    }

    /// The region this tiling covers.
    pub fn region(&self) -> Region {
        Region::new(self.dominoes.iter().flat_map(|d| [d.0, d.1]))
    }

    pub fn tiles(&self, s: &Region) -> bool {
        self.len() * 2 == s.len() && self.dominoes.iter().all(|d| s.contains(d.0) && s.contains(d.1))
    }

    fn map_cells(&self, f: impl Fn(Cell) -> Cell) -> DominoTiling {
        let dominoes = self
            .dominoes
            .iter()
            .map(|d| Domino::new(f(d.0), f(d.1)).expect("isometries keep cells adjacent"));
        DominoTiling::new(dominoes).expect("isometries keep dominoes disjoint")
    }
}

impl fmt::Display for DominoTiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.dominoes {
            writeln!(f, "{} {} {} {}", d.0 .0, d.0 .1, d.1 .0, d.1 .1)?;
        }
        Ok(())
    }
}

impl FromStr for DominoTiling {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut dominoes = Vec::new();
        for (no, line) in content_lines(s) {
            let toks = tokens(line);
            if toks.len() != 4 {
                return Err(ParseError::new(no, 1, "expected `i1 j1 i2 j2`"));
            }
            let mut v = [0i64; 4];
            for (slot, tok) in v.iter_mut().zip(&toks) {
                *slot = parse_token(*tok, no, "integer")?;
            }
            let d = Domino::new(Cell(v[0], v[1]), Cell(v[2], v[3]))
                .ok_or_else(|| ParseError::new(no, 1, "domino cells are not adjacent"))?;
            dominoes.push(d);
        }
        DominoTiling::new(dominoes).map_err(|e| ParseError::new(1, 1, e))
    }
}

/// Edge paths: sequences of edges with steps in `{(1,1), (0,2), (-1,1)}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgePathFamily {
    pub paths: Vec<Vec<Cell>>,
}

impl EdgePathFamily {
    pub fn new(mut paths: Vec<Vec<Cell>>) -> Self {
        paths.sort();
        EdgePathFamily { paths }
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

fn is_edge_step(from: Cell, to: Cell) -> bool {
    matches!((to.0 - from.0, to.1 - from.1), (1, 1) | (0, 2) | (-1, 1))
}

/// The step `(e, e')` contributed by a domino: `e` is the left edge of its
/// black cell, `e'` the right edge of its white cell.
fn domino_step(d: Domino) -> (Cell, Cell) {
    (d.black(), d.white().right())
}

/// Edge-path family of a tiling of `s`.
pub fn tiling_to_paths(s: &Region, t: &DominoTiling) -> Result<EdgePathFamily, TilingError> {
    if !t.tiles(s) {
        return Err(TilingError::NotATiling(
            "dominoes do not cover the region exactly".into(),
        ));
    }
    let mut next = BTreeMap::new();
    for &d in t.dominoes() {
        let (e, e2) = domino_step(d);
        if e != e2 {
            next.insert(e, e2);
        }
    }
    let edges = region_edges(s);
    let mut used = 0;
    let mut paths = Vec::with_capacity(edges.entries.len());
    for &start in &edges.entries {
        let mut path = vec![start];
        let mut at = start;
        while let Some(&to) = next.get(&at) {
            path.push(to);
            at = to;
            used += 1;
        }
        paths.push(path);
    }
    debug_assert_eq!(used, next.len(), "every step lies on a path from an entry");
    Ok(EdgePathFamily::new(paths))
}

/// Checks the edge constraints of a path family on `s`.
pub fn validate_edge_family(s: &Region, p: &EdgePathFamily) -> Result<(), TilingError> {
    let bad = |msg: String| Err(TilingError::InvalidFamily(msg));
    let edges = region_edges(s);
    let mut seen = BTreeSet::new();
    let mut starts = BTreeSet::new();
    let mut ends = BTreeSet::new();
    for path in &p.paths {
        let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
            return bad("empty path".into());
        };
        if !edges.entries.contains(&first) {
            return bad(format!("path starts at {first}, which is not an entry"));
        }
        if !edges.exits.contains(&last) {
            return bad(format!("path ends at {last}, which is not an exit"));
        }
        for &e in &path[1..path.len() - 1] {
            if !edges.interior.contains(&e) {
                return bad(format!("path passes through {e}, which is not an interior edge"));
            }
        }
        if let Some(w) = path.windows(2).find(|w| !is_edge_step(w[0], w[1])) {
            return bad(format!("step from {} to {} is not allowed", w[0], w[1]));
        }
        for &e in path {
            if !seen.insert(e) {
                return bad(format!("edge {e} lies on two paths"));
            }
        }
        starts.insert(first);
        ends.insert(last);
    }
    if starts != edges.entries {
        return bad("not every entry starts a path".into());
    }
    if ends != edges.exits {
        return bad("not every exit ends a path".into());
    }
    Ok(())
}

/// Inverse of [`tiling_to_paths`].
pub fn paths_to_tiling(s: &Region, p: &EdgePathFamily) -> Result<DominoTiling, TilingError> {
    validate_edge_family(s, p)?;
    let mut next = BTreeMap::new();
    for path in &p.paths {
        for w in path.windows(2) {
            next.insert(w[0], w[1]);
        }
    }
    let mut dominoes = Vec::with_capacity(s.len() / 2);
    let mut claimed = BTreeSet::new();
    for &b in s.cells().iter().filter(|c| c.is_black()) {
        let w = match next.get(&b) {
            Some(&e2) => e2.left(),
            None => b.left(),
        };
        if !s.is_white_cell(w) || !claimed.insert(w) {
            return Err(TilingError::InvalidFamily(format!(
                "black cell {b} has no free white partner"
            )));
        }
        dominoes.push(Domino::new(b, w).expect("partner is adjacent by construction"));
    }
    if claimed.len() != s.white_count() {
        return Err(TilingError::InvalidFamily("some white cells are left uncovered".into()));
    }
    DominoTiling::new(dominoes)
}

/// Upper bound on region size for [`enumerate_tilings`] unless overridden.
pub const DEFAULT_TILING_CAP: usize = 40;

/// Every domino tiling of `s`, in sorted order.
pub fn enumerate_tilings(s: &Region, cap: usize) -> Result<Vec<DominoTiling>, TilingError> {
    if s.len() > cap {
        return Err(TilingError::CapExceeded { cells: s.len(), cap });
    }
    fn go(free: &mut BTreeSet<Cell>, placed: &mut Vec<Domino>, out: &mut Vec<DominoTiling>) {
        let Some(&first) = free.iter().next() else {
            out.push(DominoTiling::new(placed.iter().copied()).expect("backtracking keeps dominoes disjoint"));
            return;
        };
        free.remove(&first);
        for partner in [first.right(), Cell(first.0 + 1, first.1)] {
            if free.remove(&partner) {
                placed.push(Domino::new(first, partner).expect("neighbours"));
                go(free, placed, out);
                placed.pop();
                free.insert(partner);
            }
        }
        free.insert(first);
    }
    let mut out = Vec::new();
    go(&mut s.cells().clone(), &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// The Aztec diamond of order `m`, in the placement described at module level.
pub fn aztec_region(m: usize) -> Region {
    let m = m as i64;
    Region::new(
        (0..2 * m)
            .flat_map(move |i| (-m..m).map(move |j| Cell(i, j)))
            .filter(move |c| (2 * c.0 - 2 * m + 1).abs() + (2 * c.1 + 1).abs() <= 2 * m),
    )
}

/// Order of the Aztec diamond with `cells` squares.
fn aztec_order_of(cells: usize) -> Option<usize> {
    let mut m = 0;
    while 2 * m * (m + 1) < cells {
        m += 1;
    }
    (2 * m * (m + 1) == cells).then_some(m)
}

/// Edge carrying path point `p` in the order-`m` Aztec placement.
pub fn aztec_edge(m: usize, p: Point) -> Cell {
    let m = m as i64;
    Cell(2 * m - p.level - p.column, p.column - p.level)
}

/// Inverse of [`aztec_edge`]; `None` off the image lattice.
pub fn aztec_point(m: usize, e: Cell) -> Option<Point> {
    let m = m as i64;
    let sum = 2 * m - e.0;
    let diff = e.1;
    if (sum + diff).rem_euclid(2) != 0 {
        return None;
    }
    Some(Point::new((sum - diff) / 2, (sum + diff) / 2))
}

/// The virtual edge outside the diamond that carries `P_0`.
pub fn aztec_virtual_edge(m: usize) -> Cell {
    aztec_edge(m, Point::new(0, 0))
}

/// Edge paths of all `n` paths, `P_0` included as its single virtual edge.
pub fn aztec_edge_paths(f: &PathFamily) -> Vec<Vec<Cell>> {
    let m = f.n().saturating_sub(1);
    (0..f.n())
        .map(|i| f.walk(i).points().into_iter().map(|p| aztec_edge(m, p)).collect())
        .collect()
}

/// Tiling of the order-`n-1` Aztec diamond corresponding to a disjoint `n`-family.
pub fn family_to_tiling(f: &PathFamily) -> Result<DominoTiling, TilingError> {
    if f.n() == 0 {
        return Err(TilingError::InvalidFamily("a family needs at least one path".into()));
    }
    if !is_valid(f) {
        return Err(TilingError::InvalidFamily("family violates its invariants".into()));
    }
    if !is_disjoint(f) {
        return Err(TilingError::NotDisjoint);
    }
    let m = f.n() - 1;
    let mut edge_paths = aztec_edge_paths(f);
    edge_paths.remove(0);
    paths_to_tiling(&aztec_region(m), &EdgePathFamily::new(edge_paths))
}

/// Inverse of [`family_to_tiling`].
pub fn tiling_to_family(t: &DominoTiling) -> Result<PathFamily, TilingError> {
    let region = t.region();
    let m = aztec_order_of(region.len()).ok_or_else(|| {
        TilingError::NotATiling(format!("{} cells is not the size of an Aztec diamond", region.len()))
    })?;
    if region != aztec_region(m) {
        return Err(TilingError::NotATiling(format!(
            "cells do not form the order-{m} Aztec diamond"
        )));
    }
    let edge_paths = tiling_to_paths(&region, t)?;
    let mut paths = vec![None; m + 1];
    paths[0] = Some(ExplicitPath::new(Point::new(0, 0), Vec::new()));
    for edges in &edge_paths.paths {
        let points = edges
            .iter()
            .map(|&e| aztec_point(m, e))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| TilingError::NotATiling("edge path leaves the path lattice".into()))?;
        let start = points[0];
        let i = start.level as usize;
        if start.column != 0 || i == 0 || i > m || paths[i].is_some() {
            return Err(TilingError::NotATiling(format!("unexpected path start {start}")));
        }
        paths[i] = ExplicitPath::from_points(&points);
    }
    let paths: Vec<ExplicitPath> = paths
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| TilingError::NotATiling("paths do not form a family".into()))?;
    family_from_paths(&paths).map_err(|e| TilingError::NotATiling(e.to_string()))
}

/// The four ways of reading a path family off a tiling, by which side of the
/// black cell the white cell of the crossed edge lies on. "Above" means row
/// index `i - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// White left of black: the canonical reading.
    WhiteLeft = 0,
    WhiteRight = 1,
    WhiteAbove = 2,
    WhiteBelow = 3,
}

impl Convention {
    pub const ALL: [Convention; 4] = [
        Convention::WhiteLeft,
        Convention::WhiteRight,
        Convention::WhiteAbove,
        Convention::WhiteBelow,
    ];

    pub fn from_index(idx: u8) -> Option<Self> {
        Self::ALL.get(idx as usize).copied()
    }

    /// Color-preserving symmetry of the order-`m` diamond that turns this
    /// convention into the canonical one. Each is an involution.
    pub fn transform(self, m: usize, c: Cell) -> Cell {
        let m = m as i64;
        let Cell(i, j) = c;
        match self {
            Convention::WhiteLeft => c,
            Convention::WhiteRight => Cell(2 * m - 1 - i, -1 - j),
            Convention::WhiteAbove => Cell(j + m, i - m),
            Convention::WhiteBelow => Cell(m - 1 - j, m - 1 - i),
        }
    }
}

/// The disjoint family read off an Aztec tiling under `conv`.
pub fn tiling_to_family_with(t: &DominoTiling, conv: Convention) -> Result<PathFamily, TilingError> {
    let m = aztec_order_of(t.len() * 2).ok_or_else(|| TilingError::NotATiling("not an Aztec diamond tiling".into()))?;
    tiling_to_family(&t.map_cells(|c| conv.transform(m, c)))
}

/// Inverse of [`tiling_to_family_with`].
pub fn family_to_tiling_with(f: &PathFamily, conv: Convention) -> Result<DominoTiling, TilingError> {
    let t = family_to_tiling(f)?;
    let m = f.n() - 1;
    Ok(t.map_cells(|c| conv.transform(m, c)))
}

/// The dual family: the same tiling read with white cells on the right,
/// expressed in centrally reflected coordinates.
pub fn dual_family(f: &PathFamily) -> Result<PathFamily, TilingError> {
    tiling_to_family_with(&family_to_tiling(f)?, Convention::WhiteRight)
}

/// Outcome of matching the horizontal and vertical steps of a family against
/// the steps of its dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingReport {
    /// Steps of the family crossed at their midpoint by a perpendicular dual step.
    pub crossings: usize,
    /// Midpoints (in doubled coordinates) of family steps left uncrossed.
    pub uncrossed: Vec<(i64, i64)>,
    /// Midpoints of dual steps not crossing any family step.
    pub unused_dual: Vec<(i64, i64)>,
}

impl CrossingReport {
    pub fn holds(&self) -> bool {
        self.uncrossed.is_empty() && self.unused_dual.is_empty()
    }
}

/// Checks the midpoint-crossing property of `f` against `dual`, with the dual
/// mapped back by the central reflection `p -> (n - ½, n - ½) - p`.
pub fn crossing_report(f: &PathFamily, dual: &PathFamily) -> CrossingReport {
    use crate::pathfam::Step;
    let n = f.n() as i64;
    // midpoints in doubled coordinates, tagged with the step orientation
    let mut mine = BTreeSet::new();
    for i in 0..f.n() {
        let path = f.walk(i);
        for (s, p) in path.steps.iter().zip(path.points()) {
            let (dl, dc) = s.delta();
            if *s != Step::Diagonal {
                mine.insert((2 * p.level + dl, 2 * p.column + dc, *s == Step::Horizontal));
            }
        }
    }
    let mut theirs = BTreeSet::new();
    for i in 0..dual.n() {
        let path = dual.walk(i);
        for (s, p) in path.steps.iter().zip(path.points()) {
            let (dl, dc) = s.delta();
            if *s != Step::Diagonal {
                let (ml, mc) = (2 * p.level + dl, 2 * p.column + dc);
                // reflected dual vertical steps cross horizontal steps of f
                theirs.insert((2 * n - 1 - ml, 2 * n - 1 - mc, *s == Step::Vertical));
            }
        }
    }
    CrossingReport {
        crossings: mine.intersection(&theirs).count(),
        uncrossed: mine.difference(&theirs).map(|&(a, b, _)| (a, b)).collect(),
        unused_dual: theirs.difference(&mine).map(|&(a, b, _)| (a, b)).collect(),
    }
}
