//! Hand-written SVG pictures of path families and domino tilings.
//!
//! Two fixed coordinate systems, both in units of [`UNIT`] pixels:
//! - lattice pictures (`Paths`) put point `(level, column)` at
//!   `x = column`, `y = n - 1 - level`, so raising the level moves up the page;
//! - tiling pictures put cell `(i, j)` at `[j, j+1] x [i, i+1]` and draw paths
//!   through the midpoints of the vertical edges they cross.
//!
//! Every path of a family, the zero-step `P_0` included, becomes exactly one
//! `<path>` element; dominoes are `<rect>`s and lattice points `<circle>`s.

use std::fmt::Write;

use crate::comb::comb_stages;
use crate::pathfam::{BitTriangle, PathFamily, Point};
use crate::tiling::{
    aztec_edge_paths, dual_family, family_to_tiling, tiling_to_family, tiling_to_paths, Cell, DominoTiling, TilingError,
};

pub const UNIT: i64 = 20;
const MARGIN: i64 = 10;

const PATH_COLORS: [&str; 6] = ["#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad", "#d35400", "#16a085"];
const DUAL_COLOR: &str = "#e6a100";
const GRID_COLOR: &str = "#b0b0b0";
// horizontal black-left, horizontal black-right, vertical black-top, vertical black-bottom
const DOMINO_FILLS: [&str; 4] = ["#f4d03f", "#5dade2", "#58d68d", "#ec7063"];

/// Lattice dots are omitted above this order to keep large pictures small.
const GRID_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Style {
    Paths,
    Tiling,
    Overlay,
    Dual,
}

impl Style {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "paths" => Some(Style::Paths),
            "tiling" => Some(Style::Tiling),
            "overlay" => Some(Style::Overlay),
            "dual" => Some(Style::Dual),
            _ => None,
        }
    }
}

/// Accumulates elements and their bounding box, in pixel coordinates.
struct Canvas {
    body: String,
    min: (i64, i64),
    max: (i64, i64),
}

impl Canvas {
    fn new() -> Self {
        Canvas {
            body: String::new(),
            min: (0, 0),
            max: (0, 0),
        }
    }

    fn include(&mut self, x: i64, y: i64) {
        self.min = (self.min.0.min(x), self.min.1.min(y));
        self.max = (self.max.0.max(x), self.max.1.max(y));
    }

    fn rect(&mut self, x: i64, y: i64, w: i64, h: i64, fill: &str) {
        self.include(x, y);
        self.include(x + w, y + h);
        let _ = writeln!(
            self.body,
            r##"<rect x="{x}" y="{y}" width="{w}" height="{h}" fill="{fill}" stroke="#333" stroke-width="1"/>"##
        );
    }

    fn dot(&mut self, x: i64, y: i64) {
        self.include(x, y);
        let _ = writeln!(self.body, r#"<circle cx="{x}" cy="{y}" r="1.5" fill="{GRID_COLOR}"/>"#);
    }

    /// One polyline; a single point is drawn as a round-capped dot.
    fn path(&mut self, points: &[(i64, i64)], color: &str, width: f64) {
        let mut d = String::new();
        for (idx, &(x, y)) in points.iter().enumerate() {
            self.include(x, y);
            let _ = write!(d, "{}{x} {y}", if idx == 0 { "M" } else { " L" });
        }
        if let [(x, y)] = points {
            let _ = write!(d, " L{x} {y}");
        }
        let _ = writeln!(
            self.body,
            r#"<path d="{d}" fill="none" stroke="{color}" stroke-width="{width}" stroke-linecap="round" stroke-linejoin="round"/>"#
        );
    }

    fn finish(self) -> String {
        let (x0, y0) = (self.min.0 - MARGIN, self.min.1 - MARGIN);
        let (w, h) = (
            self.max.0 - self.min.0 + 2 * MARGIN,
            self.max.1 - self.min.1 + 2 * MARGIN,
        );
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0} {y0} {w} {h}\" width=\"{w}\" height=\"{h}\">\n\
             <g id=\"canvas\">\n{}</g>\n</svg>\n",
            self.body
        )
    }
}

fn lattice_xy(n: usize, p: Point) -> (i64, i64) {
    (p.column * UNIT, (n as i64 - 1 - p.level) * UNIT)
}

fn edge_xy(e: Cell) -> (i64, i64) {
    (e.1 * UNIT, e.0 * UNIT + UNIT / 2)
}

fn draw_dominoes(c: &mut Canvas, t: &DominoTiling) {
    for d in t.dominoes() {
        let (a, _) = d.cells();
        let class = match (d.is_horizontal(), d.black() == a) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        };
        let (w, h) = if d.is_horizontal() { (2, 1) } else { (1, 2) };
        c.rect(a.1 * UNIT, a.0 * UNIT, w * UNIT, h * UNIT, DOMINO_FILLS[class]);
    }
}

fn draw_edge_paths(c: &mut Canvas, paths: &[Vec<Cell>]) {
    for (i, p) in paths.iter().enumerate() {
        let pts: Vec<_> = p.iter().map(|&e| edge_xy(e)).collect();
        c.path(&pts, PATH_COLORS[i % PATH_COLORS.len()], 3.0);
    }
}

/// Lattice picture of any valid family, disjoint or not.
pub fn render_paths(f: &PathFamily) -> String {
    let n = f.n();
    let mut c = Canvas::new();
    if n <= GRID_LIMIT {
        for level in 0..n as i64 {
            for column in 0..n as i64 {
                let (x, y) = lattice_xy(n, Point::new(level, column));
                c.dot(x, y);
            }
        }
    }
    let width = if n > GRID_LIMIT { 1.0 } else { 3.0 };
    for i in 0..n {
        let pts: Vec<_> = f.walk(i).points().into_iter().map(|p| lattice_xy(n, p)).collect();
        c.path(&pts, PATH_COLORS[i % PATH_COLORS.len()], width);
    }
    c.finish()
}

/// Dominoes only, for any tiling.
pub fn render_tiling(t: &DominoTiling) -> String {
    let mut c = Canvas::new();
    draw_dominoes(&mut c, t);
    c.finish()
}

/// Tiling with its edge paths. Aztec tilings also show `P_0` on its
/// virtual edge.
pub fn render_overlay(t: &DominoTiling) -> Result<String, TilingError> {
    let mut c = Canvas::new();
    draw_dominoes(&mut c, t);
    match tiling_to_family(t) {
        Ok(f) => draw_edge_paths(&mut c, &aztec_edge_paths(&f)),
        Err(_) => {
            let region = t.region();
            let p = tiling_to_paths(&region, t)?;
            draw_edge_paths(&mut c, &p.paths);
        }
    }
    Ok(c.finish())
}

/// Aztec tiling with its family and, in a second color, the dual family.
pub fn render_dual(t: &DominoTiling) -> Result<String, TilingError> {
    let f = tiling_to_family(t)?;
    let dual = dual_family(&f)?;
    let m = (f.n() - 1) as i64;
    let mut c = Canvas::new();
    draw_dominoes(&mut c, t);
    draw_edge_paths(&mut c, &aztec_edge_paths(&f));
    // the dual lives in the half-turned picture: (x, y) -> (-x, 2m - y)
    let turned: Vec<Vec<(i64, i64)>> = aztec_edge_paths(&dual)
        .iter()
        .map(|p| {
            p.iter()
                .map(|&e| edge_xy(e))
                .map(|(x, y)| (-x, 2 * m * UNIT - y))
                .collect()
        })
        .collect();
    for p in &turned {
        c.path(p, DUAL_COLOR, 2.0);
    }
    Ok(c.finish())
}

/// Renders a family in the requested style; tiling styles need a disjoint family.
pub fn render_family(f: &PathFamily, style: Style) -> Result<String, TilingError> {
    match style {
        Style::Paths => Ok(render_paths(f)),
        _ if f.n() == 0 => Ok(Canvas::new().finish()),
        _ => render_tiling_style(&family_to_tiling(f)?, style),
    }
}

/// Renders a tiling in the requested style; `Paths` and `Dual` need an Aztec diamond.
pub fn render_tiling_style(t: &DominoTiling, style: Style) -> Result<String, TilingError> {
    match style {
        Style::Paths => Ok(render_paths(&tiling_to_family(t)?)),
        Style::Tiling => Ok(render_tiling(t)),
        Style::Overlay => render_overlay(t),
        Style::Dual => render_dual(t),
    }
}

/// One lattice picture per combing stage, from the cliff family to the
/// disjoint one.
pub fn render_stages(t: &BitTriangle) -> Vec<String> {
    comb_stages(t).iter().map(render_paths).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::comb;

    fn example() -> PathFamily {
        comb(&BitTriangle::from_rows(3, &[vec![0], vec![1, 0]]).unwrap())
    }

    fn count(svg: &str, tag: &str) -> usize {
        svg.matches(&format!("<{tag} ")).count()
    }

    fn balanced(svg: &str) -> bool {
        svg.starts_with("<svg ")
            && svg.trim_end().ends_with("</svg>")
            && svg.matches("<g").count() == svg.matches("</g>").count()
    }

    #[test]
    fn empty_family() {
        let svg = render_paths(&PathFamily::zeroed(0));
        assert!(balanced(&svg));
        assert!(svg.contains("<g id=\"canvas\">\n</g>"));
        assert_eq!(count(&svg, "path"), 0);
    }

    #[test]
    fn one_path_element_per_path() {
        let svg = render_paths(&example());
        assert!(balanced(&svg));
        assert_eq!(count(&svg, "path"), 3);
        // P_2 is drawn through (2,0) (2,1) (1,1) (1,2) (0,2)
        assert!(svg.contains("M0 0 L20 0 L20 20 L40 20 L40 40"));
    }

    #[test]
    fn overlay_counts() {
        let svg = render_family(&example(), Style::Overlay).unwrap();
        assert!(balanced(&svg));
        assert_eq!(count(&svg, "rect"), 6);
        assert_eq!(count(&svg, "path"), 3);
    }

    #[test]
    fn dual_overlay_counts() {
        let svg = render_family(&example(), Style::Dual).unwrap();
        assert!(balanced(&svg));
        assert_eq!(count(&svg, "path"), 6);
        assert!(svg.contains(DUAL_COLOR));
    }

    #[test]
    fn tiling_styles_need_disjoint_families() {
        let cliff = crate::pathfam::family_from_bits(&BitTriangle::from_rows(3, &[vec![0], vec![1, 0]]).unwrap());
        assert_eq!(render_family(&cliff, Style::Tiling), Err(TilingError::NotDisjoint));
        assert_eq!(count(&render_family(&cliff, Style::Paths).unwrap(), "path"), 3);
    }

    #[test]
    fn general_region_overlay() {
        let t: DominoTiling = "0 0 0 1\n1 0 1 1\n".parse().unwrap();
        let svg = render_overlay(&t).unwrap();
        assert_eq!(count(&svg, "rect"), 2);
        assert_eq!(count(&svg, "path"), 1);
    }

    #[test]
    fn stages() {
        let t = BitTriangle::from_rows(3, &[vec![0], vec![1, 0]]).unwrap();
        let svgs = render_stages(&t);
        assert_eq!(svgs.len(), 4);
        assert!(svgs.iter().all(|s| count(s, "path") == 3));
    }
}
