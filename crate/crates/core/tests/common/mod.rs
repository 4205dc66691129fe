//! Checks shared by the topic test files and the acceptance runner. Each
//! returns a one-line summary on success and a description of the first
//! discrepancy otherwise. Expected values are computed here, independently of
//! the library code under test, wherever that is feasible.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use aztec_comb::comb::{comb, comb_column_traced, in_pathfam_nk, uncomb_column_traced, CombTrace};
use aztec_comb::enumerate::{
    enumerate_all_families, enumerate_disjoint, joint_distribution, triangle_zero_distribution, verify_bijection,
    Histogram, Statistic,
};
use aztec_comb::lgv::{delannoy_matrix, det_exact, verify_reduction};
use aztec_comb::pathfam::{explicit_paths, family_from_bits, is_disjoint, is_valid, BitTriangle, PathFamily, Step};
use aztec_comb::render::render_paths;
use aztec_comb::sample::{sample_family, sample_triangle};
use aztec_comb::tiling::{
    aztec_region, crossing_report, dual_family, enumerate_tilings, family_to_tiling, paths_to_tiling, region_edges,
    tiling_to_family, tiling_to_paths, validate_edge_family, Cell, Domino, DominoTiling, Region,
};
use num_bigint::BigInt;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

pub type Check = Result<String, String>;

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn binom2(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// Plain Pascal-triangle binomial, kept separate from the library's.
pub fn choose(m: u32, c: u32) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..m {
        let mut next = vec![1u64; row.len() + 1];
        for t in 1..row.len() {
            next[t] = row[t - 1] + row[t];
        }
        row = next;
    }
    row.get(c as usize).copied().unwrap_or(0)
}

pub fn disjoint_counts(max_n: usize) -> Check {
    let mut seen = Vec::new();
    for n in 1..=max_n {
        let count = enumerate_disjoint(n, max_n).map_err(|e| e.to_string())?.len();
        ensure(count == 1usize << binom2(n), || {
            format!("n={n}: {count} disjoint families")
        })?;
        seen.push(count.to_string());
    }
    Ok(seen.join(", "))
}

pub fn determinants(max_n: usize) -> Check {
    for n in 1..=max_n {
        let det = det_exact(&delannoy_matrix(n));
        let expected = BigInt::from(2u8).pow(binom2(n));
        ensure(det == expected, || format!("n={n}: det {det}, expected {expected}"))?;
        ensure(verify_reduction(n), || format!("n={n}: reduction fails"))?;
    }
    Ok(format!("det A_[n] = 2^C(n,2) and reduction hold for n = 1..{max_n}"))
}

pub fn bijection(max_n: usize) -> Check {
    for n in 1..=max_n {
        let r = verify_bijection(n, max_n).map_err(|e| e.to_string())?;
        ensure(r.passed(), || {
            format!(
                "n={n}: {:?} first failure {:?}",
                (r.matched, r.disjoint_families),
                r.failures.first()
            )
        })?;
        ensure(r.triangles == 1usize << binom2(n), || {
            format!("n={n}: {} triangles", r.triangles)
        })?;
    }
    Ok(format!("comb/uncomb bijective for n = 1..{max_n}"))
}

/// Valid families of order `n` in `Pathfam(n, k)`, from the brute-force list
/// of all families.
pub fn stage_set(all: &[PathFamily], k: usize) -> BTreeSet<PathFamily> {
    all.iter()
        .filter(|f| is_valid(f) && in_pathfam_nk(f, k))
        .cloned()
        .collect()
}

pub fn stage_bijectivity(max_n: usize) -> Check {
    let mut sizes = Vec::new();
    for n in 1..=max_n {
        let all = enumerate_all_families(n, max_n).map_err(|e| e.to_string())?;
        for k in (0..n).rev() {
            let domain = stage_set(&all, k + 1);
            let codomain = stage_set(&all, k);
            let mut image = BTreeSet::new();
            for f in &domain {
                let (g, _) = comb_column_traced(f, k).map_err(|e| format!("n={n} k={k}: {e}\n{f}"))?;
                let (back, _) = uncomb_column_traced(&g, k).map_err(|e| format!("n={n} k={k}: {e}\n{g}"))?;
                ensure(&back == f, || {
                    format!("n={n} k={k}: uncomb_column(comb_column(f)) != f for\n{f}")
                })?;
                if k == n - 1 || k == 0 {
                    ensure(&g == f, || format!("n={n} k={k}: stage is not the identity on\n{f}"))?;
                }
                image.insert(g);
            }
            ensure(image.len() == domain.len(), || format!("n={n} k={k}: not injective"))?;
            ensure(image == codomain, || {
                format!(
                    "n={n} k={k}: image has {} families, Pathfam(n,k) has {}",
                    image.len(),
                    codomain.len()
                )
            })?;
            if k == n - 1 || k == 0 {
                ensure(domain == codomain, || {
                    format!("n={n} k={k}: domain and codomain differ")
                })?;
            }
            sizes.push(domain.len());
        }
    }
    Ok(format!("all stages verified, domain sizes {sizes:?}"))
}

pub fn statistics_n4() -> Check {
    let n = 4;
    let fams = enumerate_disjoint(n, 5).map_err(|e| e.to_string())?;

    // diagonal step counts, tallied by walking the explicit paths
    let mut diag = BTreeMap::new();
    for f in &fams {
        let paths = explicit_paths(f).map_err(|e| e.to_string())?;
        let d = paths
            .iter()
            .flat_map(|p| &p.steps)
            .filter(|&&s| s == Step::Diagonal)
            .count();
        *diag.entry(d).or_insert(0u64) += 1;
    }
    let freqs: Vec<u64> = (0..=6).map(|d| diag.get(&d).copied().unwrap_or(0)).collect();
    ensure(freqs == [1, 6, 15, 20, 15, 6, 1], || {
        format!("diagonal frequencies {freqs:?}")
    })?;
    let lib = joint_distribution(n, Statistic::DiagonalSteps, 5).map_err(|e| e.to_string())?;
    ensure((0..=6u32).all(|d| lib.frequency(&[d]) == freqs[d as usize]), || {
        "library diagonal histogram disagrees".into()
    })?;

    // column counts against a product of binomial tables
    let columns = joint_distribution(n, Statistic::ColumnCounts, 5).map_err(|e| e.to_string())?;
    let mut expected = BTreeMap::new();
    for c1 in 0..=1 {
        for c2 in 0..=2 {
            for c3 in 0..=3 {
                expected.insert(vec![0, c1, c2, c3], choose(1, c1) * choose(2, c2) * choose(3, c3));
            }
        }
    }
    ensure(columns.0 == expected, || format!("column-count table {:?}", columns.0))?;
    ensure(columns == Histogram::binomial_product(&[0, 1, 2, 3]), || {
        "binomial_product disagrees".into()
    })?;

    // (column, inter-column) against (row zeros, column zeros) of all triangles
    let mut triangles = BTreeMap::new();
    for index in 0..1u64 << binom2(n) {
        let t = BitTriangle::from_index(n, index);
        let mut key: Vec<u32> = (0..n)
            .map(|i| (0..i).filter(|&j| t.get(i, j) == 0).count() as u32)
            .collect();
        key.extend((0..n - 1).map(|j| (j + 1..n).filter(|&i| t.get(i, j) == 0).count() as u32));
        *triangles.entry(key).or_insert(0u64) += 1;
    }
    let joint = joint_distribution(n, Statistic::ColumnAndIntercolumn, 5).map_err(|e| e.to_string())?;
    ensure(joint.0 == triangles, || {
        "joint (column, inter-column) table differs from triangles".into()
    })?;
    let lib_triangles = triangle_zero_distribution(n, 5).map_err(|e| e.to_string())?;
    ensure(lib_triangles.0 == triangles, || {
        "triangle_zero_distribution disagrees".into()
    })?;
    Ok(format!("diagonal {freqs:?}; {} joint classes match", joint.0.len()))
}

/// Level `r` carries a Binomial(r) number of horizontal steps.
pub fn row_marginals(n: usize) -> Check {
    let rows = joint_distribution(n, Statistic::RowCounts, 5).map_err(|e| e.to_string())?;
    let total = 1u64 << binom2(n);
    for r in 0..n {
        let m = rows.marginal(r);
        for c in 0..=r as u32 {
            let want = total / (1 << r) * choose(r as u32, c);
            ensure(m.frequency(&[c]) == want, || {
                format!("n={n} level {r} count {c}: {}", m.frequency(&[c]))
            })?;
        }
        ensure(m.total() == total, || format!("n={n} level {r}: mass {}", m.total()))?;
    }
    Ok(format!("n={n} row marginals binomial"))
}

/// Recomputes `D`'s per-column totals directly from the explicit paths.
fn vertical_per_column(f: &PathFamily) -> Vec<u32> {
    let mut out = vec![0; f.n()];
    for p in explicit_paths(f).expect("valid family") {
        for (s, at) in p.steps.iter().zip(p.points()) {
            if *s == Step::Vertical {
                out[at.column as usize] += 1;
            }
        }
    }
    out
}

/// Per-column totals of `B` (diagonal outgoing steps) and `D`.
pub fn column_sums(f: &PathFamily) -> (Vec<u32>, Vec<u32>) {
    let n = f.n();
    let b = (0..n).map(|j| (j + 1..n).map(|i| f.b(i, j) as u32).sum()).collect();
    let d: Vec<u32> = (0..n).map(|j| (j..n).map(|i| f.d(i, j)).sum()).collect();
    debug_assert_eq!(d, vertical_per_column(f));
    (b, d)
}

fn forward_dominance(traces: &[CombTrace]) -> Result<(), String> {
    for w in traces.windows(2) {
        let (d, e) = (&w[0], &w[1]);
        ensure(d.d_seq.len() == e.d_seq.len(), || "trace lengths differ".into())?;
        ensure(e.d_seq.iter().zip(&d.d_seq).all(|(e, d)| e <= d), || {
            format!(
                "forward dominance fails at k={} i={}: d={:?} e={:?}",
                d.k, d.i, d.d_seq, e.d_seq
            )
        })?;
    }
    traces
        .iter()
        .try_for_each(|t| ensure(t.is_monotone(), || format!("trace not monotone: {t:?}")))
}

fn backward_dominance(traces: &[CombTrace]) -> Result<(), String> {
    // call order is i = n-2 down to k, so w[0] is at i+1 and w[1] at i
    for w in traces.windows(2) {
        let (e, d) = (&w[0], &w[1]);
        ensure(d.d_seq.len() == e.d_seq.len(), || "trace lengths differ".into())?;
        ensure(d.d_seq.iter().zip(&e.d_seq).all(|(d, e)| d >= e), || {
            format!(
                "backward dominance fails at k={} i={}: d={:?} e={:?}",
                d.k, d.i, d.d_seq, e.d_seq
            )
        })?;
    }
    Ok(())
}

/// Combs and uncombs `t` one column at a time, checking conservation of the
/// column sums and, when `dominance` is set, the trace inequalities.
pub fn staged_run(t: &BitTriangle, conservation: bool, dominance: bool) -> Result<(), String> {
    let n = t.n();
    let cliff = family_from_bits(t);
    let sums = column_sums(&cliff);
    let mut f = cliff.clone();
    for k in (0..n).rev() {
        let (g, traces) = comb_column_traced(&f, k).map_err(|e| format!("comb_column k={k}: {e}"))?;
        if conservation {
            ensure(column_sums(&g) == sums, || {
                format!("column sums change in comb_column k={k}")
            })?;
        }
        if dominance {
            forward_dominance(&traces)?;
        }
        f = g;
    }
    ensure(f == comb(t), || "staged comb differs from comb".into())?;
    ensure(is_disjoint(&f), || "combed family intersects".into())?;
    for k in 0..n {
        let (g, traces) = uncomb_column_traced(&f, k).map_err(|e| format!("uncomb_column k={k}: {e}"))?;
        if conservation {
            ensure(column_sums(&g) == sums, || {
                format!("column sums change in uncomb_column k={k}")
            })?;
        }
        if dominance {
            backward_dominance(&traces)?;
        }
        f = g;
    }
    ensure(f == cliff, || {
        "staged uncomb does not return to the cliff family".into()
    })?;
    Ok(())
}

pub fn staged_exhaustive_and_random(
    max_n: usize,
    random_n: usize,
    samples: u64,
    conservation: bool,
    dominance: bool,
) -> Check {
    let mut runs = 0;
    for n in 0..=max_n {
        for t in BitTriangle::all(n) {
            staged_run(&t, conservation, dominance).map_err(|e| format!("{e}\non\n{t}"))?;
            runs += 1;
        }
    }
    for seed in 0..samples {
        let t = sample_triangle(random_n, seed);
        staged_run(&t, conservation, dominance).map_err(|e| format!("seed {seed}: {e}"))?;
        runs += 1;
    }
    Ok(format!("{runs} staged runs"))
}

pub fn aztec_tilings() -> Check {
    for m in 1..=3 {
        let s = aztec_region(m);
        let tilings = enumerate_tilings(&s, 40).map_err(|e| e.to_string())?;
        ensure(tilings.len() == 1 << (m * (m + 1) / 2), || {
            format!("order {m}: {} tilings", tilings.len())
        })?;
        let fams = enumerate_disjoint(m + 1, 5).map_err(|e| e.to_string())?;
        let mut images = BTreeSet::new();
        for t in &tilings {
            let p = tiling_to_paths(&s, t).map_err(|e| e.to_string())?;
            ensure(paths_to_tiling(&s, &p).as_ref() == Ok(t), || {
                format!("order {m}: edge round trip fails")
            })?;
            let f = tiling_to_family(t).map_err(|e| e.to_string())?;
            ensure(family_to_tiling(&f).as_ref() == Ok(t), || {
                format!("order {m}: family round trip fails")
            })?;
            images.insert(f);
        }
        ensure(images == fams, || {
            format!("order {m}: families of tilings differ from disjoint families")
        })?;
        for f in &fams {
            let t = family_to_tiling(f).map_err(|e| e.to_string())?;
            ensure(tiling_to_family(&t).as_ref() == Ok(f), || {
                format!("order {m}: family round trip fails")
            })?;
        }
    }
    Ok("orders 1, 2, 3 give 2, 8, 64 tilings".into())
}

/// A rectangle or an L-shape of at most 24 cells, at a random offset so that
/// both colorings of the corner occur.
pub fn random_region(rng: &mut SplitMix64) -> Region {
    let mut pick = |hi: i64| (rng.next_u64() % hi as u64) as i64;
    loop {
        let (rows, cols) = (1 + pick(6), 1 + pick(6));
        if rows * cols > 24 {
            continue;
        }
        let (di, dj) = (pick(5) - 2, pick(5) - 2);
        // cut a rows' x cols' notch off one corner for an L
        let (cut_r, cut_c) = if pick(2) == 0 || rows < 2 || cols < 2 {
            (0, 0)
        } else {
            (1 + pick(rows - 1), 1 + pick(cols - 1))
        };
        let corner = pick(4);
        let cells = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let ii = if corner & 1 == 0 { i } else { rows - 1 - i };
                let jj = if corner & 2 == 0 { j } else { cols - 1 - j };
                !(ii < cut_r && jj < cut_c)
            });
        return Region::new(cells.map(|(i, j)| Cell(i + di, j + dj)));
    }
}

/// Random tiling by randomized backtracking; `None` when the region has none.
pub fn random_tiling(s: &Region, rng: &mut SplitMix64) -> Option<DominoTiling> {
    fn go(free: &mut BTreeSet<Cell>, placed: &mut Vec<Domino>, rng: &mut SplitMix64) -> bool {
        let Some(&c) = free.iter().next() else {
            return true;
        };
        free.remove(&c);
        let mut options = [Cell(c.0, c.1 + 1), Cell(c.0 + 1, c.1)];
        if rng.next_u64() & 1 == 1 {
            options.swap(0, 1);
        }
        for o in options {
            if free.remove(&o) {
                placed.push(Domino::new(c, o).unwrap());
                if go(free, placed, rng) {
                    return true;
                }
                placed.pop();
                free.insert(o);
            }
        }
        free.insert(c);
        false
    }
    let mut placed = Vec::new();
    go(&mut s.cells().clone(), &mut placed, rng).then(|| DominoTiling::new(placed).unwrap())
}

pub fn balance_holds(s: &Region) -> bool {
    let e = region_edges(s);
    s.black_count() as i64 - s.white_count() as i64 == e.entries.len() as i64 - e.exits.len() as i64
}

pub fn random_region_round_trips(count: usize, seed: u64) -> Check {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let (mut done, mut untileable) = (0, 0);
    while done < count {
        let s = random_region(&mut rng);
        ensure(balance_holds(&s), || format!("balance fails on\n{s}"))?;
        let Some(t) = random_tiling(&s, &mut rng) else {
            untileable += 1;
            continue;
        };
        let p = tiling_to_paths(&s, &t).map_err(|e| e.to_string())?;
        validate_edge_family(&s, &p).map_err(|e| format!("{e} on\n{s}"))?;
        ensure(p.paths.len() == region_edges(&s).entries.len(), || {
            "wrong path count".into()
        })?;
        let back = paths_to_tiling(&s, &p).map_err(|e| format!("{e} on\n{t}"))?;
        ensure(back == t, || format!("round trip changes tiling\n{t}"))?;
        done += 1;
    }
    Ok(format!(
        "{done} random regions round-tripped ({untileable} untileable skipped)"
    ))
}

/// Midpoint check written against explicit paths: every horizontal or
/// vertical step of `f` must meet a perpendicular step of the reflected dual
/// at both midpoints, and the two sets of such steps must pair up exactly.
pub fn midpoints_match(f: &PathFamily, dual: &PathFamily) -> Result<usize, String> {
    let n = f.n() as i64;
    let doubled_midpoints = |g: &PathFamily, reflect: bool| -> Result<BTreeMap<(i64, i64), Step>, String> {
        let mut out = BTreeMap::new();
        for p in explicit_paths(g).map_err(|e| e.to_string())? {
            let pts = p.points();
            for (w, s) in pts.windows(2).zip(&p.steps) {
                if *s == Step::Diagonal {
                    continue;
                }
                let mut mid = (w[0].level + w[1].level, w[0].column + w[1].column);
                if reflect {
                    // (n - 1/2, n - 1/2) - p, doubled
                    mid = (2 * n - 1 - mid.0, 2 * n - 1 - mid.1);
                }
                out.insert(mid, *s);
            }
        }
        Ok(out)
    };
    let mine = doubled_midpoints(f, false)?;
    let theirs = doubled_midpoints(dual, true)?;
    ensure(mine.len() == theirs.len(), || {
        format!("{} steps against {} dual steps", mine.len(), theirs.len())
    })?;
    for (mid, s) in &mine {
        let other = theirs
            .get(mid)
            .ok_or_else(|| format!("step with doubled midpoint {mid:?} is not crossed"))?;
        ensure(s != other, || format!("parallel steps meet at {mid:?}"))?;
    }
    Ok(mine.len())
}

pub fn duality(max_n: usize) -> Check {
    let mut checked = 0;
    for n in 1..=max_n {
        for f in enumerate_disjoint(n, 5).map_err(|e| e.to_string())? {
            let d = dual_family(&f).map_err(|e| e.to_string())?;
            ensure(is_disjoint(&d), || format!("dual of\n{f}is not disjoint"))?;
            ensure(dual_family(&d).as_ref() == Ok(&f), || {
                format!("dual is not an involution on\n{f}")
            })?;
            midpoints_match(&f, &d).map_err(|e| format!("{e} for\n{f}"))?;
            ensure(crossing_report(&f, &d).holds(), || {
                format!("crossing_report disagrees on\n{f}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} families"))
}

pub fn large_sample(n: usize, seed: u64) -> Check {
    let (_, f) = sample_family(n, seed);
    ensure(is_valid(&f), || "sampled family is invalid".into())?;
    ensure(is_disjoint(&f), || "sampled family intersects".into())?;
    let svg = render_paths(&f);
    ensure(svg.matches("<path ").count() == n, || "SVG path count".into())?;
    Ok(format!("n={n}: {} bytes of SVG", svg.len()))
}
