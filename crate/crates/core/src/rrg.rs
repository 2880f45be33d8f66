use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::{verify, BoundCheck, Labeling, Method, VerificationReport};
use crate::layout::{layout, layout_with_root, Orientation, RootedLayout};
use crate::metrics::level_metrics;
use crate::tree::Tree;

/// Label interval assigned to one level. The levels of one parity class tile
/// `[0, b)` from the bottom up (deepest level first), the other class tiles
/// `[b, m + ex]` from the top down (level d−1 topmost). Each level's block
/// is `n_j + ex_j` wide but only `n_j` labels are used; the rest are skipped
/// at the far end of the block (top of a low block, bottom of a high block).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RrgLevelPlan {
    pub level: usize,
    pub block_start: u64,
    pub block_end: u64,
    pub used_start: u64,
    pub used_end: u64,
    /// labels are handed out right-to-left on low levels (descending across
    /// the level read left to right) and left-to-right on high levels
    pub descending: bool,
    pub skipped: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RrgPlan {
    /// first label of the top parity class
    pub b: u64,
    /// plans indexed in level order 0..=d
    pub levels: Vec<RrgLevelPlan>,
}

impl RrgPlan {
    pub fn max_used(&self) -> u64 {
        self.levels.iter().map(|l| l.used_end).max().unwrap()
    }
}

fn plan_with_padding(lay: &RootedLayout, extra: &[u64]) -> RrgPlan {
    let d = lay.diameter();
    let stats = level_metrics(lay);
    let width =
        |j: usize| -> u64 { lay.levels[j].len() as u64 + stats.per_level[j].ex as u64 + extra[j] };
    let mut plans: Vec<Option<RrgLevelPlan>> = vec![None; d + 1];

    // low parity class: levels d, d−2, …, stacked upward from 0
    let mut cursor = 0u64;
    let mut j = d as isize;
    while j >= 0 {
        let level = j as usize;
        let n_j = lay.levels[level].len() as u64;
        let w = width(level);
        plans[level] = Some(RrgLevelPlan {
            level,
            block_start: cursor,
            block_end: cursor + w - 1,
            used_start: cursor,
            used_end: cursor + n_j - 1,
            descending: true,
            skipped: w - n_j,
        });
        cursor += w;
        j -= 2;
    }
    let b = cursor;

    // high parity class: levels d−1, d−3, …, stacked downward from the top,
    // level d−1 topmost
    let mut highs = Vec::new();
    let mut j = d as isize - 1;
    while j >= 0 {
        highs.push(j as usize);
        j -= 2;
    }
    let total_high: u64 = highs.iter().map(|&l| width(l)).sum();
    let mut top = b + total_high;
    for &level in &highs {
        let n_j = lay.levels[level].len() as u64;
        let w = width(level);
        plans[level] = Some(RrgLevelPlan {
            level,
            block_start: top - w,
            block_end: top - 1,
            used_start: top - n_j,
            used_end: top - 1,
            descending: false,
            skipped: w - n_j,
        });
        top -= w;
    }

    RrgPlan {
        b,
        levels: plans.into_iter().map(Option::unwrap).collect(),
    }
}

/// The label intervals the construction would use on this layout, without
/// any collision padding.
pub fn rrg_plan(lay: &RootedLayout) -> RrgPlan {
    plan_with_padding(lay, &vec![0; lay.levels.len()])
}

fn apply_plan(lay: &RootedLayout, plan: &RrgPlan) -> Labeling {
    let mut labels = vec![0u64; lay.tree.n()];
    for lp in &plan.levels {
        for (k, &v) in lay.levels[lp.level].iter().enumerate() {
            labels[v] = if lp.descending {
                lp.used_end - k as u64
            } else {
                lp.used_start + k as u64
            };
        }
    }
    Labeling::new(labels, Method::Rrg)
}

fn first_collision(lay: &RootedLayout, f: &Labeling) -> Option<(usize, u64)> {
    let mut seen = std::collections::BTreeSet::new();
    for (j, level) in lay.levels.iter().enumerate().skip(1) {
        for &v in level {
            let w = f.weight(v, lay.parent[v].unwrap());
            if !seen.insert(w) {
                return Some((j, w));
            }
        }
    }
    None
}

/// Range-relaxed construction on a prepared layout: labels are injective,
/// all m edge weights are distinct, and the maximum label is m + ex for the
/// excess of this layout. If the interval plan ever produced a repeated
/// weight the offending level's block would be widened, at the cost of a
/// larger maximum label (capped at 2m before giving up).
pub fn rrg_label_on(lay: &RootedLayout) -> Result<(Labeling, RrgPlan)> {
    let m = lay.tree.m() as u64;
    let mut extra = vec![0u64; lay.levels.len()];
    loop {
        let plan = plan_with_padding(lay, &extra);
        let f = apply_plan(lay, &plan);
        match first_collision(lay, &f) {
            None => return Ok((f, plan)),
            Some((level, w)) => {
                if plan.max_used() >= 2 * m {
                    return Err(Error::WeightCollision(w));
                }
                extra[level] += 1;
            }
        }
    }
}

/// Range-relaxed labeling on the canonical layout of the given orientation.
pub fn rrg_label_oriented(t: &Tree, orientation: Orientation) -> Result<(Labeling, RrgPlan)> {
    rrg_label_on(&layout(t, orientation))
}

/// Range-relaxed labeling on the canonical left layout.
pub fn rrg_label(t: &Tree) -> Result<(Labeling, RrgPlan)> {
    rrg_label_oriented(t, Orientation::Left)
}

/// Range-relaxed labeling rooted at a chosen diametral leaf.
pub fn rrg_label_rooted(t: &Tree, root: usize) -> Result<(Labeling, RrgPlan)> {
    rrg_label_on(&layout_with_root(t, root, Orientation::Left)?)
}

/// Upper bound on the maximum label needed for any lobster with m edges and
/// diameter d: ⌊(3m − d) / 2⌋.
pub fn rrg_bounds(m: i64, d: i64) -> i64 {
    let r = Ratio::new(3 * m - d, 2);
    r.floor().to_integer()
}

/// Bound checks the construction promises, ready to merge into a report.
pub fn rrg_bound_checks(t: &Tree, report: &VerificationReport) -> Vec<BoundCheck> {
    let lay = layout(t, Orientation::Left);
    let stats = level_metrics(&lay);
    let m = t.m() as i64;
    let mut checks = vec![
        BoundCheck::eq(
            "distinct-weights-cover-m",
            Ratio::from_integer(report.epsilon as i64),
            Ratio::from_integer(m),
        ),
        BoundCheck::le(
            "max-label-within-excess",
            Ratio::from_integer(report.max_label as i64),
            Ratio::from_integer(m + stats.ex as i64),
        ),
    ];
    if t.distance_class() <= 2 {
        checks.push(BoundCheck::le(
            "lobster-max-label",
            Ratio::from_integer(report.max_label as i64),
            Ratio::from_integer(rrg_bounds(m, lay.diameter() as i64)),
        ));
    }
    checks
}

/// Convenience: construct, verify, and attach the promised bound checks.
pub fn rrg_label_checked(t: &Tree) -> Result<(Labeling, RrgPlan, VerificationReport)> {
    let (f, plan) = rrg_label(t)?;
    let mut report = verify(t, &f)?;
    report.bound_checks = rrg_bound_checks(t, &report);
    Ok((f, plan, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p2_and_p4() {
        let p2 = Tree::path(2).unwrap();
        let (f, _) = rrg_label(&p2).unwrap();
        assert_eq!(f.labels, vec![1, 0]);
        let p4 = Tree::path(4).unwrap();
        let (f, plan) = rrg_label(&p4).unwrap();
        assert_eq!(f.labels, vec![2, 1, 3, 0]);
        assert!(verify(&p4, &f).unwrap().graceful);
        assert_eq!(plan.max_used(), 3);
    }

    #[test]
    fn blocks_tile_the_label_range() {
        let t = Tree::new(7, vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]).unwrap();
        let lay = layout(&t, Orientation::Left);
        let plan = rrg_plan(&lay);
        let mut intervals: Vec<(u64, u64)> = plan
            .levels
            .iter()
            .map(|l| (l.block_start, l.block_end))
            .collect();
        intervals.sort_unstable();
        assert_eq!(intervals[0].0, 0);
        for w in intervals.windows(2) {
            assert_eq!(w[0].1 + 1, w[1].0);
        }
        let stats = level_metrics(&lay);
        assert_eq!(intervals.last().unwrap().1, (t.m() + stats.ex) as u64);
    }

    #[test]
    fn bound_formula() {
        assert_eq!(rrg_bounds(20, 6), 27);
        assert_eq!(rrg_bounds(1, 1), 1);
    }

    #[test]
    fn lobster_spends_one_extra_label_per_excess_unit() {
        // spine 0-1-2-3-4, branch 5 on 2 carrying leaf 6: ex = 1
        let t = Tree::new(7, vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]).unwrap();
        let (f, plan) = rrg_label(&t).unwrap();
        assert_eq!(f.labels, vec![4, 5, 3, 6, 1, 7, 0]);
        let r = verify(&t, &f).unwrap();
        assert!(r.injective);
        assert_eq!(r.epsilon, t.m());
        assert_eq!(r.max_label, 7);
        assert_eq!(plan.max_used(), (t.m() + 1) as u64);
        assert!(!r.graceful); // one label above m is spent
    }

    #[test]
    fn caterpillars_come_out_graceful() {
        // spine a-b-c with two leaves x, y on b
        let t = Tree::new(5, vec![(0, 1), (1, 2), (1, 3), (1, 4)]).unwrap();
        let (f, _) = rrg_label(&t).unwrap();
        assert!(verify(&t, &f).unwrap().graceful);
    }
}
