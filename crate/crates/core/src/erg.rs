use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::{
    ceil_ratio, ratio_str, verify, BoundCheck, Labeling, Method, VerificationReport,
};
use crate::layout::{layout, Orientation, RootedLayout};
use crate::metrics::edge_level_stats;
use crate::tree::Tree;

/// Lower bound on the number of distinct weights the edge-relaxed
/// construction achieves on a lobster with m edges and diameter d:
/// max{(3m − d + 6)/4, (5m + d + 3)/8}.
pub fn alpha_bound_lobster(m: i64, d: i64) -> Ratio<i64> {
    let a = Ratio::new(3 * m - d + 6, 4);
    let b = Ratio::new(5 * m + d + 3, 8);
    a.max(b)
}

/// Weight bookkeeping for one spine-level group of the edge-relaxed
/// labeling, together with every inequality that group must satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErgLevelDiag {
    pub i: usize,
    /// edges in group (i, i+1)
    pub m_pair: usize,
    pub s_pair: usize,
    pub ex_next: usize,
    /// average tree degree of the branch vertices charged to ex_next
    pub d_avg: Option<String>,
    /// level-(i+1) edge weights already seen earlier in the scan
    pub theta_next: usize,
    /// distinct weights on the group's edges
    pub alpha_pair: usize,
    /// s(i,i+1) ≥ (d_i − 1) · ex_{i+1}
    pub surplus_vs_excess: bool,
    /// d_i · ex_{i+1} ≤ m(i,i+1) − 1
    pub excess_capacity: bool,
    /// θ_{i+1} ≤ ⌈((d_i − 1)/d_i) · ex_{i+1}⌉
    pub theta_cap: bool,
    /// α(i,i+1) ≥ m(i,i+1) − θ_{i+1}
    pub alpha_vs_theta: bool,
    /// α(i,i+1) ≥ m(i,i+1) − ⌈(m(i,i+1) − 1)/4⌉
    pub alpha_quarter: bool,
    /// for odd m_pair: α ≥ (3·m_pair ± 1)/4 depending on m_pair mod 4
    pub alpha_mod_four: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErgDiagnostics {
    pub per_pair: Vec<ErgLevelDiag>,
    /// every repeated weight occurs exactly twice, on consecutive edge levels
    pub repeats_are_tame: bool,
    pub theta_total: usize,
    pub epsilon: usize,
    /// θ accounts exactly for the weights lost to repetition: θ = m − ε
    pub theta_consistent: bool,
    /// Σ α(i,i+1) over the groups; within-group distinctness can overcount ε
    pub alpha_sum: usize,
    pub bound: String,
    pub bound_holds: bool,
}

/// Edge-relaxed construction for lobsters, on the canonical right layout.
/// One parity class of levels (the class of the deepest level) takes the low
/// labels — deepest level first, each level right to left — and the other
/// class takes the high labels in ascending level order, left to right. The
/// result is a bijection onto 0..=m that splits into two contiguous label
/// blocks across the bipartition; weights may repeat, and the diagnostics
/// account for every repetition.
pub fn erg_label(t: &Tree) -> Result<(Labeling, ErgDiagnostics)> {
    if t.distance_class() > 2 {
        return Err(Error::NotALobster);
    }
    let lay = layout(t, Orientation::Right);
    let d = lay.diameter();
    let mut labels = vec![0u64; t.n()];
    let mut next = 0u64;
    // low class: levels ≡ d (mod 2), deepest first, right to left
    let mut j = d as isize;
    while j >= 0 {
        for &v in lay.levels[j as usize].iter().rev() {
            labels[v] = next;
            next += 1;
        }
        j -= 2;
    }
    // high class: remaining levels, ascending, left to right
    let first_high = if d == 0 { 1 } else { (d + 1) % 2 };
    let mut j = first_high;
    while j < d {
        for &v in &lay.levels[j] {
            labels[v] = next;
            next += 1;
        }
        j += 2;
    }
    let f = Labeling::new(labels, Method::Erg);
    let diag = erg_diagnostics(&lay, &f)?;
    Ok((f, diag))
}

/// Audit an edge-relaxed labeling group by group along the spine.
pub fn erg_diagnostics(lay: &RootedLayout, f: &Labeling) -> Result<ErgDiagnostics> {
    let t = &lay.tree;
    let stats = edge_level_stats(lay)?;
    let report = verify(t, f)?;
    let d = lay.diameter();

    // distance of each edge from the spine is the distance of its deeper
    // endpoint; an edge into level j at spine distance ≤ 1 belongs to group
    // j, at distance 2 to group j−1
    let spine = &stats.spine;
    let mut on_spine = vec![false; t.n()];
    for &v in spine {
        on_spine[v] = true;
    }
    let mut group_weights: Vec<Vec<u64>> = vec![Vec::new(); d + 1];
    for (j, level) in lay.levels.iter().enumerate().skip(1) {
        for &v in level {
            let p = lay.parent[v].unwrap();
            let w = f.weight(v, p);
            let dist = if on_spine[v] {
                0
            } else if on_spine[p] {
                1
            } else {
                2
            };
            let group = if dist == 2 { j - 1 } else { j };
            group_weights[group].push(w);
        }
    }

    let mut per_pair = Vec::with_capacity(d);
    for pair in &stats.per_pair {
        let i = pair.i;
        let weights = &group_weights[i];
        debug_assert_eq!(weights.len(), pair.m);
        let alpha_pair = weights
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        let theta_next = if i + 1 < report.theta_per_level.len() {
            report.theta_per_level[i + 1]
        } else {
            0
        };
        let m_pair = pair.m as i64;
        let ex_next = pair.ex_next as i64;
        let s_pair = pair.s as i64;
        let (surplus_vs_excess, excess_capacity, theta_cap) = match pair.d_avg {
            Some(da) => (
                Ratio::from_integer(s_pair) >= (da - 1) * ex_next,
                da * ex_next <= Ratio::from_integer(m_pair - 1),
                theta_next as i64 <= ceil_ratio((da - 1) / da * ex_next),
            ),
            None => (true, true, theta_next == 0),
        };
        let alpha_vs_theta = alpha_pair >= pair.m - theta_next;
        let quarter = ceil_ratio(Ratio::new(m_pair - 1, 4));
        let alpha_quarter = alpha_pair as i64 >= m_pair - quarter;
        let alpha_mod_four = match m_pair % 4 {
            1 => Some(alpha_pair as i64 * 4 >= 3 * m_pair + 1),
            3 => Some(alpha_pair as i64 * 4 >= 3 * m_pair - 1),
            _ => None,
        };
        per_pair.push(ErgLevelDiag {
            i,
            m_pair: pair.m,
            s_pair: pair.s,
            ex_next: pair.ex_next,
            d_avg: pair.d_avg.map(ratio_str),
            theta_next,
            alpha_pair,
            surplus_vs_excess,
            excess_capacity,
            theta_cap,
            alpha_vs_theta,
            alpha_quarter,
            alpha_mod_four,
        });
    }

    let repeats_are_tame = report
        .repeated_weights
        .iter()
        .all(|r| r.multiplicity == 2 && r.levels.len() == 2 && r.levels[1] == r.levels[0] + 1);
    let theta_total: usize = report.theta_per_level.iter().sum();
    let epsilon = report.epsilon;
    let alpha_sum = per_pair.iter().map(|p| p.alpha_pair).sum();
    let bound = alpha_bound_lobster(t.m() as i64, d as i64);
    let bound_holds = epsilon as i64 >= ceil_ratio(bound);
    Ok(ErgDiagnostics {
        per_pair,
        repeats_are_tame,
        theta_total,
        epsilon,
        theta_consistent: theta_total == t.m() - epsilon,
        alpha_sum,
        bound: ratio_str(bound),
        bound_holds,
    })
}

/// Bound checks the construction promises, ready to merge into a report.
pub fn erg_bound_checks(t: &Tree, report: &VerificationReport) -> Vec<BoundCheck> {
    let m = t.m() as i64;
    let d = t.diameter() as i64;
    let bound = alpha_bound_lobster(m, d);
    vec![
        BoundCheck::eq(
            "labels-form-bijection",
            Ratio::from_integer(report.max_label as i64),
            Ratio::from_integer(m),
        ),
        BoundCheck::ge(
            "bipartite-cutoff-exists",
            Ratio::from_integer(report.bipartite_cutoff.is_some() as i64),
            Ratio::from_integer(1),
        ),
        BoundCheck::ge(
            "distinct-weights-vs-alpha-bound",
            Ratio::from_integer(report.epsilon as i64),
            Ratio::from_integer(ceil_ratio(bound)),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_is_graceful_and_bipartite() {
        let t = Tree::path(4).unwrap();
        let (f, diag) = erg_label(&t).unwrap();
        assert_eq!(f.labels, vec![2, 1, 3, 0]);
        let r = verify(&t, &f).unwrap();
        assert!(r.graceful);
        assert_eq!(r.bipartite_cutoff, Some(1));
        assert!(diag.bound_holds);
        assert!(diag.repeats_are_tame);
    }

    #[test]
    fn star_takes_low_labels_on_leaves() {
        let t = Tree::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let (f, diag) = erg_label(&t).unwrap();
        assert_eq!(f.labels, vec![3, 2, 1, 0]);
        assert!(verify(&t, &f).unwrap().graceful);
        assert!(diag.theta_consistent);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(alpha_bound_lobster(20, 6), Ratio::from_integer(15));
        assert_eq!(alpha_bound_lobster(20, 17), Ratio::from_integer(15));
        assert_eq!(alpha_bound_lobster(3, 3), Ratio::from_integer(3));
    }

    #[test]
    fn lobster_diagnostics_are_internally_consistent() {
        let t = Tree::new(
            10,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (2, 5),
                (5, 6),
                (3, 7),
                (7, 8),
                (7, 9),
            ],
        )
        .unwrap();
        let (f, diag) = erg_label(&t).unwrap();
        let r = verify(&t, &f).unwrap();
        assert!(r.bipartite_cutoff.is_some());
        assert_eq!(r.max_label as usize, t.m());
        assert!(diag.theta_consistent);
        assert!(diag.repeats_are_tame);
        let m_sum: usize = diag.per_pair.iter().map(|p| p.m_pair).sum();
        assert_eq!(m_sum, t.m());
        for p in &diag.per_pair {
            assert_eq!(p.s_pair + p.ex_next + 1, p.m_pair);
            assert!(p.surplus_vs_excess);
            assert!(p.excess_capacity);
            assert!(p.theta_cap);
            assert!(p.alpha_vs_theta);
            assert!(p.alpha_quarter);
            assert!(p.alpha_mod_four.unwrap_or(true));
        }
        assert!(diag.bound_holds);
    }

    #[test]
    fn rejects_non_lobsters() {
        let t = Tree::new(
            10,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (0, 4),
                (4, 5),
                (5, 6),
                (0, 7),
                (7, 8),
                (8, 9),
            ],
        )
        .unwrap();
        assert!(matches!(erg_label(&t), Err(Error::NotALobster)));
    }
}
