use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::RootedLayout;
use crate::tree::Tree;

/// Per-level surplus/excess counts read off a layout. For level j ≥ 1 the
/// vertices are scanned left to right in pairs:
/// * `s` counts consecutive pairs sharing a parent (distance 2);
/// * `ex_prime` counts consecutive pairs with different parents;
/// * `ex` additionally charges every level-(j−1) vertex sitting strictly
///   between the two parents, so it measures how far apart the parent blocks
///   sit;
/// * `ex_first_gap` is the closed form: the number of level-(j−1) vertices
///   strictly to the right of the parent of the first gap's left element.
///   Because the rightmost vertex of a level always keeps descendants, this
///   agrees with `ex` on every layout; both are kept as a cross-check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStat {
    pub level: usize,
    pub n: usize,
    pub s: usize,
    pub ex: usize,
    pub ex_prime: usize,
    pub ex_first_gap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStats {
    pub per_level: Vec<LevelStat>,
    /// total surplus over all levels
    pub s: usize,
    pub ex: usize,
    pub ex_prime: usize,
    /// surplus summed from level 3 on, the part not forced by the spine head
    pub s_from_level3: usize,
}

pub fn level_metrics(lay: &RootedLayout) -> LevelStats {
    let mut per_level = Vec::with_capacity(lay.levels.len());
    for (j, level) in lay.levels.iter().enumerate() {
        let mut stat = LevelStat {
            level: j,
            n: level.len(),
            s: 0,
            ex: 0,
            ex_prime: 0,
            ex_first_gap: 0,
        };
        if j > 0 {
            let ppos = |v: usize| lay.pos[lay.parent[v].unwrap()].1;
            let mut first_gap: Option<usize> = None;
            for w in level.windows(2) {
                let (a, b) = (w[0], w[1]);
                if lay.parent[a] == lay.parent[b] {
                    stat.s += 1;
                } else {
                    stat.ex_prime += 1;
                    stat.ex += 1 + ppos(b) - ppos(a) - 1;
                    if first_gap.is_none() {
                        first_gap = Some(ppos(a));
                    }
                }
            }
            if let Some(p) = first_gap {
                // everything on the previous level past the first gap's
                // left parent
                stat.ex_first_gap = lay.levels[j - 1].len() - 1 - p;
            }
        }
        per_level.push(stat);
    }
    let s = per_level.iter().map(|l| l.s).sum();
    let ex = per_level.iter().map(|l| l.ex).sum();
    let ex_prime = per_level.iter().map(|l| l.ex_prime).sum();
    let s_from_level3 = per_level.iter().skip(3).map(|l| l.s).sum();
    LevelStats {
        per_level,
        s,
        ex,
        ex_prime,
        s_from_level3,
    }
}

/// Structural identities every layout must satisfy, plus the two extra
/// inequalities that hold whenever the tree is a lobster.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    /// s_j + ex'_j + 1 = n_j on every level j ≥ 1
    pub per_level_identity: bool,
    /// s (from level 3) + ex' + diameter = m. The full-range surplus sum
    /// satisfies this unconditionally by telescoping, so a false here means
    /// exactly that surplus appeared below level 3.
    pub level_sum: bool,
    /// surplus on levels 1 and 2, the amount the aggregate range omits
    pub surplus_head: usize,
    /// the walk-based excess agrees with the first-gap form on every level
    pub gap_forms_agree: bool,
    /// s (from level 3) ≥ ex' (lobsters)
    pub surplus_dominates: bool,
    /// ex = ex' (lobsters: used parents form a suffix of each level)
    pub ex_equals_ex_prime: bool,
}

pub fn check_identities(lay: &RootedLayout) -> IdentityReport {
    let stats = level_metrics(lay);
    let per_level_identity = stats
        .per_level
        .iter()
        .skip(1)
        .all(|l| l.s + l.ex_prime + 1 == l.n);
    debug_assert_eq!(stats.s + stats.ex_prime + lay.diameter(), lay.tree.m());
    let level_sum = stats.s_from_level3 + stats.ex_prime + lay.diameter() == lay.tree.m();
    let gap_forms_agree = stats.per_level.iter().all(|l| l.ex == l.ex_first_gap);
    IdentityReport {
        per_level_identity,
        level_sum,
        surplus_head: stats.s - stats.s_from_level3,
        gap_forms_agree,
        surplus_dominates: stats.s_from_level3 >= stats.ex_prime,
        ex_equals_ex_prime: stats.ex == stats.ex_prime,
    }
}

/// Counts for the edges grouped around one spine vertex of a lobster layout.
/// Group i collects the edges whose farther endpoint lies within distance 1
/// of the spine at level i, together with the level-(i+1) edges hanging at
/// distance 2. Every edge of the tree lands in exactly one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLevelStat {
    pub i: usize,
    /// edges in the group
    pub m: usize,
    /// surplus within the group
    pub s: usize,
    /// excess charged to level i+1 — equals the number of level-i branch
    /// vertices that still have children
    pub ex_next: usize,
    /// branch vertices counted by `ex_next`
    pub q: usize,
    /// average degree of those branch vertices, if any
    pub d_avg: Option<Ratio<i64>>,
    /// off-spine vertices at distance 1 on level i
    pub dist1: usize,
    /// level-(i+1) vertices at distance 2
    pub dist2_next: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLevelStats {
    pub per_pair: Vec<EdgeLevelStat>,
    pub spine: Vec<usize>,
}

/// Group the edges of a lobster layout level pair by level pair along the
/// spine. Fails with [`Error::NotALobster`] if some vertex sits farther than
/// two steps from the layout spine.
pub fn edge_level_stats(lay: &RootedLayout) -> Result<EdgeLevelStats> {
    let spine = lay.spine();
    let mut on_spine = vec![false; lay.tree.n()];
    for &v in &spine {
        on_spine[v] = true;
    }
    for v in 0..lay.tree.n() {
        if on_spine[v] {
            continue;
        }
        let p = lay.parent[v].expect("only the root lacks a parent and it is on the spine");
        if !on_spine[p] {
            let gp = lay.parent[p].expect("parent of an off-spine vertex exists");
            if !on_spine[gp] {
                return Err(Error::NotALobster);
            }
        }
    }

    let d = lay.diameter();
    let mut per_pair = Vec::with_capacity(d);
    for i in 1..=d {
        let x_prev = spine[i - 1];
        let x_i = spine[i];
        let c_prev = lay.children[x_prev].len();
        let branch: Vec<usize> = lay.children[x_prev]
            .iter()
            .copied()
            .filter(|&v| v != x_i)
            .collect();
        let mut q = 0usize;
        let mut deg_sum = 0i64;
        let mut dist2_next = 0usize;
        let mut s_branch = 0usize;
        for &bv in &branch {
            let ch = lay.children[bv].len();
            dist2_next += ch;
            if ch > 0 {
                q += 1;
                deg_sum += lay.tree.degree(bv) as i64;
                s_branch += ch - 1;
            }
        }
        let m_pair = c_prev + dist2_next;
        let s_pair = (c_prev - 1) + s_branch;
        per_pair.push(EdgeLevelStat {
            i,
            m: m_pair,
            s: s_pair,
            ex_next: q,
            q,
            d_avg: if q > 0 {
                Some(Ratio::new(deg_sum, q as i64))
            } else {
                None
            },
            dist1: branch.len(),
            dist2_next,
        });
    }
    Ok(EdgeLevelStats { per_pair, spine })
}

/// Size of a maximum matching together with one witness. Leaves are matched
/// greedily bottom-up, which is optimal on trees. `nu` is the number of
/// covered vertices, i.e. twice the matching size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingNumber {
    pub nu: usize,
    pub witness: Vec<(usize, usize)>,
}

pub fn matching_number(t: &Tree) -> MatchingNumber {
    let (_, pred) = t.bfs(0);
    // children before parents: sort by decreasing BFS distance
    let dist = t.bfs_dist(0);
    let mut order: Vec<usize> = (0..t.n()).collect();
    order.sort_by(|&a, &b| dist[b].cmp(&dist[a]).then(a.cmp(&b)));
    let mut matched = vec![false; t.n()];
    let mut witness = Vec::new();
    for &v in &order {
        if v == 0 || matched[v] {
            continue;
        }
        let p = pred[v];
        if !matched[p] {
            matched[v] = true;
            matched[p] = true;
            witness.push((v.min(p), v.max(p)));
        }
    }
    witness.sort_unstable();
    MatchingNumber {
        nu: 2 * witness.len(),
        witness,
    }
}
