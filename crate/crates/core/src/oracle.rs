//! Independent ground truth for the constructions: exhaustive tree
//! enumeration, brute-force optimal labelings, and reproducible random
//! families. Everything here is deliberately simple and slow.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::amalgam::alpha_search;
use crate::error::{Error, Result};
use crate::labeling::{verify, Labeling, Method};
use crate::shell::{contree, Matching};
use crate::tree::{parse_edge_list, Tree};

/// All unlabeled trees on exactly `n` vertices, one representative per
/// isomorphism class, built by leaf extension with canonical-code
/// deduplication.
pub fn enumerate_trees(n: usize) -> Result<Vec<Tree>> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut current = vec![Tree::new(1, vec![])?];
    for size in 2..=n {
        let mut next: BTreeMap<String, Tree> = BTreeMap::new();
        for t in &current {
            for v in 0..t.n() {
                let mut edges = t.edges().to_vec();
                edges.push((v, size - 1));
                let ext = Tree::new(size, edges)?;
                next.entry(ext.canonical_code()).or_insert(ext);
            }
        }
        current = next.into_values().collect();
    }
    Ok(current)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    Caterpillar,
    Lobster,
    KDistant,
}

/// Reproducible random tree: same spec, same tree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    /// number of vertices on the spine (the path that stays diametral)
    pub spine: usize,
    /// branch vertices allowed per eligible spine vertex
    pub max_branches: usize,
    /// leaves allowed per branch vertex (or per spine vertex for
    /// caterpillars)
    pub max_leaves: usize,
    /// maximum chain length hung off the spine (k-distant family only)
    pub k: usize,
    pub seed: u64,
}

/// Generate the tree a spec describes. Attachments keep their distance
/// from both spine ends large enough that the given spine remains a
/// diametral path, so the resulting diameter is always `spine − 1`.
pub fn generate(spec: &GenSpec) -> Result<Tree> {
    if spec.spine == 0 {
        return Err(Error::EmptyInput);
    }
    let s = spec.spine;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges: Vec<(usize, usize)> = (1..s).map(|v| (v - 1, v)).collect();
    let mut next = s;
    match spec.family {
        Family::Path => {}
        Family::Caterpillar => {
            for p in 1..s.saturating_sub(1) {
                for _ in 0..rng.gen_range(0..=spec.max_leaves) {
                    edges.push((p, next));
                    next += 1;
                }
            }
        }
        Family::Lobster => {
            for p in 2..s.saturating_sub(2) {
                for _ in 0..rng.gen_range(0..=spec.max_branches) {
                    let bv = next;
                    edges.push((p, bv));
                    next += 1;
                    for _ in 0..rng.gen_range(0..=spec.max_leaves) {
                        edges.push((bv, next));
                        next += 1;
                    }
                }
            }
        }
        Family::KDistant => {
            if spec.k == 0 {
                return generate(&GenSpec {
                    family: Family::Path,
                    ..spec.clone()
                });
            }
            if s < 2 * spec.k + 1 {
                return Err(Error::InvalidSpec(format!(
                    "a {}-distant spine needs at least {} vertices",
                    spec.k,
                    2 * spec.k + 1
                )));
            }
            for p in spec.k..=s - 1 - spec.k {
                for _ in 0..rng.gen_range(0..=spec.max_branches) {
                    let len = rng.gen_range(1..=spec.k);
                    let mut prev = p;
                    for _ in 0..len {
                        edges.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                }
            }
        }
    }
    Tree::new(next.max(s), edges)
}

/// The standing test ensemble: lobsters with spines of 7 to 14 vertices,
/// sparse branching, seeds 0..count.
pub fn ensemble(count: usize) -> Vec<Tree> {
    (0..count)
        .map(|i| {
            generate(&GenSpec {
                family: Family::Lobster,
                spine: 7 + (i % 8),
                max_branches: 1,
                max_leaves: 2,
                k: 2,
                seed: i as u64,
            })
            .expect("ensemble specs are always valid")
        })
        .collect()
}

/// Search order for the brute-force labelers: breadth-first so each new
/// vertex closes exactly one edge, plus the back-edge list per position.
fn closure_order(t: &Tree) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = t.n();
    let dist = t.bfs_dist(0);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (dist[v], v));
    let mut rank = vec![0usize; n];
    for (k, &v) in order.iter().enumerate() {
        rank[v] = k;
    }
    let back = order
        .iter()
        .map(|&v| {
            t.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| rank[w] < rank[v])
                .collect()
        })
        .collect();
    (order, back)
}

/// First graceful labeling found by exhaustive search, or None when the
/// tree has none. Refuses trees with more than 12 vertices.
pub fn brute_graceful(t: &Tree) -> Result<Option<Labeling>> {
    if t.n() > 12 {
        return Err(Error::BudgetExceeded);
    }
    let mut found = None;
    for_each_graceful(t, |labels| {
        found = Some(Labeling::new(labels.to_vec(), Method::Oracle));
        false
    });
    Ok(found)
}

/// Run `visit` on every graceful labeling of `t` (as a label vector) until
/// it returns false.
fn for_each_graceful<F: FnMut(&[u64]) -> bool>(t: &Tree, mut visit: F) {
    let n = t.n();
    if n == 1 {
        visit(&[0]);
        return;
    }
    let m = n - 1;
    assert!(m < 64);
    let (order, back) = closure_order(t);
    let mut labels = vec![0u64; n];

    fn go<F: FnMut(&[u64]) -> bool>(
        order: &[usize],
        back: &[Vec<usize>],
        labels: &mut Vec<u64>,
        k: usize,
        used: u64,
        weights: u64,
        n: u64,
        visit: &mut F,
    ) -> bool {
        if k == order.len() {
            return visit(labels);
        }
        let v = order[k];
        for l in 0..n {
            if used & (1 << l) != 0 {
                continue;
            }
            let mut w_new = weights;
            let mut ok = true;
            for &u in &back[k] {
                let w = l.abs_diff(labels[u]);
                if w_new & (1 << w) != 0 {
                    ok = false;
                    break;
                }
                w_new |= 1 << w;
            }
            if !ok {
                continue;
            }
            labels[v] = l;
            if !go(order, back, labels, k + 1, used | (1 << l), w_new, n, visit) {
                return false;
            }
        }
        true
    }
    go(&order, &back, &mut labels, 0, 0, 0, n as u64, &mut visit);
}

/// Maximum number of distinct weights over all bijective labelings onto
/// 0..=m. Refuses trees with more than 9 vertices.
pub fn exact_gracesize(t: &Tree) -> Result<usize> {
    if t.n() > 9 {
        return Err(Error::BudgetExceeded);
    }
    let n = t.n();
    if n == 1 {
        return Ok(0);
    }
    let m = n - 1;
    let (order, back) = closure_order(t);
    let mut labels = vec![0u64; n];
    let mut best = 0usize;

    fn go(
        order: &[usize],
        back: &[Vec<usize>],
        labels: &mut Vec<u64>,
        k: usize,
        used: u64,
        weights: u64,
        closed: usize,
        distinct: usize,
        m: usize,
        best: &mut usize,
    ) {
        if distinct + (m - closed) <= *best && *best > 0 {
            return;
        }
        if k == order.len() {
            *best = (*best).max(distinct);
            return;
        }
        let v = order[k];
        // the complement labeling realizes the same weights, so the first
        // vertex only needs the lower half of the label range
        let hi = if k == 0 {
            (m as u64 + 2) / 2
        } else {
            m as u64 + 1
        };
        for l in 0..hi {
            if used & (1 << l) != 0 {
                continue;
            }
            let mut w_new = weights;
            let mut d_new = distinct;
            for &u in &back[k] {
                let w = l.abs_diff(labels[u]);
                if w_new & (1 << w) == 0 {
                    w_new |= 1 << w;
                    d_new += 1;
                }
            }
            labels[v] = l;
            go(
                order,
                back,
                labels,
                k + 1,
                used | (1 << l),
                w_new,
                closed + back[k].len(),
                d_new,
                m,
                best,
            );
            if *best == m {
                return;
            }
        }
    }
    go(&order, &back, &mut labels, 0, 0, 0, 0, 0, m, &mut best);
    Ok(best)
}

/// Maximum number of distinct weights over all contiguously bipartite
/// bijective labelings, trying either class as the low one. Refuses trees
/// with more than 9 vertices.
pub fn exact_alpha_size(t: &Tree) -> Result<usize> {
    if t.n() > 9 {
        return Err(Error::BudgetExceeded);
    }
    if t.n() == 1 {
        return Ok(0);
    }
    let colors = crate::labeling::two_coloring(t);
    let (_, e0, x0) = alpha_search(t, 0, &[], u64::MAX);
    let mut best = e0;
    debug_assert!(x0);
    if let Some(v) = (0..t.n()).find(|&v| colors[v] != colors[0]) {
        let (_, e1, x1) = alpha_search(t, v, &[], u64::MAX);
        debug_assert!(x1);
        best = best.max(e1);
    }
    Ok(best)
}

/// Does any matched-pair labeling of `t` built from a graceful labeling of
/// its contracted tree come out bipartite? Tries every graceful labeling of
/// the contracted tree and both side assignments.
pub fn bh_bipartite_exists(t: &Tree, m: &Matching) -> Result<bool> {
    if !m.is_perfect(t.n()) {
        return Err(Error::NotPerfect);
    }
    let cm = contree(t, m)?;
    if cm.result.n() > 12 {
        return Err(Error::BudgetExceeded);
    }
    let n = t.n();
    let matched: std::collections::BTreeSet<(usize, usize)> = m.edges.iter().copied().collect();
    let is_matched = |u: usize, v: usize| matched.contains(&(u.min(v), u.max(v)));
    // the side assignment is forced up to one global flip
    let mut in_x = vec![None; n];
    in_x[0] = Some(true);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let side = in_x[v].unwrap();
        for &w in t.neighbors(v) {
            if in_x[w].is_none() {
                in_x[w] = Some(if is_matched(v, w) { !side } else { side });
                queue.push_back(w);
            }
        }
    }
    let sides: Vec<bool> = in_x.into_iter().map(|s| s.unwrap()).collect();

    let mut exists = false;
    for_each_graceful(&cm.result, |fp| {
        for flip in [false, true] {
            let mut labels = vec![0u64; n];
            for v in 0..n {
                let base = 2 * fp[cm.origin[v]];
                labels[v] = if sides[v] != flip {
                    base
                } else {
                    (n as u64 - 1) - base
                };
            }
            let f = Labeling::new(labels, Method::Bh);
            if let Ok(r) = verify(t, &f) {
                if r.bipartite_cutoff.is_some() {
                    exists = true;
                    return false;
                }
            }
        }
        true
    });
    Ok(exists)
}

/// The eight-spine counterexample lobster and its perfect matching: the
/// contracted tree is a caterpillar, so the matched-pair construction
/// applies, yet no such labeling of it is bipartite.
pub fn figure_one() -> (Tree, Matching) {
    let t = parse_edge_list(include_str!("../data/figure1.el")).expect("bundled fixture parses");
    let m = Matching::new(vec![
        (0, 1),
        (2, 3),
        (4, 5),
        (6, 7),
        (8, 9),
        (10, 11),
        (12, 13),
        (14, 15),
        (16, 17),
        (18, 19),
    ]);
    (t, m)
}
