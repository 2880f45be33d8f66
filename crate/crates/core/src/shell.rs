use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::{complementary, verify, BoundCheck, Labeling, Method, VerificationReport};
use crate::layout::{layout, layout_with_root, Orientation};
use crate::rrg::{rrg_label, rrg_label_on};
use crate::tree::Tree;

/// A set of vertex-disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn covered(&self, n: usize) -> Vec<bool> {
        let mut cov = vec![false; n];
        for &(u, v) in &self.edges {
            if u < n {
                cov[u] = true;
            }
            if v < n {
                cov[v] = true;
            }
        }
        cov
    }

    pub fn is_perfect(&self, n: usize) -> bool {
        self.edges.len() * 2 == n && self.covered(n).into_iter().all(|c| c)
    }

    fn validate_on(&self, t: &Tree) -> Result<()> {
        let mut seen = vec![false; t.n()];
        for &(u, v) in &self.edges {
            if u >= t.n() || v >= t.n() || !t.neighbors(u).contains(&v) {
                return Err(Error::NotPerfect);
            }
            if seen[u] || seen[v] {
                return Err(Error::NotPerfect);
            }
            seen[u] = true;
            seen[v] = true;
        }
        Ok(())
    }
}

/// Why a contraction was performed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContractionKind {
    /// leaves folded away to expose the degree-two skeleton
    Shell,
    /// matching edges collapsed to single vertices
    Contree,
}

/// Result of contracting a set of tree edges. `origin[v]` maps an original
/// vertex to its image; `contracted` lists the folded edges as
/// (surviving original vertex, absorbed original vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    pub result: Tree,
    pub origin: Vec<usize>,
    pub contracted: Vec<(usize, usize)>,
    pub kind: ContractionKind,
}

/// Contract the given original edges (keep, absorb). Classes are renumbered
/// densely by their smallest original member.
fn contract_edges(t: &Tree, pairs: &[(usize, usize)], kind: ContractionKind) -> ContractionMap {
    let n = t.n();
    let mut rep: Vec<usize> = (0..n).collect();
    let find = |mut v: usize, rep: &mut Vec<usize>| -> usize {
        while rep[v] != v {
            rep[v] = rep[rep[v]];
            v = rep[v];
        }
        v
    };
    for &(keep, absorb) in pairs {
        let (rk, ra) = (find(keep, &mut rep), find(absorb, &mut rep));
        // representative = smaller original index for determinism
        let (lo, hi) = (rk.min(ra), rk.max(ra));
        rep[hi] = lo;
    }
    let mut class_of = vec![usize::MAX; n];
    let mut next = 0usize;
    for v in 0..n {
        let r = find(v, &mut rep);
        if class_of[r] == usize::MAX {
            class_of[r] = next;
            next += 1;
        }
        class_of[v] = class_of[r];
    }
    let mut edges = Vec::new();
    for &(u, v) in t.edges() {
        let (cu, cv) = (class_of[u], class_of[v]);
        if cu != cv {
            edges.push((cu, cv));
        }
    }
    let result = Tree::new(next, edges).expect("contracting tree edges keeps a tree");
    ContractionMap {
        result,
        origin: class_of,
        contracted: pairs.to_vec(),
        kind,
    }
}

fn spine_distances(t: &Tree, spine: &[usize]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; t.n()];
    let mut queue = std::collections::VecDeque::new();
    for &v in spine {
        dist[v] = 0;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for &w in t.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// A shell is a lobster in which every off-spine neighbor of the spine has
/// degree exactly two: each branch vertex carries exactly one leaf and no
/// leaf hangs on the spine directly.
pub fn is_shell(t: &Tree) -> bool {
    if t.distance_class() > 2 {
        return false;
    }
    let lay = layout(t, Orientation::Right);
    let spine = lay.spine();
    let on_spine = {
        let mut b = vec![false; t.n()];
        for &v in &spine {
            b[v] = true;
        }
        b
    };
    let dist = spine_distances(t, &spine);
    (0..t.n()).all(|v| on_spine[v] || dist[v] != 1 || t.degree(v) == 2)
}

/// Fold a lobster down to a shell: for every branch vertex all leaves but
/// the lowest-indexed one are absorbed into the branch vertex, and every
/// leaf hanging directly on the spine is absorbed into its spine neighbor.
pub fn shell(t: &Tree) -> Result<ContractionMap> {
    if t.distance_class() > 2 {
        return Err(Error::NotALobster);
    }
    let lay = layout(t, Orientation::Right);
    let spine = lay.spine();
    let on_spine = {
        let mut b = vec![false; t.n()];
        for &v in &spine {
            b[v] = true;
        }
        b
    };
    let mut pairs = Vec::new();
    for &x in &spine {
        for &v in &lay.children[x] {
            if on_spine[v] {
                continue;
            }
            let kids = &lay.children[v];
            if kids.is_empty() {
                // leaf on the spine
                pairs.push((x, v));
            } else {
                let keep = *kids.iter().min().unwrap();
                for &leaf in kids {
                    if leaf != keep {
                        pairs.push((v, leaf));
                    }
                }
            }
        }
    }
    let cm = contract_edges(t, &pairs, ContractionKind::Shell);
    debug_assert!(is_shell(&cm.result));
    Ok(cm)
}

/// The canonical near-perfect matching of a shell: every branch vertex pairs
/// with its single leaf, and the spine pairs up from the deep end. When the
/// order is odd the shallow spine endpoint stays uncovered.
pub fn shell_matching(t: &Tree) -> Result<Matching> {
    if !is_shell(t) {
        return Err(Error::NotAShell);
    }
    let lay = layout(t, Orientation::Right);
    let spine = lay.spine();
    let on_spine = {
        let mut b = vec![false; t.n()];
        for &v in &spine {
            b[v] = true;
        }
        b
    };
    let mut edges = Vec::new();
    for &x in &spine {
        for &v in &lay.children[x] {
            if !on_spine[v] {
                // branch vertex with exactly one leaf below
                edges.push((v, lay.children[v][0]));
            }
        }
    }
    let mut i = spine.len();
    while i >= 2 {
        edges.push((spine[i - 2], spine[i - 1]));
        i -= 2;
    }
    Ok(Matching::new(edges))
}

/// Contract every matching edge to a single vertex. The matching must be a
/// valid set of disjoint tree edges but need not be perfect.
pub fn contree(t: &Tree, m: &Matching) -> Result<ContractionMap> {
    m.validate_on(t)?;
    Ok(contract_edges(t, &m.edges, ContractionKind::Contree))
}

/// Outcome of the matched-pair construction: a graceful labeling in which
/// every matching edge joins labels summing to n − 1.
#[derive(Debug, Clone)]
pub struct BhOutcome {
    pub labeling: Labeling,
    /// vertices holding the even labels 2·f′
    pub x_part: Vec<usize>,
    /// vertices holding the odd-side labels n − 1 − 2·f′
    pub y_part: Vec<usize>,
    pub contraction: ContractionMap,
    pub contree_labeling: Labeling,
}

/// Graceful labeling of a tree with a perfect matching whose contracted
/// tree is a caterpillar. The contracted tree is labeled gracefully, every
/// matched pair receives the doubled label on one side and its complement
/// to n − 1 on the other, and sides are chosen so matched neighbors differ
/// while unmatched neighbors agree.
pub fn bh_label(t: &Tree, m: &Matching) -> Result<BhOutcome> {
    if !m.is_perfect(t.n()) {
        return Err(Error::NotPerfect);
    }
    let cm = contree(t, m)?;
    if cm.result.distance_class() > 1 {
        return Err(Error::ContreeNotCaterpillar);
    }
    let (fp, _) = rrg_label(&cm.result)?;
    debug_assert!(verify(&cm.result, &fp)?.graceful);

    let n = t.n();
    let matched: BTreeSet<(usize, usize)> = m.edges.iter().copied().collect();
    let is_matched = |u: usize, v: usize| matched.contains(&(u.min(v), u.max(v)));
    // side assignment: matched neighbors opposite, unmatched neighbors equal;
    // anchored so the lowest-indexed vertex with an unmatched edge sits in X
    let anchor = (0..n)
        .find(|&v| t.neighbors(v).iter().any(|&w| !is_matched(v, w)))
        .unwrap_or(0);
    let mut in_x = vec![None; n];
    in_x[anchor] = Some(true);
    let mut queue = std::collections::VecDeque::from([anchor]);
    while let Some(v) = queue.pop_front() {
        let side = in_x[v].unwrap();
        for &w in t.neighbors(v) {
            let next = if is_matched(v, w) { !side } else { side };
            if in_x[w].is_none() {
                in_x[w] = Some(next);
                queue.push_back(w);
            }
        }
    }

    let mut labels = vec![0u64; n];
    let mut x_part = Vec::new();
    let mut y_part = Vec::new();
    for v in 0..n {
        let base = 2 * fp.labels[cm.origin[v]];
        if in_x[v].unwrap() {
            labels[v] = base;
            x_part.push(v);
        } else {
            labels[v] = (n as u64 - 1) - base;
            y_part.push(v);
        }
    }
    Ok(BhOutcome {
        labeling: Labeling::new(labels, Method::Bh),
        x_part,
        y_part,
        contraction: cm,
        contree_labeling: fp,
    })
}

/// A graceful labeling is strongly graceful w.r.t. a matching when every
/// matching edge joins labels summing to n − 1.
pub fn strongly_graceful(t: &Tree, f: &Labeling, m: &Matching) -> bool {
    let n = t.n() as u64;
    verify(t, f).map_or(false, |r| r.graceful)
        && m.edges
            .iter()
            .all(|&(u, v)| f.labels[u] + f.labels[v] == n - 1)
}

/// Outcome of the leaf-folding relaxed construction on a lobster.
#[derive(Debug, Clone)]
pub struct BhRelaxedOutcome {
    pub labeling: Labeling,
    /// guaranteed number of distinct weights
    pub certificate: usize,
    /// order of the shell actually labeled (after any parity fix)
    pub core_order: usize,
    /// original edges folded away, including any parity contraction
    pub contracted: Vec<(usize, usize)>,
    /// original vertices that received the fresh top labels
    pub expanded: Vec<usize>,
}

/// Edge-relaxed labeling of a lobster by folding it to a shell, labeling
/// the shell gracefully (matched pairs on even orders, the expansion route
/// on odd ones), and handing the folded vertices the top labels. All shell
/// weights survive, so at least core_order − 1 weights are distinct.
pub fn bh_relaxed_label(t: &Tree) -> Result<BhRelaxedOutcome> {
    let cm = shell(t)?;
    let core = cm.result.clone();
    let to_core = cm.origin.clone();
    let mut contracted = cm.contracted.clone();
    let n = t.n();
    let cert = core.n().saturating_sub(1);

    let sg = shell_graceful(&core)?;

    // absorbed vertices (the second slot of each contraction) get the top
    // labels in ascending original order; everyone else inherits the core
    // label of its class
    let absorbed: BTreeSet<usize> = contracted.iter().map(|&(_, a)| a).collect();
    let l = absorbed.len();
    let mut labels = vec![0u64; n];
    for v in 0..n {
        if !absorbed.contains(&v) {
            labels[v] = sg.labeling.labels[to_core[v]];
        }
    }
    let mut next = (n - l) as u64;
    let mut expanded = Vec::with_capacity(l);
    for &v in &absorbed {
        labels[v] = next;
        next += 1;
        expanded.push(v);
    }
    contracted.sort_unstable();
    Ok(BhRelaxedOutcome {
        labeling: Labeling::new(labels, Method::BhRelaxed),
        certificate: cert,
        core_order: core.n(),
        contracted,
        expanded,
    })
}

/// Bound checks the relaxed fold promises, ready to merge into a report.
pub fn bh_relaxed_bound_checks(
    outcome: &BhRelaxedOutcome,
    report: &VerificationReport,
) -> Vec<BoundCheck> {
    vec![
        BoundCheck::ge(
            "distinct-weights-vs-certificate",
            Ratio::from_integer(report.epsilon as i64),
            Ratio::from_integer(outcome.certificate as i64),
        ),
        BoundCheck::ge(
            "labels-in-range",
            Ratio::from_integer(report.injective as i64),
            Ratio::from_integer(1),
        ),
    ]
}

/// Replace every vertex of `s` except the top-labeled one by a copy of `t2`,
/// rooted along `g`. Copy i (of the vertex labeled i by `f_s`) occupies
/// vertex ids `i·n₂ .. (i+1)·n₂`, and the surviving hub becomes the last
/// vertex. Edges of `s` turn into edges between corresponding vertices of
/// the two copies — by default the vertex `v`, or the vertex named in
/// `attach` for that edge. Hub edges always attach at `v`, which must carry
/// g(v) = 0; the hub must carry the top label of `f_s`.
pub fn delta_plus_one(
    s: &Tree,
    f_s: &Labeling,
    u: usize,
    t2: &Tree,
    g: &Labeling,
    v: usize,
    attach: &[((usize, usize), usize)],
) -> Result<(Tree, Labeling)> {
    let n_s = s.n() as u64;
    let n_t = t2.n() as u64;
    if f_s.labels.len() != s.n() || g.labels.len() != t2.n() {
        return Err(Error::MissingLabel(f_s.labels.len().min(g.labels.len())));
    }
    if f_s.labels[u] != n_s - 1 {
        return Err(Error::PreconditionLabeling(
            "the hub must carry the top label of the host labeling",
        ));
    }
    if g.labels[v] != 0 {
        return Err(Error::PreconditionLabeling(
            "the default attachment vertex must be labeled 0",
        ));
    }
    let host_ok = {
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        f_s.labels.iter().all(|&l| l < n_s && seen.insert(l))
    };
    if !host_ok {
        return Err(Error::PreconditionLabeling(
            "the host labeling must be a bijection onto 0..n",
        ));
    }
    let colors = crate::labeling::two_coloring(t2);
    let v_color = colors[v];

    let attach_of = |(a, b): (usize, usize)| -> usize {
        let key = (a.min(b), a.max(b));
        attach
            .iter()
            .find(|&&(e, _)| e == key)
            .map(|&(_, w)| w)
            .unwrap_or(v)
    };

    let copies = (n_s - 1) as usize;
    let hub = copies * t2.n();
    let mut edges = Vec::new();
    for i in 0..copies {
        for &(a, b) in t2.edges() {
            edges.push((i * t2.n() + a, i * t2.n() + b));
        }
    }
    for &(a, b) in s.edges() {
        if a == u || b == u {
            let other = if a == u { b } else { a };
            let i = f_s.labels[other] as usize;
            edges.push((hub, i * t2.n() + v));
        } else {
            let w = attach_of((a, b));
            let (i, j) = (f_s.labels[a] as usize, f_s.labels[b] as usize);
            edges.push((i * t2.n() + w, j * t2.n() + w));
        }
    }
    let tree = Tree::new(hub + 1, edges)?;

    let mut labels = vec![0u64; hub + 1];
    for i in 0..copies {
        for y in 0..t2.n() {
            labels[i * t2.n() + y] = if colors[y] == v_color {
                i as u64 * n_t + g.labels[y]
            } else {
                (n_s - i as u64 - 2) * n_t + g.labels[y]
            };
        }
    }
    labels[hub] = (n_s - 1) * n_t;
    Ok((tree, Labeling::new(labels, Method::ShellDelta)))
}

/// Graceful labeling of a caterpillar with the maximum label m forced onto
/// a prescribed diametral endpoint. The layout is rooted at the vertex
/// farthest from `w`, which places `w` on the deepest level; the deepest
/// level's 0-label is then moved onto `w` (always legal there, since the
/// deepest level consists of sibling leaves) and the whole labeling is
/// complemented.
pub fn caterpillar_graceful_with_max_at(t: &Tree, w: usize) -> Result<Labeling> {
    if t.distance_class() > 1 {
        return Err(Error::PreconditionLabeling("a caterpillar is required"));
    }
    if w >= t.n() {
        return Err(Error::OutOfRange {
            what: "vertex",
            value: w,
        });
    }
    if t.n() == 1 {
        return Ok(Labeling::new(vec![0], Method::Rrg));
    }
    let dw = t.bfs_dist(w);
    let ecc = dw.iter().copied().max().unwrap();
    if ecc != t.diameter() {
        return Err(Error::PreconditionLabeling(
            "the prescribed vertex must be an endpoint of a longest path",
        ));
    }
    let root = (0..t.n()).filter(|&v| dw[v] == ecc).min().unwrap();
    let lay = layout_with_root(t, root, Orientation::Left)?;
    let (f0, _) = rrg_label_on(&lay)?;
    debug_assert!(verify(t, &f0)?.graceful);
    let mut labels = f0.labels;
    if labels[w] != 0 {
        let zero_v = (0..t.n()).find(|&v| labels[v] == 0).unwrap();
        let siblings = lay.parent[w] == lay.parent[zero_v];
        if !(siblings && t.degree(w) == 1 && t.degree(zero_v) == 1) {
            return Err(Error::PreconditionLabeling(
                "the prescribed vertex cannot take the extreme label",
            ));
        }
        labels.swap(w, zero_v);
    }
    complementary(t, &Labeling::new(labels, Method::Rrg))
}

/// Which route produced a graceful shell labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShellRoute {
    /// even order: matched-pair construction on the shell itself
    Matching,
    /// odd order: matched pairs collapsed to a caterpillar, then every unit
    /// re-expanded to a two-vertex copy around the uncovered endpoint
    OddExpansion,
}

#[derive(Debug, Clone)]
pub struct ShellGracefulOutcome {
    pub labeling: Labeling,
    pub route: ShellRoute,
    pub a_part: Vec<usize>,
    pub b_part: Vec<usize>,
}

/// Graceful labeling of any shell. Even orders go through the perfect
/// matching directly. Odd orders collapse the near-perfect matching to a
/// caterpillar of units, label it gracefully with the top label pinned on
/// the unit of the uncovered spine endpoint, and blow every matched unit
/// back up into a labeled pair.
pub fn shell_graceful(t: &Tree) -> Result<ShellGracefulOutcome> {
    if !is_shell(t) {
        return Err(Error::NotAShell);
    }
    let n = t.n();
    if n == 1 {
        return Ok(ShellGracefulOutcome {
            labeling: Labeling::new(vec![0], Method::Bh),
            route: ShellRoute::Matching,
            a_part: vec![0],
            b_part: vec![],
        });
    }
    if n % 2 == 0 {
        let m = shell_matching(t)?;
        let bh = bh_label(t, &m)?;
        return Ok(ShellGracefulOutcome {
            labeling: bh.labeling,
            route: ShellRoute::Matching,
            a_part: bh.x_part,
            b_part: bh.y_part,
        });
    }

    // odd order: units = matched pairs plus the uncovered endpoint alone
    let m = shell_matching(t)?;
    let lay = layout(t, Orientation::Right);
    let x0 = lay.spine()[0];
    let x1 = lay.spine()[1];
    debug_assert!(!m.covered(n)[x0]);
    let cm = contree(t, &m)?;
    let unit_tree = &cm.result;
    if unit_tree.distance_class() > 1 {
        return Err(Error::ContreeNotCaterpillar);
    }
    let u_unit = cm.origin[x0];
    let f_s = caterpillar_graceful_with_max_at(unit_tree, u_unit)?;
    let n_s = unit_tree.n() as u64;

    // designate pair sides: matched neighbors opposite, unmatched equal,
    // anchored so the deep neighbor of the uncovered endpoint sits on the
    // low side (its unit label is 0 exactly when the hub formula expects it)
    let matched: BTreeSet<(usize, usize)> = m.edges.iter().copied().collect();
    let is_matched = |u: usize, v: usize| matched.contains(&(u.min(v), u.max(v)));
    let mut side_a = vec![None; n];
    side_a[x1] = Some(true);
    let mut queue = std::collections::VecDeque::from([x1]);
    while let Some(v) = queue.pop_front() {
        let side = side_a[v].unwrap();
        for &w in t.neighbors(v) {
            if w == x0 {
                continue;
            }
            let next = if is_matched(v, w) { !side } else { side };
            if side_a[w].is_none() {
                side_a[w] = Some(next);
                queue.push_back(w);
            }
        }
    }

    let mut labels = vec![0u64; n];
    let mut a_part = Vec::new();
    let mut b_part = Vec::new();
    for v in 0..n {
        if v == x0 {
            labels[v] = 2 * (n_s - 1);
            a_part.push(v);
            continue;
        }
        let i = f_s.labels[cm.origin[v]];
        if side_a[v].unwrap() {
            labels[v] = 2 * i;
            a_part.push(v);
        } else {
            labels[v] = 2 * (n_s - i - 2) + 1;
            b_part.push(v);
        }
    }
    Ok(ShellGracefulOutcome {
        labeling: Labeling::new(labels, Method::ShellDelta),
        route: ShellRoute::OddExpansion,
        a_part,
        b_part,
    })
}

/// Lower bound for the largest number of distinct weights any edge-relaxed
/// labeling of a tree can reach, from its size, diameter, and the number of
/// matched vertices ν: max{(3/4)m + (d − ν)/8 + 3/2, ν}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GracesizeBound {
    pub formula: String,
    pub bound: String,
    /// the simplified (3/4)m bound applies: ν ≥ 3m/4, or d ≥ ν − 12
    pub three_quarters_applies: bool,
}

pub fn gracesize_lower(m: i64, d: i64, nu: i64) -> (Ratio<i64>, GracesizeBound) {
    let formula = Ratio::new(3 * m, 4) + Ratio::new(d - nu, 8) + Ratio::new(3, 2);
    let bound = formula.max(Ratio::from_integer(nu));
    let three_quarters_applies = Ratio::from_integer(nu) >= Ratio::new(3 * m, 4) || d >= nu - 12;
    (
        bound,
        GracesizeBound {
            formula: crate::labeling::ratio_str(formula),
            bound: crate::labeling::ratio_str(bound),
            three_quarters_applies,
        },
    )
}
