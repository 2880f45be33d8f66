use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::Tree;

/// Which way ties between equal-depth siblings break: `Left` puts higher
/// degree first, `Right` puts lower degree first. The two orientations feed
/// different constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Left,
    Right,
}

/// A tree rooted at a leaf endpoint of a longest path, with every level
/// ordered by the sibling rules below. Levels are indexed by depth, so
/// `levels[0] == [root]` and `levels.len() == diameter + 1`.
///
/// Sibling order under a common parent:
/// 1. smaller subtree height first (fewer levels with descendants below);
/// 2. among equal heights, degree — descending for `Left`, ascending for
///    `Right`;
/// 3. remaining ties by canonical subtree code, then by vertex index.
///
/// Children of consecutive siblings appear as consecutive blocks on the next
/// level, so parent positions never cross.
#[derive(Debug, Clone)]
pub struct RootedLayout {
    pub tree: Tree,
    pub root: usize,
    pub orientation: Orientation,
    /// levels[j] = ordered vertices at depth j
    pub levels: Vec<Vec<usize>>,
    /// parent[v] = None only for the root
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    /// gamma[v] = number of levels strictly below v that still hold a
    /// descendant of v (the height of v's subtree)
    pub gamma: Vec<usize>,
    /// pos[v] = (level, index within that level)
    pub pos: Vec<(usize, usize)>,
    /// children[v] in layout order
    pub children: Vec<Vec<usize>>,
}

impl RootedLayout {
    pub fn diameter(&self) -> usize {
        self.levels.len() - 1
    }

    /// The rightmost chain: the last vertex of every level. It is always a
    /// longest path starting at the root.
    pub fn spine(&self) -> Vec<usize> {
        self.levels.iter().map(|l| *l.last().unwrap()).collect()
    }
}

/// Root the tree at the canonical endpoint of its canonical longest path
/// (the endpoint whose rooted code is smaller; ties go to the lower index)
/// and order every level.
pub fn layout(t: &Tree, orientation: Orientation) -> RootedLayout {
    let p = t.longest_path();
    let (a, b) = (p[0], *p.last().unwrap());
    let root = if a == b {
        a
    } else {
        let (ca, cb) = (t.rooted_code(a), t.rooted_code(b));
        if ca < cb {
            a
        } else if cb < ca {
            b
        } else {
            a.min(b)
        }
    };
    build(t, root, orientation)
}

/// Like [`layout`] but with a caller-chosen root, which must be a leaf lying
/// at the end of some longest path.
pub fn layout_with_root(t: &Tree, root: usize, orientation: Orientation) -> Result<RootedLayout> {
    if root >= t.n() {
        return Err(Error::OutOfRange {
            what: "root",
            value: root,
        });
    }
    if t.n() > 1 && t.degree(root) != 1 {
        return Err(Error::PreconditionLabeling(
            "the layout root must be a leaf",
        ));
    }
    let ecc = t.bfs_dist(root).into_iter().max().unwrap();
    if ecc != t.diameter() {
        return Err(Error::PreconditionLabeling(
            "the layout root must be an endpoint of a longest path",
        ));
    }
    Ok(build(t, root, orientation))
}

fn build(t: &Tree, root: usize, orientation: Orientation) -> RootedLayout {
    let n = t.n();
    let mut parent = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    let mut visited = vec![false; n];
    visited[root] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in t.neighbors(v) {
            if !visited[w] {
                visited[w] = true;
                parent[w] = Some(v);
                depth[w] = depth[v] + 1;
                stack.push(w);
            }
        }
    }

    // subtree height and canonical subtree code, bottom-up
    let mut gamma = vec![0usize; n];
    let mut code: Vec<Option<String>> = vec![None; n];
    for &v in order.iter().rev() {
        let kids: Vec<usize> = t
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| parent[w] == Some(v))
            .collect();
        let mut parts: Vec<String> = Vec::with_capacity(kids.len());
        for &w in &kids {
            gamma[v] = gamma[v].max(gamma[w] + 1);
            parts.push(code[w].clone().unwrap());
        }
        parts.sort_unstable();
        let mut s = String::with_capacity(2 + parts.iter().map(|p| p.len()).sum::<usize>());
        s.push('(');
        for p in &parts {
            s.push_str(p);
        }
        s.push(')');
        code[v] = Some(s);
    }

    // order children of every vertex
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        let mut kids: Vec<usize> = t
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| parent[w] == Some(v))
            .collect();
        kids.sort_by(|&a, &b| {
            gamma[a]
                .cmp(&gamma[b])
                .then_with(|| match orientation {
                    Orientation::Left => t.degree(b).cmp(&t.degree(a)),
                    Orientation::Right => t.degree(a).cmp(&t.degree(b)),
                })
                .then_with(|| code[a].as_ref().unwrap().cmp(code[b].as_ref().unwrap()))
                .then_with(|| a.cmp(&b))
        });
        children[v] = kids;
    }

    // levels by concatenating child blocks in level order
    let d = gamma[root];
    let mut levels: Vec<Vec<usize>> = Vec::with_capacity(d + 1);
    levels.push(vec![root]);
    for j in 0..d {
        let mut next = Vec::new();
        for &v in &levels[j] {
            next.extend_from_slice(&children[v]);
        }
        levels.push(next);
    }

    let mut pos = vec![(0usize, 0usize); n];
    for (j, level) in levels.iter().enumerate() {
        for (i, &v) in level.iter().enumerate() {
            pos[v] = (j, i);
        }
    }

    RootedLayout {
        tree: t.clone(),
        root,
        orientation,
        levels,
        parent,
        depth,
        gamma,
        pos,
        children,
    }
}
