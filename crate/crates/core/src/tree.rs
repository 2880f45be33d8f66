use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// An unrooted tree on vertices `0..n`. Construction validates that the edge
/// set really forms a tree; adjacency lists are kept sorted so every
/// traversal in the crate is deterministic.
///
/// Equality is structural: two trees are equal when they have the same
/// vertex count and the same edge set, regardless of the order edges were
/// supplied in.
#[derive(Debug, Clone)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Tree {}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns false if u and v were already connected.
    fn union(&mut self, u: usize, v: usize) -> bool {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru == rv {
            return false;
        }
        self.parent[ru] = rv;
        true
    }
}

impl Tree {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let mut seen = BTreeSet::new();
        let mut dsu = Dsu::new(n);
        for &(u, v) in &edges {
            if u >= n {
                return Err(Error::OutOfRange {
                    what: "vertex",
                    value: u,
                });
            }
            if v >= n {
                return Err(Error::OutOfRange {
                    what: "vertex",
                    value: v,
                });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
            if !dsu.union(u, v) {
                return Err(Error::CycleDetected(u, v));
            }
        }
        if edges.len() + 1 != n {
            return Err(Error::Disconnected);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Tree { n, edges, adj })
    }

    /// Path on `n` vertices, edges (0,1),(1,2),…
    pub fn path(n: usize) -> Result<Self> {
        Tree::new(n, (1..n).map(|v| (v - 1, v)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Distances from `s` to every vertex.
    pub fn bfs_dist(&self, s: usize) -> Vec<usize> {
        self.bfs(s).0
    }

    /// (distances, predecessor on a shortest path) from `s`. The predecessor
    /// of `s` is `s` itself.
    pub fn bfs(&self, s: usize) -> (Vec<usize>, Vec<usize>) {
        let mut dist = vec![usize::MAX; self.n];
        let mut pred = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[s] = 0;
        pred[s] = s;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    pred[w] = v;
                    queue.push_back(w);
                }
            }
        }
        (dist, pred)
    }

    /// The unique path between two vertices, inclusive.
    pub fn path_between(&self, u: usize, v: usize) -> Vec<usize> {
        let (_, pred) = self.bfs(u);
        let mut path = vec![v];
        let mut cur = v;
        while cur != u {
            cur = pred[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Length of a longest path (number of edges).
    pub fn diameter(&self) -> usize {
        let d0 = self.bfs_dist(0);
        let a = (0..self.n).max_by_key(|&v| d0[v]).unwrap();
        let da = self.bfs_dist(a);
        da.into_iter().max().unwrap()
    }

    /// A canonical longest path: among all paths of maximum length, the one
    /// whose vertex sequence is lexicographically smallest (considering both
    /// traversal directions of every diametral pair).
    pub fn longest_path(&self) -> Vec<usize> {
        let diam = self.diameter();
        let mut best: Option<Vec<usize>> = None;
        for u in 0..self.n {
            let (du, pred) = self.bfs(u);
            let ecc = (0..self.n).map(|v| du[v]).max().unwrap();
            if ecc != diam {
                continue;
            }
            for v in 0..self.n {
                if du[v] != diam {
                    continue;
                }
                let mut path = vec![v];
                let mut cur = v;
                while cur != u {
                    cur = pred[cur];
                    path.push(cur);
                }
                path.reverse();
                if best.as_ref().map_or(true, |b| path < *b) {
                    best = Some(path);
                }
            }
        }
        best.unwrap()
    }

    /// Smallest k such that every vertex lies within distance k of some
    /// longest path: 0 for paths, 1 for caterpillars, 2 for lobsters.
    pub fn distance_class(&self) -> usize {
        let diam = self.diameter();
        let mut best = usize::MAX;
        for u in 0..self.n {
            let (du, pred) = self.bfs(u);
            if (0..self.n).map(|v| du[v]).max().unwrap() != diam {
                continue;
            }
            for v in 0..self.n {
                if du[v] != diam {
                    continue;
                }
                let mut on_path = vec![false; self.n];
                let mut cur = v;
                on_path[v] = true;
                while cur != u {
                    cur = pred[cur];
                    on_path[cur] = true;
                }
                // multi-source BFS from the path
                let mut dist = vec![usize::MAX; self.n];
                let mut queue = VecDeque::new();
                for w in 0..self.n {
                    if on_path[w] {
                        dist[w] = 0;
                        queue.push_back(w);
                    }
                }
                while let Some(w) = queue.pop_front() {
                    for &x in &self.adj[w] {
                        if dist[x] == usize::MAX {
                            dist[x] = dist[w] + 1;
                            queue.push_back(x);
                        }
                    }
                }
                best = best.min(dist.into_iter().max().unwrap());
                if best == 0 {
                    return 0;
                }
            }
        }
        best
    }

    /// The one or two middle vertices of the tree (leaf peeling).
    pub fn centers(&self) -> Vec<usize> {
        if self.n == 1 {
            return vec![0];
        }
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; self.n];
        let mut layer: Vec<usize> = (0..self.n).filter(|&v| deg[v] == 1).collect();
        let mut remaining = self.n;
        while remaining > 2 {
            let mut next = Vec::new();
            for &v in &layer {
                removed[v] = true;
                remaining -= 1;
                for &w in &self.adj[v] {
                    if !removed[w] {
                        deg[w] -= 1;
                        if deg[w] == 1 {
                            next.push(w);
                        }
                    }
                }
            }
            layer = next;
        }
        let mut centers: Vec<usize> = (0..self.n).filter(|&v| !removed[v]).collect();
        centers.sort_unstable();
        centers
    }

    /// Canonical parenthesis code of the tree rooted at `root`: children
    /// codes are sorted, so isomorphic rooted trees share one code.
    pub fn rooted_code(&self, root: usize) -> String {
        // iterative post-order so deep paths cannot overflow the stack
        let n = self.n;
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        let mut visited = vec![false; n];
        visited[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &self.adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut code: Vec<Option<String>> = vec![None; n];
        for &v in order.iter().rev() {
            let mut parts: Vec<String> = self.adj[v]
                .iter()
                .filter(|&&w| parent[w] == v)
                .map(|&w| code[w].take().unwrap())
                .collect();
            parts.sort_unstable();
            let mut s = String::with_capacity(2 + parts.iter().map(|p| p.len()).sum::<usize>());
            s.push('(');
            for p in &parts {
                s.push_str(p);
            }
            s.push(')');
            code[v] = Some(s);
        }
        code[root].take().unwrap()
    }

    /// Canonical code of the unrooted tree: minimum rooted code over centers.
    /// Two trees are isomorphic iff their canonical codes agree.
    pub fn canonical_code(&self) -> String {
        self.centers()
            .into_iter()
            .map(|c| self.rooted_code(c))
            .min()
            .unwrap()
    }
}

/// Parse a plain edge list: one `u v` pair per line, `#` starts a comment,
/// blank lines are skipped. Vertex names may be arbitrary non-negative
/// integers and are re-indexed densely in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<Tree> {
    let mut ids: BTreeMap<u64, usize> = BTreeMap::new();
    let mut next_by_appearance: Vec<u64> = Vec::new();
    let mut raw_edges: Vec<(u64, u64)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (a, b) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::InvalidSpec(format!(
                    "line {}: expected two vertex ids, got {:?}",
                    lineno + 1,
                    line
                )))
            }
        };
        let parse = |s: &str| -> Result<u64> {
            s.parse().map_err(|_| {
                Error::InvalidSpec(format!("line {}: {:?} is not a vertex id", lineno + 1, s))
            })
        };
        raw_edges.push((parse(a)?, parse(b)?));
    }
    if raw_edges.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (a, b) in raw_edges {
        let mut id = |x: u64| -> usize {
            *ids.entry(x).or_insert_with(|| {
                next_by_appearance.push(x);
                next_by_appearance.len() - 1
            })
        };
        let (u, v) = (id(a), id(b));
        edges.push((u, v));
    }
    Tree::new(ids.len(), edges)
}

/// Inverse of [`parse_edge_list`] for trees already on dense indices.
pub fn serialize_edge_list(t: &Tree) -> String {
    let mut out = String::new();
    for &(u, v) in t.edges() {
        out.push_str(&format!("{} {}\n", u, v));
    }
    out
}

/// Prüfer code of a labeled tree (n ≥ 2 vertices, n − 2 entries). The
/// smallest leaf is removed at each step.
pub fn prufer_encode(t: &Tree) -> Result<Vec<usize>> {
    let n = t.n();
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "order for a Prüfer code",
            value: n,
        });
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut seq = Vec::with_capacity(n - 2);
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    for _ in 0..n - 2 {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        removed[leaf] = true;
        let parent = *t.neighbors(leaf).iter().find(|&&w| !removed[w]).unwrap();
        seq.push(parent);
        deg[parent] -= 1;
        if deg[parent] == 1 {
            leaves.insert(parent);
        }
    }
    Ok(seq)
}

/// Rebuild the tree on `seq.len() + 2` vertices encoded by a Prüfer sequence.
pub fn prufer_decode(seq: &[usize]) -> Result<Tree> {
    let n = seq.len() + 2;
    for &v in seq {
        if v >= n {
            return Err(Error::OutOfRange {
                what: "vertex in Prüfer sequence",
                value: v,
            });
        }
    }
    let mut deg = vec![1usize; n];
    for &v in seq {
        deg[v] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push((leaf, v));
        deg[v] -= 1;
        if deg[v] == 1 {
            leaves.insert(v);
        }
    }
    let mut it = leaves.into_iter();
    let (a, b) = (it.next().unwrap(), it.next().unwrap());
    edges.push((a, b));
    Tree::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let t = Tree::new(1, vec![]).unwrap();
        assert_eq!(t.n(), 1);
        assert_eq!(t.m(), 0);
        assert_eq!(t.diameter(), 0);
        assert_eq!(t.longest_path(), vec![0]);
        assert_eq!(t.distance_class(), 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Tree::new(0, vec![]), Err(Error::EmptyInput)));
        assert!(matches!(
            Tree::new(2, vec![(0, 2)]),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            Tree::new(2, vec![(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
        assert!(matches!(
            Tree::new(3, vec![(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Tree::new(3, vec![(0, 1), (1, 2), (2, 0)]),
            Err(Error::CycleDetected(2, 0))
        ));
        assert!(matches!(
            Tree::new(4, vec![(0, 1), (2, 3)]),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn star_longest_path_is_lexicographically_least() {
        let star = Tree::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.longest_path(), vec![1, 0, 2]);
        assert_eq!(star.centers(), vec![0]);
    }

    #[test]
    fn distance_classes() {
        let path = Tree::path(6).unwrap();
        assert_eq!(path.distance_class(), 0);
        // caterpillar: path 0-1-2-3 with a leaf on 1
        let cat = Tree::new(5, vec![(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        assert_eq!(cat.distance_class(), 1);
        // lobster: extend that leaf by one more vertex off the long path
        let lob = Tree::new(7, vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]).unwrap();
        assert_eq!(lob.distance_class(), 2);
    }

    #[test]
    fn canonical_code_separates_the_two_trees_on_four_vertices() {
        let path = Tree::path(4).unwrap();
        let star = Tree::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(path.canonical_code(), star.canonical_code());
        let relabeled = Tree::new(4, vec![(2, 0), (2, 1), (2, 3)]).unwrap();
        assert_eq!(star.canonical_code(), relabeled.canonical_code());
    }

    #[test]
    fn prufer_round_trip() {
        let t = Tree::new(6, vec![(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        let seq = prufer_encode(&t).unwrap();
        let back = prufer_decode(&seq).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let t = parse_edge_list("0 1\n1 2 # tail\n\n# comment\n1 3\n").unwrap();
        assert_eq!(t.n(), 4);
        assert_eq!(t.degree(1), 3);
        assert!(matches!(parse_edge_list(""), Err(Error::EmptyInput)));
        assert!(matches!(
            parse_edge_list("0 1 2\n"),
            Err(Error::InvalidSpec(_))
        ));
        let text = serialize_edge_list(&t);
        assert_eq!(parse_edge_list(&text).unwrap(), t);
    }

    #[test]
    fn sparse_names_reindex_by_first_appearance() {
        let t = parse_edge_list("10 20\n20 5\n").unwrap();
        assert_eq!(t.n(), 3);
        assert_eq!(t.edges(), &[(0, 1), (1, 2)]);
    }
}
