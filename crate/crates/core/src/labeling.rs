use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::{layout, Orientation};
use crate::tree::Tree;

/// How a labeling was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Rrg,
    Erg,
    Bh,
    BhRelaxed,
    ShellDelta,
    RsAmalgam,
    Oracle,
    External,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Rrg => "rrg",
            Method::Erg => "erg",
            Method::Bh => "bh",
            Method::BhRelaxed => "bh-relaxed",
            Method::ShellDelta => "shell-delta",
            Method::RsAmalgam => "rs-amalgam",
            Method::Oracle => "oracle",
            Method::External => "external",
        }
    }
}

/// A vertex labeling: `labels[v]` is the label of vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    pub labels: Vec<u64>,
    pub method: Method,
}

impl Labeling {
    pub fn new(labels: Vec<u64>, method: Method) -> Self {
        Labeling { labels, method }
    }

    pub fn get(&self, v: usize) -> u64 {
        self.labels[v]
    }

    /// |f(u) − f(v)| for an edge.
    pub fn weight(&self, u: usize, v: usize) -> u64 {
        self.labels[u].abs_diff(self.labels[v])
    }

    /// Number of distinct edge weights this labeling induces on `t`.
    pub fn epsilon(&self, t: &Tree) -> usize {
        t.edges()
            .iter()
            .map(|&(u, v)| self.weight(u, v))
            .collect::<BTreeSet<_>>()
            .len()
    }
}

/// One edge weight that occurs more than once, with the levels (depth of the
/// deeper endpoint in the canonical right layout) where it appears.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepeatedWeight {
    pub weight: u64,
    pub multiplicity: usize,
    pub levels: Vec<usize>,
}

/// A named bound comparison with both sides rendered exactly as rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: String,
    pub cmp: String,
    pub rhs: String,
    pub holds: bool,
}

impl BoundCheck {
    pub fn ge(name: &str, lhs: Ratio<i64>, rhs: Ratio<i64>) -> Self {
        BoundCheck {
            name: name.to_string(),
            lhs: ratio_str(lhs),
            cmp: ">=".to_string(),
            rhs: ratio_str(rhs),
            holds: lhs >= rhs,
        }
    }

    pub fn le(name: &str, lhs: Ratio<i64>, rhs: Ratio<i64>) -> Self {
        BoundCheck {
            name: name.to_string(),
            lhs: ratio_str(lhs),
            cmp: "<=".to_string(),
            rhs: ratio_str(rhs),
            holds: lhs <= rhs,
        }
    }

    pub fn eq(name: &str, lhs: Ratio<i64>, rhs: Ratio<i64>) -> Self {
        BoundCheck {
            name: name.to_string(),
            lhs: ratio_str(lhs),
            cmp: "==".to_string(),
            rhs: ratio_str(rhs),
            holds: lhs == rhs,
        }
    }
}

/// Exact rational rendering, always `numerator/denominator`.
pub fn ratio_str(r: Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Smallest integer ≥ r.
pub fn ceil_ratio(r: Ratio<i64>) -> i64 {
    r.ceil().to_integer()
}

/// Largest integer ≤ r.
pub fn floor_ratio(r: Ratio<i64>) -> i64 {
    r.floor().to_integer()
}

/// Everything the verifier can say about a labeling without knowing how it
/// was built. `bound_checks` starts empty; construction-specific helpers
/// append the bounds they promise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub injective: bool,
    pub max_label: u64,
    /// number of distinct edge weights
    pub epsilon: usize,
    /// labels form a bijection onto 0..=m and all m weights are distinct
    pub graceful: bool,
    /// greatest c with every edge having its lower endpoint label ≤ c and
    /// its upper endpoint label > c, if such a cut exists
    pub bipartite_cutoff: Option<u64>,
    /// theta_per_level[j] = level-j edges whose weight already appeared
    /// earlier in the level-by-level, left-to-right edge scan
    pub theta_per_level: Vec<usize>,
    pub repeated_weights: Vec<RepeatedWeight>,
    pub bound_checks: Vec<BoundCheck>,
}

impl VerificationReport {
    pub fn all_checks_hold(&self) -> bool {
        self.bound_checks.iter().all(|c| c.holds)
    }
}

/// Inspect a labeling against its tree. Fails only on malformed input
/// (wrong label-vector length); every property shortfall is reported, not
/// raised.
pub fn verify(t: &Tree, f: &Labeling) -> Result<VerificationReport> {
    let n = t.n();
    if f.labels.len() < n {
        return Err(Error::MissingLabel(f.labels.len()));
    }
    if f.labels.len() > n {
        return Err(Error::OutOfRange {
            what: "label vector length",
            value: f.labels.len(),
        });
    }
    let m = t.m() as u64;
    let injective = f.labels.iter().collect::<BTreeSet<_>>().len() == n;
    let max_label = f.labels.iter().copied().max().unwrap();

    let mut weight_count: BTreeMap<u64, usize> = BTreeMap::new();
    for &(u, v) in t.edges() {
        *weight_count.entry(f.weight(u, v)).or_insert(0) += 1;
    }
    let epsilon = weight_count.len();
    let graceful = injective && max_label <= m && epsilon as u64 == m;

    let bipartite_cutoff = if t.m() == 0 {
        None
    } else {
        let lo = t
            .edges()
            .iter()
            .map(|&(u, v)| f.labels[u].min(f.labels[v]))
            .max()
            .unwrap();
        let hi = t
            .edges()
            .iter()
            .map(|&(u, v)| f.labels[u].max(f.labels[v]))
            .min()
            .unwrap();
        if lo < hi {
            Some(lo)
        } else {
            None
        }
    };

    // level-by-level scan in the canonical right layout
    let lay = layout(t, Orientation::Right);
    let mut theta_per_level = vec![0usize; lay.levels.len()];
    let mut weight_levels: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for (j, level) in lay.levels.iter().enumerate().skip(1) {
        for &v in level {
            let w = f.weight(v, lay.parent[v].unwrap());
            weight_levels.entry(w).or_default().push(j);
            if !seen.insert(w) {
                theta_per_level[j] += 1;
            }
        }
    }
    let repeated_weights = weight_levels
        .into_iter()
        .filter(|(_, levels)| levels.len() > 1)
        .map(|(weight, levels)| RepeatedWeight {
            weight,
            multiplicity: levels.len(),
            levels,
        })
        .collect();

    Ok(VerificationReport {
        injective,
        max_label,
        epsilon,
        graceful,
        bipartite_cutoff,
        theta_per_level,
        repeated_weights,
        bound_checks: Vec::new(),
    })
}

/// Proper 2-coloring of the tree, color 0 on vertex 0.
pub fn two_coloring(t: &Tree) -> Vec<u8> {
    let dist = t.bfs_dist(0);
    dist.into_iter().map(|d| (d % 2) as u8).collect()
}

/// The complementary labeling m − f. Preserves every edge weight. Fails if
/// some label exceeds m.
pub fn complementary(t: &Tree, f: &Labeling) -> Result<Labeling> {
    let m = t.m() as u64;
    for (v, &l) in f.labels.iter().enumerate() {
        if l > m {
            return Err(Error::LabelOutOfRange {
                vertex: v,
                label: l,
                max: m,
            });
        }
    }
    Ok(Labeling::new(
        f.labels.iter().map(|&l| m - l).collect(),
        f.method,
    ))
}

/// Split a labeling into its two label-contiguous bipartition classes:
/// the class of the 0-labeled vertex must carry exactly `0..a` and the other
/// class `a..n`. Returns the two vertex sets (low class first).
pub fn contiguous_parts(t: &Tree, f: &Labeling) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = t.n();
    if f.labels.len() != n {
        return Err(Error::MissingLabel(f.labels.len().min(n)));
    }
    for (v, &l) in f.labels.iter().enumerate() {
        if l >= n as u64 {
            return Err(Error::LabelOutOfRange {
                vertex: v,
                label: l,
                max: n as u64 - 1,
            });
        }
    }
    if f.labels.iter().collect::<BTreeSet<_>>().len() != n {
        return Err(Error::PreconditionLabeling(
            "labels must be a bijection onto 0..n",
        ));
    }
    let colors = two_coloring(t);
    let zero_vertex = (0..n).find(|&v| f.labels[v] == 0).unwrap();
    let low_color = colors[zero_vertex];
    let low: Vec<usize> = (0..n).filter(|&v| colors[v] == low_color).collect();
    let high: Vec<usize> = (0..n).filter(|&v| colors[v] != low_color).collect();
    let a = low.len() as u64;
    let contiguous = low.iter().all(|&v| f.labels[v] < a) && high.iter().all(|&v| f.labels[v] >= a);
    if !contiguous {
        return Err(Error::NotContiguousBipartite);
    }
    Ok((low, high))
}

/// The inverse transform of a contiguous bipartite labeling: the low class
/// `0..a` maps through l ↦ a − 1 − l and the high class `a..n` through
/// l ↦ n + a − 1 − l. Every weight w becomes n − w, so the number of
/// distinct weights is preserved.
pub fn inverse(t: &Tree, f: &Labeling) -> Result<Labeling> {
    let (low, _) = contiguous_parts(t, f)?;
    let n = t.n() as u64;
    let a = low.len() as u64;
    let mut is_low = vec![false; t.n()];
    for &v in &low {
        is_low[v] = true;
    }
    let labels = f
        .labels
        .iter()
        .enumerate()
        .map(|(v, &l)| if is_low[v] { a - 1 - l } else { n + a - 1 - l })
        .collect();
    Ok(Labeling::new(labels, f.method))
}

/// Serialized form of a labeled tree: enough to rebuild the tree, the
/// labels, and how they were obtained, plus a free-form report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabelingDoc {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub labels: Vec<u64>,
    pub method: Method,
    pub report: serde_json::Value,
}

impl LabelingDoc {
    pub fn new(t: &Tree, f: &Labeling, report: serde_json::Value) -> Self {
        LabelingDoc {
            n: t.n(),
            edges: t.edges().to_vec(),
            labels: f.labels.clone(),
            method: f.method,
            report,
        }
    }

    pub fn tree(&self) -> Result<Tree> {
        Tree::new(self.n, self.edges.clone())
    }

    pub fn labeling(&self) -> Labeling {
        Labeling::new(self.labels.clone(), self.method)
    }
}
