use gracelab_core::amalgam::{
    amalgamate_rs, comet_alpha_label, normalize_to_zero, shell_alpha_label, stardust_decompose,
};
use gracelab_core::labeling::{contiguous_parts, floor_ratio};
use gracelab_core::oracle::{enumerate_trees, exact_alpha_size};
use gracelab_core::shell::is_shell;
use gracelab_core::{verify, Tree};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// random comet or stardust: center 0, some rays with a pendant leaf each,
/// some bare rays, some center leaves
fn random_stardust(rng: &mut ChaCha8Rng) -> Tree {
    let rays = rng.gen_range(1..=3);
    let bare = rng.gen_range(0..=2);
    let center_leaves = rng.gen_range(0..=2);
    let mut edges = Vec::new();
    let mut next = 1;
    for _ in 0..rays {
        let bv = next;
        edges.push((0, bv));
        next += 1;
        edges.push((bv, next));
        next += 1;
    }
    for _ in 0..bare {
        edges.push((0, next));
        next += 1;
    }
    for _ in 0..center_leaves {
        edges.push((0, next));
        next += 1;
    }
    Tree::new(next, edges).unwrap()
}

#[test]
fn amalgamation_adds_distinct_weight_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let t1 = random_stardust(&mut rng);
        let t2 = random_stardust(&mut rng);
        let f1 = comet_alpha_label(&t1, 0).unwrap();
        let f2 = comet_alpha_label(&t2, 0).unwrap();
        let am = amalgamate_rs(&t1, &f1.labeling, 0, &t2, &f2.labeling, 0).unwrap();
        assert_eq!(am.tree.n(), t1.n() + t2.n() - 1);
        assert!(
            am.epsilon >= am.eps_parts.0 + am.eps_parts.1,
            "parts {:?} gave {}",
            am.eps_parts,
            am.epsilon
        );
        // composite stays contiguously bipartite
        let r = verify(&am.tree, &am.labeling).unwrap();
        assert!(r.injective);
        assert!(r.bipartite_cutoff.is_some());
        contiguous_parts(&am.tree, &am.labeling).unwrap();
    }
}

#[test]
fn triple_amalgamation_still_adds() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..30 {
        let parts: Vec<Tree> = (0..3).map(|_| random_stardust(&mut rng)).collect();
        let labeled: Vec<_> = parts
            .iter()
            .map(|t| comet_alpha_label(t, 0).unwrap())
            .collect();
        let eps_sum: usize = labeled.iter().map(|o| o.epsilon).sum();
        let ab = amalgamate_rs(
            &parts[0],
            &labeled[0].labeling,
            0,
            &parts[1],
            &labeled[1].labeling,
            0,
        )
        .unwrap();
        // re-attach at the composite's 0-labeled vertex
        let zero = ab.labeling.labels.iter().position(|&l| l == 0).unwrap();
        let abc = amalgamate_rs(
            &ab.tree,
            &ab.labeling,
            zero,
            &parts[2],
            &labeled[2].labeling,
            0,
        )
        .unwrap();
        assert!(abc.epsilon >= eps_sum, "{} < {}", abc.epsilon, eps_sum);
    }
}

#[test]
fn normalization_keeps_weights_on_composites() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let t1 = random_stardust(&mut rng);
        let t2 = random_stardust(&mut rng);
        let f1 = comet_alpha_label(&t1, 0).unwrap();
        let f2 = comet_alpha_label(&t2, 0).unwrap();
        let am = amalgamate_rs(&t1, &f1.labeling, 0, &t2, &f2.labeling, 0).unwrap();
        let (a, _) = contiguous_parts(&am.tree, &am.labeling).unwrap();
        // every corner can be pulled back to zero without losing weights
        for v in 0..am.tree.n() {
            let l = am.labeling.labels[v];
            let corners = [0, a.len() as u64 - 1, a.len() as u64, am.tree.m() as u64];
            if corners.contains(&l) {
                let g = normalize_to_zero(&am.tree, &am.labeling, v).unwrap();
                assert_eq!(g.labels[v], 0);
                assert_eq!(g.epsilon(&am.tree), am.epsilon);
            }
        }
    }
}

#[test]
fn pinned_search_cannot_beat_the_free_oracle() {
    // comparing against the unpinned exhaustive optimum on small comets
    for t in enumerate_trees(7)
        .unwrap()
        .into_iter()
        .filter(|t| t.diameter() <= 4)
    {
        let best = exact_alpha_size(&t).unwrap();
        for attach in 0..t.n() {
            let out = comet_alpha_label(&t, attach).unwrap();
            assert!(out.exact);
            assert!(
                out.epsilon <= best,
                "pinned search beat the oracle on {:?}",
                t.edges()
            );
        }
    }
}

#[test]
fn classic_alpha_ceiling_is_never_exceeded() {
    // α-size ≤ (5/6)(m + 9) on every exactly-solved small tree
    for n in 2..=9 {
        for t in enumerate_trees(n).unwrap() {
            if t.diameter() > 4 {
                continue;
            }
            let alpha = exact_alpha_size(&t).unwrap() as i64;
            let ceiling = Ratio::new(5 * (t.m() as i64 + 9), 6);
            assert!(
                Ratio::from_integer(alpha) <= ceiling,
                "{:?}: {} > {}",
                t.edges(),
                alpha,
                ceiling
            );
        }
    }
}

#[test]
fn decomposition_partitions_every_shell() {
    for n in 5..=12 {
        for t in enumerate_trees(n).unwrap() {
            if !is_shell(&t) || t.diameter() < 4 {
                continue;
            }
            let d = stardust_decompose(&t).unwrap();
            assert_eq!(d.pieces.len(), t.diameter() - 3);
            assert_eq!(d.bridges.len(), t.diameter().saturating_sub(4));
            let mut all: Vec<usize> = d
                .pieces
                .iter()
                .flat_map(|p| p.vertices.iter().copied())
                .collect();
            all.sort_unstable();
            assert_eq!(all, (0..t.n()).collect::<Vec<_>>());
            for p in &d.pieces {
                assert!(p.tree.diameter() <= 4);
                assert_eq!(p.vertices[p.center], p.center_original);
            }
            for &(a, b) in &d.bridges {
                assert!(t.neighbors(a).contains(&b));
            }
        }
    }
}

#[test]
fn shell_alpha_meets_quota_on_all_small_shells() {
    for n in 1..=10 {
        for t in enumerate_trees(n).unwrap() {
            if !is_shell(&t) {
                continue;
            }
            let out = shell_alpha_label(&t).unwrap();
            let quota = floor_ratio(Ratio::new(5 * t.m() as i64 + 2, 6)) as usize;
            assert_eq!(out.certificate, quota);
            assert!(
                out.epsilon >= quota,
                "{:?}: {} < {}",
                t.edges(),
                out.epsilon,
                quota
            );
            let r = verify(&t, &out.labeling).unwrap();
            assert!(r.injective);
            assert_eq!(r.epsilon, out.epsilon);
            if t.n() > 1 {
                assert!(r.bipartite_cutoff.is_some());
                assert_eq!(r.max_label, t.m() as u64);
            }
            // every piece is accounted for
            if t.diameter() >= 4 {
                assert_eq!(out.pieces.len(), t.diameter() - 3);
                assert!(out.pieces.iter().all(|p| p.exact));
            }
        }
    }
}

#[test]
fn reassembly_reproduces_the_shell() {
    // the fold inside shell_alpha_label re-builds the tree from its pieces;
    // spot-check the decomposition round-trip explicitly on a d=6 shell
    let t = Tree::new(
        13,
        vec![
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (2, 7),
            (7, 8),
            (3, 9),
            (9, 10),
            (4, 11),
            (11, 12),
        ],
    )
    .unwrap();
    assert!(is_shell(&t));
    assert_eq!(t.diameter(), 6);
    let d = stardust_decompose(&t).unwrap();
    assert_eq!(d.pieces.len(), 3);
    assert_eq!(d.bridges.len(), 2);
    // rebuild: pieces plus bridges give back exactly the original edge set
    let mut edges: Vec<(usize, usize)> = d.bridges.clone();
    for p in &d.pieces {
        for &(a, b) in p.tree.edges() {
            edges.push((p.vertices[a], p.vertices[b]));
        }
    }
    let rebuilt = Tree::new(13, edges).unwrap();
    assert_eq!(rebuilt, t);
    assert_eq!(rebuilt.canonical_code(), t.canonical_code());
    // and the fold’s labeling covers it with the promised quality
    let out = shell_alpha_label(&t).unwrap();
    assert!(out.epsilon >= out.certificate);
}
