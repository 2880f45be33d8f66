use gracelab_core::metrics::level_metrics;
use gracelab_core::oracle::{ensemble, enumerate_trees};
use gracelab_core::rrg::{rrg_bounds, rrg_label, rrg_label_checked, rrg_label_oriented, rrg_plan};
use gracelab_core::{layout, verify, Orientation, Tree};
use std::collections::BTreeSet;

#[test]
fn all_small_trees_get_sound_labelings_both_ways() {
    for n in 2..=8 {
        for t in enumerate_trees(n).unwrap() {
            for o in [Orientation::Left, Orientation::Right] {
                let (f, _) = rrg_label_oriented(&t, o).unwrap();
                let r = verify(&t, &f).unwrap();
                assert!(r.injective, "{:?}", t.edges());
                assert_eq!(r.epsilon, t.m(), "all weights distinct");
                let ex = level_metrics(&layout(&t, o)).ex;
                assert!(
                    r.max_label <= (t.m() + ex) as u64,
                    "labels confined to the excess range: {:?} {:?}",
                    t.edges(),
                    o
                );
            }
        }
    }
}

#[test]
fn caterpillars_are_graceful() {
    for n in 2..=10 {
        for t in enumerate_trees(n).unwrap() {
            if t.distance_class() > 1 {
                continue;
            }
            let (f, _) = rrg_label(&t).unwrap();
            let r = verify(&t, &f).unwrap();
            assert!(r.graceful, "caterpillar {:?}", t.edges());
        }
    }
}

#[test]
fn plans_tile_the_extended_range() {
    for t in ensemble(40) {
        let lay = layout(&t, Orientation::Left);
        let plan = rrg_plan(&lay);
        let mut blocks: Vec<(u64, u64)> = plan
            .levels
            .iter()
            .map(|l| (l.block_start, l.block_end))
            .collect();
        blocks.sort_unstable();
        assert_eq!(blocks.first().unwrap().0, 0);
        for w in blocks.windows(2) {
            assert_eq!(w[0].1 + 1, w[1].0, "blocks abut");
        }
        let ex = level_metrics(&lay).ex;
        assert_eq!(blocks.last().unwrap().1, (t.m() + ex) as u64);
    }
}

#[test]
fn lobster_bound_holds_on_the_ensemble_slice() {
    for t in ensemble(100) {
        let (f, _) = rrg_label(&t).unwrap();
        let r = verify(&t, &f).unwrap();
        let bound = rrg_bounds(t.m() as i64, t.diameter() as i64);
        assert!(
            (r.max_label as i64) <= bound,
            "max {} > bound {} on {:?}",
            r.max_label,
            bound,
            t.edges()
        );
    }
}

#[test]
fn checked_variant_reports_passing_bounds() {
    for t in ensemble(10) {
        let (_, _, report) = rrg_label_checked(&t).unwrap();
        assert!(report.bound_checks.iter().all(|c| c.holds));
        assert!(!report.bound_checks.is_empty());
    }
}

#[test]
fn weights_are_distinct_and_positive() {
    for t in ensemble(25) {
        let (f, _) = rrg_label(&t).unwrap();
        let weights: BTreeSet<u64> = t.edges().iter().map(|&(a, b)| f.weight(a, b)).collect();
        assert_eq!(weights.len(), t.m(), "no weight repeats");
        assert!(*weights.iter().next().unwrap() >= 1);
    }
}

#[test]
fn degenerate_and_tiny_cases() {
    let p2 = Tree::path(2).unwrap();
    let (f, _) = rrg_label(&p2).unwrap();
    assert!(verify(&p2, &f).unwrap().graceful);
    let star = Tree::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
    let (fs, _) = rrg_label(&star).unwrap();
    assert!(verify(&star, &fs).unwrap().graceful);
}
