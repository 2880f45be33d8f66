use gracelab_core::labeling::{
    ceil_ratio, complementary, contiguous_parts, floor_ratio, inverse, ratio_str, two_coloring,
    LabelingDoc,
};
use gracelab_core::rrg::rrg_label;
use gracelab_core::{verify, Error, Labeling, Method, Tree};
use num_rational::Ratio;
use std::collections::BTreeSet;

#[test]
fn verify_classifies_hand_labelings() {
    let p4 = Tree::path(4).unwrap();
    // graceful and bipartite
    let f = Labeling::new(vec![2, 1, 3, 0], Method::External);
    let r = verify(&p4, &f).unwrap();
    assert!(r.injective && r.graceful);
    assert_eq!(r.epsilon, 3);
    assert_eq!(r.max_label, 3);
    assert_eq!(r.bipartite_cutoff, Some(1));

    // injective but with a repeated weight
    let g = Labeling::new(vec![0, 1, 2, 3], Method::External);
    let rg = verify(&p4, &g).unwrap();
    assert!(rg.injective && !rg.graceful);
    assert_eq!(rg.epsilon, 1);
    assert_eq!(rg.repeated_weights.len(), 1);
    assert_eq!(rg.repeated_weights[0].weight, 1);
    assert_eq!(rg.repeated_weights[0].multiplicity, 3);

    // not injective
    let h = Labeling::new(vec![0, 1, 0, 2], Method::External);
    assert!(!verify(&p4, &h).unwrap().injective);
}

#[test]
fn verify_rejects_malformed_inputs() {
    let p3 = Tree::path(3).unwrap();
    assert!(matches!(
        verify(&p3, &Labeling::new(vec![0, 1], Method::External)),
        Err(Error::MissingLabel(2))
    ));
    let long = Labeling::new(vec![0, 1, 2, 3], Method::External);
    assert!(verify(&p3, &long).is_err());
}

#[test]
fn theta_accounts_for_every_lost_weight() {
    let p4 = Tree::path(4).unwrap();
    for labels in [vec![0, 1, 2, 3], vec![2, 1, 3, 0], vec![3, 0, 2, 1]] {
        let f = Labeling::new(labels, Method::External);
        let r = verify(&p4, &f).unwrap();
        let theta: usize = r.theta_per_level.iter().sum();
        assert_eq!(theta, p4.m() - r.epsilon);
    }
}

#[test]
fn complement_preserves_weights_and_involutes() {
    let t = Tree::new(7, vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]).unwrap();
    let (f, _) = rrg_label(&t).unwrap();
    let max = *f.labels.iter().max().unwrap();
    // complement against the label ceiling in use
    let weights = |l: &Labeling| -> BTreeSet<u64> {
        t.edges().iter().map(|&(a, b)| l.weight(a, b)).collect()
    };
    if max == t.m() as u64 {
        let c = complementary(&t, &f).unwrap();
        assert_eq!(weights(&c), weights(&f));
        assert_eq!(complementary(&t, &c).unwrap().labels, f.labels);
    }
}

#[test]
fn complement_requires_labels_within_range() {
    let p3 = Tree::path(3).unwrap();
    let f = Labeling::new(vec![0, 5, 1], Method::External);
    assert!(matches!(
        complementary(&p3, &f),
        Err(Error::LabelOutOfRange { .. })
    ));
}

#[test]
fn inverse_swaps_within_classes_and_involutes() {
    // bipartite graceful labeling of P5
    let t = Tree::path(5).unwrap();
    let f = Labeling::new(vec![0, 4, 1, 3, 2], Method::External);
    let (a, b) = contiguous_parts(&t, &f).unwrap();
    assert_eq!(a, vec![0, 2, 4]);
    assert_eq!(b, vec![1, 3]);
    let inv = inverse(&t, &f).unwrap();
    let weights = |l: &Labeling| -> BTreeSet<u64> {
        t.edges().iter().map(|&(x, y)| l.weight(x, y)).collect()
    };
    assert_eq!(weights(&inv), weights(&f));
    assert_eq!(inverse(&t, &inv).unwrap().labels, f.labels);
    // non-contiguous labelings are refused
    let bad = Labeling::new(vec![0, 2, 4, 1, 3], Method::External);
    assert!(inverse(&t, &bad).is_err());
}

#[test]
fn two_coloring_is_proper() {
    let t = Tree::new(6, vec![(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
    let col = two_coloring(&t);
    for &(a, b) in t.edges() {
        assert_ne!(col[a], col[b]);
    }
    assert_eq!(col[0], 0);
}

#[test]
fn doc_serializes_with_stable_field_order() {
    let t = Tree::path(3).unwrap();
    let f = Labeling::new(vec![1, 0, 2], Method::External);
    let r = verify(&t, &f).unwrap();
    let doc = LabelingDoc::new(&t, &f, serde_json::to_value(&r).unwrap());
    let json = serde_json::to_string(&doc).unwrap();
    let keys: Vec<&str> = [
        "\"n\"",
        "\"edges\"",
        "\"labels\"",
        "\"method\"",
        "\"report\"",
    ]
    .into_iter()
    .collect();
    let mut last = 0;
    for k in keys {
        let at = json.find(k).unwrap_or_else(|| panic!("missing {k}"));
        assert!(at >= last, "field {k} out of order in {json}");
        last = at;
    }
    let back: LabelingDoc = serde_json::from_str(&json).unwrap();
    assert_eq!(back.tree().unwrap(), t);
    assert_eq!(back.labeling().labels, f.labels);
}

#[test]
fn rational_helpers_render_and_round() {
    assert_eq!(ratio_str(Ratio::new(5, 2)), "5/2");
    assert_eq!(ratio_str(Ratio::from_integer(3)), "3/1");
    assert_eq!(ceil_ratio(Ratio::new(5, 2)), 3);
    assert_eq!(ceil_ratio(Ratio::from_integer(3)), 3);
    assert_eq!(floor_ratio(Ratio::new(-1, 2)), -1);
    assert_eq!(floor_ratio(Ratio::new(7, 3)), 2);
}
