use std::collections::{BTreeMap, BTreeSet};

use triflag::decorated::{decorations_of, dimension_full_flags, enumerate_orbits, orbit_dimension};
use triflag::flagcore::from_permutation;
use triflag::{build_poset, Composition, TransportMatrix};

/// The n = 3 diagram, bottom-up and left to right within each level.
const LABELS: [(&str, &str); 28] = [
    ("min", "(1) . . / . 1 . / . . 1"),
    ("a", "1 . . / . (1) . / . . 1"),
    ("b", "(1) . . / . . 1 / . 1 ."),
    ("c", ". 1 . / (1) . . / . . 1"),
    ("d", ". (1) . / 1 . . / . . 1"),
    ("e", "1 . . / . 1 . / . . (1)"),
    ("f", "1 . . / . . (1) / . 1 ."),
    ("g", "1 . . / . . 1 / . (1) ."),
    ("h", ". (1) . / (1) . . / . . 1"),
    ("i", ". . 1 / (1) . . / . 1 ."),
    ("j", ". . (1) / 1 . . / . 1 ."),
    ("k", ". (1) . / . . 1 / 1 . ."),
    ("l", ". 1 . / . . 1 / (1) . ."),
    ("m", ". 1 . / 1 . . / . . (1)"),
    ("n", "1 . . / . . (1) / . (1) ."),
    ("o", ". . (1) / (1) . . / . 1 ."),
    ("p", ". (1) . / . . 1 / (1) . ."),
    ("q", ". 1 . / . . (1) / 1 . ."),
    ("r", ". . 1 / 1 . . / . (1) ."),
    ("s", ". . 1 / . (1) . / 1 . ."),
    ("t", ". . (1) / . 1 . / 1 . ."),
    ("u", ". . 1 / . 1 . / (1) . ."),
    ("v", ". . (1) / 1 . . / . (1) ."),
    ("w", ". 1 . / . . (1) / (1) . ."),
    ("x", ". . (1) / . (1) . / 1 . ."),
    ("y", ". . (1) / . 1 . / (1) . ."),
    ("z", ". . 1 / . (1) . / (1) . ."),
    ("max", ". . (1) / . (1) . / (1) . ."),
];

/// The covering relations listed under the diagram, plus `z ⋖ max`, which
/// the list leaves out although the diagram has five elements below max.
/// Two listed pairs, `i ⋖ p` and `r ⋖ w`, join the incomparable
/// permutations 231 and 312; they are replaced by `i ⋖ o` and `r ⋖ v`.
const COVERS: &str = "min<a min<b min<c min<d a<e a<f a<g a<h b<f b<g b<i b<j b<k b<l c<h c<i c<l \
    d<h d<j d<k e<m e<n f<n f<o f<q g<n g<p g<r h<m h<o h<p h<q h<r h<s i<o i<r i<s i<u j<o j<t \
    k<p k<q k<s k<t l<p l<u m<v m<w n<v n<w n<y o<v o<x o<y p<w p<y p<z q<w q<x r<v r<z s<x s<z \
    t<x t<y u<y u<z v<max w<max x<max y<max z<max";

fn labelled_covers(n: usize) -> BTreeSet<(String, String)> {
    let p = build_poset(&Composition::ones(n), &Composition::ones(n));
    let label: BTreeMap<String, &str> = LABELS.iter().map(|&(l, s)| (s.to_string(), l)).collect();
    p.covers
        .iter()
        .map(|&(x, y)| {
            (
                label[&p.elements[x].notation()].to_string(),
                label[&p.elements[y].notation()].to_string(),
            )
        })
        .collect()
}

#[test]
fn n2_diagram() {
    let p = build_poset(&Composition::ones(2), &Composition::ones(2));
    let names: BTreeSet<String> = p.elements.iter().map(|x| x.notation()).collect();
    let expected: BTreeSet<String> = [
        "(1) . / . 1",
        "1 . / . (1)",
        ". (1) / 1 .",
        ". 1 / (1) .",
        ". (1) / (1) .",
    ]
    .map(String::from)
    .into();
    assert_eq!(names, expected);
    assert_eq!(p.covers.len(), 6);
    let min = p
        .index_of(&from_permutation(&[1, 2], &[1]).unwrap())
        .unwrap();
    let max = p
        .index_of(&from_permutation(&[2, 1], &[1, 2]).unwrap())
        .unwrap();
    assert_eq!(p.covers.iter().filter(|c| c.0 == min).count(), 3);
    assert_eq!(p.covers.iter().filter(|c| c.1 == max).count(), 3);
}

#[test]
fn n3_labels_are_the_orbits() {
    let names: BTreeSet<String> = enumerate_orbits(&Composition::ones(3), &Composition::ones(3))
        .iter()
        .map(|x| x.notation())
        .collect();
    let labels: BTreeSet<String> = LABELS.iter().map(|(_, s)| s.to_string()).collect();
    assert_eq!(names, labels);
    let p = from_permutation(&[3, 1, 2], &[1, 2]).unwrap();
    assert_eq!(p.notation(), LABELS[16].1);
}

#[test]
fn n3_covers_match_the_list() {
    let expected: BTreeSet<(String, String)> = COVERS
        .split_whitespace()
        .map(|e| {
            let (a, b) = e.split_once('<').unwrap();
            (a.to_string(), b.to_string())
        })
        .collect();
    assert_eq!(expected.len(), 72);
    assert_eq!(labelled_covers(3), expected);
}

#[test]
fn misprinted_pairs_are_incomparable() {
    let find = |l: &str| {
        let s = LABELS.iter().find(|p| p.0 == l).unwrap().1;
        enumerate_orbits(&Composition::ones(3), &Composition::ones(3))
            .into_iter()
            .find(|x| x.notation() == s)
            .unwrap()
    };
    for (x, y) in [("i", "p"), ("r", "w")] {
        let v = triflag::decorated::compare(&find(x), &find(y))
            .unwrap()
            .verdict;
        assert_eq!(v, triflag::decorated::Verdict::Incomparable, "{x} {y}");
    }
}

#[test]
fn n3_levels_follow_the_labels() {
    let p = build_poset(&Composition::ones(3), &Composition::ones(3));
    let levels = p.levels();
    let bounds = [0, 1, 5, 13, 22, 27, 28];
    for (k, &(l, s)) in LABELS.iter().enumerate() {
        let x = p.elements.iter().position(|x| x.notation() == s).unwrap();
        let want = bounds
            .windows(2)
            .position(|w| (w[0]..w[1]).contains(&k))
            .unwrap();
        assert_eq!(levels[x], want, "{l}");
    }
}

#[test]
fn decorations_per_permutation() {
    let counts: Vec<usize> = [
        [1, 2, 3],
        [2, 1, 3],
        [1, 3, 2],
        [2, 3, 1],
        [3, 1, 2],
        [3, 2, 1],
    ]
    .iter()
    .map(|w| decorations_of(&TransportMatrix::permutation(w).unwrap()).len())
    .collect();
    assert_eq!(counts, vec![3, 4, 4, 5, 5, 7]);
}

#[test]
fn dimensions() {
    assert_eq!(dimension_full_flags(&[1, 2, 3], &[1]).unwrap(), 3);
    assert_eq!(dimension_full_flags(&[3, 2, 1], &[1, 2, 3]).unwrap(), 8);
    assert_eq!(dimension_full_flags(&[3, 1, 2], &[1, 2]).unwrap(), 6);
    let p = build_poset(&Composition::ones(3), &Composition::ones(3));
    for (x, level) in p.elements.iter().zip(p.levels()) {
        assert_eq!(orbit_dimension(x).unwrap(), level as u64 + 3, "{x}");
    }
}
