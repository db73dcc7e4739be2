use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::decorated::{enumerate_orbits, rbar_table, RBarTable};
use crate::flagcore::{Composition, DecoratedMatrix};
use crate::twoflags::{rank_table, RankTable};

use super::{applicable_moves, Move, MoveKind};

/// Orbits for fixed `(b, c)` with the single-move relation as edges.
#[derive(Clone, Debug)]
pub struct Poset {
    pub elements: Vec<DecoratedMatrix>,
    /// `(smaller, larger)` element ids, sorted and duplicate-free.
    pub covers: Vec<(usize, usize)>,
    /// Move kinds realizing each entry of `covers`.
    pub edge_kinds: Vec<Vec<MoveKind>>,
    /// Every applicable move per element, in canonical move order.
    pub moves: Vec<Vec<(Move, usize)>>,
    index: HashMap<DecoratedMatrix, usize>,
}

impl Poset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, x: &DecoratedMatrix) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Length of the longest edge path ending at each element.
    pub fn levels(&self) -> Vec<usize> {
        let n = self.len();
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.covers {
            indeg[b] += 1;
            out[a].push(b);
        }
        let mut level = vec![0usize; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&k| indeg[k] == 0).collect();
        while let Some(a) = queue.pop_front() {
            for &b in &out[a] {
                level[b] = level[b].max(level[a] + 1);
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    queue.push_back(b);
                }
            }
        }
        level
    }

    /// Number of elements at each level, bottom-up.
    pub fn level_sizes(&self) -> Vec<usize> {
        let levels = self.levels();
        let top = levels.iter().copied().max().unwrap_or(0);
        let mut sizes = vec![0; top + 1];
        for l in levels {
            sizes[l] += 1;
        }
        sizes
    }
}

impl Serialize for Poset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Poset", 2)?;
        st.serialize_field("elements", &self.elements)?;
        st.serialize_field("covers", &self.covers)?;
        st.end()
    }
}

pub fn build_poset(b: &Composition, c: &Composition) -> Poset {
    let elements = enumerate_orbits(b, c);
    let index: HashMap<DecoratedMatrix, usize> = elements
        .iter()
        .enumerate()
        .map(|(k, x)| (x.clone(), k))
        .collect();
    let mut edges: BTreeMap<(usize, usize), BTreeSet<MoveKind>> = BTreeMap::new();
    let mut moves = Vec::with_capacity(elements.len());
    for (k, x) in elements.iter().enumerate() {
        let mut here = Vec::new();
        for (mv, y) in applicable_moves(x) {
            let t = index[&y];
            edges.entry((k, t)).or_default().insert(mv.kind);
            here.push((mv, t));
        }
        moves.push(here);
    }
    let covers = edges.keys().copied().collect();
    let edge_kinds = edges
        .into_values()
        .map(|s| s.into_iter().collect())
        .collect();
    Poset {
        elements,
        covers,
        edge_kinds,
        moves,
        index,
    }
}

/// Outcome of the brute-force comparison of the move order, the rank order
/// and the cover relation.
#[derive(Clone, Debug, Default, Serialize)]
pub struct EquivalenceReport {
    pub elements: usize,
    pub covers: usize,
    pub move_records: usize,
    pub comparable_pairs: usize,
    pub chains_checked: usize,
    pub counterexamples: Vec<String>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Fixed-width bit set over element ids.
#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    fn get(&self, k: usize) -> bool {
        self.0[k / 64] >> (k % 64) & 1 == 1
    }

    fn meets(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
}

fn tables_leq(x: &(RankTable, RBarTable), y: &(RankTable, RBarTable)) -> bool {
    let rows = |t: &Vec<Vec<u32>>, u: &Vec<Vec<u32>>| {
        t.iter()
            .zip(u)
            .all(|(a, b)| a.iter().zip(b).all(|(p, q)| p >= q))
    };
    rows(&x.0.values, &y.0.values) && rows(&x.1.values, &y.1.values)
}

/// Checks, over all pairs: move reachability agrees with the rank order;
/// each move is a cover; each cover is a move; the greedy chain reaches
/// every comparable target.
pub fn verify_equivalence(b: &Composition, c: &Composition) -> EquivalenceReport {
    let poset = build_poset(b, c);
    let n = poset.len();
    let mut report = EquivalenceReport {
        elements: n,
        covers: poset.covers.len(),
        move_records: poset.moves.iter().map(Vec::len).sum(),
        ..Default::default()
    };
    let name = |k: usize| poset.elements[k].notation();

    let tables: Vec<_> = poset
        .elements
        .iter()
        .map(|x| (rank_table(x.matrix()), rbar_table(x)))
        .collect();
    let mut up = vec![Bits::new(n); n];
    let mut down = vec![Bits::new(n); n];
    for x in 0..n {
        for y in 0..n {
            if x != y && tables_leq(&tables[x], &tables[y]) {
                up[x].set(y);
                down[y].set(x);
            }
        }
    }
    let leq = |x: usize, y: usize| x == y || up[x].get(y);

    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &poset.covers {
        succ[a].push(b);
    }
    for x in 0..n {
        let mut seen = vec![false; n];
        seen[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(a) = queue.pop_front() {
            for &b in &succ[a] {
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        for y in 0..n {
            if seen[y] != leq(x, y) {
                report.counterexamples.push(format!(
                    "reachability {} but rank order {}: {} vs {}",
                    seen[y],
                    leq(x, y),
                    name(x),
                    name(y)
                ));
            }
        }
    }

    let edge_set: BTreeSet<(usize, usize)> = poset.covers.iter().copied().collect();
    for x in 0..n {
        for y in 0..n {
            if !up[x].get(y) {
                continue;
            }
            report.comparable_pairs += 1;
            let is_cover = !up[x].meets(&down[y]);
            let is_edge = edge_set.contains(&(x, y));
            if is_edge && !is_cover {
                let z = (0..n)
                    .find(|&z| up[x].get(z) && down[y].get(z))
                    .expect("intermediate");
                report.counterexamples.push(format!(
                    "move is not a cover: {} -> {} (via {})",
                    name(x),
                    name(y),
                    name(z)
                ));
            }
            if is_cover && !is_edge {
                report.counterexamples.push(format!(
                    "cover without a move: {} -> {}",
                    name(x),
                    name(y)
                ));
            }
        }
    }
    for &(x, y) in &poset.covers {
        if !up[x].get(y) {
            report
                .counterexamples
                .push(format!("move does not go up: {} -> {}", name(x), name(y)));
        }
    }

    for x in 0..n {
        for y in 0..n {
            if !up[x].get(y) {
                continue;
            }
            let mut cur = x;
            let mut steps = 0;
            while cur != y && steps <= n {
                match poset.moves[cur].iter().find(|(_, t)| leq(*t, y)) {
                    Some(&(_, t)) => cur = t,
                    None => break,
                }
                steps += 1;
            }
            if cur == y {
                report.chains_checked += 1;
            } else {
                report
                    .counterexamples
                    .push(format!("chain stalls: {} -> {}", name(x), name(y)));
            }
        }
    }
    report
}
