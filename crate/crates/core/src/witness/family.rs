//! One-parameter families realizing each move as a degeneration.
//!
//! Vectors are polynomials in `τ` over the standard basis `e_ijk` of the
//! smaller element. For `τ ≠ 0` the family lies in the orbit of the larger
//! element; its limit at `τ = 0` is the standard configuration of the
//! smaller one.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::linalg::{rank, rank_of, Q};
use super::{
    flags_from_cells, identify_orbit, standard_configuration_of, Configuration, Coordinates,
};
use crate::flagcore::{DecoratedMatrix, Position};
use crate::moves::{apply_move, Move, MoveKind};
use crate::{Error, Result};

/// `Σ c · τ^p · e_k` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TVec {
    pub terms: BTreeMap<(usize, u32), i64>,
}

impl TVec {
    pub fn e(k: usize) -> Self {
        TVec {
            terms: BTreeMap::from([((k, 0), 1)]),
        }
    }

    pub fn tau(mut self, power: u32) -> Self {
        self.terms = self
            .terms
            .into_iter()
            .map(|((k, p), c)| ((k, p + power), c))
            .collect();
        self
    }

    pub fn plus(mut self, other: &TVec) -> Self {
        for (&key, &c) in &other.terms {
            let slot = self.terms.entry(key).or_insert(0);
            *slot += c;
            if *slot == 0 {
                self.terms.remove(&key);
            }
        }
        self
    }

    pub fn negated(mut self) -> Self {
        self.terms.values_mut().for_each(|c| *c = -*c);
        self
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a TVec>) -> TVec {
        items
            .into_iter()
            .fold(TVec::default(), |acc, v| acc.plus(v))
    }

    pub fn eval(&self, n: usize, tau: &Q) -> Vec<Q> {
        let mut v = vec![Q::zero(); n];
        for (&(k, p), &c) in &self.terms {
            v[k] += Q::from_integer(c.into()) * num_traits::pow(tau.clone(), p as usize);
        }
        v
    }

    /// Coefficient vector of `τ^p`.
    pub fn coefficient(&self, n: usize, power: u32) -> Vec<Q> {
        let mut v = vec![Q::zero(); n];
        for (&(k, p), &c) in &self.terms {
            if p == power {
                v[k] += Q::from_integer(c.into());
            }
        }
        v
    }

    pub fn lowest_power(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, p)| p).min()
    }
}

/// The vectors `v_ijk(τ)` of one move, grouped by cell of the larger matrix.
#[derive(Clone, Debug)]
pub struct Family {
    pub source: DecoratedMatrix,
    pub target: DecoratedMatrix,
    pub mv: Move,
    pub n: usize,
    pub cells: BTreeMap<Position, Vec<TVec>>,
    /// Cells whose first vectors sum to the generator of `A(τ)`. This is
    /// `Δ′` except for move V, where it is the set before taking maximal
    /// elements.
    pub line_support: Vec<Position>,
}

fn pop_last(cells: &mut BTreeMap<Position, Vec<TVec>>, p: Position) -> TVec {
    cells
        .get_mut(&p)
        .and_then(Vec::pop)
        .expect("positive entry")
}

fn take_first(cells: &mut BTreeMap<Position, Vec<TVec>>, p: Position) -> TVec {
    cells.get_mut(&p).expect("cell").remove(0)
}

impl Family {
    pub fn new(x: &DecoratedMatrix, mv: &Move) -> Result<Family> {
        let target = apply_move(x, mv)?;
        let m = x.matrix();
        let coords = Coordinates::new(m);
        let e1 = |p: Position| TVec::e(coords.get(p, 1));
        let circled = x.delta().positions();
        let below = |q: Position| -> TVec {
            TVec::sum(
                &circled
                    .iter()
                    .filter(|s| s.is_below(q))
                    .map(|&s| e1(s))
                    .collect::<Vec<_>>(),
            )
        };
        let mut cells: BTreeMap<Position, Vec<TVec>> = m
            .positions()
            .map(|p| {
                (
                    p,
                    (1..=m.at(p)).map(|k| TVec::e(coords.get(p, k))).collect(),
                )
            })
            .collect();
        let a = &mv.anchors;
        let pos = Position::new;
        let mut line_support = target.delta().positions().to_vec();

        match mv.kind {
            MoveKind::I => {
                let p1 = a[0];
                cells.get_mut(&p1).expect("cell")[0] = e1(p1).tau(1).plus(&below(p1));
            }
            MoveKind::II | MoveKind::IVb | MoveKind::IVc => {
                let (p0, p1) = (a[0], a[1]);
                let e00 = pop_last(&mut cells, p0);
                let e11 = pop_last(&mut cells, p1);
                cells
                    .get_mut(&pos(p0.i, p1.j))
                    .expect("cell")
                    .push(e00.clone().plus(&e11.tau(1)));
                cells.get_mut(&pos(p1.i, p0.j)).expect("cell").push(e00);
            }
            MoveKind::IIIa | MoveKind::IIIb => {
                let (p0, p1) = (a[0], a[1]);
                let (ne, sw) = (pos(p0.i, p1.j), pos(p1.i, p0.j));
                let (new_circle, other) = if mv.kind == MoveKind::IIIa {
                    (ne, sw)
                } else {
                    (sw, ne)
                };
                let e001 = take_first(&mut cells, p0);
                let e11 = pop_last(&mut cells, p1);
                cells.get_mut(&other).expect("cell").push(e001);
                let v = e11.tau(1).plus(&below(new_circle));
                cells.get_mut(&new_circle).expect("cell").insert(0, v);
            }
            MoveKind::IVa => {
                let (p0, p1, p2) = (a[0], a[1], a[2]);
                let e0 = take_first(&mut cells, p0);
                let e2 = take_first(&mut cells, p2);
                let c = pop_last(&mut cells, p1);
                cells
                    .get_mut(&pos(p1.i, p2.j))
                    .expect("cell")
                    .push(e2.plus(&c.clone().tau(1)));
                cells
                    .get_mut(&pos(p0.i, p1.j))
                    .expect("cell")
                    .push(e0.plus(&c.tau(1)));
                let corner = pos(p2.i, p0.j);
                cells
                    .get_mut(&corner)
                    .expect("cell")
                    .insert(0, below(corner));
            }
            MoveKind::V => {
                let p0 = a[0];
                let chain = &a[1..];
                let t = chain.len();
                line_support = circled
                    .iter()
                    .copied()
                    .filter(|s| !chain.contains(s))
                    .collect();
                line_support.push(pos(p0.i, chain[0].j));
                line_support.push(pos(chain[t - 1].i, p0.j));
                for &s in circled.iter().filter(|s| !chain.contains(s)) {
                    cells.get_mut(&s).expect("cell")[0] = e1(s).tau(1);
                }
                let e00 = pop_last(&mut cells, p0);
                let fronts: Vec<TVec> = chain.iter().map(|&s| take_first(&mut cells, s)).collect();
                let head = e00.clone().plus(&TVec::sum(&fronts).tau(1));
                cells
                    .get_mut(&pos(p0.i, chain[0].j))
                    .expect("cell")
                    .insert(0, head);
                cells
                    .get_mut(&pos(chain[t - 1].i, p0.j))
                    .expect("cell")
                    .insert(0, e00.clone().negated());
                for s in 0..t - 1 {
                    let v = e00
                        .clone()
                        .plus(&TVec::sum(&fronts[..=s]).tau(2).negated())
                        .plus(&TVec::sum(&fronts[s + 1..]).tau(1));
                    cells
                        .get_mut(&pos(chain[s].i, chain[s + 1].j))
                        .expect("cell")
                        .push(v);
                }
            }
        }

        for (p, vs) in &cells {
            if vs.len() as u32 != target.matrix().at(*p) {
                return Err(Error::NotAnOrbitInvariant(format!(
                    "family cell {p} has the wrong size"
                )));
            }
        }
        Ok(Family {
            source: x.clone(),
            target,
            mv: mv.clone(),
            n: coords.n,
            cells,
            line_support,
        })
    }

    /// `(A(τ), B_•(τ), C_•(τ))` for `τ ≠ 0`.
    pub fn configuration(&self, tau: &Q) -> Configuration {
        let values: BTreeMap<Position, Vec<Vec<Q>>> = self
            .cells
            .iter()
            .map(|(&p, vs)| (p, vs.iter().map(|v| v.eval(self.n, tau)).collect()))
            .collect();
        let m = self.target.matrix();
        let (b, c) = flags_from_cells(m.q(), m.r(), &values);
        let a = TVec::sum(self.line_support.iter().map(|p| &self.cells[p][0]));
        Configuration {
            n: self.n,
            a: vec![a.eval(self.n, tau)],
            b,
            c,
        }
    }

    /// The same flags with every vector replaced by its `τ^0` coefficient,
    /// and the line by the lowest-order coefficient of its generator.
    fn leading_terms(&self) -> Configuration {
        let values: BTreeMap<Position, Vec<Vec<Q>>> = self
            .cells
            .iter()
            .map(|(&p, vs)| (p, vs.iter().map(|v| v.coefficient(self.n, 0)).collect()))
            .collect();
        let m = self.target.matrix();
        let (b, c) = flags_from_cells(m.q(), m.r(), &values);
        let a = TVec::sum(self.line_support.iter().map(|p| &self.cells[p][0]));
        let low = a
            .lowest_power()
            .map_or_else(|| vec![Q::zero(); self.n], |p| a.coefficient(self.n, p));
        Configuration {
            n: self.n,
            a: vec![low],
            b,
            c,
        }
    }
}

/// The family of `mv` at `τ`; at `τ = 0` this is its limit, the standard
/// configuration of `x`.
pub fn degeneration_family(x: &DecoratedMatrix, mv: &Move, tau: &Q) -> Result<Configuration> {
    let family = Family::new(x, mv)?;
    if tau.is_zero() {
        Ok(standard_configuration_of(x))
    } else {
        Ok(family.configuration(tau))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub mv: Move,
    pub source: DecoratedMatrix,
    pub target: DecoratedMatrix,
    pub samples: Vec<String>,
    pub failures: Vec<String>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn sample_taus() -> Vec<Q> {
    vec![
        Q::one(),
        Q::from_integer(2.into()),
        Q::new(1.into(), 3.into()),
    ]
}

/// Checks that the family stays in the target orbit at the sampled `τ ≠ 0`
/// values, that its vectors form a basis there, and that at `τ = 0` every
/// leading term lies in the corresponding subspace of the limit.
pub fn verify_family(family: &Family) -> FamilyReport {
    let mut report = FamilyReport {
        mv: family.mv.clone(),
        source: family.source.clone(),
        target: family.target.clone(),
        samples: Vec::new(),
        failures: Vec::new(),
    };
    for tau in sample_taus() {
        let label = format!("{}/{}", tau.numer(), tau.denom());
        report.samples.push(label.clone());
        let conf = family.configuration(&tau);
        if conf.b.last().map_or(0, |top| rank(top)) != family.n {
            report
                .failures
                .push(format!("tau={label}: vectors are not a basis"));
        }
        match identify_orbit(&conf) {
            Ok(y) if y == family.target => {}
            Ok(y) => report.failures.push(format!(
                "tau={label}: lands in {y}, expected {}",
                family.target
            )),
            Err(e) => report.failures.push(format!("tau={label}: {e}")),
        }
    }

    report.samples.push("0".into());
    let limit = standard_configuration_of(&family.source);
    match identify_orbit(&limit) {
        Ok(y) if y == family.source => {}
        Ok(y) => report.failures.push(format!("tau=0: limit lands in {y}")),
        Err(e) => report.failures.push(format!("tau=0: {e}")),
    }
    let lead = family.leading_terms();
    let inside = |gens: &[Vec<Q>], space: &[Vec<Q>]| rank_of(&[gens, space]) == rank(space);
    for (i, (g, s)) in lead.b.iter().zip(&limit.b).enumerate() {
        if !inside(g, s) {
            report
                .failures
                .push(format!("tau=0: B_{} leaves its limit", i + 1));
        }
    }
    for (j, (g, s)) in lead.c.iter().zip(&limit.c).enumerate() {
        if !inside(g, s) {
            report
                .failures
                .push(format!("tau=0: C_{} leaves its limit", j + 1));
        }
    }
    if rank(&lead.a) != 1 || !inside(&lead.a, &limit.a) {
        report
            .failures
            .push("tau=0: A does not tend to the limit line".into());
    }
    report
}

pub fn verify_move_degeneration(x: &DecoratedMatrix, mv: &Move) -> FamilyReport {
    match Family::new(x, mv) {
        Ok(f) => verify_family(&f),
        Err(e) => FamilyReport {
            mv: mv.clone(),
            source: x.clone(),
            target: x.clone(),
            samples: Vec::new(),
            failures: vec![e.to_string()],
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flagcore::{from_permutation, Composition, Decoration};
    use crate::moves::applicable_moves;

    fn p(i: usize, j: usize) -> Position {
        Position::new(i, j)
    }

    #[test]
    fn move_v_family_at_one() {
        let m = crate::flagcore::TransportMatrix::identity(2);
        let x = DecoratedMatrix::new(m, Decoration::new(vec![p(2, 2)]).unwrap()).unwrap();
        let mv = Move::new(MoveKind::V, vec![p(1, 1), p(2, 2)]);
        let conf = degeneration_family(&x, &mv, &Q::one()).unwrap();
        assert_eq!(
            identify_orbit(&conf).unwrap(),
            from_permutation(&[2, 1], &[1, 2]).unwrap()
        );
        let limit = degeneration_family(&x, &mv, &Q::zero()).unwrap();
        assert_eq!(identify_orbit(&limit).unwrap(), x);
    }

    #[test]
    fn all_n2_edges_verify() {
        let ones = Composition::ones(2);
        for x in crate::decorated::enumerate_orbits(&ones, &ones) {
            for (mv, _) in applicable_moves(&x) {
                let r = verify_move_degeneration(&x, &mv);
                assert!(r.passed(), "{x} {mv}: {:?}", r.failures);
            }
        }
    }

    #[test]
    fn corrupted_families_are_caught() {
        let min = from_permutation(&[1, 2], &[1]).unwrap();
        let mv = Move::new(MoveKind::I, vec![p(2, 2)]);
        let mut f = Family::new(&min, &mv).unwrap();
        let coords = Coordinates::new(min.matrix());
        let (e11, e22) = (coords.get(p(1, 1), 1), coords.get(p(2, 2), 1));
        f.cells.get_mut(&p(2, 2)).unwrap()[0] = TVec::e(e22).plus(&TVec::e(e11).tau(1));
        assert!(!verify_family(&f).passed());

        let x = DecoratedMatrix::new(
            min.matrix().clone(),
            Decoration::new(vec![p(2, 2)]).unwrap(),
        )
        .unwrap();
        let mv = Move::new(MoveKind::V, vec![p(1, 1), p(2, 2)]);
        let mut f = Family::new(&x, &mv).unwrap();
        f.cells.get_mut(&p(1, 2)).unwrap()[0] = TVec::e(coords.get(p(1, 1), 1));
        assert!(!verify_family(&f).passed());
    }

    #[test]
    fn inapplicable_move_is_rejected() {
        let min = from_permutation(&[1, 2], &[1]).unwrap();
        let mv = Move::new(MoveKind::II, vec![p(1, 1), p(2, 2)]);
        assert!(matches!(
            degeneration_family(&min, &mv, &Q::one()),
            Err(Error::PreconditionFailed { .. })
        ));
    }
}
