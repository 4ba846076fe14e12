//! The way-below relation relative to a join doctrine, continuity and algebraicity
//! of finite lattices, and transposes of morphisms.

use std::collections::HashMap;

use serde::Serialize;

use crate::bits::BitSet;
use crate::doctrines::Doctrine;
use crate::error::{Error, Result};
use crate::interval::{in_unit, fmt_q, Q};
use crate::order::{FinPoset, LowerSetLattice, MonotoneMap};
use num_traits::Zero;

/// Upper bound on the elements generated when testing algebraicity by brute force.
pub const ALGEBRAIC_SUBSET_BOUND: usize = 16;

/// `Φ(X)` of a complete lattice together with the join of each member.
#[derive(Clone, Debug)]
pub struct PhiLattice {
    pub x: FinPoset,
    pub sets: Vec<BitSet>,
    pub joins: Vec<usize>,
    pub order: FinPoset,
}

impl PhiLattice {
    pub fn new(x: &FinPoset, d: &Doctrine) -> Result<Self> {
        if !x.is_complete_lattice() {
            return Err(Error::NotALattice);
        }
        let l = LowerSetLattice::new(x)?;
        let sets: Vec<BitSet> =
            l.elements.into_iter().map(|s| s.into_bits()).filter(|s| d.member_subset(x, s)).collect();
        let joins = sets.iter().map(|s| x.join_all(s.iter()).unwrap()).collect();
        let order = FinPoset::inclusion_order(&sets);
        Ok(PhiLattice { x: x.clone(), sets, joins, order })
    }

    /// `⋁ : Φ(X) -> X` as a monotone map.
    pub fn join_map(&self) -> MonotoneMap {
        MonotoneMap { dom: self.order.clone(), cod: self.x.clone(), values: self.joins.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct WayBelowRelation {
    pub base: FinPoset,
    pub doctrine: String,
    /// `waydown[x]` is `⇓x`.
    pub waydown: Vec<BitSet>,
}

impl WayBelowRelation {
    /// `y ≪ x`.
    pub fn way_below(&self, y: usize, x: usize) -> bool {
        self.waydown[x].contains(y)
    }

    /// `rel[y][x]` is `y ≪ x`.
    pub fn matrix(&self) -> Vec<Vec<bool>> {
        let n = self.base.len();
        (0..n).map(|y| (0..n).map(|x| self.way_below(y, x)).collect()).collect()
    }

    pub fn compacts(&self) -> Vec<usize> {
        (0..self.base.len()).filter(|&x| self.way_below(x, x)).collect()
    }
}

/// `⇓x = ⋂{φ ∈ Φ(X) | x <= ⋁φ}`, by literal intersection.
pub fn waydown(x: &FinPoset, d: &Doctrine) -> Result<WayBelowRelation> {
    let pl = PhiLattice::new(x, d)?;
    Ok(waydown_from(&pl, d))
}

fn waydown_from(pl: &PhiLattice, d: &Doctrine) -> WayBelowRelation {
    let n = pl.x.len();
    let waydown = (0..n)
        .map(|e| {
            let mut acc = BitSet::full(n);
            for (s, &j) in pl.sets.iter().zip(&pl.joins) {
                if pl.x.leq(e, j) {
                    acc.intersect_with(s);
                }
            }
            acc
        })
        .collect();
    WayBelowRelation { base: pl.x.clone(), doctrine: d.name().to_string(), waydown }
}

pub fn compact_elements(x: &FinPoset, d: &Doctrine) -> Result<Vec<usize>> {
    Ok(waydown(x, d)?.compacts())
}

#[derive(Clone, Debug, Serialize)]
pub struct ContinuityReport {
    pub continuous: bool,
    /// Outcomes of the four equivalent criteria, computed independently.
    pub criteria: [bool; 4],
    pub algebraic: bool,
    pub compacts: Vec<usize>,
    pub waybelow: Vec<Vec<bool>>,
    /// Family of `Φ`-lower sets (as element lists) on which meets fail to distribute.
    pub distributivity_witness: Option<Vec<Vec<usize>>>,
}

/// Runs all four continuity criteria and the algebraicity test; errors if the criteria disagree.
pub fn analyze(x: &FinPoset, d: &Doctrine) -> Result<ContinuityReport> {
    let pl = PhiLattice::new(x, d)?;
    let wb = waydown_from(&pl, d);
    let c1 = criterion_join(&pl, &wb);
    let (c2, left) = criterion_adjoint(&pl);
    let c3 = pl.join_map().preserves_meets();
    let witness = distributivity_witness(&pl);
    let c4 = witness.is_none();
    let criteria = [c1, c2, c3, c4];
    if criteria.iter().any(|&c| c != c1) {
        return Err(Error::Invariant(format!("continuity criteria disagree: {criteria:?}")));
    }
    if let Some(left) = left {
        // the left adjoint of ⋁ must be ⇓
        for e in 0..x.len() {
            if pl.sets[left.values[e]] != wb.waydown[e] {
                return Err(Error::Invariant(format!("left adjoint of ⋁ differs from ⇓ at {}", x.label(e))));
            }
        }
    }
    let algebraic = algebraic_from(&pl, &wb, d)?;
    Ok(ContinuityReport {
        continuous: c1,
        criteria,
        algebraic,
        compacts: wb.compacts(),
        waybelow: wb.matrix(),
        distributivity_witness: witness
            .map(|fam| fam.into_iter().map(|i| pl.sets[i].iter().collect()).collect()),
    })
}

pub fn is_continuous(x: &FinPoset, d: &Doctrine) -> Result<bool> {
    Ok(analyze(x, d)?.continuous)
}

pub fn is_algebraic(x: &FinPoset, d: &Doctrine) -> Result<bool> {
    let pl = PhiLattice::new(x, d)?;
    let wb = waydown_from(&pl, d);
    algebraic_from(&pl, &wb, d)
}

/// (i): some `φ ∈ Φ(X)` with `φ ⊆ ⇓x` and `x <= ⋁φ`.
fn criterion_join(pl: &PhiLattice, wb: &WayBelowRelation) -> bool {
    (0..pl.x.len()).all(|e| {
        pl.sets.iter().zip(&pl.joins).any(|(s, &j)| s.is_subset(&wb.waydown[e]) && pl.x.leq(e, j))
    })
}

/// (ii): `⋁ : Φ(X) -> X` has a left adjoint.
fn criterion_adjoint(pl: &PhiLattice) -> (bool, Option<MonotoneMap>) {
    let left = pl.join_map().left_adjoint();
    (left.is_some(), left)
}

/// (iv) via `⋀_i ⋁φ_i = ⋁ ⋂_i φ_i` for all finite families in `Φ(X)`.
///
/// Breadth-first search over reachable (intersection, meet) states, so the witness
/// returned is a smallest failing family.
pub fn distributivity_witness(pl: &PhiLattice) -> Option<Vec<usize>> {
    let x = &pl.x;
    let n = x.len();
    let top = x.top()?;
    let start = (BitSet::full(n), top);
    let mut parent: HashMap<(BitSet, usize), Option<((BitSet, usize), usize)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        let (inter, m) = &state;
        if x.join_all(inter.iter()) != Some(*m) {
            let mut fam = Vec::new();
            let mut cur = state.clone();
            while let Some(Some((prev, i))) = parent.get(&cur) {
                fam.push(*i);
                cur = prev.clone();
            }
            fam.reverse();
            return Some(fam);
        }
        for (i, (s, &j)) in pl.sets.iter().zip(&pl.joins).enumerate() {
            let next = (inter.intersection(s), x.meet(*m, j).unwrap());
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((state.clone(), i)));
                queue.push_back(next);
            }
        }
    }
    None
}

pub fn check_meet_distributivity(x: &FinPoset, d: &Doctrine) -> Result<bool> {
    Ok(distributivity_witness(&PhiLattice::new(x, d)?).is_none())
}

/// Closure of the compacts under `Φ`-joins; when it is all of `X`, also checks
/// `x ↦ X_Φ ∩ ↓x` is an isomorphism `X ≅ Φ(X_Φ)`.
fn algebraic_from(pl: &PhiLattice, wb: &WayBelowRelation, d: &Doctrine) -> Result<bool> {
    let x = &pl.x;
    let n = x.len();
    let compacts = BitSet::from_indices(n, wb.compacts());
    let mut gen = compacts.clone();
    loop {
        let mut grew = false;
        for e in 0..n {
            if gen.contains(e) {
                continue;
            }
            let below = gen.intersection(x.down(e));
            if generated_by_phi_join(x, d, &below, e)? {
                gen.insert(e);
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    if gen.count() != n {
        return Ok(false);
    }
    let (kp, elems) = x.induced(&compacts);
    let image: Vec<BitSet> = (0..n)
        .map(|e| BitSet::from_indices(kp.len(), (0..kp.len()).filter(|&i| x.leq(elems[i], e))))
        .collect();
    let target: Vec<BitSet> = crate::order::lower_sets(&kp).into_iter().filter(|s| d.member_subset(&kp, s)).collect();
    let mut sorted = image.clone();
    sorted.sort();
    sorted.dedup();
    let mut t = target.clone();
    t.sort();
    let order_ok = (0..n).all(|a| (0..n).all(|b| x.leq(a, b) == image[a].is_subset(&image[b])));
    if sorted != t || sorted.len() != n || !order_ok {
        return Err(Error::Invariant("X is generated by compacts but X ≇ Φ(X_Φ)".into()));
    }
    Ok(true)
}

fn generated_by_phi_join(x: &FinPoset, d: &Doctrine, cands: &BitSet, e: usize) -> Result<bool> {
    if x.join_all(cands.iter()) == Some(e) && d.member_subset(x, cands) {
        return Ok(true);
    }
    if d.as_builtin().is_some() {
        // a builtin join of a subset of ↓e reaching e is also reached by the whole set
        return Ok(false);
    }
    let c: Vec<usize> = cands.iter().collect();
    if c.len() > ALGEBRAIC_SUBSET_BOUND {
        return Err(Error::SizeGuard { what: "generators below an element", size: c.len(), bound: ALGEBRAIC_SUBSET_BOUND });
    }
    Ok((0u64..(1u64 << c.len())).any(|m| {
        let s = BitSet::from_indices(x.len(), (0..c.len()).filter(|&i| m >> i & 1 == 1).map(|i| c[i]));
        x.join_all(s.iter()) == Some(e) && d.member_subset(x, &s)
    }))
}

/// For all `z ≪ x` there is `y` with `z ≪ y ≪ x`.
pub fn check_interpolation(x: &FinPoset, d: &Doctrine) -> Result<bool> {
    if !is_continuous(x, d)? {
        return Err(Error::Precondition(format!("lattice is not {}-continuous", d.name())));
    }
    let wb = waydown(x, d)?;
    let n = x.len();
    Ok((0..n).all(|e| {
        (0..n).all(|z| !wb.way_below(z, e) || (0..n).any(|y| wb.way_below(z, y) && wb.way_below(y, e)))
    }))
}

#[derive(Clone, Debug)]
pub struct Transpose {
    pub left_adjoint: MonotoneMap,
    pub preserves_phi_joins: bool,
    pub left_preserves_way_below: bool,
    pub left_preserves_joins: bool,
}

/// `f ↦ f⁺` for a meet-preserving map between `Φ`-continuous lattices.
pub fn transpose_morphism(f: &MonotoneMap, d: &Doctrine) -> Result<Transpose> {
    if !f.preserves_meets() {
        return Err(Error::NoLeftAdjoint);
    }
    let left = f.left_adjoint().ok_or(Error::NoLeftAdjoint)?;
    for p in [&f.dom, &f.cod] {
        if !is_continuous(p, d)? {
            return Err(Error::NotContinuous(d.name().to_string()));
        }
    }
    let pl = PhiLattice::new(&f.dom, d)?;
    let preserves_phi_joins = pl.sets.iter().zip(&pl.joins).all(|(s, &j)| {
        f.cod.join_all(s.iter().map(|e| f.apply(e))) == Some(f.apply(j))
    });
    let wx = waydown(&f.dom, d)?;
    let wy = waydown(&f.cod, d)?;
    let m = f.cod.len();
    let left_preserves_way_below = (0..m)
        .all(|y| (0..m).all(|y2| !wy.way_below(y, y2) || wx.way_below(left.apply(y), left.apply(y2))));
    let left_preserves_joins = left.join_violation().is_none();
    if preserves_phi_joins != left_preserves_way_below {
        return Err(Error::Invariant("Φ-join preservation of f and ≪-preservation of f⁺ disagree".into()));
    }
    Ok(Transpose { left_adjoint: left, preserves_phi_joins, left_preserves_way_below, left_preserves_joins })
}

/// Closed form of `≪` on `[0,1]`: `<`, plus `0 ≪ 0` when `∅ ∉ Φ` and `r ≪ r` for `r > 0` when `ω ∉ Φ`.
pub fn interval_way_below(r: &Q, s: &Q, d: &Doctrine) -> Result<bool> {
    for v in [r, s] {
        if !in_unit(v) {
            return Err(Error::OutOfRange(fmt_q(v)));
        }
    }
    Ok(if r < s {
        true
    } else if r == s {
        if r.is_zero() {
            !d.contains_empty()
        } else {
            !d.contains_omega()
        }
    } else {
        false
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doctrines::Builtin;
    use crate::interval::q;
    use crate::order::{lattices_up_to, lower_sets, monotone_maps};

    fn d(b: Builtin) -> Doctrine {
        Doctrine::builtin(b)
    }

    /// Oracle for `⇓x`: intersect all lower sets in `Φ` whose join is above `x`, using a
    /// fresh subset enumeration rather than the lower-set enumerator.
    fn waydown_oracle(x: &FinPoset, d: &Doctrine, e: usize) -> Vec<usize> {
        let n = x.len();
        let mut acc: Vec<usize> = (0..n).collect();
        for m in 0u32..(1 << n) {
            let s = BitSet::from_indices(n, (0..n).filter(|&i| m >> i & 1 == 1));
            if x.is_lower(&s) && d.member(&x.induced(&s).0) && x.leq(e, x.join_all(s.iter()).unwrap()) {
                acc.retain(|&i| s.contains(i));
            }
        }
        acc
    }

    #[test]
    fn waydown_examples() {
        let c3 = FinPoset::chain(3);
        let w = waydown(&c3, &d(Builtin::AllPosets)).unwrap();
        assert_eq!(w.waydown.iter().map(|s| s.iter().collect::<Vec<_>>()).collect::<Vec<_>>(), vec![vec![], vec![0, 1], vec![0, 1, 2]]);
        let m3 = waydown(&FinPoset::m3(), &d(Builtin::AllPosets)).unwrap();
        assert_eq!(m3.waydown[4].iter().collect::<Vec<_>>(), vec![0]);
        for l in lattices_up_to(6).unwrap() {
            let w = waydown(&l, &d(Builtin::Directed)).unwrap();
            for a in 0..l.len() {
                for b in 0..l.len() {
                    assert_eq!(w.way_below(a, b), l.leq(a, b));
                }
            }
        }
        assert_eq!(waydown(&FinPoset::antichain(2), &d(Builtin::Directed)).unwrap_err(), Error::NotALattice);
    }

    #[test]
    fn waydown_matches_oracle_and_basic_laws() {
        for l in lattices_up_to(6).unwrap() {
            for b in Builtin::ALL {
                let dd = d(b);
                let w = waydown(&l, &dd).unwrap();
                let n = l.len();
                for e in 0..n {
                    assert_eq!(w.waydown[e].iter().collect::<Vec<_>>(), waydown_oracle(&l, &dd, e));
                }
                for a in 0..n {
                    for c in 0..n {
                        if w.way_below(a, c) {
                            assert!(l.leq(a, c));
                            for a2 in l.down(a).iter() {
                                for c2 in l.up(c).iter() {
                                    assert!(w.way_below(a2, c2));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn compact_examples() {
        let dia = FinPoset::diamond();
        assert_eq!(compact_elements(&dia, &d(Builtin::AllPosets)).unwrap(), vec![1, 2]);
        assert_eq!(compact_elements(&dia, &d(Builtin::NonemptyPosets)).unwrap(), vec![0, 1, 2]);
        for l in lattices_up_to(5).unwrap() {
            assert_eq!(compact_elements(&l, &d(Builtin::Directed)).unwrap().len(), l.len());
        }
    }

    #[test]
    fn continuity_examples() {
        let all = d(Builtin::AllPosets);
        let m3 = analyze(&FinPoset::m3(), &all).unwrap();
        assert!(!m3.continuous);
        assert_eq!(m3.distributivity_witness.as_ref().map(|f| f.len()), Some(2));
        let dia = analyze(&FinPoset::diamond(), &all).unwrap();
        assert!(dia.continuous && dia.algebraic);
        assert!(!check_meet_distributivity(&FinPoset::n5(), &all).unwrap());
        assert!(check_meet_distributivity(&FinPoset::chain(4), &all).unwrap());
        for l in lattices_up_to(6).unwrap() {
            let r = analyze(&l, &d(Builtin::Directed)).unwrap();
            assert!(r.continuous && r.algebraic);
        }
    }

    #[test]
    fn criteria_agree_and_match_distributivity() {
        for l in lattices_up_to(6).unwrap() {
            for b in Builtin::ALL {
                let r = analyze(&l, &d(b)).unwrap();
                if r.algebraic {
                    assert!(r.continuous);
                }
                if matches!(b, Builtin::Directed | Builtin::EmptyOrDirected) {
                    assert_eq!(r.continuous, r.algebraic);
                }
            }
            let r = analyze(&l, &d(Builtin::AllPosets)).unwrap();
            assert_eq!(r.continuous, l.is_distributive_lattice(), "{l:?}");
        }
    }

    #[test]
    fn interpolation() {
        let all = d(Builtin::AllPosets);
        assert!(check_interpolation(&FinPoset::diamond(), &all).unwrap());
        assert!(check_interpolation(&FinPoset::chain(3), &all).unwrap());
        assert!(matches!(check_interpolation(&FinPoset::m3(), &all), Err(Error::Precondition(_))));
        for l in lattices_up_to(6).unwrap() {
            for b in Builtin::ALL {
                if is_continuous(&l, &d(b)).unwrap() {
                    assert!(check_interpolation(&l, &d(b)).unwrap());
                }
            }
        }
    }

    #[test]
    fn transpose_examples() {
        let dia = FinPoset::diamond();
        let dir = d(Builtin::Directed);
        let t = transpose_morphism(&MonotoneMap::identity(&dia), &dir).unwrap();
        assert_eq!(t.left_adjoint, MonotoneMap::identity(&dia));
        assert!(t.preserves_phi_joins && t.left_preserves_way_below);
        let f = MonotoneMap::new(dia.clone(), FinPoset::chain(2), vec![0, 0, 1, 1]).unwrap();
        let t = transpose_morphism(&f, &d(Builtin::AllPosets)).unwrap();
        assert_eq!(t.left_adjoint.values, vec![0, 2]);
        assert_eq!(t.preserves_phi_joins, t.left_preserves_way_below);
        let top = MonotoneMap::constant(&FinPoset::chain(3), &dia, 3);
        let t = transpose_morphism(&top, &dir).unwrap();
        assert_eq!(t.left_adjoint.values, vec![0, 0, 0, 0]);
        assert!(t.preserves_phi_joins && t.left_preserves_way_below);
        let bot = MonotoneMap::constant(&FinPoset::chain(2), &FinPoset::chain(2), 0);
        assert_eq!(transpose_morphism(&bot, &dir).unwrap_err(), Error::NoLeftAdjoint);
    }

    #[test]
    fn transpose_iff_exhaustive() {
        let ls = lattices_up_to(4).unwrap();
        for a in &ls {
            for b in &ls {
                for f in monotone_maps(a, b) {
                    if !f.preserves_meets() {
                        continue;
                    }
                    for bb in [Builtin::Directed, Builtin::AllPosets, Builtin::NonemptyPosets] {
                        if is_continuous(a, &d(bb)).unwrap() && is_continuous(b, &d(bb)).unwrap() {
                            transpose_morphism(&f, &d(bb)).unwrap();
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn interval_way_below_examples() {
        assert!(interval_way_below(&q(1, 2), &q(3, 4), &d(Builtin::Directed)).unwrap());
        assert!(!interval_way_below(&q(1, 2), &q(1, 2), &d(Builtin::Directed)).unwrap());
        assert!(!interval_way_below(&q(0, 1), &q(0, 1), &d(Builtin::AllPosets)).unwrap());
        assert!(interval_way_below(&q(0, 1), &q(0, 1), &d(Builtin::Directed)).unwrap());
        assert!(interval_way_below(&q(3, 2), &q(0, 1), &d(Builtin::Directed)).is_err());
    }

    #[test]
    fn lower_set_lattices_are_algebraic() {
        for x in crate::order::posets_up_to(3).unwrap() {
            let l = LowerSetLattice::new(&x).unwrap();
            assert_eq!(l.len(), lower_sets(&x).len());
            for b in Builtin::ALL {
                assert!(is_algebraic(&l.order, &d(b)).unwrap());
            }
        }
    }
}
