//! Duality between `Φ`-algebraic lattices and `Ψ^op`-inflattices on finite carriers.
//!
//! A lattice `X` goes to its compacts with the order reversed; an inflattice `A` goes to
//! `Φ(A^op)`. Birkhoff duality is the instance `Φ` = all posets.

use crate::bits::BitSet;
use crate::continuity::{is_algebraic, waydown, PhiLattice};
use crate::doctrines::{Doctrine, DoctrinePair};
use crate::error::{Error, Result};
use crate::order::{lower_sets, FinPoset, MonotoneMap};

/// The dual of a lattice: compacts of `X`, ordered opposite to `X`.
#[derive(Clone, Debug)]
pub struct DualPoset {
    pub poset: FinPoset,
    /// `elements[i]` is the element of `X` at position `i` of `poset`.
    pub elements: Vec<usize>,
}

fn subsets(n: usize) -> impl Iterator<Item = BitSet> {
    (0u64..(1u64 << n)).map(move |m| BitSet::from_indices(n, (0..n).filter(|&i| m >> i & 1 == 1)))
}

/// A subset of `a` whose `Ψ^op`-meet is required but missing.
pub fn missing_psi_op_meet(a: &FinPoset, psi: &Doctrine) -> Option<Vec<usize>> {
    if a.len() > 20 {
        return None;
    }
    let op = a.op();
    subsets(a.len())
        .find(|s| psi.member_subset(&op, s) && a.meet_all(s.iter()).is_none())
        .map(|s| s.iter().collect())
}

pub fn dual_of_lattice(x: &FinPoset, pair: &DoctrinePair) -> Result<DualPoset> {
    if !is_algebraic(x, &pair.phi)? {
        return Err(Error::NotAlgebraic(pair.phi.name().to_string()));
    }
    let compacts = BitSet::from_indices(x.len(), waydown(x, &pair.phi)?.compacts());
    let (k, elements) = x.induced(&compacts);
    let poset = k.op();
    if let Some(w) = missing_psi_op_meet(&poset, &pair.psi) {
        return Err(Error::MissingMeet(format!("compacts {:?} have no join among the compacts", w.iter().map(|&i| elements[i]).collect::<Vec<_>>())));
    }
    Ok(DualPoset { poset, elements })
}

/// `Φ(A^op)` as a lattice of lower sets of `A^op`, i.e. upper sets of `A`.
#[derive(Clone, Debug)]
pub struct InflatticeDual {
    pub lattice: FinPoset,
    /// `sets[i]` is the member of `Φ(A^op)` at position `i` of `lattice`.
    pub sets: Vec<BitSet>,
}

pub fn dual_of_inflattice(a: &FinPoset, pair: &DoctrinePair) -> Result<InflatticeDual> {
    if let Some(w) = missing_psi_op_meet(a, &pair.psi) {
        return Err(Error::MissingMeet(format!("subset {w:?} has no meet")));
    }
    let op = a.op();
    let sets: Vec<BitSet> = lower_sets(&op).into_iter().filter(|s| pair.phi.member_subset(&op, s)).collect();
    let lattice = FinPoset::inclusion_order(&sets);
    if !is_algebraic(&lattice, &pair.phi)? {
        return Err(Error::Invariant("Φ(A^op) is not Φ-algebraic".into()));
    }
    let compacts = BitSet::from_indices(lattice.len(), waydown(&lattice, &pair.phi)?.compacts());
    let (k, _) = lattice.induced(&compacts);
    if !k.is_isomorphic(&op) {
        return Err(Error::Invariant("compacts of Φ(A^op) are not isomorphic to A^op".into()));
    }
    Ok(InflatticeDual { lattice, sets })
}

/// The canonical isomorphism `X ≅ Φ(X_Φ)` and its inverse.
#[derive(Clone, Debug)]
pub struct DualityWitness {
    pub forward: MonotoneMap,
    pub backward: MonotoneMap,
    /// `sets[i]`: the subset of `X` (compacts below some element) at position `i` of `Φ(X_Φ)`.
    pub sets: Vec<BitSet>,
    pub phi: String,
    pub psi: String,
}

pub fn roundtrip(x: &FinPoset, pair: &DoctrinePair) -> Result<DualityWitness> {
    if !is_algebraic(x, &pair.phi)? {
        return Err(Error::NotAlgebraic(pair.phi.name().to_string()));
    }
    let n = x.len();
    let compacts = BitSet::from_indices(n, waydown(x, &pair.phi)?.compacts());
    let (k, elems) = x.induced(&compacts);
    let local: Vec<BitSet> = lower_sets(&k).into_iter().filter(|s| pair.phi.member_subset(&k, s)).collect();
    let sets: Vec<BitSet> = local.iter().map(|s| BitSet::from_indices(n, s.iter().map(|i| elems[i]))).collect();
    let phik = FinPoset::inclusion_order(&sets);
    let fwd = (0..n)
        .map(|e| {
            let s = compacts.intersection(x.down(e));
            sets.iter().position(|t| *t == s).ok_or_else(|| Error::Invariant(format!("compacts below {} not in Φ", x.label(e))))
        })
        .collect::<Result<Vec<_>>>()?;
    let bwd: Vec<usize> = sets.iter().map(|s| x.join_all(s.iter()).unwrap()).collect();
    let forward = MonotoneMap::new(x.clone(), phik.clone(), fwd)?;
    let backward = MonotoneMap::new(phik, x.clone(), bwd)?;
    let id_x = forward.then(&backward)?;
    let id_p = backward.then(&forward)?;
    if id_x != MonotoneMap::identity(x) || id_p != MonotoneMap::identity(&forward.cod) {
        return Err(Error::Invariant("round trip maps are not mutually inverse".into()));
    }
    for m in [&forward, &backward] {
        if m.meet_violation().is_some() || m.join_violation().is_some() {
            return Err(Error::Invariant("round trip map fails to preserve meets or joins".into()));
        }
    }
    Ok(DualityWitness { forward, backward, sets, phi: pair.phi.name().into(), psi: pair.psi.name().into() })
}

/// Checks `f` preserves meets and `Φ`-joins, naming the law that fails.
pub fn check_morphism(f: &MonotoneMap, phi: &Doctrine) -> Result<()> {
    if let Some(w) = f.meet_violation() {
        let w: Vec<String> = w.iter().map(|&i| f.dom.label(i)).collect();
        return Err(Error::NotAMorphism { law: "meet preservation", witness: format!("{w:?}") });
    }
    let pl = PhiLattice::new(&f.dom, phi)?;
    for (s, &j) in pl.sets.iter().zip(&pl.joins) {
        if f.cod.join_all(s.iter().map(|e| f.apply(e))) != Some(f.apply(j)) {
            let w: Vec<String> = s.iter().map(|i| f.dom.label(i)).collect();
            return Err(Error::NotAMorphism { law: "Φ-join preservation", witness: format!("{w:?}") });
        }
    }
    Ok(())
}

/// The dual of a morphism `f : X -> Y`: `f⁺` restricted to compacts, `Y_Φ^op -> X_Φ^op`.
#[derive(Clone, Debug)]
pub struct DualMorphism {
    pub map: MonotoneMap,
    pub source: DualPoset,
    pub target: DualPoset,
}

pub fn dual_morphism(f: &MonotoneMap, pair: &DoctrinePair) -> Result<DualMorphism> {
    check_morphism(f, &pair.phi)?;
    let left = f.left_adjoint().ok_or(Error::NoLeftAdjoint)?;
    let dx = dual_of_lattice(&f.dom, pair)?;
    let dy = dual_of_lattice(&f.cod, pair)?;
    let values = dy
        .elements
        .iter()
        .map(|&y| {
            let img = left.apply(y);
            dx.elements.iter().position(|&c| c == img).ok_or_else(|| {
                Error::Invariant(format!("f⁺ sends compact {} to non-compact {}", f.cod.label(y), f.dom.label(img)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let map = MonotoneMap::new(dy.poset.clone(), dx.poset.clone(), values)?;
    if let Some(w) = missing_meet_preservation(&map, &pair.psi) {
        return Err(Error::Invariant(format!("dual map does not preserve the Ψ^op-meet of {w:?}")));
    }
    Ok(DualMorphism { map, source: dy, target: dx })
}

fn missing_meet_preservation(m: &MonotoneMap, psi: &Doctrine) -> Option<Vec<usize>> {
    if m.dom.len() > 16 {
        return None;
    }
    let op = m.dom.op();
    subsets(m.dom.len())
        .filter(|s| psi.member_subset(&op, s))
        .find(|s| {
            let meet = m.dom.meet_all(s.iter()).unwrap();
            m.cod.meet_all(s.iter().map(|i| m.apply(i))) != Some(m.apply(meet))
        })
        .map(|s| s.iter().collect())
}
