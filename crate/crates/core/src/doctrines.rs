//! Join doctrines: classes of indexing posets for joins, given by finite membership
//! predicates together with declared flags for the empty poset and for `ω`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::order::{try_for_each_lower_set, lower_sets, monotone_maps, FinPoset, LowerSet, LowerSetLattice};

/// Default bound on `|X|` for [`phi_star`].
pub const DEFAULT_PHI_STAR_BOUND: usize = 6;
/// Bound on the number of families of lower sets visited by [`phi_star`].
pub const DEFAULT_FAMILY_BOUND: usize = 10_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Builtin {
    Directed,
    FiniteCofinality,
    EmptyOrDirected,
    NonemptyFiniteCofinality,
    NonemptyPosets,
    EmptyOrGreatest,
    AllPosets,
    HasGreatest,
}

impl Builtin {
    pub const ALL: [Builtin; 8] = [
        Builtin::Directed,
        Builtin::FiniteCofinality,
        Builtin::EmptyOrDirected,
        Builtin::NonemptyFiniteCofinality,
        Builtin::NonemptyPosets,
        Builtin::EmptyOrGreatest,
        Builtin::AllPosets,
        Builtin::HasGreatest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Directed => "directed",
            Builtin::FiniteCofinality => "finite-cofinality",
            Builtin::EmptyOrDirected => "empty-or-directed",
            Builtin::NonemptyFiniteCofinality => "nonempty-finite-cofinality",
            Builtin::NonemptyPosets => "nonempty",
            Builtin::EmptyOrGreatest => "empty-or-greatest",
            Builtin::AllPosets => "all",
            Builtin::HasGreatest => "has-greatest",
        }
    }

    pub fn dual(self) -> Builtin {
        use Builtin::*;
        match self {
            Directed => FiniteCofinality,
            FiniteCofinality => Directed,
            EmptyOrDirected => NonemptyFiniteCofinality,
            NonemptyFiniteCofinality => EmptyOrDirected,
            NonemptyPosets => EmptyOrGreatest,
            EmptyOrGreatest => NonemptyPosets,
            AllPosets => HasGreatest,
            HasGreatest => AllPosets,
        }
    }

    pub fn contains_empty(self) -> bool {
        use Builtin::*;
        matches!(self, FiniteCofinality | EmptyOrDirected | EmptyOrGreatest | AllPosets)
    }

    pub fn contains_omega(self) -> bool {
        use Builtin::*;
        matches!(self, Directed | EmptyOrDirected | NonemptyPosets | AllPosets)
    }

    /// On finite posets every builtin is decided by emptiness and having a greatest element.
    fn needs_greatest(self) -> bool {
        use Builtin::*;
        matches!(self, Directed | EmptyOrDirected | EmptyOrGreatest | HasGreatest)
    }

    pub fn parse(s: &str) -> Result<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == s).ok_or_else(|| Error::UnknownDoctrine(s.to_string()))
    }
}

type Pred = Arc<dyn Fn(&FinPoset) -> bool + Send + Sync>;

#[derive(Clone)]
enum Kind {
    Builtin(Builtin),
    Custom(Pred),
}

/// A join doctrine restricted to finite posets.
#[derive(Clone)]
pub struct Doctrine {
    name: String,
    kind: Kind,
    contains_empty: bool,
    contains_omega: bool,
}

impl fmt::Debug for Doctrine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Doctrine")
            .field("name", &self.name)
            .field("contains_empty", &self.contains_empty)
            .field("contains_omega", &self.contains_omega)
            .finish()
    }
}

impl Doctrine {
    pub fn builtin(b: Builtin) -> Self {
        Doctrine {
            name: b.name().to_string(),
            kind: Kind::Builtin(b),
            contains_empty: b.contains_empty(),
            contains_omega: b.contains_omega(),
        }
    }

    pub fn directed() -> Self {
        Self::builtin(Builtin::Directed)
    }

    pub fn all() -> Self {
        Self::builtin(Builtin::AllPosets)
    }

    /// A user-supplied predicate; `ω`-membership cannot be observed on finite posets and
    /// must be declared.
    pub fn custom(name: &str, contains_omega: bool, member: impl Fn(&FinPoset) -> bool + Send + Sync + 'static) -> Self {
        let contains_empty = member(&FinPoset::empty());
        Doctrine { name: name.to_string(), kind: Kind::Custom(Arc::new(member)), contains_empty, contains_omega }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::builtin(Builtin::parse(s)?))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn as_builtin(&self) -> Option<Builtin> {
        match self.kind {
            Kind::Builtin(b) => Some(b),
            Kind::Custom(_) => None,
        }
    }

    pub fn contains_empty(&self) -> bool {
        self.contains_empty
    }

    pub fn contains_omega(&self) -> bool {
        self.contains_omega
    }

    pub fn dual(&self) -> Option<Doctrine> {
        self.as_builtin().map(|b| Doctrine::builtin(b.dual()))
    }

    pub fn member(&self, p: &FinPoset) -> bool {
        match &self.kind {
            Kind::Builtin(_) => self.member_subset(p, &BitSet::full(p.len())),
            Kind::Custom(f) => f(p),
        }
    }

    /// Membership of the subposet of `p` induced on `s`.
    pub fn member_subset(&self, p: &FinPoset, s: &BitSet) -> bool {
        match &self.kind {
            Kind::Builtin(b) => {
                if s.is_empty() {
                    b.contains_empty()
                } else if b.needs_greatest() {
                    p.max_of(s).is_some()
                } else {
                    true
                }
            }
            Kind::Custom(f) => f(&p.induced(s).0),
        }
    }
}

/// One of the four sound pairs `(Φ, Ψ)`.
#[derive(Clone, Debug)]
pub struct DoctrinePair {
    pub phi: Doctrine,
    pub psi: Doctrine,
}

impl DoctrinePair {
    pub fn new(phi: Doctrine, psi: Doctrine) -> Self {
        DoctrinePair { phi, psi }
    }

    /// The pair whose `Φ` has the given name.
    pub fn for_phi(b: Builtin) -> Self {
        DoctrinePair { phi: Doctrine::builtin(b), psi: Doctrine::builtin(b.dual()) }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let b = Builtin::parse(s)?;
        Ok(Self::for_phi(b))
    }
}

pub fn builtin_doctrines() -> Vec<DoctrinePair> {
    [Builtin::Directed, Builtin::EmptyOrDirected, Builtin::NonemptyPosets, Builtin::AllPosets]
        .into_iter()
        .map(DoctrinePair::for_phi)
        .collect()
}

/// `Φ(X)`: lower sets of `x` belonging to `d`.
pub fn phi_of(d: &Doctrine, x: &FinPoset) -> Result<Vec<LowerSet>> {
    let l = LowerSetLattice::new(x)?;
    Ok(l.elements.into_iter().filter(|s| d.member_subset(x, s.bits())).collect())
}

/// Checks that `Φ(X)` contains the principal ideals and is closed under unions indexed
/// by members of `Φ(Φ(X))`. Returns a failing family on violation.
pub fn check_phi_closure(d: &Doctrine, x: &FinPoset) -> Result<Option<String>> {
    let phis = phi_of(d, x)?;
    for i in 0..x.len() {
        if !phis.iter().any(|s| s.bits() == x.down(i)) {
            return Ok(Some(format!("principal ideal of {} not in Φ(X)", x.label(i))));
        }
    }
    let sets: Vec<BitSet> = phis.iter().map(|s| s.bits().clone()).collect();
    let order = FinPoset::inclusion_order(&sets);
    if crate::order::count_lower_sets_bounded(&order, DEFAULT_FAMILY_BOUND) > DEFAULT_FAMILY_BOUND {
        return Err(Error::SizeGuard { what: "families in Φ(Φ(X))", size: DEFAULT_FAMILY_BOUND + 1, bound: DEFAULT_FAMILY_BOUND });
    }
    let mut witness = None;
    try_for_each_lower_set(&order, &mut |fam| {
        if !d.member_subset(&order, fam) {
            return true;
        }
        let mut u = BitSet::new(x.len());
        for i in fam.iter() {
            u.union_with(&sets[i]);
        }
        if d.member_subset(x, &u) {
            true
        } else {
            witness = Some(format!("union of {:?} is {:?}, not in Φ(X)", fam.iter().map(|i| &sets[i]).collect::<Vec<_>>(), u));
            false
        }
    });
    Ok(witness)
}

/// `Φ*(X)`: the `Φ`-compact elements of `L(X)`.
pub fn phi_star(d: &Doctrine, x: &FinPoset) -> Result<Vec<LowerSet>> {
    phi_star_bounded(d, x, DEFAULT_PHI_STAR_BOUND, DEFAULT_FAMILY_BOUND)
}

pub fn phi_star_bounded(d: &Doctrine, x: &FinPoset, size_bound: usize, family_bound: usize) -> Result<Vec<LowerSet>> {
    if x.len() > size_bound {
        return Err(Error::SizeGuard { what: "poset size for Φ*", size: x.len(), bound: size_bound });
    }
    let l = LowerSetLattice::new(x)?;
    let compact = compact_elements(d, &l.order, &l.elements.iter().map(|s| s.bits().clone()).collect::<Vec<_>>(), family_bound)?;
    Ok(compact.into_iter().map(|i| l.elements[i].clone()).collect())
}

/// Indices of `Φ`-compact elements of a lattice given as a family of sets closed under
/// union and ordered by inclusion (so joins are unions).
fn compact_elements(d: &Doctrine, order: &FinPoset, sets: &[BitSet], family_bound: usize) -> Result<Vec<usize>> {
    let k = sets.len();
    let mut ok = vec![true; k];
    let mut visited = 0usize;
    let finished = try_for_each_lower_set(order, &mut |fam| {
        visited += 1;
        if visited > family_bound {
            return false;
        }
        if !d.member_subset(order, fam) {
            return true;
        }
        let mut u = BitSet::new(sets.first().map_or(0, |s| s.len()));
        for i in fam.iter() {
            u.union_with(&sets[i]);
        }
        for (j, flag) in ok.iter_mut().enumerate() {
            if *flag && !fam.contains(j) && sets[j].is_subset(&u) {
                *flag = false;
            }
        }
        true
    });
    if !finished {
        return Err(Error::SizeGuard { what: "families visited by Φ* search", size: visited, bound: family_bound });
    }
    Ok((0..k).filter(|&j| ok[j]).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturationFailure {
    pub condition: &'static str,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturationReport {
    pub doctrine: String,
    pub corpus_size: usize,
    pub failures: Vec<SaturationFailure>,
}

impl SaturationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, condition: &str) -> bool {
        self.failures.iter().any(|f| f.condition == condition)
    }
}

fn show(p: &FinPoset) -> String {
    format!("poset(n={}, covers={:?})", p.len(), p.covers())
}

fn show_subset(s: &BitSet) -> String {
    format!("{:?}", s.iter().collect::<Vec<_>>())
}

/// Checks the four saturation conditions exhaustively over `corpus`, reporting the first
/// counterexample found for each.
pub fn check_saturation(d: &Doctrine, corpus: &[FinPoset]) -> SaturationReport {
    let mut failures = Vec::new();
    if !d.member(&FinPoset::chain(1)) {
        failures.push(SaturationFailure { condition: "unit", witness: "the singleton poset".into() });
    }
    if let Some(w) = corpus.iter().find_map(|p| mult_witness(d, p)) {
        failures.push(SaturationFailure { condition: "multiplication", witness: w });
    }
    if let Some(w) = funct_witness(d, corpus) {
        failures.push(SaturationFailure { condition: "cofinal-image", witness: w });
    }
    if let Some(w) = corpus.iter().find_map(|p| proper_witness(d, p)) {
        failures.push(SaturationFailure { condition: "cofinal-subposet", witness: w });
    }
    SaturationReport { doctrine: d.name().to_string(), corpus_size: corpus.len(), failures }
}

fn all_subsets(n: usize) -> impl Iterator<Item = BitSet> {
    (0u64..(1u64 << n)).map(move |m| BitSet::from_indices(n, (0..n).filter(|&i| m >> i & 1 == 1)))
}

/// `p ∉ Φ` written as a union of `Φ`-subposets whose inclusion poset is in `Φ`.
fn mult_witness(d: &Doctrine, p: &FinPoset) -> Option<String> {
    if d.member(p) || p.len() > 5 {
        return None;
    }
    let n = p.len();
    let members: Vec<BitSet> = all_subsets(n).filter(|s| d.member_subset(p, s)).collect();
    if members.len() > 20 {
        return None;
    }
    let full = BitSet::full(n);
    for m in 0u64..(1u64 << members.len()) {
        let chosen: Vec<BitSet> = (0..members.len()).filter(|&i| m >> i & 1 == 1).map(|i| members[i].clone()).collect();
        let mut u = BitSet::new(n);
        for c in &chosen {
            u.union_with(c);
        }
        if u != full {
            continue;
        }
        if d.member(&FinPoset::inclusion_order(&chosen)) {
            let parts: Vec<String> = chosen.iter().map(show_subset).collect();
            return Some(format!("{} is the union of {} which is in Φ, but is not in Φ", show(p), parts.join(" ")));
        }
    }
    None
}

fn funct_witness(d: &Doctrine, corpus: &[FinPoset]) -> Option<String> {
    let (ins, outs): (Vec<&FinPoset>, Vec<&FinPoset>) = corpus.iter().partition(|p| d.member(p));
    for src in &ins {
        for dst in &outs {
            for f in monotone_maps(src, dst) {
                let img = BitSet::from_indices(dst.len(), f.values.iter().copied());
                if dst.down_closure(&img) == BitSet::full(dst.len()) {
                    return Some(format!(
                        "{} ∈ Φ maps with cofinal image {:?} onto {} ∉ Φ",
                        show(src),
                        f.values,
                        show(dst)
                    ));
                }
            }
        }
    }
    None
}

fn proper_witness(d: &Doctrine, p: &FinPoset) -> Option<String> {
    if !d.member(p) || p.len() > 16 {
        return None;
    }
    let full = BitSet::full(p.len());
    all_subsets(p.len())
        .find(|s| p.down_closure(s) == full && !d.member_subset(p, s))
        .map(|s| format!("{} ∈ Φ has cofinal subposet {} ∉ Φ", show(p), show_subset(&s)))
}

#[derive(Clone, Debug, Serialize)]
pub struct SoundnessReport {
    pub phi: String,
    pub psi: String,
    /// Every lower set is generated under `Φ`-joins by `Ψ(X)`.
    pub generated: std::result::Result<(), String>,
    /// `None` when `X` is not a `Ψ`-suplattice.
    pub ideals: Option<std::result::Result<(), String>>,
    /// `Φ*(X) = Ψ(X)`.
    pub compacts: std::result::Result<(), String>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.generated.is_ok() && self.compacts.is_ok() && self.ideals.as_ref().is_none_or(|r| r.is_ok())
    }
}

/// Finite-scale soundness checks for a pair on `x`.
pub fn check_soundness_finite(pair: &DoctrinePair, x: &FinPoset) -> Result<SoundnessReport> {
    let (phi, psi) = (&pair.phi, &pair.psi);
    let all = lower_sets(x);
    let psi_sets: Vec<BitSet> = all.iter().filter(|s| psi.member_subset(x, s)).cloned().collect();

    let order = FinPoset::inclusion_order(&all);
    let idx = |s: &BitSet| all.iter().position(|t| t == s).unwrap();
    // closure of Ψ(X) under Φ-joins, computed in L(X)
    let mut gen: Vec<bool> = all.iter().map(|s| psi_sets.contains(s)).collect();
    loop {
        let mut grew = false;
        for (li, lam) in all.iter().enumerate() {
            if gen[li] {
                continue;
            }
            let below: Vec<usize> = (0..all.len()).filter(|&j| gen[j] && all[j].is_subset(lam)).collect();
            if phi_join_reaches(phi, &order, &all, &below, lam) {
                gen[li] = true;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let generated = match gen.iter().position(|g| !g) {
        None => Ok(()),
        Some(i) => Err(format!("lower set {} is not a Φ-join of Ψ(X)", show_subset(&all[i]))),
    };

    let is_psi_sup = all_subsets(x.len().min(16)).all(|s| !psi.member_subset(x, &s) || x.join_all(s.iter()).is_some());
    let ideals = is_psi_sup.then(|| {
        let phis: Vec<&BitSet> = all.iter().filter(|s| phi.member_subset(x, s)).collect();
        let ideals: Vec<&BitSet> = all
            .iter()
            .filter(|i| {
                all_subsets(x.len()).all(|s| {
                    !s.is_subset(i) || !psi.member_subset(x, &s) || x.join_all(s.iter()).is_some_and(|j| i.contains(j))
                })
            })
            .collect();
        if phis == ideals {
            Ok(())
        } else {
            Err(format!(
                "Φ(X) = {:?} but Ψ-ideals = {:?}",
                phis.iter().map(|s| show_subset(s)).collect::<Vec<_>>(),
                ideals.iter().map(|s| show_subset(s)).collect::<Vec<_>>()
            ))
        }
    });

    let star = phi_star(phi, x)?;
    let star_sets: Vec<BitSet> = star.into_iter().map(|s| s.into_bits()).collect();
    let mut expected = psi_sets.clone();
    expected.sort_by_key(|s| idx(s));
    let compacts = if star_sets == expected {
        Ok(())
    } else {
        let diff: Vec<String> = all
            .iter()
            .filter(|s| star_sets.contains(s) != expected.contains(s))
            .map(|s| format!("{} (compact: {}, in Ψ: {})", show_subset(s), star_sets.contains(s), expected.contains(s)))
            .collect();
        Err(format!("Φ* and Ψ differ at {}", diff.join(", ")))
    };
    Ok(SoundnessReport { phi: phi.name().into(), psi: psi.name().into(), generated, ideals, compacts })
}

/// Is `lam` the union of some `Φ`-subfamily of `cands` (indices into `all`)?
fn phi_join_reaches(phi: &Doctrine, order: &FinPoset, all: &[BitSet], cands: &[usize], lam: &BitSet) -> bool {
    let union_of = |ix: &mut dyn Iterator<Item = usize>| {
        let mut u = BitSet::new(lam.len());
        for i in ix {
            u.union_with(&all[i]);
        }
        u
    };
    let whole = BitSet::from_indices(all.len(), cands.iter().copied());
    if union_of(&mut cands.iter().copied()) == *lam && phi.member_subset(order, &whole) {
        return true;
    }
    if cands.len() > 16 {
        return false;
    }
    (0u64..(1u64 << cands.len())).any(|m| {
        let sub = BitSet::from_indices(all.len(), (0..cands.len()).filter(|&i| m >> i & 1 == 1).map(|i| cands[i]));
        union_of(&mut sub.iter()) == *lam && phi.member_subset(order, &sub)
    })
}

/// Whether `L(X)` is `Φ`-continuous.
pub fn check_doctrine_continuity(d: &Doctrine, x: &FinPoset) -> Result<bool> {
    let l = LowerSetLattice::new(x)?;
    crate::continuity::is_continuous(&l.order, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::posets_up_to;

    fn d(b: Builtin) -> Doctrine {
        Doctrine::builtin(b)
    }

    fn members(v: &[LowerSet]) -> Vec<Vec<usize>> {
        v.iter().map(|s| s.members()).collect()
    }

    /// Oracle for `Φ*(X)`: every subset of `L(X)` that is a lower set and in `Φ` is a
    /// family; `ψ` is compact iff it lies in every family whose union contains it.
    fn phi_star_oracle(d: &Doctrine, x: &FinPoset) -> Vec<Vec<usize>> {
        let all = lower_sets(x);
        let k = all.len();
        assert!(k <= 20);
        let order = FinPoset::inclusion_order(&all);
        let mut ok = vec![true; k];
        for m in 0u64..(1u64 << k) {
            let fam = BitSet::from_indices(k, (0..k).filter(|&i| m >> i & 1 == 1));
            if !order.is_lower(&fam) || !d.member(&order.induced(&fam).0) {
                continue;
            }
            let mut u = BitSet::new(x.len());
            for i in fam.iter() {
                u.union_with(&all[i]);
            }
            for j in 0..k {
                if all[j].is_subset(&u) && !fam.contains(j) {
                    ok[j] = false;
                }
            }
        }
        (0..k).filter(|&j| ok[j]).map(|j| all[j].iter().collect()).collect()
    }

    #[test]
    fn membership_examples() {
        assert!(!d(Builtin::Directed).member(&FinPoset::antichain(2)));
        assert!(d(Builtin::AllPosets).member(&FinPoset::empty()));
        assert!(!d(Builtin::Directed).member(&FinPoset::empty()));
        assert!(d(Builtin::HasGreatest).member(&FinPoset::chain(3)));
        for b in Builtin::ALL {
            assert!(d(b).member(&FinPoset::chain(1)));
            assert_eq!(d(b).member(&FinPoset::empty()), b.contains_empty());
        }
    }

    #[test]
    fn four_pairs_with_flag_consistency() {
        let pairs = builtin_doctrines();
        assert_eq!(pairs.len(), 4);
        for p in &pairs {
            assert_ne!(p.phi.contains_omega(), p.psi.contains_omega());
        }
        assert_eq!(pairs[0].psi.name(), "finite-cofinality");
        assert_eq!(DoctrinePair::parse("empty-or-directed").unwrap().psi.name(), "nonempty-finite-cofinality");
        assert!(Doctrine::parse("bounded").is_err());
    }

    #[test]
    fn phi_of_examples() {
        let a2 = FinPoset::antichain(2);
        assert_eq!(members(&phi_of(&d(Builtin::Directed), &a2).unwrap()), vec![vec![0], vec![1]]);
        assert_eq!(phi_of(&d(Builtin::AllPosets), &FinPoset::chain(2)).unwrap().len(), 3);
        assert_eq!(phi_of(&d(Builtin::NonemptyPosets), &FinPoset::chain(2)).unwrap().len(), 2);
    }

    #[test]
    fn phi_star_examples() {
        assert_eq!(members(&phi_star(&d(Builtin::AllPosets), &FinPoset::chain(2)).unwrap()), vec![vec![0], vec![0, 1]]);
        assert_eq!(phi_star(&d(Builtin::Directed), &FinPoset::antichain(2)).unwrap().len(), 4);
        assert_eq!(members(&phi_star(&d(Builtin::NonemptyPosets), &FinPoset::chain(1)).unwrap()), vec![vec![], vec![0]]);
        assert!(phi_star(&d(Builtin::AllPosets), &FinPoset::chain(7)).is_err());
    }

    #[test]
    fn phi_star_matches_oracle_and_partner() {
        for x in posets_up_to(4).unwrap() {
            if lower_sets(&x).len() > 16 {
                continue;
            }
            for pair in builtin_doctrines() {
                let fast = members(&phi_star(&pair.phi, &x).unwrap());
                assert_eq!(fast, phi_star_oracle(&pair.phi, &x), "{} on {x:?}", pair.phi.name());
                let psi: Vec<Vec<usize>> =
                    lower_sets(&x).iter().filter(|s| pair.psi.member_subset(&x, s)).map(|s| s.iter().collect()).collect();
                assert_eq!(fast, psi);
            }
        }
    }

    #[test]
    fn phi_closed_under_monad() {
        for x in posets_up_to(3).unwrap() {
            for b in Builtin::ALL {
                assert_eq!(check_phi_closure(&d(b), &x).unwrap(), None);
            }
        }
    }

    #[test]
    fn saturation_examples() {
        let corpus = posets_up_to(4).unwrap();
        assert!(check_saturation(&d(Builtin::Directed), &corpus).passed());
        assert!(check_saturation(&d(Builtin::AllPosets), &corpus).passed());
        let small = Doctrine::custom("size<=2", false, |p| p.len() <= 2);
        let r = check_saturation(&small, &corpus);
        assert!(r.failed("multiplication"));
        assert!(r.failed("cofinal-image"));
        assert!(!r.failed("unit"));
        let bad = Doctrine::custom("nonempty-antichains", false, |p| !p.is_empty() && p.covers().is_empty());
        assert!(check_saturation(&bad, &corpus).failed("cofinal-image"));
    }

    #[test]
    fn soundness_examples() {
        let all = DoctrinePair::for_phi(Builtin::AllPosets);
        assert!(check_soundness_finite(&all, &FinPoset::antichain(2)).unwrap().passed());
        let dir = DoctrinePair::for_phi(Builtin::Directed);
        assert!(check_soundness_finite(&dir, &FinPoset::diamond()).unwrap().passed());
        let wrong = DoctrinePair::new(d(Builtin::Directed), d(Builtin::HasGreatest));
        let r = check_soundness_finite(&wrong, &FinPoset::antichain(2)).unwrap();
        assert!(r.compacts.is_err());
        for x in posets_up_to(4).unwrap() {
            for pair in builtin_doctrines() {
                assert!(check_soundness_finite(&pair, &x).unwrap().passed(), "{} on {x:?}", pair.phi.name());
            }
        }
    }

    #[test]
    fn doctrine_continuity_examples() {
        assert!(check_doctrine_continuity(&d(Builtin::Directed), &FinPoset::chain(2)).unwrap());
        assert!(check_doctrine_continuity(&d(Builtin::AllPosets), &FinPoset::antichain(2)).unwrap());
        for b in Builtin::ALL {
            assert!(check_doctrine_continuity(&d(b), &FinPoset::empty()).unwrap());
        }
    }
}
