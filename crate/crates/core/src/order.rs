//! Finite posets, monotone maps, lower sets and the lower-set (free suplattice) monad.
//!
//! Elements of a [`FinPoset`] are the indices `0..n`. The order is stored twice, as
//! up-set rows and down-set columns, so both principal filters and principal ideals
//! are single lookups.

use std::collections::HashMap;

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// Default bound on the number of lower sets materialised by [`LowerSetLattice::new`].
pub const DEFAULT_LOWER_SET_BOUND: usize = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinPoset {
    n: usize,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for FinPoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let covers = self.covers();
        write!(f, "FinPoset(n={}, covers={:?})", self.n, covers)
    }
}

impl FinPoset {
    /// Validates a boolean order matrix, `leq[i][j]` meaning `i <= j`.
    pub fn from_matrix(leq: &[Vec<bool>]) -> Result<Self> {
        let n = leq.len();
        for (row, r) in leq.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { row, len: r.len(), n });
            }
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::AxiomViolated { axiom: "reflexivity", witness: vec![i] });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::AxiomViolated { axiom: "antisymmetry", witness: vec![i, j] });
                }
            }
        }
        let up: Vec<BitSet> = leq.iter().map(|r| BitSet::from_bools(r)).collect();
        // transitivity: up[j] must contain up[k] whenever k is in up[j]
        for i in 0..n {
            for j in up[i].iter() {
                if !up[j].is_subset(&up[i]) {
                    let k = up[j].iter().find(|&k| !up[i].contains(k)).unwrap();
                    return Err(Error::AxiomViolated { axiom: "transitivity", witness: vec![i, j, k] });
                }
            }
        }
        Ok(Self::from_up_rows(up))
    }

    fn from_up_rows(up: Vec<BitSet>) -> Self {
        let n = up.len();
        let mut down = vec![BitSet::new(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        FinPoset { n, up, down, labels: None }
    }

    /// Reflexive-transitive closure of the given `(lower, upper)` pairs.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange { index: a.max(b), n });
            }
            m[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if m[i][k] {
                    for j in 0..n {
                        if m[k][j] {
                            m[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix(&m)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Schema {
                pointer: "/labels".into(),
                message: format!("expected {} labels, got {}", self.n, labels.len()),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn empty() -> Self {
        Self::from_up_rows(Vec::new())
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_up_rows((0..n).map(|i| BitSet::from_indices(n, [i])).collect())
    }

    pub fn chain(n: usize) -> Self {
        Self::from_up_rows((0..n).map(|i| BitSet::from_indices(n, i..n)).collect())
    }

    /// Product order; element `(i, j)` has index `i * other.len() + j`.
    pub fn product(&self, other: &FinPoset) -> Self {
        let m = other.n;
        let n = self.n * m;
        let up = (0..n)
            .map(|a| {
                let (i, j) = (a / m, a % m);
                BitSet::from_indices(
                    n,
                    self.up[i].iter().flat_map(|i2| other.up[j].iter().map(move |j2| i2 * m + j2)),
                )
            })
            .collect();
        Self::from_up_rows(up)
    }

    /// The 2x2 Boolean lattice: 0 = bottom, 1 = a, 2 = b, 3 = top.
    pub fn diamond() -> Self {
        Self::from_relations(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Bottom, three atoms, top.
    pub fn m3() -> Self {
        Self::from_relations(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    /// The pentagon: 0 < 1 < 2 < 4 and 0 < 3 < 4.
    pub fn n5() -> Self {
        Self::from_relations(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Principal ideal of `x` as a bit set.
    #[inline]
    pub fn down(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    /// Principal filter of `x` as a bit set.
    #[inline]
    pub fn up(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|s| s == label),
            None => label.parse().ok().filter(|&i: &usize| i < self.n),
        }
    }

    pub fn matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.leq(i, j)).collect()).collect()
    }

    pub fn check_index(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: x, n: self.n })
        }
    }

    /// Same order relation, ignoring labels.
    pub fn same_order(&self, other: &FinPoset) -> bool {
        self.up == other.up
    }

    pub fn op(&self) -> Self {
        let mut p = Self::from_up_rows(self.down.clone());
        p.labels = self.labels.clone();
        p
    }

    /// Induced subposet on `subset`; the second component maps new indices to old ones.
    pub fn induced(&self, subset: &BitSet) -> (FinPoset, Vec<usize>) {
        let elems: Vec<usize> = subset.iter().collect();
        let k = elems.len();
        let up = elems
            .iter()
            .map(|&i| BitSet::from_indices(k, (0..k).filter(|&b| self.leq(i, elems[b]))))
            .collect();
        let mut p = Self::from_up_rows(up);
        if let Some(l) = &self.labels {
            p.labels = Some(elems.iter().map(|&i| l[i].clone()).collect());
        }
        (p, elems)
    }

    /// Elements sorted so that every element comes after all of its strict predecessors.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.n).collect();
        v.sort_by_key(|&i| (self.down[i].count(), i));
        v
    }

    pub fn is_lower(&self, s: &BitSet) -> bool {
        s.len() == self.n && s.iter().all(|j| self.down[j].is_subset(s))
    }

    pub fn is_upper(&self, s: &BitSet) -> bool {
        s.len() == self.n && s.iter().all(|j| self.up[j].is_subset(s))
    }

    pub fn down_closure(&self, s: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.n);
        for j in s.iter() {
            out.union_with(&self.down[j]);
        }
        out
    }

    pub fn up_closure(&self, s: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.n);
        for j in s.iter() {
            out.union_with(&self.up[j]);
        }
        out
    }

    /// Greatest element of `s`, if any.
    pub fn max_of(&self, s: &BitSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(&self.down[m]))
    }

    /// Least element of `s`, if any.
    pub fn min_of(&self, s: &BitSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(&self.up[m]))
    }

    pub fn greatest(&self) -> Option<usize> {
        self.max_of(&BitSet::full(self.n))
    }

    pub fn least(&self) -> Option<usize> {
        self.min_of(&BitSet::full(self.n))
    }

    pub fn maximal_elements(&self, s: &BitSet) -> Vec<usize> {
        s.iter().filter(|&m| self.up[m].intersection(s).count() == 1).collect()
    }

    /// Greatest lower bound of `s` (empty `s` gives the top, when present).
    pub fn meet_all(&self, s: impl IntoIterator<Item = usize>) -> Option<usize> {
        let mut lb = BitSet::full(self.n);
        for x in s {
            lb.intersect_with(&self.down[x]);
        }
        self.max_of(&lb)
    }

    /// Least upper bound of `s` (empty `s` gives the bottom, when present).
    pub fn join_all(&self, s: impl IntoIterator<Item = usize>) -> Option<usize> {
        let mut ub = BitSet::full(self.n);
        for x in s {
            ub.intersect_with(&self.up[x]);
        }
        self.min_of(&ub)
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet_all([a, b])
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.join_all([a, b])
    }

    /// A finite poset is a complete lattice iff it has a top and all binary meets.
    pub fn is_complete_lattice(&self) -> bool {
        if self.greatest().is_none() {
            return false;
        }
        (0..self.n).all(|a| ((a + 1)..self.n).all(|b| self.meet(a, b).is_some()))
    }

    pub fn top(&self) -> Option<usize> {
        self.greatest()
    }

    pub fn bottom(&self) -> Option<usize> {
        self.least()
    }

    /// Covering pairs `(lower, upper)`: the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in self.up[i].iter() {
                if i != j && !self.up[i].iter().any(|k| k != i && k != j && self.leq(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_distributive_lattice(&self) -> bool {
        if !self.is_complete_lattice() {
            return false;
        }
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let bc = self.join(b, c).unwrap();
                    let lhs = self.meet(a, bc).unwrap();
                    let rhs = self.join(self.meet(a, b).unwrap(), self.meet(a, c).unwrap()).unwrap();
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Relabel: element `perm[p]` of `self` becomes element `p`.
    pub fn permuted(&self, perm: &[usize]) -> FinPoset {
        let n = self.n;
        let up = (0..n)
            .map(|p| BitSet::from_indices(n, (0..n).filter(|&q| self.leq(perm[p], perm[q]))))
            .collect();
        let mut out = Self::from_up_rows(up);
        if let Some(l) = &self.labels {
            out.labels = Some(perm.iter().map(|&i| l[i].clone()).collect());
        }
        out
    }

    /// Canonical representative of the isomorphism class, with the relabelling used
    /// (`perm[p]` is the original element placed at position `p`).
    ///
    /// Elements are first sorted by the invariant (down-set size, up-set size); the
    /// lexicographically least order matrix over permutations within invariant blocks wins.
    pub fn canonical_form(&self) -> (FinPoset, Vec<usize>) {
        let n = self.n;
        let key = |i: usize| (self.down[i].count(), self.up[i].count());
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| key(i));
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            match blocks.last_mut() {
                Some(b) if key(b[0]) == key(i) => b.push(i),
                _ => blocks.push(vec![i]),
            }
        }
        let mut best: Option<(Vec<bool>, Vec<usize>)> = None;
        let mut perm = Vec::with_capacity(n);
        canon_search(self, &blocks, 0, &mut perm, &mut best);
        let perm = best.map(|b| b.1).unwrap_or_default();
        let mut p = self.permuted(&perm);
        p.labels = None;
        (p, perm)
    }

    pub fn is_isomorphic(&self, other: &FinPoset) -> bool {
        self.n == other.n && self.canonical_form().0.same_order(&other.canonical_form().0)
    }

    /// Poset of the given subsets ordered by inclusion.
    pub fn inclusion_order(sets: &[BitSet]) -> FinPoset {
        let k = sets.len();
        let up = (0..k)
            .map(|i| BitSet::from_indices(k, (0..k).filter(|&j| sets[i].is_subset(&sets[j]))))
            .collect();
        Self::from_up_rows(up)
    }
}

fn flatten_matrix(p: &FinPoset, perm: &[usize]) -> Vec<bool> {
    let mut v = Vec::with_capacity(perm.len() * perm.len());
    for &a in perm {
        for &b in perm {
            v.push(p.leq(a, b));
        }
    }
    v
}

fn canon_search(
    p: &FinPoset,
    blocks: &[Vec<usize>],
    bi: usize,
    perm: &mut Vec<usize>,
    best: &mut Option<(Vec<bool>, Vec<usize>)>,
) {
    if bi == blocks.len() {
        let m = flatten_matrix(p, perm);
        if best.as_ref().is_none_or(|(bm, _)| m < *bm) {
            *best = Some((m, perm.clone()));
        }
        return;
    }
    // prune on the leading square of the matrix already fixed by `perm`
    if let Some((bm, _)) = best.as_ref() {
        let k = perm.len();
        let n = p.len();
        let mut cur = Vec::with_capacity(k * k);
        let mut ref_ = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                cur.push(p.leq(perm[a], perm[b]));
                ref_.push(bm[a * n + b]);
            }
        }
        if cur > ref_ {
            return;
        }
    }
    let block = &blocks[bi];
    for_each_permutation(block, &mut |order| {
        let base = perm.len();
        perm.extend_from_slice(order);
        canon_search(p, blocks, bi + 1, perm, best);
        perm.truncate(base);
    });
}

pub(crate) fn for_each_permutation(items: &[usize], f: &mut dyn FnMut(&[usize])) {
    let mut v = items.to_vec();
    let n = v.len();
    fn rec(v: &mut Vec<usize>, k: usize, n: usize, f: &mut dyn FnMut(&[usize])) {
        if k == n {
            f(v);
            return;
        }
        for i in k..n {
            v.swap(k, i);
            rec(v, k + 1, n, f);
            v.swap(k, i);
        }
    }
    rec(&mut v, 0, n, f);
}

/// Calls `f` on every lower set of `p`, each exactly once.
pub fn for_each_lower_set(p: &FinPoset, f: &mut dyn FnMut(&BitSet)) {
    try_for_each_lower_set(p, &mut |s| {
        f(s);
        true
    });
}

/// Like [`for_each_lower_set`], stopping as soon as `f` returns `false`.
/// Returns `false` if stopped early.
pub fn try_for_each_lower_set(p: &FinPoset, f: &mut dyn FnMut(&BitSet) -> bool) -> bool {
    let ext = p.linear_extension();
    let preds: Vec<BitSet> = (0..p.len())
        .map(|i| {
            let mut d = p.down(i).clone();
            d.remove(i);
            d
        })
        .collect();
    let mut cur = BitSet::new(p.len());
    fn rec(k: usize, ext: &[usize], preds: &[BitSet], cur: &mut BitSet, f: &mut dyn FnMut(&BitSet) -> bool) -> bool {
        if k == ext.len() {
            return f(cur);
        }
        let i = ext[k];
        if !rec(k + 1, ext, preds, cur, f) {
            return false;
        }
        if preds[i].is_subset(cur) {
            cur.insert(i);
            let go = rec(k + 1, ext, preds, cur, f);
            cur.remove(i);
            return go;
        }
        true
    }
    rec(0, &ext, &preds, &mut cur, f)
}

pub fn lower_sets(p: &FinPoset) -> Vec<BitSet> {
    let mut out = Vec::new();
    for_each_lower_set(p, &mut |s| out.push(s.clone()));
    out.sort_by_key(|s| (s.count(), s.clone()));
    out
}

/// Number of lower sets, capped at `bound + 1`.
pub fn count_lower_sets_bounded(p: &FinPoset, bound: usize) -> usize {
    let mut count = 0usize;
    try_for_each_lower_set(p, &mut |_| {
        count += 1;
        count <= bound
    });
    count
}

/// A downward-closed subset of some [`FinPoset`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LowerSet(BitSet);

impl LowerSet {
    pub fn new(p: &FinPoset, members: BitSet) -> Result<Self> {
        if p.is_lower(&members) {
            Ok(LowerSet(members))
        } else {
            Err(Error::BaseMismatch)
        }
    }

    pub fn from_indices(p: &FinPoset, idx: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(p, BitSet::from_indices(p.len(), idx))
    }

    pub fn bits(&self) -> &BitSet {
        &self.0
    }

    pub fn into_bits(self) -> BitSet {
        self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn members(&self) -> Vec<usize> {
        self.0.iter().collect()
    }

    pub fn is_subset(&self, other: &LowerSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

pub fn principal_ideal(p: &FinPoset, x: usize) -> Result<LowerSet> {
    p.check_index(x)?;
    Ok(LowerSet(p.down(x).clone()))
}

/// `L(X)`: all lower sets of `base` ordered by inclusion, with the unit `x -> down x`.
#[derive(Clone, Debug)]
pub struct LowerSetLattice {
    pub base: FinPoset,
    pub elements: Vec<LowerSet>,
    pub order: FinPoset,
    index: HashMap<BitSet, usize>,
    pub unit: Vec<usize>,
}

impl LowerSetLattice {
    pub fn new(base: &FinPoset) -> Result<Self> {
        Self::with_bound(base, DEFAULT_LOWER_SET_BOUND)
    }

    pub fn with_bound(base: &FinPoset, bound: usize) -> Result<Self> {
        let c = count_lower_sets_bounded(base, bound);
        if c > bound {
            return Err(Error::SizeGuard { what: "lower set count", size: c, bound });
        }
        let sets = lower_sets(base);
        Ok(Self::from_sets(base, sets))
    }

    fn from_sets(base: &FinPoset, sets: Vec<BitSet>) -> Self {
        let order = FinPoset::inclusion_order(&sets);
        let index: HashMap<BitSet, usize> = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let unit = (0..base.len()).map(|x| index[base.down(x)]).collect();
        LowerSetLattice {
            base: base.clone(),
            elements: sets.into_iter().map(LowerSet).collect(),
            order,
            index,
            unit,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, s: &BitSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn unit_map(&self) -> MonotoneMap {
        MonotoneMap { dom: self.base.clone(), cod: self.order.clone(), values: self.unit.clone() }
    }

    /// Monad multiplication: union of a family of lower sets, given by indices into `elements`.
    pub fn union_of(&self, family: impl IntoIterator<Item = usize>) -> LowerSet {
        let mut u = BitSet::new(self.base.len());
        for i in family {
            u.union_with(self.elements[i].bits());
        }
        LowerSet(u)
    }
}

/// A monotone map between finite posets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonotoneMap {
    pub dom: FinPoset,
    pub cod: FinPoset,
    pub values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: FinPoset, cod: FinPoset, values: Vec<usize>) -> Result<Self> {
        if values.len() != dom.len() {
            return Err(Error::Schema {
                pointer: "/values".into(),
                message: format!("expected {} values, got {}", dom.len(), values.len()),
            });
        }
        for &v in &values {
            cod.check_index(v)?;
        }
        for i in 0..dom.len() {
            for j in dom.up(i).iter() {
                if !cod.leq(values[i], values[j]) {
                    return Err(Error::NotMonotone(i, j));
                }
            }
        }
        Ok(MonotoneMap { dom, cod, values })
    }

    pub fn identity(p: &FinPoset) -> Self {
        MonotoneMap { dom: p.clone(), cod: p.clone(), values: (0..p.len()).collect() }
    }

    pub fn constant(dom: &FinPoset, cod: &FinPoset, c: usize) -> Self {
        MonotoneMap { dom: dom.clone(), cod: cod.clone(), values: vec![c; dom.len()] }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonotoneMap) -> Result<MonotoneMap> {
        if !self.cod.same_order(&other.dom) {
            return Err(Error::BaseMismatch);
        }
        Ok(MonotoneMap {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            values: self.values.iter().map(|&v| other.values[v]).collect(),
        })
    }

    /// Pointwise order.
    pub fn le(&self, other: &MonotoneMap) -> bool {
        self.values.iter().zip(&other.values).all(|(&a, &b)| self.cod.leq(a, b))
    }

    /// `f_*(φ) = ⋃_{x∈φ} ↓f(x)`.
    pub fn pushforward(&self, phi: &LowerSet) -> Result<LowerSet> {
        if !self.dom.is_lower(phi.bits()) {
            return Err(Error::BaseMismatch);
        }
        let mut out = BitSet::new(self.cod.len());
        for x in phi.bits().iter() {
            out.union_with(self.cod.down(self.values[x]));
        }
        Ok(LowerSet(out))
    }

    /// `f^×(y) = max{x | f(x) <= y}`, when that maximum exists for every `y`.
    pub fn right_adjoint(&self) -> Option<MonotoneMap> {
        let values = (0..self.cod.len())
            .map(|y| {
                let pre = BitSet::from_indices(
                    self.dom.len(),
                    (0..self.dom.len()).filter(|&x| self.cod.leq(self.values[x], y)),
                );
                self.dom.max_of(&pre)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(MonotoneMap { dom: self.cod.clone(), cod: self.dom.clone(), values })
    }

    /// `f^+(y) = min{x | y <= f(x)}`, when that minimum exists for every `y`.
    pub fn left_adjoint(&self) -> Option<MonotoneMap> {
        let values = (0..self.cod.len())
            .map(|y| {
                let pre = BitSet::from_indices(
                    self.dom.len(),
                    (0..self.dom.len()).filter(|&x| self.cod.leq(y, self.values[x])),
                );
                self.dom.min_of(&pre)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(MonotoneMap { dom: self.cod.clone(), cod: self.dom.clone(), values })
    }

    /// Checks `f(⋀S) = ⋀f(S)` for every subset `S` of the domain whose meet exists.
    ///
    /// On lattices binary and empty meets suffice; for general posets all subsets are tried.
    pub fn meet_violation(&self) -> Option<Vec<usize>> {
        let n = self.dom.len();
        let check = |s: &[usize]| -> bool {
            match self.dom.meet_all(s.iter().copied()) {
                None => true,
                Some(m) => self.cod.meet_all(s.iter().map(|&x| self.values[x])) == Some(self.values[m]),
            }
        };
        if self.dom.is_complete_lattice() {
            if !check(&[]) {
                return Some(vec![]);
            }
            for a in 0..n {
                for b in (a + 1)..n {
                    if !check(&[a, b]) {
                        return Some(vec![a, b]);
                    }
                }
            }
            None
        } else {
            subsets_up_to(n, 16).into_iter().find(|s| !check(s))
        }
    }

    pub fn preserves_meets(&self) -> bool {
        self.meet_violation().is_none()
    }

    /// Checks `f(⋁S) = ⋁f(S)` for all subsets where the join exists (binary and empty on lattices).
    pub fn join_violation(&self) -> Option<Vec<usize>> {
        let n = self.dom.len();
        let check = |s: &[usize]| -> bool {
            match self.dom.join_all(s.iter().copied()) {
                None => true,
                Some(m) => self.cod.join_all(s.iter().map(|&x| self.values[x])) == Some(self.values[m]),
            }
        };
        if self.dom.is_complete_lattice() {
            if !check(&[]) {
                return Some(vec![]);
            }
            for a in 0..n {
                for b in (a + 1)..n {
                    if !check(&[a, b]) {
                        return Some(vec![a, b]);
                    }
                }
            }
            None
        } else {
            subsets_up_to(n, 16).into_iter().find(|s| !check(s))
        }
    }
}

fn subsets_up_to(n: usize, max_n: usize) -> Vec<Vec<usize>> {
    let n = n.min(max_n);
    (0u32..(1 << n)).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
}

/// All monotone maps `dom -> cod`.
pub fn monotone_maps(dom: &FinPoset, cod: &FinPoset) -> Vec<MonotoneMap> {
    let ext = dom.linear_extension();
    let mut out = Vec::new();
    let mut vals = vec![usize::MAX; dom.len()];
    fn rec(
        k: usize,
        ext: &[usize],
        dom: &FinPoset,
        cod: &FinPoset,
        vals: &mut Vec<usize>,
        out: &mut Vec<MonotoneMap>,
    ) {
        if k == ext.len() {
            out.push(MonotoneMap { dom: dom.clone(), cod: cod.clone(), values: vals.clone() });
            return;
        }
        let x = ext[k];
        for y in 0..cod.len() {
            if dom.down(x).iter().filter(|&p| p != x).all(|p| cod.leq(vals[p], y)) {
                vals[x] = y;
                rec(k + 1, ext, dom, cod, vals, out);
            }
        }
        vals[x] = usize::MAX;
    }
    rec(0, &ext, dom, cod, &mut vals, &mut out);
    out
}

/// Default bound for [`enumerate_lattices`].
pub const DEFAULT_LATTICE_BOUND: usize = 8;
/// Default bound for [`enumerate_posets`].
pub const DEFAULT_POSET_BOUND: usize = 7;

/// All posets with exactly `n` elements, one per isomorphism class, in canonical form.
pub fn enumerate_posets(n: usize) -> Result<Vec<FinPoset>> {
    enumerate_posets_bounded(n, DEFAULT_POSET_BOUND)
}

pub fn enumerate_posets_bounded(n: usize, bound: usize) -> Result<Vec<FinPoset>> {
    if n > bound {
        return Err(Error::SizeGuard { what: "poset size", size: n, bound });
    }
    let mut level = vec![FinPoset::empty()];
    for m in 1..=n {
        let mut seen: std::collections::BTreeMap<Vec<bool>, FinPoset> = Default::default();
        for p in &level {
            for_each_lower_set(p, &mut |d| {
                let q = extend_with_maximal(p, d);
                let (c, _) = q.canonical_form();
                let key = flatten_matrix(&c, &(0..m).collect::<Vec<_>>());
                seen.entry(key).or_insert(c);
            });
        }
        level = seen.into_values().collect();
    }
    Ok(level)
}

fn extend_with_maximal(p: &FinPoset, below: &BitSet) -> FinPoset {
    let n = p.len();
    let mut up: Vec<BitSet> = (0..n)
        .map(|i| {
            let mut r = BitSet::new(n + 1);
            for j in p.up(i).iter() {
                r.insert(j);
            }
            if below.contains(i) {
                r.insert(n);
            }
            r
        })
        .collect();
    up.push(BitSet::from_indices(n + 1, [n]));
    FinPoset::from_up_rows(up)
}

/// All complete lattices with exactly `n` elements up to isomorphism.
///
/// Lattices with `n >= 2` are enumerated as a bottom and a top around every poset on
/// `n - 2` elements; bounded posets are isomorphic iff their middles are, so no further
/// deduplication is needed. Index 0 is the bottom and `n - 1` the top.
pub fn enumerate_lattices(n: usize) -> Result<Vec<FinPoset>> {
    enumerate_lattices_bounded(n, DEFAULT_LATTICE_BOUND)
}

pub fn enumerate_lattices_bounded(n: usize, bound: usize) -> Result<Vec<FinPoset>> {
    if n > bound {
        return Err(Error::SizeGuard { what: "lattice size", size: n, bound });
    }
    match n {
        0 => return Ok(vec![]),
        1 => return Ok(vec![FinPoset::chain(1)]),
        _ => {}
    }
    let middles = enumerate_posets_bounded(n - 2, bound)?;
    Ok(middles.iter().map(bounded_extension).filter(|l| l.is_complete_lattice()).collect())
}

/// Adds a new bottom (index 0) and top (index n+1) around `p`.
pub fn bounded_extension(p: &FinPoset) -> FinPoset {
    let m = p.len();
    let n = m + 2;
    let mut up = Vec::with_capacity(n);
    up.push(BitSet::full(n));
    for i in 0..m {
        let mut r = BitSet::new(n);
        for j in p.up(i).iter() {
            r.insert(j + 1);
        }
        r.insert(n - 1);
        up.push(r);
    }
    up.push(BitSet::from_indices(n, [n - 1]));
    FinPoset::from_up_rows(up)
}

/// All lattices with at most `n` elements (sizes 1..=n).
pub fn lattices_up_to(n: usize) -> Result<Vec<FinPoset>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(enumerate_lattices(k)?);
    }
    Ok(out)
}

/// All posets with at most `n` elements (sizes 0..=n).
pub fn posets_up_to(n: usize) -> Result<Vec<FinPoset>> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(enumerate_posets(k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(FinPoset::from_matrix(&FinPoset::antichain(3).matrix()).is_ok());
        let c3 = vec![vec![true, true, true], vec![false, true, true], vec![false, false, true]];
        assert!(FinPoset::from_matrix(&c3).is_ok());
        let bad = vec![vec![true, true], vec![true, true]];
        assert_eq!(
            FinPoset::from_matrix(&bad),
            Err(Error::AxiomViolated { axiom: "antisymmetry", witness: vec![0, 1] })
        );
        let intrans = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        assert!(matches!(
            FinPoset::from_matrix(&intrans),
            Err(Error::AxiomViolated { axiom: "transitivity", .. })
        ));
        assert!(matches!(FinPoset::from_matrix(&[vec![true, false]]), Err(Error::NotSquare { .. })));
    }

    /// Brute force: every subset, filtered by downward closure.
    fn lower_sets_oracle(p: &FinPoset) -> Vec<BitSet> {
        let n = p.len();
        let mut v: Vec<BitSet> = (0u32..(1 << n))
            .map(|m| BitSet::from_indices(n, (0..n).filter(|&i| m >> i & 1 == 1)))
            .filter(|s| s.iter().all(|j| (0..n).all(|i| !p.leq(i, j) || s.contains(i))))
            .collect();
        v.sort_by_key(|s| (s.count(), s.clone()));
        v
    }

    #[test]
    fn lower_set_counts() {
        let two = FinPoset::antichain(2);
        let l = LowerSetLattice::new(&two).unwrap();
        assert_eq!(l.len(), 4);
        assert!(l.order.is_isomorphic(&FinPoset::diamond()));
        let l3 = LowerSetLattice::new(&FinPoset::chain(3)).unwrap();
        assert!(l3.order.is_isomorphic(&FinPoset::chain(4)));
        assert_eq!(LowerSetLattice::new(&FinPoset::empty()).unwrap().len(), 1);
        for p in posets_up_to(5).unwrap() {
            assert_eq!(lower_sets(&p), lower_sets_oracle(&p));
        }
    }

    #[test]
    fn lower_set_size_guard() {
        assert!(matches!(
            LowerSetLattice::with_bound(&FinPoset::antichain(5), 16),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn principal_ideals() {
        assert_eq!(principal_ideal(&FinPoset::chain(3), 2).unwrap().members(), vec![0, 1, 2]);
        assert_eq!(principal_ideal(&FinPoset::antichain(2), 0).unwrap().members(), vec![0]);
        assert_eq!(principal_ideal(&FinPoset::diamond(), 3).unwrap().members().len(), 4);
        assert!(principal_ideal(&FinPoset::chain(2), 5).is_err());
    }

    #[test]
    fn pushforward_examples() {
        let c3 = FinPoset::chain(3);
        let id = MonotoneMap::identity(&c3);
        let phi = LowerSet::from_indices(&c3, [0, 1]).unwrap();
        assert_eq!(id.pushforward(&phi).unwrap(), phi);
        let f = MonotoneMap::new(FinPoset::antichain(2), FinPoset::chain(2), vec![1, 1]).unwrap();
        let a = LowerSet::from_indices(&f.dom, [0]).unwrap();
        assert_eq!(f.pushforward(&a).unwrap().members(), vec![0, 1]);
        let empty = LowerSet::from_indices(&f.dom, []).unwrap();
        assert!(f.pushforward(&empty).unwrap().bits().is_empty());
        let wrong = LowerSet::from_indices(&c3, [0]).unwrap();
        assert_eq!(f.pushforward(&wrong), Err(Error::BaseMismatch));
    }

    #[test]
    fn right_adjoint_examples() {
        let c3 = FinPoset::chain(3);
        assert_eq!(MonotoneMap::identity(&c3).right_adjoint().unwrap(), MonotoneMap::identity(&c3));
        let f = MonotoneMap::new(c3.clone(), FinPoset::chain(2), vec![0, 0, 1]).unwrap();
        assert_eq!(f.right_adjoint().unwrap().values, vec![1, 2]);
        let g = MonotoneMap::new(FinPoset::chain(2), c3.clone(), vec![0, 1]).unwrap();
        assert_eq!(g.right_adjoint().unwrap().values, vec![0, 1, 1]);
        // a map not preserving the empty join has no right adjoint
        let h = MonotoneMap::new(FinPoset::chain(2), c3, vec![1, 2]).unwrap();
        assert!(h.right_adjoint().is_none());
    }

    #[test]
    fn meets_and_joins() {
        let d = FinPoset::diamond();
        assert_eq!(d.meet_all([1, 2]), Some(0));
        assert_eq!(d.join_all([1, 2]), Some(3));
        let a = FinPoset::antichain(2);
        assert_eq!(a.meet_all([0, 1]), None);
        assert_eq!(a.join_all([0, 1]), None);
        assert_eq!(d.meet_all([]), Some(3));
        assert_eq!(d.join_all([]), Some(0));
        assert_eq!(a.meet_all([]), None);
        assert!(d.is_complete_lattice());
        assert!(!a.is_complete_lattice());
        assert!(!FinPoset::empty().is_complete_lattice());
    }

    #[test]
    fn lattice_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_lattices(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15, 53]);
        assert!(enumerate_lattices(9).is_err());
    }

    /// Oracle for small n: all labelled partial orders, filtered to lattices, deduplicated
    /// by pairwise isomorphism search over all permutations.
    #[test]
    fn lattice_enumeration_matches_brute_force() {
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
            let mut classes: Vec<FinPoset> = Vec::new();
            for mask in 0u64..(1 << pairs.len()) {
                let mut m = vec![vec![false; n]; n];
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = true;
                }
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        m[i][j] = true;
                    }
                }
                let Ok(p) = FinPoset::from_matrix(&m) else { continue };
                if !p.is_complete_lattice() {
                    continue;
                }
                let iso = |q: &FinPoset| {
                    let mut found = false;
                    for_each_permutation(&(0..n).collect::<Vec<_>>(), &mut |perm| {
                        if !found && p.permuted(perm).same_order(q) {
                            found = true;
                        }
                    });
                    found
                };
                if !classes.iter().any(iso) {
                    classes.push(p);
                }
            }
            assert_eq!(classes.len(), enumerate_lattices(n).unwrap().len(), "n = {n}");
        }
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| enumerate_posets(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63, 318]);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let n5 = FinPoset::n5();
        let shuffled = n5.permuted(&[3, 1, 4, 0, 2]);
        assert!(shuffled.same_order(&shuffled));
        assert!(n5.canonical_form().0.same_order(&shuffled.canonical_form().0));
        assert!(!n5.is_isomorphic(&FinPoset::m3()));
    }

    #[test]
    fn monotone_map_enumeration() {
        // monotone maps C2 -> C2: 3; C2 -> antichain(2): 2
        assert_eq!(monotone_maps(&FinPoset::chain(2), &FinPoset::chain(2)).len(), 3);
        assert_eq!(monotone_maps(&FinPoset::chain(2), &FinPoset::antichain(2)).len(), 2);
        assert_eq!(monotone_maps(&FinPoset::empty(), &FinPoset::chain(2)).len(), 1);
    }

    #[test]
    fn hasse_diagram_of_diamond() {
        assert_eq!(FinPoset::diamond().covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }
}
