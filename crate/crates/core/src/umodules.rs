//! Metric-enriched posets with an action of the monoid `U` of monotone
//! continuous surjections of `[0,1]`, and the operations built on `≤_r`.

use std::fmt;

use crate::doctrines::{Builtin, DoctrinePair};
use crate::error::{Error, Result};
use crate::interval::{dot_sub, fmt_q, in_unit, one, parse_q, zero, PLMap, Q};
use crate::order::FinPoset;

/// A poset with a monotone `U`-action.
pub trait UModule {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// `u · a`. Callers must pass `u` in `U`.
    fn act(&self, u: &PLMap, a: &Self::Elem) -> Self::Elem;

    fn meet(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn top(&self) -> Option<Self::Elem> {
        None
    }

    /// Exact `ρ(a, b)` when the instance knows it.
    fn rho_closed_form(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Q> {
        None
    }

    /// Whether `Ψ^op`-meets include binary meets.
    fn requires_meets(&self) -> bool {
        false
    }

    /// Whether `Ψ^op`-meets include the empty meet.
    fn requires_top(&self) -> bool {
        false
    }

    /// `⋀ f_i∘a_i` computed pointwise, for arbitrary monotone `f_i`.
    fn pointwise_glue(&self, _parts: &[(PLMap, Self::Elem)]) -> Option<Result<Self::Elem>> {
        None
    }

    /// A pair of values `(a(x), b(x))` with `b(x) > 0` and `a(x) < 1`, if any.
    /// `None` when the instance cannot decide.
    fn incompatibility(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Option<(Q, Q)>> {
        None
    }

    fn show(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }
}

/// Modules whose elements are finite tables of values in `[0,1]`.
pub trait CoordinateModule: UModule {
    fn coords(&self, a: &Self::Elem) -> Vec<Q>;
    fn from_coords(&self, c: Vec<Q>) -> Result<Self::Elem>;
    /// All carrier elements taking only the values 0 and 1.
    fn indicator_elements(&self) -> Result<Vec<Self::Elem>>;
}

fn psi_requires(pair: &DoctrinePair) -> (bool, bool) {
    let meets = pair.psi.member(&FinPoset::antichain(2));
    (meets, pair.psi.contains_empty())
}

fn coords_glue(parts: &[(PLMap, Vec<Q>)]) -> Vec<Q> {
    let n = parts.first().map_or(0, |p| p.1.len());
    (0..n)
        .map(|i| parts.iter().map(|(f, a)| f.eval(&a[i])).min().expect("nonempty"))
        .collect()
}

fn coords_incompatibility(a: &[Q], b: &[Q]) -> Option<(Q, Q)> {
    a.iter()
        .zip(b)
        .find(|(x, y)| **y > zero() && **x < one())
        .map(|(x, y)| (x.clone(), y.clone()))
}

/// `[0,1]` with `u · a = u(a)`.
#[derive(Clone, Debug)]
pub struct IntervalModule {
    pub pair: DoctrinePair,
}

impl IntervalModule {
    pub fn new(pair: DoctrinePair) -> Self {
        IntervalModule { pair }
    }
}

impl Default for IntervalModule {
    fn default() -> Self {
        IntervalModule::new(DoctrinePair::for_phi(Builtin::Directed))
    }
}

impl UModule for IntervalModule {
    type Elem = Q;

    fn le(&self, a: &Q, b: &Q) -> bool {
        a <= b
    }

    fn act(&self, u: &PLMap, a: &Q) -> Q {
        u.eval(a)
    }

    fn meet(&self, a: &Q, b: &Q) -> Option<Q> {
        Some(if a < b { a.clone() } else { b.clone() })
    }

    fn top(&self) -> Option<Q> {
        Some(one())
    }

    fn rho_closed_form(&self, a: &Q, b: &Q) -> Option<Q> {
        Some(dot_sub(a, b))
    }

    fn requires_meets(&self) -> bool {
        psi_requires(&self.pair).0
    }

    fn requires_top(&self) -> bool {
        psi_requires(&self.pair).1
    }

    fn pointwise_glue(&self, parts: &[(PLMap, Q)]) -> Option<Result<Q>> {
        let parts: Vec<(PLMap, Vec<Q>)> = parts.iter().map(|(f, a)| (f.clone(), vec![a.clone()])).collect();
        Some(self.from_coords(coords_glue(&parts)))
    }

    fn incompatibility(&self, a: &Q, b: &Q) -> Option<Option<(Q, Q)>> {
        Some(coords_incompatibility(std::slice::from_ref(a), std::slice::from_ref(b)))
    }

    fn show(&self, a: &Q) -> String {
        fmt_q(a)
    }
}

impl CoordinateModule for IntervalModule {
    fn coords(&self, a: &Q) -> Vec<Q> {
        vec![a.clone()]
    }

    fn from_coords(&self, mut c: Vec<Q>) -> Result<Q> {
        if c.len() != 1 || !in_unit(&c[0]) {
            return Err(Error::OutOfRange(format!("{c:?}")));
        }
        Ok(c.remove(0))
    }

    fn indicator_elements(&self) -> Result<Vec<Q>> {
        Ok(vec![zero(), one()])
    }
}

/// Maps `X → [0,1]` on a finite lattice that preserve all meets and the
/// joins required by `Φ`, ordered pointwise.
#[derive(Clone, Debug)]
pub struct FunctionModule {
    pub base: FinPoset,
    pub pair: DoctrinePair,
}

pub const DEFAULT_INDICATOR_BOUND: usize = 16;

impl FunctionModule {
    pub fn new(base: FinPoset, pair: DoctrinePair) -> Result<Self> {
        if !base.is_complete_lattice() {
            return Err(Error::NotALattice);
        }
        Ok(FunctionModule { base, pair })
    }

    pub fn directed(base: FinPoset) -> Result<Self> {
        Self::new(base, DoctrinePair::for_phi(Builtin::Directed))
    }

    fn needs_bottom_zero(&self) -> bool {
        self.pair.phi.contains_empty()
    }

    fn needs_binary_joins(&self) -> bool {
        self.pair.phi.member(&FinPoset::antichain(2))
    }

    /// Checks the carrier conditions on a value table.
    pub fn validate(&self, t: &[Q]) -> Result<()> {
        let x = &self.base;
        let n = x.len();
        if t.len() != n {
            return Err(Error::Precondition(format!("table has {} entries, lattice has {n}", t.len())));
        }
        if let Some(v) = t.iter().find(|v| !in_unit(v)) {
            return Err(Error::OutOfRange(fmt_q(v)));
        }
        let top = x.top().ok_or(Error::NotALattice)?;
        let bot = x.bottom().ok_or(Error::NotALattice)?;
        if t[top] != one() {
            return Err(Error::NotAMorphism { law: "empty meet", witness: x.label(top).to_string() });
        }
        if self.needs_bottom_zero() && t[bot] != zero() {
            return Err(Error::NotAMorphism { law: "empty join", witness: x.label(bot).to_string() });
        }
        for i in 0..n {
            for j in 0..n {
                let m = x.meet(i, j).ok_or(Error::NotALattice)?;
                let lo = if t[i] < t[j] { &t[i] } else { &t[j] };
                if &t[m] != lo {
                    return Err(Error::NotAMorphism {
                        law: "binary meet",
                        witness: format!("{} ∧ {}", x.label(i), x.label(j)),
                    });
                }
                if self.needs_binary_joins() {
                    let jn = x.join(i, j).ok_or(Error::NotALattice)?;
                    let hi = if t[i] < t[j] { &t[j] } else { &t[i] };
                    if &t[jn] != hi {
                        return Err(Error::NotAMorphism {
                            law: "binary join",
                            witness: format!("{} ∨ {}", x.label(i), x.label(j)),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn element(&self, t: Vec<Q>) -> Result<Vec<Q>> {
        self.validate(&t)?;
        Ok(t)
    }

    /// Parses a JSON object mapping element labels to rational strings.
    pub fn element_from_json(&self, v: &serde_json::Value) -> Result<Vec<Q>> {
        let obj = v.as_object().ok_or_else(|| Error::Schema {
            pointer: String::new(),
            message: "expected an object".into(),
        })?;
        let mut t: Vec<Option<Q>> = vec![None; self.base.len()];
        for (k, val) in obj {
            let i = self.base.index_of_label(k).ok_or_else(|| Error::Schema {
                pointer: format!("/{k}"),
                message: "unknown element label".into(),
            })?;
            let s = match val {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                _ => {
                    return Err(Error::Schema { pointer: format!("/{k}"), message: "expected a rational".into() })
                }
            };
            t[i] = Some(parse_q(&s)?);
        }
        let t = t
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::Schema {
                    pointer: format!("/{}", self.base.label(i)),
                    message: "missing value".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.element(t)
    }

    pub fn element_to_json(&self, t: &[Q]) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (i, v) in t.iter().enumerate() {
            m.insert(self.base.label(i).to_string(), serde_json::Value::String(fmt_q(v)));
        }
        serde_json::Value::Object(m)
    }

    /// A random carrier element with values in multiples of `1/denom`:
    /// `x ↦ max{t_k | x ≥ p_k}` for a descending chain `⊤ = p_0 > p_1 > …`
    /// and values `1 = t_0 > t_1 > …`. Retries when joins must be preserved;
    /// `None` when the carrier is empty.
    pub fn random_element(&self, rng: &mut impl rand::Rng, denom: i64) -> Option<Vec<Q>> {
        let x = &self.base;
        let top = x.top().expect("lattice");
        let bot = x.bottom().expect("lattice");
        for _ in 0..64 {
            let mut t = vec![zero(); x.len()];
            let mut p = top;
            let mut level = denom;
            loop {
                for z in x.up(p).iter() {
                    if t[z] == zero() {
                        t[z] = Q::new(level.into(), denom.into());
                    }
                }
                let below: Vec<usize> =
                    x.down(p).iter().filter(|&z| z != p && !(self.needs_bottom_zero() && z == bot)).collect();
                if below.is_empty() || level <= 1 || rng.gen_bool(0.3) {
                    break;
                }
                p = below[rng.gen_range(0..below.len())];
                level = rng.gen_range(if self.needs_bottom_zero() { 1 } else { 0 }..level);
                if level == 0 {
                    break;
                }
            }
            if self.validate(&t).is_ok() {
                return Some(t);
            }
        }
        self.indicator_elements().ok().and_then(|v| v.into_iter().next())
    }

    /// Evaluation at a point of the base lattice.
    pub fn eval_at(&self, x: usize, a: &[Q]) -> Q {
        a[x].clone()
    }
}

impl UModule for FunctionModule {
    type Elem = Vec<Q>;

    fn le(&self, a: &Vec<Q>, b: &Vec<Q>) -> bool {
        a.iter().zip(b).all(|(x, y)| x <= y)
    }

    fn act(&self, u: &PLMap, a: &Vec<Q>) -> Vec<Q> {
        a.iter().map(|v| u.eval(v)).collect()
    }

    fn meet(&self, a: &Vec<Q>, b: &Vec<Q>) -> Option<Vec<Q>> {
        if !self.requires_meets() {
            return None;
        }
        Some(a.iter().zip(b).map(|(x, y)| if x < y { x.clone() } else { y.clone() }).collect())
    }

    fn top(&self) -> Option<Vec<Q>> {
        let t = vec![one(); self.base.len()];
        self.validate(&t).ok().map(|_| t)
    }

    fn rho_closed_form(&self, a: &Vec<Q>, b: &Vec<Q>) -> Option<Q> {
        Some(a.iter().zip(b).map(|(x, y)| dot_sub(x, y)).max().unwrap_or_else(zero))
    }

    fn requires_meets(&self) -> bool {
        psi_requires(&self.pair).0
    }

    fn requires_top(&self) -> bool {
        psi_requires(&self.pair).1
    }

    fn pointwise_glue(&self, parts: &[(PLMap, Vec<Q>)]) -> Option<Result<Vec<Q>>> {
        Some(self.element(coords_glue(parts)))
    }

    fn incompatibility(&self, a: &Vec<Q>, b: &Vec<Q>) -> Option<Option<(Q, Q)>> {
        Some(coords_incompatibility(a, b))
    }

    fn show(&self, a: &Vec<Q>) -> String {
        self.element_to_json(a).to_string()
    }
}

impl CoordinateModule for FunctionModule {
    fn coords(&self, a: &Vec<Q>) -> Vec<Q> {
        a.clone()
    }

    fn from_coords(&self, c: Vec<Q>) -> Result<Vec<Q>> {
        self.element(c)
    }

    fn indicator_elements(&self) -> Result<Vec<Vec<Q>>> {
        let n = self.base.len();
        if n > DEFAULT_INDICATOR_BOUND {
            return Err(Error::SizeGuard { what: "lattice size", size: n, bound: DEFAULT_INDICATOR_BOUND });
        }
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << n) {
            let t: Vec<Q> = (0..n).map(|i| if mask >> i & 1 == 1 { one() } else { zero() }).collect();
            if self.validate(&t).is_ok() {
                out.push(t);
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Continuous monotone self-maps of `[0,1]` fixing 1, with `u · f = u∘f`.
#[derive(Clone, Debug, Default)]
pub struct PLModule;

impl UModule for PLModule {
    type Elem = PLMap;

    fn le(&self, a: &PLMap, b: &PLMap) -> bool {
        a.le(b)
    }

    fn act(&self, u: &PLMap, a: &PLMap) -> PLMap {
        u.compose(a)
    }

    fn meet(&self, a: &PLMap, b: &PLMap) -> Option<PLMap> {
        Some(a.pointwise_min(b))
    }

    fn top(&self) -> Option<PLMap> {
        PLMap::constant(&one()).ok()
    }

    fn rho_closed_form(&self, a: &PLMap, b: &PLMap) -> Option<Q> {
        Some(a.linf_rho(b))
    }

    fn requires_meets(&self) -> bool {
        true
    }

    fn requires_top(&self) -> bool {
        true
    }

    fn pointwise_glue(&self, parts: &[(PLMap, PLMap)]) -> Option<Result<PLMap>> {
        let c = parts
            .iter()
            .map(|(f, a)| f.compose(a))
            .reduce(|x, y| x.pointwise_min(&y))
            .expect("nonempty");
        Some(if c.in_uhat() {
            Ok(c)
        } else {
            Err(Error::Invariant(format!("glued map {} is not continuous", c.to_json_string())))
        })
    }

    fn incompatibility(&self, a: &PLMap, b: &PLMap) -> Option<Option<(Q, Q)>> {
        let mut pts: Vec<Q> = a.breaks().iter().chain(b.breaks()).cloned().collect();
        pts.sort();
        pts.dedup();
        let mids: Vec<Q> = pts.windows(2).map(|w| (&w[0] + &w[1]) / Q::from_integer(2.into())).collect();
        pts.extend(mids);
        Some(pts.into_iter().map(|x| (a.eval(&x), b.eval(&x))).find(|(av, bv)| *bv > zero() && *av < one()))
    }

    fn show(&self, a: &PLMap) -> String {
        a.to_json_string()
    }
}

/// A two-element chain `0 < 1` on which `u` fixes 1 and sends 0 to 1
/// exactly when `u` reaches 1 before the endpoint.
#[derive(Clone, Debug, Default)]
pub struct EarlySaturationModule;

impl EarlySaturationModule {
    pub fn saturates_early(u: &PLMap) -> bool {
        u.breaks().iter().any(|b| *b < one() && u.eval(b) == one())
    }
}

impl UModule for EarlySaturationModule {
    type Elem = bool;

    fn le(&self, a: &bool, b: &bool) -> bool {
        !*a || *b
    }

    fn act(&self, u: &PLMap, a: &bool) -> bool {
        *a || Self::saturates_early(u)
    }
}

/// `a ≤_r b`, via the single canonical test pair.
pub fn le_r<M: UModule>(m: &M, a: &M::Elem, b: &M::Elem, r: &Q) -> bool {
    if *r <= zero() {
        return m.le(a, b);
    }
    if *r >= one() {
        return true;
    }
    let u = PLMap::canonical_upper(r).expect("0 < r < 1");
    let v = u.compose(&PLMap::trunc_add(r).expect("r in [0,1]"));
    m.le(&m.act(&u, a), &m.act(&v, b))
}

/// `a ≤_r b` by the quantified definition, restricted to the given pairs
/// `(u, v)` with `u((−) ∔ r) ≤ v`. Pairs violating that premise are skipped.
pub fn le_r_by_pairs<M: UModule>(m: &M, a: &M::Elem, b: &M::Elem, r: &Q, pairs: &[(PLMap, PLMap)]) -> bool {
    let shift = PLMap::trunc_add(r).expect("r in [0,1]");
    pairs
        .iter()
        .filter(|(u, v)| u.compose(&shift).le(v))
        .all(|(u, v)| m.le(&m.act(u, a), &m.act(v, b)))
}

pub fn rho<M: UModule>(m: &M, a: &M::Elem, b: &M::Elem) -> Result<Q> {
    m.rho_closed_form(a, b)
        .ok_or_else(|| Error::Unsupported("no closed form for ρ on this module".into()))
}

pub fn dist<M: UModule>(m: &M, a: &M::Elem, b: &M::Elem) -> Result<Q> {
    let x = rho(m, a, b)?;
    let y = rho(m, b, a)?;
    Ok(if x < y { y } else { x })
}

/// Brackets `ρ(a, b)` by bisection on `le_r`: returns `(lo, hi)` with
/// `lo < ρ ≤ hi`, or `(0, 0)` when `a ≤ b`.
pub fn rho_bisection<M: UModule>(m: &M, a: &M::Elem, b: &M::Elem, steps: usize) -> (Q, Q) {
    if le_r(m, a, b, &zero()) {
        return (zero(), zero());
    }
    let two = Q::from_integer(2.into());
    let (mut lo, mut hi) = (zero(), one());
    for _ in 0..steps {
        let mid = (&lo + &hi) / &two;
        if le_r(m, a, b, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArchimedeanReport {
    pub checked: usize,
    /// Pairs with `a ≤_r b` for every tested `r > 0` but `a ≰ b`.
    pub counterexamples: Vec<(String, String)>,
    /// Whether the verdict rests on exact closed forms.
    pub exact: bool,
}

impl ArchimedeanReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub const ARCHIMEDEAN_PROBE_DEPTH: u32 = 24;

/// Checks `(∀r > 0. a ≤_r b) ⟹ a ≤ b` on sampled pairs. With a closed form
/// for `ρ` the test is `ρ(a,b) = 0 ⟹ a ≤ b`; otherwise `r = 2^-k` is probed.
pub fn check_archimedean<M: UModule>(m: &M, samples: &[(M::Elem, M::Elem)]) -> ArchimedeanReport {
    let mut counterexamples = Vec::new();
    let mut exact = true;
    for (a, b) in samples {
        let small = match m.rho_closed_form(a, b) {
            Some(r) => r == zero(),
            None => {
                exact = false;
                (1..=ARCHIMEDEAN_PROBE_DEPTH).all(|k| {
                    let r = Q::new(1.into(), num_bigint::BigInt::from(1u64 << k));
                    le_r(m, a, b, &r)
                })
            }
        };
        if small && !m.le(a, b) {
            counterexamples.push((m.show(a), m.show(b)));
        }
    }
    ArchimedeanReport { checked: samples.len(), counterexamples, exact }
}

fn check_partition(partition: &[Q]) -> Result<()> {
    if partition.len() < 2 {
        return Err(Error::BadPartition("need at least two points".into()));
    }
    if *partition.last().unwrap() != one() {
        return Err(Error::BadPartition("last point must be 1".into()));
    }
    if partition[0] < zero() {
        return Err(Error::BadPartition("first point must be >= 0".into()));
    }
    if partition.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadPartition("points must be strictly increasing".into()));
    }
    Ok(())
}

/// The piece isomorphisms of `r_0 < … < r_n`.
pub fn piece_isos(partition: &[Q]) -> Result<Vec<PLMap>> {
    check_partition(partition)?;
    partition.windows(2).map(|w| PLMap::piece_iso(&w[0], &w[1])).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnstackOutcome {
    pub hypothesis: bool,
    pub conclusion: bool,
}

impl UnstackOutcome {
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

/// Tests `(∀i. u_i(a) ≤ u_i(b ∔ r_0)) ⟹ a ≤_{r_0} b` for the piece isos of
/// the partition. Partitions beginning at 0 test the stackability axiom.
pub fn unstack_verify<M: UModule>(m: &M, a: &M::Elem, b: &M::Elem, partition: &[Q]) -> Result<UnstackOutcome> {
    let full: Vec<Q>;
    let parts = if partition[0] == zero() {
        partition
    } else {
        full = std::iter::once(zero()).chain(partition.iter().cloned()).collect();
        &full[..]
    };
    let r = partition[0].clone();
    let isos = piece_isos(parts)?;
    let shift = PLMap::trunc_add(&r)?;
    let isos = if r == zero() { &isos[..] } else { &isos[1..] };
    let hypothesis = isos.iter().all(|u| m.le(&m.act(u, a), &m.act(&u.compose(&shift), b)));
    Ok(UnstackOutcome { hypothesis, conclusion: le_r(m, a, b, &r) })
}

fn witness_maps(av: &Q, bv: &Q) -> Result<(PLMap, PLMap)> {
    let v = if *bv >= one() { PLMap::identity() } else { PLMap::canonical_lower(bv)? };
    let u = if *av <= zero() { PLMap::identity() } else { PLMap::canonical_upper(av)? };
    Ok((u, v))
}

/// Glues pieces `a_1, …, a_n` along a partition `0 = r_0 < … < r_n = 1`:
/// the unique `c` with `u_i(c) = a_i`.
pub fn stack_glue_n<M: UModule>(m: &M, partition: &[Q], pieces: &[M::Elem]) -> Result<M::Elem> {
    check_partition(partition)?;
    if partition[0] != zero() {
        return Err(Error::BadPartition("first point must be 0".into()));
    }
    if pieces.len() + 1 != partition.len() {
        return Err(Error::BadPartition(format!("{} pieces for {} intervals", pieces.len(), partition.len() - 1)));
    }
    let isos = piece_isos(partition)?;
    for i in 0..pieces.len().saturating_sub(1) {
        let (lower, upper) = (&pieces[i], &pieces[i + 1]);
        let bad = m
            .incompatibility(lower, upper)
            .ok_or_else(|| Error::Unsupported("compatibility is not decidable on this module".into()))?;
        if let Some((av, bv)) = bad {
            let (u, v) = witness_maps(&av, &bv)?;
            debug_assert!(!m.le(&m.act(&v, upper), &m.act(&u, lower)));
            return Err(Error::Incompatible { u: u.to_json_string(), v: v.to_json_string() });
        }
    }
    let parts: Vec<(PLMap, M::Elem)> = isos
        .iter()
        .zip(pieces)
        .map(|(u, a)| Ok((u.right_adjoint()?, a.clone())))
        .collect::<Result<_>>()?;
    let c = m
        .pointwise_glue(&parts)
        .ok_or_else(|| Error::Unsupported("module is not pointwise".into()))??;
    for (u, piece) in isos.iter().zip(pieces) {
        let got = m.act(u, &c);
        if &got != piece {
            return Err(Error::Invariant(format!(
                "glued element {} projects to {} instead of {}",
                m.show(&c),
                m.show(&got),
                m.show(piece)
            )));
        }
    }
    Ok(c)
}

/// The unique `c` with `lower_r(c) = a` and `upper_r(c) = b`.
pub fn stack_glue<M: UModule>(m: &M, r: &Q, a: &M::Elem, b: &M::Elem) -> Result<M::Elem> {
    if !(*r > zero() && *r < one()) {
        return Err(Error::Precondition(format!("need 0 < r < 1, got {}", fmt_q(r))));
    }
    stack_glue_n(m, &[zero(), r.clone(), one()], &[a.clone(), b.clone()])
}

/// The action of `w ∈ Û` extending the `U`-action.
pub fn extend_to_uhat<M: UModule>(m: &M, w: &PLMap, a: &M::Elem) -> Result<M::Elem> {
    if !w.in_uhat() {
        return Err(Error::Precondition("map is not in Û".into()));
    }
    let w0 = w.eval(&zero());
    let top = m.top().ok_or_else(|| Error::MissingMeet("top".into()))?;
    if w0 == one() {
        return Ok(top);
    }
    if w0 == zero() {
        return Ok(m.act(w, a));
    }
    let v = PLMap::canonical_upper(&w0)?;
    let b = m.act(&v.compose(w), a);
    stack_glue(m, &w0, &top, &b)
}

/// A `U`-invariant closed filter in a coordinate module, stored as the
/// 0/1-valued elements it contains. Every member lies above one of them.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantFilter<E> {
    pub indicators: Vec<E>,
}

impl<E: Clone + PartialEq + fmt::Debug> InvariantFilter<E> {
    pub fn is_empty(&self) -> bool {
        self.indicators.is_empty()
    }

    pub fn contains<M: UModule<Elem = E>>(&self, m: &M, b: &E) -> bool {
        self.indicators.iter().any(|e| m.le(e, b))
    }

    /// `ρ(φ, a) = inf_{c ∈ φ} ρ(c, a)`.
    pub fn rho<M: CoordinateModule<Elem = E>>(&self, m: &M, a: &E) -> Q {
        let ac = m.coords(a);
        self.indicators
            .iter()
            .map(|e| {
                m.coords(e)
                    .iter()
                    .zip(&ac)
                    .filter(|(v, _)| **v == one())
                    .map(|(_, x)| one() - x)
                    .max()
                    .unwrap_or_else(zero)
            })
            .min()
            .unwrap_or_else(one)
    }

    /// The morphism `a ↦ 1 − ρ(φ, a)` into `[0,1]`.
    pub fn morphism_value<M: CoordinateModule<Elem = E>>(&self, m: &M, a: &E) -> Q {
        one() - self.rho(m, a)
    }
}

/// The least element of the closure of `U_r(a) = {u·a | u(r) = 1}`.
pub fn orbit_floor<M: CoordinateModule>(m: &M, a: &M::Elem, r: &Q) -> Result<M::Elem> {
    if !(*r > zero() && *r <= one()) {
        return Err(Error::Precondition(format!("need 0 < r <= 1, got {}", fmt_q(r))));
    }
    let c = m.coords(a);
    let below = c.iter().filter(|v| *v < r).max().cloned().unwrap_or_else(zero);
    let s = (below + r) / Q::from_integer(2.into());
    let u = if *r == one() { PLMap::canonical_upper(&s)? } else { PLMap::piece_iso(&s, r)? };
    let floor = m.act(&u, a);
    debug_assert!(m.coords(&floor).iter().zip(&c).all(|(f, v)| (*f == one()) == (v >= r)));
    Ok(floor)
}

/// Whether `b` lies in the closure of `U_r(a)`'s upper set.
pub fn in_orbit_closure<M: CoordinateModule>(m: &M, a: &M::Elem, r: &Q, b: &M::Elem) -> Result<bool> {
    Ok(m.le(&orbit_floor(m, a, r)?, b))
}

fn close_under_meets<M: UModule>(m: &M, mut set: Vec<M::Elem>) -> Vec<M::Elem> {
    loop {
        let mut added = false;
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                if let Some(c) = m.meet(&set[i], &set[j]) {
                    if !set.contains(&c) {
                        set.push(c);
                        added = true;
                    }
                }
            }
        }
        if !added {
            return set;
        }
    }
}

/// The least `U`-invariant closed `Ψ^op`-filter containing the generators.
pub fn closed_invariant_filter<M: CoordinateModule>(m: &M, generators: &[M::Elem]) -> Result<InvariantFilter<M::Elem>> {
    let mut set = Vec::new();
    for g in generators {
        let e = orbit_floor(m, g, &one())?;
        if !set.contains(&e) {
            set.push(e);
        }
    }
    if set.is_empty() && m.requires_top() {
        set.push(m.top().ok_or_else(|| Error::MissingMeet("top".into()))?);
    }
    if m.requires_meets() {
        set = close_under_meets(m, set);
    }
    let all = m.indicator_elements()?;
    let indicators = all.into_iter().filter(|e| set.iter().any(|g| m.le(g, e))).collect();
    Ok(InvariantFilter { indicators })
}

pub const DEFAULT_FILTER_ENUM_BOUND: usize = 16;

/// All invariant closed filters with their morphisms into `[0,1]`. Each
/// round trip `f^{-1}(1) = φ` is checked on the indicator elements.
pub fn morphisms_to_i<M: CoordinateModule>(m: &M) -> Result<Vec<InvariantFilter<M::Elem>>> {
    let p = m.indicator_elements()?;
    if p.len() > DEFAULT_FILTER_ENUM_BOUND {
        return Err(Error::SizeGuard { what: "indicator elements", size: p.len(), bound: DEFAULT_FILTER_ENUM_BOUND });
    }
    let top = m.top();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << p.len()) {
        let has = |i: usize| mask >> i & 1 == 1;
        let upward = (0..p.len()).all(|i| !has(i) || (0..p.len()).all(|j| !m.le(&p[i], &p[j]) || has(j)));
        if !upward {
            continue;
        }
        if m.requires_top() && (mask == 0 || top.as_ref().is_none_or(|t| !p.iter().enumerate().any(|(i, e)| e == t && has(i)))) {
            continue;
        }
        if m.requires_meets() {
            let closed = (0..p.len()).filter(|&i| has(i)).all(|i| {
                (0..p.len()).filter(|&j| has(j)).all(|j| match m.meet(&p[i], &p[j]) {
                    Some(c) => p.iter().position(|e| *e == c).is_some_and(has),
                    None => false,
                })
            });
            if !closed {
                continue;
            }
        }
        let phi = InvariantFilter { indicators: (0..p.len()).filter(|&i| has(i)).map(|i| p[i].clone()).collect() };
        for (i, e) in p.iter().enumerate() {
            if (phi.morphism_value(m, e) == one()) != has(i) {
                return Err(Error::Invariant(format!("round trip fails at {}", m.show(e))));
            }
        }
        out.push(phi);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::q;

    fn c2() -> FunctionModule {
        FunctionModule::directed(FinPoset::chain(2)).unwrap()
    }

    #[test]
    fn interval_le_r_and_rho() {
        let m = IntervalModule::default();
        assert!(le_r(&m, &q(7, 10), &q(5, 10), &q(2, 10)));
        assert!(!le_r(&m, &q(7, 10), &q(5, 10), &q(1, 10)));
        assert_eq!(rho(&m, &q(7, 10), &q(5, 10)).unwrap(), q(1, 5));
        assert_eq!(dist(&m, &q(1, 4), &q(3, 4)).unwrap(), q(1, 2));
        let (lo, hi) = rho_bisection(&m, &q(7, 10), &q(5, 10), 20);
        assert!(lo < q(1, 5) && q(1, 5) <= hi);
    }

    #[test]
    fn function_module_le_r_needs_full_radius() {
        let m = c2();
        let a = vec![one(), one()];
        let b = vec![zero(), one()];
        for k in 0..=8 {
            let r = q(k, 8);
            assert_eq!(le_r(&m, &a, &b, &r), k == 8);
        }
    }

    #[test]
    fn pl_rho() {
        let m = PLModule;
        let f = PLMap::trunc_sub(&q(1, 4)).unwrap();
        assert_eq!(rho(&m, &PLMap::identity(), &f).unwrap(), q(1, 4));
    }

    #[test]
    fn archimedean_checks() {
        let m = IntervalModule::default();
        let pairs: Vec<(Q, Q)> = (0..=4).flat_map(|i| (0..=4).map(move |j| (q(i, 4), q(j, 4)))).collect();
        assert!(check_archimedean(&m, &pairs).passed());
        let bad = check_archimedean(&EarlySaturationModule, &[(true, false), (false, true)]);
        assert!(!bad.passed());
        assert_eq!(bad.counterexamples.len(), 1);
    }

    #[test]
    fn unstack_examples() {
        let m = IntervalModule::default();
        let part = [zero(), q(1, 2), one()];
        let o = unstack_verify(&m, &q(1, 2), &q(1, 2), &part).unwrap();
        assert!(o.hypothesis && o.conclusion);
        let o = unstack_verify(&m, &q(3, 4), &q(1, 4), &part).unwrap();
        assert!(!o.hypothesis && o.holds());
        assert!(unstack_verify(&m, &q(1, 2), &q(1, 2), &[zero(), q(1, 2), q(1, 2), one()]).is_err());
    }

    #[test]
    fn glue_examples() {
        let m = IntervalModule::default();
        let h = q(1, 2);
        assert_eq!(stack_glue(&m, &h, &one(), &h).unwrap(), q(3, 4));
        assert_eq!(stack_glue(&m, &h, &h, &zero()).unwrap(), q(1, 4));
        match stack_glue(&m, &h, &h, &h) {
            Err(Error::Incompatible { .. }) => {}
            other => panic!("{other:?}"),
        }
        let c = stack_glue_n(&m, &[zero(), q(1, 3), q(2, 3), one()], &[one(), one(), q(1, 2)]).unwrap();
        assert_eq!(c, q(5, 6));
    }

    #[test]
    fn extension_examples() {
        let m = IntervalModule::default();
        let w = PLMap::trunc_add(&q(1, 4)).unwrap();
        assert_eq!(extend_to_uhat(&m, &w, &q(1, 2)).unwrap(), q(3, 4));
        assert_eq!(extend_to_uhat(&m, &PLMap::constant(&one()).unwrap(), &q(1, 3)).unwrap(), one());
        let f = c2();
        let w = PLMap::trunc_add(&q(1, 2)).unwrap();
        assert_eq!(extend_to_uhat(&f, &w, &vec![zero(), one()]).unwrap(), vec![q(1, 2), one()]);
        let p = PLModule;
        let g = PLMap::from_points(&[(zero(), zero()), (q(1, 2), q(1, 4)), (one(), one())]).unwrap();
        let got = extend_to_uhat(&p, &w, &g).unwrap();
        assert_eq!(got, w.compose(&g));
    }

    #[test]
    fn filters() {
        let m = IntervalModule::default();
        let f = closed_invariant_filter(&m, &[one()]).unwrap();
        assert_eq!(f.indicators, vec![one()]);
        assert!(!f.contains(&m, &q(99, 100)));
        let f = closed_invariant_filter(&m, &[q(1, 2)]).unwrap();
        assert!(f.contains(&m, &zero()));
        let fm = c2();
        let f = closed_invariant_filter(&fm, &[vec![zero(), one()]]).unwrap();
        assert!(f.contains(&fm, &vec![zero(), one()]));
        assert!(f.contains(&fm, &vec![q(1, 3), one()]));
        assert!(in_orbit_closure(&fm, &vec![q(1, 2), one()], &q(1, 2), &vec![one(), one()]).unwrap());
        assert!(!in_orbit_closure(&fm, &vec![q(1, 2), one()], &q(1, 2), &vec![q(9, 10), one()]).unwrap());
    }

    #[test]
    fn morphism_counts() {
        let m = IntervalModule::default();
        let ks = morphisms_to_i(&m).unwrap();
        assert_eq!(ks.len(), 2);
        let all = IntervalModule::new(DoctrinePair::for_phi(Builtin::AllPosets));
        assert_eq!(morphisms_to_i(&all).unwrap().len(), 3);
        let fm = c2();
        let ks = morphisms_to_i(&fm).unwrap();
        assert_eq!(ks.len(), 2);
        let a = vec![q(1, 3), one()];
        let mut vals: Vec<Q> = ks.iter().map(|k| k.morphism_value(&fm, &a)).collect();
        vals.sort();
        assert_eq!(vals, vec![q(1, 3), one()]);
    }

    #[test]
    fn function_module_validation() {
        let d = FunctionModule::directed(FinPoset::diamond()).unwrap();
        assert!(d.element(vec![zero(), q(1, 2), q(1, 3), one()]).is_err());
        assert!(d.element(vec![zero(), q(1, 2), zero(), one()]).is_ok());
        let j = serde_json::json!({"0": "0", "1": "1/2", "2": "0", "3": "1"});
        let lbl = d.base.label(1).to_string();
        let e = d.element_from_json(&j);
        if lbl == "1" {
            assert_eq!(e.unwrap(), vec![zero(), q(1, 2), zero(), one()]);
        }
        assert_eq!(d.indicator_elements().unwrap().len(), 4);
    }
}
