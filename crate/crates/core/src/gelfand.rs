//! Separation of points by morphisms into `[0,1]`, the evaluation maps, and
//! approximate inverses on the module side.

use crate::continuity::{interval_way_below, waydown};
use crate::doctrines::Doctrine;
use crate::error::{Error, Result};
use crate::interval::{fmt_q, one, zero, PLMap, Q};
use crate::order::FinPoset;
use crate::umodules::{
    closed_invariant_filter, le_r, orbit_floor, stack_glue_n, CoordinateModule, InvariantFilter, UModule,
};

pub const DEFAULT_MAX_DEPTH: u32 = 16;

fn dyadic(k: usize, depth: u32) -> Q {
    Q::new(k.into(), (1u64 << depth).into())
}

/// A dyadic chain `g(k / 2^depth)` with `g(r) ≪ g(s)` for `r < s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicChain {
    pub depth: u32,
    pub points: Vec<usize>,
}

/// Builds the chain by repeated least interpolation between neighbours.
pub fn interpolate_chain(x: &FinPoset, d: &Doctrine, y: usize, top: usize, depth: u32) -> Result<DyadicChain> {
    if depth > DEFAULT_MAX_DEPTH {
        return Err(Error::SizeGuard { what: "depth", size: depth as usize, bound: DEFAULT_MAX_DEPTH as usize });
    }
    x.check_index(y)?;
    x.check_index(top)?;
    let wb = waydown(x, d)?;
    if !wb.way_below(y, top) {
        return Err(Error::NotWayBelow(format!("{} is not way below {}", x.label(y), x.label(top))));
    }
    let ext = x.linear_extension();
    let mut points = vec![y, top];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(points.len() * 2 - 1);
        for w in points.windows(2) {
            next.push(w[0]);
            let cands: Vec<usize> =
                ext.iter().copied().filter(|&z| wb.way_below(w[0], z) && wb.way_below(z, w[1])).collect();
            let least = cands
                .iter()
                .copied()
                .find(|&z| cands.iter().all(|&c| c == z || !x.lt(c, z)))
                .ok_or_else(|| {
                    Error::Invariant(format!("no interpolant between {} and {}", x.label(w[0]), x.label(w[1])))
                })?;
            next.push(least);
        }
        next.push(*points.last().unwrap());
        points = next;
    }
    Ok(DyadicChain { depth, points })
}

/// The midpoint chain `y + k(x − y)/2^depth` in `[0,1]`.
pub fn interpolate_chain_interval(d: &Doctrine, y: &Q, x: &Q, depth: u32) -> Result<Vec<Q>> {
    if !interval_way_below(y, x, d)? {
        return Err(Error::NotWayBelow(format!("{} is not way below {}", fmt_q(y), fmt_q(x))));
    }
    let n = 1usize << depth;
    Ok((0..=n).map(|k| y + (x - y) * dyadic(k, depth)).collect())
}

/// A morphism from a finite lattice into `[0,1]` with its lower adjoint
/// sampled on the dyadic grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleMorphism {
    pub values: Vec<Q>,
    pub depth: u32,
    /// `f⁺(k / 2^depth)` for `k = 0..=2^depth`.
    pub lower: Vec<usize>,
    pub preserves_meets: bool,
    /// Whether the required joins of the doctrine are also preserved.
    pub preserves_joins: bool,
}

impl ScaleMorphism {
    pub fn value(&self, z: usize) -> &Q {
        &self.values[z]
    }

    pub fn lower_at(&self, k: usize) -> usize {
        self.lower[k]
    }

    /// `f⁺(r) ≤ z ⟺ r ≤ f(z)` on every grid point and element.
    pub fn check_adjunction(&self, x: &FinPoset) -> bool {
        (0..self.lower.len()).all(|k| {
            let r = dyadic(k, self.depth);
            (0..x.len()).all(|z| x.leq(self.lower[k], z) == (r <= self.values[z]))
        })
    }
}

fn meets_and_joins(x: &FinPoset, d: &Doctrine, t: &[Q]) -> Result<(bool, bool)> {
    let n = x.len();
    let top = x.top().ok_or(Error::NotALattice)?;
    let bot = x.bottom().ok_or(Error::NotALattice)?;
    let mut meets = t[top] == one();
    let mut joins = !d.contains_empty() || t[bot] == zero();
    let binary = d.member(&FinPoset::antichain(2));
    for i in 0..n {
        for j in 0..n {
            let m = x.meet(i, j).ok_or(Error::NotALattice)?;
            meets &= t[m] == t[i].clone().min(t[j].clone());
            if binary {
                let jn = x.join(i, j).ok_or(Error::NotALattice)?;
                joins &= t[jn] == t[i].clone().max(t[j].clone());
            }
        }
    }
    Ok((meets, joins))
}

/// A morphism `f` with `y ≤ f⁺(1) ≤ x`, built from the dyadic chain.
/// The grid convention is `f⁺(r) = g(⌈r 2^depth⌉ / 2^depth)` for `r > 0`
/// and `f⁺(0) = ⊥`, so `f(z) = max{k | g(k/2^depth) ≤ z} / 2^depth`.
pub fn urysohn_separate(x: &FinPoset, d: &Doctrine, y: usize, top: usize, depth: u32) -> Result<ScaleMorphism> {
    let g = interpolate_chain(x, d, y, top, depth)?;
    let bot = x.bottom().ok_or(Error::NotALattice)?;
    let n = 1usize << depth;
    let values: Vec<Q> = (0..x.len())
        .map(|z| match (0..=n).rev().find(|&k| x.leq(g.points[k], z)) {
            Some(k) => dyadic(k, depth),
            None => zero(),
        })
        .collect();
    let mut lower = g.points.clone();
    lower[0] = bot;
    let (preserves_meets, preserves_joins) = meets_and_joins(x, d, &values)?;
    let f = ScaleMorphism { values, depth, lower, preserves_meets, preserves_joins };
    if !f.preserves_meets {
        return Err(Error::Invariant("separating map does not preserve meets".into()));
    }
    let f1 = f.lower[n];
    if !(x.leq(y, f1) && x.leq(f1, top)) {
        return Err(Error::Invariant("f⁺(1) is not between y and x".into()));
    }
    if !f.check_adjunction(x) {
        return Err(Error::Invariant("grid adjunction fails".into()));
    }
    Ok(f)
}

/// `clamp((z − y)/(x − y))`, the separating map on `[0,1]`.
pub fn urysohn_separate_interval(d: &Doctrine, y: &Q, x: &Q) -> Result<PLMap> {
    if !interval_way_below(y, x, d)? {
        return Err(Error::NotWayBelow(format!("{} is not way below {}", fmt_q(y), fmt_q(x))));
    }
    if y == x {
        return PLMap::constant(&one());
    }
    if *x == one() && *y == zero() {
        return Ok(PLMap::identity());
    }
    if *y == zero() {
        return PLMap::canonical_lower(x);
    }
    PLMap::piece_iso(y, x)
}

/// A morphism `f` with `f(x) > f(y)`, for `x ≰ y`.
pub fn eta_separation(x: &FinPoset, d: &Doctrine, a: usize, b: usize, depth: u32) -> Result<ScaleMorphism> {
    if x.leq(a, b) {
        return Err(Error::Precondition(format!("{} <= {}", x.label(a), x.label(b))));
    }
    let wb = waydown(x, d)?;
    let z = x
        .linear_extension()
        .into_iter()
        .find(|&z| wb.way_below(z, a) && !x.leq(z, b))
        .ok_or_else(|| Error::NotContinuous(d.name().to_string()))?;
    let f = urysohn_separate(x, d, z, a, depth)?;
    if f.values[a] <= f.values[b] {
        return Err(Error::Invariant("separating map does not separate".into()));
    }
    Ok(f)
}

/// `f(x) > f(y)` on `[0,1]`, for `x > y`.
pub fn eta_separation_interval(d: &Doctrine, x: &Q, y: &Q) -> Result<PLMap> {
    if x <= y {
        return Err(Error::Precondition(format!("{} <= {}", fmt_q(x), fmt_q(y))));
    }
    urysohn_separate_interval(d, y, x)
}

/// Whether `b` lies in the closure of `U_r(a)`.
pub fn orbit_ur<M: CoordinateModule>(m: &M, a: &M::Elem, r: &Q, b: &M::Elem) -> Result<bool> {
    crate::umodules::in_orbit_closure(m, a, r, b)
}

/// The transposed evaluation `r ↦ closure(U_r(a))` at `r = i/n`, `i = 1..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridDual<E> {
    pub n: usize,
    pub filters: Vec<InvariantFilter<E>>,
}

fn grid(i: usize, n: usize) -> Q {
    Q::new(i.into(), n.into())
}

pub fn iota_transpose<M: CoordinateModule>(m: &M, a: &M::Elem, n: usize) -> Result<GridDual<M::Elem>> {
    if n < 1 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let filters = (1..=n)
        .map(|i| closed_invariant_filter(m, &[orbit_floor(m, a, &grid(i, n))?]))
        .collect::<Result<_>>()?;
    Ok(GridDual { n, filters })
}

fn filter_subset<M: UModule>(m: &M, a: &InvariantFilter<M::Elem>, b: &InvariantFilter<M::Elem>) -> bool {
    a.indicators.iter().all(|e| b.contains(m, e))
}

#[derive(Clone, Debug, PartialEq)]
pub struct IotaPairReport {
    pub a: String,
    pub b: String,
    pub le: bool,
    /// Some `r` with `U_r(b) ⊄ closure(U_r(a))`.
    pub witness: Option<Q>,
    /// Grid sizes where every `U_{i/n}` containment held but `a ≤_{2/n} b` failed.
    pub chain_violations: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IotaReport {
    pub pairs: Vec<IotaPairReport>,
}

impl IotaReport {
    /// Witness exists exactly for the pairs with `a ≰ b`, and no chain violation.
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.le == p.witness.is_none() && p.chain_violations.is_empty())
    }
}

pub const IOTA_CHAIN_MAX_N: usize = 16;

/// Checks that `ι` reflects the order on the sampled pairs.
pub fn iota_embedding_check<M: CoordinateModule>(m: &M, samples: &[(M::Elem, M::Elem)]) -> Result<IotaReport> {
    let mut pairs = Vec::new();
    for (a, b) in samples {
        let mut radii: Vec<Q> = m.coords(a).into_iter().filter(|v| *v > zero()).collect();
        radii.sort();
        radii.dedup();
        let mut witness = None;
        for r in radii {
            let fa = orbit_floor(m, a, &r)?;
            let fb = orbit_floor(m, b, &r)?;
            if !m.le(&fa, &fb) {
                witness = Some(r);
                break;
            }
        }
        let mut chain_violations = Vec::new();
        for n in 2..=IOTA_CHAIN_MAX_N {
            let ta = iota_transpose(m, a, n)?;
            let tb = iota_transpose(m, b, n)?;
            let all = ta.filters.iter().zip(&tb.filters).all(|(fa, fb)| filter_subset(m, fb, fa));
            if all && !le_r(m, a, b, &grid(2, n)) {
                chain_violations.push(n);
            }
        }
        pairs.push(IotaPairReport { a: m.show(a), b: m.show(b), le: m.le(a, b), witness, chain_violations });
    }
    Ok(IotaReport { pairs })
}

fn least_member<M: CoordinateModule>(m: &M, f: &InvariantFilter<M::Elem>) -> Result<M::Elem> {
    if let Some(e) = f.indicators.iter().find(|e| f.indicators.iter().all(|o| m.le(e, o))) {
        return Ok(e.clone());
    }
    let mut it = f.indicators.iter();
    let first = it.next().ok_or_else(|| Error::Precondition("empty filter has no member".into()))?;
    it.try_fold(first.clone(), |acc, e| m.meet(&acc, e).ok_or_else(|| Error::MissingMeet("filter generators".into())))
}

/// An element `a` whose evaluation is within `2/n` of the given grid point.
pub fn approximate_inverse<M: CoordinateModule>(m: &M, f: &GridDual<M::Elem>) -> Result<M::Elem> {
    let n = f.n;
    if f.filters.len() != n {
        return Err(Error::Precondition(format!("{} filters for grid size {n}", f.filters.len())));
    }
    let pieces: Vec<M::Elem> = f.filters.iter().map(|phi| least_member(m, phi)).collect::<Result<_>>()?;
    let partition: Vec<Q> = (0..=n).map(|i| grid(i, n)).collect();
    let a = stack_glue_n(m, &partition, &pieces)?;
    let ia = iota_transpose(m, &a, n)?;
    for i in 1..n {
        if !filter_subset(m, &ia.filters[i - 1], &f.filters[i]) || !filter_subset(m, &f.filters[i - 1], &ia.filters[i]) {
            return Err(Error::Invariant(format!("grid containment fails at {}/{n}", i + 1)));
        }
    }
    Ok(a)
}
