//! Exact arithmetic on `[0,1]` and piecewise-linear monotone self-maps of it.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.25`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Schema { pointer: String::new(), message: format!("not a rational: `{s}`") };
    if let Some((a, b)) = s.split_once('/') {
        let n: num_bigint::BigInt = a.trim().parse().map_err(|_| bad())?;
        let d: num_bigint::BigInt = b.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((a, b)) = s.split_once('.') {
        if !b.chars().all(|c| c.is_ascii_digit()) || b.is_empty() {
            return Err(bad());
        }
        let neg = a.starts_with('-');
        let ip: num_bigint::BigInt = if a.is_empty() || a == "-" { 0.into() } else { a.parse().map_err(|_| bad())? };
        let fp: num_bigint::BigInt = b.parse().map_err(|_| bad())?;
        let scale = num_bigint::BigInt::from(10u32).pow(b.len() as u32);
        let frac = Q::new(fp, scale);
        let ip = Q::from_integer(ip);
        return Ok(if neg { ip - frac } else { ip + frac });
    }
    let n: num_bigint::BigInt = s.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn in_unit(x: &Q) -> bool {
    !x.is_negative() && *x <= one()
}

/// `min(r + s, 1)`.
pub fn dot_add(r: &Q, s: &Q) -> Q {
    (r + s).min(one())
}

/// `max(r - s, 0)`.
pub fn dot_sub(r: &Q, s: &Q) -> Q {
    (r - s).max(zero())
}

/// A rational in `[0,1]`, kept in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational01(Q);

impl Rational01 {
    pub fn new(x: Q) -> Result<Self> {
        if in_unit(&x) {
            Ok(Rational01(x))
        } else {
            Err(Error::OutOfRange(fmt_q(&x)))
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_q(s)?)
    }

    pub fn value(&self) -> &Q {
        &self.0
    }

    pub fn into_inner(self) -> Q {
        self.0
    }
}

impl std::fmt::Display for Rational01 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&fmt_q(&self.0))
    }
}

/// A monotone piecewise-linear map `[0,1] -> [0,1]`, possibly with jumps.
///
/// `breaks` run from 0 to 1; `vals[i]` is the value at `breaks[i]`; `segs[i]` holds the
/// right limit at `breaks[i]` and the left limit at `breaks[i+1]`, the map being affine
/// strictly between them. Values are kept in normal form (no removable breaks), so
/// structural equality is equality of maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PLMap {
    breaks: Vec<Q>,
    vals: Vec<Q>,
    segs: Vec<(Q, Q)>,
}

impl std::fmt::Debug for PLMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PL[")?;
        for i in 0..self.breaks.len() {
            write!(f, "{}↦{}", fmt_q(&self.breaks[i]), fmt_q(&self.vals[i]))?;
            if i < self.segs.len() {
                let (s, e) = &self.segs[i];
                write!(f, " ({}..{}) ", fmt_q(s), fmt_q(e))?;
            }
        }
        write!(f, "]")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Classification {
    pub in_u: bool,
    pub in_uhat: bool,
    pub continuous: bool,
    pub surjective: bool,
}

impl PLMap {
    /// Builds and validates a map from raw parts, then normalises it.
    pub fn from_parts(breaks: Vec<Q>, vals: Vec<Q>, segs: Vec<(Q, Q)>) -> Result<Self> {
        let k = breaks.len();
        if k < 2 || vals.len() != k || segs.len() != k - 1 {
            return Err(Error::InvalidPl("need at least one segment with matching value lists".into()));
        }
        if !breaks[0].is_zero() || !breaks[k - 1].is_one() {
            return Err(Error::InvalidPl("domain must be exactly [0,1]".into()));
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPl("breakpoints must be strictly increasing".into()));
        }
        for v in vals.iter().chain(segs.iter().flat_map(|(a, b)| [a, b])) {
            if !in_unit(v) {
                return Err(Error::InvalidPl(format!("value {} outside [0,1]", fmt_q(v))));
            }
        }
        for i in 0..k - 1 {
            let (s, e) = &segs[i];
            if !(vals[i] <= *s && s <= e && *e <= vals[i + 1]) {
                return Err(Error::InvalidPl(format!("not monotone near x = {}", fmt_q(&breaks[i]))));
            }
        }
        let mut m = PLMap { breaks, vals, segs };
        m.normalize();
        Ok(m)
    }

    /// Continuous map through the given points, sorted by `x`, covering 0 and 1.
    pub fn from_points(points: &[(Q, Q)]) -> Result<Self> {
        let mut pts: Vec<(Q, Q)> = Vec::new();
        for (x, y) in points {
            match pts.last() {
                Some((px, py)) if px == x => {
                    if py != y {
                        return Err(Error::InvalidPl(format!("two values at x = {}", fmt_q(x))));
                    }
                }
                _ => pts.push((x.clone(), y.clone())),
            }
        }
        let breaks = pts.iter().map(|p| p.0.clone()).collect();
        let vals: Vec<Q> = pts.iter().map(|p| p.1.clone()).collect();
        let segs = vals.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
        Self::from_parts(breaks, vals, segs)
    }

    pub fn identity() -> Self {
        Self::from_points(&[(zero(), zero()), (one(), one())]).unwrap()
    }

    pub fn constant(c: &Q) -> Result<Self> {
        Self::from_points(&[(zero(), c.clone()), (one(), c.clone())])
    }

    /// `x ↦ min(x + r, 1)`.
    pub fn trunc_add(r: &Q) -> Result<Self> {
        check_unit(r)?;
        Self::from_points(&[(zero(), r.clone()), (one() - r, one()), (one(), one())])
    }

    /// `x ↦ max(x - r, 0)`.
    pub fn trunc_sub(r: &Q) -> Result<Self> {
        check_unit(r)?;
        Self::from_points(&[(zero(), zero()), (r.clone(), zero()), (one(), one() - r)])
    }

    /// `min(x / r, 1)`: the linear iso `[0,r] ≅ [0,1]` extended by 1.
    pub fn canonical_lower(r: &Q) -> Result<Self> {
        check_open_unit(r)?;
        Self::from_points(&[(zero(), zero()), (r.clone(), one()), (one(), one())])
    }

    /// `max((x - r) / (1 - r), 0)`: the linear iso `[r,1] ≅ [0,1]` extended by 0.
    pub fn canonical_upper(r: &Q) -> Result<Self> {
        check_open_unit(r)?;
        Self::from_points(&[(zero(), zero()), (r.clone(), zero()), (one(), one())])
    }

    /// The linear iso `[p,q] ≅ [0,1]`, extended by 0 below `p` and by 1 above `q`.
    pub fn piece_iso(p: &Q, q: &Q) -> Result<Self> {
        if !(in_unit(p) && in_unit(q) && p < q) {
            return Err(Error::BadPartition(format!("need 0 <= {} < {} <= 1", fmt_q(p), fmt_q(q))));
        }
        Self::from_points(&[(zero(), zero()), (p.clone(), zero()), (q.clone(), one()), (one(), one())])
    }

    /// The step map equal to `lo` on `[0,c)` and `hi` on `[c,1]`.
    pub fn step(c: &Q, lo: &Q, hi: &Q) -> Result<Self> {
        check_open_unit(c)?;
        Self::from_parts(
            vec![zero(), c.clone(), one()],
            vec![lo.clone(), hi.clone(), hi.clone()],
            vec![(lo.clone(), lo.clone()), (hi.clone(), hi.clone())],
        )
    }

    pub fn breaks(&self) -> &[Q] {
        &self.breaks
    }

    pub fn values_at_breaks(&self) -> &[Q] {
        &self.vals
    }

    pub fn segments(&self) -> &[(Q, Q)] {
        &self.segs
    }

    fn locate(&self, x: &Q) -> std::result::Result<usize, usize> {
        self.breaks.binary_search(x).map_err(|i| i - 1)
    }

    /// Affine interpolation of segment `i` at `x` (any `x` in its closure).
    fn seg_at(&self, i: usize, x: &Q) -> Q {
        let (s, e) = &self.segs[i];
        let (a, b) = (&self.breaks[i], &self.breaks[i + 1]);
        s + (e - s) * (x - a) / (b - a)
    }

    pub fn eval(&self, x: &Q) -> Q {
        match self.locate(x) {
            Ok(i) => self.vals[i].clone(),
            Err(i) => self.seg_at(i, x),
        }
    }

    /// `lim_{t→x+}`; at `x = 1` the value itself.
    pub fn right_limit(&self, x: &Q) -> Q {
        match self.locate(x) {
            Ok(i) if i + 1 == self.breaks.len() => self.vals[i].clone(),
            Ok(i) => self.segs[i].0.clone(),
            Err(i) => self.seg_at(i, x),
        }
    }

    /// `lim_{t→x-}`; at `x = 0` the value itself.
    pub fn left_limit(&self, x: &Q) -> Q {
        match self.locate(x) {
            Ok(0) => self.vals[0].clone(),
            Ok(i) => self.segs[i - 1].1.clone(),
            Err(i) => self.seg_at(i, x),
        }
    }

    fn normalize(&mut self) {
        let mut i = 1;
        while i + 1 < self.breaks.len() {
            let (ps, pe) = &self.segs[i - 1];
            let (ns, ne) = &self.segs[i];
            let continuous = *pe == self.vals[i] && *ns == self.vals[i];
            let slope_p = (pe - ps) / (&self.breaks[i] - &self.breaks[i - 1]);
            let slope_n = (ne - ns) / (&self.breaks[i + 1] - &self.breaks[i]);
            if continuous && slope_p == slope_n {
                let end = self.segs[i].1.clone();
                self.segs[i - 1].1 = end;
                self.segs.remove(i);
                self.breaks.remove(i);
                self.vals.remove(i);
            } else {
                i += 1;
            }
        }
    }

    /// Builds a map on a refinement of the breakpoints from a point rule and a segment rule.
    fn tabulate(breaks: Vec<Q>, point: impl Fn(&Q) -> Q, seg: impl Fn(&Q, &Q) -> (Q, Q)) -> Self {
        let vals = breaks.iter().map(&point).collect();
        let segs = breaks.windows(2).map(|w| seg(&w[0], &w[1])).collect();
        let mut m = PLMap { breaks, vals, segs };
        m.normalize();
        m
    }

    fn merged_breaks(&self, other: &PLMap) -> Vec<Q> {
        let mut b: Vec<Q> = self.breaks.iter().chain(other.breaks.iter()).cloned().collect();
        b.sort();
        b.dedup();
        b
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &PLMap) -> PLMap {
        let mut b = inner.breaks.clone();
        for i in 0..inner.segs.len() {
            let (ys, ye) = &inner.segs[i];
            if ys == ye {
                continue;
            }
            let (a, bb) = (&inner.breaks[i], &inner.breaks[i + 1]);
            for c in &self.breaks {
                if ys < c && c < ye {
                    b.push(a + (c - ys) * (bb - a) / (ye - ys));
                }
            }
        }
        b.sort();
        b.dedup();
        PLMap::tabulate(
            b,
            |x| self.eval(&inner.eval(x)),
            |p, r| {
                let ys = inner.right_limit(p);
                let ye = inner.left_limit(r);
                if ys == ye {
                    let v = self.eval(&ys);
                    (v.clone(), v)
                } else {
                    (self.right_limit(&ys), self.left_limit(&ye))
                }
            },
        )
    }

    pub fn is_continuous(&self) -> bool {
        (0..self.segs.len()).all(|i| self.segs[i].0 == self.vals[i] && self.segs[i].1 == self.vals[i + 1])
    }

    /// Image coverage of `[0,1]`, computed by sweeping the pieces of the image.
    pub fn is_surjective(&self) -> bool {
        // pieces (lo, hi, lo_closed, hi_closed) of the image, ordered by lower end
        let mut pieces: Vec<(Q, Q, bool, bool)> = self.vals.iter().map(|v| (v.clone(), v.clone(), true, true)).collect();
        for (s, e) in &self.segs {
            if s < e {
                pieces.push((s.clone(), e.clone(), false, false));
            }
        }
        pieces.sort_by(|a, b| a.0.cmp(&b.0).then(b.2.cmp(&a.2)));
        // covered so far: [0, reach) or [0, reach]
        let mut reach: Option<(Q, bool)> = None;
        for (lo, hi, lc, hc) in pieces {
            let joins = match &reach {
                None => lo.is_zero() && lc,
                Some((r, rc)) => lo < *r || (lo == *r && (*rc || lc)),
            };
            if !joins {
                return false;
            }
            reach = match reach {
                None => Some((hi, hc)),
                Some((r, rc)) => {
                    if hi > r {
                        Some((hi, hc))
                    } else if hi == r {
                        Some((r, rc || hc))
                    } else {
                        Some((r, rc))
                    }
                }
            };
        }
        matches!(reach, Some((r, true)) if r.is_one())
    }

    pub fn classify(&self) -> Classification {
        let continuous = self.is_continuous();
        let surjective = self.is_surjective();
        let fixes_one = self.vals.last().unwrap().is_one();
        Classification {
            in_u: continuous && self.vals[0].is_zero() && fixes_one && surjective,
            in_uhat: continuous && fixes_one,
            continuous,
            surjective,
        }
    }

    pub fn in_u(&self) -> bool {
        self.classify().in_u
    }

    pub fn in_uhat(&self) -> bool {
        self.classify().in_uhat
    }

    /// `u^×(y) = max{x | u(x) <= y}` for `u` in `U`.
    pub fn right_adjoint(&self) -> Result<PLMap> {
        if !self.in_u() {
            return Err(Error::NotSurjective);
        }
        let mut levels: Vec<Q> = self.vals.clone();
        levels.dedup();
        // first and last x with u(x) = c, for each break value c
        let span = |c: &Q| {
            let first = self.breaks.iter().zip(&self.vals).find(|(_, v)| *v == c).unwrap().0.clone();
            let last = self.breaks.iter().zip(&self.vals).rev().find(|(_, v)| *v == c).unwrap().0.clone();
            (first, last)
        };
        let spans: Vec<(Q, Q)> = levels.iter().map(span).collect();
        let mut vals: Vec<Q> = spans.iter().map(|s| s.1.clone()).collect();
        *vals.last_mut().unwrap() = one();
        let segs = (0..levels.len() - 1).map(|j| (spans[j].1.clone(), spans[j + 1].0.clone())).collect();
        let mut m = PLMap { breaks: levels, vals, segs };
        m.normalize();
        Ok(m)
    }

    /// `u^+(y) = min{x | y <= u(x)}` for `u` in `U`.
    pub fn left_adjoint(&self) -> Result<PLMap> {
        if !self.in_u() {
            return Err(Error::NotSurjective);
        }
        let mut levels: Vec<Q> = self.vals.clone();
        levels.dedup();
        let first = |c: &Q| self.breaks.iter().zip(&self.vals).find(|(_, v)| *v == c).unwrap().0.clone();
        let last = |c: &Q| self.breaks.iter().zip(&self.vals).rev().find(|(_, v)| *v == c).unwrap().0.clone();
        let mut vals: Vec<Q> = levels.iter().map(first).collect();
        vals[0] = zero();
        let segs = (0..levels.len() - 1).map(|j| (last(&levels[j]), first(&levels[j + 1]))).collect();
        let mut m = PLMap { breaks: levels, vals, segs };
        m.normalize();
        Ok(m)
    }

    fn combine(&self, other: &PLMap, pick: impl Fn(&Q, &Q) -> Q) -> PLMap {
        let mut b = self.merged_breaks(other);
        let mut extra = Vec::new();
        for w in b.windows(2) {
            let (p, r) = (&w[0], &w[1]);
            let d0 = self.right_limit(p) - other.right_limit(p);
            let d1 = self.left_limit(r) - other.left_limit(r);
            if (d0.is_positive() && d1.is_negative()) || (d0.is_negative() && d1.is_positive()) {
                extra.push(p + (r - p) * &d0 / (&d0 - &d1));
            }
        }
        b.extend(extra);
        b.sort();
        PLMap::tabulate(
            b,
            |x| pick(&self.eval(x), &other.eval(x)),
            |p, r| {
                (
                    pick(&self.right_limit(p), &other.right_limit(p)),
                    pick(&self.left_limit(r), &other.left_limit(r)),
                )
            },
        )
    }

    pub fn pointwise_min(&self, other: &PLMap) -> PLMap {
        self.combine(other, |a, b| a.min(b).clone())
    }

    pub fn pointwise_max(&self, other: &PLMap) -> PLMap {
        self.combine(other, |a, b| a.max(b).clone())
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &PLMap) -> bool {
        let b = self.merged_breaks(other);
        b.iter().all(|x| {
            self.eval(x) <= other.eval(x) && self.right_limit(x) <= other.right_limit(x) && self.left_limit(x) <= other.left_limit(x)
        })
    }

    /// `sup_x (self(x) ∸ other(x))`.
    pub fn linf_rho(&self, other: &PLMap) -> Q {
        let b = self.merged_breaks(other);
        let mut best = zero();
        for x in &b {
            for d in [
                self.eval(x) - other.eval(x),
                self.right_limit(x) - other.right_limit(x),
                self.left_limit(x) - other.left_limit(x),
            ] {
                if d > best {
                    best = d;
                }
            }
        }
        best
    }
}

fn check_unit(r: &Q) -> Result<()> {
    if in_unit(r) {
        Ok(())
    } else {
        Err(Error::OutOfRange(fmt_q(r)))
    }
}

fn check_open_unit(r: &Q) -> Result<()> {
    if r.is_positive() && *r < one() {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("{} must lie strictly between 0 and 1", fmt_q(r))))
    }
}

/// `canonical_r_iso` with an explicit side.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Lower,
    Upper,
}

pub fn canonical_r_iso(r: &Q, side: Side) -> Result<PLMap> {
    match side {
        Side::Lower => PLMap::canonical_lower(r),
        Side::Upper => PLMap::canonical_upper(r),
    }
}

/// Random element of `U` with breakpoints and values on the grid `k / denom`.
pub fn random_u(rng: &mut impl Rng, max_inner: usize, denom: i64) -> PLMap {
    let inner = rng.gen_range(0..=max_inner);
    let mut xs: Vec<i64> = (0..inner).map(|_| rng.gen_range(1..denom)).collect();
    xs.sort();
    xs.dedup();
    let mut ys: Vec<i64> = (0..xs.len()).map(|_| rng.gen_range(0..=denom)).collect();
    ys.sort();
    let mut pts = vec![(zero(), zero())];
    pts.extend(xs.iter().zip(&ys).map(|(&x, &y)| (q(x, denom), q(y, denom))));
    pts.push((one(), one()));
    PLMap::from_points(&pts).unwrap()
}

/// Random element of `Û`: like [`random_u`] but starting anywhere.
pub fn random_uhat(rng: &mut impl Rng, max_inner: usize, denom: i64) -> PLMap {
    let start = rng.gen_range(0..=denom);
    let inner = rng.gen_range(0..=max_inner);
    let mut xs: Vec<i64> = (0..inner).map(|_| rng.gen_range(1..denom)).collect();
    xs.sort();
    xs.dedup();
    let mut ys: Vec<i64> = (0..xs.len()).map(|_| rng.gen_range(start..=denom)).collect();
    ys.sort();
    let mut pts = vec![(zero(), q(start, denom))];
    pts.extend(xs.iter().zip(&ys).map(|(&x, &y)| (q(x, denom), q(y, denom))));
    pts.push((one(), one()));
    PLMap::from_points(&pts).unwrap()
}

/// Random monotone map with occasional jumps.
pub fn random_monotone(rng: &mut impl Rng, max_inner: usize, denom: i64) -> PLMap {
    let inner = rng.gen_range(0..=max_inner);
    let mut xs: Vec<i64> = (0..inner).map(|_| rng.gen_range(1..denom)).collect();
    xs.sort();
    xs.dedup();
    let mut breaks = vec![zero()];
    breaks.extend(xs.iter().map(|&x| q(x, denom)));
    breaks.push(one());
    let k = breaks.len();
    // 3k - 2 nondecreasing values: v0, (s0, e0), v1, (s1, e1), ..., v_{k-1}
    let mut ys: Vec<i64> = (0..3 * k - 2).map(|_| rng.gen_range(0..=denom)).collect();
    ys.sort();
    let ys: Vec<Q> = ys.into_iter().map(|y| q(y, denom)).collect();
    let vals = (0..k).map(|i| ys[3 * i].clone()).collect();
    let segs = (0..k - 1).map(|i| (ys[3 * i + 1].clone(), ys[3 * i + 2].clone())).collect();
    PLMap::from_parts(breaks, vals, segs).unwrap()
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PieceJson {
    pub x0: String,
    pub x1: String,
    pub y0: String,
    pub y1: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_at_x0: Option<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PLJson {
    pub pieces: Vec<PieceJson>,
}

impl PLMap {
    /// Piece list; a jump at 1 is recorded as a degenerate final piece `[1,1]`.
    pub fn to_json(&self) -> PLJson {
        let mut pieces = Vec::new();
        for i in 0..self.segs.len() {
            let (s, e) = &self.segs[i];
            pieces.push(PieceJson {
                x0: fmt_q(&self.breaks[i]),
                x1: fmt_q(&self.breaks[i + 1]),
                y0: fmt_q(s),
                y1: fmt_q(e),
                y_at_x0: (self.vals[i] != *s).then(|| fmt_q(&self.vals[i])),
            });
        }
        let last = self.vals.last().unwrap();
        if *last != self.segs.last().unwrap().1 {
            pieces.push(PieceJson { x0: "1".into(), x1: "1".into(), y0: fmt_q(last), y1: fmt_q(last), y_at_x0: None });
        }
        PLJson { pieces }
    }

    pub fn from_json(j: &PLJson) -> Result<Self> {
        let schema = |i: usize, m: &str| Error::Schema { pointer: format!("/pieces/{i}"), message: m.to_string() };
        let mut breaks = vec![zero()];
        let mut vals = Vec::new();
        let mut segs = Vec::new();
        let mut end_val: Option<Q> = None;
        for (i, p) in j.pieces.iter().enumerate() {
            let x0 = parse_q(&p.x0).map_err(|_| schema(i, "bad x0"))?;
            let x1 = parse_q(&p.x1).map_err(|_| schema(i, "bad x1"))?;
            let y0 = parse_q(&p.y0).map_err(|_| schema(i, "bad y0"))?;
            let y1 = parse_q(&p.y1).map_err(|_| schema(i, "bad y1"))?;
            if end_val.is_some() {
                return Err(schema(i, "piece after the degenerate piece at 1"));
            }
            if x0 != *breaks.last().unwrap() {
                return Err(schema(i, "pieces must be contiguous and start at 0"));
            }
            if x0 == x1 {
                if !x0.is_one() || y0 != y1 || i == 0 {
                    return Err(schema(i, "only a final piece [1,1] may be degenerate"));
                }
                end_val = Some(y0);
                continue;
            }
            let at = match &p.y_at_x0 {
                Some(s) => parse_q(s).map_err(|_| schema(i, "bad y_at_x0"))?,
                None => y0.clone(),
            };
            vals.push(at);
            segs.push((y0, y1));
            breaks.push(x1);
        }
        if segs.is_empty() {
            return Err(schema(0, "no pieces"));
        }
        vals.push(end_val.unwrap_or_else(|| segs.last().unwrap().1.clone()));
        Self::from_parts(breaks, vals, segs)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).unwrap()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: PLJson = serde_json::from_str(s).map_err(|e| Error::Schema { pointer: String::new(), message: e.to_string() })?;
        Self::from_json(&j)
    }
}
