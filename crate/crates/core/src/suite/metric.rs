use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{field, outcome, rng_for, str_field, u64_field, Item, Outcome, SuiteParams};
use crate::continuity::{is_continuous, waydown};
use crate::doctrines::{builtin_doctrines, Builtin, Doctrine, DoctrinePair};
use crate::error::{Error, Result};
use crate::gelfand::{
    approximate_inverse, eta_separation, interpolate_chain_interval, iota_transpose, urysohn_separate,
    urysohn_separate_interval,
};
use crate::interval::{dot_add, one, q, random_u, random_uhat, zero, PLMap, Q};
use crate::io::{poset_from_value, poset_to_value};
use crate::order::{lattices_up_to, FinPoset};
use crate::umodules::{
    dist, extend_to_uhat, le_r, le_r_by_pairs, morphisms_to_i, rho, rho_bisection, stack_glue, stack_glue_n,
    unstack_verify, CoordinateModule, FunctionModule, IntervalModule, PLModule, UModule,
};

pub const LAWS: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "definition"];
const DENOM: i64 = 64;

fn rq(rng: &mut ChaCha8Rng, denom: i64) -> Q {
    q(rng.gen_range(0..=denom), denom)
}

fn max_slope(u: &PLMap) -> Q {
    u.breaks()
        .windows(2)
        .map(|w| (u.eval(&w[1]) - u.eval(&w[0])) / (&w[1] - &w[0]))
        .max()
        .unwrap_or_else(zero)
}

fn min_q(a: Q, b: Q) -> Q {
    if a < b {
        a
    } else {
        b
    }
}

/// One sample of one law. `Ok(true)` when the law's premise was met.
fn law_once<M: UModule>(
    m: &M,
    law: &str,
    rng: &mut ChaCha8Rng,
    gen: &mut dyn FnMut(&mut ChaCha8Rng) -> M::Elem,
) -> Result<std::result::Result<bool, String>> {
    let (a, b, c) = (gen(rng), gen(rng), gen(rng));
    let show = |x: &M::Elem| m.show(x);
    let fail = |what: &str| Ok(Err(format!("{what}: a={} b={} c={}", show(&a), show(&b), show(&c))));
    match law {
        "a" => {
            let (r, s) = {
                let x = rq(rng, DENOM);
                let y = rq(rng, DENOM);
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            };
            let hit = le_r(m, &a, &b, &r);
            if hit && !le_r(m, &a, &b, &s) {
                return fail("≤_r not monotone in r");
            }
            Ok(Ok(hit))
        }
        "b" => {
            if le_r(m, &a, &b, &zero()) != m.le(&a, &b) || !le_r(m, &a, &a, &zero()) {
                return fail("≤_0 differs from ≤");
            }
            Ok(Ok(true))
        }
        "c" => {
            let (r, s) = if rng.gen_bool(0.5) {
                (rho(m, &a, &b)?, rho(m, &b, &c)?)
            } else {
                (rq(rng, DENOM), rq(rng, DENOM))
            };
            let hit = le_r(m, &a, &b, &r) && le_r(m, &b, &c, &s);
            if hit && !le_r(m, &a, &c, &dot_add(&r, &s)) {
                return fail("≤_r composition");
            }
            Ok(Ok(hit))
        }
        "d" => {
            let (ab, bc, ac) = (rho(m, &a, &b)?, rho(m, &b, &c)?, rho(m, &a, &c)?);
            if rho(m, &a, &a)? != zero() || ac > &ab + &bc {
                return fail("triangle inequality");
            }
            if dist(m, &a, &b)? != dist(m, &b, &a)? {
                return fail("dist not symmetric");
            }
            let (lo, hi) = rho_bisection(m, &a, &b, 12);
            let bracketed = if ab == zero() { m.le(&a, &b) && lo == zero() && hi == zero() } else { lo < ab && ab <= hi };
            if !bracketed {
                return fail("closed form outside bisection bracket");
            }
            Ok(Ok(true))
        }
        "e" => {
            let u = random_u(rng, 3, DENOM);
            let v = random_u(rng, 3, DENOM);
            if rho(m, &m.act(&u, &a), &m.act(&v, &a))? > u.linf_rho(&v) {
                return fail("action not 1-Lipschitz in the map");
            }
            let ub = min_q(one(), max_slope(&u) * rho(m, &a, &b)?);
            if rho(m, &m.act(&u, &a), &m.act(&u, &b))? > ub {
                return fail("modulus not transported");
            }
            let r = if rng.gen_bool(0.5) { rho(m, &a, &b)? } else { rq(rng, DENOM) };
            let shifted = u.compose(&PLMap::trunc_add(&r)?);
            let s = dot_add(&shifted.linf_rho(&v), &rq(rng, 8));
            if !shifted.le(&PLMap::trunc_add(&s)?.compose(&v)) {
                return Err(Error::Invariant("constructed premise fails".into()));
            }
            let hit = le_r(m, &a, &b, &r);
            if hit && !le_r(m, &m.act(&u, &a), &m.act(&v, &b), &s) {
                return fail("transport along (u, v)");
            }
            Ok(Ok(hit))
        }
        "f" => {
            let u = random_u(rng, 3, DENOM);
            let v = random_u(rng, 3, DENOM);
            let ua = m.act(&u, &a);
            let r = if rng.gen_bool(0.5) { rho(m, &ua, &b)? } else { rq(rng, DENOM) };
            let shifted = u.right_adjoint()?.compose(&PLMap::trunc_add(&r)?);
            let s = dot_add(&shifted.linf_rho(&v), &rq(rng, 8));
            if !shifted.le(&PLMap::trunc_add(&s)?.compose(&v)) {
                return Err(Error::Invariant("constructed premise fails".into()));
            }
            let hit = le_r(m, &ua, &b, &r);
            if hit && !le_r(m, &a, &m.act(&v, &b), &s) {
                return fail("transport along the right adjoint");
            }
            Ok(Ok(hit))
        }
        "g" => {
            let Some(bc) = m.meet(&b, &c) else { return Ok(Ok(false)) };
            let r = if rng.gen_bool(0.5) { rho(m, &a, &bc)? } else { rq(rng, DENOM) };
            if le_r(m, &a, &bc, &r) != (le_r(m, &a, &b, &r) && le_r(m, &a, &c, &r)) {
                return fail("≤_r into a meet");
            }
            Ok(Ok(true))
        }
        "definition" => {
            let r = if rng.gen_bool(0.5) { rho(m, &a, &b)? } else { rq(rng, DENOM) };
            let shift = PLMap::trunc_add(&r)?;
            let pairs: Vec<(PLMap, PLMap)> = (0..8)
                .map(|_| {
                    let w = random_u(rng, 3, DENOM);
                    let u = if r > zero() && r < one() { w.compose(&PLMap::canonical_upper(&r)?) } else { w };
                    let v = random_u(rng, 3, DENOM).pointwise_max(&u.compose(&shift));
                    Ok((u, v))
                })
                .collect::<Result<_>>()?;
            let canonical = le_r(m, &a, &b, &r);
            if canonical && !le_r_by_pairs(m, &a, &b, &r, &pairs) {
                return fail("canonical test accepts but a sampled pair rejects");
            }
            Ok(Ok(canonical))
        }
        other => Err(Error::Precondition(format!("unknown law `{other}`"))),
    }
}

fn small_lattices() -> Result<Vec<FinPoset>> {
    lattices_up_to(4)
}

fn run_law(module: &str, law: &str, seed: u64, count: usize) -> Result<Outcome> {
    let mut rng = rng_for(seed, 7);
    let mut hits = 0;
    for _ in 0..count {
        let r = match module {
            "interval" => {
                let m = IntervalModule::default();
                law_once(&m, law, &mut rng, &mut |g| rq(g, DENOM))?
            }
            "pl" => law_once(&PLModule, law, &mut rng, &mut |g| random_uhat(g, 3, 16))?,
            "function" => {
                let lats = small_lattices()?;
                let x = lats.choose(&mut rng).expect("nonempty").clone();
                let m = FunctionModule::directed(x)?;
                let mm = m.clone();
                law_once(&m, law, &mut rng, &mut move |g| mm.random_element(g, 8).expect("topped carrier"))?
            }
            other => return Err(Error::Precondition(format!("unknown module `{other}`"))),
        };
        match r {
            Ok(true) => hits += 1,
            Ok(false) => {}
            Err(msg) => return Ok(Outcome::Fail(msg)),
        }
    }
    if hits == 0 && count > 0 {
        return Ok(Outcome::Fail(format!("premise of law {law} never met on {module}")));
    }
    Ok(Outcome::Pass)
}

pub fn metric_items(p: &SuiteParams) -> Result<Vec<Item>> {
    let denom = p.size(64) as u64;
    let mut out: Vec<Item> = (0..=denom).map(|k| Item::new("interval-grid", json!({"denom": denom, "r": k}))).collect();
    let per = p.count(1000);
    let chunk = 100usize.min(per.max(1));
    let mut stream = 0u64;
    for module in ["interval", "function", "pl"] {
        for law in LAWS {
            let mut left = per;
            while left > 0 {
                let n = left.min(chunk);
                let seed = p.seed.wrapping_mul(1_000_003).wrapping_add(stream);
                out.push(Item::new("law", json!({"module": module, "law": law, "seed": seed, "count": n})));
                stream += 1;
                left -= n;
            }
        }
    }
    Ok(out)
}

fn interval_grid(denom: i64, k: i64) -> Result<Outcome> {
    let m = IntervalModule::default();
    let r = q(k, denom);
    for i in 0..=denom {
        for j in 0..=denom {
            let (a, b) = (q(i, denom), q(j, denom));
            if le_r(&m, &a, &b, &r) != (a <= dot_add(&b, &r)) {
                return Ok(Outcome::Fail(format!("≤_r at a={a} b={b} r={r}")));
            }
            if k == 0 {
                let gap = if a > b { &a - &b } else { zero() };
                let d = if a > b { &a - &b } else { &b - &a };
                if rho(&m, &a, &b)? != gap || dist(&m, &a, &b)? != d {
                    return Ok(Outcome::Fail(format!("ρ or dist at a={a} b={b}")));
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

pub fn stack_items(p: &SuiteParams) -> Result<Vec<Item>> {
    let denom = p.size(16) as u64;
    let mut out = Vec::new();
    for k in 1..denom {
        out.push(Item::new("glue-interval", json!({"denom": denom, "r": k})));
        out.push(Item::new("glue-function-c2", json!({"denom": denom, "r": k})));
    }
    for k in 0..denom {
        out.push(Item::new("extend-truncated-addition", json!({"denom": denom, "r": k})));
    }
    out.push(Item::new("unique-projections-c2", json!({"denom": denom})));
    out.push(Item::new("glue-three", json!({"denom": 4})));
    out.push(Item::new("unstack", json!({"denom": 8})));
    out.push(Item::new("extend-meets", json!({"seed": p.seed, "count": p.count(200)})));
    Ok(out)
}

fn c2_elem(x: Q) -> Vec<Q> {
    vec![x, one()]
}

/// Checks a glue result against independent expectations for one pair.
fn glue_case<M: UModule>(m: &M, r: &Q, a: &M::Elem, b: &M::Elem, compatible: bool) -> std::result::Result<(), String> {
    let lower = PLMap::canonical_lower(r).map_err(|e| e.to_string())?;
    let upper = PLMap::canonical_upper(r).map_err(|e| e.to_string())?;
    match (stack_glue(m, r, a, b), compatible) {
        (Ok(c), true) => {
            if m.act(&lower, &c) != *a || m.act(&upper, &c) != *b {
                return Err(format!("projections of {} differ", m.show(&c)));
            }
            Ok(())
        }
        (Err(Error::Incompatible { u, v }), false) => {
            let u = PLMap::from_json_str(&u).map_err(|e| e.to_string())?;
            let v = PLMap::from_json_str(&v).map_err(|e| e.to_string())?;
            if !(u.in_u() && v.in_u()) || m.le(&m.act(&v, b), &m.act(&u, a)) {
                return Err("witness does not witness".into());
            }
            Ok(())
        }
        (got, _) => Err(format!("a={} b={} r={r}: unexpected {:?}", m.show(a), m.show(b), got.map(|c| m.show(&c)))),
    }
}

fn stack_check(check: &str, v: &Value) -> Result<Outcome> {
    match check {
        "glue-interval" | "glue-function-c2" => {
            let denom = u64_field(v, "denom")? as i64;
            let r = q(u64_field(v, "r")? as i64, denom);
            let grid: Vec<Q> = (0..=denom).map(|i| q(i, denom)).collect();
            let im = IntervalModule::default();
            let fm = FunctionModule::directed(FinPoset::chain(2))?;
            for a in &grid {
                for b in &grid {
                    let compatible = *b == zero() || *a == one();
                    let res = if check == "glue-interval" {
                        glue_case(&im, &r, a, b, compatible)
                    } else {
                        glue_case(&fm, &r, &c2_elem(a.clone()), &c2_elem(b.clone()), compatible)
                    };
                    if let Err(msg) = res {
                        return Ok(Outcome::Fail(msg));
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        "extend-truncated-addition" => {
            let denom = u64_field(v, "denom")? as i64;
            let r = q(u64_field(v, "r")? as i64, denom);
            let w = PLMap::trunc_add(&r)?;
            let im = IntervalModule::default();
            let fm = FunctionModule::directed(FinPoset::chain(2))?;
            for i in 0..=denom {
                let a = q(i, denom);
                if extend_to_uhat(&im, &w, &a)? != dot_add(&a, &r) {
                    return Ok(Outcome::Fail(format!("interval at a={a}")));
                }
                if extend_to_uhat(&fm, &w, &c2_elem(a.clone()))? != c2_elem(dot_add(&a, &r)) {
                    return Ok(Outcome::Fail(format!("C2 at a={a}")));
                }
            }
            Ok(Outcome::Pass)
        }
        "unique-projections-c2" => {
            let denom = u64_field(v, "denom")? as i64;
            let fm = FunctionModule::directed(FinPoset::chain(2))?;
            let fine = 4 * denom;
            for k in 1..denom {
                let r = q(k, denom);
                let lower = PLMap::canonical_lower(&r)?;
                let upper = PLMap::canonical_upper(&r)?;
                let mut seen: Vec<(Vec<Q>, Vec<Q>)> = Vec::new();
                for i in 0..=fine {
                    let c = c2_elem(q(i, fine));
                    let key = (fm.act(&lower, &c), fm.act(&upper, &c));
                    if seen.contains(&key) {
                        return Ok(Outcome::Fail(format!("two elements share projections at r={r}")));
                    }
                    seen.push(key);
                }
            }
            Ok(Outcome::Pass)
        }
        "glue-three" => {
            let denom = u64_field(v, "denom")? as i64;
            let m = IntervalModule::default();
            let part = [zero(), q(1, 3), q(2, 3), one()];
            let grid: Vec<Q> = (0..=denom).map(|i| q(i, denom)).collect();
            let mut glued: Vec<([Q; 3], Q)> = Vec::new();
            for a1 in &grid {
                for a2 in &grid {
                    for a3 in &grid {
                        let compatible = (*a2 == zero() || *a1 == one()) && (*a3 == zero() || *a2 == one());
                        let pieces = [a1.clone(), a2.clone(), a3.clone()];
                        match (stack_glue_n(&m, &part, &pieces), compatible) {
                            (Ok(c), true) => glued.push((pieces, c)),
                            (Err(Error::Incompatible { .. }), false) => {}
                            (got, _) => return Ok(Outcome::Fail(format!("{pieces:?}: {got:?}"))),
                        }
                    }
                }
            }
            for (p, c) in &glued {
                for (p2, c2) in &glued {
                    if p.iter().zip(p2).all(|(x, y)| x <= y) && c > c2 {
                        return Ok(Outcome::Fail(format!("gluing not monotone at {p:?} <= {p2:?}")));
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        "unstack" => {
            let denom = u64_field(v, "denom")? as i64;
            let grid: Vec<Q> = (0..=denom).map(|i| q(i, denom)).collect();
            let parts: Vec<Vec<Q>> = vec![
                vec![zero(), q(1, 2), one()],
                vec![zero(), q(1, 3), q(2, 3), one()],
                vec![q(1, 8), q(1, 2), one()],
                vec![q(1, 4), q(5, 8), q(7, 8), one()],
            ];
            let im = IntervalModule::default();
            let fm = FunctionModule::directed(FinPoset::chain(2))?;
            for part in &parts {
                for a in &grid {
                    for b in &grid {
                        let o1 = unstack_verify(&im, a, b, part)?;
                        let o2 = unstack_verify(&fm, &c2_elem(a.clone()), &c2_elem(b.clone()), part)?;
                        if !o1.holds() || !o2.holds() || o1 != o2 {
                            return Ok(Outcome::Fail(format!("a={a} b={b} partition={part:?}")));
                        }
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        "extend-meets" => {
            let mut rng = rng_for(u64_field(v, "seed")?, 11);
            let count = u64_field(v, "count")? as usize;
            let im = IntervalModule::default();
            let pl = PLModule;
            for _ in 0..count {
                let w1 = random_uhat(&mut rng, 3, 16);
                let w2 = random_uhat(&mut rng, 3, 16);
                let w = w1.pointwise_min(&w2);
                let a = rq(&mut rng, DENOM);
                let lhs = extend_to_uhat(&im, &w, &a)?;
                let rhs = im.meet(&extend_to_uhat(&im, &w1, &a)?, &extend_to_uhat(&im, &w2, &a)?).expect("meets");
                if lhs != rhs || lhs != w.eval(&a) {
                    return Ok(Outcome::Fail(format!("interval: {} {} at {a}", w1.to_json_string(), w2.to_json_string())));
                }
                let f = random_uhat(&mut rng, 3, 16);
                let lhs = extend_to_uhat(&pl, &w, &f)?;
                let rhs = extend_to_uhat(&pl, &w1, &f)?.pointwise_min(&extend_to_uhat(&pl, &w2, &f)?);
                if lhs != rhs || lhs != w.compose(&f) {
                    return Ok(Outcome::Fail(format!("pl: {} {}", w1.to_json_string(), w2.to_json_string())));
                }
            }
            Ok(Outcome::Pass)
        }
        other => Err(Error::Precondition(format!("unknown check `{other}`"))),
    }
}

pub fn urysohn_items(p: &SuiteParams) -> Result<Vec<Item>> {
    let mut rng = rng_for(p.seed, 13);
    let depth = 6u32;
    let scale = 1i64 << depth;
    let mut out = Vec::new();
    for _ in 0..p.count(50) {
        let mut y = rng.gen_range(0..scale);
        let mut x = rng.gen_range(0..=scale);
        if y >= x {
            std::mem::swap(&mut x, &mut y);
        }
        if y == x {
            x = scale;
            y = 0;
        }
        out.push(Item::new("interval", json!({"y": y, "x": x, "depth": depth})));
    }
    for pair in builtin_doctrines() {
        for x in lattices_up_to(p.size(6))? {
            let name = pair.phi.as_builtin().expect("builtin").name();
            out.push(Item::new("finite", json!({"doctrine": name, "lattice": poset_to_value(&x)})));
            out.push(Item::new("eta", json!({"doctrine": name, "lattice": poset_to_value(&x)})));
        }
    }
    Ok(out)
}

fn urysohn_check(check: &str, v: &Value) -> Result<Outcome> {
    match check {
        "interval" => {
            let depth = u64_field(v, "depth")? as u32;
            let scale = 1i64 << depth;
            let y = q(u64_field(v, "y")? as i64, scale);
            let x = q(u64_field(v, "x")? as i64, scale);
            let d = Doctrine::directed();
            let g = interpolate_chain_interval(&d, &y, &x, depth)?;
            if g[0] != y || *g.last().unwrap() != x || g.windows(2).any(|w| w[0] >= w[1]) {
                return Ok(Outcome::Fail("chain is not strictly increasing from y to x".into()));
            }
            let f = urysohn_separate_interval(&d, &y, &x)?;
            let top = f.left_adjoint()?.eval(&one());
            let ok = f.in_uhat() && y <= top && top <= x && f.eval(&y) == zero() && f.eval(&x) == one();
            Ok(outcome(ok, || format!("f = {}", f.to_json_string())))
        }
        "finite" | "eta" => {
            let d = Doctrine::parse(str_field(v, "doctrine")?)?;
            let x = poset_from_value(field(v, "lattice")?)?;
            if !is_continuous(&x, &d)? {
                return Ok(Outcome::Skipped("not continuous".into()));
            }
            let wb = waydown(&x, &d)?;
            for a in 0..x.len() {
                for b in 0..x.len() {
                    if check == "finite" && wb.way_below(a, b) {
                        let f = urysohn_separate(&x, &d, a, b, 3)?;
                        let f1 = f.lower[f.lower.len() - 1];
                        if !(x.leq(a, f1) && x.leq(f1, b) && f.preserves_meets && f.check_adjunction(&x)) {
                            return Ok(Outcome::Fail(format!("y={} x={}", x.label(a), x.label(b))));
                        }
                    }
                    if check == "eta" && !x.leq(a, b) {
                        let f = eta_separation(&x, &d, a, b, 3)?;
                        if f.values[a] <= f.values[b] {
                            return Ok(Outcome::Fail(format!("x={} y={}", x.label(a), x.label(b))));
                        }
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        other => Err(Error::Precondition(format!("unknown check `{other}`"))),
    }
}

pub fn gelfand_items(p: &SuiteParams) -> Result<Vec<Item>> {
    let mut out = vec![Item::new("kernel-interval", json!({}))];
    for x in lattices_up_to(p.size(5))? {
        out.push(Item::new("kernel-function", json!({"doctrine": "directed", "lattice": poset_to_value(&x)})));
    }
    for x in lattices_up_to(p.size(6))?.into_iter().filter(|x| x.is_distributive_lattice()) {
        out.push(Item::new("kernel-function", json!({"doctrine": "all", "lattice": poset_to_value(&x)})));
    }
    for i in 0..p.count(20) {
        out.push(Item::new("approx-inverse", json!({"seed": p.seed.wrapping_add(i as u64)})));
    }
    Ok(out)
}

/// Matches each morphism with the evaluation it equals, then compares orders.
fn kernel_bijection(m: &FunctionModule) -> Result<std::result::Result<(), String>> {
    let x = &m.base;
    let ks = morphisms_to_i(m)?;
    let mut probes = m.indicator_elements()?;
    let mut rng = rng_for(17, 0);
    for _ in 0..16 {
        probes.extend(m.random_element(&mut rng, 8));
    }
    let mut matched = Vec::new();
    for k in &ks {
        let hit: Vec<usize> =
            (0..x.len()).filter(|&e| probes.iter().all(|a| k.morphism_value(m, a) == a[e])).collect();
        match hit.as_slice() {
            [e] => matched.push(*e),
            _ => return Ok(Err(format!("morphism {:?} matches evaluations {hit:?}", k.indicators))),
        }
    }
    let mut sorted = matched.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != x.len() || matched.len() != x.len() {
        return Ok(Err(format!("{} morphisms for {} elements", ks.len(), x.len())));
    }
    for (i, ki) in ks.iter().enumerate() {
        for (j, kj) in ks.iter().enumerate() {
            let pointwise = probes.iter().all(|a| ki.morphism_value(m, a) <= kj.morphism_value(m, a));
            if pointwise != x.leq(matched[i], matched[j]) {
                return Ok(Err("evaluation is not an order isomorphism".into()));
            }
        }
    }
    Ok(Ok(()))
}

fn gelfand_check(check: &str, v: &Value) -> Result<Outcome> {
    match check {
        "kernel-interval" => {
            let d = morphisms_to_i(&IntervalModule::new(DoctrinePair::for_phi(Builtin::Directed)))?.len();
            let a = morphisms_to_i(&IntervalModule::new(DoctrinePair::for_phi(Builtin::AllPosets)))?.len();
            Ok(outcome(d == 2 && a == 3, || format!("directed: {d}, all: {a}")))
        }
        "kernel-function" => {
            let pair = DoctrinePair::parse(str_field(v, "doctrine")?)?;
            let m = FunctionModule::new(poset_from_value(field(v, "lattice")?)?, pair)?;
            Ok(match kernel_bijection(&m)? {
                Ok(()) => Outcome::Pass,
                Err(msg) => Outcome::Fail(msg),
            })
        }
        "approx-inverse" => {
            let mut rng = rng_for(u64_field(v, "seed")?, 19);
            let ns = [2usize, 4, 8, 16];
            if rng.gen_bool(0.3) {
                let m = IntervalModule::default();
                let a0 = rq(&mut rng, 97);
                for n in ns {
                    let a = approximate_inverse(&m, &iota_transpose(&m, &a0, n)?)?;
                    if dist(&m, &a, &a0)? > q(2, n as i64) {
                        return Ok(Outcome::Fail(format!("a0={a0} n={n} a={a}")));
                    }
                }
            } else {
                let lats = lattices_up_to(5)?;
                let x = lats.choose(&mut rng).expect("nonempty").clone();
                let m = FunctionModule::directed(x)?;
                let a0 = m.random_element(&mut rng, 97).expect("topped carrier");
                for n in ns {
                    let a = approximate_inverse(&m, &iota_transpose(&m, &a0, n)?)?;
                    if dist(&m, &a, &a0)? > q(2, n as i64) {
                        return Ok(Outcome::Fail(format!("a0={} n={n}", m.show(&a0))));
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        other => Err(Error::Precondition(format!("unknown check `{other}`"))),
    }
}

pub fn check(check: &str, v: &Value) -> Result<Outcome> {
    match check {
        "interval-grid" => interval_grid(u64_field(v, "denom")? as i64, u64_field(v, "r")? as i64),
        "law" => run_law(str_field(v, "module")?, str_field(v, "law")?, u64_field(v, "seed")?, u64_field(v, "count")? as usize),
        "interval" | "finite" | "eta" => urysohn_check(check, v),
        "kernel-interval" | "kernel-function" | "approx-inverse" => gelfand_check(check, v),
        _ => stack_check(check, v),
    }
}
