//! Acceptance criteria. Each criterion combines a suite run with an
//! independent brute-force oracle written against the raw order matrix.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use ordkit::continuity::{analyze, check_meet_distributivity};
use ordkit::doctrines::{Builtin, Doctrine, DoctrinePair};
use ordkit::gelfand::{approximate_inverse, iota_transpose, urysohn_separate};
use ordkit::interval::{q, PLMap, Q};
use ordkit::order::{lattices_up_to, posets_up_to, FinPoset};
use ordkit::suite::{self, Status, SuiteParams};
use ordkit::umodules::{
    dist, extend_to_uhat, le_r, morphisms_to_i, rho, stack_glue, FunctionModule, IntervalModule, UModule,
};
use ordkit::Error;

type Check = std::result::Result<String, String>;

const FOUR: [Builtin; 4] = [Builtin::Directed, Builtin::EmptyOrDirected, Builtin::NonemptyPosets, Builtin::AllPosets];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: ordkit::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Runs a suite with default parameters and checks the pass counts of every check.
fn suite_counts(name: &str, expected: &[(&str, usize, usize)]) -> std::result::Result<(), String> {
    let report = lib(suite::run_suite(name, &SuiteParams::default()))?;
    for (check, pass, skip) in expected {
        let c = report.checks.get(*check).ok_or_else(|| format!("{name}: no check `{check}`"))?;
        ensure(c.failed == 0 && c.status != Status::Fail, || {
            format!("{name}/{check}: {} failed, first {:?}", c.failed, c.counterexamples.first())
        })?;
        ensure(c.passed == *pass && c.skipped == *skip, || {
            format!("{name}/{check}: passed {} skipped {}, expected {pass}/{skip}", c.passed, c.skipped)
        })?;
    }
    ensure(report.passed(), || format!("{name}: some check failed"))
}

/// Every check of the suite passes, with at least one pass each.
fn suite_clean(name: &str) -> std::result::Result<usize, String> {
    let report = lib(suite::run_suite(name, &SuiteParams::default()))?;
    let mut total = 0;
    for (check, c) in &report.checks {
        ensure(c.failed == 0 && c.passed > 0, || {
            format!("{name}/{check}: {} passed {} failed, first {:?}", c.passed, c.failed, c.counterexamples.first())
        })?;
        total += c.passed;
    }
    Ok(total)
}

// Oracles on the raw matrix.

struct Raw {
    n: usize,
    le: Vec<Vec<bool>>,
}

impl Raw {
    fn of(x: &FinPoset) -> Raw {
        Raw { n: x.len(), le: x.matrix() }
    }

    fn sup(&self, s: &[usize]) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.n).filter(|&u| s.iter().all(|&e| self.le[e][u])).collect();
        ubs.iter().copied().find(|&u| ubs.iter().all(|&v| self.le[u][v]))
    }

    fn inf(&self, s: &[usize]) -> Option<usize> {
        let lbs: Vec<usize> = (0..self.n).filter(|&l| s.iter().all(|&e| self.le[l][e])).collect();
        lbs.iter().copied().find(|&l| lbs.iter().all(|&v| self.le[v][l]))
    }

    fn is_lattice(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.sup(&[a, b]).is_some() && self.inf(&[a, b]).is_some()))
            && self.sup(&[]).is_some()
            && self.inf(&[]).is_some()
    }

    fn distributive(&self) -> bool {
        let j = |a, b| self.sup(&[a, b]).unwrap();
        let m = |a, b| self.inf(&[a, b]).unwrap();
        (0..self.n).all(|a| (0..self.n).all(|b| (0..self.n).all(|c| m(a, j(b, c)) == j(m(a, b), m(a, c)))))
    }

    fn subsets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0u32..1 << self.n).map(|mask| (0..self.n).filter(|&i| mask >> i & 1 == 1).collect())
    }

    fn is_lower(&self, s: &[usize]) -> bool {
        (0..self.n).all(|a| s.contains(&a) || !s.iter().any(|&b| self.le[a][b]))
    }

    /// Lower sets that are `Φ`-shaped, read off from the finite description of each builtin.
    fn shaped_lower_sets(&self, b: Builtin) -> Vec<Vec<usize>> {
        self.subsets()
            .filter(|s| self.is_lower(s))
            .filter(|s| {
                let greatest = s.iter().any(|&g| s.iter().all(|&e| self.le[e][g]));
                match b {
                    Builtin::Directed => greatest,
                    Builtin::EmptyOrDirected => s.is_empty() || greatest,
                    Builtin::NonemptyPosets => !s.is_empty(),
                    Builtin::AllPosets => true,
                    _ => unreachable!(),
                }
            })
            .collect()
    }

    /// `wb[y][x]` is `y ≪ x` by the definition: every shaped lower set with `x ≤ ⋁D` contains `y`.
    fn way_below(&self, b: Builtin) -> Vec<Vec<bool>> {
        let sets = self.shaped_lower_sets(b);
        let mut wb = vec![vec![true; self.n]; self.n];
        for d in &sets {
            let s = self.sup(d).unwrap();
            for x in 0..self.n {
                if self.le[x][s] {
                    for y in 0..self.n {
                        wb[y][x] &= d.contains(&y);
                    }
                }
            }
        }
        wb
    }

    fn continuous(&self, wb: &[Vec<bool>]) -> bool {
        (0..self.n).all(|x| {
            let below: Vec<usize> = (0..self.n).filter(|&y| wb[y][x]).collect();
            self.sup(&below) == Some(x)
        })
    }

    fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&j| {
                let strictly: Vec<usize> = (0..self.n).filter(|&i| i != j && self.le[i][j]).collect();
                !strictly.is_empty() && self.sup(&strictly) != Some(j)
            })
            .collect()
    }

    fn lower_sets_of(&self, sub: &[usize]) -> usize {
        (0u32..1 << sub.len())
            .filter(|mask| {
                (0..sub.len()).all(|i| {
                    mask >> i & 1 == 1 || !(0..sub.len()).any(|k| mask >> k & 1 == 1 && self.le[sub[i]][sub[k]])
                })
            })
            .count()
    }

    fn isomorphic(&self, other: &Raw) -> bool {
        fn go(a: &Raw, b: &Raw, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = perm.len();
            if k == a.n {
                return true;
            }
            for c in 0..b.n {
                if used[c] || (0..k).any(|i| a.le[i][k] != b.le[perm[i]][c] || a.le[k][i] != b.le[c][perm[i]]) {
                    continue;
                }
                perm.push(c);
                used[c] = true;
                if go(a, b, perm, used) {
                    return true;
                }
                perm.pop();
                used[c] = false;
            }
            false
        }
        self.n == other.n && go(self, other, &mut Vec::new(), &mut vec![false; other.n])
    }
}

fn counts_by_size(xs: &[FinPoset]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for x in xs {
        *m.entry(x.len()).or_insert(0) += 1;
    }
    m
}

fn expect_counts(xs: &[FinPoset], want: &[(usize, usize)]) -> std::result::Result<(), String> {
    let got = counts_by_size(xs);
    let want: BTreeMap<usize, usize> = want.iter().copied().collect();
    ensure(got == want, || format!("counts by size {got:?}, expected {want:?}"))
}

fn pairwise_distinct(xs: &[FinPoset]) -> std::result::Result<(), String> {
    let raws: Vec<Raw> = xs.iter().map(Raw::of).collect();
    for i in 0..raws.len() {
        for j in i + 1..raws.len() {
            ensure(!raws[i].isomorphic(&raws[j]), || format!("corpus entries {i} and {j} are isomorphic"))?;
        }
    }
    Ok(())
}

// Criteria.

fn c1_continuity_criteria() -> Check {
    let lats = lib(lattices_up_to(5))?;
    expect_counts(&lats, &[(1, 1), (2, 1), (3, 1), (4, 2), (5, 5)])?;
    pairwise_distinct(&lats)?;
    for x in &lats {
        let raw = Raw::of(x);
        ensure(raw.is_lattice(), || "corpus entry is not a lattice".into())?;
        for b in FOUR {
            let d = Doctrine::builtin(b);
            let r = lib(analyze(x, &d))?;
            ensure(r.criteria.iter().all(|&c| c == r.continuous), || format!("{}: {:?}", b.name(), r.criteria))?;
            let wb = raw.way_below(b);
            ensure(r.waybelow == wb, || format!("{}: way-below differs from the definition", b.name()))?;
            ensure(r.continuous == raw.continuous(&wb), || format!("{}: continuity differs", b.name()))?;
        }
        let all = lib(analyze(x, &Doctrine::all()))?;
        ensure(all.continuous == raw.distributive(), || "completely distributive iff distributive".into())?;
    }
    suite_counts("cts-equiv", &[("criteria-agree", 40, 0)])?;
    Ok(format!("{} lattices x 4 doctrines", lats.len()))
}

fn c2_soundness() -> Check {
    let posets = lib(posets_up_to(5))?;
    expect_counts(&posets, &[(0, 1), (1, 1), (2, 2), (3, 5), (4, 16), (5, 63)])?;
    pairwise_distinct(&posets)?;
    suite_counts("sound4", &[("soundness", 4 * posets.len(), 0)])?;
    Ok(format!("{} posets x 4 pairs", posets.len()))
}

fn c3_birkhoff() -> Check {
    let lats = lib(lattices_up_to(8))?;
    let dist: Vec<&FinPoset> = lats.iter().filter(|x| Raw::of(x).distributive()).collect();
    let sizes: Vec<FinPoset> = dist.iter().map(|x| (*x).clone()).collect();
    expect_counts(&sizes, &[(1, 1), (2, 1), (3, 1), (4, 2), (5, 3), (6, 5), (7, 8), (8, 15)])?;
    for x in &lats {
        let raw = Raw::of(x);
        let ji = raw.join_irreducibles();
        ensure((raw.lower_sets_of(&ji) == x.len()) == raw.distributive(), || "join-irreducible count mismatch".into())?;
    }
    for (name, x) in [("M3", FinPoset::m3()), ("N5", FinPoset::n5())] {
        let d = Doctrine::all();
        let r = lib(analyze(&x, &d))?;
        ensure(!r.continuous, || format!("{name} reported continuous"))?;
        ensure(!lib(check_meet_distributivity(&x, &d))?, || format!("{name} meet-distributive"))?;
        let fam = r.distributivity_witness.ok_or_else(|| format!("{name}: no witness"))?;
        ensure(!fam.is_empty(), || format!("{name}: empty witness"))?;
        let raw = Raw::of(&x);
        ensure(raw.lower_sets_of(&raw.join_irreducibles()) != x.len(), || format!("{name}: oracle agrees"))?;
    }
    suite_counts("birkhoff", &[("roundtrip-distributive", dist.len(), 0), ("reject-nondistributive", 2, 0)])?;
    Ok(format!("{} distributive lattices, M3 and N5 rejected", dist.len()))
}

fn c4_hms() -> Check {
    let lats = lib(lattices_up_to(7))?;
    expect_counts(&lats, &[(1, 1), (2, 1), (3, 1), (4, 2), (5, 5), (6, 15), (7, 53)])?;
    suite_counts("hms", &[("roundtrip", lats.len(), 0), ("functoriality", 100, 0)])?;
    Ok(format!("{} lattices, 100 composable pairs", lats.len()))
}

fn c5_interval_metric() -> Check {
    let m = IntervalModule::default();
    let g: Vec<Q> = (0..=64).map(|k| q(k, 64)).collect();
    let mut n = 0usize;
    for a in &g {
        for b in &g {
            let expect_rho = if a > b { a - b } else { Q::zero() };
            ensure(lib(rho(&m, a, b))? == expect_rho, || format!("rho({a}, {b})"))?;
            let expect_dist = if a > b { a - b } else { b - a };
            ensure(lib(dist(&m, a, b))? == expect_dist, || format!("dist({a}, {b})"))?;
            for r in &g {
                let sum = (b + r).min(Q::one());
                ensure(le_r(&m, a, b, r) == (*a <= sum), || format!("le_r({a}, {b}, {r})"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} grid triples"))
}

fn c6_module_laws() -> Check {
    let items = lib(suite::items("umod-metric", &SuiteParams::default()))?;
    let mut per: BTreeMap<(String, String), u64> = BTreeMap::new();
    for it in items.iter().filter(|it| it.check == "law") {
        let key = (it.input["module"].as_str().unwrap().to_string(), it.input["law"].as_str().unwrap().to_string());
        *per.entry(key).or_insert(0) += it.input["count"].as_u64().unwrap();
    }
    let modules: Vec<&str> = per.keys().map(|k| k.0.as_str()).collect();
    for m in ["interval", "function", "pl"] {
        ensure(modules.contains(&m), || format!("no laws for module {m}"))?;
    }
    for law in ["a", "b", "c", "d", "e", "f", "g"] {
        ensure(per.keys().filter(|k| k.1 == law).count() == 3, || format!("law {law} is not run on all modules"))?;
    }
    ensure(per.values().all(|&c| c == 1000), || format!("samples per law: {per:?}"))?;
    let law_items = items.iter().filter(|it| it.check == "law").count();
    suite_counts("umod-metric", &[("law", law_items, 0)])?;
    Ok(format!("{} laws x 1000 samples", per.len()))
}

fn c7_stacking() -> Check {
    let m = IntervalModule::default();
    let grid: Vec<Q> = (0..=16).map(|k| q(k, 16)).collect();
    let mut glued = 0;
    for r in grid.iter().filter(|r| !r.is_zero() && !r.is_one()) {
        for a in &grid {
            for b in &grid {
                match stack_glue(&m, r, a, b) {
                    Ok(c) => {
                        ensure(b.is_zero() || a.is_one(), || format!("glued incompatible ({a}, {b}) at {r}"))?;
                        let want = if b.is_zero() { r * a } else { r + (Q::one() - r) * b };
                        ensure(c == want, || format!("glue({a}, {b}) at {r} = {c}, expected {want}"))?;
                        glued += 1;
                    }
                    Err(Error::Incompatible { .. }) => {
                        ensure(!(b.is_zero() || a.is_one()), || format!("rejected compatible ({a}, {b}) at {r}"))?;
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
        }
        let w = lib(PLMap::trunc_add(r))?;
        for a in &grid {
            let want = (a + r).min(Q::one());
            ensure(lib(extend_to_uhat(&m, &w, a))? == want, || format!("extension at a={a} r={r}"))?;
        }
    }
    let total = suite_clean("stack")?;
    Ok(format!("{glued} interval glues by closed form, {total} suite items"))
}

fn c8_urysohn() -> Check {
    let lats = lib(lattices_up_to(6))?;
    let mut pairs = 0;
    let mut skipped = 0;
    for x in &lats {
        let raw = Raw::of(x);
        for b in FOUR {
            let d = Doctrine::builtin(b);
            let wb = raw.way_below(b);
            if !raw.continuous(&wb) {
                skipped += 1;
                continue;
            }
            for y in 0..x.len() {
                for t in (0..x.len()).filter(|&t| wb[y][t]) {
                    let f = lib(urysohn_separate(x, &d, y, t, 4))?;
                    let f1 = *f.lower.last().unwrap();
                    ensure(raw.le[y][f1] && raw.le[f1][t], || format!("{}: f⁺(1) out of range", b.name()))?;
                    let v = &f.values;
                    let top = raw.inf(&[]).unwrap();
                    ensure(v[top].is_one(), || "top not preserved".into())?;
                    for i in 0..x.len() {
                        for j in 0..x.len() {
                            let mij = raw.inf(&[i, j]).unwrap();
                            ensure(v[mij] == v[i].clone().min(v[j].clone()), || "binary meet not preserved".into())?;
                        }
                    }
                    pairs += 1;
                }
            }
        }
    }
    let cont = 4 * lats.len() - skipped;
    suite_counts("urysohn", &[("interval", 50, 0), ("finite", cont, skipped), ("eta", cont, skipped)])?;
    Ok(format!("{pairs} way-below pairs, 50 interval pairs"))
}

fn c9_kernel() -> Check {
    let d = lib(morphisms_to_i(&IntervalModule::new(DoctrinePair::for_phi(Builtin::Directed))))?.len();
    let a = lib(morphisms_to_i(&IntervalModule::new(DoctrinePair::for_phi(Builtin::AllPosets))))?.len();
    ensure(d == 2 && a == 3, || format!("interval morphisms: directed {d}, all {a}"))?;
    let lats = lib(lattices_up_to(5))?;
    for x in &lats {
        let m = lib(FunctionModule::directed(x.clone()))?;
        let k = lib(morphisms_to_i(&m))?.len();
        ensure(k == x.len(), || format!("{k} morphisms on a {}-element lattice", x.len()))?;
    }
    let dist6 = lib(lattices_up_to(6))?.iter().filter(|x| Raw::of(x).distributive()).count();
    suite_counts("gelfand-roundtrip", &[("kernel-interval", 1, 0), ("kernel-function", lats.len() + dist6, 0)])?;
    Ok(format!("2 and 3 interval morphisms, {} lattices in bijection", lats.len()))
}

fn c10_approximate_inverse() -> Check {
    let m = IntervalModule::default();
    for k in 0..=20 {
        let a0 = q(k * 97 % 101, 101);
        for n in [2usize, 4, 8, 16] {
            let a = lib(approximate_inverse(&m, &lib(iota_transpose(&m, &a0, n))?))?;
            let nq = q(n as i64, 1);
            let want = (&a0 * &nq).floor() / &nq;
            ensure(a == want, || format!("a0={a0} n={n}: got {a}, expected {want}"))?;
            ensure(lib(dist(&m, &a, &a0))? <= q(2, n as i64), || "distance bound".into())?;
        }
    }
    let fm = lib(FunctionModule::directed(FinPoset::diamond()))?;
    let a0 = lib(fm.element(vec![q(1, 7), q(5, 7), q(1, 7), q(1, 1)]))?;
    for n in [2usize, 4, 8, 16] {
        let a = lib(approximate_inverse(&fm, &lib(iota_transpose(&fm, &a0, n))?))?;
        ensure(lib(dist(&fm, &a, &a0))? <= q(2, n as i64), || format!("diamond n={n}: {}", fm.show(&a)))?;
    }
    suite_counts("gelfand-roundtrip", &[("approx-inverse", 20, 0)])?;
    Ok("20 seeded elements, n in {2, 4, 8, 16}".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 10] = [
        ("continuity criteria agree", 120, c1_continuity_criteria),
        ("finite soundness", 300, c2_soundness),
        ("Birkhoff recovery", 120, c3_birkhoff),
        ("HMS recovery", 300, c4_hms),
        ("interval metric", 10, c5_interval_metric),
        ("module laws", 120, c6_module_laws),
        ("stackability", 60, c7_stacking),
        ("Urysohn separation", 60, c8_urysohn),
        ("kernel correspondence", 300, c9_kernel),
        ("approximate inverse", 120, c10_approximate_inverse),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = run();
        let took = start.elapsed();
        let res = match res {
            Ok(detail) if took > Duration::from_secs(*budget) => Err(format!("{detail}; over the {budget} s budget")),
            other => other,
        };
        match res {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({} ms)", i + 1, took.as_millis()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({} ms)", i + 1, took.as_millis());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
