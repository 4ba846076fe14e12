use rand::seq::SliceRandom;
use serde_json::{json, Value};

use super::{field, outcome, rng_for, str_field, u64_field, Item, Outcome, SuiteParams};
use crate::continuity::{analyze, check_interpolation, check_meet_distributivity, is_continuous};
use crate::doctrines::{builtin_doctrines, check_saturation, check_soundness_finite, Builtin, Doctrine, DoctrinePair};
use crate::duality::{dual_morphism, roundtrip};
use crate::error::{Error, Result};
use crate::io::{poset_from_value, poset_to_value};
use crate::order::{lattices_up_to, monotone_maps, posets_up_to, FinPoset, MonotoneMap};

fn pair_names() -> Vec<&'static str> {
    builtin_doctrines().iter().map(|p| p.phi.as_builtin().expect("builtin").name()).collect()
}

pub fn saturation_items(p: &SuiteParams) -> Result<Vec<Item>> {
    let max = p.size(4);
    Ok(Builtin::ALL.iter().map(|b| Item::new("saturation", json!({"doctrine": b.name(), "max": max}))).collect())
}

pub fn sound4_items(p: &SuiteParams) -> Result<Vec<Item>> {
    let posets = posets_up_to(p.size(5))?;
    let mut out = Vec::new();
    for name in pair_names() {
        for x in &posets {
            out.push(Item::new("soundness", json!({"pair": name, "poset": poset_to_value(x)})));
        }
    }
    Ok(out)
}

fn per_lattice(check: &'static str, max: usize) -> Result<Vec<Item>> {
    let lattices = lattices_up_to(max)?;
    let mut out = Vec::new();
    for name in pair_names() {
        for x in &lattices {
            out.push(Item::new(check, json!({"doctrine": name, "lattice": poset_to_value(x)})));
        }
    }
    Ok(out)
}

pub fn cts_items(p: &SuiteParams) -> Result<Vec<Item>> {
    per_lattice("criteria-agree", p.size(5))
}

pub fn interpolation_items(p: &SuiteParams) -> Result<Vec<Item>> {
    per_lattice("interpolation", p.size(6))
}

fn map_value(f: &MonotoneMap) -> Value {
    json!(f.values)
}

fn map_from(dom: &FinPoset, cod: &FinPoset, v: &Value) -> Result<MonotoneMap> {
    let values: Vec<usize> = serde_json::from_value(v.clone())
        .map_err(|e| Error::Schema { pointer: "/map".into(), message: e.to_string() })?;
    MonotoneMap::new(dom.clone(), cod.clone(), values)
}

pub fn hms_items(p: &SuiteParams) -> Result<Vec<Item>> {
    let mut out: Vec<Item> =
        lattices_up_to(p.size(7))?.iter().map(|x| Item::new("roundtrip", json!({"lattice": poset_to_value(x)}))).collect();
    let small = lattices_up_to(p.size(7).min(5))?;
    let mut rng = rng_for(p.seed, 4);
    let pairs = p.count(100);
    let mut made = 0;
    while made < pairs {
        let x = small.choose(&mut rng).expect("nonempty corpus");
        let y = small.choose(&mut rng).expect("nonempty corpus");
        let z = small.choose(&mut rng).expect("nonempty corpus");
        let fs: Vec<MonotoneMap> = monotone_maps(x, y).into_iter().filter(|m| m.preserves_meets()).collect();
        let gs: Vec<MonotoneMap> = monotone_maps(y, z).into_iter().filter(|m| m.preserves_meets()).collect();
        let (Some(f), Some(g)) = (fs.choose(&mut rng), gs.choose(&mut rng)) else { continue };
        out.push(Item::new(
            "functoriality",
            json!({
                "x": poset_to_value(x), "y": poset_to_value(y), "z": poset_to_value(z),
                "f": map_value(f), "g": map_value(g),
            }),
        ));
        made += 1;
    }
    Ok(out)
}

pub fn birkhoff_items(p: &SuiteParams) -> Result<Vec<Item>> {
    let mut out: Vec<Item> = lattices_up_to(p.size(8))?
        .iter()
        .filter(|x| x.is_distributive_lattice())
        .map(|x| Item::new("roundtrip-distributive", json!({"lattice": poset_to_value(x)})))
        .collect();
    for x in [FinPoset::m3(), FinPoset::n5()] {
        out.push(Item::new("reject-nondistributive", json!({"lattice": poset_to_value(&x)})));
    }
    Ok(out)
}

fn doctrine(v: &Value) -> Result<Doctrine> {
    Doctrine::parse(str_field(v, "doctrine")?)
}

fn lattice(v: &Value) -> Result<FinPoset> {
    poset_from_value(field(v, "lattice")?)
}

pub fn check(check: &str, v: &Value) -> Result<Outcome> {
    match check {
        "saturation" => {
            let d = doctrine(v)?;
            let corpus = posets_up_to(u64_field(v, "max")? as usize)?;
            let r = check_saturation(&d, &corpus);
            Ok(outcome(r.passed(), || format!("{:?}", r.failures)))
        }
        "soundness" => {
            let pair = DoctrinePair::parse(str_field(v, "pair")?)?;
            let x = poset_from_value(field(v, "poset")?)?;
            let r = check_soundness_finite(&pair, &x)?;
            Ok(outcome(r.passed(), || format!("{r:?}")))
        }
        "criteria-agree" => {
            let d = doctrine(v)?;
            let x = lattice(v)?;
            match analyze(&x, &d) {
                Ok(_) => Ok(Outcome::Pass),
                Err(e) => Ok(Outcome::Fail(e.to_string())),
            }
        }
        "interpolation" => {
            let d = doctrine(v)?;
            let x = lattice(v)?;
            if !is_continuous(&x, &d)? {
                return Ok(Outcome::Skipped("not continuous".into()));
            }
            Ok(outcome(check_interpolation(&x, &d)?, || "interpolation fails".into()))
        }
        "roundtrip" => {
            let x = lattice(v)?;
            roundtrip(&x, &DoctrinePair::for_phi(Builtin::Directed))?;
            Ok(Outcome::Pass)
        }
        "roundtrip-distributive" => {
            let x = lattice(v)?;
            roundtrip(&x, &DoctrinePair::for_phi(Builtin::AllPosets))?;
            Ok(Outcome::Pass)
        }
        "reject-nondistributive" => {
            let x = lattice(v)?;
            let d = Doctrine::all();
            let r = analyze(&x, &d)?;
            let ok = !r.continuous && !check_meet_distributivity(&x, &d)? && r.distributivity_witness.is_some();
            Ok(outcome(ok, || format!("continuous={} witness={:?}", r.continuous, r.distributivity_witness)))
        }
        "functoriality" => {
            let x = poset_from_value(field(v, "x")?)?;
            let y = poset_from_value(field(v, "y")?)?;
            let z = poset_from_value(field(v, "z")?)?;
            let f = map_from(&x, &y, field(v, "f")?)?;
            let g = map_from(&y, &z, field(v, "g")?)?;
            let pair = DoctrinePair::for_phi(Builtin::Directed);
            let df = dual_morphism(&f, &pair)?;
            let dg = dual_morphism(&g, &pair)?;
            let dgf = dual_morphism(&f.then(&g)?, &pair)?;
            let composed = dg.map.then(&df.map)?;
            Ok(outcome(composed.values == dgf.map.values, || {
                format!("D(g∘f) = {:?}, D(f)∘D(g) = {:?}", dgf.map.values, composed.values)
            }))
        }
        other => Err(Error::Precondition(format!("unknown check `{other}`"))),
    }
}
