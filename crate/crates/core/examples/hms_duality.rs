//! Finite lattices against their meet-semilattices of compacts, and the
//! contravariant action on meet-preserving maps.

use ordkit::doctrines::{Builtin, DoctrinePair};
use ordkit::duality::{dual_morphism, dual_of_lattice, roundtrip};
use ordkit::order::{monotone_maps, FinPoset, MonotoneMap};

/// The meet-preserving map with the largest image.
fn richest(maps: Vec<MonotoneMap>) -> MonotoneMap {
    maps.into_iter()
        .filter(|m| m.preserves_meets())
        .max_by_key(|m| {
            let mut v = m.values.clone();
            v.sort();
            v.dedup();
            v.len()
        })
        .expect("a meet-preserving map")
}

fn main() -> ordkit::Result<()> {
    let pair = DoctrinePair::for_phi(Builtin::Directed);
    let x = FinPoset::n5();
    let d = dual_of_lattice(&x, &pair)?;
    println!("N5 dual has {} elements, {} covers", d.poset.len(), d.poset.covers().len());
    let w = roundtrip(&x, &pair)?;
    println!("back to N5 via {:?}", w.backward.values);

    let y = FinPoset::diamond();
    let z = FinPoset::chain(3);
    let f = richest(monotone_maps(&x, &y));
    let g = richest(monotone_maps(&y, &z));
    let df = dual_morphism(&f, &pair)?;
    let dg = dual_morphism(&g, &pair)?;
    let dgf = dual_morphism(&f.then(&g)?, &pair)?;
    println!("f = {:?}, g = {:?}", f.values, g.values);
    println!("D(g.f) = {:?}", dgf.map.values);
    println!("D(f).D(g) = {:?}", dg.map.then(&df.map)?.values);
    Ok(())
}
