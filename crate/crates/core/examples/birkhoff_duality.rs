//! A finite distributive lattice is recovered from its join-irreducibles;
//! M3 and N5 are rejected with a witness family.

use ordkit::continuity::analyze;
use ordkit::doctrines::{Builtin, Doctrine, DoctrinePair};
use ordkit::duality::{dual_of_lattice, roundtrip};
use ordkit::order::FinPoset;

fn main() -> ordkit::Result<()> {
    let pair = DoctrinePair::for_phi(Builtin::AllPosets);
    let x = FinPoset::chain(2).product(&FinPoset::chain(3));
    let dual = dual_of_lattice(&x, &pair)?;
    println!("C2 x C3: {} elements, {} join-irreducibles", x.len(), dual.poset.len());
    let w = roundtrip(&x, &pair)?;
    println!("round trip forward {:?}", w.forward.values);

    for (name, l) in [("M3", FinPoset::m3()), ("N5", FinPoset::n5())] {
        let r = analyze(&l, &Doctrine::all())?;
        println!("{name}: continuous {}, witness {:?}", r.continuous, r.distributivity_witness);
        match roundtrip(&l, &pair) {
            Ok(_) => println!("{name}: unexpected round trip"),
            Err(e) => println!("{name}: {e}"),
        }
    }
    Ok(())
}
