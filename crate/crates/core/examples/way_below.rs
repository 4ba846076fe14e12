//! Way-below relations and continuity of small lattices under each doctrine.

use ordkit::continuity::{analyze, interval_way_below};
use ordkit::doctrines::{builtin_doctrines, Doctrine};
use ordkit::interval::q;
use ordkit::order::FinPoset;

fn main() -> ordkit::Result<()> {
    for (name, x) in [("C3", FinPoset::chain(3)), ("diamond", FinPoset::diamond()), ("M3", FinPoset::m3())] {
        for pair in builtin_doctrines() {
            let r = analyze(&x, &pair.phi)?;
            println!(
                "{name:<8} {:<18} continuous {:<5} algebraic {:<5} compacts {:?}",
                pair.phi.name(),
                r.continuous,
                r.algebraic,
                r.compacts
            );
        }
    }
    let d = Doctrine::directed();
    println!("\n1/3 << 1/2 in [0,1]: {}", interval_way_below(&q(1, 3), &q(1, 2), &d)?);
    println!("1/2 << 1/2 in [0,1]: {}", interval_way_below(&q(1, 2), &q(1, 2), &d)?);
    println!("0 << 0 in [0,1]:     {}", interval_way_below(&q(0, 1), &q(0, 1), &d)?);
    Ok(())
}
