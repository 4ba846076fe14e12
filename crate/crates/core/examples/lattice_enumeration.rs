//! Counts posets and lattices up to isomorphism and prints a Hasse diagram.

use ordkit::io::to_dot;
use ordkit::order::{enumerate_lattices, enumerate_posets, FinPoset};

fn main() -> ordkit::Result<()> {
    println!("{:>2} {:>8} {:>8}", "n", "posets", "lattices");
    for n in 1..=6 {
        println!("{n:>2} {:>8} {:>8}", enumerate_posets(n)?.len(), enumerate_lattices(n)?.len());
    }
    let n5 = FinPoset::n5();
    println!("\nN5 distributive: {}", n5.is_distributive_lattice());
    print!("{}", to_dot(&n5));
    Ok(())
}
