//! Morphisms into the interval as invariant closed filters, and recovering an
//! element from its values on a finite grid.

use ordkit::doctrines::{Builtin, DoctrinePair};
use ordkit::gelfand::{approximate_inverse, iota_transpose};
use ordkit::interval::{fmt_q, q};
use ordkit::order::FinPoset;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ordkit::umodules::{dist, morphisms_to_i, FunctionModule, IntervalModule, UModule};

fn main() -> ordkit::Result<()> {
    for b in [Builtin::Directed, Builtin::AllPosets] {
        let m = IntervalModule::new(DoctrinePair::for_phi(b));
        println!("interval under {}: {} morphisms", b.name(), morphisms_to_i(&m)?.len());
    }
    let fm = FunctionModule::directed(FinPoset::n5())?;
    println!("functions on N5: {} morphisms", morphisms_to_i(&fm)?.len());

    let m = IntervalModule::default();
    let a0 = q(5, 7);
    for n in [2, 4, 8, 16] {
        let a = approximate_inverse(&m, &iota_transpose(&m, &a0, n)?)?;
        println!("n = {n:>2}: a = {:>5}, dist = {}", fmt_q(&a), fmt_q(&dist(&m, &a, &a0)?));
    }
    let b0 = fm.random_element(&mut ChaCha8Rng::seed_from_u64(2), 9).expect("N5 has a top");
    let b = approximate_inverse(&fm, &iota_transpose(&fm, &b0, 8)?)?;
    println!("N5, n = 8: {} from {} at distance {}", fm.show(&b), fm.show(&b0), fmt_q(&dist(&fm, &b, &b0)?));
    Ok(())
}
