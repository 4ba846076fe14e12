//! Saturation of the builtin doctrines and the finite soundness check.

use ordkit::doctrines::{builtin_doctrines, check_saturation, check_soundness_finite, phi_of, Builtin, Doctrine};
use ordkit::order::{posets_up_to, FinPoset};

fn main() -> ordkit::Result<()> {
    let corpus = posets_up_to(4)?;
    for b in Builtin::ALL {
        let d = Doctrine::builtin(b);
        let r = check_saturation(&d, &corpus);
        println!("{:<28} dual {:<28} saturated {}", b.name(), b.dual().name(), r.passed());
    }

    let x = FinPoset::diamond();
    for pair in builtin_doctrines() {
        let sets = phi_of(&pair.phi, &x)?;
        let sound = check_soundness_finite(&pair, &x)?;
        println!("{:<20} |Phi(diamond)| = {}  sound: {}", pair.phi.name(), sets.len(), sound.passed());
    }
    Ok(())
}
