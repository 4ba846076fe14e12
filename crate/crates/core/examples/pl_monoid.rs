//! Piecewise-linear self-maps of the unit interval: composition, adjoints,
//! truncated arithmetic and the sup distance.

use ordkit::interval::{fmt_q, q, PLMap};

fn main() -> ordkit::Result<()> {
    let f = PLMap::from_points(&[(q(0, 1), q(0, 1)), (q(1, 3), q(1, 2)), (q(1, 1), q(1, 1))])?;
    let g = PLMap::trunc_add(&q(1, 4))?;
    let fg = f.compose(&g);
    println!("f      = {}", f.to_json_string());
    println!("f . g  = {}", fg.to_json_string());
    println!("f(g(1/3)) = {}", fmt_q(&fg.eval(&q(1, 3))));

    let r = f.right_adjoint()?;
    let l = f.left_adjoint()?;
    println!("right adjoint at 1/2: {}", fmt_q(&r.eval(&q(1, 2))));
    println!("left adjoint at 1/2:  {}", fmt_q(&l.eval(&q(1, 2))));
    println!("classify f:     {:?}", f.classify());
    println!("classify f . g: {:?}", fg.classify());
    println!("rho(f, id) = {}", fmt_q(&f.linf_rho(&PLMap::identity())));
    println!("rho(id, f) = {}", fmt_q(&PLMap::identity().linf_rho(&f)));
    Ok(())
}
