//! Separating a way-below pair by a morphism into the interval.

use ordkit::doctrines::Doctrine;
use ordkit::gelfand::{eta_separation, interpolate_chain, urysohn_separate, urysohn_separate_interval};
use ordkit::interval::{fmt_q, q};
use ordkit::order::FinPoset;

fn main() -> ordkit::Result<()> {
    let d = Doctrine::directed();
    let f = urysohn_separate_interval(&d, &q(1, 4), &q(3, 4))?;
    println!("interval, 1/4 << 3/4: f = {}", f.to_json_string());

    let x = FinPoset::chain(2).product(&FinPoset::chain(3));
    let (y, t) = (0, x.top().expect("top"));
    let chain = interpolate_chain(&x, &d, y, t, 2)?;
    println!("interpolating chain: {:?}", chain.points);
    let g = urysohn_separate(&x, &d, y, t, 2)?;
    let values: Vec<String> = g.values.iter().map(fmt_q).collect();
    println!("f = {values:?}, f+(1) = {}", g.lower[g.lower.len() - 1]);
    println!("meets preserved: {}, joins preserved: {}", g.preserves_meets, g.preserves_joins);

    let all = Doctrine::all();
    let e = eta_separation(&x, &all, 2, 1, 3)?;
    println!("separating 2 from 1: f(2) = {}, f(1) = {}", fmt_q(&e.values[2]), fmt_q(&e.values[1]));
    Ok(())
}
