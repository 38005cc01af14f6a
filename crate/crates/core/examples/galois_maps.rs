//! The maps between standard and monotone relations at `(int -> o) -> o`
//! over arithmetic modulo 2.

use std::sync::Arc;

use hohorn::cli::render_element;
use hohorn::semantics::{FiniteTheory, Frames, Galois, Kind};
use hohorn::Sort;

fn main() {
    let frames = Frames::new(Arc::new(FiniteTheory::modular(2)));
    let rho = Sort::arrow(Sort::arrow(Sort::int(), Sort::Prop), Sort::Prop);
    let maps = Galois::new(&frames).maps(&rho).unwrap();
    let s = frames.get(&rho, Kind::Standard).unwrap();
    let m = frames.get(&rho, Kind::Monotone).unwrap();
    println!("{} standard and {} monotone relations at {rho}", s.size, m.size);

    let show_s = |x| render_element(&frames, &rho, Kind::Standard, x);
    let show_m = |x| render_element(&frames, &rho, Kind::Monotone, x);
    for x in 0..s.size {
        println!("{}\n  L = {}\n  U = {}", show_s(x), show_m(maps.l[x]), show_m(maps.u[x]));
    }
    for r in 0..m.size {
        assert_eq!(maps.l[maps.i[r]], r);
        assert_eq!(maps.u[maps.j[r]], r);
    }
    println!("L after I and U after J are the identity on monotone relations");
}
