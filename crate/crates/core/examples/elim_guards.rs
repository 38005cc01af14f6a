//! Complement and largest-element definitions of a refinement type, and
//! elimination of a type-guarded existential.

use hohorn::syntax::{parse_term, parse_type};
use hohorn::transform::{com, elim_guards, lar, simplify};
use hohorn::Term;

fn main() {
    let t = parse_type("(x:int) -> (y:int) -> bool[x mod 2 = 0 => y mod 2 = 0]").unwrap();
    println!("type:        {t}");
    println!("complement:  {}", com(&t).unwrap());
    println!("largest:     {}", lar(&Term::ff(), &t).unwrap());

    let ho = parse_type("((x:int) -> bool[x = 0]) -> bool[false]").unwrap();
    println!("\ntype:        {ho}");
    println!("complement:  {}", com(&ho).unwrap());

    let g = parse_term(
        "exists g : [(x:int) -> (y:int) -> bool[x mod 2 = 0 => y mod 2 = 0]]. exists z:int. g 0 z && z mod 2 = 1",
    )
    .unwrap();
    println!("\nguarded:     {g}");
    println!("eliminated:  {}", simplify(&elim_guards(&g)));
}
