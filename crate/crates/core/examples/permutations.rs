//! Parsing and printing permutations in cycle and image-list notation.

use classtrans::Permutation;

fn main() -> classtrans::Result<()> {
    let a = Permutation::parse("(0 3 5)(1 2)", 6)?;
    let b = Permutation::parse("[1,0,2,3,4,5]", 6)?;
    println!("a = {a}, images {:?}", a.images().collect::<Vec<_>>());
    println!("b = {b}");
    println!("ab = {}, ba = {}", a.compose(&b)?, b.compose(&a)?);
    println!("a^-1 = {}, a^6 = {}", a.inverse(), a.pow(6));
    println!("parity of a: {:?}", a.parity());
    match Permutation::parse("(0 1", 6) {
        Ok(_) => unreachable!(),
        Err(e) => println!("\"(0 1\" -> {e}"),
    }
    Ok(())
}
