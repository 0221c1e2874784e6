//! Walks from one point of [0, Np) to another through the bridges and
//! checks the resulting word of class transpositions.
//!
//!     cargo run --example connect_points -- 4 0 59

use classtrans::bridges;
use classtrans::gens;
use classtrans::perm::evaluate;
use classtrans::residue::Parameters;

fn main() -> classtrans::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, alpha, beta) = match args[..] {
        [n, a, b] => (n as u32, a, b),
        _ => (4, 0, 59),
    };
    let params = Parameters::new(n)?;
    let set = gens::combined_generators(&params)?;
    let word = bridges::connect(&params, alpha, beta)?;
    println!("{alpha} -> {beta}: {} letters over {} generators", word.len(), set.len());
    let mut x = alpha as usize;
    for letter in word.letters() {
        let y = set.apply(letter.generator, x);
        println!("  {:>24}  {x} -> {y}", set.label(letter.generator));
        x = y;
    }
    if set.degree() <= 120 {
        let g = evaluate(&word, &set)?;
        println!("as a permutation: {g}");
    }
    assert_eq!(x as u64, beta);
    Ok(())
}
