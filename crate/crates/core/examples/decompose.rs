//! Writes permutations of [0, 12) as words in the ten generators of CT_(4)
//! and re-evaluates them.
//!
//!     cargo run --example decompose -- "(0 11)(3 4 5)"

use classtrans::bsgs;
use classtrans::gens;
use classtrans::perm::evaluate;
use classtrans::Permutation;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn main() -> classtrans::Result<()> {
    let set = gens::ct_family_generators(4, 12)?;
    let chain = bsgs::build_chain(&set);
    println!("base {:?}, orbit lengths {:?}", chain.base(), chain.basic_orbit_lengths());

    let mut targets = Vec::new();
    if let Some(text) = std::env::args().nth(1) {
        targets.push(Permutation::parse(&text, 12)?);
    } else {
        targets.push(Permutation::parse("(0 1)", 12)?);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..5 {
            let mut images: Vec<usize> = (0..12).collect();
            images.shuffle(&mut rng);
            targets.push(Permutation::from_images(images)?);
        }
    }
    for g in targets {
        let word = chain.decompose(&g)?;
        let ok = evaluate(&word, &set)? == g;
        println!("{g}: {} letters, re-evaluates {}", word.len(), if ok { "OK" } else { "WRONG" });
        if word.len() <= 12 {
            println!("  {}", word.display_with(&set));
        }
    }
    Ok(())
}
