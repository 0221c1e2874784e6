//! Enumerates small groups by breadth-first search and compares them with
//! the stabilizer chain: the n = 3 family, CT_m for small m, and two
//! textbook groups.

use classtrans::bsgs;
use classtrans::gens::{self, GeneratorSet};
use classtrans::oracle;
use classtrans::Permutation;

fn named(degree: usize, cycles: &[&str]) -> classtrans::Result<GeneratorSet> {
    let perms = cycles.iter().map(|c| Permutation::parse(c, degree)).collect::<classtrans::Result<_>>()?;
    GeneratorSet::from_permutations(degree, perms)
}

fn main() -> classtrans::Result<()> {
    let sets = [
        ("CT_2, CT_3 on 6 points", gens::ct_family_generators(3, 6)?),
        ("CT_5", gens::ct_n_generators(5, 5)?),
        ("CT_3 on 12 points", gens::ct_n_generators(3, 12)?),
        ("A5", named(5, &["(0 1 2)", "(0 1 2 3 4)"])?),
        ("C4", named(4, &["(0 1 2 3)"])?),
    ];
    println!("{:<24} {:>8} {:>8} {:>6}", "group", "BFS", "chain", "k-tr");
    for (name, set) in sets {
        let group = oracle::enumerate(&set, oracle::default_cap())?;
        let chain = bsgs::build_chain(&set);
        println!("{name:<24} {:>8} {:>8} {:>6}", group.order()?, chain.order(), oracle::max_transitivity(&group)?);
    }
    Ok(())
}
