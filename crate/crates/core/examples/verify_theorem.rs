//! Builds CT_(n) on [0, N) for each n given on the command line (default
//! 3 through 7) and compares the order of its stabilizer chain with N!.
//!
//!     cargo run --example verify_theorem -- 4 7

use std::time::Instant;

use classtrans::bsgs;
use classtrans::gens;
use classtrans::residue::Parameters;
use num_bigint::BigUint;

fn main() -> classtrans::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ns = if args.is_empty() { vec![3, 4, 5, 6, 7] } else { args };
    println!("{:>3} {:>6} {:>5} {:>10} {:>9}  order = N!", "n", "N", "gens", "base len", "ms");
    for n in ns {
        let params = Parameters::new(n)?;
        let degree = params.lcm_u64()? as usize;
        let set = gens::ct_family_generators(n, degree)?;
        let start = Instant::now();
        let chain = bsgs::build_chain(&set);
        let elapsed = start.elapsed().as_millis();
        let factorial: BigUint = (1..=degree as u64).map(BigUint::from).product();
        println!(
            "{n:>3} {degree:>6} {:>5} {:>10} {elapsed:>9}  {}",
            set.len(),
            chain.base().len(),
            chain.order() == factorial
        );
        if degree <= 12 {
            println!("    order {}", chain.order());
        }
    }
    Ok(())
}
