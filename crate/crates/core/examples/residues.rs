//! Residue classes, class transpositions acting on a fundamental domain,
//! and the values of n for which n + 1 is a new prime power.

use classtrans::gens::{self, HorizontalClassTransposition};
use classtrans::residue::{self, ResidueClass};

fn main() -> classtrans::Result<()> {
    let a = ResidueClass::new(1, 4)?;
    let b = ResidueClass::new(3, 6)?;
    let c = ResidueClass::new(0, 6)?;
    println!("{a} and {b} disjoint: {}", residue::classes_disjoint(a, b));
    println!("{a} and {c} disjoint: {}", residue::classes_disjoint(a, c));

    let t = HorizontalClassTransposition::new(1, 3, 4)?;
    let perm = gens::tau(&t, 12)?;
    println!("tau 1(4),3(4) on [0, 12): {perm}, parity {:?}", perm.parity());

    for n in 2..=24 {
        let params = residue::Parameters::new(n)?;
        match params.prime_power_case() {
            Ok(pp) => println!("n = {n:>2}: N = {:>12}, {} = {}^{}, M = {}", pp.lcm, n + 1, pp.prime, pp.exponent, pp.cofactor),
            Err(_) => println!("n = {n:>2}: N = {:>12}, {} divides N", params.lcm(), n + 1),
        }
    }
    Ok(())
}
