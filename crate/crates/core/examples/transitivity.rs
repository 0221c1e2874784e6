//! 6-transitivity of the group generated by CT_N and CT_{p^k} acting
//! synchronously on [0, Np), and transitivity of the point-stabilizer
//! generators off their fixed points.
//!
//!     cargo run --example transitivity -- 7

use std::time::Instant;

use classtrans::bridges;
use classtrans::bsgs;
use classtrans::gens;
use classtrans::residue::Parameters;

fn main() -> classtrans::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let params = Parameters::new(n)?;
    let set = gens::combined_generators(&params)?;
    println!("degree {}, {} generators", set.degree(), set.len());
    for k in 1..=6 {
        let start = Instant::now();
        println!("{k}-transitive: {} ({:?})", bsgs::is_k_transitive(&set, k)?, start.elapsed());
    }
    for delta in bridges::stabilizer_ladder(&params)? {
        let report = bridges::stabilizer_orbit(&params, &delta)?;
        println!(
            "fixing {delta:?}: {} fixed points, orbit of {} has {} points, transitive {}",
            report.fixed_points.len(),
            report.start,
            report.orbit_size,
            report.transitive
        );
    }
    Ok(())
}
