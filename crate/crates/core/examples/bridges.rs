//! Bridges between consecutive N-blocks of [0, Np), the exceptional set E
//! and the right-pier point of E that the stabilizer arguments must avoid.
//!
//!     cargo run --example bridges -- 4

use classtrans::bridges;
use classtrans::residue::Parameters;

fn main() -> classtrans::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let params = Parameters::new(n)?;
    let pp = params.prime_power_case()?;
    println!("n = {n}: N = {}, n + 1 = {}^{}, M = {}, domain [0, {})", pp.lcm, pp.prime, pp.exponent, pp.cofactor, pp.extended_degree());

    for r in bridges::all_bridges(&params)? {
        let block = r.j * pp.prime_power..(r.j + 1) * pp.prime_power;
        println!("boundary {}: block {} = {block:?}, overlaps {} + {}, {:?}, pier {:?}", r.i, r.j, r.overlap_left, r.overlap_right, r.kind, r.pier);
    }

    let es = bridges::exceptional_set(&params)?;
    let shown: Vec<u64> = es.points().take(8).collect();
    println!("|E| = {}, first points {shown:?}", es.len());
    if n > 3 {
        let report = bridges::pier_exclusions(&params, &es)?;
        println!("left-pier hits {}, right-pier hits {:?}", report.left_hits.len(), report.right_hits);
        println!("excluded point of E: {:?}", report.excluded);
        println!("stabilized sets: {:?}", bridges::stabilizer_ladder(&params)?);
    }
    Ok(())
}
