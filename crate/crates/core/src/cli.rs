//! Subcommands behind the `classtrans` binary. Each command builds a
//! serializable report; rendering and exit codes are decided here so the
//! binary stays a thin wrapper.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;

use crate::bridges::{self, BridgeKind, BridgeReport, PierExclusionReport, StabilizerOrbitReport};
use crate::bsgs;
use crate::error::{Error, Result};
use crate::gens;
use crate::oracle;
use crate::perm::Permutation;
use crate::residue::Parameters;

/// Largest `n` accepted without `--force`.
pub const MAX_N: u32 = 8;

/// Oracle runs whose worst-case image storage exceeds this need `--force`.
const ORACLE_MEMORY_BUDGET: usize = 1 << 30;

pub const EXIT_OK: i32 = 0;
/// A requested check failed outside the range where it is claimed to hold.
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_FALSIFIED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "classtrans", version, about = "Horizontal class transposition groups as permutation groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build CT_(n) on [0, N) and compare its order with N!.
    Verify {
        n: u32,
        /// Also run the degree-Np bridge, pier, stabilizer and 6-transitivity checks.
        #[arg(long)]
        lemmas: bool,
        #[arg(long)]
        json: bool,
        /// Allow n above the desk-scale limit.
        #[arg(long)]
        force: bool,
    },
    /// List the bridges between consecutive N-blocks and the pier exclusions.
    Bridges {
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Write a permutation of [0, N) as a word in the CT_(n) generators.
    Decompose {
        n: u32,
        /// Cycle notation "(0 3 5)(1 2)" or an image list "[3,2,1,0]".
        perm: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        force: bool,
    },
    /// Connect two points of [0, Np) by walking through the bridges.
    Connect {
        n: u32,
        alpha: u64,
        beta: u64,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate CT_(n) by breadth-first search and compare with the stabilizer chain.
    Oracle {
        n: u32,
        #[arg(long, env = oracle::CAP_ENV, default_value_t = oracle::DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        force: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    CheckFailed,
    Falsified,
}

impl Status {
    fn from_check(ok: bool, claimed: bool) -> Status {
        match (ok, claimed) {
            (true, _) => Status::Pass,
            (false, true) => Status::Falsified,
            (false, false) => Status::CheckFailed,
        }
    }

    fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Falsified, _) | (_, Status::Falsified) => Status::Falsified,
            (Status::CheckFailed, _) | (_, Status::CheckFailed) => Status::CheckFailed,
            _ => Status::Pass,
        }
    }
}

pub fn exit_code(outcome: &Result<Status>) -> i32 {
    match outcome {
        Ok(Status::Pass) => EXIT_OK,
        Ok(Status::CheckFailed) => EXIT_CHECK_FAILED,
        Ok(Status::Falsified) | Err(Error::Falsified(_)) => EXIT_FALSIFIED,
        Err(_) => EXIT_PRECONDITION,
    }
}

fn factorial(n: u64) -> BigUint {
    (2..=n).map(BigUint::from).product::<BigUint>().max(BigUint::from(1u32))
}

fn guard_n(n: u32, force: bool) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    if n > MAX_N && !force {
        return Err(Error::InvalidArgument(format!(
            "n = {n} exceeds the desk-scale limit {MAX_N}; lcm(2..{n}) = {} points need image tables of that size per strong generator and the degree-Np checks scale further; pass --force to run anyway",
            Parameters::new(n)?.lcm()
        )));
    }
    Ok(())
}

fn degree_of(params: &Parameters) -> Result<usize> {
    let n = params.lcm_u64()?;
    usize::try_from(n).map_err(|_| Error::Overflow(format!("N = {n} does not fit in usize")))
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub pier_exclusions: PierExclusionReport,
    pub punctured_bridges: bool,
    pub stabilizer_orbit: StabilizerOrbitReport,
    pub combined_generator_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub n: u32,
    #[serde(rename = "N")]
    pub lcm: String,
    pub prime_power_case: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    pub generator_count: usize,
    pub group_order: String,
    pub expected_order: String,
    pub theorem_holds: bool,
    pub six_transitive: Option<bool>,
    pub bridge_summary: Vec<BridgeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemmas: Option<LemmaReport>,
    pub timings_ms: BTreeMap<&'static str, u64>,
}

impl VerificationReport {
    /// Whether every check in the report passed, and whether failures contradict a claim.
    pub fn status(&self) -> Status {
        let claimed = self.n > 3;
        let mut status = Status::from_check(self.theorem_holds, claimed);
        if let Some(six) = self.six_transitive {
            status = status.and(Status::from_check(six, claimed));
        }
        if let Some(lemmas) = &self.lemmas {
            status = status.and(Status::from_check(lemmas.punctured_bridges && lemmas.stabilizer_orbit.transitive, claimed));
        }
        status
    }
}

fn timed<T>(timings: &mut BTreeMap<&'static str, u64>, phase: &'static str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let value = f()?;
    timings.insert(phase, start.elapsed().as_millis() as u64);
    Ok(value)
}

pub fn cmd_verify(n: u32, lemmas: bool, force: bool) -> Result<VerificationReport> {
    guard_n(n, force)?;
    let params = Parameters::new(n)?;
    let degree = degree_of(&params)?;
    let mut timings = BTreeMap::new();
    let set = timed(&mut timings, "generators", || gens::ct_family_generators(n, degree))?;
    let chain = timed(&mut timings, "stabilizer_chain", || Ok(bsgs::build_chain(&set)))?;
    let group_order = chain.order();
    let expected_order = factorial(degree as u64);
    let pp = params.prime_power_case().ok().copied();

    let mut report = VerificationReport {
        n,
        lcm: params.lcm().to_string(),
        prime_power_case: pp.is_some(),
        p: pp.map(|pp| pp.prime),
        k: pp.map(|pp| pp.exponent),
        m: pp.map(|pp| pp.cofactor),
        generator_count: set.len(),
        theorem_holds: group_order == expected_order,
        group_order: group_order.to_string(),
        expected_order: expected_order.to_string(),
        six_transitive: None,
        bridge_summary: Vec::new(),
        lemmas: None,
        timings_ms: BTreeMap::new(),
    };
    if lemmas && pp.is_some() && n > 3 {
        report.bridge_summary = timed(&mut timings, "bridges", || bridges::all_bridges(&params))?;
        bridges::check_single_log_uniqueness(&report.bridge_summary)?;
        let pier_exclusions = timed(&mut timings, "pier_exclusions", || {
            let es = bridges::exceptional_set(&params)?;
            bridges::pier_exclusions(&params, &es)
        })?;
        let delta = [gens::PUNCTURE_RESIDUE];
        let punctured_bridges = timed(&mut timings, "punctured_bridges", || bridges::punctured_bridge_check(&params, &delta))?;
        let stabilizer_orbit = timed(&mut timings, "stabilizer_orbit", || bridges::stabilizer_orbit(&params, &delta))?;
        let combined = gens::combined_generators(&params)?;
        report.six_transitive = Some(timed(&mut timings, "six_transitivity", || bsgs::is_k_transitive(&combined, 6))?);
        report.lemmas = Some(LemmaReport {
            pier_exclusions,
            punctured_bridges,
            stabilizer_orbit,
            combined_generator_count: combined.len(),
        });
    }
    report.timings_ms = timings;
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct BridgesReport {
    pub n: u32,
    pub bridges: Vec<BridgeReport>,
    pub left_single_log: usize,
    pub right_single_log: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pier_exclusions: Option<PierExclusionReport>,
}

pub fn cmd_bridges(n: u32) -> Result<BridgesReport> {
    let params = Parameters::new(n)?;
    let reports = bridges::all_bridges(&params)?;
    let (left, right) = bridges::check_single_log_uniqueness(&reports)?;
    let pier_exclusions = if n > 3 {
        let es = bridges::exceptional_set(&params)?;
        Some(bridges::pier_exclusions(&params, &es)?)
    } else {
        None
    };
    Ok(BridgesReport { n, bridges: reports, left_single_log: left, right_single_log: right, pier_exclusions })
}

#[derive(Debug, Clone, Serialize)]
pub struct DecomposeReport {
    pub n: u32,
    pub degree: usize,
    pub permutation: String,
    pub group_order: String,
    /// Letters in the expanded word over the original generators.
    pub length: String,
    /// Absent when the word is longer than the expansion limit.
    pub word: Option<String>,
    pub verified: bool,
}

pub fn cmd_decompose(n: u32, text: &str, force: bool) -> Result<DecomposeReport> {
    guard_n(n, force)?;
    let params = Parameters::new(n)?;
    let degree = degree_of(&params)?;
    let g = Permutation::parse(text, degree)?;
    let set = gens::ct_family_generators(n, degree)?;
    let chain = bsgs::build_chain(&set);
    let compact = chain.decompose_compact(&g)?;
    let (word, verified) = match chain.expand(&compact, bsgs::DEFAULT_EXPANSION_LIMIT) {
        Ok(word) => {
            let ok = crate::perm::evaluate(&word, &set)? == g;
            (Some(word.display_with(&set)), ok)
        }
        Err(Error::WordTooLong { .. }) => (None, chain.evaluate_compact(&compact, &set)? == g),
        Err(e) => return Err(e),
    };
    Ok(DecomposeReport {
        n,
        degree,
        permutation: g.to_string(),
        group_order: chain.order().to_string(),
        length: chain.word_length(&compact).to_string(),
        word,
        verified,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConnectReport {
    pub n: u32,
    pub alpha: u64,
    pub beta: u64,
    pub length: usize,
    pub word: String,
    pub verified: bool,
}

pub fn cmd_connect(n: u32, alpha: u64, beta: u64) -> Result<ConnectReport> {
    let params = Parameters::new(n)?;
    let word = bridges::connect(&params, alpha, beta)?;
    let set = gens::combined_generators(&params)?;
    let image = word.apply_to_point(&set, alpha as usize)?;
    Ok(ConnectReport {
        n,
        alpha,
        beta,
        length: word.len(),
        word: word.display_with(&set),
        verified: image as u64 == beta,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub n: u32,
    pub degree: usize,
    pub cap: usize,
    pub capped: bool,
    pub elements_found: usize,
    pub bfs_order: Option<String>,
    pub bsgs_order: String,
    pub orders_agree: Option<bool>,
    pub max_transitivity: Option<usize>,
}

pub fn cmd_oracle(n: u32, cap: usize, force: bool) -> Result<OracleReport> {
    guard_n(n, force)?;
    let params = Parameters::new(n)?;
    let degree = degree_of(&params)?;
    let worst_case = cap.saturating_mul(degree).saturating_mul(std::mem::size_of::<u32>());
    if worst_case > ORACLE_MEMORY_BUDGET && !force {
        return Err(Error::InvalidArgument(format!(
            "enumerating up to {cap} elements of degree {degree} may need {} MiB; lower --cap or pass --force",
            worst_case >> 20
        )));
    }
    let set = gens::ct_family_generators(n, degree)?;
    let group = oracle::enumerate(&set, cap)?;
    let bsgs_order = bsgs::build_chain(&set).order();
    let bfs_order = group.order().ok();
    Ok(OracleReport {
        n,
        degree,
        cap,
        capped: group.is_capped(),
        elements_found: group.len(),
        orders_agree: bfs_order.as_ref().map(|o| *o == bsgs_order),
        bfs_order: bfs_order.map(|o| o.to_string()),
        bsgs_order: bsgs_order.to_string(),
        max_transitivity: if group.is_capped() { None } else { Some(oracle::max_transitivity(&group)?) },
    })
}

fn emit<T: Serialize>(out: &mut dyn Write, json: bool, value: &T, human: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("cannot write output: {e}"));
    if json {
        let text = serde_json::to_string_pretty(value).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        writeln!(out, "{text}").map_err(io)
    } else {
        human(out).map_err(io)
    }
}

fn kind_name(kind: BridgeKind) -> &'static str {
    match kind {
        BridgeKind::Interior => "interior",
        BridgeKind::LeftSingleLog => "left_single_log",
        BridgeKind::RightSingleLog => "right_single_log",
    }
}

fn write_bridge_table(out: &mut dyn Write, reports: &[BridgeReport]) -> std::io::Result<()> {
    writeln!(out, "{:>4} {:>8} {:>17} {:>6} {:>6} {:>8}", "i", "j", "kind", "left", "right", "pier")?;
    for r in reports {
        let pier = r.pier.map_or_else(|| "-".to_string(), |p| p.to_string());
        writeln!(out, "{:>4} {:>8} {:>17} {:>6} {:>6} {:>8}", r.i, r.j, kind_name(r.kind), r.overlap_left, r.overlap_right, pier)?;
    }
    Ok(())
}

/// Runs one subcommand, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status> {
    match &cli.command {
        &Command::Verify { n, lemmas, json, force } => {
            let report = cmd_verify(n, lemmas, force)?;
            emit(out, json, &report, |out| {
                writeln!(out, "n               {}", report.n)?;
                writeln!(out, "N               {}", report.lcm)?;
                if let (Some(p), Some(k), Some(m)) = (report.p, report.k, report.m) {
                    writeln!(out, "n + 1           {p}^{k}, M = {m}")?;
                }
                writeln!(out, "generators      {}", report.generator_count)?;
                writeln!(out, "group order     {}", report.group_order)?;
                writeln!(out, "N!              {}", report.expected_order)?;
                writeln!(out, "order = N!      {}", report.theorem_holds)?;
                if let Some(lemmas) = &report.lemmas {
                    write_bridge_table(out, &report.bridge_summary)?;
                    writeln!(out, "excluded E point {:?}", lemmas.pier_exclusions.excluded)?;
                    writeln!(out, "punctured bridges {}", lemmas.punctured_bridges)?;
                    writeln!(
                        out,
                        "stabilizer orbit {} of {} points, transitive {}",
                        lemmas.stabilizer_orbit.orbit_size,
                        lemmas.stabilizer_orbit.orbit_size + lemmas.stabilizer_orbit.fixed_points.len(),
                        lemmas.stabilizer_orbit.transitive
                    )?;
                }
                if let Some(six) = report.six_transitive {
                    writeln!(out, "6-transitive    {six}")?;
                }
                for (phase, ms) in &report.timings_ms {
                    writeln!(out, "time {phase:<18} {ms} ms")?;
                }
                Ok(())
            })?;
            Ok(report.status())
        }
        &Command::Bridges { n, json } => {
            let report = cmd_bridges(n)?;
            emit(out, json, &report, |out| {
                write_bridge_table(out, &report.bridges)?;
                writeln!(out, "single-log bridges: {} left, {} right", report.left_single_log, report.right_single_log)?;
                if let Some(px) = &report.pier_exclusions {
                    writeln!(out, "left pier hits from E: {}", px.left_hits.len())?;
                    writeln!(out, "right pier hits from E: {}", px.right_hits.len())?;
                    match px.excluded {
                        Some(x) => writeln!(out, "excluded E point: {x}")?,
                        None => writeln!(out, "excluded E point: none")?,
                    }
                }
                Ok(())
            })?;
            Ok(Status::Pass)
        }
        Command::Decompose { n, perm, json, force } => {
            let report = cmd_decompose(*n, perm, *force)?;
            emit(out, *json, &report, |out| {
                writeln!(out, "permutation  {}", report.permutation)?;
                writeln!(out, "length       {}", report.length)?;
                match &report.word {
                    Some(word) => writeln!(out, "word         {word}")?,
                    None => writeln!(out, "word         (too long to expand)")?,
                }
                writeln!(out, "check        {}", if report.verified { "OK" } else { "FAILED" })
            })?;
            Ok(Status::from_check(report.verified, true))
        }
        &Command::Connect { n, alpha, beta, json } => {
            let report = cmd_connect(n, alpha, beta)?;
            emit(out, json, &report, |out| {
                writeln!(out, "{} -> {} in {} letters", report.alpha, report.beta, report.length)?;
                writeln!(out, "word   {}", report.word)?;
                writeln!(out, "check  {}", if report.verified { "OK" } else { "FAILED" })
            })?;
            Ok(Status::from_check(report.verified, true))
        }
        &Command::Oracle { n, cap, json, force } => {
            let report = cmd_oracle(n, cap, force)?;
            emit(out, json, &report, |out| {
                writeln!(out, "degree           {}", report.degree)?;
                writeln!(out, "cap              {}", report.cap)?;
                match &report.bfs_order {
                    Some(order) => writeln!(out, "BFS order        {order}")?,
                    None => writeln!(out, "BFS order        capped after {} elements", report.elements_found)?,
                }
                writeln!(out, "BSGS order       {}", report.bsgs_order)?;
                if let Some(k) = report.max_transitivity {
                    writeln!(out, "max transitivity {k}")?;
                }
                Ok(())
            })?;
            Ok(Status::from_check(report.orders_agree != Some(false), true))
        }
    }
}
