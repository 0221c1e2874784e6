//! Bridges between consecutive `N`-blocks of `[0, N p)`, single-log
//! bridges and their piers, the exceptional set `E`, and the block-by-block
//! walk that connects any two points with class transpositions.
//!
//! All sets are intervals inside `[0, N p)` and are handled with interval
//! arithmetic; nothing here enumerates `Z`.

use std::ops::Range;

use serde::Serialize;

use crate::bsgs;
use crate::error::{Error, Result};
use crate::gens::{self, PUNCTURE_RESIDUE};
use crate::perm::Word;
use crate::residue::{block, Parameters, PrimePowerCase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BridgeKind {
    Interior,
    LeftSingleLog,
    RightSingleLog,
}

/// The `p^k`-block `j` straddling the boundary between `N`-blocks `i` and `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub i: u64,
    pub j: u64,
    pub kind: BridgeKind,
    pub overlap_left: u64,
    pub overlap_right: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pier: Option<u64>,
}

fn overlap(a: &Range<u64>, b: &Range<u64>) -> u64 {
    a.end.min(b.end).saturating_sub(a.start.max(b.start))
}

fn require_boundary(pp: &PrimePowerCase, i: u64) -> Result<()> {
    if i + 1 >= pp.prime {
        return Err(Error::InvalidArgument(format!(
            "boundary index {i} out of range: there are {} boundaries between {} blocks of size {}",
            pp.prime - 1,
            pp.prime,
            pp.lcm
        )));
    }
    Ok(())
}

/// The bridge of boundary `i`: the `p^k`-block containing `(i+1)N - 1`.
///
/// Since `p^k` divides neither `(i+1)N` nor anything else that would put a
/// block boundary there, this block also contains `(i+1)N`; the overlaps
/// are recomputed by interval intersection and checked.
pub fn find_bridge(params: &Parameters, i: u64) -> Result<BridgeReport> {
    let pp = params.prime_power_case()?;
    require_boundary(pp, i)?;
    let boundary = (i + 1) * pp.lcm;
    let j = (boundary - 1) / pp.prime_power;
    let bridge = block(pp.prime_power, j);
    let overlap_left = overlap(&bridge, &block(pp.lcm, i));
    let overlap_right = overlap(&bridge, &block(pp.lcm, i + 1));
    if overlap_left == 0 || overlap_right == 0 || overlap_left + overlap_right != pp.prime_power {
        return Err(Error::Falsified(format!(
            "n = {}: block {j} of size {} is not a bridge of boundary {i} (overlaps {overlap_left}, {overlap_right})",
            params.n(),
            pp.prime_power
        )));
    }
    let (kind, pier) = if overlap_left == 1 {
        let pier = j * pp.prime_power;
        if pier != boundary - 1 {
            return Err(Error::Falsified(format!("left pier {pier} differs from (i+1)N - 1 = {}", boundary - 1)));
        }
        (BridgeKind::LeftSingleLog, Some(pier))
    } else if overlap_right == 1 {
        let pier = (j + 1) * pp.prime_power - 1;
        if pier != boundary {
            return Err(Error::Falsified(format!("right pier {pier} differs from (i+1)N = {boundary}")));
        }
        (BridgeKind::RightSingleLog, Some(pier))
    } else {
        (BridgeKind::Interior, None)
    };
    Ok(BridgeReport { i, j, kind, overlap_left, overlap_right, pier })
}

/// One report per boundary `i = 0..p-1`.
pub fn all_bridges(params: &Parameters) -> Result<Vec<BridgeReport>> {
    let pp = params.prime_power_case()?;
    (0..pp.prime - 1).map(|i| find_bridge(params, i)).collect()
}

/// Counts `(left, right)` single-log bridges and fails if either exceeds one.
pub fn check_single_log_uniqueness(reports: &[BridgeReport]) -> Result<(usize, usize)> {
    let left = reports.iter().filter(|r| r.kind == BridgeKind::LeftSingleLog).count();
    let right = reports.iter().filter(|r| r.kind == BridgeKind::RightSingleLog).count();
    if left > 1 || right > 1 {
        return Err(Error::Falsified(format!("{left} left and {right} right single-log bridges")));
    }
    Ok((left, right))
}

fn left_piers(reports: &[BridgeReport]) -> impl Iterator<Item = u64> + '_ {
    reports.iter().filter(|r| r.kind == BridgeKind::LeftSingleLog).filter_map(|r| r.pier)
}

fn right_piers(reports: &[BridgeReport]) -> impl Iterator<Item = u64> + '_ {
    reports.iter().filter(|r| r.kind == BridgeKind::RightSingleLog).filter_map(|r| r.pier)
}

/// `E = {2 + a p^k : a even, 0 <= a < M}`, held implicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExceptionalSet {
    pp: PrimePowerCase,
}

/// Above this size the pairwise incongruence check is structural instead of explicit.
const EXPLICIT_CHECK_LIMIT: u64 = 1 << 20;

impl ExceptionalSet {
    pub fn len(&self) -> u64 {
        self.pp.cofactor.div_ceil(2)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `M_E`: the even residues below `M`.
    pub fn index_set(&self) -> impl Iterator<Item = u64> {
        (0..self.pp.cofactor).step_by(2)
    }

    pub fn points(&self) -> impl Iterator<Item = u64> + '_ {
        self.index_set().map(move |a| self.point(a))
    }

    pub fn point(&self, a: u64) -> u64 {
        PUNCTURE_RESIDUE + a * self.pp.prime_power
    }

    /// The index `a` with `x = 2 + a p^k`, if `x ∈ E`.
    pub fn index_of(&self, x: u64) -> Option<u64> {
        let shifted = x.checked_sub(PUNCTURE_RESIDUE)?;
        if shifted % self.pp.prime_power != 0 {
            return None;
        }
        let a = shifted / self.pp.prime_power;
        (a < self.pp.cofactor && a % 2 == 0).then_some(a)
    }

    pub fn contains(&self, x: u64) -> bool {
        self.index_of(x).is_some()
    }

    /// Whether the points are pairwise incongruent modulo `N`.
    pub fn pairwise_incongruent(&self) -> bool {
        if self.len() <= EXPLICIT_CHECK_LIMIT {
            let mut residues: Vec<u64> = self.points().map(|x| x % self.pp.lcm).collect();
            residues.sort_unstable();
            residues.windows(2).all(|w| w[0] != w[1])
        } else {
            // a p^k ≡ b p^k (mod N) iff M | (a - b) once p ∤ M and M p^(k-1) = N.
            self.pp.cofactor % self.pp.prime != 0
                && self.pp.cofactor * self.pp.prime.pow(self.pp.exponent - 1) == self.pp.lcm
        }
    }
}

/// Builds `E` and checks its invariants.
pub fn exceptional_set(params: &Parameters) -> Result<ExceptionalSet> {
    let pp = *params.prime_power_case()?;
    let es = ExceptionalSet { pp };
    if params.n() > 3 && es.len() < 6 {
        return Err(Error::Falsified(format!("|E| = {} < 6 for n = {}", es.len(), params.n())));
    }
    if !es.pairwise_incongruent() {
        return Err(Error::Falsified(format!("two points of E are congruent modulo N for n = {}", params.n())));
    }
    Ok(es)
}

/// A point `2 + a p^k + b N` that coincides with a bridge pier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PierHit {
    pub a: u64,
    pub b: u64,
    pub point: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PierExclusionReport {
    pub left_hits: Vec<PierHit>,
    pub right_hits: Vec<PierHit>,
    /// The point of `E` whose translate is the right single bridge pier, if any.
    pub excluded: Option<u64>,
}

fn require_n_above_3(params: &Parameters) -> Result<()> {
    if params.n() <= 3 {
        return Err(Error::InvalidArgument(format!("the exceptional-set machinery needs n > 3, got {}", params.n())));
    }
    Ok(())
}

/// All `(a, b)` with `a ∈ M_E`, `b < p` and `2 + a p^k + b N = pier`.
fn hits_for_pier(pp: &PrimePowerCase, pier: u64) -> Vec<PierHit> {
    (0..pp.prime)
        .filter_map(|b| {
            let rest = pier.checked_sub(PUNCTURE_RESIDUE + b * pp.lcm)?;
            let a = (rest % pp.prime_power == 0).then_some(rest / pp.prime_power)?;
            (a < pp.cofactor && a % 2 == 0).then_some(PierHit { a, b, point: pier })
        })
        .collect()
}

/// Pier hits found by scanning every `a ∈ M_E` and `b < p` literally.
pub fn scan_pier_hits(params: &Parameters, es: &ExceptionalSet) -> Result<(Vec<PierHit>, Vec<PierHit>)> {
    let pp = params.prime_power_case()?;
    let reports = all_bridges(params)?;
    let lefts: Vec<u64> = left_piers(&reports).collect();
    let rights: Vec<u64> = right_piers(&reports).collect();
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for a in es.index_set() {
        for b in 0..pp.prime {
            let point = es.point(a) + b * pp.lcm;
            if lefts.contains(&point) {
                left.push(PierHit { a, b, point });
            }
            if rights.contains(&point) {
                right.push(PierHit { a, b, point });
            }
        }
    }
    Ok((left, right))
}

/// No translate `2 + a p^k + b N` of a point of `E` is a left single bridge
/// pier, at most one `a` gives a right single bridge pier, and no point of
/// `E` is itself a pier. Any violation comes back as [`Error::Falsified`].
pub fn pier_exclusions(params: &Parameters, es: &ExceptionalSet) -> Result<PierExclusionReport> {
    require_n_above_3(params)?;
    let pp = params.prime_power_case()?;
    let reports = all_bridges(params)?;
    let (left_hits, right_hits) = if es.len() * pp.prime <= EXPLICIT_CHECK_LIMIT {
        scan_pier_hits(params, es)?
    } else {
        (
            left_piers(&reports).flat_map(|p| hits_for_pier(pp, p)).collect(),
            right_piers(&reports).flat_map(|p| hits_for_pier(pp, p)).collect(),
        )
    };
    if let Some(hit) = left_hits.first() {
        return Err(Error::Falsified(format!(
            "n = {}: 2 + {}*{} + {}*{} = {} is a left single bridge pier",
            params.n(),
            hit.a,
            pp.prime_power,
            hit.b,
            pp.lcm,
            hit.point
        )));
    }
    let mut right_indices: Vec<u64> = right_hits.iter().map(|h| h.a).collect();
    right_indices.sort_unstable();
    right_indices.dedup();
    if right_indices.len() > 1 {
        return Err(Error::Falsified(format!(
            "n = {}: several points of E translate to right piers: {right_hits:?}",
            params.n()
        )));
    }
    if let Some(p) = left_piers(&reports).chain(right_piers(&reports)).find(|&p| es.contains(p)) {
        return Err(Error::Falsified(format!("n = {}: the point {p} of E is a bridge pier", params.n())));
    }
    Ok(PierExclusionReport { excluded: right_indices.first().map(|&a| es.point(a)), left_hits, right_hits })
}

fn family_pairs(m: u64) -> u64 {
    m * (m - 1) / 2
}

/// Index of `τ_{r1(m),r2(m)}` among the lexicographic pairs of `[0, m)`.
fn pair_index(m: u64, r1: u64, r2: u64) -> u64 {
    let (r1, r2) = (r1.min(r2), r1.max(r2));
    r1 * (2 * m - r1 - 1) / 2 + (r2 - r1 - 1)
}

/// The combined generator layout used by [`connect`]: the `C(N, 2)`
/// generators of `CT_N^[p]`, then the `C(p^k, 2)` of `CT_{p^k}^[M]`.
#[derive(Debug, Clone, Copy)]
struct CombinedLayout {
    pp: PrimePowerCase,
}

impl CombinedLayout {
    fn within_n_block(&self, x: u64, y: u64) -> usize {
        debug_assert_eq!(x / self.pp.lcm, y / self.pp.lcm);
        pair_index(self.pp.lcm, x % self.pp.lcm, y % self.pp.lcm) as usize
    }

    fn within_pk_block(&self, x: u64, y: u64) -> usize {
        let m = self.pp.prime_power;
        debug_assert_eq!(x / m, y / m);
        (family_pairs(self.pp.lcm) + pair_index(m, x % m, y % m)) as usize
    }
}

/// A word over [`gens::combined_generators`] mapping `alpha` to `beta`,
/// built by walking through the bridges block by block.
pub fn connect(params: &Parameters, alpha: u64, beta: u64) -> Result<Word> {
    let pp = *params.prime_power_case()?;
    let degree = pp.extended_degree();
    for x in [alpha, beta] {
        if x >= degree {
            return Err(Error::PointOutOfRange { point: x, degree });
        }
    }
    let (s, t) = (alpha / pp.lcm, beta / pp.lcm);
    if s > t {
        return Ok(connect(params, beta, alpha)?.inverse());
    }
    let layout = CombinedLayout { pp };
    let mut word = Word::new();
    if alpha == beta {
        return Ok(word);
    }
    if s == t {
        word.push(layout.within_n_block(alpha, beta), false);
        return Ok(word);
    }
    if alpha / pp.prime_power == beta / pp.prime_power {
        word.push(layout.within_pk_block(alpha, beta), false);
        return Ok(word);
    }
    let mut x = alpha;
    for i in s..t {
        let bridge = find_bridge(params, i)?;
        let left = bridge.j * pp.prime_power..(i + 1) * pp.lcm;
        if !left.contains(&x) {
            word.push(layout.within_n_block(x, left.start), false);
            x = left.start;
        }
        let landing = (i + 1) * pp.lcm;
        word.push(layout.within_pk_block(x, landing), false);
        x = landing;
    }
    if x != beta {
        word.push(layout.within_n_block(x, beta), false);
    }
    Ok(word)
}

fn check_delta(params: &Parameters, delta: &[u64]) -> Result<ExceptionalSet> {
    let es = exceptional_set(params)?;
    let pp = params.prime_power_case()?;
    if let Some(&x) = delta.iter().find(|&&x| !es.contains(x)) {
        return Err(Error::NotInExceptionalSet(x));
    }
    let reports = all_bridges(params)?;
    for &d in delta {
        for c in 0..pp.prime {
            let translate = d + c * pp.lcm;
            if right_piers(&reports).any(|p| p == translate) {
                return Err(Error::RightPierInDelta { point: d, pier: translate });
            }
        }
    }
    Ok(es)
}

/// For every boundary, the bridge block minus its puncture still meets
/// both neighbouring `N`-blocks minus the translates of `delta mod N`.
pub fn punctured_bridge_check(params: &Parameters, delta: &[u64]) -> Result<bool> {
    check_delta(params, delta)?;
    let pp = params.prime_power_case()?;
    let delta_n = gens::reduce_mod(delta, pp.lcm);
    let usable = |x: u64, bridge_start: u64| x != bridge_start + PUNCTURE_RESIDUE && delta_n.binary_search(&(x % pp.lcm)).is_err();
    for report in all_bridges(params)? {
        let bridge = block(pp.prime_power, report.j);
        let meets = |side: Range<u64>| {
            let lo = bridge.start.max(side.start);
            let hi = bridge.end.min(side.end);
            (lo..hi).any(|x| usable(x, bridge.start))
        };
        if !meets(block(pp.lcm, report.i)) || !meets(block(pp.lcm, report.i + 1)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerOrbitReport {
    pub delta: Vec<u64>,
    pub generator_count: usize,
    pub fixed_points: Vec<u64>,
    pub start: u64,
    pub orbit_size: usize,
    pub transitive: bool,
}

/// Orbit of the smallest moved point under `<omega_N_stab(delta), omega_pk_stab2>`,
/// compared with the complement of the common fixed set.
pub fn stabilizer_orbit(params: &Parameters, delta: &[u64]) -> Result<StabilizerOrbitReport> {
    check_delta(params, delta)?;
    let set = gens::omega_n_stab(params, delta)?.concat(&gens::omega_pk_stab2(params)?)?;
    let fixed = set.common_fixed_points();
    let start = (0..set.degree()).find(|x| fixed.binary_search(x).is_err()).ok_or_else(|| {
        Error::Falsified("every point is fixed by the stabilizer generators".into())
    })?;
    let orbit = bsgs::orbit(&set, start)?;
    let complement: Vec<usize> = (0..set.degree()).filter(|x| fixed.binary_search(x).is_err()).collect();
    let transitive = orbit.sorted_points() == complement;
    Ok(StabilizerOrbitReport {
        delta: delta.to_vec(),
        generator_count: set.len(),
        fixed_points: fixed.iter().map(|&x| x as u64).collect(),
        start: start as u64,
        orbit_size: orbit.len(),
        transitive,
    })
}

/// True iff the stabilizer generators act transitively off their fixed points.
pub fn stabilizer_transitivity(params: &Parameters, delta: &[u64]) -> Result<bool> {
    Ok(stabilizer_orbit(params, delta)?.transitive)
}

/// Stabilized sets `Δ_1 ⊂ ... ⊂ Δ_5`: points of `E` in ascending order,
/// skipping the one whose translate is a right pier.
pub fn stabilizer_ladder(params: &Parameters) -> Result<Vec<Vec<u64>>> {
    require_n_above_3(params)?;
    let es = exceptional_set(params)?;
    let report = pier_exclusions(params, &es)?;
    let chosen: Vec<u64> = es.points().filter(|&x| Some(x) != report.excluded).take(5).collect();
    if chosen.len() < 5 {
        return Err(Error::Falsified(format!("fewer than five usable points in E for n = {}", params.n())));
    }
    Ok((1..=5).map(|k| chosen[..k].to_vec()).collect())
}
