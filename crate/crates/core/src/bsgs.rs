//! Stabilizer chains (base and strong generating set).
//!
//! Every strong generator carries a node of a straight-line program over the
//! original generators, and each level keeps a Schreier vector whose edges
//! are strong generators. A transversal element is therefore a word over the
//! original generators, and [`StabilizerChain::decompose`] emits one without
//! a second pass.
//!
//! Construction runs in two phases. The first sifts a seeded pseudo-random
//! walk through the partial chain and stops as soon as the product of the
//! basic orbit lengths equals a known upper bound on the group order
//! (`degree!`, or `degree!/2` when every generator is even). That product is
//! always a lower bound on the order of the group generated, so reaching the
//! bound certifies the chain exactly. If the walk stalls first, the second
//! phase runs the deterministic Schreier–Sims verification over every
//! Schreier generator in a fixed order. The seed only affects running time
//! and the particular words produced, never the answers.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gens::GeneratorSet;
use crate::perm::{Letter, Parity, Permutation, Word};

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

/// Default limit on the number of letters [`StabilizerChain::decompose`] expands.
pub const DEFAULT_EXPANSION_LIMIT: usize = 1 << 26;

#[derive(Debug, Clone)]
enum SlpNode {
    Generator(usize),
    Product(Vec<(usize, bool)>),
}

/// Straight-line program over the original generators.
#[derive(Debug, Clone, Default)]
struct Slp {
    nodes: Vec<SlpNode>,
    lengths: Vec<BigUint>,
}

impl Slp {
    fn generator(&mut self, i: usize) -> usize {
        self.nodes.push(SlpNode::Generator(i));
        self.lengths.push(BigUint::one());
        self.nodes.len() - 1
    }

    fn product(&mut self, parts: Vec<(usize, bool)>) -> usize {
        let len = parts.iter().map(|&(n, _)| &self.lengths[n]).sum();
        self.nodes.push(SlpNode::Product(parts));
        self.lengths.push(len);
        self.nodes.len() - 1
    }

    fn expand_into(&self, node: usize, inverted: bool, out: &mut Vec<Letter>, limit: usize) -> bool {
        let mut stack = vec![(node, inverted)];
        while let Some((node, inverted)) = stack.pop() {
            match &self.nodes[node] {
                SlpNode::Generator(i) => {
                    if out.len() >= limit {
                        return false;
                    }
                    out.push(Letter { generator: *i, inverted });
                }
                SlpNode::Product(parts) => {
                    // Pushed in reverse so they pop in reading order.
                    if inverted {
                        for &(child, inv) in parts.iter() {
                            stack.push((child, !inv));
                        }
                    } else {
                        for &(child, inv) in parts.iter().rev() {
                            stack.push((child, inv));
                        }
                    }
                }
            }
        }
        true
    }

    /// Evaluates every node from the original generators.
    fn evaluate_all(&self, gens: &GeneratorSet, upto: usize) -> Vec<Permutation> {
        let mut values: Vec<Permutation> = Vec::with_capacity(upto);
        for node in &self.nodes[..upto] {
            let value = match node {
                SlpNode::Generator(i) => gens.permutation(*i),
                SlpNode::Product(parts) => {
                    let mut acc = Permutation::identity(gens.degree());
                    for &(child, inv) in parts {
                        if inv {
                            acc.mul_assign_unchecked(&values[child].inverse());
                        } else {
                            acc.mul_assign_unchecked(&values[child]);
                        }
                    }
                    acc
                }
            };
            values.push(value);
        }
        values
    }
}

#[derive(Debug, Clone)]
struct StrongGenerator {
    perm: Permutation,
    inv: Permutation,
    node: usize,
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// Strong generator labelling the edge into each orbit point.
    tree: Vec<u32>,
}

/// A base and strong generating set with word-valued transversals.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    source_len: usize,
    strong: Vec<StrongGenerator>,
    levels: Vec<Level>,
    slp: Slp,
    /// SLP leaf for each original generator, created on first use.
    leaves: Vec<u32>,
    originals_included: bool,
}

/// A sifted group element recorded as strong generators along transversal paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactWord {
    strong: Vec<usize>,
}

impl CompactWord {
    /// Number of transversal steps (strong generator letters).
    pub fn strong_len(&self) -> usize {
        self.strong.len()
    }
}

struct Sift {
    residue: Permutation,
    drop: usize,
    /// Strong generators applied inverted, in order.
    path: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ChainOptions {
    pub seed: u64,
    /// Consecutive trivial sifts before switching to deterministic verification.
    pub stall_limit: usize,
    /// Letters appended to the running random element per sample.
    pub step_len: usize,
    /// Generator sets up to this size become strong generators up front.
    pub original_limit: usize,
    /// Skip the random phase entirely.
    pub deterministic_only: bool,
    /// Degrees up to this skip the random phase; sifted words stay short.
    pub deterministic_degree: usize,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions { seed: 0x5eed_c7a5, stall_limit: 48, step_len: 8, original_limit: 4096, deterministic_only: false, deterministic_degree: 64 }
    }
}

/// `degree!`, or `degree!/2` when every generator is even.
pub fn order_upper_bound(gens: &GeneratorSet) -> BigUint {
    let degree = gens.degree();
    let factorial: BigUint = (2..=degree as u64).map(BigUint::from).product();
    let all_even = (0..gens.len()).all(|i| generator_parity(gens, i) == Parity::Even);
    if all_even && degree >= 2 {
        factorial / 2u32
    } else {
        factorial
    }
}

fn generator_parity(gens: &GeneratorSet, i: usize) -> Parity {
    match gens.class_transposition(i) {
        Some((_, ct)) if (gens.degree() as u64 / ct.modulus()) % 2 == 1 => Parity::Odd,
        Some(_) => Parity::Even,
        None => gens.permutation(i).parity(),
    }
}

struct Builder<'a> {
    gens: &'a GeneratorSet,
    chain: StabilizerChain,
    bound: BigUint,
    log_bound: f64,
    options: ChainOptions,
}

impl<'a> Builder<'a> {
    fn new(gens: &'a GeneratorSet, options: ChainOptions) -> Self {
        let bound = order_upper_bound(gens);
        let log_bound = log_biguint(&bound);
        let mut chain = StabilizerChain {
            degree: gens.degree(),
            source_len: gens.len(),
            strong: Vec::new(),
            levels: Vec::new(),
            slp: Slp::default(),
            leaves: vec![NONE; gens.len()],
            originals_included: false,
        };
        if gens.len() <= options.original_limit || options.deterministic_only {
            chain.install_originals(gens);
        }
        Builder { gens, chain, bound, log_bound, options }
    }

    fn bound_reached(&self) -> bool {
        let log: f64 = self.chain.levels.iter().map(|l| (l.orbit.len() as f64).ln()).sum();
        log + 1e-6 >= self.log_bound && self.chain.order() == self.bound
    }

    /// Sifts random elements until `stop`, the order bound, or a stall.
    fn random_phase(&mut self, stop: &dyn Fn(&StabilizerChain) -> bool) -> bool {
        if self.gens.is_empty() || self.chain.degree == 0 {
            return false;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.options.seed);
        let warmup = 2 * self.chain.degree.max(8);
        let (mut x, mut node) = self.random_walk(&mut rng, Permutation::identity(self.chain.degree), None, warmup);
        let mut stall = 0;
        loop {
            if stop(&self.chain) || self.bound_reached() {
                return true;
            }
            if stall >= self.options.stall_limit {
                return false;
            }
            let sift = self.chain.sift(&x, 0);
            if sift.residue.is_identity() && sift.drop == self.chain.levels.len() {
                stall += 1;
            } else {
                stall = 0;
                let mut parts = vec![(node, false)];
                parts.extend(sift.path.iter().map(|&s| (self.chain.strong[s].node, true)));
                let residue_node = self.chain.slp.product(parts);
                self.chain.add_residue(sift.residue, residue_node, sift.drop);
            }
            let step = self.options.step_len;
            (x, node) = self.random_walk(&mut rng, x, Some(node), step);
        }
    }

    fn random_walk(&mut self, rng: &mut ChaCha8Rng, mut x: Permutation, prev: Option<usize>, len: usize) -> (Permutation, usize) {
        let mut parts = Vec::with_capacity(len + 1);
        if let Some(prev) = prev {
            parts.push((prev, false));
        }
        for _ in 0..len {
            let i = rng.gen_range(0..self.gens.len());
            let inverted = self.gens.class_transposition(i).is_none() && rng.gen_bool(0.5);
            self.gens.right_multiply(&mut x, i, inverted);
            let leaf = self.chain.generator_node(i);
            parts.push((leaf, inverted));
        }
        let node = self.chain.slp.product(parts);
        (x, node)
    }

    /// Deterministic Schreier–Sims completion.
    fn deterministic_phase(&mut self) {
        if !self.chain.originals_included {
            for i in 0..self.gens.len() {
                let g = self.gens.permutation(i);
                let sift = self.chain.sift(&g, 0);
                if !(sift.residue.is_identity() && sift.drop == self.chain.levels.len()) {
                    let leaf = self.chain.generator_node(i);
                    let mut parts = vec![(leaf, false)];
                    parts.extend(sift.path.iter().map(|&s| (self.chain.strong[s].node, true)));
                    let node = self.chain.slp.product(parts);
                    self.chain.add_residue(sift.residue, node, sift.drop);
                }
            }
            self.chain.originals_included = true;
        }
        let mut level = self.chain.levels.len() as isize - 1;
        while level >= 0 {
            if self.bound_reached() {
                return;
            }
            match self.chain.verify_level(level as usize) {
                Some(restart) => level = restart as isize,
                None => level -= 1,
            }
        }
    }
}

fn log_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        x.to_f64().unwrap_or(f64::INFINITY).ln()
    } else {
        let shift = bits - 64;
        ((x >> shift).to_f64().unwrap()).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Builds a complete stabilizer chain with the default options.
pub fn build_chain(gens: &GeneratorSet) -> StabilizerChain {
    build_chain_with(gens, ChainOptions::default())
}

pub fn build_chain_with(gens: &GeneratorSet, mut options: ChainOptions) -> StabilizerChain {
    options.deterministic_only |= gens.degree() <= options.deterministic_degree;
    let deterministic_only = options.deterministic_only;
    let mut builder = Builder::new(gens, options);
    if deterministic_only || !builder.random_phase(&|_| false) {
        builder.deterministic_phase();
    }
    builder.chain
}

/// Deterministic Schreier–Sims only, no random phase.
pub fn build_chain_deterministic(gens: &GeneratorSet) -> StabilizerChain {
    build_chain_with(gens, ChainOptions { deterministic_only: true, ..ChainOptions::default() })
}

impl StabilizerChain {
    fn generator_node(&mut self, i: usize) -> usize {
        if self.leaves[i] == NONE {
            self.leaves[i] = self.slp.generator(i) as u32;
        }
        self.leaves[i] as usize
    }

    fn install_originals(&mut self, gens: &GeneratorSet) {
        self.originals_included = true;
        for i in 0..gens.len() {
            let perm = gens.permutation(i);
            if perm.is_identity() {
                continue;
            }
            let node = self.generator_node(i);
            let inv = perm.inverse();
            self.strong.push(StrongGenerator { perm, inv, node });
        }
        let mut current: Vec<usize> = (0..self.strong.len()).collect();
        let mut used = vec![false; self.degree];
        while !current.is_empty() {
            let base = current
                .iter()
                .filter_map(|&s| self.strong[s].perm.support().find(|&x| !used[x]))
                .min()
                .expect("nontrivial generators fixing the base move some new point");
            used[base] = true;
            let level = self.make_level(base, current.clone());
            current.retain(|&s| self.strong[s].perm.apply(base) == base);
            self.levels.push(level);
        }
    }

    fn make_level(&self, base: usize, gens: Vec<usize>) -> Level {
        let mut level = Level { base, gens, orbit: vec![base], tree: vec![NONE; self.degree] };
        level.tree[base] = ROOT;
        self.explore(&mut level, 0);
        level
    }

    /// BFS from `level.orbit[start..]` with all level generators.
    fn explore(&self, level: &mut Level, start: usize) {
        let mut queue: VecDeque<usize> = level.orbit[start..].iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &s in &level.gens {
                let y = self.strong[s].perm.apply(x);
                if level.tree[y] == NONE {
                    level.tree[y] = s as u32;
                    level.orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
    }

    fn add_residue(&mut self, residue: Permutation, node: usize, drop: usize) {
        debug_assert!(!residue.is_identity());
        let inv = residue.inverse();
        let id = self.strong.len();
        let moved = residue.support().next();
        self.strong.push(StrongGenerator { perm: residue, inv, node });
        if drop == self.levels.len() {
            let base = moved.expect("nontrivial residue");
            let prev = self.levels.last();
            let gens: Vec<usize> = match prev {
                Some(prev) => prev
                    .gens
                    .iter()
                    .copied()
                    .filter(|&s| self.strong[s].perm.apply(prev.base) == prev.base)
                    .collect(),
                None => Vec::new(),
            };
            let level = self.make_level(base, gens);
            self.levels.push(level);
        }
        let degree = self.degree;
        for l in 0..=drop {
            let mut level = std::mem::replace(&mut self.levels[l], Level { base: 0, gens: Vec::new(), orbit: Vec::new(), tree: Vec::new() });
            level.gens.push(id);
            if level.orbit.len() < degree - l {
                let start = level.orbit.len();
                let perm = &self.strong[id].perm;
                for idx in 0..start {
                    let y = perm.apply(level.orbit[idx]);
                    if level.tree[y] == NONE {
                        level.tree[y] = id as u32;
                        level.orbit.push(y);
                    }
                }
                if level.orbit.len() > start {
                    self.explore(&mut level, start);
                }
            }
            self.levels[l] = level;
        }
    }

    /// Sifts `g` from level `from`.
    fn sift(&self, g: &Permutation, from: usize) -> Sift {
        let mut g = g.clone();
        let mut path = Vec::new();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let mut beta = g.apply(level.base);
            if level.tree[beta] == NONE {
                return Sift { residue: g, drop: l, path };
            }
            while level.tree[beta] != ROOT {
                let s = level.tree[beta] as usize;
                g.mul_assign_unchecked(&self.strong[s].inv);
                path.push(s);
                beta = self.strong[s].inv.apply(beta);
            }
        }
        Sift { residue: g, drop: self.levels.len(), path }
    }

    /// Strong generators along the tree path from the base to `point`, in product order.
    fn transversal_path(&self, level: usize, mut point: usize) -> Vec<usize> {
        let level = &self.levels[level];
        let mut path = Vec::new();
        while level.tree[point] != ROOT {
            let s = level.tree[point] as usize;
            path.push(s);
            point = self.strong[s].inv.apply(point);
        }
        path.reverse();
        path
    }

    fn path_product(&self, path: &[usize]) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for &s in path {
            acc.mul_assign_unchecked(&self.strong[s].perm);
        }
        acc
    }

    /// Checks every Schreier generator of `level`; returns the level to
    /// resume from after a new strong generator was added.
    fn verify_level(&mut self, level: usize) -> Option<usize> {
        let mut idx = 0;
        while idx < self.levels[level].orbit.len() {
            let beta = self.levels[level].orbit[idx];
            let u_beta_path = self.transversal_path(level, beta);
            let u_beta = self.path_product(&u_beta_path);
            let mut gi = 0;
            while gi < self.levels[level].gens.len() {
                let s = self.levels[level].gens[gi];
                gi += 1;
                let gamma = self.strong[s].perm.apply(beta);
                if self.levels[level].tree[gamma] == s as u32 && self.strong[s].inv.apply(gamma) == beta {
                    continue;
                }
                let mut h = u_beta.compose_unchecked(&self.strong[s].perm);
                let u_gamma_path = self.transversal_path(level, gamma);
                for &t in u_gamma_path.iter().rev() {
                    h.mul_assign_unchecked(&self.strong[t].inv);
                }
                debug_assert_eq!(h.apply(self.levels[level].base), self.levels[level].base);
                let sift = self.sift(&h, level + 1);
                if sift.residue.is_identity() && sift.drop == self.levels.len() {
                    continue;
                }
                let mut parts: Vec<(usize, bool)> = u_beta_path.iter().map(|&t| (self.strong[t].node, false)).collect();
                parts.push((self.strong[s].node, false));
                parts.extend(u_gamma_path.iter().rev().map(|&t| (self.strong[t].node, true)));
                parts.extend(sift.path.iter().map(|&t| (self.strong[t].node, true)));
                let node = self.slp.product(parts);
                let drop = sift.drop;
                self.add_residue(sift.residue, node, drop);
                return Some(drop);
            }
            idx += 1;
        }
        None
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// The basic orbit at `level`, in discovery order.
    pub fn basic_orbit(&self, level: usize) -> &[usize] {
        &self.levels[level].orbit
    }

    pub fn strong_generators(&self) -> impl Iterator<Item = &Permutation> {
        self.strong.iter().map(|s| &s.perm)
    }

    /// Strong generators of `level`, i.e. those fixing the earlier base points.
    pub fn level_generators(&self, level: usize) -> impl Iterator<Item = &Permutation> {
        self.levels[level].gens.iter().map(|&s| &self.strong[s].perm)
    }

    /// Product of the basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels.iter().map(|l| BigUint::from(l.orbit.len())).product()
    }

    fn check_degree(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: g.degree() });
        }
        Ok(())
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.check_degree(g)?;
        let sift = self.sift(g, 0);
        Ok(sift.residue.is_identity() && sift.drop == self.levels.len())
    }

    /// Sifts `g` and returns the transversal steps whose product is `g`.
    pub fn decompose_compact(&self, g: &Permutation) -> Result<CompactWord> {
        self.check_degree(g)?;
        let sift = self.sift(g, 0);
        if !(sift.residue.is_identity() && sift.drop == self.levels.len()) {
            return Err(Error::NotMember { residue: sift.residue });
        }
        let mut strong = sift.path;
        strong.reverse();
        Ok(CompactWord { strong })
    }

    /// Number of letters over the original generators.
    pub fn word_length(&self, word: &CompactWord) -> BigUint {
        word.strong.iter().map(|&s| &self.slp.lengths[self.strong[s].node]).sum()
    }

    /// Expands a compact word into letters over the original generators.
    pub fn expand(&self, word: &CompactWord, limit: usize) -> Result<Word> {
        let mut letters = Vec::new();
        for &s in &word.strong {
            if !self.slp.expand_into(self.strong[s].node, false, &mut letters, limit) {
                return Err(Error::WordTooLong { length: self.word_length(word).to_string(), limit });
            }
        }
        Ok(Word::from_letters(letters))
    }

    /// A word over the original generators evaluating to `g`.
    pub fn decompose(&self, g: &Permutation) -> Result<Word> {
        self.decompose_with_limit(g, DEFAULT_EXPANSION_LIMIT)
    }

    pub fn decompose_with_limit(&self, g: &Permutation, limit: usize) -> Result<Word> {
        let compact = self.decompose_compact(g)?;
        self.expand(&compact, limit)
    }

    /// The transversal element of `level` carrying the base point to `point`.
    pub fn transversal_word(&self, level: usize, point: usize) -> Option<Result<Word>> {
        let lvl = self.levels.get(level)?;
        if point >= self.degree || lvl.tree[point] == NONE {
            return None;
        }
        let word = CompactWord { strong: self.transversal_path(level, point) };
        Some(self.expand(&word, DEFAULT_EXPANSION_LIMIT))
    }

    /// Re-evaluates a compact word from the original generators through the
    /// straight-line program, independently of the stored strong generators.
    pub fn evaluate_compact(&self, word: &CompactWord, gens: &GeneratorSet) -> Result<Permutation> {
        if gens.len() != self.source_len || gens.degree() != self.degree {
            return Err(Error::InvalidArgument("generator set does not match the chain".into()));
        }
        let upto = word.strong.iter().map(|&s| self.strong[s].node + 1).max().unwrap_or(0);
        let values = self.slp.evaluate_all(gens, upto);
        let mut acc = Permutation::identity(self.degree);
        for &s in &word.strong {
            acc.mul_assign_unchecked(&values[self.strong[s].node]);
        }
        Ok(acc)
    }

    /// Checks that every strong generator equals the evaluation of its word.
    pub fn strong_words_consistent(&self, gens: &GeneratorSet) -> bool {
        let values = self.slp.evaluate_all(gens, self.slp.nodes.len());
        self.strong.iter().all(|s| values[s.node] == s.perm)
    }

    /// Structural invariants: level generators fix earlier base points and
    /// each orbit point is reached by its transversal element.
    pub fn validate(&self) -> bool {
        for (l, level) in self.levels.iter().enumerate() {
            for &s in &level.gens {
                if self.levels[..l].iter().any(|e| self.strong[s].perm.apply(e.base) != e.base) {
                    return false;
                }
            }
            for &x in &level.orbit {
                let u = self.path_product(&self.transversal_path(l, x));
                if u.apply(level.base) != x {
                    return false;
                }
            }
        }
        true
    }

    /// Size of the orbit of the `level`-th base point under the stabilizer of
    /// the earlier ones; 1 beyond the end of the base.
    fn level_orbit_len(&self, level: usize) -> usize {
        self.levels.get(level).map_or(1, |l| l.orbit.len())
    }

    fn prefix_transitive(&self, k: usize) -> bool {
        (0..k).all(|l| self.level_orbit_len(l) == self.degree - l)
    }
}

/// Orbit of a point with a witness word per orbit point.
#[derive(Debug, Clone)]
pub struct Orbit {
    root: usize,
    points: Vec<usize>,
    parent: Vec<Option<(u32, u32)>>,
}

impl Orbit {
    /// Orbit points in breadth-first order, the root first.
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        x == self.root || self.parent.get(x).is_some_and(|p| p.is_some())
    }

    pub fn sorted_points(&self) -> Vec<usize> {
        let mut v = self.points.clone();
        v.sort_unstable();
        v
    }

    /// A word mapping the root to `x`.
    pub fn witness(&self, mut x: usize) -> Option<Word> {
        if !self.contains(x) {
            return None;
        }
        let mut letters = Vec::new();
        while x != self.root {
            let (prev, g) = self.parent[x].expect("orbit point");
            letters.push(Letter { generator: g as usize, inverted: false });
            x = prev as usize;
        }
        letters.reverse();
        Some(Word::from_letters(letters))
    }
}

/// Breadth-first orbit of `x`, generators tried in index order.
pub fn orbit(gens: &GeneratorSet, x: usize) -> Result<Orbit> {
    if x >= gens.degree() {
        return Err(Error::PointOutOfRange { point: x as u64, degree: gens.degree() as u64 });
    }
    let mut parent = vec![None; gens.degree()];
    let mut seen = vec![false; gens.degree()];
    seen[x] = true;
    let mut points = vec![x];
    let mut head = 0;
    while head < points.len() {
        let y = points[head];
        head += 1;
        for i in 0..gens.len() {
            let z = gens.apply(i, y);
            if !seen[z] {
                seen[z] = true;
                parent[z] = Some((y as u32, i as u32));
                points.push(z);
            }
        }
    }
    Ok(Orbit { root: x, points, parent })
}

/// k-transitivity by successive point stabilizers: the group is transitive
/// and the stabilizer of the first `i` base points is transitive on the
/// remaining `degree - i` points for every `i < k`.
///
/// Orbits of a partial chain are contained in the true basic orbits, so a
/// full orbit at each of the first `k` levels certifies the answer before
/// the chain is complete. A negative answer always comes from a complete chain.
pub fn is_k_transitive(gens: &GeneratorSet, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if k > gens.degree() {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds the degree {}", gens.degree())));
    }
    let mut builder = Builder::new(gens, ChainOptions::default());
    let certified = |chain: &StabilizerChain| chain.prefix_transitive(k);
    if certified(&builder.chain) {
        return Ok(true);
    }
    if !builder.random_phase(&certified) {
        builder.deterministic_phase();
    }
    Ok(builder.chain.prefix_transitive(k))
}

/// Same criterion read off an already complete chain.
pub fn chain_is_k_transitive(chain: &StabilizerChain, k: usize) -> Result<bool> {
    if k == 0 || k > chain.degree {
        return Err(Error::InvalidArgument(format!("k = {k} must lie in 1..={}", chain.degree)));
    }
    Ok(chain.prefix_transitive(k))
}
