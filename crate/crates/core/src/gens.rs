//! Generator families: horizontal class transpositions restricted to a
//! fundamental domain, the families `CT_m` and `CT_(n)`, their synchronous
//! copies, and the stabilizer generators `omega` of the extended domain.
//!
//! Class transposition generators are stored symbolically (modulus and the
//! two residues) and only materialized as image tables on request, so a
//! family of `C(420, 2)` generators at degree 840 stays cheap.

use std::fmt;

use crate::bridges;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::residue::Parameters;

/// Residue removed from every `p^k`-block by the stabilizer generators.
pub const PUNCTURE_RESIDUE: u64 = 2;

/// The involution swapping `r1 + j*m` and `r2 + j*m` for every `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HorizontalClassTransposition {
    modulus: u64,
    r1: u64,
    r2: u64,
}

impl HorizontalClassTransposition {
    /// Residues may be given in either order; they are stored ascending.
    pub fn new(r1: u64, r2: u64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidArgument(format!("modulus {modulus} must be at least 2")));
        }
        if r1 == r2 || r1 >= modulus || r2 >= modulus {
            return Err(Error::InvalidArgument(format!(
                "residues {r1}, {r2} must be distinct and below {modulus}"
            )));
        }
        Ok(HorizontalClassTransposition { modulus, r1: r1.min(r2), r2: r1.max(r2) })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> (u64, u64) {
        (self.r1, self.r2)
    }

    #[inline]
    pub fn apply(&self, x: u64) -> u64 {
        let r = x % self.modulus;
        if r == self.r1 {
            x - self.r1 + self.r2
        } else if r == self.r2 {
            x - self.r2 + self.r1
        } else {
            x
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Tau,
    Omega,
}

impl GeneratorKind {
    fn name(self) -> &'static str {
        match self {
            GeneratorKind::Tau => "tau",
            GeneratorKind::Omega => "omega",
        }
    }
}

#[derive(Debug, Clone)]
enum Generator {
    Class { kind: GeneratorKind, ct: HorizontalClassTransposition },
    Explicit { perm: Permutation, inv: Permutation },
}

/// Formats `tau r1(m),r2(m)` / `omega r1(m),r2(m)`.
pub fn class_label(kind: GeneratorKind, ct: &HorizontalClassTransposition) -> String {
    format!("{} {}({}),{}({})", kind.name(), ct.r1, ct.modulus, ct.r2, ct.modulus)
}

/// Inverse of [`class_label`].
pub fn parse_label(label: &str) -> Result<(GeneratorKind, HorizontalClassTransposition)> {
    let bad = |message: &str| Error::Parse { position: 0, message: format!("{message} in label '{label}'") };
    let (kind, rest) = label.trim().split_once(' ').ok_or_else(|| bad("missing kind"))?;
    let kind = match kind {
        "tau" => GeneratorKind::Tau,
        "omega" => GeneratorKind::Omega,
        _ => return Err(bad("unknown kind")),
    };
    let (a, b) = rest.trim().split_once(',').ok_or_else(|| bad("missing ','"))?;
    let class = |s: &str| -> Result<(u64, u64)> {
        let s = s.trim();
        let (r, m) = s.strip_suffix(')').and_then(|s| s.split_once('(')).ok_or_else(|| bad("malformed class"))?;
        let r = r.parse().map_err(|_| bad("bad residue"))?;
        let m = m.parse().map_err(|_| bad("bad modulus"))?;
        Ok((r, m))
    };
    let (r1, m1) = class(a)?;
    let (r2, m2) = class(b)?;
    if m1 != m2 {
        return Err(bad("moduli differ (slanted transpositions are not generators here)"));
    }
    Ok((kind, HorizontalClassTransposition::new(r1, r2, m1)?))
}

/// A labeled list of generators acting on `{0, ..., degree-1}`.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    degree: usize,
    generators: Vec<Generator>,
    labels: Vec<String>,
}

impl GeneratorSet {
    pub fn new(degree: usize) -> Self {
        GeneratorSet { degree, generators: Vec::new(), labels: Vec::new() }
    }

    /// Explicit permutations labeled `g0`, `g1`, ...
    pub fn from_permutations(degree: usize, perms: Vec<Permutation>) -> Result<Self> {
        let mut set = GeneratorSet::new(degree);
        for (i, perm) in perms.into_iter().enumerate() {
            set.push_permutation(format!("g{i}"), perm)?;
        }
        Ok(set)
    }

    pub fn push_permutation(&mut self, label: impl Into<String>, perm: Permutation) -> Result<()> {
        if perm.degree() != self.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: perm.degree() });
        }
        let inv = perm.inverse();
        self.generators.push(Generator::Explicit { perm, inv });
        self.labels.push(label.into());
        Ok(())
    }

    pub fn push_class(&mut self, kind: GeneratorKind, ct: HorizontalClassTransposition) -> Result<()> {
        if self.degree as u64 % ct.modulus != 0 {
            return Err(Error::NotDivisible { modulus: ct.modulus, degree: self.degree as u64 });
        }
        self.labels.push(class_label(kind, &ct));
        self.generators.push(Generator::Class { kind, ct });
        Ok(())
    }

    /// Generators of `self` followed by those of `other`.
    pub fn concat(&self, other: &GeneratorSet) -> Result<GeneratorSet> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: other.degree });
        }
        let mut out = self.clone();
        out.generators.extend(other.generators.iter().cloned());
        out.labels.extend(other.labels.iter().cloned());
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Modulus and residues of generator `i`, when it is a class transposition.
    pub fn class_transposition(&self, i: usize) -> Option<(GeneratorKind, HorizontalClassTransposition)> {
        match &self.generators[i] {
            Generator::Class { kind, ct } => Some((*kind, *ct)),
            Generator::Explicit { .. } => None,
        }
    }

    #[inline]
    pub fn apply(&self, i: usize, x: usize) -> usize {
        match &self.generators[i] {
            Generator::Class { ct, .. } => ct.apply(x as u64) as usize,
            Generator::Explicit { perm, .. } => perm.apply(x),
        }
    }

    #[inline]
    pub fn apply_inverse(&self, i: usize, x: usize) -> usize {
        match &self.generators[i] {
            Generator::Class { ct, .. } => ct.apply(x as u64) as usize,
            Generator::Explicit { inv, .. } => inv.apply(x),
        }
    }

    /// Generator `i` as an image table.
    pub fn permutation(&self, i: usize) -> Permutation {
        match &self.generators[i] {
            Generator::Class { ct, .. } => materialize(ct, self.degree),
            Generator::Explicit { perm, .. } => perm.clone(),
        }
    }

    pub fn permutations(&self) -> Vec<Permutation> {
        (0..self.len()).map(|i| self.permutation(i)).collect()
    }

    /// `target ← target · g_i`.
    pub(crate) fn right_multiply(&self, target: &mut Permutation, i: usize, inverted: bool) {
        debug_assert_eq!(target.degree(), self.degree);
        match (&self.generators[i], inverted) {
            (Generator::Class { ct, .. }, _) => target.map_in_place(|y| ct.apply(y as u64) as usize),
            (Generator::Explicit { perm, .. }, false) => target.mul_assign_unchecked(perm),
            (Generator::Explicit { inv, .. }, true) => target.mul_assign_unchecked(inv),
        }
    }

    /// Points fixed by every generator.
    pub fn common_fixed_points(&self) -> Vec<usize> {
        let mut moved = vec![false; self.degree];
        for g in &self.generators {
            match g {
                Generator::Class { ct, .. } => {
                    let m = ct.modulus as usize;
                    for base in (0..self.degree).step_by(m) {
                        moved[base + ct.r1 as usize] = true;
                        moved[base + ct.r2 as usize] = true;
                    }
                }
                Generator::Explicit { perm, .. } => {
                    for x in perm.support() {
                        moved[x] = true;
                    }
                }
            }
        }
        (0..self.degree).filter(|&x| !moved[x]).collect()
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} generators on {} points>", self.len(), self.degree)
    }
}

fn materialize(ct: &HorizontalClassTransposition, degree: usize) -> Permutation {
    Permutation::from_raw((0..degree as u64).map(|x| ct.apply(x) as u32).collect())
}

fn check_divides(modulus: u64, degree: usize) -> Result<()> {
    if modulus == 0 || degree as u64 % modulus != 0 {
        return Err(Error::NotDivisible { modulus, degree: degree as u64 });
    }
    Ok(())
}

/// The restriction of `τ` to `[0, degree)`: a product of `degree / m` disjoint transpositions.
pub fn tau(t: &HorizontalClassTransposition, degree: usize) -> Result<Permutation> {
    check_divides(t.modulus, degree)?;
    Ok(materialize(t, degree))
}

fn push_all_pairs(set: &mut GeneratorSet, kind: GeneratorKind, modulus: u64, residues: &[u64]) -> Result<()> {
    for (a, &r1) in residues.iter().enumerate() {
        for &r2 in &residues[a + 1..] {
            set.push_class(kind, HorizontalClassTransposition::new(r1, r2, modulus)?)?;
        }
    }
    Ok(())
}

/// All `C(m, 2)` generators `τ_{r1(m),r2(m)}`, lexicographic in `(r1, r2)`.
pub fn ct_n_generators(m: u64, degree: usize) -> Result<GeneratorSet> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("modulus {m} must be at least 2")));
    }
    check_divides(m, degree)?;
    let mut set = GeneratorSet::new(degree);
    push_all_pairs(&mut set, GeneratorKind::Tau, m, &(0..m).collect::<Vec<_>>())?;
    Ok(set)
}

/// Generators of `CT_(n) = <CT_2, ..., CT_n>` at the given degree, ascending modulus.
pub fn ct_family_generators(n: u32, degree: usize) -> Result<GeneratorSet> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 2")));
    }
    let mut set = GeneratorSet::new(degree);
    for m in 2..=u64::from(n) {
        set = set.concat(&ct_n_generators(m, degree)?)?;
    }
    Ok(set)
}

/// `CT_m` acting synchronously on `copies` consecutive blocks of size `m`.
pub fn embedded_block_generators(m: u64, copies: usize) -> Result<GeneratorSet> {
    if copies == 0 {
        return Err(Error::InvalidArgument("copies must be positive".into()));
    }
    ct_n_generators(m, m as usize * copies)
}

/// `<CT_N^[p], CT_{p^k}^[M]>` on `[0, N p)`: the `N`-block family first.
pub fn combined_generators(params: &Parameters) -> Result<GeneratorSet> {
    let pp = params.prime_power_case()?;
    embedded_block_generators(pp.lcm, pp.prime as usize)?
        .concat(&embedded_block_generators(pp.prime_power, pp.cofactor as usize)?)
}

/// Generators of the stabilizer of 2 in `CT_{p^k}^[M]`: every `omega`
/// on residue pairs from `[0, p^k) \ {2}`, at degree `N p`.
pub fn omega_pk_stab2(params: &Parameters) -> Result<GeneratorSet> {
    let pp = params.prime_power_case()?;
    let degree = usize::try_from(pp.extended_degree()).map_err(|_| Error::Overflow("N p".into()))?;
    let residues: Vec<u64> = (0..pp.prime_power).filter(|&r| r != PUNCTURE_RESIDUE).collect();
    let mut set = GeneratorSet::new(degree);
    push_all_pairs(&mut set, GeneratorKind::Omega, pp.prime_power, &residues)?;
    Ok(set)
}

/// Generators of the pointwise stabilizer of `delta ⊆ E` in `CT_N^[p]`:
/// every `omega` on residue pairs from `[0, N)` minus `delta mod N`.
pub fn omega_n_stab(params: &Parameters, delta: &[u64]) -> Result<GeneratorSet> {
    let pp = params.prime_power_case()?;
    let es = bridges::exceptional_set(params)?;
    if let Some(&x) = delta.iter().find(|&&x| !es.contains(x)) {
        return Err(Error::NotInExceptionalSet(x));
    }
    let delta_n = reduce_mod(delta, pp.lcm);
    let degree = usize::try_from(pp.extended_degree()).map_err(|_| Error::Overflow("N p".into()))?;
    let residues: Vec<u64> = (0..pp.lcm).filter(|r| delta_n.binary_search(r).is_err()).collect();
    let mut set = GeneratorSet::new(degree);
    push_all_pairs(&mut set, GeneratorKind::Omega, pp.lcm, &residues)?;
    Ok(set)
}

/// `{x mod modulus : x ∈ points}`, sorted and deduplicated.
pub fn reduce_mod(points: &[u64], modulus: u64) -> Vec<u64> {
    let mut out: Vec<u64> = points.iter().map(|x| x % modulus).collect();
    out.sort_unstable();
    out.dedup();
    out
}
