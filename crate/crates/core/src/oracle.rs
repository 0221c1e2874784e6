//! Brute-force ground truth: Cayley-graph enumeration and literal
//! k-transitivity. Only meant for groups of at most a few million elements.

use std::collections::HashSet;

use indexmap::IndexSet;
use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gens::GeneratorSet;
use crate::perm::Permutation;

pub const DEFAULT_CAP: usize = 2_000_000;

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "CLASSTRANS_ORACLE_CAP";

pub fn default_cap() -> usize {
    std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).filter(|&c| c > 0).unwrap_or(DEFAULT_CAP)
}

/// Elements in breadth-first discovery order, identity first.
#[derive(Debug, Clone)]
pub struct EnumeratedGroup {
    elements: IndexSet<Permutation>,
    degree: usize,
    capped: bool,
}

impl EnumeratedGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_capped(&self) -> bool {
        self.capped
    }

    /// Number of elements found; a lower bound when capped.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn order(&self) -> Result<BigUint> {
        self.require_complete()?;
        Ok(BigUint::from(self.elements.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.contains(g)
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = &Permutation> {
        self.elements.iter()
    }

    pub fn element(&self, i: usize) -> Option<&Permutation> {
        self.elements.get_index(i)
    }

    fn require_complete(&self) -> Result<()> {
        if self.capped {
            return Err(Error::CappedGroup { cap: self.elements.len() - 1 });
        }
        Ok(())
    }
}

/// Breadth-first search of the Cayley graph from the identity, right
/// multiplying by generators in index order. Stops as soon as more than
/// `cap` elements are known.
pub fn enumerate(gens: &GeneratorSet, cap: usize) -> Result<EnumeratedGroup> {
    if cap == 0 {
        return Err(Error::InvalidArgument("the enumeration cap must be at least 1".into()));
    }
    let degree = gens.degree();
    let mut elements = IndexSet::new();
    elements.insert(Permutation::identity(degree));
    let mut head = 0;
    while head < elements.len() {
        for i in 0..gens.len() {
            let mut next = elements[head].clone();
            gens.right_multiply(&mut next, i, false);
            elements.insert(next);
            if elements.len() > cap {
                return Ok(EnumeratedGroup { elements, degree, capped: true });
            }
        }
        head += 1;
    }
    Ok(EnumeratedGroup { elements, degree, capped: false })
}

fn falling_factorial(n: usize, k: usize) -> u128 {
    (0..k).map(|i| (n - i) as u128).product()
}

/// Every ordered `k`-tuple of distinct points is the image of `(0, ..., k-1)`
/// under some element.
pub fn transitivity_exhaustive(grp: &EnumeratedGroup, k: usize) -> Result<bool> {
    grp.require_complete()?;
    if k == 0 || k > grp.degree {
        return Err(Error::InvalidArgument(format!("k = {k} must lie in 1..={}", grp.degree)));
    }
    let needed = falling_factorial(grp.degree, k);
    if (grp.elements.len() as u128) < needed {
        return Ok(false);
    }
    let images: HashSet<Vec<usize>> = grp.elements.iter().map(|g| (0..k).map(|x| g.apply(x)).collect()).collect();
    Ok(images.len() as u128 == needed)
}

/// Largest `k` for which [`transitivity_exhaustive`] holds, `0` if the group is intransitive.
pub fn max_transitivity(grp: &EnumeratedGroup) -> Result<usize> {
    let mut k = 0;
    while k < grp.degree && transitivity_exhaustive(grp, k + 1)? {
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens::{ct_family_generators, ct_n_generators};

    fn set(degree: usize, cycles: &[&str]) -> GeneratorSet {
        let perms = cycles.iter().map(|c| Permutation::parse(c, degree).unwrap()).collect();
        GeneratorSet::from_permutations(degree, perms).unwrap()
    }

    #[test]
    fn tiny_groups() {
        let g = enumerate(&set(2, &["(0 1)"]), 10).unwrap();
        assert_eq!(g.order().unwrap(), BigUint::from(2u32));
        assert!(g.element(0).unwrap().is_identity());
        let g = enumerate(&ct_n_generators(4, 4).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(g.len(), 24);
        assert!(transitivity_exhaustive(&g, 4).unwrap());
    }

    #[test]
    fn cyclic_is_not_2_transitive() {
        let g = enumerate(&set(4, &["(0 1 2 3)"]), 100).unwrap();
        assert_eq!(g.len(), 4);
        assert!(transitivity_exhaustive(&g, 1).unwrap());
        assert!(!transitivity_exhaustive(&g, 2).unwrap());
        assert_eq!(max_transitivity(&g).unwrap(), 1);
    }

    #[test]
    fn cap_is_respected() {
        let g = enumerate(&ct_n_generators(5, 5).unwrap(), 50).unwrap();
        assert!(g.is_capped());
        assert_eq!(g.len(), 51);
        assert_eq!(g.order(), Err(Error::CappedGroup { cap: 50 }));
        assert!(transitivity_exhaustive(&g, 1).is_err());
        assert!(enumerate(&set(2, &["(0 1)"]), 0).is_err());
    }

    #[test]
    fn n3_family_is_a_proper_subgroup() {
        let g = enumerate(&ct_family_generators(3, 6).unwrap(), DEFAULT_CAP).unwrap();
        let order = g.len();
        assert!(order > 4 && order < 720, "order {order}");
    }

    #[test]
    fn closed_under_products() {
        use rand::{Rng, SeedableRng};
        let g = enumerate(&ct_family_generators(3, 6).unwrap(), DEFAULT_CAP).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = g.element(rng.gen_range(0..g.len())).unwrap();
            let b = g.element(rng.gen_range(0..g.len())).unwrap();
            assert!(g.contains(&a.compose(b).unwrap()));
            assert!(g.contains(&a.inverse()));
        }
    }
}
