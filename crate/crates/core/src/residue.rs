//! Residue classes, the lcm of `2..=n`, prime-power detection and the
//! block decomposition `[j*n, (j+1)*n)` used by every other module.

use std::fmt;
use std::ops::Range;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// The residue class `residue + modulus * Z`, written `r(m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ResidueClass {
    residue: u64,
    modulus: u64,
}

impl ResidueClass {
    pub fn new(residue: u64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidArgument(format!("modulus {modulus} must be at least 2")));
        }
        if residue >= modulus {
            return Err(Error::InvalidArgument(format!(
                "residue {residue} must be smaller than the modulus {modulus}"
            )));
        }
        Ok(ResidueClass { residue, modulus })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn contains(&self, x: i64) -> bool {
        x.rem_euclid(self.modulus as i64) as u64 == self.residue
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.residue, self.modulus)
    }
}

/// `lcm(2, 3, ..., n)`.
pub fn lcm_up_to(n: u32) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("lcm_up_to needs n >= 2, got {n}")));
    }
    Ok((2..=n).fold(BigUint::from(1u32), |acc, m| acc.lcm(&BigUint::from(m))))
}

/// Returns `(p, k)` with `m = p^k` when `m` is a prime power.
pub fn prime_power(m: u64) -> Result<Option<(u64, u32)>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("prime_power needs m >= 2, got {m}")));
    }
    let p = smallest_prime_factor(m);
    let mut rest = m;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    Ok((rest == 1).then_some((p, k)))
}

fn smallest_prime_factor(m: u64) -> u64 {
    if m % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= m {
        if m % d == 0 {
            return d;
        }
        d += 2;
    }
    m
}

/// True iff `n + 1` does not divide `lcm(2..=n)`.
///
/// Whenever the answer is true the prime-power consequence is checked on the
/// spot: `n + 1 = p^k` and `lcm(2..=n+1) = lcm(2..=n) * p`.
pub fn gap_condition(n: u32) -> Result<bool> {
    let lcm = lcm_up_to(n)?;
    let next = BigUint::from(n + 1);
    let gap = !(&lcm % &next).eq(&BigUint::from(0u32));
    if gap {
        let (p, _) = prime_power(u64::from(n) + 1)?.unwrap_or_else(|| {
            panic!("{} does not divide lcm(2..{n}) but is not a prime power", n + 1)
        });
        let extended = lcm_up_to(n + 1)?;
        assert_eq!(extended, &lcm * BigUint::from(p), "lcm(2..{}) != lcm(2..{n}) * {p}", n + 1);
    }
    Ok(gap)
}

/// Whether `a ∩ b = ∅` in Z: the classes meet iff their residues agree
/// modulo `gcd(m1, m2)`.
pub fn classes_disjoint(a: ResidueClass, b: ResidueClass) -> bool {
    let g = a.modulus.gcd(&b.modulus);
    a.residue % g != b.residue % g
}

/// The block `[j*n, (j+1)*n)`.
pub fn block(n: u64, j: u64) -> Range<u64> {
    j * n..(j + 1) * n
}

/// Arithmetic data attached to `n` in the prime-power case, when
/// `n + 1 = p^k` does not divide `N = lcm(2..=n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimePowerCase {
    /// The prime `p`.
    pub prime: u64,
    /// The exponent `k`.
    pub exponent: u32,
    /// `p^k = n + 1`.
    pub prime_power: u64,
    /// `N = lcm(2..=n)`.
    pub lcm: u64,
    /// `M = N / p^(k-1)`.
    pub cofactor: u64,
}

impl PrimePowerCase {
    /// `N * p = M * p^k`, the size of the extended domain.
    pub fn extended_degree(&self) -> u64 {
        self.lcm * self.prime
    }
}

/// `n`, `N = lcm(2..=n)` and, when the gap condition holds, the prime-power data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parameters {
    n: u32,
    lcm: BigUint,
    prime_power: Option<PrimePowerCase>,
}

impl Parameters {
    pub fn new(n: u32) -> Result<Self> {
        let lcm = lcm_up_to(n)?;
        let prime_power = if gap_condition(n)? {
            let (p, k) = prime_power(u64::from(n) + 1)?.expect("checked by gap_condition");
            let small = u64::try_from(&lcm)
                .ok()
                .filter(|l| l.checked_mul(p).is_some());
            small.map(|l| PrimePowerCase {
                prime: p,
                exponent: k,
                prime_power: u64::from(n) + 1,
                lcm: l,
                cofactor: l / p.pow(k - 1),
            })
        } else {
            None
        };
        let params = Parameters { n, lcm, prime_power };
        if let Some(pp) = params.prime_power {
            assert!(pp.cofactor % pp.prime != 0, "p divides M for n = {n}");
            assert_eq!(pp.cofactor * pp.prime.pow(pp.exponent - 1), pp.lcm);
        }
        Ok(params)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `N = lcm(2..=n)`.
    pub fn lcm(&self) -> &BigUint {
        &self.lcm
    }

    /// `N` as a machine integer, when it fits.
    pub fn lcm_u64(&self) -> Result<u64> {
        u64::try_from(&self.lcm).map_err(|_| Error::Overflow(format!("lcm(2..{}) exceeds 64 bits", self.n)))
    }

    pub fn gap_holds(&self) -> bool {
        (&self.lcm % BigUint::from(self.n + 1)) != BigUint::from(0u32)
    }

    /// The prime-power data; fails when the gap condition does not hold.
    pub fn prime_power_case(&self) -> Result<&PrimePowerCase> {
        match &self.prime_power {
            Some(pp) => Ok(pp),
            None if !self.gap_holds() => Err(Error::GapConditionFails {
                n: self.n,
                next: self.n + 1,
                lcm: self.lcm.to_string(),
            }),
            None => Err(Error::Overflow(format!("N * p exceeds 64 bits for n = {}", self.n))),
        }
    }
}
