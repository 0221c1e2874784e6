//! Permutations of `{0, ..., degree-1}` stored as image tables.
//!
//! Action is on the right: `x^(ab) = (x^a)^b`, so `a.compose(&b)` maps
//! `x` to `b(a(x))`. Every binary operation checks that degrees agree.

use std::fmt;
use std::ops::BitXor;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gens::GeneratorSet;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl BitXor for Parity {
    type Output = Parity;

    fn bitxor(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= u32::MAX as usize);
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for (x, &y) in images.iter().enumerate() {
            if y >= degree {
                return Err(Error::InvalidArgument(format!("image {y} of {x} is out of range for degree {degree}")));
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidArgument(format!("image {y} occurs twice")));
            }
        }
        Ok(Permutation { images: images.into_iter().map(|y| y as u32).collect() })
    }

    /// Builds from a table the caller guarantees to be a bijection.
    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|&y| y as usize).collect()).is_ok());
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&y| y as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    /// `x ↦ other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_degrees(self, other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&y| other.images[y as usize]).collect() }
    }

    /// `self ← self · other`, reusing the allocation.
    pub(crate) fn mul_assign_unchecked(&mut self, other: &Permutation) {
        for y in self.images.iter_mut() {
            *y = other.images[*y as usize];
        }
    }

    /// `self ← f ∘ self`, i.e. right-multiplies by the map `f`.
    #[inline]
    pub(crate) fn map_in_place(&mut self, f: impl Fn(usize) -> usize) {
        for y in self.images.iter_mut() {
            *y = f(*y as usize) as u32;
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc.mul_assign_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn parity(&self) -> Parity {
        let cycles = self.cycle_count();
        if (self.degree() - cycles) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Number of cycles, fixed points included.
    fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut count = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
            }
        }
        count
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Permutation> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &x in cycle {
                if x >= degree {
                    return Err(Error::InvalidCycles(format!("point {x} out of range for degree {degree}")));
                }
                if std::mem::replace(&mut used[x], true) {
                    return Err(Error::InvalidCycles(format!("point {x} appears in more than one place")));
                }
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// The points moved by this permutation, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().enumerate().filter(|(x, &y)| *x as u32 != y).map(|(x, _)| x)
    }

    /// Parses cycle notation `(0 3 5)(1 2)` or an image list `[3,2,1,0]`.
    pub fn parse(text: &str, degree: usize) -> Result<Permutation> {
        let trimmed_start = text.len() - text.trim_start().len();
        let body = text.trim();
        match body.chars().next() {
            Some('[') => parse_image_list(body, trimmed_start, degree),
            Some('(') => parse_cycles(body, trimmed_start, degree),
            Some(c) => Err(Error::Parse {
                position: trimmed_start,
                message: format!("expected '(' or '[', found '{c}'"),
            }),
            None => Err(Error::Parse { position: 0, message: "empty permutation".into() }),
        }
    }
}

fn check_degrees(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch { left: a.degree(), right: b.degree() });
    }
    Ok(())
}

fn parse_cycles(body: &str, offset: usize, degree: usize) -> Result<Permutation> {
    let mut cycles = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut number: Option<(usize, usize)> = None;
    let bytes = body.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        let pos = offset + i;
        match b {
            b'0'..=b'9' => {
                if current.is_none() {
                    return Err(Error::Parse { position: pos, message: "digit outside a cycle".into() });
                }
                let (start, value) = number.unwrap_or((pos, 0));
                let value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add((b - b'0') as usize))
                    .ok_or(Error::Parse { position: start, message: "point too large".into() })?;
                number = Some((start, value));
            }
            b' ' | b'\t' | b',' => {
                flush_number(&mut number, &mut current, degree)?;
            }
            b'(' => {
                if current.is_some() {
                    return Err(Error::Parse { position: pos, message: "nested '('".into() });
                }
                current = Some(Vec::new());
            }
            b')' => {
                flush_number(&mut number, &mut current, degree)?;
                match current.take() {
                    Some(cycle) => cycles.push(cycle),
                    None => return Err(Error::Parse { position: pos, message: "unmatched ')'".into() }),
                }
            }
            _ => {
                return Err(Error::Parse { position: pos, message: format!("unexpected character '{}'", b as char) })
            }
        }
    }
    if current.is_some() {
        return Err(Error::Parse { position: offset + body.len(), message: "missing ')'".into() });
    }
    Permutation::from_cycles(&cycles, degree)
}

fn flush_number(number: &mut Option<(usize, usize)>, current: &mut Option<Vec<usize>>, degree: usize) -> Result<()> {
    if let Some((start, value)) = number.take() {
        if value >= degree {
            return Err(Error::Parse { position: start, message: format!("point {value} out of range for degree {degree}") });
        }
        current.as_mut().expect("numbers only inside cycles").push(value);
    }
    Ok(())
}

fn parse_image_list(body: &str, offset: usize, degree: usize) -> Result<Permutation> {
    if !body.ends_with(']') {
        return Err(Error::Parse { position: offset + body.len(), message: "missing ']'".into() });
    }
    let inner = &body[1..body.len() - 1];
    let mut images = Vec::new();
    let mut pos = offset + 1;
    if !inner.trim().is_empty() {
        for item in inner.split(',') {
            let value = item.trim().parse::<usize>().map_err(|_| Error::Parse {
                position: pos,
                message: format!("invalid image '{}'", item.trim()),
            })?;
            images.push(value);
            pos += item.len() + 1;
        }
    }
    if images.len() != degree {
        return Err(Error::Parse {
            position: offset,
            message: format!("image list has {} entries, expected degree {degree}", images.len()),
        });
    }
    Permutation::from_images(images).map_err(|e| Error::Parse { position: offset, message: e.to_string() })
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// One letter of a word: a generator index, possibly inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverted: bool,
}

/// A word in the generators of some [`GeneratorSet`], read left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letter(generator: usize) -> Self {
        Word { letters: vec![Letter { generator, inverted: false }] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, generator: usize, inverted: bool) {
        self.letters.push(Letter { generator, inverted });
    }

    pub fn extend(&mut self, other: &Word) {
        self.letters.extend_from_slice(&other.letters);
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter { generator: l.generator, inverted: !l.inverted })
                .collect(),
        }
    }

    fn check(&self, gens: &GeneratorSet) -> Result<()> {
        match self.letters.iter().find(|l| l.generator >= gens.len()) {
            Some(l) => Err(Error::InvalidGeneratorIndex { index: l.generator, len: gens.len() }),
            None => Ok(()),
        }
    }

    /// Image of a single point, without building the full permutation.
    pub fn apply_to_point(&self, gens: &GeneratorSet, x: usize) -> Result<usize> {
        self.check(gens)?;
        if x >= gens.degree() {
            return Err(Error::PointOutOfRange { point: x as u64, degree: gens.degree() as u64 });
        }
        Ok(self.letters.iter().fold(x, |x, l| {
            if l.inverted {
                gens.apply_inverse(l.generator, x)
            } else {
                gens.apply(l.generator, x)
            }
        }))
    }

    /// Renders the word with the generator labels, `*` between letters and
    /// `^-1` on inverted letters.
    pub fn display_with(&self, gens: &GeneratorSet) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|l| {
                let label = gens.label(l.generator);
                if l.inverted {
                    format!("[{label}]^-1")
                } else {
                    format!("[{label}]")
                }
            })
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

/// The product of the word's letters, left to right.
pub fn evaluate(word: &Word, gens: &GeneratorSet) -> Result<Permutation> {
    word.check(gens)?;
    let mut images: Vec<u32> = (0..gens.degree() as u32).collect();
    for l in &word.letters {
        for y in images.iter_mut() {
            *y = if l.inverted {
                gens.apply_inverse(l.generator, *y as usize)
            } else {
                gens.apply(l.generator, *y as usize)
            } as u32;
        }
    }
    Ok(Permutation::from_raw(images))
}
