//! Freely reduced words over a finite symmetric alphabet.
//!
//! Letters are encoded as nonzero signed integers: `+i` is generator `i`,
//! `-i` its inverse. That is also the JSON wire format for words.

use std::fmt;

use rand::Rng as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rng::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: u32, positive: bool) -> Self {
        assert!(generator >= 1 && generator <= i32::MAX as u32, "generator index out of range");
        let g = generator as i32;
        Letter(if positive { g } else { -g })
    }

    pub fn from_signed(value: i32) -> Result<Self> {
        if value == 0 {
            Err(Error::ZeroLetter)
        } else {
            Ok(Letter(value))
        }
    }

    #[inline]
    pub fn generator(self) -> u32 {
        self.0.unsigned_abs()
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    #[inline]
    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    #[inline]
    pub fn to_signed(self) -> i32 {
        self.0
    }

    /// Dense index in `0..2*rank`, used for transition tables.
    #[inline]
    pub fn slot(self) -> usize {
        2 * (self.generator() as usize - 1) + usize::from(self.0 < 0)
    }

    pub fn from_slot(slot: usize) -> Self {
        Letter::new((slot / 2 + 1) as u32, slot.is_multiple_of(2))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.generator();
        if g <= 26 {
            let c = (b'a' + (g - 1) as u8) as char;
            if self.is_positive() {
                write!(f, "{c}")
            } else {
                write!(f, "{}", c.to_ascii_uppercase())
            }
        } else if self.is_positive() {
            write!(f, "x{g}")
        } else {
            write!(f, "X{g}")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    rank: u32,
}

impl Alphabet {
    pub fn new(rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn check(&self, letter: Letter) -> Result<()> {
        if letter.generator() > self.rank {
            Err(Error::GeneratorOutOfRange { generator: letter.generator(), rank: self.rank })
        } else {
            Ok(())
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.letters().iter().try_for_each(|&l| self.check(l))
    }

    /// Reduces `raw` after checking every letter against the alphabet.
    pub fn free_reduce(&self, raw: &[Letter]) -> Result<Word> {
        raw.iter().try_for_each(|&l| self.check(l))?;
        Ok(free_reduce(raw))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..2 * self.rank as usize).map(Letter::from_slot)
    }

    /// Uniform point on the sphere of reduced words of length `len`.
    pub fn random_word(&self, len: usize, rng: &mut Rng) -> Word {
        let slots = 2 * self.rank as usize;
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        for i in 0..len {
            let next = if i == 0 {
                Letter::from_slot(rng.gen_range(0..slots))
            } else {
                let prev_inv = letters[i - 1].inverse().slot();
                let mut s = rng.gen_range(0..slots - 1);
                if s >= prev_inv {
                    s += 1;
                }
                Letter::from_slot(s)
            };
            letters.push(next);
        }
        Word(letters)
    }

    /// Number of reduced words of length exactly `len`.
    pub fn sphere_size(&self, len: usize) -> f64 {
        if len == 0 {
            1.0
        } else {
            let r = self.rank as f64;
            2.0 * r * (2.0 * r - 1.0).powi(len as i32 - 1)
        }
    }

    /// Uniform point on the ball of radius `radius`.
    pub fn random_ball_word(&self, radius: usize, rng: &mut Rng) -> Word {
        // Sphere sizes as logs, normalized against the largest to stay finite.
        let q = (2.0 * self.rank as f64 - 1.0).max(1.0);
        let log_sizes: Vec<f64> = (0..=radius)
            .map(|l| if l == 0 { 0.0 } else { (2.0 * self.rank as f64).ln() + (l as f64 - 1.0) * q.ln() })
            .collect();
        let max = log_sizes.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = log_sizes.iter().map(|l| (l - max).exp()).collect();
        let total: f64 = weights.iter().sum();
        let mut pick = rng.gen::<f64>() * total;
        let mut len = radius;
        for (l, w) in weights.iter().enumerate() {
            if pick < *w {
                len = l;
                break;
            }
            pick -= w;
        }
        self.random_word(len, rng)
    }

    /// `k` independent words, each of length uniform on `[lo, hi]`.
    pub fn random_tuple(&self, k: usize, lo: i64, hi: i64, rng: &mut Rng) -> Result<WordTuple> {
        if lo < 0 || lo > hi {
            return Err(Error::InvalidLengthRange { lo, hi });
        }
        let words = (0..k)
            .map(|_| {
                let len = rng.gen_range(lo..=hi) as usize;
                self.random_word(len, rng)
            })
            .collect();
        Ok(WordTuple(words))
    }

    /// Every reduced word of length exactly `len`, in lexicographic slot order.
    pub fn sphere(&self, len: usize) -> Vec<Word> {
        let mut out = vec![Word::identity()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * (2 * self.rank as usize - 1).max(1));
            for w in &out {
                for l in self.letters() {
                    if w.last() != Some(l.inverse()) {
                        let mut v = w.0.clone();
                        v.push(l);
                        next.push(Word(v));
                    }
                }
            }
            out = next;
        }
        out
    }

    /// Every reduced word of length at most `radius`.
    pub fn ball(&self, radius: usize) -> Vec<Word> {
        (0..=radius).flat_map(|l| self.sphere(l)).collect()
    }
}

/// Returns the unique freely reduced word equal to `raw`.
pub fn free_reduce(raw: &[Letter]) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(raw.len());
    for &l in raw {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Parses signed integers, reducing the result.
    pub fn from_signed(values: &[i32]) -> Result<Self> {
        let letters = values.iter().map(|&v| Letter::from_signed(v)).collect::<Result<Vec<_>>>()?;
        Ok(free_reduce(&letters))
    }

    pub fn to_signed(&self) -> Vec<i32> {
        self.0.iter().map(|l| l.to_signed()).collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.generator()).max().unwrap_or(0)
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let t = cancellation(self, other);
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * t);
        letters.extend_from_slice(&self.0[..self.len() - t]);
        letters.extend_from_slice(&other.0[t..]);
        Word(letters)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `x⁻¹ · self · x`.
    pub fn conjugate(&self, x: &Word) -> Word {
        x.inverse().multiply(self).multiply(x)
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.multiply(&base);
        }
        acc
    }

    /// Returns `(c, core)` with `self = c · core · c⁻¹` and `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.len();
        let mut t = 0;
        while 2 * t + 1 < n && self.0[t] == self.0[n - 1 - t].inverse() {
            t += 1;
        }
        (Word(self.0[..t].to_vec()), Word(self.0[t..n - t].to_vec()))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => f != l.inverse(),
            _ => true,
        }
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        free_reduce(&v)
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    pub fn suffix_from(&self, k: usize) -> Word {
        Word(self.0[k..].to_vec())
    }
}

/// Number of letters cancelled when forming `u · v`.
pub fn cancellation(u: &Word, v: &Word) -> usize {
    u.0.iter().rev().zip(v.0.iter()).take_while(|(a, b)| **a == b.inverse()).count()
}

/// `[u, v] = u⁻¹ v⁻¹ u v`.
pub fn commutator(u: &Word, v: &Word) -> Word {
    u.inverse().multiply(&v.inverse()).multiply(u).multiply(v)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_signed().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<i32>::deserialize(d)?;
        Word::from_signed(&raw).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Letter::from_signed(i32::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Which size function measures a tuple; both are in use in the literature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeFunction {
    TotalLength,
    MaxLength,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WordTuple(pub Vec<Word>);

impl WordTuple {
    pub fn new(words: Vec<Word>) -> Self {
        WordTuple(words)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<&Word> {
        self.0.get(i)
    }

    pub fn total_length(&self) -> usize {
        self.0.iter().map(Word::len).sum()
    }

    pub fn max_length(&self) -> usize {
        self.0.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn measure(&self, f: SizeFunction) -> usize {
        match f {
            SizeFunction::TotalLength => self.total_length(),
            SizeFunction::MaxLength => self.max_length(),
        }
    }

    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(Word::max_generator).max().unwrap_or(0)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.0.iter()
    }
}

impl From<Vec<Word>> for WordTuple {
    fn from(v: Vec<Word>) -> Self {
        WordTuple(v)
    }
}

/// Shorthand for tests and examples: `w(&[1, -2])` is `a b⁻¹`.
pub fn w(values: &[i32]) -> Word {
    Word::from_signed(values).expect("nonzero letters")
}
