//! The Anshel–Anshel–Goldfeld commutator key exchange over a free group or a
//! right-angled Artin group.
//!
//! Alice owns `A = ⟨a_1, …, a_m⟩` and a secret `a ∈ A`, Bob owns
//! `B = ⟨b_1, …, b_n⟩` and `b ∈ B`. Alice publishes `b_j^a`, Bob publishes
//! `a_i^b`, and both compute `[a, b] = a⁻¹b⁻¹ab`.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::conjugacy::ConjugacySystem;
use crate::error::{Error, Result};
use crate::raag::{choose_projection, normal_form, CommutationGraph, FreeProjection};
use crate::rng::Rng;
use crate::stallings::SubgroupExpression;
use crate::word::{Alphabet, Letter, Word, WordTuple};

/// The group the protocol runs in.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "PlatformFile", into = "PlatformFile")]
pub enum Platform {
    Free(Alphabet),
    Raag(CommutationGraph),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum PlatformFile {
    Free { rank: u32 },
    Raag { n: u32, edges: Vec<[u32; 2]> },
}

impl TryFrom<PlatformFile> for Platform {
    type Error = Error;
    fn try_from(f: PlatformFile) -> Result<Self> {
        match f {
            PlatformFile::Free { rank } => Ok(Platform::Free(Alphabet::new(rank)?)),
            PlatformFile::Raag { n, edges } => {
                let edges: Vec<(u32, u32)> = edges.iter().map(|e| (e[0], e[1])).collect();
                Ok(Platform::Raag(CommutationGraph::new(n, &edges)?))
            }
        }
    }
}

impl From<Platform> for PlatformFile {
    fn from(p: Platform) -> Self {
        match p {
            Platform::Free(a) => PlatformFile::Free { rank: a.rank() },
            Platform::Raag(g) => {
                PlatformFile::Raag { n: g.vertex_count(), edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect() }
            }
        }
    }
}

fn invert(letters: &[Letter]) -> impl Iterator<Item = Letter> + '_ {
    letters.iter().rev().map(|l| l.inverse())
}

impl Platform {
    pub fn free(rank: u32) -> Result<Self> {
        Ok(Platform::Free(Alphabet::new(rank)?))
    }

    pub fn path_raag(n: u32) -> Result<Self> {
        Ok(Platform::Raag(CommutationGraph::path(n)?))
    }

    /// Number of generators (free rank or vertex count).
    pub fn generator_count(&self) -> u32 {
        match self {
            Platform::Free(a) => a.rank(),
            Platform::Raag(g) => g.vertex_count(),
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Platform::Free(_))
    }

    pub fn graph(&self) -> Option<&CommutationGraph> {
        match self {
            Platform::Raag(g) => Some(g),
            Platform::Free(_) => None,
        }
    }

    pub fn normalize(&self, letters: &[Letter]) -> Result<Word> {
        match self {
            Platform::Free(a) => a.free_reduce(letters),
            Platform::Raag(g) => normal_form(g, letters),
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match self {
            Platform::Free(a) => a.check_word(w),
            Platform::Raag(g) => g.check(w.letters()),
        }
    }

    /// Product of words, normalized. Inputs are assumed to be in range.
    pub fn product(&self, words: &[&Word]) -> Word {
        let raw: Vec<Letter> = words.iter().flat_map(|w| w.letters().iter().copied()).collect();
        self.normalize(&raw).expect("letters in range")
    }

    pub fn multiply(&self, u: &Word, v: &Word) -> Word {
        self.product(&[u, v])
    }

    pub fn inverse(&self, w: &Word) -> Word {
        let raw: Vec<Letter> = invert(w.letters()).collect();
        self.normalize(&raw).expect("letters in range")
    }

    /// `x⁻¹ u x`.
    pub fn conjugate(&self, u: &Word, x: &Word) -> Word {
        let raw: Vec<Letter> =
            invert(x.letters()).chain(u.letters().iter().copied()).chain(x.letters().iter().copied()).collect();
        self.normalize(&raw).expect("letters in range")
    }

    /// `u⁻¹ v⁻¹ u v`.
    pub fn commutator(&self, u: &Word, v: &Word) -> Word {
        let raw: Vec<Letter> = invert(u.letters())
            .chain(invert(v.letters()))
            .chain(u.letters().iter().copied())
            .chain(v.letters().iter().copied())
            .collect();
        self.normalize(&raw).expect("letters in range")
    }

    /// Length of the normal form.
    pub fn length(&self, w: &Word) -> usize {
        self.normalize(w.letters()).map(|n| n.len()).unwrap_or(w.len())
    }

    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        self.multiply(u, &self.inverse(v)).is_identity()
    }

    pub fn evaluate(&self, expr: &SubgroupExpression, gens: &WordTuple) -> Result<Word> {
        let mut raw: Vec<Letter> = Vec::new();
        for l in expr.as_word().letters() {
            let i = l.generator();
            let x = gens.get(i as usize - 1).ok_or(Error::ExpressionOutOfRange { index: i, size: gens.size() })?;
            if l.is_positive() {
                raw.extend_from_slice(x.letters());
            } else {
                raw.extend(invert(x.letters()));
            }
        }
        self.normalize(&raw)
    }

    /// A random normal form. Free platform: uniform on the sphere of radius
    /// `len`. RAAG: the normal form of a uniform reduced free word of length
    /// `len` over the vertices, which may be shorter.
    pub fn random_word(&self, len: usize, rng: &mut Rng) -> Word {
        match self {
            Platform::Free(a) => a.random_word(len, rng),
            Platform::Raag(g) => {
                let w = Alphabet::new(g.vertex_count()).expect("nonempty graph").random_word(len, rng);
                normal_form(g, w.letters()).expect("letters in range")
            }
        }
    }

    /// Epimorphism onto `F₂` by erasing generators: the lex-least
    /// non-commuting pair for a RAAG, generators 1 and 2 for a free group.
    pub fn projection(&self) -> Result<FreeProjection> {
        match self {
            Platform::Raag(g) => choose_projection(g),
            Platform::Free(a) if a.rank() >= 2 => Ok(FreeProjection { p: 1, q: 2 }),
            Platform::Free(_) => Err(Error::InvalidParams("projection needs rank at least 2".into())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Platform::Free(a) => format!("free{}", a.rank()),
            Platform::Raag(g) => format!("raag{}e{}", g.vertex_count(), g.edges().len()),
        }
    }
}

/// Sampling ranges, all inclusive. Alice's tuple has `k_range` generators of
/// length in `gen_length_range`; Bob's has `m_range` generators of length in
/// `u_length_range`; each private key is a product of a count in
/// `key_factors_range` of generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AagParams {
    pub k_range: [u32; 2],
    pub gen_length_range: [u32; 2],
    pub m_range: [u32; 2],
    pub u_length_range: [u32; 2],
    pub key_factors_range: [u32; 2],
}

impl Default for AagParams {
    fn default() -> Self {
        AagParams {
            k_range: [3, 5],
            gen_length_range: [5, 10],
            m_range: [3, 5],
            u_length_range: [5, 10],
            key_factors_range: [5, 10],
        }
    }
}

impl AagParams {
    pub fn validate(&self) -> Result<()> {
        let ranges = [
            ("k_range", self.k_range),
            ("gen_length_range", self.gen_length_range),
            ("m_range", self.m_range),
            ("u_length_range", self.u_length_range),
            ("key_factors_range", self.key_factors_range),
        ];
        for (name, [lo, hi]) in ranges {
            if lo == 0 || lo > hi {
                return Err(Error::InvalidParams(format!("{name} must satisfy 1 <= lo <= hi, got [{lo}, {hi}]")));
            }
        }
        Ok(())
    }

    /// Fixes generator length and key factor count to single values.
    pub fn with_lengths(mut self, gen_length: u32, key_factors: u32) -> Self {
        self.gen_length_range = [gen_length, gen_length];
        self.u_length_range = [gen_length, gen_length];
        self.key_factors_range = [key_factors, key_factors];
        self
    }
}

/// Public data of one session.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AagInstance {
    pub platform: Platform,
    pub params: AagParams,
    pub seed: u64,
    pub alice_gens: WordTuple,
    pub bob_gens: WordTuple,
    /// `b_j^a`.
    pub alice_conjugates: WordTuple,
    /// `a_i^b`.
    pub bob_conjugates: WordTuple,
}

/// A private key: a factor sequence over the owner's generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AagPrivate(pub SubgroupExpression);

/// Private file layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrivateKeys {
    pub alice: AagPrivate,
    pub bob: AagPrivate,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SharedKey(pub Word);

fn sample_in(rng: &mut Rng, [lo, hi]: [u32; 2]) -> u32 {
    rng.gen_range(lo..=hi)
}

fn sample_tuple(platform: &Platform, count: u32, lengths: [u32; 2], rng: &mut Rng) -> WordTuple {
    let words = (0..count)
        .map(|_| loop {
            let len = sample_in(rng, lengths) as usize;
            let w = platform.random_word(len, rng);
            if !w.is_identity() {
                break w;
            }
        })
        .collect();
    WordTuple(words)
}

/// Uniform indices and signs with no factor followed by its inverse.
pub fn sample_factors(count: u32, factors: u32, rng: &mut Rng) -> SubgroupExpression {
    let mut out: Vec<(u32, i32)> = Vec::with_capacity(factors as usize);
    while out.len() < factors as usize {
        let f = (rng.gen_range(1..=count), if rng.gen_bool(0.5) { 1 } else { -1 });
        if out.last().is_some_and(|&(i, s)| i == f.0 && s == -f.1) {
            continue;
        }
        out.push(f);
    }
    SubgroupExpression::from_factors(&out).expect("indices are positive")
}

/// Generates a session deterministically from `seed`.
pub fn keygen(platform: &Platform, params: &AagParams, seed: u64) -> Result<(AagInstance, AagPrivate, AagPrivate)> {
    params.validate()?;
    let mut rng = Rng::new(seed);
    let k = sample_in(&mut rng, params.k_range);
    let alice_gens = sample_tuple(platform, k, params.gen_length_range, &mut rng);
    let m = sample_in(&mut rng, params.m_range);
    let bob_gens = sample_tuple(platform, m, params.u_length_range, &mut rng);
    let alice = sample_factors(k, sample_in(&mut rng, params.key_factors_range), &mut rng);
    let bob = sample_factors(m, sample_in(&mut rng, params.key_factors_range), &mut rng);
    let instance = build_instance(platform, params.clone(), seed, alice_gens, bob_gens, &alice, &bob)?;
    Ok((instance, AagPrivate(alice), AagPrivate(bob)))
}

/// Assembles public data from explicit tuples and keys.
pub fn build_instance(
    platform: &Platform,
    params: AagParams,
    seed: u64,
    alice_gens: WordTuple,
    bob_gens: WordTuple,
    alice: &SubgroupExpression,
    bob: &SubgroupExpression,
) -> Result<AagInstance> {
    let alice_gens = WordTuple(alice_gens.iter().map(|w| platform.normalize(w.letters())).collect::<Result<_>>()?);
    let bob_gens = WordTuple(bob_gens.iter().map(|w| platform.normalize(w.letters())).collect::<Result<_>>()?);
    let a = platform.evaluate(alice, &alice_gens)?;
    let b = platform.evaluate(bob, &bob_gens)?;
    let alice_conjugates = WordTuple(bob_gens.iter().map(|bj| platform.conjugate(bj, &a)).collect());
    let bob_conjugates = WordTuple(alice_gens.iter().map(|ai| platform.conjugate(ai, &b)).collect());
    Ok(AagInstance { platform: platform.clone(), params, seed, alice_gens, bob_gens, alice_conjugates, bob_conjugates })
}

impl AagInstance {
    /// Structural checks for instances read from disk.
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        let sizes = [
            ("alice_conjugates", self.alice_conjugates.size(), self.bob_gens.size()),
            ("bob_conjugates", self.bob_conjugates.size(), self.alice_gens.size()),
        ];
        for (name, got, expected) in sizes {
            if got != expected {
                return Err(Error::InvalidParams(format!("{name} has {got} words, expected {expected}")));
            }
        }
        if self.alice_gens.size() == 0 || self.bob_gens.size() == 0 {
            return Err(Error::InvalidParams("generator tuples must be nonempty".into()));
        }
        for t in [&self.alice_gens, &self.bob_gens, &self.alice_conjugates, &self.bob_conjugates] {
            for w in t.iter() {
                self.platform.check_word(w)?;
            }
        }
        Ok(())
    }

    /// Alice's secret as a group element.
    pub fn alice_secret(&self, key: &AagPrivate) -> Result<Word> {
        self.platform.evaluate(&key.0, &self.alice_gens)
    }

    pub fn bob_secret(&self, key: &AagPrivate) -> Result<Word> {
        self.platform.evaluate(&key.0, &self.bob_gens)
    }
}

/// `a⁻¹ · u(a_1^b, …, a_m^b)`.
pub fn shared_key_alice(instance: &AagInstance, alice: &AagPrivate) -> Result<SharedKey> {
    let p = &instance.platform;
    let a = instance.alice_secret(alice)?;
    let a_b = p.evaluate(&alice.0, &instance.bob_conjugates)?;
    Ok(SharedKey(p.multiply(&p.inverse(&a), &a_b)))
}

/// `(v(b_1^a, …, b_n^a))⁻¹ · b`.
pub fn shared_key_bob(instance: &AagInstance, bob: &AagPrivate) -> Result<SharedKey> {
    let p = &instance.platform;
    let b = instance.bob_secret(bob)?;
    let b_a = p.evaluate(&bob.0, &instance.alice_conjugates)?;
    Ok(SharedKey(p.multiply(&p.inverse(&b_a), &b)))
}

/// Find `x ∈ ⟨subgroup⟩` with `u^x = v` for every pair of `system`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScspStar {
    pub system: ConjugacySystem,
    pub subgroup: WordTuple,
}

impl ScspStar {
    /// Checks `x` against every equation in `platform`.
    pub fn is_solved_by(&self, platform: &Platform, x: &Word) -> bool {
        self.system.pairs.iter().all(|(u, v)| platform.equal(&platform.conjugate(u, x), v))
    }
}

/// The two constrained systems whose solutions yield the key: `b_j^x = b_j^a`
/// with `x ∈ A`, and `a_i^y = a_i^b` with `y ∈ B`.
pub fn aag_to_scsp(instance: &AagInstance) -> (ScspStar, ScspStar) {
    let pairs = |gens: &WordTuple, conj: &WordTuple| -> ConjugacySystem {
        ConjugacySystem::new(gens.iter().cloned().zip(conj.iter().cloned()).collect()).expect("tuples are nonempty")
    };
    (
        ScspStar {
            system: pairs(&instance.bob_gens, &instance.alice_conjugates),
            subgroup: instance.alice_gens.clone(),
        },
        ScspStar { system: pairs(&instance.alice_gens, &instance.bob_conjugates), subgroup: instance.bob_gens.clone() },
    )
}

/// `[u, v]`; equals the shared key when `u` solves the first system inside
/// `A` and `v` the second inside `B`.
pub fn recover_key(instance: &AagInstance, u: &Word, v: &Word) -> SharedKey {
    SharedKey(instance.platform.commutator(u, v))
}

/// `[a, b]` from both private keys, for verification.
pub fn true_key(instance: &AagInstance, alice: &AagPrivate, bob: &AagPrivate) -> Result<SharedKey> {
    let a = instance.alice_secret(alice)?;
    let b = instance.bob_secret(bob)?;
    Ok(SharedKey(instance.platform.commutator(&a, &b)))
}
