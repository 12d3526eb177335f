//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use gtcrypt::raag::CommutationGraph;
use gtcrypt::{Alphabet, Rng, Word, WordTuple};
use rand::Rng as _;

/// Every reduced product of at most `max_factors` generators and inverses.
pub fn products_up_to(gens: &WordTuple, max_factors: usize) -> HashSet<Word> {
    let sym: Vec<Word> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    let mut seen: HashSet<Word> = HashSet::from([Word::identity()]);
    let mut frontier = vec![Word::identity()];
    for _ in 0..max_factors {
        let mut next = Vec::new();
        for w in &frontier {
            for s in &sym {
                let p = w.multiply(s);
                if seen.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// All `x` with `|x| ≤ radius` solving every `u^x = v`, by enumeration.
pub fn brute_conjugators(pairs: &[(Word, Word)], ball: &[Word]) -> Vec<Word> {
    ball.iter().filter(|x| pairs.iter().all(|(u, v)| u.conjugate(x) == *v)).cloned().collect()
}

/// Tuple satisfying the 1/4-condition with lengths in `[lo, hi]`.
pub fn quarter_tuple(alphabet: &Alphabet, k: usize, lo: i64, hi: i64, rng: &mut Rng) -> WordTuple {
    loop {
        let t = alphabet.random_tuple(k, lo, hi, rng).unwrap();
        if t.iter().all(|w| !w.is_identity()) && gtcrypt::stallings::lambda_condition(&t, 0.25).unwrap() {
            return t;
        }
    }
}

/// A random reduced product of `1..=max` generators and inverses.
pub fn random_product(gens: &WordTuple, max: usize, rng: &mut Rng) -> Word {
    let n = rng.gen_range(1..=max);
    let mut w = Word::identity();
    for _ in 0..n {
        let g = &gens.words()[rng.gen_range(0..gens.size())];
        w = if rng.gen_bool(0.5) { w.multiply(g) } else { w.multiply(&g.inverse()) };
    }
    w
}

/// Changes one letter of `w` to a different one, then reduces.
pub fn perturb(w: &Word, rank: u32, rng: &mut Rng) -> Word {
    if w.is_empty() {
        return w.clone();
    }
    let mut v = w.to_signed();
    let i = rng.gen_range(0..v.len());
    loop {
        let g = rng.gen_range(1..=rank as i32);
        let s = if rng.gen_bool(0.5) { g } else { -g };
        if s != v[i] {
            v[i] = s;
            break;
        }
    }
    Word::from_signed(&v).unwrap()
}

/// Conjugacy system generator used for solver comparisons: `n ∈ 1..=3`
/// pairs with `|u_i| ∈ 1..=6` over rank 2, `v_i = u_i^x` for a random
/// `|x| ≤ 5`; with probability 1/2 one right-hand side is replaced by a
/// conjugate under a different short word or by a random word.
pub fn random_system(rng: &mut Rng) -> Vec<(Word, Word)> {
    let a = Alphabet::new(2).unwrap();
    let n = rng.gen_range(1..=3);
    let x = a.random_ball_word(5, rng);
    let mut pairs: Vec<(Word, Word)> = (0..n)
        .map(|_| {
            let u = a.random_word(rng.gen_range(1..=6), rng);
            let v = u.conjugate(&x);
            (u, v)
        })
        .collect();
    if rng.gen_bool(0.5) {
        let j = rng.gen_range(0..n);
        pairs[j].1 = if rng.gen_bool(0.5) {
            pairs[j].0.conjugate(&a.random_ball_word(5, rng))
        } else {
            a.random_word(pairs[j].0.len(), rng)
        };
    }
    pairs
}

/// Breadth-first closure of a word under commuting swaps and free
/// cancellations in `G(Γ)`; true iff the empty word is reachable.
pub fn bfs_trivial(g: &CommutationGraph, start: &[i32]) -> bool {
    let mut seen: HashSet<Vec<i32>> = HashSet::from([start.to_vec()]);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(x) = queue.pop_front() {
        if x.is_empty() {
            return true;
        }
        for i in 0..x.len().saturating_sub(1) {
            let (a, b) = (x[i], x[i + 1]);
            let mut y = x.clone();
            if a == -b {
                y.drain(i..i + 2);
            } else if a.abs() != b.abs() && g.commute(a.unsigned_abs(), b.unsigned_abs()) {
                y.swap(i, i + 1);
            } else {
                continue;
            }
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    false
}

/// Random graph on `n` vertices and a word of length `len` likely to be
/// trivial about half the time: `u · (u with commuting letters shuffled)⁻¹`
/// or a random word.
pub fn random_raag_case(rng: &mut Rng) -> (CommutationGraph, Vec<i32>) {
    let n = rng.gen_range(2..=4u32);
    let edges: Vec<(u32, u32)> =
        (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).filter(|_| rng.gen_bool(0.5)).collect();
    let g = CommutationGraph::new(n, &edges).unwrap();
    let len = rng.gen_range(0..=10usize);
    let word: Vec<i32> = if rng.gen_bool(0.5) && len >= 2 {
        let half: Vec<i32> = (0..len / 2).map(|_| random_letter(n, rng)).collect();
        let mut shuffled = half.clone();
        for _ in 0..4 {
            if shuffled.len() >= 2 {
                let i = rng.gen_range(0..shuffled.len() - 1);
                if g.commute(shuffled[i].unsigned_abs(), shuffled[i + 1].unsigned_abs()) {
                    shuffled.swap(i, i + 1);
                }
            }
        }
        if rng.gen_bool(0.3) && !shuffled.is_empty() {
            let i = rng.gen_range(0..shuffled.len());
            shuffled[i] = random_letter(n, rng);
        }
        half.into_iter().chain(shuffled.into_iter().rev().map(|l| -l)).collect()
    } else {
        (0..len).map(|_| random_letter(n, rng)).collect()
    };
    (g, word)
}

fn random_letter(n: u32, rng: &mut Rng) -> i32 {
    let v = rng.gen_range(1..=n as i32);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}
