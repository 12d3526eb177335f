//! Conjugacy, root, and simultaneous conjugacy search in free groups.
//!
//! Convention: `u^x = x⁻¹ u x`. The solution set of a single equation
//! `u^x = v` is the coset `C(u)·d` of the centralizer, and centralizers of
//! nontrivial elements are infinite cyclic, generated by the primitive root.
//! A system is solved by intersecting these cosets pairwise.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::{primitive_period, rotation_offset};
use crate::stallings::{build_core, NielsenBasis, SubgroupExpression, SubgroupGraph};
use crate::word::{commutator, Word, WordTuple};

/// Equations `u_i^x = v_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacySystem {
    pub pairs: Vec<(Word, Word)>,
}

impl ConjugacySystem {
    pub fn new(pairs: Vec<(Word, Word)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptySystem);
        }
        Ok(ConjugacySystem { pairs })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_solved_by(&self, x: &Word) -> bool {
        self.pairs.iter().all(|(u, v)| u.conjugate(x) == *v)
    }
}

/// Complete description of the solutions of a system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolutionSet {
    NoSolution,
    Unique {
        x: Word,
    },
    /// `{ root^m · translate : m ∈ ℤ }`.
    Coset {
        root: Word,
        translate: Word,
    },
    /// Every equation is `ε^x = ε`.
    Everything,
}

impl SolutionSet {
    pub fn is_solvable(&self) -> bool {
        !matches!(self, SolutionSet::NoSolution)
    }

    /// Some solution, if any.
    pub fn witness(&self) -> Option<Word> {
        match self {
            SolutionSet::NoSolution => None,
            SolutionSet::Unique { x } => Some(x.clone()),
            SolutionSet::Coset { translate, .. } => Some(translate.clone()),
            SolutionSet::Everything => Some(Word::identity()),
        }
    }

    pub fn contains(&self, x: &Word) -> bool {
        match self {
            SolutionSet::NoSolution => false,
            SolutionSet::Unique { x: y } => x == y,
            SolutionSet::Coset { root, translate } => {
                let diff = x.multiply(&translate.inverse());
                diff.is_identity() || power_exponent(root, &diff).is_some()
            }
            SolutionSet::Everything => true,
        }
    }
}

/// True iff `u` and `v` are conjugate.
pub fn conj_decide(u: &Word, v: &Word) -> bool {
    let (_, ku) = u.cyclic_reduce();
    let (_, kv) = v.cyclic_reduce();
    rotation_offset(ku.letters(), kv.letters()).is_some()
}

/// Some `x` with `u^x = v`.
pub fn conj_search(u: &Word, v: &Word) -> Result<Word> {
    let (cu, ku) = u.cyclic_reduce();
    let (cv, kv) = v.cyclic_reduce();
    let i = rotation_offset(ku.letters(), kv.letters()).ok_or(Error::NotConjugate)?;
    // kv = ku rotated by i = p⁻¹ ku p with p = ku[..i].
    let p = ku.prefix(i);
    Ok(cu.multiply(&p).multiply(&cv.inverse()))
}

/// `(p, e)` with `w = p^e` and `p` not a proper power.
pub fn root(w: &Word) -> Result<(Word, u32)> {
    if w.is_identity() {
        return Err(Error::IdentityInput);
    }
    let (c, core) = w.cyclic_reduce();
    let p = primitive_period(core.letters());
    let prim = c.multiply(&core.prefix(p)).multiply(&c.inverse());
    Ok((prim, (core.len() / p) as u32))
}

/// Generator of the (infinite cyclic) centralizer of `w ≠ ε`.
pub fn centralizer_gen(w: &Word) -> Result<Word> {
    root(w).map(|(p, _)| p)
}

/// `s` with `x = p^s`, for `p ≠ ε`.
pub fn power_exponent(p: &Word, x: &Word) -> Option<i64> {
    if x.is_identity() {
        return Some(0);
    }
    let (c, core) = p.cyclic_reduce();
    if core.is_empty() || x.len() < 2 * c.len() {
        return None;
    }
    let rest = x.len() - 2 * c.len();
    if !rest.is_multiple_of(core.len()) {
        return None;
    }
    let s = (rest / core.len()) as i64;
    [s, -s].into_iter().find(|&e| p.pow(e) == *x)
}

/// Intersection of `⟨r1⟩·d1` and `⟨r2⟩·d2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetMeet {
    Empty,
    Single(Word),
    Coset { root: Word, translate: Word },
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b)`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Commuting branch: both roots are powers of a common primitive `p`.
fn meet_commuting(r1: &Word, d1: &Word, r2: &Word, d2: &Word) -> Result<CosetMeet> {
    let p = centralizer_gen(r1)?;
    let alpha = power_exponent(&p, r1).expect("root divides r1").abs();
    let beta = power_exponent(&p, r2).expect("commuting roots share p").abs();
    let Some(s) = power_exponent(&p, &d1.multiply(&d2.inverse())) else {
        return Ok(CosetMeet::Empty);
    };
    // Need t ≡ 0 (mod α) and t ≡ −s (mod β); the meet is p^t·d1.
    let g = gcd(alpha, beta);
    if s % g != 0 {
        return Ok(CosetMeet::Empty);
    }
    let lcm = alpha / g * beta;
    let (_, x, _) = ext_gcd(alpha, beta);
    // α·x ≡ g (mod β), so t = α·x·(−s/g) works.
    let t = (alpha as i128 * x as i128 * (-s / g) as i128).rem_euclid(lcm as i128) as i64;
    Ok(CosetMeet::Coset { root: p.pow(lcm), translate: p.pow(t).multiply(d1) })
}

/// Exact intersection of two cyclic cosets.
///
/// Non-commuting roots meet in at most one point; that point is found by
/// folding `⟨r2⟩` and walking the powers of `r1` against the coset
/// `⟨r2⟩·d2·d1⁻¹`, with cycle detection on the finite vertex set.
pub fn meet_cyclic_cosets(r1: &Word, d1: &Word, r2: &Word, d2: &Word) -> Result<CosetMeet> {
    if r1.is_identity() || r2.is_identity() {
        return Err(Error::IdentityInput);
    }
    if commutator(r1, r2).is_identity() {
        return meet_commuting(r1, d1, r2, d2);
    }
    let h = build_core(&WordTuple(vec![r2.clone()]));
    Ok(match h.cyclic_coset_meet(r1, &d1.multiply(&d2.inverse()))? {
        Some(m) => CosetMeet::Single(r1.pow(m).multiply(d1)),
        None => CosetMeet::Empty,
    })
}

/// Exponent bound for the enumerative meet.
pub fn exponent_bound(r1: &Word, d1: &Word, r2: &Word, d2: &Word) -> i64 {
    2 * (d1.len() + d2.len() + r1.len() + r2.len()) as i64 + 4
}

/// Enumerative meet over `|m|, |k| ≤ exponent_bound`. Used as the oracle
/// for [`meet_cyclic_cosets`] in the non-commuting branch.
pub fn meet_cyclic_cosets_bounded(r1: &Word, d1: &Word, r2: &Word, d2: &Word) -> Result<CosetMeet> {
    if r1.is_identity() || r2.is_identity() {
        return Err(Error::IdentityInput);
    }
    if commutator(r1, r2).is_identity() {
        return meet_commuting(r1, d1, r2, d2);
    }
    let bound = exponent_bound(r1, d1, r2, d2);
    let mut left: HashMap<Word, i64> = HashMap::new();
    for m in -bound..=bound {
        left.insert(r1.pow(m).multiply(d1), m);
    }
    for k in -bound..=bound {
        let rhs = r2.pow(k).multiply(d2);
        if left.contains_key(&rhs) {
            return Ok(CosetMeet::Single(rhs));
        }
    }
    Ok(CosetMeet::Empty)
}

/// Solves a finite system of conjugacy equations in a free group.
pub fn scsp_solve(sys: &ConjugacySystem) -> SolutionSet {
    let mut coset: Option<(Word, Word)> = None;
    for (i, (u, v)) in sys.pairs.iter().enumerate() {
        if u.is_identity() || v.is_identity() {
            if u.is_identity() && v.is_identity() {
                continue;
            }
            return SolutionSet::NoSolution;
        }
        let Ok(d) = conj_search(u, v) else {
            return SolutionSet::NoSolution;
        };
        let r = centralizer_gen(u).expect("u is nontrivial");
        let Some((r0, d0)) = coset.take() else {
            coset = Some((r, d));
            continue;
        };
        match meet_cyclic_cosets(&r0, &d0, &r, &d).expect("roots are nontrivial") {
            CosetMeet::Empty => return SolutionSet::NoSolution,
            CosetMeet::Coset { root, translate } => coset = Some((root, translate)),
            CosetMeet::Single(x) => {
                return if sys.pairs[i + 1..].iter().all(|(u, v)| u.conjugate(&x) == *v) {
                    SolutionSet::Unique { x }
                } else {
                    SolutionSet::NoSolution
                };
            }
        }
    }
    match coset {
        Some((root, translate)) => SolutionSet::Coset { root, translate },
        None => SolutionSet::Everything,
    }
}

/// Prebuilt subgroup data for repeated constrained solving.
pub struct ConstrainedSubgroup {
    pub graph: SubgroupGraph,
    pub basis: NielsenBasis,
}

impl ConstrainedSubgroup {
    pub fn new(gens: &WordTuple) -> Self {
        let graph = build_core(gens);
        let basis = graph.nielsen_basis();
        ConstrainedSubgroup { graph, basis }
    }
}

/// Solves the system with `x` constrained to `⟨gens⟩`; returns an expression
/// of a solution in the defining generators.
pub fn scsp_star(sys: &ConjugacySystem, gens: &WordTuple) -> Option<SubgroupExpression> {
    scsp_star_in(sys, &ConstrainedSubgroup::new(gens))
}

pub fn scsp_star_in(sys: &ConjugacySystem, sub: &ConstrainedSubgroup) -> Option<SubgroupExpression> {
    let x = match scsp_solve(sys) {
        SolutionSet::NoSolution => return None,
        SolutionSet::Everything => Word::identity(),
        SolutionSet::Unique { x } => x,
        SolutionSet::Coset { root, translate } => {
            let m = sub.graph.cyclic_coset_meet(&root, &translate).expect("root is nontrivial")?;
            root.pow(m).multiply(&translate)
        }
    };
    sub.graph.express(&sub.basis, &x).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    const A: i32 = 1;
    const B: i32 = 2;

    fn sys(pairs: &[(&[i32], &[i32])]) -> ConjugacySystem {
        ConjugacySystem::new(pairs.iter().map(|(u, v)| (w(u), w(v))).collect()).unwrap()
    }

    #[test]
    fn decide_examples() {
        assert!(conj_decide(&w(&[A, B]), &w(&[B, A])));
        assert!(!conj_decide(&w(&[A, B]), &w(&[A, -B])));
        assert!(!conj_decide(&w(&[A]), &w(&[B])));
        assert!(conj_decide(&Word::identity(), &Word::identity()));
    }

    #[test]
    fn search_examples() {
        let x = conj_search(&w(&[A, B]), &w(&[B, A])).unwrap();
        assert_eq!(w(&[A, B]).conjugate(&x), w(&[B, A]));
        let u = w(&[A, B, -A, B, B]);
        assert_eq!(u.conjugate(&conj_search(&u, &u).unwrap()), u);
        let x = conj_search(&w(&[B, A, -B]), &w(&[A])).unwrap();
        assert_eq!(x, w(&[B]));
        assert_eq!(conj_search(&w(&[A]), &w(&[B])), Err(Error::NotConjugate));
    }

    #[test]
    fn root_examples() {
        assert_eq!(root(&w(&[A, B, A, B, A, B])).unwrap(), (w(&[A, B]), 3));
        assert_eq!(root(&w(&[A])).unwrap(), (w(&[A]), 1));
        assert_eq!(root(&w(&[A, B, B, -A])).unwrap(), (w(&[A, B, -A]), 2));
        assert_eq!(root(&Word::identity()), Err(Error::IdentityInput));
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(centralizer_gen(&w(&[A, A, A])).unwrap(), w(&[A]));
        assert_eq!(centralizer_gen(&w(&[A, B])).unwrap(), w(&[A, B]));
        assert_eq!(centralizer_gen(&w(&[A, B, B, -A])).unwrap(), w(&[A, B, -A]));
    }

    #[test]
    fn meet_examples() {
        let e = Word::identity();
        assert_eq!(
            meet_cyclic_cosets(&w(&[A]), &e, &w(&[A]), &e).unwrap(),
            CosetMeet::Coset { root: w(&[A]), translate: e.clone() }
        );
        assert_eq!(meet_cyclic_cosets(&w(&[A]), &e, &w(&[B]), &w(&[A])).unwrap(), CosetMeet::Single(w(&[A])));
        assert_eq!(meet_cyclic_cosets(&w(&[A]), &e, &w(&[B]), &e).unwrap(), CosetMeet::Single(e.clone()));
        assert_eq!(meet_cyclic_cosets(&e, &e, &w(&[B]), &e), Err(Error::IdentityInput));
    }

    #[test]
    fn meet_commuting_non_primitive() {
        // ⟨a²⟩ ∩ ⟨a³⟩a = { a^t : t even, t ≡ 1 mod 3 } = ⟨a⁶⟩a⁴.
        let got = meet_cyclic_cosets(&w(&[A, A]), &Word::identity(), &w(&[A, A, A]), &w(&[A])).unwrap();
        let CosetMeet::Coset { root, translate } = got else { panic!("expected coset") };
        assert_eq!(root, w(&[A]).pow(6));
        let t = power_exponent(&w(&[A]), &translate).unwrap();
        assert_eq!(t.rem_euclid(6), 4);
        // ⟨a²⟩ ∩ ⟨a²⟩a = ∅.
        assert_eq!(
            meet_cyclic_cosets(&w(&[A, A]), &Word::identity(), &w(&[A, A]), &w(&[A])).unwrap(),
            CosetMeet::Empty
        );
    }

    #[test]
    fn scsp_examples() {
        let s = sys(&[(&[A], &[A]), (&[B], &[-A, B, A])]);
        assert_eq!(scsp_solve(&s), SolutionSet::Unique { x: w(&[A]) });

        let s = sys(&[(&[A, B], &[B, A])]);
        let sol = scsp_solve(&s);
        assert_eq!(sol, SolutionSet::Coset { root: w(&[A, B]), translate: w(&[A]) });
        for m in -1..=1 {
            assert!(s.is_solved_by(&w(&[A, B]).pow(m).multiply(&w(&[A]))));
        }

        assert_eq!(scsp_solve(&sys(&[(&[A], &[B])])), SolutionSet::NoSolution);
        assert_eq!(scsp_solve(&sys(&[(&[], &[])])), SolutionSet::Everything);
        assert_eq!(scsp_solve(&sys(&[(&[], &[A])])), SolutionSet::NoSolution);
        assert_eq!(ConjugacySystem::new(vec![]), Err(Error::EmptySystem));
    }

    #[test]
    fn scsp_star_examples() {
        let s = sys(&[(&[B], &[-A, B, A])]);
        let ab = WordTuple(vec![w(&[A]), w(&[B])]);
        let e = scsp_star(&s, &ab).unwrap();
        assert!(s.is_solved_by(&e.evaluate(&ab).unwrap()));

        assert_eq!(scsp_star(&s, &WordTuple(vec![w(&[A, A])])), None);

        let s = sys(&[(&[A], &[A]), (&[B], &[-A, B, A])]);
        let e = scsp_star(&s, &WordTuple(vec![w(&[A])])).unwrap();
        assert_eq!(e.factors(), vec![(1, 1)]);
    }

    #[test]
    fn solution_set_json() {
        let s = SolutionSet::Coset { root: w(&[A, B]), translate: w(&[A]) };
        assert_eq!(
            serde_json::to_value(&s).unwrap(),
            serde_json::json!({"kind": "coset", "root": [1, 2], "translate": [1]})
        );
        let sys: ConjugacySystem = serde_json::from_str(r#"{"pairs": [[[1,2],[2,1]]]}"#).unwrap();
        assert_eq!(sys.pairs, vec![(w(&[A, B]), w(&[B, A]))]);
    }
}
