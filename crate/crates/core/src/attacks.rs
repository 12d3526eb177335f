//! Attacks on the key exchange: the best-descend length-based attack and the
//! quotient attack through a free `F₂` image of a RAAG.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::aag::{aag_to_scsp, recover_key, AagInstance, Platform, ScspStar, SharedKey};
use crate::conjugacy::{scsp_star, ConjugacySystem};
use crate::error::{Error, Result};
use crate::raag::FreeProjection;
use crate::stallings::{build_core, NielsenBasis, SubgroupExpression, SubgroupGraph};
use crate::word::{Word, WordTuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveKind {
    /// Normal-form length in the platform.
    Ambient,
    /// Length in the Nielsen basis of `⟨a_gens ∪ b_base⟩` (free platform).
    Inner,
    /// Length of the image in `F₂` under the platform's projection.
    Projected,
}

impl FromStr for ObjectiveKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ambient" => Ok(ObjectiveKind::Ambient),
            "inner" => Ok(ObjectiveKind::Inner),
            "projected" => Ok(ObjectiveKind::Projected),
            _ => Err(Error::InvalidParams(format!("unknown objective `{s}`"))),
        }
    }
}

impl fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectiveKind::Ambient => "ambient",
            ObjectiveKind::Inner => "inner",
            ObjectiveKind::Projected => "projected",
        })
    }
}

enum Prepared {
    Ambient,
    Inner { graph: SubgroupGraph, basis: NielsenBasis },
    Projected(FreeProjection),
}

/// An objective function ready to evaluate platform words.
pub struct Objective {
    kind: ObjectiveKind,
    prepared: Prepared,
}

impl Objective {
    /// `z` is the tuple whose subgroup the inner length is measured in.
    pub fn new(kind: ObjectiveKind, platform: &Platform, z: &WordTuple) -> Result<Self> {
        let prepared = match kind {
            ObjectiveKind::Ambient => Prepared::Ambient,
            ObjectiveKind::Inner => {
                if !platform.is_free() {
                    return Err(Error::NotFreePlatform);
                }
                let graph = build_core(z);
                let basis = graph.nielsen_basis();
                Prepared::Inner { graph, basis }
            }
            ObjectiveKind::Projected => Prepared::Projected(platform.projection()?),
        };
        Ok(Objective { kind, prepared })
    }

    pub fn kind(&self) -> ObjectiveKind {
        self.kind
    }

    /// Words are expected in platform normal form. Non-members of the inner
    /// subgroup fall back to their ambient length.
    pub fn evaluate(&self, w: &Word) -> usize {
        match &self.prepared {
            Prepared::Ambient => w.len(),
            Prepared::Inner { graph, basis } => graph.basis_word(basis, w).map(|b| b.len()).unwrap_or(w.len()),
            Prepared::Projected(p) => p.apply(w.letters()).len(),
        }
    }

    pub fn total(&self, ws: &[Word]) -> usize {
        ws.iter().map(|w| self.evaluate(w)).sum()
    }
}

/// Number of basis letters needed to write `w` in `⟨z⟩`.
pub fn inner_length(z: &WordTuple, w: &Word) -> Result<usize> {
    let graph = build_core(z);
    let basis = graph.nielsen_basis();
    Ok(graph.basis_word(&basis, w)?.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LbaStep {
    pub index: u32,
    pub sign: i32,
    pub before: usize,
    pub after: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    NoDescent,
    IterationCap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LbaOutcome {
    /// `g` with `b_j^g = c_j`, as an expression over `a_gens`.
    Success {
        conjugator: SubgroupExpression,
    },
    Failure {
        reason: FailureReason,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LbaTrace {
    pub steps: Vec<LbaStep>,
    pub outcome: LbaOutcome,
}

impl LbaTrace {
    pub fn conjugator(&self) -> Option<&SubgroupExpression> {
        match &self.outcome {
            LbaOutcome::Success { conjugator } => Some(conjugator),
            LbaOutcome::Failure { .. } => None,
        }
    }
}

/// Default iteration cap: four times the total length of the targets.
pub fn default_max_iters(c_targets: &[Word]) -> usize {
    4 * c_targets.iter().map(Word::len).sum::<usize>()
}

/// Best-descend LBA. Repeatedly conjugates every target by the `a_i^ε`
/// minimizing the summed objective; stops when every choice strictly
/// increases it or after `max_iters` accepted steps, then checks whether the
/// targets have reached `b_base`.
pub fn lba_best_descend(
    platform: &Platform,
    a_gens: &WordTuple,
    b_base: &[Word],
    c_targets: &[Word],
    objective: &Objective,
    max_iters: usize,
) -> Result<LbaTrace> {
    if b_base.len() != c_targets.len() {
        return Err(Error::DimensionMismatch { expected: b_base.len(), got: c_targets.len() });
    }
    if max_iters == 0 {
        return Err(Error::InvalidParams("max_iters must be at least 1".into()));
    }
    let moves: Vec<(u32, i32, Word)> = a_gens
        .iter()
        .enumerate()
        .flat_map(|(i, a)| [(i as u32 + 1, 1, a.clone()), (i as u32 + 1, -1, platform.inverse(a))])
        .collect();
    let b: Vec<Word> = b_base.iter().map(|w| platform.normalize(w.letters())).collect::<Result<_>>()?;
    let mut c: Vec<Word> = c_targets.iter().map(|w| platform.normalize(w.letters())).collect::<Result<_>>()?;
    let mut current = objective.total(&c);
    let mut x: Vec<(u32, i32)> = Vec::new();
    let mut steps = Vec::new();
    let mut reason = FailureReason::IterationCap;

    for _ in 0..max_iters {
        let mut best: Option<(usize, usize, Vec<Word>)> = None;
        for (m, (_, _, a)) in moves.iter().enumerate() {
            let next: Vec<Word> = c.iter().map(|cj| platform.conjugate(cj, a)).collect();
            let l = objective.total(&next);
            if best.as_ref().is_none_or(|(bl, _, _)| l < *bl) {
                best = Some((l, m, next));
            }
        }
        let Some((l, m, next)) = best else {
            reason = FailureReason::NoDescent;
            break;
        };
        if l > current {
            reason = FailureReason::NoDescent;
            break;
        }
        let (i, s, _) = &moves[m];
        steps.push(LbaStep { index: *i, sign: *s, before: current, after: l });
        x.push((*i, *s));
        c = next;
        current = l;
    }

    let outcome = if c == b {
        // c = x⁻¹ c_0 x = b, so b^{x⁻¹} = c_0.
        let g = SubgroupExpression::from_factors(&x)?.inverse();
        let gw = platform.evaluate(&g, a_gens)?;
        let verified = b.iter().zip(c_targets).all(|(bj, cj)| platform.equal(&platform.conjugate(bj, &gw), cj));
        if verified {
            LbaOutcome::Success { conjugator: g }
        } else {
            LbaOutcome::Failure { reason }
        }
    } else {
        LbaOutcome::Failure { reason }
    };
    Ok(LbaTrace { steps, outcome })
}

/// LBA as an SCSP* solver: finds `x ∈ ⟨subgroup⟩` with `u_j^x = v_j`. The
/// inner length is measured in `⟨subgroup ∪ {u_j}⟩`.
pub fn lba_solve_scsp_star_traced(
    platform: &Platform,
    problem: &ScspStar,
    objective: ObjectiveKind,
    max_iters: Option<usize>,
) -> Result<LbaTrace> {
    let (b, c): (Vec<Word>, Vec<Word>) = problem.system.pairs.iter().cloned().unzip();
    let z = WordTuple(problem.subgroup.iter().chain(b.iter()).cloned().collect());
    let obj = Objective::new(objective, platform, &z)?;
    let cap = max_iters.unwrap_or_else(|| default_max_iters(&c)).max(1);
    lba_best_descend(platform, &problem.subgroup, &b, &c, &obj, cap)
}

pub fn lba_solve_scsp_star(
    platform: &Platform,
    problem: &ScspStar,
    objective: ObjectiveKind,
    max_iters: Option<usize>,
) -> Result<Option<SubgroupExpression>> {
    Ok(lba_solve_scsp_star_traced(platform, problem, objective, max_iters)?.conjugator().cloned())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackKind {
    Lba,
    Qa,
}

impl FromStr for AttackKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lba" => Ok(AttackKind::Lba),
            "qa" => Ok(AttackKind::Qa),
            _ => Err(Error::UnknownAttack(s.to_string())),
        }
    }
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttackKind::Lba => "lba",
            AttackKind::Qa => "qa",
        })
    }
}

/// Result of one attack on one instance. `verified` means the recovered
/// conjugators were checked by substitution in the platform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackResult {
    pub key: Option<SharedKey>,
    pub steps: usize,
    pub verified: bool,
}

/// Runs LBA on both constrained systems and combines the solutions.
pub fn lba_attack(instance: &AagInstance, objective: ObjectiveKind, max_iters: Option<usize>) -> Result<AttackResult> {
    let p = &instance.platform;
    let (sa, sb) = aag_to_scsp(instance);
    let ta = lba_solve_scsp_star_traced(p, &sa, objective, max_iters)?;
    let mut steps = ta.steps.len();
    let Some(ea) = ta.conjugator() else {
        return Ok(AttackResult { key: None, steps, verified: false });
    };
    let tb = lba_solve_scsp_star_traced(p, &sb, objective, max_iters)?;
    steps += tb.steps.len();
    let Some(eb) = tb.conjugator() else {
        return Ok(AttackResult { key: None, steps, verified: false });
    };
    let u = p.evaluate(ea, &sa.subgroup)?;
    let v = p.evaluate(eb, &sb.subgroup)?;
    let verified = sa.is_solved_by(p, &u) && sb.is_solved_by(p, &v);
    let key = verified.then(|| recover_key(instance, &u, &v));
    Ok(AttackResult { key, steps, verified })
}

fn project_problem(proj: &FreeProjection, problem: &ScspStar) -> (ConjugacySystem, WordTuple) {
    let pairs = problem.system.pairs.iter().map(|(u, v)| (proj.apply(u.letters()), proj.apply(v.letters()))).collect();
    let gens = WordTuple(problem.subgroup.iter().map(|g| proj.apply(g.letters())).collect());
    (ConjugacySystem::new(pairs).expect("nonempty system"), gens)
}

/// Solves a constrained system through the `F₂` image and lifts the result;
/// absent unless the lift solves the original system.
pub fn quotient_solve(platform: &Platform, proj: &FreeProjection, problem: &ScspStar) -> Option<Word> {
    let (sys, gens) = project_problem(proj, problem);
    let expr = scsp_star(&sys, &gens)?;
    let x = platform.evaluate(&expr, &problem.subgroup).ok()?;
    problem.is_solved_by(platform, &x).then_some(x)
}

/// The quotient attack on a RAAG instance. Never returns a wrong key: both
/// lifted conjugators are verified in `G(Γ)` before the key is formed.
pub fn quotient_attack(instance: &AagInstance) -> Result<Option<SharedKey>> {
    Ok(quotient_attack_result(instance)?.key)
}

pub fn quotient_attack_result(instance: &AagInstance) -> Result<AttackResult> {
    let p = &instance.platform;
    if !matches!(p, Platform::Raag(_)) {
        return Err(Error::NotRaagPlatform);
    }
    let proj = p.projection()?;
    let (sa, sb) = aag_to_scsp(instance);
    let Some(u) = quotient_solve(p, &proj, &sa) else {
        return Ok(AttackResult { key: None, steps: 1, verified: false });
    };
    let Some(v) = quotient_solve(p, &proj, &sb) else {
        return Ok(AttackResult { key: None, steps: 2, verified: false });
    };
    Ok(AttackResult { key: Some(recover_key(instance, &u, &v)), steps: 2, verified: true })
}

/// Runs the named attack, timing it.
pub fn run_attack(
    instance: &AagInstance,
    attack: AttackKind,
    objective: ObjectiveKind,
    max_iters: Option<usize>,
) -> Result<(AttackResult, f64)> {
    let start = Instant::now();
    let r = match attack {
        AttackKind::Lba => lba_attack(instance, objective, max_iters)?,
        AttackKind::Qa => quotient_attack_result(instance)?,
    };
    Ok((r, start.elapsed().as_secs_f64() * 1000.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    Failure,
}

/// Report written by the command-line attack.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttackReport {
    pub instance_ref: String,
    pub attack: AttackKind,
    pub outcome: Outcome,
    pub steps: usize,
    pub wall_time_ms: f64,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<SharedKey>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<ObjectiveKind>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aag::{build_instance, keygen, true_key, AagParams, AagPrivate};
    use crate::raag::CommutationGraph;
    use crate::word::w;

    const A: i32 = 1;
    const B: i32 = 2;

    fn free2() -> Platform {
        Platform::free(2).unwrap()
    }

    fn t(ws: &[&[i32]]) -> WordTuple {
        WordTuple(ws.iter().map(|x| w(x)).collect())
    }

    #[test]
    fn descends_to_conjugator() {
        let p = free2();
        let a = t(&[&[A]]);
        let obj = Objective::new(ObjectiveKind::Ambient, &p, &a).unwrap();
        let c = w(&[-A, -A, B, A, A]);
        let tr = lba_best_descend(&p, &a, &[w(&[B])], std::slice::from_ref(&c), &obj, 50).unwrap();
        let vals: Vec<usize> = std::iter::once(tr.steps[0].before).chain(tr.steps.iter().map(|s| s.after)).collect();
        assert_eq!(vals, vec![5, 3, 1]);
        let g = p.evaluate(tr.conjugator().unwrap(), &a).unwrap();
        assert_eq!(g, w(&[A, A]));
        assert_eq!(w(&[B]).conjugate(&g), c);
    }

    #[test]
    fn identity_targets() {
        let p = free2();
        let a = t(&[&[A, B]]);
        let obj = Objective::new(ObjectiveKind::Ambient, &p, &a).unwrap();
        let tr = lba_best_descend(&p, &a, &[w(&[B])], &[w(&[B])], &obj, 10).unwrap();
        assert!(tr.steps.is_empty());
        assert_eq!(tr.conjugator(), Some(&SubgroupExpression::identity()));
    }

    #[test]
    fn impossible_target_fails() {
        let p = free2();
        let a = t(&[&[A]]);
        let obj = Objective::new(ObjectiveKind::Ambient, &p, &a).unwrap();
        let tr = lba_best_descend(&p, &a, &[w(&[B])], &[w(&[A])], &obj, 50).unwrap();
        assert!(matches!(tr.outcome, LbaOutcome::Failure { .. }));
        let err = lba_best_descend(&p, &a, &[w(&[B])], &[], &obj, 50);
        assert_eq!(err, Err(Error::DimensionMismatch { expected: 1, got: 0 }));
    }

    #[test]
    fn inner_length_examples() {
        assert_eq!(inner_length(&t(&[&[A, A, B], &[B, B, A]]), &w(&[A, A, B, B, B, A])), Ok(2));
        assert_eq!(inner_length(&t(&[&[A]]), &w(&[A; 5])), Ok(5));
        let word = w(&[A, -B, -B, A, B]);
        assert_eq!(inner_length(&t(&[&[A], &[B]]), &word), Ok(word.len()));
        assert_eq!(inner_length(&t(&[&[A]]), &w(&[B])), Err(Error::NotMember));
    }

    #[test]
    fn scsp_star_wrapper() {
        let p = free2();
        let problem =
            ScspStar { system: ConjugacySystem::new(vec![(w(&[A, B]), w(&[A, B]))]).unwrap(), subgroup: t(&[&[A, A]]) };
        assert_eq!(
            lba_solve_scsp_star(&p, &problem, ObjectiveKind::Inner, None).unwrap(),
            Some(SubgroupExpression::identity())
        );
        let commuting =
            ScspStar { system: ConjugacySystem::new(vec![(w(&[A]), w(&[A]))]).unwrap(), subgroup: t(&[&[B]]) };
        let shifted = ScspStar {
            system: ConjugacySystem::new(vec![(w(&[A]), w(&[-B, A, B, B]))]).unwrap(),
            subgroup: t(&[&[B]]),
        };
        assert_eq!(scsp_star(&shifted.system, &shifted.subgroup), None);
        assert_eq!(lba_solve_scsp_star(&p, &shifted, ObjectiveKind::Inner, Some(50)).unwrap(), None);
        assert!(lba_solve_scsp_star(&p, &commuting, ObjectiveKind::Ambient, None).unwrap().is_some());
    }

    #[test]
    fn lba_attack_recovers_free_keys() {
        let p = free2();
        let params = AagParams::default().with_lengths(20, 5);
        let mut hits = 0;
        for seed in 0..20 {
            let (inst, a, b) = keygen(&p, &params, seed).unwrap();
            let r = lba_attack(&inst, ObjectiveKind::Inner, None).unwrap();
            if let Some(k) = r.key {
                assert_eq!(k, true_key(&inst, &a, &b).unwrap());
                hits += 1;
            }
        }
        assert!(hits >= 15, "{hits}");
    }

    #[test]
    fn inner_objective_needs_free_platform() {
        let p = Platform::path_raag(3).unwrap();
        assert!(matches!(Objective::new(ObjectiveKind::Inner, &p, &t(&[&[1]])), Err(Error::NotFreePlatform)));
    }

    #[test]
    fn quotient_attack_on_path_graph() {
        let p = Platform::path_raag(4).unwrap();
        let params = AagParams::default().with_lengths(20, 5);
        let mut hits = 0;
        for seed in 0..20 {
            let (inst, a, b) = keygen(&p, &params, seed).unwrap();
            if let Some(k) = quotient_attack(&inst).unwrap() {
                assert_eq!(k, true_key(&inst, &a, &b).unwrap());
                hits += 1;
            }
        }
        assert!(hits >= 15, "{hits}");
        let (inst, _, _) = keygen(&free2(), &params, 0).unwrap();
        assert_eq!(quotient_attack(&inst), Err(Error::NotRaagPlatform));
        let complete = Platform::Raag(CommutationGraph::complete(3).unwrap());
        let (inst, _, _) = keygen(&complete, &params, 0).unwrap();
        assert_eq!(quotient_attack(&inst), Err(Error::GraphComplete));
    }

    #[test]
    fn kernel_key_is_rejected() {
        // Γ has the single edge {1,2}; the projection keeps (1,3) and erases
        // v2, which does not commute with v3.
        let p = Platform::Raag(CommutationGraph::new(3, &[(1, 2)]).unwrap());
        let alice_gens = t(&[&[2], &[1, 3]]);
        let bob_gens = t(&[&[3, 1], &[3, 3, 1]]);
        let a = SubgroupExpression::from_factors(&[(1, 1), (1, 1)]).unwrap();
        let b = SubgroupExpression::from_factors(&[(1, 1), (2, -1)]).unwrap();
        let inst = build_instance(&p, AagParams::default(), 0, alice_gens, bob_gens, &a, &b).unwrap();
        assert_eq!(quotient_attack(&inst).unwrap(), None);
        let truth = true_key(&inst, &AagPrivate(a), &AagPrivate(b)).unwrap();
        assert!(!truth.0.is_identity());
    }
}
