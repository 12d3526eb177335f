//! Right-angled Artin groups `G(Γ)`: generators are the vertices of a simple
//! graph `Γ`, and adjacent vertices commute.
//!
//! Normal forms are computed with one queue per vertex (a heap of pieces):
//! a letter at `v` is pushed onto `v`'s queue and leaves a blocker on the
//! queue of every vertex that does not commute with `v`. Cancellation of
//! `x⁻¹ … x` is possible exactly when the last live entry on `v`'s queue is
//! `x⁻¹` itself; the lexicographically least representative is then read
//! off by repeatedly popping the smallest vertex whose queue front is a
//! letter rather than a blocker.

use std::collections::VecDeque;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::stallings::{build_core, SubgroupExpression};
use crate::word::{free_reduce, Letter, Word, WordTuple};

/// Finite simple graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationGraph {
    n: u32,
    adjacent: Vec<Vec<bool>>,
    /// For each vertex (0-based), the other vertices it does not commute with.
    blockers: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: u32,
    edges: Vec<[u32; 2]>,
}

impl CommutationGraph {
    pub fn new(n: u32, edges: &[(u32, u32)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("graph needs at least one vertex".into()));
        }
        let mut adjacent = vec![vec![false; n as usize]; n as usize];
        for &(i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, count: n });
                }
            }
            if i == j {
                return Err(Error::GraphLoop(i));
            }
            adjacent[i as usize - 1][j as usize - 1] = true;
            adjacent[j as usize - 1][i as usize - 1] = true;
        }
        let blockers =
            (0..n as usize).map(|v| (0..n as usize).filter(|&w| w != v && !adjacent[v][w]).collect()).collect();
        Ok(CommutationGraph { n, adjacent, blockers })
    }

    /// Path `v1 - v2 - ... - vn`.
    pub fn path(n: u32) -> Result<Self> {
        let edges: Vec<(u32, u32)> = (1..n).map(|i| (i, i + 1)).collect();
        Self::new(n, &edges)
    }

    pub fn complete(n: u32) -> Result<Self> {
        let edges: Vec<(u32, u32)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        Self::new(n, &edges)
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        let n = self.n as usize;
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacent[i][j])
            .map(|(i, j)| (i as u32 + 1, j as u32 + 1))
            .collect()
    }

    /// Vertices are 1-based. A vertex commutes with itself.
    pub fn commute(&self, v: u32, w: u32) -> bool {
        v == w || self.adjacent[v as usize - 1][w as usize - 1]
    }

    pub fn is_complete(&self) -> bool {
        self.blockers.iter().all(Vec::is_empty)
    }

    pub fn check(&self, letters: &[Letter]) -> Result<()> {
        match letters.iter().find(|l| l.generator() > self.n) {
            Some(l) => Err(Error::VertexOutOfRange { vertex: l.generator(), count: self.n }),
            None => Ok(()),
        }
    }

    /// Defining relators `[v_i, v_j]` for each edge.
    pub fn relators(&self) -> Vec<Word> {
        self.edges()
            .into_iter()
            .map(|(i, j)| {
                let (a, b) = (Letter::new(i, true), Letter::new(j, true));
                free_reduce(&[a.inverse(), b.inverse(), a, b])
            })
            .collect()
    }
}

impl Serialize for CommutationGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphFile { n: self.n, edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CommutationGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = GraphFile::deserialize(d)?;
        let edges: Vec<(u32, u32)> = f.edges.iter().map(|e| (e[0], e[1])).collect();
        CommutationGraph::new(f.n, &edges).map_err(serde::de::Error::custom)
    }
}

struct Pile<'g> {
    graph: &'g CommutationGraph,
    letters: Vec<Letter>,
    alive: Vec<bool>,
    /// `(letter id, is_letter)`; `false` entries are blockers.
    queues: Vec<VecDeque<(usize, bool)>>,
}

impl<'g> Pile<'g> {
    fn new(graph: &'g CommutationGraph) -> Self {
        Pile { graph, letters: Vec::new(), alive: Vec::new(), queues: vec![VecDeque::new(); graph.n as usize] }
    }

    fn push(&mut self, l: Letter) {
        let v = l.generator() as usize - 1;
        let q = &mut self.queues[v];
        while q.back().is_some_and(|&(id, _)| !self.alive[id]) {
            q.pop_back();
        }
        if let Some(&(id, true)) = q.back() {
            if self.letters[id] == l.inverse() {
                self.alive[id] = false;
                q.pop_back();
                return;
            }
        }
        let id = self.letters.len();
        self.letters.push(l);
        self.alive.push(true);
        q.push_back((id, true));
        for &w in &self.graph.blockers[v] {
            self.queues[w].push_back((id, false));
        }
    }

    fn into_lex_word(mut self) -> Word {
        let mut out = Vec::new();
        loop {
            let mut pick = None;
            for v in 0..self.queues.len() {
                let q = &mut self.queues[v];
                while q.front().is_some_and(|&(id, _)| !self.alive[id]) {
                    q.pop_front();
                }
                if let Some(&(id, true)) = q.front() {
                    pick = Some((v, id));
                    break;
                }
            }
            let Some((v, id)) = pick else { break };
            self.queues[v].pop_front();
            self.alive[id] = false;
            out.push(self.letters[id]);
        }
        debug_assert!(self.alive.iter().all(|a| !a));
        free_reduce(&out)
    }
}

/// Canonical representative of `letters` in `G(Γ)`.
pub fn normal_form(g: &CommutationGraph, letters: &[Letter]) -> Result<Word> {
    g.check(letters)?;
    let mut pile = Pile::new(g);
    for &l in letters {
        pile.push(l);
    }
    Ok(pile.into_lex_word())
}

pub fn is_trivial(g: &CommutationGraph, letters: &[Letter]) -> Result<bool> {
    Ok(normal_form(g, letters)?.is_identity())
}

/// Erases every vertex except the non-adjacent pair `(p, q)`, landing in the
/// free group `F(p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeProjection {
    pub p: u32,
    pub q: u32,
}

pub fn choose_projection(g: &CommutationGraph) -> Result<FreeProjection> {
    for p in 1..=g.n {
        for q in p + 1..=g.n {
            if !g.commute(p, q) {
                return Ok(FreeProjection { p, q });
            }
        }
    }
    Err(Error::GraphComplete)
}

impl FreeProjection {
    /// Image in `F₂` with `p ↦ 1`, `q ↦ 2`.
    pub fn apply(&self, letters: &[Letter]) -> Word {
        let kept: Vec<Letter> = letters
            .iter()
            .filter_map(|l| {
                let g = l.generator();
                if g == self.p {
                    Some(Letter::new(1, l.is_positive()))
                } else if g == self.q {
                    Some(Letter::new(2, l.is_positive()))
                } else {
                    None
                }
            })
            .collect();
        free_reduce(&kept)
    }
}

pub fn project(_g: &CommutationGraph, proj: &FreeProjection, w: &[Letter]) -> Word {
    proj.apply(w)
}

/// Substitutes RAAG words into a subgroup expression and normalizes once.
pub fn evaluate(g: &CommutationGraph, expr: &SubgroupExpression, gens: &[Word]) -> Result<Word> {
    let mut raw: Vec<Letter> = Vec::new();
    for l in expr.as_word().letters() {
        let i = l.generator() as usize;
        let x = gens.get(i - 1).ok_or(Error::ExpressionOutOfRange { index: l.generator(), size: gens.len() })?;
        if l.is_positive() {
            raw.extend_from_slice(x.letters());
        } else {
            raw.extend(x.letters().iter().rev().map(|l| l.inverse()));
        }
    }
    normal_form(g, &raw)
}

/// Membership search through the free quotient: solve in `F₂`, lift the
/// expression, and accept it only if it equals `w` in `G(Γ)`.
pub fn msp_heuristic(g: &CommutationGraph, gens: &[Word], w: &[Letter]) -> Result<Option<SubgroupExpression>> {
    let proj = choose_projection(g)?;
    let images = WordTuple(gens.iter().map(|x| proj.apply(x.letters())).collect());
    let core = build_core(&images);
    let basis = core.nielsen_basis();
    let Ok(expr) = core.express(&basis, &proj.apply(w)) else {
        return Ok(None);
    };
    let lifted = evaluate(g, &expr, gens)?;
    Ok((lifted == normal_form(g, w)?).then_some(expr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;
    use proptest::prelude::*;
    use std::collections::{HashSet, VecDeque};

    /// Closure under commuting swaps and free cancellations; the shortest
    /// word with the smallest vertex sequence.
    fn bfs_normal_form(g: &CommutationGraph, start: Vec<i32>) -> Vec<i32> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start);
        let mut best: Option<Vec<i32>> = None;
        let key = |x: &Vec<i32>| (x.len(), x.iter().map(|v| v.unsigned_abs()).collect::<Vec<_>>());
        while let Some(x) = queue.pop_front() {
            if best.as_ref().is_none_or(|b| key(&x) < key(b)) {
                best = Some(x.clone());
            }
            for i in 0..x.len().saturating_sub(1) {
                let (a, b) = (x[i], x[i + 1]);
                let next = if a == -b {
                    let mut y = x.clone();
                    y.drain(i..i + 2);
                    y
                } else if a.abs() != b.abs() && g.commute(a.unsigned_abs(), b.unsigned_abs()) {
                    let mut y = x.clone();
                    y.swap(i, i + 1);
                    y
                } else {
                    continue;
                };
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        best.unwrap()
    }

    fn graph_and_word() -> impl Strategy<Value = (CommutationGraph, Vec<i32>)> {
        (2u32..=4)
            .prop_flat_map(|n| {
                let pairs: Vec<(u32, u32)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
                let k = pairs.len();
                (
                    Just(n),
                    Just(pairs),
                    prop::collection::vec(any::<bool>(), k),
                    prop::collection::vec((1..=n as i32, any::<bool>()), 0..=10),
                )
            })
            .prop_map(|(n, pairs, mask, word)| {
                let edges: Vec<(u32, u32)> = pairs.into_iter().zip(mask).filter(|p| p.1).map(|p| p.0).collect();
                let word = word.into_iter().map(|(v, s)| if s { v } else { -v }).collect();
                (CommutationGraph::new(n, &edges).unwrap(), word)
            })
    }

    fn letters(v: &[i32]) -> Vec<Letter> {
        v.iter().map(|&x| Letter::from_signed(x).unwrap()).collect()
    }

    #[test]
    fn normal_form_examples() {
        let e12 = CommutationGraph::new(2, &[(1, 2)]).unwrap();
        let free = CommutationGraph::new(2, &[]).unwrap();
        assert_eq!(normal_form(&e12, &letters(&[1, 2, -1])).unwrap(), w(&[2]));
        assert_eq!(normal_form(&free, &letters(&[1, 2, -1])).unwrap(), w(&[1, 2, -1]));
        assert_eq!(normal_form(&e12, &letters(&[2, 1])).unwrap(), w(&[1, 2]));
        assert_eq!(normal_form(&e12, &letters(&[3])), Err(Error::VertexOutOfRange { vertex: 3, count: 2 }));
    }

    #[test]
    fn triviality_examples() {
        let e12 = CommutationGraph::new(2, &[(1, 2)]).unwrap();
        let free = CommutationGraph::new(2, &[]).unwrap();
        let comm = letters(&[1, 2, -1, -2]);
        assert!(is_trivial(&e12, &comm).unwrap());
        assert!(!is_trivial(&free, &comm).unwrap());
        assert!(is_trivial(&e12, &[]).unwrap());
    }

    #[test]
    fn blocked_cancellation() {
        // Path 1-2-3: v1 v3 v1⁻¹ does not reduce, v1 v2 v1⁻¹ does.
        let g = CommutationGraph::path(3).unwrap();
        assert_eq!(normal_form(&g, &letters(&[1, 3, -1])).unwrap(), w(&[1, 3, -1]));
        assert_eq!(normal_form(&g, &letters(&[1, 2, -1])).unwrap(), w(&[2]));
        // 1 and 3 don't commute, so v3 v1 stays; v3 v2 v1 can move v2 left.
        assert_eq!(normal_form(&g, &letters(&[3, 1])).unwrap(), w(&[3, 1]));
        assert_eq!(normal_form(&g, &letters(&[3, 2, 1])).unwrap(), w(&[2, 3, 1]));
    }

    #[test]
    fn projection_examples() {
        let path = CommutationGraph::path(3).unwrap();
        assert_eq!(choose_projection(&path), Ok(FreeProjection { p: 1, q: 3 }));
        assert_eq!(choose_projection(&CommutationGraph::new(2, &[]).unwrap()), Ok(FreeProjection { p: 1, q: 2 }));
        assert_eq!(choose_projection(&CommutationGraph::complete(3).unwrap()), Err(Error::GraphComplete));
        let proj = choose_projection(&path).unwrap();
        assert_eq!(project(&path, &proj, &letters(&[1, 2, 3])), w(&[1, 2]));
        assert_eq!(project(&path, &proj, &letters(&[2])), Word::identity());
        for r in path.relators() {
            assert!(proj.apply(r.letters()).is_identity());
        }
    }

    #[test]
    fn graph_validation_and_json() {
        assert_eq!(CommutationGraph::new(2, &[(1, 1)]), Err(Error::GraphLoop(1)));
        assert_eq!(CommutationGraph::new(2, &[(1, 3)]), Err(Error::VertexOutOfRange { vertex: 3, count: 2 }));
        let g = CommutationGraph::path(3).unwrap();
        let j = serde_json::to_value(&g).unwrap();
        assert_eq!(j, serde_json::json!({"n": 3, "edges": [[1, 2], [2, 3]]}));
        let back: CommutationGraph = serde_json::from_value(j).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn msp_examples() {
        let g = CommutationGraph::path(3).unwrap();
        let gens = vec![w(&[1, 2]), w(&[3])];
        let e = msp_heuristic(&g, &gens, &letters(&[1, 2, 3])).unwrap().unwrap();
        assert_eq!(e.factors(), vec![(1, 1), (2, 1)]);

        let gens = vec![w(&[1]), w(&[3])];
        assert_eq!(msp_heuristic(&g, &gens, &letters(&[2])).unwrap(), None);

        let gens = vec![w(&[1])];
        let e = msp_heuristic(&g, &gens, &letters(&[1, 1, 1])).unwrap().unwrap();
        assert_eq!(e.factors(), vec![(1, 1); 3]);

        assert_eq!(msp_heuristic(&CommutationGraph::complete(2).unwrap(), &gens, &[]), Err(Error::GraphComplete));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn normal_form_matches_rewriting_oracle((g, word) in graph_and_word()) {
            let nf = normal_form(&g, &letters(&word)).unwrap();
            prop_assert_eq!(nf.to_signed(), bfs_normal_form(&g, word));
        }

        #[test]
        fn normal_form_is_idempotent_and_multiplicative((g, word) in graph_and_word()) {
            let nf = normal_form(&g, &letters(&word)).unwrap();
            prop_assert_eq!(normal_form(&g, nf.letters()).unwrap(), nf.clone());
            let inv = nf.inverse();
            let both: Vec<Letter> = letters(&word).into_iter().chain(inv.letters().iter().copied()).collect();
            prop_assert!(is_trivial(&g, &both).unwrap());
        }
    }
}
