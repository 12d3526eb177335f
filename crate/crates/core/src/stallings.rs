//! Stallings foldings for finitely generated subgroups of a free group.
//!
//! A subgroup `⟨w_1, …, w_k⟩` is represented by its folded core graph: a
//! based, labeled graph whose reduced closed paths at the base spell exactly
//! the subgroup's elements. Folding runs over a union-find of vertices.
//!
//! Every edge also carries an auxiliary label, a word over the *defining
//! generators*, such that the product of auxiliary labels along any closed
//! path at the base is an expression of the path's label in those
//! generators. Folds keep this invariant by a gauge change at the absorbed
//! vertex, which is what makes membership *search* fall out of tracing.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::{cancellation, free_reduce, Letter, Word, WordTuple};

/// A word in the defining generators of a subgroup: factor `(i, ±1)` means
/// the `i`-th generator (1-based) or its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SubgroupExpression(Word);

impl SubgroupExpression {
    pub fn identity() -> Self {
        SubgroupExpression(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        SubgroupExpression(w)
    }

    pub fn from_factors(factors: &[(u32, i32)]) -> Result<Self> {
        let letters = factors
            .iter()
            .map(|&(i, s)| {
                if i == 0 || (s != 1 && s != -1) {
                    Err(Error::InvalidParams(format!("bad factor ({i}, {s})")))
                } else {
                    Ok(Letter::new(i, s > 0))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SubgroupExpression(free_reduce(&letters)))
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn factors(&self) -> Vec<(u32, i32)> {
        self.0.letters().iter().map(|l| (l.generator(), l.sign())).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        SubgroupExpression(self.0.inverse())
    }

    pub fn multiply(&self, other: &Self) -> Self {
        SubgroupExpression(self.0.multiply(&other.0))
    }

    /// Substitutes `tuple` into the expression and reduces in the free group.
    pub fn evaluate(&self, tuple: &WordTuple) -> Result<Word> {
        self.evaluate_with(tuple.words(), |acc, x| acc.multiply(x), Word::inverse, Word::identity())
    }

    /// Substitution into an arbitrary group given by `mul`/`inv`.
    pub fn evaluate_with<T, M, I>(&self, values: &[T], mul: M, inv: I, one: T) -> Result<T>
    where
        M: Fn(&T, &T) -> T,
        I: Fn(&T) -> T,
    {
        let mut acc = one;
        for l in self.0.letters() {
            let i = l.generator() as usize;
            let v =
                values.get(i - 1).ok_or(Error::ExpressionOutOfRange { index: l.generator(), size: values.len() })?;
            acc = if l.is_positive() { mul(&acc, v) } else { mul(&acc, &inv(v)) };
        }
        Ok(acc)
    }
}

impl fmt::Display for SubgroupExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<String> = self
            .0
            .letters()
            .iter()
            .map(|l| if l.is_positive() { format!("y{}", l.generator()) } else { format!("y{}⁻¹", l.generator()) })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

impl Serialize for SubgroupExpression {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[i64; 2]> = self.factors().into_iter().map(|(i, e)| [i as i64, e as i64]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubgroupExpression {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(u32, i32)>::deserialize(d)?;
        SubgroupExpression::from_factors(&pairs).map_err(serde::de::Error::custom)
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new() -> Self {
        UnionFind { parent: Vec::new(), size: Vec::new() }
    }

    fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.size.push(1);
        id
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; returns `(root, absorbed)`.
    fn union(&mut self, a: usize, b: usize) -> (usize, usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        (big, small)
    }
}

#[derive(Clone, Debug)]
struct RawEdge {
    src: usize,
    dst: usize,
    generator: u32,
    aux: Word,
    alive: bool,
}

/// Mutable graph under folding.
struct Folder {
    uf: UnionFind,
    adj: Vec<Vec<usize>>,
    edges: Vec<RawEdge>,
    removed: Vec<bool>,
    base: usize,
    track_aux: bool,
}

/// One directed traversal of an edge, as seen from its start vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Step {
    target: usize,
    edge: usize,
    forward: bool,
}

impl Folder {
    fn new(track_aux: bool) -> Self {
        let mut uf = UnionFind::new();
        let base = uf.push();
        Folder { uf, adj: vec![Vec::new()], edges: Vec::new(), removed: vec![false], base, track_aux }
    }

    fn new_vertex(&mut self) -> usize {
        let v = self.uf.push();
        self.adj.push(Vec::new());
        self.removed.push(false);
        v
    }

    fn add_edge(&mut self, from: usize, to: usize, letter: Letter, aux: Word) {
        let (src, dst, aux) = if letter.is_positive() { (from, to, aux) } else { (to, from, aux.inverse()) };
        let id = self.edges.len();
        self.edges.push(RawEdge { src, dst, generator: letter.generator(), aux, alive: true });
        self.adj[src].push(id);
        if dst != src {
            self.adj[dst].push(id);
        }
    }

    /// Adds a path spelling `word` from `start`; closes it at `end` if given.
    fn add_path(&mut self, start: usize, word: &Word, end: Option<usize>, first_aux: Word) -> usize {
        let letters = word.letters();
        let mut cur = start;
        for (i, &l) in letters.iter().enumerate() {
            let next =
                if i + 1 == letters.len() { end.unwrap_or_else(|| self.new_vertex()) } else { self.new_vertex() };
            let aux = if i == 0 { first_aux.clone() } else { Word::identity() };
            self.add_edge(cur, next, l, aux);
            cur = next;
        }
        cur
    }

    fn outgoing(&mut self, v: usize, e: usize) -> [Option<(Letter, Step)>; 2] {
        let edge = &self.edges[e];
        let (g, s, d) = (edge.generator, edge.src, edge.dst);
        let (s, d) = (self.uf.find(s), self.uf.find(d));
        let fwd = (s == v).then(|| (Letter::new(g, true), Step { target: d, edge: e, forward: true }));
        let bwd = (d == v).then(|| (Letter::new(g, false), Step { target: s, edge: e, forward: false }));
        [fwd, bwd]
    }

    fn step_aux(&self, step: Step) -> Word {
        let a = &self.edges[step.edge].aux;
        if step.forward {
            a.clone()
        } else {
            a.inverse()
        }
    }

    /// Re-labels auxiliary words at `z` by `h`: outgoing edges get `h⁻¹·`,
    /// incoming edges get `·h`. Labels of closed paths not based at `z` are
    /// unchanged.
    fn gauge(&mut self, z: usize, h: &Word) {
        if h.is_identity() {
            return;
        }
        let hinv = h.inverse();
        let mut ids = self.adj[z].clone();
        ids.sort_unstable();
        ids.dedup();
        for e in ids {
            if !self.edges[e].alive {
                continue;
            }
            let s = self.uf.find(self.edges[e].src);
            let d = self.uf.find(self.edges[e].dst);
            let mut aux = self.edges[e].aux.clone();
            if s == z {
                aux = hinv.multiply(&aux);
            }
            if d == z {
                aux = aux.multiply(h);
            }
            self.edges[e].aux = aux;
        }
    }

    fn kill(&mut self, e: usize) {
        self.edges[e].alive = false;
    }

    /// Finds two edges leaving `v` with the same letter.
    fn find_conflict(&mut self, v: usize) -> Option<(Step, Step)> {
        let ids: Vec<usize> = {
            let edges = &self.edges;
            let mut ids: Vec<usize> = self.adj[v].iter().copied().filter(|&e| edges[e].alive).collect();
            ids.sort_unstable();
            ids.dedup();
            ids
        };
        self.adj[v] = ids.clone();
        let mut seen: std::collections::HashMap<Letter, Step> = std::collections::HashMap::new();
        for e in ids {
            for (letter, step) in self.outgoing(v, e).into_iter().flatten() {
                if let Some(prev) = seen.get(&letter) {
                    if prev.edge != step.edge {
                        return Some((*prev, step));
                    }
                } else {
                    seen.insert(letter, step);
                }
            }
        }
        None
    }

    fn fold(&mut self) {
        let mut work: Vec<usize> = (0..self.adj.len()).collect();
        while let Some(v) = work.pop() {
            let v = self.uf.find(v);
            while let Some((keep, other)) = self.find_conflict(v) {
                let (u1, u2) = (self.uf.find(keep.target), self.uf.find(other.target));
                if u1 == u2 {
                    // Parallel edges with equal labels: the closed path through
                    // both evaluates to the identity, so dropping one is sound.
                    self.kill(other.edge);
                    continue;
                }
                let base = self.uf.find(self.base);
                let g1 = self.step_aux(keep);
                let g2 = self.step_aux(other);
                let dropped = if u2 != base {
                    if self.track_aux {
                        self.gauge(u2, &g2.inverse().multiply(&g1));
                    }
                    other.edge
                } else {
                    if self.track_aux {
                        self.gauge(u1, &g1.inverse().multiply(&g2));
                    }
                    keep.edge
                };
                self.kill(dropped);
                let (root, absorbed) = self.uf.union(u1, u2);
                let moved = std::mem::take(&mut self.adj[absorbed]);
                self.adj[root].extend(moved);
                work.push(root);
            }
        }
    }

    fn live_vertices(&mut self) -> Vec<usize> {
        (0..self.adj.len()).filter(|&v| self.uf.find(v) == v && !self.removed[v]).collect()
    }

    fn degree(&mut self, v: usize) -> usize {
        let ids = self.adj[v].clone();
        let mut deg = 0;
        for e in ids {
            if !self.edges[e].alive {
                continue;
            }
            if self.uf.find(self.edges[e].src) == v {
                deg += 1;
            }
            if self.uf.find(self.edges[e].dst) == v {
                deg += 1;
            }
        }
        deg
    }

    /// Removes hanging trees away from the base.
    fn trim(&mut self) {
        let base = self.uf.find(self.base);
        let mut queue: VecDeque<usize> = self.live_vertices().into_iter().collect();
        while let Some(v) = queue.pop_front() {
            if v == base || self.removed[v] || self.uf.find(v) != v {
                continue;
            }
            if self.degree(v) <= 1 {
                self.removed[v] = true;
                let ids = self.adj[v].clone();
                for e in ids {
                    if self.edges[e].alive {
                        self.edges[e].alive = false;
                        let s = self.uf.find(self.edges[e].src);
                        let d = self.uf.find(self.edges[e].dst);
                        queue.push_back(if s == v { d } else { s });
                    }
                }
            }
        }
    }

    /// Deterministic compact form: vertices numbered breadth-first from the
    /// base, exploring letters in slot order.
    fn compact(mut self, max_generator: u32) -> (Automaton, Vec<usize>) {
        let base = self.uf.find(self.base);
        let slots = 2 * max_generator as usize;
        let n_raw = self.adj.len();
        // Per-root transitions.
        let mut raw_trans: Vec<Vec<Option<Step>>> = vec![Vec::new(); n_raw];
        for v in self.live_vertices() {
            let mut row = vec![None; slots];
            let ids = self.adj[v].clone();
            for e in ids {
                if !self.edges[e].alive {
                    continue;
                }
                for (letter, step) in self.outgoing(v, e).into_iter().flatten() {
                    row[letter.slot()] = Some(step);
                }
            }
            raw_trans[v] = row;
        }
        let mut index = vec![usize::MAX; n_raw];
        let mut order = vec![base];
        index[base] = 0;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for step in raw_trans[v].iter().flatten() {
                if index[step.target] == usize::MAX {
                    index[step.target] = order.len();
                    order.push(step.target);
                }
            }
        }
        let mut edge_ids: Vec<usize> = Vec::new();
        for &v in &order {
            for step in raw_trans[v].iter().flatten() {
                if step.forward {
                    edge_ids.push(step.edge);
                }
            }
        }
        let mut edges: Vec<Edge> = edge_ids
            .iter()
            .map(|&e| {
                let src = index[self.uf.find(self.edges[e].src)];
                let dst = index[self.uf.find(self.edges[e].dst)];
                Edge { src, dst, generator: self.edges[e].generator, aux: self.edges[e].aux.clone() }
            })
            .collect();
        edges.sort_by_key(|a| (a.src, a.generator, a.dst));
        let automaton = Automaton::from_edges(order.len(), edges, max_generator);
        let map = (0..n_raw).map(|v| {
            let r = self.uf.find(v);
            index[r]
        });
        let map = map.collect();
        (automaton, map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Edge {
    src: usize,
    dst: usize,
    generator: u32,
    aux: Word,
}

/// A folded graph in compact form with a transition table.
#[derive(Clone, Debug)]
struct Automaton {
    vertex_count: usize,
    edges: Vec<Edge>,
    slots: usize,
    trans: Vec<Vec<Option<(usize, usize, bool)>>>,
}

impl Automaton {
    fn from_edges(vertex_count: usize, edges: Vec<Edge>, max_generator: u32) -> Self {
        let slots = 2 * max_generator as usize;
        let mut trans = vec![vec![None; slots]; vertex_count];
        for (i, e) in edges.iter().enumerate() {
            let f = Letter::new(e.generator, true).slot();
            let b = Letter::new(e.generator, false).slot();
            trans[e.src][f] = Some((e.dst, i, true));
            trans[e.dst][b] = Some((e.src, i, false));
        }
        Automaton { vertex_count, edges, slots, trans }
    }

    #[inline]
    fn step(&self, v: usize, l: Letter) -> Option<(usize, usize, bool)> {
        let s = l.slot();
        if s >= self.slots {
            None
        } else {
            self.trans[v][s]
        }
    }

    fn read(&self, v: usize, w: &[Letter]) -> Option<usize> {
        w.iter().try_fold(v, |v, &l| self.step(v, l).map(|t| t.0))
    }
}

/// Folded core graph of a finitely generated subgroup.
#[derive(Clone, Debug)]
pub struct SubgroupGraph {
    generators: WordTuple,
    automaton: Automaton,
}

/// A free basis of the subgroup read off a breadth-first spanning tree,
/// together with expressions of each basis element in the defining tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NielsenBasis {
    pub basis: Vec<Word>,
    pub expressions: Vec<SubgroupExpression>,
    /// For each graph edge: `Some((basis index, flipped))` if it is off-tree.
    edge_basis: Vec<Option<(usize, bool)>>,
}

impl NielsenBasis {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn as_tuple(&self) -> WordTuple {
        WordTuple(self.basis.clone())
    }
}

/// Builds the folded core graph of `⟨gens⟩`. Identity components are skipped
/// but keep their index in the defining tuple.
pub fn build_core(gens: &WordTuple) -> SubgroupGraph {
    let mut folder = Folder::new(true);
    let base = folder.base;
    for (i, g) in gens.iter().enumerate() {
        if g.is_identity() {
            continue;
        }
        let y = Word::letter(Letter::new(i as u32 + 1, true));
        folder.add_path(base, g, Some(base), y);
    }
    folder.fold();
    folder.trim();
    let (automaton, _) = folder.compact(gens.max_generator().max(1));
    SubgroupGraph { generators: gens.clone(), automaton }
}

impl SubgroupGraph {
    pub fn generators(&self) -> &WordTuple {
        &self.generators
    }

    pub fn vertex_count(&self) -> usize {
        self.automaton.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.automaton.edges.len()
    }

    /// Edges as `(src, dst, generator)`, in canonical order.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        self.automaton.edges.iter().map(|e| (e.src, e.dst, e.generator)).collect()
    }

    /// First Betti number of the core graph, i.e. the rank of the subgroup.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    fn trace(&self, w: &Word) -> Option<Vec<(usize, bool)>> {
        let mut v = 0;
        let mut path = Vec::with_capacity(w.len());
        for &l in w.letters() {
            let (t, e, fwd) = self.automaton.step(v, l)?;
            path.push((e, fwd));
            v = t;
        }
        (v == 0).then_some(path)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.automaton.read(0, w.letters()) == Some(0)
    }

    /// Canonical serialization.
    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertex_count(),
            base: 0,
            edges: self.edges().into_iter().map(|(s, d, g)| [s, d, g as usize]).collect(),
        }
    }

    pub fn nielsen_basis(&self) -> NielsenBasis {
        let n = self.automaton.vertex_count;
        let mut tree_word: Vec<Option<Word>> = vec![None; n];
        let mut tree_aux: Vec<Word> = vec![Word::identity(); n];
        let mut tree_edge = vec![false; self.automaton.edges.len()];
        tree_word[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for slot in 0..self.automaton.slots {
                if let Some((t, e, fwd)) = self.automaton.trans[v][slot] {
                    if tree_word[t].is_none() {
                        let edge = &self.automaton.edges[e];
                        let l = Letter::from_slot(slot);
                        let aux = if fwd { edge.aux.clone() } else { edge.aux.inverse() };
                        tree_word[t] = Some(tree_word[v].as_ref().unwrap().multiply(&Word::letter(l)));
                        tree_aux[t] = tree_aux[v].multiply(&aux);
                        tree_edge[e] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut items: Vec<(usize, Word, SubgroupExpression, bool)> = Vec::new();
        for (i, e) in self.automaton.edges.iter().enumerate() {
            if tree_edge[i] {
                continue;
            }
            let src = tree_word[e.src].as_ref().unwrap();
            let dst = tree_word[e.dst].as_ref().unwrap();
            let elem = src.multiply(&Word::letter(Letter::new(e.generator, true))).multiply(&dst.inverse());
            let expr = tree_aux[e.src].multiply(&e.aux).multiply(&tree_aux[e.dst].inverse());
            let flip = expr.first().is_some_and(|l| !l.is_positive());
            if flip {
                items.push((i, elem.inverse(), SubgroupExpression(expr.inverse()), true));
            } else {
                items.push((i, elem, SubgroupExpression(expr), false));
            }
        }
        items.sort_by(|a, b| {
            let ka = (a.2.as_word().first().map(|l| l.generator()), a.2.len(), a.2.as_word().clone(), a.0);
            let kb = (b.2.as_word().first().map(|l| l.generator()), b.2.len(), b.2.as_word().clone(), b.0);
            ka.cmp(&kb)
        });
        let mut edge_basis = vec![None; self.automaton.edges.len()];
        let mut basis = Vec::with_capacity(items.len());
        let mut expressions = Vec::with_capacity(items.len());
        for (k, (e, elem, expr, flip)) in items.into_iter().enumerate() {
            edge_basis[e] = Some((k, flip));
            basis.push(elem);
            expressions.push(expr);
        }
        NielsenBasis { basis, expressions, edge_basis }
    }

    /// `w` as a reduced word over the Nielsen basis (basis letters are 1-based).
    pub fn basis_word(&self, nb: &NielsenBasis, w: &Word) -> Result<Word> {
        let path = self.trace(w).ok_or(Error::NotMember)?;
        let letters: Vec<Letter> = path
            .into_iter()
            .filter_map(|(e, fwd)| nb.edge_basis[e].map(|(k, flip)| Letter::new(k as u32 + 1, fwd != flip)))
            .collect();
        Ok(free_reduce(&letters))
    }

    /// Expresses `w ∈ ⟨gens⟩` as a product of the defining generators.
    pub fn express(&self, nb: &NielsenBasis, w: &Word) -> Result<SubgroupExpression> {
        let bw = self.basis_word(nb, w)?;
        let mut acc = Word::identity();
        for l in bw.letters() {
            let e = &nb.expressions[l.generator() as usize - 1];
            acc = if l.is_positive() { acc.multiply(e.as_word()) } else { acc.multiply(&e.as_word().inverse()) };
        }
        Ok(SubgroupExpression(acc))
    }

    /// Membership search through the auxiliary labels directly.
    pub fn express_direct(&self, w: &Word) -> Result<SubgroupExpression> {
        let path = self.trace(w).ok_or(Error::NotMember)?;
        let mut acc = Word::identity();
        for (e, fwd) in path {
            let aux = &self.automaton.edges[e].aux;
            acc = if fwd { acc.multiply(aux) } else { acc.multiply(&aux.inverse()) };
        }
        Ok(SubgroupExpression(acc))
    }

    /// Some `m` with `r^m · d ∈ ⟨gens⟩`, if one exists.
    ///
    /// Folds a hair spelling `d⁻¹` onto the core so that reduced paths from
    /// the base to the hair's end spell the coset `H d⁻¹`, then iterates the
    /// partial injection "read the cyclic core of `r`" with cycle detection.
    pub fn cyclic_coset_meet(&self, r: &Word, d: &Word) -> Result<Option<i64>> {
        if r.is_identity() {
            return Err(Error::IdentityInput);
        }
        let max_gen = self.generators.max_generator().max(r.max_generator()).max(d.max_generator()).max(1);
        let mut folder = Folder::new(false);
        let mut ids = vec![folder.base];
        for _ in 1..self.automaton.vertex_count {
            ids.push(folder.new_vertex());
        }
        for e in &self.automaton.edges {
            folder.add_edge(ids[e.src], ids[e.dst], Letter::new(e.generator, true), Word::identity());
        }
        let hair_end = folder.add_path(folder.base, &d.inverse(), None, Word::identity());
        folder.fold();
        let (aut, map) = folder.compact(max_gen);
        let target = map[hair_end];
        if target == 0 {
            return Ok(Some(0));
        }
        let (c, core) = r.cyclic_reduce();
        let (Some(start), Some(goal)) = (aut.read(0, c.letters()), aut.read(target, c.letters())) else {
            return Ok(None);
        };
        let inv = core.inverse();
        let mut fwd = Some(start);
        let mut bwd = Some(start);
        for j in 1..=aut.vertex_count as i64 {
            fwd = fwd.and_then(|v| aut.read(v, core.letters()));
            if fwd == Some(goal) {
                return Ok(Some(j));
            }
            bwd = bwd.and_then(|v| aut.read(v, inv.letters()));
            if bwd == Some(goal) {
                return Ok(Some(-j));
            }
            if fwd.is_none() && bwd.is_none() || fwd == Some(start) {
                break;
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub base: usize,
    pub edges: Vec<[usize; 3]>,
}

pub fn membership(g: &SubgroupGraph, w: &Word) -> bool {
    g.contains(w)
}

pub fn rank(g: &SubgroupGraph) -> usize {
    g.rank()
}

/// True iff the tuple freely generates a free subgroup of rank `k`.
///
/// Finitely generated free groups are Hopfian, so a `k`-element generating
/// set of a rank-`k` free group is a basis.
pub fn has_free_basis(gens: &WordTuple) -> bool {
    build_core(gens).rank() == gens.size()
}

/// Strict small-cancellation test: every product `uv` of tuple elements and
/// inverses with `u ≠ v⁻¹` cancels fewer than `λ·min(|u|, |v|)` letters.
pub fn lambda_condition(gens: &WordTuple, lambda: f64) -> Result<bool> {
    if !(lambda > 0.0 && lambda < 0.5) {
        return Err(Error::InvalidLambda(lambda));
    }
    if let Some(i) = gens.iter().position(Word::is_identity) {
        return Err(Error::IdentityComponent(i));
    }
    // Indexed so that repeated or mutually inverse components still meet.
    let sym: Vec<(usize, bool, Word)> =
        gens.iter().enumerate().flat_map(|(i, g)| [(i, true, g.clone()), (i, false, g.inverse())]).collect();
    for (i, su, u) in &sym {
        for (j, sv, v) in &sym {
            if i == j && su != sv {
                continue;
            }
            let t = cancellation(u, v) as f64;
            if t >= lambda * u.len().min(v.len()) as f64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn nielsen_basis(g: &SubgroupGraph) -> NielsenBasis {
    g.nielsen_basis()
}

pub fn express(g: &SubgroupGraph, nb: &NielsenBasis, w: &Word) -> Result<SubgroupExpression> {
    g.express(nb, w)
}

pub fn cyclic_coset_meet(r: &Word, d: &Word, g: &SubgroupGraph) -> Result<Option<i64>> {
    g.cyclic_coset_meet(r, d)
}
