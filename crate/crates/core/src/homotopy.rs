//! The five local moves on path maps, bounded homotopy search with
//! replayable certificates, isosceles words, and degree-bounded
//! homotopy-invariant loop functionals.
//!
//! Moves are stated on vertex sequences; a replacement segment is realized
//! by every orientation the host arrows allow, so on a double edge one
//! vertex-sequence move can give two different path maps.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::forms::{closed_one_forms, is_closed, ClosedMethod, OneForm};
use crate::graph::{enumerate_patterns, ArrowId, CylinderDirection, Digraph, DigraphMap, PatternKind, VertexId};
use crate::integral::{iterated_integral, DenseSignature, Signature};
use crate::linalg::{primitive, RationalMatrix, RowSpace};
use crate::path::{enumerate_paths, same_host, PathError, PathMap, Step};
use crate::rational::Rational;
use crate::shuffle::{pair_sparse_signature, AlgebraElement, ArrowWord};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// (i) `p q r -> p r` on a triangle.
    TriangleContract,
    /// (ii) `p q r -> p s r` across a square.
    SquareReplace,
    /// (iii) `p q r s -> p s` around a square.
    SquareContract,
    /// (iv) `p q p -> p p`.
    Backtrack,
    /// (v) `p p -> p`.
    TrivialDrop,
}

impl MoveKind {
    pub fn label(self) -> &'static str {
        match self {
            MoveKind::TriangleContract => "triangle-contract",
            MoveKind::SquareReplace => "square-replace",
            MoveKind::SquareContract => "square-contract",
            MoveKind::Backtrack => "backtrack",
            MoveKind::TrivialDrop => "trivial-drop",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum MoveDirection {
    Apply,
    Unapply,
}

impl MoveDirection {
    pub fn label(self) -> &'static str {
        match self {
            MoveDirection::Apply => "apply",
            MoveDirection::Unapply => "un-apply",
        }
    }
}

/// One local move: the steps `before` starting at step index `position`
/// (0-based) are replaced by `after`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub direction: MoveDirection,
    pub position: usize,
    pub before: Vec<Step>,
    pub after: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("move at step {position} runs past the end of a path with {len} steps")]
    OutOfRange { position: usize, len: usize },
    #[error("steps at {position} do not match the recorded move")]
    WindowMismatch { position: usize },
    #[error("move {index} is not a legal {kind} move")]
    Illegal { index: usize, kind: &'static str },
    #[error("certificate ends at a different loop")]
    WrongEnd,
    #[error(transparent)]
    Path(#[from] PathError),
}

impl Move {
    /// The move undoing this one.
    pub fn inverse(&self) -> Move {
        let direction = match (self.kind, self.direction) {
            (MoveKind::SquareReplace, d) => d,
            (_, MoveDirection::Apply) => MoveDirection::Unapply,
            (_, MoveDirection::Unapply) => MoveDirection::Apply,
        };
        Move {
            kind: self.kind,
            direction,
            position: self.position,
            before: self.after.clone(),
            after: self.before.clone(),
        }
    }

    /// Splices the move into `path`; the result is validated as a path map.
    pub fn apply<'g>(&self, path: &PathMap<'g>) -> Result<PathMap<'g>, MoveError> {
        let steps = path.steps();
        let end = self.position + self.before.len();
        if end > steps.len() {
            return Err(MoveError::OutOfRange {
                position: self.position,
                len: steps.len(),
            });
        }
        if steps[self.position..end] != self.before[..] {
            return Err(MoveError::WindowMismatch { position: self.position });
        }
        let mut out = steps[..self.position].to_vec();
        out.extend_from_slice(&self.after);
        out.extend_from_slice(&steps[end..]);
        Ok(PathMap::from_steps(path.graph(), path.start(), &out)?)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} at step {}: {} -> {} steps",
            self.kind.label(),
            self.direction.label(),
            self.position,
            self.before.len(),
            self.after.len()
        )
    }
}

/// Triangle and square adjacency tables of a host digraph.
#[derive(Clone, Debug)]
pub struct MoveContext<'g> {
    graph: &'g Digraph,
    /// `(p, r) -> q` for every triangle on `{p, q, r}`.
    triangle_third: HashMap<(VertexId, VertexId), Vec<VertexId>>,
    /// `(p, r) -> (q, s)`: `p, r` opposite corners of a square with middle
    /// corners `q, s`.
    square_across: HashMap<(VertexId, VertexId), Vec<(VertexId, VertexId)>>,
    /// `(p, s) -> (q, r)`: `p q r s` runs around a square, `p, s` adjacent.
    square_around: HashMap<(VertexId, VertexId), Vec<(VertexId, VertexId)>>,
    neighbours: Vec<Vec<VertexId>>,
}

fn push_unique<K: std::hash::Hash + Eq, V: PartialEq>(map: &mut HashMap<K, Vec<V>>, key: K, value: V) {
    let slot = map.entry(key).or_default();
    if !slot.contains(&value) {
        slot.push(value);
    }
}

impl<'g> MoveContext<'g> {
    pub fn new(graph: &'g Digraph) -> Self {
        let mut triangle_third = HashMap::new();
        for t in enumerate_patterns(graph, PatternKind::Triangle) {
            let v = t.vertices(graph);
            for (p, q, r) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
                push_unique(&mut triangle_third, (v[p], v[r]), v[q]);
            }
        }
        let mut square_across = HashMap::new();
        let mut square_around = HashMap::new();
        for s in enumerate_patterns(graph, PatternKind::Square) {
            let v = s.vertices(graph);
            // Corners in cyclic order around the square.
            let c = [v[0], v[1], v[3], v[2]];
            for i in 0..4 {
                let (p, q, r, s) = (c[i], c[(i + 1) % 4], c[(i + 2) % 4], c[(i + 3) % 4]);
                push_unique(&mut square_across, (p, r), (q, s));
                push_unique(&mut square_across, (p, r), (s, q));
                push_unique(&mut square_around, (p, s), (q, r));
                push_unique(&mut square_around, (s, p), (r, q));
            }
        }
        let neighbours = graph
            .vertices()
            .map(|v| {
                let mut ns: Vec<VertexId> = graph
                    .incident(v)
                    .iter()
                    .map(|&a| {
                        let (s, t) = graph.endpoints(a);
                        if s == v {
                            t
                        } else {
                            s
                        }
                    })
                    .collect();
                ns.sort();
                ns.dedup();
                ns
            })
            .collect();
        Self {
            graph,
            triangle_third,
            square_across,
            square_around,
            neighbours,
        }
    }

    pub fn graph(&self) -> &'g Digraph {
        self.graph
    }

    /// Every single step from `p` to `q`.
    fn realizations(&self, p: VertexId, q: VertexId) -> Vec<Step> {
        if p == q {
            return vec![Step::Trivial(p)];
        }
        let mut out = Vec::new();
        if let Some(a) = self.graph.arrow_between(p, q) {
            out.push(Step::Forward(a));
        }
        if let Some(a) = self.graph.arrow_between(q, p) {
            out.push(Step::Inverse(a));
        }
        out
    }

    /// Every step sequence through the given vertices.
    fn realize(&self, vertices: &[VertexId]) -> Vec<Vec<Step>> {
        let mut out = vec![Vec::new()];
        for pair in vertices.windows(2) {
            let options = self.realizations(pair[0], pair[1]);
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |&s| {
                        let mut p = prefix.clone();
                        p.push(s);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// All one-move neighbours of `path` with at most `max_len` steps,
    /// deduplicated by result, grouped by move kind and then by position.
    pub fn neighbors(&self, path: &PathMap<'g>, max_len: usize) -> Vec<(PathMap<'g>, Move)> {
        self.collect(path, max_len, true)
    }

    /// Only the moves that do not lengthen the path: every applied move of
    /// (i)-(v), plus (ii). Each unordered neighbouring pair within a length
    /// bound is seen from its longer member.
    pub fn contractions(&self, path: &PathMap<'g>) -> Vec<(PathMap<'g>, Move)> {
        self.collect(path, path.len(), false)
    }

    fn collect(&self, path: &PathMap<'g>, max_len: usize, unapply: bool) -> Vec<(PathMap<'g>, Move)> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for mv in self.moves(path, max_len, unapply) {
            let next = mv.apply(path).expect("generated moves splice valid steps");
            if next != *path && seen.insert(next.clone()) {
                out.push((next, mv));
            }
        }
        out
    }

    /// Every move instance, before deduplication by result.
    fn moves(&self, path: &PathMap<'g>, max_len: usize, unapply: bool) -> Vec<Move> {
        let v = path.vertices();
        let steps = path.steps();
        let n = steps.len();
        let mut moves: Vec<Move> = Vec::new();
        let mut add = |kind, direction, position, width: usize, afters: Vec<Vec<Step>>| {
            for after in afters {
                if n - width + after.len() > max_len {
                    continue;
                }
                moves.push(Move {
                    kind,
                    direction,
                    position,
                    before: steps[position..position + width].to_vec(),
                    after,
                });
            }
        };
        use MoveDirection::{Apply, Unapply};
        use MoveKind::*;

        for pos in 0..n.saturating_sub(1) {
            let (p, q, r) = (v[pos], v[pos + 1], v[pos + 2]);
            if self.triangle_third.get(&(p, r)).is_some_and(|qs| qs.contains(&q)) {
                add(TriangleContract, Apply, pos, 2, self.realize(&[p, r]));
            }
        }
        if unapply {
            for pos in 0..n {
                let (p, r) = (v[pos], v[pos + 1]);
                for &q in self.triangle_third.get(&(p, r)).into_iter().flatten() {
                    add(TriangleContract, Unapply, pos, 1, self.realize(&[p, q, r]));
                }
            }
        }

        for pos in 0..n.saturating_sub(1) {
            let (p, q, r) = (v[pos], v[pos + 1], v[pos + 2]);
            for &(mid, other) in self.square_across.get(&(p, r)).into_iter().flatten() {
                if mid == q {
                    add(SquareReplace, Apply, pos, 2, self.realize(&[p, other, r]));
                }
            }
        }

        for pos in 0..n.saturating_sub(2) {
            let (p, q, r, s) = (v[pos], v[pos + 1], v[pos + 2], v[pos + 3]);
            if self.square_around.get(&(p, s)).is_some_and(|qr| qr.contains(&(q, r))) {
                add(SquareContract, Apply, pos, 3, self.realize(&[p, s]));
            }
        }
        if unapply {
            for pos in 0..n {
                let (p, s) = (v[pos], v[pos + 1]);
                for &(q, r) in self.square_around.get(&(p, s)).into_iter().flatten() {
                    add(SquareContract, Unapply, pos, 1, self.realize(&[p, q, r, s]));
                }
            }
        }

        for pos in 0..n.saturating_sub(1) {
            if v[pos] == v[pos + 2] {
                add(Backtrack, Apply, pos, 2, vec![vec![Step::Trivial(v[pos])]]);
            }
        }
        if unapply {
            for pos in 0..n {
                if steps[pos].is_trivial() {
                    let p = v[pos];
                    let afters = std::iter::once(p)
                        .chain(self.neighbours[p.0].iter().copied())
                        .flat_map(|q| self.realize(&[p, q, p]))
                        .collect();
                    add(Backtrack, Unapply, pos, 1, afters);
                }
            }
        }

        for pos in 0..n {
            if steps[pos].is_trivial() {
                add(TrivialDrop, Apply, pos, 1, vec![Vec::new()]);
            }
        }
        if unapply {
            for pos in 0..=n {
                add(TrivialDrop, Unapply, pos, 0, vec![vec![Step::Trivial(v[pos])]]);
            }
        }

        moves
    }
}

/// All one-move neighbours, both directions, with no length cap beyond one
/// move's growth.
pub fn move_neighbors<'g>(path: &PathMap<'g>) -> Vec<(PathMap<'g>, Move)> {
    MoveContext::new(path.graph()).neighbors(path, path.len() + 2)
}

/// A replayable sequence of moves from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveCertificate<'g> {
    pub start: PathMap<'g>,
    pub moves: Vec<Move>,
    pub end: PathMap<'g>,
}

impl<'g> MoveCertificate<'g> {
    /// Every intermediate path map, `start` first and `end` last. Each move
    /// is checked to be a legal move of its kind.
    pub fn replay(&self) -> Result<Vec<PathMap<'g>>, MoveError> {
        let ctx = MoveContext::new(self.start.graph());
        let mut current = self.start.clone();
        let mut out = vec![current.clone()];
        for (index, mv) in self.moves.iter().enumerate() {
            let next = mv.apply(&current)?;
            if !ctx.moves(&current, current.len() + mv.after.len(), true).contains(mv) {
                return Err(MoveError::Illegal {
                    index,
                    kind: mv.kind.label(),
                });
            }
            out.push(next.clone());
            current = next;
        }
        if current != self.end {
            return Err(MoveError::WrongEnd);
        }
        Ok(out)
    }
}

/// A closed 1-form pairing differently with two loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingInvariant {
    pub form: OneForm,
    pub value_a: Rational,
    pub value_b: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopyVerdict<'g> {
    Homotopic(MoveCertificate<'g>),
    CertifiedDistinct(SeparatingInvariant),
    Unknown {
        length_bound: usize,
        depth_bound: usize,
        explored: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomotopyError {
    #[error("paths live in different digraphs")]
    HostMismatch,
    #[error("path is not a loop")]
    NotALoop,
    #[error("loops are based at {0} and {1}")]
    BaseMismatch(String, String),
}

/// A closed 1-form separating `a` from `b`, if the closed forms do.
///
/// With `δ_i` the difference of the pairings against a basis of closed
/// forms, the form `Σ δ_i ω_i` pairs to `Σ δ_i²` on the difference, so it
/// separates whenever any basis form does. It is reported primitive.
pub fn closed_form_separation(a: &PathMap<'_>, b: &PathMap<'_>) -> Option<SeparatingInvariant> {
    let g = a.graph();
    let mut combined = OneForm::zero(g);
    for omega in closed_one_forms(g, ClosedMethod::Kernel) {
        let delta = iterated_integral(a, std::slice::from_ref(&omega)) - iterated_integral(b, std::slice::from_ref(&omega));
        if !delta.is_zero() {
            combined = &combined + &omega.scale(&delta);
        }
    }
    if combined.is_zero() {
        return None;
    }
    let form = OneForm::new(primitive(combined.values()));
    let value_a = iterated_integral(a, std::slice::from_ref(&form));
    let value_b = iterated_integral(b, std::slice::from_ref(&form));
    Some(SeparatingInvariant { form, value_a, value_b })
}

type Parents<'g> = HashMap<PathMap<'g>, Option<(PathMap<'g>, Move)>>;

/// Bounded search for a move sequence from `a` to `b`.
///
/// Closed 1-forms are evaluated first: their invariance is a theorem, so a
/// separation is a certified negative answer and the search is skipped.
/// Otherwise a bidirectional breadth-first search runs over loops of at most
/// `length_bound` steps, with at most `depth_bound` moves in total.
pub fn homotopic_loops<'g>(
    a: &PathMap<'g>,
    b: &PathMap<'g>,
    length_bound: usize,
    depth_bound: usize,
) -> Result<HomotopyVerdict<'g>, HomotopyError> {
    if !same_host(a.graph(), b.graph()) {
        return Err(HomotopyError::HostMismatch);
    }
    if !a.is_loop() || !b.is_loop() {
        return Err(HomotopyError::NotALoop);
    }
    if a.start() != b.start() {
        let g = a.graph();
        return Err(HomotopyError::BaseMismatch(
            g.name(a.start()).into(),
            g.name(b.start()).into(),
        ));
    }
    if let Some(sep) = closed_form_separation(a, b) {
        return Ok(HomotopyVerdict::CertifiedDistinct(sep));
    }
    Ok(search(a, b, length_bound, depth_bound))
}

/// Bidirectional breadth-first search over one-move neighbours; works for
/// open paths with fixed endpoints as well as loops.
pub fn search<'g>(a: &PathMap<'g>, b: &PathMap<'g>, length_bound: usize, depth_bound: usize) -> HomotopyVerdict<'g> {
    let certificate = |moves| {
        HomotopyVerdict::Homotopic(MoveCertificate {
            start: a.clone(),
            moves,
            end: b.clone(),
        })
    };
    if a == b {
        return certificate(Vec::new());
    }
    let ctx = MoveContext::new(a.graph());
    let mut seen_a: Parents<'g> = HashMap::from([(a.clone(), None)]);
    let mut seen_b: Parents<'g> = HashMap::from([(b.clone(), None)]);
    let mut frontier_a = vec![a.clone()];
    let mut frontier_b = vec![b.clone()];
    let mut depth = 0;
    while depth < depth_bound && !(frontier_a.is_empty() && frontier_b.is_empty()) {
        depth += 1;
        let from_a = !frontier_a.is_empty() && (frontier_b.is_empty() || frontier_a.len() <= frontier_b.len());
        let (frontier, seen, other) = if from_a {
            (&mut frontier_a, &mut seen_a, &seen_b)
        } else {
            (&mut frontier_b, &mut seen_b, &seen_a)
        };
        let mut next = Vec::new();
        let mut meet = None;
        'expand: for node in frontier.iter() {
            for (nb, mv) in ctx.neighbors(node, length_bound) {
                if seen.contains_key(&nb) {
                    continue;
                }
                seen.insert(nb.clone(), Some((node.clone(), mv)));
                if other.contains_key(&nb) {
                    meet = Some(nb);
                    break 'expand;
                }
                next.push(nb);
            }
        }
        *frontier = next;
        if let Some(m) = meet {
            let mut moves = chain_to_root(&seen_a, &m);
            moves.reverse();
            moves.extend(chain_to_root(&seen_b, &m).iter().map(Move::inverse));
            return certificate(moves);
        }
    }
    HomotopyVerdict::Unknown {
        length_bound,
        depth_bound,
        explored: seen_a.len() + seen_b.len(),
    }
}

/// Moves from `node` back to the search root, nearest first; each move
/// leads from its parent to its child.
fn chain_to_root<'g>(seen: &Parents<'g>, node: &PathMap<'g>) -> Vec<Move> {
    let mut out = Vec::new();
    let mut current = node.clone();
    while let Some(Some((parent, mv))) = seen.get(&current) {
        out.push(mv.clone());
        current = parent.clone();
    }
    out
}

/// Whether `f` and `g` are one-step homotopic through `G ⊡ I_1`: every
/// `(f(v), g(v))` is an arrow or a diagonal pair, with `I_1` read in one
/// direction for all vertices.
pub fn one_step_map_homotopy(f: &DigraphMap<'_>, g: &DigraphMap<'_>) -> bool {
    one_step_direction(f, g).is_some()
}

/// The direction of `I_1` realizing a one-step homotopy, `Direct` when the
/// rungs run `f(v) -> g(v)`.
pub fn one_step_direction(f: &DigraphMap<'_>, g: &DigraphMap<'_>) -> Option<CylinderDirection> {
    if !same_host(f.source(), g.source()) || !same_host(f.target(), g.target()) {
        return None;
    }
    let h = f.target();
    let pairs: Vec<_> = f.images().iter().zip(g.images()).collect();
    if pairs.iter().all(|(x, y)| x == y || h.has_arrow(**x, **y)) {
        Some(CylinderDirection::Direct)
    } else if pairs.iter().all(|(x, y)| x == y || h.has_arrow(**y, **x)) {
        Some(CylinderDirection::Inverse)
    } else {
        None
    }
}

/// The arrow pairs on which isosceles conditions are imposed: `(a1, a2)` of
/// every triangle, `(a1, a2)` and `(a3, a4)` of every square.
fn isosceles_pairs(g: &Digraph) -> Vec<(ArrowId, ArrowId)> {
    let mut out: Vec<_> = enumerate_patterns(g, PatternKind::Triangle)
        .iter()
        .map(|t| (t.arrow(1), t.arrow(2)))
        .collect();
    for s in enumerate_patterns(g, PatternKind::Square) {
        out.push((s.arrow(1), s.arrow(2)));
        out.push((s.arrow(3), s.arrow(4)));
    }
    out
}

/// Whether the word `ω_1⋯ω_r` is triangular and square isosceles in `g`.
/// Words of length at most 6 are checked by enumerating tuples and
/// permutations; longer words by [`isosceles_by_determinants`].
pub fn is_isosceles(word: &[OneForm], g: &Digraph) -> bool {
    if word.len() <= 6 {
        isosceles_by_enumeration(word, g)
    } else {
        isosceles_by_determinants(word, g)
    }
}

/// The defining condition, checked over every tuple `b ∈ {x, y}^r` and
/// every permutation.
pub fn isosceles_by_enumeration(word: &[OneForm], g: &Digraph) -> bool {
    let r = word.len();
    let perms = permutations(r);
    isosceles_pairs(g).into_iter().all(|(x, y)| {
        (0..1usize << r).all(|mask| {
            let b: Vec<ArrowId> = (0..r).map(|i| if mask >> i & 1 == 1 { y } else { x }).collect();
            let product = |p: &[usize]| {
                p.iter()
                    .enumerate()
                    .fold(Rational::one(), |acc, (i, &j)| acc * &word[i][b[j]])
            };
            let identity: Vec<usize> = (0..r).collect();
            let base = product(&identity);
            perms.iter().all(|p| product(p) == base)
        })
    })
}

/// Equivalent test: for each arrow pair `(x, y)`, either some `ω_k`
/// vanishes on both arrows, or the vectors `(ω_i(x), ω_i(y))` are pairwise
/// proportional.
pub fn isosceles_by_determinants(word: &[OneForm], g: &Digraph) -> bool {
    isosceles_pairs(g).into_iter().all(|(x, y)| {
        let v: Vec<(&Rational, &Rational)> = word.iter().map(|w| (&w[x], &w[y])).collect();
        if v.iter().any(|(a, b)| a.is_zero() && b.is_zero()) {
            return true;
        }
        v.iter()
            .enumerate()
            .all(|(i, (a, b))| v[i + 1..].iter().all(|(c, d)| *a * *d == *b * *c))
    })
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..r).collect();
    heap_permute(r, &mut p, &mut out);
    out
}

fn heap_permute(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

/// Every form closed and every contiguous subword isosceles.
pub fn invariant_sufficient(word: &[OneForm], g: &Digraph) -> bool {
    word.iter().all(|w| is_closed(g, w))
        && (0..word.len()).all(|i| (i + 1..=word.len()).all(|j| is_isosceles(&word[i..j], g)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvarianceStatus<'g> {
    InvariantOnSample,
    Counterexample {
        loop_a: PathMap<'g>,
        loop_b: PathMap<'g>,
        step: Move,
        value_a: Rational,
        value_b: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceVerdict<'g> {
    pub status: InvarianceStatus<'g>,
    pub length_bound: usize,
    pub loops_checked: usize,
    pub pairs_checked: usize,
}

impl InvarianceVerdict<'_> {
    pub fn is_invariant(&self) -> bool {
        self.status == InvarianceStatus::InvariantOnSample
    }
}

/// Compares `∮_base u` on every loop of at most `length_bound` steps with
/// its value on every one-move neighbour within the same bound.
pub fn invariance_verify<'g>(
    g: &'g Digraph,
    u: &AlgebraElement,
    base: VertexId,
    length_bound: usize,
) -> InvarianceVerdict<'g> {
    invariance_verify_all(g, std::slice::from_ref(u), base, length_bound)
        .pop()
        .expect("one element in, one verdict out")
}

/// [`invariance_verify`] for several elements, sharing the move graph.
pub fn invariance_verify_all<'g>(
    g: &'g Digraph,
    elements: &[AlgebraElement],
    base: VertexId,
    length_bound: usize,
) -> Vec<InvarianceVerdict<'g>> {
    let ctx = MoveContext::new(g);
    let loops = enumerate_paths(g, base, length_bound, true);
    let depth = elements.iter().map(AlgebraElement::degree).max().unwrap_or(0);
    let values: HashMap<&PathMap<'g>, Vec<Rational>> = loops
        .iter()
        .map(|l| {
            let sig = Signature::of(l, depth);
            (l, elements.iter().map(|u| pair_sparse_signature(u, &sig)).collect())
        })
        .collect();
    let mut status: Vec<Option<InvarianceStatus<'g>>> = vec![None; elements.len()];
    let mut pairs = 0;
    for l in &loops {
        for (nb, mv) in ctx.contractions(l) {
            pairs += 1;
            let (va, vb) = (&values[l], &values[&nb]);
            for (k, slot) in status.iter_mut().enumerate() {
                if slot.is_none() && va[k] != vb[k] {
                    *slot = Some(InvarianceStatus::Counterexample {
                        loop_a: l.clone(),
                        loop_b: nb.clone(),
                        step: mv.clone(),
                        value_a: va[k].clone(),
                        value_b: vb[k].clone(),
                    });
                }
            }
        }
    }
    status
        .into_iter()
        .map(|s| InvarianceVerdict {
            status: s.unwrap_or(InvarianceStatus::InvariantOnSample),
            length_bound,
            loops_checked: loops.len(),
            pairs_checked: pairs,
        })
        .collect()
}

/// Whether every homogeneous component of `u` is a single word of forms
/// `ω_1⋯ω_k` passing [`invariant_sufficient`].
pub fn certify_element(u: &AlgebraElement, g: &Digraph) -> bool {
    (0..=u.degree()).all(|k| {
        let part = u.homogeneous(k);
        if part.is_zero() || k == 0 {
            return true;
        }
        match factor_pure(&part, g.arrow_count()) {
            Some(word) => invariant_sufficient(&word, g),
            None => false,
        }
    })
}

/// Writes a homogeneous element as a product `ω_1⋯ω_k` of 1-forms, when it
/// is a pure tensor.
pub fn factor_pure(part: &AlgebraElement, arrows: usize) -> Option<Vec<OneForm>> {
    let (pivot, pc) = part.terms().next()?;
    let k = pivot.len();
    let coefficient = |i: usize, a: usize| {
        let mut letters = pivot.letters().to_vec();
        letters[i] = ArrowId(a);
        part.coefficient(&ArrowWord::new(letters))
    };
    let word: Vec<OneForm> = (0..k)
        .map(|i| {
            OneForm::new(
                (0..arrows)
                    .map(|a| if i == 0 { coefficient(0, a) } else { coefficient(i, a) / pc })
                    .collect(),
            )
        })
        .collect();
    (AlgebraElement::from_forms(&word) == *part).then_some(word)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Candidate {
    pub element: AlgebraElement,
    /// Passes the sufficient condition, so invariant on all loops; otherwise
    /// only invariant on the sampled move pairs.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Candidates {
    pub degree_bound: usize,
    pub length_bound: usize,
    pub loops_sampled: usize,
    /// Candidates in degrees `1..=degree_bound`, modulo elements vanishing on
    /// every sampled loop.
    pub basis: Vec<Pi1Candidate>,
    /// The same computation restricted to 1-forms.
    pub degree_one: Vec<Pi1Candidate>,
}

impl Pi1Candidates {
    pub fn certified_degree_one_dimension(&self) -> usize {
        self.degree_one.iter().filter(|c| c.certified).count()
    }
}

/// Elements of degree `1..=degree_bound` whose loop pairings agree across
/// every one-move pair of loops at `base` with at most `length_bound`
/// steps, modulo those vanishing on all such loops.
///
/// Unknowns are the coefficients of all arrow words of degree
/// `1..=degree_bound`. Representatives are taken in the span of the sampled
/// loop signatures, which is a complement of the vanishing ones.
pub fn pi1_candidates(g: &Digraph, base: VertexId, degree_bound: usize, length_bound: usize) -> Pi1Candidates {
    assert!(degree_bound >= 1, "degree bound must be positive");
    let loops = enumerate_paths(g, base, length_bound, true);
    let basis = candidates_at_degree(g, &loops, degree_bound);
    let degree_one = if degree_bound == 1 {
        basis.clone()
    } else {
        candidates_at_degree(g, &loops, 1)
    };
    Pi1Candidates {
        degree_bound,
        length_bound,
        loops_sampled: loops.len(),
        basis,
        degree_one,
    }
}

fn candidates_at_degree(g: &Digraph, loops: &[PathMap<'_>], degree: usize) -> Vec<Pi1Candidate> {
    let ctx = MoveContext::new(g);
    let words: Vec<ArrowWord> = (1..=degree).flat_map(|k| ArrowWord::all_of_length(g, k)).collect();
    let dim = words.len();
    let sigs: HashMap<&PathMap<'_>, Vec<Rational>> = loops
        .iter()
        .map(|l| (l, DenseSignature::of(l, degree).augmented_vector()))
        .collect();

    let mut span = RowSpace::new(dim);
    let mut constraints = RowSpace::new(dim);
    let mut class_of: HashMap<&Vec<Rational>, usize> = HashMap::new();
    let mut parent: Vec<usize> = Vec::new();
    let mut class = |s, parent: &mut Vec<usize>| {
        *class_of.entry(s).or_insert_with(|| {
            parent.push(parent.len());
            parent.len() - 1
        })
    };
    for l in loops {
        let s = &sigs[l];
        span.insert(s);
        for (nb, _) in ctx.contractions(l) {
            let t = &sigs[&nb];
            let (x, y) = (class(s, &mut parent), class(t, &mut parent));
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx] = ry;
                let row: Vec<Rational> = s.iter().zip(t).map(|(a, b)| a - b).collect();
                constraints.insert(&row);
            }
        }
    }

    // c = Rᵀy with C Rᵀ y = 0.
    let r = span.basis();
    let c = constraints.basis();
    let m = RationalMatrix::from_rows(
        r.len(),
        c.iter()
            .map(|row| r.iter().map(|rv| crate::linalg::dot(row, rv)).collect())
            .collect(),
    );
    m.kernel()
        .into_iter()
        .map(|y| {
            let mut coeffs = vec![Rational::zero(); dim];
            for (yi, rv) in y.iter().zip(&r) {
                if yi.is_zero() {
                    continue;
                }
                for (x, v) in coeffs.iter_mut().zip(rv) {
                    *x += yi * v;
                }
            }
            let coeffs = primitive(&coeffs);
            let element = AlgebraElement::from_terms(words.iter().cloned().zip(coeffs));
            let certified = certify_element(&element, g);
            Pi1Candidate { element, certified }
        })
        .collect()
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut x = x;
    while parent[x] != root {
        let next = parent[x];
        parent[x] = root;
        x = next;
    }
    root
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BaseChangeError {
    #[error("element uses arrow a{0}, which the digraph does not have")]
    UnknownArrow(usize),
}

/// The image of a loop functional at `y` under a path `γ: x -> y`:
///
/// `γ*(w) = Σ_{i ≤ j} ∫_{γ⁻¹} w[..i] · ∫_γ w[j..] · w[i..j]`,
///
/// so that `(γ*u, α) = (u, γ⁻¹ ⋆ α ⋆ γ)` for every loop `α` at `x`.
pub fn change_base_point(gamma: &PathMap<'_>, u: &AlgebraElement) -> Result<AlgebraElement, BaseChangeError> {
    if let Some(a) = u.max_arrow().filter(|a| a.0 >= gamma.graph().arrow_count()) {
        return Err(BaseChangeError::UnknownArrow(a.0 + 1));
    }
    let depth = u.degree();
    let back = Signature::of(&gamma.inverse(), depth);
    let forth = Signature::of(gamma, depth);
    let mut out = AlgebraElement::zero();
    for (w, c) in u.terms() {
        let letters = w.letters();
        let r = letters.len();
        for i in 0..=r {
            let left = back.coefficient(&ArrowWord::new(letters[..i].to_vec()));
            if left.is_zero() {
                continue;
            }
            for j in i..=r {
                let right = forth.coefficient(&ArrowWord::new(letters[j..].to_vec()));
                if right.is_zero() {
                    continue;
                }
                out.add_term(ArrowWord::new(letters[i..j].to_vec()), c * &left * right);
            }
        }
    }
    Ok(out)
}
