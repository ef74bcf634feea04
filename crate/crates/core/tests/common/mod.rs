//! Test-only oracles and random generators. Nothing here calls the library
//! routine it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pathint::graph::{ArrowId, Digraph, DigraphMap, PatternKind, VertexId};
use pathint::path::{Orientation, PathMap};
use pathint::{AlgebraElement, ArrowWord, OneForm, Rational};

pub fn seed() -> u64 {
    std::env::var("PATHINT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `τ` from the run boundaries `i_1 < i_2 < ⋯ < i_m = r` of a sorted sequence.
pub fn tau_by_runs(seq: &[usize]) -> BigInt {
    let mut boundaries = Vec::new();
    for i in 1..=seq.len() {
        if i == seq.len() || seq[i] != seq[i - 1] {
            boundaries.push(i);
        }
    }
    let mut prev = 0;
    let mut out = BigInt::one();
    for b in boundaries {
        out *= factorial(b - prev);
        prev = b;
    }
    out
}

/// All non-decreasing sequences of length `r` with values in `1..=n`.
pub fn monotone_sequences(r: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn go(r: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            go(r, n, v, cur, out);
            cur.pop();
        }
    }
    go(r, n, 1, &mut cur, &mut out);
    out
}

/// `⟨ω, α_t⟩` read straight off the vertex and orientation sequences.
fn pairing_at(alpha: &PathMap<'_>, omega: &OneForm, t: usize) -> Rational {
    let g = alpha.graph();
    let (u, v) = (alpha.vertices()[t - 1], alpha.vertices()[t]);
    if u == v {
        return Rational::zero();
    }
    match alpha.orientations()[t - 1] {
        Orientation::Forward => omega.values()[g.arrow_between(u, v).unwrap().0].clone(),
        Orientation::Backward => -omega.values()[g.arrow_between(v, u).unwrap().0].clone(),
    }
}

/// The defining sum over non-decreasing index sequences.
pub fn direct_integral(alpha: &PathMap<'_>, word: &[OneForm]) -> Rational {
    let n = alpha.len();
    if word.is_empty() {
        return Rational::one();
    }
    monotone_sequences(word.len(), n)
        .into_iter()
        .map(|seq| {
            let num = word
                .iter()
                .zip(&seq)
                .fold(Rational::one(), |acc, (w, &t)| acc * pairing_at(alpha, w, t));
            num / Rational::from_integer(tau_by_runs(&seq))
        })
        .fold(Rational::zero(), |a, b| a + b)
}

/// Random simple digraph with a vertex count drawn from `vertices`; each ordered pair is an arrow with probability `p`.
pub fn random_digraph(rng: &mut impl Rng, vertices: RangeInclusive<usize>, p: f64) -> Digraph {
    let vertices = rng.gen_range(vertices);
    let names: Vec<String> = (0..vertices).map(|i| format!("v{i}")).collect();
    let mut arrows = Vec::new();
    for s in 0..vertices {
        for t in 0..vertices {
            if s != t && rng.gen_bool(p) {
                arrows.push((names[s].clone(), names[t].clone()));
            }
        }
    }
    arrows.shuffle(rng);
    Digraph::new(&names, &arrows).unwrap()
}

/// `(next vertex, orientation)` options from `v`, stationary step included.
pub fn moves_from(g: &Digraph, v: VertexId) -> Vec<(VertexId, Orientation)> {
    let mut out = vec![(v, Orientation::Forward)];
    for (_, s, t) in g.arrows() {
        if s == v {
            out.push((t, Orientation::Forward));
        }
        if t == v {
            out.push((s, Orientation::Backward));
        }
    }
    out
}

/// Random walk from `start` with a length drawn from `len`.
pub fn random_path<'g>(rng: &mut impl Rng, g: &'g Digraph, start: VertexId, len: RangeInclusive<usize>) -> PathMap<'g> {
    let len = rng.gen_range(len);
    let mut vertices = vec![start];
    let mut orientations = Vec::new();
    for _ in 0..len {
        let here = *vertices.last().unwrap();
        let options = moves_from(g, here);
        let (next, o) = *options.choose(rng).unwrap();
        vertices.push(next);
        orientations.push(o);
    }
    PathMap::new(g, vertices, orientations).unwrap()
}

/// Random walk without stationary steps, stopping early at isolated vertices.
pub fn random_moving_path<'g>(
    rng: &mut impl Rng,
    g: &'g Digraph,
    start: VertexId,
    len: RangeInclusive<usize>,
) -> PathMap<'g> {
    let len = rng.gen_range(len);
    let mut vertices = vec![start];
    let mut orientations = Vec::new();
    for _ in 0..len {
        let here = *vertices.last().unwrap();
        let options: Vec<_> = moves_from(g, here).into_iter().filter(|(v, _)| *v != here).collect();
        let Some(&(next, o)) = options.choose(rng) else { break };
        vertices.push(next);
        orientations.push(o);
    }
    PathMap::new(g, vertices, orientations).unwrap()
}

/// `α` followed by an undirected shortest walk to `target`, when one exists.
pub fn extend_to<'g>(alpha: &PathMap<'g>, target: VertexId) -> Option<PathMap<'g>> {
    let g = alpha.graph();
    let from = alpha.end();
    let mut prev: Vec<Option<(VertexId, Orientation)>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[from.0] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for (w, o) in moves_from(g, v) {
            if !seen[w.0] {
                seen[w.0] = true;
                prev[w.0] = Some((v, o));
                queue.push_back(w);
            }
        }
    }
    if !seen[target.0] {
        return None;
    }
    let mut back = Vec::new();
    let mut cur = target;
    while cur != from {
        let (p, o) = prev[cur.0].unwrap();
        back.push((cur, o));
        cur = p;
    }
    back.reverse();
    let mut vertices = alpha.vertices().to_vec();
    let mut orientations = alpha.orientations().to_vec();
    for (v, o) in back {
        vertices.push(v);
        orientations.push(o);
    }
    Some(PathMap::new(g, vertices, orientations).unwrap())
}

pub fn close_up<'g>(alpha: &PathMap<'g>) -> Option<PathMap<'g>> {
    extend_to(alpha, alpha.start())
}

/// Inserts a random number of elementary detours: stationary steps and backtracks
/// `γ ⋆ γ⁻¹` along single arrows.
pub fn insert_detours<'g>(rng: &mut impl Rng, alpha: &PathMap<'g>, n: RangeInclusive<usize>) -> PathMap<'g> {
    let n = rng.gen_range(n);
    let g = alpha.graph();
    let mut vertices = alpha.vertices().to_vec();
    let mut orientations = alpha.orientations().to_vec();
    for _ in 0..n {
        let i = rng.gen_range(0..vertices.len());
        let here = vertices[i];
        let options = moves_from(g, here);
        let (next, o) = *options.choose(rng).unwrap();
        if next == here {
            vertices.insert(i + 1, here);
            orientations.insert(i, Orientation::Forward);
        } else {
            let back = match o {
                Orientation::Forward => Orientation::Backward,
                Orientation::Backward => Orientation::Forward,
            };
            vertices.splice(i + 1..i + 1, [next, here]);
            orientations.splice(i..i, [o, back]);
        }
    }
    PathMap::new(g, vertices, orientations).unwrap()
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    q(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn random_form(rng: &mut impl Rng, g: &Digraph) -> OneForm {
    OneForm::new((0..g.arrow_count()).map(|_| random_rational(rng)).collect())
}

pub fn random_word(rng: &mut impl Rng, g: &Digraph, degree: usize) -> Vec<OneForm> {
    (0..degree).map(|_| random_form(rng, g)).collect()
}

/// Arrow sets of every pattern occurrence, by scanning all arrow subsets of
/// the right size and all orderings against the incidence table.
pub fn brute_patterns(g: &Digraph, kind: PatternKind) -> BTreeSet<Vec<ArrowId>> {
    let k = match kind {
        PatternKind::Triangle => 3,
        PatternKind::Square => 4,
        PatternKind::DoubleEdge => 2,
    };
    let arrows: Vec<ArrowId> = (0..g.arrow_count()).map(ArrowId).collect();
    let mut out = BTreeSet::new();
    for subset in subsets(&arrows, k) {
        let fits = permutations(&subset).into_iter().any(|p| {
            let e: Vec<(VertexId, VertexId)> = p.iter().map(|&a| g.endpoints(a)).collect();
            match kind {
                PatternKind::Triangle => {
                    let (v0, v1, v2) = (e[0].0, e[0].1, e[1].1);
                    e[1].0 == v1 && e[2] == (v0, v2) && v0 != v2
                }
                PatternKind::Square => {
                    let (v0, v1, v3, v2) = (e[0].0, e[0].1, e[1].1, e[2].1);
                    let distinct: BTreeSet<_> = [v0, v1, v2, v3].into_iter().collect();
                    e[1].0 == v1 && e[2].0 == v0 && e[3] == (v2, v3) && distinct.len() == 4
                }
                PatternKind::DoubleEdge => e[1] == (e[0].1, e[0].0),
            }
        });
        if fits {
            out.insert(subset);
        }
    }
    out
}

pub fn subsets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<T>> = subsets(&items[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0].clone());
            s
        })
        .collect();
    with.extend(subsets(&items[1..], k));
    with
}

pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head.clone());
            out.push(p);
        }
    }
    out
}

/// Reduction by removing a randomly chosen redex at each stage: a stationary
/// step, or two adjacent steps along the same arrow in opposite directions.
pub fn random_order_reduce<'g>(rng: &mut impl Rng, alpha: &PathMap<'g>) -> PathMap<'g> {
    let g = alpha.graph();
    let mut vertices = alpha.vertices().to_vec();
    let mut orientations = alpha.orientations().to_vec();
    loop {
        let n = orientations.len();
        let mut redexes: Vec<(usize, usize)> = (0..n).filter(|&i| vertices[i] == vertices[i + 1]).map(|i| (i, 1)).collect();
        for i in 0..n.saturating_sub(1) {
            let (a, b, c) = (vertices[i], vertices[i + 1], vertices[i + 2]);
            if a == c && a != b && orientations[i] != orientations[i + 1] {
                redexes.push((i, 2));
            }
        }
        let Some(&(i, w)) = redexes.choose(rng) else { break };
        vertices.drain(i + 1..i + 1 + w);
        orientations.drain(i..i + w);
    }
    PathMap::new(g, vertices, orientations).unwrap()
}

/// A random digraph map `G -> H`, or `None` after a few tries.
pub fn random_map<'a>(rng: &mut impl Rng, g: &'a Digraph, h: &'a Digraph) -> Option<DigraphMap<'a>> {
    for _ in 0..200 {
        let images: Vec<VertexId> = (0..g.vertex_count())
            .map(|_| VertexId(rng.gen_range(0..h.vertex_count())))
            .collect();
        if let Ok(f) = DigraphMap::new(g, h, images) {
            return Some(f);
        }
    }
    None
}

/// Every interleaving of `a` and `b`, with repetition, by choosing which
/// positions of the result come from `a`.
pub fn interleavings(a: &[OneForm], b: &[OneForm]) -> Vec<Vec<OneForm>> {
    let n = a.len() + b.len();
    let positions: Vec<usize> = (0..n).collect();
    subsets(&positions, a.len())
        .into_iter()
        .map(|picked| {
            let (mut i, mut j) = (0, 0);
            (0..n)
                .map(|k| {
                    if picked.contains(&k) {
                        i += 1;
                        a[i - 1].clone()
                    } else {
                        j += 1;
                        b[j - 1].clone()
                    }
                })
                .collect()
        })
        .collect()
}

/// A random linear combination of a few arrow words of degree at most
/// `max_degree`.
pub fn random_element(rng: &mut impl Rng, g: &Digraph, max_degree: usize, terms: usize) -> AlgebraElement {
    let mut u = AlgebraElement::zero();
    if g.arrow_count() == 0 {
        u.add_term(ArrowWord::empty(), random_rational(rng));
        return u;
    }
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree);
        let letters = (0..degree).map(|_| ArrowId(rng.gen_range(0..g.arrow_count()))).collect();
        u.add_term(ArrowWord::new(letters), random_rational(rng));
    }
    u
}
