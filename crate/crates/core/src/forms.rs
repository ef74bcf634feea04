//! 0-forms, 1-forms, the degree-2 chain space `Ω₂` and closed 1-forms.

use std::collections::BTreeMap;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::graph::{ArrowId, ArrowImage, Digraph, DigraphMap, PatternKind, VertexId};
use crate::linalg::{RationalMatrix, RowSpace};
use crate::rational::Rational;

/// A function on vertices, dense over the host's vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroForm(Vec<Rational>);

impl ZeroForm {
    pub fn new(values: Vec<Rational>) -> Self {
        Self(values)
    }

    pub fn constant(g: &Digraph, c: Rational) -> Self {
        Self(vec![c; g.vertex_count()])
    }

    /// `e^v`.
    pub fn indicator(g: &Digraph, v: VertexId) -> Self {
        let mut values = vec![Rational::zero(); g.vertex_count()];
        values[v.0] = Rational::one();
        Self(values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }
}

impl Index<VertexId> for ZeroForm {
    type Output = Rational;
    fn index(&self, v: VertexId) -> &Rational {
        &self.0[v.0]
    }
}

/// A function on arrows, dense over the host's arrow list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneForm(Vec<Rational>);

impl OneForm {
    pub fn new(values: Vec<Rational>) -> Self {
        Self(values)
    }

    pub fn zero(g: &Digraph) -> Self {
        Self(vec![Rational::zero(); g.arrow_count()])
    }

    /// `e^a`.
    pub fn basis(g: &Digraph, a: ArrowId) -> Self {
        let mut values = vec![Rational::zero(); g.arrow_count()];
        values[a.0] = Rational::one();
        Self(values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    /// Non-zero `(arrow, value)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (ArrowId, &Rational)> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (ArrowId(i), x))
    }
}

impl Index<ArrowId> for OneForm {
    type Output = Rational;
    fn index(&self, a: ArrowId) -> &Rational {
        &self.0[a.0]
    }
}

impl Add for &OneForm {
    type Output = OneForm;
    fn add(self, rhs: &OneForm) -> OneForm {
        OneForm(self.0.iter().zip(&rhs.0).map(|(x, y)| x + y).collect())
    }
}

impl Sub for &OneForm {
    type Output = OneForm;
    fn sub(self, rhs: &OneForm) -> OneForm {
        OneForm(self.0.iter().zip(&rhs.0).map(|(x, y)| x - y).collect())
    }
}

impl Neg for &OneForm {
    type Output = OneForm;
    fn neg(self) -> OneForm {
        OneForm(self.0.iter().map(|x| -x).collect())
    }
}

impl Mul<&Rational> for &OneForm {
    type Output = OneForm;
    fn mul(self, c: &Rational) -> OneForm {
        self.scale(c)
    }
}

/// `df(a) = f(t(a)) - f(s(a))`.
pub fn d0(g: &Digraph, f: &ZeroForm) -> OneForm {
    OneForm(g.arrows().map(|(_, s, t)| &f[t] - &f[s]).collect())
}

/// `(f* ω)(u -> v) = ω(f(u) -> f(v))`, or 0 when the arrow collapses.
pub fn pullback_one_form(f: &DigraphMap<'_>, omega: &OneForm) -> OneForm {
    OneForm(
        f.source()
            .arrows()
            .map(|(a, _, _)| match f.arrow_image(a) {
                ArrowImage::Arrow(b) => omega[b].clone(),
                ArrowImage::Diagonal(_) => Rational::zero(),
            })
            .collect(),
    )
}

/// An allowed 2-path `u -> v -> w`, recorded as its two arrows.
pub type TwoPath = (ArrowId, ArrowId);

/// A finitely supported combination of allowed 2-paths.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TwoChain(pub BTreeMap<TwoPath, Rational>);

impl TwoChain {
    pub fn is_zero(&self) -> bool {
        self.0.values().all(Zero::is_zero)
    }

    /// `∂ e_{uvw} = e_{vw} - e_{uw} + e_{uv}`, where the middle term is
    /// dropped when `u = w`. Keys are regular 1-paths `(u, w)`, `u != w`.
    pub fn boundary(&self, g: &Digraph) -> BTreeMap<(VertexId, VertexId), Rational> {
        let mut out: BTreeMap<(VertexId, VertexId), Rational> = BTreeMap::new();
        let mut add = |key: (VertexId, VertexId), c: Rational| {
            let slot = out.entry(key).or_insert_with(Rational::zero);
            *slot += c;
        };
        for (&(a, b), c) in &self.0 {
            let (u, v) = g.endpoints(a);
            let w = g.target(b);
            add((v, w), c.clone());
            if u != w {
                add((u, w), -c.clone());
            }
            add((u, v), c.clone());
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Arrow components of the boundary as a 1-chain vector. Components on
    /// non-arrows are ignored; they vanish for elements of `Ω₂`.
    pub fn boundary_on_arrows(&self, g: &Digraph) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); g.arrow_count()];
        for ((u, w), c) in self.boundary(g) {
            if let Some(a) = g.arrow_between(u, w) {
                out[a.0] = c;
            }
        }
        out
    }
}

pub fn allowed_two_paths(g: &Digraph) -> Vec<TwoPath> {
    let mut out = Vec::new();
    for (a, _, v) in g.arrows() {
        for &b in g.incident(v) {
            if g.source(b) == v {
                out.push((a, b));
            }
        }
    }
    out
}

/// Basis of `Ω₂`: combinations of allowed 2-paths whose boundary has no
/// component on a regular non-allowed 1-path.
pub fn omega2_basis(g: &Digraph) -> Vec<TwoChain> {
    let paths = allowed_two_paths(g);
    let mut constraint_of: BTreeMap<(VertexId, VertexId), Vec<Rational>> = BTreeMap::new();
    for (j, &(a, b)) in paths.iter().enumerate() {
        let u = g.source(a);
        let w = g.target(b);
        if u != w && !g.has_arrow(u, w) {
            let row = constraint_of
                .entry((u, w))
                .or_insert_with(|| vec![Rational::zero(); paths.len()]);
            row[j] -= Rational::one();
        }
    }
    let m = RationalMatrix::from_rows(paths.len(), constraint_of.into_values().collect());
    m.kernel()
        .into_iter()
        .map(|x| {
            TwoChain(
                paths
                    .iter()
                    .zip(x)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(&p, c)| (p, c))
                    .collect(),
            )
        })
        .collect()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ClosedMethod {
    /// `(ω, ∂σ) = 0` for every `σ` in a basis of `Ω₂`.
    Kernel,
    /// Linear conditions from every triangle, square and double edge.
    Patterns,
}

fn pattern_conditions(g: &Digraph) -> RowSpace {
    let mut rows = RowSpace::new(g.arrow_count());
    for kind in [PatternKind::Triangle, PatternKind::Square, PatternKind::DoubleEdge] {
        for emb in crate::graph::enumerate_patterns(g, kind) {
            let mut row = vec![Rational::zero(); g.arrow_count()];
            let mut put = |k: usize, c: i64| row[emb.arrow(k).0] += Rational::from_integer(c.into());
            match kind {
                // ω(a1) + ω(a2) - ω(a3)
                PatternKind::Triangle => {
                    put(1, 1);
                    put(2, 1);
                    put(3, -1);
                }
                // ω(a1) + ω(a2) - ω(a3) - ω(a4)
                PatternKind::Square => {
                    put(1, 1);
                    put(2, 1);
                    put(3, -1);
                    put(4, -1);
                }
                // ω(a1) + ω(a2)
                PatternKind::DoubleEdge => {
                    put(1, 1);
                    put(2, 1);
                }
            }
            rows.insert(&row);
        }
    }
    rows
}

fn boundary_conditions(g: &Digraph) -> RowSpace {
    let mut rows = RowSpace::new(g.arrow_count());
    for sigma in omega2_basis(g) {
        rows.insert(&sigma.boundary_on_arrows(g));
    }
    rows
}

/// The linear conditions cutting out closed forms, as a row space.
pub fn closedness_conditions(g: &Digraph, method: ClosedMethod) -> RowSpace {
    match method {
        ClosedMethod::Kernel => boundary_conditions(g),
        ClosedMethod::Patterns => pattern_conditions(g),
    }
}

pub fn closed_one_forms(g: &Digraph, method: ClosedMethod) -> Vec<OneForm> {
    closedness_conditions(g, method)
        .annihilator()
        .into_iter()
        .map(OneForm)
        .collect()
}

pub fn is_closed(g: &Digraph, omega: &OneForm) -> bool {
    omega2_basis(g).iter().all(|sigma| {
        sigma
            .boundary_on_arrows(g)
            .iter()
            .zip(omega.values())
            .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
            .is_zero()
    })
}

/// Whether two families of forms span the same subspace.
pub fn same_span(a: &[OneForm], b: &[OneForm]) -> bool {
    let dim = a.first().or(b.first()).map_or(0, OneForm::dim);
    let mut sa = RowSpace::new(dim);
    a.iter().for_each(|w| {
        sa.insert(w.values());
    });
    let mut sb = RowSpace::new(dim);
    b.iter().for_each(|w| {
        sb.insert(w.values());
    });
    sa.rank() == sb.rank() && b.iter().all(|w| sa.contains(w.values()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::int;

    fn form(values: &[i64]) -> OneForm {
        OneForm::new(values.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn d0_examples() {
        let t = fixtures::triangle();
        assert!(d0(&t, &ZeroForm::constant(&t, int(7))).is_zero());
        let df = d0(&t, &ZeroForm::indicator(&t, VertexId(2)));
        assert_eq!(df, form(&[0, 1, 1]));
    }

    #[test]
    fn omega2_on_fixtures() {
        let t = fixtures::triangle();
        let b = omega2_basis(&t);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].0.keys().collect::<Vec<_>>(), vec![&(ArrowId(0), ArrowId(1))]);
        assert!(omega2_basis(&fixtures::cycle4()).is_empty());
        // Both allowed 2-paths of a double edge lie in Ω₂.
        let d = fixtures::double_edge();
        let b = omega2_basis(&d);
        assert_eq!(b.len(), 2);
        for sigma in &b {
            assert_eq!(sigma.boundary_on_arrows(&d), vec![int(1), int(1)]);
        }
        assert_eq!(omega2_basis(&fixtures::square()).len(), 1);
    }

    #[test]
    fn closed_forms_on_fixtures() {
        for (g, dim) in [
            (fixtures::triangle(), 2),
            (fixtures::square(), 3),
            (fixtures::double_edge(), 1),
            (fixtures::cycle4(), 4),
        ] {
            let k = closed_one_forms(&g, ClosedMethod::Kernel);
            let p = closed_one_forms(&g, ClosedMethod::Patterns);
            assert_eq!(k.len(), dim);
            assert!(same_span(&k, &p));
        }
        let t = fixtures::triangle();
        for w in closed_one_forms(&t, ClosedMethod::Kernel) {
            assert_eq!(w[ArrowId(2)], &w[ArrowId(0)] + &w[ArrowId(1)]);
        }
        let d = fixtures::double_edge();
        for w in closed_one_forms(&d, ClosedMethod::Kernel) {
            assert!((&w[ArrowId(0)] + &w[ArrowId(1)]).is_zero());
        }
    }

    #[test]
    fn closedness_checks() {
        let t = fixtures::triangle();
        assert!(!is_closed(&t, &OneForm::basis(&t, ArrowId(0))));
        assert!(is_closed(&t, &d0(&t, &ZeroForm::new(vec![int(3), int(-1), int(5)]))));
        let c4 = fixtures::cycle4();
        assert!(is_closed(&c4, &form(&[1, 2, 3, 4])));
    }

    #[test]
    fn pullback_examples() {
        let t = fixtures::triangle();
        let w = form(&[2, 3, 5]);
        assert_eq!(pullback_one_form(&DigraphMap::identity(&t), &w), w);
        let f = DigraphMap::new(&t, &t, vec![VertexId(0), VertexId(1), VertexId(1)]).unwrap();
        let e1 = OneForm::basis(&t, ArrowId(0));
        assert_eq!(pullback_one_form(&f, &e1), form(&[1, 0, 1]));
    }
}
