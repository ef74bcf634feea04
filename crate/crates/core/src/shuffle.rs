//! The shuffle Hopf algebra `Sh(G)` on words of arrows.
//!
//! Words of general 1-forms are expanded multilinearly into the arrow-word
//! basis `e^{a_1⋯a_k}` as soon as they are built, so two elements are equal
//! exactly when their coefficient maps are.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::forms::{pullback_one_form, OneForm};
use crate::graph::{ArrowId, Digraph, DigraphMap, VertexId};
use crate::integral::{steps_word_integral, DenseSignature, Signature};
use crate::path::{enumerate_paths, same_host, PathMap};
use crate::rational::Rational;

/// A finite sequence of arrows; the empty word is the unit `1`.
/// Ordered by length first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ArrowWord(Vec<ArrowId>);

impl ArrowWord {
    pub fn new(letters: Vec<ArrowId>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[ArrowId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extend(&mut self, letters: impl IntoIterator<Item = ArrowId>) {
        self.0.extend(letters);
    }

    pub fn concat(&self, other: &ArrowWord) -> ArrowWord {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        ArrowWord(out)
    }

    pub fn reversed(&self) -> ArrowWord {
        ArrowWord(self.0.iter().rev().copied().collect())
    }

    /// `(w[..i], w[i..])` for `i = 0..=len`.
    pub fn splits(&self) -> impl Iterator<Item = (ArrowWord, ArrowWord)> + '_ {
        (0..=self.len()).map(|i| (ArrowWord(self.0[..i].to_vec()), ArrowWord(self.0[i..].to_vec())))
    }

    pub fn label(&self, g: &Digraph) -> String {
        self.0.iter().map(|&a| g.arrow_label(a)).collect::<Vec<_>>().join(",")
    }

    /// Every word of length exactly `k` over the arrows of `g`, lexicographic.
    pub fn all_of_length(g: &Digraph, k: usize) -> Vec<ArrowWord> {
        let m = g.arrow_count();
        let mut out = vec![ArrowWord::empty()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..m).map(move |a| {
                        let mut w = w.clone();
                        w.0.push(ArrowId(a));
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Every word of length `0..=k`, graded.
    pub fn all_up_to(g: &Digraph, k: usize) -> Vec<ArrowWord> {
        (0..=k).flat_map(|d| Self::all_of_length(g, d)).collect()
    }
}

impl Ord for ArrowWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ArrowWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All `(r, s)`-shuffles of two words, with multiplicity.
pub fn shuffle_words(a: &[ArrowId], b: &[ArrowId]) -> Vec<ArrowWord> {
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(a.len() + b.len());
    interleave(a, b, &mut buf, &mut out);
    out
}

fn interleave(a: &[ArrowId], b: &[ArrowId], buf: &mut Vec<ArrowId>, out: &mut Vec<ArrowWord>) {
    if a.is_empty() || b.is_empty() {
        let mut w = buf.clone();
        w.extend_from_slice(a);
        w.extend_from_slice(b);
        out.push(ArrowWord(w));
        return;
    }
    buf.push(a[0]);
    interleave(&a[1..], b, buf, out);
    buf.pop();
    buf.push(b[0]);
    interleave(a, &b[1..], buf, out);
    buf.pop();
}

/// A finitely supported rational combination of arrow words. No explicit
/// zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<ArrowWord, Rational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(ArrowWord::empty())
    }

    pub fn word(w: ArrowWord) -> Self {
        Self::term(w, Rational::one())
    }

    pub fn term(w: ArrowWord, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    /// `e^{a}` for a single arrow.
    pub fn arrow(a: ArrowId) -> Self {
        Self::word(ArrowWord(vec![a]))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ArrowWord, Rational)>) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    /// Multilinear expansion of the word of 1-forms `ω_1⋯ω_r`.
    pub fn from_forms(word: &[OneForm]) -> Self {
        let mut acc: Vec<(Vec<ArrowId>, Rational)> = vec![(Vec::new(), Rational::one())];
        for omega in word {
            let support: Vec<_> = omega.support().map(|(a, c)| (a, c.clone())).collect();
            acc = acc
                .into_iter()
                .flat_map(|(w, c)| {
                    support.iter().map(move |(a, x)| {
                        let mut w = w.clone();
                        w.push(*a);
                        (w, &c * x)
                    })
                })
                .collect();
        }
        Self::from_terms(acc.into_iter().map(|(w, c)| (ArrowWord(w), c)))
    }

    pub fn add_term(&mut self, w: ArrowWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ArrowWord, &Rational)> {
        self.terms.iter()
    }

    /// Number of words with a non-zero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &ArrowWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Length of the longest supported word; 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(ArrowWord::len).max().unwrap_or(0)
    }

    /// Part of degree exactly `k`.
    pub fn homogeneous(&self, k: usize) -> AlgebraElement {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(w, _)| w.len() == k)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    pub fn scale(&self, c: &Rational) -> AlgebraElement {
        Self::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    /// Largest arrow index referenced, for host compatibility checks.
    pub fn max_arrow(&self) -> Option<ArrowId> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).max()
    }

    pub fn display(&self, g: &Digraph) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() { "1".to_string() } else { format!("e^{{{}}}", w.label(g)) };
                format!("{c}·{word}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let letters: Vec<String> = w.0.iter().map(|a| format!("a{}", a.0 + 1)).collect();
            write!(f, "{c}·[{}]", letters.join(","))?;
        }
        Ok(())
    }
}

/// The shuffle product, extended bilinearly.
pub fn shuffle(u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (a, x) in u.terms() {
        for (b, y) in v.terms() {
            let c = x * y;
            for w in shuffle_words(&a.0, &b.0) {
                out.add_term(w, c.clone());
            }
        }
    }
    out
}

/// A finitely supported combination of `u ⊗ v` with `u, v` arrow words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorPair {
    terms: BTreeMap<(ArrowWord, ArrowWord), Rational>,
}

impl TensorPair {
    pub fn add_term(&mut self, key: (ArrowWord, ArrowWord), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(ArrowWord, ArrowWord), &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, left: &ArrowWord, right: &ArrowWord) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Componentwise shuffle `(u ⊗ v)(u' ⊗ v') = (u ∘ u') ⊗ (v ∘ v')`.
    pub fn shuffle(&self, other: &TensorPair) -> TensorPair {
        let mut out = TensorPair::default();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let left = shuffle_words(&a.0, &c.0);
                let right = shuffle_words(&b.0, &d.0);
                let xy = x * y;
                for l in &left {
                    for r in &right {
                        out.add_term((l.clone(), r.clone()), xy.clone());
                    }
                }
            }
        }
        out
    }

    /// `μ ∘ (f ⊗ g)`.
    pub fn multiply_with(
        &self,
        left: impl Fn(&AlgebraElement) -> AlgebraElement,
        right: impl Fn(&AlgebraElement) -> AlgebraElement,
    ) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for ((a, b), c) in &self.terms {
            let l = left(&AlgebraElement::word(a.clone()));
            let r = right(&AlgebraElement::word(b.clone()));
            out = out.add(&shuffle(&l, &r).scale(c));
        }
        out
    }
}

/// Deconcatenation `Δ(ω_1⋯ω_r) = Σ_i (ω_1⋯ω_i) ⊗ (ω_{i+1}⋯ω_r)`.
pub fn coproduct(u: &AlgebraElement) -> TensorPair {
    let mut out = TensorPair::default();
    for (w, c) in u.terms() {
        for split in w.splits() {
            out.add_term(split, c.clone());
        }
    }
    out
}

/// Coefficient of the empty word.
pub fn counit(u: &AlgebraElement) -> Rational {
    u.coefficient(&ArrowWord::empty())
}

/// `j(ω_1⋯ω_r) = (-1)^r ω_r⋯ω_1`.
pub fn antipode(u: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::from_terms(u.terms().map(|(w, c)| {
        let c = if w.len() % 2 == 1 { -c.clone() } else { c.clone() };
        (w.reversed(), c)
    }))
}

/// Word-wise pullback of 1-forms along `f: G -> H`, re-expanded in the
/// arrow-word basis of `G`.
pub fn pullback_element(f: &DigraphMap<'_>, u: &AlgebraElement) -> AlgebraElement {
    let h = f.target();
    let pulled: HashMap<ArrowId, OneForm> = u
        .terms()
        .flat_map(|(w, _)| w.0.iter().copied())
        .map(|b| (b, pullback_one_form(f, &OneForm::basis(h, b))))
        .collect();
    let mut out = AlgebraElement::zero();
    for (w, c) in u.terms() {
        let forms: Vec<OneForm> = w.0.iter().map(|b| pulled[b].clone()).collect();
        out = out.add(&AlgebraElement::from_forms(&forms).scale(c));
    }
    out
}

/// `Σ_w c_w ∫_α e^w`.
pub fn pair_path(u: &AlgebraElement, alpha: &PathMap<'_>) -> Rational {
    let steps = alpha.steps();
    u.terms()
        .map(|(w, c)| c * steps_word_integral(&steps, w))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Pairing through a precomputed dense signature of sufficient depth.
pub fn pair_signature(u: &AlgebraElement, sig: &DenseSignature) -> Rational {
    u.terms()
        .map(|(w, c)| c * sig.coefficient(w))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Pairing through a precomputed sparse signature of sufficient depth,
/// summing over whichever side has fewer words.
pub fn pair_sparse_signature(u: &AlgebraElement, sig: &Signature) -> Rational {
    let entries: usize = (0..=sig.depth().min(u.degree())).map(|k| sig.level(k).len()).sum();
    if u.len() <= entries {
        return u
            .terms()
            .map(|(w, c)| c * sig.coefficient(w))
            .fold(Rational::zero(), |acc, x| acc + x);
    }
    (0..=sig.depth().min(u.degree()))
        .flat_map(|k| sig.level(k).iter())
        .filter_map(|(w, x)| u.terms.get(w).map(|c| c * x))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Which path space an element is read as a functional on.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// All path maps.
    Free,
    /// Path maps starting at the base.
    From(VertexId),
    /// Loops based at the base.
    LoopAt(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairingError {
    #[error("path {index} starts at {found} but the functional is based at {base}")]
    BaseMismatch { index: usize, base: String, found: String },
    #[error("path {index} is not a loop")]
    NotALoop { index: usize },
    #[error("paths live in different digraphs")]
    HostMismatch,
}

/// An element of `Sh(G)` read as a functional on paths (`∫`, `∫_x`, `∮_x`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub element: AlgebraElement,
    pub flavor: Flavor,
}

impl Functional {
    /// Bilinear pairing with `Σ c_i α_i`.
    pub fn pair(&self, paths: &[(Rational, PathMap<'_>)]) -> Result<Rational, PairingError> {
        let mut total = Rational::zero();
        for (index, (c, alpha)) in paths.iter().enumerate() {
            if let Some((_, first)) = paths.first() {
                if !same_host(first.graph(), alpha.graph()) {
                    return Err(PairingError::HostMismatch);
                }
            }
            let g = alpha.graph();
            match self.flavor {
                Flavor::Free => {}
                Flavor::From(x) | Flavor::LoopAt(x) if alpha.start() != x => {
                    return Err(PairingError::BaseMismatch {
                        index,
                        base: g.name(x).to_string(),
                        found: g.name(alpha.start()).to_string(),
                    })
                }
                Flavor::LoopAt(_) if !alpha.is_loop() => return Err(PairingError::NotALoop { index }),
                _ => {}
            }
            if !c.is_zero() {
                total += c * pair_path(&self.element, alpha);
            }
        }
        Ok(total)
    }
}

/// Outcome of a bounded comparison of two functionals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionalVerdict<'g> {
    /// A path on which the two functionals differ.
    CertifiedUnequal {
        witness: PathMap<'g>,
        left: Rational,
        right: Rational,
    },
    /// No separating path of length at most `bound` exists.
    EqualUpToBound { bound: usize, paths_checked: usize },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PathFlavor {
    Path,
    Loop,
}

/// Compares `u` and `v` on every path (or loop) from `base` of length at
/// most `bound`, shortest first.
pub fn functional_equal<'g>(
    g: &'g Digraph,
    u: &AlgebraElement,
    v: &AlgebraElement,
    base: VertexId,
    flavor: PathFlavor,
    bound: usize,
) -> FunctionalVerdict<'g> {
    let diff = u.sub(v);
    let paths = enumerate_paths(g, base, bound, flavor == PathFlavor::Loop);
    let checked = paths.len();
    for alpha in paths {
        if !pair_path(&diff, &alpha).is_zero() {
            let left = pair_path(u, &alpha);
            let right = pair_path(v, &alpha);
            return FunctionalVerdict::CertifiedUnequal {
                witness: alpha,
                left,
                right,
            };
        }
    }
    FunctionalVerdict::EqualUpToBound {
        bound,
        paths_checked: checked,
    }
}

/// One verified identity and the cases on which it failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl AxiomCheck {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfReport {
    pub degree_bound: usize,
    pub checks: Vec<AxiomCheck>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

type TripleTensor = BTreeMap<(ArrowWord, ArrowWord, ArrowWord), Rational>;

fn add3(t: &mut TripleTensor, key: (ArrowWord, ArrowWord, ArrowWord), c: Rational) {
    let slot = t.entry(key.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        t.remove(&key);
    }
}

/// Exhaustive check of the Hopf axioms of `Sh(G)` on every arrow word of
/// degree at most `degree_bound`.
pub fn hopf_axiom_report(g: &Digraph, degree_bound: usize) -> HopfReport {
    hopf_axiom_report_with(g, degree_bound, antipode)
}

/// As [`hopf_axiom_report`], with a caller-supplied antipode.
pub fn hopf_axiom_report_with(
    g: &Digraph,
    degree_bound: usize,
    antipode_map: impl Fn(&AlgebraElement) -> AlgebraElement,
) -> HopfReport {
    let words = ArrowWord::all_up_to(g, degree_bound);
    let el = |w: &ArrowWord| AlgebraElement::word(w.clone());
    let name = |w: &ArrowWord| if w.is_empty() { "1".to_string() } else { w.label(g) };

    let mut assoc = AxiomCheck::new("shuffle associativity");
    let mut comm = AxiomCheck::new("shuffle commutativity");
    let mut unit = AxiomCheck::new("unit");
    let mut coassoc = AxiomCheck::new("coassociativity");
    let mut counit_law = AxiomCheck::new("counit");
    let mut bialg = AxiomCheck::new("bialgebra compatibility");
    let mut anti = AxiomCheck::new("antipode");
    let mut invol = AxiomCheck::new("antipode involutivity");

    for a in &words {
        let ea = el(a);
        unit.record(shuffle(&AlgebraElement::one(), &ea) == ea && shuffle(&ea, &AlgebraElement::one()) == ea, || {
            name(a)
        });

        let delta = coproduct(&ea);
        let mut left = TripleTensor::new();
        let mut right = TripleTensor::new();
        for ((x, y), c) in delta.terms() {
            for ((x1, x2), c1) in coproduct(&el(x)).terms() {
                add3(&mut left, (x1.clone(), x2.clone(), y.clone()), c * c1);
            }
            for ((y1, y2), c2) in coproduct(&el(y)).terms() {
                add3(&mut right, (x.clone(), y1.clone(), y2.clone()), c * c2);
            }
        }
        coassoc.record(left == right, || name(a));

        let mut via_left = AlgebraElement::zero();
        let mut via_right = AlgebraElement::zero();
        for ((x, y), c) in delta.terms() {
            via_left = via_left.add(&el(y).scale(&(c * counit(&el(x)))));
            via_right = via_right.add(&el(x).scale(&(c * counit(&el(y)))));
        }
        counit_law.record(via_left == ea && via_right == ea, || name(a));

        let expected = AlgebraElement::one().scale(&counit(&ea));
        let sl = delta.multiply_with(&antipode_map, |x| x.clone());
        let sr = delta.multiply_with(|x| x.clone(), &antipode_map);
        anti.record(sl == expected && sr == expected, || name(a));

        invol.record(antipode_map(&antipode_map(&ea)) == ea, || name(a));

        for b in &words {
            let eb = el(b);
            let ab = shuffle(&ea, &eb);
            comm.record(ab == shuffle(&eb, &ea), || format!("{} | {}", name(a), name(b)));
            bialg.record(coproduct(&ab) == coproduct(&ea).shuffle(&coproduct(&eb)), || {
                format!("{} | {}", name(a), name(b))
            });
            for c in &words {
                let ec = el(c);
                assoc.record(shuffle(&ab, &ec) == shuffle(&ea, &shuffle(&eb, &ec)), || {
                    format!("{} | {} | {}", name(a), name(b), name(c))
                });
            }
        }
    }

    HopfReport {
        degree_bound,
        checks: vec![assoc, comm, unit, coassoc, counit_law, bialg, anti, invol],
    }
}

/// The dual laws tying `Sh(G)` to loops at `base`: the shuffle product is
/// multiplicative on each loop, the coproduct is dual to concatenation, the
/// antipode to inversion, and the counit to the trivial loop. Words up to
/// `degree_bound`; single loops up to `loop_len` steps and loop pairs with
/// total length up to `loop_len`.
pub fn dual_law_report(g: &Digraph, base: VertexId, loop_len: usize, degree_bound: usize) -> HopfReport {
    let loops = enumerate_paths(g, base, loop_len, true);
    let sigs: HashMap<&PathMap<'_>, DenseSignature> =
        loops.iter().map(|l| (l, DenseSignature::of(l, degree_bound))).collect();
    let words = ArrowWord::all_up_to(g, degree_bound);
    let m = g.arrow_count();
    let idx = |w: &ArrowWord| w.0.iter().fold(0, |acc, a| acc * m + a.0);
    let value = |sig: &DenseSignature, w: &ArrowWord| sig.level(w.len())[idx(w)].clone();

    let mut mult = AxiomCheck::new("shuffle is multiplicative on loops");
    let mut concat = AxiomCheck::new("coproduct is dual to concatenation");
    let mut inverse = AxiomCheck::new("antipode is dual to inversion");
    let mut counit_law = AxiomCheck::new("counit is evaluation on the trivial loop");

    let trivial = PathMap::trivial(g, base);
    let trivial_sig = DenseSignature::of(&trivial, degree_bound);
    for w in &words {
        counit_law.record(value(&trivial_sig, w) == counit(&AlgebraElement::word(w.clone())), || w.label(g));
    }

    for l in &loops {
        let sig = &sigs[l];
        let inv_sig = DenseSignature::of(&l.inverse(), degree_bound);
        for (i, a) in words.iter().enumerate() {
            let ea = AlgebraElement::word(a.clone());
            inverse.record(pair_signature(&antipode(&ea), sig) == value(&inv_sig, a), || {
                format!("{} on {l}", a.label(g))
            });
            for b in &words[i..] {
                if a.len() + b.len() > degree_bound {
                    continue;
                }
                let lhs = pair_signature(&shuffle(&ea, &AlgebraElement::word(b.clone())), sig);
                mult.record(lhs == value(sig, a) * value(sig, b), || {
                    format!("{} | {} on {l}", a.label(g), b.label(g))
                });
            }
        }
    }

    for l1 in &loops {
        for l2 in loops.iter().filter(|l2| l1.len() + l2.len() <= loop_len) {
            let joined = l1.concat(l2).expect("loops share the base");
            let (s1, s2, s12) = (&sigs[l1], &sigs[l2], &sigs[&joined]);
            for w in &words {
                let split_sum = w
                    .splits()
                    .map(|(x, y)| value(s1, &x) * value(s2, &y))
                    .fold(Rational::zero(), |acc, v| acc + v);
                concat.record(split_sum == value(s12, w), || format!("{} on {l1} ⋆ {l2}", w.label(g)));
            }
        }
    }

    HopfReport {
        degree_bound,
        checks: vec![mult, concat, inverse, counit_law],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::path::Orientation::{Backward as B, Forward as F};
    use crate::rational::int;

    fn w(letters: &[usize]) -> ArrowWord {
        ArrowWord::new(letters.iter().map(|&a| ArrowId(a)).collect())
    }

    fn e(letters: &[usize]) -> AlgebraElement {
        AlgebraElement::word(w(letters))
    }

    #[test]
    fn shuffle_basics() {
        let ab = shuffle(&e(&[0]), &e(&[1]));
        assert_eq!(ab, e(&[0, 1]).add(&e(&[1, 0])));
        assert_eq!(shuffle(&e(&[0]), &e(&[0])), e(&[0, 0]).scale(&int(2)));
        let u = e(&[0, 1]).add(&e(&[2]).scale(&int(-3)));
        assert_eq!(shuffle(&AlgebraElement::one(), &u), u);
    }

    #[test]
    fn coproduct_and_counit() {
        let d = coproduct(&e(&[0, 1]));
        assert_eq!(d.len(), 3);
        assert_eq!(d.coefficient(&w(&[]), &w(&[0, 1])), int(1));
        assert_eq!(d.coefficient(&w(&[0]), &w(&[1])), int(1));
        assert_eq!(d.coefficient(&w(&[0, 1]), &w(&[])), int(1));
        let d1 = coproduct(&AlgebraElement::one());
        assert_eq!(d1.len(), 1);
        assert_eq!(d1.coefficient(&w(&[]), &w(&[])), int(1));

        assert_eq!(counit(&AlgebraElement::one()), int(1));
        assert_eq!(counit(&e(&[0, 1])), int(0));
        assert_eq!(counit(&AlgebraElement::one().scale(&int(3)).add(&e(&[0]))), int(3));
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(&e(&[0])), e(&[0]).scale(&int(-1)));
        assert_eq!(antipode(&e(&[0, 1])), e(&[1, 0]));
    }

    #[test]
    fn from_forms_expands() {
        let t = fixtures::triangle();
        let w1 = OneForm::new(vec![int(1), int(2), int(0)]);
        let w2 = OneForm::basis(&t, ArrowId(2));
        let u = AlgebraElement::from_forms(&[w1, w2]);
        assert_eq!(u.len(), 2);
        assert_eq!(u.coefficient(&w(&[1, 2])), int(2));
    }

    #[test]
    fn pullback_identity_and_collapse() {
        let t = fixtures::triangle();
        let u = e(&[0, 1]).add(&e(&[2]));
        assert_eq!(pullback_element(&DigraphMap::identity(&t), &u), u);
        let f = DigraphMap::new(&t, &t, vec![VertexId(0), VertexId(1), VertexId(1)]).unwrap();
        // a2 collapses, so any word containing e^{a2} pulls back to 0.
        assert!(pullback_element(&f, &e(&[1])).is_zero());
        assert!(pullback_element(&f, &e(&[0, 1])).is_zero());
    }

    #[test]
    fn functional_equality_witness() {
        let d = fixtures::double_edge();
        let v0 = VertexId(0);
        match functional_equal(&d, &e(&[0]), &AlgebraElement::zero(), v0, PathFlavor::Loop, 2) {
            FunctionalVerdict::CertifiedUnequal { witness, left, right } => {
                assert_eq!(witness, PathMap::from_names(&d, &["v0", "v1", "v0"], &[F, F]).unwrap());
                assert_eq!((left, right), (int(1), int(0)));
            }
            other => panic!("unexpected {other:?}"),
        }
        let u = e(&[0, 1]);
        assert!(matches!(
            functional_equal(&d, &u, &u, v0, PathFlavor::Path, 3),
            FunctionalVerdict::EqualUpToBound { .. }
        ));
    }

    #[test]
    fn exact_forms_vanish_on_loops() {
        let t = fixtures::triangle();
        let u = e(&[0]).add(&e(&[1])).sub(&e(&[2]));
        // e^{a1} + e^{a2} - e^{a3} is not exact, so it separates...
        assert!(matches!(
            functional_equal(&t, &u, &AlgebraElement::zero(), VertexId(0), PathFlavor::Loop, 3),
            FunctionalVerdict::CertifiedUnequal { .. }
        ));
        // ...while d(e^{v2}) = e^{a2} + e^{a3} does not.
        let df = e(&[1]).add(&e(&[2]));
        assert!(matches!(
            functional_equal(&t, &df, &AlgebraElement::zero(), VertexId(0), PathFlavor::Loop, 6),
            FunctionalVerdict::EqualUpToBound { .. }
        ));
    }

    #[test]
    fn functional_base_checks() {
        let d = fixtures::double_edge();
        let f = Functional {
            element: e(&[0]),
            flavor: Flavor::LoopAt(VertexId(0)),
        };
        let ff = PathMap::from_names(&d, &["v0", "v1", "v0"], &[F, F]).unwrap();
        let fb = PathMap::from_names(&d, &["v0", "v1", "v0"], &[F, B]).unwrap();
        assert_eq!(f.pair(&[(int(1), ff.clone()), (int(-1), ff.clone())]).unwrap(), int(0));
        assert_eq!(f.pair(&[(int(2), ff), (int(1), fb)]).unwrap(), int(2));
        let open = PathMap::from_names(&d, &["v0", "v1"], &[F]).unwrap();
        assert!(matches!(f.pair(&[(int(1), open)]), Err(PairingError::NotALoop { .. })));
        let elsewhere = PathMap::trivial(&d, VertexId(1));
        assert!(matches!(f.pair(&[(int(1), elsewhere)]), Err(PairingError::BaseMismatch { .. })));
    }

    #[test]
    fn broken_antipode_is_reported() {
        let d = fixtures::double_edge();
        let report = hopf_axiom_report_with(&d, 2, |u| antipode(u).scale(&int(-1)));
        assert!(!report.check("antipode").unwrap().passed());
        assert!(report.check("coassociativity").unwrap().passed());
    }
}
