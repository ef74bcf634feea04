//! Iterated integrals of words of 1-forms along path maps.
//!
//! For a path `α` with steps `α_1..α_n` and 1-forms `ω_1..ω_r`,
//!
//! ```text
//! ∫_α ω_1⋯ω_r = Σ_{1 ≤ t_1 ≤ ⋯ ≤ t_r ≤ n} Π ⟨ω_i, α_{t_i}⟩ / τ(t_1, …, t_r)
//! ```
//!
//! where `τ` is the product of the factorials of the value multiplicities.
//! Evaluation runs step by step: appending one step `s` to a path multiplies
//! its prefix integrals by the single-step closed form `Π ⟨ω_i, s⟩ / k!`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::forms::OneForm;
use crate::path::{PathError, PathMap, Step};
use crate::rational::{factorial, inv_factorial, Rational};
use crate::shuffle::ArrowWord;

/// A non-decreasing sequence of positive step indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSequence(Vec<usize>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IndexSequenceError {
    #[error("index sequence is not non-decreasing at position {0}")]
    NotMonotone(usize),
    #[error("index sequence entries must be positive")]
    NotPositive,
}

impl IndexSequence {
    pub fn new(indices: Vec<usize>) -> Result<Self, IndexSequenceError> {
        if indices.contains(&0) {
            return Err(IndexSequenceError::NotPositive);
        }
        if let Some(i) = indices.windows(2).position(|w| w[0] > w[1]) {
            return Err(IndexSequenceError::NotMonotone(i + 1));
        }
        Ok(Self(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

/// `τ(t_1, …, t_r) = Π_k φ_k!` with `φ_k` the multiplicity of `k`.
pub fn volume_number(seq: &IndexSequence) -> BigInt {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &t in seq.indices() {
        *counts.entry(t).or_default() += 1;
    }
    counts.values().map(|&m| factorial(m)).product()
}

/// `⟨ω, a⟩ = ω(a)`, `⟨ω, a⁻¹⟩ = -ω(a)`, and 0 on stationary steps.
pub fn step_pairing(omega: &OneForm, step: Step) -> Rational {
    match step {
        Step::Forward(a) => omega[a].clone(),
        Step::Inverse(a) => -omega[a].clone(),
        Step::Trivial(_) => Rational::zero(),
    }
}

/// Extends prefix integrals `p[j] = ∫ ω_1⋯ω_j` by one step whose pairings
/// with the word letters are `x[0..r]`.
fn extend_by_step(p: &mut [Rational], x: &[Rational]) {
    let r = x.len();
    for j in (1..=r).rev() {
        let mut acc = Rational::zero();
        let mut prod = Rational::one();
        for i in (0..j).rev() {
            if x[i].is_zero() {
                break;
            }
            prod *= &x[i];
            if !p[i].is_zero() {
                acc += &p[i] * &prod * inv_factorial(j - i);
            }
        }
        p[j] += acc;
    }
}

/// `∫_α ω_1⋯ω_r`; the empty word integrates to 1.
pub fn iterated_integral(alpha: &PathMap<'_>, word: &[OneForm]) -> Rational {
    let mut p = vec![Rational::zero(); word.len() + 1];
    p[0] = Rational::one();
    for step in alpha.steps() {
        if step.is_trivial() {
            continue;
        }
        let x: Vec<Rational> = word.iter().map(|w| step_pairing(w, step)).collect();
        extend_by_step(&mut p, &x);
    }
    p.pop().expect("non-empty")
}

/// `∫_α e^{a_1}⋯e^{a_r}` for an arrow word.
pub fn word_integral(alpha: &PathMap<'_>, word: &ArrowWord) -> Rational {
    steps_word_integral(&alpha.steps(), word)
}

pub(crate) fn steps_word_integral(steps: &[Step], word: &ArrowWord) -> Rational {
    let letters = word.letters();
    let mut p = vec![Rational::zero(); letters.len() + 1];
    p[0] = Rational::one();
    for &step in steps {
        let (arrow, sign) = match step {
            Step::Forward(a) => (a, 1),
            Step::Inverse(a) => (a, -1),
            Step::Trivial(_) => continue,
        };
        if !letters.contains(&arrow) {
            continue;
        }
        let x: Vec<Rational> = letters
            .iter()
            .map(|&l| if l == arrow { Rational::from_integer(sign.into()) } else { Rational::zero() })
            .collect();
        extend_by_step(&mut p, &x);
    }
    p.pop().expect("non-empty")
}

/// All non-zero arrow-word integrals of `α` up to `depth`, by level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    levels: Vec<HashMap<ArrowWord, Rational>>,
}

impl Signature {
    pub fn of(alpha: &PathMap<'_>, depth: usize) -> Self {
        Self::of_steps(&alpha.steps(), depth)
    }

    pub fn of_steps(steps: &[Step], depth: usize) -> Self {
        let mut levels: Vec<HashMap<ArrowWord, Rational>> = vec![HashMap::new(); depth + 1];
        levels[0].insert(ArrowWord::empty(), Rational::one());
        let coeffs: Vec<Rational> = (0..=depth).map(inv_factorial).collect();
        for &step in steps {
            let (arrow, negative) = match step {
                Step::Forward(a) => (a, false),
                Step::Inverse(a) => (a, true),
                Step::Trivial(_) => continue,
            };
            for k in (1..=depth).rev() {
                let mut additions: Vec<(ArrowWord, Rational)> = Vec::new();
                for j in 1..=k {
                    let c = if negative && j % 2 == 1 { -coeffs[j].clone() } else { coeffs[j].clone() };
                    for (u, x) in &levels[k - j] {
                        let mut w = u.clone();
                        w.extend(std::iter::repeat_n(arrow, j));
                        additions.push((w, x * &c));
                    }
                }
                let level = &mut levels[k];
                for (w, x) in additions {
                    let slot = level.entry(w).or_insert_with(Rational::zero);
                    *slot += x;
                }
                level.retain(|_, x| !x.is_zero());
            }
        }
        Self { levels }
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &HashMap<ArrowWord, Rational> {
        &self.levels[k]
    }

    pub fn coefficient(&self, word: &ArrowWord) -> Rational {
        self.levels
            .get(word.len())
            .and_then(|l| l.get(word))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

/// All arrow-word integrals up to `depth`, stored densely: the word
/// `a_{i_1}⋯a_{i_k}` lives at index `i_1 m^{k-1} + ⋯ + i_k` of level `k`,
/// with `m` the number of arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseSignature {
    arrows: usize,
    levels: Vec<Vec<Rational>>,
}

impl DenseSignature {
    pub fn of(alpha: &PathMap<'_>, depth: usize) -> Self {
        Self::of_steps(alpha.graph().arrow_count(), &alpha.steps(), depth)
    }

    pub fn of_steps(arrows: usize, steps: &[Step], depth: usize) -> Self {
        let mut levels: Vec<Vec<Rational>> =
            (0..=depth).map(|k| vec![Rational::zero(); arrows.pow(k as u32)]).collect();
        levels[0][0] = Rational::one();
        let coeffs: Vec<Rational> = (0..=depth).map(inv_factorial).collect();
        for &step in steps {
            let (arrow, negative) = match step {
                Step::Forward(a) => (a.0, false),
                Step::Inverse(a) => (a.0, true),
                Step::Trivial(_) => continue,
            };
            for k in (1..=depth).rev() {
                let (lower, upper) = levels.split_at_mut(k);
                let level = &mut upper[0];
                let mut suffix = 0usize;
                for j in 1..=k {
                    suffix = suffix * arrows + arrow;
                    let c = if negative && j % 2 == 1 { -coeffs[j].clone() } else { coeffs[j].clone() };
                    let stride = arrows.pow(j as u32);
                    for (u, x) in lower[k - j].iter().enumerate() {
                        if !x.is_zero() {
                            level[u * stride + suffix] += x * &c;
                        }
                    }
                }
            }
        }
        Self { arrows, levels }
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &[Rational] {
        &self.levels[k]
    }

    pub fn index_of(&self, word: &ArrowWord) -> usize {
        word.letters().iter().fold(0, |acc, a| acc * self.arrows + a.0)
    }

    pub fn coefficient(&self, word: &ArrowWord) -> Rational {
        if word.len() > self.depth() {
            panic!("word of degree {} beyond signature depth {}", word.len(), self.depth());
        }
        self.levels[word.len()][self.index_of(word)].clone()
    }

    /// Levels `1..=depth` concatenated, i.e. the integrals of every non-empty
    /// word in graded lexicographic order.
    pub fn augmented_vector(&self) -> Vec<Rational> {
        self.levels[1..].iter().flatten().cloned().collect()
    }
}

/// Result of [`order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// The smallest degree with a non-vanishing arrow-word integral.
    Exactly(usize),
    /// Every arrow-word integral of degree `1..bound` vanishes.
    AtLeast(usize),
}

/// Smallest `r ≤ max_degree` such that some arrow word of degree `r` pairs
/// non-trivially with `α`.
pub fn order(alpha: &PathMap<'_>, max_degree: usize) -> Order {
    assert!(max_degree >= 1, "max_degree must be positive");
    let sig = Signature::of(alpha, max_degree);
    (1..=max_degree)
        .find(|&r| !sig.level(r).is_empty())
        .map_or(Order::AtLeast(max_degree + 1), Order::Exactly)
}

/// `[α, β] = α ⋆ β ⋆ α⁻¹ ⋆ β⁻¹` for loops at a common base.
pub fn commutator<'g>(alpha: &PathMap<'g>, beta: &PathMap<'g>) -> Result<PathMap<'g>, PathError> {
    let g = alpha.graph();
    for l in [alpha, beta] {
        if !l.is_loop() {
            return Err(PathError::NotALoop(
                g.name(l.start()).to_string(),
                g.name(l.end()).to_string(),
            ));
        }
    }
    if alpha.start() != beta.start() {
        return Err(PathError::BaseMismatch(
            g.name(alpha.start()).to_string(),
            g.name(beta.start()).to_string(),
        ));
    }
    alpha
        .concat(beta)?
        .concat(&alpha.inverse())?
        .concat(&beta.inverse())
}

/// The arrow word read off the non-trivial steps of `α`. On a reduced,
/// non-trivial path it pairs to `±1`.
pub fn witness_word(alpha: &PathMap<'_>) -> ArrowWord {
    ArrowWord::new(alpha.steps().into_iter().filter_map(Step::arrow).collect())
}
