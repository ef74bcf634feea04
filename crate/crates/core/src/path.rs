//! Path maps `I_n -> G`, stored as a vertex sequence plus the orientation of
//! each arrow of the line digraph they start from.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::graph::{ArrowId, ArrowImage, Digraph, DigraphMap, VertexId};
pub use crate::graph::Orientation;

/// The `i`-th step of a path map: an arrow traversed forwards, an arrow
/// traversed backwards (its formal inverse), or a stationary step.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Forward(ArrowId),
    Inverse(ArrowId),
    Trivial(VertexId),
}

impl Step {
    pub fn reversed(self) -> Step {
        match self {
            Step::Forward(a) => Step::Inverse(a),
            Step::Inverse(a) => Step::Forward(a),
            Step::Trivial(v) => Step::Trivial(v),
        }
    }

    /// Same arrow, opposite directions.
    pub fn cancels(self, next: Step) -> bool {
        matches!(
            (self, next),
            (Step::Forward(a), Step::Inverse(b)) | (Step::Inverse(a), Step::Forward(b)) if a == b
        )
    }

    pub fn arrow(self) -> Option<ArrowId> {
        match self {
            Step::Forward(a) | Step::Inverse(a) => Some(a),
            Step::Trivial(_) => None,
        }
    }

    pub fn is_trivial(self) -> bool {
        matches!(self, Step::Trivial(_))
    }

    /// Vertices `(from, to)` of the step in `g`.
    pub fn ends(self, g: &Digraph) -> (VertexId, VertexId) {
        match self {
            Step::Forward(a) => g.endpoints(a),
            Step::Inverse(a) => {
                let (s, t) = g.endpoints(a);
                (t, s)
            }
            Step::Trivial(v) => (v, v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("a path needs at least one vertex")]
    Empty,
    #[error("{vertices} vertices need {} orientations, got {orientations}", vertices - 1)]
    LengthMismatch { vertices: usize, orientations: usize },
    #[error("step {index} ({from} -> {to}, {orientation:?}) has no matching arrow")]
    InvalidStep {
        index: usize,
        from: String,
        to: String,
        orientation: Orientation,
    },
    #[error("vertex index {0} is not in the host digraph")]
    UnknownVertex(usize),
    #[error("path ends at {0} but the next one starts at {1}")]
    EndpointMismatch(String, String),
    #[error("paths live in different digraphs")]
    HostMismatch,
    #[error("index {index} out of range for a path of length {len}")]
    OutOfRange { index: usize, len: usize },
    #[error("path from {0} to {1} is not a loop")]
    NotALoop(String, String),
    #[error("loops are based at {0} and {1}")]
    BaseMismatch(String, String),
}

/// A digraph map from a line digraph into `graph`. Trivial steps always
/// carry `Orientation::Forward`, so equality is syntactic.
#[derive(Clone, Debug)]
pub struct PathMap<'g> {
    graph: &'g Digraph,
    vertices: Vec<VertexId>,
    orientations: Vec<Orientation>,
}

impl PartialEq for PathMap<'_> {
    fn eq(&self, other: &Self) -> bool {
        same_host(self.graph, other.graph)
            && self.vertices == other.vertices
            && self.orientations == other.orientations
    }
}

impl Eq for PathMap<'_> {}

impl Hash for PathMap<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
        self.orientations.hash(state);
    }
}

pub(crate) fn same_host(a: &Digraph, b: &Digraph) -> bool {
    std::ptr::eq(a, b) || a == b
}

impl<'g> PathMap<'g> {
    pub fn new(
        graph: &'g Digraph,
        vertices: Vec<VertexId>,
        mut orientations: Vec<Orientation>,
    ) -> Result<Self, PathError> {
        if vertices.is_empty() {
            return Err(PathError::Empty);
        }
        if vertices.len() != orientations.len() + 1 {
            return Err(PathError::LengthMismatch {
                vertices: vertices.len(),
                orientations: orientations.len(),
            });
        }
        if let Some(v) = vertices.iter().find(|v| v.0 >= graph.vertex_count()) {
            return Err(PathError::UnknownVertex(v.0));
        }
        for (i, o) in orientations.iter_mut().enumerate() {
            let (u, v) = (vertices[i], vertices[i + 1]);
            let ok = match *o {
                _ if u == v => {
                    *o = Orientation::Forward;
                    true
                }
                Orientation::Forward => graph.has_arrow(u, v),
                Orientation::Backward => graph.has_arrow(v, u),
            };
            if !ok {
                return Err(PathError::InvalidStep {
                    index: i + 1,
                    from: graph.name(u).to_string(),
                    to: graph.name(v).to_string(),
                    orientation: *o,
                });
            }
        }
        Ok(Self {
            graph,
            vertices,
            orientations,
        })
    }

    pub fn from_names(
        graph: &'g Digraph,
        vertices: &[&str],
        orientations: &[Orientation],
    ) -> Result<Self, PathError> {
        let vs = vertices
            .iter()
            .map(|n| graph.vertex(n).ok_or(PathError::UnknownVertex(usize::MAX)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(graph, vs, orientations.to_vec())
    }

    /// The length-0 path sitting at `v`.
    pub fn trivial(graph: &'g Digraph, v: VertexId) -> Self {
        Self {
            graph,
            vertices: vec![v],
            orientations: Vec::new(),
        }
    }

    /// Rebuilds a path from `start` and a step sequence.
    pub fn from_steps(graph: &'g Digraph, start: VertexId, steps: &[Step]) -> Result<Self, PathError> {
        let mut vertices = Vec::with_capacity(steps.len() + 1);
        let mut orientations = Vec::with_capacity(steps.len());
        vertices.push(start);
        for (i, &step) in steps.iter().enumerate() {
            let (from, to) = step.ends(graph);
            let last = *vertices.last().expect("non-empty");
            if from != last {
                return Err(PathError::EndpointMismatch(
                    graph.name(last).to_string(),
                    format!("{} (step {})", graph.name(from), i + 1),
                ));
            }
            vertices.push(to);
            orientations.push(match step {
                Step::Inverse(_) => Orientation::Backward,
                _ => Orientation::Forward,
            });
        }
        Ok(Self {
            graph,
            vertices,
            orientations,
        })
    }

    pub fn graph(&self) -> &'g Digraph {
        self.graph
    }

    /// Number of steps `n`.
    pub fn len(&self) -> usize {
        self.orientations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orientations.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn orientations(&self) -> &[Orientation] {
        &self.orientations
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().expect("non-empty")
    }

    pub fn is_loop(&self) -> bool {
        self.start() == self.end()
    }

    /// Step `i` for `i` in `1..=len()`.
    pub fn step(&self, i: usize) -> Step {
        let (u, v) = (self.vertices[i - 1], self.vertices[i]);
        if u == v {
            return Step::Trivial(u);
        }
        match self.orientations[i - 1] {
            Orientation::Forward => Step::Forward(self.graph.arrow_between(u, v).expect("validated")),
            Orientation::Backward => Step::Inverse(self.graph.arrow_between(v, u).expect("validated")),
        }
    }

    pub fn steps(&self) -> Vec<Step> {
        (1..=self.len()).map(|i| self.step(i)).collect()
    }

    /// `self ⋆ next`.
    pub fn concat(&self, next: &PathMap<'g>) -> Result<PathMap<'g>, PathError> {
        if !same_host(self.graph, next.graph) {
            return Err(PathError::HostMismatch);
        }
        if self.end() != next.start() {
            return Err(PathError::EndpointMismatch(
                self.graph.name(self.end()).to_string(),
                self.graph.name(next.start()).to_string(),
            ));
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&next.vertices[1..]);
        let mut orientations = self.orientations.clone();
        orientations.extend_from_slice(&next.orientations);
        Ok(PathMap {
            graph: self.graph,
            vertices,
            orientations,
        })
    }

    pub fn inverse(&self) -> PathMap<'g> {
        let vertices: Vec<_> = self.vertices.iter().rev().copied().collect();
        let orientations = self
            .orientations
            .iter()
            .rev()
            .zip(vertices.windows(2))
            .map(|(o, w)| if w[0] == w[1] { Orientation::Forward } else { o.flip() })
            .collect();
        PathMap {
            graph: self.graph,
            vertices,
            orientations,
        }
    }

    /// Restriction to `[a, b]`, re-indexed to start at 0.
    pub fn cut(&self, a: usize, b: usize) -> Result<PathMap<'g>, PathError> {
        if b > self.len() {
            return Err(PathError::OutOfRange { index: b, len: self.len() });
        }
        if a > b {
            return Err(PathError::OutOfRange { index: a, len: self.len() });
        }
        Ok(PathMap {
            graph: self.graph,
            vertices: self.vertices[a..=b].to_vec(),
            orientations: self.orientations[a..b].to_vec(),
        })
    }

    /// Splices a stationary step at vertex `i`.
    pub fn insert_trivial(&self, i: usize) -> Result<PathMap<'g>, PathError> {
        if i > self.len() {
            return Err(PathError::OutOfRange { index: i, len: self.len() });
        }
        let mut vertices = self.vertices.clone();
        vertices.insert(i, self.vertices[i]);
        let mut orientations = self.orientations.clone();
        orientations.insert(i, Orientation::Forward);
        Ok(PathMap {
            graph: self.graph,
            vertices,
            orientations,
        })
    }

    /// Drops trivial steps and cancels adjacent `a, a⁻¹` pairs until none
    /// remain. A single left-to-right pass with a stack reaches the fixpoint.
    pub fn reduce(&self) -> PathMap<'g> {
        let mut stack: Vec<Step> = Vec::with_capacity(self.len());
        for step in self.steps() {
            if step.is_trivial() {
                continue;
            }
            match stack.last() {
                Some(&top) if top.cancels(step) => {
                    stack.pop();
                }
                _ => stack.push(step),
            }
        }
        PathMap::from_steps(self.graph, self.start(), &stack).expect("reduction keeps steps contiguous")
    }

    pub fn is_reduced(&self) -> bool {
        let steps = self.steps();
        steps.iter().all(|s| !s.is_trivial()) && steps.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn elem_equivalent(&self, other: &PathMap<'g>) -> Result<bool, PathError> {
        if !same_host(self.graph, other.graph) {
            return Err(PathError::HostMismatch);
        }
        Ok(self.reduce() == other.reduce())
    }

    /// `f ∘ self`; steps sent to the diagonal become trivial.
    pub fn push_forward<'h>(&self, f: &DigraphMap<'h>) -> Result<PathMap<'h>, PathError> {
        if !same_host(self.graph, f.source()) {
            return Err(PathError::HostMismatch);
        }
        let vertices: Vec<_> = self.vertices.iter().map(|&v| f.image(v)).collect();
        let orientations = self
            .orientations
            .iter()
            .zip(vertices.windows(2))
            .map(|(&o, w)| if w[0] == w[1] { Orientation::Forward } else { o })
            .collect();
        Ok(PathMap {
            graph: f.target(),
            vertices,
            orientations,
        })
    }

    pub(crate) fn from_raw(graph: &'g Digraph, vertices: Vec<VertexId>, orientations: Vec<Orientation>) -> Self {
        debug_assert!(PathMap::new(graph, vertices.clone(), orientations.clone()).is_ok());
        Self {
            graph,
            vertices,
            orientations,
        }
    }
}

/// Arrow image of a single step under `f`.
pub fn push_step(f: &DigraphMap<'_>, step: Step) -> Step {
    match step {
        Step::Trivial(v) => Step::Trivial(f.image(v)),
        Step::Forward(a) => match f.arrow_image(a) {
            ArrowImage::Arrow(b) => Step::Forward(b),
            ArrowImage::Diagonal(v) => Step::Trivial(v),
        },
        Step::Inverse(a) => match f.arrow_image(a) {
            ArrowImage::Arrow(b) => Step::Inverse(b),
            ArrowImage::Diagonal(v) => Step::Trivial(v),
        },
    }
}

impl fmt::Display for PathMap<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.graph.name(self.vertices[0]))?;
        for (i, o) in self.orientations.iter().enumerate() {
            let (u, v) = (self.vertices[i], self.vertices[i + 1]);
            let arrow = match o {
                _ if u == v => "=",
                Orientation::Forward => "->",
                Orientation::Backward => "<-",
            };
            write!(f, " {arrow} {}", self.graph.name(v))?;
        }
        Ok(())
    }
}

/// Single-step moves available from `v`: stay, then outgoing arrows, then
/// incoming arrows traversed backwards, each in arrow input order.
pub fn step_choices(g: &Digraph, v: VertexId) -> Vec<(VertexId, Orientation)> {
    let mut out = vec![(v, Orientation::Forward)];
    out.extend(
        g.incident(v)
            .iter()
            .filter(|&&a| g.source(a) == v)
            .map(|&a| (g.target(a), Orientation::Forward)),
    );
    out.extend(
        g.incident(v)
            .iter()
            .filter(|&&a| g.target(a) == v)
            .map(|&a| (g.source(a), Orientation::Backward)),
    );
    out
}

/// All path maps from `base` with at most `max_len` steps, shortest first and
/// lexicographic in [`step_choices`] order within a length. With
/// `loops_only`, only paths returning to `base` are produced.
pub fn enumerate_paths<'g>(
    g: &'g Digraph,
    base: VertexId,
    max_len: usize,
    loops_only: bool,
) -> Vec<PathMap<'g>> {
    let dist = g.undirected_distances(base);
    let choices: Vec<_> = g.vertices().map(|v| step_choices(g, v)).collect();
    let mut out = Vec::new();
    for len in 0..=max_len {
        let mut vertices = vec![base];
        let mut orientations = Vec::with_capacity(len);
        walk(
            g,
            &choices,
            &dist,
            len,
            loops_only,
            base,
            &mut vertices,
            &mut orientations,
            &mut out,
        );
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn walk<'g>(
    g: &'g Digraph,
    choices: &[Vec<(VertexId, Orientation)>],
    dist: &[usize],
    len: usize,
    loops_only: bool,
    base: VertexId,
    vertices: &mut Vec<VertexId>,
    orientations: &mut Vec<Orientation>,
    out: &mut Vec<PathMap<'g>>,
) {
    let here = *vertices.last().expect("non-empty");
    let remaining = len - orientations.len();
    if loops_only && dist[here.0] > remaining {
        return;
    }
    if remaining == 0 {
        if !loops_only || here == base {
            out.push(PathMap::from_raw(g, vertices.clone(), orientations.clone()));
        }
        return;
    }
    for &(next, o) in &choices[here.0] {
        vertices.push(next);
        orientations.push(o);
        walk(g, choices, dist, len, loops_only, base, vertices, orientations, out);
        vertices.pop();
        orientations.pop();
    }
}
