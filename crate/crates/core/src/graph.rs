//! Digraphs without self-loops, digraph maps and the constructions built
//! from them: line digraphs, box products, mapping cylinders and the three
//! small contractible patterns (triangle, square, double edge).

use std::collections::{HashMap, HashSet};
use std::fmt;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("duplicate arrow {0:?} -> {1:?}")]
    DuplicateArrow(String, String),
    #[error("arrow endpoint {0:?} is not a listed vertex")]
    UnknownEndpoint(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex map has {got} images but the source has {expected} vertices")]
    MapArity { expected: usize, got: usize },
    #[error("arrow {0:?} -> {1:?} is sent to ({2:?}, {3:?}), which is neither an arrow nor diagonal")]
    NotAMap(String, String, String, String),
}

/// Orientation of one arrow of a line digraph: `i -> i+1` or `i <- i+1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Forward,
    Backward,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }
}

/// A finite digraph. Vertices are opaque names kept in input order; arrows
/// are ordered pairs of distinct vertices, also kept in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    arrows: Vec<(VertexId, VertexId)>,
    arrow_index: HashMap<(VertexId, VertexId), ArrowId>,
    incident: Vec<Vec<ArrowId>>,
}

impl Digraph {
    pub fn new<V, A>(vertices: &[V], arrows: &[(A, A)]) -> Result<Self, GraphError>
    where
        V: AsRef<str>,
        A: AsRef<str>,
    {
        let mut names = Vec::with_capacity(vertices.len());
        let mut index = HashMap::with_capacity(vertices.len());
        for v in vertices {
            let name = v.as_ref().to_string();
            if index.insert(name.clone(), VertexId(names.len())).is_some() {
                return Err(GraphError::DuplicateVertex(name));
            }
            names.push(name);
        }
        let mut resolved = Vec::with_capacity(arrows.len());
        for (s, t) in arrows {
            let (s, t) = (s.as_ref(), t.as_ref());
            let si = *index
                .get(s)
                .ok_or_else(|| GraphError::UnknownEndpoint(s.to_string()))?;
            let ti = *index
                .get(t)
                .ok_or_else(|| GraphError::UnknownEndpoint(t.to_string()))?;
            resolved.push((si, ti));
        }
        Self::from_parts(names, resolved)
    }

    /// Builds a digraph from already-resolved vertex indices.
    pub fn from_parts(
        names: Vec<String>,
        arrows: Vec<(VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(GraphError::DuplicateVertex(name.clone()));
            }
        }
        let mut arrow_index = HashMap::with_capacity(arrows.len());
        let mut incident = vec![Vec::new(); names.len()];
        for (i, &(s, t)) in arrows.iter().enumerate() {
            for v in [s, t] {
                if v.0 >= names.len() {
                    return Err(GraphError::UnknownEndpoint(format!("#{}", v.0)));
                }
            }
            if s == t {
                return Err(GraphError::SelfLoop(names[s.0].clone()));
            }
            if arrow_index.insert((s, t), ArrowId(i)).is_some() {
                return Err(GraphError::DuplicateArrow(
                    names[s.0].clone(),
                    names[t.0].clone(),
                ));
            }
            incident[s.0].push(ArrowId(i));
            incident[t.0].push(ArrowId(i));
        }
        Ok(Self {
            names,
            index,
            arrows,
            arrow_index,
            incident,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(VertexId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = (ArrowId, VertexId, VertexId)> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| (ArrowId(i), s, t))
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<VertexId, GraphError> {
        self.vertex(name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].0
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].1
    }

    pub fn endpoints(&self, a: ArrowId) -> (VertexId, VertexId) {
        self.arrows[a.0]
    }

    pub fn arrow_between(&self, s: VertexId, t: VertexId) -> Option<ArrowId> {
        self.arrow_index.get(&(s, t)).copied()
    }

    pub fn has_arrow(&self, s: VertexId, t: VertexId) -> bool {
        self.arrow_index.contains_key(&(s, t))
    }

    /// Arrows with `v` as source or target, in input order.
    pub fn incident(&self, v: VertexId) -> &[ArrowId] {
        &self.incident[v.0]
    }

    /// `"u->v"`.
    pub fn arrow_label(&self, a: ArrowId) -> String {
        let (s, t) = self.arrows[a.0];
        format!("{}->{}", self.names[s.0], self.names[t.0])
    }

    /// Resolves either `"u->v"` or the positional label `"aK"` (1-based).
    pub fn parse_arrow_label(&self, label: &str) -> Option<ArrowId> {
        let label = label.trim();
        if let Some((s, t)) = label.split_once("->") {
            let s = self.vertex(s.trim())?;
            let t = self.vertex(t.trim())?;
            return self.arrow_between(s, t);
        }
        let k: usize = label.strip_prefix('a')?.parse().ok()?;
        (1..=self.arrows.len()).contains(&k).then(|| ArrowId(k - 1))
    }

    /// Undirected distances from `from`; `usize::MAX` when unreachable.
    pub fn undirected_distances(&self, from: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = std::collections::VecDeque::new();
        dist[from.0] = 0;
        queue.push_back(from);
        while let Some(v) = queue.pop_front() {
            for &a in self.incident(v) {
                let (s, t) = self.endpoints(a);
                let w = if s == v { t } else { s };
                if dist[w.0] == usize::MAX {
                    dist[w.0] = dist[v.0] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "digraph({} vertices; ", self.vertex_count())?;
        for (i, (a, _, _)) in self.arrows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.arrow_label(a))?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedDigraph {
    pub graph: Digraph,
    pub base: VertexId,
}

impl BasedDigraph {
    pub fn new(graph: Digraph, base: &str) -> Result<Self, GraphError> {
        let base = graph.require_vertex(base)?;
        Ok(Self { graph, base })
    }
}

/// Where a digraph map sends an arrow.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArrowImage {
    Arrow(ArrowId),
    Diagonal(VertexId),
}

/// A vertex map `f: G -> H` with `(f(u), f(v))` an arrow of `H` or diagonal
/// for every arrow `(u, v)` of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigraphMap<'a> {
    source: &'a Digraph,
    target: &'a Digraph,
    images: Vec<VertexId>,
}

impl<'a> DigraphMap<'a> {
    pub fn new(
        source: &'a Digraph,
        target: &'a Digraph,
        images: Vec<VertexId>,
    ) -> Result<Self, GraphError> {
        if images.len() != source.vertex_count() {
            return Err(GraphError::MapArity {
                expected: source.vertex_count(),
                got: images.len(),
            });
        }
        if let Some(v) = images.iter().find(|v| v.0 >= target.vertex_count()) {
            return Err(GraphError::UnknownVertex(format!("#{}", v.0)));
        }
        for (_, s, t) in source.arrows() {
            let (fs, ft) = (images[s.0], images[t.0]);
            if fs != ft && !target.has_arrow(fs, ft) {
                return Err(GraphError::NotAMap(
                    source.name(s).to_string(),
                    source.name(t).to_string(),
                    target.name(fs).to_string(),
                    target.name(ft).to_string(),
                ));
            }
        }
        Ok(Self {
            source,
            target,
            images,
        })
    }

    /// Builds a map from `(source name, target name)` pairs.
    pub fn from_names<S: AsRef<str>>(
        source: &'a Digraph,
        target: &'a Digraph,
        pairs: &[(S, S)],
    ) -> Result<Self, GraphError> {
        let mut images = vec![None; source.vertex_count()];
        for (u, v) in pairs {
            let u = source.require_vertex(u.as_ref())?;
            images[u.0] = Some(target.require_vertex(v.as_ref())?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| img.ok_or_else(|| GraphError::UnknownVertex(source.names[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, images)
    }

    pub fn identity(graph: &'a Digraph) -> Self {
        Self {
            source: graph,
            target: graph,
            images: graph.vertices().collect(),
        }
    }

    pub fn source(&self) -> &'a Digraph {
        self.source
    }

    pub fn target(&self) -> &'a Digraph {
        self.target
    }

    pub fn images(&self) -> &[VertexId] {
        &self.images
    }

    pub fn image(&self, v: VertexId) -> VertexId {
        self.images[v.0]
    }

    pub fn arrow_image(&self, a: ArrowId) -> ArrowImage {
        let (s, t) = self.source.endpoints(a);
        let (fs, ft) = (self.image(s), self.image(t));
        match self.target.arrow_between(fs, ft) {
            Some(b) => ArrowImage::Arrow(b),
            None => ArrowImage::Diagonal(fs),
        }
    }

    /// `next ∘ self`. Panics if `next` does not start where `self` ends.
    pub fn then(&self, next: &DigraphMap<'a>) -> DigraphMap<'a> {
        assert!(
            std::ptr::eq(self.target, next.source) || self.target == next.source,
            "maps are not composable"
        );
        DigraphMap {
            source: self.source,
            target: next.target,
            images: self.images.iter().map(|&v| next.image(v)).collect(),
        }
    }
}

pub fn is_digraph_map(images: &[VertexId], source: &Digraph, target: &Digraph) -> bool {
    DigraphMap::new(source, target, images.to_vec()).is_ok()
}

/// The based line digraph `I_n` on vertices `0..=n`, based at `0`.
pub fn line_digraph(orientations: &[Orientation]) -> BasedDigraph {
    let names = (0..=orientations.len()).map(|i| i.to_string()).collect();
    let arrows = orientations
        .iter()
        .enumerate()
        .map(|(i, o)| match o {
            Orientation::Forward => (VertexId(i), VertexId(i + 1)),
            Orientation::Backward => (VertexId(i + 1), VertexId(i)),
        })
        .collect();
    let graph = Digraph::from_parts(names, arrows).expect("line digraphs are simple");
    BasedDigraph {
        graph,
        base: VertexId(0),
    }
}

/// Vertex index of `(g, h)` inside `box_product(G, H)`.
pub fn box_vertex(h_count: usize, g: VertexId, h: VertexId) -> VertexId {
    VertexId(g.0 * h_count + h.0)
}

/// `G ⊡ H`: vertices are pairs, arrows fix one coordinate and move the other
/// along an arrow.
pub fn box_product(g: &Digraph, h: &Digraph) -> Digraph {
    let hn = h.vertex_count();
    let mut names = Vec::with_capacity(g.vertex_count() * hn);
    for gv in g.vertices() {
        for hv in h.vertices() {
            names.push(format!("({},{})", g.name(gv), h.name(hv)));
        }
    }
    let mut arrows = Vec::with_capacity(g.vertex_count() * h.arrow_count() + g.arrow_count() * hn);
    for gv in g.vertices() {
        for (_, s, t) in h.arrows() {
            arrows.push((box_vertex(hn, gv, s), box_vertex(hn, gv, t)));
        }
    }
    for (_, s, t) in g.arrows() {
        for hv in h.vertices() {
            arrows.push((box_vertex(hn, s, hv), box_vertex(hn, t, hv)));
        }
    }
    Digraph::from_parts(names, arrows).expect("box products of simple digraphs are simple")
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CylinderDirection {
    /// Rungs `v -> f(v)`.
    Direct,
    /// Rungs `f(v) -> v`.
    Inverse,
}

/// Mapping cylinder of `f: G -> H`: the disjoint union of `G` (vertices
/// `s:<name>`) and `H` (vertices `t:<name>`) plus one rung per vertex of `G`.
pub fn cylinder(f: &DigraphMap<'_>, direction: CylinderDirection) -> Digraph {
    let (g, h) = (f.source(), f.target());
    let offset = g.vertex_count();
    let names = g
        .names()
        .iter()
        .map(|n| format!("s:{n}"))
        .chain(h.names().iter().map(|n| format!("t:{n}")))
        .collect();
    let mut arrows: Vec<(VertexId, VertexId)> = g.arrows().map(|(_, s, t)| (s, t)).collect();
    arrows.extend(
        h.arrows()
            .map(|(_, s, t)| (VertexId(s.0 + offset), VertexId(t.0 + offset))),
    );
    for v in g.vertices() {
        let fv = VertexId(f.image(v).0 + offset);
        arrows.push(match direction {
            CylinderDirection::Direct => (v, fv),
            CylinderDirection::Inverse => (fv, v),
        });
    }
    Digraph::from_parts(names, arrows).expect("cylinders are simple")
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum PatternKind {
    Triangle,
    Square,
    DoubleEdge,
}

/// An embedding of a standard pattern, recorded by which host arrows play
/// the roles `a1, a2, ...`:
///
/// ```text
///  triangle       square          double edge
///  v0 -a1-> v1    v0 -a1-> v1     v0 -a1-> v1
///   \a3     |a2   |a3      |a2    v1 -a2-> v0
///    '-> v2 v     v2 -a4-> v3
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternEmbedding {
    pub kind: PatternKind,
    pub arrows: Vec<ArrowId>,
}

impl PatternEmbedding {
    /// `a_k` for `k` counted from 1.
    pub fn arrow(&self, k: usize) -> ArrowId {
        self.arrows[k - 1]
    }

    /// The pattern vertices `v0, v1, ...` in standard order.
    pub fn vertices(&self, g: &Digraph) -> Vec<VertexId> {
        match self.kind {
            PatternKind::Triangle => {
                let (v0, v1) = g.endpoints(self.arrow(1));
                vec![v0, v1, g.target(self.arrow(2))]
            }
            PatternKind::Square => {
                let (v0, v1) = g.endpoints(self.arrow(1));
                vec![v0, v1, g.target(self.arrow(3)), g.target(self.arrow(2))]
            }
            PatternKind::DoubleEdge => {
                let (v0, v1) = g.endpoints(self.arrow(1));
                vec![v0, v1]
            }
        }
    }

    /// Checks the incidence table of the standard pattern against `g`.
    pub fn is_valid_in(&self, g: &Digraph) -> bool {
        let expected = match self.kind {
            PatternKind::Triangle => 3,
            PatternKind::Square => 4,
            PatternKind::DoubleEdge => 2,
        };
        if self.arrows.len() != expected || self.arrows.iter().any(|a| a.0 >= g.arrow_count()) {
            return false;
        }
        let e = |k: usize| g.endpoints(self.arrow(k));
        match self.kind {
            PatternKind::Triangle => {
                let ((v0, v1), (s2, v2), (s3, t3)) = (e(1), e(2), e(3));
                s2 == v1 && s3 == v0 && t3 == v2 && distinct(&[v0, v1, v2])
            }
            PatternKind::Square => {
                let ((v0, v1), (s2, v3), (s3, v2), (s4, t4)) = (e(1), e(2), e(3), e(4));
                s2 == v1 && s3 == v0 && s4 == v2 && t4 == v3 && distinct(&[v0, v1, v2, v3])
            }
            PatternKind::DoubleEdge => {
                let ((v0, v1), (s2, t2)) = (e(1), e(2));
                s2 == v1 && t2 == v0
            }
        }
    }
}

fn distinct(vs: &[VertexId]) -> bool {
    vs.iter().collect::<HashSet<_>>().len() == vs.len()
}

/// All embeddings of the standard pattern, one per host arrow set. Host
/// arrows are scanned in input order, so the first binding found for a
/// given arrow set is the one kept.
pub fn enumerate_patterns(g: &Digraph, kind: PatternKind) -> Vec<PatternEmbedding> {
    let mut out = Vec::new();
    let mut seen: HashSet<Vec<ArrowId>> = HashSet::new();
    let mut push = |arrows: Vec<ArrowId>| {
        let mut key = arrows.clone();
        key.sort();
        if seen.insert(key) {
            out.push(PatternEmbedding { kind, arrows });
        }
    };
    let outgoing = |v: VertexId| {
        g.incident(v)
            .iter()
            .copied()
            .filter(move |&a| g.source(a) == v)
    };
    for (a1, v0, v1) in g.arrows() {
        match kind {
            PatternKind::Triangle => {
                for a2 in outgoing(v1) {
                    let v2 = g.target(a2);
                    if v2 == v0 {
                        continue;
                    }
                    if let Some(a3) = g.arrow_between(v0, v2) {
                        push(vec![a1, a2, a3]);
                    }
                }
            }
            PatternKind::Square => {
                for a2 in outgoing(v1) {
                    let v3 = g.target(a2);
                    if v3 == v0 {
                        continue;
                    }
                    for a3 in outgoing(v0) {
                        let v2 = g.target(a3);
                        if v2 == v1 || v2 == v3 {
                            continue;
                        }
                        if let Some(a4) = g.arrow_between(v2, v3) {
                            push(vec![a1, a2, a3, a4]);
                        }
                    }
                }
            }
            PatternKind::DoubleEdge => {
                if let Some(a2) = g.arrow_between(v1, v0) {
                    push(vec![a1, a2]);
                }
            }
        }
    }
    out
}
