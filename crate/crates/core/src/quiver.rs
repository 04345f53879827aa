//! Finite quivers, paths, walks and the combinatorial arrow classifications.
//!
//! Paths store their arrows in traversal order (first-traversed first). The
//! right-to-left notation `βηα` for "α, then η, then β" is only a display
//! convention, produced by [`Quiver::display_path`].

use std::cmp::Ordering;
use std::collections::VecDeque;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow name `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
    #[error("unknown arrow id {0}")]
    UnknownArrow(usize),
    #[error("composition undefined: {later} cannot follow {earlier}")]
    CompositionUndefined { later: String, earlier: String },
    #[error("walk step {step} is not incident to the current vertex")]
    BrokenWalk { step: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A path; trivial paths have no arrows and `source == target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    pub fn is_cycle(&self) -> bool {
        self.source == self.target
    }

    /// Whether `self` occurs as a contiguous block of `other`.
    pub fn is_subpath_of(&self, other: &Path) -> bool {
        if self.is_trivial() {
            return other.source == self.source || other.target == self.source;
        }
        other
            .arrows
            .windows(self.arrows.len())
            .any(|w| w == self.arrows.as_slice())
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Inverse,
}

/// A walk in the underlying undirected graph, stored unreduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    start: VertexId,
    end: VertexId,
    steps: Vec<(ArrowId, Direction)>,
}

impl Walk {
    pub fn trivial(v: VertexId) -> Walk {
        Walk {
            start: v,
            end: v,
            steps: Vec::new(),
        }
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn steps(&self) -> &[(ArrowId, Direction)] {
        &self.steps
    }

    pub fn inverse(&self) -> Walk {
        Walk {
            start: self.end,
            end: self.start,
            steps: self
                .steps
                .iter()
                .rev()
                .map(|&(a, d)| {
                    (
                        a,
                        match d {
                            Direction::Forward => Direction::Inverse,
                            Direction::Inverse => Direction::Forward,
                        },
                    )
                })
                .collect(),
        }
    }

    /// `self` followed by `next`; panics if the endpoints do not meet.
    pub fn then(&self, next: &Walk) -> Walk {
        assert_eq!(self.end, next.start, "walks do not meet");
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&next.steps);
        Walk {
            start: self.start,
            end: next.end,
            steps,
        }
    }

    /// Cancels adjacent step/inverse-step pairs.
    pub fn reduced(&self) -> Walk {
        let mut out: Vec<(ArrowId, Direction)> = Vec::new();
        for &(a, d) in &self.steps {
            match out.last() {
                Some(&(b, e)) if a == b && d != e => {
                    out.pop();
                }
                _ => out.push((a, d)),
            }
        }
        Walk {
            start: self.start,
            end: self.end,
            steps: out,
        }
    }

    /// Forward occurrences of `a` minus inverse occurrences, in the reduced walk.
    pub fn signed_count(&self, a: ArrowId) -> i64 {
        self.reduced()
            .steps
            .iter()
            .filter(|(b, _)| *b == a)
            .map(|(_, d)| match d {
                Direction::Forward => 1,
                Direction::Inverse => -1,
            })
            .sum()
    }

    pub fn uses(&self, a: ArrowId) -> bool {
        self.steps.iter().any(|(b, _)| *b == a)
    }
}

impl Quiver {
    pub fn new() -> Self {
        Quiver::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, QuiverError> {
        if self.vertices.iter().any(|v| v == name) {
            return Err(QuiverError::DuplicateVertex(name.to_string()));
        }
        self.vertices.push(name.to_string());
        Ok(VertexId(self.vertices.len() - 1))
    }

    pub fn add_arrow(&mut self, name: &str, source: VertexId, target: VertexId) -> Result<ArrowId, QuiverError> {
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(QuiverError::DuplicateArrow(name.to_string()));
        }
        for v in [source, target] {
            if v.0 >= self.vertices.len() {
                return Err(QuiverError::UnknownVertex(v.0));
            }
        }
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        Ok(ArrowId(self.arrows.len() - 1))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    pub fn is_loop(&self, a: ArrowId) -> bool {
        self.source(a) == self.target(a)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name).map(VertexId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    pub fn outgoing(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(move |&a| self.source(a) == v)
    }

    pub fn incoming(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(move |&a| self.target(a) == v)
    }

    pub fn arrow_path(&self, a: ArrowId) -> Path {
        Path {
            source: self.source(a),
            target: self.target(a),
            arrows: vec![a],
        }
    }

    /// Builds a path from arrows in traversal order.
    pub fn path(&self, arrows: &[ArrowId]) -> Result<Path, QuiverError> {
        let Some(&first) = arrows.first() else {
            return Err(QuiverError::UnknownArrow(usize::MAX));
        };
        for a in arrows {
            if a.0 >= self.arrows.len() {
                return Err(QuiverError::UnknownArrow(a.0));
            }
        }
        for w in arrows.windows(2) {
            if self.target(w[0]) != self.source(w[1]) {
                return Err(QuiverError::CompositionUndefined {
                    later: self.arrow_name(w[1]).to_string(),
                    earlier: self.arrow_name(w[0]).to_string(),
                });
            }
        }
        Ok(Path {
            source: self.source(first),
            target: self.target(*arrows.last().unwrap()),
            arrows: arrows.to_vec(),
        })
    }

    /// The path "`earlier`, then `later`" (written `later·earlier`).
    pub fn compose(&self, later: &Path, earlier: &Path) -> Result<Path, QuiverError> {
        if later.source != earlier.target {
            return Err(QuiverError::CompositionUndefined {
                later: self.display_path(later),
                earlier: self.display_path(earlier),
            });
        }
        let mut arrows = earlier.arrows.clone();
        arrows.extend_from_slice(&later.arrows);
        Ok(Path {
            source: earlier.source,
            target: later.target,
            arrows,
        })
    }

    pub fn parallel(&self, p: &Path, q: &Path) -> bool {
        p.source == q.source && p.target == q.target
    }

    /// Right-to-left display, e.g. `beta·eta·alpha` for "alpha, eta, beta".
    pub fn display_path(&self, p: &Path) -> String {
        if p.is_trivial() {
            return self.vertex_name(p.source).to_string();
        }
        p.arrows
            .iter()
            .rev()
            .map(|&a| self.arrow_name(a))
            .collect::<Vec<_>>()
            .join("·")
    }

    /// Traversal-order display with spaces, as used by relation lines.
    pub fn traversal_string(&self, p: &Path) -> String {
        p.arrows
            .iter()
            .map(|&a| self.arrow_name(a))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Component index of each vertex; components are numbered by their lowest vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for a in &self.arrows {
                    let nb = if a.source.0 == v {
                        a.target.0
                    } else if a.target.0 == v {
                        a.source.0
                    } else {
                        continue;
                    };
                    if label[nb] == usize::MAX {
                        label[nb] = next;
                        queue.push_back(nb);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let labels = self.component_labels();
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut comps = vec![Vec::new(); count];
        for (v, &c) in labels.iter().enumerate() {
            comps[c].push(VertexId(v));
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.connected_components().len()
    }

    /// First Betti number `m − n + c` of the underlying graph.
    pub fn betti(&self) -> usize {
        self.arrow_count() + self.component_count() - self.vertex_count()
    }

    pub fn is_source_vertex(&self, v: VertexId) -> bool {
        self.incoming(v).next().is_none()
    }

    pub fn is_sink_vertex(&self, v: VertexId) -> bool {
        self.outgoing(v).next().is_none()
    }

    pub fn is_source_arrow(&self, a: ArrowId) -> bool {
        let (s, t) = (self.source(a), self.target(a));
        self.is_source_vertex(s)
            && self.outgoing(s).all(|b| b == a)
            && self.incoming(t).all(|b| b == a)
    }

    pub fn is_sink_arrow(&self, a: ArrowId) -> bool {
        let (s, t) = (self.source(a), self.target(a));
        self.is_sink_vertex(t)
            && self.outgoing(s).all(|b| b == a)
            && self.incoming(t).all(|b| b == a)
    }

    /// `Some(n)` iff the quiver is an oriented cycle on `n` vertices.
    pub fn crown_order(&self) -> Option<usize> {
        let n = self.vertex_count();
        if n == 0 || self.arrow_count() != n || self.component_count() != 1 {
            return None;
        }
        self.vertices()
            .all(|v| self.incoming(v).count() == 1 && self.outgoing(v).count() == 1)
            .then_some(n)
    }

    /// All quiver paths of length `n` (no relations), in canonical order.
    pub fn paths_of_length(&self, n: usize) -> Vec<Path> {
        let mut level: Vec<Path> = self.vertices().map(Path::trivial).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &level {
                for a in self.outgoing(p.target) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(Path {
                        source: p.source,
                        target: self.target(a),
                        arrows,
                    });
                }
            }
            level = next;
        }
        level.sort();
        level
    }

    /// Checks that a step sequence is a walk from `start`.
    pub fn walk(&self, start: VertexId, steps: Vec<(ArrowId, Direction)>) -> Result<Walk, QuiverError> {
        let mut at = start;
        for (k, &(a, d)) in steps.iter().enumerate() {
            if a.0 >= self.arrows.len() {
                return Err(QuiverError::UnknownArrow(a.0));
            }
            let (from, to) = match d {
                Direction::Forward => (self.source(a), self.target(a)),
                Direction::Inverse => (self.target(a), self.source(a)),
            };
            if from != at {
                return Err(QuiverError::BrokenWalk { step: k });
            }
            at = to;
        }
        Ok(Walk {
            start,
            end: at,
            steps,
        })
    }

    /// Renders a walk, writing inverse steps as `name^-1`, right to left.
    pub fn display_walk(&self, w: &Walk) -> String {
        if w.steps.is_empty() {
            return self.vertex_name(w.start).to_string();
        }
        w.steps
            .iter()
            .rev()
            .map(|&(a, d)| match d {
                Direction::Forward => self.arrow_name(a).to_string(),
                Direction::Inverse => format!("{}^-1", self.arrow_name(a)),
            })
            .collect::<Vec<_>>()
            .join("·")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// e1 -alpha-> e2 -eta-> e3 -beta-> e4
    fn a4() -> (Quiver, [ArrowId; 3]) {
        let mut q = Quiver::new();
        let v: Vec<_> = (1..=4).map(|i| q.add_vertex(&format!("e{i}")).unwrap()).collect();
        let alpha = q.add_arrow("alpha", v[0], v[1]).unwrap();
        let eta = q.add_arrow("eta", v[1], v[2]).unwrap();
        let beta = q.add_arrow("beta", v[2], v[3]).unwrap();
        (q, [alpha, eta, beta])
    }

    #[test]
    fn compose_puts_later_arrows_last() {
        let (q, [alpha, eta, _]) = a4();
        let a = q.arrow_path(alpha);
        let e = q.arrow_path(eta);
        assert_eq!(q.compose(&Path::trivial(VertexId(1)), &a).unwrap(), a);
        let ea = q.compose(&e, &a).unwrap();
        assert_eq!(ea.len(), 2);
        assert_eq!(q.display_path(&ea), "eta·alpha");
        assert!(matches!(
            q.compose(&a, &e),
            Err(QuiverError::CompositionUndefined { .. })
        ));
    }

    #[test]
    fn parallel_and_classification() {
        let (q, [alpha, eta, beta]) = a4();
        assert!(q.parallel(&Path::trivial(VertexId(0)), &Path::trivial(VertexId(0))));
        assert!(!q.parallel(&q.arrow_path(alpha), &q.arrow_path(beta)));
        assert!(q.is_source_arrow(alpha));
        assert!(q.is_sink_arrow(beta));
        assert!(!q.is_source_arrow(eta) && !q.is_sink_arrow(eta));
    }

    #[test]
    fn betti_and_crowns() {
        let mut q = Quiver::new();
        q.add_vertex("e").unwrap();
        assert_eq!((q.component_count(), q.betti()), (1, 0));
        q.add_arrow("x", VertexId(0), VertexId(0)).unwrap();
        assert_eq!(q.crown_order(), Some(1));

        let mut two = Quiver::new();
        let a = two.add_vertex("f1").unwrap();
        let b = two.add_vertex("f2").unwrap();
        two.add_arrow("gamma*", a, b).unwrap();
        two.add_arrow("eta", b, a).unwrap();
        assert_eq!(two.crown_order(), Some(2));
        assert_eq!(two.betti(), 1);

        let (line, _) = a4();
        assert_eq!(line.crown_order(), None);
        assert_eq!(line.betti(), 0);
    }

    #[test]
    fn walks_reduce() {
        let (q, [alpha, eta, _]) = a4();
        let w = q
            .walk(
                VertexId(0),
                vec![(alpha, Direction::Forward), (eta, Direction::Forward), (eta, Direction::Inverse)],
            )
            .unwrap();
        assert_eq!(w.end(), VertexId(1));
        assert_eq!(w.reduced().steps().len(), 1);
        assert_eq!(w.signed_count(eta), 0);
        assert_eq!(w.inverse().signed_count(alpha), -1);
        assert!(q.walk(VertexId(0), vec![(eta, Direction::Forward)]).is_err());
    }

    #[test]
    fn paths_of_length_counts() {
        let (q, _) = a4();
        assert_eq!(q.paths_of_length(0).len(), 4);
        assert_eq!(q.paths_of_length(2).len(), 2);
        assert_eq!(q.paths_of_length(4).len(), 0);
    }
}
