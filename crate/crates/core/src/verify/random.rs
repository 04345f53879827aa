//! Seeded generators for algebras and gluings.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BuildOptions, MonomialAlgebra};
use crate::field::Field;
use crate::gluing::validate;
use crate::quiver::{ArrowId, Path, Quiver, VertexId};

#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub vertices: RangeInclusive<usize>,
    pub arrows: RangeInclusive<usize>,
    /// Probability that a new arrow is a loop.
    pub loop_probability: f64,
    pub relations: RangeInclusive<usize>,
    pub relation_length: RangeInclusive<usize>,
    /// Paths of this length are added as relations when the first draw is too big.
    pub truncation: usize,
    pub fields: Vec<Field>,
    pub max_dim: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            vertices: 4..=6,
            arrows: 3..=8,
            loop_probability: 0.15,
            relations: 0..=5,
            relation_length: 2..=3,
            truncation: 3,
            fields: vec![Field::Rationals],
            max_dim: 63,
        }
    }
}

impl RandomSpec {
    pub fn with_fields(mut self, fields: Vec<Field>) -> Self {
        self.fields = fields;
        self
    }

    pub fn with_max_dim(mut self, max_dim: usize) -> Self {
        self.max_dim = max_dim;
        self
    }
}

/// An algebra together with the two arrows to glue.
#[derive(Clone, Debug)]
pub struct GluingSpec {
    pub algebra: MonomialAlgebra,
    pub alpha: ArrowId,
    pub beta: ArrowId,
}

fn random_path(rng: &mut ChaCha8Rng, q: &Quiver, len: usize) -> Option<Path> {
    let first = ArrowId(rng.gen_range(0..q.arrow_count()));
    let mut arrows = vec![first];
    while arrows.len() < len {
        let here = q.target(*arrows.last().expect("non-empty"));
        let out: Vec<ArrowId> = q.outgoing(here).collect();
        arrows.push(*out.choose(rng)?);
    }
    q.path(&arrows).ok()
}

/// Draws relations for `q` and builds the algebra, truncating if needed.
/// Returns `None` when even the truncated algebra exceeds `max_dim`.
fn finish(rng: &mut ChaCha8Rng, q: Quiver, mut relations: Vec<Path>, spec: &RandomSpec) -> Option<MonomialAlgebra> {
    let field = *spec.fields.choose(rng).expect("at least one field");
    if q.arrow_count() > 0 {
        for _ in 0..rng.gen_range(spec.relations.clone()) {
            let len = rng.gen_range(spec.relation_length.clone());
            if let Some(p) = random_path(rng, &q, len) {
                relations.push(p);
            }
        }
    }
    let options = BuildOptions {
        repair_minimality: true,
        max_basis: spec.max_dim,
    };
    if let Ok(a) = MonomialAlgebra::build_with(q.clone(), relations.clone(), field, options) {
        return Some(a);
    }
    relations.extend(q.paths_of_length(spec.truncation));
    MonomialAlgebra::build_with(q, relations, field, options).ok()
}

fn add_vertices(q: &mut Quiver, n: usize) -> Vec<VertexId> {
    (1..=n).map(|i| q.add_vertex(&format!("e{i}")).expect("fresh name")).collect()
}

pub fn random_algebra(rng: &mut ChaCha8Rng, spec: &RandomSpec) -> MonomialAlgebra {
    loop {
        let mut q = Quiver::new();
        let n = rng.gen_range(spec.vertices.clone());
        let v = add_vertices(&mut q, n);
        for k in 0..rng.gen_range(spec.arrows.clone()) {
            let s = *v.choose(rng).expect("vertices");
            let t = if n == 1 || rng.gen_bool(spec.loop_probability) {
                s
            } else {
                loop {
                    let t = *v.choose(rng).expect("vertices");
                    if t != s {
                        break t;
                    }
                }
            };
            q.add_arrow(&format!("x{}", k + 1), s, t).expect("fresh name");
        }
        if let Some(a) = finish(rng, q, Vec::new(), spec) {
            return a;
        }
    }
}

/// A random algebra with two gluable arrows chosen uniformly.
pub fn random_gluing(rng: &mut ChaCha8Rng, spec: &RandomSpec) -> GluingSpec {
    loop {
        let a = random_algebra(rng, spec);
        let q = a.quiver();
        let candidates: Vec<(ArrowId, ArrowId)> = q
            .arrow_ids()
            .flat_map(|x| q.arrow_ids().map(move |y| (x, y)))
            .filter(|&(x, y)| validate(&a, x, y).is_ok())
            .collect();
        if let Some(&(alpha, beta)) = candidates.choose(rng) {
            return GluingSpec { algebra: a, alpha, beta };
        }
    }
}

/// Connects `vertices` by a random spanning tree whose arrows never end at
/// `no_in` and never start at `no_out`.
fn spanning_tree(
    rng: &mut ChaCha8Rng,
    q: &mut Quiver,
    vertices: &[VertexId],
    no_in: Option<VertexId>,
    no_out: Option<VertexId>,
    counter: &mut usize,
) {
    let mut order = vertices.to_vec();
    order.shuffle(rng);
    for i in 1..order.len() {
        let u = order[i];
        let w = order[rng.gen_range(0..i)];
        let (s, t) = oriented(rng, u, w, no_in, no_out);
        *counter += 1;
        q.add_arrow(&format!("x{counter}"), s, t).expect("fresh name");
    }
}

fn oriented(
    rng: &mut ChaCha8Rng,
    u: VertexId,
    w: VertexId,
    no_in: Option<VertexId>,
    no_out: Option<VertexId>,
) -> (VertexId, VertexId) {
    let allowed = |s: VertexId, t: VertexId| Some(t) != no_in && Some(s) != no_out;
    match (allowed(u, w), allowed(w, u)) {
        (true, true) => {
            if rng.gen_bool(0.5) {
                (u, w)
            } else {
                (w, u)
            }
        }
        (true, false) => (u, w),
        _ => (w, u),
    }
}

#[allow(clippy::too_many_arguments)]
fn extra_arrows(
    rng: &mut ChaCha8Rng,
    q: &mut Quiver,
    vertices: &[VertexId],
    no_in: Option<VertexId>,
    no_out: Option<VertexId>,
    count: usize,
    loop_probability: f64,
    counter: &mut usize,
) {
    for _ in 0..count {
        let u = *vertices.choose(rng).expect("vertices");
        let w = *vertices.choose(rng).expect("vertices");
        let (s, t) = if u == w {
            if Some(u) == no_in || Some(u) == no_out || !rng.gen_bool(loop_probability) {
                continue;
            }
            (u, u)
        } else {
            oriented(rng, u, w, no_in, no_out)
        };
        if Some(t) == no_in || Some(s) == no_out {
            continue;
        }
        *counter += 1;
        q.add_arrow(&format!("x{counter}"), s, t).expect("fresh name");
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceSinkShape {
    SameBlock,
    DifferentBlocks,
}

/// A source arrow `alpha: e1 → e2` and a sink arrow `beta: e3 → e4` attached
/// to one or two random cores.
pub fn random_source_sink(
    rng: &mut ChaCha8Rng,
    spec: &RandomSpec,
    shape: SourceSinkShape,
    radical_square_zero: bool,
) -> GluingSpec {
    loop {
        let mut q = Quiver::new();
        let extra = rng.gen_range(0..=spec.vertices.end().saturating_sub(4).max(1));
        let v = add_vertices(&mut q, 4 + extra);
        let (e1, e2, e3, e4) = (v[0], v[1], v[2], v[3]);
        let alpha = q.add_arrow("alpha", e1, e2).expect("fresh name");
        let beta = q.add_arrow("beta", e3, e4).expect("fresh name");
        let rest = &v[4..];
        let mut counter = 0;
        let (no_in, no_out) = (Some(e2), Some(e3));
        let cores: Vec<Vec<VertexId>> = match shape {
            SourceSinkShape::SameBlock => {
                let mut core = vec![e2, e3];
                core.extend_from_slice(rest);
                vec![core]
            }
            SourceSinkShape::DifferentBlocks => {
                let split = rng.gen_range(0..=rest.len());
                let mut first = vec![e2];
                first.extend_from_slice(&rest[..split]);
                let mut second = vec![e3];
                second.extend_from_slice(&rest[split..]);
                vec![first, second]
            }
        };
        for core in &cores {
            spanning_tree(rng, &mut q, core, no_in, no_out, &mut counter);
            let count = rng.gen_range(0..=3);
            extra_arrows(rng, &mut q, core, no_in, no_out, count, spec.loop_probability, &mut counter);
        }
        let relations = if radical_square_zero { q.paths_of_length(2) } else { Vec::new() };
        let algebra = if radical_square_zero {
            let field = *spec.fields.choose(rng).expect("at least one field");
            MonomialAlgebra::build(q, relations, field).ok()
        } else {
            finish(rng, q, relations, spec)
        };
        if let Some(algebra) = algebra {
            return GluingSpec { algebra, alpha, beta };
        }
    }
}
