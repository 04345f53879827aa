//! Gluing two arrows `α: e₁ → e₂` and `β: e₃ → e₄` of a monomial algebra `A`
//! into one arrow `γ*`, producing the subalgebra `B ⊆ A` generated by
//! `e₁+e₃`, `e₂+e₄`, `α+β` and the remaining vertices and arrows.
//!
//! Throughout, `e1, e2, e3, e4` name the four endpoints `s(α), t(α), s(β), t(β)`.

use thiserror::Error;

use crate::algebra::{minimalize, AlgebraError, MonomialAlgebra};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::quiver::{ArrowId, Path, Quiver, VertexId};
use crate::strametz::{Left, LowDegree, Pair, PairSpace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GlueError {
    #[error("cannot glue an arrow with itself")]
    SameArrow,
    #[error("arrow `{0}` is a loop; loops cannot be glued")]
    Loop(String),
    #[error("the endpoints of `{alpha}` and `{beta}` are not four distinct vertices")]
    SharedVertex { alpha: String, beta: String },
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrow name `{0}` is already used")]
    NameClash(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("gluing invariant violated: {0}")]
    Invariant(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GluingKind {
    pub source_sink: bool,
    pub same_block: bool,
}

#[derive(Clone, Debug)]
pub struct GluedAlgebra {
    a: MonomialAlgebra,
    b: MonomialAlgebra,
    alpha: ArrowId,
    beta: ArrowId,
    ends: [VertexId; 4],
    vertex_map: Vec<VertexId>,
    arrow_map: Vec<ArrowId>,
    glued_arrow: ArrowId,
    z_new: Vec<Path>,
    path_map: Vec<usize>,
}

/// Validates the gluing data without building anything.
pub fn validate(a: &MonomialAlgebra, alpha: ArrowId, beta: ArrowId) -> Result<(), GlueError> {
    let q = a.quiver();
    for x in [alpha, beta] {
        if x.0 >= q.arrow_count() {
            return Err(GlueError::UnknownArrow(format!("#{}", x.0)));
        }
    }
    if alpha == beta {
        return Err(GlueError::SameArrow);
    }
    for x in [alpha, beta] {
        if q.is_loop(x) {
            return Err(GlueError::Loop(q.arrow_name(x).to_string()));
        }
    }
    let mut ends = [q.source(alpha), q.target(alpha), q.source(beta), q.target(beta)];
    ends.sort();
    if ends.windows(2).any(|w| w[0] == w[1]) {
        return Err(GlueError::SharedVertex {
            alpha: q.arrow_name(alpha).to_string(),
            beta: q.arrow_name(beta).to_string(),
        });
    }
    Ok(())
}

pub fn glue(a: &MonomialAlgebra, alpha: ArrowId, beta: ArrowId) -> Result<GluedAlgebra, GlueError> {
    glue_named(a, alpha, beta, "gamma*")
}

pub fn glue_named(a: &MonomialAlgebra, alpha: ArrowId, beta: ArrowId, name: &str) -> Result<GluedAlgebra, GlueError> {
    validate(a, alpha, beta)?;
    let qa = a.quiver();
    let ends = [qa.source(alpha), qa.target(alpha), qa.source(beta), qa.target(beta)];
    let [e1, e2, e3, e4] = ends;

    let mut qb = Quiver::new();
    let mut vertex_map = vec![VertexId(usize::MAX); qa.vertex_count()];
    for v in qa.vertices() {
        if v == e3 || v == e4 {
            continue;
        }
        let label = if v == e1 {
            format!("{}+{}", qa.vertex_name(e1), qa.vertex_name(e3))
        } else if v == e2 {
            format!("{}+{}", qa.vertex_name(e2), qa.vertex_name(e4))
        } else {
            qa.vertex_name(v).to_string()
        };
        vertex_map[v.0] = qb.add_vertex(&label).map_err(|_| GlueError::NameClash(label.clone()))?;
    }
    vertex_map[e3.0] = vertex_map[e1.0];
    vertex_map[e4.0] = vertex_map[e2.0];

    if qa.arrow_ids().any(|x| x != alpha && x != beta && qa.arrow_name(x) == name) {
        return Err(GlueError::NameClash(name.to_string()));
    }
    let mut arrow_map = vec![ArrowId(usize::MAX); qa.arrow_count()];
    for x in qa.arrow_ids() {
        if x == beta {
            continue;
        }
        let label = if x == alpha { name } else { qa.arrow_name(x) };
        let (s, t) = (vertex_map[qa.source(x).0], vertex_map[qa.target(x).0]);
        arrow_map[x.0] = qb.add_arrow(label, s, t).map_err(|_| GlueError::NameClash(label.to_string()))?;
    }
    arrow_map[beta.0] = arrow_map[alpha.0];
    let glued_arrow = arrow_map[alpha.0];

    let map_path = |p: &Path| -> Path {
        if p.is_trivial() {
            Path::trivial(vertex_map[p.source().0])
        } else {
            let arrows: Vec<ArrowId> = p.arrows().iter().map(|x| arrow_map[x.0]).collect();
            qb.path(&arrows).expect("quiver morphisms preserve composability")
        }
    };

    let z_new = new_relations(qa, alpha, beta)
        .into_iter()
        .map(|w| {
            let arrows: Vec<ArrowId> = w.iter().map(|x| arrow_map[x.0]).collect();
            qb.path(&arrows).expect("new compositions compose in Q_B")
        })
        .collect::<Vec<_>>();
    let z_new = {
        let mut z = z_new;
        z.sort();
        z.dedup();
        z
    };
    let mut z_b: Vec<Path> = a.relations().iter().map(map_path).collect();
    z_b.extend(z_new.iter().cloned());
    let z_b = minimalize(z_b);
    let b = MonomialAlgebra::build(qb.clone(), z_b, a.field())?;

    let mut path_map = Vec::with_capacity(a.dim());
    for p in a.basis() {
        let image = map_path(p);
        let idx = b.basis_index(&image).ok_or_else(|| {
            GlueError::Invariant(format!("image of {} is not a basis path", qa.display_path(p)))
        })?;
        path_map.push(idx);
    }
    let g = GluedAlgebra {
        a: a.clone(),
        b,
        alpha,
        beta,
        ends,
        vertex_map,
        arrow_map,
        glued_arrow,
        z_new,
        path_map,
    };
    g.check_invariants()?;
    Ok(g)
}

/// Words (in traversal order, as `A`-arrows with `α`/`β` standing for `γ*`)
/// that become new compositions through the glued vertices.
fn new_relations(q: &Quiver, alpha: ArrowId, beta: ArrowId) -> Vec<Vec<ArrowId>> {
    let mut out = Vec::new();
    for (x, y) in [(alpha, beta), (beta, alpha)] {
        let (xs, xt, ys, yt) = (q.source(x), q.target(x), q.source(y), q.target(y));
        for eta in q.incoming(xs) {
            for lambda in q.outgoing(ys).filter(|&l| l != y) {
                out.push(vec![eta, lambda]);
            }
        }
        for mu in q.incoming(xt).filter(|&m| m != x) {
            for xi in q.outgoing(yt) {
                out.push(vec![mu, xi]);
            }
        }
        for eta in q.incoming(xs) {
            for xi in q.outgoing(yt) {
                out.push(vec![eta, x, xi]);
            }
        }
    }
    out
}

impl GluedAlgebra {
    fn check_invariants(&self) -> Result<(), GlueError> {
        if self.b.dim() + 3 != self.a.dim() {
            return Err(GlueError::Invariant(format!(
                "dim B = {} but dim A − 3 = {}",
                self.b.dim(),
                self.a.dim() as i64 - 3
            )));
        }
        let mut fiber = vec![0usize; self.b.dim()];
        for &i in &self.path_map {
            fiber[i] += 1;
        }
        let qb = self.b.quiver();
        for (i, p) in self.b.basis().iter().enumerate() {
            let expected = if p.is_trivial() {
                if p.source() == self.f1() || p.source() == self.f2() {
                    2
                } else {
                    1
                }
            } else if p.arrows() == [self.glued_arrow] {
                2
            } else {
                1
            };
            if fiber[i] != expected {
                return Err(GlueError::Invariant(format!(
                    "fiber over {} has {} elements, expected {expected}",
                    qb.display_path(p),
                    fiber[i]
                )));
            }
        }
        let long_a = self.a.basis().iter().filter(|p| p.len() >= 2).count();
        let long_b = self.b.basis().iter().filter(|p| p.len() >= 2).count();
        if long_a != long_b {
            return Err(GlueError::Invariant(format!(
                "rad² dimensions differ: {long_a} in A, {long_b} in B"
            )));
        }
        Ok(())
    }

    pub fn a(&self) -> &MonomialAlgebra {
        &self.a
    }

    pub fn b(&self) -> &MonomialAlgebra {
        &self.b
    }

    pub fn alpha(&self) -> ArrowId {
        self.alpha
    }

    pub fn beta(&self) -> ArrowId {
        self.beta
    }

    /// `[s(α), t(α), s(β), t(β)]` in `Q_A`.
    pub fn ends(&self) -> [VertexId; 4] {
        self.ends
    }

    pub fn f1(&self) -> VertexId {
        self.vertex_map[self.ends[0].0]
    }

    pub fn f2(&self) -> VertexId {
        self.vertex_map[self.ends[1].0]
    }

    pub fn glued_arrow(&self) -> ArrowId {
        self.glued_arrow
    }

    pub fn vertex_image(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.0]
    }

    pub fn arrow_image(&self, x: ArrowId) -> ArrowId {
        self.arrow_map[x.0]
    }

    pub fn z_new(&self) -> &[Path] {
        &self.z_new
    }

    /// Index in `B_B` of the image of the `i`-th basis path of `A`.
    pub fn path_image(&self, i: usize) -> usize {
        self.path_map[i]
    }

    pub fn map_path(&self, p: &Path) -> Path {
        if p.is_trivial() {
            Path::trivial(self.vertex_image(p.source()))
        } else {
            let arrows: Vec<ArrowId> = p.arrows().iter().map(|&x| self.arrow_image(x)).collect();
            self.b.quiver().path(&arrows).expect("morphism")
        }
    }

    /// Preimages in `Q_A` of an arrow of `Q_B`.
    pub fn arrow_preimages(&self, y: ArrowId) -> Vec<ArrowId> {
        self.a.quiver().arrow_ids().filter(|&x| self.arrow_image(x) == y).collect()
    }

    pub fn kind(&self) -> GluingKind {
        let q = self.a.quiver();
        let labels = q.component_labels();
        GluingKind {
            source_sink: q.is_source_arrow(self.alpha) && q.is_sink_arrow(self.beta),
            same_block: labels[self.ends[0].0] == labels[self.ends[2].0],
        }
    }

    fn left_image(&self, left: Left) -> Option<Left> {
        Some(match left {
            Left::Vertex(v) => Left::Vertex(self.vertex_image(v)),
            Left::Arrow(x) => Left::Arrow(self.arrow_image(x)),
            Left::Relation(r) => {
                let image = self.map_path(&self.a.relations()[r]);
                Left::Relation(self.b.relation_index(&image)?)
            }
        })
    }

    /// The map `ψ` between pair spaces of the same kind, `x∥p ↦ x*∥p*`.
    pub fn psi(&self, from: &PairSpace, to: &PairSpace) -> Matrix {
        let f = self.a.field();
        let columns = from
            .pairs()
            .iter()
            .map(|pair| {
                self.left_image(pair.left)
                    .and_then(|left| {
                        to.index_of(&Pair {
                            left,
                            right: self.path_map[pair.right],
                        })
                    })
                    .map_or_else(Vector::zero, |j| Vector::unit(j, f))
            })
            .collect();
        Matrix::from_columns(f, to.len(), columns).expect("indices in range")
    }

    /// Index of the pair `γ*∥γ*` in `Q₁∥B_B`.
    pub fn gamma_pair(&self, q1: &PairSpace) -> usize {
        let g = self.glued_arrow;
        let right = self.b.basis_index(&self.b.quiver().arrow_path(g)).expect("arrows are basis paths");
        q1.index_of(&Pair { left: Left::Arrow(g), right }).expect("γ*∥γ* exists")
    }

    /// The vector `α∥α − β∥β` in `Q₁∥B_A`.
    pub fn alpha_minus_beta(&self, q1: &PairSpace) -> Vector {
        let f = self.a.field();
        let idx = |x: ArrowId| {
            let right = self.a.basis_index(&self.a.quiver().arrow_path(x)).expect("basis");
            q1.index_of(&Pair { left: Left::Arrow(x), right }).expect("diagonal pair")
        };
        Vector::from_entries([(idx(self.alpha), f.one()), (idx(self.beta), -f.one())])
    }

    /// Basis-path indices of `A` between the glued vertex pairs, grouped as
    /// `(paths between e1 and e3, paths between e2 and e4)`, each in both directions.
    fn glued_pair_paths(&self) -> (Vec<usize>, Vec<usize>) {
        let [e1, e2, e3, e4] = self.ends;
        let between = |x: VertexId, y: VertexId| -> Vec<usize> {
            self.a
                .basis()
                .iter()
                .enumerate()
                .filter(|(_, p)| {
                    !p.is_trivial()
                        && ((p.source() == x && p.target() == y) || (p.source() == y && p.target() == x))
                })
                .map(|(i, _)| i)
                .collect()
        };
        (between(e1, e3), between(e2, e4))
    }

    pub fn special_paths(&self, hb: &LowDegree<'_>) -> SpecialPaths {
        let cb = &hb.complex;
        let f = self.a.field();
        let (first, second) = self.glued_pair_paths();
        let mut images = Vec::new();
        let mut keep = |paths: &[usize], vertex: VertexId| -> Vec<Path> {
            let mut kept = Vec::new();
            for &i in paths {
                let pair = Pair {
                    left: Left::Vertex(vertex),
                    right: self.path_map[i],
                };
                let j = cb.q0().index_of(&pair).expect("glued paths become cycles");
                let image = cb.delta0().apply(&Vector::unit(j, f));
                if !image.is_zero() {
                    kept.push(self.a.basis()[i].clone());
                    images.push(image);
                }
            }
            kept
        };
        let sp1 = keep(&first, self.f1());
        let sp2 = keep(&second, self.f2());
        let z_sp = Subspace::span(f, cb.q1().len(), images);
        let sp = z_sp.dim();
        SpecialPaths { sp1, sp2, z_sp, sp }
    }

    pub fn crucial_paths(&self) -> CrucialPaths {
        if !self.kind().source_sink {
            return CrucialPaths::NotApplicable;
        }
        let [_, e2, e3, _] = self.ends;
        let q = self.a.quiver();
        let paths = self
            .a
            .path_set(e3, e2)
            .into_iter()
            .filter(|p| {
                let mut w = vec![self.alpha];
                w.extend_from_slice(p.arrows());
                w.push(self.beta);
                !self.a.in_ideal(&q.path(&w).expect("composable"))
            })
            .collect();
        CrucialPaths::Paths(paths)
    }

    pub fn special_pairs(&self, hb: &LowDegree<'_>) -> SpecialPairs {
        let qa = self.a.quiver();
        let qb = self.b.quiver();
        let f = self.a.field();
        let cb = &hb.complex;
        let touched = |v: VertexId| self.ends.contains(&v);
        let arrow_path = |x: ArrowId| qa.arrow_path(x);
        let mut pairs = Vec::new();
        let mut gens = Vec::new();
        for x in qa.arrow_ids() {
            if !touched(qa.source(x)) && !touched(qa.target(x)) {
                continue;
            }
            let xa = arrow_path(x);
            for (i, p) in self.a.basis().iter().enumerate() {
                if qa.parallel(&xa, p) {
                    continue;
                }
                let xb = qb.arrow_path(self.arrow_image(x));
                let pb = &self.b.basis()[self.path_map[i]];
                if !qb.parallel(&xb, pb) {
                    continue;
                }
                let gamma_gamma = self.arrow_image(x) == self.glued_arrow && pb.arrows() == [self.glued_arrow];
                if gamma_gamma {
                    continue;
                }
                let single = |y: ArrowId| p.arrows() == [y];
                let par = |y: ArrowId, z: &Path| qa.parallel(&arrow_path(y), z);
                let excluded = (x == self.alpha && par(self.beta, p))
                    || (x == self.beta && par(self.alpha, p))
                    || (single(self.alpha) && par(self.beta, &xa))
                    || (single(self.beta) && par(self.alpha, &xa));
                if excluded {
                    continue;
                }
                let pair = Pair {
                    left: Left::Arrow(self.arrow_image(x)),
                    right: self.path_map[i],
                };
                gens.push(Vector::unit(cb.q1().index_of(&pair).expect("parallel in B"), f));
                pairs.push((x, p.clone()));
            }
        }
        let span = Subspace::span(f, cb.q1().len(), gens);
        let z_spp = span.intersect(&hb.ker1);
        let kspp = z_spp.dim();
        SpecialPairs {
            pairs,
            span,
            z_spp,
            kspp,
        }
    }

    pub fn nsp_data(&self, hb: &LowDegree<'_>) -> NonSpecial {
        let cb = &hb.complex;
        let f = self.a.field();
        let (first, second) = self.glued_pair_paths();
        let mut paths = Vec::new();
        let mut gens = Vec::new();
        for (list, vertex) in [(&first, self.f1()), (&second, self.f2())] {
            for &i in list {
                let pair = Pair {
                    left: Left::Vertex(vertex),
                    right: self.path_map[i],
                };
                gens.push(Vector::unit(cb.q0().index_of(&pair).expect("cycle pair"), f));
                paths.push(self.a.basis()[i].clone());
            }
        }
        let span = Subspace::span(f, cb.q0().len(), gens);
        let z_nsp = span.intersect(&hb.ker0);
        let nsp = z_nsp.dim();
        NonSpecial {
            paths,
            span,
            z_nsp,
            nsp,
        }
    }

    /// `Err((loop, m))` for the first loop at a glued vertex with `loop^m ∈ Z`
    /// and `char k | m`.
    pub fn assumption(&self) -> Result<(), (ArrowId, usize)> {
        let q = self.a.quiver();
        for x in q.arrow_ids().filter(|&x| q.is_loop(x) && self.ends.contains(&q.source(x))) {
            for r in self.a.relations() {
                if r.arrows().iter().all(|&y| y == x) && self.a.field().kills(r.len() as u64) {
                    return Err((x, r.len()));
                }
            }
        }
        Ok(())
    }

    /// Whether `A_(e3, e2)`, the basis paths from `t(α)` to `s(β)`, is empty.
    pub fn bridge_paths_empty(&self) -> bool {
        let [_, e2, e3, _] = self.ends;
        self.a.path_set(e3, e2).is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SpecialPaths {
    pub sp1: Vec<Path>,
    pub sp2: Vec<Path>,
    pub z_sp: Subspace,
    pub sp: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrucialPaths {
    NotApplicable,
    Paths(Vec<Path>),
}

impl CrucialPaths {
    pub fn count(&self) -> Option<usize> {
        match self {
            CrucialPaths::NotApplicable => None,
            CrucialPaths::Paths(p) => Some(p.len()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpecialPairs {
    pub pairs: Vec<(ArrowId, Path)>,
    pub span: Subspace,
    pub z_spp: Subspace,
    pub kspp: usize,
}

#[derive(Clone, Debug)]
pub struct NonSpecial {
    pub paths: Vec<Path>,
    pub span: Subspace,
    pub z_nsp: Subspace,
    pub nsp: usize,
}
