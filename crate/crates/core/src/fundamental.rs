//! π₁-rank, spanning-forest chord duals, parade walks and the θ map into `HH¹`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::algebra::MonomialAlgebra;
use crate::gluing::GluedAlgebra;
use crate::linalg::{Subspace, Vector};
use crate::quiver::{ArrowId, Direction, Quiver, VertexId, Walk};
use crate::strametz::{Left, LowDegree, Pair, StrametzComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FundamentalError {
    #[error("arrow `{0}` is a bridge and cannot be avoided")]
    CannotAvoid(String),
    #[error("parade walk for vertex `{0}` is invalid")]
    BadParade(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

pub fn pi1_rank(a: &MonomialAlgebra) -> usize {
    a.quiver().betti()
}

/// A spanning forest and its complementary chords; each chord `c` has the
/// dual `g_c` counting signed occurrences of `c` in closed walks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDualBasis {
    pub tree: Vec<ArrowId>,
    pub chords: Vec<ArrowId>,
    parent: Vec<Option<(ArrowId, Direction)>>,
    roots: Vec<VertexId>,
}

impl ChordDualBasis {
    /// The tree walk from the root of `v`'s component to `v`.
    pub fn tree_walk(&self, q: &Quiver, v: VertexId) -> Walk {
        let mut steps = Vec::new();
        let mut at = v;
        while let Some((a, d)) = self.parent[at.0] {
            steps.push((a, d));
            at = match d {
                Direction::Forward => q.source(a),
                Direction::Inverse => q.target(a),
            };
        }
        steps.reverse();
        q.walk(at, steps).expect("tree walks are walks")
    }

    pub fn root_of(&self, q: &Quiver, v: VertexId) -> VertexId {
        self.tree_walk(q, v).start()
    }

    pub fn roots(&self) -> &[VertexId] {
        &self.roots
    }

    /// Parade data made of tree walks.
    pub fn parade(&self, q: &Quiver) -> ParadeData {
        ParadeData {
            walks: q.vertices().map(|v| self.tree_walk(q, v)).collect(),
        }
    }
}

/// Breadth-first spanning forest; each component is rooted at the given
/// vertex if it lies there, otherwise at its lowest vertex.
pub fn chord_duals_rooted(
    q: &Quiver,
    avoid: Option<ArrowId>,
    root: Option<VertexId>,
) -> Result<ChordDualBasis, FundamentalError> {
    let n = q.vertex_count();
    let labels = q.component_labels();
    let mut parent: Vec<Option<(ArrowId, Direction)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut tree = Vec::new();
    let mut roots = Vec::new();
    let mut order: Vec<VertexId> = Vec::new();
    if let Some(r) = root {
        order.push(r);
    }
    order.extend(q.vertices());
    for start in order {
        if seen[start.0] {
            continue;
        }
        roots.push(start);
        seen[start.0] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for a in q.arrow_ids().filter(|&a| Some(a) != avoid) {
                let (nb, d) = if q.source(a) == v {
                    (q.target(a), Direction::Forward)
                } else if q.target(a) == v {
                    (q.source(a), Direction::Inverse)
                } else {
                    continue;
                };
                if !seen[nb.0] {
                    seen[nb.0] = true;
                    parent[nb.0] = Some((a, d));
                    tree.push(a);
                    queue.push_back(nb);
                }
            }
        }
        if let Some(x) = avoid {
            let comp = labels[start.0];
            let missed = q.vertices().any(|v| labels[v.0] == comp && !seen[v.0]);
            if missed {
                return Err(FundamentalError::CannotAvoid(q.arrow_name(x).to_string()));
            }
        }
    }
    tree.sort();
    let chords = q.arrow_ids().filter(|a| !tree.contains(a)).collect();
    roots.sort();
    Ok(ChordDualBasis {
        tree,
        chords,
        parent,
        roots,
    })
}

pub fn chord_duals(q: &Quiver, avoid: Option<ArrowId>) -> Result<ChordDualBasis, FundamentalError> {
    chord_duals_rooted(q, avoid, None)
}

/// For every vertex `v`, a walk from the base point of its component to `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParadeData {
    walks: Vec<Walk>,
}

impl ParadeData {
    pub fn new(q: &Quiver, walks: Vec<Walk>) -> Result<Self, FundamentalError> {
        let labels = q.component_labels();
        let bad = |v: VertexId| FundamentalError::BadParade(q.vertex_name(v).to_string());
        if walks.len() != q.vertex_count() {
            return Err(FundamentalError::BadParade("<count>".into()));
        }
        for v in q.vertices() {
            let w = &walks[v.0];
            if w.end() != v || q.walk(w.start(), w.steps().to_vec()).is_err() {
                return Err(bad(v));
            }
            let base = w.start();
            if labels[base.0] != labels[v.0] || !walks[base.0].steps().is_empty() || walks[base.0].start() != base {
                return Err(bad(v));
            }
        }
        Ok(ParadeData { walks })
    }

    pub fn walk(&self, v: VertexId) -> &Walk {
        &self.walks[v.0]
    }

    pub fn avoids(&self, a: ArrowId) -> bool {
        self.walks.iter().all(|w| !w.uses(a))
    }
}

/// `θ(g_chord) = Σ_a g_chord(w_{t(a)}⁻¹ · a · w_{s(a)}) · a∥a`.
pub fn theta(complex: &StrametzComplex<'_>, chord: ArrowId, parade: &ParadeData) -> Vector {
    let a = complex.algebra();
    let q = a.quiver();
    let f = a.field();
    let mut terms = Vec::new();
    for x in q.arrow_ids() {
        let step = q.walk(q.source(x), vec![(x, Direction::Forward)]).expect("arrow");
        let closed = parade
            .walk(q.source(x))
            .then(&step)
            .then(&parade.walk(q.target(x)).inverse());
        let c = closed.signed_count(chord);
        if c != 0 {
            let right = a.basis_index(&q.arrow_path(x)).expect("arrows are basis paths");
            let idx = complex
                .q1()
                .index_of(&Pair { left: Left::Arrow(x), right })
                .expect("diagonal pair");
            terms.push((idx, f.int(c)));
        }
    }
    Vector::from_entries(terms)
}

/// Classes `θ(g_c)` for all chords are independent modulo `Im δ⁰` and lie in `Ker δ¹`.
pub fn theta_is_injective(h: &LowDegree<'_>, duals: &ChordDualBasis, parade: &ParadeData) -> bool {
    let images: Vec<Vector> = duals.chords.iter().map(|&c| theta(&h.complex, c, parade)).collect();
    if !images.iter().all(|v| h.ker1.contains(v)) {
        return false;
    }
    let mut span = h.im0.clone();
    images.into_iter().all(|v| span.insert(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaGenerator {
    pub chord: String,
    /// `ψ₁(θ_A(σ h)) = θ_B(h)` as cochains.
    pub exact: bool,
    /// Equality in `HH¹(B)/⟨γ*∥γ*⟩`.
    pub modulo: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaDiagram {
    pub walk_v: String,
    pub gamma_image: String,
    pub left_square: bool,
    pub generators: Vec<ThetaGenerator>,
    pub injective_a: bool,
    pub injective_b: bool,
}

impl ThetaDiagram {
    pub fn commutes(&self) -> bool {
        self.left_square && self.injective_a && self.injective_b && self.generators.iter().all(|g| g.modulo)
    }
}

/// Lifts a walk of `Q_B` avoiding `γ*` to `Q_A`, starting at `start`.
fn lift_walk(g: &GluedAlgebra, start: VertexId, w: &Walk) -> Option<Walk> {
    let steps = w
        .steps()
        .iter()
        .map(|&(y, d)| {
            let pre = g.arrow_preimages(y);
            (pre.len() == 1).then(|| (pre[0], d))
        })
        .collect::<Option<Vec<_>>>()?;
    g.a().quiver().walk(start, steps).ok()
}

pub fn check_theta_diagram(
    g: &GluedAlgebra,
    ha: &LowDegree<'_>,
    hb: &LowDegree<'_>,
) -> Result<ThetaDiagram, FundamentalError> {
    let kind = g.kind();
    if !(kind.source_sink && kind.same_block) {
        return Err(FundamentalError::NotApplicable(
            "requires a source-sink gluing within one block".into(),
        ));
    }
    let (qa, qb) = (g.a().quiver(), g.b().quiver());
    let [e1, e2, e3, e4] = g.ends();
    let gamma = g.glued_arrow();
    let duals_b = chord_duals_rooted(qb, Some(gamma), Some(g.f2()))?;
    let parade_b = duals_b.parade(qb);

    let v = lift_walk(g, e2, parade_b.walk(g.f1()))
        .filter(|w| w.end() == e3)
        .ok_or_else(|| FundamentalError::NotApplicable("no walk from t(α) to s(β) avoiding α, β".into()))?;

    let alpha_inv = qa
        .walk(e2, vec![(g.alpha(), Direction::Inverse)])
        .expect("α ends at e2");
    let beta_step = qa.walk(e3, vec![(g.beta(), Direction::Forward)]).expect("β starts at e3");
    let mut walks_a = Vec::with_capacity(qa.vertex_count());
    for u in qa.vertices() {
        let w = if u == e1 {
            alpha_inv.clone()
        } else if u == e4 {
            v.then(&beta_step)
        } else {
            let wb = parade_b.walk(g.vertex_image(u));
            let start = if wb.start() == g.f2() {
                e2
            } else {
                let pre: Vec<VertexId> = qa.vertices().filter(|&x| g.vertex_image(x) == wb.start()).collect();
                pre[0]
            };
            lift_walk(g, start, wb).ok_or_else(|| FundamentalError::BadParade(qa.vertex_name(u).to_string()))?
        };
        walks_a.push(w);
    }
    let parade_a = ParadeData::new(qa, walks_a)?;

    let mut tree_a: Vec<ArrowId> = duals_b
        .tree
        .iter()
        .flat_map(|&y| g.arrow_preimages(y))
        .chain([g.alpha(), g.beta()])
        .collect();
    tree_a.sort();
    if tree_a.len() + qa.component_count() != qa.vertex_count() {
        return Err(FundamentalError::NotApplicable("lifted forest does not span Q_A".into()));
    }
    let chords_a: Vec<ArrowId> = qa.arrow_ids().filter(|x| !tree_a.contains(x)).collect();

    let psi1 = g.psi(ha.complex.q1(), hb.complex.q1());
    let gamma_idx = g.gamma_pair(hb.complex.q1());
    let gamma_vec = Vector::unit(gamma_idx, g.a().field());
    let mut y = hb.im0.clone();
    y.insert(gamma_vec.clone());

    let theta_gamma = theta(&hb.complex, gamma, &parade_b);
    let left_square = theta_gamma == gamma_vec && y.contains(&theta_gamma);

    let mut generators = Vec::new();
    for &c in duals_b.chords.iter().filter(|&&c| c != gamma) {
        let pre = g.arrow_preimages(c);
        let tb = theta(&hb.complex, c, &parade_b);
        let ta = theta(&ha.complex, pre[0], &parade_a);
        let mapped = psi1.apply(&ta);
        generators.push(ThetaGenerator {
            chord: qb.arrow_name(c).to_string(),
            exact: mapped == tb,
            modulo: y.contains(&mapped.minus(&tb)),
        });
    }

    let duals_a = ChordDualBasis {
        tree: tree_a,
        chords: chords_a,
        parent: vec![None; qa.vertex_count()],
        roots: Vec::new(),
    };
    let injective_a = theta_is_injective(ha, &duals_a, &parade_a);
    let injective_b = theta_is_injective(hb, &duals_b, &parade_b);
    Ok(ThetaDiagram {
        walk_v: qa.display_walk(&v),
        gamma_image: hb.complex.q1().render(g.b(), &theta_gamma),
        left_square,
        generators,
        injective_a,
        injective_b,
    })
}

/// Dimension of the span of θ-images modulo `Im δ⁰`.
pub fn theta_rank(h: &LowDegree<'_>, duals: &ChordDualBasis, parade: &ParadeData) -> usize {
    let base = h.im0.dim();
    let span = Subspace::span(
        h.algebra().field(),
        h.complex.q1().len(),
        h.im0
            .rows()
            .iter()
            .cloned()
            .chain(duals.chords.iter().map(|&c| theta(&h.complex, c, parade))),
    );
    span.dim() - base
}
