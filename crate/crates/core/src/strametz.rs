//! The truncated Strametz complex `k(Q₀∥B) → k(Q₁∥B) → k(Z∥B)`, the
//! bracket on `k(Q₁∥B)`, and the low-degree Hochschild cohomology it computes.

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::MonomialAlgebra;
use crate::field::Scalar;
use crate::lie::LieAlgebraPresentation;
use crate::linalg::{Coordinates, Matrix, Subspace, Vector};
use crate::quiver::{ArrowId, Path, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Left {
    Vertex(VertexId),
    Arrow(ArrowId),
    Relation(usize),
}

/// A parallel pair `left∥right`; `right` indexes the algebra basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub left: Left,
    pub right: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Vertices,
    Arrows,
    Relations,
}

/// Ordered basis of parallel pairs, sorted by left member then by right basis path.
#[derive(Clone, Debug)]
pub struct PairSpace {
    kind: PairKind,
    pairs: Vec<Pair>,
    index: HashMap<Pair, usize>,
}

impl PairSpace {
    pub fn build(a: &MonomialAlgebra, kind: PairKind) -> PairSpace {
        let q = a.quiver();
        let lefts: Vec<(Left, VertexId, VertexId)> = match kind {
            PairKind::Vertices => q.vertices().map(|v| (Left::Vertex(v), v, v)).collect(),
            PairKind::Arrows => q
                .arrow_ids()
                .map(|x| (Left::Arrow(x), q.source(x), q.target(x)))
                .collect(),
            PairKind::Relations => a
                .relations()
                .iter()
                .enumerate()
                .map(|(i, r)| (Left::Relation(i), r.source(), r.target()))
                .collect(),
        };
        let mut pairs = Vec::new();
        for (left, s, t) in lefts {
            for (right, p) in a.basis().iter().enumerate() {
                if p.source() == s && p.target() == t {
                    pairs.push(Pair { left, right });
                }
            }
        }
        let index = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        PairSpace { kind, pairs, index }
    }

    pub fn kind(&self) -> PairKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pair(&self, i: usize) -> Pair {
        self.pairs[i]
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn index_of(&self, p: &Pair) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn label(&self, a: &MonomialAlgebra, i: usize) -> String {
        let q = a.quiver();
        let Pair { left, right } = self.pairs[i];
        let l = match left {
            Left::Vertex(v) => q.vertex_name(v).to_string(),
            Left::Arrow(x) => q.arrow_name(x).to_string(),
            Left::Relation(r) => q.display_path(&a.relations()[r]),
        };
        format!("{l}||{}", q.display_path(&a.basis()[right]))
    }

    pub fn render(&self, a: &MonomialAlgebra, v: &Vector) -> String {
        v.render(|i| self.label(a, i))
    }

    /// Difference `len(right) − len(left)`, the grading of the complex.
    pub fn grading(&self, a: &MonomialAlgebra, i: usize) -> i64 {
        let Pair { left, right } = self.pairs[i];
        let l = match left {
            Left::Vertex(_) => 0,
            Left::Arrow(_) => 1,
            Left::Relation(r) => a.relations()[r].len(),
        };
        a.basis()[right].len() as i64 - l as i64
    }
}

/// The paths of `B` obtained from `target` by replacing one occurrence of
/// `arrow` with `by`, with multiplicity.
pub fn substitute(a: &MonomialAlgebra, target: &Path, arrow: ArrowId, by: &Path) -> Vec<(usize, u64)> {
    let q = a.quiver();
    let mut counts: Vec<(usize, u64)> = Vec::new();
    for (pos, &x) in target.arrows().iter().enumerate() {
        if x != arrow {
            continue;
        }
        let mut arrows = target.arrows()[..pos].to_vec();
        arrows.extend_from_slice(by.arrows());
        arrows.extend_from_slice(&target.arrows()[pos + 1..]);
        let path = if arrows.is_empty() {
            Path::trivial(target.source())
        } else {
            q.path(&arrows).expect("parallel substitution composes")
        };
        if let Some(i) = a.basis_index(&path) {
            match counts.iter_mut().find(|(j, _)| *j == i) {
                Some((_, c)) => *c += 1,
                None => counts.push((i, 1)),
            }
        }
    }
    counts.sort_unstable();
    counts
}

#[derive(Clone, Debug)]
pub struct StrametzComplex<'a> {
    algebra: &'a MonomialAlgebra,
    q0: PairSpace,
    q1: PairSpace,
    z: PairSpace,
    delta0: Matrix,
    delta1: Matrix,
}

impl<'a> StrametzComplex<'a> {
    pub fn new(a: &'a MonomialAlgebra) -> Self {
        let q0 = PairSpace::build(a, PairKind::Vertices);
        let q1 = PairSpace::build(a, PairKind::Arrows);
        let z = PairSpace::build(a, PairKind::Relations);
        let delta0 = build_delta0(a, &q0, &q1);
        let delta1 = build_delta1(a, &q1, &z);
        StrametzComplex {
            algebra: a,
            q0,
            q1,
            z,
            delta0,
            delta1,
        }
    }

    pub fn algebra(&self) -> &'a MonomialAlgebra {
        self.algebra
    }

    pub fn q0(&self) -> &PairSpace {
        &self.q0
    }

    pub fn q1(&self) -> &PairSpace {
        &self.q1
    }

    pub fn z(&self) -> &PairSpace {
        &self.z
    }

    pub fn delta0(&self) -> &Matrix {
        &self.delta0
    }

    pub fn delta1(&self) -> &Matrix {
        &self.delta1
    }

    /// Indices of `Q₀∥B` pairs whose right member is trivial (`e∥e`).
    pub fn trivial_q0(&self) -> Vec<usize> {
        (0..self.q0.len())
            .filter(|&i| self.algebra.basis()[self.q0.pair(i).right].is_trivial())
            .collect()
    }

    /// Indices of `Q₀∥B` pairs `e∥p` with `len p ≥ 1`.
    pub fn positive_q0(&self) -> Vec<usize> {
        (0..self.q0.len())
            .filter(|&i| !self.algebra.basis()[self.q0.pair(i).right].is_trivial())
            .collect()
    }

    /// Kernel of `δ⁰` restricted to the span of the given `Q₀∥B` indices.
    pub fn restricted_kernel(&self, indices: &[usize]) -> Subspace {
        let k = self.delta0.select_columns(indices).kernel();
        Subspace::span(
            self.algebra.field(),
            self.q0.len(),
            k.rows().iter().map(|r| r.reindex(|j| Some(indices[j]))),
        )
    }

    /// `[x, y]` on `k(Q₁∥B)`.
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, cx) in x.iter() {
            for (j, cy) in y.iter() {
                let c = cx * cy;
                out.add_scaled(&c, &self.bracket_pairs(i, j));
            }
        }
        out
    }

    fn bracket_pairs(&self, i: usize, j: usize) -> Vector {
        let a = self.algebra;
        let f = a.field();
        let (pa, pb) = (self.q1.pair(i), self.q1.pair(j));
        let (Left::Arrow(x), Left::Arrow(y)) = (pa.left, pb.left) else {
            unreachable!("Q1 pairs have arrow left members")
        };
        let (gx, gy) = (&a.basis()[pa.right], &a.basis()[pb.right]);
        let mut terms: Vec<(usize, Scalar)> = Vec::new();
        for (k, m) in substitute(a, gy, x, gx) {
            let idx = self.q1.index_of(&Pair { left: Left::Arrow(y), right: k }).expect("parallel");
            terms.push((idx, f.int(m as i64)));
        }
        for (k, m) in substitute(a, gx, y, gy) {
            let idx = self.q1.index_of(&Pair { left: Left::Arrow(x), right: k }).expect("parallel");
            terms.push((idx, f.int(-(m as i64))));
        }
        Vector::from_entries(terms)
    }

    /// Algebra element `Σ p` of a `Q₀∥B` vector `Σ e∥p`.
    pub fn q0_to_element(&self, v: &Vector) -> Vector {
        v.reindex(|i| Some(self.q0.pair(i).right))
    }

    /// Inverse of [`Self::q0_to_element`] on elements supported on cycles.
    pub fn element_to_q0(&self, v: &Vector) -> Option<Vector> {
        let mut out = Vec::new();
        for (i, c) in v.iter() {
            let p = &self.algebra.basis()[i];
            if !p.is_cycle() {
                return None;
            }
            let idx = self.q0.index_of(&Pair {
                left: Left::Vertex(p.source()),
                right: i,
            })?;
            out.push((idx, c.clone()));
        }
        Some(Vector::from_entries(out))
    }
}

fn build_delta0(a: &MonomialAlgebra, q0: &PairSpace, q1: &PairSpace) -> Matrix {
    let q = a.quiver();
    let f = a.field();
    let columns = q0
        .pairs()
        .iter()
        .map(|pair| {
            let Left::Vertex(e) = pair.left else { unreachable!() };
            let g = &a.basis()[pair.right];
            let mut terms = Vec::new();
            for x in q.outgoing(e) {
                if let Some(p) = a.multiply(&q.arrow_path(x), g) {
                    let k = a.basis_index(&p).expect("basis path");
                    let idx = q1.index_of(&Pair { left: Left::Arrow(x), right: k }).expect("parallel");
                    terms.push((idx, f.one()));
                }
            }
            for x in q.incoming(e) {
                if let Some(p) = a.multiply(g, &q.arrow_path(x)) {
                    let k = a.basis_index(&p).expect("basis path");
                    let idx = q1.index_of(&Pair { left: Left::Arrow(x), right: k }).expect("parallel");
                    terms.push((idx, -f.one()));
                }
            }
            Vector::from_entries(terms)
        })
        .collect();
    Matrix::from_columns(f, q1.len(), columns).expect("indices in range")
}

fn build_delta1(a: &MonomialAlgebra, q1: &PairSpace, z: &PairSpace) -> Matrix {
    let f = a.field();
    let columns = q1
        .pairs()
        .iter()
        .map(|pair| {
            let Left::Arrow(x) = pair.left else { unreachable!() };
            let g = &a.basis()[pair.right];
            let mut terms = Vec::new();
            for (ri, r) in a.relations().iter().enumerate() {
                for (k, m) in substitute(a, r, x, g) {
                    let idx = z.index_of(&Pair { left: Left::Relation(ri), right: k }).expect("parallel");
                    terms.push((idx, f.int(m as i64)));
                }
            }
            Vector::from_entries(terms)
        })
        .collect();
    Matrix::from_columns(f, z.len(), columns).expect("indices in range")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("product of central elements left the center")]
    NotCentral,
}

/// `HH⁰` and `HH¹` with chosen representatives.
#[derive(Clone, Debug)]
pub struct LowDegree<'a> {
    pub complex: StrametzComplex<'a>,
    pub ker0: Subspace,
    pub im0: Subspace,
    pub ker1: Subspace,
    pub hh1_reps: Vec<Vector>,
}

impl<'a> LowDegree<'a> {
    pub fn compute(a: &'a MonomialAlgebra) -> Self {
        let complex = StrametzComplex::new(a);
        let ker0 = complex.delta0().kernel();
        let im0 = complex.delta0().image();
        let ker1 = complex.delta1().kernel();
        let hh1_reps = ker1.complement_rows(&im0);
        LowDegree {
            complex,
            ker0,
            im0,
            ker1,
            hh1_reps,
        }
    }

    pub fn algebra(&self) -> &'a MonomialAlgebra {
        self.complex.algebra()
    }

    pub fn hh0_dim(&self) -> usize {
        self.ker0.dim()
    }

    pub fn hh1_dim(&self) -> usize {
        self.ker1.dim() - self.im0.dim()
    }

    /// Coordinates modulo `modulus` with respect to `reps`, which must span a
    /// complement of `modulus` in a space containing the input.
    pub fn quotient_coordinates(modulus: &Subspace, reps: &[Vector]) -> Coordinates {
        let mut basis: Vec<Vector> = reps.to_vec();
        basis.extend(modulus.rows().iter().cloned());
        Coordinates::new(modulus.field(), &basis).expect("representatives complement the modulus")
    }

    /// Structure constants of `HH¹` on the chosen representatives.
    pub fn hh1_lie(&self) -> LieAlgebraPresentation {
        let a = self.algebra();
        let labels = self
            .hh1_reps
            .iter()
            .map(|r| self.complex.q1().render(a, r))
            .collect();
        lie_on(&self.complex, &self.im0, &self.hh1_reps, labels)
    }

    /// Multiplication table of the center on the echelon basis of `Ker δ⁰`.
    pub fn center_product(&self) -> Result<CenterTable, CohomologyError> {
        let a = self.algebra();
        let basis = self.ker0.rows().to_vec();
        let coords = Coordinates::new(a.field(), &basis).expect("echelon rows are independent");
        let elems: Vec<Vector> = basis.iter().map(|z| self.complex.q0_to_element(z)).collect();
        let mut table = Vec::with_capacity(basis.len());
        for x in &elems {
            let mut row = Vec::with_capacity(basis.len());
            for y in &elems {
                let prod = a.multiply_elements(x, y);
                let back = self.complex.element_to_q0(&prod).ok_or(CohomologyError::NotCentral)?;
                row.push(coords.coords(&back).ok_or(CohomologyError::NotCentral)?);
            }
            table.push(row);
        }
        let unit_vec = Vector::from_entries(self.complex.trivial_q0().into_iter().map(|i| (i, a.field().one())));
        let unit = coords.coords(&unit_vec).ok_or(CohomologyError::NotCentral)?;
        Ok(CenterTable { basis, table, unit })
    }
}

/// Lie structure constants on `reps` modulo `modulus`, for a bracket closed on their span.
pub fn lie_on(
    complex: &StrametzComplex<'_>,
    modulus: &Subspace,
    reps: &[Vector],
    labels: Vec<String>,
) -> LieAlgebraPresentation {
    let n = reps.len();
    let coords = LowDegree::quotient_coordinates(modulus, reps);
    let mut constants = vec![vec![Vector::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let b = complex.bracket(&reps[i], &reps[j]);
            let c = coords.coords(&b).expect("bracket stays in the kernel");
            constants[i][j] = c.reindex(|k| (k < n).then_some(k));
        }
    }
    LieAlgebraPresentation::new(complex.algebra().field(), labels, constants)
}

/// The center as an algebra: `table[i][j]` holds the coordinates of `z_i·z_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterTable {
    pub basis: Vec<Vector>,
    pub table: Vec<Vec<Vector>>,
    pub unit: Vector,
}
