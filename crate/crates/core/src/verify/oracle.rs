//! Brute-force computations that share nothing with the Strametz complex.
//!
//! The center is found by solving `z·g = g·z` over the whole path basis, and
//! `HH¹` as outer derivations: a derivation is determined by its values on
//! vertices and arrows, subject to the idempotent relations and to the Leibniz
//! expansion of every relation vanishing.

use crate::algebra::MonomialAlgebra;
use crate::gluing::GluedAlgebra;
use crate::linalg::{Matrix, Subspace, Vector};
use crate::quiver::Path;

fn generators(a: &MonomialAlgebra) -> Vec<Path> {
    let q = a.quiver();
    q.vertices()
        .map(Path::trivial)
        .chain(q.arrow_ids().map(|x| q.arrow_path(x)))
        .collect()
}

fn element(a: &MonomialAlgebra, p: &Path) -> Vector {
    Vector::unit(a.basis_index(p).expect("basis path"), a.field())
}

/// `x·y − y·x` for basis paths, as a coordinate vector.
fn commutator(a: &MonomialAlgebra, x: &Path, y: &Path) -> Vector {
    let f = a.field();
    let mut out = Vector::zero();
    if let Some(p) = a.multiply(x, y) {
        out.add_scaled(&f.one(), &element(a, &p));
    }
    if let Some(p) = a.multiply(y, x) {
        out.add_scaled(&-f.one(), &element(a, &p));
    }
    out
}

/// The center as a subspace of `A` in path-basis coordinates.
pub fn oracle_center(a: &MonomialAlgebra) -> Subspace {
    let n = a.dim();
    let gens = generators(a);
    let columns = a
        .basis()
        .iter()
        .map(|p| {
            let mut col = Vector::zero();
            for (k, g) in gens.iter().enumerate() {
                let c = commutator(a, p, g).reindex(|i| Some(k * n + i));
                col.add_scaled(&a.field().one(), &c);
            }
            col
        })
        .collect();
    Matrix::from_columns(a.field(), gens.len() * n, columns)
        .expect("indices in range")
        .kernel()
}

/// `dim Der(A) − dim Inn(A)`.
pub fn oracle_hh1_dim(a: &MonomialAlgebra) -> usize {
    let f = a.field();
    let q = a.quiver();
    let n = a.dim();
    let gens = generators(a);
    let nv = q.vertex_count();
    let unknowns = gens.len() * n;
    let var = |g: usize, p: usize| g * n + p;
    let arrow_gen = |x: usize| nv + x;

    // Each equation is stored as a map from coordinate in `A` to a vector over the unknowns.
    let mut equations: Vec<Vector> = Vec::new();
    let mut push_block = |block: Vec<Vec<(usize, crate::field::Scalar)>>| {
        for terms in block {
            let v = Vector::from_entries(terms);
            if !v.is_zero() {
                equations.push(v);
            }
        }
    };
    let fresh = || vec![Vec::new(); n];

    // Σ D(e_i) = 0
    let mut block = fresh();
    for v in 0..nv {
        for p in 0..n {
            block[p].push((var(v, p), f.one()));
        }
    }
    push_block(block);

    // D(e_i)e_j + e_iD(e_j) − δ_ij D(e_i) = 0
    for i in 0..nv {
        for j in 0..nv {
            let (ei, ej) = (&gens[i], &gens[j]);
            let mut block = fresh();
            for (p, path) in a.basis().iter().enumerate() {
                if let Some(r) = a.multiply(path, ej) {
                    block[a.basis_index(&r).unwrap()].push((var(i, p), f.one()));
                }
                if let Some(r) = a.multiply(ei, path) {
                    block[a.basis_index(&r).unwrap()].push((var(j, p), f.one()));
                }
                if i == j {
                    block[p].push((var(i, p), -f.one()));
                }
            }
            push_block(block);
        }
    }

    // D(x) = D(e_t)x + e_tD(x) and D(x) = D(x)e_s + xD(e_s)
    for x in q.arrow_ids() {
        let gx = arrow_gen(x.0);
        let xp = q.arrow_path(x);
        let (s, t) = (q.source(x).0, q.target(x).0);
        let (es, et) = (&gens[s], &gens[t]);
        let mut left = fresh();
        let mut right = fresh();
        for (p, path) in a.basis().iter().enumerate() {
            left[p].push((var(gx, p), f.one()));
            right[p].push((var(gx, p), f.one()));
            if let Some(r) = a.multiply(path, &xp) {
                left[a.basis_index(&r).unwrap()].push((var(t, p), -f.one()));
            }
            if let Some(r) = a.multiply(et, path) {
                left[a.basis_index(&r).unwrap()].push((var(gx, p), -f.one()));
            }
            if let Some(r) = a.multiply(path, es) {
                right[a.basis_index(&r).unwrap()].push((var(gx, p), -f.one()));
            }
            if let Some(r) = a.multiply(&xp, path) {
                right[a.basis_index(&r).unwrap()].push((var(s, p), -f.one()));
            }
        }
        push_block(left);
        push_block(right);
    }

    // D(r) = Σ later·D(x_k)·earlier vanishes in A
    for r in a.relations() {
        let arrows = r.arrows();
        let mut block = fresh();
        for k in 0..arrows.len() {
            let earlier = if k == 0 {
                Path::trivial(r.source())
            } else {
                q.path(&arrows[..k]).expect("subpath")
            };
            let later = if k + 1 == arrows.len() {
                Path::trivial(r.target())
            } else {
                q.path(&arrows[k + 1..]).expect("subpath")
            };
            for (p, path) in a.basis().iter().enumerate() {
                let prod = a.multiply(path, &earlier).and_then(|m| a.multiply(&later, &m));
                if let Some(m) = prod {
                    block[a.basis_index(&m).unwrap()].push((var(arrow_gen(arrows[k].0), p), f.one()));
                }
            }
        }
        push_block(block);
    }

    let der = unknowns - Subspace::span(f, unknowns, equations).dim();
    let inner = Subspace::span(
        f,
        unknowns,
        a.basis().iter().map(|x| {
            let mut v = Vector::zero();
            for (k, g) in gens.iter().enumerate() {
                v.add_scaled(&f.one(), &commutator(a, x, g).reindex(|i| Some(var(k, i))));
            }
            v
        }),
    )
    .dim();
    der - inner
}

/// The map `ι: B → A` sending a basis path of `B` to the sum of its preimages.
pub fn embedding(g: &GluedAlgebra) -> Matrix {
    let (a, b) = (g.a(), g.b());
    let mut columns = vec![Vector::zero(); b.dim()];
    for i in 0..a.dim() {
        columns[g.path_image(i)].add_scaled(&a.field().one(), &Vector::unit(i, a.field()));
    }
    Matrix::from_columns(a.field(), a.dim(), columns).expect("indices in range")
}

/// `ι` is unital and multiplicative on all pairs of basis paths.
pub fn embedding_is_hom(g: &GluedAlgebra) -> bool {
    let (a, b) = (g.a(), g.b());
    let f = a.field();
    let iota = embedding(g);
    let unit = |alg: &MonomialAlgebra| {
        Vector::from_entries(
            alg.quiver()
                .vertices()
                .map(|v| (alg.basis_index(&Path::trivial(v)).unwrap(), f.one())),
        )
    };
    if iota.apply(&unit(b)) != unit(a) {
        return false;
    }
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            let (x, y) = (Vector::unit(i, f), Vector::unit(j, f));
            let lhs = iota.apply(&b.multiply_elements(&x, &y));
            let rhs = a.multiply_elements(&iota.apply(&x), &iota.apply(&y));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::quiver::Quiver;

    fn single_loop(n: usize, field: Field) -> MonomialAlgebra {
        let mut q = Quiver::new();
        let v = q.add_vertex("v").unwrap();
        let x = q.add_arrow("x", v, v).unwrap();
        let rel = q.path(&vec![x; n]).unwrap();
        MonomialAlgebra::build(q, vec![rel], field).unwrap()
    }

    #[test]
    fn truncated_polynomial_ring() {
        // k[x]/(x^n) is commutative and its derivations are x^j·d/dx with x^n ↦ n x^{n−1+j} = 0.
        let a = single_loop(3, Field::Rationals);
        assert_eq!(oracle_center(&a).dim(), 3);
        assert_eq!(oracle_hh1_dim(&a), 2);
        let b = single_loop(3, Field::prime(3).unwrap());
        assert_eq!(oracle_hh1_dim(&b), 3);
    }

    #[test]
    fn kronecker_has_pgl2_derivations() {
        let mut q = Quiver::new();
        let u = q.add_vertex("u").unwrap();
        let w = q.add_vertex("w").unwrap();
        q.add_arrow("x", u, w).unwrap();
        q.add_arrow("y", u, w).unwrap();
        let a = MonomialAlgebra::build(q, vec![], Field::Rationals).unwrap();
        assert_eq!(oracle_center(&a).dim(), 1);
        assert_eq!(oracle_hh1_dim(&a), 3);
    }
}
