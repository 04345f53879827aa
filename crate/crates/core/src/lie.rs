//! Finite-dimensional Lie algebras given by structure constants.

use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Subspace, Vector};

/// `[x_i, x_j] = Σ_k constants[i][j]_k x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraPresentation {
    field: Field,
    labels: Vec<String>,
    constants: Vec<Vec<Vector>>,
}

impl LieAlgebraPresentation {
    pub fn new(field: Field, labels: Vec<String>, constants: Vec<Vec<Vector>>) -> Self {
        assert_eq!(labels.len(), constants.len());
        LieAlgebraPresentation {
            field,
            labels,
            constants,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constant(&self, i: usize, j: usize) -> &Vector {
        &self.constants[i][j]
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&(a * b), &self.constants[i][j]);
            }
        }
        out
    }

    pub fn is_alternating(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            self.constants[i][i].is_zero()
                && (0..n).all(|j| self.constants[i][j].plus(&self.constants[j][i]).is_zero())
        })
    }

    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.dim();
        let unit = |i| Vector::unit(i, self.field);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    let t1 = self.bracket(&x, &self.bracket(&y, &z));
                    let t2 = self.bracket(&y, &self.bracket(&z, &x));
                    let t3 = self.bracket(&z, &self.bracket(&x, &y));
                    if !t1.plus(&t2).plus(&t3).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Dimension of `{x : [x, −] = 0}`.
    pub fn center_dim(&self) -> usize {
        let n = self.dim();
        // x ↦ ([x, x_0], …, [x, x_{n−1}]) stacked into k^{n·n}
        let columns = (0..n)
            .map(|i| {
                Vector::from_entries((0..n).flat_map(|j| {
                    self.constants[i][j]
                        .iter()
                        .map(move |(k, c)| (j * n + k, c.clone()))
                        .collect::<Vec<(usize, Scalar)>>()
                }))
            })
            .collect();
        Matrix::from_columns(self.field, n * n, columns)
            .expect("indices in range")
            .kernel()
            .dim()
    }

    /// Dimension of `[L, L]`.
    pub fn derived_dim(&self) -> usize {
        let n = self.dim();
        Subspace::span(
            self.field,
            n,
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| self.constants[i][j].clone()),
        )
        .dim()
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().flatten().all(Vector::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// sl₂ with basis e, f, h: [e,f]=h, [h,e]=2e, [h,f]=−2f.
    fn sl2() -> LieAlgebraPresentation {
        let q = Field::Rationals;
        let v = |entries: &[(usize, i64)]| Vector::from_entries(entries.iter().map(|&(i, c)| (i, q.int(c))));
        let mut c = vec![vec![Vector::zero(); 3]; 3];
        c[0][1] = v(&[(2, 1)]);
        c[1][0] = v(&[(2, -1)]);
        c[2][0] = v(&[(0, 2)]);
        c[0][2] = v(&[(0, -2)]);
        c[2][1] = v(&[(1, -2)]);
        c[1][2] = v(&[(1, 2)]);
        LieAlgebraPresentation::new(q, vec!["e".into(), "f".into(), "h".into()], c)
    }

    #[test]
    fn sl2_invariants() {
        let l = sl2();
        assert!(l.is_alternating());
        assert!(l.satisfies_jacobi());
        assert_eq!(l.center_dim(), 0);
        assert_eq!(l.derived_dim(), 3);
        assert!(!l.is_abelian());
    }

    #[test]
    fn empty_and_one_dimensional() {
        let q = Field::Rationals;
        let empty = LieAlgebraPresentation::new(q, vec![], vec![]);
        assert!(empty.is_abelian() && empty.satisfies_jacobi());
        let line = LieAlgebraPresentation::new(q, vec!["x".into()], vec![vec![Vector::zero()]]);
        assert_eq!(line.center_dim(), 1);
        assert_eq!(line.derived_dim(), 0);
    }
}
