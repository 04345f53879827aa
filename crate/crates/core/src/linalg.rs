//! Exact sparse linear algebra: vectors, matrices given by their columns,
//! and subspaces stored in canonical reduced row-echelon form.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: expected ambient dimension {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("subspace is not contained in the given superspace")]
    NotContained,
    #[error("vectors are linearly dependent")]
    Dependent,
}

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector {
    entries: Vec<(usize, Scalar)>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn unit(index: usize, field: Field) -> Self {
        Vector {
            entries: vec![(index, field.one())],
        }
    }

    /// Builds a vector from arbitrary (index, coefficient) pairs, summing duplicates.
    pub fn from_entries<I: IntoIterator<Item = (usize, Scalar)>>(entries: I) -> Self {
        let mut raw: Vec<(usize, Scalar)> = entries.into_iter().collect();
        raw.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(raw.len());
        for (i, c) in raw {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Vector { entries: out }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Vector) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, c * y));
                }
                (Some(_), Some(_)) => {
                    let (i, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = &x + &(c * y);
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, c * y));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn scale(&mut self, c: &Scalar) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, x) in &mut self.entries {
            *x = &*x * c;
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        let mut v = self.clone();
        v.scale(c);
        v
    }

    pub fn plus(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        if let Some((_, c)) = other.leading() {
            v.add_scaled(&c.field().one(), other);
        }
        v
    }

    pub fn minus(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        if let Some((_, c)) = other.leading() {
            v.add_scaled(&-c.field().one(), other);
        }
        v
    }

    /// Applies an index map; entries mapped to `None` are dropped.
    pub fn reindex<F: Fn(usize) -> Option<usize>>(&self, map: F) -> Vector {
        Vector::from_entries(
            self.entries
                .iter()
                .filter_map(|(i, c)| map(*i).map(|j| (j, c.clone()))),
        )
    }

    /// Renders as a signed sum using the given label function.
    pub fn render<F: Fn(usize) -> String>(&self, label: F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (i, c)) in self.entries.iter().enumerate() {
            let neg = match c {
                Scalar::Rational(_) => c.is_negative(),
                Scalar::Residue { .. } => false,
            };
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&label(*i));
        }
        s
    }
}

/// A linear map `k^ncols → k^nrows`, stored column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    nrows: usize,
    columns: Vec<Vector>,
}

impl Matrix {
    pub fn from_columns(field: Field, nrows: usize, columns: Vec<Vector>) -> Result<Self, LinalgError> {
        for c in &columns {
            if let Some(m) = c.max_index() {
                if m >= nrows {
                    return Err(LinalgError::Shape {
                        expected: nrows,
                        found: m + 1,
                    });
                }
            }
        }
        Ok(Matrix {
            field,
            nrows,
            columns,
        })
    }

    pub fn zero(field: Field, nrows: usize, ncols: usize) -> Self {
        Matrix {
            field,
            nrows,
            columns: vec![Vector::zero(); ncols],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (j, c) in v.iter() {
            out.add_scaled(c, &self.columns[j]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if other.nrows != self.ncols() {
            return Err(LinalgError::Shape {
                expected: self.ncols(),
                found: other.nrows,
            });
        }
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        Ok(Matrix {
            field: self.field,
            nrows: self.nrows,
            columns,
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.nrows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.iter() {
                rows[i].push((j, c.clone()));
            }
        }
        Matrix {
            field: self.field,
            nrows: self.ncols(),
            columns: rows.into_iter().map(|r| Vector { entries: r }).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vector::is_zero)
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.field, self.nrows, self.columns.iter().cloned())
    }

    pub fn rank(&self) -> usize {
        self.image().dim()
    }

    pub fn kernel(&self) -> Subspace {
        let n = self.ncols();
        let rows = self.transpose();
        let rref = Subspace::span(self.field, n, rows.columns);
        let pivots: Vec<usize> = rref.pivots().collect();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..n).filter(|&f| !is_pivot[f]) {
            let mut entries = vec![(f, self.field.one())];
            for (row, &p) in rref.rows.iter().zip(&pivots) {
                if let Some(c) = row.get(f) {
                    entries.push((p, -c));
                }
            }
            basis.push(Vector::from_entries(entries));
        }
        Subspace::span(self.field, n, basis)
    }

    /// Restriction to the given domain indices (in that order).
    pub fn select_columns(&self, indices: &[usize]) -> Matrix {
        Matrix {
            field: self.field,
            nrows: self.nrows,
            columns: indices.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }
}

/// A subspace of `k^ambient` in canonical reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace::span(field, ambient, (0..ambient).map(|i| Vector::unit(i, field)))
    }

    pub fn span<I: IntoIterator<Item = Vector>>(field: Field, ambient: usize, gens: I) -> Self {
        let mut s = Subspace::zero(field, ambient);
        for g in gens {
            s.insert(g);
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().expect("nonzero row").0)
    }

    /// Eliminates every pivot column of `v`.
    pub fn reduce(&self, mut v: Vector) -> Vector {
        for row in &self.rows {
            let p = row.leading().expect("nonzero row").0;
            if let Some(c) = v.get(p).cloned() {
                v.add_scaled(&-c, row);
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        debug_assert!(v.max_index().is_none_or(|m| m < self.ambient));
        let mut v = self.reduce(v);
        let Some((p, lead)) = v.leading() else {
            return false;
        };
        let inv = lead.inv();
        v.scale(&inv);
        for row in &mut self.rows {
            if let Some(c) = row.get(p).cloned() {
                row.add_scaled(&-c, &v);
            }
        }
        let pos = self
            .rows
            .partition_point(|r| r.leading().expect("nonzero row").0 < p);
        self.rows.insert(pos, v);
        true
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    /// Zassenhaus intersection.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let n = self.ambient;
        let mut big = Subspace::zero(self.field, 2 * n);
        for r in &self.rows {
            let doubled = Vector::from_entries(
                r.iter()
                    .map(|(i, c)| (i, c.clone()))
                    .chain(r.iter().map(|(i, c)| (i + n, c.clone()))),
            );
            big.insert(doubled);
        }
        for r in &other.rows {
            big.insert(r.clone());
        }
        let gens = big
            .rows
            .iter()
            .filter(|r| r.leading().expect("nonzero row").0 >= n)
            .map(|r| r.reindex(|i| i.checked_sub(n)))
            .collect::<Vec<_>>();
        Subspace::span(self.field, n, gens)
    }

    pub fn is_direct_sum(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim() + other.dim()
    }

    /// `dim self − dim sub`, requiring `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize, LinalgError> {
        if !self.contains_subspace(sub) {
            return Err(LinalgError::NotContained);
        }
        Ok(self.dim() - sub.dim())
    }

    /// Image of this subspace under a linear map.
    pub fn map(&self, m: &Matrix) -> Subspace {
        Subspace::span(self.field, m.nrows(), self.rows.iter().map(|r| m.apply(r)))
    }

    /// Rows of `self` that extend a basis of `sub` to a basis of `self`,
    /// taken greedily in echelon order.
    pub fn complement_rows(&self, sub: &Subspace) -> Vec<Vector> {
        let mut acc = sub.clone();
        let mut chosen = Vec::new();
        for r in &self.rows {
            if acc.insert(r.clone()) {
                chosen.push(r.clone());
            }
        }
        chosen
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", r.render(|i| format!("x{i}")))?;
        }
        write!(f, ">")
    }
}

/// Coordinates with respect to a fixed ordered list of independent vectors.
#[derive(Clone, Debug)]
pub struct Coordinates {
    field: Field,
    len: usize,
    rows: Vec<(Vector, Vector)>,
}

impl Coordinates {
    pub fn new(field: Field, basis: &[Vector]) -> Result<Self, LinalgError> {
        let mut rows: Vec<(Vector, Vector)> = Vec::new();
        for (k, b) in basis.iter().enumerate() {
            let mut v = b.clone();
            let mut combo = Vector::unit(k, field);
            for (r, rc) in &rows {
                let p = r.leading().expect("nonzero row").0;
                if let Some(c) = v.get(p).cloned() {
                    v.add_scaled(&-&c, r);
                    combo.add_scaled(&-c, rc);
                }
            }
            let Some((p, lead)) = v.leading() else {
                return Err(LinalgError::Dependent);
            };
            let inv = lead.inv();
            v.scale(&inv);
            combo.scale(&inv);
            for (r, rc) in &mut rows {
                if let Some(c) = r.get(p).cloned() {
                    r.add_scaled(&-&c, &v);
                    rc.add_scaled(&-c, &combo);
                }
            }
            rows.push((v, combo));
        }
        Ok(Coordinates {
            field,
            len: basis.len(),
            rows,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Coefficients `c` with `v = Σ c_k basis_k`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &Vector) -> Option<Vector> {
        let mut v = v.clone();
        let mut out = Vector::zero();
        for (r, rc) in &self.rows {
            let p = r.leading().expect("nonzero row").0;
            if let Some(c) = v.get(p).cloned() {
                v.add_scaled(&-&c, r);
                out.add_scaled(&c, rc);
            }
        }
        v.is_zero().then_some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn vec_of(f: Field, xs: &[i64]) -> Vector {
        Vector::from_entries(xs.iter().enumerate().map(|(i, &x)| (i, f.int(x))))
    }

    #[test]
    fn zero_and_identity_maps() {
        let z = Matrix::zero(q(), 3, 3);
        assert_eq!(z.kernel().dim(), 3);
        assert_eq!(z.image().dim(), 0);
        let id = Matrix::from_columns(q(), 3, (0..3).map(|i| Vector::unit(i, q())).collect()).unwrap();
        assert_eq!(id.kernel().dim(), 0);
        assert_eq!(id.image().dim(), 3);
    }

    #[test]
    fn canonical_echelon_form() {
        let f = q();
        let a = Subspace::span(f, 3, [vec_of(f, &[1, 2, 3]), vec_of(f, &[0, 1, 1])]);
        let b = Subspace::span(f, 3, [vec_of(f, &[1, 3, 4]), vec_of(f, &[2, 5, 7])]);
        assert_eq!(a, b);
        assert_eq!(a.intersect(&a), a);
    }

    #[test]
    fn intersection_and_direct_sum() {
        let f = q();
        let s = Subspace::span(f, 3, [vec_of(f, &[1, 0, 0]), vec_of(f, &[0, 1, 0])]);
        let t = Subspace::span(f, 3, [vec_of(f, &[0, 1, 0]), vec_of(f, &[0, 0, 1])]);
        let i = s.intersect(&t);
        assert_eq!(i, Subspace::span(f, 3, [vec_of(f, &[0, 1, 0])]));
        assert!(!s.is_direct_sum(&t));
        assert_eq!(s.quotient_dim(&i), Ok(1));
        assert_eq!(i.quotient_dim(&s), Err(LinalgError::NotContained));
    }

    #[test]
    fn coordinates_recover_combinations() {
        let f = Field::Prime(3);
        let basis = [vec_of(f, &[1, 1, 0]), vec_of(f, &[0, 1, 1])];
        let c = Coordinates::new(f, &basis).unwrap();
        let v = vec_of(f, &[2, 0, 1]);
        let coords = c.coords(&v).unwrap();
        assert_eq!(coords, Vector::from_entries([(0, f.int(2)), (1, f.int(1))]));
        assert!(c.coords(&vec_of(f, &[1, 0, 0])).is_none());
        assert_eq!(
            Coordinates::new(f, &[vec_of(f, &[1, 1]), vec_of(f, &[2, 2])]).unwrap_err(),
            LinalgError::Dependent
        );
    }

    #[test]
    fn render_signs() {
        let f = q();
        let v = Vector::from_entries([(0, f.int(1)), (2, f.int(-1)), (3, f.ratio(1, 2))]);
        assert_eq!(v.render(|i| format!("v{i}")), "v0 - v2 + 1/2*v3");
    }
}
