//! Monomial algebras `kQ/⟨Z⟩` with their finite path basis.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::field::Field;
use crate::linalg::Vector;
use crate::quiver::{ArrowId, Path, Quiver, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("relation `{0}` has length < 2")]
    Admissibility(String),
    #[error("relations are not minimal: `{contained}` is a subpath of `{containing}`")]
    NonMinimal { contained: String, containing: String },
    #[error("algebra is infinite-dimensional: the cycle `{cycle}` avoids every relation")]
    InfiniteDimensional { cycle: String },
    #[error("basis exceeds the limit of {0} paths")]
    TooLarge(usize),
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Drop relations that contain another relation instead of rejecting them.
    pub repair_minimality: bool,
    pub max_basis: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            repair_minimality: false,
            max_basis: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonomialAlgebra {
    quiver: Quiver,
    relations: Vec<Path>,
    field: Field,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    relation_set: HashSet<Vec<ArrowId>>,
    relation_lengths: Vec<usize>,
}

impl PartialEq for MonomialAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.relations == other.relations && self.field == other.field
    }
}

impl Eq for MonomialAlgebra {}

/// Sorts, deduplicates and drops every relation containing another one.
pub fn minimalize(mut relations: Vec<Path>) -> Vec<Path> {
    relations.sort();
    relations.dedup();
    let keep: Vec<bool> = relations
        .iter()
        .map(|r| {
            !relations
                .iter()
                .any(|s| s != r && s.len() <= r.len() && s.is_subpath_of(r))
        })
        .collect();
    relations
        .into_iter()
        .zip(keep)
        .filter_map(|(r, k)| k.then_some(r))
        .collect()
}

impl MonomialAlgebra {
    pub fn build(quiver: Quiver, relations: Vec<Path>, field: Field) -> Result<Self, AlgebraError> {
        Self::build_with(quiver, relations, field, BuildOptions::default())
    }

    pub fn build_with(
        quiver: Quiver,
        relations: Vec<Path>,
        field: Field,
        options: BuildOptions,
    ) -> Result<Self, AlgebraError> {
        for r in &relations {
            if r.len() < 2 {
                return Err(AlgebraError::Admissibility(quiver.display_path(r)));
            }
        }
        let mut relations = relations;
        relations.sort();
        relations.dedup();
        if options.repair_minimality {
            relations = minimalize(relations);
        } else {
            for r in &relations {
                for s in &relations {
                    if r != s && r.is_subpath_of(s) {
                        return Err(AlgebraError::NonMinimal {
                            contained: quiver.display_path(r),
                            containing: quiver.display_path(s),
                        });
                    }
                }
            }
        }
        let relation_set: HashSet<Vec<ArrowId>> = relations.iter().map(|r| r.arrows().to_vec()).collect();
        let mut relation_lengths: Vec<usize> = relations.iter().map(Path::len).collect();
        relation_lengths.sort_unstable();
        relation_lengths.dedup();

        let basis = enumerate_basis(&quiver, &relation_set, &relation_lengths, options.max_basis)?;
        let index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(MonomialAlgebra {
            quiver,
            relations,
            field,
            basis,
            index,
            relation_set,
            relation_lengths,
        })
    }

    /// The same quiver and relations over another field.
    pub fn with_field(&self, field: Field) -> MonomialAlgebra {
        MonomialAlgebra {
            field,
            ..self.clone()
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn relation_index(&self, r: &Path) -> Option<usize> {
        self.relations.binary_search(r).ok()
    }

    pub fn in_ideal(&self, p: &Path) -> bool {
        let arrows = p.arrows();
        self.relation_lengths.iter().any(|&l| {
            l <= arrows.len() && arrows.windows(l).any(|w| self.relation_set.contains(w))
        })
    }

    /// The product `later·earlier` of two paths, or `None` when it vanishes.
    pub fn multiply(&self, later: &Path, earlier: &Path) -> Option<Path> {
        let p = self.quiver.compose(later, earlier).ok()?;
        (!self.in_ideal(&p)).then_some(p)
    }

    /// Product of two elements given as coordinate vectors over the basis.
    pub fn multiply_elements(&self, later: &Vector, earlier: &Vector) -> Vector {
        let mut terms = Vec::new();
        for (i, x) in later.iter() {
            for (j, y) in earlier.iter() {
                if let Some(p) = self.multiply(&self.basis[i], &self.basis[j]) {
                    terms.push((self.index[&p], x * y));
                }
            }
        }
        Vector::from_entries(terms)
    }

    pub fn is_radical_square_zero(&self) -> bool {
        self.basis.iter().all(|p| p.len() < 2)
    }

    /// Basis paths of length ≥ 1 from `j` to `i`.
    pub fn path_set(&self, i: VertexId, j: VertexId) -> Vec<Path> {
        self.basis
            .iter()
            .filter(|p| !p.is_trivial() && p.source() == j && p.target() == i)
            .cloned()
            .collect()
    }

    pub fn is_node_arrow(&self, g: ArrowId) -> bool {
        let q = &self.quiver;
        if q.is_source_arrow(g) || q.is_sink_arrow(g) {
            return false;
        }
        q.incoming(q.source(g)).all(|x| {
            q.outgoing(q.target(g)).all(|y| {
                let p = q.path(&[x, g, y]).expect("composable by construction");
                self.in_ideal(&p)
            })
        })
    }

    /// Number of components of the quiver.
    pub fn block_count(&self) -> usize {
        self.quiver.component_count()
    }
}

fn enumerate_basis(
    quiver: &Quiver,
    relations: &HashSet<Vec<ArrowId>>,
    lengths: &[usize],
    cap: usize,
) -> Result<Vec<Path>, AlgebraError> {
    let max_len = lengths.last().copied().unwrap_or(0);
    let window = max_len.saturating_sub(1).max(1);
    let mut basis: Vec<Path> = quiver.vertices().map(Path::trivial).collect();
    let mut level: Vec<Path> = quiver.arrow_ids().map(|a| quiver.arrow_path(a)).collect();
    let mut states_at_window = None;
    let mut length = 1;
    while !level.is_empty() {
        level.sort();
        if length == window {
            states_at_window = Some(level.len());
        }
        if let Some(s) = states_at_window {
            if length >= s + window {
                return Err(AlgebraError::InfiniteDimensional {
                    cycle: repeated_window(quiver, &level[0], window),
                });
            }
        }
        basis.extend(level.iter().cloned());
        if basis.len() > cap {
            return Err(AlgebraError::TooLarge(cap));
        }
        let mut next = Vec::new();
        for p in &level {
            for a in quiver.outgoing(p.target()) {
                let mut arrows = p.arrows().to_vec();
                arrows.push(a);
                let hits = lengths
                    .iter()
                    .any(|&l| l <= arrows.len() && relations.contains(&arrows[arrows.len() - l..]));
                if !hits {
                    next.push(quiver.path(&arrows).expect("extension composes"));
                }
            }
        }
        level = next;
        length += 1;
    }
    Ok(basis)
}

/// Finds two equal windows in a long relation-free path and renders the loop between them.
fn repeated_window(quiver: &Quiver, p: &Path, window: usize) -> String {
    let arrows = p.arrows();
    for i in 0..arrows.len() - window {
        for j in i + 1..=arrows.len() - window {
            if arrows[i..i + window] == arrows[j..j + window] {
                let cycle = quiver.path(&arrows[i..j]).expect("subpath composes");
                return quiver.display_path(&cycle);
            }
        }
    }
    quiver.display_path(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a4(relations: &[&[usize]]) -> MonomialAlgebra {
        let mut q = Quiver::new();
        let v: Vec<_> = (1..=4).map(|i| q.add_vertex(&format!("e{i}")).unwrap()).collect();
        q.add_arrow("alpha", v[0], v[1]).unwrap();
        q.add_arrow("eta", v[1], v[2]).unwrap();
        q.add_arrow("beta", v[2], v[3]).unwrap();
        let rels = relations
            .iter()
            .map(|r| q.path(&r.iter().map(|&i| ArrowId(i)).collect::<Vec<_>>()).unwrap())
            .collect();
        MonomialAlgebra::build(q, rels, Field::Rationals).unwrap()
    }

    fn looped(relations: bool) -> Result<MonomialAlgebra, AlgebraError> {
        let mut q = Quiver::new();
        let e = q.add_vertex("e1").unwrap();
        let xi = q.add_arrow("xi", e, e).unwrap();
        let rels = if relations { vec![q.path(&[xi, xi]).unwrap()] } else { vec![] };
        MonomialAlgebra::build(q, rels, Field::Rationals)
    }

    #[test]
    fn path_algebra_of_a4_has_dimension_ten() {
        let a = a4(&[]);
        assert_eq!(a.dim(), 10);
        assert!(!a.is_radical_square_zero());
        let bea = a.quiver().path(&[ArrowId(0), ArrowId(1), ArrowId(2)]).unwrap();
        assert!(!a.in_ideal(&bea));
        let b = a.quiver().arrow_path(ArrowId(2));
        let ea = a.quiver().path(&[ArrowId(0), ArrowId(1)]).unwrap();
        assert_eq!(a.multiply(&b, &ea), Some(bea));
    }

    #[test]
    fn quadratic_relations() {
        let a = a4(&[&[0, 1], &[1, 2]]);
        assert_eq!(a.dim(), 7);
        let q = a.quiver();
        let ea = q.path(&[ArrowId(0), ArrowId(1)]).unwrap();
        assert!(a.in_ideal(&ea));
        assert!(!a.in_ideal(&Path::trivial(VertexId(0))));
        assert_eq!(a.multiply(&q.arrow_path(ArrowId(1)), &q.arrow_path(ArrowId(0))), None);
        assert!(a.is_radical_square_zero());
    }

    #[test]
    fn loops_need_relations() {
        let a = looped(true).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(matches!(looped(false), Err(AlgebraError::InfiniteDimensional { .. })));
    }

    #[test]
    fn rejects_short_and_non_minimal_relations() {
        let mut q = Quiver::new();
        let e = q.add_vertex("e").unwrap();
        let x = q.add_arrow("x", e, e).unwrap();
        let short = MonomialAlgebra::build(q.clone(), vec![q.arrow_path(x)], Field::Rationals);
        assert!(matches!(short, Err(AlgebraError::Admissibility(_))));
        let rels = vec![q.path(&[x, x]).unwrap(), q.path(&[x, x, x]).unwrap()];
        let strict = MonomialAlgebra::build(q.clone(), rels.clone(), Field::Rationals);
        assert!(matches!(strict, Err(AlgebraError::NonMinimal { .. })));
        let opts = BuildOptions {
            repair_minimality: true,
            ..BuildOptions::default()
        };
        let repaired = MonomialAlgebra::build_with(q, rels, Field::Rationals, opts).unwrap();
        assert_eq!(repaired.relations().len(), 1);
    }

    #[test]
    fn no_arrows_is_radical_square_zero() {
        let mut q = Quiver::new();
        q.add_vertex("e").unwrap();
        let a = MonomialAlgebra::build(q, vec![], Field::Rationals).unwrap();
        assert!(a.is_radical_square_zero());
        assert!(a.path_set(VertexId(0), VertexId(0)).is_empty());
    }
}
