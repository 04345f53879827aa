#![allow(dead_code)]

use quiverhh::algebra::MonomialAlgebra;
use quiverhh::corpus::example;
use quiverhh::field::Field;
use quiverhh::gluing::GluedAlgebra;
use quiverhh::linalg::{Subspace, Vector};
use quiverhh::strametz::PairSpace;

pub fn glued(name: &str) -> GluedAlgebra {
    example(name).expect("known example").glued().expect("example glues")
}

pub fn glued_over(name: &str, field: Field) -> GluedAlgebra {
    let e = example(name).expect("known example");
    let a = e.algebra().expect("example parses").with_field(field);
    let q = a.quiver();
    let alpha = q.arrow_by_name(e.alpha).expect("alpha");
    let beta = q.arrow_by_name(e.beta).expect("beta");
    quiverhh::gluing::glue(&a, alpha, beta).expect("example glues")
}

pub fn index(space: &PairSpace, a: &MonomialAlgebra, label: &str) -> usize {
    (0..space.len())
        .find(|&i| space.label(a, i) == label)
        .unwrap_or_else(|| panic!("no pair labelled {label}"))
}

/// A linear combination of pairs given by their labels.
pub fn combo(space: &PairSpace, a: &MonomialAlgebra, terms: &[(&str, i64)]) -> Vector {
    let f = a.field();
    let mut v = Vector::zero();
    for &(label, c) in terms {
        v.add_scaled(&f.int(c), &Vector::unit(index(space, a, label), f));
    }
    v
}

pub fn span(space: &PairSpace, a: &MonomialAlgebra, gens: &[&[(&str, i64)]]) -> Subspace {
    Subspace::span(a.field(), space.len(), gens.iter().map(|g| combo(space, a, g)))
}

pub fn single(label: &str) -> [(&str, i64); 1] {
    [(label, 1)]
}

pub fn rendered(space: &PairSpace, a: &MonomialAlgebra, s: &Subspace) -> Vec<String> {
    s.rows().iter().map(|r| space.render(a, r)).collect()
}

pub const PRIME_FIELDS: [u64; 3] = [2, 3, 5];

pub fn all_fields() -> Vec<Field> {
    let mut v = vec![Field::Rationals];
    v.extend(PRIME_FIELDS.iter().map(|&p| Field::prime(p).expect("prime")));
    v
}
