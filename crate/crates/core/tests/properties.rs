mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quiverhh::algebra::MonomialAlgebra;
use quiverhh::field::Field;
use quiverhh::format;
use quiverhh::gluing::glue;
use quiverhh::higher::{parallel_counts, parallel_pairs};
use quiverhh::strametz::LowDegree;
use quiverhh::verify::oracle::{embedding_is_hom, oracle_center, oracle_hh1_dim};
use quiverhh::verify::random::{random_algebra, random_gluing, random_source_sink, RandomSpec, SourceSinkShape};

fn algebra(seed: u64, field: Field) -> MonomialAlgebra {
    let spec = RandomSpec::default().with_fields(vec![field]).with_max_dim(40);
    random_algebra(&mut ChaCha8Rng::seed_from_u64(seed), &spec)
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop::sample::select(common::all_fields())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn complex_composes_to_zero(seed in any::<u64>(), field in field_strategy()) {
        let a = algebra(seed, field);
        let h = LowDegree::compute(&a);
        prop_assert!(h.complex.delta1().compose(h.complex.delta0()).unwrap().is_zero());
        prop_assert!(h.ker1.contains_subspace(&h.im0));
    }

    #[test]
    fn low_degrees_agree_with_the_oracles(seed in any::<u64>(), field in field_strategy()) {
        let a = algebra(seed, field);
        let h = LowDegree::compute(&a);
        prop_assert_eq!(h.hh0_dim(), oracle_center(&a).dim());
        prop_assert_eq!(h.hh1_dim(), oracle_hh1_dim(&a));
    }

    #[test]
    fn text_format_round_trips(seed in any::<u64>(), field in field_strategy()) {
        let a = algebra(seed, field);
        let text = format::print(&a);
        let back = format::parse(&text).unwrap();
        prop_assert_eq!(back.quiver(), a.quiver());
        prop_assert_eq!(back.relations(), a.relations());
        prop_assert_eq!(back.field(), a.field());
        prop_assert_eq!(format::print(&back), text);
    }

    #[test]
    fn gluing_invariants(seed in any::<u64>()) {
        let s = random_gluing(&mut ChaCha8Rng::seed_from_u64(seed), &RandomSpec::default().with_max_dim(40));
        let g = glue(&s.algebra, s.alpha, s.beta).unwrap();
        let (a, b) = (g.a(), g.b());
        prop_assert_eq!(b.quiver().vertex_count() + 2, a.quiver().vertex_count());
        prop_assert_eq!(b.quiver().arrow_count() + 1, a.quiver().arrow_count());
        prop_assert_eq!(b.dim() + 3, a.dim());
        prop_assert!(g.z_new().iter().all(|p| (2..=3).contains(&p.len())));
        prop_assert!(g.z_new().iter().all(|p| b.in_ideal(p)));
        let mut images: Vec<usize> = (0..a.dim())
            .filter(|&i| !a.basis()[i].is_empty())
            .map(|i| g.path_image(i))
            .collect();
        let before = images.len();
        images.sort();
        images.dedup();
        prop_assert_eq!(images.len() + 1, before);
    }

    #[test]
    fn image_of_delta0_is_a_lie_ideal(seed in any::<u64>()) {
        let a = algebra(seed, Field::Rationals);
        let h = LowDegree::compute(&a);
        for k in h.ker1.rows() {
            for i in h.im0.rows() {
                prop_assert!(h.im0.contains(&h.complex.bracket(k, i)));
            }
            for l in h.ker1.rows() {
                prop_assert!(h.ker1.contains(&h.complex.bracket(k, l)));
            }
        }
    }

    #[test]
    fn first_cohomology_is_a_lie_algebra(seed in any::<u64>(), field in field_strategy()) {
        let a = algebra(seed, field);
        let lie = LowDegree::compute(&a).hh1_lie();
        prop_assert!(lie.is_alternating());
        prop_assert!(lie.satisfies_jacobi());
    }

    #[test]
    fn different_block_embedding_is_an_algebra_map(seed in any::<u64>(), rad in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_source_sink(&mut rng, &RandomSpec::default(), SourceSinkShape::DifferentBlocks, rad);
        let g = glue(&s.algebra, s.alpha, s.beta).unwrap();
        prop_assert!(embedding_is_hom(&g));
    }

    #[test]
    fn path_counts_match_enumeration(seed in any::<u64>(), n in 1usize..=4) {
        let a = algebra(seed, Field::Rationals);
        let q = a.quiver();
        let (pairs, loops) = parallel_counts(q, n);
        prop_assert_eq!(pairs.to_string(), parallel_pairs(q, n).len().to_string());
        let closed = q.vertices().map(|v| {
            let mut here = vec![v];
            for _ in 0..n - 1 {
                here = here.iter().flat_map(|&u| q.outgoing(u).map(|x| q.target(x))).collect();
            }
            here.iter().filter(|&&u| u == v).count()
        }).sum::<usize>();
        prop_assert_eq!(loops.to_string(), closed.to_string());
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>()) {
        let a = algebra(seed, Field::Rationals);
        let b = algebra(seed, Field::Rationals);
        prop_assert_eq!(format::print(&a), format::print(&b));
    }
}
