mod common;

use common::{fixture, random_blowup_graph};
use eqpoincare::engine::for_each_region_point;
use eqpoincare::oracle::{dimension_tables, whole_ring_table, Axis, MonomialModel};
use eqpoincare::resolution::{intersection_matrix, multiplicity_matrix};
use eqpoincare::strata::stratum_multiplicities;
use eqpoincare::{
    divisorial_poincare, poincare_from_dimensions, CharSeries, CharacterRing, ComponentId, DimensionTable,
    ResolutionGraph, Series, Stratum,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blowup_graphs_invert_to_positive_integers(seed in any::<u64>(), steps in 0usize..15) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let desc = random_blowup_graph(&mut rng, steps);
        let g = ResolutionGraph::build(&desc).unwrap();
        let e = intersection_matrix(&g).unwrap();
        let m = multiplicity_matrix(&g).unwrap();
        let n = g.len();
        for i in 0..n {
            for j in 0..n {
                prop_assert!(m.entries()[i][j] >= 1);
                prop_assert_eq!(m.entries()[i][j], m.entries()[j][i]);
                let x: i64 = (0..n).map(|l| e.entries()[i][l] * m.entries()[l][j] as i64).sum();
                prop_assert_eq!(x, if i == j { -1 } else { 0 });
            }
        }
    }

    #[test]
    fn multiplicities_are_additive(a in prop::collection::vec(1u32..=13, 1..4), b in prop::collection::vec(1u32..=13, 1..4)) {
        let job = fixture("example3.json");
        let model = &job.model;
        let ids = |v: &[u32]| v.iter().map(|&i| ComponentId(i)).collect::<Vec<_>>();
        let ma = stratum_multiplicities(model, &Stratum::new(ids(&a), 0), model.chosen()).unwrap();
        let mb = stratum_multiplicities(model, &Stratum::new(ids(&b), 0), model.chosen()).unwrap();
        let joined: Vec<u32> = a.iter().chain(&b).copied().collect();
        let mab = stratum_multiplicities(model, &Stratum::new(ids(&joined), 0), model.chosen()).unwrap();
        prop_assert_eq!(mab, ma.add(&mb));
    }

    #[test]
    fn refinement_with_any_split(split in -4i64..5, which in 0usize..4) {
        let job = fixture("example3.json");
        let base = divisorial_poincare(&job.model, 6).unwrap();
        let mut strata = job.model.strata().to_vec();
        let mut part = strata[which].clone();
        part.chi = split;
        strata[which].chi -= split;
        strata.push(part);
        let refined = job.model.with_strata(strata).unwrap();
        prop_assert_eq!(divisorial_poincare(&refined, 6).unwrap(), base);
    }

    #[test]
    fn oracle_tables_partition_the_whole_ring(order in 1u32..7, k in -6i64..7, l in -6i64..7, curve in any::<bool>()) {
        let mm = if curve {
            MonomialModel::curve(order, (k, l), vec![Axis::XZero, Axis::YZero]).unwrap()
        } else {
            let job = fixture("example1.json");
            let chosen = [ComponentId(1), ComponentId(2), ComponentId(3)];
            MonomialModel::divisorial(order, (k, l), job.model.multiplicities(), ComponentId(3), ComponentId(1), &chosen).unwrap()
        };
        let n = 5;
        let tables = dimension_tables(&mm, n).unwrap();
        let whole = whole_ring_table(&mm, n).unwrap();
        let mut ok = true;
        for_each_region_point(mm.num_vars(), n, |v| {
            let sum: u64 = tables.iter().map(|(_, t)| t.get(v)).sum();
            ok &= sum == whole.get(v);
        });
        prop_assert!(ok);
    }

    #[test]
    fn pipeline_accepts_any_table(seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = CharacterRing::trivial();
        let table = DimensionTable::from_fn(3, 4, |_| rng.gen_range(0..5)).unwrap();
        let p = poincare_from_dimensions(&[(z.trivial_exponent(), table)], &z, 3, 4).unwrap();
        prop_assert!(p.terms().all(|(e, _)| e.total_degree() <= 4));
    }

    #[test]
    fn machine_form_round_trips(degree in 0u32..10) {
        let job = fixture("example1.json");
        let p = divisorial_poincare(&job.model, degree).unwrap();
        let json = serde_json::to_string(&p.to_machine()).unwrap();
        let back: CharSeries = Series::from_machine(job.model.ring().clone(), &serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn constant_term_is_one_on_every_fixture() {
    for name in ["example1.json", "example2.json", "example3.json", "trivial_vertex.json"] {
        let job = fixture(name);
        let p = divisorial_poincare(&job.model, 2).unwrap();
        let zero = vec![0; p.num_vars()];
        assert_eq!(p.coefficient(&zero), job.model.ring().one(), "{name}");
    }
}
