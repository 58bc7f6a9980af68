use finrefl_core::doubled::{self, DoubledSpace};
use finrefl_core::homology::{homology, order_complex};
use finrefl_core::invsys::{cech_homology, stagewise_reflection};
use finrefl_core::nerve::{self, build_tower, face_poset, CoverSpec, Model};
use finrefl_core::{Coefficients, Error, FieldCoeff, FiniteSpace, InverseSequence, LimitDim, SimplicialComplex};
use finrefl_testkit as kit;
use proptest::prelude::*;

const MODELS: [Model; 3] = [Model::Circle, Model::Interval, Model::Wedge2];

fn rational_betti(space: &FiniteSpace) -> Vec<usize> {
    homology(&order_complex(space).unwrap(), Coefficients::Rationals).unwrap().betti
}

#[test]
fn stage_homology_matches_the_model() {
    for model in MODELS {
        let base = if model == Model::Interval { 3 } else { 4 };
        let tower = build_tower(model, base, 4).unwrap();
        assert_eq!(tower.sequence.len(), 4);
        for stage in tower.sequence.spaces() {
            let b = rational_betti(stage);
            assert_eq!([b[0], b.get(1).copied().unwrap_or(0)], model.betti(), "{}", model.name());
            assert!(b.iter().skip(2).all(|&x| x == 0));
        }
        for n in 0..tower.sequence.len() - 1 {
            assert!(tower.sequence.bond(n).is_ok());
        }
        assert!(tower.sequence.validate().is_ok());
    }
}

#[test]
fn circle_stage_sizes() {
    let tower = build_tower(Model::Circle, 4, 3).unwrap();
    let sizes: Vec<usize> = tower.sequence.spaces().iter().map(FiniteSpace::len).collect();
    assert_eq!(sizes, vec![8, 16, 32]);
    for (n, k) in tower.nerves.iter().enumerate() {
        assert_eq!(*k, SimplicialComplex::polygon(4 << n));
    }
}

#[test]
fn cech_limits_match_the_model() {
    for model in MODELS {
        let base = if model == Model::Interval { 3 } else { 4 };
        let tower = build_tower(model, base, 4).unwrap();
        for degree in 0..=1 {
            let report = cech_homology(&tower.sequence, degree, FieldCoeff::Rationals, 2).unwrap();
            let expected = model.betti()[degree];
            assert!(report.stabilized && report.mittag_leffler);
            assert_eq!(report.limit_dim, LimitDim::Exact(expected));
            assert!(report.image_ranks.iter().flatten().all(|&r| r == expected));
        }
        let mod2 = cech_homology(&tower.sequence, 1, FieldCoeff::ModP(2), 2).unwrap();
        assert_eq!(mod2.limit_dim.exact(), Some(model.betti()[1]));
    }
}

#[test]
fn stagewise_reflection_collapses_connected_towers() {
    for model in MODELS {
        let tower = build_tower(model, 4, 3).unwrap();
        let reflected = stagewise_reflection(&tower.sequence).unwrap();
        assert!(reflected.spaces().iter().all(|s| s.len() == 1));
        let report = cech_homology(&reflected, 1, FieldCoeff::Rationals, 2).unwrap();
        assert_eq!(report.limit_dim, LimitDim::Exact(0));
    }
}

#[test]
fn constant_towers_keep_their_betti_numbers() {
    for space in [FiniteSpace::pseudocircle(), FiniteSpace::discrete(3), FiniteSpace::sierpinski()] {
        let seq = InverseSequence::constant(space.clone(), 4);
        let betti = rational_betti(&space);
        for k in 0..3 {
            let report = cech_homology(&seq, k, FieldCoeff::Rationals, 2).unwrap();
            assert_eq!(report.limit_dim, LimitDim::Exact(betti.get(k).copied().unwrap_or(0)));
        }
    }
}

#[test]
fn window_must_fit() {
    let seq = InverseSequence::constant(FiniteSpace::point(), 2);
    assert!(matches!(cech_homology(&seq, 0, FieldCoeff::Rationals, 2), Err(Error::WindowTooLarge { .. })));
    assert!(cech_homology(&seq, 0, FieldCoeff::Rationals, 0).is_err());
    assert!(cech_homology(&seq, 0, FieldCoeff::Rationals, 1).is_ok());
}

#[test]
fn collapsing_bonds_give_a_bracket() {
    // circle, circle, point: the deepest map kills H_1
    let pc = FiniteSpace::pseudocircle();
    let seq = InverseSequence::new(
        vec![pc.clone(), pc.clone(), FiniteSpace::point()],
        vec![(0..4).collect(), vec![0; 1]],
    )
    .unwrap();
    let report = cech_homology(&seq, 1, FieldCoeff::Rationals, 1).unwrap();
    assert_eq!(report.betti, vec![1, 1, 0]);
    assert_eq!(report.image_ranks[0], vec![1]);
    assert_eq!(report.image_ranks[1], vec![0]);
    assert!(!report.stabilized);
    assert_eq!(report.limit_dim, LimitDim::Bracket { lower: 0, upper: 1 });
}

#[test]
fn doubling_the_base_shifts_the_tower() {
    for model in MODELS {
        let tower = build_tower(model, 4, 4).unwrap();
        let doubled = build_tower(model, 8, 3).unwrap();
        for (n, stage) in doubled.sequence.spaces().iter().enumerate() {
            assert!(stage.is_homeomorphic(&tower.sequence.spaces()[n + 1]).is_some());
        }
    }
}

#[test]
fn nerve_examples() {
    assert_eq!(nerve::nerve(&CoverSpec::new(Model::Circle, 4).unwrap()).unwrap(), SimplicialComplex::polygon(4));
    assert_eq!(nerve::nerve(&CoverSpec::new(Model::Interval, 3).unwrap()).unwrap(), SimplicialComplex::path(3));
    assert!(matches!(CoverSpec::new(Model::Circle, 2), Err(Error::ResolutionTooSmall { .. })));
    let edge = face_poset(&SimplicialComplex::path(2));
    assert!(edge.is_t0() && edge.len() == 3);
    assert_eq!(face_poset(&SimplicialComplex::polygon(4)).len(), 8);
    assert!(face_poset(&SimplicialComplex::new(0, &[]).unwrap()).is_empty());
}

#[test]
fn doubled_examples() {
    let pc = DoubledSpace::punctured_circle();
    let classes = doubled::r_classes(&pc).unwrap();
    assert_eq!(classes.r1_pairs.len(), 1);
    assert_eq!(classes.classes.nontrivial_blocks().count(), 1);
    let h = homology(&doubled::reflection(&pc).unwrap(), Coefficients::Integers).unwrap();
    assert_eq!(h.betti, vec![1, 1]);
    let line = DoubledSpace::two_origin_line();
    let h = homology(&doubled::reflection(&line).unwrap(), Coefficients::Integers).unwrap();
    assert_eq!(h.betti, vec![1, 0]);
    let twice = DoubledSpace::new("twice", SimplicialComplex::polygon(4), vec![0, 2]).unwrap();
    assert_eq!(homology(&doubled::reflection(&twice).unwrap(), Coefficients::Integers).unwrap().betti, vec![1, 1]);
    let plain = DoubledSpace::new("plain", SimplicialComplex::polygon(4), vec![]).unwrap();
    assert_eq!(doubled::r_classes(&plain).unwrap().classes.nontrivial_blocks().count(), 0);
    let isolated = DoubledSpace::new("isolated", SimplicialComplex::discrete(2), vec![0]);
    assert!(matches!(isolated, Err(Error::IsolatedTwin(0))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn image_ranks_never_increase(model in 0usize..3, degree in 0usize..3, window in 1usize..3) {
        let model = MODELS[model];
        let tower = build_tower(model, 4, 3).unwrap();
        let report = cech_homology(&tower.sequence, degree, FieldCoeff::Rationals, window).unwrap();
        for (n, ranks) in report.image_ranks.iter().enumerate() {
            let mut prev = report.betti[n];
            for &r in ranks {
                prop_assert!(r <= prev);
                prev = r;
            }
        }
    }

    #[test]
    fn image_ranks_never_increase_on_random_sequences(seed in any::<u64>(), degree in 0usize..2) {
        let mut rng = kit::rng(seed);
        let spaces: Vec<FiniteSpace> = (0..4).map(|_| {
            let n = rand::Rng::gen_range(&mut rng, 1..=6);
            kit::random_poset(&mut rng, n)
        }).collect();
        let bonds = (0..3).map(|n| kit::random_monotone_map(&mut rng, &spaces[n + 1], &spaces[n]).unwrap()).collect();
        let seq = InverseSequence::new(spaces, bonds).unwrap();
        let report = cech_homology(&seq, degree, FieldCoeff::Rationals, 2).unwrap();
        for (n, ranks) in report.image_ranks.iter().enumerate() {
            prop_assert!(ranks.windows(2).all(|w| w[1] <= w[0]));
            prop_assert!(ranks.first().is_none_or(|&r| r <= report.betti[n]));
        }
    }

    #[test]
    fn relabelling_keeps_the_report(model in 0usize..3, seed in any::<u64>()) {
        let tower = build_tower(MODELS[model], 4, 3).unwrap();
        let mut rng = kit::rng(seed);
        let perms: Vec<Vec<usize>> =
            tower.sequence.spaces().iter().map(|s| kit::random_permutation(&mut rng, s.len())).collect();
        let moved = tower.sequence.permuted(&perms).unwrap();
        for degree in 0..2 {
            let a = cech_homology(&tower.sequence, degree, FieldCoeff::Rationals, 2).unwrap();
            let b = cech_homology(&moved, degree, FieldCoeff::Rationals, 2).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn doubled_reflection_ignores_which_vertices_are_doubled(n in 3usize..9, mask in any::<u16>()) {
        let base = SimplicialComplex::polygon(n);
        let twins: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let d = DoubledSpace::new("d", base.clone(), twins.clone()).unwrap();
        prop_assert_eq!(doubled::reflection(&d).unwrap(), base);
        let classes = doubled::r_classes(&d).unwrap();
        let sizes: Vec<usize> = classes.classes.nontrivial_blocks().map(|b| b.len()).collect();
        prop_assert_eq!(sizes, vec![2; twins.len()]);
    }
}
