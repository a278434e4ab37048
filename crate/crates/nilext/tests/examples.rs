use nilext::catalog::catalog_lookup;
use nilext::extensions::adapted_basis;
use nilext::levi::{
    build_frame, enumerate_irrep_assignments, weight_screen, Factor, IrrepAssignment, WeightLimits,
    WeightOutcome,
};
use nilext::scalar::Scalar;
use nilext::series::{
    associated_graded, centralizer, characteristic_series, relative_ideal, SeriesKind,
};
use nilext::subspace::{bracket_subspaces, Subspace};
use nilext::table::StructureTable;

fn table(id: &str) -> StructureTable<Scalar> {
    catalog_lookup(id).unwrap().table
}

fn limits() -> WeightLimits {
    WeightLimits {
        max_distributions: 100_000,
        groebner_budget: 4_000,
    }
}

fn assignment(per_layer: &[&[usize]]) -> IrrepAssignment {
    IrrepAssignment {
        factor: Factor::Sl2,
        per_layer: per_layer.iter().map(|l| l.to_vec()).collect(),
    }
}

#[test]
fn bracket_of_n_with_itself_is_n2() {
    let t = table("A_4_1");
    let n = Subspace::<Scalar>::full(4);
    let n2 = bracket_subspaces(&t, &n, &n).unwrap();
    assert_eq!(n2, Subspace::coordinate(4, &[1, 2]));
    let n3 = bracket_subspaces(&t, &n, &n2).unwrap();
    assert_eq!(n3, Subspace::coordinate(4, &[1]));
}

#[test]
fn relative_ideal_above_the_cube() {
    let t = table("A_5_3");
    let lower = characteristic_series(&t, SeriesKind::LowerCentral);
    let n3 = &lower.terms[2];
    let r = relative_ideal(&t, &Subspace::full(5), n3);
    assert_eq!(r, Subspace::coordinate(5, &[1, 2, 3]));
}

#[test]
fn centralizer_of_n2() {
    let t = table("A_6_13");
    let n2 = &characteristic_series(&t, SeriesKind::LowerCentral).terms[1];
    assert_eq!(centralizer(&t, n2), Subspace::coordinate(6, &[3, 4, 5, 6]));
}

#[test]
fn graded_and_adapted_layers_agree() {
    for (id, layers) in [("A_5_3", vec![2, 1, 2]), ("A_6_18", vec![2, 1, 2, 1])] {
        let t = table(id);
        assert_eq!(associated_graded(&t).unwrap().layer_dims, layers, "{id}");
        let basis = adapted_basis(&t).unwrap();
        assert_eq!(basis.layer_count(), layers.len(), "{id}");
        for (k, &d) in layers.iter().enumerate() {
            assert_eq!(basis.layer_indices(k + 1).len(), d, "{id} layer {}", k + 1);
        }
    }
}

#[test]
fn enumeration_contains_the_natural_assignment() {
    let g = associated_graded(&table("A_5_3")).unwrap();
    let found = enumerate_irrep_assignments(&g, Factor::Sl2);
    assert!(found.contains(&assignment(&[&[2], &[1], &[2]])));
}

#[test]
fn weight_screen_accepts_the_natural_action() {
    let frame = build_frame(&table("A_5_3"));
    let outcome = weight_screen(&frame, &assignment(&[&[2], &[1], &[2]]), limits());
    assert!(
        matches!(outcome, WeightOutcome::Consistent { .. }),
        "{outcome:?}"
    );
}

#[test]
fn weight_screen_rejects_incompatible_algebras() {
    for id in ["A_6_8", "A_6_14(1)"] {
        let t = table(id);
        let frame = build_frame(&t);
        let g = associated_graded(&t).unwrap();
        for a in enumerate_irrep_assignments(&g, Factor::Sl2) {
            let outcome = weight_screen(&frame, &a, limits());
            assert!(
                matches!(outcome, WeightOutcome::Contradiction { .. }),
                "{id} {}: {outcome:?}",
                a.render()
            );
        }
    }
}
