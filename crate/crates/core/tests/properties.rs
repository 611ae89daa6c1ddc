mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn symmetries_preserve_orthogonality_and_distance((g, syms) in tuple_with_symmetries()) {
        symmetry_invariance(&g, &syms)?;
    }

    #[test]
    fn canonical_class_is_orbit_invariant((g, syms) in tuple_with_symmetries()) {
        orbit_constancy(&g, &syms)?;
    }

    #[test]
    fn tail_biting_commutes_with_duality(g in prop_oneof![noncatastrophic_tuple(), self_orthogonal()], extra in 0usize..=5) {
        duality_commutes(&g, extra)?;
    }

    #[test]
    fn tail_biting_keeps_self_orthogonality(
        (g, syms) in self_orthogonal().prop_flat_map(|g| {
            let (f, n) = (g.field(), g.n());
            (Just(g), proptest::collection::vec(symmetry(f, n), 0..=3))
        }),
        extra in 0usize..=5,
    ) {
        tb_inherits_self_orthogonality(&g, &syms, extra)?;
    }

    #[test]
    fn syndromes_are_linear((g, e1, e2, a) in additivity_case()) {
        syndrome_additivity(&g, &e1, &e2, a)?;
    }
}
