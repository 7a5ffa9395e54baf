use gkab::classifier::{
    ff_isomorphic, ff_type, possible_split_groups, types_isomorphic, FFInput, GKabType,
};
use gkab::extension::{
    canonical_b_truncation, enumerate_extensions, TruncationSpec, DEFAULT_BOUND,
};
use gkab::finabelian::{dual_finite, p_groups_of_order};
use gkab::quadfields::{class_group, compose, Discriminant};
use gkab::FiniteAbelianGroup;
use proptest::prelude::*;

fn group() -> impl Strategy<Value = FiniteAbelianGroup> {
    prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 5, 8, 9]), 0..4)
        .prop_map(|orders| FiniteAbelianGroup::from_cyclic_orders(&orders).unwrap())
}

fn truncation() -> impl Strategy<Value = TruncationSpec> {
    (
        prop::sample::select(vec![2u64, 3]),
        prop::collection::vec(1u32..3, 0..2),
        prop::collection::btree_set(1u32..4, 1..3),
    )
        .prop_filter_map("within the bound", |(l, a, c)| {
            let sub = FiniteAbelianGroup::p_group(l, &a).unwrap();
            let spec = TruncationSpec::new(l, sub, c.into_iter().collect(), 0).unwrap();
            (l.pow(spec.total_exponent()) <= DEFAULT_BOUND).then_some(spec)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn type_isomorphism_is_an_equivalence(a in group(), b in group(), c in group()) {
        let (a, b, c) = (GKabType { split_group: a }, GKabType { split_group: b }, GKabType { split_group: c });
        prop_assert!(types_isomorphic(&a, &a));
        prop_assert_eq!(types_isomorphic(&a, &b), types_isomorphic(&b, &a));
        if types_isomorphic(&a, &b) && types_isomorphic(&b, &c) {
            prop_assert!(types_isomorphic(&a, &c));
        }
    }

    #[test]
    fn p_part_of_the_class_group_is_ignored(
        p in prop::sample::select(vec![2u64, 3, 5]),
        n in 1u64..40,
        cl in group(),
        extra in prop::collection::vec(1u32..4, 1..3),
    ) {
        let input = |g: FiniteAbelianGroup| FFInput { characteristic: p, constant_exponent: n, class_group_deg0: g };
        let base = ff_type(&input(cl.clone())).unwrap();
        let bumped = ff_type(&input(cl.direct_sum(&FiniteAbelianGroup::p_group(p, &extra).unwrap()))).unwrap();
        prop_assert!(ff_isomorphic(&base, &bumped));
        prop_assert_eq!(base.nonp_class.p_part(p), FiniteAbelianGroup::trivial());
    }

    #[test]
    fn split_groups_embed(cl in group()) {
        for s in possible_split_groups(&cl).unwrap() {
            prop_assert!(s.embeds_in(&cl));
            prop_assert!(cl.order() % s.order() == 0u32.into());
        }
    }

    #[test]
    fn extension_invariants(spec in truncation()) {
        let report = enumerate_extensions(&spec, DEFAULT_BOUND).unwrap();
        let counts: Vec<usize> = report.level_counts.values().copied().collect();
        prop_assert!(counts.windows(2).all(|w| w[0] >= w[1]));
        let canonical = canonical_b_truncation(&spec).unwrap();
        let sat = report.saturation().unwrap();
        for m in 0..=sat {
            prop_assert!(report.classes_at(m).iter().any(|c| c.group == canonical), "missing at m = {}", m);
        }
        for c in report.classes_at(0) {
            prop_assert_eq!(dual_finite(&c.group), c.group.clone());
        }
        if spec.sub.is_trivial() {
            for m in 0..=*spec.quotient_exponents.last().unwrap() {
                let at_m: Vec<_> = report.classes_at(m).into_iter().map(|c| c.group.clone()).collect();
                prop_assert_eq!(at_m, vec![spec.quotient_group()]);
            }
        }
    }

    #[test]
    fn composition_respects_the_class_group(d in 3i64..2000, i in 0usize..64, j in 0usize..64) {
        let Ok(disc) = Discriminant::new(-d) else { return Ok(()) };
        let cg = class_group(&disc);
        let h = cg.class_number();
        let (f, g) = (&cg.representatives[i % h], &cg.representatives[j % h]);
        let fg = compose(f, g).unwrap();
        prop_assert!(fg.is_reduced());
        prop_assert_eq!(fg.discriminant(), disc.value().clone());
        prop_assert!(cg.representatives.contains(&fg));
        prop_assert_eq!(compose(&fg, &g.inverse()).unwrap(), f.clone());
    }
}

#[test]
fn candidate_groups_are_partitions() {
    let counts: Vec<usize> = (0..8)
        .map(|e| p_groups_of_order(2, e).unwrap().len())
        .collect();
    assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
}
