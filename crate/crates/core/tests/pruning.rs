use facdio_core::instance::{EquationInstance, InstanceFlags, Rhs};
use facdio_core::poly::{BinaryForm, IntegerPolynomial};
use facdio_core::search::{solve_instance, SearchOptions};
use proptest::prelude::*;

const Q_CHOICES: &[&[i64]] = &[&[0, 1], &[0, 0, 1], &[0, 1, 1], &[0, -1, 1], &[0, 3, 0, 1]];
const FORMS: &[&[i64]] = &[
    &[1, 0, 1],
    &[1, 1, 1],
    &[1, 0, 3],
    &[1, 0, 0, 2],
    &[1, 0, 0, 0, 1],
];

fn rhs_strategy() -> impl Strategy<Value = Rhs> {
    prop_oneof![
        (0..FORMS.len()).prop_map(|i| Rhs::BinaryForm {
            form: BinaryForm::from_i64(FORMS[i]).unwrap()
        }),
        Just(Rhs::Univariate {
            poly: IntegerPolynomial::from_i64(&[1, 0, 1])
        }),
        (3u32..=5).prop_map(|d| Rhs::MonomialPower { d }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pruning_never_changes_solutions(
        picks in prop::collection::vec((0..Q_CHOICES.len(), 1u64..=4), 1..=2),
        rhs in rhs_strategy(),
        n_bound in 3u64..=9,
    ) {
        let inst = EquationInstance::new(
            picks.iter().map(|&(i, _)| IntegerPolynomial::from_i64(Q_CHOICES[i])).collect(),
            picks.iter().map(|&(_, a)| a).collect(),
            rhs,
            InstanceFlags::default(),
        )
        .unwrap();
        let run = |prune| {
            solve_instance(&inst, SearchOptions { n_bound, xy_box: Some(25), prune }).unwrap()
        };
        let with = run(true);
        let without = run(false);
        prop_assert_eq!(&with.solutions, &without.solutions);
        prop_assert_eq!(with.tuples_examined + with.tuples_pruned, without.tuples_examined);
    }
}
