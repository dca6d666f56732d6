mod common;

use proptest::prelude::*;
use qc2_core::{CodeVector, Qc2Code};

use common::{arb_code, has_single_generator, random_vector};


proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_representation_independent(
        code in arb_code(&[2, 3, 4, 5], 1..=10),
        seed in prop::collection::vec(any::<u32>(), 4),
    ) {
        let f = code.field().clone();
        let m = code.m();
        prop_assert_eq!(&Qc2Code::canonicalize(&f, m, &code.basis()).unwrap(), &code);
        // Adding members of the code does not change it.
        let extra = code.basis().iter().zip(&seed).fold(CodeVector::zero(&f, m), |acc, (v, &s)| {
            acc.add(&v.scale(&common::poly_from(&f, &[s, s / 7, s / 49])))
        });
        let mut gens = vec![code.g1(), code.g2(), extra];
        gens.reverse();
        prop_assert_eq!(&Qc2Code::canonicalize(&f, m, &gens).unwrap(), &code);
        let triple = Qc2Code::from_triple(&f, m, code.g11().clone(), code.g12().clone(), code.g22().clone());
        prop_assert_eq!(&triple.unwrap(), &code);
        let v = random_vector(&f, m, &seed);
        let grown = code.sum(&Qc2Code::canonicalize(&f, m, std::slice::from_ref(&v)).unwrap()).unwrap();
        prop_assert!(grown.contains(&v).unwrap());
        prop_assert!(code.is_subcode_of(&grown).unwrap());
    }

    #[test]
    fn dimension_is_rank(code in arb_code(&[2, 3, 4, 5, 9], 1..=12)) {
        prop_assert_eq!(code.dimension(), code.rank_oracle());
        prop_assert_eq!(
            code.dimension(),
            2 * code.m() - code.g11().deg0() - code.g22().deg0()
        );
    }

    #[test]
    fn one_generator_matches_search(code in arb_code(&[2, 3, 4], 1..=8)) {
        let q = code.field().order() as u64;
        prop_assume!(q.checked_pow(code.dimension() as u32).is_some_and(|n| n <= 1 << 12));
        let verdict = code.is_one_generator();
        let found = has_single_generator(&code);
        if !verdict.holds {
            prop_assert!(!found, "search found a generator for {:?}", code);
        } else if verdict.sufficiency_proven {
            prop_assert!(found, "no generator found for {:?}", code);
            let g = code.single_generator().unwrap();
            prop_assert_eq!(&Qc2Code::canonicalize(code.field(), code.m(), &[g]).unwrap(), &code);
        }
    }
}

#[test]
fn one_generator_in_repeated_root_case_is_decided_by_search() {
    // q = 2, m = 2: x^2 - 1 = (x + 1)^2 and the sufficiency direction is open.
    let f = common::field(2);
    for code in [
        Qc2Code::canonicalize(&f, 2, &[CodeVector::new(2, common::poly_from(&f, &[1]), common::poly_from(&f, &[1, 1]))]).unwrap(),
        Qc2Code::full(&f, 2),
    ] {
        let verdict = code.is_one_generator();
        assert!(!verdict.holds || !verdict.sufficiency_proven);
        if !verdict.holds {
            assert!(!has_single_generator(&code));
        }
    }
}
