use htcraig::calculus::{prove, SplitSequent};
use htcraig::normalize::{
    body_normalize, is_body_normalized, push_negations, simplify, to_cnf, to_nh_nnf,
};
use htcraig::semantics::truth_table;
use htcraig::{craig_interpolant, entails, equivalent, eval, parse, strengthen, Formula, Status};
use proptest::prelude::*;

fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        4 => prop::sample::select(vec!["p", "q", "r", "x_1"]).prop_map(Formula::atom),
        1 => Just(Formula::Verum),
        1 => Just(Formula::Falsum),
    ]
}

fn ht() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
        ]
    })
}

fn nh_nnf() -> impl Strategy<Value = Formula> {
    let literal = prop::sample::select(vec!["p", "q", "r"]).prop_flat_map(|a| {
        let x = Formula::atom(a);
        prop_oneof![
            Just(x.clone()),
            Just(Formula::not(x.clone())),
            Just(Formula::not(Formula::not(x.clone()))),
            Just(Formula::nh(x)),
            Just(Formula::Verum),
            Just(Formula::Falsum),
        ]
    });
    literal.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::or(a, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printing_round_trips(f in ht()) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn nh_nnf_round_trips(f in nh_nnf()) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn truth_table_matches_eval(f in ht()) {
        for (v, value) in truth_table(&f).unwrap() {
            prop_assert_eq!(eval(&f, &v).unwrap(), value);
        }
    }

    #[test]
    fn entailment_is_reflexive(f in ht()) {
        prop_assert!(entails(&f, &f).holds);
    }

    #[test]
    fn normal_forms_are_equivalent(f in ht()) {
        let pushed = push_negations(&f).unwrap();
        prop_assert!(equivalent(&f, &pushed).holds);
        let body = body_normalize(&f).unwrap();
        prop_assert!(is_body_normalized(&body));
        prop_assert!(equivalent(&f, &body).holds);
        prop_assert!(equivalent(&f, &simplify(&f)).holds);
    }

    #[test]
    fn clause_form_is_equivalent(f in nh_nnf()) {
        let clauses = to_cnf(&f).unwrap();
        let back = Formula::conj(clauses.iter().map(|c| c.to_formula()));
        prop_assert!(equivalent(&f, &back).holds);
        prop_assert_eq!(to_nh_nnf(&f).unwrap().is_nh_nnf(), true);
    }

    #[test]
    fn strengthening_entails_its_input(f in nh_nnf()) {
        let c = strengthen(&f).unwrap();
        prop_assert!(c.is_ht());
        prop_assert!(entails(&c, &f).holds);
    }

    #[test]
    fn prover_agrees_with_oracle(a in ht(), b in ht()) {
        let root = SplitSequent::root(a.clone(), body_normalize(&b).unwrap());
        let outcome = prove(&root).unwrap();
        prop_assert_eq!(outcome.is_proof(), entails(&a, &b).holds);
    }

    #[test]
    fn interpolants_are_verified(a in ht(), b in ht()) {
        let r = craig_interpolant(&a, &b).unwrap();
        match r.status {
            Status::Entails => prop_assert!(r.verification.unwrap().all()),
            Status::NotEntails => {
                let v = r.countermodel.unwrap();
                prop_assert!(eval(&a, &v).unwrap() > eval(&b, &v).unwrap());
            }
        }
    }

    #[test]
    fn interpolation_is_deterministic(a in ht(), b in ht()) {
        prop_assert_eq!(craig_interpolant(&a, &b).unwrap(), craig_interpolant(&a, &b).unwrap());
    }
}
