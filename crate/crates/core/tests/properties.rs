use proptest::prelude::*;

use ncloop::algebra::{alg_mul, trace_project, word_compose, AlgElem};
use ncloop::bracket::kappa_bracket;
use ncloop::derivation::fox_derivation;
use ncloop::divergence::lie_der;
use ncloop::forms::{differential, reconstruct};
use ncloop::parse::parse_path;
use ncloop::random::{random_composable_pair, random_double_derivation, random_word, random_word_from, rng};
use ncloop::surface::{make_surface, Presentation};
use ncloop::tensor::{flip, inner_act, outer_act, tensor};
use ncloop::word::Word;

fn pres() -> Presentation {
    make_surface(1, 2).unwrap().into()
}

fn elem(w: Word) -> AlgElem {
    AlgElem::basis(w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        let p = pres();
        let mut r = rng(seed);
        let (a, b) = random_composable_pair(&mut r, &p, 4);
        let c = random_word_from(&mut r, &p, b.target(), 4);
        let (a, b, c) = (elem(a), elem(b), elem(c));
        prop_assert_eq!(alg_mul(&alg_mul(&a, &b), &c), alg_mul(&a, &alg_mul(&b, &c)));
    }

    #[test]
    fn trace_is_cyclic(seed in any::<u64>()) {
        let p = pres();
        let mut r = rng(seed);
        let (x, y) = loop {
            let (x, y) = random_composable_pair(&mut r, &p, 5);
            if y.target() == x.source() {
                break (x, y);
            }
        };
        prop_assert_eq!(trace_project(&word_compose(&x, &y)), trace_project(&word_compose(&y, &x)));
    }

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let p = pres();
        let w = random_word(&mut rng(seed), &p, 8);
        prop_assert_eq!(parse_path(&w.to_string(), &p).unwrap(), w);
    }

    #[test]
    fn flip_is_an_involution(seed in any::<u64>()) {
        let p = pres();
        let mut r = rng(seed);
        let t = tensor(&elem(random_word(&mut r, &p, 4)), &elem(random_word(&mut r, &p, 4)))
            + tensor(&elem(random_word(&mut r, &p, 4)), &elem(random_word(&mut r, &p, 4)));
        prop_assert_eq!(flip(&flip(&t)), t);
    }

    #[test]
    fn outer_and_inner_actions_commute(seed in any::<u64>()) {
        let p = pres();
        let mut r = rng(seed);
        let (u, v) = (random_word(&mut r, &p, 3), random_word(&mut r, &p, 3));
        let t = tensor(&elem(u.clone()), &elem(v.clone()));
        let x = elem(random_word_from(&mut r, &p, 0, 3));
        let y = elem(random_word(&mut r, &p, 3));
        let a = elem(random_word(&mut r, &p, 3));
        let b = elem(random_word(&mut r, &p, 3));
        prop_assert_eq!(
            outer_act(&x, &inner_act(&a, &t, &b), &y),
            inner_act(&a, &outer_act(&x, &t, &y), &b)
        );
    }

    #[test]
    fn double_derivation_is_outer_leibniz(seed in any::<u64>()) {
        let p = pres();
        let mut r = rng(seed);
        let theta = random_double_derivation(&mut r, &p, 2);
        let (a, b) = random_composable_pair(&mut r, &p, 4);
        let (ea, eb) = (elem(a), elem(b));
        let lhs = theta.eval(&alg_mul(&ea, &eb));
        let unit_a = elem(Word::identity(ea.keys().next().unwrap().source()));
        let unit_b = elem(Word::identity(eb.keys().next().unwrap().target()));
        let rhs = outer_act(&unit_a, &theta.eval(&ea), &eb) + outer_act(&ea, &theta.eval(&eb), &unit_b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kappa_is_outer_leibniz_in_second_slot(seed in any::<u64>()) {
        let sig = make_surface(1, 2).unwrap();
        let p: Presentation = sig.into();
        let k = kappa_bracket(&sig);
        let mut r = rng(seed);
        let x = random_word(&mut r, &p, 3);
        let (a, b) = random_composable_pair(&mut r, &p, 3);
        let ab = a.compose(&b).unwrap();
        let lhs = k.eval_words(&x, &ab);
        let rhs = outer_act(&elem(Word::identity(a.source())), &k.eval_words(&x, &a), &elem(b.clone()))
            + outer_act(&elem(a.clone()), &k.eval_words(&x, &b), &elem(Word::identity(b.target())));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn differentials_reconstruct_from_fox_coefficients(seed in any::<u64>()) {
        let p = pres();
        let w = random_word(&mut rng(seed), &p, 6);
        let omega = differential(&elem(w));
        prop_assert_eq!(reconstruct(&omega, &p.generators()), omega);
    }

    #[test]
    fn lie_derivative_commutes_with_d(seed in any::<u64>(), gen in 0usize..6) {
        let p = pres();
        let f = fox_derivation(p.generators()[gen]).mult();
        let a = elem(random_word(&mut rng(seed), &p, 5));
        prop_assert_eq!(lie_der(&f, &differential(&a)), differential(&f.eval(&a)));
    }
}
