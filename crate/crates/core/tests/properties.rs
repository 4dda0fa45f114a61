use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use conway_trees::conway::{burau_matrix, conway, skein_check, BraidWord};
use conway_trees::diagrams::{parse_diagram, random_diagram, weight_oracle, weight_reduced, write_diagram, ComponentMix};
use conway_trees::exactalg::{series_renormalize, Monomial, Polynomial, VarId};
use conway_trees::kirchhoff::prufer_decode;
use conway_trees::milnor::{parse_xi, phi, random_labeled_tree, write_xi, LabeledTree, W0Subspace, XiElement};
use conway_trees::pfaffian_tree::{epsilon, is_tree3, is_tree3_by_cycle, ThreeGraph};

fn poly() -> impl Strategy<Value = Polynomial> {
    let var = (1u32..=4, 1u32..=4, 1u32..=4).prop_filter_map("distinct", |(i, j, k)| {
        let mut v = [i, j, k];
        v.sort_unstable();
        (v[0] < v[1] && v[1] < v[2]).then(|| VarId::y(v[0], v[1], v[2]))
    });
    prop::collection::vec((prop::collection::vec(var, 0..3), -4i64..=4), 0..5).prop_map(|terms| {
        let mut p = Polynomial::zero();
        for (vars, c) in terms {
            p.add_term(Monomial::from_vars(vars), BigInt::from(c));
        }
        p
    })
}

fn braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(|k| {
        let letter = (1..k as i32, any::<bool>()).prop_map(|(g, pos)| if pos { g } else { -g });
        prop::collection::vec(letter, 1..9).prop_map(move |l| BraidWord::new(k, l).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Polynomial>().unwrap(), a);
    }

    #[test]
    fn prufer_sequences_give_spanning_trees(seq in prop::collection::vec(1u32..=6, 4)) {
        prop_assert!(prufer_decode(6, &seq).unwrap().is_spanning_tree());
    }

    #[test]
    fn three_graph_tree_tests_agree(edges in prop::collection::vec((1u32..=5, 1u32..=5, 1u32..=5), 2)) {
        let edges: Vec<[u32; 3]> = edges.into_iter().map(|(i, j, k)| [i, j, k]).collect();
        prop_assume!(edges.iter().all(|e| e[0] != e[1] && e[1] != e[2] && e[0] != e[2]));
        let g = ThreeGraph::new(5, edges.clone()).unwrap();
        prop_assert_eq!(is_tree3(&g), is_tree3_by_cycle(&g));
        if is_tree3(&g) {
            let swapped: Vec<[u32; 3]> = edges.iter().enumerate().map(|(i, e)| if i == 0 { [e[1], e[0], e[2]] } else { *e }).collect();
            prop_assert_eq!(epsilon(&ThreeGraph::new(5, swapped).unwrap()), -epsilon(&g));
        }
    }

    #[test]
    fn diagram_text_round_trip(seed in any::<u64>(), m in 1usize..=4) {
        let d = random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), m, 5, &ComponentMix::default());
        let again = parse_diagram(&write_diagram(&d)).unwrap();
        prop_assert_eq!(again.canonical_key(), d.canonical_key());
        prop_assert_eq!(weight_reduced(&again), weight_oracle(&d));
    }

    #[test]
    fn tree_text_round_trip(seed in any::<u64>(), degree in 1usize..=6, m in 2u32..=5) {
        let t = random_labeled_tree(&mut ChaCha8Rng::seed_from_u64(seed), degree, m);
        prop_assert_eq!(t.to_string().parse::<LabeledTree>().unwrap(), t.clone());
        if let Some((c, _)) = t.canonical() {
            prop_assert_eq!(c.canonical().map(|p| p.1), Some(1));
        }
    }

    #[test]
    fn phi_is_linear_mod_w0(seed in any::<u64>(), a in -3i64..=3, b in -3i64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, t) = (random_labeled_tree(&mut rng, 4, 4), random_labeled_tree(&mut rng, 4, 4));
        let (qa, qb) = (BigRational::from_integer(a.into()), BigRational::from_integer(b.into()));
        let mut x = XiElement::new(4, 4);
        x.add(&s, qa.clone()).unwrap();
        x.add(&t, qb.clone()).unwrap();
        let mut expect = phi(&XiElement::single(&s, 4).unwrap()).unwrap().scale(&qa);
        expect.add_scaled(&phi(&XiElement::single(&t, 4).unwrap()).unwrap(), &qb).unwrap();
        prop_assert!(W0Subspace::new(4).equivalent(&phi(&x).unwrap(), &expect).unwrap());
        prop_assert_eq!(parse_xi(&write_xi(&x), Some(4)).unwrap(), x);
    }

    #[test]
    fn conway_is_a_conjugation_invariant(w in braid(), g in braid(), pos in any::<prop::sample::Index>()) {
        prop_assume!(w.strands() == g.strands());
        let conj = g.concat(&w).unwrap().concat(&g.inverse()).unwrap();
        prop_assert_eq!(conway(&conj).unwrap(), conway(&w).unwrap());
        prop_assert!(skein_check(&w, pos.index(w.letters().len())).unwrap());
        prop_assert_eq!(w.to_string().parse::<BraidWord>().unwrap(), w.clone());
        let both = w.concat(&g).unwrap();
        prop_assert_eq!(burau_matrix(&both), burau_matrix(&w).mul(&burau_matrix(&g)));
    }

    #[test]
    fn renormalization_keeps_lowest_term(low in 0usize..6, lead in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]), tail in prop::collection::vec(-5i64..=5, 0..4)) {
        let mut c = vec![BigRational::from_integer(0.into()); low];
        c.push(BigRational::from_integer(lead.into()));
        c.extend(tail.into_iter().map(|v| BigRational::from_integer(v.into())));
        prop_assert_eq!(series_renormalize(&c, 8).lowest(), Some((low, BigRational::from_integer(lead.into()))));
    }
}
