use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::Rng;

use posgame::games::{
    hex_winning_sets, solve_short, solve_unvalidated, Board, GameInstance, Graph, Player, Position, SolverConfig, Variant,
};
use posgame::logic::{classify, estimate_cost, evaluate, is_nnf, parse_formula, to_nnf, Formula, FragmentTag, Matrix, Quantifier};
use posgame::qelim::{eliminate_rightmost_universal, to_sigma1};
use posgame::reductions::hex_preprocess;
use posgame::verify::brute_force_evaluate;
use posgame::verify::corpus::{
    connect_corpus, hex_corpus, hypergraph_corpus, random_forall_neq_formula, random_general_formula, random_structure, rng,
    HypergraphBounds,
};

const CASES: u32 = 1000;
const EVAL_CEILING: f64 = 1e9;

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0x5eed), failure_persistence: None, ..Config::default() }
}

proptest! {
    #![proptest_config(config(CASES))]

    #[test]
    fn printed_formulas_reparse(seed in any::<u64>()) {
        let f = random_general_formula(&mut rng(seed), 4);
        prop_assert_eq!(parse_formula(&f.to_file_text()).unwrap(), f);
    }

    #[test]
    fn nnf_preserves_truth(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_general_formula(&mut r, 4);
        let size = r.gen_range(1..=4);
        let s = random_structure(&mut r, size);
        let g = to_nnf(&f);
        prop_assert!(is_nnf(g.matrix()));
        prop_assert_eq!(evaluate(&s, &f).unwrap(), evaluate(&s, &g).unwrap());
    }

    #[test]
    fn evaluator_matches_assignment_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_general_formula(&mut r, 4);
        let size = r.gen_range(1..=4);
        let s = random_structure(&mut r, size);
        prop_assert_eq!(evaluate(&s, &f).unwrap(), brute_force_evaluate(&s, &f));
    }

    #[test]
    fn elimination_preserves_truth(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_forall_neq_formula(&mut r, 4);
        let size = r.gen_range(1..=4);
        let s = random_structure(&mut r, size);
        let (g, _) = to_sigma1(&f).unwrap();
        prop_assert_eq!(classify(&g).tag, FragmentTag::Sigma1);
        prop_assume!(estimate_cost(&s, &g).unwrap() <= EVAL_CEILING);
        prop_assert_eq!(brute_force_evaluate(&s, &f), evaluate(&s, &g).unwrap());
    }
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn existential_formulas_are_sigma1(seed in any::<u64>()) {
        let f = random_general_formula(&mut rng(seed), 4);
        let prefix: Vec<(Quantifier, String)> = f.prefix().iter().map(|(_, v)| (Quantifier::Exists, v.clone())).collect();
        let g = Formula::new(prefix, f.matrix().clone()).unwrap();
        prop_assert_eq!(classify(&g).tag, FragmentTag::Sigma1);
    }

    #[test]
    fn universal_in_relation_demotes(seed in any::<u64>()) {
        let f = random_forall_neq_formula(&mut rng(seed), 4);
        prop_assume!(classify(&f).tag == FragmentTag::ForallNeqFO);
        let u = f.prefix().iter().find(|(q, _)| *q == Quantifier::Forall).unwrap().1.clone();
        let g = Formula::new(f.prefix().to_vec(), Matrix::all(vec![f.matrix().clone(), Matrix::rel("P", &[u.as_str()])])).unwrap();
        prop_assert_eq!(classify(&g).tag, FragmentTag::GeneralFO);
    }

    /// One round: matrix size ≤ (k+1)(m+k) + 4k² for prefix length k, matrix size m.
    #[test]
    fn one_round_size_law(seed in any::<u64>()) {
        let f = to_nnf(&random_forall_neq_formula(&mut rng(seed), 4));
        prop_assume!(f.universal_count() > 0);
        let (k, m) = (f.prefix().len(), f.matrix().size());
        let g = eliminate_rightmost_universal(&f).unwrap();
        prop_assert!(g.matrix().size() <= (k + 1) * (m + k) + 4 * k * k, "k={} m={} out={}", k, m, g.matrix().size());
    }

    #[test]
    fn elimination_is_deterministic(seed in any::<u64>()) {
        let f = random_forall_neq_formula(&mut rng(seed), 4);
        prop_assert_eq!(to_sigma1(&f).unwrap().0.to_file_text(), to_sigma1(&f).unwrap().0.to_file_text());
    }
}

fn with_budget(g: &GameInstance, budget: usize) -> GameInstance {
    GameInstance { budget, ..g.clone() }
}

#[test]
fn answers_are_monotone_in_the_budget() {
    let mut corpus = Vec::new();
    for v in [Variant::MM, Variant::MB, Variant::EA] {
        corpus.extend(hypergraph_corpus(v, 5, 80, &HypergraphBounds::new(6, 4, 3, 2)));
    }
    corpus.extend(hex_corpus(5, 80, 6, &[1, 2], 0.1));
    corpus.extend(connect_corpus(5, 10, 1));
    for inst in &corpus {
        let g = &inst.item;
        if solve_short(g).unwrap().first_player_wins {
            let more = with_budget(g, g.budget + 1);
            if more.validate().is_ok() {
                assert!(solve_short(&more).unwrap().first_player_wins, "{}", inst.id);
            }
        }
    }
}

#[test]
fn hex_terminal_claims_are_irrelevant() {
    for inst in hex_corpus(9, 150, 6, &[1, 2, 3], 0.1) {
        let g = &inst.item;
        let Board::Hex { s, t, .. } = &g.board else { unreachable!() };
        let want = solve_short(g).unwrap().first_player_wins;
        for terminal in [s, t] {
            for player in [Player::P1, Player::P2] {
                let mut h = g.clone();
                match player {
                    Player::P1 => h.position.p1.insert(terminal.clone()),
                    Player::P2 => h.position.p2.insert(terminal.clone()),
                };
                let got = solve_unvalidated(&h, SolverConfig::default()).unwrap().first_player_wins;
                assert_eq!(got, want, "{} with {terminal} claimed by {player:?}", inst.id);
            }
        }
    }
}

#[test]
fn hex_preprocessing_preserves_the_answer() {
    let mut checked = 0;
    for inst in hex_corpus(13, 300, 7, &[1, 2], 0.2) {
        let g = &inst.item;
        if g.position.p1.is_empty() && g.position.p2.is_empty() {
            continue;
        }
        let Board::Hex { graph, s, t } = &g.board else { unreachable!() };
        let pre: Graph = hex_preprocess(graph, &g.position.p1, &g.position.p2, &mut Vec::new());
        let reduced = GameInstance::new(
            Variant::HEX,
            Board::Hex { graph: pre, s: s.clone(), t: t.clone() },
            Position::default(),
            g.budget,
        )
        .unwrap();
        assert_eq!(solve_short(g).unwrap().first_player_wins, solve_short(&reduced).unwrap().first_player_wins, "{}", inst.id);
        checked += 1;
    }
    assert!(checked >= 100, "only {checked} instances with claims");
}

/// A Maker-Breaker win that fails in Maker-Maker on the same board can only
/// fail because player 2 completes a set first, so some set must still be
/// completable by player 2 within ℓ − 1 moves.
#[test]
fn maker_breaker_wins_survive_in_maker_maker_unless_p2_completes() {
    let mut contrasts = 0;
    for inst in hypergraph_corpus(Variant::MB, 17, 300, &HypergraphBounds::new(6, 4, 3, 3)) {
        let mb = &inst.item;
        let mm = GameInstance { variant: Variant::MM, ..mb.clone() };
        if mm.validate().is_err() || !solve_short(mb).unwrap().first_player_wins || solve_short(&mm).unwrap().first_player_wins {
            continue;
        }
        contrasts += 1;
        let h = mb.hypergraph().unwrap();
        let p2_can_complete = h.edges().iter().any(|(_, e)| {
            e.is_disjoint(&mb.position.p1) && e.difference(&mb.position.p2).count() < mb.budget
        });
        assert!(p2_can_complete, "{}", inst.id);
    }
    assert!(contrasts > 0);
}

#[test]
fn hex_winning_sets_are_interiors_of_paths() {
    let g = Graph::new(["s", "a", "b", "t"], &[("s", "a"), ("a", "b"), ("b", "t"), ("s", "t")]).unwrap();
    let sets = hex_winning_sets(&g, "s", "t");
    assert!(sets.iter().any(|e| e.is_empty()));
    assert!(sets.iter().all(|e| !e.contains("s") && !e.contains("t")));
}
