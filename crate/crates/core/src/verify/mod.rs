//! Instance generators, brute-force oracles and cross-check suites.

pub mod corpus;
mod gadgets;
mod oracle;
mod reference;
mod report;
mod suites;

pub use oracle::{brute_force_evaluate, geometrically_aligned, has_independent_set, subsets};
pub use reference::reference_solve;
pub use report::{CheckRecord, CheckReport, Outcome, SuiteStatus};
pub use suites::*;

#[cfg(test)]
mod tests {
    use super::corpus::*;
    use super::*;
    use crate::games::{solve_short, solve_with, SolverConfig, Variant};

    #[test]
    fn solver_matches_reference_smoke() {
        let mut all = Vec::new();
        for v in [Variant::MM, Variant::MB, Variant::EA] {
            all.extend(hypergraph_corpus(v, 11, 60, &HypergraphBounds::new(6, 4, 3, 3)));
        }
        all.extend(hex_corpus(11, 60, 6, &[1, 2, 3], 0.1));
        all.extend(connect_corpus(11, 8, 2));
        all.extend(sgg_corpus(11, 60, 7, 4));
        for inst in &all {
            let want = reference_solve(&inst.item);
            let got = solve_short(&inst.item).unwrap().first_player_wins;
            let plain = solve_with(&inst.item, SolverConfig::plain()).unwrap().first_player_wins;
            assert_eq!(want, got, "{}\n{}", inst.id, inst.item.to_text());
            assert_eq!(want, plain, "plain {}\n{}", inst.id, inst.item.to_text());
        }
    }
}
