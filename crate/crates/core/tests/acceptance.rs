//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use posgame::games::{parse_game, Variant};
use posgame::logic::{classify, FragmentTag};
use posgame::qelim::to_sigma1;
use posgame::reductions::{compile, CompileOutcome};
use posgame::verify::corpus::{qelim_corpus, sgg_corpus};
use posgame::verify::*;

const SEED: u64 = 0;

// Corpus sizes.
const QE_PAIRS: usize = 1000;
const QE_MAX_QUANTIFIERS: usize = 4;
const QE_MAX_UNIVERSE: usize = 4;
const HEX_MIN_RANDOM: usize = 200;
const MB_MIN: usize = 500;
const MM_MIN: usize = 300;
const EA_MIN_COMPILED: usize = 300;
const IS_MIN_RANDOM: usize = 200;
const ALIGNED_TRIPLES: usize = 16 * 15 * 14;
const CONNECT_GAMES: usize = 40;
const SGG_INSTANCES: usize = 50;

// Size laws: |φ(ℓ)| ≤ C·ℓ^d on ℓ = 1..=6, and the log-log slope between the
// last two rungs stays at or below d.
const HEX_SIZE_C: f64 = 17.0;
const MM_SIZE_C: f64 = 52.0;
const LADDER: std::ops::RangeInclusive<usize> = 1..=6;

// Runtime limits.
const QE_LIMIT: Duration = Duration::from_secs(60);
const HEX_LIMIT: Duration = Duration::from_secs(300);
const MB_LIMIT: Duration = Duration::from_secs(300);
const MM_LIMIT: Duration = Duration::from_secs(600);

struct Verdict {
    pass: bool,
    detail: String,
}

fn report_ok(r: &CheckReport) -> bool {
    r.disagree() == 0 && r.status() != SuiteStatus::Inconclusive
}

fn counts(r: &CheckReport) -> String {
    format!("agree {} disagree {} skip {}", r.agree(), r.disagree(), r.skipped())
}

fn within(t: Duration, limit: Duration) -> bool {
    t <= limit
}

fn first_bad(r: &CheckReport) -> String {
    r.records
        .iter()
        .find(|x| x.outcome != Outcome::Agree)
        .map(|x| format!("; first non-agreement: {}", x.line(&r.suite)))
        .unwrap_or_default()
}

fn qe_equivalence() -> Verdict {
    let t = Instant::now();
    let corpus = qelim_corpus(SEED, QE_PAIRS, QE_MAX_QUANTIFIERS, QE_MAX_UNIVERSE);
    let r = xcheck_qelim(&corpus, default_ceiling("qelim"));
    let sigma1 = corpus.iter().all(|p| to_sigma1(&p.item.0).map(|(g, _)| classify(&g).tag == FragmentTag::Sigma1).unwrap_or(false));
    let elapsed = t.elapsed();
    Verdict {
        pass: report_ok(&r) && r.skipped() == 0 && r.total() >= QE_PAIRS && sigma1 && within(elapsed, QE_LIMIT),
        detail: format!("{} pairs, {}, all outputs Σ1: {sigma1}, {:.1}s{}", corpus.len(), counts(&r), elapsed.as_secs_f64(), first_bad(&r)),
    }
}

fn size_ladder(text: impl Fn(usize) -> String, c: f64, degree: i32) -> (bool, Vec<usize>) {
    let sizes: Vec<usize> = LADDER
        .map(|l| {
            let g = parse_game(&text(l)).expect("ladder game");
            compile(&g).expect("compiles").check().expect("formula outcome").formula.size()
        })
        .collect();
    let fits = sizes.iter().zip(LADDER).all(|(&s, l)| s as f64 <= c * (l as f64).powi(degree));
    let n = sizes.len();
    let (a, b) = (sizes[n - 2] as f64, sizes[n - 1] as f64);
    let slope = (b / a).ln() / ((n as f64) / (n as f64 - 1.0)).ln();
    (fits && slope <= degree as f64, sizes)
}

fn hex_compile() -> Verdict {
    let t = Instant::now();
    let corpus = hex_suite_corpus(SEED);
    let random = corpus.iter().filter(|g| !g.id.starts_with("HEX-all")).count();
    let r = xcheck_compile("hex", &corpus, default_ceiling("hex"));
    let (law, sizes) = size_ladder(
        |l| format!("variant HEX\nbudget {l}\nvertices s a b t\nedge s a\nedge a b\nedge b t\ns s\nt t\n"),
        HEX_SIZE_C,
        4,
    );
    let elapsed = t.elapsed();
    Verdict {
        pass: report_ok(&r) && r.skipped() == 0 && random >= HEX_MIN_RANDOM && law && within(elapsed, HEX_LIMIT),
        detail: format!(
            "{} instances ({} random), {}, sizes {:?} ≤ {HEX_SIZE_C}·ℓ⁴: {law}, {:.1}s{}",
            corpus.len(),
            random,
            counts(&r),
            sizes,
            elapsed.as_secs_f64(),
            first_bad(&r)
        ),
    }
}

fn mb_compile() -> Verdict {
    let t = Instant::now();
    let corpus = mb_suite_corpus(SEED);
    let r = xcheck_compile("mb", &corpus, default_ceiling("mb"));
    let elapsed = t.elapsed();
    Verdict {
        pass: report_ok(&r) && r.skipped() == 0 && corpus.len() >= MB_MIN && within(elapsed, MB_LIMIT),
        detail: format!("{} instances, {}, {:.1}s{}", corpus.len(), counts(&r), elapsed.as_secs_f64(), first_bad(&r)),
    }
}

fn mm_compile() -> Verdict {
    let t = Instant::now();
    let corpus = mm_suite_corpus(SEED);
    let r = xcheck_compile("mm", &corpus, default_ceiling("mm"));
    let (law, sizes) =
        size_ladder(|l| format!("variant MM\nbudget {l}\nvertices a b c d\nedge a b\nedge b c d\n"), MM_SIZE_C, 3);
    let elapsed = t.elapsed();
    Verdict {
        pass: report_ok(&r) && r.skipped() == 0 && corpus.len() >= MM_MIN && law && within(elapsed, MM_LIMIT),
        detail: format!(
            "{} instances, {}, sizes {:?} ≤ {MM_SIZE_C}·ℓ³: {law}, {:.1}s{}",
            corpus.len(),
            counts(&r),
            sizes,
            elapsed.as_secs_f64(),
            first_bad(&r)
        ),
    }
}

fn ea_compile() -> Verdict {
    let corpus = ea_suite_corpus(SEED);
    let r = xcheck_compile("ea", &corpus, default_ceiling("ea"));
    let mut compiled = 0;
    let mut fallback = 0;
    for inst in &corpus {
        match compile(&inst.item).expect("EA compiles") {
            CompileOutcome::Formula(c) => {
                compiled += 1;
                assert!(c.negated && inst.item.variant == Variant::EA);
            }
            CompileOutcome::BruteForceFallback { .. } => fallback += 1,
            CompileOutcome::Decided { .. } => {}
        }
    }
    Verdict {
        pass: report_ok(&r) && r.skipped() == 0 && compiled >= EA_MIN_COMPILED && fallback > 0,
        detail: format!("{} instances ({compiled} compiled, {fallback} brute-force fallback), {}{}", corpus.len(), counts(&r), first_bad(&r)),
    }
}

fn is_to_ea() -> Verdict {
    let corpus = is_suite_corpus(SEED);
    let random = corpus.iter().filter(|(id, _, _)| !id.starts_with("G-all")).count();
    let r = xcheck_is_to_ea(&corpus);
    Verdict {
        pass: report_ok(&r) && r.skipped() == 0 && random >= IS_MIN_RANDOM,
        detail: format!("{} (graph, k) pairs ({random} random), {}{}", corpus.len(), counts(&r), first_bad(&r)),
    }
}

fn k_connect() -> Verdict {
    let aligned = xcheck_aligned(4, 4);
    let games = xcheck_compile("connect", &connect_suite_corpus(SEED, CONNECT_GAMES), default_ceiling("connect"));
    Verdict {
        pass: report_ok(&aligned)
            && aligned.total() == ALIGNED_TRIPLES
            && report_ok(&games)
            && games.skipped() == 0
            && games.total() == CONNECT_GAMES,
        detail: format!(
            "aligned on 4×4: {}; 3×3 k=3 p=1 ℓ=1 games: {}{}{}",
            counts(&aligned),
            counts(&games),
            first_bad(&aligned),
            first_bad(&games)
        ),
    }
}

fn gadget_lemmas() -> Verdict {
    let lemmas = xcheck_gadgets(GADGET_NODE_LIMIT);
    let structure = xcheck_sgg_structure(&sgg_corpus(SEED, SGG_INSTANCES, 8, 4));
    let has = |prefix: &str| lemmas.records.iter().any(|r| r.id.starts_with(prefix));
    let covered = has("delay-∃4") && has("delay-∀4") && has("exists-n1") && has("exists-n2") && has("forall-n1") && has("forall-n2");
    Verdict {
        pass: lemmas.status() == SuiteStatus::Pass && structure.status() == SuiteStatus::Pass && covered,
        detail: format!(
            "lemmas: {} ({}), structure over {SGG_INSTANCES} instances: {} ({}){}{}",
            lemmas.status(),
            counts(&lemmas),
            structure.status(),
            counts(&structure),
            first_bad(&lemmas),
            first_bad(&structure)
        ),
    }
}

fn solver_soundness() -> Verdict {
    let corpus = solver_suite_corpus(SEED);
    let r = xcheck_solver(&corpus);
    let variants: std::collections::BTreeSet<Variant> = corpus.iter().map(|g| g.item.variant).collect();
    Verdict {
        pass: report_ok(&r) && r.skipped() == 0 && variants.len() == 6,
        detail: format!("{} instances over {} variants, default/no-tt/plain vs reference: {}{}", corpus.len(), variants.len(), counts(&r), first_bad(&r)),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("qe-equivalence", qe_equivalence),
        ("hex-compile", hex_compile),
        ("maker-breaker-compile", mb_compile),
        ("maker-maker-compile", mm_compile),
        ("enforcer-avoider-co-compile", ea_compile),
        ("independent-set-to-ea", is_to_ea),
        ("k-connect", k_connect),
        ("gadget-lemmas", gadget_lemmas),
        ("solver-soundness", solver_soundness),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        println!("criterion {} {name}: {} — {}", n + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
