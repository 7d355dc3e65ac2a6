use std::process::ExitCode;
use std::time::{Duration, Instant};

use hechain_cli::config::SuiteConfig;
use hechain_cli::report::Case;
use hechain_cli::run_suite;
use hechain_cli::suites::{PARTIAL_TRACE_SAMPLES, SPECTRUM_TOLERANCE, TRACE_SAMPLES};

const EIGENVALUE_TOLERANCE: f64 = 1e-9;
const MIN_TRACE_SAMPLES: usize = 100;
const MIN_PARTIAL_TRACE_SAMPLES: usize = 50;
const SEED: u64 = 0;

const _: () = assert!(SPECTRUM_TOLERANCE == EIGENVALUE_TOLERANCE);
const _: () = assert!(TRACE_SAMPLES >= MIN_TRACE_SAMPLES);
const _: () = assert!(PARTIAL_TRACE_SAMPLES >= MIN_PARTIAL_TRACE_SAMPLES);

struct Run {
    suite: &'static str,
    n: Option<usize>,
    keep: fn(&str) -> bool,
}

struct Criterion {
    number: u32,
    title: &'static str,
    limit: Option<Duration>,
    runs: Vec<Run>,
    /// Minimum number of selected cases per id prefix.
    counts: Vec<(&'static str, usize)>,
}

fn all(_: &str) -> bool {
    true
}

fn run(suite: &'static str, n: Option<usize>, keep: fn(&str) -> bool) -> Run {
    Run { suite, n, keep }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            number: 1,
            title: "Hecke kernel: braid, Hecke, YBE, unitarity, symmetrizers for ranks <= 5",
            limit: secs(10),
            runs: vec![
                run("braid", Some(5), all),
                run("hecke", Some(5), all),
                run("ybe", Some(5), all),
                run("symmetrizers", Some(5), all),
            ],
            counts: vec![("finite-r5", 1), ("ybe-r5", 1), ("unitarity-r5", 1), ("plus-k5", 1), ("minus-k5", 1)],
        },
        Criterion {
            number: 2,
            title: "trace axioms and sandwich identity on random finite and affine elements",
            limit: secs(30),
            runs: vec![run("trace-axioms", Some(4), all)],
            counts: vec![
                ("finite-r2-", MIN_TRACE_SAMPLES),
                ("finite-r3-", MIN_TRACE_SAMPLES),
                ("finite-r4-", MIN_TRACE_SAMPLES),
                ("affine-r2-", MIN_TRACE_SAMPLES),
                ("affine-r3-", MIN_TRACE_SAMPLES),
            ],
        },
        Criterion {
            number: 3,
            title: "commuting transfer matrices, free n <= 4 and quadratic blob n <= 3",
            limit: secs(60),
            runs: vec![run("commuting-tau", None, all)],
            counts: vec![("free-n4", 1), ("blob-n3", 1)],
        },
        Criterion {
            number: 4,
            title: "local charges: lists, commutation, centrality, mirror relation",
            limit: None,
            runs: vec![run("charges", Some(4), all), run("mirror", Some(5), all)],
            counts: vec![("list-n3", 1), ("list-n4", 1), ("central-n4", 1), ("mirror-r5", 1)],
        },
        Criterion {
            number: 5,
            title: "cubic identity and gl(2) spectra against closed forms",
            limit: None,
            runs: vec![run("spectra", None, |id| id == "h3-identity" || id.starts_with("spectrum-gl(2)-"))],
            counts: vec![("h3-identity", 1), ("spectrum-gl(2)-N3-", 3), ("spectrum-gl(2)-N4-", 3)],
        },
        Criterion {
            number: 6,
            title: "transfer matrix equals its recursive construction, free and quadratic blob",
            limit: None,
            runs: vec![run("reflection", Some(3), |id| id.starts_with("recursion-"))],
            counts: vec![("recursion-free-n3", 1), ("recursion-blob-n3", 1)],
        },
        Criterion {
            number: 7,
            title: "fusion: lemma, fused boundary and reflection, fused transfer",
            limit: secs(300),
            runs: vec![run("lemma1", None, all), run("prop1", None, all)],
            counts: vec![("lemma1-k3", 1), ("fre-k2", 1), ("frefl-k2", 1), ("free-k2", 1), ("blob-k1", 1)],
        },
        Criterion {
            number: 8,
            title: "Temperley-Lieb quotient constants and identities",
            limit: None,
            runs: vec![run("tl-constants", None, all)],
            counts: vec![("forced-constants", 1), ("antisymmetrizer", 1), ("sss-", 2), ("ident2-", 1), ("iden3-", 1)],
        },
        Criterion {
            number: 9,
            title: "fused blob transfer relation, k <= 2 and gl(2) at k = 3",
            limit: None,
            runs: vec![run("prop2", None, all)],
            counts: vec![("blob-k1", 1), ("blob-k2", 1), ("gl2-k3-", 3)],
        },
        Criterion {
            number: 10,
            title: "T-Q relation and quantum determinant factorization",
            limit: None,
            runs: vec![run("tq", Some(3), all)],
            counts: vec![("residual-N3-k2", 1), ("delta0-free-N2", 1), ("delta0-blob-N2", 1)],
        },
        Criterion {
            number: 11,
            title: "R-matrix: Hecke relation, braid, classical limit, TL iff n+m = 2",
            limit: None,
            runs: vec![run("rmatrix-core", None, |id| !id.starts_with("partial-trace-"))],
            counts: vec![("hecke-", 4), ("braid-", 4), ("classical-", 4), ("tl-", 4)],
        },
        Criterion {
            number: 12,
            title: "Sklyanin transfer matrix equals the represented algebraic one on gl(2)",
            limit: secs(120),
            runs: vec![run("sklyanin-equiv", Some(3), all)],
            counts: vec![("diagonal-N3", 1), ("upper-N3", 1)],
        },
        Criterion {
            number: 13,
            title: "represented Markov trace equals the weighted partial supertrace",
            limit: None,
            runs: vec![run("rmatrix-core", None, |id| id.starts_with("partial-trace-"))],
            counts: vec![("partial-trace-", MIN_PARTIAL_TRACE_SAMPLES)],
        },
    ]
}

fn evaluate(c: &Criterion) -> (bool, Duration, String) {
    let start = Instant::now();
    let mut cases: Vec<Case> = Vec::new();
    for r in &c.runs {
        let cfg = SuiteConfig { suite: Some(r.suite.to_string()), n: r.n, seed: SEED, ..SuiteConfig::default() };
        match run_suite(&cfg) {
            Ok(report) => cases.extend(report.cases.into_iter().filter(|case| (r.keep)(&case.id))),
            Err(e) => return (false, start.elapsed(), format!("{}: {e}", r.suite)),
        }
    }
    let elapsed = start.elapsed();
    let mut problems: Vec<String> = cases.iter().filter(|case| !case.pass).map(|case| format!("{} {}", case.id, case.residual)).collect();
    for (prefix, min) in &c.counts {
        let found = cases.iter().filter(|case| case.id.starts_with(prefix)).count();
        if found < *min {
            problems.push(format!("{found} cases matching {prefix}, need {min}"));
        }
    }
    if let Some(limit) = c.limit {
        if elapsed > limit {
            problems.push(format!("took {:.1}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs()));
        }
    }
    let detail = if problems.is_empty() { format!("{} cases", cases.len()) } else { problems.join("; ") };
    (problems.is_empty(), elapsed, detail)
}

fn main() -> ExitCode {
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    for c in criteria() {
        if !filter.is_empty() && !filter.contains(&c.number) {
            continue;
        }
        let (pass, elapsed, detail) = evaluate(&c);
        println!(
            "criterion {:>2} {} [{:.2}s] {}: {}",
            c.number,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            c.title,
            detail
        );
        if !pass {
            failed.push(c.number);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
