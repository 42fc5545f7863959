//! One line per acceptance criterion, with the time limit each must meet.
//! The lines go straight to stdout so they show even when output is captured.

use std::io::Write;
use std::time::{Duration, Instant};

use serde_json::json;
use unionclosed::harness::{
    check_constructions, check_conjecture7, check_conjecture8, check_counterexample,
    check_kruskal_katona, check_lemma_properties, check_prop9, check_search_oracle,
    check_theorem2, Report, Status, DEFAULT_SEED,
};

struct Line {
    id: u32,
    name: &'static str,
    ok: bool,
    elapsed: Duration,
    limit: Option<Duration>,
    detail: String,
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get()).min(8)
}

fn measure(
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: impl FnOnce() -> (bool, String),
) -> Line {
    let start = Instant::now();
    let (ok, detail) = run();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    Line { id, name, ok: ok && in_time, elapsed, limit, detail }
}

fn all_pass(reports: &[Report]) -> (bool, String) {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} {} -> {:?} {}", r.claim_id, r.parameters, r.status, r.computed))
        .collect();
    let detail = if failed.is_empty() {
        format!("{} reports", reports.len())
    } else {
        failed.join("; ")
    };
    (!reports.is_empty() && failed.is_empty(), detail)
}

#[test]
fn acceptance() {
    let w = workers();
    let secs = Duration::from_secs;
    let mut lines = Vec::new();

    lines.push(measure(1, "counterexample 12 vs 13", Some(secs(1)), || {
        let r = check_counterexample();
        let exact = r.computed["pair"] == json!([12, 13]);
        (r.pass && exact, format!("computed {}", r.computed["pair"]))
    }));

    lines.push(measure(2, "f(n,2) exact for n <= 8", Some(secs(600)), || {
        let reports = check_theorem2(8, w);
        let (ok, detail) = all_pass(&reports);
        let values: Vec<String> = reports.iter().map(|r| r.computed["f"].to_string()).collect();
        (ok, format!("{detail}, f = {}", values.join(",")))
    }));

    lines.push(measure(3, "f(4,3) = 5 with witness [4]^(3)", Some(secs(60)), || {
        let r = check_conjecture7(3, 4, w);
        let witness = r.computed["all_ksets_optimal"] == json!(true);
        (r.pass && witness && r.computed["f"] == json!(5), format!("computed {}", r.computed["f"]))
    }));

    lines.push(measure(4, "max-lex closure = f(n,3) for n <= 6", Some(secs(1800)), || {
        let reports = check_conjecture8(3, 6, w);
        let refuted = reports.iter().filter(|r| r.status == Status::RefutedWithWitness).count();
        let (ok, detail) = all_pass(&reports);
        (ok, format!("{detail}, {refuted} refuted"))
    }));

    lines.push(measure(5, "b_X bound for k = 2, 3", None, || {
        let reports = vec![check_prop9(2), check_prop9(3)];
        all_pass(&reports)
    }));

    lines.push(measure(6, "Kruskal-Katona suite, 2000 trials", Some(secs(60)), || {
        all_pass(&[check_kruskal_katona(2000, DEFAULT_SEED)])
    }));

    lines.push(measure(7, "lemma suite, 1000 trials each", None, || {
        let reports = check_lemma_properties(1000, DEFAULT_SEED);
        let (ok, detail) = all_pass(&reports);
        (ok && reports.len() == 3, detail)
    }));

    lines.push(measure(8, "construction predictions t <= 8, k <= 4", None, || {
        all_pass(&[check_constructions(8, 4)])
    }));

    lines.push(measure(9, "pruned search = unpruned search, k <= 3, n <= 5", None, || {
        all_pass(&[check_search_oracle(3, 5)])
    }));

    let mut stdout = std::io::stdout().lock();
    for l in &lines {
        let limit = l
            .limit
            .map_or(String::from("no limit"), |d| format!("limit {} s", d.as_secs()));
        writeln!(
            stdout,
            "criterion {} {}: {} ({:.1} ms, {}) {}",
            l.id,
            l.name,
            if l.ok { "PASS" } else { "FAIL" },
            l.elapsed.as_secs_f64() * 1e3,
            limit,
            l.detail
        )
        .unwrap();
    }
    let failed: Vec<u32> = lines.iter().filter(|l| !l.ok).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
