//! Run the desk-scale matrix and print one line per report.

use std::sync::Arc;

use catcheck::{desk_matrix, matrix_jobs, run_jobs, Settings};

fn main() {
    let only = std::env::args().nth(1);
    let jobs = matrix_jobs(&desk_matrix(), &Arc::new(Settings::default()), only.as_deref());
    let t = std::time::Instant::now();
    let reports = run_jobs(&jobs, 0);
    for r in &reports {
        let i = &r.input;
        println!(
            "{:?}\t{}\t{}\t{:?}\t{:?}\t{:?}\t{:?}\t{}ms\t{}",
            r.status,
            r.check,
            i.case,
            i.lambda,
            i.beta,
            i.i,
            i.j,
            r.timing_ms,
            r.first_failure.as_ref().map(|w| format!("{}: {} vs {}", w.what, w.lhs, w.rhs)).or(r.error.clone()).unwrap_or_default()
        );
    }
    let fails = reports.iter().filter(|r| !r.passed()).count();
    eprintln!("{} reports, {} failed, {:?}", reports.len(), fails, t.elapsed());
}
