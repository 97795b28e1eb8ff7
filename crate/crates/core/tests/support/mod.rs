//! Shared helpers for the integration tests.

pub mod witt_oracle;

use std::io::Write;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

/// Runs one acceptance check, prints a PASS/FAIL line outside the test harness capture,
/// and fails the test if the check panicked or ran over `budget`.
pub fn criterion(name: &str, budget: Duration, f: impl FnOnce() -> String) {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    let (status, detail) = match &result {
        Ok(detail) if elapsed <= budget => ("PASS", detail.clone()),
        Ok(detail) => ("FAIL", format!("{detail}; over budget {budget:?}")),
        Err(e) => (
            "FAIL",
            e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default(),
        ),
    };
    let line = format!("acceptance {status} {name} ({:.2}s): {detail}\n", elapsed.as_secs_f64());
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    match result {
        Err(e) => resume_unwind(e),
        Ok(_) => assert!(elapsed <= budget, "{name} took {elapsed:?}, budget {budget:?}"),
    }
}
