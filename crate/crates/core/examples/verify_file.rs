//! Loading an algebra file and running a verification suite on it, the way
//! `diffrad verify --algebra FILE` does.
//!
//! cargo run --example verify_file -- crates/core/examples/algebras/bidegree.json grading

use diffrad::cli::{load_file, run_suite, SuiteOptions};

fn main() -> diffrad::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/algebras/staircase_n2.json").to_string());
    let suite = args.next().unwrap_or_else(|| "derivations".into());

    let loaded = load_file(std::path::Path::new(&path))?;
    println!("{}: {}", loaded.name, loaded.algebra);
    let opts = SuiteOptions { trials: 5, ..SuiteOptions::default() };
    let report = run_suite(&suite, Some(&loaded), &opts)?;
    for c in &report.checks {
        println!("{:<18} {}", format!("{:?}", c.status), c.name);
    }
    println!("{} checks, passed: {}", report.checks.len(), report.passed());
    Ok(())
}
