//! In Q<X,Y>/(Y^2) with D = d/dX and P = 1 - X*xi, every power of f = XY is
//! killed by P(D) while X*f^m is not, so Ker P(D) is not a Mathieu subspace.

use diffrad::kerrad::{matrix_violation_check, word_algebra_counterexample_check};

fn main() -> diffrad::Result<()> {
    let m_max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let report = word_algebra_counterexample_check(m_max)?;
    for c in &report.checks {
        println!("{:?}: {}\n    {}", c.status, c.name, c.details);
    }
    let c = matrix_violation_check()?;
    println!("{:?}: {}\n    {}", c.status, c.name, c.details);
    Ok(())
}
