//! A short run of every verification suite.

use multilinear_count::harness::{run_suite, Suite, SuiteConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for suite in Suite::ALL {
        let cfg = SuiteConfig {
            trials: 24,
            ..SuiteConfig::new(suite)
        };
        let report = run_suite(suite, &cfg)?;
        println!("{}", serde_json::to_string(&report.summary())?);
    }
    Ok(())
}
