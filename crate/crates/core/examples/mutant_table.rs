//! Runs the default property suite on the Tukey depth and on every mutant
//! and prints one verdict line per property.

use std::time::Instant;

use setdepth::properties::mutants::Mutant;
use setdepth::{run_suite, DepthFunction, SuiteConfig, TukeyDepth};

fn main() {
    let cfg = SuiteConfig::default();
    let mut functions: Vec<Box<dyn DepthFunction>> = vec![Box::new(TukeyDepth::default())];
    functions.extend(
        Mutant::ALL
            .into_iter()
            .map(|m| Box::new(m) as Box<dyn DepthFunction>),
    );
    for f in functions {
        let start = Instant::now();
        let report = run_suite(f.as_ref(), &cfg).expect("default suite runs");
        let labels: Vec<String> = report.labels.iter().map(ToString::to_string).collect();
        println!(
            "{} ({:.1}s): [{}]",
            report.name,
            start.elapsed().as_secs_f64(),
            labels.join(", ")
        );
        for p in &report.reports {
            println!(
                "  {} {} ({} trials) {}",
                p.property, p.verdict, p.trials, p.detail
            );
        }
    }
}
