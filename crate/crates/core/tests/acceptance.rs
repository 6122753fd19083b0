use matpair::suite::{run_suite, SuiteConfig};

#[test]
fn acceptance_criteria() {
    let results = run_suite(&SuiteConfig::default());
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
