use qclosed::verify::{run_suite, Suite, SuiteConfig};
use qclosed::Quiver;

fn assert_suite(name: &str, suite: Suite) {
    let q = Quiver::builtin(name).unwrap();
    let cfg = SuiteConfig {
        le: Some((3, 1)),
        ..SuiteConfig::default()
    };
    let report = run_suite(&q, suite, &cfg).unwrap();
    for c in &report.checks {
        assert!(
            c.pass,
            "{name}: {}",
            serde_json::to_string_pretty(c).unwrap()
        );
    }
}

#[test]
fn a4_all_suites() {
    assert_suite("A4", Suite::All);
}

#[test]
fn d4_all_suites() {
    assert_suite("D4", Suite::All);
}

#[test]
fn a3_other_orientation() {
    let q = Quiver::from_json(r#"{"n":3,"arrows":[[1,2],[1,3]]}"#).unwrap();
    let report = run_suite(
        &q,
        Suite::All,
        &SuiteConfig {
            le: Some((2, 1)),
            ..SuiteConfig::default()
        },
    )
    .unwrap();
    assert!(
        report.passed(),
        "{}",
        serde_json::to_string_pretty(&report).unwrap()
    );
}
