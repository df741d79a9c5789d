use adian::{schutzenberger, Budget};
use adian_bench::corpus;

#[test]
fn every_case_closes() {
    for case in corpus() {
        let a = schutzenberger(&case.word, &case.presentation, Budget::default());
        assert!(a.is_ok(), "{}", case.name);
    }
}
