use adequacy_core::grouprep::DEFAULT_CAP;
use adequacy_core::{builtin_corpus, Mode};

#[test]
fn builtin_expectations_hold() {
    for entry in builtin_corpus() {
        let t = std::time::Instant::now();
        let g = entry.group.build(DEFAULT_CAP).unwrap();
        let big = g.check(Mode::Big, true).unwrap();
        let adq = g.check(Mode::Adequate, true).unwrap();
        let adq_ns = g.check(Mode::Adequate, false).unwrap();
        println!(
            "{:22} order {:6} big {:5} adequate {:5}/{:5} failed {:?} {:?} {:?}",
            entry.name,
            g.order(),
            big.verdict,
            adq.verdict,
            adq_ns.verdict,
            big.failed,
            adq.failed,
            t.elapsed()
        );
        if let Some(b) = entry.expected_big {
            assert_eq!(big.verdict, b, "{}", entry.name);
        }
        if let Some(a) = entry.expected_adequate {
            assert_eq!(adq.verdict, a, "{}", entry.name);
            assert_eq!(adq_ns.verdict, a, "{}", entry.name);
        }
        assert!(!big.verdict || adq.verdict, "{}", entry.name);
    }
}
