//! Quotient checks on rank-3 fans. The invariant-character oracle needs a
//! larger box here: with entries up to 2 in the acting line, generators of
//! the invariant monoids can leave `[-3,3]³`.

use gquot::corpus::CorpusFan;
use gquot::sweep::{quotient_sweep, SweepConfig};
use gquot::Fan;

fn rank_three() -> Vec<CorpusFan> {
    let c3 = Fan::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[0, 1, 2]]).unwrap();
    let p3 = Fan::from_i64(
        3,
        &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
        &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
    )
    .unwrap();
    vec![
        CorpusFan { name: "C3".into(), fan: c3 },
        CorpusFan { name: "P3".into(), fan: p3 },
    ]
}

#[test]
fn rank_three_sweep() {
    let s = quotient_sweep(&rank_three(), SweepConfig { bound: 6, ..SweepConfig::default() });
    assert_eq!(s.fans, 2);
    assert!(s.selections > 9000, "{}", s.selections);
    for (name, t) in s.tallies() {
        assert!(t.passed(), "{name}: {t}");
    }
}
