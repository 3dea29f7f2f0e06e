//! Golden-file checks: the catalog series reproduce the committed text
//! byte-exactly, and the text format round-trips through the parser.

use qrank_core::catalog::build_series;
use qrank_core::fps::FracSeries;

const GOLDEN: &[(&str, i64, &str)] = &[
    ("o_1_3_1", 48, include_str!("golden/o_1_3_1.fps")),
    ("o_2_3_1", 48, include_str!("golden/o_2_3_1.fps")),
    ("o_3_3_1", 48, include_str!("golden/o_3_3_1.fps")),
    ("o_4_7_1", 48, include_str!("golden/o_4_7_1.fps")),
    ("thm13_a0", 40, include_str!("golden/thm13_a0.fps")),
    ("thm13_a1", 40, include_str!("golden/thm13_a1.fps")),
    ("thm13_a2", 40, include_str!("golden/thm13_a2.fps")),
    ("thm81_z7", 60, include_str!("golden/thm81_z7.fps")),
    ("s_1_3_162", 260, include_str!("golden/s_1_3_162.fps")),
];

#[test]
fn golden_series_are_byte_stable() {
    for (name, trunc, expected) in GOLDEN {
        let series = build_series(name, *trunc).unwrap();
        assert_eq!(&series.to_text(), expected, "golden mismatch for {name}");
    }
}

#[test]
fn golden_series_parse_back_losslessly() {
    for (name, _, text) in GOLDEN {
        let parsed = FracSeries::from_text(text).unwrap();
        assert_eq!(&parsed.to_text(), text, "round trip for {name}");
    }
}

#[test]
fn dissection_of_golden_o3_matches_golden_a_series() {
    // the committed expansions satisfy the dissection relation among
    // themselves: class i of O_3(zeta_3;q) equals A_i
    let o3 = FracSeries::from_text(GOLDEN[2].2).unwrap();
    for (i, name) in [(0usize, "thm13_a0"), (1, "thm13_a1"), (2, "thm13_a2")] {
        let class = o3.dissect(3, i as i64).unwrap();
        let ai = FracSeries::from_text(
            GOLDEN.iter().find(|(n, _, _)| *n == name).unwrap().2,
        )
        .unwrap();
        let window = class.trunc_q().min(ai.trunc_q());
        let r = class.truncate_q(window).eq_report(&ai.truncate_q(window));
        assert!(r.pass, "class {i}: {}", r.describe());
    }
}
