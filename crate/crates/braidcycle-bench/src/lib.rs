//! Benchmark inputs shared by the criterion benches.

use braidcycle::{default_cable_twist, BraidWord};

/// Named knotted braids of increasing size.
pub fn inputs() -> Vec<(&'static str, BraidWord)> {
    let w = |n: usize, l: &[i32]| BraidWord::new(n, l.to_vec()).expect("valid word");
    vec![
        ("b3_word", w(3, &[1, -2, 1, 2, 1, 1, 2, 1])),
        ("knot_8_9", w(3, &[-1, 2, -1, -1, -1, 2, 2, 2])),
        ("b6_word", w(6, &[1, -2, 3, -4, 5, 2, 2, -3, -3, 1, 1, -4, -4])),
        ("cable_b5", w(5, &[1, -2, 3, 4, -1, 2]).cable(2, Some(&default_cable_twist(2))).expect("valid cable")),
    ]
}
