//! The published complete set of inequivalent cusps, with widths, for
//! Gamma_0(162) ∩ Gamma_1(9). Representatives are labels only; class-level
//! comparison is what the checks use.

use super::Cusp;

/// (numerator, denominator, width); denominator 0 encodes infinity.
pub const GAMMA_162_9_CUSPS: [(i64, i64, i64); 72] = [
    (0, 1, 162),
    (1, 18, 1),
    (2, 33, 18),
    (1, 16, 81),
    (2, 31, 162),
    (1, 15, 18),
    (2, 29, 162),
    (5, 72, 1),
    (1, 14, 81),
    (1, 12, 9),
    (2, 21, 18),
    (7, 72, 1),
    (1, 10, 81),
    (1, 9, 2),
    (7, 54, 1),
    (2, 15, 18),
    (5, 36, 1),
    (1, 6, 9),
    (8, 45, 2),
    (17, 90, 1),
    (7, 36, 1),
    (2, 9, 2),
    (7, 30, 9),
    (13, 54, 1),
    (11, 45, 2),
    (7, 27, 2),
    (43, 162, 1),
    (17, 63, 2),
    (5, 18, 1),
    (13, 45, 2),
    (7, 24, 9),
    (8, 27, 2),
    (11, 36, 1),
    (17, 54, 1),
    (1, 3, 18),
    (13, 36, 1),
    (23, 63, 2),
    (10, 27, 2),
    (31, 81, 2),
    (7, 18, 1),
    (5, 12, 9),
    (19, 45, 2),
    (4, 9, 2),
    (37, 81, 2),
    (29, 63, 2),
    (38, 81, 2),
    (17, 36, 1),
    (77, 162, 1),
    (13, 27, 2),
    (14, 27, 2),
    (19, 36, 1),
    (34, 63, 2),
    (5, 9, 2),
    (37, 63, 2),
    (11, 18, 1),
    (40, 63, 2),
    (2, 3, 18),
    (37, 54, 1),
    (32, 45, 2),
    (13, 18, 1),
    (20, 27, 2),
    (34, 45, 2),
    (41, 54, 1),
    (7, 9, 2),
    (73, 90, 1),
    (5, 6, 9),
    (47, 54, 1),
    (8, 9, 2),
    (65, 72, 1),
    (67, 72, 1),
    (17, 18, 1),
    (1, 0, 1),
];

pub fn paper_cusps() -> Vec<(Cusp, i64)> {
    GAMMA_162_9_CUSPS
        .iter()
        .map(|(a, c, w)| (if *c == 0 { Cusp::infinity() } else { Cusp::new(*a, *c) }, *w))
        .collect()
}
