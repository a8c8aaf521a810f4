//! Hand-drawn configurations, one per replacement pattern.
//!
//! Each fixture is a cycle `0..c` with an outer vertex `a` drawn inside and
//! the faces across from it drawn outside, plus whatever chords the pattern
//! needs. They are not 3-connected; they only realize the local picture.

use crate::replace::PatternId;

use super::drawing::CycleDrawing;

#[derive(Debug, Clone)]
pub struct ReplacementFixture {
    pub name: &'static str,
    pub pattern: PatternId,
    pub drawing: CycleDrawing,
}

fn fixture(name: &'static str, pattern: PatternId, drawing: CycleDrawing) -> ReplacementFixture {
    ReplacementFixture { name, pattern, drawing }
}

pub fn replacement_fixtures() -> Vec<ReplacementFixture> {
    use PatternId::*;
    let four = || CycleDrawing::new(12).inner_outer([1, 5, 9]);
    let five = || {
        CycleDrawing::new(12)
            .inner_outer([0, 5, 9])
            .outer_outer([0, 2, 9])
            .outer_outer([2, 4, 9])
            .outer_outer([4, 6, 9])
    };
    vec![
        fixture("R-2b", C2b, CycleDrawing::new(10).inner_outer([0, 2, 6]).outer_outer([1, 3, 7])),
        fixture(
            "R-2c",
            C2c,
            CycleDrawing::new(10).inner_outer([0, 2, 6]).outer_outer([0, 3, 7]).outer_chord(1, 3),
        ),
        fixture(
            "R-3a",
            C3a,
            CycleDrawing::new(12).inner_outer([1, 4, 8]).outer_outer([0, 2, 9]).outer_outer([3, 5, 9]),
        ),
        fixture(
            "R-3b",
            C3b,
            CycleDrawing::new(12).inner_outer([1, 4, 8]).outer_outer([0, 2, 9]).outer_outer([2, 5, 9]),
        ),
        fixture("R-4a-vx", C4aVx, four().outer_outer([0, 2, 9]).outer_outer([2, 4, 9]).inner_chord(1, 3)),
        fixture("R-4a-xz", C4aXz, four().outer_outer([0, 2, 9]).outer_outer([2, 4, 9]).inner_chord(3, 5)),
        fixture("R-4b-vy", C4bVy, four().outer_outer([0, 2, 9]).outer_outer([3, 5, 9]).inner_chord(1, 4)),
        fixture("R-4b-wy", C4bWy, four().outer_outer([0, 2, 9]).outer_outer([3, 5, 9]).inner_chord(2, 4)),
        fixture("R-4c-vy", C4cVy, four().outer_outer([0, 3, 9]).outer_outer([3, 5, 9]).inner_chord(1, 4)),
        fixture("R-4c-wy", C4cWy, four().outer_outer([0, 3, 9]).outer_outer([3, 5, 9]).inner_chord(2, 4)),
        fixture("R-4d", C4d, four().outer_outer([1, 3, 9]).outer_outer([3, 5, 9]).inner_chord(2, 4)),
        fixture("R-5-vx", C5Vx, five().inner_chord(1, 3)),
        fixture("R-5-xz", C5Xz, five().inner_chord(1, 5).inner_chord(3, 5)),
    ]
}
