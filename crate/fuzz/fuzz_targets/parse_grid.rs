#![no_main]

use libfuzzer_sys::fuzz_target;
use qwalk::{AngleUnit, Grid};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    for unit in [AngleUnit::Degrees, AngleUnit::Radians] {
        if let Ok(grid) = Grid::parse(s, unit) {
            let n = grid.len();
            assert!((1..=qwalk::table::MAX_GRID_POINTS + 1).contains(&n));
            let mut values = grid.values();
            assert_eq!(values.next(), Some(grid.start));
        }
    }
});
