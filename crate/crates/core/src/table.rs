//! Sweep grids and the CSV table format.
//!
//! A sweep table is plain CSV with `#` comment lines carrying `key=value`
//! metadata, a fixed header and one row per grid point:
//!
//! ```text
//! # mode=theta-sweep
//! # t=100
//! swept_deg,mean,predicted,abs_error
//! 0.0000000000000000e0,-2.8975560156371646e1,-2.8975560156371646e1,0.0000000000000000e0
//! ```
//!
//! Numbers are written with 17 significant digits, so parsing a written
//! table reproduces every value bit for bit.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const HEADER: &str = "swept_deg,mean,predicted,abs_error";

/// Grids larger than this are rejected before anything is allocated.
pub const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AngleUnit {
    Degrees,
    Radians,
}

impl AngleUnit {
    pub fn to_radians(self, v: f64) -> f64 {
        match self {
            AngleUnit::Degrees => v.to_radians(),
            AngleUnit::Radians => v,
        }
    }

    pub fn to_degrees(self, v: f64) -> f64 {
        match self {
            AngleUnit::Degrees => v,
            AngleUnit::Radians => v.to_degrees(),
        }
    }
}

impl fmt::Display for AngleUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AngleUnit::Degrees => "deg",
            AngleUnit::Radians => "rad",
        })
    }
}

/// Inclusive `start:stop:step` grid in a tagged unit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    pub unit: AngleUnit,
}

impl Grid {
    pub fn new(start: f64, stop: f64, step: f64, unit: AngleUnit) -> Result<Self> {
        let g = Self { start, stop, step, unit };
        g.validate()?;
        Ok(g)
    }

    pub fn degrees(start: f64, stop: f64, step: f64) -> Result<Self> {
        Self::new(start, stop, step, AngleUnit::Degrees)
    }

    /// Parses `start:stop:step`.
    pub fn parse(s: &str, unit: AngleUnit) -> Result<Self> {
        let fields: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = fields.as_slice() else {
            return Err(Error::InvalidSpec(format!("grid {s:?} is not of the form start:stop:step")));
        };
        let num = |name: &str, v: &str| {
            v.trim().parse::<f64>().map_err(|e| Error::InvalidSpec(format!("grid {name} {v:?}: {e}")))
        };
        Self::new(num("start", start)?, num("stop", stop)?, num("step", step)?, unit)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.step.is_finite()) {
            return Err(Error::InvalidSpec("grid bounds must be finite".into()));
        }
        if self.step <= 0.0 {
            return Err(Error::InvalidSpec(format!("grid step must be positive, got {}", self.step)));
        }
        if self.start > self.stop {
            return Err(Error::InvalidSpec(format!("grid start {} exceeds stop {}", self.start, self.stop)));
        }
        let span = (self.stop - self.start) / self.step;
        if span >= MAX_GRID_POINTS as f64 {
            return Err(Error::InvalidSpec(format!("grid has more than {MAX_GRID_POINTS} points")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        // tolerate the stop point being a few ulps short of start + n·step
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid points in the grid's own unit, `start + i·step`.
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.start + i as f64 * self.step)
    }

    pub fn step_degrees(&self) -> f64 {
        self.unit.to_degrees(self.step)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{} {}", self.start, self.stop, self.step, self.unit)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub swept_deg: f64,
    pub mean: f64,
    pub predicted: f64,
    pub abs_error: f64,
}

impl SweepRow {
    pub fn new(swept_deg: f64, mean: f64, predicted: f64) -> Self {
        Self { swept_deg, mean, predicted, abs_error: (mean - predicted).abs() }
    }

    fn bits(&self) -> [u64; 4] {
        [self.swept_deg, self.mean, self.predicted, self.abs_error].map(f64::to_bits)
    }
}

/// Rows plus ordered `key=value` metadata.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SweepTable {
    pub meta: Vec<(String, String)>,
    pub rows: Vec<SweepRow>,
}

impl PartialEq for SweepTable {
    /// Bitwise on the numbers, so NaN rows compare equal to themselves.
    fn eq(&self, other: &Self) -> bool {
        self.meta == other.meta
            && self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a.bits() == b.bits())
    }
}

impl SweepTable {
    pub fn push_meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.meta.push((key.into(), value.to_string()));
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn max_abs_error(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_error).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            writeln!(out, "# {k}={v}").unwrap();
        }
        out.push_str(HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", r.swept_deg, r.mean, r.predicted, r.abs_error)
                .unwrap();
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut table = SweepTable::default();
        let mut seen_header = false;
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if seen_header {
                    return Err(Error::Parse { line: line_no, msg: "metadata after header".into() });
                }
                let (k, v) = comment.split_once('=').unwrap_or((comment, ""));
                table.meta.push((k.trim().to_string(), v.trim().to_string()));
                continue;
            }
            if !seen_header {
                if line != HEADER {
                    return Err(Error::Parse { line: line_no, msg: format!("expected header {HEADER:?}") });
                }
                seen_header = true;
                continue;
            }
            let mut vals = [0.0; 4];
            let mut fields = line.split(',');
            for v in vals.iter_mut() {
                let field = fields
                    .next()
                    .ok_or_else(|| Error::Parse { line: line_no, msg: "expected 4 fields".into() })?;
                *v = field
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse { line: line_no, msg: format!("{field:?}: {e}") })?;
            }
            if fields.next().is_some() {
                return Err(Error::Parse { line: line_no, msg: "expected 4 fields".into() });
            }
            let [swept_deg, mean, predicted, abs_error] = vals;
            table.rows.push(SweepRow { swept_deg, mean, predicted, abs_error });
        }
        if !seen_header {
            return Err(Error::Parse { line: text.lines().count(), msg: "missing header".into() });
        }
        Ok(table)
    }
}

impl FromStr for SweepTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_csv(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn grid_parse_and_points() {
        let g = Grid::parse("0:360:1", AngleUnit::Degrees).unwrap();
        assert_eq!(g.len(), 361);
        let v: Vec<f64> = g.values().collect();
        assert_eq!(v[0], 0.0);
        assert_eq!(v[360], 360.0);

        let g = Grid::parse("0:1:0.1", AngleUnit::Radians).unwrap();
        assert_eq!(g.len(), 11);

        let g = Grid::parse(" 5 : 5 : 2 ", AngleUnit::Degrees).unwrap();
        assert_eq!(g.values().collect::<Vec<_>>(), vec![5.0]);

        let g = Grid::parse("0:10:3", AngleUnit::Degrees).unwrap();
        assert_eq!(g.values().collect::<Vec<_>>(), vec![0.0, 3.0, 6.0, 9.0]);
    }

    #[test]
    fn bad_grids() {
        for s in [
            "",
            "0:1",
            "0:1:2:3",
            "a:1:1",
            "0:1:0",
            "0:1:-1",
            "2:1:1",
            "0:inf:1",
            "0:1:nan",
            "0:1e300:1e-300",
        ] {
            assert!(matches!(Grid::parse(s, AngleUnit::Degrees), Err(Error::InvalidSpec(_))), "{s}");
        }
    }

    #[test]
    fn csv_layout() {
        let mut t = SweepTable::default();
        t.push_meta("t", 100);
        t.rows.push(SweepRow::new(90.0, 0.25, 0.5));
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("# t=100"));
        assert_eq!(lines.next(), Some(HEADER));
        assert_eq!(
            lines.next(),
            Some("9.0000000000000000e1,2.5000000000000000e-1,5.0000000000000000e-1,2.5000000000000000e-1")
        );
        assert_eq!(SweepTable::parse_csv(&csv).unwrap(), t);
    }

    #[test]
    fn csv_errors() {
        assert!(SweepTable::parse_csv("").is_err());
        assert!(SweepTable::parse_csv("# a=1\n").is_err());
        assert!(SweepTable::parse_csv("x,y\n").is_err());
        let bad_row = format!("{HEADER}\n1,2,3\n");
        assert!(matches!(SweepTable::parse_csv(&bad_row), Err(Error::Parse { line: 2, .. })));
        let extra = format!("{HEADER}\n1,2,3,4,5\n");
        assert!(SweepTable::parse_csv(&extra).is_err());
        let late_meta = format!("{HEADER}\n# a=1\n");
        assert!(SweepTable::parse_csv(&late_meta).is_err());
    }

    fn any_f64() -> impl Strategy<Value = f64> {
        prop_oneof![any::<f64>(), -1e3..1e3f64, Just(0.0), Just(-0.0), Just(f64::MIN_POSITIVE / 2.0),]
    }

    proptest! {
        #[test]
        fn csv_round_trip_is_bit_exact(
            rows in prop::collection::vec((any_f64(), any_f64(), any_f64(), any_f64()), 0..20),
            meta in prop::collection::vec(("[a-z_]{1,8}", "[ -~&&[^=]]{0,12}"), 0..4),
        ) {
            let table = SweepTable {
                meta: meta.into_iter().map(|(k, v)| (k, v.trim().to_string())).collect(),
                rows: rows
                    .into_iter()
                    .map(|(swept_deg, mean, predicted, abs_error)| SweepRow { swept_deg, mean, predicted, abs_error })
                    .collect(),
            };
            let parsed = SweepTable::parse_csv(&table.to_csv()).unwrap();
            prop_assert_eq!(parsed, table);
        }

        #[test]
        fn grid_parse_never_panics(s in "\\PC{0,24}") {
            if let Ok(g) = Grid::parse(&s, AngleUnit::Degrees) {
                prop_assert!((1..=MAX_GRID_POINTS + 1).contains(&g.len()));
            }
        }
    }
}
