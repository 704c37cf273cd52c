//! Ext rank charts and their renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::algebra::AlgebraName;
use crate::error::{Error, ParseError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtCell {
    pub s: usize,
    pub t: i32,
    pub rank: usize,
}

/// Ranks of `Ext^{s,t}` for `s <= max_s` and `t <= valid_t_max`. Cells in
/// that window not listed are zero; cells outside it are unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtChart {
    pub algebra: AlgebraName,
    #[serde(default)]
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncated_above: Option<i32>,
    #[serde(default)]
    pub min_t: i32,
    pub max_s: usize,
    pub max_t: i32,
    pub valid_t_max: i32,
    pub ranks: Vec<ExtCell>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartFormat {
    Text,
    Svg,
    Json,
}

impl FromStr for ChartFormat {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "text" => Ok(ChartFormat::Text),
            "svg" => Ok(ChartFormat::Svg),
            "json" => Ok(ChartFormat::Json),
            _ => Err(ParseError::new(s, "expected text, svg or json")),
        }
    }
}

impl ExtChart {
    /// `None` outside the computed window.
    pub fn rank(&self, s: usize, t: i32) -> Option<usize> {
        if s > self.max_s || t > self.valid_t_max {
            return None;
        }
        Some(
            self.ranks
                .iter()
                .find(|c| c.s == s && c.t == t)
                .map_or(0, |c| c.rank),
        )
    }

    /// Rank at Adams coordinates `(stem, s)`.
    pub fn rank_at_stem(&self, stem: i32, s: usize) -> Option<usize> {
        self.rank(s, stem + s as i32)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let chart: ExtChart = serde_json::from_str(text)?;
        for c in &chart.ranks {
            if c.s > chart.max_s || c.t > chart.valid_t_max {
                return Err(Error::Schema(format!(
                    "rank listed at (s={}, t={}) outside the valid window",
                    c.s, c.t
                )));
            }
            if c.rank == 0 {
                return Err(Error::Schema(format!("zero rank listed at (s={}, t={})", c.s, c.t)));
            }
        }
        Ok(chart)
    }

    pub fn render(&self, format: ChartFormat) -> String {
        match format {
            ChartFormat::Text => self.render_text(),
            ChartFormat::Svg => self.render_svg(),
            ChartFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("plain data");
                s.push('\n');
                s
            }
        }
    }

    fn stems(&self) -> std::ops::RangeInclusive<i32> {
        self.min_t..=self.max_t
    }

    /// Rows from `s = max_s` down to 0; `.` is zero and `?` unknown.
    pub fn render_text(&self) -> String {
        let width = self
            .ranks
            .iter()
            .map(|c| c.rank.to_string().len())
            .chain(self.stems().map(|n| n.to_string().len()))
            .max()
            .unwrap_or(1)
            + 1;
        let label = self.max_s.to_string().len();
        let mut out = String::new();
        let _ = writeln!(
            out,
            "Ext_{} of {} (valid for t <= {})",
            self.algebra, self.source, self.valid_t_max
        );
        for s in (0..=self.max_s).rev() {
            let _ = write!(out, "{s:>label$} |");
            for stem in self.stems() {
                let cell = match self.rank_at_stem(stem, s) {
                    None => "?".to_string(),
                    Some(0) => ".".to_string(),
                    Some(r) => r.to_string(),
                };
                let _ = write!(out, "{cell:>width$}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{:>label$} +{}", "", "-".repeat(width * self.stems().count()));
        let _ = write!(out, "{:>label$}  ", "");
        for stem in self.stems() {
            let _ = write!(out, "{stem:>width$}");
        }
        out.push('\n');
        let _ = writeln!(out, "{:>label$}  t - s", "");
        out
    }

    /// One dot per rank unit at `(t - s, s)` on a unit grid.
    pub fn render_svg(&self) -> String {
        const UNIT: i32 = 24;
        const MARGIN: i32 = 40;
        let ncols = self.stems().count() as i32;
        let nrows = self.max_s as i32 + 1;
        let width = ncols * UNIT + 2 * MARGIN;
        let height = nrows * UNIT + 2 * MARGIN;
        let x = |stem: i32| MARGIN + (stem - self.min_t) * UNIT + UNIT / 2;
        let y = |s: i32| MARGIN + (nrows - 1 - s) * UNIT + UNIT / 2;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
        );
        let _ = writeln!(out, r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#);
        let _ = writeln!(out, r##"<g stroke="#dddddd" stroke-width="1">"##);
        for c in 0..=ncols {
            let gx = MARGIN + c * UNIT;
            let _ = writeln!(out, r#"<line x1="{gx}" y1="{MARGIN}" x2="{gx}" y2="{}"/>"#, MARGIN + nrows * UNIT);
        }
        for r in 0..=nrows {
            let gy = MARGIN + r * UNIT;
            let _ = writeln!(out, r#"<line x1="{MARGIN}" y1="{gy}" x2="{}" y2="{gy}"/>"#, MARGIN + ncols * UNIT);
        }
        out.push_str("</g>\n");
        // Unknown cells are shaded.
        let _ = writeln!(out, r##"<g fill="#eeeeee">"##);
        for s in 0..nrows {
            for stem in self.stems() {
                if self.rank_at_stem(stem, s as usize).is_none() {
                    let _ = writeln!(
                        out,
                        r#"<rect x="{}" y="{}" width="{UNIT}" height="{UNIT}"/>"#,
                        x(stem) - UNIT / 2,
                        y(s) - UNIT / 2
                    );
                }
            }
        }
        out.push_str("</g>\n");
        let _ = writeln!(out, r#"<g font-family="monospace" font-size="10" text-anchor="middle">"#);
        for stem in self.stems() {
            let _ = writeln!(out, r#"<text x="{}" y="{}">{stem}</text>"#, x(stem), MARGIN + nrows * UNIT + 14);
        }
        for s in 0..nrows {
            let _ = writeln!(out, r#"<text x="{}" y="{}">{s}</text>"#, MARGIN - 12, y(s) + 4);
        }
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}">t - s</text>"#,
            MARGIN + ncols * UNIT / 2,
            height - 6
        );
        out.push_str("</g>\n<g fill=\"black\">\n");
        let mut cells = self.ranks.clone();
        cells.sort_by_key(|c| (c.t - c.s as i32, c.s));
        for c in &cells {
            let stem = c.t - c.s as i32;
            if !self.stems().contains(&stem) {
                continue;
            }
            for i in 0..c.rank {
                // Dots in a cell are spread horizontally, 6px apart.
                let dx = 6.0 * (i as f64 - (c.rank as f64 - 1.0) / 2.0);
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.1}" cy="{}" r="3"/>"#,
                    x(stem) as f64 + dx,
                    y(c.s as i32)
                );
            }
        }
        out.push_str("</g>\n</svg>\n");
        out
    }
}
