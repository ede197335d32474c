//! The slice chart: stem on the horizontal axis, slice filtration on the vertical one.
//!
//! Every nonzero slice of `HM` sits at stem 0, filtration `p^k - 1`, and is labeled by the
//! groups of its Mackey functor from `G/e` upward. Text and SVG are drawn from the same
//! [`Layout`].

use std::fmt::Write;

use mackey_core::slice::SliceTower;

use crate::Style;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marker {
    pub stem: i64,
    pub filtration: u64,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct Layout {
    pub title: String,
    /// the axis runs from 0 to `|G| - 1`
    pub top: u64,
    pub markers: Vec<Marker>,
}

/// Text charts print every row up to this height, and only marker rows above it.
const FULL_ROWS: u64 = 40;

impl Layout {
    pub fn from_tower(name: &str, t: &SliceTower) -> Self {
        let spec = t.base.spec();
        let markers = t
            .entries
            .iter()
            .map(|e| Marker { stem: 0, filtration: e.dim, label: format!("({})", e.layer.level_strings().join(", ")) })
            .collect();
        Layout { title: format!("slice chart of {name} over {spec}"), top: spec.order() - 1, markers }
    }

    fn marker_at(&self, f: u64) -> Option<&Marker> {
        self.markers.iter().find(|m| m.filtration == f)
    }

    pub fn text(&self, style: Style) -> String {
        let w = self.top.to_string().len();
        let mut out = format!("{}\n{:>w$} ^ filtration\n", style.bold(&self.title), "");
        let row = |out: &mut String, f: u64| match self.marker_at(f) {
            Some(m) => writeln!(out, "{f:>w$} | {}  {}", style.green("●"), m.label).expect("write to string"),
            None => writeln!(out, "{f:>w$} |").expect("write to string"),
        };
        if self.top <= FULL_ROWS {
            for f in (0..=self.top).rev() {
                row(&mut out, f);
            }
        } else {
            let mut rows: Vec<u64> = self.markers.iter().map(|m| m.filtration).collect();
            rows.push(self.top);
            rows.sort_unstable();
            rows.dedup();
            for (i, &f) in rows.iter().enumerate().rev() {
                row(&mut out, f);
                if i > 0 && rows[i - 1] + 1 < f {
                    writeln!(out, "{:>w$} ⋮", "").expect("write to string");
                }
            }
        }
        writeln!(out, "{:>w$} +-----> stem", "").expect("write to string");
        writeln!(out, "{:>w$}   0", "").expect("write to string");
        out
    }

    pub fn svg(&self) -> String {
        const LEFT: u64 = 60;
        const TOP: u64 = 40;
        const PLOT_H: u64 = 320;
        const STEM_X: u64 = LEFT + 40;
        const LABEL_X: u64 = STEM_X + 40;
        const LABEL_GAP: u64 = 18;
        let longest = self.markers.iter().map(|m| m.label.chars().count() as u64).max().unwrap_or(0);
        let width = LABEL_X + 8 * longest + 40;
        let height = TOP + PLOT_H + 60;
        let scale = self.top.max(1);
        let y_of = |f: u64| TOP + PLOT_H - f * PLOT_H / scale;

        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="12">"#
        )
        .expect("write to string");
        writeln!(out, r#"<text x="{LEFT}" y="20">{}</text>"#, escape(&self.title)).expect("write to string");
        let base = y_of(0);
        writeln!(out, r#"<line x1="{LEFT}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#, STEM_X + 20)
            .expect("write to string");
        writeln!(out, r#"<line x1="{LEFT}" y1="{base}" x2="{LEFT}" y2="{}" stroke="black"/>"#, TOP - 10)
            .expect("write to string");
        writeln!(out, r#"<text x="{STEM_X}" y="{}" text-anchor="middle">0</text>"#, base + 16)
            .expect("write to string");
        writeln!(out, r#"<text x="{}" y="{}">stem</text>"#, STEM_X + 24, base + 4).expect("write to string");
        writeln!(out, r#"<text x="{}" y="{}">filtration</text>"#, LEFT - 30, TOP - 16).expect("write to string");

        // labels climb when markers crowd together
        let mut last_label_y: Option<u64> = None;
        for m in &self.markers {
            let y = y_of(m.filtration);
            let ly = match last_label_y {
                Some(prev) if prev < y + LABEL_GAP => prev.saturating_sub(LABEL_GAP),
                _ => y,
            };
            last_label_y = Some(ly);
            writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, LEFT - 6, y + 4, m.filtration)
                .expect("write to string");
            writeln!(out, r#"<circle cx="{STEM_X}" cy="{y}" r="5" fill="black"/>"#).expect("write to string");
            if ly != y {
                writeln!(out, r#"<line x1="{STEM_X}" y1="{y}" x2="{}" y2="{ly}" stroke="gray"/>"#, LABEL_X - 4)
                    .expect("write to string");
            }
            writeln!(out, r#"<text x="{LABEL_X}" y="{}">{}</text>"#, ly + 4, escape(&m.label))
                .expect("write to string");
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
