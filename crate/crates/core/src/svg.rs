//! A minimal SVG writer: rectangles, paths, lines and text.
//!
//! Output depends only on the calls made, and every coordinate is printed
//! with three decimals, so identical input gives byte-identical files.

use std::fmt::Write;

#[derive(Debug, Clone)]
pub struct SvgDocument {
    width: f64,
    height: f64,
    body: String,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

impl SvgDocument {
    pub fn new(width: f64, height: f64) -> Self {
        SvgDocument {
            width,
            height,
            body: String::new(),
        }
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str, stroke: Option<&str>) {
        let _ = write!(
            self.body,
            r#"<rect x="{x:.3}" y="{y:.3}" width="{w:.3}" height="{h:.3}" fill="{fill}""#
        );
        if let Some(s) = stroke {
            let _ = write!(self.body, r#" stroke="{s}" stroke-width="1""#);
        }
        self.body.push_str("/>\n");
    }

    /// A filled path from `d`, with an optional `data-label` attribute.
    pub fn path(&mut self, d: &str, fill: &str, label: Option<&str>) {
        let _ = write!(self.body, r#"<path d="{d}" fill="{fill}" stroke="none""#);
        if let Some(l) = label {
            let _ = write!(self.body, r#" data-label="{}""#, escape(l));
        }
        self.body.push_str("/>\n");
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{stroke}" stroke-width="1"/>"#
        );
    }

    pub fn text(&mut self, x: f64, y: f64, size: f64, anchor: &str, content: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{x:.3}" y="{y:.3}" font-family="sans-serif" font-size="{size:.1}" text-anchor="{anchor}">{}</text>"#,
            escape(content)
        );
    }

    pub fn finish(self) -> String {
        format!(
            concat!(
                r#"<?xml version="1.0" encoding="UTF-8"?>"#,
                "\n",
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#,
                "\n{body}</svg>\n"
            ),
            w = self.width,
            h = self.height,
            body = self.body
        )
    }
}

/// Appends an axis-aligned rectangle as a closed subpath.
pub fn push_rect(d: &mut String, x: f64, y: f64, w: f64, h: f64) {
    if !d.is_empty() {
        d.push(' ');
    }
    let _ = write!(d, "M{x:.3} {y:.3}h{w:.3}v{h:.3}h{:.3}z", -w);
}
