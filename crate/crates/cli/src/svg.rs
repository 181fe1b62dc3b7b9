//! Just enough SVG for line plots with ticks.

use std::collections::BTreeSet;
use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;

pub struct Plot {
    x_max: f64,
    y_max: f64,
    body: String,
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Plot {
    pub fn new(x_max: f64, y_max: f64, x_label: &str, y_label: &str) -> Self {
        let mut plot = Plot {
            x_max,
            y_max,
            body: String::new(),
        };
        let (x0, y0) = plot.at(0.0, 0.0);
        let (x1, _) = plot.at(x_max, 0.0);
        let (_, y1) = plot.at(0.0, y_max);
        let _ = writeln!(
            plot.body,
            r#"<path d="M{x0:.1},{y0:.1} H{x1:.1} M{x0:.1},{y0:.1} V{y1:.1}" stroke="black" fill="none"/>"#
        );
        plot.text(x1 + 8.0, y0 + 4.0, x_label, "start");
        plot.text(x0, y1 - 12.0, y_label, "middle");
        plot
    }

    fn at(&self, x: f64, y: f64) -> (f64, f64) {
        let px = MARGIN + x / self.x_max * (WIDTH - 2.0 * MARGIN);
        let py = HEIGHT - MARGIN - y / self.y_max * (HEIGHT - 2.0 * MARGIN);
        (px, py)
    }

    fn text(&mut self, x: f64, y: f64, text: &str, anchor: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{x:.1}" y="{y:.1}" font-size="12" text-anchor="{anchor}">{}</text>"#,
            escape(text)
        );
    }

    pub fn x_tick(&mut self, x: f64, label: &str) {
        let (px, py) = self.at(x, 0.0);
        let _ = writeln!(self.body, r#"<path d="M{px:.1},{:.1} V{:.1}" stroke="black"/>"#, py - 4.0, py + 4.0);
        self.text(px, py + 18.0, label, "middle");
    }

    pub fn y_tick(&mut self, y: f64, label: &str) {
        let (px, py) = self.at(0.0, y);
        let _ = writeln!(self.body, r#"<path d="M{:.1},{py:.1} H{:.1}" stroke="black"/>"#, px - 4.0, px + 4.0);
        self.text(px - 8.0, py + 4.0, label, "end");
    }

    pub fn line(&mut self, points: &[(f64, f64)], width: f64) {
        if points.len() < 2 {
            return;
        }
        let mut d = String::new();
        for (i, &(x, y)) in points.iter().enumerate() {
            let (px, py) = self.at(x, y);
            let _ = write!(d, "{}{px:.2},{py:.2}", if i == 0 { "M" } else { " L" });
        }
        let _ = writeln!(self.body, r#"<path d="{d}" stroke="black" stroke-width="{width}" fill="none"/>"#);
    }

    /// Small dots, one per distinct pixel position.
    pub fn dots(&mut self, points: &[(f64, f64)], colour: &str) {
        let pixels: BTreeSet<(i64, i64)> = points
            .iter()
            .map(|&(x, y)| {
                let (px, py) = self.at(x, y);
                ((px * 2.0).round() as i64, (py * 2.0).round() as i64)
            })
            .collect();
        for (px, py) in pixels {
            let _ = writeln!(
                self.body,
                r#"<circle cx="{:.1}" cy="{:.1}" r="1.2" fill="{colour}"/>"#,
                px as f64 / 2.0,
                py as f64 / 2.0
            );
        }
    }

    pub fn caption(&mut self, text: &str) {
        self.text(WIDTH / 2.0, HEIGHT - 12.0, text, "middle");
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}
