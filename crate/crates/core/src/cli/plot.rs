use std::fmt::Write;

use crate::charge::{ChargeError, ChargeTriple, Complex};
use crate::mf::display_name;
use crate::stab::PathDoc;

/// Pixels per unit of charge.
pub const SCALE: f64 = 150.0;
pub const SIZE: u32 = 500;
const LABEL_GAP: f64 = 16.0;

/// `-0.00` never appears, so output depends only on the rounded value.
fn num(x: f64) -> String {
    let s = format!("{:.2}", x);
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn point(z: &Complex) -> (f64, f64) {
    let (re, im) = z.to_f64();
    let c = SIZE as f64 / 2.0;
    (c + SCALE * re, c - SCALE * im)
}

/// Charge-plane figure: axes, the origin marker, one labeled vector per
/// object in id order, and each moving lattice charge of `path` as a dotted
/// polyline starting from the triple's own value.
pub fn render_svg(r: &ChargeTriple, path: Option<&PathDoc>) -> Result<String, ChargeError> {
    let c = num(SIZE as f64 / 2.0);
    let size = SIZE;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}" font-family="monospace" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{size}" height="{size}" fill="white"/>"#);
    let _ = writeln!(s, r#"<line class="axis" x1="0" y1="{c}" x2="{size}" y2="{c}" stroke="gray" stroke-width="1"/>"#);
    let _ = writeln!(s, r#"<line class="axis" x1="{c}" y1="0" x2="{c}" y2="{size}" stroke="gray" stroke-width="1"/>"#);
    if let Some(p) = path {
        for i in 0..r.z.len() {
            let pts: Vec<(f64, f64)> =
                std::iter::once(&r.z[i]).chain(p.samples.iter().filter_map(|z| z.get(i))).map(point).collect();
            if pts.windows(2).all(|w| num(w[0].0) == num(w[1].0) && num(w[0].1) == num(w[1].1)) {
                continue;
            }
            let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{},{}", num(*x), num(*y))).collect();
            let _ = writeln!(
                s,
                r#"<polyline class="path" points="{}" fill="none" stroke="blue" stroke-width="1" stroke-dasharray="2 3"/>"#,
                coords.join(" ")
            );
        }
    }
    for id in r.v.keys() {
        let z = r.charge(id)?;
        let (x, y) = point(&z);
        let (dx, dy) = (x - SIZE as f64 / 2.0, y - SIZE as f64 / 2.0);
        let len = (dx * dx + dy * dy).sqrt();
        let (lx, ly) = if len > 0.0 { (x + LABEL_GAP * dx / len, y + LABEL_GAP * dy / len) } else { (x, y - LABEL_GAP) };
        let _ = writeln!(
            s,
            r#"<line class="charge" x1="{c}" y1="{c}" x2="{}" y2="{}" stroke="black" stroke-width="1.5"/>"#,
            num(x),
            num(y)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
            num(lx),
            num(ly),
            display_name(id)
        );
    }
    let _ = writeln!(s, r#"<circle class="pillar" cx="{c}" cy="{c}" r="4" fill="black"/>"#);
    s.push_str("</svg>\n");
    Ok(s)
}
