//! Text and SVG renderings of a mountain range.

use std::fmt::Write as _;

use legknots::classify::MountainRange;

pub fn tsv(range: &MountainRange) -> String {
    let mut out = String::new();
    for (tb, rot) in range.ordered() {
        writeln!(out, "{tb}\t{rot}").unwrap();
    }
    out
}

const CELL: i64 = 30;
const MARGIN: i64 = 40;

/// Dots at (rot, tb), rot to the right and tb up, with an arrow for every
/// stabilization that stays inside the range.
pub fn svg(range: &MountainRange) -> String {
    let pairs = &range.pairs;
    let rots = pairs.iter().map(|p| p.1);
    let tbs = pairs.iter().map(|p| p.0);
    let (rmin, rmax) = (rots.clone().min().unwrap_or(0), rots.max().unwrap_or(0));
    let (tmin, tmax) = (tbs.clone().min().unwrap_or(0), tbs.max().unwrap_or(0));
    let x = |rot: i64| MARGIN + (rot - rmin) * CELL;
    let y = |tb: i64| MARGIN + (tmax - tb) * CELL;
    let width = 2 * MARGIN + (rmax - rmin) * CELL;
    let height = 2 * MARGIN + (tmax - tmin) * CELL;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, "<title>{} (tb, rot), depth {}</title>", range.knot, range.depth).unwrap();
    out.push_str(concat!(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto">"#,
        r#"<path d="M0,0 L10,5 L0,10 z" fill="gray"/></marker></defs>"#,
        "\n"
    ));
    // arrows stop short of the target dot
    let shrink = |a: i64, b: i64| (a * 4 + b) as f64 / 5.0;
    for &(tb, rot) in pairs {
        for d in [-1, 1] {
            let to = (tb - 1, rot + d);
            if !pairs.contains(&to) {
                continue;
            }
            let (x1, y1, x2, y2) = (x(rot), y(tb), x(to.1), y(to.0));
            writeln!(
                out,
                r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="gray" marker-end="url(#arrow)"/>"#,
                shrink(x1, x2),
                shrink(y1, y2),
                shrink(x2, x1),
                shrink(y2, y1)
            )
            .unwrap();
        }
    }
    for (tb, rot) in range.ordered() {
        writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="4" fill="black"><title>tb={tb} rot={rot}</title></circle>"#,
            x(rot),
            y(tb)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
