//! Text and SVG pictures of grid diagrams.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::grid::{GridState, VertList};
use crate::winding::w_matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RenderOptions {
    /// Write winding numbers at the lattice points (SVG only).
    pub winding: bool,
}

pub fn render(
    v: &VertList,
    state: Option<&GridState>,
    format: Format,
    options: RenderOptions,
) -> Result<String> {
    if let Some(x) = state {
        if x.size() != v.size() {
            return Err(Error::SizeMismatch {
                expected: v.size(),
                got: x.size(),
            });
        }
    }
    Ok(match format {
        Format::Ascii => ascii(v, state),
        Format::Svg => svg(v, state, options),
    })
}

/// Column span `(a, b)` of the horizontal segment in each row.
fn row_spans(v: &VertList) -> Vec<(usize, usize)> {
    v.to_horzlist()
        .segments()
        .iter()
        .map(|s| s.span())
        .collect()
}

/// `2n + 1` lines of `2n + 1` characters. Even lines and even positions are
/// lattice lines; cells sit at odd positions. Vertical strokes are drawn over
/// horizontal ones, as in a grid diagram.
pub fn ascii(v: &VertList, state: Option<&GridState>) -> String {
    let n = v.size();
    let rows = row_spans(v);
    let mut out = String::with_capacity((2 * n + 2) * (2 * n + 1));
    for line in 0..=2 * n {
        for pos in 0..=2 * n {
            let ch = match (line % 2, pos % 2) {
                (0, 0) => {
                    let (i, j) = (line / 2, pos / 2);
                    if state.is_some_and(|x| j < n && x.row(j) == i) {
                        '*'
                    } else {
                        '+'
                    }
                }
                (0, _) => {
                    let (i, c) = (line / 2, pos / 2);
                    let (lo, hi) = v.segment(c).span();
                    if lo < i && i <= hi {
                        '|'
                    } else {
                        ' '
                    }
                }
                (_, 0) => {
                    let (r, j) = (line / 2, pos / 2);
                    let (a, b) = rows[r];
                    if a < j && j <= b {
                        '-'
                    } else {
                        ' '
                    }
                }
                _ => {
                    let (r, c) = (line / 2, pos / 2);
                    let s = v.segment(c);
                    let (lo, hi) = s.span();
                    let (a, b) = rows[r];
                    if r == s.head() {
                        'X'
                    } else if r == s.tail() {
                        'O'
                    } else if lo < r && r < hi {
                        '|'
                    } else if a < c && c < b {
                        '-'
                    } else {
                        ' '
                    }
                }
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

const CELL: usize = 40;
const MARGIN: usize = 20;

pub fn svg(v: &VertList, state: Option<&GridState>, options: RenderOptions) -> String {
    let n = v.size();
    let side = n * CELL + 2 * MARGIN;
    let at = |k: usize| MARGIN + k * CELL;
    let mid = |k: usize| MARGIN + k * CELL + CELL / 2;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
    );
    s.push_str("<g class=\"lattice\" stroke=\"#ccc\" stroke-width=\"1\">\n");
    for k in 0..=n {
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            at(0),
            at(k),
            at(n),
            at(k)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            at(k),
            at(0),
            at(k),
            at(n)
        );
    }
    s.push_str("</g>\n<g class=\"knot\" stroke=\"#000\" stroke-width=\"2\">\n");
    for (r, (a, b)) in row_spans(v).into_iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            mid(a),
            mid(r),
            mid(b),
            mid(r)
        );
    }
    for (c, seg) in v.segments().iter().enumerate() {
        let (lo, hi) = seg.span();
        // White halo so vertical strands read as passing over.
        let _ = writeln!(
            s,
            r##"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="#fff" stroke-width="6"/>"##,
            mid(lo) + 10,
            mid(hi) - 10,
            x = mid(c)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#,
            mid(lo),
            mid(hi),
            x = mid(c)
        );
    }
    s.push_str("</g>\n<g class=\"markers\" font-family=\"sans-serif\" font-size=\"20\" text-anchor=\"middle\" dominant-baseline=\"central\">\n");
    for (c, seg) in v.segments().iter().enumerate() {
        for (row, label) in [(seg.head(), 'X'), (seg.tail(), 'O')] {
            let _ = writeln!(
                s,
                r##"<rect x="{}" y="{}" width="24" height="24" fill="#fff"/><text class="marker" x="{}" y="{}">{label}</text>"##,
                mid(c) - 12,
                mid(row) - 12,
                mid(c),
                mid(row)
            );
        }
    }
    s.push_str("</g>\n");
    if options.winding {
        let m = w_matrix(v);
        s.push_str(
            "<g class=\"winding\" fill=\"#999\" font-family=\"sans-serif\" font-size=\"11\">\n",
        );
        for i in 0..=n {
            for j in 0..=n {
                let w = if i < n && j < n { m.get(i, j) } else { 0 };
                let _ = writeln!(s, r#"<text x="{}" y="{}">{w}</text>"#, at(j) + 3, at(i) - 3);
            }
        }
        s.push_str("</g>\n");
    }
    if let Some(x) = state {
        s.push_str("<g class=\"state\" fill=\"#c00\">\n");
        for c in 0..n {
            let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="5"/>"#, at(c), at(x.row(c)));
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> VertList {
        "(3,1),(4,2),(5,3),(1,4),(2,5)".parse().unwrap()
    }

    #[test]
    fn unknot_ascii() {
        let v: VertList = "(2,1),(1,2)".parse().unwrap();
        let text = ascii(&v, Some(&GridState::identity(2)));
        let want = ["* + +", " X-O ", "+|*|+", " O-X ", "+ + +"];
        assert_eq!(text.lines().collect::<Vec<_>>(), want);
    }

    #[test]
    fn trefoil_marker_counts() {
        let text = ascii(&trefoil(), None);
        assert_eq!(text.lines().count(), 11);
        assert_eq!(text.matches('X').count(), 5);
        assert_eq!(text.matches('O').count(), 5);
        assert_eq!(text.matches('*').count(), 0);
    }

    #[test]
    fn state_points_one_per_line() {
        let x = GridState::from_one_based(&[2, 4, 1, 5, 3]).unwrap();
        let text = ascii(&trefoil(), Some(&x));
        let lines: Vec<&str> = text.lines().collect();
        for (c, &r) in x.as_slice().iter().enumerate() {
            assert_eq!(lines[2 * r].as_bytes()[2 * c], b'*');
        }
        assert_eq!(text.matches('*').count(), 5);
    }

    #[test]
    fn svg_is_well_formed() {
        let x = GridState::identity(5);
        let text = render(
            &trefoil(),
            Some(&x),
            Format::Svg,
            RenderOptions { winding: true },
        )
        .unwrap();
        let doc = roxmltree::Document::parse(&text).unwrap();
        let markers = doc
            .descendants()
            .filter(|n| n.attribute("class") == Some("marker"))
            .count();
        assert_eq!(markers, 10);
        let dots = doc
            .descendants()
            .filter(|n| n.has_tag_name("circle"))
            .count();
        assert_eq!(dots, 5);
    }

    #[test]
    fn size_mismatch() {
        assert!(render(
            &trefoil(),
            Some(&GridState::identity(3)),
            Format::Ascii,
            RenderOptions::default()
        )
        .is_err());
    }
}
