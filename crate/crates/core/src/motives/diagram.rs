//! Node-and-arc pictures of a motive: one node per Tate class placed by
//! degree, one chain per summand.
//!
//! Classes of equal degree stack upward in summand order. Chains of
//! summands 0, 2, 4, … arc below the baseline and 1, 3, 5, … above it.
//! All coordinates are integers so output is byte-stable.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{profile, MotiveError, MotiveExpr, SummandKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramFormat {
    Ascii,
    Svg,
}

impl FromStr for DiagramFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ascii" => Ok(DiagramFormat::Ascii),
            "svg" => Ok(DiagramFormat::Svg),
            other => Err(format!("unknown diagram format {other:?} (expected ascii or svg)")),
        }
    }
}

const MARGIN: i64 = 30;
const PITCH: i64 = 40;
const NODE_R: i64 = 4;
const STACK: i64 = 14;
const LABEL_GAP: i64 = 12;

struct Chain {
    label: Option<String>,
    /// `(degree, level)` in degree order
    nodes: Vec<(usize, usize)>,
    above: bool,
}

struct Layout {
    counts: Vec<u64>,
    chains: Vec<Chain>,
}

fn layout(e: &MotiveExpr) -> Result<Layout, MotiveError> {
    let p = profile(e);
    if p.is_empty() {
        return Err(MotiveError::EmptyExpression);
    }
    if let Some(d) = p.first_gap() {
        return Err(MotiveError::GapInProfile(d));
    }
    let mut next = vec![0usize; p.counts().len()];
    let mut chains = Vec::new();
    for (idx, s) in e.summands.iter().enumerate() {
        let nodes: Vec<(usize, usize)> = s
            .degrees()
            .into_iter()
            .map(|d| {
                let d = d as usize;
                next[d] += 1;
                (d, next[d] - 1)
            })
            .collect();
        if nodes.is_empty() {
            continue;
        }
        let label = (s.kind != SummandKind::Tate).then(|| s.label());
        chains.push(Chain { label, nodes, above: idx % 2 == 1 });
    }
    Ok(Layout { counts: p.counts().to_vec(), chains })
}

pub fn render_diagram(e: &MotiveExpr, format: DiagramFormat) -> Result<String, MotiveError> {
    let l = layout(e)?;
    Ok(match format {
        DiagramFormat::Ascii => ascii(&l),
        DiagramFormat::Svg => svg(&l),
    })
}

fn ascii(l: &Layout) -> String {
    let label_w = l.chains.iter().filter_map(|c| c.label.as_ref()).map(|s| s.chars().count()).max().unwrap_or(0).max(6) + 2;
    let degrees = l.counts.len();
    let col = |d: usize| label_w + 3 * d + 2;
    let width = col(degrees - 1) + 1;
    let mut out = String::new();
    let mut header = format!("{:<label_w$}", "degree");
    for d in 0..degrees {
        write!(header, "{d:>3}").expect("string write");
    }
    out.push_str(header.trim_end());
    out.push('\n');
    let height = *l.counts.iter().max().expect("nonempty") as usize;
    for level in (0..height).rev() {
        let mut row = vec![' '; width];
        for (d, &c) in l.counts.iter().enumerate() {
            if c as usize > level {
                row[col(d)] = '*';
            }
        }
        out.push_str(row.iter().collect::<String>().trim_end());
        out.push('\n');
    }
    for chain in &l.chains {
        let Some(label) = &chain.label else { continue };
        let mut row = vec![' '; width];
        for (i, ch) in label.chars().enumerate() {
            row[i] = ch;
        }
        let (first, last) = (chain.nodes[0].0, chain.nodes[chain.nodes.len() - 1].0);
        for cell in row.iter_mut().take(col(last)).skip(col(first)) {
            *cell = '-';
        }
        for &(d, _) in &chain.nodes {
            let mult = chain.nodes.iter().filter(|n| n.0 == d).count();
            row[col(d)] = if mult == 1 { 'o' } else { char::from_digit(mult as u32, 10).unwrap_or('#') };
        }
        out.push_str(row.iter().collect::<String>().trim_end());
        out.push('\n');
    }
    out
}

fn arc_height(d1: usize, d2: usize) -> i64 {
    10 + 6 * (d2 as i64 - d1 as i64)
}

fn svg(l: &Layout) -> String {
    let degrees = l.counts.len() as i64;
    let stack = *l.counts.iter().max().expect("nonempty") as i64 - 1;
    let span = |c: &Chain| arc_height(c.nodes[0].0, c.nodes[c.nodes.len() - 1].0);
    let max_above = l.chains.iter().filter(|c| c.above).map(span).max().unwrap_or(0);
    let max_below = l.chains.iter().filter(|c| !c.above).map(span).max().unwrap_or(0);
    let top = MARGIN + max_above + LABEL_GAP + stack * STACK;
    let width = 2 * MARGIN + PITCH * (degrees - 1);
    let height = top + max_below + LABEL_GAP + MARGIN;
    let pos = |(d, level): (usize, usize)| (MARGIN + PITCH * d as i64, top - STACK * level as i64);

    let mut out = String::new();
    let w = &mut out;
    writeln!(w, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#)
        .expect("string write");
    writeln!(w, r#"  <g class="chains" fill="none" stroke="black" stroke-width="1">"#).expect("string write");
    for chain in &l.chains {
        if chain.nodes.len() < 2 {
            continue;
        }
        let sign = if chain.above { -1 } else { 1 };
        let (x0, y0) = pos(chain.nodes[0]);
        let mut d = format!("M {x0} {y0}");
        for pair in chain.nodes.windows(2) {
            let ((x1, y1), (x2, y2)) = (pos(pair[0]), pos(pair[1]));
            let h = arc_height(pair[0].0, pair[1].0);
            let (cx, cy) = if x1 == x2 { (x1 + 2 * h, (y1 + y2) / 2) } else { ((x1 + x2) / 2, (y1 + y2) / 2 + sign * 2 * h) };
            write!(d, " Q {cx} {cy} {x2} {y2}").expect("string write");
        }
        let name = chain.label.as_deref().unwrap_or("");
        writeln!(w, r#"    <path d="{d}" data-summand="{name}"/>"#).expect("string write");
    }
    writeln!(w, "  </g>").expect("string write");
    writeln!(w, r#"  <g class="nodes" fill="black">"#).expect("string write");
    for (d, &c) in l.counts.iter().enumerate() {
        for level in 0..c as usize {
            let (x, y) = pos((d, level));
            writeln!(w, r#"    <circle cx="{x}" cy="{y}" r="{NODE_R}"/>"#).expect("string write");
        }
    }
    writeln!(w, "  </g>").expect("string write");
    writeln!(w, r#"  <g class="labels" font-family="serif" font-size="11" text-anchor="middle">"#).expect("string write");
    for chain in &l.chains {
        let Some(label) = &chain.label else { continue };
        let (xa, _) = pos(chain.nodes[0]);
        let (xb, _) = pos(chain.nodes[chain.nodes.len() - 1]);
        let h = span(chain);
        let y = if chain.above { top - stack * STACK - h - LABEL_GAP / 2 } else { top + h + LABEL_GAP };
        let x = (xa + xb) / 2;
        writeln!(w, r#"    <text x="{x}" y="{y}">{label}</text>"#).expect("string write");
    }
    writeln!(w, "  </g>").expect("string write");
    writeln!(w, "</svg>").expect("string write");
    out
}

#[cfg(test)]
mod tests {
    use super::super::{decompose_neighbour_quadric, decompose_xj, Summand};
    use super::*;

    #[test]
    fn neighbour_quadric_ascii() {
        let e = decompose_neighbour_quadric(2, 4).unwrap();
        let text = render_diagram(&e, DiagramFormat::Ascii).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + 1 + 5);
        assert_eq!(lines[1].matches('*').count(), 12);
        assert!(lines[2].starts_with("F^2_4 "));
        assert_eq!(lines[6].matches('o').count(), 2);
    }

    #[test]
    fn svg_counts() {
        let e = decompose_neighbour_quadric(2, 4).unwrap();
        let s = render_diagram(&e, DiagramFormat::Svg).unwrap();
        assert_eq!(s.matches("<circle").count(), 12);
        assert_eq!(s.matches("<path").count(), 5);
        assert_eq!(s.matches("<text").count(), 5);
        let s = render_diagram(&decompose_xj(3, 3).unwrap(), DiagramFormat::Svg).unwrap();
        assert_eq!(s.matches("<circle").count(), 24);
        assert_eq!(s.matches("<path").count(), 12);
    }

    #[test]
    fn single_tate_node() {
        let e = MotiveExpr::new(vec![Summand::tate(0)]);
        let s = render_diagram(&e, DiagramFormat::Svg).unwrap();
        assert_eq!(s.matches("<circle").count(), 1);
        assert_eq!(s.matches("<path").count(), 0);
        assert_eq!(s.matches("<text").count(), 0);
    }

    #[test]
    fn errors() {
        assert_eq!(render_diagram(&MotiveExpr::default(), DiagramFormat::Ascii), Err(MotiveError::EmptyExpression));
        let gap = MotiveExpr::new(vec![Summand::tate(0), Summand::tate(2)]);
        assert_eq!(render_diagram(&gap, DiagramFormat::Svg), Err(MotiveError::GapInProfile(1)));
    }
}
