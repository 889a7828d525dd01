//! Deterministic SVG rendering of embeddings: family-colored point glyphs,
//! weight labels, and an optional highlighted optimal start-to-end chain.
//!
//! Every glyph carries machine-readable `data-*` attributes so tests can
//! parse the output instead of eyeballing it.

use crate::chain::max_weight_chain_between_with_path;
use crate::embedding::{Embedding, Family, PointLabel};
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    /// draw the weight next to each point
    pub show_weights: bool,
    /// highlight the optimal chain from start `j` to end `j`
    pub highlight_column: Option<usize>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 900,
            height: 900,
            show_weights: true,
            highlight_column: None,
        }
    }
}

fn family_color(family: Family) -> &'static str {
    match family {
        Family::L => "#5b8def",
        Family::Lp => "#9467bd",
        Family::R => "#2ca02c",
        Family::A => "#d62728",
        Family::Ap => "#ff7f0e",
        Family::B => "#17becf",
    }
}

/// Renders `emb` to a standalone SVG document. Output is a pure function of
/// the embedding and the options.
pub fn render_embedding(emb: &Embedding, opts: &RenderOptions) -> Result<String> {
    let points = emb.points();
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
    for p in points {
        min_x = min_x.min(p.x);
        max_x = max_x.max(p.x);
        min_y = min_y.min(p.y);
        max_y = max_y.max(p.y);
    }
    let margin = 40.0;
    let span = |lo: i64, hi: i64| ((hi - lo).max(1)) as f64;
    let sx = (opts.width as f64 - 2.0 * margin) / span(min_x, max_x);
    let sy = (opts.height as f64 - 2.0 * margin) / span(min_y, max_y);
    // SVG y grows downward; the embedding's y grows upward
    let place = |x: i64, y: i64| {
        (
            margin + (x - min_x) as f64 * sx,
            opts.height as f64 - margin - (y - min_y) as f64 * sy,
        )
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" \
         viewBox=\"0 0 {} {}\" data-n=\"{}\" data-multiplier=\"{}\">\n",
        opts.width, opts.height, opts.width, opts.height,
        emb.n(),
        emb.multiplier()
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    if let Some(j) = opts.highlight_column {
        let start = emb.special_point(PointLabel::start(j))?;
        let end = emb.special_point(PointLabel::end(j))?;
        let (weight, path) = max_weight_chain_between_with_path(points, start, end)?;
        let coords: Vec<String> = path
            .iter()
            .map(|p| {
                let (cx, cy) = place(p.x, p.y);
                format!("{cx:.2},{cy:.2}")
            })
            .collect();
        let from = path.first().and_then(|p| p.label).expect("endpoints are labeled");
        let to = path.last().and_then(|p| p.label).expect("endpoints are labeled");
        svg.push_str(&format!(
            "<polyline class=\"chain\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2.5\" \
             data-from=\"{from}\" data-to=\"{to}\" data-weight=\"{weight}\" points=\"{}\"/>\n",
            coords.join(" ")
        ));
    }

    let mut sorted: Vec<_> = points.iter().collect();
    sorted.sort_by_key(|p| p.x);
    for p in sorted {
        let label = p.label.expect("embedding points are labeled");
        let (cx, cy) = place(p.x, p.y);
        let special = matches!(label.family, Family::A | Family::Ap | Family::B);
        let radius = if special { 5.0 } else { 3.5 };
        svg.push_str(&format!(
            "<circle class=\"point family-{}\" cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{radius}\" \
             fill=\"{}\" data-family=\"{}\" data-i=\"{}\" data-j=\"{}\" data-x=\"{}\" data-y=\"{}\" data-w=\"{}\"/>\n",
            label.family,
            family_color(label.family),
            label.family,
            label.i,
            label.j,
            p.x,
            p.y,
            p.w
        ));
        if opts.show_weights {
            svg.push_str(&format!(
                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"9\" fill=\"#333\">{}</text>\n",
                cx + 5.0,
                cy - 4.0,
                p.w
            ));
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::build_embedding;
    use crate::model::Matrix;

    #[test]
    fn glyph_count_matches_point_count() {
        let emb = build_embedding(&Matrix::zero(1, 1), &[1], 1).unwrap();
        let svg = render_embedding(&emb, &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 6);
    }

    #[test]
    fn highlighted_chain_carries_oracle_weight() {
        let emb = build_embedding(&Matrix::zero(4, 1), &[1, 0, 1, 0], 1).unwrap();
        let opts = RenderOptions {
            highlight_column: Some(1),
            ..RenderOptions::default()
        };
        let svg = render_embedding(&emb, &opts).unwrap();
        assert!(svg.contains("data-from=\"A -1 1\""));
        assert!(svg.contains("data-to=\"Ap -1 1\""));
        let expect = crate::chain::closed_form_c(
            &emb,
            crate::chain::FormulaCase::StartToEnd { j: 1 },
        )
        .unwrap();
        assert!(svg.contains(&format!("data-weight=\"{expect}\"")));
    }

    #[test]
    fn rendering_is_deterministic() {
        let emb = build_embedding(&Matrix::identity_boolean(3), &[0, 1, 1], 1).unwrap();
        let opts = RenderOptions {
            highlight_column: Some(0),
            ..RenderOptions::default()
        };
        let first = render_embedding(&emb, &opts).unwrap();
        let second = render_embedding(&emb, &opts).unwrap();
        assert_eq!(first, second);
    }
}
