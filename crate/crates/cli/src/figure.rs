//! SVG rendering of a planar measure: atom hull in red, the one-sided
//! zonotope of the weighted atoms in blue, and the generated set's boundary
//! in purple on top, so the containment chain reads directly off the
//! layering. World coordinates map onto a fixed 1000-unit canvas with a 10%
//! margin, which keeps the text byte-stable at any scale.

use metronoid::polygon::{convex_hull, zonogon_one_sided};
use metronoid::{DiscreteMeasure, Error, Metronoid, Result, Vector};

use crate::out::JVal;

const RED: &str = "#c0392b";
const BLUE: &str = "#2d6cdf";
const PURPLE: &str = "#7d3c98";
const CANVAS: f64 = 1000.0;

struct Frame {
    x0: f64,
    y0: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: &[Vector]) -> Frame {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points {
            for i in 0..2 {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        let margin = 0.1 * extent;
        let span = extent + 2.0 * margin;
        Frame {
            x0: 0.5 * (lo[0] + hi[0]) - 0.5 * span,
            y0: 0.5 * (lo[1] + hi[1]) - 0.5 * span,
            scale: CANVAS / span,
        }
    }

    fn map(&self, p: &Vector) -> (f64, f64) {
        // SVG y grows downward.
        (
            (p[0] - self.x0) * self.scale,
            CANVAS - (p[1] - self.y0) * self.scale,
        )
    }
}

fn coord(x: f64) -> String {
    format!("{x:.4}")
}

fn polygon_tag(frame: &Frame, poly: &[Vector], color: &str, opacity: f64, width: f64) -> String {
    let points: Vec<String> = poly
        .iter()
        .map(|p| {
            let (x, y) = frame.map(p);
            format!("{},{}", coord(x), coord(y))
        })
        .collect();
    if poly.len() >= 3 {
        format!(
            "  <polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"{opacity}\" \
             stroke=\"{color}\" stroke-width=\"{width}\"/>\n",
            points.join(" ")
        )
    } else if poly.len() == 2 {
        format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{width}\"/>\n",
            points.join(" ")
        )
    } else {
        let (x, y) = frame.map(&poly[0]);
        format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"6\" fill=\"{color}\"/>\n",
            coord(x),
            coord(y)
        )
    }
}

pub fn figure_svg(mu: &DiscreteMeasure, config: &JVal) -> Result<String> {
    if mu.dim() != 2 {
        return Err(Error::InvalidParam(format!(
            "figure rendering is planar only, got dimension {}",
            mu.dim()
        )));
    }
    let atoms: Vec<Vector> = mu.atoms().iter().map(|(x, _)| x.clone()).collect();
    let hull = convex_hull(&atoms)?;
    let weighted: Vec<Vector> = mu.atoms().iter().map(|(x, w)| x.scale(*w)).collect();
    let zonogon = zonogon_one_sided(&weighted)?;
    let boundary = Metronoid::new(mu.clone())?.vertices()?;

    let mut all = hull.clone();
    all.extend(zonogon.iter().cloned());
    all.extend(boundary.iter().cloned());
    let frame = Frame::fit(&all);

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!("<!-- config: {} -->\n", config.render_compact()));
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" \
         viewBox=\"0 0 {CANVAS} {CANVAS}\">\n"
    ));
    svg.push_str(&polygon_tag(&frame, &hull, RED, 0.15, 2.0));
    svg.push_str(&polygon_tag(&frame, &zonogon, BLUE, 0.15, 2.0));
    svg.push_str(&polygon_tag(&frame, &boundary, PURPLE, 0.30, 2.5));
    for p in &atoms {
        let (x, y) = frame.map(p);
        svg.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{RED}\"/>\n",
            coord(x),
            coord(y)
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
