//! Static SVG: the tropical polynomial graph with its bends, and a bar of
//! layers along the level axis.

use num_traits::ToPrimitive;
use phasetrop::surface::LayerDecomposition;
use phasetrop::valued::TropicalPoly;
use phasetrop::Exponent;

const W: f64 = 640.0;
const H: f64 = 360.0;
const BAR: f64 = 40.0;

fn f(q: &Exponent) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

pub fn layers_svg(trop: &TropicalPoly, layers: &LayerDecomposition) -> String {
    let levels: Vec<f64> = layers.levels.iter().map(f).collect();
    let lo = levels.first().copied().unwrap_or(0.0) - 1.0;
    let hi = levels.last().copied().unwrap_or(0.0) + 1.0;
    let samples: Vec<(f64, f64)> = (0..=200)
        .map(|k| {
            let a = lo + (hi - lo) * k as f64 / 200.0;
            let v = trop
                .pieces
                .iter()
                .map(|(s, b)| f(b) + *s as f64 * a)
                .fold(f64::NEG_INFINITY, f64::max);
            (a, v)
        })
        .collect();
    let vmin = samples.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let vmax = samples.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let span = if vmax > vmin { vmax - vmin } else { 1.0 };
    let plot_h = H - BAR - 20.0;
    let x = |a: f64| 20.0 + (a - lo) / (hi - lo) * (W - 40.0);
    let y = |v: f64| 10.0 + (vmax - v) / span * (plot_h - 20.0);
    let path: Vec<String> = samples.iter().map(|(a, v)| format!("{:.2},{:.2}", x(*a), y(*v))).collect();
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"{}\"/>\n",
        path.join(" ")
    );
    for (q, a) in layers.levels.iter().zip(&levels) {
        let v = trop
            .pieces
            .iter()
            .map(|(s, b)| f(b) + *s as f64 * a)
            .fold(f64::NEG_INFINITY, f64::max);
        out.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"red\"><title>{}</title></circle>\n",
            x(*a),
            y(v),
            phasetrop::coeff::fmt_rational(q)
        ));
    }
    let bar_y = H - BAR;
    for (k, c) in layers.intervals.iter().enumerate() {
        let from = x(levels[k]);
        let to = c.to.as_ref().map(|q| x(f(q))).unwrap_or(W - 20.0);
        let fill = if c.dimension == phasetrop::ideal::FiberDim::Dim(2) { "#8fb3d9" } else { "#d98f8f" };
        out.push_str(&format!(
            "<rect x=\"{from:.2}\" y=\"{bar_y:.2}\" width=\"{:.2}\" height=\"12\" fill=\"{fill}\"><title>degree {}</title></rect>\n",
            to - from,
            c.degree
        ));
    }
    for a in &levels {
        out.push_str(&format!(
            "<line x1=\"{0:.2}\" x2=\"{0:.2}\" y1=\"{1:.2}\" y2=\"{2:.2}\" stroke=\"black\"/>\n",
            x(*a),
            bar_y - 4.0,
            bar_y + 16.0
        ));
    }
    out.push_str("</svg>\n");
    out
}
