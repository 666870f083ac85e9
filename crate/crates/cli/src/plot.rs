//! Deterministic SVG rendering of planar tropical curves.
//!
//! Every edge produces exactly one path element; edges falling outside the
//! clipping window keep an empty path so the figure structure is stable.
//! Geometry is clipped with exact rational arithmetic and only the final
//! screen coordinates are rendered, as fixed six-digit decimals.

use num::{BigInt, BigRational, Signed, Zero};

use tropcurve::newton::{Ends, TropicalCurve};

const SIZE: i64 = 600;
const MARGIN: i64 = 40;

type Point = [BigRational; 2];

pub fn render(curve: &TropicalCurve, window: &[BigRational; 4]) -> Result<String, String> {
    if curve.dimension() != 2 {
        return Err(format!(
            "plot: curve must be 2-dimensional, got dimension {}",
            curve.dimension()
        ));
    }
    let mapper = Mapper::new(window);
    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"#ffffff\"/>\n"
    ));
    let inner = SIZE - 2 * MARGIN;
    svg.push_str(&format!(
        "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{inner}\" height=\"{inner}\" fill=\"none\" stroke=\"#cccccc\"/>\n"
    ));
    push_axes(&mut svg, window, &mapper);

    let mut labels = Vec::new();
    for edge in curve.edges() {
        let (base, direction, upper) = match edge.ends {
            Ends::Ray(v) => {
                let base = point_at(curve, v);
                let dir = [rat_i(edge.direction[0]), rat_i(edge.direction[1])];
                (base, dir, None)
            }
            Ends::Bounded(a, b) => {
                let base = point_at(curve, a);
                let head = point_at(curve, b);
                let dir = [&head[0] - &base[0], &head[1] - &base[1]];
                (base, dir, Some(BigRational::from_integer(BigInt::from(1))))
            }
        };
        match clip(&base, &direction, upper, window) {
            Some((lo, hi)) => {
                let start = mapper.to_screen(&along(&base, &direction, &lo));
                let end = mapper.to_screen(&along(&base, &direction, &hi));
                svg.push_str(&format!(
                    "<path d=\"M {} {} L {} {}\" fill=\"none\" stroke=\"#111111\" stroke-width=\"2\"/>\n",
                    dec6(&start.0),
                    dec6(&start.1),
                    dec6(&end.0),
                    dec6(&end.1)
                ));
                if edge.weight > 1 {
                    let mid = &(&lo + &hi) / &rat_i(2);
                    let at = mapper.to_screen(&along(&base, &direction, &mid));
                    labels.push((at, edge.weight));
                }
            }
            None => svg.push_str(
                "<path d=\"\" fill=\"none\" stroke=\"#111111\" stroke-width=\"2\"/>\n",
            ),
        }
    }

    for vertex in curve.vertices() {
        let point = [vertex[0].clone(), vertex[1].clone()];
        if inside(&point, window) {
            let (cx, cy) = mapper.to_screen(&point);
            svg.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#111111\"/>\n",
                dec6(&cx),
                dec6(&cy)
            ));
        }
    }
    for ((x, y), weight) in labels {
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"14\" fill=\"#111111\">{weight}</text>\n",
            dec6(&(&x + &rat_i(6))),
            dec6(&(&y - &rat_i(6)))
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn rat_i(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Dashed coordinate axes, drawn only where they cross the window.
fn push_axes(svg: &mut String, window: &[BigRational; 4], mapper: &Mapper) {
    let zero = BigRational::zero();
    let style = "stroke=\"#dddddd\" stroke-dasharray=\"4 4\"";
    if window[0] <= zero && zero <= window[1] {
        let (x, y1) = mapper.to_screen(&[zero.clone(), window[2].clone()]);
        let (_, y2) = mapper.to_screen(&[zero.clone(), window[3].clone()]);
        svg.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" {style}/>\n",
            dec6(&x),
            dec6(&y1),
            dec6(&y2)
        ));
    }
    if window[2] <= zero && zero <= window[3] {
        let (x1, y) = mapper.to_screen(&[window[0].clone(), zero.clone()]);
        let (x2, _) = mapper.to_screen(&[window[1].clone(), zero.clone()]);
        svg.push_str(&format!(
            "<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" {style}/>\n",
            dec6(&y),
            dec6(&x1),
            dec6(&x2)
        ));
    }
}

fn point_at(curve: &TropicalCurve, index: usize) -> Point {
    let v = &curve.vertices()[index];
    [v[0].clone(), v[1].clone()]
}

fn along(base: &Point, direction: &Point, t: &BigRational) -> Point {
    [
        &base[0] + &(t * &direction[0]),
        &base[1] + &(t * &direction[1]),
    ]
}

fn inside(p: &Point, window: &[BigRational; 4]) -> bool {
    p[0] >= window[0] && p[0] <= window[1] && p[1] >= window[2] && p[1] <= window[3]
}

/// Parameter interval of {base + t*direction : lo <= t <= hi} inside the
/// window, starting from t in [0, upper] (upper = None means a ray).
fn clip(
    base: &Point,
    direction: &Point,
    upper: Option<BigRational>,
    window: &[BigRational; 4],
) -> Option<(BigRational, BigRational)> {
    let mut lo = BigRational::zero();
    let mut hi = upper;
    for axis in 0..2 {
        let min = &window[2 * axis];
        let max = &window[2 * axis + 1];
        let p = &base[axis];
        let d = &direction[axis];
        if d.is_zero() {
            if p < min || p > max {
                return None;
            }
        } else {
            let t_min = &(min - p) / d;
            let t_max = &(max - p) / d;
            let (enter, exit) = if d.is_positive() {
                (t_min, t_max)
            } else {
                (t_max, t_min)
            };
            if enter > lo {
                lo = enter;
            }
            hi = Some(match hi {
                None => exit,
                Some(h) => h.min(exit),
            });
        }
    }
    match hi {
        Some(h) if lo <= h => Some((lo, h)),
        _ => None,
    }
}

struct Mapper {
    xmin: BigRational,
    ymax: BigRational,
    xscale: BigRational,
    yscale: BigRational,
}

impl Mapper {
    fn new(window: &[BigRational; 4]) -> Mapper {
        let inner = rat_i(SIZE - 2 * MARGIN);
        Mapper {
            xmin: window[0].clone(),
            ymax: window[3].clone(),
            xscale: &inner / &(&window[1] - &window[0]),
            yscale: &inner / &(&window[3] - &window[2]),
        }
    }

    fn to_screen(&self, p: &Point) -> (BigRational, BigRational) {
        let margin = rat_i(MARGIN);
        (
            &margin + &(&(&p[0] - &self.xmin) * &self.xscale),
            &margin + &(&(&self.ymax - &p[1]) * &self.yscale),
        )
    }
}

/// Fixed six-digit decimal rendering of a rational screen coordinate.
fn dec6(x: &BigRational) -> String {
    let million = BigInt::from(1_000_000);
    let scaled = (x * BigRational::from_integer(million.clone())).round();
    let n = scaled.to_integer();
    let sign = if n.is_negative() { "-" } else { "" };
    let abs = n.abs();
    format!("{sign}{}.{:06}", &abs / &million, &abs % &million)
}
