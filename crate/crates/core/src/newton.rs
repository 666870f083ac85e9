//! Newton polygons and the tropical curves dual to them.
//!
//! Two constructions are provided. When every coefficient has the same
//! valuation the corner locus is a fan: one vertex at the origin and one ray
//! per Newton-polygon edge, read off by walking the hull clockwise
//! (`conical_tropicalization`). In general the corner locus is dual to the
//! regular subdivision induced by lifting each support point to minus its
//! coefficient valuation and taking the upper hull (`dual_tropicalization`):
//! 2-cells give vertices, interior 1-cells bounded edges, boundary 1-cells
//! rays, and every weight is the lattice length of the subdivision cell the
//! edge is dual to.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::troppoly::LaurentPolynomialK;
use crate::{Error, Result};

/// A lattice point in the exponent plane.
pub type LatticePoint = [i64; 2];

fn gcd64(a: i64, b: i64) -> i64 {
    num::integer::gcd(a, b)
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Cross product (a − o) × (b − o); positive for a counterclockwise turn.
fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let ax = a[0] as i128 - o[0] as i128;
    let ay = a[1] as i128 - o[1] as i128;
    let bx = b[0] as i128 - o[0] as i128;
    let by = b[1] as i128 - o[1] as i128;
    ax * by - ay * bx
}

/// Convex hull of lattice points, clockwise, starting at the
/// lexicographically smallest vertex. Collinear points are absorbed into
/// edges; degenerate hulls come back with one or two vertices.
fn hull_clockwise(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let mut ccw = lower;
    ccw.extend(upper);
    if ccw.len() > 2 {
        ccw[1..].reverse();
    }
    ccw
}

/// The convex hull of a polynomial's support in the exponent plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    support: Vec<LatticePoint>,
    hull: Vec<LatticePoint>,
}

impl NewtonPolygon {
    /// Support lattice points, sorted lexicographically.
    pub fn support(&self) -> &[LatticePoint] {
        &self.support
    }

    /// Hull vertices, clockwise from the lexicographically smallest.
    pub fn hull(&self) -> &[LatticePoint] {
        &self.hull
    }
}

/// Computes the Newton polygon of a nonzero bivariate polynomial.
pub fn newton_polygon(f: &LaurentPolynomialK) -> Result<NewtonPolygon> {
    if f.dimension() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: f.dimension(),
        });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let support: Vec<LatticePoint> = f.support().iter().map(|w| [w[0], w[1]]).collect();
    let hull = hull_clockwise(&support);
    Ok(NewtonPolygon { support, hull })
}

/// Endpoints of an edge: a ray leaves one vertex, a bounded edge joins two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Ends {
    Ray(usize),
    Bounded(usize, usize),
}

/// An edge of a tropical curve with its primitive direction and weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub ends: Ends,
    pub direction: Vec<i64>,
    pub weight: u64,
}

/// A weighted one-dimensional polyhedral complex in ℝⁿ, in canonical form:
/// vertices sorted lexicographically, bounded edges oriented from the lower
/// index to the higher, edges sorted by (first end, direction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalCurve {
    n: usize,
    vertices: Vec<Vec<BigRational>>,
    edges: Vec<Edge>,
}

impl TropicalCurve {
    /// Validates and canonicalizes a curve. Directions must be primitive,
    /// weights positive, endpoint indices in range, and a bounded edge's
    /// direction parallel to the difference of its endpoints.
    pub fn new(n: usize, vertices: Vec<Vec<BigRational>>, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n", "ambient dimension must be positive"));
        }
        for v in &vertices {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        let mut position = vec![0usize; vertices.len()];
        for (new_idx, &old_idx) in order.iter().enumerate() {
            position[old_idx] = new_idx;
        }
        let sorted: Vec<Vec<BigRational>> = order.iter().map(|&i| vertices[i].clone()).collect();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("vertices", "duplicate vertex"));
        }
        let remap = |i: usize| -> Result<usize> {
            position
                .get(i)
                .copied()
                .ok_or_else(|| Error::invalid("ends", "vertex index out of range"))
        };
        let mut canon: Vec<Edge> = Vec::with_capacity(edges.len());
        for edge in edges {
            if edge.direction.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: edge.direction.len(),
                });
            }
            if edge.weight == 0 {
                return Err(Error::invalid("weight", "edge weight must be positive"));
            }
            if !is_primitive(&edge.direction) {
                return Err(Error::invalid(
                    "dir",
                    "direction must be a primitive integer vector",
                ));
            }
            let canonical = match edge.ends {
                Ends::Ray(v) => Edge {
                    ends: Ends::Ray(remap(v)?),
                    direction: edge.direction,
                    weight: edge.weight,
                },
                Ends::Bounded(a, b) => {
                    let (a, b) = (remap(a)?, remap(b)?);
                    if a == b {
                        return Err(Error::invalid("ends", "bounded edge endpoints coincide"));
                    }
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    let diff: Vec<BigRational> = sorted[hi]
                        .iter()
                        .zip(&sorted[lo])
                        .map(|(x, y)| x - y)
                        .collect();
                    let dir = primitive_direction(&diff)?;
                    let neg: Vec<i64> = dir.iter().map(|x| -x).collect();
                    if edge.direction != dir && edge.direction != neg {
                        return Err(Error::invalid(
                            "dir",
                            "direction not parallel to the edge endpoints",
                        ));
                    }
                    Edge {
                        ends: Ends::Bounded(lo, hi),
                        direction: dir,
                        weight: edge.weight,
                    }
                }
            };
            canon.push(canonical);
        }
        canon.sort_by(|x, y| edge_key(x).cmp(&edge_key(y)));
        Ok(TropicalCurve {
            n,
            vertices: sorted,
            edges: canon,
        })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Exact membership of a rational point in the union of vertices,
    /// bounded edges, and rays.
    pub fn contains(&self, x: &[BigRational]) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        if self.vertices.iter().any(|v| v.as_slice() == x) {
            return Ok(true);
        }
        for edge in &self.edges {
            let hit = match edge.ends {
                Ends::Ray(v) => {
                    let dir: Vec<BigRational> = edge.direction.iter().map(|&d| rat(d)).collect();
                    line_parameter(&self.vertices[v], &dir, x)
                        .map(|t| t >= BigRational::zero())
                        .unwrap_or(false)
                }
                Ends::Bounded(a, b) => {
                    let dir: Vec<BigRational> = self.vertices[b]
                        .iter()
                        .zip(&self.vertices[a])
                        .map(|(p, q)| p - q)
                        .collect();
                    line_parameter(&self.vertices[a], &dir, x)
                        .map(|t| t >= BigRational::zero() && t <= BigRational::one())
                        .unwrap_or(false)
                }
            };
            if hit {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn edge_key(e: &Edge) -> (usize, &[i64], u64, usize) {
    match e.ends {
        Ends::Ray(v) => (v, &e.direction, e.weight, v),
        Ends::Bounded(a, b) => (a, &e.direction, e.weight, b),
    }
}

fn is_primitive(v: &[i64]) -> bool {
    let mut g: i64 = 0;
    for &x in v {
        g = gcd64(g, x);
    }
    g == 1
}

/// Scales a nonzero rational vector to the primitive integer vector with the
/// same orientation.
fn primitive_direction(diff: &[BigRational]) -> Result<Vec<i64>> {
    let mut lcm = BigInt::one();
    for x in diff {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = diff.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num::integer::gcd(g, x.clone());
    }
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    ints.iter()
        .map(|x| {
            (x / &g)
                .to_i64()
                .ok_or_else(|| Error::invalid("dir", "direction does not fit in 64 bits"))
        })
        .collect()
}

/// Solves x = base + t·dir exactly; `None` when x is off the line.
fn line_parameter(
    base: &[BigRational],
    dir: &[BigRational],
    x: &[BigRational],
) -> Option<BigRational> {
    let w: Vec<BigRational> = x.iter().zip(base).map(|(a, b)| a - b).collect();
    let k = dir.iter().position(|d| !d.is_zero())?;
    let t = &w[k] / &dir[k];
    for (wi, di) in w.iter().zip(dir) {
        if *wi != &t * di {
            return None;
        }
    }
    Some(t)
}

/// Tropicalization in the conical case: every coefficient valuation equal,
/// so the corner locus is a fan with its vertex at the origin. Walking the
/// hull clockwise, the edge from (p_k, q_k) to (p_{k+1}, q_{k+1}) contributes
/// the outward ray u_k = ω_k·v_k, where u_k is the quarter-turn
/// counterclockwise rotation of the edge vector, v_k its primitive part, and
/// ω_k the lattice length of the edge.
pub fn conical_tropicalization(f: &LaurentPolynomialK) -> Result<TropicalCurve> {
    let polygon = newton_polygon(f)?;
    let mut vals = f.terms().map(|(_, c)| c.val());
    let first = vals.next().expect("a nonzero polynomial has a term");
    if vals.any(|v| v != first) {
        return Err(Error::MixedValuations);
    }
    let hull = polygon.hull();
    let mut edges = Vec::new();
    if hull.len() >= 2 {
        for k in 0..hull.len() {
            let p = hull[k];
            let q = hull[(k + 1) % hull.len()];
            let u = [q[0] - p[0], q[1] - p[1]];
            let w = gcd64(u[0], u[1]);
            edges.push(Edge {
                ends: Ends::Ray(0),
                direction: vec![-u[1] / w, u[0] / w],
                weight: w as u64,
            });
        }
    }
    let origin = vec![BigRational::zero(), BigRational::zero()];
    TropicalCurve::new(2, vec![origin], edges)
}

/// Tropicalization via the regular subdivision dual: lifts each support
/// point to minus its coefficient valuation, takes the upper hull, and emits
/// the dual curve. Every point of the output lies on the corner locus of the
/// tropicalized polynomial, and the output is exactly that locus.
pub fn dual_tropicalization(f: &LaurentPolynomialK) -> Result<TropicalCurve> {
    let polygon = newton_polygon(f)?;
    if polygon.support().len() < 2 {
        return Err(Error::MonomialInput);
    }
    let lifted: Vec<(LatticePoint, BigRational)> = f
        .terms()
        .map(|(w, c)| {
            let h = -c
                .val()
                .finite()
                .expect("stored coefficients are nonzero series");
            ([w[0], w[1]], h)
        })
        .collect();
    if polygon.hull().len() == 2 {
        segment_dual(&lifted)
    } else {
        planar_dual(&lifted)
    }
}

/// Plane z = α·i + β·j + γ through three lifted points whose projections are
/// not collinear.
fn plane_through(
    lifted: &[(LatticePoint, BigRational)],
    a: usize,
    b: usize,
    c: usize,
) -> (BigRational, BigRational, BigRational) {
    let (pa, ha) = &lifted[a];
    let (pb, hb) = &lifted[b];
    let (pc, hc) = &lifted[c];
    let a11 = rat(pb[0] - pa[0]);
    let a12 = rat(pb[1] - pa[1]);
    let a21 = rat(pc[0] - pa[0]);
    let a22 = rat(pc[1] - pa[1]);
    let b1 = hb - ha;
    let b2 = hc - ha;
    let det = &a11 * &a22 - &a12 * &a21;
    let alpha = (&b1 * &a22 - &b2 * &a12) / &det;
    let beta = (&a11 * &b2 - &a21 * &b1) / &det;
    let gamma = ha - (&alpha * rat(pa[0]) + &beta * rat(pa[1]));
    (alpha, beta, gamma)
}

fn planar_dual(lifted: &[(LatticePoint, BigRational)]) -> Result<TropicalCurve> {
    // Upper facets: planes through three non-collinear support points with
    // every lifted point on or below. The facet's pieces tie exactly at
    // (−α, −β), which is the dual vertex of its cell.
    let m = lifted.len();
    let mut planes: BTreeMap<(BigRational, BigRational, BigRational), Vec<LatticePoint>> =
        BTreeMap::new();
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                if cross(lifted[a].0, lifted[b].0, lifted[c].0) == 0 {
                    continue;
                }
                let plane = plane_through(lifted, a, b, c);
                if planes.contains_key(&plane) {
                    continue;
                }
                let mut on = Vec::new();
                let mut is_upper = true;
                for (p, h) in lifted {
                    let z = &plane.0 * rat(p[0]) + &plane.1 * rat(p[1]) + &plane.2;
                    match z.cmp(h) {
                        std::cmp::Ordering::Less => {
                            is_upper = false;
                            break;
                        }
                        std::cmp::Ordering::Equal => on.push(*p),
                        std::cmp::Ordering::Greater => {}
                    }
                }
                if is_upper {
                    planes.insert(plane, on);
                }
            }
        }
    }
    if planes.is_empty() {
        return Err(Error::invalid("subdivision", "no upper facet found"));
    }
    let cells: Vec<(Vec<BigRational>, Vec<LatticePoint>)> = planes
        .into_iter()
        .map(|((alpha, beta, _), on)| (vec![-alpha, -beta], hull_clockwise(&on)))
        .collect();
    let vertices: Vec<Vec<BigRational>> = cells.iter().map(|(v, _)| v.clone()).collect();
    let mut sides: BTreeMap<(LatticePoint, LatticePoint), Vec<usize>> = BTreeMap::new();
    for (ci, (_, hull)) in cells.iter().enumerate() {
        for k in 0..hull.len() {
            let p = hull[k];
            let q = hull[(k + 1) % hull.len()];
            let key = if p <= q { (p, q) } else { (q, p) };
            sides.entry(key).or_default().push(ci);
        }
    }
    let mut edges = Vec::new();
    for ((p, q), owners) in sides {
        let weight = gcd64(q[0] - p[0], q[1] - p[1]) as u64;
        match owners.as_slice() {
            [c] => {
                // Boundary cell: a ray along the outward normal of the side.
                let hull = &cells[*c].1;
                let mut dir = [p[1] - q[1], q[0] - p[0]];
                let g = gcd64(dir[0], dir[1]);
                dir = [dir[0] / g, dir[1] / g];
                let witness = *hull
                    .iter()
                    .find(|r| cross(p, q, **r) != 0)
                    .expect("facet cells are two-dimensional");
                let side = dir[0] as i128 * (witness[0] as i128 - p[0] as i128)
                    + dir[1] as i128 * (witness[1] as i128 - p[1] as i128);
                if side > 0 {
                    dir = [-dir[0], -dir[1]];
                }
                edges.push(Edge {
                    ends: Ends::Ray(*c),
                    direction: vec![dir[0], dir[1]],
                    weight,
                });
            }
            [c1, c2] => {
                let diff: Vec<BigRational> = vertices[*c2]
                    .iter()
                    .zip(&vertices[*c1])
                    .map(|(x, y)| x - y)
                    .collect();
                edges.push(Edge {
                    ends: Ends::Bounded(*c1, *c2),
                    direction: primitive_direction(&diff)?,
                    weight,
                });
            }
            _ => {
                return Err(Error::invalid(
                    "subdivision",
                    "a cell side borders more than two cells",
                ))
            }
        }
    }
    TropicalCurve::new(2, vertices, edges)
}

/// Concave upper chain of (abscissa, height) points; input abscissae are
/// pairwise distinct.
fn upper_chain(points: &[(i64, BigRational)]) -> Vec<(i64, BigRational)> {
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    let mut chain: Vec<(i64, BigRational)> = Vec::new();
    for p in sorted {
        while chain.len() >= 2 {
            let a = &chain[chain.len() - 2];
            let b = &chain[chain.len() - 1];
            let turn = rat(b.0 - a.0) * (&p.1 - &a.1) - (&b.1 - &a.1) * rat(p.0 - a.0);
            if turn >= BigRational::zero() {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(p);
    }
    chain
}

fn segment_dual(lifted: &[(LatticePoint, BigRational)]) -> Result<TropicalCurve> {
    // Collinear support: the tropicalization only varies along the primitive
    // direction d of the segment, so the corner locus is a union of lines
    // perpendicular (in the pairing sense) to d, one per cell of the
    // one-dimensional upper hull, each weighted by the cell's lattice length.
    let mut pts = lifted.to_vec();
    pts.sort_by(|a, b| a.0.cmp(&b.0));
    let first = pts[0].0;
    let last = pts[pts.len() - 1].0;
    let seg = [last[0] - first[0], last[1] - first[1]];
    let g = gcd64(seg[0], seg[1]);
    let d = [seg[0] / g, seg[1] / g];
    let chain_input: Vec<(i64, BigRational)> = pts
        .iter()
        .map(|(p, h)| {
            let s = if d[0] != 0 {
                (p[0] - first[0]) / d[0]
            } else {
                (p[1] - first[1]) / d[1]
            };
            (s, h.clone())
        })
        .collect();
    let chain = upper_chain(&chain_input);
    let dd = rat(d[0] * d[0] + d[1] * d[1]);
    let perp = [-d[1], d[0]];
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (k, win) in chain.windows(2).enumerate() {
        let (s1, h1) = &win[0];
        let (s2, h2) = &win[1];
        // The cell's pieces tie on the line ⟨d, x⟩ = −μ for the cell slope μ;
        // the vertex is the point of that line closest to the origin.
        let mu = (h2 - h1) / rat(s2 - s1);
        let scale = -mu / &dd;
        vertices.push(vec![&scale * rat(d[0]), &scale * rat(d[1])]);
        edges.push(Edge {
            ends: Ends::Ray(k),
            direction: vec![perp[0], perp[1]],
            weight: (s2 - s1) as u64,
        });
        edges.push(Edge {
            ends: Ends::Ray(k),
            direction: vec![-perp[0], -perp[1]],
            weight: (s2 - s1) as u64,
        });
    }
    TropicalCurve::new(2, vertices, edges)
}
