//! Balancing checks: the classical vertex-local condition for tropical
//! curves, and the bundle condition ∑_ρ ⟨e_i, v_ρ⟩·ω_ρ = c₁(L_i)·β for
//! weight functions on fan rays, reported as per-coordinate defect vectors.

use std::collections::BTreeMap;

use crate::fanbundle::{
    intersect_curve, relation, BundleDescriptor, CurveClassData, Fan1Skeleton, Ray,
};
use crate::newton::{Ends, TropicalCurve};
use crate::{Error, Result};

/// Nonnegative integer weights ω_ρ on the rays of a fan; missing rays count
/// as weight zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightFunction {
    entries: BTreeMap<Ray, u64>,
}

impl WeightFunction {
    /// Builds a weight function; a repeated ray keeps its last value.
    pub fn new<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (Ray, u64)>,
    {
        WeightFunction {
            entries: entries.into_iter().collect(),
        }
    }

    pub fn get(&self, ray: &Ray) -> u64 {
        self.entries.get(ray).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Ray, u64> {
        &self.entries
    }
}

/// Per-coordinate residual of a balancing equation; zero iff balanced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectVector {
    coords: Vec<i64>,
}

impl DefectVector {
    pub fn new(coords: Vec<i64>) -> Self {
        DefectVector { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn balanced(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// Classical balancing at each vertex: sums ω_e·v_e over the incident edges
/// with every direction oriented away from the vertex. A curve passes iff
/// every vertex has the zero defect.
pub fn local_balance(curve: &TropicalCurve) -> BTreeMap<usize, DefectVector> {
    let n = curve.dimension();
    let mut sums: BTreeMap<usize, Vec<i64>> = (0..curve.vertices().len())
        .map(|i| (i, vec![0i64; n]))
        .collect();
    for edge in curve.edges() {
        let w = edge.weight as i64;
        match edge.ends {
            Ends::Ray(v) => {
                let sum = sums.get_mut(&v).expect("validated vertex index");
                for (s, d) in sum.iter_mut().zip(&edge.direction) {
                    *s += w * d;
                }
            }
            Ends::Bounded(a, b) => {
                let sum = sums.get_mut(&a).expect("validated vertex index");
                for (s, d) in sum.iter_mut().zip(&edge.direction) {
                    *s += w * d;
                }
                let sum = sums.get_mut(&b).expect("validated vertex index");
                for (s, d) in sum.iter_mut().zip(&edge.direction) {
                    *s -= w * d;
                }
            }
        }
    }
    sums.into_iter()
        .map(|(v, coords)| (v, DefectVector::new(coords)))
        .collect()
}

/// Bundle balancing: coordinate i of the defect is
/// ∑_ρ ⟨e_i, v_ρ⟩·ω_ρ − c₁(L_i)·β, computed by pairing the i-th divisor
/// relation with the curve data.
pub fn bundle_balance(
    weights: &WeightFunction,
    bundle: &BundleDescriptor,
    fan: &Fan1Skeleton,
    beta: &CurveClassData,
) -> Result<DefectVector> {
    for ray in weights.entries().keys() {
        if !fan.contains(ray) {
            return Err(Error::invalid("weights", "weight on a ray outside the fan"));
        }
    }
    let coords = (0..bundle.torus_rank())
        .map(|i| intersect_curve(&relation(bundle, fan, i)?, weights.entries(), beta))
        .collect::<Result<Vec<i64>>>()?;
    Ok(DefectVector::new(coords))
}

/// Enumerates every weight function with all ω_ρ in [0, bound] that balances,
/// in lexicographic order over the fan's ray ordering. Infeasible instances
/// give an empty list.
pub fn solve_weights(
    bundle: &BundleDescriptor,
    fan: &Fan1Skeleton,
    beta: &CurveClassData,
    bound: u64,
) -> Result<Vec<WeightFunction>> {
    if fan.dimension() != bundle.torus_rank() {
        return Err(Error::DimensionMismatch {
            expected: bundle.torus_rank(),
            got: fan.dimension(),
        });
    }
    let n = bundle.torus_rank();
    let targets: Vec<i64> = bundle
        .chern_classes()
        .iter()
        .map(|c| beta.pair(c))
        .collect::<Result<_>>()?;
    let rays = fan.rays();
    let m = rays.len();
    // Per-coordinate range of what the rays from position k onward can still
    // contribute; used to prune the search box.
    let mut suffix_min = vec![vec![0i64; n]; m + 1];
    let mut suffix_max = vec![vec![0i64; n]; m + 1];
    for k in (0..m).rev() {
        for i in 0..n {
            let v = rays[k].coords()[i];
            suffix_min[k][i] = suffix_min[k + 1][i] + (v * bound as i64).min(0);
            suffix_max[k][i] = suffix_max[k + 1][i] + (v * bound as i64).max(0);
        }
    }
    let mut out = Vec::new();
    let mut current = vec![0u64; m];
    let mut partial = vec![0i64; n];
    descend(
        0,
        rays,
        bound,
        &targets,
        &suffix_min,
        &suffix_max,
        &mut current,
        &mut partial,
        &mut out,
    );
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn descend(
    k: usize,
    rays: &[Ray],
    bound: u64,
    targets: &[i64],
    suffix_min: &[Vec<i64>],
    suffix_max: &[Vec<i64>],
    current: &mut Vec<u64>,
    partial: &mut Vec<i64>,
    out: &mut Vec<WeightFunction>,
) {
    if k == rays.len() {
        if partial == targets {
            out.push(WeightFunction::new(
                rays.iter().cloned().zip(current.iter().copied()),
            ));
        }
        return;
    }
    let coords = rays[k].coords();
    for w in 0..=bound {
        let feasible = (0..targets.len()).all(|i| {
            let rest = targets[i] - partial[i] - coords[i] * w as i64;
            suffix_min[k + 1][i] <= rest && rest <= suffix_max[k + 1][i]
        });
        if !feasible {
            continue;
        }
        current[k] = w;
        for (p, c) in partial.iter_mut().zip(coords) {
            *p += c * w as i64;
        }
        descend(
            k + 1,
            rays,
            bound,
            targets,
            suffix_min,
            suffix_max,
            current,
            partial,
            out,
        );
        for (p, c) in partial.iter_mut().zip(coords) {
            *p -= c * w as i64;
        }
    }
    current[k] = 0;
}
