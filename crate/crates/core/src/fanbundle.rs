//! Fan 1-skeletons, torus-bundle descriptors, and the divisor-class algebra
//! on toric variety bundles.
//!
//! The class group is presented by horizontal divisors D_ρ (one per ray) and
//! pulled-back base classes, modulo one relation per torus coordinate:
//! ∑_ρ ⟨e_i, v_ρ⟩·D_ρ = π*c₁(L_i). `reduce` rewrites a divisor to a normal
//! form with zero coefficient on a fixed pivot set of rays by subtracting
//! integer multiples of these relations, and `intersect_curve` pairs a class
//! with the curve data (ray weights and pushforward class β).

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational, ToPrimitive, Zero};

use crate::{Error, Result};

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// A primitive integer vector spanning a ray of a fan.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ray {
    v: Vec<i64>,
}

impl Ray {
    /// Wraps a vector that is already primitive.
    pub fn new(v: Vec<i64>) -> Result<Self> {
        let mut g: i64 = 0;
        for &x in &v {
            g = num::integer::gcd(g, x);
        }
        match g {
            0 => Err(Error::ZeroVector),
            1 => Ok(Ray { v }),
            _ => Err(Error::invalid("ray", "vector is not primitive")),
        }
    }

    pub fn coords(&self) -> &[i64] {
        &self.v
    }

    pub fn dimension(&self) -> usize {
        self.v.len()
    }
}

/// Divides a nonzero integer vector by the gcd of its entries.
pub fn primitive(w: &[i64]) -> Result<Ray> {
    let mut g: i64 = 0;
    for &x in w {
        g = num::integer::gcd(g, x);
    }
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(Ray {
        v: w.iter().map(|x| x / g).collect(),
    })
}

/// The rays of a fan, in a fixed order that pivot selection and weight
/// enumeration both respect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan1Skeleton {
    n: usize,
    rays: Vec<Ray>,
}

impl Fan1Skeleton {
    pub fn new(n: usize, rays: Vec<Ray>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n", "fan dimension must be positive"));
        }
        let mut seen = BTreeSet::new();
        for ray in &rays {
            if ray.dimension() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: ray.dimension(),
                });
            }
            if !seen.insert(ray.clone()) {
                return Err(Error::invalid("rays", "duplicate ray"));
            }
        }
        Ok(Fan1Skeleton { n, rays })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn contains(&self, ray: &Ray) -> bool {
        self.rays.iter().any(|r| r == ray)
    }
}

/// First Chern classes of n line bundles over a base whose relevant divisor
/// classes live in a rank-r integer lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleDescriptor {
    n: usize,
    r: usize,
    chern: Vec<Vec<i64>>,
}

impl BundleDescriptor {
    pub fn new(n: usize, r: usize, chern: Vec<Vec<i64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n", "torus rank must be positive"));
        }
        if chern.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: chern.len(),
            });
        }
        for c in &chern {
            if c.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    got: c.len(),
                });
            }
        }
        Ok(BundleDescriptor { n, r, chern })
    }

    /// A rank-n trivial bundle: every Chern vector zero.
    pub fn trivial(n: usize, r: usize) -> Result<Self> {
        Self::new(n, r, vec![vec![0; r]; n])
    }

    pub fn torus_rank(&self) -> usize {
        self.n
    }

    pub fn picard_rank(&self) -> usize {
        self.r
    }

    pub fn chern_classes(&self) -> &[Vec<i64>] {
        &self.chern
    }
}

/// Coordinates of the pushforward curve class β in the base lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClassData {
    beta: Vec<i64>,
}

impl CurveClassData {
    pub fn new(beta: Vec<i64>) -> Self {
        CurveClassData { beta }
    }

    pub fn coords(&self) -> &[i64] {
        &self.beta
    }

    /// The pairing γ·β with a base class γ.
    pub fn pair(&self, gamma: &[i64]) -> Result<i64> {
        if gamma.len() != self.beta.len() {
            return Err(Error::DimensionMismatch {
                expected: self.beta.len(),
                got: gamma.len(),
            });
        }
        Ok(gamma.iter().zip(&self.beta).map(|(g, b)| g * b).sum())
    }
}

/// An integer combination of horizontal divisors D_ρ and a pulled-back base
/// class; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DivisorClass {
    horiz: BTreeMap<Ray, i64>,
    base: Vec<i64>,
}

impl DivisorClass {
    /// Builds a class; duplicate rays are summed and zeros dropped.
    pub fn new<I>(horiz: I, base: Vec<i64>) -> Self
    where
        I: IntoIterator<Item = (Ray, i64)>,
    {
        let mut map: BTreeMap<Ray, i64> = BTreeMap::new();
        for (ray, coef) in horiz {
            *map.entry(ray).or_insert(0) += coef;
        }
        map.retain(|_, c| *c != 0);
        DivisorClass { horiz: map, base }
    }

    pub fn horizontal(&self) -> impl Iterator<Item = (&Ray, i64)> {
        self.horiz.iter().map(|(r, &c)| (r, c))
    }

    pub fn coefficient(&self, ray: &Ray) -> i64 {
        self.horiz.get(ray).copied().unwrap_or(0)
    }

    pub fn base(&self) -> &[i64] {
        &self.base
    }

    pub fn is_zero(&self) -> bool {
        self.horiz.is_empty() && self.base.iter().all(|&c| c == 0)
    }
}

/// The i-th rewrite generator ∑_ρ ⟨e_i, v_ρ⟩·D_ρ − π*c₁(L_i), where
/// ⟨e_i, v_ρ⟩ is the i-th coordinate of v_ρ. This class is zero in the
/// divisor class group. Index i is 0-based.
pub fn relation(bundle: &BundleDescriptor, fan: &Fan1Skeleton, i: usize) -> Result<DivisorClass> {
    if fan.dimension() != bundle.torus_rank() {
        return Err(Error::DimensionMismatch {
            expected: bundle.torus_rank(),
            got: fan.dimension(),
        });
    }
    if i >= bundle.torus_rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            rank: bundle.torus_rank(),
        });
    }
    let horiz = fan.rays().iter().map(|r| (r.clone(), r.coords()[i]));
    let base = bundle.chern_classes()[i].iter().map(|c| -c).collect();
    Ok(DivisorClass::new(horiz, base))
}

/// Greedy pivot set: scan rays in fan order, keeping each ray whose vector
/// is linearly independent of those kept so far, until n are found.
fn pivot_rays(fan: &Fan1Skeleton) -> Result<Vec<usize>> {
    let n = fan.dimension();
    let mut echelon: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut picked = Vec::new();
    for (idx, ray) in fan.rays().iter().enumerate() {
        let mut row: Vec<BigRational> = ray.coords().iter().map(|&x| rat(x)).collect();
        for (col, basis) in &echelon {
            if !row[*col].is_zero() {
                let f = &row[*col] / &basis[*col];
                for (ri, bi) in row.iter_mut().zip(basis) {
                    *ri -= &f * bi;
                }
            }
        }
        if let Some(col) = row.iter().position(|x| !x.is_zero()) {
            echelon.push((col, row));
            picked.push(idx);
            if picked.len() == n {
                return Ok(picked);
            }
        }
    }
    Err(Error::RaysDoNotSpan)
}

/// Solves the square system a·x = b by Gaussian elimination; the caller
/// guarantees a is invertible.
fn solve_square(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&row| !a[row][col].is_zero())
            .expect("pivot matrix is invertible");
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            if a[row][col].is_zero() {
                continue;
            }
            let f = &a[row][col] / &a[col][col];
            for k in col..n {
                let t = &f * &a[col][k];
                a[row][k] -= t;
            }
            let t = &f * &b[col];
            b[row] -= t;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for col in (0..n).rev() {
        let mut acc = b[col].clone();
        for k in (col + 1)..n {
            acc -= &a[col][k] * &x[k];
        }
        x[col] = acc / &a[col][col];
    }
    x
}

/// Normal form of a divisor class: subtracts integer multiples of the
/// relations so every pivot-ray coefficient becomes zero. The multiples are
/// solved over the rationals; a non-integral solution is an error, which
/// cannot happen when the pivot vectors form a unimodular basis.
pub fn reduce(
    d: &DivisorClass,
    bundle: &BundleDescriptor,
    fan: &Fan1Skeleton,
) -> Result<DivisorClass> {
    if fan.dimension() != bundle.torus_rank() {
        return Err(Error::DimensionMismatch {
            expected: bundle.torus_rank(),
            got: fan.dimension(),
        });
    }
    if d.base().len() != bundle.picard_rank() {
        return Err(Error::DimensionMismatch {
            expected: bundle.picard_rank(),
            got: d.base().len(),
        });
    }
    for (ray, _) in d.horizontal() {
        if !fan.contains(ray) {
            return Err(Error::invalid("divisor", "horizontal ray not in the fan"));
        }
    }
    let n = fan.dimension();
    let pivots = pivot_rays(fan)?;
    let matrix: Vec<Vec<BigRational>> = pivots
        .iter()
        .map(|&p| fan.rays()[p].coords().iter().map(|&x| rat(x)).collect())
        .collect();
    let rhs: Vec<BigRational> = pivots
        .iter()
        .map(|&p| rat(d.coefficient(&fan.rays()[p])))
        .collect();
    let lambda_q = solve_square(matrix, rhs);
    let mut lambda = Vec::with_capacity(n);
    for l in &lambda_q {
        if !l.is_integer() {
            return Err(Error::NonIntegralReduction);
        }
        lambda.push(
            l.to_integer()
                .to_i64()
                .ok_or_else(|| Error::invalid("divisor", "elimination multiple overflows"))?,
        );
    }
    let horiz = fan.rays().iter().map(|ray| {
        let shift: i64 = lambda
            .iter()
            .zip(ray.coords())
            .map(|(l, v)| l * v)
            .sum();
        (ray.clone(), d.coefficient(ray) - shift)
    });
    let base: Vec<i64> = (0..bundle.picard_rank())
        .map(|j| {
            d.base()[j]
                + lambda
                    .iter()
                    .enumerate()
                    .map(|(i, l)| l * bundle.chern_classes()[i][j])
                    .sum::<i64>()
        })
        .collect();
    Ok(DivisorClass::new(horiz, base))
}

/// Pairs a divisor class with a curve: D_ρ·[Z] = ω_ρ and π*γ·[Z] = γ·β, so
/// the value is ∑_ρ coef(ρ)·ω_ρ + base·β. Rays missing from the weight map
/// count as weight zero.
pub fn intersect_curve(
    d: &DivisorClass,
    weights: &BTreeMap<Ray, u64>,
    beta: &CurveClassData,
) -> Result<i64> {
    if d.base().len() != beta.coords().len() {
        return Err(Error::DimensionMismatch {
            expected: beta.coords().len(),
            got: d.base().len(),
        });
    }
    let mut total: i64 = 0;
    for (ray, coef) in d.horizontal() {
        total += coef * weights.get(ray).copied().unwrap_or(0) as i64;
    }
    for (c, b) in d.base().iter().zip(beta.coords()) {
        total += c * b;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ray(v: &[i64]) -> Ray {
        Ray::new(v.to_vec()).unwrap()
    }

    fn p1_fan() -> Fan1Skeleton {
        Fan1Skeleton::new(1, vec![ray(&[1]), ray(&[-1])]).unwrap()
    }

    fn hirzebruch(k: i64) -> BundleDescriptor {
        BundleDescriptor::new(1, 1, vec![vec![k]]).unwrap()
    }

    #[test]
    fn primitive_divides_by_gcd() {
        assert_eq!(primitive(&[0, -2]).unwrap().coords(), &[0, -1]);
        assert_eq!(primitive(&[2, 4]).unwrap().coords(), &[1, 2]);
        assert_eq!(primitive(&[-3, 0, 6]).unwrap().coords(), &[-1, 0, 2]);
        assert_eq!(primitive(&[0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn ray_requires_primitive_input() {
        assert!(Ray::new(vec![1, 2]).is_ok());
        assert!(Ray::new(vec![2, 4]).is_err());
        assert_eq!(Ray::new(vec![0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn fan_rejects_duplicates_and_mismatches() {
        assert!(Fan1Skeleton::new(1, vec![ray(&[1]), ray(&[1])]).is_err());
        assert!(Fan1Skeleton::new(2, vec![ray(&[1])]).is_err());
    }

    #[test]
    fn relation_on_p1_fiber() {
        // D+ − D− − k·π*[pt] for the degree-k bundle over a rank-1 base.
        let rel = relation(&hirzebruch(2), &p1_fan(), 0).unwrap();
        assert_eq!(rel.coefficient(&ray(&[1])), 1);
        assert_eq!(rel.coefficient(&ray(&[-1])), -1);
        assert_eq!(rel.base(), &[-2]);
    }

    #[test]
    fn relation_for_trivial_bundle_is_the_toric_one() {
        let fan = Fan1Skeleton::new(
            2,
            vec![ray(&[1, 0]), ray(&[0, 1]), ray(&[-1, -1])],
        )
        .unwrap();
        let bundle = BundleDescriptor::trivial(2, 1).unwrap();
        let rel = relation(&bundle, &fan, 0).unwrap();
        assert_eq!(rel.coefficient(&ray(&[1, 0])), 1);
        assert_eq!(rel.coefficient(&ray(&[0, 1])), 0);
        assert_eq!(rel.coefficient(&ray(&[-1, -1])), -1);
        assert_eq!(rel.base(), &[0]);
    }

    #[test]
    fn relation_on_p2_fiber_reads_coordinates() {
        let fan = Fan1Skeleton::new(
            2,
            vec![ray(&[1, 0]), ray(&[0, 1]), ray(&[-1, -1])],
        )
        .unwrap();
        let bundle = BundleDescriptor::new(2, 1, vec![vec![3], vec![5]]).unwrap();
        let rel = relation(&bundle, &fan, 0).unwrap();
        assert_eq!(rel.coefficient(&ray(&[1, 0])), 1);
        assert_eq!(rel.coefficient(&ray(&[-1, -1])), -1);
        assert_eq!(rel.base(), &[-3]);
    }

    #[test]
    fn relation_index_out_of_range() {
        assert_eq!(
            relation(&hirzebruch(0), &p1_fan(), 1),
            Err(Error::IndexOutOfRange { index: 1, rank: 1 })
        );
    }

    #[test]
    fn reduce_recovers_the_hirzebruch_identity() {
        // D+ − D− reduces to k·π*[pt].
        let fan = p1_fan();
        let d = DivisorClass::new(vec![(ray(&[1]), 1), (ray(&[-1]), -1)], vec![0]);
        for k in -3..=3 {
            let out = reduce(&d, &hirzebruch(k), &fan).unwrap();
            assert!(out.horizontal().next().is_none());
            assert_eq!(out.base(), &[k]);
        }
    }

    #[test]
    fn reduce_fixes_nonpivot_classes() {
        // The pivot is the first ray [1]; a class on [-1] alone is already
        // in normal form.
        let fan = p1_fan();
        let d = DivisorClass::new(vec![(ray(&[-1]), 2)], vec![3]);
        assert_eq!(reduce(&d, &hirzebruch(5), &fan).unwrap(), d);
    }

    #[test]
    fn reduce_requires_spanning_rays() {
        let fan = Fan1Skeleton::new(2, vec![ray(&[1, 0])]).unwrap();
        let bundle = BundleDescriptor::trivial(2, 0).unwrap();
        let d = DivisorClass::new(vec![(ray(&[1, 0]), 1)], vec![]);
        assert_eq!(reduce(&d, &bundle, &fan), Err(Error::RaysDoNotSpan));
    }

    #[test]
    fn reduce_detects_non_integral_elimination() {
        // Rays (1,1) and (1,-1) span a finite-index sublattice; eliminating
        // D_(1,1) alone needs half-integer multiples.
        let fan = Fan1Skeleton::new(2, vec![ray(&[1, 1]), ray(&[1, -1])]).unwrap();
        let bundle = BundleDescriptor::trivial(2, 0).unwrap();
        let d = DivisorClass::new(vec![(ray(&[1, 1]), 1)], vec![]);
        assert_eq!(reduce(&d, &bundle, &fan), Err(Error::NonIntegralReduction));
    }

    #[test]
    fn intersect_reads_weights_and_base() {
        let fan = p1_fan();
        let beta = CurveClassData::new(vec![4]);
        let mut weights = BTreeMap::new();
        weights.insert(ray(&[1]), 7u64);
        let single = DivisorClass::new(vec![(ray(&[1]), 1)], vec![0]);
        assert_eq!(intersect_curve(&single, &weights, &beta).unwrap(), 7);
        let pulled = DivisorClass::new(vec![], vec![3]);
        assert_eq!(intersect_curve(&pulled, &weights, &beta).unwrap(), 12);
        let rel = relation(&hirzebruch(2), &fan, 0).unwrap();
        // ω+ − ω− − k·β with ω− defaulting to 0
        assert_eq!(intersect_curve(&rel, &weights, &beta).unwrap(), 7 - 8);
    }

    #[test]
    fn divisor_class_normalizes() {
        let d = DivisorClass::new(
            vec![(ray(&[1]), 2), (ray(&[1]), -2), (ray(&[-1]), 1)],
            vec![0],
        );
        assert_eq!(d.coefficient(&ray(&[1])), 0);
        assert_eq!(d.coefficient(&ray(&[-1])), 1);
        assert!(!d.is_zero());
    }

    /// Cross-polytope fan {±e1, ±e2} with balanced weights built to satisfy
    /// ω₊ᵢ − ω₋ᵢ = c₁(Lᵢ)·β.
    fn balanced_setup(
        chern: [[i64; 2]; 2],
        beta: [i64; 2],
        slack: [u64; 2],
    ) -> (
        Fan1Skeleton,
        BundleDescriptor,
        CurveClassData,
        BTreeMap<Ray, u64>,
    ) {
        let fan = Fan1Skeleton::new(
            2,
            vec![ray(&[1, 0]), ray(&[-1, 0]), ray(&[0, 1]), ray(&[0, -1])],
        )
        .unwrap();
        let bundle =
            BundleDescriptor::new(2, 2, chern.iter().map(|c| c.to_vec()).collect()).unwrap();
        let beta = CurveClassData::new(beta.to_vec());
        let mut weights = BTreeMap::new();
        for i in 0..2 {
            let t = beta.pair(&chern[i]).unwrap();
            let plus = slack[i] + t.max(0) as u64;
            let minus = slack[i] + (-t).max(0) as u64;
            let (pos, neg) = if i == 0 {
                (ray(&[1, 0]), ray(&[-1, 0]))
            } else {
                (ray(&[0, 1]), ray(&[0, -1]))
            };
            weights.insert(pos, plus);
            weights.insert(neg, minus);
        }
        (fan, bundle, beta, weights)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(
            coefs in proptest::collection::vec(-4i64..=4, 4),
            base in proptest::collection::vec(-4i64..=4, 2),
            chern in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 2), 2),
        ) {
            let fan = Fan1Skeleton::new(
                2,
                vec![ray(&[1, 0]), ray(&[-1, 0]), ray(&[0, 1]), ray(&[0, -1])],
            )
            .unwrap();
            let bundle = BundleDescriptor::new(2, 2, chern).unwrap();
            let d = DivisorClass::new(
                fan.rays().iter().cloned().zip(coefs.iter().copied()),
                base,
            );
            let once = reduce(&d, &bundle, &fan).unwrap();
            let twice = reduce(&once, &bundle, &fan).unwrap();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn reduce_preserves_pairing_on_balanced_weights(
            coefs in proptest::collection::vec(-4i64..=4, 4),
            base in proptest::collection::vec(-4i64..=4, 2),
            c00 in -3i64..=3, c01 in -3i64..=3,
            c10 in -3i64..=3, c11 in -3i64..=3,
            b0 in 0i64..=3, b1 in 0i64..=3,
            s0 in 0u64..=3, s1 in 0u64..=3,
        ) {
            let (fan, bundle, beta, weights) =
                balanced_setup([[c00, c01], [c10, c11]], [b0, b1], [s0, s1]);
            let d = DivisorClass::new(
                fan.rays().iter().cloned().zip(coefs.iter().copied()),
                base,
            );
            let reduced = reduce(&d, &bundle, &fan).unwrap();
            prop_assert_eq!(
                intersect_curve(&d, &weights, &beta).unwrap(),
                intersect_curve(&reduced, &weights, &beta).unwrap()
            );
        }

        #[test]
        fn relations_pair_to_zero_on_balanced_weights(
            c00 in -3i64..=3, c01 in -3i64..=3,
            c10 in -3i64..=3, c11 in -3i64..=3,
            b0 in 0i64..=3, b1 in 0i64..=3,
            s0 in 0u64..=3, s1 in 0u64..=3,
        ) {
            let (fan, bundle, beta, weights) =
                balanced_setup([[c00, c01], [c10, c11]], [b0, b1], [s0, s1]);
            for i in 0..2 {
                let rel = relation(&bundle, &fan, i).unwrap();
                prop_assert_eq!(intersect_curve(&rel, &weights, &beta).unwrap(), 0);
            }
        }
    }
}
