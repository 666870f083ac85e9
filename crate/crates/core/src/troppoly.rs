//! Laurent polynomials with Puiseux coefficients and their max-plus
//! tropicalizations.
//!
//! The tropicalization of `f = Σ a_w z^w` is the piecewise-linear convex
//! function `g(x) = max_w { ⟨w, x⟩ − val(a_w) }`. Its corner locus, the set
//! where the maximum is attained at least twice, carries the tropical curve.
//! All point queries are exact rational comparisons.

use std::collections::BTreeMap;

use num::{BigInt, BigRational};

use crate::puiseux::{PuiseuxSeries, Valuation};
use crate::{Error, Result};

/// One affine piece `x ↦ ⟨exponent, x⟩ + constant` of a tropical polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub exponent: Vec<i64>,
    pub constant: BigRational,
}

impl Piece {
    /// Evaluates the piece at an exact rational point.
    pub fn value_at(&self, x: &[BigRational]) -> BigRational {
        let mut acc = self.constant.clone();
        for (a, xi) in self.exponent.iter().zip(x) {
            acc += BigRational::from_integer(BigInt::from(*a)) * xi;
        }
        acc
    }
}

/// A tropical polynomial over the max-plus semiring: a nonempty finite set
/// of affine pieces with pairwise distinct integer exponent vectors.
///
/// Pieces are kept sorted by exponent, so argmax indices are stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalPolynomial {
    n: usize,
    pieces: Vec<Piece>,
}

impl TropicalPolynomial {
    /// Builds a polynomial from raw `(exponent, constant)` pieces. Duplicate
    /// exponent vectors merge by keeping the larger constant, matching max
    /// semantics (the smaller one can never attain the maximum alone).
    pub fn new<I>(n: usize, pieces: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, BigRational)>,
    {
        if n == 0 {
            return Err(Error::invalid("vars", "dimension must be positive"));
        }
        let mut merged: BTreeMap<Vec<i64>, BigRational> = BTreeMap::new();
        for (exponent, constant) in pieces {
            if exponent.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: exponent.len(),
                });
            }
            merged
                .entry(exponent)
                .and_modify(|c| {
                    if constant > *c {
                        *c = constant.clone();
                    }
                })
                .or_insert(constant);
        }
        if merged.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(TropicalPolynomial {
            n,
            pieces: merged
                .into_iter()
                .map(|(exponent, constant)| Piece { exponent, constant })
                .collect(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Pieces in exponent-lexicographic order.
    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Exact evaluation: the maximum over all pieces together with the
    /// indices (into [`Self::pieces`]) of every piece attaining it.
    pub fn eval(&self, x: &[BigRational]) -> Result<(BigRational, Vec<usize>)> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut best = self.pieces[0].value_at(x);
        let mut argmax = vec![0];
        for (i, piece) in self.pieces.iter().enumerate().skip(1) {
            let v = piece.value_at(x);
            if v > best {
                best = v;
                argmax.clear();
                argmax.push(i);
            } else if v == best {
                argmax.push(i);
            }
        }
        Ok((best, argmax))
    }

    /// True iff the maximum is attained by at least two pieces at `x`,
    /// i.e. `x` lies where the function fails to be differentiable.
    pub fn on_corner_locus(&self, x: &[BigRational]) -> Result<bool> {
        Ok(self.eval(x)?.1.len() >= 2)
    }
}

/// A Laurent polynomial `Σ a_w z^w` with finite Puiseux-series coefficients,
/// in normal form: no zero-series coefficient is stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPolynomialK {
    n: usize,
    terms: BTreeMap<Vec<i64>, PuiseuxSeries>,
}

impl LaurentPolynomialK {
    /// Builds a polynomial in `n` variables; duplicate exponents are summed
    /// and zero coefficients dropped.
    pub fn new<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, PuiseuxSeries)>,
    {
        if n == 0 {
            return Err(Error::invalid("vars", "dimension must be positive"));
        }
        let mut map: BTreeMap<Vec<i64>, PuiseuxSeries> = BTreeMap::new();
        for (exponent, coeff) in terms {
            if exponent.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: exponent.len(),
                });
            }
            let entry = map.entry(exponent).or_insert_with(PuiseuxSeries::zero);
            *entry = &*entry + &coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(LaurentPolynomialK { n, terms: map })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in exponent-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &PuiseuxSeries)> {
        self.terms.iter()
    }

    /// The support, sorted lexicographically.
    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }
}

/// Tropicalizes `f`: one piece `⟨w, x⟩ − val(a_w)` per term of the support.
pub fn tropicalize(f: &LaurentPolynomialK) -> Result<TropicalPolynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pieces = f.terms.iter().map(|(w, coeff)| {
        let v = coeff
            .val()
            .finite()
            .expect("nonzero coefficient has finite valuation");
        (w.clone(), -v)
    });
    TropicalPolynomial::new(f.n, pieces)
}

/// The coordinate-wise valuation map `(z_1,…,z_n) ↦ (−val z_1,…,−val z_n)`
/// on a chart of a torus bundle. Rejects zero coordinates, which would lie
/// outside the bundle; the output is unchanged under rescaling each
/// coordinate by a unit of valuation zero, so it is chart-independent.
pub fn val_map(coords: &[PuiseuxSeries]) -> Result<Vec<BigRational>> {
    coords
        .iter()
        .enumerate()
        .map(|(index, z)| match z.val() {
            Valuation::Finite(v) => Ok(-v),
            Valuation::Infinity => Err(Error::ZeroCoordinate { index }),
        })
        .collect()
}
