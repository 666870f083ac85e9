//! Finite Puiseux series over the rationals.
//!
//! A series is a finite formal sum `Σ a_q t^q` with rational exponents `q`
//! and nonzero rational coefficients `a_q`. Finite support keeps every
//! computation exact; the valuation of a nonzero series is the exponent of
//! its leading (lowest-exponent) term, and the zero series gets `Infinity`
//! so that `val` is total.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, Zero};

/// Valuation of a Puiseux series: a rational, or `Infinity` for the zero
/// series. `Infinity` compares above every finite value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(BigRational),
    Infinity,
}

impl Valuation {
    pub fn is_finite(&self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<BigRational> {
        match self {
            Valuation::Finite(q) => Some(q),
            Valuation::Infinity => None,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(q) => write!(f, "{}", q),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// A finite Puiseux series in normal form: exponents strictly increasing,
/// no zero coefficient stored. Two series are equal iff their term maps are.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PuiseuxSeries {
    terms: BTreeMap<BigRational, BigRational>,
}

impl PuiseuxSeries {
    /// The zero series.
    pub fn zero() -> Self {
        PuiseuxSeries::default()
    }

    /// The constant series `c`.
    pub fn constant(c: BigRational) -> Self {
        Self::term(BigRational::zero(), c)
    }

    /// The single-term series `c · t^q`.
    pub fn term(exponent: BigRational, coefficient: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(exponent, coefficient);
        }
        PuiseuxSeries { terms }
    }

    /// Builds a series from `(exponent, coefficient)` pairs, summing
    /// duplicates and dropping anything that cancels to zero.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BigRational, BigRational)>,
    {
        let mut map: BTreeMap<BigRational, BigRational> = BTreeMap::new();
        for (exp, coeff) in terms {
            let entry = map.entry(exp).or_insert_with(BigRational::zero);
            *entry += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        PuiseuxSeries { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The valuation: the minimum exponent of a nonzero term, `Infinity`
    /// for the zero series.
    pub fn val(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(q) => Valuation::Finite(q.clone()),
            None => Valuation::Infinity,
        }
    }

    /// Coefficient of the leading term, if the series is nonzero.
    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.values().next()
    }
}

impl Add for &PuiseuxSeries {
    type Output = PuiseuxSeries;

    fn add(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        let mut terms = self.terms.clone();
        for (exp, coeff) in &rhs.terms {
            let entry = terms.entry(exp.clone()).or_insert_with(BigRational::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        PuiseuxSeries { terms }
    }
}

impl Sub for &PuiseuxSeries {
    type Output = PuiseuxSeries;

    fn sub(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        self + &(-rhs)
    }
}

impl Neg for &PuiseuxSeries {
    type Output = PuiseuxSeries;

    fn neg(self) -> PuiseuxSeries {
        PuiseuxSeries {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &PuiseuxSeries {
    type Output = PuiseuxSeries;

    /// Convolution product; renormalizes, so cancellation is handled.
    fn mul(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        let mut terms: BTreeMap<BigRational, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp = ea + eb;
                let entry = terms.entry(exp).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        PuiseuxSeries { terms }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $fn:ident) => {
        impl $trait for PuiseuxSeries {
            type Output = PuiseuxSeries;
            fn $fn(self, rhs: PuiseuxSeries) -> PuiseuxSeries {
                (&self).$fn(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        -&self
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exp, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if exp.is_zero() {
                write!(f, "{}", coeff)?;
            } else {
                write!(f, "{}*t^({})", coeff, exp)?;
            }
        }
        Ok(())
    }
}
