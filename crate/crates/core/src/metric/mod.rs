//! Groups with bi-invariant metrics and defect measurement for approximation maps.

pub mod defect;
pub mod fp;
pub mod premises;
pub mod unitary;

pub use defect::{ApproxMap, DefectReport, Flavor};
pub use fp::{rank_dist, FpMatrix, GlRank};
pub use premises::{check_premises, PremiseReport, PremiseSets};
pub use unitary::{hs_dist, normalized_trace, UnitaryHs};

use crate::error::{Error, Result};
use crate::group::Permutation;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::fmt;

pub type Rational = Ratio<i64>;

/// A metric value: exact for Hamming and rank metrics, floating for Hilbert–Schmidt.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Approx(f64),
}

impl Value {
    pub fn zero() -> Self {
        Value::Exact(Rational::zero())
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Value::Approx(x) => x,
        }
    }

    pub fn add(self, other: Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            _ => Value::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn scale(self, k: i64) -> Value {
        match self {
            Value::Exact(a) => Value::Exact(a * k),
            Value::Approx(x) => Value::Approx(x * k as f64),
        }
    }

    /// `self < bound`, exactly when possible.
    pub fn lt(self, bound: Rational) -> bool {
        match self {
            Value::Exact(a) => a < bound,
            Value::Approx(x) => x < bound.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn le_value(self, other: Value) -> bool {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a <= b,
            _ => self.to_f64() <= other.to_f64() + 1e-9,
        }
    }

    pub fn max(self, other: Value) -> Value {
        if self.le_value(other) && self != other {
            other
        } else {
            self
        }
    }

    pub fn is_zero(self) -> bool {
        match self {
            Value::Exact(a) => a.is_zero(),
            Value::Approx(x) => x.abs() < 1e-9,
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected a rational 'p/q', got '{}'", s));
    let r = match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(s.parse().map_err(|_| bad())?),
    };
    Ok(r)
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => f.write_str(&format_rational(r)),
            Value::Approx(x) => write!(f, "{:.12}", x),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Exact(r) => s.serialize_str(&format_rational(r)),
            Value::Approx(x) => s.serialize_f64(*x),
        }
    }
}

/// A group together with a bi-invariant metric.
pub trait MetricGroup {
    type Elem: Clone + fmt::Debug;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;
    fn dist(&self, x: &Self::Elem, y: &Self::Elem) -> Value;
    fn diameter(&self) -> Value;
    /// Normalized trace, for carriers that have one.
    fn trace(&self, _x: &Self::Elem) -> Option<f64> {
        None
    }
    fn describe(&self) -> String;
}

pub fn hamming_dist(s: &Permutation, t: &Permutation) -> Result<Rational> {
    if s.degree() != t.degree() {
        return Err(Error::SizeMismatch(s.degree(), t.degree()));
    }
    if s.degree() == 0 {
        return Ok(Rational::zero());
    }
    Ok(Rational::new(s.disagreements(t) as i64, s.degree() as i64))
}

/// `Sym(n)` with the normalized Hamming distance.
#[derive(Clone, Debug)]
pub struct SymHamming {
    pub n: usize,
}

impl MetricGroup for SymHamming {
    type Elem = Permutation;
    fn identity(&self) -> Permutation {
        Permutation::identity(self.n)
    }
    fn mul(&self, x: &Permutation, y: &Permutation) -> Permutation {
        x.compose(y)
    }
    fn inv(&self, x: &Permutation) -> Permutation {
        x.inverse()
    }
    fn dist(&self, x: &Permutation, y: &Permutation) -> Value {
        Value::Exact(hamming_dist(x, y).expect("permutations of equal degree"))
    }
    fn diameter(&self) -> Value {
        Value::Exact(if self.n > 1 { Rational::from_integer(1) } else { Rational::zero() })
    }
    fn trace(&self, x: &Permutation) -> Option<f64> {
        Some(x.fixed_points() as f64 / self.n.max(1) as f64)
    }
    fn describe(&self) -> String {
        format!("sym:{}", self.n)
    }
}

/// Element of `A ≀_B Sym(B)`: it acts on `A × B` by `(a, b) ↦ (x_b(a), τ(b))`, so
/// `(x,τ)(y,ρ) = ((x_{ρ(b)} y_b)_b, τρ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WreathPoint<E> {
    pub x: Vec<E>,
    pub tau: Permutation,
}

/// `A ≀_B Sym(B)` with `d̃ = d_Hamm(τ,ρ) + (1/|B|) Σ_{τ(b)=ρ(b)} d(x_b, y_b)`.
#[derive(Clone, Debug)]
pub struct WreathMetric<M> {
    pub inner: M,
    pub nb: usize,
}

impl<M: MetricGroup> WreathMetric<M> {
    pub fn new(inner: M, nb: usize) -> Result<Self> {
        if !inner.diameter().le_value(Value::Exact(Rational::from_integer(1))) {
            return Err(Error::DiameterViolation);
        }
        Ok(WreathMetric { inner, nb })
    }
}

impl<M: MetricGroup> MetricGroup for WreathMetric<M> {
    type Elem = WreathPoint<M::Elem>;
    fn identity(&self) -> Self::Elem {
        WreathPoint { x: vec![self.inner.identity(); self.nb], tau: Permutation::identity(self.nb) }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let x = (0..self.nb).map(|i| self.inner.mul(&a.x[b.tau.apply(i)], &b.x[i])).collect();
        WreathPoint { x, tau: a.tau.compose(&b.tau) }
    }
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        // (y,τ⁻¹)(x,τ) = 1 forces y_{τ(b)} = x_b⁻¹.
        let ti = a.tau.inverse();
        let mut x = vec![self.inner.identity(); self.nb];
        for b in 0..self.nb {
            x[a.tau.apply(b)] = self.inner.inv(&a.x[b]);
        }
        WreathPoint { x, tau: ti }
    }
    fn dist(&self, a: &Self::Elem, b: &Self::Elem) -> Value {
        let mut total = Value::Exact(hamming_dist(&a.tau, &b.tau).expect("equal degree"));
        for i in 0..self.nb {
            if a.tau.apply(i) == b.tau.apply(i) {
                let d = self.inner.dist(&a.x[i], &b.x[i]);
                total = total.add(match d {
                    Value::Exact(r) => Value::Exact(r / self.nb as i64),
                    Value::Approx(f) => Value::Approx(f / self.nb as f64),
                });
            }
        }
        total
    }
    fn diameter(&self) -> Value {
        Value::Exact(Rational::from_integer(1))
    }
    fn describe(&self) -> String {
        format!("wreathmetric({},{})", self.inner.describe(), self.nb)
    }
}
