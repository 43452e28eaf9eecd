use super::{MetricGroup, Rational, Value};
use crate::error::{Error, Result};
use crate::group::GroupOps;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Sofic,
    WeakSofic,
    Hyperlinear,
    LinearSofic,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [Flavor::Sofic, Flavor::WeakSofic, Flavor::Hyperlinear, Flavor::LinearSofic];
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Sofic => "sofic",
            Flavor::WeakSofic => "weak-sofic",
            Flavor::Hyperlinear => "hyperlinear",
            Flavor::LinearSofic => "linear-sofic",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.to_string() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown flavor '{}'", s)))
    }
}

/// A map from a finite window of a source group into a metric group, tabulated on
/// every element it will be evaluated at.
#[derive(Clone, Debug)]
pub struct ApproxMap<K, M: MetricGroup> {
    pub flavor: Flavor,
    pub target: M,
    /// The window `F`; defects are taken over `F × F` and `F ∖ {1}`.
    pub window: Vec<K>,
    table: HashMap<K, M::Elem>,
}

impl<K: Clone + Eq + Hash + fmt::Debug, M: MetricGroup> ApproxMap<K, M> {
    /// Fails unless the identity of the source is tabulated and sent to the identity.
    pub fn new(flavor: Flavor, target: M, source_identity: &K, window: Vec<K>, table: HashMap<K, M::Elem>) -> Result<Self> {
        let one = table
            .get(source_identity)
            .ok_or_else(|| Error::WindowNotClosed("identity is not in the domain".into()))?;
        if !target.dist(one, &target.identity()).is_zero() {
            return Err(Error::CheckFailed("map does not send 1 to 1".into()));
        }
        Ok(ApproxMap { flavor, target, window, table })
    }

    pub fn from_fn(
        flavor: Flavor,
        target: M,
        source_identity: &K,
        window: Vec<K>,
        domain: impl IntoIterator<Item = K>,
        f: impl Fn(&K) -> M::Elem,
    ) -> Result<Self> {
        let mut table = HashMap::new();
        for k in domain.into_iter().chain(window.iter().cloned()).chain(std::iter::once(source_identity.clone())) {
            if !table.contains_key(&k) {
                let v = f(&k);
                table.insert(k, v);
            }
        }
        Self::new(flavor, target, source_identity, window, table)
    }

    pub fn get(&self, k: &K) -> Result<&M::Elem> {
        self.table.get(k).ok_or_else(|| Error::WindowNotClosed(format!("no value at {:?}", k)))
    }

    pub fn domain_size(&self) -> usize {
        self.table.len()
    }

    pub fn domain(&self) -> impl Iterator<Item = (&K, &M::Elem)> {
        self.table.iter()
    }

    /// Applies `f` to every value, keeping the window and the flavor.
    pub fn map_values(&self, f: impl Fn(&M::Elem) -> M::Elem) -> Self
    where
        M: Clone,
    {
        ApproxMap {
            flavor: self.flavor,
            target: self.target.clone(),
            window: self.window.clone(),
            table: self.table.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
        }
    }

    /// `d(map(g)map(g′), map(gg′))`.
    pub fn pair_defect<G: GroupOps<Elem = K>>(&self, source: &G, g: &K, h: &K) -> Result<Value> {
        let lhs = self.target.mul(self.get(g)?, self.get(h)?);
        Ok(self.target.dist(&lhs, self.get(&source.mul(g, h))?))
    }

    pub fn measure<G: GroupOps<Elem = K>>(&self, source: &G) -> Result<DefectReport> {
        let one = source.identity();
        let mut mult = Value::zero();
        let mut mult_witness = None;
        for (i, g) in self.window.iter().enumerate() {
            for (j, h) in self.window.iter().enumerate() {
                let d = self.pair_defect(source, g, h)?;
                if mult_witness.is_none() || !d.le_value(mult) {
                    mult = d;
                    mult_witness = Some((i, j));
                }
            }
        }
        let id = self.target.identity();
        let mut free: Option<Value> = None;
        let mut free_witness = None;
        let mut trace: Option<f64> = None;
        let mut trace_witness = None;
        for (i, g) in self.window.iter().enumerate() {
            if *g == one {
                continue;
            }
            let img = self.get(g)?;
            let d = self.target.dist(img, &id);
            if free.map_or(true, |f| !f.le_value(d)) {
                free = Some(d);
                free_witness = Some(i);
            }
            if self.flavor == Flavor::Hyperlinear {
                if let Some(t) = self.target.trace(img) {
                    if trace.map_or(true, |m| t.abs() > m) {
                        trace = Some(t.abs());
                        trace_witness = Some(i);
                    }
                }
            }
        }
        Ok(DefectReport {
            flavor: self.flavor,
            window_size: self.window.len(),
            mult_defect: mult,
            mult_witness,
            free_defect: free,
            free_witness,
            trace_max: trace,
            trace_witness,
        })
    }
}

/// Defect extrema over a window; witnesses are window indices.
#[derive(Clone, Debug, Serialize)]
pub struct DefectReport {
    pub flavor: Flavor,
    pub window_size: usize,
    pub mult_defect: Value,
    pub mult_witness: Option<(usize, usize)>,
    /// `None` when the window has no non-identity element.
    pub free_defect: Option<Value>,
    pub free_witness: Option<usize>,
    pub trace_max: Option<f64>,
    pub trace_witness: Option<usize>,
}

impl DefectReport {
    pub fn is_multiplicative(&self, eps: Rational) -> bool {
        self.mult_defect.lt(eps)
    }

    /// The freeness condition of the report's flavor.
    pub fn is_free(&self, eps: Rational) -> bool {
        let Some(free) = self.free_defect else { return true };
        match self.flavor {
            Flavor::Sofic => !free.lt(Rational::from_integer(1) - eps),
            Flavor::WeakSofic => !free.lt(Rational::new(1, 2)),
            Flavor::Hyperlinear => self.trace_max.map_or(true, |t| Value::Approx(t).lt(eps)),
            Flavor::LinearSofic => {
                let bound = Rational::new(1, 4) - eps;
                match free {
                    Value::Exact(r) => r > bound,
                    Value::Approx(x) => x > num_traits::ToPrimitive::to_f64(&bound).unwrap_or(f64::NAN),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::SymHamming;
    use super::*;
    use crate::group::{FiniteGroup, Permutation};

    fn regular(g: &FiniteGroup) -> ApproxMap<usize, SymHamming> {
        let reg = g.regular_representation();
        let all: Vec<usize> = g.elements().collect();
        ApproxMap::from_fn(Flavor::Sofic, SymHamming { n: g.order() }, &0, all.clone(), all, |&x| reg[x].clone()).unwrap()
    }

    #[test]
    fn regular_representation_is_exact() {
        let c5 = FiniteGroup::cyclic(5).unwrap();
        let r = regular(&c5).measure(&c5).unwrap();
        assert!(r.mult_defect.is_zero());
        assert_eq!(r.free_defect, Some(Value::Exact(Rational::from_integer(1))));
        assert!(r.is_free(Rational::new(1, 100)));
    }

    #[test]
    fn trivial_map_is_not_free() {
        let c5 = FiniteGroup::cyclic(5).unwrap();
        let all: Vec<usize> = c5.elements().collect();
        let m = ApproxMap::from_fn(Flavor::Sofic, SymHamming { n: 5 }, &0, all.clone(), all, |_| Permutation::identity(5)).unwrap();
        let r = m.measure(&c5).unwrap();
        assert!(r.mult_defect.is_zero());
        assert_eq!(r.free_defect, Some(Value::zero()));
    }

    #[test]
    fn swapped_outputs_bound() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let exact = regular(&c6);
        let mut table: HashMap<usize, Permutation> = exact.domain().map(|(k, v)| (*k, v.clone())).collect();
        let t = Permutation::from_cycles(6, &[&[1, 4]]);
        table.insert(2, t.compose(&table[&2]));
        let m = ApproxMap::new(Flavor::Sofic, SymHamming { n: 6 }, &0, exact.window.clone(), table.clone()).unwrap();
        let r = m.measure(&c6).unwrap();
        for g in 0..6 {
            for h in 0..6 {
                let d = m.pair_defect(&c6, &g, &h).unwrap();
                // Recompute by hand: count disagreements.
                let lhs = table[&g].compose(&table[&h]);
                let mis = lhs.disagreements(&table[&c6.mul(&g, &h)]);
                assert_eq!(d, Value::Exact(Rational::new(mis as i64, 6)));
                assert!(d.le_value(Value::Exact(Rational::new(4, 6))));
            }
        }
        assert!(!r.mult_defect.is_zero());
    }

    #[test]
    fn missing_values_are_reported() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let mut table = HashMap::new();
        table.insert(0usize, Permutation::identity(3));
        table.insert(1usize, Permutation::from_cycles(3, &[&[0, 1, 2]]));
        let m = ApproxMap::new(Flavor::Sofic, SymHamming { n: 3 }, &0, vec![0, 1], table).unwrap();
        assert!(matches!(m.measure(&c3), Err(Error::WindowNotClosed(_))));
        assert!("weak-sofic".parse::<Flavor>().is_ok());
        assert!("bogus".parse::<Flavor>().is_err());
    }
}
