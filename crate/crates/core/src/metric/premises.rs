//! The four-premise multiplicativity criterion for maps out of a verbal wreath product.
//!
//! For `z = (x,h)`, `z′ = (x′,h′)` in `F₀` the triangle inequality gives
//! `d(Γ(z)Γ(z′), Γ(zz′)) ≤ p₁ + p₂ + 3p₃ + p₄` with `pᵢ` the measured premise values, so
//! premises below `ε/6` force the conclusion below `ε`.

use super::{ApproxMap, MetricGroup, Rational, Value};
use crate::error::Result;
use crate::group::GroupOps;
use crate::product::MultiElem;
use crate::wreath::{VerbalWreath, WreathElem};
use serde::Serialize;
use std::collections::BTreeSet;

/// `F₀`, `proj_G F₀`, `E₁`, `Ẽ₁`, `E₂` and `E₂·E₂`, each sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PremiseSets {
    pub f0: Vec<WreathElem>,
    pub proj_g: Vec<MultiElem>,
    pub e1: Vec<MultiElem>,
    pub e1_tilde: Vec<MultiElem>,
    pub e2: Vec<usize>,
    pub e2e2: Vec<usize>,
}

impl PremiseSets {
    /// `F₀ = F ∪ {1} ∪ F⁻¹` and the sets built from it.
    pub fn derive(w: &VerbalWreath, f: &[WreathElem]) -> Self {
        let mut f0: BTreeSet<WreathElem> = f.iter().cloned().collect();
        f0.insert(w.identity());
        f0.extend(f.iter().map(|z| w.inv(z)));
        let proj_g: BTreeSet<MultiElem> = f0.iter().map(|z| z.x.clone()).collect();
        let e2: BTreeSet<usize> = f0.iter().map(|z| z.h).collect();
        let mut e1 = BTreeSet::new();
        for &h in &e2 {
            for x in &proj_g {
                e1.insert(w.act(h, x));
            }
        }
        let mut e1_tilde = BTreeSet::new();
        for y in &proj_g {
            for ax in &e1 {
                e1_tilde.insert(w.base.mul(y, ax));
            }
        }
        let e2e2: BTreeSet<usize> = e2.iter().flat_map(|a| e2.iter().map(move |b| w.h.mul(a, b))).collect();
        PremiseSets {
            f0: f0.into_iter().collect(),
            proj_g: proj_g.into_iter().collect(),
            e1: e1.into_iter().collect(),
            e1_tilde: e1_tilde.into_iter().collect(),
            e2: e2.into_iter().collect(),
            e2e2: e2e2.into_iter().collect(),
        }
    }

    /// Every element at which the premises and the conclusion evaluate `Γ`.
    pub fn domain(&self, w: &VerbalWreath) -> BTreeSet<WreathElem> {
        let mut d = BTreeSet::new();
        for z in &self.f0 {
            for z2 in &self.f0 {
                d.insert(w.mul(z, z2));
            }
            d.insert(z.clone());
        }
        for x in &self.e1 {
            for x2 in &self.e1 {
                d.insert(w.base_elem(w.base.mul(x, x2)));
            }
            d.insert(w.base_elem(x.clone()));
        }
        for &h in &self.e2e2 {
            d.insert(w.top(h));
            for x in &self.e1_tilde {
                d.insert(w.base_elem(x.clone()));
                d.insert(WreathElem { x: x.clone(), h });
            }
        }
        d
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Premise {
    pub value: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PremiseReport {
    pub epsilon: Value,
    pub threshold: Value,
    pub premises: [Premise; 4],
    pub premises_pass: bool,
    /// Measured `max d(Γ(z)Γ(z′), Γ(zz′))` over `F₀ × F₀`.
    pub conclusion: Value,
    pub conclusion_pass: bool,
    /// `p₁ + p₂ + 3p₃ + p₄`.
    pub chain_bound: Value,
    pub chain_holds: bool,
}

impl PremiseReport {
    /// Premises passing without the conclusion passing would contradict the lemma.
    pub fn sound(&self) -> bool {
        self.chain_holds && (!self.premises_pass || self.conclusion_pass)
    }

    pub fn failed_premises(&self) -> Vec<usize> {
        (0..4).filter(|&i| !self.premises[i].pass).map(|i| i + 1).collect()
    }
}

fn running_max(acc: &mut Value, v: Value) {
    *acc = acc.max(v);
}

pub fn check_premises<M: MetricGroup>(
    w: &VerbalWreath,
    sets: &PremiseSets,
    eps: Rational,
    gamma: &ApproxMap<WreathElem, M>,
) -> Result<PremiseReport> {
    let k = &gamma.target;
    let g = |z: &WreathElem| gamma.get(z);
    let base = |x: &MultiElem| w.base_elem(x.clone());
    let top = |h: usize| w.top(h);

    let mut p1 = Value::zero();
    for x in &sets.e1 {
        for x2 in &sets.e1 {
            let lhs = k.mul(g(&base(x))?, g(&base(x2))?);
            running_max(&mut p1, k.dist(&lhs, g(&base(&w.base.mul(x, x2)))?));
        }
    }
    let mut p2 = Value::zero();
    for &h in &sets.e2 {
        for &h2 in &sets.e2 {
            let lhs = k.mul(g(&top(h))?, g(&top(h2))?);
            running_max(&mut p2, k.dist(&lhs, g(&top(w.h.mul(&h, &h2)))?));
        }
    }
    let mut p3 = Value::zero();
    for x in &sets.e1_tilde {
        for &h in &sets.e2e2 {
            let lhs = k.mul(g(&base(x))?, g(&top(h))?);
            running_max(&mut p3, k.dist(&lhs, g(&WreathElem { x: x.clone(), h })?));
        }
    }
    let mut p4 = Value::zero();
    for x in &sets.proj_g {
        for &h in &sets.e2 {
            let lhs = k.mul(g(&top(h))?, g(&base(x))?);
            let rhs = k.mul(g(&base(&w.act(h, x)))?, g(&top(h))?);
            running_max(&mut p4, k.dist(&lhs, &rhs));
        }
    }
    let mut conclusion = Value::zero();
    for z in &sets.f0 {
        for z2 in &sets.f0 {
            let lhs = k.mul(g(z)?, g(z2)?);
            running_max(&mut conclusion, k.dist(&lhs, g(&w.mul(z, z2))?));
        }
    }

    let threshold = eps / 6;
    let premises = [p1, p2, p3, p4].map(|v| Premise { value: v, pass: v.lt(threshold) });
    let premises_pass = premises.iter().all(|p| p.pass);
    let chain_bound = p1.add(p2).add(p3.scale(3)).add(p4);
    Ok(PremiseReport {
        epsilon: Value::Exact(eps),
        threshold: Value::Exact(threshold),
        premises,
        premises_pass,
        conclusion,
        conclusion_pass: conclusion.lt(eps),
        chain_bound,
        chain_holds: conclusion.le_value(chain_bound),
    })
}

#[cfg(test)]
mod tests {
    use super::super::{Flavor, SymHamming};
    use super::*;
    use crate::group::{FiniteGroup, Permutation, DEFAULT_CAP};

    #[test]
    fn exact_map_passes_everything() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let w = VerbalWreath::new(&c2, &c2, &"nil:2".parse().unwrap()).unwrap();
        let (grp, elems) = w.to_finite_group(DEFAULT_CAP).unwrap();
        let reg = grp.regular_representation();
        let idx = |z: &WreathElem| elems.iter().position(|e| e == z).unwrap();
        let sets = PremiseSets::derive(&w, &w.generators());
        let gamma = ApproxMap::from_fn(Flavor::Sofic, SymHamming { n: grp.order() }, &w.identity(), sets.f0.clone(), sets.domain(&w), |z| {
            reg[idx(z)].clone()
        })
        .unwrap();
        let r = check_premises(&w, &sets, Rational::new(1, 1000), &gamma).unwrap();
        assert!(r.premises_pass && r.conclusion.is_zero() && r.sound());

        // Corrupting Γ on the top generator breaks premise (ii).
        let t = w.top(1);
        let bad = gamma.map_values(|p| p.clone());
        let mut table: std::collections::HashMap<_, _> = bad.domain().map(|(k, v)| (k.clone(), v.clone())).collect();
        let swap = Permutation::from_cycles(grp.order(), &[&[0, 1]]);
        table.insert(t.clone(), swap.compose(&table[&t]));
        let bad = ApproxMap::new(Flavor::Sofic, SymHamming { n: grp.order() }, &w.identity(), sets.f0.clone(), table).unwrap();
        let r = check_premises(&w, &sets, Rational::new(1, 1000), &bad).unwrap();
        assert!(r.failed_premises().contains(&2));
        assert!(r.sound());
    }
}
