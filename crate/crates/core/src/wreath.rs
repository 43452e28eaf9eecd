//! Restricted verbal wreath products `G ≀ʷ H = (∗ʷ_H G) ⋊ H` for finite `H`, where `H`
//! permutes the copies of `G` by left translation.

use crate::error::Result;
use crate::group::{FiniteGroup, GroupOps};
use crate::product::{MultiElem, MultiProduct};
use crate::words::WordSet;
use std::collections::BTreeSet;

/// `(x, h)` with `x` in the base `∗ʷ_H G`, stored densely over `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElem {
    pub x: MultiElem,
    pub h: usize,
}

#[derive(Clone, Debug)]
pub struct VerbalWreath {
    pub g: FiniteGroup,
    pub h: FiniteGroup,
    pub base: MultiProduct,
}

impl VerbalWreath {
    pub fn new(g: &FiniteGroup, h: &FiniteGroup, w: &WordSet) -> Result<Self> {
        Ok(VerbalWreath { g: g.clone(), h: h.clone(), base: MultiProduct::new(g, h.order(), w)? })
    }

    pub fn order(&self) -> u128 {
        self.base.order().saturating_mul(self.h.order() as u128)
    }

    /// `α_h`: the copy at index `p` moves to index `h·p`.
    pub fn act(&self, h: usize, x: &MultiElem) -> MultiElem {
        if h == 0 {
            return x.clone();
        }
        self.base.relabel(x, |p| self.h.mul(&h, &p), &self.base)
    }

    pub fn support(&self, x: &MultiElem) -> BTreeSet<usize> {
        self.base.support(x)
    }

    pub fn base_elem(&self, x: MultiElem) -> WreathElem {
        WreathElem { x, h: 0 }
    }

    pub fn top(&self, h: usize) -> WreathElem {
        WreathElem { x: self.base.identity(), h }
    }

    /// `g` in the copy of `G` at the identity of `H`.
    pub fn embed_g(&self, g: usize) -> WreathElem {
        self.base_elem(self.base.embed(0, g))
    }

    pub fn generators(&self) -> Vec<WreathElem> {
        let mut out: Vec<WreathElem> = self.g.generating_set().into_iter().map(|s| self.embed_g(s)).collect();
        out.extend(self.h.generating_set().into_iter().map(|h| self.top(h)));
        out
    }

    pub fn elements(&self) -> Vec<WreathElem> {
        let base = self.base.elements();
        self.h.elements().flat_map(|h| base.iter().map(move |x| WreathElem { x: x.clone(), h })).collect()
    }

    pub fn to_finite_group(&self, cap: usize) -> Result<(FiniteGroup, Vec<WreathElem>)> {
        if self.order() > cap as u128 {
            return Err(crate::Error::SizeCapExceeded { size: self.order(), cap: cap as u128 });
        }
        let (g, elems) = FiniteGroup::enumerate(self, &self.generators(), cap)?;
        g.validate()?;
        Ok((g, elems))
    }
}

impl GroupOps for VerbalWreath {
    type Elem = WreathElem;

    fn identity(&self) -> WreathElem {
        self.top(0)
    }

    fn mul(&self, a: &WreathElem, b: &WreathElem) -> WreathElem {
        WreathElem { x: self.base.mul(&a.x, &self.act(a.h, &b.x)), h: self.h.mul(&a.h, &b.h) }
    }

    fn inv(&self, a: &WreathElem) -> WreathElem {
        let hi = self.h.inv(&a.h);
        WreathElem { x: self.act(hi, &self.base.inv(&a.x)), h: hi }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    #[test]
    fn orders_and_generation() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        for (w, n) in [("nil:1", 8usize), ("nil:2", 16)] {
            let wr = VerbalWreath::new(&c2, &c2, &w.parse().unwrap()).unwrap();
            assert_eq!(wr.order(), n as u128);
            let (g, _) = wr.to_finite_group(DEFAULT_CAP).unwrap();
            assert_eq!(g.order(), n);
            assert!(g.associativity_scan());
        }
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let wr = VerbalWreath::new(&FiniteGroup::trivial(), &c3, &"nil:2".parse().unwrap()).unwrap();
        assert_eq!(wr.order(), 3);
    }

    #[test]
    fn action_is_by_automorphisms() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let wr = VerbalWreath::new(&c2, &c3, &"nil:2".parse().unwrap()).unwrap();
        let elems = wr.base.elements();
        assert_eq!(elems.len(), 64);
        for h in 0..3 {
            for x in &elems {
                for y in &elems {
                    assert_eq!(wr.act(h, &wr.base.mul(x, y)), wr.base.mul(&wr.act(h, x), &wr.act(h, y)));
                }
                for h2 in 0..3 {
                    assert_eq!(wr.act(h, &wr.act(h2, x)), wr.act(c3.mul(&h, &h2), x));
                }
                let moved: BTreeSet<usize> = wr.support(x).iter().map(|&p| c3.mul(&h, &p)).collect();
                assert_eq!(wr.support(&wr.act(h, x)), moved);
            }
        }
    }
}
