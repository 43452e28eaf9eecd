//! Sofic-type approximations of verbal wreath products `G ≀ʷ H` assembled from an
//! approximation `σ` of `H` on a set `B` and an approximation `φ` of `∗ʷ_B G` on a set `A`.

pub mod counterexample;
pub mod experiment;
pub mod gamma;
pub mod kappa;

pub use counterexample::{coordinatewise_counterexample, CounterexampleReport};
pub use experiment::{run_experiment, AmplifyReport, ExperimentConfig, PerturbTarget, Perturbation};
pub use gamma::Amplifier;
pub use kappa::{kappa_instance, kappa_suite, KappaInstance};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupOps, Permutation};
use crate::metric::{ApproxMap, Flavor, PremiseSets, Rational, SymHamming};
use crate::product::{MultiElem, MultiProduct};
use crate::wreath::{VerbalWreath, WreathElem};
use rand::Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// With probability `rate`, replaces each image other than the first (the identity's)
/// by its composite with a random transposition. Returns how many images changed.
pub fn perturb_images<R: Rng>(perms: &mut [&mut Permutation], rate: f64, rng: &mut R) -> usize {
    let mut changed = 0;
    for p in perms.iter_mut().skip(1) {
        let n = p.degree();
        if n < 2 || !rng.gen_bool(rate.clamp(0.0, 1.0)) {
            continue;
        }
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        **p = Permutation::from_cycles(n, &[&[i as u32, j as u32]]).compose(p);
        changed += 1;
    }
    changed
}

/// An approximation `σ: H → Sym(B)`, tabulated on all of `H`.
#[derive(Clone, Debug)]
pub struct Sigma {
    pub h: FiniteGroup,
    pub nb: usize,
    pub perms: Vec<Permutation>,
    inverses: Vec<Permutation>,
    pub perturbed: usize,
}

impl Sigma {
    pub fn from_perms(h: &FiniteGroup, perms: Vec<Permutation>) -> Result<Self> {
        if perms.len() != h.order() {
            return Err(Error::SizeMismatch(h.order(), perms.len()));
        }
        let nb = perms[0].degree();
        if let Some(p) = perms.iter().find(|p| p.degree() != nb) {
            return Err(Error::SizeMismatch(nb, p.degree()));
        }
        if !perms[0].is_identity() {
            return Err(Error::CheckFailed("σ(1) must be the identity".into()));
        }
        let inverses = perms.iter().map(|p| p.inverse()).collect();
        Ok(Sigma { h: h.clone(), nb, perms, inverses, perturbed: 0 })
    }

    /// `copies` disjoint copies of the left regular representation; the point
    /// `i·|H| + p` is `p` in copy `i`.
    pub fn regular(h: &FiniteGroup, copies: usize) -> Self {
        let n = h.order();
        let copies = copies.max(1);
        let perms = h
            .elements()
            .map(|g| {
                let img = (0..n * copies).map(|b| ((b / n) * n + h.mul(&g, &(b % n))) as u32).collect();
                Permutation::from_images(img).expect("regular action")
            })
            .collect();
        Self::from_perms(h, perms).expect("regular representation")
    }

    pub fn perturb<R: Rng>(&self, rate: f64, rng: &mut R) -> Self {
        let mut perms = self.perms.clone();
        let changed = perturb_images(&mut perms.iter_mut().collect::<Vec<_>>(), rate, rng);
        let mut s = Self::from_perms(&self.h, perms).expect("identity untouched");
        s.perturbed = self.perturbed + changed;
        s
    }

    pub fn apply(&self, h: usize, b: usize) -> usize {
        self.perms[h].apply(b)
    }

    /// `σ(h)⁻¹ b`.
    pub fn apply_inv(&self, h: usize, b: usize) -> usize {
        self.inverses[h].apply(b)
    }

    pub fn approx_map(&self, window: Vec<usize>) -> ApproxMap<usize, SymHamming> {
        let all = self.h.elements();
        ApproxMap::from_fn(Flavor::Sofic, SymHamming { n: self.nb }, &0, window, all, |&g| self.perms[g].clone())
            .expect("σ(1) = 1")
    }
}

/// An approximation `φ: ∗ʷ_B G → Sym(A)`, tabulated on a subset of the product.
#[derive(Clone, Debug)]
pub struct Phi {
    pub degree: usize,
    table: BTreeMap<MultiElem, Permutation>,
    pub perturbed: usize,
}

impl Phi {
    /// The left regular representation of the whole product.
    pub fn regular(bprod: &MultiProduct, cap: usize) -> Result<Self> {
        let (grp, elems) = bprod.to_finite_group(cap)?;
        let reg = grp.regular_representation();
        Ok(Phi { degree: grp.order(), table: elems.into_iter().zip(reg).collect(), perturbed: 0 })
    }

    pub fn from_table(bprod: &MultiProduct, table: BTreeMap<MultiElem, Permutation>) -> Result<Self> {
        let one = bprod.identity();
        let id = table.get(&one).ok_or_else(|| Error::WindowNotClosed("φ is not defined at 1".into()))?;
        if !id.is_identity() {
            return Err(Error::CheckFailed("φ(1) must be the identity".into()));
        }
        let degree = id.degree();
        if let Some(p) = table.values().find(|p| p.degree() != degree) {
            return Err(Error::SizeMismatch(degree, p.degree()));
        }
        Ok(Phi { degree, table, perturbed: 0 })
    }

    pub fn perturb<R: Rng>(&self, one: &MultiElem, rate: f64, rng: &mut R) -> Self {
        let mut table = self.table.clone();
        let mut images: Vec<&mut Permutation> = Vec::with_capacity(table.len());
        // The identity goes first so that it is never touched.
        let (head, rest): (Vec<_>, Vec<_>) = table.iter_mut().partition(|(k, _)| *k == one);
        images.extend(head.into_iter().map(|(_, v)| v));
        images.extend(rest.into_iter().map(|(_, v)| v));
        let changed = perturb_images(&mut images, rate, rng);
        Phi { degree: self.degree, table, perturbed: self.perturbed + changed }
    }

    /// Keeps only the values on `keep` and the identity.
    pub fn restrict(&self, keep: &BTreeSet<MultiElem>, one: &MultiElem) -> Self {
        let table = self.table.iter().filter(|(k, _)| keep.contains(*k) || *k == one).map(|(k, v)| (k.clone(), v.clone())).collect();
        Phi { degree: self.degree, table, perturbed: self.perturbed }
    }

    pub fn get(&self, x: &MultiElem) -> Result<&Permutation> {
        self.table.get(x).ok_or_else(|| Error::WindowNotClosed(format!("φ is not defined at {:?}", x)))
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn approx_map(&self, bprod: &MultiProduct, window: Vec<MultiElem>) -> Result<ApproxMap<MultiElem, SymHamming>> {
        let table = self.table.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        ApproxMap::new(Flavor::Sofic, SymHamming { n: self.degree }, &bprod.identity(), window, table)
    }
}

/// The `H`-side sets, which depend only on `F`.
#[derive(Clone, Debug)]
pub struct HSets {
    pub premise: PremiseSets,
    /// `E = E₂ ∪ E₂·supp(E₁)`.
    pub e: Vec<usize>,
    /// `E_H = E·E⁻¹`.
    pub e_h: Vec<usize>,
}

pub fn derive_sets(w: &VerbalWreath, f: &[WreathElem]) -> HSets {
    let premise = PremiseSets::derive(w, f);
    let supp: BTreeSet<usize> = premise.e1.iter().flat_map(|x| w.support(x)).collect();
    let mut e: BTreeSet<usize> = premise.e2.iter().copied().collect();
    for &h in &premise.e2 {
        for &s in &supp {
            e.insert(w.h.mul(&h, &s));
        }
    }
    let e_h: BTreeSet<usize> = e.iter().flat_map(|a| e.iter().map(move |b| w.h.mul(a, &w.h.inv(b)))).collect();
    HSets { premise, e: e.into_iter().collect(), e_h: e_h.into_iter().collect() }
}

/// `B₁`, `B₂`, `B_E = B₁ ∩ B₂` and `|B ∖ B_E| / |B|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSets {
    pub b1: Vec<usize>,
    pub b2: Vec<usize>,
    pub b_e: Vec<usize>,
    pub ratio: Rational,
}

pub fn compute_be(sigma: &Sigma, e: &[usize]) -> BSets {
    let h = &sigma.h;
    let mut b1 = Vec::new();
    let mut b2 = Vec::new();
    let mut b_e = Vec::new();
    for b in 0..sigma.nb {
        let pre: BTreeSet<usize> = e.iter().map(|&x| sigma.apply_inv(x, b)).collect();
        let in1 = pre.len() == e.len();
        let in2 = e.iter().all(|&h1| {
            e.iter().all(|&h2| sigma.apply_inv(h.mul(&h2, &h1), b) == sigma.apply_inv(h1, sigma.apply_inv(h2, b)))
        });
        if in1 {
            b1.push(b);
        }
        if in2 {
            b2.push(b);
        }
        if in1 && in2 {
            b_e.push(b);
        }
    }
    let ratio = if sigma.nb == 0 {
        Rational::from_integer(0)
    } else {
        Rational::new((sigma.nb - b_e.len()) as i64, sigma.nb as i64)
    };
    BSets { b1, b2, b_e, ratio }
}

/// Sizes of every set in the ledger.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LedgerSizes {
    pub f0: usize,
    pub e1: usize,
    pub e1_tilde: usize,
    pub e2: usize,
    pub e: usize,
    pub e_h: usize,
    pub b: usize,
    pub b1: usize,
    pub b2: usize,
    pub b_e: usize,
    pub e_g: usize,
}

/// `ε`, `κ < ε/12` and `ε′ < κ/(4|E|²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmplificationConfig {
    pub epsilon: Rational,
    pub kappa: Rational,
    pub epsilon_prime: Rational,
}

impl AmplificationConfig {
    /// With `epsilon_prime = None` the value `κ/(8|E|²)` is used.
    pub fn new(epsilon: Rational, kappa: Rational, epsilon_prime: Option<Rational>, e_size: usize) -> Result<Self> {
        let zero = Rational::from_integer(0);
        if epsilon <= zero || kappa <= zero {
            return Err(Error::InvalidConfig("ε and κ must be positive".into()));
        }
        if kappa >= epsilon / 12 {
            return Err(Error::InvalidConfig(format!("κ = {} is not below ε/12 = {}", kappa, epsilon / 12)));
        }
        let e2 = 4 * (e_size as i64).pow(2);
        let epsilon_prime = epsilon_prime.unwrap_or(kappa / (2 * e2));
        if epsilon_prime <= zero || epsilon_prime >= kappa / e2 {
            return Err(Error::InvalidConfig(format!("ε′ = {} is not in (0, κ/(4|E|²) = {})", epsilon_prime, kappa / e2)));
        }
        Ok(AmplificationConfig { epsilon, kappa, epsilon_prime })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    #[test]
    fn ledger_examples() {
        let w = VerbalWreath::new(&c(2), &c(3), &"nil:2".parse().unwrap()).unwrap();
        let s = derive_sets(&w, &[w.identity()]);
        assert_eq!((s.premise.e1.len(), s.premise.e2.clone(), s.e.clone(), s.e_h.clone()), (1, vec![0], vec![0], vec![0]));
        let x = w.base.embed(2, 1);
        let s = derive_sets(&w, &[w.base_elem(x)]);
        assert_eq!(s.e, vec![0, 2]);
        let s1 = derive_sets(&w, &w.generators());
        let s2 = derive_sets(&w, &w.generators());
        assert_eq!(s1.premise, s2.premise);
        assert_eq!(s1.e, s2.e);
    }

    #[test]
    fn regular_sigma_has_full_be() {
        let h = FiniteGroup::symmetric(3, 100).unwrap();
        for copies in [1, 3] {
            let s = Sigma::regular(&h, copies);
            let all: Vec<usize> = h.elements().collect();
            let bs = compute_be(&s, &all);
            assert_eq!(bs.b_e.len(), 6 * copies);
            assert_eq!(bs.ratio, Rational::from_integer(0));
            let r = s.approx_map(all).measure(&h).unwrap();
            assert!(r.mult_defect.is_zero());
        }
    }

    #[test]
    fn perturbation_is_seeded() {
        let h = c(5);
        let s = Sigma::regular(&h, 4);
        let a = s.perturb(0.5, &mut ChaCha8Rng::seed_from_u64(7));
        let b = s.perturb(0.5, &mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a.perms, b.perms);
        assert!(a.perms[0].is_identity());
        let all = s.perturb(1.0, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(all.perturbed, 4);
        // A single transposition moves exactly two points relative to the original image.
        for g in 1..5 {
            assert_eq!(all.perms[g].disagreements(&s.perms[g]), 2);
        }
        // The direct scan oracle: a damaged point leaves B_E.
        let bs = compute_be(&all, &[0, 1, 2]);
        assert!(bs.ratio > Rational::from_integer(0));
    }

    #[test]
    fn config_chain() {
        let r = Rational::new;
        let c = AmplificationConfig::new(r(1, 10), r(1, 125), None, 3).unwrap();
        assert_eq!(c.epsilon_prime, r(1, 125) / 72);
        assert!(AmplificationConfig::new(r(1, 10), r(1, 12), None, 3).is_err());
        assert!(AmplificationConfig::new(r(1, 10), r(1, 125), Some(r(1, 10)), 3).is_err());
    }
}
