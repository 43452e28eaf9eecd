//! Random instances for the density bound `|B ∖ B_E|/|B| ≤ κ` whenever `σ` is
//! `(E_H, ε′)`-sofic with `ε′ < κ/(4|E|²)`.

use super::{compute_be, Sigma};
use crate::group::{FiniteGroup, GroupOps};
use crate::metric::{Rational, Value};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, Serialize)]
pub struct KappaInstance {
    pub group: String,
    pub b: usize,
    pub rate: f64,
    pub seed: u64,
    pub e: Vec<usize>,
    /// `max(mult defect, 1 − free defect)` of `σ` on `E_H`.
    pub sigma_defect: Value,
    pub epsilon_prime: Value,
    pub kappa: Value,
    pub ratio: Value,
    pub holds: bool,
}

fn exact(v: Value) -> Rational {
    match v {
        Value::Exact(r) => r,
        Value::Approx(_) => unreachable!("Hamming values are exact"),
    }
}

/// One instance: `σ` is `copies` copies of the regular representation of `h`,
/// perturbed at `rate`; `E` is a random set of size `e_size` containing 1.
pub fn kappa_instance(h: &FiniteGroup, label: &str, copies: usize, rate: f64, e_size: usize, seed: u64) -> KappaInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = Sigma::regular(h, copies).perturb(rate, &mut rng);
    let mut rest: Vec<usize> = (1..h.order()).collect();
    rest.shuffle(&mut rng);
    let mut e: Vec<usize> = std::iter::once(0).chain(rest.into_iter().take(e_size.saturating_sub(1))).collect();
    e.sort_unstable();
    let e_h: BTreeSet<usize> = e.iter().flat_map(|a| e.iter().map(move |b| h.mul(a, &h.inv(b)))).collect();
    let report = sigma.approx_map(e_h.into_iter().collect()).measure(h).expect("σ is total on H");
    let one = Rational::from_integer(1);
    let mult = exact(report.mult_defect);
    let unfree = report.free_defect.map_or(Rational::from_integer(0), |f| one - exact(f));
    let d = mult.max(unfree);
    // Smallest grid values strictly above the thresholds.
    let tick = Rational::new(1, 1_000_000);
    let eps_prime = d + tick;
    let kappa = eps_prime * (4 * (e.len() as i64).pow(2)) + tick;
    let ratio = compute_be(&sigma, &e).ratio;
    KappaInstance {
        group: label.to_string(),
        b: sigma.nb,
        rate,
        seed,
        e,
        sigma_defect: Value::Exact(d),
        epsilon_prime: Value::Exact(eps_prime),
        kappa: Value::Exact(kappa),
        ratio: Value::Exact(ratio),
        holds: ratio <= kappa,
    }
}

/// `n` instances over a fixed list of groups, copy counts and perturbation rates.
pub fn kappa_suite(n: usize, seed: u64) -> Vec<KappaInstance> {
    let groups: Vec<(&str, FiniteGroup)> = vec![
        ("cyclic:5", FiniteGroup::cyclic(5).unwrap()),
        ("sym:3", FiniteGroup::symmetric(3, 10).unwrap()),
        ("dihedral:4", FiniteGroup::dihedral(4, 10).unwrap()),
        ("klein4", FiniteGroup::klein4()),
        ("cyclic:7", FiniteGroup::cyclic(7).unwrap()),
        ("sym:4", FiniteGroup::symmetric(4, 30).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let (label, h) = &groups[i % groups.len()];
            let copies = [1usize, 8, 40, 200][rng.gen_range(0..4)];
            // Every fifth instance is exact.
            let rate = if i % 5 == 0 { 0.0 } else { [0.05, 0.2, 0.5, 1.0][rng.gen_range(0..4)] };
            let e_size = rng.gen_range(1..=h.order().min(3));
            kappa_instance(h, label, copies, rate, e_size, seed.wrapping_add(i as u64))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_instance_has_empty_complement() {
        let h = FiniteGroup::cyclic(5).unwrap();
        let k = kappa_instance(&h, "cyclic:5", 3, 0.0, 3, 1);
        assert!(k.ratio.is_zero() && k.holds);
    }

    #[test]
    fn suite_is_deterministic() {
        let a = kappa_suite(6, 9);
        let b = kappa_suite(6, 9);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
