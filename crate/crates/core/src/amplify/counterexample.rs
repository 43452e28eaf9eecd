//! Why a sofic approximation of `∗ʷ_B G` cannot simply be taken coordinate-wise.
//!
//! In `P = ℤ/p ∗² ℤ/p` the cartesian subgroup `F = [A,B]^w ≅ ℤ/p` is nontrivial, but any
//! map built factor by factor sends `[g_i, g_j]` to a commutator of commuting
//! coordinates, hence to 1. The same happens through `S_p ∗² S_p`: the cartesian part
//! there is `S_p^ab ⊗ S_p^ab = ℤ/2`, and the commutator of two `p`-cycles lands on
//! `sign ⊗ sign` of even permutations.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupOps, Permutation};
use crate::metric::{ApproxMap, Flavor, SymHamming, Value};
use crate::product::{EngineChoice, Letter, NormalForm, VerbalProduct};
use crate::words::WordSet;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub p: usize,
    pub product_order: u128,
    pub cartesian_order: u128,
    /// Non-identity elements of the cartesian part.
    pub witnesses: usize,
    /// `Θ` into `Sym(p) ⊕ Sym(p) ⊆ Sym(p×p)`.
    pub theta_mult_defect: Value,
    pub theta_free_defect: Value,
    /// Cartesian order of `S_p ∗² S_p`.
    pub quotient_cartesian_order: u128,
    pub quotient_is_homomorphism: bool,
    pub quotient_image_trivial: bool,
    /// The exact regular representation of `P` on the same witnesses.
    pub regular_free_defect: Value,
    pub fail_by_design: bool,
}

fn is_odd_prime(p: usize) -> bool {
    p >= 3 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn coordinatewise_counterexample(p: usize, cap: usize) -> Result<CounterexampleReport> {
    if !is_odd_prime(p) || p > 13 {
        return Err(Error::InvalidConfig(format!("p = {} must be an odd prime at most 13", p)));
    }
    let cp = FiniteGroup::cyclic(p)?;
    let nil2 = WordSet::Nilpotent(2);
    let prod = VerbalProduct::build(&cp, &cp, &nil2, EngineChoice::Auto, cap)?;
    let c = prod.commutator(&prod.embed_a(1), &prod.embed_b(1));
    let cart: Vec<NormalForm> = (0..p as i64).map(|t| prod.pow(&c, t)).collect();
    let all = prod.elements().expect("finite product");

    // Coordinate-wise: (a, b, u) acts on (i, j) ∈ ℤ/p × ℤ/p by (a + i, b + j).
    let coord = |x: &NormalForm| {
        let img = (0..p * p).map(|k| (((x.a + k / p) % p) * p + (x.b + k % p) % p) as u32).collect();
        Permutation::from_images(img).expect("translation")
    };
    let theta = ApproxMap::from_fn(Flavor::Sofic, SymHamming { n: p * p }, &prod.identity(), cart.clone(), all.clone(), coord)?;
    let tr = theta.measure(&prod)?;
    let mut whole = theta.clone();
    whole.window = all.clone();
    let theta_mult = whole.measure(&prod)?.mult_defect;

    // Letters of P go to powers of a p-cycle in each copy of S_p.
    let sp = FiniteGroup::symmetric(p, cap)?;
    let cyc = sp.elements().find(|&x| sp.element_order(x) == p).expect("S_p has a p-cycle");
    let q = VerbalProduct::build(&sp, &sp, &nil2, EngineChoice::Auto, cap)?;
    let to_q = |x: &NormalForm| {
        let letters: Vec<Letter> = prod
            .word_of(x)
            .into_iter()
            .map(|l| match l {
                Letter::A(k) => Letter::A(sp.pow(&cyc, k as i64)),
                Letter::B(k) => Letter::B(sp.pow(&cyc, k as i64)),
            })
            .collect();
        q.from_letters(&letters)
    };
    let images: Vec<NormalForm> = all.iter().map(to_q).collect();
    let index = |x: &NormalForm| all.iter().position(|y| y == x).expect("closed");
    let is_hom = all
        .iter()
        .enumerate()
        .all(|(i, x)| all.iter().enumerate().all(|(j, y)| q.mul(&images[i], &images[j]) == images[index(&prod.mul(x, y))]));
    let image_trivial = cart.iter().all(|x| images[index(x)] == q.identity());

    let (pg, elems) = prod.to_finite_group(cap)?;
    let reg = pg.regular_representation();
    let regular = ApproxMap::from_fn(Flavor::Sofic, SymHamming { n: pg.order() }, &prod.identity(), cart.clone(), all.clone(), |x| {
        reg[elems.iter().position(|e| e == x).expect("enumerated")].clone()
    })?;
    let rr = regular.measure(&prod)?;

    let theta_free = tr.free_defect.unwrap_or(Value::zero());
    Ok(CounterexampleReport {
        p,
        product_order: prod.order().unwrap_or(0),
        cartesian_order: prod.cartesian_order().unwrap_or(0),
        witnesses: cart.len() - 1,
        theta_mult_defect: theta_mult,
        theta_free_defect: theta_free,
        quotient_cartesian_order: q.cartesian_order().unwrap_or(0),
        quotient_is_homomorphism: is_hom,
        quotient_image_trivial: image_trivial,
        regular_free_defect: rr.free_defect.unwrap_or(Value::zero()),
        fail_by_design: theta_free.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;
    use crate::metric::Rational;

    #[test]
    fn p3() {
        let r = coordinatewise_counterexample(3, DEFAULT_CAP).unwrap();
        assert_eq!((r.product_order, r.cartesian_order, r.witnesses), (27, 3, 2));
        assert_eq!(r.theta_free_defect, Value::zero());
        assert!(r.theta_mult_defect.is_zero());
        assert_eq!(r.quotient_cartesian_order, 2);
        assert!(r.quotient_is_homomorphism && r.quotient_image_trivial && r.fail_by_design);
        assert_eq!(r.regular_free_defect, Value::Exact(Rational::from_integer(1)));
        assert!(coordinatewise_counterexample(4, DEFAULT_CAP).is_err());
    }
}
