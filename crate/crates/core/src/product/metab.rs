//! Cartesian part of `A ∗^{sol:2} B` for abelian `A`, `B`: the free abelian group on
//! `e_{α,β} = [α, β]` with `α ≠ 1`, `β ≠ 1`, and the conjugation action on it.

use crate::group::{FiniteGroup, GroupOps};
use std::collections::BTreeMap;

pub type Lattice = BTreeMap<(u32, u32), i64>;

pub fn add_term(u: &mut Lattice, alpha: usize, beta: usize, coef: i64) {
    if alpha == 0 || beta == 0 || coef == 0 {
        return;
    }
    let key = (alpha as u32, beta as u32);
    let v = u.entry(key).or_insert(0);
    *v += coef;
    if *v == 0 {
        u.remove(&key);
    }
}

pub fn add(u: &Lattice, v: &Lattice) -> Lattice {
    let mut w = u.clone();
    for (&(a, b), &c) in v {
        add_term(&mut w, a as usize, b as usize, c);
    }
    w
}

pub fn neg(u: &Lattice) -> Lattice {
    u.iter().map(|(&k, &c)| (k, -c)).collect()
}

/// `x u x⁻¹` for `x ∈ A`: `e_{α,β} ↦ e_{xα,β} − e_{x,β}`.
pub fn conj_a(a: &FiniteGroup, x: usize, u: &Lattice) -> Lattice {
    if x == 0 {
        return u.clone();
    }
    let mut w = Lattice::new();
    for (&(al, be), &c) in u {
        add_term(&mut w, a.mul(&x, &(al as usize)), be as usize, c);
        add_term(&mut w, x, be as usize, -c);
    }
    w
}

/// `y u y⁻¹` for `y ∈ B`: `e_{α,β} ↦ e_{α,yβ} − e_{α,y}`.
pub fn conj_b(b: &FiniteGroup, y: usize, u: &Lattice) -> Lattice {
    if y == 0 {
        return u.clone();
    }
    let mut w = Lattice::new();
    for (&(al, be), &c) in u {
        add_term(&mut w, al as usize, b.mul(&y, &(be as usize)), c);
        add_term(&mut w, al as usize, y, -c);
    }
    w
}

/// `(a,b,u)(a′,b′,u′) = (aa′, bb′, b′⁻¹(−e_{a′⁻¹,b⁻¹} + a′⁻¹ u a′) b′ + u′)`.
pub fn mul(
    a: &FiniteGroup,
    b: &FiniteGroup,
    x: (usize, usize, &Lattice),
    y: (usize, usize, &Lattice),
) -> (usize, usize, Lattice) {
    let (a1, b1, u1) = x;
    let (a2, b2, u2) = y;
    let a2i = a.inv(&a2);
    let mut inner = conj_a(a, a2i, u1);
    add_term(&mut inner, a2i, b.inv(&b1), -1);
    let moved = conj_b(b, b.inv(&b2), &inner);
    (a.mul(&a1, &a2), b.mul(&b1, &b2), add(&moved, u2))
}
