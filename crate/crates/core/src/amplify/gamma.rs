//! `Θ`, `φ⋆` and the four realizations `Γ = ψ ∘ φ⋆ ∘ Θ`.

use super::{compute_be, derive_sets, BSets, HSets, LedgerSizes, Phi, Sigma};
use crate::error::{Error, Result};
use crate::group::{GroupOps, Permutation};
use crate::metric::fp::{FpMatrix, GlRank};
use crate::metric::unitary::permutation_matrix;
use crate::metric::{ApproxMap, Flavor, MetricGroup, SymHamming, UnitaryHs, WreathMetric, WreathPoint};
use crate::product::{MultiElem, MultiProduct};
use crate::wreath::{VerbalWreath, WreathElem};
use nalgebra::DMatrix;
use std::collections::BTreeSet;

/// The wreath product, `σ`, the product `∗ʷ_B G` and every set derived from `F` and `σ`.
#[derive(Clone, Debug)]
pub struct Amplifier {
    pub wreath: VerbalWreath,
    pub sigma: Sigma,
    pub bprod: MultiProduct,
    pub hsets: HSets,
    pub bsets: BSets,
    /// `E_G = ∪_{b∈B_E} θ_b(E₁)`.
    pub e_g: Vec<MultiElem>,
    in_e: Vec<bool>,
    in_b1: Vec<bool>,
    in_be: Vec<bool>,
}

impl Amplifier {
    pub fn new(wreath: &VerbalWreath, sigma: Sigma, f: &[WreathElem]) -> Result<Self> {
        if sigma.h.order() != wreath.h.order() {
            return Err(Error::SizeMismatch(wreath.h.order(), sigma.h.order()));
        }
        let bprod = MultiProduct::new(&wreath.g, sigma.nb, &wreath.base.words)?;
        let hsets = derive_sets(wreath, f);
        let bsets = compute_be(&sigma, &hsets.e);
        let mask = |v: &[usize], n: usize| {
            let mut m = vec![false; n];
            v.iter().for_each(|&i| m[i] = true);
            m
        };
        let in_e = mask(&hsets.e, wreath.h.order());
        let in_b1 = mask(&bsets.b1, sigma.nb);
        let in_be = mask(&bsets.b_e, sigma.nb);
        let mut amp = Amplifier { wreath: wreath.clone(), sigma, bprod, hsets, bsets, e_g: vec![], in_e, in_b1, in_be };
        let mut e_g = BTreeSet::new();
        for &b in &amp.bsets.b_e {
            for x in &amp.hsets.premise.e1 {
                e_g.insert(amp.theta(b, x));
            }
        }
        amp.e_g = e_g.into_iter().collect();
        Ok(amp)
    }

    pub fn in_be(&self, b: usize) -> bool {
        self.in_be[b]
    }

    /// `θ_b`: the copy at `h` goes to `σ(h)⁻¹b`. Defined as the identity unless `b ∈ B₁`
    /// and `supp(x) ⊆ E`.
    pub fn theta(&self, b: usize, x: &MultiElem) -> MultiElem {
        let supp = self.wreath.support(x);
        if !self.in_b1[b] || supp.iter().any(|&h| !self.in_e[h]) {
            return self.bprod.identity();
        }
        self.wreath.base.relabel(x, |h| self.sigma.apply_inv(h, b), &self.bprod)
    }

    pub fn sizes(&self) -> LedgerSizes {
        let p = &self.hsets.premise;
        LedgerSizes {
            f0: p.f0.len(),
            e1: p.e1.len(),
            e1_tilde: p.e1_tilde.len(),
            e2: p.e2.len(),
            e: self.hsets.e.len(),
            e_h: self.hsets.e_h.len(),
            b: self.sigma.nb,
            b1: self.bsets.b1.len(),
            b2: self.bsets.b2.len(),
            b_e: self.bsets.b_e.len(),
            e_g: self.e_g.len(),
        }
    }

    /// Every element where the premises and the conclusion evaluate `Γ`.
    pub fn domain(&self) -> BTreeSet<WreathElem> {
        self.hsets.premise.domain(&self.wreath)
    }

    /// `E_G` together with its pairwise products, the points where `φ` must be defined
    /// for its own defects to be measured.
    pub fn phi_window_closure(&self) -> BTreeSet<MultiElem> {
        let mut s: BTreeSet<MultiElem> = self.e_g.iter().cloned().collect();
        for x in &self.e_g {
            for y in &self.e_g {
                s.insert(self.bprod.mul(x, y));
            }
        }
        s
    }

    /// `φ⋆(Θ(x,h))`: the permutation `σ(h)` and one `φ`-image per target block `c`,
    /// namely `φ(θ_c(x))` for `c ∈ B_E` and the identity otherwise.
    pub fn blocks<'a>(&self, phi: &'a Phi, z: &WreathElem) -> Result<(&Permutation, Vec<Option<&'a Permutation>>)> {
        let tau = &self.sigma.perms[z.h];
        let mut out = Vec::with_capacity(self.sigma.nb);
        for c in 0..self.sigma.nb {
            out.push(if self.in_be[c] { Some(phi.get(&self.theta(c, &z.x))?) } else { None });
        }
        Ok((tau, out))
    }

    /// `Γ(x,h)(a,b) = (φθ_{σ(h)b}(x)(a), σ(h)b)` on `A × B`, point `(a,b)` at `b·|A| + a`.
    pub fn gamma_sofic(&self, phi: &Phi, z: &WreathElem) -> Result<Permutation> {
        let (tau, blocks) = self.blocks(phi, z)?;
        let na = phi.degree;
        let mut img = vec![0u32; na * self.sigma.nb];
        for b in 0..self.sigma.nb {
            let c = tau.apply(b);
            for a in 0..na {
                let a2 = blocks[c].map_or(a, |u| u.apply(a));
                img[b * na + a] = (c * na + a2) as u32;
            }
        }
        Ok(Permutation::from_images(img).expect("blockwise bijection"))
    }

    /// `((y_b)_b, σ(h))` in `Sym(A) ≀_B Sym(B)`.
    pub fn gamma_weak(&self, phi: &Phi, z: &WreathElem) -> Result<WreathPoint<Permutation>> {
        let (tau, blocks) = self.blocks(phi, z)?;
        let id = Permutation::identity(phi.degree);
        let x = (0..self.sigma.nb).map(|b| blocks[tau.apply(b)].cloned().unwrap_or_else(|| id.clone())).collect();
        Ok(WreathPoint { x, tau: tau.clone() })
    }

    /// `η((U_c)_c) P(σ(h))` with `P(τ) v_i^b = v_i^{τ(b)}` and `η` block diagonal.
    pub fn gamma_hyperlinear(&self, phi: &Phi, z: &WreathElem) -> Result<DMatrix<f64>> {
        let (tau, blocks) = self.blocks(phi, z)?;
        let mats: Vec<Option<DMatrix<f64>>> = blocks.iter().map(|u| u.map(permutation_matrix)).collect();
        Ok(eta_real(&mats, phi.degree) * block_perm_real(tau, phi.degree))
    }

    /// The same block construction over `F_p`.
    pub fn gamma_linear(&self, phi: &Phi, z: &WreathElem, p: u32) -> Result<FpMatrix> {
        let (tau, blocks) = self.blocks(phi, z)?;
        let n = phi.degree;
        let nb = self.sigma.nb;
        let mut eta = FpMatrix::identity(n * nb, p);
        for (c, u) in blocks.iter().enumerate() {
            if let Some(u) = u {
                let m = FpMatrix::permutation(u, p);
                for i in 0..n {
                    for j in 0..n {
                        eta.a[(c * n + i) * n * nb + c * n + j] = m.get(i, j);
                    }
                }
            }
        }
        let pm = FpMatrix::permutation(&block_perm(tau, n), p);
        Ok(eta.mul(&pm))
    }

    fn window(&self) -> Vec<WreathElem> {
        self.hsets.premise.f0.clone()
    }

    pub fn sofic_map(&self, phi: &Phi) -> Result<ApproxMap<WreathElem, SymHamming>> {
        let target = SymHamming { n: phi.degree * self.sigma.nb };
        self.tabulate(Flavor::Sofic, target, |z| self.gamma_sofic(phi, z))
    }

    pub fn weak_map(&self, phi: &Phi) -> Result<ApproxMap<WreathElem, WreathMetric<SymHamming>>> {
        let target = WreathMetric::new(SymHamming { n: phi.degree }, self.sigma.nb)?;
        self.tabulate(Flavor::WeakSofic, target, |z| self.gamma_weak(phi, z))
    }

    pub fn hyperlinear_map(&self, phi: &Phi) -> Result<ApproxMap<WreathElem, UnitaryHs>> {
        let target = UnitaryHs { n: phi.degree * self.sigma.nb };
        self.tabulate(Flavor::Hyperlinear, target.clone(), |z| target.element(self.gamma_hyperlinear(phi, z)?))
    }

    pub fn linear_map(&self, phi: &Phi, p: u32) -> Result<ApproxMap<WreathElem, GlRank>> {
        let target = GlRank::new(phi.degree * self.sigma.nb, p)?;
        self.tabulate(Flavor::LinearSofic, target, |z| self.gamma_linear(phi, z, p))
    }

    fn tabulate<M: MetricGroup>(
        &self,
        flavor: Flavor,
        target: M,
        f: impl Fn(&WreathElem) -> Result<M::Elem>,
    ) -> Result<ApproxMap<WreathElem, M>> {
        let mut table = std::collections::HashMap::new();
        for z in self.domain() {
            let v = f(&z)?;
            table.insert(z, v);
        }
        ApproxMap::new(flavor, target, &self.wreath.identity(), self.window(), table)
    }
}

/// The permutation of `B × [n]` (index `b·n + i`) sending `(b,i)` to `(τ(b),i)`.
pub fn block_perm(tau: &Permutation, n: usize) -> Permutation {
    let nb = tau.degree();
    Permutation::from_images((0..nb * n).map(|k| (tau.apply(k / n) * n + k % n) as u32).collect()).expect("block permutation")
}

pub fn block_perm_real(tau: &Permutation, n: usize) -> DMatrix<f64> {
    permutation_matrix(&block_perm(tau, n))
}

/// Block-diagonal `η((U_c)_c)`; `None` blocks are the identity.
pub fn eta_real(blocks: &[Option<DMatrix<f64>>], n: usize) -> DMatrix<f64> {
    let nb = blocks.len();
    let mut m = DMatrix::identity(n * nb, n * nb);
    for (c, u) in blocks.iter().enumerate() {
        if let Some(u) = u {
            m.view_mut((c * n, c * n), (n, n)).copy_from(u);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, DEFAULT_CAP};
    use crate::metric::{check_premises, Rational, Value};

    fn setup(h: usize) -> (Amplifier, Phi) {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let hg = FiniteGroup::cyclic(h).unwrap();
        let w = VerbalWreath::new(&c2, &hg, &"nil:2".parse().unwrap()).unwrap();
        let amp = Amplifier::new(&w, Sigma::regular(&hg, 1), &w.generators()).unwrap();
        let phi = Phi::regular(&amp.bprod, DEFAULT_CAP).unwrap();
        (amp, phi)
    }

    #[test]
    fn theta_relabels_and_is_a_homomorphism() {
        let (amp, _) = setup(3);
        let base = &amp.wreath.base;
        let elems = base.elements();
        assert_eq!(amp.theta(0, &base.identity()), amp.bprod.identity());
        for b in 0..3 {
            let x = base.embed(1, 1);
            let y = amp.theta(b, &x);
            assert_eq!(amp.bprod.support(&y).into_iter().collect::<Vec<_>>(), vec![amp.sigma.apply_inv(1, b)]);
            for x in elems.iter().step_by(5) {
                for y in elems.iter().step_by(7) {
                    assert_eq!(amp.theta(b, &base.mul(x, y)), amp.bprod.mul(&amp.theta(b, x), &amp.theta(b, y)));
                }
            }
            // θ_{σ(h)b}(α_h(x)) = θ_b(x).
            for h in 0..3 {
                let c = amp.sigma.apply(h, b);
                for x in elems.iter().step_by(3) {
                    assert_eq!(amp.theta(c, &amp.wreath.act(h, x)), amp.theta(b, x));
                }
            }
        }
    }

    #[test]
    fn exact_inputs_are_exact_in_all_flavors() {
        let (amp, phi) = setup(3);
        let w = &amp.wreath;
        let sets = &amp.hsets.premise;
        let eps = Rational::new(1, 100);
        let s = amp.sofic_map(&phi).unwrap();
        let r = s.measure(w).unwrap();
        assert!(r.mult_defect.is_zero());
        assert_eq!(r.free_defect, Some(Value::Exact(Rational::from_integer(1))));
        assert!(check_premises(w, sets, eps, &s).unwrap().premises_pass);
        let r = amp.weak_map(&phi).unwrap().measure(w).unwrap();
        assert!(r.mult_defect.is_zero());
        let hm = amp.hyperlinear_map(&phi).unwrap();
        let r = hm.measure(w).unwrap();
        assert!(r.mult_defect.is_zero() && r.trace_max.unwrap() < 1e-9);
        let r = amp.linear_map(&phi, 3).unwrap().measure(w).unwrap();
        assert!(r.mult_defect.is_zero());
        // Every realization is the permutation matrix of the sofic Γ.
        for z in amp.domain().iter().step_by(9) {
            let p = amp.gamma_sofic(&phi, z).unwrap();
            assert_eq!(hm.get(z).unwrap(), &permutation_matrix(&p));
            assert_eq!(amp.gamma_linear(&phi, z, 3).unwrap(), FpMatrix::permutation(&p, 3));
        }
    }

    #[test]
    fn conjugation_identity() {
        let (amp, phi) = setup(3);
        let n = phi.degree;
        let z = &amp.hsets.premise.f0[1];
        let (tau, blocks) = amp.blocks(&phi, z).unwrap();
        let mats: Vec<Option<DMatrix<f64>>> = blocks.iter().map(|u| u.map(permutation_matrix)).collect();
        let lhs = block_perm_real(tau, n) * eta_real(&mats, n) * block_perm_real(&tau.inverse(), n);
        let moved: Vec<Option<DMatrix<f64>>> = (0..mats.len()).map(|c| mats[tau.inverse().apply(c)].clone()).collect();
        assert!((lhs - eta_real(&moved, n)).amax() < 1e-12);
    }

    #[test]
    fn identity_maps_to_identity() {
        let (amp, phi) = setup(2);
        let one = amp.wreath.identity();
        assert!(amp.gamma_sofic(&phi, &one).unwrap().is_identity());
        let u = amp.gamma_hyperlinear(&phi, &one).unwrap();
        assert!((crate::metric::normalized_trace(&u) - 1.0).abs() < 1e-12);
        let g = amp.gamma_weak(&phi, &one).unwrap();
        assert!(g.tau.is_identity() && g.x.iter().all(|p| p.is_identity()));
    }
}
