//! Verbal products `A ∗ʷ B` with normal forms `(a, b, u)`, computed by one of four engines.

pub mod class2;
pub mod freeprod;
pub mod generic;
pub mod metab;
pub mod nfold;
pub mod todd_coxeter;

pub use class2::TensorCoords;
pub use freeprod::{FreeProduct, Letter};
pub use generic::{generic_enumerate, GenericData};
pub use metab::Lattice;
pub use nfold::{MultiElem, MultiProduct};

use crate::error::{Error, Result};
use crate::group::{normal_closure, quotient, FiniteGroup, GroupHom, GroupOps, Subgroup};
use crate::words::{verbal_subgroup, verbal_subgroup_brute, word_solvable, WordSet, DEFAULT_ARITY_CAP};
use rand::Rng;
use serde::Serialize;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EngineKind {
    DirectSum,
    Class2Tensor,
    MetabelianLattice,
    GenericFinite,
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineKind::DirectSum => "direct",
            EngineKind::Class2Tensor => "class2",
            EngineKind::MetabelianLattice => "metab",
            EngineKind::GenericFinite => "generic",
        })
    }
}

/// Engine request: `auto` picks the specialized engine for the word set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EngineChoice {
    Auto,
    Fixed(EngineKind),
}

impl fmt::Display for EngineChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineChoice::Auto => f.write_str("auto"),
            EngineChoice::Fixed(k) => k.fmt(f),
        }
    }
}

impl FromStr for EngineChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => EngineChoice::Auto,
            "direct" => EngineChoice::Fixed(EngineKind::DirectSum),
            "class2" => EngineChoice::Fixed(EngineKind::Class2Tensor),
            "metab" => EngineChoice::Fixed(EngineKind::MetabelianLattice),
            "generic" => EngineChoice::Fixed(EngineKind::GenericFinite),
            _ => return Err(Error::Parse(format!("unknown engine '{}'", s))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Finiteness {
    Finite { order: u128 },
    Infinite { lattice_rank: usize },
    Unresolved { cap: usize },
}

impl fmt::Display for Finiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finiteness::Finite { order } => write!(f, "{}", order),
            Finiteness::Infinite { lattice_rank } => write!(f, "Infinite (metabelian lattice rank {})", lattice_rank),
            Finiteness::Unresolved { cap } => write!(f, "Unresolved (cap {})", cap),
        }
    }
}

/// Cartesian component of a normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cartesian {
    Trivial,
    Tensor(Vec<u32>),
    Lattice(Lattice),
    Index(u32),
}

/// The unique writing `y = a·b·u` with `u` in the cartesian subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub a: usize,
    pub b: usize,
    pub u: Cartesian,
}

#[derive(Clone, Debug)]
enum Engine {
    Direct,
    Class2(TensorCoords),
    Metab,
    Generic(Box<GenericData>),
}

#[derive(Clone, Debug)]
pub struct VerbalProduct {
    pub a: FiniteGroup,
    pub b: FiniteGroup,
    pub words: WordSet,
    engine: Engine,
}

fn is_cyclic(g: &FiniteGroup) -> bool {
    g.elements().any(|x| g.element_order(x) == g.order())
}

/// Word sets this crate refuses to build at all, whatever engine is requested.
fn refusal(a: &FiniteGroup, b: &FiniteGroup, w: &WordSet) -> Option<String> {
    match *w {
        WordSet::Solvable(k) if k >= 3 => Some(format!("sol:{} products are not supported (no finite certificate)", k)),
        WordSet::Burnside(k) if k != 2 && k != 3 => {
            Some(format!("burnside:{} products are not supported; only k = 2 and k = 3", k))
        }
        WordSet::Nilpotent(k) if k >= 3 && !(is_cyclic(a) && is_cyclic(b) && a.order() <= 4 && b.order() <= 4) => {
            Some(format!("nil:{} products are only supported for cyclic factors of order at most 4", k))
        }
        _ => None,
    }
}

fn applicable(kind: EngineKind, a: &FiniteGroup, b: &FiniteGroup, w: &WordSet) -> bool {
    match kind {
        EngineKind::DirectSum => matches!(w, WordSet::Nilpotent(1) | WordSet::Solvable(1) | WordSet::Burnside(2)),
        EngineKind::Class2Tensor => matches!(w, WordSet::Nilpotent(2)),
        EngineKind::MetabelianLattice => matches!(w, WordSet::Solvable(2)) && a.is_abelian() && b.is_abelian(),
        EngineKind::GenericFinite => true,
    }
}

impl VerbalProduct {
    pub fn build(a: &FiniteGroup, b: &FiniteGroup, w: &WordSet, choice: EngineChoice, cap: usize) -> Result<Self> {
        if let Some(msg) = refusal(a, b, w) {
            return Err(Error::EngineMismatch(msg));
        }
        let kind = match choice {
            EngineChoice::Fixed(k) => {
                if !applicable(k, a, b, w) {
                    return Err(Error::EngineMismatch(format!("engine {} does not apply to word set {}", k, w)));
                }
                k
            }
            EngineChoice::Auto => match w {
                WordSet::Nilpotent(1) | WordSet::Solvable(1) | WordSet::Burnside(2) => EngineKind::DirectSum,
                WordSet::Nilpotent(2) => EngineKind::Class2Tensor,
                WordSet::Solvable(2) => {
                    if !(a.is_abelian() && b.is_abelian()) {
                        return Err(Error::EngineMismatch(
                            "sol:2 products of non-abelian factors are not supported".into(),
                        ));
                    }
                    EngineKind::MetabelianLattice
                }
                _ => EngineKind::GenericFinite,
            },
        };
        let engine = match kind {
            EngineKind::DirectSum => Engine::Direct,
            EngineKind::Class2Tensor => Engine::Class2(TensorCoords::new(a, b)),
            EngineKind::MetabelianLattice => Engine::Metab,
            EngineKind::GenericFinite => Engine::Generic(Box::new(generic_enumerate(a, b, w, cap)?)),
        };
        Ok(VerbalProduct { a: a.clone(), b: b.clone(), words: w.clone(), engine })
    }

    pub fn engine(&self) -> EngineKind {
        match self.engine {
            Engine::Direct => EngineKind::DirectSum,
            Engine::Class2(_) => EngineKind::Class2Tensor,
            Engine::Metab => EngineKind::MetabelianLattice,
            Engine::Generic(_) => EngineKind::GenericFinite,
        }
    }

    pub fn tensor(&self) -> Option<&TensorCoords> {
        match &self.engine {
            Engine::Class2(t) => Some(t),
            _ => None,
        }
    }

    pub fn generic(&self) -> Option<&GenericData> {
        match &self.engine {
            Engine::Generic(g) => Some(g),
            _ => None,
        }
    }

    pub fn lattice_rank(&self) -> usize {
        (self.a.order() - 1) * (self.b.order() - 1)
    }

    pub fn cartesian_order(&self) -> Option<u128> {
        match &self.engine {
            Engine::Direct => Some(1),
            Engine::Class2(t) => Some(t.order()),
            Engine::Metab => (self.lattice_rank() == 0).then_some(1),
            Engine::Generic(g) => Some(g.cart.len() as u128),
        }
    }

    pub fn finiteness(&self) -> Finiteness {
        match self.cartesian_order() {
            Some(c) => Finiteness::Finite { order: self.a.order() as u128 * self.b.order() as u128 * c },
            None => Finiteness::Infinite { lattice_rank: self.lattice_rank() },
        }
    }

    pub fn order(&self) -> Option<u128> {
        match self.finiteness() {
            Finiteness::Finite { order } => Some(order),
            _ => None,
        }
    }

    fn zero(&self) -> Cartesian {
        match &self.engine {
            Engine::Direct => Cartesian::Trivial,
            Engine::Class2(t) => Cartesian::Tensor(t.zero()),
            Engine::Metab => Cartesian::Lattice(Lattice::new()),
            Engine::Generic(_) => Cartesian::Index(0),
        }
    }

    pub fn embed_a(&self, a: usize) -> NormalForm {
        NormalForm { a, b: 0, u: self.zero() }
    }

    pub fn embed_b(&self, b: usize) -> NormalForm {
        NormalForm { a: 0, b, u: self.zero() }
    }

    pub fn embed_letter(&self, l: Letter) -> NormalForm {
        match l {
            Letter::A(x) => self.embed_a(x),
            Letter::B(y) => self.embed_b(y),
        }
    }

    /// Whether `x` is a well-formed normal form for this product.
    pub fn is_valid(&self, x: &NormalForm) -> bool {
        if x.a >= self.a.order() || x.b >= self.b.order() {
            return false;
        }
        match (&self.engine, &x.u) {
            (Engine::Direct, Cartesian::Trivial) => true,
            (Engine::Class2(t), Cartesian::Tensor(v)) => {
                v.len() == t.len() && v.iter().zip(&t.pairs).all(|(&c, p)| (c as u64) < p.2)
            }
            (Engine::Metab, Cartesian::Lattice(l)) => l
                .iter()
                .all(|(&(al, be), &c)| c != 0 && al != 0 && be != 0 && (al as usize) < self.a.order() && (be as usize) < self.b.order()),
            (Engine::Generic(g), Cartesian::Index(i)) => (*i as usize) < g.cart.len(),
            _ => false,
        }
    }

    /// Evaluates a free-product word.
    pub fn from_letters(&self, letters: &[Letter]) -> NormalForm {
        letters.iter().fold(self.identity(), |acc, &l| self.mul(&acc, &self.embed_letter(l)))
    }

    /// A free-product word representing `x`.
    pub fn word_of(&self, x: &NormalForm) -> Vec<Letter> {
        let commutator = |al: usize, be: usize, out: &mut Vec<Letter>| {
            out.extend([Letter::A(al), Letter::B(be), Letter::A(self.a.inv(&al)), Letter::B(self.b.inv(&be))]);
        };
        match (&self.engine, &x.u) {
            (Engine::Generic(g), Cartesian::Index(u)) => g.words[g.element(x.a, x.b, *u)].clone(),
            (_, u) => {
                let mut out = vec![Letter::A(x.a), Letter::B(x.b)];
                match (&self.engine, u) {
                    (Engine::Class2(t), Cartesian::Tensor(v)) => {
                        for (k, &(i, j, _)) in t.pairs.iter().enumerate() {
                            for _ in 0..v[k] {
                                commutator(t.a_basis[i], t.b_basis[j], &mut out);
                            }
                        }
                    }
                    (Engine::Metab, Cartesian::Lattice(l)) => {
                        for (&(al, be), &c) in l {
                            for _ in 0..c.unsigned_abs() {
                                if c > 0 {
                                    commutator(al as usize, be as usize, &mut out);
                                } else {
                                    let (ai, bi) = (self.a.inv(&(al as usize)), self.b.inv(&(be as usize)));
                                    out.extend([Letter::B(be as usize), Letter::A(al as usize), Letter::B(bi), Letter::A(ai)]);
                                }
                            }
                        }
                    }
                    _ => {}
                }
                out.retain(|l| !matches!(l, Letter::A(0) | Letter::B(0)));
                out
            }
        }
    }

    /// Every element, for finite products.
    pub fn elements(&self) -> Option<Vec<NormalForm>> {
        let mut out = Vec::new();
        match &self.engine {
            Engine::Metab if self.lattice_rank() > 0 => return None,
            Engine::Generic(g) => {
                return Some(g.nf.iter().map(|&(a, b, u)| NormalForm { a, b, u: Cartesian::Index(u) }).collect());
            }
            _ => {}
        }
        let carts: Vec<Cartesian> = match &self.engine {
            Engine::Class2(t) => t.all().into_iter().map(Cartesian::Tensor).collect(),
            _ => vec![self.zero()],
        };
        for a in self.a.elements() {
            for b in self.b.elements() {
                for u in &carts {
                    out.push(NormalForm { a, b, u: u.clone() });
                }
            }
        }
        Some(out)
    }

    /// Generators: the embedded nontrivial elements of both factors.
    pub fn generators(&self) -> Vec<NormalForm> {
        let mut g: Vec<NormalForm> = self.a.generating_set().into_iter().map(|x| self.embed_a(x)).collect();
        g.extend(self.b.generating_set().into_iter().map(|y| self.embed_b(y)));
        g
    }

    /// The product as a validated table group, enumerated from the factor generators.
    /// Returns the group and the normal form of each index.
    pub fn to_finite_group(&self, cap: usize) -> Result<(FiniteGroup, Vec<NormalForm>)> {
        if let Engine::Generic(g) = &self.engine {
            return Ok((g.group.clone(), self.elements().expect("generic products are finite")));
        }
        match self.order() {
            None => return Err(Error::EngineMismatch("product is infinite".into())),
            Some(n) if n > cap as u128 => return Err(Error::SizeCapExceeded { size: n, cap: cap as u128 }),
            _ => {}
        }
        let (g, elems) = FiniteGroup::enumerate(self, &self.generators(), cap)?;
        g.validate()?;
        Ok((g, elems))
    }

    /// Counts the normal forms and checks they biject onto the group generated by `A`
    /// and `B`; returns the common count.
    pub fn normal_form_bijection(&self, cap: usize) -> Result<usize> {
        let all = self.elements().ok_or_else(|| Error::EngineMismatch("product is infinite".into()))?;
        let distinct: HashSet<&NormalForm> = all.iter().collect();
        let (g, elems) = self.to_finite_group(cap)?;
        let expected = self.order().expect("finite") as usize;
        if distinct.len() != all.len() || all.len() != expected {
            return Err(Error::CheckFailed(format!("{} normal forms, expected {}", all.len(), expected)));
        }
        if g.order() != expected || !elems.iter().all(|e| distinct.contains(e)) {
            return Err(Error::CheckFailed(format!(
                "closure of the factors has {} elements, normal forms count {}",
                g.order(),
                expected
            )));
        }
        // Round trip through representative words.
        for x in &all {
            if self.from_letters(&self.word_of(x)) != *x {
                return Err(Error::CheckFailed(format!("word of {:?} evaluates elsewhere", x)));
            }
        }
        Ok(expected)
    }

    /// Checks that the letter-preserving map to `other` (same factors and words,
    /// different engine) is an isomorphism.
    pub fn isomorphic_via_letters(&self, other: &VerbalProduct, cap: usize) -> Result<()> {
        let (g1, e1) = self.to_finite_group(cap)?;
        let (g2, e2) = other.to_finite_group(cap)?;
        if g1.order() != g2.order() {
            return Err(Error::CheckFailed(format!("orders differ: {} vs {}", g1.order(), g2.order())));
        }
        let index2: HashMap<&NormalForm, usize> = e2.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let image: Vec<usize> = e1
            .iter()
            .map(|x| index2.get(&other.from_letters(&self.word_of(x))).copied().ok_or_else(|| Error::CheckFailed("image outside target".into())))
            .collect::<Result<_>>()?;
        let h = GroupHom::new(image);
        if !h.is_homomorphism(&g1, &g2) || !h.is_injective() {
            return Err(Error::CheckFailed("letter map is not an isomorphism".into()));
        }
        Ok(())
    }

    pub fn cartesian_json(&self) -> serde_json::Value {
        match &self.engine {
            Engine::Direct => serde_json::json!({"kind": "trivial", "order": 1}),
            Engine::Class2(t) => serde_json::json!({
                "kind": "tensor",
                "structure": t.group.to_string(),
                "order": t.order().to_string(),
            }),
            Engine::Metab => serde_json::json!({
                "kind": "free-abelian",
                "rank": self.lattice_rank(),
            }),
            Engine::Generic(g) => serde_json::json!({
                "kind": "enumerated",
                "order": g.cart.len(),
                "syllable_bound": g.bound,
                "relators": g.relators,
                "cover_order": g.cover_order,
            }),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let order = match self.finiteness() {
            Finiteness::Finite { order } => serde_json::Value::String(order.to_string()),
            _ => serde_json::Value::Null,
        };
        serde_json::json!({
            "engine": self.engine().to_string(),
            "words": self.words.to_string(),
            "factor_orders": [self.a.order(), self.b.order()],
            "finiteness": self.finiteness(),
            "order": order,
            "cartesian": self.cartesian_json(),
        })
    }

    /// Checks the `Ψ: W(A)×W(B) → W(P)` isomorphism, the commuting lemma and the
    /// trivial intersection `W(P) ∩ [A,B]^w = 1`.
    pub fn verify_psi(&self, cap: usize) -> Result<PsiReport> {
        let wa = verbal_subgroup(&self.a, &self.words)?;
        let wb = verbal_subgroup(&self.b, &self.words)?;
        if self.order().is_none() {
            return self.verify_psi_metab(&wa, &wb);
        }
        let (g, elems) = self.to_finite_group(cap)?;
        let index: HashMap<&NormalForm, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let idx = |x: &NormalForm| index[x];
        let wp = verbal_subgroup(&g, &self.words)?;
        let brute_checked = match verbal_subgroup_brute(&g, &self.words.words()?, 2_000_000) {
            Ok(s) => {
                if s != wp {
                    return Err(Error::CheckFailed("specialized and brute W(P) disagree".into()));
                }
                true
            }
            Err(_) => false,
        };
        let psi = |x: usize, y: usize| idx(&self.mul(&self.embed_a(x), &self.embed_b(y)));
        let mut image = Vec::new();
        for &x in wa.members() {
            for &y in wb.members() {
                image.push(psi(x, y));
            }
        }
        let distinct: HashSet<usize> = image.iter().copied().collect();
        if distinct.len() != image.len() {
            return Err(Error::CheckFailed("Ψ is not injective".into()));
        }
        let image_sub = Subgroup::from_members_unchecked(&g, image);
        if image_sub != wp {
            return Err(Error::CheckFailed(format!(
                "Ψ image has order {}, W(P) has order {}",
                image_sub.order(),
                wp.order()
            )));
        }
        for &x in wa.members() {
            for &y in wb.members() {
                for &x2 in wa.members() {
                    for &y2 in wb.members() {
                        let lhs = psi(self.a.mul(&x, &x2), self.b.mul(&y, &y2));
                        if lhs != g.mul(&psi(x, y), &psi(x2, y2)) {
                            return Err(Error::CheckFailed(format!("Ψ fails on ({},{}),({},{})", x, y, x2, y2)));
                        }
                    }
                }
            }
        }
        let cart: Vec<usize> = (0..g.order()).filter(|&i| elems[i].a == 0 && elems[i].b == 0).collect();
        let emb_a: Vec<usize> = self.a.elements().map(|x| idx(&self.embed_a(x))).collect();
        let emb_b: Vec<usize> = self.b.elements().map(|y| idx(&self.embed_b(y))).collect();
        let commutes = |x: usize, y: usize| g.mul(&x, &y) == g.mul(&y, &x);
        for &x in wa.members() {
            let ex = emb_a[x];
            if !emb_b.iter().chain(cart.iter()).all(|&z| commutes(ex, z)) {
                return Err(Error::CheckFailed(format!("W(A) element {} fails to commute with B·[A,B]^w", x)));
            }
        }
        for &y in wb.members() {
            let ey = emb_b[y];
            if !emb_a.iter().chain(cart.iter()).all(|&z| commutes(ey, z)) {
                return Err(Error::CheckFailed(format!("W(B) element {} fails to commute with A·[A,B]^w", y)));
            }
        }
        let meet = cart.iter().filter(|&&c| wp.contains(c)).count();
        if meet != 1 {
            return Err(Error::CheckFailed(format!("W(P) ∩ [A,B]^w has {} elements", meet)));
        }
        Ok(PsiReport {
            order_wa: wa.order(),
            order_wb: wb.order(),
            order_wp: Some(wp.order()),
            cartesian_order: Some(cart.len()),
            brute_checked,
            samples: 0,
        })
    }

    fn verify_psi_metab(&self, wa: &Subgroup, wb: &Subgroup) -> Result<PsiReport> {
        use rand::SeedableRng;
        // Abelian factors: W(A) = W(B) = 1, so P must satisfy s₂ identically.
        let s2 = word_solvable(2, DEFAULT_ARITY_CAP)?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        let samples = 2000;
        for _ in 0..samples {
            let tuple: Vec<NormalForm> = (0..4).map(|_| self.random_element(&mut rng, 3)).collect();
            let v = s2.eval_unchecked(self, &tuple);
            if v != self.identity() {
                return Err(Error::CheckFailed(format!("s₂ does not vanish: {:?}", v)));
            }
        }
        Ok(PsiReport {
            order_wa: wa.order(),
            order_wb: wb.order(),
            order_wp: None,
            cartesian_order: None,
            brute_checked: false,
            samples,
        })
    }

    /// A random element: a product of `len` random letters.
    pub fn random_element<R: Rng>(&self, rng: &mut R, len: usize) -> NormalForm {
        let letters: Vec<Letter> = (0..2 * len)
            .map(|i| if i % 2 == 0 { Letter::A(rng.gen_range(0..self.a.order())) } else { Letter::B(rng.gen_range(0..self.b.order())) })
            .collect();
        self.from_letters(&letters)
    }

    /// Builds `(A/M) ∗ʷ (B/N)` and the induced surjection `Φ`, and checks that
    /// `ker Φ` is the normal closure of `M ∪ N`.
    pub fn quotient_by_mn(&self, m: &Subgroup, n: &Subgroup, cap: usize) -> Result<QuotientReport> {
        let (qa, pa) = quotient(&self.a, m)?;
        let (qb, pb) = quotient(&self.b, n)?;
        let target = VerbalProduct::build(&qa, &qb, &self.words, EngineChoice::Auto, cap)?;
        let (g, elems) = self.to_finite_group(cap)?;
        let (tg, telems) = target.to_finite_group(cap)?;
        let tindex: HashMap<&NormalForm, usize> = telems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let image: Vec<usize> = elems
            .iter()
            .map(|x| {
                let letters: Vec<Letter> = self
                    .word_of(x)
                    .into_iter()
                    .map(|l| match l {
                        Letter::A(v) => Letter::A(pa.apply(v)),
                        Letter::B(v) => Letter::B(pb.apply(v)),
                    })
                    .collect();
                tindex[&target.from_letters(&letters)]
            })
            .collect();
        let phi = GroupHom::new(image);
        if !phi.is_homomorphism(&g, &tg) {
            return Err(Error::CheckFailed("Φ is not a homomorphism".into()));
        }
        if !phi.is_surjective(&tg) {
            return Err(Error::CheckFailed("Φ is not surjective".into()));
        }
        let index: HashMap<&NormalForm, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut gens: Vec<usize> = m.members().iter().map(|&x| index[&self.embed_a(x)]).collect();
        gens.extend(n.members().iter().map(|&y| index[&self.embed_b(y)]));
        let closure = normal_closure(&g, &gens);
        let kernel = phi.kernel(&g);
        if kernel != closure {
            return Err(Error::CheckFailed(format!(
                "ker Φ has order {}, normal closure of M∪N has order {}",
                kernel.order(),
                closure.order()
            )));
        }
        Ok(QuotientReport { source_order: g.order(), target_order: tg.order(), kernel_order: kernel.order(), target, phi })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiReport {
    pub order_wa: usize,
    pub order_wb: usize,
    pub order_wp: Option<usize>,
    pub cartesian_order: Option<usize>,
    /// Whether `W(P)` was also recomputed by brute-force evaluation.
    pub brute_checked: bool,
    /// Random tuples tried, for infinite products.
    pub samples: usize,
}

#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub source_order: usize,
    pub target_order: usize,
    pub kernel_order: usize,
    pub target: VerbalProduct,
    pub phi: GroupHom,
}

impl GroupOps for VerbalProduct {
    type Elem = NormalForm;

    fn identity(&self) -> NormalForm {
        NormalForm { a: 0, b: 0, u: self.zero() }
    }

    fn mul(&self, x: &NormalForm, y: &NormalForm) -> NormalForm {
        let (a, b) = (&self.a, &self.b);
        match (&self.engine, &x.u, &y.u) {
            (Engine::Direct, _, _) => NormalForm { a: a.mul(&x.a, &y.a), b: b.mul(&x.b, &y.b), u: Cartesian::Trivial },
            (Engine::Class2(t), Cartesian::Tensor(u), Cartesian::Tensor(v)) => NormalForm {
                a: a.mul(&x.a, &y.a),
                b: b.mul(&x.b, &y.b),
                u: Cartesian::Tensor(t.add_sub(u, v, &t.simple(y.a, x.b))),
            },
            (Engine::Metab, Cartesian::Lattice(u), Cartesian::Lattice(v)) => {
                let (na, nb, w) = metab::mul(a, b, (x.a, x.b, u), (y.a, y.b, v));
                NormalForm { a: na, b: nb, u: Cartesian::Lattice(w) }
            }
            (Engine::Generic(g), Cartesian::Index(u), Cartesian::Index(v)) => {
                let z = g.group.mul(&g.element(x.a, x.b, *u), &g.element(y.a, y.b, *v));
                let (na, nb, nu) = g.nf[z];
                NormalForm { a: na, b: nb, u: Cartesian::Index(nu) }
            }
            _ => panic!("normal form does not belong to this product"),
        }
    }

    fn inv(&self, x: &NormalForm) -> NormalForm {
        let (a, b) = (&self.a, &self.b);
        let (ai, bi) = (a.inv(&x.a), b.inv(&x.b));
        match (&self.engine, &x.u) {
            (Engine::Direct, _) => NormalForm { a: ai, b: bi, u: Cartesian::Trivial },
            // (a,b,t)⁻¹ = (a⁻¹, b⁻¹, −t + ā⁻¹⊗b̄) since the product must cancel ā⁻¹⊗b̄.
            (Engine::Class2(t), Cartesian::Tensor(u)) => {
                NormalForm { a: ai, b: bi, u: Cartesian::Tensor(t.add_sub(&t.neg(u), &t.simple(ai, x.b), &t.zero())) }
            }
            (Engine::Metab, Cartesian::Lattice(u)) => {
                let z = Lattice::new();
                let step = metab::mul(a, b, (0, 0, &metab::neg(u)), (0, bi, &z));
                let (na, nb, w) = metab::mul(a, b, (step.0, step.1, &step.2), (ai, 0, &z));
                NormalForm { a: na, b: nb, u: Cartesian::Lattice(w) }
            }
            (Engine::Generic(g), Cartesian::Index(u)) => {
                let z = g.group.inv(&g.element(x.a, x.b, *u));
                let (na, nb, nu) = g.nf[z];
                NormalForm { a: na, b: nb, u: Cartesian::Index(nu) }
            }
            _ => panic!("normal form does not belong to this product"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    fn c(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    fn build(a: &FiniteGroup, b: &FiniteGroup, w: &str, e: &str) -> VerbalProduct {
        VerbalProduct::build(a, b, &w.parse().unwrap(), e.parse().unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn class2_orders_match_generic() {
        for (m, n, expect) in [(2, 2, 8u128), (3, 3, 27), (2, 3, 6)] {
            let p = build(&c(m), &c(n), "nil:2", "auto");
            let q = build(&c(m), &c(n), "nil:2", "generic");
            assert_eq!(p.order(), Some(expect));
            assert_eq!(q.order(), Some(expect));
            p.isomorphic_via_letters(&q, DEFAULT_CAP).unwrap();
            q.isomorphic_via_letters(&p, DEFAULT_CAP).unwrap();
        }
    }

    #[test]
    fn commuting_letters_leave_a_tensor() {
        let p = build(&c(3), &c(3), "nil:2", "class2");
        let x = p.mul(&p.embed_b(1), &p.embed_a(1));
        assert_eq!((x.a, x.b), (1, 1));
        assert_ne!(x.u, p.zero());
        assert_eq!(p.mul(&p.embed_a(1), &p.embed_b(1)).u, p.zero());
    }

    #[test]
    fn metabelian_infinite_and_associative() {
        use rand::SeedableRng;
        let p = build(&c(3), &c(2), "sol:2", "auto");
        assert_eq!(p.finiteness(), Finiteness::Infinite { lattice_rank: 2 });
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let x = p.random_element(&mut rng, 3);
            let y = p.random_element(&mut rng, 3);
            let z = p.random_element(&mut rng, 3);
            assert_eq!(p.mul(&p.mul(&x, &y), &z), p.mul(&x, &p.mul(&y, &z)));
            assert_eq!(p.mul(&x, &p.inv(&x)), p.identity());
            assert_eq!(p.from_letters(&p.word_of(&x)), x);
        }
        p.verify_psi(DEFAULT_CAP).unwrap();
    }

    #[test]
    fn refusals() {
        let s3 = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        let cases = [(c(2), c(2), "sol:3"), (c(2), c(2), "burnside:4"), (c(2), c(2), "burnside:1"), (s3.clone(), c(2), "nil:3"), (s3, c(2), "sol:2")];
        for (a, b, w) in cases {
            let r = VerbalProduct::build(&a, &b, &w.parse().unwrap(), EngineChoice::Auto, DEFAULT_CAP);
            assert!(matches!(r, Err(Error::EngineMismatch(_))), "{}", w);
        }
        let r = VerbalProduct::build(&c(2), &c(2), &"nil:2".parse().unwrap(), "metab".parse().unwrap(), DEFAULT_CAP);
        assert!(matches!(r, Err(Error::EngineMismatch(_))));
    }

    #[test]
    fn generic_sol2_is_unresolved() {
        let r = VerbalProduct::build(&c(2), &c(2), &"sol:2".parse().unwrap(), "generic".parse().unwrap(), 2000);
        assert!(matches!(r, Err(Error::Unresolved { .. })));
    }

    #[test]
    fn psi_and_quotient_on_s3() {
        let s3 = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        let p = build(&s3, &c(2), "nil:2", "auto");
        let r = p.verify_psi(DEFAULT_CAP).unwrap();
        assert_eq!(r.order_wa, 3);
        assert_eq!(r.order_wp, Some(3));
        let m = verbal_subgroup(&s3, &p.words).unwrap();
        let n = Subgroup::trivial(&c(2));
        let q = p.quotient_by_mn(&m, &n, DEFAULT_CAP).unwrap();
        assert_eq!(q.target_order, 8);
    }

    #[test]
    fn generic_oracle_harder_cases() {
        let s3 = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        let g = build(&s3, &s3, "nil:2", "generic");
        assert_eq!(g.order(), Some(72));
        build(&s3, &s3, "nil:2", "class2").isomorphic_via_letters(&g, DEFAULT_CAP).unwrap();
        let b3 = build(&c(3), &c(3), "burnside:3", "auto");
        assert_eq!(b3.engine(), EngineKind::GenericFinite);
        assert_eq!(b3.order(), Some(27));
        let (g27, _) = b3.to_finite_group(DEFAULT_CAP).unwrap();
        assert_eq!(g27.exponent(), 3);
        let d = build(&c(4), &c(2), "burnside:2", "generic");
        assert_eq!(d.order(), Some(8));
    }
}
