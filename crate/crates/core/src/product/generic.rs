//! Congruence-closure oracle for `A ∗ʷ B`.
//!
//! Every `u(w, g) = w(π_B g)⁻¹ w(π_A g)⁻¹ w(g)` with `g` a tuple of free-product words
//! lies in `N = W(A∗B) ∩ [A,B]`. Enumerating `P_L = (A∗B)/⟨⟨u's with |g| ≤ L⟩⟩` by coset
//! enumeration gives a finite cover of `A ∗ʷ B` once `L` is large enough; the image of
//! `N` in `P_L` is exactly `W(P_L) ∩ ker(P_L → A×B)`, so one quotient finishes the job.

use super::freeprod::{FreeProduct, Letter};
use super::todd_coxeter::enumerate_cosets;
use crate::error::{Error, Result};
use crate::group::{quotient, FiniteGroup, GroupOps, Subgroup, MAX_TABLE_ENTRIES};
use crate::words::{verbal_subgroup, WordSet};
use std::collections::HashSet;

/// Largest number of word tuples tried at a single length bound.
pub const TUPLE_BUDGET: u128 = 250_000;

/// Longest syllable bound tried before giving up.
pub const MAX_BOUND: usize = 16;

#[derive(Clone, Debug)]
pub struct GenericData {
    pub group: FiniteGroup,
    pub emb_a: Vec<usize>,
    pub emb_b: Vec<usize>,
    pub proj_a: Vec<usize>,
    pub proj_b: Vec<usize>,
    /// Members of the cartesian subgroup `ker(P → A×B)`, sorted; index 0 is the identity.
    pub cart: Vec<usize>,
    /// Normal form `(a, b, index into cart)` of each element.
    pub nf: Vec<(usize, usize, u32)>,
    elem_of: Vec<u32>,
    /// A representative free-product word for each element.
    pub words: Vec<Vec<Letter>>,
    pub bound: usize,
    pub relators: usize,
    pub cover_order: usize,
}

impl GenericData {
    pub fn element(&self, a: usize, b: usize, u: u32) -> usize {
        let nb = self.emb_b.len();
        let nc = self.cart.len();
        self.elem_of[(a * nb + b) * nc + u as usize] as usize
    }
}

pub fn generic_enumerate(a: &FiniteGroup, b: &FiniteGroup, w: &WordSet, cap: usize) -> Result<GenericData> {
    let fp = FreeProduct::new(a, b);
    let words = w.words()?;
    let arity = words.iter().map(|x| x.arity()).max().unwrap_or(0);
    let na = a.order();
    let nb = b.order();
    let ngens = na - 1 + nb - 1;
    let gen_of = |l: Letter| -> Option<usize> {
        match l {
            Letter::A(0) | Letter::B(0) => None,
            Letter::A(x) => Some(x - 1),
            Letter::B(y) => Some(na - 1 + y - 1),
        }
    };
    let letter_of = |g: usize| -> Letter {
        if g < na - 1 {
            Letter::A(g + 1)
        } else {
            Letter::B(g - (na - 1) + 1)
        }
    };
    let inv: Vec<usize> = (0..ngens)
        .map(|g| match letter_of(g) {
            Letter::A(x) => gen_of(Letter::A(a.inv(&x))).unwrap(),
            Letter::B(y) => gen_of(Letter::B(b.inv(&y))).unwrap(),
        })
        .collect();
    let to_gens = |ls: &[Letter]| -> Vec<usize> { ls.iter().filter_map(|&l| gen_of(l)).collect() };

    let mut base: Vec<Vec<usize>> = Vec::new();
    for s in a.generating_set() {
        for x in 1..na {
            base.push(to_gens(&[Letter::A(x), Letter::A(s), Letter::A(a.inv(&a.mul(&x, &s)))]));
        }
    }
    for s in b.generating_set() {
        for y in 1..nb {
            base.push(to_gens(&[Letter::B(y), Letter::B(s), Letter::B(b.inv(&b.mul(&y, &s)))]));
        }
    }

    let unresolved = |detail: String| Error::Unresolved { cap, detail };
    let mut bound = 1usize;
    let (table, relator_count) = loop {
        let per_word = fp.count_words_up_to(bound);
        let tuples = per_word.saturating_pow(arity as u32).saturating_mul(words.len() as u128);
        if tuples > TUPLE_BUDGET {
            return Err(unresolved(format!("word-tuple budget exhausted at syllable bound {}", bound)));
        }
        let mut seen: HashSet<Vec<Letter>> = HashSet::new();
        let mut rels = base.clone();
        if arity > 0 {
            let pool = fp.words_up_to(bound);
            for word in &words {
                let r = word.arity();
                let mut idx = vec![0usize; r];
                loop {
                    let g: Vec<Vec<Letter>> = idx.iter().map(|&i| pool[i].clone()).collect();
                    let ga: Vec<usize> = g.iter().map(|x| fp.project_a(x)).collect();
                    let gb: Vec<usize> = g.iter().map(|x| fp.project_b(x)).collect();
                    let wg = word.eval_unchecked(&fp, &g);
                    let wa = word.eval_unchecked(a, &ga);
                    let wb = word.eval_unchecked(b, &gb);
                    let u = fp.mul(&vec![Letter::B(b.inv(&wb)), Letter::A(a.inv(&wa))], &wg);
                    let key = fp.cyclic_canonical(&u);
                    if !key.is_empty() && seen.insert(key.clone()) {
                        rels.push(to_gens(&key));
                    }
                    let mut i = 0;
                    while i < r {
                        idx[i] += 1;
                        if idx[i] < pool.len() {
                            break;
                        }
                        idx[i] = 0;
                        i += 1;
                    }
                    if i == r {
                        break;
                    }
                }
            }
        }
        rels.sort_by_key(|r| r.len());
        match enumerate_cosets(ngens, &inv, &rels, cap) {
            Ok(t) => break (t, seen.len()),
            Err(o) => {
                if arity == 0 || bound >= MAX_BOUND {
                    return Err(unresolved(format!("{} cosets defined at syllable bound {}", o.defined, bound)));
                }
                bound *= 2;
            }
        }
    };

    let n = table.n;
    if (n as u128) * (n as u128) > MAX_TABLE_ENTRIES as u128 {
        return Err(unresolved(format!("cover of order {} too large to tabulate", n)));
    }
    // Spanning tree, representative words, and the multiplication table of P_L.
    let mut parent = vec![(usize::MAX, usize::MAX); n];
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        for g in 0..ngens {
            let d = table.act(c, g);
            if !seen[d] {
                seen[d] = true;
                parent[d] = (c, g);
                order.push(d);
            }
        }
        head += 1;
    }
    let mut words_l: Vec<Vec<Letter>> = vec![vec![]; n];
    let mut pa = vec![0usize; n];
    let mut pb = vec![0usize; n];
    for &c in order.iter().skip(1) {
        let (p, g) = parent[c];
        let mut wv = words_l[p].clone();
        wv.push(letter_of(g));
        words_l[c] = wv;
        match letter_of(g) {
            Letter::A(x) => {
                pa[c] = a.mul(&pa[p], &x);
                pb[c] = pb[p];
            }
            Letter::B(y) => {
                pa[c] = pa[p];
                pb[c] = b.mul(&pb[p], &y);
            }
        }
    }
    let mut flat = vec![0u32; n * n];
    for i in 0..n {
        flat[i * n] = i as u32;
        for &j in order.iter().skip(1) {
            let (p, g) = parent[j];
            flat[i * n + j] = table.act(flat[i * n + p] as usize, g) as u32;
        }
    }
    let cover = FiniteGroup::from_flat(n, flat)?;

    let wp = verbal_subgroup(&cover, w)?;
    let kernel: Vec<usize> = (0..n).filter(|&c| pa[c] == 0 && pb[c] == 0).collect();
    let kernel = Subgroup::from_members_unchecked(&cover, kernel);
    let nsub = wp.intersect(&kernel);
    let (p, pi) = quotient(&cover, &nsub)?;
    let m = p.order();

    let mut proj_a = vec![usize::MAX; m];
    let mut proj_b = vec![usize::MAX; m];
    let mut words_p: Vec<Vec<Letter>> = vec![vec![]; m];
    for &c in &order {
        let y = pi.apply(c);
        if proj_a[y] == usize::MAX {
            proj_a[y] = pa[c];
            proj_b[y] = pb[c];
            words_p[y] = words_l[c].clone();
        }
    }
    let emb_a: Vec<usize> = (0..na).map(|x| if x == 0 { 0 } else { pi.apply(table.act(0, gen_of(Letter::A(x)).unwrap())) }).collect();
    let emb_b: Vec<usize> = (0..nb).map(|y| if y == 0 { 0 } else { pi.apply(table.act(0, gen_of(Letter::B(y)).unwrap())) }).collect();
    for x in 0..na {
        for x2 in 0..na {
            if p.mul(&emb_a[x], &emb_a[x2]) != emb_a[a.mul(&x, &x2)] {
                return Err(Error::CheckFailed("A does not embed homomorphically".into()));
            }
        }
    }
    for y in 0..nb {
        for y2 in 0..nb {
            if p.mul(&emb_b[y], &emb_b[y2]) != emb_b[b.mul(&y, &y2)] {
                return Err(Error::CheckFailed("B does not embed homomorphically".into()));
            }
        }
    }
    let cart: Vec<usize> = (0..m).filter(|&y| proj_a[y] == 0 && proj_b[y] == 0).collect();
    let nc = cart.len();
    let mut cart_index = vec![u32::MAX; m];
    for (i, &c) in cart.iter().enumerate() {
        cart_index[c] = i as u32;
    }
    if na * nb * nc != m {
        return Err(Error::CheckFailed(format!("|P| = {} but |A||B||C| = {}", m, na * nb * nc)));
    }
    let mut elem_of = vec![u32::MAX; m];
    let mut nf = Vec::with_capacity(m);
    for y in 0..m {
        let (x, z) = (proj_a[y], proj_b[y]);
        let ab = p.mul(&emb_a[x], &emb_b[z]);
        let c = p.mul(&p.inv(&ab), &y);
        let u = cart_index[c];
        if u == u32::MAX {
            return Err(Error::CheckFailed("normal-form section leaves the cartesian subgroup".into()));
        }
        let slot = (x * nb + z) * nc + u as usize;
        if elem_of[slot] != u32::MAX {
            return Err(Error::CheckFailed("normal-form section is not injective".into()));
        }
        elem_of[slot] = y as u32;
        nf.push((x, z, u));
    }
    Ok(GenericData {
        group: p,
        emb_a,
        emb_b,
        proj_a,
        proj_b,
        cart,
        nf,
        elem_of,
        words: words_p,
        bound,
        relators: relator_count,
        cover_order: n,
    })
}
