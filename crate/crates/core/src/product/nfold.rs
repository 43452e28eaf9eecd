//! Verbal powers `∗ʷ_{i∈I} G` over a finite ordered index set `I = {0, …, k−1}`,
//! for the direct-sum and class-2 word sets.

use super::class2::TensorCoords;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupOps};
use crate::words::WordSet;
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MultiMode {
    DirectSum,
    Class2,
}

/// `(g_i)_i` together with the tensor components `t_{pq}`, `p < q`, stored in
/// lexicographic pair order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiElem {
    pub factors: Vec<usize>,
    pub tensors: Vec<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct MultiProduct {
    pub g: FiniteGroup,
    pub k: usize,
    pub words: WordSet,
    mode: MultiMode,
    tensor: TensorCoords,
    /// For each tensor coordinate `(i, j)`, the index of the coordinate `(j, i)`.
    swap: Vec<usize>,
}

pub fn pair_index(k: usize, p: usize, q: usize) -> usize {
    debug_assert!(p < q && q < k);
    p * k - p * (p + 1) / 2 + (q - p - 1)
}

impl MultiProduct {
    pub fn new(g: &FiniteGroup, k: usize, w: &WordSet) -> Result<Self> {
        let mode = match w {
            WordSet::Nilpotent(1) | WordSet::Solvable(1) | WordSet::Burnside(2) => MultiMode::DirectSum,
            WordSet::Nilpotent(2) => MultiMode::Class2,
            _ => return Err(Error::EngineMismatch(format!("n-fold products need nil:1 or nil:2, got {}", w))),
        };
        let tensor = TensorCoords::new(g, g);
        let swap = tensor
            .pairs
            .iter()
            .map(|&(i, j, _)| tensor.pairs.iter().position(|&(i2, j2, _)| i2 == j && j2 == i).expect("symmetric pair list"))
            .collect();
        Ok(MultiProduct { g: g.clone(), k, words: w.clone(), mode, tensor, swap })
    }

    pub fn mode(&self) -> MultiMode {
        self.mode
    }

    pub fn pairs(&self) -> usize {
        match self.mode {
            MultiMode::DirectSum => 0,
            MultiMode::Class2 => self.k * self.k.saturating_sub(1) / 2,
        }
    }

    pub fn order(&self) -> u128 {
        let t = match self.mode {
            MultiMode::DirectSum => 1,
            MultiMode::Class2 => self.tensor.order(),
        };
        (self.g.order() as u128).saturating_pow(self.k as u32).saturating_mul(t.saturating_pow(self.pairs() as u32))
    }

    pub fn tensor_coords(&self) -> &TensorCoords {
        &self.tensor
    }

    /// `g` placed at index `i`.
    pub fn embed(&self, i: usize, g: usize) -> MultiElem {
        let mut x = self.identity();
        x.factors[i] = g;
        x
    }

    pub fn support(&self, x: &MultiElem) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = (0..self.k).filter(|&i| x.factors[i] != 0).collect();
        if self.mode == MultiMode::Class2 {
            for p in 0..self.k {
                for q in p + 1..self.k {
                    if x.tensors[pair_index(self.k, p, q)].iter().any(|&c| c != 0) {
                        s.insert(p);
                        s.insert(q);
                    }
                }
            }
        }
        s
    }

    /// The image of `x` under the homomorphism induced by an injective index map
    /// `f` defined on `supp(x)`, into `target` (same factor and words).
    pub fn relabel(&self, x: &MultiElem, f: impl Fn(usize) -> usize, target: &MultiProduct) -> MultiElem {
        let mut y = target.identity();
        for p in 0..self.k {
            if x.factors[p] != 0 {
                y = target.mul(&y, &target.embed(f(p), x.factors[p]));
            }
        }
        if self.mode == MultiMode::Class2 {
            let t = &self.tensor;
            for p in 0..self.k {
                for q in p + 1..self.k {
                    let v = &x.tensors[pair_index(self.k, p, q)];
                    if v.iter().all(|&c| c == 0) {
                        continue;
                    }
                    let (fp, fq) = (f(p), f(q));
                    let slot = if fp < fq { pair_index(target.k, fp, fq) } else { pair_index(target.k, fq, fp) };
                    let add = if fp < fq {
                        v.clone()
                    } else {
                        let mut w = t.zero();
                        for (c, &s) in self.swap.iter().enumerate() {
                            w[s] = v[c];
                        }
                        t.neg(&w)
                    };
                    y.tensors[slot] = t.add_sub(&y.tensors[slot], &add, &t.zero());
                }
            }
        }
        y
    }

    /// Every element, in a fixed order.
    pub fn elements(&self) -> Vec<MultiElem> {
        let n = self.g.order();
        let mut factor_lists: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..self.k {
            factor_lists = factor_lists
                .into_iter()
                .flat_map(|v| (0..n).map(move |g| {
                    let mut w = v.clone();
                    w.push(g);
                    w
                }))
                .collect();
        }
        let singles = self.tensor.all();
        let mut tensor_lists: Vec<Vec<Vec<u32>>> = vec![vec![]];
        for _ in 0..self.pairs() {
            tensor_lists = tensor_lists
                .into_iter()
                .flat_map(|v| singles.iter().map(move |t| {
                    let mut w = v.clone();
                    w.push(t.clone());
                    w
                }))
                .collect();
        }
        let mut out = Vec::with_capacity(factor_lists.len() * tensor_lists.len());
        for f in &factor_lists {
            for t in &tensor_lists {
                out.push(MultiElem { factors: f.clone(), tensors: t.clone() });
            }
        }
        out
    }

    /// Generators: each generator of `G` at each index.
    pub fn generators(&self) -> Vec<MultiElem> {
        let gens = self.g.generating_set();
        (0..self.k).flat_map(|i| gens.iter().map(move |&s| (i, s))).map(|(i, s)| self.embed(i, s)).collect()
    }

    pub fn to_finite_group(&self, cap: usize) -> Result<(FiniteGroup, Vec<MultiElem>)> {
        if self.order() > cap as u128 {
            return Err(Error::SizeCapExceeded { size: self.order(), cap: cap as u128 });
        }
        let (g, elems) = FiniteGroup::enumerate(self, &self.generators(), cap)?;
        g.validate()?;
        Ok((g, elems))
    }
}

impl GroupOps for MultiProduct {
    type Elem = MultiElem;

    fn identity(&self) -> MultiElem {
        MultiElem { factors: vec![0; self.k], tensors: vec![self.tensor.zero(); self.pairs()] }
    }

    fn mul(&self, x: &MultiElem, y: &MultiElem) -> MultiElem {
        let factors = x.factors.iter().zip(&y.factors).map(|(a, b)| self.g.mul(a, b)).collect();
        let mut tensors = Vec::with_capacity(self.pairs());
        if self.mode == MultiMode::Class2 {
            for p in 0..self.k {
                for q in p + 1..self.k {
                    let s = pair_index(self.k, p, q);
                    let cross = self.tensor.simple(y.factors[p], x.factors[q]);
                    tensors.push(self.tensor.add_sub(&x.tensors[s], &y.tensors[s], &cross));
                }
            }
        }
        MultiElem { factors, tensors }
    }

    fn inv(&self, x: &MultiElem) -> MultiElem {
        let factors: Vec<usize> = x.factors.iter().map(|a| self.g.inv(a)).collect();
        let mut tensors = Vec::with_capacity(self.pairs());
        if self.mode == MultiMode::Class2 {
            for p in 0..self.k {
                for q in p + 1..self.k {
                    let s = pair_index(self.k, p, q);
                    let back = self.tensor.simple(factors[p], x.factors[q]);
                    tensors.push(self.tensor.add_sub(&self.tensor.neg(&x.tensors[s]), &back, &self.tensor.zero()));
                }
            }
        }
        MultiElem { factors, tensors }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;
    use crate::product::{Cartesian, EngineChoice, Letter, VerbalProduct};

    #[test]
    fn orders_and_two_fold_agreement() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let nil2: WordSet = "nil:2".parse().unwrap();
        let m = MultiProduct::new(&c2, 3, &nil2).unwrap();
        assert_eq!(m.order(), 64);
        let (g, _) = m.to_finite_group(DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 64);

        let s3 = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        let m = MultiProduct::new(&s3, 2, &nil2).unwrap();
        let p = VerbalProduct::build(&s3, &s3, &nil2, EngineChoice::Auto, DEFAULT_CAP).unwrap();
        assert_eq!(m.order(), p.order().unwrap());
        for x in m.elements() {
            for y in m.elements().iter().step_by(7) {
                let lift = |z: &MultiElem| {
                    let mut nf = p.from_letters(&[Letter::A(z.factors[0]), Letter::B(z.factors[1])]);
                    let tc = p.tensor().unwrap();
                    if let Cartesian::Tensor(t) = &mut nf.u {
                        *t = tc.add_sub(t, &z.tensors[0], &tc.zero());
                    }
                    nf
                };
                assert_eq!(lift(&m.mul(&x, y)), p.mul(&lift(&x), &lift(y)));
            }
        }
    }

    #[test]
    fn relabel_is_a_homomorphism() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let m = MultiProduct::new(&c3, 3, &"nil:2".parse().unwrap()).unwrap();
        let perm = [2usize, 0, 1];
        let elems = m.elements();
        for x in elems.iter().step_by(11) {
            for y in elems.iter().step_by(13) {
                let lhs = m.relabel(&m.mul(x, y), |i| perm[i], &m);
                let rhs = m.mul(&m.relabel(x, |i| perm[i], &m), &m.relabel(y, |i| perm[i], &m));
                assert_eq!(lhs, rhs);
            }
            let s: BTreeSet<usize> = m.support(x).iter().map(|&i| perm[i]).collect();
            assert_eq!(m.support(&m.relabel(x, |i| perm[i], &m)), s);
        }
    }
}
