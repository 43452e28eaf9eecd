use super::snf::{smith_normal_form, IntMatrix};
use super::{commutator_subgroup, quotient, FiniteGroup, GroupHom, GroupOps};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Finitely generated abelian group `ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `d₁ | d₂ | …`, each `dᵢ ≥ 2`.
/// Elements are integer vectors: `r` free coordinates followed by one per torsion factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl FgAbelianGroup {
    /// Canonical form of `ℤ^free ⊕ ⊕ ℤ/c` for arbitrary cyclic orders `c` (0 means `ℤ`).
    pub fn from_cyclic(free: usize, orders: &[u64]) -> Self {
        let k = orders.len();
        if k == 0 {
            return FgAbelianGroup { free_rank: free, torsion: vec![] };
        }
        let m: IntMatrix = (0..k)
            .map(|i| (0..k).map(|j| if i == j { BigInt::from(orders[i]) } else { BigInt::zero() }).collect())
            .collect();
        let diag = smith_normal_form(&m).diagonal();
        let mut free_rank = free;
        let mut torsion = Vec::new();
        for d in diag {
            if d.is_zero() {
                free_rank += 1;
            } else {
                let d = d.to_u64().expect("invariant factor fits in u64");
                if d > 1 {
                    torsion.push(d);
                }
            }
        }
        FgAbelianGroup { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        FgAbelianGroup { free_rank: 0, torsion: vec![] }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// `None` when the group is infinite.
    pub fn order(&self) -> Option<u128> {
        if self.free_rank > 0 {
            return None;
        }
        self.torsion.iter().try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
    }

    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn reduce(&self, x: &mut [i64]) {
        for (i, d) in self.torsion.iter().enumerate() {
            let c = &mut x[self.free_rank + i];
            *c = c.rem_euclid(*d as i64);
        }
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut z: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&mut z);
        z
    }

    pub fn neg(&self, x: &[i64]) -> Vec<i64> {
        let mut z: Vec<i64> = x.iter().map(|a| -a).collect();
        self.reduce(&mut z);
        z
    }

    /// Order of an element; `None` if it has infinite order.
    pub fn element_order(&self, x: &[i64]) -> Option<u64> {
        if x[..self.free_rank].iter().any(|&c| c != 0) {
            return None;
        }
        Some(self.torsion.iter().enumerate().fold(1u64, |acc, (i, &d)| {
            let c = x[self.free_rank + i].rem_euclid(d as i64) as u64;
            let ord = d / num_integer::gcd(c, d);
            num_integer::lcm(acc, ord)
        }))
    }

    /// Largest order of a torsion element (the last invariant factor), 1 if torsion-free.
    pub fn max_torsion_order(&self) -> u64 {
        self.torsion.last().copied().unwrap_or(1)
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{}", d));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `M ⊗ N` over the integers.
pub fn tensor_product(m: &FgAbelianGroup, n: &FgAbelianGroup) -> FgAbelianGroup {
    let free = m.free_rank * n.free_rank;
    let mut orders = Vec::new();
    for &d in &n.torsion {
        orders.extend(std::iter::repeat(d).take(m.free_rank));
    }
    for &d in &m.torsion {
        orders.extend(std::iter::repeat(d).take(n.free_rank));
    }
    for &a in &m.torsion {
        for &b in &n.torsion {
            orders.push(num_integer::gcd(a, b));
        }
    }
    FgAbelianGroup::from_cyclic(free, &orders)
}

/// Coordinates of a finite abelian table group in its invariant-factor decomposition.
#[derive(Clone, Debug)]
pub struct AbelianCoords {
    pub invariants: Vec<u64>,
    /// `coords[x][j]` in `0..invariants[j]`.
    pub coords: Vec<Vec<u64>>,
    /// `basis[j]` is the element with coordinates `e_j`.
    pub basis: Vec<usize>,
}

impl AbelianCoords {
    pub fn of(a: &FiniteGroup) -> Self {
        debug_assert!(a.is_abelian());
        let n = a.order();
        // Greedy mixed-radix generating set.
        let mut vecs: Vec<Option<Vec<i64>>> = vec![None; n];
        vecs[0] = Some(vec![]);
        let mut span = vec![0usize];
        let mut gens: Vec<usize> = Vec::new();
        let mut rel_rows: Vec<Vec<i64>> = Vec::new();
        while span.len() < n {
            let s = (0..n).filter(|&x| vecs[x].is_none()).max_by_key(|&x| a.element_order(x)).expect("element outside span");
            let k = gens.len();
            for v in vecs.iter_mut().flatten() {
                v.push(0);
            }
            let mut layer = span.clone();
            let mut c = 1i64;
            let mut next_span = span.clone();
            loop {
                let shifted: Vec<usize> = layer.iter().map(|&x| a.mul(&x, &s)).collect();
                if vecs[shifted[0]].is_some() {
                    // c·s lies in the old span: that is the relation.
                    let mut row = vecs[shifted[0]].clone().unwrap();
                    for r in row.iter_mut() {
                        *r = -*r;
                    }
                    row[k] += c;
                    rel_rows.push(row);
                    break;
                }
                for (&old, &new) in layer.iter().zip(&shifted) {
                    let mut v = vecs[old].clone().unwrap();
                    v[k] += 1;
                    vecs[new] = Some(v);
                    next_span.push(new);
                }
                layer = shifted;
                c += 1;
            }
            gens.push(s);
            span = next_span;
        }
        let k = gens.len();
        for row in rel_rows.iter_mut() {
            row.resize(k, 0);
        }
        if k == 0 {
            return AbelianCoords { invariants: vec![], coords: vec![vec![]], basis: vec![] };
        }
        let r: IntMatrix = rel_rows.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let snf = smith_normal_form(&r);
        let diag: Vec<u64> = snf.diagonal().iter().map(|d| d.to_u64().expect("finite group")).collect();
        let keep: Vec<usize> = (0..k).filter(|&j| diag[j] > 1).collect();
        let invariants: Vec<u64> = keep.iter().map(|&j| diag[j]).collect();
        let v: Vec<Vec<i64>> = snf.v.iter().map(|row| row.iter().map(|x| x.to_i64().expect("small transform")).collect()).collect();
        let coords: Vec<Vec<u64>> = (0..n)
            .map(|x| {
                let xv = vecs[x].as_ref().unwrap();
                keep.iter()
                    .map(|&j| {
                        let d = diag[j] as i128;
                        let s: i128 = (0..k).map(|i| xv[i] as i128 * v[i][j] as i128).sum();
                        s.rem_euclid(d) as u64
                    })
                    .collect()
            })
            .collect();
        let basis = (0..invariants.len())
            .map(|j| {
                (0..n)
                    .find(|&x| coords[x].iter().enumerate().all(|(i, &c)| c == (i == j) as u64))
                    .expect("coordinate map is onto")
            })
            .collect();
        AbelianCoords { invariants, coords, basis }
    }
}

/// `G → G/[G,G]`, decomposed into invariant factors.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub group: FgAbelianGroup,
    pub quotient: FiniteGroup,
    pub projection: GroupHom,
    /// Invariant-factor coordinates of the image of each element of `G`.
    pub coords: Vec<Vec<u64>>,
    /// An element of `G` mapping to each basis vector.
    pub basis: Vec<usize>,
}

pub fn abelianization(g: &FiniteGroup) -> Abelianization {
    let comm = commutator_subgroup(g);
    let (q, pi) = quotient(g, &comm).expect("commutator subgroup is normal");
    let ac = AbelianCoords::of(&q);
    let coords = g.elements().map(|x| ac.coords[pi.apply(x)].clone()).collect();
    let basis = ac
        .basis
        .iter()
        .map(|&qb| g.elements().find(|&x| pi.apply(x) == qb).expect("projection is onto"))
        .collect();
    Abelianization {
        group: FgAbelianGroup { free_rank: 0, torsion: ac.invariants.clone() },
        quotient: q,
        projection: pi,
        coords,
        basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    fn ab(free: usize, t: &[u64]) -> FgAbelianGroup {
        FgAbelianGroup::from_cyclic(free, t)
    }

    #[test]
    fn canonical_chain() {
        assert_eq!(ab(0, &[2, 3]).torsion, vec![6]);
        assert_eq!(ab(0, &[4, 6]).torsion, vec![2, 12]);
        assert_eq!(ab(1, &[0, 1, 5]), FgAbelianGroup { free_rank: 2, torsion: vec![5] });
        assert_eq!(ab(0, &[2, 2, 2]).order(), Some(8));
    }

    #[test]
    fn tensor_examples() {
        assert!(tensor_product(&ab(0, &[2]), &ab(0, &[3])).is_trivial());
        assert_eq!(tensor_product(&ab(0, &[5]), &ab(0, &[5])).torsion, vec![5]);
        let m = ab(2, &[4]);
        let t = tensor_product(&m, &m);
        assert_eq!(t.free_rank, 4);
        assert_eq!(t.torsion, vec![4, 4, 4, 4, 4]);
        let mut x = t.zero();
        x[t.free_rank] = 1;
        assert_eq!(t.element_order(&x), Some(4));
    }

    #[test]
    fn abelianizations() {
        let s3 = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        assert_eq!(abelianization(&s3).group.torsion, vec![2]);
        assert_eq!(abelianization(&FiniteGroup::cyclic(6).unwrap()).group.torsion, vec![6]);
        assert_eq!(abelianization(&FiniteGroup::klein4()).group.torsion, vec![2, 2]);
        assert_eq!(abelianization(&FiniteGroup::symmetric(4, DEFAULT_CAP).unwrap()).group.torsion, vec![2]);
        assert_eq!(abelianization(&FiniteGroup::dihedral(4, DEFAULT_CAP).unwrap()).group.torsion, vec![2, 2]);
    }

    #[test]
    fn coordinates_are_an_isomorphism() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let g = FiniteGroup::direct_product(&FiniteGroup::direct_product(&c2, &c4).unwrap(), &c6).unwrap();
        let ac = AbelianCoords::of(&g);
        assert_eq!(ac.invariants, vec![2, 2, 12]);
        let add = |x: &[u64], y: &[u64]| -> Vec<u64> {
            x.iter().zip(y).zip(&ac.invariants).map(|((a, b), d)| (a + b) % d).collect()
        };
        let mut seen = std::collections::HashSet::new();
        for x in g.elements() {
            assert!(seen.insert(ac.coords[x].clone()));
            for y in g.elements() {
                assert_eq!(ac.coords[g.mul(&x, &y)], add(&ac.coords[x], &ac.coords[y]));
            }
        }
    }
}
