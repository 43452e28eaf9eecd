//! Finite groups given by multiplication tables, and the arithmetic built on them.

mod abelian;
mod hom;
mod perm;
mod snf;
mod subgroup;

pub use abelian::{abelianization, tensor_product, AbelianCoords, Abelianization, FgAbelianGroup};
pub use hom::{endomorphisms, homomorphisms, GroupHom};
pub use perm::Permutation;
pub use snf::{determinant, identity_matrix, mat_mul, smith_normal_form, IntMatrix, Snf};
pub use subgroup::{commutator_subgroup, normal_closure, quotient, subgroup_generated, Subgroup};

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

/// Default cap on the number of elements any enumeration may produce.
pub const DEFAULT_CAP: usize = 200_000;

/// Hard ceiling on dense table entries (n²), independent of the element cap.
pub const MAX_TABLE_ENTRIES: usize = 1 << 28;

/// Environment variable that overrides [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "VERBALFORGE_CAP";

/// Element cap from `VERBALFORGE_CAP`, falling back to [`DEFAULT_CAP`].
pub fn cap_from_env() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&c| c >= 1)
        .unwrap_or(DEFAULT_CAP)
}

/// Minimal group interface shared by every concrete group in the crate.
pub trait GroupOps {
    type Elem: Clone + Eq + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;

    fn pow(&self, x: &Self::Elem, k: i64) -> Self::Elem {
        let base = if k < 0 { self.inv(x) } else { x.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    fn commutator(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let xy = self.mul(x, y);
        let xi = self.inv(x);
        let yi = self.inv(y);
        self.mul(&self.mul(&xy, &xi), &yi)
    }

    /// `x y x⁻¹`.
    fn conj(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(x, y), &self.inv(x))
    }
}

/// A finite group stored as a dense multiplication table; the identity is index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl GroupOps for FiniteGroup {
    type Elem = usize;
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, x: &usize, y: &usize) -> usize {
        self.table[x * self.n + y] as usize
    }
    fn inv(&self, x: &usize) -> usize {
        self.inv[*x] as usize
    }
}

impl FiniteGroup {
    /// Validates a multiplication table (identity at 0) and builds the group.
    pub fn from_table(rows: &[Vec<usize>], cap: usize) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        if n > cap {
            return Err(Error::SizeCapExceeded { size: n as u128, cap: cap as u128 });
        }
        check_table_size(n)?;
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!("row {} has length {}, expected {}", i, row.len(), n)));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::MalformedTable(format!("entry {} out of range in row {}", x, i)));
                }
                table.push(x as u32);
            }
        }
        Self::from_flat(n, table)
    }

    /// Validates a flat row-major table.
    pub fn from_flat(n: usize, table: Vec<u32>) -> Result<Self> {
        if table.len() != n * n {
            return Err(Error::MalformedTable("table length is not n²".into()));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return Err(Error::MalformedTable("entry out of range".into()));
        }
        for j in 0..n {
            if table[j] as usize != j || table[j * n] as usize != j {
                return Err(Error::MalformedTable("index 0 is not a two-sided identity".into()));
            }
        }
        let mut seen = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                let x = table[i * n + j] as usize;
                if seen[x] == 2 * i as u32 + 1 {
                    return Err(Error::MalformedTable(format!("row {} repeats entry {}", i, x)));
                }
                seen[x] = 2 * i as u32 + 1;
            }
        }
        seen.iter_mut().for_each(|s| *s = u32::MAX);
        for j in 0..n {
            for i in 0..n {
                let x = table[i * n + j] as usize;
                if seen[x] == j as u32 {
                    return Err(Error::MalformedTable(format!("column {} repeats entry {}", j, x)));
                }
                seen[x] = j as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for i in 0..n {
            let j = (0..n).find(|&j| table[i * n + j] == 0).expect("latin row contains identity");
            if table[j * n + i] != 0 {
                return Err(Error::MalformedTable(format!("element {} has no two-sided inverse", i)));
            }
            inv[i] = j as u32;
        }
        let g = FiniteGroup { n, table, inv, labels: None };
        if let Some((x, y, s)) = g.light_test() {
            return Err(Error::MalformedTable(format!("associativity fails: ({}·{})·{} ≠ {}·({}·{})", x, y, s, x, y, s)));
        }
        Ok(g)
    }

    /// Re-runs the full table validation (Latin square, inverses, Light's associativity test).
    pub fn validate(&self) -> Result<()> {
        Self::from_flat(self.n, self.table.clone()).map(|_| ())
    }

    /// Builds the group generated by `gens` inside an ambient group, returning the
    /// table group and the ambient element for each index.
    pub fn enumerate<G: GroupOps>(ambient: &G, gens: &[G::Elem], cap: usize) -> Result<(FiniteGroup, Vec<G::Elem>)> {
        Self::from_closure(ambient.identity(), gens, |a, b| ambient.mul(a, b), cap)
    }

    /// Breadth-first closure of `gens` under right multiplication. The table is filled
    /// along the spanning tree so only `n·|gens|` calls to `mul` are needed.
    pub fn from_closure<T, F>(identity: T, gens: &[T], mul: F, cap: usize) -> Result<(FiniteGroup, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let gens: Vec<T> = {
            let mut out: Vec<T> = Vec::new();
            for g in gens {
                if *g != identity && !out.contains(g) {
                    out.push(g.clone());
                }
            }
            out
        };
        let k = gens.len();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, u32> = HashMap::new();
        index.insert(identity, 0);
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut rmul: Vec<u32> = Vec::new();
        let mut head = 0;
        while head < elems.len() {
            for (s, g) in gens.iter().enumerate() {
                let y = mul(&elems[head], g);
                let idx = match index.get(&y) {
                    Some(&i) => i,
                    None => {
                        let i = elems.len();
                        if i >= cap {
                            return Err(Error::SizeCapExceeded { size: i as u128 + 1, cap: cap as u128 });
                        }
                        index.insert(y.clone(), i as u32);
                        elems.push(y);
                        parent.push((head as u32, s as u32));
                        i as u32
                    }
                };
                rmul.push(idx);
            }
            head += 1;
        }
        let n = elems.len();
        check_table_size(n)?;
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            table[i * n] = i as u32;
            for j in 1..n {
                let (p, s) = parent[j];
                let left = table[i * n + p as usize] as usize;
                table[i * n + j] = rmul[left * k + s as usize];
            }
        }
        let mut inv = vec![0u32; n];
        for i in 0..n {
            let j = (0..n).find(|&j| table[i * n + j] == 0).expect("finite closure is a group");
            inv[i] = j as u32;
        }
        Ok((FiniteGroup { n, table, inv, labels: None }, elems))
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("cyclic:0 is not a finite group".into()));
        }
        check_table_size(n)?;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(((i + j) % n) as u32);
            }
        }
        let inv = (0..n).map(|i| ((n - i) % n) as u32).collect();
        let labels = Some((0..n).map(|i| i.to_string()).collect());
        Ok(FiniteGroup { n, table, inv, labels })
    }

    pub fn symmetric(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("sym:0 is not supported".into()));
        }
        let order: u128 = (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k)).unwrap_or(u128::MAX);
        if order > cap as u128 {
            return Err(Error::SizeCapExceeded { size: order, cap: cap as u128 });
        }
        let id = Permutation::identity(n);
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[0, 1]]));
            let cyc: Vec<u32> = (0..n as u32).collect();
            gens.push(Permutation::from_cycles(n, &[&cyc]));
        }
        let (mut g, elems) = Self::from_closure(id, &gens, |a, b| a.compose(b), cap)?;
        g.labels = Some(elems.iter().map(|p| p.to_string()).collect());
        Ok(g)
    }

    /// Symmetries of a regular `n`-gon; order `2n`.
    pub fn dihedral(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("dihedral:0 is not supported".into()));
        }
        if 2 * n as u128 > cap as u128 {
            return Err(Error::SizeCapExceeded { size: 2 * n as u128, cap: cap as u128 });
        }
        let n64 = n as i64;
        // r^k s^f
        let mul = |x: &(i64, u8), y: &(i64, u8)| {
            let l = if x.1 == 0 { y.0 } else { -y.0 };
            ((x.0 + l).rem_euclid(n64), x.1 ^ y.1)
        };
        let gens = [(1 % n64, 0u8), (0, 1u8)];
        let (mut g, elems) = Self::from_closure((0i64, 0u8), &gens, mul, cap)?;
        g.labels = Some(
            elems
                .iter()
                .map(|&(k, f)| if f == 0 { format!("r{}", k) } else { format!("r{}s", k) })
                .collect(),
        );
        Ok(g)
    }

    pub fn klein4() -> Self {
        let (mut g, elems) =
            Self::from_closure((0u8, 0u8), &[(1, 0), (0, 1)], |a, b| (a.0 ^ b.0, a.1 ^ b.1), 4).expect("klein four-group");
        g.labels = Some(elems.iter().map(|(a, b)| format!("({},{})", a, b)).collect());
        g
    }

    pub fn trivial() -> Self {
        FiniteGroup { n: 1, table: vec![0], inv: vec![0], labels: None }
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let gens: Vec<(usize, usize)> = (1..a.n).map(|x| (x, 0)).chain((1..b.n).map(|y| (0, y))).collect();
        let (g, elems) = Self::from_closure((0, 0), &gens, |x, y| (a.mul(&x.0, &y.0), b.mul(&x.1, &y.1)), usize::MAX)?;
        // Reindex so element (x, y) sits at x·|B| + y.
        let n = g.n;
        let pos: Vec<usize> = elems.iter().map(|&(x, y)| x * b.n + y).collect();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[pos[i] * n + pos[j]] = pos[g.mul(&i, &j)] as u32;
            }
        }
        let mut inv = vec![0u32; n];
        for i in 0..n {
            inv[pos[i]] = pos[g.inv(&i)] as u32;
        }
        Ok(FiniteGroup { n, table, inv, labels: None })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.n {
            self.labels = Some(labels);
        }
        self
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| self.table[i * self.n..(i + 1) * self.n].iter().map(|&x| x as usize).collect()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(&y, &x);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().fold(1, |acc, x| num_integer::lcm(acc, self.element_order(x)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.mul(&i, &j) == self.mul(&j, &i)))
    }

    /// A small generating set, chosen greedily.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.n];
        span[0] = true;
        let mut order = vec![0usize];
        // Try elements of large order first; they tend to generate more.
        let mut candidates: Vec<usize> = (1..self.n).collect();
        candidates.sort_by_key(|&x| std::cmp::Reverse(self.element_order(x)));
        for x in candidates {
            if span[x] {
                continue;
            }
            gens.push(x);
            span.iter_mut().for_each(|s| *s = false);
            span[0] = true;
            order.clear();
            order.push(0);
            let mut head = 0;
            while head < order.len() {
                let e = order[head];
                for &g in &gens {
                    let y = self.mul(&e, &g);
                    if !span[y] {
                        span[y] = true;
                        order.push(y);
                    }
                }
                head += 1;
            }
            if order.len() == self.n {
                break;
            }
        }
        gens
    }

    /// Light's associativity test against a generating set of the magma.
    /// Returns a violating triple `(x, y, s)` if associativity fails.
    fn light_test(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        let gens = self.generating_set_magma();
        for &s in &gens {
            for x in 0..n {
                for y in 0..n {
                    let lhs = self.table[self.table[x * n + y] as usize * n + s];
                    let rhs = self.table[x * n + self.table[y * n + s] as usize];
                    if lhs != rhs {
                        return Some((x, y, s));
                    }
                }
            }
        }
        None
    }

    /// Generating set under left-normed products only, which is what Light's test needs
    /// when associativity is not yet known.
    fn generating_set_magma(&self) -> Vec<usize> {
        let n = self.n;
        let mut gens: Vec<usize> = Vec::new();
        let mut span = vec![false; n];
        span[0] = true;
        for x in 1..n {
            if span[x] {
                continue;
            }
            gens.push(x);
            span.iter_mut().for_each(|s| *s = false);
            span[0] = true;
            let mut queue = vec![0usize];
            let mut head = 0;
            while head < queue.len() {
                let e = queue[head];
                for &g in &gens {
                    let y = self.table[e * n + g] as usize;
                    if !span[y] {
                        span[y] = true;
                        queue.push(y);
                    }
                }
                head += 1;
            }
        }
        gens
    }

    /// Full `n³` associativity scan, used as an oracle for small groups.
    pub fn associativity_scan(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| self.mul(&self.mul(&x, &y), &z) == self.mul(&x, &self.mul(&y, &z)))))
    }

    /// Left-translation action `g ↦ (x ↦ g·x)`.
    pub fn regular_representation(&self) -> Vec<Permutation> {
        (0..self.n)
            .map(|g| Permutation::from_images((0..self.n).map(|x| self.mul(&g, &x) as u32).collect()).expect("latin row"))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n, "table": self.rows() })
    }
}

fn check_table_size(n: usize) -> Result<()> {
    let entries = (n as u128) * (n as u128);
    if entries > MAX_TABLE_ENTRIES as u128 {
        return Err(Error::SizeCapExceeded { size: n as u128, cap: (MAX_TABLE_ENTRIES as f64).sqrt() as u128 });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_constructions() {
        assert_eq!(FiniteGroup::cyclic(1).unwrap().order(), 1);
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert!(c4.elements().all(|x| 4 % c4.element_order(x) == 0));
        let s3 = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.elements().filter(|&x| s3.element_order(x) == 3).count(), 2);
        assert!(!s3.is_abelian());
        assert_eq!(FiniteGroup::dihedral(4, DEFAULT_CAP).unwrap().order(), 8);
        assert_eq!(FiniteGroup::dihedral(1, DEFAULT_CAP).unwrap().order(), 2);
        assert_eq!(FiniteGroup::klein4().exponent(), 2);
        assert_eq!(FiniteGroup::symmetric(1, DEFAULT_CAP).unwrap().order(), 1);
    }

    #[test]
    fn constructed_groups_are_associative() {
        for g in [
            FiniteGroup::symmetric(4, DEFAULT_CAP).unwrap(),
            FiniteGroup::dihedral(5, DEFAULT_CAP).unwrap(),
            FiniteGroup::cyclic(7).unwrap(),
        ] {
            assert!(g.associativity_scan());
            assert!(FiniteGroup::from_table(&g.rows(), DEFAULT_CAP).is_ok());
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let bad_identity = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(FiniteGroup::from_table(&bad_identity, 10), Err(Error::MalformedTable(_))));
        // A Latin square with identity that is not associative (order-5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&loop5, 10), Err(Error::MalformedTable(_))));
        assert!(matches!(
            FiniteGroup::from_table(&FiniteGroup::cyclic(5).unwrap().rows(), 4),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn regular_representation_is_faithful_and_free() {
        let g = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        let rho = g.regular_representation();
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(rho[x].compose(&rho[y]), rho[g.mul(&x, &y)]);
            }
            if x != 0 {
                assert_eq!(rho[x].fixed_points(), 0);
            }
        }
        let c = FiniteGroup::cyclic(5).unwrap().regular_representation();
        assert_eq!(c[1].cycle_count(), 1);
    }

    #[test]
    fn direct_product_layout() {
        let a = FiniteGroup::cyclic(2).unwrap();
        let b = FiniteGroup::cyclic(3).unwrap();
        let p = FiniteGroup::direct_product(&a, &b).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.is_abelian());
        assert_eq!(p.element_order(1 * 3 + 1), 6);
    }
}
