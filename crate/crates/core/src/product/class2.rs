use crate::group::{abelianization, FgAbelianGroup, FiniteGroup};

/// Coordinates for `A_ab ⊗ B_ab`: one cyclic component `ℤ/gcd(dᵢ, eⱼ)` per pair of
/// invariant factors, holding the product of the two coordinates.
#[derive(Clone, Debug)]
pub struct TensorCoords {
    pub a_coords: Vec<Vec<u64>>,
    pub b_coords: Vec<Vec<u64>>,
    /// `(i, j, gcd(dᵢ, eⱼ))`, only pairs with gcd > 1.
    pub pairs: Vec<(usize, usize, u64)>,
    pub a_basis: Vec<usize>,
    pub b_basis: Vec<usize>,
    pub group: FgAbelianGroup,
}

impl TensorCoords {
    pub fn new(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let aa = abelianization(a);
        let bb = abelianization(b);
        let mut pairs = Vec::new();
        for (i, &d) in aa.group.torsion.iter().enumerate() {
            for (j, &e) in bb.group.torsion.iter().enumerate() {
                let g = num_integer::gcd(d, e);
                if g > 1 {
                    pairs.push((i, j, g));
                }
            }
        }
        let orders: Vec<u64> = pairs.iter().map(|p| p.2).collect();
        TensorCoords {
            a_coords: aa.coords,
            b_coords: bb.coords,
            pairs,
            a_basis: aa.basis,
            b_basis: bb.basis,
            group: FgAbelianGroup::from_cyclic(0, &orders),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.pairs.len()]
    }

    /// `ā ⊗ b̄`.
    pub fn simple(&self, a: usize, b: usize) -> Vec<u32> {
        self.pairs
            .iter()
            .map(|&(i, j, m)| ((self.a_coords[a][i] * self.b_coords[b][j]) % m) as u32)
            .collect()
    }

    /// `x + y − z`, componentwise.
    pub fn add_sub(&self, x: &[u32], y: &[u32], z: &[u32]) -> Vec<u32> {
        self.pairs
            .iter()
            .enumerate()
            .map(|(k, &(_, _, m))| ((x[k] as u64 + y[k] as u64 + m - z[k] as u64) % m) as u32)
            .collect()
    }

    pub fn neg(&self, x: &[u32]) -> Vec<u32> {
        self.pairs.iter().enumerate().map(|(k, &(_, _, m))| ((m - x[k] as u64) % m) as u32).collect()
    }

    /// Every tensor vector, in mixed-radix order.
    pub fn all(&self) -> Vec<Vec<u32>> {
        let mut out = vec![self.zero()];
        for (k, &(_, _, m)) in self.pairs.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for v in &out {
                for c in 0..m as u32 {
                    let mut w = v.clone();
                    w[k] = c;
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    pub fn order(&self) -> u128 {
        self.pairs.iter().map(|p| p.2 as u128).product()
    }
}
