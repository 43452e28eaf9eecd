use std::fmt;

/// Permutation of `0..n`, stored as its image list. `a.compose(&b)` applies `b` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    /// Builds a permutation from an image list; `None` unless it is a bijection of `0..len`.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Permutation(images))
    }

    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Self {
        let mut p: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for i in 0..c.len() {
                p[c[i] as usize] = c[(i + 1) % c.len()];
            }
        }
        Permutation(p)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut r = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            r[x as usize] = i as u32;
        }
        Permutation(r)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &x)| i as u32 == x).count()
    }

    /// Number of points where the two permutations disagree.
    pub fn disagreements(&self, other: &Permutation) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        let mut count = 0;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
            }
        }
        count
    }

    /// Swaps the images of points `i` and `j`, i.e. returns `self ∘ (i j)`.
    pub fn with_swapped_inputs(&self, i: usize, j: usize) -> Permutation {
        let mut p = self.0.clone();
        p.swap(i, j);
        Permutation(p)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x)?;
                first = false;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_first() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]);
        let b = Permutation::from_cycles(3, &[&[1, 2]]);
        // (0 1)∘(1 2): 1 -> 2 -> 2
        assert_eq!(a.compose(&b).apply(1), 2);
        assert_eq!(a.compose(&b).apply(2), 0);
    }

    #[test]
    fn inverse_and_cycles() {
        let c = Permutation::from_cycles(5, &[&[0, 1, 2], &[3, 4]]);
        assert!(c.compose(&c.inverse()).is_identity());
        assert_eq!(c.cycle_count(), 2);
        assert_eq!(c.fixed_points(), 0);
        assert_eq!(c.to_string(), "(0 1 2)(3 4)");
        assert!(Permutation::from_images(vec![0, 0]).is_none());
    }
}
