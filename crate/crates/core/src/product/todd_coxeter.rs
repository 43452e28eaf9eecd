//! Todd–Coxeter coset enumeration over the trivial subgroup (HLT strategy with
//! coincidence processing), followed by a verification sweep.

use std::collections::VecDeque;

const UNDEF: u32 = u32::MAX;

/// Complete coset table: `table[c * ngens + g]` is `c·g`. Coset 0 is the trivial coset.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub n: usize,
    pub ngens: usize,
    pub table: Vec<u32>,
}

impl CosetTable {
    #[inline]
    pub fn act(&self, c: usize, g: usize) -> usize {
        self.table[c * self.ngens + g] as usize
    }
}

/// Outcome when the enumeration exceeds its coset cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overflow {
    pub defined: usize,
}

struct Enumerator<'r> {
    ngens: usize,
    inv: &'r [usize],
    rels: &'r [Vec<usize>],
    table: Vec<u32>,
    p: Vec<u32>,
    queue: VecDeque<u32>,
    cap: usize,
    changes: usize,
}

impl<'r> Enumerator<'r> {
    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.p[r as usize] != r {
            r = self.p[r as usize];
        }
        let mut x = c;
        while self.p[x as usize] != r {
            let next = self.p[x as usize];
            self.p[x as usize] = r;
            x = next;
        }
        r
    }

    #[inline]
    fn live(&self, c: u32) -> bool {
        self.p[c as usize] == c
    }

    #[inline]
    fn get(&self, c: u32, g: usize) -> u32 {
        self.table[c as usize * self.ngens + g]
    }

    #[inline]
    fn set(&mut self, c: u32, g: usize, d: u32) {
        self.table[c as usize * self.ngens + g] = d;
    }

    fn define(&mut self, c: u32, g: usize) -> Result<(), Overflow> {
        let d = self.p.len();
        if d >= self.cap {
            return Err(Overflow { defined: d });
        }
        self.p.push(d as u32);
        self.table.extend(std::iter::repeat(UNDEF).take(self.ngens));
        self.set(c, g, d as u32);
        self.set(d as u32, self.inv[g], c);
        self.changes += 1;
        Ok(())
    }

    fn merge(&mut self, k: u32, l: u32) {
        let a = self.rep(k);
        let b = self.rep(l);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.p[hi as usize] = lo;
            self.queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.changes += 1;
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for g in 0..self.ngens {
                let f = self.get(e, g);
                if f == UNDEF {
                    continue;
                }
                let gi = self.inv[g];
                if self.get(f, gi) == e {
                    self.set(f, gi, UNDEF);
                }
                let mu = self.rep(e);
                let nu = self.rep(f);
                let mux = self.get(mu, g);
                if mux != UNDEF {
                    self.merge(nu, mux);
                } else {
                    let nux = self.get(nu, gi);
                    if nux != UNDEF {
                        self.merge(mu, nux);
                    } else {
                        self.set(mu, g, nu);
                        self.set(nu, gi, mu);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, alpha: u32, rel: &[usize]) -> Result<(), Overflow> {
        if rel.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0usize;
        let mut j = rel.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, rel[i]) != UNDEF {
                f = self.get(f, rel[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, self.inv[rel[j as usize]]) != UNDEF {
                b = self.get(b, self.inv[rel[j as usize]]);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                self.set(f, rel[i], b);
                self.set(b, self.inv[rel[i]], f);
                self.changes += 1;
                return Ok(());
            } else {
                self.define(f, rel[i])?;
            }
        }
    }

    fn hlt_pass(&mut self) -> Result<(), Overflow> {
        let mut alpha = 0u32;
        while (alpha as usize) < self.p.len() {
            if self.live(alpha) {
                for r in 0..self.rels.len() {
                    let rels = self.rels;
                    self.scan_and_fill(alpha, &rels[r])?;
                    if !self.live(alpha) {
                        break;
                    }
                }
                if self.live(alpha) {
                    for g in 0..self.ngens {
                        if self.get(alpha, g) == UNDEF {
                            self.define(alpha, g)?;
                        }
                    }
                }
            }
            alpha += 1;
        }
        Ok(())
    }

    /// Points every live entry at a live coset and restores inverse pointers.
    fn normalize(&mut self) {
        for c in 0..self.p.len() as u32 {
            if !self.live(c) {
                continue;
            }
            for g in 0..self.ngens {
                let d = self.get(c, g);
                if d == UNDEF {
                    continue;
                }
                let r = self.rep(d);
                if r != d {
                    self.set(c, g, r);
                    self.changes += 1;
                }
                let gi = self.inv[g];
                let back = self.get(r, gi);
                if back == UNDEF {
                    self.set(r, gi, c);
                    self.changes += 1;
                } else if self.rep(back) != self.rep(c) {
                    self.coincidence(back, c);
                }
            }
        }
    }
}

/// Enumerates cosets of the trivial subgroup in `⟨gens | rels⟩`. `inv[g]` is the
/// generator inverse to `g` (possibly `g` itself). Fails with [`Overflow`] once more
/// than `cap` cosets have been defined.
pub fn enumerate_cosets(ngens: usize, inv: &[usize], rels: &[Vec<usize>], cap: usize) -> Result<CosetTable, Overflow> {
    let mut e = Enumerator {
        ngens,
        inv,
        rels,
        table: vec![UNDEF; ngens],
        p: vec![0],
        queue: VecDeque::new(),
        cap: cap.max(1),
        changes: 0,
    };
    loop {
        e.changes = 0;
        e.hlt_pass()?;
        e.normalize();
        if e.changes == 0 {
            break;
        }
    }
    let live: Vec<u32> = (0..e.p.len() as u32).filter(|&c| e.live(c)).collect();
    let mut newidx = vec![u32::MAX; e.p.len()];
    for (i, &c) in live.iter().enumerate() {
        newidx[c as usize] = i as u32;
    }
    let n = live.len();
    let mut table = Vec::with_capacity(n * ngens);
    for &c in &live {
        for g in 0..ngens {
            let d = e.get(c, g);
            debug_assert!(d != UNDEF);
            let r = e.rep(d);
            table.push(newidx[r as usize]);
        }
    }
    Ok(CosetTable { n, ngens, table })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_and_cyclic() {
        // ⟨r, R=r⁻¹, s | r^5, s², (rs)²⟩ = D5, order 10.
        let inv = [1, 0, 2];
        let rels = vec![vec![0; 5], vec![2, 2], vec![0, 2, 0, 2]];
        let t = enumerate_cosets(3, &inv, &rels, 1000).unwrap();
        assert_eq!(t.n, 10);
        // ⟨a | a^7⟩
        let t = enumerate_cosets(2, &[1, 0], &[vec![0; 7]], 100).unwrap();
        assert_eq!(t.n, 7);
        // ⟨a, b | a², b²⟩ is infinite.
        assert!(enumerate_cosets(2, &[0, 1], &[vec![0, 0], vec![1, 1]], 500).is_err());
    }

    #[test]
    fn coincidence_heavy_presentation() {
        // ⟨x, y | x y x⁻¹ y⁻², y x y⁻¹ x⁻²⟩ is trivial.
        let inv = [1, 0, 3, 2];
        let rels = vec![vec![0, 2, 1, 3, 3], vec![2, 0, 3, 1, 1]];
        let t = enumerate_cosets(4, &inv, &rels, 10_000).unwrap();
        assert_eq!(t.n, 1);
        // ⟨a, b | a³, b³, (ab)³, (ab⁻¹)³⟩ = Heisenberg group of order 27.
        let inv = [1, 0, 3, 2];
        let rels = vec![vec![0; 3], vec![2; 3], vec![0, 2, 0, 2, 0, 2], vec![0, 3, 0, 3, 0, 3]];
        assert_eq!(enumerate_cosets(4, &inv, &rels, 10_000).unwrap().n, 27);
    }
}
