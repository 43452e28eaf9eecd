use crate::group::{FiniteGroup, GroupOps};

/// A syllable of a free-product word: an element of one factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A(usize),
    B(usize),
}

/// The free product `A ∗ B`; elements are reduced alternating letter sequences.
pub struct FreeProduct<'g> {
    pub a: &'g FiniteGroup,
    pub b: &'g FiniteGroup,
}

impl<'g> FreeProduct<'g> {
    pub fn new(a: &'g FiniteGroup, b: &'g FiniteGroup) -> Self {
        FreeProduct { a, b }
    }

    fn push(&self, w: &mut Vec<Letter>, l: Letter) {
        match (w.last().copied(), l) {
            (_, Letter::A(0)) | (_, Letter::B(0)) => {}
            (Some(Letter::A(x)), Letter::A(y)) => {
                w.pop();
                let z = self.a.mul(&x, &y);
                if z != 0 {
                    w.push(Letter::A(z));
                }
            }
            (Some(Letter::B(x)), Letter::B(y)) => {
                w.pop();
                let z = self.b.mul(&x, &y);
                if z != 0 {
                    w.push(Letter::B(z));
                }
            }
            _ => w.push(l),
        }
    }

    pub fn reduce(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut w = Vec::with_capacity(letters.len());
        for &l in letters {
            self.push(&mut w, l);
        }
        w
    }

    pub fn project_a(&self, w: &[Letter]) -> usize {
        w.iter().fold(0, |acc, l| match l {
            Letter::A(x) => self.a.mul(&acc, x),
            Letter::B(_) => acc,
        })
    }

    pub fn project_b(&self, w: &[Letter]) -> usize {
        w.iter().fold(0, |acc, l| match l {
            Letter::B(y) => self.b.mul(&acc, y),
            Letter::A(_) => acc,
        })
    }

    /// Cyclic reduction followed by the lexicographically least rotation; conjugate
    /// relators generate the same normal subgroup, so this is a canonical key.
    pub fn cyclic_canonical(&self, w: &[Letter]) -> Vec<Letter> {
        let mut w = self.reduce(w);
        while w.len() >= 2 {
            let (first, last) = (w[0], w[w.len() - 1]);
            let same = matches!((first, last), (Letter::A(_), Letter::A(_)) | (Letter::B(_), Letter::B(_)));
            if !same {
                break;
            }
            let l = w.pop().unwrap();
            let rest = std::mem::take(&mut w);
            w = self.reduce(&[&[l][..], &rest[..]].concat());
        }
        if w.len() <= 1 {
            return w;
        }
        (0..w.len())
            .step_by(2)
            .map(|r| [&w[r..], &w[..r]].concat())
            .min()
            .expect("nonempty rotation set")
    }

    /// All reduced words with at most `max_syllables` syllables.
    pub fn words_up_to(&self, max_syllables: usize) -> Vec<Vec<Letter>> {
        let mut out = vec![vec![]];
        let mut frontier: Vec<Vec<Letter>> = vec![vec![]];
        for _ in 0..max_syllables {
            let mut next = Vec::new();
            for w in &frontier {
                let last_a = matches!(w.last(), Some(Letter::A(_)));
                let last_b = matches!(w.last(), Some(Letter::B(_)));
                if !last_a {
                    for x in 1..self.a.order() {
                        let mut v = w.clone();
                        v.push(Letter::A(x));
                        next.push(v);
                    }
                }
                if !last_b {
                    for y in 1..self.b.order() {
                        let mut v = w.clone();
                        v.push(Letter::B(y));
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Number of reduced words with at most `max_syllables` syllables.
    pub fn count_words_up_to(&self, max_syllables: usize) -> u128 {
        let (p, q) = ((self.a.order() - 1) as u128, (self.b.order() - 1) as u128);
        let (mut end_a, mut end_b, mut total) = (0u128, 0u128, 1u128);
        for len in 1..=max_syllables {
            let (na, nb) = if len == 1 { (p, q) } else { (end_b.saturating_mul(p), end_a.saturating_mul(q)) };
            end_a = na;
            end_b = nb;
            total = total.saturating_add(na).saturating_add(nb);
        }
        total
    }
}

impl GroupOps for FreeProduct<'_> {
    type Elem = Vec<Letter>;

    fn identity(&self) -> Vec<Letter> {
        vec![]
    }

    fn mul(&self, x: &Vec<Letter>, y: &Vec<Letter>) -> Vec<Letter> {
        let mut w = x.clone();
        for &l in y {
            self.push(&mut w, l);
        }
        w
    }

    fn inv(&self, x: &Vec<Letter>) -> Vec<Letter> {
        x.iter()
            .rev()
            .map(|l| match *l {
                Letter::A(v) => Letter::A(self.a.inv(&v)),
                Letter::B(v) => Letter::B(self.b.inv(&v)),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_counts() {
        let a = FiniteGroup::cyclic(3).unwrap();
        let b = FiniteGroup::cyclic(2).unwrap();
        let fp = FreeProduct::new(&a, &b);
        let w = fp.reduce(&[Letter::A(1), Letter::B(1), Letter::B(1), Letter::A(2)]);
        assert!(w.is_empty());
        let x = vec![Letter::A(1), Letter::B(1)];
        assert!(fp.mul(&x, &fp.inv(&x)).is_empty());
        for l in 0..5 {
            assert_eq!(fp.words_up_to(l).len() as u128, fp.count_words_up_to(l));
        }
        let c = fp.cyclic_canonical(&[Letter::A(1), Letter::B(1), Letter::A(1)]);
        assert_eq!(c.len(), 2);
    }
}
