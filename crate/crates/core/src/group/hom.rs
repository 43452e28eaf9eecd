use super::{subgroup_generated, FiniteGroup, GroupOps, Subgroup};

/// Homomorphism between table groups, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    image: Vec<usize>,
}

impl GroupHom {
    pub fn new(image: Vec<usize>) -> Self {
        GroupHom { image }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { image: g.elements().collect() }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn is_homomorphism(&self, src: &FiniteGroup, tgt: &FiniteGroup) -> bool {
        self.image.len() == src.order()
            && self.image.iter().all(|&y| y < tgt.order())
            && self.image[0] == 0
            && src.elements().all(|x| src.elements().all(|y| self.image[src.mul(&x, &y)] == tgt.mul(&self.image[x], &self.image[y])))
    }

    pub fn kernel(&self, src: &FiniteGroup) -> Subgroup {
        let ker: Vec<usize> = src.elements().filter(|&x| self.image[x] == 0).collect();
        subgroup_generated(src, &ker)
    }

    pub fn image_of(&self, tgt: &FiniteGroup, s: &Subgroup) -> Subgroup {
        let imgs: Vec<usize> = s.members().iter().map(|&x| self.image[x]).collect();
        subgroup_generated(tgt, &imgs)
    }

    pub fn is_injective(&self) -> bool {
        let mut v = self.image.clone();
        v.sort_unstable();
        v.dedup();
        v.len() == self.image.len()
    }

    pub fn is_surjective(&self, tgt: &FiniteGroup) -> bool {
        let mut hit = vec![false; tgt.order()];
        self.image.iter().for_each(|&y| hit[y] = true);
        hit.into_iter().all(|h| h)
    }

    pub fn compose(&self, first: &GroupHom) -> GroupHom {
        GroupHom { image: first.image.iter().map(|&x| self.image[x]).collect() }
    }
}

/// All homomorphisms `src → tgt`, by trying every assignment on a generating set.
pub fn homomorphisms(src: &FiniteGroup, tgt: &FiniteGroup) -> Vec<GroupHom> {
    let gens = src.generating_set();
    let k = gens.len();
    let m = tgt.order();
    let mut out = Vec::new();
    let mut assign = vec![0usize; k];
    loop {
        if let Some(h) = extend(src, tgt, &gens, &assign) {
            out.push(h);
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            assign[i] += 1;
            if assign[i] < m {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

pub fn endomorphisms(g: &FiniteGroup) -> Vec<GroupHom> {
    homomorphisms(g, g)
}

fn extend(src: &FiniteGroup, tgt: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Option<GroupHom> {
    const UNSET: usize = usize::MAX;
    let mut image = vec![UNSET; src.order()];
    image[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let e = queue[head];
        for (s, &g) in gens.iter().enumerate() {
            let y = src.mul(&e, &g);
            let fy = tgt.mul(&image[e], &imgs[s]);
            if image[y] == UNSET {
                image[y] = fy;
                queue.push(y);
            } else if image[y] != fy {
                return None;
            }
        }
        head += 1;
    }
    Some(GroupHom { image })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    #[test]
    fn hom_counts() {
        // |Hom(Z/m, Z/n)| = gcd(m, n)
        for m in 1..7 {
            for n in 1..7 {
                let hs = homomorphisms(&FiniteGroup::cyclic(m).unwrap(), &FiniteGroup::cyclic(n).unwrap());
                assert_eq!(hs.len(), num_integer::gcd(m, n));
            }
        }
        let s3 = FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap();
        let ends = endomorphisms(&s3);
        // 6 automorphisms, 3 onto each order-2 subgroup, and the trivial map.
        assert_eq!(ends.len(), 10);
        assert!(ends.iter().all(|h| h.is_homomorphism(&s3, &s3)));
        assert_eq!(ends.iter().filter(|h| h.is_injective()).count(), 6);
    }
}
