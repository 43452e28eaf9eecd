use super::{FiniteGroup, GroupHom, GroupOps};
use crate::error::{Error, Result};

/// Subgroup of a [`FiniteGroup`], stored as a sorted member list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
    parent_order: usize,
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup { members: vec![0], parent_order: g.order() }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup { members: g.elements().collect(), parent_order: g.order() }
    }

    /// Wraps a member list after checking closure.
    pub fn from_members(g: &FiniteGroup, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let s = Subgroup { members, parent_order: g.order() };
        if !s.contains(0) || !s.members.iter().all(|&x| s.members.iter().all(|&y| s.contains(g.mul(&x, &g.inv(&y))))) {
            return Err(Error::CheckFailed("member list is not a subgroup".into()));
        }
        Ok(s)
    }

    /// Wraps a member list known to be a subgroup, such as a kernel.
    pub fn from_members_unchecked(g: &FiniteGroup, mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subgroup { members, parent_order: g.order() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent_order
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        let gens = g.generating_set();
        self.members.iter().all(|&x| gens.iter().all(|s| self.contains(g.conj(s, &x))))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            members: self.members.iter().copied().filter(|&x| other.contains(x)).collect(),
            parent_order: self.parent_order,
        }
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// The subgroup as a group in its own right, with the inclusion map.
    pub fn as_group(&self, g: &FiniteGroup) -> (FiniteGroup, Vec<usize>) {
        let (h, elems) = FiniteGroup::enumerate(g, &self.members, usize::MAX).expect("subgroup of a finite group");
        (h, elems)
    }
}

pub fn subgroup_generated(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let gens: Vec<usize> = gens.iter().copied().filter(|&x| x != 0).collect();
    let mut mark = vec![false; g.order()];
    mark[0] = true;
    let mut members = vec![0usize];
    let mut head = 0;
    while head < members.len() {
        let e = members[head];
        for s in &gens {
            let y = g.mul(&e, s);
            if !mark[y] {
                mark[y] = true;
                members.push(y);
            }
        }
        head += 1;
    }
    members.sort_unstable();
    Subgroup { members, parent_order: g.order() }
}

pub fn normal_closure(g: &FiniteGroup, s: &[usize]) -> Subgroup {
    let ambient = g.generating_set();
    let mut h = subgroup_generated(g, s);
    loop {
        let extra: Vec<usize> = h
            .members
            .iter()
            .flat_map(|&x| ambient.iter().map(move |t| (t, x)))
            .map(|(t, x)| g.conj(t, &x))
            .filter(|&y| !h.contains(y))
            .collect();
        if extra.is_empty() {
            return h;
        }
        let mut gens = h.members.clone();
        gens.extend(extra);
        h = subgroup_generated(g, &gens);
    }
}

pub fn commutator_subgroup(g: &FiniteGroup) -> Subgroup {
    let n = g.order();
    let mut comms = Vec::new();
    let mut seen = vec![false; n];
    for x in 0..n {
        for y in 0..n {
            let c = g.commutator(&x, &y);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    subgroup_generated(g, &comms)
}

/// Coset group `G/N` with the canonical projection. Coset 0 is `N`.
pub fn quotient(g: &FiniteGroup, nsub: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    if !nsub.is_normal(g) {
        return Err(Error::NotNormal);
    }
    let n = g.order();
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &m in nsub.members() {
            coset[g.mul(&x, &m)] = c;
        }
    }
    let k = reps.len();
    let rows: Vec<Vec<usize>> =
        (0..k).map(|i| (0..k).map(|j| coset[g.mul(&reps[i], &reps[j])]).collect()).collect();
    let q = FiniteGroup::from_table(&rows, usize::MAX)?;
    Ok((q, GroupHom::new(coset)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn generated_subgroups() {
        let g = s3();
        let three = g.elements().find(|&x| g.element_order(x) == 3).unwrap();
        assert_eq!(subgroup_generated(&g, &[three]).order(), 3);
        assert!(subgroup_generated(&g, &[]).is_trivial());
        assert!(subgroup_generated(&g, &g.elements().collect::<Vec<_>>()).is_whole());
    }

    #[test]
    fn closures_and_quotients() {
        let g = s3();
        let t = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        assert!(normal_closure(&g, &[t]).is_whole());
        assert!(!subgroup_generated(&g, &[t]).is_normal(&g));
        assert!(normal_closure(&g, &[]).is_trivial());
        assert_eq!(commutator_subgroup(&g).order(), 3);

        let c6 = FiniteGroup::cyclic(6).unwrap();
        let two = subgroup_generated(&c6, &[3]);
        let (q, pi) = quotient(&c6, &two).unwrap();
        assert_eq!(q.order(), 3);
        assert!(pi.is_homomorphism(&c6, &q));
        assert_eq!(pi.kernel(&c6), two);
        assert_eq!(quotient(&c6, &Subgroup::whole(&c6)).unwrap().0.order(), 1);
        assert_eq!(quotient(&c6, &Subgroup::trivial(&c6)).unwrap().0.order(), 6);
        assert_eq!(quotient(&g, &subgroup_generated(&g, &[t])), Err(Error::NotNormal));
    }

    #[test]
    fn quotient_kills_exactly_the_closure() {
        let g = FiniteGroup::symmetric(4, DEFAULT_CAP).unwrap();
        for x in g.elements() {
            let n = normal_closure(&g, &[x]);
            let (q, pi) = quotient(&g, &n).unwrap();
            assert_eq!(q.order() * n.order(), g.order());
            assert_eq!(pi.kernel(&g), n);
        }
    }
}
