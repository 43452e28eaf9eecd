//! Free-group words, the word families `n_k`, `s_k`, `x₁ᵏ`, and verbal subgroups.

use crate::error::{Error, Result};
use crate::group::{subgroup_generated, FiniteGroup, GroupOps, Subgroup};
use std::fmt;
use std::str::FromStr;

/// Largest letter index accepted by the parser.
pub const MAX_LETTER: u32 = 1 << 16;

/// Default cap on word arity (`s_k` has arity `2ᵏ`).
pub const DEFAULT_ARITY_CAP: usize = 16;

/// Default budget for brute-force verbal subgroup evaluation (word evaluations).
pub const DEFAULT_EVAL_BUDGET: u128 = 20_000_000;

/// Freely reduced word: syllables `x_letter^exp` with distinct adjacent letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    syllables: Vec<(u32, i32)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    /// The letter `x_i` (1-based).
    pub fn letter(i: u32) -> Self {
        assert!(i >= 1, "letters are 1-based");
        FreeWord { syllables: vec![(i, 1)] }
    }

    pub fn from_syllables(syl: impl IntoIterator<Item = (u32, i32)>) -> Self {
        let mut w = FreeWord::identity();
        for (l, e) in syl {
            w.push(l, e as i64);
        }
        w
    }

    fn push(&mut self, letter: u32, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == letter {
                let e = last.1 as i64 + exp;
                if e == 0 {
                    self.syllables.pop();
                } else {
                    last.1 = e as i32;
                }
                return;
            }
        }
        self.syllables.push((letter, exp as i32));
    }

    pub fn syllables(&self) -> &[(u32, i32)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Highest letter index used (0 for the empty word).
    pub fn arity(&self) -> usize {
        self.syllables.iter().map(|s| s.0 as usize).max().unwrap_or(0)
    }

    /// Word length `ℓ(w)`: sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|s| s.1.unsigned_abs() as u64).sum()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &(l, e) in &other.syllables {
            w.push(l, e as i64);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { syllables: self.syllables.iter().rev().map(|&(l, e)| (l, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(FreeWord::identity(), |acc, _| acc.mul(&base))
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &FreeWord, v: &FreeWord) -> FreeWord {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// Shifts every letter index by `offset`.
    pub fn shift(&self, offset: u32) -> FreeWord {
        FreeWord { syllables: self.syllables.iter().map(|&(l, e)| (l + offset, e)).collect() }
    }

    /// Evaluates the word at a tuple of elements of any group.
    pub fn evaluate<G: GroupOps>(&self, g: &G, tuple: &[G::Elem]) -> Result<G::Elem> {
        if tuple.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: tuple.len() });
        }
        Ok(self.eval_unchecked(g, tuple))
    }

    /// Evaluation without the arity check; `tuple` must cover every letter.
    pub fn eval_unchecked<G: GroupOps>(&self, g: &G, tuple: &[G::Elem]) -> G::Elem {
        let mut acc = g.identity();
        for &(l, e) in &self.syllables {
            let p = g.pow(&tuple[l as usize - 1], e as i64);
            acc = g.mul(&acc, &p);
        }
        acc
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|&(l, e)| if e == 1 { format!("x{}", l) } else { format!("x{}^{}", l, e) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    /// Parses `x2 x1 x2^-1 x1^-1`; `1` (or an empty string) is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut w = FreeWord::identity();
        if s.is_empty() || s == "1" {
            return Ok(w);
        }
        for tok in s.split_whitespace() {
            let body = tok.strip_prefix('x').ok_or_else(|| Error::Parse(format!("expected letter like x1, got {:?}", tok)))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent in {:?}", tok)))?),
                None => (body, 1),
            };
            if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad letter index in {:?}", tok)));
            }
            let l: u32 = idx.parse().map_err(|_| Error::Parse(format!("bad letter index in {:?}", tok)))?;
            if l == 0 || l > MAX_LETTER {
                return Err(Error::Parse(format!("letter index out of range in {:?}", tok)));
            }
            if exp == i32::MIN {
                return Err(Error::Parse("exponent overflow".into()));
            }
            if let Some(&(last, e)) = w.syllables.last() {
                let sum = e as i64 + exp as i64;
                if last == l && (sum > i32::MAX as i64 || sum < -(i32::MAX as i64)) {
                    return Err(Error::Parse("exponent overflow".into()));
                }
            }
            w.push(l, exp as i64);
        }
        Ok(w)
    }
}

/// `n_k`: `n₁ = [x₂, x₁]`, `n_k = [x_{k+1}, n_{k−1}]`.
pub fn word_nilpotent(k: usize) -> FreeWord {
    assert!(k >= 1);
    let mut w = FreeWord::commutator(&FreeWord::letter(2), &FreeWord::letter(1));
    for i in 2..=k {
        w = FreeWord::commutator(&FreeWord::letter(i as u32 + 1), &w);
    }
    w
}

/// `s_k` on `2ᵏ` letters: `s₁ = [x₁, x₂]`, `s_k = [s_{k−1}(x₁…), s_{k−1}(x_{2^{k−1}+1}…)]`.
pub fn word_solvable(k: usize, arity_cap: usize) -> Result<FreeWord> {
    assert!(k >= 1);
    let arity = 1usize.checked_shl(k as u32).filter(|&a| a <= arity_cap && k < 32);
    let Some(_) = arity else {
        return Err(Error::ArityCapExceeded { arity: 1usize.checked_shl(k as u32).unwrap_or(usize::MAX), cap: arity_cap });
    };
    let mut w = FreeWord::commutator(&FreeWord::letter(1), &FreeWord::letter(2));
    for i in 2..=k {
        let half = 1u32 << (i - 1);
        w = FreeWord::commutator(&w, &w.shift(half));
    }
    Ok(w)
}

pub fn word_power(k: usize) -> FreeWord {
    FreeWord::from_syllables([(1, k as i32)])
}

/// A set of words defining a variety.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WordSet {
    Nilpotent(usize),
    Solvable(usize),
    Burnside(usize),
    Explicit(Vec<FreeWord>),
}

impl WordSet {
    pub fn free() -> Self {
        WordSet::Explicit(vec![])
    }

    pub fn words(&self) -> Result<Vec<FreeWord>> {
        Ok(match self {
            WordSet::Nilpotent(k) => vec![word_nilpotent(*k)],
            WordSet::Solvable(k) => vec![word_solvable(*k, DEFAULT_ARITY_CAP)?],
            WordSet::Burnside(k) => vec![word_power(*k)],
            WordSet::Explicit(ws) => ws.clone(),
        })
    }

    pub fn arity(&self) -> usize {
        match self {
            WordSet::Nilpotent(k) => k + 1,
            WordSet::Solvable(k) => 1usize.checked_shl(*k as u32).unwrap_or(usize::MAX),
            WordSet::Burnside(_) => 1,
            WordSet::Explicit(ws) => ws.iter().map(|w| w.arity()).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for WordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordSet::Nilpotent(k) => write!(f, "nil:{}", k),
            WordSet::Solvable(k) => write!(f, "sol:{}", k),
            WordSet::Burnside(k) => write!(f, "burnside:{}", k),
            WordSet::Explicit(ws) if ws.is_empty() => write!(f, "free"),
            WordSet::Explicit(ws) => {
                let parts: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                write!(f, "words:{}", parts.join(";"))
            }
        }
    }
}

impl FromStr for WordSet {
    type Err = Error;

    /// `nil:K | sol:K | burnside:K | free | words:w1;w2;…`
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "free" {
            return Ok(WordSet::free());
        }
        let (kind, arg) = s.split_once(':').ok_or_else(|| Error::Parse(format!("unknown word set {:?}", s)))?;
        if kind == "words" {
            let ws = arg.split(';').map(|w| w.parse::<FreeWord>()).collect::<Result<Vec<_>>>()?;
            let ws: Vec<FreeWord> = ws.into_iter().filter(|w| !w.is_identity()).collect();
            if ws.is_empty() {
                return Err(Error::Parse("explicit word list must contain a nontrivial word (use `free`)".into()));
            }
            return Ok(WordSet::Explicit(ws));
        }
        if arg.is_empty() || !arg.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad parameter in {:?}", s)));
        }
        let k: usize = arg.parse().map_err(|_| Error::Parse(format!("bad parameter in {:?}", s)))?;
        if k == 0 {
            return Err(Error::Parse(format!("parameter must be at least 1 in {:?}", s)));
        }
        match kind {
            "nil" if k <= 64 => Ok(WordSet::Nilpotent(k)),
            "sol" if k <= 30 => Ok(WordSet::Solvable(k)),
            "burnside" if k <= 1_000_000 => Ok(WordSet::Burnside(k)),
            "nil" | "sol" | "burnside" => Err(Error::Parse(format!("parameter out of range in {:?}", s))),
            _ => Err(Error::Parse(format!("unknown word set {:?}", s))),
        }
    }
}

/// `W(G)` by evaluating every word at every tuple, within `budget` evaluations.
pub fn verbal_subgroup_brute(g: &FiniteGroup, words: &[FreeWord], budget: u128) -> Result<Subgroup> {
    let n = g.order();
    let mut total: u128 = 0;
    for w in words {
        total = total.saturating_add((n as u128).saturating_pow(w.arity() as u32));
    }
    if total > budget {
        return Err(Error::BudgetExceeded(format!("{} evaluations needed, budget {}", total, budget)));
    }
    let mut seen = vec![false; n];
    let mut values = Vec::new();
    for w in words {
        let a = w.arity();
        let mut tuple = vec![0usize; a];
        loop {
            let v = w.eval_unchecked(g, &tuple);
            if !seen[v] {
                seen[v] = true;
                values.push(v);
            }
            let mut i = 0;
            loop {
                if i == a {
                    break;
                }
                tuple[i] += 1;
                if tuple[i] < n {
                    break;
                }
                tuple[i] = 0;
                i += 1;
            }
            if i == a {
                break;
            }
        }
    }
    Ok(subgroup_generated(g, &values))
}

/// `[H, K]` for subgroups of `G`.
pub fn commutator_of(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut vals = Vec::new();
    for &x in h.members() {
        for &y in k.members() {
            let c = g.commutator(&x, &y);
            if !seen[c] {
                seen[c] = true;
                vals.push(c);
            }
        }
    }
    subgroup_generated(g, &vals)
}

/// `γ_{k+1}(G)`, the verbal subgroup of `n_k`.
pub fn lower_central_series(g: &FiniteGroup, k: usize) -> Subgroup {
    let whole = Subgroup::whole(g);
    let mut cur = whole.clone();
    for _ in 0..k {
        let next = commutator_of(g, &cur, &whole);
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

/// `G^{(k)}`, the verbal subgroup of `s_k`.
pub fn derived_series(g: &FiniteGroup, k: usize) -> Subgroup {
    let mut cur = Subgroup::whole(g);
    for _ in 0..k {
        let next = commutator_of(g, &cur, &cur);
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

/// `⟨gᵏ : g ∈ G⟩`.
pub fn power_subgroup(g: &FiniteGroup, k: usize) -> Subgroup {
    let pows: Vec<usize> = g.elements().map(|x| g.pow(&x, k as i64)).collect();
    subgroup_generated(g, &pows)
}

/// `W(G)`, using the series routines for the word families.
pub fn verbal_subgroup(g: &FiniteGroup, w: &WordSet) -> Result<Subgroup> {
    Ok(match w {
        WordSet::Nilpotent(k) => lower_central_series(g, *k),
        WordSet::Solvable(k) => derived_series(g, *k),
        WordSet::Burnside(k) => power_subgroup(g, *k),
        WordSet::Explicit(ws) => verbal_subgroup_brute(g, ws, DEFAULT_EVAL_BUDGET)?,
    })
}

/// Nilpotency class, or `None` if `G` is not nilpotent.
pub fn nilpotency_class(g: &FiniteGroup) -> Option<usize> {
    let whole = Subgroup::whole(g);
    let mut cur = whole.clone();
    let mut c = 0;
    while !cur.is_trivial() {
        let next = commutator_of(g, &cur, &whole);
        if next == cur {
            return None;
        }
        cur = next;
        c += 1;
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{endomorphisms, DEFAULT_CAP};

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn word_families() {
        assert_eq!(word_nilpotent(1).to_string(), "x2 x1 x2^-1 x1^-1");
        assert_eq!(word_nilpotent(2).arity(), 3);
        assert_eq!(word_solvable(1, 16).unwrap().to_string(), "x1 x2 x1^-1 x2^-1");
        let s2 = word_solvable(2, 16).unwrap();
        assert_eq!(s2.arity(), 4);
        let c12 = FreeWord::commutator(&FreeWord::letter(1), &FreeWord::letter(2));
        let c34 = FreeWord::commutator(&FreeWord::letter(3), &FreeWord::letter(4));
        assert_eq!(s2, FreeWord::commutator(&c12, &c34));
        assert!(matches!(word_solvable(5, 16), Err(Error::ArityCapExceeded { .. })));
    }

    #[test]
    fn evaluations() {
        let g = s3();
        let x = 3usize;
        assert_eq!(word_nilpotent(2).evaluate(&g, &[x, x, x]).unwrap(), 0);
        let s2 = word_solvable(2, 16).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(s2.evaluate(&g, &[a, b, a, b]).unwrap(), 0);
            }
        }
        let ts: Vec<usize> = g.elements().filter(|&x| g.element_order(x) == 2).collect();
        let v = word_nilpotent(1).evaluate(&g, &[ts[0], ts[1]]).unwrap();
        assert_eq!(g.element_order(v), 3);
        let c3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(word_power(3).evaluate(&c3, &[1]).unwrap(), 0);
        assert!(matches!(word_nilpotent(1).evaluate(&g, &[1]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn verbal_subgroups() {
        let g = s3();
        assert_eq!(verbal_subgroup(&g, &WordSet::Nilpotent(1)).unwrap().order(), 3);
        assert_eq!(verbal_subgroup(&g, &WordSet::Nilpotent(2)).unwrap().order(), 3);
        assert_eq!(derived_series(&g, 1).order(), 3);
        assert!(lower_central_series(&FiniteGroup::cyclic(6).unwrap(), 3).is_trivial());
        assert_eq!(power_subgroup(&FiniteGroup::cyclic(6).unwrap(), 2).order(), 3);
        assert!(power_subgroup(&FiniteGroup::klein4(), 2).is_trivial());
        assert_eq!(nilpotency_class(&FiniteGroup::dihedral(4, DEFAULT_CAP).unwrap()), Some(2));
        assert_eq!(nilpotency_class(&g), None);
        assert_eq!(nilpotency_class(&FiniteGroup::cyclic(5).unwrap()), Some(1));
    }

    #[test]
    fn specialized_routines_match_brute_force() {
        let groups = vec![
            FiniteGroup::cyclic(1).unwrap(),
            FiniteGroup::cyclic(4).unwrap(),
            FiniteGroup::klein4(),
            s3(),
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::dihedral(4, DEFAULT_CAP).unwrap(),
            FiniteGroup::dihedral(5, DEFAULT_CAP).unwrap(),
            FiniteGroup::dihedral(6, DEFAULT_CAP).unwrap(),
        ];
        for g in &groups {
            for k in 1..=2 {
                let b = |w: FreeWord| verbal_subgroup_brute(g, &[w], u128::MAX).unwrap();
                assert_eq!(lower_central_series(g, k), b(word_nilpotent(k)));
                assert_eq!(power_subgroup(g, k), b(word_power(k)));
                if g.order() <= 8 || k == 1 {
                    assert_eq!(derived_series(g, k), b(word_solvable(k, 16).unwrap()));
                }
            }
        }
    }

    #[test]
    fn fully_invariant() {
        let groups = [s3(), FiniteGroup::dihedral(4, DEFAULT_CAP).unwrap(), FiniteGroup::symmetric(4, DEFAULT_CAP).unwrap()];
        for g in &groups {
            let ends = endomorphisms(g);
            for w in [WordSet::Nilpotent(1), WordSet::Nilpotent(2), WordSet::Solvable(2), WordSet::Burnside(2), WordSet::Burnside(3)] {
                let sub = verbal_subgroup(g, &w).unwrap();
                assert!(sub.is_normal(g));
                for phi in &ends {
                    assert!(sub.members().iter().all(|&x| sub.contains(phi.apply(x))));
                }
            }
        }
    }

    #[test]
    fn descriptor_round_trip() {
        for s in ["nil:2", "sol:1", "burnside:3", "free", "words:x1^2;x2 x1 x2^-1 x1^-1"] {
            assert_eq!(s.parse::<WordSet>().unwrap().to_string(), s);
        }
        for s in ["nil:0", "nil:", "solv:2", "burnside:-1", "words:", "words:y1"] {
            assert!(s.parse::<WordSet>().is_err(), "{}", s);
        }
        assert!("x0".parse::<FreeWord>().is_err());
        assert_eq!("x1 x1^-1".parse::<FreeWord>().unwrap(), FreeWord::identity());
    }
}
