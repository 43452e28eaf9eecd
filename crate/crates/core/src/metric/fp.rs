use super::{MetricGroup, Rational, Value};
use crate::error::{Error, Result};
use crate::group::Permutation;

/// Square matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    pub n: usize,
    pub p: u32,
    pub a: Vec<u32>,
}

impl FpMatrix {
    pub fn identity(n: usize, p: u32) -> Self {
        Self::scalar(n, p, 1)
    }

    pub fn scalar(n: usize, p: u32, c: u32) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = c % p;
        }
        FpMatrix { n, p, a }
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let a = rows.iter().flat_map(|r| r.iter().map(move |&x| x.rem_euclid(p as i64) as u32)).collect();
        FpMatrix { n, p, a }
    }

    /// The matrix sending basis vector `e_i` to `e_{π(i)}`.
    pub fn permutation(pi: &Permutation, p: u32) -> Self {
        let n = pi.degree();
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[pi.apply(i) * n + i] = 1;
        }
        FpMatrix { n, p, a }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.a[i * self.n + j]
    }

    pub fn mul(&self, o: &FpMatrix) -> FpMatrix {
        let n = self.n;
        let p = self.p as u64;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k] as u64;
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let y = o.a[k * n + j] as u64;
                    if y != 0 {
                        let c = &mut out[i * n + j];
                        *c = ((*c as u64 + x * y) % p) as u32;
                    }
                }
            }
        }
        FpMatrix { n, p: self.p, a: out }
    }

    pub fn sub(&self, o: &FpMatrix) -> FpMatrix {
        let p = self.p;
        FpMatrix { n: self.n, p, a: self.a.iter().zip(&o.a).map(|(&x, &y)| (x + p - y) % p).collect() }
    }

    fn inv_mod(x: u32, p: u32) -> u32 {
        // Fermat: x^(p−2).
        let (mut base, mut e, mut acc) = (x as u64, p as u64 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn rank(&self) -> usize {
        let n = self.n;
        let p = self.p as u64;
        let mut m = self.a.clone();
        let mut r = 0;
        for c in 0..n {
            let Some(piv) = (r..n).find(|&i| m[i * n + c] != 0) else { continue };
            for j in 0..n {
                m.swap(r * n + j, piv * n + j);
            }
            let iv = Self::inv_mod(m[r * n + c], self.p) as u64;
            for j in 0..n {
                m[r * n + j] = (m[r * n + j] as u64 * iv % p) as u32;
            }
            for i in 0..n {
                if i != r && m[i * n + c] != 0 {
                    let f = m[i * n + c] as u64;
                    for j in 0..n {
                        m[i * n + j] = ((m[i * n + j] as u64 + (p - f) * m[r * n + j] as u64) % p) as u32;
                    }
                }
            }
            r += 1;
        }
        r
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        let n = self.n;
        let p = self.p as u64;
        let w = 2 * n;
        let mut m = vec![0u32; n * w];
        for i in 0..n {
            for j in 0..n {
                m[i * w + j] = self.a[i * n + j];
            }
            m[i * w + n + i] = 1;
        }
        for c in 0..n {
            let piv = (c..n).find(|&i| m[i * w + c] != 0)?;
            for j in 0..w {
                m.swap(c * w + j, piv * w + j);
            }
            let iv = Self::inv_mod(m[c * w + c], self.p) as u64;
            for j in 0..w {
                m[c * w + j] = (m[c * w + j] as u64 * iv % p) as u32;
            }
            for i in 0..n {
                if i != c && m[i * w + c] != 0 {
                    let f = m[i * w + c] as u64;
                    for j in 0..w {
                        m[i * w + j] = ((m[i * w + j] as u64 + (p - f) * m[c * w + j] as u64) % p) as u32;
                    }
                }
            }
        }
        let a = (0..n).flat_map(|i| m[i * w + n..i * w + w].to_vec()).collect();
        Some(FpMatrix { n, p: self.p, a })
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `(1/n)·rank(M − N)` over `F_p`.
pub fn rank_dist(m: &FpMatrix, o: &FpMatrix) -> Result<Rational> {
    if m.n != o.n || m.p != o.p {
        return Err(Error::SizeMismatch(m.n, o.n));
    }
    if m.n == 0 {
        return Ok(Rational::from_integer(0));
    }
    Ok(Rational::new(m.sub(o).rank() as i64, m.n as i64))
}

/// `GL(n, F_p)` with the normalized rank metric.
#[derive(Clone, Debug)]
pub struct GlRank {
    pub n: usize,
    pub p: u32,
}

impl GlRank {
    pub fn new(n: usize, p: u32) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 16 {
            return Err(Error::InvalidConfig(format!("{} is not a prime below 65536", p)));
        }
        Ok(GlRank { n, p })
    }

    /// Accepts an invertible matrix of the right shape.
    pub fn element(&self, m: FpMatrix) -> Result<FpMatrix> {
        if m.n != self.n || m.p != self.p {
            return Err(Error::SizeMismatch(self.n, m.n));
        }
        if m.rank() != self.n {
            return Err(Error::CheckFailed("matrix is singular".into()));
        }
        Ok(m)
    }
}

impl MetricGroup for GlRank {
    type Elem = FpMatrix;
    fn identity(&self) -> FpMatrix {
        FpMatrix::identity(self.n, self.p)
    }
    fn mul(&self, x: &FpMatrix, y: &FpMatrix) -> FpMatrix {
        x.mul(y)
    }
    fn inv(&self, x: &FpMatrix) -> FpMatrix {
        x.inverse().expect("invertible matrix")
    }
    fn dist(&self, x: &FpMatrix, y: &FpMatrix) -> Value {
        Value::Exact(rank_dist(x, y).expect("same shape"))
    }
    fn diameter(&self) -> Value {
        Value::Exact(Rational::from_integer(if self.n > 0 { 1 } else { 0 }))
    }
    fn describe(&self) -> String {
        format!("gl:{}:{}", self.n, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let cyc = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]);
        let m = FpMatrix::permutation(&cyc, 7);
        let i = FpMatrix::identity(5, 7);
        assert_eq!(rank_dist(&m, &i).unwrap(), Rational::new(4, 5));
        assert_eq!(rank_dist(&FpMatrix::scalar(2, 3, 2), &FpMatrix::identity(2, 3)).unwrap(), Rational::from_integer(1));
        assert_eq!(rank_dist(&m, &m).unwrap(), Rational::from_integer(0));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), i);
        assert!(FpMatrix::scalar(3, 5, 0).inverse().is_none());
        assert!(rank_dist(&m, &FpMatrix::identity(4, 7)).is_err());
    }
}
