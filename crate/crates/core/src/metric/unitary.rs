use super::{MetricGroup, Value};
use crate::error::{Error, Result};
use crate::group::Permutation;
use nalgebra::DMatrix;

pub const UNITARY_TOL: f64 = 1e-9;

/// Normalized Hilbert–Schmidt distance `‖U − V‖₂` with `‖A‖₂² = tr(AA*)` and
/// `tr = (1/n)·Trace`.
pub fn hs_dist(u: &DMatrix<f64>, v: &DMatrix<f64>) -> Result<f64> {
    if u.shape() != v.shape() {
        return Err(Error::SizeMismatch(u.nrows(), v.nrows()));
    }
    let n = u.nrows().max(1) as f64;
    Ok((u - v).norm() / n.sqrt())
}

pub fn normalized_trace(u: &DMatrix<f64>) -> f64 {
    u.trace() / u.nrows().max(1) as f64
}

pub fn check_unitary(u: &DMatrix<f64>) -> Result<()> {
    if !u.is_square() {
        return Err(Error::NotUnitary(f64::INFINITY));
    }
    let dev = (u * u.transpose() - DMatrix::identity(u.nrows(), u.nrows())).amax();
    if dev > UNITARY_TOL {
        return Err(Error::NotUnitary(dev));
    }
    Ok(())
}

pub fn permutation_matrix(pi: &Permutation) -> DMatrix<f64> {
    let n = pi.degree();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(pi.apply(i), i)] = 1.0;
    }
    m
}

/// Real orthogonal `n × n` matrices with the Hilbert–Schmidt distance.
#[derive(Clone, Debug)]
pub struct UnitaryHs {
    pub n: usize,
}

impl UnitaryHs {
    pub fn element(&self, u: DMatrix<f64>) -> Result<DMatrix<f64>> {
        if u.nrows() != self.n {
            return Err(Error::SizeMismatch(self.n, u.nrows()));
        }
        check_unitary(&u)?;
        Ok(u)
    }
}

impl MetricGroup for UnitaryHs {
    type Elem = DMatrix<f64>;
    fn identity(&self) -> DMatrix<f64> {
        DMatrix::identity(self.n, self.n)
    }
    fn mul(&self, x: &DMatrix<f64>, y: &DMatrix<f64>) -> DMatrix<f64> {
        x * y
    }
    fn inv(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        x.transpose()
    }
    fn dist(&self, x: &DMatrix<f64>, y: &DMatrix<f64>) -> Value {
        Value::Approx(hs_dist(x, y).expect("same shape"))
    }
    fn diameter(&self) -> Value {
        Value::Approx(2.0)
    }
    fn trace(&self, x: &DMatrix<f64>) -> Option<f64> {
        Some(normalized_trace(x))
    }
    fn describe(&self) -> String {
        format!("unitary:{}", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hs_examples() {
        let i = DMatrix::<f64>::identity(4, 4);
        assert!((hs_dist(&i, &(-&i)).unwrap() - 2.0).abs() < 1e-12);
        assert!(hs_dist(&i, &i).unwrap() < 1e-12);
        let t = Permutation::from_cycles(4, &[&[0, 1]]);
        assert!((normalized_trace(&permutation_matrix(&t)) - 0.5).abs() < 1e-12);
        assert!(check_unitary(&(&i * 2.0)).is_err());
    }
}
