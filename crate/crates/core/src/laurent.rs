//! Finite Laurent polynomials in z with exact integer matrix coefficients.
//! Zero coefficient matrices are dropped eagerly so that equality is
//! equality of canonical forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{make_er, make_nr, IntMatrix};

/// A matrix-valued Laurent polynomial: a finitely supported map from integer
/// exponents k to n x n coefficient matrices M_k, representing sum M_k z^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    n: usize,
    coeffs: BTreeMap<i64, IntMatrix>,
}

impl LaurentMatrix {
    pub fn zero(n: usize) -> LaurentMatrix {
        assert!(n >= 1);
        LaurentMatrix {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Coefficient of z^k, if nonzero.
    pub fn coeff(&self, k: i64) -> Option<&IntMatrix> {
        self.coeffs.get(&k)
    }

    /// Coefficient of z^k, materializing zero when absent.
    pub fn coeff_or_zero(&self, k: i64) -> IntMatrix {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.n))
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.keys().copied()
    }

    /// Set the coefficient of z^k, dropping it if zero.
    pub fn set_coeff(&mut self, k: i64, m: IntMatrix) -> Result<()> {
        if m.dim() != self.n {
            return Err(Error::DimMismatch { a: self.n, b: m.dim() });
        }
        if m.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, m);
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.n != other.n {
            return Err(Error::DimMismatch { a: self.n, b: other.n });
        }
        let mut out = self.clone();
        for (&k, m) in &other.coeffs {
            let sum = match out.coeffs.get(&k) {
                Some(existing) => existing.add(m)?,
                None => m.clone(),
            };
            out.set_coeff(k, sum)?;
        }
        Ok(out)
    }

    /// Scale by z^k (shift every exponent by k).
    pub fn shift(&self, k: i64) -> LaurentMatrix {
        LaurentMatrix {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(&e, m)| (e + k, m.clone())).collect(),
        }
    }

    /// Cauchy product: the coefficient of z^k in the result is
    /// sum over i + j = k of self_i * other_j, computed exactly.
    pub fn lmul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.n != other.n {
            return Err(Error::DimMismatch { a: self.n, b: other.n });
        }
        let mut acc: BTreeMap<i64, IntMatrix> = BTreeMap::new();
        for (&i, a) in &self.coeffs {
            for (&j, b) in &other.coeffs {
                let prod = a.mul(b)?;
                match acc.get_mut(&(i + j)) {
                    Some(existing) => *existing = existing.add(&prod)?,
                    None => {
                        acc.insert(i + j, prod);
                    }
                }
            }
        }
        acc.retain(|_, m| !m.is_zero());
        Ok(LaurentMatrix { n: self.n, coeffs: acc })
    }

    /// Repeated lmul; k must be at least 1.
    pub fn lpow(&self, k: usize) -> Result<LaurentMatrix> {
        assert!(k >= 1, "lpow exponent must be at least 1");
        let mut out = self.clone();
        for _ in 1..k {
            out = out.lmul(self)?;
        }
        Ok(out)
    }

    /// JSON form: {"n": n, "coeffs": {"-1": [[...]], "0": [[...]]}} with
    /// coefficient matrices as 2D integer arrays.
    pub fn to_json(&self) -> Result<Value> {
        let mut coeffs = serde_json::Map::new();
        for (&k, m) in &self.coeffs {
            let rows = m.to_i64_rows()?;
            coeffs.insert(k.to_string(), json!(rows));
        }
        Ok(json!({ "n": self.n, "coeffs": Value::Object(coeffs) }))
    }
}

/// omega = sum of e_{i,i+1} plus z e_{n,1}: ones on the superdiagonal and z
/// in the lower-left entry.
pub fn omega(n: usize) -> LaurentMatrix {
    assert!(n >= 1);
    let mut out = LaurentMatrix::zero(n);
    if n == 1 {
        let mut z1 = IntMatrix::zeros(1);
        z1.set(0, 0, BigInt::one());
        out.set_coeff(1, z1).unwrap();
        return out;
    }
    let mut super_diag = IntMatrix::zeros(n);
    for i in 0..n - 1 {
        super_diag.set(i, i + 1, BigInt::one());
    }
    out.set_coeff(0, super_diag).unwrap();
    let mut corner = IntMatrix::zeros(n);
    corner.set(n - 1, 0, BigInt::one());
    out.set_coeff(1, corner).unwrap();
    out
}

/// omega^{-1} = E_1 z^{-1} + N_1.
pub fn omega_inverse(n: usize) -> LaurentMatrix {
    assert!(n >= 1);
    let mut out = LaurentMatrix::zero(n);
    if n == 1 {
        out.set_coeff(-1, IntMatrix::identity(1)).unwrap();
        return out;
    }
    out.set_coeff(-1, make_er(n, 1).unwrap()).unwrap();
    out.set_coeff(0, make_nr(n, 1).unwrap()).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(n: usize, k: i64) -> LaurentMatrix {
        let mut m = LaurentMatrix::zero(n);
        m.set_coeff(k, IntMatrix::identity(n)).unwrap();
        m
    }

    #[test]
    fn scalar_exponents_add() {
        let zi = scalar(4, -1);
        assert_eq!(zi.lmul(&zi).unwrap(), scalar(4, -2));
    }

    #[test]
    fn omega_inverse_times_omega_is_identity() {
        for n in 1..=6 {
            let prod = omega_inverse(n).lmul(&omega(n)).unwrap();
            assert_eq!(prod, scalar(n, 0), "n = {n}");
            let prod = omega(n).lmul(&omega_inverse(n)).unwrap();
            assert_eq!(prod, scalar(n, 0), "n = {n}");
        }
    }

    #[test]
    fn omega_inverse_squared_in_gl3() {
        let sq = omega_inverse(3).lpow(2).unwrap();
        let mut expect = LaurentMatrix::zero(3);
        expect.set_coeff(-1, make_er(3, 2).unwrap()).unwrap();
        expect.set_coeff(0, make_nr(3, 2).unwrap()).unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn omega_inverse_powers_are_er_nr() {
        // omega^{-r} = E_r z^{-1} + N_r for 0 < r < n
        for n in 2..=8usize {
            for r in 1..n {
                let got = omega_inverse(n).lpow(r).unwrap();
                let mut expect = LaurentMatrix::zero(n);
                expect.set_coeff(-1, make_er(n, r).unwrap()).unwrap();
                expect.set_coeff(0, make_nr(n, r).unwrap()).unwrap();
                assert_eq!(got, expect, "n={n} r={r}");
            }
            // omega^{-n} = z^{-1} I
            assert_eq!(omega_inverse(n).lpow(n).unwrap(), scalar(n, -1));
        }
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut m = LaurentMatrix::zero(3);
        m.set_coeff(2, IntMatrix::zeros(3)).unwrap();
        assert_eq!(m, LaurentMatrix::zero(3));
        m.set_coeff(1, IntMatrix::identity(3)).unwrap();
        m.set_coeff(1, IntMatrix::zeros(3)).unwrap();
        assert_eq!(m.support().count(), 0);
    }

    #[test]
    fn json_shape() {
        let v = omega_inverse(2).to_json().unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["coeffs"]["-1"], serde_json::json!([[0, 1], [0, 0]]));
        assert_eq!(v["coeffs"]["0"], serde_json::json!([[0, 0], [1, 0]]));
    }

    #[test]
    fn dim_mismatch_is_error() {
        let a = scalar(2, 0);
        let b = scalar(3, 0);
        assert_eq!(
            a.lmul(&b).unwrap_err(),
            Error::DimMismatch { a: 2, b: 3 }
        );
    }
}
