//! Assembly of explicit homogeneous Coxeter connection one-forms
//! d + A(z) dz/z from completions: A = E_r z^{-1} + N_r + X for 0 < r < n,
//! and A = omega^{-r} + J_lambda for r > n.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde_json::{json, Value};

use crate::engine::{run, EngineOptions};
use crate::error::{Error, Result};
use crate::laurent::{omega_inverse, LaurentMatrix};
use crate::matrix::IntMatrix;
use crate::partition::Partition;

/// A connection one-form d + A(z) dz/z with slope r/n at zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionForm {
    pub n: usize,
    pub coeff: LaurentMatrix,
    pub slope_num: usize,
    pub slope_den: usize,
}

/// The strictly upper triangular Jordan canonical form of nilpotent type
/// lambda: blocks in non-increasing size order, ones on the superdiagonal
/// within each block.
pub fn jordan_upper(n: usize, lambda: &Partition) -> Result<IntMatrix> {
    if lambda.sum() != n {
        return Err(Error::SumMismatch {
            left: lambda.sum(),
            right: n,
        });
    }
    let mut m = IntMatrix::zeros(n);
    let mut offset = 0usize;
    for size in lambda.parts_desc() {
        for i in 0..size - 1 {
            m.set(offset + i, offset + i + 1, BigInt::one());
        }
        offset += size;
    }
    Ok(m)
}

/// Emit the one-form coefficient for slope r/n and unipotent monodromy of
/// type lambda.  For 0 < r < n the completion engine supplies X and the
/// coefficient is E_r z^{-1} + N_r + X; for r > n the engine is bypassed
/// and lambda's upper Jordan form stands in for X.
pub fn emit(n: usize, r: usize, lambda: &Partition) -> Result<ConnectionForm> {
    if n == 0 || r == 0 {
        return Err(Error::InvalidShape { n, r });
    }
    if r.gcd(&n) != 1 {
        return Err(Error::NotCoprime { r, n });
    }
    if lambda.sum() != n {
        return Err(Error::SumMismatch {
            left: lambda.sum(),
            right: n,
        });
    }
    let constant = if r < n {
        run(n, r, lambda, EngineOptions::default())?.x()
    } else {
        jordan_upper(n, lambda)?
    };
    let mut coeff = omega_inverse(n).lpow(r)?;
    let z0 = coeff.coeff_or_zero(0).add(&constant)?;
    coeff.set_coeff(0, z0)?;
    Ok(ConnectionForm {
        n,
        coeff,
        slope_num: r,
        slope_den: n,
    })
}

/// The residue of (sum M_i z^i) dz/z: the coefficient M_0.
pub fn residue(c: &ConnectionForm) -> IntMatrix {
    c.coeff.coeff_or_zero(0)
}

impl ConnectionForm {
    /// JSON form: {"n": n, "slope": "r/n", "coeff": {...}}.
    pub fn to_json(&self) -> Result<Value> {
        Ok(json!({
            "n": self.n,
            "slope": format!("{}/{}", self.slope_num, self.slope_den),
            "coeff": self.coeff.to_json()?,
        }))
    }

    /// Human-readable rendering, e.g. "d + (E_3 z^-1 + N_3 + X) dz/z" with
    /// X listed in triplet form.
    pub fn render(&self) -> String {
        let r = self.slope_num;
        let n = self.slope_den;
        if r < n {
            let x = self
                .coeff
                .coeff_or_zero(0)
                .sub(&crate::matrix::make_nr(n, r).unwrap())
                .unwrap();
            let mut s = format!("d + (E_{r} z^-1 + N_{r} + X) dz/z\n");
            if x.is_zero() {
                s.push_str("X = 0\n");
            } else {
                s.push_str("X:\n");
                s.push_str(&x.to_triplet_text());
            }
            s
        } else {
            let base = omega_inverse(n).lpow(r).unwrap();
            let j = self
                .coeff
                .coeff_or_zero(0)
                .sub(&base.coeff_or_zero(0))
                .unwrap();
            let mut s = format!("d + (omega^-{r} + J) dz/z\n");
            s.push_str("J:\n");
            s.push_str(&j.to_triplet_text());
            s
        }
    }
}
