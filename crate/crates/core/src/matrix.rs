//! Dense square matrices over exact (arbitrary-precision) integers, the
//! N_r / E_r constructors, and the dense/triplet text formats.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An n x n matrix of exact integers.  All arithmetic is exact; no rounding
/// ever occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>, // row-major
}

impl IntMatrix {
    pub fn zeros(n: usize) -> IntMatrix {
        assert!(n >= 1, "dimension must be at least 1");
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry at 0-based (row, col).
    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.entries[row * self.n + col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_binary(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero() || e.is_one())
    }

    pub fn is_strictly_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.entries[j * self.n + i] = self.entries[i * self.n + j].clone();
            }
        }
        out
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.n != other.n {
            return Err(Error::DimMismatch { a: self.n, b: other.n });
        }
        Ok(IntMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.n != other.n {
            return Err(Error::DimMismatch { a: self.n, b: other.n });
        }
        Ok(IntMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Exact matrix product, skipping zero entries of the left factor.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.n != other.n {
            return Err(Error::DimMismatch { a: self.n, b: other.n });
        }
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i * n + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Exact k-th power; the 0-th power is the identity.
    pub fn pow(&self, k: usize) -> IntMatrix {
        let mut result = IntMatrix::identity(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).unwrap();
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        result
    }

    /// 1-based (row, col, value) triplets of the nonzero entries, sorted by
    /// row then column.
    pub fn triplets(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.get(i, j);
                if !e.is_zero() {
                    out.push((i + 1, j + 1, e.clone()));
                }
            }
        }
        out
    }

    pub fn from_triplets<I>(n: usize, triplets: I) -> Result<IntMatrix>
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut m = IntMatrix::zeros(n);
        for (i, j, v) in triplets {
            if i < 1 || i > n || j < 1 || j > n {
                return Err(Error::Parse(format!(
                    "triplet index ({i},{j}) out of range for n={n}"
                )));
            }
            m.set(i - 1, j - 1, v);
        }
        Ok(m)
    }

    /// Dense text: n lines of n space-separated integers.
    pub fn to_dense_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    s.push(' ');
                }
                s.push_str(&self.get(i, j).to_string());
            }
            s.push('\n');
        }
        s
    }

    pub fn from_dense_text(text: &str) -> Result<IntMatrix> {
        let rows: Vec<Vec<BigInt>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split_whitespace()
                    .map(|tok| {
                        BigInt::from_str(tok)
                            .map_err(|_| Error::Parse(format!("bad integer {tok:?}")))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!("matrix is not {n}x{n}")));
        }
        Ok(IntMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Triplet text: lines "i j v", 1-based.
    pub fn to_triplet_text(&self) -> String {
        let mut s = String::new();
        for (i, j, v) in self.triplets() {
            s.push_str(&format!("{i} {j} {v}\n"));
        }
        s
    }

    pub fn from_triplet_text(n: usize, text: &str) -> Result<IntMatrix> {
        let mut triplets = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(Error::Parse(format!("bad triplet line {line:?}")));
            }
            let i: usize = toks[0]
                .parse()
                .map_err(|_| Error::Parse(format!("bad row index {:?}", toks[0])))?;
            let j: usize = toks[1]
                .parse()
                .map_err(|_| Error::Parse(format!("bad column index {:?}", toks[1])))?;
            let v = BigInt::from_str(toks[2])
                .map_err(|_| Error::Parse(format!("bad value {:?}", toks[2])))?;
            triplets.push((i, j, v));
        }
        IntMatrix::from_triplets(n, triplets)
    }

    /// Entries as a 2D vector of i64, failing if any entry does not fit.
    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        self.get(i, j).to_i64().ok_or_else(|| {
                            Error::Parse(format!("entry ({i},{j}) exceeds i64"))
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dense_text())
    }
}

/// The matrix with ones on the r-th subdiagonal: entry (i+r, i) = 1 for
/// 1 <= i <= n-r (1-based), zeroes elsewhere.
pub fn make_nr(n: usize, r: usize) -> Result<IntMatrix> {
    if r == 0 || r >= n {
        return Err(Error::InvalidShape { n, r });
    }
    let mut m = IntMatrix::zeros(n);
    for i in 0..n - r {
        m.set(i + r, i, BigInt::one());
    }
    Ok(m)
}

/// The matrix with ones on the (n-r)-th superdiagonal: entry (i, i+n-r) = 1
/// for 1 <= i <= r (1-based), zeroes elsewhere.
pub fn make_er(n: usize, r: usize) -> Result<IntMatrix> {
    if r == 0 || r >= n {
        return Err(Error::InvalidShape { n, r });
    }
    let mut m = IntMatrix::zeros(n);
    for i in 0..r {
        m.set(i, i + n - r, BigInt::one());
    }
    Ok(m)
}
