//! Independent exact verification of nilpotency and Jordan type via the
//! rank sequence of matrix powers.
//!
//! Ranks are computed over the rationals by fraction-free (Bareiss-style)
//! elimination.  A checked `i128` fast path handles the common case; any
//! overflow falls back to arbitrary-precision integers, so results are
//! unconditionally exact.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::partition::{Multiset, Partition};

/// The Jordan type of a nilpotent matrix: the partition of n given by its
/// Jordan block sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanType {
    pub partition: Partition,
}

trait ExactScalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    /// Exact quotient; callers guarantee divisibility.
    fn exact_div(&self, other: &Self) -> Self;
}

impl ExactScalar for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i128::checked_sub(*self, *other)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i128::checked_add(*self, *other)
    }
    fn exact_div(&self, other: &Self) -> Self {
        debug_assert_eq!(self % other, 0, "Bareiss division must be exact");
        self / other
    }
}

impl ExactScalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn exact_div(&self, other: &Self) -> Self {
        debug_assert!(
            Zero::is_zero(&(self % other)),
            "Bareiss division must be exact"
        );
        self / other
    }
}

/// Sparse row-major matrix used for the power chain; column indices are
/// kept sorted within each row.
#[derive(Clone)]
struct SparseRows<T> {
    n: usize,
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: ExactScalar> SparseRows<T> {
    fn mul(&self, other: &SparseRows<T>) -> Option<SparseRows<T>> {
        let n = self.n;
        let mut rows = Vec::with_capacity(n);
        let mut acc: Vec<Option<T>> = vec![None; n];
        for row in &self.rows {
            let mut touched = Vec::new();
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let prod = a.checked_mul(b)?;
                    match &mut acc[*j] {
                        Some(existing) => *existing = existing.checked_add(&prod)?,
                        slot => {
                            *slot = Some(prod);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out_row = Vec::with_capacity(touched.len());
            for j in touched {
                let v = acc[j].take().unwrap();
                if !v.is_zero() {
                    out_row.push((j, v));
                }
            }
            rows.push(out_row);
        }
        Some(SparseRows { n, rows })
    }

    fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    fn to_dense(&self) -> Vec<Vec<T>> {
        let mut dense = vec![vec![T::zero(); self.n]; self.n];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                dense[i][*j] = v.clone();
            }
        }
        dense
    }
}

/// Fraction-free elimination with row pivoting; returns the rank, or None
/// if any intermediate value overflowed.
fn bareiss_rank<T: ExactScalar>(mut m: Vec<Vec<T>>) -> Option<usize> {
    let rows = m.len();
    if rows == 0 {
        return Some(0);
    }
    let cols = m[0].len();
    let mut prev = T::one();
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(pr) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, pr);
        for r in pivot_row + 1..rows {
            for c in col + 1..cols {
                let a = m[pivot_row][col].checked_mul(&m[r][c])?;
                let b = m[r][col].checked_mul(&m[pivot_row][c])?;
                m[r][c] = a.checked_sub(&b)?.exact_div(&prev);
            }
            m[r][col] = T::zero();
        }
        prev = m[pivot_row][col].clone();
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    Some(pivot_row)
}

fn to_sparse_i128(a: &IntMatrix) -> Option<SparseRows<i128>> {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::new();
        for j in 0..n {
            let e = a.get(i, j);
            if !Zero::is_zero(e) {
                row.push((j, e.to_i128()?));
            }
        }
        rows.push(row);
    }
    Some(SparseRows { n, rows })
}

fn to_sparse_bigint(a: &IntMatrix) -> SparseRows<BigInt> {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::new();
        for j in 0..n {
            let e = a.get(i, j);
            if !Zero::is_zero(e) {
                row.push((j, e.clone()));
            }
        }
        rows.push(row);
    }
    SparseRows { n, rows }
}

/// Ranks of successive powers, r_0 = n, r_k = rank(a^k), continued until
/// the rank reaches zero or stabilizes at a positive value.
fn rank_sequence_generic<T: ExactScalar>(a: &SparseRows<T>) -> Option<Vec<usize>> {
    let n = a.n;
    let mut seq = vec![n];
    if n == 0 {
        return Some(seq);
    }
    let mut power = a.clone();
    loop {
        let r = bareiss_rank(power.to_dense())?;
        let last = *seq.last().unwrap();
        seq.push(r);
        if r == 0 || r == last {
            return Some(seq);
        }
        power = power.mul(a)?;
    }
}

/// Rank of the matrix over the rationals, computed exactly.
pub fn exact_rank(a: &IntMatrix) -> usize {
    if let Some(sparse) = to_sparse_i128(a) {
        if let Some(r) = bareiss_rank(sparse.to_dense()) {
            return r;
        }
    }
    bareiss_rank(to_sparse_bigint(a).to_dense()).expect("bigint elimination cannot overflow")
}

/// Ranks r_0 = n, r_1, r_2, ... of successive powers, stopping once the
/// rank hits zero (nilpotent) or repeats (not nilpotent).
pub fn rank_sequence(a: &IntMatrix) -> Vec<usize> {
    if let Some(sparse) = to_sparse_i128(a) {
        if let Some(seq) = rank_sequence_generic(&sparse) {
            return seq;
        }
    }
    rank_sequence_generic(&to_sparse_bigint(a)).expect("bigint elimination cannot overflow")
}

/// True iff a^n = 0, with n the dimension.
pub fn is_nilpotent(a: &IntMatrix) -> bool {
    if let Some(sparse) = to_sparse_i128(a) {
        if let Some(result) = is_nilpotent_generic(&sparse, a.dim()) {
            return result;
        }
    }
    is_nilpotent_generic(&to_sparse_bigint(a), a.dim())
        .expect("bigint powering cannot overflow")
}

fn is_nilpotent_generic<T: ExactScalar>(a: &SparseRows<T>, n: usize) -> Option<bool> {
    let mut power = a.clone();
    let mut k = 1usize;
    // repeated squaring reaches exponent >= n
    while k < n {
        if power.is_zero() {
            return Some(true);
        }
        power = power.mul(&power)?;
        k *= 2;
    }
    Some(power.is_zero())
}

/// Jordan type of a nilpotent matrix from its rank sequence: the number of
/// blocks of size >= k is r_{k-1} - r_k, and the partition is assembled from
/// those counts.
pub fn jordan_type(a: &IntMatrix) -> Result<JordanType> {
    let seq = rank_sequence(a);
    if *seq.last().unwrap() != 0 {
        return Err(Error::NotNilpotent);
    }
    Ok(JordanType {
        partition: partition_from_rank_sequence(&seq),
    })
}

/// Assemble the block-size partition from a rank sequence ending in zero.
pub fn partition_from_rank_sequence(seq: &[usize]) -> Partition {
    debug_assert_eq!(*seq.last().unwrap(), 0);
    // blocks_ge[k] = number of blocks of size >= k+1
    let blocks_ge: Vec<usize> = seq.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Multiset::new();
    for k in 0..blocks_ge.len() {
        let next = blocks_ge.get(k + 1).copied().unwrap_or(0);
        let exactly = blocks_ge[k] - next;
        if exactly > 0 {
            parts.insert(k + 1, exactly);
        }
    }
    Partition::from_multiset(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{make_er, make_nr};
    use crate::partition::nr_type;
    use num_traits::One;

    /// Division-free integer row reduction: eliminates by cross
    /// multiplication only.  Exponential coefficient growth, fine for the
    /// small matrices used here, and independent of the Bareiss path.
    fn naive_rank(a: &IntMatrix) -> usize {
        let n = a.dim();
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| a.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(pr) = (rank..n).find(|&r| !Zero::is_zero(&m[r][col])) else {
                continue;
            };
            m.swap(rank, pr);
            for r in rank + 1..n {
                if Zero::is_zero(&m[r][col]) {
                    continue;
                }
                let p = m[rank][col].clone();
                let q = m[r][col].clone();
                for c in 0..n {
                    let v = &m[r][c] * &p - &m[rank][c] * &q;
                    m[r][c] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    fn n3_plus_e26() -> IntMatrix {
        let mut a = make_nr(10, 3).unwrap();
        a.set(1, 5, One::one());
        a
    }

    #[test]
    fn rank_examples() {
        assert_eq!(exact_rank(&IntMatrix::identity(5)), 5);
        assert_eq!(exact_rank(&make_nr(10, 3).unwrap()), 7);
        assert_eq!(exact_rank(&IntMatrix::zeros(4)), 0);
    }

    #[test]
    fn rank_agrees_with_division_free_elimination() {
        let mut cases = vec![
            IntMatrix::identity(6),
            make_nr(10, 3).unwrap(),
            make_er(10, 7).unwrap(),
            n3_plus_e26(),
        ];
        // a few dense deterministic matrices
        for seed in 0..6u64 {
            let n = 5;
            let mut m = IntMatrix::zeros(n);
            let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            for i in 0..n {
                for j in 0..n {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    let v = ((state >> 33) % 7) as i64 - 3;
                    m.set(i, j, BigInt::from(v));
                }
            }
            cases.push(m);
        }
        for a in &cases {
            assert_eq!(exact_rank(a), naive_rank(a));
        }
    }

    #[test]
    fn nilpotency_examples() {
        for n in 2..=12 {
            for r in 1..n {
                assert!(is_nilpotent(&make_nr(n, r).unwrap()));
            }
        }
        assert!(!is_nilpotent(&IntMatrix::identity(4)));
        assert!(is_nilpotent(&n3_plus_e26()));
        assert!(is_nilpotent(&IntMatrix::zeros(3)));
    }

    #[test]
    fn jordan_type_of_nr_matches_nr_type() {
        for n in 2..=20 {
            for r in 1..n {
                let t = jordan_type(&make_nr(n, r).unwrap()).unwrap();
                assert_eq!(t.partition, nr_type(n, r).unwrap(), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn jordan_type_of_completed_matrix() {
        let a = n3_plus_e26();
        assert_eq!(rank_sequence(&a), vec![10, 7, 5, 3, 1, 0]);
        assert_eq!(
            jordan_type(&a).unwrap().partition,
            Partition::normalize(&[5, 4, 1]).unwrap()
        );
    }

    #[test]
    fn jordan_type_of_single_block() {
        let a = make_nr(6, 1).unwrap(); // one chain of length 6
        assert_eq!(
            jordan_type(&a).unwrap().partition,
            Partition::normalize(&[6]).unwrap()
        );
        assert_eq!(
            jordan_type(&IntMatrix::zeros(4)).unwrap().partition,
            Partition::normalize(&[1, 1, 1, 1]).unwrap()
        );
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        assert_eq!(
            jordan_type(&IntMatrix::identity(3)).unwrap_err(),
            Error::NotNilpotent
        );
    }

    #[test]
    fn jordan_type_is_conjugation_invariant() {
        // conjugate N_r by deterministic pseudo-random permutations
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move |bound: usize| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) as usize) % bound
        };
        for n in 2..=10usize {
            for r in 1..n {
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    perm.swap(i, next(i + 1));
                }
                let mut p = IntMatrix::zeros(n);
                for (i, &pi) in perm.iter().enumerate() {
                    p.set(pi, i, One::one());
                }
                let conj = p
                    .mul(&make_nr(n, r).unwrap())
                    .unwrap()
                    .mul(&p.transpose())
                    .unwrap();
                assert_eq!(
                    jordan_type(&conj).unwrap().partition,
                    nr_type(n, r).unwrap()
                );
            }
        }
    }

    #[test]
    fn rank_sequence_is_a_valid_weyr_sequence() {
        for a in [make_nr(12, 5).unwrap(), n3_plus_e26(), IntMatrix::zeros(4)] {
            let seq = rank_sequence(&a);
            assert!(seq.windows(2).all(|w| w[0] >= w[1]), "non-increasing");
            let diffs: Vec<usize> = seq.windows(2).map(|w| w[0] - w[1]).collect();
            assert!(
                diffs.windows(2).all(|w| w[0] >= w[1]),
                "block counts non-increasing: {seq:?}"
            );
        }
    }
}
