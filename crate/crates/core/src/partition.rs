//! Integer partitions as multisets of positive integers, with the multiset
//! algebra (sum, saturating difference, max) and the dominance order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite multiset of positive integers, stored as a sorted
/// value -> multiplicity map. Zero multiplicities are never stored, so
/// equality is multiplicity-map equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multiset {
    counts: BTreeMap<usize, usize>,
    len: usize,
}

impl Multiset {
    pub fn new() -> Self {
        Multiset::default()
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of elements counted with multiplicity.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Sum of all elements counted with multiplicity.
    pub fn sum(&self) -> usize {
        self.counts.iter().map(|(&v, &m)| v * m).sum()
    }

    pub fn multiplicity(&self, value: usize) -> usize {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    /// Distinct values with positive multiplicity, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts.keys().copied()
    }

    pub fn insert(&mut self, value: usize, mult: usize) {
        assert!(value >= 1, "multiset elements must be positive");
        if mult == 0 {
            return;
        }
        *self.counts.entry(value).or_insert(0) += mult;
        self.len += mult;
    }

    /// Largest element of the support.
    pub fn max(&self) -> Result<usize> {
        self.counts
            .keys()
            .next_back()
            .copied()
            .ok_or(Error::EmptyMultiset)
    }

    /// Pointwise sum of multiplicities.
    pub fn msum(&self, other: &Multiset) -> Multiset {
        let mut out = self.clone();
        for (&v, &m) in &other.counts {
            out.insert(v, m);
        }
        out
    }

    /// Saturating pointwise difference of multiplicities:
    /// mult(x) = max(0, self.mult(x) - other.mult(x)).
    pub fn mdiff(&self, other: &Multiset) -> Multiset {
        let mut out = Multiset::new();
        for (&v, &m) in &self.counts {
            let rem = m.saturating_sub(other.multiplicity(v));
            if rem > 0 {
                out.insert(v, rem);
            }
        }
        out
    }

    /// Remove one copy of the largest element.
    pub fn remove_max(&mut self) -> Result<usize> {
        let v = self.max()?;
        let m = self.counts.get_mut(&v).unwrap();
        *m -= 1;
        if *m == 0 {
            self.counts.remove(&v);
        }
        self.len -= 1;
        Ok(v)
    }

    /// True when every multiplicity of self is <= the one in other.
    pub fn is_subset_of(&self, other: &Multiset) -> bool {
        self.counts
            .iter()
            .all(|(&v, &m)| m <= other.multiplicity(v))
    }

    /// Elements in non-increasing order, with multiplicity.
    pub fn iter_desc(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts
            .iter()
            .rev()
            .flat_map(|(&v, &m)| std::iter::repeat(v).take(m))
    }

    /// Non-increasing vector of elements.
    pub fn to_vec_desc(&self) -> Vec<usize> {
        self.iter_desc().collect()
    }
}

impl FromIterator<usize> for Multiset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for v in iter {
            m.insert(v, 1);
        }
        m
    }
}

/// An integer partition: a multiset of positive integers.  The canonical
/// iteration order is non-increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Multiset,
}

impl Partition {
    /// Build a partition from parts given in any order.  Any part <= 0 is
    /// rejected, not dropped.
    pub fn normalize(raw: &[i64]) -> Result<Partition> {
        let mut parts = Multiset::new();
        for &p in raw {
            if p <= 0 {
                return Err(Error::InvalidPart(p));
            }
            parts.insert(p as usize, 1);
        }
        Ok(Partition { parts })
    }

    pub fn from_multiset(parts: Multiset) -> Partition {
        Partition { parts }
    }

    pub fn empty() -> Partition {
        Partition {
            parts: Multiset::new(),
        }
    }

    /// Sum of the parts.
    pub fn sum(&self) -> usize {
        self.parts.sum()
    }

    /// Number of parts, written |lambda|.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn multiplicity(&self, value: usize) -> usize {
        self.parts.multiplicity(value)
    }

    pub fn multiset(&self) -> &Multiset {
        &self.parts
    }

    /// Parts in non-increasing order.
    pub fn parts_desc(&self) -> Vec<usize> {
        self.parts.to_vec_desc()
    }

    /// Dominance (majorization) order on partitions of the same integer:
    /// self >= other iff self has no more parts and every prefix sum of self
    /// weakly exceeds the corresponding prefix sum of other.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        let (ls, rs) = (self.sum(), other.sum());
        if ls != rs {
            return Err(Error::SumMismatch { left: ls, right: rs });
        }
        if self.num_parts() > other.num_parts() {
            return Ok(false);
        }
        let mut acc_l = 0usize;
        let mut acc_r = 0usize;
        let rhs = other.parts_desc();
        for (j, p) in self.parts_desc().iter().enumerate() {
            acc_l += p;
            acc_r += rhs.get(j).copied().unwrap_or(0);
            if acc_l < acc_r {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All partitions of n in descending lexicographic order, starting at {n}.
    pub fn enumerate(n: usize) -> Vec<Partition> {
        if n == 0 {
            return vec![Partition::empty()];
        }
        let mut out = Vec::new();
        let mut parts = vec![n];
        loop {
            out.push(Partition {
                parts: parts.iter().copied().collect(),
            });
            // Decrement the rightmost part exceeding 1 and redistribute the
            // remainder greedily; all-ones is the last partition.
            let Some(k) = parts.iter().rposition(|&p| p > 1) else {
                break;
            };
            let v = parts[k] - 1;
            let mut rem = parts.len() - k; // trailing ones plus the 1 we removed
            parts.truncate(k);
            parts.push(v);
            while rem > v {
                parts.push(v);
                rem -= v;
            }
            if rem > 0 {
                parts.push(rem);
            }
        }
        out
    }
}

/// The nilpotent type of N_r in gl_n: {ceil(n/r) with multiplicity n mod r,
/// floor(n/r) with multiplicity r - (n mod r)}.
pub fn nr_type(n: usize, r: usize) -> Result<Partition> {
    if r == 0 || r >= n {
        return Err(Error::InvalidShape { n, r });
    }
    let rp = n % r;
    let mut parts = Multiset::new();
    if rp > 0 {
        parts.insert(n.div_ceil(r), rp);
    }
    parts.insert(n / r, r - rp);
    Ok(Partition { parts })
}

impl fmt::Display for Partition {
    /// Comma-separated decreasing parts, e.g. "5,4,1".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in self.parts.iter_desc() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Partition> {
        let raw: Vec<i64> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?}")))
            })
            .collect::<Result<_>>()?;
        Partition::normalize(&raw)
    }
}
