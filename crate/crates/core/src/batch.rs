//! Exhaustive sweeps: run and oracle-verify every instance (n, r, lambda)
//! with 0 < r < n <= max_n and |lambda| <= r.  Instances share nothing, so
//! the sweep optionally fans out across threads.

use rayon::prelude::*;

use crate::engine::{run, EngineOptions};
use crate::jordan::jordan_type;
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BatchFailure {
    pub n: usize,
    pub r: usize,
    pub lambda: String,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct BatchReport {
    pub max_n: usize,
    pub instances: usize,
    pub failures: Vec<BatchFailure>,
    /// Iteration boundaries at which the P-invariants were checked.
    pub boundaries_checked: usize,
    /// Little-Loop iterations encountered (each also invariant-checked).
    pub little_iterations: usize,
    /// Total grafts across all instances.
    pub grafts: usize,
}

impl BatchReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every (n, r, lambda) with 0 < r < n <= max_n and |lambda| <= r.
pub fn instances(max_n: usize) -> Vec<(usize, usize, Partition)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for lambda in Partition::enumerate(n) {
            for r in lambda.num_parts().max(1)..n {
                out.push((n, r, lambda.clone()));
            }
        }
    }
    out
}

fn verify_instance(
    n: usize,
    r: usize,
    lambda: &Partition,
    check_invariants: bool,
) -> Result<(usize, usize, usize), String> {
    let options = EngineOptions {
        check_invariants,
        trace: false,
    };
    let completion = run(n, r, lambda, options).map_err(|e| e.to_string())?;
    let x = completion.x();
    if !x.is_binary() || !x.is_strictly_upper_triangular() {
        return Err("X is not binary strictly upper triangular".into());
    }
    let certified = jordan_type(&completion.completed_matrix()).map_err(|e| e.to_string())?;
    if certified.partition != *lambda {
        return Err(format!(
            "oracle type {} does not match requested {lambda}",
            certified.partition
        ));
    }
    Ok((
        completion.checked_boundaries,
        completion.little_iterations,
        completion.nnz(),
    ))
}

/// Run the sweep.  Returns zero instances when max_n < 2.
pub fn sweep(max_n: usize, parallel: bool, check_invariants: bool) -> BatchReport {
    let work = if max_n < 2 { Vec::new() } else { instances(max_n) };
    let results: Vec<(usize, usize, usize, Option<BatchFailure>)> = if parallel {
        work.par_iter()
            .map(|(n, r, lambda)| summarize(*n, *r, lambda, check_invariants))
            .collect()
    } else {
        work.iter()
            .map(|(n, r, lambda)| summarize(*n, *r, lambda, check_invariants))
            .collect()
    };
    let mut failures: Vec<BatchFailure> = results
        .iter()
        .filter_map(|(_, _, _, f)| f.clone())
        .collect();
    failures.sort();
    BatchReport {
        max_n,
        instances: work.len(),
        failures,
        boundaries_checked: results.iter().map(|r| r.0).sum(),
        little_iterations: results.iter().map(|r| r.1).sum(),
        grafts: results.iter().map(|r| r.2).sum(),
    }
}

fn summarize(
    n: usize,
    r: usize,
    lambda: &Partition,
    check_invariants: bool,
) -> (usize, usize, usize, Option<BatchFailure>) {
    match verify_instance(n, r, lambda, check_invariants) {
        Ok((boundaries, littles, grafts)) => (boundaries, littles, grafts, None),
        Err(reason) => (
            0,
            0,
            0,
            Some(BatchFailure {
                n,
                r,
                lambda: lambda.to_string(),
                reason,
            }),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_enumeration_counts() {
        // by hand: n=2 has {2} with r=1; {1,1} admits no r < 2
        assert_eq!(instances(2).len(), 1);
        // n=3 adds {3} r in {1,2} and {2,1} r=2
        assert_eq!(instances(3).len(), 1 + 3);
        assert_eq!(instances(1).len(), 0);
    }

    #[test]
    fn small_sweep_passes() {
        let report = sweep(8, false, true);
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert!(report.instances > 0);
        assert!(report.boundaries_checked > 0);
    }

    #[test]
    fn parallel_sweep_matches_serial() {
        let a = sweep(7, false, true);
        let b = sweep(7, true, true);
        assert_eq!(a.instances, b.instances);
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.boundaries_checked, b.boundaries_checked);
        assert_eq!(a.grafts, b.grafts);
    }
}
