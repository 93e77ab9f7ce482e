//! The completion engine: initialization, Loop 1 (cases 1a-1d), Loop 2
//! (Little Loop and cases 2a-2d), producing the strictly upper triangular
//! binary completion X with optional invariant checking and a structural
//! trace of every graft.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical_nr_graph, GlnGraph, GraftEffect};
use crate::matrix::IntMatrix;
use crate::partition::{Multiset, Partition};

/// Which loop a trace record belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LoopTag {
    #[serde(rename = "loop1")]
    Loop1,
    #[serde(rename = "loop2")]
    Loop2,
    #[serde(rename = "little")]
    Little,
}

/// Which case block performed the graft.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "1a")]
    C1a,
    #[serde(rename = "1b")]
    C1b,
    #[serde(rename = "1c")]
    C1c,
    #[serde(rename = "1d")]
    C1d,
    #[serde(rename = "2a")]
    C2a,
    #[serde(rename = "2b")]
    C2b,
    #[serde(rename = "2c")]
    C2c,
    #[serde(rename = "2d")]
    C2d,
    #[serde(rename = "little")]
    Little,
}

impl CaseTag {
    pub fn loop_tag(self) -> LoopTag {
        match self {
            CaseTag::C1a | CaseTag::C1b | CaseTag::C1c | CaseTag::C1d => LoopTag::Loop1,
            CaseTag::C2a | CaseTag::C2b | CaseTag::C2c | CaseTag::C2d => LoopTag::Loop2,
            CaseTag::Little => LoopTag::Little,
        }
    }
}

/// Parameters of a single graft.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraftParams {
    pub t: usize,
    pub s: usize,
    pub m: usize,
}

/// One graft: which case fired, the graft parameters, and the multiset and
/// pointer state after the instruction step that contains the graft.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub k: usize,
    #[serde(rename = "loop")]
    pub loop_tag: LoopTag,
    pub case: CaseTag,
    pub graft: GraftParams,
    #[serde(rename = "L")]
    pub long_parts: Vec<usize>,
    #[serde(rename = "S")]
    pub short_parts: Vec<usize>,
    pub t: usize,
    pub s_ptr: usize,
}

/// Engine options; invariant checking is off by default because the P5/P6/P8
/// checks cost O(n) per iteration.
#[derive(Debug, Clone, Copy, Default)]
pub struct EngineOptions {
    pub check_invariants: bool,
    pub trace: bool,
}

/// The mutable state of the algorithm.
#[derive(Debug, Clone)]
pub struct EngineState {
    pub(crate) n: usize,
    pub(crate) r: usize,
    pub(crate) rprime: usize,
    pub(crate) lo: usize,
    pub(crate) hi: usize,
    pub(crate) lambda: Partition,
    pub(crate) graph: GlnGraph,
    /// Scion pointer.
    pub(crate) t: usize,
    /// Stock pointer.
    pub(crate) s: usize,
    /// Long parts (parts too large for the initial heights).
    pub(crate) long_parts: Multiset,
    /// Short parts (parts too small for the initial heights).
    pub(crate) short_parts: Multiset,
    /// end = r - min(r', mult_lambda(ceil(n/r))); used by invariants only.
    pub(crate) end_const: usize,
    /// Completed primary-loop iterations.
    pub(crate) k: usize,
    /// 1-based (row, col) matrix entries added so far, in graft order.
    pub(crate) added: Vec<(usize, usize)>,
    /// Entries added during the current iteration (for P2).
    pub(crate) iter_added: Vec<(usize, usize)>,
    pub(crate) prev_long: Multiset,
    pub(crate) prev_short: Multiset,
    pub(crate) little_iterations: usize,
}

/// Build the k = 0 state: the canonical graph of N_r plus the multisets and
/// pointers of the initialization block.
pub fn initialize(n: usize, r: usize, lambda: &Partition) -> Result<EngineState> {
    if r == 0 || r >= n {
        return Err(Error::InvalidShape { n, r });
    }
    if lambda.sum() != n {
        return Err(Error::SumMismatch {
            left: lambda.sum(),
            right: n,
        });
    }
    if lambda.num_parts() > r {
        return Err(Error::NoCompletionExists {
            parts: lambda.num_parts(),
            r,
        });
    }
    let rp = n % r;
    let lo = n / r;
    let hi = n.div_ceil(r);

    let mut long_parts = Multiset::new();
    for x in lambda.multiset().support().collect::<Vec<_>>() {
        if x > hi {
            long_parts.insert(x, lambda.multiplicity(x));
        }
    }
    if rp != 0 && lambda.multiplicity(hi) > rp {
        long_parts.insert(hi, lambda.multiplicity(hi) - rp);
    }

    let mut short_parts = Multiset::new();
    for x in lambda.multiset().support().collect::<Vec<_>>() {
        if x < lo {
            short_parts.insert(x, lambda.multiplicity(x));
        }
    }
    if lambda.multiplicity(lo) > r - rp {
        short_parts.insert(lo, lambda.multiplicity(lo) - (r - rp));
    }

    let t = lambda.multiplicity(lo).min(r - rp) + 1;
    let s = t + 1;
    let end_const = r - rp.min(lambda.multiplicity(hi));

    Ok(EngineState {
        n,
        r,
        rprime: rp,
        lo,
        hi,
        lambda: lambda.clone(),
        graph: canonical_nr_graph(n, r)?,
        t,
        s,
        prev_long: long_parts.clone(),
        prev_short: short_parts.clone(),
        long_parts,
        short_parts,
        end_const,
        k: 0,
        added: Vec::new(),
        iter_added: Vec::new(),
        little_iterations: 0,
    })
}

impl EngineState {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn rprime(&self) -> usize {
        self.rprime
    }
    pub fn scion(&self) -> usize {
        self.t
    }
    pub fn stock(&self) -> usize {
        self.s
    }
    pub fn long_parts(&self) -> &Multiset {
        &self.long_parts
    }
    pub fn short_parts(&self) -> &Multiset {
        &self.short_parts
    }
    pub fn end_const(&self) -> usize {
        self.end_const
    }
    pub fn iteration(&self) -> usize {
        self.k
    }
    pub fn graph(&self) -> &GlnGraph {
        &self.graph
    }
    pub fn little_iterations(&self) -> usize {
        self.little_iterations
    }

    fn height_checked(&self, x: usize) -> Result<usize> {
        self.graph
            .height(x)
            .ok_or(Error::ProbeOutOfDomain { position: x, k: self.k })
    }

    fn begin_iteration(&mut self) {
        self.k += 1;
        self.prev_long = self.long_parts.clone();
        self.prev_short = self.short_parts.clone();
        self.iter_added.clear();
    }

    fn graft(&mut self, t: usize, s: usize, m: usize) -> Result<GraftEffect> {
        let effect = self.graph.graft_mut(t, s, m)?;
        self.added.push((effect.row, effect.col));
        self.iter_added.push((effect.row, effect.col));
        Ok(effect)
    }

    fn record(&self, case: CaseTag, graft: GraftParams) -> TraceRecord {
        TraceRecord {
            k: self.k,
            loop_tag: case.loop_tag(),
            case,
            graft,
            long_parts: self.long_parts.to_vec_desc(),
            short_parts: self.short_parts.to_vec_desc(),
            t: self.t,
            s_ptr: self.s,
        }
    }

    /// One iteration of Loop 1.  Requires S nonempty; exactly one of cases
    /// 1a-1d executes, in listed order.
    pub fn step_loop1(&mut self) -> Result<TraceRecord> {
        self.begin_iteration();
        let max_l = self.long_parts.max()?;
        let max_s = self.short_parts.max()?;
        let h_t = self.height_checked(self.t)?;
        let h_s = self.height_checked(self.s)?;
        let d = max_l as isize - h_t as isize; // max(L) - h_t
        let e = h_s as isize - max_s as isize; // h_s - max(S)

        // Case 1a's second conjunct probes h_{s+1}; it is evaluated only
        // when the first conjunct holds, and an out-of-domain probe is a
        // hard error rather than a silent false.
        let case_1a = d == e + 1 && {
            let h_s1 = self.height_checked(self.s + 1)?;
            h_s < h_s1
        };

        let (case, params) = if case_1a {
            let h_s1 = self.height_checked(self.s + 1)?;
            let m = h_s1 - max_s;
            let params = GraftParams { t: self.t, s: self.s + 1, m };
            self.graft(self.t, self.s + 1, m)?;
            self.short_parts.remove_max()?;
            self.long_parts.remove_max()?;
            self.t = self.s;
            self.s += 2;
            (CaseTag::C1a, params)
        } else if d > e {
            let m = (h_s - max_s) as usize;
            let params = GraftParams { t: self.t, s: self.s, m };
            self.graft(self.t, self.s, m)?;
            self.short_parts.remove_max()?;
            self.s += 1;
            (CaseTag::C1b, params)
        } else if d == e {
            let m = (h_s - max_s) as usize;
            let params = GraftParams { t: self.t, s: self.s, m };
            self.graft(self.t, self.s, m)?;
            self.short_parts.remove_max()?;
            self.long_parts.remove_max()?;
            self.t = self.s + 1;
            self.s += 2;
            (CaseTag::C1c, params)
        } else {
            let m = if d > 0 { d as usize } else { 0 };
            let params = GraftParams { t: self.t, s: self.s, m };
            self.graft(self.t, self.s, m)?;
            self.long_parts.remove_max()?;
            self.t = self.s;
            self.s += 1;
            (CaseTag::C1d, params)
        };
        Ok(self.record(case, params))
    }

    /// One iteration of Loop 2: the Little Loop runs to exhaustion (one
    /// record per graft), then exactly one of cases 2a-2d executes (case 2b
    /// performs two grafts), then max(L) is removed.  Requires S empty and
    /// L nonempty.
    pub fn step_loop2(&mut self) -> Result<Vec<TraceRecord>> {
        self.step_loop2_checked(false)
    }

    fn step_loop2_checked(&mut self, check: bool) -> Result<Vec<TraceRecord>> {
        self.begin_iteration();
        let mut records = Vec::new();
        let max_l = self.long_parts.max()?;

        // Little Loop
        loop {
            let h_t = self.height_checked(self.t)?;
            if max_l as isize - h_t as isize <= self.hi as isize {
                break;
            }
            let h_s = self.height_checked(self.s)?;
            let stock = self.s;
            let params = GraftParams { t: self.t, s: stock, m: h_s };
            self.graft(self.t, stock, h_s)?;
            self.s += 1;
            self.little_iterations += 1;
            if check {
                self.check_little_boundary(max_l, stock, h_t, h_s)?;
            }
            records.push(self.record(CaseTag::Little, params));
        }

        let h_t = self.height_checked(self.t)?;
        let h_s = self.height_checked(self.s)?;
        let d = max_l as isize - h_t as isize;

        if d > h_s as isize {
            let h_s1 = self.height_checked(self.s + 1)?;
            if h_s1 == self.hi {
                // Case 2a
                let params = GraftParams { t: self.t, s: self.s + 1, m: h_s1 };
                self.graft(self.t, self.s + 1, h_s1)?;
                self.t = self.s;
                self.s += 2;
                self.long_parts.remove_max()?;
                records.push(self.record(CaseTag::C2a, params));
            } else if h_s1 == self.lo {
                // Case 2b: two grafts
                let params1 = GraftParams { t: self.t, s: self.s, m: h_s };
                self.graft(self.t, self.s, h_s)?;
                self.s += 1;
                records.push(self.record(CaseTag::C2b, params1));
                let params2 = GraftParams { t: self.t, s: self.s, m: 1 };
                let effect = self.graft(self.t, self.s, 1)?;
                if effect.stock_removed {
                    // floor(n/r) = 1: the one-vertex donor column is gone,
                    // so the scion moves to the next live column instead of
                    // the emptied one.
                    self.t = self.s + 1;
                    self.s += 2;
                } else {
                    self.t = self.s;
                    self.s += 1;
                }
                self.long_parts.remove_max()?;
                records.push(self.record(CaseTag::C2b, params2));
            } else {
                // P6(3) guarantees window heights are floor(n/r) or
                // ceil(n/r); anything else is an engine bug.
                return Err(Error::InvariantViolation {
                    which: "P6".into(),
                    k: self.k,
                });
            }
        } else if d == h_s as isize {
            // Case 2c
            let params = GraftParams { t: self.t, s: self.s, m: h_s };
            self.graft(self.t, self.s, h_s)?;
            self.t = self.s + 1;
            self.s += 2;
            self.long_parts.remove_max()?;
            records.push(self.record(CaseTag::C2c, params));
        } else {
            // Case 2d
            let m = if d > 0 { d as usize } else { 0 };
            let params = GraftParams { t: self.t, s: self.s, m };
            self.graft(self.t, self.s, m)?;
            self.t = self.s;
            self.s += 1;
            self.long_parts.remove_max()?;
            records.push(self.record(CaseTag::C2d, params));
        }
        Ok(records)
    }
}

/// The result of a completed run.
#[derive(Debug, Clone)]
pub struct Completion {
    pub n: usize,
    pub r: usize,
    pub lambda: Partition,
    /// Final state of the graph; matrix_of_graph(graph) = N_r + X.
    pub graph: GlnGraph,
    /// One record per graft, in execution order (empty when tracing was off
    /// or no graft was needed).
    pub trace: Vec<TraceRecord>,
    /// 1-based (row, col) entries of X in graft order.
    entries: Vec<(usize, usize)>,
    pub little_iterations: usize,
    /// Iteration boundaries at which invariants were checked (0 if off).
    pub checked_boundaries: usize,
}

impl Completion {
    /// The completion X as a dense matrix.
    pub fn x(&self) -> IntMatrix {
        let mut x = IntMatrix::zeros(self.n);
        for &(i, j) in &self.entries {
            x.set(i - 1, j - 1, BigInt::from(1));
        }
        x
    }

    /// The 1-based (row, col) positions of the ones of X, in graft order.
    pub fn x_entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    /// Number of nonzero entries of X; equals the total graft count.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// N_r + X, read back from the final graph.
    pub fn completed_matrix(&self) -> IntMatrix {
        self.graph.to_matrix()
    }
}

/// Run the full algorithm.
pub fn run(n: usize, r: usize, lambda: &Partition, options: EngineOptions) -> Result<Completion> {
    let mut st = initialize(n, r, lambda)?;
    let mut trace = Vec::new();
    let mut checked = 0usize;

    let work_remains = !(st.short_parts.is_empty() && st.long_parts.is_empty());
    if options.check_invariants && work_remains {
        st.check_boundary()?;
        checked += 1;
    }
    while !st.short_parts.is_empty() {
        let rec = st.step_loop1()?;
        if options.trace {
            trace.push(rec);
        }
        if options.check_invariants {
            st.check_boundary()?;
            checked += 1;
        }
    }
    while !st.long_parts.is_empty() {
        let recs = st.step_loop2_checked(options.check_invariants)?;
        if options.trace {
            trace.extend(recs);
        }
        if options.check_invariants {
            st.check_boundary()?;
            checked += 1;
        }
    }

    // Postconditions, always on: X strictly upper triangular and binary
    // (each graft adds one fresh entry above the diagonal), and the final
    // heights realize lambda.
    for &(i, j) in &st.added {
        if i >= j {
            return Err(Error::InvariantViolation {
                which: "P2".into(),
                k: st.k,
            });
        }
    }
    if st.graph.heights() != *lambda.multiset() {
        return Err(Error::InvariantViolation {
            which: "P5".into(),
            k: st.k,
        });
    }

    Ok(Completion {
        n,
        r,
        lambda: lambda.clone(),
        graph: st.graph,
        trace,
        entries: st.added,
        little_iterations: st.little_iterations,
        checked_boundaries: checked,
    })
}
