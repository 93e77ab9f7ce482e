//! Weighted arrow graphs on ordered vertices with a plane embedding: the
//! matrix <-> graph bijection, downwardness predicates, the canonical graph
//! of N_r, and the graft transformation.
//!
//! Vertices are identified with their ordinals 1..=n.  The embedding sends
//! each ordinal to a (position, level) pair in Z_{>0} x Z_{>0}; an arrow
//! u -> v corresponds to a nonzero matrix entry at (ord(v), ord(u)).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, GraftClause, Result};
use crate::matrix::{make_nr, IntMatrix};
use crate::partition::Multiset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlnGraph {
    /// ordinal-1 -> (position, level), both 1-based.
    coords: Vec<(usize, usize)>,
    /// position -> level -> ordinal.
    columns: BTreeMap<usize, BTreeMap<usize, usize>>,
    /// (source ordinal, target ordinal) -> nonzero weight.
    arrows: BTreeMap<(usize, usize), i64>,
}

/// Bookkeeping returned by an in-place graft: the single matrix entry the
/// graft turned on, and the heights it changed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct GraftEffect {
    /// 1-based (row, col) of the added matrix entry.
    pub row: usize,
    pub col: usize,
    pub old_scion_height: usize,
    pub old_stock_height: usize,
    /// True when the graft emptied the stock column (m = h_s).
    pub stock_removed: bool,
}

impl GlnGraph {
    /// Build a graph from explicit parts.  `coords[i]` is the embedding of
    /// the vertex with ordinal i+1.
    pub fn new(coords: Vec<(usize, usize)>, arrows: Vec<(usize, usize, i64)>) -> Result<GlnGraph> {
        let n = coords.len();
        if n == 0 {
            return Err(Error::InvalidGraph("empty vertex set".into()));
        }
        let mut columns: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
        for (i, &(x, y)) in coords.iter().enumerate() {
            if x < 1 || y < 1 {
                return Err(Error::InvalidGraph(format!(
                    "vertex {} embedded at ({x},{y}); coordinates must be positive",
                    i + 1
                )));
            }
            if columns.entry(x).or_default().insert(y, i + 1).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "embedding is not injective at ({x},{y})"
                )));
            }
        }
        let mut arrow_map = BTreeMap::new();
        for (u, v, w) in arrows {
            if u < 1 || u > n || v < 1 || v > n {
                return Err(Error::InvalidGraph(format!("arrow ({u},{v}) out of range")));
            }
            if w == 0 {
                return Err(Error::InvalidGraph(format!("arrow ({u},{v}) has zero weight")));
            }
            if arrow_map.insert((u, v), w).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate arrow ({u},{v})")));
            }
        }
        Ok(GlnGraph {
            coords,
            columns,
            arrows: arrow_map,
        })
    }

    /// The graph of a matrix: an arrow u -> v with weight a[ord(v), ord(u)]
    /// for each nonzero entry, carried on the given embedding.
    pub fn from_matrix(a: &IntMatrix, coords: Vec<(usize, usize)>) -> Result<GlnGraph> {
        let n = a.dim();
        if coords.len() != n {
            return Err(Error::InvalidGraph(format!(
                "matrix is {n}x{n} but embedding has {} vertices",
                coords.len()
            )));
        }
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let e = a.get(i, j);
                if !e.is_zero() {
                    let w = e.to_i64().ok_or_else(|| {
                        Error::InvalidGraph(format!("entry ({},{}) exceeds i64", i + 1, j + 1))
                    })?;
                    arrows.push((j + 1, i + 1, w));
                }
            }
        }
        GlnGraph::new(coords, arrows)
    }

    /// Inverse of `from_matrix`: entry (ord(v), ord(u)) = weight of u -> v.
    pub fn to_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n());
        for (&(u, v), &w) in &self.arrows {
            m.set(v - 1, u - 1, BigInt::from(w));
        }
        m
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// (position, level) of the vertex with the given ordinal.
    pub fn coord(&self, ordinal: usize) -> (usize, usize) {
        self.coords[ordinal - 1]
    }

    /// Ordinal of the vertex embedded at (x, y), if any.
    pub fn ordinal_at(&self, x: usize, y: usize) -> Option<usize> {
        self.columns.get(&x).and_then(|c| c.get(&y)).copied()
    }

    /// Positions holding at least one vertex, ascending.
    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.columns.keys().copied()
    }

    pub fn in_domain(&self, x: usize) -> bool {
        self.columns.contains_key(&x)
    }

    /// Height of column x: the largest level occupied at that position.
    pub fn height(&self, x: usize) -> Option<usize> {
        self.columns
            .get(&x)
            .map(|c| *c.keys().next_back().expect("columns are never empty"))
    }

    /// Part(gamma): the multiset of column heights over the domain.
    pub fn heights(&self) -> Multiset {
        self.columns
            .values()
            .map(|c| *c.keys().next_back().unwrap())
            .collect()
    }

    /// Arrows as (source, target, weight), sorted by (source, target).
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.arrows.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Every arrow goes down a level.
    pub fn is_downward(&self) -> bool {
        self.arrows.keys().all(|&(u, v)| {
            let (_, yu) = self.coord(u);
            let (_, yv) = self.coord(v);
            yu > yv
        })
    }

    /// Downward, every vertex above level 1 has an arrow to the vertex
    /// directly below it, and every one-level arrow goes down-right.
    pub fn is_properly_downward(&self) -> bool {
        if !self.is_downward() {
            return false;
        }
        for (ord0, &(x, y)) in self.coords.iter().enumerate() {
            if y > 1 {
                let below = match self.ordinal_at(x, y - 1) {
                    Some(b) => b,
                    None => return false,
                };
                if !self.arrows.contains_key(&(ord0 + 1, below)) {
                    return false;
                }
            }
        }
        for (&(u, v), _) in &self.arrows {
            let (xu, yu) = self.coord(u);
            let (xv, yv) = self.coord(v);
            if yu == yv + 1 && xu > xv {
                return false;
            }
        }
        true
    }

    /// Column i is a downward path: each of its vertices has an arrow to w
    /// iff w is directly below it, and an arrow from w iff w is directly
    /// above it.
    pub fn is_downward_path(&self, i: usize) -> Result<bool> {
        let col = self.columns.get(&i).ok_or(Error::InvalidPosition(i))?;
        let members: Vec<usize> = col.values().copied().collect();
        for &v in &members {
            let (x, y) = self.coord(v);
            let below = self.ordinal_at(x, y - 1);
            let above = self.ordinal_at(x, y + 1);
            for (&(src, tgt), _) in &self.arrows {
                if src == v && Some(tgt) != below {
                    return Ok(false);
                }
                if tgt == v && Some(src) != above {
                    return Ok(false);
                }
            }
            if let Some(b) = below {
                if !self.arrows.contains_key(&(v, b)) {
                    return Ok(false);
                }
            }
            if let Some(a) = above {
                if !self.arrows.contains_key(&(a, v)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The given vertices are ordered by type-writer traversal: ordinals
    /// increase with decreasing level, breaking ties by increasing position.
    pub fn is_typewriter_ordered(&self, ordinals: &[usize]) -> bool {
        let mut sorted = ordinals.to_vec();
        sorted.sort_unstable();
        sorted.windows(2).all(|pair| {
            let (x1, y1) = self.coord(pair[0]);
            let (x2, y2) = self.coord(pair[1]);
            y1 > y2 || (y1 == y2 && x1 < x2)
        })
    }

    /// Graft m vertices from column s (the stock) to column t (the scion):
    /// add an arrow from (s, h_s - m + 1) to (t, h_t), then translate the top
    /// m vertices of column s to the top of column t.  Pure; the input graph
    /// is unchanged.
    pub fn graft(&self, t: usize, s: usize, m: usize) -> Result<GlnGraph> {
        if !self.is_properly_downward() {
            return Err(Error::GraftPrecondition(GraftClause::NotProperlyDownward));
        }
        let mut out = self.clone();
        out.graft_mut(t, s, m)?;
        Ok(out)
    }

    /// In-place graft.  Validates everything except proper downwardness of
    /// the whole graph, which callers hold by induction.
    pub(crate) fn graft_mut(&mut self, t: usize, s: usize, m: usize) -> Result<GraftEffect> {
        let h_t = self
            .height(t)
            .ok_or(Error::GraftPrecondition(GraftClause::ScionNotInDomain(t)))?;
        let h_s = self
            .height(s)
            .ok_or(Error::GraftPrecondition(GraftClause::StockNotInDomain(s)))?;
        if t >= s {
            return Err(Error::GraftPrecondition(GraftClause::ScionNotLeftOfStock {
                t,
                s,
            }));
        }
        if !self.is_downward_path(s)? {
            return Err(Error::GraftPrecondition(GraftClause::StockNotDownwardPath(s)));
        }
        if m == 0 || m > h_s {
            return Err(Error::GraftPrecondition(GraftClause::CountOutOfRange {
                m,
                height: h_s,
            }));
        }

        // Step 1: arrow (s, h_s - m + 1) -> (t, h_t).
        let src = self.ordinal_at(s, h_s - m + 1).expect("stock path is contiguous");
        let tgt = self.ordinal_at(t, h_t).expect("scion top exists");
        let prev = self.arrows.insert((src, tgt), 1);
        debug_assert!(prev.is_none(), "graft arrow already present");

        // Step 2: translate the top m vertices of column s onto column t.
        for i in 1..=m {
            let from_level = h_s - m + i;
            let to_level = h_t + i;
            let ord = {
                let col_s = self.columns.get_mut(&s).unwrap();
                col_s.remove(&from_level).expect("stock path is contiguous")
            };
            self.coords[ord - 1] = (t, to_level);
            let displaced = self.columns.get_mut(&t).unwrap().insert(to_level, ord);
            debug_assert!(displaced.is_none(), "translation target occupied");
        }
        let stock_removed = self.columns.get(&s).is_some_and(|c| c.is_empty());
        if stock_removed {
            self.columns.remove(&s);
        }

        Ok(GraftEffect {
            row: tgt,
            col: src,
            old_scion_height: h_t,
            old_stock_height: h_s,
            stock_removed,
        })
    }

    /// DOT rendering with ordinal labels and pinned figure positions.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph gln {\n");
        for (i, &(x, y)) in self.coords.iter().enumerate() {
            let _ = writeln!(s, "  v{0} [label=\"{0}\", pos=\"{1},{2}!\"];", i + 1, x, y - 1);
        }
        for (&(u, v), _) in &self.arrows {
            let _ = writeln!(s, "  v{u} -> v{v};");
        }
        s.push_str("}\n");
        s
    }

    /// TikZ rendering in the style of the figures: nodes at (x, y-1).
    pub fn to_tikz(&self) -> String {
        let mut s = String::from(
            "\\begin{tikzpicture}[inner sep=0.5mm, place/.style={circle, draw}]\n",
        );
        for (i, &(x, y)) in self.coords.iter().enumerate() {
            let _ = writeln!(
                s,
                "\\node ({0}) at ({1},{2}) [place] {{\\tiny{{{0}}}}};",
                i + 1,
                x,
                y - 1
            );
        }
        for (&(u, v), _) in &self.arrows {
            let _ = writeln!(s, "\\draw [thick,->] ({u}) -- ({v});");
        }
        s.push_str("\\end{tikzpicture}\n");
        s
    }
}

/// The unique properly downward graph of N_r with domain [1, r], every
/// column a downward path, heights floor(n/r) or ceil(n/r) non-decreasing
/// left to right, and the vertex set ordered by type-writer traversal.
pub fn canonical_nr_graph(n: usize, r: usize) -> Result<GlnGraph> {
    if r == 0 || r >= n {
        return Err(Error::InvalidShape { n, r });
    }
    let rp = n % r;
    let lo = n / r;
    let hi = n.div_ceil(r);
    let height = |x: usize| if x <= r - rp { lo } else { hi };

    let mut coords = vec![(0, 0); n];
    let mut ordinal = 0;
    for y in (1..=hi).rev() {
        for x in 1..=r {
            if y <= height(x) {
                ordinal += 1;
                coords[ordinal - 1] = (x, y);
            }
        }
    }
    debug_assert_eq!(ordinal, n);

    let mut g = GlnGraph::new(coords, Vec::new())?;
    for x in 1..=r {
        for y in (2..=height(x)).rev() {
            let u = g.ordinal_at(x, y).unwrap();
            let v = g.ordinal_at(x, y - 1).unwrap();
            g.arrows.insert((u, v), 1);
        }
    }
    debug_assert!(g.to_matrix() == make_nr(n, r).unwrap() || n > 64);
    Ok(g)
}
