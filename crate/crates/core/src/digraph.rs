//! Simple digraphs stored as mirrored out/in adjacency bitsets.
//!
//! Every vertex owns one `u64` per direction, so the order is capped at
//! [`MAX_ORDER`]. All mutating operations return a new value.

use std::fmt;

use thiserror::Error;

/// Largest order a [`Digraph`] can have (one machine word per adjacency row).
pub const MAX_ORDER: usize = 64;

/// Vertex bitset.
pub type VertexSet = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("a digraph needs at least one vertex")]
    EmptyOrder,
    #[error("order {order} exceeds the supported maximum of {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("arc {arc} has an endpoint outside 0..{order}")]
    VertexOutOfRange { arc: Arc, order: usize },
    #[error("arc {0} is not present")]
    MissingArc(Arc),
    #[error("arc {0} is already present")]
    DuplicateArc(Arc),
}

/// A directed arc `tail -> head`. Ordered lexicographically by `(tail, head)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
}

impl Arc {
    pub const fn new(tail: usize, head: usize) -> Self {
        Self { tail, head }
    }
}

impl From<(usize, usize)> for Arc {
    fn from((tail, head): (usize, usize)) -> Self {
        Self { tail, head }
    }
}

impl serde::Serialize for Arc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

/// Maximum out-degree, maximum in-degree and the per-vertex degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degrees {
    pub max_out: usize,
    pub max_in: usize,
    pub out: Vec<usize>,
    pub inn: Vec<usize>,
}

/// A finite simple digraph on vertices `0..order`.
///
/// Invariants: no self-loops, and `u ∈ out(v) ⇔ v ∈ in(u)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    order: usize,
    out_adj: Vec<VertexSet>,
    in_adj: Vec<VertexSet>,
}

#[inline]
pub(crate) const fn bit(v: usize) -> VertexSet {
    1u64 << v
}

/// Bitset with the lowest `n` bits set.
#[inline]
pub(crate) const fn full_set(n: usize) -> VertexSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the members of a vertex bitset in ascending order.
pub fn members(mut set: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

impl Digraph {
    /// Digraph on `order` vertices with no arcs.
    pub fn empty(order: usize) -> Result<Self, DigraphError> {
        check_order(order)?;
        Ok(Self {
            order,
            out_adj: vec![0; order],
            in_adj: vec![0; order],
        })
    }

    /// Builds a digraph from an arc list. Duplicate arcs are collapsed.
    pub fn new<I, A>(order: usize, arcs: I) -> Result<Self, DigraphError>
    where
        I: IntoIterator<Item = A>,
        A: Into<Arc>,
    {
        let mut d = Self::empty(order)?;
        for arc in arcs {
            let arc = arc.into();
            d.check_arc(arc)?;
            d.insert(arc);
        }
        Ok(d)
    }

    /// Builds a digraph from out-neighbourhood bitsets.
    pub fn from_out_sets(out_adj: Vec<VertexSet>) -> Result<Self, DigraphError> {
        let order = out_adj.len();
        let mut d = Self::empty(order)?;
        for (tail, &row) in out_adj.iter().enumerate() {
            if row & !full_set(order) != 0 {
                let head = (row & !full_set(order)).trailing_zeros() as usize;
                return Err(DigraphError::VertexOutOfRange {
                    arc: Arc::new(tail, head),
                    order,
                });
            }
            if row & bit(tail) != 0 {
                return Err(DigraphError::SelfLoop(tail));
            }
            for head in members(row) {
                d.insert(Arc::new(tail, head));
            }
        }
        Ok(d)
    }

    fn check_arc(&self, arc: Arc) -> Result<(), DigraphError> {
        if arc.tail >= self.order || arc.head >= self.order {
            return Err(DigraphError::VertexOutOfRange {
                arc,
                order: self.order,
            });
        }
        if arc.tail == arc.head {
            return Err(DigraphError::SelfLoop(arc.tail));
        }
        Ok(())
    }

    fn insert(&mut self, arc: Arc) {
        self.out_adj[arc.tail] |= bit(arc.head);
        self.in_adj[arc.head] |= bit(arc.tail);
    }

    fn erase(&mut self, arc: Arc) {
        self.out_adj[arc.tail] &= !bit(arc.head);
        self.in_adj[arc.head] &= !bit(arc.tail);
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(|s| s.count_ones() as usize).sum()
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        tail < self.order && head < self.order && self.out_adj[tail] & bit(head) != 0
    }

    /// Out-neighbourhood `N^+(v)` as a bitset.
    #[inline]
    pub fn out_set(&self, v: usize) -> VertexSet {
        self.out_adj[v]
    }

    /// In-neighbourhood `N^-(v)` as a bitset.
    #[inline]
    pub fn in_set(&self, v: usize) -> VertexSet {
        self.in_adj[v]
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        members(self.out_adj[v])
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        members(self.in_adj[v])
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].count_ones() as usize
    }

    /// All vertices as a bitset.
    pub fn vertex_set(&self) -> VertexSet {
        full_set(self.order)
    }

    /// Arcs in ascending `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.order).flat_map(move |t| members(self.out_adj[t]).map(move |h| Arc::new(t, h)))
    }

    /// Ordered pairs `(u, v)`, `u != v`, that are not arcs, in ascending order.
    pub fn complement_arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.order).flat_map(move |t| {
            let missing = self.vertex_set() & !self.out_adj[t] & !bit(t);
            members(missing).map(move |h| Arc::new(t, h))
        })
    }

    /// `D - B`. Every arc of `B` must be present.
    pub fn remove_arcs<'a, I>(&self, arcs: I) -> Result<Self, DigraphError>
    where
        I: IntoIterator<Item = &'a Arc>,
    {
        let mut d = self.clone();
        for &arc in arcs {
            if !d.has_arc(arc.tail, arc.head) {
                return Err(DigraphError::MissingArc(arc));
            }
            d.erase(arc);
        }
        Ok(d)
    }

    /// `D + R`. No arc of `R` may be present already (this includes repeats within `R`).
    pub fn add_arcs<'a, I>(&self, arcs: I) -> Result<Self, DigraphError>
    where
        I: IntoIterator<Item = &'a Arc>,
    {
        let mut d = self.clone();
        for &arc in arcs {
            d.check_arc(arc)?;
            if d.has_arc(arc.tail, arc.head) {
                return Err(DigraphError::DuplicateArc(arc));
            }
            d.insert(arc);
        }
        Ok(d)
    }

    pub fn degrees(&self) -> Degrees {
        let out: Vec<usize> = (0..self.order).map(|v| self.out_degree(v)).collect();
        let inn: Vec<usize> = (0..self.order).map(|v| self.in_degree(v)).collect();
        Degrees {
            max_out: out.iter().copied().max().unwrap_or(0),
            max_in: inn.iter().copied().max().unwrap_or(0),
            out,
            inn,
        }
    }

    /// `Δ^+(D)`.
    pub fn max_out_degree(&self) -> usize {
        (0..self.order)
            .map(|v| self.out_degree(v))
            .max()
            .unwrap_or(0)
    }

    /// `Δ^-(D)`.
    pub fn max_in_degree(&self) -> usize {
        (0..self.order)
            .map(|v| self.in_degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Degree of `v` in the underlying multigraph: a 2-cycle contributes two
    /// parallel edges.
    pub fn underlying_degree(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    /// `Δ(G[D])`.
    pub fn max_underlying_degree(&self) -> usize {
        (0..self.order)
            .map(|v| self.underlying_degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Undirected neighbourhood of `v` (parallel edges collapsed).
    pub fn underlying_neighbors(&self, v: usize) -> VertexSet {
        self.out_adj[v] | self.in_adj[v]
    }

    pub fn underlying_connected(&self) -> bool {
        let mut seen = bit(0);
        let mut frontier = bit(0);
        while frontier != 0 {
            let mut next = 0;
            for v in members(frontier) {
                next |= self.underlying_neighbors(v);
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.vertex_set()
    }

    /// True when every arc has its reverse, i.e. `D` is an associated digraph.
    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|v| self.out_adj[v] == self.in_adj[v])
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Digraph) -> Result<Self, DigraphError> {
        let shift = self.order;
        let mut d = Self::empty(self.order + other.order)?;
        for arc in self.arcs() {
            d.insert(arc);
        }
        for arc in other.arcs() {
            d.insert(Arc::new(arc.tail + shift, arc.head + shift));
        }
        Ok(d)
    }

    /// Mutable insertion used by generators that have already validated indices.
    pub(crate) fn insert_unchecked(&mut self, arc: Arc) {
        debug_assert!(arc.tail != arc.head && arc.tail < self.order && arc.head < self.order);
        self.insert(arc);
    }
}

fn check_order(order: usize) -> Result<(), DigraphError> {
    if order == 0 {
        return Err(DigraphError::EmptyOrder);
    }
    if order > MAX_ORDER {
        return Err(DigraphError::OrderTooLarge {
            order,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("order", &self.order)
            .field(
                "arcs",
                &self.arcs().map(|a| (a.tail, a.head)).collect::<Vec<_>>(),
            )
            .finish()
    }
}
