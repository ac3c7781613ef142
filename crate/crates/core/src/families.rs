//! Digraph families, compositions and small-digraph corpora.
//!
//! Every generator numbers vertices deterministically so that witnesses
//! found on generated digraphs are reproducible.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::digraph::{bit, members, Arc, Digraph, DigraphError};

/// Largest order accepted by [`enumerate_all`].
pub const MAX_ENUMERATION_ORDER: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters for {kind}: {msg}")]
    InvalidParameters { kind: &'static str, msg: String },
    #[error("cannot parse family `{text}`: {msg}")]
    Parse { text: String, msg: String },
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

fn invalid(kind: &'static str, msg: impl Into<String>) -> FamilyError {
    FamilyError::InvalidParameters {
        kind,
        msg: msg.into(),
    }
}

/// Directed path `0 -> 1 -> ... -> n-1`.
pub fn directed_path(n: usize) -> Result<Digraph, FamilyError> {
    if n < 1 {
        return Err(invalid("path", "order must be at least 1"));
    }
    Ok(Digraph::new(n, (1..n).map(|i| (i - 1, i)))?)
}

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn directed_cycle(n: usize) -> Result<Digraph, FamilyError> {
    if n < 2 {
        return Err(invalid("cycle", "order must be at least 2"));
    }
    Ok(Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?)
}

/// `K_n^*`, all `n(n-1)` arcs.
pub fn complete_digraph(n: usize) -> Result<Digraph, FamilyError> {
    if n < 1 {
        return Err(invalid("complete", "order must be at least 1"));
    }
    let mut d = Digraph::empty(n)?;
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u) {
            d.insert_unchecked(Arc::new(u, v));
        }
    }
    Ok(d)
}

/// `K_{m,n}^*` with parts `0..m` and `m..m+n`, arcs in both directions.
pub fn complete_bipartite_digraph(m: usize, n: usize) -> Result<Digraph, FamilyError> {
    if m < 1 || n < 1 {
        return Err(invalid("kbip", "both parts need at least one vertex"));
    }
    let mut d = Digraph::empty(m + n)?;
    for x in 0..m {
        for y in m..m + n {
            d.insert_unchecked(Arc::new(x, y));
            d.insert_unchecked(Arc::new(y, x));
        }
    }
    Ok(d)
}

pub fn empty_digraph(n: usize) -> Result<Digraph, FamilyError> {
    if n < 1 {
        return Err(invalid("empty", "order must be at least 1"));
    }
    Ok(Digraph::empty(n)?)
}

/// Associated digraph `G^*` of an undirected graph: each edge becomes two
/// opposite arcs.
pub fn associated_digraph(n: usize, edges: &[(usize, usize)]) -> Result<Digraph, FamilyError> {
    if let Some(&(u, _)) = edges.iter().find(|(u, v)| u == v) {
        return Err(invalid("assoc", format!("loop at vertex {u}")));
    }
    Ok(Digraph::new(
        n,
        edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]),
    )?)
}

/// `G -> H`: disjoint union plus every arc from a `G`-vertex to an `H`-vertex.
pub fn join_oneway(g: &Digraph, h: &Digraph) -> Result<Digraph, FamilyError> {
    join(g, h, false)
}

/// `G <-> H`: the one-way join plus every arc from `H` back to `G`.
pub fn join_twoway(g: &Digraph, h: &Digraph) -> Result<Digraph, FamilyError> {
    join(g, h, true)
}

fn join(g: &Digraph, h: &Digraph, both: bool) -> Result<Digraph, FamilyError> {
    let mut d = g.disjoint_union(h)?;
    let shift = g.order();
    for u in 0..g.order() {
        for v in 0..h.order() {
            d.insert_unchecked(Arc::new(u, v + shift));
            if both {
                d.insert_unchecked(Arc::new(v + shift, u));
            }
        }
    }
    Ok(d)
}

/// Corona `G ∘ H`: vertex `i` of `G` gets a private copy of `H` occupying
/// `n(G) + i*n(H) .. n(G) + (i+1)*n(H)`, and an arc to each vertex of it.
/// Arcs of `G` and of every copy of `H` are kept.
pub fn corona(g: &Digraph, h: &Digraph) -> Result<Digraph, FamilyError> {
    let (gn, hn) = (g.order(), h.order());
    let mut d = Digraph::empty(gn * (1 + hn))?;
    for a in g.arcs() {
        d.insert_unchecked(a);
    }
    for i in 0..gn {
        let base = gn + i * hn;
        for a in h.arcs() {
            d.insert_unchecked(Arc::new(base + a.tail, base + a.head));
        }
        for w in 0..hn {
            d.insert_unchecked(Arc::new(i, base + w));
        }
    }
    Ok(d)
}

/// Random digraph: each ordered pair `(u, v)`, taken in ascending order, is an
/// arc iff the next `f64` drawn from a ChaCha8 stream seeded with `seed`
/// (`seed_from_u64`) is below `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph, FamilyError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid("random", format!("probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = empty_digraph(n)?;
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u) {
            if rng.gen::<f64>() < p {
                d.insert_unchecked(Arc::new(u, v));
            }
        }
    }
    Ok(d)
}

/// Ordered pairs on `n` vertices in lexicographic order; bit `i` of an
/// enumeration mask selects `pairs[i]`.
pub fn ordered_pairs(n: usize) -> Vec<Arc> {
    (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| Arc::new(u, v)))
        .collect()
}

fn check_enumeration_order(n: usize) -> Result<(), FamilyError> {
    if !(1..=MAX_ENUMERATION_ORDER).contains(&n) {
        return Err(invalid(
            "enum",
            format!("order {n} outside 1..={MAX_ENUMERATION_ORDER}"),
        ));
    }
    Ok(())
}

/// Number of labeled simple digraphs on `n` vertices, `2^{n(n-1)}`.
pub fn enumeration_size(n: usize) -> u64 {
    1u64 << (n * (n - 1))
}

/// The digraph whose arcs are the pairs selected by `mask`.
pub fn digraph_from_mask(n: usize, mask: u64) -> Result<Digraph, FamilyError> {
    check_enumeration_order(n)?;
    if mask >= enumeration_size(n) {
        return Err(invalid(
            "enum",
            format!("mask {mask} out of range for order {n}"),
        ));
    }
    let pairs = ordered_pairs(n);
    let mut d = Digraph::empty(n)?;
    for i in members(mask) {
        d.insert_unchecked(pairs[i]);
    }
    Ok(d)
}

/// Iterator over all labeled simple digraphs of a fixed order, by ascending mask.
#[derive(Debug, Clone)]
pub struct AllDigraphs {
    n: usize,
    pairs: Vec<Arc>,
    next: u64,
    end: u64,
}

impl Iterator for AllDigraphs {
    type Item = Digraph;

    fn next(&mut self) -> Option<Digraph> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let mut out = vec![0u64; self.n];
        for i in members(mask) {
            out[self.pairs[i].tail] |= bit(self.pairs[i].head);
        }
        Some(Digraph::from_out_sets(out).expect("pairs are valid arcs"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for AllDigraphs {}

pub fn enumerate_all(n: usize) -> Result<AllDigraphs, FamilyError> {
    check_enumeration_order(n)?;
    Ok(AllDigraphs {
        n,
        pairs: ordered_pairs(n),
        next: 0,
        end: enumeration_size(n),
    })
}

/// Parts `(m, n)` with `m <= n` if `d` is exactly `K_{m,n}^*` under some
/// labeling of its vertices.
pub fn complete_bipartite_parts(d: &Digraph) -> Option<(usize, usize)> {
    let n = d.order();
    if n < 2 || !d.is_symmetric() || !d.underlying_connected() {
        return None;
    }
    // The side of vertex 0 is the set of vertices at even distance.
    let side = d.vertex_set() & !d.out_set(0);
    let other = d.out_set(0);
    for v in 0..n {
        let expected = if side & bit(v) != 0 { other } else { side };
        if d.out_set(v) != expected {
            return None;
        }
    }
    let a = side.count_ones() as usize;
    let b = other.count_ones() as usize;
    Some((a.min(b), a.max(b)))
}

/// True if `d` is `K_n^*`.
pub fn is_complete(d: &Digraph) -> bool {
    d.arc_count() == d.order() * (d.order() - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathOrCycle {
    Path,
    Cycle,
}

/// Recognises a directed path or directed cycle up to relabeling.
pub fn path_or_cycle(d: &Digraph) -> Option<PathOrCycle> {
    let n = d.order();
    let deg = d.degrees();
    if deg.max_out > 1 || deg.max_in > 1 || !d.underlying_connected() {
        return None;
    }
    // A 2-cycle is the only cycle whose underlying graph has parallel edges.
    match d.arc_count() {
        m if m + 1 == n => Some(PathOrCycle::Path),
        m if m == n && n >= 2 => Some(PathOrCycle::Cycle),
        _ => None,
    }
}

/// Textual, parseable description of a digraph.
///
/// Grammar: `path:N`, `cycle:N`, `complete:N`, `empty:N`, `kbip:M,N`,
/// `assoc:N:U-V,U-V,...`, `join1:(G),(H)`, `join2:(G),(H)`,
/// `corona:(G),(H)`, `random:N,P,SEED`, `enum:N,MASK`.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Empty(usize),
    Associated {
        order: usize,
        edges: Vec<(usize, usize)>,
    },
    JoinOneWay(Box<FamilySpec>, Box<FamilySpec>),
    JoinTwoWay(Box<FamilySpec>, Box<FamilySpec>),
    Corona(Box<FamilySpec>, Box<FamilySpec>),
    Random {
        n: usize,
        p: f64,
        seed: u64,
    },
    Enumerated {
        n: usize,
        mask: u64,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Digraph, FamilyError> {
        match self {
            Self::Path(n) => directed_path(*n),
            Self::Cycle(n) => directed_cycle(*n),
            Self::Complete(n) => complete_digraph(*n),
            Self::CompleteBipartite(m, n) => complete_bipartite_digraph(*m, *n),
            Self::Empty(n) => empty_digraph(*n),
            Self::Associated { order, edges } => associated_digraph(*order, edges),
            Self::JoinOneWay(g, h) => join_oneway(&g.build()?, &h.build()?),
            Self::JoinTwoWay(g, h) => join_twoway(&g.build()?, &h.build()?),
            Self::Corona(g, h) => corona(&g.build()?, &h.build()?),
            Self::Random { n, p, seed } => random_digraph(*n, *p, *seed),
            Self::Enumerated { n, mask } => digraph_from_mask(*n, *mask),
        }
    }

    /// Operands of a join or corona.
    pub fn operands(&self) -> Option<(&FamilySpec, &FamilySpec)> {
        match self {
            Self::JoinOneWay(g, h) | Self::JoinTwoWay(g, h) | Self::Corona(g, h) => Some((g, h)),
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Path(n) => write!(f, "path:{n}"),
            Self::Cycle(n) => write!(f, "cycle:{n}"),
            Self::Complete(n) => write!(f, "complete:{n}"),
            Self::CompleteBipartite(m, n) => write!(f, "kbip:{m},{n}"),
            Self::Empty(n) => write!(f, "empty:{n}"),
            Self::Associated { order, edges } => {
                let list: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                write!(f, "assoc:{order}:{}", list.join(","))
            }
            Self::JoinOneWay(g, h) => write!(f, "join1:({g}),({h})"),
            Self::JoinTwoWay(g, h) => write!(f, "join2:({g}),({h})"),
            Self::Corona(g, h) => write!(f, "corona:({g}),({h})"),
            Self::Random { n, p, seed } => write!(f, "random:{n},{p},{seed}"),
            Self::Enumerated { n, mask } => write!(f, "enum:{n},{mask}"),
        }
    }
}

struct SpecParser<'a> {
    text: &'a str,
}

impl SpecParser<'_> {
    fn err(&self, msg: impl Into<String>) -> FamilyError {
        FamilyError::Parse {
            text: self.text.to_string(),
            msg: msg.into(),
        }
    }

    fn ints<T: FromStr>(&self, args: &str, count: usize) -> Result<Vec<T>, FamilyError> {
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        if parts.len() != count {
            return Err(self.err(format!("expected {count} comma-separated values")));
        }
        parts
            .iter()
            .map(|p| {
                p.parse::<T>()
                    .map_err(|_| self.err(format!("bad number `{p}`")))
            })
            .collect()
    }

    /// Splits `(A),(B)` into `A` and `B`, respecting nested parentheses.
    fn operands<'s>(&self, args: &'s str) -> Result<(&'s str, &'s str), FamilyError> {
        let args = args.trim();
        let first = self.group(args)?;
        let rest = args[first.len() + 2..].trim_start();
        let rest = rest
            .strip_prefix(',')
            .ok_or_else(|| self.err("expected `,` between operands"))?
            .trim_start();
        let second = self.group(rest)?;
        if !rest[second.len() + 2..].trim().is_empty() {
            return Err(self.err("trailing input after second operand"));
        }
        Ok((first, second))
    }

    fn group<'s>(&self, s: &'s str) -> Result<&'s str, FamilyError> {
        if !s.starts_with('(') {
            return Err(self.err("operand must be parenthesised"));
        }
        let mut depth = 0usize;
        for (i, c) in s.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(&s[1..i]);
                    }
                }
                _ => {}
            }
        }
        Err(self.err("unbalanced parentheses"))
    }

    fn parse(&self, s: &str) -> Result<FamilySpec, FamilyError> {
        let s = s.trim();
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| self.err("expected `kind:args`"))?;
        let one = |args: &str| -> Result<usize, FamilyError> { Ok(self.ints(args, 1)?[0]) };
        let pair = |args: &str| -> Result<(Box<FamilySpec>, Box<FamilySpec>), FamilyError> {
            let (g, h) = self.operands(args)?;
            Ok((Box::new(self.parse(g)?), Box::new(self.parse(h)?)))
        };
        Ok(match kind.trim() {
            "path" => FamilySpec::Path(one(args)?),
            "cycle" => FamilySpec::Cycle(one(args)?),
            "complete" => FamilySpec::Complete(one(args)?),
            "empty" => FamilySpec::Empty(one(args)?),
            "kbip" => {
                let v = self.ints::<usize>(args, 2)?;
                FamilySpec::CompleteBipartite(v[0], v[1])
            }
            "assoc" => {
                let (order, list) = args.split_once(':').unwrap_or((args, ""));
                let order = one(order)?;
                let mut edges = Vec::new();
                for e in list.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                    let (u, v) = e
                        .split_once('-')
                        .ok_or_else(|| self.err(format!("edge `{e}` must be `u-v`")))?;
                    edges.push((one(u)?, one(v)?));
                }
                FamilySpec::Associated { order, edges }
            }
            "join1" => {
                let (g, h) = pair(args)?;
                FamilySpec::JoinOneWay(g, h)
            }
            "join2" => {
                let (g, h) = pair(args)?;
                FamilySpec::JoinTwoWay(g, h)
            }
            "corona" => {
                let (g, h) = pair(args)?;
                FamilySpec::Corona(g, h)
            }
            "random" => {
                let parts: Vec<&str> = args.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(self.err("random needs `n,p,seed`"));
                }
                FamilySpec::Random {
                    n: one(parts[0])?,
                    p: parts[1]
                        .parse()
                        .map_err(|_| self.err(format!("bad probability `{}`", parts[1])))?,
                    seed: self.ints::<u64>(parts[2], 1)?[0],
                }
            }
            "enum" => {
                let v = self.ints::<u64>(args, 2)?;
                FamilySpec::Enumerated {
                    n: v[0] as usize,
                    mask: v[1],
                }
            }
            other => return Err(self.err(format!("unknown family kind `{other}`"))),
        })
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SpecParser { text: s }.parse(s)
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilySpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
