//! Italian dominating functions and the Italian domination number.
//!
//! A labeling `f: V -> {0,1,2}` is an IDF when every vertex labeled `0` has
//! in-neighbour label sum at least 2. With labels restricted to `{0,1,2}` this
//! is the same as "two in-neighbours labeled 1, or one labeled 2".
//!
//! [`gamma_italian`] is a depth-first branch and bound; the exhaustive
//! [`brute_force_gamma_italian`] exists to cross-check it.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::digraph::{bit, members, Digraph, VertexSet};
use crate::subsets::Combinations;

/// Order limit of [`brute_force_gamma_italian`] (`3^n` labelings).
pub const BRUTE_FORCE_MAX_ORDER: usize = 12;
/// Order limit of [`enumerate_min_idfs`].
pub const MIN_IDF_MAX_ORDER: usize = 8;
/// Order limit of [`gamma_domination`] (`2^n` subsets).
pub const DOMINATION_MAX_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("order {order} exceeds the limit of {limit} for {what}")]
    OrderTooLarge {
        what: &'static str,
        order: usize,
        limit: usize,
    },
    #[error("labeling has {got} entries but the digraph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("label {0} is not in {{0, 1, 2}}")]
    InvalidLabel(u8),
    #[error("Italian bondage number is undefined: gamma_I = n = {0}")]
    BondageUndefined(usize),
    #[error("{0}")]
    Precondition(String),
}

pub(crate) fn guard(what: &'static str, order: usize, limit: usize) -> Result<(), SolverError> {
    if order > limit {
        Err(SolverError::OrderTooLarge { what, order, limit })
    } else {
        Ok(())
    }
}

/// A labeling `V -> {0,1,2}`. Ordered lexicographically in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Labeling {
    values: Vec<u8>,
}

impl Labeling {
    pub fn new(values: Vec<u8>) -> Result<Self, SolverError> {
        if let Some(&bad) = values.iter().find(|&&l| l > 2) {
            return Err(SolverError::InvalidLabel(bad));
        }
        Ok(Self { values })
    }

    pub fn constant(n: usize, label: u8) -> Self {
        assert!(label <= 2);
        Self {
            values: vec![label; n],
        }
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> u8 {
        self.values[v]
    }

    /// `ω(f)`.
    pub fn weight(&self) -> usize {
        self.values.iter().map(|&l| l as usize).sum()
    }

    /// `V_label` as a bitset.
    pub fn class(&self, label: u8) -> VertexSet {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == label)
            .fold(0, |acc, (v, _)| acc | bit(v))
    }

    /// `f(S)` for a vertex bitset `S`.
    pub fn sum_over(&self, set: VertexSet) -> usize {
        members(set).map(|v| self.values[v] as usize).sum()
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.values {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Labeling {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(d) if d <= 2 => Ok(d as u8),
                Some(d) => Err(SolverError::InvalidLabel(d as u8)),
                None => Err(SolverError::InvalidLabel(u8::MAX)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(values)
    }
}

/// Label sum over the in-neighbours of `v`, read from the `V_1`/`V_2` bitsets.
#[inline]
fn in_weight(d: &Digraph, v1: VertexSet, v2: VertexSet, v: usize) -> u32 {
    let inn = d.in_set(v);
    (inn & v1).count_ones() + 2 * (inn & v2).count_ones()
}

pub fn verify_idf(d: &Digraph, f: &Labeling) -> Result<bool, SolverError> {
    if f.len() != d.order() {
        return Err(SolverError::LengthMismatch {
            expected: d.order(),
            got: f.len(),
        });
    }
    Ok(is_idf(d, f.values()))
}

pub(crate) fn is_idf(d: &Digraph, values: &[u8]) -> bool {
    let (mut v1, mut v2, mut v0) = (0u64, 0u64, 0u64);
    for (v, &l) in values.iter().enumerate() {
        match l {
            0 => v0 |= bit(v),
            1 => v1 |= bit(v),
            _ => v2 |= bit(v),
        }
    }
    members(v0).all(|v| in_weight(d, v1, v2, v) >= 2)
}

/// Outcome of [`gamma_italian`] and [`brute_force_gamma_italian`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaResult {
    pub value: usize,
    pub witness: Labeling,
    pub lower_bound_used: usize,
    pub upper_bound_used: usize,
    pub nodes_explored: u64,
}

/// `⌈2n / (2 + Δ^+)⌉`.
pub fn gamma_lower_bound(d: &Digraph) -> usize {
    let n = d.order();
    let denom = 2 + d.max_out_degree();
    (2 * n).div_ceil(denom)
}

/// `n - Δ^+ + 1` together with the labeling that attains it: `2` on a vertex of
/// maximum out-degree, `0` on its out-neighbours, `1` elsewhere. Without arcs
/// the all-ones labeling (weight `n`) is returned instead.
pub fn max_out_degree_labeling(d: &Digraph) -> Labeling {
    let n = d.order();
    let delta = d.max_out_degree();
    if delta == 0 {
        return Labeling::constant(n, 1);
    }
    let v = (0..n).find(|&v| d.out_degree(v) == delta).unwrap();
    let mut values = vec![1u8; n];
    values[v] = 2;
    for w in d.out_neighbors(v) {
        values[w] = 0;
    }
    Labeling { values }
}

/// Weight-2 IDF when one exists on a digraph of order at least 3: either a
/// vertex dominating all others, or two vertices each dominating everything
/// except each other.
pub fn weight_two_labeling(d: &Digraph) -> Option<Labeling> {
    let n = d.order();
    if n < 3 {
        return None;
    }
    let all = d.vertex_set();
    if let Some(v) = (0..n).find(|&v| d.out_degree(v) == n - 1) {
        let mut values = vec![0u8; n];
        values[v] = 2;
        return Some(Labeling { values });
    }
    for u in 0..n {
        for v in u + 1..n {
            let rest = all & !bit(u) & !bit(v);
            if d.out_set(u) & rest == rest && d.out_set(v) & rest == rest {
                let mut values = vec![0u8; n];
                values[u] = 1;
                values[v] = 1;
                return Some(Labeling { values });
            }
        }
    }
    None
}

const UNSET: u8 = 3;
const INFEASIBLE: u32 = u32::MAX / 4;

/// Depth-first search over labels in a fixed vertex order.
struct Search<'a> {
    d: &'a Digraph,
    order: Vec<usize>,
    labels: Vec<u8>,
    in_weight: Vec<u32>,
    open_in: Vec<u32>,
    unassigned: VertexSet,
    zeros: VertexSet,
    weight: u32,
    /// Only labelings strictly lighter than this are accepted.
    best: u32,
    best_labels: Option<Vec<u8>>,
    /// Stop as soon as `best` reaches this value.
    floor: u32,
    first_only: bool,
    done: bool,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(d: &'a Digraph, best: u32, floor: u32, first_only: bool) -> Self {
        let n = d.order();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(d.underlying_degree(v)));
        Self {
            d,
            order,
            labels: vec![UNSET; n],
            in_weight: vec![0; n],
            open_in: (0..n).map(|v| d.in_degree(v) as u32).collect(),
            unassigned: d.vertex_set(),
            zeros: 0,
            weight: 0,
            best,
            best_labels: None,
            floor,
            first_only,
            done: false,
            nodes: 0,
        }
    }

    fn assign(&mut self, v: usize, l: u8) {
        self.labels[v] = l;
        self.unassigned &= !bit(v);
        if l == 0 {
            self.zeros |= bit(v);
        }
        self.weight += l as u32;
        for w in members(self.d.out_set(v)) {
            self.in_weight[w] += l as u32;
            self.open_in[w] -= 1;
        }
    }

    fn unassign(&mut self, v: usize, l: u8) {
        for w in members(self.d.out_set(v)) {
            self.in_weight[w] -= l as u32;
            self.open_in[w] += 1;
        }
        self.weight -= l as u32;
        self.zeros &= !bit(v);
        self.unassigned |= bit(v);
        self.labels[v] = UNSET;
    }

    #[inline]
    fn can_reach_two(&self, w: usize) -> bool {
        self.in_weight[w] + 2 * self.open_in[w] >= 2
    }

    /// Only `v` and its out-neighbours are affected by labeling `v`.
    fn feasible_after(&self, v: usize) -> bool {
        if self.labels[v] == 0 && !self.can_reach_two(v) {
            return false;
        }
        members(self.d.out_set(v) & self.zeros).all(|w| self.can_reach_two(w))
    }

    /// Least extra weight the unassigned vertices must carry.
    ///
    /// Let `X` be that extra weight. Every unassigned vertex that stays `0`
    /// still needs `c(u) = 2 - min(2, in_weight(u))`, every assigned zero its
    /// remaining deficit, and at least `r - X` of the `r` unassigned vertices
    /// stay `0`. One unit of label on `u` supplies at most one unit to each
    /// needy out-neighbour, so `X * s >= demand` where `s` is the largest such
    /// out-neighbour count.
    fn remaining_lower_bound(&self) -> u32 {
        let open = self.unassigned;
        if open == 0 {
            return 0;
        }
        let mut deficit = 0u32;
        let mut needy = 0u64;
        for w in members(self.zeros) {
            if self.in_weight[w] < 2 {
                deficit += 2 - self.in_weight[w];
                needy |= bit(w);
            }
        }
        let mut cost_count = [0u32; 3];
        for u in members(open) {
            let c = 2 - self.in_weight[u].min(2);
            cost_count[c as usize] += 1;
            if c > 0 {
                needy |= bit(u);
            }
        }
        let supply = members(open)
            .map(|u| (self.d.out_set(u) & needy).count_ones())
            .max()
            .unwrap_or(0);
        let r = open.count_ones();
        // Sum of the k cheapest zero-costs.
        let cheapest = |mut k: u32| -> u32 {
            let mut sum = 0;
            for (c, &cnt) in cost_count.iter().enumerate() {
                let take = k.min(cnt);
                sum += take * c as u32;
                k -= take;
            }
            sum
        };
        (0..=2 * r)
            .find(|&x| x * supply >= deficit + cheapest(r.saturating_sub(x)))
            .unwrap_or(INFEASIBLE)
    }

    fn run(&mut self, depth: usize) {
        self.nodes += 1;
        if depth == self.order.len() {
            self.best = self.weight;
            self.best_labels = Some(self.labels.clone());
            if self.first_only || self.best <= self.floor {
                self.done = true;
            }
            return;
        }
        let v = self.order[depth];
        for l in [0u8, 2, 1] {
            if self.weight + l as u32 >= self.best {
                continue;
            }
            self.assign(v, l);
            if self.feasible_after(v) && self.weight + self.remaining_lower_bound() < self.best {
                self.run(depth + 1);
            }
            self.unassign(v, l);
            if self.done {
                return;
            }
        }
    }
}

/// Exact `γ_I(D)` with a witness.
pub fn gamma_italian(d: &Digraph) -> GammaResult {
    let n = d.order();
    if n <= 2 {
        return GammaResult {
            value: n,
            witness: Labeling::constant(n, 1),
            lower_bound_used: n,
            upper_bound_used: n,
            nodes_explored: 0,
        };
    }
    let lower = gamma_lower_bound(d);
    let incumbent = max_out_degree_labeling(d);
    let upper = incumbent.weight();
    let done = |value: usize, witness: Labeling, nodes: u64| GammaResult {
        value,
        witness,
        lower_bound_used: lower,
        upper_bound_used: upper,
        nodes_explored: nodes,
    };
    if let Some(w) = weight_two_labeling(d) {
        return done(2, w, 0);
    }
    if upper <= lower {
        return done(upper, incumbent, 0);
    }
    let mut search = Search::new(d, upper as u32, lower as u32, false);
    search.run(0);
    match search.best_labels {
        Some(values) => done(search.best as usize, Labeling { values }, search.nodes),
        None => done(upper, incumbent, search.nodes),
    }
}

/// Some IDF of weight at most `budget`, if one exists. Equivalent to
/// `γ_I(D) <= budget` but stops at the first labeling found.
pub fn find_idf_within(d: &Digraph, budget: usize) -> Option<Labeling> {
    let n = d.order();
    if budget >= n {
        return Some(Labeling::constant(n, 1));
    }
    if budget < gamma_lower_bound(d) || (n >= 2 && budget < 2) {
        return None;
    }
    let incumbent = max_out_degree_labeling(d);
    if incumbent.weight() <= budget {
        return Some(incumbent);
    }
    if let Some(w) = weight_two_labeling(d) {
        return Some(w);
    }
    let mut search = Search::new(d, budget as u32 + 1, 0, true);
    search.run(0);
    search.best_labels.map(|values| Labeling { values })
}

/// All `3^n` labelings in lexicographic order.
pub(crate) fn all_labelings(n: usize) -> impl Iterator<Item = Vec<u8>> {
    let mut current: Option<Vec<u8>> = Some(vec![0; n]);
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = n;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < 2 {
                next[i] += 1;
                current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    })
}

/// Reference check that reads arcs one pair at a time.
fn is_idf_naive(d: &Digraph, values: &[u8]) -> bool {
    let n = d.order();
    (0..n).all(|v| {
        values[v] != 0
            || (0..n)
                .filter(|&u| d.has_arc(u, v))
                .map(|u| values[u] as usize)
                .sum::<usize>()
                >= 2
    })
}

/// Exhaustive `γ_I(D)`; the witness is the lexicographically smallest minimum
/// labeling.
pub fn brute_force_gamma_italian(d: &Digraph) -> Result<GammaResult, SolverError> {
    guard("brute-force gamma_I", d.order(), BRUTE_FORCE_MAX_ORDER)?;
    let mut best: Option<(usize, Vec<u8>)> = None;
    let mut nodes = 0u64;
    for values in all_labelings(d.order()) {
        nodes += 1;
        let w: usize = values.iter().map(|&l| l as usize).sum();
        if best.as_ref().is_some_and(|(bw, _)| w >= *bw) {
            continue;
        }
        if is_idf_naive(d, &values) {
            best = Some((w, values));
        }
    }
    let (value, values) = best.expect("the all-ones labeling is always an IDF");
    Ok(GammaResult {
        value,
        witness: Labeling { values },
        lower_bound_used: 0,
        upper_bound_used: d.order(),
        nodes_explored: nodes,
    })
}

/// Every `γ_I(D)`-function, in lexicographic order.
pub fn enumerate_min_idfs(d: &Digraph) -> Result<impl Iterator<Item = Labeling> + '_, SolverError> {
    guard("minimum IDF enumeration", d.order(), MIN_IDF_MAX_ORDER)?;
    let gamma = gamma_italian(d).value;
    Ok(all_labelings(d.order())
        .filter(move |v| v.iter().map(|&l| l as usize).sum::<usize>() == gamma && is_idf(d, v))
        .map(|values| Labeling { values }))
}

/// Classical domination number `γ(D)`: the smallest `S` with `N^+[S] = V`.
/// The witness is the lexicographically first minimum set.
pub fn gamma_domination(d: &Digraph) -> Result<(usize, Vec<usize>), SolverError> {
    let n = d.order();
    guard("domination number", n, DOMINATION_MAX_ORDER)?;
    Ok(dominating_set_within(d, n).expect("V(D) dominates itself"))
}

/// Smallest dominating set of size at most `budget`, if any.
pub(crate) fn dominating_set_within(d: &Digraph, budget: usize) -> Option<(usize, Vec<usize>)> {
    let n = d.order();
    let closed: Vec<VertexSet> = (0..n).map(|v| d.out_set(v) | bit(v)).collect();
    let all = d.vertex_set();
    for k in 1..=budget.min(n) {
        let mut combos = Combinations::new(n, k);
        while let Some(set) = combos.next_combination() {
            if set.iter().fold(0, |acc, &v| acc | closed[v]) == all {
                return Some((k, set.to_vec()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    fn lab(s: &str) -> Labeling {
        s.parse().unwrap()
    }

    #[test]
    fn labeling_basics() {
        let f = lab("2010");
        assert_eq!(f.weight(), 3);
        assert_eq!(f.to_string(), "2010");
        assert_eq!(f.class(0), 0b1010);
        assert_eq!(f.class(2), 0b0001);
        assert!(Labeling::new(vec![0, 3]).is_err());
        assert!("012a".parse::<Labeling>().is_err());
        assert!(lab("01") < lab("10"));
    }

    #[test]
    fn verify_examples() {
        let k3 = complete_digraph(3).unwrap();
        assert!(verify_idf(&k3, &lab("200")).unwrap());
        let p3 = directed_path(3).unwrap();
        assert!(!verify_idf(&p3, &lab("110")).unwrap());
        assert!(verify_idf(&p3, &lab("111")).unwrap());
        assert_eq!(
            verify_idf(&p3, &lab("11")),
            Err(SolverError::LengthMismatch {
                expected: 3,
                got: 2
            })
        );
        // two in-neighbours labeled 1
        let d = Digraph::new(3, [(0, 2), (1, 2)]).unwrap();
        assert!(verify_idf(&d, &lab("110")).unwrap());
        assert!(!verify_idf(&d, &lab("100")).unwrap());
    }

    #[test]
    fn gamma_golden_values() {
        assert_eq!(gamma_italian(&complete_digraph(5).unwrap()).value, 2);
        assert_eq!(gamma_italian(&directed_cycle(6).unwrap()).value, 6);
        assert_eq!(
            gamma_italian(&complete_bipartite_digraph(4, 6).unwrap()).value,
            4
        );
        assert_eq!(
            gamma_italian(&complete_bipartite_digraph(3, 5).unwrap()).value,
            3
        );
        let k1 = gamma_italian(&empty_digraph(1).unwrap());
        assert_eq!((k1.value, k1.witness.to_string()), (1, "1".to_string()));
    }

    #[test]
    fn gamma_random_matches_frozen_oracle() {
        // 3^6 exhaustive search gives 4 for this instance.
        let d = random_digraph(6, 0.3, 7).unwrap();
        assert_eq!(brute_force_gamma_italian(&d).unwrap().value, 4);
        assert_eq!(gamma_italian(&d).value, 4);
    }

    #[test]
    fn result_invariants() {
        for d in enumerate_all(3).unwrap() {
            let r = gamma_italian(&d);
            assert!(verify_idf(&d, &r.witness).unwrap());
            assert_eq!(r.witness.weight(), r.value);
            assert!(r.lower_bound_used <= r.value && r.value <= r.upper_bound_used);
        }
    }

    #[test]
    fn brute_force_examples() {
        let e3 = brute_force_gamma_italian(&empty_digraph(3).unwrap()).unwrap();
        assert_eq!((e3.value, e3.witness.to_string()), (3, "111".to_string()));
        let k2 = brute_force_gamma_italian(&complete_digraph(2).unwrap()).unwrap();
        assert_eq!(k2.value, 2);
        // (0,0,2) is the first weight-2 IDF in lexicographic order
        let k3 = brute_force_gamma_italian(&complete_digraph(3).unwrap()).unwrap();
        assert_eq!(k3.witness.to_string(), "002");
        assert!(brute_force_gamma_italian(&empty_digraph(13).unwrap()).is_err());
    }

    #[test]
    fn brute_force_agrees_on_order_four() {
        for d in enumerate_all(4).unwrap() {
            assert_eq!(
                gamma_italian(&d).value,
                brute_force_gamma_italian(&d).unwrap().value,
                "{d:?}"
            );
        }
    }

    #[test]
    fn min_idfs() {
        let k1 = empty_digraph(1).unwrap();
        assert_eq!(
            enumerate_min_idfs(&k1).unwrap().collect::<Vec<_>>(),
            vec![lab("1")]
        );
        let e2 = empty_digraph(2).unwrap();
        assert_eq!(
            enumerate_min_idfs(&e2).unwrap().collect::<Vec<_>>(),
            vec![lab("11")]
        );
        let c3 = directed_cycle(3).unwrap();
        let all: Vec<Labeling> = enumerate_min_idfs(&c3).unwrap().collect();
        assert!(all.contains(&lab("111")));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(enumerate_min_idfs(&empty_digraph(9).unwrap()).is_err());
    }

    #[test]
    fn find_within_matches_gamma() {
        for d in enumerate_all(4).unwrap() {
            let g = gamma_italian(&d).value;
            let hit = find_idf_within(&d, g).expect("gamma is attainable");
            assert!(hit.weight() <= g && is_idf(&d, hit.values()));
            assert!(find_idf_within(&d, g - 1).is_none());
        }
    }

    #[test]
    fn domination_examples() {
        assert_eq!(
            gamma_domination(&complete_digraph(5).unwrap()).unwrap().0,
            1
        );
        assert_eq!(gamma_domination(&empty_digraph(4).unwrap()).unwrap().0, 4);
        // by exhaustive subset search: {0, 2} is the first dominating pair
        assert_eq!(
            gamma_domination(&directed_cycle(4).unwrap()).unwrap(),
            (2, vec![0, 2])
        );
        assert!(gamma_domination(&empty_digraph(21).unwrap()).is_err());
    }

    #[test]
    fn domination_sandwich_up_to_order_four() {
        for n in 1..=4 {
            for d in enumerate_all(n).unwrap() {
                let (gamma, _) = gamma_domination(&d).unwrap();
                let gi = gamma_italian(&d).value;
                assert!(gamma <= gi && gi <= 2 * gamma, "{d:?}");
            }
        }
    }

    #[test]
    fn labelings_enumerated_in_order() {
        let all: Vec<Vec<u8>> = all_labelings(3).collect();
        assert_eq!(all.len(), 27);
        assert_eq!(all[0], vec![0, 0, 0]);
        assert_eq!(all[1], vec![0, 0, 1]);
        assert_eq!(all[26], vec![2, 2, 2]);
    }
}
