//! Italian bondage and reinforcement numbers, the classical reinforcement
//! number, and the upper bounds used to cross-check them.
//!
//! Searches walk arc subsets by increasing size and, within a size, in
//! lexicographic order of the sorted arc list, so the reported witness is the
//! first qualifying subset in that order.

use serde::Serialize;

use crate::digraph::{bit, members, Arc, Digraph};
use crate::idf::{
    dominating_set_within, enumerate_min_idfs, find_idf_within, gamma_domination, gamma_italian,
    guard, Labeling, SolverError, DOMINATION_MAX_ORDER, MIN_IDF_MAX_ORDER,
};
use crate::subsets::Combinations;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PerturbationKind {
    Bondage,
    Reinforcement,
    ClassicalReinforcement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// Arcs around a path `x y z` of the underlying graph with `y -> x`, `y -> z`.
    Path2Bound,
    /// `(γ_I - 1) Δ(G[D])` for connected digraphs of order at least 3.
    GammaDeltaBound,
    /// `n - Δ^+ - γ_I + 2` for `γ_I >= 3`.
    ReinforcementDegreeBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub source: BoundSource,
    pub value: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_vertices: Option<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerturbationResult {
    pub kind: PerturbationKind,
    pub value: usize,
    /// Removed (bondage) or added (reinforcement) arcs, sorted.
    pub witness: Vec<Arc>,
    pub base_gamma: usize,
    pub perturbed_gamma: usize,
    pub certificates: Vec<BoundCertificate>,
    pub candidates_checked: u64,
}

/// Smallest value of
/// `deg_G(x) + deg^-(y) + deg_G(z) - |N^-(x) ∩ N^-(y) ∩ N^-(z)|`
/// (minus one more when `x` and `z` are adjacent) over all `y` with two
/// distinct out-neighbours `x < z`. `None` when no vertex has out-degree 2.
pub fn bondage_upper_bound_path2(d: &Digraph) -> Option<BoundCertificate> {
    let n = d.order();
    let mut best: Option<BoundCertificate> = None;
    for x in 0..n {
        for y in 0..n {
            if !d.has_arc(y, x) {
                continue;
            }
            for z in x + 1..n {
                if !d.has_arc(y, z) {
                    continue;
                }
                let common = (d.in_set(x) & d.in_set(y) & d.in_set(z)).count_ones() as usize;
                let adjacent = d.underlying_neighbors(x) & bit(z) != 0;
                let value = d.underlying_degree(x) + d.in_degree(y) + d.underlying_degree(z)
                    - common
                    - usize::from(adjacent);
                if best.as_ref().is_none_or(|b| value < b.value) {
                    best = Some(BoundCertificate {
                        source: BoundSource::Path2Bound,
                        value,
                        witness_vertices: Some([x, y, z]),
                    });
                }
            }
        }
    }
    best
}

/// `(γ_I(D) - 1) Δ(G[D])`, only for connected digraphs of order at least 3.
pub fn bondage_upper_bound_gamma_delta(d: &Digraph) -> Option<BoundCertificate> {
    if d.order() < 3 || !d.underlying_connected() {
        return None;
    }
    let gamma = gamma_italian(d).value;
    Some(BoundCertificate {
        source: BoundSource::GammaDeltaBound,
        value: (gamma - 1) * d.max_underlying_degree(),
        witness_vertices: None,
    })
}

/// `n - Δ^+ - γ_I + 2`, only when `γ_I >= 3`.
pub fn reinforcement_upper_bound(d: &Digraph) -> Option<BoundCertificate> {
    let gamma = gamma_italian(d).value;
    if gamma < 3 {
        return None;
    }
    Some(BoundCertificate {
        source: BoundSource::ReinforcementDegreeBound,
        value: (d.order() + 2).saturating_sub(d.max_out_degree() + gamma),
        witness_vertices: None,
    })
}

/// First subset (by size, then lexicographically) of `pool` accepted by `hit`.
fn first_subset<F>(pool: &[Arc], mut hit: F) -> Option<(Vec<Arc>, u64)>
where
    F: FnMut(&[Arc]) -> bool,
{
    let mut checked = 0u64;
    let mut chosen = Vec::with_capacity(pool.len());
    for k in 1..=pool.len() {
        let mut combos = Combinations::new(pool.len(), k);
        while let Some(idx) = combos.next_combination() {
            checked += 1;
            chosen.clear();
            chosen.extend(idx.iter().map(|&i| pool[i]));
            if hit(&chosen) {
                return Some((chosen, checked));
            }
        }
    }
    None
}

/// `b_I(D)`: fewest arcs whose removal raises `γ_I`.
///
/// Fails with [`SolverError::BondageUndefined`] when `γ_I(D) = n`, since
/// removing arcs never pushes `γ_I` above `n`.
pub fn italian_bondage(d: &Digraph) -> Result<PerturbationResult, SolverError> {
    let n = d.order();
    let base = gamma_italian(d).value;
    if base == n {
        return Err(SolverError::BondageUndefined(n));
    }
    let certificates: Vec<BoundCertificate> = [
        bondage_upper_bound_path2(d),
        bondage_upper_bound_gamma_delta(d),
    ]
    .into_iter()
    .flatten()
    .collect();

    let pool: Vec<Arc> = d.arcs().collect();
    let (witness, checked) = first_subset(&pool, |b| {
        let reduced = d.remove_arcs(b).expect("subset of A(D)");
        find_idf_within(&reduced, base).is_none()
    })
    .expect("removing every arc yields gamma_I = n");
    let perturbed = gamma_italian(&d.remove_arcs(&witness).unwrap()).value;
    Ok(PerturbationResult {
        kind: PerturbationKind::Bondage,
        value: witness.len(),
        witness,
        base_gamma: base,
        perturbed_gamma: perturbed,
        certificates,
        candidates_checked: checked,
    })
}

/// `r_I(D)`: fewest complement arcs whose addition lowers `γ_I`; `0` when
/// `γ_I(D) <= 2`.
pub fn italian_reinforcement(d: &Digraph) -> PerturbationResult {
    let base = gamma_italian(d).value;
    let mut result = PerturbationResult {
        kind: PerturbationKind::Reinforcement,
        value: 0,
        witness: Vec::new(),
        base_gamma: base,
        perturbed_gamma: base,
        certificates: reinforcement_upper_bound(d).into_iter().collect(),
        candidates_checked: 0,
    };
    if base <= 2 {
        return result;
    }
    // Single arcs are tried first; they settle every digraph with r_I = 1.
    let pool: Vec<Arc> = d.complement_arcs().collect();
    let (witness, checked) = first_subset(&pool, |r| {
        let grown = d.add_arcs(r).expect("complement arcs");
        find_idf_within(&grown, base - 1).is_some()
    })
    .expect("adding every complement arc yields gamma_I = 2");
    result.perturbed_gamma = gamma_italian(&d.add_arcs(&witness).unwrap()).value;
    result.value = witness.len();
    result.witness = witness;
    result.candidates_checked = checked;
    result
}

/// `r(D)`: fewest complement arcs whose addition lowers the domination
/// number; `0` when `γ(D) = 1`.
pub fn classical_reinforcement(d: &Digraph) -> Result<PerturbationResult, SolverError> {
    guard("classical reinforcement", d.order(), DOMINATION_MAX_ORDER)?;
    let (base, _) = gamma_domination(d)?;
    let mut result = PerturbationResult {
        kind: PerturbationKind::ClassicalReinforcement,
        value: 0,
        witness: Vec::new(),
        base_gamma: base,
        perturbed_gamma: base,
        certificates: Vec::new(),
        candidates_checked: 0,
    };
    if base == 1 {
        return Ok(result);
    }
    let pool: Vec<Arc> = d.complement_arcs().collect();
    let (witness, checked) = first_subset(&pool, |r| {
        let grown = d.add_arcs(r).expect("complement arcs");
        dominating_set_within(&grown, base - 1).is_some()
    })
    .expect("adding every complement arc yields gamma = 1");
    result.perturbed_gamma = gamma_domination(&d.add_arcs(&witness).unwrap())?.0;
    result.value = witness.len();
    result.witness = witness;
    result.candidates_checked = checked;
    Ok(result)
}

/// Which of the two single-arc conditions a `(f, v)` pair satisfies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RiOneWitness {
    pub labeling: String,
    pub vertex: usize,
    pub condition: u8,
}

fn others_weight(f: &Labeling, d: &Digraph, x: usize, v: usize) -> usize {
    f.sum_over(d.in_set(x) & !bit(v))
}

/// Which out-neighbours of `v` condition (ii) constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SecondConditionScope {
    /// Every `x ∈ N^+(v)`, the characterization as stated.
    AllOutNeighbors,
    /// Only `x ∈ N^+(v) ∩ V_0`, which is what the converse direction yields.
    ZeroOutNeighbors,
}

/// Searches the `γ_I`-functions `f` and vertices `v ∈ V_1` for one with
///
/// 1. `f(N^-(v)) = 1` and `f(N^-(x) \ {v}) >= 2` for all `x ∈ N^+(v) ∩ V_0`, or
/// 2. `f(N^-(v)) = 0`, `f(N^-(x) \ {v}) >= 2` for all `x ∈ N^+(v)`, and `V_2 ≠ ∅`.
///
/// Claimed: for `γ_I(D) >= 3` such a pair exists exactly when `r_I(D) = 1`.
/// See [`find_ri_one_witness_scoped`] for the variant that only constrains
/// zero-labelled out-neighbours in (2).
pub fn find_ri_one_witness(d: &Digraph) -> Result<Option<RiOneWitness>, SolverError> {
    find_ri_one_witness_scoped(d, SecondConditionScope::AllOutNeighbors)
}

pub fn find_ri_one_witness_scoped(
    d: &Digraph,
    scope: SecondConditionScope,
) -> Result<Option<RiOneWitness>, SolverError> {
    guard("r_I = 1 characterization", d.order(), MIN_IDF_MAX_ORDER)?;
    let gamma = gamma_italian(d).value;
    if gamma < 3 {
        return Err(SolverError::Precondition(format!(
            "characterization needs gamma_I >= 3, got {gamma}"
        )));
    }
    for f in enumerate_min_idfs(d)? {
        let v0 = f.class(0);
        let has_two = f.class(2) != 0;
        for v in members(f.class(1)) {
            let incoming = f.sum_over(d.in_set(v));
            let second_scope = match scope {
                SecondConditionScope::AllOutNeighbors => d.out_set(v),
                SecondConditionScope::ZeroOutNeighbors => d.out_set(v) & v0,
            };
            let cond1 = incoming == 1
                && members(d.out_set(v) & v0).all(|x| others_weight(&f, d, x, v) >= 2);
            let cond2 = incoming == 0
                && has_two
                && members(second_scope).all(|x| others_weight(&f, d, x, v) >= 2);
            if cond1 || cond2 {
                return Ok(Some(RiOneWitness {
                    labeling: f.to_string(),
                    vertex: v,
                    condition: if cond1 { 1 } else { 2 },
                }));
            }
        }
    }
    Ok(None)
}

pub fn check_ri_one_characterization(d: &Digraph) -> Result<bool, SolverError> {
    Ok(find_ri_one_witness(d)?.is_some())
}

/// Result of checking a minimum reinforcement set against its structure:
/// adding it lowers `γ_I` by exactly one, and every `γ_I`-function of
/// `D + F` labels each added arc's tail nonzero and its head zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrsVerdict {
    pub gamma_before: usize,
    pub gamma_after: usize,
    pub drops_by_one: bool,
    pub endpoints_ok: bool,
    pub functions_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offending: Option<(String, Arc)>,
}

impl IrsVerdict {
    pub fn holds(&self) -> bool {
        self.drops_by_one && self.endpoints_ok
    }
}

pub fn validate_irs_witness(d: &Digraph, set: &[Arc]) -> Result<IrsVerdict, SolverError> {
    guard("IRS validation", d.order(), MIN_IDF_MAX_ORDER)?;
    let before = gamma_italian(d).value;
    if before < 3 {
        return Err(SolverError::Precondition(format!(
            "IRS validation needs gamma_I >= 3, got {before}"
        )));
    }
    let grown = d
        .add_arcs(set)
        .map_err(|e| SolverError::Precondition(format!("not a complement arc set: {e}")))?;
    let after = gamma_italian(&grown).value;
    let mut verdict = IrsVerdict {
        gamma_before: before,
        gamma_after: after,
        drops_by_one: after + 1 == before,
        endpoints_ok: true,
        functions_checked: 0,
        offending: None,
    };
    for g in enumerate_min_idfs(&grown)? {
        verdict.functions_checked += 1;
        if let Some(&arc) = set
            .iter()
            .find(|a| g.get(a.tail) == 0 || g.get(a.head) != 0)
        {
            verdict.endpoints_ok = false;
            verdict.offending = Some((g.to_string(), arc));
            break;
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use crate::idf::brute_force_gamma_italian;

    #[test]
    fn path2_bound_presence() {
        let b = bondage_upper_bound_path2(&complete_digraph(3).unwrap()).unwrap();
        // underlying degrees 4, deg^-(y) = 2, no common in-neighbour, x ~ z
        assert_eq!(b.value, 9);
        assert!(bondage_upper_bound_path2(&directed_path(3).unwrap()).is_none());
    }

    #[test]
    fn gamma_delta_bound() {
        let b = bondage_upper_bound_gamma_delta(&complete_digraph(4).unwrap()).unwrap();
        assert_eq!(b.value, 6);
        let split = Digraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(bondage_upper_bound_gamma_delta(&split).is_none());
        assert!(bondage_upper_bound_gamma_delta(&complete_digraph(2).unwrap()).is_none());
    }

    #[test]
    fn bondage_complete_and_bipartite() {
        assert_eq!(
            italian_bondage(&complete_digraph(4).unwrap())
                .unwrap()
                .value,
            4
        );
        assert_eq!(
            italian_bondage(&complete_bipartite_digraph(2, 3).unwrap())
                .unwrap()
                .value,
            1
        );
        assert_eq!(
            italian_bondage(&complete_bipartite_digraph(3, 4).unwrap())
                .unwrap()
                .value,
            2
        );
        assert_eq!(
            italian_bondage(&directed_cycle(5).unwrap()),
            Err(SolverError::BondageUndefined(5))
        );
    }

    #[test]
    fn star_with_two_leaves_needs_two_removals() {
        // K*_{1,2}: after any single removal either both leaves at 1 or the
        // centre at 2 still works; checked here with the exhaustive oracle.
        let d = complete_bipartite_digraph(1, 2).unwrap();
        for arc in d.arcs() {
            let g = brute_force_gamma_italian(&d.remove_arcs(&[arc]).unwrap()).unwrap();
            assert_eq!(g.value, 2, "{arc}");
        }
        let r = italian_bondage(&d).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.perturbed_gamma, 3);
        // with a third leaf one removal isolates a leaf's in-neighbourhood
        assert_eq!(
            italian_bondage(&complete_bipartite_digraph(1, 3).unwrap())
                .unwrap()
                .value,
            1
        );
    }

    #[test]
    fn bondage_result_invariants() {
        let d = complete_digraph(3).unwrap();
        let r = italian_bondage(&d).unwrap();
        assert_eq!(r.witness.len(), r.value);
        assert!(r.perturbed_gamma > r.base_gamma);
        assert!(r.witness.iter().all(|a| d.has_arc(a.tail, a.head)));
        assert!(r.witness.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn reinforcement_examples() {
        let c5 = italian_reinforcement(&directed_cycle(5).unwrap());
        assert_eq!((c5.value, c5.witness.len()), (1, 1));
        assert_eq!(c5.perturbed_gamma, 4);
        assert_eq!(
            italian_reinforcement(&complete_digraph(2).unwrap()).value,
            0
        );
        let e2 = empty_digraph(2).unwrap();
        assert_eq!(italian_reinforcement(&corona(&e2, &e2).unwrap()).value, 2);
        let p2 = directed_path(2).unwrap();
        let e3 = empty_digraph(3).unwrap();
        assert_eq!(italian_reinforcement(&corona(&p2, &e3).unwrap()).value, 2);
        let k1 = empty_digraph(1).unwrap();
        assert_eq!(italian_reinforcement(&corona(&k1, &e2).unwrap()).value, 0);
    }

    #[test]
    fn ri_one_characterization_examples() {
        assert!(check_ri_one_characterization(&directed_cycle(4).unwrap()).unwrap());
        // none of the 12 single arcs lowers gamma_I(empty_4) = 4
        let e4 = empty_digraph(4).unwrap();
        assert!(!check_ri_one_characterization(&e4).unwrap());
        assert_eq!(italian_reinforcement(&e4).value, 2);
        assert!(check_ri_one_characterization(&complete_digraph(3).unwrap()).is_err());
    }

    #[test]
    fn second_condition_as_stated_misses_a_labelled_out_neighbour() {
        // 0 -> 1 -> {2, 3}: unique minimum IDF 1200, and 1 -> 0 gives 0200
        let d = Digraph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let mins: Vec<String> = enumerate_min_idfs(&d)
            .unwrap()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(mins, vec!["1200"]);
        let r = italian_reinforcement(&d);
        assert_eq!((r.value, r.perturbed_gamma), (1, 2));
        assert_eq!(r.witness, vec![Arc::new(1, 0)]);
        assert!(!check_ri_one_characterization(&d).unwrap());
        let w = find_ri_one_witness_scoped(&d, SecondConditionScope::ZeroOutNeighbors)
            .unwrap()
            .unwrap();
        assert_eq!((w.labeling.as_str(), w.vertex, w.condition), ("1200", 0, 2));
    }

    #[test]
    fn scoped_characterization_agrees_at_order_four() {
        for d in enumerate_all(4).unwrap() {
            if gamma_italian(&d).value < 3 {
                continue;
            }
            let scoped = find_ri_one_witness_scoped(&d, SecondConditionScope::ZeroOutNeighbors)
                .unwrap()
                .is_some();
            assert_eq!(scoped, italian_reinforcement(&d).value == 1, "{:?}", d);
        }
    }

    #[test]
    fn irs_validation_examples() {
        let c4 = directed_cycle(4).unwrap();
        let r = italian_reinforcement(&c4);
        let v = validate_irs_witness(&c4, &r.witness).unwrap();
        assert!(v.holds());
        assert_eq!((v.gamma_before, v.gamma_after), (4, 3));

        let cor = corona(&directed_path(2).unwrap(), &empty_digraph(3).unwrap()).unwrap();
        let r = italian_reinforcement(&cor);
        assert!(validate_irs_witness(&cor, &r.witness).unwrap().holds());
    }

    #[test]
    fn classical_reinforcement_examples() {
        assert_eq!(
            classical_reinforcement(&complete_digraph(4).unwrap())
                .unwrap()
                .value,
            0
        );
        // one extra out-neighbour leaves every vertex of C_4 short of dominating all
        let c4 = classical_reinforcement(&directed_cycle(4).unwrap()).unwrap();
        assert_eq!((c4.value, c4.base_gamma, c4.perturbed_gamma), (2, 2, 1));
        // a single arc u->v merges two singletons
        let e3 = classical_reinforcement(&empty_digraph(3).unwrap()).unwrap();
        assert_eq!((e3.value, e3.perturbed_gamma), (1, 2));
    }
}
