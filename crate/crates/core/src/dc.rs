//! Dynamic-consistency checking by reduction to HyTN consistency.
//!
//! A conditional network is expanded into one component per scenario (the
//! disjoint union of its restrictions); reaction-time hyperarcs with weight
//! `-ε` tie the components together so that the expanded network is
//! consistent exactly when the conditional network is ε-dynamically
//! consistent. Weights are scaled by the denominator of ε so the integer
//! solver applies, and solver schedules are scaled back and read off as
//! per-scenario execution strategies.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::Signed;

use crate::chytn::{validate_wd, Chytn};
use crate::error::{DcError, InternalError, ModelError, ResourceError};
use crate::hytn::{check_hytn, HytnVerdict, NegativeCycleCert};
use crate::network::{Head, Hyperarc, Hytn, NodeId, Weight};
use crate::scenario::Scenario;
use crate::schedule::{Eps, ExecutionStrategy, Schedule, Time};

/// A copy of a base node inside one scenario's component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpandedNode {
    pub base: NodeId,
    /// Index into the canonical scenario enumeration.
    pub scenario: usize,
}

/// The expansion of a conditional network, optionally enriched with the
/// reaction-time hyperarcs and scaled to integer weights.
#[derive(Debug, Clone)]
pub struct HEpsBuild {
    pub hytn: Hytn,
    /// Expanded node id -> (base, scenario).
    pub nodes: Vec<ExpandedNode>,
    /// `index[scenario][base]` -> expanded node id.
    pub index: Vec<Vec<Option<NodeId>>>,
    pub scenarios: Vec<Scenario>,
    /// Denominator all integer weights were multiplied by (`-ε` became `-N`).
    pub scale: Weight,
    /// Number of hyperarcs coming from the expansion itself (including any
    /// contradiction pairs standing in for negative self-loops).
    pub expansion_arcs: usize,
    /// Number of injected contradiction pairs.
    pub injected_contradictions: usize,
}

impl HEpsBuild {
    /// Count of reaction-time hyperarcs.
    pub fn alpha_arcs(&self) -> usize {
        self.hytn.hyperarcs().len() - self.expansion_arcs
    }
}

/// Verdict of a dynamic-consistency check: exactly one branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DcVerdict {
    /// A viable, (ε-)dynamic execution strategy.
    Dc(ExecutionStrategy),
    /// A negative cycle over the scaled reduction network.
    NotDc(NegativeCycleCert),
}

impl DcVerdict {
    pub fn is_dc(&self) -> bool {
        matches!(self, DcVerdict::Dc(_))
    }
}

/// Full outcome of a (ε-)dynamic-consistency check, keeping the reduction
/// network so certificates can be re-verified against it.
#[derive(Debug, Clone)]
pub struct DcOutcome {
    pub eps: Eps,
    pub verdict: DcVerdict,
    pub build: HEpsBuild,
}

fn ensure_well_defined(g: &Chytn) -> Result<(), DcError> {
    let violations = validate_wd(g);
    if violations.is_empty() {
        return Ok(());
    }
    let msg = violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ");
    Err(DcError::NotWellDefined(msg))
}

/// The expansion of Def.-style disjoint restrictions, unscaled and without
/// reaction-time hyperarcs.
pub fn expand(g: &Chytn, cap: usize) -> Result<HEpsBuild, DcError> {
    build(g, None, cap)
}

/// Builds the reaction-time reduction network for `ε = N/D`, with every
/// integer weight multiplied by `D` and each `-ε` head carrying `-N`.
pub fn construct_h_eps(g: &Chytn, eps: &Eps, cap: usize) -> Result<HEpsBuild, DcError> {
    build(g, Some(eps), cap)
}

fn build(g: &Chytn, eps: Option<&Eps>, cap: usize) -> Result<HEpsBuild, DcError> {
    let scenarios = g.scenarios(cap)?;
    let scale: Weight = eps.map_or(1, Eps::denom);
    let minus_eps: Weight = eps.map_or(0, |e| -e.numer());

    let mul = |w: Weight| -> Result<Weight, DcError> {
        w.checked_mul(scale).ok_or_else(|| {
            DcError::Resource(ResourceError::Limit(format!(
                "weight {w} overflows when scaled by {scale}"
            )))
        })
    };

    let mut nodes: Vec<ExpandedNode> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut index: Vec<Vec<Option<NodeId>>> = Vec::with_capacity(scenarios.len());
    let mut hyperarcs: Vec<Hyperarc> = Vec::new();
    let mut injected = 0usize;

    // scenario components: copies of each restriction
    let mut restrictions = Vec::with_capacity(scenarios.len());
    for (si, s) in scenarios.iter().enumerate() {
        let r = g.restriction(s);
        let mut ids = vec![None; g.node_count()];
        for (local, &base) in r.base_of.iter().enumerate() {
            let id = nodes.len();
            ids[base] = Some(id);
            nodes.push(ExpandedNode { base, scenario: si });
            names.push(format!("{}@s{}", g.name(base), si));
            let _ = local;
        }
        index.push(ids);
        restrictions.push(r);
    }

    // audit: the expansion must respect the paper's node bound
    let node_bound = scenarios.len() * g.node_count();
    if nodes.len() > node_bound {
        return Err(DcError::Internal(InternalError(format!(
            "expansion produced {} nodes, above the bound {}",
            nodes.len(),
            node_bound
        ))));
    }

    for (si, r) in restrictions.iter().enumerate() {
        for arc in r.hytn.hyperarcs() {
            let tail = index[si][r.base_of[arc.tail]].expect("tail present");
            let heads = arc
                .heads
                .iter()
                .map(|h| {
                    Ok(Head {
                        node: index[si][r.base_of[h.node]].expect("head present"),
                        weight: mul(h.weight)?,
                    })
                })
                .collect::<Result<Vec<_>, DcError>>()?;
            hyperarcs.push(Hyperarc { tail, heads });
        }
        // a surviving negative self-loop is an unconditional contradiction in
        // this component; stand it in with an equivalent two-arc negative
        // cycle through a partner node
        for c in &r.contradictions {
            let node = index[si][c.base].expect("contradiction node present");
            let partner = (0..nodes.len())
                .find(|&v| v != node)
                .ok_or_else(|| {
                    DcError::Internal(InternalError(
                        "no partner node available for a negative self-loop".to_owned(),
                    ))
                })?;
            hyperarcs.push(Hyperarc {
                tail: node,
                heads: vec![Head { node: partner, weight: mul(c.weight)? }],
            });
            hyperarcs.push(Hyperarc {
                tail: partner,
                heads: vec![Head { node, weight: 0 }],
            });
            injected += 1;
        }
    }
    let expansion_arcs = hyperarcs.len();

    // reaction-time hyperarcs, only when ε is given
    if eps.is_some() {
        let head_cap = 1 + g.props().len();
        let mut delta_heads: Vec<NodeId> = Vec::new();
        for (s1i, s1) in scenarios.iter().enumerate() {
            for (s2i, s2) in scenarios.iter().enumerate() {
                if s1i == s2i {
                    continue;
                }
                delta_heads.clear();
                for p in 0..g.props().len() {
                    if s1.value(p) != s2.value(p) {
                        if let Some(id) = index[s1i][g.observer(p)] {
                            delta_heads.push(id);
                        }
                    }
                }
                for u in 0..g.node_count() {
                    let (Some(u_s1), Some(u_s2)) = (index[s1i][u], index[s2i][u]) else {
                        continue;
                    };
                    let mut heads = Vec::with_capacity(1 + delta_heads.len());
                    heads.push(Head { node: u_s2, weight: 0 });
                    for &v in &delta_heads {
                        // the tail cannot react to its own observation
                        if v != u_s1 {
                            heads.push(Head { node: v, weight: minus_eps });
                        }
                    }
                    if heads.len() > head_cap {
                        return Err(DcError::Internal(InternalError(format!(
                            "reaction hyperarc with {} heads exceeds 1 + |P| = {}",
                            heads.len(),
                            head_cap
                        ))));
                    }
                    hyperarcs.push(Hyperarc { tail: u_s1, heads });
                }
            }
        }
    }

    let hytn = Hytn::new(names, hyperarcs).map_err(DcError::Model)?;
    Ok(HEpsBuild {
        hytn,
        nodes,
        index,
        scenarios,
        scale,
        expansion_arcs,
        injected_contradictions: injected,
    })
}

/// Decides ε-dynamic consistency: YES with a viable ε-dynamic execution
/// strategy, or NO with a negative cycle over the scaled reduction network.
pub fn check_eps_dc(g: &Chytn, eps: &Eps, cap: usize) -> Result<DcOutcome, DcError> {
    ensure_well_defined(g)?;
    let build = construct_h_eps(g, eps, cap)?;
    let verdict = match check_hytn(&build.hytn) {
        HytnVerdict::Consistent(phi) => DcVerdict::Dc(read_back_strategy(g, &build, &phi)?),
        HytnVerdict::Inconsistent(cert) => DcVerdict::NotDc(cert),
    };
    Ok(DcOutcome {
        eps: *eps,
        verdict,
        build,
    })
}

/// Decides dynamic consistency by checking ε-dynamic consistency at the
/// threshold reaction time `1 / (|Σ_P| · |V|)`.
pub fn check_dc(g: &Chytn, cap: usize) -> Result<DcOutcome, DcError> {
    let eps = threshold_eps(g, cap)?;
    check_eps_dc(g, &eps, cap)
}

/// The reaction-time threshold `1 / (|Σ_P| · |V|)` below which ε-dynamic
/// consistency coincides with dynamic consistency.
pub fn threshold_eps(g: &Chytn, cap: usize) -> Result<Eps, DcError> {
    let scenario_count = g.scenarios(cap)?.len() as Weight;
    let nodes = g.node_count().max(1) as Weight;
    let denom = scenario_count.checked_mul(nodes).ok_or_else(|| {
        DcError::Resource(ResourceError::Limit(
            "scenario count times node count overflows".to_owned(),
        ))
    })?;
    Eps::new(1, denom).map_err(DcError::Model)
}

fn read_back_strategy(
    g: &Chytn,
    build: &HEpsBuild,
    phi: &Schedule,
) -> Result<ExecutionStrategy, DcError> {
    let d = Rational64::from_integer(build.scale);
    let mut per_scenario = Vec::with_capacity(build.scenarios.len());
    for ids in &build.index {
        let mut times = BTreeMap::new();
        for (base, id) in ids.iter().enumerate() {
            if let Some(id) = id {
                let t = phi.get(*id).ok_or_else(|| {
                    DcError::Internal(InternalError(format!(
                        "solver schedule misses expanded node #{id}"
                    )))
                })?;
                times.insert(base, t / d);
            }
        }
        per_scenario.push(Schedule::from_times(times));
    }
    let _ = g;
    Ok(ExecutionStrategy::new(per_scenario))
}

// ---------------------------------------------------------------------------
// Reaction-time bracketing
// ---------------------------------------------------------------------------

/// Upper side of a reaction-time bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketUpper {
    /// Smallest tested ε that fails.
    Fails(Eps),
    /// No reaction-time hyperarc carries an ε weight: every positive ε works.
    Unbounded,
    /// The search budget ran out before any failing ε was found.
    Exhausted,
}

/// Result of bracketing the critical reaction time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpsHatBounds {
    NotDynamicallyConsistent,
    Bracket { lo: Eps, hi: BracketUpper },
}

/// Brackets the critical reaction time of a dynamically-consistent network:
/// `lo` is the largest tested ε that passes, the upper side the smallest that
/// fails. The bracket is refined by bisection while midpoint denominators
/// stay within `max_denominator`.
pub fn eps_hat_bounds(
    g: &Chytn,
    max_denominator: i64,
    cap: usize,
) -> Result<EpsHatBounds, DcError> {
    ensure_well_defined(g)?;
    if !check_dc(g, cap)?.verdict.is_dc() {
        return Ok(EpsHatBounds::NotDynamicallyConsistent);
    }
    if !has_eps_sensitive_constraint(g, cap)? {
        return Ok(EpsHatBounds::Bracket {
            lo: Eps::one(),
            hi: BracketUpper::Unbounded,
        });
    }

    let passes = |e: &Eps| -> Result<bool, DcError> {
        Ok(check_eps_dc(g, e, cap)?.verdict.is_dc())
    };

    let mut probe = Eps::one();
    let mut lo: Option<Eps> = None;
    let mut hi: Option<Eps> = None;
    if passes(&probe)? {
        lo = Some(probe);
        // ascend until a failure or the budget runs out
        let ceiling = max_denominator.max(2).ilog2() as u32 + 17;
        for _ in 0..ceiling {
            probe = probe.doubled();
            if passes(&probe)? {
                lo = Some(probe);
            } else {
                hi = Some(probe);
                break;
            }
        }
        if hi.is_none() {
            return Ok(EpsHatBounds::Bracket {
                lo: lo.expect("at least one pass"),
                hi: BracketUpper::Exhausted,
            });
        }
    } else {
        hi = Some(probe);
        // descend; the threshold reaction time is guaranteed to pass
        loop {
            probe = probe.halved();
            if passes(&probe)? {
                lo = Some(probe);
                break;
            }
            hi = Some(probe);
            if probe < threshold_eps(g, cap)? {
                return Err(DcError::Internal(InternalError(
                    "a dynamically-consistent network failed below its threshold reaction time"
                        .to_owned(),
                )));
            }
        }
    }

    let (mut lo, mut hi) = (lo.expect("set above"), hi.expect("set above"));
    loop {
        let mid = lo.midpoint(&hi);
        if mid.denom() > max_denominator || mid <= lo || mid >= hi {
            break;
        }
        if passes(&mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(EpsHatBounds::Bracket {
        lo,
        hi: BracketUpper::Fails(hi),
    })
}

/// True when some reaction hyperarc would carry a `-ε` head, i.e. the
/// reduction actually depends on ε.
fn has_eps_sensitive_constraint(g: &Chytn, cap: usize) -> Result<bool, DcError> {
    let scenarios = g.scenarios(cap)?;
    for (s1i, s1) in scenarios.iter().enumerate() {
        for (s2i, s2) in scenarios.iter().enumerate() {
            if s1i == s2i {
                continue;
            }
            let delta = g.delta(s1, s2);
            if delta.is_empty() {
                continue;
            }
            for u in 0..g.node_count() {
                if s1.eval(g.label(u))
                    && s2.eval(g.label(u))
                    && delta.iter().any(|&v| v != u)
                {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Fractional-part normalization
// ---------------------------------------------------------------------------

/// Rewrites every time's fractional part as `rank / slots`, keeping integer
/// parts and the relative order of fractional parts. With
/// `slots = |Σ_P| · |V|`, a feasible schedule of any reaction-time reduction
/// stays feasible at the threshold reaction time.
pub fn normalize_fractional_parts(phi: &Schedule, slots: i64) -> Schedule {
    let mut fracs: Vec<Time> = phi.iter().map(|(_, t)| t.fract()).collect();
    fracs.sort_unstable();
    fracs.dedup();
    phi.iter()
        .map(|(v, t)| {
            let rank = fracs.binary_search(&t.fract()).expect("collected above") as i64;
            (v, t.floor() + Rational64::new(rank, slots))
        })
        .collect()
}

/// [`normalize_fractional_parts`] with the slot count taken from the network.
pub fn normalize_schedule(phi: &Schedule, g: &Chytn, cap: usize) -> Result<Schedule, DcError> {
    let scenario_count = g.scenarios(cap)?.len() as i64;
    Ok(normalize_fractional_parts(
        phi,
        scenario_count * g.node_count().max(1) as i64,
    ))
}

/// Translates a per-scenario execution strategy into a schedule over the
/// expanded nodes of a reduction build.
pub fn strategy_to_expanded_schedule(
    build: &HEpsBuild,
    strategy: &ExecutionStrategy,
) -> Result<Schedule, ModelError> {
    let mut out = Schedule::new();
    for (si, ids) in build.index.iter().enumerate() {
        for (base, id) in ids.iter().enumerate() {
            if let Some(id) = id {
                let t = strategy
                    .time(si, base)
                    .ok_or_else(|| ModelError::MissingScheduleEntry(format!("node #{base}@s{si}")))?;
                out.set(*id, t);
            }
        }
    }
    Ok(out)
}

/// Scales a rational schedule by `factor` (used to compare strategies against
/// scaled reduction networks, where all weights carry the ε denominator).
pub fn scale_schedule(phi: &Schedule, factor: Weight) -> Schedule {
    let f = Rational64::from_integer(factor);
    phi.iter().map(|(v, t)| (v, t * f)).collect()
}

/// True when all strategy times are nonnegative rationals; handy guard for
/// generated strategies.
pub fn strategy_is_nonnegative(strategy: &ExecutionStrategy) -> bool {
    strategy
        .schedules()
        .iter()
        .all(|s| s.iter().all(|(_, t)| !t.is_negative()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chytn::ChytnBuilder;
    use crate::scenario::DEFAULT_SCENARIO_CAP;

    fn gamma0() -> Chytn {
        let mut b = ChytnBuilder::new();
        b.node("A", "").node("B", "").node("C", "");
        b.node("Op", "").node("Oq", "p");
        b.prop("p", "Op").prop("q", "Oq");
        b.arc("A", "C", 10, "").arc("C", "A", -10, "");
        b.arc("A", "B", 3, "p !q").arc("B", "A", 0, "");
        b.arc("A", "Op", 5, "").arc("Op", "A", 0, "");
        b.arc("A", "Oq", 9, "p").arc("Oq", "A", 0, "p");
        b.arc("B", "C", 2, "p q").arc("Op", "C", 10, "");
        b.arc("Oq", "Op", -1, "p");
        b.finish().unwrap()
    }

    #[test]
    fn gamma0_expansion_has_the_expected_node_count() {
        // scenarios !p!q, !pq drop Oq: 4 + 4 + 5 + 5 = 18 <= 4 * 5
        let e = expand(&gamma0(), DEFAULT_SCENARIO_CAP).unwrap();
        assert_eq!(e.nodes.len(), 18);
        assert!(e.nodes.len() <= e.scenarios.len() * 5);
        assert_eq!(e.alpha_arcs(), 0);
    }

    #[test]
    fn empty_proposition_set_expands_to_the_single_restriction() {
        let mut b = ChytnBuilder::new();
        b.node("x", "").node("y", "");
        b.arc("x", "y", 3, "");
        let g = b.finish().unwrap();
        let e = expand(&g, DEFAULT_SCENARIO_CAP).unwrap();
        assert_eq!(e.nodes.len(), 2);
        assert_eq!(e.hytn.hyperarcs().len(), 1);
        let h = construct_h_eps(&g, &Eps::new(1, 2).unwrap(), DEFAULT_SCENARIO_CAP).unwrap();
        assert_eq!(h.hytn.hyperarcs().len(), 1, "no reaction arcs with one scenario");
    }

    #[test]
    fn reaction_hyperarcs_follow_the_two_scenario_excerpt() {
        // pair s3 = (p q), s0 = (!p !q): tail A@s3 gets heads A@s0 (0),
        // Op@s3 (-ε), Oq@s3 (-ε)
        let g = gamma0();
        let eps = Eps::new(1, 20).unwrap();
        let b = construct_h_eps(&g, &eps, DEFAULT_SCENARIO_CAP).unwrap();
        let find = |name: &str| b.hytn.names().iter().position(|n| n == name).unwrap();
        let a_s3 = find("A@s3");
        let a_s0 = find("A@s0");
        let op_s3 = find("Op@s3");
        let oq_s3 = find("Oq@s3");
        let alpha = b.hytn.hyperarcs()[b.expansion_arcs..]
            .iter()
            .find(|arc| {
                arc.tail == a_s3 && arc.heads.iter().any(|h| h.node == a_s0)
            })
            .expect("reaction hyperarc for (s3, s0, A)");
        let mut heads: Vec<(usize, i64)> = alpha.heads.iter().map(|h| (h.node, h.weight)).collect();
        heads.sort_unstable();
        let mut expected = vec![(a_s0, 0), (op_s3, -1), (oq_s3, -1)];
        expected.sort_unstable();
        assert_eq!(heads, expected);
        // every reaction hyperarc obeys the head bound
        for arc in &b.hytn.hyperarcs()[b.expansion_arcs..] {
            assert!(arc.heads.len() <= 1 + g.props().len());
        }
    }

    #[test]
    fn observation_tails_do_not_point_at_themselves() {
        let g = gamma0();
        let b = construct_h_eps(&g, &Eps::new(1, 2).unwrap(), DEFAULT_SCENARIO_CAP).unwrap();
        for arc in b.hytn.hyperarcs() {
            assert!(arc.heads.iter().all(|h| h.node != arc.tail));
        }
    }

    #[test]
    fn normalization_keeps_integer_parts_and_fraction_order() {
        // values {0, 0.7, 1.7, 1.9} over 12 slots -> {0, 1/12, 1+1/12, 1+2/12}
        let phi: Schedule = [
            (0, Rational64::new(0, 1)),
            (1, Rational64::new(7, 10)),
            (2, Rational64::new(17, 10)),
            (3, Rational64::new(19, 10)),
        ]
        .into_iter()
        .collect();
        let out = normalize_fractional_parts(&phi, 12);
        assert_eq!(out.get(0), Some(Rational64::new(0, 1)));
        assert_eq!(out.get(1), Some(Rational64::new(1, 12)));
        assert_eq!(out.get(2), Some(Rational64::new(13, 12)));
        assert_eq!(out.get(3), Some(Rational64::new(14, 12)));
    }

    #[test]
    fn normalization_leaves_integer_schedules_unchanged() {
        let phi: Schedule = [(0, Rational64::new(3, 1)), (1, Rational64::new(-2, 1))]
            .into_iter()
            .collect();
        assert_eq!(normalize_fractional_parts(&phi, 12), phi);
    }
}
