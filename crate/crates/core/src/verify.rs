//! Solver-free checkers for execution strategies, plus a small exhaustive
//! game-tree oracle for dynamic consistency.
//!
//! Everything here re-derives its verdicts directly from definitions
//! (restriction feasibility, difference sets, scenario histories), so these
//! checkers stay independent of the reduction pipeline they audit.

use num_rational::Rational64;

use crate::chytn::{Chytn, GeneralChytn};
use crate::error::{DcError, ModelError, ResourceError};
use crate::hytn::{check_hytn, satisfies};
use crate::label::Label;
use crate::network::{Head, Hyperarc, Hytn, NodeId, Weight};
use crate::scenario::Scenario;
use crate::schedule::{Eps, ExecutionStrategy, Schedule, Time};

/// A constraint violated by a strategy under one scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViabilityViolation {
    /// Scenario index in canonical order.
    pub scenario: usize,
    /// Index of the violated constraint in the source network.
    pub constraint: usize,
}

/// A pair of scenarios and a node witnessing a dynamicity failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DynamicityWitness {
    pub s1: usize,
    pub s2: usize,
    pub node: NodeId,
}

fn check_domains(
    strategy: &ExecutionStrategy,
    g: &Chytn,
    scenarios: &[Scenario],
) -> Result<(), ModelError> {
    if strategy.scenario_count() != scenarios.len() {
        return Err(ModelError::Malformed(format!(
            "strategy covers {} scenarios, network has {}",
            strategy.scenario_count(),
            scenarios.len()
        )));
    }
    for (si, s) in scenarios.iter().enumerate() {
        let sched = strategy.schedule(si);
        for v in 0..g.node_count() {
            let present = s.eval(g.label(v));
            if present && !sched.contains(v) {
                return Err(ModelError::MissingScheduleEntry(g.name(v).to_owned()));
            }
            if !present && sched.contains(v) {
                return Err(ModelError::ForeignScheduleEntry(g.name(v).to_owned()));
            }
        }
    }
    Ok(())
}

/// Viability: every scenario's schedule is feasible for the restriction.
/// Violations name the scenario and the source constraint.
pub fn viable(
    strategy: &ExecutionStrategy,
    g: &Chytn,
    cap: usize,
) -> Result<Vec<ViabilityViolation>, DcError> {
    let scenarios = g.scenarios(cap)?;
    check_domains(strategy, g, &scenarios).map_err(DcError::Model)?;
    let mut violations = Vec::new();
    for (si, s) in scenarios.iter().enumerate() {
        let r = g.restriction(s);
        let sched: Schedule = r
            .base_of
            .iter()
            .enumerate()
            .map(|(local, &base)| {
                (
                    local,
                    strategy.time(si, base).expect("domain checked"),
                )
            })
            .collect();
        let report = satisfies(&r.hytn, &sched).map_err(DcError::Model)?;
        for (ai, ok) in report.per_arc.iter().enumerate() {
            if !ok {
                violations.push(ViabilityViolation {
                    scenario: si,
                    constraint: r.arc_sources[ai],
                });
            }
        }
        for c in &r.contradictions {
            violations.push(ViabilityViolation {
                scenario: si,
                constraint: c.constraint,
            });
        }
    }
    Ok(violations)
}

/// Dynamicity in difference-set form: whenever a node is scheduled no later
/// than every observation distinguishing `s2` from `s1`, its time must agree
/// across the two scenarios. `None` means dynamic.
pub fn dynamic(
    strategy: &ExecutionStrategy,
    g: &Chytn,
    cap: usize,
) -> Result<Option<DynamicityWitness>, DcError> {
    let scenarios = g.scenarios(cap)?;
    check_domains(strategy, g, &scenarios).map_err(DcError::Model)?;
    for (s1i, s1) in scenarios.iter().enumerate() {
        for (s2i, s2) in scenarios.iter().enumerate() {
            if s1i == s2i {
                continue;
            }
            let delta = g.delta(s1, s2);
            for u in 0..g.node_count() {
                let (Some(t1), Some(t2)) = (strategy.time(s1i, u), strategy.time(s2i, u)) else {
                    continue;
                };
                let premise = delta
                    .iter()
                    .all(|&v| t1 <= strategy.time(s1i, v).expect("delta is within s1"));
                if premise && t1 != t2 {
                    return Ok(Some(DynamicityWitness { s1: s1i, s2: s2i, node: u }));
                }
            }
        }
    }
    Ok(None)
}

/// Dynamicity in scenario-history form: the history of `u` under `s1`, read
/// as a label, must force equal times whenever it is consistent with `s2`.
/// Kept alongside [`dynamic`] purely as redundancy; the two must agree.
pub fn dynamic_via_history(
    strategy: &ExecutionStrategy,
    g: &Chytn,
    cap: usize,
) -> Result<Option<DynamicityWitness>, DcError> {
    let scenarios = g.scenarios(cap)?;
    check_domains(strategy, g, &scenarios).map_err(DcError::Model)?;
    for (s1i, s1) in scenarios.iter().enumerate() {
        for (s2i, s2) in scenarios.iter().enumerate() {
            if s1i == s2i {
                continue;
            }
            for u in 0..g.node_count() {
                let (Some(t1), Some(t2)) = (strategy.time(s1i, u), strategy.time(s2i, u)) else {
                    continue;
                };
                let history = scenario_history_at(strategy, s1i, s1, t1, g);
                if s2.eval(&history) && t1 != t2 {
                    return Ok(Some(DynamicityWitness { s1: s1i, s2: s2i, node: u }));
                }
            }
        }
    }
    Ok(None)
}

/// ε-dynamicity: every cross-scenario reaction constraint holds with exact
/// rational arithmetic. `None` means ε-dynamic.
pub fn eps_dynamic(
    strategy: &ExecutionStrategy,
    g: &Chytn,
    eps: &Eps,
    cap: usize,
) -> Result<Option<DynamicityWitness>, DcError> {
    let scenarios = g.scenarios(cap)?;
    check_domains(strategy, g, &scenarios).map_err(DcError::Model)?;
    let e = eps.value();
    for (s1i, s1) in scenarios.iter().enumerate() {
        for (s2i, s2) in scenarios.iter().enumerate() {
            if s1i == s2i {
                continue;
            }
            let delta = g.delta(s1, s2);
            for u in 0..g.node_count() {
                let (Some(t1), Some(t2)) = (strategy.time(s1i, u), strategy.time(s2i, u)) else {
                    continue;
                };
                let mut bound = t2;
                for &v in &delta {
                    bound = bound.min(strategy.time(s1i, v).expect("delta is within s1") + e);
                }
                if t1 < bound {
                    return Ok(Some(DynamicityWitness { s1: s1i, s2: s2i, node: u }));
                }
            }
        }
    }
    Ok(None)
}

/// Scenario history of `v` under scenario index `si`: the conjunction of
/// observations executed strictly before `v`'s own time.
pub fn scenario_history(
    strategy: &ExecutionStrategy,
    si: usize,
    v: NodeId,
    g: &Chytn,
    cap: usize,
) -> Result<Label, DcError> {
    let scenarios = g.scenarios(cap)?;
    let s = scenarios
        .get(si)
        .ok_or_else(|| DcError::Model(ModelError::Malformed(format!("no scenario #{si}"))))?;
    let t = strategy
        .time(si, v)
        .ok_or_else(|| DcError::Model(ModelError::MissingScheduleEntry(g.name(v).to_owned())))?;
    Ok(scenario_history_at(strategy, si, s, t, g))
}

fn scenario_history_at(
    strategy: &ExecutionStrategy,
    si: usize,
    s: &Scenario,
    before: Time,
    g: &Chytn,
) -> Label {
    let mut literals = Vec::new();
    for p in 0..g.props().len() {
        let obs = g.observer(p);
        if let Some(t_obs) = strategy.time(si, obs) {
            if t_obs < before {
                literals.push((p, s.value(p)));
            }
        }
    }
    Label::new(literals).expect("one literal per proposition")
}

/// The largest ε for which a dynamic strategy stays ε-dynamic, computed as
/// the minimum positive reaction gap it realizes; `None` when no reaction
/// constraint binds (any ε works).
pub fn max_reaction_gap(
    strategy: &ExecutionStrategy,
    g: &Chytn,
    cap: usize,
) -> Result<Option<Time>, DcError> {
    let scenarios = g.scenarios(cap)?;
    check_domains(strategy, g, &scenarios).map_err(DcError::Model)?;
    let mut gap: Option<Time> = None;
    for (s1i, s1) in scenarios.iter().enumerate() {
        for (s2i, s2) in scenarios.iter().enumerate() {
            if s1i == s2i {
                continue;
            }
            let delta = g.delta(s1, s2);
            for u in 0..g.node_count() {
                let (Some(t1), Some(t2)) = (strategy.time(s1i, u), strategy.time(s2i, u)) else {
                    continue;
                };
                if t1 >= t2 {
                    continue;
                }
                // the strategy must realize some strictly-later observation
                let best = delta
                    .iter()
                    .map(|&v| t1 - strategy.time(s1i, v).expect("delta within s1"))
                    .filter(|d| d > &Rational64::from_integer(0))
                    .max();
                match best {
                    Some(d) => gap = Some(gap.map_or(d, |g| g.min(d))),
                    None => {
                        return Err(DcError::Model(ModelError::Malformed(
                            "strategy is not dynamic; no reaction gap exists".to_owned(),
                        )))
                    }
                }
            }
        }
    }
    Ok(gap)
}

// ---------------------------------------------------------------------------
// Brute-force dynamic consistency (game-tree search)
// ---------------------------------------------------------------------------

const BRUTE_MAX_PROPS: usize = 4;
const BRUTE_MAX_NODES: usize = 12;
const BRUTE_MAX_HORIZON: i64 = 12;

/// Exhaustive dynamic-consistency oracle over integer execution times in
/// `[0, horizon]`. At each instant the planner commits a set of enabled
/// nodes, then the revealed observations branch adversarially; the planner
/// wins when every branch ends viable. Supports multi-head and multi-tail
/// constraints. Decides the discrete-time variant, which matches true
/// dynamic consistency on the gadget families whose strategies are integer
/// valued.
pub fn brute_force_dc(g: &GeneralChytn, horizon: i64, cap: usize) -> Result<bool, DcError> {
    let net = &g.core;
    if net.props().len() > BRUTE_MAX_PROPS {
        return Err(DcError::Resource(ResourceError::Limit(format!(
            "brute force caps propositions at {BRUTE_MAX_PROPS}"
        ))));
    }
    if net.node_count() > BRUTE_MAX_NODES {
        return Err(DcError::Resource(ResourceError::Limit(format!(
            "brute force caps nodes at {BRUTE_MAX_NODES}"
        ))));
    }
    if horizon > BRUTE_MAX_HORIZON || horizon < 0 {
        return Err(DcError::Resource(ResourceError::Limit(format!(
            "brute force caps the horizon at {BRUTE_MAX_HORIZON}"
        ))));
    }
    let scenarios = net.scenarios(cap)?;
    let mut search = Search {
        g,
        scenarios: &scenarios,
        horizon,
        executed: vec![None; net.node_count()],
        revealed: vec![None; net.props().len()],
    };
    Ok(search.planner_turn(0))
}

struct Search<'a> {
    g: &'a GeneralChytn,
    scenarios: &'a [Scenario],
    horizon: i64,
    /// Node -> execution instant.
    executed: Vec<Option<i64>>,
    /// Prop -> (instant observed, value); visible to instants strictly later.
    revealed: Vec<Option<(i64, bool)>>,
}

impl Search<'_> {
    fn compatible_scenarios(&self) -> Vec<&Scenario> {
        self.scenarios
            .iter()
            .filter(|s| {
                self.revealed
                    .iter()
                    .enumerate()
                    .all(|(p, r)| r.map_or(true, |(_, v)| s.value(p) == v))
            })
            .collect()
    }

    /// Label fully determined true by observations visible at instant `t`.
    fn enabled(&self, v: NodeId, t: i64) -> bool {
        self.g.core.label(v).literals().iter().all(|&(p, want)| {
            matches!(self.revealed[p], Some((at, val)) if at < t && val == want)
        })
    }

    fn planner_turn(&mut self, t: i64) -> bool {
        if t > self.horizon {
            return self.all_branches_viable();
        }
        let net = &self.g.core;
        let candidates: Vec<NodeId> = (0..net.node_count())
            .filter(|&v| self.executed[v].is_none() && self.enabled(v, t))
            .collect();

        // a candidate that breaks some compatible scenario when pinned at t
        // can never be in a winning commitment; one that breaks some scenario
        // when deferred must be committed now
        let mut optional = Vec::new();
        let mut forced = Vec::new();
        for &v in &candidates {
            self.executed[v] = Some(t);
            let can_run_now = self.relaxed_feasible(t);
            self.executed[v] = None;
            if !can_run_now {
                continue;
            }
            let must_run_now = {
                let ok_deferred = self.relaxed_feasible_excluding(t, v);
                !ok_deferred
            };
            if must_run_now {
                forced.push(v);
            } else {
                optional.push(v);
            }
        }
        for &v in &forced {
            self.executed[v] = Some(t);
        }
        if !self.relaxed_feasible(t) {
            for &v in &forced {
                self.executed[v] = None;
            }
            return false;
        }

        let mut won = false;
        for mask in 0..(1u32 << optional.len()) {
            let chosen: Vec<NodeId> = optional
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            for &v in &chosen {
                self.executed[v] = Some(t);
            }
            if self.relaxed_feasible(t) && self.adversary_turn(t) {
                won = true;
            }
            for &v in &chosen {
                self.executed[v] = None;
            }
            if won {
                break;
            }
        }
        for &v in &forced {
            self.executed[v] = None;
        }
        won
    }

    /// Reveal the propositions observed at instant `t` and branch over their
    /// outcomes; the planner must win every branch.
    fn adversary_turn(&mut self, t: i64) -> bool {
        let net = &self.g.core;
        let fresh: Vec<usize> = (0..net.props().len())
            .filter(|&p| {
                self.revealed[p].is_none() && self.executed[net.observer(p)] == Some(t)
            })
            .collect();
        let outcomes = 1u32 << fresh.len();
        for mask in 0..outcomes {
            for (i, &p) in fresh.iter().enumerate() {
                self.revealed[p] = Some((t, mask >> i & 1 == 1));
            }
            let ok = self.planner_turn(t + 1);
            for &p in &fresh {
                self.revealed[p] = None;
            }
            if !ok {
                return false;
            }
        }
        true
    }

    fn relaxed_feasible(&self, t: i64) -> bool {
        self.compatible_scenarios()
            .iter()
            .all(|s| self.scenario_completable(s, t, None))
    }

    fn relaxed_feasible_excluding(&self, t: i64, deferred: NodeId) -> bool {
        self.compatible_scenarios()
            .iter()
            .all(|s| self.scenario_completable(s, t, Some(deferred)))
    }

    /// Relaxation: ignoring multi-tail constraints, can the executed prefix
    /// extend to a feasible schedule of the restriction with the remaining
    /// nodes in `[t+1, horizon]`? `defer` additionally forces one node late.
    fn scenario_completable(&self, s: &Scenario, t: i64, defer: Option<NodeId>) -> bool {
        let net = &self.g.core;
        let r = net.restriction(s);
        if !r.contradictions.is_empty() {
            return false;
        }
        let n = r.hytn.node_count();
        let origin = n;
        let mut names: Vec<String> = r.hytn.names().to_vec();
        names.push("@origin".to_owned());
        let mut arcs: Vec<Hyperarc> = r.hytn.hyperarcs().to_vec();
        for (local, &base) in r.base_of.iter().enumerate() {
            let pin = self.executed[base];
            let lo = match (pin, defer == Some(base)) {
                (Some(at), _) => at,
                (None, true) => t + 1,
                (None, false) => t + 1,
            };
            let hi = match pin {
                Some(at) => at,
                None => self.horizon,
            };
            if lo > hi {
                return false;
            }
            // local - origin <= hi ; origin - local <= -lo
            arcs.push(Hyperarc {
                tail: origin,
                heads: vec![Head { node: local, weight: hi }],
            });
            arcs.push(Hyperarc {
                tail: local,
                heads: vec![Head { node: origin, weight: -lo }],
            });
        }
        let hytn = match Hytn::new(names, arcs) {
            Ok(h) => h,
            Err(_) => return false,
        };
        check_hytn(&hytn).is_consistent()
    }

    /// Terminal check: every scenario compatible with the final history must
    /// be fully executed and feasible, including multi-tail constraints.
    fn all_branches_viable(&self) -> bool {
        let net = &self.g.core;
        for s in self.compatible_scenarios() {
            let mut times: Vec<Option<i64>> = vec![None; net.node_count()];
            for v in 0..net.node_count() {
                let present = s.eval(net.label(v));
                match (present, self.executed[v]) {
                    (true, Some(at)) => times[v] = Some(at),
                    (true, None) => return false,
                    (false, _) => {}
                }
            }
            for c in net.constraints() {
                let Some(tail) = times[c.tail] else { continue };
                let mut live = false;
                let mut sat = false;
                let mut contradiction = false;
                for h in &c.heads {
                    if !s.eval(&h.label) {
                        continue;
                    }
                    if h.node == c.tail {
                        if h.weight < 0 {
                            contradiction = true;
                        }
                        continue;
                    }
                    if let Some(head) = times[h.node] {
                        live = true;
                        if tail >= head - h.weight {
                            sat = true;
                        }
                    }
                }
                if contradiction || (live && !sat) {
                    return false;
                }
            }
            for c in &self.g.multi_tail {
                let Some(head) = times[c.head] else { continue };
                let mut live = false;
                let mut sat = false;
                for tl in &c.tails {
                    if !s.eval(&tl.label) {
                        continue;
                    }
                    if let Some(tail) = times[tl.node] {
                        live = true;
                        if head <= tail + tl.weight {
                            sat = true;
                        }
                    }
                }
                if live && !sat {
                    return false;
                }
            }
        }
        true
    }
}

/// Convenience: checks both viability and dynamicity; true when the strategy
/// is a valid dynamic-consistency witness.
pub fn viable_and_dynamic(
    strategy: &ExecutionStrategy,
    g: &Chytn,
    cap: usize,
) -> Result<bool, DcError> {
    Ok(viable(strategy, g, cap)?.is_empty() && dynamic(strategy, g, cap)?.is_none())
}

#[allow(unused)]
fn _weight_is_integral(w: Weight) -> Weight {
    w
}
