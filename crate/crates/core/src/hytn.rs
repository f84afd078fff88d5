//! Multi-head HyTN consistency checking.
//!
//! The solver runs a lifting (value-iteration) loop over node values
//! `s: V -> [0, F]`: a hyperarc with tail `t` demands
//! `s(t) >= min over heads (s(h) - w(h))`, and violated tails are lifted to
//! the demanded value until either a fixpoint is reached (the fixpoint is a
//! feasible schedule) or a value exceeds the divergence bound `F`, which
//! certifies inconsistency. `F = min(T, (|V|+1)·W)` with `T = Σ|w|`: a finite
//! least-fixpoint value is the worst prefix dip of a simple play through the
//! network, which visits each hyperarc and each node at most once past the
//! start, so both quantities bound it.
//!
//! Certificate extraction reruns the lifting on the sub-network induced by
//! the diverged nodes and records, per node, the hyperarc that forced its
//! last lift. Cycles of that culprit graph are strictly negative: around any
//! cycle the final values telescope into `Σw <= 0`, and equality would force
//! the nodes' last-lift timestamps to decrease forever.

use std::collections::{BTreeMap, VecDeque};

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{InternalError, ModelError};
use crate::network::{Hytn, NodeId, Stn, StnArc, Weight};
use crate::schedule::{Schedule, Time};
use crate::stn::{check_stn, StnVerdict};

/// Negative cycle certificate `(S, C)`: a set of nodes, each with the unique
/// hyperarc of `C` it tails. Valid when `S` is exactly the union of the
/// chosen hyperarcs' supports and every cycle of the induced digraph is
/// strictly negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeCycleCert {
    /// `a(v)`: for each node of `S`, the index of the hyperarc it tails.
    pub arc_of: BTreeMap<NodeId, usize>,
}

impl NegativeCycleCert {
    /// The node set `S`, ascending.
    pub fn members(&self) -> Vec<NodeId> {
        self.arc_of.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.arc_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arc_of.is_empty()
    }
}

/// Outcome of a HyTN consistency check: exactly one branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HytnVerdict {
    /// An integer feasible schedule with `s(t_A) >= min_v (s(v) - w_A(v))`
    /// for every hyperarc, values within `[-T, T]`.
    Consistent(Schedule),
    Inconsistent(NegativeCycleCert),
}

impl HytnVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, HytnVerdict::Consistent(_))
    }
}

struct Indexes {
    /// Hyperarc ids tailed at each node.
    tails_of: Vec<Vec<u32>>,
    /// Hyperarc ids in which each node occurs as a head.
    head_in: Vec<Vec<u32>>,
}

fn build_indexes(h: &Hytn) -> Indexes {
    let n = h.node_count();
    let mut tails_of = vec![Vec::new(); n];
    let mut head_in = vec![Vec::new(); n];
    for (ai, a) in h.hyperarcs().iter().enumerate() {
        tails_of[a.tail].push(ai as u32);
        for hd in &a.heads {
            head_in[hd.node].push(ai as u32);
        }
    }
    Indexes { tails_of, head_in }
}

/// Decides HyTN consistency in pseudo-polynomial time, returning an integer
/// feasible schedule or a negative cycle certificate.
pub fn check_hytn(h: &Hytn) -> HytnVerdict {
    let n = h.node_count();
    let w_max = h.max_abs_weight();
    let total = h.total_abs_weight();
    let bound = total.min((n as Weight + 1).saturating_mul(w_max));

    let idx = build_indexes(h);
    let arcs = h.hyperarcs();

    let mut value: Vec<Weight> = vec![0; n];
    let mut topped: Vec<bool> = vec![false; n];
    // cached per-arc demand and the head that attains it (usize::MAX = stale)
    let mut arc_argmin: Vec<usize> = vec![usize::MAX; arcs.len()];

    let mut queue: VecDeque<u32> = (0..arcs.len() as u32).collect();
    let mut in_queue: Vec<bool> = vec![true; arcs.len()];

    // demand of arc ai under the current values; None = +infinity
    let eval_arc = |ai: usize, value: &[Weight], topped: &[bool]| -> (Option<Weight>, usize) {
        let mut best: Option<Weight> = None;
        let mut best_pos = usize::MAX;
        for (pos, hd) in arcs[ai].heads.iter().enumerate() {
            if topped[hd.node] {
                continue;
            }
            let d = value[hd.node] - hd.weight;
            if best.map_or(true, |b| d < b) {
                best = Some(d);
                best_pos = pos;
            }
        }
        (best.or(Some(Weight::MAX)).filter(|_| best_pos != usize::MAX), best_pos)
    };

    while let Some(ai) = queue.pop_front() {
        let ai = ai as usize;
        in_queue[ai] = false;
        let tail = arcs[ai].tail;
        if topped[tail] {
            continue;
        }
        let (demand, argmin) = eval_arc(ai, &value, &topped);
        arc_argmin[ai] = argmin;
        let lifted = match demand {
            None => {
                // every head diverged: the tail diverges
                topped[tail] = true;
                true
            }
            Some(d) if d > value[tail] => {
                if d > bound {
                    topped[tail] = true;
                } else {
                    value[tail] = d;
                }
                true
            }
            Some(_) => false,
        };
        if lifted {
            // arcs whose cached argmin is the lifted node may now demand more
            for &aj in &idx.head_in[tail] {
                let aj = aj as usize;
                if topped[arcs[aj].tail] || in_queue[aj] {
                    continue;
                }
                let stale = arc_argmin[aj] == usize::MAX
                    || arcs[aj].heads[arc_argmin[aj]].node == tail;
                if stale {
                    in_queue[aj] = true;
                    queue.push_back(aj as u32);
                }
            }
            if topped[tail] {
                // re-examine everything the diverged node feeds
                for &aj in &idx.head_in[tail] {
                    let aj = aj as usize;
                    if !topped[arcs[aj].tail] && !in_queue[aj] {
                        in_queue[aj] = true;
                        queue.push_back(aj as u32);
                    }
                }
            } else {
                // the tail's own arcs were computed against its old value;
                // they stay satisfied because lifting only raises the tail
            }
        }
    }

    if !topped.iter().any(|&t| t) {
        let max = value.iter().copied().max().unwrap_or(0);
        let times = (0..n)
            .map(|v| (v, Rational64::from_integer(value[v] - max)))
            .collect();
        return HytnVerdict::Consistent(Schedule::from_times(times));
    }

    match extract_certificate(h, &idx, &topped) {
        Ok(cert) => HytnVerdict::Inconsistent(cert),
        Err(e) => unreachable!("certificate extraction failed on a diverged instance: {e}"),
    }
}

/// Reruns the lifting on the diverged sub-network, recording for each node
/// the hyperarc behind its most recent lift; those culprit arcs form the
/// certificate.
fn extract_certificate(
    h: &Hytn,
    idx: &Indexes,
    topped: &[bool],
) -> Result<NegativeCycleCert, InternalError> {
    let arcs = h.hyperarcs();
    let mut member: Vec<bool> = topped.to_vec();

    // keep only nodes with at least one hyperarc fully inside the diverged
    // set; the peel terminates because each pass only removes nodes
    let usable = |v: NodeId, member: &[bool]| {
        idx.tails_of[v].iter().any(|&ai| {
            arcs[ai as usize].heads.iter().all(|hd| member[hd.node])
        })
    };
    loop {
        let mut changed = false;
        for v in 0..h.node_count() {
            if member[v] && !usable(v, &member) {
                member[v] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let members: Vec<NodeId> = (0..h.node_count()).filter(|&v| member[v]).collect();
    if members.is_empty() {
        return Err(InternalError(
            "diverged set peeled to nothing during certificate extraction".to_owned(),
        ));
    }

    let sub_arcs: Vec<u32> = (0..arcs.len() as u32)
        .filter(|&ai| {
            let a = &arcs[ai as usize];
            member[a.tail] && a.heads.iter().all(|hd| member[hd.node])
        })
        .collect();

    let mut value: Vec<Weight> = vec![0; h.node_count()];
    let mut culprit: Vec<Option<usize>> = vec![None; h.node_count()];
    let mut uncovered = members.len();

    let mut queue: VecDeque<u32> = sub_arcs.clone().into();
    let mut in_queue: Vec<bool> = vec![false; arcs.len()];
    for &ai in &sub_arcs {
        in_queue[ai as usize] = true;
    }
    // safety valve: the sub-network diverges everywhere, so full coverage
    // arrives within a bounded number of lifts
    let mut fuel: u64 = 0;
    let fuel_cap: u64 = 4 * (sub_arcs.len() as u64 + 4) * (members.len() as u64 + 4)
        * (h.max_abs_weight().unsigned_abs() + 4);

    while let Some(ai) = queue.pop_front() {
        let ai = ai as usize;
        in_queue[ai] = false;
        let a = &arcs[ai];
        let demand = a
            .heads
            .iter()
            .map(|hd| value[hd.node] - hd.weight)
            .min()
            .expect("hyperarcs have heads");
        if demand > value[a.tail] {
            value[a.tail] = demand;
            if culprit[a.tail].is_none() {
                uncovered -= 1;
            }
            culprit[a.tail] = Some(ai);
            if uncovered == 0 {
                break;
            }
            for &aj in &idx.head_in[a.tail] {
                if sub_arcs.binary_search(&aj).is_ok() && !in_queue[aj as usize] {
                    in_queue[aj as usize] = true;
                    queue.push_back(aj);
                }
            }
            // the lifted tail's own arcs may have been processed already and
            // can only be violated again by later head lifts, except its
            // demands never decrease, so nothing to do here
        }
        fuel += 1;
        if fuel > fuel_cap {
            return Err(InternalError(
                "certificate extraction exceeded its lift budget".to_owned(),
            ));
        }
        if queue.is_empty() && uncovered > 0 {
            // every constraint momentarily satisfied: re-seed to keep the
            // divergent lifting moving
            for &aj in &sub_arcs {
                in_queue[aj as usize] = true;
                queue.push_back(aj);
            }
        }
    }

    let arc_of = members
        .iter()
        .map(|&v| {
            culprit[v]
                .map(|ai| (v, ai))
                .ok_or_else(|| InternalError(format!("node #{v} was never lifted")))
        })
        .collect::<Result<BTreeMap<_, _>, _>>()?;
    Ok(NegativeCycleCert { arc_of })
}

/// Per-hyperarc satisfaction report for a (rational) schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatisfactionReport {
    /// One entry per hyperarc, in network order.
    pub per_arc: Vec<bool>,
}

impl SatisfactionReport {
    pub fn all(&self) -> bool {
        self.per_arc.iter().all(|&b| b)
    }
}

/// Evaluates `s(t_A) >= min over heads (s(v) - w_A(v))` for every hyperarc.
/// The schedule must cover every node of the network.
pub fn satisfies(h: &Hytn, s: &Schedule) -> Result<SatisfactionReport, ModelError> {
    for v in 0..h.node_count() {
        if !s.contains(v) {
            return Err(ModelError::MissingScheduleEntry(h.names()[v].clone()));
        }
    }
    let per_arc = h
        .hyperarcs()
        .iter()
        .map(|a| {
            let t = s.get(a.tail).expect("checked above");
            let min = a
                .heads
                .iter()
                .map(|hd| s.get(hd.node).expect("checked above") - Rational64::from_integer(hd.weight))
                .min()
                .expect("hyperarcs have heads");
            t >= min
        })
        .collect();
    Ok(SatisfactionReport { per_arc })
}

/// Reduced slack of hyperarc `arc` under potential `p`:
/// `max over heads (w + p(tail) - p(head))`. The potential is feasible for
/// the network exactly when every hyperarc has nonnegative reduced slack.
pub fn reduced_slack(h: &Hytn, p: &Schedule, arc: usize) -> Result<Time, ModelError> {
    let a = &h.hyperarcs()[arc];
    let pt = p
        .get(a.tail)
        .ok_or_else(|| ModelError::MissingScheduleEntry(h.names()[a.tail].clone()))?;
    a.heads
        .iter()
        .map(|hd| {
            p.get(hd.node)
                .map(|pv| Rational64::from_integer(hd.weight) + pt - pv)
                .ok_or_else(|| ModelError::MissingScheduleEntry(h.names()[hd.node].clone()))
        })
        .try_fold(None::<Time>, |acc, r| {
            r.map(|v| Some(acc.map_or(v, |a| a.max(v))))
        })
        .map(|v| v.expect("hyperarcs have heads"))
}

/// Checks a negative cycle certificate against its network: structural rules
/// first (distinct error), then negativity of every induced cycle, decided by
/// scaling weights so that a nonnegative original cycle becomes a negative
/// one in the transformed digraph and running the STN checker.
pub fn verify_negative_cycle(h: &Hytn, cert: &NegativeCycleCert) -> Result<bool, ModelError> {
    if cert.is_empty() {
        return Err(ModelError::Malformed("empty certificate".to_owned()));
    }
    let arcs = h.hyperarcs();
    // each member tails its own arc, arcs are within bounds
    for (&v, &ai) in &cert.arc_of {
        let a = arcs
            .get(ai)
            .ok_or_else(|| ModelError::Malformed(format!("certificate references hyperarc #{ai}")))?;
        if a.tail != v {
            return Err(ModelError::Malformed(format!(
                "certificate assigns hyperarc #{ai} to node `{}` but its tail is `{}`",
                h.names()[v],
                h.names()[a.tail]
            )));
        }
    }
    // S must be exactly the union of supports
    let mut support: Vec<NodeId> = Vec::new();
    for &ai in cert.arc_of.values() {
        support.push(arcs[ai].tail);
        support.extend(arcs[ai].heads.iter().map(|hd| hd.node));
    }
    support.sort_unstable();
    support.dedup();
    if support != cert.members() {
        return Err(ModelError::Malformed(
            "certificate node set differs from the union of its hyperarcs' supports".to_owned(),
        ));
    }

    // induced digraph: v -> h for every head of a(v); every cycle must be
    // strictly negative, i.e. the transformed graph has no negative cycle
    let k = cert.len() as Weight;
    let mut compact = BTreeMap::new();
    for (i, &v) in cert.members().iter().enumerate() {
        compact.insert(v, i);
    }
    let names = cert
        .members()
        .iter()
        .map(|&v| h.names()[v].clone())
        .collect();
    let mut edges = Vec::new();
    for (&v, &ai) in &cert.arc_of {
        for hd in &arcs[ai].heads {
            edges.push(StnArc {
                tail: compact[&v],
                head: compact[&hd.node],
                weight: -(k + 1) * hd.weight - 1,
            });
        }
    }
    let (stn, _) = Stn::new(names, edges)?;
    Ok(matches!(check_stn(&stn), StnVerdict::Consistent(_)))
}

/// Exhaustive consistency oracle: searches integer schedules over
/// `[-T, T]^V` (complete by the integer-schedule property of consistent
/// HyTNs) with depth-first pruning. Intended for small test instances.
pub fn brute_force_consistent(h: &Hytn) -> bool {
    let n = h.node_count();
    if n == 0 {
        return true;
    }
    let t = h.total_abs_weight();
    let arcs = h.hyperarcs();
    let mut assignment: Vec<Weight> = vec![0; n];

    // a hyperarc can be ruled out once its tail and all heads are assigned;
    // it can be ruled satisfied early if some assigned head already allows it
    fn feasible_so_far(
        arcs: &[crate::network::Hyperarc],
        assignment: &[Weight],
        assigned: usize,
    ) -> bool {
        arcs.iter().all(|a| {
            if a.tail >= assigned {
                return true;
            }
            let mut all_assigned = true;
            for hd in &a.heads {
                if hd.node < assigned {
                    if assignment[a.tail] >= assignment[hd.node] - hd.weight {
                        return true;
                    }
                } else {
                    all_assigned = false;
                }
            }
            !all_assigned
        })
    }

    fn go(
        arcs: &[crate::network::Hyperarc],
        assignment: &mut Vec<Weight>,
        next: usize,
        t: Weight,
    ) -> bool {
        if next == assignment.len() {
            return true;
        }
        for v in -t..=t {
            assignment[next] = v;
            if feasible_so_far(arcs, assignment, next + 1)
                && go(arcs, assignment, next + 1, t)
            {
                return true;
            }
        }
        false
    }

    go(arcs, &mut assignment, 0, t)
}

/// All-zero schedule over a network's nodes.
pub fn zero_schedule(h: &Hytn) -> Schedule {
    (0..h.node_count()).map(|v| (v, Rational64::zero())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{Head, Hyperarc};

    fn hytn(n: usize, arcs: &[(usize, &[(usize, i64)])]) -> Hytn {
        let names = (0..n).map(|i| format!("x{i}")).collect();
        let hyperarcs = arcs
            .iter()
            .map(|&(tail, heads)| Hyperarc {
                tail,
                heads: heads
                    .iter()
                    .map(|&(node, weight)| Head { node, weight })
                    .collect(),
            })
            .collect();
        Hytn::new(names, hyperarcs).unwrap()
    }

    fn sched(times: &[i64]) -> Schedule {
        times
            .iter()
            .enumerate()
            .map(|(v, &t)| (v, Rational64::from_integer(t)))
            .collect()
    }

    /// Three nodes, one hyperarc: x2 >= min(x0, x1).
    fn convexity_counterexample() -> Hytn {
        hytn(3, &[(2, &[(0, 0), (1, 0)])])
    }

    #[test]
    fn admissible_and_inadmissible_schedules_of_the_two_head_arc() {
        let h = convexity_counterexample();
        assert!(satisfies(&h, &sched(&[0, 2, 2])).unwrap().all());
        assert!(satisfies(&h, &sched(&[-2, 0, 2])).unwrap().all());
        let report = satisfies(&h, &sched(&[1, 1, 0])).unwrap();
        assert!(!report.all());
        assert_eq!(report.per_arc, vec![false]);
        assert!(check_hytn(&h).is_consistent());
    }

    #[test]
    fn satisfies_requires_a_total_schedule() {
        let h = convexity_counterexample();
        let mut s = Schedule::new();
        s.set_int(0, 0);
        assert!(satisfies(&h, &s).is_err());
    }

    #[test]
    fn empty_hyperarc_set_is_vacuously_satisfied() {
        let h = hytn(2, &[]);
        assert!(satisfies(&h, &sched(&[5, -3])).unwrap().all());
        assert!(check_hytn(&h).is_consistent());
    }

    #[test]
    fn reduced_slack_matches_hand_arithmetic() {
        let h = convexity_counterexample();
        // p = 0 everywhere: slack = max weight
        let p0 = sched(&[0, 0, 0]);
        assert_eq!(reduced_slack(&h, &p0, 0).unwrap(), Rational64::from_integer(0));
        // p = (0,2,2): max(0 + 2 - 0, 0 + 2 - 2) = 2
        assert_eq!(
            reduced_slack(&h, &sched(&[0, 2, 2]), 0).unwrap(),
            Rational64::from_integer(2)
        );
        // p = (1,1,0): max(0 + 0 - 1, 0 + 0 - 1) = -1
        assert_eq!(
            reduced_slack(&h, &sched(&[1, 1, 0]), 0).unwrap(),
            Rational64::from_integer(-1)
        );
    }

    #[test]
    fn two_node_negative_loop_is_certified() {
        // tail x0 head x1 w=-1 (x0 >= x1+1), tail x1 head x0 w=-1 (x1 >= x0+1)
        let h = hytn(2, &[(0, &[(1, -1)]), (1, &[(0, -1)])]);
        assert!(!brute_force_consistent(&h));
        match check_hytn(&h) {
            HytnVerdict::Inconsistent(cert) => {
                assert_eq!(cert.members(), vec![0, 1]);
                assert_eq!(verify_negative_cycle(&h, &cert), Ok(true));
            }
            _ => panic!("expected inconsistent"),
        }
    }

    #[test]
    fn consistent_verdicts_come_with_feasible_schedules() {
        let h = hytn(
            3,
            &[(2, &[(0, 0), (1, 0)]), (0, &[(1, 3)]), (1, &[(0, 5)])],
        );
        match check_hytn(&h) {
            HytnVerdict::Consistent(s) => {
                assert!(s.is_integer());
                assert!(satisfies(&h, &s).unwrap().all());
                for ai in 0..h.hyperarcs().len() {
                    assert!(reduced_slack(&h, &s, ai).unwrap() >= Rational64::zero());
                }
            }
            _ => panic!("expected consistent"),
        }
    }

    #[test]
    fn zero_weight_two_cycle_is_not_a_negative_cycle() {
        let h = hytn(2, &[(0, &[(1, 0)]), (1, &[(0, 0)])]);
        let cert = NegativeCycleCert {
            arc_of: [(0, 0), (1, 1)].into_iter().collect(),
        };
        assert_eq!(verify_negative_cycle(&h, &cert), Ok(false));
    }

    #[test]
    fn minus_one_two_cycle_is_a_negative_cycle() {
        let h = hytn(2, &[(0, &[(1, -1)]), (1, &[(0, -1)])]);
        let cert = NegativeCycleCert {
            arc_of: [(0, 0), (1, 1)].into_iter().collect(),
        };
        assert_eq!(verify_negative_cycle(&h, &cert), Ok(true));
    }

    #[test]
    fn malformed_certificates_are_structural_errors() {
        let h = hytn(2, &[(0, &[(1, -1)]), (1, &[(0, -1)])]);
        // wrong tail assignment
        let bad = NegativeCycleCert {
            arc_of: [(0, 1), (1, 0)].into_iter().collect(),
        };
        assert!(verify_negative_cycle(&h, &bad).is_err());
        // support mismatch: member 1 missing
        let bad = NegativeCycleCert {
            arc_of: [(0, 0)].into_iter().collect(),
        };
        assert!(verify_negative_cycle(&h, &bad).is_err());
    }

    /// The seven-node cycle figure: every induced cycle is negative when all
    /// weights are -1, checked here against exhaustive cycle enumeration.
    #[test]
    fn seven_node_cycle_structure_with_unit_negative_weights() {
        let heads: [&[usize]; 7] = [
            &[1, 2, 3],
            &[4, 5],
            &[5, 6],
            &[0, 6],
            &[0, 5],
            &[2, 6],
            &[3, 5],
        ];
        let arcs: Vec<(usize, Vec<(usize, i64)>)> = heads
            .iter()
            .enumerate()
            .map(|(tail, hs)| (tail, hs.iter().map(|&h| (h, -1)).collect()))
            .collect();
        let arcs_ref: Vec<(usize, &[(usize, i64)])> =
            arcs.iter().map(|(t, h)| (*t, h.as_slice())).collect();
        let h = hytn(7, &arcs_ref);
        let cert = NegativeCycleCert {
            arc_of: (0..7).map(|v| (v, v)).collect(),
        };

        // oracle: enumerate every simple cycle of the induced digraph and
        // confirm each sums negative
        let adj: Vec<Vec<(usize, i64)>> = (0..7)
            .map(|v| heads[v].iter().map(|&h| (h, -1)).collect())
            .collect();
        fn walk(
            adj: &[Vec<(usize, i64)>],
            start: usize,
            v: usize,
            sum: i64,
            seen: &mut Vec<bool>,
            all_negative: &mut bool,
        ) {
            for &(next, w) in &adj[v] {
                if next == start {
                    if sum + w >= 0 {
                        *all_negative = false;
                    }
                } else if next > start && !seen[next] {
                    seen[next] = true;
                    walk(adj, start, next, sum + w, seen, all_negative);
                    seen[next] = false;
                }
            }
        }
        let mut all_negative = true;
        for start in 0..7 {
            let mut seen = vec![false; 7];
            seen[start] = true;
            walk(&adj, start, start, 0, &mut seen, &mut all_negative);
        }
        assert!(all_negative);
        assert_eq!(verify_negative_cycle(&h, &cert), Ok(true));
    }

    #[test]
    fn one_head_networks_agree_with_the_stn_checker() {
        use crate::stn::check_stn;
        let cases: Vec<Vec<(usize, usize, i64)>> = vec![
            vec![(0, 1, 2), (1, 2, -1), (2, 0, -1)],
            vec![(0, 1, 1), (1, 0, -2)],
            vec![(0, 1, 0), (1, 0, 0)],
        ];
        for arcs in cases {
            let names = (0..3).map(|i| format!("x{i}")).collect::<Vec<_>>();
            let stn_arcs = arcs
                .iter()
                .map(|&(tail, head, weight)| StnArc { tail, head, weight })
                .collect();
            let (stn, _) = Stn::new(names, stn_arcs).unwrap();
            let h = Hytn::from(&stn);
            assert_eq!(
                check_stn(&stn).is_consistent(),
                check_hytn(&h).is_consistent()
            );
        }
    }

    #[test]
    fn random_instances_agree_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=4usize);
            let arc_count = rng.gen_range(0..=4usize);
            let mut arcs = Vec::new();
            for _ in 0..arc_count {
                let tail = rng.gen_range(0..n);
                if n == 1 {
                    continue;
                }
                let mut heads = Vec::new();
                let head_count = rng.gen_range(1..=2usize.min(n - 1));
                while heads.len() < head_count {
                    let v = rng.gen_range(0..n);
                    if v != tail && !heads.iter().any(|h: &Head| h.node == v) {
                        heads.push(Head {
                            node: v,
                            weight: rng.gen_range(-2..=2),
                        });
                    }
                }
                arcs.push(Hyperarc { tail, heads });
            }
            let h = Hytn::new((0..n).map(|i| format!("x{i}")).collect(), arcs).unwrap();
            let verdict = check_hytn(&h);
            assert_eq!(
                verdict.is_consistent(),
                brute_force_consistent(&h),
                "disagreement on {h:?}"
            );
            match verdict {
                HytnVerdict::Consistent(s) => assert!(satisfies(&h, &s).unwrap().all()),
                HytnVerdict::Inconsistent(cert) => {
                    assert_eq!(verify_negative_cycle(&h, &cert), Ok(true));
                }
            }
        }
    }
}
