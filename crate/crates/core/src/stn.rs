//! STN consistency checking via Bellman-Ford.
//!
//! A virtual source with zero-weight arcs to every node makes disconnected
//! graphs behave as if rooted, so distances start at 0 everywhere.

use crate::network::{NodeId, Stn, StnArc, Weight};
use crate::schedule::Schedule;

/// Outcome of an STN consistency check: exactly one branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StnVerdict {
    /// An integer feasible potential, which is also a feasible schedule:
    /// `w + p(tail) - p(head) >= 0` on every arc.
    Consistent(Schedule),
    /// An ordered negative cycle: arcs chain head-to-tail and the total
    /// weight is negative.
    NegativeCycle(StnCycle),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StnCycle {
    pub arcs: Vec<StnArc>,
    pub total_weight: Weight,
}

impl StnVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, StnVerdict::Consistent(_))
    }
}

/// Decides STN consistency in O(nm): either an integer feasible potential or
/// a negative cycle.
pub fn check_stn(stn: &Stn) -> StnVerdict {
    let n = stn.node_count();
    let arcs = stn.arcs();
    let mut dist: Vec<Weight> = vec![0; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];

    for _round in 0..n {
        let mut changed = false;
        for (ai, a) in arcs.iter().enumerate() {
            let cand = dist[a.tail] + a.weight;
            if cand < dist[a.head] {
                dist[a.head] = cand;
                pred[a.head] = Some(ai);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // any arc still relaxable lies on or downstream of a negative cycle
    if let Some(start) = arcs
        .iter()
        .filter(|a| dist[a.tail] + a.weight < dist[a.head])
        .map(|a| a.head)
        .min()
    {
        return StnVerdict::NegativeCycle(extract_cycle(arcs, &pred, start, n));
    }

    let times = (0..n)
        .map(|v| (v, num_rational::Rational64::from_integer(dist[v])))
        .collect();
    StnVerdict::Consistent(Schedule::from_times(times))
}

fn extract_cycle(arcs: &[StnArc], pred: &[Option<usize>], start: NodeId, n: usize) -> StnCycle {
    let mut v = start;
    for _ in 0..n {
        v = arcs[pred[v].expect("predecessor exists on relaxation path")].tail;
    }
    // v is now inside the cycle
    let mut cycle_arcs = Vec::new();
    let anchor = v;
    loop {
        let ai = pred[v].expect("cycle nodes have predecessors");
        cycle_arcs.push(arcs[ai]);
        v = arcs[ai].tail;
        if v == anchor {
            break;
        }
    }
    cycle_arcs.reverse();
    let total_weight = cycle_arcs.iter().map(|a| a.weight).sum();
    debug_assert!(total_weight < 0, "extracted cycle must be negative");
    StnCycle {
        arcs: cycle_arcs,
        total_weight,
    }
}

/// True when `p` is feasible for the STN: `w + p(tail) - p(head) >= 0` on
/// every arc. Used as the independent per-arc check for returned potentials.
pub fn is_feasible_potential(stn: &Stn, p: &Schedule) -> bool {
    stn.arcs().iter().all(|a| {
        match (p.get(a.tail), p.get(a.head)) {
            (Some(pt), Some(ph)) => {
                num_rational::Rational64::from_integer(a.weight) + pt - ph
                    >= num_rational::Rational64::from_integer(0)
            }
            _ => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Stn;

    fn stn(n: usize, arcs: &[(usize, usize, i64)]) -> Stn {
        let names = (0..n).map(|i| format!("v{i}")).collect();
        let arcs = arcs
            .iter()
            .map(|&(tail, head, weight)| StnArc { tail, head, weight })
            .collect();
        Stn::new(names, arcs).unwrap().0
    }

    #[test]
    fn single_node_is_consistent_at_zero() {
        match check_stn(&stn(1, &[])) {
            StnVerdict::Consistent(p) => {
                assert_eq!(p.get(0), Some(num_rational::Rational64::from_integer(0)));
            }
            _ => panic!("expected consistent"),
        }
    }

    #[test]
    fn empty_network_is_consistent() {
        assert!(check_stn(&stn(0, &[])).is_consistent());
    }

    #[test]
    fn forced_negative_loop_is_reported_with_its_weight() {
        // u -> v w=1, v -> u w=-2: cycle weight -1
        match check_stn(&stn(2, &[(0, 1, 1), (1, 0, -2)])) {
            StnVerdict::NegativeCycle(c) => {
                assert_eq!(c.total_weight, -1);
                assert_eq!(c.arcs.len(), 2);
                for w in c.arcs.windows(2) {
                    assert_eq!(w[0].head, w[1].tail);
                }
                assert_eq!(c.arcs.last().unwrap().head, c.arcs[0].tail);
            }
            _ => panic!("expected negative cycle"),
        }
    }

    #[test]
    fn fig_4a_restriction_is_consistent_and_the_potential_checks_out() {
        // A=0 B=1 C=2 Op=3
        let g = stn(
            4,
            &[(0, 2, 10), (2, 0, -10), (1, 0, 0), (0, 3, 5), (3, 0, 0), (3, 2, 10)],
        );
        match check_stn(&g) {
            StnVerdict::Consistent(p) => {
                assert!(p.is_integer());
                assert!(is_feasible_potential(&g, &p));
            }
            _ => panic!("expected consistent"),
        }
        // the hand candidate A=0, B=0, C=10, Op=0 is feasible too
        let mut hand = Schedule::new();
        hand.set_int(0, 0);
        hand.set_int(1, 0);
        hand.set_int(2, 10);
        hand.set_int(3, 0);
        assert!(is_feasible_potential(&g, &hand));
    }
}
