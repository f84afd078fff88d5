//! Canonical example networks and strategies shared by tests, docs and the
//! command-line fixtures.

use num_rational::Rational64;

use crate::chytn::{Chytn, ChytnBuilder};
use crate::schedule::{ExecutionStrategy, Schedule};

/// The five-node conditional STN with two propositions (`q` observed only
/// under `p`), in its well-defined rendering.
pub fn gamma0() -> Chytn {
    gamma0_builder().finish().expect("fixture is valid")
}

/// [`gamma0`] extended with the two-head constraint on `B`.
pub fn gamma1() -> Chytn {
    let mut b = gamma0_builder();
    b.hyperarc("B", &[("C", 2, ""), ("Oq", -1, "p")]);
    b.finish().expect("fixture is valid")
}

fn gamma0_builder() -> ChytnBuilder {
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
    b
}

/// The tree-shaped strategy for [`gamma1`] (also viable for [`gamma0`]):
/// everything fixed except `B`, which moves early exactly when `p ∧ ¬q`.
///
/// Scenario order: `(!p!q, !pq, p!q, pq)`.
pub fn gamma1_strategy(g: &Chytn) -> ExecutionStrategy {
    let node = |n: &str| g.node_id(n).expect("fixture node");
    let mut per_scenario = Vec::new();
    for (si, b_time) in [(0usize, 8i64), (1, 8), (2, 3), (3, 8)] {
        let mut s = Schedule::new();
        s.set_int(node("A"), 0);
        s.set_int(node("B"), b_time);
        s.set_int(node("C"), 10);
        s.set_int(node("Op"), 1);
        if si >= 2 {
            s.set_int(node("Oq"), 2);
        }
        per_scenario.push(s);
    }
    ExecutionStrategy::new(per_scenario)
}

/// The three-node network whose viable dynamic strategies are forced to use
/// fractional times; its critical reaction time is 1/2.
pub fn gamma_half() -> Chytn {
    let mut b = ChytnBuilder::new();
    b.node("X1", "").node("Y1", "").node("Z1", "");
    b.prop("X1", "X1").prop("Y1", "Y1");
    b.arc("X1", "Z1", 1, "X1 Y1");
    b.arc("X1", "Y1", 2, "!X1").arc("Y1", "X1", -2, "!X1");
    b.arc("Y1", "Z1", 2, "!Y1").arc("Z1", "Y1", -2, "!Y1");
    b.finish().expect("fixture is valid")
}

/// The half-unit reaction strategy for [`gamma_half`]: `Y1` at 1/2 when `X1`
/// observes true, `Z1` at 1, 5/2 or 4 depending on the branch.
///
/// Scenario order: `(!X1!Y1, !X1 Y1, X1 !Y1, X1 Y1)`.
pub fn gamma_half_strategy(g: &Chytn) -> ExecutionStrategy {
    let node = |n: &str| g.node_id(n).expect("fixture node");
    let entries: [(i64, i64, i64, i64); 4] = [
        // (Y1 numer, Y1 denom, Z1 numer, Z1 denom)
        (2, 1, 4, 1),
        (2, 1, 4, 1),
        (1, 2, 5, 2),
        (1, 2, 1, 1),
    ];
    let per_scenario = entries
        .iter()
        .map(|&(yn, yd, zn, zd)| {
            let mut s = Schedule::new();
            s.set_int(node("X1"), 0);
            s.set(node("Y1"), Rational64::new(yn, yd));
            s.set(node("Z1"), Rational64::new(zn, zd));
            s
        })
        .collect();
    ExecutionStrategy::new(per_scenario)
}
