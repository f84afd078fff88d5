//! Scenarios: total truth assignments over a proposition set.

use crate::error::ResourceError;
use crate::label::{Label, PropId};

/// Default cap on the number of propositions for scenario enumeration.
pub const DEFAULT_SCENARIO_CAP: usize = 20;

/// A total truth assignment over propositions `0..num_props`.
///
/// Stored as a bitmask: bit `p` holds the value of proposition `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scenario {
    bits: u64,
    num_props: u32,
}

impl Scenario {
    pub fn new(values: &[bool]) -> Self {
        assert!(values.len() <= 64);
        let mut bits = 0u64;
        for (p, &v) in values.iter().enumerate() {
            if v {
                bits |= 1 << p;
            }
        }
        Scenario {
            bits,
            num_props: values.len() as u32,
        }
    }

    pub fn num_props(&self) -> usize {
        self.num_props as usize
    }

    pub fn value(&self, prop: PropId) -> bool {
        debug_assert!(prop < self.num_props as usize);
        (self.bits >> prop) & 1 == 1
    }

    /// Truth value of a conjunctive label under this assignment.
    pub fn eval(&self, label: &Label) -> bool {
        label
            .literals()
            .iter()
            .all(|&(p, v)| self.value(p) == v)
    }

    /// Bitmask of propositions on which the two scenarios differ.
    pub fn diff_mask(&self, other: &Scenario) -> u64 {
        debug_assert_eq!(self.num_props, other.num_props);
        self.bits ^ other.bits
    }

    /// The label that pins every proposition to its value under `self`.
    pub fn as_label(&self) -> Label {
        let lits = (0..self.num_props as usize)
            .map(|p| (p, self.value(p)))
            .collect();
        Label::new(lits).expect("one literal per proposition")
    }
}

/// Truth value of label `l` under scenario `s`; the empty label is true.
pub fn eval_label(s: &Scenario, l: &Label) -> bool {
    s.eval(l)
}

/// All `2^n` scenarios over `n` propositions, in lexicographic order over the
/// proposition table (first proposition most significant, false before true).
/// The order is stable across runs.
pub fn enumerate_scenarios(num_props: usize, cap: usize) -> Result<Vec<Scenario>, ResourceError> {
    if num_props > cap {
        return Err(ResourceError::ScenarioCap {
            props: num_props,
            cap,
        });
    }
    let n = num_props as u32;
    let count = 1u64 << n;
    let mut out = Vec::with_capacity(count as usize);
    for k in 0..count {
        // lexicographic: bit of the first proposition is the most significant
        let mut bits = 0u64;
        for p in 0..n {
            if (k >> (n - 1 - p)) & 1 == 1 {
                bits |= 1 << p;
            }
        }
        out.push(Scenario { bits, num_props: n });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_prop_order_is_false_then_true() {
        let s = enumerate_scenarios(1, DEFAULT_SCENARIO_CAP).unwrap();
        assert_eq!(s.len(), 2);
        assert!(!s[0].value(0));
        assert!(s[1].value(0));
    }

    #[test]
    fn empty_proposition_set_has_one_scenario() {
        let s = enumerate_scenarios(0, DEFAULT_SCENARIO_CAP).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].eval(&Label::empty()));
    }

    #[test]
    fn two_props_give_four_scenarios_lexicographically() {
        let s = enumerate_scenarios(2, DEFAULT_SCENARIO_CAP).unwrap();
        let as_pairs: Vec<(bool, bool)> = s.iter().map(|s| (s.value(0), s.value(1))).collect();
        assert_eq!(
            as_pairs,
            vec![(false, false), (false, true), (true, false), (true, true)]
        );
    }

    #[test]
    fn cap_is_enforced() {
        assert!(enumerate_scenarios(21, DEFAULT_SCENARIO_CAP).is_err());
    }

    #[test]
    fn label_evaluation() {
        // s = {p:⊤, q:⊥}, ℓ = p ∧ ¬q
        let s = Scenario::new(&[true, false]);
        let l = Label::new(vec![(0, true), (1, false)]).unwrap();
        assert!(eval_label(&s, &l));
        assert!(eval_label(&s, &Label::empty()));
        let s2 = Scenario::new(&[false, false]);
        assert!(!eval_label(&s2, &Label::new(vec![(0, true)]).unwrap()));
    }
}
