//! Exact rational time values, schedules and execution strategies.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::ModelError;
use crate::network::NodeId;

/// Exact rational time value.
pub type Time = Rational64;

/// A strictly positive rational reaction time `N/D`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Eps(Rational64);

impl Eps {
    pub fn new(numer: i64, denom: i64) -> Result<Self, ModelError> {
        if numer <= 0 || denom <= 0 {
            return Err(ModelError::Malformed(format!(
                "reaction time must be positive, got {numer}/{denom}"
            )));
        }
        Ok(Eps(Rational64::new(numer, denom)))
    }

    pub fn one() -> Self {
        Eps(Rational64::from_integer(1))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn value(&self) -> Rational64 {
        self.0
    }

    /// Midpoint of two reaction times, in lowest terms.
    pub fn midpoint(&self, other: &Eps) -> Eps {
        Eps((self.0 + other.0) / 2)
    }

    /// Halve the reaction time.
    pub fn halved(&self) -> Eps {
        Eps(self.0 / 2)
    }

    /// Double the reaction time.
    pub fn doubled(&self) -> Eps {
        Eps(self.0 * 2)
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_time(&self.0))
    }
}

impl FromStr for Eps {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v = parse_time(s)?;
        if !v.is_positive() {
            return Err(ModelError::Malformed(format!(
                "reaction time must be positive, got `{s}`"
            )));
        }
        Ok(Eps(v))
    }
}

/// Formats a rational in lowest terms, omitting the denominator when 1.
pub fn format_time(t: &Time) -> String {
    if t.denom() == &1 {
        t.numer().to_string()
    } else {
        format!("{}/{}", t.numer(), t.denom())
    }
}

/// Parses `N` or `N/D` into an exact rational.
pub fn parse_time(s: &str) -> Result<Time, ModelError> {
    let bad = || ModelError::Malformed(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        None => s
            .trim()
            .parse::<i64>()
            .map(Rational64::from_integer)
            .map_err(|_| bad()),
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
    }
}

/// A partial assignment of exact times to nodes. The domain is whatever
/// subset of the network the schedule certifies.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Schedule {
    times: BTreeMap<NodeId, Time>,
}

impl Schedule {
    pub fn new() -> Self {
        Schedule::default()
    }

    pub fn from_times(times: BTreeMap<NodeId, Time>) -> Self {
        Schedule { times }
    }

    pub fn set(&mut self, node: NodeId, t: Time) {
        self.times.insert(node, t);
    }

    pub fn set_int(&mut self, node: NodeId, t: i64) {
        self.times.insert(node, Rational64::from_integer(t));
    }

    pub fn get(&self, node: NodeId) -> Option<Time> {
        self.times.get(&node).copied()
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.times.contains_key(&node)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, Time)> + '_ {
        self.times.iter().map(|(&n, &t)| (n, t))
    }

    /// True when every time value is an integer.
    pub fn is_integer(&self) -> bool {
        self.times.values().all(|t| t.denom() == &1)
    }

    /// Largest denominator appearing among the times (1 when empty).
    pub fn max_denominator(&self) -> i64 {
        self.times.values().map(|t| *t.denom()).max().unwrap_or(1)
    }
}

impl FromIterator<(NodeId, Time)> for Schedule {
    fn from_iter<I: IntoIterator<Item = (NodeId, Time)>>(iter: I) -> Self {
        Schedule {
            times: iter.into_iter().collect(),
        }
    }
}

/// A per-scenario family of schedules: entry `k` is the schedule for the
/// `k`-th scenario in canonical enumeration order, with domain exactly the
/// nodes present under that scenario.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExecutionStrategy {
    per_scenario: Vec<Schedule>,
}

impl ExecutionStrategy {
    pub fn new(per_scenario: Vec<Schedule>) -> Self {
        ExecutionStrategy { per_scenario }
    }

    pub fn scenario_count(&self) -> usize {
        self.per_scenario.len()
    }

    pub fn schedule(&self, scenario_index: usize) -> &Schedule {
        &self.per_scenario[scenario_index]
    }

    pub fn schedules(&self) -> &[Schedule] {
        &self.per_scenario
    }

    pub fn time(&self, scenario_index: usize, node: NodeId) -> Option<Time> {
        self.per_scenario[scenario_index].get(node)
    }

    /// Largest denominator across all scheduled times.
    pub fn max_denominator(&self) -> i64 {
        self.per_scenario
            .iter()
            .map(Schedule::max_denominator)
            .max()
            .unwrap_or(1)
    }
}

/// Zero as a rational time.
pub fn time_zero() -> Time {
    Rational64::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_is_kept_in_lowest_terms() {
        let e = Eps::new(2, 4).unwrap();
        assert_eq!((e.numer(), e.denom()), (1, 2));
        assert!(Eps::new(0, 1).is_err());
        assert!(Eps::new(1, 0).is_err());
    }

    #[test]
    fn rational_text_round_trips() {
        for s in ["1/3", "-7/2", "4", "0"] {
            let t = parse_time(s).unwrap();
            assert_eq!(format_time(&t), s);
        }
        assert_eq!(format_time(&parse_time("2/4").unwrap()), "1/2");
        assert!(parse_time("1/0").is_err());
        assert!(parse_time("x").is_err());
    }

    #[test]
    fn eps_ordering_matches_rational_ordering() {
        let half: Eps = "1/2".parse().unwrap();
        let twelfth: Eps = "1/12".parse().unwrap();
        assert!(twelfth < half);
        assert_eq!(half.halved(), "1/4".parse().unwrap());
        assert_eq!(half.midpoint(&Eps::one()), "3/4".parse().unwrap());
    }
}
