//! Unconditional network structures: STNs and multi-head HyTNs.

use std::collections::HashMap;

use crate::error::ModelError;

/// Index into a network's node table.
pub type NodeId = usize;

/// Weights are integer time units.
pub type Weight = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StnArc {
    pub tail: NodeId,
    pub head: NodeId,
    pub weight: Weight,
}

/// A simple temporal network: arc `(tail, head, w)` constrains
/// `schedule(head) - schedule(tail) <= w`.
#[derive(Debug, Clone, Default)]
pub struct Stn {
    names: Vec<String>,
    arcs: Vec<StnArc>,
}

impl Stn {
    /// Builds an STN, rejecting self-loops and merging parallel arcs by
    /// keeping the tightest weight. Merges are reported in `notes`.
    pub fn new(names: Vec<String>, raw_arcs: Vec<StnArc>) -> Result<(Self, Vec<String>), ModelError> {
        check_unique(&names)?;
        let mut notes = Vec::new();
        let mut by_pair: HashMap<(NodeId, NodeId), usize> = HashMap::new();
        let mut arcs: Vec<StnArc> = Vec::with_capacity(raw_arcs.len());
        for arc in raw_arcs {
            if arc.tail >= names.len() || arc.head >= names.len() {
                return Err(ModelError::UnknownNode(format!(
                    "arc endpoint #{}",
                    arc.tail.max(arc.head)
                )));
            }
            if arc.tail == arc.head {
                return Err(ModelError::Malformed(format!(
                    "self-loop on `{}`",
                    names[arc.tail]
                )));
            }
            match by_pair.get(&(arc.tail, arc.head)) {
                Some(&i) => {
                    if arc.weight < arcs[i].weight {
                        notes.push(format!(
                            "merged parallel arc {} -> {}: kept {} over {}",
                            names[arc.tail], names[arc.head], arc.weight, arcs[i].weight
                        ));
                        arcs[i].weight = arc.weight;
                    } else {
                        notes.push(format!(
                            "merged parallel arc {} -> {}: kept {} over {}",
                            names[arc.tail], names[arc.head], arcs[i].weight, arc.weight
                        ));
                    }
                }
                None => {
                    by_pair.insert((arc.tail, arc.head), arcs.len());
                    arcs.push(arc);
                }
            }
        }
        Ok((Stn { names, arcs }, notes))
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn arcs(&self) -> &[StnArc] {
        &self.arcs
    }
}

/// One head of a multi-head hyperarc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Head {
    pub node: NodeId,
    pub weight: Weight,
}

/// A multi-head hyperarc: satisfied when at least one head `v` satisfies
/// `schedule(tail) >= schedule(v) - weight(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperarc {
    pub tail: NodeId,
    pub heads: Vec<Head>,
}

impl Hyperarc {
    /// Cardinality `|A| = |H_A ∪ {t_A}|`.
    pub fn cardinality(&self) -> usize {
        self.heads.len() + 1
    }
}

/// A multi-head hyper temporal network.
#[derive(Debug, Clone, Default)]
pub struct Hytn {
    names: Vec<String>,
    hyperarcs: Vec<Hyperarc>,
}

impl Hytn {
    pub fn new(names: Vec<String>, hyperarcs: Vec<Hyperarc>) -> Result<Self, ModelError> {
        check_unique(&names)?;
        for arc in &hyperarcs {
            if arc.heads.is_empty() {
                return Err(ModelError::EmptyHeads(
                    names
                        .get(arc.tail)
                        .cloned()
                        .unwrap_or_else(|| format!("#{}", arc.tail)),
                ));
            }
            if arc.tail >= names.len() {
                return Err(ModelError::UnknownNode(format!("#{}", arc.tail)));
            }
            for h in &arc.heads {
                if h.node >= names.len() {
                    return Err(ModelError::UnknownNode(format!("#{}", h.node)));
                }
                if h.node == arc.tail {
                    return Err(ModelError::TailAmongHeads(names[arc.tail].clone()));
                }
            }
        }
        Ok(Hytn { names, hyperarcs })
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn hyperarcs(&self) -> &[Hyperarc] {
        &self.hyperarcs
    }

    /// Size measure `m_A = Σ |A|`.
    pub fn size(&self) -> usize {
        self.hyperarcs.iter().map(Hyperarc::cardinality).sum()
    }

    /// Maximum absolute weight `W` (0 for a network without hyperarcs).
    pub fn max_abs_weight(&self) -> Weight {
        self.hyperarcs
            .iter()
            .flat_map(|a| a.heads.iter())
            .map(|h| h.weight.abs())
            .max()
            .unwrap_or(0)
    }

    /// `T = Σ |w|` over all heads of all hyperarcs.
    pub fn total_abs_weight(&self) -> Weight {
        self.hyperarcs
            .iter()
            .flat_map(|a| a.heads.iter())
            .map(|h| h.weight.abs())
            .sum()
    }

    /// True when every hyperarc has exactly one head.
    pub fn is_standard(&self) -> bool {
        self.hyperarcs.iter().all(|a| a.heads.len() == 1)
    }

    /// View of a one-head-only HyTN as an STN. Parallel arcs are kept as-is
    /// by mapping each hyperarc to one arc, so this does not merge weights.
    pub fn as_stn(&self) -> Option<Stn> {
        if !self.is_standard() {
            return None;
        }
        let arcs = self
            .hyperarcs
            .iter()
            .map(|a| StnArc {
                tail: a.tail,
                head: a.heads[0].node,
                weight: a.heads[0].weight,
            })
            .collect();
        Some(Stn {
            names: self.names.clone(),
            arcs,
        })
    }
}

/// An STN is the one-head special case of a HyTN.
impl From<&Stn> for Hytn {
    fn from(stn: &Stn) -> Self {
        Hytn {
            names: stn.names.to_vec(),
            hyperarcs: stn
                .arcs
                .iter()
                .map(|a| Hyperarc {
                    tail: a.tail,
                    heads: vec![Head {
                        node: a.head,
                        weight: a.weight,
                    }],
                })
                .collect(),
        }
    }
}

fn check_unique(names: &[String]) -> Result<(), ModelError> {
    let mut seen = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if let Some(_prev) = seen.insert(n.as_str(), i) {
            return Err(ModelError::DuplicateNode(n.clone()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    #[test]
    fn parallel_arcs_keep_the_tightest_weight() {
        let (stn, notes) = Stn::new(
            names(2),
            vec![
                StnArc { tail: 0, head: 1, weight: 5 },
                StnArc { tail: 0, head: 1, weight: 3 },
            ],
        )
        .unwrap();
        assert_eq!(stn.arcs().len(), 1);
        assert_eq!(stn.arcs()[0].weight, 3);
        assert_eq!(notes.len(), 1);
    }

    #[test]
    fn stn_rejects_self_loops() {
        assert!(Stn::new(names(1), vec![StnArc { tail: 0, head: 0, weight: 0 }]).is_err());
    }

    #[test]
    fn hytn_rejects_tail_among_heads_and_empty_heads() {
        let arc = Hyperarc {
            tail: 0,
            heads: vec![Head { node: 0, weight: 1 }],
        };
        assert!(Hytn::new(names(2), vec![arc]).is_err());
        let empty = Hyperarc { tail: 0, heads: vec![] };
        assert!(Hytn::new(names(2), vec![empty]).is_err());
    }

    #[test]
    fn size_counts_cardinalities() {
        let h = Hytn::new(
            names(3),
            vec![Hyperarc {
                tail: 2,
                heads: vec![Head { node: 0, weight: 0 }, Head { node: 1, weight: 0 }],
            }],
        )
        .unwrap();
        assert_eq!(h.size(), 3);
    }
}
