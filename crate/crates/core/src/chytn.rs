//! Conditional hyper temporal networks: labeled nodes, observation events and
//! labeled multi-head (and, for the general variant, multi-tail) constraints.

use std::collections::HashMap;
use std::fmt;

use crate::error::{ModelError, ResourceError};
use crate::label::{Label, PropId};
use crate::network::{Head, Hyperarc, Hytn, NodeId, Weight};
use crate::scenario::{enumerate_scenarios, Scenario};

/// One labeled head of a labeled temporal hyper constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledHead {
    pub node: NodeId,
    pub weight: Weight,
    pub label: Label,
}

/// A labeled multi-head constraint; the one-head case is a standard labeled
/// arc `<head - tail <= w, ℓ>`. A one-head constraint may form a self-loop
/// (`head == tail`): with nonnegative weight it is vacuous, with negative
/// weight it is an unconditional contradiction in the scenarios where its
/// label holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledConstraint {
    pub tail: NodeId,
    pub heads: Vec<LabeledHead>,
}

impl LabeledConstraint {
    pub fn is_standard(&self) -> bool {
        self.heads.len() == 1
    }

    pub fn cardinality(&self) -> usize {
        self.heads.len() + 1
    }
}

/// A labeled multi-tail constraint `(T_A, h_A)`; only carried by
/// [`GeneralChytn`] and only consumed by the brute-force oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMultiTail {
    pub head: NodeId,
    pub tails: Vec<LabeledHead>,
}

impl LabeledMultiTail {
    pub fn cardinality(&self) -> usize {
        self.tails.len() + 1
    }
}

/// A conditional (multi-head) hyper temporal network. A CSTN is the special
/// case in which every constraint is standard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chytn {
    names: Vec<String>,
    labels: Vec<Label>,
    props: Vec<String>,
    observer: Vec<NodeId>,
    obs_prop: Vec<Option<PropId>>,
    constraints: Vec<LabeledConstraint>,
}

/// A CHyTN that may additionally carry multi-tail constraints. Produced by
/// generators; rejected by the DC pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralChytn {
    pub core: Chytn,
    pub multi_tail: Vec<LabeledMultiTail>,
}

impl From<Chytn> for GeneralChytn {
    fn from(core: Chytn) -> Self {
        GeneralChytn {
            core,
            multi_tail: Vec::new(),
        }
    }
}

impl Chytn {
    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v]
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn label(&self, v: NodeId) -> &Label {
        &self.labels[v]
    }

    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn prop_id(&self, name: &str) -> Option<PropId> {
        self.props.iter().position(|p| p == name)
    }

    /// Observation event `O(p)`.
    pub fn observer(&self, p: PropId) -> NodeId {
        self.observer[p]
    }

    /// The proposition observed at `v`, when `v` is an observation event.
    pub fn observed_prop(&self, v: NodeId) -> Option<PropId> {
        self.obs_prop[v]
    }

    pub fn constraints(&self) -> &[LabeledConstraint] {
        &self.constraints
    }

    pub fn is_cstn(&self) -> bool {
        self.constraints.iter().all(LabeledConstraint::is_standard)
    }

    /// Size measure `m_A` over the labeled constraints.
    pub fn size(&self) -> usize {
        self.constraints.iter().map(LabeledConstraint::cardinality).sum()
    }

    pub fn max_abs_weight(&self) -> Weight {
        self.constraints
            .iter()
            .flat_map(|c| c.heads.iter())
            .map(|h| h.weight.abs())
            .max()
            .unwrap_or(0)
    }

    /// All scenarios over this network's propositions, capped.
    pub fn scenarios(&self, cap: usize) -> Result<Vec<Scenario>, ResourceError> {
        enumerate_scenarios(self.props.len(), cap)
    }

    /// Nodes present under scenario `s`.
    pub fn present_nodes(&self, s: &Scenario) -> Vec<NodeId> {
        (0..self.node_count())
            .filter(|&v| s.eval(&self.labels[v]))
            .collect()
    }

    /// Difference set Δ(s1; s2): observation events present under `s1` whose
    /// proposition the two scenarios disagree on. Asymmetric by definition.
    pub fn delta(&self, s1: &Scenario, s2: &Scenario) -> Vec<NodeId> {
        let mut out = Vec::new();
        for p in 0..self.props.len() {
            if s1.value(p) != s2.value(p) {
                let obs = self.observer[p];
                if s1.eval(&self.labels[obs]) {
                    out.push(obs);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The restriction of this network with respect to a scenario: nodes with
    /// a true label, constraints keeping exactly the heads whose label holds.
    pub fn restriction(&self, s: &Scenario) -> Restriction {
        let mut to_restricted = vec![None; self.node_count()];
        let mut base_of = Vec::new();
        let mut names = Vec::new();
        for v in 0..self.node_count() {
            if s.eval(&self.labels[v]) {
                to_restricted[v] = Some(base_of.len());
                base_of.push(v);
                names.push(self.names[v].clone());
            }
        }
        let mut hyperarcs = Vec::new();
        let mut arc_sources = Vec::new();
        let mut contradictions = Vec::new();
        for (ci, c) in self.constraints.iter().enumerate() {
            let Some(tail) = to_restricted[c.tail] else {
                continue;
            };
            let mut heads = Vec::new();
            for h in &c.heads {
                if !s.eval(&h.label) {
                    continue;
                }
                if h.node == c.tail {
                    // surviving self-loop: vacuous if w >= 0, contradiction otherwise
                    if h.weight < 0 {
                        contradictions.push(SelfLoopContradiction {
                            node: tail,
                            base: c.tail,
                            weight: h.weight,
                            constraint: ci,
                        });
                    }
                    continue;
                }
                match to_restricted[h.node] {
                    Some(node) => heads.push(Head {
                        node,
                        weight: h.weight,
                    }),
                    // head label true but head node absent: WD1' breach,
                    // tolerated here by dropping the head
                    None => continue,
                }
            }
            if heads.is_empty() {
                continue;
            }
            arc_sources.push(ci);
            hyperarcs.push(Hyperarc { tail, heads });
        }
        let hytn = Hytn::new(names, hyperarcs).expect("restriction is structurally valid");
        Restriction {
            hytn,
            to_restricted,
            base_of,
            arc_sources,
            contradictions,
        }
    }
}

/// A surviving negative self-loop: an unconditional contradiction in the
/// restricted network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfLoopContradiction {
    /// Restricted node id.
    pub node: NodeId,
    /// Base node id in the owning CHyTN.
    pub base: NodeId,
    pub weight: Weight,
    /// Index of the source constraint.
    pub constraint: usize,
}

/// The restriction `Γ+_s` of a CHyTN: a HyTN over the present nodes, plus any
/// surviving negative self-loops, which make the restriction inconsistent.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub hytn: Hytn,
    /// Base node id -> restricted node id.
    pub to_restricted: Vec<Option<NodeId>>,
    /// Restricted node id -> base node id.
    pub base_of: Vec<NodeId>,
    /// Restricted hyperarc index -> source constraint index.
    pub arc_sources: Vec<usize>,
    pub contradictions: Vec<SelfLoopContradiction>,
}

impl Restriction {
    /// True when no contradiction survived; the HyTN alone then captures the
    /// restriction exactly.
    pub fn is_pure(&self) -> bool {
        self.contradictions.is_empty()
    }
}

impl GeneralChytn {
    pub fn size(&self) -> usize {
        self.core.size()
            + self
                .multi_tail
                .iter()
                .map(LabeledMultiTail::cardinality)
                .sum::<usize>()
    }

    pub fn has_multi_tail(&self) -> bool {
        !self.multi_tail.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

/// String-based builder used by parsers, generators and tests.
#[derive(Debug, Clone, Default)]
pub struct ChytnBuilder {
    nodes: Vec<(String, String)>,
    props: Vec<(String, String)>,
    constraints: Vec<(String, Vec<(String, Weight, String)>)>,
    multi_tail: Vec<(Vec<(String, Weight, String)>, String)>,
}

impl ChytnBuilder {
    pub fn new() -> Self {
        ChytnBuilder::default()
    }

    /// Adds a node with a label given in label syntax (`""` for the empty label).
    pub fn node(&mut self, id: &str, label: &str) -> &mut Self {
        self.nodes.push((id.to_owned(), label.to_owned()));
        self
    }

    /// Declares a proposition observed at the given node.
    pub fn prop(&mut self, name: &str, observation: &str) -> &mut Self {
        self.props.push((name.to_owned(), observation.to_owned()));
        self
    }

    /// Adds a standard labeled arc `<head - tail <= w, ℓ>`.
    pub fn arc(&mut self, tail: &str, head: &str, weight: Weight, label: &str) -> &mut Self {
        self.constraints.push((
            tail.to_owned(),
            vec![(head.to_owned(), weight, label.to_owned())],
        ));
        self
    }

    /// Adds the two arcs of an interval constraint `head - tail ∈ [lo, hi]`.
    pub fn interval(&mut self, tail: &str, head: &str, lo: Weight, hi: Weight, label: &str) -> &mut Self {
        self.arc(tail, head, hi, label);
        self.arc(head, tail, -lo, label);
        self
    }

    /// Adds a multi-head constraint.
    pub fn hyperarc(&mut self, tail: &str, heads: &[(&str, Weight, &str)]) -> &mut Self {
        self.constraints.push((
            tail.to_owned(),
            heads
                .iter()
                .map(|(n, w, l)| ((*n).to_owned(), *w, (*l).to_owned()))
                .collect(),
        ));
        self
    }

    /// Adds a multi-tail constraint (general networks only).
    pub fn multi_tail(&mut self, tails: &[(&str, Weight, &str)], head: &str) -> &mut Self {
        self.multi_tail.push((
            tails
                .iter()
                .map(|(n, w, l)| ((*n).to_owned(), *w, (*l).to_owned()))
                .collect(),
            head.to_owned(),
        ));
        self
    }

    pub fn finish(&self) -> Result<Chytn, ModelError> {
        let g = self.finish_general()?;
        if g.has_multi_tail() {
            return Err(ModelError::Malformed(
                "multi-tail constraints require a general network".to_owned(),
            ));
        }
        Ok(g.core)
    }

    pub fn finish_general(&self) -> Result<GeneralChytn, ModelError> {
        let names: Vec<String> = self.nodes.iter().map(|(n, _)| n.clone()).collect();
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.clone(), i).is_some() {
                return Err(ModelError::DuplicateNode(n.clone()));
            }
        }
        let mut props: Vec<String> = self.props.iter().map(|(p, _)| p.clone()).collect();
        props.sort_unstable();
        props.dedup();
        if props.len() != self.props.len() {
            return Err(ModelError::DuplicateProposition(
                "a proposition was declared twice".to_owned(),
            ));
        }

        let node_id = |name: &str| -> Result<NodeId, ModelError> {
            seen.get(name)
                .copied()
                .ok_or_else(|| ModelError::UnknownNode(name.to_owned()))
        };

        let mut observer = vec![usize::MAX; props.len()];
        let mut obs_prop = vec![None; names.len()];
        for (pname, onode) in &self.props {
            let p = props.iter().position(|x| x == pname).expect("sorted prop");
            let v = node_id(onode)?;
            observer[p] = v;
            if let Some(q) = obs_prop[v] {
                return Err(ModelError::ObservationNotBijective(format!(
                    "node `{}` observes both `{}` and `{}`",
                    onode, props[q], pname
                )));
            }
            obs_prop[v] = Some(p);
        }

        let labels = self
            .nodes
            .iter()
            .map(|(_, l)| Label::parse(l, &props))
            .collect::<Result<Vec<_>, _>>()?;

        let mut constraints = Vec::with_capacity(self.constraints.len());
        for (tail, heads) in &self.constraints {
            let tail = node_id(tail)?;
            let mut out = Vec::with_capacity(heads.len());
            for (head, weight, label) in heads {
                out.push(LabeledHead {
                    node: node_id(head)?,
                    weight: *weight,
                    label: Label::parse(label, &props)?,
                });
            }
            if out.is_empty() {
                return Err(ModelError::EmptyHeads(names[tail].clone()));
            }
            if out.len() > 1 && out.iter().any(|h| h.node == tail) {
                return Err(ModelError::TailAmongHeads(names[tail].clone()));
            }
            if out.len() == 1 && out[0].node == tail && out[0].weight < 0 && names.len() == 1 {
                return Err(ModelError::DegenerateSelfLoop(names[tail].clone()));
            }
            constraints.push(LabeledConstraint { tail, heads: out });
        }

        let mut multi_tail = Vec::with_capacity(self.multi_tail.len());
        for (tails, head) in &self.multi_tail {
            let head = node_id(head)?;
            let mut out = Vec::with_capacity(tails.len());
            for (tnode, weight, label) in tails {
                out.push(LabeledHead {
                    node: node_id(tnode)?,
                    weight: *weight,
                    label: Label::parse(label, &props)?,
                });
            }
            if out.is_empty() {
                return Err(ModelError::EmptyHeads(names[head].clone()));
            }
            if out.iter().any(|t| t.node == head) {
                return Err(ModelError::TailAmongHeads(names[head].clone()));
            }
            multi_tail.push(LabeledMultiTail { head, tails: out });
        }

        Ok(GeneralChytn {
            core: Chytn {
                names,
                labels,
                props,
                observer,
                obs_prop,
                constraints,
            },
            multi_tail,
        })
    }
}

// ---------------------------------------------------------------------------
// Well-definedness validation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WdRule {
    Wd1,
    Wd2,
    Wd3,
}

impl fmt::Display for WdRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WdRule::Wd1 => write!(f, "WD1"),
            WdRule::Wd2 => write!(f, "WD2"),
            WdRule::Wd3 => write!(f, "WD3"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WdViolation {
    pub rule: WdRule,
    pub constraint: Option<usize>,
    pub node: Option<NodeId>,
    pub prop: Option<PropId>,
    pub message: String,
}

impl fmt::Display for WdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.message)
    }
}

/// Checks the well-definedness rules; an empty list means the network is
/// well defined. WD2's separation requirement is read structurally: some
/// constraint `<O_p - u <= w, L(u)>` with `w <= -1` must exist (integer
/// weights make -1 the smallest usable witness for the paper's strict `ε`).
pub fn validate_wd(g: &Chytn) -> Vec<WdViolation> {
    validate_wd_general(&GeneralChytn {
        core: g.clone(),
        multi_tail: Vec::new(),
    })
}

/// Well-definedness for general networks: the same rules, with the head-label
/// conditions applied to multi-tail constraints per tail.
pub fn validate_wd_general(g: &GeneralChytn) -> Vec<WdViolation> {
    let net = &g.core;
    let mut out = Vec::new();

    let endpoint_rule = |ci: usize, kind: &str, lbl: &Label, a: NodeId, b: NodeId, out: &mut Vec<WdViolation>| {
        for (node, role) in [(a, "tail"), (b, "head")] {
            if !lbl.subsumes(&net.labels[node]) {
                out.push(WdViolation {
                    rule: WdRule::Wd1,
                    constraint: Some(ci),
                    node: Some(node),
                    prop: None,
                    message: format!(
                        "{kind} constraint #{ci}: label `{}` does not subsume the label of {role} `{}`",
                        lbl.display(&net.props),
                        net.names[node]
                    ),
                });
            }
        }
    };

    for (ci, c) in net.constraints.iter().enumerate() {
        for h in &c.heads {
            endpoint_rule(ci, "multi-head", &h.label, c.tail, h.node, &mut out);
            for &(p, _) in h.label.literals() {
                let obs = net.observer[p];
                if !h.label.subsumes(&net.labels[obs]) {
                    out.push(WdViolation {
                        rule: WdRule::Wd3,
                        constraint: Some(ci),
                        node: Some(obs),
                        prop: Some(p),
                        message: format!(
                            "constraint #{ci}: label `{}` mentions `{}` but does not subsume the label of its observation event",
                            h.label.display(&net.props),
                            net.props[p]
                        ),
                    });
                }
            }
        }
    }
    for (mi, c) in g.multi_tail.iter().enumerate() {
        let ci = net.constraints.len() + mi;
        for t in &c.tails {
            endpoint_rule(ci, "multi-tail", &t.label, t.node, c.head, &mut out);
            for &(p, _) in t.label.literals() {
                let obs = net.observer[p];
                if !t.label.subsumes(&net.labels[obs]) {
                    out.push(WdViolation {
                        rule: WdRule::Wd3,
                        constraint: Some(ci),
                        node: Some(obs),
                        prop: Some(p),
                        message: format!(
                            "multi-tail constraint #{mi}: label `{}` mentions `{}` but does not subsume the label of its observation event",
                            t.label.display(&net.props),
                            net.props[p]
                        ),
                    });
                }
            }
        }
    }

    // WD2: each node whose label mentions p must be observed after O_p.
    for u in 0..net.node_count() {
        let lu = &net.labels[u];
        for &(p, _) in lu.literals() {
            let obs = net.observer[p];
            if !lu.subsumes(&net.labels[obs]) {
                out.push(WdViolation {
                    rule: WdRule::Wd2,
                    constraint: None,
                    node: Some(u),
                    prop: Some(p),
                    message: format!(
                        "label of `{}` mentions `{}` but does not subsume the label of `{}`",
                        net.names[u], net.props[p], net.names[obs]
                    ),
                });
            }
            let has_separation = net.constraints.iter().any(|c| {
                c.is_standard()
                    && c.tail == u
                    && c.heads[0].node == obs
                    && c.heads[0].weight <= -1
                    && c.heads[0].label == *lu
            });
            if !has_separation {
                out.push(WdViolation {
                    rule: WdRule::Wd2,
                    constraint: None,
                    node: Some(u),
                    prop: Some(p),
                    message: format!(
                        "no constraint schedules `{}` strictly before `{}` (missing `<{} - {} <= -1, {}>`)",
                        net.names[obs],
                        net.names[u],
                        net.names[obs],
                        net.names[u],
                        lu.display(&net.props)
                    ),
                });
            }
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::DEFAULT_SCENARIO_CAP;

    /// The two-proposition conditional network used throughout the paper's
    /// figures, in its well-defined rendering: the label of the `B -> C` arc
    /// carries `p` alongside `q` (q is only ever observed when p holds) and
    /// the labeled observation event gets its separation arc.
    pub(crate) fn gamma0() -> Chytn {
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

    fn scen(g: &Chytn, text: &str) -> Scenario {
        let mut values = vec![false; g.props().len()];
        for tok in text.split_whitespace() {
            let (v, name) = match tok.strip_prefix('!') {
                Some(rest) => (false, rest),
                None => (true, tok),
            };
            values[g.prop_id(name).unwrap()] = v;
        }
        Scenario::new(&values)
    }

    #[test]
    fn gamma0_is_well_defined() {
        assert!(validate_wd(&gamma0()).is_empty());
    }

    #[test]
    fn wd1_breach_is_reported_when_an_arc_label_is_weakened() {
        // relabel the <Oq - A <= 9, p> arc to the empty label: it no longer
        // subsumes L(Oq) = p
        let mut b = ChytnBuilder::new();
        b.node("A", "").node("B", "").node("C", "");
        b.node("Op", "").node("Oq", "p");
        b.prop("p", "Op").prop("q", "Oq");
        b.arc("A", "C", 10, "").arc("C", "A", -10, "");
        b.arc("A", "B", 3, "p !q").arc("B", "A", 0, "");
        b.arc("A", "Op", 5, "").arc("Op", "A", 0, "");
        b.arc("A", "Oq", 9, "").arc("Oq", "A", 0, "p");
        b.arc("B", "C", 2, "p q").arc("Op", "C", 10, "");
        b.arc("Oq", "Op", -1, "p");
        let g = b.finish().unwrap();
        let violations = validate_wd(&g);
        assert!(violations.iter().any(|v| v.rule == WdRule::Wd1));
    }

    #[test]
    fn wd2_breach_when_the_separation_arc_is_missing() {
        let mut b = ChytnBuilder::new();
        b.node("Op", "").node("u", "p");
        b.prop("p", "Op");
        let g = b.finish().unwrap();
        let violations = validate_wd(&g);
        assert!(violations.iter().any(|v| v.rule == WdRule::Wd2));
    }

    #[test]
    fn restriction_of_gamma0_matches_the_all_false_scenario() {
        let g = gamma0();
        let s = scen(&g, "!p !q");
        let r = g.restriction(&s);
        let names: Vec<&str> = r.hytn.names().iter().map(String::as_str).collect();
        assert_eq!(names, vec!["A", "B", "C", "Op"]);
        // expected arcs: A->C 10, C->A -10, B->A 0, A->Op 5, Op->A 0, Op->C 10
        let mut arcs: Vec<(String, String, i64)> = r
            .hytn
            .hyperarcs()
            .iter()
            .map(|a| {
                (
                    r.hytn.names()[a.tail].clone(),
                    r.hytn.names()[a.heads[0].node].clone(),
                    a.heads[0].weight,
                )
            })
            .collect();
        arcs.sort();
        let mut expected = vec![
            ("A", "C", 10),
            ("C", "A", -10),
            ("B", "A", 0),
            ("A", "Op", 5),
            ("Op", "A", 0),
            ("Op", "C", 10),
        ]
        .into_iter()
        .map(|(a, b, w)| (a.to_owned(), b.to_owned(), w))
        .collect::<Vec<_>>();
        expected.sort();
        assert_eq!(arcs, expected);
        assert!(r.is_pure());
    }

    #[test]
    fn unlabeled_network_restricts_identically_under_every_scenario() {
        let mut b = ChytnBuilder::new();
        b.node("x", "").node("y", "");
        b.prop("p", "x");
        b.arc("x", "y", 4, "").arc("y", "x", -1, "");
        let g = b.finish().unwrap();
        for s in g.scenarios(DEFAULT_SCENARIO_CAP).unwrap() {
            let r = g.restriction(&s);
            assert_eq!(r.hytn.node_count(), 2);
            assert_eq!(r.hytn.hyperarcs().len(), 2);
        }
    }

    #[test]
    fn delta_is_asymmetric_on_gamma0() {
        let g = gamma0();
        let s1 = scen(&g, "p q");
        let s2 = scen(&g, "!p !q");
        let d12: Vec<&str> = g.delta(&s1, &s2).iter().map(|&v| g.name(v)).collect();
        let d21: Vec<&str> = g.delta(&s2, &s1).iter().map(|&v| g.name(v)).collect();
        assert_eq!(d12, vec!["Op", "Oq"]);
        assert_eq!(d21, vec!["Op"]);
        assert!(g.delta(&s1, &s1).is_empty());
    }

    #[test]
    fn negative_self_loops_surface_as_contradictions() {
        let mut b = ChytnBuilder::new();
        b.node("c", "").node("x", "");
        b.prop("p", "x");
        b.arc("c", "c", -1, "p");
        b.arc("c", "c", 0, "");
        let g = b.finish().unwrap();
        let s_true = scen(&g, "p");
        let s_false = scen(&g, "!p");
        assert_eq!(g.restriction(&s_true).contradictions.len(), 1);
        assert!(g.restriction(&s_false).is_pure());
        // the vacuous nonnegative loop never materializes
        assert!(g.restriction(&s_false).hytn.hyperarcs().is_empty());
    }
}
