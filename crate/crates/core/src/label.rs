//! Conjunctive labels over boolean propositions.
//!
//! A label is a conjunction of literals; the empty conjunction is always true.
//! Propositions are referenced by index into the owning network's proposition
//! table, kept sorted so that labels have a canonical form.

use std::fmt;

use crate::error::ModelError;

/// Index into a network's proposition table.
pub type PropId = usize;

/// A conjunction of literals. Internally sorted by proposition with at most
/// one literal per proposition; the empty label is the always-true label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Label {
    literals: Vec<(PropId, bool)>,
}

impl Label {
    /// The empty (always true) label.
    pub fn empty() -> Self {
        Label::default()
    }

    /// Builds a label from literals, rejecting contradictory conjunctions.
    pub fn new(mut literals: Vec<(PropId, bool)>) -> Result<Self, ModelError> {
        literals.sort_unstable();
        literals.dedup();
        for w in literals.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(ModelError::ContradictoryLabel(format!("prop #{}", w[0].0)));
            }
        }
        Ok(Label { literals })
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn literals(&self) -> &[(PropId, bool)] {
        &self.literals
    }

    pub fn polarity_of(&self, prop: PropId) -> Option<bool> {
        self.literals
            .iter()
            .find(|(p, _)| *p == prop)
            .map(|(_, v)| *v)
    }

    pub fn mentions(&self, prop: PropId) -> bool {
        self.polarity_of(prop).is_some()
    }

    /// True when this label implies `other`, i.e. `other`'s literals are a
    /// subset of this label's literals.
    pub fn subsumes(&self, other: &Label) -> bool {
        other
            .literals
            .iter()
            .all(|lit| self.literals.binary_search(lit).is_ok())
    }

    /// True when the conjunction of both labels is satisfiable.
    pub fn consistent_with(&self, other: &Label) -> bool {
        let mut a = self.literals.iter().peekable();
        let mut b = other.literals.iter().peekable();
        while let (Some(&&(pa, va)), Some(&&(pb, vb))) = (a.peek(), b.peek()) {
            if pa < pb {
                a.next();
            } else if pb < pa {
                b.next();
            } else {
                if va != vb {
                    return false;
                }
                a.next();
                b.next();
            }
        }
        true
    }

    /// Conjunction of two labels; `None` if the result would be contradictory.
    pub fn and(&self, other: &Label) -> Option<Label> {
        if !self.consistent_with(other) {
            return None;
        }
        let mut literals = self.literals.clone();
        literals.extend_from_slice(&other.literals);
        literals.sort_unstable();
        literals.dedup();
        Some(Label { literals })
    }

    /// Renders the label against a proposition name table; the empty label
    /// renders as the empty string.
    pub fn display<'a>(&'a self, props: &'a [String]) -> LabelDisplay<'a> {
        LabelDisplay { label: self, props }
    }

    /// Parses a label string: whitespace-separated literals, `!` for negation.
    /// The empty string is the empty label.
    pub fn parse(text: &str, props: &[String]) -> Result<Label, ModelError> {
        let mut literals = Vec::new();
        for token in text.split_whitespace() {
            let (value, name) = match token.strip_prefix('!') {
                Some(rest) => (false, rest),
                None => (true, token),
            };
            let prop = props
                .iter()
                .position(|p| p == name)
                .ok_or_else(|| ModelError::UnknownProposition(name.to_owned()))?;
            literals.push((prop, value));
        }
        let text_owned = text.to_owned();
        Label::new(literals).map_err(|_| ModelError::ContradictoryLabel(text_owned))
    }
}

pub struct LabelDisplay<'a> {
    label: &'a Label,
    props: &'a [String],
}

impl fmt::Display for LabelDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (prop, value)) in self.label.literals.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if !*value {
                write!(f, "!")?;
            }
            match self.props.get(*prop) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "p{prop}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lbl(lits: &[(usize, bool)]) -> Label {
        Label::new(lits.to_vec()).unwrap()
    }

    #[test]
    fn contradictory_labels_are_rejected() {
        assert!(Label::new(vec![(0, true), (0, false)]).is_err());
    }

    #[test]
    fn subsumption_is_literal_subset() {
        // p ∧ ¬q subsumes p; p does not subsume p ∧ q
        assert!(lbl(&[(0, true), (1, false)]).subsumes(&lbl(&[(0, true)])));
        assert!(!lbl(&[(0, true)]).subsumes(&lbl(&[(0, true), (1, true)])));
        assert!(lbl(&[(0, true)]).subsumes(&Label::empty()));
    }

    #[test]
    fn consistency_detects_opposed_literals() {
        assert!(!lbl(&[(0, true)]).consistent_with(&lbl(&[(0, false)])));
        assert!(lbl(&[(0, true)]).consistent_with(&lbl(&[(1, false)])));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let props = vec!["p".to_owned(), "q".to_owned()];
        let l = Label::parse("!q p", &props).unwrap();
        assert_eq!(l.display(&props).to_string(), "p !q");
        assert!(Label::parse("p !p", &props).is_err());
        assert!(Label::parse("", &props).unwrap().is_empty());
    }
}
