//! Instance generators: the satisfiability and quantified-boolean-formula
//! gadget families, the fractional reaction-time family, and seeded random
//! networks, together with the tiny truth oracles the tests compare against.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chytn::{Chytn, ChytnBuilder, GeneralChytn};
use crate::error::ModelError;
use crate::network::Weight;

/// A literal over variable index `var` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CnfLit {
    pub var: usize,
    pub positive: bool,
}

/// A CNF formula with clauses of at most three literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<CnfLit>>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<CnfLit>>) -> Result<Self, ModelError> {
        if clauses.is_empty() {
            return Err(ModelError::Malformed("a formula needs at least one clause".into()));
        }
        for c in &clauses {
            if c.is_empty() || c.len() > 3 {
                return Err(ModelError::Malformed(format!(
                    "clauses must have 1 to 3 literals, got {}",
                    c.len()
                )));
            }
            for l in c {
                if l.var >= num_vars {
                    return Err(ModelError::Malformed(format!("literal over unknown variable {}", l.var)));
                }
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    /// Parses `"x y !z; !x y"` style text: clauses separated by `;`, literals
    /// by whitespace, `!` for negation. Variables are named by first use.
    pub fn parse(text: &str) -> Result<(Cnf, Vec<String>), ModelError> {
        let mut vars: Vec<String> = Vec::new();
        let mut clauses = Vec::new();
        for clause_text in text.split(';') {
            let mut clause = Vec::new();
            for tok in clause_text.split_whitespace() {
                let (positive, name) = match tok.strip_prefix('!') {
                    Some(rest) => (false, rest),
                    None => (true, tok),
                };
                let var = match vars.iter().position(|v| v == name) {
                    Some(i) => i,
                    None => {
                        vars.push(name.to_owned());
                        vars.len() - 1
                    }
                };
                clause.push(CnfLit { var, positive });
            }
            if !clause.is_empty() {
                clauses.push(clause);
            }
        }
        let n = vars.len();
        Ok((Cnf::new(n, clauses)?, vars))
    }
}

/// Exhaustive truth-table satisfiability.
pub fn cnf_satisfiable(cnf: &Cnf) -> bool {
    (0u64..1 << cnf.num_vars).any(|m| {
        cnf.clauses.iter().all(|c| {
            c.iter().any(|l| ((m >> l.var) & 1 == 1) == l.positive)
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    ForAll,
}

/// A prenex quantified boolean formula over a 3-CNF matrix; `prefix[j]`
/// quantifies variable `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qbf {
    pub prefix: Vec<Quantifier>,
    pub matrix: Cnf,
}

impl Qbf {
    pub fn new(prefix: Vec<Quantifier>, matrix: Cnf) -> Result<Self, ModelError> {
        if prefix.len() != matrix.num_vars {
            return Err(ModelError::Malformed(format!(
                "prefix quantifies {} variables, matrix has {}",
                prefix.len(),
                matrix.num_vars
            )));
        }
        Ok(Qbf { prefix, matrix })
    }
}

/// Exhaustive QBF evaluation.
pub fn qbf_truth(q: &Qbf) -> bool {
    fn go(q: &Qbf, j: usize, assignment: u64) -> bool {
        if j == q.prefix.len() {
            return q.matrix.clauses.iter().all(|c| {
                c.iter().any(|l| ((assignment >> l.var) & 1 == 1) == l.positive)
            });
        }
        let with_false = go(q, j + 1, assignment);
        let with_true = go(q, j + 1, assignment | (1 << j));
        match q.prefix[j] {
            Quantifier::Exists => with_false || with_true,
            Quantifier::ForAll => with_false && with_true,
        }
    }
    go(q, 0, 0)
}

fn lit_label(vars: &[String], l: &CnfLit) -> String {
    if l.positive {
        vars[l.var].clone()
    } else {
        format!("!{}", vars[l.var])
    }
}

/// The satisfiability gadget: a conditional STN whose dynamic consistency is
/// the complement of the formula's satisfiability. Every variable becomes an
/// observation event executed simultaneously, one time unit before the
/// clause nodes, which chain through labeled `-1` arcs so that any satisfying
/// scenario closes a negative cycle.
pub fn gen_sat_cstn(cnf: &Cnf) -> Result<Chytn, ModelError> {
    let vars: Vec<String> = (1..=cnf.num_vars).map(|i| format!("x{i}")).collect();
    let clause_nodes: Vec<String> = (0..cnf.clauses.len()).map(|j| format!("c{j}")).collect();
    let mut b = ChytnBuilder::new();
    for x in &vars {
        b.node(x, "");
        b.prop(x, x);
    }
    for c in &clause_nodes {
        b.node(c, "");
    }
    // simultaneity: <u - v <= 0, λ> for every ordered observation pair
    for u in &vars {
        for v in &vars {
            b.arc(v, u, 0, "");
        }
    }
    // every observation strictly precedes every clause node
    for x in &vars {
        for c in &clause_nodes {
            b.arc(c, x, -1, "");
        }
    }
    // labeled negative loop among the clause nodes
    let m = cnf.clauses.len();
    for (j, clause) in cnf.clauses.iter().enumerate() {
        let next = &clause_nodes[(j + 1) % m];
        for l in clause {
            b.arc(next, &clause_nodes[j], -1, &lit_label(&vars, l));
        }
    }
    b.finish()
}

/// The quantified-boolean-formula gadget: a general network (multi-head and
/// multi-tail constraints) whose dynamic consistency matches the formula's
/// truth. Universally quantified variables become observation events; the
/// literal gadgets pin exactly one of each complementary pair to the late
/// slot, and each clause node demands one of its literals there.
pub fn gen_tqbf_chytn(q: &Qbf) -> Result<GeneralChytn, ModelError> {
    let n = q.matrix.num_vars;
    let nw = n as Weight;
    let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut b = ChytnBuilder::new();
    b.node("z", "").node("z'", "");
    for j in 0..n {
        b.node(&format!("t_{}", vars[j]), "");
        if q.prefix[j] == Quantifier::ForAll {
            b.node(&format!("p_{}", vars[j]), "");
            b.prop(&vars[j], &format!("p_{}", vars[j]));
        }
        b.node(&format!("l_{}", vars[j]), "");
        b.node(&format!("ln_{}", vars[j]), "");
    }
    for i in 0..q.matrix.clauses.len() {
        b.node(&format!("c{}", i + 1), "");
    }

    b.arc("z", "z'", nw + 1, "").arc("z'", "z", -nw - 1, "");

    for j in 0..n {
        let jw = j as Weight + 1; // paper indexes variables from 1
        let t = format!("t_{}", vars[j]);
        let l = format!("l_{}", vars[j]);
        let ln = format!("ln_{}", vars[j]);
        match q.prefix[j] {
            Quantifier::Exists => {
                b.arc("z", &t, jw + 1, "").arc(&t, "z", -jw, "");
            }
            Quantifier::ForAll => {
                let p = format!("p_{}", vars[j]);
                let pos = vars[j].clone();
                let neg = format!("!{}", vars[j]);
                b.arc("z", &p, jw - 1, "").arc(&p, "z", -jw + 1, "");
                b.arc("z", &t, jw + 1, &pos).arc(&t, "z", -jw - 1, &pos);
                b.arc("z", &t, jw, &neg).arc(&t, "z", -jw, &neg);
            }
        }
        // literal slots within [z', z'+1]
        b.arc("z'", &l, 1, "").arc(&l, "z'", 0, "");
        b.arc("z'", &ln, 1, "").arc(&ln, "z'", 0, "");
        // one of the pair at the early slot, one at the late slot
        b.hyperarc("z'", &[(&l, 0, ""), (&ln, 0, "")]);
        b.multi_tail(&[(&l, -1, ""), (&ln, -1, "")], "z'");
        // the positive literal tracks the variable's timeline choice
        b.arc(&t, &l, nw + 1 - jw, "").arc(&l, &t, -(nw + 1 - jw), "");
    }

    for (i, clause) in q.matrix.clauses.iter().enumerate() {
        let c = format!("c{}", i + 1);
        b.arc("z'", &c, 1, "").arc(&c, "z'", -1, "");
        let mut tails: Vec<String> = clause
            .iter()
            .map(|l| {
                if l.positive {
                    format!("l_{}", vars[l.var])
                } else {
                    format!("ln_{}", vars[l.var])
                }
            })
            .collect();
        tails.sort_unstable();
        tails.dedup();
        let tail_refs: Vec<(&str, Weight, &str)> =
            tails.iter().map(|t| (t.as_str(), 0, "")).collect();
        b.multi_tail(&tail_refs, &c);
    }

    b.finish_general()
}

/// The fractional reaction-time family: a chain of three-node stages whose
/// critical reaction time halves at each stage. Every node is an
/// observation event.
pub fn gen_gamma_n(n: usize) -> Result<Chytn, ModelError> {
    if n == 0 || n > 6 {
        return Err(ModelError::Malformed(
            "stage count must be between 1 and 6 (3n propositions)".into(),
        ));
    }
    let mut b = ChytnBuilder::new();
    let name = |k: &str, i: usize| format!("{k}{i}");
    for i in 1..=n {
        for k in ["X", "Y", "Z"] {
            let id = name(k, i);
            b.node(&id, "");
            b.prop(&id, &id);
        }
    }
    // X1 is first: <X1 - v <= 0, λ> for every node (the X1 self-pair is the
    // vacuous zero loop), plus the fractional trigger
    for i in 1..=n {
        for k in ["X", "Y", "Z"] {
            b.arc(&name(k, i), "X1", 0, "");
        }
    }
    b.arc("X1", "Z1", 1, "X1 Y1");
    for i in 1..=n {
        let (x, y, z) = (name("X", i), name("Y", i), name("Z", i));
        let nx = format!("!{x}");
        let ny = format!("!{y}");
        b.arc(&x, &y, 2, &nx).arc(&y, &x, -2, &nx);
        b.arc(&y, &z, 2, &ny).arc(&z, &y, -2, &ny);
    }
    for i in 1..n {
        let (x1, y1, z1) = (name("X", i), name("Y", i), name("Z", i));
        let (x2, y2, z2) = (name("X", i + 1), name("Y", i + 1), name("Z", i + 1));
        let pz = z1.clone();
        let nz = format!("!{z1}");
        let both = format!("{x2} {y2}");
        b.arc(&x1, &x2, 5, &pz).arc(&x2, &x1, -5, &pz);
        b.arc(&y1, &x2, 5, &nz).arc(&x2, &y1, -5, &nz);
        b.arc(&y1, &z2, 5, &format!("{pz} {both}"))
            .arc(&z2, &y1, -5, &format!("{pz} {both}"));
        b.arc(&z1, &z2, 5, &format!("{nz} {both}"))
            .arc(&z2, &z1, -5, &format!("{nz} {both}"));
    }
    b.finish()
}

/// Seeded random well-defined network: observation events carry empty
/// labels, other nodes draw short labels, separation arcs are inserted for
/// every labeled node, and constraint labels extend the conjunction of their
/// endpoints' labels.
pub fn gen_random_chytn(
    seed: u64,
    nodes: usize,
    props: usize,
    density: f64,
    max_weight: Weight,
) -> Result<Chytn, ModelError> {
    if props > nodes {
        return Err(ModelError::Malformed(
            "need at least one node per proposition".into(),
        ));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(ModelError::Malformed("density must lie in [0, 1]".into()));
    }
    if max_weight < 0 {
        return Err(ModelError::Malformed("max weight must be nonnegative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let node_names: Vec<String> = (0..nodes).map(|i| format!("n{i}")).collect();
    let prop_names: Vec<String> = (0..props).map(|i| format!("p{i}")).collect();

    // labels as literal lists; observers (the first `props` nodes) stay empty
    let mut labels: Vec<Vec<(usize, bool)>> = vec![Vec::new(); nodes];
    #[allow(clippy::needless_range_loop)]
    for v in props..nodes {
        if props > 0 && rng.gen_bool(0.5) {
            let count = rng.gen_range(1..=2.min(props));
            while labels[v].len() < count {
                let p = rng.gen_range(0..props);
                if !labels[v].iter().any(|&(q, _)| q == p) {
                    labels[v].push((p, rng.gen_bool(0.5)));
                }
            }
            labels[v].sort_unstable();
        }
    }
    let label_text = |lits: &[(usize, bool)]| -> String {
        lits.iter()
            .map(|&(p, pos)| {
                if pos {
                    prop_names[p].clone()
                } else {
                    format!("!{}", prop_names[p])
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut b = ChytnBuilder::new();
    for v in 0..nodes {
        b.node(&node_names[v], &label_text(&labels[v]));
    }
    for p in 0..props {
        b.prop(&prop_names[p], &node_names[p]);
    }
    // separation arcs make WD2 hold by construction
    for v in 0..nodes {
        for &(p, _) in labels[v].clone().iter() {
            b.arc(&node_names[v], &node_names[p], -1, &label_text(&labels[v]));
        }
    }

    let target = ((nodes * nodes) as f64 * density).ceil() as usize;
    let mut emitted = 0;
    let mut attempts = 0;
    while emitted < target && attempts < target * 8 {
        attempts += 1;
        let tail = rng.gen_range(0..nodes);
        let head_count = if nodes > 2 && rng.gen_bool(0.25) { 2 } else { 1 };
        let mut heads: Vec<usize> = Vec::new();
        while heads.len() < head_count {
            let h = rng.gen_range(0..nodes);
            if h != tail && !heads.contains(&h) {
                heads.push(h);
            }
        }
        // head label: conjunction of endpoint labels, possibly one extra literal
        let mut ok = true;
        let mut head_specs = Vec::new();
        for &h in &heads {
            let mut lits = labels[tail].clone();
            for &(p, v) in &labels[h] {
                match lits.iter().find(|&&(q, _)| q == p) {
                    Some(&(_, v2)) if v2 != v => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => lits.push((p, v)),
                }
            }
            if !ok {
                break;
            }
            if props > 0 && rng.gen_bool(0.3) {
                let p = rng.gen_range(0..props);
                if !lits.iter().any(|&(q, _)| q == p) {
                    lits.push((p, rng.gen_bool(0.5)));
                }
            }
            lits.sort_unstable();
            let w = rng.gen_range(-max_weight..=max_weight);
            head_specs.push((h, w, label_text(&lits)));
        }
        if !ok {
            continue;
        }
        let refs: Vec<(&str, Weight, &str)> = head_specs
            .iter()
            .map(|(h, w, l)| (node_names[*h].as_str(), *w, l.as_str()))
            .collect();
        b.hyperarc(&node_names[tail], &refs);
        emitted += 1;
    }

    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chytn::{validate_wd, validate_wd_general};

    fn cnf(text: &str) -> Cnf {
        Cnf::parse(text).unwrap().0
    }

    #[test]
    fn cnf_oracle_agrees_with_hand_cases() {
        assert!(cnf_satisfiable(&cnf("x y z")));
        assert!(!cnf_satisfiable(&cnf("x; !x")));
        assert!(cnf_satisfiable(&cnf("x !y; !x y")));
    }

    #[test]
    fn qbf_oracle_agrees_with_hand_cases() {
        use Quantifier::*;
        let q = Qbf::new(vec![ForAll, Exists], cnf("x !y; !x y")).unwrap();
        assert!(qbf_truth(&q));
        let q = Qbf::new(vec![ForAll], Cnf::parse("x").unwrap().0).unwrap();
        assert!(!qbf_truth(&q));
        let q = Qbf::new(vec![Exists], cnf("x; !x")).unwrap();
        assert!(!qbf_truth(&q));
    }

    #[test]
    fn sat_gadget_sizes_match_the_construction() {
        // n=3, m=1: |V| = 4, |A| = 9 + 3 + 3 = 15
        let g = gen_sat_cstn(&cnf("x y z")).unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.constraints().len(), 15);
        // (n, m) = (2, 2): 4 + 4 + 6 = 14
        let g = gen_sat_cstn(&cnf("x y; !x !y")).unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.constraints().len(), 14);
        assert!(validate_wd(&g).is_empty());
    }

    #[test]
    fn clauses_with_more_than_three_literals_are_rejected() {
        let lits = (0..4).map(|v| CnfLit { var: v, positive: true }).collect();
        assert!(Cnf::new(4, vec![lits]).is_err());
    }

    #[test]
    fn tqbf_gadget_sizes_stay_within_the_proof_bounds() {
        use Quantifier::*;
        let q = Qbf::new(vec![ForAll, Exists], cnf("x !y; !x y")).unwrap();
        let g = gen_tqbf_chytn(&q).unwrap();
        let (n, m) = (2, 2);
        assert!(g.core.node_count() <= 1 + 4 * n + m);
        assert!(g.core.constraints().len() + g.multi_tail.len() <= 16 * n + 5 * m);
        assert!(validate_wd_general(&g).is_empty());
        assert!(g.has_multi_tail());
    }

    #[test]
    fn gamma_n_matches_the_itemized_arc_counts() {
        let g = gen_gamma_n(2).unwrap();
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.props().len(), 6);
        // B: 3n + 1, C_i: 4 each, D_i: 8 each
        assert_eq!(g.constraints().len(), (3 * 2 + 1) + 4 * 2 + 8);
        assert!(validate_wd(&g).is_empty());
        assert!(gen_gamma_n(0).is_err());
        assert!(gen_gamma_n(7).is_err());
    }

    #[test]
    fn random_networks_are_well_defined_and_deterministic() {
        for seed in [1, 7, 42] {
            let a = gen_random_chytn(seed, 6, 2, 0.4, 3).unwrap();
            let b = gen_random_chytn(seed, 6, 2, 0.4, 3).unwrap();
            assert_eq!(a, b);
            assert!(validate_wd(&a).is_empty());
        }
        let unlabeled = gen_random_chytn(1, 5, 0, 0.5, 2).unwrap();
        assert!(unlabeled.props().is_empty());
        assert!(validate_wd(&unlabeled).is_empty());
        assert!(gen_random_chytn(1, 2, 3, 0.5, 2).is_err());
    }
}
