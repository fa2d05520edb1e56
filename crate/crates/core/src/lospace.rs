//! Finite shadows of the space of orderings: partial cones on balls, their
//! enumeration and extension, separation, isolators and condition (*).

use std::collections::HashMap;
use std::fmt;

use crate::error::{OrderError, Result};
use crate::group::{power, Ball, Group, Sign};
use crate::oracle::{find_power_relation, GroupAutomorphism, SignOracle};

/// Default cap on branching nodes per search.
pub const DEFAULT_MAX_NODES: u64 = 2_000_000;

/// The node cap, overridden by `ORD_MAX_NODES` when set to an integer.
pub fn max_nodes_from_env() -> u64 {
    std::env::var("ORD_MAX_NODES")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_NODES)
}

/// A sign on every nonidentity element of a ball, in ball order.
#[derive(Clone, Debug)]
pub struct PartialCone<E> {
    radius: usize,
    elements: Vec<E>,
    signs: Vec<Sign>,
    lookup: HashMap<E, usize>,
}

impl<E: PartialEq> PartialEq for PartialCone<E> {
    fn eq(&self, other: &Self) -> bool {
        self.radius == other.radius && self.elements == other.elements && self.signs == other.signs
    }
}

impl<E: Eq> Eq for PartialCone<E> {}

impl<E: Clone + Eq + std::hash::Hash + fmt::Display> PartialCone<E> {
    fn from_parts(radius: usize, elements: Vec<E>, signs: Vec<Sign>) -> Self {
        let lookup = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        PartialCone {
            radius,
            elements,
            signs,
            lookup,
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&E, Sign)> {
        self.elements.iter().zip(self.signs.iter().copied())
    }

    /// Sign of a ball element, given by its stored representative.
    pub fn get(&self, g: &E) -> Option<Sign> {
        self.lookup.get(g).map(|&i| self.signs[i])
    }

    /// `element:sign` lines in ball order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (e, s) in self.entries() {
            out.push_str(&format!("{}:{}\n", e, s));
        }
        out
    }

    /// The restriction to a smaller ball, whose elements must appear here.
    pub fn restrict_to<G: Group<Element = E> + ?Sized>(&self, group: &G, radius: usize) -> Result<Self> {
        let ball = group.ball(radius)?;
        let mut signs = Vec::with_capacity(ball.len());
        for (_, g) in ball.nonidentity() {
            signs.push(self.get(g).ok_or_else(|| {
                OrderError::RejectedInput(format!("{} is outside the cone's ball", g))
            })?);
        }
        Ok(PartialCone::from_parts(radius, ball.elements()[1..].to_vec(), signs))
    }
}

impl<E: Clone + Eq + std::hash::Hash + fmt::Display + Send + Sync> SignOracle<E> for PartialCone<E> {
    fn sign(&self, g: &E) -> Result<Sign> {
        self.get(g)
            .ok_or_else(|| OrderError::RejectedInput(format!("{} is outside the partial cone", g)))
    }
    fn descriptor(&self) -> String {
        format!("partial-cone(radius={})", self.radius)
    }
}

/// The restriction of an oracle to `ball(radius)`.
pub fn restrict_oracle<G: Group + ?Sized>(
    oracle: &dyn SignOracle<G::Element>,
    group: &G,
    radius: usize,
) -> Result<PartialCone<G::Element>> {
    let ball = group.ball(radius)?;
    let mut signs = Vec::with_capacity(ball.len());
    for (_, g) in ball.nonidentity() {
        signs.push(oracle.sign(g)?);
    }
    Ok(PartialCone::from_parts(radius, ball.elements()[1..].to_vec(), signs))
}

/// Literal: variable index and whether it asserts "representative is
/// positive".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Lit {
    var: usize,
    positive: bool,
}

impl Lit {
    fn negate(self) -> Lit {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }
}

/// The cone constraints on one ball as a 3-SAT instance over inverse pairs:
/// `¬P(g) ∨ ¬P(h) ∨ P(gh)` for every product landing in the ball.
pub struct ConeProblem<G: Group> {
    ball: Ball<G>,
    /// Literal meaning "element `i` is positive"; unused at the identity.
    element_lit: Vec<Lit>,
    /// Ball index of each variable's representative.
    representative: Vec<usize>,
    clauses: Vec<[Lit; 3]>,
    /// Clauses containing the negation of each literal, indexed by
    /// `2·var + positive`.
    watch: Vec<Vec<usize>>,
    max_nodes: u64,
}

/// Whether to collect every solution or stop at the first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    All,
    Exists,
}

fn lit_slot(l: Lit) -> usize {
    2 * l.var + usize::from(l.positive)
}

impl<G: Group> ConeProblem<G> {
    pub fn new(group: &G, radius: usize, max_nodes: u64) -> Result<Self> {
        let ball = group.ball(radius)?;
        let inverse = ball.inverse_table(group)?;
        let n = ball.len();
        let mut element_lit = vec![Lit { var: usize::MAX, positive: true }; n];
        let mut representative = Vec::new();
        for i in 1..n {
            let j = inverse[i];
            if i < j {
                let var = representative.len();
                representative.push(i);
                element_lit[i] = Lit { var, positive: true };
                element_lit[j] = Lit { var, positive: false };
            } else if i == j {
                return Err(OrderError::RejectedInput(format!(
                    "{} is an involution; {} has torsion",
                    ball.element(i),
                    group.name()
                )));
            }
        }
        let mut clauses = Vec::new();
        for i in 1..n {
            for j in 1..n {
                let gh = group.multiply(ball.element(i), ball.element(j));
                let Some(k) = ball.position(group, &gh)? else {
                    continue;
                };
                if k == 0 {
                    continue;
                }
                clauses.push([element_lit[i].negate(), element_lit[j].negate(), element_lit[k]]);
            }
        }
        let mut watch = vec![Vec::new(); 2 * representative.len()];
        for (c, clause) in clauses.iter().enumerate() {
            for &l in clause {
                // Clause `c` can become unit when `l` is falsified, i.e.
                // when `¬l` is set.
                let slot = lit_slot(l.negate());
                if watch[slot].last() != Some(&c) {
                    watch[slot].push(c);
                }
            }
        }
        Ok(ConeProblem {
            ball,
            element_lit,
            representative,
            clauses,
            watch,
            max_nodes,
        })
    }

    pub fn ball(&self) -> &Ball<G> {
        &self.ball
    }

    pub fn variables(&self) -> usize {
        self.representative.len()
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    fn value(assign: &[Option<bool>], l: Lit) -> Option<bool> {
        assign[l.var].map(|v| v == l.positive)
    }

    /// Sets `l` true and propagates; returns false on conflict. Every
    /// assigned variable is pushed on `trail`.
    fn propagate(&self, assign: &mut [Option<bool>], trail: &mut Vec<usize>, l: Lit) -> bool {
        match Self::value(assign, l) {
            Some(true) => return true,
            Some(false) => return false,
            None => {}
        }
        assign[l.var] = Some(l.positive);
        trail.push(l.var);
        let mut queue = vec![l];
        while let Some(set) = queue.pop() {
            for &c in &self.watch[lit_slot(set)] {
                let clause = &self.clauses[c];
                let mut unassigned = None;
                let mut open = 0;
                let mut satisfied = false;
                for &x in clause {
                    match Self::value(assign, x) {
                        Some(true) => {
                            satisfied = true;
                            break;
                        }
                        Some(false) => {}
                        None => {
                            if unassigned != Some(x) {
                                open += 1;
                                unassigned = Some(x);
                            }
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match (open, unassigned) {
                    (0, _) => return false,
                    (1, Some(u)) => {
                        assign[u.var] = Some(u.positive);
                        trail.push(u.var);
                        queue.push(u);
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn signs_of(&self, assign: &[Option<bool>]) -> Vec<Sign> {
        (1..self.ball.len())
            .map(|i| {
                let l = self.element_lit[i];
                Sign::from_positive(Self::value(assign, l).expect("complete assignment"))
            })
            .collect()
    }

    fn search(&self, assumptions: &[(usize, Sign)], mode: Mode) -> Result<Vec<Vec<Sign>>> {
        let mut assign = vec![None; self.variables()];
        let mut trail = Vec::new();
        for &(i, s) in assumptions {
            let l = self.element_lit[i];
            let l = if s.is_positive() { l } else { l.negate() };
            if !self.propagate(&mut assign, &mut trail, l) {
                return Ok(vec![]);
            }
        }
        let mut out = Vec::new();
        let mut nodes = 0u64;
        self.branch(&mut assign, &mut trail, 0, mode, &mut nodes, &mut out)?;
        Ok(out)
    }

    fn branch(
        &self,
        assign: &mut Vec<Option<bool>>,
        trail: &mut Vec<usize>,
        from: usize,
        mode: Mode,
        nodes: &mut u64,
        out: &mut Vec<Vec<Sign>>,
    ) -> Result<()> {
        let Some(var) = (from..self.variables()).find(|&v| assign[v].is_none()) else {
            out.push(self.signs_of(assign));
            return Ok(());
        };
        for value in [true, false] {
            *nodes += 1;
            if *nodes > self.max_nodes {
                return Err(OrderError::SizeLimit {
                    limit: self.max_nodes,
                });
            }
            let mark = trail.len();
            if self.propagate(assign, trail, Lit { var, positive: value }) {
                self.branch(assign, trail, var + 1, mode, nodes, out)?;
            }
            for v in trail.drain(mark..) {
                assign[v] = None;
            }
            if mode == Mode::Exists && !out.is_empty() {
                return Ok(());
            }
        }
        Ok(())
    }

    fn cone(&self, signs: Vec<Sign>) -> PartialCone<G::Element> {
        PartialCone::from_parts(self.ball.radius(), self.ball.elements()[1..].to_vec(), signs)
    }

    fn assumptions(&self, group: &G, cone: &PartialCone<G::Element>) -> Result<Vec<(usize, Sign)>> {
        let mut out = Vec::with_capacity(cone.len());
        for (g, s) in cone.entries() {
            let i = self.ball.position(group, g)?.ok_or_else(|| {
                OrderError::RejectedInput(format!("{} lies outside ball({})", g, self.ball.radius()))
            })?;
            out.push((i, s));
        }
        Ok(out)
    }

    /// All consistent sign assignments, in canonical order (`+` explored
    /// first on each representative, representatives in ball order).
    pub fn enumerate(&self) -> Result<Vec<PartialCone<G::Element>>> {
        Ok(self
            .search(&[], Mode::All)?
            .into_iter()
            .map(|s| self.cone(s))
            .collect())
    }

    pub fn extensions(&self, group: &G, cone: &PartialCone<G::Element>) -> Result<Vec<PartialCone<G::Element>>> {
        let a = self.assumptions(group, cone)?;
        Ok(self
            .search(&a, Mode::All)?
            .into_iter()
            .map(|s| self.cone(s))
            .collect())
    }

    pub fn is_extendable(&self, group: &G, cone: &PartialCone<G::Element>) -> Result<bool> {
        let a = self.assumptions(group, cone)?;
        Ok(!self.search(&a, Mode::Exists)?.is_empty())
    }
}

pub fn enumerate_partial_cones<G: Group>(group: &G, radius: usize) -> Result<Vec<PartialCone<G::Element>>> {
    ConeProblem::new(group, radius, max_nodes_from_env())?.enumerate()
}

pub fn extend_partial_cone<G: Group>(
    cone: &PartialCone<G::Element>,
    group: &G,
    radius2: usize,
) -> Result<Vec<PartialCone<G::Element>>> {
    if radius2 <= cone.radius() {
        return Err(OrderError::RejectedInput(format!(
            "extension radius {} must exceed {}",
            radius2,
            cone.radius()
        )));
    }
    ConeProblem::new(group, radius2, max_nodes_from_env())?.extensions(group, cone)
}

/// First element of `ball(radius)` on which the two orderings disagree.
pub fn separating_element<G: Group + ?Sized>(
    o1: &dyn SignOracle<G::Element>,
    o2: &dyn SignOracle<G::Element>,
    group: &G,
    radius: usize,
) -> Result<Option<G::Element>> {
    let ball = group.ball(radius)?;
    for (_, g) in ball.nonidentity() {
        if o1.sign(g)? != o2.sign(g)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// Answer to an isolator query. `NotFoundWithinBound` is one-sided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsolatorAnswer {
    True,
    False,
    NotFoundWithinBound,
}

impl IsolatorAnswer {
    pub fn detected(self) -> bool {
        self == IsolatorAnswer::True
    }
}

impl fmt::Display for IsolatorAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsolatorAnswer::True => "true",
            IsolatorAnswer::False => "false",
            IsolatorAnswer::NotFoundWithinBound => "not-found-within-bound",
        })
    }
}

/// Whether `hᵏ ∈ ⟨g⟩` for some `k ≥ 1`: exact where the group decides it,
/// otherwise a search over `1 ≤ k ≤ bound`, `|j| ≤ bound` for `hᵏ = gʲ`.
pub fn isolator_member<G: Group + ?Sized>(
    group: &G,
    h: &G::Element,
    g: &G::Element,
    bound: u32,
) -> Result<IsolatorAnswer> {
    if group.is_identity(g)? {
        return Err(OrderError::IdentityInput);
    }
    if let Some(exact) = group.isolator_exact(h, g) {
        return Ok(if exact {
            IsolatorAnswer::True
        } else {
            IsolatorAnswer::False
        });
    }
    let g_powers: Vec<G::Element> = (-(bound as i64)..=bound as i64)
        .map(|j| power(group, g, j))
        .collect();
    let keys: Vec<G::Key> = g_powers.iter().map(|p| group.key(p)).collect();
    for k in 1..=bound as i64 {
        let hk = power(group, h, k);
        let key = group.key(&hk);
        for (p, pk) in g_powers.iter().zip(&keys) {
            if *pk == key && group.equal(&hk, p)? {
                return Ok(IsolatorAnswer::True);
            }
        }
    }
    Ok(IsolatorAnswer::NotFoundWithinBound)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dichotomy<E> {
    /// No nonidentity element was detected in both isolators.
    Disjoint,
    /// The detected isolators coincide on the ball.
    Equal,
    /// Both isolators were detected to meet, yet this element lies in
    /// exactly one of them.
    Violation(E),
}

pub fn isolator_dichotomy_check<G: Group + ?Sized>(
    group: &G,
    g: &G::Element,
    h: &G::Element,
    radius: usize,
    bound: u32,
) -> Result<Dichotomy<G::Element>> {
    let ball = group.ball(radius)?;
    let mut in_g = Vec::with_capacity(ball.len());
    let mut in_h = Vec::with_capacity(ball.len());
    for (_, f) in ball.nonidentity() {
        in_g.push(isolator_member(group, f, g, bound)?.detected());
        in_h.push(isolator_member(group, f, h, bound)?.detected());
    }
    if !in_g.iter().zip(&in_h).any(|(a, b)| *a && *b) {
        return Ok(Dichotomy::Disjoint);
    }
    for (k, (_, f)) in ball.nonidentity().enumerate() {
        if in_g[k] != in_h[k] {
            return Ok(Dichotomy::Violation(f.clone()));
        }
    }
    Ok(Dichotomy::Equal)
}

/// First `g` of the ball admitting no `1 ≤ n, m ≤ bound` with
/// `φ(g)ⁿ = gᵐ`, or `None` when (*) holds up to the bound.
pub fn condition_star_check<G: Group + ?Sized>(
    phi: &GroupAutomorphism<G::Element>,
    group: &G,
    radius: usize,
    bound: u32,
) -> Result<Option<G::Element>> {
    let ball = group.ball(radius)?;
    for (_, g) in ball.nonidentity() {
        if find_power_relation(group, &phi.forward(g), g, bound)?.is_none() {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}
