//! Verification suites behind `ord verify`. Each suite runs a fixed battery
//! of checks and reports one line per check; nothing here depends on wall
//! time, so reports are reproducible byte for byte.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{
    braid_catalog, dehornoy_sign, inner_braid_automorphism, invert_generators_automorphism, BraidGroup,
    BraidOracle, BraidOrdering, BraidWord, DEFAULT_BUDGET,
};
use crate::error::{OrderError, Result};
use crate::extension::{
    conjugation_preserves, g_group, g_ordering, g_not_biorderable_evidence, k_group, k_ordering,
    minus_sqrt2_flag, psi_on_k,
};
use crate::free::{free_catalog, free_probe_automorphisms, FreeGroup, MagnusOracle};
use crate::group::{Group, Sign, Subgroup};
use crate::klein::{klein_action_kernel, klein_catalog, klein_sign, KleinAut, KleinElement, KleinGroup, KleinOracle, KleinOrderingParams};
use crate::lattice::{
    comm_acts_trivially, eigen_orderings, flags_equivalent, form_sign, matrix_automorphism, preserves,
    probe_flags, Commensuration, EigenOrderings, FlagOracle, FormFlag, Lattice, LatticeVector, Sublattice,
    VloClass, vlo_equal,
};
use crate::lospace::{
    condition_star_check, enumerate_partial_cones, max_nodes_from_env, restrict_oracle, separating_element,
    ConeProblem,
};
use crate::matrix::RationalMatrix;
use crate::oracle::{
    act_automorphism, certify_least_positive, check_bi_invariance, distinguishing_witness, inner_automorphism,
    least_positive_in_ball, verify_cone_axioms, FnOracle, Oracle, SignOracle, DEFAULT_POWER_BOUND,
};
use crate::quadratic::{rat, QuadRat};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Seed for the sampled handle-reduction checks.
    pub seed: u64,
    /// Random words checked for termination and trichotomy.
    pub samples: usize,
    /// Sampled left-invariance triples.
    pub triples: usize,
    pub max_word_len: usize,
    pub budget: u64,
    pub magnus_degree: usize,
    pub power_bound: u32,
}

pub const DEFAULT_SEED: u64 = 20_240_517;

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            samples: 10_000,
            triples: 1_000,
            max_word_len: 64,
            budget: DEFAULT_BUDGET,
            magnus_degree: 6,
            power_bound: DEFAULT_POWER_BOUND,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Axioms,
    Dehornoy,
    Handle,
    Faithfulness,
    KleinLo,
    KleinKernel,
    Matrix,
    Scalar,
    Free,
    Extension,
    Vlo,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Axioms,
        Suite::Dehornoy,
        Suite::Handle,
        Suite::Faithfulness,
        Suite::KleinLo,
        Suite::KleinKernel,
        Suite::Matrix,
        Suite::Scalar,
        Suite::Free,
        Suite::Extension,
        Suite::Vlo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Dehornoy => "dehornoy",
            Suite::Handle => "handle",
            Suite::Faithfulness => "faithfulness",
            Suite::KleinLo => "klein-lo",
            Suite::KleinKernel => "klein-kernel",
            Suite::Matrix => "matrix",
            Suite::Scalar => "scalar",
            Suite::Free => "free",
            Suite::Extension => "extension",
            Suite::Vlo => "vlo",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.iter().copied().find(|x| x.name() == s)
    }

    pub fn run(self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut c = Checks::new(self);
        match self {
            Suite::Axioms => axioms(&mut c, cfg)?,
            Suite::Dehornoy => dehornoy(&mut c, cfg)?,
            Suite::Handle => handle(&mut c, cfg)?,
            Suite::Faithfulness => faithfulness(&mut c, cfg)?,
            Suite::KleinLo => klein_lo(&mut c)?,
            Suite::KleinKernel => klein_kernel(&mut c)?,
            Suite::Matrix => matrix(&mut c)?,
            Suite::Scalar => scalar(&mut c)?,
            Suite::Free => free(&mut c, cfg)?,
            Suite::Extension => extension(&mut c)?,
            Suite::Vlo => vlo(&mut c)?,
        }
        Ok(c.outcome)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new();
        let name = self.suite.name();
        r.set(format!("{}.passed", name), self.passed());
        for c in &self.checks {
            let verdict = if c.passed { "pass" } else { "fail" };
            r.set(format!("{}.{}", name, c.name), verdict);
            r.set(format!("{}.{}.detail", name, c.name), &c.detail);
            r.line(format!("[{}] {}/{}: {}", verdict, name, c.name, c.detail));
        }
        r.line(format!(
            "{} {}",
            name,
            if self.passed() { "PASSED" } else { "FAILED" }
        ));
        r
    }
}

struct Checks {
    outcome: SuiteOutcome,
}

impl Checks {
    fn new(suite: Suite) -> Self {
        Checks {
            outcome: SuiteOutcome {
                suite,
                checks: Vec::new(),
            },
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.outcome.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<SuiteOutcome>> {
    Suite::ALL.iter().map(|s| s.run(cfg)).collect()
}

/// Combined report over several outcomes, with an `all.passed` key.
pub fn combined_report(outcomes: &[SuiteOutcome]) -> Report {
    let mut r = Report::new();
    for o in outcomes {
        r.merge(&o.report());
    }
    r.set("all.passed", outcomes.iter().all(|o| o.passed()));
    r
}

const AXIOM_RADIUS_KLEIN: usize = 8;
const AXIOM_RADIUS_LATTICE: usize = 8;
const AXIOM_RADIUS_FREE: usize = 4;
const AXIOM_RADIUS_BRAID: usize = 4;
const AXIOM_RADIUS_EXTENSION: usize = 4;

fn axiom_check<G: Group + ?Sized>(
    c: &mut Checks,
    name: String,
    oracle: &dyn SignOracle<G::Element>,
    group: &G,
    radius: usize,
) -> Result<()> {
    let rep = verify_cone_axioms(oracle, group, radius)?;
    let detail = match rep.violations.first() {
        None => format!("radius {}", radius),
        Some(v) => format!(
            "radius {}, {} violations, first {:?} at {}",
            radius,
            rep.violations.len(),
            v.kind,
            v.witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
        ),
    };
    c.check(name, rep.passed, detail);
    Ok(())
}

fn braid_orderings(n: usize) -> Vec<BraidOrdering> {
    let mut out = vec![BraidOrdering::Dehornoy, BraidOrdering::Reverse];
    out.extend((1..n).map(BraidOrdering::Composite));
    out
}

fn axioms(c: &mut Checks, cfg: &SuiteConfig) -> Result<()> {
    for p in KleinOrderingParams::all() {
        axiom_check(c, format!("klein-{}", p), &KleinOracle(p), &KleinGroup, AXIOM_RADIUS_KLEIN)?;
    }
    let z2 = Lattice::integer(2);
    for f in probe_flags() {
        axiom_check(c, format!("z2-{}", f), &FlagOracle::new(f), &z2, AXIOM_RADIUS_LATTICE)?;
    }
    let f2 = FreeGroup::new(2);
    axiom_check(
        c,
        format!("f2-magnus-d{}", cfg.magnus_degree),
        &MagnusOracle::new(2, cfg.magnus_degree),
        &f2,
        AXIOM_RADIUS_FREE,
    )?;
    for n in [3, 4] {
        let group = BraidGroup::new(n).with_budget(cfg.budget);
        for kind in braid_orderings(n) {
            let o = BraidOracle::new(kind).with_budget(cfg.budget);
            axiom_check(c, format!("b{}-{}", n, kind), &o, &group, AXIOM_RADIUS_BRAID)?;
        }
    }
    axiom_check(c, "g-lex-extension".into(), &g_ordering()?, &g_group(), AXIOM_RADIUS_EXTENSION)?;
    Ok(())
}

fn dehornoy(c: &mut Checks, cfg: &SuiteConfig) -> Result<()> {
    for n in [3usize, 4] {
        let group = BraidGroup::new(n).with_budget(cfg.budget);
        let o = BraidOracle::new(BraidOrdering::Dehornoy).with_budget(cfg.budget);
        let expected = group.sigma(n as i32 - 1);
        let least = least_positive_in_ball(&o, &group, 4)?;
        let cert = certify_least_positive(&o, &group, 4, &expected)?;
        c.check(
            format!("b{}-dehornoy-least", n),
            group.equal(&least, &expected)? && cert.is_none(),
            format!("least {} at radius 4, expected {}", least.pretty(), expected.pretty()),
        );
        for i in 1..n {
            let o = BraidOracle::new(BraidOrdering::Composite(i)).with_budget(cfg.budget);
            let expected = group.sigma(i as i32);
            let least = least_positive_in_ball(&o, &group, 3)?;
            let cert = certify_least_positive(&o, &group, 3, &expected)?;
            c.check(
                format!("b{}-order-{}-least", n, i),
                group.equal(&least, &expected)? && cert.is_none(),
                format!("least {} at radius 3, expected {}", least.pretty(), expected.pretty()),
            );
        }
    }
    Ok(())
}

/// A uniformly random braid word on `n` strands with length at most
/// `max_len`.
pub fn random_braid_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(n, letters).expect("letters in range")
}

fn sign_or_budget(w: &BraidWord, budget: u64, exceeded: &mut usize) -> Result<Option<Option<Sign>>> {
    match dehornoy_sign(w, budget) {
        Ok(s) => Ok(Some(s)),
        Err(OrderError::BudgetExceeded { .. }) => {
            *exceeded += 1;
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn handle(c: &mut Checks, cfg: &SuiteConfig) -> Result<()> {
    const N: usize = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut exceeded = 0usize;
    let mut trichotomy_failures = 0usize;
    let mut first_failure: Option<String> = None;
    for _ in 0..cfg.samples {
        let w = random_braid_word(&mut rng, N, cfg.max_word_len);
        let s = sign_or_budget(&w, cfg.budget, &mut exceeded)?;
        let si = sign_or_budget(&w.inverse(), cfg.budget, &mut exceeded)?;
        if let (Some(s), Some(si)) = (s, si) {
            let ok = match (s, si) {
                (None, None) => true,
                (Some(a), Some(b)) => a == -b,
                _ => false,
            };
            if !ok {
                trichotomy_failures += 1;
                first_failure.get_or_insert_with(|| w.to_string());
            }
        }
    }
    c.check(
        "budget",
        exceeded == 0,
        format!(
            "seed {}, {} words of length <= {} on {} strands, {} over budget {}",
            cfg.seed, cfg.samples, cfg.max_word_len, N, exceeded, cfg.budget
        ),
    );
    c.check(
        "trichotomy",
        trichotomy_failures == 0,
        match &first_failure {
            None => format!("seed {}, {} words", cfg.seed, cfg.samples),
            Some(w) => format!("seed {}, {} failures, first {}", cfg.seed, trichotomy_failures, w),
        },
    );

    let short = (cfg.max_word_len / 4).max(1);
    let mut invariance_failures = 0usize;
    let mut closure_checked = 0usize;
    let mut first_failure: Option<String> = None;
    let mut triple_exceeded = 0usize;
    for _ in 0..cfg.triples {
        let f = random_braid_word(&mut rng, N, short);
        let g = random_braid_word(&mut rng, N, short);
        let h = random_braid_word(&mut rng, N, short);
        // g < h  iff  fg < fh, with both quotients kept as raw words.
        let lhs = g.inverse().concat(&h);
        let rhs = f.concat(&g).inverse().concat(&f.concat(&h));
        let a = sign_or_budget(&lhs, cfg.budget, &mut triple_exceeded)?;
        let b = sign_or_budget(&rhs, cfg.budget, &mut triple_exceeded)?;
        let mut ok = a == b;
        // Closure: f, g⁻¹h positive implies f·g⁻¹h positive.
        let sf = sign_or_budget(&f, cfg.budget, &mut triple_exceeded)?;
        if let (Some(Some(Sign::Positive)), Some(Some(Sign::Positive))) = (sf, a) {
            closure_checked += 1;
            let prod = sign_or_budget(&f.concat(&lhs), cfg.budget, &mut triple_exceeded)?;
            ok &= prod == Some(Some(Sign::Positive));
        }
        if !ok {
            invariance_failures += 1;
            first_failure.get_or_insert_with(|| format!("f={} g={} h={}", f, g, h));
        }
    }
    c.check(
        "left-invariance",
        invariance_failures == 0 && triple_exceeded == 0,
        match &first_failure {
            None => format!(
                "{} triples of length <= {}, {} closure instances, {} over budget",
                cfg.triples, short, closure_checked, triple_exceeded
            ),
            Some(t) => format!("{} failures, first {}", invariance_failures, t),
        },
    );
    Ok(())
}

fn faithfulness(c: &mut Checks, cfg: &SuiteConfig) -> Result<()> {
    for n in [3usize, 4] {
        let group = BraidGroup::new(n).with_budget(cfg.budget);
        let catalog = braid_catalog(n);
        let probes = [
            ("invert-generators", invert_generators_automorphism()),
            ("inner-sigma1", inner_braid_automorphism(&group.sigma(1))),
        ];
        for (label, phi) in probes {
            let w = distinguishing_witness(&phi, &catalog, &group, 3, cfg.power_bound)?;
            let detail = match &w {
                Some(w) => format!(
                    "{} positive under {}, image {} negative",
                    w.element.pretty(),
                    catalog[w.oracle_index].descriptor(),
                    w.image.pretty()
                ),
                None => "no witness within radius 3".into(),
            };
            c.check(format!("b{}-{}", n, label), w.is_some(), detail);
        }
    }
    Ok(())
}

fn klein_lo(c: &mut Checks) -> Result<()> {
    let cones = enumerate_partial_cones(&KleinGroup, 6)?;
    let problem = ConeProblem::new(&KleinGroup, 12, max_nodes_from_env())?;
    let catalog = klein_catalog();
    let restrictions = catalog
        .iter()
        .map(|o| restrict_oracle(o.as_ref(), &KleinGroup, 6))
        .collect::<Result<Vec<_>>>()?;
    let mut extendable = Vec::new();
    for cone in &cones {
        if problem.is_extendable(&KleinGroup, cone)? {
            extendable.push(cone);
        }
    }
    let stray = extendable.iter().filter(|c| !restrictions.contains(c)).count();
    c.check(
        "extendable-cones-are-standard",
        stray == 0,
        format!(
            "{} partial cones at radius 6, {} extend to radius 12, {} unmatched",
            cones.len(),
            extendable.len(),
            stray
        ),
    );
    let missing = restrictions.iter().filter(|r| !extendable.contains(r)).count();
    c.check(
        "standard-cones-extend",
        missing == 0,
        format!("{} of 4 restrictions extend", 4 - missing),
    );
    let params = KleinOrderingParams::all();
    let mut seps = Vec::new();
    let mut all_separated = true;
    for i in 0..catalog.len() {
        for j in i + 1..catalog.len() {
            match separating_element(catalog[i].as_ref(), catalog[j].as_ref(), &KleinGroup, 2)? {
                Some(g) => seps.push(format!("{}|{}:{}", params[i], params[j], g)),
                None => {
                    all_separated = false;
                    seps.push(format!("{}|{}:none", params[i], params[j]));
                }
            }
        }
    }
    c.check("pairwise-separated", all_separated, seps.join(", "));
    Ok(())
}

fn klein_kernel(c: &mut Checks) -> Result<()> {
    const M_BOUND: i64 = 3;
    let kernel = klein_action_kernel(M_BOUND)?;
    let expected = (-M_BOUND..=M_BOUND)
        .map(|m| KleinAut::new(1, 1, m))
        .collect::<Result<Vec<_>>>()?;
    c.check(
        "members",
        kernel.members == expected,
        kernel.members.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" "),
    );
    let inner_y = KleinAut::new(1, 1, -2)?;
    let conj = inner_automorphism(Arc::new(KleinGroup), &KleinElement::Y);
    let agrees = [KleinElement::X, KleinElement::Y]
        .iter()
        .all(|g| conj.forward(g) == inner_y.apply(g));
    c.check(
        "inner-by-y-in-kernel",
        agrees && kernel.members.contains(&inner_y),
        format!("{} acts as conjugation by y", inner_y),
    );
    let mut bad = Vec::new();
    for e in &kernel.excluded {
        let a = e.automorphism;
        let pushed = act_automorphism(&a.as_automorphism(), Arc::new(KleinOracle(e.ordering)));
        let moved = pushed.sign(&e.element)? != klein_sign(e.ordering, &e.element)?;
        if (a.epsilon, a.delta) == (1, 1) || !moved {
            bad.push(a.to_string());
        }
    }
    let expected_excluded = 3 * (2 * M_BOUND as usize + 1);
    c.check(
        "non-kernel-witnessed",
        bad.is_empty() && kernel.excluded.len() == expected_excluded,
        format!(
            "{} witnessed exclusions, e.g. {} moves {} at {}",
            kernel.excluded.len(),
            kernel.excluded[0].automorphism,
            kernel.excluded[0].ordering,
            kernel.excluded[0].element
        ),
    );
    Ok(())
}

fn sqrt2_flag(first: i128) -> FormFlag {
    FormFlag::single(vec![QuadRat::sqrt(2).scale(&crate::quadratic::int(first)), QuadRat::from_int(1)])
        .expect("irrational form is total")
}

fn flag_pair_matches(found: &EigenOrderings, u: &FormFlag) -> bool {
    match found {
        EigenOrderings::Flags(fs) => {
            fs.len() == 2 && flags_equivalent(&fs[0], u) && flags_equivalent(&fs[1], &u.opposite())
        }
        EigenOrderings::All => false,
    }
}

fn flags_of(e: &EigenOrderings) -> Vec<FormFlag> {
    match e {
        EigenOrderings::Flags(fs) => fs.clone(),
        EigenOrderings::All => probe_flags(),
    }
}

fn show_flags(e: &EigenOrderings) -> String {
    match e {
        EigenOrderings::All => "all".into(),
        EigenOrderings::Flags(fs) => fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" "),
    }
}

fn matrix(c: &mut Checks) -> Result<()> {
    let a = crate::extension::matrix_a();
    let ma = a.neg();
    let plus = sqrt2_flag(1);
    let minus = sqrt2_flag(-1);
    let ea = eigen_orderings(&a, 2)?;
    let ema = eigen_orderings(&ma, 2)?;
    c.check("eigen-a", flag_pair_matches(&ea, &plus), show_flags(&ea));
    c.check("eigen-minus-a", flag_pair_matches(&ema, &minus), show_flags(&ema));
    // Disjointness as sign functions on ball(10).
    let z2 = Lattice::integer(2);
    let ball = z2.ball(10)?;
    let mut separated = true;
    let mut seps = Vec::new();
    for f in flags_of(&ea) {
        for g in flags_of(&ema) {
            let mut sep = None;
            for (_, v) in ball.nonidentity() {
                if form_sign(&f, v)? != form_sign(&g, v)? {
                    sep = Some(v.clone());
                    break;
                }
            }
            match sep {
                Some(v) => seps.push(format!("{}|{}:{}", f, g, v)),
                None => separated = false,
            }
        }
    }
    c.check("no-common-ordering", separated, seps.join(", "));
    let p1 = preserves(&a, &plus)?;
    let p2 = preserves(&a, &minus)?;
    c.check("a-preserves-plus", p1, format!("preserves(A, {}) = {}", plus, p1));
    c.check("a-moves-minus", !p2, format!("preserves(A, {}) = {}", minus, p2));
    Ok(())
}

/// Ten non-scalar rational matrices probed by the scalar suite.
pub fn pinned_nonscalar_matrices() -> Vec<RationalMatrix> {
    [
        "[[1,2],[1,1]]",
        "[[-1,-2],[-1,-1]]",
        "[[1,1],[0,1]]",
        "[[3,0],[0,2]]",
        "[[0,1],[1,0]]",
        "[[0,-1],[1,0]]",
        "[[-1,0],[0,-1]]",
        "[[2,1],[1,1]]",
        "[[1/2,0],[0,2]]",
        "[[1,2/3],[0,1]]",
    ]
    .iter()
    .map(|s| RationalMatrix::parse(s).expect("pinned matrix"))
    .collect()
}

const FLAG_CHECK_RADIUS: usize = 8;
const STAR_RADIUS: usize = 2;
const STAR_BOUND: u32 = 4;

/// First probe flag moved by `M` on `ball(8)` of `Z²`, with the vector.
fn moved_probe_flag(m: &RationalMatrix, ball: &crate::group::Ball<Lattice>) -> Result<Option<(FormFlag, LatticeVector)>> {
    let aut = matrix_automorphism(m)?;
    for f in probe_flags() {
        let base: Oracle<LatticeVector> = FlagOracle::shared(f.clone());
        let pushed = act_automorphism(&aut, base.clone());
        for (_, v) in ball.nonidentity() {
            if pushed.sign(v)? != base.sign(v)? {
                return Ok(Some((f, v.clone())));
            }
        }
    }
    Ok(None)
}

fn scalar(c: &mut Checks) -> Result<()> {
    let z2 = Lattice::integer(2);
    let q2 = Lattice::rational(2);
    let ball = z2.ball(FLAG_CHECK_RADIUS)?;
    for p in 1..=4i128 {
        for q in 1..=4i128 {
            let m = RationalMatrix::scalar(2, rat(p, q));
            let moved = moved_probe_flag(&m, &ball)?;
            let star = condition_star_check(&matrix_automorphism(&m)?, &q2, STAR_RADIUS, STAR_BOUND)?;
            let detail = match (&moved, &star) {
                (None, None) => "probe flags fixed, (*) holds".to_string(),
                (Some((f, v)), _) => format!("flag {} moved at {}", f, v),
                (None, Some(g)) => format!("(*) fails at {}", g),
            };
            c.check(format!("scalar-{}-{}", p, q), moved.is_none() && star.is_none(), detail);
        }
    }
    for (k, m) in pinned_nonscalar_matrices().iter().enumerate() {
        let moved = moved_probe_flag(m, &ball)?;
        let star = condition_star_check(&matrix_automorphism(m)?, &q2, STAR_RADIUS, STAR_BOUND)?;
        let detail = format!(
            "{}: moved {}, (*) witness {}",
            m,
            moved.as_ref().map(|(f, v)| format!("{} at {}", f, v)).unwrap_or_else(|| "none".into()),
            star.as_ref().map(|g| g.to_string()).unwrap_or_else(|| "none".into())
        );
        c.check(format!("nonscalar-{:02}", k + 1), moved.is_some() && star.is_some(), detail);
    }
    Ok(())
}

fn free(c: &mut Checks, cfg: &SuiteConfig) -> Result<()> {
    let f2 = FreeGroup::new(2);
    let magnus = MagnusOracle::new(2, cfg.magnus_degree);
    let bi = check_bi_invariance(&magnus, &f2, 3)?;
    c.check(
        "magnus-bi-invariant",
        bi.is_none(),
        match &bi {
            None => "radius 3".to_string(),
            Some((g, p)) => format!("witness g={} p={}", g.pretty(), p.pretty()),
        },
    );
    let catalog = free_catalog(cfg.magnus_degree);
    for aut in free_probe_automorphisms() {
        let phi = aut.as_automorphism();
        let w = distinguishing_witness(&phi, &catalog, &f2, 3, cfg.power_bound)?;
        c.check(
            format!("{}-distinguished", aut.label()),
            w.is_some(),
            match &w {
                Some(w) => format!(
                    "{} positive under {}, image {} negative",
                    w.element.pretty(),
                    catalog[w.oracle_index].descriptor(),
                    w.image.pretty()
                ),
                None => "no witness within radius 3".into(),
            },
        );
        let star = condition_star_check(&phi, &f2, STAR_RADIUS, 6)?;
        c.check(
            format!("{}-star-fails", aut.label()),
            star.is_some(),
            match &star {
                Some(g) => format!("no phi(g)^n = g^m with n, m <= 6 at g = {}", g.pretty()),
                None => "(*) holds up to the bound".into(),
            },
        );
    }
    Ok(())
}

fn extension(c: &mut Checks) -> Result<()> {
    let klein = Arc::new(KleinGroup);
    let y_sub = Subgroup::new(klein.clone(), vec![KleinElement::Y], "<y>");
    let py = FnOracle::new("y-positive", |g: &KleinElement| klein_sign(KleinOrderingParams::all()[0], g));
    let by_x = inner_automorphism(klein, &KleinElement::X);
    let w = conjugation_preserves(&py, &by_x, &y_sub, 6)?;
    c.check(
        "klein-rejected",
        w == Some(KleinElement::Y),
        format!("witness {}", w.map(|g| g.to_string()).unwrap_or_else(|| "none".into())),
    );
    let k = k_group();
    let pk = k_ordering(minus_sqrt2_flag());
    let w = conjugation_preserves(pk.as_ref(), &psi_on_k(), &k, 6)?;
    c.check(
        "g-accepted",
        w.is_none(),
        format!("kernel ball radius 6, witness {}", w.map(|g| g.to_string()).unwrap_or_else(|| "none".into())),
    );
    let g = g_group();
    let o = g_ordering()?;
    let rep = verify_cone_axioms(&o, &g, 4)?;
    c.check("g-axioms", rep.passed, format!("radius 4, {} violations", rep.violations.len()));
    let least = least_positive_in_ball(&o, &g, 3)?;
    c.check("g-least-positive-t", least == g.t(), format!("least {} at radius 3", least));
    let evidence = g_not_biorderable_evidence()?;
    c.check(
        "g-not-bi-invariant",
        evidence.bi_invariance_witness.is_some() && evidence.common.is_empty(),
        match &evidence.bi_invariance_witness {
            Some((a, b)) => format!("witness g={} p={}, common flags {}", a, b, evidence.common.len()),
            None => "no witness".into(),
        },
    );
    Ok(())
}

/// Twelve probe matrices with whether each is a positive scalar.
pub fn pinned_comm_probes() -> Vec<(RationalMatrix, bool)> {
    [
        ("[[1,0],[0,1]]", true),
        ("[[2,0],[0,2]]", true),
        ("[[3/2,0],[0,3/2]]", true),
        ("[[1/3,0],[0,1/3]]", true),
        ("[[4/3,0],[0,4/3]]", true),
        ("[[-1,0],[0,-1]]", false),
        ("[[-1/2,0],[0,-1/2]]", false),
        ("[[1,2],[1,1]]", false),
        ("[[1,1],[0,1]]", false),
        ("[[2,0],[0,3]]", false),
        ("[[0,1],[1,0]]", false),
        ("[[0,-1],[1,0]]", false),
    ]
    .iter()
    .map(|(s, t)| (RationalMatrix::parse(s).expect("pinned matrix"), *t))
    .collect()
}

fn vlo(c: &mut Checks) -> Result<()> {
    for (k, (m, expected)) in pinned_comm_probes().iter().enumerate() {
        let act = comm_acts_trivially(m)?;
        let witness_ok = act.trivial || act.witness.is_some();
        c.check(
            format!("comm-{:02}", k + 1),
            act.trivial == *expected && witness_ok,
            format!(
                "{}: trivial {}{}",
                m,
                act.trivial,
                act.witness
                    .as_ref()
                    .map(|(f, v)| format!(", moves {} at {}", f, v))
                    .unwrap_or_default()
            ),
        );
    }
    // Restriction to finite index and the scalar commensurations leave each
    // class unchanged.
    let subs = Sublattice::enumerate(4);
    let taus = [rat(3, 2), rat(1, 2), rat(4, 3)];
    let mut compared = 0usize;
    let mut failures = Vec::new();
    for tau in &taus {
        let comm = Commensuration::new(RationalMatrix::scalar(2, *tau))?;
        for h in &subs {
            for f in probe_flags() {
                let class = VloClass {
                    sublattice: h.clone(),
                    flag: f.clone(),
                };
                let whole = VloClass {
                    sublattice: Sublattice::full(),
                    flag: f,
                };
                let pushed = comm.push(&class)?;
                compared += 2;
                if !vlo_equal(&class, &pushed)?.equal || !vlo_equal(&class, &whole)?.equal {
                    failures.push(format!("{} on index {}", class.flag, h.index()));
                }
            }
        }
    }
    c.check(
        "scalar-classes-fixed",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} comparisons over {} sublattices of index <= 4", compared, subs.len())
        } else {
            format!("{} failures, first {}", failures.len(), failures[0])
        },
    );
    let a = Commensuration::new(crate::extension::matrix_a())?;
    let lex = VloClass {
        sublattice: Sublattice::full(),
        flag: probe_flags()[0].clone(),
    };
    let cmp = vlo_equal(&lex, &a.push(&lex)?)?;
    c.check(
        "a-moves-lex-class",
        !cmp.equal && cmp.witness.is_some(),
        format!(
            "witness {}",
            cmp.witness.map(|v| v.to_string()).unwrap_or_else(|| "none".into())
        ),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert_eq!(Suite::parse("nope"), None);
    }

    #[test]
    fn quick_suites_pass() {
        let cfg = SuiteConfig::default();
        for s in [Suite::Matrix, Suite::KleinKernel, Suite::KleinLo] {
            let out = s.run(&cfg).unwrap();
            assert!(out.passed(), "{:?}", out.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn handle_suite_small_sample() {
        let cfg = SuiteConfig {
            samples: 200,
            triples: 50,
            ..SuiteConfig::default()
        };
        let out = Suite::Handle.run(&cfg).unwrap();
        assert!(out.passed(), "{:?}", out.checks);
        assert!(out.checks[0].detail.contains(&cfg.seed.to_string()));
    }
}
