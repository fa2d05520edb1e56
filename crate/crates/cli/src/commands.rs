use std::cmp::Ordering;
use std::sync::Arc;

use ord_core::braid::{handle_reduce, BraidGroup, BraidOracle, BraidOrdering, BraidWord};
use ord_core::extension::{
    g_group, g_not_biorderable_evidence, g_ordering, k_ordering, minus_sqrt2_flag, matrix_a,
    LexExtensionOracle, EVIDENCE_RADIUS, EXTENSION_CHECK_RADIUS,
};
use ord_core::free::{
    free_catalog, free_probe_automorphisms, magnus_expand, monomial_name, BraidPullbackOracle, FreeGroup, FreeWord, MagnusOracle,
};
use ord_core::klein::{klein_action_kernel, klein_catalog, KleinAut, KleinElement, KleinGroup, KleinOrderingParams};
use ord_core::lattice::{
    comm_acts_trivially, eigen_orderings, eigenvalue_of, form_sign, is_scalar_star, matrix_automorphism,
    vlo_equal, EigenOrderings, FlagOracle, FormFlag, Lattice, LatticeVector, ScalarStar, Sublattice, VloClass,
};
use ord_core::lospace::{
    condition_star_check, enumerate_partial_cones, extend_partial_cone, restrict_oracle, separating_element,
};
use ord_core::matrix::RationalMatrix;
use ord_core::oracle::{
    check_bi_invariance, compare, distinguishing_witness, least_positive_in_ball, verify_cone_axioms,
    GroupAutomorphism, Oracle,
};
use ord_core::report::Report;
use ord_core::suites::{combined_report, run_all, Suite, SuiteConfig};
use ord_core::{Group, OrderError, Sign};

use crate::args::{AbelianCmd, BraidCmd, Command, ExtCmd, FreeCmd, KleinCmd, LospaceCmd};
use crate::config::RunConfig;
use crate::CliError;

type Res<T> = Result<T, CliError>;

pub struct CommandOutput {
    pub report: Report,
    /// False when a verification ran to completion but failed.
    pub ok: bool,
}

impl From<Report> for CommandOutput {
    fn from(report: Report) -> Self {
        CommandOutput { report, ok: true }
    }
}

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Res<CommandOutput> {
    match cmd {
        Command::Braid(c) => braid(c, cfg).map(Into::into),
        Command::Klein(c) => klein(c, cfg).map(Into::into),
        Command::Abelian(c) => abelian(c, cfg).map(Into::into),
        Command::Free(c) => free(c, cfg).map(Into::into),
        Command::Ext(c) => ext(c, cfg).map(Into::into),
        Command::Lospace(c) => lospace(c, cfg).map(Into::into),
        Command::Verify { suite } => verify(suite, cfg),
    }
}

fn sign_symbol(s: Option<Sign>) -> String {
    match s {
        Some(s) => s.to_string(),
        None => "0".into(),
    }
}

// braid

fn braid_ordering(s: &str) -> Res<BraidOrdering> {
    Ok(s.parse::<BraidOrdering>()?)
}

fn braid(cmd: &BraidCmd, cfg: &RunConfig) -> Res<Report> {
    match cmd {
        BraidCmd::Sign { input, ordering } => {
            let n = cfg.strands_or(input.strands);
            let kind = braid_ordering(cfg.ordering_or(ordering, "dehornoy"))?;
            let w = BraidWord::parse(n, &input.word)?;
            let s = BraidOracle::new(kind).with_budget(cfg.budget).sign_or_identity(&w)?;
            let mut r = Report::new();
            r.set("ordering", kind)
                .set("sign", sign_symbol(s))
                .set("strands", n)
                .set("word", &w)
                .line(sign_symbol(s));
            Ok(r)
        }
        BraidCmd::Compare {
            strands,
            left,
            right,
            ordering,
        } => {
            let n = cfg.strands_or(*strands);
            let kind = braid_ordering(cfg.ordering_or(ordering, "dehornoy"))?;
            let group = BraidGroup::new(n).with_budget(cfg.budget);
            let (a, b) = (BraidWord::parse(n, left)?, BraidWord::parse(n, right)?);
            let o = BraidOracle::new(kind).with_budget(cfg.budget);
            let symbol = match compare(&group, &o, &a, &b)? {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            };
            let mut r = Report::new();
            r.set("left", &a)
                .set("ordering", kind)
                .set("relation", symbol)
                .set("right", &b)
                .line(format!("{} {} {}", a.pretty(), symbol, b.pretty()));
            Ok(r)
        }
        BraidCmd::Reduce { input } => {
            let n = cfg.strands_or(input.strands);
            let w = BraidWord::parse(n, &input.word)?;
            let red = handle_reduce(&w, cfg.budget)?;
            let mut r = Report::new();
            r.set("input", &w)
                .set("pretty", red.pretty())
                .set("reduced", &red)
                .line(red.to_string());
            Ok(r)
        }
        BraidCmd::Least { strands, ordering } => {
            let n = cfg.strands_or(*strands);
            let kind = braid_ordering(cfg.ordering_or(ordering, "dehornoy"))?;
            let radius = cfg.radius_or(4);
            let group = BraidGroup::new(n).with_budget(cfg.budget);
            let o = BraidOracle::new(kind).with_budget(cfg.budget);
            let least = least_positive_in_ball(&o, &group, radius)?;
            let mut r = Report::new();
            r.set("least", &least)
                .set("ordering", kind)
                .set("pretty", least.pretty())
                .set("radius", radius)
                .set("strands", n)
                .line(least.pretty());
            Ok(r)
        }
    }
}

// klein

fn parse_klein_aut(s: &str) -> Res<KleinAut> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Compute(OrderError::Parse(format!("invalid automorphism {:?}, expected (e,d,m)", s)));
    let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
    let parts = inner
        .split(',')
        .map(|x| x.parse::<i64>().map_err(|_| bad()))
        .collect::<Res<Vec<_>>>()?;
    match parts[..] {
        [e, d, m] => Ok(KleinAut::new(e, d, m).map_err(|e| CliError::Compute(OrderError::Parse(e.to_string())))?),
        _ => Err(bad()),
    }
}

fn klein(cmd: &KleinCmd, cfg: &RunConfig) -> Res<Report> {
    let mut r = Report::new();
    match cmd {
        KleinCmd::Orderings => {
            let mut items = Vec::new();
            for (p, o) in KleinOrderingParams::all().iter().zip(klein_catalog()) {
                let least = least_positive_in_ball(o.as_ref(), &KleinGroup, cfg.radius_or(4))?;
                let line = format!(
                    "{}: x {}, y {}, least positive {}",
                    p,
                    o.sign(&KleinElement::X)?,
                    o.sign(&KleinElement::Y)?,
                    least
                );
                r.line(line.clone());
                items.push(line);
            }
            r.list("orderings", items);
        }
        KleinCmd::Kernel { m_bound } => {
            let k = klein_action_kernel(*m_bound)?;
            r.line(format!("kernel for |m| <= {}:", m_bound));
            for a in &k.members {
                r.line(a.to_string());
            }
            let excluded: Vec<String> = k
                .excluded
                .iter()
                .map(|e| format!("{} moves {} at {}", e.automorphism, e.ordering, e.element))
                .collect();
            r.line(format!("excluded: {}", excluded.len()));
            r.list("members", &k.members).list("excluded", excluded).set("m-bound", m_bound);
        }
        KleinCmd::Witness { aut } => {
            let phi = parse_klein_aut(aut)?;
            let radius = cfg.radius_or(8);
            let w = distinguishing_witness(&phi.as_automorphism(), &klein_catalog(), &KleinGroup, radius, cfg.bound)?;
            r.set("automorphism", phi).set("radius", radius);
            match w {
                Some(w) => {
                    let p = KleinOrderingParams::all()[w.oracle_index];
                    r.set("ordering", p)
                        .set("element", w.element)
                        .set("image", w.image)
                        .line(format!("{}: {} positive, image {} negative", p, w.element, w.image));
                }
                None => {
                    r.set("ordering", "none").line(format!(
                        "none: {} fixes all four orderings on ball({})",
                        phi, radius
                    ));
                }
            }
        }
    }
    Ok(r)
}

// abelian

fn parse_matrix(s: &str) -> Res<RationalMatrix> {
    Ok(RationalMatrix::parse(s)?)
}

fn flag_pairs(flags: &[FormFlag]) -> Vec<(FormFlag, bool)> {
    let mut out: Vec<(FormFlag, bool)> = Vec::new();
    let mut used = vec![false; flags.len()];
    for i in 0..flags.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let opp = flags[i].opposite();
        let partner = (i + 1..flags.len()).find(|&j| !used[j] && flags[j] == opp);
        if let Some(j) = partner {
            used[j] = true;
        }
        out.push((flags[i].clone(), partner.is_some()));
    }
    out
}

fn abelian(cmd: &AbelianCmd, cfg: &RunConfig) -> Res<Report> {
    let mut r = Report::new();
    match cmd {
        AbelianCmd::Sign { flag, vector, field } => {
            let f = FormFlag::parse(flag, *field)?;
            let v = LatticeVector::parse(vector)?;
            let s = form_sign(&f, &v)?;
            r.set("flag", &f).set("sign", s).set("vector", &v).line(s.to_string());
        }
        AbelianCmd::Eigen { matrix, field } => {
            let m = parse_matrix(matrix)?;
            r.set("matrix", &m);
            match eigen_orderings(&m, *field)? {
                EigenOrderings::All => {
                    r.set("orderings", "all").line("all orderings (positive scalar)");
                }
                EigenOrderings::Flags(fs) if fs.is_empty() => {
                    r.list("orderings", Vec::<String>::new()).line("none");
                }
                EigenOrderings::Flags(fs) => {
                    let mut items = Vec::new();
                    for (f, paired) in flag_pairs(&fs) {
                        let label = if paired { format!("±{}", f) } else { f.to_string() };
                        let item = match eigenvalue_of(&m, &f.vectors()[0]) {
                            Some(l) => format!("{}, eigenvalue {}", label, l),
                            None => label,
                        };
                        r.line(item.clone());
                        items.push(item);
                    }
                    r.list("orderings", items);
                }
            }
        }
        AbelianCmd::Star { matrix } => {
            let m = parse_matrix(matrix)?;
            let radius = cfg.radius_or(2);
            let scalar = match is_scalar_star(&m)? {
                ScalarStar::Scalar(c) => format!("scalar {}", ord_core::quadratic::format_rational(&c)),
                ScalarStar::NotScalar { witness } => format!("not scalar, witness {}", witness),
            };
            let q = Lattice::rational(m.dim());
            let star = condition_star_check(&matrix_automorphism(&m)?, &q, radius, cfg.bound)?;
            let star = match star {
                None => "holds-up-to-bound".to_string(),
                Some(g) => format!("fails at {}", g),
            };
            r.set("condition-star", &star)
                .set("matrix", &m)
                .set("scalar", &scalar)
                .line(scalar)
                .line(format!("condition (*): {}", star));
        }
        AbelianCmd::Vlo {
            matrix,
            flag,
            other,
            basis,
            other_basis,
            field,
        } => {
            if let Some(m) = matrix {
                let m = parse_matrix(m)?;
                let act = comm_acts_trivially(&m)?;
                r.set("matrix", &m).set("trivial", act.trivial);
                match act.witness {
                    None => {
                        r.line("acts trivially");
                    }
                    Some((f, v)) => {
                        r.set("witness-flag", &f)
                            .set("witness-vector", &v)
                            .line(format!("moves {} at {}", f, v));
                    }
                }
            } else {
                let (Some(f1), Some(f2)) = (flag, other) else {
                    return Err(CliError::Usage("give --matrix, or --flag and --other".into()));
                };
                let sub = |b: &Option<String>| -> Res<Sublattice> {
                    match b {
                        None => Ok(Sublattice::full()),
                        Some(s) => Ok(Sublattice::new(parse_matrix(s)?)?),
                    }
                };
                let c1 = VloClass {
                    sublattice: sub(basis)?,
                    flag: FormFlag::parse(f1, *field)?,
                };
                let c2 = VloClass {
                    sublattice: sub(other_basis)?,
                    flag: FormFlag::parse(f2, *field)?,
                };
                let cmp = vlo_equal(&c1, &c2)?;
                r.set("equal", cmp.equal);
                match cmp.witness {
                    Some(v) => {
                        r.set("witness", &v).line(format!("different, witness {}", v));
                    }
                    None => {
                        r.line(if cmp.equal { "equal" } else { "different" });
                    }
                }
            }
        }
    }
    Ok(r)
}

// free

fn free_ordering(s: &str, degree: usize) -> Res<Oracle<FreeWord>> {
    match s {
        "magnus" => Ok(Arc::new(MagnusOracle::new(2, degree))),
        "pullback" => Ok(Arc::new(BraidPullbackOracle::new())),
        _ => Err(OrderError::Parse(format!("unknown free ordering {:?}, expected magnus or pullback", s)).into()),
    }
}

fn free_aut(label: &str) -> Res<GroupAutomorphism<FreeWord>> {
    free_probe_automorphisms()
        .into_iter()
        .find(|a| a.label() == label)
        .map(|a| a.as_automorphism())
        .ok_or_else(|| {
            OrderError::Parse(format!(
                "unknown automorphism {:?}, expected swap, transvection, invert-x or inner-x",
                label
            ))
            .into()
        })
}

fn free(cmd: &FreeCmd, cfg: &RunConfig) -> Res<Report> {
    let mut r = Report::new();
    let f2 = FreeGroup::new(2);
    match cmd {
        FreeCmd::Sign { word, ordering } => {
            let name = cfg.ordering_or(ordering, "magnus");
            let o = free_ordering(name, cfg.degree)?;
            let w = FreeWord::parse(2, word)?;
            let s = o.sign(&w)?;
            r.set("ordering", name).set("sign", s).set("word", &w);
            if name == "magnus" {
                let series = magnus_expand(&w, cfg.degree);
                if let Some((m, c)) = series.leading_term() {
                    r.set("leading-term", format!("{} {}", c, monomial_name(m)));
                }
            }
            r.line(s.to_string());
        }
        FreeCmd::Witness { aut } => {
            let phi = free_aut(aut)?;
            let radius = cfg.radius_or(3);
            let catalog = free_catalog(cfg.degree);
            let w = distinguishing_witness(&phi, &catalog, &f2, radius, cfg.bound)?;
            r.set("automorphism", aut).set("radius", radius);
            match w {
                Some(w) => {
                    let desc = catalog[w.oracle_index].descriptor();
                    r.set("element", &w.element)
                        .set("ordering", &desc)
                        .line(format!(
                            "{} positive under {}, image {} negative",
                            w.element.pretty(),
                            desc,
                            w.image.pretty()
                        ));
                }
                None => {
                    r.set("element", "none").line("no witness");
                }
            }
            let star = condition_star_check(&phi, &f2, 2, cfg.bound)?;
            let star = match star {
                Some(g) => format!("fails at {}", g.pretty()),
                None => "holds-up-to-bound".into(),
            };
            r.set("condition-star", &star).line(format!("condition (*): {}", star));
        }
    }
    Ok(r)
}

// ext

fn ext(cmd: &ExtCmd, cfg: &RunConfig) -> Res<Report> {
    let mut r = Report::new();
    let g = g_group();
    match cmd {
        ExtCmd::Build { flag } => {
            let f = match flag {
                Some(s) => FormFlag::parse(s, 2)?,
                None => minus_sqrt2_flag(),
            };
            let radius = cfg.radius_or(EXTENSION_CHECK_RADIUS);
            LexExtensionOracle::new(&g, k_ordering(f.clone()), radius)?;
            r.set("check-radius", radius)
                .set("group", g.name())
                .set("kernel-flag", &f)
                .set("matrix", matrix_a())
                .line(format!("group {}", g.name()))
                .line(format!("A = {}", matrix_a()))
                .line(format!("kernel ordering {}", f))
                .line(format!("conjugation by t preserves it on ball({}): ordering built", radius));
        }
        ExtCmd::Verify => {
            let o = g_ordering()?;
            let radius = cfg.radius_or(4);
            let rep = verify_cone_axioms(&o, &g, radius)?;
            let bi = check_bi_invariance(&o, &g, EVIDENCE_RADIUS)?;
            let ev = g_not_biorderable_evidence()?;
            let bi_text = match &bi {
                Some((a, b)) => format!("fails, g={} p={}", a, b),
                None => "holds".into(),
            };
            r.set("axioms", if rep.passed { "passed" } else { "failed" })
                .set("bi-invariance", &bi_text)
                .set("common-eigen-orderings", ev.common.len())
                .set("radius", radius)
                .line(format!(
                    "cone axioms on ball({}): {}",
                    radius,
                    if rep.passed { "passed" } else { "failed" }
                ))
                .line(format!("bi-invariance on ball({}): {}", EVIDENCE_RADIUS, bi_text))
                .line(format!("orderings preserved by both A and -A: {}", ev.common.len()));
        }
        ExtCmd::Least => {
            let o = g_ordering()?;
            let radius = cfg.radius_or(3);
            let least = least_positive_in_ball(&o, &g, radius)?;
            let is_t = least == g.t();
            r.set("is-t", is_t).set("least", &least).set("radius", radius).line(format!(
                "{}{}",
                least,
                if is_t { " = t" } else { "" }
            ));
        }
    }
    Ok(r)
}

// lospace

enum GroupSpec {
    Z,
    Z2,
    Q2,
    Klein,
    F2,
    Braid(usize),
}

fn group_spec(s: &str) -> Res<GroupSpec> {
    Ok(match s {
        "z" => GroupSpec::Z,
        "z2" => GroupSpec::Z2,
        "q2" => GroupSpec::Q2,
        "klein" => GroupSpec::Klein,
        "f2" => GroupSpec::F2,
        t => match t.strip_prefix('b').and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if n >= 2 => GroupSpec::Braid(n),
            _ => return Err(CliError::Usage(format!("unknown group {:?}", s))),
        },
    })
}

fn lattice_ordering(s: &str) -> Res<Oracle<LatticeVector>> {
    Ok(FlagOracle::shared(FormFlag::parse(s, 2)?))
}

fn klein_ordering(s: &str) -> Res<Oracle<KleinElement>> {
    let p: KleinOrderingParams = s.parse()?;
    Ok(Arc::new(ord_core::klein::KleinOracle(p)))
}

fn braid_oracle(s: &str, budget: u64) -> Res<Oracle<BraidWord>> {
    Ok(Arc::new(BraidOracle::new(braid_ordering(s)?).with_budget(budget)))
}

fn cones_report<G: Group>(group: &G, radius: usize) -> Res<Report> {
    let cones = enumerate_partial_cones(group, radius)?;
    let mut r = Report::new();
    let lines: Vec<String> = cones.iter().map(|c| c.serialize().trim_end().replace('\n', " ")).collect();
    r.set("count", cones.len())
        .set("group", group.name())
        .set("radius", radius)
        .list("cones", &lines)
        .line(format!("{} partial cones on ball({}) of {}", cones.len(), radius, group.name()));
    for l in lines {
        r.line(l);
    }
    Ok(r)
}

fn extend_report<G: Group>(
    group: &G,
    radius: usize,
    radius2: usize,
    start: Option<Oracle<G::Element>>,
    index: usize,
) -> Res<Report> {
    let cone = match start {
        Some(o) => restrict_oracle(o.as_ref(), group, radius)?,
        None => {
            let cones = enumerate_partial_cones(group, radius)?;
            let n = cones.len();
            cones
                .into_iter()
                .nth(index)
                .ok_or_else(|| CliError::Usage(format!("cone index {} out of range ({} cones)", index, n)))?
        }
    };
    let ext = extend_partial_cone(&cone, group, radius2)?;
    let mut r = Report::new();
    r.set("count", ext.len())
        .set("radius", radius)
        .set("radius2", radius2)
        .set("start", cone.serialize().trim_end().replace('\n', " "))
        .line(format!(
            "{} extensions from ball({}) to ball({})",
            ext.len(),
            radius,
            radius2
        ));
    Ok(r)
}

fn separate_report<G: Group>(group: &G, a: Oracle<G::Element>, b: Oracle<G::Element>, radius: usize) -> Res<Report> {
    let sep = separating_element(a.as_ref(), b.as_ref(), group, radius)?;
    let text = sep.map(|g| g.to_string()).unwrap_or_else(|| "none".into());
    let mut r = Report::new();
    r.set("element", &text).set("radius", radius).line(text);
    Ok(r)
}

fn star_report<G: Group>(group: &G, phi: &GroupAutomorphism<G::Element>, radius: usize, bound: u32) -> Res<Report> {
    let w = condition_star_check(phi, group, radius, bound)?;
    let text = match w {
        Some(g) => format!("witness {}", g),
        None => "holds-up-to-bound".into(),
    };
    let mut r = Report::new();
    r.set("bound", bound).set("radius", radius).set("result", &text).line(text);
    Ok(r)
}

fn lospace(cmd: &LospaceCmd, cfg: &RunConfig) -> Res<Report> {
    match cmd {
        LospaceCmd::Enum { group } => {
            let radius = cfg.radius_or(2);
            match group_spec(cfg.group_or(group, "z2"))? {
                GroupSpec::Z => cones_report(&Lattice::integer(1), radius),
                GroupSpec::Z2 => cones_report(&Lattice::integer(2), radius),
                GroupSpec::Q2 => cones_report(&Lattice::rational(2), radius),
                GroupSpec::Klein => cones_report(&KleinGroup, radius),
                GroupSpec::F2 => cones_report(&FreeGroup::new(2), radius),
                GroupSpec::Braid(n) => cones_report(&BraidGroup::new(n).with_budget(cfg.budget), radius),
            }
        }
        LospaceCmd::Extend {
            group,
            radius2,
            ordering,
            index,
        } => {
            let radius = cfg.radius_or(4);
            let o = ordering.as_deref();
            match group_spec(cfg.group_or(group, "klein"))? {
                GroupSpec::Z => extend_report(&Lattice::integer(1), radius, *radius2, o.map(lattice_ordering).transpose()?, *index),
                GroupSpec::Z2 => extend_report(&Lattice::integer(2), radius, *radius2, o.map(lattice_ordering).transpose()?, *index),
                GroupSpec::Q2 => extend_report(&Lattice::rational(2), radius, *radius2, o.map(lattice_ordering).transpose()?, *index),
                GroupSpec::Klein => extend_report(&KleinGroup, radius, *radius2, o.map(klein_ordering).transpose()?, *index),
                GroupSpec::F2 => extend_report(
                    &FreeGroup::new(2),
                    radius,
                    *radius2,
                    o.map(|s| free_ordering(s, cfg.degree)).transpose()?,
                    *index,
                ),
                GroupSpec::Braid(n) => extend_report(
                    &BraidGroup::new(n).with_budget(cfg.budget),
                    radius,
                    *radius2,
                    o.map(|s| braid_oracle(s, cfg.budget)).transpose()?,
                    *index,
                ),
            }
        }
        LospaceCmd::Separate { group, first, second } => {
            let radius = cfg.radius_or(2);
            match group_spec(cfg.group_or(group, "klein"))? {
                GroupSpec::Z => separate_report(&Lattice::integer(1), lattice_ordering(first)?, lattice_ordering(second)?, radius),
                GroupSpec::Z2 => separate_report(&Lattice::integer(2), lattice_ordering(first)?, lattice_ordering(second)?, radius),
                GroupSpec::Q2 => separate_report(&Lattice::rational(2), lattice_ordering(first)?, lattice_ordering(second)?, radius),
                GroupSpec::Klein => separate_report(&KleinGroup, klein_ordering(first)?, klein_ordering(second)?, radius),
                GroupSpec::F2 => separate_report(
                    &FreeGroup::new(2),
                    free_ordering(first, cfg.degree)?,
                    free_ordering(second, cfg.degree)?,
                    radius,
                ),
                GroupSpec::Braid(n) => separate_report(
                    &BraidGroup::new(n).with_budget(cfg.budget),
                    braid_oracle(first, cfg.budget)?,
                    braid_oracle(second, cfg.budget)?,
                    radius,
                ),
            }
        }
        LospaceCmd::Star { group, matrix, aut } => {
            let radius = cfg.radius_or(2);
            let need = |x: &Option<String>, what: &str| {
                x.clone().ok_or_else(|| CliError::Usage(format!("--{} is required for this group", what)))
            };
            match group_spec(cfg.group_or(group, "z2"))? {
                GroupSpec::Z2 => {
                    let phi = matrix_automorphism(&parse_matrix(&need(matrix, "matrix")?)?)?;
                    star_report(&Lattice::integer(2), &phi, radius, cfg.bound)
                }
                GroupSpec::Q2 => {
                    let phi = matrix_automorphism(&parse_matrix(&need(matrix, "matrix")?)?)?;
                    star_report(&Lattice::rational(2), &phi, radius, cfg.bound)
                }
                GroupSpec::F2 => star_report(&FreeGroup::new(2), &free_aut(&need(aut, "aut")?)?, radius, cfg.bound),
                GroupSpec::Klein => {
                    let phi = parse_klein_aut(&need(aut, "aut")?)?.as_automorphism();
                    star_report(&KleinGroup, &phi, radius, cfg.bound)
                }
                _ => Err(CliError::Usage("star supports z2, q2, f2 and klein".into())),
            }
        }
    }
}

// verify

fn verify(suite: &str, cfg: &RunConfig) -> Res<CommandOutput> {
    let sc = SuiteConfig {
        seed: cfg.seed,
        budget: cfg.budget,
        power_bound: cfg.bound,
        ..SuiteConfig::default()
    };
    let outcomes = if suite == "all" {
        run_all(&sc)?
    } else {
        let s = Suite::parse(suite).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            CliError::Usage(format!("unknown suite {:?}; expected all or one of {}", suite, names.join(", ")))
        })?;
        vec![s.run(&sc)?]
    };
    let ok = outcomes.iter().all(|o| o.passed());
    Ok(CommandOutput {
        report: combined_report(&outcomes),
        ok,
    })
}
