//! Library results checked against small independent reimplementations.

use std::collections::{BTreeMap, BTreeSet};

use ord_core::braid::{handle_reduce, BraidGroup, BraidOracle, BraidOrdering, BraidWord, DEFAULT_BUDGET};
use ord_core::free::{magnus_expand, FreeWord};
use ord_core::klein::{klein_action_kernel, KleinAut, KleinElement, KleinGroup, KleinOracle, KleinOrderingParams};
use ord_core::lattice::Lattice;
use ord_core::lospace::{enumerate_partial_cones, extend_partial_cone, restrict_oracle};
use ord_core::oracle::least_positive_in_ball;
use ord_core::{Group, Sign};

// Exact Burau over Z[t, t⁻¹]: polynomial = exponent -> coefficient.
type Laurent = BTreeMap<i32, i128>;
type Burau = Vec<Vec<Laurent>>;

fn lp(terms: &[(i32, i128)]) -> Laurent {
    terms.iter().copied().filter(|&(_, c)| c != 0).collect()
}

fn ladd(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = a.clone();
    for (&e, &c) in b {
        *out.entry(e).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn lmul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (&e1, &c1) in a {
        for (&e2, &c2) in b {
            *out.entry(e1 + e2).or_insert(0) += c1 * c2;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn mat_mul(a: &Burau, b: &Burau) -> Burau {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Laurent::new(), |acc, k| ladd(&acc, &lmul(&a[i][k], &b[k][j]))))
                .collect()
        })
        .collect()
}

/// Unreduced Burau image of `σᵢ^{±1}`: the block [[1−t, t],[1, 0]] and its
/// inverse [[0, 1],[t⁻¹, 1−t⁻¹]] at rows/columns `i−1, i`.
fn generator_matrix(n: usize, letter: i32) -> Burau {
    let mut m = identity(n);
    let a = letter.unsigned_abs() as usize - 1;
    let block = if letter > 0 {
        [[lp(&[(0, 1), (1, -1)]), lp(&[(1, 1)])], [lp(&[(0, 1)]), Laurent::new()]]
    } else {
        [[Laurent::new(), lp(&[(0, 1)])], [lp(&[(-1, 1)]), lp(&[(0, 1), (-1, -1)])]]
    };
    for r in 0..2 {
        for c in 0..2 {
            m[a + r][a + c] = block[r][c].clone();
        }
    }
    m
}

fn identity(n: usize) -> Burau {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { lp(&[(0, 1)]) } else { Laurent::new() }).collect())
        .collect()
}

fn burau(w: &BraidWord) -> Burau {
    let n = w.strands();
    w.letters()
        .iter()
        .fold(identity(n), |acc, &l| mat_mul(&acc, &generator_matrix(n, l)))
}

fn word(n: usize, s: &str) -> BraidWord {
    BraidWord::parse(n, s).unwrap()
}

#[test]
fn burau_oracle_respects_braid_relations() {
    assert_eq!(burau(&word(3, "1 2 1")), burau(&word(3, "2 1 2")));
    assert_eq!(burau(&word(4, "1 3")), burau(&word(4, "3 1")));
    assert_ne!(burau(&word(3, "1 2")), burau(&word(3, "2 1")));
    assert_eq!(burau(&word(3, "1 -1")), burau(&BraidWord::identity(3)));
}

#[test]
fn handle_reduce_examples() {
    let r = handle_reduce(&word(3, "1 2 -1"), DEFAULT_BUDGET).unwrap();
    assert_eq!(r, word(3, "-2 1 2"));
    let w = word(3, "2 1 -2");
    assert_eq!(handle_reduce(&w, DEFAULT_BUDGET).unwrap(), w);
    let r = handle_reduce(&word(3, "1 2 1 -2 -1 -2"), DEFAULT_BUDGET).unwrap();
    assert!(r.is_empty(), "{}", r);
}

#[test]
fn handle_reduce_preserves_exact_burau() {
    // Deterministic walk over words; B₃ Burau is faithful so this is a full
    // equality check there.
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for n in [3usize, 4] {
        for _ in 0..200 {
            let len = (next() % 14) as usize;
            let letters: Vec<i32> = (0..len)
                .map(|_| {
                    let g = (next() % (n as u64 - 1)) as i32 + 1;
                    if next() & 1 == 0 { g } else { -g }
                })
                .collect();
            let w = BraidWord::new(n, letters).unwrap();
            let r = handle_reduce(&w, DEFAULT_BUDGET).unwrap();
            assert_eq!(burau(&w), burau(&r), "{} -> {}", w, r);
        }
    }
}

#[test]
fn b3_ball_matches_exact_burau_classes() {
    let group = BraidGroup::new(3);
    for r in 1..=3 {
        let ball = group.ball(r).unwrap();
        let mut classes = BTreeSet::new();
        let mut frontier = vec![BraidWord::identity(3)];
        classes.insert(format!("{:?}", burau(&frontier[0])));
        for _ in 0..r {
            let mut next = Vec::new();
            for w in &frontier {
                for l in [1, -1, 2, -2] {
                    let v = w.concat(&BraidWord::generator(3, l));
                    classes.insert(format!("{:?}", burau(&v)));
                    next.push(v);
                }
            }
            frontier = next;
        }
        let ball_classes: BTreeSet<_> = ball.elements().iter().map(|w| format!("{:?}", burau(w))).collect();
        assert_eq!(ball.len(), ball_classes.len(), "duplicate braids in ball({})", r);
        assert_eq!(ball_classes, classes, "radius {}", r);
    }
}

#[test]
fn least_positive_agrees_with_exhaustive_scan() {
    // <_D least positive in B₃: scan the whole ball by hand.
    let group = BraidGroup::new(3);
    let o = BraidOracle::new(BraidOrdering::Dehornoy);
    let ball = group.ball(3).unwrap();
    let pos: Vec<&BraidWord> = ball
        .nonidentity()
        .map(|(_, w)| w)
        .filter(|w| ord_core::SignOracle::sign(&o, w).unwrap() == Sign::Positive)
        .collect();
    let least = pos
        .iter()
        .find(|g| {
            pos.iter().all(|h| {
                let q = g.inverse().concat(h);
                group.is_identity(&q).unwrap() || ord_core::SignOracle::sign(&o, &q).unwrap() == Sign::Positive
            })
        })
        .unwrap();
    let lib = least_positive_in_ball(&o, &group, 3).unwrap();
    assert!(group.equal(&lib, least).unwrap());
    assert!(group.equal(&lib, &word(3, "2")).unwrap());
}

fn klein_formula(s: i64, t: i64, g: (i64, i64)) -> Option<bool> {
    let (a, b) = g;
    match (a, b) {
        (0, 0) => None,
        (_, 0) => Some(t * a > 0),
        _ => Some(s * b > 0),
    }
}

fn klein_mul((a, b): (i64, i64), (c, d): (i64, i64)) -> (i64, i64) {
    (a + if b.rem_euclid(2) == 0 { c } else { -c }, b + d)
}

#[test]
fn klein_least_positive_is_y_power() {
    // The least positive element of P(s,t) is y^t; compare every ball
    // element against it with the product formula.
    for p in KleinOrderingParams::all() {
        let s = if p.s == Sign::Positive { 1 } else { -1 };
        let t = if p.t == Sign::Positive { 1 } else { -1 };
        let lib = least_positive_in_ball(&KleinOracle(p), &KleinGroup, 4).unwrap();
        assert_eq!(lib, KleinElement::new(t, 0), "{}", p);
        let yt = (t, 0);
        let yt_inv = (-t, 0);
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                if klein_formula(s, t, (a, b)) == Some(true) && (a, b) != yt {
                    // y^{-t} g must be positive.
                    let q = klein_mul(yt_inv, (a, b));
                    assert_eq!(klein_formula(s, t, q), Some(true), "{} {:?}", p, (a, b));
                }
            }
        }
    }
}

#[test]
fn klein_kernel_members_fix_every_ordering() {
    let k = klein_action_kernel(3).unwrap();
    for aut in &k.members {
        for p in KleinOrderingParams::all() {
            for a in -5i64..=5 {
                for b in -5i64..=5 {
                    if (a, b) == (0, 0) {
                        continue;
                    }
                    let g = KleinElement::new(a, b);
                    let img = aut.apply(&g);
                    let sg = ord_core::klein::klein_sign(p, &g).unwrap();
                    let si = ord_core::klein::klein_sign(p, &img).unwrap();
                    assert_eq!(sg, si, "{} {} {}", aut, p, g);
                }
            }
        }
    }
    assert!(!k.members.contains(&KleinAut::new(-1, 1, 0).unwrap()));
}

#[test]
fn z2_radius_two_cones_match_brute_force() {
    let z2 = Lattice::integer(2);
    let ball = z2.ball(2).unwrap();
    let elems: Vec<(i128, i128)> = ball
        .nonidentity()
        .map(|(_, v)| {
            let c = v.numerators();
            (c[0], c[1])
        })
        .collect();
    assert_eq!(elems.len(), 12);
    let reps: Vec<_> = elems.iter().copied().filter(|&(x, y)| x > 0 || (x == 0 && y > 0)).collect();
    assert_eq!(reps.len(), 6);
    let in_ball: BTreeSet<_> = elems.iter().copied().collect();
    let mut found = BTreeSet::new();
    for mask in 0u32..(1 << reps.len()) {
        let mut sign = BTreeMap::new();
        for (i, &(x, y)) in reps.iter().enumerate() {
            let pos = mask >> i & 1 == 1;
            sign.insert((x, y), pos);
            sign.insert((-x, -y), !pos);
        }
        let closed = elems.iter().all(|&g| {
            elems.iter().all(|&h| {
                let s = (g.0 + h.0, g.1 + h.1);
                !(sign[&g] && sign[&h] && in_ball.contains(&s)) || sign[&s]
            })
        });
        if closed {
            found.insert(sign.into_iter().collect::<Vec<_>>());
        }
    }
    assert_eq!(found.len(), 8);
    let lib = enumerate_partial_cones(&z2, 2).unwrap();
    assert_eq!(lib.len(), 8);
    let lib_set: BTreeSet<Vec<((i128, i128), bool)>> = lib
        .iter()
        .map(|c| {
            let mut v: Vec<_> = c
                .entries()
                .map(|(g, s)| {
                    let n = g.numerators();
                    ((n[0], n[1]), s == Sign::Positive)
                })
                .collect();
            v.sort();
            v
        })
        .collect();
    assert_eq!(lib_set, found);
}

#[test]
fn probe_flag_restrictions_are_enumerated() {
    let z2 = Lattice::integer(2);
    let cones = enumerate_partial_cones(&z2, 2).unwrap();
    for f in ord_core::lattice::probe_flags() {
        let o = ord_core::lattice::FlagOracle::new(f);
        let c = restrict_oracle(&o, &z2, 2).unwrap();
        assert!(cones.contains(&c));
    }
}

#[test]
fn extensions_restrict_back() {
    let z2 = Lattice::integer(2);
    for cone in enumerate_partial_cones(&z2, 2).unwrap() {
        let ext = extend_partial_cone(&cone, &z2, 3).unwrap();
        assert!(!ext.is_empty());
        for e in ext {
            assert_eq!(e.restrict_to(&z2, 2).unwrap(), cone);
        }
    }
}

#[test]
fn magnus_commutator_at_degree_two() {
    let w = FreeWord::parse(2, "xyXY").unwrap();
    let s = magnus_expand(&w, 2);
    let terms: Vec<(Vec<u8>, i64)> = s
        .terms()
        .map(|(m, c)| (m.clone(), i64::try_from(c.clone()).unwrap()))
        .collect();
    assert_eq!(terms, vec![(vec![], 1), (vec![1, 2], 1), (vec![2, 1], -1)]);
}
