//! Deciding freeness up to a weight bound, and factoring members.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::automaton::{MemberDfa, MemberState, Scanner};
use super::census::count_census;
use super::spec::SubmonoidSpec;
use super::{overlaps, shortest_period};
use crate::compositions::Composition;
use crate::error::{Error, Result};

/// A word together with two distinct factorizations into irreducibles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFactorizations {
    pub word: Composition,
    pub first: Vec<Composition>,
    pub second: Vec<Composition>,
}

fn bars(f: &[Composition]) -> String {
    f.iter()
        .map(Composition::to_string)
        .collect::<Vec<_>>()
        .join("|")
}

impl fmt::Display for TwoFactorizations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {} = {}",
            self.word,
            bars(&self.first),
            bars(&self.second)
        )
    }
}

/// `p`, `pq`, `qr` and `r` are members but `q` is not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub p: Composition,
    pub q: Composition,
    pub r: Composition,
    /// Monoid weight of `pqr`.
    pub weight: u64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} q={} r={}", self.p, self.q, self.r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    Factorization(TwoFactorizations),
    Criterion {
        p: Composition,
        q: Composition,
        r: Composition,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Factorization(t) => write!(f, "{t}"),
            Counterexample::Criterion { p, q, r } => write!(f, "p={p} q={q} r={r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessVerdict {
    /// Largest weight through which factorization is unique.
    pub free_up_to: u64,
    /// Weight bound that was searched.
    pub bound: u64,
    pub counterexample: Option<Counterexample>,
}

impl FreenessVerdict {
    pub fn is_free(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Number of ordered factorizations of a member into irreducibles.
pub fn count_factorizations(spec: &SubmonoidSpec, w: &[u32]) -> Result<BigInt> {
    let table = irreducible_factors(spec, w)?;
    let mut ways = vec![BigInt::zero(); w.len() + 1];
    ways[0] = BigInt::one();
    for j in 1..=w.len() {
        let mut s = BigInt::zero();
        for i in 0..j {
            if table[i][j] {
                s += &ways[i];
            }
        }
        ways[j] = s;
    }
    Ok(ways.pop().unwrap_or_default())
}

/// `t[i][j]`: `w[i..j]` is irreducible.
fn irreducible_factors(spec: &SubmonoidSpec, w: &[u32]) -> Result<Vec<Vec<bool>>> {
    if !spec.contains(w) {
        return Err(not_a_member(spec, w));
    }
    let scanner = Scanner::new(spec, false);
    let mut t = vec![vec![false; w.len() + 1]; w.len() + 1];
    for (i, row) in t.iter_mut().enumerate().take(w.len()) {
        let mut s = scanner.start();
        for (j, &a) in w.iter().enumerate().skip(i) {
            match scanner.step(&s, a) {
                Some(next) => s = next,
                None => break,
            }
            row[j + 1] = scanner.is_irreducible(&s);
        }
    }
    Ok(t)
}

fn not_a_member(spec: &SubmonoidSpec, w: &[u32]) -> Error {
    Error::NotAMember {
        word: word(w).to_string(),
        spec: spec.to_string(),
    }
}

fn word(w: &[u32]) -> Composition {
    Composition::from_parts_unchecked(w.to_vec())
}

/// Some factorization into irreducibles, taking the shortest possible first
/// factor at each step.
fn any_factorization(spec: &SubmonoidSpec, w: &[u32]) -> Result<Vec<Composition>> {
    let t = irreducible_factors(spec, w)?;
    let n = w.len();
    let mut reach = vec![false; n + 1];
    reach[n] = true;
    for i in (0..n).rev() {
        reach[i] = (i + 1..=n).any(|j| t[i][j] && reach[j]);
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let j = (i + 1..=n)
            .find(|&j| t[i][j] && reach[j])
            .expect("members factor into irreducibles");
        out.push(word(&w[i..j]));
        i = j;
    }
    Ok(out)
}

/// Strips the shortest irreducible prefix whose remainder is a member, and
/// repeats. For a free spec this is the unique factorization.
pub fn factor_unique(spec: &SubmonoidSpec, w: &[u32]) -> Result<Vec<Composition>> {
    if !spec.contains(w) {
        return Err(not_a_member(spec, w));
    }
    let scanner = Scanner::new(spec, false);
    let mut out = Vec::new();
    let mut rest = w;
    while !rest.is_empty() {
        let mut s = scanner.start();
        let mut cut = None;
        for (i, &a) in rest.iter().enumerate() {
            s = scanner.step(&s, a).expect("prefixes of a member stay live");
            if scanner.is_irreducible(&s) && spec.contains(&rest[i + 1..]) {
                cut = Some(i + 1);
                break;
            }
        }
        let Some(cut) = cut else {
            return Err(Error::NoIrreduciblePrefix {
                word: word(rest).to_string(),
                spec: spec.to_string(),
            });
        };
        out.push(word(&rest[..cut]));
        rest = &rest[cut..];
    }
    Ok(out)
}

/// Smallest monoid weight of a nonempty member, if there is one.
pub fn shortest_member_weight(spec: &SubmonoidSpec) -> Option<u64> {
    let dfa = MemberDfa::new(spec);
    let mut best: HashMap<MemberState, u64> = HashMap::new();
    let mut frontier = vec![(dfa.start(), 0u64)];
    let mut found: Option<u64> = None;
    // Raw weights are positive, so relaxing until nothing improves terminates
    // on the finite state set.
    while let Some((s, raw)) = frontier.pop() {
        for &a in &dfa.letters {
            let Some(next) = dfa.step(s, a) else { continue };
            let r = raw + spec.letter_weight(a);
            if best.get(&next).is_some_and(|&b| b <= r) {
                continue;
            }
            best.insert(next, r);
            if dfa.accepts(&next) {
                found = Some(found.map_or(r, |f| f.min(r)));
            }
            frontier.push((next, r));
        }
    }
    found.map(|r| r / spec.scale())
}

/// First monoid weight at which the members are outnumbered by the
/// factorizations into irreducibles, i.e. some member factors twice.
pub fn first_ambiguous_weight(spec: &SubmonoidSpec, max_weight: u64) -> Option<u64> {
    let census = count_census(spec, max_weight);
    let products = census
        .primes
        .series()
        .geometric_inverse()
        .expect("prime series has zero constant term");
    (0..=max_weight as usize)
        .find(|&n| &census.members[n] != products.coeff(n))
        .map(|n| n as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Phase {
    /// Reading `p`; tracks `p`.
    P(MemberState),
    /// Reading `q`; tracks `pq` and `q`.
    Q(MemberState, MemberState),
    /// Reading `r`; tracks `qr` and `r`.
    R(MemberState, MemberState),
}

/// Lightest `(p, q, r)` with `p, pq, qr, r` members and `q` not, where
/// `pqr` has monoid weight at most `max_weight`.
///
/// Runs a shortest-path search over triples of recognizer states, reading
/// `pqr` one letter at a time and switching phase at the two cut points.
pub fn schutzenberger_search(spec: &SubmonoidSpec, max_weight: u64) -> Option<Violation> {
    let dfa = MemberDfa::new(spec);
    let raw_max = spec.raw_bound(max_weight) as usize;
    // Node index -> (phase, parent, letter read on the incoming edge).
    let mut nodes: Vec<(Phase, usize, Option<u32>)> = Vec::new();
    let mut seen: HashMap<Phase, usize> = HashMap::new();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); raw_max + 1];
    let start = Phase::P(dfa.start());
    nodes.push((start, usize::MAX, None));
    seen.insert(start, 0);
    buckets[0].push(0);
    let mut dist = vec![0usize];

    let mut raw = 0;
    while raw <= raw_max {
        let mut k = 0;
        while k < buckets[raw].len() {
            let id = buckets[raw][k];
            k += 1;
            if dist[id] != raw {
                continue;
            }
            let phase = nodes[id].0;
            if let Phase::R(y, z) = phase {
                if z.started && dfa.accepts(&y) && dfa.accepts(&z) {
                    return Some(rebuild(spec, &nodes, id));
                }
            }
            let mut edges: Vec<(Phase, usize, Option<u32>)> = Vec::new();
            match phase {
                Phase::P(x) if x.started && dfa.accepts(&x) => {
                    edges.push((Phase::Q(x, dfa.start()), 0, None))
                }
                Phase::Q(x, y) if y.started && dfa.accepts(&x) && !dfa.accepts(&y) => {
                    edges.push((Phase::R(y, dfa.start()), 0, None))
                }
                _ => {}
            }
            for &a in &dfa.letters {
                let next = match phase {
                    Phase::P(x) => dfa.step(x, a).map(Phase::P),
                    Phase::Q(x, y) => dfa
                        .step(x, a)
                        .zip(dfa.step(y, a))
                        .map(|(x, y)| Phase::Q(x, y)),
                    Phase::R(y, z) => dfa
                        .step(y, a)
                        .zip(dfa.step(z, a))
                        .map(|(y, z)| Phase::R(y, z)),
                };
                if let Some(next) = next {
                    edges.push((next, spec.letter_weight(a) as usize, Some(a)));
                }
            }
            for (next, cost, letter) in edges {
                let d = raw + cost;
                if d > raw_max {
                    continue;
                }
                match seen.get(&next) {
                    Some(&j) if dist[j] <= d => {}
                    Some(&j) => {
                        dist[j] = d;
                        nodes[j].1 = id;
                        nodes[j].2 = letter;
                        buckets[d].push(j);
                    }
                    None => {
                        let j = nodes.len();
                        nodes.push((next, id, letter));
                        dist.push(d);
                        seen.insert(next, j);
                        buckets[d].push(j);
                    }
                }
            }
        }
        raw += 1;
    }
    None
}

fn rebuild(
    spec: &SubmonoidSpec,
    nodes: &[(Phase, usize, Option<u32>)],
    mut id: usize,
) -> Violation {
    let mut parts: [Vec<u32>; 3] = Default::default();
    while id != 0 {
        let (phase, parent, letter) = nodes[id];
        if let Some(a) = letter {
            let slot = match phase {
                Phase::P(_) => 0,
                Phase::Q(..) => 1,
                Phase::R(..) => 2,
            };
            parts[slot].push(a);
        }
        id = parent;
    }
    for p in &mut parts {
        p.reverse();
    }
    let [p, q, r] = parts;
    let weight = spec.weight(&[p.as_slice(), &q, &r].concat());
    Violation {
        p: word(&p),
        q: word(&q),
        r: word(&r),
        weight,
    }
}

/// Freeness through `max_weight`, decided both by counting factorizations
/// and by searching for a criterion violation. The two must find the same
/// first bad weight.
pub fn is_free_up_to(spec: &SubmonoidSpec, max_weight: u64) -> Result<FreenessVerdict> {
    if let Some((u, v)) = spec.closure_violation(max_weight) {
        return Err(Error::NotClosed {
            spec: spec.to_string(),
            left: u.to_string(),
            right: v.to_string(),
        });
    }
    if let Some(s) = shortest_member_weight(spec) {
        if max_weight < 2 * s {
            return Err(Error::BoundTooSmall {
                bound: max_weight,
                needed: 2 * s,
            });
        }
    }
    let counted = first_ambiguous_weight(spec, max_weight);
    let searched = schutzenberger_search(spec, max_weight);
    match (counted, searched) {
        (None, None) => Ok(FreenessVerdict {
            free_up_to: max_weight,
            bound: max_weight,
            counterexample: None,
        }),
        (Some(n), Some(v)) if n == v.weight => {
            let witness = split_violation(spec, &v)?;
            if count_factorizations(spec, witness.word.parts())? < BigInt::from(2) {
                return Err(disagreement(
                    spec,
                    format!("{witness} is not doubly factored"),
                ));
            }
            Ok(FreenessVerdict {
                free_up_to: n - 1,
                bound: max_weight,
                counterexample: Some(Counterexample::Factorization(witness)),
            })
        }
        (c, s) => Err(disagreement(
            spec,
            format!(
                "counting finds {}, criterion search finds {}",
                c.map_or("nothing".to_string(), |n| format!("weight {n}")),
                s.map_or("nothing".to_string(), |v| format!(
                    "{v} at weight {}",
                    v.weight
                )),
            ),
        )),
    }
}

/// Verdict from the criterion search alone.
pub fn criterion_verdict(spec: &SubmonoidSpec, max_weight: u64) -> FreenessVerdict {
    match schutzenberger_search(spec, max_weight) {
        None => FreenessVerdict {
            free_up_to: max_weight,
            bound: max_weight,
            counterexample: None,
        },
        Some(v) => FreenessVerdict {
            free_up_to: v.weight - 1,
            bound: max_weight,
            counterexample: Some(Counterexample::Criterion {
                p: v.p,
                q: v.q,
                r: v.r,
            }),
        },
    }
}

fn disagreement(spec: &SubmonoidSpec, detail: String) -> Error {
    Error::CriterionDisagreement {
        spec: spec.to_string(),
        detail,
    }
}

/// `pqr` cut after `p` and after `pq`.
fn split_violation(spec: &SubmonoidSpec, v: &Violation) -> Result<TwoFactorizations> {
    let pq = v.p.concat(&v.q);
    let qr = v.q.concat(&v.r);
    let mut first = any_factorization(spec, v.p.parts())?;
    first.extend(any_factorization(spec, qr.parts())?);
    let mut second = any_factorization(spec, pq.parts())?;
    second.extend(any_factorization(spec, v.r.parts())?);
    Ok(TwoFactorizations {
        word: pq.concat(&v.r),
        first,
        second,
    })
}

/// For a self-overlapping `w`, a word with two factorizations into
/// irreducibles of the monoid of words starting with `w`.
///
/// With `d` the shortest period, `t = w u = v w` where `v = w[..d]` and
/// `u = w[len-d..]`, and `w t = w (w u) = (w v) w`.
pub fn double_factorization_witness(w: &[u32]) -> Result<TwoFactorizations> {
    if !overlaps(w, w)? {
        return Err(Error::NonOverlapping(word(w).to_string()));
    }
    let d = shortest_period(w);
    let v = &w[..d];
    let u = &w[w.len() - d..];
    let wu = [w, u].concat();
    let wv = [w, v].concat();
    Ok(TwoFactorizations {
        word: word(&[w, &wu].concat()),
        first: vec![word(w), word(&wu)],
        second: vec![word(&wv), word(w)],
    })
}
