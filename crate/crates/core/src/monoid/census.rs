//! Member and irreducible counts by weight.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use super::automaton::{ScanState, Scanner};
use super::spec::SubmonoidSpec;
use crate::compositions::Composition;
use crate::series::TruncatedSeries;

/// Irreducible counts `u_1..u_W` by monoid weight, optionally with the words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    pub max_weight: u64,
    /// `counts[n]` for `0 <= n <= max_weight`; `counts[0]` is always zero.
    pub counts: Vec<BigInt>,
    pub words: Option<Vec<Vec<Composition>>>,
}

impl PrimeTable {
    /// `sum u_n x^n` as a series of order `max_weight`.
    pub fn series(&self) -> TruncatedSeries {
        TruncatedSeries::new(self.counts.clone())
    }

    /// Irreducibles of weight `n`, when the words were kept.
    pub fn words_of_weight(&self, n: u64) -> Option<&[Composition]> {
        self.words.as_ref()?.get(n as usize).map(Vec::as_slice)
    }
}

/// Members and irreducibles by monoid weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    /// `members[n]`, with `members[0] = 1` for the empty word.
    pub members: Vec<BigInt>,
    pub primes: PrimeTable,
}

impl Census {
    pub fn member_series(&self) -> TruncatedSeries {
        TruncatedSeries::new(self.members.clone())
    }
}

/// Irreducibles of weight at most `max_weight`, by enumeration.
pub fn irreducibles(spec: &SubmonoidSpec, max_weight: u64) -> PrimeTable {
    census(spec, max_weight, true).primes
}

/// Walks every word that can still be extended to a member, up to the weight
/// bound, counting members and irreducibles as they are reached.
pub fn census(spec: &SubmonoidSpec, max_weight: u64, keep_words: bool) -> Census {
    let scanner = Scanner::new(spec, false);
    let len = max_weight as usize + 1;
    let mut walk = Walk {
        scanner: &scanner,
        spec,
        raw_max: spec.raw_bound(max_weight),
        word: Vec::new(),
        members: vec![0u64; len],
        primes: vec![0u64; len],
        words: keep_words.then(|| vec![Vec::new(); len]),
    };
    walk.visit(&scanner.start(), 0);
    let Walk {
        members,
        primes,
        words,
        ..
    } = walk;
    Census {
        members: members.into_iter().map(BigInt::from).collect(),
        primes: PrimeTable {
            max_weight,
            counts: primes.into_iter().map(BigInt::from).collect(),
            words,
        },
    }
}

struct Walk<'a> {
    scanner: &'a Scanner,
    spec: &'a SubmonoidSpec,
    raw_max: u64,
    word: Vec<u32>,
    members: Vec<u64>,
    primes: Vec<u64>,
    words: Option<Vec<Vec<Composition>>>,
}

impl Walk<'_> {
    fn visit(&mut self, state: &ScanState, raw: u64) {
        if self.scanner.is_member(state) {
            let n = (raw / self.spec.scale()) as usize;
            self.members[n] += 1;
            if self.scanner.is_irreducible(state) {
                self.primes[n] += 1;
                if let Some(words) = &mut self.words {
                    words[n].push(Composition::from_parts_unchecked(self.word.clone()));
                }
            }
        }
        for i in 0..self.scanner.dfa.letters.len() {
            let a = self.scanner.dfa.letters[i];
            let next_raw = raw + self.spec.letter_weight(a);
            if next_raw > self.raw_max {
                continue;
            }
            if let Some(next) = self.scanner.step(state, a) {
                self.word.push(a);
                self.visit(&next, next_raw);
                self.word.pop();
            }
        }
    }
}

/// Same counts as [`census`], computed by dynamic programming over scanner
/// states instead of visiting words.
pub fn count_census(spec: &SubmonoidSpec, max_weight: u64) -> Census {
    let (members, primes) = transfer(spec, max_weight, false);
    Census {
        members,
        primes: PrimeTable {
            max_weight,
            counts: primes.into_values().fold(
                vec![BigInt::zero(); max_weight as usize + 1],
                |mut acc, v| {
                    for (a, b) in acc.iter_mut().zip(v) {
                        *a += b;
                    }
                    acc
                },
            ),
            words: None,
        },
    }
}

/// Irreducible counts by monoid weight, split by the last part.
pub fn prime_counts_by_last_part(
    spec: &SubmonoidSpec,
    max_weight: u64,
) -> BTreeMap<u32, Vec<BigInt>> {
    transfer(spec, max_weight, true).1
}

type Counts = (Vec<BigInt>, BTreeMap<u32, Vec<BigInt>>);

fn transfer(spec: &SubmonoidSpec, max_weight: u64, by_last: bool) -> Counts {
    let scanner = Scanner::new(spec, by_last);
    let raw_max = spec.raw_bound(max_weight) as usize;
    let len = max_weight as usize + 1;
    let mut levels: Vec<HashMap<ScanState, BigInt>> = vec![HashMap::new(); raw_max + 1];
    levels[0].insert(scanner.start(), BigInt::from(1));
    let mut members = vec![BigInt::zero(); len];
    let mut primes: BTreeMap<u32, Vec<BigInt>> = BTreeMap::new();
    for raw in 0..=raw_max {
        let level = std::mem::take(&mut levels[raw]);
        let n = raw / spec.scale() as usize;
        for (state, count) in &level {
            if scanner.is_member(state) {
                members[n] += count;
                if scanner.is_irreducible(state) {
                    primes
                        .entry(state.last)
                        .or_insert_with(|| vec![BigInt::zero(); len])[n] += count;
                }
            }
            for &a in &scanner.dfa.letters {
                let next_raw = raw + spec.letter_weight(a) as usize;
                if next_raw > raw_max {
                    continue;
                }
                if let Some(next) = scanner.step(state, a) {
                    *levels[next_raw].entry(next).or_default() += count;
                }
            }
        }
    }
    (members, primes)
}
