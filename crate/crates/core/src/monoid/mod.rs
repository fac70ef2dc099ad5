//! Submonoids of the free monoid of composition words.

mod automaton;
pub mod census;
pub mod freeness;
pub mod spec;

pub use automaton::border_array;
pub use census::{
    census, count_census, irreducibles, prime_counts_by_last_part, Census, PrimeTable,
};
pub use freeness::{
    count_factorizations, criterion_verdict, double_factorization_witness, factor_unique,
    first_ambiguous_weight, is_free_up_to, schutzenberger_search, shortest_member_weight,
    Counterexample, FreenessVerdict, TwoFactorizations, Violation,
};
pub use spec::{SubmonoidSpec, WeightMode, MAX_PREFIX_LEN};

use crate::compositions::{enumerate_compositions, Composition, PartPredicate};
use crate::error::{Error, Result};

/// Sum of the parts.
pub fn weight(w: &Composition) -> u64 {
    w.weight()
}

/// `u` overlaps `v` when `ux = yv` for some words `x` and `y` with `y`
/// nonempty and shorter than `u`; equivalently some nonempty proper suffix of
/// `u` is a prefix of `v`.
pub fn overlaps<T: PartialEq>(u: &[T], v: &[T]) -> Result<bool> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok((1..u.len()).any(|i| v.starts_with(&u[i..])))
}

/// Not overlapping itself.
pub fn non_overlapping<T: PartialEq>(w: &[T]) -> Result<bool> {
    overlaps(w, w).map(|o| !o)
}

/// Smallest `d >= 1` with `w[i] == w[i + d]` wherever both are defined.
pub fn shortest_period<T: PartialEq>(w: &[T]) -> usize {
    w.len() - border_array(w)[w.len()]
}

/// Members of weight at most `max_weight` (monoid weight), by increasing
/// weight and lexicographically within a weight.
pub fn enumerate_members(
    spec: &SubmonoidSpec,
    max_weight: u64,
) -> impl Iterator<Item = Composition> + '_ {
    let scale = spec.scale();
    (0..=max_weight).flat_map(move |w| {
        let raw = w * scale;
        let words: Box<dyn Iterator<Item = Composition>> = match spec.mode() {
            WeightMode::Sum => match u32::try_from(raw) {
                Ok(n) => Box::new(enumerate_compositions(
                    n,
                    &PartPredicate::Set(spec.alphabet().clone()),
                )),
                Err(_) => Box::new(std::iter::empty()),
            },
            WeightMode::Length => Box::new(WordsOfLength::new(
                spec.alphabet().iter().copied().collect(),
                raw as usize,
            )),
        };
        words.filter(move |c| spec.contains(c.parts()))
    })
}

/// All words of a fixed length over a sorted alphabet, lexicographically.
struct WordsOfLength {
    letters: Vec<u32>,
    digits: Vec<usize>,
    done: bool,
}

impl WordsOfLength {
    fn new(letters: Vec<u32>, len: usize) -> Self {
        WordsOfLength {
            done: letters.is_empty() && len > 0,
            letters,
            digits: vec![0; len],
        }
    }
}

impl Iterator for WordsOfLength {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.done {
            return None;
        }
        let word = Composition::from_parts_unchecked(
            self.digits.iter().map(|&d| self.letters[d]).collect(),
        );
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.letters.len() {
                break;
            }
            self.digits[i] = 0;
        }
        Some(word)
    }
}
