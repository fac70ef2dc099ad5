use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::compositions::Composition;
use crate::error::{Error, Result};

/// Longest prefix the irreducible scanner can track.
pub const MAX_PREFIX_LEN: usize = 63;

/// How a word is weighed before reduction by the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WeightMode {
    /// Sum of the parts.
    #[default]
    Sum,
    /// Number of parts.
    Length,
}

/// A submonoid of the words over a finite part alphabet, given by a
/// conjunction of membership constraints. The empty word is always a member.
///
/// Text form: `parts=1,2; prefix=(2,1); suffix=(2); mod=2; forbid=(2,1,1); weight=length`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubmonoidSpec {
    alphabet: BTreeSet<u32>,
    prefix: Vec<u32>,
    suffix: Vec<u32>,
    modulus: Option<u32>,
    forbidden: Vec<u32>,
    mode: WeightMode,
}

impl Default for SubmonoidSpec {
    fn default() -> Self {
        SubmonoidSpec::fibonacci()
    }
}

impl SubmonoidSpec {
    /// All words over `{1,2}`.
    pub fn fibonacci() -> Self {
        SubmonoidSpec {
            alphabet: [1, 2].into_iter().collect(),
            prefix: Vec::new(),
            suffix: Vec::new(),
            modulus: None,
            forbidden: Vec::new(),
            mode: WeightMode::Sum,
        }
    }

    pub fn over<I: IntoIterator<Item = u32>>(alphabet: I) -> Result<Self> {
        let alphabet: BTreeSet<u32> = alphabet.into_iter().collect();
        if alphabet.is_empty() || alphabet.contains(&0) {
            return Err(Error::InvalidParameter(
                "alphabet must be a nonempty set of positive parts".into(),
            ));
        }
        Ok(SubmonoidSpec {
            alphabet,
            ..SubmonoidSpec::fibonacci()
        })
    }

    pub fn with_prefix(mut self, prefix: &[u32]) -> Result<Self> {
        check_word(prefix, "prefix")?;
        if prefix.len() > MAX_PREFIX_LEN {
            return Err(Error::InvalidParameter(format!(
                "prefix longer than {MAX_PREFIX_LEN} parts"
            )));
        }
        self.prefix = prefix.to_vec();
        Ok(self)
    }

    pub fn with_suffix(mut self, suffix: &[u32]) -> Result<Self> {
        check_word(suffix, "suffix")?;
        self.suffix = suffix.to_vec();
        Ok(self)
    }

    pub fn with_modulus(mut self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        self.modulus = Some(m);
        Ok(self)
    }

    pub fn with_forbidden(mut self, factor: &[u32]) -> Result<Self> {
        check_word(factor, "forbidden factor")?;
        self.forbidden = factor.to_vec();
        Ok(self)
    }

    pub fn weighted_by_length(mut self) -> Self {
        self.mode = WeightMode::Length;
        self
    }

    pub fn alphabet(&self) -> &BTreeSet<u32> {
        &self.alphabet
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn suffix(&self) -> &[u32] {
        &self.suffix
    }

    pub fn forbidden(&self) -> &[u32] {
        &self.forbidden
    }

    pub fn modulus(&self) -> Option<u32> {
        self.modulus
    }

    pub fn mode(&self) -> WeightMode {
        self.mode
    }

    /// Divisor turning raw weights into monoid weights.
    pub fn scale(&self) -> u64 {
        u64::from(self.modulus.unwrap_or(1))
    }

    pub fn letter_weight(&self, a: u32) -> u64 {
        match self.mode {
            WeightMode::Sum => u64::from(a),
            WeightMode::Length => 1,
        }
    }

    /// Weight before division by the modulus.
    pub fn raw_weight(&self, word: &[u32]) -> u64 {
        word.iter().map(|&a| self.letter_weight(a)).sum()
    }

    /// Monoid weight: raw weight divided by the modulus (exact for members).
    pub fn weight(&self, word: &[u32]) -> u64 {
        self.raw_weight(word) / self.scale()
    }

    /// Raw weight bound corresponding to monoid weight `w`.
    pub fn raw_bound(&self, w: u64) -> u64 {
        w * self.scale()
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        if word.is_empty() {
            return true;
        }
        word.iter().all(|a| self.alphabet.contains(a))
            && word.starts_with(&self.prefix)
            && word.ends_with(&self.suffix)
            && self.raw_weight(word).is_multiple_of(self.scale())
            && (self.forbidden.is_empty()
                || !word
                    .windows(self.forbidden.len())
                    .any(|w| w == self.forbidden))
    }

    /// Irreducible: a nonempty member with no split into two nonempty members.
    pub fn is_irreducible(&self, word: &[u32]) -> bool {
        !word.is_empty()
            && self.contains(word)
            && !(1..word.len()).any(|i| self.contains(&word[..i]) && self.contains(&word[i..]))
    }

    /// A pair of nonempty members with combined monoid weight at most `w`
    /// whose product is not a member.
    ///
    /// Prefix, suffix and modulus constraints survive concatenation, so only
    /// a forbidden factor straddling the cut can break closure.
    pub fn closure_violation(&self, w: u64) -> Option<(Composition, Composition)> {
        if self.forbidden.is_empty() {
            return None;
        }
        let members: Vec<Composition> = super::enumerate_members(self, w)
            .filter(|c| !c.is_empty())
            .collect();
        for i in 1..self.forbidden.len() {
            let (head, tail) = self.forbidden.split_at(i);
            // Members come lightest first.
            let u = members.iter().find(|c| c.parts().ends_with(head));
            let v = members.iter().find(|c| c.parts().starts_with(tail));
            if let (Some(u), Some(v)) = (u, v) {
                if self.weight(u.parts()) + self.weight(v.parts()) <= w
                    && !self.contains(u.concat(v).parts())
                {
                    return Some((u.clone(), v.clone()));
                }
            }
        }
        None
    }
}

fn check_word(w: &[u32], what: &str) -> Result<()> {
    if w.is_empty() {
        return Err(Error::InvalidParameter(format!("{what} must be nonempty")));
    }
    if w.contains(&0) {
        return Err(Error::InvalidParameter(format!(
            "{what} contains a zero part"
        )));
    }
    Ok(())
}

fn word_text(w: &[u32]) -> String {
    Composition::from_parts_unchecked(w.to_vec()).to_string()
}

impl fmt::Display for SubmonoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.alphabet.iter().map(u32::to_string).collect();
        write!(f, "parts={}", parts.join(","))?;
        if !self.prefix.is_empty() {
            write!(f, "; prefix={}", word_text(&self.prefix))?;
        }
        if !self.suffix.is_empty() {
            write!(f, "; suffix={}", word_text(&self.suffix))?;
        }
        if let Some(m) = self.modulus {
            write!(f, "; mod={m}")?;
        }
        if !self.forbidden.is_empty() {
            write!(f, "; forbid={}", word_text(&self.forbidden))?;
        }
        if self.mode == WeightMode::Length {
            f.write_str("; weight=length")?;
        }
        Ok(())
    }
}

impl FromStr for SubmonoidSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut spec = SubmonoidSpec::fibonacci();
        let mut seen = BTreeSet::new();
        for clause in s.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let (key, value) = clause
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("clause `{clause}` lacks `=`")))?;
            let key = key.trim();
            let value = value.trim();
            if !seen.insert(key.to_string()) {
                return Err(Error::Parse(format!("`{key}` given twice")));
            }
            let word = |v: &str| -> Result<Vec<u32>> { Ok(v.parse::<Composition>()?.into_parts()) };
            let reparse = |e: Error| match e {
                Error::Parse(m) => Error::Parse(m),
                other => Error::Parse(other.to_string()),
            };
            spec = match key {
                "parts" => {
                    let parts = value
                        .split(',')
                        .map(|t| {
                            t.trim()
                                .parse::<u32>()
                                .map_err(|_| Error::Parse(format!("bad part `{}`", t.trim())))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    SubmonoidSpec {
                        alphabet: SubmonoidSpec::over(parts).map_err(reparse)?.alphabet,
                        ..spec
                    }
                }
                "prefix" => spec.with_prefix(&word(value)?).map_err(reparse)?,
                "suffix" => spec.with_suffix(&word(value)?).map_err(reparse)?,
                "mod" => {
                    let m = value
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad modulus `{value}`")))?;
                    spec.with_modulus(m).map_err(reparse)?
                }
                "forbid" => spec.with_forbidden(&word(value)?).map_err(reparse)?,
                "weight" => match value {
                    "sum" => SubmonoidSpec {
                        mode: WeightMode::Sum,
                        ..spec
                    },
                    "length" => spec.weighted_by_length(),
                    _ => return Err(Error::Parse(format!("unknown weight mode `{value}`"))),
                },
                _ => return Err(Error::Parse(format!("unknown spec key `{key}`"))),
            };
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_round_trip() {
        for s in [
            "parts=1,2",
            "parts=1,2; prefix=(2,1); mod=2; forbid=(2,1,1)",
            "parts=1,3; prefix=(1); suffix=(3)",
            "parts=1,2; prefix=(2,1); weight=length",
            "parts=1; prefix=(1,1)",
        ] {
            let spec: SubmonoidSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn parsing_normalizes_order_and_spacing() {
        let spec: SubmonoidSpec = " mod=2 ;prefix=(1) ".parse().unwrap();
        assert_eq!(spec.to_string(), "parts=1,2; prefix=(1); mod=2");
    }

    #[test]
    fn parse_errors() {
        for s in [
            "parts=",
            "parts=0,1",
            "mod=0",
            "prefix=()",
            "colour=red",
            "mod=2; mod=3",
            "prefix",
            "weight=volume",
        ] {
            assert!(s.parse::<SubmonoidSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn membership() {
        let spec: SubmonoidSpec = "parts=1,2; prefix=(1); mod=2".parse().unwrap();
        assert!(spec.contains(&[]));
        assert!(spec.contains(&[1, 1]));
        assert!(spec.contains(&[1, 2, 1]));
        assert!(!spec.contains(&[2]));
        assert!(!spec.contains(&[1, 2]));
        assert!(!spec.contains(&[1, 3]));
        let spec: SubmonoidSpec = "parts=1,2; forbid=(2,1)".parse().unwrap();
        assert!(!spec.contains(&[1, 2, 1]));
        assert!(spec.contains(&[1, 1, 2, 2]));
    }

    #[test]
    fn weights() {
        let spec: SubmonoidSpec = "parts=1,2; mod=2".parse().unwrap();
        assert_eq!(spec.weight(&[2, 2, 2]), 3);
        assert_eq!(spec.weight(&[]), 0);
        let spec: SubmonoidSpec = "parts=1,2; weight=length".parse().unwrap();
        assert_eq!(spec.weight(&[2, 2, 1]), 3);
    }

    #[test]
    fn closure_sampling() {
        let closed: SubmonoidSpec = "parts=1,2; prefix=(2); forbid=(2,1,1)".parse().unwrap();
        assert_eq!(closed.closure_violation(10), None);
        let open: SubmonoidSpec = "parts=1,2; forbid=(1,2)".parse().unwrap();
        assert!(open.closure_violation(4).is_some());
    }
}
