//! Explicit bijections between composition families, with inverses.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::compositions::{Composition, Compositions, PartPredicate};
use crate::error::{Error, Result};
use crate::monoid::{factor_unique, SubmonoidSpec};

fn out_of_domain(msg: impl Into<String>) -> Error {
    Error::OutOfDomain(msg.into())
}

fn comp(parts: Vec<u32>) -> Composition {
    Composition::from_parts_unchecked(parts)
}

/// Parts in `{1,2}` to odd parts, one heavier: prepend 1, cut into blocks
/// `(1,2^i)` and send each block to `1+2i`.
pub fn odd_from_fib(c: &Composition) -> Result<Composition> {
    two_part_bijection(1, 2, c)
}

/// Inverse of [`odd_from_fib`].
pub fn fib_from_odd(c: &Composition) -> Result<Composition> {
    two_part_inverse(1, 2, c)
}

fn check_pair(p: u32, q: u32) -> Result<()> {
    if p == 0 || q == 0 || p == q {
        return Err(Error::InvalidParameter(format!(
            "need distinct positive parts, got p={p}, q={q}"
        )));
    }
    Ok(())
}

/// Parts in `{p,q}` to parts of the form `p+qi`, heavier by `p`: prepend `p`,
/// cut into blocks `(p,q^i)` and send each block to `p+qi`.
pub fn two_part_bijection(p: u32, q: u32, c: &Composition) -> Result<Composition> {
    check_pair(p, q)?;
    if let Some(a) = c.parts().iter().find(|&&a| a != p && a != q) {
        return Err(out_of_domain(format!(
            "part {a} of {c} is neither {p} nor {q}"
        )));
    }
    let spec = SubmonoidSpec::over([p, q])?.with_prefix(&[p])?;
    let word: Vec<u32> = std::iter::once(p)
        .chain(c.parts().iter().copied())
        .collect();
    let blocks = factor_unique(&spec, &word)?;
    Ok(comp(
        blocks
            .iter()
            .map(|b| p + q * (b.len() as u32 - 1))
            .collect(),
    ))
}

/// Inverse of [`two_part_bijection`].
pub fn two_part_inverse(p: u32, q: u32, c: &Composition) -> Result<Composition> {
    check_pair(p, q)?;
    if c.is_empty() {
        return Err(out_of_domain("the empty composition is not in the image"));
    }
    let mut word = Vec::new();
    for &a in c.parts() {
        if a < p || !(a - p).is_multiple_of(q) {
            return Err(out_of_domain(format!(
                "part {a} of {c} is not of the form {p}+{q}i"
            )));
        }
        word.push(p);
        word.extend(std::iter::repeat_n(q, ((a - p) / q) as usize));
    }
    Ok(comp(word.split_off(1)))
}

/// A row of `n` dots with bars in some of the `n-1` gaps and exactly one
/// circled dot between consecutive bars.
///
/// Text form: `.` for a dot, `o` for a circled dot, `|` for a bar.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarsDots {
    n: usize,
    /// Gap `g` separates dots `g` and `g+1`, counting dots from 1.
    bars: BTreeSet<usize>,
    /// One dot per compartment, left to right.
    circled: Vec<usize>,
}

impl BarsDots {
    pub fn new(n: usize, bars: BTreeSet<usize>, circled: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(out_of_domain("need at least one dot"));
        }
        if bars.iter().any(|&g| g == 0 || g >= n) {
            return Err(out_of_domain(format!("bars must sit in gaps 1..{}", n - 1)));
        }
        let mut lo = 1;
        let bounds: Vec<(usize, usize)> = bars
            .iter()
            .map(|&g| g + 1)
            .chain(std::iter::once(n + 1))
            .map(|hi| {
                let b = (lo, hi);
                lo = hi;
                b
            })
            .collect();
        if bounds.len() != circled.len()
            || bounds
                .iter()
                .zip(&circled)
                .any(|(&(lo, hi), &c)| c < lo || c >= hi)
        {
            return Err(out_of_domain(
                "each compartment needs exactly one circled dot",
            ));
        }
        Ok(BarsDots { n, bars, circled })
    }

    pub fn dots(&self) -> usize {
        self.n
    }

    pub fn bars(&self) -> &BTreeSet<usize> {
        &self.bars
    }

    pub fn circled(&self) -> &[usize] {
        &self.circled
    }

    /// Every configuration with `n` dots.
    pub fn all(n: usize) -> Vec<BarsDots> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        for sizes in Compositions::new(n as u32, &PartPredicate::Any) {
            let mut bars = BTreeSet::new();
            let mut starts = Vec::new();
            let mut at = 1;
            for (i, &s) in sizes.parts().iter().enumerate() {
                if i > 0 {
                    bars.insert(at - 1);
                }
                starts.push((at, s as usize));
                at += s as usize;
            }
            let mut pick = vec![0usize; starts.len()];
            loop {
                let circled = starts
                    .iter()
                    .zip(&pick)
                    .map(|(&(a, _), &k)| a + k)
                    .collect();
                out.push(BarsDots {
                    n,
                    bars: bars.clone(),
                    circled,
                });
                let Some(i) = (0..pick.len()).rev().find(|&i| pick[i] + 1 < starts[i].1) else {
                    break;
                };
                pick[i] += 1;
                pick[i + 1..].iter_mut().for_each(|k| *k = 0);
            }
        }
        out
    }
}

impl fmt::Display for BarsDots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in 1..=self.n {
            if self.bars.contains(&(d - 1)) {
                f.write_str("|")?;
            }
            f.write_str(if self.circled.contains(&d) { "o" } else { "." })?;
        }
        Ok(())
    }
}

impl FromStr for BarsDots {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut n = 0;
        let mut bars = BTreeSet::new();
        let mut circled = Vec::new();
        let mut last_bar = true;
        for ch in s.trim().chars() {
            match ch {
                '.' | 'o' => {
                    n += 1;
                    if ch == 'o' {
                        circled.push(n);
                    }
                    last_bar = false;
                }
                '|' if !last_bar => {
                    bars.insert(n);
                    last_bar = true;
                }
                '|' => return Err(Error::Parse(format!("misplaced bar in `{s}`"))),
                _ => return Err(Error::Parse(format!("unexpected `{ch}` in `{s}`"))),
            }
        }
        if last_bar && n > 0 {
            return Err(Error::Parse(format!("trailing bar in `{s}`")));
        }
        BarsDots::new(n, bars, circled).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A bar becomes 1, a dot 2, a circled dot 1; the result has parts in
/// `{1,2}` and weight `2n-1`.
pub fn bars_dots_decode(b: &BarsDots) -> Composition {
    let mut parts = Vec::with_capacity(2 * b.n);
    for d in 1..=b.n {
        if b.bars.contains(&(d - 1)) {
            parts.push(1);
        }
        parts.push(if b.circled.contains(&d) { 1 } else { 2 });
    }
    comp(parts)
}

/// Inverse of [`bars_dots_decode`]: prepend a 1 and factor in the monoid of
/// even-weight words starting with 1, whose irreducibles `(1,2^i,1,2^j)`
/// are the compartments.
pub fn bars_dots_encode(c: &Composition) -> Result<BarsDots> {
    if c.parts().iter().any(|&a| a != 1 && a != 2) || c.weight().is_multiple_of(2) {
        return Err(out_of_domain(format!(
            "{c} is not a {{1,2}} composition of odd weight"
        )));
    }
    let spec = SubmonoidSpec::fibonacci()
        .with_modulus(2)?
        .with_prefix(&[1])?;
    let word: Vec<u32> = std::iter::once(1)
        .chain(c.parts().iter().copied())
        .collect();
    let mut n = 0;
    let mut bars = BTreeSet::new();
    let mut circled = Vec::new();
    for (k, prime) in factor_unique(&spec, &word)?.iter().enumerate() {
        if k > 0 {
            bars.insert(n);
        }
        let body = &prime.parts()[1..];
        for &a in body {
            n += 1;
            if a == 1 {
                circled.push(n);
            }
        }
    }
    BarsDots::new(n, bars, circled)
}

/// From `(2^{n-1})`, turn the first selected 2 into 1 and every other
/// selected 2 into `(1,1)`, then prepend `(1,2)`. Positions are 1-based.
pub fn subset_prime_construction(n: usize, subset: &BTreeSet<usize>) -> Result<Composition> {
    if n < 2 {
        return Err(out_of_domain(format!("need n >= 2, got {n}")));
    }
    let Some(&first) = subset.first() else {
        return Err(out_of_domain("the subset must be nonempty"));
    };
    if let Some(&bad) = subset.iter().find(|&&i| i == 0 || i >= n) {
        return Err(out_of_domain(format!(
            "position {bad} outside 1..{}",
            n - 1
        )));
    }
    let mut parts = vec![1, 2];
    for i in 1..n {
        match (subset.contains(&i), i == first) {
            (false, _) => parts.push(2),
            (true, true) => parts.push(1),
            (true, false) => parts.extend([1, 1]),
        }
    }
    Ok(comp(parts))
}

/// Inverse of [`subset_prime_construction`]: returns `(n, subset)`.
pub fn subset_prime_inverse(c: &Composition) -> Result<(usize, BTreeSet<usize>)> {
    let bad = || out_of_domain(format!("{c} is not produced by the subset construction"));
    let body = c.parts().strip_prefix(&[1, 2]).ok_or_else(bad)?;
    let mut subset = BTreeSet::new();
    let mut slot = 0;
    let mut i = 0;
    while i < body.len() {
        slot += 1;
        match body[i] {
            2 => i += 1,
            1 if subset.is_empty() => {
                subset.insert(slot);
                i += 1;
            }
            1 if body.get(i + 1) == Some(&1) => {
                subset.insert(slot);
                i += 2;
            }
            _ => return Err(bad()),
        }
    }
    if subset.is_empty() {
        return Err(bad());
    }
    Ok((slot + 1, subset))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn odd_parts_examples() {
        assert_eq!(odd_from_fib(&c("(2,1)")).unwrap(), c("(3,1)"));
        assert_eq!(odd_from_fib(&Composition::empty()).unwrap(), c("(1)"));
        assert_eq!(fib_from_odd(&c("(3,1)")).unwrap(), c("(2,1)"));
        assert!(odd_from_fib(&c("(3)")).is_err());
        assert!(fib_from_odd(&c("(2)")).is_err());
    }

    #[test]
    fn two_part_examples() {
        assert_eq!(two_part_bijection(2, 3, &c("(2,3)")).unwrap(), c("(2,5)"));
        assert_eq!(two_part_bijection(2, 3, &c("(3,2)")).unwrap(), c("(5,2)"));
        assert_eq!(two_part_inverse(2, 3, &c("(5,2)")).unwrap(), c("(3,2)"));
        assert!(two_part_bijection(2, 2, &c("(2)")).is_err());
        assert!(two_part_inverse(2, 3, &c("(4)")).is_err());
    }

    #[test]
    fn bars_and_dots_example() {
        let b: BarsDots = ".o|o.|o|..o".parse().unwrap();
        assert_eq!(b.dots(), 8);
        let w = bars_dots_decode(&b);
        assert_eq!(w, c("(2,1,1,1,2,1,1,1,2,2,1)"));
        assert_eq!(bars_dots_encode(&w).unwrap(), b);
        assert_eq!(b.to_string(), ".o|o.|o|..o");
    }

    #[test]
    fn bars_and_dots_small() {
        assert_eq!(bars_dots_decode(&"o".parse().unwrap()), c("(1)"));
        let all = BarsDots::all(2);
        assert_eq!(all.len(), 3);
        let texts: Vec<String> = all.iter().map(|b| b.to_string()).collect();
        assert_eq!(texts, ["o|o", "o.", ".o"]);
        for bad in ["", "|o", "o|", "o||o", "..", "oo", "o|x"] {
            assert!(bad.parse::<BarsDots>().is_err(), "{bad}");
        }
    }

    #[test]
    fn subset_examples() {
        let s = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(
            subset_prime_construction(2, &s(&[1])).unwrap(),
            c("(1,2,1)")
        );
        assert_eq!(
            subset_prime_construction(3, &s(&[1, 2])).unwrap(),
            c("(1,2,1,1,1)")
        );
        assert!(subset_prime_construction(3, &s(&[])).is_err());
        assert!(subset_prime_construction(3, &s(&[3])).is_err());
        assert_eq!(
            subset_prime_inverse(&c("(1,2,1,1,1)")).unwrap(),
            (3, s(&[1, 2]))
        );
        assert!(subset_prime_inverse(&c("(1,2,2)")).is_err());
    }
}
