//! Integer compositions: streamed enumeration under part constraints and
//! composition-weighted sums.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::fibonacci;

/// A finite sequence of positive parts. Also serves as a word whose letters
/// are the part values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition {
    parts: Vec<u32>,
    weight: u64,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&a| a == 0) {
            return Err(Error::OutOfDomain(format!("part {} is zero", pos + 1)));
        }
        Ok(Self::from_parts_unchecked(parts))
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        let weight = parts.iter().map(|&a| u64::from(a)).sum();
        Composition { parts, weight }
    }

    pub fn empty() -> Self {
        Composition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Composition {
            parts,
            weight: self.weight + other.weight,
        }
    }
}

impl From<&[u32]> for Composition {
    /// Panics if a part is zero.
    fn from(parts: &[u32]) -> Self {
        Composition::new(parts.to_vec()).expect("parts must be positive")
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Composition {
    type Err = Error;
    /// Accepts `(1,2,1)`, `()`, or the bare list `1,2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = match (s.strip_prefix('('), s.ends_with(')')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => s,
            _ => return Err(Error::Parse(format!("unbalanced parentheses in `{s}`"))),
        };
        if inner.trim().is_empty() {
            return Ok(Composition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("`{}` is not a positive part", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Which part sizes a composition may use.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PartPredicate {
    Any,
    Set(BTreeSet<u32>),
    /// Parts `start + step * i`, `i >= 0`.
    Progression {
        start: u32,
        step: u32,
    },
    AtLeast(u32),
    All(Vec<PartPredicate>),
}

impl PartPredicate {
    pub fn set<I: IntoIterator<Item = u32>>(parts: I) -> Self {
        PartPredicate::Set(parts.into_iter().collect())
    }

    pub fn odd() -> Self {
        PartPredicate::Progression { start: 1, step: 2 }
    }

    pub fn allows(&self, a: u32) -> bool {
        if a == 0 {
            return false;
        }
        match self {
            PartPredicate::Any => true,
            PartPredicate::Set(s) => s.contains(&a),
            PartPredicate::Progression { start, step } => {
                a >= *start
                    && if *step == 0 {
                        a == *start
                    } else {
                        (a - start).is_multiple_of(*step)
                    }
            }
            PartPredicate::AtLeast(k) => a >= *k,
            PartPredicate::All(ps) => ps.iter().all(|p| p.allows(a)),
        }
    }

    pub fn and(self, other: PartPredicate) -> PartPredicate {
        match self {
            PartPredicate::All(mut ps) => {
                ps.push(other);
                PartPredicate::All(ps)
            }
            p => PartPredicate::All(vec![p, other]),
        }
    }
}

impl fmt::Display for PartPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartPredicate::Any => f.write_str("all"),
            PartPredicate::Set(s) => {
                let v: Vec<String> = s.iter().map(u32::to_string).collect();
                f.write_str(&v.join(","))
            }
            PartPredicate::Progression { start, step } => write!(f, "{start}+{step}i"),
            PartPredicate::AtLeast(k) => write!(f, ">={k}"),
            PartPredicate::All(ps) => {
                let v: Vec<String> = ps.iter().map(ToString::to_string).collect();
                f.write_str(&v.join("&"))
            }
        }
    }
}

impl FromStr for PartPredicate {
    type Err = Error;
    /// `all`, `odd`, `>=k`, `p+qi`, a set `1,2,5`, or a conjunction joined by `&`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('&') {
            let ps = s.split('&').map(str::parse).collect::<Result<Vec<_>>>()?;
            return Ok(PartPredicate::All(ps));
        }
        let bad = || Error::Parse(format!("`{s}` is not a part predicate"));
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        if s == "all" || s == "*" {
            Ok(PartPredicate::Any)
        } else if s == "odd" {
            Ok(PartPredicate::odd())
        } else if let Some(k) = s.strip_prefix(">=") {
            Ok(PartPredicate::AtLeast(num(k)?))
        } else if let Some(prog) = s.strip_suffix('i') {
            let (p, q) = prog.split_once('+').ok_or_else(bad)?;
            Ok(PartPredicate::Progression {
                start: num(p)?,
                step: num(q)?,
            })
        } else {
            let set = s.split(',').map(num).collect::<Result<BTreeSet<_>>>()?;
            if set.contains(&0) {
                return Err(bad());
            }
            Ok(PartPredicate::Set(set))
        }
    }
}

/// Streams the compositions of `n` whose parts satisfy a predicate, in
/// lexicographic order of part sequences.
pub struct Compositions {
    candidates: Vec<u32>,
    // reachable[r]: r is a sum of allowed parts
    reachable: Vec<bool>,
    stack: Vec<usize>,
    remaining: u32,
    state: IterState,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

impl Compositions {
    pub fn new(n: u32, allowed: &PartPredicate) -> Self {
        let candidates: Vec<u32> = (1..=n).filter(|&a| allowed.allows(a)).collect();
        let mut reachable = vec![false; n as usize + 1];
        reachable[0] = true;
        for r in 1..=n as usize {
            reachable[r] = candidates
                .iter()
                .any(|&a| a as usize <= r && reachable[r - a as usize]);
        }
        let state = if reachable[n as usize] {
            IterState::Fresh
        } else {
            IterState::Done
        };
        Compositions {
            candidates,
            reachable,
            stack: Vec::new(),
            remaining: n,
            state,
        }
    }

    fn fits(&self, idx: usize) -> bool {
        let a = self.candidates[idx];
        a <= self.remaining && self.reachable[(self.remaining - a) as usize]
    }

    fn complete(&mut self) {
        while self.remaining > 0 {
            let idx = (0..self.candidates.len())
                .find(|&i| self.fits(i))
                .expect("a reachable remainder always has a completion");
            self.remaining -= self.candidates[idx];
            self.stack.push(idx);
        }
    }

    fn advance(&mut self) -> bool {
        while let Some(idx) = self.stack.pop() {
            self.remaining += self.candidates[idx];
            if let Some(next) = (idx + 1..self.candidates.len()).find(|&i| self.fits(i)) {
                self.remaining -= self.candidates[next];
                self.stack.push(next);
                self.complete();
                return true;
            }
        }
        false
    }

    fn current(&self) -> Composition {
        Composition::from_parts_unchecked(self.stack.iter().map(|&i| self.candidates[i]).collect())
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        match self.state {
            IterState::Done => None,
            IterState::Fresh => {
                self.complete();
                self.state = IterState::Running;
                Some(self.current())
            }
            IterState::Running => {
                if self.advance() {
                    Some(self.current())
                } else {
                    self.state = IterState::Done;
                    None
                }
            }
        }
    }
}

pub fn enumerate_compositions(n: u32, allowed: &PartPredicate) -> Compositions {
    Compositions::new(n, allowed)
}

/// A rule assigning a nonnegative integer `u_a` to every part size `a >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PartWeightFunction {
    /// `a`
    Part,
    /// `2^(a-1) - 1`
    PowerMinusOne,
    /// `2^[a = 1]`
    DoubleOnes,
    /// `floor((a-1)/m)`
    Floor { m: u32 },
    /// `a - 1`
    PartMinusOne,
    /// `F_a - 1`
    FibMinusOne,
    /// `[a allowed]`
    Indicator(PartPredicate),
    /// `3` for a part 1, `4` otherwise
    ThreeFour,
    /// `1` for a part 1, `2^(a-2)` otherwise
    HalfPower,
    /// Explicit values `u_1, u_2, ...`; zero past the end.
    Tabulated { label: String, values: Vec<BigInt> },
}

/// Names accepted by [`make_weight`].
pub const WEIGHT_NAMES: &[&str] = &[
    "part",
    "pow2_minus_one",
    "two_pow_ones",
    "floor",
    "part_minus_one",
    "fib_minus_one",
    "indicator",
    "three_four",
    "half_power",
];

/// Looks up a registered weighting. `floor` takes `[m]`; `indicator` takes
/// the allowed part sizes.
pub fn make_weight(name: &str, params: &[u32]) -> Result<PartWeightFunction> {
    let w = match name {
        "part" => PartWeightFunction::Part,
        "pow2_minus_one" => PartWeightFunction::PowerMinusOne,
        "two_pow_ones" => PartWeightFunction::DoubleOnes,
        "floor" => match params {
            [m] if *m >= 1 => PartWeightFunction::Floor { m: *m },
            _ => {
                return Err(Error::InvalidParameter(
                    "floor takes one modulus m >= 1".into(),
                ))
            }
        },
        "part_minus_one" => PartWeightFunction::PartMinusOne,
        "fib_minus_one" => PartWeightFunction::FibMinusOne,
        "indicator" => {
            if params.is_empty() || params.contains(&0) {
                return Err(Error::InvalidParameter(
                    "indicator takes a nonempty set of positive parts".into(),
                ));
            }
            PartWeightFunction::Indicator(PartPredicate::set(params.iter().copied()))
        }
        "three_four" => PartWeightFunction::ThreeFour,
        "half_power" => PartWeightFunction::HalfPower,
        _ => {
            return Err(Error::UnknownWeighting {
                name: name.to_string(),
                known: WEIGHT_NAMES.join(", "),
            })
        }
    };
    Ok(w)
}

impl PartWeightFunction {
    /// `u_a` for `a >= 1`.
    pub fn value(&self, a: u32) -> BigInt {
        assert!(a >= 1, "part sizes start at 1");
        let pow2 = |e: u32| BigInt::one() << e;
        match self {
            PartWeightFunction::Part => BigInt::from(a),
            PartWeightFunction::PowerMinusOne => pow2(a - 1) - 1,
            PartWeightFunction::DoubleOnes => BigInt::from(if a == 1 { 2 } else { 1 }),
            PartWeightFunction::Floor { m } => BigInt::from((a - 1) / m),
            PartWeightFunction::PartMinusOne => BigInt::from(a - 1),
            PartWeightFunction::FibMinusOne => fibonacci(a as usize) - 1,
            PartWeightFunction::Indicator(p) => BigInt::from(u8::from(p.allows(a))),
            PartWeightFunction::ThreeFour => BigInt::from(if a == 1 { 3 } else { 4 }),
            PartWeightFunction::HalfPower => {
                if a == 1 {
                    BigInt::one()
                } else {
                    pow2(a - 2)
                }
            }
            PartWeightFunction::Tabulated { values, .. } => values
                .get(a as usize - 1)
                .cloned()
                .unwrap_or_else(BigInt::zero),
        }
    }

    /// `u_1..=u_n`
    pub fn values(&self, n: u32) -> Vec<BigInt> {
        (1..=n).map(|a| self.value(a)).collect()
    }

    pub fn label(&self) -> String {
        match self {
            PartWeightFunction::Part => "part".into(),
            PartWeightFunction::PowerMinusOne => "pow2_minus_one".into(),
            PartWeightFunction::DoubleOnes => "two_pow_ones".into(),
            PartWeightFunction::Floor { m } => format!("floor(m={m})"),
            PartWeightFunction::PartMinusOne => "part_minus_one".into(),
            PartWeightFunction::FibMinusOne => "fib_minus_one".into(),
            PartWeightFunction::Indicator(p) => format!("indicator({p})"),
            PartWeightFunction::ThreeFour => "three_four".into(),
            PartWeightFunction::HalfPower => "half_power".into(),
            PartWeightFunction::Tabulated { label, .. } => label.clone(),
        }
    }
}

/// `Σ_{a ∈ C(n)} u_{a_1} ⋯ u_{a_k}` via `s_n = Σ_{i=1..n} u_i s_{n-i}`, `s_0 = 1`.
pub fn weighted_sum(n: u32, u: &PartWeightFunction) -> BigInt {
    weighted_sums(n, u).pop().expect("s_0 is always present")
}

/// `s_0..=s_n` of [`weighted_sum`].
pub fn weighted_sums(n: u32, u: &PartWeightFunction) -> Vec<BigInt> {
    let u = u.values(n);
    let mut s: Vec<BigInt> = Vec::with_capacity(n as usize + 1);
    s.push(BigInt::one());
    for k in 1..=n as usize {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            if !u[i - 1].is_zero() {
                acc += &u[i - 1] * &s[k - i];
            }
        }
        s.push(acc);
    }
    s
}
