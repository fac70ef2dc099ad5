//! The identity registry and its checks.
//!
//! Every record pairs a submonoid with a closed form for its member series,
//! a prime series, a part weighting and a target sequence, and is checked
//! several independent ways (see [`Method`]).

mod oracles;
mod report;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::compositions::{weighted_sums, PartPredicate, PartWeightFunction};
use crate::error::{Error, Result};
use crate::monoid::{census, count_census, SubmonoidSpec, WeightMode};
use crate::series::{
    fib_lucas, fib_multisection_gf, fibonacci, Polynomial, RationalGF, TruncatedSeries,
};

pub use oracles::{
    dyck_count, export_bfile, oeis_label, oracle_offset, oracle_sequence, trisection_prime_counts,
    OracleInfo, ORACLES,
};
pub use report::{Discrepancy, Method, MethodResult, Report, Status};

/// Largest monoid weight checked by word enumeration.
pub const ENUMERATION_LIMIT: u64 = 18;

/// Weight bound for enumeration-backed checks on `spec` at order `order`.
///
/// Enumeration visits every live word up to the raw weight, so the raw
/// budget is capped: 36 for moduli up to 2 (reaching weight 18 for
/// bisections) and 30 beyond.
pub fn enumeration_bound(spec: &SubmonoidSpec, order: usize) -> u64 {
    let order = order as u64;
    match spec.mode() {
        WeightMode::Length => order.min(ENUMERATION_LIMIT),
        WeightMode::Sum => {
            let budget = if spec.scale() <= 2 { 36 } else { 30 };
            order.min(ENUMERATION_LIMIT).min(budget / spec.scale())
        }
    }
}

/// Named integer parameters, written `k=3,m=2`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Params {
    pub k: Option<u32>,
    pub m: Option<u32>,
    pub p: Option<u32>,
    pub q: Option<u32>,
}

impl Params {
    pub fn k(k: u32) -> Self {
        Params {
            k: Some(k),
            ..Params::default()
        }
    }

    pub fn m(m: u32) -> Self {
        Params {
            m: Some(m),
            ..Params::default()
        }
    }

    pub fn pq(p: u32, q: u32) -> Self {
        Params {
            p: Some(p),
            q: Some(q),
            ..Params::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == Params::default()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [("k", self.k), ("m", self.m), ("p", self.p), ("q", self.q)]
            .iter()
            .filter_map(|(name, v)| v.map(|v| format!("{name}={v}")))
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Params {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Params::default();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("parameter `{item}` lacks `=`")))?;
            let value: u32 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad value in `{item}`")))?;
            let slot = match key.trim() {
                "k" => &mut out.k,
                "m" => &mut out.m,
                "p" => &mut out.p,
                "q" => &mut out.q,
                other => return Err(Error::Parse(format!("unknown parameter `{other}`"))),
            };
            if slot.replace(value).is_some() {
                return Err(Error::Parse(format!(
                    "parameter `{}` given twice",
                    key.trim()
                )));
            }
        }
        Ok(out)
    }
}

/// The claimed values, computed from recurrences independent of the
/// closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    /// `F_{a n + b}`, and 0 for `n < zero_below`.
    Fib { a: i64, b: i64, zero_below: usize },
    /// `2^(n - shift)`.
    Pow2 { shift: usize },
    /// `r_{n-m-1}` with `r_n = r_{n-1} + r_{n-m}`.
    RSeq { m: u32 },
    /// Compositions of `n - p` into parts `p` and `q`.
    TwoParts { p: u32, q: u32 },
}

impl Target {
    /// Values for `from <= n <= to`, with zeros below `from`.
    pub fn values(&self, from: usize, to: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); to + 1];
        match *self {
            Target::Fib { a, b, zero_below } => {
                for (n, slot) in out.iter_mut().enumerate().skip(from.max(zero_below)) {
                    *slot = signed_fibonacci(a * n as i64 + b);
                }
            }
            Target::Pow2 { shift } => {
                for (n, slot) in out.iter_mut().enumerate().skip(from.max(shift)) {
                    *slot = BigInt::one() << (n - shift);
                }
            }
            Target::RSeq { m } => {
                let shift = m as usize + 1;
                let lo = from.max(shift);
                if lo <= to {
                    let r = oracle_sequence("r", Some(m), to - shift + 1).expect("registered");
                    out[lo..=to].clone_from_slice(&r[lo - shift..=to - shift]);
                }
            }
            Target::TwoParts { p, q } => {
                let (p, q) = (p as usize, q as usize);
                let mut c = vec![BigInt::zero(); to + 1];
                c[0] = BigInt::one();
                for k in 1..=to {
                    let mut v = BigInt::zero();
                    if k >= p {
                        v += &c[k - p];
                    }
                    if k >= q {
                        v += &c[k - q];
                    }
                    c[k] = v;
                }
                let lo = from.max(p);
                if lo <= to {
                    out[lo..=to].clone_from_slice(&c[lo - p..=to - p]);
                }
            }
        }
        out
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Target::Fib { a, b, .. } => match (a, b) {
                (1, 0) => write!(f, "F_n"),
                (a, 0) => write!(f, "F_{{{a}n}}"),
                (1, b) => write!(f, "F_{{n{b:+}}}"),
                (a, b) => write!(f, "F_{{{a}n{b:+}}}"),
            },
            Target::Pow2 { shift } => write!(f, "2^(n-{shift})"),
            Target::RSeq { m } => write!(f, "r_(n-{})", m + 1),
            Target::TwoParts { p, q } => write!(f, "#C(n-{p}; parts {p},{q})"),
        }
    }
}

fn signed_fibonacci(i: i64) -> BigInt {
    let f = fibonacci(i.unsigned_abs() as usize);
    if i < 0 && i % 2 == 0 {
        -f
    } else {
        f
    }
}

/// A side condition on the prime counts or the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extra {
    /// `u_1 = first` and `u_n = coeff * ratio^(n-2)` for `n >= 2`.
    PrimeLaw {
        first: BigInt,
        coeff: BigInt,
        ratio: BigInt,
    },
    /// Prime counts agree with a registered reference sequence.
    PrimeOracle {
        name: &'static str,
        param: Option<u32>,
    },
    /// The target counts Dyck paths of height at most 3.
    Dyck,
}

impl Extra {
    fn prime_counts(&self, to: usize) -> Option<Vec<BigInt>> {
        match self {
            Extra::PrimeLaw {
                first,
                coeff,
                ratio,
            } => Some(
                (0..=to)
                    .map(|n| match n {
                        0 => BigInt::zero(),
                        1 => first.clone(),
                        _ => coeff * num_traits::pow(ratio.clone(), n - 2),
                    })
                    .collect(),
            ),
            Extra::PrimeOracle { name, param } => {
                let offset = oracle_offset(name).ok()?;
                let seq = oracle_sequence(name, *param, (to + 1).saturating_sub(offset)).ok()?;
                let mut out = vec![BigInt::zero(); offset.min(to + 1)];
                out.extend(seq);
                Some(out)
            }
            Extra::Dyck => None,
        }
    }

    /// First index the prime counts are constrained at.
    fn first_index(&self) -> usize {
        match self {
            Extra::PrimeOracle { name, .. } => oracle_offset(name).unwrap_or(1).max(1),
            _ => 1,
        }
    }

    fn label(&self) -> String {
        match self {
            Extra::PrimeLaw {
                first,
                coeff,
                ratio,
            } => {
                format!("prime law {first}; {coeff}*{ratio}^(n-2)")
            }
            Extra::PrimeOracle { name, param } => match param {
                Some(v) => format!("prime oracle {name}({v})"),
                None => format!("prime oracle {name}"),
            },
            Extra::Dyck => "dyck height 3".into(),
        }
    }
}

/// One identity instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityRecord {
    pub id: &'static str,
    pub params: Params,
    pub description: String,
    pub spec: Option<SubmonoidSpec>,
    pub weight: Option<PartWeightFunction>,
    /// Member series of the monoid.
    pub closed_form: RationalGF,
    /// Series of prime counts; inverting `1 - prime_gf` gives `closed_form`.
    pub prime_gf: Option<RationalGF>,
    /// Other closed forms for the same series.
    pub alternate_forms: Vec<(String, RationalGF)>,
    pub valid_from: usize,
    pub target: Target,
    pub extras: Vec<Extra>,
}

/// Registered identity ids and the parameters each takes.
pub const IDENTITIES: &[(&str, &str)] = &[
    ("i", ""),
    ("ii", ""),
    ("iii", ""),
    ("iv", ""),
    ("v", ""),
    ("vi", ""),
    ("total", ""),
    ("part_minus_one", ""),
    ("fib_minus_one", ""),
    ("floor", ""),
    ("floor_m", "m"),
    ("two_parts", "p,q"),
    ("fmgen", "k"),
    ("sgen", "k"),
    ("fibogenx", "k"),
    ("f2n_minus_1", ""),
    ("m0", "m"),
    ("m_minus_2", "m"),
    ("m_minus_1", "m"),
    ("xf30", ""),
    ("trisection", ""),
];

fn big(v: impl Into<BigInt>) -> BigInt {
    v.into()
}

fn rat(num: &[i64], den: &[i64]) -> RationalGF {
    RationalGF::from_i64(num, den).expect("denominators in the registry have unit constant term")
}

fn poly(coeffs: Vec<BigInt>) -> Polynomial {
    Polynomial::new(coeffs)
}

fn ratio(num: Polynomial, den: Polynomial) -> RationalGF {
    RationalGF::new(num, den).expect("denominators in the registry have unit constant term")
}

fn spec(text: &str) -> SubmonoidSpec {
    text.parse().expect("registry specs are well formed")
}

fn word(parts: &[u32]) -> String {
    let p: Vec<String> = parts.iter().map(u32::to_string).collect();
    format!("({})", p.join(","))
}

fn need(id: &str, value: Option<u32>, name: &str, min: u32, max: u32) -> Result<u32> {
    match value {
        Some(v) if (min..=max).contains(&v) => Ok(v),
        Some(v) => Err(Error::InvalidParameter(format!(
            "`{id}` needs {min} <= {name} <= {max}, got {v}"
        ))),
        None => Err(Error::InvalidParameter(format!(
            "`{id}` needs parameter {name}"
        ))),
    }
}

fn tabulated(label: String, values: Vec<BigInt>) -> PartWeightFunction {
    PartWeightFunction::Tabulated { label, values }
}

/// Prime counts `u_1..=u_n` as a weighting, from a reference sequence.
fn oracle_weight(name: &'static str, param: Option<u32>, n: usize) -> PartWeightFunction {
    let extra = Extra::PrimeOracle { name, param };
    let values = extra.prime_counts(n).expect("registered oracle");
    tabulated(extra.label(), values.into_iter().skip(1).collect())
}

fn law_weight(first: &BigInt, coeff: &BigInt, r: &BigInt, n: usize) -> (PartWeightFunction, Extra) {
    let extra = Extra::PrimeLaw {
        first: first.clone(),
        coeff: coeff.clone(),
        ratio: r.clone(),
    };
    let values = extra.prime_counts(n).expect("laws are total");
    (
        tabulated(extra.label(), values.into_iter().skip(1).collect()),
        extra,
    )
}

/// Largest order a tabulated weighting has to cover.
const WEIGHT_TABLE: usize = 200;

/// `F_{mn+j}` generating function shifted: `sum F_{m n + i + 1} x^n`.
fn f_mi(m: u32, i: u32) -> RationalGF {
    fib_multisection_gf(m as usize, i as usize + 1).expect("0 <= i + 1 <= m")
}

/// Looks up and instantiates a registered identity.
pub fn identity(id: &str, params: Params) -> Result<IdentityRecord> {
    let fib = |n: u32| fibonacci(n as usize);
    let fib2 = |n: u32| fib(n) * fib(n);
    let mut r = IdentityRecord {
        id: "",
        params: Params::default(),
        description: String::new(),
        spec: None,
        weight: None,
        closed_form: rat(&[1], &[1]),
        prime_gf: None,
        alternate_forms: Vec::new(),
        valid_from: 1,
        target: Target::Fib {
            a: 1,
            b: 0,
            zero_below: 0,
        },
        extras: Vec::new(),
    };
    let no_params = |r: &IdentityRecord| -> Result<()> {
        if params.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "`{}` takes no parameters",
                r.id
            )))
        }
    };
    match id {
        "i" => {
            r.id = "i";
            no_params(&r)?;
            r.description = "F_{n+1} compositions of n into parts 1 and 2".into();
            r.spec = Some(spec("parts=1,2"));
            r.weight = Some(PartWeightFunction::Indicator(PartPredicate::set([1, 2])));
            r.closed_form = rat(&[1], &[1, -1, -1]);
            r.prime_gf = Some(rat(&[0, 1, 1], &[1]));
            r.valid_from = 0;
            r.target = Target::Fib {
                a: 1,
                b: 1,
                zero_below: 0,
            };
        }
        "ii" => {
            r.id = "ii";
            no_params(&r)?;
            r.description = "F_{n-1} compositions of n into parts greater than 1".into();
            r.spec = Some(spec("parts=1,2; prefix=(2)"));
            r.weight = Some(PartWeightFunction::Indicator(PartPredicate::AtLeast(2)));
            r.closed_form = rat(&[0, 0, 1], &[1, -1, -1]).one_plus();
            r.prime_gf = Some(rat(&[0, 0, 1], &[1, -1]));
            r.target = Target::Fib {
                a: 1,
                b: -1,
                zero_below: 0,
            };
        }
        "iii" => {
            r.id = "iii";
            no_params(&r)?;
            r.description = "F_n compositions of n into odd parts".into();
            r.spec = Some(spec("parts=1,2; prefix=(1)"));
            r.weight = Some(PartWeightFunction::Indicator(PartPredicate::odd()));
            r.closed_form = rat(&[0, 1], &[1, -1, -1]).one_plus();
            r.prime_gf = Some(rat(&[0, 1], &[1, 0, -1]));
            r.target = Target::Fib {
                a: 1,
                b: 0,
                zero_below: 0,
            };
        }
        "iv" => {
            r.id = "iv";
            no_params(&r)?;
            r.description = "F_{2n} = sum of a_1 a_2 ... a_k".into();
            r.spec = Some(spec("parts=1,2; prefix=(1); mod=2"));
            r.weight = Some(PartWeightFunction::Part);
            r.closed_form = rat(&[0, 1], &[1, -3, 1]).one_plus();
            r.prime_gf = Some(rat(&[0, 1], &[1, -2, 1]));
            r.target = Target::Fib {
                a: 2,
                b: 0,
                zero_below: 0,
            };
            r.extras.push(Extra::PrimeOracle {
                name: "sgen_primes",
                param: Some(1),
            });
        }
        "v" => {
            r.id = "v";
            no_params(&r)?;
            r.description = "F_{2n-2} = sum of (2^(a_1-1)-1)...(2^(a_k-1)-1)".into();
            r.spec = Some(spec("parts=1,2; prefix=(1,2); mod=2"));
            r.weight = Some(PartWeightFunction::PowerMinusOne);
            r.closed_form = rat(&[0, 0, 1], &[1, -3, 1]).one_plus();
            r.prime_gf = Some(rat(&[0, 0, 1], &[1, -3, 2]));
            r.target = Target::Fib {
                a: 2,
                b: -2,
                zero_below: 0,
            };
            r.extras.push(Extra::PrimeOracle {
                name: "sgen_primes",
                param: Some(2),
            });
        }
        "vi" => {
            r.id = "vi";
            no_params(&r)?;
            r.description = "F_{2n+1} = sum of 2^#{i : a_i = 1}".into();
            r.spec = Some(spec("parts=1,2; mod=2"));
            r.weight = Some(PartWeightFunction::DoubleOnes);
            r.closed_form = rat(&[1, -1], &[1, -3, 1]);
            r.prime_gf = Some(rat(&[0, 2, -1], &[1, -1]));
            r.alternate_forms
                .push(("f_{2,0} by multisection".into(), f_mi(2, 0)));
            r.target = Target::Fib {
                a: 2,
                b: 1,
                zero_below: 0,
            };
            r.extras.push(Extra::PrimeLaw {
                first: big(2),
                coeff: big(1),
                ratio: big(1),
            });
        }
        "total" => {
            r.id = "total";
            no_params(&r)?;
            r.description = "2^(n-1) compositions of n".into();
            r.spec = Some(spec("parts=1,2; prefix=(1); weight=length"));
            r.weight = Some(PartWeightFunction::Indicator(PartPredicate::Any));
            r.closed_form = rat(&[0, 1], &[1, -2]).one_plus();
            r.prime_gf = Some(rat(&[0, 1], &[1, -1]));
            r.target = Target::Pow2 { shift: 1 };
        }
        "part_minus_one" => {
            r.id = "part_minus_one";
            no_params(&r)?;
            r.description = "2^(n-2) = sum of (a_1-1)...(a_k-1)".into();
            r.spec = Some(spec("parts=1,2; prefix=(2,1); weight=length"));
            r.weight = Some(PartWeightFunction::PartMinusOne);
            r.closed_form = rat(&[0, 0, 1], &[1, -2]).one_plus();
            r.prime_gf = Some(rat(&[0, 0, 1], &[1, -2, 1]));
            r.valid_from = 2;
            r.target = Target::Pow2 { shift: 2 };
        }
        "fib_minus_one" => {
            r.id = "fib_minus_one";
            no_params(&r)?;
            r.description = "2^(n-3) = sum of (F_{a_1}-1)...(F_{a_k}-1)".into();
            r.spec = Some(spec("parts=1,2; prefix=(2,1,1); weight=length"));
            r.weight = Some(PartWeightFunction::FibMinusOne);
            r.closed_form = rat(&[0, 0, 0, 1], &[1, -2]).one_plus();
            // x^3 / ((1-x)(1-x-x^2))
            r.prime_gf = Some(rat(&[0, 0, 0, 1], &[1, -2, 0, 1]));
            r.alternate_forms.push((
                "x/(1-x-x^2) - x/(1-x) as primes".into(),
                rat(&[0, 1], &[1, -1, -1])
                    .sub(&rat(&[0, 1], &[1, -1]))
                    .geometric_inverse()?,
            ));
            r.valid_from = 3;
            r.target = Target::Pow2 { shift: 3 };
        }
        "floor" => {
            r.id = "floor";
            no_params(&r)?;
            r.description = "F_{n-2} = sum of floor((a_1-1)/2)...floor((a_k-1)/2)".into();
            r.spec = Some(spec("parts=1,2; prefix=(2,1)"));
            r.weight = Some(PartWeightFunction::Floor { m: 2 });
            r.closed_form = rat(&[0, 0, 0, 1], &[1, -1, -1]).one_plus();
            r.prime_gf = Some(rat(&[0, 0, 0, 1], &[1, -1, -1, 1]));
            r.alternate_forms.push((
                "(x^3+x^4)/(1-x^2)^2 as primes".into(),
                rat(&[0, 0, 0, 1, 1], &[1, 0, -2, 0, 1]).geometric_inverse()?,
            ));
            r.valid_from = 2;
            r.target = Target::Fib {
                a: 1,
                b: -2,
                zero_below: 0,
            };
        }
        "floor_m" => {
            r.id = "floor_m";
            let m = need(r.id, params.m, "m", 1, 30)?;
            if params != Params::m(m) {
                return Err(Error::InvalidParameter("`floor_m` takes only m".into()));
            }
            r.params = params;
            r.description = format!(
                "r_(n-{}) = sum of floor((a_1-1)/{m})...floor((a_k-1)/{m})",
                m + 1
            );
            r.spec = Some(if m == 1 {
                spec("parts=1,2; prefix=(2,1); weight=length")
            } else {
                spec(&format!("parts=1,{m}; prefix=(1); suffix=({m})"))
            });
            r.weight = Some(PartWeightFunction::Floor { m });
            let m = m as usize;
            let mut den = vec![big(0); m + 1];
            den[0] = big(1);
            den[1] -= 1;
            den[m] -= 1;
            r.closed_form = ratio(Polynomial::monomial(big(1), m + 1), poly(den)).one_plus();
            // x^{m+1} / ((1-x)(1-x^m))
            let one_minus = |k: usize| {
                let mut c = vec![big(0); k + 1];
                c[0] = big(1);
                c[k] = big(-1);
                poly(c)
            };
            r.prime_gf = Some(ratio(
                Polynomial::monomial(big(1), m + 1),
                &one_minus(1) * &one_minus(m),
            ));
            r.valid_from = m + 1;
            r.target = Target::RSeq { m: m as u32 };
        }
        "two_parts" => {
            r.id = "two_parts";
            let p = need(r.id, params.p, "p", 1, 30)?;
            let q = need(r.id, params.q, "q", 1, 30)?;
            if p == q || params != Params::pq(p, q) {
                return Err(Error::InvalidParameter(
                    "`two_parts` takes distinct p and q only".into(),
                ));
            }
            r.params = params;
            r.description = format!(
                "compositions of n-{p} into {p},{q} = compositions of n into parts {p}+{q}i"
            );
            r.spec = Some(SubmonoidSpec::over([p, q])?.with_prefix(&[p])?);
            r.weight = Some(PartWeightFunction::Indicator(PartPredicate::Progression {
                start: p,
                step: q,
            }));
            let (pu, qu) = (p as usize, q as usize);
            let mut den = vec![big(0); pu.max(qu) + 1];
            den[0] = big(1);
            den[pu] -= 1;
            den[qu] -= 1;
            r.closed_form = ratio(Polynomial::monomial(big(1), pu), poly(den)).one_plus();
            let mut den = vec![big(0); qu + 1];
            den[0] = big(1);
            den[qu] = big(-1);
            r.prime_gf = Some(ratio(Polynomial::monomial(big(1), pu), poly(den)));
            r.valid_from = pu;
            r.target = Target::TwoParts { p, q };
        }
        "fmgen" => {
            r.id = "fmgen";
            let k = need(r.id, params.k, "k", 2, 40)?;
            if params != Params::k(k) {
                return Err(Error::InvalidParameter("`fmgen` takes only k".into()));
            }
            r.params = params;
            let prefix: Vec<u32> = std::iter::once(2)
                .chain(std::iter::repeat_n(1, k as usize - 2))
                .collect();
            r.description = format!(
                "members starting with {}: 1 + x^{k}/(1-x-x^2)",
                word(&prefix)
            );
            r.spec = Some(SubmonoidSpec::fibonacci().with_prefix(&prefix)?);
            let ku = k as usize;
            r.closed_form = ratio(
                Polynomial::monomial(big(1), ku),
                Polynomial::from_i64(&[1, -1, -1]),
            )
            .one_plus();
            let den = &Polynomial::from_i64(&[1, -1, -1]) + &Polynomial::monomial(big(1), ku);
            r.prime_gf = Some(ratio(Polynomial::monomial(big(1), ku), den));
            let prime_values = r
                .prime_gf
                .as_ref()
                .map(|g| g.expand(WEIGHT_TABLE))
                .transpose()?;
            r.weight = prime_values
                .map(|s| tabulated(format!("fmgen({k}) primes"), s.coeffs()[1..].to_vec()));
            r.target = Target::Fib {
                a: 1,
                b: 1 - i64::from(k),
                zero_below: ku - 1,
            };
        }
        "sgen" => {
            r.id = "sgen";
            let k = need(r.id, params.k, "k", 1, 30)?;
            if params != Params::k(k) {
                return Err(Error::InvalidParameter("`sgen` takes only k".into()));
            }
            r.params = params;
            let prefix: Vec<u32> = std::iter::once(1)
                .chain(std::iter::repeat_n(2, k as usize - 1))
                .collect();
            r.description = format!(
                "even weight, starting with {}: 1 + x^{k} f_(2,1)",
                word(&prefix)
            );
            r.spec = Some(
                SubmonoidSpec::fibonacci()
                    .with_modulus(2)?
                    .with_prefix(&prefix)?,
            );
            let ku = k as usize;
            r.closed_form = ratio(
                Polynomial::monomial(big(1), ku),
                Polynomial::from_i64(&[1, -3, 1]),
            )
            .one_plus();
            r.alternate_forms.push((
                "1 + x^k f_{2,1} by multisection".into(),
                f_mi(2, 1).shift(ku).one_plus(),
            ));
            let den = &Polynomial::from_i64(&[1, -3, 1]) + &Polynomial::monomial(big(1), ku);
            r.prime_gf = Some(ratio(Polynomial::monomial(big(1), ku), den));
            r.weight = Some(oracle_weight("sgen_primes", Some(k), WEIGHT_TABLE));
            r.extras.push(Extra::PrimeOracle {
                name: "sgen_primes",
                param: Some(k),
            });
            r.target = Target::Fib {
                a: 2,
                b: 2 - 2 * i64::from(k),
                zero_below: ku - 1,
            };
        }
        "fibogenx" => {
            r.id = "fibogenx";
            let k = need(r.id, params.k, "k", 1, 30)?;
            if params != Params::k(k) {
                return Err(Error::InvalidParameter("`fibogenx` takes only k".into()));
            }
            r.params = params;
            let prefix: Vec<u32> = std::iter::once(2)
                .chain(std::iter::repeat_n(1, 2 * k as usize - 2))
                .collect();
            r.description = format!(
                "even weight, starting with {}: 1 + x^{k} f_(2,0)",
                word(&prefix)
            );
            r.spec = Some(
                SubmonoidSpec::fibonacci()
                    .with_modulus(2)?
                    .with_prefix(&prefix)?,
            );
            let ku = k as usize;
            let num = &Polynomial::monomial(big(1), ku) - &Polynomial::monomial(big(1), ku + 1);
            r.closed_form = ratio(num.clone(), Polynomial::from_i64(&[1, -3, 1])).one_plus();
            r.alternate_forms.push((
                "1 + x^k f_{2,0} by multisection".into(),
                f_mi(2, 0).shift(ku).one_plus(),
            ));
            let den = &(&Polynomial::from_i64(&[1, -3, 1]) + &Polynomial::monomial(big(1), ku))
                - &Polynomial::monomial(big(1), ku + 1);
            r.prime_gf = Some(ratio(num, den));
            r.weight = Some(oracle_weight("fibogenx_primes", Some(k), WEIGHT_TABLE));
            r.extras.push(Extra::PrimeOracle {
                name: "fibogenx_primes",
                param: Some(k),
            });
            r.target = Target::Fib {
                a: 2,
                b: 1 - 2 * i64::from(k),
                zero_below: ku,
            };
        }
        "f2n_minus_1" => {
            r.id = "f2n_minus_1";
            no_params(&r)?;
            r.description = "F_{2n-1} = sum of 2^(#{i : a_i = 1} + n - 2k)".into();
            r.spec = Some(spec("parts=1,2; prefix=(2); mod=2"));
            r.weight = Some(PartWeightFunction::HalfPower);
            r.closed_form = rat(&[1, -2], &[1, -3, 1]);
            r.alternate_forms.push((
                "1 + x(1-x)/(1-3x+x^2)".into(),
                rat(&[0, 1, -1], &[1, -3, 1]).one_plus(),
            ));
            // 1/(1 - x/(1 - x/(1 - x)))
            let inner = rat(&[0, 1], &[1, -1]).geometric_inverse()?;
            let middle = inner.mul(&rat(&[0, 1], &[1])).geometric_inverse()?;
            r.alternate_forms
                .push(("continued fraction".into(), middle));
            r.prime_gf = Some(rat(&[0, 1, -1], &[1, -2]));
            r.target = Target::Fib {
                a: 2,
                b: -1,
                zero_below: 0,
            };
            r.extras.push(Extra::Dyck);
        }
        "m0" => {
            r.id = "m0";
            let m = need(r.id, params.m, "m", 1, 30)?;
            if params != Params::m(m) {
                return Err(Error::InvalidParameter("`m0` takes only m".into()));
            }
            r.params = params;
            r.description = format!("compositions of multiples of {m}: f_({m},0)");
            r.spec = Some(SubmonoidSpec::fibonacci().with_modulus(m)?);
            let (_, l) = fib_lucas(m as usize);
            let sign = if m % 2 == 0 { big(1) } else { big(-1) };
            r.closed_form = ratio(
                poly(vec![big(1), -fib(m - 1)]),
                poly(vec![big(1), -l, sign]),
            );
            r.alternate_forms
                .push(("f_{m,0} by multisection".into(), f_mi(m, 0)));
            r.prime_gf = Some(
                RationalGF::polynomial(poly(vec![big(0), fib(m + 1)])).add(&ratio(
                    poly(vec![big(0), big(0), fib2(m)]),
                    poly(vec![big(1), -fib(m - 1)]),
                )),
            );
            let (w, law) = law_weight(&fib(m + 1), &fib2(m), &fib(m - 1), WEIGHT_TABLE);
            r.weight = Some(w);
            r.extras.push(law);
            r.target = Target::Fib {
                a: i64::from(m),
                b: 1,
                zero_below: 0,
            };
        }
        "m_minus_2" => {
            r.id = "m_minus_2";
            let m = need(r.id, params.m, "m", 2, 30)?;
            if params != Params::m(m) {
                return Err(Error::InvalidParameter("`m_minus_2` takes only m".into()));
            }
            r.params = params;
            r.description = format!("multiples of {m} starting with 2: 1 + x f_({m},{})", m - 2);
            r.spec = Some(
                SubmonoidSpec::fibonacci()
                    .with_modulus(m)?
                    .with_prefix(&[2])?,
            );
            r.closed_form = f_mi(m, m - 2).shift(1).one_plus();
            r.prime_gf = Some(
                RationalGF::polynomial(poly(vec![big(0), fib(m - 1)])).add(&ratio(
                    poly(vec![big(0), big(0), fib2(m)]),
                    poly(vec![big(1), -fib(m + 1)]),
                )),
            );
            let (w, law) = law_weight(&fib(m - 1), &fib2(m), &fib(m + 1), WEIGHT_TABLE);
            r.weight = Some(w);
            r.extras.push(law);
            if m == 3 {
                r.extras.push(Extra::PrimeOracle {
                    name: "geom43",
                    param: None,
                });
            }
            r.target = Target::Fib {
                a: i64::from(m),
                b: -1,
                zero_below: 0,
            };
        }
        "m_minus_1" => {
            r.id = "m_minus_1";
            let m = need(r.id, params.m, "m", 1, 30)?;
            if params != Params::m(m) {
                return Err(Error::InvalidParameter("`m_minus_1` takes only m".into()));
            }
            r.params = params;
            r.description = format!("multiples of {m} starting with 1: 1 + x f_({m},{})", m - 1);
            r.spec = Some(
                SubmonoidSpec::fibonacci()
                    .with_modulus(m)?
                    .with_prefix(&[1])?,
            );
            let (_, l) = fib_lucas(m as usize);
            let sign = if m % 2 == 0 { big(1) } else { big(-1) };
            let f = ratio(
                poly(vec![fib(m)]),
                poly(vec![big(1), -l.clone(), sign.clone()]),
            );
            r.closed_form = f.shift(1).one_plus();
            r.alternate_forms.push((
                "1 + x f_{m,m-1} by multisection".into(),
                f_mi(m, m - 1).shift(1).one_plus(),
            ));
            if m % 2 == 1 {
                r.alternate_forms.push((
                    "odd m: 1 + x F_m/(1-L_m x-x^2)".into(),
                    ratio(poly(vec![fib(m)]), poly(vec![big(1), -l, big(-1)]))
                        .shift(1)
                        .one_plus(),
                ));
            }
            r.prime_gf = Some(ratio(
                poly(vec![big(0), fib(m)]),
                poly(vec![big(1), -2 * fib(m - 1), sign]),
            ));
            match m {
                3 => {
                    r.extras.push(Extra::PrimeOracle {
                        name: "two_pell",
                        param: None,
                    });
                    r.weight = Some(oracle_weight("two_pell", None, WEIGHT_TABLE));
                }
                4 => {
                    r.extras.push(Extra::PrimeOracle {
                        name: "xf43_primes",
                        param: None,
                    });
                    r.weight = Some(oracle_weight("xf43_primes", None, WEIGHT_TABLE));
                }
                _ => {
                    let s = r
                        .prime_gf
                        .as_ref()
                        .expect("set above")
                        .expand(WEIGHT_TABLE)?;
                    r.weight = Some(tabulated(
                        format!("m_minus_1({m}) primes"),
                        s.coeffs()[1..].to_vec(),
                    ));
                }
            }
            r.target = Target::Fib {
                a: i64::from(m),
                b: 0,
                zero_below: 0,
            };
        }
        "xf30" => {
            r.id = "xf30";
            no_params(&r)?;
            r.description = "multiples of 3 starting with (1,2): 1 + x f_(3,0)".into();
            r.spec = Some(spec("parts=1,2; prefix=(1,2); mod=3"));
            r.closed_form = rat(&[0, 1, -1], &[1, -4, -1]).one_plus();
            r.alternate_forms.push((
                "1 + x f_{3,0} by multisection".into(),
                f_mi(3, 0).shift(1).one_plus(),
            ));
            r.prime_gf = Some(rat(&[0, 1, -1], &[1, -3, -2]));
            r.weight = Some(oracle_weight("xf30_primes", None, WEIGHT_TABLE));
            r.extras.push(Extra::PrimeOracle {
                name: "xf30_primes",
                param: None,
            });
            r.target = Target::Fib {
                a: 3,
                b: -2,
                zero_below: 0,
            };
        }
        "trisection" => {
            r.id = "trisection";
            no_params(&r)?;
            r.description = "F_{3n+1} = sum of 3^#{a_i = 1} 4^#{a_j != 1}".into();
            r.spec = Some(spec("parts=1,2; mod=3"));
            r.weight = Some(PartWeightFunction::ThreeFour);
            r.closed_form = rat(&[1, -1], &[1, -4, -1]);
            r.alternate_forms
                .push(("f_{3,0} by multisection".into(), f_mi(3, 0)));
            r.prime_gf = Some(rat(&[0, 3, 1], &[1, -1]));
            r.extras.push(Extra::PrimeLaw {
                first: big(3),
                coeff: big(4),
                ratio: big(1),
            });
            r.valid_from = 0;
            r.target = Target::Fib {
                a: 3,
                b: 1,
                zero_below: 0,
            };
        }
        _ => {
            return Err(Error::UnknownIdentity {
                id: id.to_string(),
                known: IDENTITIES
                    .iter()
                    .map(|(i, _)| *i)
                    .collect::<Vec<_>>()
                    .join(", "),
            })
        }
    }
    Ok(r)
}

/// The instances `verify-all` runs.
pub fn default_instances() -> Vec<(&'static str, Params)> {
    let mut out: Vec<(&'static str, Params)> = [
        "i",
        "ii",
        "iii",
        "iv",
        "v",
        "vi",
        "total",
        "part_minus_one",
        "fib_minus_one",
        "floor",
        "f2n_minus_1",
        "xf30",
        "trisection",
    ]
    .iter()
    .map(|&id| (id, Params::default()))
    .collect();
    out.extend((1..=5).map(|m| ("floor_m", Params::m(m))));
    out.extend(
        [(1, 2), (2, 1), (2, 3), (3, 2), (1, 3)].map(|(p, q)| ("two_parts", Params::pq(p, q))),
    );
    out.extend((2..=6).map(|k| ("fmgen", Params::k(k))));
    out.extend((1..=4).map(|k| ("sgen", Params::k(k))));
    out.extend((1..=4).map(|k| ("fibogenx", Params::k(k))));
    out.extend((1..=6).map(|m| ("m0", Params::m(m))));
    out.extend((2..=6).map(|m| ("m_minus_2", Params::m(m))));
    out.extend((1..=6).map(|m| ("m_minus_1", Params::m(m))));
    out
}

/// Runs every applicable check on one identity instance through `order`.
pub fn verify_identity(id: &str, params: Params, order: usize) -> Result<Report> {
    let record = identity(id, params)?;
    verify_record(&record, order)
}

pub fn verify_record(r: &IdentityRecord, order: usize) -> Result<Report> {
    if order < r.valid_from {
        return Err(Error::BelowValidity {
            id: r.id.to_string(),
            order,
            valid_from: r.valid_from,
        });
    }
    let n = order;
    let closed = r.closed_form.expand(n)?;
    let target = r.target.values(r.valid_from, n);
    let primes = r.prime_gf.as_ref().map(|g| g.expand(n)).transpose()?;
    let at = |s: &TruncatedSeries| {
        let s = s.clone();
        move |i: usize| s.coeff(i).clone()
    };
    let of = |v: &Vec<BigInt>| {
        let v = v.clone();
        move |i: usize| v[i].clone()
    };
    let mut out = Vec::new();

    out.push(MethodResult::compare(
        Method::A,
        "closed form = target",
        r.valid_from,
        n,
        at(&closed),
        of(&target),
    ));
    if let Some(p) = &primes {
        let inv = p.geometric_inverse()?;
        out.push(MethodResult::compare(
            Method::A,
            "1/(1 - primes) = closed form",
            0,
            n,
            at(&inv),
            at(&closed),
        ));
    }
    for (label, form) in &r.alternate_forms {
        let alt = form.expand(n)?;
        out.push(MethodResult::compare(
            Method::A,
            format!("alt: {label}"),
            0,
            n,
            at(&alt),
            at(&closed),
        ));
    }
    for extra in &r.extras {
        if let (Some(p), Some(law)) = (&primes, extra.prime_counts(n)) {
            out.push(MethodResult::compare(
                Method::A,
                extra.label(),
                extra.first_index(),
                n,
                at(p),
                of(&law),
            ));
        }
    }

    match &r.spec {
        Some(spec) => {
            let bound = enumeration_bound(spec, n);
            let c = census(spec, bound, false);
            let b = bound as usize;
            let members = c.member_series();
            let found = c.primes.series();
            out.push(MethodResult::compare(
                Method::B,
                "members = closed form",
                0,
                b,
                at(&members),
                at(&closed),
            ));
            if let Some(p) = &primes {
                out.push(MethodResult::compare(
                    Method::B,
                    "irreducibles = primes",
                    1,
                    b,
                    at(&found),
                    at(p),
                ));
            }
            let inv = found.geometric_inverse()?;
            out.push(MethodResult::compare(
                Method::B,
                "1/(1 - irreducibles) = members",
                0,
                b,
                at(&inv),
                at(&members),
            ));
            for extra in &r.extras {
                if let Some(law) = extra.prime_counts(b) {
                    out.push(MethodResult::compare(
                        Method::B,
                        extra.label(),
                        extra.first_index(),
                        b,
                        at(&found),
                        of(&law),
                    ));
                }
            }
        }
        None => out.push(MethodResult::skipped(
            Method::B,
            "enumeration",
            "no monoid attached",
        )),
    }

    match &r.weight {
        Some(w) => {
            let sums = weighted_sums(n as u32, w);
            out.push(MethodResult::compare(
                Method::C,
                format!("sum over C(n) of {}", w.label()),
                r.valid_from,
                n,
                of(&sums),
                of(&target),
            ));
            if let Some(p) = &primes {
                let w = w.clone();
                out.push(MethodResult::compare(
                    Method::C,
                    "weights = primes",
                    1,
                    n,
                    move |i| w.value(i as u32),
                    at(p),
                ));
            }
        }
        None => out.push(MethodResult::skipped(
            Method::C,
            "weighted sum",
            "no weighting attached",
        )),
    }

    if let Some(spec) = &r.spec {
        let c = count_census(spec, n as u64);
        let members = c.member_series();
        out.push(MethodResult::compare(
            Method::D,
            "members = closed form",
            0,
            n,
            at(&members),
            at(&closed),
        ));
        if let Some(p) = &primes {
            out.push(MethodResult::compare(
                Method::D,
                "irreducibles = primes",
                1,
                n,
                at(&c.primes.series()),
                at(p),
            ));
        }
    }

    if r.extras.contains(&Extra::Dyck) {
        let to = n.min(30);
        let from = r.valid_from.max(1);
        out.push(MethodResult::compare(
            Method::X,
            "dyck height 3 = target",
            from,
            to,
            |i| dyck_count(i, 3),
            of(&target),
        ));
    }

    Ok(Report::new(r.id, r.params.to_string(), order, out))
}

/// Every default instance at `order`, sorted by name.
pub fn verify_all(order: usize) -> Result<Vec<Report>> {
    let mut reports = default_instances()
        .into_par_iter()
        .map(|(id, p)| verify_identity(id, p, order))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by_key(Report::name);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_text() {
        let p: Params = "m=3, k=2".parse().unwrap();
        assert_eq!(
            p,
            Params {
                k: Some(2),
                m: Some(3),
                ..Params::default()
            }
        );
        assert_eq!(p.to_string(), "k=2,m=3");
        assert!("m=3,m=4".parse::<Params>().is_err());
        assert!("z=1".parse::<Params>().is_err());
        assert_eq!("".parse::<Params>().unwrap(), Params::default());
    }

    #[test]
    fn spot_values() {
        let r = identity("iv", Params::default()).unwrap();
        assert_eq!(r.target.values(1, 3)[3], big(8));
        let r = identity("floor_m", Params::m(2)).unwrap();
        assert_eq!(r.target.values(3, 6)[6], big(3));
        let r = identity("trisection", Params::default()).unwrap();
        assert_eq!(r.target.values(0, 2)[2], big(13));
    }

    #[test]
    fn fast_reports_pass() {
        for (id, p) in [
            ("i", Params::default()),
            ("floor_m", Params::m(3)),
            ("fmgen", Params::k(2)),
            ("two_parts", Params::pq(2, 3)),
        ] {
            let rep = verify_identity(id, p, 12).unwrap();
            assert!(rep.passed, "{rep}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            identity("vii", Params::default()),
            Err(Error::UnknownIdentity { .. })
        ));
        assert!(matches!(
            verify_identity("fib_minus_one", Params::default(), 2),
            Err(Error::BelowValidity { valid_from: 3, .. })
        ));
        assert!(identity("floor_m", Params::default()).is_err());
        assert!(identity("two_parts", Params::pq(2, 2)).is_err());
        assert!(identity("i", Params::k(2)).is_err());
    }
}
