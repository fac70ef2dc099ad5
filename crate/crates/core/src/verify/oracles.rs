//! Reference sequences from explicit recurrences, Dyck path counts, the
//! trisection prime counts, and b-file export.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monoid::{prime_counts_by_last_part, SubmonoidSpec};

/// Dyck paths of semilength `n` staying at height at most `h`.
pub fn dyck_count(n: usize, h: usize) -> BigInt {
    let mut row = vec![BigInt::zero(); h + 1];
    row[0] = BigInt::one();
    for _ in 0..2 * n {
        let mut next = vec![BigInt::zero(); h + 1];
        for (y, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if y < h {
                next[y + 1] += c;
            }
            if y > 0 {
                next[y - 1] += c;
            }
        }
        row = next;
    }
    row.swap_remove(0)
}

/// Prime counts `a_1..a_W` of the monoid of {1,2} compositions of multiples
/// of 3 starting with 1, and the counts `b_n` of those ending in a part 1.
/// Index 0 holds zero in both.
pub fn trisection_prime_counts(max_weight: u64) -> (Vec<BigInt>, Vec<BigInt>) {
    let spec: SubmonoidSpec = "parts=1,2; prefix=(1); mod=3".parse().expect("valid spec");
    let split = prime_counts_by_last_part(&spec, max_weight);
    let zeros = vec![BigInt::zero(); max_weight as usize + 1];
    let b = split.get(&1).cloned().unwrap_or_else(|| zeros.clone());
    let a = split.values().fold(zeros, |mut acc, v| {
        for (x, y) in acc.iter_mut().zip(v) {
            *x += y;
        }
        acc
    });
    (a, b)
}

/// A registered reference sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleInfo {
    pub name: &'static str,
    /// Parameter the sequence takes, if any.
    pub param: Option<&'static str>,
    pub description: &'static str,
}

pub const ORACLES: &[OracleInfo] = &[
    OracleInfo {
        name: "fib",
        param: None,
        description: "F_n from n = 0",
    },
    OracleInfo {
        name: "lucas",
        param: None,
        description: "L_n from n = 0",
    },
    OracleInfo {
        name: "pell",
        param: None,
        description: "Pell numbers from n = 1",
    },
    OracleInfo {
        name: "two_pell",
        param: None,
        description: "2 P_n from n = 1",
    },
    OracleInfo {
        name: "r",
        param: Some("m"),
        description: "r_n = r_{n-1} + r_{n-m} from n = 0",
    },
    OracleInfo {
        name: "geom43",
        param: None,
        description: "4 * 3^(n-2) from n = 2",
    },
    OracleInfo {
        name: "sgen_primes",
        param: Some("k"),
        description: "coefficients of x^k/(1-3x+x^2+x^k) from n = 1",
    },
    OracleInfo {
        name: "fibogenx_primes",
        param: Some("k"),
        description: "coefficients of x^k(1-x)/(1-3x+x^2+x^k-x^(k+1)) from n = 1",
    },
    OracleInfo {
        name: "xf30_primes",
        param: None,
        description: "coefficients of x(1-x)/(1-3x-2x^2) from n = 1",
    },
    OracleInfo {
        name: "xf43_primes",
        param: None,
        description: "coefficients of 3x/(1-4x+x^2) from n = 1",
    },
    OracleInfo {
        name: "dyck3",
        param: None,
        description: "Dyck paths of height at most 3 from n = 0",
    },
    OracleInfo {
        name: "trisection_a",
        param: None,
        description: "trisection prime counts a_n from n = 1",
    },
    OracleInfo {
        name: "trisection_b",
        param: None,
        description: "trisection prime counts b_n from n = 1",
    },
];

fn unknown(name: &str) -> Error {
    Error::UnknownOracle {
        name: name.to_string(),
        known: ORACLES
            .iter()
            .map(|o| o.name)
            .collect::<Vec<_>>()
            .join(", "),
    }
}

fn need(name: &str, param: Option<u32>, what: &str, min: u32) -> Result<u32> {
    match param {
        Some(v) if v >= min => Ok(v),
        _ => Err(Error::InvalidParameter(format!(
            "`{name}` needs {what} >= {min}"
        ))),
    }
}

/// Index of the first term of a registered sequence.
pub fn oracle_offset(name: &str) -> Result<usize> {
    Ok(match name {
        "fib" | "lucas" | "r" | "dyck3" => 0,
        "geom43" => 2,
        "pell" | "two_pell" | "sgen_primes" | "fibogenx_primes" | "xf30_primes" | "xf43_primes"
        | "trisection_a" | "trisection_b" => 1,
        _ => return Err(unknown(name)),
    })
}

/// OEIS identifier of a registered sequence, where one is known.
pub fn oeis_label(name: &str, param: Option<u32>) -> Option<&'static str> {
    match (name, param) {
        ("fib", _) => Some("A000045"),
        ("lucas", _) => Some("A000032"),
        ("pell", _) => Some("A000129"),
        ("two_pell", _) | ("trisection_a", _) => Some("A052542"),
        ("r", Some(m)) => match m {
            3 => Some("A000930"),
            4 => Some("A003269"),
            5 => Some("A003520"),
            6 => Some("A005708"),
            7 => Some("A005709"),
            8 => Some("A005710"),
            9 => Some("A005711"),
            _ => None,
        },
        ("geom43", _) => Some("A003946"),
        ("fibogenx_primes", Some(2)) => Some("A052921"),
        ("sgen_primes", Some(3)) => Some("A048739"),
        ("sgen_primes", Some(4)) => Some("A077849"),
        ("xf30_primes", _) => Some("A104934"),
        ("xf43_primes", _) => Some("A005320"),
        _ => None,
    }
}

/// First `len` terms of a registered sequence, starting at its offset.
pub fn oracle_sequence(name: &str, param: Option<u32>, len: usize) -> Result<Vec<BigInt>> {
    let offset = oracle_offset(name)?;
    let end = offset + len;
    // Each arm fills terms 0..end and the prefix below the offset is dropped.
    let full: Vec<BigInt> = match name {
        "fib" => second_order(end, 0, 1, 1, 1),
        "lucas" => second_order(end, 2, 1, 1, 1),
        "pell" => second_order(end, 0, 1, 2, 1),
        "two_pell" => second_order(end, 0, 2, 2, 1),
        "r" => {
            let m = need(name, param, "m", 1)? as usize;
            let mut r: Vec<BigInt> = Vec::with_capacity(end);
            for n in 0..end {
                let v = if n < m {
                    BigInt::one()
                } else {
                    &r[n - 1] + &r[n - m]
                };
                r.push(v);
            }
            r
        }
        "geom43" => (0..end)
            .map(|n| {
                if n < 2 {
                    BigInt::zero()
                } else {
                    BigInt::from(4) * BigInt::from(3).pow(n as u32 - 2)
                }
            })
            .collect(),
        "sgen_primes" => {
            // u_n = 3u_{n-1} - u_{n-2} - u_{n-k} + [n = k]
            let k = need(name, param, "k", 1)? as usize;
            let mut u: Vec<BigInt> = Vec::with_capacity(end);
            for n in 0..end {
                let mut v = BigInt::from(u8::from(n == k));
                if n >= 1 {
                    v += 3 * &u[n - 1];
                }
                if n >= 2 {
                    v -= &u[n - 2];
                }
                if n >= k {
                    v -= &u[n - k];
                }
                u.push(v);
            }
            u
        }
        "fibogenx_primes" => {
            // u_n = 3u_{n-1} - u_{n-2} - u_{n-k} + u_{n-k-1} + [n = k] - [n = k+1]
            let k = need(name, param, "k", 1)? as usize;
            let mut u: Vec<BigInt> = Vec::with_capacity(end);
            for n in 0..end {
                let mut v = BigInt::from(i8::from(n == k) - i8::from(n == k + 1));
                if n >= 1 {
                    v += 3 * &u[n - 1];
                }
                if n >= 2 {
                    v -= &u[n - 2];
                }
                if n >= k {
                    v -= &u[n - k];
                }
                if n > k {
                    v += &u[n - k - 1];
                }
                u.push(v);
            }
            u
        }
        // u_n = 3u_{n-1} + 2u_{n-2} from n = 3, with u_1 = 1, u_2 = 2
        "xf30_primes" => {
            let mut u: Vec<BigInt> = Vec::with_capacity(end);
            for n in 0..end {
                let v = match n {
                    0..=2 => BigInt::from(n),
                    _ => 3 * &u[n - 1] + 2 * &u[n - 2],
                };
                u.push(v);
            }
            u
        }
        // u_n = 4u_{n-1} - u_{n-2}, u_0 = 0, u_1 = 3
        "xf43_primes" => second_order(end, 0, 3, 4, -1),
        "dyck3" => (0..end).map(|n| dyck_count(n, 3)).collect(),
        "trisection_a" | "trisection_b" => {
            let (a, b) = trisection_prime_counts(end.saturating_sub(1) as u64);
            if name == "trisection_a" {
                a
            } else {
                b
            }
        }
        _ => return Err(unknown(name)),
    };
    Ok(full.into_iter().skip(offset).take(len).collect())
}

/// `s_0 = a`, `s_1 = b`, `s_n = c s_{n-1} + d s_{n-2}`.
fn second_order(len: usize, a: i64, b: i64, c: i64, d: i64) -> Vec<BigInt> {
    let mut s: Vec<BigInt> = Vec::with_capacity(len);
    for n in 0..len {
        let v = match n {
            0 => BigInt::from(a),
            1 => BigInt::from(b),
            _ => c * &s[n - 1] + d * &s[n - 2],
        };
        s.push(v);
    }
    s
}

/// One `index value` line per term.
pub fn export_bfile(seq: &[BigInt], offset: i64) -> String {
    seq.iter()
        .enumerate()
        .map(|(i, v)| format!("{} {v}\n", offset + i as i64))
        .collect()
}
