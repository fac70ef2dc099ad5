//! Finite-state recognizers for [`SubmonoidSpec`] membership and for
//! irreducibility of members.

use super::spec::SubmonoidSpec;

/// Knuth–Morris–Pratt matcher; states are the lengths of the longest suffix
/// read so far that is a prefix of the pattern.
#[derive(Debug, Clone)]
pub(crate) struct Kmp {
    pattern: Vec<u32>,
    fail: Vec<usize>,
}

impl Kmp {
    pub(crate) fn new(pattern: &[u32]) -> Self {
        Kmp {
            pattern: pattern.to_vec(),
            fail: border_array(pattern),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.pattern.len()
    }

    pub(crate) fn step(&self, mut state: usize, a: u32) -> usize {
        if self.pattern.is_empty() {
            return 0;
        }
        if state == self.pattern.len() {
            state = self.fail[state];
        }
        while state > 0 && self.pattern[state] != a {
            state = self.fail[state];
        }
        if self.pattern[state] == a {
            state + 1
        } else {
            0
        }
    }
}

/// `b[k]` is the length of the longest proper border of `w[..k]`, for
/// `0 <= k <= w.len()`.
pub fn border_array<T: PartialEq>(w: &[T]) -> Vec<usize> {
    let mut b = vec![0; w.len() + 1];
    let mut k = 0;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = b[k];
        }
        if w[i] == w[k] {
            k += 1;
        }
        b[i + 1] = k;
    }
    b
}

/// State of the membership recognizer after reading a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct MemberState {
    pub started: bool,
    pub prefix_read: u16,
    pub suffix: u16,
    pub forbid: u16,
    pub residue: u32,
}

/// Deterministic recognizer of a spec's members; `None` is the dead state.
#[derive(Debug, Clone)]
pub(crate) struct MemberDfa {
    pub letters: Vec<u32>,
    /// Residue of each letter's weight, indexed by letter; `None` outside
    /// the alphabet.
    residues: Vec<Option<u32>>,
    prefix: Vec<u32>,
    suffix: Kmp,
    forbid: Kmp,
    modulus: u32,
}

impl MemberDfa {
    pub(crate) fn new(spec: &SubmonoidSpec) -> Self {
        let modulus = spec.modulus().unwrap_or(1);
        let top = spec.alphabet().last().copied().unwrap_or(0) as usize;
        let mut residues = vec![None; top + 1];
        for &a in spec.alphabet() {
            residues[a as usize] = Some((spec.letter_weight(a) % u64::from(modulus)) as u32);
        }
        MemberDfa {
            letters: spec.alphabet().iter().copied().collect(),
            residues,
            prefix: spec.prefix().to_vec(),
            suffix: Kmp::new(spec.suffix()),
            forbid: Kmp::new(spec.forbidden()),
            modulus,
        }
    }

    pub(crate) fn start(&self) -> MemberState {
        MemberState {
            started: false,
            prefix_read: 0,
            suffix: 0,
            forbid: 0,
            residue: 0,
        }
    }

    pub(crate) fn step(&self, s: MemberState, a: u32) -> Option<MemberState> {
        let lw = (*self.residues.get(a as usize)?)?;
        let prefix = &self.prefix;
        let mut prefix_read = s.prefix_read;
        if (prefix_read as usize) < prefix.len() {
            if prefix[prefix_read as usize] != a {
                return None;
            }
            prefix_read += 1;
        }
        let forbid = self.forbid.step(s.forbid as usize, a);
        if self.forbid.len() > 0 && forbid == self.forbid.len() {
            return None;
        }
        let mut residue = s.residue + lw;
        if residue >= self.modulus {
            residue -= self.modulus;
        }
        Some(MemberState {
            started: true,
            prefix_read,
            suffix: self.suffix.step(s.suffix as usize, a) as u16,
            forbid: forbid as u16,
            residue,
        })
    }

    pub(crate) fn accepts(&self, s: &MemberState) -> bool {
        !s.started
            || (s.prefix_read as usize == self.prefix.len()
                && s.suffix as usize == self.suffix.len()
                && s.residue == 0)
    }
}

/// Membership state extended with what is needed to decide, at the end of
/// the word, whether it splits into two nonempty members.
///
/// A split at position `i` needs `w[..i]` to be a member (known at `i`) and
/// `w[i..]` to be a member. Given that `w` is a member, the latter reduces to
/// `w[i..]` starting with the prefix and being at least as long as both the
/// prefix and the suffix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct ScanState {
    pub member: MemberState,
    /// KMP state for occurrences of the prefix anywhere in the word.
    prefix_occ: u16,
    /// Bit `k` set: position `len - k` is a split candidate whose left part
    /// is a member; kept for `k <= prefix.len()`.
    pending: u64,
    /// `len - i` for the earliest confirmed split `i`, capped.
    split: Option<u16>,
    /// Last letter, when the scanner tracks it.
    pub last: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct Scanner {
    pub dfa: MemberDfa,
    prefix: Kmp,
    cap: u16,
    track_last: bool,
}

impl Scanner {
    pub(crate) fn new(spec: &SubmonoidSpec, track_last: bool) -> Self {
        let p = spec.prefix().len();
        let s = spec.suffix().len();
        Scanner {
            dfa: MemberDfa::new(spec),
            prefix: Kmp::new(spec.prefix()),
            cap: p.max(s).max(1) as u16,
            track_last,
        }
    }

    pub(crate) fn start(&self) -> ScanState {
        ScanState {
            member: self.dfa.start(),
            prefix_occ: 0,
            pending: 0,
            split: None,
            last: 0,
        }
    }

    pub(crate) fn step(&self, s: &ScanState, a: u32) -> Option<ScanState> {
        let member = self.dfa.step(s.member, a)?;
        let p = self.prefix.len();
        let mut split = s.split.map(|d| (d + 1).min(self.cap));
        let mut pending = s.pending;
        let mut prefix_occ = s.prefix_occ;
        if p > 0 {
            prefix_occ = self.prefix.step(prefix_occ as usize, a) as u16;
            pending = (pending << 1) & mask(p + 1);
            if prefix_occ as usize == p && pending & (1 << p) != 0 && split.is_none() {
                split = Some((p as u16).min(self.cap));
            }
        }
        if self.dfa.accepts(&member) {
            if p > 0 {
                pending |= 1;
            } else if split.is_none() {
                split = Some(0);
            }
        }
        Some(ScanState {
            member,
            prefix_occ,
            pending,
            split,
            last: if self.track_last { a } else { 0 },
        })
    }

    pub(crate) fn is_member(&self, s: &ScanState) -> bool {
        self.dfa.accepts(&s.member)
    }

    /// Nonempty member with no split into two nonempty members.
    pub(crate) fn is_irreducible(&self, s: &ScanState) -> bool {
        s.member.started && self.is_member(s) && s.split.is_none_or(|d| d < self.cap)
    }
}

fn mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}
