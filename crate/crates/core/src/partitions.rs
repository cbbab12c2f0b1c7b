//! Partitions, the James / pointed / split trichotomy for pairs of rows,
//! segment combinatorics of James partitions, and enumeration for sweeps.
//!
//! Row indices in this module are 1-based to match the usual `λ_1 ≥ … ≥ λ_n`
//! notation: `r = 1` is the first row.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::padic::Prime;

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Build a partition, stripping trailing zeros.
    pub fn new(parts: &[u64]) -> Result<Self> {
        let end = parts.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1);
        let parts = &parts[..end];
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing, found {} before {}",
                w[0], w[1]
            )));
        }
        Ok(Partition {
            parts: parts.to_vec(),
        })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn n(&self) -> usize {
        self.parts.len()
    }

    /// Sum of the parts.
    pub fn degree(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// `λ_r`, 1-based.
    pub fn part(&self, r: usize) -> u64 {
        self.parts[r - 1]
    }

    /// `v_r = val_p(λ_r + 1)`.
    pub fn v(&self, r: usize, p: Prime) -> u32 {
        p.val(self.part(r) + 1)
    }

    /// `l_r = len_p(λ_r)`.
    pub fn l(&self, r: usize, p: Prime) -> u32 {
        p.len(self.part(r))
    }

    /// Multiply every part by `k`.
    pub fn scaled(&self, k: u64) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&x| x * k).collect(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. `4,2,1` or `(4,2,1,0)`. Empty means the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if s.is_empty() {
            return Ok(Partition::default());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::InvalidPartition(format!("bad part {:?}: {e}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(&parts)
    }
}

/// Shape of a two-row partition `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwoPartClass {
    James,
    /// `b = b_hat + p^beta` with `b_hat < p^{val_p(a+1)} < p^beta`.
    Pointed {
        beta: u32,
        b_hat: u64,
    },
    Split,
}

fn check_pair(a: u64, b: u64) -> Result<()> {
    if b == 0 {
        return domain("a pair of rows needs a positive second part");
    }
    if a < b {
        return domain(format!("pair ({a},{b}) is not weakly decreasing"));
    }
    Ok(())
}

/// `b < p^{val_p(a+1)}`.
pub fn is_james_pair(a: u64, b: u64, p: Prime) -> Result<bool> {
    check_pair(a, b)?;
    Ok(james_pair(a, b, p))
}

pub(crate) fn james_pair(a: u64, b: u64, p: Prime) -> bool {
    b < p.pow(p.val(a + 1))
}

pub fn is_james_partition(lambda: &Partition, p: Prime) -> bool {
    lambda.parts.windows(2).all(|w| james_pair(w[0], w[1], p))
}

pub fn classify_two_part(a: u64, b: u64, p: Prime) -> Result<TwoPartClass> {
    check_pair(a, b)?;
    Ok(two_part_class(a, b, p))
}

pub(crate) fn two_part_class(a: u64, b: u64, p: Prime) -> TwoPartClass {
    let v = p.val(a + 1);
    if b < p.pow(v) {
        return TwoPartClass::James;
    }
    let beta = p.len(b);
    let b_hat = b - p.pow(beta);
    if beta > v && b_hat < p.pow(v) {
        TwoPartClass::Pointed { beta, b_hat }
    } else {
        TwoPartClass::Split
    }
}

/// All `r` in `1..n` with `(λ_r, λ_{r+1})` not James, ascending.
pub fn non_james_pairs(lambda: &Partition, p: Prime) -> Vec<usize> {
    (1..lambda.n())
        .filter(|&r| !james_pair(lambda.part(r), lambda.part(r + 1), p))
        .collect()
}

/// `min_r (v_r - l_{r+1})` for a James partition with at least two rows.
pub fn james_index(lambda: &Partition, p: Prime) -> Result<u32> {
    if lambda.n() < 2 {
        return domain("the James index needs at least two rows");
    }
    if !is_james_partition(lambda, p) {
        return domain(format!("{lambda} is not a James partition for p = {p}"));
    }
    Ok((1..lambda.n())
        .map(|r| lambda.v(r, p) - lambda.l(r + 1, p))
        .min()
        .expect("at least one pair"))
}

/// Segments and p-segments of a James partition, as sorted lists of 1-based rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSegments {
    pub segments: Vec<Vec<usize>>,
    pub p_segments: Vec<Vec<usize>>,
}

pub fn p_segments(lambda: &Partition, p: Prime) -> Result<PSegments> {
    if !is_james_partition(lambda, p) {
        return domain(format!("{lambda} is not a James partition for p = {p}"));
    }
    let n = lambda.n();
    let l: Vec<u32> = (1..=n).map(|r| lambda.l(r, p)).collect();

    // Labels are indexed by row - 1. Rows share a segment label iff their
    // lengths agree.
    let mut seg = vec![0usize; n];
    for r in 0..n {
        seg[r] = (0..=r).find(|&s| l[s] == l[r]).unwrap();
    }
    let segments = classes(&seg);

    let mut merged = seg.clone();
    for r in 2..n {
        let next_alone = seg.iter().filter(|&&c| c == seg[r]).count() == 1;
        let joins = next_alone && lambda.part(r) == p.pow(lambda.v(r - 1, p)) - 1;
        if joins {
            let (keep, gone) = (merged[r - 1], merged[r]);
            for c in merged.iter_mut() {
                if *c == gone {
                    *c = keep;
                }
            }
        }
    }
    Ok(PSegments {
        segments,
        p_segments: classes(&merged),
    })
}

fn classes(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
    for (k, &c) in labels.iter().enumerate() {
        match out.iter_mut().find(|(lab, _)| *lab == c) {
            Some((_, rows)) => rows.push(k + 1),
            None => out.push((c, vec![k + 1])),
        }
    }
    out.into_iter().map(|(_, rows)| rows).collect()
}

/// Partitions of `d` with at most `max_parts` parts, in lexicographically
/// decreasing order.
pub fn enumerate_partitions(d: u64, max_parts: usize) -> Partitions {
    let first = if d == 0 {
        Some(Vec::new())
    } else if max_parts == 0 {
        None
    } else {
        Some(vec![d])
    };
    Partitions {
        next: first,
        max_parts,
    }
}

/// Iterator returned by [`enumerate_partitions`].
#[derive(Debug, Clone)]
pub struct Partitions {
    next: Option<Vec<u64>>,
    max_parts: usize,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.next.take()?;
        self.next = successor(&cur, self.max_parts);
        Some(Partition { parts: cur })
    }
}

/// The lexicographically largest partition below `cur` with the same degree
/// and at most `k` parts. Keeps the longest possible prefix, decrements one
/// part, and refills the tail greedily.
fn successor(cur: &[u64], k: usize) -> Option<Vec<u64>> {
    let mut tail: u64 = 0;
    for i in (0..cur.len()).rev() {
        let x = cur[i];
        tail += x;
        if x > 1 {
            let cap = x - 1;
            let rest = tail - cap;
            if (rest.div_ceil(cap) as usize) < k - i {
                let mut out = cur[..i].to_vec();
                out.push(cap);
                let mut rest = rest;
                while rest > 0 {
                    let take = rest.min(cap);
                    out.push(take);
                    rest -= take;
                }
                return Some(out);
            }
        }
    }
    None
}
