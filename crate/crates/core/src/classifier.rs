//! Closed-form classification.
//!
//! `H⁰` is one exactly for James partitions. For `Ext¹` a James partition
//! contributes one dimension per p-segment (one fewer when the first row is
//! strictly longer than the second in p-adic length). A non-James partition
//! has `Ext¹` of dimension at most one, and whether it is nonzero is decided
//! by the first non-James pair of rows together with the three (or, in odd
//! characteristic, four) rows starting there.
//!
//! Every condition below is a predicate on base-p digits of the parts. Case
//! lists are kept in the order and shape of their statements so that each
//! clause can be audited in isolation; the oracle in [`crate::coherence`] is
//! the referee.

use std::fmt;

use crate::coherence::{canonical_multisequence, MultiSequence, SlotLayout};
use crate::error::{domain, Result};
use crate::padic::Prime;
use crate::partitions::{
    is_james_partition, james_pair, non_james_pairs, p_segments, two_part_class, Partition,
    TwoPartClass,
};

/// `1` iff `λ` is James.
pub fn h0_dim(lambda: &Partition, p: Prime) -> u8 {
    u8::from(is_james_partition(lambda, p))
}

/// `dim Ext¹` of a James partition: the number of p-segments, less one when
/// `len_p(λ_1) > len_p(λ_2)`. Zero for fewer than two rows.
pub fn james_ext_dim(lambda: &Partition, p: Prime) -> Result<usize> {
    let segs = p_segments(lambda, p)?;
    if lambda.n() <= 1 {
        return Ok(0);
    }
    let count = segs.p_segments.len();
    Ok(if lambda.l(1, p) > lambda.l(2, p) {
        count - 1
    } else {
        count
    })
}

/// Which of the three sequences of a three-row partition an entry lives in:
/// `X` is rows (1,2), `Y` is rows (2,3), `Z` is rows (1,3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripleRow {
    X,
    Y,
    Z,
}

/// Nonzero entries `(sequence, index, value)` of a non-standard coherent triple.
pub type TripleWitness = Vec<(TripleRow, u64, u64)>;

/// Whether `(a, b, c)` admits a coherent triple outside the span of the
/// standard one, which case of the table decided it, and a spanning witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleVerdict {
    pub nonsplit: bool,
    pub case_tag: &'static str,
    pub witness: Option<TripleWitness>,
}

impl TripleVerdict {
    fn split(case_tag: &'static str) -> Self {
        TripleVerdict {
            nonsplit: false,
            case_tag,
            witness: None,
        }
    }

    fn nonsplit(case_tag: &'static str, witness: TripleWitness) -> Self {
        TripleVerdict {
            nonsplit: true,
            case_tag,
            witness: Some(witness),
        }
    }

    /// The witness placed on rows `r, r+1, r+2` of `λ`, zero elsewhere.
    pub fn embed(&self, lambda: &Partition, r: usize, p: Prime) -> Option<MultiSequence> {
        let witness = self.witness.as_ref()?;
        let layout = SlotLayout::new(lambda);
        let mut ms = MultiSequence::zeros(layout.len());
        for &(row, i, value) in witness {
            let (s, t) = match row {
                TripleRow::X => (r, r + 1),
                TripleRow::Y => (r + 1, r + 2),
                TripleRow::Z => (r, r + 2),
            };
            ms.values[layout.index(s, t, i)] = p.reduce(value);
        }
        Some(ms)
    }
}

/// Classify the three-row partition `(a, b, c)`.
pub fn triple_verdict(a: u64, b: u64, c: u64, p: Prime) -> Result<TripleVerdict> {
    if !(a >= b && b >= c && c >= 1) {
        return domain(format!(
            "({a},{b},{c}) is not a partition with three nonzero rows"
        ));
    }
    Ok(match two_part_class(a, b, p) {
        TwoPartClass::James => james_first_pair(a, b, c, p),
        TwoPartClass::Split => split_first_pair(a, b, c, p),
        TwoPartClass::Pointed { beta, .. } => pointed_first_pair(a, b, c, beta, p),
    })
}

fn james_first_pair(a: u64, b: u64, c: u64, p: Prime) -> TripleVerdict {
    let v = p.val(a + 1);
    let gamma = p.len(c);
    if !james_pair(b, c, p) {
        // Only a pointed `(b, c)` can help, through its point sequence.
        let pointed = matches!(two_part_class(b, c, p), TwoPartClass::Pointed { .. });
        return if pointed && v > p.len(b + p.pow(gamma)) {
            TripleVerdict::nonsplit("james-then-pointed", vec![(TripleRow::Y, p.pow(gamma), 1)])
        } else {
            TripleVerdict::split("james-then-split")
        };
    }

    // A James triple is never split; the canonical triple is a witness.
    let beta = p.len(b);
    let tag = if beta == gamma {
        "james-equal-lengths"
    } else if !james_pair(a, b + p.pow(gamma), p) {
        "james-constrained"
    } else {
        "james-two-dimensional"
    };
    let lambda = Partition::new(&[a, b, c]).expect("checked ordering");
    let can = canonical_multisequence(&lambda, p).expect("James triple");
    let rows = [TripleRow::X, TripleRow::Z, TripleRow::Y];
    let witness = SlotLayout::new(&lambda)
        .slots()
        .into_iter()
        .zip(can.values)
        .filter(|&(_, value)| value != 0)
        .map(|(slot, value)| {
            let row = match (slot.r, slot.s) {
                (1, 2) => rows[0],
                (1, 3) => rows[1],
                _ => rows[2],
            };
            (row, slot.i, value)
        })
        .collect();
    TripleVerdict::nonsplit(tag, witness)
}

/// `(a, b)` split. Nothing survives unless `(a + p^v, b)` is James; then one
/// of five digit patterns must hold.
fn split_first_pair(a: u64, b: u64, c: u64, p: Prime) -> TripleVerdict {
    use TripleRow::*;
    let v = p.val(a + 1);
    let w = p.val(b + 1);
    let gamma = p.len(c);
    let pv = p.pow(v);
    let pg = p.pow(gamma);

    if !james_pair(a + pv, b, p) {
        return TripleVerdict::split("split-pair");
    }
    let top_shift_short = p.len(b + pv) < p.val(a + pv + 1);

    if gamma >= v && v == w && p.val(b - pv + 1) > gamma {
        return TripleVerdict::nonsplit("split-pair:1", vec![(X, pv, 1)]);
    }
    let b_v = p.digit(b, v);
    if gamma == v && v == w && b_v != 0 && p.digit(c, v) == 1 {
        return TripleVerdict::nonsplit("split-pair:2", vec![(X, pv, 1), (Z, pv, p.neg(b_v))]);
    }
    if gamma > v
        && v == w
        && p.val(b - pv + 1) == gamma
        && c - pg < pv
        && p.len(b + pg) < p.val(a + pv + 1)
    {
        let b_g = p.digit(b, gamma);
        return TripleVerdict::nonsplit("split-pair:3", vec![(X, pv, 1), (Y, pg, p.neg(b_g))]);
    }
    if gamma == v && v < w && p.digit(c, gamma) == 1 && top_shift_short {
        return TripleVerdict::nonsplit("split-pair:4", vec![(Y, pv, 1), (Z, pv, p.neg(1))]);
    }
    if gamma == v && v > w && c - pv < p.pow(w) && top_shift_short {
        return TripleVerdict::nonsplit("split-pair:5", vec![(Y, pv, 1), (Z, pv, p.neg(1))]);
    }
    TripleVerdict::split("split-pair")
}

/// `(a, b)` pointed with `b = b̂ + p^β`.
fn pointed_first_pair(a: u64, b: u64, c: u64, beta: u32, p: Prime) -> TripleVerdict {
    use TripleRow::*;
    let v = p.val(a + 1);
    let w = p.val(b + 1);
    let gamma = p.len(c);
    let pv = p.pow(v);
    let pb = p.pow(beta);

    if beta > gamma && gamma >= v && v == w && p.val(a + pv + 1) >= beta {
        return TripleVerdict::nonsplit("pointed-pair:1", vec![(X, pv, 1)]);
    }
    if beta == gamma && gamma > v && v == w && p.len(b + pb) < p.val(a + pv + 1) {
        return TripleVerdict::nonsplit("pointed-pair:2", vec![(X, pv, 1), (Y, pb, p.neg(1))]);
    }
    if beta == gamma && gamma > v && v == w && p.len(b + pb) < p.val(a + pv + pb + 1) {
        return TripleVerdict::nonsplit(
            "pointed-pair:3",
            vec![(X, pv, 1), (Y, pb, p.neg(1)), (Z, pb, 1)],
        );
    }
    if v >= w && w > gamma {
        return TripleVerdict::nonsplit("pointed-pair:4", vec![(X, pb, 1)]);
    }
    if gamma == v && v > w && p.val(a + pv + 1) > beta && c - pv < p.pow(w) {
        return TripleVerdict::nonsplit("pointed-pair:5", vec![(Y, pv, 1), (Z, pv, p.neg(1))]);
    }
    TripleVerdict::split("pointed-pair")
}

/// Which branch of the classification decided `Ext¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// Fewer than two rows.
    Trivial,
    /// James partition, counted by p-segments.
    JamesSegments,
    /// Two rows, not James.
    TwoPart,
    /// At least three rows; only the last pair is non-James.
    LastPair,
    /// The first two non-James pairs are adjacent and are the only ones.
    AdjacentPairs,
    /// A single non-James pair, which is split.
    SingleSplitPair,
    /// A single non-James pair, which is pointed.
    SinglePointedPair,
    /// The four-row pattern available in odd characteristic.
    Quadruple,
    /// No non-split pattern applies.
    Split,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Trivial => "trivial",
            CaseTag::JamesSegments => "james-segments",
            CaseTag::TwoPart => "two-part",
            CaseTag::LastPair => "last-pair",
            CaseTag::AdjacentPairs => "adjacent-pairs",
            CaseTag::SingleSplitPair => "single-split-pair",
            CaseTag::SinglePointedPair => "single-pointed-pair",
            CaseTag::Quadruple => "quadruple",
            CaseTag::Split => "split",
        })
    }
}

/// Full closed-form report for `(p, λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub p: Prime,
    pub lambda: Partition,
    pub h0: u8,
    /// `dim Ext¹_B(SᵈE, K_λ)`, exact at every prime.
    pub ext1_dim: usize,
    /// Whether `ext1_dim` equals `dim H¹(Σ_d, Sp(λ))`; for `p = 2` it is a lower bound.
    pub h1_exact: bool,
    pub case_tag: CaseTag,
    /// A coherent multi-sequence outside the span of the standard one, when
    /// `ext1_dim > 0`.
    pub witness: Option<MultiSequence>,
}

pub fn ext1_dim(lambda: &Partition, p: Prime) -> Classification {
    let n = lambda.n();
    let report = |ext1_dim: usize, case_tag, witness| Classification {
        p,
        lambda: lambda.clone(),
        h0: h0_dim(lambda, p),
        ext1_dim,
        h1_exact: p.get() != 2,
        case_tag,
        witness,
    };

    if n <= 1 {
        return report(0, CaseTag::Trivial, None);
    }
    let nj = non_james_pairs(lambda, p);
    let Some(&r) = nj.first() else {
        let dim = james_ext_dim(lambda, p).expect("James");
        let witness = canonical_multisequence(lambda, p).expect("James with two rows");
        return report(dim, CaseTag::JamesSegments, Some(witness));
    };

    let lam = |k: usize| lambda.part(k);
    let pair_class = two_part_class(lam(r), lam(r + 1), p);
    let pointed = matches!(pair_class, TwoPartClass::Pointed { .. });
    let point_sequence = || {
        let layout = SlotLayout::new(lambda);
        let mut ms = MultiSequence::zeros(layout.len());
        ms.values[layout.index(r, r + 1, p.pow(lambda.l(r + 1, p)))] = 1;
        ms
    };
    // No earlier row has v_q equal to the p-length of λ_r + p^{l_{r+1}}.
    let no_blocking_row = || {
        let target = p.len(lam(r) + p.pow(lambda.l(r + 1, p)));
        (1..r).all(|q| lambda.v(q, p) != target)
    };

    if r == n - 1 {
        let nonsplit = if n == 2 {
            pointed
        } else {
            pointed && lambda.v(n - 2, p) > p.len(lam(n - 1) + p.pow(lambda.l(n, p)))
        };
        debug_assert_eq!(
            nonsplit,
            pointed && no_blocking_row(),
            "last-pair criteria disagree on {lambda} at p = {p}"
        );
        let tag = if n == 2 {
            CaseTag::TwoPart
        } else {
            CaseTag::LastPair
        };
        return if nonsplit {
            report(1, tag, Some(checked(point_sequence(), lambda, p)))
        } else {
            report(0, tag, None)
        };
    }

    let triple = triple_verdict(lam(r), lam(r + 1), lam(r + 2), p).expect("ordered rows");
    let next_james = james_pair(lam(r + 1), lam(r + 2), p);
    let embedded = || {
        checked(
            triple.embed(lambda, r, p).expect("nonsplit triple"),
            lambda,
            p,
        )
    };

    // Two adjacent non-James pairs and nothing else.
    if !next_james && nj == [r, r + 1] && triple.nonsplit {
        return report(1, CaseTag::AdjacentPairs, Some(embedded()));
    }
    // A lone split pair.
    let tail_shorter = p.get() != 2 || r + 3 > n || lambda.l(r + 3, p) < lambda.l(r + 2, p);
    if nj == [r] && pair_class == TwoPartClass::Split && triple.nonsplit && tail_shorter {
        return report(1, CaseTag::SingleSplitPair, Some(embedded()));
    }
    // A lone pointed pair.
    if nj == [r] && pointed && no_blocking_row() {
        return report(
            1,
            CaseTag::SinglePointedPair,
            Some(checked(point_sequence(), lambda, p)),
        );
    }
    // Four rows in a rigid digit pattern, odd characteristic only.
    if p.get() != 2 && r + 3 <= n && quadruple_pattern(lambda, r, p) {
        let v = lambda.v(r, p);
        let pv = p.pow(v);
        let layout = SlotLayout::new(lambda);
        let mut ms = MultiSequence::zeros(layout.len());
        let minus_one = p.neg(1);
        ms.values[layout.index(r, r + 2, pv)] = 1;
        ms.values[layout.index(r + 1, r + 3, pv)] = 1;
        ms.values[layout.index(r + 1, r + 2, pv)] = minus_one;
        ms.values[layout.index(r, r + 3, pv)] = minus_one;
        return report(1, CaseTag::Quadruple, Some(checked(ms, lambda, p)));
    }
    report(0, CaseTag::Split, None)
}

/// The four-row conditions at rows `r..r+3`, with `(λ_{r+3}, …, λ_n)` James.
fn quadruple_pattern(lambda: &Partition, r: usize, p: Prime) -> bool {
    let tail = Partition::new(&lambda.parts()[r + 2..]).expect("suffix of a partition");
    if !is_james_partition(&tail, p) {
        return false;
    }
    let v = lambda.v(r, p);
    let pv = p.pow(v);
    let m = lambda.l(r + 1, p) + 1;
    // x = (p^m - 1) - p^v + p^m·x' for some x' >= 0.
    let shifted_form = |x: u64, m: u32| {
        let pm = p.pow(m);
        let x = x as u128 + pv as u128 + 1;
        x >= pm as u128 && x.is_multiple_of(pm as u128)
    };
    shifted_form(lambda.part(r), m)
        && shifted_form(lambda.part(r + 1), v + 1)
        && p.digit(lambda.part(r + 1), v) != 0
        && lambda.part(r + 2) as u128 == 2 * pv as u128 - 1
        && lambda.part(r + 3) >= pv
        && lambda.part(r + 3) - pv < pv
}

/// The witness itself, after confirming it against the relations in debug
/// builds.
fn checked(ms: MultiSequence, lambda: &Partition, p: Prime) -> MultiSequence {
    debug_assert!(
        crate::coherence::is_coherent(&ms, lambda, p).unwrap_or(false),
        "witness for {lambda} at p = {p} is not coherent"
    );
    ms
}

/// A coherent multi-sequence outside the span of the standard one, if any.
/// For James partitions this is the canonical multi-sequence.
pub fn witness_multisequence(lambda: &Partition, p: Prime) -> Option<MultiSequence> {
    ext1_dim(lambda, p).witness
}

/// `dim Ext¹_{GL₂}(∇(r,s), ∇(t,u))` for dominant weights of equal degree.
pub fn gl2_ext_dim(r: u64, s: u64, t: u64, u: u64, p: Prime) -> Result<u8> {
    if r + s != t + u {
        return domain(format!(
            "weights ({r},{s}) and ({t},{u}) have different degrees"
        ));
    }
    if r < s || t < u {
        return domain("weights must be dominant");
    }
    if u <= s {
        return Ok(0);
    }
    Ok(u8::from(!matches!(
        two_part_class(t - s, u - s, p),
        TwoPartClass::Split
    )))
}

/// Why [`sl2_ext_dim`] returned what it did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sl2Reason {
    /// `r - s` is not positive.
    NotAbove,
    /// `r - s` is odd.
    Parity,
    /// `m < p^v`.
    BelowValuation,
    /// `m - p^l < p^v < p^l`.
    PointedShape,
    /// Neither digit condition holds.
    DigitsFail,
}

impl fmt::Display for Sl2Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sl2Reason::NotAbove => "r - s is not positive",
            Sl2Reason::Parity => "parity",
            Sl2Reason::BelowValuation => "m < p^v",
            Sl2Reason::PointedShape => "m - p^l < p^v < p^l",
            Sl2Reason::DigitsFail => "neither m < p^v nor m - p^l < p^v < p^l",
        })
    }
}

/// `dim Ext¹_{SL₂}(∇(r), ∇(s))` together with the condition that decided it.
/// With `r - s = 2m`, `v = val_p(s + m + 1)` and `l = len_p(m)`.
pub fn sl2_ext_verdict(r: u64, s: u64, p: Prime) -> (u8, Sl2Reason) {
    if r <= s {
        return (0, Sl2Reason::NotAbove);
    }
    if (r - s) % 2 == 1 {
        return (0, Sl2Reason::Parity);
    }
    let m = (r - s) / 2;
    let pv = p.pow(p.val(s + m + 1));
    let pl = p.pow(p.len(m));
    if m < pv {
        (1, Sl2Reason::BelowValuation)
    } else if m - pl < pv && pv < pl {
        (1, Sl2Reason::PointedShape)
    } else {
        (0, Sl2Reason::DigitsFail)
    }
}

pub fn sl2_ext_dim(r: u64, s: u64, p: Prime) -> u8 {
    sl2_ext_verdict(r, s, p).0
}
