//! The brute-force oracle.
//!
//! An extension multi-sequence assigns a residue `y(r,s)_i` to every pair of
//! rows `r < s` and every `1 ≤ i ≤ λ_s`. The coherent ones form the F_p
//! space `E(λ)`, cut out by the linear relations generated here. Row
//! reduction then gives `dim E(λ)`, and `dim Ext¹` is that number, less one
//! when `λ` is not James because the standard multi-sequence spans the part
//! coming from the trivial extension.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{domain, Result};
use crate::padic::{binom_mod_p, Prime};
use crate::partitions::{is_james_partition, james_index, Partition};

/// Position `y(r,s)_i`, 1-based throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotIndex {
    pub r: usize,
    pub s: usize,
    pub i: u64,
}

impl fmt::Display for SlotIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y({},{})_{}", self.r, self.s, self.i)
    }
}

/// Maps slots of a fixed partition to positions in a dense vector.
///
/// Slots are ordered by `(r, s)` lexicographically, then by `i`.
#[derive(Debug, Clone)]
pub struct SlotLayout {
    parts: Vec<u64>,
    /// `offset[r-1][s-1]` is the position of `y(r,s)_1`, for `r < s`.
    offset: Vec<Vec<usize>>,
    len: usize,
}

impl SlotLayout {
    pub fn new(lambda: &Partition) -> Self {
        let n = lambda.n();
        let mut offset = vec![vec![usize::MAX; n]; n];
        let mut len = 0;
        for r in 1..=n {
            for s in r + 1..=n {
                offset[r - 1][s - 1] = len;
                len += lambda.part(s) as usize;
            }
        }
        SlotLayout {
            parts: lambda.parts().to_vec(),
            offset,
            len,
        }
    }

    /// Total number of slots, `Σ_{r<s} λ_s`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Position of `y(r,s)_i`. Panics when the slot does not exist.
    pub fn index(&self, r: usize, s: usize, i: u64) -> usize {
        assert!(r < s && s <= self.parts.len(), "no pair ({r},{s})");
        assert!(i >= 1 && i <= self.parts[s - 1], "no slot y({r},{s})_{i}");
        self.offset[r - 1][s - 1] + (i - 1) as usize
    }

    pub fn slots(&self) -> Vec<SlotIndex> {
        let n = self.parts.len();
        let mut out = Vec::with_capacity(self.len);
        for r in 1..=n {
            for s in r + 1..=n {
                out.extend((1..=self.parts[s - 1]).map(|i| SlotIndex { r, s, i }));
            }
        }
        out
    }
}

pub fn canonical_slot_order(lambda: &Partition) -> Vec<SlotIndex> {
    SlotLayout::new(lambda).slots()
}

/// A dense vector of residues over the slots of a partition, in canonical
/// slot order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiSequence {
    pub values: Vec<u64>,
}

impl MultiSequence {
    pub fn zeros(len: usize) -> Self {
        MultiSequence {
            values: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    /// Nonzero entries paired with their slots.
    pub fn support(&self, lambda: &Partition) -> Vec<(SlotIndex, u64)> {
        canonical_slot_order(lambda)
            .into_iter()
            .zip(&self.values)
            .filter(|(_, &x)| x != 0)
            .map(|(slot, &x)| (slot, x))
            .collect()
    }
}

/// `y(r,s)_i = C(λ_r + i, i) mod p`.
pub fn standard_multisequence(lambda: &Partition, p: Prime) -> MultiSequence {
    let values = canonical_slot_order(lambda)
        .into_iter()
        .map(|SlotIndex { r, i, .. }| binom_mod_p(lambda.part(r) + i, i, p))
        .collect();
    MultiSequence { values }
}

/// The multi-sequence `C(λ_r + i, i) / p^{JI(λ)} mod p` of a James partition,
/// evaluated by its digit formula: the slot `y(r,s)_{t·p^{l_s}}` holds
/// `((λ_r)_{v_r} + 1) / t` when `v_r - l_s` equals the James index, and every
/// other slot is zero.
pub fn canonical_multisequence(lambda: &Partition, p: Prime) -> Result<MultiSequence> {
    if !is_james_partition(lambda, p) {
        return domain(format!("{lambda} is not a James partition for p = {p}"));
    }
    let ji = james_index(lambda, p)?;
    let layout = SlotLayout::new(lambda);
    let mut ms = MultiSequence::zeros(layout.len());
    for r in 1..=lambda.n() {
        let v = lambda.v(r, p);
        let head = p.reduce(p.digit(lambda.part(r), v) + 1);
        for s in r + 1..=lambda.n() {
            let l = lambda.l(s, p);
            if v < l || v - l != ji {
                continue;
            }
            let step = p.pow(l);
            for t in 1..p.get() {
                let i = t * step;
                if i > lambda.part(s) {
                    break;
                }
                ms.values[layout.index(r, s, i)] = p.mul(head, p.inv(t));
            }
        }
    }
    Ok(ms)
}

/// Relation family a row was instantiated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    E,
    T1,
    T2,
    T3a,
    T3b,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::E => "E",
            Family::T1 => "T1",
            Family::T2 => "T2",
            Family::T3a => "T3a",
            Family::T3b => "T3b",
            Family::C => "C",
        };
        f.write_str(name)
    }
}

/// Which relation a row comes from: the family, the rows it involves and the
/// instantiating indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowTag {
    pub family: Family,
    pub rows: Vec<usize>,
    pub indices: Vec<u64>,
}

impl fmt::Display for RowTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[String]| xs.join(",");
        let rows: Vec<String> = self.rows.iter().map(|x| x.to_string()).collect();
        let idx: Vec<String> = self.indices.iter().map(|x| x.to_string()).collect();
        write!(f, "{}[{};{}]", self.family, join(&rows), join(&idx))
    }
}

/// One instantiated relation: `Σ coeff · y[slot] = 0` with nonzero
/// coefficients in ascending slot order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub tag: RowTag,
    pub terms: Vec<(usize, u64)>,
}

/// The linear system over F_p whose solution space is `E(λ)`.
///
/// Rows are kept sparse as generated; only rows with a nonzero coefficient
/// survive.
#[derive(Debug, Clone)]
pub struct RelationSystem {
    pub p: Prime,
    pub slots: Vec<SlotIndex>,
    pub rows: Vec<Relation>,
}

impl RelationSystem {
    /// Number of unknowns.
    pub fn width(&self) -> usize {
        self.slots.len()
    }

    /// One line per row: `tag: c*y(r,s)_i + … = 0`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let terms: Vec<String> = row
                .terms
                .iter()
                .map(|&(k, c)| format!("{c}*{}", self.slots[k]))
                .collect();
            out.push_str(&format!("{}: {} = 0\n", row.tag, terms.join(" + ")));
        }
        out
    }

    /// Whether `ms` satisfies every row. Fails on a length mismatch.
    pub fn is_satisfied_by(&self, ms: &MultiSequence) -> Result<bool> {
        if ms.len() != self.width() {
            return domain(format!(
                "multi-sequence has {} entries but the partition has {} slots",
                ms.len(),
                self.width()
            ));
        }
        let p = self.p;
        Ok(self.rows.iter().all(|row| {
            row.terms
                .iter()
                .fold(0, |acc, &(k, c)| p.add(acc, p.mul(c, ms.values[k])))
                == 0
        }))
    }
}

/// Accumulates one row at a time, merging repeated slots and reducing mod p.
struct RowBuilder<'a> {
    p: Prime,
    layout: &'a SlotLayout,
    rows: Vec<Relation>,
    acc: BTreeMap<usize, u64>,
}

impl RowBuilder<'_> {
    fn term(&mut self, coeff: u64, r: usize, s: usize, i: u64) {
        let coeff = self.p.reduce(coeff);
        if coeff != 0 {
            let e = self.acc.entry(self.layout.index(r, s, i)).or_insert(0);
            *e = self.p.add(*e, coeff);
        }
    }

    fn minus(&mut self, coeff: u64, r: usize, s: usize, i: u64) {
        let neg = self.p.neg(coeff);
        self.term(neg, r, s, i);
    }

    fn finish(&mut self, family: Family, rows: &[usize], indices: &[u64]) {
        let terms: Vec<(usize, u64)> = std::mem::take(&mut self.acc)
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .collect();
        if !terms.is_empty() {
            let tag = RowTag {
                family,
                rows: rows.to_vec(),
                indices: indices.to_vec(),
            };
            self.rows.push(Relation { tag, terms });
        }
    }
}

pub fn build_relation_system(lambda: &Partition, p: Prime) -> RelationSystem {
    let layout = SlotLayout::new(lambda);
    let n = lambda.n();
    let lam = |r: usize| lambda.part(r);
    let bin = |a: u64, b: u64| binom_mod_p(a, b, p);
    let mut rb = RowBuilder {
        p,
        layout: &layout,
        rows: Vec::new(),
        acc: BTreeMap::new(),
    };

    // (E) on each pair.
    for r in 1..=n {
        for s in r + 1..=n {
            let (a, b) = (lam(r), lam(s));
            for i in 1..b {
                for j in 1..=b - i {
                    rb.term(bin(a + i + j, j), r, s, i);
                    rb.minus(bin(i + j, i), r, s, i + j);
                    rb.finish(Family::E, &[r, s], &[i, j]);
                }
            }
        }
    }

    // (T1), (T2), (T3a), (T3b) on each triple, with x = y(r,s), y = y(s,t),
    // z = y(r,t).
    for r in 1..=n {
        for s in r + 1..=n {
            for t in s + 1..=n {
                let (a, b, c) = (lam(r), lam(s), lam(t));
                let rows = [r, s, t];
                for i in 1..=b {
                    for k in 1..=c {
                        rb.term(bin(a + i + k, k), r, s, i);
                        rb.minus(bin(a + i + k, i), r, t, k);
                        rb.finish(Family::T1, &rows, &[i, k]);
                    }
                }
                for j in 1..c {
                    for k in 1..=c - j {
                        rb.term(bin(a + k, k), s, t, j);
                        rb.minus(bin(b + j, j), r, t, k);
                        rb.finish(Family::T2, &rows, &[j, k]);
                    }
                }
                for j in 1..=c {
                    for i in 1..=j {
                        rb.term(bin(a + i, i), s, t, j);
                        for h in 0..i {
                            let m = i - h;
                            if m <= b {
                                rb.minus(p.mul(bin(b + j - i, j - h), bin(a + i, h)), r, s, m);
                            }
                        }
                        rb.minus(bin(b + j - i, j - i), r, t, i);
                        rb.finish(Family::T3a, &rows, &[i, j]);
                    }
                    for i in j + 1..=b + j {
                        rb.term(bin(a + i, i), s, t, j);
                        for h in 0..=j {
                            let m = i - h;
                            if (1..=b).contains(&m) {
                                rb.minus(p.mul(bin(b + j - i, j - h), bin(a + i, h)), r, s, m);
                            }
                        }
                        rb.finish(Family::T3b, &rows, &[i, j]);
                    }
                }
            }
        }
    }

    // (C) on each ordered pair of disjoint pairs.
    for q in 1..=n {
        for r in q + 1..=n {
            for s in 1..=n {
                for t in s + 1..=n {
                    if [s, t].iter().any(|x| *x == q || *x == r) {
                        continue;
                    }
                    for i in 1..=lam(t) {
                        for j in 1..=lam(r) {
                            rb.term(bin(lam(s) + i, i), q, r, j);
                            rb.minus(bin(lam(q) + j, j), s, t, i);
                            rb.finish(Family::C, &[q, r, s, t], &[i, j]);
                        }
                    }
                }
            }
        }
    }

    RelationSystem {
        p,
        slots: layout.slots(),
        rows: rb.rows,
    }
}

/// Reduced row echelon form over F_p, built one row at a time.
///
/// Stored rows are sparse, scaled so the pivot is 1, and carry no entry in
/// any other pivot column. Since every relation system here has a small
/// solution space, those rows have very few entries. An incoming row is
/// reduced against the pivots it touches; if anything survives, its first
/// nonzero column becomes a new pivot and is cleared from the other rows.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: Prime,
    width: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<BTreeMap<usize, u64>>,
}

impl Echelon {
    pub fn new(p: Prime, width: usize) -> Self {
        Echelon {
            p,
            width,
            pivot_row: vec![None; width],
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Insert a dense row; returns whether the rank grew.
    pub fn insert_dense(&mut self, row: &[u64]) -> bool {
        assert_eq!(row.len(), self.width);
        let terms: Vec<(usize, u64)> = row
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x != 0)
            .map(|(c, &x)| (c, x))
            .collect();
        self.insert(&terms)
    }

    /// Insert a sparse row given as `(column, coefficient)` pairs; returns
    /// whether the rank grew.
    pub fn insert(&mut self, terms: &[(usize, u64)]) -> bool {
        let p = self.p;
        let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
        let add = |acc: &mut BTreeMap<usize, u64>, c: usize, x: u64| {
            let e = acc.entry(c).or_insert(0);
            *e = p.add(*e, x);
            if *e == 0 {
                acc.remove(&c);
            }
        };
        for &(c, x) in terms {
            assert!(c < self.width, "column {c} out of range");
            let x = p.reduce(x);
            if x == 0 {
                continue;
            }
            match self.pivot_row[c] {
                Some(k) => {
                    // Replace x·e_c by what the pivot row says e_c equals.
                    for (&c2, &y) in &self.rows[k] {
                        if c2 != c {
                            add(&mut acc, c2, p.neg(p.mul(x, y)));
                        }
                    }
                }
                None => add(&mut acc, c, x),
            }
        }
        let Some((&lead, &f)) = acc.iter().next() else {
            return false;
        };
        let inv = p.inv(f);
        for x in acc.values_mut() {
            *x = p.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let Some(g) = row.remove(&lead) else { continue };
            for (&c, &y) in &acc {
                if c != lead {
                    add(row, c, p.neg(p.mul(g, y)));
                }
            }
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(acc);
        true
    }

    /// Basis of the solution space, one vector per free column in ascending
    /// order, each with a 1 in its free column.
    pub fn kernel(&self) -> Vec<MultiSequence> {
        let p = self.p;
        (0..self.width)
            .filter(|&c| self.pivot_row[c].is_none())
            .map(|free| {
                let mut ms = MultiSequence::zeros(self.width);
                ms.values[free] = 1;
                for (c, k) in self.pivot_row.iter().enumerate() {
                    if let Some(&y) = k.and_then(|k| self.rows[k].get(&free)) {
                        ms.values[c] = p.neg(y);
                    }
                }
                ms
            })
            .collect()
    }
}

fn echelon(system: &RelationSystem) -> Echelon {
    let mut ech = Echelon::new(system.p, system.width());
    for row in &system.rows {
        if ech.rank() == system.width() {
            break;
        }
        ech.insert(&row.terms);
    }
    ech
}

pub fn rank(system: &RelationSystem) -> usize {
    echelon(system).rank()
}

/// Basis of the solution space in canonical form (reduced row echelon with
/// first-nonzero-column pivots), so equal systems give equal bases.
pub fn nullspace(system: &RelationSystem) -> Vec<MultiSequence> {
    echelon(system).kernel()
}

/// `dim E(λ)`.
pub fn dim_e(lambda: &Partition, p: Prime) -> usize {
    let system = build_relation_system(lambda, p);
    system.width() - rank(&system)
}

/// `dim Ext¹` by the oracle: `dim E(λ)` for James `λ`, one less otherwise.
pub fn ext1_dim_oracle(lambda: &Partition, p: Prime) -> usize {
    let dim = dim_e(lambda, p);
    if is_james_partition(lambda, p) {
        dim
    } else {
        dim.checked_sub(1)
            .expect("a non-James partition has a nonzero coherent standard multi-sequence")
    }
}

pub fn is_coherent(ms: &MultiSequence, lambda: &Partition, p: Prime) -> Result<bool> {
    build_relation_system(lambda, p).is_satisfied_by(ms)
}
