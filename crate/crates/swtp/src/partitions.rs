//! Integer partitions (Young frames), hook lengths, irreducible dimensions,
//! letter-frequency types, and normalized profiles.
//!
//! Everything here is exact integer arithmetic (`u128`) up to
//! [`MAX_EXACT_BOXES`] boxes; beyond that the dimension/counting operations
//! return a range error instead of falling back to floating point.

use thiserror::Error;

/// Largest box count for which factorials and hook products are computed
/// exactly in 128-bit integers.
pub const MAX_EXACT_BOXES: u32 = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive and non-increasing, got {0:?}")]
    InvalidParts(Vec<u32>),
    #[error("frame has {rows} rows, exceeding the bound {bound}")]
    TooManyRows { rows: usize, bound: usize },
    #[error("exact integer arithmetic supports at most {max} boxes, got {n}")]
    BoxCountTooLarge { n: u32, max: u32 },
    #[error("type vector must have at least one non-zero count")]
    EmptyType,
    #[error("profile lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

/// A partition of `n` boxes: positive parts in non-increasing order, stored
/// without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungFrame {
    parts: Vec<u32>,
}

impl YoungFrame {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.is_empty()
            || parts.iter().any(|&p| p == 0)
            || parts.windows(2).any(|w| w[0] < w[1])
        {
            return Err(PartitionError::InvalidParts(parts));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Total number of boxes `n`.
    pub fn boxes(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Hook length of every cell, row-major. `h(i,j)` counts the cells to the
    /// right in row `i`, below in column `j`, plus the cell itself.
    pub fn hook_lengths(&self) -> Vec<Vec<u32>> {
        let rows = self.rows();
        (0..rows)
            .map(|i| {
                (0..self.parts[i] as usize)
                    .map(|j| {
                        let arm = self.parts[i] as usize - j - 1;
                        let leg = (i + 1..rows).take_while(|&k| self.parts[k] as usize > j).count();
                        (arm + leg + 1) as u32
                    })
                    .collect()
            })
            .collect()
    }

    /// Dimension of the irreducible symmetric-group representation indexed by
    /// this frame: `n! / prod of hooks`, exactly.
    pub fn dim_irrep(&self) -> Result<u128, PartitionError> {
        let n = self.boxes();
        if n > MAX_EXACT_BOXES {
            return Err(PartitionError::BoxCountTooLarge { n, max: MAX_EXACT_BOXES });
        }
        let hooks: u128 = self.hook_lengths().iter().flatten().map(|&h| h as u128).product();
        // The hook product always divides n!.
        Ok(factorial(n) / hooks)
    }

    /// Number of copies of this frame's irreducible inside the slot-permutation
    /// action on `n` tensor factors of local dimension `d` (content/hook
    /// product formula). Zero when the frame has more than `d` rows.
    pub fn schur_multiplicity(&self, d: u32) -> Result<u128, PartitionError> {
        if self.boxes() > MAX_EXACT_BOXES {
            return Err(PartitionError::BoxCountTooLarge { n: self.boxes(), max: MAX_EXACT_BOXES });
        }
        let mut num: i128 = 1;
        let mut den: i128 = 1;
        for (i, row) in self.hook_lengths().iter().enumerate() {
            for (j, &h) in row.iter().enumerate() {
                let content = d as i128 + j as i128 - i as i128;
                if content == 0 {
                    return Ok(0);
                }
                num *= content;
                den *= h as i128;
                let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
                num /= g;
                den /= g;
            }
        }
        debug_assert_eq!(den, 1);
        Ok((num / den) as u128)
    }

    /// Profile `(parts[i] / n)` zero-padded to length `d`.
    pub fn normalized_profile(&self, d: usize) -> Result<NormalizedProfile, PartitionError> {
        if self.rows() > d {
            return Err(PartitionError::TooManyRows { rows: self.rows(), bound: d });
        }
        let n = self.boxes() as f64;
        let mut probs = vec![0.0; d];
        for (i, &p) in self.parts.iter().enumerate() {
            probs[i] = p as f64 / n;
        }
        Ok(NormalizedProfile { probs })
    }
}

impl std::fmt::Display for YoungFrame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Letter frequencies of a word over the alphabet `[d]`; counts sum to the
/// word length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeVector {
    counts: Vec<u32>,
}

impl TypeVector {
    pub fn new(counts: Vec<u32>) -> Result<Self, PartitionError> {
        if counts.iter().all(|&c| c == 0) {
            return Err(PartitionError::EmptyType);
        }
        Ok(Self { counts })
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn alphabet_size(&self) -> usize {
        self.counts.len()
    }

    pub fn word_length(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Sort counts non-increasingly and drop zeros, yielding the frame `N^↓`.
    pub fn downsort(&self) -> YoungFrame {
        let mut parts: Vec<u32> = self.counts.iter().copied().filter(|&c| c > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        YoungFrame::new(parts).expect("non-empty type downsorts to a valid frame")
    }

    /// Number of words with these letter frequencies: `n! / prod counts[i]!`.
    pub fn typeclass_size(&self) -> Result<u128, PartitionError> {
        let n = self.word_length();
        if n > MAX_EXACT_BOXES {
            return Err(PartitionError::BoxCountTooLarge { n, max: MAX_EXACT_BOXES });
        }
        let den: u128 = self.counts.iter().map(|&c| factorial(c)).product();
        Ok(factorial(n) / den)
    }
}

/// A probability vector; for a frame source, entry `i` is `parts[i]/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedProfile {
    probs: Vec<f64>,
}

impl NormalizedProfile {
    pub fn new(probs: Vec<f64>) -> Result<Self, PartitionError> {
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|&p| p < 0.0) || (sum - 1.0).abs() > 1e-12 {
            return Err(PartitionError::InvalidParts(vec![]));
        }
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

impl AsRef<[f64]> for NormalizedProfile {
    fn as_ref(&self) -> &[f64] {
        &self.probs
    }
}

/// ℓ1 distance between two vectors of equal length.
pub fn profile_distance(p: &[f64], q: &[f64]) -> Result<f64, PartitionError> {
    if p.len() != q.len() {
        return Err(PartitionError::LengthMismatch(p.len(), q.len()));
    }
    Ok(p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum())
}

/// All partitions of `n` with at most `d` parts, in lexicographically
/// decreasing order of the part lists.
pub fn enumerate_frames(d: u32, n: u32) -> Vec<YoungFrame> {
    assert!(d >= 1 && n >= 1, "enumerate_frames requires d >= 1 and n >= 1");
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, n, d as usize, &mut current, &mut out);
    out
}

fn descend(remaining: u32, max_part: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<YoungFrame>) {
    if remaining == 0 {
        out.push(YoungFrame { parts: current.clone() });
        return;
    }
    if slots == 0 {
        return;
    }
    // Largest feasible part first gives lexicographically decreasing output.
    let hi = remaining.min(max_part);
    let lo = remaining.div_ceil(slots as u32);
    for part in (lo..=hi).rev() {
        current.push(part);
        descend(remaining - part, part, slots - 1, current, out);
        current.pop();
    }
}

/// All type vectors over alphabet `[d]` with counts summing to `n`, in
/// lexicographically decreasing order of the count lists.
pub fn enumerate_types(d: usize, n: u32) -> Vec<TypeVector> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(d);
    fn go(remaining: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<TypeVector>) {
        if slots == 1 {
            current.push(remaining);
            out.push(TypeVector { counts: current.clone() });
            current.pop();
            return;
        }
        for c in (0..=remaining).rev() {
            current.push(c);
            go(remaining - c, slots - 1, current, out);
            current.pop();
        }
    }
    assert!(d >= 1 && n >= 1);
    go(n, d, &mut current, &mut out);
    out
}

/// Number of types over `[d]` of length `n`: `binom(n + d - 1, d - 1)`.
pub fn count_types(d: u32, n: u32) -> u128 {
    assert!(d >= 1 && n >= 1);
    binomial((n + d - 1) as u128, (d - 1) as u128)
}

pub fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a
    }
}
