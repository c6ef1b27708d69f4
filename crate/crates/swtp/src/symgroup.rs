//! Symmetric-group elements, conjugacy classes, and irreducible characters.
//!
//! Characters are computed with the Murnaghan-Nakayama recursion over
//! border-strip removals, carried out on beta-sets (first-column hook
//! encodings) so every step is exact integer arithmetic.

use std::collections::HashMap;

use thiserror::Error;

use crate::partitions::{factorial, YoungFrame};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymGroupError {
    #[error("images {0:?} are not a bijection on [n]")]
    NotABijection(Vec<usize>),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("group iteration supports degrees 1..=10, got {0}")]
    DegreeOutOfRange(usize),
    #[error("frame partitions {0} boxes but cycle type partitions {1}")]
    SizeMismatch(u32, u32),
}

/// A permutation of `{0, .., n-1}` in one-line notation: `images[i] = σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, SymGroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(SymGroupError::NotABijection(images));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Composition acting right-to-left: `(a ∘ b)(i) = a(b(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self, SymGroupError> {
        if self.degree() != other.degree() {
            return Err(SymGroupError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Self { images: other.images.iter().map(|&i| self.images[i]).collect() })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur];
                len += 1;
            }
            lengths.push(len as u32);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(YoungFrame::new(lengths).expect("cycle lengths form a partition"))
    }

    /// Parity sign: `(-1)^(n - number of cycles)`.
    pub fn sign(&self) -> i64 {
        let cycles = self.cycle_type().0.rows();
        if (self.degree() - cycles) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Conjugacy class label: the partition of cycle lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleType(pub YoungFrame);

impl CycleType {
    pub fn frame(&self) -> &YoungFrame {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.boxes()
    }

    /// Size of the conjugacy class: `n! / z` with `z = prod k^{m_k} m_k!`.
    pub fn class_size(&self) -> u128 {
        let n = self.degree();
        let mut z: u128 = 1;
        let parts = self.0.parts();
        let mut i = 0;
        while i < parts.len() {
            let k = parts[i];
            let mut m = 0u32;
            while i < parts.len() && parts[i] == k {
                m += 1;
                i += 1;
            }
            z *= (k as u128).pow(m) * factorial(m);
        }
        factorial(n) / z
    }
}

/// Streams all `n!` permutations in lexicographic one-line order.
pub fn iterate_group(n: usize) -> Result<GroupIterator, SymGroupError> {
    if n == 0 || n > 10 {
        return Err(SymGroupError::DegreeOutOfRange(n));
    }
    Ok(GroupIterator { next: Some(Permutation::identity(n)) })
}

pub struct GroupIterator {
    next: Option<Permutation>,
}

impl Iterator for GroupIterator {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut images = current.images.clone();
        if next_lexicographic(&mut images) {
            self.next = Some(Permutation { images });
        }
        Some(current)
    }
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Irreducible character `χ_frame(class)` by Murnaghan-Nakayama.
pub fn character(frame: &YoungFrame, class: &CycleType) -> Result<i64, SymGroupError> {
    if frame.boxes() != class.degree() {
        return Err(SymGroupError::SizeMismatch(frame.boxes(), class.degree()));
    }
    let mut memo = HashMap::new();
    Ok(mn_recurse(frame.parts(), class.frame().parts(), &mut memo))
}

fn mn_recurse(
    parts: &[u32],
    cycles: &[u32],
    memo: &mut HashMap<(Vec<u32>, Vec<u32>), i64>,
) -> i64 {
    if cycles.is_empty() {
        debug_assert!(parts.is_empty());
        return 1;
    }
    let key = (parts.to_vec(), cycles.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let k = cycles[0] as i64;
    let rest = &cycles[1..];
    let rows = parts.len();
    // Beta-set: strictly decreasing first-column hook numbers.
    let beta: Vec<i64> = parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (rows - 1 - i) as i64)
        .collect();
    let mut total = 0i64;
    for i in 0..rows {
        let target = beta[i] - k;
        if target < 0 || beta.contains(&target) {
            continue; // no removable border strip of length k starting here
        }
        let height = beta.iter().filter(|&&b| target < b && b < beta[i]).count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let new_parts: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(j, &b)| (b - (rows - 1 - j) as i64) as u32)
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn_recurse(&new_parts, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Full character table of `S_n`: all frames against all classes, plus a
/// cycle-type lookup for evaluating class functions on group elements.
pub struct CharacterTable {
    n: u32,
    frames: Vec<YoungFrame>,
    classes: Vec<CycleType>,
    class_index: HashMap<Vec<u32>, usize>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(n: u32) -> Self {
        let frames = crate::partitions::enumerate_frames(n, n);
        let classes: Vec<CycleType> = frames.iter().map(|f| CycleType(f.clone())).collect();
        let class_index = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.frame().parts().to_vec(), i))
            .collect();
        let values = frames
            .iter()
            .map(|f| {
                classes
                    .iter()
                    .map(|c| character(f, c).expect("matching box counts"))
                    .collect()
            })
            .collect();
        Self { n, frames, classes, class_index, values }
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn frames(&self) -> &[YoungFrame] {
        &self.frames
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    pub fn value(&self, frame_idx: usize, class_idx: usize) -> i64 {
        self.values[frame_idx][class_idx]
    }

    pub fn frame_index(&self, frame: &YoungFrame) -> Option<usize> {
        self.frames.iter().position(|f| f == frame)
    }

    pub fn class_index_of(&self, c: &CycleType) -> usize {
        self.class_index[c.frame().parts()]
    }

    /// χ_frame evaluated on a group element via its cycle type.
    pub fn eval(&self, frame_idx: usize, sigma: &Permutation) -> i64 {
        self.values[frame_idx][self.class_index_of(&sigma.cycle_type())]
    }
}
