//! Dense numeric linear algebra on the tensor-power spaces
//! `H_A^{⊗n} ⊗ H_B^{⊗n}`.
//!
//! The canonical basis ordering puts all A slots before all B slots:
//! `e_{a_1} ⊗ .. ⊗ e_{a_n} ⊗ f_{b_1} ⊗ .. ⊗ f_{b_n}`. The diagonal action of
//! a permutation on both subsystems is implemented directly in this ordering;
//! [`reshuffle_map`] converts from the pair-slot ordering
//! `(H_A ⊗ H_B)^{⊗n}` when an operator is more naturally built there.
//!
//! Permutation operators are kept as index maps and only materialized as
//! dense 0/1 matrices on request; everything else is dense `Complex<f64>`
//! bounded by a caller-supplied dimension cap.

use nalgebra::{Complex, DMatrix, DVector};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::symgroup::Permutation;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Default ceiling on the dense operator dimension.
pub const DEFAULT_DENSE_CAP: usize = 4096;

#[derive(Debug, Error, PartialEq)]
pub enum TensorError {
    #[error("dense dimension {dim} exceeds the cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operator dimension {dim} does not factor as {d_a} x {d_b}")]
    BadFactorization { dim: usize, d_a: usize, d_b: usize },
    #[error("permutation degree {degree} does not match slot count {slots}")]
    DegreeMismatch { degree: usize, slots: usize },
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("matrix is not a density operator: {0}")]
    NotAState(String),
}

/// Which subsystem(s) a permutation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionKind {
    /// Permute the n A-slots; operator lives on `H_A^{⊗n}`.
    A,
    /// Permute the n B-slots; operator lives on `H_B^{⊗n}`.
    B,
    /// Permute both simultaneously; operator lives on the full space.
    Ab,
    /// Independent pair of permutations on A and B slots.
    AxB,
}

impl ActionKind {
    pub fn label(self) -> &'static str {
        match self {
            ActionKind::A => "A",
            ActionKind::B => "B",
            ActionKind::Ab => "AB",
            ActionKind::AxB => "AxB",
        }
    }
}

/// Dimensions of the tensor-power stage: `n` copies of `C^{d_a} ⊗ C^{d_b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Space {
    pub d_a: usize,
    pub d_b: usize,
    pub n: usize,
}

impl Space {
    pub fn new(d_a: usize, d_b: usize, n: usize) -> Self {
        assert!(d_a >= 1 && d_b >= 1 && n >= 1);
        Self { d_a, d_b, n }
    }

    pub fn dim_a(&self) -> usize {
        self.d_a.pow(self.n as u32)
    }

    pub fn dim_b(&self) -> usize {
        self.d_b.pow(self.n as u32)
    }

    /// Dimension of the full space `H_A^{⊗n} ⊗ H_B^{⊗n}`.
    pub fn dim_full(&self) -> usize {
        self.dim_a() * self.dim_b()
    }

    pub fn d_pair(&self) -> usize {
        self.d_a * self.d_b
    }

    /// Local dimension seen by one action kind.
    pub fn local_dim(&self, kind: ActionKind) -> usize {
        match kind {
            ActionKind::A => self.d_a,
            ActionKind::B => self.d_b,
            ActionKind::Ab | ActionKind::AxB => self.d_pair(),
        }
    }

    /// Dimension of the space an action kind's operators live on.
    pub fn action_dim(&self, kind: ActionKind) -> usize {
        match kind {
            ActionKind::A => self.dim_a(),
            ActionKind::B => self.dim_b(),
            ActionKind::Ab | ActionKind::AxB => self.dim_full(),
        }
    }
}

fn check_cap(dim: usize, cap: usize) -> Result<(), TensorError> {
    if dim > cap {
        Err(TensorError::CapExceeded { dim, cap })
    } else {
        Ok(())
    }
}

/// Index action of σ permuting the `n` base-`d` slots: slot `k` moves to slot
/// `σ(k)`, digits big-endian.
pub fn slot_index_map(d: usize, n: usize, sigma: &Permutation) -> Result<Vec<usize>, TensorError> {
    if sigma.degree() != n {
        return Err(TensorError::DegreeMismatch { degree: sigma.degree(), slots: n });
    }
    let dim = d.pow(n as u32);
    let mut map = vec![0usize; dim];
    let mut digits = vec![0usize; n];
    for (i, slot) in map.iter_mut().enumerate() {
        let mut rem = i;
        for k in (0..n).rev() {
            digits[k] = rem % d;
            rem /= d;
        }
        let mut out = 0usize;
        let mut weights = vec![0usize; n];
        let mut w = 1usize;
        for k in (0..n).rev() {
            weights[k] = w;
            w *= d;
        }
        for k in 0..n {
            out += digits[k] * weights[sigma.apply(k)];
        }
        *slot = out;
    }
    Ok(map)
}

/// Index action of a permutation (or pair) for the given action kind.
pub fn perm_index_map(
    kind: ActionKind,
    space: Space,
    sigma: &Permutation,
) -> Result<Vec<usize>, TensorError> {
    match kind {
        ActionKind::A => slot_index_map(space.d_a, space.n, sigma),
        ActionKind::B => slot_index_map(space.d_b, space.n, sigma),
        ActionKind::Ab => perm_index_map_pair(space, sigma, sigma),
        ActionKind::AxB => Err(TensorError::DegreeMismatch {
            degree: sigma.degree(),
            slots: 0, // AxB needs a pair; use perm_index_map_pair
        }),
    }
}

/// Index action of `(σ_a, σ_b)` permuting A and B slots independently.
pub fn perm_index_map_pair(
    space: Space,
    sigma_a: &Permutation,
    sigma_b: &Permutation,
) -> Result<Vec<usize>, TensorError> {
    let map_a = slot_index_map(space.d_a, space.n, sigma_a)?;
    let map_b = slot_index_map(space.d_b, space.n, sigma_b)?;
    let db = space.dim_b();
    let mut map = vec![0usize; space.dim_full()];
    for ia in 0..space.dim_a() {
        for ib in 0..db {
            map[ia * db + ib] = map_a[ia] * db + map_b[ib];
        }
    }
    Ok(map)
}

/// Dense 0/1 matrix of an index map: column `i` has its 1 at row `map[i]`.
pub fn index_map_matrix(map: &[usize]) -> CMat {
    let dim = map.len();
    let mut m = CMat::zeros(dim, dim);
    for (i, &j) in map.iter().enumerate() {
        m[(j, i)] = C64::new(1.0, 0.0);
    }
    m
}

/// Dense permutation operator for a single permutation under `kind`.
pub fn permutation_operator(
    kind: ActionKind,
    space: Space,
    sigma: &Permutation,
    cap: usize,
) -> Result<CMat, TensorError> {
    let dim = space.action_dim(kind);
    check_cap(dim, cap)?;
    Ok(index_map_matrix(&perm_index_map(kind, space, sigma)?))
}

/// Conjugation `B M B^†` of a dense matrix by an index-map permutation.
pub fn conjugate_by_index_map(m: &CMat, map: &[usize]) -> CMat {
    let dim = map.len();
    let mut out = CMat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(map[i], map[j])] = m[(i, j)];
        }
    }
    out
}

/// Apply an index map to a vector: `(Bv)[map[i]] = v[i]`.
pub fn apply_index_map(v: &CVec, map: &[usize]) -> CVec {
    let mut out = CVec::zeros(v.len());
    for (i, &j) in map.iter().enumerate() {
        out[j] = v[i];
    }
    out
}

/// Map from the pair-slot index of `(H_A ⊗ H_B)^{⊗n}` to the A-first index.
pub fn reshuffle_map(space: Space) -> Vec<usize> {
    let d = space.d_pair();
    let n = space.n;
    let dim = d.pow(n as u32);
    let mut map = vec![0usize; dim];
    for (i, slot) in map.iter_mut().enumerate() {
        let mut rem = i;
        let mut ia = 0usize;
        let mut ib = 0usize;
        let mut pairs = vec![(0usize, 0usize); n];
        for k in (0..n).rev() {
            let pair = rem % d;
            rem /= d;
            pairs[k] = (pair / space.d_b, pair % space.d_b);
        }
        for k in 0..n {
            ia = ia * space.d_a + pairs[k].0;
            ib = ib * space.d_b + pairs[k].1;
        }
        *slot = ia * space.dim_b() + ib;
    }
    map
}

/// Plain Kronecker power `m^{⊗n}`.
pub fn kron_power(m: &CMat, n: usize, cap: usize) -> Result<CMat, TensorError> {
    assert!(n >= 1);
    let dim = m.nrows().pow(n as u32);
    check_cap(dim, cap)?;
    let mut acc = m.clone();
    for _ in 1..n {
        acc = acc.kronecker(m);
    }
    Ok(acc)
}

/// `ρ^{⊗n}` of an operator on `C^{d_a} ⊗ C^{d_b}`, reordered to the A-first
/// basis of the full space.
pub fn tensor_power_split(rho: &CMat, space: Space, cap: usize) -> Result<CMat, TensorError> {
    if rho.nrows() != space.d_pair() {
        return Err(TensorError::BadFactorization {
            dim: rho.nrows(),
            d_a: space.d_a,
            d_b: space.d_b,
        });
    }
    let std_power = kron_power(rho, space.n, cap)?;
    Ok(conjugate_by_index_map(&std_power, &reshuffle_map(space)))
}

/// Trace over all `n` B slots of an operator on the full space.
pub fn partial_trace_b(x: &CMat, space: Space) -> Result<CMat, TensorError> {
    let (da, db) = (space.dim_a(), space.dim_b());
    if x.nrows() != da * db {
        return Err(TensorError::DimensionMismatch(x.nrows(), da * db));
    }
    let mut out = CMat::zeros(da, da);
    for ia in 0..da {
        for ja in 0..da {
            let mut s = C64::new(0.0, 0.0);
            for ib in 0..db {
                s += x[(ia * db + ib, ja * db + ib)];
            }
            out[(ia, ja)] = s;
        }
    }
    Ok(out)
}

/// Trace over all `n` A slots.
pub fn partial_trace_a(x: &CMat, space: Space) -> Result<CMat, TensorError> {
    let (da, db) = (space.dim_a(), space.dim_b());
    if x.nrows() != da * db {
        return Err(TensorError::DimensionMismatch(x.nrows(), da * db));
    }
    let mut out = CMat::zeros(db, db);
    for ib in 0..db {
        for jb in 0..db {
            let mut s = C64::new(0.0, 0.0);
            for ia in 0..da {
                s += x[(ia * db + ib, ia * db + jb)];
            }
            out[(ib, jb)] = s;
        }
    }
    Ok(out)
}

fn hermiticity_defect(m: &CMat) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Real eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().cloned().collect();
    ev.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
    ev
}

/// Sum of singular values. Hermitian and anti-Hermitian inputs use the exact
/// eigenvalue route; everything else goes through `sqrt(eig(M^† M))`.
pub fn trace_norm(m: &CMat) -> f64 {
    let scale = m.iter().map(|c| c.norm()).fold(0.0f64, f64::max).max(1.0);
    if hermiticity_defect(m) <= 1e-10 * scale {
        return hermitian_eigenvalues(m).iter().map(|e| e.abs()).sum();
    }
    let im = m.map(|c| c * C64::new(0.0, 1.0));
    if hermiticity_defect(&im) <= 1e-10 * scale {
        return hermitian_eigenvalues(&im).iter().map(|e| e.abs()).sum();
    }
    let gram = m.adjoint() * m;
    hermitian_eigenvalues(&gram).iter().map(|e| e.max(0.0).sqrt()).sum()
}

/// Largest singular value, with the same Hermitian fast paths as
/// [`trace_norm`].
pub fn op_norm(m: &CMat) -> f64 {
    let scale = m.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    if hermiticity_defect(m) <= 1e-10 * scale {
        return hermitian_eigenvalues(m).iter().fold(0.0f64, |a, e| a.max(e.abs()));
    }
    let im = m.map(|c| c * C64::new(0.0, 1.0));
    if hermiticity_defect(&im) <= 1e-10 * scale {
        return hermitian_eigenvalues(&im).iter().fold(0.0f64, |a, e| a.max(e.abs()));
    }
    let gram = m.adjoint() * m;
    hermitian_eigenvalues(&gram).iter().fold(0.0f64, |a, e| a.max(e.max(0.0).sqrt()))
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

/// Real part of `tr(m)`.
pub fn trace_re(m: &CMat) -> f64 {
    m.trace().re
}

/// Real part of `tr(a b)` without forming the product.
pub fn trace_product_re(a: &CMat, b: &CMat) -> f64 {
    let mut s = C64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            s += a[(i, j)] * b[(j, i)];
        }
    }
    s.re
}

/// `tr(m²)` for Hermitian `m`, as a real number.
pub fn purity(m: &CMat) -> f64 {
    let mut s = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            s += (m[(i, j)] * m[(j, i)]).re;
        }
    }
    s
}

/// Eigenvalue list of a state: non-negative, non-increasing, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(values: Vec<f64>) -> Result<Self, TensorError> {
        if values.is_empty() {
            return Err(TensorError::InvalidSpectrum("empty".into()));
        }
        if values.windows(2).any(|w| w[0] < w[1] - 1e-12) {
            return Err(TensorError::InvalidSpectrum(format!("not sorted: {values:?}")));
        }
        if values.iter().any(|&v| v < -1e-12) {
            return Err(TensorError::InvalidSpectrum(format!("negative entry: {values:?}")));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(TensorError::InvalidSpectrum(format!("sum {sum} != 1")));
        }
        Ok(Self { values: values.into_iter().map(|v| v.max(0.0)).collect() })
    }

    /// Sorts and clamps raw eigenvalues into a spectrum.
    pub fn from_eigenvalues(mut values: Vec<f64>) -> Result<Self, TensorError> {
        values.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
        Self::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `-log2` of the smallest strictly positive eigenvalue.
    pub fn c1(&self) -> f64 {
        let min_pos = self
            .values
            .iter()
            .copied()
            .filter(|&v| v > 0.0)
            .fold(f64::INFINITY, f64::min);
        -min_pos.log2()
    }
}

impl AsRef<[f64]> for Spectrum {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    mat: CMat,
}

impl DensityOperator {
    pub fn new(mat: CMat) -> Result<Self, TensorError> {
        if mat.nrows() != mat.ncols() {
            return Err(TensorError::DimensionMismatch(mat.nrows(), mat.ncols()));
        }
        if hermiticity_defect(&mat) > 1e-10 {
            return Err(TensorError::NotAState("not Hermitian within 1e-10".into()));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(TensorError::NotAState(format!("trace {tr} != 1")));
        }
        let eigs = hermitian_eigenvalues(&mat);
        if eigs.iter().any(|&e| e < -1e-10) {
            return Err(TensorError::NotAState(format!("negative eigenvalue {:?}", eigs.last())));
        }
        Ok(Self { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum::from_eigenvalues(hermitian_eigenvalues(&self.mat))
            .expect("density operator eigenvalues form a spectrum")
    }

    /// Unitary whose columns are eigenvectors, ordered by descending
    /// eigenvalue; `U diag(spectrum) U^†` reconstructs the state.
    pub fn eigenbasis(&self) -> (Spectrum, CMat) {
        let se = self.mat.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..se.eigenvalues.len()).collect();
        order.sort_unstable_by(|&i, &j| {
            se.eigenvalues[j].partial_cmp(&se.eigenvalues[i]).unwrap()
        });
        let d = self.dim();
        let mut u = CMat::zeros(d, d);
        let mut vals = Vec::with_capacity(d);
        for (col, &i) in order.iter().enumerate() {
            vals.push(se.eigenvalues[i]);
            u.set_column(col, &se.eigenvectors.column(i));
        }
        (Spectrum::from_eigenvalues(vals).unwrap(), u)
    }

    /// Single-copy marginals over the factorization `d_a x d_b`, with the
    /// joint and marginal spectra.
    pub fn marginals(&self, d_a: usize, d_b: usize) -> Result<Marginals, TensorError> {
        if d_a * d_b != self.dim() {
            return Err(TensorError::BadFactorization { dim: self.dim(), d_a, d_b });
        }
        let one = Space::new(d_a, d_b, 1);
        let rho_a = DensityOperator::new(partial_trace_b(&self.mat, one)?)?;
        let rho_b = DensityOperator::new(partial_trace_a(&self.mat, one)?)?;
        let r = self.spectrum();
        let r_a = rho_a.spectrum();
        let r_b = rho_b.spectrum();
        Ok(Marginals { rho_a, rho_b, r, r_a, r_b })
    }
}

#[derive(Debug, Clone)]
pub struct Marginals {
    pub rho_a: DensityOperator,
    pub rho_b: DensityOperator,
    pub r: Spectrum,
    pub r_a: Spectrum,
    pub r_b: Spectrum,
}

fn standard_normal(rng: &mut ChaCha12Rng) -> f64 {
    // Box-Muller; deterministic for a fixed seed.
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Haar-like random unitary: QR of a complex Gaussian matrix with the phases
/// of the R diagonal absorbed into Q.
pub fn random_unitary(d: usize, rng: &mut ChaCha12Rng) -> CMat {
    let g = CMat::from_fn(d, d, |_, _| C64::new(standard_normal(rng), standard_normal(rng)));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase.conj();
        }
    }
    q
}

/// Seeded random state. With a spectrum: that spectrum conjugated by a random
/// unitary. Without: a flat simplex sample (sorted) conjugated the same way.
pub fn random_density(
    d: usize,
    seed: u64,
    spectrum: Option<&Spectrum>,
) -> Result<DensityOperator, TensorError> {
    assert!(d >= 1);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let spec = match spectrum {
        Some(s) => {
            if s.len() != d {
                return Err(TensorError::InvalidSpectrum(format!(
                    "spectrum length {} != dimension {d}",
                    s.len()
                )));
            }
            s.clone()
        }
        None => {
            let raw: Vec<f64> = (0..d).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
            let sum: f64 = raw.iter().sum();
            Spectrum::from_eigenvalues(raw.into_iter().map(|x| x / sum).collect())?
        }
    };
    let u = random_unitary(d, &mut rng);
    let diag = CMat::from_diagonal(&DVector::from_iterator(
        d,
        spec.values().iter().map(|&v| C64::new(v, 0.0)),
    ));
    let mat = &u * diag * u.adjoint();
    // enforce exact Hermitian symmetry before validation
    let mat = (&mat + mat.adjoint()) * C64::new(0.5, 0.0);
    DensityOperator::new(mat)
}

/// `(m + m^†)/2`.
pub fn hermitize(m: &CMat) -> CMat {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::iterate_group;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_acts_trivially() {
        let space = Space::new(2, 3, 2);
        let id = Permutation::identity(2);
        for kind in [ActionKind::A, ActionKind::B, ActionKind::Ab] {
            let op = permutation_operator(kind, space, &id, DEFAULT_DENSE_CAP).unwrap();
            assert_eq!(op, CMat::identity(space.action_dim(kind), space.action_dim(kind)));
        }
    }

    #[test]
    fn swap_on_two_qubit_slots() {
        let space = Space::new(2, 2, 2);
        let swap = Permutation::from_images(vec![1, 0]).unwrap();
        let op = permutation_operator(ActionKind::A, space, &swap, DEFAULT_DENSE_CAP).unwrap();
        let mut expected = CMat::zeros(4, 4);
        expected[(0, 0)] = c(1.0, 0.0);
        expected[(2, 1)] = c(1.0, 0.0);
        expected[(1, 2)] = c(1.0, 0.0);
        expected[(3, 3)] = c(1.0, 0.0);
        assert_eq!(op, expected);
    }

    #[test]
    fn diagonal_action_factorizes() {
        // the pair action equals the Kronecker product of the single actions
        let space = Space::new(2, 2, 3);
        for sigma in iterate_group(3).unwrap() {
            let ab = permutation_operator(ActionKind::Ab, space, &sigma, DEFAULT_DENSE_CAP).unwrap();
            let a = permutation_operator(ActionKind::A, space, &sigma, DEFAULT_DENSE_CAP).unwrap();
            let b = permutation_operator(ActionKind::B, space, &sigma, DEFAULT_DENSE_CAP).unwrap();
            assert_eq!(ab, a.kronecker(&b), "sigma {:?}", sigma.images());
        }
    }

    #[test]
    fn representation_property() {
        let space = Space::new(2, 2, 3);
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let perms: Vec<Permutation> = iterate_group(3).unwrap().collect();
        for kind in [ActionKind::A, ActionKind::B, ActionKind::Ab] {
            for _ in 0..50 {
                let a = &perms[(rng.random::<u32>() as usize) % perms.len()];
                let b = &perms[(rng.random::<u32>() as usize) % perms.len()];
                let ab = a.compose(b).unwrap();
                let ma = perm_index_map(kind, space, a).unwrap();
                let mb = perm_index_map(kind, space, b).unwrap();
                let mab = perm_index_map(kind, space, &ab).unwrap();
                let composed: Vec<usize> = (0..mb.len()).map(|i| ma[mb[i]]).collect();
                assert_eq!(composed, mab, "kind {kind:?}");
            }
        }
    }

    #[test]
    fn reshuffle_consistency() {
        // conjugating the pair-slot action by the reshuffle gives the
        // A-first diagonal action
        let space = Space::new(2, 3, 2);
        let map = reshuffle_map(space);
        for sigma in iterate_group(2).unwrap() {
            let std_map = slot_index_map(space.d_pair(), space.n, &sigma).unwrap();
            let ab_map = perm_index_map(ActionKind::Ab, space, &sigma).unwrap();
            for i in 0..space.dim_full() {
                assert_eq!(map[std_map[i]], ab_map[map[i]]);
            }
        }
    }

    #[test]
    fn tensor_power_basics() {
        let rho = random_density(4, 11, None).unwrap();
        let space = Space::new(2, 2, 1);
        let p1 = tensor_power_split(rho.matrix(), space, DEFAULT_DENSE_CAP).unwrap();
        assert!((&p1 - rho.matrix()).norm() < 1e-14, "n=1 is the state itself");

        let space2 = Space::new(2, 2, 2);
        let p2 = tensor_power_split(rho.matrix(), space2, DEFAULT_DENSE_CAP).unwrap();
        assert!((p2.trace().re - 1.0).abs() < 1e-9);
        // eigenvalues of the power are pairwise products
        let mut expected: Vec<f64> = Vec::new();
        for &x in rho.spectrum().values() {
            for &y in rho.spectrum().values() {
                expected.push(x * y);
            }
        }
        expected.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
        let got = hermitian_eigenvalues(&p2);
        for (g, e) in got.iter().zip(&expected) {
            assert!((g - e).abs() < 1e-10);
        }
        // purity multiplies
        let pur1 = purity(rho.matrix());
        assert!((purity(&p2) - pur1 * pur1).abs() < 1e-10);
    }

    #[test]
    fn tensor_power_cap() {
        let rho = random_density(4, 3, None).unwrap();
        let err = tensor_power_split(rho.matrix(), Space::new(2, 2, 4), 128).unwrap_err();
        assert!(matches!(err, TensorError::CapExceeded { dim: 256, cap: 128 }));
    }

    #[test]
    fn partial_trace_of_product_state() {
        let rho_a = random_density(2, 21, None).unwrap();
        let rho_b = random_density(2, 22, None).unwrap();
        let n = 2;
        let space = Space::new(2, 2, n);
        let prod = kron_power(rho_a.matrix(), n, 64)
            .unwrap()
            .kronecker(&kron_power(rho_b.matrix(), n, 64).unwrap());
        let reduced = partial_trace_b(&prod, space).unwrap();
        let expected = kron_power(rho_a.matrix(), n, 64).unwrap();
        assert!((&reduced - &expected).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_of_maximally_entangled_pair() {
        let mut psi = CVec::zeros(4);
        psi[0] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        psi[3] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let rho = &psi * psi.adjoint();
        let reduced = partial_trace_b(&rho, Space::new(2, 2, 1)).unwrap();
        let half = CMat::identity(2, 2) * c(0.5, 0.0);
        assert!((&reduced - &half).norm() < 1e-14);
    }

    #[test]
    fn partial_trace_preserves_trace_and_adjointness() {
        let space = Space::new(2, 2, 2);
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        let dim = space.dim_full();
        let x = hermitize(&CMat::from_fn(dim, dim, |_, _| {
            c(standard_normal(&mut rng), standard_normal(&mut rng))
        }));
        let tb = partial_trace_b(&x, space).unwrap();
        assert!((tb.trace() - x.trace()).norm() < 1e-9);
        // adjoint property: tr(tr_B(X) Y) = tr(X (Y ⊗ I_B))
        let da = space.dim_a();
        let y = hermitize(&CMat::from_fn(da, da, |_, _| {
            c(standard_normal(&mut rng), standard_normal(&mut rng))
        }));
        let lhs = trace_product_re(&tb, &y);
        let yb = y.kronecker(&CMat::identity(space.dim_b(), space.dim_b()));
        let rhs = trace_product_re(&x, &yb);
        assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn trace_norm_basics() {
        let rho = random_density(5, 77, None).unwrap();
        assert!((trace_norm(rho.matrix()) - 1.0).abs() < 1e-10);
        let zero = rho.matrix() - rho.matrix();
        assert!(trace_norm(&zero) < 1e-14);
        let diag = CMat::from_diagonal(&DVector::from_vec(vec![c(0.7, 0.0), c(-0.3, 0.0)]));
        assert!((trace_norm(&diag) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_density_contract() {
        let spec = Spectrum::new(vec![1.0, 0.0, 0.0]).unwrap();
        let rho = random_density(3, 4, Some(&spec)).unwrap();
        assert!((purity(rho.matrix()) - 1.0).abs() < 1e-10, "rank-one projector");

        let spec = Spectrum::new(vec![0.5, 0.3, 0.2]).unwrap();
        let rho = random_density(3, 4, Some(&spec)).unwrap();
        for (got, want) in rho.spectrum().values().iter().zip(spec.values()) {
            assert!((got - want).abs() < 1e-10);
        }

        let a = random_density(4, 123, None).unwrap();
        let b = random_density(4, 123, None).unwrap();
        assert_eq!(a.matrix(), b.matrix(), "same seed, bit-identical");
        let c_ = random_density(4, 124, None).unwrap();
        assert_ne!(a.matrix(), c_.matrix());
    }

    #[test]
    fn marginals_of_product_and_entangled_states() {
        let rho_a = random_density(2, 31, None).unwrap();
        let rho_b = random_density(2, 32, None).unwrap();
        let prod = DensityOperator::new(rho_a.matrix().kronecker(rho_b.matrix())).unwrap();
        let m = prod.marginals(2, 2).unwrap();
        assert!((m.rho_a.matrix() - rho_a.matrix()).norm() < 1e-12);
        assert!((m.rho_b.matrix() - rho_b.matrix()).norm() < 1e-12);

        let mut psi = CVec::zeros(4);
        psi[1] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        psi[2] = c(-std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let ent = DensityOperator::new(&psi * psi.adjoint()).unwrap();
        let m = ent.marginals(2, 2).unwrap();
        assert!((m.r_a.values()[0] - 0.5).abs() < 1e-12);
        assert!((m.r_a.values()[1] - 0.5).abs() < 1e-12);
        assert!((m.r.values()[0] - 1.0).abs() < 1e-12, "pure state spectrum starts at 1");
        assert!(m.r.values()[1].abs() < 1e-12);
    }

    #[test]
    fn power_commutes_with_diagonal_action() {
        let space = Space::new(2, 2, 3);
        let rho = random_density(4, 55, None).unwrap();
        let power = tensor_power_split(rho.matrix(), space, DEFAULT_DENSE_CAP).unwrap();
        for sigma in iterate_group(3).unwrap() {
            let map = perm_index_map(ActionKind::Ab, space, &sigma).unwrap();
            let conj = conjugate_by_index_map(&power, &map);
            assert!(op_norm(&(&conj - &power)) < 1e-9, "sigma {:?}", sigma.images());
        }
    }
}
