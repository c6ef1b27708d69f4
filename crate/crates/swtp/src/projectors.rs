//! Central, refined, and typical projectors for the symmetric-group actions,
//! plus matrix units, Young symmetrizers, and typeclass projectors.
//!
//! Central projectors are realized by the character sum
//! `P_λ = (dim F_λ / n!) Σ_σ χ_λ(σ) B(σ)`. The refinement of a central
//! projector into rank-`dim F_λ` pieces compatible with the product
//! projectors `P_μ ⊗ P_ν` works subspace by subspace: the product of the two
//! commuting projectors is split by eigenspaces of a group-averaged random
//! Hermitian element, which generically separates the copies. A failed split
//! (eigenvalue collision) is detected and reseeded.

use thiserror::Error;

use crate::partitions::{enumerate_frames, factorial, TypeVector, YoungFrame};
use crate::symgroup::{iterate_group, CharacterTable, Permutation};
use crate::tensorspace::{
    apply_index_map, conjugate_by_index_map, hermitize, index_map_matrix, kron_power, op_norm,
    perm_index_map, reshuffle_map, trace_product_re, ActionKind, C64, CMat, CVec, Space,
    TensorError,
};

#[derive(Debug, Error)]
pub enum ProjectorError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("trace {trace} of P_{frame} is not near an integer multiple of dim {dim}")]
    MultiplicityNotInteger { frame: String, trace: f64, dim: u128 },
    #[error("refinement of {frame} under parent ({mu},{nu}) stayed degenerate after {attempts} reseeds")]
    RefinementDegenerate { frame: String, mu: String, nu: String, attempts: usize },
    #[error("matrix-unit relations failed for {frame}: worst residual {residual:.3e} (copy pair {i},{j})")]
    UnitRelations { frame: String, residual: f64, i: usize, j: usize },
    #[error("commutant reconstruction residual {residual:.3e} exceeds tolerance for {frame}")]
    Reconstruction { frame: String, residual: f64 },
    #[error("no usable symmetrizer seed vector for {frame} after {attempts} attempts")]
    SeedDegenerate { frame: String, attempts: usize },
}

/// Frames that can carry a non-zero isotypic component for this action.
pub fn frames_for(kind: ActionKind, space: Space) -> Vec<YoungFrame> {
    let d = space.local_dim(kind).min(space.n) as u32;
    enumerate_frames(d, space.n as u32)
}

/// Index maps of every `σ ∈ S_n` under the action, paired with the class
/// index of σ in `table`, in lexicographic group order.
pub fn action_table(
    kind: ActionKind,
    space: Space,
    table: &CharacterTable,
) -> Result<Vec<(Vec<usize>, usize)>, ProjectorError> {
    let mut out = Vec::with_capacity(factorial(space.n as u32) as usize);
    for sigma in iterate_group(space.n).expect("n within group-iteration range") {
        let map = perm_index_map(kind, space, &sigma)?;
        out.push((map, table.class_index_of(&sigma.cycle_type())));
    }
    Ok(out)
}

/// Orthogonal projector onto the isotypic component of one frame.
#[derive(Debug, Clone)]
pub struct CentralProjector {
    pub kind: ActionKind,
    pub frame: YoungFrame,
    pub mat: CMat,
    pub multiplicity: u64,
}

impl CentralProjector {
    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }
}

/// `P_λ` for one frame by the character sum over the whole group.
pub fn central_projector(
    kind: ActionKind,
    space: Space,
    frame: &YoungFrame,
    table: &CharacterTable,
    actions: &[(Vec<usize>, usize)],
    cap: usize,
) -> Result<CentralProjector, ProjectorError> {
    let dim = space.action_dim(kind);
    if dim > cap {
        return Err(TensorError::CapExceeded { dim, cap }.into());
    }
    let dim_f = frame.dim_irrep().expect("frame within exact range");
    let frame_idx = table
        .frame_index(frame)
        .expect("frame partitions the same n as the table");
    let mut mat = CMat::zeros(dim, dim);
    for (map, class_idx) in actions {
        let chi = table.value(frame_idx, *class_idx) as f64;
        if chi == 0.0 {
            continue;
        }
        let chi = C64::new(chi, 0.0);
        for (i, &j) in map.iter().enumerate() {
            mat[(j, i)] += chi;
        }
    }
    let scale = C64::new(dim_f as f64 / factorial(space.n as u32) as f64, 0.0);
    mat *= scale;
    let trace = mat.trace().re;
    let ratio = trace / dim_f as f64;
    if (ratio - ratio.round()).abs() > 1e-6 || ratio.round() < -0.5 {
        return Err(ProjectorError::MultiplicityNotInteger {
            frame: frame.to_string(),
            trace,
            dim: dim_f,
        });
    }
    Ok(CentralProjector { kind, frame: frame.clone(), mat, multiplicity: ratio.round() as u64 })
}

/// All central projectors of an action, in frame enumeration order.
pub fn central_projectors(
    kind: ActionKind,
    space: Space,
    cap: usize,
) -> Result<Vec<CentralProjector>, ProjectorError> {
    let table = CharacterTable::new(space.n as u32);
    let actions = action_table(kind, space, &table)?;
    frames_for(kind, space)
        .iter()
        .map(|f| central_projector(kind, space, f, &table, &actions, cap))
        .collect()
}

/// Sum of central projectors over frames whose profile lies within an ℓ1
/// radius of a reference spectrum.
#[derive(Debug, Clone)]
pub struct TypicalProjector {
    pub kind: ActionKind,
    pub center: Vec<f64>,
    pub radius: f64,
    pub mat: CMat,
    pub frames: Vec<YoungFrame>,
}

impl TypicalProjector {
    pub fn is_zero(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }
}

/// `P_radius = Σ_{λ: ‖λ̄ − center‖ ≤ radius} P_λ`. A radius too small for any
/// frame yields the zero operator, not an error.
pub fn typical_projector(
    space: Space,
    centrals: &[CentralProjector],
    center: &[f64],
    radius: f64,
) -> TypicalProjector {
    assert!(radius >= 0.0, "radius must be non-negative");
    let kind = centrals.first().map(|c| c.kind).unwrap_or(ActionKind::Ab);
    let d = space.local_dim(kind);
    assert_eq!(center.len(), d, "center spectrum must have the local dimension");
    let dim = space.action_dim(kind);
    let mut mat = CMat::zeros(dim, dim);
    let mut frames = Vec::new();
    for cp in centrals {
        let profile = cp
            .frame
            .normalized_profile(d)
            .expect("enumerated frames never exceed the local dimension");
        let dist: f64 = profile
            .probs()
            .iter()
            .zip(center)
            .map(|(a, b)| (a - b).abs())
            .sum();
        if dist <= radius {
            mat += &cp.mat;
            frames.push(cp.frame.clone());
        }
    }
    TypicalProjector { kind, center: center.to_vec(), radius, mat, frames }
}

/// Projector onto a single copy of `F_λ`, dominated by exactly one
/// `P_μ ⊗ P_ν`.
#[derive(Debug, Clone)]
pub struct RefinedProjector {
    pub frame: YoungFrame,
    pub index: usize,
    pub mat: CMat,
    pub parent: (YoungFrame, YoungFrame),
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn sub_seed(base: u64, tags: &[u64]) -> u64 {
    let mut state = base;
    let mut acc = splitmix(&mut state);
    for &t in tags {
        state ^= t;
        acc ^= splitmix(&mut state);
    }
    acc
}

fn seeded_hermitian(dim: usize, seed: u64) -> CMat {
    use rand::{RngExt, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let g = CMat::from_fn(dim, dim, |_, _| {
        C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    hermitize(&g)
}

fn seeded_vector(dim: usize, seed: u64) -> CVec {
    use rand::{RngExt, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let v = CVec::from_fn(dim, |_, _| {
        C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    let norm = v.norm();
    v / C64::new(norm, 0.0)
}

/// Group average `(1/n!) Σ_σ B(σ) m B(σ)^†` over the diagonal action.
pub fn twirl_ab(m: &CMat, ab_maps: &[Vec<usize>]) -> CMat {
    let dim = m.nrows();
    let mut acc = CMat::zeros(dim, dim);
    for map in ab_maps {
        acc += conjugate_by_index_map(m, map);
    }
    acc / C64::new(ab_maps.len() as f64, 0.0)
}

/// Index maps of the diagonal action for every group element.
pub fn ab_index_maps(space: Space) -> Vec<Vec<usize>> {
    iterate_group(space.n)
        .expect("n within group-iteration range")
        .map(|sigma| perm_index_map(ActionKind::Ab, space, &sigma).expect("degree matches"))
        .collect()
}

/// Orthonormal basis (columns) of the range of a numeric projector.
fn range_basis(p: &CMat, expected_rank: usize) -> CMat {
    let se = p.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..se.eigenvalues.len()).collect();
    order.sort_unstable_by(|&i, &j| se.eigenvalues[j].partial_cmp(&se.eigenvalues[i]).unwrap());
    let mut basis = CMat::zeros(p.nrows(), expected_rank);
    for (col, &i) in order.iter().take(expected_rank).enumerate() {
        debug_assert!(se.eigenvalues[i] > 0.5, "projector eigenvalue gap");
        basis.set_column(col, &se.eigenvectors.column(i));
    }
    basis
}

/// Split `P_λ` into copies of `F_λ`, each dominated by exactly one parent
/// `P_μ ⊗ P_ν` (the compatibility constraint on the refined family).
pub fn refine(
    space: Space,
    ab_central: &CentralProjector,
    centrals_a: &[CentralProjector],
    centrals_b: &[CentralProjector],
    ab_maps: &[Vec<usize>],
    seed: u64,
) -> Result<Vec<RefinedProjector>, ProjectorError> {
    let dim_f = ab_central.frame.dim_irrep().expect("frame within exact range") as usize;
    let mut out = Vec::new();
    for (mi, mu) in centrals_a.iter().enumerate() {
        for (ni, nu) in centrals_b.iter().enumerate() {
            if mu.multiplicity == 0 || nu.multiplicity == 0 {
                continue;
            }
            let q = mu.mat.kronecker(&nu.mat);
            let s = hermitize(&(&q * &ab_central.mat));
            let rank_f = s.trace().re;
            let rank = rank_f.round() as usize;
            debug_assert!((rank_f - rank as f64).abs() < 1e-6, "projector rank must be integral");
            if rank == 0 {
                continue;
            }
            debug_assert_eq!(rank % dim_f, 0, "parent block is a multiple of dim F");
            let copies = rank / dim_f;
            if copies == 1 {
                out.push((mi, ni, s));
                continue;
            }
            let basis = range_basis(&s, rank);
            let mut split = None;
            for attempt in 0..5u64 {
                let tag = sub_seed(
                    seed,
                    &[mi as u64, ni as u64, attempt, ab_central.frame.boxes() as u64],
                );
                let r = seeded_hermitian(s.nrows(), tag);
                let t = &s * twirl_ab(&r, ab_maps) * &s;
                let small = basis.adjoint() * &t * &basis;
                if let Some(blocks) = eigensplit_blocks(&small, copies, dim_f) {
                    split = Some(blocks);
                    break;
                }
            }
            let Some(blocks) = split else {
                return Err(ProjectorError::RefinementDegenerate {
                    frame: ab_central.frame.to_string(),
                    mu: mu.frame.to_string(),
                    nu: nu.frame.to_string(),
                    attempts: 5,
                });
            };
            for block in blocks {
                let cols = &basis * block; // dim x dim_f
                let p = &cols * cols.adjoint();
                out.push((mi, ni, hermitize(&p)));
            }
        }
    }
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(index, (mi, ni, mat))| RefinedProjector {
            frame: ab_central.frame.clone(),
            index,
            mat,
            parent: (centrals_a[mi].frame.clone(), centrals_b[ni].frame.clone()),
        })
        .collect())
}

/// Group the eigenvectors of a commutant element into `copies` blocks of
/// `block_dim` near-equal eigenvalues. Returns `None` on a collision between
/// blocks (caller reseeds).
fn eigensplit_blocks(small: &CMat, copies: usize, block_dim: usize) -> Option<Vec<CMat>> {
    let se = small.clone().symmetric_eigen();
    let r = se.eigenvalues.len();
    debug_assert_eq!(r, copies * block_dim);
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_unstable_by(|&i, &j| se.eigenvalues[j].partial_cmp(&se.eigenvalues[i]).unwrap());
    let spread_tol = 1e-8;
    let gap_tol = 1e-5;
    let mut blocks = Vec::with_capacity(copies);
    for c in 0..copies {
        let ids = &order[c * block_dim..(c + 1) * block_dim];
        let first = se.eigenvalues[ids[0]];
        let last = se.eigenvalues[ids[block_dim - 1]];
        if (first - last).abs() > spread_tol {
            return None;
        }
        if c + 1 < copies {
            let next = se.eigenvalues[order[(c + 1) * block_dim]];
            if (last - next).abs() < gap_tol {
                return None;
            }
        }
        let mut block = CMat::zeros(r, block_dim);
        for (col, &i) in ids.iter().enumerate() {
            block.set_column(col, &se.eigenvectors.column(i));
        }
        blocks.push(block);
    }
    Some(blocks)
}

/// Matrix-unit family for the copies of one frame: partial isometries
/// `V_i : copy 1 → copy i` with `Y_ij = V_i V_j^†`.
#[derive(Debug, Clone)]
pub struct MatrixUnitFamily {
    pub frame: YoungFrame,
    isometries: Vec<CMat>,
}

impl MatrixUnitFamily {
    pub fn copies(&self) -> usize {
        self.isometries.len()
    }

    /// `Y_ij`, mapping copy `j` into copy `i` (0-indexed).
    pub fn unit(&self, i: usize, j: usize) -> CMat {
        &self.isometries[i] * self.isometries[j].adjoint()
    }

    pub fn isometry(&self, i: usize) -> &CMat {
        &self.isometries[i]
    }
}

/// Build matrix units for a refined family by group-averaging rank-one
/// intertwiners seeded from a symmetrizer image vector, then normalizing.
pub fn matrix_units(
    space: Space,
    refined: &[RefinedProjector],
    ab_maps: &[Vec<usize>],
    seed: u64,
) -> Result<MatrixUnitFamily, ProjectorError> {
    assert!(!refined.is_empty());
    let frame = refined[0].frame.clone();
    let dim_f = frame.dim_irrep().expect("frame within exact range") as f64;
    let m = refined.len();
    let dim = refined[0].mat.nrows();
    let symm = young_symmetrizer(&frame);
    let symm_maps: Vec<(Vec<usize>, f64)> = symm
        .elements()
        .iter()
        .map(|(p, s)| {
            (perm_index_map(ActionKind::Ab, space, p).expect("degree matches"), *s as f64)
        })
        .collect();

    let mut components: Option<Vec<CVec>> = None;
    let mut attempts = 0;
    for attempt in 0..5u64 {
        attempts += 1;
        let g = seeded_vector(dim, sub_seed(seed, &[frame.boxes() as u64, attempt]));
        // image of the symmetrizer: one F vector spread over every copy
        let mut w = CVec::zeros(dim);
        for (map, sign) in &symm_maps {
            w += apply_index_map(&g, map) * C64::new(*sign, 0.0);
        }
        let comps: Vec<CVec> = refined.iter().map(|r| &r.mat * &w).collect();
        if comps.iter().all(|u| u.norm() > 1e-6) {
            components = Some(comps);
            break;
        }
    }
    let Some(comps) = components else {
        return Err(ProjectorError::SeedDegenerate { frame: frame.to_string(), attempts });
    };

    let mut isometries = Vec::with_capacity(m);
    isometries.push(refined[0].mat.clone()); // V_1 = P_{λ,1}
    let inv_group = C64::new(1.0 / ab_maps.len() as f64, 0.0);
    for comp in comps.iter().skip(1) {
        // twirl of |u_i><u_1| is proportional to the unit copy1 -> copy i
        let mut w_i = CMat::zeros(dim, dim);
        for map in ab_maps {
            let left = apply_index_map(comp, map);
            let right = apply_index_map(&comps[0], map);
            w_i += (&left * right.adjoint()) * inv_group;
        }
        let alpha = w_i.norm_squared() / dim_f;
        if alpha <= 1e-14 {
            return Err(ProjectorError::SeedDegenerate { frame: frame.to_string(), attempts });
        }
        isometries.push(w_i / C64::new(alpha.sqrt(), 0.0));
    }

    let family = MatrixUnitFamily { frame: frame.clone(), isometries };
    // certify: V_i V_i^† = P_{λ,i} and V_i^† V_j = δ_ij P_{λ,1}
    let mut worst = (0.0f64, 0usize, 0usize);
    for i in 0..m {
        let res = (family.unit(i, i) - &refined[i].mat).norm();
        if res > worst.0 {
            worst = (res, i, i);
        }
        for j in 0..m {
            if i == j {
                continue;
            }
            let cross = family.isometries[i].adjoint() * &family.isometries[j];
            let res = cross.norm();
            if res > worst.0 {
                worst = (res, i, j);
            }
        }
    }
    if worst.0 > 1e-7 {
        return Err(ProjectorError::UnitRelations {
            frame: frame.to_string(),
            residual: worst.0,
            i: worst.1,
            j: worst.2,
        });
    }
    Ok(family)
}

/// Coordinates of `P_λ ρ^{⊗n}` in the matrix-unit basis:
/// `c_ij = tr(Y_ij^† P_λ ρ^{⊗n}) / dim F_λ`. The reconstruction
/// `Σ c_ij Y_ij = P_λ ρ^{⊗n}` is certified before returning.
pub fn commutant_coefficients(
    p_lambda: &CMat,
    rho_power: &CMat,
    units: &MatrixUnitFamily,
) -> Result<CMat, ProjectorError> {
    let m = units.copies();
    let dim_f = units.frame.dim_irrep().expect("frame within exact range") as f64;
    let target = p_lambda * rho_power;
    let mut c = CMat::zeros(m, m);
    for i in 0..m {
        // tr(Y_ij^† X) = tr(V_j V_i^† X)
        let left = units.isometry(i).adjoint() * &target;
        for j in 0..m {
            let vj = units.isometry(j);
            let mut t = C64::new(0.0, 0.0);
            for r in 0..left.nrows() {
                for k in 0..left.ncols() {
                    t += left[(r, k)] * vj[(k, r)];
                }
            }
            c[(i, j)] = t / C64::new(dim_f, 0.0);
        }
    }
    // reconstruction residual
    let dim = p_lambda.nrows();
    let mut recon = CMat::zeros(dim, dim);
    for i in 0..m {
        let mut row_sum = CMat::zeros(dim, dim);
        for j in 0..m {
            row_sum += units.isometry(j).adjoint() * c[(i, j)];
        }
        recon += units.isometry(i) * row_sum;
    }
    let residual = (&recon - &target).norm();
    if residual > 1e-8 {
        return Err(ProjectorError::Reconstruction {
            frame: units.frame.to_string(),
            residual,
        });
    }
    Ok(c)
}

/// The canonical standard tableau of a frame (rows filled consecutively) and
/// its signed column-row group algebra element `E_T`.
#[derive(Debug, Clone)]
pub struct YoungSymmetrizer {
    frame: YoungFrame,
    row_offsets: Vec<usize>,
    elements: Vec<(Permutation, i64)>,
    row_group_order: u128,
}

impl YoungSymmetrizer {
    pub fn frame(&self) -> &YoungFrame {
        &self.frame
    }

    /// `(π ∘ τ, sgn π)` over all column permutations π and row permutations τ.
    pub fn elements(&self) -> &[(Permutation, i64)] {
        &self.elements
    }

    /// `|R_T| = prod λ_i!`.
    pub fn row_group_order(&self) -> u128 {
        self.row_group_order
    }

    /// Row index of each position in the canonical word.
    pub fn canonical_word(&self) -> Vec<usize> {
        let n = self.frame.boxes() as usize;
        let mut word = vec![0usize; n];
        for (row, &off) in self.row_offsets.iter().enumerate() {
            let len = self.frame.parts()[row] as usize;
            for p in off..off + len {
                word[p] = row;
            }
        }
        word
    }

    /// Exact integer overlap `⟨v, B(E_T) v⟩` for the canonical word `v`,
    /// counted combinatorially: a term contributes `sgn π` exactly when
    /// `π ∘ τ` stabilizes the word.
    pub fn overlap_integer(&self) -> i128 {
        let word = self.canonical_word();
        let mut total: i128 = 0;
        for (g, sign) in &self.elements {
            if (0..word.len()).all(|p| word[g.apply(p)] == word[p]) {
                total += *sign as i128;
            }
        }
        total
    }

    /// Dense operator `B(E_T)` under the given action.
    pub fn realize(
        &self,
        kind: ActionKind,
        space: Space,
        cap: usize,
    ) -> Result<CMat, ProjectorError> {
        let dim = space.action_dim(kind);
        if dim > cap {
            return Err(TensorError::CapExceeded { dim, cap }.into());
        }
        let mut acc = CMat::zeros(dim, dim);
        for (g, sign) in &self.elements {
            let map = perm_index_map(kind, space, g)?;
            let s = C64::new(*sign as f64, 0.0);
            for (i, &j) in map.iter().enumerate() {
                acc[(j, i)] += s;
            }
        }
        Ok(acc)
    }
}

/// All permutations fixing each listed position group setwise.
fn subgroup_of_groups(groups: &[Vec<usize>], n: usize) -> Vec<Permutation> {
    let mut acc = vec![Permutation::identity(n)];
    for group in groups {
        if group.len() < 2 {
            continue;
        }
        let mut next = Vec::new();
        for base in &acc {
            let mut positions = group.clone();
            permute_positions(&mut positions, 0, group, base, &mut next);
        }
        acc = next;
    }
    acc
}

fn permute_positions(
    positions: &mut Vec<usize>,
    k: usize,
    group: &[usize],
    base: &Permutation,
    out: &mut Vec<Permutation>,
) {
    if k == positions.len() {
        let mut images: Vec<usize> = base.images().to_vec();
        for (&slot, &target) in group.iter().zip(positions.iter()) {
            images[slot] = base.apply(target);
        }
        out.push(Permutation::from_images(images).expect("bijection by construction"));
        return;
    }
    for i in k..positions.len() {
        positions.swap(k, i);
        permute_positions(positions, k + 1, group, base, out);
        positions.swap(k, i);
    }
}

/// Canonical symmetrizer of a frame: rows are filled left to right with
/// consecutive numbers, row by row.
pub fn young_symmetrizer(frame: &YoungFrame) -> YoungSymmetrizer {
    let n = frame.boxes() as usize;
    let mut row_offsets = Vec::with_capacity(frame.rows());
    let mut off = 0usize;
    for &len in frame.parts() {
        row_offsets.push(off);
        off += len as usize;
    }
    let rows: Vec<Vec<usize>> = frame
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &len)| (row_offsets[i]..row_offsets[i] + len as usize).collect())
        .collect();
    let ncols = frame.parts()[0] as usize;
    let cols: Vec<Vec<usize>> = (0..ncols)
        .map(|j| {
            frame
                .parts()
                .iter()
                .enumerate()
                .take_while(|(_, &len)| len as usize > j)
                .map(|(i, _)| row_offsets[i] + j)
                .collect()
        })
        .collect();
    let row_group = subgroup_of_groups(&rows, n);
    let col_group = subgroup_of_groups(&cols, n);
    let mut elements = Vec::with_capacity(row_group.len() * col_group.len());
    for pi in &col_group {
        let sign = pi.sign();
        for tau in &row_group {
            elements.push((pi.compose(tau).expect("equal degree"), sign));
        }
    }
    let row_group_order = frame.parts().iter().map(|&p| factorial(p)).product();
    YoungSymmetrizer { frame: frame.clone(), row_offsets, elements, row_group_order }
}

/// Projector onto the span of product basis words with the given letter type,
/// expressed in the provided single-copy eigenbasis and the A-first ordering.
pub fn typeclass_projector(
    ty: &TypeVector,
    eigenbasis: &CMat,
    space: Space,
    cap: usize,
) -> Result<CMat, ProjectorError> {
    let d = space.d_pair();
    assert_eq!(ty.alphabet_size(), d, "type alphabet must match the pair dimension");
    assert_eq!(ty.word_length() as usize, space.n, "type length must match the slot count");
    let dim = space.dim_full();
    if dim > cap {
        return Err(TensorError::CapExceeded { dim, cap }.into());
    }
    let reshuffle = reshuffle_map(space);
    let u_power = kron_power(eigenbasis, space.n, cap)?;
    let mut p = CMat::zeros(dim, dim);
    let mut word = vec![0usize; space.n];
    loop {
        // check type of the current word
        let mut counts = vec![0u32; d];
        for &x in &word {
            counts[x] += 1;
        }
        if counts == ty.counts() {
            let mut std_idx = 0usize;
            for &x in &word {
                std_idx = std_idx * d + x;
            }
            let col = u_power.column(std_idx);
            let mut shuffled = CVec::zeros(dim);
            for (i, &j) in reshuffle.iter().enumerate() {
                shuffled[j] = col[i];
            }
            p += &shuffled * shuffled.adjoint();
        }
        // next word
        let mut k = space.n;
        loop {
            if k == 0 {
                return Ok(p);
            }
            k -= 1;
            word[k] += 1;
            if word[k] < d {
                break;
            }
            word[k] = 0;
        }
    }
}

/// `tr(P_λ σ^{⊗n})` from the spectrum alone, via class sums and power sums.
/// This is the scalar route used for large sweeps; the dense route through
/// [`central_projector`] is its cross-check.
pub fn isotypic_weight(frame: &YoungFrame, spectrum: &[f64], table: &CharacterTable) -> f64 {
    let n = table.degree();
    assert_eq!(frame.boxes(), n);
    let dim_f = frame.dim_irrep().expect("frame within exact range") as f64;
    let frame_idx = table.frame_index(frame).expect("frame of matching size");
    let max_len = n as usize;
    let power_sums: Vec<f64> = (0..=max_len)
        .map(|k| spectrum.iter().map(|s| s.powi(k as i32)).sum())
        .collect();
    let mut total = 0.0f64;
    for (ci, class) in table.classes().iter().enumerate() {
        let chi = table.value(frame_idx, ci) as f64;
        if chi == 0.0 {
            continue;
        }
        let weight: f64 = class.frame().parts().iter().map(|&k| power_sums[k as usize]).product();
        total += class.class_size() as f64 * chi * weight;
    }
    total * dim_f / factorial(n) as f64
}

/// Identity-resolution defect `‖Σ_λ P_λ − 1‖` of a central projector set.
pub fn completeness_defect(centrals: &[CentralProjector]) -> f64 {
    let dim = centrals[0].mat.nrows();
    let mut sum = CMat::zeros(dim, dim);
    for c in centrals {
        sum += &c.mat;
    }
    op_norm(&(sum - CMat::identity(dim, dim)))
}

/// Word vector `⊗_i e_i^{⊗N(i)}` (letters in increasing order) in the
/// A-first ordering, for the standard basis.
pub fn canonical_word_vector(ty: &TypeVector, space: Space) -> CVec {
    let d = space.d_pair();
    assert_eq!(ty.alphabet_size(), d);
    let mut std_idx = 0usize;
    for (letter, &count) in ty.counts().iter().enumerate() {
        for _ in 0..count {
            std_idx = std_idx * d + letter;
        }
    }
    let reshuffle = reshuffle_map(space);
    let mut v = CVec::zeros(space.dim_full());
    v[reshuffle[std_idx]] = C64::new(1.0, 0.0);
    v
}
