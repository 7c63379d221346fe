//! Products assembled from compatible ingredients `(*_i, A_i)` and projections `f_i`.

use serde::Serialize;

use super::{Carrier, FamilyError, Params, Presemifield, Provenance};
use crate::bilinear::{unit, Bilinear};
use crate::linalg::{Matrix, Subspace};

/// Ingredient products with their subgroups.
#[derive(Clone, Debug)]
pub struct CompatiblePair {
    pub ops: Vec<Bilinear>,
    pub subgroups: Vec<Subspace>,
}

/// Ingredients together with the linear maps `f_i`, `ker f_i = A_i`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub pair: CompatiblePair,
    pub maps: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityWitness {
    pub x: u64,
    pub y: u64,
}

/// A matrix whose kernel is exactly `a`.
fn annihilating_matrix(a: &Subspace, p: u32) -> Matrix {
    let n = a.ambient_dim();
    if a.dim() == 0 {
        return Matrix::identity(p, n);
    }
    let rows = Matrix::from_rows(p, a.basis()).kernel();
    if rows.is_empty() {
        return Matrix::zeros(p, 0, n);
    }
    Matrix::from_rows(p, &rows)
}

fn check_shapes(ops: &[Bilinear], subgroups: &[Subspace]) -> Result<(u32, usize), FamilyError> {
    let first = ops.first().ok_or(FamilyError::DimensionMismatch)?;
    let (p, dim) = (first.p(), first.dim());
    if ops.len() != subgroups.len()
        || ops.iter().any(|o| o.p() != p || o.dim() != dim)
        || subgroups.iter().any(|s| s.ambient_dim() != dim)
    {
        return Err(FamilyError::DimensionMismatch);
    }
    Ok((p, dim))
}

/// The first nonzero pair `(x, y)`, by index of `x`, with `x *_i y ∈ A_i` for every `i`.
///
/// For each `x` the `y` in question form the kernel of the stacked maps
/// `y ↦ P_i(x *_i y)` with `ker P_i = A_i`, so every pair is covered.
pub fn compatibility_witness(
    ops: &[Bilinear],
    subgroups: &[Subspace],
) -> Result<Option<CompatibilityWitness>, FamilyError> {
    let (p, dim) = check_shapes(ops, subgroups)?;
    let proj: Vec<Matrix> = subgroups
        .iter()
        .map(|a| annihilating_matrix(a, p))
        .collect();
    let order = (p as u64).pow(dim as u32);
    let found = crate::exec::Exec::current().find_first(1..order, |x| {
        let xv = ops[0].vector(x);
        let mut stacked = Matrix::zeros(p, 0, dim);
        for (op, pm) in ops.iter().zip(&proj) {
            stacked.vstack(&pm.mul(&op.left_matrix(&xv)));
        }
        let ker = stacked.kernel();
        ker.first().map(|y| {
            let span = Subspace::span(p, dim, &ker);
            let y = span
                .elements()
                .into_iter()
                .map(|v| ops[0].index(&v))
                .filter(|&i| i != 0)
                .min()
                .unwrap_or_else(|| ops[0].index(y));
            CompatibilityWitness { x, y }
        })
    });
    Ok(found)
}

/// Whether no nonzero pair lands every product in its subgroup.
pub fn compatibility_check(ops: &[Bilinear], subgroups: &[Subspace]) -> Result<bool, FamilyError> {
    Ok(compatibility_witness(ops, subgroups)?.is_none())
}

fn image(m: &Matrix) -> Subspace {
    Subspace::span(m.p(), m.rows(), &m.transpose().rows_vec())
}

fn kernel(m: &Matrix) -> Subspace {
    Subspace::span(m.p(), m.cols(), &m.kernel())
}

/// `x ∘ y = Σ f_i(x *_i y)`, certified.
pub fn projection_product(
    pair: &CompatiblePair,
    maps: &[Matrix],
    carrier: Carrier,
) -> Result<Presemifield, FamilyError> {
    let (p, dim) = check_shapes(&pair.ops, &pair.subgroups)?;
    if maps.len() != pair.ops.len() || maps.iter().any(|f| f.rows() != dim || f.cols() != dim) {
        return Err(FamilyError::DimensionMismatch);
    }
    for (f, a) in maps.iter().zip(&pair.subgroups) {
        if kernel(f) != *a {
            return Err(FamilyError::KernelMismatch);
        }
    }
    let total: usize = maps.iter().map(|f| image(f).dim()).sum();
    let joint = maps
        .iter()
        .fold(Subspace::zero(p, dim), |acc, f| acc.sum(&image(f)));
    if total != dim || joint.dim() != dim {
        return Err(FamilyError::NotDirectSum);
    }
    if !compatibility_check(&pair.ops, &pair.subgroups)? {
        return Err(FamilyError::NotCompatible);
    }
    let mut consts = Vec::with_capacity(dim * dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = vec![0u32; dim];
            for (op, f) in pair.ops.iter().zip(maps) {
                let z = f.mul_vec(op.basis_product(i, j));
                for (a, b) in acc.iter_mut().zip(z) {
                    *a = (*a + b) % p;
                }
            }
            consts.extend(acc);
        }
    }
    Presemifield::new(
        Bilinear::from_consts(p, dim, consts),
        Provenance {
            params: Params::Projection { pieces: maps.len() },
            carrier,
            flags: Vec::new(),
        },
    )
}

/// Splits `P` along `F = ⊕ U_i`: `f_i` projects onto `U_i`, `x *_i y = f_i(x * y)`,
/// `A_i = ⊕_{j≠i} U_j`.
pub fn decompose(pre: &Presemifield, parts: &[Subspace]) -> Result<Decomposition, FamilyError> {
    let (p, dim) = (pre.p(), pre.dim());
    if parts.is_empty() || parts.iter().any(|u| u.ambient_dim() != dim) {
        return Err(FamilyError::DimensionMismatch);
    }
    let cols: Vec<Vec<u32>> = parts
        .iter()
        .flat_map(|u| u.basis().iter().cloned())
        .collect();
    if cols.len() != dim {
        return Err(FamilyError::NotDirectSum);
    }
    let b = Matrix::from_cols(p, &cols);
    let b_inv = b.inverse().ok_or(FamilyError::NotDirectSum)?;
    let id = Matrix::identity(p, dim);
    let mut ops = Vec::new();
    let mut subgroups = Vec::new();
    let mut maps = Vec::new();
    let mut start = 0;
    for (i, u) in parts.iter().enumerate() {
        let mut d = Matrix::zeros(p, dim, dim);
        for k in start..start + u.dim() {
            d.set(k, k, 1);
        }
        start += u.dim();
        let f = b.mul(&d).mul(&b_inv);
        ops.push(pre.product().transform(&f, &id, &id));
        let rest = parts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Subspace::zero(p, dim), |acc, (_, w)| acc.sum(w));
        subgroups.push(rest);
        maps.push(f);
    }
    Ok(Decomposition {
        pair: CompatiblePair { ops, subgroups },
        maps,
    })
}

/// The `k` coordinate lines `⟨e_i⟩` as one-dimensional subspaces.
pub fn coordinate_lines(p: u32, dim: usize) -> Vec<Subspace> {
    (0..dim)
        .map(|i| Subspace::span(p, dim, &[unit(dim, i)]))
        .collect()
}
