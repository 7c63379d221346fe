//! Ganley's commutativity criterion, on the semifield and on the presemifield.

use super::{min_nonzero_index, right_basis, Semifield};
use crate::families::Presemifield;
use crate::linalg::{Matrix, Subspace};

fn common_kernel(p: u32, dim: usize, mats: impl Iterator<Item = Matrix>) -> Subspace {
    let mut stacked = Matrix::zeros(p, 0, dim);
    for m in mats {
        stacked.vstack(&m);
    }
    Subspace::span(p, dim, &stacked.kernel())
}

/// The smallest `w ≠ 0` with `(w∘x)∘y = (w∘y)∘x` for all `x, y`.
pub fn ganley_semifield(s: &Semifield) -> Option<u64> {
    let c = s.circ();
    let (p, d) = (c.p(), c.dim());
    let rs = right_basis(c);
    let mats = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j)));
    let ker = common_kernel(
        p,
        d,
        mats.map(|(i, j)| rs[j].mul(&rs[i]).sub(&rs[i].mul(&rs[j]))),
    );
    min_nonzero_index(&ker)
}

/// The smallest `v ≠ 0` with `α(v*x)*y = α(v*y)*x` for all `x, y`, where `α(x)*1 = x`.
pub fn ganley_presemifield(pre: &Presemifield) -> Option<u64> {
    let b = pre.product();
    let (p, d) = (b.p(), b.dim());
    let rs = right_basis(b);
    let alpha = rs[0].inverse().expect("certified presemifield");
    let mats = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j)));
    let ker = common_kernel(
        p,
        d,
        mats.map(|(i, j)| {
            rs[j]
                .mul(&alpha)
                .mul(&rs[i])
                .sub(&rs[i].mul(&alpha).mul(&rs[j]))
        }),
    );
    min_nonzero_index(&ker)
}
