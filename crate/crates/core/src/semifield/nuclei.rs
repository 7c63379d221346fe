//! Nuclei and center, by associator kernels and by exhaustive search.

use serde::Serialize;

use super::{left_basis, right_basis, Semifield, SemifieldError};
use crate::bilinear::{index_of, Bilinear};
use crate::exec::Exec;
use crate::families::{c_as_x, Params, XParams};
use crate::field::Element;
use crate::linalg::{Matrix, Subspace};
use crate::tower::Tower;

/// Exhaustive search is refused above this order.
pub const BRUTE_FORCE_MAX_ORDER: u64 = 729;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nucleus {
    pub dim: usize,
    /// `GF(p^dim)`.
    pub field: String,
    pub space: Subspace,
    /// Closed under `∘`.
    pub closed: bool,
    pub contains_identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NucleiReport {
    pub left: Nucleus,
    pub middle: Nucleus,
    pub right: Nucleus,
    pub center: Nucleus,
}

impl NucleiReport {
    /// Prime-field dimensions of `(N_l, N_m, N_r, Z)`.
    pub fn dims(&self) -> [usize; 4] {
        [
            self.left.dim,
            self.middle.dim,
            self.right.dim,
            self.center.dim,
        ]
    }

    fn spaces(&self) -> [&Subspace; 4] {
        [
            &self.left.space,
            &self.middle.space,
            &self.right.space,
            &self.center.space,
        ]
    }

    /// Same subspaces, regardless of how they were found.
    pub fn same_spaces(&self, other: &NucleiReport) -> bool {
        self.spaces() == other.spaces()
    }

    /// `Z ⊆ N_l ∩ N_m ∩ N_r` and each nucleus is a subfield containing `e`.
    pub fn consistent(&self) -> bool {
        let z = &self.center.space;
        let inside = [&self.left.space, &self.middle.space, &self.right.space]
            .iter()
            .all(|n| z.basis().iter().all(|v| n.contains(v)));
        let fields = [&self.left, &self.middle, &self.right, &self.center]
            .iter()
            .all(|n| n.closed && n.contains_identity);
        inside && fields
    }
}

fn nucleus(circ: &Bilinear, e: &[u32], space: Subspace) -> Nucleus {
    let b = space.basis();
    let closed = b
        .iter()
        .all(|u| b.iter().all(|v| space.contains(&circ.mul(u, v))));
    let contains_identity = space.contains(e);
    let dim = space.dim();
    Nucleus {
        dim,
        field: format!("GF({}^{})", circ.p(), dim),
        space,
        closed,
        contains_identity,
    }
}

fn kernel_of(p: u32, dim: usize, mats: Vec<Matrix>) -> Subspace {
    let mut stacked = Matrix::zeros(p, 0, dim);
    for m in &mats {
        stacked.vstack(m);
    }
    Subspace::span(p, dim, &stacked.kernel())
}

fn report(s: &Semifield, spaces: [Subspace; 4]) -> NucleiReport {
    let e = s.circ().vector(s.identity());
    let [l, m, r, z] = spaces.map(|sp| nucleus(s.circ(), &e, sp));
    NucleiReport {
        left: l,
        middle: m,
        right: r,
        center: z,
    }
}

/// Each nucleus as the common kernel of the associator maps on basis pairs.
pub fn nuclei_linear(s: &Semifield) -> NucleiReport {
    let c = s.circ();
    let (p, d) = (c.p(), c.dim());
    let ls = left_basis(c);
    let rs = right_basis(c);
    let mut left = Vec::new();
    let mut middle = Vec::new();
    let mut right = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let ij = c.basis_product(i, j);
            // (z∘e_i)∘e_j = z∘(e_i∘e_j)
            left.push(rs[j].mul(&rs[i]).sub(&c.right_matrix(ij)));
            // (e_i∘z)∘e_j = e_i∘(z∘e_j)
            middle.push(rs[j].mul(&ls[i]).sub(&ls[i].mul(&rs[j])));
            // (e_i∘e_j)∘z = e_i∘(e_j∘z)
            right.push(c.left_matrix(ij).sub(&ls[i].mul(&ls[j])));
        }
    }
    let mut center: Vec<Matrix> = left.iter().chain(&middle).chain(&right).cloned().collect();
    center.extend((0..d).map(|i| rs[i].sub(&ls[i])));
    report(
        s,
        [
            kernel_of(p, d, left),
            kernel_of(p, d, middle),
            kernel_of(p, d, right),
            kernel_of(p, d, center),
        ],
    )
}

/// Each nucleus by testing every element against every pair in the table.
pub fn nuclei_bruteforce(s: &Semifield) -> Result<NucleiReport, SemifieldError> {
    let order = s.order();
    if order > BRUTE_FORCE_MAX_ORDER {
        return Err(SemifieldError::OrderTooLarge { order });
    }
    let owned;
    let t = match s.table() {
        Some(t) => t,
        None => {
            owned = s.circ().table_unchecked();
            &owned
        }
    };
    let q = order as usize;
    let flags = Exec::current().map_range(0..order, |z| {
        let z = z as usize;
        let rz = t.row(z);
        let in_left = (0..q).all(|x| {
            let r = t.row(rz[x] as usize);
            let rx = t.row(x);
            (0..q).all(|y| r[y] == rz[rx[y] as usize])
        });
        let in_middle = (0..q).all(|x| {
            let rx = t.row(x);
            let r = t.row(rx[z] as usize);
            (0..q).all(|y| r[y] == rx[rz[y] as usize])
        });
        let in_right = (0..q).all(|x| {
            let rx = t.row(x);
            (0..q).all(|y| t.get(rx[y] as usize, z) == rx[t.get(y, z) as usize])
        });
        let commutes = (0..q).all(|x| rz[x] == t.get(x, z));
        [
            in_left,
            in_middle,
            in_right,
            in_left && in_middle && in_right && commutes,
        ]
    });
    let (p, d) = (s.p(), s.dim());
    let spaces = [0, 1, 2, 3].map(|k| {
        let members: Vec<Vec<u32>> = flags
            .iter()
            .enumerate()
            .filter(|(_, f)| f[k])
            .map(|(z, _)| s.circ().vector(z as u64))
            .collect();
        let space = Subspace::span(p, d, &members);
        assert_eq!(
            (p as usize).pow(space.dim() as u32),
            members.len(),
            "a nucleus found by search is not a subspace"
        );
        space
    });
    Ok(report(s, spaces))
}

fn x_params_of(params: &Params, tw: &Tower) -> Result<(usize, XParams), SemifieldError> {
    let l = tw.l();
    match params {
        Params::X {
            s,
            v,
            l: lv,
            n,
            big_n,
        } => Ok((
            *s,
            XParams {
                v: v.clone(),
                l: lv.clone(),
                n: n.clone(),
                big_n: big_n.clone(),
            },
        )),
        Params::B { s, l: lv, n, big_n } => Ok((
            *s,
            XParams {
                v: l.one(),
                l: lv.clone(),
                n: n.clone(),
                big_n: big_n.clone(),
            },
        )),
        Params::C { s, l: lv, r } => Ok((*s, c_as_x(l, lv, r))),
        other => Err(SemifieldError::WrongFamily(other.family())),
    }
}

/// Whether `(c, d)` lies in the middle nucleus of the isotope with identity `(1, 0)`
/// of a member of X, B or C, from the two defining equations.
pub fn middle_nucleus_membership(
    tw: &Tower,
    s: &Semifield,
    c: &Element,
    d: &Element,
) -> Result<bool, SemifieldError> {
    let (sig, x) = x_params_of(s.base().params(), tw)?;
    let k = tw.l();
    let sg = |z: &Element| k.frobenius_any(z, sig);
    let nv = k.mul(&x.n, &x.v);
    let nn = k.mul(&x.n, &x.big_n);
    let w = k.mul(&nv, &k.add(d, &k.mul(&x.big_n, &sg(d))));
    let first = k.sub(c, &sg(&sg(c))) == k.sub(&sg(&w), &w);
    let c_diff = k.sub(c, &sg(c));
    let lhs = k.add(
        &k.mul(&sg(&nv), &sg(&c_diff)),
        &k.mul(&k.mul(&nv, &x.big_n), &c_diff),
    );
    let rhs = k.sub(&k.mul(&sg(&nn), &sg(&sg(d))), &k.mul(&nn, d));
    Ok(first && lhs == rhs)
}

/// Index of the pair `(c, d)` as a vector of the `L²` carrier.
pub fn pair_vector_index(tw: &Tower, c: &Element, d: &Element) -> u64 {
    let mut v = c.coeffs().to_vec();
    v.extend_from_slice(d.coeffs());
    index_of(tw.p(), &v)
}
