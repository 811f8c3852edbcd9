//! Linear maps of the algebra: the Chevalley involution ψ and −ψ.

use serde::Serialize;

use super::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::exact::{GaussianRational as GR, Matrix};

/// A linear map on the algebra's basis (column `j` is the image of `e_j`).
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AlgebraMap {
    pub matrix: Matrix,
    pub is_automorphism: bool,
    /// Multiplicative order if at most [`AlgebraMap::ORDER_LIMIT`].
    pub order: Option<usize>,
}

impl AlgebraMap {
    pub const ORDER_LIMIT: usize = 12;

    pub fn new(alg: &ChevalleyAlgebra, matrix: Matrix) -> Result<Self> {
        let is_automorphism = alg.homomorphism_defect(&matrix)?.is_none();
        let order = order(&matrix, Self::ORDER_LIMIT);
        Ok(AlgebraMap {
            matrix,
            is_automorphism,
            order,
        })
    }
}

fn order(m: &Matrix, limit: usize) -> Option<usize> {
    let mut acc = m.clone();
    for k in 1..=limit {
        if acc.is_identity() {
            return Some(k);
        }
        acc = &acc * m;
    }
    None
}

/// What the construction of ψ verified.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PsiAudit {
    pub squares_to_identity: bool,
    pub is_automorphism: bool,
    pub preserves_killing_form: bool,
    /// `ε_β` with `ψ(x_β) = ε_β·y_β`, for every positive root in order.
    pub signs: Vec<i64>,
}

/// ψ with `ψ(h_i) = −h_i` and `ψ(x_α) = −y_α`, `ψ(y_α) = −x_α` for simple
/// `α`, extended along extraspecial pairs: `x_η = [x_α, x_β]/N_{α,β}`.
pub fn chevalley_involution(alg: &ChevalleyAlgebra) -> Result<(AlgebraMap, PsiAudit)> {
    let rs = alg.root_system();
    let r = alg.rank();
    let n = rs.num_positive();
    let dim = alg.dimension();
    let mut images: Vec<Option<Vec<GR>>> = vec![None; dim];
    let unit = |i: usize, c: i64| {
        let mut v = vec![GR::ZERO; dim];
        v[i] = GR::from_int(c);
        v
    };
    for (i, img) in images.iter_mut().enumerate().take(r) {
        *img = Some(unit(i, -1));
    }
    for k in 0..n {
        let (x, y) = (r + k, r + n + k);
        match alg.extraspecial_pair(k) {
            None => {
                images[x] = Some(unit(y, -1));
                images[y] = Some(unit(x, -1));
            }
            Some((a, b)) => {
                for (target, pa, pb) in [(x, a, b), (y, rs.negate(a), rs.negate(b))] {
                    let (ia, ib) = (r + pa, r + pb);
                    let u = images[ia].as_ref().unwrap();
                    let v = images[ib].as_ref().unwrap();
                    let nab = GR::from_int(alg.structure_constant(pa, pb));
                    let img: Vec<GR> = alg.bracket(u, v)?.iter().map(|c| c / &nab).collect();
                    images[target] = Some(img);
                }
            }
        }
    }
    let cols: Vec<Vec<GR>> = images.into_iter().map(Option::unwrap).collect();
    let matrix = Matrix::from_columns(&cols);

    let mut signs = Vec::with_capacity(n);
    for k in 0..n {
        let col = &cols[r + k];
        let eps = &col[r + n + k];
        let only = col.iter().enumerate().all(|(i, c)| i == r + n + k || c.is_zero());
        if !only || !(eps.is_one() || (-eps).is_one()) {
            return Err(Error::Construction(format!(
                "ψ({}) is not ±{}",
                alg.basis_label(r + k),
                alg.basis_label(r + n + k)
            )));
        }
        signs.push(if eps.is_one() { 1 } else { -1 });
    }
    let squares_to_identity = (&matrix * &matrix).is_identity();
    let map = AlgebraMap::new(alg, matrix)?;
    let kappa = alg.killing_matrix();
    let preserves_killing_form = &(&map.matrix.transpose() * &kappa) * &map.matrix == kappa;
    let audit = PsiAudit {
        squares_to_identity,
        is_automorphism: map.is_automorphism,
        preserves_killing_form,
        signs,
    };
    if !(audit.squares_to_identity && audit.is_automorphism && audit.preserves_killing_form) {
        return Err(Error::Construction(format!(
            "{}: Chevalley involution audit failed",
            alg.cartan_type()
        )));
    }
    Ok((map, audit))
}

/// `−ψ`, with its automorphism flag computed (expected `false`).
pub fn minus_psi(alg: &ChevalleyAlgebra) -> Result<AlgebraMap> {
    let (psi, _) = chevalley_involution(alg)?;
    AlgebraMap::new(alg, -&psi.matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::CartanType;

    #[test]
    fn psi_on_every_type() {
        for t in CartanType::all_up_to_rank(8) {
            let alg = ChevalleyAlgebra::build(t).unwrap();
            let (psi, audit) = chevalley_involution(&alg).unwrap();
            assert!(psi.is_automorphism, "{t}");
            assert_eq!(psi.order, Some(2), "{t}");
            assert_eq!(audit.signs.len(), alg.root_system().num_positive());
            for i in 0..t.rank() {
                assert_eq!(psi.matrix[(i, i)], GR::from_int(-1));
            }
        }
    }

    #[test]
    fn minus_psi_is_not_an_automorphism() {
        for t in ["A1", "A2", "B2", "G2", "D4"] {
            let alg = ChevalleyAlgebra::build(t.parse().unwrap()).unwrap();
            let m = minus_psi(&alg).unwrap();
            assert!(!m.is_automorphism, "{t}");
            assert_eq!(m.order, Some(2));
        }
    }

    #[test]
    fn psi_on_simple_root_vectors() {
        let alg = ChevalleyAlgebra::build("B3".parse().unwrap()).unwrap();
        let (psi, _) = chevalley_involution(&alg).unwrap();
        let (r, n) = (3, alg.root_system().num_positive());
        for k in 0..3 {
            assert_eq!(psi.matrix[(r + n + k, r + k)], GR::from_int(-1));
            assert_eq!(psi.matrix[(r + k, r + n + k)], GR::from_int(-1));
        }
    }
}
