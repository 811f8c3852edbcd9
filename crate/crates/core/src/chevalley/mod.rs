//! Simple Lie algebras in a Chevalley basis.
//!
//! Basis order: `h_1..h_r`, then `x_α` for the positive roots in root-system
//! order, then `y_α = e_{−α}` in the same order. Basis index `r + k` holds
//! the root vector of root index `k` (see [`RootSystem`]).

mod constants;
mod json;
mod maps;
mod traceforms;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{GaussianRational as GR, Matrix};
use crate::roots::{CartanType, RootSystem};

pub use json::{AlgebraData, BracketEntry, Term};
pub use maps::{chevalley_involution, minus_psi, AlgebraMap, PsiAudit};
pub use traceforms::{
    cartan_reflection, cartan_trace_form, is_w_invariant, restrict_to_cartan, trace_form,
    trace_form_values, verify_minus_psi, verify_minus_psi_sampled, MinusPsiReport,
    SYMBOLIC_DIM_LIMIT,
};

/// Sparse vector: `(basis index, coefficient)` pairs, indices increasing.
pub type SparseInt = Vec<(usize, i64)>;

/// What was verified while building an algebra.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BuildAudit {
    pub graded: bool,
    pub antisymmetric: bool,
    pub jacobi_triples_checked: usize,
    pub jacobi: bool,
    pub sl2_triples: bool,
    pub string_lengths: bool,
    pub killing_symmetric: bool,
    pub killing_invariant: bool,
    pub killing_determinant: String,
}

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    roots: RootSystem,
    dim: usize,
    table: Vec<SparseInt>,
    constants: HashMap<(usize, usize), i64>,
    extraspecial: HashMap<usize, (usize, usize)>,
    killing: Vec<SparseInt>,
    audit: BuildAudit,
}

impl ChevalleyAlgebra {
    /// Builds the algebra and runs every structural audit; an audit failure
    /// is reported as [`Error::Construction`].
    pub fn build(t: CartanType) -> Result<Self> {
        let roots = RootSystem::new(t);
        let r = roots.rank();
        let nroots = roots.num_roots();
        let dim = r + nroots;

        let mut sc = constants::StructureConstants::new(&roots);
        let mut constants = HashMap::new();
        let mut string_lengths = true;
        for a in 0..nroots {
            for b in 0..nroots {
                if roots.sum(a, b).is_some() {
                    let n = sc.get(a, b);
                    string_lengths &= n.abs() == roots.string_down(a, b) + 1;
                    constants.insert((a, b), n);
                }
            }
        }
        let extraspecial: HashMap<usize, (usize, usize)> = (0..roots.num_positive())
            .filter_map(|eta| sc.extraspecial_pair(eta).map(|p| (eta, p)))
            .collect();

        let mut table = vec![SparseInt::new(); dim * dim];
        for a in 0..nroots {
            let rho = roots.root(a);
            for i in 0..r {
                let c = roots.coroot_pairing(&rho, i);
                if c != 0 {
                    table[i * dim + r + a] = vec![(r + a, c)];
                    table[(r + a) * dim + i] = vec![(r + a, -c)];
                }
            }
            for b in 0..nroots {
                let entry = if b == roots.negate(a) {
                    roots
                        .coroot_coefficients(a)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| *c != 0)
                        .collect()
                } else {
                    match (roots.sum(a, b), constants.get(&(a, b))) {
                        (Some(s), Some(&n)) if n != 0 => vec![(r + s, n)],
                        _ => Vec::new(),
                    }
                };
                table[(r + a) * dim + r + b] = entry;
            }
        }

        let mut alg = ChevalleyAlgebra {
            roots,
            dim,
            table,
            constants,
            extraspecial,
            killing: Vec::new(),
            audit: BuildAudit {
                graded: false,
                antisymmetric: false,
                jacobi_triples_checked: 0,
                jacobi: false,
                sl2_triples: false,
                string_lengths,
                killing_symmetric: false,
                killing_invariant: false,
                killing_determinant: String::new(),
            },
        };
        alg.audit.graded = alg.check_grading();
        alg.audit.antisymmetric = alg.check_antisymmetry();
        let (checked, jacobi) = alg.check_jacobi();
        alg.audit.jacobi_triples_checked = checked;
        alg.audit.jacobi = jacobi;
        alg.audit.sl2_triples = alg.check_sl2_triples();
        alg.killing = alg.compute_killing();
        alg.audit.killing_symmetric = alg.check_killing_symmetric();
        alg.audit.killing_invariant = alg.check_killing_invariant();
        let det = alg.killing_matrix().det()?;
        alg.audit.killing_determinant = det.to_string();

        let a = &alg.audit;
        let failed = [
            (a.graded, "grading"),
            (a.antisymmetric, "antisymmetry"),
            (a.jacobi, "Jacobi identity"),
            (a.sl2_triples, "sl2-triples"),
            (a.string_lengths, "|N| = p + 1"),
            (a.killing_symmetric, "Killing form symmetry"),
            (a.killing_invariant, "Killing form invariance"),
            (!det.is_zero(), "Killing form nondegeneracy"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok);
        if let Some((_, what)) = failed {
            return Err(Error::Construction(format!("{t}: {what} audit failed")));
        }
        Ok(alg)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.roots.cartan_type()
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn audit(&self) -> &BuildAudit {
        &self.audit
    }

    /// Root index of a basis vector, or `None` for Cartan elements.
    pub fn root_of_basis(&self, i: usize) -> Option<usize> {
        i.checked_sub(self.rank())
    }

    pub fn basis_of_root(&self, k: usize) -> usize {
        self.rank() + k
    }

    /// `N_{a,b}` for root indices; zero when `a + b` is not a root.
    pub fn structure_constant(&self, a: usize, b: usize) -> i64 {
        self.constants.get(&(a, b)).copied().unwrap_or(0)
    }

    /// Extraspecial pair of a non-simple positive root.
    pub fn extraspecial_pair(&self, eta: usize) -> Option<(usize, usize)> {
        self.extraspecial.get(&eta).copied()
    }

    /// `[e_i, e_j]` as a sparse integer vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i * self.dim + j]
    }

    /// Weight of a basis vector in root coordinates (zero on the Cartan).
    pub fn weight(&self, i: usize) -> Vec<i64> {
        match self.root_of_basis(i) {
            Some(k) => self.roots.root(k),
            None => vec![0; self.rank()],
        }
    }

    /// Label such as `h1`, `x:alpha1+alpha2` or `y:2alpha1+3alpha2`.
    pub fn basis_label(&self, i: usize) -> String {
        match self.root_of_basis(i) {
            None => format!("h{}", i + 1),
            Some(k) => {
                let n = self.roots.num_positive();
                let (prefix, pos) = if k < n { ("x", k) } else { ("y", k - n) };
                format!("{prefix}:{}", root_label(&self.roots.root(pos)))
            }
        }
    }

    pub fn basis_labels(&self) -> Vec<String> {
        (0..self.dim).map(|i| self.basis_label(i)).collect()
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        (0..self.dim).find(|&i| self.basis_label(i) == label)
    }

    /// `[u, v]` for coefficient vectors.
    pub fn bracket(&self, u: &[GR], v: &[GR]) -> Result<Vec<GR>> {
        self.check_len(u.len())?;
        self.check_len(v.len())?;
        let mut out = vec![GR::ZERO; self.dim];
        let nz_v: Vec<usize> = (0..self.dim).filter(|&j| !v[j].is_zero()).collect();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for &j in &nz_v {
                let uv = ui * &v[j];
                for &(k, c) in self.bracket_basis(i, j) {
                    out[k] += &(&uv * &GR::from_int(c));
                }
            }
        }
        Ok(out)
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n == self.dim {
            Ok(())
        } else {
            Err(Error::Arity {
                expected: self.dim,
                found: n,
            })
        }
    }

    /// Matrix of `ad e_i` (column `j` holds `[e_i, e_j]`).
    pub fn ad_basis(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for &(k, c) in self.bracket_basis(i, j) {
                m[(k, j)] = GR::from_int(c);
            }
        }
        m
    }

    /// Matrix of `ad X = [X, ·]`.
    pub fn ad_matrix(&self, x: &[GR]) -> Result<Matrix> {
        self.check_len(x.len())?;
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for &(k, c) in self.bracket_basis(i, j) {
                    m[(k, j)] += &(xi * &GR::from_int(c));
                }
            }
        }
        Ok(m)
    }

    /// Killing form `κ(e_i, e_j) = tr(ad e_i ∘ ad e_j)` as sparse rows.
    pub fn killing_rows(&self) -> &[SparseInt] {
        &self.killing
    }

    pub fn killing_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, row) in self.killing.iter().enumerate() {
            for &(j, c) in row {
                m[(i, j)] = GR::from_int(c);
            }
        }
        m
    }

    fn killing_entry(&self, i: usize, j: usize) -> i64 {
        self.killing[i]
            .iter()
            .find(|(k, _)| *k == j)
            .map_or(0, |(_, c)| *c)
    }

    /// First basis pair `(i, j)` with `M[e_i, e_j] ≠ [M e_i, M e_j]`, or
    /// `None` if `M` is a Lie algebra homomorphism.
    pub fn homomorphism_defect(&self, m: &Matrix) -> Result<Option<(usize, usize)>> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Dimension(format!(
                "map of size {}x{} on an algebra of dimension {}",
                m.rows(),
                m.cols(),
                self.dim
            )));
        }
        let cols: Vec<Vec<(usize, GR)>> = (0..self.dim)
            .map(|j| {
                (0..self.dim)
                    .filter(|&i| !m[(i, j)].is_zero())
                    .map(|i| (i, m[(i, j)].clone()))
                    .collect()
            })
            .collect();
        let defect = (0..self.dim).into_par_iter().find_map_first(|i| {
            let mut lhs = vec![GR::ZERO; self.dim];
            let mut rhs = vec![GR::ZERO; self.dim];
            for j in i + 1..self.dim {
                lhs.iter_mut().for_each(|x| *x = GR::ZERO);
                rhs.iter_mut().for_each(|x| *x = GR::ZERO);
                for &(k, c) in self.bracket_basis(i, j) {
                    let c = GR::from_int(c);
                    for (l, v) in &cols[k] {
                        lhs[*l] += &(&c * v);
                    }
                }
                for (a, u) in &cols[i] {
                    for (b, v) in &cols[j] {
                        let uv = u * v;
                        for &(l, c) in self.bracket_basis(*a, *b) {
                            rhs[l] += &(&uv * &GR::from_int(c));
                        }
                    }
                }
                if lhs != rhs {
                    return Some((i, j));
                }
            }
            None
        });
        Ok(defect)
    }

    fn check_grading(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let w: Vec<i64> = self
                    .weight(i)
                    .iter()
                    .zip(self.weight(j))
                    .map(|(a, b)| a + b)
                    .collect();
                self.bracket_basis(i, j).iter().all(|&(k, _)| self.weight(k) == w)
            })
        })
    }

    fn check_antisymmetry(&self) -> bool {
        (0..self.dim).all(|i| {
            self.bracket_basis(i, i).is_empty()
                && (i + 1..self.dim).all(|j| {
                    let a = self.bracket_basis(i, j);
                    let b = self.bracket_basis(j, i);
                    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.0 == y.0 && x.1 == -y.1)
                })
        })
    }

    /// Jacobi on every basis triple `i < j < k`. Triples whose total weight
    /// is neither zero nor a root are skipped: every term lies in a zero
    /// weight space there, which the grading audit already covers.
    fn check_jacobi(&self) -> (usize, bool) {
        let r = self.rank();
        let weights: Vec<Vec<i64>> = (0..self.dim).map(|i| self.weight(i)).collect();
        let results: Vec<(usize, bool)> = (0..self.dim)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![0i64; self.dim];
                let mut checked = 0;
                for j in i + 1..self.dim {
                    for k in j + 1..self.dim {
                        let w: Vec<i64> = (0..r)
                            .map(|t| weights[i][t] + weights[j][t] + weights[k][t])
                            .collect();
                        if w.iter().any(|&c| c != 0) && self.roots.index_of(&w).is_none() {
                            continue;
                        }
                        checked += 1;
                        let mut touched = Vec::new();
                        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                            for &(l, x) in self.bracket_basis(a, b) {
                                for &(m, y) in self.bracket_basis(l, c) {
                                    acc[m] += x * y;
                                    touched.push(m);
                                }
                            }
                        }
                        let ok = touched.iter().all(|&m| acc[m] == 0);
                        touched.iter().for_each(|&m| acc[m] = 0);
                        if !ok {
                            return (checked, false);
                        }
                    }
                }
                (checked, true)
            })
            .collect();
        (
            results.iter().map(|x| x.0).sum(),
            results.iter().all(|x| x.1),
        )
    }

    /// `[x_α, y_α] = h_α`, `[h_α, x_α] = 2x_α`, `[h_α, y_α] = −2y_α`.
    fn check_sl2_triples(&self) -> bool {
        let r = self.rank();
        (0..self.roots.num_positive()).all(|a| {
            let x = r + a;
            let y = r + self.roots.negate(a);
            let h = self.bracket_basis(x, y);
            if h.iter().any(|&(k, _)| k >= r) {
                return false;
            }
            let act = |v: usize| -> i64 {
                h.iter()
                    .map(|&(i, c)| {
                        c * self.bracket_basis(i, v).first().map_or(0, |&(_, d)| d)
                    })
                    .sum()
            };
            act(x) == 2 && act(y) == -2
        })
    }

    /// Only pairs of opposite weight can pair nontrivially: `ad e_i ad e_j`
    /// shifts weights by `wt(i) + wt(j)`, so its trace vanishes otherwise.
    fn compute_killing(&self) -> Vec<SparseInt> {
        let r = self.rank();
        let partners = |i: usize| -> Vec<usize> {
            match self.root_of_basis(i) {
                None => (0..r).collect(),
                Some(k) => vec![r + self.roots.negate(k)],
            }
        };
        (0..self.dim)
            .map(|i| {
                partners(i)
                    .into_iter()
                    .map(|j| {
                        let mut t = 0i64;
                        for k in 0..self.dim {
                            for &(l, c) in self.bracket_basis(j, k) {
                                for &(m, d) in self.bracket_basis(i, l) {
                                    if m == k {
                                        t += c * d;
                                    }
                                }
                            }
                        }
                        (j, t)
                    })
                    .filter(|(_, t)| *t != 0)
                    .collect()
            })
            .collect()
    }

    fn check_killing_symmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            self.killing[i]
                .iter()
                .all(|&(j, c)| self.killing_entry(j, i) == c)
        })
    }

    /// `κ([x, y], z) + κ(y, [x, z]) = 0` on all basis triples.
    fn check_killing_invariant(&self) -> bool {
        (0..self.dim).into_par_iter().all(|x| {
            (0..self.dim).all(|y| {
                (0..self.dim).all(|z| {
                    let lhs: i64 = self
                        .bracket_basis(x, y)
                        .iter()
                        .map(|&(l, c)| c * self.killing_entry(l, z))
                        .sum();
                    let rhs: i64 = self
                        .bracket_basis(x, z)
                        .iter()
                        .map(|&(l, c)| c * self.killing_entry(y, l))
                        .sum();
                    lhs + rhs == 0
                })
            })
        })
    }
}

/// `alpha1+alpha2`, `2alpha1+3alpha2`; negative coefficients are not used.
pub fn root_label(v: &[i64]) -> String {
    v.iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, &c)| {
            if c == 1 {
                format!("alpha{}", i + 1)
            } else {
                format!("{c}alpha{}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> ChevalleyAlgebra {
        ChevalleyAlgebra::build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let a = build("A1");
        assert_eq!(a.dimension(), 3);
        assert_eq!(a.bracket_basis(0, 1), &[(1, 2)]);
        assert_eq!(a.bracket_basis(0, 2), &[(2, -2)]);
        assert_eq!(a.bracket_basis(1, 2), &[(0, 1)]);
        assert_eq!(a.basis_labels(), vec!["h1", "x:alpha1", "y:alpha1"]);
        let h = [GR::ONE, GR::ZERO, GR::ZERO];
        assert_eq!(
            a.ad_matrix(&h).unwrap(),
            Matrix::diagonal(&[GR::ZERO, GR::from_int(2), GR::from_int(-2)])
        );
    }

    #[test]
    fn dimensions_and_audits_all_types() {
        for t in CartanType::all_up_to_rank(8) {
            let a = ChevalleyAlgebra::build(t).unwrap();
            assert_eq!(a.dimension(), t.algebra_dimension(), "{t}");
            assert!(a.audit().jacobi_triples_checked > 0 || t.rank() == 1);
        }
    }

    #[test]
    fn g2_labels_and_constants() {
        let a = build("G2");
        assert_eq!(a.dimension(), 14);
        assert_eq!(a.basis_label(2 + 5), "x:2alpha1+3alpha2");
        assert_eq!(a.index_of_label("y:alpha1+alpha2"), Some(2 + 6 + 2));
        // The α2-string through α1 has length 3, so |N| runs through 1, 2, 3.
        let rs = a.root_system();
        let mut seen: Vec<i64> = (0..rs.num_roots())
            .flat_map(|x| (0..rs.num_roots()).map(move |y| (x, y)))
            .map(|(x, y)| a.structure_constant(x, y).abs())
            .filter(|n| *n != 0)
            .collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen, vec![1, 2, 3]);
    }

    #[test]
    fn ad_is_traceless_and_kills_its_argument() {
        let a = build("B2");
        let x: Vec<GR> = (0..a.dimension()).map(|i| GR::frac(i as i64 * 3 - 7, 5)).collect();
        let ad = a.ad_matrix(&x).unwrap();
        assert!(ad.trace().is_zero());
        assert!(a.bracket(&x, &x).unwrap().iter().all(GR::is_zero));
        // ad is a homomorphism: ad [x, y] = [ad x, ad y].
        let y: Vec<GR> = (0..a.dimension()).map(|i| GR::from_int((i * i % 7) as i64)).collect();
        let xy = a.bracket(&x, &y).unwrap();
        assert_eq!(a.ad_matrix(&xy).unwrap(), ad.commutator(&a.ad_matrix(&y).unwrap()));
    }

    #[test]
    fn killing_form_of_sl2() {
        let a = build("A1");
        assert_eq!(
            a.killing_matrix(),
            Matrix::from_ints(&[vec![8, 0, 0], vec![0, 0, 4], vec![0, 4, 0]])
        );
    }

    #[test]
    fn identity_is_a_homomorphism_and_scaling_is_not() {
        let a = build("A2");
        let id = Matrix::identity(a.dimension());
        assert_eq!(a.homomorphism_defect(&id).unwrap(), None);
        let two = Matrix::scalar(a.dimension(), GR::from_int(2));
        assert!(a.homomorphism_defect(&two).unwrap().is_some());
    }
}
