//! Matrix realizations of the classical algebras and their invariants.
//!
//! `so` and `sp` use anti-diagonal forms so the Cartan subalgebra is
//! diagonal: `S = Σ E_{a,a'}` and `J = Σ s_a E_{a,a'}` with `a' = m − 1 − a`
//! (0-based) and `s_a = 1` for `a < m/2`, `−1` otherwise. The realization
//! basis is listed in Chevalley order, so a polynomial in realization
//! coordinates is a polynomial on the Chevalley algebra.

use serde::Serialize;

use crate::chevalley::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::exact::{GaussianRational as GR, Matrix, PolyMatrix, Polynomial};
use crate::roots::{CartanType, Family};

#[derive(Clone, Debug)]
pub struct MatrixRealization {
    cartan_type: CartanType,
    m: usize,
    form: Option<Matrix>,
    basis: Vec<Matrix>,
}

fn unit(m: usize, a: usize, b: usize) -> Matrix {
    let mut e = Matrix::zeros(m, m);
    e[(a, b)] = GR::ONE;
    e
}

impl MatrixRealization {
    /// The standard realization with diagonal Cartan, in Chevalley order.
    pub fn new(alg: &ChevalleyAlgebra) -> Result<Self> {
        let t = alg.cartan_type();
        let n = t.rank();
        let (m, symplectic) = match t.family() {
            Family::A => (n + 1, false),
            Family::B => (2 * n + 1, false),
            Family::C => (2 * n, true),
            Family::D => (2 * n, false),
            _ => {
                return Err(Error::Unsupported(format!(
                    "no classical matrix realization for {t}"
                )))
            }
        };
        let prime = |a: usize| m - 1 - a;
        let sign = |a: usize| -> i64 {
            if symplectic && a >= m / 2 {
                -1
            } else {
                1
            }
        };
        let form = match t.family() {
            Family::A => None,
            _ => Some(Matrix::from_fn(m, m, |a, b| {
                if b == prime(a) {
                    GR::from_int(sign(a))
                } else {
                    GR::ZERO
                }
            })),
        };
        // Root vector attached to the matrix unit (a, b), completed to the
        // form's algebra by its partner −s_a s_b E_{b',a'}.
        let root_vector = |a: usize, b: usize| -> Matrix {
            let mut x = unit(m, a, b);
            if form.is_some() && (prime(b), prime(a)) != (a, b) {
                x[(prime(b), prime(a))] = GR::from_int(-sign(a) * sign(b));
            }
            x
        };
        let simple: Vec<Matrix> = (0..n)
            .map(|i| match (t.family(), i + 1 == n) {
                (Family::B, true) => root_vector(n - 1, n),
                (Family::C, true) => root_vector(n - 1, n),
                (Family::D, true) => root_vector(n - 2, n),
                _ => root_vector(i, i + 1),
            })
            .collect();

        let rs = alg.root_system();
        let np = rs.num_positive();
        let r = n;
        let mut basis: Vec<Option<Matrix>> = vec![None; alg.dimension()];
        for (i, e) in simple.iter().enumerate() {
            let et = e.transpose();
            let h = e.commutator(&et);
            let lambda = (0..m)
                .flat_map(|a| (0..m).map(move |b| (a, b)))
                .find(|&(a, b)| !e[(a, b)].is_zero())
                .map(|(a, b)| &h.commutator(e)[(a, b)] / &e[(a, b)])
                .unwrap();
            let f = et.scale(&(&GR::from_int(2) / &lambda));
            basis[i] = Some(e.commutator(&f));
            let k = rs.simple(i);
            basis[r + k] = Some(e.clone());
            basis[r + rs.negate(k)] = Some(f);
        }
        for eta in 0..np {
            if let Some((a, b)) = alg.extraspecial_pair(eta) {
                for (target, pa, pb) in [(eta, a, b), (rs.negate(eta), rs.negate(a), rs.negate(b))] {
                    let u = basis[r + pa].clone().unwrap();
                    let v = basis[r + pb].clone().unwrap();
                    let n_ab = GR::from_int(alg.structure_constant(pa, pb));
                    basis[r + target] = Some(u.commutator(&v).scale(&n_ab.inv()));
                }
            }
        }
        let real = MatrixRealization {
            cartan_type: t,
            m,
            form,
            basis: basis.into_iter().map(Option::unwrap).collect(),
        };
        real.audit(alg)?;
        Ok(real)
    }

    /// Bracket compatibility with the Chevalley table on all basis pairs,
    /// form preservation, and diagonal Cartan.
    fn audit(&self, alg: &ChevalleyAlgebra) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::Construction(format!(
                "{} realization: {what}",
                self.cartan_type
            )))
        };
        let dim = alg.dimension();
        for i in 0..dim {
            for j in i + 1..dim {
                let lhs = self.basis[i].commutator(&self.basis[j]);
                let mut rhs = Matrix::zeros(self.m, self.m);
                for &(k, c) in alg.bracket_basis(i, j) {
                    rhs = &rhs + &self.basis[k].scale(&GR::from_int(c));
                }
                if lhs != rhs {
                    return fail(&format!(
                        "[{}, {}] disagrees with the structure constants",
                        alg.basis_label(i),
                        alg.basis_label(j)
                    ));
                }
            }
        }
        if let Some(s) = &self.form {
            for b in &self.basis {
                if !(&(&b.transpose() * s) + &(s * b)).is_zero() {
                    return fail("basis matrix does not preserve the form");
                }
            }
        }
        for h in &self.basis[..alg.rank()] {
            let off = (0..self.m).any(|a| (0..self.m).any(|b| a != b && !h[(a, b)].is_zero()));
            if off {
                return fail("Cartan element is not diagonal");
            }
        }
        Ok(())
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn matrix_size(&self) -> usize {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// The defining form (`S` or `J`); `None` for type A.
    pub fn form(&self) -> Option<&Matrix> {
        self.form.as_ref()
    }

    /// Coordinates of a matrix in the realization basis, if it lies in the span.
    pub fn coordinates(&self, x: &Matrix) -> Option<Vec<GR>> {
        let m2 = self.m * self.m;
        let system = Matrix::from_fn(m2, self.dimension(), |p, j| {
            self.basis[j][(p / self.m, p % self.m)].clone()
        });
        let rhs: Vec<GR> = (0..m2).map(|p| x[(p / self.m, p % self.m)].clone()).collect();
        system.solve(&rhs)
    }

    /// `Σ c_i B_i`.
    pub fn element(&self, coords: &[GR]) -> Matrix {
        coords
            .iter()
            .zip(&self.basis)
            .fold(Matrix::zeros(self.m, self.m), |acc, (c, b)| &acc + &b.scale(c))
    }

    /// The linear map `X ↦ Xᵗ` in basis coordinates.
    pub fn transpose_map(&self) -> Result<Matrix> {
        let cols: Vec<Vec<GR>> = self
            .basis
            .iter()
            .map(|b| {
                self.coordinates(&b.transpose()).ok_or_else(|| {
                    Error::Construction("transpose leaves the realization".into())
                })
            })
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(&cols))
    }

    /// The generic element `X = Σ x_i B_i` with polynomial entries.
    pub fn generic_element(&self) -> PolyMatrix {
        PolyMatrix::generic_element(&self.basis)
    }
}

/// Pfaffian of an antisymmetric polynomial matrix.
pub fn pfaffian(m: &PolyMatrix) -> Result<Polynomial> {
    m.pfaffian()
}

/// Named generators of the invariant ring of the adjoint action, in
/// Chevalley coordinates: `c_k` is the coefficient of `t^{m−k}` in
/// `det(t − X)`, made primitive; `pf` is the Pfaffian of `S·X`.
pub fn classical_invariant_gens(real: &MatrixRealization) -> Result<Vec<(String, Polynomial)>> {
    let t = real.cartan_type();
    let n = t.rank();
    let x = real.generic_element();
    let top = match t.family() {
        Family::A => n + 1,
        Family::D => 2 * n - 2,
        _ => 2 * n,
    };
    let coeffs = x.char_poly_coefficients_upto(top);
    let pick = |k: usize| (format!("c{k}"), coeffs[k - 1].primitive());
    let mut gens: Vec<(String, Polynomial)> = match t.family() {
        Family::A => (2..=n + 1).map(pick).collect(),
        Family::B | Family::C => (1..=n).map(|j| pick(2 * j)).collect(),
        Family::D => (1..n).map(|j| pick(2 * j)).collect(),
        _ => unreachable!("realizations are classical"),
    };
    if t.family() == Family::D {
        let s = PolyMatrix::constant(real.form().unwrap(), x.arity());
        gens.push(("pf".into(), s.mul(&x).pfaffian()?.primitive()));
    }
    Ok(gens)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RaisReport {
    pub n: usize,
    pub generators: Vec<String>,
    pub transpose_fixes_generators: bool,
    pub minus_transpose_is_automorphism: bool,
    pub transpose_is_automorphism: bool,
    /// A basis pair on which the transpose fails to respect brackets.
    pub transpose_defect_pair: Option<[String; 2]>,
    /// `(−transpose)∘ψ⁻¹` is an automorphism (they differ by an automorphism).
    pub minus_transpose_psi_quotient_is_automorphism: bool,
    pub passed: bool,
}

/// On `𝔰𝔩_n`: the transpose fixes every char-poly generator, `−transpose`
/// is a bracket automorphism, and the transpose is not.
pub fn rais_transpose_check(n: usize) -> Result<RaisReport> {
    if n < 2 {
        return Err(Error::Unsupported("transpose check needs n ≥ 2".into()));
    }
    let alg = ChevalleyAlgebra::build(CartanType::new(Family::A, n - 1)?)?;
    let real = MatrixRealization::new(&alg)?;
    let gens = classical_invariant_gens(&real)?;
    let tmap = real.transpose_map()?;
    let mut fixes = true;
    for (_, g) in &gens {
        fixes &= g.compose_linear(&tmap)? == *g;
    }
    let minus = -&tmap;
    let minus_ok = alg.homomorphism_defect(&minus)?.is_none();
    let defect = alg.homomorphism_defect(&tmap)?;
    let (psi, _) = crate::chevalley::chevalley_involution(&alg)?;
    let quotient = &minus * &psi.matrix;
    let quotient_ok = alg.homomorphism_defect(&quotient)?.is_none();
    Ok(RaisReport {
        n,
        generators: gens.iter().map(|(s, _)| s.clone()).collect(),
        transpose_fixes_generators: fixes,
        minus_transpose_is_automorphism: minus_ok,
        transpose_is_automorphism: defect.is_none(),
        transpose_defect_pair: defect.map(|(i, j)| [alg.basis_label(i), alg.basis_label(j)]),
        minus_transpose_psi_quotient_is_automorphism: quotient_ok,
        passed: fixes && minus_ok && defect.is_some() && quotient_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{cartan_reflection, is_w_invariant};
    use crate::roots::invariant_degrees;

    fn realize(s: &str) -> (ChevalleyAlgebra, MatrixRealization) {
        let alg = ChevalleyAlgebra::build(s.parse().unwrap()).unwrap();
        let real = MatrixRealization::new(&alg).unwrap();
        (alg, real)
    }

    #[test]
    fn realizations_up_to_rank_six() {
        for t in CartanType::all_up_to_rank(6) {
            if !t.is_classical() {
                continue;
            }
            let (alg, real) = realize(&t.to_string());
            assert_eq!(real.dimension(), alg.dimension(), "{t}");
        }
        assert_eq!(realize("B2").1.matrix_size(), 5);
        assert_eq!(realize("D3").1.dimension(), realize("A3").1.dimension());
    }

    #[test]
    fn exceptional_types_have_no_realization() {
        let alg = ChevalleyAlgebra::build("G2".parse().unwrap()).unwrap();
        assert!(matches!(MatrixRealization::new(&alg), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sl2_determinant() {
        let (_, real) = realize("A1");
        let gens = classical_invariant_gens(&real).unwrap();
        assert_eq!(gens.len(), 1);
        // det(a·h + b·x + c·y) = −a² − bc; primitive form a² + bc.
        let expected = Polynomial::from_terms(
            3,
            [(vec![2, 0, 0], GR::ONE), (vec![0, 1, 1], GR::ONE)],
        );
        assert_eq!(gens[0].1, expected);
    }

    #[test]
    fn generator_degrees_match_weyl_degrees() {
        for t in CartanType::all_up_to_rank(4) {
            if !t.is_classical() {
                continue;
            }
            let (_, real) = realize(&t.to_string());
            let mut d: Vec<usize> = classical_invariant_gens(&real)
                .unwrap()
                .iter()
                .map(|(_, g)| {
                    assert!(g.is_homogeneous());
                    g.degree().unwrap() as usize
                })
                .collect();
            d.sort_unstable();
            assert_eq!(d, invariant_degrees(t), "{t}");
        }
    }

    #[test]
    fn generators_are_infinitesimally_invariant() {
        for t in ["A2", "B2", "C3", "D3"] {
            let (alg, real) = realize(t);
            for (name, g) in classical_invariant_gens(&real).unwrap() {
                let grad = g.gradient();
                for xi in 0..alg.dimension() {
                    let ad = alg.ad_basis(xi);
                    let mut acc = Polynomial::zero(g.arity());
                    for (i, gi) in grad.iter().enumerate() {
                        let lin = Polynomial::linear(ad.row(i));
                        acc = &acc + &(gi * &lin);
                    }
                    assert!(acc.is_zero(), "{t} {name} ξ={xi}");
                }
            }
        }
    }

    #[test]
    fn restricted_generators_are_w_invariant() {
        for t in ["A3", "B3", "C3", "D4"] {
            let (alg, real) = realize(t);
            let keep: Vec<usize> = (0..alg.rank()).collect();
            for (name, g) in classical_invariant_gens(&real).unwrap() {
                let res = g.restrict_to(&keep);
                assert!(!res.is_zero(), "{t} {name}");
                assert!(is_w_invariant(alg.root_system(), &res).unwrap(), "{t} {name}");
            }
            assert_eq!(cartan_reflection(alg.root_system(), 0).rows(), alg.rank());
        }
    }

    #[test]
    fn pfaffian_transforms_by_determinant() {
        let m = Matrix::from_ints(&[
            vec![0, 1, 2, 0, 5, -1],
            vec![-1, 0, 3, 1, 0, 2],
            vec![-2, -3, 0, 4, 1, 0],
            vec![0, -1, -4, 0, 2, 7],
            vec![-5, 0, -1, -2, 0, 3],
            vec![1, -2, 0, -7, -3, 0],
        ]);
        let g = Matrix::from_fn(6, 6, |i, j| GR::frac(((i * 7 + j * 3) % 11) as i64 - 5, (j + 1) as i64));
        let pf = |x: &Matrix| pfaffian(&PolyMatrix::constant(x, 0)).unwrap().coefficient(&[]);
        let lhs = pf(&(&(&g.transpose() * &m) * &g));
        assert_eq!(lhs, &g.det().unwrap() * &pf(&m));
        assert_eq!(&pf(&m) * &pf(&m), m.det().unwrap());
    }

    #[test]
    fn rais_transpose() {
        for n in 2..=4 {
            let rep = rais_transpose_check(n).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
    }

    #[test]
    fn transpose_fails_on_e12_e23() {
        let (alg, real) = realize("A2");
        let t = real.transpose_map().unwrap();
        let e12 = real.coordinates(&unit(3, 0, 1)).unwrap();
        let e23 = real.coordinates(&unit(3, 1, 2)).unwrap();
        let lhs = t.mul_vec(&alg.bracket(&e12, &e23).unwrap());
        let rhs = alg.bracket(&t.mul_vec(&e12), &t.mul_vec(&e23)).unwrap();
        assert_ne!(lhs, rhs);
        let neg: Vec<GR> = rhs.iter().map(|v| -v).collect();
        assert_eq!(lhs, neg);
    }
}
