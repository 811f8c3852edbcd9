//! Stabilizers of invariant generator sets: exact membership `p∘φ = p`,
//! the linearized stabilizer algebra, and scalar subgroups.

use std::collections::BTreeMap;
use std::ops::Range;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::chevalley::{trace_form, trace_form_values, ChevalleyAlgebra};
use crate::classical::{classical_invariant_gens, MatrixRealization};
use crate::error::{Error, Result};
use crate::exact::{GaussianRational as GR, Matrix, PolyMatrix, Polynomial, SparseEchelon, SparseRow};
use crate::roots::{invariant_degrees, CartanType, Family, RootSystem};
use crate::sampling;

/// A square matrix acting on coordinates (column `j` is the image of `e_j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    matrix: Matrix,
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct LinearMapRepr {
    dim: usize,
    entries: Vec<Vec<GR>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl Serialize for LinearMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LinearMapRepr {
            dim: self.dimension(),
            entries: self.matrix.to_rows(),
            label: self.label.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = LinearMapRepr::deserialize(d)?;
        if r.entries.len() != r.dim || r.entries.iter().any(|row| row.len() != r.dim) {
            return Err(serde::de::Error::custom(format!(
                "entries must form a {0}×{0} matrix",
                r.dim
            )));
        }
        let matrix = Matrix::from_rows(r.entries);
        Ok(LinearMap {
            matrix,
            label: r.label,
        })
    }
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidMap(format!(
                "{}×{} matrix is not square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(LinearMap {
            matrix,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap::scalar(dim, GR::ONE)
    }

    pub fn scalar(dim: usize, c: GR) -> Self {
        LinearMap {
            label: Some(format!("scalar:{c}")),
            matrix: Matrix::scalar(dim, c),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    pub fn determinant(&self) -> GR {
        self.matrix.det().expect("square by construction")
    }

    pub fn is_invertible(&self) -> bool {
        !self.determinant().is_zero()
    }

    /// `Some(λ)` if the map is `λ·Id`.
    pub fn as_scalar(&self) -> Option<GR> {
        let n = self.dimension();
        let c = if n == 0 {
            GR::ONE
        } else {
            self.matrix[(0, 0)].clone()
        };
        (self.matrix == Matrix::scalar(n, c.clone())).then_some(c)
    }

    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            matrix: &self.matrix * &other.matrix,
            label: None,
        }
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        Ok(LinearMap {
            matrix: self.matrix.inverse()?,
            label: None,
        })
    }
}

fn check_arity(p: &Polynomial, n: usize) -> Result<()> {
    if p.arity() != n {
        return Err(Error::Arity {
            expected: n,
            found: p.arity(),
        });
    }
    Ok(())
}

/// Whether `p(λx) = p(x)`: every nonzero homogeneous component of degree
/// `d` needs `λ^d = 1`.
fn fixed_by_scalar(p: &Polynomial, lambda: &GR) -> bool {
    let mut degrees: Vec<u32> = p.terms().map(|(m, _)| m.degree()).collect();
    degrees.dedup();
    degrees.iter().all(|&d| lambda.pow(d).is_one())
}

/// `p∘φ = p` for every generator.
pub fn membership_test(gens: &[Polynomial], phi: &LinearMap) -> Result<bool> {
    for g in gens {
        check_arity(g, phi.dimension())?;
    }
    if let Some(l) = phi.as_scalar() {
        return Ok(gens.iter().all(|g| fixed_by_scalar(g, &l)));
    }
    for g in gens {
        if g.compose_linear(&phi.matrix)? != *g {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first generator not fixed by `φ`, if any.
pub fn first_moved(gens: &[Polynomial], phi: &LinearMap) -> Result<Option<usize>> {
    for (i, g) in gens.iter().enumerate() {
        if !membership_test(std::slice::from_ref(g), phi)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// `∇p(x)·(A x)`, the derivative of `p` along the linear vector field `A`.
pub fn derivative_along(p: &Polynomial, a: &Matrix) -> Result<Polynomial> {
    let n = p.arity();
    if a.rows() != n || a.cols() != n {
        return Err(Error::Dimension(format!(
            "{}×{} field on {n} variables",
            a.rows(),
            a.cols()
        )));
    }
    let mut acc = Polynomial::zero(n);
    for i in 0..n {
        let dp = p.derivative(i);
        if dp.is_zero() {
            continue;
        }
        let field = Polynomial::linear(a.row(i));
        if !field.is_zero() {
            acc.add_product(&dp, &field);
        }
    }
    Ok(acc)
}

/// Basis of `{A : ∇p(x)·(Ax) ≡ 0 for all p ∈ gens}`, one exact equation per
/// monomial of each identity, unknowns `A_ab` at index `a·n + b`.
pub fn lie_stabilizer(gens: &[Polynomial], dim_v: usize) -> Result<Vec<Matrix>> {
    let n = dim_v;
    let mut ech = SparseEchelon::new(n * n);
    for p in gens {
        check_arity(p, n)?;
        let mut eqs: BTreeMap<Vec<u16>, SparseRow> = BTreeMap::new();
        for a in 0..n {
            let dp = p.derivative(a);
            for (m, c) in dp.terms() {
                for b in 0..n {
                    let mut e = m.exponents().to_vec();
                    e[b] += 1;
                    *eqs.entry(e).or_default().entry(a * n + b).or_insert(GR::ZERO) += c;
                }
            }
        }
        for row in eqs.into_values() {
            ech.insert(row);
        }
    }
    Ok(ech
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_fn(n, n, |a, b| v[a * n + b].clone()))
        .collect())
}

fn flatten(m: &Matrix) -> SparseRow {
    m.entries()
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Whether two lists of equally sized matrices span the same space.
pub fn same_span(a: &[Matrix], b: &[Matrix]) -> bool {
    let Some(first) = a.first().or(b.first()) else {
        return true;
    };
    let cols = first.rows() * first.cols();
    let mut ea = SparseEchelon::new(cols);
    a.iter().for_each(|m| {
        ea.insert(flatten(m));
    });
    let mut eb = SparseEchelon::new(cols);
    b.iter().for_each(|m| {
        eb.insert(flatten(m));
    });
    ea.rank() == eb.rank() && b.iter().all(|m| ea.contains(&flatten(m)))
}

/// Display form of `e^{2πi k/n}`, exact where it lies in ℚ(i).
pub fn root_of_unity_label(k: u64, n: u64) -> String {
    let g = k.gcd(&n);
    let (k, n) = (k / g, n / g);
    match (k % n, n) {
        (0, _) => "1".into(),
        (1, 2) => "-1".into(),
        (1, 4) => "i".into(),
        (3, 4) => "-i".into(),
        _ => format!("exp(2πi·{k}/{n})"),
    }
}

/// `e^{2πi k/n}` if it lies in ℚ(i).
pub fn root_of_unity(k: u64, n: u64) -> Option<GR> {
    let g = k.gcd(&n);
    match ((k / g) % (n / g), n / g) {
        (0, _) => Some(GR::ONE),
        (1, 2) => Some(GR::from_int(-1)),
        (1, 4) => Some(GR::I),
        (3, 4) => Some(-GR::I),
        _ => None,
    }
}

/// `{λ : λ·Id fixes every generator}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum ScalarSubgroup {
    /// No constraint: every nonzero scalar.
    All,
    /// `μ_d = ⟨e^{2πi/d}⟩`.
    #[serde(rename_all = "camelCase")]
    RootsOfUnity { order: u64, generator: String },
}

impl std::fmt::Display for ScalarSubgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarSubgroup::All => f.write_str("all scalars"),
            ScalarSubgroup::RootsOfUnity { order: 1, .. } => f.write_str("{1}"),
            ScalarSubgroup::RootsOfUnity { order, generator } => write!(f, "μ{order} = <{generator}>"),
        }
    }
}

impl ScalarSubgroup {
    pub fn order(&self) -> Option<u64> {
        match self {
            ScalarSubgroup::All => None,
            ScalarSubgroup::RootsOfUnity { order, .. } => Some(*order),
        }
    }

    pub fn contains_minus_one(&self) -> bool {
        self.order().is_none_or(|d| d % 2 == 0)
    }

    /// The generator as an element of ℚ(i), when it is one.
    pub fn generator_value(&self) -> Option<GR> {
        self.order().and_then(|d| root_of_unity(1, d))
    }
}

pub fn scalar_subgroup(gens: &[Polynomial]) -> Result<ScalarSubgroup> {
    let mut degrees = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(format!("#{i}")));
        }
        degrees.push(g.degree().unwrap_or(0));
    }
    Ok(scalar_subgroup_of_degrees(&degrees))
}

/// `μ_d` with `d` the gcd of the degrees of homogeneous generators.
pub fn scalar_subgroup_of_degrees(degrees: &[u32]) -> ScalarSubgroup {
    let d = degrees.iter().fold(0u64, |g, &k| g.gcd(&(k as u64)));
    if d == 0 {
        ScalarSubgroup::All
    } else {
        ScalarSubgroup::RootsOfUnity {
            order: d,
            generator: root_of_unity_label(1, d),
        }
    }
}

/// `{(λ_1, …, λ_s) : Π λ_b^{deg_b(p)} = 1 ∀p}` for scalars acting block by
/// block, when finite. Elements are exponent vectors `k` with
/// `λ_b = e^{2πi k_b/order}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockScalarGroup {
    pub order: u64,
    pub exponents: Vec<Vec<u64>>,
    /// A generator, block by block, if the group is cyclic.
    pub generator: Option<Vec<String>>,
}

impl BlockScalarGroup {
    pub fn contains(&self, labels: &[&str]) -> bool {
        self.exponents.iter().any(|k| {
            k.iter()
                .zip(labels)
                .all(|(&e, l)| root_of_unity_label(e, self.order) == *l)
        })
    }
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mat = Matrix::from_ints(m);
    let d = mat.det().expect("square");
    debug_assert!(n == 0 || d.is_real());
    d.re.to_i64().unwrap_or(0)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `None` when the group is infinite.
pub fn block_scalar_group(
    gens: &[Polynomial],
    blocks: &[Range<usize>],
) -> Result<Option<BlockScalarGroup>> {
    let s = blocks.len();
    let mut degs = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let d = g
            .multidegree(blocks)
            .ok_or_else(|| Error::NotHomogeneous(format!("#{i}")))?;
        degs.push(d.into_iter().map(i64::from).collect::<Vec<_>>());
    }
    // Order of the finite group = gcd of the maximal minors.
    let mut order = 0i64;
    for rows in subsets(degs.len(), s) {
        let minor: Vec<Vec<i64>> = rows.iter().map(|&r| degs[r].clone()).collect();
        order = order.gcd(&det_i64(&minor));
    }
    if order == 0 {
        return Ok(None);
    }
    let order = order.unsigned_abs();
    let count = (order as u128).pow(s as u32);
    if count > 1 << 20 {
        return Err(Error::Unsupported(format!("block scalar group of order {order}")));
    }
    let mut exponents = Vec::new();
    for code in 0..count as u64 {
        let k: Vec<u64> = (0..s).map(|b| (code / order.pow(b as u32)) % order).collect();
        let fixed = degs.iter().all(|d| {
            let e: u64 = d.iter().zip(&k).map(|(&di, &ki)| di as u64 * ki).sum();
            e.is_multiple_of(order)
        });
        if fixed {
            exponents.push(k);
        }
    }
    let element_order = |k: &Vec<u64>| order / k.iter().fold(order, |g, &e| g.gcd(&e));
    let generator = exponents
        .iter()
        .find(|k| element_order(k) == exponents.len() as u64)
        .map(|k| k.iter().map(|&e| root_of_unity_label(e, order)).collect());
    Ok(Some(BlockScalarGroup {
        order,
        exponents,
        generator,
    }))
}

/// Where a generator set comes from, and on what authority it generates
/// the invariant ring.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Provenance {
    pub source: String,
    pub authority: String,
    /// Whether the set is known to generate the whole invariant ring.
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

/// Named polynomial generators on `ℂ^arity`.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub provenance: Provenance,
    pub names: Vec<String>,
    pub polys: Vec<Polynomial>,
    pub arity: usize,
}

impl GeneratorSet {
    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(|p| p.degree().unwrap_or(0)).collect()
    }
}

/// How an adjoint invariant set is evaluated.
#[derive(Clone, Debug)]
enum Evaluation {
    Symbolic(Vec<Polynomial>),
    /// Trace forms `p_k` at points.
    TraceForms(Vec<usize>),
    /// Characteristic-polynomial coefficients (and the Pfaffian for D) of
    /// the matrix realization, at points.
    CharPoly(Box<MatrixRealization>),
}

/// Invariants of the adjoint representation of a simple type.
#[derive(Clone, Debug)]
pub struct AdjointInvariants {
    alg: ChevalleyAlgebra,
    names: Vec<String>,
    degrees: Vec<u32>,
    eval: Evaluation,
    provenance: Provenance,
}

/// Verdict of a membership test and how it was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Membership {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    pub member: bool,
    /// `symbolic`, `scalar` (exact, by homogeneity) or `sampled`.
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    /// First generator the map moves.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moved_generator: Option<String>,
}

/// Classical types up to this rank get symbolic char-poly generators.
pub const SYMBOLIC_CLASSICAL_RANK: usize = 4;

/// Jacobian rank of `polys` (in `r` variables) at `point`.
fn jacobian_rank(polys: &[Polynomial], point: &[GR]) -> Result<usize> {
    let rows: Vec<Vec<GR>> = polys
        .iter()
        .map(|p| p.gradient().iter().map(|d| d.evaluate(point)).collect())
        .collect::<Result<_>>()?;
    Ok(Matrix::from_rows(rows).rank())
}

/// Jacobian rank of the Cartan restrictions of `p_k`, `k ∈ degrees`, at a
/// random integer point: `∂_j p_k = k Σ_ρ ⟨ρ,a⟩^{k−1} ⟨ρ, α_j^∨⟩`.
fn trace_form_jacobian_rank(rs: &RootSystem, degrees: &[usize], seed: u64) -> usize {
    let r = rs.rank();
    let mut rng = sampling::rng(seed);
    let a: Vec<GR> = sampling::rational_point(&mut rng, r)
        .into_iter()
        .map(|v| GR::from_int(v.re.numer().try_into().unwrap_or(1)))
        .collect();
    let pairing: Vec<Vec<i64>> = (0..rs.num_roots())
        .map(|q| {
            let rho = rs.root(q);
            (0..r).map(|i| rs.coroot_pairing(&rho, i)).collect()
        })
        .collect();
    let rows: Vec<Vec<GR>> = degrees
        .iter()
        .map(|&k| {
            let mut row = vec![GR::ZERO; r];
            for c in &pairing {
                let val = c
                    .iter()
                    .zip(&a)
                    .fold(GR::ZERO, |acc, (&ci, ai)| &acc + &(ai * &GR::from_int(ci)));
                let w = &val.pow(k as u32 - 1) * &GR::from_int(k as i64);
                for j in 0..r {
                    row[j] += &(&w * &GR::from_int(c[j]));
                }
            }
            row
        })
        .collect();
    Matrix::from_rows(rows).rank()
}

impl AdjointInvariants {
    /// Symbolic classical generators for classical rank ≤ 4, symbolic trace
    /// forms for G₂, and point-evaluated generators otherwise.
    pub fn new(t: CartanType) -> Result<Self> {
        let alg = ChevalleyAlgebra::build(t)?;
        let degrees = invariant_degrees(t);
        let r = t.rank();
        let restriction = "Chevalley restriction: algebraically independent invariants \
                           whose restrictions have the degrees of the Weyl group generate";
        if t.is_classical() {
            let real = MatrixRealization::new(&alg)?;
            let source = if t.family() == Family::D {
                "characteristic polynomial coefficients and Pfaffian of the matrix realization"
            } else {
                "characteristic polynomial coefficients of the matrix realization"
            };
            if r <= SYMBOLIC_CLASSICAL_RANK {
                let gens = classical_invariant_gens(&real)?;
                let keep: Vec<usize> = (0..r).collect();
                let restricted: Vec<Polynomial> =
                    gens.iter().map(|(_, p)| p.restrict_to(&keep)).collect();
                let mut rng = sampling::rng(0);
                let point = sampling::rational_point(&mut rng, r);
                let independent = jacobian_rank(&restricted, &point)? == r;
                let mut got: Vec<u32> = gens.iter().map(|(_, p)| p.degree().unwrap_or(0)).collect();
                got.sort_unstable();
                let expected: Vec<u32> = degrees.iter().map(|&d| d as u32).collect();
                let complete = independent && got == expected;
                return Ok(AdjointInvariants {
                    names: gens.iter().map(|(n, _)| n.clone()).collect(),
                    degrees: gens.iter().map(|(_, p)| p.degree().unwrap_or(0)).collect(),
                    eval: Evaluation::Symbolic(gens.into_iter().map(|(_, p)| p).collect()),
                    provenance: Provenance {
                        source: source.into(),
                        authority: restriction.into(),
                        complete,
                        caveat: (!complete)
                            .then(|| "restricted generators failed the independence check".into()),
                    },
                    alg,
                });
            }
            let mut names: Vec<String> = match t.family() {
                Family::A => (2..=r + 1).map(|k| format!("c{k}")).collect(),
                Family::B | Family::C => (1..=r).map(|j| format!("c{}", 2 * j)).collect(),
                _ => (1..r).map(|j| format!("c{}", 2 * j)).collect(),
            };
            if t.family() == Family::D {
                names.push("pf".into());
            }
            let degs = names
                .iter()
                .map(|n| if n == "pf" { r as u32 } else { n[1..].parse().unwrap() })
                .collect();
            return Ok(AdjointInvariants {
                names,
                degrees: degs,
                eval: Evaluation::CharPoly(Box::new(real)),
                provenance: Provenance {
                    source: format!("{source}, evaluated at points"),
                    authority: "classical first fundamental theorem for the adjoint action".into(),
                    complete: true,
                    caveat: Some("membership of non-scalar maps is decided by sampling".into()),
                },
                alg,
            });
        }
        let rs = alg.root_system().clone();
        let rank = trace_form_jacobian_rank(&rs, &degrees, 0);
        let complete = rank == r;
        let caveat = |extra: &str| {
            let mut c = String::from(extra);
            if !complete {
                c.push_str(&format!(
                    "; restricted trace forms have Jacobian rank {rank} < {r}, so they \
                     generate a proper subring and the stabilizer may exceed G′"
                ));
            }
            Some(c)
        };
        if alg.dimension() <= crate::chevalley::SYMBOLIC_DIM_LIMIT {
            let polys: Vec<Polynomial> = degrees
                .iter()
                .map(|&k| trace_form(&alg, k).map(|p| p.primitive()))
                .collect::<Result<_>>()?;
            return Ok(AdjointInvariants {
                names: degrees.iter().map(|k| format!("p{k}")).collect(),
                degrees: degrees.iter().map(|&d| d as u32).collect(),
                eval: Evaluation::Symbolic(polys),
                provenance: Provenance {
                    source: "trace forms tr((ad X)^k) at the invariant degrees".into(),
                    authority: restriction.into(),
                    complete,
                    caveat: if complete { None } else { caveat("") },
                },
                alg,
            });
        }
        Ok(AdjointInvariants {
            names: degrees.iter().map(|k| format!("p{k}")).collect(),
            degrees: degrees.iter().map(|&d| d as u32).collect(),
            eval: Evaluation::TraceForms(degrees),
            provenance: Provenance {
                source: "trace forms tr((ad X)^k) at the invariant degrees, evaluated at points"
                    .into(),
                authority: restriction.into(),
                complete,
                caveat: caveat("membership of non-scalar maps is decided by sampling"),
            },
            alg,
        })
    }

    pub fn algebra(&self) -> &ChevalleyAlgebra {
        &self.alg
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The symbolic generator set, if there is one.
    pub fn generator_set(&self) -> Option<GeneratorSet> {
        match &self.eval {
            Evaluation::Symbolic(p) => Some(GeneratorSet {
                provenance: self.provenance.clone(),
                names: self.names.clone(),
                polys: p.clone(),
                arity: self.alg.dimension(),
            }),
            _ => None,
        }
    }

    fn values(&self, x: &[GR]) -> Result<Vec<GR>> {
        match &self.eval {
            Evaluation::Symbolic(ps) => ps.iter().map(|p| p.evaluate(x)).collect(),
            Evaluation::TraceForms(ks) => {
                let kmax = ks.iter().copied().max().unwrap_or(0);
                let v = trace_form_values(&self.alg, x, kmax)?;
                Ok(ks.iter().map(|&k| v[k - 1].clone()).collect())
            }
            Evaluation::CharPoly(real) => {
                let m = PolyMatrix::constant(&real.element(x), 0);
                let top = self.degrees.iter().copied().max().unwrap_or(0) as usize;
                let c = m.char_poly_coefficients_upto(top);
                let mut out = Vec::with_capacity(self.names.len());
                for n in &self.names {
                    if n == "pf" {
                        let s = PolyMatrix::constant(real.form().unwrap(), 0);
                        out.push(s.mul(&m).pfaffian()?.evaluate(&[])?);
                    } else {
                        let k: usize = n[1..].parse().unwrap();
                        out.push(c[k - 1].evaluate(&[])?);
                    }
                }
                Ok(out)
            }
        }
    }

    /// Exact for symbolic sets and scalar maps; otherwise `p(φx) = p(x)` at
    /// [`sampling::POINTS_PER_IDENTITY`] seeded points.
    pub fn membership(&self, phi: &LinearMap, seed: u64) -> Result<Membership> {
        let dim = self.alg.dimension();
        if phi.dimension() != dim {
            return Err(Error::Arity {
                expected: dim,
                found: phi.dimension(),
            });
        }
        let label = phi.label().map(String::from);
        if let Some(l) = phi.as_scalar() {
            let moved = self.degrees.iter().position(|&d| !l.pow(d).is_one());
            return Ok(Membership {
                map: label,
                member: moved.is_none(),
                method: "scalar".into(),
                points: None,
                moved_generator: moved.map(|i| self.names[i].clone()),
            });
        }
        if let Evaluation::Symbolic(ps) = &self.eval {
            let moved = first_moved(ps, phi)?;
            return Ok(Membership {
                map: label,
                member: moved.is_none(),
                method: "symbolic".into(),
                points: None,
                moved_generator: moved.map(|i| self.names[i].clone()),
            });
        }
        let mut rng = sampling::rng(seed);
        let mut moved = None;
        for _ in 0..sampling::POINTS_PER_IDENTITY {
            let x = sampling::rational_point(&mut rng, dim);
            let before = self.values(&x)?;
            let after = self.values(&phi.matrix.mul_vec(&x))?;
            if let Some(i) = before.iter().zip(&after).position(|(a, b)| a != b) {
                moved = Some(i);
                break;
            }
        }
        Ok(Membership {
            map: label,
            member: moved.is_none(),
            method: "sampled".into(),
            points: Some(sampling::POINTS_PER_IDENTITY),
            moved_generator: moved.map(|i| self.names[i].clone()),
        })
    }
}

/// Stabilizer data of a generator set.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilizerReport {
    pub target: String,
    pub dimension: usize,
    pub generators: Vec<String>,
    pub generator_degrees: Vec<Vec<u32>>,
    pub generator_provenance: Provenance,
    pub memberships: Vec<Membership>,
    pub lie_stabilizer_dimension: Option<usize>,
    pub lie_stabilizer_basis: Vec<Matrix>,
    pub scalar_subgroup: ScalarSubgroup,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_scalar_group: Option<BlockScalarGroup>,
    /// What these computations do and do not establish about G′.
    pub caveat: String,
}

pub const GROUP_LEVEL_CAVEAT: &str = "membership and the Lie stabilizer describe the stabilizer \
    of the listed generators; this is G′ when the generators generate the invariant ring. \
    Only the identity component of G′ is determined by the Lie stabilizer.";

/// Lie stabilizer, scalars and the given memberships for a symbolic set.
pub fn stabilizer_report(
    target: &str,
    set: &GeneratorSet,
    blocks: &[Range<usize>],
    maps: &[LinearMap],
) -> Result<StabilizerReport> {
    let basis = lie_stabilizer(&set.polys, set.arity)?;
    let memberships = maps
        .iter()
        .map(|m| {
            let moved = first_moved(&set.polys, m)?;
            Ok(Membership {
                map: m.label().map(String::from),
                member: moved.is_none(),
                method: if m.as_scalar().is_some() { "scalar" } else { "symbolic" }.into(),
                points: None,
                moved_generator: moved.map(|i| set.names[i].clone()),
            })
        })
        .collect::<Result<_>>()?;
    let block_group = if blocks.len() > 1 {
        block_scalar_group(&set.polys, blocks)?
    } else {
        None
    };
    Ok(StabilizerReport {
        target: target.into(),
        dimension: set.arity,
        generators: set.names.clone(),
        generator_degrees: set
            .polys
            .iter()
            .map(|p| p.multidegree(blocks).unwrap_or_default())
            .collect(),
        generator_provenance: set.provenance.clone(),
        memberships,
        lie_stabilizer_dimension: Some(basis.len()),
        lie_stabilizer_basis: basis,
        scalar_subgroup: scalar_subgroup(&set.polys)?,
        block_scalar_group: block_group,
        caveat: GROUP_LEVEL_CAVEAT.into(),
    })
}

/// Lie stabilizer of the full classical generator set against `ad 𝔤`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DixmierReport {
    pub cartan_type: String,
    pub algebra_dimension: usize,
    pub generators: Vec<String>,
    pub lie_stabilizer_dimension: usize,
    pub contains_ad: bool,
    pub equals_ad: bool,
    pub passed: bool,
}

pub fn dixmier_check(t: CartanType) -> Result<DixmierReport> {
    if !t.is_classical() || t.rank() > 3 {
        return Err(Error::Unsupported(format!(
            "Lie stabilizer comparison needs a classical type of rank ≤ 3, got {t}"
        )));
    }
    let inv = AdjointInvariants::new(t)?;
    let set = inv.generator_set().expect("symbolic for rank ≤ 3");
    let alg = inv.algebra();
    let stab = lie_stabilizer(&set.polys, set.arity)?;
    let ad: Vec<Matrix> = (0..alg.dimension()).map(|i| alg.ad_basis(i)).collect();
    let mut ech = SparseEchelon::new(set.arity * set.arity);
    for m in &stab {
        ech.insert(flatten(m));
    }
    let contains_ad = ad.iter().all(|m| ech.contains(&flatten(m)));
    let equals_ad = same_span(&stab, &ad);
    Ok(DixmierReport {
        cartan_type: t.to_string(),
        algebra_dimension: alg.dimension(),
        generators: set.names.clone(),
        lie_stabilizer_dimension: stab.len(),
        contains_ad,
        equals_ad,
        passed: stab.len() == alg.dimension() && equals_ad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det2() -> Polynomial {
        // x1·y2 − x2·y1 in coordinates (x1, x2, y1, y2).
        Polynomial::from_terms(4, [(vec![1, 0, 0, 1], GR::ONE), (vec![0, 1, 1, 0], GR::from_int(-1))])
    }

    #[test]
    fn membership_basics() {
        let gens = vec![det2()];
        assert!(membership_test(&gens, &LinearMap::identity(4)).unwrap());
        assert!(membership_test(&[], &LinearMap::scalar(4, GR::from_int(7))).unwrap());
        let phi = LinearMap::new(Matrix::diagonal(&[
            GR::from_int(2),
            GR::frac(1, 2),
            GR::ONE,
            GR::ONE,
        ]))
        .unwrap();
        assert!(!membership_test(&gens, &phi).unwrap());
        assert!(membership_test(&gens, &LinearMap::scalar(4, GR::from_int(-1))).unwrap());
        assert!(!membership_test(&gens, &LinearMap::scalar(4, GR::I)).unwrap());
        assert!(matches!(
            membership_test(&gens, &LinearMap::identity(3)),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn scalar_fast_path_agrees_with_composition() {
        let p = &det2() + &det2().pow(2);
        for l in [GR::from_int(-1), GR::I, GR::from_int(3)] {
            let phi = LinearMap::scalar(4, l.clone());
            let slow = p.compose_linear(phi.matrix()).unwrap() == p;
            assert_eq!(membership_test(std::slice::from_ref(&p), &phi).unwrap(), slow, "{l}");
        }
    }

    #[test]
    fn lie_stabilizer_of_killing_form() {
        let alg = ChevalleyAlgebra::build("A1".parse().unwrap()).unwrap();
        let p2 = trace_form(&alg, 2).unwrap();
        let stab = lie_stabilizer(std::slice::from_ref(&p2), 3).unwrap();
        assert_eq!(stab.len(), 3);
        for a in &stab {
            assert!(derivative_along(&p2, a).unwrap().is_zero());
        }
        assert_eq!(lie_stabilizer(&[], 2).unwrap().len(), 4);
    }

    #[test]
    fn scalar_subgroups() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let quartic = x.pow(4);
        assert_eq!(
            scalar_subgroup(std::slice::from_ref(&quartic)).unwrap(),
            ScalarSubgroup::RootsOfUnity {
                order: 4,
                generator: "i".into()
            }
        );
        assert_eq!(scalar_subgroup(&[x.pow(2), y.pow(3)]).unwrap().order(), Some(1));
        assert_eq!(scalar_subgroup(&[]).unwrap(), ScalarSubgroup::All);
        assert!(scalar_subgroup(&[&x + &y.pow(2)]).is_err());
    }

    #[test]
    fn block_scalars_of_quadratic_and_vector() {
        // Bidegrees (2,0) and (1,2) on blocks {0}, {1}.
        let q = Polynomial::var(2, 0).pow(2);
        let m = &Polynomial::var(2, 0) * &Polynomial::var(2, 1).pow(2);
        let g = block_scalar_group(&[q.clone(), m], &[0..1, 1..2]).unwrap().unwrap();
        assert_eq!(g.order, 4);
        assert_eq!(g.exponents.len(), 4);
        assert!(g.contains(&["-1", "i"]));
        assert!(g.generator.is_some());
        assert!(block_scalar_group(&[q], &[0..1, 1..2]).unwrap().is_none());
    }

    #[test]
    fn dixmier_small_types() {
        for (t, d) in [("A1", 3), ("A2", 8), ("B2", 10)] {
            let rep = dixmier_check(t.parse().unwrap()).unwrap();
            assert!(rep.passed, "{rep:?}");
            assert_eq!(rep.lie_stabilizer_dimension, d);
        }
    }

    #[test]
    fn adjoint_sets_and_minus_identity() {
        for (t, member) in [("A2", false), ("B2", true), ("G2", true), ("D4", true), ("A3", false)] {
            let inv = AdjointInvariants::new(t.parse().unwrap()).unwrap();
            assert!(inv.provenance().complete, "{t}");
            let dim = inv.algebra().dimension();
            let m = inv.membership(&LinearMap::scalar(dim, GR::from_int(-1)), 0).unwrap();
            assert_eq!(m.member, member, "{t}");
        }
    }

    #[test]
    fn trace_forms_of_e6_are_incomplete() {
        let inv = AdjointInvariants::new("E6".parse().unwrap()).unwrap();
        assert!(!inv.provenance().complete);
        let inv = AdjointInvariants::new("F4".parse().unwrap()).unwrap();
        assert!(inv.provenance().complete);
    }

    #[test]
    fn sampled_membership_detects_a_non_member() {
        let inv = AdjointInvariants::new("A5".parse().unwrap()).unwrap();
        let alg = inv.algebra();
        let n = alg.dimension();
        // ψ negates the odd c_k; −ψ fixes them all.
        let (psi, _) = crate::chevalley::chevalley_involution(alg).unwrap();
        let yes = inv.membership(&LinearMap::new(-&psi.matrix).unwrap(), 1).unwrap();
        assert!(yes.member && yes.method == "sampled");
        let no = inv.membership(&LinearMap::new(psi.matrix.clone()).unwrap(), 1).unwrap();
        assert_eq!(no.moved_generator.as_deref(), Some("c3"));
        let mut d = Matrix::identity(n);
        d[(0, 0)] = GR::from_int(2);
        let no = inv.membership(&LinearMap::new(d).unwrap(), 1).unwrap();
        assert!(!no.member);
    }
}
