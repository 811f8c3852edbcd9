//! Representations `⊕ R_j` of SL₂ on binary forms, their invariants, and the
//! stabilizer checks for the small modules where the group G′ is larger
//! than the image of SL₂.
//!
//! Coordinates of `R_j` are the coefficients of `x^j, x^{j−1}y, …, y^j`;
//! summands are stored in decreasing `j` and laid out block after block.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::Serialize;

use crate::engine::{
    block_scalar_group, derivative_along, first_moved, lie_stabilizer, membership_test,
    scalar_subgroup, BlockScalarGroup, GeneratorSet, LinearMap, Provenance, ScalarSubgroup,
};
use crate::error::{Error, Result};
use crate::exact::{GaussianRational as GR, Matrix, Polynomial};
use crate::sampling;

/// Multiset of degrees `j ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleSpec {
    summands: Vec<u32>,
}

impl ModuleSpec {
    pub fn new(mut summands: Vec<u32>) -> Result<Self> {
        if summands.is_empty() || summands.contains(&0) {
            return Err(Error::Parse {
                what: "module spec",
                input: format!("{summands:?}"),
            });
        }
        summands.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ModuleSpec { summands })
    }

    pub fn summands(&self) -> &[u32] {
        &self.summands
    }

    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|&j| j as usize + 1).sum()
    }

    /// Coordinate ranges of the summands.
    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.summands
            .iter()
            .map(|&j| {
                let r = start..start + j as usize + 1;
                start = r.end;
                r
            })
            .collect()
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.summands.len() {
            let j = self.summands[i];
            let k = self.summands[i..].iter().take_while(|&&x| x == j).count();
            parts.push(if k == 1 {
                format!("R{j}")
            } else {
                format!("{k}R{j}")
            });
            i += k;
        }
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for ModuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "module spec",
            input: s.to_string(),
        };
        let mut summands = Vec::new();
        for term in s.split(['+', '⊕']) {
            let term = term.trim();
            let (mult, j) = term.split_once(['R', 'r']).ok_or_else(err)?;
            let mult: usize = if mult.is_empty() {
                1
            } else {
                mult.parse().map_err(|_| err())?
            };
            let j: u32 = j.parse().map_err(|_| err())?;
            if mult == 0 || j == 0 {
                return Err(err());
            }
            summands.extend(std::iter::repeat_n(j, mult));
        }
        ModuleSpec::new(summands).map_err(|_| err())
    }
}

/// Coefficients (in `e_2`-degree order) of `(a e_1 + c e_2)^p (b e_1 + d e_2)^q`.
fn expand(a: &GR, c: &GR, p: u32, b: &GR, d: &GR, q: u32) -> Vec<GR> {
    let mut acc = vec![GR::ONE];
    for (u, v, times) in [(a, c, p), (b, d, q)] {
        for _ in 0..times {
            let mut next = vec![GR::ZERO; acc.len() + 1];
            for (i, x) in acc.iter().enumerate() {
                next[i] += &(x * u);
                next[i + 1] += &(x * v);
            }
            acc = next;
        }
    }
    acc
}

fn check_two_by_two(g: &Matrix) -> Result<()> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(Error::Dimension(format!(
            "expected a 2×2 matrix, got {}×{}",
            g.rows(),
            g.cols()
        )));
    }
    Ok(())
}

/// `Sym^j(g)` on every summand: column `k` is the expansion of
/// `(g e_1)^{j−k} (g e_2)^k`.
pub fn action_matrix(spec: &ModuleSpec, g: &Matrix) -> Result<Matrix> {
    check_two_by_two(g)?;
    let (a, b, c, d) = (&g[(0, 0)], &g[(0, 1)], &g[(1, 0)], &g[(1, 1)]);
    let blocks: Vec<Matrix> = spec
        .summands
        .iter()
        .map(|&j| {
            let cols: Vec<Vec<GR>> = (0..=j).map(|k| expand(a, c, j - k, b, d, k)).collect();
            Matrix::from_columns(&cols)
        })
        .collect();
    Ok(Matrix::block_diag(&blocks))
}

/// The derivative of [`action_matrix`] at the identity, for `ξ ∈ 𝔤𝔩₂`.
pub fn lie_action(spec: &ModuleSpec, xi: &Matrix) -> Result<Matrix> {
    check_two_by_two(xi)?;
    let blocks: Vec<Matrix> = spec
        .summands
        .iter()
        .map(|&j| {
            let n = j as usize + 1;
            let mut m = Matrix::zeros(n, n);
            for k in 0..n {
                let (p, q) = (GR::from_int((n - 1 - k) as i64), GR::from_int(k as i64));
                m[(k, k)] = &(&p * &xi[(0, 0)]) + &(&q * &xi[(1, 1)]);
                if k + 1 < n {
                    m[(k + 1, k)] = &p * &xi[(1, 0)];
                }
                if k > 0 {
                    m[(k - 1, k)] = &q * &xi[(0, 1)];
                }
            }
            m
        })
        .collect();
    Ok(Matrix::block_diag(&blocks))
}

/// `e`, `h`, `f` of 𝔰𝔩₂.
pub fn sl2_basis() -> [Matrix; 3] {
    [
        Matrix::from_ints(&[vec![0, 1], vec![0, 0]]),
        Matrix::from_ints(&[vec![1, 0], vec![0, -1]]),
        Matrix::from_ints(&[vec![0, 0], vec![1, 0]]),
    ]
}

/// `Σ_k c_k x^{d−k} y^k` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<Polynomial>,
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self> {
        let arity = coeffs.first().map(Polynomial::arity).ok_or(Error::Parse {
            what: "binary form",
            input: "no coefficients".into(),
        })?;
        if let Some(c) = coeffs.iter().find(|c| c.arity() != arity) {
            return Err(Error::Arity {
                expected: arity,
                found: c.arity(),
            });
        }
        Ok(BinaryForm { coeffs })
    }

    /// The form of summand `block`, with coefficients the block's coordinates.
    pub fn generic(spec: &ModuleSpec, block: usize) -> Self {
        let n = spec.total_dim();
        let r = spec.blocks()[block].clone();
        BinaryForm {
            coeffs: r.map(|i| Polynomial::var(n, i)).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    fn arity(&self) -> usize {
        self.coeffs[0].arity()
    }

    /// The constant term of a degree-0 form.
    pub fn into_invariant(self) -> Option<Polynomial> {
        (self.coeffs.len() == 1).then(|| self.coeffs.into_iter().next().unwrap())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut coeffs = vec![Polynomial::zero(self.arity()); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j].add_product(a, b);
            }
        }
        BinaryForm { coeffs }
    }

    fn dx(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm {
                coeffs: vec![Polynomial::zero(self.arity())],
            };
        }
        BinaryForm {
            coeffs: (0..d)
                .map(|k| self.coeffs[k as usize].scale(&GR::from_int((d - k) as i64)))
                .collect(),
        }
    }

    fn dy(&self) -> BinaryForm {
        let d = self.degree();
        if d == 0 {
            return BinaryForm {
                coeffs: vec![Polynomial::zero(self.arity())],
            };
        }
        BinaryForm {
            coeffs: (1..=d)
                .map(|k| self.coeffs[k as usize].scale(&GR::from_int(k as i64)))
                .collect(),
        }
    }

    fn partial(&self, nx: u32, ny: u32) -> BinaryForm {
        let mut f = self.clone();
        for _ in 0..nx {
            f = f.dx();
        }
        for _ in 0..ny {
            f = f.dy();
        }
        f
    }
}

/// `(f, g)^r = Σ_i (−1)^i C(r,i) ∂^r f/∂x^{r−i}∂y^i · ∂^r g/∂x^i∂y^{r−i}`,
/// the Ω-process without normalizing factor.
pub fn transvectant(f: &BinaryForm, g: &BinaryForm, r: u32) -> Result<BinaryForm> {
    if r > f.degree().min(g.degree()) {
        return Err(Error::Dimension(format!(
            "transvectant of order {r} on forms of degrees {} and {}",
            f.degree(),
            g.degree()
        )));
    }
    if f.arity() != g.arity() {
        return Err(Error::Arity {
            expected: f.arity(),
            found: g.arity(),
        });
    }
    let len = (f.degree() + g.degree() - 2 * r) as usize + 1;
    let mut acc = vec![Polynomial::zero(f.arity()); len];
    for i in 0..=r {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let c = GR::from_int(sign * binomial(r, i));
        let term = f.partial(r - i, i).mul(&g.partial(i, r - i));
        for (a, t) in acc.iter_mut().zip(&term.coeffs) {
            *a += &t.scale(&c);
        }
    }
    Ok(BinaryForm { coeffs: acc })
}

/// The modules whose invariant generators are built explicitly.
pub fn supported_modules() -> Vec<ModuleSpec> {
    ["R1", "2R1", "3R1", "R2", "2R2", "R2+R1", "R3", "R4"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

/// Whether `∇p·(ξ·x) = 0` for `ξ = e, h, f`.
pub fn is_infinitesimally_invariant(spec: &ModuleSpec, p: &Polynomial) -> Result<bool> {
    for xi in sl2_basis() {
        if !derivative_along(p, &lie_action(spec, &xi)?)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn invariant(f: Result<BinaryForm>) -> Result<Polynomial> {
    let p = f?
        .into_invariant()
        .ok_or_else(|| Error::Construction("transvectant is not an invariant".into()))?;
    Ok(p.primitive())
}

/// Named generators of the invariant ring, made primitive.
pub fn module_invariant_gens(spec: &ModuleSpec) -> Result<Vec<(String, Polynomial)>> {
    let s: &[u32] = spec.summands();
    let form = |b: usize| BinaryForm::generic(spec, b);
    let gens: Vec<(String, Polynomial)> = match s {
        [1] => vec![],
        _ if s.iter().all(|&j| j == 1) && s.len() <= 3 => {
            let mut out = Vec::new();
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    let p = invariant(transvectant(&form(i), &form(j), 1))?;
                    out.push((format!("[v{},v{}]", i + 1, j + 1), p));
                }
            }
            out
        }
        [2] => vec![("disc".into(), invariant(transvectant(&form(0), &form(0), 2))?)],
        [2, 2] => {
            let (u, v) = (form(0), form(1));
            vec![
                ("<u,u>".into(), invariant(transvectant(&u, &u, 2))?),
                ("<u,v>".into(), invariant(transvectant(&u, &v, 2))?),
                ("<v,v>".into(), invariant(transvectant(&v, &v, 2))?),
            ]
        }
        [2, 1] => {
            let (q, v) = (form(0), form(1));
            vec![
                ("disc(q)".into(), invariant(transvectant(&q, &q, 2))?),
                ("(q,v^2)".into(), invariant(transvectant(&q, &v.mul(&v), 2))?),
            ]
        }
        [3] => {
            let f = form(0);
            let hessian = transvectant(&f, &f, 2)?;
            vec![("disc".into(), invariant(transvectant(&hessian, &hessian, 2))?)]
        }
        [4] => {
            let f = form(0);
            let hessian = transvectant(&f, &f, 2)?;
            vec![
                ("i".into(), invariant(transvectant(&f, &f, 4))?),
                ("j".into(), invariant(transvectant(&f, &hessian, 4))?),
            ]
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no explicit invariant generators for {spec}"
            )))
        }
    };
    for (name, p) in &gens {
        if p.is_zero() || !is_infinitesimally_invariant(spec, p)? {
            return Err(Error::Construction(format!(
                "{spec}: generator {name} = {p} is not a nonzero invariant"
            )));
        }
    }
    Ok(gens)
}

pub fn generator_set(spec: &ModuleSpec) -> Result<GeneratorSet> {
    let gens = module_invariant_gens(spec)?;
    Ok(GeneratorSet {
        provenance: Provenance {
            source: "transvectants of the generic binary forms".into(),
            authority: "classical invariant theory of binary forms of degree ≤ 4 and of \
                        up to three vectors"
                .into(),
            complete: true,
            caveat: None,
        },
        names: gens.iter().map(|(n, _)| n.clone()).collect(),
        polys: gens.into_iter().map(|(_, p)| p).collect(),
        arity: spec.total_dim(),
    })
}

/// Height bound for generic points.
pub const GENERIC_HEIGHT: i64 = 50;
pub const GENERIC_SAMPLES: usize = 8;

/// Minimum over seeded points `v` of `dim {ξ ∈ 𝔰𝔩₂ : ξ·v = 0}`.
pub fn generic_stabilizer_dim(spec: &ModuleSpec, samples: usize, seed: u64) -> Result<usize> {
    if samples == 0 {
        return Err(Error::Dimension("at least one sample is needed".into()));
    }
    let actions: Vec<Matrix> = sl2_basis()
        .iter()
        .map(|xi| lie_action(spec, xi))
        .collect::<Result<_>>()?;
    let mut rng = sampling::rng(seed);
    let mut best = 3;
    for _ in 0..samples {
        let v = sampling::rational_point_with_height(&mut rng, spec.total_dim(), GENERIC_HEIGHT);
        let cols: Vec<Vec<GR>> = actions.iter().map(|a| a.mul_vec(&v)).collect();
        best = best.min(3 - Matrix::from_columns(&cols).rank());
    }
    Ok(best)
}

/// Rank of the Jacobian of the generators at a seeded point.
pub fn jacobian_rank(spec: &ModuleSpec, seed: u64) -> Result<usize> {
    let gens = module_invariant_gens(spec)?;
    let mut rng = sampling::rng(seed);
    let v = sampling::rational_point_with_height(&mut rng, spec.total_dim(), GENERIC_HEIGHT);
    let rows: Vec<Vec<GR>> = gens
        .iter()
        .map(|(_, p)| p.gradient().iter().map(|d| d.evaluate(&v)).collect())
        .collect::<Result<_>>()?;
    Ok(if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(rows).rank()
    })
}

/// Expected scalar behaviour of a module.
#[derive(Clone, Debug, PartialEq, Eq)]
enum ScalarClaim {
    All,
    ContainsMinusOne,
    Trivial,
    Exactly { order: u64, generator: &'static str },
    /// Block scalars generated by the given element.
    BlockGenerated(Vec<&'static str>),
}

impl ScalarClaim {
    fn describe(&self) -> String {
        match self {
            ScalarClaim::All => "all scalars".into(),
            ScalarClaim::ContainsMinusOne => "contains -1".into(),
            ScalarClaim::Trivial => "{1}".into(),
            ScalarClaim::Exactly { order, generator } => format!("μ{order} = <{generator}>"),
            ScalarClaim::BlockGenerated(g) => format!("block scalars generated by ({})", g.join(", ")),
        }
    }

    fn holds(&self, s: &ScalarSubgroup, block: Option<&BlockScalarGroup>) -> bool {
        match self {
            ScalarClaim::All => *s == ScalarSubgroup::All,
            ScalarClaim::ContainsMinusOne => s.order().is_some() && s.contains_minus_one(),
            ScalarClaim::Trivial => s.order() == Some(1),
            ScalarClaim::Exactly { order, generator } => {
                matches!(s, ScalarSubgroup::RootsOfUnity { order: o, generator: g }
                    if o == order && g == generator)
            }
            ScalarClaim::BlockGenerated(labels) => block.is_some_and(|b| {
                b.exponents.iter().any(|k| {
                    let matches = k
                        .iter()
                        .zip(labels)
                        .all(|(&e, l)| crate::engine::root_of_unity_label(e, b.order) == *l);
                    let g = k.iter().fold(b.order, |g, &e| num_integer::gcd(g, e));
                    matches && (b.order / g) as usize == b.exponents.len()
                })
            }),
        }
    }
}

struct ModuleClaim {
    spec: ModuleSpec,
    extra_generators: Vec<LinearMap>,
    lie_dimension: usize,
    scalars: ScalarClaim,
}

struct CaseClaim {
    id: u8,
    statement: &'static str,
    modules: Vec<ModuleClaim>,
}

fn diagonal(entries: Vec<GR>) -> Matrix {
    Matrix::diagonal(&entries)
}

fn case_claim(id: u8) -> Result<CaseClaim> {
    let spec = |s: &str| -> ModuleSpec { s.parse().unwrap() };
    let minus = |n: usize| LinearMap::scalar(n, GR::from_int(-1)).with_label("-Id");
    Ok(match id {
        1 => {
            // Transposing the matrix [v1 v2] keeps its determinant.
            let mut swap = Matrix::identity(4);
            swap[(1, 1)] = GR::ZERO;
            swap[(2, 2)] = GR::ZERO;
            swap[(1, 2)] = GR::ONE;
            swap[(2, 1)] = GR::ONE;
            CaseClaim {
                id,
                statement: "R1: G' = GL2; 2R1: G' = O4; 3R1: G' = G",
                modules: vec![
                    ModuleClaim {
                        spec: spec("R1"),
                        extra_generators: vec![],
                        lie_dimension: 4,
                        scalars: ScalarClaim::All,
                    },
                    ModuleClaim {
                        spec: spec("2R1"),
                        extra_generators: vec![LinearMap::new(swap)?
                            .with_label("orthogonal reflection y1 <-> x2")],
                        lie_dimension: 6,
                        scalars: ScalarClaim::ContainsMinusOne,
                    },
                    ModuleClaim {
                        spec: spec("3R1"),
                        extra_generators: vec![],
                        lie_dimension: 3,
                        scalars: ScalarClaim::Trivial,
                    },
                ],
            }
        }
        2 => CaseClaim {
            id,
            statement: "R2 and 2R2: G' = O3",
            modules: vec![
                ModuleClaim {
                    spec: spec("R2"),
                    extra_generators: vec![minus(3)],
                    lie_dimension: 3,
                    scalars: ScalarClaim::Exactly {
                        order: 2,
                        generator: "-1",
                    },
                },
                ModuleClaim {
                    spec: spec("2R2"),
                    extra_generators: vec![minus(6)],
                    lie_dimension: 3,
                    scalars: ScalarClaim::Exactly {
                        order: 2,
                        generator: "-1",
                    },
                },
            ],
        },
        3 => {
            let mut d = vec![GR::from_int(-1); 3];
            d.extend([GR::I, GR::I]);
            CaseClaim {
                id,
                statement: "R2+R1: G' is the image of {g in GL2 | det g = ±1}",
                modules: vec![ModuleClaim {
                    spec: spec("R2+R1"),
                    extra_generators: vec![LinearMap::new(diagonal(d))?
                        .with_label("-1 on R2, i on R1")],
                    lie_dimension: 3,
                    scalars: ScalarClaim::BlockGenerated(vec!["-1", "i"]),
                }],
            }
        }
        4 => CaseClaim {
            id,
            statement: "R3: G' is generated by G and scalar multiplication by i",
            modules: vec![ModuleClaim {
                spec: spec("R3"),
                extra_generators: vec![LinearMap::scalar(4, GR::I).with_label("i·Id")],
                lie_dimension: 3,
                scalars: ScalarClaim::Exactly {
                    order: 4,
                    generator: "i",
                },
            }],
        },
        5 => CaseClaim {
            id,
            statement: "R4: G' = G = SO3",
            modules: vec![ModuleClaim {
                spec: spec("R4"),
                extra_generators: vec![],
                lie_dimension: 3,
                scalars: ScalarClaim::Trivial,
            }],
        },
        _ => {
            return Err(Error::Parse {
                what: "case number",
                input: id.to_string(),
            })
        }
    })
}

/// Random perturbations per claimed generator.
pub const PERTURBATIONS: usize = 10;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NamedGenerator {
    pub name: String,
    pub multidegree: Vec<u32>,
    pub polynomial: Polynomial,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClaimCheck {
    pub map: LinearMap,
    pub determinant: GR,
    pub fixes_generators: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moved_generator: Option<String>,
    pub perturbations: usize,
    pub perturbations_rejected: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScalarProbe {
    pub scalar: GR,
    pub member: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModuleCheck {
    pub module: String,
    pub dimension: usize,
    pub generators: Vec<NamedGenerator>,
    pub generators_infinitesimally_invariant: bool,
    pub claimed_generators: Vec<ClaimCheck>,
    /// Nontrivial scalars in ℚ(i), each tested for membership.
    pub scalar_probes: Vec<ScalarProbe>,
    pub lie_stabilizer_dimension: usize,
    pub expected_lie_stabilizer_dimension: usize,
    pub scalar_subgroup: ScalarSubgroup,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_scalar_group: Option<BlockScalarGroup>,
    pub expected_scalar_subgroup: String,
    pub scalar_subgroup_matches: bool,
    pub generic_stabilizer_dimension: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseReport {
    pub case_id: u8,
    pub claim: String,
    pub modules: Vec<ModuleCheck>,
    /// What the checks leave to the theoretical argument.
    pub note: String,
    pub passed: bool,
}

fn perturbed(phi: &LinearMap, rng: &mut impl rand::Rng) -> Result<LinearMap> {
    let n = phi.dimension();
    let delta = sampling::rational_point(rng, n * n);
    let m = Matrix::from_fn(n, n, |a, b| &phi.matrix()[(a, b)] + &delta[a * n + b]);
    LinearMap::new(m)
}

fn check_module(case: u8, claim: &ModuleClaim, seed: u64) -> Result<ModuleCheck> {
    let spec = &claim.spec;
    let set = generator_set(spec)?;
    let blocks = spec.blocks();
    let mut failures = Vec::new();
    let mut invariant = true;
    for (name, p) in set.names.iter().zip(&set.polys) {
        if !is_infinitesimally_invariant(spec, p)? {
            invariant = false;
            failures.push(format!("case {case}, {spec}: generator {name} = {p} is not invariant"));
        }
    }
    let mut rng = sampling::rng(seed);
    let mut claimed = Vec::new();
    for phi in &claim.extra_generators {
        let label = phi.label().unwrap_or("map").to_string();
        let moved = first_moved(&set.polys, phi)?;
        if let Some(i) = moved {
            failures.push(format!(
                "case {case}, {spec}: claimed generator {label} moves {} = {}",
                set.names[i], set.polys[i]
            ));
        }
        let mut rejected = 0;
        for _ in 0..PERTURBATIONS {
            if !membership_test(&set.polys, &perturbed(phi, &mut rng)?)? {
                rejected += 1;
            }
        }
        if rejected < PERTURBATIONS {
            failures.push(format!(
                "case {case}, {spec}: {} of {PERTURBATIONS} perturbations of {label} fix every generator",
                PERTURBATIONS - rejected
            ));
        }
        claimed.push(ClaimCheck {
            map: phi.clone(),
            determinant: phi.determinant(),
            fixes_generators: moved.is_none(),
            moved_generator: moved.map(|i| format!("{} = {}", set.names[i], set.polys[i])),
            perturbations: PERTURBATIONS,
            perturbations_rejected: rejected,
        });
    }
    let mut probes = Vec::new();
    if claim.scalars == ScalarClaim::Trivial {
        for s in [GR::from_int(-1), GR::I, -GR::I] {
            let member = membership_test(&set.polys, &LinearMap::scalar(set.arity, s.clone()))?;
            if member {
                let minus_i = action_matrix(spec, &Matrix::scalar(2, GR::from_int(-1)))?;
                let note = if minus_i == Matrix::scalar(set.arity, s.clone()) {
                    " (it is the action of -I in SL2)"
                } else {
                    ""
                };
                failures.push(format!(
                    "case {case}, {spec}: scalar {s} fixes every generator{note}"
                ));
            }
            probes.push(ScalarProbe { scalar: s, member });
        }
    }
    let lie_dim = lie_stabilizer(&set.polys, set.arity)?.len();
    if lie_dim != claim.lie_dimension {
        failures.push(format!(
            "case {case}, {spec}: Lie stabilizer has dimension {lie_dim}, expected {}",
            claim.lie_dimension
        ));
    }
    let scalars = scalar_subgroup(&set.polys)?;
    let block = if blocks.len() > 1 {
        block_scalar_group(&set.polys, &blocks)?
    } else {
        None
    };
    let scalars_ok = claim.scalars.holds(&scalars, block.as_ref());
    if !scalars_ok {
        failures.push(format!(
            "case {case}, {spec}: scalar subgroup {scalars} is not {}",
            claim.scalars.describe()
        ));
    }
    Ok(ModuleCheck {
        module: spec.to_string(),
        dimension: set.arity,
        generators: set
            .names
            .iter()
            .zip(&set.polys)
            .map(|(n, p)| NamedGenerator {
                name: n.clone(),
                multidegree: p.multidegree(&blocks).unwrap_or_default(),
                polynomial: p.clone(),
            })
            .collect(),
        generators_infinitesimally_invariant: invariant,
        claimed_generators: claimed,
        scalar_probes: probes,
        lie_stabilizer_dimension: lie_dim,
        expected_lie_stabilizer_dimension: claim.lie_dimension,
        scalar_subgroup: scalars,
        block_scalar_group: block,
        expected_scalar_subgroup: claim.scalars.describe(),
        scalar_subgroup_matches: scalars_ok,
        generic_stabilizer_dimension: generic_stabilizer_dim(spec, GENERIC_SAMPLES, seed)?,
        passed: failures.is_empty(),
        failures,
    })
}

/// Runs every check of case `id` (1–5).
pub fn verify_case(id: u8, seed: u64) -> Result<CaseReport> {
    let claim = case_claim(id)?;
    let modules: Vec<ModuleCheck> = claim
        .modules
        .iter()
        .map(|m| check_module(claim.id, m, seed))
        .collect::<Result<_>>()?;
    Ok(CaseReport {
        case_id: claim.id,
        claim: claim.statement.into(),
        passed: modules.iter().all(|m| m.passed),
        modules,
        note: "checks cover the claimed generators, the identity component (Lie stabilizer) and \
               the scalar subgroup; equality of the full groups rests on the theoretical argument"
            .into(),
    })
}

/// The case whose modules include `spec`.
pub fn case_of(spec: &ModuleSpec) -> Option<u8> {
    (1..=5).find(|&id| {
        case_claim(id).is_ok_and(|c| c.modules.iter().any(|m| m.spec == *spec))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> ModuleSpec {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(spec("R2+R1").summands(), &[2, 1]);
        assert_eq!(spec("R1+R2").to_string(), "R2+R1");
        assert_eq!(spec("2R1").to_string(), "2R1");
        assert_eq!(spec("R1+R1+R1").to_string(), "3R1");
        assert_eq!(spec("2R2").total_dim(), 6);
        for bad in ["R0", "", "2R", "R", "0R1", "Q2", "R2+"] {
            assert!(bad.parse::<ModuleSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn action_examples() {
        let g = Matrix::from_ints(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(action_matrix(&spec("R1"), &g).unwrap(), g);
        let t = GR::from_int(3);
        let d = Matrix::diagonal(&[t.clone(), t.inv()]);
        assert_eq!(
            action_matrix(&spec("R2"), &d).unwrap(),
            Matrix::diagonal(&[GR::from_int(9), GR::ONE, GR::frac(1, 9)])
        );
        let s = Matrix::scalar(2, GR::I);
        assert_eq!(
            action_matrix(&spec("R3"), &s).unwrap(),
            Matrix::scalar(4, GR::I.pow(3))
        );
    }

    #[test]
    fn lie_action_is_the_derivative() {
        // For nilpotent ξ, Sym(1 + tξ) = exp(t·L(ξ)), a finite sum.
        let sp = spec("R3+R1");
        let n = sp.total_dim();
        let t = GR::frac(3, 7);
        let [e, h, f] = sl2_basis();
        for xi in [e, f] {
            let g = &Matrix::identity(2) + &xi.scale(&t);
            let l = lie_action(&sp, &xi).unwrap().scale(&t);
            let (mut exp, mut term) = (Matrix::identity(n), Matrix::identity(n));
            for k in 1..=4 {
                term = (&term * &l).scale(&GR::frac(1, k));
                exp = &exp + &term;
            }
            assert_eq!(action_matrix(&sp, &g).unwrap(), exp);
        }
        let lh = lie_action(&sp, &h).unwrap();
        let weights: Vec<i64> = [3, 1, -1, -3, 1, -1].to_vec();
        assert_eq!(lh, Matrix::diagonal(&weights.iter().map(|&w| GR::from_int(w)).collect::<Vec<_>>()));
    }

    #[test]
    fn transvectant_examples() {
        let sp = spec("R4+R3");
        let f = BinaryForm::generic(&sp, 0);
        let h = transvectant(&f, &f, 2).unwrap();
        assert_eq!(h.degree(), 4);
        let g = BinaryForm::generic(&sp, 1);
        assert!(transvectant(&g, &g, 3).unwrap().is_zero());
        assert_eq!(transvectant(&f, &g, 0).unwrap(), f.mul(&g));
        assert!(transvectant(&f, &g, 4).is_err());
    }

    #[test]
    fn generator_shapes() {
        let two = module_invariant_gens(&spec("2R1")).unwrap();
        // x1·y2 − y1·x2 with coordinates (x1, y1, x2, y2).
        let det = Polynomial::from_terms(
            4,
            [(vec![1, 0, 0, 1], GR::ONE), (vec![0, 1, 1, 0], GR::from_int(-1))],
        );
        assert_eq!(two.len(), 1);
        assert!(two[0].1 == det || two[0].1 == -&det);
        let degs = |s: &str| -> Vec<Vec<u32>> {
            let sp = spec(s);
            module_invariant_gens(&sp)
                .unwrap()
                .iter()
                .map(|(_, p)| p.multidegree(&sp.blocks()).unwrap())
                .collect()
        };
        assert_eq!(degs("R4"), vec![vec![2], vec![3]]);
        assert_eq!(degs("R3"), vec![vec![4]]);
        assert_eq!(degs("R2+R1"), vec![vec![2, 0], vec![1, 2]]);
        assert_eq!(degs("3R1").len(), 3);
        assert_eq!(degs("2R2").len(), 3);
        assert!(module_invariant_gens(&spec("R1")).unwrap().is_empty());
        assert!(matches!(module_invariant_gens(&spec("R5")), Err(Error::Unsupported(_))));
    }

    #[test]
    fn cubic_discriminant_vanishes_on_a_double_root() {
        // x²y has a double root.
        let p = &module_invariant_gens(&spec("R3")).unwrap()[0].1;
        let v = [0, 1, 0, 0].map(GR::from_int);
        assert!(p.evaluate(&v).unwrap().is_zero());
        // x³ − xy² = x(x−y)(x+y) has distinct roots.
        let w = [1, 0, -1, 0].map(GR::from_int);
        assert!(!p.evaluate(&w).unwrap().is_zero());
    }

    #[test]
    fn generic_stabilizers() {
        assert_eq!(generic_stabilizer_dim(&spec("R1"), 8, 0).unwrap(), 1);
        assert_eq!(generic_stabilizer_dim(&spec("R2"), 8, 0).unwrap(), 1);
        for s in ["2R1", "3R1", "2R2", "R2+R1", "R3", "R4"] {
            assert_eq!(generic_stabilizer_dim(&spec(s), 8, 0).unwrap(), 0, "{s}");
        }
    }

    #[test]
    fn independent_generator_count() {
        for s in ["R2", "2R2", "R4", "2R1", "3R1"] {
            let sp = spec(s);
            let stab = generic_stabilizer_dim(&sp, 8, 1).unwrap();
            assert_eq!(jacobian_rank(&sp, 2).unwrap(), sp.total_dim() - (3 - stab), "{s}");
        }
    }

    #[test]
    fn cases_three_to_five_pass() {
        for id in 3..=5 {
            let rep = verify_case(id, 0).unwrap();
            assert!(rep.passed, "{:#?}", rep.modules.iter().map(|m| &m.failures).collect::<Vec<_>>());
        }
    }

    #[test]
    fn case_lookup() {
        assert_eq!(case_of(&spec("2R2")), Some(2));
        assert_eq!(case_of(&spec("R4")), Some(5));
        assert_eq!(case_of(&spec("R5")), None);
    }
}
