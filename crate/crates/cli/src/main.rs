use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use gprime_core::chevalley::{chevalley_involution, minus_psi, ChevalleyAlgebra};
use gprime_core::classical::MatrixRealization;
use gprime_core::engine::{
    scalar_subgroup_of_degrees, stabilizer_report, AdjointInvariants, LinearMap, Membership,
    GROUP_LEVEL_CAVEAT,
};
use gprime_core::roots::{
    coxeter_number, invariant_degrees, is_self_dual_type, longest_element, CartanType, RootSystem,
};
use gprime_core::sl2::{case_of, generator_set, verify_case, ModuleSpec};
use gprime_core::suite::{self, SuiteOptions};
use gprime_core::{Error, GaussianRational as GR};

pub const SCHEMA_VERSION: u32 = 1;

/// Reports are written here (one file per command) when `--output` is absent.
pub const OUTPUT_DIR_VAR: &str = "GPRIME_OUTPUT_DIR";

/// Adjoint Lie stabilizers are solved only up to this algebra dimension
/// (the linear system has dim² unknowns).
const LIE_STABILIZER_MAX_DIM: usize = 21;

#[derive(Parser)]
#[command(name = "gprime", version, about = "Invariant-preserving linear maps of Lie algebras and SL2 modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Root data, invariant degrees and self-duality of a Cartan type.
    Roots { cartan_type: String },
    /// Build the Chevalley basis and audit it.
    Algebra {
        cartan_type: String,
        /// Include the full bracket table.
        #[arg(long)]
        brackets: bool,
    },
    /// The Chevalley involution ψ and the membership of −ψ.
    Psi {
        cartan_type: String,
        /// Include the matrix of ψ.
        #[arg(long)]
        matrix: bool,
    },
    /// Test whether a linear map fixes every generator.
    Gprime {
        /// A Cartan type (adjoint representation) or an SL2 module such as 2R1 or R2+R1.
        target: String,
        /// JSON map: {"dim", "entries"} or {"builtin": "transpose" | "minus-psi" | "minus-identity" | "scalar:<c>"}.
        #[arg(long)]
        map: PathBuf,
    },
    /// Verify one of the SL2 cases 1-5, or the case containing a module.
    Sl2 { target: String },
    /// Lie stabilizer, scalar subgroup and memberships of a generator set.
    Stabilizer {
        target: String,
        /// Extra maps to test, in the same format as `gprime --map`.
        #[arg(long)]
        map: Vec<PathBuf>,
    },
    /// Run every acceptance criterion.
    VerifyAll {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Roots { .. } => "roots",
            Command::Algebra { .. } => "algebra",
            Command::Psi { .. } => "psi",
            Command::Gprime { .. } => "gprime",
            Command::Sl2 { .. } => "sl2",
            Command::Stabilizer { .. } => "stabilizer",
            Command::VerifyAll { .. } => "verify-all",
        }
    }

    fn target(&self) -> Option<&str> {
        match self {
            Command::Roots { cartan_type }
            | Command::Algebra { cartan_type, .. }
            | Command::Psi { cartan_type, .. } => Some(cartan_type),
            Command::Gprime { target, .. }
            | Command::Sl2 { target }
            | Command::Stabilizer { target, .. } => Some(target),
            Command::VerifyAll { .. } => None,
        }
    }
}

/// Bad input (exit 2) or a failed computation (exit 1).
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Construction(_) | Error::Singular | Error::GroupTooLarge { .. } => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(Value, bool), Failure>;

enum Target {
    Adjoint(CartanType),
    Module(ModuleSpec),
}

impl Target {
    fn parse(s: &str) -> Result<Self, Failure> {
        if let Ok(t) = s.parse::<CartanType>() {
            return Ok(Target::Adjoint(t));
        }
        s.parse::<ModuleSpec>().map(Target::Module).map_err(|_| {
            Failure::Usage(format!("{s:?} is neither a Cartan type nor an SL2 module"))
        })
    }
}

fn cartan(s: &str) -> Result<CartanType, Failure> {
    Ok(s.parse()?)
}

fn roots(t: CartanType) -> Outcome {
    let rs = RootSystem::new(t);
    let degrees = invariant_degrees(t);
    let w0 = longest_element(&rs);
    let self_dual = is_self_dual_type(t);
    let even = degrees.iter().all(|d| d % 2 == 0);
    let minus_id = w0.matrix.is_minus_identity();
    let order: u128 = degrees.iter().map(|&d| d as u128).product();
    let report = json!({
        "cartanType": t.to_string(),
        "rank": t.rank(),
        "cartanMatrix": rs.cartan_matrix(),
        "symmetrizer": rs.symmetrizer(),
        "positiveRoots": rs.positive_roots(),
        "numPositiveRoots": rs.num_positive(),
        "degrees": degrees,
        "exponents": degrees.iter().map(|d| d - 1).collect::<Vec<_>>(),
        "coxeterNumber": coxeter_number(&rs),
        "weylGroupOrder": order.to_string(),
        "selfDual": self_dual,
        "allDegreesEven": even,
        "w0IsMinusIdentity": minus_id,
        "w0Length": w0.word.len(),
    });
    let ok = self_dual == even && even == minus_id && w0.word.len() == rs.num_positive();
    Ok((report, ok))
}

fn algebra(t: CartanType, brackets: bool) -> Outcome {
    let alg = ChevalleyAlgebra::build(t)?;
    let a = alg.audit();
    let ok = a.graded
        && a.antisymmetric
        && a.jacobi
        && a.sl2_triples
        && a.string_lengths
        && a.killing_symmetric
        && a.killing_invariant
        && a.killing_determinant != "0";
    let mut report = json!({
        "cartanType": t.to_string(),
        "rank": alg.rank(),
        "dimension": alg.dimension(),
        "numPositiveRoots": alg.root_system().num_positive(),
        "basis": alg.basis_labels(),
        "audit": to_value(a)?,
    });
    if brackets {
        report["data"] = to_value(&alg.to_data())?;
    }
    Ok((report, ok))
}

fn psi(t: CartanType, with_matrix: bool, seed: u64) -> Outcome {
    let inv = AdjointInvariants::new(t)?;
    let alg = inv.algebra();
    let (psi, audit) = chevalley_involution(alg)?;
    let m = minus_psi(alg)?;
    let defect = alg.homomorphism_defect(&m.matrix)?;
    let map = LinearMap::new(m.matrix.clone())?.with_label("minus-psi");
    let membership = inv.membership(&map, seed)?;
    let ok = audit.squares_to_identity
        && audit.is_automorphism
        && !m.is_automorphism
        && membership.member;
    let mut report = json!({
        "cartanType": t.to_string(),
        "dimension": alg.dimension(),
        "psi": {
            "order": psi.order,
            "audit": to_value(&audit)?,
        },
        "minusPsi": {
            "isAutomorphism": m.is_automorphism,
            "defectPair": defect.map(|(i, j)| [alg.basis_label(i), alg.basis_label(j)]),
            "membership": to_value(&membership)?,
        },
        "generators": inv.names(),
        "generatorDegrees": inv.degrees(),
        "generatorProvenance": to_value(inv.provenance())?,
        "caveat": GROUP_LEVEL_CAVEAT,
    });
    if with_matrix {
        report["psi"]["matrix"] = to_value(&psi.matrix)?;
    }
    Ok((report, ok))
}

/// Reads a map file, resolving builtins against the target.
fn load_map(path: &Path, target: &Target) -> Result<LinearMap, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let dim = match target {
        Target::Adjoint(t) => t.algebra_dimension(),
        Target::Module(s) => s.total_dim(),
    };
    let map = match value.get("builtin") {
        Some(b) => {
            let name = b
                .as_str()
                .ok_or_else(|| Failure::Usage("builtin must be a string".into()))?;
            builtin(name, target, dim)?
        }
        None => serde_json::from_value::<LinearMap>(value)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
    };
    if map.dimension() != dim {
        return Err(Failure::Usage(format!(
            "map has dimension {}, target has dimension {dim}",
            map.dimension()
        )));
    }
    if map.label().is_none() {
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        return Ok(match name {
            Some(n) => map.with_label(n),
            None => map,
        });
    }
    Ok(map)
}

fn builtin(name: &str, target: &Target, dim: usize) -> Result<LinearMap, Failure> {
    if let Some(c) = name.strip_prefix("scalar:") {
        let c: GR = c.parse().map_err(Error::from)?;
        return Ok(LinearMap::scalar(dim, c));
    }
    match (name, target) {
        ("minus-identity", _) => Ok(LinearMap::scalar(dim, GR::from_int(-1)).with_label("minus-identity")),
        ("transpose", Target::Adjoint(t)) => {
            let alg = ChevalleyAlgebra::build(*t)?;
            let real = MatrixRealization::new(&alg)?;
            Ok(LinearMap::new(real.transpose_map()?)?.with_label("transpose"))
        }
        ("minus-psi", Target::Adjoint(t)) => {
            let alg = ChevalleyAlgebra::build(*t)?;
            Ok(LinearMap::new(minus_psi(&alg)?.matrix)?.with_label("minus-psi"))
        }
        ("transpose" | "minus-psi", Target::Module(s)) => Err(Failure::Usage(format!(
            "builtin {name:?} needs a Cartan type, not the module {s}"
        ))),
        _ => Err(Failure::Usage(format!("unknown builtin map {name:?}"))),
    }
}

fn gprime(target: &str, map: &Path, seed: u64) -> Outcome {
    let tgt = Target::parse(target)?;
    let phi = load_map(map, &tgt)?;
    let (membership, generators, provenance) = match &tgt {
        Target::Adjoint(t) => {
            let inv = AdjointInvariants::new(*t)?;
            let m = inv.membership(&phi, seed)?;
            (m, inv.names().to_vec(), inv.provenance().clone())
        }
        Target::Module(s) => {
            let set = generator_set(s)?;
            let moved = gprime_core::engine::first_moved(&set.polys, &phi)?;
            let m = Membership {
                map: phi.label().map(String::from),
                member: moved.is_none(),
                method: if phi.as_scalar().is_some() { "scalar" } else { "symbolic" }.into(),
                points: None,
                moved_generator: moved.map(|i| set.names[i].clone()),
            };
            (m, set.names, set.provenance)
        }
    };
    let invertible = phi.is_invertible();
    let ok = membership.member && invertible;
    let report = json!({
        "target": target,
        "dimension": phi.dimension(),
        "determinant": phi.determinant().to_string(),
        "invertible": invertible,
        "generators": generators,
        "generatorProvenance": to_value(&provenance)?,
        "membership": to_value(&membership)?,
        "member": ok,
        "caveat": GROUP_LEVEL_CAVEAT,
    });
    Ok((report, ok))
}

fn sl2(target: &str, seed: u64) -> Outcome {
    let id = match target.parse::<u8>() {
        Ok(id) if (1..=5).contains(&id) => id,
        Ok(id) => return Err(Failure::Usage(format!("no SL2 case {id}; cases are 1-5"))),
        Err(_) => {
            let spec: ModuleSpec = target.parse()?;
            case_of(&spec)
                .ok_or_else(|| Failure::Usage(format!("{spec} belongs to none of the cases 1-5")))?
        }
    };
    let rep = verify_case(id, seed)?;
    let ok = rep.passed;
    Ok((to_value(&rep)?, ok))
}

fn stabilizer(target: &str, maps: &[PathBuf], seed: u64) -> Outcome {
    let tgt = Target::parse(target)?;
    let maps = maps
        .iter()
        .map(|p| load_map(p, &tgt))
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = match &tgt {
        Target::Module(s) => {
            let set = generator_set(s)?;
            to_value(&stabilizer_report(&s.to_string(), &set, &s.blocks(), &maps)?)?
        }
        Target::Adjoint(t) => {
            let inv = AdjointInvariants::new(*t)?;
            let dim = inv.algebra().dimension();
            match inv.generator_set() {
                Some(set) if dim <= LIE_STABILIZER_MAX_DIM => {
                    let whole = 0..dim;
                    let blocks = std::slice::from_ref(&whole);
                    to_value(&stabilizer_report(&t.to_string(), &set, blocks, &maps)?)?
                }
                _ => {
                    let memberships = maps
                        .iter()
                        .map(|m| inv.membership(m, seed))
                        .collect::<Result<Vec<_>, _>>()?;
                    let degrees = inv.degrees();
                    json!({
                        "target": t.to_string(),
                        "dimension": dim,
                        "generators": inv.names(),
                        "generatorDegrees": degrees.iter().map(|&d| vec![d]).collect::<Vec<_>>(),
                        "generatorProvenance": to_value(inv.provenance())?,
                        "memberships": to_value(&memberships)?,
                        "lieStabilizerDimension": null,
                        "lieStabilizerBasis": [],
                        "scalarSubgroup": to_value(&scalar_subgroup_of_degrees(degrees))?,
                        "caveat": format!(
                            "{GROUP_LEVEL_CAVEAT} The Lie stabilizer is computed for symbolic \
                             generator sets of algebras of dimension at most {LIE_STABILIZER_MAX_DIM}."
                        ),
                    })
                }
            }
        }
    };
    let ok = report["memberships"]
        .as_array()
        .is_none_or(|ms| ms.iter().all(|m| m["member"] == true));
    report["passed"] = ok.into();
    Ok((report, ok))
}

fn verify_all(max_rank: usize, seed: u64) -> Outcome {
    let opts = SuiteOptions { max_rank, seed };
    let mut results = Vec::new();
    for id in suite::CRITERIA {
        let r = suite::run(id, opts);
        eprintln!("criterion {id}: {}", if r.passed { "PASS" } else { "FAIL" });
        results.push(r);
    }
    let ok = results.iter().all(|r| r.passed);
    let report = json!({
        "maxRank": max_rank,
        "criteria": to_value(&results)?,
        "failed": results.iter().filter(|r| !r.passed).map(|r| r.id).collect::<Vec<_>>(),
        "passed": ok,
    });
    Ok((report, ok))
}

fn to_value<T: serde::Serialize + ?Sized>(v: &T) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::Internal(e.to_string()))
}

fn run(cli: &Cli) -> Outcome {
    let seed = cli.seed;
    match &cli.command {
        Command::Roots { cartan_type } => roots(cartan(cartan_type)?),
        Command::Algebra { cartan_type, brackets } => algebra(cartan(cartan_type)?, *brackets),
        Command::Psi { cartan_type, matrix } => psi(cartan(cartan_type)?, *matrix, seed),
        Command::Gprime { target, map } => gprime(target, map, seed),
        Command::Sl2 { target } => sl2(target, seed),
        Command::Stabilizer { target, map } => stabilizer(target, map, seed),
        Command::VerifyAll { max_rank } => verify_all(*max_rank, seed),
    }
}

/// `--output`, else `$GPRIME_OUTPUT_DIR/<command>[-<target>].json`, else stdout.
fn destination(cli: &Cli) -> Option<PathBuf> {
    if let Some(p) = &cli.output {
        return Some(p.clone());
    }
    let dir = std::env::var_os(OUTPUT_DIR_VAR)?;
    let name = match cli.command.target() {
        Some(t) => format!("{}-{}.json", cli.command.name(), t.replace(['/', '\\'], "_")),
        None => format!("{}.json", cli.command.name()),
    };
    Some(Path::new(&dir).join(name))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, ok) = match run(&cli) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let mut doc = Map::new();
    doc.insert("schemaVersion".into(), SCHEMA_VERSION.into());
    doc.insert("command".into(), cli.command.name().into());
    doc.insert("seed".into(), cli.seed.into());
    match body {
        Value::Object(m) => doc.extend(m),
        other => {
            doc.insert("report".into(), other);
        }
    }
    let text = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize") + "\n";
    match destination(&cli) {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
