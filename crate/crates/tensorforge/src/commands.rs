//! The `catalog`, `compat`, `tensor` and `enumerate` commands. Each one
//! returns a [`RunReport`]; printing and exit codes belong to the binary.

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde_json::{json, Value};
use tensorforge_core::action::{
    action_from_hom_pair, check_zeta2_congruence, is_compatible, normalizer_conditions, HomPair,
    MutualAction, RawActions,
};
use tensorforge_core::catalog::{self, CatalogKey};
use tensorforge_core::fp::{coset_enumerate, table_to_group, EnumLimits};
use tensorforge_core::hom::are_isomorphic;
use tensorforge_core::tensor::{compute_tensor_with, TensorOptions, DEFAULT_MAX_SYMBOLS};
use tensorforge_core::{
    abelian_invariants, automorphism_group, ActionPair, AutGroup, Budget, Error, FiniteGroup,
    GroupHom,
};

use crate::io::{
    coset_table_csv, normalizer_json, read_json, tensor_report_json, witness_json, write_json,
    ActionPairFile, AutGroupFile, GroupFile, PresentationFile,
};
use crate::report::{RunReport, Status};
use crate::resolve::{resolve_group, resolve_hom, ResolvedGroup};
use crate::{Result, ToolError};

/// Runs `body`, turning any error into an error report.
fn guarded(command: &str, body: impl FnOnce(&mut RunReport) -> Result<()>) -> RunReport {
    let mut report = RunReport::new(command);
    if let Err(e) = body(&mut report) {
        report.fail_with(&e);
    }
    report
}

pub fn catalog_list() -> RunReport {
    guarded("catalog list", |r| {
        let rows: Vec<Value> = catalog::standard_keys()
            .iter()
            .map(|k| {
                let g = catalog::make(k)?;
                Ok(json!({"key": k.to_string(), "order": g.order(), "abelian": g.is_abelian()}))
            })
            .collect::<Result<_>>()?;
        r.result("families", json!([
            "cyclic:n", "dihedral:n", "quaternion:8", "symmetric:n (n <= 4)", "heisenberg:p (p prime, p <= 5)",
            "elemab:p:k", "product:a,b"
        ]));
        r.result("max_order", json!(catalog::MAX_CATALOG_ORDER));
        r.result("keys", Value::Array(rows));
        Ok(())
    })
}

/// Writes the group, or its automorphism group when `aut` is set.
pub fn catalog_export(key: &str, path: &Path, aut: bool, budget: Budget) -> RunReport {
    guarded("catalog export", |r| {
        r.input("key", json!(key));
        r.input("path", json!(path.display().to_string()));
        r.input("aut", json!(aut));
        let parsed: CatalogKey = key.parse()?;
        let g = catalog::make(&parsed)?;
        if aut {
            let a = r.stage("automorphisms", || automorphism_group(&g, budget))?;
            write_json(path, &AutGroupFile::from_aut(key, &a))?;
            r.result("aut_order", json!(a.order()));
        } else {
            write_json(path, &GroupFile::from_group(&g))?;
        }
        r.result("order", json!(g.order()));
        r.result("written", json!(path.display().to_string()));
        Ok(())
    })
}

/// How one side acts: `trivial`, `inversion`, or a comma list giving, for
/// every element of the acting group, an automorphism index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapSpec {
    Trivial,
    /// For cyclic acting groups: `c^k` acts as inversion^k, where `c` is
    /// the first element generating the acting group.
    Inversion,
    Indices(Vec<usize>),
}

impl FromStr for MapSpec {
    type Err = ToolError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "trivial" => Ok(MapSpec::Trivial),
            "inversion" => Ok(MapSpec::Inversion),
            list => list
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(MapSpec::Indices)
                .map_err(|_| ToolError::Input(format!("bad action `{s}`: expected trivial, inversion or a comma list"))),
        }
    }
}

fn inversion_index(aut: &AutGroup) -> Result<usize> {
    let g = aut.base();
    let inv: Vec<usize> = g.elements().map(|x| g.inv(x)).collect();
    aut.index_of(&inv)
        .ok_or_else(|| ToolError::Input("inversion is an automorphism only of abelian groups".into()))
}

/// The automorphism index each element of `acting` is sent to.
fn map_indices(spec: &MapSpec, acting: &FiniteGroup, aut: &AutGroup) -> Result<Vec<usize>> {
    let n = acting.order();
    match spec {
        MapSpec::Trivial => Ok(vec![aut.identity(); n]),
        MapSpec::Inversion => {
            let inv = inversion_index(aut)?;
            let c = acting
                .elements()
                .find(|&x| acting.element_order(x) == n)
                .ok_or_else(|| ToolError::Input("inversion needs a cyclic acting group".into()))?;
            let mut out = vec![aut.identity(); n];
            let mut x = acting.identity();
            for k in 0..n {
                out[x] = if k % 2 == 1 { inv } else { aut.identity() };
                x = acting.mul(x, c);
            }
            Ok(out)
        }
        MapSpec::Indices(v) => {
            if v.len() != n {
                return Err(ToolError::Input(format!("action lists need {n} entries, got {}", v.len())));
            }
            if let Some(&bad) = v.iter().find(|&&i| i >= aut.order()) {
                return Err(ToolError::Input(format!("automorphism index {bad} out of range (order {})", aut.order())));
            }
            Ok(v.clone())
        }
    }
}

/// A pair of actions, either both homomorphisms or given element-wise.
pub enum Actions {
    Pair(ActionPair),
    Raw(RawActions),
}

impl Actions {
    pub fn as_dyn(&self) -> &dyn MutualAction {
        match self {
            Actions::Pair(p) => p,
            Actions::Raw(r) => r,
        }
    }
}

/// Where the actions of `compat` and `tensor` come from.
#[derive(Debug, Clone, Default)]
pub struct ActionArgs {
    pub g: Option<String>,
    pub h: Option<String>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub pair: Option<PathBuf>,
    pub phi: Option<PathBuf>,
    pub psi: Option<PathBuf>,
}

pub struct ResolvedActions {
    pub g: ResolvedGroup,
    pub h: ResolvedGroup,
    pub actions: Actions,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub alpha_homomorphic: bool,
    pub beta_homomorphic: bool,
    /// Set when the actions come from a homomorphism pair.
    pub zeta2: Option<Value>,
}

fn both_groups(args: &ActionArgs) -> Result<(ResolvedGroup, ResolvedGroup)> {
    match (&args.g, &args.h) {
        (Some(g), Some(h)) => Ok((resolve_group(g)?, resolve_group(h)?)),
        _ => Err(ToolError::Input("two groups G and H are required".into())),
    }
}

pub fn resolve_actions(args: &ActionArgs, budget: Budget, r: &mut RunReport) -> Result<ResolvedActions> {
    if let (Some(phi_path), Some(psi_path)) = (&args.phi, &args.psi) {
        let phi = resolve_hom(phi_path)?;
        let psi = resolve_hom(psi_path)?;
        if psi.source.group != phi.target.group || psi.target.group != phi.source.group {
            return Err(ToolError::Input("psi must map the target of phi back to its source".into()));
        }
        r.input("phi", phi.to_json());
        r.input("psi", psi.to_json());
        let (g, h) = (phi.source.clone(), phi.target.clone());
        let aut_g = Arc::new(r.stage("automorphisms", || automorphism_group(&g.group, budget))?);
        let aut_h = Arc::new(automorphism_group(&h.group, budget)?);
        let pair = HomPair { phi: phi.hom.clone(), psi: GroupHom::new(&h.group, &g.group, psi.hom.map().to_vec())? };
        let z = check_zeta2_congruence(&pair);
        let zeta2 = json!({
            "holds": z.holds,
            "witness": z.witness.map(|w| json!({"side": format!("{:?}", w.side), "element": w.element, "defect": w.defect})),
        });
        let ap = action_from_hom_pair(aut_g, aut_h, &pair)?;
        return Ok(ResolvedActions {
            alpha: ap.alpha().map().to_vec(),
            beta: ap.beta().map().to_vec(),
            g,
            h,
            actions: Actions::Pair(ap),
            alpha_homomorphic: true,
            beta_homomorphic: true,
            zeta2: Some(zeta2),
        });
    }
    if args.phi.is_some() || args.psi.is_some() {
        return Err(ToolError::Input("--phi and --psi must be given together".into()));
    }
    let (g, h, alpha_spec, beta_spec) = match &args.pair {
        Some(path) => {
            let file: ActionPairFile = read_json(path)?;
            r.input("pair", json!(path.display().to_string()));
            let (g, h) = (resolve_group(&file.g)?, resolve_group(&file.h)?);
            (g, h, MapSpec::Indices(file.alpha.map), MapSpec::Indices(file.beta.map))
        }
        None => {
            let (g, h) = both_groups(args)?;
            let parse = |s: &Option<String>| s.as_deref().unwrap_or("trivial").parse::<MapSpec>();
            (g, h, parse(&args.alpha)?, parse(&args.beta)?)
        }
    };
    let aut_g = Arc::new(r.stage("automorphisms", || automorphism_group(&g.group, budget))?);
    let aut_h = Arc::new(automorphism_group(&h.group, budget)?);
    let alpha = map_indices(&alpha_spec, &h.group, &aut_g)?;
    let beta = map_indices(&beta_spec, &g.group, &aut_h)?;
    let alpha_hom = GroupHom::new(&h.group, aut_g.group(), alpha.clone());
    let beta_hom = GroupHom::new(&g.group, aut_h.group(), beta.clone());
    let (alpha_homomorphic, beta_homomorphic) = (alpha_hom.is_ok(), beta_hom.is_ok());
    let actions = match (alpha_hom, beta_hom) {
        (Ok(a), Ok(b)) => Actions::Pair(ActionPair::new(aut_g, aut_h, a, b)?),
        _ => {
            let on_g = alpha.iter().map(|&i| aut_g.maps()[i].clone()).collect();
            let on_h = beta.iter().map(|&i| aut_h.maps()[i].clone()).collect();
            Actions::Raw(RawActions::new(&g.group, &h.group, on_g, on_h)?)
        }
    };
    Ok(ResolvedActions { g, h, actions, alpha, beta, alpha_homomorphic, beta_homomorphic, zeta2: None })
}

fn record_action_inputs(r: &mut RunReport, a: &ResolvedActions) {
    r.input("g", a.g.to_json());
    r.input("h", a.h.to_json());
    r.input("alpha", json!({"map": a.alpha, "homomorphic": a.alpha_homomorphic}));
    r.input("beta", json!({"map": a.beta, "homomorphic": a.beta_homomorphic}));
}

/// Exit 0 iff the actions are compatible.
pub fn compat(args: &ActionArgs, budget: Budget) -> RunReport {
    guarded("compat", |r| {
        let a = resolve_actions(args, budget, r)?;
        record_action_inputs(r, &a);
        let report = r.stage("compatibility", || is_compatible(a.actions.as_dyn()));
        r.result("compatible", json!(report.compatible));
        r.result("homomorphic", json!({"alpha": a.alpha_homomorphic, "beta": a.beta_homomorphic}));
        r.result("witness", report.witness.map_or(Value::Null, |w| witness_json(&w, &a.g.group, &a.h.group)));
        r.result("normalizer", match &a.actions {
            Actions::Pair(p) => normalizer_json(&normalizer_conditions(p)),
            Actions::Raw(_) => Value::Null,
        });
        if let Some(z) = &a.zeta2 {
            r.result("zeta2_congruence", z.clone());
        }
        r.status = if report.compatible { Status::Pass } else { Status::Fail };
        Ok(())
    })
}

/// A catalog key isomorphic to `g`, searched among keys of the same order.
pub fn identify(g: &FiniteGroup, budget: Budget) -> Option<String> {
    let n = g.order();
    let mut keys: Vec<CatalogKey> = catalog::standard_keys().into_iter().filter(|k| k.order() == n).collect();
    keys.push(CatalogKey::Cyclic(n));
    keys.dedup();
    keys.into_iter().find_map(|k| {
        let candidate = catalog::make(&k).ok()?;
        match are_isomorphic(g, &candidate, budget) {
            Ok(Some(_)) => Some(k.to_string()),
            _ => None,
        }
    })
}

#[derive(Debug, Clone, Copy)]
pub struct TensorArgs {
    pub force: bool,
    pub max_cosets: Option<usize>,
}

pub fn tensor(args: &ActionArgs, targs: TensorArgs, budget: Budget) -> RunReport {
    guarded("tensor", |r| {
        let a = resolve_actions(args, budget, r)?;
        record_action_inputs(r, &a);
        r.input("force", json!(targs.force));
        let mut limits = EnumLimits::default();
        if let Some(m) = targs.max_cosets {
            limits.max_cosets = m;
        }
        r.input("max_cosets", json!(limits.max_cosets));
        let check = r.stage("compatibility", || is_compatible(a.actions.as_dyn()));
        r.result("compatible", json!(check.compatible));
        r.result("forced", json!(targs.force));
        if !check.compatible && !targs.force {
            let w = check.witness.expect("incompatible pairs carry a witness");
            r.result("witness", witness_json(&w, &a.g.group, &a.h.group));
            r.result("error", json!({
                "kind": "IncompatibleActions",
                "message": format!("{}; rerun with --force to present the group anyway", w),
            }));
            r.status = Status::Fail;
            return Ok(());
        }
        let opts = TensorOptions { limits, max_symbols: DEFAULT_MAX_SYMBOLS, force: targs.force };
        let report = match r.stage("enumeration", || compute_tensor_with(a.actions.as_dyn(), opts)) {
            Ok(t) => t,
            Err(Error::BudgetExceeded { what, limit }) => {
                let n = a.g.group.order() * a.h.group.order();
                let msg = format!("{n} symbols exceed the {what} cap of {limit}; not attempted");
                r.result("error", json!({"kind": "BudgetExceeded", "message": msg}));
                r.status = Status::Error;
                return Ok(());
            }
            Err(e) => return Err(e.into()),
        };
        let iso = r.stage("identification", || identify(&report.tensor, budget));
        let summary = format!(
            "order {}, {}, derivative order {}, kernel order {}",
            report.order(),
            match &report.invariants {
                Some(inv) => format!("abelian with invariants {inv}"),
                None => "non-abelian".to_string(),
            },
            report.derivative.order(),
            report.kernel.as_ref().map_or("-".to_string(), |k| k.order().to_string()),
        );
        r.result("summary", json!(summary));
        r.result("isomorphic_to", json!(iso));
        r.result("class", json!(report.class));
        r.result("relators", json!(report.relators));
        r.result("tensor", tensor_report_json(&report, a.g.group.order()));
        Ok(())
    })
}

/// Enumerates the cosets of the trivial subgroup of a presented group.
pub fn enumerate(path: &Path, max_cosets: Option<usize>, csv: Option<&Path>, budget: Budget) -> RunReport {
    guarded("enumerate", |r| {
        let file: PresentationFile = read_json(path)?;
        r.input("presentation", json!({"path": path.display().to_string(), "ngens": file.ngens, "relators": file.relators}));
        let p = file.to_presentation()?;
        let mut limits = EnumLimits::default();
        if let Some(m) = max_cosets {
            limits.max_cosets = m;
        }
        r.input("max_cosets", json!(limits.max_cosets));
        let table = r.stage("enumeration", || coset_enumerate(&p, limits))?;
        r.result("cosets", json!(table.len()));
        r.result("complete", json!(table.is_complete()));
        if let Some(out) = csv {
            std::fs::write(out, coset_table_csv(&table))
                .map_err(|source| ToolError::Io { path: out.into(), source })?;
            r.result("csv", json!(out.display().to_string()));
        }
        let (g, _) = table_to_group(&table, &p)?;
        r.result("abelian", json!(g.is_abelian()));
        if g.is_abelian() {
            r.result("invariants", json!(abelian_invariants(&g).factors()));
        }
        let iso = r.stage("identification", || identify(&g, budget));
        r.result("isomorphic_to", json!(iso));
        Ok(())
    })
}
