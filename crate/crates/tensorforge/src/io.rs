//! JSON file formats and their conversions to core types.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use tensorforge_core::action::{CompatibilityWitness, EvidenceRecord, NormalizerFlags};
use tensorforge_core::fp::{CosetTable, Presentation};
use tensorforge_core::tensor::TensorReport;
use tensorforge_core::{AutGroup, FiniteGroup};

use crate::ToolError;

/// `{"order": n, "table": [[int]], "names": ["e", ...]}`; `table[i][j]` is
/// the index of `e_i * e_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile { order: g.order(), table: g.table_rows(), names: g.names().map(<[String]>::to_vec) }
    }

    /// Validates every group axiom.
    pub fn to_group(&self) -> Result<FiniteGroup, ToolError> {
        if self.table.len() != self.order {
            return Err(ToolError::Input(format!(
                "group file declares order {} but has {} rows",
                self.order,
                self.table.len()
            )));
        }
        Ok(FiniteGroup::from_cayley_table(&self.table, self.names.clone())?)
    }
}

/// `{"source": key-or-path, "target": key-or-path, "map": [int]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomFile {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

/// `{"base": key, "order": n, "maps": [[int]], "inner": [int]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutGroupFile {
    pub base: String,
    pub order: usize,
    pub maps: Vec<Vec<usize>>,
    pub inner: Vec<usize>,
}

impl AutGroupFile {
    pub fn from_aut(base: &str, aut: &AutGroup) -> Self {
        AutGroupFile {
            base: base.to_string(),
            order: aut.order(),
            maps: aut.maps().to_vec(),
            inner: aut.inner_indices().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapField {
    pub map: Vec<usize>,
}

/// `{"g": key, "h": key, "alpha": {"map": [int]}, "beta": {"map": [int]}}`;
/// maps index into the lexicographically ordered automorphism groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionPairFile {
    pub g: String,
    pub h: String,
    pub alpha: MapField,
    pub beta: MapField,
}

/// `{"ngens": n, "relators": [[signed int]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub ngens: usize,
    pub relators: Vec<Vec<i32>>,
}

impl PresentationFile {
    pub fn to_presentation(&self) -> Result<Presentation, ToolError> {
        Ok(Presentation::new(self.ngens, self.relators.clone())?)
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationFile { ngens: p.ngens(), relators: p.relators().to_vec() }
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, ToolError> {
    let text = fs::read_to_string(path).map_err(|source| ToolError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| ToolError::Json { path: path.into(), source })
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<(), ToolError> {
    let mut text = serde_json::to_string_pretty(value).expect("serialisable value");
    text.push('\n');
    fs::write(path, text).map_err(|source| ToolError::Io { path: path.into(), source })
}

/// `{"order", "abelian", "invariants"?, "derivative_order", "kernel_order",
/// "kappa", "symbols": {"g,h": int}}`. `kernel_order` and `kappa` are null
/// when kappa does not extend to a homomorphism.
pub fn tensor_report_json(r: &TensorReport, g_order: usize) -> Value {
    let mut symbols = Map::new();
    for g in 0..g_order {
        for h in 0..r.h_order {
            symbols.insert(format!("{g},{h}"), json!(r.symbol(g, h)));
        }
    }
    let mut out = Map::new();
    out.insert("order".into(), json!(r.order()));
    out.insert("abelian".into(), json!(r.tensor.is_abelian()));
    if let Some(inv) = &r.invariants {
        out.insert("invariants".into(), json!(inv.factors()));
    }
    out.insert("derivative_order".into(), json!(r.derivative.order()));
    out.insert("kernel_order".into(), json!(r.kernel.as_ref().map(|k| k.order())));
    out.insert("kappa".into(), json!(r.kappa.as_ref().map(|k| k.map().to_vec())));
    out.insert("symbols".into(), Value::Object(symbols));
    Value::Object(out)
}

pub fn witness_json(w: &CompatibilityWitness, g: &FiniteGroup, h: &FiniteGroup) -> Value {
    let (lhs_group, g1, h1) = match w.g1 {
        Some(_) => (g, w.g1.map(|x| g.name(x)), None),
        None => (h, None, w.h1.map(|y| h.name(y))),
    };
    json!({
        "equation": w.equation.to_string(),
        "g": w.g,
        "g1": w.g1,
        "h": w.h,
        "h1": w.h1,
        "lhs": w.lhs,
        "rhs": w.rhs,
        "names": {
            "g": g.name(w.g),
            "g1": g1,
            "h": h.name(w.h),
            "h1": h1,
            "lhs": lhs_group.name(w.lhs),
            "rhs": lhs_group.name(w.rhs),
        }
    })
}

pub fn normalizer_json(flags: &NormalizerFlags) -> Value {
    let one = |c: &tensorforge_core::automorphism::NormalizerCheck| {
        json!({"holds": c.holds, "witness": c.witness.map(|(g, m)| json!({"g": g, "member": m}))})
    };
    json!({"g": one(&flags.g), "h": one(&flags.h)})
}

/// One JSON-lines evidence record.
pub fn evidence_json(r: &EvidenceRecord) -> Value {
    let mut out = Map::new();
    out.insert("g".into(), json!(r.g.to_string()));
    out.insert("h".into(), json!(r.h.to_string()));
    out.insert("alpha_index".into(), json!(r.alpha_index));
    out.insert("beta_index".into(), json!(r.beta_index));
    out.insert("alpha".into(), json!(r.alpha));
    out.insert("beta".into(), json!(r.beta));
    out.insert("compatible".into(), json!(r.compatible));
    out.insert("normalizer_g".into(), json!(r.normalizer_g));
    out.insert("normalizer_h".into(), json!(r.normalizer_h));
    if let Some(w) = &r.witness {
        out.insert(
            "witness".into(),
            json!({"equation": w.equation.to_string(), "g": w.g, "g1": w.g1, "h": w.h, "h1": w.h1, "lhs": w.lhs, "rhs": w.rhs}),
        );
    }
    Value::Object(out)
}

/// Header `coset,g1,g1^-1,...` then one row per coset; undefined entries
/// are empty.
pub fn coset_table_csv(t: &CosetTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["coset".to_string()];
    for k in 1..=t.ngens() {
        header.push(format!("g{k}"));
        header.push(format!("g{k}^-1"));
    }
    w.write_record(&header).expect("in-memory write");
    for c in 0..t.len() {
        let mut rec = vec![c.to_string()];
        rec.extend(t.row(c).into_iter().map(|e| e.map(|e| e.to_string()).unwrap_or_default()));
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}
