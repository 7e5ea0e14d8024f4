//! Exploratory scans: normalizer inclusions against compatibility, and the
//! tensor products attached to homomorphism pairs of Heisenberg groups.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};
use tensorforge_core::action::{
    action_from_hom_pair, is_compatible, normalizer_conditions, question2_pair, EvidenceRecord,
    HomPair,
};
use tensorforge_core::catalog::{self, CatalogKey};
use tensorforge_core::hom::{are_isomorphic, enumerate_homs};
use tensorforge_core::tensor::{compute_tensor_with, TensorOptions, TensorReport};
use tensorforge_core::{automorphism_group, ActionPair, AutGroup, Budget, Error, GroupHom};

use crate::commands::identify;
use crate::io::evidence_json;
use crate::report::{RunReport, Status};
use crate::{Result, ToolError};

/// Recomputes a record from its stored maps and checks that every field,
/// including the witness, comes out the same.
pub fn replay_record(rec: &EvidenceRecord, aut_g: &Arc<AutGroup>, aut_h: &Arc<AutGroup>) -> bool {
    let Ok(pair) = ActionPair::from_indices(aut_g.clone(), aut_h.clone(), rec.alpha.clone(), rec.beta.clone()) else {
        return false;
    };
    let report = is_compatible(&pair);
    let flags = normalizer_conditions(&pair);
    let witness_ok = match rec.witness {
        Some(w) => w.replay(&pair) == (w.lhs, w.rhs) && w.lhs != w.rhs,
        None => true,
    };
    report.compatible == rec.compatible
        && report.witness == rec.witness
        && flags.g.holds == rec.normalizer_g
        && flags.h.holds == rec.normalizer_h
        && witness_ok
}

/// Every `(alpha, beta)` over ordered pairs of standard catalog groups of
/// order at most `max_order`. Group pairs are scanned in parallel and the
/// records come out in catalog order. Without `jsonl` the records are
/// embedded in the report.
pub fn question2(max_order: usize, jsonl: Option<&Path>, budget: Budget) -> RunReport {
    let mut r = RunReport::new("explore question2");
    r.input("max_order", json!(max_order));
    r.input("budget", json!({"max_nodes": budget.max_nodes, "max_pairs": budget.max_pairs}));
    if let Err(e) = question2_into(&mut r, max_order, jsonl, budget) {
        r.fail_with(&e);
    }
    r
}

fn question2_into(r: &mut RunReport, max_order: usize, jsonl: Option<&Path>, budget: Budget) -> Result<()> {
    let keys = catalog::standard_keys_up_to(max_order);
    let auts: Vec<Arc<AutGroup>> = r.stage("automorphisms", || {
        keys.par_iter()
            .map(|k| Ok(Arc::new(automorphism_group(&catalog::make(k)?, budget)?)))
            .collect::<std::result::Result<_, Error>>()
    })?;
    let cells: Vec<(usize, usize)> = (0..keys.len()).flat_map(|i| (0..keys.len()).map(move |j| (i, j))).collect();
    let per_pair: Vec<(Vec<EvidenceRecord>, bool)> = r.stage("scan", || {
        cells
            .par_iter()
            .map(|&(i, j)| {
                let recs = question2_pair(&keys[i], &keys[j], auts[i].clone(), auts[j].clone(), budget)?;
                let replayed = recs.iter().filter(|x| x.is_counterexample()).all(|x| replay_record(x, &auts[i], &auts[j]));
                Ok((recs, replayed))
            })
            .collect::<std::result::Result<_, Error>>()
    })?;
    let records: Vec<&EvidenceRecord> = per_pair.iter().flat_map(|(v, _)| v).collect();
    let replayed = per_pair.iter().all(|(_, ok)| *ok);
    let compatible = records.iter().filter(|x| x.compatible).count();
    let both = records.iter().filter(|x| x.normalizer_g && x.normalizer_h).count();
    let counterexamples: Vec<Value> = records.iter().filter(|x| x.is_counterexample()).map(|x| evidence_json(x)).collect();
    r.result("groups", json!(keys.iter().map(CatalogKey::to_string).collect::<Vec<_>>()));
    r.result("pairs", json!(records.len()));
    r.result("compatible", json!(compatible));
    r.result("normalizer_both", json!(both));
    r.result("counterexample_count", json!(counterexamples.len()));
    r.result("counterexamples_replay", json!(replayed));
    r.result("counterexamples", Value::Array(counterexamples));
    match jsonl {
        Some(path) => {
            let io = |source| ToolError::Io { path: path.into(), source };
            let mut w = BufWriter::new(File::create(path).map_err(io)?);
            for rec in &records {
                writeln!(w, "{}", evidence_json(rec)).map_err(io)?;
            }
            w.flush().map_err(io)?;
            r.result("jsonl", json!(path.display().to_string()));
        }
        None => r.result("records", Value::Array(records.iter().map(|x| evidence_json(x)).collect())),
    }
    r.status = if replayed { Status::Pass } else { Status::Fail };
    Ok(())
}

/// One isomorphism class of tensor products found by the classification scan.
struct TensorClass {
    report: TensorReport,
    /// Number of distinct action pairs landing in this class.
    count: usize,
    example: (usize, usize),
}

/// Tensor products `G (x) G` for `G = heisenberg:p`, over all pairs of
/// endomorphisms `(phi, psi)` acting by conjugation through each other,
/// grouped by isomorphism type. Pairs that induce the same actions are
/// computed once. Pairs beyond the symbol cap are counted, and make the
/// report partial.
pub fn classify_heisenberg(p: usize, budget: Budget) -> RunReport {
    let mut r = RunReport::new("explore classify-heisenberg");
    r.input("p", json!(p));
    if let Err(e) = classify_into(&mut r, p, budget) {
        r.fail_with(&e);
    }
    r
}

fn classify_into(r: &mut RunReport, p: usize, budget: Budget) -> Result<()> {
    let key = format!("heisenberg:{p}");
    let g = catalog::make_catalog_group(&key)?;
    r.input("group", json!(key));
    let aut = Arc::new(r.stage("automorphisms", || automorphism_group(&g, budget))?);
    let homs = r.stage("homomorphisms", || enumerate_homs(&g, &g, budget))?;
    let inner_of = |h: &GroupHom| -> Vec<usize> { g.elements().map(|x| aut.inner_index(h.apply(x))).collect() };
    let mut reps: Vec<(Vec<usize>, usize)> = homs.iter().enumerate().map(|(i, h)| (inner_of(h), i)).collect();
    reps.sort();
    reps.dedup_by(|a, b| a.0 == b.0);
    let reps: Vec<usize> = reps.into_iter().map(|(_, i)| i).collect();
    let cells: Vec<(usize, usize)> = reps.iter().flat_map(|&i| reps.iter().map(move |&j| (i, j))).collect();
    r.result("hom_pairs", json!(homs.len() * homs.len()));
    r.result("action_pairs", json!(cells.len()));

    let opts = TensorOptions::default();
    let computed: Vec<std::result::Result<TensorReport, Error>> = r.stage("tensors", || {
        cells
            .par_iter()
            .map(|&(i, j)| {
                let pair = HomPair { phi: homs[i].clone(), psi: homs[j].clone() };
                let act = action_from_hom_pair(aut.clone(), aut.clone(), &pair)?;
                compute_tensor_with(&act, opts)
            })
            .collect()
    });
    let mut classes: Vec<TensorClass> = Vec::new();
    let mut skipped = 0;
    let mut skip_reason = None;
    r.stage("classes", || -> Result<()> {
        for (cell, res) in cells.iter().zip(computed) {
            let report = match res {
                Ok(t) => t,
                Err(e @ (Error::BudgetExceeded { .. } | Error::LimitExceeded { .. })) => {
                    skipped += 1;
                    skip_reason.get_or_insert_with(|| e.to_string());
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            let mut found = None;
            for (k, c) in classes.iter().enumerate() {
                if are_isomorphic(&c.report.tensor, &report.tensor, budget)?.is_some() {
                    found = Some(k);
                    break;
                }
            }
            match found {
                Some(k) => classes[k].count += 1,
                None => classes.push(TensorClass { report, count: 1, example: *cell }),
            }
        }
        Ok(())
    })?;
    let rows: Vec<Value> = classes
        .iter()
        .map(|c| {
            let t = &c.report;
            json!({
                "order": t.order(),
                "abelian": t.tensor.is_abelian(),
                "invariants": t.invariants.as_ref().map(|i| i.to_string()),
                "class": t.class,
                "isomorphic_to": identify(&t.tensor, budget),
                "action_pairs": c.count,
                "phi": homs[c.example.0].map(),
                "psi": homs[c.example.1].map(),
            })
        })
        .collect();
    r.result("classes", Value::Array(rows));
    r.result("skipped", json!(skipped));
    if let Some(why) = skip_reason {
        r.result("skip_reason", json!(why));
        r.status = Status::Partial;
    }
    Ok(())
}
