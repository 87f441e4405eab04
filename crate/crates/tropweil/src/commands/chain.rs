use std::path::Path;

use anyhow::{Context, Result};
use serde_json::json;
use tropweil_core::chains::{alpha_chain, subdivide_polygon, vol_chain, Chain};

use super::{rat_list, t_map, wedge_map, Outcome};
use crate::formats::{read_json, ChainFile, ChainList, PolygonFile};
use crate::matrix_text::write_rat_vector;

fn chain_summary(c: &Chain) -> serde_json::Value {
    let alpha = alpha_chain(c);
    let vol = vol_chain(c);
    let flags: Vec<_> = alpha
        .flags
        .iter()
        .map(|(k, w)| {
            json!({
                "vertex": rat_list(&k.vertex),
                "direction": k.direction.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "value": wedge_map(w),
            })
        })
        .collect();
    json!({
        "d": c.d,
        "cells": c.cells.len(),
        "balanced": alpha.is_empty(),
        "unbalanced_flags": flags,
        "vol": t_map(&vol.0),
        "vol_matrix": write_rat_vector(&vol.0),
        "denominators": c.denominators().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

/// `chain check`: balancing, α and vol. Makes no claims.
pub fn check(path: &Path) -> Result<Outcome> {
    let list: ChainList = read_json(path)?;
    let chains = list.into_chains().with_context(|| format!("invalid chain in {}", path.display()))?;
    let results: Vec<_> = chains.iter().map(chain_summary).collect();
    let balanced = chains.iter().filter(|c| alpha_chain(c).is_empty()).count();
    let d = chains.first().map(|c| c.d);
    let summary = format!("chain check: {balanced} of {} chain(s) balanced", chains.len());
    Ok(Outcome { d, result: json!({ "chains": results }), summary, ..Default::default() })
}

/// `chain subdivide`: a polygon loop into cells sharing one face.
pub fn subdivide(path: &Path, out: Option<&Path>) -> Result<Outcome> {
    let poly: PolygonFile = read_json(path)?;
    let vertices = poly.vertices()?;
    let sub = subdivide_polygon(poly.d, &vertices).map_err(|e| anyhow::anyhow!("{e}"))?;
    let file = ChainFile::from_chain(&sub.chain)?;
    let file_json = serde_json::to_value(&file)?;
    if let Some(out) = out {
        let text = serde_json::to_string_pretty(&file_json)? + "\n";
        std::fs::write(out, text).with_context(|| format!("cannot write {}", out.display()))?;
    }
    let summary = format!(
        "chain subdivide: {} vertices -> {} cell(s){}",
        vertices.len(),
        sub.chain.cells.len(),
        out.map(|p| format!(", written to {}", p.display())).unwrap_or_default()
    );
    let result = json!({
        "face": wedge_map(&sub.face),
        "chain": file_json,
        "check": chain_summary(&sub.chain),
    });
    Ok(Outcome { d: Some(poly.d), result, summary, ..Default::default() })
}
