//! Parameter sweeps over a grid config.
//!
//! The config is a list of `[[grid]]` blocks; each block gives inclusive
//! `[min, max]` ranges for `g` and `s`, the per-point order alternatives
//! (cells take every non-decreasing `s`-tuple), the ranks `n` and the count
//! modes. Cells outside the formula regime (no even order, `2g-2+s <= 0`,
//! or fixed-half with an odd order) are skipped deterministically; each
//! remaining cell reports the closed-form count, the enumeration count
//! (for genus within the materialization limit) and the agreement flag.

use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use parhiggs::components::{
    count_components, enumerate_invariant_classes, CountMode, MAX_ENUMERATION_GENUS,
};
use parhiggs::vgeom::OrbifoldSignature;

use crate::render::{emit_table, list_text, Format};
use crate::{count_json, parse_mode, CliError};

#[derive(Deserialize)]
struct SweepConfig {
    grid: Vec<GridBlock>,
}

#[derive(Deserialize)]
struct GridBlock {
    g: [u32; 2],
    s: [u32; 2],
    orders: Vec<u32>,
    n: Vec<u32>,
    modes: Vec<String>,
}

/// All non-decreasing s-tuples over the order alternatives, in
/// lexicographic order.
fn order_multisets(choices: &[u32], s: usize) -> Vec<Vec<u32>> {
    let mut sorted = choices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn rec(choices: &[u32], s: usize, min: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == s {
            out.push(prefix.clone());
            return;
        }
        for i in min..choices.len() {
            prefix.push(choices[i]);
            rec(choices, s, i, prefix, out);
            prefix.pop();
        }
    }
    rec(&sorted, s, 0, &mut prefix, &mut out);
    out
}

struct Cell {
    g: u32,
    orders: Vec<u32>,
    n: u32,
    mode: CountMode,
}

fn admissible(sig: &OrbifoldSignature, mode: CountMode) -> bool {
    sig.num_points() >= 1
        && sig.num_even() >= 1
        && sig.log_canonical_degree() > 0
        && (mode != CountMode::FixedHalf || sig.orders().iter().all(|&m| m % 2 == 0))
}

pub fn run(config_path: &Path, format: Format) -> Result<(), CliError> {
    let text = std::fs::read_to_string(config_path)?;
    let config: SweepConfig = toml::from_str(&text)?;

    let mut cells = Vec::new();
    for block in &config.grid {
        let modes = block
            .modes
            .iter()
            .map(|m| parse_mode(m))
            .collect::<Result<Vec<_>, _>>()?;
        for g in block.g[0]..=block.g[1] {
            for s in block.s[0]..=block.s[1] {
                for orders in order_multisets(&block.orders, s as usize) {
                    for &n in &block.n {
                        for &mode in &modes {
                            cells.push(Cell {
                                g,
                                orders: orders.clone(),
                                n,
                                mode,
                            });
                        }
                    }
                }
            }
        }
    }

    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut docs: Vec<Value> = Vec::new();
    let mut skipped = 0usize;
    let mut all_agree = true;
    for cell in cells {
        let sig = OrbifoldSignature::new(cell.g, cell.orders.clone())?;
        if !admissible(&sig, cell.mode) {
            skipped += 1;
            continue;
        }
        let closed = count_components(&sig, cell.n, cell.mode)?;
        let enumerated: Option<u128> = if cell.g <= MAX_ENUMERATION_GENUS {
            Some(enumerate_invariant_classes(&sig, cell.n, cell.mode)?.len() as u128)
        } else {
            None
        };
        let agrees = enumerated.map(|e| e == closed);
        if agrees == Some(false) {
            all_agree = false;
        }
        rows.push(vec![
            cell.g.to_string(),
            sig.num_points().to_string(),
            list_text(&cell.orders),
            cell.n.to_string(),
            cell.mode.to_string(),
            closed.to_string(),
            enumerated.map_or("-".to_string(), |e| e.to_string()),
            agrees.map_or("-".to_string(), |a| a.to_string()),
        ]);
        docs.push(json!({
            "g": cell.g,
            "s": sig.num_points(),
            "orders": cell.orders,
            "n": cell.n,
            "mode": cell.mode.to_string(),
            "closed_form": count_json(closed),
            "enumeration": enumerated.map(count_json),
            "agrees": agrees,
        }));
    }

    let header = [
        "g",
        "s",
        "orders",
        "n",
        "mode",
        "closed_form",
        "enumeration",
        "agrees",
    ];
    let doc = json!({
        "cells": docs,
        "skipped_inadmissible": skipped,
        "all_agree": all_agree,
    });
    emit_table(format, &header, &rows, &doc)?;
    if format == Format::Text {
        println!(
            "cells: {}  skipped (outside regime): {skipped}  all agree: {all_agree}",
            rows.len()
        );
    }
    Ok(())
}
