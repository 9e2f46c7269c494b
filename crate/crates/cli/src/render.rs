//! Payloads for the JSON document and their plain-text tables.

use std::fmt::Write;

use serde_json::{json, Value};

use cwmmg::power::format_rational;
use cwmmg::stability::StabilityReport;
use cwmmg::{Coalition, Game, PartitionStructure, PowerProfile, Rational};

/// Always `num/den`, reduced.
pub fn fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn fractions(values: &[Rational]) -> Vec<String> {
    values.iter().map(fraction).collect()
}

fn ids(c: &Coalition) -> Value {
    json!(c.members())
}

fn names(game: &Game, c: &Coalition) -> String {
    let listed: Vec<String> = c.iter().map(|j| game.display_name(j)).collect();
    format!("{{{}}}", listed.join(", "))
}

fn bound_note(game: &Game, count: usize) -> String {
    let bound = game.n() + 1;
    if count == bound {
        format!("|MWC| = {count} = n + 1")
    } else {
        format!("|MWC| = {count}, n + 1 = {bound}")
    }
}

pub fn mwc_payload(game: &Game, mwc: &[Coalition]) -> Value {
    json!({
        "count": mwc.len(),
        "n_plus_one": game.n() + 1,
        "coalitions": mwc.iter().map(ids).collect::<Vec<_>>(),
    })
}

pub fn mwc_table(game: &Game, mwc: &[Coalition]) -> String {
    let mut out = String::new();
    for c in mwc {
        writeln!(out, "{}", names(game, c)).unwrap();
    }
    writeln!(out, "{}", bound_note(game, mwc.len())).unwrap();
    out
}

pub fn indices_payload(profiles: &[PowerProfile]) -> Value {
    let mut map = serde_json::Map::new();
    for p in profiles {
        map.insert(p.kind.as_str().into(), json!(fractions(&p.values)));
    }
    Value::Object(map)
}

pub fn indices_table(game: &Game, profiles: &[PowerProfile]) -> String {
    let mut rows: Vec<Vec<String>> = vec![std::iter::once("player".to_string())
        .chain(profiles.iter().map(|p| p.kind.as_str().to_string()))
        .collect()];
    for j in 0..game.n() {
        rows.push(
            std::iter::once(game.display_name(j))
                .chain(profiles.iter().map(|p| format_rational(p.value(j))))
                .collect(),
        );
    }
    align(&rows)
}

fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    out
}

pub fn stable_payload(
    report: &StabilityReport,
    structures: Option<&[PartitionStructure]>,
) -> Value {
    let mut doc = json!({
        "index": report.kind.as_str(),
        "min_theta": fraction(&report.min_theta),
        "stable_coalitions": report.stable_coalitions.iter().map(ids).collect::<Vec<_>>(),
        "winner_ratio": fraction(&report.winner_ratio),
        "allocation": fractions(&report.allocation),
    });
    if let Some(list) = structures {
        doc["structures"] = json!(list
            .iter()
            .map(|pi| pi.blocks().iter().map(ids).collect::<Vec<_>>())
            .collect::<Vec<_>>());
    }
    doc
}

pub fn stable_table(
    game: &Game,
    report: &StabilityReport,
    structures: Option<&[PartitionStructure]>,
) -> String {
    let mut out = String::new();
    writeln!(out, "index: {}", report.kind).unwrap();
    writeln!(
        out,
        "minimum power sum: {}",
        format_rational(&report.min_theta)
    )
    .unwrap();
    writeln!(out, "stable coalitions:").unwrap();
    for c in &report.stable_coalitions {
        writeln!(out, "  {}", names(game, c)).unwrap();
    }
    writeln!(
        out,
        "winner ratio q(C)/q(N) for {}: {}",
        names(game, report.representative()),
        format_rational(&report.winner_ratio)
    )
    .unwrap();
    let shares: Vec<String> = (0..game.n())
        .map(|j| {
            format!(
                "{} = {}",
                game.display_name(j),
                format_rational(&report.allocation[j])
            )
        })
        .collect();
    writeln!(out, "allocation: {}", shares.join(", ")).unwrap();
    if let Some(list) = structures {
        writeln!(out, "stable structures ({}):", list.len()).unwrap();
        for pi in list {
            let blocks: Vec<String> = pi.blocks().iter().map(|b| names(game, b)).collect();
            writeln!(out, "  {}", blocks.join(" ")).unwrap();
        }
    }
    out
}
