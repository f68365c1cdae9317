//! Compares catalog values against the frozen transcript in `docs/oracle_tables.txt`,
//! produced by the independent Python implementation in `oracle/`.

use dppforge::algebra::Role;
use dppforge::catalog::{self, parse_terms, render_product};
use std::collections::BTreeSet;

const TRANSCRIPT: &str = include_str!("../../../docs/oracle_tables.txt");

fn lines() -> Vec<(&'static str, &'static str, &'static str)> {
    TRANSCRIPT
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (entry, rest) = l.split_once(' ').expect("entry name");
            let (item, value) = rest.split_once(" = ").expect("item = value");
            (entry, item, value)
        })
        .collect()
}

/// `𝓘[T](x)` is written `𝓘(x)` in the catalog, which uses the entry's main tensor.
fn catalog_item(item: &str) -> String {
    match item.strip_prefix("𝓘[").and_then(|r| r.split_once("](")) {
        Some((_, arg)) => format!("𝓘({arg}"),
        None => item.to_string(),
    }
}

#[test]
fn every_transcript_value_matches_the_catalog() {
    let rows = lines();
    assert!(rows.len() >= 60, "transcript too short: {}", rows.len());
    let mut mismatches = Vec::new();
    for (name, item, value) in rows {
        let entry = catalog::entry(name).unwrap();
        let computed = entry.evaluate(&catalog_item(item)).unwrap_or_else(|e| panic!("{name} {item}: {e}"));
        if parse_terms(&computed).unwrap() != parse_terms(value).unwrap() {
            mismatches.push(format!("{name} {item}: oracle {value}, catalog {computed}"));
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:#?}");
}

#[test]
fn unlisted_double_products_vanish() {
    let listed: BTreeSet<&str> = lines().into_iter().filter(|(n, _, _)| *n == "DOUBLE_A2").map(|(_, i, _)| i).collect();
    let alg = catalog::double_a2().algebra;
    for (role, op) in [(Role::Circ, '∘'), (Role::Star, '∗')] {
        for x in &alg.space.labels {
            for y in &alg.space.labels {
                let item = format!("{x}{op}{y}");
                if !listed.contains(item.as_str()) {
                    assert_eq!(render_product(&alg, role, x, y).unwrap(), "0", "{item}");
                }
            }
        }
    }
}
