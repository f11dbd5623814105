// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Column-oriented numeric tables with `#`-prefixed metadata, written as CSV.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    meta: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            meta: Vec::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// Append a row. `NaN` marks an undefined entry and is written as an empty cell.
    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::Internal(format!(
                "row of {} values for {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn set_meta(&mut self, key: impl Into<String>, value: impl Into<String>) {
        let key = key.into();
        let value = value.into();
        match self.meta.iter_mut().find(|(k, _)| *k == key) {
            Some(entry) => entry.1 = value,
            None => self.meta.push((key, value)),
        }
    }

    /// Put the metadata of `head` first; its values win on duplicate keys.
    pub fn prepend_meta(&mut self, head: &Table) {
        let mut merged = head.meta.clone();
        merged.extend(self.meta.iter().filter(|(k, _)| head.meta(k).is_none()).cloned());
        self.meta = merged;
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Keep only the named columns, in the given order.
    pub fn select(&self, names: &[String]) -> Result<Table> {
        let idx = names
            .iter()
            .map(|n| {
                self.columns
                    .iter()
                    .position(|c| c == n)
                    .ok_or_else(|| Error::Config(format!("unknown column `{n}` (have {})", self.columns.join(","))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Table {
            meta: self.meta.clone(),
            columns: names.to_vec(),
            rows: self.rows.iter().map(|r| idx.iter().map(|&k| r[k]).collect()).collect(),
        })
    }

    /// Metadata lines, header, then one line per row. Numbers use the
    /// shortest representation that round-trips.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|x| if x.is_nan() { String::new() } else { format!("{x:e}") })
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}
