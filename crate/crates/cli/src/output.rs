// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::{Path, PathBuf};

use nmcorr::scenarios::{svg, Table};
use nmcorr::Error;

pub struct Destination {
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub columns: Option<Vec<String>>,
}

fn write(path: &Path, body: &str) -> Result<(), Error> {
    std::fs::write(path, body).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
}

/// `dir/stem.ext` -> `dir/stem_suffix.ext`
fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_{suffix}.{ext}"),
        None => format!("{stem}_{suffix}"),
    };
    path.with_file_name(name)
}

/// Write the main table (and any extra tables next to it) as CSV, plus an optional plot.
pub fn emit(main: &Table, dest: &Destination, extra: &[(&str, &Table)]) -> Result<(), Error> {
    let selected = match &dest.columns {
        Some(cols) => main.select(cols)?,
        None => main.clone(),
    };
    match &dest.csv {
        Some(path) => {
            write(path, &selected.to_csv())?;
            for (suffix, t) in extra {
                write(&sibling(path, suffix), &t.to_csv())?;
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            let mut body = selected.to_csv();
            for (_, t) in extra {
                body.push('\n');
                body.push_str(&t.to_csv());
            }
            match out.write_all(body.as_bytes()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    if let Some(path) = &dest.svg {
        let ys: Vec<String> = selected.columns().iter().skip(1).cloned().collect();
        write(path, &svg::line_plot(&selected, &ys)?)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sibling_names() {
        assert_eq!(sibling(Path::new("/a/b.csv"), "stationary"), PathBuf::from("/a/b_stationary.csv"));
        assert_eq!(sibling(Path::new("b"), "x"), PathBuf::from("b_x"));
    }
}
