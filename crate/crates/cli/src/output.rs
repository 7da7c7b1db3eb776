use std::fs;
use std::path::{Path, PathBuf};

use fracpx::mesh::Mesh;
use fracpx::GridFunction;
use serde::Serialize;

use crate::error::CliError;

fn output_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Output {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.display().to_string(),
        source,
    })
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| output_error(path, e))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| output_error(path, e))
}

/// Nodal values, one row per node: coordinates, then `u`.
pub fn write_solution(path: &Path, mesh: &Mesh, u: &GridFunction) -> Result<(), CliError> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| output_error(path, e))?;
    let mut header: Vec<String> = ["x", "y"].iter().take(mesh.dim()).map(|s| s.to_string()).collect();
    header.push("u".into());
    writer.write_record(&header).map_err(|e| output_error(path, e))?;
    for (i, value) in u.values().iter().enumerate() {
        let mut row: Vec<String> = mesh.node(i).iter().map(|x| x.to_string()).collect();
        row.push(value.to_string());
        writer.write_record(&row).map_err(|e| output_error(path, e))?;
    }
    writer.flush().map_err(|e| output_error(path, e))
}

pub fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), CliError> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| output_error(path, e))?;
    for row in rows {
        writer.serialize(row).map_err(|e| output_error(path, e))?;
    }
    writer.flush().map_err(|e| output_error(path, e))
}

pub fn join(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}
