//! File emission. Every writer produces the same bytes for the same input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use nehari::funcspace::GridFunction;
use nehari::manifold::{CriticalKind, RadialProfile};
use serde::Serialize;

use crate::error::CliError;

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// `<stem>.census.csv` next to `path`.
pub fn census_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("profile");
    path.with_file_name(format!("{stem}.census.csv"))
}

pub fn profile_csv(profile: &RadialProfile) -> String {
    let mut out = String::from("t,potential,energy\n");
    for ((t, p), e) in profile.t.iter().zip(&profile.potential).zip(&profile.energy) {
        let _ = writeln!(out, "{t},{p},{e}");
    }
    out
}

pub fn census_csv(profile: &RadialProfile) -> String {
    let mut out = String::from("t,kind\n");
    for c in &profile.census {
        let kind = match c.kind {
            CriticalKind::Max => "max",
            CriticalKind::Min => "min",
        };
        let _ = writeln!(out, "{},{kind}", c.t);
    }
    out
}

/// Writes the profile to `path` and its critical points to the companion
/// census file; returns both paths.
pub fn emit_csv(profile: &RadialProfile, path: &Path) -> Result<[PathBuf; 2], CliError> {
    write_file(path, &profile_csv(profile))?;
    let census = census_path(path);
    write_file(&census, &census_csv(profile))?;
    Ok([path.to_path_buf(), census])
}

pub fn solution_csv(u: &GridFunction, direction: &GridFunction) -> String {
    let mut out = String::from("t,u,direction\n");
    let nodes = u.grid().nodes();
    for ((t, x), v) in nodes.iter().zip(u.values()).zip(direction.values()) {
        let _ = writeln!(out, "{t},{x},{v}");
    }
    out
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Write {
        path: path.to_path_buf(),
        source: std::io::Error::other(e),
    })?;
    text.push('\n');
    write_file(path, &text)
}
