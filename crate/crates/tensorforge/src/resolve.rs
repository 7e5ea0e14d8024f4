//! One resolver for group and homomorphism arguments: a catalog key or a
//! path to a JSON file.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use tensorforge_core::catalog::{self, CatalogKey};
use tensorforge_core::{FiniteGroup, GroupHom};

use crate::io::{read_json, GroupFile, HomFile};
use crate::{Result, ToolError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Catalog(CatalogKey),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub struct ResolvedGroup {
    pub spec: String,
    pub source: Source,
    pub group: FiniteGroup,
}

impl ResolvedGroup {
    pub fn catalog_key(&self) -> Option<&CatalogKey> {
        match &self.source {
            Source::Catalog(k) => Some(k),
            Source::File(_) => None,
        }
    }

    /// The input embedded by value.
    pub fn to_json(&self) -> Value {
        let (kind, origin) = match &self.source {
            Source::Catalog(k) => ("catalog", k.to_string()),
            Source::File(p) => ("file", p.display().to_string()),
        };
        json!({"source": kind, "name": origin, "group": GroupFile::from_group(&self.group)})
    }
}

/// Catalog keys win over paths; anything else must be a readable file.
pub fn resolve_group(spec: &str) -> Result<ResolvedGroup> {
    resolve_group_from(spec, None)
}

fn resolve_group_from(spec: &str, base: Option<&Path>) -> Result<ResolvedGroup> {
    match spec.parse::<CatalogKey>() {
        Ok(key) => {
            let group = catalog::make(&key)?;
            Ok(ResolvedGroup { spec: spec.to_string(), source: Source::Catalog(key), group })
        }
        Err(catalog_err) => {
            let path = match base {
                Some(dir) if Path::new(spec).is_relative() => dir.join(spec),
                _ => PathBuf::from(spec),
            };
            if !path.exists() {
                // Neither a key nor a file: report the key error when the
                // argument looks like one.
                return Err(if spec.contains(':') && !spec.ends_with(".json") {
                    ToolError::Core(catalog_err)
                } else {
                    ToolError::Io { path, source: std::io::Error::from(std::io::ErrorKind::NotFound) }
                });
            }
            let file: GroupFile = read_json(&path)?;
            let group = file.to_group()?;
            Ok(ResolvedGroup { spec: spec.to_string(), source: Source::File(path), group })
        }
    }
}

#[derive(Debug, Clone)]
pub struct ResolvedHom {
    pub path: PathBuf,
    pub source: ResolvedGroup,
    pub target: ResolvedGroup,
    pub hom: GroupHom,
}

impl ResolvedHom {
    pub fn to_json(&self) -> Value {
        json!({
            "path": self.path.display().to_string(),
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "map": self.hom.map(),
        })
    }
}

/// Reads a homomorphism file; its source and target resolve like any group
/// argument, with relative paths taken from the file's directory.
pub fn resolve_hom(path: &Path) -> Result<ResolvedHom> {
    let file: HomFile = read_json(path)?;
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    let source = resolve_group_from(&file.source, dir)?;
    let target = resolve_group_from(&file.target, dir)?;
    let hom = GroupHom::new(&source.group, &target.group, file.map)?;
    Ok(ResolvedHom { path: path.to_path_buf(), source, target, hom })
}
