//! JSON fixture formats for surfaces, laminations and skein instances.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use skein_core::canonical::{SkeinInstance, SkeinItem};
use skein_core::{Curve, CurveKind, EdgeKind, Lamination, Triangulation};

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: invalid surface: {source}")]
    Surface { path: PathBuf, source: skein_core::surface::SurfaceError },
    #[error("{path}: invalid lamination: {source}")]
    Lamination { path: PathBuf, source: skein_core::lamination::LaminationError },
    #[error("{path}: {msg}")]
    Invalid { path: PathBuf, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKindFile {
    Arc,
    Boundary,
}

/// An edge as a bare kind (id = position) or as `{"id": i, "kind": k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeEntry {
    Kind(EdgeKindFile),
    WithId { id: usize, kind: EdgeKindFile },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurfaceFile {
    #[serde(default)]
    pub name: String,
    pub edges: Vec<EdgeEntry>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKindFile {
    Closed,
    Open,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveFile {
    pub kind: CurveKindFile,
    #[serde(default)]
    pub crossings: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end: Option<usize>,
    pub weight: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LaminationFile {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    pub curves: Vec<CurveFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkeinItemFile {
    Edge(usize),
    Cluster { path: Vec<usize>, vertex: usize },
    Chord([usize; 2]),
    Loop(Vec<usize>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkeinFile {
    #[serde(default)]
    pub name: String,
    pub crossing: Vec<SkeinItemFile>,
    pub first: Vec<SkeinItemFile>,
    pub second: Vec<SkeinItemFile>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FixtureError> {
    let text = fs::read_to_string(path).map_err(|source| FixtureError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| FixtureError::Json { path: path.into(), source })
}

impl SurfaceFile {
    /// Edge kinds indexed by id. Explicit ids must be exactly `0..n`.
    pub fn edge_kinds(&self) -> Result<Vec<EdgeKind>, String> {
        let n = self.edges.len();
        let mut kinds = vec![None; n];
        for (pos, e) in self.edges.iter().enumerate() {
            let (id, k) = match *e {
                EdgeEntry::Kind(k) => (pos, k),
                EdgeEntry::WithId { id, kind } => (id, kind),
            };
            let slot = kinds.get_mut(id).ok_or_else(|| format!("edge id {id} out of range 0..{n}"))?;
            if slot.is_some() {
                return Err(format!("edge id {id} given twice"));
            }
            *slot = Some(match k {
                EdgeKindFile::Arc => EdgeKind::Arc,
                EdgeKindFile::Boundary => EdgeKind::Boundary,
            });
        }
        Ok(kinds.into_iter().map(|k| k.expect("every id filled")).collect())
    }

    /// `path` is only used in error messages.
    pub fn to_triangulation(&self, path: &Path) -> Result<Triangulation, FixtureError> {
        let kinds = self.edge_kinds().map_err(|msg| FixtureError::Invalid { path: path.into(), msg })?;
        Triangulation::new(kinds, self.triangles.clone()).map_err(|source| FixtureError::Surface { path: path.into(), source })
    }
}

impl CurveFile {
    pub fn to_curve(&self) -> Curve {
        Curve {
            kind: match self.kind {
                CurveKindFile::Closed => CurveKind::Closed,
                CurveKindFile::Open => CurveKind::Open,
            },
            crossings: self.crossings.clone(),
            start: self.start,
            end: self.end,
            weight: self.weight,
        }
    }

    pub fn from_curve(c: &Curve) -> Self {
        CurveFile {
            kind: match c.kind {
                CurveKind::Closed => CurveKindFile::Closed,
                CurveKind::Open => CurveKindFile::Open,
            },
            crossings: c.crossings.clone(),
            start: c.start,
            end: c.end,
            weight: c.weight,
        }
    }
}

impl SkeinItemFile {
    pub fn to_item(&self) -> SkeinItem {
        match self {
            SkeinItemFile::Edge(e) => SkeinItem::Edge(*e),
            SkeinItemFile::Cluster { path, vertex } => SkeinItem::Cluster { path: path.clone(), vertex: *vertex },
            SkeinItemFile::Chord([a, b]) => SkeinItem::Chord(*a, *b),
            SkeinItemFile::Loop(w) => SkeinItem::Loop(w.clone()),
        }
    }
}

impl SkeinFile {
    pub fn to_instance(&self) -> SkeinInstance {
        let conv = |v: &[SkeinItemFile]| v.iter().map(SkeinItemFile::to_item).collect();
        SkeinInstance { crossing: conv(&self.crossing), first: conv(&self.first), second: conv(&self.second) }
    }
}

pub fn load_surface(path: &Path) -> Result<(String, Triangulation), FixtureError> {
    let f: SurfaceFile = read_json(path)?;
    let t = f.to_triangulation(path)?;
    let name = if f.name.is_empty() { stem(path) } else { f.name };
    Ok((name, t))
}

pub fn load_curves(path: &Path) -> Result<(String, Vec<Curve>), FixtureError> {
    let f: LaminationFile = read_json(path)?;
    let name = if f.name.is_empty() { stem(path) } else { f.name };
    Ok((name, f.curves.iter().map(CurveFile::to_curve).collect()))
}

pub fn load_lamination(path: &Path, t: &Triangulation) -> Result<(String, Lamination), FixtureError> {
    let (name, curves) = load_curves(path)?;
    let lam = Lamination::new(t, &curves).map_err(|source| FixtureError::Lamination { path: path.into(), source })?;
    Ok((name, lam))
}

pub fn load_skein(path: &Path) -> Result<(String, SkeinInstance), FixtureError> {
    let f: SkeinFile = read_json(path)?;
    let name = if f.name.is_empty() { stem(path) } else { f.name.clone() };
    Ok((name, f.to_instance()))
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

/// One surface directory: `surface.json`, `laminations/*.json`,
/// `skein/*.json`.
#[derive(Debug, Clone)]
pub struct FixtureDir {
    pub root: PathBuf,
    pub surface: PathBuf,
    pub laminations: Vec<PathBuf>,
    pub skein: Vec<PathBuf>,
}

fn sorted_json(dir: &Path) -> Result<Vec<PathBuf>, FixtureError> {
    if !dir.is_dir() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for e in fs::read_dir(dir).map_err(|source| FixtureError::Io { path: dir.into(), source })? {
        let p = e.map_err(|source| FixtureError::Io { path: dir.into(), source })?.path();
        if p.extension().is_some_and(|x| x == "json") {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// Every subdirectory of `root` holding a `surface.json`, in name order.
pub fn discover(root: &Path) -> Result<Vec<FixtureDir>, FixtureError> {
    let mut dirs = Vec::new();
    for e in fs::read_dir(root).map_err(|source| FixtureError::Io { path: root.into(), source })? {
        let p = e.map_err(|source| FixtureError::Io { path: root.into(), source })?.path();
        if p.join("surface.json").is_file() {
            dirs.push(p);
        }
    }
    dirs.sort();
    if dirs.is_empty() {
        return Err(FixtureError::Invalid { path: root.into(), msg: "no fixture directories found".into() });
    }
    dirs.into_iter()
        .map(|d| {
            Ok(FixtureDir {
                surface: d.join("surface.json"),
                laminations: sorted_json(&d.join("laminations"))?,
                skein: sorted_json(&d.join("skein"))?,
                root: d,
            })
        })
        .collect()
}
