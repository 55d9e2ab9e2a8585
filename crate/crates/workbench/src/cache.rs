//! Content-addressed on-disk storage of reduced ideal layers.
//!
//! A file holds one layer, keyed by the digest of the presentation content,
//! the field and the degree. Unreadable or inconsistent files are ignored and
//! recomputed; writes go through a temporary file renamed into place.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use dialg_core::linalg::{Field, FieldTag, SparseVec, Subspace};
use dialg_core::{LayerStore, Rational, StoreProvider, VarietyPresentation};
use serde::{Deserialize, Serialize};

use crate::input::canonical_presentation_text;
use crate::report::sha256_hex;

const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct LayerFile {
    version: u32,
    presentation: String,
    field: String,
    degree: usize,
    ncols: usize,
    rows: Vec<Vec<(u32, String)>>,
}

/// Hands out a [`DiskStore`] per presentation under one directory.
pub struct DiskStores {
    dir: PathBuf,
}

impl DiskStores {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskStores { dir: dir.into() }
    }

    pub fn shared<F: Field>(dir: impl Into<PathBuf>) -> Arc<dyn StoreProvider<F>> {
        Arc::new(DiskStores::new(dir))
    }
}

impl<F: Field> StoreProvider<F> for DiskStores {
    fn store_for(&self, presentation: &VarietyPresentation) -> Option<Box<dyn LayerStore<F>>> {
        Some(Box::new(DiskStore {
            dir: self.dir.clone(),
            key: sha256_hex(&canonical_presentation_text(presentation)),
        }))
    }
}

pub struct DiskStore {
    dir: PathBuf,
    key: String,
}

fn field_label(tag: FieldTag) -> String {
    match tag {
        FieldTag::Rationals => "q".into(),
        FieldTag::Prime(p) => format!("p{p}"),
    }
}

impl DiskStore {
    fn path(&self, tag: FieldTag, degree: usize) -> PathBuf {
        self.dir
            .join(format!("{}-{}-d{degree}.json", self.key, field_label(tag)))
    }

    fn read<F: Field>(
        &self,
        field: &F,
        path: &Path,
        degree: usize,
        ncols: usize,
    ) -> Option<Subspace<F>> {
        let text = fs::read_to_string(path).ok()?;
        let file: LayerFile = serde_json::from_str(&text).ok()?;
        if file.version != FORMAT_VERSION
            || file.presentation != self.key
            || file.field != field_label(field.tag())
            || file.degree != degree
            || file.ncols != ncols
        {
            return None;
        }
        let mut rows = Vec::with_capacity(file.rows.len());
        for r in file.rows {
            let mut entries = Vec::with_capacity(r.len());
            for (c, v) in r {
                let q = Rational::from_str(&v).ok()?;
                entries.push((c, field.from_rational(&q).ok()?));
            }
            rows.push(SparseVec::from_sorted(entries));
        }
        Subspace::from_echelon_rows(field.clone(), ncols, rows).ok()
    }

    fn write<F: Field>(
        &self,
        path: &Path,
        degree: usize,
        layer: &Subspace<F>,
    ) -> std::io::Result<()> {
        let f = layer.field();
        let file = LayerFile {
            version: FORMAT_VERSION,
            presentation: self.key.clone(),
            field: field_label(f.tag()),
            degree,
            ncols: layer.ncols(),
            rows: layer
                .rows()
                .iter()
                .map(|r| {
                    r.entries()
                        .iter()
                        .map(|(c, v)| (*c, f.to_rational(v).to_string()))
                        .collect()
                })
                .collect(),
        };
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&file)?.as_bytes())?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

impl<F: Field> LayerStore<F> for DiskStore {
    fn load(&self, field: &F, degree: usize, ncols: usize) -> Option<Subspace<F>> {
        self.read(field, &self.path(field.tag(), degree), degree, ncols)
    }

    fn store(&self, degree: usize, layer: &Subspace<F>) {
        let path = self.path(layer.field().tag(), degree);
        if let Err(e) = self.write(&path, degree, layer) {
            eprintln!(
                "warning: could not write cache file {}: {e}",
                path.display()
            );
        }
    }
}
