//! Presentations and morphisms shipped with the workbench.

use std::sync::OnceLock;

use crate::input::{parse_input, MorphismDef, PresentationDef, WorkbenchInput};

pub const BUILTIN_TEXT: &str = include_str!("../catalog/builtin.sexp");

pub fn builtin() -> &'static WorkbenchInput {
    static CATALOG: OnceLock<WorkbenchInput> = OnceLock::new();
    CATALOG.get_or_init(|| parse_input(BUILTIN_TEXT).expect("the built-in catalog parses"))
}

pub fn presentation(name: &str) -> Option<&'static PresentationDef> {
    builtin().presentation(name)
}

pub fn morphism(name: &str) -> Option<&'static MorphismDef> {
    builtin().morphism(name)
}
