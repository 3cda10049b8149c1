//! Listing the reduced hyper-power set of a model.

use dsmt::{Element, Frame, Model};

use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeRow {
    pub index: usize,
    pub element: Element,
    pub cardinality: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeListing {
    pub frame: Frame,
    pub rows: Vec<LatticeRow>,
}

/// Every element of the model's reduced lattice, in enumeration order, with
/// its DSm cardinality. `limit` caps the frame size that may be enumerated.
pub fn list_lattice(model: &Model, limit: usize) -> Result<LatticeListing> {
    let rows = model
        .reduced_lattice(limit)?
        .into_iter()
        .enumerate()
        .map(|(index, element)| LatticeRow {
            index,
            element,
            cardinality: model.cardinality(element),
        })
        .collect();
    Ok(LatticeListing {
        frame: model.frame().clone(),
        rows,
    })
}
