//! Binary formal contexts and their derivation operators.
//!
//! Objects and attributes are identified by position. Names are kept only
//! for reading and writing files; every kernel works on [`BitSet`]s.

mod cxt;
mod table;

pub use cxt::{read_cxt, write_cxt};
pub use table::{read_csv, write_csv, ContextDocument};

use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ratio::SupportValue;

/// Set of object positions of a specific context.
pub type ObjectSet = BitSet;
/// Set of attribute positions of a specific context.
pub type AttributeSet = BitSet;

/// Marker appended to attribute names of the second factor of an
/// apposition when they collide with names of the first factor.
pub const APPOSITION_SUFFIX: &str = "'";

#[derive(Clone, PartialEq, Eq)]
pub struct FormalContext {
    name: String,
    objects: Vec<String>,
    attributes: Vec<String>,
    /// `rows[g]` is the intent of object `g`.
    rows: Vec<AttributeSet>,
    /// `cols[m]` is the extent of attribute `m`.
    cols: Vec<ObjectSet>,
}

impl std::fmt::Debug for FormalContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FormalContext {:?} ({}x{})", self.name, self.objects.len(), self.attributes.len())?;
        for (g, row) in self.rows.iter().enumerate() {
            let line: String = (0..self.attributes.len())
                .map(|m| if row.contains(m) { 'X' } else { '.' })
                .collect();
            writeln!(f, "  {line} {}", self.objects[g])?;
        }
        Ok(())
    }
}

fn check_distinct(names: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::with_capacity(names.len());
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::argument(format!("duplicate {what} name {n:?}")));
        }
    }
    Ok(())
}

impl FormalContext {
    /// Builds a context from object rows. Each row must be an attribute set
    /// over `attributes.len()` positions.
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<AttributeSet>,
    ) -> Result<Self> {
        check_distinct(&objects, "object")?;
        check_distinct(&attributes, "attribute")?;
        if rows.len() != objects.len() {
            return Err(Error::argument(format!(
                "{} rows for {} objects",
                rows.len(),
                objects.len()
            )));
        }
        if let Some(bad) = rows.iter().find(|r| r.universe() != attributes.len()) {
            return Err(Error::argument(format!(
                "row of width {} for {} attributes",
                bad.universe(),
                attributes.len()
            )));
        }
        let mut cols = vec![BitSet::empty(objects.len()); attributes.len()];
        for (g, row) in rows.iter().enumerate() {
            for m in row {
                cols[m].insert(g);
            }
        }
        Ok(FormalContext {
            name: name.into(),
            objects,
            attributes,
            rows,
            cols,
        })
    }

    /// Builds a context from an incidence predicate.
    pub fn from_fn(
        name: impl Into<String>,
        objects: Vec<String>,
        attributes: Vec<String>,
        mut incidence: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let n_m = attributes.len();
        let rows = (0..objects.len())
            .map(|g| {
                let mut row = BitSet::empty(n_m);
                for m in 0..n_m {
                    if incidence(g, m) {
                        row.insert(m);
                    }
                }
                row
            })
            .collect();
        Self::new(name, objects, attributes, rows)
    }

    /// Builds a context from cross-table rows such as `"x..x"`. Any of
    /// `x`/`X` marks an incidence; `.` marks its absence.
    pub fn from_table(objects: &[&str], attributes: &[&str], rows: &[&str]) -> Result<Self> {
        if rows.len() != objects.len() {
            return Err(Error::argument("row count does not match object count"));
        }
        let mut bits = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            if r.chars().count() != attributes.len() {
                return Err(Error::parse(i + 1, format!("row {r:?} has wrong width")));
            }
            let mut row = BitSet::empty(attributes.len());
            for (m, c) in r.chars().enumerate() {
                match c {
                    'x' | 'X' => row.insert(m),
                    '.' => {}
                    other => return Err(Error::parse(i + 1, format!("unexpected {other:?}"))),
                }
            }
            bits.push(row);
        }
        Self::new(
            "",
            objects.iter().map(|s| s.to_string()).collect(),
            attributes.iter().map(|s| s.to_string()).collect(),
            bits,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attributes
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|n| n == name)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|n| n == name)
    }

    #[inline]
    pub fn incidence(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    /// Attributes of object `g` (the set g′).
    #[inline]
    pub fn row(&self, g: usize) -> &AttributeSet {
        &self.rows[g]
    }

    /// Objects having attribute `m` (the set m′).
    #[inline]
    pub fn column(&self, m: usize) -> &ObjectSet {
        &self.cols[m]
    }

    pub fn rows(&self) -> &[AttributeSet] {
        &self.rows
    }

    pub fn columns(&self) -> &[ObjectSet] {
        &self.cols
    }

    pub fn all_objects(&self) -> ObjectSet {
        BitSet::full(self.n_objects())
    }

    pub fn all_attributes(&self) -> AttributeSet {
        BitSet::full(self.n_attributes())
    }

    pub fn object_set<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<ObjectSet> {
        BitSet::from_indices(self.n_objects(), indices).map_err(|index| Error::Dimension {
            what: "object",
            index,
            size: self.n_objects(),
        })
    }

    pub fn attribute_set<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<AttributeSet> {
        BitSet::from_indices(self.n_attributes(), indices).map_err(|index| Error::Dimension {
            what: "attribute",
            index,
            size: self.n_attributes(),
        })
    }

    pub fn objects_named<S: AsRef<str>>(&self, names: &[S]) -> Result<ObjectSet> {
        let mut set = BitSet::empty(self.n_objects());
        for n in names {
            let i = self
                .object_index(n.as_ref())
                .ok_or_else(|| Error::argument(format!("unknown object {:?}", n.as_ref())))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn attributes_named<S: AsRef<str>>(&self, names: &[S]) -> Result<AttributeSet> {
        let mut set = BitSet::empty(self.n_attributes());
        for n in names {
            let i = self
                .attribute_index(n.as_ref())
                .ok_or_else(|| Error::argument(format!("unknown attribute {:?}", n.as_ref())))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn object_labels(&self, set: &ObjectSet) -> Vec<String> {
        set.iter().map(|g| self.objects[g].clone()).collect()
    }

    pub fn attribute_labels(&self, set: &AttributeSet) -> Vec<String> {
        set.iter().map(|m| self.attributes[m].clone()).collect()
    }

    fn check_objects(&self, set: &ObjectSet) -> Result<()> {
        if set.universe() != self.n_objects() {
            return Err(Error::Dimension {
                what: "object set universe",
                index: set.universe(),
                size: self.n_objects(),
            });
        }
        Ok(())
    }

    fn check_attributes(&self, set: &AttributeSet) -> Result<()> {
        if set.universe() != self.n_attributes() {
            return Err(Error::Dimension {
                what: "attribute set universe",
                index: set.universe(),
                size: self.n_attributes(),
            });
        }
        Ok(())
    }

    /// A′: attributes shared by every object of `objects`. The empty set
    /// derives to all attributes.
    pub fn derive_objects(&self, objects: &ObjectSet) -> Result<AttributeSet> {
        self.check_objects(objects)?;
        Ok(self.intent_of(objects))
    }

    /// B′: objects having every attribute of `attributes`. The empty set
    /// derives to all objects.
    pub fn derive_attributes(&self, attributes: &AttributeSet) -> Result<ObjectSet> {
        self.check_attributes(attributes)?;
        Ok(self.extent_of(attributes))
    }

    /// B″.
    pub fn closure_attributes(&self, attributes: &AttributeSet) -> Result<AttributeSet> {
        self.check_attributes(attributes)?;
        Ok(self.intent_of(&self.extent_of(attributes)))
    }

    /// A″.
    pub fn closure_objects(&self, objects: &ObjectSet) -> Result<ObjectSet> {
        self.check_objects(objects)?;
        Ok(self.extent_of(&self.intent_of(objects)))
    }

    /// Unchecked A′.
    pub(crate) fn intent_of(&self, objects: &ObjectSet) -> AttributeSet {
        let mut out = self.all_attributes();
        for g in objects {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// Unchecked B′.
    pub(crate) fn extent_of(&self, attributes: &AttributeSet) -> ObjectSet {
        let mut out = self.all_objects();
        for m in attributes {
            out.intersect_with(&self.cols[m]);
        }
        out
    }

    /// |B′| / |G| as an exact fraction.
    pub fn support(&self, attributes: &AttributeSet) -> Result<SupportValue> {
        if self.n_objects() == 0 {
            return Err(Error::argument("support is undefined on a context without objects"));
        }
        let extent = self.derive_attributes(attributes)?;
        Ok(SupportValue::new(extent.len(), self.n_objects()))
    }

    pub fn attribute_support(&self, m: usize) -> SupportValue {
        SupportValue::new(self.cols[m].len(), self.n_objects().max(1))
    }

    /// Places the attributes of `other` to the right of ours. Both contexts
    /// must list identical objects in identical order. Colliding attribute
    /// names of `other` get [`APPOSITION_SUFFIX`] appended until unique.
    pub fn apposition(&self, other: &FormalContext) -> Result<FormalContext> {
        if self.objects != other.objects {
            return Err(Error::Apposition(
                "object lists differ between the two contexts".into(),
            ));
        }
        let mut names: Vec<String> = self.attributes.clone();
        let mut taken: HashSet<String> = names.iter().cloned().collect();
        for n in &other.attributes {
            let mut candidate = n.clone();
            while taken.contains(&candidate) || other.attributes.iter().any(|o| o == &candidate && o != n) {
                candidate.push_str(APPOSITION_SUFFIX);
            }
            taken.insert(candidate.clone());
            names.push(candidate);
        }
        let n_left = self.n_attributes();
        let width = names.len();
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(l, r)| {
                let mut row = BitSet::empty(width);
                for m in l {
                    row.insert(m);
                }
                for m in r {
                    row.insert(n_left + m);
                }
                row
            })
            .collect();
        FormalContext::new(self.name.clone(), self.objects.clone(), names, rows)
    }

    /// Restriction to the attributes in `keep`, in their original order.
    pub fn project_attributes(&self, keep: &AttributeSet) -> Result<FormalContext> {
        self.check_attributes(keep)?;
        if keep.is_empty() {
            return Err(Error::argument("projection onto an empty attribute set"));
        }
        let kept: Vec<usize> = keep.to_vec();
        let names = kept.iter().map(|&m| self.attributes[m].clone()).collect();
        FormalContext::from_fn(self.name.clone(), self.objects.clone(), names, |g, j| {
            self.rows[g].contains(kept[j])
        })
    }

    /// Restriction to the objects in `keep`, in their original order.
    pub fn project_objects(&self, keep: &ObjectSet) -> Result<FormalContext> {
        self.check_objects(keep)?;
        let kept: Vec<usize> = keep.to_vec();
        let names = kept.iter().map(|&g| self.objects[g].clone()).collect();
        let rows = kept.iter().map(|&g| self.rows[g].clone()).collect();
        FormalContext::new(self.name.clone(), names, self.attributes.clone(), rows)
    }

    /// Swaps the roles of objects and attributes.
    pub fn transpose(&self) -> FormalContext {
        FormalContext {
            name: self.name.clone(),
            objects: self.attributes.clone(),
            attributes: self.objects.clone(),
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    /// Number of incidences.
    pub fn n_incidences(&self) -> usize {
        self.rows.iter().map(BitSet::len).sum()
    }
}
