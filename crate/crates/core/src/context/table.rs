//! CSV cross-tables and the JSON context document.

use serde::{Deserialize, Serialize};

use super::FormalContext;
use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Reads a CSV cross-table: the header row holds attribute names (its first
/// cell is a corner label and is ignored), the first column holds object
/// names, and every other cell is `0` or `1`.
pub fn read_csv(text: &str) -> Result<FormalContext> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    if headers.is_empty() {
        return Err(Error::parse(1, "empty header row"));
    }
    let attributes: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let mut objects = Vec::new();
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = i + 2;
        if record.len() != attributes.len() + 1 {
            return Err(Error::parse(
                line,
                format!("{} cells, expected {}", record.len(), attributes.len() + 1),
            ));
        }
        objects.push(record[0].to_string());
        let mut row = BitSet::empty(attributes.len());
        for (m, cell) in record.iter().skip(1).enumerate() {
            match cell {
                "1" => row.insert(m),
                "0" => {}
                other => return Err(Error::parse(line, format!("cell {other:?} is not 0 or 1"))),
            }
        }
        rows.push(row);
    }
    FormalContext::new("", objects, attributes, rows)
}

pub fn write_csv(ctx: &FormalContext) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header = vec![String::new()];
    header.extend(ctx.attribute_names().iter().cloned());
    writer.write_record(&header)?;
    for (g, row) in ctx.rows().iter().enumerate() {
        let mut record = vec![ctx.object_names()[g].clone()];
        record.extend((0..ctx.n_attributes()).map(|m| if row.contains(m) { "1" } else { "0" }.to_string()));
        writer.write_record(&record)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

/// JSON form of a context. Rows use the `.cxt` cell alphabet.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ContextDocument {
    pub format_version: u32,
    #[serde(default)]
    pub name: String,
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub rows: Vec<String>,
}

impl ContextDocument {
    pub fn from_context(ctx: &FormalContext) -> Self {
        ContextDocument {
            format_version: 1,
            name: ctx.name().to_string(),
            objects: ctx.object_names().to_vec(),
            attributes: ctx.attribute_names().to_vec(),
            rows: ctx
                .rows()
                .iter()
                .map(|r| (0..ctx.n_attributes()).map(|m| if r.contains(m) { 'X' } else { '.' }).collect())
                .collect(),
        }
    }

    pub fn to_context(&self) -> Result<FormalContext> {
        if self.format_version != 1 {
            return Err(Error::Format(format!(
                "unsupported format_version {}",
                self.format_version
            )));
        }
        let objects: Vec<&str> = self.objects.iter().map(String::as_str).collect();
        let attributes: Vec<&str> = self.attributes.iter().map(String::as_str).collect();
        let rows: Vec<&str> = self.rows.iter().map(String::as_str).collect();
        Ok(FormalContext::from_table(&objects, &attributes, &rows)?.with_name(self.name.clone()))
    }
}
