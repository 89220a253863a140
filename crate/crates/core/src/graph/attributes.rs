use super::{Graph, NodeId};
use crate::error::{Error, Result};

/// Categorical node attributes aligned to internal node ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeTable {
    attributes: Vec<String>,
    values: Vec<Vec<Option<String>>>,
}

impl AttributeTable {
    /// Table with every value missing.
    pub fn empty(attributes: Vec<String>, node_count: usize) -> Self {
        let width = attributes.len();
        AttributeTable {
            attributes,
            values: vec![vec![None; width]; node_count],
        }
    }

    pub fn set(&mut self, node: NodeId, attribute: usize, value: Option<String>) {
        self.values[node][attribute] = value;
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn node_count(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, node: NodeId, attribute: usize) -> Option<&str> {
        self.values[node][attribute].as_deref()
    }

    pub fn row(&self, node: NodeId) -> &[Option<String>] {
        &self.values[node]
    }
}

/// Parses `node,attr1,attr2,...` CSV. Empty cells are missing values; nodes
/// without a row get all values missing.
pub fn load_attribute_table(text: &str, graph: &Graph) -> Result<AttributeTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());

    let mut records = reader.records();
    let header = match records.next() {
        Some(rec) => rec.map_err(|e| csv_error(e, 1))?,
        None => {
            return Err(Error::Format {
                line: 1,
                message: "missing header".into(),
            })
        }
    };
    if header.len() < 2 {
        return Err(Error::Format {
            line: 1,
            message: "header needs a node column and at least one attribute".into(),
        });
    }
    let attributes: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
    let mut table = AttributeTable::empty(attributes, graph.node_count());
    let mut seen = vec![false; graph.node_count()];

    for rec in records {
        let rec = rec.map_err(|e| csv_error(e, 0))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != header.len() {
            return Err(Error::Format {
                line,
                message: format!("expected {} fields, found {}", header.len(), rec.len()),
            });
        }
        let name = &rec[0];
        let node = graph.id(name).ok_or_else(|| Error::UnknownNode {
            line,
            name: name.to_owned(),
        })?;
        if std::mem::replace(&mut seen[node], true) {
            return Err(Error::Format {
                line,
                message: format!("duplicate row for node {name:?}"),
            });
        }
        for (a, cell) in rec.iter().skip(1).enumerate() {
            let value = (!cell.is_empty()).then(|| cell.to_owned());
            table.set(node, a, value);
        }
    }
    Ok(table)
}

fn csv_error(e: csv::Error, fallback_line: usize) -> Error {
    let line = e
        .position()
        .map_or(fallback_line, |p| p.line() as usize);
    Error::Format {
        line,
        message: e.to_string(),
    }
}
