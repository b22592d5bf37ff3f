use std::collections::HashMap;
use std::fs;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Column roles for a tabular data file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schema {
    /// Name of the class label column.
    pub label: String,
    /// Feature columns to use, in order. All non-label columns when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attributes: Option<Vec<String>>,
    #[serde(default = "default_delimiter")]
    pub delimiter: char,
}

fn default_delimiter() -> char {
    ','
}

impl Schema {
    pub fn with_label(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            attributes: None,
            delimiter: ',',
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let schema: Schema =
            toml::from_str(text).map_err(|e| Error::Schema(e.message().to_string()))?;
        if !schema.delimiter.is_ascii() {
            return Err(Error::Schema(
                "delimiter must be a single ASCII character".into(),
            ));
        }
        Ok(schema)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&fs::read_to_string(path)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub features: Vec<f64>,
    /// Index into [`Dataset::classes`].
    pub class: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    attributes: Vec<String>,
    classes: Vec<String>,
    records: Vec<Record>,
}

impl Dataset {
    pub fn new(
        name: impl Into<String>,
        attributes: Vec<String>,
        classes: Vec<String>,
        records: Vec<Record>,
    ) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptyDataset);
        }
        for r in &records {
            if r.features.len() != attributes.len() {
                return Err(Error::LengthMismatch {
                    expected: attributes.len(),
                    found: r.features.len(),
                });
            }
            if r.class >= classes.len() {
                return Err(Error::EventOutOfRange {
                    index: r.class,
                    n: classes.len(),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            attributes,
            classes,
            records,
        })
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Record indices of each class, in file order.
    pub fn class_indices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.classes.len()];
        for (i, r) in self.records.iter().enumerate() {
            out[r.class].push(i);
        }
        out
    }

    /// Dataset restricted to `indices`, keeping the full class list.
    pub fn select(&self, indices: &[usize]) -> Dataset {
        Dataset {
            name: self.name.clone(),
            attributes: self.attributes.clone(),
            classes: self.classes.clone(),
            records: indices.iter().map(|&i| self.records[i].clone()).collect(),
        }
    }
}

/// Reads a delimited file with a header row.
pub fn load_dataset(path: impl AsRef<Path>, schema: &Schema) -> Result<Dataset> {
    let path = path.as_ref();
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    read_dataset(fs::File::open(path)?, &name, schema)
}

pub fn read_dataset<R: Read>(source: R, name: &str, schema: &Schema) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(schema.delimiter as u8)
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = reader.headers()?.clone();
    if headers.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let column = |name: &str| headers.iter().position(|h| h == name);
    let label_col = column(&schema.label)
        .ok_or_else(|| Error::Schema(format!("label column `{}` not found", schema.label)))?;
    let attributes: Vec<String> = match &schema.attributes {
        Some(list) => list.clone(),
        None => headers
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != label_col)
            .map(|(_, h)| h.to_string())
            .collect(),
    };
    if attributes.is_empty() {
        return Err(Error::Schema("no attribute columns".into()));
    }
    let attr_cols = attributes
        .iter()
        .map(|a| {
            if *a == schema.label {
                return Err(Error::Schema(format!("`{a}` is the label column")));
            }
            column(a).ok_or_else(|| Error::Schema(format!("attribute column `{a}` not found")))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut classes: Vec<String> = Vec::new();
    let mut class_ids: HashMap<String, usize> = HashMap::new();
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let cell = |col: usize| row.get(col).unwrap_or("");
        let label = cell(label_col);
        if label.is_empty() {
            return Err(Error::Parse {
                row: line,
                column: schema.label.clone(),
                message: "missing class label".into(),
            });
        }
        let features = attr_cols
            .iter()
            .zip(&attributes)
            .map(|(&col, name)| {
                let text = cell(col);
                let parse_err = |message: String| Error::Parse {
                    row: line,
                    column: name.clone(),
                    message,
                };
                if text.is_empty() {
                    return Err(parse_err("missing value".into()));
                }
                let x: f64 = text
                    .parse()
                    .map_err(|_| parse_err(format!("`{text}` is not a number")))?;
                if x.is_finite() {
                    Ok(x)
                } else {
                    Err(parse_err(format!("`{text}` is not finite")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let next = classes.len();
        let class = *class_ids.entry(label.to_string()).or_insert_with(|| {
            classes.push(label.to_string());
            next
        });
        records.push(Record { features, class });
    }
    Dataset::new(name, attributes, classes, records)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "x,y,kind\n1,2,a\n3,4,b\n5,6,a\n";

    #[test]
    fn reads_classes_in_first_seen_order() {
        let ds = read_dataset(SAMPLE.as_bytes(), "s", &Schema::with_label("kind")).unwrap();
        assert_eq!(ds.classes(), ["a", "b"]);
        assert_eq!(ds.attributes(), ["x", "y"]);
        assert_eq!(ds.class_indices(), vec![vec![0, 2], vec![1]]);
        assert_eq!(ds.records()[1].features, vec![3.0, 4.0]);
    }

    #[test]
    fn attribute_selection() {
        let schema = Schema {
            attributes: Some(vec!["y".into()]),
            ..Schema::with_label("kind")
        };
        let ds = read_dataset(SAMPLE.as_bytes(), "s", &schema).unwrap();
        assert_eq!(ds.records()[2].features, vec![6.0]);
    }

    #[test]
    fn errors_carry_location() {
        let bad = "x,kind\n1,a\nfoo,b\n";
        match read_dataset(bad.as_bytes(), "s", &Schema::with_label("kind")) {
            Err(Error::Parse { row, column, .. }) => assert_eq!((row, column.as_str()), (3, "x")),
            other => panic!("{other:?}"),
        }
        let missing = "x,kind\n,a\n";
        assert!(matches!(
            read_dataset(missing.as_bytes(), "s", &Schema::with_label("kind")),
            Err(Error::Parse { row: 2, .. })
        ));
        assert!(matches!(
            read_dataset("".as_bytes(), "s", &Schema::with_label("kind")),
            Err(Error::EmptyDataset)
        ));
        assert!(matches!(
            read_dataset("x,kind\n".as_bytes(), "s", &Schema::with_label("kind")),
            Err(Error::EmptyDataset)
        ));
        assert!(matches!(
            read_dataset(SAMPLE.as_bytes(), "s", &Schema::with_label("class")),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn schema_from_toml() {
        let s = Schema::from_toml_str(
            "label = \"species\"\nattributes = [\"a\", \"b\"]\ndelimiter = \";\"\n",
        )
        .unwrap();
        assert_eq!(s.label, "species");
        assert_eq!(s.delimiter, ';');
        assert!(Schema::from_toml_str("attributes = []").is_err());
        assert!(Schema::from_toml_str("label = \"x\"\ncolour = 1").is_err());
    }
}
