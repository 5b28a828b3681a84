use std::collections::HashSet;
use std::io::{Read, Write};

use indexmap::IndexMap;

use crate::error::{Error, Result};

/// Per-DMU measure values, keyed by measure name in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    dmu_ids: Vec<String>,
    measures: IndexMap<String, Vec<f64>>,
}

impl Dataset {
    /// Checks lengths, id uniqueness and strict positivity.
    pub fn new(dmu_ids: Vec<String>, measures: IndexMap<String, Vec<f64>>) -> Result<Self> {
        if dmu_ids.is_empty() {
            return Err(Error::Dataset("no DMUs".into()));
        }
        let mut seen = HashSet::new();
        for id in &dmu_ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::Dataset(format!("duplicate DMU id {id:?}")));
            }
        }
        for (name, values) in &measures {
            if values.len() != dmu_ids.len() {
                return Err(Error::Dataset(format!(
                    "measure {name:?} has {} values for {} DMUs",
                    values.len(),
                    dmu_ids.len()
                )));
            }
            if let Some(j) = values.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
                return Err(Error::Dataset(format!(
                    "measure {name:?} is not strictly positive for DMU {:?} ({})",
                    dmu_ids[j], values[j]
                )));
            }
        }
        Ok(Self { dmu_ids, measures })
    }

    pub fn dmu_ids(&self) -> &[String] {
        &self.dmu_ids
    }

    pub fn measures(&self) -> &IndexMap<String, Vec<f64>> {
        &self.measures
    }

    pub fn measure(&self, name: &str) -> Option<&[f64]> {
        self.measures.get(name).map(Vec::as_slice)
    }

    pub fn num_dmus(&self) -> usize {
        self.dmu_ids.len()
    }

    pub fn dmu_index(&self, dmu: &str) -> Result<usize> {
        self.dmu_ids
            .iter()
            .position(|d| d == dmu)
            .ok_or_else(|| Error::UnknownDmu(dmu.to_string()))
    }

    /// Rows of `names` as a measure-major matrix.
    pub(crate) fn matrix(&self, names: &[String]) -> Result<Vec<Vec<f64>>> {
        names
            .iter()
            .map(|n| {
                self.measure(n)
                    .map(<[f64]>::to_vec)
                    .ok_or_else(|| Error::Dataset(format!("missing measure {n:?}")))
            })
            .collect()
    }

    /// The DMUs at `order`, in that order.
    pub fn reorder(&self, order: &[usize]) -> Result<Self> {
        let ids = order.iter().map(|&j| self.dmu_ids[j].clone()).collect();
        let measures = self
            .measures
            .iter()
            .map(|(k, v)| (k.clone(), order.iter().map(|&j| v[j]).collect()))
            .collect();
        Self::new(ids, measures)
    }

    /// A copy with one measure multiplied by `factor`.
    pub fn rescaled(&self, measure: &str, factor: f64) -> Result<Self> {
        let mut measures = self.measures.clone();
        let col = measures
            .get_mut(measure)
            .ok_or_else(|| Error::Dataset(format!("missing measure {measure:?}")))?;
        col.iter_mut().for_each(|v| *v *= factor);
        Self::new(self.dmu_ids.clone(), measures)
    }
}

/// Reads a `dmu,<measure>...` CSV.
///
/// With `min_epsilon = Some(e)`, nonpositive cells are replaced by `e` and a
/// warning is returned for each; otherwise they are rejected.
pub fn read_dataset<R: Read>(
    reader: R,
    source_name: &str,
    min_epsilon: Option<f64>,
) -> Result<(Dataset, Vec<String>)> {
    let data_err = |row: usize, column: &str, message: String| Error::Data {
        source_name: source_name.to_string(),
        row,
        column: column.to_string(),
        message,
    };
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| data_err(1, "", e.to_string()))?
        .clone();
    if headers.get(0) != Some("dmu") {
        return Err(data_err(1, headers.get(0).unwrap_or(""), "first header must be \"dmu\"".into()));
    }
    let names: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    let mut distinct = HashSet::new();
    for n in &names {
        if !distinct.insert(n.as_str()) {
            return Err(data_err(1, n, "duplicate measure name".into()));
        }
    }
    if let Some(e) = min_epsilon {
        if !(e.is_finite() && e > 0.0) {
            return Err(Error::InvalidArgument(format!("min-epsilon must be positive, got {e}")));
        }
    }

    let mut ids = Vec::new();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    let mut warnings = Vec::new();
    let mut seen = HashSet::new();
    for (k, record) in rdr.records().enumerate() {
        let row = k + 2;
        let record = record.map_err(|e| data_err(row, "", e.to_string()))?;
        let id = record.get(0).unwrap_or_default().to_string();
        if id.is_empty() {
            return Err(data_err(row, "dmu", "empty DMU id".into()));
        }
        if !seen.insert(id.clone()) {
            return Err(data_err(row, "dmu", format!("duplicate DMU id {id:?}")));
        }
        for (c, name) in names.iter().enumerate() {
            let cell = record.get(c + 1).unwrap_or_default();
            let mut value: f64 = cell
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| data_err(row, name, format!("non-numeric value {cell:?}")))?;
            if value <= 0.0 {
                let Some(e) = min_epsilon else {
                    return Err(data_err(row, name, format!("nonpositive value {value}")));
                };
                warnings.push(format!("{source_name}: row {row}, column {name:?}: replaced {value} by {e}"));
                value = e;
            }
            columns[c].push(value);
        }
        ids.push(id);
    }
    let measures = names.into_iter().zip(columns).collect();
    Ok((Dataset::new(ids, measures)?, warnings))
}

/// Writes the dataset in the format [`read_dataset`] accepts. Values use the
/// shortest representation that parses back to the same `f64`.
pub fn write_dataset<W: Write>(dataset: &Dataset, writer: W) -> Result<()> {
    let io = |e: csv::Error| Error::Dataset(format!("write failed: {e}"));
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["dmu".to_string()];
    header.extend(dataset.measures.keys().cloned());
    w.write_record(&header).map_err(io)?;
    for (j, id) in dataset.dmu_ids.iter().enumerate() {
        let mut rec = vec![id.clone()];
        rec.extend(dataset.measures.values().map(|v| v[j].to_string()));
        w.write_record(&rec).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Dataset(format!("write failed: {e}")))?;
    Ok(())
}

/// One numeric column of a CSV, for score files. Zeros and negatives are
/// accepted. With `column = None` the file must have exactly one column
/// besides an optional `dmu` column.
pub fn read_score_column<R: Read>(reader: R, source_name: &str, column: Option<&str>) -> Result<Vec<f64>> {
    let data_err = |row: usize, column: &str, message: String| Error::Data {
        source_name: source_name.to_string(),
        row,
        column: column.to_string(),
        message,
    };
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| data_err(1, "", e.to_string()))?
        .clone();
    let idx = match column {
        Some(c) => headers
            .iter()
            .position(|h| h == c)
            .ok_or_else(|| data_err(1, c, "no such column".into()))?,
        None => {
            let candidates: Vec<usize> = (0..headers.len()).filter(|&i| &headers[i] != "dmu").collect();
            match candidates.as_slice() {
                [i] => *i,
                _ => return Err(data_err(1, "", "several value columns; choose one with --column".into())),
            }
        }
    };
    let name = headers[idx].to_string();
    let mut out = Vec::new();
    for (k, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| data_err(k + 2, "", e.to_string()))?;
        let cell = record.get(idx).unwrap_or_default();
        let v: f64 = cell
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| data_err(k + 2, &name, format!("non-numeric value {cell:?}")))?;
        out.push(v);
    }
    Ok(out)
}
