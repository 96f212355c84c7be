//! CSV ingestion, discretization, stratification, and population construction.
//!
//! The pipeline is `load_csv -> discretize -> stratify -> build_population`.
//! All stages are deterministic; `stratify` additionally takes an explicit
//! seed for the downsampling draw.

use std::collections::BTreeSet;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Attribute code reserved for missing cells; it matches no proposition.
pub const MISSING_CODE: u16 = u16::MAX;

/// A single CSV cell after typed parsing.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    /// Verbatim text value (categorical and control columns).
    Text(String),
    /// Finite numeric value (target and numeric columns).
    Real(f64),
    /// Empty or unparseable cell.
    Missing,
}

/// Role of a column in the mining task.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttrKind {
    /// Numeric descriptive attribute, discretized into equal-frequency bins.
    Numeric,
    /// Categorical descriptive attribute, coded by first appearance.
    Categorical,
    /// The numeric quantity being maximised.
    Target,
    /// The binary class whose distribution subgroups should preserve.
    Control,
    /// Column present in the file but excluded from the task.
    Ignore,
}

/// Declares how one column is ingested.
#[derive(Clone, Debug)]
pub struct AttributeSpec {
    /// Column name as it appears in the CSV header.
    pub name: String,
    /// Column role.
    pub kind: AttrKind,
    /// Bin count for numeric attributes.
    pub bins: usize,
    /// One label per bin, lowest bin first.
    pub bin_labels: Vec<String>,
}

impl AttributeSpec {
    /// Numeric attribute with default labels for the given bin count
    /// (4 bins are labeled `V.Lo`/`Lo`/`Hi`/`V.Hi`).
    pub fn numeric(name: &str, bins: usize) -> Self {
        AttributeSpec {
            name: name.to_string(),
            kind: AttrKind::Numeric,
            bins,
            bin_labels: default_bin_labels(bins),
        }
    }

    /// Categorical attribute; labels are taken from the data.
    pub fn categorical(name: &str) -> Self {
        AttributeSpec {
            name: name.to_string(),
            kind: AttrKind::Categorical,
            bins: 0,
            bin_labels: Vec::new(),
        }
    }

    /// Target column.
    pub fn target(name: &str) -> Self {
        AttributeSpec {
            name: name.to_string(),
            kind: AttrKind::Target,
            bins: 0,
            bin_labels: Vec::new(),
        }
    }

    /// Control column.
    pub fn control(name: &str) -> Self {
        AttributeSpec {
            name: name.to_string(),
            kind: AttrKind::Control,
            bins: 0,
            bin_labels: Vec::new(),
        }
    }
}

/// Default bin labels for an equal-frequency binning.
pub fn default_bin_labels(bins: usize) -> Vec<String> {
    match bins {
        2 => vec!["Lo".into(), "Hi".into()],
        3 => vec!["Lo".into(), "Mid".into(), "Hi".into()],
        4 => vec!["V.Lo".into(), "Lo".into(), "Hi".into(), "V.Hi".into()],
        b => (1..=b).map(|i| format!("B{i}")).collect(),
    }
}

/// Typed but not yet discretized table; holds the non-ignored spec columns in
/// spec order.
#[derive(Clone, Debug)]
pub struct RawTable {
    /// Retained column names, in spec order.
    pub columns: Vec<String>,
    /// One record per CSV data row; each has exactly one cell per column.
    pub rows: Vec<Vec<Cell>>,
}

impl RawTable {
    /// Number of data rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Returns `true` when the table has no rows.
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Rendering metadata for one descriptive attribute: `labels[code]` is the
/// human-readable bin or category label.
#[derive(Clone, Debug)]
pub struct AttributeMeta {
    /// Attribute name.
    pub name: String,
    /// Label per code, in code order.
    pub labels: Vec<String>,
}

/// One fully coded row.
#[derive(Clone, Debug)]
pub struct DiscreteRow<T> {
    /// Target value.
    pub y: T,
    /// Control class, `1` or `2`.
    pub class: u8,
    /// One code per descriptive attribute; `MISSING_CODE` for missing cells.
    pub codes: Vec<u16>,
    /// Index of the source row in the input file, for deterministic ties.
    pub source_row: usize,
}

/// Discretized table: descriptive attributes coded, target and control split
/// out, rows with a missing target or control dropped.
#[derive(Clone, Debug)]
pub struct DiscreteTable<T> {
    /// Descriptive attribute metadata, aligned with `DiscreteRow::codes`.
    pub attributes: Vec<AttributeMeta>,
    /// Coded rows in input order.
    pub rows: Vec<DiscreteRow<T>>,
    /// Control value per class, `control_labels[class - 1]`.
    pub control_labels: Vec<String>,
}

/// One population item: target, control class, and attribute codes.
#[derive(Clone, Debug)]
pub struct Item<T> {
    /// Target value.
    pub y: T,
    /// Control class, `1` or `2`.
    pub class: u8,
    /// Attribute codes, aligned with `Population::attributes`.
    pub codes: Vec<u16>,
}

/// Immutable item table sorted by target descending, with the global
/// statistics every score needs.
#[derive(Clone, Debug)]
pub struct Population<T> {
    items: Vec<Item<T>>,
    attributes: Vec<AttributeMeta>,
    mean_y: T,
    max_y: T,
    d: T,
    m: [usize; 2],
    p: [T; 2],
    d_max: T,
    balanced: bool,
}

impl<T: Scalar> Population<T> {
    /// Number of items.
    pub fn n(&self) -> usize {
        self.items.len()
    }

    /// Items sorted by target descending (ties by source row ascending).
    pub fn items(&self) -> &[Item<T>] {
        &self.items
    }

    /// Descriptive attribute metadata.
    pub fn attributes(&self) -> &[AttributeMeta] {
        &self.attributes
    }

    /// Mean target value.
    pub fn mean_y(&self) -> T {
        self.mean_y
    }

    /// Maximum target value.
    pub fn max_y(&self) -> T {
        self.max_y
    }

    /// Impact normaliser `|P| * (max y - mean y)`; positive by construction.
    pub fn d(&self) -> T {
        self.d
    }

    /// Item count of a control class (`1` or `2`).
    pub fn class_count(&self, class: u8) -> usize {
        self.m[usize::from(class) - 1]
    }

    /// Control class probability pair.
    pub fn probs(&self) -> [T; 2] {
        self.p
    }

    /// Largest total variation distance any non-empty subset can attain
    /// against this population's class distribution: `max(p1, p2)`.
    pub fn d_max(&self) -> T {
        self.d_max
    }

    /// `true` when both control classes have the same count.
    pub fn balanced(&self) -> bool {
        self.balanced
    }
}

/// Reads a CSV file into a [`RawTable`] using the given column specs.
///
/// Cells of target and numeric columns are parsed as decimal numbers
/// (non-finite or unparseable values become [`Cell::Missing`]); control and
/// categorical cells are kept as text; empty cells are missing; `Ignore`
/// columns are dropped.
pub fn load_csv(path: &Path, specs: &[AttributeSpec]) -> Result<RawTable> {
    validate_specs(specs)?;
    let read_err = |e: String| Error::UnreadableFile {
        path: path.display().to_string(),
        message: e,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| read_err(e.to_string()))?;
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| read_err(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();

    let retained: Vec<&AttributeSpec> = specs.iter().filter(|s| s.kind != AttrKind::Ignore).collect();
    let mut positions = Vec::with_capacity(retained.len());
    for spec in &retained {
        let pos = header
            .iter()
            .position(|h| *h == spec.name)
            .ok_or_else(|| Error::MissingColumn(spec.name.clone()))?;
        positions.push(pos);
    }

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| read_err(e.to_string()))?;
        let mut cells = Vec::with_capacity(retained.len());
        for (spec, &pos) in retained.iter().zip(&positions) {
            let raw = record.get(pos).unwrap_or("").trim();
            cells.push(parse_cell(raw, spec.kind));
        }
        rows.push(cells);
    }
    if rows.is_empty() {
        return Err(Error::EmptyTable);
    }
    Ok(RawTable {
        columns: retained.iter().map(|s| s.name.clone()).collect(),
        rows,
    })
}

fn parse_cell(raw: &str, kind: AttrKind) -> Cell {
    if raw.is_empty() {
        return Cell::Missing;
    }
    match kind {
        AttrKind::Target | AttrKind::Numeric => match raw.parse::<f64>() {
            Ok(v) if v.is_finite() => Cell::Real(v),
            _ => Cell::Missing,
        },
        _ => Cell::Text(raw.to_string()),
    }
}

fn validate_specs(specs: &[AttributeSpec]) -> Result<()> {
    let targets = specs.iter().filter(|s| s.kind == AttrKind::Target).count();
    let controls = specs.iter().filter(|s| s.kind == AttrKind::Control).count();
    if targets != 1 {
        return Err(Error::InvalidSpec(format!(
            "expected exactly one target column, found {targets}"
        )));
    }
    if controls != 1 {
        return Err(Error::InvalidSpec(format!(
            "expected exactly one control column, found {controls}"
        )));
    }
    let mut names = BTreeSet::new();
    for spec in specs {
        if !names.insert(spec.name.as_str()) {
            return Err(Error::InvalidSpec(format!("duplicate column `{}`", spec.name)));
        }
        if spec.kind == AttrKind::Numeric {
            if spec.bins < 2 {
                return Err(Error::InvalidSpec(format!(
                    "attribute `{}` needs at least 2 bins",
                    spec.name
                )));
            }
            if spec.bin_labels.len() != spec.bins {
                return Err(Error::InvalidSpec(format!(
                    "attribute `{}` has {} labels for {} bins",
                    spec.name,
                    spec.bin_labels.len(),
                    spec.bins
                )));
            }
        }
    }
    Ok(())
}

/// Discretizes a raw table.
///
/// Numeric attributes are cut into equal-frequency bins at nearest-rank
/// quantiles; a value equal to a cut point goes to the lower bin. Categorical
/// attributes are coded in first-appearance order. Rows with a missing target
/// or control cell are dropped; other missing cells keep [`MISSING_CODE`],
/// which matches no proposition.
pub fn discretize<T: Scalar>(raw: &RawTable, specs: &[AttributeSpec]) -> Result<DiscreteTable<T>> {
    validate_specs(specs)?;
    let retained: Vec<&AttributeSpec> = specs.iter().filter(|s| s.kind != AttrKind::Ignore).collect();
    for (spec, col) in retained.iter().zip(&raw.columns) {
        if spec.name != *col {
            return Err(Error::InvalidSpec(format!(
                "table column `{col}` does not match spec column `{}`",
                spec.name
            )));
        }
    }
    let target_col = retained.iter().position(|s| s.kind == AttrKind::Target).unwrap();
    let control_col = retained.iter().position(|s| s.kind == AttrKind::Control).unwrap();
    let descr: Vec<usize> = retained
        .iter()
        .enumerate()
        .filter(|(_, s)| matches!(s.kind, AttrKind::Numeric | AttrKind::Categorical))
        .map(|(i, _)| i)
        .collect();

    // Per-attribute encoders, computed over all rows (including ones later
    // dropped for a missing target/control: cut points depend only on the
    // attribute column itself).
    let mut encoders = Vec::with_capacity(descr.len());
    for &col in &descr {
        let spec = retained[col];
        let encoder = match spec.kind {
            AttrKind::Numeric => Encoder::numeric(raw, col, spec)?,
            AttrKind::Categorical => Encoder::categorical(raw, col, spec),
            _ => unreachable!(),
        };
        encoders.push(encoder);
    }

    let mut control_labels: Vec<String> = Vec::new();
    let mut rows = Vec::new();
    for (source_row, cells) in raw.rows.iter().enumerate() {
        let y = match &cells[target_col] {
            Cell::Real(v) => T::from_f64(*v),
            _ => continue,
        };
        let class = match &cells[control_col] {
            Cell::Text(v) => {
                let idx = match control_labels.iter().position(|l| l == v) {
                    Some(idx) => idx,
                    None => {
                        control_labels.push(v.clone());
                        control_labels.len() - 1
                    }
                };
                (idx + 1) as u8
            }
            _ => continue,
        };
        let codes = descr
            .iter()
            .zip(&encoders)
            .map(|(&col, enc)| enc.encode(&cells[col]))
            .collect();
        rows.push(DiscreteRow { y, class, codes, source_row });
    }

    let attributes = descr
        .iter()
        .zip(encoders)
        .map(|(&col, enc)| AttributeMeta {
            name: retained[col].name.clone(),
            labels: enc.into_labels(),
        })
        .collect();

    Ok(DiscreteTable { attributes, rows, control_labels })
}

enum Encoder {
    /// Equal-frequency cut points, ascending; `code(v) = #{cuts < v}`.
    Numeric { cuts: Vec<f64>, labels: Vec<String> },
    /// Category values in first-appearance order; the code is the position.
    Categorical { values: Vec<String> },
}

impl Encoder {
    fn numeric(raw: &RawTable, col: usize, spec: &AttributeSpec) -> Result<Encoder> {
        let mut values: Vec<f64> = raw
            .rows
            .iter()
            .filter_map(|cells| match &cells[col] {
                Cell::Real(v) => Some(*v),
                _ => None,
            })
            .collect();
        values.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        let mut distinct = values.clone();
        distinct.dedup();
        if distinct.len() < spec.bins {
            return Err(Error::TooFewDistinctValues {
                attribute: spec.name.clone(),
                distinct: distinct.len(),
                bins: spec.bins,
            });
        }
        // Nearest-rank quantile cuts: the j-th cut is the ceil(j*n/b)-th
        // smallest value, j = 1..b-1.
        let n = values.len();
        let cuts = (1..spec.bins)
            .map(|j| values[(j * n).div_ceil(spec.bins) - 1])
            .collect();
        Ok(Encoder::Numeric { cuts, labels: spec.bin_labels.clone() })
    }

    fn categorical(raw: &RawTable, col: usize, _spec: &AttributeSpec) -> Encoder {
        let mut values: Vec<String> = Vec::new();
        for cells in &raw.rows {
            if let Cell::Text(v) = &cells[col] {
                if !values.iter().any(|seen| seen == v) {
                    values.push(v.clone());
                }
            }
        }
        Encoder::Categorical { values }
    }

    fn encode(&self, cell: &Cell) -> u16 {
        match (self, cell) {
            (Encoder::Numeric { cuts, .. }, Cell::Real(v)) => {
                cuts.iter().take_while(|c| *c < v).count() as u16
            }
            (Encoder::Categorical { values }, Cell::Text(v)) => {
                values.iter().position(|seen| seen == v).unwrap() as u16
            }
            _ => MISSING_CODE,
        }
    }

    fn into_labels(self) -> Vec<String> {
        match self {
            Encoder::Numeric { labels, .. } => labels,
            Encoder::Categorical { values } => values,
        }
    }
}

/// Balances the control classes by seeded uniform downsampling of the
/// majority class, without replacement. Row order of survivors is preserved;
/// the result is deterministic for a fixed seed, and already-balanced tables
/// are returned unchanged.
pub fn stratify<T: Scalar>(table: DiscreteTable<T>, seed: u64) -> Result<DiscreteTable<T>> {
    if table.control_labels.len() != 2 {
        return Err(Error::NotBinaryControl(table.control_labels.len()));
    }
    let count = |class: u8| table.rows.iter().filter(|r| r.class == class).count();
    let counts = [count(1), count(2)];
    for (idx, &c) in counts.iter().enumerate() {
        if c == 0 {
            return Err(Error::EmptyClass(table.control_labels[idx].clone()));
        }
    }
    if counts[0] == counts[1] {
        return Ok(table);
    }

    let majority: u8 = if counts[0] > counts[1] { 1 } else { 2 };
    let keep = counts[0].min(counts[1]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut selected: Vec<usize> =
        rand::seq::index::sample(&mut rng, counts[0].max(counts[1]), keep).into_vec();
    selected.sort_unstable();

    let mut majority_seen = 0usize;
    let mut cursor = 0usize;
    let rows = table
        .rows
        .into_iter()
        .filter(|row| {
            if row.class != majority {
                return true;
            }
            let position = majority_seen;
            majority_seen += 1;
            if cursor < selected.len() && selected[cursor] == position {
                cursor += 1;
                true
            } else {
                false
            }
        })
        .collect();

    Ok(DiscreteTable { attributes: table.attributes, rows, control_labels: table.control_labels })
}

/// Builds the immutable population: items sorted by target descending (ties
/// by source row ascending) plus the global statistics used by every score.
pub fn build_population<T: Scalar>(table: &DiscreteTable<T>) -> Result<Population<T>> {
    if table.rows.is_empty() {
        return Err(Error::EmptyTable);
    }
    if table.rows.iter().any(|r| r.class != 1 && r.class != 2) {
        return Err(Error::NotBinaryControl(
            table.rows.iter().map(|r| r.class).collect::<BTreeSet<_>>().len(),
        ));
    }

    let mut order: Vec<usize> = (0..table.rows.len()).collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (&table.rows[a], &table.rows[b]);
        rb.y.partial_cmp(&ra.y)
            .expect("targets are finite")
            .then(ra.source_row.cmp(&rb.source_row))
    });

    let items: Vec<Item<T>> = order
        .into_iter()
        .map(|i| {
            let row = &table.rows[i];
            Item { y: row.y, class: row.class, codes: row.codes.clone() }
        })
        .collect();

    let n = items.len();
    let nt = T::from_count(n);
    let sum = items.iter().fold(T::zero(), |acc, it| acc + it.y);
    let mean_y = sum / nt;
    let max_y = items[0].y;
    let d = nt * (max_y - mean_y);
    if d <= T::zero() {
        return Err(Error::ConstantTarget);
    }
    let m1 = items.iter().filter(|it| it.class == 1).count();
    let m = [m1, n - m1];
    let p = [T::from_count(m[0]) / nt, T::from_count(m[1]) / nt];

    Ok(Population {
        items,
        attributes: table.attributes.clone(),
        mean_y,
        max_y,
        d,
        m,
        p,
        d_max: p[0].max(p[1]),
        balanced: m[0] == m[1],
    })
}

/// Infers attribute specs for a CSV file given the target and control column
/// names: a column is numeric when every non-missing cell parses to a finite
/// number and it has at least `bins` distinct values; otherwise it is
/// categorical.
pub fn infer_specs(path: &Path, target: &str, control: &str, bins: usize) -> Result<Vec<AttributeSpec>> {
    let read_err = |e: String| Error::UnreadableFile {
        path: path.display().to_string(),
        message: e,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| read_err(e.to_string()))?;
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| read_err(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if !header.iter().any(|h| h == target) {
        return Err(Error::MissingColumn(target.to_string()));
    }
    if !header.iter().any(|h| h == control) {
        return Err(Error::MissingColumn(control.to_string()));
    }

    let mut all_numeric = vec![true; header.len()];
    let mut distinct: Vec<BTreeSet<String>> = vec![BTreeSet::new(); header.len()];
    for record in reader.records() {
        let record = record.map_err(|e| read_err(e.to_string()))?;
        for (col, raw) in record.iter().enumerate() {
            let raw = raw.trim();
            if raw.is_empty() {
                continue;
            }
            if !matches!(raw.parse::<f64>(), Ok(v) if v.is_finite()) {
                all_numeric[col] = false;
            }
            distinct[col].insert(raw.to_string());
        }
    }

    Ok(header
        .iter()
        .enumerate()
        .map(|(col, name)| {
            if name == target {
                AttributeSpec::target(name)
            } else if name == control {
                AttributeSpec::control(name)
            } else if all_numeric[col] && distinct[col].len() >= bins {
                AttributeSpec::numeric(name, bins)
            } else {
                AttributeSpec::categorical(name)
            }
        })
        .collect())
}
