//! Tabular input and the pool of base propositions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::Read;
use std::path::Path;

use log::warn;

use crate::error::{Error, Result};
use crate::rowset::RowSet;

/// Tokens that denote a missing cell.
const MISSING: &[&str] = &["", "?", "NA", "N/A", "NaN", "nan", "null", "NULL"];

fn is_missing(cell: &str) -> bool {
    MISSING.contains(&cell.trim())
}

fn parse_number(cell: &str) -> Option<f64> {
    cell.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

#[derive(Debug, Clone, PartialEq)]
pub enum AttributeColumn {
    Numeric(Vec<Option<f64>>),
    Categorical(Vec<Option<String>>),
    /// Values index into `levels`, which lists the levels in ascending order.
    Ordinal {
        levels: Vec<String>,
        values: Vec<Option<usize>>,
    },
}

impl AttributeColumn {
    pub fn len(&self) -> usize {
        match self {
            AttributeColumn::Numeric(v) => v.len(),
            AttributeColumn::Categorical(v) => v.len(),
            AttributeColumn::Ordinal { values, .. } => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_missing(&self, row: usize) -> bool {
        match self {
            AttributeColumn::Numeric(v) => v[row].is_none(),
            AttributeColumn::Categorical(v) => v[row].is_none(),
            AttributeColumn::Ordinal { values, .. } => values[row].is_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Attribute {
    pub name: String,
    pub column: AttributeColumn,
}

/// Requested interpretation of a column, overriding inference.
#[derive(Debug, Clone, PartialEq)]
pub enum KindHint {
    Numeric,
    Categorical,
    /// Ordinal with the given levels in ascending order.
    Ordinal(Vec<String>),
}

/// Immutable column-oriented dataset with one numeric target.
#[derive(Debug, Clone, PartialEq)]
pub struct DataTable {
    target_name: String,
    target: Vec<f64>,
    attributes: Vec<Attribute>,
}

impl DataTable {
    pub fn new(
        target_name: impl Into<String>,
        target: Vec<f64>,
        attributes: Vec<Attribute>,
    ) -> Result<Self> {
        if let Some(bad) = target.iter().find(|y| !y.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite target value {bad}"
            )));
        }
        for a in &attributes {
            if a.column.len() != target.len() {
                return Err(Error::InvalidParameter(format!(
                    "attribute `{}` has {} entries, expected {}",
                    a.name,
                    a.column.len(),
                    target.len()
                )));
            }
            if let AttributeColumn::Ordinal { levels, values } = &a.column {
                if values.iter().flatten().any(|&l| l >= levels.len()) {
                    return Err(Error::InvalidParameter(format!(
                        "attribute `{}` references an unknown level",
                        a.name
                    )));
                }
            }
        }
        Ok(DataTable {
            target_name: target_name.into(),
            target,
            attributes,
        })
    }

    pub fn rows(&self) -> usize {
        self.target.len()
    }

    pub fn target(&self) -> &[f64] {
        &self.target
    }

    pub fn target_name(&self) -> &str {
        &self.target_name
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LoadSummary {
    /// Rows dropped because their target was missing or not numeric.
    pub dropped_rows: usize,
}

/// Reads a headed CSV file. See [`load_csv_reader`].
pub fn load_csv(
    path: impl AsRef<Path>,
    target_column: &str,
    hints: &HashMap<String, KindHint>,
) -> Result<(DataTable, LoadSummary)> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    load_csv_reader(file, target_column, hints)
}

/// Reads CSV data with a header row.
///
/// Rows whose target cell is missing or unparseable are dropped and counted.
/// Attribute kinds are inferred (numeric when every present cell parses as a
/// finite number, categorical otherwise) unless a hint is given.
pub fn load_csv_reader<R: Read>(
    reader: R,
    target_column: &str,
    hints: &HashMap<String, KindHint>,
) -> Result<(DataTable, LoadSummary)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    let target_idx = headers
        .iter()
        .position(|h| h == target_column)
        .ok_or_else(|| Error::MissingColumn(target_column.to_owned()))?;
    for name in hints.keys() {
        if !headers.contains(name) {
            return Err(Error::MissingColumn(name.clone()));
        }
    }

    let mut target = Vec::new();
    let mut cells: Vec<Vec<String>> = vec![Vec::new(); headers.len()];
    let mut summary = LoadSummary::default();
    for record in rdr.records() {
        let record = record?;
        match record.get(target_idx).and_then(parse_number) {
            Some(y) => target.push(y),
            None => {
                summary.dropped_rows += 1;
                continue;
            }
        }
        for (c, col) in cells.iter_mut().enumerate() {
            col.push(record.get(c).unwrap_or("").to_owned());
        }
    }
    if summary.dropped_rows > 0 {
        warn!(
            "dropped {} rows with missing or non-numeric target",
            summary.dropped_rows
        );
    }
    if target.is_empty() {
        return Err(Error::NoRows);
    }

    let mut attributes = Vec::new();
    for (c, name) in headers.iter().enumerate() {
        if c == target_idx {
            continue;
        }
        let raw = &cells[c];
        let column = match hints.get(name) {
            Some(KindHint::Numeric) => numeric_column(raw),
            Some(KindHint::Categorical) => categorical_column(raw),
            Some(KindHint::Ordinal(levels)) => ordinal_column(name, raw, levels)?,
            None => {
                let all_numeric = raw
                    .iter()
                    .all(|s| is_missing(s) || parse_number(s).is_some());
                if all_numeric {
                    numeric_column(raw)
                } else {
                    categorical_column(raw)
                }
            }
        };
        attributes.push(Attribute {
            name: name.clone(),
            column,
        });
    }
    let table = DataTable::new(headers[target_idx].clone(), target, attributes)?;
    Ok((table, summary))
}

fn numeric_column(raw: &[String]) -> AttributeColumn {
    AttributeColumn::Numeric(
        raw.iter()
            .map(|s| if is_missing(s) { None } else { parse_number(s) })
            .collect(),
    )
}

fn categorical_column(raw: &[String]) -> AttributeColumn {
    AttributeColumn::Categorical(
        raw.iter()
            .map(|s| if is_missing(s) { None } else { Some(s.clone()) })
            .collect(),
    )
}

fn ordinal_column(name: &str, raw: &[String], levels: &[String]) -> Result<AttributeColumn> {
    let values = raw
        .iter()
        .map(|s| {
            if is_missing(s) {
                return Ok(None);
            }
            levels.iter().position(|l| l == s).map(Some).ok_or_else(|| {
                Error::InvalidParameter(format!("value `{s}` is not a level of `{name}`"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AttributeColumn::Ordinal {
        levels: levels.to_vec(),
        values,
    })
}

/// How numeric attributes are cut into threshold propositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Binning {
    #[default]
    EqualFrequency,
    EqualWidth,
}

/// Predicate of a base proposition. Variant order is the pool order.
#[derive(Debug, Clone, PartialEq)]
pub enum Relation {
    Le(f64),
    Ge(f64),
    Eq(String),
    /// Strictly below the level with the given index.
    Lt(usize),
    /// Strictly above the level with the given index.
    Gt(usize),
    /// Proposition given directly by its extension.
    Abstract,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Proposition {
    /// 1-based position in the pool.
    pub id: usize,
    /// Column index into [`DataTable::attributes`]; `None` for abstract propositions.
    pub attribute: Option<usize>,
    pub relation: Relation,
    pub label: String,
    pub extension: RowSet,
}

impl Proposition {
    /// Evaluates the predicate on one row of `table`. Missing values never satisfy.
    pub fn holds(&self, table: &DataTable, row: usize) -> bool {
        let Some(attr) = self.attribute else {
            return self.extension.contains(row);
        };
        match (&table.attributes[attr].column, &self.relation) {
            (AttributeColumn::Numeric(v), Relation::Le(t)) => v[row].is_some_and(|x| x <= *t),
            (AttributeColumn::Numeric(v), Relation::Ge(t)) => v[row].is_some_and(|x| x >= *t),
            (AttributeColumn::Categorical(v), Relation::Eq(c)) => {
                v[row].as_deref() == Some(c.as_str())
            }
            (AttributeColumn::Ordinal { values, .. }, Relation::Lt(l)) => {
                values[row].is_some_and(|x| x < *l)
            }
            (AttributeColumn::Ordinal { values, .. }, Relation::Gt(l)) => {
                values[row].is_some_and(|x| x > *l)
            }
            _ => false,
        }
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Ordered pool of base propositions; ids run from 1 to `len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct PropositionPool {
    rows: usize,
    props: Vec<Proposition>,
}

impl PropositionPool {
    /// Pool of abstract propositions given by their extensions, in order.
    pub fn from_extensions(rows: usize, extensions: Vec<(String, RowSet)>) -> Result<Self> {
        let mut props = Vec::with_capacity(extensions.len());
        for (i, (label, extension)) in extensions.into_iter().enumerate() {
            if extension.universe() != rows {
                return Err(Error::InvalidParameter(format!(
                    "extension of `{label}` has universe {}, expected {rows}",
                    extension.universe()
                )));
            }
            props.push(Proposition {
                id: i + 1,
                attribute: None,
                relation: Relation::Abstract,
                label,
                extension,
            });
        }
        Ok(PropositionPool { rows, props })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    pub fn get(&self, id: usize) -> Result<&Proposition> {
        if id == 0 {
            return Err(Error::UnknownProposition(id));
        }
        self.props.get(id - 1).ok_or(Error::UnknownProposition(id))
    }

    /// Proposition by id; panics on an invalid id.
    #[inline]
    pub fn prop(&self, id: usize) -> &Proposition {
        &self.props[id - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Proposition> {
        self.props.iter()
    }
}

/// Materializes the base propositions of `table`.
///
/// Numeric attributes get `x <= v` and `x >= v'` pairs for each cut, where
/// `v` is an observed value and `v'` the next larger observed value. With
/// equal-frequency binning the j-th cut is the order statistic at 1-based
/// rank `ceil(j * m / (cuts + 1))` of the m present values; with equal-width
/// binning it is the largest observed value not above
/// `min + j * (max - min) / (cuts + 1)`. Categorical attributes get one
/// equality per distinct value, ordinal attributes `<` and `>` per level.
/// Propositions with empty or full extension are dropped.
pub fn build_propositions(
    table: &DataTable,
    cuts: usize,
    binning: Binning,
) -> Result<PropositionPool> {
    if cuts == 0 {
        return Err(Error::InvalidParameter("cuts must be at least 1".into()));
    }
    let n = table.rows();
    let mut props: Vec<Proposition> = Vec::new();
    let mut push = |attribute: usize, relation: Relation, label: String, table: &DataTable| {
        let mut p = Proposition {
            id: 0,
            attribute: Some(attribute),
            relation,
            label,
            extension: RowSet::empty(n),
        };
        p.extension = RowSet::from_predicate(n, |r| p.holds(table, r));
        if !p.extension.is_empty() && !p.extension.is_full() {
            p.id = props.len() + 1;
            props.push(p);
        }
    };

    for (ai, attr) in table.attributes().iter().enumerate() {
        let name = &attr.name;
        match &attr.column {
            AttributeColumn::Numeric(values) => {
                let mut sorted: Vec<f64> = values.iter().flatten().copied().collect();
                if sorted.is_empty() {
                    continue;
                }
                sorted.sort_unstable_by(f64::total_cmp);
                let thresholds = cut_points(&sorted, cuts, binning);
                let pairs: Vec<(f64, f64)> = thresholds
                    .iter()
                    .filter_map(|&v| {
                        let next = sorted[sorted.partition_point(|&x| x <= v)..].first()?;
                        Some((v, *next))
                    })
                    .collect();
                for &(v, _) in &pairs {
                    push(ai, Relation::Le(v), format!("{name} <= {v}"), table);
                }
                for &(_, w) in &pairs {
                    push(ai, Relation::Ge(w), format!("{name} >= {w}"), table);
                }
            }
            AttributeColumn::Categorical(values) => {
                let distinct: BTreeSet<&String> = values.iter().flatten().collect();
                for c in distinct {
                    push(ai, Relation::Eq(c.clone()), format!("{name} = {c}"), table);
                }
            }
            AttributeColumn::Ordinal { levels, .. } => {
                for (li, level) in levels.iter().enumerate() {
                    push(ai, Relation::Lt(li), format!("{name} < {level}"), table);
                }
                for (li, level) in levels.iter().enumerate() {
                    push(ai, Relation::Gt(li), format!("{name} > {level}"), table);
                }
            }
        }
    }
    Ok(PropositionPool { rows: n, props })
}

/// Distinct observed cut values, ascending.
fn cut_points(sorted: &[f64], cuts: usize, binning: Binning) -> Vec<f64> {
    let m = sorted.len();
    let mut out: Vec<f64> = (1..=cuts)
        .map(|j| match binning {
            Binning::EqualFrequency => {
                let rank = (j * m).div_ceil(cuts + 1).clamp(1, m);
                sorted[rank - 1]
            }
            Binning::EqualWidth => {
                let (lo, hi) = (sorted[0], sorted[m - 1]);
                let boundary = lo + j as f64 * (hi - lo) / (cuts + 1) as f64;
                let pos = sorted.partition_point(|&x| x <= boundary);
                sorted[pos.max(1) - 1]
            }
        })
        .collect();
    out.dedup();
    out
}
