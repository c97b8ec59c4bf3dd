//! Dataset loading and storage.
//!
//! Features live in a dense row-major `Vec<f64>`. A per-feature sorted row
//! order is built lazily (once) and shared by every tree fit; split search
//! walks those orderings instead of re-sorting rows at every node.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::ops::Range;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};

/// Highest relevance grade accepted for ranking labels. `2^rel - 1` gains
/// stay exactly representable this way.
pub const MAX_RELEVANCE_GRADE: u32 = 31;

/// Contiguous query blocks over the rows of a [`Dataset`].
///
/// Group `i` spans rows `offsets[i]..offsets[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryGroups {
    offsets: Vec<usize>,
}

impl QueryGroups {
    /// Build from boundary offsets; `offsets` must start at 0, end at
    /// `n_rows`, and be strictly increasing (so every group is non-empty).
    pub fn from_offsets(offsets: Vec<usize>, n_rows: usize) -> Result<Self> {
        if offsets.len() < 2 || offsets[0] != 0 || *offsets.last().unwrap() != n_rows {
            return Err(Error::Domain(format!(
                "query group offsets must start at 0 and end at {n_rows}"
            )));
        }
        if offsets.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "query group offsets must be strictly increasing".into(),
            ));
        }
        Ok(QueryGroups { offsets })
    }

    pub fn n_groups(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn group(&self, i: usize) -> Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        self.offsets.windows(2).map(|w| w[0]..w[1])
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }
}

/// Dense training/evaluation data: a feature matrix, labels, and optional
/// query grouping for ranking tasks.
#[derive(Debug)]
pub struct Dataset {
    n_rows: usize,
    n_features: usize,
    /// Row-major: value of feature `f` in row `r` is `features[r * n_features + f]`.
    features: Vec<f64>,
    labels: Vec<f64>,
    query_groups: Option<QueryGroups>,
    feature_names: Option<Vec<String>>,
    sorted_cache: OnceLock<Vec<Vec<u32>>>,
}

impl Dataset {
    /// Validate and assemble a dataset from raw parts.
    pub fn from_parts(
        features: Vec<f64>,
        n_features: usize,
        labels: Vec<f64>,
        query_groups: Option<QueryGroups>,
        feature_names: Option<Vec<String>>,
    ) -> Result<Self> {
        if n_features == 0 {
            return Err(Error::Domain("dataset needs at least one feature".into()));
        }
        if labels.is_empty() {
            return Err(Error::Domain("no data rows".into()));
        }
        if features.len() != labels.len() * n_features {
            return Err(Error::Mismatch(format!(
                "feature matrix has {} values but {} rows x {} features were declared",
                features.len(),
                labels.len(),
                n_features
            )));
        }
        let n_rows = labels.len();
        if let Some((i, _)) = features.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "non-finite feature value at row {}, feature {}",
                i / n_features,
                i % n_features
            )));
        }
        if let Some((i, _)) = labels.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite label at row {i}")));
        }
        if let Some(groups) = &query_groups {
            if *groups.offsets.last().unwrap() != n_rows {
                return Err(Error::Mismatch(format!(
                    "query groups cover {} rows but the dataset has {}",
                    groups.offsets.last().unwrap(),
                    n_rows
                )));
            }
            // Ranking labels are relevance grades.
            for (i, &label) in labels.iter().enumerate() {
                if label < 0.0 || label.fract() != 0.0 || label > MAX_RELEVANCE_GRADE as f64 {
                    return Err(Error::Domain(format!(
                        "row {i}: ranking label {label} is not an integer grade in [0, {MAX_RELEVANCE_GRADE}]"
                    )));
                }
            }
        }
        if let Some(names) = &feature_names {
            if names.len() != n_features {
                return Err(Error::Mismatch(format!(
                    "{} feature names for {} features",
                    names.len(),
                    n_features
                )));
            }
        }
        Ok(Dataset {
            n_rows,
            n_features,
            features,
            labels,
            query_groups,
            feature_names,
            sorted_cache: OnceLock::new(),
        })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn query_groups(&self) -> Option<&QueryGroups> {
        self.query_groups.as_ref()
    }

    pub fn feature_names(&self) -> Option<&[String]> {
        self.feature_names.as_deref()
    }

    #[inline]
    pub fn value(&self, row: usize, feature: usize) -> f64 {
        self.features[row * self.n_features + feature]
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[f64] {
        &self.features[row * self.n_features..(row + 1) * self.n_features]
    }

    /// Row indices ordered by ascending value of `feature`, ties by row
    /// index. Built once for all features on first use.
    pub fn sorted_rows_by_feature(&self, feature: usize) -> &[u32] {
        let cache = self.sorted_cache.get_or_init(|| {
            (0..self.n_features)
                .map(|f| {
                    let mut rows: Vec<u32> = (0..self.n_rows as u32).collect();
                    rows.sort_unstable_by(|&a, &b| {
                        let va = self.value(a as usize, f);
                        let vb = self.value(b as usize, f);
                        va.partial_cmp(&vb).unwrap().then(a.cmp(&b))
                    });
                    rows
                })
                .collect()
        });
        &cache[feature]
    }

    /// Copy the given rows into a new dataset, in the given order.
    ///
    /// When query groups are present, each group's selected rows must stay
    /// contiguous in `rows`; groups with no selected row are dropped.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Dataset> {
        if rows.is_empty() {
            return Err(Error::Domain("cannot select an empty row set".into()));
        }
        let mut features = Vec::with_capacity(rows.len() * self.n_features);
        let mut labels = Vec::with_capacity(rows.len());
        for &r in rows {
            if r >= self.n_rows {
                return Err(Error::Domain(format!(
                    "row index {r} out of range for {} rows",
                    self.n_rows
                )));
            }
            features.extend_from_slice(self.row(r));
            labels.push(self.labels[r]);
        }
        let query_groups = match &self.query_groups {
            None => None,
            Some(groups) => {
                let group_of: Vec<usize> = {
                    let mut map = vec![0usize; self.n_rows];
                    for (g, range) in groups.iter().enumerate() {
                        for r in range {
                            map[r] = g;
                        }
                    }
                    map
                };
                let mut offsets = vec![0usize];
                let mut seen: Vec<bool> = vec![false; groups.n_groups()];
                let mut current = group_of[rows[0]];
                seen[current] = true;
                for (pos, &r) in rows.iter().enumerate().skip(1) {
                    let g = group_of[r];
                    if g != current {
                        if seen[g] {
                            return Err(Error::Domain(format!(
                                "selected rows split query group {g} into non-contiguous runs"
                            )));
                        }
                        seen[g] = true;
                        offsets.push(pos);
                        current = g;
                    }
                }
                offsets.push(rows.len());
                Some(QueryGroups::from_offsets(offsets, rows.len())?)
            }
        };
        Dataset::from_parts(
            features,
            self.n_features,
            labels,
            query_groups,
            self.feature_names.clone(),
        )
    }
}

/// Designates the label column of a CSV file by header name or 0-based index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Name(String),
    Index(usize),
}

impl FromStr for ColumnSelector {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(s.to_string()),
        })
    }
}

impl fmt::Display for ColumnSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnSelector::Name(n) => write!(f, "{n}"),
            ColumnSelector::Index(i) => write!(f, "{i}"),
        }
    }
}

fn parse_cell(path: &Path, line: usize, column: usize, cell: &str) -> Result<f64> {
    let value: f64 = cell.trim().parse().map_err(|_| {
        Error::parse(
            path,
            line,
            format!("column {column}: cannot parse {cell:?} as a number"),
        )
    })?;
    if !value.is_finite() {
        return Err(Error::parse(
            path,
            line,
            format!("column {column}: non-finite value {cell:?}"),
        ));
    }
    Ok(value)
}

/// Load a comma-separated file. The label column is removed from the
/// features; everything else must be numeric.
pub fn load_csv(
    path: impl AsRef<Path>,
    label_column: &ColumnSelector,
    has_header: bool,
) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);

    let mut lines = reader.lines().enumerate();
    let mut header: Option<Vec<String>> = None;
    if has_header {
        match lines.next() {
            Some((_, line)) => {
                let line = line.map_err(|e| Error::io(path, e))?;
                header = Some(line.split(',').map(|s| s.trim().to_string()).collect());
            }
            None => return Err(Error::parse(path, 1, "no data rows")),
        }
    }

    let label_idx = |n_cols: usize| -> Result<usize> {
        match label_column {
            ColumnSelector::Index(i) => {
                if *i >= n_cols {
                    Err(Error::parse(
                        path,
                        1,
                        format!("label column index {i} out of range for {n_cols} columns"),
                    ))
                } else {
                    Ok(*i)
                }
            }
            ColumnSelector::Name(name) => match &header {
                Some(cols) => cols.iter().position(|c| c == name).ok_or_else(|| {
                    Error::parse(path, 1, format!("label column {name:?} not found in header"))
                }),
                None => Err(Error::Config(format!(
                    "label column {name:?} given by name but the file has no header"
                ))),
            },
        }
    };

    let mut features = Vec::new();
    let mut labels = Vec::new();
    let mut n_cols: Option<usize> = None;
    let mut label_col: usize = 0;

    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        match n_cols {
            None => {
                let cols = cells.len();
                if cols < 2 {
                    return Err(Error::parse(
                        path,
                        line_no,
                        "need at least one feature column and one label column",
                    ));
                }
                label_col = label_idx(cols)?;
                n_cols = Some(cols);
            }
            Some(cols) => {
                if cells.len() != cols {
                    return Err(Error::parse(
                        path,
                        line_no,
                        format!("ragged row: {} fields, expected {cols}", cells.len()),
                    ));
                }
            }
        }
        for (col, cell) in cells.iter().enumerate() {
            let value = parse_cell(path, line_no, col, cell)?;
            if col == label_col {
                labels.push(value);
            } else {
                features.push(value);
            }
        }
    }

    let n_cols = n_cols.ok_or_else(|| Error::parse(path, if has_header { 2 } else { 1 }, "no data rows"))?;
    let feature_names = header.map(|cols| {
        cols.into_iter()
            .enumerate()
            .filter(|(i, _)| *i != label_col)
            .map(|(_, c)| c)
            .collect()
    });
    Dataset::from_parts(features, n_cols - 1, labels, None, feature_names)
}

/// Load an SVMLight/LETOR file: `<label> [qid:<q>] <idx>:<val> ...` with
/// 1-based feature indices and `#` comments.
pub fn load_svmlight(path: impl AsRef<Path>, expect_qid: bool) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);

    struct SparseRow {
        label: f64,
        qid: Option<u64>,
        entries: Vec<(usize, f64)>, // 0-based feature index
    }

    let mut rows: Vec<SparseRow> = Vec::new();
    let mut max_feature = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.split('#').next().unwrap_or("");
        let mut tokens = line.split_whitespace();
        let Some(label_tok) = tokens.next() else {
            continue; // blank or comment-only line
        };
        let label: f64 = label_tok.parse().map_err(|_| {
            Error::parse(path, line_no, format!("cannot parse label {label_tok:?}"))
        })?;
        if !label.is_finite() {
            return Err(Error::parse(path, line_no, format!("non-finite label {label_tok:?}")));
        }

        let mut qid: Option<u64> = None;
        let mut entries: Vec<(usize, f64)> = Vec::new();
        let mut last_index: usize = 0;
        for tok in tokens {
            if let Some(q) = tok.strip_prefix("qid:") {
                if !entries.is_empty() || qid.is_some() {
                    return Err(Error::parse(
                        path,
                        line_no,
                        format!("misplaced token {tok:?}: qid must come right after the label"),
                    ));
                }
                qid = Some(q.parse().map_err(|_| {
                    Error::parse(path, line_no, format!("cannot parse query id in {tok:?}"))
                })?);
                continue;
            }
            let (i_str, v_str) = tok.split_once(':').ok_or_else(|| {
                Error::parse(path, line_no, format!("malformed token {tok:?}"))
            })?;
            let index: usize = i_str.parse().map_err(|_| {
                Error::parse(path, line_no, format!("malformed token {tok:?}"))
            })?;
            if index == 0 {
                return Err(Error::parse(
                    path,
                    line_no,
                    format!("feature indices are 1-based, got {tok:?}"),
                ));
            }
            if index <= last_index {
                return Err(Error::parse(
                    path,
                    line_no,
                    format!("feature index {index} not strictly increasing"),
                ));
            }
            let value: f64 = v_str.parse().map_err(|_| {
                Error::parse(path, line_no, format!("malformed token {tok:?}"))
            })?;
            if !value.is_finite() {
                return Err(Error::parse(
                    path,
                    line_no,
                    format!("non-finite value in token {tok:?}"),
                ));
            }
            last_index = index;
            entries.push((index - 1, value));
        }
        if expect_qid && qid.is_none() {
            return Err(Error::parse(path, line_no, "expected qid but none present"));
        }
        max_feature = max_feature.max(last_index);
        rows.push(SparseRow { label, qid, entries });
    }

    if rows.is_empty() {
        return Err(Error::parse(path, 1, "no data rows"));
    }
    if max_feature == 0 {
        return Err(Error::parse(path, 1, "no feature values in the whole file"));
    }

    let n_features = max_feature;
    let mut features = vec![0.0; rows.len() * n_features];
    let mut labels = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        labels.push(row.label);
        for &(f, v) in &row.entries {
            features[r * n_features + f] = v;
        }
    }

    let query_groups = if expect_qid {
        let mut offsets = vec![0usize];
        let mut seen: Vec<u64> = Vec::new();
        let mut current = rows[0].qid.unwrap();
        seen.push(current);
        for (r, row) in rows.iter().enumerate().skip(1) {
            let q = row.qid.unwrap();
            if q != current {
                if seen.contains(&q) {
                    return Err(Error::parse(
                        path,
                        r + 1,
                        format!("non-contiguous query id {q}"),
                    ));
                }
                seen.push(q);
                offsets.push(r);
                current = q;
            }
        }
        offsets.push(rows.len());
        Some(QueryGroups::from_offsets(offsets, rows.len())?)
    } else {
        None
    };

    Dataset::from_parts(features, n_features, labels, query_groups, None)
}

/// Write a dataset in SVMLight form (dense: every feature written out, so
/// a reload reconstructs the exact same matrix).
pub fn write_svmlight<W: Write>(dataset: &Dataset, out: &mut W) -> std::io::Result<()> {
    let qid_of_row: Option<Vec<u64>> = dataset.query_groups().map(|groups| {
        let mut map = vec![0u64; dataset.n_rows()];
        for (g, range) in groups.iter().enumerate() {
            for r in range {
                map[r] = g as u64 + 1;
            }
        }
        map
    });
    let mut line = String::new();
    for r in 0..dataset.n_rows() {
        line.clear();
        line.push_str(&format!("{}", dataset.labels()[r]));
        if let Some(qids) = &qid_of_row {
            line.push_str(&format!(" qid:{}", qids[r]));
        }
        for f in 0..dataset.n_features() {
            line.push_str(&format!(" {}:{}", f + 1, dataset.value(r, f)));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

/// Sample `round(fraction * dataset_size)` distinct row indices (at least
/// one) without replacement. Returned sorted ascending.
pub fn subsample_rows(
    dataset_size: usize,
    fraction: f64,
    rng: &mut impl Rng,
) -> Result<Vec<usize>> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::Config(format!(
            "instance fraction must be in (0, 1], got {fraction}"
        )));
    }
    if dataset_size == 0 {
        return Err(Error::Domain("cannot subsample an empty dataset".into()));
    }
    let count = ((fraction * dataset_size as f64).round() as usize)
        .max(1)
        .min(dataset_size);
    if count == dataset_size {
        return Ok((0..dataset_size).collect());
    }
    // Partial Fisher-Yates over an index pool.
    let mut pool: Vec<usize> = (0..dataset_size).collect();
    for i in 0..count {
        let j = i + rng.gen_range(0..dataset_size - i);
        pool.swap(i, j);
    }
    pool.truncate(count);
    pool.sort_unstable();
    Ok(pool)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::io::Write as _;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn csv_basic() {
        let f = write_temp("f1,f2,y\n1,2,5\n3,4,6\n");
        let ds = load_csv(f.path(), &ColumnSelector::Name("y".into()), true).unwrap();
        assert_eq!(ds.n_rows(), 2);
        assert_eq!(ds.n_features(), 2);
        assert_eq!(ds.labels(), &[5.0, 6.0]);
        assert_eq!(ds.row(0), &[1.0, 2.0]);
        assert_eq!(ds.row(1), &[3.0, 4.0]);
        assert_eq!(ds.feature_names(), Some(&["f1".to_string(), "f2".to_string()][..]));
    }

    #[test]
    fn csv_label_by_index_no_header() {
        let f = write_temp("1,2,5\n3,4,6\n");
        let ds = load_csv(f.path(), &ColumnSelector::Index(2), false).unwrap();
        assert_eq!(ds.labels(), &[5.0, 6.0]);
        assert_eq!(ds.n_features(), 2);
    }

    #[test]
    fn csv_nan_cell_names_location() {
        let f = write_temp("f1,y\n1,2\nnan,3\n");
        let err = load_csv(f.path(), &ColumnSelector::Name("y".into()), true).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains(":2"), "line in {msg}");
        assert!(msg.contains("column 0"), "column in {msg}");
    }

    #[test]
    fn csv_empty_file() {
        let f = write_temp("");
        let err = load_csv(f.path(), &ColumnSelector::Index(0), false).unwrap_err();
        assert!(err.to_string().contains("no data rows"));
    }

    #[test]
    fn csv_header_only_is_empty() {
        let f = write_temp("f1,y\n");
        let err = load_csv(f.path(), &ColumnSelector::Name("y".into()), true).unwrap_err();
        assert!(err.to_string().contains("no data rows"));
    }

    #[test]
    fn csv_ragged_row() {
        let f = write_temp("1,2,3\n1,2\n");
        let err = load_csv(f.path(), &ColumnSelector::Index(2), false).unwrap_err();
        assert!(err.to_string().contains("ragged"));
    }

    #[test]
    fn csv_missing_label_column() {
        let f = write_temp("f1,f2\n1,2\n");
        let err = load_csv(f.path(), &ColumnSelector::Name("y".into()), true).unwrap_err();
        assert!(err.to_string().contains("not found"));
    }

    #[test]
    fn svmlight_basic_with_qid() {
        let f = write_temp("2 qid:1 1:0.5 3:1.0\n");
        let ds = load_svmlight(f.path(), true).unwrap();
        assert_eq!(ds.n_features(), 3);
        assert_eq!(ds.row(0), &[0.5, 0.0, 1.0]);
        assert_eq!(ds.labels(), &[2.0]);
        assert_eq!(ds.query_groups().unwrap().n_groups(), 1);
    }

    #[test]
    fn svmlight_comments_and_blanks() {
        let f = write_temp("# a comment\n\n1 1:2.0 # trailing\n0 2:1.0\n");
        let ds = load_svmlight(f.path(), false).unwrap();
        assert_eq!(ds.n_rows(), 2);
        assert_eq!(ds.n_features(), 2);
        assert_eq!(ds.row(0), &[2.0, 0.0]);
        assert_eq!(ds.row(1), &[0.0, 1.0]);
    }

    #[test]
    fn svmlight_non_contiguous_qid() {
        let f = write_temp("1 qid:1 1:1\n1 qid:2 1:1\n1 qid:1 1:2\n");
        let err = load_svmlight(f.path(), true).unwrap_err();
        assert!(err.to_string().contains("non-contiguous query id 1"), "{err}");
    }

    #[test]
    fn svmlight_malformed_token() {
        let f = write_temp("1 2:abc\n");
        let err = load_svmlight(f.path(), false).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains(":1:"), "line in {msg}");
        assert!(msg.contains("2:abc"), "token in {msg}");
    }

    #[test]
    fn svmlight_decreasing_indices() {
        let f = write_temp("1 3:1.0 2:2.0\n");
        let err = load_svmlight(f.path(), false).unwrap_err();
        assert!(err.to_string().contains("strictly increasing"));
    }

    #[test]
    fn svmlight_missing_qid_when_expected() {
        let f = write_temp("1 1:1.0\n");
        let err = load_svmlight(f.path(), true).unwrap_err();
        assert!(err.to_string().contains("expected qid"));
    }

    #[test]
    fn svmlight_rejects_bad_ranking_grades() {
        let f = write_temp("1.5 qid:1 1:1.0\n");
        let err = load_svmlight(f.path(), true).unwrap_err();
        assert!(err.to_string().contains("integer grade"), "{err}");
    }

    #[test]
    fn svmlight_round_trip() {
        let f = write_temp("2 qid:1 1:0.5 3:-1.25\n0 qid:1 2:0.1\n1 qid:7 1:3.5 2:0.125\n");
        let ds = load_svmlight(f.path(), true).unwrap();
        let mut buf = Vec::new();
        write_svmlight(&ds, &mut buf).unwrap();
        let g = write_temp(std::str::from_utf8(&buf).unwrap());
        let ds2 = load_svmlight(g.path(), true).unwrap();
        assert_eq!(ds.n_rows(), ds2.n_rows());
        assert_eq!(ds.n_features(), ds2.n_features());
        assert_eq!(ds.labels(), ds2.labels());
        for r in 0..ds.n_rows() {
            assert_eq!(ds.row(r), ds2.row(r));
        }
        assert_eq!(
            ds.query_groups().unwrap().offsets(),
            ds2.query_groups().unwrap().offsets()
        );
    }

    #[test]
    fn subsample_full_fraction_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let rows = subsample_rows(100, 1.0, &mut rng).unwrap();
        assert_eq!(rows, (0..100).collect::<Vec<_>>());
    }

    #[test]
    fn subsample_cardinality_and_determinism() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = subsample_rows(100, 0.25, &mut rng).unwrap();
        assert_eq!(a.len(), 25);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert!(a.iter().all(|&r| r < 100));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = subsample_rows(100, 0.25, &mut rng).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn subsample_never_empty() {
        // Exhaustive small-n sweep: tiny fractions still pick one row.
        for n in 1..=8usize {
            for seed in 0..16u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let rows = subsample_rows(n, 0.01, &mut rng).unwrap();
                assert_eq!(rows.len(), 1, "n={n} seed={seed}");
                assert!(rows[0] < n);
            }
        }
    }

    #[test]
    fn subsample_rejects_bad_fraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(subsample_rows(10, 0.0, &mut rng).is_err());
        assert!(subsample_rows(10, 1.5, &mut rng).is_err());
    }

    #[test]
    fn sorted_cache_orders_by_value_then_row() {
        let ds = Dataset::from_parts(
            vec![2.0, 1.0, 2.0, 0.5],
            1,
            vec![0.0, 0.0, 0.0, 0.0],
            None,
            None,
        )
        .unwrap();
        assert_eq!(ds.sorted_rows_by_feature(0), &[3, 1, 0, 2]);
    }

    #[test]
    fn select_rows_keeps_groups_contiguous() {
        let groups = QueryGroups::from_offsets(vec![0, 2, 4], 4).unwrap();
        let ds = Dataset::from_parts(
            vec![1.0, 2.0, 3.0, 4.0],
            1,
            vec![0.0, 1.0, 2.0, 3.0],
            Some(groups),
            None,
        )
        .unwrap();
        let sub = ds.select_rows(&[2, 3]).unwrap();
        assert_eq!(sub.n_rows(), 2);
        assert_eq!(sub.query_groups().unwrap().n_groups(), 1);
        let err = ds.select_rows(&[0, 2, 1]).unwrap_err();
        assert!(err.to_string().contains("non-contiguous"));
    }
}
