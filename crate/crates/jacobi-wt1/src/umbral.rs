//! Umbral moonshine tables for the A₈³ case: class levels for all Niemeier
//! root systems, the Dih₆ character table, McKay–Thompson coefficients and
//! module decompositions. Files are checked against a sha256 manifest.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::qseries::{explicit_form, theta_decompose, theta_expansion, ExplicitForm, FourierJacobiSeries, QSeriesError};
use crate::sl2::{word_decompose, Gen, IntMat, Sl2Mod, Sl2Word};
use crate::weil::{QuadSpace, WeilError, WeilRep};

pub const DATA_ENV: &str = "JACOBI_WT1_DATA";
pub const MANIFEST: &str = "SHA256SUMS";
pub const FILES: [&str; 4] = ["levels.csv", "character_table.csv", "coefficients.csv", "decompositions.csv"];
pub const CLASSES: [&str; 6] = ["1A", "2A", "2B", "2C", "3A", "6A"];
/// Index of the A₈³ theta space.
pub const A8_INDEX: u64 = 9;

#[derive(Debug, Error)]
pub enum UmbralError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{file}: digest {actual} does not match manifest {expected}")]
    Digest { file: String, expected: String, actual: String },
    #[error("manifest has no entry for {0}")]
    MissingDigest(String),
    #[error("{file} line {line}: {detail}")]
    Schema { file: String, line: u64, detail: String },
    #[error("{file} line {line}: {detail}")]
    Invariant { file: String, line: u64, detail: String },
    #[error("no coefficient row for r = {r}, D = {d}")]
    MissingRow { r: i64, d: i64 },
    #[error("multiplicity of chi{index} at r = {r}, D = {d} is {num}/12")]
    NonIntegral { r: i64, d: i64, index: usize, num: i64 },
    #[error("negative multiplicity for chi{index} at r = {r}, D = {d}")]
    Negative { r: i64, d: i64, index: usize },
    #[error("class size {num}/{den} is not an integer")]
    ClassSize { num: i64, den: i64 },
    #[error("unknown class {0}, expected 3A or 6A")]
    UnknownClass(String),
    #[error("word {0} is not in Γ0(3)")]
    NotInGamma0(String),
    #[error(transparent)]
    QSeries(#[from] QSeriesError),
    #[error(transparent)]
    Weil(#[from] WeilError),
}

type Result<T> = std::result::Result<T, UmbralError>;

/// Data directory: the override variable if set, else the bundled copy.
pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_ENV) {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("data"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UmbralClassRecord {
    pub root_system: String,
    pub coxeter: u64,
    pub class: String,
    pub n_g: u64,
    pub h_g: u64,
    #[serde(rename = "N_g")]
    pub level: u64,
    pub exceptional: bool,
}

impl UmbralClassRecord {
    pub fn symbol(&self) -> String {
        format!("{}|{}", self.n_g, self.h_g)
    }
}

const EXCEPTIONS: [(&str, &str); 8] =
    [("A_2^12", "3B"), ("A_2^12", "6B"), ("A_2^12", "12A"), ("D_4^6", "3C"), ("D_4^6", "6C"), ("E_8^3", "3A"), ("A_8^3", "3A"), ("A_8^3", "6A")];

pub fn is_listed_exception(root_system: &str, class: &str) -> bool {
    EXCEPTIONS.iter().any(|&(x, c)| x == root_system && c == class)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub classes: Vec<String>,
    pub power2: Vec<String>,
    pub power3: Vec<String>,
    pub labels: Vec<String>,
    pub fs: Vec<String>,
    pub chars: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn order(&self) -> i64 {
        self.chars.iter().map(|c| c[0] * c[0]).sum()
    }

    /// |class(g)| = |G| / Σ_i χ_i(g)².
    pub fn class_sizes(&self) -> Result<Vec<i64>> {
        let g = self.order();
        (0..self.classes.len())
            .map(|j| {
                let den: i64 = self.chars.iter().map(|c| c[j] * c[j]).sum();
                if den == 0 || g % den != 0 {
                    Err(UmbralError::ClassSize { num: g, den })
                } else {
                    Ok(g / den)
                }
            })
            .collect()
    }

    /// Row orthogonality with the derived class sizes.
    pub fn rows_orthogonal(&self) -> Result<bool> {
        let sizes = self.class_sizes()?;
        let g = self.order();
        if sizes.iter().sum::<i64>() != g {
            return Ok(false);
        }
        for (i, a) in self.chars.iter().enumerate() {
            for (j, b) in self.chars.iter().enumerate() {
                let s: i64 = (0..sizes.len()).map(|k| sizes[k] * a[k] * b[k]).sum();
                if s != if i == j { g } else { 0 } {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Column orthogonality: Σ_i χ_i(g)χ_i(h) = 0 for g ≠ h.
    pub fn columns_orthogonal(&self) -> bool {
        let n = self.classes.len();
        (0..n).all(|a| (0..n).all(|b| a == b || self.chars.iter().map(|c| c[a] * c[b]).sum::<i64>() == 0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientRow {
    pub r: i64,
    pub d: i64,
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct McKayThompsonTable {
    pub rows: Vec<CoefficientRow>,
}

impl McKayThompsonTable {
    pub fn get(&self, r: i64, d: i64) -> Option<&CoefficientRow> {
        self.rows.iter().find(|x| x.r == r && x.d == d)
    }

    pub fn component(&self, r: i64) -> impl Iterator<Item = &CoefficientRow> {
        self.rows.iter().filter(move |x| x.r == r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionRow {
    pub r: i64,
    pub d: i64,
    pub labels: [String; 3],
    pub mults: [i64; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UmbralDataSet {
    pub levels: Vec<UmbralClassRecord>,
    pub characters: CharacterTable,
    pub coefficients: McKayThompsonTable,
    pub decompositions: Vec<DecompositionRow>,
}

impl UmbralDataSet {
    pub fn classes_of(&self, root_system: &str) -> Vec<&UmbralClassRecord> {
        self.levels.iter().filter(|r| r.root_system == root_system).collect()
    }
}

/// Grading: a coefficient of component r sits at D ≡ −r² mod 4m.
pub fn grading_ok(r: i64, d: i64) -> bool {
    let q = 4 * A8_INDEX as i64;
    (d + r * r).rem_euclid(q) == 0
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in digest.iter() {
        write!(s, "{b:02x}").expect("write to string");
    }
    s
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| UmbralError::Io { path: path.display().to_string(), source })
}

/// Parses `hex  filename` lines.
pub fn read_manifest(dir: &Path) -> Result<BTreeMap<String, String>> {
    let text = read(&dir.join(MANIFEST))?;
    let text = String::from_utf8_lossy(&text);
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next()) {
            (Some(h), Some(f)) => {
                out.insert(f.trim_start_matches('*').to_string(), h.to_lowercase());
            }
            _ => {
                return Err(UmbralError::Schema { file: MANIFEST.into(), line: i as u64 + 1, detail: "expected `digest  filename`".into() })
            }
        }
    }
    Ok(out)
}

/// Writes a fresh manifest for the files in `dir`.
pub fn write_manifest(dir: &Path) -> Result<()> {
    let mut text = String::new();
    for f in FILES {
        let bytes = read(&dir.join(f))?;
        writeln!(text, "{}  {}", sha256_hex(&bytes), f).expect("write to string");
    }
    let path = dir.join(MANIFEST);
    fs::write(&path, text).map_err(|source| UmbralError::Io { path: path.display().to_string(), source })
}

fn verified(dir: &Path, file: &str, manifest: &BTreeMap<String, String>) -> Result<Vec<u8>> {
    let bytes = read(&dir.join(file))?;
    let expected = manifest.get(file).ok_or_else(|| UmbralError::MissingDigest(file.into()))?;
    let actual = sha256_hex(&bytes);
    if &actual != expected {
        return Err(UmbralError::Digest { file: file.into(), expected: expected.clone(), actual });
    }
    Ok(bytes)
}

fn line_of(rec: &csv::StringRecord) -> u64 {
    rec.position().map(|p| p.line()).unwrap_or(0)
}

fn csv_records(file: &str, bytes: &[u8], header: &[&str]) -> Result<Vec<csv::StringRecord>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(bytes);
    let schema = |line, detail: String| UmbralError::Schema { file: file.into(), line, detail };
    let h = rdr.headers().map_err(|e| schema(1, e.to_string()))?.clone();
    if h.iter().collect::<Vec<_>>() != header {
        return Err(schema(1, format!("header {:?}, expected {:?}", h.iter().collect::<Vec<_>>(), header)));
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| schema(e.position().map(|p| p.line()).unwrap_or(0), e.to_string()))?;
        out.push(rec);
    }
    Ok(out)
}

fn field<T: std::str::FromStr>(file: &str, rec: &csv::StringRecord, i: usize) -> Result<T> {
    let raw = rec.get(i).unwrap_or("");
    raw.trim().parse().map_err(|_| UmbralError::Schema { file: file.into(), line: line_of(rec), detail: format!("column {} = {raw:?} does not parse", i + 1) })
}

fn parse_levels(bytes: &[u8]) -> Result<Vec<UmbralClassRecord>> {
    let file = "levels.csv";
    let recs = csv_records(file, bytes, &["root_system", "coxeter", "class", "n_g", "h_g", "N_g", "exceptional"])?;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for rec in recs {
        let line = line_of(&rec);
        let inv = |detail: String| UmbralError::Invariant { file: file.into(), line, detail };
        let r = UmbralClassRecord {
            root_system: field(file, &rec, 0)?,
            coxeter: field(file, &rec, 1)?,
            class: field(file, &rec, 2)?,
            n_g: field(file, &rec, 3)?,
            h_g: field(file, &rec, 4)?,
            level: field(file, &rec, 5)?,
            exceptional: field(file, &rec, 6)?,
        };
        if r.level == 0 || r.n_g == 0 || r.h_g == 0 {
            return Err(inv("n_g, h_g and N_g must be positive".into()));
        }
        // N_g = n_g·h_g except for D_12^2 2A, printed as 2|2 with N_g = 2
        if !r.level.is_multiple_of(r.n_g) || !r.level.is_multiple_of(r.h_g) {
            return Err(inv(format!("N_g = {} is not divisible by n_g = {} and h_g = {}", r.level, r.n_g, r.h_g)));
        }
        if r.exceptional != is_listed_exception(&r.root_system, &r.class) {
            return Err(inv(format!("exceptional flag {} for {} {}", r.exceptional, r.root_system, r.class)));
        }
        if !seen.insert((r.root_system.clone(), r.class.clone())) {
            return Err(inv(format!("duplicate class {} {}", r.root_system, r.class)));
        }
        out.push(r);
    }
    Ok(out)
}

fn parse_characters(bytes: &[u8]) -> Result<CharacterTable> {
    let file = "character_table.csv";
    let mut header = vec!["label", "FS"];
    header.extend(CLASSES);
    let recs = csv_records(file, bytes, &header)?;
    let mut t = CharacterTable {
        classes: CLASSES.iter().map(|s| s.to_string()).collect(),
        power2: Vec::new(),
        power3: Vec::new(),
        labels: Vec::new(),
        fs: Vec::new(),
        chars: Vec::new(),
    };
    for rec in &recs {
        let label = rec.get(0).unwrap_or("").to_string();
        let cells: Vec<String> = (2..8).map(|i| rec.get(i).unwrap_or("").to_string()).collect();
        match label.as_str() {
            "power2" => t.power2 = cells,
            "power3" => t.power3 = cells,
            _ => {
                let row = (2..8).map(|i| field::<i64>(file, rec, i)).collect::<Result<Vec<_>>>()?;
                t.labels.push(label);
                t.fs.push(rec.get(1).unwrap_or("").to_string());
                t.chars.push(row);
            }
        }
    }
    let inv = |detail: &str| UmbralError::Invariant { file: file.into(), line: 0, detail: detail.into() };
    if t.chars.len() != CLASSES.len() || t.power2.is_empty() || t.power3.is_empty() {
        return Err(inv("expected power2, power3 and six character rows"));
    }
    if t.power2.iter().chain(&t.power3).any(|c| !CLASSES.contains(&c.as_str())) {
        return Err(inv("power map names an unknown class"));
    }
    if !t.rows_orthogonal()? || !t.columns_orthogonal() {
        return Err(inv("orthogonality relations fail"));
    }
    Ok(t)
}

fn parse_coefficients(bytes: &[u8]) -> Result<McKayThompsonTable> {
    let file = "coefficients.csv";
    let mut header = vec!["r", "D"];
    header.extend(CLASSES);
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    for rec in csv_records(file, bytes, &header)? {
        let line = line_of(&rec);
        let r: i64 = field(file, &rec, 0)?;
        let d: i64 = field(file, &rec, 1)?;
        let values = (2..8).map(|i| field::<i64>(file, &rec, i)).collect::<Result<Vec<_>>>()?;
        let inv = |detail: String| UmbralError::Invariant { file: file.into(), line, detail };
        if !(1..=8).contains(&r) {
            return Err(inv(format!("component r = {r} outside 1..8")));
        }
        if !grading_ok(r, d) {
            return Err(inv(format!("D = {d} is not ≡ −{r}² mod 36")));
        }
        if !seen.insert((r, d)) {
            return Err(inv(format!("duplicate row r = {r}, D = {d}")));
        }
        rows.push(CoefficientRow { r, d, values });
    }
    Ok(McKayThompsonTable { rows })
}

fn parse_decompositions(bytes: &[u8]) -> Result<Vec<DecompositionRow>> {
    let file = "decompositions.csv";
    let recs = csv_records(file, bytes, &["r", "D", "label_a", "mult_a", "label_b", "mult_b", "label_c", "mult_c"])?;
    let mut out = Vec::new();
    for rec in recs {
        let r: i64 = field(file, &rec, 0)?;
        let d: i64 = field(file, &rec, 1)?;
        if !grading_ok(r, d) {
            return Err(UmbralError::Invariant { file: file.into(), line: line_of(&rec), detail: format!("D = {d} is not ≡ −{r}² mod 36") });
        }
        out.push(DecompositionRow {
            r,
            d,
            labels: [field(file, &rec, 2)?, field(file, &rec, 4)?, field(file, &rec, 6)?],
            mults: [field(file, &rec, 3)?, field(file, &rec, 5)?, field(file, &rec, 7)?],
        });
    }
    Ok(out)
}

/// Loads and validates every table, refusing files whose digest differs
/// from the manifest.
pub fn load_dataset(dir: &Path) -> Result<UmbralDataSet> {
    let manifest = read_manifest(dir)?;
    let levels = parse_levels(&verified(dir, FILES[0], &manifest)?)?;
    let characters = parse_characters(&verified(dir, FILES[1], &manifest)?)?;
    let coefficients = parse_coefficients(&verified(dir, FILES[2], &manifest)?)?;
    let decompositions = parse_decompositions(&verified(dir, FILES[3], &manifest)?)?;
    Ok(UmbralDataSet { levels, characters, coefficients, decompositions })
}

pub fn load_default() -> Result<UmbralDataSet> {
    load_dataset(&data_dir())
}

/// m_i = |G|⁻¹ Σ_c |c| χ_i(c) c_g(r, D) for all six irreducibles.
pub fn decompose_multiplicities(ds: &UmbralDataSet, r: i64, d: i64) -> Result<Vec<i64>> {
    let row = ds.coefficients.get(r, d).ok_or(UmbralError::MissingRow { r, d })?;
    decompose_values(&ds.characters, r, d, &row.values)
}

pub fn decompose_values(t: &CharacterTable, r: i64, d: i64, values: &[i64]) -> Result<Vec<i64>> {
    let sizes = t.class_sizes()?;
    let g = t.order();
    let mut out = Vec::new();
    for (i, chi) in t.chars.iter().enumerate() {
        let num: i64 = (0..sizes.len()).map(|k| sizes[k] * chi[k] * values[k]).sum();
        if num % g != 0 {
            return Err(UmbralError::NonIntegral { r, d, index: i + 1, num });
        }
        let m = num / g;
        if d > 0 && m < 0 {
            return Err(UmbralError::Negative { r, d, index: i + 1 });
        }
        out.push(m);
    }
    Ok(out)
}

/// Characters with χ(2A) = +χ(1A) for odd r, −χ(1A) for even r.
pub fn support_for(t: &CharacterTable, r: i64) -> Vec<usize> {
    (0..t.chars.len())
        .filter(|&i| {
            let c = &t.chars[i];
            if r % 2 != 0 {
                c[1] == c[0]
            } else {
                c[1] == -c[0]
            }
        })
        .collect()
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct DecompositionReport {
    pub rows_checked: usize,
    pub mismatches: Vec<String>,
    pub support_violations: Vec<String>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.rows_checked > 0 && self.mismatches.is_empty() && self.support_violations.is_empty()
    }
}

/// Recomputes every decomposition row from the coefficients and compares
/// positionally against the three printed columns on the predicted support.
pub fn verify_decompositions(ds: &UmbralDataSet) -> Result<DecompositionReport> {
    let mut rep = DecompositionReport::default();
    for row in &ds.decompositions {
        let m = decompose_multiplicities(ds, row.r, row.d)?;
        let support = support_for(&ds.characters, row.r);
        for (i, &v) in m.iter().enumerate() {
            if v != 0 && !support.contains(&i) {
                rep.support_violations.push(format!("r={} D={}: chi{} = {v}", row.r, row.d, i + 1));
            }
        }
        let got: Vec<i64> = support.iter().map(|&i| m[i]).collect();
        if got != row.mults {
            rep.mismatches.push(format!("r={} D={}: computed {:?}, table {:?}", row.r, row.d, got, row.mults));
        }
        rep.rows_checked += 1;
    }
    Ok(rep)
}

/// Every coefficient row decomposes integrally.
pub fn all_rows_integral(ds: &UmbralDataSet) -> Result<usize> {
    for row in &ds.coefficients.rows {
        decompose_multiplicities(ds, row.r, row.d)?;
    }
    Ok(ds.coefficients.rows.len())
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ParityReport {
    pub rows: usize,
    pub violations: Vec<String>,
}

impl ParityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn coefficient_parity_audit(ds: &UmbralDataSet) -> ParityReport {
    let mut rep = ParityReport { rows: ds.coefficients.rows.len(), violations: Vec::new() };
    for row in &ds.coefficients.rows {
        let (r, d) = (row.r, row.d);
        if d > 0 && row.values[0] < 0 {
            rep.violations.push(format!("r={r} D={d}: negative 1A entry {}", row.values[0]));
        }
        if d < 0 && !(r == 1 && d == -1) {
            rep.violations.push(format!("r={r} D={d}: polar term outside component 1"));
        }
        if !grading_ok(r, d) {
            rep.violations.push(format!("r={r} D={d}: grading"));
        }
    }
    match ds.coefficients.get(1, -1) {
        Some(row) if row.values[0] == -2 => {}
        _ => rep.violations.push("component 1 lacks the −2 polar term at D = −1".into()),
    }
    rep
}

/// Component r of the weight ½ theta correction t⁽⁹⁾_g, g ∈ {3A, 6A}.
pub fn theta_correction(class: &str, r: i64, order: Rational64) -> Result<FourierJacobiSeries> {
    let flip = match class {
        "3A" => 1,
        "6A" => -1,
        other => return Err(UmbralError::UnknownClass(other.into())),
    };
    let th = |k: i64| -> Result<FourierJacobiSeries> { Ok(theta_expansion(3, k, order)?.specialize_y1().untagged()) };
    Ok(match r.rem_euclid(18) {
        3 => th(3)?.neg(),
        15 => th(3)?,
        6 if flip > 0 => th(0)?,
        12 if flip > 0 => th(0)?.neg(),
        6 => th(0)?.neg(),
        12 => th(0)?,
        _ => FourierJacobiSeries::zero(1, order),
    })
}

/// Compares theta coefficients of ξ⁽⁹⁾_g with `sign`·t⁽⁹⁾_g. Returns the
/// first differing component, if any.
pub fn xi9_mismatch(class: &str, order: Rational64, sign: i64) -> Result<Option<i64>> {
    let form = match class {
        "3A" => ExplicitForm::Xi9_3A,
        "6A" => ExplicitForm::Xi9_6A,
        other => return Err(UmbralError::UnknownClass(other.into())),
    };
    let xi = explicit_form(&form, order)?;
    let v = theta_decompose(&xi, A8_INDEX)?;
    for r in 0..18 {
        let h = match v.component(r) {
            Some(h) => h.clone(),
            None => continue,
        };
        let t = theta_correction(class, r, h.order())?;
        let t = if sign < 0 { t.neg() } else { t };
        if !h.eq_on_window(&t) {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

pub fn verify_xi9_consistency(order: Rational64) -> Result<bool> {
    for g in ["3A", "6A"] {
        if xi9_mismatch(g, order, 1)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn in_gamma0_3(m: &IntMat) -> bool {
    m[2].rem_euclid(3) == 0
}

/// Words whose matrices generate the image of Γ0(3) in SL2(Z/36).
pub fn gamma0_3_generators() -> Vec<Sl2Word> {
    let mats: [IntMat; 3] = [[1, 0, 3, 1], [-1, 1, -3, 2], [2, 1, 3, 2]];
    let mut out = vec![Sl2Word::from_gens(vec![Gen::T(1)]), Sl2Word::s_pow(2)];
    out.extend(mats.iter().map(word_decompose));
    out
}

/// Size of the subgroup of SL2(Z/q) generated by the words' matrices.
pub fn generated_order(words: &[Sl2Word], q: u64) -> usize {
    let gens: Vec<Sl2Mod> = words.iter().map(|w| Sl2Mod::from_int(q, &w.matrix())).collect();
    let id = Sl2Mod::identity(q);
    let mut seen = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.mul(g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

/// True iff every word's Θ₉ matrix has no entries linking residues ≡ 0 mod 3
/// with the others.
pub fn block_structure_check(words: &[Sl2Word]) -> Result<bool> {
    let rep = WeilRep::new(QuadSpace::d(A8_INDEX, 1)?)?;
    let n = rep.dim();
    for w in words {
        if !in_gamma0_3(&w.matrix()) {
            return Err(UmbralError::NotInGamma0(w.to_string()));
        }
        let mat = rep.exact_matrix(w).map_err(WeilError::from)?;
        for x in 0..n {
            for y in 0..n {
                if (x % 3 == 0) != (y % 3 == 0) && !mat[x * n + y].is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grading_examples() {
        assert!(grading_ok(1, -1));
        assert!(grading_ok(3, 27));
        assert!(grading_ok(6, 0));
        assert!(!grading_ok(1, 1));
    }

    #[test]
    fn hex_digest() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
