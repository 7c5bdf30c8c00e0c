//! GL_n-orbits in ℙ(Λ³ℂⁿ) for n = 6, 7, 8: orbit dimensions from the Lie-algebra
//! image, tangent annihilators under the coordinate pairing, the duality table and
//! closure-order export.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{binomial, pairing, rat, KVector, Rational};
use crate::linalg::{rank_exact, MatrixQ, Subspace};

pub const ORBITS_JSON: &str = include_str!("../data/orbits.json");
pub const DUALITY_JSON: &str = include_str!("../data/duality.json");
pub const HASSE_JSON: &str = include_str!("../data/hasse.json");

/// One signed monomial `coef · e_{ijk}`; indices may be unsorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term(pub i64, pub Vec<usize>);

pub fn trivector(n: usize, terms: &[Term]) -> Result<KVector> {
    KVector::from_terms(n, 3, terms.iter().map(|Term(c, idx)| (rat(*c), idx.as_slice())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub id: String,
    pub representative: Vec<Term>,
    pub expected_proj_dim: usize,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogJson {
    pub n: usize,
    pub records: Vec<RecordJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitsFile {
    pub version: u32,
    pub catalogs: Vec<CatalogJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityRowJson {
    pub source_label: String,
    pub source: String,
    pub x: Vec<Term>,
    pub y: Vec<Term>,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityFile {
    pub version: u32,
    pub n: usize,
    pub rows: Vec<DualityRowJson>,
    pub prose_pairs: Vec<DualityRowJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeGraphJson {
    pub n: usize,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseFile {
    pub version: u32,
    pub semantics: String,
    pub graphs: Vec<EdgeGraphJson>,
}

/// All stored orbit data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    pub orbits: OrbitsFile,
    pub duality: DualityFile,
    pub hasse: HasseFile,
}

fn parse_json<T: serde::de::DeserializeOwned>(name: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Data(format!("{name}: {e}")))
}

fn check_version(name: &str, v: u32) -> Result<()> {
    if v == 1 {
        Ok(())
    } else {
        Err(Error::Data(format!("{name}: unsupported version {v}")))
    }
}

impl OrbitData {
    pub fn embedded() -> Result<Self> {
        Self::from_texts(ORBITS_JSON, DUALITY_JSON, HASSE_JSON)
    }

    pub fn from_texts(orbits: &str, duality: &str, hasse: &str) -> Result<Self> {
        let orbits: OrbitsFile = parse_json("orbits.json", orbits)?;
        let duality: DualityFile = parse_json("duality.json", duality)?;
        let hasse: HasseFile = parse_json("hasse.json", hasse)?;
        check_version("orbits.json", orbits.version)?;
        check_version("duality.json", duality.version)?;
        check_version("hasse.json", hasse.version)?;
        Ok(OrbitData { orbits, duality, hasse })
    }

    /// Files present in `dir` replace the embedded ones.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str, fallback: &str| -> Result<String> {
            let path = dir.join(name);
            if path.exists() {
                fs::read_to_string(&path).map_err(|e| Error::Data(format!("{}: {e}", path.display())))
            } else {
                Ok(fallback.to_string())
            }
        };
        Self::from_texts(
            &read("orbits.json", ORBITS_JSON)?,
            &read("duality.json", DUALITY_JSON)?,
            &read("hasse.json", HASSE_JSON)?,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    pub id: String,
    pub n: usize,
    pub representative: KVector,
    pub expected_proj_dim: usize,
    pub label: String,
    pub note: Option<String>,
}

fn check_n(n: usize) -> Result<()> {
    if (6..=8).contains(&n) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("orbit catalogs exist for n in 6..=8, got {n}")))
    }
}

pub fn catalog(data: &OrbitData, n: usize) -> Result<Vec<OrbitRecord>> {
    check_n(n)?;
    let cat = data
        .orbits
        .catalogs
        .iter()
        .find(|c| c.n == n)
        .ok_or_else(|| Error::Data(format!("no catalog for n = {n}")))?;
    cat.records
        .iter()
        .map(|r| {
            let representative = trivector(n, &r.representative)?;
            if representative.is_zero() {
                return Err(Error::Data(format!("record {} has a zero representative", r.id)));
            }
            Ok(OrbitRecord {
                id: r.id.clone(),
                n,
                representative,
                expected_proj_dim: r.expected_proj_dim,
                label: r.label.clone(),
                note: r.note.clone(),
            })
        })
        .collect()
}

fn check_trivector(x: &KVector) -> Result<()> {
    if x.degree() != 3 {
        return Err(Error::DegreeMismatch(x.degree(), 3));
    }
    Ok(())
}

/// The vectors `E_ij · x`, column-major order `(i, j)` with `i` slowest.
fn tangent_generators(x: &KVector) -> Vec<KVector> {
    let n = x.n();
    let mut out = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            out.push(x.elementary_action(i, j));
        }
    }
    out
}

/// `C(n,3) × n²` matrix whose column `(i−1)n + (j−1)` is `E_ij · x`.
pub fn action_matrix(x: &KVector) -> Result<MatrixQ> {
    check_trivector(x)?;
    let n = x.n();
    let rows = binomial(n, 3);
    let mut m = MatrixQ::zeros(rows, n * n);
    for (col, v) in tangent_generators(x).iter().enumerate() {
        for (row, c) in v.to_sparse() {
            m.set(row, col, c);
        }
    }
    Ok(m)
}

/// Affine tangent space `gl_n · x`.
pub fn tangent_space(x: &KVector) -> Result<Subspace> {
    check_trivector(x)?;
    Subspace::from_kvectors(&tangent_generators(x), x.n(), 3)
}

/// Projective orbit dimension `rank(gl_n · x) − 1`.
pub fn orbit_dim(x: &KVector) -> Result<usize> {
    check_trivector(x)?;
    if x.is_zero() {
        return Err(Error::ZeroPoint);
    }
    Ok(rank_exact(&action_matrix(x)?) - 1)
}

/// `(gl_n · x)^⊥` in the dual coordinates.
pub fn tangent_annihilator(x: &KVector) -> Result<Subspace> {
    if x.is_zero() {
        return Err(Error::ZeroPoint);
    }
    Ok(tangent_space(x)?.annihilator())
}

/// Whether `⟨E_ij · x, y⟩ = 0` for all `i, j`.
pub fn verify_dual_pair(x: &KVector, y: &KVector) -> Result<bool> {
    check_trivector(x)?;
    check_trivector(y)?;
    if x.n() != y.n() {
        return Err(Error::AmbientMismatch(x.n(), y.n()));
    }
    if x.is_zero() || y.is_zero() {
        return Err(Error::ZeroPoint);
    }
    for v in tangent_generators(x) {
        if !pairing(&v, y)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An invertible `n × n` matrix; column `l` is the image of `e_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    n: usize,
    matrix: MatrixQ,
    determinant: Rational,
}

impl BasisChange {
    pub fn new(matrix: MatrixQ) -> Result<Self> {
        let determinant = matrix.determinant()?;
        if determinant.is_zero() {
            return Err(Error::Singular);
        }
        Ok(BasisChange { n: matrix.rows(), matrix, determinant })
    }

    /// `e_l ↦ sign · e_{target}` for each `(l, target, sign)`; unlisted basis vectors are fixed.
    pub fn signed_permutation(n: usize, images: &[(usize, usize, i64)]) -> Result<Self> {
        let mut m = MatrixQ::identity(n);
        for &(l, _, _) in images {
            if l == 0 || l > n {
                return Err(Error::InvalidIndex { indices: vec![l], n });
            }
            m.set(l - 1, l - 1, rat(0));
        }
        for &(l, t, s) in images {
            if t == 0 || t > n {
                return Err(Error::InvalidIndex { indices: vec![t], n });
            }
            m.set(t - 1, l - 1, rat(s));
        }
        Self::new(m)
    }

    /// The change of basis taking the XII-dual representative to the XIV representative (determinant −1).
    pub fn remark_g() -> Self {
        Self::signed_permutation(8, &[(8, 1, 1), (1, 3, 1), (2, 8, 1), (5, 4, -1), (6, 7, 1), (3, 5, 1), (4, 6, 1), (7, 2, -1)])
            .expect("a signed permutation is invertible")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &MatrixQ {
        &self.matrix
    }

    pub fn determinant(&self) -> &Rational {
        &self.determinant
    }

    /// `(g⁻¹)ᵀ`, the matching action on dual coordinates.
    pub fn contragredient(&self) -> Result<Self> {
        Self::new(self.matrix.inverse()?.transpose())
    }

    fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.n).map(|c| self.matrix.column(c)).collect()
    }
}

pub fn apply_basis_change(g: &BasisChange, x: &KVector) -> Result<KVector> {
    if g.n != x.n() {
        return Err(Error::AmbientMismatch(g.n, x.n()));
    }
    x.apply_linear(&g.columns())
}

/// Random invertible matrix with entries in `-2..=2`.
pub fn random_basis_change<R: Rng>(n: usize, rng: &mut R) -> BasisChange {
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        if let Ok(g) = MatrixQ::from_i64(&rows).and_then(BasisChange::new) {
            return g;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimCheck {
    pub id: String,
    pub label: String,
    pub expected: usize,
    pub computed: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogReport {
    pub n: usize,
    pub checks: Vec<DimCheck>,
    pub matched: usize,
    pub total: usize,
}

impl CatalogReport {
    pub fn all_ok(&self) -> bool {
        self.matched == self.total
    }
}

pub fn verify_catalog(data: &OrbitData, n: usize) -> Result<CatalogReport> {
    let records = catalog(data, n)?;
    let checks: Vec<DimCheck> = records
        .par_iter()
        .map(|r| {
            let computed = orbit_dim(&r.representative)?;
            Ok(DimCheck {
                id: r.id.clone(),
                label: r.label.clone(),
                expected: r.expected_proj_dim,
                computed,
                ok: computed == r.expected_proj_dim,
            })
        })
        .collect::<Result<_>>()?;
    let matched = checks.iter().filter(|c| c.ok).count();
    Ok(CatalogReport { n, total: checks.len(), matched, checks })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityCheck {
    pub source: String,
    pub target: String,
    pub prose: bool,
    pub x_dim: usize,
    pub x_dim_expected: usize,
    pub y_in_annihilator: bool,
    pub y_dim: usize,
    pub y_dim_expected: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub checks: Vec<DualityCheck>,
    pub passed: usize,
    pub total: usize,
}

impl DualityReport {
    pub fn all_ok(&self) -> bool {
        self.passed == self.total
    }
}

pub fn verify_duality_table(data: &OrbitData) -> Result<DualityReport> {
    let n = data.duality.n;
    let records = catalog(data, n)?;
    let dims: BTreeMap<&str, usize> = records.iter().map(|r| (r.id.as_str(), r.expected_proj_dim)).collect();
    let lookup = |id: &str| dims.get(id).copied().ok_or_else(|| Error::Data(format!("unknown orbit {id}")));
    let rows: Vec<(&DualityRowJson, bool)> = data
        .duality
        .rows
        .iter()
        .map(|r| (r, false))
        .chain(data.duality.prose_pairs.iter().map(|r| (r, true)))
        .collect();
    let checks: Vec<DualityCheck> = rows
        .par_iter()
        .map(|(row, prose)| {
            let x = trivector(n, &row.x)?;
            let y = trivector(n, &row.y)?;
            let x_dim = orbit_dim(&x)?;
            let y_dim = orbit_dim(&y)?;
            let y_in_annihilator = verify_dual_pair(&x, &y)?;
            let x_dim_expected = lookup(&row.source)?;
            let y_dim_expected = lookup(&row.target)?;
            Ok(DualityCheck {
                source: row.source.clone(),
                target: row.target.clone(),
                prose: *prose,
                x_dim,
                x_dim_expected,
                y_in_annihilator,
                y_dim,
                y_dim_expected,
                ok: y_in_annihilator && y_dim == y_dim_expected && x_dim == x_dim_expected,
            })
        })
        .collect::<Result<_>>()?;
    let passed = checks.iter().filter(|c| c.ok).count();
    Ok(DualityReport { total: checks.len(), passed, checks })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseNode {
    pub id: String,
    pub dim: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseEdge {
    pub from: String,
    pub to: String,
}

/// Closure order: an edge `from → to` means the closure of `from` contains `to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseGraph {
    pub n: usize,
    pub nodes: Vec<HasseNode>,
    pub edges: Vec<HasseEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            other => Err(Error::Parse(format!("unknown graph format {other:?}"))),
        }
    }
}

pub fn hasse_graph(data: &OrbitData, n: usize) -> Result<HasseGraph> {
    let records = catalog(data, n)?;
    let nodes: Vec<HasseNode> = records
        .iter()
        .map(|r| HasseNode { id: r.id.clone(), dim: r.expected_proj_dim, label: r.label.clone() })
        .collect();
    let dims: BTreeMap<&str, usize> = nodes.iter().map(|v| (v.id.as_str(), v.dim)).collect();
    let stored = data
        .hasse
        .graphs
        .iter()
        .find(|g| g.n == n)
        .ok_or_else(|| Error::Data(format!("no closure edges for n = {n}")))?;
    let mut edges = Vec::with_capacity(stored.edges.len());
    for (a, b) in &stored.edges {
        let (da, db) = match (dims.get(a.as_str()), dims.get(b.as_str())) {
            (Some(&da), Some(&db)) => (da, db),
            _ => return Err(Error::Data(format!("edge {a} -> {b} names an unknown orbit"))),
        };
        if da <= db {
            return Err(Error::Invariant(format!("edge {a} -> {b} does not decrease dimension ({da} -> {db})")));
        }
        edges.push(HasseEdge { from: a.clone(), to: b.clone() });
    }
    Ok(HasseGraph { n, nodes, edges })
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn unescape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            if let Some(d) = chars.next() {
                out.push(d);
            }
        } else {
            out.push(c);
        }
    }
    out
}

pub fn to_dot(g: &HasseGraph) -> String {
    let mut out = format!("digraph orbits_n{} {{\n", g.n);
    for v in &g.nodes {
        out.push_str(&format!("  \"{}\" [label=\"{}\", dim={}];\n", escape(&v.id), escape(&v.label), v.dim));
    }
    for e in &g.edges {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", escape(&e.from), escape(&e.to)));
    }
    out.push_str("}\n");
    out
}

/// Quoted strings in a DOT line, unescaped.
fn quoted(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur: Option<String> = None;
    let mut escaped = false;
    for c in line.chars() {
        match cur.as_mut() {
            None if c == '"' => cur = Some(String::new()),
            None => {}
            Some(s) if escaped => {
                s.push('\\');
                s.push(c);
                escaped = false;
            }
            Some(_) if c == '\\' => escaped = true,
            Some(s) if c == '"' => {
                out.push(unescape(s));
                cur = None;
            }
            Some(s) => s.push(c),
        }
    }
    out
}

/// Reads back the DOT subset written by [`to_dot`].
pub fn from_dot(text: &str) -> Result<HasseGraph> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty DOT document".into()))?;
    let n: usize = header
        .strip_prefix("digraph orbits_n")
        .and_then(|rest| rest.trim_end_matches('{').trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad DOT header {header:?}")))?;
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for line in lines {
        if line == "}" {
            break;
        }
        let q = quoted(line);
        if line.contains("->") {
            match q.as_slice() {
                [a, b] => edges.push(HasseEdge { from: a.clone(), to: b.clone() }),
                _ => return Err(Error::Parse(format!("bad DOT edge {line:?}"))),
            }
        } else {
            let dim = line
                .rsplit("dim=")
                .next()
                .and_then(|s| s.trim_end_matches("];").trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad DOT node {line:?}")))?;
            match q.as_slice() {
                [id, label] => nodes.push(HasseNode { id: id.clone(), dim, label: label.clone() }),
                _ => return Err(Error::Parse(format!("bad DOT node {line:?}"))),
            }
        }
    }
    Ok(HasseGraph { n, nodes, edges })
}

pub fn hasse_export(data: &OrbitData, n: usize, format: GraphFormat) -> Result<String> {
    let g = hasse_graph(data, n)?;
    Ok(match format {
        GraphFormat::Dot => to_dot(&g),
        GraphFormat::Json => serde_json::to_string_pretty(&g).map_err(|e| Error::Data(e.to_string()))?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinctnessEntry {
    pub a: String,
    pub b: String,
    pub dim: usize,
    pub tries: u64,
    pub found: bool,
}

/// Randomized search for a basis change mapping one representative to a multiple of another,
/// for every pair of records with equal orbit dimension.
pub fn distinctness_report(data: &OrbitData, n: usize, tries: u64, seed: u64) -> Result<Vec<DistinctnessEntry>> {
    let records = catalog(data, n)?;
    let mut out = Vec::new();
    for (ia, a) in records.iter().enumerate() {
        for b in &records[ia + 1..] {
            if a.expected_proj_dim != b.expected_proj_dim {
                continue;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let target = Subspace::from_kvectors([&b.representative], n, 3)?;
            let found = (0..tries).any(|_| {
                let g = random_basis_change(n, &mut rng);
                apply_basis_change(&g, &a.representative)
                    .ok()
                    .and_then(|gx| Subspace::from_kvectors([&gx], n, 3).ok())
                    .is_some_and(|s| s == target)
            });
            out.push(DistinctnessEntry { a: a.id.clone(), b: b.id.clone(), dim: a.expected_proj_dim, tries, found });
        }
    }
    Ok(out)
}

/// Ids of all records, in catalog order.
pub fn record_ids(data: &OrbitData, n: usize) -> Result<BTreeSet<String>> {
    Ok(catalog(data, n)?.into_iter().map(|r| r.id).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(n: usize, monomials: &[&[usize]]) -> KVector {
        KVector::sum_of_monomials(n, monomials).unwrap()
    }

    #[test]
    fn action_matrix_basics() {
        let x = tv(6, &[&[1, 2, 3]]);
        let m = action_matrix(&x).unwrap();
        assert_eq!((m.rows(), m.cols()), (20, 36));
        assert_eq!(rank_exact(&m), 10);
        assert!(action_matrix(&KVector::zero(6, 3)).unwrap().is_zero());
        assert!(action_matrix(&KVector::monomial(&[1, 2], 6).unwrap()).is_err());
        assert_eq!(orbit_dim(&KVector::zero(6, 3)), Err(Error::ZeroPoint));
    }

    #[test]
    fn orbit_dim_examples() {
        assert_eq!(orbit_dim(&tv(6, &[&[1, 2, 3], &[3, 4, 5]])).unwrap(), 14);
        // the printed dim-33 representative lands in the dense orbit
        assert_eq!(orbit_dim(&tv(7, &[&[1, 2, 3], &[4, 5, 6], &[1, 4, 7], &[2, 5, 7], &[3, 6, 7]])).unwrap(), 34);
        assert_eq!(orbit_dim(&tv(8, &[&[1, 2, 3], &[4, 5, 6], &[1, 4, 7], &[2, 5, 7], &[3, 6, 7]])).unwrap(), 41);
        let xxii = tv(8, &[&[1, 2, 8], &[1, 4, 7], &[2, 3, 6], &[2, 5, 7], &[3, 5, 8], &[4, 5, 6]]);
        assert_eq!(orbit_dim(&xxii).unwrap(), 54);
    }

    #[test]
    fn annihilators() {
        let x = tv(6, &[&[1, 2, 3]]);
        assert_eq!(tangent_annihilator(&x).unwrap().dim(), 10);
        let x = tv(8, &[&[8, 4, 6], &[8, 5, 7]]);
        let y = tv(8, &[&[1, 3, 8], &[1, 4, 7], &[2, 4, 5], &[2, 6, 7], &[3, 5, 6]]);
        assert!(tangent_annihilator(&x).unwrap().contains(&y.to_coords()).unwrap());
        let dense = tv(6, &[&[1, 2, 3], &[4, 5, 6]]);
        assert!(tangent_annihilator(&dense).unwrap().is_zero());
    }

    #[test]
    fn dual_pairs() {
        let x = tv(8, &[&[4, 6, 7], &[3, 6, 8], &[5, 7, 8]]);
        let y = tv(8, &[&[1, 3, 7], &[2, 3, 7], &[2, 5, 6], &[1, 4, 8], &[3, 4, 5]]);
        assert!(verify_dual_pair(&x, &y).unwrap());
        let x = tv(8, &[&[3, 5, 7], &[4, 6, 8]]);
        let y = tv(8, &[&[1, 3, 4], &[2, 3, 4], &[1, 5, 6], &[2, 7, 8]]);
        assert!(verify_dual_pair(&x, &y).unwrap());
        let e = tv(8, &[&[1, 2, 3]]);
        assert!(!verify_dual_pair(&e, &e).unwrap());
        assert!(verify_dual_pair(&e, &tv(7, &[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn remark_basis_change() {
        let g = BasisChange::remark_g();
        let y = tv(8, &[&[8, 1, 2], &[8, 6, 5], &[8, 3, 4], &[7, 3, 1], &[7, 5, 4]]);
        let expected = tv(8, &[&[1, 3, 8], &[1, 4, 7], &[1, 5, 6], &[2, 3, 5], &[2, 4, 6]]);
        assert_eq!(apply_basis_change(&g, &y).unwrap(), expected);
        assert_eq!(*g.determinant(), rat(-1));
        let id = BasisChange::new(MatrixQ::identity(8)).unwrap();
        assert_eq!(apply_basis_change(&id, &y).unwrap(), y);
        let two = BasisChange::new(MatrixQ::identity(8).scale(&rat(2))).unwrap();
        assert_eq!(apply_basis_change(&two, &y).unwrap(), y.scale(&rat(8)));
        assert_eq!(BasisChange::new(MatrixQ::zeros(8, 8)), Err(Error::Singular));
    }

    #[test]
    fn catalogs_load() {
        let data = OrbitData::embedded().unwrap();
        let dims = |n| catalog(&data, n).unwrap().iter().map(|r| r.expected_proj_dim).collect::<Vec<_>>();
        assert_eq!(dims(6), vec![9, 14, 18, 19]);
        assert_eq!(dims(7), vec![12, 19, 24, 25, 20, 27, 30, 33, 34]);
        let c8 = catalog(&data, 8).unwrap();
        assert_eq!(c8.len(), 22);
        let xiii = c8.iter().find(|r| r.id == "XIII").unwrap();
        assert!(xiii.label.contains("X_{13}≃ X_{13}^*"));
        assert!(catalog(&data, 9).is_err());
    }

    #[test]
    fn small_catalogs_verify() {
        let data = OrbitData::embedded().unwrap();
        assert!(verify_catalog(&data, 6).unwrap().all_ok());
        let r7 = verify_catalog(&data, 7).unwrap();
        let bad: Vec<&str> = r7.checks.iter().filter(|c| !c.ok).map(|c| c.id.as_str()).collect();
        assert_eq!(bad, vec!["O33"]);
    }

    #[test]
    fn hasse_roundtrip() {
        let data = OrbitData::embedded().unwrap();
        let g = hasse_graph(&data, 8).unwrap();
        assert!(g.edges.contains(&HasseEdge { from: "XXII".into(), to: "XXI".into() }));
        assert!(!g.edges.contains(&HasseEdge { from: "XXI".into(), to: "XXII".into() }));
        let dot = to_dot(&g);
        assert_eq!(from_dot(&dot).unwrap(), g);
        let json = hasse_export(&data, 8, GraphFormat::Json).unwrap();
        let back: HasseGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(to_dot(&back), dot);
    }

    #[test]
    fn hasse_rejects_increasing_edge() {
        let mut data = OrbitData::embedded().unwrap();
        data.hasse.graphs[0].edges.push(("O9".into(), "O19".into()));
        assert!(matches!(hasse_graph(&data, 6), Err(Error::Invariant(_))));
    }

    #[test]
    fn dot_escaping() {
        let g = HasseGraph {
            n: 6,
            nodes: vec![HasseNode { id: "a\"b".into(), dim: 3, label: "x\\y \"z\"".into() }],
            edges: vec![HasseEdge { from: "a\"b".into(), to: "a\"b".into() }],
        };
        assert_eq!(from_dot(&to_dot(&g)).unwrap(), g);
    }
}
