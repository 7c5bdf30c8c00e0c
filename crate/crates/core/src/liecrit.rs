//! Root systems of simple Lie algebras and the criterion
//! `λ − w₀(λ) = α + β + γ` with `α, β, γ` positive roots.
//!
//! Root data uses Bourbaki's ε-coordinates. E₆ and E₇ live inside the E₈
//! lattice in ℝ⁸ (their simple roots are the first six, resp. seven, of E₈), and
//! G₂ lives in the sum-zero plane of ℝ³. w₀ is obtained as a product of simple
//! reflections taking ρ to an antidominant vector.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{parse_rational, rat, Rational};
use crate::linalg::MatrixQ;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple Lie type such as `A5`, `D6` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::Unsupported(format!("no simple Lie type {family:?}{rank}")))
        }
    }

    /// Types with `w₀ = −id` on the weight lattice.
    pub fn w0_is_minus_identity(&self) -> bool {
        match self.family {
            Family::A => self.rank == 1,
            Family::D => self.rank.is_multiple_of(2),
            Family::E => self.rank != 6,
            _ => true,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::Parse(format!("unknown Lie type {s:?}"))),
        };
        let rank = chars.as_str().parse::<usize>().map_err(|_| Error::Parse(format!("missing rank in {s:?}")))?;
        LieType::new(family, rank)
    }
}

type Vector = Vec<Rational>;

fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn axpy(a: &[Rational], s: &Rational, b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

fn coroot(alpha: &[Rational]) -> Vector {
    let s = rat(2) / dot(alpha, alpha);
    alpha.iter().map(|x| x * &s).collect()
}

fn unit(i: usize, m: usize) -> Vector {
    let mut v = vec![rat(0); m];
    v[i] = rat(1);
    v
}

fn diff(i: usize, j: usize, m: usize) -> Vector {
    axpy(&unit(i, m), &rat(-1), &unit(j, m))
}

#[derive(Debug, Clone, Deserialize)]
struct ExceptionalEntry {
    #[serde(rename = "type")]
    lie_type: String,
    ambient_dim: usize,
    simple_roots: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
struct RootDataFile {
    version: u32,
    exceptional: Vec<ExceptionalEntry>,
}

pub const ROOT_DATA_JSON: &str = include_str!("../data/root_data.json");

fn exceptional_roots(name: &str) -> Result<(usize, Vec<Vector>)> {
    let data: RootDataFile =
        serde_json::from_str(ROOT_DATA_JSON).map_err(|e| Error::Data(format!("root data: {e}")))?;
    if data.version != 1 {
        return Err(Error::Data(format!("unsupported root data version {}", data.version)));
    }
    let entry = data
        .exceptional
        .iter()
        .find(|e| e.lie_type == name)
        .ok_or_else(|| Error::Data(format!("no root data for {name}")))?;
    let roots = entry
        .simple_roots
        .iter()
        .map(|row| {
            if row.len() != entry.ambient_dim {
                return Err(Error::Data(format!("{name}: root of length {}", row.len())));
            }
            row.iter().map(|x| parse_rational(x)).collect::<Result<Vector>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((entry.ambient_dim, roots))
}

/// Bourbaki simple roots and the ambient dimension.
fn simple_roots(t: LieType) -> Result<(usize, Vec<Vector>)> {
    let r = t.rank;
    Ok(match t.family {
        Family::A => (r + 1, (0..r).map(|i| diff(i, i + 1, r + 1)).collect()),
        Family::B => {
            let mut s: Vec<Vector> = (0..r - 1).map(|i| diff(i, i + 1, r)).collect();
            s.push(unit(r - 1, r));
            (r, s)
        }
        Family::C => {
            let mut s: Vec<Vector> = (0..r - 1).map(|i| diff(i, i + 1, r)).collect();
            s.push(unit(r - 1, r).into_iter().map(|x| x * rat(2)).collect());
            (r, s)
        }
        Family::D => {
            let mut s: Vec<Vector> = (0..r - 1).map(|i| diff(i, i + 1, r)).collect();
            s.push(axpy(&unit(r - 2, r), &rat(1), &unit(r - 1, r)));
            (r, s)
        }
        Family::E => {
            let (m, mut s) = exceptional_roots("E8")?;
            s.truncate(r);
            (m, s)
        }
        Family::F => exceptional_roots("F4")?,
        Family::G => exceptional_roots("G2")?,
    })
}

/// Reflection matrix `v ↦ v − ⟨v, α∨⟩ α`.
fn reflection(alpha: &[Rational]) -> MatrixQ {
    let m = alpha.len();
    let ac = coroot(alpha);
    let mut s = MatrixQ::identity(m);
    for (i, a) in alpha.iter().enumerate() {
        for (j, c) in ac.iter().enumerate() {
            let v = s.get(i, j) - a * c;
            s.set(i, j, v);
        }
    }
    s
}

fn apply(m: &MatrixQ, v: &[Rational]) -> Vector {
    (0..m.rows()).map(|i| dot(m.row(i), v)).collect()
}

/// Root datum for one simple type.
#[derive(Debug, Clone)]
pub struct RootSystem {
    lie_type: LieType,
    ambient_dim: usize,
    simple_roots: Vec<Vector>,
    positive_roots: Vec<Vector>,
    fundamental_weights: Vec<Vector>,
    w0: MatrixQ,
    /// `−w₀(ωᵢ) = ω_{σ(i)}`, 0-based.
    duality: Vec<usize>,
    /// `⟨α_k, α_j∨⟩`, row k.
    cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates.
    positive_simple_coords: Vec<Vec<i64>>,
}

pub fn build_root_system(lie_type: LieType) -> Result<RootSystem> {
    let (m, simple) = simple_roots(lie_type)?;
    let r = simple.len();
    let coroots: Vec<Vector> = simple.iter().map(|a| coroot(a)).collect();
    let cartan_q: Vec<Vec<Rational>> =
        simple.iter().map(|a| coroots.iter().map(|c| dot(a, c)).collect()).collect();
    let cartan: Vec<Vec<i64>> = cartan_q
        .iter()
        .map(|row| row.iter().map(|x| x.to_integer().to_i64().expect("small Cartan entries")).collect())
        .collect();

    // ω_i = Σ_k M_ik α_k with M = K⁻¹, K_kj = ⟨α_k, α_j∨⟩
    let inv = MatrixQ::from_rows(cartan_q)?.inverse()?;
    let fundamental_weights: Vec<Vector> = (0..r)
        .map(|i| {
            (0..r).fold(vec![rat(0); m], |acc, k| axpy(&acc, inv.get(i, k), &simple[k]))
        })
        .collect();

    let reflections: Vec<MatrixQ> = simple.iter().map(|a| reflection(a)).collect();
    let mut roots: BTreeSet<Vector> = simple.iter().cloned().collect();
    let mut frontier: Vec<Vector> = simple.clone();
    while let Some(beta) = frontier.pop() {
        for s in &reflections {
            let image = apply(s, &beta);
            if roots.insert(image.clone()) {
                frontier.push(image);
            }
        }
    }
    let rho: Vector = fundamental_weights.iter().fold(vec![rat(0); m], |acc, w| axpy(&acc, &rat(1), w));
    let positive_roots: Vec<Vector> = roots.into_iter().filter(|b| dot(b, &rho).is_positive()).collect();

    // simple-root coordinates: c_k = ⟨β, ω_k∨⟩, with ω_k∨ dual to α_k
    let dual_basis: Vec<Vector> = (0..r)
        .map(|k| (0..r).fold(vec![rat(0); m], |acc, j| axpy(&acc, inv.get(j, k), &coroots[j])))
        .collect();
    let positive_simple_coords: Vec<Vec<i64>> = positive_roots
        .iter()
        .map(|b| dual_basis.iter().map(|d| to_i64(&dot(b, d))).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;

    let mut w0 = MatrixQ::identity(m);
    let mut v = rho.clone();
    while let Some(i) = (0..r).find(|&i| dot(&v, &coroots[i]).is_positive()) {
        v = apply(&reflections[i], &v);
        w0 = reflections[i].mul(&w0)?;
    }

    let mut rs = RootSystem {
        lie_type,
        ambient_dim: m,
        simple_roots: simple,
        positive_roots,
        fundamental_weights,
        w0,
        duality: Vec::new(),
        cartan,
        positive_simple_coords,
    };
    rs.duality = (0..r)
        .map(|i| {
            let image: Vector = apply(&rs.w0, &rs.fundamental_weights[i]).into_iter().map(|x| -x).collect();
            rs.fundamental_weights
                .iter()
                .position(|w| *w == image)
                .ok_or_else(|| Error::Invariant(format!("-w0(ω{}) is not a fundamental weight", i + 1)))
        })
        .collect::<Result<_>>()?;
    Ok(rs)
}

fn to_i64(x: &Rational) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::Invariant(format!("expected an integer, got {x}")));
    }
    x.to_integer().to_i64().ok_or_else(|| Error::Invariant(format!("integer out of range: {x}")))
}

/// A weight in ambient coordinates, with its fundamental-weight coefficients when integral.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<Rational>,
    pub fw_coords: Option<Vec<i64>>,
}

impl Weight {
    pub fn is_dominant(&self) -> bool {
        self.fw_coords.as_ref().is_some_and(|a| a.iter().all(|&x| x >= 0))
    }
}

/// `3w1`, `w1+w2`, `0`.
pub fn format_fw(a: &[i64]) -> String {
    let terms: Vec<String> = a
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| if c == 1 { format!("w{}", i + 1) } else { format!("{c}w{}", i + 1) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl RootSystem {
    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn simple_roots(&self) -> &[Vec<Rational>] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Vec<Rational>] {
        &self.positive_roots
    }

    pub fn fundamental_weights(&self) -> &[Vec<Rational>] {
        &self.fundamental_weights
    }

    pub fn w0_matrix(&self) -> &MatrixQ {
        &self.w0
    }

    /// The involution `i ↦ σ(i)` with `−w₀(ωᵢ) = ω_{σ(i)}` (0-based).
    pub fn duality(&self) -> &[usize] {
        &self.duality
    }

    pub fn positive_roots_simple_coords(&self) -> &[Vec<i64>] {
        &self.positive_simple_coords
    }

    pub fn weight_from_fw(&self, a: &[i64]) -> Weight {
        let coords = a
            .iter()
            .zip(&self.fundamental_weights)
            .fold(vec![rat(0); self.ambient_dim], |acc, (&c, w)| axpy(&acc, &rat(c), w));
        Weight { coords, fw_coords: Some(a.to_vec()) }
    }

    /// Reads off `⟨v, αᵢ∨⟩`; `fw_coords` is `None` unless these are integers and `v` lies in the root span.
    pub fn weight(&self, coords: Vec<Rational>) -> Weight {
        let pairings: Vec<Rational> = self.simple_roots.iter().map(|a| dot(&coords, &coroot(a))).collect();
        let fw = pairings.iter().map(|x| to_i64(x).ok()).collect::<Option<Vec<i64>>>();
        let fw_coords = fw.filter(|a| self.weight_from_fw(a).coords == coords);
        Weight { coords, fw_coords }
    }

    pub fn w0_image(&self, w: &Weight) -> Weight {
        self.weight(apply(&self.w0, &w.coords))
    }

    /// Ambient vector from simple-root coordinates.
    pub fn from_simple_coords(&self, c: &[i64]) -> Vector {
        c.iter()
            .zip(&self.simple_roots)
            .fold(vec![rat(0); self.ambient_dim], |acc, (&x, a)| axpy(&acc, &rat(x), a))
    }

    /// Fundamental-weight coordinates of a vector given in simple-root coordinates.
    fn simple_to_fw(&self, c: &[i64]) -> Vec<i64> {
        let r = self.rank();
        (0..r).map(|i| (0..r).map(|k| c[k] * self.cartan[k][i]).sum()).collect()
    }
}

/// Distinct sums `α+β+γ` of three positive roots, in simple-root coordinates,
/// each with the lexicographically first witness triple (indices into the positive roots).
pub fn triple_sums_with_witness(rs: &RootSystem) -> BTreeMap<Vec<i64>, [usize; 3]> {
    let roots = &rs.positive_simple_coords;
    let p = roots.len();
    let partial: Vec<BTreeMap<Vec<i64>, [usize; 3]>> = (0..p)
        .into_par_iter()
        .map(|i| {
            let mut out = BTreeMap::new();
            for j in i..p {
                let ij: Vec<i64> = roots[i].iter().zip(&roots[j]).map(|(a, b)| a + b).collect();
                for (k, rk) in roots.iter().enumerate().skip(j) {
                    let s: Vec<i64> = ij.iter().zip(rk).map(|(a, b)| a + b).collect();
                    out.entry(s).or_insert([i, j, k]);
                }
            }
            out
        })
        .collect();
    let mut merged = BTreeMap::new();
    for part in partial {
        for (s, w) in part {
            merged.entry(s).or_insert(w);
        }
    }
    merged
}

/// The set `{α+β+γ}` in ambient coordinates.
pub fn triple_sums(rs: &RootSystem) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vector> = triple_sums_with_witness(rs).keys().map(|c| rs.from_simple_coords(c)).collect();
    out.sort();
    out.dedup();
    out
}

fn pair_sums_with_witness(rs: &RootSystem) -> BTreeMap<Vec<i64>, [usize; 2]> {
    let roots = &rs.positive_simple_coords;
    let mut out = BTreeMap::new();
    for i in 0..roots.len() {
        for j in i..roots.len() {
            let s: Vec<i64> = roots[i].iter().zip(&roots[j]).map(|(a, b)| a + b).collect();
            out.entry(s).or_insert([i, j]);
        }
    }
    out
}

/// A dominant λ with `λ − w₀(λ)` equal to a sum of positive roots, and one such decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondSolution {
    pub fw_coords: Vec<i64>,
    pub witness: Vec<usize>,
}

impl DiamondSolution {
    pub fn name(&self) -> String {
        format_fw(&self.fw_coords)
    }
}

/// All `a ≥ 0` with `a_i + a_{σ(i)} = c_i` (for `σ(i) = i` this reads `2a_i = c_i`).
fn preimages(c: &[i64], sigma: &[usize]) -> Vec<Vec<i64>> {
    let r = c.len();
    if c.iter().any(|&x| x < 0) {
        return Vec::new();
    }
    let mut out = vec![vec![0i64; r]];
    for i in 0..r {
        let j = sigma[i];
        if j < i {
            continue;
        }
        if j == i {
            if c[i] % 2 != 0 {
                return Vec::new();
            }
            for a in &mut out {
                a[i] = c[i] / 2;
            }
        } else {
            if c[i] != c[j] {
                return Vec::new();
            }
            out = out
                .into_iter()
                .flat_map(|a| {
                    (0..=c[i]).map(move |x| {
                        let mut a = a.clone();
                        a[i] = x;
                        a[j] = c[i] - x;
                        a
                    })
                })
                .collect();
        }
    }
    out
}

fn solve_for_sums<const K: usize>(rs: &RootSystem, sums: &BTreeMap<Vec<i64>, [usize; K]>) -> Vec<DiamondSolution> {
    let mut found: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (s, w) in sums {
        let c = rs.simple_to_fw(s);
        for a in preimages(&c, &rs.duality) {
            found.entry(a).or_insert_with(|| w.to_vec());
        }
    }
    found.into_iter().map(|(fw_coords, witness)| DiamondSolution { fw_coords, witness }).collect()
}

/// Every dominant integral λ with `λ − w₀(λ) = α + β + γ`, sorted by fundamental-weight coordinates.
pub fn solve_diamond_raw(rs: &RootSystem) -> Vec<DiamondSolution> {
    solve_for_sums(rs, &triple_sums_with_witness(rs))
}

/// Solutions of the three-root equation for which `λ − w₀(λ)` is not also a sum of two
/// positive roots. In the two-root case the tangent spaces at `v_λ` and `v_{w₀λ}` share a weight,
/// so σ₂ is not forced to be nondefective and the criterion says nothing.
pub fn solve_diamond(rs: &RootSystem) -> Vec<DiamondSolution> {
    let two: BTreeSet<Vec<i64>> = solve_two_roots(rs).into_iter().map(|s| s.fw_coords).collect();
    solve_diamond_raw(rs).into_iter().filter(|s| !two.contains(&s.fw_coords)).collect()
}

/// Dominant λ with `λ − w₀(λ) = α + β` (two positive roots).
pub fn solve_two_roots(rs: &RootSystem) -> Vec<DiamondSolution> {
    solve_for_sums(rs, &pair_sums_with_witness(rs))
}

/// Checks `λ − w₀(λ) − Σ witness roots = 0` in ambient coordinates.
pub fn verify_solution(rs: &RootSystem, sol: &DiamondSolution) -> bool {
    let lambda = rs.weight_from_fw(&sol.fw_coords);
    let image = apply(&rs.w0, &lambda.coords);
    let mut residual = axpy(&lambda.coords, &rat(-1), &image);
    for &i in &sol.witness {
        residual = axpy(&residual, &rat(-1), &rs.positive_roots_ambient_from_simple(i));
    }
    residual.iter().all(|x| x.is_zero())
}

impl RootSystem {
    fn positive_roots_ambient_from_simple(&self, i: usize) -> Vector {
        self.from_simple_coords(&self.positive_simple_coords[i])
    }

    /// Applies the diagram involution to fundamental-weight coordinates.
    pub fn dualize_fw(&self, a: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len()];
        for (i, &x) in a.iter().enumerate() {
            out[self.duality[i]] = x;
        }
        out
    }

    /// Whether `w0` maps the positive roots onto the negative roots and squares to the identity.
    pub fn check_w0(&self) -> bool {
        let squared = self.w0.mul(&self.w0).map(|s| s == MatrixQ::identity(self.ambient_dim)).unwrap_or(false);
        let negatives: BTreeSet<Vector> =
            self.positive_roots.iter().map(|b| b.iter().map(|x| -x.clone()).collect()).collect();
        let images: BTreeSet<Vector> = self.positive_roots.iter().map(|b| apply(&self.w0, b)).collect();
        squared && images == negatives
    }

    /// Whether `⟨ωᵢ, αⱼ∨⟩ = δᵢⱼ`.
    pub fn check_fundamental_weights(&self) -> bool {
        self.fundamental_weights.iter().enumerate().all(|(i, w)| {
            self.simple_roots
                .iter()
                .enumerate()
                .all(|(j, a)| dot(w, &coroot(a)) == if i == j { Rational::one() } else { Rational::zero() })
        })
    }
}

/// Diagram automorphisms of the Dynkin diagram (0-based permutations), identity first.
pub fn diagram_automorphisms(t: LieType) -> Vec<Vec<usize>> {
    let r = t.rank;
    let id: Vec<usize> = (0..r).collect();
    match (t.family, r) {
        (Family::A, r) if r >= 2 => vec![id, (0..r).rev().collect()],
        (Family::D, 4) => {
            // triality permutes nodes 1, 3, 4 around the central node 2
            let outer = [0usize, 2, 3];
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            perms
                .iter()
                .map(|p| {
                    let mut s = id.clone();
                    for (k, &node) in outer.iter().enumerate() {
                        s[node] = outer[p[k]];
                    }
                    s
                })
                .collect()
        }
        (Family::D, r) => {
            let mut s = id.clone();
            s.swap(r - 2, r - 1);
            vec![id, s]
        }
        (Family::E, 6) => vec![id, vec![5, 1, 4, 3, 2, 0]],
        _ => vec![id],
    }
}

/// Applies a node permutation to fundamental-weight coordinates.
pub fn permute_fw(a: &[i64], perm: &[usize]) -> Vec<i64> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[perm[i]] = x;
    }
    out
}

/// Canonical representative of the automorphism class (lexicographically largest image).
pub fn canonical_fw(t: LieType, a: &[i64]) -> Vec<i64> {
    diagram_automorphisms(t).iter().map(|p| permute_fw(a, p)).max().unwrap_or_else(|| a.to_vec())
}

/// Highest weight expression from the stored table: `coef · ω_index`, index possibly relative to the rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTerm {
    pub coef: i64,
    /// `"3"`, `"n"`, `"n-1"` …
    pub index: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub family: Family,
    /// A fixed rank, or `null` for a row valid for every rank ≥ `min_rank`.
    pub rank: Option<usize>,
    #[serde(default)]
    pub min_rank: Option<usize>,
    pub weights: Vec<Vec<WeightTerm>>,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Data {
    pub version: u32,
    pub rows: Vec<Table1Row>,
    /// Types the table lists nothing for.
    pub absent: Vec<String>,
    /// Homogeneous varieties with defective σ₂, cited reference data.
    pub defective_secant_reference: Vec<String>,
}

pub const TABLE1_JSON: &str = include_str!("../data/table1.json");

pub fn load_table1(text: &str) -> Result<Table1Data> {
    serde_json::from_str(text).map_err(|e| Error::Data(format!("table1: {e}")))
}

fn resolve_index(index: &str, rank: usize) -> Result<usize> {
    let idx = index.trim();
    let value = if let Some(rest) = idx.strip_prefix('n') {
        let offset = rest.trim();
        if offset.is_empty() {
            rank as i64
        } else {
            let k: i64 = offset
                .strip_prefix('-')
                .and_then(|x| x.trim().parse().ok())
                .ok_or_else(|| Error::Data(format!("bad index {index:?}")))?;
            rank as i64 - k
        }
    } else {
        idx.parse::<i64>().map_err(|_| Error::Data(format!("bad index {index:?}")))?
    };
    if value < 1 || value as usize > rank {
        return Err(Error::Data(format!("index {index:?} out of range for rank {rank}")));
    }
    Ok(value as usize)
}

/// Expected canonical solution classes for one type according to the stored table.
pub fn expected_solutions(data: &Table1Data, t: LieType) -> Result<BTreeSet<Vec<i64>>> {
    let mut out = BTreeSet::new();
    for row in &data.rows {
        if row.family != t.family {
            continue;
        }
        let applies = match row.rank {
            Some(r) => r == t.rank,
            None => t.rank >= row.min_rank.unwrap_or(1),
        };
        if !applies {
            continue;
        }
        for w in &row.weights {
            let mut a = vec![0i64; t.rank];
            for term in w {
                a[resolve_index(&term.index, t.rank)? - 1] += term.coef;
            }
            out.insert(canonical_fw(t, &a));
        }
    }
    Ok(out)
}

/// Labels attached to a solution by the stored table.
pub fn labels_for(data: &Table1Data, t: LieType, a: &[i64]) -> Vec<String> {
    let target = canonical_fw(t, a);
    data.rows
        .iter()
        .filter(|row| row.family == t.family)
        .filter(|row| match row.rank {
            Some(r) => r == t.rank,
            None => t.rank >= row.min_rank.unwrap_or(1),
        })
        .filter(|row| {
            row.weights.iter().any(|w| {
                let mut b = vec![0i64; t.rank];
                for term in w {
                    match resolve_index(&term.index, t.rank) {
                        Ok(i) => b[i - 1] += term.coef,
                        Err(_) => return false,
                    }
                }
                canonical_fw(t, &b) == target
            })
        })
        .map(|row| row.label.clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeReport {
    pub lie_type: String,
    pub solutions: Vec<String>,
    pub raw_solutions: Vec<String>,
    pub canonical_solutions: Vec<String>,
    pub expected: Vec<String>,
    pub matches_table: bool,
    pub labels: Vec<Vec<String>>,
    pub two_root_solutions: Vec<String>,
    pub closed_under_automorphisms: bool,
    pub witnesses_verified: bool,
}

/// Solves the criterion for one type and compares with the stored table.
pub fn type_report(data: &Table1Data, t: LieType) -> Result<TypeReport> {
    let rs = build_root_system(t)?;
    let raw = solve_diamond_raw(&rs);
    let sols = solve_diamond(&rs);
    let found: BTreeSet<Vec<i64>> = sols.iter().map(|s| s.fw_coords.clone()).collect();
    let canonical: BTreeSet<Vec<i64>> = found.iter().map(|a| canonical_fw(t, a)).collect();
    let expected = expected_solutions(data, t)?;
    let closed = found
        .iter()
        .all(|a| diagram_automorphisms(t).iter().all(|p| found.contains(&permute_fw(a, p))));
    Ok(TypeReport {
        lie_type: t.to_string(),
        solutions: sols.iter().map(|s| s.name()).collect(),
        raw_solutions: raw.iter().map(|s| s.name()).collect(),
        canonical_solutions: canonical.iter().map(|a| format_fw(a)).collect(),
        expected: expected.iter().map(|a| format_fw(a)).collect(),
        matches_table: canonical == expected,
        labels: sols.iter().map(|s| labels_for(data, t, &s.fw_coords)).collect(),
        two_root_solutions: solve_two_roots(&rs).iter().map(|s| s.name()).collect(),
        closed_under_automorphisms: closed,
        witnesses_verified: raw.iter().all(|s| verify_solution(&rs, s)),
    })
}

/// Classical ranks compared against the table: from `min_rank` up to the bound.
pub const TABLE1_MIN_CLASSICAL_RANK: usize = 5;

/// All types covered by a table report with the given classical rank bound.
pub fn table1_types(max_classical_rank: usize) -> Result<Vec<LieType>> {
    if max_classical_rank < TABLE1_MIN_CLASSICAL_RANK {
        return Err(Error::Unsupported(format!(
            "max classical rank must be at least {TABLE1_MIN_CLASSICAL_RANK}, got {max_classical_rank}"
        )));
    }
    let mut out = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D] {
        for rank in TABLE1_MIN_CLASSICAL_RANK..=max_classical_rank {
            out.push(LieType::new(family, rank)?);
        }
    }
    for (family, rank) in [(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)] {
        out.push(LieType::new(family, rank)?);
    }
    Ok(out)
}

pub fn table1_report(data: &Table1Data, max_classical_rank: usize) -> Result<Vec<TypeReport>> {
    table1_types(max_classical_rank)?.into_iter().map(|t| type_report(data, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::frac;

    fn t(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_types() {
        assert_eq!(t("F4"), LieType { family: Family::F, rank: 4 });
        assert_eq!(t("e8").to_string(), "E8");
        assert!("E9".parse::<LieType>().is_err());
        assert!("X3".parse::<LieType>().is_err());
        assert!("A".parse::<LieType>().is_err());
    }

    #[test]
    fn f4_data() {
        let rs = build_root_system(t("F4")).unwrap();
        assert_eq!(rs.positive_roots().len(), 24);
        let w3: Vec<Rational> = [3, 1, 1, 1].iter().map(|&x| frac(x, 2)).collect();
        assert_eq!(rs.fundamental_weights()[2], w3);
        assert_eq!(rs.fundamental_weights()[0], vec![rat(1), rat(1), rat(0), rat(0)]);
        assert_eq!(rs.fundamental_weights()[3], vec![rat(1), rat(0), rat(0), rat(0)]);
        assert_eq!(*rs.w0_matrix(), MatrixQ::identity(4).scale(&rat(-1)));
    }

    #[test]
    fn root_counts() {
        for (s, count) in [
            ("A2", 3),
            ("A5", 15),
            ("B4", 16),
            ("C5", 25),
            ("D5", 20),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ] {
            let rs = build_root_system(t(s)).unwrap();
            assert_eq!(rs.positive_roots().len(), count, "{s}");
            assert!(rs.check_w0(), "{s}");
            assert!(rs.check_fundamental_weights(), "{s}");
        }
    }

    #[test]
    fn w0_images() {
        let a2 = build_root_system(t("A2")).unwrap();
        let w1 = a2.weight_from_fw(&[1, 0]);
        assert_eq!(a2.w0_image(&w1).fw_coords, Some(vec![0, -1]));
        let d5 = build_root_system(t("D5")).unwrap();
        assert_eq!(d5.w0_image(&d5.weight_from_fw(&[0, 0, 0, 1, 0])).fw_coords, Some(vec![0, 0, 0, 0, -1]));
        let f4 = build_root_system(t("F4")).unwrap();
        let e1 = f4.weight(vec![rat(1), rat(0), rat(0), rat(0)]);
        assert_eq!(f4.w0_image(&e1).coords, vec![rat(-1), rat(0), rat(0), rat(0)]);
        let e6 = build_root_system(t("E6")).unwrap();
        assert_eq!(e6.duality(), &[5, 1, 4, 3, 2, 0]);
    }

    #[test]
    fn triple_sum_examples() {
        let a1 = build_root_system(t("A1")).unwrap();
        let sums = triple_sums(&a1);
        assert_eq!(sums, vec![a1.simple_roots()[0].iter().map(|x| x * rat(3)).collect::<Vec<_>>()]);
        assert_eq!(triple_sums(&build_root_system(t("A2")).unwrap()).len(), 10);
        let f4 = build_root_system(t("F4")).unwrap();
        let mut norms = BTreeMap::new();
        for s in triple_sums(&f4) {
            let norm: Rational = s.iter().map(|x| x.abs()).sum();
            *norms.entry(norm.to_integer().to_i64().unwrap()).or_insert(0) += 1;
        }
        assert_eq!(norms.into_iter().collect::<Vec<_>>(), vec![(1, 2), (2, 18), (3, 61), (4, 133), (5, 202), (6, 236)]);
    }

    #[test]
    fn preimage_enumeration() {
        assert_eq!(preimages(&[2, 0], &[0, 1]), vec![vec![1, 0]]);
        assert!(preimages(&[1, 0], &[0, 1]).is_empty());
        assert_eq!(preimages(&[2, 2], &[1, 0]), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert!(preimages(&[2, 1], &[1, 0]).is_empty());
        assert!(preimages(&[-2, 0], &[0, 1]).is_empty());
    }

    #[test]
    fn f4_has_only_omega3() {
        let rs = build_root_system(t("F4")).unwrap();
        let sols = solve_diamond(&rs);
        assert_eq!(sols.iter().map(|s| s.name()).collect::<Vec<_>>(), vec!["w3"]);
        assert!(verify_solution(&rs, &sols[0]));
    }

    #[test]
    fn raw_solutions_include_defective_cases() {
        let rs = build_root_system(t("F4")).unwrap();
        let raw: Vec<String> = solve_diamond_raw(&rs).iter().map(|s| s.name()).collect();
        assert_eq!(raw, vec!["w4", "w3", "w1"]);
        let two: Vec<String> = solve_two_roots(&rs).iter().map(|s| s.name()).collect();
        assert_eq!(two, vec!["w4", "w1"]);
        assert!(solve_diamond_raw(&rs).iter().all(|s| verify_solution(&rs, s)));
    }

    #[test]
    fn c_family_and_e8() {
        for r in 3..=6 {
            let rs = build_root_system(LieType::new(Family::C, r).unwrap()).unwrap();
            let mut names: Vec<String> = solve_diamond(&rs).iter().map(|s| s.name()).collect();
            names.sort();
            assert_eq!(names, vec!["3w1", "w1+w2", "w3"], "C{r}");
        }
        assert!(solve_diamond(&build_root_system(t("E8")).unwrap()).is_empty());
    }

    #[test]
    fn stored_table_parses() {
        let data = load_table1(TABLE1_JSON).unwrap();
        assert_eq!(data.version, 1);
        let d6 = expected_solutions(&data, t("D6")).unwrap();
        assert!(d6.contains(&canonical_fw(t("D6"), &[0, 0, 0, 0, 0, 1])));
        assert_eq!(labels_for(&data, t("B5"), &[0, 0, 0, 0, 1]), vec!["S_6"]);
        assert!(expected_solutions(&data, t("E8")).unwrap().is_empty());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonical_fw(t("A5"), &[0, 0, 0, 0, 3]), vec![3, 0, 0, 0, 0]);
        assert_eq!(canonical_fw(t("D6"), &[0, 0, 0, 0, 1, 0]), canonical_fw(t("D6"), &[0, 0, 0, 0, 0, 1]));
        assert_eq!(diagram_automorphisms(t("D4")).len(), 6);
    }

    #[test]
    fn resolve_relative_indices() {
        assert_eq!(resolve_index("n", 6).unwrap(), 6);
        assert_eq!(resolve_index("n-1", 6).unwrap(), 5);
        assert_eq!(resolve_index("3", 6).unwrap(), 3);
        assert!(resolve_index("7", 6).is_err());
        assert!(resolve_index("m", 6).is_err());
    }
}
