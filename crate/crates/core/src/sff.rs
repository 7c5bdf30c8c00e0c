//! Second-fundamental-form quadrics of block shape
//!
//! ```text
//!     ( 0   A   B )
//! Q = ( Aᵗ  0   C )
//!     ( Bᵗ  Cᵗ  0 )
//! ```
//!
//! For G(3, n) the blocks are skew `(n-3) × (n-3)` matrices indexed by the
//! coordinates `4..n`; a hyperplane tangent at both `e_123` and `e_456` forces
//! their top-left 3×3 corners to vanish. For ℙ^{k1} × ℙ^{k2} × ℙ^{k3} the blocks
//! are rectangular with a single vanishing corner entry each.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::rat;
use crate::linalg::{rank_exact, MatrixQ};

/// Access to the three off-diagonal blocks of a (★)-shaped matrix.
pub trait StarBlocks {
    fn blocks(&self) -> (&MatrixQ, &MatrixQ, &MatrixQ);
}

/// Skew blocks `A, B, C` of size `m × m` (m = n − 3 for G(3, n)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricBlocks {
    m: usize,
    a: MatrixQ,
    b: MatrixQ,
    c: MatrixQ,
}

impl QuadricBlocks {
    pub fn new(a: MatrixQ, b: MatrixQ, c: MatrixQ) -> Result<Self> {
        let m = a.rows();
        for (name, x) in [("A", &a), ("B", &b), ("C", &c)] {
            if x.rows() != m || x.cols() != m {
                return Err(Error::Shape { rows: x.rows(), cols: x.cols(), expected: format!("{m}x{m}") });
            }
            if !x.is_skew() {
                return Err(Error::Invariant(format!("block {name} is not skew-symmetric")));
            }
        }
        Ok(QuadricBlocks { m, a, b, c })
    }

    pub fn from_i64(a: &[Vec<i64>], b: &[Vec<i64>], c: &[Vec<i64>]) -> Result<Self> {
        QuadricBlocks::new(MatrixQ::from_i64(a)?, MatrixQ::from_i64(b)?, MatrixQ::from_i64(c)?)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The `n` of G(3, n) these blocks belong to.
    pub fn n(&self) -> usize {
        self.m + 3
    }

    pub fn a(&self) -> &MatrixQ {
        &self.a
    }

    pub fn b(&self) -> &MatrixQ {
        &self.b
    }

    pub fn c(&self) -> &MatrixQ {
        &self.c
    }
}

impl StarBlocks for QuadricBlocks {
    fn blocks(&self) -> (&MatrixQ, &MatrixQ, &MatrixQ) {
        (&self.a, &self.b, &self.c)
    }
}

/// Blocks `A: k1×k2`, `B: k1×k3`, `C: k2×k3` with vanishing `(1,1)` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegreBlocks {
    k: [usize; 3],
    a: MatrixQ,
    b: MatrixQ,
    c: MatrixQ,
}

impl SegreBlocks {
    pub fn new(a: MatrixQ, b: MatrixQ, c: MatrixQ) -> Result<Self> {
        let k = [a.rows(), a.cols(), b.cols()];
        if b.rows() != k[0] || c.rows() != k[1] || c.cols() != k[2] || k.contains(&0) {
            return Err(Error::Shape {
                rows: c.rows(),
                cols: c.cols(),
                expected: format!("blocks of sizes {}x{}, {}x{}, {}x{}", k[0], k[1], k[0], k[2], k[1], k[2]),
            });
        }
        for (name, x) in [("A", &a), ("B", &b), ("C", &c)] {
            if !num_traits::Zero::is_zero(x.get(0, 0)) {
                return Err(Error::Invariant(format!("corner entry of block {name} must vanish")));
            }
        }
        Ok(SegreBlocks { k, a, b, c })
    }

    pub fn format(&self) -> [usize; 3] {
        self.k
    }
}

impl StarBlocks for SegreBlocks {
    fn blocks(&self) -> (&MatrixQ, &MatrixQ, &MatrixQ) {
        (&self.a, &self.b, &self.c)
    }
}

/// The symmetric matrix with zero diagonal blocks and off-diagonal blocks `A, B, C`.
pub fn assemble_star<B: StarBlocks + ?Sized>(blocks: &B) -> MatrixQ {
    let (a, b, c) = blocks.blocks();
    let (k1, k2, k3) = (a.rows(), a.cols(), b.cols());
    let size = k1 + k2 + k3;
    let mut q = MatrixQ::zeros(size, size);
    q.set_block(0, k1, a);
    q.set_block(0, k1 + k2, b);
    q.set_block(k1, k1 + k2, c);
    q.set_block(k1, 0, &a.transpose());
    q.set_block(k1 + k2, 0, &b.transpose());
    q.set_block(k1 + k2, k1, &c.transpose());
    q
}

/// Whether the top-left 3×3 corner of each block vanishes.
pub fn check_star_star(blocks: &QuadricBlocks) -> Result<bool> {
    if blocks.m < 3 {
        return Err(Error::Unsupported(format!("(★★) needs block size >= 3, got {}", blocks.m)));
    }
    let (a, b, c) = blocks.blocks();
    Ok([a, b, c].iter().all(|x| x.block(0, 0, 3, 3).is_zero()))
}

/// The explicit blocks for n = 9, 10, 11.
pub fn paper_witness(n: usize) -> Result<QuadricBlocks> {
    match n {
        9 => QuadricBlocks::from_i64(
            &[
                vec![0, 0, 0, -1, 0, 0],
                vec![0, 0, 0, 0, -1, 0],
                vec![0, 0, 0, 0, 0, -1],
                vec![1, 0, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0, 0],
                vec![0, 0, 1, 0, 0, 0],
            ],
            &[
                vec![0, 0, 0, -1, 0, 0],
                vec![0, 0, 0, -1, -1, 0],
                vec![0, 0, 0, 0, -1, -1],
                vec![1, 1, 0, 0, 0, 0],
                vec![0, 1, 1, 0, 0, 0],
                vec![0, 0, 1, 0, 0, 0],
            ],
            &[
                vec![0, 0, 0, 0, -1, 0],
                vec![0, 0, 0, 0, 0, 1],
                vec![0, 0, 0, -1, 0, 0],
                vec![0, 0, 1, 0, 0, 0],
                vec![1, 0, 0, 0, 0, 0],
                vec![0, -1, 0, 0, 0, 0],
            ],
        ),
        10 => QuadricBlocks::from_i64(
            &[
                vec![0, 0, 0, 1, 0, 0, 1],
                vec![0, 0, 0, 0, 1, 0, 1],
                vec![0, 0, 0, 0, 0, 1, 1],
                vec![-1, 0, 0, 0, 0, 0, 1],
                vec![0, -1, 0, 0, 0, 0, 1],
                vec![0, 0, -1, 0, 0, 0, 1],
                vec![-1, -1, -1, -1, -1, -1, 0],
            ],
            &[
                vec![0, 0, 0, 1, 1, 0, 1],
                vec![0, 0, 0, 0, 1, 1, 1],
                vec![0, 0, 0, 0, 0, 1, 1],
                vec![-1, 0, 0, 0, 0, 0, 1],
                vec![-1, -1, 0, 0, 0, 0, 1],
                vec![0, -1, -1, 0, 0, 0, 1],
                vec![-1, -1, -1, -1, -1, -1, 0],
            ],
            &[
                vec![0, 0, 0, 0, 1, 0, 1],
                vec![0, 0, 0, 0, 0, -1, 2],
                vec![0, 0, 0, 1, 0, 0, 3],
                vec![0, 0, -1, 0, 0, 0, 4],
                vec![-1, 0, 0, 0, 0, 0, 5],
                vec![0, 1, 0, 0, 0, 0, 6],
                vec![-1, -2, -3, -4, -5, -6, 0],
            ],
        ),
        11 => QuadricBlocks::from_i64(
            &[
                vec![0, 0, 0, 0, -1, 0, 0, 0],
                vec![0, 0, 0, 0, 0, -1, 0, 0],
                vec![0, 0, 0, 0, 0, 0, -1, 0],
                vec![0, 0, 0, 0, 0, 0, 0, -1],
                vec![1, 0, 0, 0, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0, 0, 0, 0],
                vec![0, 0, 1, 0, 0, 0, 0, 0],
                vec![0, 0, 0, 1, 0, 0, 0, 0],
            ],
            &[
                vec![0, 0, 0, 0, -1, 0, 0, 0],
                vec![0, 0, 0, 0, -1, -1, 0, 0],
                vec![0, 0, 0, 0, 0, -1, -1, 0],
                vec![0, 0, 0, 0, 0, 0, -1, -1],
                vec![1, 1, 0, 0, 0, 0, 0, 0],
                vec![0, 1, 1, 0, 0, 0, 0, 0],
                vec![0, 0, 1, 1, 0, 0, 0, 0],
                vec![0, 0, 0, 1, 0, 0, 0, 0],
            ],
            &[
                vec![0, 0, 0, 0, 0, -1, 0, 0],
                vec![0, 0, 0, 0, 0, 0, -2, 0],
                vec![0, 0, 0, 0, 0, 0, 0, -3],
                vec![0, 0, 0, 0, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 0, 0, 0, 0],
                vec![1, 0, 0, 0, 0, 0, 0, 0],
                vec![0, 2, 0, 0, 0, 0, 0, 0],
                vec![0, 0, 3, 0, 0, 0, 0, 0],
            ],
        ),
        _ => Err(Error::Unsupported(format!("explicit witnesses exist for n = 9, 10, 11 only, got {n}"))),
    }
}

fn random_skew<R: Rng>(m: usize, rng: &mut R) -> MatrixQ {
    let mut x = MatrixQ::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            let v: i64 = rng.gen_range(-3..=3);
            x.set(i, j, rat(v));
            x.set(j, i, rat(-v));
        }
    }
    x
}

/// Per-try generator: stream `try_index` of the ChaCha8 generator seeded by `seed`.
fn try_rng(seed: u64, try_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(try_index);
    rng
}

/// Bounded random search for a 9×9 matrix of shape (★) with 3×3 skew blocks and rank 9.
pub fn seed_q_search(seed: u64, max_tries: u64) -> Result<MatrixQ> {
    (0..max_tries)
        .into_par_iter()
        .find_map_first(|t| {
            let mut rng = try_rng(seed, t);
            let a = random_skew(3, &mut rng);
            let b = random_skew(3, &mut rng);
            let c = random_skew(3, &mut rng);
            let q = assemble_star(&QuadricBlocks { m: 3, a, b, c });
            (rank_exact(&q) == 9).then_some(q)
        })
        .ok_or(Error::SearchExhausted { tries: max_tries })
}

/// Splits a 9×9 (★) matrix into its three 3×3 skew blocks.
fn q_blocks(q: &MatrixQ) -> Result<QuadricBlocks> {
    if q.rows() != 9 || q.cols() != 9 {
        return Err(Error::Shape { rows: q.rows(), cols: q.cols(), expected: "9x9".into() });
    }
    let blocks = QuadricBlocks::new(q.block(0, 3, 3, 3), q.block(0, 6, 3, 3), q.block(3, 6, 3, 3))?;
    if assemble_star(&blocks) != *q {
        return Err(Error::Invariant("q is not of shape (★)".into()));
    }
    Ok(blocks)
}

fn block_diag(x: &MatrixQ, y: &MatrixQ) -> MatrixQ {
    let mut out = MatrixQ::zeros(x.rows() + y.rows(), x.cols() + y.cols());
    out.set_block(0, 0, x);
    out.set_block(x.rows(), x.cols(), y);
    out
}

/// Extends a full-rank (★)/(★★) quadric for G(3, n) to one for G(3, n + 3).
///
/// Each block becomes `diag(old, new)`, so the assembled matrix is `Q ⊕ q` after
/// grouping the old coordinates before the three new ones.
pub fn extend_witness(blocks: &QuadricBlocks, q: &MatrixQ) -> Result<QuadricBlocks> {
    if !check_star_star(blocks)? {
        return Err(Error::Invariant("input blocks violate (★★)".into()));
    }
    let rank = rank_exact(&assemble_star(blocks));
    if rank != 3 * blocks.m {
        return Err(Error::RankDeficient { rank, expected: 3 * blocks.m });
    }
    let small = q_blocks(q)?;
    let q_rank = rank_exact(q);
    if q_rank != 9 {
        return Err(Error::RankDeficient { rank: q_rank, expected: 9 });
    }
    QuadricBlocks::new(
        block_diag(&blocks.a, &small.a),
        block_diag(&blocks.b, &small.b),
        block_diag(&blocks.c, &small.c),
    )
}

pub const DEFAULT_Q_TRIES: u64 = 100_000;

/// Verified full-rank quadric for G(3, n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub n: usize,
    pub blocks: QuadricBlocks,
    pub rank: usize,
    pub verified: bool,
    pub seed: u64,
}

/// JSON form: blocks as row-major `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub n: usize,
    pub blocks: BlocksJson,
    pub rank: usize,
    pub verified: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct BlocksJson {
    pub a: Vec<Vec<String>>,
    pub b: Vec<Vec<String>>,
    pub c: Vec<Vec<String>>,
}

impl Certificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            n: self.n,
            blocks: BlocksJson {
                a: self.blocks.a.to_strings(),
                b: self.blocks.b.to_strings(),
                c: self.blocks.c.to_strings(),
            },
            rank: self.rank,
            verified: self.verified,
            seed: self.seed,
        }
    }

    /// Parses and re-verifies a certificate.
    pub fn from_json(json: &CertificateJson) -> Result<Self> {
        let blocks = QuadricBlocks::new(
            MatrixQ::from_strings(&json.blocks.a)?,
            MatrixQ::from_strings(&json.blocks.b)?,
            MatrixQ::from_strings(&json.blocks.c)?,
        )?;
        if blocks.n() != json.n {
            return Err(Error::Data(format!("blocks belong to n = {}, certificate says {}", blocks.n(), json.n)));
        }
        let rank = rank_exact(&assemble_star(&blocks));
        let verified = check_star_star(&blocks)? && rank == 3 * blocks.m;
        Ok(Certificate { n: json.n, blocks, rank, verified, seed: json.seed })
    }
}

/// Builds and verifies a full-rank (★)/(★★) quadric for G(3, n), n ≥ 9.
pub fn certify_lemma(n: usize, seed: u64) -> Result<Certificate> {
    if n < 9 {
        return Err(Error::Unsupported(format!("certify_lemma needs n >= 9, got {n}")));
    }
    let base = 9 + (n - 9) % 3;
    let mut blocks = paper_witness(base)?;
    if n > base {
        let q = seed_q_search(seed, DEFAULT_Q_TRIES)?;
        for _ in 0..(n - base) / 3 {
            blocks = extend_witness(&blocks, &q)?;
        }
    }
    let rank = rank_exact(&assemble_star(&blocks));
    let verified = check_star_star(&blocks)? && rank == 3 * (n - 3);
    Ok(Certificate { n, blocks, rank, verified, seed })
}

/// Result of a witness search for the ℙ^{k1}×ℙ^{k2}×ℙ^{k3} block shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegreOutcome {
    Witness { blocks: SegreBlocks, rank: usize, tries: u64 },
    /// Every matrix of the shape has rank at most `max_rank`, by a structural (matching) bound.
    Impossible { max_rank: usize, size: usize },
    Indeterminate { tries: u64 },
}

/// Positions `(row, col)` of the assembled matrix that may be nonzero.
fn segre_pattern(k: [usize; 3]) -> Vec<Vec<bool>> {
    let size = k[0] + k[1] + k[2];
    let offsets = [0, k[0], k[0] + k[1]];
    let group = |i: usize| if i < offsets[1] { 0 } else if i < offsets[2] { 1 } else { 2 };
    let corners: Vec<usize> = offsets.to_vec();
    (0..size)
        .map(|r| {
            (0..size)
                .map(|c| group(r) != group(c) && !(corners.contains(&r) && corners.contains(&c)))
                .collect()
        })
        .collect()
}

/// Maximum bipartite matching between rows and columns of an allowed-entry pattern.
/// Every matrix supported on the pattern has rank at most this size.
pub fn structural_rank(pattern: &[Vec<bool>]) -> usize {
    let cols = pattern.first().map_or(0, |r| r.len());
    let mut owner: Vec<Option<usize>> = vec![None; cols];
    fn augment(r: usize, pattern: &[Vec<bool>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for c in 0..seen.len() {
            if pattern[r][c] && !seen[c] {
                seen[c] = true;
                if owner[c].is_none_or(|o| augment(o, pattern, seen, owner)) {
                    owner[c] = Some(r);
                    return true;
                }
            }
        }
        false
    }
    (0..pattern.len())
        .filter(|&r| augment(r, pattern, &mut vec![false; cols], &mut owner))
        .count()
}

fn random_segre_blocks<R: Rng>(k: [usize; 3], rng: &mut R) -> SegreBlocks {
    let mut draw = |rows: usize, cols: usize| {
        let mut x = MatrixQ::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if i + j > 0 {
                    x.set(i, j, rat(rng.gen_range(-3..=3)));
                }
            }
        }
        x
    };
    let a = draw(k[0], k[1]);
    let b = draw(k[0], k[2]);
    let c = draw(k[1], k[2]);
    SegreBlocks { k, a, b, c }
}

/// Searches for full-rank blocks, after first ruling out structurally forced rank deficiency.
pub fn segre_witness(k1: usize, k2: usize, k3: usize, seed: u64, max_tries: u64) -> Result<SegreOutcome> {
    let k = [k1, k2, k3];
    if k.contains(&0) {
        return Err(Error::Unsupported("factor dimensions must be >= 1".into()));
    }
    let size = k1 + k2 + k3;
    let bound = structural_rank(&segre_pattern(k));
    if bound < size {
        return Ok(SegreOutcome::Impossible { max_rank: bound, size });
    }
    let found = (0..max_tries).into_par_iter().find_map_first(|t| {
        let blocks = random_segre_blocks(k, &mut try_rng(seed, t));
        let rank = rank_exact(&assemble_star(&blocks));
        (rank == size).then_some((blocks, rank, t + 1))
    });
    Ok(match found {
        Some((blocks, rank, tries)) => SegreOutcome::Witness { blocks, rank, tries },
        None => SegreOutcome::Indeterminate { tries: max_tries },
    })
}
