//! Higher Hochschild cohomology of radical-square-zero algebras by counting
//! parallel pairs, `dim HH^n(A) = |Q_n∥Q_1| − |Q_{n−1}∥Q_0|` for `n ≥ 2`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::MonomialAlgebra;
use crate::gluing::GluedAlgebra;
use crate::quiver::{ArrowId, Quiver};

pub const DEFAULT_DEGREE_CAP: usize = 12;
pub const DEFAULT_ENUMERATION_CAP: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HighDegreeError {
    #[error("the algebra is not radical square zero")]
    NotRadicalSquareZero,
    #[error("the quiver is not connected")]
    NotConnected,
    #[error("degree {0} is served by the Strametz complex; use n ≥ 2")]
    LowDegree(usize),
    #[error("the quiver is a {0}-crown; crown dimensions are not supported")]
    Crown(usize),
}

type BigMatrix = Vec<Vec<BigUint>>;

/// Powers of the adjacency matrix `M`, where `M[i][j]` counts arrows `j → i`,
/// so `(M^n)[i][j]` counts paths of length `n` from `j` to `i`.
#[derive(Clone, Debug)]
pub struct PathCountTable {
    powers: Vec<BigMatrix>,
    arrows: Vec<(usize, usize)>,
}

impl PathCountTable {
    pub fn new(q: &Quiver) -> Self {
        let n = q.vertex_count();
        let mut identity = vec![vec![BigUint::zero(); n]; n];
        let mut m = vec![vec![BigUint::zero(); n]; n];
        for (i, row) in identity.iter_mut().enumerate() {
            row[i] = BigUint::from(1u32);
        }
        let arrows = q.arrow_ids().map(|a| (q.source(a).0, q.target(a).0)).collect::<Vec<_>>();
        for &(s, t) in &arrows {
            m[t][s] += 1u32;
        }
        PathCountTable {
            powers: vec![identity, m],
            arrows,
        }
    }

    pub fn power(&mut self, n: usize) -> &BigMatrix {
        while self.powers.len() <= n {
            let next = multiply(self.powers.last().expect("non-empty"), &self.powers[1]);
            self.powers.push(next);
        }
        &self.powers[n]
    }

    /// Number of length-`n` paths from `from` to `to`.
    pub fn paths(&mut self, n: usize, from: usize, to: usize) -> BigUint {
        self.power(n)[to][from].clone()
    }

    /// `(|Q_n∥Q_1|, |Q_{n−1}∥Q_0|)` for `n ≥ 1`.
    pub fn parallel_counts(&mut self, n: usize) -> (BigUint, BigUint) {
        assert!(n >= 1, "degree must be positive");
        let arrows = self.arrows.clone();
        let with_arrows = arrows
            .iter()
            .fold(BigUint::zero(), |acc, &(s, t)| acc + &self.power(n)[t][s]);
        let m = self.power(n - 1);
        let cycles = (0..m.len()).fold(BigUint::zero(), |acc, i| acc + &m[i][i]);
        (with_arrows, cycles)
    }
}

fn multiply(a: &BigMatrix, b: &BigMatrix) -> BigMatrix {
    let n = a.len();
    let mut out = vec![vec![BigUint::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn parallel_counts(q: &Quiver, n: usize) -> (BigUint, BigUint) {
    PathCountTable::new(q).parallel_counts(n)
}

pub fn hh_dim_high(a: &MonomialAlgebra, n: usize) -> Result<BigInt, HighDegreeError> {
    let mut table = PathCountTable::new(a.quiver());
    hh_dim_with(a, &mut table, n)
}

fn hh_dim_with(a: &MonomialAlgebra, table: &mut PathCountTable, n: usize) -> Result<BigInt, HighDegreeError> {
    if n < 2 {
        return Err(HighDegreeError::LowDegree(n));
    }
    if !a.is_radical_square_zero() {
        return Err(HighDegreeError::NotRadicalSquareZero);
    }
    let q = a.quiver();
    if q.component_count() != 1 {
        return Err(HighDegreeError::NotConnected);
    }
    if let Some(k) = q.crown_order() {
        return Err(HighDegreeError::Crown(k));
    }
    let (x, y) = table.parallel_counts(n);
    Ok(BigInt::from(x) - BigInt::from(y))
}

/// Pairs `(p, a)` with `p` a quiver path of length `n` parallel to the arrow `a`.
pub fn parallel_pairs(q: &Quiver, n: usize) -> Vec<(Vec<ArrowId>, ArrowId)> {
    let mut out = Vec::new();
    for p in q.paths_of_length(n) {
        for a in q.arrow_ids() {
            if q.source(a) == p.source() && q.target(a) == p.target() {
                out.push((p.arrows().to_vec(), a));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRow {
    pub n: usize,
    pub dim_a: BigInt,
    /// `None` when `Q_B` is a crown.
    pub dim_b: Option<BigInt>,
    /// `None` above the enumeration cap.
    pub injective: Option<bool>,
}

impl DegreeRow {
    pub fn monotone(&self) -> bool {
        self.dim_b.as_ref().is_none_or(|b| *b >= self.dim_a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighDegreeReport {
    pub crown_b: Option<usize>,
    pub rows: Vec<DegreeRow>,
}

impl HighDegreeReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.monotone() && r.injective != Some(false))
    }
}

/// Compares `HH^n(A)` and `HH^n(B)` for `2 ≤ n ≤ max_degree`.
pub fn check_high_degree_gluing(
    g: &GluedAlgebra,
    max_degree: usize,
    enumeration_cap: usize,
) -> Result<HighDegreeReport, String> {
    let (a, b) = (g.a(), g.b());
    if !a.is_radical_square_zero() {
        return Err("A is not radical square zero".into());
    }
    if a.quiver().component_count() != 1 {
        return Err("A is not indecomposable".into());
    }
    if !g.kind().source_sink {
        return Err("the gluing is not source-sink".into());
    }
    let crown_b = b.quiver().crown_order();
    let mut ta = PathCountTable::new(a.quiver());
    let mut tb = PathCountTable::new(b.quiver());
    let mut rows = Vec::new();
    for n in 2..=max_degree {
        let dim_a = if crown_b.is_some() {
            BigInt::zero()
        } else {
            hh_dim_with(a, &mut ta, n).map_err(|e| e.to_string())?
        };
        let dim_b = match hh_dim_with(b, &mut tb, n) {
            Ok(d) => Some(d),
            Err(HighDegreeError::Crown(_)) => None,
            Err(e) => return Err(e.to_string()),
        };
        let injective = (n <= enumeration_cap).then(|| psi_n1_injective(g, n));
        rows.push(DegreeRow {
            n,
            dim_a,
            dim_b,
            injective,
        });
    }
    Ok(HighDegreeReport { crown_b, rows })
}

/// `ψ_{n,1}` sends parallel pairs to parallel pairs and is injective on them.
pub fn psi_n1_injective(g: &GluedAlgebra, n: usize) -> bool {
    let qb = g.b().quiver();
    let mut seen = BTreeSet::new();
    for (p, x) in parallel_pairs(g.a().quiver(), n) {
        let pb: Vec<ArrowId> = p.iter().map(|&y| g.arrow_image(y)).collect();
        let xb = g.arrow_image(x);
        let Ok(path) = qb.path(&pb) else { return false };
        if path.source() != qb.source(xb) || path.target() != qb.target(xb) {
            return false;
        }
        if !seen.insert((pb, xb)) {
            return false;
        }
    }
    true
}
