//! One-pair semiseparable matrices: generator representation,
//! triangular factorization, dense reference oracle and norms.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// √(π² − 1) / π. Diagonal oracles prescale their entries by this factor
/// so the quantized arcsin argument stays in [0, c] where the map
/// x ↦ arcsin(x)/π has derivative at most 1.
pub fn arcsin_prescale() -> f64 {
    (std::f64::consts::PI * std::f64::consts::PI - 1.0).sqrt() / std::f64::consts::PI
}

/// Symmetric matrix with `S[i][j] = u_i v_j` for `i <= j`, stored by its
/// generators only. `N = 2^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct OnePairMatrix {
    n: u32,
    u: Vec<f64>,
    v: Vec<f64>,
}

/// `S = diag(u) · L · diag(delta_z) · Lᵀ · diag(u)` with `L` the unit
/// lower-triangular all-ones matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub d_u: Vec<f64>,
    pub delta_z: Vec<f64>,
    pub z: Vec<f64>,
}

/// Extremes of the generator magnitudes, shared by all encoder scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorStats {
    pub max_u: f64,
    pub min_u: f64,
    pub max_v: f64,
    pub min_v: f64,
    /// The constant √(π² − 1)/π.
    pub c: f64,
}

impl OnePairMatrix {
    pub fn new(n: u32, u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput("qubit count must be at least 1".into()));
        }
        let len = 1usize << n;
        if u.len() != len {
            return Err(Error::DimensionMismatch { expected: len, got: u.len() });
        }
        if v.len() != len {
            return Err(Error::DimensionMismatch { expected: len, got: v.len() });
        }
        if u.iter().chain(v.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("generator entries must be finite".into()));
        }
        Ok(OnePairMatrix { n, u, v })
    }

    /// All-ones generators; the dense matrix is `ones(N)`.
    pub fn ones(n: u32) -> Self {
        let len = 1usize << n;
        OnePairMatrix { n, u: vec![1.0; len], v: vec![1.0; len] }
    }

    pub fn qubits(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        1usize << self.n
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    /// Dense `N×N` reference matrix. Every entry is computed once and
    /// mirrored, so the result is bitwise symmetric.
    pub fn dense(&self) -> DMatrix<f64> {
        let n = self.size();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let s = self.u[i] * self.v[j];
                m[(i, j)] = s;
                m[(j, i)] = s;
            }
        }
        m
    }

    /// Triangular factorization `S = D_u L Δ_z Lᵀ D_u`, defined only
    /// when every `u_i` is nonzero.
    pub fn factorize(&self) -> Result<Factorization> {
        if let Some(i) = self.u.iter().position(|&x| x == 0.0) {
            return Err(Error::ZeroGenerator { index: i });
        }
        let z: Vec<f64> = self.u.iter().zip(&self.v).map(|(&u, &v)| v / u).collect();
        let mut delta_z = Vec::with_capacity(z.len());
        delta_z.push(z[0]);
        for i in 1..z.len() {
            delta_z.push(z[i] - z[i - 1]);
        }
        Ok(Factorization { d_u: self.u.clone(), delta_z, z })
    }

    pub fn stats(&self) -> GeneratorStats {
        let fold = |v: &[f64]| {
            v.iter().fold((0.0f64, f64::INFINITY), |(mx, mn), &x| {
                (mx.max(x.abs()), mn.min(x.abs()))
            })
        };
        let (max_u, min_u) = fold(&self.u);
        let (max_v, min_v) = fold(&self.v);
        GeneratorStats { max_u, min_u, max_v, min_v, c: arcsin_prescale() }
    }

    /// `S x` in O(N) via prefix sums:
    /// `(Sx)_i = u_i Σ_{j≥i} v_j x_j + v_i Σ_{j<i} u_j x_j`.
    pub fn matvec(&self, x: &[f64], out: &mut [f64]) {
        let n = self.size();
        debug_assert_eq!(x.len(), n);
        debug_assert_eq!(out.len(), n);
        let mut tail = 0.0; // Σ_{j>=i} v_j x_j, built backwards
        let mut tails = vec![0.0; n];
        for i in (0..n).rev() {
            tail += self.v[i] * x[i];
            tails[i] = tail;
        }
        let mut head = 0.0; // Σ_{j<i} u_j x_j
        for i in 0..n {
            out[i] = self.u[i] * tails[i] + self.v[i] * head;
            head += self.u[i] * x[i];
        }
    }

    /// Spectral-norm estimate by power iteration on the implicit
    /// operator. `S` is symmetric, so iterating `x ← S²x` converges to
    /// ‖S‖₂; tolerance 1e-12 relative, deterministic start.
    pub fn spectral_norm_est(&self) -> f64 {
        let n = self.size();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
        let norm = |v: &[f64]| v.iter().map(|y| y * y).sum::<f64>().sqrt();
        let nx = norm(&x);
        x.iter_mut().for_each(|y| *y /= nx);
        let mut y = vec![0.0; n];
        let mut est = 0.0f64;
        for _ in 0..20_000 {
            self.matvec(&x, &mut y);
            let next = norm(&y);
            if next == 0.0 {
                return 0.0;
            }
            if (next - est).abs() <= 1e-12 * next.max(1.0) {
                return next;
            }
            est = next;
            x.iter_mut().zip(&y).for_each(|(xi, &yi)| *xi = yi / next);
        }
        est
    }

    /// Exact ‖S‖∞ (max absolute row sum) via prefix sums on |u|, |v|.
    pub fn inf_norm(&self) -> f64 {
        let n = self.size();
        let mut vtail = vec![0.0; n];
        let mut acc = 0.0;
        for i in (0..n).rev() {
            acc += self.v[i].abs();
            vtail[i] = acc;
        }
        let mut uhead = 0.0;
        let mut best = 0.0f64;
        for i in 0..n {
            let row = self.u[i].abs() * vtail[i] + self.v[i].abs() * uhead;
            best = best.max(row);
            uhead += self.u[i].abs();
        }
        best
    }
}

impl Factorization {
    /// Reassemble `D_u L Δ_z Lᵀ D_u` densely. Reference oracle for tests.
    pub fn assemble_dense(&self) -> DMatrix<f64> {
        let n = self.d_u.len();
        let l = lower_ones(n);
        let du = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.d_u.clone()));
        let dz = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.delta_z.clone()));
        &du * &l * dz * l.transpose() * du
    }
}

/// Unit lower-triangular matrix of all ones.
pub fn lower_ones(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |i, j| if i >= j { 1.0 } else { 0.0 })
}

/// Entry `(i,j)` kept iff `|i-j| <= 1`.
pub fn tridiag_part(m: &DMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        if i.abs_diff(j) <= 1 {
            m[(i, j)]
        } else {
            0.0
        }
    })
}

/// ‖·‖₂ of a square real matrix: symmetric eigendecomposition when the
/// input is symmetric within 1e-12 of its scale, else SVD. Dense path,
/// capped at N = 2^14.
pub fn spectral_norm(m: &DMatrix<f64>) -> Result<f64> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch { expected: m.nrows(), got: m.ncols() });
    }
    if m.nrows() > 1 << 14 {
        return Err(Error::ResourceLimit { qubits: m.nrows(), max: 1 << 14 });
    }
    if m.is_empty() {
        return Ok(0.0);
    }
    let scale = m.amax().max(1.0);
    let mut defect = 0.0f64;
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            defect = defect.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    if defect <= 1e-12 * scale {
        let eig = m.clone().symmetric_eigen();
        Ok(eig.eigenvalues.iter().fold(0.0f64, |a, &l| a.max(l.abs())))
    } else {
        Ok(m.clone().svd(false, false).singular_values.max())
    }
}

/// Two a-priori bounds on ‖S‖₂ in terms of the generator stats.
#[derive(Debug, Clone, Copy)]
pub struct NormBounds {
    /// `8 N² M_u² M_v / (π² m_u)`, from the factorized form.
    pub factored: f64,
    /// `M_u M_v N`, from the entrywise bound.
    pub entrywise: f64,
}

pub fn norm_bound(stats: &GeneratorStats, n: u32) -> NormBounds {
    let big_n = (1u64 << n) as f64;
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    NormBounds {
        factored: 8.0 * big_n * big_n * stats.max_u * stats.max_u * stats.max_v
            / (pi2 * stats.min_u),
        entrywise: stats.max_u * stats.max_v * big_n,
    }
}

/// Standard normals from ChaCha8 uniforms via Box–Muller. Fully
/// deterministic for a given seed stream.
fn normal_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    // Avoid ln(0); u1 in (0, 1].
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let t = 2.0 * std::f64::consts::PI * u2;
    (r * t.cos(), r * t.sin())
}

fn sample_vector(rng: &mut ChaCha8Rng, len: usize, min_abs: f64) -> Vec<f64> {
    let mut v = Vec::with_capacity(len);
    let mut spare: Option<f64> = None;
    while v.len() < len {
        let x = match spare.take() {
            Some(s) => s,
            None => {
                let (a, b) = normal_pair(rng);
                spare = Some(b);
                a
            }
        };
        if x.abs() >= min_abs {
            v.push(x);
        }
    }
    v
}

/// Random generators for the experiments: standard normal entries,
/// entries below 1e-6 in magnitude resampled so `m_u` stays away from
/// zero, then both vectors normalized to unit infinity norm.
pub fn sample_normalized(n: u32, seed: u64) -> OnePairMatrix {
    let len = 1usize << n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut u = sample_vector(&mut rng, len, 1e-6);
    let mut v = sample_vector(&mut rng, len, 1e-6);
    let norm = |w: &[f64]| w.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let (nu, nv) = (norm(&u), norm(&v));
    u.iter_mut().for_each(|x| *x /= nu);
    v.iter_mut().for_each(|x| *x /= nv);
    OnePairMatrix { n, u, v }
}

#[derive(Serialize, Deserialize)]
struct GeneratorFile {
    n: u32,
    u: Vec<f64>,
    v: Vec<f64>,
}

/// Load generators from JSON `{ "n": int, "u": [...], "v": [...] }`.
pub fn load_generators(path: &Path) -> Result<OnePairMatrix> {
    let text = std::fs::read_to_string(path)?;
    let file: GeneratorFile =
        serde_json::from_str(&text).map_err(|e| Error::InvalidInput(e.to_string()))?;
    OnePairMatrix::new(file.n, file.u, file.v)
}

pub fn save_generators(path: &Path, m: &OnePairMatrix) -> Result<()> {
    let file = GeneratorFile { n: m.n, u: m.u.clone(), v: m.v.clone() };
    std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

/// Row-major CSV dump with 17 significant digits, for debugging.
pub fn write_matrix_csv(path: &Path, m: &DMatrix<f64>) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format!("{:.16e}", m[(i, j)])).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}
