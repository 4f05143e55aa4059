// SPDX-License-Identifier: Apache-2.0

//! Generalized Bloch representation over the SU(d) generators.
//!
//! States are written `rho_r = (1 + C_d r.Lambda) / d` with `C_d = sqrt(d(d-1)/2)`
//! and generators normalized to `Tr(Lambda_i Lambda_j) = 2 delta_ij`. Rank-one
//! projectors map to unit vectors, so an eigenbasis becomes a frame of `d` unit
//! vectors with pairwise dot products `-1/(d-1)`.
//!
//! Generators follow the generalized Gell-Mann construction, ordered as the
//! symmetric block, the antisymmetric block (both lexicographic in `(a, b)`,
//! `a < b`), then the `d - 1` diagonal matrices. For `d = 2` this is
//! `(sigma_x, sigma_y, sigma_z)`.
//!
//! Structure constants are stored as dense `(d^2-1)^3` tensors, which caps
//! practical use at about `d = 16`.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eigenvalues, CMatrix, C64, I, ONE};
use crate::quantum::{DensityMatrix, ObservableBasis, PSD_TOL};

/// Tolerance on frame-vector norms and unit-vector checks.
pub const GEOMETRY_TOL: f64 = 1e-10;

type SparseEntry = (usize, usize, C64);

/// The `d^2 - 1` generators of SU(d) with their structure constants.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    dim: usize,
    generators: Vec<CMatrix>,
    sparse: Vec<Vec<SparseEntry>>,
    f: Vec<f64>,
    dsym: Vec<f64>,
    c_d: f64,
}

impl GeneratorSet {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d, "SU(d) generators need d >= 2"));
        }
        let mut sparse: Vec<Vec<SparseEntry>> = Vec::with_capacity(d * d - 1);
        for a in 0..d {
            for b in a + 1..d {
                sparse.push(vec![(a, b, ONE), (b, a, ONE)]);
            }
        }
        for a in 0..d {
            for b in a + 1..d {
                sparse.push(vec![(a, b, -I), (b, a, I)]);
            }
        }
        for l in 1..d {
            let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
            let mut entries: Vec<SparseEntry> = (0..l).map(|m| (m, m, ONE * norm)).collect();
            entries.push((l, l, ONE * (-(l as f64) * norm)));
            sparse.push(entries);
        }
        let generators = sparse
            .iter()
            .map(|entries| {
                let mut m = CMatrix::zeros(d, d);
                for &(r, c, v) in entries {
                    m[(r, c)] += v;
                }
                m
            })
            .collect();
        let (f, dsym) = structure_constants(d, &sparse);
        Ok(Self {
            dim: d,
            generators,
            sparse,
            f,
            dsym,
            c_d: ((d * (d - 1)) as f64 / 2.0).sqrt(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators, `d^2 - 1`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    /// `C_d = sqrt(d(d-1)/2)`
    pub fn c_d(&self) -> f64 {
        self.c_d
    }

    /// `f_ijk = Tr([Lambda_i, Lambda_j] Lambda_k) / 4i`
    pub fn f(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.len();
        self.f[(i * n + j) * n + k]
    }

    /// `d_ijk = Tr({Lambda_i, Lambda_j} Lambda_k) / 4`
    pub fn dsym(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.len();
        self.dsym[(i * n + j) * n + k]
    }

    /// `sum_i c_i Lambda_i`
    pub fn expand(&self, coeffs: &[f64]) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (entries, &c) in self.sparse.iter().zip(coeffs) {
            for &(r, col, v) in entries {
                m[(r, col)] += v * c;
            }
        }
        m
    }

    /// `Tr(m Lambda_i)` for every generator.
    pub fn traces_with(&self, m: &CMatrix) -> Vec<f64> {
        self.sparse
            .iter()
            .map(|entries| entries.iter().map(|&(r, c, v)| m[(c, r)] * v).sum::<C64>().re)
            .collect()
    }

    fn check_len(&self, v: &DVector<f64>) -> Result<()> {
        if v.len() == self.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.len(),
                found: v.len(),
            })
        }
    }
}

/// `f` and `d` tensors from the sparse generators, accumulating
/// `T_ijk = Tr(Lambda_i Lambda_j Lambda_k)` one ordered pair at a time.
fn structure_constants(d: usize, sparse: &[Vec<SparseEntry>]) -> (Vec<f64>, Vec<f64>) {
    let n = sparse.len();
    let mut f = vec![0.0; n * n * n];
    let mut dsym = vec![0.0; n * n * n];
    // Generators touching matrix position (r, c).
    let mut at: Vec<Vec<(usize, C64)>> = vec![Vec::new(); d * d];
    for (k, entries) in sparse.iter().enumerate() {
        for &(r, c, v) in entries {
            at[r * d + c].push((k, v));
        }
    }
    let mut product = vec![ONE * 0.0; d * d];
    let mut t = vec![ONE * 0.0; n];
    for i in 0..n {
        for j in 0..n {
            product.iter_mut().for_each(|z| *z = ONE * 0.0);
            for &(a, b, v1) in &sparse[i] {
                for &(b2, c, v2) in &sparse[j] {
                    if b == b2 {
                        product[a * d + c] += v1 * v2;
                    }
                }
            }
            t.iter_mut().for_each(|z| *z = ONE * 0.0);
            for a in 0..d {
                for c in 0..d {
                    let p = product[a * d + c];
                    if p == ONE * 0.0 {
                        continue;
                    }
                    for &(k, v) in &at[c * d + a] {
                        t[k] += p * v;
                    }
                }
            }
            for k in 0..n {
                // (1/4i)(T_ijk - T_jik) and (1/4)(T_ijk + T_jik), split over both orderings.
                f[(i * n + j) * n + k] += t[k].im / 4.0;
                f[(j * n + i) * n + k] -= t[k].im / 4.0;
                dsym[(i * n + j) * n + k] += t[k].re / 4.0;
                dsym[(j * n + i) * n + k] += t[k].re / 4.0;
            }
        }
    }
    (f, dsym)
}

/// A point `r` of the generalized Bloch ball, `|r| <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector {
    dim: usize,
    r: DVector<f64>,
}

impl BlochVector {
    pub fn new(dim: usize, components: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim, "Bloch vectors need d >= 2"));
        }
        if components.len() != dim * dim - 1 {
            return Err(Error::DimensionMismatch {
                expected: dim * dim - 1,
                found: components.len(),
            });
        }
        let r = DVector::from_vec(components);
        let norm = r.norm();
        if norm.is_nan() || norm > 1.0 + GEOMETRY_TOL {
            return Err(Error::OutsideBlochBall { norm });
        }
        Ok(Self { dim, r })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            r: DVector::zeros(dim * dim - 1),
        }
    }

    fn from_raw(dim: usize, r: DVector<f64>) -> Self {
        Self { dim, r }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &DVector<f64> {
        &self.r
    }

    pub fn norm(&self) -> f64 {
        self.r.norm()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.r.dot(&other.r)
    }
}

/// `(u * v)_i = C_d/(d-2) sum_jk d_ijk u_j v_k`; the zero vector at `d = 2`,
/// where the term it feeds in the product identity carries a `(d-2)` factor.
pub fn star(u: &DVector<f64>, v: &DVector<f64>, gens: &GeneratorSet) -> Result<DVector<f64>> {
    gens.check_len(u)?;
    gens.check_len(v)?;
    let d = gens.dim();
    if d == 2 {
        return Ok(DVector::zeros(gens.len()));
    }
    let scale = gens.c_d() / (d as f64 - 2.0);
    Ok(contract(u, v, gens.len(), |i, j, k| gens.dsym(i, j, k)) * scale)
}

/// `(u ^ v)_i = sum_jk f_ijk u_j v_k`; the cross product for `d = 2`.
pub fn wedge(u: &DVector<f64>, v: &DVector<f64>, gens: &GeneratorSet) -> Result<DVector<f64>> {
    gens.check_len(u)?;
    gens.check_len(v)?;
    Ok(contract(u, v, gens.len(), |i, j, k| gens.f(i, j, k)))
}

fn contract(u: &DVector<f64>, v: &DVector<f64>, n: usize, tensor: impl Fn(usize, usize, usize) -> f64) -> DVector<f64> {
    DVector::from_fn(n, |i, _| {
        let mut acc = 0.0;
        for j in 0..n {
            if u[j] == 0.0 {
                continue;
            }
            for k in 0..n {
                acc += tensor(i, j, k) * u[j] * v[k];
            }
        }
        acc
    })
}

/// `r_i = d/(2 C_d) Tr(rho Lambda_i)`
pub fn state_to_bloch(rho: &DensityMatrix, gens: &GeneratorSet) -> Result<BlochVector> {
    if rho.dim() != gens.dim() {
        return Err(Error::DimensionMismatch {
            expected: gens.dim(),
            found: rho.dim(),
        });
    }
    let scale = gens.dim() as f64 / (2.0 * gens.c_d());
    let r = gens.traces_with(rho.matrix()).into_iter().map(|t| t * scale).collect();
    BlochVector::new(gens.dim(), r)
}

/// `rho_r = (1 + C_d r.Lambda) / d`, rejected if not positive semidefinite.
pub fn bloch_to_state(r: &BlochVector, gens: &GeneratorSet) -> Result<DensityMatrix> {
    if r.dim() != gens.dim() {
        return Err(Error::DimensionMismatch {
            expected: gens.dim(),
            found: r.dim(),
        });
    }
    let d = gens.dim() as f64;
    let m = (linalg::identity(gens.dim()) + gens.expand(r.r.as_slice()) * C64::from(gens.c_d())).unscale(d);
    let min_eigenvalue = hermitian_eigenvalues(&m)[0];
    if min_eigenvalue < -PSD_TOL {
        return Err(Error::Unphysical { min_eigenvalue });
    }
    DensityMatrix::new(m)
}

/// Frame vectors `x_j` with `X_j = (1 + C_d x_j.Lambda) / d`.
pub fn basis_to_bloch_frame(basis: &ObservableBasis, gens: &GeneratorSet) -> Result<Vec<BlochVector>> {
    if basis.dim() != gens.dim() {
        return Err(Error::DimensionMismatch {
            expected: gens.dim(),
            found: basis.dim(),
        });
    }
    let scale = gens.dim() as f64 / (2.0 * gens.c_d());
    (0..basis.dim())
        .map(|j| {
            let r = gens
                .traces_with(&basis.projector(j))
                .into_iter()
                .map(|t| t * scale)
                .collect();
            BlochVector::new(gens.dim(), r)
        })
        .collect()
}

fn check_frame(frame: &[BlochVector], d: usize) -> Result<()> {
    if frame.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: frame.len(),
        });
    }
    if let Some(bad) = frame.iter().find(|x| x.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad.dim(),
        });
    }
    Ok(())
}

/// `((d-1)/d) sum_j (x_j . r) x_j`
fn project_onto_frame(r: &BlochVector, frame: &[BlochVector]) -> BlochVector {
    let d = r.dim();
    let mut out = DVector::zeros(r.r.len());
    for x in frame {
        out.axpy(x.dot(r), &x.r, 1.0);
    }
    BlochVector::from_raw(d, out * ((d as f64 - 1.0) / d as f64))
}

/// Bloch images `u` of `Phi_X(rho_r)` and `v` of `Phi_YX(rho_r)`.
pub fn geometric_maps(
    r: &BlochVector,
    xframe: &[BlochVector],
    yframe: &[BlochVector],
) -> Result<(BlochVector, BlochVector)> {
    let d = r.dim();
    check_frame(xframe, d)?;
    check_frame(yframe, d)?;
    let u = project_onto_frame(r, xframe);
    let v = project_onto_frame(&u, yframe);
    Ok((u, v))
}

/// `(1 + (d-1) x_j . r) / d` for every frame vector.
pub fn frame_probabilities(r: &BlochVector, frame: &[BlochVector]) -> Vec<f64> {
    let d = r.dim() as f64;
    frame.iter().map(|x| (1.0 + (d - 1.0) * x.dot(r)) / d).collect()
}

/// Context incompatibility of the geometric context `{r, x, y}`:
/// `H((1 + (d-1) y_k.u)/d) - H((1 + (d-1) x_j.r)/d)`.
pub fn geometric_context_incompatibility(
    r: &BlochVector,
    xframe: &[BlochVector],
    yframe: &[BlochVector],
) -> Result<f64> {
    let (u, _) = geometric_maps(r, xframe, yframe)?;
    let after = linalg::shannon_entropy(&frame_probabilities(&u, yframe));
    let before = linalg::shannon_entropy(&frame_probabilities(r, xframe));
    Ok(after - before)
}

/// `1 - |v|^2 / |u|^2`
pub fn geometric_leakage_ratio(r: &BlochVector, xframe: &[BlochVector], yframe: &[BlochVector]) -> Result<f64> {
    let (u, v) = geometric_maps(r, xframe, yframe)?;
    let d = r.dim() as f64;
    // |Phi_X(rho) - 1/d|^2 = (d-1)/d |u|^2
    if (d - 1.0) / d * u.r.norm_squared() <= crate::incompatibility::ZERO_INFO_TOL {
        return Err(Error::ZeroInformation);
    }
    Ok(1.0 - v.r.norm_squared() / u.r.norm_squared())
}

/// `1 - ((d-1)/d^2) sum_jk (x_j . y_k)^2`
pub fn geometric_measurement_incompatibility(xframe: &[BlochVector], yframe: &[BlochVector]) -> Result<f64> {
    let d = xframe.len();
    check_frame(xframe, d)?;
    check_frame(yframe, d)?;
    let sum: f64 = xframe
        .iter()
        .flat_map(|x| yframe.iter().map(move |y| x.dot(y).powi(2)))
        .sum();
    let d = d as f64;
    Ok(1.0 - (d - 1.0) / (d * d) * sum)
}

/// Closed forms for a qubit context.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitMeasures {
    pub i_context: f64,
    pub m_measurement: f64,
}

/// Binary entropy in nats.
pub fn binary_entropy(p: f64) -> f64 {
    linalg::shannon_entropy(&[p, 1.0 - p])
}

/// `r` is the state's Bloch vector; `x` and `y` are the Bloch vectors of the
/// first eigenprojector of each observable.
pub fn qubit_measures(r: [f64; 3], x: [f64; 3], y: [f64; 3]) -> Result<QubitMeasures> {
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    for (name, v) in [("x", x), ("y", y)] {
        let norm = dot(v, v).sqrt();
        if (norm - 1.0).abs() > GEOMETRY_TOL {
            return Err(Error::NotUnitVector { name, norm });
        }
    }
    let norm = dot(r, r).sqrt();
    if norm > 1.0 + GEOMETRY_TOL {
        return Err(Error::OutsideBlochBall { norm });
    }
    let (xr, xy) = (dot(x, r), dot(x, y));
    Ok(QubitMeasures {
        i_context: binary_entropy((1.0 + xy * xr) / 2.0) - binary_entropy((1.0 + xr) / 2.0),
        m_measurement: 1.0 - xy * xy,
    })
}
