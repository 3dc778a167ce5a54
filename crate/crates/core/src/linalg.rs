//! Dense complex linear algebra used by the propagators.
//!
//! Two independent routes to `exp(-iHt) psi` live here: a Padé
//! scaling-and-squaring matrix exponential and an adaptive Dormand-Prince
//! integrator for `d psi / dt = -i H psi`. They share no code beyond matrix
//! storage, so one can check the other.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::C64;

/// `max |M - M^dagger|` over all entries.
pub fn hermitian_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for j in 0..n {
        for i in 0..=j {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn ensure_hermitian(m: &DMatrix<C64>, tol: f64) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    let deviation = hermitian_deviation(m);
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// Largest entry magnitude.
pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Maximum absolute column sum.
pub fn one_norm(m: &DMatrix<C64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Columns of the returned matrix are the matching orthonormal eigenvectors.
pub fn eigh(m: &DMatrix<C64>) -> (DVector<f64>, DMatrix<C64>) {
    let n = m.nrows();
    if n == 0 {
        return (DVector::zeros(0), DMatrix::zeros(0, 0));
    }
    // Symmetrize first so rounding in the input cannot leak into the solver.
    let sym = (m + m.adjoint()).unscale(2.0);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_iterator(n, order.iter().map(|&k| eig.eigenvalues[k]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

// Padé coefficients and one-norm thresholds for degrees 3, 5, 7, 9, 13
// (Higham, "The scaling and squaring method for the matrix exponential
// revisited", 2005).
const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const PADE9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA: [(f64, usize); 4] = [
    (1.495585217958292e-2, 3),
    (2.539398330063230e-1, 5),
    (9.504178996162932e-1, 7),
    (2.097847961257068, 9),
];
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by Padé approximation with scaling and squaring.
///
/// The number of squarings comes from the one-norm of the input, so
/// arguments with `||A||_1` in the thousands are handled without a fixed
/// cap on the scaling.
pub fn expm(a: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: a.ncols(),
        });
    }
    let n = a.nrows();
    if n == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let norm = one_norm(a);
    if !norm.is_finite() {
        return Err(Error::InvalidParams("non-finite matrix in expm".into()));
    }
    for &(theta, degree) in &THETA {
        if norm <= theta {
            let (u, v) = pade_low(a, degree);
            return pade_solve(&u, &v);
        }
    }
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let scaled = a.unscale(2f64.powi(squarings));
    let (u, v) = pade13(&scaled);
    let mut r = pade_solve(&u, &v)?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    Ok(r)
}

fn real_scaled(m: &DMatrix<C64>, c: f64) -> DMatrix<C64> {
    m.map(|z| z * c)
}

fn pade_low(a: &DMatrix<C64>, degree: usize) -> (DMatrix<C64>, DMatrix<C64>) {
    let b: &[f64] = match degree {
        3 => &PADE3,
        5 => &PADE5,
        7 => &PADE7,
        9 => &PADE9,
        _ => unreachable!("unsupported Padé degree {degree}"),
    };
    let n = a.nrows();
    let ident = DMatrix::<C64>::identity(n, n);
    let a2 = a * a;
    // Even powers A^0, A^2, A^4, ...
    let mut powers = vec![ident];
    for _ in 1..=degree / 2 {
        let next = powers.last().unwrap() * &a2;
        powers.push(next);
    }
    let mut u_inner = DMatrix::<C64>::zeros(n, n);
    let mut v = DMatrix::<C64>::zeros(n, n);
    for (k, p) in powers.iter().enumerate() {
        v += real_scaled(p, b[2 * k]);
        u_inner += real_scaled(p, b[2 * k + 1]);
    }
    (a * u_inner, v)
}

fn pade13(a: &DMatrix<C64>) -> (DMatrix<C64>, DMatrix<C64>) {
    let b = &PADE13;
    let n = a.nrows();
    let ident = DMatrix::<C64>::identity(n, n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_hi = real_scaled(&a6, b[13]) + real_scaled(&a4, b[11]) + real_scaled(&a2, b[9]);
    let u_lo = real_scaled(&a6, b[7])
        + real_scaled(&a4, b[5])
        + real_scaled(&a2, b[3])
        + real_scaled(&ident, b[1]);
    let u = a * (&a6 * u_hi + u_lo);
    let v_hi = real_scaled(&a6, b[12]) + real_scaled(&a4, b[10]) + real_scaled(&a2, b[8]);
    let v_lo = real_scaled(&a6, b[6])
        + real_scaled(&a4, b[4])
        + real_scaled(&a2, b[2])
        + real_scaled(&ident, b[0]);
    let v = &a6 * v_hi + v_lo;
    (u, v)
}

fn pade_solve(u: &DMatrix<C64>, v: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let p = v + u;
    let q = v - u;
    q.lu().solve(&p).ok_or(Error::Singular("Padé denominator"))
}

/// Tolerances for [`integrate_schrodinger`].
#[derive(Debug, Clone, Copy)]
pub struct OdeTolerance {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for OdeTolerance {
    fn default() -> Self {
        Self {
            rtol: 1e-11,
            atol: 1e-13,
        }
    }
}

// Dormand-Prince 5(4) tableau. The system is autonomous, so the nodes c_i
// are not needed.
const DP_A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const DP_E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates `d psi/dt = -i H psi` from 0 to `t` with adaptive Dormand-Prince
/// steps. `H` may be non-Hermitian.
pub fn integrate_schrodinger(
    h: &DMatrix<C64>,
    psi0: &DVector<C64>,
    t: f64,
    tol: OdeTolerance,
) -> Result<DVector<C64>> {
    if h.nrows() != psi0.len() || !h.is_square() {
        return Err(Error::DimensionMismatch {
            expected: h.nrows(),
            found: psi0.len(),
        });
    }
    if t == 0.0 {
        return Ok(psi0.clone());
    }
    let n = psi0.len();
    // Row-wise nonzeros of -iH; the Hamiltonians here are very sparse.
    let rows: Vec<Vec<(usize, C64)>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| h[(i, j)] != C64::new(0.0, 0.0))
                .map(|j| (j, h[(i, j)] * C64::new(0.0, -1.0)))
                .collect()
        })
        .collect();
    let rhs = |y: &DVector<C64>| {
        DVector::from_iterator(
            n,
            rows.iter()
                .map(|row| row.iter().map(|&(j, a)| a * y[j]).sum::<C64>()),
        )
    };

    let direction = t.signum();
    let span = t.abs();
    let spectral_guess = one_norm(h).max(1e-300);
    let mut step = (0.01 / spectral_guess).min(span);
    let mut time = 0.0;
    let mut y = psi0.clone();
    let mut k: Vec<DVector<C64>> = vec![DVector::zeros(n); 7];
    k[0] = rhs(&y);

    while time < span {
        if time + step > span {
            step = span - time;
        }
        let h_signed = step * direction;
        for stage in 1..7 {
            let mut arg = y.clone();
            for (j, kj) in k.iter().enumerate().take(stage) {
                let a = DP_A[stage][j];
                if a != 0.0 {
                    arg.axpy(C64::new(a * h_signed, 0.0), kj, C64::new(1.0, 0.0));
                }
            }
            k[stage] = rhs(&arg);
        }
        // 5th-order solution is the last stage argument (FSAL tableau).
        let mut y_new = y.clone();
        for (j, kj) in k.iter().enumerate().take(6) {
            let b = DP_A[6][j];
            if b != 0.0 {
                y_new.axpy(C64::new(b * h_signed, 0.0), kj, C64::new(1.0, 0.0));
            }
        }
        let mut err_acc = 0.0;
        for i in 0..n {
            let mut e = C64::new(0.0, 0.0);
            for (j, kj) in k.iter().enumerate() {
                e += kj[i] * DP_E[j];
            }
            let e = e.norm() * step;
            let scale = tol.atol + tol.rtol * y[i].norm().max(y_new[i].norm());
            err_acc += (e / scale).powi(2);
        }
        let err = (err_acc / n as f64).sqrt();
        if err <= 1.0 {
            time += step;
            y = y_new;
            k[0] = k[6].clone();
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        step *= factor;
        if step < span * 1e-15 {
            return Err(Error::Singular("ODE step size underflow"));
        }
    }
    Ok(y)
}
