//! Matrix exponential by scaling and squaring with diagonal Padé
//! approximants of degree 3, 5, 7, 9 or 13 (Higham 2005).

use super::ComplexMatrix;
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Inputs with a larger 1-norm are rejected with [`Error::OverflowRisk`].
pub const EXPM_NORM_CAP: f64 = 1e4;

const THETA_3: f64 = 1.495_585_217_958_292e-2;
const THETA_5: f64 = 2.539_398_330_063_23e-1;
const THETA_7: f64 = 9.504_178_996_162_932e-1;
const THETA_9: f64 = 2.097_847_961_257_068;
const THETA_13: f64 = 5.371_920_351_148_152;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const B9: [f64; 10] = [
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
const B13: [f64; 14] = [
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

type M = DMatrix<Complex64>;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `e^A`.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let norm = a.norm_one();
    if !(norm <= EXPM_NORM_CAP) {
        return Err(Error::OverflowRisk {
            norm,
            cap: EXPM_NORM_CAP,
        });
    }
    let n = a.dim();
    let x = a.as_inner();
    let id = M::identity(n, n);

    let (u, v, squarings) = if norm <= THETA_9 {
        let a2 = x * x;
        if norm <= THETA_3 {
            let (u, v) = pade_low(x, &a2, &id, &B3);
            (u, v, 0)
        } else if norm <= THETA_5 {
            let (u, v) = pade_low(x, &a2, &id, &B5);
            (u, v, 0)
        } else if norm <= THETA_7 {
            let (u, v) = pade_low(x, &a2, &id, &B7);
            (u, v, 0)
        } else {
            let (u, v) = pade_low(x, &a2, &id, &B9);
            (u, v, 0)
        }
    } else {
        let s = (norm / THETA_13).log2().ceil().max(0.0) as u32;
        let scaled = x * re(0.5f64.powi(s as i32));
        let (u, v) = pade13(&scaled, &id);
        (u, v, s)
    };

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.lu().solve(&p).ok_or(Error::SingularMatrix)?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    ComplexMatrix::new(r).map_err(|_| Error::OverflowRisk {
        norm,
        cap: EXPM_NORM_CAP,
    })
}

/// Odd/even split `U = A sum b_odd A^(2k)`, `V = sum b_even A^(2k)` for
/// degrees up to 9.
fn pade_low(a: &M, a2: &M, id: &M, b: &[f64]) -> (M, M) {
    let mut power = id.clone();
    let mut u_inner = id * re(b[1]);
    let mut v = id * re(b[0]);
    for k in 1..b.len() / 2 {
        power = &power * a2;
        u_inner += &power * re(b[2 * k + 1]);
        v += &power * re(b[2 * k]);
    }
    (a * u_inner, v)
}

fn pade13(a: &M, id: &M) -> (M, M) {
    let b = &B13;
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let w1 = &a6 * re(b[13]) + &a4 * re(b[11]) + &a2 * re(b[9]);
    let w2 = &a6 * re(b[7]) + &a4 * re(b[5]) + &a2 * re(b[3]) + id * re(b[1]);
    let u = a * (&a6 * w1 + w2);
    let z1 = &a6 * re(b[12]) + &a4 * re(b[10]) + &a2 * re(b[8]);
    let z2 = &a6 * re(b[6]) + &a4 * re(b[4]) + &a2 * re(b[2]) + id * re(b[0]);
    let v = &a6 * z1 + z2;
    (u, v)
}
