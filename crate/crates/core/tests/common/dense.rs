//! State-vector reference for small registers. Qubit `q` is bit `q` of the
//! basis index.

use gauging::PauliOp;
use num_complex::Complex64;

pub type State = Vec<Complex64>;

const TOL: f64 = 1e-9;

fn masks(p: &PauliOp) -> (usize, usize, u32) {
    let (mut x, mut z, mut ny) = (0usize, 0usize, 0u32);
    for q in 0..p.n() {
        let (bx, bz) = (p.x_bits().get(q), p.z_bits().get(q));
        if bx {
            x |= 1 << q;
        }
        if bz {
            z |= 1 << q;
        }
        if bx && bz {
            ny += 1;
        }
    }
    (x, z, ny)
}

fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `P|b> = i^(phase + #Y) (-1)^|b & z| |b ^ x>`, with `Y = iXZ`.
pub fn apply(p: &PauliOp, v: &[Complex64]) -> State {
    let (x, z, ny) = masks(p);
    let c = i_pow(p.phase() as u32 + ny);
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (b, a) in v.iter().enumerate() {
        let s = if (b & z).count_ones() % 2 == 1 { -c } else { c };
        out[b ^ x] += s * a;
    }
    out
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalize(v: &mut [Complex64]) {
    let r = norm(v);
    for a in v {
        *a /= r;
    }
}

/// `(1 + P) v / 2`.
pub fn project(p: &PauliOp, v: &[Complex64]) -> State {
    let pv = apply(p, v);
    v.iter().zip(&pv).map(|(a, b)| (a + b) * 0.5).collect()
}

/// The state stabilized by `gens` (a complete commuting set), found by
/// projecting basis states until one survives.
pub fn stabilizer_state(gens: &[PauliOp]) -> State {
    let n = gens[0].n();
    for seed in 0..1usize << n {
        let mut v = vec![Complex64::new(0.0, 0.0); 1 << n];
        v[seed] = Complex64::new(1.0, 0.0);
        for g in gens {
            v = project(g, &v);
        }
        if norm(&v) > 1e-6 {
            normalize(&mut v);
            return v;
        }
    }
    panic!("generators have no common +1 eigenstate");
}

/// Whether `p v = v`.
pub fn stabilizes(p: &PauliOp, v: &[Complex64]) -> bool {
    let pv = apply(p, v);
    pv.iter().zip(v).all(|(a, b)| (a - b).norm() < TOL)
}
