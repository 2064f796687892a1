use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{apply, distance_up_to_phase, Mat, OracleError, Statevector, MAX_STATEVECTOR_QUBITS};
use crate::ir::Circuit;

#[derive(Debug, Clone)]
pub struct EquivOptions {
    pub trials: usize,
    pub seed: u64,
    /// Compare on the subspace where every ancilla starts (and must end) in |0>.
    pub ancillas_zero: bool,
    pub fidelity_tol: f64,
    pub leakage_tol: f64,
    pub unitary_tol: f64,
    /// Full-unitary comparison runs when the padded width is at most this.
    pub full_unitary_max_width: usize,
}

impl Default for EquivOptions {
    fn default() -> Self {
        EquivOptions {
            trials: 20,
            seed: 0x5eed,
            ancillas_zero: true,
            fidelity_tol: 1e-10,
            leakage_tol: 1e-20,
            unitary_tol: 1e-10,
            full_unitary_max_width: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivReport {
    pub equivalent: bool,
    /// Worst of 1 − fidelity and the full-unitary entry deviation.
    pub max_deviation: f64,
    pub min_fidelity: f64,
    pub max_leakage: f64,
    pub unitary_deviation: Option<f64>,
    pub data_qubits: usize,
    pub width: usize,
}

fn random_state(rng: &mut ChaCha8Rng, data_qubits: usize, width: usize) -> Statevector {
    let mut s = vec![Complex64::new(0.0, 0.0); 1 << width];
    let mut norm = 0.0;
    for amp in s.iter_mut().take(1 << data_qubits) {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        *amp = Complex64::new(re, im);
        norm += re * re + im * im;
    }
    let norm = norm.sqrt();
    for amp in &mut s {
        *amp /= norm;
    }
    s
}

fn leakage(s: &[Complex64], data_qubits: usize) -> f64 {
    s[1 << data_qubits..].iter().map(|z| z.norm_sqr()).sum()
}

/// Checks that `a` and `b` agree up to one global phase.
///
/// With `ancillas_zero`, the comparison runs on the first
/// min(data qubits) wires; every other wire (declared ancillas, or the extra
/// wires of the wider circuit) starts in |0> and must return there.
pub fn equivalent_up_to_phase(
    a: &Circuit,
    b: &Circuit,
    opts: &EquivOptions,
) -> Result<EquivReport, OracleError> {
    let (data, width) = if opts.ancillas_zero {
        (
            a.num_data_qubits().min(b.num_data_qubits()),
            a.num_qubits().max(b.num_qubits()),
        )
    } else {
        if a.num_qubits() != b.num_qubits() {
            return Err(OracleError::IncompatibleWidths {
                a: a.width(),
                b: b.width(),
            });
        }
        (a.num_qubits(), a.num_qubits())
    };
    if width > MAX_STATEVECTOR_QUBITS {
        return Err(OracleError::Capacity {
            what: "equivalence check",
            qubits: width,
            limit: MAX_STATEVECTOR_QUBITS,
        });
    }
    let pa = a.widened(width - a.num_qubits());
    let pb = b.widened(width - b.num_qubits());

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut min_fidelity: f64 = 1.0;
    let mut max_leakage: f64 = 0.0;
    for _ in 0..opts.trials {
        let psi = random_state(&mut rng, data, width);
        let oa = apply(&pa, &psi)?;
        let ob = apply(&pb, &psi)?;
        let overlap: Complex64 = oa.iter().zip(&ob).map(|(x, y)| x.conj() * y).sum();
        min_fidelity = min_fidelity.min(overlap.norm());
        max_leakage = max_leakage.max(leakage(&oa, data)).max(leakage(&ob, data));
    }

    let unitary_deviation = if width <= opts.full_unitary_max_width {
        let cols = 1usize << data;
        let dim = 1usize << width;
        let mut ua = Mat::zeros(dim, cols);
        let mut ub = Mat::zeros(dim, cols);
        for x in 0..cols {
            let e = super::basis_state(width, x);
            ua.set_column(
                x,
                &Mat::from_column_slice(dim, 1, &apply(&pa, &e)?).column(0),
            );
            ub.set_column(
                x,
                &Mat::from_column_slice(dim, 1, &apply(&pb, &e)?).column(0),
            );
        }
        Some(distance_up_to_phase(&ua, &ub))
    } else {
        None
    };

    let fid_dev = 1.0 - min_fidelity;
    let max_deviation = fid_dev.max(unitary_deviation.unwrap_or(0.0)).max(0.0);
    let equivalent = fid_dev <= opts.fidelity_tol
        && max_leakage <= opts.leakage_tol
        && unitary_deviation.is_none_or(|d| d <= opts.unitary_tol);
    Ok(EquivReport {
        equivalent,
        max_deviation,
        min_fidelity,
        max_leakage,
        unitary_deviation,
        data_qubits: data,
        width,
    })
}

/// Block of the circuit unitary on the data qubits with every ancilla in
/// |0>, plus the largest probability left outside that subspace.
pub fn data_unitary(c: &Circuit) -> Result<(Mat, f64), OracleError> {
    let width = c.num_qubits();
    if width > MAX_STATEVECTOR_QUBITS {
        return Err(OracleError::Capacity {
            what: "data unitary",
            qubits: width,
            limit: MAX_STATEVECTOR_QUBITS,
        });
    }
    let data = c.num_data_qubits();
    let dim = 1usize << data;
    let mut u = Mat::zeros(dim, dim);
    let mut worst: f64 = 0.0;
    for x in 0..dim {
        let out = apply(c, &super::basis_state(width, x))?;
        worst = worst.max(leakage(&out, data));
        for (r, z) in out[..dim].iter().enumerate() {
            u[(r, x)] = *z;
        }
    }
    Ok((u, worst))
}
