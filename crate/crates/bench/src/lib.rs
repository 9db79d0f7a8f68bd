//! Inputs shared by the benchmarks.

use caaa::{Complex64, DenseMatrix, FunctionSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A catalog function as a plain closure.
pub fn catalog_fn(name: &str) -> impl Fn(Complex64) -> Complex64 {
    let spec = FunctionSpec::from_catalog(name).unwrap_or_else(|| panic!("no catalog entry {name}"));
    move |z| spec.eval(z)
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Dense random `rows × cols` matrix, fixed seed.
pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DenseMatrix::from_fn(rows, cols, |_, _| random_complex(&mut rng))
}

/// Arrowhead pencil data of size `m`: distinct points on the unit circle
/// and a random border.
pub fn random_arrowhead(m: usize, seed: u64) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let diag = (0..m)
        .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * (k as f64 + rng.gen_range(0.0..0.5)) / m as f64))
        .collect();
    let top = (0..m).map(|_| random_complex(&mut rng)).collect();
    (diag, top)
}
