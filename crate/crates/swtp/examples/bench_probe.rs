use std::time::Instant;
use swtp::tensorspace::{CMat, C64, op_norm};
use rand::{RngExt, SeedableRng};

fn main() {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(1);
    for dim in [64usize, 256] {
        let m = CMat::from_fn(dim, dim, |_, _| C64::new(rng.random::<f64>(), rng.random::<f64>()));
        let h = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        let t = Instant::now();
        let _ = &h * &h;
        println!("matmul {dim}: {:?}", t.elapsed());
        let t = Instant::now();
        let se = h.clone().symmetric_eigen();
        println!("eigen {dim}: {:?}  (ev0 {:.3})", t.elapsed(), se.eigenvalues[0]);
        let t = Instant::now();
        let n = op_norm(&h);
        println!("op_norm {dim}: {:?} ({n:.3})", t.elapsed());
    }
}
