use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{check_cap, ComplexMatrix, ComplexVector, DensityMatrix, PureState, C64};
use crate::error::{Error, Result};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub(crate) fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Induced-measure sample `G G† / tr(G G†)` with `G` a complex Gaussian
/// `dim × rank` matrix.
pub fn random_density_with<R: Rng + ?Sized>(
    dims: &[usize],
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let n: usize = dims.iter().product();
    check_cap(n)?;
    if rank == 0 || rank > n {
        return Err(Error::Domain(format!("rank {rank} outside 1..={n}")));
    }
    let g = ginibre(n, rank, rng);
    DensityMatrix::from_psd_normalized(dims.to_vec(), &g * g.adjoint())
}

pub fn random_density(dims: &[usize], rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_with(dims, rank, &mut rng_from_seed(seed))
}

pub fn random_pure<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> Result<PureState> {
    let n: usize = dims.iter().product();
    check_cap(n)?;
    let v = ComplexVector::from_fn(n, |_, _| gaussian(rng));
    PureState::normalized(dims.to_vec(), v)
}

/// Haar-distributed unitary: QR of a Gaussian matrix with the phases of
/// `R`'s diagonal folded back into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(d, d, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matqi::herm_eig;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rank_one_sample_is_pure() {
        let r = random_density(&[2, 2], 1, 5).unwrap();
        assert_abs_diff_eq!(r.purity(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn requested_rank_is_attained() {
        let r = random_density(&[3, 3], 4, 17).unwrap();
        let vals = herm_eig(r.matrix()).unwrap().values;
        let rank = vals.iter().filter(|&&v| v > 1e-12).count();
        assert_eq!(rank, 4);
    }

    #[test]
    fn same_seed_same_state() {
        let a = random_density(&[2, 3], 6, 1234).unwrap();
        let b = random_density(&[2, 3], 6, 1234).unwrap();
        assert_eq!(a, b);
        let c = random_density(&[2, 3], 6, 1235).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sample_mean_approaches_maximally_mixed() {
        let mut rng = rng_from_seed(2024);
        let mut acc = ComplexMatrix::zeros(2, 2);
        let count = 10_000;
        for _ in 0..count {
            acc += random_density_with(&[2], 2, &mut rng).unwrap().matrix();
        }
        let mean = acc.unscale(count as f64);
        assert!((mean[(0, 0)].re - 0.5).abs() < 0.05);
        assert!((mean[(1, 1)].re - 0.5).abs() < 0.05);
        assert!(mean[(0, 1)].norm() < 0.05);
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = rng_from_seed(3);
        let u = random_unitary(4, &mut rng);
        let err = (&u * u.adjoint() - ComplexMatrix::identity(4, 4))
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        assert!(err < 1e-12);
    }

    #[test]
    fn rank_out_of_range() {
        assert!(random_density(&[2], 3, 0).is_err());
        assert!(random_density(&[2], 0, 0).is_err());
    }
}
