//! Seeded random instances for the property suites.
//!
//! Dense random matrices are almost always of index 1, so most instances are
//! block-diagonal sums of an invertible triangular block and nilpotent
//! blocks, conjugated by integer unimodular elementary matrices. A similarity
//! step is kept only if every entry stays inside the entry bound, so the
//! results are Gaussian integers with both parts in `[-bound, bound]`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::Matrix;
use crate::scalar::{Involution, RealScalar, Scalar};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub max_dim: usize,
    /// Bound on the real and imaginary parts of every entry.
    pub entry_bound: i64,
    /// Attempted elementary similarity steps per unit of dimension.
    pub steps_per_dim: usize,
    /// Share of plain dense instances, in percent. Dense entries have real
    /// and imaginary parts in `{-1, 0, 1}`.
    pub dense_percent: u32,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig { max_dim: 6, entry_bound: 3, steps_per_dim: 4, dense_percent: 15 }
    }
}

impl GeneratorConfig {
    pub fn float_default() -> Self {
        GeneratorConfig { max_dim: 12, entry_bound: 3, steps_per_dim: 3, dense_percent: 0 }
    }
}

/// The generator stream for one case of one seed.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

fn gauss<T: Scalar>(re: i64, im: i64) -> T {
    T::from_parts(T::Real::from_i64(re), T::Real::from_i64(im))
}

fn random_entry<T: Scalar>(rng: &mut impl Rng, bound: i64) -> T {
    gauss(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

fn nonzero_entry<T: Scalar>(rng: &mut impl Rng, bound: i64) -> T {
    loop {
        let (re, im) = (rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if re != 0 || im != 0 {
            return gauss(re, im);
        }
    }
}

/// Upper triangular with nonzero diagonal; entries above the diagonal are
/// zero about half the time to keep similarity steps inside the bound.
pub fn invertible_block<T: Scalar>(rng: &mut impl Rng, n: usize, bound: i64, inv: Involution) -> Matrix<T> {
    Matrix::from_fn(n, n, inv, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => nonzero_entry(rng, bound),
        std::cmp::Ordering::Less if rng.gen_bool(0.5) => random_entry(rng, bound),
        _ => T::zero(),
    })
}

/// Strictly upper triangular with a unit superdiagonal, so its index is
/// exactly `n`.
pub fn nilpotent_block<T: Scalar>(rng: &mut impl Rng, n: usize, bound: i64, inv: Involution) -> Matrix<T> {
    Matrix::from_fn(n, n, inv, |i, j| {
        if j == i + 1 {
            T::one()
        } else if j > i + 1 && rng.gen_bool(0.3) {
            random_entry(rng, bound)
        } else {
            T::zero()
        }
    })
}

fn within_bound<T: Scalar>(a: &Matrix<T>, bound: i64) -> bool {
    let b = bound as f64 + 0.5;
    a.data().iter().all(|z| z.re().approx_f64().abs() <= b && z.im().approx_f64().abs() <= b)
}

/// Apply accepted elementary similarities `A ↦ E·A·E⁻¹` with
/// `E = I + c·e_{ij}`, plus a final random permutation similarity.
pub fn scramble<T: Scalar>(rng: &mut impl Rng, a: &Matrix<T>, config: &GeneratorConfig) -> Matrix<T> {
    let n = a.rows();
    let mut cur = a.clone();
    if n >= 2 {
        for _ in 0..config.steps_per_dim * n {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let c: T = nonzero_entry(rng, 1);
            // E·A adds c·row j to row i; ·E⁻¹ subtracts c·column i from column j
            let mut next = cur.clone();
            for k in 0..n {
                let v = next[(i, k)].clone() + c.clone() * next[(j, k)].clone();
                next[(i, k)] = v;
            }
            for k in 0..n {
                let v = next[(k, j)].clone() - next[(k, i)].clone() * c.clone();
                next[(k, j)] = v;
            }
            if within_bound(&next, config.entry_bound) {
                cur = next;
            }
        }
    }
    permute(rng, &cur)
}

/// `P·A·Pᵀ` for a random permutation `P`.
pub fn permute<T: Scalar>(rng: &mut impl Rng, a: &Matrix<T>) -> Matrix<T> {
    let perm = random_permutation(rng, a.rows());
    apply_permutation(a, &perm)
}

fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

fn apply_permutation<T: Scalar>(a: &Matrix<T>, perm: &[usize]) -> Matrix<T> {
    Matrix::from_fn(a.rows(), a.cols(), a.involution(), |i, j| a[(perm[i], perm[j])].clone())
}

/// Block-diagonal structure: an invertible block of size `r` followed by
/// nilpotent blocks filling the rest.
pub fn structured_blocks<T: Scalar>(rng: &mut impl Rng, n: usize, bound: i64, inv: Involution) -> Matrix<T> {
    let r = rng.gen_range(0..=n);
    let mut blocks = Vec::new();
    if r > 0 {
        blocks.push(invertible_block(rng, r, bound, inv));
    }
    let mut left = n - r;
    while left > 0 {
        let s = rng.gen_range(1..=left.min(4));
        blocks.push(nilpotent_block(rng, s, bound, inv));
        left -= s;
    }
    Matrix::block_diag(inv, &blocks)
}

/// One random square instance.
pub fn random_instance<T: Scalar>(rng: &mut impl Rng, config: &GeneratorConfig, inv: Involution) -> Matrix<T> {
    let n = rng.gen_range(1..=config.max_dim);
    random_instance_of_size(rng, n, config, inv)
}

pub fn random_instance_of_size<T: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    config: &GeneratorConfig,
    inv: Involution,
) -> Matrix<T> {
    if rng.gen_range(0..100) < config.dense_percent {
        return Matrix::from_fn(n, n, inv, |_, _| random_entry(rng, 1));
    }
    let base = structured_blocks(rng, n, config.entry_bound, inv);
    scramble(rng, &base, config)
}

/// A pair `(a, y)` with `a·y = y·a` and `a*·y = y·a*`: a block-diagonal `a`
/// against scalar blocks `λ_j·I`, permuted together.
pub fn commuting_pair<T: Scalar>(
    rng: &mut impl Rng,
    config: &GeneratorConfig,
    inv: Involution,
) -> (Matrix<T>, Matrix<T>) {
    let n = rng.gen_range(2..=config.max_dim.max(2));
    let split = rng.gen_range(1..n);
    let bound = config.entry_bound;
    let a1 = structured_blocks(rng, split, bound, inv);
    let a2 = structured_blocks(rng, n - split, bound, inv);
    let l1: T = random_entry(rng, bound);
    let l2: T = random_entry(rng, bound);
    let y1 = Matrix::identity(split, inv).scale(&l1);
    let y2 = Matrix::identity(n - split, inv).scale(&l2);
    let perm = random_permutation(rng, n);
    (
        apply_permutation(&Matrix::block_diag(inv, &[a1, a2]), &perm),
        apply_permutation(&Matrix::block_diag(inv, &[y1, y2]), &perm),
    )
}

/// `a = diag(G1, λ·I)`, `b = diag(μ·I, G2)`: `a·b = b·a` and `a·b* = b*·a`.
pub fn product_pair<T: Scalar>(
    rng: &mut impl Rng,
    config: &GeneratorConfig,
    inv: Involution,
) -> (Matrix<T>, Matrix<T>) {
    let n = rng.gen_range(2..=config.max_dim.max(2));
    let split = rng.gen_range(1..n);
    let bound = config.entry_bound;
    let g1 = structured_blocks(rng, split, bound, inv);
    let g2 = structured_blocks(rng, n - split, bound, inv);
    let lambda: T = nonzero_entry(rng, bound);
    let mu: T = nonzero_entry(rng, bound);
    let a = Matrix::block_diag(inv, &[g1, Matrix::identity(n - split, inv).scale(&lambda)]);
    let b = Matrix::block_diag(inv, &[Matrix::identity(split, inv).scale(&mu), g2]);
    let perm = random_permutation(rng, n);
    (apply_permutation(&a, &perm), apply_permutation(&b, &perm))
}

/// `a = diag(A1, 0)`, `b = diag(0, B2)`: `a·b = b·a = 0` and `a*·b = 0`.
pub fn orthogonal_pair<T: Scalar>(
    rng: &mut impl Rng,
    config: &GeneratorConfig,
    inv: Involution,
) -> (Matrix<T>, Matrix<T>) {
    let n = rng.gen_range(2..=config.max_dim.max(2));
    let split = rng.gen_range(1..n);
    let bound = config.entry_bound;
    let mut a1 = structured_blocks(rng, split, bound, inv);
    let mut b2 = structured_blocks(rng, n - split, bound, inv);
    if split >= 2 {
        a1 = scramble(rng, &a1, config);
    }
    if n - split >= 2 {
        b2 = scramble(rng, &b2, config);
    }
    let a = Matrix::block_diag(inv, &[a1, Matrix::zeros(n - split, n - split, inv)]);
    let b = Matrix::block_diag(inv, &[Matrix::zeros(split, split, inv), b2]);
    let perm = random_permutation(rng, n);
    (apply_permutation(&a, &perm), apply_permutation(&b, &perm))
}
