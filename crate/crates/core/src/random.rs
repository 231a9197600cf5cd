//! Random expressions and words for tests and self-checks.

use alloc::vec::Vec;

use rand::Rng;

use crate::word::{Letter, RatExpr};

/// Shape limits for [`expr`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    /// Largest number of tokens (letters and ω-powers).
    pub max_size: usize,
    pub max_depth: usize,
    pub letters: u32,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_size: 12,
            max_depth: 3,
            letters: 3,
        }
    }
}

/// An expression with between 1 and `shape.max_size` tokens.
pub fn expr<R: Rng + ?Sized>(rng: &mut R, shape: Shape) -> RatExpr {
    let size = rng.gen_range(1..=shape.max_size.max(1));
    let letters = rng.gen_range(1..=shape.letters.max(1));
    build(rng, size, shape.max_depth, letters)
}

/// An expression with exactly `size` tokens.
pub fn expr_of_size<R: Rng + ?Sized>(
    rng: &mut R,
    size: usize,
    depth: usize,
    letters: u32,
) -> RatExpr {
    build(rng, size.max(1), depth, letters.max(1))
}

fn build<R: Rng + ?Sized>(rng: &mut R, size: usize, depth: usize, letters: u32) -> RatExpr {
    if size == 1 {
        return RatExpr::letter(Letter(rng.gen_range(0..letters)));
    }
    if depth > 0 && rng.gen_ratio(2, 5) {
        return RatExpr::omega(build(rng, size - 1, depth - 1, letters));
    }
    let parts = rng.gen_range(2..=size.min(4));
    // Random composition of `size` into `parts` positive summands.
    let mut cuts: Vec<usize> = Vec::with_capacity(parts + 1);
    while cuts.len() < parts - 1 {
        let c = rng.gen_range(1..size);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.push(0);
    cuts.push(size);
    cuts.sort_unstable();
    let children = cuts
        .windows(2)
        .map(|w| build(rng, w[1] - w[0], depth, letters))
        .collect::<Vec<_>>();
    RatExpr::concat(children).expect("at least two parts")
}

/// A finite word of the given length over the first `letters` letters.
pub fn word<R: Rng + ?Sized>(rng: &mut R, len: usize, letters: u32) -> Vec<Letter> {
    (0..len)
        .map(|_| Letter(rng.gen_range(0..letters.max(1))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duplication::{depth, size};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let e = expr(&mut rng, Shape::default());
            assert!((1..=12).contains(&size(&e)));
            assert!(depth(&e) <= 3);
        }
        for n in 1..20 {
            assert_eq!(size(&expr_of_size(&mut rng, n, 3, 2)), n);
        }
    }
}
