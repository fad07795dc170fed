//! Seeded random test objects: elements, subspaces, algebras and derivations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Element, Monomial};
use crate::derivation::{derivation_space, Derivation};
use crate::error::Result;
use crate::exactmath::{Field, Matrix, Scalar, Subspace};

/// Coefficients are drawn from `−COEFF_RANGE..=COEFF_RANGE`.
pub const COEFF_RANGE: i64 = 2;

/// Deterministic source of random algebraic objects.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// An independent stream derived from this one; used to give each check
    /// its own randomness so reordering checks does not change their inputs.
    pub fn fork(&mut self, label: &str) -> Sampler {
        let salt = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        Sampler::new(self.rng.gen::<u64>() ^ salt)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn range(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.rng.gen_range(lo..=hi_inclusive)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn small_int(&mut self) -> i64 {
        self.rng.gen_range(-COEFF_RANGE..=COEFF_RANGE)
    }

    pub fn nonzero_int(&mut self) -> i64 {
        loop {
            let v = self.small_int();
            if v != 0 {
                return v;
            }
        }
    }

    pub fn scalar(&mut self, field: Field) -> Scalar {
        field.int(self.small_int())
    }

    /// Random element: on finite-dimensional algebras a random coordinate
    /// vector (each coordinate nonzero with probability `density`); on
    /// infinite ones a combination of up to four low-degree monomials.
    pub fn element_with_density(&mut self, algebra: &Algebra, density: f64) -> Element {
        let f = algebra.field();
        if let Some(d) = algebra.dim() {
            let v: Vec<Scalar> = (0..d)
                .map(|_| if self.coin(density) { self.scalar(f) } else { f.zero() })
                .collect();
            return algebra.from_coords(&v).expect("coordinates of the right length");
        }
        let monos = algebra.monomials_up_to(3);
        let k = self.range(1, 4);
        let mut acc = algebra.zero();
        for _ in 0..k {
            let m = monos.choose(&mut self.rng).expect("nonempty monomial list").clone();
            acc = &acc + &algebra.monomial_element(m, self.scalar(f));
        }
        acc
    }

    pub fn element(&mut self, algebra: &Algebra) -> Element {
        self.element_with_density(algebra, 0.5)
    }

    /// Element spanned by the given vectors with random coefficients.
    pub fn element_of(&mut self, algebra: &Algebra, s: &Subspace) -> Element {
        let f = algebra.field();
        let mut v = vec![f.zero(); s.ambient_dim()];
        for b in s.basis() {
            let c = self.scalar(f);
            for (x, y) in v.iter_mut().zip(b) {
                *x = &*x + &(&c * y);
            }
        }
        algebra.from_coords(&v).expect("subspace of the algebra")
    }

    /// Random subspace spanned by up to `max_gens` random vectors.
    pub fn subspace(&mut self, algebra: &Algebra, max_gens: usize) -> Subspace {
        let d = algebra.dim().expect("finite-dimensional algebra");
        let k = self.range(0, max_gens);
        let vectors = (0..k)
            .map(|_| {
                let e = self.element(algebra);
                algebra.coords(&e).expect("same algebra")
            })
            .collect();
        Subspace::from_spanning(algebra.field(), d, vectors).expect("well-formed vectors")
    }

    /// Random commutative monomial quotient over ℚ of dimension between 2 and `max_dim`.
    pub fn commutative_algebra(&mut self, max_dim: usize) -> Algebra {
        loop {
            let n = self.range(1, 3);
            let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let mut ideal: Vec<Vec<u32>> = (0..n)
                .map(|i| {
                    let mut e = vec![0u32; n];
                    e[i] = self.range(1, 5) as u32;
                    e
                })
                .collect();
            for _ in 0..self.range(0, 2) {
                let g: Vec<u32> = (0..n).map(|_| self.range(0, 2) as u32).collect();
                if g.iter().any(|&k| k > 0) {
                    ideal.push(g);
                }
            }
            let Ok(a) = Algebra::commutative(Field::Rational, &refs, ideal) else {
                continue;
            };
            if a.dim().is_some_and(|d| (2..=max_dim).contains(&d)) {
                return a;
            }
        }
    }

    /// Random derivation `x_i ↦ x_i·h_i`; every such map preserves every
    /// monomial ideal, since it sends a monomial `m` into `m·A`.
    pub fn multiplicative_derivation(&mut self, algebra: &Algebra) -> Result<Derivation> {
        let vars = algebra.variables();
        let images: Vec<(&str, Element)> = vars
            .iter()
            .map(|v| {
                let h = self.element_with_density(algebra, 0.3);
                Ok((v.as_str(), &algebra.var(v)? * &h))
            })
            .collect::<Result<_>>()?;
        Derivation::from_images(algebra, &images)
    }

    /// Random element of the full derivation space of a finite-dimensional algebra.
    pub fn any_derivation(&mut self, algebra: &Algebra) -> Result<Derivation> {
        let space = derivation_space(algebra)?;
        let f = algebra.field();
        let d = algebra.require_finite()?;
        let mut m = Matrix::zeros(f, d, d);
        for der in &space {
            let c = self.scalar(f);
            m = m.add(&der.matrix_of()?.scale(&c))?;
        }
        Derivation::from_matrix(algebra, m)
    }

    /// Random diagonal (Euler-type) derivation `Σ w_i x_i ∂_i`, weights in `0..=2`.
    pub fn euler_derivation(&mut self, algebra: &Algebra) -> Result<Derivation> {
        let n = algebra.variables().len();
        let w: Vec<i64> = (0..n).map(|_| self.range(0, 2) as i64).collect();
        Derivation::euler(algebra, &w)
    }

    pub fn monomial(&mut self, algebra: &Algebra, max_degree: usize) -> Monomial {
        algebra.monomials_up_to(max_degree).choose(&mut self.rng).expect("nonempty").clone()
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty choice")
    }
}
