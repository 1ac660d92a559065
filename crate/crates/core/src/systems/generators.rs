//! Benchmark families.
//!
//! Random instances use ChaCha8 seeded through `SeedableRng::seed_from_u64`,
//! which is specified independently of platform and word size.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SystemSpec;
use crate::linalg::{rank, IntVector, RatMatrix};

/// `n - 1` simplices in dimension `n`, each spanned by `n + 1` points with
/// coordinates drawn uniformly from `0..=30`.
pub fn gen_generic_simplices(n: usize, seed: u64) -> SystemSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let supports = (0..n - 1)
        .map(|_| loop {
            let pts: Vec<IntVector> = (0..=n)
                .map(|_| {
                    let c: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=30)).collect();
                    IntVector::from_i64s(&c)
                })
                .collect();
            let diffs: Vec<IntVector> = pts[1..].iter().map(|p| p.sub(&pts[0])).collect();
            let m = RatMatrix::from_int_rows(&diffs, n).expect("rows have length n");
            if rank(&m) == n {
                break pts;
            }
        })
        .collect();
    SystemSpec::new(n, supports, format!("simplices n={n} seed={seed}"))
        .expect("generated supports are valid")
}

/// Cyclic n-roots, or the reduced form: `x_i = y_i / y_0`, denominators
/// cleared, `y_0` set to one, first `n - 1` equations in `y_1 .. y_{n-1}`.
pub fn gen_cyclic(n: usize, reduced: bool) -> SystemSpec {
    let window = |start: usize, len: usize| -> Vec<i64> {
        let mut e = vec![0i64; n];
        for j in 0..len {
            e[(start + j) % n] = 1;
        }
        e
    };
    let mut supports: Vec<Vec<IntVector>> = (1..n)
        .map(|len| (0..n).map(|s| IntVector::from_i64s(&window(s, len))).collect())
        .collect();
    if reduced {
        let drop_first = |p: &IntVector| IntVector::new(p.entries()[1..].to_vec());
        let supports = supports
            .iter()
            .map(|s| s.iter().map(drop_first).collect())
            .collect();
        let vars = (1..n).map(|i| format!("y{i}")).collect();
        return SystemSpec::new(n - 1, supports, format!("cyclic-reduced n={n}"))
            .expect("generated supports are valid")
            .with_variables(vars);
    }
    supports.push(vec![
        IntVector::from_i64s(&vec![1; n]),
        IntVector::zeros(n),
    ]);
    let vars = (0..n).map(|i| format!("x{i}")).collect();
    SystemSpec::new(n, supports, format!("cyclic n={n}"))
        .expect("generated supports are valid")
        .with_variables(vars)
}

/// Sparse polynomial with exact coefficients.
#[derive(Clone, Debug, Default)]
struct Poly {
    dim: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl Poly {
    fn constant(dim: usize, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0; dim], BigInt::from(c));
        }
        Self { dim, terms }
    }

    fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Self {
            dim,
            terms: BTreeMap::from([(e, BigInt::from(1))]),
        }
    }

    fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            *out.terms.entry(e.clone()).or_insert_with(BigInt::zero) += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-1))
    }

    fn scale(&self, k: i64) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                *terms.entry(e).or_insert_with(BigInt::zero) += x * y;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly {
            dim: self.dim,
            terms,
        }
    }

    fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::constant(self.dim, 1), |acc, _| acc.mul(self))
    }

    fn product<'a>(dim: usize, factors: impl Iterator<Item = &'a Poly>) -> Poly {
        factors.fold(Poly::constant(dim, 1), |acc, f| acc.mul(f))
    }

    fn support(&self) -> Vec<IntVector> {
        self.terms.keys().map(|e| IntVector::from_i64s(e)).collect()
    }
}

/// Distinct primes used as generic masses and vorticities.
fn generic_constants(n: usize) -> Vec<i64> {
    (2i64..)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .take(n)
        .collect()
}

/// Relative equilibria of `n` point vortices in the plane.
///
/// Variables `z_1..z_n` (positions) and `w_1..w_n` (their conjugates).
/// Equation `i`, with the rotation rate normalized to one and denominators
/// cleared:
///
/// ```text
/// z_i * prod_{j != i} (w_i - w_j) - sum_{j != i} G_j * prod_{k != i, j} (w_i - w_k)
/// ```
///
/// followed by the conjugate equations with `z` and `w` swapped. The
/// vorticities `G_j` are the first `n` primes.
pub fn gen_nvortex(n: usize) -> SystemSpec {
    let dim = 2 * n;
    let z: Vec<Poly> = (0..n).map(|i| Poly::var(dim, i)).collect();
    let w: Vec<Poly> = (0..n).map(|i| Poly::var(dim, n + i)).collect();
    let gamma = generic_constants(n);
    let half = |a: &[Poly], b: &[Poly]| -> Vec<Poly> {
        (0..n)
            .map(|i| {
                let diff: Vec<Poly> = (0..n).map(|j| b[i].sub(&b[j])).collect();
                let all = Poly::product(dim, (0..n).filter(|&j| j != i).map(|j| &diff[j]));
                let mut eq = a[i].mul(&all);
                for j in (0..n).filter(|&j| j != i) {
                    let rest =
                        Poly::product(dim, (0..n).filter(|&k| k != i && k != j).map(|k| &diff[k]));
                    eq = eq.sub(&rest.scale(gamma[j]));
                }
                eq
            })
            .collect()
    };
    let mut eqs = half(&z, &w);
    eqs.extend(half(&w, &z));
    let vars = (1..=n)
        .map(|i| format!("z{i}"))
        .chain((1..=n).map(|i| format!("w{i}")))
        .collect();
    SystemSpec::new(dim, eqs.iter().map(Poly::support).collect(), format!("nvortex n={n}"))
        .expect("generated supports are valid")
        .with_variables(vars)
}

/// Central configurations of `n` bodies in the plane.
///
/// Variables `z_1..z_n`, their conjugates `w_1..w_n`, then the mutual
/// distances `r_ij` for `i < j`. Equation `i`, with the multiplier normalized
/// and denominators cleared:
///
/// ```text
/// z_i * prod_{j != i} r_ij^3 + sum_{j != i} m_j (z_j - z_i) * prod_{k != i, j} r_ik^3
/// ```
///
/// then the same in `w`, then `r_ij^2 - (z_i - z_j)(w_i - w_j)` for each pair.
/// The masses `m_j` are the first `n` primes.
pub fn gen_nbody(n: usize) -> SystemSpec {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let dim = 2 * n + pairs.len();
    let z: Vec<Poly> = (0..n).map(|i| Poly::var(dim, i)).collect();
    let w: Vec<Poly> = (0..n).map(|i| Poly::var(dim, n + i)).collect();
    let r = |i: usize, j: usize| -> Poly {
        let (a, b) = (i.min(j), i.max(j));
        let idx = pairs.iter().position(|&p| p == (a, b)).expect("pair exists");
        Poly::var(dim, 2 * n + idx)
    };
    let mass = generic_constants(n);
    let half = |x: &[Poly]| -> Vec<Poly> {
        (0..n)
            .map(|i| {
                let cubes: Vec<Poly> = (0..n)
                    .map(|j| if j == i { Poly::constant(dim, 1) } else { r(i, j).pow(3) })
                    .collect();
                let all = Poly::product(dim, cubes.iter());
                let mut eq = x[i].mul(&all);
                for j in (0..n).filter(|&j| j != i) {
                    let rest = Poly::product(
                        dim,
                        (0..n).filter(|&k| k != i && k != j).map(|k| &cubes[k]),
                    );
                    eq = eq.add(&x[j].sub(&x[i]).mul(&rest).scale(mass[j]));
                }
                eq
            })
            .collect()
    };
    let mut eqs = half(&z);
    eqs.extend(half(&w));
    for &(i, j) in &pairs {
        eqs.push(r(i, j).pow(2).sub(&z[i].sub(&z[j]).mul(&w[i].sub(&w[j]))));
    }
    let vars = (1..=n)
        .map(|i| format!("z{i}"))
        .chain((1..=n).map(|i| format!("w{i}")))
        .chain(pairs.iter().map(|(i, j)| format!("r{}{}", i + 1, j + 1)))
        .collect();
    SystemSpec::new(dim, eqs.iter().map(Poly::support).collect(), format!("nbody n={n}"))
        .expect("generated supports are valid")
        .with_variables(vars)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    #[test]
    fn simplices_shape_and_determinism() {
        let s = gen_generic_simplices(3, 7);
        assert_eq!(s.ambient_dim, 3);
        assert_eq!(s.supports.len(), 2);
        for sup in &s.supports {
            assert_eq!(sup.len(), 4);
            for p in sup {
                assert!(p.iter().all(|c| (0..=30).contains(&c.to_string().parse::<i64>().unwrap())));
            }
        }
        assert_eq!(s, gen_generic_simplices(3, 7));
        assert_ne!(s, gen_generic_simplices(3, 8));
    }

    #[test]
    fn simplices_have_all_edges() {
        for p in gen_generic_simplices(5, 1).polytopes().unwrap() {
            assert_eq!(p.edge_count(), 15);
        }
    }

    #[test]
    fn cyclic_structure() {
        let s = gen_cyclic(4, false);
        assert_eq!(s.ambient_dim, 4);
        assert_eq!(s.supports.len(), 4);
        assert_eq!(
            s.supports[0],
            vec![v(&[0, 0, 0, 1]), v(&[0, 0, 1, 0]), v(&[0, 1, 0, 0]), v(&[1, 0, 0, 0])]
        );
        assert_eq!(s.supports[3], vec![v(&[0, 0, 0, 0]), v(&[1, 1, 1, 1])]);
        let s = gen_cyclic(7, false);
        for (i, sup) in s.supports.iter().enumerate().take(6).skip(1) {
            assert_eq!(sup.len(), 7);
            for p in sup {
                let ones = p.iter().filter(|c| **c == BigInt::from(1)).count();
                assert_eq!(ones, i + 1);
            }
        }
    }

    #[test]
    fn reduced_cyclic_four() {
        let s = gen_cyclic(4, true);
        assert_eq!(s.ambient_dim, 3);
        assert_eq!(s.supports.len(), 3);
        assert_eq!(
            s.supports[0],
            vec![v(&[0, 0, 0]), v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[1, 0, 0])]
        );
        assert_eq!(
            s.supports[1],
            vec![v(&[0, 0, 1]), v(&[0, 1, 1]), v(&[1, 0, 0]), v(&[1, 1, 0])]
        );
        assert_eq!(
            s.supports[2],
            vec![v(&[0, 1, 1]), v(&[1, 0, 1]), v(&[1, 1, 0]), v(&[1, 1, 1])]
        );
        assert_eq!(gen_cyclic(7, true).supports.len(), 6);
    }

    #[test]
    fn mechanics_shapes() {
        let s = gen_nvortex(3);
        assert_eq!((s.ambient_dim, s.supports.len()), (6, 6));
        let s = gen_nbody(3);
        assert_eq!((s.ambient_dim, s.supports.len()), (9, 9));
        // r_12^2 - (z1 - z2)(w1 - w2) has five monomials
        assert_eq!(s.supports[6].len(), 5);
    }

    #[test]
    fn primes() {
        assert_eq!(generic_constants(5), vec![2, 3, 5, 7, 11]);
    }
}
