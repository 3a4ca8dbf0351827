//! Clifford algebras generated by fermion annihilation and creation operators.
//!
//! Mode `k` of `n` is represented by the Jordan-Wigner ladder
//! `a_k = Z ⊗ … ⊗ Z ⊗ σ⁻ ⊗ 1 ⊗ … ⊗ 1` with `σ⁻ = [[0,0],[1,0]]` and
//! `Z = diag(1,-1)`. All entries are Gaussian integers, so every identity is
//! checked exactly.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ga::{p3, p3_bar, MatrixRep, Multivector};

pub type GaussInt = Complex<i64>;

pub const MAX_MODES: usize = 6;
/// Largest mode count for which the algebra dimension is computed.
pub const MAX_RANK_MODES: usize = 3;

const ZERO: GaussInt = Complex::new(0, 0);
const ONE: GaussInt = Complex::new(1, 0);
const I: GaussInt = Complex::new(0, 1);

/// Dense square matrix of Gaussian integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<GaussInt>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.data[k * dim + k] = ONE;
        }
        m
    }

    pub fn from_rows<const N: usize>(rows: [[GaussInt; N]; N]) -> Self {
        Self {
            dim: N,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> GaussInt {
        self.data[r * self.dim + c]
    }

    pub fn entries(&self) -> &[GaussInt] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        out
    }

    pub fn scale(&self, z: GaussInt) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|e| e * z).collect(),
        }
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let (n, m) = (self.dim, rhs.dim);
        let dim = n * m;
        let mut out = Self::zeros(dim);
        for r1 in 0..n {
            for c1 in 0..n {
                let a = self.get(r1, c1);
                if a == ZERO {
                    continue;
                }
                for r2 in 0..m {
                    for c2 in 0..m {
                        out.data[(r1 * m + r2) * dim + c1 * m + c2] = a * rhs.get(r2, c2);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| *e == ZERO)
    }

    /// `A B + B A`.
    pub fn anticommutator(&self, rhs: &Self) -> Self {
        &(self * rhs) + &(rhs * self)
    }

    /// `A B - B A`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    /// The 2×2 case as a floating-point matrix representation.
    pub fn to_matrix_rep(&self) -> Option<MatrixRep> {
        if self.dim != 2 {
            return None;
        }
        let f = |z: GaussInt| Complex64::new(z.re as f64, z.im as f64);
        Some(MatrixRep([
            [f(self.get(0, 0)), f(self.get(0, 1))],
            [f(self.get(1, 0)), f(self.get(1, 1))],
        ]))
    }

    /// `λ` with `self = λ·other` exactly, if one exists.
    fn ratio_to(&self, other: &Self) -> Option<GaussInt> {
        let k = other.data.iter().position(|e| *e != ZERO)?;
        let (num, den) = (self.data[k], other.data[k]);
        // Exact Gaussian-integer division.
        let n = num * den.conj();
        let d = den.norm_sqr();
        if n.re % d != 0 || n.im % d != 0 {
            return None;
        }
        let lambda = Complex::new(n.re / d, n.im / d);
        (*self == other.scale(lambda)).then_some(lambda)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        let n = self.dim;
        assert_eq!(n, rhs.dim, "dimension mismatch");
        let mut out = IntMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        IntMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        IntMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        self.scale(-ONE)
    }
}

/// Annihilation operators `a_k` and their adjoints for `n` modes.
#[derive(Clone, Debug)]
pub struct FermionModeSet {
    pub n: usize,
    pub annihilators: Vec<IntMatrix>,
    pub creators: Vec<IntMatrix>,
}

pub fn build_modes(n: usize) -> Result<FermionModeSet> {
    if n == 0 {
        return Err(Error::InvalidArgument {
            module: "fermion",
            parameter: "modes",
            reason: "at least one mode is required".into(),
        });
    }
    if n > MAX_MODES {
        return Err(Error::TooManyModes {
            modes: n,
            max: MAX_MODES,
        });
    }
    let lower = IntMatrix::from_rows([[ZERO, ZERO], [ONE, ZERO]]);
    let z = IntMatrix::from_rows([[ONE, ZERO], [ZERO, -ONE]]);
    let id = IntMatrix::identity(2);

    let annihilators: Vec<IntMatrix> = (0..n)
        .map(|k| {
            let mut m = IntMatrix::identity(1);
            for j in 0..n {
                let factor = match j.cmp(&k) {
                    std::cmp::Ordering::Less => &z,
                    std::cmp::Ordering::Equal => &lower,
                    std::cmp::Ordering::Greater => &id,
                };
                m = m.kron(factor);
            }
            m
        })
        .collect();
    let creators = annihilators.iter().map(IntMatrix::adjoint).collect();
    Ok(FermionModeSet {
        n,
        annihilators,
        creators,
    })
}

impl FermionModeSet {
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Nilpotency and the canonical anticommutation relations, exactly.
    pub fn car_holds(&self) -> bool {
        let id = IntMatrix::identity(self.dim());
        let (a, ad) = (&self.annihilators, &self.creators);
        for j in 0..self.n {
            if !(&a[j] * &a[j]).is_zero() || !(&ad[j] * &ad[j]).is_zero() {
                return false;
            }
            for k in 0..self.n {
                let mixed = a[j].anticommutator(&ad[k]);
                let want = if j == k {
                    id.clone()
                } else {
                    IntMatrix::zeros(self.dim())
                };
                if mixed != want
                    || !a[j].anticommutator(&a[k]).is_zero()
                    || !ad[j].anticommutator(&ad[k]).is_zero()
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Anticommuting unit vectors built from the modes.
#[derive(Clone, Debug)]
pub struct GeneratedBasis {
    pub vectors: Vec<IntMatrix>,
}

/// `e_{2k+1} = a_k + a_k†`, `e_{2k+2} = i(a_k - a_k†)`; a single mode also gets
/// `e_3 = a†a - a a†`.
pub fn generate_basis(modes: &FermionModeSet) -> GeneratedBasis {
    let mut vectors = Vec::with_capacity(2 * modes.n + 1);
    for (a, ad) in modes.annihilators.iter().zip(&modes.creators) {
        vectors.push(a + ad);
        vectors.push((a - ad).scale(I));
    }
    if modes.n == 1 {
        let (a, ad) = (&modes.annihilators[0], &modes.creators[0]);
        vectors.push(&(ad * a) - &(a * ad));
    }
    GeneratedBasis { vectors }
}

impl GeneratedBasis {
    pub fn dim(&self) -> usize {
        self.vectors[0].dim()
    }

    /// `e_j e_k + e_k e_j = 2 δ_jk`, exactly.
    pub fn clifford_holds(&self) -> bool {
        let two = IntMatrix::identity(self.dim()).scale(Complex::new(2, 0));
        self.vectors.iter().enumerate().all(|(j, ej)| {
            self.vectors.iter().enumerate().all(|(k, ek)| {
                let ac = ej.anticommutator(ek);
                if j == k {
                    ac == two
                } else {
                    ac.is_zero()
                }
            })
        })
    }

    /// Products `e_S` over every subset `S` of the generators, in binary order.
    pub fn blade_products(&self) -> Vec<IntMatrix> {
        let m = self.vectors.len();
        (0..1usize << m)
            .map(|mask| {
                let mut p = IntMatrix::identity(self.dim());
                for (j, e) in self.vectors.iter().enumerate() {
                    if mask & (1 << j) != 0 {
                        p = &p * e;
                    }
                }
                p
            })
            .collect()
    }

    /// Number of real-linearly independent blade products, by SVD of the
    /// products flattened to real vectors.
    pub fn algebra_dimension(&self) -> usize {
        let products = self.blade_products();
        let len = 2 * self.dim() * self.dim();
        let cols: Vec<f64> = products
            .iter()
            .flat_map(|p| p.entries().iter().flat_map(|z| [z.re as f64, z.im as f64]))
            .collect();
        let m = DMatrix::from_column_slice(len, products.len(), &cols);
        let sv = m.singular_values();
        let tol = 1e-9 * sv.max();
        sv.iter().filter(|s| **s > tol).count()
    }
}

/// Outcome of the generation checks, as emitted by the front end.
#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub n: usize,
    pub car_ok: bool,
    pub clifford_ok: bool,
    /// Dimension of the generated algebra; computed for `n ≤ 3` only.
    pub dimension: Option<usize>,
}

pub fn generation_report(n: usize) -> Result<GenerationReport> {
    let modes = build_modes(n)?;
    let basis = generate_basis(&modes);
    Ok(GenerationReport {
        n,
        car_ok: modes.car_holds(),
        clifford_ok: basis.clifford_holds(),
        dimension: (n <= MAX_RANK_MODES).then(|| basis.algebra_dimension()),
    })
}

/// The two commuting su(2) triples of bivectors at `n = 2`.
#[derive(Clone, Debug, Serialize)]
pub struct Spin4Report {
    /// Every self-dual generator commutes with every anti-self-dual one.
    pub triples_commute: bool,
    /// `[K_a, K_b] = λ K_c` cyclically with one λ per triple.
    pub self_dual_closes: bool,
    pub anti_self_dual_closes: bool,
}

/// Splits the six bivectors `e_j e_k` of the `n = 2` algebra into
/// `K±_a = e_b e_c ± e_a e_4` and checks the `su(2) ⊕ su(2)` structure.
pub fn spin4_check() -> Spin4Report {
    let modes = build_modes(2).expect("two modes are within range");
    let e = generate_basis(&modes).vectors;
    let biv = |j: usize, k: usize| &e[j] * &e[k];
    let triple = |sign: i64| -> Vec<IntMatrix> {
        [(1, 2, 0), (2, 0, 1), (0, 1, 2)]
            .iter()
            .map(|&(b, c, a)| &biv(b, c) + &biv(a, 3).scale(Complex::new(sign, 0)))
            .collect()
    };
    let plus = triple(1);
    let minus = triple(-1);
    let triples_commute = plus
        .iter()
        .all(|p| minus.iter().all(|m| p.commutator(m).is_zero()));
    let closes = |k: &[IntMatrix]| {
        let lambdas: Vec<Option<GaussInt>> = (0..3)
            .map(|a| k[a].commutator(&k[(a + 1) % 3]).ratio_to(&k[(a + 2) % 3]))
            .collect();
        lambdas[0].is_some() && lambdas.iter().all(|l| *l == lambdas[0])
    };
    Spin4Report {
        triples_commute,
        self_dual_closes: closes(&plus),
        anti_self_dual_closes: closes(&minus),
    }
}

/// Single-mode operators compared with elements of the algebra of physical
/// space.
#[derive(Clone, Debug, Serialize)]
pub struct NullFlagReport {
    /// `a = e1 P₃`, coefficient for coefficient.
    pub annihilator_is_e1_p3: bool,
    /// `a† = P₃ e1 = e1 P̄₃`.
    pub creator_is_p3_e1: bool,
    /// `a ā = 0` and `a† ā† = 0`.
    pub null: bool,
    pub nilpotent: bool,
    /// `a†a = P₃`, `a a† = P̄₃`.
    pub projectors: bool,
    /// `a†` takes the spin-down ideal state `e1 P₃` to the spin-up state `P₃`.
    pub raises_down_to_up: bool,
}

impl NullFlagReport {
    pub fn all_ok(&self) -> bool {
        self.annihilator_is_e1_p3
            && self.creator_is_p3_e1
            && self.null
            && self.nilpotent
            && self.projectors
            && self.raises_down_to_up
    }
}

pub fn null_flag_check(modes: &FermionModeSet) -> Result<NullFlagReport> {
    if modes.n != 1 {
        return Err(Error::InvalidArgument {
            module: "fermion",
            parameter: "modes",
            reason: format!("null-flag check needs a single mode, got {}", modes.n),
        });
    }
    let to_mv = |m: &IntMatrix| Multivector::from_rep(&m.to_matrix_rep().expect("2×2"));
    let a = to_mv(&modes.annihilators[0]);
    let ad = to_mv(&modes.creators[0]);
    let e1 = Multivector::E1;
    let zero = num_complex::Complex64::new(0.0, 0.0);
    Ok(NullFlagReport {
        annihilator_is_e1_p3: a == e1 * p3(),
        creator_is_p3_e1: ad == p3() * e1 && ad == e1 * p3_bar(),
        null: a.quad_form() == zero && ad.quad_form() == zero,
        nilpotent: a * a == Multivector::ZERO && ad * ad == Multivector::ZERO,
        projectors: ad * a == p3() && a * ad == p3_bar(),
        raises_down_to_up: ad * (e1 * p3()) == p3(),
    })
}
