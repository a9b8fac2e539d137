use super::qmatrix::{column_echelon_basis, echelon_pivot_rows, is_zero_vec, QMatrix};
use super::solve::solve_mixed;
use crate::fgab::{cokernel_invariants, column_hnf, hnf_coords, smith, IntMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Subgroup W + ⟨Λ⟩ of ℚⁿ: a rational subspace plus a finitely generated
/// lattice. Stored in normal form — W as the reduced column echelon basis of
/// the subspace, Λ reduced modulo W and Hermite-normalized over a minimal
/// common denominator — so equality of subgroups is equality of fields.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticeSubgroup {
    dim: usize,
    w: QMatrix,
    w_pivots: Vec<usize>,
    /// Λ = lam_int / lam_den, lam_int in column HNF.
    lam_int: IntMatrix,
    lam_den: BigInt,
}

impl LatticeSubgroup {
    pub fn new(dim: usize, w_gens: &QMatrix, lam_gens: &QMatrix) -> Self {
        assert_eq!(w_gens.rows(), dim, "subspace generators of wrong dimension");
        assert_eq!(lam_gens.rows(), dim, "lattice generators of wrong dimension");
        let w = column_echelon_basis(w_gens);
        let w_pivots = echelon_pivot_rows(&w);
        let mut cols: Vec<Vec<BigRational>> = Vec::new();
        for j in 0..lam_gens.cols() {
            let r = reduce_mod_subspace(&w, &w_pivots, &lam_gens.col(j));
            if !is_zero_vec(&r) {
                cols.push(r);
            }
        }
        let (lam_int, lam_den) = if cols.is_empty() {
            (IntMatrix::zeros(dim, 0), BigInt::one())
        } else {
            let raw = QMatrix::from_cols(dim, &cols);
            let (cleared, d) = raw.clear_denominators();
            (column_hnf(&cleared), d)
        };
        LatticeSubgroup {
            dim,
            w,
            w_pivots,
            lam_int,
            lam_den,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(dim, &QMatrix::zeros(dim, 0), &QMatrix::zeros(dim, 0))
    }

    pub fn full(dim: usize) -> Self {
        Self::new(dim, &QMatrix::identity(dim), &QMatrix::zeros(dim, 0))
    }

    /// The standard lattice spanned by the unit vectors e_lo, …, e_{dim−1}.
    pub fn standard_lattice(dim: usize, lo: usize) -> Self {
        let gens = QMatrix::from_fn(dim, dim - lo, |i, j| {
            if i == lo + j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        Self::new(dim, &QMatrix::zeros(dim, 0), &gens)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical subspace basis.
    pub fn w(&self) -> &QMatrix {
        &self.w
    }

    pub fn subspace_dim(&self) -> usize {
        self.w.cols()
    }

    /// Canonical lattice generators (already reduced modulo W).
    pub fn lam(&self) -> QMatrix {
        QMatrix::from_fn(self.dim, self.lam_int.cols(), |i, j| {
            BigRational::new(self.lam_int.at(i, j).clone(), self.lam_den.clone())
        })
    }

    pub fn lattice_rank(&self) -> usize {
        self.lam_int.cols()
    }

    pub fn is_trivial(&self) -> bool {
        self.w.cols() == 0 && self.lam_int.cols() == 0
    }

    pub fn is_full_space(&self) -> bool {
        self.w.cols() == self.dim
    }

    pub fn reduce_mod_w(&self, x: &[BigRational]) -> Vec<BigRational> {
        reduce_mod_subspace(&self.w, &self.w_pivots, x)
    }

    pub fn contains_vec(&self, x: &[BigRational]) -> bool {
        self.decompose(x).is_some()
    }

    /// Writes x = W·a + Λ·s with a rational, s integer; None if x is not a
    /// member.
    pub fn decompose(&self, x: &[BigRational]) -> Option<(Vec<BigRational>, Vec<BigInt>)> {
        assert_eq!(x.len(), self.dim);
        let a: Vec<BigRational> = self.w_pivots.iter().map(|&p| x[p].clone()).collect();
        let r = self.reduce_mod_w(x);
        if is_zero_vec(&r) {
            return Some((a, vec![BigInt::zero(); self.lam_int.cols()]));
        }
        let scaled: Vec<BigRational> = r
            .iter()
            .map(|v| v * BigRational::from_integer(self.lam_den.clone()))
            .collect();
        if !scaled.iter().all(|v| v.is_integer()) {
            return None;
        }
        let int_vec: Vec<BigInt> = scaled.into_iter().map(|v| v.to_integer()).collect();
        let s = hnf_coords(&self.lam_int, &int_vec)?;
        Some((a, s))
    }

    pub fn sum(&self, other: &LatticeSubgroup) -> LatticeSubgroup {
        assert_eq!(self.dim, other.dim);
        LatticeSubgroup::new(
            self.dim,
            &self.w.hstack(&other.w),
            &self.lam().hstack(&other.lam()),
        )
    }

    /// Image under a linear map into ℚ^{m.rows()}.
    pub fn apply(&self, m: &QMatrix) -> LatticeSubgroup {
        assert_eq!(m.cols(), self.dim);
        LatticeSubgroup::new(m.rows(), &m.mul(&self.w), &m.mul(&self.lam()))
    }

    /// Preimage {x : m·x ∈ self} under a linear map m: ℚᵖ → ℚ^dim.
    pub fn preimage(&self, m: &QMatrix) -> LatticeSubgroup {
        assert_eq!(m.rows(), self.dim);
        let p = m.cols();
        // m·x − W·a − Λ·s = 0 with (x, a) rational and s integer
        let a_block = m.hstack(&self.w.neg());
        let b_block = self.lam().neg();
        let sol = solve_mixed(&a_block, &b_block);
        let x_rows: Vec<usize> = (0..p).collect();
        let w_part = sol.subspace.select_rows(&x_rows);
        let lam_part = sol.u_lattice.select_rows(&x_rows);
        LatticeSubgroup::new(p, &w_part, &lam_part)
    }

    pub fn intersect(&self, other: &LatticeSubgroup) -> LatticeSubgroup {
        assert_eq!(self.dim, other.dim);
        // W₁a + Λ₁s = W₂b + Λ₂t: solve for (a, b) rational, (s, t) integer,
        // then read the common element off the left-hand side.
        let a_block = self.w.hstack(&other.w.neg());
        let b_block = self.lam().hstack(&other.lam().neg());
        let sol = solve_mixed(&a_block, &b_block);
        let k1 = self.w.cols();
        let l1 = self.lam_int.cols();
        let a_rows: Vec<usize> = (0..k1).collect();
        let s_rows: Vec<usize> = (0..l1).collect();
        let w_part = self.w.mul(&sol.subspace.select_rows(&a_rows));
        let lam_from_a = self.w.mul(&sol.u_lattice.select_rows(&a_rows));
        let lam_from_s = self
            .lam()
            .mul(&QMatrix::from_int(&sol.t_lattice.select_rows(&s_rows)));
        LatticeSubgroup::new(self.dim, &w_part, &lam_from_a.add(&lam_from_s))
    }

    pub fn contains(&self, other: &LatticeSubgroup) -> bool {
        assert_eq!(self.dim, other.dim);
        // the subspace part must land in our subspace (divisibility), the
        // lattice generators merely need membership
        for j in 0..other.w.cols() {
            if self.w.solve(&other.w.col(j)).is_none() {
                return false;
            }
        }
        let lam = other.lam();
        (0..lam.cols()).all(|j| self.contains_vec(&lam.col(j)))
    }
}

impl fmt::Debug for LatticeSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LatticeSubgroup(dim {}, subspace {}, lattice rank {})",
            self.dim,
            self.w.cols(),
            self.lam_int.cols()
        )
    }
}

fn reduce_mod_subspace(w: &QMatrix, pivots: &[usize], x: &[BigRational]) -> Vec<BigRational> {
    assert_eq!(x.len(), w.rows());
    let mut r = x.to_vec();
    for (j, &p) in pivots.iter().enumerate() {
        if r[p].is_zero() {
            continue;
        }
        let c = r[p].clone();
        for i in 0..w.rows() {
            if !w.at(i, j).is_zero() {
                let v = &r[i] - &c * w.at(i, j);
                r[i] = v;
            }
        }
    }
    r
}

/// Isomorphism type ℚᵃ ⊕ (ℚ/ℤ)ᵇ ⊕ ℤᶜ ⊕ ⊕ᵢ ℤ/dᵢ of a quotient of lattice
/// subgroups.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MixedGroup {
    pub q_rank: usize,
    pub qz_rank: usize,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl MixedGroup {
    pub fn is_trivial(&self) -> bool {
        self.q_rank == 0 && self.qz_rank == 0 && self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for MixedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut tokens: Vec<String> = Vec::new();
        for _ in 0..self.q_rank {
            tokens.push("Q".into());
        }
        for _ in 0..self.qz_rank {
            tokens.push("Q/Z".into());
        }
        for _ in 0..self.free_rank {
            tokens.push("Z".into());
        }
        for d in &self.torsion {
            tokens.push(format!("Z/{d}"));
        }
        write!(f, "{}", tokens.join("+"))
    }
}

/// Isomorphism type of big/small for lattice subgroups small ⊆ big.
///
/// Reduce modulo the small subspace; what remains of `big` is a subspace V̄
/// plus a lattice with basis B. Each small lattice generator decomposes as
/// V̄·c + B·n with n integer; Smith-reducing the integer parts splits the
/// relators into pure-subspace ones (each quotients a ℚ-direction down to
/// ℚ/ℤ) and diagonal ones d·eₖ + c̃ₖ. The latter contribute ℤ/d exactly,
/// because (q, m) ↦ (q − (m_k/d)·c̃ₖ, m) is an automorphism of V̄ ⊕ ℤ^l
/// turning the relator into the pure d·eₖ.
pub fn quotient_invariants(big: &LatticeSubgroup, small: &LatticeSubgroup) -> MixedGroup {
    assert_eq!(big.dim(), small.dim());
    debug_assert!(big.contains(small), "quotient requires small ⊆ big");
    let dim = big.dim();
    // everything modulo the small subspace
    let pi = |x: &[BigRational]| small.reduce_mod_w(x);
    let big_w_cols: Vec<Vec<BigRational>> = (0..big.w().cols()).map(|j| pi(&big.w().col(j))).collect();
    let v_bar = column_echelon_basis(&QMatrix::from_cols(dim, &big_w_cols));
    let v_pivots = echelon_pivot_rows(&v_bar);
    let v = v_bar.cols();
    // lattice part of big modulo (small subspace + V̄)
    let big_lam = big.lam();
    let mut b_cols: Vec<Vec<BigRational>> = Vec::new();
    for j in 0..big_lam.cols() {
        let r = reduce_mod_subspace(&v_bar, &v_pivots, &pi(&big_lam.col(j)));
        if !is_zero_vec(&r) {
            b_cols.push(r);
        }
    }
    let (b_int, b_den) = if b_cols.is_empty() {
        (IntMatrix::zeros(dim, 0), BigInt::one())
    } else {
        let raw = QMatrix::from_cols(dim, &b_cols);
        let (cleared, d) = raw.clear_denominators();
        (column_hnf(&cleared), d)
    };
    let l = b_int.cols();
    let b_mat = QMatrix::from_fn(dim, l, |i, j| {
        BigRational::new(b_int.at(i, j).clone(), b_den.clone())
    });

    // decompose the small lattice generators as V̄·c + B·n
    let small_lam = small.lam();
    let m = small_lam.cols();
    let mut c_cols: Vec<Vec<BigRational>> = Vec::new();
    let mut n_cols: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..m {
        let z = pi(&small_lam.col(j));
        let z_bar = reduce_mod_subspace(&v_bar, &v_pivots, &z);
        let scaled: Vec<BigInt> = z_bar
            .iter()
            .map(|x| {
                let s = x * BigRational::from_integer(b_den.clone());
                assert!(s.is_integer(), "small generator escapes the big lattice");
                s.to_integer()
            })
            .collect();
        let n = hnf_coords(&b_int, &scaled).expect("small ⊆ big: lattice coords must exist");
        let bn = b_mat.mul_vec(&n.iter().cloned().map(BigRational::from_integer).collect::<Vec<_>>());
        let diff: Vec<BigRational> = z.iter().zip(&bn).map(|(a, b)| a - b).collect();
        let c: Vec<BigRational> = v_pivots.iter().map(|&p| diff[p].clone()).collect();
        debug_assert!(is_zero_vec(
            &v_bar
                .mul_vec(&c)
                .iter()
                .zip(&diff)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>()
        ));
        c_cols.push(c);
        n_cols.push(n);
    }
    let n_mat = IntMatrix::from_fn(l, m, |i, j| n_cols[j][i].clone());
    let c_mat = QMatrix::from_fn(v, m, |i, j| c_cols[j][i].clone());

    // Smith-split the integer parts; recombine the subspace parts with V
    let sm = smith(&n_mat);
    let r = sm.rank;
    let c_prime = c_mat.mul(&QMatrix::from_int(&sm.v));
    let mut torsion: Vec<BigInt> = Vec::new();
    for k in 0..r {
        let d = sm.s.at(k, k).abs();
        if d > BigInt::one() {
            torsion.push(d);
        }
    }
    // pure-subspace relators: columns of C′ beyond the Smith rank generate a
    // lattice in V̄-coordinates
    let pure_cols: Vec<usize> = (r..m).collect();
    let pure = c_prime.select_cols(&pure_cols);
    let rho = pure.rank();
    MixedGroup {
        q_rank: v - rho,
        qz_rank: rho,
        free_rank: l - r,
        torsion: normalize_chain(torsion),
    }
}

/// Renormalizes a torsion multiset into a divisibility chain.
fn normalize_chain(torsion: Vec<BigInt>) -> Vec<BigInt> {
    if torsion.len() < 2 {
        return torsion;
    }
    let n = torsion.len();
    let diag = IntMatrix::from_fn(n, n, |i, j| {
        if i == j {
            torsion[i].clone()
        } else {
            BigInt::zero()
        }
    });
    cokernel_invariants(&diag)
}
