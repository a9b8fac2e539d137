//! Length-one injective resolutions 0 → G → I⁰ → I¹ → 0 of finitely
//! generated abelian groups, with a verified horseshoe construction for
//! short exact coefficient sequences.

use crate::divlin::{
    div_cokernel, div_image, div_kernel, qr, solve_mixed, DivGroup, DivMorphism, LatticeSubgroup,
    QMatrix,
};
use crate::error::{Error, Result};
use crate::fgab::{check_exactness, column_hnf, hnf_member, smith, FgAbGroup, FgMorphism, IntMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

/// 0 → G →α I⁰ →β I¹ → 0 with I⁰, I¹ divisible. `alpha` columns are the
/// rational images of the presentation generators in the ambient
/// coordinates of I⁰.
#[derive(Clone, Debug)]
pub struct InjectiveResolution {
    g: FgAbGroup,
    alpha: QMatrix,
    beta: DivMorphism,
}

impl InjectiveResolution {
    /// Wraps the data, checking shapes and that every relator of G lands in
    /// the lattice of I⁰ (otherwise α is not even a homomorphism). Deeper
    /// properties — injectivity, exactness at I⁰, surjectivity of β — are
    /// the business of [`verify_resolution`].
    pub fn new(g: FgAbGroup, alpha: QMatrix, beta: DivMorphism) -> Result<Self> {
        if alpha.rows() != beta.source().dim() || alpha.cols() != g.ngens() {
            return Err(Error::DimensionMismatch {
                context: "resolution embedding matrix".into(),
                expected: format!("{}x{}", beta.source().dim(), g.ngens()),
                got: format!("{}x{}", alpha.rows(), alpha.cols()),
            });
        }
        let lat = beta.source().lattice();
        for j in 0..g.relations().cols() {
            let rel: Vec<BigRational> = g
                .relations()
                .col(j)
                .into_iter()
                .map(BigRational::from_integer)
                .collect();
            if !lat.contains_vec(&alpha.mul_vec(&rel)) {
                return Err(Error::IllDefinedMorphism { relator: j });
            }
        }
        Ok(InjectiveResolution { g, alpha, beta })
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.g
    }

    pub fn i0(&self) -> DivGroup {
        self.beta.source()
    }

    pub fn i1(&self) -> DivGroup {
        self.beta.target()
    }

    pub fn alpha(&self) -> &QMatrix {
        &self.alpha
    }

    pub fn beta(&self) -> &DivMorphism {
        &self.beta
    }

    /// α(G) as a subgroup of I⁰: the generator images together with the
    /// defining lattice.
    pub fn alpha_image(&self) -> LatticeSubgroup {
        let dim = self.i0().dim();
        LatticeSubgroup::new(
            dim,
            &QMatrix::zeros(dim, 0),
            &self.alpha.hstack(&self.i0().lattice().lam()),
        )
    }
}

/// The fixed canonical resolution of a group in canonical form: ℤ factors
/// get ℚ → ℚ/ℤ, each ℤ/q factor gets ℚ/ℤ →×q ℚ/ℤ with the generator
/// embedded at 1/q, assembled blockwise (free coordinates first).
pub fn build_resolution(g: &FgAbGroup) -> Result<InjectiveResolution> {
    if !g.is_canonical_form() {
        return Err(Error::NotCanonicalForm);
    }
    let f = g.free_rank();
    let torsion = g.torsion_factors();
    let t = torsion.len();
    let i0 = DivGroup::new(f, t);
    let i1 = DivGroup::new(0, f + t);
    let alpha = QMatrix::from_fn(f + t, f + t, |i, j| {
        if i != j {
            BigRational::zero()
        } else if j < f {
            BigRational::one()
        } else {
            BigRational::new(BigInt::one(), torsion[j - f].clone())
        }
    });
    let beta_matrix = QMatrix::from_fn(f + t, f + t, |i, j| {
        if i != j {
            BigRational::zero()
        } else if j < f {
            BigRational::one()
        } else {
            BigRational::from_integer(torsion[j - f].clone())
        }
    });
    let beta = DivMorphism::new(i0, i1, beta_matrix)?;
    InjectiveResolution::new(g.clone(), alpha, beta)
}

#[derive(Clone, Debug)]
pub struct ResolutionCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ResolutionReport {
    pub checks: Vec<ResolutionCheck>,
}

impl ResolutionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for ResolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "ok   {}", c.name)?;
            } else {
                writeln!(
                    f,
                    "FAIL {}: {}",
                    c.name,
                    c.witness.as_deref().unwrap_or("no witness")
                )?;
            }
        }
        Ok(())
    }
}

fn rat_vec_str(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn int_vec_str(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// A coset representative outside the subgroup, found by scanning scaled
/// unit vectors. Exists whenever the subgroup is proper; the scan depth
/// covers every failure the canonical builders can produce.
fn escape_vector(sub: &LatticeSubgroup) -> Option<Vec<BigRational>> {
    let dim = sub.dim();
    let den = sub.lam().denominator_lcm();
    let cap = (BigInt::from(2) * den).to_i64().unwrap_or(64).clamp(2, 64);
    for i in 0..dim {
        for k in 1..=cap {
            let mut cand = vec![BigRational::zero(); dim];
            cand[i] = qr(1, k);
            if !sub.contains_vec(&cand) {
                return Some(cand);
            }
        }
    }
    None
}

/// First generator of `inner` (subspace basis vector or lattice generator)
/// that fails to lie in `outer`, if containment fails.
fn containment_witness(outer: &LatticeSubgroup, inner: &LatticeSubgroup) -> Option<Vec<BigRational>> {
    for j in 0..inner.w().cols() {
        let col = inner.w().col(j);
        if outer.w().solve(&col).is_none() {
            return Some(col);
        }
    }
    let lam = inner.lam();
    (0..lam.cols())
        .map(|j| lam.col(j))
        .find(|col| !outer.contains_vec(col))
}

/// Checks the three defining properties of a length-one resolution:
/// α has trivial kernel (its integer preimage of the lattice is exactly the
/// relator span), ker β = im α, and β is surjective. Failures carry witness
/// elements.
pub fn verify_resolution(r: &InjectiveResolution) -> ResolutionReport {
    let mut checks = Vec::new();
    let n = r.group().ngens();
    let i0 = r.i0();
    let lat = i0.lattice();

    // integer solutions of α·x ∈ L(I⁰)
    let a_block = QMatrix::zeros(i0.dim(), 0);
    let b_block = r.alpha().hstack(&lat.lam().neg());
    let sol = solve_mixed(&a_block, &b_block);
    let x_rows: Vec<usize> = (0..n).collect();
    let trivial_classes = sol.t_lattice.select_rows(&x_rows);

    let tk_hnf = column_hnf(&trivial_classes);
    let rels = r.group().relations();
    let killed = (0..rels.cols()).find(|&j| !hnf_member(&tk_hnf, &rels.col(j)));
    checks.push(ResolutionCheck {
        name: "alpha kills the relators",
        passed: killed.is_none(),
        witness: killed.map(|j| format!("relator {} maps outside the lattice", j)),
    });

    let rel_hnf = column_hnf(rels);
    let ghost = (0..trivial_classes.cols()).find(|&j| !hnf_member(&rel_hnf, &trivial_classes.col(j)));
    checks.push(ResolutionCheck {
        name: "alpha is injective",
        passed: ghost.is_none(),
        witness: ghost.map(|j| {
            format!(
                "nonzero class {} embeds into the lattice",
                int_vec_str(&trivial_classes.col(j))
            )
        }),
    });

    let ker = div_kernel(r.beta());
    let img = r.alpha_image();
    let missing_img = containment_witness(&ker, &img);
    let missing_ker = containment_witness(&img, &ker);
    let ki_witness = match (&missing_img, &missing_ker) {
        (Some(v), _) => Some(format!("image element {} is not a cycle", rat_vec_str(v))),
        (None, Some(v)) => Some(format!(
            "kernel element {} is not in the image",
            rat_vec_str(v)
        )),
        (None, None) => None,
    };
    checks.push(ResolutionCheck {
        name: "ker(beta) = im(alpha)",
        passed: ki_witness.is_none(),
        witness: ki_witness,
    });

    let coker = div_cokernel(r.beta());
    let surj_witness = if coker.is_trivial() {
        None
    } else {
        let img_b = div_image(r.beta());
        let coset = escape_vector(&img_b)
            .map(|v| format!(", coset of {}", rat_vec_str(&v)))
            .unwrap_or_default();
        Some(format!("cokernel ≅ {}{}", coker, coset))
    };
    checks.push(ResolutionCheck {
        name: "beta is surjective",
        passed: surj_witness.is_none(),
        witness: surj_witness,
    });

    ResolutionReport { checks }
}

/// A linear map F: ℚ^amb → ℚ^e with F·basis = value exactly on a basis of
/// the lattice spanned by the generator columns, and F = 0 on a complement.
/// When the prescription gens[j] ↦ vals[j] is well defined modulo a lattice
/// in the target, F·gens ≡ vals holds modulo that same lattice.
fn extend_prescription(amb: usize, e: usize, gens: &QMatrix, vals: &QMatrix) -> QMatrix {
    assert_eq!(gens.rows(), amb);
    assert_eq!(vals.rows(), e);
    assert_eq!(gens.cols(), vals.cols());
    if gens.cols() == 0 || gens.is_zero() {
        return QMatrix::zeros(e, amb);
    }
    let (cleared, delta) = gens.clear_denominators();
    let basis = column_hnf(&cleared);
    let k = basis.cols();
    let sm = smith(&cleared);
    let mut val_cols: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    for i in 0..k {
        let w = sm
            .solve(&basis.col(i))
            .expect("HNF basis lies inside the generated lattice");
        let wq: Vec<BigRational> = w.into_iter().map(BigRational::from_integer).collect();
        val_cols.push(vals.mul_vec(&wq));
    }
    // the HNF columns have strictly increasing leading rows; unit vectors on
    // the remaining rows complete them to a basis of the ambient space
    let pivot_rows: Vec<usize> = (0..k)
        .map(|j| {
            (0..amb)
                .find(|&i| !basis.at(i, j).is_zero())
                .expect("HNF basis has no zero columns")
        })
        .collect();
    let mut b_ext = QMatrix::from_fn(amb, k, |i, j| {
        BigRational::new(basis.at(i, j).clone(), delta.clone())
    });
    let mut v_ext = QMatrix::from_cols(e, &val_cols);
    for i in 0..amb {
        if !pivot_rows.contains(&i) {
            let mut unit = QMatrix::zeros(amb, 1);
            unit.set(i, 0, BigRational::one());
            b_ext = b_ext.hstack(&unit);
            v_ext = v_ext.hstack(&QMatrix::zeros(e, 1));
        }
    }
    let inv = b_ext
        .inverse()
        .expect("echelon basis plus complementary units is invertible");
    v_ext.mul(&inv)
}

/// Compatible resolutions over a short exact sequence 0 → G → G₁ → G₂ → 0:
/// the outer groups get their canonical resolutions, the middle gets
/// I⁰⊕I⁰₂ / I¹⊕I¹₂ with the classic corner term, and the columns are split
/// exact with the explicit sections recorded.
#[derive(Clone, Debug)]
pub struct Horseshoe {
    pub left: InjectiveResolution,
    pub middle: InjectiveResolution,
    pub right: InjectiveResolution,
    /// I⁰ → I⁰₁ and I⁰₁ → I⁰₂ (short exact), with retraction/section
    pub iota0: DivMorphism,
    pub pi0: DivMorphism,
    pub retract0: DivMorphism,
    pub section0: DivMorphism,
    /// same in degree one
    pub iota1: DivMorphism,
    pub pi1: DivMorphism,
    pub retract1: DivMorphism,
    pub section1: DivMorphism,
}

/// Builds the horseshoe for 0 → G →f G₁ →g G₂ → 0. The sequence is checked
/// exact first; G and G₂ must be in canonical form.
///
/// The middle embedding is (h, α₂ψ) where h extends α through f — computed
/// by prescribing values on the sublattice f(ℤᵐ) + relators and extending
/// linearly from a Hermite basis. The corner term γ of the middle β is the
/// analogous extension of −β∘h through α₂ψ, with the lattice generators of
/// I⁰₂ prescribed to zero so that γ stays lattice-compatible.
pub fn horseshoe(f: &FgMorphism, g: &FgMorphism) -> Result<Horseshoe> {
    if f.target() != g.source() {
        return Err(Error::NotComposable { position: 1 });
    }
    let g0 = f.source().clone();
    let g1 = f.target().clone();
    let g2 = g.target().clone();
    let zero_in = FgMorphism::new(
        FgAbGroup::trivial(),
        g0.clone(),
        IntMatrix::zeros(g0.ngens(), 0),
    )?;
    let zero_out = FgMorphism::new(
        g2.clone(),
        FgAbGroup::trivial(),
        IntMatrix::zeros(0, g2.ngens()),
    )?;
    let report = check_exactness(&[zero_in, f.clone(), g.clone(), zero_out])?;
    if !report.is_exact() {
        let place = report
            .first_failure()
            .map(|(i, grp)| format!("node {} ({})", i, grp))
            .unwrap_or_else(|| "an unknown node".into());
        return Err(Error::InexactInput {
            reason: format!("coefficient sequence fails exactness at {}", place),
        });
    }
    let left = build_resolution(&g0)?;
    let right = build_resolution(&g2)?;

    let (i0_mid, inj0, proj0) = DivGroup::direct_sum(&[left.i0(), right.i0()]);
    let (i1_mid, inj1, proj1) = DivGroup::direct_sum(&[left.i1(), right.i1()]);

    // h: G₁ → I⁰ extending α through f
    let m = g1.ngens();
    let phi = QMatrix::from_int(f.matrix());
    let r1 = QMatrix::from_int(g1.relations());
    let gens_h = phi.hstack(&r1);
    let vals_h = left
        .alpha()
        .hstack(&QMatrix::zeros(left.i0().dim(), r1.cols()));
    let h = extend_prescription(m, left.i0().dim(), &gens_h, &vals_h);

    // α₁ = ι⁰∘h + ι⁰₂∘α₂∘ψ
    let psi = QMatrix::from_int(g.matrix());
    let a2_psi = right.alpha().mul(&psi);
    let alpha_mid = inj0[0]
        .matrix()
        .mul(&h)
        .add(&inj0[1].matrix().mul(&a2_psi));

    // corner term γ: I⁰₂ → I¹ with γ·(α₂ψ) ≡ −β∘h and γ·L(I⁰₂) ⊆ L(I¹)
    let lam2 = right.i0().lattice().lam();
    let gens_gamma = a2_psi.hstack(&lam2);
    let minus_beta_h = left.beta().matrix().mul(&h).neg();
    let vals_gamma = minus_beta_h.hstack(&QMatrix::zeros(left.i1().dim(), lam2.cols()));
    let gamma = extend_prescription(right.i0().dim(), left.i1().dim(), &gens_gamma, &vals_gamma);

    // β₁ = ι¹∘β∘p⁰ + ι¹∘γ∘π⁰ + ι¹₂∘β₂∘π⁰
    let beta_mid_matrix = inj1[0]
        .matrix()
        .mul(left.beta().matrix())
        .mul(proj0[0].matrix())
        .add(&inj1[0].matrix().mul(&gamma).mul(proj0[1].matrix()))
        .add(
            &inj1[1]
                .matrix()
                .mul(right.beta().matrix())
                .mul(proj0[1].matrix()),
        );
    let beta_mid = DivMorphism::new(i0_mid, i1_mid, beta_mid_matrix)?;
    let middle = InjectiveResolution::new(g1, alpha_mid, beta_mid)?;
    debug_assert!(
        verify_resolution(&middle).all_passed(),
        "horseshoe middle must be a valid resolution:\n{}",
        verify_resolution(&middle)
    );

    Ok(Horseshoe {
        left,
        middle,
        right,
        iota0: inj0[0].clone(),
        pi0: proj0[1].clone(),
        retract0: proj0[0].clone(),
        section0: inj0[1].clone(),
        iota1: inj1[0].clone(),
        pi1: proj1[1].clone(),
        retract1: proj1[0].clone(),
        section1: inj1[1].clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divlin::div_image;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn maps_agree_mod_lattice(a: &QMatrix, b: &QMatrix, lat: &LatticeSubgroup) -> bool {
        assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
        (0..a.cols()).all(|j| {
            let diff: Vec<BigRational> = a
                .col(j)
                .iter()
                .zip(b.col(j))
                .map(|(x, y)| x - y)
                .collect();
            lat.contains_vec(&diff)
        })
    }

    #[test]
    fn canonical_shapes_and_verification() {
        let r = build_resolution(&FgAbGroup::free(1)).unwrap();
        assert_eq!(r.i0(), DivGroup::new(1, 0));
        assert_eq!(r.i1(), DivGroup::new(0, 1));
        assert!(verify_resolution(&r).all_passed());

        let r2 = build_resolution(&FgAbGroup::cyclic(2)).unwrap();
        assert_eq!(r2.i0(), DivGroup::new(0, 1));
        assert_eq!(r2.i1(), DivGroup::new(0, 1));
        assert_eq!(r2.alpha(), &QMatrix::from_ratios(1, 1, &[(1, 2)]));
        assert_eq!(r2.beta().matrix(), &QMatrix::from_i64(1, 1, &[2]));
        assert!(verify_resolution(&r2).all_passed());

        let mixed = FgAbGroup::canonical(1, &[BigInt::from(4)]);
        let rm = build_resolution(&mixed).unwrap();
        assert_eq!(rm.i0(), DivGroup::new(1, 1));
        assert_eq!(rm.i1(), DivGroup::new(0, 2));
        assert_eq!(rm.beta().matrix(), &QMatrix::from_i64(2, 2, &[1, 0, 0, 4]));
        assert_eq!(
            rm.alpha(),
            &QMatrix::from_ratios(2, 2, &[(1, 1), (0, 1), (0, 1), (1, 4)])
        );
        assert!(verify_resolution(&rm).all_passed());
    }

    #[test]
    fn kernel_of_six_is_sixth_lattice() {
        let r = build_resolution(&FgAbGroup::cyclic(6)).unwrap();
        let k = div_kernel(r.beta());
        let want = LatticeSubgroup::new(
            1,
            &QMatrix::zeros(1, 0),
            &QMatrix::from_ratios(1, 1, &[(1, 6)]),
        );
        assert_eq!(k, want);
        assert_eq!(k, r.alpha_image());
        assert!(verify_resolution(&r).all_passed());
    }

    #[test]
    fn non_canonical_presentation_rejected() {
        let g = FgAbGroup::new(2, IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert!(matches!(build_resolution(&g), Err(Error::NotCanonicalForm)));
    }

    #[test]
    fn tampered_beta_is_caught() {
        let good = build_resolution(&FgAbGroup::cyclic(2)).unwrap();
        let bad = InjectiveResolution::new(
            FgAbGroup::cyclic(2),
            good.alpha().clone(),
            DivMorphism::zero_map(good.i0(), good.i1()),
        )
        .unwrap();
        let rep = verify_resolution(&bad);
        assert!(!rep.all_passed());
        let surj = rep
            .checks
            .iter()
            .find(|c| c.name == "beta is surjective")
            .unwrap();
        assert!(!surj.passed);
        let witness = surj.witness.as_deref().unwrap();
        assert!(witness.contains("Q/Z") && witness.contains("coset"));
        let ki = rep
            .checks
            .iter()
            .find(|c| c.name == "ker(beta) = im(alpha)")
            .unwrap();
        assert!(!ki.passed);
    }

    #[test]
    fn horseshoe_for_times_two() {
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::cyclic(2);
        let f = FgMorphism::new(z.clone(), z.clone(), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        let g = FgMorphism::new(z, z2, IntMatrix::from_i64(1, 1, &[1])).unwrap();
        let hs = horseshoe(&f, &g).unwrap();
        assert_eq!(hs.middle.i0(), DivGroup::new(1, 1));
        assert_eq!(hs.middle.i1(), DivGroup::new(0, 2));
        for r in [&hs.left, &hs.middle, &hs.right] {
            assert!(verify_resolution(r).all_passed());
        }
        // the corner entry couples the two blocks and must be an odd integer
        let corner = hs.middle.beta().matrix().at(0, 1);
        assert!(corner.is_integer());
        assert!(corner.to_integer().is_odd());

        // columns split: retraction and section are one-sided inverses
        assert_eq!(hs.iota0.then(&hs.retract0).matrix(), &QMatrix::identity(1));
        assert_eq!(hs.section0.then(&hs.pi0).matrix(), &QMatrix::identity(1));
        assert_eq!(hs.iota1.then(&hs.retract1).matrix(), &QMatrix::identity(1));
        assert_eq!(hs.section1.then(&hs.pi1).matrix(), &QMatrix::identity(1));
        // and are exact in the middle
        assert_eq!(div_kernel(&hs.pi0), div_image(&hs.iota0));
        assert_eq!(div_kernel(&hs.pi1), div_image(&hs.iota1));

        // rows commute: embeddings modulo the lattice, boundaries exactly
        let lhs = hs.middle.alpha().mul(&QMatrix::from_int(f.matrix()));
        let rhs = hs.iota0.matrix().mul(hs.left.alpha());
        assert!(maps_agree_mod_lattice(&lhs, &rhs, &hs.middle.i0().lattice()));
        let proj_alpha = hs.pi0.matrix().mul(hs.middle.alpha());
        let psi = QMatrix::from_int(g.matrix());
        assert_eq!(proj_alpha, hs.right.alpha().mul(&psi));
        assert_eq!(
            hs.iota0.then(hs.middle.beta()).matrix(),
            hs.left.beta().then(&hs.iota1).matrix()
        );
        assert_eq!(
            hs.middle.beta().then(&hs.pi1).matrix(),
            hs.pi0.then(hs.right.beta()).matrix()
        );
    }

    #[test]
    fn horseshoe_split_case() {
        // 0 → ℤ/2 → ℤ ⊕ ℤ/2 → ℤ → 0
        let g0 = FgAbGroup::cyclic(2);
        let mid = FgAbGroup::canonical(1, &[BigInt::from(2)]);
        let g2 = FgAbGroup::free(1);
        let f = FgMorphism::new(g0, mid.clone(), IntMatrix::from_i64(2, 1, &[0, 1])).unwrap();
        let g = FgMorphism::new(mid, g2, IntMatrix::from_i64(1, 2, &[1, 0])).unwrap();
        let hs = horseshoe(&f, &g).unwrap();
        for r in [&hs.left, &hs.middle, &hs.right] {
            assert!(verify_resolution(r).all_passed());
        }
        let lhs = hs.middle.alpha().mul(&QMatrix::from_int(f.matrix()));
        let rhs = hs.iota0.matrix().mul(hs.left.alpha());
        assert!(maps_agree_mod_lattice(&lhs, &rhs, &hs.middle.i0().lattice()));
    }

    #[test]
    fn horseshoe_lifts_the_extension_class() {
        // 0 → ℤ/2 →×2 ℤ/4 → ℤ/2 → 0 does not split; the lifted generator
        // image must sit at denominator 4 in the first block
        let a = FgAbGroup::cyclic(2);
        let b = FgAbGroup::cyclic(4);
        let f = FgMorphism::new(a.clone(), b.clone(), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        let g = FgMorphism::new(b, a, IntMatrix::from_i64(1, 1, &[1])).unwrap();
        let hs = horseshoe(&f, &g).unwrap();
        assert_eq!(hs.middle.i0(), DivGroup::new(0, 2));
        assert_eq!(hs.middle.i1(), DivGroup::new(0, 2));
        for r in [&hs.left, &hs.middle, &hs.right] {
            assert!(verify_resolution(r).all_passed());
        }
        assert_eq!(hs.middle.alpha().at(0, 0).denom(), &BigInt::from(4));
    }

    #[test]
    fn inexact_sequence_rejected() {
        let a = FgAbGroup::cyclic(2);
        let mid = FgAbGroup::canonical(0, &[BigInt::from(2), BigInt::from(2)]);
        let f = FgMorphism::new(a.clone(), mid.clone(), IntMatrix::from_i64(2, 1, &[1, 0])).unwrap();
        let g = FgMorphism::new(mid, a, IntMatrix::from_i64(1, 2, &[1, 0])).unwrap();
        assert!(matches!(
            horseshoe(&f, &g),
            Err(Error::InexactInput { .. })
        ));
    }

    proptest! {
        #[test]
        fn built_resolutions_always_verify(
            free in 0usize..3,
            d1 in 2i64..7,
            mult in 1i64..4,
        ) {
            let torsion = vec![BigInt::from(d1), BigInt::from(d1 * mult)];
            let g = FgAbGroup::canonical(free, &torsion);
            let r = build_resolution(&g).unwrap();
            prop_assert!(verify_resolution(&r).all_passed());
        }
    }
}
