//! Thom cocycle families `x ↦ cl_x`, their total power operations, and the
//! verifiers for the tensor-power restriction identity and the power axioms.
//!
//! The module identification 𝕊_{p,q}^{⊗k} ≅ 𝕊_{kp,kq} is the tensor
//! isomorphism Φ itself, with matrix `M_Φ` from the lexicographic tensor basis
//! to the ascending monomial basis.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::clifford::{CliffordElement, CliffordError, Signature, TensorElement, TensorIso, DEFAULT_CAP};
use crate::linalg::Matrix;
use crate::operator::{GradedBasis, Operator, OperatorError};
use crate::pin::{lift_signed_permutation, spinor_basis, spinor_real_structure, spinor_rep, PinElement, PinError};
use crate::report::{CaseKey, CaseReport};
use crate::scalar::{Cyclotomic8, Mu8};
use crate::wreath::{act_on_tensor, default_generators, verify_phi_equivariance, WreathElement, WreathError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThomError {
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Pin(#[from] PinError),
    #[error(transparent)]
    Wreath(#[from] WreathError),
    #[error("vector has {got} coordinates, expected {expected}")]
    VectorLength { got: usize, expected: usize },
}

/// A `k`-tuple of coordinate vectors in ℚ(ζ₈)^{p+q}.
pub type VectorTuple = Vec<Vec<Cyclotomic8>>;

/// The Thom family `x ↦ cl_x` of left Clifford multiplication on 𝕊_{p,q}.
#[derive(Debug, Clone)]
pub struct ThomFamily {
    sig: Signature,
    basis: Arc<GradedBasis>,
}

impl ThomFamily {
    pub fn new(sig: Signature) -> Self {
        Self { sig, basis: spinor_basis(sig) }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn evaluate(&self, x: &[Cyclotomic8]) -> Result<Operator, ThomError> {
        if x.len() != self.sig.n() {
            return Err(ThomError::VectorLength { got: x.len(), expected: self.sig.n() });
        }
        let v = CliffordElement::vector(self.sig, x)?;
        Ok(Operator::new(self.basis.clone(), v.left_regular_matrix())?)
    }

    /// `Σ_j id ⊗ … ⊗ cl_{x_j} ⊗ … ⊗ id` on 𝕊_{p,q}^{⊗k}.
    pub fn power_family(&self, xs: &[Vec<Cyclotomic8>]) -> Result<Operator, ThomError> {
        let ops = xs.iter().map(|x| self.evaluate(x)).collect::<Result<Vec<_>, _>>()?;
        power_of_operators(&ops)
    }

    /// [`Self::power_family`] with a dimension-cap check on `k(p+q)`.
    pub fn power_family_capped(&self, xs: &[Vec<Cyclotomic8>], cap: usize) -> Result<Operator, ThomError> {
        Signature::with_cap(xs.len() * self.sig.p(), xs.len() * self.sig.q(), cap)?;
        self.power_family(xs)
    }
}

/// Iterated tensor sum `F_1 ⊗ id ⊗ … + … + id ⊗ … ⊗ F_k`, left-associated.
pub fn power_of_operators(ops: &[Operator]) -> Result<Operator, ThomError> {
    let (first, rest) = ops.split_first().ok_or_else(|| OperatorError::Precondition("empty power".into()))?;
    let mut acc = first.clone();
    for op in rest {
        acc = acc.tensor_sum(op)?;
    }
    Ok(acc)
}

fn sum_of_squares(xs: &[Vec<Cyclotomic8>]) -> Cyclotomic8 {
    xs.iter().flatten().fold(Cyclotomic8::zero(), |acc, x| &acc + &(x * x))
}

/// Deterministic per-case RNG derived from the run seed and case parameters.
pub fn case_rng(seed: u64, params: &[usize]) -> ChaCha8Rng {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for &p in params {
        h = (h ^ p as u64).wrapping_mul(0x100_0000_01b3).rotate_left(29);
    }
    ChaCha8Rng::seed_from_u64(h)
}

/// The zero tuple, every standard-basis tuple, then `samples` random tuples
/// with integer coordinates in `[−3, 3]`.
pub fn sample_tuples<R: Rng>(n: usize, k: usize, samples: usize, rng: &mut R) -> Vec<VectorTuple> {
    let zero = || vec![vec![Cyclotomic8::zero(); n]; k];
    let mut out = vec![zero()];
    for j in 0..k {
        for i in 0..n {
            let mut t = zero();
            t[j][i] = Cyclotomic8::one();
            out.push(t);
        }
    }
    for _ in 0..samples {
        out.push(
            (0..k).map(|_| (0..n).map(|_| Cyclotomic8::from_integer(rng.random_range(-3..=3))).collect()).collect(),
        );
    }
    out
}

fn tuple_json(xs: &[Vec<Cyclotomic8>]) -> Value {
    json!(xs.iter().map(|x| x.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn matrix_json(m: &Matrix) -> Value {
    json!((0..m.rows()).map(|r| m.row(r).iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// `λ` with `lhs = λ · rhs`, if any; `None` when `rhs = 0 ≠ lhs` or not proportional.
pub fn proportionality(lhs: &Matrix, rhs: &Matrix) -> Option<Cyclotomic8> {
    let pos = rhs.entries().iter().position(|x| !x.is_zero());
    let Some(pos) = pos else {
        return lhs.is_zero().then(Cyclotomic8::one);
    };
    let lambda = lhs.entries()[pos].div(&rhs.entries()[pos]).ok()?;
    (*lhs == rhs.scale(&lambda)).then_some(lambda)
}

/// Basis of 𝕊_{p,q}^{⊗k}.
pub fn tensor_basis(sig: Signature, k: usize) -> Arc<GradedBasis> {
    let one = GradedBasis::spinor(sig);
    let mut basis = one.clone();
    for _ in 1..k {
        basis = basis.tensor(&one);
    }
    Arc::new(basis)
}

/// Matrix on the tensor basis with column `t` equal to `f(t)`.
fn tensor_operator_matrix(
    sig: Signature,
    k: usize,
    f: impl Fn(&TensorElement) -> Result<TensorElement, ThomError>,
) -> Result<Matrix, ThomError> {
    let dim = sig.dim().pow(k as u32);
    let mut m = Matrix::zeros(dim, dim);
    for col in 0..dim {
        let a = TensorElement::basis(sig, TensorElement::from_index(sig, k, col), Cyclotomic8::one());
        for (t, c) in f(&a)?.terms() {
            m[(TensorElement::index_of(sig, t), col)] = c.clone();
        }
    }
    Ok(m)
}

/// Matrix of `a ↦ (−1)^{|η||a|} a η` on 𝕊 in the monomial basis.
fn twisted_right_matrix(eta: &PinElement) -> Matrix {
    let sig = eta.signature();
    let mut m = Matrix::zeros(sig.dim(), sig.dim());
    for a in sig.monomials() {
        let image = CliffordElement::monomial(sig, a, Cyclotomic8::one().signed(eta.parity() && a.parity()));
        for (mi, c) in (&image * eta.value()).terms() {
            m[(mi.0 as usize, a.0 as usize)] = c.clone();
        }
    }
    m
}

/// Graded tensor product of the block lifts' spinor operators.
fn block_spinor_matrix(lifts: &[PinElement]) -> Result<Matrix, ThomError> {
    let mut acc = spinor_rep(&lifts[0]);
    for l in &lifts[1..] {
        acc = acc.graded_tensor(&spinor_rep(l))?;
    }
    Ok(acc.matrix().clone())
}

/// Spinor-level data for one wreath generator.
struct GeneratorData {
    label: String,
    g: crate::pin::OrthogonalMatrix,
    /// `L_ω` for the canonical lift of `embed(w)`.
    l_omega: Matrix,
    omega: PinElement,
    /// `T(w) = (⊗ L_{ω_j}) ∘ P_σ` on the tensor basis.
    t_w: Matrix,
    /// `C(w) = Φ⁻¹ ρ(ω_σ)⁻¹ Φ`, the twisted right action of the lift of the
    /// block permutation, transported to the tensor basis.
    c_w: Matrix,
    blocks_det_negative: bool,
}

fn generator_data(iso: &TensorIso, m_phi: &Matrix, w: &WreathElement) -> Result<GeneratorData, ThomError> {
    let (sig, k, target) = (iso.source(), iso.k(), iso.target());
    let g = w.embed(sig)?;
    let omega = lift_signed_permutation(target, &g)?;
    let l_omega = spinor_rep(&omega).matrix().clone();
    let block_lifts = w.blocks().iter().map(|b| lift_signed_permutation(sig, b)).collect::<Result<Vec<_>, _>>()?;
    let p_sigma = {
        let pure = WreathElement::permutation(sig.n(), w.perm().to_vec())?;
        tensor_operator_matrix(sig, k, |a| Ok(act_on_tensor(&pure, a)?))?
    };
    let t_w = block_spinor_matrix(&block_lifts)?.mul(&p_sigma);
    let c_w = {
        let pure = WreathElement::permutation(sig.n(), w.perm().to_vec())?;
        let omega_sigma = lift_signed_permutation(target, &pure.embed(sig)?)?;
        m_phi.transpose().mul(&twisted_right_matrix(&omega_sigma)).mul(m_phi)
    };
    Ok(GeneratorData { label: w.label(), g, l_omega, omega, t_w, c_w, blocks_det_negative: w.det_blocks_negative() })
}

/// Coordinates with the Real structure applied: negated coordinates flip.
fn bar_vector(sig: Signature, x: &[Cyclotomic8]) -> Vec<Cyclotomic8> {
    x.iter().enumerate().map(|(i, c)| c.conj().signed(i >= sig.p())).collect()
}

/// `D · conj(M) · D` for the Real structure `D ∘ conj` of a spinor module.
fn real_conjugate(m: &Matrix, d: &Matrix) -> Matrix {
    d.mul(&m.map(Cyclotomic8::conj)).mul(d)
}

/// Parameters of [`verify_theorem_a`].
#[derive(Debug, Clone, Copy)]
pub struct TheoremAOptions {
    /// Random tuples on top of the zero and standard-basis tuples.
    pub samples: usize,
    pub seed: u64,
    pub cap: usize,
    /// Tuples per generator in the conjugation-equivariance check.
    pub tuples_per_generator: usize,
}

impl Default for TheoremAOptions {
    fn default() -> Self {
        Self { samples: 8, seed: 0, cap: DEFAULT_CAP, tuples_per_generator: 3 }
    }
}

/// Verifies, exactly, that the `k`-th power of the Thom family of ℂl_{p,q}
/// is the restriction of the Thom family of ℂl_{kp,kq}:
///
/// * (a) Φ is a graded, Real, unital algebra isomorphism and is equivariant
///   for the wreath product;
/// * (b) `M_Φ · P_k(xs) = cl_{concat(xs)} · M_Φ` on sampled tuples;
/// * (c) for each default wreath generator `w` with lift `ω` of `embed(w)`,
///   `L_ω · M_Φ = λ(w) · M_Φ · T(w) · C(w)` with `λ(w) ∈ μ₈` measured;
/// * (d) `det(g)·L_ω cl_X = cl_{gX}·L_ω` on the target,
///   `(Π det b_j)·T(w) P(xs) = P(w·xs)·T(w)` on the source, and the Real
///   structures of both modules are intertwined by `M_Φ`.
pub fn verify_theorem_a(p: usize, q: usize, k: usize, opts: TheoremAOptions) -> Result<CaseReport, ThomError> {
    let started = Instant::now();
    let sig = Signature::with_cap(p, q, opts.cap)?;
    let iso = TensorIso::with_cap(sig, k, opts.cap)?;
    let target = iso.target();
    let mut report = CaseReport::new(CaseKey::new("theorem-a", p, q, k));
    let m_phi = iso.matrix();
    let dim = target.dim();

    // (a) algebra isomorphism.
    let basis_tuples: Vec<TensorElement> =
        (0..dim).map(|i| TensorElement::basis(sig, TensorElement::from_index(sig, k, i), Cyclotomic8::one())).collect();
    let images: Vec<CliffordElement> = basis_tuples.iter().map(|a| iso.apply(a)).collect::<Result<_, _>>()?;
    for (a, x) in basis_tuples.iter().zip(&images) {
        for (b, y) in basis_tuples.iter().zip(&images) {
            let lhs = iso.apply(&a.tensor_multiply(b)?)?;
            let rhs = x * y;
            report.check("a.phi_multiplicative", lhs == rhs, || {
                json!({"a": a.to_string(), "b": b.to_string(), "phi(ab)": lhs.to_string(), "phi(a)phi(b)": rhs.to_string()})
            });
        }
        report.check("a.phi_graded", x.parity() == a.parity(), || json!({"a": a.to_string(), "phi(a)": x.to_string()}));
        let lhs = iso.apply(&a.real_involution())?;
        let rhs = x.real_involution();
        report.check(
            "a.phi_real",
            lhs == rhs,
            || json!({"a": a.to_string(), "phi(bar a)": lhs.to_string(), "bar phi(a)": rhs.to_string()}),
        );
        let back = iso.apply_inverse(x)?;
        report.check(
            "a.phi_bijective",
            &back == a,
            || json!({"a": a.to_string(), "phi_inv(phi(a))": back.to_string()}),
        );
    }
    let unit = iso.apply(&TensorElement::one(sig, k))?;
    report.check("a.phi_unital", unit == CliffordElement::one(target), || json!({"phi(1)": unit.to_string()}));
    let generators = default_generators(sig, k);
    report.absorb("a", verify_phi_equivariance(&iso, &generators));
    for w in &generators {
        let w_bar = w.real_conjugate(sig);
        for a in &basis_tuples {
            let lhs = act_on_tensor(&w_bar, &a.real_involution())?;
            let rhs = act_on_tensor(w, a)?.real_involution();
            report.check("a.wreath_real", lhs == rhs, || json!({"w": w.label(), "a": a.to_string()}));
        }
    }

    // (b) family identity.
    let family = ThomFamily::new(sig);
    let big = ThomFamily::new(target);
    let mut rng = case_rng(opts.seed, &[p, q, k]);
    let tuples = sample_tuples(sig.n(), k, opts.samples, &mut rng);
    let mut powers = Vec::with_capacity(tuples.len());
    for xs in &tuples {
        let power = family.power_family(xs)?;
        let x = iso.concat(xs)?;
        let cl = big.evaluate(&x)?;
        let lhs = m_phi.mul(power.matrix());
        let rhs = cl.matrix().mul(&m_phi);
        report.check("b.family_identity", lhs == rhs, || {
            json!({"xs": tuple_json(xs), "M_phi.P(xs)": matrix_json(&lhs), "cl(concat xs).M_phi": matrix_json(&rhs)})
        });
        let square = power.compose(&power)?;
        let expected = sum_of_squares(xs);
        report.check(
            "b.power_square",
            square.as_scalar() == Some(expected.clone()),
            || json!({"xs": tuple_json(xs), "expected": expected.to_string()}),
        );
        report.check(
            "b.power_odd_self_adjoint",
            power.is_odd() && power.is_self_adjoint(),
            || json!({"xs": tuple_json(xs)}),
        );
        powers.push(power);
    }

    // (c) projective spinor-level equivariance.
    let mut data = Vec::with_capacity(generators.len());
    for w in &generators {
        let d = generator_data(&iso, &m_phi, w)?;
        let lhs = d.l_omega.mul(&m_phi);
        let rhs = m_phi.mul(&d.t_w).mul(&d.c_w);
        let lambda = proportionality(&lhs, &rhs);
        let mu = lambda.as_ref().and_then(|l| Mu8::try_from(l).ok());
        report.check("c.projective_equivariance", mu.is_some(), || {
            json!({
                "w": d.label,
                "omega": d.omega.to_string(),
                "lambda": lambda.as_ref().map(ToString::to_string),
                "L_omega.M_phi": matrix_json(&lhs),
                "M_phi.T(w).C(w)": matrix_json(&rhs),
            })
        });
        if let Some(mu) = mu {
            report.measure(&format!("lambda[{}]", d.label), json!(mu.to_string()));
        }
        if w.perm().iter().enumerate().any(|(j, &s)| j != s) {
            let uncorrected = proportionality(&lhs, &m_phi.mul(&d.t_w)).is_some();
            report.measure(&format!("uncorrected_holds[{}]", d.label), json!(uncorrected));
        }
        let l_op = Operator::new(spinor_basis(target), d.l_omega.clone())?;
        let t_op = Operator::new(tensor_basis(sig, k), d.t_w.clone())?;
        report.check("c.unitary", l_op.is_unitary() && t_op.is_unitary(), || json!({"w": d.label}));
        data.push(d);
    }

    // (d) conjugation equivariance and Real structures.
    let d_target = spinor_real_structure(target);
    let d_source = {
        let mut acc = spinor_real_structure(sig);
        let one = GradedBasis::spinor(sig);
        let mut basis = one.clone();
        for _ in 1..k {
            let op = Operator::new(Arc::new(basis.clone()), acc)?;
            acc =
                op.graded_tensor(&Operator::new(Arc::new(one.clone()), spinor_real_structure(sig))?)?.matrix().clone();
            basis = basis.tensor(&one);
        }
        acc
    };
    report.check("d.real_structure_intertwined", d_target.mul(&m_phi) == m_phi.mul(&d_source), || json!({}));
    for (xs, power) in tuples.iter().zip(&powers) {
        let bar_xs: VectorTuple = xs.iter().map(|x| bar_vector(sig, x)).collect();
        let lhs = real_conjugate(power.matrix(), &d_source);
        let rhs = family.power_family(&bar_xs)?;
        report.check("d.real_family", &lhs == rhs.matrix(), || json!({"xs": tuple_json(xs)}));
    }
    for (gi, d) in data.iter().enumerate() {
        let bar_lift = PinElement::new(d.omega.value().real_involution())?;
        let lhs = real_conjugate(&d.l_omega, &d_target);
        report.check("d.real_spinor", &lhs == spinor_rep(&bar_lift).matrix(), || json!({"w": d.label}));
        let det_g_negative = d.g.det_negative();
        for t in 0..opts.tuples_per_generator.min(tuples.len()) {
            let index = (gi * opts.tuples_per_generator + t) % tuples.len();
            let xs = &tuples[index];
            let x = iso.concat(xs)?;
            let gx = d.g.apply(&x);
            let lhs = d.l_omega.mul(big.evaluate(&x)?.matrix()).scale(&Cyclotomic8::one().signed(det_g_negative));
            let rhs = big.evaluate(&gx)?.matrix().mul(&d.l_omega);
            report.check("d.target_equivariance", lhs == rhs, || {
                json!({"w": d.label, "x": tuple_json(std::slice::from_ref(&x)), "det(g)L.cl_x": matrix_json(&lhs), "cl_gx.L": matrix_json(&rhs)})
            });
            let w = &generators[gi];
            let wxs = w.apply(xs);
            let lhs = d.t_w.mul(powers[index].matrix()).scale(&Cyclotomic8::one().signed(d.blocks_det_negative));
            let rhs = family.power_family(&wxs)?.matrix().mul(&d.t_w);
            report.check("d.source_equivariance", lhs == rhs, || {
                json!({"w": d.label, "xs": tuple_json(xs), "det.T.P(xs)": matrix_json(&lhs), "P(w.xs).T": matrix_json(&rhs)})
            });
        }
    }
    report.elapsed = started.elapsed();
    Ok(report)
}

/// Verifies the power-operation axioms at sampled tuples:
/// α: `P_{j+k}(xs, ys) = P_j(xs) ⊞ P_k(ys)` and
/// β: `P_{jk}(xs) = P_j(P_k(xs_1), …, P_k(xs_j))`,
/// where `⊞` is the tensor sum and both sides use lexicographic bases.
pub fn verify_power_axioms(
    p: usize,
    q: usize,
    j: usize,
    k: usize,
    samples: usize,
    seed: u64,
    cap: usize,
) -> Result<CaseReport, ThomError> {
    let started = Instant::now();
    if j == 0 || k == 0 {
        return Err(OperatorError::Precondition("j and k must be positive".into()).into());
    }
    let sig = Signature::with_cap(p, q, cap)?;
    Signature::with_cap((j + k) * p, (j + k) * q, cap)?;
    Signature::with_cap(j * k * p, j * k * q, cap)?;
    let family = ThomFamily::new(sig);
    let mut report = CaseReport::new(CaseKey::new("power-axioms", p, q, k).with_j(j));
    let mut rng = case_rng(seed, &[p, q, j, k, 1]);
    for xs in sample_tuples(sig.n(), j + k, samples, &mut rng) {
        let lhs = family.power_family(&xs)?;
        let rhs = family.power_family(&xs[..j])?.tensor_sum(&family.power_family(&xs[j..])?)?;
        report.check("alpha", lhs == rhs, || json!({"xs": tuple_json(&xs)}));
    }
    for xs in sample_tuples(sig.n(), j * k, samples, &mut rng) {
        let lhs = family.power_family(&xs)?;
        let inner = xs.chunks(k).map(|chunk| family.power_family(chunk)).collect::<Result<Vec<_>, _>>()?;
        let rhs = power_of_operators(&inner)?;
        report.check("beta", lhs == rhs, || json!({"xs": tuple_json(&xs)}));
    }
    report.elapsed = started.elapsed();
    Ok(report)
}

/// `(p,q,k)` with `k ≥ 2`, `p+q ≥ 1` and `k(p+q) ≤ max_total`, sorted.
pub fn theorem_a_cases(max_total: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=max_total / 2 {
        for k in 2..=max_total / n {
            for p in (0..=n).rev() {
                out.push((p, n - p, k));
            }
        }
    }
    out.sort_unstable();
    out
}

/// `(p,q,j,k)` with `j,k ≥ 1`, `p+q ≥ 1`, `(j+k)(p+q) ≤ max_total` and
/// `jk(p+q) ≤ max_total`, sorted.
pub fn power_axiom_cases(max_total: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=max_total / 2 {
        for j in 1..max_total {
            for k in 1..max_total {
                if (j + k) * n <= max_total && j * k * n <= max_total {
                    for p in 0..=n {
                        out.push((p, n - p, j, k));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}
