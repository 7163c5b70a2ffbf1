//! Scaling-and-translation symmetry generators
//! `X = (e0 + e1 x) ∂x + (f0 + f1 t) ∂t + g1 u ∂u` and the invariance checks
//! built on them.
//!
//! Every generator admitted by the two nonlinear equations has this shape,
//! with `η` linear in `u` and free of a `u`-independent part. All checks run
//! in the power-law algebra, so a zero result is exact up to rounding of the
//! coefficients.

use serde::Serialize;

use crate::equation::Equation;
use crate::error::{Error, Result};
use crate::order::FracOrder;
use crate::powerlaw::{caputo_dt, d_dt, d_dx, CaputoMode, EtaForm, Monomial, PowerSum};
use crate::scalar::Scalar;
use crate::special::gamma;

/// Which parametrization a generator came from; only affects the names used
/// in constraint reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Raw coefficients `e0, e1, f0, f1, g1`.
    Raw,
    /// `(c1 + (α/2) c2 x + p c3 x) ∂x + c2 t ∂t + 2 c3 u ∂u`
    Diffusion,
    /// `(c1 x + c2) ∂x + (c3 t + c4) ∂t + ((3 c1 - α c3)/q) u ∂u`
    ThirdOrder,
}

/// Coefficient slot that an invariance condition can force to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    E0,
    F0,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Generator<T> {
    pub e0: T,
    pub e1: T,
    pub f0: T,
    pub f1: T,
    pub g1: T,
    pub family: Family,
}

impl<T: Scalar> Generator<T> {
    pub fn new(e0: T, e1: T, f0: T, f1: T, g1: T) -> Result<Self> {
        Generator::with_family(e0, e1, f0, f1, g1, Family::Raw)
    }

    fn with_family(e0: T, e1: T, f0: T, f1: T, g1: T, family: Family) -> Result<Self> {
        let g = Generator {
            e0,
            e1,
            f0,
            f1,
            g1,
            family,
        };
        if g.is_trivial() {
            return Err(Error::Degenerate(
                "generator with all coefficients zero".into(),
            ));
        }
        Ok(g)
    }

    /// Symmetries of `D^α u = (u^p u_x)_x`.
    pub fn diffusion(c1: T, c2: T, c3: T, p: T, alpha: FracOrder<T>) -> Result<Self> {
        let half_alpha = alpha.value() / T::lit(2.0);
        Generator::with_family(
            c1,
            half_alpha * c2 + p * c3,
            T::zero(),
            c2,
            T::lit(2.0) * c3,
            Family::Diffusion,
        )
    }

    /// Symmetries of `D^α u = (u^q u_xx)_x`.
    pub fn third_order(c1: T, c2: T, c3: T, c4: T, q: T, alpha: FracOrder<T>) -> Result<Self> {
        let g1 = (T::lit(3.0) * c1 - alpha.value() * c3) / q;
        Generator::with_family(c2, c1, c4, c3, g1, Family::ThirdOrder)
    }

    /// `X₁ = (α/2) x ∂x + t ∂t`
    pub fn x1(alpha: FracOrder<T>) -> Self {
        Generator::new(
            T::zero(),
            alpha.value() / T::lit(2.0),
            T::zero(),
            T::one(),
            T::zero(),
        )
        .expect("nontrivial")
    }

    /// `X₂ = p x ∂x + 2 u ∂u`
    pub fn x2(p: T) -> Result<Self> {
        Generator::new(T::zero(), p, T::zero(), T::zero(), T::lit(2.0))
    }

    /// `Y₁ = x ∂x + (3/q) u ∂u`
    pub fn y1(q: T) -> Self {
        Generator::new(T::zero(), T::one(), T::zero(), T::zero(), T::lit(3.0) / q)
            .expect("nontrivial")
    }

    /// `Y₂ = t ∂t - (α/q) u ∂u`
    pub fn y2(alpha: FracOrder<T>, q: T) -> Self {
        Generator::new(
            T::zero(),
            T::zero(),
            T::zero(),
            T::one(),
            -alpha.value() / q,
        )
        .expect("nontrivial")
    }

    /// The two scaling generators an equation's power-law solutions are
    /// invariant under (`X₁, X₂` or `Y₁, Y₂`).
    pub fn scaling_pair(equation: &Equation<T>, alpha: FracOrder<T>) -> Result<[Self; 2]> {
        Ok(match *equation {
            Equation::Diffusion { p } => [Generator::x1(alpha), Generator::x2(p)?],
            Equation::ThirdOrder { q } => [Generator::y1(q), Generator::y2(alpha, q)],
        })
    }

    pub fn is_trivial(&self) -> bool {
        [self.e0, self.e1, self.f0, self.f1, self.g1]
            .iter()
            .all(|v| *v == T::zero())
    }

    pub fn scale(&self, k: T) -> Self {
        Generator {
            e0: self.e0 * k,
            e1: self.e1 * k,
            f0: self.f0 * k,
            f1: self.f1 * k,
            g1: self.g1 * k,
            family: self.family,
        }
    }

    /// `ξ = e0 + e1 x`
    pub fn xi(&self) -> PowerSum<T> {
        &PowerSum::constant(self.e0) + &PowerSum::monomial(self.e1, T::one(), T::zero())
    }

    /// `τ = f0 + f1 t`
    pub fn tau(&self) -> PowerSum<T> {
        &PowerSum::constant(self.f0) + &PowerSum::monomial(self.f1, T::zero(), T::one())
    }

    fn slot_name(&self, slot: Slot) -> &'static str {
        match (self.family, slot) {
            (Family::Raw, Slot::E0) => "e0",
            (Family::Raw, Slot::F0) => "f0",
            (Family::Diffusion, Slot::E0) => "c1",
            // f0 is identically zero for this family
            (Family::Diffusion, Slot::F0) => "f0",
            (Family::ThirdOrder, Slot::E0) => "c2",
            (Family::ThirdOrder, Slot::F0) => "c4",
        }
    }

    fn zeroed(&self, slots: &[Slot]) -> Self {
        let mut g = *self;
        for s in slots {
            match s {
                Slot::E0 => g.e0 = T::zero(),
                Slot::F0 => g.f0 = T::zero(),
            }
        }
        g
    }

    /// Applies the zeroing demanded by a constraint report.
    pub fn apply_constraints(&self, report: &ConstraintReport) -> Self {
        self.zeroed(&report.slots)
    }

    /// `true` when both the `t = 0` and `x = 0` lines are invariant.
    pub fn preserves_axes(&self) -> bool {
        self.e0 == T::zero() && self.f0 == T::zero()
    }
}

/// Outcome of an invariance check on a line `t = 0` or `x = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintReport {
    /// Coefficients that must vanish, named in the generator's own
    /// parametrization.
    pub required_zero: Vec<String>,
    /// Whether those coefficients can vanish without trivializing the
    /// generator.
    pub admissible: bool,
    #[serde(skip)]
    slots: Vec<Slot>,
}

impl ConstraintReport {
    pub fn is_satisfied(&self) -> bool {
        self.admissible && self.required_zero.is_empty()
    }
}

fn line_report<T: Scalar>(gen: &Generator<T>, slot: Slot, value: T) -> ConstraintReport {
    if value == T::zero() {
        return ConstraintReport {
            required_zero: Vec::new(),
            admissible: true,
            slots: Vec::new(),
        };
    }
    let slots = vec![slot];
    ConstraintReport {
        required_zero: vec![gen.slot_name(slot).to_string()],
        admissible: !gen.zeroed(&slots).is_trivial(),
        slots,
    }
}

/// Invariance of the initial line `t = 0`: `X t = τ` must vanish there,
/// i.e. `f0 = 0`.
pub fn initial_line_invariance<T: Scalar>(gen: &Generator<T>) -> ConstraintReport {
    line_report(gen, Slot::F0, gen.f0)
}

/// Invariance of the boundary line `x = 0`: `X x = ξ` must vanish there,
/// i.e. `e0 = 0`.
pub fn boundary_line_invariance<T: Scalar>(gen: &Generator<T>) -> ConstraintReport {
    line_report(gen, Slot::E0, gen.e0)
}

/// `η(θ) - ξ θ_x - τ θ_t`; zero iff `u = θ` is an invariant surface.
pub fn apply_generator<T: Scalar>(gen: &Generator<T>, theta: &PowerSum<T>) -> PowerSum<T> {
    let eta = theta.scale(gen.g1);
    let xi_term = &gen.xi() * &d_dx(theta);
    let tau_term = &gen.tau() * &d_dt(theta);
    &(&eta - &xi_term) - &tau_term
}

/// Where a Dirichlet condition is imposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundarySide {
    /// `u(0, x) = b(x)`
    InitialT0,
    /// `u(t, 0) = a(t)`
    BoundaryX0,
}

/// Exponent of the only boundary data left invariant by `gen`.
///
/// On `x = 0` the condition `X(u - a(t)) = 0` reads `f1 t a' = g1 a`, so
/// `a = k t^(g1/f1)`; on `t = 0`, `e1 x b' = g1 b` gives `b = k x^(g1/e1)`.
/// Both lines must already be invariant (`e0 = f0 = 0`).
pub fn boundary_condition_exponent<T: Scalar>(gen: &Generator<T>, side: BoundarySide) -> Result<T> {
    if !gen.preserves_axes() {
        return Err(Error::NotAdmitted(format!(
            "generator moves the boundary lines (e0 = {}, f0 = {}); apply the line constraints first",
            gen.e0.as_f64(),
            gen.f0.as_f64()
        )));
    }
    let (den, what) = match side {
        BoundarySide::BoundaryX0 => (gen.f1, "f1"),
        BoundarySide::InitialT0 => (gen.e1, "e1"),
    };
    if den == T::zero() {
        return Err(Error::Degenerate(format!(
            "{what} = 0 leaves the boundary data unconstrained"
        )));
    }
    Ok(gen.g1 / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    T,
    X,
}

/// Invariant form of solutions under a scaling generator.
///
/// - `f1 ≠ 0, e1 ≠ 0`: `u = t^(g1/f1) F(z)`, `z = x · t^(-e1/f1)`
/// - `f1 = 0`: `u = x^(g1/e1) G(t)` (`degenerate_axis = t`)
/// - `e1 = 0`: `u = t^(g1/f1) F(x)` (`degenerate_axis = x`)
///
/// For `X₁` the invariant `z = x t^(-α/2)` and the classical choice
/// `x^(2/α) t^(-1) = z^(2/α)` are related by a monotone map, so they describe
/// the same family of solutions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimilarityForm<T> {
    pub u_t_exponent: Option<T>,
    pub u_x_exponent: Option<T>,
    /// Exponents of `(x, t)` in the invariant `z`.
    pub z_exponent: Option<[T; 2]>,
    /// The variable the free profile depends on, when not a mixed invariant.
    pub degenerate_axis: Option<Axis>,
}

impl<T: Scalar> SimilarityForm<T> {
    /// The member of the family with power profile `F(s) = coeff · s^k`.
    pub fn instantiate(&self, k: T, coeff: T) -> Monomial<T> {
        match (self.degenerate_axis, self.z_exponent) {
            (Some(Axis::T), _) => {
                Monomial::new(coeff, self.u_x_exponent.unwrap_or_else(T::zero), k)
            }
            (Some(Axis::X), _) => {
                Monomial::new(coeff, k, self.u_t_exponent.unwrap_or_else(T::zero))
            }
            (None, Some([zx, zt])) => {
                let s = self.u_t_exponent.unwrap_or_else(T::zero);
                Monomial::new(coeff, zx * k, s + zt * k)
            }
            (None, None) => Monomial::constant(coeff),
        }
    }
}

pub fn similarity_form<T: Scalar>(gen: &Generator<T>) -> Result<SimilarityForm<T>> {
    if !gen.preserves_axes() {
        return Err(Error::NotAdmitted(
            "similarity forms need a pure scaling generator (e0 = f0 = 0)".into(),
        ));
    }
    let (e1, f1, g1) = (gen.e1, gen.f1, gen.g1);
    match (e1 == T::zero(), f1 == T::zero()) {
        (true, true) => Err(Error::Degenerate(
            "e1 = f1 = 0: no similarity variable".into(),
        )),
        (false, true) => Ok(SimilarityForm {
            u_t_exponent: None,
            u_x_exponent: Some(g1 / e1),
            z_exponent: None,
            degenerate_axis: Some(Axis::T),
        }),
        (true, false) => Ok(SimilarityForm {
            u_t_exponent: Some(g1 / f1),
            u_x_exponent: None,
            z_exponent: None,
            degenerate_axis: Some(Axis::X),
        }),
        (false, false) => Ok(SimilarityForm {
            u_t_exponent: Some(g1 / f1),
            u_x_exponent: None,
            z_exponent: Some([T::one(), -e1 / f1]),
            degenerate_axis: None,
        }),
    }
}

/// The unique power law `x^a t^b` invariant under two scaling generators.
///
/// Invariance of `x^a t^b` under a scaling generator is the linear condition
/// `e1 a + f1 b = g1`, so two independent generators pin down `(a, b)`.
pub fn power_law_intersection<T: Scalar>(
    first: &Generator<T>,
    second: &Generator<T>,
) -> Result<(T, T)> {
    if !first.preserves_axes() || !second.preserves_axes() {
        return Err(Error::NotAdmitted(
            "intersection needs pure scaling generators".into(),
        ));
    }
    let det = first.e1 * second.f1 - first.f1 * second.e1;
    let scale = T::one()
        .max(first.e1.abs())
        .max(first.f1.abs())
        .max(second.e1.abs())
        .max(second.f1.abs());
    if det.abs() <= T::lit(1e-14) * scale * scale {
        return Err(Error::Degenerate(
            "generators share their invariant family".into(),
        ));
    }
    let a = (first.g1 * second.f1 - first.f1 * second.g1) / det;
    let b = (first.e1 * second.g1 - first.g1 * second.e1) / det;
    Ok((a, b))
}

/// Invariant-surface condition with the time derivative replaced through
/// the equation:
///
/// `η(ν) - ξ ∂ν/∂x - τ · ᶜD^(1-α) g(ν)`,
///
/// where `g` is the right-hand side of the equation. When `ν` solves the
/// equation, `ᶜD^(1-α) g = ν_t` and this equals [`apply_generator`]. At
/// α = 1 the inner operator is the identity.
pub fn invariant_surface_residual_thm31<T: Scalar>(
    gen: &Generator<T>,
    nu: &Monomial<T>,
    equation: &Equation<T>,
    alpha: FracOrder<T>,
) -> Result<PowerSum<T>> {
    let g = equation.spatial_operator(nu)?;
    let time_part = match alpha.complement() {
        Some(beta) => caputo_dt(&g, beta, CaputoMode::Extended)?,
        None => g,
    };
    let nu = PowerSum::from(*nu);
    let eta = nu.scale(gen.g1);
    let xi_term = &gen.xi() * &d_dx(&nu);
    let tau_term = &gen.tau() * &time_part;
    Ok(&(&eta - &xi_term) - &tau_term)
}

/// Leading `k = 2` part of the μ-term in the fractional prolongation:
/// `μ = (1/2!) · t^(2-α) (-u) / Γ(3-α) · u_tt · η_uu`.
///
/// The result is indexed by powers of `u`: entry `(j, P)` is the coefficient
/// `P(t, x)` of `u^j · u_tt`. A linear `η` gives zero.
pub fn mu_leading<T: Scalar>(eta: &EtaForm<T>, alpha: FracOrder<T>) -> Result<EtaForm<T>> {
    if eta.degree().unwrap_or(0) > 3 {
        return Err(Error::Config(
            "mu_leading supports eta of degree at most 3 in u".into(),
        ));
    }
    let a = alpha.value();
    let factor = -T::one() / (T::lit(2.0) * gamma(T::lit(3.0) - a)?);
    let kernel = PowerSum::monomial(factor, T::zero(), T::lit(2.0) - a);
    // u · η_uu: degree k-2 term moves to degree k-1
    Ok(EtaForm::new(
        eta.d_uu().terms().iter().map(|(k, c)| (k + 1, &kernel * c)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fo(a: f64) -> FracOrder<f64> {
        FracOrder::new(a).unwrap()
    }

    fn theta(c: f64, p: f64, alpha: f64) -> PowerSum<f64> {
        PowerSum::monomial(c, 2.0 / p, -alpha / p)
    }

    #[test]
    fn diffusion_generators_annihilate_power_law() {
        for &(p, a) in &[(2.0, 0.5), (1.0, 0.3), (-1.0, 0.7), (0.5, 0.5)] {
            let th = theta(1.7, p, a);
            assert!(apply_generator(&Generator::x1(fo(a)), &th).max_abs_coeff() < 1e-15);
            assert!(apply_generator(&Generator::x2(p).unwrap(), &th).max_abs_coeff() < 1e-15);
        }
    }

    #[test]
    fn x2_on_x_is_hand_computed() {
        let p = 3.0;
        let got = apply_generator(
            &Generator::x2(p).unwrap(),
            &PowerSum::monomial(1.0, 1.0, 0.0),
        );
        assert_eq!(got, PowerSum::monomial(2.0 - p, 1.0, 0.0));
    }

    #[test]
    fn family_maps_to_coefficients() {
        let (a, p, q) = (fo(0.4), 1.5, 2.0);
        let d = Generator::diffusion(1.0, 2.0, 3.0, p, a).unwrap();
        assert_eq!(
            (d.e0, d.e1, d.f0, d.f1, d.g1),
            (1.0, 0.2 * 2.0 + 1.5 * 3.0, 0.0, 2.0, 6.0)
        );
        let t = Generator::third_order(1.0, 2.0, 3.0, 4.0, q, a).unwrap();
        assert_eq!((t.e0, t.e1, t.f0, t.f1), (2.0, 1.0, 4.0, 3.0));
        assert!((t.g1 - (3.0 - 0.4 * 3.0) / 2.0).abs() < 1e-15);
        assert!(Generator::new(0.0, 0.0, 0.0, 0.0, 0.0_f64).is_err());
    }

    #[test]
    fn line_invariance_names_family_coefficients() {
        let a = fo(0.5);
        let d = Generator::diffusion(1.0, 1.0, 1.0, 2.0, a).unwrap();
        let r = boundary_line_invariance(&d);
        assert_eq!(r.required_zero, vec!["c1"]);
        assert!(r.admissible);
        assert!(initial_line_invariance(&d).is_satisfied());

        let t = Generator::third_order(1.0, 1.0, 1.0, 1.0, 2.0, a).unwrap();
        assert_eq!(initial_line_invariance(&t).required_zero, vec!["c4"]);
        assert_eq!(boundary_line_invariance(&t).required_zero, vec!["c2"]);

        let s = Generator::new(0.0, 1.0, 0.0, 2.0, 3.0).unwrap();
        assert!(initial_line_invariance(&s).is_satisfied());
        assert!(boundary_line_invariance(&s).is_satisfied());
    }

    #[test]
    fn pure_translation_is_not_admissible() {
        let g = Generator::new(1.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let r = boundary_line_invariance(&g);
        assert_eq!(r.required_zero, vec!["e0"]);
        assert!(!r.admissible);
    }

    #[test]
    fn constraints_are_sound() {
        let a = fo(0.5);
        for g in [
            Generator::diffusion(1.0, 1.0, 1.0, 2.0, a).unwrap(),
            Generator::third_order(1.0, 1.0, 1.0, 1.0, 2.0, a).unwrap(),
            Generator::new(0.5, 1.0, -2.0, 1.0, 0.0).unwrap(),
        ] {
            let g = g.apply_constraints(&initial_line_invariance(&g));
            let g = g.apply_constraints(&boundary_line_invariance(&g));
            assert!(initial_line_invariance(&g).is_satisfied());
            assert!(boundary_line_invariance(&g).is_satisfied());
        }
    }

    #[test]
    fn boundary_exponents_match_closed_forms() {
        let a = fo(0.5);
        let p = 2.0;
        let d = Generator::diffusion(0.0, 1.0, 1.0, p, a).unwrap();
        assert_eq!(
            boundary_condition_exponent(&d, BoundarySide::BoundaryX0).unwrap(),
            2.0
        );
        let (c2, c3) = (1.0, 1.0);
        let want = 2.0 * c3 / (0.25 * c2 + p * c3);
        assert!(
            (boundary_condition_exponent(&d, BoundarySide::InitialT0).unwrap() - want).abs()
                < 1e-15
        );
        let d0 = Generator::diffusion(0.0, 0.0, 1.0, p, a).unwrap();
        assert_eq!(
            boundary_condition_exponent(&d0, BoundarySide::InitialT0).unwrap(),
            2.0 / p
        );

        let (c1, c3, q) = (1.5, 2.0, 2.0);
        let t = Generator::third_order(c1, 0.0, c3, 0.0, q, a).unwrap();
        let want = (3.0 * c1 - 0.5 * c3) / (c3 * q);
        assert!(
            (boundary_condition_exponent(&t, BoundarySide::BoundaryX0).unwrap() - want).abs()
                < 1e-15
        );
        let want = (3.0 * c1 - 0.5 * c3) / (c1 * q);
        assert!(
            (boundary_condition_exponent(&t, BoundarySide::InitialT0).unwrap() - want).abs()
                < 1e-15
        );
    }

    #[test]
    fn boundary_exponent_errors() {
        let g = Generator::new(1.0, 1.0, 0.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            boundary_condition_exponent(&g, BoundarySide::BoundaryX0),
            Err(Error::NotAdmitted(_))
        ));
        let g = Generator::x2(2.0).unwrap();
        assert!(matches!(
            boundary_condition_exponent(&g, BoundarySide::BoundaryX0),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn similarity_forms() {
        let a = fo(0.5);
        let f = similarity_form(&Generator::x1(a)).unwrap();
        assert_eq!(f.u_t_exponent, Some(0.0));
        assert_eq!(f.z_exponent, Some([1.0, -0.25]));
        assert_eq!(f.degenerate_axis, None);

        let f = similarity_form(&Generator::x2(2.0).unwrap()).unwrap();
        assert_eq!(f.u_x_exponent, Some(1.0));
        assert_eq!(f.u_t_exponent, None);
        assert_eq!(f.degenerate_axis, Some(Axis::T));

        let q = 1.5;
        let f = similarity_form(&Generator::y1(q)).unwrap();
        assert_eq!(f.u_x_exponent, Some(2.0));
        assert_eq!(f.degenerate_axis, Some(Axis::T));

        let f = similarity_form(&Generator::y2(a, q)).unwrap();
        assert_eq!(f.degenerate_axis, Some(Axis::X));
        assert!((f.u_t_exponent.unwrap() + 0.5 / q).abs() < 1e-15);

        assert!(matches!(
            similarity_form(&Generator::new(0.0, 0.0, 0.0, 0.0, 1.0).unwrap()),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn every_member_of_a_form_is_invariant() {
        let a = fo(0.6);
        for g in [
            Generator::x1(a),
            Generator::x2(-1.0).unwrap(),
            Generator::y1(2.0),
            Generator::y2(a, 2.0),
            Generator::new(0.0, 0.3, 0.0, 1.7, -0.4).unwrap(),
        ] {
            let form = similarity_form(&g).unwrap();
            for &k in &[-1.5, 0.0, 0.25, 2.0, 3.5] {
                let th = PowerSum::from(form.instantiate(k, 1.3));
                assert!(
                    apply_generator(&g, &th).max_abs_coeff() < 1e-14,
                    "{g:?} k {k}"
                );
            }
        }
    }

    #[test]
    fn classical_similarity_variable_is_equivalent() {
        // f(x^(2/α) t^(-1)) with f(s) = s^m equals F(z) = z^(2m/α)
        let a = 0.5;
        let form = similarity_form(&Generator::x1(fo(a))).unwrap();
        let m = 0.7;
        let classical = PowerSum::monomial(1.0, 2.0 / a * m, -m);
        let canonical = PowerSum::from(form.instantiate(2.0 * m / a, 1.0));
        assert!(classical.approx_eq(&canonical, 1e-15));
        assert!(apply_generator(&Generator::x1(fo(a)), &classical).max_abs_coeff() < 1e-15);
    }

    #[test]
    fn intersection_reproduces_similarity_exponents() {
        let a = fo(0.5);
        let (x, t) =
            power_law_intersection(&Generator::x1(a), &Generator::x2(2.0).unwrap()).unwrap();
        assert!((x - 1.0).abs() < 1e-15 && (t + 0.25).abs() < 1e-15);
        let (x, t) = power_law_intersection(&Generator::y1(2.0), &Generator::y2(a, 2.0)).unwrap();
        assert!((x - 1.5).abs() < 1e-15 && (t + 0.25).abs() < 1e-15);
        assert!(power_law_intersection(&Generator::x1(a), &Generator::x1(a).scale(2.0)).is_err());
    }

    #[test]
    fn scaling_equivariance() {
        let g = Generator::new(0.3, -1.0, 0.5, 2.0, 0.7).unwrap();
        let th = &PowerSum::monomial(1.5, 0.5, 2.0) + &PowerSum::monomial(-2.0, 3.0, 0.25);
        for &l in &[-2.0, 0.5, 3.0] {
            let lhs = apply_generator(&g.scale(l), &th);
            let rhs = apply_generator(&g, &th).scale(l);
            assert!(lhs.approx_eq(&rhs, 1e-15));
        }
    }

    #[test]
    fn thm31_differs_from_surface_condition_off_solution() {
        // ν = x t is not a solution of the p = 1 equation, so D^(1-α) g ≠ ν_t.
        let a = fo(0.5);
        let eq = Equation::Diffusion { p: 1.0 };
        let nu = Monomial::new(1.0, 1.0, 1.0);
        let x1 = Generator::x1(a);
        let lhs = invariant_surface_residual_thm31(&x1, &nu, &eq, a).unwrap();
        let rhs = apply_generator(&x1, &PowerSum::from(nu));
        assert!(!lhs.approx_eq(&rhs, 1e-6));
    }

    #[test]
    fn mu_vanishes_for_linear_eta() {
        let a = fo(0.5);
        let lin = EtaForm::linear(
            PowerSum::monomial(2.0, 1.0, 0.5),
            PowerSum::monomial(-1.0, 0.0, 3.0),
        );
        assert!(mu_leading(&lin, a).unwrap().is_zero());
        assert!(mu_leading(&EtaForm::zero(), a).unwrap().is_zero());
    }

    #[test]
    fn mu_for_quadratic_eta() {
        for &a in &[0.3, 0.5, 1.0] {
            let eta = EtaForm::new([(2, PowerSum::one())]);
            let mu = mu_leading(&eta, fo(a)).unwrap();
            assert_eq!(mu.terms().len(), 1);
            let c = mu.coefficient(1).as_monomial().unwrap();
            let want = -1.0 / gamma(3.0 - a).unwrap();
            assert!((c.coeff - want).abs() <= 1e-12 * want.abs());
            assert!((c.t_exp - (2.0 - a)).abs() < 1e-15);
        }
        let cubic = EtaForm::new([(3, PowerSum::<f64>::one())]);
        let mu = mu_leading(&cubic, fo(0.5)).unwrap();
        assert_eq!(mu.degree(), Some(2));
        assert!(mu_leading(&EtaForm::new([(4, PowerSum::<f64>::one())]), fo(0.5)).is_err());
    }
}
