//! Functionals on the transformed sequences: the sum- and sup-paranorms,
//! the plain variable-exponent paranorms on image sequences, the convex
//! modular, the Luxemburg norm computed by bisection, and the geometry
//! probes built on top of them (midpoint strictness, modular-vs-norm
//! convergence traces).

use crate::error::{Error, Result};
use crate::par;
use crate::triangle::forward_transform;
use crate::types::{ExponentSequence, FiniteSequence, GeneralizedMeansParams};

/// Outcome of a norm evaluation. `iterations` and `residual` are only
/// meaningful for the bisection-based Luxemburg norm; direct functionals
/// report zero for both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormResult {
    pub value: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Which image-space paranorm to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaddoxSpace {
    /// (sum_k |y_k|^{p_k})^{1/M}
    Sum,
    /// sup_k |y_k|^{p_k / M}
    Sup,
}

fn check_lengths(p: &ExponentSequence, x: &FiniteSequence) -> Result<()> {
    p.require_len(x.len())
}

fn modular_of_image(p: &ExponentSequence, y: &[f64]) -> f64 {
    let pv = p.values();
    let terms = par::map_indexed(y.len(), |n| y[n].abs().powf(pv[n]));
    terms.iter().sum()
}

/// The convex modular: sum over n of |y_n|^{p_n} where y is the forward
/// transform of x. Accepts any positive exponents; the geometry operations
/// below additionally require p_n > 1.
pub fn modular(
    params: &GeneralizedMeansParams,
    p: &ExponentSequence,
    x: &FiniteSequence,
) -> Result<f64> {
    check_lengths(p, x)?;
    let y = forward_transform(params, x)?;
    Ok(modular_of_image(p, y.values()))
}

/// Sequential reference path for [`modular`]; benchmark surface.
pub fn modular_seq(
    params: &GeneralizedMeansParams,
    p: &ExponentSequence,
    x: &FiniteSequence,
) -> Result<f64> {
    check_lengths(p, x)?;
    let y = crate::triangle::forward_transform_seq(params, x)?;
    let pv = p.values();
    Ok(y.values()
        .iter()
        .enumerate()
        .map(|(n, v)| v.abs().powf(pv[n]))
        .sum())
}

/// The sum-paranorm: (modular)^{1/M}.
pub fn paranorm_h_tilde(
    params: &GeneralizedMeansParams,
    p: &ExponentSequence,
    x: &FiniteSequence,
) -> Result<f64> {
    Ok(modular(params, p, x)?.powf(1.0 / p.scale()))
}

/// The sup-paranorm: sup over n of |y_n|^{p_n / M}.
pub fn paranorm_h(
    params: &GeneralizedMeansParams,
    p: &ExponentSequence,
    x: &FiniteSequence,
) -> Result<f64> {
    check_lengths(p, x)?;
    let y = forward_transform(params, x)?;
    let m = p.scale();
    let pv = p.values();
    Ok(y.values()
        .iter()
        .enumerate()
        .map(|(n, v)| v.abs().powf(pv[n] / m))
        .fold(0.0f64, f64::max))
}

/// The image-space paranorms applied directly to a sequence.
pub fn maddox_paranorm(p: &ExponentSequence, y: &FiniteSequence, space: MaddoxSpace) -> Result<f64> {
    check_lengths(p, y)?;
    let m = p.scale();
    let pv = p.values();
    Ok(match space {
        MaddoxSpace::Sum => modular_of_image(p, y.values()).powf(1.0 / m),
        MaddoxSpace::Sup => y
            .values()
            .iter()
            .enumerate()
            .map(|(k, v)| v.abs().powf(pv[k] / m))
            .fold(0.0f64, f64::max),
    })
}

/// Scale-expansion cap for the bisection bracket: 64 doublings or halvings
/// from c = 1 before giving up.
const BRACKET_MAX_STEPS: u32 = 64;
const BISECT_MAX_ITERS: usize = 300;

/// The Luxemburg norm inf{c > 0 : modular(x/c) <= 1}, computed by bisection
/// on c. The modular is continuous and strictly decreasing in c for x != 0,
/// so a doubling/halving bracket from c = 1 always encloses the root.
/// Stops when the residual drops below `tol` or the bracket width falls
/// below `tol * c`.
///
/// Requires every exponent above 1 (the setting in which the modular-norm
/// relations hold); returns 0 for the zero sequence.
pub fn luxemburg_norm(
    params: &GeneralizedMeansParams,
    p: &ExponentSequence,
    x: &FiniteSequence,
    tol: f64,
) -> Result<NormResult> {
    check_lengths(p, x)?;
    p.require_above_one(x.len())?;
    let y = forward_transform(params, x)?;
    let sigma_at = |c: f64| {
        let scaled: Vec<f64> = y.values().iter().map(|v| v / c).collect();
        modular_of_image(p, &scaled)
    };
    let sigma1 = modular_of_image(p, y.values());
    if sigma1 == 0.0 {
        return Ok(NormResult {
            value: 0.0,
            iterations: 0,
            residual: 0.0,
        });
    }

    // Bracket [lo, hi] with modular(x/lo) > 1 >= modular(x/hi).
    let (mut lo, mut hi);
    if sigma1 > 1.0 {
        lo = 1.0;
        hi = 2.0;
        let mut steps = 0;
        while sigma_at(hi) > 1.0 {
            hi *= 2.0;
            steps += 1;
            if steps > BRACKET_MAX_STEPS {
                return Err(Error::NoBracket);
            }
        }
    } else {
        hi = 1.0;
        lo = 0.5;
        let mut steps = 0;
        while sigma_at(lo) <= 1.0 {
            lo /= 2.0;
            steps += 1;
            if steps > BRACKET_MAX_STEPS {
                return Err(Error::NoBracket);
            }
        }
    }

    let mut iterations = 0;
    let mut mid = 0.5 * (lo + hi);
    let mut residual = (sigma_at(mid) - 1.0).abs();
    while iterations < BISECT_MAX_ITERS {
        mid = 0.5 * (lo + hi);
        let sm = sigma_at(mid);
        residual = (sm - 1.0).abs();
        iterations += 1;
        if residual <= tol || (hi - lo) < tol * mid {
            break;
        }
        if sm > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(NormResult {
        value: mid,
        iterations,
        residual,
    })
}

/// Tolerance on the sphere precondition of [`midpoint_strictness`].
pub const SPHERE_TOL: f64 = 1e-10;
/// Coordinate gap above which the midpoint modular is asserted to sit
/// strictly below 1. Floating-point strictness below this scale is noise.
pub const STRICTNESS_GAP: f64 = 1e-6;

/// Report from the midpoint probe on two unit-sphere points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MidpointReport {
    /// modular value at (y + z) / 2
    pub midpoint_modular: f64,
    /// max_k |y_k - z_k|
    pub max_coordinate_gap: f64,
    /// whether the strict inequality midpoint_modular < 1 is asserted
    /// (gap above [`STRICTNESS_GAP`])
    pub strict: bool,
}

/// Evaluates the modular at the midpoint of two points on the modular unit
/// sphere. With every exponent above 1 the modular is strictly convex, so
/// distinct points must land strictly inside the ball.
pub fn midpoint_strictness(
    params: &GeneralizedMeansParams,
    p: &ExponentSequence,
    y: &FiniteSequence,
    z: &FiniteSequence,
) -> Result<MidpointReport> {
    let n = y.len().max(z.len());
    p.require_above_one(n)?;
    let sy = modular(params, p, y)?;
    let sz = modular(params, p, z)?;
    if (sy - 1.0).abs() > SPHERE_TOL {
        return Err(Error::NotOnSphere { sigma: sy });
    }
    if (sz - 1.0).abs() > SPHERE_TOL {
        return Err(Error::NotOnSphere { sigma: sz });
    }
    let mid: Vec<f64> = (0..n).map(|k| 0.5 * (y.get(k) + z.get(k))).collect();
    let midpoint_modular = modular(params, p, &FiniteSequence::new(mid)?)?;
    let max_coordinate_gap = (0..n)
        .map(|k| (y.get(k) - z.get(k)).abs())
        .fold(0.0f64, f64::max);
    Ok(MidpointReport {
        midpoint_modular,
        max_coordinate_gap,
        strict: max_coordinate_gap > STRICTNESS_GAP,
    })
}

/// One step of the convergence trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergencePoint {
    pub step: usize,
    /// modular value of the perturbed iterate x^m
    pub modular_value: f64,
    /// Luxemburg norm of x^m - x
    pub norm_distance: f64,
}

/// Builds the iterates x^m = x * (1 - 2^{-m}) plus a coordinatewise-
/// vanishing perturbation (a single rotating coordinate, decaying like
/// 4^{-m}) and traces the modular of x^m together with the norm distance
/// to x. The norm column must decrease to zero; the modular column
/// approaches the modular of x.
pub fn modular_convergence_harness(
    params: &GeneralizedMeansParams,
    p: &ExponentSequence,
    x: &FiniteSequence,
    m_max: usize,
) -> Result<Vec<ConvergencePoint>> {
    if x.is_zero() {
        return Err(Error::ZeroSequence);
    }
    let n = x.len();
    let pert_scale = 1e-6 * x.max_abs();
    let mut trace = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let shrink = 1.0 - 0.5f64.powi(m as i32);
        let pert = 0.25f64.powi(m as i32) * pert_scale;
        let slot = (m - 1) % n;
        let xm: Vec<f64> = x
            .values()
            .iter()
            .enumerate()
            .map(|(k, v)| v * shrink + if k == slot { pert } else { 0.0 })
            .collect();
        let xm = FiniteSequence::new(xm)?;
        let modular_value = modular(params, p, &xm)?;
        let diff: Vec<f64> = xm
            .values()
            .iter()
            .zip(x.values())
            .map(|(a, b)| a - b)
            .collect();
        let dist = luxemburg_norm(params, p, &FiniteSequence::new(diff)?, 1e-12)?;
        trace.push(ConvergencePoint {
            step: m,
            modular_value,
            norm_distance: dist.value,
        });
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::validate_params;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn seq(v: &[f64]) -> FiniteSequence {
        FiniteSequence::new(v.to_vec()).unwrap()
    }

    fn ident(n: usize) -> GeneralizedMeansParams {
        GeneralizedMeansParams::identity(n)
    }

    fn p_const(v: f64, n: usize) -> ExponentSequence {
        ExponentSequence::constant(v, n).unwrap()
    }

    fn random_params(rng: &mut StdRng, n: usize) -> GeneralizedMeansParams {
        let draw = |rng: &mut StdRng| {
            let mag = rng.gen_range(0.1..2.0);
            if rng.gen_bool(0.5) {
                mag
            } else {
                -mag
            }
        };
        let r: Vec<f64> = (0..n).map(|_| draw(rng)).collect();
        let t: Vec<f64> = (0..n).map(|_| draw(rng)).collect();
        let s: Vec<f64> = (0..n).map(|_| draw(rng)).collect();
        validate_params(&r, &s, &t).unwrap()
    }

    #[test]
    fn modular_zero_is_zero() {
        let p = ident(3);
        let e = p_const(2.0, 3);
        assert_eq!(modular(&p, &e, &FiniteSequence::zeros(3)).unwrap(), 0.0);
    }

    #[test]
    fn modular_unit_vector() {
        let p = ident(3);
        let e = p_const(2.0, 3);
        let x = FiniteSequence::unit(0, 3);
        assert!((modular(&p, &e, &x).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn modular_p_one_is_l1_of_image() {
        let p = ident(3);
        let e = p_const(1.0, 3);
        assert!((modular(&p, &e, &seq(&[1.0, 2.0, 3.0])).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn h_tilde_examples() {
        let p = ident(3);
        assert_eq!(paranorm_h_tilde(&p, &p_const(2.0, 3), &FiniteSequence::zeros(3)).unwrap(), 0.0);
        let x = FiniteSequence::unit(0, 3);
        assert!((paranorm_h_tilde(&p, &p_const(2.0, 3), &x).unwrap() - 2.0f64.sqrt()).abs() < 1e-15);
        assert!(
            (paranorm_h_tilde(&p, &p_const(1.0, 3), &seq(&[1.0, 2.0, 3.0])).unwrap() - 3.0).abs()
                < 1e-15
        );
    }

    #[test]
    fn h_sup_examples() {
        let p = ident(3);
        assert_eq!(paranorm_h(&p, &p_const(2.0, 3), &FiniteSequence::zeros(3)).unwrap(), 0.0);
        let x = FiniteSequence::unit(0, 3);
        assert!((paranorm_h(&p, &p_const(2.0, 3), &x).unwrap() - 1.0).abs() < 1e-15);
        let e = ExponentSequence::new(vec![1.0, 2.0]).unwrap();
        let v = paranorm_h(&ident(2), &e, &seq(&[2.0, 2.0])).unwrap();
        assert!((v - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn maddox_examples() {
        let e = p_const(2.0, 2);
        let zero = FiniteSequence::zeros(2);
        assert_eq!(maddox_paranorm(&e, &zero, MaddoxSpace::Sum).unwrap(), 0.0);
        assert_eq!(maddox_paranorm(&e, &zero, MaddoxSpace::Sup).unwrap(), 0.0);
        let y = seq(&[1.0, -1.0]);
        assert!((maddox_paranorm(&e, &y, MaddoxSpace::Sum).unwrap() - 2.0f64.sqrt()).abs() < 1e-15);
        assert!((maddox_paranorm(&e, &y, MaddoxSpace::Sup).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn luxemburg_zero() {
        let p = ident(3);
        let r = luxemburg_norm(&p, &p_const(2.0, 3), &FiniteSequence::zeros(3), 1e-10).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn luxemburg_unit_vector_sqrt2() {
        let p = ident(3);
        let x = FiniteSequence::unit(0, 3);
        let r = luxemburg_norm(&p, &p_const(2.0, 3), &x, 1e-12).unwrap();
        assert!((r.value - 2.0f64.sqrt()).abs() < 1e-10, "{}", r.value);
        assert!(r.residual <= 1e-10);
    }

    #[test]
    fn luxemburg_on_sphere_is_one() {
        let p = ident(3);
        let scale = 1.0 / 2.0f64.sqrt();
        let x = seq(&[scale, 0.0, 0.0]);
        let r = luxemburg_norm(&p, &p_const(2.0, 3), &x, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn luxemburg_rejects_exponent_one() {
        let p = ident(2);
        let e = p_const(1.0, 2);
        let err = luxemburg_norm(&p, &e, &seq(&[1.0, 0.0]), 1e-8).unwrap_err();
        assert!(matches!(err, Error::ExponentNotAboveOne { index: 0, .. }));
    }

    #[test]
    fn luxemburg_overflow_scale_input_has_no_bracket() {
        let p = ident(2);
        let e = p_const(2.0, 2);
        let err = luxemburg_norm(&p, &e, &seq(&[1e300, 0.0]), 1e-8).unwrap_err();
        assert!(matches!(err, Error::NoBracket));
    }

    #[test]
    fn luxemburg_positive_for_small_nonzero_input() {
        let p = ident(2);
        let e = p_const(2.0, 2);
        let r = luxemburg_norm(&p, &e, &seq(&[1e-10, 0.0]), 1e-10).unwrap();
        assert!(r.value > 0.0);
        assert!((r.value - 1e-10 * 2.0f64.sqrt()).abs() < 1e-18);
        // below the 2^64 halving window the bracket search gives up
        let err = luxemburg_norm(&p, &e, &seq(&[1e-30, 0.0]), 1e-10).unwrap_err();
        assert!(matches!(err, Error::NoBracket));
    }

    #[test]
    fn midpoint_equal_points_is_one() {
        let p = ident(3);
        let e = p_const(2.0, 3);
        let y = seq(&[1.0 / 2.0f64.sqrt(), 0.0, 0.0]);
        let rep = midpoint_strictness(&p, &e, &y, &y.clone()).unwrap();
        assert!((rep.midpoint_modular - 1.0).abs() < 1e-12);
        assert!(!rep.strict);
    }

    #[test]
    fn midpoint_distinct_points_strictly_inside() {
        let p = ident(4);
        let e = p_const(2.0, 4);
        let y = seq(&[1.0 / 2.0f64.sqrt(), 0.0, 0.0, 0.0]);
        // difference image e_1 normalized onto the sphere: z = (0,1,1,1)
        let z = seq(&[0.0, 1.0, 1.0, 1.0]);
        let rep = midpoint_strictness(&p, &e, &y, &z).unwrap();
        assert!(rep.strict);
        assert!(rep.midpoint_modular < 1.0 - 1e-6, "{}", rep.midpoint_modular);
    }

    #[test]
    fn midpoint_rejects_off_sphere() {
        let p = ident(2);
        let e = p_const(2.0, 2);
        let y = seq(&[5.0, 0.0]);
        assert!(matches!(
            midpoint_strictness(&p, &e, &y, &y.clone()),
            Err(Error::NotOnSphere { .. })
        ));
    }

    #[test]
    fn harness_unit_vector_scaling() {
        let p = ident(3);
        let e = p_const(2.0, 3);
        let x = FiniteSequence::unit(0, 3);
        let trace = modular_convergence_harness(&p, &e, &x, 10).unwrap();
        assert_eq!(trace.len(), 10);
        let sqrt2 = 2.0f64.sqrt();
        for pt in &trace {
            let expect = 0.5f64.powi(pt.step as i32) * sqrt2;
            assert!(
                (pt.norm_distance - expect).abs() <= 1e-5 * expect.max(1e-12),
                "step {}: {} vs {}",
                pt.step,
                pt.norm_distance,
                expect
            );
        }
        for w in trace.windows(2) {
            assert!(w[1].norm_distance < w[0].norm_distance);
        }
    }

    #[test]
    fn harness_rejects_zero() {
        let p = ident(2);
        let e = p_const(2.0, 2);
        assert!(matches!(
            modular_convergence_harness(&p, &e, &FiniteSequence::zeros(2), 5),
            Err(Error::ZeroSequence)
        ));
    }

    #[test]
    fn subadditivity_of_h_tilde() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..=64);
            let params = random_params(&mut rng, n);
            let e = ExponentSequence::new((0..n).map(|_| rng.gen_range(0.2..3.0)).collect())
                .unwrap();
            let x = seq(&(0..n).map(|_| rng.gen_range(-3.0..3.0)).collect::<Vec<_>>());
            let y = seq(&(0..n).map(|_| rng.gen_range(-3.0..3.0)).collect::<Vec<_>>());
            let sum = seq(&x
                .values()
                .iter()
                .zip(y.values())
                .map(|(a, b)| a + b)
                .collect::<Vec<_>>());
            let hx = paranorm_h_tilde(&params, &e, &x).unwrap();
            let hy = paranorm_h_tilde(&params, &e, &y).unwrap();
            let hs = paranorm_h_tilde(&params, &e, &sum).unwrap();
            assert!(hs <= hx + hy + 1e-12, "{hs} vs {hx} + {hy}");
        }
    }

    #[test]
    fn scalar_bound_of_h_tilde() {
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..200 {
            let n = rng.gen_range(1..=32);
            let params = random_params(&mut rng, n);
            let e = ExponentSequence::new((0..n).map(|_| rng.gen_range(0.2..3.0)).collect())
                .unwrap();
            let x = seq(&(0..n).map(|_| rng.gen_range(-3.0..3.0)).collect::<Vec<_>>());
            let alpha: f64 = rng.gen_range(-3.0..3.0);
            let ax = seq(&x.values().iter().map(|v| alpha * v).collect::<Vec<_>>());
            let lhs = paranorm_h_tilde(&params, &e, &ax).unwrap();
            let rhs = alpha.abs().max(1.0) * paranorm_h_tilde(&params, &e, &x).unwrap();
            assert!(lhs <= rhs + 1e-12, "{lhs} vs {rhs} (alpha={alpha})");
        }
    }

    #[test]
    fn transform_preserves_paranorm() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(1..=32);
            let params = random_params(&mut rng, n);
            let e = ExponentSequence::new((0..n).map(|_| rng.gen_range(0.2..3.0)).collect())
                .unwrap();
            let x = seq(&(0..n).map(|_| rng.gen_range(-3.0..3.0)).collect::<Vec<_>>());
            let lhs = paranorm_h_tilde(&params, &e, &x).unwrap();
            let y = forward_transform(&params, &x).unwrap();
            let rhs = maddox_paranorm(&e, &y, MaddoxSpace::Sum).unwrap();
            assert!((lhs - rhs).abs() <= 1e-14 * lhs.max(1.0));
        }
    }

    #[test]
    fn modular_scaling_inequalities() {
        let mut rng = StdRng::seed_from_u64(6);
        for _ in 0..200 {
            let n = rng.gen_range(1..=24);
            let params = random_params(&mut rng, n);
            let e = ExponentSequence::new((0..n).map(|_| rng.gen_range(1.01..3.0)).collect())
                .unwrap();
            let x = seq(&(0..n).map(|_| rng.gen_range(-2.0..2.0)).collect::<Vec<_>>());
            let m = e.scale();
            let sx = modular(&params, &e, &x).unwrap();
            let scaled = |a: f64| {
                let v: Vec<f64> = x.values().iter().map(|t| t / a).collect();
                modular(&params, &e, &FiniteSequence::new(v).unwrap()).unwrap()
            };
            let times = |a: f64| {
                let v: Vec<f64> = x.values().iter().map(|t| t * a).collect();
                modular(&params, &e, &FiniteSequence::new(v).unwrap()).unwrap()
            };
            let slack = 1e-12 * sx.max(1.0);

            let a_small: f64 = rng.gen_range(0.01..=1.0);
            assert!(a_small.powf(m) * scaled(a_small) <= sx + slack);
            assert!(times(a_small) <= sx + slack);

            let a_big: f64 = rng.gen_range(1.0..4.0);
            assert!(sx <= a_big.powf(m) * scaled(a_big) + slack);
            assert!(sx <= a_big * sx + slack);
            assert!(a_big * sx <= times(a_big) + slack);
        }
    }

    #[test]
    fn modular_axioms() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(1..=24);
            let params = random_params(&mut rng, n);
            let e = ExponentSequence::new((0..n).map(|_| rng.gen_range(1.01..3.0)).collect())
                .unwrap();
            let xv: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let x = seq(&xv);
            let neg = seq(&xv.iter().map(|v| -v).collect::<Vec<_>>());
            // evenness is exact
            assert_eq!(
                modular(&params, &e, &x).unwrap(),
                modular(&params, &e, &neg).unwrap()
            );
            // vanishes only at zero
            assert_eq!(modular(&params, &e, &FiniteSequence::zeros(n)).unwrap(), 0.0);
            if !x.is_zero() {
                assert!(modular(&params, &e, &x).unwrap() > 0.0);
            }
            // convexity
            let yv: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let y = seq(&yv);
            let a: f64 = rng.gen_range(0.0..=1.0);
            let mixed = seq(&xv
                .iter()
                .zip(&yv)
                .map(|(u, v)| a * u + (1.0 - a) * v)
                .collect::<Vec<_>>());
            let lhs = modular(&params, &e, &mixed).unwrap();
            let rhs = a * modular(&params, &e, &x).unwrap()
                + (1.0 - a) * modular(&params, &e, &y).unwrap();
            assert!(lhs <= rhs + 1e-12 * rhs.max(1.0));
        }
    }

    #[test]
    fn modular_monotone_in_scale() {
        let mut rng = StdRng::seed_from_u64(8);
        let n = 16;
        let params = random_params(&mut rng, n);
        let e = p_const(2.0, n);
        let x = seq(&(0..n).map(|_| rng.gen_range(-2.0..2.0)).collect::<Vec<_>>());
        let mut prev = f64::INFINITY;
        for i in 0..50 {
            let c = 0.1 * 1.2f64.powi(i);
            let v: Vec<f64> = x.values().iter().map(|t| t / c).collect();
            let s = modular(&params, &e, &FiniteSequence::new(v).unwrap()).unwrap();
            assert!(s <= prev + 1e-12 * prev.max(1.0));
            prev = s;
        }
    }

    #[test]
    fn norm_modular_relations() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..150 {
            let n = rng.gen_range(1..=24);
            let params = random_params(&mut rng, n);
            let e = ExponentSequence::new((0..n).map(|_| rng.gen_range(1.01..3.0)).collect())
                .unwrap();
            let x = seq(&(0..n).map(|_| rng.gen_range(-2.0..2.0)).collect::<Vec<_>>());
            let sx = modular(&params, &e, &x).unwrap();
            if sx <= 1e-8 {
                continue;
            }
            let norm = luxemburg_norm(&params, &e, &x, 1e-10).unwrap().value;
            if norm < 1.0 - 1e-9 {
                assert!(sx <= norm + 1e-10, "{sx} vs {norm}");
                assert!(sx < 1.0 + 1e-8);
            }
            if norm > 1.0 + 1e-9 {
                assert!(sx >= norm - 1e-10, "{sx} vs {norm}");
                assert!(sx > 1.0 - 1e-8);
            }
        }
    }
}
