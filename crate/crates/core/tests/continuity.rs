//! Property tests over random (p, lambda): continuity of every piecewise
//! function at its branch boundaries, the constraint, and the relations
//! between the classical functions.

use proptest::prelude::*;
use turning_frame::classical::{
    gauge_solution, phi_of_q, q_of_phi, q_of_tau, q_of_tau_on, turning_point, unwind_phi, Sheet,
};
use turning_frame::quantum::{phase_theta, total_phase, PhaseBranch};
use turning_frame::{ClassicalState, FrameModel};

const TOL: f64 = 1e-10;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

/// Jump across a boundary where the boundary point belongs to the left
/// formula and the right formula is polynomial in the offset, so the next
/// representable value is a valid one-sided sample.
fn jump(f: impl Fn(f64) -> f64, b: f64) -> f64 {
    let right = if b == 0.0 { 1e-300 } else { b.next_up() };
    (f(b) - f(right)).abs()
}

/// Scale-aware comparison: absolute below one, relative above.
fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn gauge_solution_is_continuous(p in 0.1f64..10.0, lambda in 0.1f64..10.0) {
        let model = FrameModel::unit_hbar(lambda).unwrap();
        let exit = 2.0 * p / lambda;
        for b in [0.0, exit] {
            let l = gauge_solution(p, &model, b).unwrap();
            let r = gauge_solution(p, &model, if b == 0.0 { 1e-300 } else { b.next_up() }).unwrap();
            prop_assert!(close(l.phi, r.phi), "phi jump at {b}: {} vs {}", l.phi, r.phi);
            prop_assert!(close(l.p_phi, r.p_phi), "p_phi jump at {b}: {} vs {}", l.p_phi, r.p_phi);
        }
    }

    #[test]
    fn constraint_holds_on_every_branch(
        p in 0.1f64..10.0,
        lambda in 0.1f64..10.0,
        u in -1.0f64..2.0,
    ) {
        let model = FrameModel::unit_hbar(lambda).unwrap();
        // u in [-1, 0], (0, 1], (1, 2] covers the three gauge branches.
        let eps = u * 2.0 * p / lambda;
        let s = gauge_solution(p, &model, eps).unwrap();
        let scale = (p * p).max(1.0);
        prop_assert!(s.constraint_residual(p, &model).abs() <= 1e-12 * scale,
            "residual {} at eps {eps}", s.constraint_residual(p, &model));
    }

    #[test]
    fn phi_of_q_is_continuous(p in 0.1f64..10.0, lambda in 0.1f64..10.0, q0 in -5.0f64..5.0) {
        let model = FrameModel::unit_hbar(lambda).unwrap();
        let state = ClassicalState::new(q0, p).unwrap();
        for dq in [0.0, 4.0 * p * p / lambda] {
            let b = q0 + dq;
            let d = jump(|q| phi_of_q(q, &state, &model), b);
            prop_assert!(d <= TOL * b.abs().max(1.0), "jump {d} at q = {b}");
        }
    }

    #[test]
    fn q_of_phi_sheets_join(p in 0.1f64..10.0, lambda in 0.1f64..10.0, q0 in -5.0f64..5.0) {
        let model = FrameModel::unit_hbar(lambda).unwrap();
        let state = ClassicalState::new(q0, p).unwrap();
        let t = turning_point(p, &model).unwrap();
        let before = q_of_phi(t, Sheet::Before, &state, &model).unwrap();
        let after = q_of_phi(t, Sheet::After, &state, &model).unwrap();
        prop_assert!(close(before, after), "{before} vs {after}");
        // Each sheet is also continuous where it crosses phi = 0.
        for sheet in [Sheet::Before, Sheet::After] {
            let d = jump(|phi| q_of_phi(phi, sheet, &state, &model).unwrap(), 0.0);
            prop_assert!(d <= TOL * before.abs().max(1.0));
        }
    }

    #[test]
    fn unwound_phi_is_continuous(p in 0.1f64..10.0, lambda in 0.1f64..10.0) {
        let model = FrameModel::unit_hbar(lambda).unwrap();
        let t = turning_point(p, &model).unwrap();
        let d = jump(|tau| unwind_phi(tau, p, &model).unwrap(), t);
        prop_assert!(d <= TOL * t.max(1.0));
    }

    #[test]
    fn theta_is_continuous(p in 0.1f64..10.0, lambda in 0.1f64..10.0) {
        let model = FrameModel::unit_hbar(lambda).unwrap();
        let d = jump(|phi| phase_theta(phi, p, &model).unwrap(), 0.0);
        prop_assert!(d <= TOL);
    }

    #[test]
    fn q_of_tau_is_continuous(p in 0.1f64..10.0, lambda in 0.1f64..10.0, q0 in -5.0f64..5.0) {
        let model = FrameModel::unit_hbar(lambda).unwrap();
        let state = ClassicalState::new(q0, p).unwrap();
        let t = p * p / lambda;
        let pairs = [
            (0.0, PhaseBranch::Free, PhaseBranch::Approach),
            (t, PhaseBranch::Approach, PhaseBranch::Return),
            (2.0 * t, PhaseBranch::Return, PhaseBranch::Departed),
        ];
        for (b, left, right) in pairs {
            let l = q_of_tau_on(left, b, &state, &model);
            let r = q_of_tau_on(right, b, &state, &model);
            prop_assert!(close(l, r), "q(tau) jump at {b}: {l} vs {r}");
            prop_assert_eq!(q_of_tau(b, &state, &model), l);
        }
    }

    #[test]
    fn phase_and_kernel_are_continuous(p in 0.1f64..10.0, lambda in 0.1f64..10.0) {
        let model = FrameModel::unit_hbar(lambda).unwrap();
        let t = p * p / lambda;
        let pairs = [
            (0.0, PhaseBranch::Free, PhaseBranch::Approach),
            (t, PhaseBranch::Approach, PhaseBranch::Return),
            (2.0 * t, PhaseBranch::Return, PhaseBranch::Departed),
        ];
        for (b, left, right) in pairs {
            let (pl, pr) = (left.phase(b, p, lambda), right.phase(b, p, lambda));
            prop_assert!(close(pl, pr), "Phi jump at {b}: {pl} vs {pr}");
            prop_assert_eq!(total_phase(b, p, &model).unwrap(), pl);
            let (dl, dr) = (left.kernel(b, p, lambda), right.kernel(b, p, lambda));
            prop_assert!(close(dl, dr), "D jump at {b}: {dl} vs {dr}");
        }
    }

    #[test]
    fn q_of_tau_is_monotone(
        p in 0.1f64..10.0,
        lambda in 0.1f64..10.0,
        a in -1.0f64..3.0,
        b in -1.0f64..3.0,
    ) {
        let model = FrameModel::unit_hbar(lambda).unwrap();
        let state = ClassicalState::new(0.0, p).unwrap();
        let t = p * p / lambda;
        let (lo, hi) = if a <= b { (a * t, b * t) } else { (b * t, a * t) };
        prop_assert!(q_of_tau(lo, &state, &model) <= q_of_tau(hi, &state, &model));
    }

    #[test]
    fn phi_of_q_inverts_q_of_tau(
        p in 0.1f64..10.0,
        lambda in 0.1f64..10.0,
        u in -1.0f64..3.0,
    ) {
        let model = FrameModel::unit_hbar(lambda).unwrap();
        let state = ClassicalState::new(1.5, p).unwrap();
        let tau = u * p * p / lambda;
        let q = q_of_tau(tau, &state, &model);
        let phi = phi_of_q(q, &state, &model);
        let expected = unwind_phi(tau, p, &model).unwrap();
        let scale = (p * p / lambda).max(1.0);
        // Near the turning point dq/dtau diverges, so q carries an extra
        // rounding error of order sqrt(eps) relative to the orbit size.
        prop_assert!((phi - expected).abs() <= 1e-7 * scale, "{phi} vs {expected}");
    }

    #[test]
    fn kernel_plateaus_after_departure(
        p in 0.1f64..10.0,
        lambda in 0.1f64..10.0,
        extra in 0.0f64..10.0,
    ) {
        let tau = 2.0 * p * p / lambda + extra;
        let d = PhaseBranch::Departed.kernel(tau, p, lambda) - tau;
        prop_assert!(close(d, -2.0 * p * p / lambda));
    }
}
