use std::f64::consts::PI;

use contactlab::cutoff::{
    integrate_cutoff_with, CutoffProfile, FlowOptions, HamiltonianSchedule, SmoothingProfile,
};
use contactlab::disk::{
    arc_abscissa, disk_to_strip, exact_flow, scaling_exponent_exact, strip_to_disk, DiskPoint,
    StripPoint,
};
use contactlab::geometry::hausdorff;
use contactlab::sphere::{
    field, project_to_disk, reeb_flow, verify_contact_identity, FieldName, SpherePoint,
    TangentVector,
};
use contactlab::INV_SQRT_PI;
use proptest::prelude::*;

fn profile() -> impl Strategy<Value = SmoothingProfile> {
    prop_oneof![
        Just(SmoothingProfile::QuadraticSpline),
        Just(SmoothingProfile::SmoothstepC2)
    ]
}

/// A point of the closed disk, by radius fraction and angle.
fn disk_point() -> impl Strategy<Value = DiskPoint> {
    (0.0..0.999_f64, 0.0..2.0 * PI).prop_map(|(r, th)| {
        let r = INV_SQRT_PI * r.sqrt();
        DiskPoint {
            p: r * th.cos(),
            q: r * th.sin(),
        }
    })
}

proptest! {
    #[test]
    fn cutoff_profile_shape(
        mu in profile(),
        delta in 1e-3..0.2_f64,
        eta_frac in 0.0..1.0_f64,
        p in -0.6..0.6_f64,
    ) {
        let eta = eta_frac * INV_SQRT_PI;
        let prof = CutoffProfile::new(delta, eta, mu).unwrap();
        let v = prof.eval(p);
        let m = prof.eval(-p);
        prop_assert_eq!(v.value, -m.value);
        prop_assert_eq!(v.derivative, m.derivative);
        prop_assert!((0.0..=1.0).contains(&v.derivative));
        prop_assert!(v.value.abs() <= prof.max_value() + 1e-15);
        if p.abs() <= eta {
            prop_assert_eq!(v.value, p);
        }
        // rotation part of the field, f − p f′, keeps the sign of p
        prop_assert!((v.rotation - (v.value - p * v.derivative)).abs() < 1e-12);
        prop_assert!(v.rotation * p >= -1e-15);
        // monotone
        let w = prof.eval(p + 1e-3);
        prop_assert!(w.value >= v.value - 1e-15);
    }

    #[test]
    fn strip_chart_round_trip(a in -8.0..8.0_f64, b in 0.01..(PI - 0.01)) {
        let w = StripPoint { a, b };
        let back = disk_to_strip(strip_to_disk(w)).unwrap();
        prop_assert!((back.a - a).abs() < 1e-7 && (back.b - b).abs() < 1e-7, "{:?} -> {:?}", w, back);
    }

    #[test]
    fn exact_flow_is_a_flow(z in disk_point(), s in 0.0..3.0_f64, t in 0.0..3.0_f64) {
        let two_step = exact_flow(exact_flow(z, s), t);
        let one_step = exact_flow(z, s + t);
        prop_assert!(two_step.distance(one_step) < 1e-9);
        prop_assert!(one_step.capacity() <= 1.0 + 1e-12);
    }

    #[test]
    fn exact_flow_commutes_with_reflection(z in disk_point(), t in 0.0..5.0_f64) {
        prop_assert!(exact_flow(z.reflect(), t).distance(exact_flow(z, t).reflect()) < 1e-12);
    }

    #[test]
    fn exact_scaling_exponent_changes_sign_on_the_arc(
        t in 0.5..10.0_f64,
        b in 0.05..(PI - 0.05),
        d in 0.01..3.0_f64,
    ) {
        let a_c = arc_abscissa(t, 0.0);
        let above = scaling_exponent_exact(StripPoint { a: a_c + d, b }, t);
        let below = scaling_exponent_exact(StripPoint { a: a_c - d, b }, t);
        prop_assert!(above < 0.0 && below > 0.0);
    }

    #[test]
    fn contact_identity_on_spheres(
        n in 1usize..4,
        seed in prop::collection::vec(-1.0..1.0_f64, 16),
    ) {
        let dim = 2 * n + 2;
        let at = SpherePoint::normalized(seed[..dim].to_vec());
        prop_assume!(at.is_ok());
        let at = at.unwrap();
        let v = TangentVector::project(at.clone(), seed[8..8 + dim].to_vec()).unwrap();
        prop_assert!(verify_contact_identity(&at, &v).unwrap() < 1e-10);
        // X is tangent to the sphere
        let x = field(FieldName::X, &at).unwrap();
        let radial: f64 = x.dir.iter().zip(at.coords()).map(|(a, b)| a * b).sum();
        prop_assert!(radial.abs() < 1e-12);
    }

    #[test]
    fn reeb_flow_keeps_the_projection_radius(z in disk_point(), theta in 0.0..2.0 * PI, s in -2.0..2.0_f64) {
        let x = SpherePoint::lift(z, theta, 2).unwrap();
        prop_assert!(project_to_disk(&x).distance(z) < 1e-12);
        let y = reeb_flow(&x, s);
        prop_assert!((project_to_disk(&y).norm() - z.norm()).abs() < 1e-12);
        prop_assert!(reeb_flow(&x, s.floor()).distance(&x) < 1e-12);
    }

    #[test]
    fn hausdorff_is_a_metric_on_samples(
        a in prop::collection::vec(disk_point(), 1..12),
        b in prop::collection::vec(disk_point(), 1..12),
        c in prop::collection::vec(disk_point(), 1..12),
    ) {
        prop_assert_eq!(hausdorff(&a, &a), 0.0);
        prop_assert_eq!(hausdorff(&a, &b), hausdorff(&b, &a));
        prop_assert!(hausdorff(&a, &c) <= hausdorff(&a, &b) + hausdorff(&b, &c) + 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cutoff_flow_stays_in_the_disk_and_commutes_with_reflection(
        z in disk_point(),
        t in 1.0..6.0_f64,
        delta in 0.005..0.1_f64,
    ) {
        let s = HamiltonianSchedule::new(t, delta, SmoothingProfile::default()).unwrap();
        let opts = FlowOptions::default();
        let a = integrate_cutoff_with(z, &s, &opts).unwrap();
        let b = integrate_cutoff_with(z.reflect(), &s, &opts).unwrap();
        for u in &a.points {
            prop_assert!(u.capacity() <= 1.0 + 1e-9);
        }
        prop_assert!(a.end().reflect().distance(b.end()) < 1e-7);
        prop_assert!((a.scaling_exponent() - b.scaling_exponent()).abs() < 1e-7);
    }
}
