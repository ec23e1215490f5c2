use proptest::prelude::*;
use qelliptic::angle::{big_u_cf, big_u_product, theta_angle, u0_cf, u0_product, ModularAngleFrame};
use qelliptic::elliptic::EllipticContext;
use qelliptic::jacobi::{self, FourierKind};
use qelliptic::qseries::{
    chi8, divisor_count, divisors, lambert_dual, lambert_sum, qpochhammer, sigma1, ArithmeticFunctionSpec,
};
use qelliptic::theta::{agile, general_theta, Sign};
use qelliptic::{Nome, TruncationPolicy, C64};

fn pol() -> TruncationPolicy {
    TruncationPolicy::default()
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pochhammer_shift(a in -2.0f64..2.0, q in 0.01f64..0.7) {
        let nome = Nome::from_real(q).unwrap();
        let a = C64::new(a, 0.0);
        let lhs = qpochhammer(a, &nome, &pol()).unwrap().value;
        let rhs = (1.0 - a) * qpochhammer(a * q, &nome, &pol()).unwrap().value;
        prop_assert!(close(lhs, rhs, 1e-12));
    }

    #[test]
    fn theta_angle_step(a in 0.05f64..4.0, q in 0.01f64..0.7) {
        let nome = Nome::from_real(q).unwrap();
        let d = theta_angle(&nome, a, &pol()).unwrap().value - theta_angle(&nome, a + 1.0, &pol()).unwrap().value;
        prop_assert!(close(d, C64::new(2.0 * q.powf(a).atanh(), 0.0), 1e-12));
    }

    #[test]
    fn triple_product(a in 0.3f64..3.0, b in -2.0f64..2.0, q in 0.01f64..0.6) {
        // ϑ3(a,b;q) = (q^{2a};q^{2a}) (-q^{a+b};q^{2a}) (-q^{a-b};q^{2a})
        let nome = Nome::from_real(q).unwrap();
        let lhs = general_theta(Sign::Plus, a, b, &nome, &pol()).unwrap().value;
        let n2 = Nome::from_real(q.powf(2.0 * a)).unwrap();
        let p = |x: f64| qpochhammer(C64::new(x, 0.0), &n2, &pol()).unwrap().value;
        let rhs = p(q.powf(2.0 * a)) * p(-q.powf(a + b)) * p(-q.powf(a - b));
        prop_assert!(close(lhs, rhs, 1e-11));
    }

    #[test]
    fn agile_duplication(a in 0.2f64..3.0, p in 3.5f64..7.0, q in 0.01f64..0.6) {
        let nome = Nome::from_real(q).unwrap();
        let m = agile(a, p, Sign::Minus, &nome, &pol()).unwrap().value;
        let pl = agile(a, p, Sign::Plus, &nome, &pol()).unwrap().value;
        let sq = agile(a, p, Sign::Minus, &nome.scaled(2.0).unwrap(), &pol()).unwrap().value;
        prop_assert!(close(m * pl, sq, 1e-12));
    }

    #[test]
    fn u0_forms_agree(a in 0.2f64..0.9, q in 0.01f64..0.19) {
        let nome = Nome::from_real(q).unwrap();
        let a = C64::new(a, 0.0);
        let cf = u0_cf(a, &nome, &pol()).unwrap().value;
        prop_assert!(close(cf, u0_product(a, &nome, &pol()).unwrap(), 1e-10));
    }

    #[test]
    fn big_u_forms_agree(a in -0.9f64..0.9, b in -0.9f64..0.9, q in 0.01f64..0.5) {
        let nome = Nome::from_real(q).unwrap();
        let (a, b) = (C64::new(a, 0.0), C64::new(b, 0.0));
        let cf = big_u_cf(a, b, &nome, &pol()).unwrap().value;
        prop_assert!(close(cf, big_u_product(a, b, &nome, &pol()).unwrap(), 1e-10));
    }

    #[test]
    fn lambert_matches_dual(k in 0i32..4, q in 0.01f64..0.5) {
        let nome = Nome::from_real(q).unwrap();
        let spec = ArithmeticFunctionSpec::Power(k);
        let l = lambert_sum(&spec, &nome, &pol()).unwrap().value;
        let d = lambert_dual(&spec, &nome, &pol()).unwrap().value;
        prop_assert!(close(l, d, 1e-10));
    }

    #[test]
    fn modulus_relations(x in -0.45f64..0.45, y in 0.25f64..1.5) {
        let c = EllipticContext::from_z(C64::new(x, y), &pol()).unwrap();
        prop_assert!(close(c.k * c.k + c.k_prime * c.k_prime, C64::new(1.0, 0.0), 1e-10));
        prop_assert!(close(C64::new(0.0, 1.0) * c.big_k_prime / c.big_k, 2.0 * c.z, 1e-9));
    }

    #[test]
    fn pythagorean_sn_cn(r in 0.5f64..8.0, u in -2.0f64..2.0, v in -0.3f64..0.3) {
        let c = EllipticContext::from_r(r, &pol()).unwrap();
        let w = C64::new(u, v * c.big_k_prime.re);
        let sn = jacobi::eval(FourierKind::Sn, &c, w, &pol()).unwrap();
        let cn = jacobi::eval(FourierKind::Cn, &c, w, &pol()).unwrap();
        prop_assert!(close(sn * sn + cn * cn, C64::new(1.0, 0.0), 1e-9));
    }

    #[test]
    fn angle_frame_invariants(a in 0.1f64..0.9, x in -0.4f64..0.4, y in 0.3f64..1.2) {
        let f = ModularAngleFrame::new(a, C64::new(x, y), &pol()).unwrap();
        for (name, r) in f.invariant_residuals() {
            prop_assert!(r < 1e-9, "{name}: {r}");
        }
    }

    #[test]
    fn divisor_functions(n in 1u64..5000) {
        let brute: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        prop_assert_eq!(divisors(n), brute.clone());
        prop_assert_eq!(divisor_count(n), brute.len() as u64);
        prop_assert_eq!(sigma1(n), brute.iter().sum::<u64>());
    }

    #[test]
    fn chi8_is_periodic(n in -1000i64..1000) {
        prop_assert_eq!(chi8(n), chi8(n + 8));
    }
}

#[test]
fn negation_is_an_involution_on_integer_powers() {
    let nome = Nome::from_real(0.3).unwrap();
    let neg = nome.negated();
    for k in 1..6 {
        let want = (-0.3f64).powi(k);
        assert!((neg.pow(k as f64) - C64::new(want, 0.0)).norm() < 1e-14);
    }
}
