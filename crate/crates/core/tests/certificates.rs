//! Certificate soundness over a small suite of instances.

use facdio_core::arith::primes_up_to;
use facdio_core::certify::{interval_certificate, verify_certificate, IntervalCertificate};
use facdio_core::instance::{EquationInstance, InstanceFlags, Rhs};
use facdio_core::poly::{BinaryForm, FormFactorization, IntegerPolynomial};

fn instance(q: &[&[i64]], a: &[u64], rhs: Rhs) -> EquationInstance {
    EquationInstance::new(
        q.iter().map(|c| IntegerPolynomial::from_i64(c)).collect(),
        a.to_vec(),
        rhs,
        InstanceFlags::default(),
    )
    .unwrap()
}

fn form(c: &[i64]) -> BinaryForm {
    BinaryForm::from_i64(c).unwrap()
}

fn suite() -> Vec<EquationInstance> {
    let squares_times_eisenstein =
        FormFactorization::new(vec![(form(&[1, 0, 1]), 1), (form(&[1, 1, 1]), 2)], None).unwrap();
    vec![
        instance(
            &[&[0, 1]],
            &[1],
            Rhs::BinaryForm {
                form: form(&[1, 0, 1]),
            },
        ),
        instance(
            &[&[0, 1]],
            &[2],
            Rhs::BinaryForm {
                form: form(&[1, 1, 1]),
            },
        ),
        instance(
            &[&[0, 1, 1]],
            &[1],
            Rhs::BinaryForm {
                form: form(&[1, 0, 2]),
            },
        ),
        instance(
            &[&[0, 1]],
            &[3],
            Rhs::BinaryForm {
                form: form(&[1, 0, 0, 2]),
            },
        ),
        instance(
            &[&[0, 1], &[0, 1]],
            &[1, 1],
            Rhs::BinaryForm {
                form: form(&[1, 0, 0, 0, 1]),
            },
        ),
        instance(
            &[&[0, 0, 1]],
            &[1],
            Rhs::BinaryForm {
                form: form(&[1, -1, 1, -1, 1]),
            },
        ),
        instance(
            &[&[0, 1]],
            &[1],
            Rhs::FactoredForm {
                factorization: squares_times_eisenstein,
            },
        ),
        instance(
            &[&[0, 1]],
            &[1],
            Rhs::Univariate {
                poly: IntegerPolynomial::from_i64(&[1, 0, 1]),
            },
        ),
        instance(&[&[0, 1], &[0, 2, 1]], &[1, 1], Rhs::MonomialPower { d: 3 }),
    ]
}

#[test]
fn every_issued_certificate_replays_clean() {
    let mut issued = 0;
    for inst in suite() {
        for q in primes_up_to(30) {
            let Ok(cert) = interval_certificate(&inst, q) else {
                continue;
            };
            assert!(
                verify_certificate(&cert, &inst, 500),
                "q = {q}, rhs {:?}",
                inst.rhs()
            );
            issued += 1;
        }
    }
    assert!(issued >= 20, "only {issued} certificates issued");
}

#[test]
fn certificates_survive_json() {
    for inst in suite() {
        for q in primes_up_to(30) {
            let Ok(cert) = interval_certificate(&inst, q) else {
                continue;
            };
            let text = serde_json::to_string(&cert).unwrap();
            let back: IntervalCertificate = serde_json::from_str(&text).unwrap();
            assert_eq!(back, cert);
        }
    }
}

#[test]
fn composite_threshold_is_min_degree_times_exponent() {
    let inst = &suite()[6];
    let cert = interval_certificate(inst, 11).unwrap();
    assert_eq!(cert.d, 2);
    assert_eq!(cert.patterns.len(), 2);
}
