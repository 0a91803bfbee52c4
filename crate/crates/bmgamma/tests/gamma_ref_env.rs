//! The reference-digit override is process-global state, so all of its
//! branches run inside a single test body.

use std::fs;

use bmgamma::bessel::{gamma_ref, BesselError, GAMMA_REF_ENV};
use bmgamma::mp::rational::rational_from_decimal;
use bmgamma::mp::Real;

#[test]
fn reference_path_override() {
    let builtin = gamma_ref(128).unwrap();

    let dir = std::env::temp_dir();
    let good = dir.join(format!("gamma-ref-good-{}.txt", std::process::id()));
    let digits40 = "5772156649015328606065120900824024310421";
    fs::write(&good, format!("{digits40}\n")).unwrap();
    std::env::set_var(GAMMA_REF_ENV, &good);

    let v = gamma_ref(64).unwrap();
    let want = Real::from_rational(
        &rational_from_decimal(&format!("0.{digits40}")).unwrap(),
        64,
    );
    assert_eq!(v.to_rational(), want.to_rational());

    // a 40-digit file cannot certify 200 bits
    match gamma_ref(200) {
        Err(BesselError::FixtureExhausted { max, .. }) => assert!(max < 200),
        other => panic!("expected exhaustion, got {other:?}"),
    }

    // unreadable path
    std::env::set_var(GAMMA_REF_ENV, dir.join("no-such-gamma-ref.txt"));
    assert!(matches!(gamma_ref(64), Err(BesselError::FixtureRead { .. })));

    // non-digit content
    let bad = dir.join(format!("gamma-ref-bad-{}.txt", std::process::id()));
    fs::write(&bad, "0.5772x").unwrap();
    std::env::set_var(GAMMA_REF_ENV, &bad);
    assert!(matches!(gamma_ref(64), Err(BesselError::FixtureFormat)));

    // back to the built-in fixture
    std::env::remove_var(GAMMA_REF_ENV);
    let again = gamma_ref(128).unwrap();
    assert_eq!(again.to_rational(), builtin.to_rational());

    let _ = fs::remove_file(&good);
    let _ = fs::remove_file(&bad);
}
