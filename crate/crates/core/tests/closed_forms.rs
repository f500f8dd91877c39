mod common;

use common::{closed_form_poly, shift_power_closed_form, stirling2, weyl_power_closed_form};
use ncmodgb::dmodules::{oracle_shift_power, oracle_weyl_power, shift, weyl};
use ncmodgb::field::{PrimeField, Rationals};
use num_bigint::BigInt;

const PRIMES: [u32; 3] = [1_000_000_007, 2_147_483_647, 65_521];

#[test]
fn stirling_table() {
    let row: Vec<BigInt> = (0..=5).map(|k| stirling2(5, k)).collect();
    let want: Vec<BigInt> = [0, 1, 15, 25, 10, 1]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();
    assert_eq!(row, want);
}

#[test]
fn weyl_powers_over_q() {
    let w = weyl(Rationals, 1).unwrap();
    let x_plus_d = w.add(&w.var(0), &w.var(1));
    for n in 1..=12 {
        let got = w.pow(&x_plus_d, n);
        assert_eq!(
            got,
            closed_form_poly(&w, &weyl_power_closed_form(n as u64)),
            "n={n}"
        );
        assert_eq!(got, oracle_weyl_power(&w, n), "n={n}");
    }
}

#[test]
fn shift_powers_over_q() {
    let s = shift(Rationals, 1).unwrap();
    let s_plus_t = s.add(&s.var(0), &s.var(1));
    for n in 1..=12 {
        let got = s.pow(&s_plus_t, n);
        assert_eq!(
            got,
            closed_form_poly(&s, &shift_power_closed_form(n as u64)),
            "n={n}"
        );
        assert_eq!(got, oracle_shift_power(&s, n), "n={n}");
    }
}

#[test]
fn powers_modulo_primes() {
    for p in PRIMES {
        let w = weyl(PrimeField::new(p), 1).unwrap();
        let s = shift(PrimeField::new(p), 1).unwrap();
        let a = w.add(&w.var(0), &w.var(1));
        let b = s.add(&s.var(0), &s.var(1));
        for n in 1..=12 {
            let wf = closed_form_poly(&w, &weyl_power_closed_form(n as u64));
            let sf = closed_form_poly(&s, &shift_power_closed_form(n as u64));
            assert_eq!(w.pow(&a, n), wf, "p={p} n={n}");
            assert_eq!(s.pow(&b, n), sf, "p={p} n={n}");
        }
    }
}

#[test]
fn cache_is_transparent() {
    let mut w = weyl(Rationals, 2).unwrap();
    let f = w.add(&w.add(&w.var(0), &w.var(2)), &w.mul(&w.var(1), &w.var(3)));
    let cached = w.pow(&f, 6);
    w.set_cache(false);
    assert_eq!(w.pow(&f, 6), cached);
}
