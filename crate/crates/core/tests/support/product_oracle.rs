//! Brute-force nearest-product-state search, independent of the determinant
//! criterion: grid search over both one-particle Bloch angles followed by a
//! shrinking compass search on the overlap `|<a ⊗ b|s>|`.

use bellkit::{Amplitude, TwoQubitState};
use std::f64::consts::{FRAC_PI_2, TAU};

fn overlap(s: &[Amplitude; 4], x: &[f64; 4]) -> f64 {
    let [theta, phi, chi, psi] = *x;
    let a = [
        Amplitude::new(theta.cos(), 0.0),
        Amplitude::from_polar(theta.sin(), phi),
    ];
    let b = [
        Amplitude::new(chi.cos(), 0.0),
        Amplitude::from_polar(chi.sin(), psi),
    ];
    let mut acc = Amplitude::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            acc += (a[i] * b[j]).conj() * s[2 * i + j];
        }
    }
    acc.norm()
}

/// Largest overlap of `s` with any normalized product state.
pub fn max_product_overlap(s: &TwoQubitState) -> f64 {
    let amps = s.amplitudes();
    let (n_theta, n_phase) = (13, 24);
    let mut best = (f64::MIN, [0.0; 4]);
    for i in 0..n_theta {
        let theta = FRAC_PI_2 * i as f64 / (n_theta - 1) as f64;
        for j in 0..n_phase {
            let phi = TAU * j as f64 / n_phase as f64;
            for k in 0..n_theta {
                let chi = FRAC_PI_2 * k as f64 / (n_theta - 1) as f64;
                for l in 0..n_phase {
                    let x = [theta, phi, chi, TAU * l as f64 / n_phase as f64];
                    let f = overlap(&amps, &x);
                    if f > best.0 {
                        best = (f, x);
                    }
                }
            }
        }
    }
    let (mut f, mut x) = best;
    let mut step = 0.15;
    while step > 1e-10 {
        let mut improved = false;
        for d in 0..4 {
            for dir in [-1.0, 1.0] {
                let mut y = x;
                y[d] += dir * step;
                let g = overlap(&amps, &y);
                if g > f {
                    f = g;
                    x = y;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    f
}
