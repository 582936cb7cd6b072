//! Acceptance gate: one test per criterion, each printing a single
//! `criterion N <name>: PASS|FAIL` line (run with `-- --nocapture` to see
//! the lines on success). Frozen reference values were computed
//! independently of the library code before being asserted here.

use std::time::Instant;

use nalgebra::DMatrix;

use gausschan::additivity::{
    convexity_scan, moe_additivity_scan, superadditivity_scan, NOISE_FLOOR,
};
use gausschan::capacities::{
    classical_capacity_lossy, coherent_information_closed, coherent_information_general,
    ea_classical_capacity, ea_quantum_capacity, mutual_information, quantum_capacity_lower_bound,
    quantum_capacity_upper_bound, EnergyConstraint,
};
use gausschan::channels::{classical_noise_iso, lossy, thermal_noise};
use gausschan::eof::{gaussian_eof, gaussian_eof_with, EoFOptions};
use gausschan::fock::{
    apply_lossy_fock, fock_entropy, gaussian_to_fock, lossy_entropy_exchange,
    same_covariance_non_gaussian, FockStateKind,
};
use gausschan::states::{
    conditional_entropy, entropy_of_covariance, g_function, thermal_state,
    two_mode_squeezed_state, Bipartition, GaussianState,
};
use gausschan::symplectic::{rotation, single_mode_squeezer, CovarianceMatrix};

fn report(id: usize, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {id} {name}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} {name} failed: {detail}");
}

fn g(n: f64) -> f64 {
    g_function(n).unwrap()
}

#[test]
fn criterion_1_lossy_classical_capacity() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for eta in [0.5, 0.9, 1.0] {
        for n in [1.0, 10.0] {
            let c = classical_capacity_lossy(eta, EnergyConstraint::new(n).unwrap()).unwrap();
            worst = worst.max((c - g(eta * n)).abs());
        }
    }
    let g1 = g(1.0);
    let g9 = g(9.0);
    let pass = worst <= 1e-9
        && g1 == 2.0
        && (g9 - 4.689955935892815).abs() <= 1e-5
        && start.elapsed().as_secs_f64() < 1.0;
    report(
        1,
        "lossy-classical-capacity",
        pass,
        &format!(
            "max|C-g(etaN)|={worst:.2e}, g(1)={g1}, g(9)={g9:.12}, {:.2}s",
            start.elapsed().as_secs_f64()
        ),
    );
}

#[test]
fn criterion_2_entropy_oracle_equivalence() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    // thermal states, N <= 2
    for n in [0.5, 1.0, 2.0] {
        let rho = gaussian_to_fock(FockStateKind::Thermal { n }, 160).unwrap();
        let fock = fock_entropy(&rho, 1.0).unwrap();
        let symp = entropy_of_covariance(thermal_state(n).unwrap().covariance());
        worst = worst.max((fock - symp).abs());
    }
    // squeezed vacuum, r <= 1 (pure: both entropies vanish)
    for r in [0.5, 1.0] {
        let rho = gaussian_to_fock(FockStateKind::SqueezedVacuum { r }, 200).unwrap();
        let fock = fock_entropy(&rho, 1.0).unwrap();
        let base = single_mode_squeezer(r).act(&DMatrix::identity(2, 2));
        let symp = entropy_of_covariance(&CovarianceMatrix::with_tol(base, 1e-7).unwrap());
        worst = worst.max((fock - symp).abs());
    }
    // two-mode squeezed, r <= 1: joint (pure) and reduced (thermal sinh^2 r)
    for r in [0.5, 1.0] {
        let rho = gaussian_to_fock(FockStateKind::TwoModeSqueezed { r }, 36).unwrap();
        let joint = fock_entropy(&rho, 1.0).unwrap();
        let tms = two_mode_squeezed_state(r).unwrap();
        worst = worst.max((joint - entropy_of_covariance(tms.covariance())).abs());
        let reduced = rho.reduce(0).unwrap();
        let fock_red = fock_entropy(&reduced, 1.0).unwrap();
        let symp_red = entropy_of_covariance(tms.reduce(&[0]).unwrap().covariance());
        worst = worst.max((fock_red - symp_red).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        2,
        "entropy-oracle-equivalence",
        worst <= 1e-6 && secs < 30.0,
        &format!("max deviation {worst:.2e}, {secs:.2}s"),
    );
}

#[test]
fn criterion_3_coherent_information_cross_check() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for eta in [0.3, 0.6, 1.0] {
        for c in [1.0, 1.5, 2.0] {
            for n in [0.5, 1.0, 2.0] {
                let closed = coherent_information_closed(eta, c, n).unwrap();
                let channel = thermal_noise(eta, c).unwrap();
                let input = thermal_state(n).unwrap();
                let general = coherent_information_general(&channel, &input).unwrap();
                worst = worst.max((closed - general).abs());
                if (eta - 1.0).abs() < 1e-15 {
                    // eta -> 1 limit: J = g(N) regardless of c
                    worst = worst.max((closed - g(n)).abs());
                }
            }
        }
    }
    // eta = 0.8, N -> infinity extrapolation: J -> log2(eta/(1-eta)) = 2
    let asym = coherent_information_closed(0.8, 1.0, 1e7).unwrap();
    let secs = start.elapsed().as_secs_f64();
    report(
        3,
        "coherent-information-cross-check",
        worst <= 1e-8 && (asym - 2.0).abs() <= 0.02 && secs < 5.0,
        &format!("grid max {worst:.2e}, J(0.8,N=1e7)={asym:.4}, {secs:.2}s"),
    );
}

#[test]
fn criterion_4_bound_ordering() {
    let mut ordered = true;
    let mut worst_gap = f64::INFINITY;
    for eta in [0.1, 0.3, 0.55, 0.75, 0.9, 1.5, 2.0] {
        for c in [1.0, 1.5, 2.0] {
            let upper = quantum_capacity_upper_bound(eta, c).unwrap();
            let lower = quantum_capacity_lower_bound(
                eta,
                c,
                Some(EnergyConstraint::new(5.0).unwrap()),
            )
            .unwrap();
            if lower > upper + 1e-9 {
                ordered = false;
            }
            worst_gap = worst_gap.min(upper - lower);
        }
    }
    let spot = quantum_capacity_upper_bound(0.75, 1.0).unwrap();
    let mut zeros = true;
    for eta in [0.2, 0.35, 0.5] {
        let lb = quantum_capacity_lower_bound(eta, 1.0, Some(EnergyConstraint::new(5.0).unwrap()))
            .unwrap();
        if lb != 0.0 {
            zeros = false;
        }
    }
    report(
        4,
        "bound-ordering",
        ordered && (spot - 2.807354922057604).abs() <= 1e-5 && zeros,
        &format!("min gap {worst_gap:.3e}, ub(0.75,1)={spot:.8}, lb(eta<=1/2,c=1)==0: {zeros}"),
    );
}

#[test]
fn criterion_5_entanglement_assisted_identity_limit() {
    let k = EnergyConstraint::new(1.0).unwrap();
    let ce = ea_classical_capacity(1.0, 1.0, k).unwrap();
    let qe = ea_quantum_capacity(1.0, 1.0, k).unwrap();
    report(
        5,
        "ea-identity-limit",
        (ce - 4.0).abs() <= 1e-6 && (qe - ce / 2.0).abs() <= 1e-12,
        &format!("C_E={ce:.9}, Q_E={qe:.9}"),
    );
}

#[test]
fn criterion_6_gaussian_eof() {
    let start = Instant::now();
    let part = Bipartition::new(2, &[0]).unwrap();
    // pure TMS with cosh 2r = 3: E_G = entanglement entropy = 2 bits
    let r = 0.5 * 3.0f64.acosh();
    let tms = two_mode_squeezed_state(r).unwrap();
    let pure = gaussian_eof(tms.covariance(), &part).unwrap();
    let pure_ok = (pure.value_bits - 2.0).abs() <= 1e-3;

    // noisy symmetric TMS vs the independently computed oracle. For the
    // symmetric state [[aI, bZ], [bZ, aI]] the optimal pure interpolant is a
    // TMS with e^{-2r0} = a - b, giving E = g(sinh^2 r0); with a = 3.5,
    // b = 2*sqrt(2) that evaluates to 0.2453229 bits (grid search agrees).
    let noisy_target = CovarianceMatrix::new(
        tms.covariance().matrix() + DMatrix::identity(4, 4) * 0.5,
    )
    .unwrap();
    let noisy = gaussian_eof(&noisy_target, &part).unwrap();
    let noisy_ok = (noisy.value_bits - 0.2453229).abs() <= 1e-3;

    // 50 seeded direct-sum additivity samples: residual within +/- 2e-3
    let opts = EoFOptions {
        restarts: 6,
        stage_evaluations: 12_000,
        ..Default::default()
    };
    let adds = superadditivity_scan(50, 11, false, &opts).unwrap();
    let worst_add = adds
        .iter()
        .map(|r| r.residual_bits.abs())
        .fold(0.0f64, f64::max);

    // 50 seeded convexity samples: no violation beyond -2e-3 (positive
    // slack is expected; convexity only bounds the residual from below)
    let convs = convexity_scan(50, 12, &opts).unwrap();
    let worst_conv = convs
        .iter()
        .map(|r| r.residual_bits)
        .fold(f64::INFINITY, f64::min);

    let secs = start.elapsed().as_secs_f64();
    report(
        6,
        "gaussian-eof",
        pure_ok
            && noisy_ok
            && worst_add <= NOISE_FLOOR
            && worst_conv >= -NOISE_FLOOR
            && secs < 600.0,
        &format!(
            "TMS={:.5}, noisy={:.6} (oracle 0.2453229), max|add|={worst_add:.2e}, min conv={worst_conv:.2e}, {secs:.1}s",
            pure.value_bits, noisy.value_bits
        ),
    );
}

#[test]
fn criterion_7_extremality_suite() {
    use rand::Rng;
    use rand::SeedableRng;
    let start = Instant::now();
    let mut states = 0usize;
    let mut worst_entropy = f64::NEG_INFINITY;
    let mut worst_mutual = f64::NEG_INFINITY;
    let mut worst_conditional = f64::NEG_INFINITY;

    // 35 one-mode states: entropy and channel mutual information
    for seed in 0..35u64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xacce55 ^ seed);
        let c = 1.3 + 1.2 * rng.gen::<f64>();
        let s = 0.25 * rng.gen::<f64>();
        let phi = std::f64::consts::PI * rng.gen::<f64>();
        let base = rotation(phi).act(&single_mode_squeezer(s).act(&(DMatrix::identity(2, 2) * c)));
        let target = CovarianceMatrix::new(base).unwrap();
        let mixture = same_covariance_non_gaussian(&target, seed, 36).unwrap();
        worst_entropy = worst_entropy.max(mixture.entropy() - entropy_of_covariance(&target));

        let eta = 0.6;
        let channel = lossy(eta).unwrap();
        let input = GaussianState::centered(target.clone());
        let i_gauss = mutual_information(&channel, &input).unwrap();
        let rho = mixture.density().unwrap();
        let out = apply_lossy_fock(&rho, eta).unwrap();
        let i_oracle = fock_entropy(&rho, 1.0).unwrap() + fock_entropy(&out, 1.0).unwrap()
            - lossy_entropy_exchange(&rho, eta).unwrap();
        worst_mutual = worst_mutual.max(i_oracle - i_gauss);
        states += 1;
    }

    // 16 two-mode states: entropy and conditional entropy
    for seed in 0..16u64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xc0de ^ seed);
        let r = 0.25 + 0.3 * rng.gen::<f64>();
        let y = 0.3 + 0.5 * rng.gen::<f64>();
        let tms = two_mode_squeezed_state(r).unwrap();
        let target =
            CovarianceMatrix::new(tms.covariance().matrix() + DMatrix::identity(4, 4) * y)
                .unwrap();
        let mixture = same_covariance_non_gaussian(&target, seed, 18).unwrap();
        worst_entropy = worst_entropy.max(mixture.entropy() - entropy_of_covariance(&target));

        let s_a = fock_entropy(&mixture.reduce(0).unwrap(), 1.0).unwrap();
        let part = Bipartition::new(2, &[0]).unwrap();
        let gauss = GaussianState::centered(target.clone());
        let cond_gauss = conditional_entropy(&gauss, &part).unwrap();
        worst_conditional = worst_conditional.max((mixture.entropy() - s_a) - cond_gauss);
        states += 1;
    }

    let secs = start.elapsed().as_secs_f64();
    report(
        7,
        "extremality-suite",
        states >= 50
            && worst_entropy <= 1e-6
            && worst_mutual <= 1e-6
            && worst_conditional <= 1e-6
            && secs < 300.0,
        &format!(
            "{states} states, worst S={worst_entropy:.2e}, I={worst_mutual:.2e}, S(A|B)={worst_conditional:.2e}, {secs:.1}s"
        ),
    );
}

#[test]
fn criterion_8_moe_additivity_scan() {
    let start = Instant::now();
    let lossy_rec = moe_additivity_scan(&lossy(0.6).unwrap(), 2.0, 50, 21).unwrap();
    let classical_rec = moe_additivity_scan(&classical_noise_iso(1.0).unwrap(), 2.0, 50, 22).unwrap();
    let secs = start.elapsed().as_secs_f64();
    report(
        8,
        "moe-additivity",
        lossy_rec.residual_bits.abs() <= 2e-3
            && classical_rec.residual_bits.abs() <= 2e-3
            && secs < 600.0,
        &format!(
            "lossy(0.6): {:.2e}, classical(y=1): {:.2e}, {secs:.1}s",
            lossy_rec.residual_bits, classical_rec.residual_bits
        ),
    );
}

// the scans in criterion 6 are also exercised end-to-end through the CLI in
// tests/cli.rs; this target keeps the acceptance gate self-contained

#[test]
fn criterion_6b_eof_restart_determinism() {
    // same seed, same result, bit for bit (supports the frozen values above)
    let part = Bipartition::new(2, &[0]).unwrap();
    let tms = two_mode_squeezed_state(0.6).unwrap();
    let target =
        CovarianceMatrix::new(tms.covariance().matrix() + DMatrix::identity(4, 4) * 0.4).unwrap();
    let opts = EoFOptions {
        restarts: 4,
        stage_evaluations: 6_000,
        ..Default::default()
    };
    let a = gaussian_eof_with(&target, &part, &opts).unwrap();
    let b = gaussian_eof_with(&target, &part, &opts).unwrap();
    assert_eq!(a.value_bits.to_bits(), b.value_bits.to_bits());
}
