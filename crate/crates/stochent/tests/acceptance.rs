//! End-to-end acceptance gate: ten numbered criteria, each printing a single
//! pass/fail line. Run with `--nocapture` to see the lines on success.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use rand::Rng;

use stochent::entropy::{matrix_entropy, relative_entropy_stoch, shannon_entropy};
use stochent::linalg::hermitian_eigh;
use stochent::quantum::{
    channel_from_stochastic_matrix, channel_relative_entropy, kraus_matrix, map_entropy,
    sample_channel, sample_unitary,
};
use stochent::rng::rng_from;
use stochent::structure::{
    birkhoff_decompose, check_entropy_saturation, construct_additivity,
    construct_strong_additivity, perm_matrix, sample_bistochastic, sample_permutation,
    sample_positive_prob, sample_stochastic, sample_theorem1_spec, sample_theorem2_spec,
    theorem1_equality_sides, theorem2_equality_sides, StrongAdditivityBlock,
};
use stochent::verify::conjecture_checks;
use stochent::{ComplexMatrix, KrausChannel, ProbVector, StochasticMatrix, SuiteReport};

fn criterion(n: u32, desc: &str, body: impl FnOnce()) {
    let result = catch_unwind(AssertUnwindSafe(body));
    match &result {
        Ok(()) => println!("criterion {n} ({desc}): pass"),
        Err(_) => println!("criterion {n} ({desc}): fail"),
    }
    if let Err(e) = result {
        resume_unwind(e);
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stochent"))
}

#[test]
fn criterion_01_suite_clean_run() {
    criterion(1, "all suites clean at scale", || {
        let start = Instant::now();
        let out = bin()
            .args([
                "check", "--suite", "all", "--trials", "1000", "--dims", "2,3,4,5,6", "--seed",
                "42",
            ])
            .output()
            .expect("spawn stochent");
        let stdout = String::from_utf8_lossy(&out.stdout);
        assert!(
            out.status.success(),
            "check exited {:?}\nstdout:\n{stdout}\nstderr:\n{}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(stdout.lines().count(), 17, "one summary line per suite");
        for line in stdout.lines() {
            assert!(line.contains(": 0 violations"), "violations in: {line}");
        }
        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs() < 300,
            "suite run took {elapsed:?}, budget is 5 minutes"
        );
    });
}

#[test]
fn criterion_02_saturation_exactness() {
    criterion(2, "equality constructors are exact", || {
        let mut rng = rng_from(0xACC2, &[]);
        for _ in 0..200 {
            let spec = sample_theorem1_spec(3, 3, &mut rng);
            let (lhs, rhs) = theorem1_equality_sides(&spec).unwrap();
            let lhs = lhs.expect_finite("lhs").unwrap();
            let rhs = rhs.expect_finite("rhs").unwrap();
            assert!((lhs - rhs).abs() <= 1e-10, "gap {}", (lhs - rhs).abs());
        }
        for _ in 0..200 {
            let spec = sample_theorem2_spec(3, 3, &mut rng);
            let p = sample_positive_prob(spec.total_dim(), &mut rng);
            let (lhs, rhs) = theorem2_equality_sides(&spec, &p).unwrap();
            let lhs = lhs.expect_finite("lhs").unwrap();
            let rhs = rhs.expect_finite("rhs").unwrap();
            assert!((lhs - rhs).abs() <= 1e-10, "gap {}", (lhs - rhs).abs());
        }
        for _ in 0..100 {
            let m = rng.gen_range(1..=4);
            let n = rng.gen_range(1..=4);
            let xl = sample_stochastic(m, &mut rng);
            let yr = sample_stochastic(n, &mut rng);
            let pi_l = sample_permutation(m, &mut rng);
            let pi_r = sample_permutation(n, &mut rng);
            let (x, y) = construct_additivity(&xl, &pi_l, &yr, &pi_r).unwrap();
            let lhs = matrix_entropy(&x.matmul(&y).unwrap());
            let rhs = matrix_entropy(&x) + matrix_entropy(&y);
            assert!((lhs - rhs).abs() <= 1e-10, "gap {}", (lhs - rhs).abs());
        }
        for _ in 0..100 {
            let blocks: Vec<StrongAdditivityBlock> = (0..rng.gen_range(1..=2))
                .map(|_| {
                    let m = rng.gen_range(1..=3);
                    let n = rng.gen_range(1..=3);
                    StrongAdditivityBlock {
                        xl: sample_stochastic(m, &mut rng),
                        yl: sample_stochastic(m, &mut rng),
                        yr: sample_stochastic(n, &mut rng),
                        zr: sample_stochastic(n, &mut rng),
                        pi_l: sample_permutation(m, &mut rng),
                        pi_r: sample_permutation(n, &mut rng),
                    }
                })
                .collect();
            let (x, y, z) = construct_strong_additivity(&blocks).unwrap();
            let xy = x.matmul(&y).unwrap();
            let yz = y.matmul(&z).unwrap();
            let lhs = matrix_entropy(&x.matmul(&yz).unwrap()) + matrix_entropy(&y);
            let rhs = matrix_entropy(&xy) + matrix_entropy(&yz);
            assert!((lhs - rhs).abs() <= 1e-10, "gap {}", (lhs - rhs).abs());
        }
    });
}

#[test]
fn criterion_03_saturation_biconditional() {
    criterion(3, "equality iff fixed-point condition", || {
        let mut rng = rng_from(0xACC3, &[]);
        for _ in 0..1000 {
            let n = rng.gen_range(2..=6);
            let t = sample_bistochastic(n, rng.gen_range(1..=n + 1), &mut rng);
            let a = sample_stochastic(n, &mut rng);
            let p = sample_positive_prob(n, &mut rng);
            let (eq, cond) = check_entropy_saturation(&t, &a, &p).unwrap();
            assert_eq!(eq, cond, "booleans disagree at n={n}");
        }
        // Designed saturating family: T = P(π)⊗Flat₂ and A = A_L⊗Flat₂
        // satisfy TᵗTA = A with the entropy equality, for any stochastic A_L.
        let flat2 = StochasticMatrix::flat(2);
        for _ in 0..100 {
            let n = rng.gen_range(2..=5);
            let t = perm_matrix(&sample_permutation(n, &mut rng))
                .unwrap()
                .kron(&flat2);
            let a = sample_stochastic(n, &mut rng).kron(&flat2);
            let p = sample_positive_prob(2 * n, &mut rng);
            let (eq, cond) = check_entropy_saturation(&t, &a, &p).unwrap();
            assert!(eq && cond, "designed instance must saturate at n={n}");
        }
    });
}

#[test]
fn criterion_04_birkhoff_round_trip() {
    criterion(4, "Birkhoff decomposition round-trips", || {
        let mut rng = rng_from(0xACC4, &[]);
        for i in 0..200 {
            let n = 2 + i % 7;
            let b = sample_bistochastic(n, rng.gen_range(1..=n * n), &mut rng);
            let d = birkhoff_decompose(&b).unwrap();
            assert!(d.terms.len() <= n * n - 2 * n + 2, "too many terms at n={n}");
            let err = d.reconstruct(n).unwrap().max_abs_diff(&b);
            assert!(err <= 1e-10, "reconstruction error {err} at n={n}");
        }
    });
}

#[test]
fn criterion_05_kraus_matrix_representation_independence() {
    criterion(5, "B(Φ) is invariant under Kraus remixing", || {
        let mut rng = rng_from(0xACC5, &[]);
        for _ in 0..500 {
            let n = rng.gen_range(2..=5);
            let k = rng.gen_range(1..=n * n);
            let ch = sample_channel(n, k, &mut rng);
            let b = kraus_matrix(&ch).unwrap();
            // Zero-pad to a strictly larger Kraus list before remixing.
            let m = ch.kraus().len() + rng.gen_range(0..=2);
            let u = sample_unitary(m, &mut rng);
            let b2 = kraus_matrix(&ch.remix(&u).unwrap()).unwrap();
            let drift = b.max_abs_diff(&b2);
            assert!(drift <= 1e-12, "drift {drift} at n={n}, k={k}, m={m}");
        }
    });
}

#[test]
fn criterion_06_map_entropy_bounds() {
    criterion(6, "map-entropy bounds and diagonal equality", || {
        let mut rng = rng_from(0xACC6, &[]);
        let mut finite_pairs = 0usize;
        for _ in 0..500 {
            let n = rng.gen_range(2..=4);
            let phi = sample_channel(n, rng.gen_range(1..=n * n), &mut rng);
            let psi = sample_channel(n, n * n, &mut rng);
            let b_phi = kraus_matrix(&phi).unwrap();
            let s_map = map_entropy(&phi).unwrap();
            let bound = matrix_entropy(&b_phi) + (n as f64).log2();
            assert!(s_map <= bound + 1e-8, "S^map {s_map} > {bound}");

            let uniform = ProbVector::uniform(n);
            let hbb = relative_entropy_stoch(&b_phi, &kraus_matrix(&psi).unwrap(), &uniform)
                .unwrap();
            let s_rel = channel_relative_entropy(&phi, &psi).unwrap();
            if let (Some(hbb), Some(s_rel)) = (hbb.finite(), s_rel.finite()) {
                finite_pairs += 1;
                assert!(hbb <= s_rel + 1e-8, "H(B||B') {hbb} > S {s_rel}");
            }
        }
        assert!(finite_pairs >= 250, "only {finite_pairs} finite pairs");
        for _ in 0..100 {
            let n = rng.gen_range(2..=5);
            let phi =
                channel_from_stochastic_matrix(&sample_stochastic(n, &mut rng)).unwrap();
            let s_map = map_entropy(&phi).unwrap();
            let rhs = matrix_entropy(&kraus_matrix(&phi).unwrap()) + (n as f64).log2();
            assert!((s_map - rhs).abs() <= 1e-9, "gap {}", (s_map - rhs).abs());
        }
    });
}

#[test]
fn criterion_07_diagonal_lift_algebra() {
    criterion(7, "lifted stochastic matrices compose exactly", || {
        let mut rng = rng_from(0xACC7, &[]);
        for _ in 0..200 {
            let n = rng.gen_range(2..=5);
            let s1 = sample_stochastic(n, &mut rng);
            let s2 = sample_stochastic(n, &mut rng);
            let phi = channel_from_stochastic_matrix(&s1).unwrap();
            let psi = channel_from_stochastic_matrix(&s2).unwrap();
            let comp = phi.compose(&psi).unwrap();
            let b_comp = kraus_matrix(&comp).unwrap();
            let prod = kraus_matrix(&phi)
                .unwrap()
                .matmul(&kraus_matrix(&psi).unwrap())
                .unwrap();
            let drift = b_comp.max_abs_diff(&prod);
            assert!(drift <= 1e-12, "B(Φ∘Ψ) vs B(Φ)B(Ψ) drift {drift}");

            let s_map = map_entropy(&comp).unwrap();
            let rhs = matrix_entropy(&b_comp) + (n as f64).log2();
            assert!((s_map - rhs).abs() <= 1e-9, "gap {}", (s_map - rhs).abs());
        }
    });
}

#[test]
fn criterion_08_closed_form_anchors() {
    criterion(8, "closed-form anchors hold", || {
        let mut rng = rng_from(0xACC8, &[]);
        for n in 2..=4usize {
            for _ in 0..10 {
                let ch = KrausChannel::unitary(&sample_unitary(n, &mut rng)).unwrap();
                let s = map_entropy(&ch).unwrap();
                assert!(s.abs() <= 1e-10, "unitary map entropy {s}");
            }
            let s = map_entropy(&KrausChannel::depolarizing(n)).unwrap();
            let expect = 2.0 * (n as f64).log2();
            assert!((s - expect).abs() <= 1e-9, "depolarizing entropy {s}");
        }
        for n in 2..=16usize {
            let h = shannon_entropy(&ProbVector::uniform(n));
            assert!((h - (n as f64).log2()).abs() <= 1e-12, "H(uniform-{n}) = {h}");
        }
    });
}

#[test]
fn criterion_09_conjecture_fuzz_determinism() {
    criterion(9, "fuzzer is deterministic with exact replays", || {
        let run = || {
            let out = bin()
                .args(["fuzz", "--trials", "5000", "--dims", "2,3", "--seed", "7"])
                .output()
                .expect("spawn stochent");
            assert!(
                out.status.success(),
                "fuzz exited {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            );
            out.stdout
        };
        let first = run();
        let second = run();
        assert_eq!(first, second, "fuzz output must be byte-identical");

        // The stdout payload after the summary line is the report JSON.
        let text = String::from_utf8(first).unwrap();
        let json_start = text.find('{').expect("report JSON in output");
        let report: SuiteReport = serde_json::from_str(&text[json_start..]).unwrap();
        for v in &report.violations {
            let inst = &v.instance;
            let checks = conjecture_checks(
                inst["dim"].as_u64().unwrap() as usize,
                inst["k1"].as_u64().unwrap() as usize,
                inst["k2"].as_u64().unwrap() as usize,
                inst["diagonal"].as_bool().unwrap(),
                inst["subseed"].as_u64().unwrap(),
            )
            .unwrap();
            let label = inst["check"].as_str().unwrap();
            let c = checks.iter().find(|c| c.label == label).expect("check label");
            assert!(
                (c.gap - v.gap).abs() <= 1e-12,
                "replay gap {} vs recorded {}",
                c.gap,
                v.gap
            );
        }
    });
}

#[test]
fn criterion_10_eigensolver_quality() {
    criterion(10, "eigensolver reconstructs and orthonormalizes", || {
        let mut rng = rng_from(0xACCA, &[]);
        let start = Instant::now();
        for _ in 0..1000 {
            let n = rng.gen_range(1..=16);
            let g = ComplexMatrix::from_fn(n, n, |_, _| {
                num_complex::Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let h = g.add(&g.dagger()).unwrap().scale_re(0.5);
            let eig = hermitian_eigh(&h).unwrap();
            let rec_err = eig.reconstruct().max_abs_diff(&h);
            assert!(rec_err <= 1e-10, "reconstruction error {rec_err} at n={n}");
            let v = &eig.eigenvectors;
            let ortho_err = v.dagger().matmul(v).unwrap().max_abs_diff(&ComplexMatrix::identity(n));
            assert!(ortho_err <= 1e-10, "orthonormality error {ortho_err} at n={n}");
        }
        let elapsed = start.elapsed();
        assert!(elapsed.as_secs() < 30, "eigensolver gate took {elapsed:?}");
    });
}
