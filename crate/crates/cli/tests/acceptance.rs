//! Acceptance gate. Each test checks one release criterion end to end and
//! prints a single `ACCEPTANCE <name>: PASS|FAIL` line (visible under
//! `cargo test --test acceptance -- --nocapture`).

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use dtqw_core::drg::{
    complete_graph_average, dual_polynomial_at_degree, family_sweep, graph_bounds, orthopoly,
    quotient_b, quotient_s, quotient_shat, SweepFamily,
};
use dtqw_core::graph::{
    complete, cycle, hamming, hypercube, intersection_array_of, johnson, petersen,
};
use dtqw_core::spectral::{
    augmented_matrix, closed_form_average, walk_eigenphases, walk_eigenprojection, sym_eig,
    DEFAULT_TOL,
};
use dtqw_core::walk::WalkOperators;
use dtqw_core::Graph;
use ndarray::Array2;
use num_complex::Complex64;

fn criterion(name: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("ACCEPTANCE {name}: PASS"),
        Err(why) => {
            println!("ACCEPTANCE {name}: FAIL ({why})");
            panic!("acceptance criterion '{name}' failed: {why}");
        }
    }
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn core<T>(r: dtqw_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within_budget(start: Instant, budget: Duration) -> Result<(), String> {
    let used = start.elapsed();
    ensure(used <= budget, || {
        format!("runtime {used:.2?} over the {budget:?} budget")
    })
}

/// Regular graphs with verified intersection arrays used across criteria.
fn test_drgs() -> Vec<Graph> {
    vec![
        complete(3).unwrap(),
        complete(5).unwrap(),
        cycle(6).unwrap(),
        petersen().unwrap(),
        hypercube(4).unwrap(),
        hamming(2, 3).unwrap(),
        johnson(5, 2).unwrap(),
    ]
}

fn max_abs(m: &Array2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn k3_exactness() {
    criterion("k3-exactness", || {
        let start = Instant::now();
        let g = core(complete(3))?;
        let rep = core(closed_form_average(&g, 0, DEFAULT_TOL))?;
        let checks = [
            ("s1", rep.s1, 8.0 / 27.0),
            ("s2", rep.s2, 1.0 / 27.0),
            ("total", rep.total(), 1.0 / 3.0),
        ];
        for (what, got, want) in checks {
            ensure((got - want).abs() <= 1e-12, || {
                format!("closed-form {what} = {got:.15}, want {want:.15} within 1e-12")
            })?;
        }
        let ops = core(WalkOperators::new(&g, 0))?;
        let emp = core(ops.empirical_average_search_probability(1_000_000))?;
        ensure((emp - 1.0 / 3.0).abs() < 2e-3, || {
            format!("empirical average {emp:.9} not within 2e-3 of 1/3 at T=1e6")
        })?;
        within_budget(start, Duration::from_secs(10))
    });
}

#[test]
fn complete_graph_limit() {
    criterion("complete-graph-limit", || {
        let start = Instant::now();
        let params: Vec<usize> = vec![4, 8, 16, 32, 64, 128, 256];
        let table = core(family_sweep(SweepFamily::Complete, &params))?;
        for row in &table.rows {
            let point = row
                .result
                .as_ref()
                .ok_or_else(|| format!("n = {} skipped", row.param))?;
            let want = complete_graph_average(row.param as u64);
            ensure((point.total - want).abs() <= 1e-10, || {
                format!(
                    "n = {}: total {:.15} vs closed form {want:.15}, over 1e-10",
                    row.param, point.total
                )
            })?;
        }
        ensure(table.strictly_decreasing() == Some(true), || {
            format!("|total - 1/4| not strictly decreasing: {:?}", table.gaps())
        })?;
        let last = *table.gaps().last().expect("nonempty sweep");
        ensure(last < 2e-3, || {
            format!("n = 256 gap {last:.6} not under 2e-3")
        })?;
        within_budget(start, Duration::from_secs(30))
    });
}

#[test]
fn oracle_equivalence() {
    criterion("oracle-equivalence", || {
        let start = Instant::now();
        let graphs = [
            core(complete(3))?,
            core(complete(5))?,
            core(cycle(6))?,
            core(petersen())?,
            core(hamming(2, 3))?,
            core(johnson(5, 2))?,
        ];
        for g in &graphs {
            let rep = core(closed_form_average(g, 0, DEFAULT_TOL))?;
            let ops = core(WalkOperators::new(g, 0))?;
            let emp = core(ops.empirical_average_search_probability(200_000))?;
            let diff = (rep.total() - emp).abs();
            ensure(diff < 5e-3, || {
                format!(
                    "{}: closed form {:.9} vs simulated {emp:.9}, diff {diff:.2e} over 5e-3",
                    g.name(),
                    rep.total()
                )
            })?;
            if g.name() == "petersen" {
                // Frozen regression value, confirmed by the simulation above.
                ensure((rep.total() - 0.20650887574).abs() < 1e-10, || {
                    format!("petersen total drifted to {:.12}", rep.total())
                })?;
            }
        }
        within_budget(start, Duration::from_secs(120))
    });
}

#[test]
fn spectral_correspondence() {
    criterion("spectral-correspondence", || {
        let graphs = [core(complete(3))?, core(cycle(6))?, core(petersen())?];
        for g in &graphs {
            let name = g.name();
            let k = core(g.regular_degree())? as f64;
            let ops = core(WalkOperators::new(g, 0))?;
            let u = core(ops.materialize_unitary())?;
            let dim = u.nrows();

            // Eigenphases of the orthogonal step via its symmetric part:
            // (U + U^T)/2 has eigenvalue cos(theta) for each phase pair.
            let mut sym = Array2::<f64>::zeros((dim, dim));
            for i in 0..dim {
                for j in 0..dim {
                    sym[[i, j]] = 0.5 * (u[[i, j]] + u[[j, i]]);
                }
            }
            let cos_spec = core(sym_eig(&sym, DEFAULT_TOL))?;
            let non_real: Vec<f64> = cos_spec
                .pairs()
                .iter()
                .map(|p| p.value)
                .filter(|c| c.abs() < 1.0 - 1e-9)
                .collect();

            let phases = core(walk_eigenphases(g, 0, DEFAULT_TOL))?;
            for &c in &non_real {
                let kc = k * c;
                ensure(
                    phases
                        .interior
                        .iter()
                        .any(|p| (p.lambda - kc).abs() <= 1e-7),
                    || format!("{name}: walk phase with k cos = {kc:.9} has no spectrum partner"),
                )?;
            }
            for p in &phases.interior {
                ensure(
                    non_real.iter().any(|&c| (k * c - p.lambda).abs() <= 1e-7),
                    || format!("{name}: spectrum value {:.9} yields no walk phase", p.lambda),
                )?;
            }

            // Projection reconstruction for every interior eigenvalue.
            let aug = core(augmented_matrix(g, 0))?;
            let dec = core(aug.decompose(DEFAULT_TOL))?;
            let uc = u.mapv(|x| Complex64::new(x, 0.0));
            let mut projections: Vec<Array2<Complex64>> = Vec::new();
            for pair in dec.pairs() {
                if pair.value.abs() >= k * (1.0 - 1e-9) {
                    continue;
                }
                let f = core(walk_eigenprojection(g, 0, pair))?;
                let theta = (pair.value / k).acos();
                let phase = Complex64::from_polar(1.0, theta);

                let residual = max_abs(&(&uc.dot(&f) - &f.mapv(|z| z * phase)));
                ensure(residual <= 1e-8, || {
                    format!("{name}: |UF - e^(i theta) F| = {residual:.2e} at lambda {:.6}", pair.value)
                })?;

                let idem = max_abs(&(&f.dot(&f) - &f));
                ensure(idem <= 1e-8, || {
                    format!("{name}: |F^2 - F| = {idem:.2e} at lambda {:.6}", pair.value)
                })?;

                let herm = max_abs(&(&f.t().mapv(|z| z.conj()) - &f));
                ensure(herm <= 1e-8, || {
                    format!("{name}: |F* - F| = {herm:.2e} at lambda {:.6}", pair.value)
                })?;

                // Orthogonal to the conjugate-phase projection F(-theta) = conj(F).
                let conj_cross = max_abs(&f.dot(&f.mapv(|z| z.conj())));
                ensure(conj_cross <= 1e-8, || {
                    format!(
                        "{name}: |F(theta) F(-theta)| = {conj_cross:.2e} at lambda {:.6}",
                        pair.value
                    )
                })?;
                projections.push(f);
            }
            ensure(!projections.is_empty(), || {
                format!("{name}: no interior projections produced")
            })?;
            for i in 0..projections.len() {
                for j in 0..projections.len() {
                    if i == j {
                        continue;
                    }
                    let cross = max_abs(&projections[i].dot(&projections[j]));
                    ensure(cross <= 1e-8, || {
                        format!("{name}: projections {i} and {j} overlap by {cross:.2e}")
                    })?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn augmented_power_identity() {
    criterion("augmented-power-identity", || {
        for g in &test_drgs() {
            let name = g.name();
            let k = core(g.regular_degree())? as f64;
            let aug = core(augmented_matrix(g, 0))?;
            let m = aug.matrix();
            let dim = aug.dim();
            let clones = aug.clones();

            let (del, map) = g.vertex_deleted(0);
            let adel = del.adjacency_matrix();

            let mut v = aug.deleted_block_indicator();
            let mut w = vec![1.0_f64; del.n()];
            for power in 1..=6_i32 {
                let mut next = vec![Complex64::new(0.0, 0.0); dim];
                for (i, slot) in next.iter_mut().enumerate() {
                    for j in 0..dim {
                        *slot += m[[i, j]] * v[j];
                    }
                }
                v = next;
                let mut wnext = vec![0.0; del.n()];
                for (i, slot) in wnext.iter_mut().enumerate() {
                    for j in 0..del.n() {
                        *slot += adel[[i, j]] * w[j];
                    }
                }
                w = wnext;

                let tol = 1e-8 * k.powi(power);
                for (c, value) in v.iter().enumerate().take(clones) {
                    ensure(value.norm() <= tol, || {
                        format!(
                            "{name}: clone coordinate {c} holds {:.2e} after {power} powers",
                            value.norm()
                        )
                    })?;
                }
                for j in 0..del.n() {
                    let coord = aug
                        .vertex_coordinate(map.to_old(j))
                        .expect("surviving vertex has a coordinate");
                    let err = (v[coord] - Complex64::new(w[j], 0.0)).norm();
                    ensure(err <= tol, || {
                        format!(
                            "{name}: power {power} disagrees by {err:.2e} at deleted vertex {j}"
                        )
                    })?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn bounds_suite() {
    criterion("bounds-suite", || {
        let required = [
            "largest_eigenvalue",
            "perron_weight",
            "s1",
            "solution_increasing",
            "solution_direct_solve",
        ];
        for g in &test_drgs() {
            let (_, _, checks) = core(graph_bounds(g, 0, DEFAULT_TOL))?;
            for want in required {
                ensure(checks.iter().any(|c| c.name == want), || {
                    format!("{}: bound row '{want}' missing", g.name())
                })?;
            }
            for check in &checks {
                if let Some(slack) = check.slack {
                    ensure(slack >= -1e-9, || {
                        format!(
                            "{}: bound '{}' violated with slack {slack:.3e}",
                            g.name(),
                            check.name
                        )
                    })?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn polynomial_identities() {
    criterion("polynomial-identities", || {
        for g in &test_drgs() {
            let name = g.name();
            let arr = core(intersection_array_of(g))?;
            let dual = dual_polynomial_at_degree(&arr);
            let want = arr.c_tail_product() as i128;
            ensure(dual == Some(want), || {
                format!("{name}: q_(d-1)(k) = {dual:?}, want exactly {want}")
            })?;
            for (label, tri) in [
                ("quotient", quotient_b(&arr)),
                ("reversed", quotient_s(&arr)),
                ("symmetrized", quotient_shat(&arr)),
            ] {
                let seq = orthopoly(&tri);
                seq.check_interlacing()
                    .map_err(|e| format!("{name}: {label} sequence interlacing: {e}"))?;
            }
        }
        Ok(())
    });
}

#[test]
fn limit_trends() {
    criterion("limit-trends", || {
        let start = Instant::now();
        let sweeps = [
            (SweepFamily::Paley, vec![5_usize, 13, 17, 29, 37, 41]),
            (SweepFamily::Hamming { d: 2 }, vec![3, 4, 5, 6, 7]),
        ];
        for (family, params) in sweeps {
            let table = core(family_sweep(family, &params))?;
            let label = table.family.label();
            let gaps = table.gaps();
            ensure(gaps.len() == params.len(), || {
                format!("{label}: {} of {} rows completed", gaps.len(), params.len())
            })?;
            ensure(table.decreasing_overall() == Some(true), || {
                format!("{label}: overall trend not decreasing: {gaps:?}")
            })?;
            let (first, last) = (gaps[0], *gaps.last().unwrap());
            ensure(last < first, || {
                format!("{label}: final gap {last:.6} not below first {first:.6}")
            })?;
            ensure(last < 0.05, || {
                format!("{label}: final gap {last:.6} not under 0.05")
            })?;
        }
        within_budget(start, Duration::from_secs(300))
    });
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtqw"))
        .args(args)
        .output()
        .expect("failed to spawn dtqw")
}

#[test]
fn cli_determinism() {
    criterion("cli-determinism", || {
        let commands: &[&[&str]] = &[
            &["average", "--family", "complete", "--param", "3", "--T", "5000"],
            &["average", "--family", "petersen", "--T", "5000", "--check"],
            &["spectrum", "--family", "complete", "--param", "3"],
            &["spectrum", "--family", "petersen"],
            &["sweep", "--family", "complete", "--params", "4,8,16,32"],
            &["sweep", "--family", "paley", "--params", "5,13,17"],
            &["bounds", "--family", "petersen"],
            &["bounds", "--array", "3,2;1,1"],
            &["check-dr", "--family", "hamming", "--params", "2,3"],
        ];
        for args in commands {
            let first = run_cli(args);
            let second = run_cli(args);
            ensure(first.status.code() == Some(0), || {
                format!("{args:?} exited {:?}", first.status.code())
            })?;
            ensure(first.stdout == second.stdout, || {
                format!("{args:?}: stdout differs between runs")
            })?;
            ensure(first.stderr == second.stderr, || {
                format!("{args:?}: stderr differs between runs")
            })?;
        }
        Ok(())
    });
}
