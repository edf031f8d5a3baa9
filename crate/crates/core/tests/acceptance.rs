//! One test per acceptance criterion. Each prints a single `PASS`/`FAIL`
//! line (visible with `--nocapture`, or on failure) and panics on failure.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use gauging::codes::{distance_exact, distance_upper, library, StabilizerCode, TannerReport};
use gauging::gauging::{
    deform_by_matching, gauge_measure, recipes, CheckRole, DeformedCode, GaugeMode, GaugingPlan,
};
use gauging::presets::{self, Preset};
use gauging::spacetime::{
    self, build_detectors, fault_distance_search, spacetime_generators, time_logical_fault,
    validate_detectors, verify_with, FluxCadence, Instance, Schedule, SyndromeMap,
    DEFAULT_SEARCH_BUDGET,
};
use gauging::sparsify::{
    self, cellulate, cheeger_exact, random_cubic, DecongestConfig, LayeredGraph,
};
use gauging::{pauli, PauliOp, Sign, Tableau};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::random::{self, Fix};
use common::tables::{self, Table};
use common::{assert_counting, checked_deform, dense, remark};

type Outcome = Result<String, String>;

fn criterion(id: u32, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let result = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(p) => Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into())),
    };
    let took = start.elapsed();
    let result = result.and_then(|d| {
        if took <= limit {
            Ok(d)
        } else {
            Err(format!("{d}; took {took:.1?}, limit {limit:?}"))
        }
    });
    match result {
        Ok(detail) => println!("criterion {id:>2} PASS  {title}: {detail} [{took:.2?}]"),
        Err(why) => {
            println!("criterion {id:>2} FAIL  {title}: {why} [{took:.2?}]");
            panic!("criterion {id} failed: {why}");
        }
    }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

// ---------------------------------------------------------------- tables

/// Histograms counted straight from the check list.
fn histograms(
    code: &StabilizerCode,
) -> (
    BTreeMap<usize, usize>,
    BTreeMap<usize, usize>,
    BTreeMap<usize, usize>,
) {
    let (mut x, mut z, mut q) = (BTreeMap::new(), BTreeMap::new(), BTreeMap::new());
    let mut degree = vec![0usize; code.n()];
    for c in code.checks() {
        let support = c.support();
        for &i in &support {
            degree[i] += 1;
        }
        let w = support.len();
        if c.is_x_type() {
            *x.entry(w).or_insert(0) += 1;
        } else if c.is_z_type() {
            *z.entry(w).or_insert(0) += 1;
        } else {
            panic!("mixed check {c}");
        }
    }
    for d in degree {
        *q.entry(d).or_insert(0) += 1;
    }
    (x, z, q)
}

fn table_map(rows: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    rows.iter().copied().collect()
}

fn check_table(dc: &DeformedCode, table: &Table) -> Result<(), String> {
    let (x, z, q) = histograms(dc.code());
    ensure(x == table_map(table.x_checks), || {
        format!("X check weights {x:?}")
    })?;
    ensure(z == table_map(table.z_checks), || {
        format!("Z check weights {z:?}")
    })?;
    ensure(q == table_map(table.qubits), || {
        format!("qubit degrees {q:?}")
    })?;
    let r = TannerReport::of(dc.code());
    ensure(
        r.x_weights == x && r.z_weights == z && r.qubit_degrees == q && r.mixed_weights.is_empty(),
        || "TannerReport disagrees with direct counts".into(),
    )?;
    ensure(dc.additions() == table.additions, || {
        format!("additions {:?}", dc.additions())
    })?;
    let (a, b, e) = dc.additions();
    ensure(a + b + e == table.total, || format!("total {}", a + b + e))
}

fn preset_counts(p: &Preset) -> (usize, usize, usize) {
    let matched = GaugingPlan::from_matching(&p.code, &p.plan.logical)
        .expect("matching")
        .graph
        .edge_count();
    let g = &p.plan.graph;
    let cycles =
        g.edge_count() + common::components(g.vertex_count(), g.edges()) - g.vertex_count();
    (matched, g.edge_count(), cycles)
}

#[test]
fn criterion_01_gross_reproduction() {
    criterion(
        1,
        "gross construction and degree table",
        Duration::from_secs(10),
        || {
            let p = presets::gross();
            let (matched, edges, cycles) = preset_counts(&p);
            ensure((matched, edges, cycles) == (18, 22, 11), || {
                format!("matched {matched}, edges {edges}, cycle space {cycles}")
            })?;
            ensure(p.plan.cycles.len() == 7, || {
                format!("{} flux checks", p.plan.cycles.len())
            })?;
            let s = p.summary().map_err(|e| e.to_string())?;
            ensure(s.dim_u == 4 && s.dim_u + s.flux_checks == cycles, || {
                format!("dim U {}", s.dim_u)
            })?;
            let dc = checked_deform(&p.code, &p.plan);
            check_table(&dc, &tables::GROSS)?;
            ensure(s.report == dc.report() && s.total_additions == 41, || {
                "summary mismatch".into()
            })?;
            Ok("18+4 edges, 11 cycles, dim U 4, 7 flux, 12+7+22 = 41, table equal".into())
        },
    );
}

#[test]
fn criterion_02_double_gross_reproduction() {
    criterion(
        2,
        "double gross construction and degree table",
        Duration::from_secs(30),
        || {
            let p = presets::double_gross();
            let (matched, edges, cycles) = preset_counts(&p);
            ensure((matched, edges, cycles) == (27, 34, 17), || {
                format!("matched {matched}, edges {edges}, cycle space {cycles}")
            })?;
            let g = &p.plan.graph;
            let pairs: BTreeSet<(usize, usize)> = g
                .edges()
                .iter()
                .map(|&(a, b)| (a.min(b), a.max(b)))
                .collect();
            ensure(pairs.len() < g.edge_count(), || "no parallel edges".into())?;
            ensure(p.plan.cycles.len() == 13, || {
                format!("{} flux checks", p.plan.cycles.len())
            })?;
            let dc = checked_deform(&p.code, &p.plan);
            check_table(&dc, &tables::DOUBLE_GROSS)?;
            Ok(format!(
                "27+7 edges ({} parallel), 17 cycles, 13 flux, 18+13+34 = 65, table equal",
                g.edge_count() - pairs.len()
            ))
        },
    );
}

// --------------------------------------------------------------- distance

const ISD_TRIALS: usize = 400;
const ISD_SEED: u64 = 1;

fn witness_check(code: &StabilizerCode, want: usize) -> Result<(), String> {
    let b = distance_upper(code, ISD_TRIALS, ISD_SEED).ok_or("no logical found")?;
    ensure(b.weight == want, || {
        format!("upper bound {} instead of {want}", b.weight)
    })?;
    ensure(b.witness.weight() == want, || {
        "witness weight differs".into()
    })?;
    let commutes = code
        .checks()
        .iter()
        .all(|c| c.commutes(&b.witness).unwrap());
    ensure(commutes && !code.in_group(&b.witness), || {
        "witness is not a logical".into()
    })
}

#[test]
fn criterion_03_distance_upper_bounds() {
    criterion(
        3,
        "randomized distance witnesses",
        Duration::from_secs(600),
        || {
            let gross = presets::gross();
            witness_check(&gross.code, 12)?;
            let dc = checked_deform(&gross.code, &gross.plan);
            witness_check(dc.code(), 12)?;
            witness_check(&presets::double_gross().code, 18)?;
            Ok(format!(
                "12 / 12 / 18 with {ISD_TRIALS} trials, seed {ISD_SEED}"
            ))
        },
    );
}

/// Lightest logical by plain enumeration of Pauli strings.
fn brute_distance(code: &StabilizerCode) -> Option<usize> {
    let n = code.n();
    let mut best = None;
    for word in 1..4usize.pow(n as u32) {
        let mut p = PauliOp::identity(n);
        let mut w = word;
        for q in 0..n {
            p.set(q, gauging::Pauli::from_bits(w & 1 == 1, w & 2 == 2));
            w >>= 2;
        }
        let wt = p.weight();
        if best.is_some_and(|b| wt >= b) {
            continue;
        }
        if code.checks().iter().all(|c| c.commutes(&p).unwrap()) && !code.in_group(&p) {
            best = Some(wt);
        }
    }
    best
}

fn small_corpus() -> Vec<(String, StabilizerCode)> {
    let mut out = vec![
        ("[[4,2,2]]".to_string(), library::four_two_two()),
        (
            "surface-2".to_string(),
            library::rotated_surface(2).to_stabilizer(),
        ),
        (
            "surface-3".to_string(),
            library::rotated_surface(3).to_stabilizer(),
        ),
    ];
    let deformed = [
        ("[[4,2,2]]/XXII", library::four_two_two(), pauli("XXII")),
        ("[[4,2,2]]/ZZII", library::four_two_two(), pauli("ZZII")),
        ("[[4,2,2]]/YYII", library::four_two_two(), pauli("YYII")),
    ];
    for (name, code, l) in deformed {
        let dc = deform_by_matching(&code, &l).expect("deform");
        assert_counting(&dc);
        out.push((name.to_string(), dc.code().clone()));
    }
    // A single surface patch keeps no logical once measured; merging two
    // does.
    let (code, plan) = ladder_instance(2);
    out.push((
        "ladder surface-2".to_string(),
        checked_deform(&code, &plan).code().clone(),
    ));
    let shor =
        recipes::shor(&library::four_two_two(), &pauli("XXII"), &[(0, 1)]).expect("shor plan");
    out.push((
        "shor [[4,2,2]]".to_string(),
        checked_deform(&library::four_two_two(), &shor)
            .code()
            .clone(),
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..4 {
        let code = random::code(5 + i, 2, &mut rng);
        let l = random::logical(&code, &mut rng);
        let plan = random::plan(&code, &l, i % 2, 1, &mut rng);
        out.push((
            format!("random-{i}"),
            checked_deform(&code, &plan).code().clone(),
        ));
    }
    out
}

#[test]
fn criterion_04_exact_distance_agreement() {
    criterion(
        4,
        "exact distance equals the upper bound",
        Duration::from_secs(300),
        || {
            let mut parts = Vec::new();
            for (name, code) in small_corpus() {
                ensure(code.n() <= 20, || format!("{name} too large"))?;
                let exact = distance_exact(&code, code.n()).map_err(|e| e.to_string())?;
                let upper = distance_upper(&code, 200, ISD_SEED).map(|b| b.weight);
                ensure(exact.is_some() && exact == upper, || {
                    format!("{name}: exact {exact:?}, upper {upper:?}")
                })?;
                if code.n() <= 9 {
                    let brute = brute_distance(&code);
                    ensure(brute == exact, || {
                        format!("{name}: enumeration gives {brute:?}")
                    })?;
                }
                parts.push(format!("{name} d={}", exact.unwrap()));
            }
            Ok(parts.join(", "))
        },
    );
}

// ------------------------------------------------------- gauging oracles

struct Case {
    code: StabilizerCode,
    plan: GaugingPlan,
    state: Tableau,
    fixed: Option<Sign>,
    seed: u64,
    dummies: usize,
}

/// Twelve random codes on 3 to 8 qubits, four graphs each (two with dummy
/// vertices) and five seeded runs per graph.
fn corpus() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = Vec::new();
    for c in 0..12 {
        let n = 3 + c % 6;
        let k = 1 + (c / 6).min(n - 2);
        let code = random::code(n, k, &mut rng);
        for (dummies, extra) in [(0, 0), (0, 2), (1, 1), (2, 2)] {
            let l = random::logical(&code, &mut rng);
            let plan = random::plan(&code, &l, dummies, extra, &mut rng);
            for r in 0..5 {
                let fix = if r == 4 { Fix::Logical } else { Fix::Partner };
                let (state, fixed) = random::state(&code, &l, fix, &mut rng);
                out.push(Case {
                    code: code.clone(),
                    plan: plan.clone(),
                    state,
                    fixed,
                    seed: rng.gen(),
                    dummies,
                });
            }
        }
    }
    out
}

fn run_case(case: &Case, mode: GaugeMode) -> (Sign, Tableau) {
    let mut rng = ChaCha8Rng::seed_from_u64(case.seed);
    let (o, post) = gauge_measure(&case.state, &case.plan, mode, &mut rng).expect("gauging run");
    (o.sigma, post)
}

#[test]
fn criterion_05_measurement_matches_dense_oracle() {
    criterion(
        5,
        "post-measurement state against a state vector",
        Duration::from_secs(300),
        || {
            let cases = corpus();
            let codes: BTreeSet<String> = cases
                .iter()
                .map(|c| format!("{:?}", c.code.checks()))
                .collect();
            let with_dummies = cases.iter().filter(|c| c.dummies > 0).count();
            ensure(cases.len() >= 200 && codes.len() >= 10, || {
                "corpus too small".into()
            })?;
            ensure(with_dummies > 0 && with_dummies < cases.len(), || {
                "graph mix".into()
            })?;
            let (mut random_runs, mut plus) = (0usize, 0usize);
            for (i, case) in cases.iter().enumerate() {
                let (sigma, post) = run_case(case, GaugeMode::Algorithm1);
                let psi = dense::stabilizer_state(case.state.stabilizers());
                let mut projected =
                    dense::project(&case.plan.logical.clone().with_sign(sigma), &psi);
                ensure(dense::norm(&projected) > 1e-6, || {
                    format!("run {i}: outcome {sigma:?} has zero probability")
                })?;
                dense::normalize(&mut projected);
                for g in post.stabilizers() {
                    ensure(dense::stabilizes(g, &projected), || {
                        format!("run {i}: {g} does not fix the projected state")
                    })?;
                }
                match case.fixed {
                    Some(s) => ensure(s == sigma, || {
                        format!("run {i}: fixed outcome {s:?}, got {sigma:?}")
                    })?,
                    None => {
                        random_runs += 1;
                        plus += usize::from(sigma == Sign::Plus);
                    }
                }
            }
            let n = random_runs as f64;
            let dev = (plus as f64 - n / 2.0).abs();
            let bound = 5.0 * (n * 0.25).sqrt();
            ensure(dev <= bound, || {
                format!("{plus}/{random_runs} outcomes +1, deviation {dev:.1} > {bound:.1}")
            })?;
            Ok(format!(
                "{} runs on {} codes ({with_dummies} with dummies); +1 in {plus}/{random_runs}",
                cases.len(),
                codes.len()
            ))
        },
    );
}

#[test]
fn criterion_06_circuit_mode_equivalence() {
    criterion(
        6,
        "direct and circuit measurement agree",
        Duration::from_secs(300),
        || {
            let cases = corpus();
            for (i, case) in cases.iter().enumerate() {
                let (s1, p1) = run_case(case, GaugeMode::Algorithm1);
                let (s2, p2) = run_case(case, GaugeMode::Circuit);
                ensure(s1 == s2, || format!("run {i}: outcomes differ"))?;
                ensure(p1.canonical() == p2.canonical(), || {
                    format!("run {i}: post states differ")
                })?;
            }
            Ok(format!("{} seeded runs", cases.len()))
        },
    );
}

#[test]
fn criterion_07_counting_identity() {
    criterion(
        7,
        "edge/cycle/vertex count and k drop",
        Duration::from_secs(120),
        || {
            let mut count = 0;
            let mut seen = BTreeSet::new();
            for case in corpus() {
                let key = format!("{:?}", case.plan);
                if seen.insert(key) {
                    checked_deform(&case.code, &case.plan);
                    count += 1;
                }
            }
            for p in [presets::gross(), presets::double_gross()] {
                checked_deform(&p.code, &p.plan);
                count += 1;
                for cap in [1, 3] {
                    let lg = sparsify::decongest(
                        &p.plan,
                        DecongestConfig {
                            cap,
                            ..Default::default()
                        },
                    )
                    .map_err(|e| e.to_string())?;
                    assert_counting(
                        &sparsify::sparsified_deform(&p.code, &p.plan, &lg)
                            .map_err(|e| e.to_string())?,
                    );
                    count += 1;
                }
            }
            let (code, plan) = ladder_instance(3);
            checked_deform(&code, &plan);
            let (ring, ring_plan) = toy_ring();
            checked_deform(&ring, &ring_plan);
            let shor = recipes::shor(&library::four_two_two(), &pauli("XXII"), &[(0, 1)])
                .map_err(|e| e.to_string())?;
            checked_deform(&library::four_two_two(), &shor);
            count += 3;
            // The spacetime instances check themselves on construction.
            count += spacetime_instances().len() / 2;
            Ok(format!("{count} deformed codes, all -1 and k drop 1"))
        },
    );
}

// ---------------------------------------------------------- constructions

fn ladder_instance(d: usize) -> (StabilizerCode, GaugingPlan) {
    let a = library::rotated_surface(d).to_stabilizer();
    let n = a.n();
    let code = library::product(&a, &a);
    let lx = library::surface_x_logical(d);
    let la = lx.resized(2 * n);
    let lb = PauliOp::x_type(2 * n, lx.support().iter().map(|q| q + n));
    (
        code.clone(),
        recipes::ladder(&code, &la, &lb).expect("ladder"),
    )
}

#[test]
fn criterion_08_lattice_surgery() {
    criterion(
        8,
        "ladder merge of two distance-3 patches",
        Duration::from_secs(120),
        || {
            let (code, plan) = ladder_instance(3);
            let k_blocks = library::rotated_surface(3).k();
            let dc = checked_deform(&code, &plan);
            let k = dc.code().k();
            ensure(k == 2 * k_blocks - 1, || format!("k = {k}"))?;
            let d = distance_exact(dc.code(), 4).map_err(|e| e.to_string())?;
            ensure(d == Some(3), || format!("distance {d:?}"))?;
            let h = cheeger_exact(&plan.graph).map_err(|e| e.to_string())?.value;
            // Both patches have distance 3.
            let floor = h.min(1.0) * 3.0;
            ensure(3.0 >= floor - 1e-12, || {
                "space-distance bound violated".into()
            })?;
            Ok(format!(
                "k = {k}, d = 3, h = {h:.3}, min(1, h) d = {floor:.2} <= 3"
            ))
        },
    );
}

fn toy_ring() -> (StabilizerCode, GaugingPlan) {
    let checks = (0..5).map(|i| PauliOp::z_type(6, [i, i + 1])).collect();
    let code = StabilizerCode::new(6, checks, None).unwrap();
    let mut plan = GaugingPlan::from_matching(&code, &PauliOp::x_type(6, 0..6)).unwrap();
    plan.add_qubit_edges(&[(5, 0)]).unwrap();
    plan.select_flux_checks(&code).unwrap();
    (code, plan)
}

fn max_flux(dc: &DeformedCode) -> usize {
    dc.roles()
        .iter()
        .zip(dc.code().checks())
        .filter(|(r, _)| matches!(r, CheckRole::Flux { .. }))
        .map(|(_, c)| c.weight())
        .max()
        .unwrap_or(0)
}

#[test]
fn criterion_09_sparsification() {
    criterion(
        9,
        "cellulation, flux weights and layer scaling",
        Duration::from_secs(300),
        || {
            for n in 3..=64 {
                let c = cellulate(n).map_err(|e| e.to_string())?;
                ensure(c.chords.len() == n - 3 && c.faces.len() == n - 2, || {
                    format!("N = {n}: counts")
                })?;
                ensure(c.faces.iter().all(|f| f.len() == 3), || {
                    format!("N = {n}: not triangles")
                })?;
                let mut boundary = BTreeSet::new();
                for f in &c.faces {
                    for i in 0..3 {
                        let (a, b) = (f[i], f[(i + 1) % 3]);
                        let e = (a.min(b), a.max(b));
                        if !boundary.remove(&e) {
                            boundary.insert(e);
                        }
                    }
                }
                let cycle: BTreeSet<_> = (0..n)
                    .map(|i| (i.min((i + 1) % n), i.max((i + 1) % n)))
                    .collect();
                ensure(boundary == cycle, || {
                    format!("N = {n}: faces do not sum to the cycle")
                })?;
            }

            let gross = presets::gross();
            let mut weights = Vec::new();
            for cap in [3, 1] {
                let lg = sparsify::decongest(
                    &gross.plan,
                    DecongestConfig {
                        cap,
                        ..Default::default()
                    },
                )
                .map_err(|e| e.to_string())?;
                let dc = sparsify::sparsified_deform(&gross.code, &gross.plan, &lg)
                    .map_err(|e| e.to_string())?;
                ensure(max_flux(&dc) <= 4, || {
                    format!("gross, cap {cap}: flux weight {}", max_flux(&dc))
                })?;
                weights.push(format!(
                    "gross cap {cap}: R = {}, max B_p {}",
                    lg.layers,
                    max_flux(&dc)
                ));
            }
            let (ring, ring_plan) = toy_ring();
            let lg = sparsify::decongest(
                &ring_plan,
                DecongestConfig {
                    cap: 1,
                    ..Default::default()
                },
            )
            .map_err(|e| e.to_string())?;
            let dc =
                sparsify::sparsified_deform(&ring, &ring_plan, &lg).map_err(|e| e.to_string())?;
            let triangles = lg.faces().iter().filter(|f| f.weight() == 3).count();
            ensure(
                lg.layers == 1 && lg.squares == 6 && triangles == 4 && max_flux(&dc) == 4,
                || {
                    format!(
                        "ring: R {}, squares {}, triangles {triangles}",
                        lg.layers, lg.squares
                    )
                },
            )?;

            let mut ratios = Vec::new();
            for w in [32usize, 64, 128, 256] {
                for seed in 0..3 {
                    let g = random_cubic(w, seed).map_err(|e| e.to_string())?;
                    let basis = g.cycle_basis().map_err(|e| e.to_string())?.into_rows();
                    let lg = LayeredGraph::build(&g, &basis, DecongestConfig::default())
                        .map_err(|e| e.to_string())?;
                    let log2 = (w as f64).log2().powi(2);
                    println!(
                        "  decongest W = {w:>3} seed {seed}: R = {:>3}, R / log^2 W = {:.3}",
                        lg.layers,
                        lg.layers as f64 / log2
                    );
                    ratios.push((w, lg.layers, lg.layers as f64 / log2));
                }
            }
            let fitted = ratios.iter().map(|r| r.2).fold(0.0, f64::max);
            ensure(
                ratios
                    .iter()
                    .all(|&(w, r, _)| r as f64 <= fitted * (w as f64).log2().powi(2) + 1e-9),
                || "fit".into(),
            )?;
            // The fitted constant must not be driven by the largest graphs.
            let small = ratios
                .iter()
                .filter(|r| r.0 <= 64)
                .map(|r| r.2)
                .fold(0.0, f64::max);
            let large = ratios
                .iter()
                .filter(|r| r.0 >= 128)
                .map(|r| r.2)
                .fold(0.0, f64::max);
            ensure(large <= 2.0 * small.max(1.0 / 64.0), || {
                format!("R / log^2 W grows: {small:.3} -> {large:.3}")
            })?;
            Ok(format!(
                "N in 3..=64 ok; {}; ring 4 triangles + 6 squares; fitted C = {fitted:.3}",
                weights.join(", ")
            ))
        },
    );
}

// -------------------------------------------------------------- spacetime

fn spacetime_instances() -> Vec<(String, Instance)> {
    let mut out = Vec::new();
    let surface2 = library::rotated_surface(2).to_stabilizer();
    let (ladder_code, ladder_plan) = ladder_instance(2);
    let plans: Vec<(&str, DeformedCode)> = vec![
        (
            "toy-zz",
            deform_by_matching(&library::toy_zz(), &pauli("XX")).unwrap(),
        ),
        (
            "[[4,2,2]]",
            deform_by_matching(&library::four_two_two(), &pauli("XXII")).unwrap(),
        ),
        (
            "surface-2",
            deform_by_matching(&surface2, &library::surface_z_logical(2)).unwrap(),
        ),
        ("ladder-2", checked_deform(&ladder_code, &ladder_plan)),
    ];
    for (name, dc) in plans {
        assert_counting(&dc);
        for cadence in [FluxCadence::EveryRound, FluxCadence::EndpointsOnly] {
            let schedule = Schedule::new(2, 3, 2).unwrap().with_cadence(cadence);
            out.push((
                format!("{name}/{cadence:?}"),
                Instance::new(&dc, schedule).unwrap(),
            ));
        }
    }
    out
}

fn random_spacetime_instances() -> Vec<(String, Instance)> {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut out = Vec::new();
    for i in 0..6 {
        let n = 3 + i % 3;
        let code = random::code(n, 1 + i % 2, &mut rng);
        let l = random::logical(&code, &mut rng);
        let plan = random::plan(&code, &l, 0, 1, &mut rng);
        let dc = checked_deform(&code, &plan);
        let cadence = if i % 2 == 0 {
            FluxCadence::EveryRound
        } else {
            FluxCadence::EndpointsOnly
        };
        let schedule = Schedule::new(2, 2 + i % 2, 2)
            .unwrap()
            .with_cadence(cadence);
        out.push((format!("random-{i}"), Instance::new(&dc, schedule).unwrap()));
    }
    out
}

fn spacetime_suite(name: &str, inst: &Instance, seeds: u64) -> Result<(), String> {
    let err = |e: spacetime::SpacetimeError| format!("{name}: {e}");
    let ds = build_detectors(inst);
    validate_detectors(inst, &ds, seeds).map_err(err)?;
    let map = SyndromeMap::build(inst).map_err(err)?;
    let gens = spacetime_generators(inst);
    let report = verify_with(inst, &map, &gens).map_err(err)?;
    ensure(report.passed(), || {
        format!("{name}: generator failures {:?}", report.failures)
    })?;
    let time = time_logical_fault(inst);
    ensure(time.len() == inst.schedule.rounds, || {
        format!("{name}: time fault weight {}", time.len())
    })?;
    let s = map.syndrome(&time).map_err(err)?;
    ensure(s.is_silent() && s.flip, || {
        format!(
            "{name}: time fault silent {} flip {}",
            s.is_silent(),
            s.flip
        )
    })?;
    for (i, site) in map.sites.iter().enumerate() {
        let got: BTreeSet<String> = map
            .d
            .row(i)
            .iter_ones()
            .map(|d| map.detectors[d].name.clone())
            .collect();
        let want = remark::expected(inst, site);
        ensure(got == want, || {
            format!("{name}: {site} violates {got:?}, expected {want:?}")
        })?;
    }
    Ok(())
}

#[test]
fn criterion_10_spacetime_suite() {
    criterion(
        10,
        "detectors, spacetime stabilizers and fault distance",
        Duration::from_secs(600),
        || {
            let mut names = Vec::new();
            for (name, inst) in spacetime_instances() {
                spacetime_suite(&name, &inst, 100)?;
                names.push(name);
            }
            for (name, inst) in random_spacetime_instances() {
                spacetime_suite(&name, &inst, 100)?;
                names.push(name);
            }
            let dc = deform_by_matching(&library::four_two_two(), &pauli("XXII")).unwrap();
            let mut weights = Vec::new();
            for cadence in [FluxCadence::EveryRound, FluxCadence::EndpointsOnly] {
                let inst =
                    Instance::new(&dc, Schedule::new(2, 2, 2).unwrap().with_cadence(cadence))
                        .unwrap();
                let map = SyndromeMap::build(&inst).map_err(|e| e.to_string())?;
                let found = fault_distance_search(&map, 3, DEFAULT_SEARCH_BUDGET)
                    .map_err(|e| e.to_string())?;
                let f = found.ok_or("no logical fault up to weight 3")?;
                ensure(f.weight == 2, || {
                    format!("[[4,2,2]]: lightest logical fault has weight {}", f.weight)
                })?;
                weights.push(f.weight);
            }
            Ok(format!(
                "{} instances; [[4,2,2]] fault distance {weights:?} (= d)",
                names.len()
            ))
        },
    );
}

// ------------------------------------------------------------ determinism

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = gauging::cli::main_with(
        std::iter::once("gauging").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, out)
}

fn read_dir(dir: &std::path::Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect()
}

#[test]
fn criterion_11_determinism() {
    criterion(
        11,
        "byte-identical artifacts on rerun",
        Duration::from_secs(300),
        || {
            let commands: Vec<Vec<&str>> = vec![
                vec![
                    "codes",
                    "distance",
                    "surface-3",
                    "--trials",
                    "50",
                    "--seed",
                    "3",
                ],
                vec![
                    "gauge",
                    "plan",
                    "--preset",
                    "gross",
                    "--random-edges",
                    "4",
                    "--seed",
                    "5",
                    "--isd-trials",
                    "50",
                ],
                vec![
                    "gauge",
                    "run",
                    "--code",
                    "four-two-two",
                    "--logical",
                    "XXII",
                    "--seed",
                    "11",
                ],
                vec![
                    "gauge", "run", "--preset", "gross", "--seed", "4", "--mode", "circuit",
                ],
                vec!["gauge", "deform", "--preset", "gross"],
                vec!["sparsify", "decongest", "--preset", "gross", "--cap", "1"],
                vec![
                    "spacetime",
                    "detectors",
                    "--code",
                    "four-two-two",
                    "--logical",
                    "XXII",
                ],
                vec![
                    "spacetime",
                    "search",
                    "--code",
                    "four-two-two",
                    "--logical",
                    "XXII",
                    "--wmax",
                    "2",
                ],
            ];
            for args in &commands {
                let (c1, a) = cli(args);
                let (c2, b) = cli(args);
                ensure(c1 == 0 && c2 == 0, || format!("{args:?} exited {c1}/{c2}"))?;
                ensure(a == b, || format!("{args:?} output differs between runs"))?;
            }
            let golden = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
            let mut files = 0;
            for preset in presets::names() {
                let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
                for d in &dirs {
                    let out = d.path().to_str().unwrap();
                    let g = golden.to_str().unwrap();
                    let (code, _) = cli(&["repro", preset, "--out", out, "--check", g]);
                    ensure(code == 0, || format!("repro {preset} exited {code}"))?;
                }
                let (a, b) = (read_dir(dirs[0].path()), read_dir(dirs[1].path()));
                ensure(a == b && !a.is_empty(), || {
                    format!("repro {preset} artifacts differ")
                })?;
                files += a.len();
            }
            Ok(format!(
                "{} commands twice, {files} repro files, goldens match",
                commands.len()
            ))
        },
    );
}
