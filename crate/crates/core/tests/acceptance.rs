//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic
//! throughout. Runs without the libtest harness so the lines always show.

mod support;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::Rng;

use finprob::fincat::{
    category_one, category_three, category_two, chi_leq, cps_fragment, find_initial_terminal, is_isomorphism,
    opposite_category, validate_category, ChiObject,
};
use finprob::finspace::{check_product_universal, pairing, product_space, DEFAULT_ENUMERATION_CAP};
use finprob::giry::{check_monad_laws, check_mult_naturality, check_unit_naturality, giry_mult, xi};
use finprob::kernel::{check_stoch_laws, compose_kernels, det_kernel};
use finprob::measure::{bounded_constant, dirac, integrate, pushforward};
use finprob::{rat, sample, FinSpace, MeasurableMap, Partition, Rational, RationalMeasure, RealObservable};

use support::{all_functions, golden_mismatches, set_partitions, space_from_blocks};

const SEED: u64 = 0;

/// Outcome of one criterion: `Err` carries the first counterexample.
type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn discrete(name: &str, prefix: &str, n: usize) -> FinSpace {
    FinSpace::discrete(name, (0..n).map(|i| format!("{prefix}{i}")))
}

/// 1. Associativity and both identity laws on 200 random kernels, as 50
/// chains of four kernels over spaces with 2 to 6 atoms.
fn stoch_laws() -> Outcome {
    let mut rng = sample::rng(SEED);
    let (mut kernels, mut checks) = (0, 0);
    for c in 0..50 {
        let spaces: Vec<FinSpace> = (0..5)
            .map(|i| {
                let atoms = rng.gen_range(2..=6);
                sample::space(&mut rng, &format!("S{c}_{i}"), "x", atoms)
            })
            .collect();
        let chain: Vec<_> = spaces.windows(2).map(|w| sample::kernel(&mut rng, &w[0], &w[1])).collect();
        kernels += chain.len();
        let report = check_stoch_laws(&chain);
        for law in [&report.associativity, &report.left_identity, &report.right_identity] {
            ensure(law.passed(), || law.to_string())?;
            checks += law.checked;
        }
    }
    Ok(format!("{kernels} kernels, {checks} law instances"))
}

/// 2. `δ_{g∘f} = δ_g∘δ_f` for every pair of functions between discrete
/// spaces with 1 to 3 points.
fn deterministic_functoriality() -> Outcome {
    let spaces: Vec<FinSpace> = (1..=3).map(|n| discrete(&format!("D{n}"), "p", n)).collect();
    let mut pairs = 0;
    for a in &spaces {
        for b in &spaces {
            for c in &spaces {
                for fg in all_functions(a.len(), b.len()) {
                    let f = MeasurableMap::from_graph("f", a, b, fg).unwrap();
                    for gg in all_functions(b.len(), c.len()) {
                        let g = MeasurableMap::from_graph("g", b, c, gg).unwrap();
                        let lhs = det_kernel(&g.after(&f).unwrap());
                        let rhs = compose_kernels(&det_kernel(&g), &det_kernel(&f)).unwrap();
                        ensure(lhs == rhs, || format!("{f:?} then {g:?}"))?;
                        pairs += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} composable pairs"))
}

/// 3. `P(g∘f) = P(g)∘P(f)` on 500 random (measure, f, g) triples.
fn giry_functor() -> Outcome {
    let mut rng = sample::rng(SEED);
    for i in 0..500 {
        let sizes: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=5)).collect();
        let x = sample::space(&mut rng, "X", "x", sizes[0]);
        let y = sample::space(&mut rng, "Y", "y", sizes[1]);
        let z = sample::space(&mut rng, "Z", "z", sizes[2]);
        let m = if rng.gen_bool(0.5) { sample::probability(&mut rng, &x) } else { sample::finite_measure(&mut rng, &x) };
        let f = sample::measurable_map(&mut rng, "f", &x, &y);
        let g = sample::measurable_map(&mut rng, "g", &y, &z);
        let lhs = pushforward(&m, &g.after(&f).unwrap()).unwrap();
        let rhs = pushforward(&pushforward(&m, &f).unwrap(), &g).unwrap();
        ensure(lhs == rhs, || format!("triple #{i}: {lhs:?} != {rhs:?}"))?;
    }
    Ok("500 triples".into())
}

/// 4. `P(f)(δ_x) = δ_{f(x)}` for every point of every function between
/// discrete spaces with 1 to 4 points.
fn unit_naturality() -> Outcome {
    let spaces: Vec<FinSpace> = (1..=4).map(|n| discrete(&format!("D{n}"), "p", n)).collect();
    let (mut maps, mut points) = (0, 0);
    for a in &spaces {
        for b in &spaces {
            for graph in all_functions(a.len(), b.len()) {
                let f = MeasurableMap::from_graph("f", a, b, graph).unwrap();
                let check = check_unit_naturality(&f, a.points()).unwrap();
                ensure(check.passed(), || check.to_string())?;
                maps += 1;
                points += check.checked;
            }
        }
    }
    Ok(format!("{maps} maps, {points} points"))
}

/// 5. `E_Y∘P(P(f)) = P(f)∘E_X` on 200 random mixtures.
fn mult_naturality() -> Outcome {
    let mut rng = sample::rng(SEED);
    for i in 0..200 {
        let (nx, ny) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let x = sample::space(&mut rng, "X", "x", nx);
        let y = sample::space(&mut rng, "Y", "y", ny);
        let f = sample::measurable_map(&mut rng, "f", &x, &y);
        let mix = sample::mix(&mut rng, &x, 4);
        let check = check_mult_naturality(&f, &[mix]).unwrap();
        ensure(check.passed(), || format!("sample #{i}: {check}"))?;
    }
    Ok("200 mixtures".into())
}

/// 6. Left unit, right unit and associativity on 200 random second-level
/// mixtures over spaces with at most 5 atoms and at most 4 entries per level.
fn monad_laws() -> Outcome {
    let mut rng = sample::rng(SEED);
    let samples: Vec<_> = (0..200)
        .map(|i| {
            let atoms = rng.gen_range(1..=5);
            let x = sample::space(&mut rng, &format!("X{i}"), "x", atoms);
            sample::mix_mix(&mut rng, &x, 4)
        })
        .collect();
    let report = check_monad_laws(&samples);
    for law in [&report.left_unit, &report.right_unit, &report.associativity] {
        ensure(law.passed(), || law.to_string())?;
    }
    Ok(format!(
        "{} / {} / {} instances",
        report.left_unit.checked, report.right_unit.checked, report.associativity.checked
    ))
}

/// 7. `∫θ dδ_x = θ(x)`, `ξ_{1_F}(P) = P(F)` and
/// `∫θ dE(π') = Σ wᵢ·ξ_θ(Pᵢ)` on 500 random (θ, π') pairs.
fn integration_lemma() -> Outcome {
    let mut rng = sample::rng(SEED);
    for i in 0..500 {
        let atoms = rng.gen_range(1..=5);
        let x = sample::space(&mut rng, "X", "x", atoms);
        let theta = sample::observable(&mut rng, &x);
        let mix = sample::mix(&mut rng, &x, 4);
        for p in x.points() {
            let lhs = integrate(&theta, &dirac(&x, p).unwrap()).unwrap();
            ensure(&lhs == theta.value_at(p).unwrap(), || format!("sample #{i}: integral against delta_{p}"))?;
        }
        for set in x.events() {
            let indicator = RealObservable::indicator(&set);
            for p in mix.support() {
                ensure(xi(&indicator, p).unwrap() == p.measure_of(&set).unwrap(), || {
                    format!("sample #{i}: xi of indicator of {set:?}")
                })?;
            }
        }
        let lhs = integrate(&theta, &giry_mult(&mix)).unwrap();
        let rhs: Rational = mix.entries().map(|(p, w)| w * xi(&theta, p).unwrap()).sum();
        ensure(lhs == rhs, || format!("sample #{i}: {lhs} != {rhs}"))?;
    }
    Ok("500 pairs".into())
}

/// 8. Reflexivity and transitivity of `≤_χ` over every partition of a
/// 4-point set paired with every measure on the grid `{0, 1/4, 1/2, 3/4, 1}`.
fn chi_preorder() -> Outcome {
    let x = discrete("X", "p", 4);
    let mut grid = Vec::new();
    for a in 0..=4i64 {
        for b in 0..=4 - a {
            for c in 0..=4 - a - b {
                grid.push([a, b, c, 4 - a - b - c]);
            }
        }
    }
    let mut objs = Vec::new();
    for blocks in set_partitions(4) {
        let labelled: Vec<Vec<String>> = blocks.iter().map(|b| b.iter().map(|&i| format!("p{i}")).collect()).collect();
        let partition = Partition::new(x.points().iter().cloned(), labelled).unwrap();
        for w in &grid {
            let m = RationalMeasure::probability(&x, w.iter().map(|&n| rat(n, 4)).collect()).unwrap();
            objs.push(ChiObject::new(&x, partition.clone(), m).unwrap());
        }
    }
    let n = objs.len();
    ensure(n == 15 * 35, || format!("expected 525 objects, built {n}"))?;
    let words = n.div_ceil(64);
    let mut rows = vec![vec![0u64; words]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for j in 0..n {
            if chi_leq(&objs[i], &objs[j]).unwrap() {
                row[j / 64] |= 1 << (j % 64);
            }
        }
    }
    let related = |i: usize, j: usize| rows[i][j / 64] >> (j % 64) & 1 == 1;
    for i in 0..n {
        ensure(related(i, i), || format!("not reflexive at object #{i}"))?;
    }
    // v ≤ u and u ≤ w imply v ≤ w for every triple exactly when row(u) ⊆ row(v)
    // whenever v ≤ u
    let mut pairs = 0u64;
    for v in 0..n {
        for u in (0..n).filter(|&u| related(v, u)) {
            pairs += 1;
            if let Some(k) = (0..words).find(|&k| rows[u][k] & !rows[v][k] != 0) {
                let w = k * 64 + (rows[u][k] & !rows[v][k]).trailing_zeros() as usize;
                return Err(format!("objects #{v} <= #{u} <= #{w} but not #{v} <= #{w}"));
            }
        }
    }
    Ok(format!("{n} objects, {pairs} related pairs, {} triples", (n as u64).pow(3)))
}

/// Every ratio `μ(f⁻¹A)/ν(A)` over all measurable `A`, taking the largest;
/// `None` if some ν-null `A` has a preimage of positive μ-mass.
fn brute_force_bound(f: &MeasurableMap, mu: &RationalMeasure, nu: &RationalMeasure) -> Option<Rational> {
    let mut best = Rational::zero();
    for set in f.cod().events() {
        let pulled = mu.measure_of(&f.preimage(&set)).unwrap();
        let target = nu.measure_of(&set).unwrap();
        if target.is_zero() {
            if !pulled.is_zero() {
                return None;
            }
        } else if pulled.clone() / target.clone() > best {
            best = pulled / target;
        }
    }
    Some(best)
}

/// 9. The bound of a composite is at most the product of bounds, and every
/// computed bound equals the brute-force minimum over all measurable sets.
fn bounded_composition() -> Outcome {
    let mut rng = sample::rng(SEED);
    let (mut compared, mut composed) = (0, 0);
    for i in 0..500 {
        let sizes: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=5)).collect();
        let spaces: Vec<FinSpace> =
            sizes.iter().enumerate().map(|(k, &n)| sample::space(&mut rng, &format!("S{k}"), "x", n)).collect();
        let measures: Vec<RationalMeasure> = spaces
            .iter()
            .map(|s| if rng.gen_bool(0.5) { sample::probability(&mut rng, s) } else { sample::finite_measure(&mut rng, s) })
            .collect();
        let f = sample::measurable_map(&mut rng, "f", &spaces[0], &spaces[1]);
        let g = sample::measurable_map(&mut rng, "g", &spaces[1], &spaces[2]);
        let gf = g.after(&f).unwrap();
        let bf = bounded_constant(&f, &measures[0], &measures[1]).unwrap();
        let bg = bounded_constant(&g, &measures[1], &measures[2]).unwrap();
        let bgf = bounded_constant(&gf, &measures[0], &measures[2]).unwrap();
        for (name, map, dom, cod, bound) in
            [("f", &f, 0, 1, &bf), ("g", &g, 1, 2, &bg), ("g∘f", &gf, 0, 2, &bgf)]
        {
            let brute = brute_force_bound(map, &measures[dom], &measures[cod]);
            ensure(*bound == brute, || format!("sample #{i}: bound of {name} is {bound:?}, brute force {brute:?}"))?;
            compared += 1;
        }
        if let (Some(mf), Some(mg)) = (&bf, &bg) {
            let product = mf * mg;
            ensure(bgf.as_ref().is_some_and(|m| *m <= product), || {
                format!("sample #{i}: bound of g∘f is {bgf:?}, exceeds {product}")
            })?;
            composed += 1;
        }
    }
    ensure(composed > 0, || "no sample had both maps bounded".into())?;
    Ok(format!("{compared} bounds against brute force, {composed} bounded composites"))
}

/// 10. Exactly one mediating arrow, equal to the pairing, for all spaces with
/// `|Z| ≤ 3` and `|X×Y| ≤ 6` under every partition and every pair of
/// measurable maps.
fn product_universal() -> Outcome {
    let mut shapes: Vec<(usize, usize)> = Vec::new();
    for nx in 1..=6 {
        for ny in 1..=6 / nx {
            shapes.push((nx, ny));
        }
    }
    let mut instances = 0u64;
    for (nx, ny) in shapes {
        for bx in set_partitions(nx) {
            let x = space_from_blocks("X", "x", &bx);
            for by in set_partitions(ny) {
                let y = space_from_blocks("Y", "y", &by);
                let product = product_space(&x, &y);
                for nz in 1..=3 {
                    for bz in set_partitions(nz) {
                        let z = space_from_blocks("Z", "z", &bz);
                        let fs = finprob::fincat::all_measurable_maps(&z, &x, DEFAULT_ENUMERATION_CAP).unwrap();
                        let gs = finprob::fincat::all_measurable_maps(&z, &y, DEFAULT_ENUMERATION_CAP).unwrap();
                        for f in &fs {
                            for g in &gs {
                                let report = check_product_universal(&x, &y, &z, f, g, DEFAULT_ENUMERATION_CAP).unwrap();
                                let pair = pairing(f, g, &product).unwrap();
                                ensure(
                                    report.mediating == 1 && report.witness.as_ref() == Some(&pair) && report.holds(),
                                    || format!("X {bx:?}, Y {by:?}, Z {bz:?}, f {f:?}, g {g:?}: {report:?}"),
                                )?;
                                instances += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{instances} (X, Y, Z, f, g) instances"))
}

/// 11. Categories 1, 2, 3 validate; the scaling fragment has mutual inverses;
/// 2 has initial {A} and terminal {B}; the opposite is an involution.
fn finite_categories() -> Outcome {
    for c in [category_one(), category_two(), category_three()] {
        let report = validate_category(&c);
        ensure(report.is_valid(), || format!("category {}: {:?}", c.name(), report.violations))?;
        ensure(opposite_category(&opposite_category(&c)) == c, || format!("op∘op != id on {}", c.name()))?;
        ensure(validate_category(&opposite_category(&c)).is_valid(), || format!("{}^op invalid", c.name()))?;
    }
    let (initial, terminal) = find_initial_terminal(&category_two());
    ensure(initial == ["A"] && terminal == ["B"], || format!("initial {initial:?}, terminal {terminal:?}"))?;

    let x = FinSpace::new("X", ["a", "b", "c"], vec![vec!["a"], vec!["b", "c"]]).unwrap();
    let mu = RationalMeasure::finite(&x, vec![rat(1, 1), rat(2, 1)]).unwrap();
    let c = rat(3, 1);
    let id = MeasurableMap::identity(&x);
    let frag = cps_fragment(
        "CMS",
        &[("mu".to_string(), mu.clone()), ("cmu".to_string(), mu.scaled(&c).unwrap())],
        &[
            ("f".to_string(), "mu".to_string(), "cmu".to_string(), id.clone()),
            ("g".to_string(), "cmu".to_string(), "mu".to_string(), id),
        ],
    )
    .unwrap();
    let cat = &frag.fragment.category;
    ensure(validate_category(cat).is_valid(), || "scaling fragment is not a category".into())?;
    let inv_f = is_isomorphism(cat, "f").unwrap();
    let inv_g = is_isomorphism(cat, "g").unwrap();
    ensure(inv_f.as_deref() == Some("g") && inv_g.as_deref() == Some("f"), || {
        format!("inverse of f: {inv_f:?}, inverse of g: {inv_g:?}")
    })?;
    let bound = |n: &str| frag.bounds[cat.arrow_index(n).unwrap()].clone();
    ensure(bound("f") == Some(c.recip()) && bound("g") == Some(c.clone()), || "scaling bounds".into())?;
    ensure(bound("f").unwrap() * bound("g").unwrap() == Rational::one(), || "bounds are not reciprocal".into())?;
    Ok("1, 2, 3, scaling isomorphism, initial/terminal, op∘op".into())
}

/// 12. The golden fixtures give byte-identical stdout and the documented
/// exit codes.
fn cli_golden() -> Outcome {
    let cases = support::golden_cases().len();
    let problems = golden_mismatches();
    ensure(problems.is_empty(), || problems.join("\n"))?;
    Ok(format!("{cases} golden cases"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "stoch laws", budget: Duration::from_secs(5), run: stoch_laws },
        Criterion { id: 2, name: "deterministic functoriality", budget: Duration::from_secs(5), run: deterministic_functoriality },
        Criterion { id: 3, name: "giry functor", budget: Duration::from_secs(5), run: giry_functor },
        Criterion { id: 4, name: "unit naturality", budget: Duration::from_secs(2), run: unit_naturality },
        Criterion { id: 5, name: "multiplication naturality", budget: Duration::from_secs(5), run: mult_naturality },
        Criterion { id: 6, name: "monad laws", budget: Duration::from_secs(10), run: monad_laws },
        Criterion { id: 7, name: "integration lemma", budget: Duration::from_secs(5), run: integration_lemma },
        Criterion { id: 8, name: "chi preorder", budget: Duration::from_secs(30), run: chi_preorder },
        Criterion { id: 9, name: "bounded composition", budget: Duration::from_secs(10), run: bounded_composition },
        Criterion { id: 10, name: "product universal property", budget: Duration::from_secs(10), run: product_universal },
        Criterion { id: 11, name: "finite categories", budget: Duration::from_secs(2), run: finite_categories },
        Criterion { id: 12, name: "cli golden files", budget: Duration::from_secs(5), run: cli_golden },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), c.budget.as_secs());
        match outcome {
            Ok(detail) if elapsed <= c.budget => println!("PASS {:>2} {}: {detail} ({timing})", c.id, c.name),
            Ok(detail) => {
                failed += 1;
                println!("FAIL {:>2} {}: over time budget, {detail} ({timing})", c.id, c.name);
            }
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {}: {e} ({timing})", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
