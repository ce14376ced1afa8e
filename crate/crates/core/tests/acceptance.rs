//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact. The only tolerances are wall-clock budgets, pinned
//! below. Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use logcsm::arrangement::{
    build_lattice, characteristic_polynomial, csm_complement, euler_characteristic_complement, Arrangement,
};
use logcsm::chow::{dual_class, proof_chain_check, segre_of_bundle, BundleModel, ChowClass, ChowRing, ProjBundleClass};
use logcsm::groebner::{
    buchberger, is_linear_type, is_linear_type_with, jacobian_ideal, syzygies, GbOptions, Ideal, LinearTypeMethod,
};
use logcsm::logder::{
    bounded_log_derivations, default_ring, graded_log_derivations, saito_from_candidates, saito_test,
    terao_factorization_check, Derivation,
};
use logcsm::poly::{parse_in_ring, Polynomial, Rational, Ring};
use logcsm::verify::{verify_formula, Verdict, VerifyOptions};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET_NORMAL_CROSSING: Duration = Duration::from_secs(1);
const BUDGET_IDENTITY_SUITE: Duration = Duration::from_secs(60);
const BUDGET_NEGATIVE_CONTROLS: Duration = Duration::from_secs(5);
const BUDGET_PROOF_CHAIN: Duration = Duration::from_secs(10);
const BUDGET_SHADOW_PROPERTIES: Duration = Duration::from_secs(10);
const BUDGET_CUSP: Duration = Duration::from_secs(5);

/// Random cases for the shadow / Chow properties.
const RANDOM_CASES: usize = 200;
const SEED: u64 = 0x5eed_c5a1;

type Check = Result<String, String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn poly(text: &str, ring: &Ring) -> Polynomial {
    parse_in_ring(text, ring).expect("well-formed polynomial")
}

fn class(coeffs: &[i64]) -> ChowClass {
    ChowClass::new(coeffs.to_vec()).expect("nonempty")
}

fn one_plus_h_pow(n: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for _ in 0..n {
        let mut next = vec![1i64; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row
}

fn normal_crossing() -> Check {
    let r = default_ring(2);
    let h = poly("x*y", &r);
    let gb = buchberger(&jacobian_ideal(&h).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let reduced: Vec<String> = gb.elements().iter().map(|p| p.to_string()).collect();
    ensure(reduced == ["y", "x"] || reduced == ["x", "y"], || {
        format!("jacobian GB {reduced:?}")
    })?;

    let v1 = graded_log_derivations(&h, 1).map_err(|e| e.to_string())?;
    let names: Vec<String> = v1.basis.iter().map(|d| d.to_string()).collect();
    ensure(names == ["x*dx", "y*dy"], || format!("degree-1 derivations {names:?}"))?;

    let cert = saito_test(&h, &v1.basis)
        .map_err(|e| e.to_string())?
        .map_err(|f| format!("Saito failed with det {}", f.determinant))?;
    ensure(cert.determinant == h, || format!("det {}", cert.determinant))?;

    let lt = is_linear_type(jacobian_ideal(&h).map_err(|e| e.to_string())?.generators()).map_err(|e| e.to_string())?;
    ensure(lt.linear_type, || "jacobian of xy not of linear type".into())?;
    Ok("GB {x, y}; Der_1 = <x dx, y dy>; det = xy; linear type".into())
}

struct Case {
    name: String,
    arrangement: Arrangement,
    exponents: Vec<u32>,
    lhs: Vec<i64>,
}

fn identity_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 1..=4 {
        cases.push(Case {
            name: format!("empty in P^{n}"),
            arrangement: Arrangement::new(n, vec![]).expect("empty arrangement"),
            exponents: vec![0; n + 1],
            lhs: one_plus_h_pow(n + 1)[..=n].to_vec(),
        });
        let mut normal = vec![0i64; n + 1];
        normal[0] = 1;
        cases.push(Case {
            name: format!("hyperplane in P^{n}"),
            arrangement: Arrangement::from_integers(n, &[&normal]).expect("one hyperplane"),
            exponents: std::iter::repeat_n(0, n).chain([1]).collect(),
            lhs: one_plus_h_pow(n),
        });
        let mut torus = vec![0i64; n + 1];
        torus[0] = 1;
        cases.push(Case {
            name: format!("Boolean in P^{n}"),
            arrangement: Arrangement::boolean(n),
            exponents: vec![1; n + 1],
            lhs: torus,
        });
    }
    let lines = |rows: &[&[i64]]| Arrangement::from_integers(2, rows).expect("valid lines");
    cases.push(Case {
        // exponents sum to the degree 3; {1,1,2} belongs to xyz(x+y) below
        name: "3 concurrent lines".into(),
        arrangement: lines(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]),
        exponents: vec![0, 1, 2],
        lhs: vec![1, 0, -1],
    });
    cases.push(Case {
        name: "braid in P^2".into(),
        arrangement: Arrangement::braid(2, true),
        exponents: vec![1, 2, 3],
        lhs: vec![1, -3, 2],
    });
    cases.push(Case {
        name: "xyz(x+y)".into(),
        arrangement: lines(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]),
        exponents: vec![1, 1, 2],
        lhs: vec![1, -1, 0],
    });
    cases.push(Case {
        name: "braid S5 in P^3".into(),
        arrangement: Arrangement::braid(3, true),
        exponents: vec![1, 2, 3, 4],
        lhs: vec![1, -6, 11, -6],
    });
    cases
}

fn identity_suite() -> Check {
    let cases = identity_cases();
    let opts = VerifyOptions::default();
    for case in &cases {
        let report = verify_formula(&case.arrangement, &opts).map_err(|e| format!("{}: {e}", case.name))?;
        let free = &report.hypotheses.free;
        ensure(free.exponents.as_deref() == Some(&case.exponents[..]), || {
            format!("{}: exponents {:?}", case.name, free.exponents)
        })?;
        ensure(report.lhs == class(&case.lhs), || {
            format!("{}: lhs {}", case.name, report.lhs)
        })?;
        ensure(report.rhs.as_ref() == Some(&report.lhs), || {
            format!("{}: rhs {:?} vs lhs {}", case.name, report.rhs, report.lhs)
        })?;
        ensure(
            report.equal == Some(true) && report.verdict == Verdict::Verified,
            || {
                format!(
                    "{}: verdict {:?}, linear type {:?}",
                    case.name, report.verdict, report.hypotheses.linear_type.status
                )
            },
        )?;
        ensure(report.euler_check, || format!("{}: euler check", case.name))?;
    }
    Ok(format!(
        "{} arrangements verified, both hypotheses certified",
        cases.len()
    ))
}

fn negative_controls() -> Check {
    let generic = Arrangement::from_integers(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).expect("valid");
    let chi = characteristic_polynomial(&generic);
    ensure(chi.coeffs() == [1, -4, 6, -3], || format!("chi {chi}"))?;
    let terao = terao_factorization_check(&generic);
    ensure(
        terao.certified_non_free && terao.roots == [1] && terao.residual == [1, -3, 3],
        || format!("Terao verdict {terao:?}"),
    )?;

    let r = default_ring(2);
    let gens = [poly("x^2", &r), poly("x*y", &r), poly("y^2", &r)];
    for method in [LinearTypeMethod::Saturation, LinearTypeMethod::Elimination] {
        let v = is_linear_type_with(&gens, &GbOptions::default(), method).map_err(|e| e.to_string())?;
        let w = v.witness.ok_or_else(|| format!("{method:?}: no witness"))?;
        let expected = poly("T1*T3 - T2^2", w.ring());
        let unit = w.scalar_ratio(&expected);
        let plus_minus_one = [Rational::from_integer(1.into()), Rational::from_integer((-1).into())];
        ensure(
            !v.linear_type && unit.is_some_and(|u| plus_minus_one.contains(&u)),
            || format!("{method:?}: witness {w}"),
        )?;
    }

    let xy = poly("x*y", &r);
    let pair = [
        Derivation::parse(&r, &["x", "0"]).expect("derivation"),
        Derivation::parse(&r, &["0", "x*y"]).expect("derivation"),
    ];
    let failure = match saito_test(&xy, &pair).map_err(|e| e.to_string())? {
        Ok(_) => return Err("{x dx, xy dy} passed Saito".into()),
        Err(f) => f,
    };
    ensure(failure.determinant == poly("x^2*y", &r), || {
        format!("det {}", failure.determinant)
    })?;
    Ok("chi = (t-1)(t^2-3t+3) non-free; witness T1T3-T2^2; det x^2y != unit * xy".into())
}

const CHAIN_LABELS: [&str; 9] = [
    "-r_*((1-H)^-1 [P(C)])",
    "-r_*(sum H^i [P(C)])",
    "-r_*(sum H^i c_n(r^*F (x) O(1)))",
    "-r_*(sum_i H^i sum_j c_j(F) H^(n-j))",
    "-sum_i sum_j c_j(F) r_*(H^(n+i-j))",
    "-sum_i sum_j c_j(F) s_(i-j+1)(E)",
    "-sum_i sum_(j+k=i+1) c_j(F) s_k(E)",
    "-(c(F) s(E) - 1)",
    "[X] - c(F) s(E)",
];

fn proof_chain() -> Check {
    for n in 1..=4 {
        let report = proof_chain_check(n).map_err(|e| e.to_string())?;
        let labels: Vec<&str> = report.steps.iter().map(|s| s.label).collect();
        ensure(labels == CHAIN_LABELS, || format!("n = {n}: labels {labels:?}"))?;
        ensure(report.holds && report.steps.iter().all(|s| s.matches_previous), || {
            format!("n = {n}: first failure {:?}", report.first_failure)
        })?;
    }
    Ok("n = 1..4, eight equalities each".into())
}

fn random_bundle(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> BundleModel<ChowClass> {
    let chern = (1..=rank)
        .map(|i| ChowClass::h_power(n, i).scaled(rng.gen_range(-5..=5)))
        .collect();
    BundleModel::new(chern).expect("rank at least 1")
}

fn random_class(rng: &mut ChaCha8Rng, n: usize) -> ChowClass {
    let coeffs: Vec<i64> = (0..=n).map(|_| rng.gen_range(-4..=4)).collect();
    ChowClass::from_polynomial(n, &coeffs)
}

fn shadow_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for case in 0..RANDOM_CASES {
        let n = rng.gen_range(1..=4);
        let rank = rng.gen_range(1..=4);
        let e = random_bundle(&mut rng, n, rank);
        let one = ChowClass::one(n);
        ensure(e.shadow(&ProjBundleClass::from_base(one.clone())) == one, || {
            format!("case {case}: shadow [P(E)] != [X]")
        })?;
        let c = e.total_chern();
        let s = segre_of_bundle(&c).map_err(|e| e.to_string())?;
        ensure(c.times(&s) == one, || format!("case {case}: c s = {}", c.times(&s)))?;
        let gamma = random_class(&mut rng, n);
        ensure(dual_class(&dual_class(&gamma)) == gamma, || {
            format!("case {case}: dual dual {gamma}")
        })?;

        let len = e.h_cap() + 1;
        let alpha = ProjBundleClass::new((0..len).map(|_| random_class(&mut rng, n)).collect());
        let canonical = e.reduce(&alpha);
        let mut shuffled = alpha.clone();
        loop {
            let mut live: Vec<usize> = (rank..shuffled.coeffs().len())
                .filter(|&k| !shuffled.coeffs()[k].is_zero())
                .collect();
            live.shuffle(&mut rng);
            match live.first() {
                Some(&k) => shuffled = e.reduce_at(&shuffled, k),
                None => break,
            }
        }
        ensure(shuffled == canonical, || {
            format!("case {case}: reduction order changed the normal form")
        })?;
    }
    Ok(format!("{RANDOM_CASES} random cases, ranks 1..4"))
}

fn cusp() -> Check {
    let r = default_ring(2);
    let h = poly("x^2 - y^3", &r);
    let candidates = bounded_log_derivations(&h, 2).map_err(|e| e.to_string())?;
    let cert = saito_from_candidates(&h, &candidates)
        .map_err(|e| e.to_string())?
        .ok_or("no Saito basis within degree 2")?;
    let six = Rational::from_integer(6.into());
    ensure(cert.unit == six || cert.unit == -six.clone(), || {
        format!("det = {} h", cert.unit)
    })?;
    let lt = is_linear_type(jacobian_ideal(&h).map_err(|e| e.to_string())?.generators()).map_err(|e| e.to_string())?;
    ensure(lt.linear_type, || "cusp jacobian not of linear type".into())?;
    Ok(format!("det = {} (unit {}); linear type", cert.determinant, cert.unit))
}

fn lattice_fixtures() -> Vec<Arrangement> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/arrangements");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)
        .expect("fixture directory")
        .map(|e| e.expect("entry").path())
        .collect();
    paths.sort();
    let mut out: Vec<Arrangement> = paths
        .iter()
        .map(|p| {
            let job: serde_json::Value =
                serde_json::from_str(&std::fs::read_to_string(p).expect("readable")).expect("json");
            Arrangement::from_value(&job["arrangement"]).expect("fixture arrangement")
        })
        .collect();
    out.extend([Arrangement::boolean(5), Arrangement::braid(4, false)]);
    out
}

fn combinatorial_invariants() -> Check {
    let fixtures = lattice_fixtures();
    for (i, a) in fixtures.iter().enumerate() {
        let lattice = build_lattice(a);
        let flats = lattice.flats();
        let mu = lattice.mobius();
        for (x, fx) in flats.iter().enumerate() {
            let sum: i64 = flats
                .iter()
                .zip(mu)
                .filter(|(fy, _)| fy.is_below(fx) || *fy == fx)
                .map(|(_, m)| m)
                .sum();
            let expected = i64::from(fx.rank == 0);
            ensure(sum == expected, || format!("fixture {i}: Mobius sum {sum} at flat {x}"))?;
        }
        let lhs = csm_complement(a);
        ensure(lhs.dimension_component(0) == euler_characteristic_complement(a), || {
            format!("fixture {i}: [P^0] coefficient of {lhs}")
        })?;
        if !a.is_empty() {
            let chi = characteristic_polynomial(a);
            ensure(chi.evaluate(1) == 0, || {
                format!("fixture {i}: chi(1) = {}", chi.evaluate(1))
            })?;
        }
    }
    Ok(format!("{} lattices", fixtures.len()))
}

fn groebner_fixtures() -> Vec<(Ring, Vec<&'static str>)> {
    let xyz = Ring::new(&["x", "y", "z"]);
    vec![
        (default_ring(2), vec!["x^2", "x*y", "y^2"]),
        (default_ring(2), vec!["2*x", "-3*y^2"]),
        (xyz.clone(), vec!["x*y - z", "y*z - x", "z*x - y"]),
        (
            Ring::new(&["x", "y", "z", "w"]),
            vec!["x*z - y^2", "x*w - y*z", "y*w - z^2"],
        ),
        (xyz.clone(), vec!["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]),
        (xyz, vec!["x^3 - y*z", "y^2 - x*z", "x*y - z^2"]),
    ]
}

fn groebner_engine() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ideals = 0;
    for (ring, texts) in groebner_fixtures() {
        let gens: Vec<Polynomial> = texts.iter().map(|t| poly(t, &ring)).collect();
        let reference = buchberger(&Ideal::new(&ring, &gens).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        for _ in 0..3 {
            let mut shuffled = gens.clone();
            shuffled.shuffle(&mut rng);
            let gb =
                buchberger(&Ideal::new(&ring, &shuffled).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(gb.elements() == reference.elements(), || {
                format!("{texts:?}: order changed the reduced basis")
            })?;
        }
        let again = buchberger(&reference.as_ideal()).map_err(|e| e.to_string())?;
        ensure(
            again.elements() == reference.elements() && reference.is_reduced(),
            || format!("{texts:?}: not idempotent"),
        )?;
        let syz = syzygies(&gens).map_err(|e| e.to_string())?;
        ensure(syz.verify(), || format!("{texts:?}: a syzygy does not expand to zero"))?;
        ideals += 1;
    }
    let braid = jacobian_ideal(&Arrangement::braid(2, true).defining_polynomial()).map_err(|e| e.to_string())?;
    let syz = syzygies(braid.generators()).map_err(|e| e.to_string())?;
    ensure(syz.verify(), || "braid jacobian syzygies".into())?;
    Ok(format!("{} ideals, 3 shuffles each", ideals + 1))
}

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Check,
}

const CRITERIA: [Criterion; 8] = [
    Criterion {
        id: 1,
        name: "normal crossing xy",
        budget: Some(BUDGET_NORMAL_CROSSING),
        run: normal_crossing,
    },
    Criterion {
        id: 2,
        name: "identity on free arrangements",
        budget: Some(BUDGET_IDENTITY_SUITE),
        run: identity_suite,
    },
    Criterion {
        id: 3,
        name: "negative controls",
        budget: Some(BUDGET_NEGATIVE_CONTROLS),
        run: negative_controls,
    },
    Criterion {
        id: 4,
        name: "projective-bundle chain",
        budget: Some(BUDGET_PROOF_CHAIN),
        run: proof_chain,
    },
    Criterion {
        id: 5,
        name: "shadow and Chow properties",
        budget: Some(BUDGET_SHADOW_PROPERTIES),
        run: shadow_properties,
    },
    Criterion {
        id: 6,
        name: "cusp x^2 - y^3",
        budget: Some(BUDGET_CUSP),
        run: cusp,
    },
    Criterion {
        id: 7,
        name: "combinatorial invariants",
        budget: None,
        run: combinatorial_invariants,
    },
    Criterion {
        id: 8,
        name: "Groebner engine",
        budget: None,
        run: groebner_engine,
    },
];

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let over_budget = c.budget.is_some_and(|b| elapsed >= b);
        let budget = c.budget.map_or(String::new(), |b| format!(" < {:.0?}", b));
        let (status, detail) = match (&outcome, over_budget) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        println!(
            "{status} criterion {}: {} [{elapsed:.2?}{budget}] {detail}",
            c.id, c.name
        );
        if status == "FAIL" {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
