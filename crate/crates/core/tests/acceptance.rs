//! Acceptance criteria, one line each. Runs without the libtest harness so every
//! line is printed; exits nonzero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cbv_core::homotopy::{check_relations_n, BlockSign, Conventions, ObstructionKey};
use cbv_core::sample::{
    random_carrier, random_differential, random_map, random_valid_set, SampleConfig,
};
use cbv_core::shuffle::{enumerate_straight_shuffles, is_straight_shuffle, DecoratedShuffle};
use cbv_core::strict::{
    box_operator, build_de_rham, build_poisson, check_second_order, classify_strict,
    constant_operator, derived_bracket, leibniz_defect, tensor_strict, StrictStructure,
};
use cbv_core::tables::{
    corrected_obstruction, erratum, exprs_equal_mod_symmetry, specialize_obstruction,
    tabulated_keys, tabulated_obstruction, OracleConfig, PermReading,
};
use cbv_core::tensor::{
    hom_differential, insertion_bracket, pre_lie, q, Element, GradedCarrier, LazyMap, Mono,
    MultiMap, Permutation, Rational,
};
use cbv_core::ym::{build_ym, verify_ym, CubicReading, YmCheckConfig};

type Outcome = Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("table reproduction", table_reproduction),
        ("straight shuffles", straight_shuffles),
        ("dg Lie structure", dg_lie),
        ("relations between obstructions", relations_n),
        ("Yang-Mills", yang_mills),
        ("strict algebras", strict_suite),
        ("second order and Leibniz", second_order_and_leibniz),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_text(&p))));
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {} [{tag}] {name}: {detail} ({secs:.1}s)", i + 1);
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn panic_text(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown".into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sign(neg: bool) -> Rational {
    if neg {
        -Rational::one()
    } else {
        Rational::one()
    }
}

// 1

fn table_reproduction() -> Outcome {
    let cfg = OracleConfig::default();
    let conv = Conventions::default();
    let keys = tabulated_keys();
    let mut verbatim_bad = Vec::new();
    let mut corrected_bad = Vec::new();
    let mut unexpected = Vec::new();
    for key in &keys {
        let ours = specialize_obstruction(key, conv).map_err(|e| e.to_string())?;
        let printed = tabulated_obstruction(key, PermReading::Direct).map_err(|e| e.to_string())?;
        let fixed = corrected_obstruction(key, PermReading::Direct).map_err(|e| e.to_string())?;
        let v = exprs_equal_mod_symmetry(&ours, &printed, &cfg).map_err(|e| e.to_string())?;
        if !v.agree() {
            verbatim_bad.push(key.to_string());
        } else if v.nonzero == 0 {
            unexpected.push(format!("{key} never nonzero"));
        }
        if v.agree() == erratum(key).is_some() {
            unexpected.push(format!(
                "{key} verbatim agreement does not match the errata list"
            ));
        }
        let c = exprs_equal_mod_symmetry(&ours, &fixed, &cfg).map_err(|e| e.to_string())?;
        if !c.agree() || c.trials < cfg.trials {
            corrected_bad.push(key.to_string());
        }
    }
    let summary = format!(
        "{} keys, {} trials each; verbatim rows agree for {}/{}; corrected rows agree for {}/{}",
        keys.len(),
        cfg.trials,
        keys.len() - verbatim_bad.len(),
        keys.len(),
        keys.len() - corrected_bad.len(),
        keys.len()
    );
    if verbatim_bad.is_empty() && corrected_bad.is_empty() && unexpected.is_empty() {
        Ok(summary)
    } else {
        let mut msg = summary;
        if !verbatim_bad.is_empty() {
            msg += &format!("; printed rows disagree: {}", verbatim_bad.join(", "));
        }
        if !corrected_bad.is_empty() {
            msg += &format!("; corrected rows disagree: {}", corrected_bad.join(", "));
        }
        if !unexpected.is_empty() {
            msg += &format!("; {}", unexpected.join("; "));
        }
        Err(msg)
    }
}

// 2

fn compositions(max: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for x in 1..=left {
            cur.push(x);
            rec(left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max, &mut Vec::new(), &mut out);
    out
}

fn boxes(lo: &[usize], hi: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for (&a, &b) in lo.iter().zip(hi) {
        let mut next = Vec::new();
        for v in &out {
            for x in a..=b {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn straight_shuffles() -> Outcome {
    let mut pairs = 0;
    let mut total = 0;
    let perms: Vec<Vec<Permutation>> = (0..=6).map(Permutation::all).collect();
    for p in compositions(6) {
        let k = p.len();
        for q in boxes(&vec![1; k], &p) {
            let slack: Vec<usize> = (0..k).map(|i| p[i] - q[i]).collect();
            let mut brute = Vec::new();
            for l in boxes(&vec![0; k], &slack) {
                let r: Vec<usize> = (0..k).map(|i| slack[i] - l[i]).collect();
                for sigma in &perms[p.iter().sum::<usize>()] {
                    if is_straight_shuffle(sigma, &l, &q, &r, &p).map_err(|e| e.to_string())? {
                        brute.push(DecoratedShuffle {
                            l: l.clone(),
                            sigma: sigma.clone(),
                            q: q.clone(),
                            r: r.clone(),
                        });
                    }
                }
            }
            let mut listed = enumerate_straight_shuffles(&q, &p).map_err(|e| e.to_string())?;
            let n = listed.len();
            listed.sort();
            listed.dedup();
            brute.sort();
            ensure(listed.len() == n, || {
                format!("duplicates for {q:?} in {p:?}")
            })?;
            ensure(listed == brute, || format!("mismatch for {q:?} in {p:?}"))?;
            pairs += 1;
            total += n;
        }
    }
    let sigma = Permutation::from_one_line(&[2, 3, 11, 13, 4, 5, 10, 12, 1, 6, 7, 8, 9])
        .map_err(|e| e.to_string())?;
    let (l, q, r, p) = ([1, 0, 1, 0], [1, 2, 2, 2], [2, 2, 0, 0], [4, 4, 3, 2]);
    let ok = is_straight_shuffle(&sigma, &l, &q, &r, &p).map_err(|e| e.to_string())?;
    ensure(ok, || "the 13-letter example is not recognized".into())?;
    let listed = enumerate_straight_shuffles(&q, &p).map_err(|e| e.to_string())?;
    ensure(
        listed
            .iter()
            .any(|d| d.sigma == sigma && d.l == l && d.r == r),
        || "the 13-letter example is not enumerated".into(),
    )?;
    Ok(format!(
        "{pairs} block pairs with total size <= 6 match brute force ({total} decorated shuffles); 13-letter example recognized"
    ))
}

// 3

fn small() -> SampleConfig {
    SampleConfig {
        min_dim: 2,
        max_dim: 3,
        min_degree: -1,
        max_degree: 2,
        density: 0.6,
        coeff_bound: 3,
    }
}

fn lazy_vanishes(m: &LazyMap, c: &GradedCarrier) -> Result<bool, String> {
    Ok(m.first_nonzero(c, 0).map_err(|e| e.to_string())?.is_none())
}

fn dg_lie_tuple(seed: u64) -> Result<(), String> {
    let e = |x: cbv_core::Error| format!("seed {seed}: {x}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = small();
    let c = random_carrier(&mut rng, &cfg);
    let pick = |rng: &mut ChaCha8Rng| {
        let arity = rng.gen_range(1..=3);
        let deg = rng.gen_range(-1..=1);
        random_map(rng, &c, arity, deg, &cfg)
    };
    let (f, g, h) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
    let d = random_differential(&mut rng, &c, &cfg);
    let fail = |what: &str| format!("seed {seed}: {what}");

    // Koszul action on every word of arity <= 3, both as a group action and
    // through maps.
    for n in 1..=3 {
        let all = Permutation::all(n);
        for w in c.words(n, 0) {
            let x = Element::word(w.clone());
            for s in &all {
                for t in &all {
                    let lhs = x.koszul_permute(&s.compose(t)).map_err(e)?;
                    let rhs = x
                        .koszul_permute(t)
                        .map_err(e)?
                        .koszul_permute(s)
                        .map_err(e)?;
                    ensure(lhs == rhs, || fail("Koszul action is not a group action"))?;
                }
            }
        }
    }
    let all = Permutation::all(f.arity());
    for s in &all {
        for t in &all {
            let sym = f.act(s).map_err(e)?.act(t).map_err(e)?;
            ensure(sym == f.act(&s.compose(t)).map_err(e)?, || {
                fail("map action is not a right action")
            })?;
            let lf = LazyMap::from(&f);
            let lazy = lf.act(s).map_err(e)?.act(t).map_err(e)?;
            for w in c.words(f.arity(), 0) {
                ensure(
                    lazy.eval_word(&w).map_err(e)? == sym.eval_word(&w).map_err(e)?,
                    || fail("lazy action differs"),
                )?;
            }
        }
    }

    // partial compositions
    let (lf, lg, lh) = (LazyMap::from(&f), LazyMap::from(&g), LazyMap::from(&h));
    for i in 1..=f.arity() {
        let sym = f.compose_at(i, &g).map_err(e)?;
        let lazy = lf.compose(i, &lg).map_err(e)?;
        for w in c.words(sym.arity(), 0) {
            ensure(
                sym.eval_word(&w).map_err(e)? == lazy.eval_word(&w).map_err(e)?,
                || fail("symbolic and nested composition differ"),
            )?;
        }
    }

    // pre-Lie identity
    let eps = |a: i32, b: i32| sign((a * b).rem_euclid(2) == 1);
    let assoc = |g: &MultiMap, h: &MultiMap| -> Result<MultiMap, cbv_core::Error> {
        pre_lie(&pre_lie(&f, g)?, h)?.sub(&pre_lie(&f, &pre_lie(g, h)?)?)
    };
    let s = eps(g.degree(), h.degree());
    let defect = assoc(&g, &h)
        .map_err(e)?
        .sub(&assoc(&h, &g).map_err(e)?.scale(&s))
        .map_err(e)?;
    ensure(defect.is_zero(), || fail("pre-Lie identity (symbolic)"))?;
    let lassoc = |g: &LazyMap, h: &LazyMap| -> Result<LazyMap, cbv_core::Error> {
        lf.pre_lie(g)?.pre_lie(h)?.sub(&lf.pre_lie(&g.pre_lie(h)?)?)
    };
    let ldefect = LazyMap::sum(vec![
        (Rational::one(), lassoc(&lg, &lh).map_err(e)?),
        (-s, lassoc(&lh, &lg).map_err(e)?),
    ])
    .map_err(e)?;
    ensure(lazy_vanishes(&ldefect, &c)?, || {
        fail("pre-Lie identity (pointwise)")
    })?;

    // antisymmetry and Jacobi
    let br = |a: &MultiMap, b: &MultiMap| insertion_bracket(a, b);
    let efg = eps(f.degree(), g.degree());
    ensure(
        br(&f, &g).map_err(e)? == br(&g, &f).map_err(e)?.scale(&-efg.clone()),
        || fail("antisymmetry (symbolic)"),
    )?;
    let lhs = br(&f, &br(&g, &h).map_err(e)?).map_err(e)?;
    let rhs = br(&br(&f, &g).map_err(e)?, &h)
        .map_err(e)?
        .add(&br(&g, &br(&f, &h).map_err(e)?).map_err(e)?.scale(&efg))
        .map_err(e)?;
    ensure(lhs == rhs, || fail("Jacobi (symbolic)"))?;
    let anti = LazyMap::sum(vec![
        (Rational::one(), lf.bracket(&lg).map_err(e)?),
        (efg.clone(), lg.bracket(&lf).map_err(e)?),
    ])
    .map_err(e)?;
    ensure(lazy_vanishes(&anti, &c)?, || {
        fail("antisymmetry (pointwise)")
    })?;
    let jac = LazyMap::sum(vec![
        (
            Rational::one(),
            lf.bracket(&lg.bracket(&lh).map_err(e)?).map_err(e)?,
        ),
        (
            -Rational::one(),
            lf.bracket(&lg).map_err(e)?.bracket(&lh).map_err(e)?,
        ),
        (-efg, lg.bracket(&lf.bracket(&lh).map_err(e)?).map_err(e)?),
    ])
    .map_err(e)?;
    ensure(lazy_vanishes(&jac, &c)?, || fail("Jacobi (pointwise)"))?;

    // the differential of Hom
    let dh = |x: &MultiMap| hom_differential(&d, x);
    ensure(dh(&dh(&f).map_err(e)?).map_err(e)?.is_zero(), || {
        fail("d_Hom squares to zero (symbolic)")
    })?;
    let fg = br(&f, &g).map_err(e)?;
    let lhs = dh(&fg).map_err(e)?;
    let rhs = br(&dh(&f).map_err(e)?, &g)
        .map_err(e)?
        .add(
            &br(&f, &dh(&g).map_err(e)?)
                .map_err(e)?
                .scale(&sign(f.degree().rem_euclid(2) == 1)),
        )
        .map_err(e)?;
    ensure(lhs == rhs, || fail("d_Hom derivation (symbolic)"))?;
    let ld = LazyMap::from(&d);
    let ldh = |x: &LazyMap| ld.bracket(x);
    ensure(
        lazy_vanishes(&ldh(&ldh(&lf).map_err(e)?).map_err(e)?, &c)?,
        || fail("d_Hom squares to zero (pointwise)"),
    )?;
    let der = LazyMap::sum(vec![
        (
            Rational::one(),
            ldh(&lf.bracket(&lg).map_err(e)?).map_err(e)?,
        ),
        (
            -Rational::one(),
            ldh(&lf).map_err(e)?.bracket(&lg).map_err(e)?,
        ),
        (
            -sign(f.degree().rem_euclid(2) == 1),
            lf.bracket(&ldh(&lg).map_err(e)?).map_err(e)?,
        ),
    ])
    .map_err(e)?;
    ensure(lazy_vanishes(&der, &c)?, || {
        fail("d_Hom derivation (pointwise)")
    })?;
    Ok(())
}

fn dg_lie() -> Outcome {
    let tuples = 100;
    for seed in 0..tuples {
        dg_lie_tuple(seed)?;
    }
    Ok(format!(
        "{tuples} random tuples (arity <= 3, dimension <= 3): Koszul action, composition, pre-Lie, antisymmetry, Jacobi, d_Hom; symbolic and pointwise"
    ))
}

// 4

fn relations_n() -> Outcome {
    let sets = 25;
    let mut rng = ChaCha8Rng::seed_from_u64(0x4e);
    let cfg = SampleConfig::default();
    let keys: Vec<ObstructionKey> = (1..=3).flat_map(ObstructionKey::all_of_weight).collect();
    let mut nonzero = 0;
    for i in 0..sets {
        let set = random_valid_set(&mut rng, 3, BlockSign::default(), &cfg)
            .map_err(|e| format!("set {i}: {e}"))?;
        for key in &keys {
            let entry = check_relations_n(&set, key).map_err(|e| format!("set {i}: {e}"))?;
            if !entry.status.is_pass() {
                return Err(format!(
                    "set {i}, {key}: {}",
                    entry.witness.unwrap_or_default()
                ));
            }
        }
        let cls = cbv_core::homotopy::classify(&set, 3).map_err(|e| e.to_string())?;
        nonzero += cls.obstructions.iter().filter(|o| !o.vanishes).count();
    }
    Ok(format!(
        "{sets} random valid sets, {} obstruction keys of weight <= 3 each ({nonzero} nonzero obstructions seen)",
        keys.len()
    ))
}

// 5

fn yang_mills() -> Outcome {
    let set = build_ym(4, None, CubicReading::default()).map_err(|e| e.to_string())?;
    let cfg = YmCheckConfig {
        max_arity: 5,
        max_poly_degree: 2,
        pointwise_arity: 2,
    };
    let report = verify_ym(&set, cfg).map_err(|e| e.to_string())?;
    let symbols = set.carrier().dim();
    ensure(symbols == 12, || format!("carrier has {symbols} symbols"))?;
    let first = report.failures().next().cloned();
    match first {
        None => Ok(format!(
            "d = 4, {} checks on {symbols} basis symbols with monomials of degree <= 2",
            report.entries.len()
        )),
        Some(f) => Err(format!(
            "{}: {} {}",
            f.id,
            f.detail,
            f.witness.clone().unwrap_or_default()
        )),
    }
}

// 6

fn signatures(dim: usize) -> Vec<Vec<i8>> {
    let euclid = vec![1; dim];
    let mut mink = vec![-1; dim];
    mink[0] = 1;
    if dim == 1 {
        vec![euclid, vec![-1]]
    } else {
        vec![euclid, mink]
    }
}

fn zero_form_box(s: &StrictStructure, n: &MultiMap, max_degree: u32) -> Result<(), String> {
    let c = &s.carrier;
    let one = c.index_of("1").ok_or("no 0-form symbol")?;
    let metric = c.metric().ok_or("no metric")?.to_vec();
    for mono in Mono::all_up_to(c.vars(), max_degree) {
        let got = n
            .eval_word(&[c.basis(one, mono)])
            .map_err(|e| e.to_string())?;
        let mut want = Element::zero();
        for (mu, &eta) in metric.iter().enumerate() {
            let second = Mono::var(mu).mul(&Mono::var(mu));
            if let Some((a, rest)) = second.differentiate(&mono) {
                want.add_term(vec![c.basis(one, rest)], q(eta as i64 * a as i64));
            }
        }
        ensure(got == want, || {
            format!(
                "{}: [d, codifferential] differs from box on {}",
                s.name,
                mono.render(c.vars())
            )
        })?;
    }
    Ok(())
}

fn strict_suite() -> Outcome {
    let mut checked = Vec::new();
    let mut de_rham = Vec::new();
    for dim in 1..=3 {
        for sig in signatures(dim) {
            let s = build_de_rham(dim, &sig).map_err(|e| e.to_string())?;
            let cl = classify_strict(&s).map_err(|e| e.to_string())?;
            ensure(cl.is_cbv && !cl.is_bv, || {
                format!("{}: cbv={} bv={}", s.name, cl.is_cbv, cl.is_bv)
            })?;
            let n = s
                .obstruction()
                .map_err(|e| e.to_string())?
                .ok_or("no codifferential")?;
            let boxed = box_operator(&s.carrier).map_err(|e| e.to_string())?;
            ensure(n == boxed, || {
                format!("{}: [d, codifferential] is not box", s.name)
            })?;
            ensure(
                n.first_difference(&boxed, 3)
                    .map_err(|e| e.to_string())?
                    .is_none(),
                || format!("{}: pointwise box check failed", s.name),
            )?;
            zero_form_box(&s, &n, 3)?;
            checked.push(s.name.clone());
            de_rham.push(s);
        }
    }
    let pi = vec![vec![q(0), q(3)], vec![q(-3), q(0)]];
    let poisson = build_poisson(2, &pi).map_err(|e| e.to_string())?;
    let cl = classify_strict(&poisson).map_err(|e| e.to_string())?;
    ensure(cl.is_ebv && cl.is_bv, || {
        format!("{}: not exact BV", poisson.name)
    })?;

    let cbv = tensor_strict(&de_rham[2], &de_rham[1]).map_err(|e| e.to_string())?;
    let cl = classify_strict(&cbv).map_err(|e| e.to_string())?;
    ensure(cl.is_cbv && !cl.is_bv, || {
        format!("{}: cbv={} bv={}", cbv.name, cl.is_cbv, cl.is_bv)
    })?;
    let other =
        build_poisson(2, &[vec![q(0), q(-1)], vec![q(1), q(0)]]).map_err(|e| e.to_string())?;
    let bv = tensor_strict(&poisson, &other).map_err(|e| e.to_string())?;
    let cl = classify_strict(&bv).map_err(|e| e.to_string())?;
    ensure(cl.is_cbv && cl.is_bv, || {
        format!("{}: cbv={} bv={}", bv.name, cl.is_cbv, cl.is_bv)
    })?;
    Ok(format!(
        "{} de Rham instances cBV and not BV with box on 0-forms up to degree 3; Poisson R^2 exact BV; {} cBV; {} BV",
        checked.len(),
        cbv.name,
        bv.name
    ))
}

// 7

fn second_order_and_leibniz() -> Outcome {
    let mut candidates: Vec<(String, MultiMap, StrictStructure)> = Vec::new();
    let mut instances = Vec::new();
    for dim in 1..=3 {
        for sig in signatures(dim) {
            instances.push(build_de_rham(dim, &sig).map_err(|e| e.to_string())?);
        }
    }
    let pi = vec![vec![q(0), q(3)], vec![q(-3), q(0)]];
    instances.push(build_poisson(2, &pi).map_err(|e| e.to_string())?);
    let other =
        build_poisson(2, &[vec![q(0), q(-1)], vec![q(1), q(0)]]).map_err(|e| e.to_string())?;
    instances.push(tensor_strict(&instances[6], &other).map_err(|e| e.to_string())?);
    instances.push(tensor_strict(&instances[4], &instances[2]).map_err(|e| e.to_string())?);
    for s in &instances {
        for (label, op) in [("codifferential", &s.delta), ("contraction", &s.nabla)] {
            if let Some(op) = op {
                candidates.push((format!("{label} of {}", s.name), op.clone(), s.clone()));
            }
        }
        candidates.push((
            format!("box on {}", s.name),
            box_operator(&s.carrier).map_err(|e| e.to_string())?,
            s.clone(),
        ));
        candidates.push((format!("d of {}", s.name), s.d.clone(), s.clone()));
    }
    let ym = build_ym(4, None, CubicReading::default()).map_err(|e| e.to_string())?;
    let get = |t: u32, p: &[usize]| {
        ym.get(&cbv_core::homotopy::GeneratingKey::new(t, p.to_vec()).expect("key"))
    };
    let ym_strict = StrictStructure::new(
        "Yang-Mills d = 4",
        get(0, &[1]).map_err(|e| e.to_string())?,
        get(0, &[2]).map_err(|e| e.to_string())?,
        None,
        None,
    )
    .map_err(|e| e.to_string())?;
    candidates.push((
        "m^1_1 of Yang-Mills".into(),
        get(1, &[1]).map_err(|e| e.to_string())?,
        ym_strict.clone(),
    ));
    candidates.push((
        "box on Yang-Mills".into(),
        box_operator(&ym_strict.carrier).map_err(|e| e.to_string())?,
        ym_strict,
    ));

    let mut second_order = 0;
    let mut both_fail = Vec::new();
    for (name, op, s) in &candidates {
        let so = check_second_order(op, s)
            .map_err(|e| e.to_string())?
            .passed();
        let b = derived_bracket(op, &s.m).map_err(|e| e.to_string())?;
        let leibniz = leibniz_defect(&b, &s.m)
            .map_err(|e| e.to_string())?
            .is_zero();
        ensure(so == leibniz, || {
            format!("{name}: second order {so}, Leibniz {leibniz}")
        })?;
        if so {
            second_order += 1;
        } else {
            both_fail.push(name.clone());
        }
    }

    let s = build_de_rham(3, &[1, 1, 1]).map_err(|e| e.to_string())?;
    let cubic = constant_operator(&s.carrier, Mono::from_exponents(&[1, 1, 1]))
        .map_err(|e| e.to_string())?;
    let so = check_second_order(&cubic, &s)
        .map_err(|e| e.to_string())?
        .passed();
    let b = derived_bracket(&cubic, &s.m).map_err(|e| e.to_string())?;
    let leibniz = leibniz_defect(&b, &s.m)
        .map_err(|e| e.to_string())?
        .is_zero();
    ensure(!so && !leibniz, || {
        format!("third-order operator: second order {so}, Leibniz {leibniz}")
    })?;
    Ok(format!(
        "{} operators: {second_order} second order with Leibniz brackets, {} failing both ({}); the third-order operator fails both",
        candidates.len(),
        both_fail.len(),
        both_fail.join(", ")
    ))
}
