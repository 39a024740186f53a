//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits nonzero if a criterion fails that is not listed as a known
//! failure (or if a known failure starts passing).
//!
//! Reference values come from the oracles in `common`, which recompute
//! concepts and generalized columns from the definitions on `u64` masks.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{mask_of, random_context, random_partition, random_subset, Masks};
use genconcept::analysis::{
    build_phi, build_psi, classify_group, classify_scheme, projection_classes, verify_exists_distributive,
    verify_forall_theorem, ClassKind, TheoremOutcome,
};
use genconcept::context::{read_cxt, write_cxt};
use genconcept::generalize::{
    generalize_alpha, generalize_attributes, generalize_exists, generalize_forall, hypercontext, roll_up, Axis,
    GroupingScheme, HyperRelationSpec, Mode, SchemeDocument, Taxonomy,
};
use genconcept::lattice::{count_concepts, enumerate_concepts, is_distributive, ConceptLattice};
use genconcept::rules::is_valid_implication;
use genconcept::synth::{median_ratio_by_fanout, sweep, SweepGrid};
use genconcept::{samples, BitSet, FormalContext, Fraction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scheme(ctx: &FormalContext, json: &str) -> Result<GroupingScheme, String> {
    lib(lib(SchemeDocument::from_json(json))?.resolve(ctx))
}

fn ext_mask(set: &BitSet) -> u64 {
    mask_of(set.iter())
}

/// Trailing columns of a golden cross-table that lists the original
/// attributes first.
fn tail(wide: &FormalContext, skip: usize) -> FormalContext {
    let keep = wide.attribute_set(skip..wide.n_attributes()).unwrap();
    wide.project_attributes(&keep).unwrap()
}

fn partition_scheme(n: usize, mode: Mode, blocks: &[Vec<usize>]) -> GroupingScheme {
    let mut s = GroupingScheme::new(Axis::Attributes, mode, n, false);
    for (i, b) in blocks.iter().enumerate() {
        s.push(&format!("s{i}"), BitSet::from_indices(n, b.iter().copied()).unwrap(), None).unwrap();
    }
    s
}

fn golden_counterexample() -> Check {
    let small = samples::small();
    let before = Masks::of(&small).count();
    ensure(before == 7 && lib(count_concepts(&small))? == 7, || format!("smallcxt has {before} concepts"))?;
    let merge = scheme(&small, samples::MERGE_M1_M2_JSON)?;
    let generalized = lib(generalize_attributes(&small, &merge))?;
    ensure(generalized.rows() == samples::small_generalized().rows(), || "merge differs from K_gen".into())?;
    let after = Masks::of(&generalized).count();
    ensure(after == 8 && lib(count_concepts(&generalized))? == 8, || format!("K_gen has {after} concepts"))?;
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = genconcept::cli::run_with(
        ["genconcept", "analyze", "--scheme", &data("merge-m1-m2.json"), &data("small.cxt")],
        &mut out,
        &mut err,
    );
    let text = String::from_utf8_lossy(&out);
    ensure(code == 0 && text.contains("delta: +1"), || format!("analyze printed {text:?}"))?;
    Ok("7 -> 8, analyze delta +1".into())
}

fn golden_tables() -> Check {
    let retail = samples::retail();
    let cases: [(&str, &str, FormalContext); 3] = [
        ("exists", samples::EXISTS_ABCD_JSON, samples::retail_exists()),
        ("forall", samples::FORALL_STUV_JSON, samples::retail_forall()),
        ("alpha", samples::ALPHA_EFH_JSON, samples::retail_alpha()),
    ];
    for (label, json, golden) in cases {
        let s = scheme(&retail, json)?;
        let out = lib(match label {
            "exists" => generalize_exists(&retail, &s),
            "forall" => generalize_forall(&retail, &s),
            _ => generalize_alpha(&retail, &s),
        })?;
        let expected = tail(&golden, retail.n_attributes());
        ensure(out.attribute_names() == expected.attribute_names(), || format!("{label}: names {:?}", out.attribute_names()))?;
        ensure(out.rows() == expected.rows(), || format!("{label}: columns differ from the golden table"))?;
    }
    Ok("K_exists, K_forall, K_alpha bit-exact".into())
}

fn named_concepts() -> Check {
    let retail = samples::retail();
    let lat = lib(enumerate_concepts(&retail))?;
    let oracle = Masks::of(&retail).brute_concepts();
    let mut found = Vec::new();
    for (objs, attrs) in [(["5", "6"], vec!["a", "c", "d"]), (["6", "8"], vec!["b", "c", "d"])] {
        let ext = lib(retail.objects_named(&objs))?;
        let int = lib(retail.attributes_named(&attrs))?;
        ensure(oracle.contains(&(ext_mask(&ext), ext_mask(&int))), || format!("oracle lacks {objs:?}"))?;
        let id = lat.find_extent(&ext).ok_or_else(|| format!("lattice lacks extent {objs:?}"))?;
        ensure(lat.concept(id).intent == int, || format!("intent of {objs:?} differs"))?;
        found.push(id);
    }
    let g5 = retail.object_index("5").unwrap();
    ensure(lat.gamma(g5) == found[0], || "gamma 5 is not ({5,6},{a,c,d})".into())?;
    Ok("gamma5 = ({5,6},{a,c,d}); ({6,8},{b,c,d}) present".into())
}

fn lattice_masks(lat: &ConceptLattice) -> BTreeSet<(u64, u64)> {
    lat.concepts().iter().map(|c| (ext_mask(&c.extent), ext_mask(&c.intent))).collect()
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ac1e);
    let mut total = 0;
    for i in 0..200 {
        let ctx = random_context(&mut rng, 30, 12);
        let lat = lib(enumerate_concepts(&ctx))?;
        let expected = Masks::of(&ctx).brute_concepts();
        ensure(lat.len() == expected.len() && lattice_masks(&lat) == expected, || {
            format!("context {i} ({}x{}): {} vs {}", ctx.n_objects(), ctx.n_attributes(), lat.len(), expected.len())
        })?;
        total += expected.len();
    }
    Ok(format!("200 contexts, {total} concepts set-equal"))
}

fn forall_theorem_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf0a11);
    let mut violations = Vec::new();
    for i in 0..100 {
        let ctx = random_context(&mut rng, 15, 8);
        let m = Masks::of(&ctx);
        let blocks = random_partition(&mut rng, ctx.n_attributes());
        let s = partition_scheme(ctx.n_attributes(), Mode::ForAll, &blocks);
        let generalized = lib(generalize_attributes(&ctx, &s))?;
        let gm = Masks::of(&generalized);
        for (j, b) in blocks.iter().enumerate() {
            let col = b.iter().fold(common::full(m.n_g), |acc, &x| acc & m.column(x));
            if gm.column(j) != col || !m.is_extent(col) {
                violations.push(format!("pair {i} group {j}: column not an original extent"));
            }
        }
        let before = m.count();
        let after = gm.count();
        let apposed = Masks::of(&lib(ctx.apposition(&generalized))?).count();
        if !(after <= apposed && apposed == before) {
            violations.push(format!("pair {i}: {after} <= {apposed} = {before} fails"));
        }
        match verify_forall_theorem(&ctx, &s) {
            Ok(r) if r.report.size_before == before && r.report.size_after == after => {}
            other => violations.push(format!("pair {i}: library check {other:?}")),
        }
    }
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok("100 pairs, zero violations".into())
}

fn exists_distributive_theorem() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd157);
    let mut contexts: Vec<FormalContext> = (3..=5).map(samples::contranominal).collect();
    contexts.extend((3..=5).map(samples::chain));
    let mut violations = Vec::new();
    for ctx in &contexts {
        ensure(lib(enumerate_concepts(ctx)).map(|l| is_distributive(&l))?, || format!("{} is not distributive", ctx.name()))?;
        let m = Masks::of(ctx);
        let before = m.count();
        for i in 0..50 {
            let blocks = random_partition(&mut rng, ctx.n_attributes());
            let s = partition_scheme(ctx.n_attributes(), Mode::Exists, &blocks);
            let generalized = lib(generalize_attributes(ctx, &s))?;
            let after = Masks::of(&generalized).count();
            if after > before {
                violations.push(format!("{} grouping {i}: {before} -> {after}", ctx.name()));
            }
            for b in &blocks {
                let col = b.iter().fold(0, |acc, &x| acc | m.column(x));
                if !m.is_extent(col) {
                    violations.push(format!("{} grouping {i}: union of {b:?} is not an extent", ctx.name()));
                }
            }
            match verify_exists_distributive(ctx, &s) {
                Ok(TheoremOutcome::Holds(r)) if r.size_after == after => {}
                other => violations.push(format!("{} grouping {i}: library check {other:?}", ctx.name())),
            }
        }
    }
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok("6 contexts x 50 groupings, zero violations".into())
}

/// Existential pairs available at desk scale. The order argument behind
/// phi <= psi needs g I m to imply g J m_s, which holds for existential
/// groupings only.
fn desk_exists_pairs() -> Result<Vec<(String, FormalContext, GroupingScheme)>, String> {
    let small = samples::small();
    let retail = samples::retail();
    let airline = samples::airline();
    let tax = lib(Taxonomy::from_json(samples::AIRLINE_TAXONOMY_JSON))?;
    let mut pairs = vec![
        ("smallcxt -> K_gen".to_string(), small.clone(), scheme(&small, samples::MERGE_M1_M2_JSON)?),
        ("retail -> K_exists".to_string(), retail.clone(), scheme(&retail, samples::EXISTS_ABCD_JSON)?),
    ];
    for depth in 0..=2 {
        let cut = tax.cut_at_depth(depth);
        pairs.push((format!("airline roll-up depth {depth}"), airline.clone(), lib(roll_up(&airline, &tax, &cut))?));
    }
    Ok(pairs)
}

fn phi_psi_suite() -> Check {
    let mut small_onto = (true, true);
    let pairs = desk_exists_pairs()?;
    for (label, ctx, s) in &pairs {
        let generalized = lib(generalize_attributes(ctx, s))?;
        let src = lib(enumerate_concepts(ctx))?;
        let dst = lib(enumerate_concepts(&generalized))?;
        let phi = lib(build_phi(&src, &dst, s))?;
        let psi = lib(build_psi(&src, &dst, s))?;
        let gm = Masks::of(&generalized);
        let groups = s.resolved(ctx.attribute_names());
        let mut phi_ext = Vec::new();
        let mut psi_ext = Vec::new();
        for (i, c) in src.concepts().iter().enumerate() {
            let a = ext_mask(&c.extent);
            let owners = mask_of((0..groups.len()).filter(|&j| !groups[j].members.is_disjoint(&c.intent)));
            let (p, q) = (gm.extent_of(gm.intent_of(a)), gm.extent_of(owners));
            ensure(ext_mask(&dst.concept(phi.apply(i)).extent) == p, || format!("{label}: phi({i}) differs from oracle"))?;
            ensure(ext_mask(&dst.concept(psi.apply(i)).extent) == q, || format!("{label}: psi({i}) differs from oracle"))?;
            phi_ext.push(p);
            psi_ext.push(q);
        }
        let sub = |x: u64, y: u64| x & !y == 0;
        for i in 0..src.len() {
            ensure(sub(phi_ext[i], psi_ext[i]), || format!("{label}: phi({i}) is not below psi({i})"))?;
            for j in 0..src.len() {
                let below = sub(ext_mask(&src.concept(i).extent), ext_mask(&src.concept(j).extent));
                ensure(!below || sub(phi_ext[i], phi_ext[j]), || format!("{label}: phi not monotone at {i} <= {j}"))?;
                ensure(!below || sub(psi_ext[i], psi_ext[j]), || format!("{label}: psi not monotone at {i} <= {j}"))?;
            }
        }
        if label.starts_with("smallcxt") {
            let hit = |v: &[u64]| v.iter().collect::<BTreeSet<_>>().len() == gm.count();
            small_onto = (hit(&phi_ext), hit(&psi_ext));
        }
    }
    ensure(small_onto == (false, false), || format!("smallcxt surjectivity {small_onto:?}"))?;
    Ok(format!("{} existential pairs; smallcxt -> K_gen: neither map onto", pairs.len()))
}

fn projection_class_counts() -> Check {
    let retail = samples::retail();
    let mut counts = Vec::new();
    for (label, json) in [("forall", samples::FORALL_STUV_JSON), ("exists", samples::EXISTS_ABCD_JSON), ("alpha", samples::ALPHA_EFH_JSON)] {
        let generalized = lib(generalize_attributes(&retail, &scheme(&retail, json)?))?;
        let apposed = lib(retail.apposition(&generalized))?;
        let s_mask = mask_of(retail.n_attributes()..apposed.n_attributes());
        let oracle_classes: BTreeSet<u64> = Masks::of(&apposed).brute_concepts().into_iter().map(|(_, b)| b & s_mask).collect();
        let expected = Masks::of(&generalized).count();
        let lat = lib(enumerate_concepts(&apposed))?;
        let s = lib(apposed.attribute_set(retail.n_attributes()..apposed.n_attributes()))?;
        let classes = lib(projection_classes(&lat, &s))?.len();
        ensure(classes == expected && oracle_classes.len() == expected, || {
            format!("{label}: {classes} classes, oracle {}, |B(G,S,J)| = {expected}", oracle_classes.len())
        })?;
        counts.push(format!("{label} {expected}"));
    }
    Ok(counts.join(", "))
}

fn classification() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1a5);
    for (mode, allowed) in [
        (Mode::Exists, [ClassKind::Generalization, ClassKind::Equivalent]),
        (Mode::ForAll, [ClassKind::Specialization, ClassKind::Equivalent]),
    ] {
        for i in 0..100 {
            let ctx = random_context(&mut rng, 12, 8);
            let m = Masks::of(&ctx);
            let members = random_subset(&mut rng, ctx.n_attributes());
            let set = BitSet::from_indices(ctx.n_attributes(), members.iter().copied()).unwrap();
            let c = lib(classify_group(&ctx, "X", &set, mode, None))?;
            let col = match mode {
                Mode::Exists => members.iter().fold(0, |acc, &x| acc | m.column(x)),
                _ => members.iter().fold(common::full(m.n_g), |acc, &x| acc & m.column(x)),
            };
            let equivalent = members.iter().all(|&x| m.column(x) == col);
            let expected = if equivalent { ClassKind::Equivalent } else { allowed[0] };
            ensure(allowed.contains(&c.kind) && c.kind == expected, || format!("{mode} group {i}: {:?}", c.kind))?;
        }
    }
    let retail = samples::retail();
    let classes = lib(classify_scheme(&retail, &scheme(&retail, samples::ALPHA_EFH_JSON)?))?;
    let e = classes.iter().find(|c| c.group == "E").ok_or("no group E")?;
    let b = e.witnesses.iter().find(|w| w.member == "b").ok_or("no witness for member b")?;
    ensure(e.kind == ClassKind::Approximation && b.member_only == ["4"] && b.group_only == ["5"], || {
        format!("E: {:?}, b witnesses {:?} / {:?}", e.kind, b.member_only, b.group_only)
    })?;
    Ok("200 random groups; E at 60% is an approximation, 4 in b but not E, 5 in E but not b".into())
}

fn rule_spot_checks() -> Check {
    let retail = samples::retail();
    for (label, json, golden, premise, conclusion) in [
        ("K_exists", samples::EXISTS_ABCD_JSON, samples::retail_exists(), "D", "A"),
        ("K_alpha", samples::ALPHA_EFH_JSON, samples::retail_alpha(), "H", "F"),
    ] {
        let golden_tail = tail(&golden, retail.n_attributes());
        let m = Masks::of(&golden_tail);
        let (p, c) = (golden_tail.attribute_index(premise).unwrap(), golden_tail.attribute_index(conclusion).unwrap());
        let (pc, cc) = (m.column(p), m.column(c));
        ensure(pc != 0 && pc & !cc == 0, || format!("{label}: {premise} -> {conclusion} fails on the golden table"))?;
        let generalized = lib(generalize_attributes(&retail, &scheme(&retail, json)?))?;
        let y = lib(generalized.attributes_named(&[premise]))?;
        let z = lib(generalized.attributes_named(&[conclusion]))?;
        ensure(lib(is_valid_implication(&generalized, &y, &z))?, || format!("{label}: library rejects the rule"))?;
    }
    Ok("{D}->{A} in K_exists, {H}->{F} in K_alpha".into())
}

fn fanout_sweep() -> Check {
    let grid = SweepGrid::single(50, 25, 0.3, &[5, 10, 20], Mode::Exists, 20);
    let records = lib(sweep(&grid))?;
    ensure(records.len() == 60 && records.iter().all(|r| !r.censored), || "censored or missing records".into())?;
    let medians: Vec<f64> = median_ratio_by_fanout(&records).iter().map(|p| p.median_ratio).collect();
    ensure(medians.windows(2).all(|w| w[0] <= w[1]), || format!("medians {medians:?} not monotone"))?;
    let blowups = lib(sweep(&SweepGrid::single(50, 25, 0.3, &[2], Mode::Exists, 100)))?
        .iter()
        .filter(|r| r.ratio().is_some_and(|x| x < 1.0))
        .count();
    ensure(blowups >= 1, || "no fanout-2 record with ratio < 1".into())?;
    Ok(format!("medians {medians:.2?} over fanout 5/10/20; {blowups}/100 fanout-2 records grow"))
}

/// Direct evaluation of cases 1 to 6 for object group `a` and attribute
/// mask `b`.
fn quantifier_case(case: u8, rows: &[u64], a: &[usize], b: u64) -> bool {
    match case {
        1 => a.iter().any(|&g| rows[g] & b != 0),
        2 => a.iter().all(|&g| rows[g] & b == b),
        3 => a.iter().all(|&g| rows[g] & b != 0),
        4 => a.iter().fold(u64::MAX, |acc, &g| acc & rows[g]) & b != 0,
        5 => a.iter().fold(0, |acc, &g| acc | rows[g]) & b == b,
        6 => a.iter().any(|&g| rows[g] & b == b),
        _ => unreachable!(),
    }
}

fn hyper_relation(ctx: &FormalContext, objects: &[Vec<usize>], attributes: &[Vec<usize>], spec: &HyperRelationSpec) -> Result<Vec<Vec<bool>>, String> {
    let mut os = GroupingScheme::new(Axis::Objects, Mode::Exists, ctx.n_objects(), false);
    for (i, g) in objects.iter().enumerate() {
        lib(os.push(&format!("A{i}"), BitSet::from_indices(ctx.n_objects(), g.iter().copied()).unwrap(), None))?;
    }
    let ms = partition_scheme(ctx.n_attributes(), Mode::Exists, attributes);
    let h = lib(hypercontext(ctx, &os, &ms, spec))?;
    Ok((0..h.n_objects()).map(|i| (0..h.n_attributes()).map(|j| h.incidence(i, j)).collect()).collect())
}

/// The capture claims as stated: case 7 at its four corner settings gives
/// cases 1, 2, 3, 5 and case 8 gives 1, 2, 4, 6.
///
/// Evaluating the definitions shows the low-alpha, full-beta corner swaps
/// the last pair. Case 7 with alpha = 1/|G| and beta = 1 asks for one object
/// holding every attribute of the group, which is case 6; case 8 with the
/// same thresholds asks for every attribute to be held by some object,
/// which is case 5. The stated claim is therefore checked as written and
/// fails on those two corners; the other six corners and the witness hold.
fn hypercontext_capture() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4e9e);
    let claims: [(u8, u8, bool, bool); 8] = [
        // (relation case, captured case, alpha = 1, beta = 1)
        (7, 1, false, false),
        (7, 2, true, true),
        (7, 3, true, false),
        (7, 5, false, true),
        (8, 1, false, false),
        (8, 2, true, true),
        (8, 4, true, false),
        (8, 6, false, true),
    ];
    let mut violations = [0usize; 8];
    let mut swapped = [0usize; 2];
    for _ in 0..50 {
        let ctx = random_context(&mut rng, 10, 8);
        let rows = Masks::of(&ctx).rows;
        let og = random_partition(&mut rng, ctx.n_objects());
        let ag = random_partition(&mut rng, ctx.n_attributes());
        let low_a = Fraction::new(1, ctx.n_objects() as u64);
        let low_b = Fraction::new(1, ctx.n_attributes() as u64);
        for (k, &(case, target, full_a, full_b)) in claims.iter().enumerate() {
            let alpha = if full_a { Fraction::from_integer(1) } else { low_a };
            let beta = if full_b { Fraction::from_integer(1) } else { low_b };
            let got = hyper_relation(&ctx, &og, &ag, &HyperRelationSpec::thresholds(case, alpha, beta))?;
            let expect = |c: u8| -> Vec<Vec<bool>> {
                og.iter().map(|a| ag.iter().map(|b| quantifier_case(c, &rows, a, mask_of(b.iter().copied()))).collect()).collect()
            };
            if got != expect(target) {
                violations[k] += 1;
                let other = if target == 5 { 6 } else { 5 };
                if (target == 5 || target == 6) && got == expect(other) {
                    swapped[(case - 7) as usize] += 1;
                }
            }
        }
    }

    // witness: case 4 differs between two contexts that every case-7
    // setting on a 6x6 threshold grid treats identically
    let x = lib(FormalContext::from_table(&["g0", "g1"], &["m0", "m1"], &["X.", "X."]))?;
    let y = lib(FormalContext::from_table(&["g0", "g1"], &["m0", "m1"], &["X.", ".X"]))?;
    let group = [vec![0, 1]];
    let case4 = |c: &FormalContext| quantifier_case(4, &Masks::of(c).rows, &[0, 1], 0b11);
    let mut witness_ok = case4(&x) && !case4(&y);
    for p in 1..=6 {
        for q in 1..=6 {
            let spec = HyperRelationSpec::thresholds(7, Fraction::new(p, 6), Fraction::new(q, 6));
            witness_ok &= hyper_relation(&x, &group, &group, &spec)? == hyper_relation(&y, &group, &group, &spec)?;
        }
    }

    let failed: Vec<String> = claims
        .iter()
        .zip(violations)
        .filter(|(_, v)| *v > 0)
        .map(|((case, target, ..), v)| format!("case {case} -> case {target}: {v}/50 contexts differ"))
        .collect();
    let summary = format!(
        "witness {}; low-alpha/full-beta corner matches case 6 under case 7 in {}/50 and case 5 under case 8 in {}/50",
        if witness_ok { "holds" } else { "fails" },
        50 - (violations[3] - swapped[0]),
        50 - (violations[7] - swapped[1]),
    );
    ensure(failed.is_empty() && witness_ok, || format!("{}; {summary}", failed.join("; ")))?;
    Ok(summary)
}

fn wizard_end_to_end() -> Check {
    use axum::body::Body;
    use axum::http::{Request, StatusCode};
    use genconcept::service::{router, ServiceConfig, SessionStore};
    use http_body_util::BodyExt;
    use tower::ServiceExt;

    let runtime = lib(tokio::runtime::Builder::new_current_thread().build())?;
    runtime.block_on(async {
        let app = router(std::sync::Arc::new(lib(SessionStore::open(ServiceConfig::default()))?));
        let call = |method: &str, uri: String, body: Option<serde_json::Value>| {
            let app = app.clone();
            let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
            let req = req.body(body.map(|b| Body::from(b.to_string())).unwrap_or_default()).unwrap();
            async move {
                let resp = app.oneshot(req).await.unwrap();
                let status = resp.status();
                let bytes = resp.into_body().collect().await.unwrap().to_bytes();
                (status, String::from_utf8(bytes.to_vec()).unwrap())
            }
        };
        let upload = serde_json::json!({
            "format": "cxt", "payload": samples::SMALL_CXT, "minsupp": "3/5", "mode": "exists", "name": "K_gen"
        });
        let (status, text) = call("POST", "/sessions".into(), Some(upload)).await;
        ensure(status == StatusCode::OK, || format!("upload: {status} {text}"))?;
        let st: serde_json::Value = lib(serde_json::from_str(&text))?;
        let id = st["id"].as_str().unwrap_or_default().to_string();
        let fp = st["proposals"]
            .as_array()
            .and_then(|ps| ps.iter().find(|p| p["members"] == serde_json::json!(["m1", "m2"])))
            .and_then(|p| p["fingerprint"].as_str())
            .ok_or("no {m1,m2} proposal")?
            .to_string();
        let (status, text) = call("POST", format!("/sessions/{id}/proposals/{fp}/accept?name=m12"), None).await;
        ensure(status == StatusCode::OK, || format!("accept: {status} {text}"))?;
        let st: serde_json::Value = lib(serde_json::from_str(&text))?;
        ensure(st["size_before"] == 7 && st["size_current"] == 8 && st["increased"] == true, || {
            format!("sizes {} -> {}", st["size_before"], st["size_current"])
        })?;
        let (status, exported) = call("GET", format!("/sessions/{id}/export?format=cxt"), None).await;
        ensure(status == StatusCode::OK && exported == samples::SMALL_GENERALIZED_CXT, || format!("export:\n{exported}"))?;
        ensure(lib(read_cxt(&exported))? == samples::small_generalized(), || "parsed export differs".into())?;
        ensure(write_cxt(&samples::small_generalized()) == exported, || "round trip".into())?;
        Ok("upload, accept {m1,m2}, 7 -> 8 flagged, export equals K_gen".to_string())
    })
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    /// Known not to hold as stated; a pass here is reported as a surprise.
    known_failure: bool,
    run: fn() -> Check,
}

fn main() {
    let s = Duration::from_secs;
    let criteria = [
        Criterion { name: "[PRIMARY] golden counterexample", budget: s(1), known_failure: false, run: golden_counterexample },
        Criterion { name: "[PRIMARY] golden tables", budget: s(1), known_failure: false, run: golden_tables },
        Criterion { name: "[PRIMARY] named concepts", budget: s(5), known_failure: false, run: named_concepts },
        Criterion { name: "[PRIMARY] oracle equivalence", budget: s(60), known_failure: false, run: oracle_equivalence },
        Criterion { name: "[PRIMARY] forall theorem suite", budget: s(60), known_failure: false, run: forall_theorem_suite },
        Criterion { name: "[PRIMARY] exists distributive theorem", budget: s(60), known_failure: false, run: exists_distributive_theorem },
        Criterion { name: "[PRIMARY] phi/psi suite", budget: s(60), known_failure: false, run: phi_psi_suite },
        Criterion { name: "[PRIMARY] projection classes", budget: s(60), known_failure: false, run: projection_class_counts },
        Criterion { name: "[PRIMARY] classification", budget: s(60), known_failure: false, run: classification },
        Criterion { name: "[PRIMARY] rule spot checks", budget: s(5), known_failure: false, run: rule_spot_checks },
        Criterion { name: "[PRIMARY] fanout sweep", budget: s(600), known_failure: false, run: fanout_sweep },
        Criterion { name: "[PRIMARY] hypercontext capture", budget: s(60), known_failure: true, run: hypercontext_capture },
        Criterion { name: "[SECONDARY] wizard end-to-end", budget: s(10), known_failure: false, run: wizard_end_to_end },
    ];
    let mut unexpected = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(d) if elapsed > c.budget => Err(format!("{d}; took {elapsed:.2?}, budget {:?}", c.budget)),
            r => r,
        };
        match (&result, c.known_failure) {
            (Ok(d), false) => println!("PASS {}: {d} ({elapsed:.2?})", c.name),
            (Err(e), true) => println!("FAIL {}: {e} ({elapsed:.2?}) [known failure]", c.name),
            (Ok(d), true) => {
                unexpected += 1;
                println!("PASS {}: {d} ({elapsed:.2?}) [listed as a known failure]", c.name)
            }
            (Err(e), false) => {
                unexpected += 1;
                println!("FAIL {}: {e} ({elapsed:.2?})", c.name)
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria did not match their expected outcome");
        std::process::exit(1);
    }
}
