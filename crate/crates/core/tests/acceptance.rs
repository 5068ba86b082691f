//! Acceptance suite: one line per criterion, exact comparisons throughout.
//!
//! Runs as a plain binary (`harness = false`) so the report is printed on
//! every `cargo test`, not only on failure.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use qpartition::series::poch_infinite_inv;
use qpartition::summation::SumRules;
use qpartition::verify::TheoremParams;
use qpartition::{
    enumerate_partitions, k_block_conjugate, lemma1_forward, lemma1_inverse, verify_identity,
    verify_partition_theorem, Bipartition, BlockConjugationParams, ClassSpec, Enumerator,
    IdentityId, NestedSum, Partition, PartitionTheorem, SignedMonomial, SumVariant,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec())
}

fn partitions_of(spec: ClassSpec, m: u32) -> Vec<Partition> {
    spec.members(m, &Enumerator::default())
        .unwrap()
        .partitions()
        .unwrap()
        .to_vec()
}

fn bipartitions_of(spec: ClassSpec, m: u32) -> Vec<Bipartition> {
    spec.members(m, &Enumerator::default())
        .unwrap()
        .bipartitions()
        .unwrap()
        .to_vec()
}

fn same_set(got: &[Partition], want: &[&[u32]]) -> bool {
    let want: HashSet<_> = want.iter().map(|x| p(x)).collect();
    got.len() == want.len() && got.iter().all(|x| want.contains(x))
}

fn example_lists() -> Outcome {
    let b15: &[&[u32]] = &[
        &[3, 2, 2, 2, 2, 2, 2],
        &[3, 3, 3, 2, 2, 2],
        &[3, 3, 3, 3, 3],
        &[7, 2, 2, 2, 2],
        &[7, 3, 3, 2],
        &[8, 3, 2, 2],
        &[8, 7],
        &[12, 3],
        &[13, 2],
    ];
    let c15: &[&[u32]] = &[
        &[7, 5, 3],
        &[8, 5, 2],
        &[9, 4, 2],
        &[9, 6],
        &[10, 5],
        &[11, 4],
        &[12, 3],
        &[13, 2],
        &[15],
    ];
    let d15: &[&[u32]] = &[
        &[7, 5, 3],
        &[7, 6, 2],
        &[8, 4, 3],
        &[8, 7],
        &[10, 5],
        &[11, 4],
        &[12, 3],
        &[13, 2],
        &[15],
    ];
    let b10: &[&[u32]] = &[
        &[1; 10],
        &[4, 1, 1, 1, 1, 1, 1],
        &[4, 4, 1, 1],
        &[6, 1, 1, 1, 1],
        &[6, 4],
        &[9, 1],
    ];
    let c10: &[&[u32]] = &[&[5, 4, 1], &[6, 4], &[7, 3], &[8, 2], &[9, 1], &[10]];
    let d10: &[&[u32]] = &[&[6, 3, 1], &[6, 4], &[7, 3], &[8, 2], &[9, 1], &[10]];
    for (spec, m, want) in [
        (ClassSpec::Rr2B, 15, b15),
        (ClassSpec::Rr2C, 15, c15),
        (ClassSpec::Rr2D, 15, d15),
        (ClassSpec::Rr1B, 10, b10),
        (ClassSpec::Rr1C, 10, c10),
        (ClassSpec::Rr1D, 10, d10),
    ] {
        let got = partitions_of(spec, m);
        ensure(same_set(&got, want), || format!("{spec}({m}) = {got:?}"))?;
        let mut sorted = got.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        ensure(sorted == got, || {
            format!("{spec}({m}) not in descending order")
        })?;
    }
    for (spec, parts) in [
        (ClassSpec::Rr2D, &[8, 5, 2][..]),
        (ClassSpec::Rr2C, &[7, 6, 2]),
        (ClassSpec::Rr1D, &[5, 4, 1]),
        (ClassSpec::Rr1C, &[6, 3, 1]),
    ] {
        ensure(!spec.contains(&p(parts)), || format!("{parts:?} in {spec}"))?;
    }
    Ok("RR2 B/C/D at 15 (9 each), RR1 B/C/D at 10 (6 each), 4 exclusions".into())
}

fn worked_conjugation() -> Outcome {
    let params = BlockConjugationParams::new(4, 1, 5);
    let input = p(&[20, 18, 16, 16, 14, 8, 8, 6, 4, 2, 1, 1, 1, 1, 1]);
    let out = lemma1_forward(&input, params).map_err(|e| e.to_string())?;
    ensure(out == p(&[39, 31, 21, 19, 7]), || {
        format!("forward gave {out}")
    })?;
    ensure(out.weight() == 117 && input.weight() == 117, || {
        "weight".into()
    })?;
    let back = lemma1_inverse(&out, params).map_err(|e| e.to_string())?;
    ensure(back == input, || format!("inverse gave {back}"))?;
    Ok("{20,18,16,16,14,8,8,6,4,2,1^5} <-> {39,31,21,19,7}, weight 117".into())
}

fn lemma1_counts_and_bijection() -> Outcome {
    let en = Enumerator::default();
    let grid = PartitionTheorem::Lemma1.grid();
    let report = verify_partition_theorem(PartitionTheorem::Lemma1, Some(&grid), 60, &en)
        .map_err(|e| e.to_string())?;
    ensure(report.passed(), || report.to_string())?;
    let mut mapped = 0usize;
    for t in &grid {
        let TheoremParams {
            n: Some(n),
            r: Some(r),
            s: Some(s),
            k: Some(k),
        } = *t
        else {
            return Err(format!("incomplete grid point {t}"));
        };
        let params = BlockConjugationParams::new(k, r, n);
        for m in 0..=60 {
            let b: HashSet<_> = partitions_of(ClassSpec::Lemma1B { n, r, s, k }, m)
                .into_iter()
                .collect();
            let mut image = HashSet::new();
            for a in partitions_of(ClassSpec::Lemma1A { n, r, s, k }, m) {
                let out = lemma1_forward(&a, params).map_err(|e| e.to_string())?;
                ensure(image.insert(out), || format!("not injective at {t}, m={m}"))?;
            }
            ensure(image == b, || {
                format!("image differs from B-class at {t}, m={m}")
            })?;
            mapped += image.len();
        }
    }
    Ok(format!(
        "{} parameter tuples, m <= 60, {mapped} members mapped bijectively",
        grid.len()
    ))
}

fn summation_lemmas() -> Outcome {
    let order = 30;
    let mut checked = 0;
    let mut cases = Vec::new();
    for v in [SumVariant::L1, SumVariant::L2, SumVariant::L3] {
        for n in 0..=4 {
            for m in 1..=3 {
                for b in [0, 1, 2] {
                    cases.push(NestedSum::new(v, n, m, SignedMonomial::q_pow(b)));
                }
                cases.push(
                    NestedSum::new(SumVariant::L1, n, m, SignedMonomial::q_pow(-1)).with_base(2),
                );
            }
        }
    }
    for s in cases {
        let rhs = s.rhs(order).map_err(|e| e.to_string())?;
        let direct = s.eval(order).map_err(|e| e.to_string())?;
        let tele = s.telescoped(order).map_err(|e| e.to_string())?;
        ensure(direct == rhs && tele == rhs, || format!("{s:?}"))?;
        checked += 1;
    }
    let no_dedup = SumRules {
        dedup_adjacent: false,
        drop_leading_constant: true,
    };
    let l2 = NestedSum::new(SumVariant::L2, 2, 1, SignedMonomial::q_pow(1));
    let at2 = l2
        .with_rules(no_dedup)
        .eval(order)
        .and_then(|s| s.first_divergence(&l2.rhs(order)?, order))
        .map_err(|e| e.to_string())?;
    ensure(at2.is_some_and(|e| e <= 5), || {
        format!("L2 control: {at2:?}")
    })?;
    let keep_leading = SumRules {
        dedup_adjacent: true,
        drop_leading_constant: false,
    };
    let l3 = NestedSum::new(SumVariant::L3, 2, 1, SignedMonomial::q_pow(1));
    let at3 = l3
        .with_rules(keep_leading)
        .eval(order)
        .and_then(|s| s.first_divergence(&l3.rhs(order)?, order))
        .map_err(|e| e.to_string())?;
    ensure(at3.is_some_and(|e| e <= 5), || {
        format!("L3 control: {at3:?}")
    })?;
    Ok(format!(
        "{checked} cases equal three ways; controls diverge at q^{} (L2) and q^{} (L3, b=q)",
        at2.unwrap(),
        at3.unwrap()
    ))
}

fn grid_reports(tags: &[(&str, u32)]) -> Result<usize, String> {
    let mut n = 0;
    for &(tag, order) in tags {
        for id in IdentityId::grid(tag).map_err(|e| e.to_string())? {
            let report = verify_identity(&id, order).map_err(|e| e.to_string())?;
            ensure(report.passed(), || report.to_string())?;
            n += 1;
        }
    }
    Ok(n)
}

fn restricted_identities() -> Outcome {
    let n = grid_reports(&[("RSKEQ", 80), ("HHK", 60), ("E151AK", 60), ("SYMEQK", 60)])?;
    Ok(format!(
        "{n} parameter tuples (RSKEQ k <= 8 at order 80, others k <= 7 at 60)"
    ))
}

fn bivariate_binomial() -> Outcome {
    let n = grid_reports(&[("QBINOMIAL", 60)])?;
    Ok(format!("{n} values of a at (M, N) = (12, 60)"))
}

fn slater_identities() -> Outcome {
    let o = 60;
    let tags = [
        "S14", "S16", "S94", "S18", "S20", "S99", "S31", "S32", "S33",
    ];
    grid_reports(&tags.map(|t| (t, o)))?;
    let left = |id: IdentityId| id.left_side(o).map_err(|e| e.to_string());
    for triple in [
        [IdentityId::S14, IdentityId::S16, IdentityId::S94],
        [IdentityId::S18, IdentityId::S20, IdentityId::S99],
    ] {
        let first = left(triple[0])?;
        for id in &triple[1..] {
            ensure(left(*id)? == first, || format!("{id} left side differs"))?;
        }
    }
    Ok("9 identities at order 60; left sides equal within both triples".into())
}

fn partition_theorems() -> Outcome {
    let en = Enumerator::default();
    for (t, m) in [
        (PartitionTheorem::Rr2, 40),
        (PartitionTheorem::Rr1, 40),
        (PartitionTheorem::Rs33, 30),
        (PartitionTheorem::Rs31, 30),
        (PartitionTheorem::Rs32, 30),
    ] {
        let report = verify_partition_theorem(t, None, m, &en).map_err(|e| e.to_string())?;
        ensure(report.passed(), || report.to_string())?;
    }
    let gf = |spec: ClassSpec, o: u32| spec.generating_function(o, &en).map_err(|e| e.to_string());
    let left = |id: IdentityId, o: u32| id.left_side(o).map_err(|e| e.to_string());
    ensure(
        gf(ClassSpec::Rr2D, 40)? == left(IdentityId::S94, 40)?,
        || "RR2_D vs S94".into(),
    )?;
    ensure(
        gf(ClassSpec::Rr1D, 40)? == left(IdentityId::S99, 40)?,
        || "RR1_D vs S99".into(),
    )?;
    let s33 = left(IdentityId::S33, 30)?;
    ensure(gf(ClassSpec::Rs33B, 30)? == s33, || "RS33_B vs S33".into())?;
    ensure(gf(ClassSpec::Rs33C, 30)? == s33, || "RS33_C vs S33".into())?;
    Ok("RR1/RR2 four-way to m=40, RS three-way to m=30, four generating-function checks".into())
}

fn discrepancy_witnesses() -> Outcome {
    let bp = |a: &[u32], b: &[u32]| Bipartition::new(p(a), p(b));
    let cases = [
        (
            ClassSpec::Rs33B,
            ClassSpec::Rs33C,
            14,
            bp(&[8, 2], &[4]),
            bp(&[6, 2], &[6]),
        ),
        (
            ClassSpec::Rs31B,
            ClassSpec::Rs31C,
            19,
            bp(&[10, 4], &[5]),
            bp(&[8, 4], &[7]),
        ),
        (
            ClassSpec::Rs32B,
            ClassSpec::Rs32C,
            18,
            bp(&[10, 4], &[4]),
            bp(&[8, 4], &[6]),
        ),
    ];
    for (b, c, first, c_only, b_only) in cases {
        for m in 0..first {
            ensure(bipartitions_of(b, m) == bipartitions_of(c, m), || {
                format!("{b} and {c} differ already at m={m}")
            })?;
        }
        let (bm, cm) = (bipartitions_of(b, first), bipartitions_of(c, first));
        ensure(cm.contains(&c_only) && !bm.contains(&c_only), || {
            format!("{c_only} is not C-only at {first}")
        })?;
        ensure(bm.contains(&b_only) && !cm.contains(&b_only), || {
            format!("{b_only} is not B-only at {first}")
        })?;
    }
    // ({8, 4}, {4}) weighs 16, so it cannot witness the difference at 14
    let heavy = bp(&[8, 4], &[4]);
    ensure(heavy.weight() == 16, || "({8, 4}, {4}) weight".into())?;
    for m in [14, 16] {
        ensure(
            !bipartitions_of(ClassSpec::Rs33C, m).contains(&heavy)
                && !bipartitions_of(ClassSpec::Rs33B, m).contains(&heavy),
            || format!("({{8, 4}}, {{4}}) unexpectedly a member at {m}"),
        )?;
    }
    Ok(
        "first differences at 14/19/18; RS33 C-only witness is ({8, 2}, {4}) \
        (({8, 4}, {4}) has weight 16 and is in neither class)"
            .into(),
    )
}

fn oracle_coherence() -> Outcome {
    let gf = poch_infinite_inv(SignedMonomial::q_pow(1), 1, 41).map_err(|e| e.to_string())?;
    for m in 0..=40 {
        let count = enumerate_partitions(m).map_err(|e| e.to_string())?.len();
        ensure(gf.coeff(m) == BigInt::from(count), || format!("p({m})"))?;
    }
    for m in 0..=25 {
        for part in enumerate_partitions(m).map_err(|e| e.to_string())? {
            let max = part.largest().unwrap_or(0);
            let classical = p(&(1..=max)
                .map(|i| part.parts().iter().filter(|&&x| x >= i).count() as u32)
                .collect::<Vec<_>>());
            ensure(k_block_conjugate(&part, 1) == classical, || {
                format!("{part}")
            })?;
        }
    }
    Ok("p(m) for m <= 40 and k=1 conjugation for m <= 25".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("example partition lists", example_lists),
        ("worked conjugation example", worked_conjugation),
        ("column bijection counts", lemma1_counts_and_bijection),
        ("nested summation formulas", summation_lemmas),
        ("restricted identity families", restricted_identities),
        ("bivariate q-Binomial theorem", bivariate_binomial),
        (
            "Rogers-Ramanujan and Rogers-Selberg identities",
            slater_identities,
        ),
        ("partition theorems", partition_theorems),
        ("bipartition discrepancy witnesses", discrepancy_witnesses),
        ("oracle coherence", oracle_coherence),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("criterion {:>2} PASS  {name}: {note} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
