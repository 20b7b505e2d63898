//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p rhcob --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_integer::Integer as _;
use num_traits::Zero;
use rayon::prelude::*;

use rhcob::dinv::{d_lens, d_lens_closed, d_neg_lens_recursive, d_spin, d_sum_all, d_surgery, d_table};
use rhcob::lattice::{
    all_embeddings, brute_force_embeddings, find_embedding, i_value, lattice_member, DiagonalEmbedding, EmbeddingOutcome, GramLattice, SearchBudget,
};
use rhcob::numtheory::{cf_eval, dedekind_rademacher_with, dedekind_sum_with, hj_cf, Sawtooth};
use rhcob::obstruct::{
    classify_order, d_spin_plumbing, gj_bound, greene_jabuka_count, l_functional, l_image, mu_bar,
    obstruct_max_min, table_rows, Caps, ObstructionId, OrderVerdict, Verdict, Witness,
};
use rhcob::report::table_csv;
use rhcob::seifert::{Family, Lens, SphericalName};
use rhcob::surgery::{extendable_spinc, surgery_of_spherical, SurgeryDescription, TorusKnot};
use rhcob::{Integer, Rational};

type Outcome = Result<(), String>;

fn z(v: i64) -> Integer {
    Integer::from(v)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(z(n), z(d))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    let t = Instant::now();
    let v = f();
    let dt = t.elapsed();
    ensure(dt < limit, || format!("{what} took {dt:?}, limit {limit:?}"))?;
    Ok(v)
}

fn catalog(f: Family, b: i64, k: i64) -> SphericalName {
    SphericalName::catalog(f, b, k)
}

fn family_of(c: char) -> Family {
    match c {
        'T' => Family::T,
        'O' => Family::O,
        'I' => Family::I,
        _ => unreachable!(),
    }
}

fn c1() -> Outcome {
    for (p, qq, i, want) in [(1849, 309, 240, 6), (2809, 469, 340, 6), (529, 89, 90, 4)] {
        let d = timed(Duration::from_secs(1), "d(L)", || d_lens(&z(p), &z(qq), &z(i)))?.map_err(err)?;
        ensure(d == q(want, 1), || format!("d(L({p},{qq}),{i}) = {d}, want {want}"))?;
        let closed = d_lens_closed(&z(p), &z(qq), &z(i)).map_err(err)?;
        ensure(closed == d, || format!("closed form gives {closed} at ({p},{qq},{i})"))?;
    }
    Ok(())
}

fn closed_with(p: i64, qq: i64, i: i64, conv: Sawtooth) -> Rational {
    let s_i = dedekind_rademacher_with(&z(qq), &z(p), &z(i), conv).unwrap();
    let s = dedekind_sum_with(&z(qq), &z(p), conv).unwrap();
    s_i * z(2) + s - q(1, 2 * p)
}

fn c2() -> Outcome {
    let pairs: Vec<(i64, i64)> = (2..=200i64)
        .flat_map(|p| (1..p).filter(move |&qq| qq.gcd(&p) == 1).map(move |qq| (p, qq)))
        .collect();
    let evals: usize = pairs.iter().map(|&(p, _)| p as usize).sum();
    let bad: Vec<String> = pairs
        .par_iter()
        .flat_map_iter(|&(p, qq)| {
            (0..p).filter_map(move |i| {
                let a = d_lens_closed(&z(p), &z(qq), &z(i)).ok()?;
                let b = -d_neg_lens_recursive(&z(p), &z(qq), &z(i)).ok()?;
                (a != b).then(|| format!("({p},{qq},{i}): {a} vs {b}"))
            })
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} mismatches, first {}", bad.len(), bad[0]))?;
    let classical_fails = pairs.iter().take(200).any(|&(p, qq)| {
        (0..p).any(|i| closed_with(p, qq, i, Sawtooth::Classical) != closed_with(p, qq, i, Sawtooth::Shifted))
    });
    ensure(classical_fails, || "classical sawtooth is not ruled out".into())?;
    println!("      {evals} labels over {} pairs; classical sawtooth disagrees", pairs.len());
    Ok(())
}

/// `I_{30(b-2)+19}` as negative surgery on the
/// left-handed trefoil.
fn i19_surgery(b: i64) -> SurgeryDescription {
    SurgeryDescription::new(TorusKnot::trefoil().mirrored(), q(-(30 * b - 41), 5 * b - 6))
}

fn c3() -> Vec<(&'static str, Outcome)> {
    let a = (|| {
        let desc = i19_surgery(3);
        for s in 0..7 {
            let d = d_surgery(&desc, &z(4 + 7 * s)).map_err(err)?;
            ensure(d.is_zero(), || format!("d(I_49, {}) = {d}", 4 + 7 * s))?;
        }
        Ok(())
    })();
    let single = |b: i64, label: i64, name: &str| -> Outcome {
        let desc = i19_surgery(b);
        let d = d_surgery(&desc, &z(label)).map_err(err)?;
        let t = d_table(&desc).map_err(err)?;
        let nonzero: Vec<String> = t
            .integral_labels()
            .iter()
            .filter(|i| !t.get(i).unwrap().is_zero())
            .map(|i| format!("{i}:{}", t.get(i).unwrap()))
            .collect();
        ensure(d == q(2, 1), || {
            format!("d({name}, {label}) = {d} on {desc}, want 2; nonzero integral values {}", nonzero.join(" "))
        })
    };
    let b = single(11, 58, "I_289");
    let c = single(7, 92, "I_169");
    let d = (|| {
        let desc = SurgeryDescription::trefoil(q(77, 12));
        let want = [q(0, 1), q(-2, 7), q(6, 7), q(-4, 7), q(-4, 7), q(6, 7), q(-2, 7)];
        let got: Vec<Rational> = (0..7)
            .map(|n| d_surgery(&desc, &z((44 + 11 * n) % 77)))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        ensure(got == want, || format!("I_77 list {got:?}"))
    })();
    vec![("3a", a), ("3b", b), ("3c", c), ("3d", d)]
}

fn c4() -> Outcome {
    for b in 2..=20 {
        let g = catalog(Family::T, b, 1).seifert().map_err(err)?.canonical_plumbing().map_err(err)?;
        let m = mu_bar(&g).map_err(err)?;
        let want = if b % 2 == 1 { -4 } else { -6 };
        ensure(m == z(want), || format!("mu_bar(T_{}) = {m}", 6 * (b - 2) + 1))?;
    }
    let mut checked = 0;
    for &(f, ks) in common::FAMILIES {
        for &k in ks {
            for b in 2..=20 {
                let n = catalog(family_of(f), b, k);
                let inv = n.seifert().map_err(err)?;
                if inv.h1_order().is_even() {
                    continue;
                }
                let via_surgery = d_spin(&surgery_of_spherical(&n).map_err(err)?).map_err(err)?;
                let via_wu = d_spin_plumbing(&inv.canonical_plumbing().map_err(err)?).map_err(err)?;
                ensure(via_surgery == via_wu, || format!("{n}: Ni-Wu {via_surgery}, Wu {via_wu}"))?;
                checked += 1;
            }
        }
    }
    println!("      {checked} odd-|H1| entries agree");
    Ok(())
}

fn canonical_lattice(n: &SphericalName) -> Result<GramLattice, String> {
    let g = n.seifert().map_err(err)?.canonical_plumbing().map_err(err)?;
    GramLattice::from_plumbing(&g).map_err(err)
}

/// The printed images of `v1..v5` for `I_{30(b-2)+19}`, `k = 0`, as target
/// coordinate vectors. The second family (`b = 19`) is printed with the
/// first family's `v4`, which pairs to `9` with its `v5`; `literal = false`
/// uses `v4 = e1 + e2 + (e3 + e4 + e5)`, under which every pairing matches.
fn printed_rho(b: i64, literal: bool) -> Vec<Vec<i64>> {
    let v5 = match b {
        7 => vec![-2, -1, -1, -1, 0],
        19 => vec![-3, -2, 1, 1, 2],
        _ => unreachable!(),
    };
    let v4 = if b == 19 && !literal {
        vec![1, 1, 1, 1, 1]
    } else {
        vec![1, 1, -1, -1, -1]
    };
    vec![
        vec![1, -1, 0, 0, 0],
        vec![0, 0, 1, -1, 0],
        vec![0, 0, 0, 1, -1],
        v4,
        v5,
    ]
}

fn gram_of(rho: &[Vec<i64>]) -> Vec<Vec<i64>> {
    rho.iter()
        .map(|x| rho.iter().map(|y| -x.iter().zip(y).map(|(a, b)| a * b).sum::<i64>()).collect())
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The shape of the rigidity lemma: the three `-2` leg vertices of each
/// block map to coordinate differences partitioning all coordinates into a
/// pair and a triple, and each `-5` vertex is `±1` on exactly one pair and
/// one triple.
fn rigid_shape(e: &DiagonalEmbedding, blocks: usize, pair: usize, chain: (usize, usize), five: usize) -> bool {
    let support = |c: &Vec<i64>| c.iter().enumerate().filter(|(_, &x)| x != 0).map(|(t, _)| t).collect::<BTreeSet<_>>();
    let mut pairs = Vec::new();
    let mut triples = Vec::new();
    for i in 0..blocks {
        let col = |v: usize| &e.columns[5 * i + v];
        let p = support(col(pair));
        let mut t = support(col(chain.0));
        t.extend(support(col(chain.1)));
        if p.len() != 2 || t.len() != 3 || !p.is_disjoint(&t) {
            return false;
        }
        pairs.push(p);
        triples.push(t);
    }
    let covered: BTreeSet<usize> = pairs.iter().chain(&triples).flatten().copied().collect();
    if covered.len() != 5 * blocks {
        return false;
    }
    (0..blocks).all(|i| {
        let c = &e.columns[5 * i + five];
        let s = support(c);
        c.iter().all(|&x| x.abs() <= 1)
            && pairs.iter().filter(|p| p.is_subset(&s)).count() == 1
            && triples.iter().filter(|t| t.is_subset(&s)).count() == 1
            && s.len() == 5
    })
}

fn c5() -> Vec<(&'static str, Outcome)> {
    let budget = SearchBudget::default();
    let a = (|| {
        for b in 2..=12 {
            let l = canonical_lattice(&catalog(Family::I, b, 1))?;
            let out = timed(Duration::from_secs(10), "I_1 search", || {
                find_embedding(&l, l.rank, budget.without_filter())
            })?
            .map_err(err)?;
            ensure(out.is_none(), || format!("I_1 family embeds at b = {b}"))?;
        }
        Ok(())
    })();
    let b = (|| {
        for bb in [7, 19] {
            let ours = canonical_lattice(&catalog(Family::I, bb, 19))?;
            let rho = printed_rho(bb, false);
            let gram = gram_of(&rho);
            if bb == 19 {
                let literal = gram_of(&printed_rho(bb, true));
                ensure(literal[3][4] == 9, || "the printed second-family images now realize the form".into())?;
                println!("      b = 19: printed v4, v5 pair to 9; using v4 = e1+e2+e3+e4+e5");
            }
            let perm = permutations(5)
                .into_iter()
                .find(|p| (0..5).all(|i| (0..5).all(|j| ours.matrix[p[i]][p[j]] == gram[i][j])))
                .ok_or("the printed Gram matrix is not the canonical lattice")?;
            let mut cols = vec![Vec::new(); 5];
            for (i, &t) in perm.iter().enumerate() {
                cols[t] = rho[i].clone();
            }
            let e = DiagonalEmbedding::new(&ours, 5, cols).map_err(err)?;
            let found = find_embedding(&ours, 5, budget).map_err(err)?;
            ensure(found.is_found(), || format!("no embedding at b = {bb}"))?;
            let all = all_embeddings(&ours, 5, budget).map_err(err)?;
            ensure(all.contains(&e.canonical()), || format!("the printed embedding is not among the {} found at b = {bb}", all.len()))?;
            let [v1, v2, v3, v4] = [perm[0], perm[1], perm[2], perm[3]];
            ensure(all.iter().all(|x| rigid_shape(x, 1, v1, (v2, v3), v4)), || format!("an embedding breaks the rigid shape at b = {bb}"))?;
            let l2 = ours.direct_sum(2);
            let all2 = all_embeddings(&l2, 10, budget).map_err(err)?;
            ensure(!all2.is_empty(), || "no embedding of two copies".into())?;
            ensure(all2.iter().all(|x| rigid_shape(x, 2, v1, (v2, v3), v4)), || format!("two copies break the rigid shape at b = {bb}"))?;
            println!("      b = {bb}: {} embedding(s), {} of two copies, all rigid", all.len(), all2.len());
        }
        Ok(())
    })();
    let c = (|| {
        for k in [1, 5, 7] {
            for b in 2..=4 {
                let l = canonical_lattice(&catalog(Family::O, b, k))?;
                let sum = l.direct_sum(2);
                let out = timed(Duration::from_secs(60), "O sum search", || find_embedding(&sum, sum.rank, budget))?
                    .map_err(err)?;
                ensure(out.is_none(), || format!("two copies of O_{} embed", 12 * (b - 2) + k))?;
            }
        }
        Ok(())
    })();
    let d = (|| {
        let g97 = GramLattice::chain(&[-2, -2, -2, -3]);
        ensure(find_embedding(&g97, 4, budget).map_err(err)?.is_found(), || "chain 9/7 does not embed".into())?;
        let g53 = GramLattice::chain(&[-2, -3]);
        ensure(find_embedding(&g53, 2, budget.without_filter()).map_err(err)?.is_none(), || "chain 5/3 embeds at rank 2".into())?;
        let s = g53.direct_sum(2);
        ensure(find_embedding(&s, 4, budget).map_err(err)?.is_found(), || "two copies of 5/3 do not embed".into())
    })();
    vec![("5a", a), ("5b", b), ("5c", c), ("5d", d)]
}

/// Classes of `{±1}^dim` under differences in the span, by pairwise
/// membership tests and union-find.
fn pairwise_count(columns: &[Vec<i64>], dim: usize) -> usize {
    let vs: Vec<Vec<i64>> = (0u32..1 << dim)
        .map(|m| (0..dim).map(|t| if m >> t & 1 == 1 { -1 } else { 1 }).collect())
        .collect();
    let mut parent: Vec<usize> = (0..vs.len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let diff: Vec<i64> = vs[i].iter().zip(&vs[j]).map(|(a, b)| a - b).collect();
            if lattice_member(&diff, columns) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..vs.len()).filter(|&i| find(&mut parent, i) == i).count()
}

fn c6() -> Outcome {
    let block: Vec<Vec<i64>> = printed_rho(7, true).into_iter().take(4).collect();
    let brute = pairwise_count(&block, 5);
    let fast = greene_jabuka_count(&block, 5);
    let l = l_functional(&block).ok_or("no functional")?;
    let image = l_image(&l);
    let want: BTreeSet<i64> = [-12, -8, -6, -4, -2, 0, 2, 4, 6, 8, 12].into_iter().collect();
    ensure(brute == 11 && fast == 11, || format!("counts {brute}, {fast}"))?;
    ensure(image == want, || format!("l image {image:?}"))?;
    let two: Vec<Vec<i64>> = block
        .iter()
        .flat_map(|c| {
            [
                c.iter().copied().chain([0; 5]).collect::<Vec<_>>(),
                [0; 5].into_iter().chain(c.iter().copied()).collect(),
            ]
        })
        .collect();
    ensure(greene_jabuka_count(&two, 10) == 121, || "two blocks do not give 11^2".into())?;
    for b in 2..=12 {
        let h = z(30 * (b - 2) + 19);
        let possible = gj_bound(&h, 11).finite_order_possible;
        ensure(possible == (b <= 5), || format!("bound at b = {b} says {possible}"))?;
    }
    ensure(gj_bound(&z(121), 11).finite_order_possible && !gj_bound(&z(122), 11).finite_order_possible, || "threshold is not 121".into())
}

fn c7() -> Outcome {
    let cases: Vec<(Family, i64, i64)> = [2, 3, 4, 5]
        .into_iter()
        .map(|b| (Family::O, b, 11))
        .chain([2, 6].into_iter().map(|b| (Family::I, b, 17)))
        .chain([(Family::I, 5, 19)])
        .chain([3, 5, 7].into_iter().map(|b| (Family::I, b, 23)))
        .collect();
    for (f, b, k) in cases {
        let n = catalog(f, b, k);
        let s = d_sum_all(&surgery_of_spherical(&n).map_err(err)?).map_err(err)?;
        ensure(!s.is_zero(), || format!("{n} has zero sum"))?;
        println!("      {n}: sum {s}");
    }
    let i77 = SurgeryDescription::trefoil(q(77, 12));
    let s = d_sum_all(&i77).map_err(err)?;
    ensure(s.is_zero(), || format!("I_77 sum {s}"))?;
    let r = obstruct_max_min(&i77).map_err(err)?;
    ensure(r.verdict == Verdict::Obstructs, || format!("max_min {}", r.verdict))?;
    let Some(Witness::DList { values, .. }) = &r.witness else {
        return Err("max_min witness missing".into());
    };
    let (mx, mn) = (values.iter().max().unwrap(), values.iter().min().unwrap());
    ensure(*mx == q(6, 7) && *mn == q(-4, 7) && mx + mn == q(2, 7), || format!("max {mx} min {mn}"))
}

fn golden_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/tests/golden/table_b12.csv")
}

fn c8() -> Outcome {
    let caps = Caps::default();
    let rows = timed(Duration::from_secs(600), "table", || table_rows(12, &caps))?.map_err(err)?;
    let mut i = 0;
    for &(f, ks) in common::FAMILIES {
        for &k in ks {
            for b in 2..=12 {
                let row = rows.get(i).ok_or("table too short")?;
                i += 1;
                let name = format!("{f}_{}", common::subscript(f, k, b));
                let (order, tags) = common::expected(f, k, b);
                ensure(row.name == name, || format!("row {i} is {}, want {name}", row.name))?;
                ensure(row.order == order && tags.contains(&row.proved_in.as_str()), || {
                    format!("{name}: {} via {}, want {order} via {tags:?}", row.order, row.proved_in)
                })?;
            }
        }
    }
    let mut d_rows = 0;
    for row in &rows[i..] {
        let n = rhcob::text::parse_name(&row.name).map_err(err)?;
        let (p, qq) = (n.first.clone(), n.second.clone());
        let lens = Lens::new(&p - &qq, qq.clone()).map_err(err)?;
        let (lo, _) = rhcob::obstruct::lens_order(&lens, &caps).map_err(err)?;
        let c = classify_order(&n, &caps).map_err(err)?;
        let OrderVerdict::SameAs { target, order } = &c.verdict else {
            return Err(format!("{} is not a reduction", row.name));
        };
        let t = rhcob::seifert::Lens::new(
            target.trim_start_matches("L(").split(',').next().unwrap().parse().unwrap(),
            target.trim_end_matches(')').split(',').nth(1).unwrap().parse().unwrap(),
        )
        .map_err(err)?;
        ensure(t.homeomorphic(&lens) || t.homeomorphic(&lens.mirror()), || format!("{}: {target} vs {lens}", row.name))?;
        ensure(**order == lo, || format!("{}: {order} vs lens order {lo}", row.name))?;
        d_rows += 1;
    }
    ensure(d_rows == 34, || format!("{d_rows} D rows"))?;
    let t15 = classify_order(&catalog(Family::T, 4, 3), &caps).map_err(err)?;
    let two = t15.reports.iter().find(|r| {
        r.id == ObstructionId::LiscaLens && r.params.get("copies").map(String::as_str) == Some("2")
    });
    ensure(
        matches!(two, Some(r) if r.verdict == Verdict::Passes && matches!(r.witness, Some(Witness::Embedding(ref c)) if c.verified)),
        || "T_15 lacks a verified two-copy certificate".into(),
    )?;
    let golden = std::fs::read_to_string(golden_path()).map_err(err)?;
    ensure(table_csv(&rows).map_err(err)? == golden, || "table differs from the golden file".into())
}

fn c9() -> Vec<(&'static str, Outcome)> {
    let cf = (|| {
        for p in 2..=80i64 {
            for qq in 1..p {
                if qq.gcd(&p) != 1 {
                    continue;
                }
                let v = cf_eval(&hj_cf(&z(p), &z(qq)).map_err(err)?).map_err(err)?;
                ensure(v == q(p, qq), || format!("cf of {p}/{qq} evaluates to {v}"))?;
            }
        }
        Ok(())
    })();
    let ival = (|| {
        for p in 3..=80i64 {
            for qq in 1..p {
                if qq.gcd(&p) != 1 {
                    continue;
                }
                let a = i_value(&hj_cf(&z(p), &z(qq)).map_err(err)?.terms);
                let b = i_value(&hj_cf(&z(p), &z(p - qq)).map_err(err)?.terms);
                ensure(a + b == z(-2), || format!("I values at {p}/{qq}"))?;
            }
        }
        Ok(())
    })();
    let det = (|| {
        for &(f, ks) in common::FAMILIES {
            for &k in ks {
                for b in 2..=12 {
                    let n = catalog(family_of(f), b, k);
                    let l = canonical_lattice(&n)?;
                    let h = n.seifert().map_err(err)?.h1_order();
                    ensure(num_traits::Signed::abs(&l.determinant()) == h, || format!("{n}: det {}", l.determinant()))?;
                }
            }
        }
        Ok(())
    })();
    let conj = (|| {
        for &(f, ks) in common::FAMILIES {
            for &k in ks {
                for b in 2..=6 {
                    let n = catalog(family_of(f), b, k);
                    let t = d_table(&surgery_of_spherical(&n).map_err(err)?).map_err(err)?;
                    for i in 0..t.values.len() {
                        let c = t.conjugate(&z(i as i64));
                        ensure(t.get(&c) == Some(&t.values[i]), || format!("{n}: label {i} vs {c}"))?;
                    }
                }
            }
        }
        Ok(())
    })();
    let integral = (|| {
        for m in 1..=15i64 {
            for qq in 1..=12i64 {
                if qq.gcd(&m) != 1 || m * m == 6 * qq {
                    continue;
                }
                let desc = SurgeryDescription::trefoil(q(m * m, qq));
                let t = d_table(&desc).map_err(err)?;
                let labels = t.integral_labels();
                ensure(labels.len() as i64 == m, || format!("{m}^2/{qq}: {} integral labels", labels.len()))?;
                if m % 2 == 1 {
                    let mut want = extendable_spinc(&z(m), &t.q).map_err(err)?.remove(0);
                    want.sort();
                    ensure(labels == want, || format!("{m}^2/{qq}: integral labels differ from extendable"))?;
                }
            }
        }
        Ok(())
    })();
    let chains = small_chains();
    let sound = (|| {
        for w in &chains {
            let l = GramLattice::chain(w);
            for n in l.rank..=l.rank + 1 {
                if let EmbeddingOutcome::Found(e) = find_embedding(&l, n, SearchBudget::default()).map_err(err)? {
                    ensure(e.realizes(&l), || format!("{w:?} into {n}: unsound"))?;
                }
                for e in all_embeddings(&l, n, SearchBudget::default()).map_err(err)? {
                    ensure(e.realizes(&l), || format!("{w:?} into {n}: unsound representative"))?;
                }
            }
        }
        Ok(())
    })();
    let complete = (|| {
        for w in chains.iter().filter(|w| w.len() <= 4) {
            let l = GramLattice::chain(w);
            for n in l.rank..=5.max(l.rank) {
                let brute: BTreeSet<DiagonalEmbedding> = brute_force_embeddings(&l, n)
                    .into_iter()
                    .map(|c| DiagonalEmbedding { n, columns: c }.canonical())
                    .collect();
                let reps: BTreeSet<DiagonalEmbedding> = all_embeddings(&l, n, SearchBudget::default()).map_err(err)?.into_iter().collect();
                ensure(brute == reps, || format!("{w:?} into {n}: {} brute vs {} searched", brute.len(), reps.len()))?;
                let found = find_embedding(&l, n, SearchBudget::default()).map_err(err)?.is_found();
                ensure(found == !brute.is_empty(), || format!("{w:?} into {n}: existence differs"))?;
            }
        }
        Ok(())
    })();
    vec![
        ("9a", cf),
        ("9b", ival),
        ("9c", det),
        ("9d", conj),
        ("9e", integral),
        ("9f", sound),
        ("9g", complete),
    ]
}

/// Chains with weights in `{-2, -3, -4}` of length 1 to 4.
fn small_chains() -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    let mut all = Vec::new();
    for _ in 0..4 {
        out = out
            .into_iter()
            .flat_map(|w| {
                [-2, -3, -4].into_iter().map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        all.extend(out.iter().cloned());
    }
    all
}

fn main() {
    let mut failed = Vec::new();
    let mut report = |id: &str, what: &str, parts: Vec<(&str, Outcome)>, t: Duration| {
        let ok = parts.iter().all(|(_, o)| o.is_ok());
        println!("{} criterion {id}: {what} ({:.1}s)", if ok { "PASS" } else { "FAIL" }, t.as_secs_f64());
        for (name, o) in &parts {
            match o {
                Ok(()) if parts.len() > 1 => println!("      {name} ok"),
                Ok(()) => {}
                Err(e) => println!("      {name} failed: {e}"),
            }
        }
        if !ok {
            failed.push(id.to_string());
        }
    };
    macro_rules! run {
        ($id:expr, $what:expr, $parts:expr) => {{
            let t = Instant::now();
            let parts = $parts;
            report($id, $what, parts, t.elapsed());
        }};
    }
    run!("1", "lens correction terms", vec![("1", c1())]);
    run!("2", "closed form equals recursion for p <= 200", vec![("2", c2())]);
    run!("3", "trefoil surgery correction terms", c3());
    run!("4", "mu-bar and spin correction terms", vec![("4", c4())]);
    run!("5", "embedding searches", c5());
    run!("6", "Greene-Jabuka count and bound", vec![("6", c6())]);
    run!("7", "d-sum and max+min obstructions", vec![("7", c7())]);
    run!("8", "order table for b <= 12", vec![("8", c8())]);
    run!("9", "property checks", c9());
    if !failed.is_empty() {
        println!("failed: {}", failed.join(", "));
        std::process::exit(1);
    }
}
