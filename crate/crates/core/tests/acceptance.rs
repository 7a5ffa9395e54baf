//! Acceptance criteria, one line per criterion. Exits non-zero if any fails.

use std::collections::BTreeMap;
use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use gkab::classifier::{
    classify_all, ff_isomorphic, ff_type, FFInput, FFType, SplitPolicy, BUILTIN_SPLIT_TABLE,
};
use gkab::extension::{
    canonical_b_truncation, enumerate_extensions, verify_diagram, verify_uniqueness,
    TruncationSpec, DEFAULT_BOUND,
};
use gkab::finabelian::{dual_finite, groups_of_order, structure_from_orders};
use gkab::profinite::{
    dual_discrete, dual_profinite, t_descriptor, t_l, Cardinal, ProfiniteDescriptor,
};
use gkab::quadfields::{class_group, Discriminant};
use gkab::FiniteAbelianGroup;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const CLASS_NUMBER_LIMIT: Duration = Duration::from_secs(1);
const SELF_DUALITY_LIMIT: Duration = Duration::from_secs(5);
const UNIQUENESS_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_CASES: usize = 1000;
const SEED: u64 = 0x6b61_6221;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn g(s: &str) -> FiniteAbelianGroup {
    s.parse().unwrap()
}

fn ten() -> Vec<BigInt> {
    BUILTIN_SPLIT_TABLE
        .iter()
        .map(|&d| BigInt::from(d))
        .collect()
}

fn gkab(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gkab"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn class_numbers() -> Verdict {
    let start = Instant::now();
    let bad: Vec<String> = BUILTIN_SPLIT_TABLE
        .iter()
        .filter_map(|&d| {
            let h = class_group(&Discriminant::new(d).unwrap()).class_number();
            (h != 2).then(|| format!("h({d}) = {h}"))
        })
        .collect();
    let elapsed = start.elapsed();
    check(
        bad.is_empty() && elapsed < CLASS_NUMBER_LIMIT,
        format!(
            "h = 2 for all ten in {elapsed:?} (limit {CLASS_NUMBER_LIMIT:?}) {}",
            bad.join(", ")
        ),
    )
}

fn one_class() -> Verdict {
    let r = classify_all(&ten(), &SplitPolicy::builtin());
    let sizes: Vec<usize> = r.cells.iter().map(|c| c.members.len()).collect();
    check(
        sizes == [10] && r.errors.is_empty(),
        format!("cell sizes {sizes:?}, {} errors", r.errors.len()),
    )
}

fn exclusion() -> Verdict {
    let codes: Vec<i32> = ["-4", "-8"]
        .iter()
        .map(|d| gkab(&["classify", "--disc", d]).0)
        .collect();
    check(codes == [2, 2], format!("exit codes {codes:?} for -4, -8"))
}

/// Characters of `g` into `Z/e`, `e = exp(g)`, enumerated as generator
/// images, with structure read off from their pointwise orders.
fn dual_oracle(grp: &FiniteAbelianGroup) -> FiniteAbelianGroup {
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let orders = grp.factor_orders();
    let e = orders.iter().fold(1, |acc, &n| acc / gcd(acc, n) * n);
    // image of a generator of order n is a multiple of e/n
    let mut chars: Vec<Vec<u64>> = vec![vec![]];
    for &n in &orders {
        chars = chars
            .into_iter()
            .flat_map(|c| {
                (0..n).map(move |j| {
                    let mut c = c.clone();
                    c.push(j * (e / n));
                    c
                })
            })
            .collect();
    }
    structure_from_orders(chars.iter().map(|c| {
        c.iter().fold(1, |acc, &x| {
            let o = e / gcd(x, e);
            acc / gcd(acc, o) * o
        })
    }))
}

fn self_duality() -> Verdict {
    let start = Instant::now();
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 1..=64 {
        for grp in groups_of_order(n).unwrap() {
            count += 1;
            if dual_finite(&grp) != grp || dual_oracle(&grp) != grp {
                bad.push(grp.to_string());
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        bad.is_empty() && elapsed < SELF_DUALITY_LIMIT,
        format!(
            "{count} groups in {elapsed:?} (limit {SELF_DUALITY_LIMIT:?}) {}",
            bad.join(" ")
        ),
    )
}

fn random_cardinal(rng: &mut StdRng) -> Cardinal {
    if rng.gen_bool(0.2) {
        Cardinal::Aleph0
    } else {
        Cardinal::Finite(rng.gen_range(0..4))
    }
}

fn random_descriptor(rng: &mut StdRng) -> ProfiniteDescriptor {
    let mut d = ProfiniteDescriptor::zhat(random_cardinal(rng));
    if rng.gen_bool(0.3) {
        d = d.combine(&t_descriptor());
    }
    for l in [2u64, 3, 5, 7, 11] {
        if !rng.gen_bool(0.5) {
            continue;
        }
        d = d.combine(&ProfiniteDescriptor::zl(l, random_cardinal(rng)).unwrap());
        if rng.gen_bool(0.2) {
            d = d.combine(&t_l(l).unwrap());
        }
        for _ in 0..rng.gen_range(0..4) {
            d = d
                .with_cyclic(l, rng.gen_range(1..6), random_cardinal(rng))
                .unwrap();
        }
    }
    d
}

fn double_dual() -> Verdict {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut bad = 0;
    for _ in 0..RANDOM_CASES {
        let d = random_descriptor(&mut rng);
        let e = dual_profinite(&d);
        if dual_discrete(&e) != d || dual_profinite(&dual_discrete(&e)) != e {
            bad += 1;
        }
    }
    check(
        bad == 0,
        format!(
            "{} of {RANDOM_CASES} descriptors round-trip",
            RANDOM_CASES - bad
        ),
    )
}

fn uniqueness_cases() -> Vec<(u64, &'static str, Vec<u32>)> {
    let mut cases = Vec::new();
    for a in ["1", "2", "4", "2,2"] {
        for exps in [vec![1, 2], vec![1, 2, 3]] {
            cases.push((2, a, exps));
        }
    }
    cases.push((3, "3", vec![1, 2]));
    cases
}

fn uniqueness() -> Verdict {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (l, a, exps) in uniqueness_cases() {
        let r = verify_uniqueness(&g(a), l, std::slice::from_ref(&exps), DEFAULT_BOUND)
            .map_err(|e| e.to_string())?;
        let e = &r.entries[0];
        if !e.passed {
            failures.push(format!(
                "l={l} A={a} C={exps:?} survivors {:?}",
                e.survivors
            ));
        }
    }
    let spec = TruncationSpec::new(2, g("2"), vec![1, 2], 1).unwrap();
    let at1: Vec<FiniteAbelianGroup> = enumerate_extensions(&spec, DEFAULT_BOUND)
        .map_err(|e| e.to_string())?
        .classes
        .into_iter()
        .map(|c| c.group)
        .collect();
    let at2: Vec<FiniteAbelianGroup> = enumerate_extensions(&spec.with_level(2), DEFAULT_BOUND)
        .map_err(|e| e.to_string())?
        .classes
        .into_iter()
        .map(|c| c.group)
        .collect();
    if at1.len() != 2 || !at1.contains(&g("2,8")) || !at1.contains(&g("4,4")) {
        failures.push(format!("A=2 C=[1,2] m=1 gave {at1:?}"));
    }
    if at2 != [g("2,8")] || canonical_b_truncation(&spec).unwrap() != g("2,8") {
        failures.push(format!("A=2 C=[1,2] m=2 gave {at2:?}"));
    }
    let elapsed = start.elapsed();
    check(
        failures.is_empty() && elapsed < UNIQUENESS_LIMIT,
        format!(
            "{} truncations in {elapsed:?} (limit {UNIQUENESS_LIMIT:?}) {}",
            uniqueness_cases().len(),
            failures.join("; ")
        ),
    )
}

fn diagrams() -> Verdict {
    let mut total = 0;
    let mut failures = Vec::new();
    for (l, a, exps) in uniqueness_cases() {
        let spec = TruncationSpec::new(l, g(a), exps.clone(), 0).unwrap();
        for n in [1, 2] {
            total += 1;
            let c = verify_diagram(l, &g(a), &spec, n, DEFAULT_BOUND).map_err(|e| e.to_string())?;
            if !c.passed() {
                failures.push(format!(
                    "l={l} A={a} C={exps:?} n={n}: |D[l^n]|={} |T[l^n]|={} composite_zero={} divisible={} witness {:?}",
                    c.d_socle_order,
                    c.t_socle_order,
                    c.composite_zero,
                    c.divisible,
                    c.counterexample.map(|(_, x)| x.to_string())
                ));
            }
        }
    }
    check(
        failures.is_empty(),
        format!(
            "{}/{total} cases pass {}",
            total - failures.len(),
            failures.join("; ")
        ),
    )
}

/// Reduced primitive forms by a plain triple loop.
fn oracle_forms(d: i64) -> usize {
    let mut count = 0;
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            let boundary = b.abs() == a || a == c;
            let gcd = |mut x: i64, mut y: i64| {
                while y != 0 {
                    (x, y) = (y, x % y);
                }
                x.abs()
            };
            if c >= a && !(boundary && b < 0) && gcd(gcd(a, b), c) == 1 {
                count += 1;
            }
        }
        a += 1;
    }
    count
}

fn form_axioms() -> Verdict {
    let mut fields = 0;
    let mut failures = Vec::new();
    for d in -199i64..0 {
        let Ok(disc) = Discriminant::new(d) else {
            continue;
        };
        fields += 1;
        let cg = class_group(&disc);
        let t = cg.composition_table();
        let h = t.len();
        let e = cg.representatives.iter().position(|f| *f == cg.identity());
        let group_ok = e.is_some_and(|e| {
            (0..h).all(|x| {
                t[e][x] == x
                    && (0..h).any(|y| t[x][y] == e)
                    && (0..h).all(|y| {
                        t[x][y] == t[y][x] && (0..h).all(|z| t[t[x][y]][z] == t[x][t[y][z]])
                    })
            })
        });
        if !group_ok || cg.structure.order_u64() != Some(h as u64) || h != oracle_forms(d) {
            failures.push(d.to_string());
        }
    }
    let small = [(-23, 3), (-47, 5)].iter().all(|&(d, h)| {
        oracle_forms(d) == h && class_group(&Discriminant::new(d).unwrap()).class_number() == h
    });
    check(
        failures.is_empty() && small,
        format!(
            "{fields} fields, h(-23)=3 and h(-47)=5 by oracle: {small} {}",
            failures.join(" ")
        ),
    )
}

fn random_group(rng: &mut StdRng, primes: &[u64]) -> FiniteAbelianGroup {
    let mut orders = Vec::new();
    for &p in primes {
        for _ in 0..rng.gen_range(0..3) {
            orders.push(p.pow(rng.gen_range(1..4)));
        }
    }
    FiniteAbelianGroup::from_cyclic_orders(&orders).unwrap()
}

/// The three conditions, written out independently of the library.
fn three_conditions(
    p: u64,
    n: u64,
    cl: &FiniteAbelianGroup,
    q: u64,
    m: u64,
    cl2: &FiniteAbelianGroup,
) -> bool {
    let strip = |mut x: u64, p: u64| {
        while x.is_multiple_of(p) {
            x /= p;
        }
        x
    };
    let nonp = |grp: &FiniteAbelianGroup, p: u64| {
        let mut orders: Vec<u64> = grp
            .factor_orders()
            .into_iter()
            .filter(|o| o % p != 0)
            .collect();
        orders.sort_unstable();
        orders
    };
    p == q && strip(n, p) == strip(m, q) && nonp(cl, p) == nonp(cl2, q)
}

fn function_fields() -> Verdict {
    let mut rng = StdRng::seed_from_u64(SEED ^ 9);
    let primes = [2u64, 3, 5, 7];
    let mut mismatches = 0;
    let mut perturbed = 0;
    let ty = |p, n, cl: &FiniteAbelianGroup| -> FFType {
        ff_type(&FFInput {
            characteristic: p,
            constant_exponent: n,
            class_group_deg0: cl.clone(),
        })
        .unwrap()
    };
    for _ in 0..RANDOM_CASES {
        let p = primes[rng.gen_range(0..2)];
        let q = if rng.gen_bool(0.8) {
            p
        } else {
            primes[rng.gen_range(0..2)]
        };
        let n = rng.gen_range(1..50);
        let m = if rng.gen_bool(0.5) {
            n * p.pow(rng.gen_range(0..3))
        } else {
            rng.gen_range(1..50)
        };
        let cl = random_group(&mut rng, &primes[..3]);
        let cl2 = if rng.gen_bool(0.5) {
            cl.clone()
        } else {
            random_group(&mut rng, &primes[..3])
        };
        let verdict = ff_isomorphic(&ty(p, n, &cl), &ty(q, m, &cl2));
        if verdict != three_conditions(p, n, &cl, q, m, &cl2) {
            mismatches += 1;
        }
        let bump =
            FiniteAbelianGroup::p_group(p, &[rng.gen_range(1..4), rng.gen_range(1..3)]).unwrap();
        if ff_isomorphic(&ty(p, n, &cl.direct_sum(&bump)), &ty(q, m, &cl2)) != verdict {
            perturbed += 1;
        }
    }
    check(
        mismatches == 0 && perturbed == 0,
        format!("{RANDOM_CASES} cases: {mismatches} disagree with the three conditions, {perturbed} change under p-part perturbation"),
    )
}

fn cli_script(dir: &std::path::Path) -> Vec<(i32, String)> {
    let discs = dir.join("ten_discs.txt");
    let table = dir.join("split.txt");
    let discs_s = discs.to_str().unwrap();
    let table_s = table.to_str().unwrap();
    let script: Vec<Vec<&str>> = vec![
        vec!["classgroup", "--disc", "-35", "--json"],
        vec!["classgroup", "--disc", "-3299", "--json"],
        vec!["classify", "--disc", "-35", "--json"],
        vec![
            "classify",
            "--disc",
            "-39",
            "--split-table",
            table_s,
            "--json",
        ],
        vec![
            "compare", "--disc", "-35", "--disc", "-51", "--disc", "-7", "--json",
        ],
        vec!["batch", "--input", discs_s, "--json"],
        vec![
            "verify-uniqueness",
            "--prime",
            "2",
            "--sub",
            "2",
            "--exponents",
            "1,2,3",
            "--diagram",
            "1",
            "--json",
        ],
        vec!["dual", "--preset", "T", "--json"],
        vec![
            "truncate",
            "--preset",
            "T_2",
            "--prime",
            "2",
            "--max-exp",
            "3",
            "--mult-cap",
            "2",
            "--json",
        ],
        vec![
            "fftype",
            "--char",
            "2",
            "--exp",
            "12",
            "--class-group",
            "4,3",
            "--json",
        ],
        vec![
            "ffcompare",
            "--field",
            "2:12:4,3",
            "--field",
            "2:3:3",
            "--json",
        ],
    ];
    script.iter().map(|args| gkab(args)).collect()
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let discs: Vec<String> = BUILTIN_SPLIT_TABLE
        .iter()
        .map(ToString::to_string)
        .collect();
    fs::write(dir.path().join("ten_discs.txt"), discs.join("\n") + "\n").unwrap();
    fs::write(dir.path().join("split.txt"), "# user data\n{-39: 2}\n").unwrap();
    let first = cli_script(dir.path());
    let second = cli_script(dir.path());
    let codes: Vec<i32> = first.iter().map(|r| r.0).collect();
    let batch_one_class = first[5].1.matches("\"discriminants\"").count() == 1;
    check(
        first == second && codes.iter().all(|&c| c == 0) && batch_one_class,
        format!(
            "{} commands, identical output: {}, exit codes {codes:?}, batch has one class: {batch_one_class}",
            first.len(),
            first == second
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("class numbers of the ten fields", class_numbers),
        ("ten fields form one class", one_class),
        ("Q(i) and Q(sqrt(-2)) are rejected", exclusion),
        ("finite self-duality up to order 64", self_duality),
        ("descriptor double dual", double_dual),
        ("uniqueness at truncation", uniqueness),
        ("diagram checks", diagrams),
        ("form group axioms", form_axioms),
        ("function field comparison", function_fields),
        ("CLI determinism", determinism),
    ];
    let mut results = BTreeMap::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let verdict = run();
        let (tag, detail) = match &verdict {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "criterion {:>2} [{tag}] {name}: {}",
            i + 1,
            detail.trim_end()
        );
        results.insert(i + 1, verdict.is_ok());
    }
    let failed: Vec<String> = results
        .iter()
        .filter(|(_, &ok)| !ok)
        .map(|(i, _)| i.to_string())
        .collect();
    println!(
        "{} of {} criteria pass",
        results.len() - failed.len(),
        results.len()
    );
    if !failed.is_empty() {
        println!("failed: {}", failed.join(", "));
        std::process::exit(1);
    }
}
