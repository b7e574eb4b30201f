//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use common::*;
use rhs_quad::quad::{
    act_on_quad, direct_sum, gauss, match_presentations, negate, phi_from_chern, q_from_charge_split,
    verify_theorem_split,
};
use rhs_quad::torsion::{c_invariant, check_axiom, extract_q, synthesize, TorsionTable};
use rhs_quad::{QmodZ, SpincClass, SpincSet};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// All coordinate vectors `a` with `0 <= a_i < |b_i|`.
fn boxes(f: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &b in f {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..b.abs()).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

fn ac1() -> Outcome {
    let mut rng = rng(1);
    let sets: Vec<(Vec<Vec<i64>>, SpincSet)> = (0..100)
        .map(|_| {
            let b = random_diagonal(&mut rng, 5);
            let s = set_of(&b);
            (b, s)
        })
        .collect();

    let start = Instant::now();
    let mut classes = 0usize;
    for (b, set) in &sets {
        let r = lib(verify_theorem_split(set))?;
        let order = abs_order(b) as usize;
        ensure!(r.verdicts.len() == order, "{b:?}: {} verdicts for |H| = {order}", r.verdicts.len());
        if let Some(v) = r.verdicts.iter().find(|v| !v.pass) {
            return Err(format!("{b:?}: {} fails: {:?}", v.charge, v.first_mismatch));
        }
        classes += order;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "runtime {elapsed:?} exceeds 10 s");

    // hand formulas on the diagonal: with x = Σ a_i [m_i],
    //   q(x) = Σ a_i (1/2 - k_i/(2b_i)) - C(a_i,2)/b_i,
    //   φ(x) = -½ Σ (a_i² - a_i s_i)/b_i   (X = -a),  s_i = 1 - k_i + b_i
    let mut oracle_checked = 0usize;
    for (b, set) in sets.iter().filter(|(b, _)| abs_order(b) <= 150) {
        let f: Vec<i64> = (0..b.len()).map(|i| b[i][i]).collect();
        let g = set.group();
        let charges: Vec<Vec<i64>> = boxes(&f)
            .into_iter()
            .map(|t| t.iter().map(|&a| 2 * a + 1).collect())
            .collect();
        for k in &charges {
            let q = lib(q_from_charge_split(g, &lib(set.charge(ints(k)))?))?;
            let s: Vec<i64> = k.iter().zip(&f).map(|(ki, bi)| 1 - ki + bi).collect();
            for a in boxes(&f) {
                let mut oq = BigRational::zero();
                let mut ophi = BigRational::zero();
                for i in 0..f.len() {
                    let (ai, bi, ki, si) = (a[i], f[i], k[i], s[i]);
                    oq += BigRational::new((ai * (bi - ki)).into(), (2 * bi).into());
                    oq -= BigRational::new((ai * (ai - 1) / 2).into(), bi.into());
                    ophi -= BigRational::new((ai * ai - ai * si).into(), (2 * bi).into());
                }
                let (oq, ophi) = (QmodZ::from_rational(&oq), QmodZ::from_rational(&ophi));
                ensure!(oq == ophi, "hand formulas disagree on {f:?}, k={k:?}, a={a:?}");
                let neg_a: Vec<i64> = a.iter().map(|x| -x).collect();
                let x = lib(g.project(&ints(&neg_a)))?;
                ensure!(q.value(&x) == oq, "q table differs from hand formula on {f:?}, k={k:?}, a={a:?}");
            }
            oracle_checked += 1;
        }
    }
    Ok(format!(
        "100 diagonal presentations, {classes} Spin^c classes, all tables equal in {:.2} s; \
         {oracle_checked} classes matched against hand formulas",
        elapsed.as_secs_f64()
    ))
}

fn ac2() -> Outcome {
    let mut rng = rng(2);
    let mut total = 0usize;
    for _ in 0..100 {
        let b = random_symmetric(&mut rng, 6, 3000);
        let n = b.len();
        let order = abs_order(&b) as usize;
        let set = set_of(&b);
        let charges = set.charge_enumerate();
        let cherns = set.chern_enumerate();
        ensure!(charges.len() == order && cherns.len() == order, "{b:?}: counts differ from |det B| = {order}");
        let chern_set: BTreeSet<SpincClass> = cherns.iter().cloned().collect();
        let mut image = BTreeSet::new();
        for k in &charges {
            for i in 0..n {
                let base: i64 = 1 + (0..n).filter(|&j| j != i).map(|j| b[i][j]).sum::<i64>();
                ensure!((&k.as_slice()[i] - base).is_even(), "{b:?}: charge {k} has wrong parity");
            }
            let s = set.charge_to_chern(k);
            for j in 0..n {
                let col: i64 = (0..n).map(|i| b[i][j]).sum();
                let expect = BigInt::from(1 + col) - &k.as_slice()[j];
                ensure!(s.as_slice()[j] == expect, "{b:?}: conversion of {k} differs at {j}");
                ensure!((&s.as_slice()[j] - b[j][j]).is_even(), "{b:?}: {s} has wrong parity");
            }
            ensure!(&set.chern_to_charge(&s) == k, "{b:?}: round trip fails for {k}");
            image.insert(set.class_of(&s));
        }
        ensure!(image == chern_set, "{b:?}: conversion is not a bijection onto Chern classes");
        total += order;
    }
    Ok(format!("100 symmetric presentations (n <= 6), {total} charge classes, bijective with exact round trip"))
}

fn test_set_small(seed: u64, count: usize, max_order: i64) -> Vec<Vec<Vec<i64>>> {
    let mut rng = rng(seed);
    let mut v: Vec<Vec<Vec<i64>>> =
        vec![vec![vec![7]], vec![vec![1]], vec![vec![3, 0], vec![0, -5]], vec![vec![4, 1], vec![1, 2]]];
    v.extend((0..count).map(|_| random_symmetric(&mut rng, 4, max_order)));
    v
}

fn ac3() -> Outcome {
    let mut checks = 0usize;
    let set_list = test_set_small(3, 40, 200);
    for b in &set_list {
        let set = set_of(b);
        let g = set.group();
        let inv = oracle_inverse(b);
        let els = lib(g.elements())?;
        let classes = set.chern_enumerate();
        let phis: Vec<_> = classes.iter().map(|c| phi_from_chern(g, c.chern())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let ds: HashMap<SpincClass, QmodZ> = classes
            .iter()
            .zip(&phis)
            .map(|(c, p)| Ok((c.clone(), gauss(p)?.d)))
            .collect::<Result<_, rhs_quad::Error>>()
            .map_err(|e| e.to_string())?;
        // φ refines λ, with λ from a test-side inverse (first class) and the library check (all classes)
        let lifts: Vec<Vec<BigInt>> = els.iter().map(|x| g.lift(x)).collect();
        let p0 = &phis[0];
        for (i, x) in els.iter().enumerate() {
            for (j, y) in els.iter().enumerate() {
                let lhs = p0.value(&g.add(x, y)) - p0.value(x) - p0.value(y);
                ensure!(lhs == oracle_linking(&inv, &lifts[i], &lifts[j]), "{b:?}: refinement fails at {x}, {y}");
            }
        }
        for (c, p) in classes.iter().zip(&phis) {
            ensure!(p.refinement_defect().is_none(), "{b:?}: φ({c}) does not refine λ");
            for h in &els {
                let moved = set.act(h, c);
                let direct = lib(phi_from_chern(g, moved.chern()))?;
                ensure!(act_on_quad(p, h) == direct, "{b:?}: (h·φ_σ) != φ_(h·σ) for σ={c}, h={h}");
                ensure!(ds[&moved] == &ds[c] - &p.value(h), "{b:?}: d_(h·σ) != d_σ - φ_σ(h) for σ={c}, h={h}");
                checks += 1;
            }
        }
    }
    Ok(format!("{} presentations with |H| <= 200, {checks} (σ, h) pairs exact", set_list.len()))
}

fn ac4() -> Outcome {
    // L(7,1) spot value against a direct sum of the 7 phases 3x²/7
    let set = set_of(&[vec![7]]);
    let phi = lib(phi_from_chern(set.group(), &lib(set.chern_vector(ints(&[7])))?))?;
    let oracle: Vec<QmodZ> = (0..7).map(|x| QmodZ::new(3 * x * x, 7)).collect();
    let (re, im) = oracle_gauss_sum(&oracle);
    ensure!(re.abs() < 1e-9 && (im + 7f64.sqrt()).abs() < 1e-9, "oracle sum is not -i√7");
    let d = lib(gauss(&phi))?.d;
    ensure!(d == QmodZ::new(3, 4), "d = {d} for L(7,1), s=7");

    let mut rng = rng(4);
    let mut list = test_set_small(40, 20, 2000);
    list.extend((0..10).map(|_| random_symmetric(&mut rng, 4, 10_000)));
    list.push(vec![vec![9, 0, 0, 0], vec![0, 9, 0, 0], vec![0, 0, -9, 0], vec![0, 0, 0, 9]]);
    let mut tested = 0usize;
    let mut worst_modulus = 0f64;
    let mut worst_phase = 0f64;
    for b in &list {
        let set = set_of(b);
        let g = set.group();
        let order = abs_order(b) as f64;
        ensure!(order <= 1e4, "test set exceeds |H| = 10^4");
        let mut classes = set.chern_enumerate();
        if classes.len() > 2000 {
            let picks: BTreeSet<usize> = (0..50).map(|_| rng.gen_range(0..classes.len())).collect();
            classes = picks.into_iter().map(|i| classes[i].clone()).collect();
        }
        for c in &classes {
            let p = lib(phi_from_chern(g, c.chern()))?;
            let values = p.values();
            let gd = lib(gauss(&p))?;
            let (re, im) = oracle_gauss_sum(&values);
            let m2 = re * re + im * im;
            let dev = (m2 - order).abs() / order;
            ensure!(dev < 1e-6, "{b:?}, {c}: | |S|² - |H| | / |H| = {dev:e}");
            let four_n = lcm_of_denominators(&values) * 4u32;
            ensure!(four_n.is_multiple_of(gd.d.denom()), "{b:?}, {c}: denominator of d = {} does not divide 4N", gd.d);
            let phase = turn_distance(im.atan2(re) / std::f64::consts::TAU, gd.d.to_f64());
            ensure!(phase < 1e-6, "{b:?}, {c}: reconstructed d = {} off the numeric phase by {phase:e}", gd.d);
            worst_modulus = worst_modulus.max(dev);
            worst_phase = worst_phase.max(phase);
            tested += 1;
        }
    }
    Ok(format!(
        "d(L(7,1), s=7) = 3/4; {tested} functions on {} presentations (|H| <= 10^4): \
         max relative modulus error {worst_modulus:.1e}, max phase residual {worst_phase:.1e}",
        list.len()
    ))
}

fn ac5() -> Outcome {
    let mut rng = rng(5);
    for i in 0..50 {
        let b = random_symmetric(&mut rng, 3, 300);
        let set = set_of(&b);
        let classes = set.chern_enumerate();
        let c = &classes[rng.gen_range(0..classes.len())];
        let t0 = BigRational::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=50).into());
        let phi = lib(phi_from_chern(set.group(), c.chern()))?;
        let t = synthesize(&phi, &t0, c.label());
        ensure!(lib(check_axiom(&t))?.is_none(), "triple {i}: synthetic table fails the axiom");
        ensure!(lib(extract_q(&t))? == phi, "triple {i}: extracted q differs from φ");
        let shifted = synthesize(&phi, &(&t0 + BigRational::new(2.into(), 3.into())), c.label());
        ensure!(lib(extract_q(&shifted))? == phi, "triple {i}: t₀ shift changes q");
    }

    // equivariant families built here by τ_{h·σ}(x) = τ_σ(x - h)
    let mut families = 0;
    for b in test_set_small(55, 8, 60) {
        let set = set_of(&b);
        let g = set.group().clone();
        let sigma = set.chern_enumerate().swap_remove(0);
        let t0 = BigRational::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=30).into());
        let phi = lib(phi_from_chern(&g, sigma.chern()))?;
        let base = synthesize(&phi, &t0, sigma.label());
        let els = lib(g.elements())?;
        let tables: Vec<TorsionTable> = els
            .iter()
            .map(|h| {
                let values = els.iter().map(|x| base.value(&g.sub(x, h)).clone()).collect();
                TorsionTable::new(&g, set.act(h, &sigma).label(), values)
            })
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let fam = lib(c_invariant(&set, &tables))?;
        let expect = QmodZ::from_rational(&t0) - lib(gauss(&phi))?.d;
        ensure!(fam.c_m == expect, "{b:?}: c(M) = {} but t₀ - d_σ = {expect}", fam.c_m);
        ensure!(fam.reports.iter().all(|r| r.c_m == expect), "{b:?}: c(M) depends on σ");
        ensure!(fam.all_q_equal_phi(), "{b:?}: extracted q differs from φ in the family");
        families += 1;
    }
    Ok(format!("50 random round trips exact; {families} equivariant families with constant c(M) = t₀ - d_σ"))
}

fn rhsq(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rhsq")).args(args).output().expect("run rhsq");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn ac6() -> Outcome {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let lens = format!("{data}/lens7.txt");
    let fixture = format!("{data}/lens7_torsion.txt");
    let (code, out, err) = rhsq(&["torsion", &lens, "--fixture", &fixture, "--json"]);
    ensure!(code == 0, "torsion command exit {code}: {err}");
    let json: serde_json::Value = lib(serde_json::from_str(&out))?;
    ensure!(json["c_m"] == "9/20", "c(M) = {} on the synthetic fixture, expected 9/20", json["c_m"]);
    ensure!(json["tables"].as_array().map(Vec::len) == Some(7), "fixture should hold 7 tables");

    let dir = lib(tempfile::tempdir())?;
    let bad = dir.path().join("bad.txt");
    let text = lib(std::fs::read_to_string(&fixture))?.replacen("-18/35", "-17/35", 1);
    lib(std::fs::write(&bad, text))?;
    let (code, _, err) = rhsq(&["torsion", &lens, "--fixture", bad.to_str().unwrap()]);
    ensure!(code == 3 && err.contains("axiom fails at"), "corrupted fixture: exit {code}, {err}");
    let empty = dir.path().join("empty.txt");
    lib(std::fs::write(&empty, "# no tables\n"))?;
    let (code, _, err) = rhsq(&["torsion", &lens, "--fixture", empty.to_str().unwrap()]);
    ensure!(code == 3 && err.contains("incomplete torsion table"), "empty fixture: exit {code}, {err}");

    // [[7]] and the chain (4,2) present L(7,1) and L(7,2); their pairings are isometric
    let l71 = set_of(&[vec![7]]);
    let l72 = set_of(&[vec![4, 1], vec![1, 2]]);
    let psi = lib(match_presentations(l72.group(), l71.group()))?;
    ensure!(lib(psi.verify())?, "isometry check failed");
    Ok("fixture pathway end to end (c(M) = 9/20 on synthetic L(7,1) data, corrupted and empty \
        fixtures rejected); L(7,1) and L(7,2) have isometric linking pairings, so \
        8c(L(7,1)) = 3/7 and 8c(L(7,2)) = 2/7 need externally computed torsion tables and are \
        declared not reproducible here"
        .into())
}

fn ac7() -> Outcome {
    let mut rng = rng(7);
    let pick = |rng: &mut rand_chacha::ChaCha8Rng, set: &SpincSet| {
        let cs = set.chern_enumerate();
        cs[rng.gen_range(0..cs.len())].clone()
    };
    for i in 0..50 {
        let (b1, b2) = (random_symmetric(&mut rng, 3, 60), random_symmetric(&mut rng, 3, 60));
        let (s1, s2) = (set_of(&b1), set_of(&b2));
        let (c1, c2) = (pick(&mut rng, &s1), pick(&mut rng, &s2));
        let p1 = lib(phi_from_chern(s1.group(), c1.chern()))?;
        let p2 = lib(phi_from_chern(s2.group(), c2.chern()))?;
        let (d1, d2) = (lib(gauss(&p1))?.d, lib(gauss(&p2))?.d);

        let (sum, cs) = lib(direct_sum(&s1, &c1, &s2, &c2))?;
        let ps = lib(phi_from_chern(sum.group(), cs.chern()))?;
        ensure!(lib(gauss(&ps))?.d == &d1 + &d2, "pair {i}: d(sum) != d1 + d2");
        let (e1, e2) = (lib(s1.group().elements())?, lib(s2.group().elements())?);
        for x in &e1 {
            for y in &e2 {
                let mut v = s1.group().lift(x);
                v.extend(s2.group().lift(y));
                let z = lib(sum.group().project(&v))?;
                ensure!(ps.value(&z) == p1.value(x) + p2.value(y), "pair {i}: φ of the sum is not orthogonal at {x}, {y}");
            }
        }

        let (neg, cn) = lib(negate(&s1, &c1))?;
        let pn = lib(phi_from_chern(neg.group(), cn.chern()))?;
        ensure!(lib(gauss(&pn))?.d == -&d1, "pair {i}: d does not negate");
        // H(B) and H(-B) are identified through X ↦ -X
        for x in &e1 {
            let minus: Vec<BigInt> = s1.group().lift(x).iter().map(|v| -v).collect();
            let z = lib(neg.group().project(&minus))?;
            ensure!(pn.value(&z) == -p1.value(x), "pair {i}: φ does not negate at {x}");
        }
        let (back, cb) = lib(negate(&neg, &cn))?;
        ensure!(back.presentation() == s1.presentation() && cb == c1, "pair {i}: double negation");
    }
    Ok("50 random pairs: d(sum) = d1 + d2, φ orthogonal on the sum, φ and d negate, double negation is the identity".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("AC1 theorem (split case)", ac1),
        ("AC2 charge/Chern bijection", ac2),
        ("AC3 refinement and equivariance", ac3),
        ("AC4 Gauss sums", ac4),
        ("AC5 torsion round trip", ac5),
        ("AC6 declared limitation and fixture pathway", ac6),
        ("AC7 direct sum and orientation reversal", ac7),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {name} [{secs:.2} s]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} [{secs:.2} s]: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
