//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use glens::catkit::{check_category_laws, check_functor_laws, commutative_square, walking_arrow};
use glens::comonoid::{
    check_recover_usual, cokleisli_indexed, comon_category, enumerate_comonoids, Comonoid, FinSetCartesian,
};
use glens::dynamics::{check_wiring_functorial, run_via_lenses, MooreMachine};
use glens::finset::{all_maps, diagonal, hom_count, terminal, FinFn};
use glens::indexed::{check_tfae_iso, lens_category, projection, IndexedCat, LensTensor};
use glens::instances::{
    check_adjoint_triple, check_classic_embedding, check_dep_interchange, check_twisted_iso,
    classic_lens_category, composable_pairs, coslice_indexed, families_up_to, slice_indexed,
    slice_indexed_with, ClassicLensMor, ClassicLensOb, SliceLaxator,
};
use glens::Limit;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

const LAPTOP_BUDGET: Duration = Duration::from_secs(60);

fn lens_laws(name: &str, f: &IndexedCat) -> Check {
    let start = Instant::now();
    let lens = lens_category(f).map_err(err)?;
    let laws = check_category_laws(lens.category());
    ensure(laws.is_pass(), || format!("{name}: {}", laws.violations[0]))?;
    let pi = projection(&lens);
    let functor = check_functor_laws(lens.category(), f.base(), &pi).map_err(err)?;
    ensure(functor.is_pass(), || format!("{name}: projection {}", functor.violations[0]))?;
    let elapsed = start.elapsed();
    ensure(elapsed < LAPTOP_BUDGET, || format!("{name}: took {elapsed:?}"))?;
    Ok(format!(
        "{name}: {} morphisms, {} checks in {:.2}s",
        lens.category().n_morphisms(),
        laws.checks + functor.checks,
        elapsed.as_secs_f64()
    ))
}

fn cartesian_comonoids(max: usize) -> Result<Vec<Comonoid<FinFn>>, String> {
    let mut out = Vec::new();
    for c in 0..=max {
        out.extend(enumerate_comonoids(&FinSetCartesian, c, Limit::default()).map_err(err)?);
    }
    Ok(out)
}

fn c1_category_laws() -> Check {
    let slice = slice_indexed(2, Limit::default()).map_err(err)?;
    let wa = coslice_indexed(&walking_arrow()).map_err(err)?;
    let sq = coslice_indexed(&commutative_square()).map_err(err)?;
    let sizes: Vec<usize> = (0..=2).collect();
    let ck = cokleisli_indexed(&FinSetCartesian, &cartesian_comonoids(2)?, &sizes, Limit::default())
        .map_err(err)?;
    let parts = [
        lens_laws("slice(2)", &slice.indexed)?,
        lens_laws("coslice(walking arrow)", &wa.indexed)?,
        lens_laws("coslice(square)", &sq.indexed)?,
        lens_laws("cokleisli(cartesian, ≤2)", &ck.indexed)?,
    ];
    Ok(parts.join("; "))
}

fn c2_tfae() -> Check {
    let slice = slice_indexed(2, Limit::default()).map_err(err)?;
    let mut parts = Vec::new();
    let cases: Vec<(&str, IndexedCat)> = vec![
        ("slice(2)", slice.indexed),
        ("constant-terminal(walking arrow)", IndexedCat::constant_terminal(walking_arrow())),
        ("constant-terminal(square)", IndexedCat::constant_terminal(commutative_square())),
    ];
    for (name, f) in cases {
        let r = check_tfae_iso(&f).map_err(|e| format!("{name}: {e}"))?;
        parts.push(format!("{name}: {:?} morphisms, {} checks", r.morphisms, r.checks));
    }
    Ok(parts.join("; "))
}

fn c3_recover_usual() -> Check {
    let sizes: Vec<usize> = (0..=2).collect();
    let r = check_recover_usual(&FinSetCartesian, &cartesian_comonoids(2)?, &sizes, Limit::default())
        .map_err(err)?;
    Ok(format!("objects {:?}, morphisms {:?}, {} checks", r.objects, r.morphisms, r.checks))
}

fn c4_classic() -> Check {
    let r = check_classic_embedding(2, Limit::default()).map_err(err)?;
    let ob = ClassicLensOb::new(2, 2);
    let by_enumeration = ClassicLensMor::all_between(ob, ob).len();
    ensure(by_enumeration == 64, || format!("|hom(⟨2|2⟩,⟨2|2⟩)| = {by_enumeration}"))?;
    let cat = classic_lens_category(2, Limit::default()).map_err(err)?;
    let o = cat.object_id(&ob).ok_or("⟨2|2⟩ missing")?;
    let in_category = cat.category().hom(o, o).len();
    ensure(in_category == 64, || format!("category hom-set has {in_category} lenses"))?;
    Ok(format!(
        "{} composable pairs agree, {} checks; |hom(⟨2|2⟩,⟨2|2⟩)| = 64",
        r.composable_pairs, r.checks
    ))
}

fn c5_fox() -> Check {
    let m = FinSetCartesian;
    let mut found = Vec::new();
    for n in 0..=3 {
        let all = enumerate_comonoids(&m, n, Limit::default()).map_err(err)?;
        ensure(all.len() == 1, || format!("{} comonoids on {n}", all.len()))?;
        let k = &all[0];
        ensure(k.counit == terminal(n) && k.comult == diagonal(n), || {
            format!("the comonoid on {n} is not (!, Δ)")
        })?;
        found.push(all.len());
    }
    let comonoids = cartesian_comonoids(2)?;
    let comon = comon_category(&m, &comonoids, Limit::default()).map_err(err)?;
    for (i, a) in comonoids.iter().enumerate() {
        for (j, b) in comonoids.iter().enumerate() {
            let homs: Vec<FinFn> = comon
                .category()
                .hom(i, j)
                .iter()
                .map(|&f| comon.morphism(f).mor.clone())
                .collect();
            let expected: Vec<FinFn> = all_maps(a.carrier, b.carrier).collect();
            ensure(homs == expected, || format!("hom({i}, {j}) differs from the FinSet hom-set"))?;
            ensure(hom_count(a.carrier, b.carrier) == Some(homs.len() as u128), || "count".into())?;
        }
    }
    Ok(format!(
        "counts {found:?} for n = 0..3; {} comonoid homomorphisms = all maps",
        comon.category().n_morphisms()
    ))
}

fn c6_twisted() -> Check {
    let wa = check_twisted_iso(&walking_arrow()).map_err(err)?;
    ensure(wa.objects == [3, 3], || format!("walking arrow objects {:?}", wa.objects))?;
    let sq = check_twisted_iso(&commutative_square()).map_err(err)?;
    Ok(format!(
        "walking arrow {:?}/{:?}, square {:?}/{:?} objects/morphisms",
        wa.objects, wa.morphisms, sq.objects, sq.morphisms
    ))
}

fn c7_wiring() -> Check {
    let r = check_wiring_functorial(2, Limit::default()).map_err(err)?;
    ensure(r.report.is_pass(), || r.report.violations[0].to_string())?;
    let toggle = MooreMachine::toggle();
    let word = [1, 1, 0, 1];
    let direct = toggle.run(0, &word).map_err(err)?;
    let via = run_via_lenses(&toggle, 0, &word).map_err(err)?;
    for (name, t) in [("direct", &direct), ("lens oracle", &via)] {
        ensure(t.outputs == [0, 1, 0, 0, 1] && t.final_state == 1, || {
            format!("{name}: outputs {:?}, final {}", t.outputs, t.final_state)
        })?;
    }
    Ok(format!(
        "{} machines, {} wirings, {} triples; toggle trace [0,1,0,0,1]/final 1 both ways",
        r.machines, r.wirings, r.report.checks
    ))
}

fn c8_interchange() -> Check {
    let small = composable_pairs(&families_up_to(1, 1)).map_err(err)?;
    let large = composable_pairs(&families_up_to(2, 2)).map_err(err)?;
    let mut checks = 0;
    for (l, r) in [(&large, &small), (&small, &large), (&small, &small)] {
        let report = check_dep_interchange(l, r).map_err(err)?;
        ensure(report.is_pass(), || report.violations[0].to_string())?;
        checks += report.checks;
    }
    // both factors at size ≤ 2: seeded sample of the 2.4e9 quadruples
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let samples = 1_000_000;
    for _ in 0..samples {
        let (alpha, gamma) = &large[rng.gen_range(0..large.len())];
        let (beta, delta) = &large[rng.gen_range(0..large.len())];
        let lhs = alpha.tensor(beta).compose(&gamma.tensor(delta)).map_err(err)?;
        let rhs = alpha.compose(gamma).map_err(err)?.tensor(&beta.compose(delta).map_err(err)?);
        ensure(lhs == rhs, || format!("interchange fails for {alpha:?}, {beta:?}, {gamma:?}, {delta:?}"))?;
    }
    // the generic tensor on Lens built from the laxator, where the slice base is closed
    let s = slice_indexed_with(1, 1, Limit::default()).map_err(err)?;
    let base = s.cartesian_base().map_err(err)?;
    let t = LensTensor::new(&s.indexed, base, SliceLaxator(&s)).map_err(err)?;
    let lens = lens_category(&s.indexed).map_err(err)?;
    let generic = t.check_interchange(&lens).map_err(err)?;
    ensure(generic.is_pass(), || generic.violations[0].to_string())?;
    Ok(format!(
        "{checks} exhaustive quadruples with one side ≤ 2, {samples} sampled with both ≤ 2, {} generic checks",
        generic.checks
    ))
}

fn c9_adjoints() -> Check {
    let mut maps = 0;
    let mut checks = 0;
    for a in 0..=2 {
        for b in 0..=2 {
            for f in all_maps(a, b) {
                let r = check_adjoint_triple(&f, 2).map_err(err)?;
                ensure(r.is_pass(), || format!("{f:?}: {}", r.violations[0]))?;
                maps += 1;
                checks += r.checks;
            }
        }
    }
    Ok(format!("{maps} maps, {checks} hom-set bijections"))
}

struct Expect {
    args: &'static [&'static str],
    code: i32,
}

const fn e(args: &'static [&'static str], code: i32) -> Expect {
    Expect { args, code }
}

const MATRIX: &[Expect] = &[
    e(&["laws", "--kind", "category", "tests/fixtures/walking_arrow.json"], 0),
    e(&["laws", "--kind", "indexed", "tests/fixtures/slice2.json"], 0),
    e(&["laws", "--kind", "smc", "tests/fixtures/finset_cartesian.json"], 0),
    e(&["laws", "--kind", "smc", "tests/fixtures/finset_table.json"], 0),
    e(&["iso", "--construction", "tfae", "tests/fixtures/slice2.json"], 0),
    e(&["iso", "--construction", "tfae", "tests/fixtures/constant_terminal.json"], 0),
    e(&["iso", "--construction", "recover-usual", "tests/fixtures/finset_cartesian.json"], 0),
    e(&["iso", "--construction", "twisted-arrow", "tests/fixtures/walking_arrow.json"], 0),
    e(&["iso", "--construction", "twisted-arrow", "tests/fixtures/commutative_square.json"], 0),
    e(&["compose", "--kind", "classic", "tests/fixtures/identity_2_2.json", "tests/fixtures/toggle_lens.json"], 0),
    e(&["compose", "--kind", "prism", "tests/fixtures/prism_a.json", "tests/fixtures/prism_b.json"], 0),
    e(&["compose", "--kind", "generic", "tests/fixtures/dep_a.json", "tests/fixtures/dep_b.json"], 0),
    e(&["simulate", "tests/fixtures/toggle.json", "--inputs", "1,1,0,1", "--initial", "0", "--oracle"], 0),
    e(&["simulate", "tests/fixtures/toggle.json", "--inputs", ""], 0),
    e(&["enumerate-comonoids", "--smc", "finset-cartesian", "--size", "3"], 0),
    e(&["laws", "--kind", "category", "tests/fixtures/corrupt_comp.json"], 1),
    e(&["laws", "--kind", "indexed", "tests/fixtures/nonstrict_indexed.json"], 1),
    e(&["laws", "--kind", "smc", "tests/fixtures/planted_comonoid.json"], 1),
    e(&["iso", "--construction", "tfae", "tests/fixtures/nonstrict_indexed.json"], 1),
    e(&["iso", "--construction", "twisted-arrow", "tests/fixtures/corrupt_comp.json"], 1),
    e(&["compose", "--kind", "classic", "tests/fixtures/toggle_lens.json", "tests/fixtures/identity_3_3.json"], 1),
    e(&["simulate", "tests/fixtures/toggle.json", "--inputs", "1,2"], 1),
    e(&["simulate", "tests/fixtures/toggle.json", "--initial", "5"], 1),
    e(&["enumerate-comonoids", "--smc", "finset-cartesian", "--size", "3", "--limit", "100"], 1),
    e(&["laws", "--kind", "category", "tests/fixtures/truncated.json"], 2),
    e(&["laws", "--kind", "category", "tests/fixtures/wrong_schema.json"], 2),
    e(&["laws", "--kind", "indexed", "tests/fixtures/walking_arrow.json"], 2),
    e(&["laws", "--kind", "category", "tests/fixtures/no_such_file.json"], 2),
    e(&["iso", "--construction", "twisted-arrow", "tests/fixtures/truncated.json"], 2),
    e(&["compose", "--kind", "prism", "tests/fixtures/toggle_lens.json", "tests/fixtures/toggle_lens.json"], 2),
    e(&["simulate", "tests/fixtures/bad_machine.json"], 2),
    e(&["simulate", "tests/fixtures/toggle.json", "--inputs", "1,x"], 2),
    e(&["laws", "--kind", "nonsense", "tests/fixtures/walking_arrow.json"], 2),
];

fn run_cli(args: &[&str], format: &str) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_glens"))
        .args(args)
        .args(["--format", format])
        .env_remove("GLENS_LIMIT")
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")))
        .output()
        .map_err(err)?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn c10_cli() -> Check {
    let mut per_code = [0usize; 3];
    for case in MATRIX {
        for format in ["text", "json"] {
            let (code, first) = run_cli(case.args, format)?;
            ensure(code == case.code, || {
                format!("{:?} --format {format}: exit {code}, expected {}", case.args, case.code)
            })?;
            let (_, second) = run_cli(case.args, format)?;
            ensure(first == second, || format!("{:?} --format {format}: output differs between runs", case.args))?;
        }
        per_code[case.code as usize] += 1;
    }
    Ok(format!(
        "{} commands × 2 formats byte-identical on rerun; exits 0/1/2 on {}/{}/{} cases",
        MATRIX.len(),
        per_code[0],
        per_code[1],
        per_code[2]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("category laws of lens categories", c1_category_laws),
        ("three constructions agree", c2_tfae),
        ("coKleisli lenses recover the usual ones", c3_recover_usual),
        ("classic lens coherence", c4_classic),
        ("cartesian comonoids are unique", c5_fox),
        ("coslice lenses are twisted arrows", c6_twisted),
        ("wiring compositionality", c7_wiring),
        ("interchange for the slice tensor", c8_interchange),
        ("dependent sum and product adjunctions", c9_adjoints),
        ("CLI determinism and exit codes", c10_cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {why}", i + 1);
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
