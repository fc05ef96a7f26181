//! One PASS/FAIL line per acceptance criterion. Runs without the libtest harness so the
//! lines always appear in `cargo test` output; exits non-zero if any criterion fails.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use diho::dihomology::{ha1, path_dimension_matrix, DimensionMatrix, QuotientMode};
use diho::exactalg::scalar::int;
use diho::exactalg::{linearize_functor, AlgebraElement, FiniteCategory, Functor};
use diho::precubical::{
    empty_square, filled_square, hollow_cube, kronecker_quiver, loop_graph, two_half_circles, two_holes_left,
    two_holes_right, PrecubicalSet,
};
use diho::simplicial::{
    check_simplicial, disjoint_union_les_report, eckmann_hilton_check, free_module, moore_normalize,
    random_simplicial_algebra, trace_complex, trace_pair, SimplicialSet, TruncatedSimplicialAlgebra,
};
use diho::tracealg::path_algebra;

/// Wall-clock budget for each criterion.
const TIME_LIMIT: Duration = Duration::from_secs(10);
const KRONECKER_PAIRS: usize = 20;
const KRONECKER_SEED: u64 = 0x6b72;
const FUNCTOR_TRIALS: u64 = 100;
const EH_SEEDS: u64 = 200;
const LES_WORD_CAP: usize = 2;
const RELABEL_TRIALS: u64 = 10;

type Outcome = Result<String, String>;
type GradeKey = (String, String);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn matrix_of(rows: &[&[usize]], order: &[&str]) -> Vec<Vec<usize>> {
    rows.iter().map(|r| (0..order.len()).map(|j| r.get(j).copied().unwrap_or(0)).collect()).collect()
}

/// Compares `m` against `expected` indexed by `order` (rows are sources).
fn compare(m: &DimensionMatrix, order: &[&str], expected: &[Vec<usize>], what: &str) -> Result<(), String> {
    for (i, s) in order.iter().enumerate() {
        for (j, t) in order.iter().enumerate() {
            let e = m.get(s, t).ok_or_else(|| format!("{what}: vertex {s} or {t} missing"))?;
            if e.rank != expected[i][j] || !e.torsion.is_empty() {
                return Err(format!("{what}: ({s},{t}) is {e}, expected R^{}", expected[i][j]));
            }
        }
    }
    Ok(())
}

const SQUARE_ORDER: [&str; 4] = ["1", "2", "3", "4"];
const GRID_ORDER: [&str; 9] = ["1", "2", "3", "4", "5", "6", "7", "8", "9"];

fn square_paths() -> Vec<Vec<usize>> {
    matrix_of(&[&[1], &[1, 1], &[1, 0, 1], &[2, 1, 1, 1]], &SQUARE_ORDER)
}

fn grid_paths() -> Vec<Vec<usize>> {
    matrix_of(
        &[
            &[1],
            &[1, 1],
            &[1, 1, 1],
            &[1, 0, 0, 1],
            &[2, 1, 0, 1, 1],
            &[3, 2, 1, 1, 1, 1],
            &[1, 0, 0, 1, 0, 0, 1],
            &[3, 1, 0, 2, 1, 0, 1, 1],
            &[6, 3, 1, 3, 2, 1, 1, 1, 1],
        ],
        &GRID_ORDER,
    )
}

fn criterion_1() -> Outcome {
    compare(
        &path_dimension_matrix(&empty_square(), None).map_err(|e| e.to_string())?,
        &SQUARE_ORDER,
        &square_paths(),
        "empty square",
    )?;
    for (name, c) in [("two-holes left", two_holes_left()), ("two-holes right", two_holes_right())] {
        let m = path_dimension_matrix(&c, None).map_err(|e| e.to_string())?;
        compare(&m, &GRID_ORDER, &grid_paths(), name)?;
    }
    Ok("4x4 and both 9x9 path matrices equal entry-for-entry".into())
}

fn criterion_2() -> Outcome {
    let expected = matrix_of(&[&[1], &[1, 1], &[1, 0, 1], &[1, 1, 1, 1]], &SQUARE_ORDER);
    for mode in QuotientMode::ALL {
        let m = ha1(&filled_square(), mode, None).map_err(|e| e.to_string())?.dimension_matrix();
        compare(&m, &SQUARE_ORDER, &expected, &format!("filled square, {mode}"))?;
    }
    Ok("filled square HA_1 matrix equal in ideal, image and local modes".into())
}

/// Brute-force `HA_1` dimensions: every `u·(top·right - left·bottom)·v` vector, ranked
/// per grade with dense rational elimination. Uses only the raw face data.
fn ideal_oracle(c: &PrecubicalSet) -> BTreeMap<GradeKey, usize> {
    let fs = c.faces();
    let out_edges = |v: &str| -> Vec<String> { c.edges().iter().filter(|e| fs[*e].zero[0] == v).cloned().collect() };
    let mut paths: Vec<(String, Vec<String>, String)> = Vec::new();
    for v in c.vertices() {
        let mut stack = vec![(v.clone(), Vec::<String>::new())];
        while let Some((end, p)) = stack.pop() {
            for e in out_edges(&end) {
                let mut q = p.clone();
                q.push(e.clone());
                stack.push((fs[&e].one[0].clone(), q));
            }
            paths.push((v.clone(), p, end));
        }
    }
    let mut by_grade: BTreeMap<GradeKey, Vec<(String, Vec<String>)>> = BTreeMap::new();
    for (s, p, t) in &paths {
        by_grade.entry((s.clone(), t.clone())).or_default().push((s.clone(), p.clone()));
    }
    let mut vectors: BTreeMap<GradeKey, Vec<Vec<(usize, i64)>>> = BTreeMap::new();
    for sq in c.squares() {
        let f = &fs[sq];
        let (left, top) = (&f.zero[0], &f.zero[1]);
        let (right, bottom) = (&f.one[0], &f.one[1]);
        let corner0 = &fs[top].zero[0];
        let corner1 = &fs[right].one[0];
        for (us, u, ut) in &paths {
            if ut != corner0 {
                continue;
            }
            for (vs, v, vt) in &paths {
                if vs != corner1 {
                    continue;
                }
                let grade = (us.clone(), vt.clone());
                let words = &by_grade[&grade];
                let pos = |mid: [&String; 2]| {
                    let mut w = u.clone();
                    w.extend(mid.iter().map(|s| s.to_string()));
                    w.extend(v.iter().cloned());
                    words.iter().position(|(_, p)| *p == w).expect("concatenation is a path")
                };
                vectors.entry(grade).or_default().push(vec![(pos([top, right]), 1), (pos([left, bottom]), -1)]);
            }
        }
    }
    by_grade
        .iter()
        .map(|(g, words)| {
            let rows = vectors.get(g).cloned().unwrap_or_default();
            (g.clone(), words.len() - dense_rank(words.len(), &rows))
        })
        .collect()
}

fn dense_rank(cols: usize, rows: &[Vec<(usize, i64)>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![BigRational::zero(); cols];
            for &(j, x) in r {
                row[j] += BigRational::from_integer(x.into());
            }
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = row[col].clone() / pivot_row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= f.clone() * y.clone();
                }
            }
        }
        rank += 1;
    }
    rank
}

fn criterion_3() -> Outcome {
    let local_points = [(true, [("9", "5"), ("5", "1")]), (false, [("8", "4"), ("6", "2")])];
    let mut ideals = Vec::new();
    for (left, points) in local_points {
        let (name, c) = if left { ("left", two_holes_left()) } else { ("right", two_holes_right()) };
        let local = ha1(&c, QuotientMode::Local, None).map_err(|e| e.to_string())?.dimension_matrix();
        for (s, t) in points {
            ensure(local.rank(s, t) == 1 && local.is_free(), || format!("{name} local ({s},{t}) is not R"))?;
        }
        let ideal = ha1(&c, QuotientMode::Ideal, None).map_err(|e| e.to_string())?.dimension_matrix();
        let oracle = ideal_oracle(&c);
        for s in GRID_ORDER {
            for t in GRID_ORDER {
                let want = oracle.get(&(s.to_string(), t.to_string())).copied().unwrap_or(0);
                ensure(ideal.rank(s, t) == want && ideal.is_free(), || {
                    format!("{name} ideal ({s},{t}) = {}, oracle {want}", ideal.rank(s, t))
                })?;
            }
        }
        ideals.push(ideal);
    }
    let padded = [(("9", "1"), 3), (("9", "4"), 2), (("9", "2"), 2), (("6", "1"), 2), (("8", "1"), 2)];
    for ((s, t), v) in padded {
        ensure(ideals[0].rank(s, t) == v, || format!("left ideal ({s},{t}) = {}, expected {v}", ideals[0].rank(s, t)))?;
    }
    ensure(ideals[0] != ideals[1], || "left and right ideal matrices coincide".into())?;
    Ok(format!(
        "local endpoint grades are R; ideal matrices equal the brute-force oracle on all 81 grades; \
         left (9,1)={} vs right (9,1)={}",
        ideals[0].rank("9", "1"),
        ideals[1].rank("9", "1")
    ))
}

fn criterion_4() -> Outcome {
    let p = path_algebra(&kronecker_quiver(), None).map_err(|e| e.to_string())?;
    let alg = p.algebra();
    let basis = |start: &str, edges: &[&str]| p.element(start, edges).expect("kronecker word");
    let (e1, e2, al, be) = (basis("1", &[]), basis("2", &[]), basis("1", &["α"]), basis("1", &["β"]));
    let encode = |[a, b, c, d]: [i64; 4]| {
        let mut x = AlgebraElement::zero();
        x.add_scaled(&int(a), &e2);
        x.add_scaled(&int(b), &al);
        x.add_scaled(&int(c), &be);
        x.add_scaled(&int(d), &e1);
        x
    };
    let mut rng = ChaCha8Rng::seed_from_u64(KRONECKER_SEED);
    for k in 0..KRONECKER_PAIRS {
        let x: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-9..=9));
        let y: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-9..=9));
        let [a, b, c, d] = x;
        let [a2, b2, c2, d2] = y;
        let formula = [a2 * a, a2 * b + b2 * d, a2 * c + c2 * d, d2 * d];
        let got = alg.multiply(&encode(x), &encode(y)).map_err(|e| e.to_string())?;
        ensure(got == encode(formula), || format!("pair {k}: {x:?} × {y:?} gives {}", alg.format_element(&got)))?;
    }
    Ok(format!("{KRONECKER_PAIRS} seeded pairs agree with the matrix formula exactly"))
}

fn criterion_5() -> Outcome {
    let c = loop_graph();
    for cap in [1usize, 5, 10] {
        for mode in QuotientMode::ALL {
            let h = ha1(&c, mode, Some(cap)).map_err(|e| e.to_string())?;
            let dim = h.dimension_matrix().rank("u", "u");
            ensure(dim == cap + 1, || format!("L={cap} {mode}: dim {dim}"))?;
        }
        let h = ha1(&c, QuotientMode::Ideal, Some(cap)).map_err(|e| e.to_string())?;
        let power = |k: usize| h.base().element("u", &vec!["t"; k]).expect("power within cap");
        for i in 0..=cap {
            for j in 0..=cap - i {
                let prod = h.multiply_classes(&power(i), &power(j)).map_err(|e| e.to_string())?;
                ensure(h.elements_equal(&prod, &power(i + j)) == Some(true), || {
                    format!("L={cap}: t^{i} t^{j} is not t^{}", i + j)
                })?;
            }
        }
    }
    Ok("dim (u,u) = L+1 for L in {1,5,10} in every mode; t^i t^j = t^(i+j) for i+j <= L".into())
}

fn unit_vector(dim: usize, k: usize) -> String {
    let parts: Vec<&str> = (0..dim).map(|i| if i == k { "1" } else { "0" }).collect();
    format!("({})", parts.join(","))
}

/// A random target category on `n` objects (poset or free on a DAG) and a random free
/// source mapped injectively into it.
fn random_functor(seed: u64) -> Result<Functor, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=5);
    let names: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
    let objs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.4) {
                arrows.push((a, b));
            }
        }
    }
    arrows.truncate(6);
    let target = if rng.gen_bool(0.5) {
        let mut reach = vec![vec![false; n]; n];
        for (a, row) in reach.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in &arrows {
            reach[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        FiniteCategory::poset(&objs, |a, b| reach[a][b])
    } else {
        let labels: Vec<String> = (0..arrows.len()).map(|k| format!("g{k}")).collect();
        let quiver: Vec<(&str, usize, usize)> =
            arrows.iter().zip(&labels).map(|(&(a, b), l)| (l.as_str(), a, b)).collect();
        FiniteCategory::free(&objs, &quiver)
    }
    .map_err(|e| e.to_string())?;
    let target = Arc::new(target);

    let k = rng.gen_range(1..=n);
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(&mut rng);
    image.truncate(k);
    let mut src_arrows = Vec::new();
    let mut arrow_images = Vec::new();
    for _ in 0..rng.gen_range(0..=4) {
        let (x, y) = (rng.gen_range(0..k), rng.gen_range(0..k));
        let hom = target.hom(image[x], image[y]);
        if x == y || hom.is_empty() {
            continue;
        }
        src_arrows.push((format!("f{}", src_arrows.len()), x, y));
        arrow_images.push(*hom.choose(&mut rng).expect("nonempty hom"));
    }
    let src_names: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
    let src_objs: Vec<&str> = src_names.iter().map(String::as_str).collect();
    let quiver: Vec<(&str, usize, usize)> = src_arrows.iter().map(|(l, a, b)| (l.as_str(), *a, *b)).collect();
    let source = Arc::new(FiniteCategory::free(&src_objs, &quiver).map_err(|e| e.to_string())?);
    Functor::from_free(source, target, image, &arrow_images).map_err(|e| e.to_string())
}

fn criterion_6() -> Outcome {
    let two = Arc::new(FiniteCategory::discrete(&["α", "β"]));
    let one = Arc::new(FiniteCategory::discrete(&["*"]));
    let collapse = Functor::new(two, one, vec![0, 0], vec![0, 0]).map_err(|e| e.to_string())?;
    let m = linearize_functor(&collapse).map_err(|e| e.to_string())?;
    let check = m.algebra_map_check();
    ensure(!check.is_algebra_map, || "collapse functor passed the check".into())?;
    let (x, y) = check.witness.clone().ok_or("no witness reported")?;
    let dom = m.domain();
    let coords = |w: &str| dom.word_index(w).map(|k| unit_vector(dom.dim(), k)).unwrap_or_default();
    let witness = format!("({}, {})", coords(&x), coords(&y));
    ensure(witness == "((1,0), (0,1))", || format!("witness {witness}"))?;

    let mut morphisms = 0;
    for seed in 0..FUNCTOR_TRIALS {
        let f = random_functor(seed)?;
        ensure(f.is_injective_on_objects(), || format!("seed {seed}: not injective on objects"))?;
        let lin = linearize_functor(&f).map_err(|e| e.to_string())?;
        let c = lin.algebra_map_check();
        ensure(c.is_algebra_map, || format!("seed {seed}: fails with witness {:?}", c.witness))?;
        morphisms += lin.domain().dim();
    }
    Ok(format!(
        "collapse witness {witness}; {FUNCTOR_TRIALS} random injective functors pass ({morphisms} source morphisms)"
    ))
}

/// Rank of homology of the unnormalized chain complex `Z[X_n]`, `∂ = Σ (-1)^i d_i`.
fn unnormalized_homology(x: &SimplicialSet, n: usize) -> usize {
    let boundary = |k: usize| -> Vec<Vec<(usize, i64)>> {
        (0..x.elements(k).len())
            .map(|e| {
                let mut col: BTreeMap<usize, i64> = BTreeMap::new();
                for i in 0..=k {
                    *col.entry(x.face(k, i, e)).or_default() += if i % 2 == 0 { 1 } else { -1 };
                }
                col.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect()
    };
    let dim = x.elements(n).len();
    let out = if n == 0 { 0 } else { dense_rank(x.elements(n - 1).len(), &boundary(n)) };
    let inc = dense_rank(dim, &boundary(n + 1));
    dim - out - inc
}

fn criterion_7() -> Outcome {
    let mut objects: Vec<(String, TruncatedSimplicialAlgebra)> = Vec::new();
    let acyclic = [
        ("empty square", empty_square()),
        ("filled square", filled_square()),
        ("two-holes left", two_holes_left()),
        ("two-holes right", two_holes_right()),
        ("kronecker", kronecker_quiver()),
        ("hollow cube", hollow_cube()),
    ];
    for (name, c) in &acyclic {
        objects.push((format!("trace {name}"), trace_complex(c, None).map_err(|e| e.to_string())?.simplicial));
        objects.push((format!("pair {name}"), trace_pair(c, None).map_err(|e| e.to_string())?));
    }
    for (name, c) in [("loop", loop_graph()), ("half circles", two_half_circles())] {
        objects.push((format!("trace {name}"), trace_complex(&c, Some(4)).map_err(|e| e.to_string())?.simplicial));
    }
    let sets = SimplicialSet::examples(3);
    for x in &sets {
        objects.push((format!("free {}", x.name), free_module(x)));
    }
    for (name, s) in &objects {
        let m = moore_normalize(s).map_err(|e| format!("{name}: {e}"))?;
        ensure(m.boundary_squares_vanish(), || format!("{name}: ∂∘∂ ≠ 0"))?;
    }

    for x in &sets {
        let m = moore_normalize(&free_module(x)).map_err(|e| e.to_string())?;
        for n in 0..x.top() {
            let h = m.homology_total(n);
            let want = unnormalized_homology(x, n);
            ensure(h.rank == want && h.torsion.is_empty(), || format!("{} H_{n}: Moore {h}, oracle R^{want}", x.name))?;
        }
    }

    let (mut pairs, mut nonvacuous) = (0, 0);
    for seed in 0..EH_SEEDS {
        let (desc, s) = random_simplicial_algebra(seed);
        ensure(check_simplicial(&s).is_empty(), || format!("seed {seed} ({desc}) is not simplicial"))?;
        let m = moore_normalize(&s).map_err(|e| format!("seed {seed}: {e}"))?;
        let r = eckmann_hilton_check(&s, &m, 1).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("seed {seed} ({desc}): counterexample {:?}", r.witness))?;
        pairs += r.pairs_checked;
        nonvacuous += usize::from(r.pairs_checked > 0);
    }
    Ok(format!(
        "∂∘∂ = 0 on {} objects; Moore = unnormalized on {} simplicial sets; \
         no EH counterexample over {EH_SEEDS} seeds ({nonvacuous} with cycles, {pairs} products)",
        objects.len() + EH_SEEDS as usize,
        sets.len()
    ))
}

fn criterion_8() -> Outcome {
    let pairs = [
        ("filled + filled", filled_square(), filled_square()),
        ("filled + empty", filled_square(), empty_square()),
        ("two-holes left + kronecker", two_holes_left(), kronecker_quiver()),
    ];
    let mut dims = Vec::new();
    for (name, a, b) in &pairs {
        let r = disjoint_union_les_report(a, &b.prefixed("r."), QuotientMode::Ideal, None, LES_WORD_CAP)
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(r.block_sum_matches, || format!("{name}: union is not the block sum"))?;
        ensure(r.exact(), || format!("{name}: not exact at {:?}", r.positions))?;
        dims.push(format!("{name} ker {}/{}", r.kernel_dim, r.coproduct_dim));
    }
    Ok(format!("block sums match and sequences exact (word cap {LES_WORD_CAP}): {}", dims.join(", ")))
}

/// Shuffles vertex names among themselves, renames edges and squares, and permutes the
/// declaration order of every cell list.
fn relabeled(c: &PrecubicalSet, rng: &mut ChaCha8Rng) -> (PrecubicalSet, HashMap<String, String>) {
    let mut targets = c.vertices().to_vec();
    targets.shuffle(rng);
    let mut map: HashMap<String, String> = c.vertices().iter().cloned().zip(targets).collect();
    for id in c.edges().iter().chain(c.squares()) {
        map.insert(id.clone(), format!("{id}'"));
    }
    let r = c.relabel(&map);
    let cells = (0..3)
        .map(|n| {
            let mut l = r.cells(n).to_vec();
            l.shuffle(rng);
            l
        })
        .collect();
    (PrecubicalSet::new(cells, r.faces().clone()), map)
}

fn criterion_9() -> Outcome {
    let complexes = [
        ("filled square", filled_square()),
        ("two-holes left", two_holes_left()),
        ("two-holes right", two_holes_right()),
        ("hollow cube", hollow_cube()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checks = 0;
    for (name, c) in &complexes {
        for mode in QuotientMode::ALL {
            let m = ha1(c, mode, None).map_err(|e| e.to_string())?.dimension_matrix();
            for trial in 0..RELABEL_TRIALS {
                let (c2, map) = relabeled(c, &mut rng);
                ensure(c2.is_valid(), || format!("{name}: relabeled complex invalid"))?;
                let m2 = ha1(&c2, mode, None).map_err(|e| e.to_string())?.dimension_matrix();
                let order: Vec<String> = m.order.iter().map(|v| map[v].clone()).collect();
                let conj = m2.reordered(&order).map_err(|e| e.to_string())?;
                ensure(conj.entries == m.entries, || {
                    format!("{name} {mode} trial {trial}: not permutation-conjugate")
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!(
        "excluded: empty-cube HA_2 generator count and general dihomeomorphism invariance; \
         {checks} relabelings give permutation-conjugate matrices"
    ))
}

fn main() {
    let criteria: [fn() -> Outcome; 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    let mut failed = 0;
    for (k, f) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|m| {
            if elapsed <= TIME_LIMIT {
                Ok(m)
            } else {
                Err(format!("took {elapsed:.2?}, limit {TIME_LIMIT:?}"))
            }
        });
        match result {
            Ok(msg) => println!("criterion {}: PASS [{elapsed:.2?}] {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL [{elapsed:.2?}] {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
