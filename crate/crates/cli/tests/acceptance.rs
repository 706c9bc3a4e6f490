//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so the report is always printed; the
//! process exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use microforms::forms::{
    classical_to_microcube, derivative_report, exterior_derivative, integral, microcube_to_classical, ClassicalForm,
    Microcube,
};
use microforms::oracle::{classical_d, corpus, diff, vector_calculus_views};
use microforms::perm::Permutation;
use microforms::prolongation::{
    canonical_i, eval_over_weil, kock_lawvere_split, product_pullback, tangent_decompose, tangent_line,
    tangent_sum_via_d2, WeilPoint,
};
use microforms::weil::{InfinitesimalPresentation, WeilAlgebra, WeilElement, WeilError, WeilMorphism};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;
const TIME_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn elem_dev(a: &[WeilElement], b: &[WeilElement]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.distance(y).expect("same algebra")).fold(0.0, f64::max)
}

fn table_dev(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| max_dev(x, y)).fold(0.0, f64::max)
}

fn point_dev(a: &WeilPoint, b: &WeilPoint) -> f64 {
    a.distance(b).expect("comparable points")
}

/// Standard monomials by enumeration of the bounding box.
fn brute_force_dim(bounds: &[u32], products: &[Vec<usize>]) -> usize {
    let total: u32 = bounds.iter().product();
    (0..total)
        .filter(|&code| {
            let mut c = code;
            let e: Vec<u32> = bounds
                .iter()
                .map(|&b| {
                    let v = c % b;
                    c /= b;
                    v
                })
                .collect();
            !products.iter().any(|p| p.iter().all(|&j| e[j] >= 1))
        })
        .count()
}

fn algebra_kernel() -> Outcome {
    let table: [(&str, InfinitesimalPresentation, Vec<u32>, Vec<Vec<usize>>, usize); 6] = [
        ("D", InfinitesimalPresentation::d(), vec![2], vec![], 2),
        ("D_2", InfinitesimalPresentation::d_order(2), vec![3], vec![], 3),
        ("D(2)", InfinitesimalPresentation::d_of(2), vec![2, 2], vec![vec![0, 1]], 3),
        ("D^2", InfinitesimalPresentation::cube(2), vec![2, 2], vec![], 4),
        ("D(3)", InfinitesimalPresentation::d_of(3), vec![2, 2, 2], vec![vec![0, 1], vec![0, 2], vec![1, 2]], 4),
        ("D^3", InfinitesimalPresentation::cube(3), vec![2, 2, 2], vec![], 8),
    ];
    let mut ok = true;
    let mut dims = Vec::new();
    for (name, p, bounds, products, expected) in &table {
        let dim = WeilAlgebra::shared(p).dim();
        ok &= dim == *expected && brute_force_dim(bounds, products) == *expected;
        dims.push(format!("{name}:{dim}"));
    }
    let mut r = rng(1);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let alg = WeilAlgebra::shared(&corpus::presentation(&mut r, 3));
        let [a, b, c] = [0; 3].map(|_| corpus::element(&mut r, &alg, 5));
        let checks = [
            (&(&a * &b) * &c).distance(&(&a * &(&b * &c))),
            (&a * &b).distance(&(&b * &a)),
            (&a * &(&b + &c)).distance(&(&(&a * &b) + &(&a * &c))),
            (&(&a + &b) + &c).distance(&(&a + &(&b + &c))),
            (&a + &b).distance(&(&b + &a)),
            (&a * &alg.one()).distance(&a),
        ];
        worst = checks.into_iter().map(|d| d.expect("same algebra")).fold(worst, f64::max);
    }
    ok &= worst == 0.0;
    outcome(ok, format!("dims {{{}}}; ring laws on 1000 triples, max deviation {worst:e}", dims.join(", ")))
}

fn oplus_laws() -> Outcome {
    let d = InfinitesimalPresentation::d();
    let base = d.oplus(&d).unwrap() == InfinitesimalPresentation::d_of(2);
    let mut r = rng(2);
    let mut mismatches = 0;
    for _ in 0..200 {
        let [a, b, c] = [0; 3].map(|_| corpus::simplicial(&mut r, 3));
        let lhs = a.oplus(&b).unwrap().oplus(&c).unwrap();
        let rhs = a.oplus(&b.oplus(&c).unwrap()).unwrap();
        mismatches += usize::from(lhs != rhs);
    }
    outcome(base && mismatches == 0, format!("D+D = D(2): {base}; associativity mismatches {mismatches}/200"))
}

type Poly = BTreeMap<Vec<u32>, f64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0.0) += ca * cb;
        }
    }
    out
}

/// Substitutes the images into every defining relation of `cod` and reduces
/// modulo the relations of `dom`.
fn substitution_oracle(dom: &InfinitesimalPresentation, cod: &InfinitesimalPresentation, images: &[WeilElement]) -> bool {
    let polys: Vec<Poly> = images
        .iter()
        .map(|img| img.algebra().basis().iter().cloned().zip(img.coeffs().iter().copied()).collect())
        .collect();
    let one: Poly = [(vec![0; dom.num_vars()], 1.0)].into_iter().collect();
    let vanishes = |e: &[u32]| {
        e.iter().zip(dom.bounds()).any(|(x, b)| x >= b) || dom.products().iter().any(|p| p.iter().all(|&j| e[j] > 0))
    };
    let mut relations: Vec<Vec<usize>> = cod.bounds().iter().enumerate().map(|(j, &b)| vec![j; b as usize]).collect();
    relations.extend(cod.products().iter().cloned());
    relations.iter().all(|rel| {
        let product = rel.iter().fold(one.clone(), |acc, &j| poly_mul(&acc, &polys[j]));
        product.iter().all(|(e, c)| *c == 0.0 || vanishes(e))
    })
}

fn morphism_well_definedness() -> Outcome {
    let d = InfinitesimalPresentation::d();
    let d2 = InfinitesimalPresentation::d_order(2);
    let w = WeilAlgebra::shared(&d2);
    let x = w.var(0).unwrap();
    let square = WeilMorphism::new(&d2, &d, vec![&x * &x]).is_ok();
    let inclusion = matches!(WeilMorphism::new(&d2, &d, vec![x]), Err(WeilError::NotWellDefined { .. }));
    let mut r = rng(3);
    let (mut agree, mut accepted) = (0, 0);
    for _ in 0..100 {
        let dom = corpus::presentation(&mut r, 2);
        let cod = corpus::presentation(&mut r, 2);
        let alg = WeilAlgebra::shared(&dom);
        let images: Vec<WeilElement> = (0..cod.num_vars())
            .map(|_| {
                let c = (0..alg.dim()).map(|k| if k == 0 { 0.0 } else { r.gen_range(-1..=1) as f64 }).collect();
                WeilElement::from_coeffs(&alg, c).unwrap()
            })
            .collect();
        let checker = WeilMorphism::new(&dom, &cod, images.clone()).is_ok();
        accepted += usize::from(checker);
        agree += usize::from(checker == substitution_oracle(&dom, &cod, &images));
    }
    outcome(
        square && inclusion && agree == 100,
        format!("square accepted: {square}; inclusion rejected: {inclusion}; {agree}/100 agree ({accepted} accepted)"),
    )
}

fn taylor_jets() -> Outcome {
    let alg = WeilAlgebra::shared(&InfinitesimalPresentation::d_order(4));
    let mut r = rng(4);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let f = corpus::analytic(&mut r, 3);
        let c = r.gen_range(-1.5..1.5);
        let p = WeilPoint::new(&alg, vec![alg.var(0).unwrap().add_constant(c)]).unwrap();
        let jet = eval_over_weil(&f, &p).unwrap();
        let (mut g, mut fact) = (f.clone(), 1.0);
        for j in 0..5u32 {
            if j > 0 {
                g = diff(&g, 0);
                fact *= j as f64;
            }
            let exact = g.eval(&[c]).unwrap() / fact;
            let dev = (jet.coeff(&[j]) - exact).abs();
            // relative where the derivative is not zero
            worst = worst.max(if exact.abs() > 1e-12 { dev / exact.abs() } else { dev });
        }
    }
    outcome(worst <= 1e-9, format!("50 expressions over R[X]/(X^5), max relative deviation {worst:e}"))
}

fn tangent_addition() -> Outcome {
    let mut r = rng(5);
    let zero = [0.0; 4];
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let t1 = canonical_i(&zero, &[corpus::point(&mut r, 4, 5.0)]).unwrap();
        let t2 = canonical_i(&zero, &[corpus::point(&mut r, 4, 5.0)]).unwrap();
        worst = worst.max(point_dev(&tangent_sum_via_d2(&t1, &t2).unwrap(), &t1.try_add(&t2).unwrap()));
    }
    outcome(worst == 0.0, format!("200 tangent pairs in R^4, max deviation {worst:e}"))
}

fn kock_lawvere() -> Outcome {
    let mut r = rng(6);
    let (mut exact, mut remark) = (0.0f64, 0.0f64);
    let w = WeilAlgebra::shared(&InfinitesimalPresentation::d());
    for _ in 0..200 {
        let m = r.gen_range(1..=4);
        let zero = vec![0.0; m];
        let a: Vec<f64> = (0..m).map(|_| r.gen_range(-5.0..5.0)).collect();
        exact = exact.max(max_dev(&kock_lawvere_split(&canonical_i(&zero, &[a.clone()]).unwrap()).unwrap(), &a));
        let coords = (0..m).map(|_| w.var(0).unwrap().scale(r.gen_range(-5.0..5.0))).collect();
        let t = WeilPoint::new(&w, coords).unwrap();
        exact = exact.max(point_dev(&canonical_i(&zero, &[kock_lawvere_split(&t).unwrap()]).unwrap(), &t));
        let x: Vec<f64> = (0..m).map(|_| r.gen_range(-5.0..5.0)).collect();
        let (bx, ba) = tangent_decompose(&canonical_i(&x, &[a.clone()]).unwrap()).unwrap();
        exact = exact.max(max_dev(&bx, &x)).max(max_dev(&ba, &a));
        let s = canonical_i(&x, &[a]).unwrap();
        remark = remark.max(point_dev(&tangent_line(&s).unwrap(), &product_pullback(&s).unwrap()));
    }
    outcome(
        exact == 0.0 && remark <= 1e-12,
        format!("200 samples, round trips max deviation {exact:e}; i(0,t) vs pullback along d1*d2 {remark:e}"),
    )
}

fn form_bijection() -> Outcome {
    let mut r = rng(7);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (m, n) = corpus::form_shape(&mut r);
        let omega = corpus::polynomial_form(&mut r, m, n);
        let x: Vec<f64> = (0..m).map(|_| r.gen_range(-2.0..2.0)).collect();
        let tilde = classical_to_microcube(&omega);
        let back = microcube_to_classical(&tilde);
        worst = worst.max(table_dev(&back.component_values_real(&x).unwrap(), &omega.component_values_real(&x).unwrap()));
        let gamma = corpus::microcube(&mut r, n, m, 2.0);
        let again = classical_to_microcube(&back);
        worst = worst.max(elem_dev(&again.evaluate(&gamma).unwrap(), &tilde.evaluate(&gamma).unwrap()));
        if n < m {
            let rho = exterior_derivative(&tilde);
            let rebuilt = classical_to_microcube(&microcube_to_classical(&rho));
            let g = corpus::microcube(&mut r, n + 1, m, 2.0);
            worst = worst.max(elem_dev(&rebuilt.evaluate(&g).unwrap(), &rho.evaluate(&g).unwrap()));
        }
    }
    outcome(worst <= 1e-9, format!("100 forms, both round trips max deviation {worst:e}"))
}

fn integral_properties() -> Outcome {
    let mut r = rng(8);
    let (mut residual, mut worst) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let (m, n) = loop {
            let s = corpus::form_shape(&mut r);
            if s.1 >= 1 {
                break s;
            }
        };
        let w = classical_to_microcube(&corpus::polynomial_form(&mut r, m, n));
        let g = corpus::microcube(&mut r, n, m, 2.0);
        let v = integral(&w, &g).unwrap();
        residual = residual.max(v.homogeneity_residual());
        let i = r.gen_range(0..n);
        let alpha = r.gen_range(-3.0..3.0);
        let scaled = integral(&w, &g.scale_at(i, alpha).unwrap()).unwrap();
        worst = worst.max(scaled.distance(&v.scale(alpha)).unwrap());
        let sigma = corpus::permutation(&mut r, n);
        let permuted = integral(&w, &g.permute(&sigma).unwrap()).unwrap();
        worst = worst.max(permuted.distance(&v.scale(sigma.sign() as f64)).unwrap());
    }
    outcome(
        residual < 1e-12 && worst <= 1e-9,
        format!("100 samples, residual {residual:e}, homogeneity/alternation deviation {worst:e}"),
    )
}

fn witness(text: &str) -> ClassicalForm {
    ClassicalForm::from_json(text).unwrap()
}

/// Shared corpus for the main check and the homogeneity shadow.
fn corpus_samples() -> Vec<(ClassicalForm, Vec<f64>, Microcube)> {
    let mut r = rng(9);
    (0..200)
        .map(|_| {
            let (m, n) = corpus::form_shape(&mut r);
            let omega = corpus::polynomial_form(&mut r, m, n);
            let x = (0..m).map(|_| r.gen_range(-2.0..2.0)).collect();
            let gamma = corpus::microcube(&mut r, n + 1, m, 2.0);
            (omega, x, gamma)
        })
        .collect()
}

fn main_theorem() -> Outcome {
    let mut worst = 0.0f64;
    for (omega, x, gamma) in corpus_samples() {
        let classical = classical_d(&omega).unwrap();
        let geometric = exterior_derivative(&classical_to_microcube(&omega));
        let lhs = microcube_to_classical(&geometric).component_values_real(&x).unwrap();
        worst = worst.max(table_dev(&lhs, &classical.component_values_real(&x).unwrap()));
        if omega.degree() < omega.dim() {
            let on_cube = geometric.evaluate(&gamma).unwrap();
            worst = worst.max(elem_dev(&on_cube, &classical_to_microcube(&classical).evaluate(&gamma).unwrap()));
        }
    }
    let x = [0.7, -1.3, 2.1];
    let geometric = |w: &ClassicalForm| {
        microcube_to_classical(&exterior_derivative(&classical_to_microcube(w))).component_values_real(&x).unwrap()
    };
    let views = |w: &ClassicalForm| -> Vec<f64> {
        vector_calculus_views(w).unwrap().iter().map(|(_, e)| e.eval(&x).unwrap()).collect()
    };
    let f = witness(r#"{"dim": 3, "degree": 0, "components": {"": ["x1 * x2 * x3"]}}"#);
    let curl = witness(r#"{"dim": 3, "degree": 1, "components": {"1": ["-x2"], "2": ["x1"]}}"#);
    let div = witness(r#"{"dim": 3, "degree": 2, "components": {"2,3": ["x1"]}}"#);
    let grad = vec![x[1] * x[2], x[0] * x[2], x[0] * x[1]];
    let flat = |t: Vec<Vec<f64>>| t.into_iter().flatten().collect::<Vec<f64>>();
    let witnesses = [
        max_dev(&flat(geometric(&f)), &grad),
        max_dev(&views(&f), &grad),
        max_dev(&flat(geometric(&curl)), &[2.0, 0.0, 0.0]),
        max_dev(&views(&curl), &[0.0, 0.0, 2.0]),
        max_dev(&flat(geometric(&div)), &[1.0]),
        max_dev(&views(&div), &[1.0]),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    outcome(
        worst <= 1e-8 && witnesses <= 1e-10,
        format!("200 corpus forms, max deviation {worst:e}; grad/curl/div witnesses {witnesses:e}"),
    )
}

fn dd_zero() -> Outcome {
    let mut r = rng(10);
    let mut worst = 0.0f64;
    for k in 0..100 {
        let m = 3 + k % 2;
        let n = (k / 2) % 2;
        let omega = corpus::polynomial_form(&mut r, m, n);
        let dd = exterior_derivative(&exterior_derivative(&classical_to_microcube(&omega)));
        let gamma = corpus::microcube(&mut r, n + 2, m, 2.0);
        worst = dd.evaluate_real(&gamma).unwrap().into_iter().map(f64::abs).fold(worst, f64::max);
    }
    outcome(worst <= 1e-8, format!("100 forms of degree 0 and 1 on R^3 and R^4, max |dd| {worst:e}"))
}

fn sign_identity() -> Outcome {
    let mut checked = 0;
    let mut failures = 0;
    for sigma in Permutation::all(4) {
        for i in 0..4 {
            let tau = sigma.delete_value(i);
            // inversion count of the image list, computed directly
            let inversions = |v: &[usize]| (0..v.len()).flat_map(|a| (a + 1..v.len()).map(move |b| (a, b))).filter(|&(a, b)| v[a] > v[b]).count();
            let eps = |v: &[usize]| if inversions(v) % 2 == 0 { 1 } else { -1 };
            let shift = sigma.inverse().apply(i) as i64 - i as i64;
            let expected = if shift.rem_euclid(2) == 0 { eps(sigma.images()) } else { -eps(sigma.images()) };
            checked += 1;
            failures += usize::from(eps(tau.images()) != expected || tau.sign() != expected);
        }
    }
    outcome(failures == 0, format!("{checked} pairs (sigma in S_4, i), {failures} failures"))
}

fn homogeneity_shadow() -> Outcome {
    let mut residual = 0.0f64;
    let mut count = 0;
    for (omega, _, gamma) in corpus_samples() {
        if omega.degree() < omega.dim() {
            let report = derivative_report(&classical_to_microcube(&omega), &gamma).unwrap();
            residual = residual.max(report.residual);
            count += 1;
        }
    }
    let bin = env!("CARGO_BIN_EXE_microforms");
    let runs: Vec<_> = (0..2).map(|_| Command::new(bin).args(["verify", "--seed", "42"]).output().unwrap()).collect();
    let exit_ok = runs.iter().all(|o| o.status.code() == Some(0));
    let identical = runs[0].stdout == runs[1].stdout && !runs[0].stdout.is_empty();
    outcome(
        residual < 1e-9 && exit_ok && identical,
        format!("{count} face sums, max residual {residual:e}; verify at seed 42 exit 0: {exit_ok}, byte-identical: {identical}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("algebra kernel", algebra_kernel),
        ("oplus laws", oplus_laws),
        ("morphism well-definedness", morphism_well_definedness),
        ("Taylor jets", taylor_jets),
        ("tangent addition through D(2)", tangent_addition),
        ("Kock-Lawvere split and tangent line", kock_lawvere),
        ("classical/microcube form bijection", form_bijection),
        ("infinitesimal integral", integral_properties),
        ("exterior derivative vs classical d", main_theorem),
        ("d after d vanishes", dd_zero),
        ("sign identity", sign_identity),
        ("boundary homogeneity and CLI verify", homogeneity_shadow),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let pass = result.pass && elapsed < TIME_LIMIT;
        failed += usize::from(!pass);
        println!(
            "[{}] {:>2}. {name}: {} ({:.2}s)",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            result.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

