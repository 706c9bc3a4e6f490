//! Randomized law checks.
//!
//! Each law draws one random instance per sample from its own ChaCha
//! stream, keyed by the seed and the law name and positioned by the sample
//! index, so reports do not depend on thread scheduling. A law passes when
//! every sample evaluates and the largest deviation is strictly below
//! `tolerance * scale`.

use std::collections::BTreeMap;
use std::fmt::{Display, Write as _};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::corpus;
use super::symbolic::diff;
use super::{classical_d, finite_difference_d, vector_calculus_views, OracleError};
use crate::expr::Expr;
use crate::forms::{
    classical_to_microcube, derivative_report, exterior_derivative, integral, microcube_to_classical, ClassicalForm,
    Microcube, MicrocubeForm,
};
use crate::prolongation::{
    canonical_i, eval_over_weil, kock_lawvere_split, product_pullback, prolong_map, tangent_decompose,
    tangent_line, tangent_sum_via_d2, WeilPoint,
};
use crate::weil::{InfinitesimalPresentation, WeilAlgebra, WeilElement, WeilError, WeilMorphism};

type Check = fn(&mut ChaCha8Rng) -> Result<f64, String>;

/// A named randomized property. `scale` multiplies the suite tolerance.
pub struct Law {
    pub name: &'static str,
    pub scale: f64,
    check: Check,
}

impl Law {
    const fn new(name: &'static str, check: Check) -> Self {
        Self { name, scale: 1.0, check }
    }

    const fn scaled(name: &'static str, scale: f64, check: Check) -> Self {
        Self { name, scale, check }
    }

    /// Deviation of one random instance drawn from `rng`.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Result<f64, String> {
        (self.check)(rng)
    }
}

pub static LAWS: &[Law] = &[
    Law::new("weil_dimension", weil_dimension),
    Law::new("ring_laws", ring_laws),
    Law::new("augmentation", augmentation),
    Law::new("nilpotency", nilpotency),
    Law::new("tensor", tensor),
    Law::new("oplus_associative", oplus_associative),
    Law::new("morphism_well_defined", morphism_well_defined),
    Law::new("morphism_homomorphism", morphism_homomorphism),
    Law::new("combine_restricts", combine_restricts),
    Law::new("taylor_jets", taylor_jets),
    Law::new("chain_rule", chain_rule),
    Law::new("naturality", naturality),
    Law::new("tangent_addition", tangent_addition),
    Law::new("kock_lawvere", kock_lawvere),
    Law::new("tangent_line", tangent_line_law),
    Law::new("cube_substitutions", cube_substitutions),
    Law::new("form_homogeneous_alternating", form_homogeneous_alternating),
    Law::new("form_additive", form_additive),
    Law::new("form_bijection", form_bijection),
    Law::new("integral", integral_law),
    Law::new("boundary_homogeneity", boundary_homogeneity),
    Law::new("exterior_derivative", exterior_derivative_law),
    Law::new("dd_zero", dd_zero),
    Law::new("sign_identity", sign_identity),
    Law::new("witnesses", witnesses),
    Law::new("oracle_dd_zero", oracle_dd_zero),
    Law::scaled("finite_difference", 1e3, finite_difference),
];

pub fn law_names() -> Vec<&'static str> {
    LAWS.iter().map(|l| l.name).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub law: String,
    pub samples: usize,
    /// `None` when some sample failed to evaluate.
    pub max_dev: Option<f64>,
    pub pass: bool,
    pub seed: u64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckReport {
    /// One JSON object, numbers with 17 significant digits.
    pub fn to_json_line(&self) -> String {
        let mut s = format!("{{\"law\":{},\"samples\":{},\"max_dev\":", json_string(&self.law), self.samples);
        match self.max_dev {
            Some(d) => write!(s, "{d:.16e}"),
            None => write!(s, "null"),
        }
        .expect("write to string");
        write!(s, ",\"pass\":{},\"seed\":{},\"tolerance\":{:.16e}", self.pass, self.seed, self.tolerance)
            .expect("write to string");
        if let Some(e) = &self.error {
            write!(s, ",\"error\":{}", json_string(e)).expect("write to string");
        }
        s.push('}');
        s
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Runs the named laws and reports them in the order given.
pub fn run_suite(laws: &[&str], seed: u64, samples: usize, tolerance: f64) -> Result<Vec<CheckReport>, OracleError> {
    let chosen = laws
        .iter()
        .map(|name| LAWS.iter().find(|l| l.name == *name).ok_or_else(|| OracleError::UnknownLaw(name.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(chosen.into_iter().map(|law| run_law(law, seed, samples, tolerance)).collect())
}

fn run_law(law: &Law, seed: u64, samples: usize, tolerance: f64) -> CheckReport {
    let key = seed ^ fnv1a(law.name);
    let results: Vec<Result<f64, String>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(key);
            rng.set_stream(i as u64);
            law.sample(&mut rng)
        })
        .collect();
    let mut max_dev = Some(0.0f64);
    let mut error = None;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(d) if d.is_nan() => {
                max_dev = None;
                error.get_or_insert_with(|| format!("sample {i}: deviation is NaN"));
            }
            Ok(d) => max_dev = max_dev.map(|m| m.max(d)),
            Err(e) => {
                max_dev = None;
                error.get_or_insert_with(|| format!("sample {i}: {e}"));
            }
        }
    }
    let pass = max_dev.is_some_and(|d| d < tolerance * law.scale);
    CheckReport { law: law.name.to_string(), samples, max_dev, pass, seed, tolerance, error }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

trait Msg<T> {
    fn msg(self) -> Result<T, String>;
}

impl<T, E: Display> Msg<T> for Result<T, E> {
    fn msg(self) -> Result<T, String> {
        self.map_err(|e| e.to_string())
    }
}

fn dist(a: &WeilElement, b: &WeilElement) -> Result<f64, String> {
    a.distance(b).ok_or_else(|| "elements of different algebras".to_string())
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn vec_dev(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    max_of(a.iter().zip(b).map(|(x, y)| (x - y).abs()))
}

fn cube_dev(a: &Microcube, b: &Microcube) -> Result<f64, String> {
    a.distance(b).ok_or_else(|| "cubes of different shapes".to_string())
}

fn elems_dev(a: &[WeilElement], b: &[WeilElement]) -> Result<f64, String> {
    if a.len() != b.len() {
        return Ok(f64::INFINITY);
    }
    a.iter().zip(b).map(|(x, y)| dist(x, y)).try_fold(0.0, |m, d| Ok(f64::max(m, d?)))
}

// ---- Weil algebras ----

fn weil_dimension(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let p = corpus::presentation(rng, 3);
    let alg = WeilAlgebra::shared(&p);
    // every exponent vector below the bounds that no product monomial divides
    let mut standard = Vec::new();
    let total: usize = p.bounds().iter().map(|&b| b as usize).product();
    for mut code in 0..total {
        let mut e = Vec::with_capacity(p.num_vars());
        for &b in p.bounds() {
            e.push((code % b as usize) as u32);
            code /= b as usize;
        }
        if !p.products().iter().any(|prod| prod.iter().all(|&j| e[j] >= 1)) {
            standard.push(e);
        }
    }
    let mut basis = alg.basis().to_vec();
    basis.sort();
    standard.sort();
    Ok(if basis == standard { 0.0 } else { 1.0 + (alg.dim() as f64 - standard.len() as f64).abs() })
}

fn ring_laws(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let alg = WeilAlgebra::shared(&corpus::presentation(rng, 3));
    let a = corpus::element(rng, &alg, 5);
    let b = corpus::element(rng, &alg, 5);
    let c = corpus::element(rng, &alg, 5);
    let one = alg.one();
    let zero = alg.zero();
    let pairs = [
        (&(&a + &b) + &c, &a + &(&b + &c)),
        (&a + &b, &b + &a),
        (&a + &zero, a.clone()),
        (&a + &(-&a), zero.clone()),
        (&(&a * &b) * &c, &a * &(&b * &c)),
        (&a * &b, &b * &a),
        (&a * &one, a.clone()),
        (&a * &(&b + &c), &(&a * &b) + &(&a * &c)),
        (&a * &zero, zero.clone()),
    ];
    pairs.iter().map(|(l, r)| dist(l, r)).try_fold(0.0, |m, d| Ok(f64::max(m, d?)))
}

fn augmentation(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let alg = WeilAlgebra::shared(&corpus::presentation(rng, 3));
    let a = corpus::element(rng, &alg, 5);
    let b = corpus::element(rng, &alg, 5);
    Ok(max_of([
        ((&a * &b).augmentation() - a.augmentation() * b.augmentation()).abs(),
        ((&a + &b).augmentation() - a.augmentation() - b.augmentation()).abs(),
        (alg.one().augmentation() - 1.0).abs(),
        a.nilpotent_part().augmentation().abs(),
    ]))
}

fn nilpotency(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let alg = WeilAlgebra::shared(&corpus::presentation(rng, 3));
    let n = alg.nilpotency_index();
    let a = corpus::nilpotent(rng, &alg, 3);
    let vars = (0..alg.num_vars()).map(|i| alg.var(i)).collect::<Result<Vec<_>, _>>().msg()?;
    let sum = vars.iter().fold(alg.zero(), |acc, v| &acc + v);
    // the index is minimal: the sum of the generators survives one power lower
    let sharp = if n >= 1 && sum.powi(n - 1).is_zero() { 1.0 } else { 0.0 };
    Ok(a.powi(n).max_abs() + sharp)
}

fn tensor(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let p = corpus::presentation(rng, 2);
    let q = corpus::presentation(rng, 2);
    let r = corpus::presentation(rng, 1);
    let (a, b) = (WeilAlgebra::shared(&p), WeilAlgebra::shared(&q));
    let ab = WeilAlgebra::tensor(&a, &b);
    let ba = WeilAlgebra::tensor(&b, &a);
    let mut dev = (ab.dim() as f64 - (a.dim() * b.dim()) as f64).abs() + (ab.dim() as f64 - ba.dim() as f64).abs();
    if p.tensor(&q).tensor(&r) != p.tensor(&q.tensor(&r)) {
        dev += 1.0;
    }
    // a ↦ a ⊗ 1 is multiplicative and so is 1 ⊗ b; the two factors commute
    let (x, y) = (corpus::element(rng, &a, 3), corpus::element(rng, &a, 3));
    let z = corpus::element(rng, &b, 3);
    let left = |e: &WeilElement| crate::weil::embed_block(e, &ab, 0);
    let right = |e: &WeilElement| crate::weil::embed_block(e, &ab, p.num_vars());
    dev = dev.max(dist(&left(&(&x * &y)), &(&left(&x) * &left(&y)))?);
    dev = dev.max(dist(&(&left(&x) * &right(&z)), &(&right(&z) * &left(&x)))?);
    Ok(dev)
}

fn oplus_associative(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let a = corpus::simplicial(rng, 3);
    let b = corpus::simplicial(rng, 3);
    let c = corpus::simplicial(rng, 3);
    let lhs = a.oplus(&b).msg()?.oplus(&c).msg()?;
    let rhs = a.oplus(&b.oplus(&c).msg()?).msg()?;
    let d = InfinitesimalPresentation::d();
    let base = d.oplus(&d).msg()? == InfinitesimalPresentation::d_of(2);
    Ok(if lhs == rhs && base { 0.0 } else { 1.0 })
}

/// Zero augmentation, coefficients in {-1, 0, 1}, mostly sparse.
fn candidate_images(rng: &mut ChaCha8Rng, dom: &Arc<WeilAlgebra>, count: usize) -> Vec<WeilElement> {
    (0..count)
        .map(|_| {
            let coeffs = (0..dom.dim())
                .map(|k| if k == 0 { 0.0 } else { [-1.0, 0.0, 0.0, 1.0][rng.gen_range(0..4)] })
                .collect();
            WeilElement::from_coeffs(dom, coeffs).expect("right length")
        })
        .collect()
}

type Poly = BTreeMap<Vec<u32>, f64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0.0) += ca * cb;
        }
    }
    out
}

/// Expands every relation of `cod` in the images as a plain polynomial and
/// reduces modulo the relations of `dom`.
fn brute_force_well_defined(
    dom: &InfinitesimalPresentation,
    cod: &InfinitesimalPresentation,
    images: &[WeilElement],
) -> bool {
    let polys: Vec<Poly> = images
        .iter()
        .map(|img| img.algebra().basis().iter().cloned().zip(img.coeffs().iter().copied()).filter(|(_, c)| *c != 0.0).collect())
        .collect();
    let unit: Poly = [(vec![0; dom.num_vars()], 1.0)].into_iter().collect();
    let killed = |e: &[u32]| {
        e.iter().zip(dom.bounds()).any(|(x, &b)| *x >= b) || dom.products().iter().any(|p| p.iter().all(|&j| e[j] >= 1))
    };
    let mut relations: Vec<Poly> = Vec::new();
    for (j, &b) in cod.bounds().iter().enumerate() {
        relations.push((0..b).fold(unit.clone(), |acc, _| poly_mul(&acc, &polys[j])));
    }
    for prod in cod.products() {
        relations.push(prod.iter().fold(unit.clone(), |acc, &j| poly_mul(&acc, &polys[j])));
    }
    relations.iter().all(|r| r.iter().all(|(e, c)| killed(e) || *c == 0.0))
}

fn morphism_well_defined(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let dom = corpus::presentation(rng, 2);
    let cod = corpus::presentation(rng, 2);
    let images = candidate_images(rng, &WeilAlgebra::shared(&dom), cod.num_vars());
    let checker = match WeilMorphism::new(&dom, &cod, images.clone()) {
        Ok(_) => true,
        Err(WeilError::NotWellDefined { .. }) => false,
        Err(e) => return Err(e.to_string()),
    };
    Ok(if checker == brute_force_well_defined(&dom, &cod, &images) { 0.0 } else { 1.0 })
}

/// Some well-defined morphism `dom -> cod`; the zero map if sampling fails.
fn random_morphism(
    rng: &mut ChaCha8Rng,
    dom: &InfinitesimalPresentation,
    cod: &InfinitesimalPresentation,
) -> Result<WeilMorphism, String> {
    let w = WeilAlgebra::shared(dom);
    for _ in 0..64 {
        if let Ok(phi) = WeilMorphism::new(dom, cod, candidate_images(rng, &w, cod.num_vars())) {
            return Ok(phi);
        }
    }
    WeilMorphism::new(dom, cod, vec![w.zero(); cod.num_vars()]).msg()
}

fn morphism_homomorphism(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let dom = corpus::presentation(rng, 2);
    let cod = corpus::presentation(rng, 2);
    let phi = random_morphism(rng, &dom, &cod)?;
    let wc = phi.codomain().clone();
    let a = corpus::element(rng, &wc, 4);
    let b = corpus::element(rng, &wc, 4);
    let f = |x: &WeilElement| phi.apply(x).msg();
    let id = WeilMorphism::identity(&cod);
    let composed = WeilMorphism::compose(&phi, &id).msg()?;
    Ok(max_of([
        dist(&f(&(&a * &b))?, &(&f(&a)? * &f(&b)?))?,
        dist(&f(&(&a + &b))?, &(&f(&a)? + &f(&b)?))?,
        dist(&f(&wc.one())?, &phi.domain().one())?,
        dist(&composed.apply(&a).msg()?, &f(&a)?)?,
    ]))
}

fn combine_restricts(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let cod = corpus::presentation(rng, 2);
    let k = rng.gen_range(2..=3);
    let parts = (0..k)
        .map(|_| {
            let dom = corpus::simplicial(rng, 2);
            random_morphism(rng, &dom, &cod)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let doms: Vec<InfinitesimalPresentation> = parts.iter().map(|p| p.domain().presentation().clone()).collect();
    let combined = WeilMorphism::combine(&parts).msg()?;
    let a = corpus::element(rng, &WeilAlgebra::shared(&cod), 4);
    let mut dev = 0.0f64;
    for (i, part) in parts.iter().enumerate() {
        let incl = WeilMorphism::block_inclusion(&doms, i).msg()?;
        let via_sum = incl.apply(&combined.apply(&a).msg()?).msg()?;
        dev = dev.max(dist(&via_sum, &part.apply(&a).msg()?)?);
    }
    Ok(dev)
}

// ---- prolongation ----

fn taylor_jets(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let f = corpus::analytic(rng, 3);
    let c = corpus::dyadic(rng, 1.5);
    let alg = WeilAlgebra::shared(&InfinitesimalPresentation::d_order(4));
    let x = alg.var(0).msg()?.add_constant(c);
    let jet = eval_over_weil(&f, &WeilPoint::new(&alg, vec![x]).msg()?).msg()?;
    let mut deriv = f.clone();
    let mut fact = 1.0;
    let mut dev = 0.0f64;
    for j in 0..5 {
        if j > 0 {
            deriv = diff(&deriv, 0);
            fact *= j as f64;
        }
        let exact = deriv.eval(&[c]).msg()? / fact;
        let got = jet.coeff(&[j]);
        dev = dev.max((got - exact).abs() / exact.abs().max(1.0));
    }
    Ok(dev)
}

fn chain_rule(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let m = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=2);
    let f: Vec<Expr> = (0..k).map(|_| corpus::polynomial(rng, m)).collect();
    let g = if k == 1 && rng.gen_bool(0.5) { corpus::analytic(rng, 2) } else { corpus::polynomial(rng, k) };
    let gf = g.substitute(&f).msg()?;
    let alg = WeilAlgebra::shared(&corpus::presentation(rng, 2));
    let p = corpus::weil_point(rng, &alg, m, 1.0);
    let stepwise = prolong_map(std::slice::from_ref(&g), &prolong_map(&f, &p).msg()?).msg()?;
    let direct = prolong_map(&[gf], &p).msg()?;
    let scale = direct.coords()[0].max_abs().max(1.0);
    Ok(stepwise.distance(&direct).ok_or("incomparable points")? / scale)
}

fn naturality(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let dom = corpus::presentation(rng, 2);
    let cod = corpus::presentation(rng, 2);
    let phi = random_morphism(rng, &dom, &cod)?;
    let m = rng.gen_range(1..=2);
    let f: Vec<Expr> = (0..2).map(|_| corpus::polynomial(rng, m)).collect();
    let p = corpus::weil_point(rng, phi.codomain(), m, 1.0);
    let lhs = prolong_map(&f, &p).msg()?.map(&phi).msg()?;
    let rhs = prolong_map(&f, &p.map(&phi).msg()?).msg()?;
    let scale = lhs.coords().iter().map(|c| c.max_abs()).fold(1.0, f64::max);
    Ok(lhs.distance(&rhs).ok_or("incomparable points")? / scale)
}

fn tangent(rng: &mut ChaCha8Rng, m: usize, base: &[f64]) -> Result<WeilPoint, String> {
    let a = corpus::point(rng, m, 5.0);
    canonical_i(base, &[a]).msg()
}

fn tangent_addition(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let zero = vec![0.0; 4];
    let t1 = tangent(rng, 4, &zero)?;
    let t2 = tangent(rng, 4, &zero)?;
    let via_d2 = tangent_sum_via_d2(&t1, &t2).msg()?;
    let direct = t1.try_add(&t2).msg()?;
    via_d2.distance(&direct).ok_or_else(|| "incomparable points".into())
}

fn kock_lawvere(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let m = rng.gen_range(1..=4);
    let a = corpus::point(rng, m, 5.0);
    let zero = vec![0.0; m];
    let t = canonical_i(&zero, &[a.clone()]).msg()?;
    let split = kock_lawvere_split(&t).msg()?;
    // an arbitrary tangent at 0, rebuilt from its split
    let u = tangent(rng, m, &zero)?;
    let rebuilt = canonical_i(&zero, &[kock_lawvere_split(&u).msg()?]).msg()?;
    // the bijection (x, a) <-> t at a general base
    let x = corpus::point(rng, m, 5.0);
    let (bx, ba) = tangent_decompose(&canonical_i(&x, &[a.clone()]).msg()?).msg()?;
    Ok(max_of([
        vec_dev(&split, &a),
        rebuilt.distance(&u).ok_or("incomparable points")?,
        vec_dev(&bx, &x),
        vec_dev(&ba, &a),
    ]))
}

fn tangent_line_law(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let m = rng.gen_range(1..=4);
    let x = corpus::point(rng, m, 5.0);
    let t = tangent(rng, m, &x)?;
    let lhs = tangent_line(&t).msg()?;
    let rhs = product_pullback(&t).msg()?;
    lhs.distance(&rhs).ok_or_else(|| "incomparable points".into())
}

// ---- microcubes and forms ----

/// Restriction and permutation agree with substitution along the
/// corresponding morphisms of cubes.
fn cube_substitutions(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let n = rng.gen_range(1..=4);
    let m = rng.gen_range(1..=3);
    let gamma = corpus::microcube(rng, n, m, 3.0);
    let p = gamma.to_weil_point();
    let cube = InfinitesimalPresentation::cube(n);
    let i = rng.gen_range(0..n);
    let small = WeilAlgebra::cube(n - 1);
    let images = (0..n)
        .map(|k| match k.cmp(&i) {
            std::cmp::Ordering::Less => small.var(k),
            std::cmp::Ordering::Equal => Ok(small.zero()),
            std::cmp::Ordering::Greater => small.var(k - 1),
        })
        .collect::<Result<Vec<_>, _>>()
        .msg()?;
    let face = WeilMorphism::new(&InfinitesimalPresentation::cube(n - 1), &cube, images).msg()?;
    let restricted = Microcube::from_weil_point(&p.map(&face).msg()?, n - 1).msg()?;
    let sigma = corpus::permutation(rng, n);
    let big = WeilAlgebra::cube(n);
    let images = (0..n).map(|k| big.var(sigma.apply(k))).collect::<Result<Vec<_>, _>>().msg()?;
    let perm = WeilMorphism::new(&cube, &cube, images).msg()?;
    let permuted = Microcube::from_weil_point(&p.map(&perm).msg()?, n).msg()?;
    Ok(cube_dev(&gamma.restrict(i).msg()?, &restricted)?.max(cube_dev(&gamma.permute(&sigma).msg()?, &permuted)?))
}

/// A random polynomial form together with a random cube of its degree,
/// sometimes over `W_D`.
fn form_and_cube(rng: &mut ChaCha8Rng, min_degree: usize) -> (ClassicalForm, Microcube) {
    let (m, n) = loop {
        let (m, n) = corpus::form_shape(rng);
        if n >= min_degree {
            break (m, n);
        }
    };
    let omega = corpus::polynomial_form(rng, m, n);
    let gamma = if rng.gen_bool(0.25) {
        corpus::microcube_over(rng, n, m, &WeilAlgebra::shared(&InfinitesimalPresentation::d()))
    } else {
        corpus::microcube(rng, n, m, 2.0)
    };
    (omega, gamma)
}

fn form_homogeneous_alternating(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let (omega, gamma) = form_and_cube(rng, 1);
    let w = classical_to_microcube(&omega);
    let n = gamma.degree();
    let base = w.evaluate(&gamma).msg()?;
    let scale = base.iter().map(|c| c.max_abs()).fold(1.0, f64::max);
    let i = rng.gen_range(0..n);
    let alpha = corpus::dyadic(rng, 3.0);
    let scaled = w.evaluate(&gamma.scale_at(i, alpha).msg()?).msg()?;
    let expected: Vec<WeilElement> = base.iter().map(|c| c.scale(alpha)).collect();
    let sigma = corpus::permutation(rng, n);
    let permuted = w.evaluate(&gamma.permute(&sigma).msg()?).msg()?;
    let signed: Vec<WeilElement> = base.iter().map(|c| c.scale(sigma.sign() as f64)).collect();
    Ok(elems_dev(&scaled, &expected)?.max(elems_dev(&permuted, &signed)?) / scale)
}

/// `ω(γ_1 +_i γ_2) = ω(γ_1) + ω(γ_2)` for cubes sharing the `i`-th restriction.
fn form_additive(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let (omega, g1) = form_and_cube(rng, 1);
    let w = classical_to_microcube(&omega);
    let n = g1.degree();
    let i = rng.gen_range(0..n);
    let other = corpus::microcube_over(rng, n, g1.dim(), g1.aux());
    let coeffs = (0..1usize << n)
        .map(|mask| if mask >> i & 1 == 1 { other.coefficient(mask).to_vec() } else { g1.coefficient(mask).to_vec() })
        .collect();
    let g2 = Microcube::from_coeffs(n, g1.aux(), coeffs).msg()?;
    let sum = w.evaluate(&g1.add_at(&g2, i).msg()?).msg()?;
    let parts: Vec<WeilElement> =
        w.evaluate(&g1).msg()?.iter().zip(w.evaluate(&g2).msg()?).map(|(a, b)| a + &b).collect();
    let scale = parts.iter().map(|c| c.max_abs()).fold(1.0, f64::max);
    Ok(elems_dev(&sum, &parts)? / scale)
}

fn form_bijection(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let (m, n) = corpus::form_shape(rng);
    let omega = corpus::polynomial_form(rng, m, n);
    let x = corpus::point(rng, m, 2.0);
    let back = microcube_to_classical(&classical_to_microcube(&omega));
    let lhs = back.component_values_real(&x).msg()?;
    let rhs = omega.component_values_real(&x).msg()?;
    let mut dev = lhs.iter().zip(&rhs).map(|(a, b)| vec_dev(a, b)).fold(0.0, f64::max);
    // a form not built from a classical one: ρ = d ω̃ on degree n+1 cubes
    if n < m {
        let rho = exterior_derivative(&classical_to_microcube(&omega));
        let rebuilt = classical_to_microcube(&microcube_to_classical(&rho));
        let gamma = corpus::microcube(rng, n + 1, m, 2.0);
        dev = dev.max(elems_dev(&rebuilt.evaluate(&gamma).msg()?, &rho.evaluate(&gamma).msg()?)?);
    }
    Ok(dev)
}

fn integral_law(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let (omega, gamma) = form_and_cube(rng, 1);
    let w = classical_to_microcube(&omega);
    let n = gamma.degree();
    let v = integral(&w, &gamma).msg()?;
    let scale = v.top().iter().map(|c| c.max_abs()).fold(1.0, f64::max);
    let i = rng.gen_range(0..n);
    let alpha = corpus::dyadic(rng, 3.0);
    let scaled = integral(&w, &gamma.scale_at(i, alpha).msg()?).msg()?;
    let sigma = corpus::permutation(rng, n);
    let permuted = integral(&w, &gamma.permute(&sigma).msg()?).msg()?;
    Ok(max_of([
        v.homogeneity_residual(),
        cube_dev(&scaled, &v.scale(alpha))? / scale,
        cube_dev(&permuted, &v.scale(sigma.sign() as f64))? / scale,
    ]))
}

/// The face sum whose top coefficient defines `dω(γ)` has nothing below the top.
fn boundary_homogeneity(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let (m, n) = loop {
        let (m, n) = corpus::form_shape(rng);
        if n < m {
            break (m, n);
        }
    };
    let omega = corpus::polynomial_form(rng, m, n);
    let gamma = if rng.gen_bool(0.25) {
        corpus::microcube_over(rng, n + 1, m, &WeilAlgebra::shared(&InfinitesimalPresentation::d()))
    } else {
        corpus::microcube(rng, n + 1, m, 2.0)
    };
    Ok(derivative_report(&classical_to_microcube(&omega), &gamma).msg()?.residual)
}

fn exterior_derivative_law(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let (m, n) = corpus::form_shape(rng);
    let omega = corpus::polynomial_form(rng, m, n);
    let classical = classical_d(&omega).msg()?;
    let geometric = exterior_derivative(&classical_to_microcube(&omega));
    let x = corpus::point(rng, m, 2.0);
    let lhs = microcube_to_classical(&geometric).component_values_real(&x).msg()?;
    let rhs = classical.component_values_real(&x).msg()?;
    let mut dev = lhs.iter().zip(&rhs).map(|(a, b)| vec_dev(a, b)).fold(0.0, f64::max);
    if n < m {
        // and on a cube with higher-order coefficients
        let gamma = corpus::microcube(rng, n + 1, m, 2.0);
        let on_cube = geometric.evaluate(&gamma).msg()?;
        let expected = classical_to_microcube(&classical).evaluate(&gamma).msg()?;
        dev = dev.max(elems_dev(&on_cube, &expected)?);
    }
    Ok(dev)
}

fn dd_zero(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let m = rng.gen_range(3..=4);
    let n = rng.gen_range(0..=1);
    let omega = corpus::polynomial_form(rng, m, n);
    let dd: MicrocubeForm = exterior_derivative(&exterior_derivative(&classical_to_microcube(&omega)));
    let gamma = corpus::microcube(rng, n + 2, m, 2.0);
    Ok(dd.evaluate_real(&gamma).msg()?.iter().map(|v| v.abs()).fold(0.0, f64::max))
}

fn sign_identity(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let n = rng.gen_range(1..=6);
    let sigma = corpus::permutation(rng, n);
    let i = rng.gen_range(0..n);
    let tau = sigma.delete_value(i);
    let pos = sigma.inverse().apply(i);
    let expected = if (pos + i) % 2 == 0 { sigma.sign() } else { -sigma.sign() };
    Ok((tau.sign() - expected).abs() as f64)
}

/// The n = 0 and n = 1 sign conventions and the three vector-calculus cases
/// on `R^3`, at a random point.
fn witnesses(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let x = corpus::point(rng, 3, 2.0);
    let form = |text: &str| ClassicalForm::from_json(text).msg();
    let geometric = |w: &ClassicalForm| -> Result<Vec<Vec<f64>>, String> {
        microcube_to_classical(&exterior_derivative(&classical_to_microcube(w))).component_values_real(&x).msg()
    };
    let f = form(r#"{"dim": 3, "degree": 0, "components": {"": ["x1 * x2 * x3"]}}"#)?;
    let curl = form(r#"{"dim": 3, "degree": 1, "components": {"1": ["-x2"], "2": ["x1"]}}"#)?;
    let div = form(r#"{"dim": 3, "degree": 2, "components": {"2,3": ["x1"]}}"#)?;
    let grad_expected = vec![vec![x[1] * x[2]], vec![x[0] * x[2]], vec![x[0] * x[1]]];
    let mut dev = 0.0f64;
    let mut compare = |a: &[Vec<f64>], b: &[Vec<f64>]| {
        dev = dev.max(if a.len() == b.len() { a.iter().zip(b).map(|(u, v)| vec_dev(u, v)).fold(0.0, f64::max) } else { f64::INFINITY });
    };
    compare(&geometric(&f)?, &grad_expected);
    compare(&geometric(&curl)?, &[vec![2.0], vec![0.0], vec![0.0]]);
    compare(&geometric(&div)?, &[vec![1.0]]);
    let views = |w: &ClassicalForm| -> Result<Vec<Vec<f64>>, String> {
        vector_calculus_views(w).msg()?.iter().map(|(_, e)| e.eval(&x).map(|v| vec![v]).msg()).collect()
    };
    compare(&views(&f)?, &grad_expected);
    compare(&views(&curl)?, &[vec![0.0], vec![0.0], vec![2.0]]);
    compare(&views(&div)?, &[vec![1.0]]);
    Ok(dev)
}

fn oracle_dd_zero(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let (m, n) = corpus::form_shape(rng);
    let omega = corpus::polynomial_form(rng, m, n);
    let dd = classical_d(&classical_d(&omega).msg()?).msg()?;
    let x = corpus::point(rng, m, 2.0);
    Ok(dd.component_values_real(&x).msg()?.iter().flatten().map(|v| v.abs()).fold(0.0, f64::max))
}

fn finite_difference(rng: &mut ChaCha8Rng) -> Result<f64, String> {
    let (m, n) = loop {
        let (m, n) = corpus::form_shape(rng);
        if n < m {
            break (m, n);
        }
    };
    let omega = corpus::polynomial_form(rng, m, n);
    let x = corpus::point(rng, m, 1.0);
    let edges: Vec<Vec<f64>> = (0..=n).map(|_| corpus::point(rng, m, 1.0)).collect();
    let estimate = finite_difference_d(&omega, &x, &edges, 1e-4).msg()?;
    let exact = classical_d(&omega).msg()?.evaluate_real(&x, &edges).msg()?;
    Ok(vec_dev(&estimate, &exact))
}
