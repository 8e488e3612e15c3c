use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactnum::Cyclotomic;
use crate::linalg::SpanBuilder;
use crate::rootsys::classify;
use crate::zlattice::Sublattice;

use super::{LieTorusModel, MatElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxiomStatus {
    Pass,
    Fail,
}

/// Where a check failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<i64>>,
}

impl Witness {
    fn new(message: impl Into<String>, alpha: Option<&[i64]>, lambda: Option<&[i64]>) -> Self {
        Self { message: message.into(), alpha: alpha.map(<[i64]>::to_vec), lambda: lambda.map(<[i64]>::to_vec) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomEntry {
    pub status: AxiomStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl From<Result<(), Witness>> for AxiomEntry {
    fn from(r: Result<(), Witness>) -> Self {
        match r {
            Ok(()) => Self { status: AxiomStatus::Pass, witness: None },
            Err(w) => Self { status: AxiomStatus::Fail, witness: Some(w) },
        }
    }
}

/// Per-check outcomes of [`verify_axioms`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub box_radius: i64,
    pub checks: BTreeMap<String, AxiomEntry>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|e| e.status == AxiomStatus::Pass)
    }

    pub fn status(&self, name: &str) -> Option<AxiomStatus> {
        self.checks.get(name).map(|e| e.status)
    }
}

pub const CHECK_NAMES: [&str; 9] =
    ["LT1", "LT2(i)", "LT2(ii)", "LT3", "LT4", "centreless", "domain_lemma", "inverse_lemma", "generation_lemma"];

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// ⟨β, α∨⟩.
fn pairing(beta: &[i64], alpha: &[i64]) -> i64 {
    2 * dot(beta, alpha) / dot(alpha, alpha)
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn is_zero_vec(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

struct Context<'a> {
    model: &'a LieTorusModel,
    radius: i64,
    degrees: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    /// Roots with 0 appended, for sampling x_β.
    samples: Vec<(Vec<i64>, Vec<MatElement>)>,
    generators: Vec<(Vec<i64>, Vec<i64>, MatElement)>,
    order: u64,
}

impl Context<'_> {
    fn dim(&self, alpha: &[i64], lambda: &[i64]) -> usize {
        self.model.component_dim(alpha, lambda).expect("degrees come from Λ")
    }

    fn first(&self, alpha: &[i64], lambda: &[i64]) -> Option<MatElement> {
        self.model.component(alpha, lambda).expect("degrees come from Λ").basis.first().cloned()
    }

    fn integer(&self, n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(self.order, n).expect("order")
    }
}

/// Checks the Lie torus axioms and the structural lemmas on the internal
/// degrees of sup-norm ≤ `box_radius`.
///
/// For doubled (special unitary) models the radius applies to the stored
/// doubled coordinates.
pub fn verify_axioms(model: &LieTorusModel, box_radius: i64) -> AxiomReport {
    let radius = box_radius.max(0);
    let degrees = model.box_degrees(radius);
    let roots: Vec<Vec<i64>> = model.root_support().roots().iter().cloned().collect();
    let order = model.torus().cyclo_order();
    let near = model.box_degrees(if model.is_doubled() { radius.min(2) } else { radius.min(1) });

    let mut samples = Vec::new();
    let zero_root = vec![0; model.root_dim()];
    for beta in roots.iter().chain(std::iter::once(&zero_root)) {
        let mut xs: Vec<MatElement> = Vec::new();
        if is_zero_vec(beta) {
            xs.extend(model.cartan_basis());
        }
        for nu in &near {
            if is_zero_vec(beta) && is_zero_vec(nu) {
                continue;
            }
            if let Some(x) = model.component(beta, nu).expect("Λ degree").basis.first() {
                xs.push(x.clone());
                if xs.len() >= 3 {
                    break;
                }
            }
        }
        samples.push((beta.clone(), xs));
    }

    let mut generators = Vec::new();
    for nu in &near {
        for alpha in &roots {
            for x in model.component(alpha, nu).expect("Λ degree").basis.iter() {
                generators.push((alpha.clone(), nu.clone(), x.clone()));
            }
        }
    }

    let ctx = Context { model, radius, degrees, roots, samples, generators, order };
    let checks: Vec<(&str, Result<(), Witness>)> = vec![
        ("LT1", check_lt1(&ctx)),
        ("LT2(i)", check_lt2_i(&ctx)),
        ("LT2(ii)", check_lt2_ii(&ctx)),
        ("LT3", check_lt3(&ctx)),
        ("LT4", check_lt4(&ctx)),
        ("centreless", check_centreless(&ctx)),
        ("domain_lemma", check_domain(&ctx)),
        ("inverse_lemma", check_inverse(&ctx)),
        ("generation_lemma", check_generation(&ctx)),
    ];
    AxiomReport {
        box_radius: radius,
        checks: checks.into_iter().map(|(k, v)| (k.to_string(), v.into())).collect(),
    }
}

fn check_lt1(ctx: &Context) -> Result<(), Witness> {
    let support = ctx.model.root_support();
    classify(support).map_err(|e| Witness::new(format!("root support does not classify: {e}"), None, None))?;
    let candidates = ctx.model.candidate_roots();
    let boxed: Vec<Vec<i64>> = candidates
        .par_iter()
        .filter(|a| !is_zero_vec(a))
        .map(|alpha| {
            let mut seen = false;
            for lambda in &ctx.degrees {
                let d = ctx.dim(alpha, lambda);
                if d > 1 {
                    return Err(Witness::new(format!("dim = {d} > 1"), Some(alpha), Some(lambda)));
                }
                seen |= d > 0;
            }
            Ok(seen.then(|| alpha.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    if boxed.len() != support.roots().len() || boxed.iter().any(|a| !support.contains(a)) {
        return Err(Witness::new("boxed support differs from the root support", None, None));
    }
    Ok(())
}

fn check_lt2_i(ctx: &Context) -> Result<(), Witness> {
    let zero = vec![0; ctx.model.degree_rank()];
    for alpha in &ctx.roots {
        let half_is_root = alpha.iter().all(|x| x % 2 == 0) && ctx.model.root_support().contains(&alpha.iter().map(|x| x / 2).collect::<Vec<_>>());
        if !half_is_root && ctx.dim(alpha, &zero) == 0 {
            return Err(Witness::new("L_α^0 = 0 for an indivisible root", Some(alpha), Some(&zero)));
        }
    }
    Ok(())
}

fn check_lt2_ii(ctx: &Context) -> Result<(), Witness> {
    let pairs: Vec<(&Vec<i64>, &Vec<i64>)> =
        ctx.roots.iter().flat_map(|a| ctx.degrees.iter().map(move |l| (a, l))).collect();
    // normalized [e,f] is usually the same coroot for every λ; check samples once per value
    let verified: Vec<std::sync::RwLock<std::collections::HashSet<MatElement>>> =
        ctx.roots.iter().map(|_| Default::default()).collect();
    let root_index: std::collections::HashMap<&Vec<i64>, usize> = ctx.roots.iter().enumerate().map(|(k, a)| (a, k)).collect();
    pairs.par_iter().try_for_each(|&(alpha, lambda)| {
        let Some(e) = ctx.first(alpha, lambda) else { return Ok(()) };
        let memo = &verified[root_index[alpha]];
        let fail = |m: &str| Witness::new(m, Some(alpha), Some(lambda));
        let Some(f) = ctx.first(&neg(alpha), &neg(lambda)) else {
            return Err(fail("L_{-α}^{-λ} = 0 while L_α^λ ≠ 0"));
        };
        let h = e.bracket(&f);
        let he = h.bracket(&e);
        // he = κ e for a scalar κ; read κ off any term of e
        let (i, j, mu, c) = e.terms().next().expect("nonzero");
        let kappa = he
            .coefficient(i, j, mu)
            .map(|x| x.try_div(c).expect("nonzero"))
            .unwrap_or_else(|| ctx.integer(0));
        if kappa.is_zero() || he != e.scale(&kappa) {
            return Err(fail("[[e,f],e] is not a nonzero multiple of e"));
        }
        let scale = ctx.integer(2).try_div(&kappa).expect("nonzero");
        let hn = h.scale(&scale);
        if memo.read().expect("memo lock").contains(&hn) {
            return Ok(());
        }
        for (beta, xs) in &ctx.samples {
            let k = ctx.integer(pairing(beta, alpha));
            for x in xs {
                if hn.bracket(x) != x.scale(&k) {
                    return Err(Witness::new(
                        format!("sl2 relation fails on a sample of root {beta:?}"),
                        Some(alpha),
                        Some(lambda),
                    ));
                }
            }
        }
        memo.write().expect("memo lock").insert(hn);
        Ok(())
    })
}

/// Flattened coordinates of `x` as (i, j, μ) keys.
fn flatten(x: &MatElement) -> impl Iterator<Item = ((usize, usize, Vec<i64>), Cyclotomic)> + '_ {
    x.terms().map(|(i, j, mu, c)| ((i, j, mu.clone()), c.clone()))
}

fn check_lt3(ctx: &Context) -> Result<(), Witness> {
    let zero_root = vec![0; ctx.model.root_dim()];
    let mus = ctx.model.box_degrees(2 * ctx.radius);
    ctx.degrees.par_iter().try_for_each(|lambda| {
        let comp = ctx.model.component(&zero_root, lambda).expect("Λ degree");
        if comp.dim() == 0 {
            return Ok(());
        }
        let mut span = SpanBuilder::new(comp.dim());
        'outer: for mu in &mus {
            let rest = sub(lambda, mu);
            for alpha in &ctx.roots {
                let xs = ctx.model.component(alpha, mu).expect("Λ degree");
                if xs.dim() == 0 {
                    continue;
                }
                let ys = ctx.model.component(&neg(alpha), &rest).expect("Λ degree");
                for x in &xs.basis {
                    for y in &ys.basis {
                        let z = x.bracket(y);
                        let coords = comp.coordinates(&z).expect("bracket of ±α components has root 0");
                        span.insert(coords);
                        if span.is_full() {
                            break 'outer;
                        }
                    }
                }
            }
        }
        if span.is_full() {
            Ok(())
        } else {
            Err(Witness::new(
                format!("brackets of root spaces span {} of {} dimensions", span.rank(), comp.dim()),
                Some(&zero_root),
                Some(lambda),
            ))
        }
    })
}

fn check_lt4(ctx: &Context) -> Result<(), Witness> {
    let n = ctx.model.degree_rank();
    let mut gens: Vec<Vec<i64>> = Vec::new();
    let mut generated = Sublattice::from_vectors(n, &gens).expect("lengths");
    let mut alphas = ctx.roots.clone();
    alphas.push(vec![0; ctx.model.root_dim()]);
    for lambda in &ctx.degrees {
        if generated.contains(lambda).expect("lengths") || !alphas.iter().any(|a| ctx.dim(a, lambda) > 0) {
            continue;
        }
        gens.push(lambda.clone());
        generated = Sublattice::from_vectors(n, &gens).expect("lengths");
        if generated == *ctx.model.lattice() {
            return Ok(());
        }
    }
    if generated == *ctx.model.lattice() {
        Ok(())
    } else {
        Err(Witness::new("boxed support degrees generate a proper sublattice of Λ", None, None))
    }
}

fn check_centreless(ctx: &Context) -> Result<(), Witness> {
    let zero_root = vec![0; ctx.model.root_dim()];
    ctx.degrees.par_iter().try_for_each(|lambda| {
        let comp = ctx.model.component(&zero_root, lambda).expect("Λ degree");
        let dim = comp.dim();
        if dim == 0 {
            return Ok(());
        }
        let mut span = SpanBuilder::new(dim);
        for (_, _, g) in &ctx.generators {
            let mut rows: BTreeMap<(usize, usize, Vec<i64>), Vec<Cyclotomic>> = BTreeMap::new();
            for (k, z) in comp.basis.iter().enumerate() {
                for (key, c) in flatten(&z.bracket(g)) {
                    rows.entry(key).or_insert_with(|| vec![ctx.integer(0); dim])[k] = c;
                }
            }
            for row in rows.into_values() {
                span.insert(row);
                if span.is_full() {
                    return Ok(());
                }
            }
        }
        Err(Witness::new(
            format!("a {}-dimensional subspace of L_0^λ commutes with all boxed generators", dim - span.rank()),
            Some(&zero_root),
            Some(lambda),
        ))
    })
}

fn check_domain(ctx: &Context) -> Result<(), Witness> {
    let near: Vec<&Vec<i64>> = ctx.degrees.iter().take(3.max(ctx.model.degree_rank() + 1)).collect();
    let pairs: Vec<(&Vec<i64>, &Vec<i64>)> = ctx
        .roots
        .iter()
        .flat_map(|a| ctx.roots.iter().map(move |b| (a, b)))
        .filter(|(a, b)| pairing(b, a) < 0)
        .collect();
    pairs.par_iter().try_for_each(|&(alpha, beta)| {
        let xs: Vec<MatElement> = near.iter().filter_map(|l| ctx.first(alpha, l)).collect();
        let ys: Vec<(Vec<i64>, MatElement)> =
            near.iter().filter_map(|l| ctx.first(beta, l).map(|y| ((*l).clone(), y))).collect();
        // a non-homogeneous x exercises the highest-component argument
        let mut candidates = xs.clone();
        if xs.len() >= 2 {
            candidates.push(xs[0].add(&xs[1]));
        }
        for x in &candidates {
            for (mu, y) in &ys {
                let mut z = y.clone();
                for _ in 0..-pairing(beta, alpha) {
                    z = x.bracket(&z);
                }
                if z.is_zero() {
                    return Err(Witness::new(
                        format!("ad(x_α)^{} y_β = 0 for β = {beta:?}", -pairing(beta, alpha)),
                        Some(alpha),
                        Some(mu),
                    ));
                }
            }
        }
        Ok(())
    })
}

fn check_inverse(ctx: &Context) -> Result<(), Witness> {
    let zero = vec![0; ctx.model.degree_rank()];
    ctx.roots.par_iter().try_for_each(|alpha| {
        let populated: Vec<(&Vec<i64>, MatElement)> =
            ctx.degrees.iter().filter_map(|l| ctx.first(alpha, l).map(|e| (l, e))).take(3).collect();
        for w in populated.windows(2) {
            let (l0, e0) = (&w[0].0, &w[0].1);
            let e1 = &w[1].1;
            let Some(f) = ctx.first(&neg(alpha), &neg(l0)) else {
                return Err(Witness::new("missing opposite component", Some(alpha), Some(l0)));
            };
            let z = e0.add(e1).bracket(&f);
            let parts = ctx.model.homogeneous_parts(&z);
            if parts.keys().all(|d| *d == zero) {
                return Err(Witness::new("[x, y] ∈ L_0^0 for a non-homogeneous x", Some(alpha), Some(l0)));
            }
        }
        Ok(())
    })
}

fn check_generation(ctx: &Context) -> Result<(), Witness> {
    // non-reduced case: L_{2α}^σ ⊆ ad(e_α^0) L_α for α of smallest length
    let support = ctx.model.root_support();
    let zero = vec![0; ctx.model.degree_rank()];
    let doubles: Vec<(&Vec<i64>, Vec<i64>)> = ctx
        .roots
        .iter()
        .map(|a| (a, a.iter().map(|x| 2 * x).collect::<Vec<_>>()))
        .filter(|(_, d)| support.contains(d))
        .collect();
    doubles.par_iter().try_for_each(|(alpha, double)| {
        let Some(e) = ctx.first(alpha, &zero) else {
            return Err(Witness::new("L_α^0 = 0", Some(alpha), Some(&zero)));
        };
        for sigma in &ctx.degrees {
            let target = ctx.model.component(double, sigma).expect("Λ degree");
            if target.dim() == 0 {
                continue;
            }
            let x = ctx.first(alpha, sigma);
            let image = x.map(|x| e.bracket(&x)).filter(|z| !z.is_zero());
            let ok = image.is_some_and(|z| target.coordinates(&z).is_some());
            if !ok {
                return Err(Witness::new("L_{2α}^σ not reached from L_α", Some(double), Some(sigma)));
            }
        }
        Ok(())
    })
}
