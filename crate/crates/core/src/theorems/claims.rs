//! Per-claim sweeps. Every sweep compares a brute-force verdict against the
//! claim's predicate and records each disagreement.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    expected_eulerian, structural_violations, Bounds, ClaimId, Counterexample, Inspector, Outcome,
    TheoremReport,
};
use crate::domination::{binomial, domination_number, domination_profile};
use crate::error::{Error, Result};
use crate::graph::{
    corona as corona_of, disjoint_union, edge_slots, graph_from_slots, is_cocktail_party,
    make_family, FamilySpec, SeedGraph,
};
use crate::graph6::encode_graph6;
use crate::reconfig::{build_reconfig, cartesian_product, eulerian_report, ReconfigGraph};

pub(crate) struct Context<'a> {
    pub bounds: &'a Bounds,
    pub inspector: Option<Inspector<'a>>,
}

impl Context<'_> {
    /// Structural and caller-supplied checks on one built graph.
    fn examine(
        &self,
        key: u64,
        g: &SeedGraph,
        r: &ReconfigGraph,
        instance: &dyn Fn() -> String,
        out: &mut Outcome,
    ) {
        if self.bounds.structural {
            for v in structural_violations(r) {
                out.counterexamples
                    .push((key, Counterexample::structural(instance(), r.k(), v)));
            }
        }
        if let Some(inspect) = self.inspector {
            if let Err(msg) = inspect(g, r) {
                out.counterexamples.push((
                    key,
                    Counterexample::structural(instance(), r.k(), format!("inspector: {msg}")),
                ));
            }
        }
    }

    /// Builds `D_k(g)` and compares its Eulerian verdict with `expected`.
    fn judge(
        &self,
        key: u64,
        g: &SeedGraph,
        k: usize,
        expected: bool,
        instance: &dyn Fn() -> String,
        out: &mut Outcome,
    ) -> Result<bool> {
        let r = build_reconfig(g, k)?;
        self.judge_built(key, g, &r, expected, instance, out)
    }

    fn judge_built(
        &self,
        key: u64,
        g: &SeedGraph,
        r: &ReconfigGraph,
        expected: bool,
        instance: &dyn Fn() -> String,
        out: &mut Outcome,
    ) -> Result<bool> {
        let computed = eulerian_report(r).is_eulerian;
        out.instances += 1;
        if computed {
            out.eulerian
                .push((key, format!("{} k={}", instance(), r.k())));
        }
        if computed != expected {
            out.counterexamples.push((
                key,
                Counterexample::verdict(instance(), r.k(), expected, computed),
            ));
        }
        self.examine(key, g, r, instance, out);
        Ok(computed)
    }
}

fn g6_name(g: &SeedGraph) -> String {
    format!("g6:{}", encode_graph6(g))
}

fn merge_all(parts: Result<Outcome>, report: &mut TheoremReport) -> Result<()> {
    report.absorb(parts?);
    Ok(())
}

/// Runs `f` on every labeled graph of order `n` (optionally connected only)
/// in parallel. Keys order instances by `(n, edge mask)`.
fn labeled_sweep<F>(n: usize, connected_only: bool, f: F) -> Result<Outcome>
where
    F: Fn(u64, &SeedGraph, &mut Outcome) -> Result<()> + Sync,
{
    let slots = edge_slots(n);
    let total = 1u64 << slots.len();
    (0..total)
        .into_par_iter()
        .try_fold(Outcome::default, |mut acc, mask| {
            let g = graph_from_slots(n, &slots, mask);
            if !connected_only || g.is_connected() {
                f((n as u64) << 40 | mask, &g, &mut acc)?;
            }
            Ok(acc)
        })
        .try_reduce(Outcome::default, |a, b| Ok(a.merge(b)))
}

/// Checks `(family, k)` instances against [`expected_eulerian`].
fn family_sweep(ctx: &Context<'_>, items: Vec<(FamilySpec, usize)>) -> Result<Outcome> {
    items
        .into_par_iter()
        .enumerate()
        .try_fold(Outcome::default, |mut acc, (i, (spec, k))| {
            let g = make_family(&spec)?;
            let expected = expected_eulerian(&spec, k)?;
            let name = spec.to_string();
            ctx.judge(i as u64, &g, k, expected, &|| name.clone(), &mut acc)?;
            Ok(acc)
        })
        .try_reduce(Outcome::default, |a, b| Ok(a.merge(b)))
}

/// `(spec, k)` for every `gamma < k < n`.
fn restricted_range(spec: FamilySpec) -> Result<Vec<(FamilySpec, usize)>> {
    let g = make_family(&spec)?;
    let gamma = domination_number(&g)?;
    Ok((gamma + 1..g.n()).map(|k| (spec.clone(), k)).collect())
}

pub(crate) fn parity_odd(ctx: &Context<'_>, mut report: TheoremReport) -> Result<TheoremReport> {
    for n in ctx.bounds.min_n.max(1)..=ctx.bounds.max_n {
        let part = labeled_sweep(n, false, |key, g, out| {
            let profile = domination_profile(g)?;
            out.instances += 1;
            if profile.total_count % 2 == 0 {
                out.counterexamples.push((
                    key,
                    Counterexample {
                        instance: g6_name(g),
                        k: None,
                        expected: "odd".into(),
                        computed: profile.total_count.to_string(),
                        detail: None,
                    },
                ));
            }
            Ok(())
        });
        merge_all(part, &mut report)?;
    }
    Ok(report)
}

/// The canonical `H_6` and the copy with edge `{0,2}` removed that the
/// planted-fault run substitutes for it.
pub fn planted_fault_seed() -> (SeedGraph, SeedGraph) {
    let h6 = make_family(&FamilySpec::Cocktail { n: 6 }).expect("H_6 is valid");
    let mut mutated = h6.clone();
    mutated.remove_edge(0, 2);
    (h6, mutated.with_name("cocktail:6 minus {0,2}"))
}

pub(crate) fn characterization(
    ctx: &Context<'_>,
    mut report: TheoremReport,
) -> Result<TheoremReport> {
    // Single-vertex seeds sit outside the theorem; D(K_1) is one isolated node.
    let k1 = SeedGraph::empty(1)?;
    let d = build_reconfig(&k1, 1)?;
    if d.node_count() != 1 || d.edge_count() != 0 {
        let mut out = Outcome::default();
        out.counterexamples.push((
            0,
            Counterexample {
                instance: "complete:1".into(),
                k: Some(1),
                expected: "1 node, 0 edges".into(),
                computed: format!("{} nodes, {} edges", d.node_count(), d.edge_count()),
                detail: None,
            },
        ));
        report.absorb(out);
    }
    let (h6, mutated) = planted_fault_seed();
    for n in ctx.bounds.min_n.max(2)..=ctx.bounds.max_n {
        let part = labeled_sweep(n, true, |key, g, out| {
            let expected = is_cocktail_party(g);
            let computed = if ctx.bounds.plant_fault && *g == h6 {
                let r = build_reconfig(&mutated, n)?;
                ctx.judge_built(key, &mutated, &r, expected, &|| g6_name(g), out)?
            } else {
                ctx.judge(key, g, n, expected, &|| g6_name(g), out)?
            };
            out.tally(format!("connected_n{n}"), 1);
            if computed {
                out.tally(format!("eulerian_n{n}"), 1);
            }
            if expected {
                out.tally(format!("cocktail_n{n}"), 1);
            }
            Ok(())
        });
        merge_all(part, &mut report)?;
    }
    Ok(report)
}

pub(crate) fn path_cycle(ctx: &Context<'_>, mut report: TheoremReport) -> Result<TheoremReport> {
    let mut items = Vec::new();
    for n in ctx.bounds.min_n.max(3)..=ctx.bounds.max_n {
        items.extend(restricted_range(FamilySpec::Path { n })?);
        items.extend(restricted_range(FamilySpec::Cycle { n })?);
    }
    merge_all(family_sweep(ctx, items), &mut report)?;
    Ok(report)
}

pub(crate) fn complete_bipartite(
    ctx: &Context<'_>,
    mut report: TheoremReport,
) -> Result<TheoremReport> {
    let mut items = Vec::new();
    for n in 1..=ctx.bounds.max_n {
        for m in ctx.bounds.min_n.max(1)..=n {
            items.extend(restricted_range(FamilySpec::CompleteBipartite { m, n })?);
        }
    }
    merge_all(family_sweep(ctx, items), &mut report)?;
    Ok(report)
}

pub(crate) fn cocktail_k(ctx: &Context<'_>, mut report: TheoremReport) -> Result<TheoremReport> {
    let mut items = Vec::new();
    for n in (ctx.bounds.min_n.max(4)..=ctx.bounds.max_n).filter(|n| n % 2 == 0) {
        // 2 < k < n, then k = n for the full dominating graph
        items.extend((3..=n).map(|k| (FamilySpec::Cocktail { n }, k)));
    }
    merge_all(family_sweep(ctx, items), &mut report)?;
    Ok(report)
}

pub(crate) fn complete_k(ctx: &Context<'_>, mut report: TheoremReport) -> Result<TheoremReport> {
    let mut items = Vec::new();
    for n in ctx.bounds.min_n.max(2)..=ctx.bounds.max_n {
        items.extend((2..n).map(|k| (FamilySpec::Complete { n }, k)));
    }
    merge_all(family_sweep(ctx, items), &mut report)?;
    Ok(report)
}

pub(crate) fn corona(ctx: &Context<'_>, mut report: TheoremReport) -> Result<TheoremReport> {
    for n in ctx.bounds.min_n.max(2)..=ctx.bounds.max_n {
        let part = labeled_sweep(n, false, |key, inner, out| {
            let g = corona_of(inner)?;
            let name = || format!("corona:{}", g6_name(inner));
            for k in n + 1..2 * n {
                let expected = super::expected::corona_verdict(n, k);
                ctx.judge(key << 5 | k as u64, &g, k, expected, &name, out)?;
            }
            Ok(())
        });
        merge_all(part, &mut report)?;
    }
    Ok(report)
}

pub(crate) fn bipartite_well_dominated(
    ctx: &Context<'_>,
    mut report: TheoremReport,
) -> Result<TheoremReport> {
    // (key, description, seed, Some(inner order) for coronas)
    let mut seeds: Vec<(u64, String, SeedGraph, Option<usize>)> = vec![(
        0,
        "cycle:4".into(),
        make_family(&FamilySpec::Cycle { n: 4 })?,
        None,
    )];
    for n in ctx.bounds.min_n.max(2)..=ctx.bounds.max_n {
        let slots = edge_slots(n);
        for mask in 0..1u64 << slots.len() {
            let inner = graph_from_slots(n, &slots, mask);
            if inner.is_connected() && inner.is_bipartite() {
                let name = format!("corona:{}", g6_name(&inner));
                seeds.push(((n as u64) << 40 | mask, name, corona_of(&inner)?, Some(n)));
            }
        }
    }
    let part = seeds
        .into_par_iter()
        .try_fold(Outcome::default, |mut out, (key, name, g, inner)| {
            let profile = domination_profile(&g)?;
            if !g.is_bipartite() || !profile.well_dominated {
                out.counterexamples.push((
                    key,
                    Counterexample {
                        instance: name.clone(),
                        k: None,
                        expected: "bipartite and well-dominated".into(),
                        computed: format!(
                            "bipartite={}, gamma={}, upper_gamma={}",
                            g.is_bipartite(),
                            profile.gamma,
                            profile.upper_gamma
                        ),
                        detail: Some("hypothesis".into()),
                    },
                ));
                return Ok(out);
            }
            for k in profile.gamma + 1..g.n() {
                let expected = match inner {
                    None => k == 3,
                    Some(m) => super::expected::corona_verdict(m, k),
                };
                ctx.judge(
                    key << 5 | k as u64,
                    &g,
                    k,
                    expected,
                    &|| name.clone(),
                    &mut out,
                )?;
            }
            Ok::<_, Error>(out)
        })
        .try_reduce(Outcome::default, |a, b| Ok(a.merge(b)));
    merge_all(part, &mut report)?;
    Ok(report)
}

pub(crate) fn universal_gamma_set(
    ctx: &Context<'_>,
    mut report: TheoremReport,
) -> Result<TheoremReport> {
    for n in ctx.bounds.min_n.max(2)..=ctx.bounds.max_n {
        let part = labeled_sweep(n, true, |key, g, out| {
            let profile = domination_profile(g)?;
            let gamma = profile.gamma;
            if profile.counts_by_size[gamma] != binomial(n, gamma) {
                return Ok(());
            }
            out.tally("qualifying_seeds", 1);
            let complete = g.edge_count() == n * (n - 1) / 2;
            let cocktail = is_cocktail_party(g);
            if !complete && !cocktail {
                out.counterexamples.push((
                    key,
                    Counterexample {
                        instance: g6_name(g),
                        k: None,
                        expected: "complete or cocktail party".into(),
                        computed: format!("neither (gamma = {gamma})"),
                        detail: None,
                    },
                ));
            }
            for k in gamma + 1..n {
                let expected = (complete && n % 2 == 1 && k == 2) || (cocktail && k % 2 == 0);
                ctx.judge(key << 5 | k as u64, g, k, expected, &|| g6_name(g), out)?;
            }
            Ok(())
        });
        merge_all(part, &mut report)?;
    }
    Ok(report)
}

pub(crate) fn gamma_formulas(
    ctx: &Context<'_>,
    mut report: TheoremReport,
) -> Result<TheoremReport> {
    let max = ctx.bounds.max_n;
    let lo = ctx.bounds.min_n.max(1);
    // (graph, expected gamma, expected upper gamma when the claim fixes it)
    let mut cases: Vec<(String, SeedGraph, usize, Option<usize>)> = Vec::new();
    let fam = |spec: FamilySpec| -> Result<(String, SeedGraph)> {
        Ok((spec.to_string(), make_family(&spec)?))
    };
    for n in lo..=max {
        let (name, g) = fam(FamilySpec::Path { n })?;
        cases.push((name, g, n.div_ceil(3), None));
        if n >= 3 {
            let (name, g) = fam(FamilySpec::Cycle { n })?;
            cases.push((name, g, n.div_ceil(3), None));
        }
        let (name, g) = fam(FamilySpec::Complete { n })?;
        cases.push((name, g, 1, Some(1)));
        for m in 1..=n / 2 {
            let (name, g) = fam(FamilySpec::CompleteBipartite { m, n: n - m })?;
            cases.push((name, g, if m == 1 { 1 } else { 2 }, None));
        }
        if n >= 4 && n % 2 == 0 {
            let (name, g) = fam(FamilySpec::Cocktail { n })?;
            cases.push((name, g, 2, Some(2)));
        }
    }
    for inner_n in 2..=(max / 2).min(4) {
        let slots = edge_slots(inner_n);
        for mask in 0..1u64 << slots.len() {
            let inner = graph_from_slots(inner_n, &slots, mask);
            cases.push((
                format!("corona:{}", g6_name(&inner)),
                corona_of(&inner)?,
                inner_n,
                Some(inner_n),
            ));
        }
    }
    let part = cases
        .into_par_iter()
        .enumerate()
        .try_fold(Outcome::default, |mut out, (i, (name, g, gamma, upper))| {
            let p = domination_profile(&g)?;
            out.instances += 1;
            let ok = p.gamma == gamma && upper.is_none_or(|u| p.upper_gamma == u);
            if !ok {
                out.counterexamples.push((
                    i as u64,
                    Counterexample {
                        instance: name,
                        k: None,
                        expected: format!("gamma={gamma}, upper_gamma={upper:?}"),
                        computed: format!("gamma={}, upper_gamma={}", p.gamma, p.upper_gamma),
                        detail: None,
                    },
                ));
            }
            Ok::<_, Error>(out)
        })
        .try_reduce(Outcome::default, |a, b| Ok(a.merge(b)));
    merge_all(part, &mut report)?;
    Ok(report)
}

pub(crate) fn connected_odd_bipartite(
    ctx: &Context<'_>,
    mut report: TheoremReport,
) -> Result<TheoremReport> {
    for n in ctx.bounds.min_n.max(1)..=ctx.bounds.max_n {
        let part = labeled_sweep(n, false, |key, g, out| {
            let r = build_reconfig(g, n)?;
            out.instances += 1;
            for v in structural_violations(&r) {
                out.counterexamples
                    .push((key, Counterexample::structural(g6_name(g), n, v)));
            }
            if let Some(inspect) = ctx.inspector {
                if let Err(msg) = inspect(g, &r) {
                    out.counterexamples.push((
                        key,
                        Counterexample::structural(g6_name(g), n, format!("inspector: {msg}")),
                    ));
                }
            }
            Ok(())
        });
        merge_all(part, &mut report)?;
    }
    Ok(report)
}

pub(crate) fn mixed_parity(ctx: &Context<'_>, mut report: TheoremReport) -> Result<TheoremReport> {
    for n in ctx.bounds.min_n.max(2)..=ctx.bounds.max_n {
        let part = labeled_sweep(n, true, |key, g, out| {
            let profile = domination_profile(g)?;
            let ell = profile.universal_threshold - 1;
            let some = profile.counts_by_size[ell] > 0;
            let not_all = profile.counts_by_size[ell] < binomial(n, ell);
            if ell == 0 || !some || !not_all {
                out.tally("skipped", 1);
                return Ok(());
            }
            let r = build_reconfig(g, n)?;
            out.instances += 1;
            let odd = eulerian_report(&r).odd_degree_count;
            if odd == 0 || odd == r.node_count() {
                out.counterexamples.push((
                    key,
                    Counterexample {
                        instance: g6_name(g),
                        k: Some(n),
                        expected: "both degree parities".into(),
                        computed: if odd == 0 { "all even" } else { "all odd" }.into(),
                        detail: Some(format!("l = {ell}")),
                    },
                ));
            }
            ctx.examine(key, g, &r, &|| g6_name(g), out);
            Ok(())
        });
        merge_all(part, &mut report)?;
    }
    Ok(report)
}

/// Checks the Cartesian-product decomposition for one list of parts.
fn product_instance(ctx: &Context<'_>, key: u64, parts: &[SeedGraph]) -> Result<Outcome> {
    let mut out = Outcome::default();
    let name = format!(
        "union:{}",
        parts.iter().map(g6_name).collect::<Vec<_>>().join("+")
    );
    let fail = |out: &mut Outcome, expected: &str, computed: String| {
        out.counterexamples.push((
            key,
            Counterexample {
                instance: name.clone(),
                k: None,
                expected: expected.into(),
                computed,
                detail: None,
            },
        ));
    };
    let mut union = parts[0].clone();
    for p in &parts[1..] {
        union = disjoint_union(&union, p)?;
    }
    let whole = build_reconfig(&union, union.n())?;
    let factors: Vec<ReconfigGraph> = parts
        .iter()
        .map(|p| build_reconfig(p, p.n()))
        .collect::<Result<_>>()?;
    let mut product = factors[0].clone();
    for f in &factors[1..] {
        product = cartesian_product(&product, f)?;
    }
    out.instances += 1;
    ctx.examine(key, &union, &whole, &|| name.clone(), &mut out);

    if whole.node_count() != product.node_count() {
        fail(
            &mut out,
            "equal node counts",
            format!("{} vs {}", whole.node_count(), product.node_count()),
        );
        return Ok(out);
    }
    // Restriction map: a dominating set of the union goes to the tuple of
    // its traces on the parts.
    let mut offsets = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for p in parts {
        offsets.push(acc);
        acc += p.n();
    }
    let mut image = Vec::with_capacity(whole.node_count());
    let mut hit = vec![false; product.node_count()];
    for s in whole.nodes() {
        let mut tuple = Vec::with_capacity(parts.len());
        for ((p, f), &off) in parts.iter().zip(&factors).zip(&offsets) {
            let trace = (s.bits() >> off) & p.vertex_mask();
            let set = crate::domination::VertexSet::new(p.n(), trace)?;
            match f.index_of(set) {
                Some(i) => tuple.push(i as u32),
                None => {
                    fail(
                        &mut out,
                        "traces dominate their parts",
                        format!("{s} restricts to non-dominating {set}"),
                    );
                    return Ok(out);
                }
            }
        }
        let Some(j) = product.index_of_tuple(&tuple) else {
            fail(&mut out, "tuple is a product node", format!("{tuple:?}"));
            return Ok(out);
        };
        if std::mem::replace(&mut hit[j], true) {
            fail(
                &mut out,
                "injective restriction map",
                format!("{tuple:?} hit twice"),
            );
            return Ok(out);
        }
        image.push(j);
    }
    for (a, b) in whole.edges() {
        if !product.has_edge(image[a], image[b]) {
            fail(
                &mut out,
                "edge preserved",
                format!("{} -- {}", whole.nodes()[a], whole.nodes()[b]),
            );
            return Ok(out);
        }
    }
    let mut preimage = vec![0usize; product.node_count()];
    for (i, &j) in image.iter().enumerate() {
        preimage[j] = i;
    }
    for (a, b) in product.edges() {
        if !whole.has_edge(preimage[a], preimage[b]) {
            fail(
                &mut out,
                "product edge reflected",
                format!(
                    "{} -- {}",
                    product.node_label(a, Default::default()),
                    product.node_label(b, Default::default())
                ),
            );
            return Ok(out);
        }
    }
    let whole_eulerian = eulerian_report(&whole).is_eulerian;
    let factors_eulerian = factors.iter().all(|f| eulerian_report(f).is_eulerian);
    if whole_eulerian {
        out.eulerian.push((key, name.clone()));
    }
    if whole_eulerian != factors_eulerian {
        fail(
            &mut out,
            &format!("union Eulerian = {factors_eulerian} (all factors)"),
            format!("union Eulerian = {whole_eulerian}"),
        );
    }
    Ok(out)
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> SeedGraph {
    let slots = edge_slots(n);
    loop {
        let mask = if slots.is_empty() {
            0
        } else {
            rng.random_range(0..1u64 << slots.len())
        };
        let g = graph_from_slots(n, &slots, mask);
        if g.is_connected() {
            return g;
        }
    }
}

pub(crate) fn product_decomposition(
    ctx: &Context<'_>,
    mut report: TheoremReport,
) -> Result<TheoremReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.bounds.rng_seed);
    let lo = ctx.bounds.min_n.max(1);
    let hi = ctx.bounds.max_n.max(lo);
    let samples: Vec<Vec<SeedGraph>> = (0..ctx.bounds.samples)
        .map(|_| {
            let parts = rng.random_range(2..=3);
            (0..parts)
                .map(|_| {
                    let n = rng.random_range(lo..=hi);
                    random_connected(&mut rng, n)
                })
                .collect()
        })
        .collect();
    let part = samples
        .par_iter()
        .enumerate()
        .map(|(i, parts)| product_instance(ctx, i as u64, parts))
        .try_reduce(Outcome::default, |a, b| Ok(a.merge(b)));
    merge_all(part, &mut report)?;
    Ok(report)
}

/// Checks the product decomposition and the Eulerian equivalence for one
/// explicit list of component graphs.
pub fn verify_product_decomposition(parts: &[SeedGraph]) -> Result<TheoremReport> {
    if parts.len() < 2 || parts.iter().any(|p| p.n() == 0) {
        return Err(Error::InvalidFamilyParameters(
            "product decomposition needs at least two non-empty parts".into(),
        ));
    }
    let claim = ClaimId::ProductDecomposition;
    let bounds = Bounds::for_claim(claim);
    let ctx = Context {
        bounds: &bounds,
        inspector: None,
    };
    let started = Instant::now();
    let mut report = TheoremReport::new(claim, format!("{} explicit parts", parts.len()));
    report.absorb(product_instance(&ctx, 0, parts)?);
    Ok(report.finish(started))
}

/// Mixed-parity check over every connected labeled graph with
/// `2 <= n <= n_max`.
pub fn verify_mixed_parity_lemma(n_max: usize) -> Result<TheoremReport> {
    let claim = ClaimId::MixedParityLemma;
    super::verify_claim(claim, &Bounds::for_claim(claim).with_max_n(n_max))
}
