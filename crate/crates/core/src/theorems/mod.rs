//! Claim catalog: every Eulerian characterization of k-dominating graphs,
//! each paired with an exhaustive check over a bounded instance range.

mod checks;
mod claims;
mod expected;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SeedGraph;
use crate::reconfig::ReconfigGraph;

pub use checks::structural_violations;
pub use claims::{planted_fault_seed, verify_mixed_parity_lemma, verify_product_decomposition};
pub use expected::{expected_eulerian, expected_for_graph, expected_full};

/// Counterexamples kept per report; the full count is always reported.
pub const COUNTEREXAMPLE_CAP: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimId {
    ParityOdd,
    ProductDecomposition,
    MixedParityLemma,
    DominatingGraphCharacterization,
    PathCycle,
    CompleteBipartite,
    CocktailK,
    CompleteK,
    UniversalGammaSet,
    Corona,
    BipartiteWellDominated,
    GammaFormulas,
    DominatingGraphConnectedOddBipartite,
}

impl ClaimId {
    pub const ALL: [ClaimId; 13] = [
        ClaimId::ParityOdd,
        ClaimId::ProductDecomposition,
        ClaimId::MixedParityLemma,
        ClaimId::DominatingGraphCharacterization,
        ClaimId::PathCycle,
        ClaimId::CompleteBipartite,
        ClaimId::CocktailK,
        ClaimId::CompleteK,
        ClaimId::UniversalGammaSet,
        ClaimId::Corona,
        ClaimId::BipartiteWellDominated,
        ClaimId::GammaFormulas,
        ClaimId::DominatingGraphConnectedOddBipartite,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::ParityOdd => "parity_odd",
            ClaimId::ProductDecomposition => "product_decomposition",
            ClaimId::MixedParityLemma => "mixed_parity_lemma",
            ClaimId::DominatingGraphCharacterization => "dominating_graph_characterization",
            ClaimId::PathCycle => "path_cycle",
            ClaimId::CompleteBipartite => "complete_bipartite",
            ClaimId::CocktailK => "cocktail_k",
            ClaimId::CompleteK => "complete_k",
            ClaimId::UniversalGammaSet => "universal_gamma_set",
            ClaimId::Corona => "corona",
            ClaimId::BipartiteWellDominated => "bipartite_well_dominated",
            ClaimId::GammaFormulas => "gamma_formulas",
            ClaimId::DominatingGraphConnectedOddBipartite => {
                "dominating_graph_connected_odd_bipartite"
            }
        }
    }

    /// One-line statement of what the claim asserts.
    pub fn statement(self) -> &'static str {
        match self {
            ClaimId::ParityOdd => "every finite graph has an odd number of dominating sets",
            ClaimId::ProductDecomposition => {
                "D of a disjoint union is the Cartesian product of the components' D, \
                 and is Eulerian iff every factor is"
            }
            ClaimId::MixedParityLemma => {
                "if some but not all l-sets dominate and every (l+1)-set dominates, \
                 D(G) has nodes of both degree parities"
            }
            ClaimId::DominatingGraphCharacterization => {
                "for connected G on n >= 2 vertices, D(G) is Eulerian iff G is a cocktail party graph"
            }
            ClaimId::PathCycle => {
                "D_k(P_n) Eulerian iff (n,k)=(4,3); D_k(C_n) Eulerian iff (n,k) in {(7,4),(3,2)}"
            }
            ClaimId::CompleteBipartite => {
                "D_k(K_{m,n}) Eulerian iff (m=1, n even, k odd) or (m>=3, m=n mod 2, k=3)"
            }
            ClaimId::CocktailK => "for 2 < k < n, D_k(H_n) Eulerian iff k is even",
            ClaimId::CompleteK => "for 1 < k < n, D_k(K_n) Eulerian iff n odd and k = 2",
            ClaimId::UniversalGammaSet => {
                "if every gamma-set dominates connected G, G is complete or cocktail and \
                 D_k(G) is Eulerian iff (complete, n odd, k=2) or (cocktail, k even)"
            }
            ClaimId::Corona => "for n < k < 2n, D_k(G o K_1) Eulerian iff n even and k = n+1",
            ClaimId::BipartiteWellDominated => {
                "bipartite well-dominated G: D_k(G) Eulerian iff (G = C_4, k = 3) or \
                 (G a corona on 2n vertices, n even, k = n+1)"
            }
            ClaimId::GammaFormulas => {
                "gamma(P_n) = gamma(C_n) = ceil(n/3); gamma(K_n) = 1; gamma(K_{m,n}) in {1,2}; \
                 gamma = Gamma for cocktail graphs and coronas"
            }
            ClaimId::DominatingGraphConnectedOddBipartite => {
                "D(G) is connected, bipartite by cardinality parity, has odd order and an even-degree node"
            }
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::ClaimUnknown(s.to_string()))
    }
}

/// Instance range for one claim. `min_n`/`max_n` bound the varying order
/// parameter (inner-graph order for coronas, component order for products).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub min_n: usize,
    pub max_n: usize,
    /// Sampled instances (product decomposition only).
    pub samples: usize,
    pub rng_seed: u64,
    /// Corrupt the canonical `H_6` in the characterization sweep so the
    /// harness must report it.
    pub plant_fault: bool,
    /// Run [`structural_violations`] on every graph built.
    pub structural: bool,
}

impl Bounds {
    pub fn for_claim(claim: ClaimId) -> Self {
        let (min_n, max_n) = match claim {
            ClaimId::ParityOdd => (1, 6),
            ClaimId::ProductDecomposition => (1, 5),
            ClaimId::MixedParityLemma => (2, 6),
            ClaimId::DominatingGraphCharacterization => (2, 7),
            ClaimId::PathCycle => (3, 15),
            ClaimId::CompleteBipartite => (1, 8),
            ClaimId::CocktailK => (4, 12),
            ClaimId::CompleteK => (2, 12),
            ClaimId::UniversalGammaSet => (2, 6),
            ClaimId::Corona => (2, 5),
            ClaimId::BipartiteWellDominated => (2, 5),
            ClaimId::GammaFormulas => (1, 15),
            ClaimId::DominatingGraphConnectedOddBipartite => (1, 6),
        };
        Bounds {
            min_n,
            max_n,
            samples: 100,
            rng_seed: 0x5eed_d0e5,
            plant_fault: false,
            structural: true,
        }
    }

    pub fn with_max_n(mut self, max_n: usize) -> Self {
        self.max_n = max_n;
        self
    }

    pub fn with_min_n(mut self, min_n: usize) -> Self {
        self.min_n = min_n;
        self
    }

    /// Largest `max_n` each claim accepts.
    pub fn limit(claim: ClaimId) -> usize {
        match claim {
            ClaimId::ParityOdd
            | ClaimId::DominatingGraphCharacterization
            | ClaimId::MixedParityLemma
            | ClaimId::UniversalGammaSet => crate::graph::MAX_ENUMERATION_ORDER,
            ClaimId::DominatingGraphConnectedOddBipartite => crate::graph::MAX_ENUMERATION_ORDER,
            ClaimId::ProductDecomposition => 6,
            ClaimId::Corona | ClaimId::BipartiteWellDominated => 6,
            ClaimId::CompleteBipartite => 10,
            ClaimId::PathCycle
            | ClaimId::CocktailK
            | ClaimId::CompleteK
            | ClaimId::GammaFormulas => 20,
        }
    }

    fn check(&self, claim: ClaimId) -> Result<()> {
        let limit = Bounds::limit(claim);
        if self.max_n > limit {
            return Err(Error::BoundExceeded(format!(
                "{claim} supports max_n <= {limit}, got {}",
                self.max_n
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n in [{}, {}]", self.min_n, self.max_n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Counterexample {
    pub instance: String,
    pub k: Option<usize>,
    pub expected: String,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Counterexample {
    pub fn verdict(instance: impl Into<String>, k: usize, expected: bool, computed: bool) -> Self {
        Counterexample {
            instance: instance.into(),
            k: Some(k),
            expected: expected.to_string(),
            computed: computed.to_string(),
            detail: None,
        }
    }

    pub fn structural(instance: impl Into<String>, k: usize, detail: String) -> Self {
        Counterexample {
            instance: instance.into(),
            k: Some(k),
            expected: "sound".into(),
            computed: "violated".into(),
            detail: Some(detail),
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.instance)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        write!(
            f,
            ": expected {}, computed {}",
            self.expected, self.computed
        )?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub claim: ClaimId,
    pub statement: String,
    pub bounds: String,
    pub instances_checked: u64,
    pub passed: bool,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Instances whose reconfiguration graph was found Eulerian, capped.
    pub eulerian_instances: Vec<String>,
    /// Named counts gathered during the sweep.
    pub tallies: BTreeMap<String, u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TheoremReport {
    pub(crate) fn new(claim: ClaimId, bounds: String) -> Self {
        TheoremReport {
            claim,
            statement: claim.statement().to_string(),
            bounds,
            instances_checked: 0,
            passed: true,
            counterexample_count: 0,
            counterexamples: Vec::new(),
            eulerian_instances: Vec::new(),
            tallies: BTreeMap::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub(crate) fn absorb(&mut self, mut outcome: Outcome) {
        outcome.counterexamples.sort();
        outcome.eulerian.sort();
        self.instances_checked += outcome.instances;
        self.counterexample_count += outcome.counterexamples.len() as u64;
        self.counterexamples.extend(
            outcome
                .counterexamples
                .into_iter()
                .map(|(_, c)| c)
                .take(COUNTEREXAMPLE_CAP),
        );
        self.eulerian_instances.extend(
            outcome
                .eulerian
                .into_iter()
                .map(|(_, e)| e)
                .take(EULERIAN_CAP),
        );
        for (key, v) in outcome.tallies {
            *self.tallies.entry(key).or_insert(0) += v;
        }
    }

    pub(crate) fn finish(mut self, started: Instant) -> Self {
        self.counterexamples.truncate(COUNTEREXAMPLE_CAP);
        self.eulerian_instances.truncate(EULERIAN_CAP);
        self.passed = self.counterexample_count == 0;
        self.elapsed = started.elapsed();
        self
    }
}

const EULERIAN_CAP: usize = 1000;

/// Aggregated results of checking a batch of instances. Entries carry an
/// instance ordinal so parallel merges sort back into sweep order.
#[derive(Debug, Default)]
pub(crate) struct Outcome {
    pub instances: u64,
    pub counterexamples: Vec<(u64, Counterexample)>,
    pub eulerian: Vec<(u64, String)>,
    pub tallies: BTreeMap<String, u64>,
}

impl Outcome {
    pub fn merge(mut self, other: Outcome) -> Outcome {
        self.instances += other.instances;
        self.counterexamples.extend(other.counterexamples);
        self.eulerian.extend(other.eulerian);
        for (key, v) in other.tallies {
            *self.tallies.entry(key).or_insert(0) += v;
        }
        self
    }

    pub fn tally(&mut self, key: impl Into<String>, v: u64) {
        *self.tallies.entry(key.into()).or_insert(0) += v;
    }
}

/// Extra per-graph check supplied by the caller, run on every
/// reconfiguration graph a verification builds.
pub type Inspector<'a> =
    &'a (dyn Fn(&SeedGraph, &ReconfigGraph) -> std::result::Result<(), String> + Sync);

pub fn verify_claim(claim: ClaimId, bounds: &Bounds) -> Result<TheoremReport> {
    verify_claim_with(claim, bounds, None)
}

pub fn verify_claim_with(
    claim: ClaimId,
    bounds: &Bounds,
    inspector: Option<Inspector<'_>>,
) -> Result<TheoremReport> {
    bounds.check(claim)?;
    let ctx = claims::Context { bounds, inspector };
    let started = Instant::now();
    let report = TheoremReport::new(claim, bounds.to_string());
    let report = match claim {
        ClaimId::ParityOdd => claims::parity_odd(&ctx, report)?,
        ClaimId::ProductDecomposition => claims::product_decomposition(&ctx, report)?,
        ClaimId::MixedParityLemma => claims::mixed_parity(&ctx, report)?,
        ClaimId::DominatingGraphCharacterization => claims::characterization(&ctx, report)?,
        ClaimId::PathCycle => claims::path_cycle(&ctx, report)?,
        ClaimId::CompleteBipartite => claims::complete_bipartite(&ctx, report)?,
        ClaimId::CocktailK => claims::cocktail_k(&ctx, report)?,
        ClaimId::CompleteK => claims::complete_k(&ctx, report)?,
        ClaimId::UniversalGammaSet => claims::universal_gamma_set(&ctx, report)?,
        ClaimId::Corona => claims::corona(&ctx, report)?,
        ClaimId::BipartiteWellDominated => claims::bipartite_well_dominated(&ctx, report)?,
        ClaimId::GammaFormulas => claims::gamma_formulas(&ctx, report)?,
        ClaimId::DominatingGraphConnectedOddBipartite => {
            claims::connected_odd_bipartite(&ctx, report)?
        }
    };
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_ids_round_trip() {
        for c in ClaimId::ALL {
            assert_eq!(c.as_str().parse::<ClaimId>().unwrap(), c);
            assert_eq!(serde_json::to_value(c).unwrap(), c.as_str());
        }
        assert!(matches!(
            "nope".parse::<ClaimId>(),
            Err(Error::ClaimUnknown(_))
        ));
    }

    #[test]
    fn bounds_are_enforced() {
        let b = Bounds::for_claim(ClaimId::ParityOdd).with_max_n(8);
        assert!(matches!(
            verify_claim(ClaimId::ParityOdd, &b),
            Err(Error::BoundExceeded(_))
        ));
    }
}
