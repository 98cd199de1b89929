//! Report assembly for the CLI: the full analyze report, the verify check
//! suite, and the randomized census driver.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::center::CenterTables;
use crate::error::{Bounds, Result};
use crate::group::{build_group, AbelianGroup, Generator, GroupSpec};
use crate::monomial::RadicalFamily;
use crate::quiver::{build_mckay, contraction, is_connected, Connectivity, McKayQuiver};
use crate::singular::{
    locus_report, mask_to_coords, singular_locus_cst, singular_locus_elementwise,
    SingularLocusReport,
};

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub dim: usize,
    pub order: usize,
    pub exponent: u64,
    pub snf: Vec<u64>,
    pub smooth: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuiverReport {
    pub vertices: usize,
    pub arrows: usize,
    pub con_vertices: usize,
    pub con_arrows: usize,
    pub connectivity: Connectivity,
    pub mckay: McKayQuiver,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharIdealReport {
    pub character: Vec<u64>,
    pub bar_gens: Vec<Vec<u32>>,
    pub radical: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CenterReport {
    pub max_degree: u32,
    pub dim_z: Vec<usize>,
    pub dim_r: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdicts {
    pub reconstruction: bool,
    pub radical_containment: bool,
    pub connectivity: Connectivity,
    pub cst_equals_elementwise: bool,
    pub center_consistency: bool,
    pub oracle_agreement: Option<bool>,
    pub smooth: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub group: GroupSummary,
    pub hilbert_basis: Vec<Vec<u32>>,
    pub quiver: QuiverReport,
    pub singular_locus: SingularLocusReport,
    pub ideals: Vec<CharIdealReport>,
    pub reduced_center: Vec<Vec<usize>>,
    pub center: CenterReport,
    pub verdicts: Verdicts,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub group_ms: u128,
    pub tables_ms: u128,
    pub center_ms: u128,
    pub total_ms: u128,
}

/// Deterministic report plus wall-clock timings, kept in a separate object
/// so report bytes are reproducible run to run.
#[derive(Debug, Clone, Serialize)]
pub struct TimedReport {
    pub report: AnalyzeReport,
    pub timing: Timing,
}

fn family_coords(n: usize, fam: &RadicalFamily) -> Vec<Vec<usize>> {
    fam.supports.iter().map(|&m| mask_to_coords(n, m)).collect()
}

/// Full analysis pipeline. Exit-code policy lives in the binary; all check
/// verdicts are data here.
pub fn analyze(spec: &GroupSpec, max_degree: Option<u32>, bounds: &Bounds) -> Result<TimedReport> {
    let t0 = Instant::now();
    let group = build_group(spec, bounds)?;
    let group_ms = t0.elapsed().as_millis();

    let t1 = Instant::now();
    let tables = CenterTables::new(&group, bounds)?;
    let tables_ms = t1.elapsed().as_millis();

    let mckay = build_mckay(&group);
    let con = contraction(&mckay);
    let connectivity = is_connected(&con);

    let locus = locus_report(&group);
    let sing = singular_locus_cst(&group);
    let elementwise = singular_locus_elementwise(&group);

    let degree = max_degree.unwrap_or(2 * group.order() as u32);
    let t2 = Instant::now();
    let center = tables.center_hilbert(degree);
    let center_ms = t2.elapsed().as_millis();
    let (center, center_consistency) = match center {
        Ok(c) => (c, true),
        Err(crate::error::Error::CenterConsistency { .. }) => (
            crate::center::CenterHilbert {
                max_degree: degree,
                dim_z: Vec::new(),
                dim_r: Vec::new(),
            },
            false,
        ),
        Err(e) => return Err(e),
    };

    let oracle_agreement = if group.order() as u64 <= bounds.oracle_max_order {
        let d = degree.min(bounds.oracle_max_degree);
        let oracle = tables.dense_center_oracle(d, bounds)?;
        Some(center_consistency && center.dim_z[..=d as usize] == oracle[..])
    } else {
        None
    };

    let (reconstruction, _) = tables.verify_reconstruction(&sing);
    let report = AnalyzeReport {
        group: GroupSummary {
            dim: group.n,
            order: group.order(),
            exponent: group.exponent,
            snf: group.snf.clone(),
            smooth: sing.is_unit(),
        },
        hilbert_basis: tables
            .classes
            .hilbert_basis()
            .iter()
            .map(|m| m.exp.clone())
            .collect(),
        quiver: QuiverReport {
            vertices: mckay.vertices.len(),
            arrows: mckay.arrows.len(),
            con_vertices: con.vertices.len(),
            con_arrows: con.arrows.len(),
            connectivity,
            mckay: mckay.clone(),
        },
        singular_locus: locus,
        ideals: (1..group.num_chars())
            .map(|idx| CharIdealReport {
                character: group.char_from_index(idx).coords,
                bar_gens: tables
                    .bar_ideal_by_index(idx)
                    .gens()
                    .iter()
                    .map(|m| m.exp.clone())
                    .collect(),
                radical: family_coords(group.n, tables.rad_family_by_index(idx)),
            })
            .collect(),
        reduced_center: family_coords(group.n, tables.reduced_center_family()),
        center: CenterReport {
            max_degree: degree,
            dim_z: center.dim_z,
            dim_r: center.dim_r,
        },
        verdicts: Verdicts {
            reconstruction,
            radical_containment: tables.char_radicals_contain_locus(&sing),
            connectivity,
            cst_equals_elementwise: sing.equal(&elementwise).unwrap_or(false),
            center_consistency,
            oracle_agreement,
            smooth: sing.is_unit(),
        },
    };
    Ok(TimedReport {
        report,
        timing: Timing {
            group_ms,
            tables_ms,
            center_ms,
            total_ms: t0.elapsed().as_millis(),
        },
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyOutcome {
    pub checks: Vec<Check>,
    pub all_passed: bool,
}

/// The verify suite on an already-built group. `corrupt` removes one
/// generator from the ideal of the given nontrivial character first; it
/// exists as a negative-control hook.
pub fn verify_group(
    group: &AbelianGroup,
    max_degree: Option<u32>,
    corrupt: Option<usize>,
    bounds: &Bounds,
) -> Result<VerifyOutcome> {
    let mut tables = CenterTables::new(group, bounds)?;
    if let Some(pos) = corrupt {
        tables.corrupt_bar_ideal(pos);
    }
    let degree = max_degree.unwrap_or(2 * group.order() as u32);
    let sing = singular_locus_cst(group);
    let elementwise = singular_locus_elementwise(group);
    let connectivity = is_connected(&contraction(&build_mckay(group)));

    let mut checks = Vec::new();
    let (rec_ok, diff) = tables.verify_reconstruction(&sing);
    checks.push(Check {
        name: "reconstruction".into(),
        passed: rec_ok,
        detail: (!rec_ok).then(|| {
            let coords: Vec<Vec<usize>> =
                diff.iter().map(|&m| mask_to_coords(group.n, m)).collect();
            format!("antichain diff {coords:?}")
        }),
    });
    checks.push(Check {
        name: "radical_containment".into(),
        passed: tables.char_radicals_contain_locus(&sing),
        detail: None,
    });
    checks.push(Check {
        name: "connectivity".into(),
        passed: connectivity != Connectivity::Disconnected,
        detail: None,
    });
    checks.push(Check {
        name: "cst_equals_elementwise".into(),
        passed: sing.equal(&elementwise).unwrap_or(false),
        detail: None,
    });
    let (consistency_ok, consistency_detail, dim_z) = match tables.center_hilbert(degree) {
        Ok(c) => (true, None, Some(c.dim_z)),
        Err(crate::error::Error::CenterConsistency {
            monomial,
            live,
            expected,
        }) => (
            false,
            Some(format!(
                "monomial {monomial:?}: {live} live blocks, expected {expected}"
            )),
            None,
        ),
        Err(e) => return Err(e),
    };
    checks.push(Check {
        name: "center_consistency".into(),
        passed: consistency_ok,
        detail: consistency_detail,
    });
    if group.order() as u64 <= bounds.oracle_max_order {
        let d = degree.min(bounds.oracle_max_degree);
        let oracle = tables.dense_center_oracle(d, bounds)?;
        let passed = dim_z
            .as_ref()
            .is_some_and(|z| z[..=d as usize] == oracle[..]);
        checks.push(Check {
            name: "dense_oracle".into(),
            passed,
            detail: (!passed).then(|| format!("oracle dims {oracle:?}")),
        });
    }
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(VerifyOutcome { checks, all_passed })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepConfig {
    pub dim_max: usize,
    pub order_max: u64,
    pub samples: usize,
    pub seed: u64,
    pub cyclic_only: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusFailure {
    pub index: usize,
    pub spec: GroupSpec,
    pub failed_checks: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub config: SweepConfig,
    pub samples: usize,
    pub passes: usize,
    pub failures: Vec<CensusFailure>,
    pub timing: CensusTiming,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusTiming {
    pub p50_ms: u128,
    pub p90_ms: u128,
    pub max_ms: u128,
}

/// Sample one group spec: random generator count, orders, and weights, with
/// the last weight completing the determinant-one condition.
fn sample_spec(rng: &mut ChaCha8Rng, config: &SweepConfig) -> GroupSpec {
    let dim = rng.gen_range(2..=config.dim_max.max(2));
    let gens = if config.cyclic_only {
        1
    } else {
        rng.gen_range(1..=2)
    };
    let generators = (0..gens)
        .map(|_| {
            let order = rng.gen_range(2..=config.order_max.max(2));
            let mut weights: Vec<u64> = (0..dim - 1).map(|_| rng.gen_range(0..order)).collect();
            let sum: u64 = weights.iter().sum();
            weights.push((order - sum % order) % order);
            Generator { order, weights }
        })
        .collect();
    GroupSpec {
        dim,
        generators,
        sl: true,
    }
}

/// Seeded sweep: sample groups under the order bound, run the verify suite
/// on each, and aggregate. Sampling is sequential and fully determined by
/// the seed; per-sample verification runs in parallel.
pub fn census(config: &SweepConfig, bounds: &Bounds) -> Result<CensusReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut specs = Vec::with_capacity(config.samples);
    while specs.len() < config.samples {
        let spec = sample_spec(&mut rng, config);
        let sample_bounds = Bounds {
            max_group_order: config.order_max,
            ..*bounds
        };
        if build_group(&spec, &sample_bounds).is_ok() {
            specs.push(spec);
        }
    }

    let outcomes: Vec<(VerifyOutcome, u128)> = specs
        .par_iter()
        .map(|spec| {
            let start = Instant::now();
            let group = build_group(spec, bounds).expect("sampled spec rebuilds");
            let outcome = verify_group(&group, config.max_degree, None, bounds)?;
            Ok((outcome, start.elapsed().as_millis()))
        })
        .collect::<Result<_>>()?;

    let mut durations: Vec<u128> = outcomes.iter().map(|(_, ms)| *ms).collect();
    durations.sort_unstable();
    let pct = |p: usize| {
        if durations.is_empty() {
            0
        } else {
            durations[(durations.len() - 1) * p / 100]
        }
    };
    let failures: Vec<CensusFailure> = outcomes
        .iter()
        .enumerate()
        .filter(|(_, (o, _))| !o.all_passed)
        .map(|(index, (o, _))| CensusFailure {
            index,
            spec: specs[index].clone(),
            failed_checks: o
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.clone())
                .collect(),
        })
        .collect();
    Ok(CensusReport {
        config: config.clone(),
        samples: specs.len(),
        passes: specs.len() - failures.len(),
        failures,
        timing: CensusTiming {
            p50_ms: pct(50),
            p90_ms: pct(90),
            max_ms: *durations.last().unwrap_or(&0),
        },
    })
}
