use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use signfam_core::bipartite::{
    build_g_prime, build_g_tm, check_biregular, lemma3_check, random_biregular, random_independent_set,
};
use signfam_core::constructions::{family_xy_tm, split_family, ComparisonSide};
use signfam_core::formulas::{
    coefficient, format_rational, p_increment_report, p_split, proven_increment_threshold, tm_ratio, x_tm_count,
    y_tm_count,
};
use signfam_core::{Error, Profile};

use super::{extremal_profiles, inputs, Runner, SuiteError};
use crate::report::{Case, Provenance, VerificationReport};

const RATIO_MAX_DIM: usize = 12;
const BIREGULAR_MAX_DIM: usize = 10;
const COEFFICIENT_MAX_K: u64 = 8;

fn rational(num: usize, den: usize) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Valid `(t, m)` for a profile of dimension `n + 1`.
fn tm_pairs(p: Profile) -> impl Iterator<Item = (usize, usize)> {
    let n = p.n - 1;
    (1..=p.k)
        .filter(move |t| 2 * t - 1 <= n)
        .flat_map(|t| (0..2 * t).map(move |m| (t, m)))
}

/// Profiles in dimension `n + 1` for the comparison families; a fixed
/// profile from the parameters is read with base dimension `n`.
fn comparison_profiles(r: &Runner, max_dim: usize) -> Result<Vec<Profile>, SuiteError> {
    match r.params.profile {
        Some(p) => {
            let q = Profile::new(p.n + 1, p.k, p.l)?;
            q.require_extremal()?;
            Ok(vec![q])
        }
        None => Ok((3..=max_dim).flat_map(extremal_profiles).collect()),
    }
}

/// Enumerated comparison family sizes against their binomial forms, and
/// the coefficient bound at the proven thresholds.
pub fn ratios(r: &Runner) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("ratios");
    for p1 in comparison_profiles(r, RATIO_MAX_DIM)? {
        let (n, k, l) = ((p1.n - 1) as u64, p1.k as u64, p1.l as u64);
        for (t, m) in tm_pairs(p1) {
            let tag = format!("(n={n},k={k},l={l},t={t},m={m})");
            let detail = format!("{} t={t} m={m}", inputs(p1));
            let x = family_xy_tm(p1, t, m, ComparisonSide::X)?.len();
            let y = family_xy_tm(p1, t, m, ComparisonSide::Y)?.len();
            let (tu, mu) = (t as u64, m as u64);
            rep.push(Case::new(
                format!("|X|{tag}"),
                detail.clone(),
                x_tm_count(n, k, l, tu, mu),
                x,
                Provenance::PaperFormula,
            ));
            rep.push(Case::new(
                format!("|Y|{tag}"),
                detail.clone(),
                y_tm_count(n, k, l, tu, mu),
                y,
                Provenance::PaperFormula,
            ));
            if x > 0 && y > 0 {
                let want = format_rational(&tm_ratio(n, k, l, tu, mu)?);
                let got = format_rational(&rational(y, x));
                rep.push(Case::new(
                    format!("ratio{tag}"),
                    detail,
                    want,
                    got,
                    Provenance::PaperFormula,
                ));
            }
        }
    }
    for k in 2..=COEFFICIENT_MAX_K {
        for l in 1..k {
            let n = proven_increment_threshold(k, l);
            let c = coefficient(n, k, l)?;
            let detail = format!("n={n} k={k} l={l} coefficient={}", format_rational(&c));
            let below = c < BigRational::from_integer(1.into());
            rep.push(Case::holds(
                format!("coefficient<1(n={n},k={k},l={l})"),
                detail,
                below,
                Provenance::PaperFormula,
            ));
        }
    }
    Ok(rep)
}

/// Biregularity of the comparison graphs and of `G'`.
pub fn biregular(r: &Runner) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("biregular");
    for p1 in comparison_profiles(r, BIREGULAR_MAX_DIM)? {
        let n = p1.n - 1;
        for (t, m) in tm_pairs(p1) {
            let g = match build_g_tm(p1, t, m) {
                Ok(g) => g,
                Err(Error::Degenerate(_)) => continue,
                Err(e) => return Err(e.into()),
            };
            let tag = format!("(n={n},k={},l={},t={t},m={m})", p1.k, p1.l);
            let detail = format!("{} t={t} m={m} |A|={} |B|={}", inputs(p1), g.a.len(), g.b.len());
            match check_biregular(&g.graph) {
                Ok((da, db)) => {
                    let handshake = g.a.len() * da == g.b.len() * db;
                    rep.push(Case::holds(
                        format!("G_tm{tag}"),
                        format!("{detail} degrees=({da},{db})"),
                        handshake,
                        Provenance::Oracle,
                    ));
                    if da > 0 {
                        let want = format_rational(&tm_ratio(n as u64, p1.k as u64, p1.l as u64, t as u64, m as u64)?);
                        let got = format_rational(&rational(da, db));
                        rep.push(Case::new(
                            format!("degree-ratio{tag}"),
                            detail,
                            want,
                            got,
                            Provenance::PaperFormula,
                        ));
                    }
                }
                Err(irr) => rep.push(Case::new(
                    format!("G_tm{tag}"),
                    detail,
                    "biregular",
                    format!("{irr:?}"),
                    Provenance::Oracle,
                )),
            }
        }
    }
    if r.params.profile.is_none() {
        for k in 3..=5 {
            for l in 2..k {
                for j in 2..=l {
                    let lowest = 2 * (k - j + 1) + 1;
                    for j_prime in lowest..=lowest + 2 {
                        let g = build_g_prime(j, j_prime, k, l)?;
                        let tag = format!("(j={j},j'={j_prime},k={k},l={l})");
                        let detail = format!("j={j} j'={j_prime} k={k} l={l} |A|={} |B|={}", g.a.len(), g.b.len());
                        let case = match check_biregular(&g.graph) {
                            Ok((da, db)) => Case::holds(
                                format!("G'{tag}"),
                                format!("{detail} degrees=({da},{db})"),
                                g.a.len() * da == g.b.len() * db,
                                Provenance::Oracle,
                            ),
                            Err(irr) => Case::new(
                                format!("G'{tag}"),
                                detail,
                                "biregular",
                                format!("{irr:?}"),
                                Provenance::Oracle,
                            ),
                        };
                        rep.push(case);
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Seeded random biregular graphs, independent sets and `alpha >= |B|/|A|`.
pub fn lemma3(r: &Runner) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("lemma3");
    let trials = r.params.trials.unwrap_or(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(r.params.seed);
    let mut violations = 0usize;
    let mut first: Option<String> = None;
    for _ in 0..trials {
        let (da, db, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=6));
        let (a_len, b_len) = (db * c, da * c);
        let g = random_biregular(a_len, b_len, da, db, rng.gen())?;
        let set = random_independent_set(&g, rng.gen());
        let mut alpha = rational(b_len, a_len);
        if rng.gen_bool(0.5) {
            alpha += rational(rng.gen_range(0..=8), rng.gen_range(1..=8));
        }
        if !lemma3_check(&g, &set, &alpha)? {
            violations += 1;
            first.get_or_insert_with(|| {
                format!(
                    "|A|={a_len} |B|={b_len} degrees=({da},{db}) |I∩A|={} |I∩B|={} alpha={}",
                    set.a.len(),
                    set.b.len(),
                    format_rational(&alpha)
                )
            });
        }
    }
    let mut detail = format!("trials={trials} seed={}", r.params.seed);
    if let Some(f) = first {
        detail.push_str(&format!(" first_counterexample: {f}"));
    }
    rep.push(Case::new("violations", detail, 0, violations, Provenance::Oracle));
    Ok(rep)
}

/// `p` by building every split family `V([x], [n] \ [x])`. A profile with
/// no `+1` is handled through the sign-swapped profile.
fn p_brute(n: usize, k: usize, l: usize) -> Result<usize, SuiteError> {
    let (k, l) = if k == 0 { (l, 0) } else { (k, l) };
    let p = Profile::new(n, k, l)?;
    let mut best = 0;
    for x in k..=n - l {
        let xs: Vec<usize> = (1..=x).collect();
        best = best.max(split_family(p, &xs)?.len());
    }
    Ok(best)
}

const P_INCREMENT_SHAPES: [(u64, u64, std::ops::RangeInclusive<u64>); 3] =
    [(2, 1, 4..=12), (3, 1, 5..=14), (3, 2, 6..=14)];

/// Increments of `p` against `max{p(n-1,k,l-1), p(n-1,k-1,l)}`.
/// Every case is informational.
pub fn p_increment(r: &Runner) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("p-increment");
    let instances: Vec<(u64, u64, u64)> = match r.params.profile {
        Some(p) => vec![(p.n as u64, p.k as u64, p.l as u64)],
        None => P_INCREMENT_SHAPES
            .iter()
            .flat_map(|(k, l, ns)| ns.clone().map(move |n| (n, *k, *l)))
            .collect(),
    };
    for (n, k, l) in instances {
        let rpt = p_increment_report(n, k, l)?;
        let tag = format!("(n={n},k={k},l={l})");
        let detail = format!(
            "n={n} k={k} l={l} p(n)={} p(n-1)={} p(n-1,k,l-1)={} p(n-1,k-1,l)={} average={}",
            rpt.current,
            rpt.previous,
            rpt.drop_minus,
            rpt.drop_plus,
            format_rational(&rpt.average)
        );
        rep.push(
            Case::new(
                format!("increment{tag}"),
                detail.clone(),
                rpt.claimed(),
                &rpt.increment,
                Provenance::Oracle,
            )
            .informational(),
        );
        rep.push(
            Case::holds(
                format!("average-bound{tag}"),
                detail.clone(),
                rpt.average_bound_holds,
                Provenance::Oracle,
            )
            .informational(),
        );
        rep.push(
            Case::holds(
                format!("pascal-bound{tag}"),
                detail,
                rpt.pascal_bound_holds,
                Provenance::Oracle,
            )
            .informational(),
        );
        let (nu, ku, lu) = (n as usize, k as usize, l as usize);
        for (m, kk, ll) in [
            (nu, ku, lu),
            (nu - 1, ku, lu),
            (nu - 1, ku, lu - 1),
            (nu - 1, ku - 1, lu),
        ] {
            let formula = p_split(m as u64, kk as u64, ll as u64)?.value;
            let brute = p_brute(m, kk, ll)?;
            rep.push(
                Case::new(
                    format!("p-brute{tag}/p({m},{kk},{ll})"),
                    format!("n={m} k={kk} l={ll}"),
                    formula,
                    brute,
                    Provenance::Oracle,
                )
                .informational(),
            );
        }
    }
    Ok(rep)
}
