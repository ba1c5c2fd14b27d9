use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use signfam_core::constructions::{classify_vector, ClassKind, LastClass};
use signfam_core::formulas::{g_bounds, g_closed_l1, g_ekr_value};
use signfam_core::solver::{
    build_conflict_graph, mis_bruteforce, mis_exact, solve_extremal, AdjacencyGraph, Deadline, ForbiddenSpec, Status,
    Target, Unlimited, BRUTEFORCE_MAX_VERTICES,
};
use signfam_core::Profile;

use super::{all_profiles, extremal_profiles, inputs, Runner, Solved, SuiteError};
use crate::report::{Case, Provenance, VerificationReport};

fn profile(n: usize, k: usize, l: usize) -> Profile {
    Profile::new(n, k, l).expect("fixed suite profiles are valid")
}

fn shown(s: &Solved) -> String {
    match s.status {
        Status::Exact => s.value.to_string(),
        Status::LowerBoundTimeout => format!("{} (lower bound)", s.value),
    }
}

fn selected(r: &Runner, defaults: &[Profile]) -> Vec<Profile> {
    r.params.profile.map_or_else(|| defaults.to_vec(), |p| vec![p])
}

/// Solver `g` against the closed form for `l = 1`.
pub fn theorem1(r: &mut Runner) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("theorem1");
    let budget = r.budget_or(60);
    let defaults = [profile(4, 2, 1), profile(5, 2, 1), profile(6, 2, 1), profile(6, 3, 1)];
    for p in selected(r, &defaults) {
        if p.l != 1 {
            return Err(SuiteError::InvalidParams(format!("theorem1 needs l = 1, got {p}")));
        }
        let expected = g_closed_l1(p.n as u64, p.k as u64)?;
        let s = r.solve(p, Target::G, budget)?;
        if s.status != Status::Exact {
            rep.mark_incomplete();
        }
        rep.push(Case::new(
            format!("g({},{},1)", p.n, p.k),
            inputs(p),
            expected,
            shown(&s),
            Provenance::PaperFormula,
        ));
    }
    Ok(rep)
}

/// Solver `g` against the first-coordinate family size.
pub fn eq111(r: &mut Runner) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("eq111");
    let budget = r.budget_or(600);
    for p in selected(r, &[profile(6, 3, 2), profile(7, 3, 2)]) {
        p.require_extremal()?;
        let expected = g_ekr_value(p.n as u64, p.k as u64, p.l as u64).value;
        let s = r.solve(p, Target::G, budget)?;
        if s.status != Status::Exact {
            rep.mark_incomplete();
        }
        rep.push(Case::new(
            format!("g({},{},{})", p.n, p.k, p.l),
            inputs(p),
            expected,
            shown(&s),
            Provenance::PaperFormula,
        ));
    }
    Ok(rep)
}

/// `lower <= g <= upper` for every extremal profile up to dimension 7.
pub fn bounds(r: &mut Runner) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("bounds");
    let budget = r.budget_or(60);
    let defaults: Vec<Profile> = (3..=7).flat_map(extremal_profiles).collect();
    for p in selected(r, &defaults) {
        let b = g_bounds(p.n as u64, p.k as u64, p.l as u64)?;
        let s = r.solve(p, Target::G, budget)?;
        if s.status != Status::Exact {
            rep.mark_incomplete();
            continue;
        }
        let v = s.value.into();
        let inside = b.lower <= v && v <= b.upper;
        let detail = format!("{} lower={} value={} upper={}", inputs(p), b.lower, v, b.upper);
        rep.push(Case::holds(
            format!("sandwich({},{},{})", p.n, p.k, p.l),
            detail,
            inside,
            Provenance::PaperFormula,
        ));
    }
    Ok(rep)
}

/// Every plus-class member of an optimal shifted family lies in `B1` or `B2`.
pub fn dichotomy(r: &mut Runner) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("dichotomy");
    let budget = r.budget_or(60);
    let defaults: Vec<Profile> = (3..=7).flat_map(extremal_profiles).collect();
    for p in selected(r, &defaults) {
        let s = solve_extremal(p, Target::G, &mut Deadline::new(budget), true)?;
        if s.status != Status::Exact {
            rep.mark_incomplete();
            continue;
        }
        let (mut plus, mut unclassified) = (0usize, 0usize);
        for v in s.witness.iter().filter(|v| LastClass::of(v) == LastClass::Plus) {
            plus += 1;
            if classify_vector(v)?.kind == ClassKind::Unclassified {
                unclassified += 1;
            }
        }
        let detail = format!("{} optimum={} plus_members={plus}", inputs(p), s.value);
        rep.push(Case::new(
            format!("unclassified({},{},{})", p.n, p.k, p.l),
            detail,
            0,
            unclassified,
            Provenance::Oracle,
        ));
    }
    Ok(rep)
}

fn oracle_case(id: String, detail: String, g: &AdjacencyGraph) -> Result<Case, SuiteError> {
    let want = mis_bruteforce(g)?.value;
    let got = mis_exact(g, &mut Unlimited).value;
    Ok(Case::new(id, detail, want, got, Provenance::Oracle))
}

/// Branch and bound against exhaustive search on every small conflict
/// graph and on seeded random graphs.
pub fn solver_oracle(r: &Runner) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("solver-oracle");
    for n in 1..=8 {
        for p in all_profiles(n) {
            if p.family_size_saturating() > BRUTEFORCE_MAX_VERTICES as u128 {
                continue;
            }
            let lo = -2 * p.l as i32;
            let hi = (p.k + p.l) as i32;
            let specs = (lo..=hi)
                .map(|x| ForbiddenSpec::exact([x]))
                .chain([ForbiddenSpec::AllBelow(0)]);
            for spec in specs {
                if spec.validate(&p).is_err() {
                    continue;
                }
                let id = format!("profile({},{},{}) {spec:?}", p.n, p.k, p.l);
                let cg = build_conflict_graph(p, spec)?;
                rep.push(oracle_case(id, inputs(p), cg.graph())?);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(r.params.seed);
    for i in 0..r.params.trials.unwrap_or(200) {
        let n = rng.gen_range(1..=BRUTEFORCE_MAX_VERTICES);
        let num = rng.gen_range(1..10);
        let seed = rng.gen::<u64>();
        let g = AdjacencyGraph::random(n, num, 10, seed);
        let detail = format!("vertices={n} density={num}/10 seed={seed}");
        rep.push(oracle_case(format!("random#{i}"), detail, &g)?);
    }
    Ok(rep)
}
