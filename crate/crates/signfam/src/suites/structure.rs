use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use signfam_core::constructions::{ekr_family, inductive_extend, split_family};
use signfam_core::formulas::{g_ekr_value, increment_value, p_split};
use signfam_core::shifting::{self, precedes_oracle};
use signfam_core::solver::{verify_family, Target};
use signfam_core::witness::{check_conditions, construct_witness, verify_trace_claims};
use signfam_core::{enumerate_all, scalar_product, Profile, SignedVector, VectorFamily};

use super::{all_profiles, inputs, Runner, SuiteError};
use crate::report::{Case, Provenance, VerificationReport};

/// Families up to this dimension are also checked pairwise.
const PAIRWISE_MAX_N: usize = 10;
const CONSTRUCTION_MAX_N: usize = 30;
const CONSTRUCTION_SHAPES: [(usize, usize); 3] = [(2, 1), (3, 1), (3, 2)];

/// Witness construction on every `w` meeting both conditions.
pub fn lemma1(r: &Runner) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("lemma1");
    let defaults = [(5, 2, 1), (6, 3, 2), (8, 3, 2)].map(|(n, k, l)| Profile::new(n, k, l).expect("valid"));
    let profiles = r.params.profile.map_or_else(|| defaults.to_vec(), |p| vec![p]);
    for p in profiles {
        let mut checked = 0usize;
        let mut failures = 0usize;
        let mut first: Option<String> = None;
        for w in enumerate_all(p).iter().filter(|w| check_conditions(w).both()) {
            checked += 1;
            let problem = match construct_witness(w) {
                Err(e) => Some(e.to_string()),
                Ok((v, trace)) => {
                    let product = scalar_product(&v, w)?;
                    let below = precedes_oracle(&v, w)?;
                    let claims = verify_trace_claims(&trace, w);
                    if product != -2 * p.l as i32 {
                        Some(format!("v={v} has product {product}"))
                    } else if !below {
                        Some(format!("v={v} is not below w"))
                    } else if !claims.all_passed() {
                        Some(format!("v={v} fails {:?}", claims.failures().next().map(|c| c.claim)))
                    } else {
                        None
                    }
                }
            };
            if let Some(msg) = problem {
                failures += 1;
                first.get_or_insert_with(|| format!("w={w}: {msg}"));
            }
        }
        let mut detail = format!("{} checked={checked}", inputs(p));
        if let Some(f) = first {
            detail.push_str(&format!(" first_counterexample={f}"));
        }
        let id = format!("({},{},{})", p.n, p.k, p.l);
        rep.push(Case::new(
            format!("failures{id}"),
            detail,
            0,
            failures,
            Provenance::Oracle,
        ));
        rep.push(Case::holds(
            format!("nonvacuous{id}"),
            inputs(p),
            checked > 0,
            Provenance::Oracle,
        ));
    }
    Ok(rep)
}

/// Uniformly random member of a profile.
pub fn random_vector<R: Rng>(p: Profile, rng: &mut R) -> SignedVector {
    let mut idx: Vec<usize> = (1..=p.n).collect();
    idx.shuffle(rng);
    SignedVector::from_supports(p.n, &idx[..p.k], &idx[p.k..p.k + p.l]).expect("supports are disjoint and in range")
}

/// Prefix dominance against breadth-first search over shifts.
pub fn precedes(r: &Runner) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("precedes");
    for n in 1..=5 {
        let (mut pairs, mut disagree) = (0usize, 0usize);
        for p in all_profiles(n) {
            let fam = enumerate_all(p);
            for v in &fam {
                for w in &fam {
                    pairs += 1;
                    if precedes_pair(v, w)? {
                        disagree += 1;
                    }
                }
            }
        }
        let detail = format!("n={n} exhaustive pairs={pairs}");
        rep.push(Case::new(
            format!("exhaustive(n={n})"),
            detail,
            0,
            disagree,
            Provenance::Oracle,
        ));
    }
    let trials = r.params.trials.unwrap_or(10_000);
    for n in [6, 7] {
        let mut rng = ChaCha8Rng::seed_from_u64(r.params.seed ^ n as u64);
        let profiles: Vec<Profile> = all_profiles(n).collect();
        let mut disagree = 0usize;
        for _ in 0..trials {
            let p = *profiles.choose(&mut rng).expect("non-empty");
            let (v, w) = (random_vector(p, &mut rng), random_vector(p, &mut rng));
            if precedes_pair(&v, &w)? {
                disagree += 1;
            }
        }
        let detail = format!("n={n} random pairs={trials} seed={}", r.params.seed);
        rep.push(Case::new(
            format!("random(n={n})"),
            detail,
            0,
            disagree,
            Provenance::Oracle,
        ));
    }
    Ok(rep)
}

/// Whether the fast test and the oracle disagree on `(v, w)`.
fn precedes_pair(v: &SignedVector, w: &SignedVector) -> Result<bool, SuiteError> {
    Ok(shifting::precedes(v, w)? != precedes_oracle(v, w)?)
}

fn valid_if_small(rep: &mut VerificationReport, id: String, fam: &VectorFamily) {
    let p = fam.profile();
    if p.n <= PAIRWISE_MAX_N {
        let ok = verify_family(fam, &Target::G.spec(&p)).passed();
        rep.push(Case::holds(id, inputs(p), ok, Provenance::Construction));
    }
}

/// Construction sizes against closed forms, plus pairwise validity in
/// small dimensions.
pub fn constructions(r: &Runner) -> Result<VerificationReport, SuiteError> {
    let mut rep = VerificationReport::new("constructions");
    let shapes = match r.params.profile {
        Some(p) => {
            p.require_extremal()?;
            vec![(p.k, p.l)]
        }
        None => CONSTRUCTION_SHAPES.to_vec(),
    };
    let max_n = r.params.profile.map_or(CONSTRUCTION_MAX_N, |p| p.n);
    for (k, l) in shapes {
        for n in k + l + 1..=max_n {
            let p = Profile::new(n, k, l)?;
            let (nu, ku, lu) = (n as u64, k as u64, l as u64);
            let tag = format!("({n},{k},{l})");

            let ekr = ekr_family(p);
            let ekr_size = g_ekr_value(nu, ku, lu).value;
            rep.push(Case::new(
                format!("ekr-size{tag}"),
                inputs(p),
                &ekr_size,
                ekr.len(),
                Provenance::PaperFormula,
            ));
            valid_if_small(&mut rep, format!("ekr-valid{tag}"), &ekr);

            if n < max_n {
                let grown = inductive_extend(&ekr)?;
                let inc = increment_value(nu, ku, lu)?.value;
                let gained = BigUint::from(grown.len()) - BigUint::from(ekr.len());
                rep.push(Case::new(
                    format!("increment{tag}"),
                    inputs(p),
                    &inc,
                    gained,
                    Provenance::PaperFormula,
                ));
                rep.push(Case::new(
                    format!("inductive-size{tag}"),
                    inputs(p),
                    &ekr_size + &inc,
                    grown.len(),
                    Provenance::Construction,
                ));
                valid_if_small(&mut rep, format!("inductive-valid{tag}"), &grown);
            }

            let best = p_split(nu, ku, lu)?;
            let x: Vec<usize> = (1..=best.argmax as usize).collect();
            let split = split_family(p, &x)?;
            rep.push(Case::new(
                format!("split-size{tag}"),
                inputs(p),
                &best.value,
                split.len(),
                Provenance::PaperFormula,
            ));
            valid_if_small(&mut rep, format!("split-valid{tag}"), &split);
        }
    }
    Ok(rep)
}
