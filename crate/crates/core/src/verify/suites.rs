use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Context, Params, ReportBuilder, VerificationReport, VerifyError, Witness};
use crate::gl::{apply_derivation, apply_generator, phi, GroupGenerator, LieDerivation};
use crate::ideal::{generators, proof_replay_dkk, IdealSpec};
use crate::ring::{cycle_monomial, plucker, Monomial, Multidegree, Polynomial, Universe, MAX_VERTICES};

/// Largest `n` that `verify_all` runs the square suite for. At `n = 4` the
/// disjoint product of two 5-cycles already lives in a piece with 286,884
/// columns, beyond the default budget.
pub const SQUARE_N_MAX: usize = 3;

fn invalid(msg: impl Into<String>) -> VerifyError {
    VerifyError::InvalidInput(msg.into())
}

fn check_n(n: usize) -> Result<(), VerifyError> {
    if n < 2 {
        return Err(invalid(format!("n = {n} must be >= 2")));
    }
    Ok(())
}

fn check_vertices(vertices: usize, min: usize, why: &str) -> Result<(), VerifyError> {
    if vertices < min {
        return Err(invalid(format!("N = {vertices} must be >= {min} ({why})")));
    }
    if vertices > MAX_VERTICES {
        return Err(invalid(format!("N = {vertices} exceeds the supported maximum {MAX_VERTICES}")));
    }
    Ok(())
}

fn cycle_on(universe: Universe, vertices: impl IntoIterator<Item = usize>) -> Result<Polynomial, VerifyError> {
    let seq: Vec<usize> = vertices.into_iter().collect();
    Ok(Polynomial::monomial(universe, cycle_monomial(&seq)?)?)
}

fn unit(vertex: usize) -> Multidegree {
    let mut v = vec![0; vertex];
    v[vertex - 1] = 1;
    Multidegree::from_vec(v)
}

/// `w_{n+1}` avoids `I_n` by rank and by the cycle-sum replay, and lies in
/// `I_{n+1}`, so the degree `(2^{n+1})` pieces differ.
pub fn verify_dkk(ctx: &Context, n: usize, vertices: Option<usize>) -> Result<VerificationReport, VerifyError> {
    check_n(n)?;
    let nv = vertices.unwrap_or((n + 1).max(4));
    check_vertices(nv, (n + 1).max(4), "w_{n+1} needs n+1 vertices")?;
    let mut report = ReportBuilder::new(
        "dkk",
        Params {
            n: Some(n),
            vertices: Some(nv),
            degrees: vec![Multidegree::constant(2, n + 1)],
            ..Params::default()
        },
    );
    let spec = IdealSpec::new(n, nv)?;
    let next = IdealSpec::new(n + 1, nv)?;
    let w = cycle_on(spec.universe(), 1..=n + 1)?;

    let (lower, v_lower) = ctx.membership_witness(format!("w_{} in I_{n}", n + 1), spec, &w, false)?;
    let (upper, v_upper) = ctx.membership_witness(format!("w_{} in I_{}", n + 1, n + 1), next, &w, true)?;
    report.witness(lower);
    report.witness(upper);

    let replay = proof_replay_dkk(n, &ctx.budget)?;
    report.witness(
        Witness::new(
            format!("cycle-sum functional vanishes on every spanning row of (I_{n})_d"),
            None,
            true,
            replay.violations.is_empty(),
        )
        .with_detail(format!("{} rows, {} violations", replay.rows, replay.violations.len())),
    );
    for v in &replay.violations {
        report.witness(
            Witness::new(format!("cycle-sum functional on {}", v.label), Some(v.product.clone()), false, true)
                .with_detail("spanning row with functional value 1"),
        );
    }
    report.witness(Witness::new(
        format!("cycle-sum functional of w_{} is 1", n + 1),
        Some(w.clone()),
        true,
        replay.value_on_cycle,
    ));

    let (c_lower, c_upper) = (&v_lower.components[0], &v_upper.components[0]);
    report.witness(
        Witness::new(
            format!("(I_{n})_d is strictly smaller than (I_{})_d", n + 1),
            None,
            true,
            c_upper.rank > c_lower.rank,
        )
        .with_detail(format!("rank {} < {}", c_lower.rank, c_upper.rank)),
    );
    report.dim("dim_R", c_lower.dim);
    report.dim("rank_I_n", c_lower.rank);
    report.dim("rank_I_n_plus_1", c_upper.rank);
    report.dim("replay_columns", replay.columns);
    report.dim("replay_rows", replay.rows);
    report.dim("hamiltonian_columns", replay.hamiltonian_columns);
    Ok(report.finish())
}

/// Every generator of `I_n` on `[N]`, moved by every transvection and
/// transposition of `[N]`, stays in `I_n` with a certified verdict.
pub fn verify_stability(ctx: &Context, n: usize, vertices: Option<usize>) -> Result<VerificationReport, VerifyError> {
    check_n(n)?;
    let nv = vertices.unwrap_or(n + 2);
    check_vertices(nv, (n + 1).max(4), "stability needs N >= n+1")?;
    let spec = IdealSpec::new(n, nv)?;
    let mut report = ReportBuilder::new(
        "stability",
        Params {
            n: Some(n),
            vertices: Some(nv),
            ..Params::default()
        },
    );
    let gens = generators(spec);
    let group = GroupGenerator::all(nv);
    let engine = ctx.engine(spec);

    let results = (0..gens.len() * group.len())
        .into_par_iter()
        .map(|k| {
            let (g, gamma) = (&gens[k / group.len()], group[k % group.len()]);
            let image = apply_generator(gamma, &g.poly)?;
            let v = engine.member(&image)?;
            let failure = (!(v.member && v.certified)).then(|| {
                Witness::membership(format!("{gamma} applied to {}", g.kind), image, true, v.member, v.certified)
            });
            Ok((failure, v.components.len()))
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;

    let components: usize = results.iter().map(|(_, c)| c).sum();
    for (failure, _) in results {
        if let Some(w) = failure {
            report.witness(w);
        }
    }
    // The same engine must still exclude w_{n+1}.
    let w = cycle_on(spec.universe(), 1..=n + 1)?;
    let (excluded, _) = ctx.membership_witness(format!("w_{} in I_{n}", n + 1), spec, &w, false)?;
    report.witness(excluded);

    report.dim("generators", gens.len());
    report.dim("group_generators", group.len());
    report.dim("images", gens.len() * group.len());
    report.dim("image_components", components);
    Ok(report.finish())
}

/// `w_{n+1} * x_{n+2,n+3}` lies in `I_n`.
pub fn verify_tail(ctx: &Context, n: usize, vertices: Option<usize>) -> Result<VerificationReport, VerifyError> {
    check_n(n)?;
    let nv = vertices.unwrap_or(n + 3);
    check_vertices(nv, n + 3, "the tail edge uses vertex n+3")?;
    let spec = IdealSpec::new(n, nv)?;
    let w = cycle_on(spec.universe(), 1..=n + 1)?;
    let tail = Monomial::from_pairs(&[(n + 2, n + 3)])?;
    let f = w.mul_monomial(tail);
    let mut report = ReportBuilder::new(
        "tail",
        Params {
            n: Some(n),
            vertices: Some(nv),
            degrees: vec![f.homogeneous_degree().expect("monomial")],
            ..Params::default()
        },
    );
    let label = format!("w_{} * x{},{} in I_{n}", n + 1, n + 2, n + 3);
    let (wit, v) = ctx.membership_witness(label, spec, &f, true)?;
    report.witness(wit);
    report.dim("dim_R", v.components[0].dim);
    report.dim("rank_I_n", v.components[0].rank);
    Ok(report.finish())
}

/// Products of two generators of `I_{n+1}` lie in `I_n`. All pairs are
/// checked up to `ctx.sample` of them, otherwise a seeded sample plus fixed
/// anchor products.
pub fn verify_square(ctx: &Context, n: usize, vertices: Option<usize>) -> Result<VerificationReport, VerifyError> {
    check_n(n)?;
    let nv = vertices.unwrap_or(2 * n + 2);
    check_vertices(nv, 2 * n + 2, "two disjoint (n+1)-cycles")?;
    let spec = IdealSpec::new(n, nv)?;
    let big = IdealSpec::new(n + 1, nv)?;
    let universe = spec.universe();
    let mut report = ReportBuilder::new(
        "square",
        Params {
            n: Some(n),
            vertices: Some(nv),
            seed: Some(ctx.seed),
            sample: Some(ctx.sample),
            ..Params::default()
        },
    );

    let anchors = [
        (
            format!("w_{} * w_{} on disjoint supports", n + 1, n + 1),
            cycle_on(universe, 1..=n + 1)?.mul(&cycle_on(universe, n + 2..=2 * n + 2)?)?,
        ),
        (
            format!("pl(1,2,3,4) * w_{} on 4..{}", n + 1, n + 4),
            plucker(universe, [1, 2, 3, 4])?.mul(&cycle_on(universe, 4..=n + 4)?)?,
        ),
    ];
    for (label, f) in &anchors {
        let (w, _) = ctx.membership_witness(format!("{label} in I_{n}"), spec, f, true)?;
        report.witness(w);
    }

    let gens = generators(big);
    let pairs: Vec<(usize, usize)> = (0..gens.len()).flat_map(|i| (i..gens.len()).map(move |j| (i, j))).collect();
    let sampled = pairs.len() > ctx.sample;
    let chosen: Vec<(usize, usize)> = if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        let mut idx = sample(&mut rng, pairs.len(), ctx.sample).into_vec();
        idx.sort_unstable();
        idx.into_iter().map(|k| pairs[k]).collect()
    } else {
        pairs.clone()
    };

    let engine = ctx.engine(spec);
    let results = chosen
        .par_iter()
        .map(|&(i, j)| {
            let f = gens[i].poly.mul(&gens[j].poly)?;
            let v = engine.member(&f)?;
            let failure = (!(v.member && v.certified)).then(|| {
                Witness::membership(
                    format!("{} * {} in I_{n}", gens[i].kind, gens[j].kind),
                    f.clone(),
                    true,
                    v.member,
                    v.certified,
                )
            });
            Ok((failure, f.is_zero()))
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;

    let zero = results.iter().filter(|(_, z)| *z).count();
    for (failure, _) in results {
        if let Some(w) = failure {
            report.witness(w);
        }
    }
    report.dim("generators", gens.len());
    report.dim("pairs_total", pairs.len());
    report.dim("pairs_checked", chosen.len());
    report.dim("zero_products", zero);
    report.dim("sampled", sampled as usize);
    Ok(report.finish())
}

/// Monomials with at most two edges on the vertices `{1,2,3,6,7,8}`; 121
/// cofactors, the first being 1.
pub fn default_lemma_cofactors() -> Vec<Monomial> {
    let verts = [1, 2, 3, 6, 7, 8];
    let mut edges = Vec::new();
    for (i, &a) in verts.iter().enumerate() {
        for &b in &verts[i + 1..] {
            edges.push(Monomial::from_pairs(&[(a, b)]).expect("valid edge"));
        }
    }
    let mut out = vec![Monomial::ONE];
    out.extend(edges.iter().copied());
    for (i, &a) in edges.iter().enumerate() {
        for &b in &edges[i + 1..] {
            out.push(a.mul(b).expect("distinct edges"));
        }
    }
    out
}

/// For `m = m' x14 x24 x34` with `m'` avoiding vertices 4 and 5, the
/// derivation `e_{4,5}` sends `m` to
/// `m' (x15 x24 x34 + x14 x25 x34 + x14 x24 x35)`. The transvection
/// `e_4 -> e_4 + e_5` agrees with `m + e_{4,5}(m)` in the degrees of
/// `m` and `m - eps_4 + eps_5`.
pub fn verify_lemma(cofactors: &[Monomial]) -> Result<VerificationReport, VerifyError> {
    if cofactors.is_empty() {
        return Err(invalid("no cofactors given"));
    }
    let mut report = ReportBuilder::new("lemma", Params::default());
    let pairs = |p: &[(usize, usize)]| Monomial::from_pairs(p);
    let star = pairs(&[(1, 4), (2, 4), (3, 4)])?;
    let moved = [
        pairs(&[(1, 5), (2, 4), (3, 4)])?,
        pairs(&[(1, 4), (2, 5), (3, 4)])?,
        pairs(&[(1, 4), (2, 4), (3, 5)])?,
    ];
    let e45 = LieDerivation::new(4, 5)?;
    let t45 = GroupGenerator::transvection(4, 5);

    for &cof in cofactors {
        if cof.edges().any(|e| e.contains(4) || e.contains(5)) {
            return Err(invalid(format!("cofactor {cof:?} touches vertex 4 or 5")));
        }
        let universe = Universe::edge(cof.max_vertex().max(8))?;
        let m = Polynomial::monomial(universe, cof.mul(star).expect("disjoint from the star"))?;
        let mut expected = Polynomial::zero(universe);
        for t in moved {
            expected.toggle(cof.mul(t).expect("disjoint"));
        }
        let derived = apply_derivation(e45, &m)?;
        let by_derivation = derived == expected;

        let image = apply_generator(t45, &m)?.homogeneous_components();
        let deg = m.homogeneous_degree().expect("monomial");
        let shifted = deg.checked_sub(&unit(4)).expect("vertex 4 in support").add(&unit(5));
        let zero = Polynomial::zero(universe);
        let window = image.get(&deg).unwrap_or(&zero).add(image.get(&shifted).unwrap_or(&zero))?;
        let by_group = window == m.add(&expected)?;

        let holds = by_derivation && by_group;
        if !holds || cof.is_one() {
            report.witness(
                Witness::new(format!("e_4,5 on m' * x1,4*x2,4*x3,4 with m' = {cof:?}"), Some(m), true, holds)
                    .with_detail(format!("e_4,5(m) = {derived}")),
            );
        }
    }
    report.dim("cofactors", cofactors.len());
    report.dim("includes_one", cofactors.iter().any(|c| c.is_one()) as usize);
    Ok(report.finish())
}

/// `phi` kills every Plucker element on `[N]` and every cycle `w_m` with
/// `3 <= m <= n_max`, yet `w_3` is not in `I_2`, so `I_2` is strictly
/// smaller than the kernel.
pub fn verify_phi(ctx: &Context, n_max: usize, vertices: Option<usize>) -> Result<VerificationReport, VerifyError> {
    let nv = vertices.unwrap_or(n_max.max(6));
    check_vertices(nv, n_max.max(4), "cycles up to n_max need N >= n_max")?;
    let universe = Universe::edge(nv)?;
    let mut report = ReportBuilder::new(
        "phi",
        Params {
            vertices: Some(nv),
            n_max: Some(n_max),
            ..Params::default()
        },
    );

    let mut plucker_checked = 0;
    for a in 1..=nv {
        for b in a + 1..=nv {
            for c in b + 1..=nv {
                for d in c + 1..=nv {
                    let pl = plucker(universe, [a, b, c, d])?;
                    let image = phi(&pl)?;
                    plucker_checked += 1;
                    if !image.is_zero() || [a, b, c, d] == [1, 2, 3, 4] {
                        report.witness(
                            Witness::new(format!("phi(pl({a},{b},{c},{d})) = 0"), Some(pl), true, image.is_zero())
                                .with_detail(format!("phi = {image}")),
                        );
                    }
                }
            }
        }
    }
    let mut cycles_checked = 0;
    for m in 3..=n_max {
        let w = cycle_on(universe, 1..=m)?;
        let image = phi(&w)?;
        cycles_checked += 1;
        report.witness(
            Witness::new(format!("phi(w_{m}) = 0"), Some(w), true, image.is_zero())
                .with_detail(format!("phi = {image}")),
        );
    }

    let x12 = Polynomial::monomial(universe, Monomial::from_pairs(&[(1, 2)])?)?;
    let image = phi(&x12)?;
    report.witness(
        Witness::new("phi(x1,2) != 0", Some(x12), true, !image.is_zero()).with_detail(format!("phi = {image}")),
    );
    let w3 = cycle_on(universe, 1..=3)?;
    report.witness(Witness::new("w_3 in ker(phi)", Some(w3.clone()), true, phi(&w3)?.is_zero()));
    let (outside, _) = ctx.membership_witness("w_3 in I_2", IdealSpec::new(2, nv)?, &w3, false)?;
    report.witness(outside);

    report.dim("plucker_checked", plucker_checked);
    report.dim("cycles_checked", cycles_checked);
    Ok(report.finish())
}

type Job<'a> = Box<dyn Fn() -> Result<VerificationReport, VerifyError> + Send + Sync + 'a>;

/// Every suite at its default truncation for `n = 2..=n_max`: dkk, stability
/// and tail for each `n`, square for `n <= SQUARE_N_MAX`, then the lemma and
/// phi suites once.
pub fn verify_all(ctx: &Context, n_max: usize) -> Result<VerificationReport, VerifyError> {
    check_n(n_max)?;
    let mut jobs: Vec<Job> = Vec::new();
    for n in 2..=n_max {
        jobs.push(Box::new(move || verify_dkk(ctx, n, None)));
        jobs.push(Box::new(move || verify_stability(ctx, n, None)));
        jobs.push(Box::new(move || verify_tail(ctx, n, None)));
    }
    for n in 2..=n_max.min(SQUARE_N_MAX) {
        jobs.push(Box::new(move || verify_square(ctx, n, None)));
    }
    jobs.push(Box::new(|| verify_lemma(&default_lemma_cofactors())));
    let phi_max = n_max.max(6);
    jobs.push(Box::new(move || verify_phi(ctx, phi_max, None)));

    let mut report = ReportBuilder::new(
        "all",
        Params {
            n_max: Some(n_max),
            seed: Some(ctx.seed),
            sample: Some(ctx.sample),
            ..Params::default()
        },
    );
    let children = jobs.par_iter().map(|job| job()).collect::<Result<Vec<_>, _>>()?;
    report.dim("suites", children.len());
    report.dim("suites_passed", children.iter().filter(|r| r.passed()).count());
    for child in children {
        report.child(child);
    }
    Ok(report.finish())
}
