//! One function per subcommand. Each returns its rows and a list of failed
//! checks; rows are written before failures are reported.

use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use ffcovar::arith::{lambda_j_mobius, lambda_j_recursive, vm_average_closed};
use ffcovar::characters::{phi, phi_even, phi_even_primitive, phi_primitive, UnitGroup, MAX_GROUP_ORDER};
use ffcovar::config::Tolerances;
use ffcovar::experiments::{covar_report, katz_report, write_csv, write_json, CovarParams, Experiment};
use ffcovar::fq::{enumerate_monics, factor_seeded, monic_count_upto, FieldParams, Poly};
use ffcovar::lfunc::{frobenius_spectrum, l_polynomial, roots_on_critical_circles, write_spectrum_csv};
use ffcovar::rmt::{estimate_values, h_covariance_exact, h_table, ratio_theorem_check, HaarEnsemble, RatioParams};

use crate::args::*;
use crate::CliError;

/// Writes a subcommand's rows in the requested format.
pub type Writer = Box<dyn FnOnce(Format, &mut dyn Write) -> ffcovar::Result<()> + Send>;

pub struct Outcome {
    pub rows: Writer,
    pub failures: Vec<String>,
}

fn table<T: Serialize + Send + 'static>(rows: Vec<T>, failures: Vec<String>) -> Outcome {
    let write = move |format: Format, out: &mut dyn Write| match format {
        Format::Csv => write_csv(&rows, out),
        Format::Json => write_json(&rows, out),
    };
    Outcome { rows: Box::new(write), failures }
}

pub fn tolerances(c: &Common) -> Result<Tolerances, CliError> {
    let mut t = Tolerances::default();
    let overrides = [
        (&mut t.root, c.tol_root, "--tol-root"),
        (&mut t.orthogonality, c.tol_orthogonality, "--tol-orthogonality"),
        (&mut t.reconstruction, c.tol_reconstruction, "--tol-reconstruction"),
        (&mut t.coeff_zero, c.tol_coeff_zero, "--tol-coeff-zero"),
        (&mut t.mc_sigmas, c.mc_sigmas, "--mc-sigmas"),
    ];
    for (slot, value, flag) in overrides {
        if let Some(v) = value {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Usage(format!("{flag} must be a positive number, got {v}")));
            }
            *slot = v;
        }
    }
    Ok(t)
}

fn prime(q: u64) -> Result<u32, CliError> {
    let q32 = u32::try_from(q).map_err(|_| CliError::Usage(format!("q = {q} is too large")))?;
    FieldParams::new(q32).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(q32)
}

fn primes(qs: &UintList) -> Result<Vec<u32>, CliError> {
    qs.0.iter().map(|&q| prime(q)).collect()
}

fn small(x: u64, what: &str, max: u64) -> Result<u64, CliError> {
    if x > max {
        return Err(CliError::Usage(format!("{what} = {x} exceeds {max}")));
    }
    Ok(x)
}

fn parse_poly(s: &str) -> Result<Poly, CliError> {
    s.parse::<Poly>().map_err(|e| CliError::Usage(e.to_string()))
}

fn complex_list(zs: &[Complex64]) -> String {
    zs.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(";")
}

fn group(q: u32, m: usize, c: &Common) -> Result<UnitGroup, CliError> {
    if m == 0 {
        return Err(CliError::Usage("modulus degree m must be at least 1".into()));
    }
    Ok(UnitGroup::new(FieldParams::new(q)?, m, c.max_enum.min(MAX_GROUP_ORDER))?)
}

#[derive(Serialize)]
struct FactorRow {
    poly: String,
    unit: u32,
    factor: String,
    multiplicity: u32,
    seed: u64,
}

pub fn factor(a: &FactorArgs) -> Result<Outcome, CliError> {
    let f = parse_poly(&a.poly)?;
    let fac = factor_seeded(&f, a.common.seed)?;
    let mut failures = Vec::new();
    if fac.reconstruct() != f {
        failures.push(format!("factorization of {f} does not multiply back"));
    }
    let poly = f.to_string();
    let rows: Vec<FactorRow> = fac
        .factors
        .iter()
        .map(|(p, e)| FactorRow { poly: poly.clone(), unit: fac.unit, factor: p.to_string(), multiplicity: *e, seed: a.common.seed })
        .collect();
    Ok(table(rows, failures))
}

#[derive(Serialize)]
struct LambdaRow {
    poly: String,
    j: u32,
    mobius_form: i64,
    recursive_form: i64,
    seed: u64,
}

pub fn lambda(a: &LambdaArgs) -> Result<Outcome, CliError> {
    let f = parse_poly(&a.poly)?;
    if f.is_zero() {
        return Err(CliError::Usage("Λ_j is not defined at 0".into()));
    }
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &j in &a.j.0 {
        let j = small(j, "j", 16)? as u32;
        let mobius_form = lambda_j_mobius(j, &f)?;
        let recursive_form = lambda_j_recursive(j, &f)?;
        if mobius_form != recursive_form {
            failures.push(format!("Λ_{j}({f}): Möbius form {mobius_form}, recursion {recursive_form}"));
        }
        rows.push(LambdaRow { poly: f.to_string(), j, mobius_form, recursive_form, seed: a.common.seed });
    }
    Ok(table(rows, failures))
}

#[derive(Serialize)]
struct LfunRow {
    q: u32,
    m: usize,
    character: u64,
    even: bool,
    primitive: bool,
    degree: usize,
    coefficients: String,
    roots: String,
    rh_ok: bool,
    seed: u64,
}

fn character_ids(g: &UnitGroup, id: Option<u64>, keep: impl Fn(ffcovar::characters::CharacterFlags) -> bool) -> Result<Vec<u64>, CliError> {
    match id {
        Some(id) if id >= g.order() => Err(CliError::Usage(format!("character id {id} out of range (group order {})", g.order()))),
        Some(id) if !keep(g.flags(id)) => Err(CliError::Usage(format!("character {id} does not qualify for this command"))),
        Some(id) => Ok(vec![id]),
        None => Ok(g.select(keep)),
    }
}

pub fn lfun(a: &LfunArgs) -> Result<Outcome, CliError> {
    let c = &a.common;
    let tol = tolerances(c)?;
    let q = prime(a.q as u64)?;
    let g = group(q, a.m, c)?;
    let ids = character_ids(&g, a.character, |f| !f.is_trivial)?;
    let results: Vec<Result<(LfunRow, Option<String>), CliError>> = ids
        .par_iter()
        .map(|&id| {
            let chi = g.character(id);
            let l = l_polynomial(&chi)?;
            let roots = l.roots(tol.coeff_zero)?;
            let mut rh_ok = roots_on_critical_circles(&roots, q, tol.root);
            if chi.is_even && chi.is_primitive {
                rh_ok &= roots.iter().filter(|u| (**u - 1.0).norm() <= tol.root).count() == 1;
            }
            let failure = (!rh_ok).then(|| format!("q={q} m={} character {id}: zeros off the critical circles", a.m));
            let row = LfunRow {
                q,
                m: a.m,
                character: id,
                even: chi.is_even,
                primitive: chi.is_primitive,
                degree: l.degree(tol.coeff_zero),
                coefficients: complex_list(&l.coeffs),
                roots: complex_list(&roots),
                rh_ok,
                seed: c.seed,
            };
            Ok((row, failure))
        })
        .collect();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        let (row, failure) = r?;
        rows.push(row);
        failures.extend(failure);
    }
    Ok(table(rows, failures))
}

pub fn frobenius(a: &FrobeniusArgs) -> Result<Outcome, CliError> {
    let c = &a.common;
    let tol = tolerances(c)?;
    let qs = primes(&a.q)?;
    if a.ensemble {
        if a.big_m < 2 {
            return Err(CliError::Usage("--M must be at least 2".into()));
        }
        if a.j == 0 || a.k == 0 || a.n == 0 {
            return Err(CliError::Usage("--j, --k and --n must be at least 1".into()));
        }
        let mut rows = Vec::new();
        for q in qs {
            let g = group(q, a.big_m + 1, c)?;
            rows.push(katz_report(&g, a.j, a.k, a.n, c.seed, &tol)?);
        }
        return Ok(table(rows, Vec::new()));
    }
    let mut spectra = Vec::new();
    let mut failures = Vec::new();
    for q in qs {
        let g = group(q, a.m, c)?;
        let ids = character_ids(&g, a.character, |f| f.is_primitive)?;
        let batch: Vec<_> = ids.par_iter().map(|&id| frobenius_spectrum(&g.character(id), &tol)).collect();
        for s in batch {
            match s {
                Ok(s) => spectra.push(s),
                Err(ffcovar::Error::Integrity(msg)) => failures.push(msg),
                Err(e) => return Err(e.into()),
            }
        }
    }
    let write = move |format: Format, out: &mut dyn Write| match format {
        Format::Csv => write_spectrum_csv(&spectra, out),
        Format::Json => write_json(&spectra, out),
    };
    Ok(Outcome { rows: Box::new(write), failures })
}

#[derive(Serialize)]
struct IdentityRow {
    suite: &'static str,
    q: u32,
    checked: u64,
    passed: u64,
    seed: u64,
}

fn tally(rows: &mut Vec<IdentityRow>, failures: &mut Vec<String>, suite: &'static str, q: u32, seed: u64, results: &[bool]) {
    let passed = results.iter().filter(|&&ok| ok).count() as u64;
    let checked = results.len() as u64;
    if passed != checked {
        failures.push(format!("{suite} at q={q}: {} of {checked} checks failed", checked - passed));
    }
    rows.push(IdentityRow { suite, q, checked, passed, seed });
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn residue_poly(field: FieldParams, mut r: u64, m: usize) -> Poly {
    let q = field.q() as u64;
    Poly::new(field, (0..m).map(|_| {
        let c = r % q;
        r /= q;
        c
    }))
}

pub fn identities(a: &IdentitiesArgs) -> Result<Outcome, CliError> {
    let c = &a.common;
    let tol = tolerances(c)?;
    let qs = primes(&a.q)?;
    const MAX_J: u32 = 4;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for q in qs {
        let field = FieldParams::new(q)?;
        let visits = monic_count_upto(q, a.max_deg).unwrap_or(u128::MAX);
        if visits > c.max_enum as u128 {
            return Err(ffcovar::Error::Resource { what: "monic polynomials".into(), needed: visits, budget: c.max_enum as u128 }.into());
        }
        let (mut forms, mut bounds, mut averages) = (Vec::new(), Vec::new(), Vec::new());
        for n in 0..=a.max_deg {
            let per_poly: Vec<Vec<(bool, bool, i64)>> = enumerate_monics(field, n)
                .collect::<Vec<_>>()
                .par_iter()
                .map(|p| {
                    (0..=MAX_J)
                        .map(|j| {
                            let m = lambda_j_mobius(j, p).expect("nonzero");
                            let r = lambda_j_recursive(j, p).expect("nonzero");
                            let bound = if n == 0 { 1 } else { (n as i64).pow(j) };
                            (m == r, (0..=bound).contains(&m), m)
                        })
                        .collect()
                })
                .collect();
            for v in &per_poly {
                for &(agree, bounded, _) in v {
                    forms.push(agree);
                    bounds.push(bounded);
                }
            }
            if n >= 1 {
                for j in 1..=MAX_J {
                    let sum: i128 = per_poly.iter().map(|v| v[j as usize].2 as i128).sum();
                    averages.push(sum == vm_average_closed(q, j, n));
                }
            }
        }
        tally(&mut rows, &mut failures, "lambda_forms", q, c.seed, &forms);
        tally(&mut rows, &mut failures, "lambda_bounds", q, c.seed, &bounds);
        tally(&mut rows, &mut failures, "lambda_average", q, c.seed, &averages);

        let mut rng = ChaCha8Rng::seed_from_u64(c.seed ^ q as u64);
        let mut convolution = Vec::new();
        let mut attempts = 0usize;
        while convolution.len() < a.pairs * (MAX_J as usize + 1) && attempts < 100 * a.pairs.max(1) {
            attempts += 1;
            let draw = |rng: &mut ChaCha8Rng| {
                let d = rng.random_range(0..=a.max_deg);
                Poly::from_monic_index(field, d, rng.random_range(0..(q as u64).pow(d as u32)))
            };
            let (f, g) = (draw(&mut rng), draw(&mut rng));
            if !f.gcd(&g).is_one() {
                continue;
            }
            let fg = &f * &g;
            for j in 0..=MAX_J {
                let lhs = lambda_j_mobius(j, &fg)?;
                let mut rhs = 0i64;
                for l in 0..=j {
                    rhs += binomial(j, l) * lambda_j_mobius(l, &f)? * lambda_j_mobius(j - l, &g)?;
                }
                convolution.push(lhs == rhs);
            }
        }
        tally(&mut rows, &mut failures, "coprime_convolution", q, c.seed, &convolution);

        let (mut counts, mut orthogonality) = (Vec::new(), Vec::new());
        for m in 1..=a.max_deg {
            if phi(q as u64, m as u32) > c.max_enum.min(MAX_GROUP_ORDER) {
                break;
            }
            let g = group(q, m, c)?;
            let mut seen = [0u64; 4];
            for id in 0..g.order() {
                let f = g.flags(id);
                seen[0] += 1;
                seen[1] += f.is_even as u64;
                seen[2] += f.is_primitive as u64;
                seen[3] += (f.is_even && f.is_primitive) as u64;
            }
            let (qq, mm) = (q as u64, m as u32);
            let want = [phi(qq, mm), phi_even(qq, mm), phi_primitive(qq, mm), phi_even_primitive(qq, mm)];
            counts.extend(seen.iter().zip(want).map(|(a, b)| *a == b));
            let n = g.num_residues() as u64;
            let picks = [0, 1, 2, qq, qq + 1, n / 2, n - 1];
            for &x in &picks {
                for &y in &picks {
                    let r = g.orthogonality_residual(&residue_poly(field, x % n, m), &residue_poly(field, y % n, m));
                    orthogonality.push(r <= tol.orthogonality);
                }
            }
        }
        tally(&mut rows, &mut failures, "character_counts", q, c.seed, &counts);
        tally(&mut rows, &mut failures, "orthogonality", q, c.seed, &orthogonality);
    }
    Ok(table(rows, failures))
}

fn covar_params(experiment: u8, n: u64, h: i64, j: u64, k: u64) -> Result<CovarParams, CliError> {
    let experiment = Experiment::from_number(experiment).map_err(|e| CliError::Usage(e.to_string()))?;
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    Ok(CovarParams {
        experiment,
        n: small(n, "n", 64)? as usize,
        h,
        j: small(j, "j", 16)? as u32,
        k: small(k, "k", 16)? as u32,
    })
}

pub fn covar(a: &CovarArgs) -> Result<Outcome, CliError> {
    let c = &a.common;
    let qs = primes(&a.q)?;
    let p = covar_params(a.experiment, a.n as u64, a.h, a.j as u64, a.k as u64)?;
    let rows = qs
        .into_iter()
        .map(|q| covar_report(q, p, c.max_enum, c.seed, c.timing))
        .collect::<ffcovar::Result<Vec<_>>>()?;
    Ok(table(rows, Vec::new()))
}

/// Points that fail (for example over budget) are skipped and reported.
pub fn sweep(a: &SweepArgs) -> Result<Outcome, CliError> {
    let c = &a.common;
    let qs = primes(&a.q)?;
    let mut grid = Vec::new();
    for &q in &qs {
        for &n in &a.n.0 {
            for &h in &a.h.0 {
                for &j in &a.j.0 {
                    for &k in &a.k.0 {
                        grid.push((q, covar_params(a.experiment, n, h, j, k)?));
                    }
                }
            }
        }
    }
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (q, p) in grid {
        match covar_report(q, p, c.max_enum, c.seed, c.timing) {
            Ok(r) => rows.push(r),
            Err(e) => {
                failures.push(format!("sweep point q={q} n={} h={} j={} k={} skipped: {e}", p.n, p.h, p.j, p.k));
            }
        }
    }
    Ok(table(rows, failures))
}

#[derive(Serialize)]
struct RatioRow {
    #[serde(rename = "N")]
    dim: usize,
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
    #[serde(rename = "C")]
    c: String,
    #[serde(rename = "D")]
    d: String,
    lhs_re: f64,
    lhs_im: f64,
    stderr: f64,
    rhs_re: f64,
    rhs_im: f64,
    samples: usize,
    seed: u64,
    pass: bool,
}

pub fn ratio(a: &RatioArgs) -> Result<Outcome, CliError> {
    let c = &a.common;
    let tol = tolerances(c)?;
    if a.dim == 0 || a.samples < 2 {
        return Err(CliError::Usage("need --N >= 1 and --samples >= 2".into()));
    }
    let p = RatioParams { a: a.a, b: a.b, c: a.c, d: a.d };
    let ensemble = HaarEnsemble::generate(a.dim, a.samples, 1, c.seed);
    let check = ratio_theorem_check(&p, &ensemble, tol.mc_sigmas).map_err(|e| CliError::Usage(e.to_string()))?;
    let row = RatioRow {
        dim: a.dim,
        a: a.a.to_string(),
        b: a.b.to_string(),
        c: a.c.to_string(),
        d: a.d.to_string(),
        lhs_re: check.lhs.mean.re,
        lhs_im: check.lhs.mean.im,
        stderr: check.lhs.stderr,
        rhs_re: check.rhs.re,
        rhs_im: check.rhs.im,
        samples: a.samples,
        seed: c.seed,
        pass: check.pass,
    };
    let failures = if check.pass {
        Vec::new()
    } else {
        vec![format!("ratio theorem: Monte Carlo {} ± {} vs closed form {}", check.lhs.mean, check.lhs.stderr, check.rhs)]
    };
    Ok(table(vec![row], failures))
}

#[derive(Serialize)]
struct McRow {
    statistic: &'static str,
    #[serde(rename = "N")]
    dim: usize,
    j: u32,
    k: u32,
    n: usize,
    m: usize,
    mean_re: f64,
    mean_im: f64,
    stderr: f64,
    exact: i128,
    z: f64,
    pass: bool,
    samples: usize,
    seed: u64,
}

pub fn rmt_mc(a: &RmtMcArgs) -> Result<Outcome, CliError> {
    let c = &a.common;
    let tol = tolerances(c)?;
    if a.dim == 0 || a.samples < 2 || a.max_n == 0 || a.max_j == 0 {
        return Err(CliError::Usage("need --N >= 1, --samples >= 2, --max-n >= 1 and --max-j >= 1".into()));
    }
    let max_n = small(a.max_n as u64, "--max-n", 32)? as usize;
    let max_j = small(a.max_j as u64, "--max-j", 8)? as u32;
    let ensemble = HaarEnsemble::generate(a.dim, a.samples, max_n, c.seed);
    let tables = ensemble
        .samples
        .par_iter()
        .map(|s| h_table(max_j, max_n, &s.stats))
        .collect::<ffcovar::Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut push = |statistic, j, k, n, m, values: Vec<Complex64>, exact: i128| {
        let est = estimate_values(&values);
        let target = Complex64::new(exact as f64, 0.0);
        let pass = est.agrees_with(target, tol.mc_sigmas);
        if !pass {
            failures.push(format!("{statistic} j={j} k={k} n={n} m={m}: {} ± {} vs {exact}", est.mean, est.stderr));
        }
        rows.push(McRow {
            statistic,
            dim: a.dim,
            j,
            k,
            n,
            m,
            mean_re: est.mean.re,
            mean_im: est.mean.im,
            stderr: est.stderr,
            exact,
            z: if est.stderr > 0.0 { est.z_score(target) } else { 0.0 },
            pass,
            samples: est.samples,
            seed: c.seed,
        });
    };
    for n in 1..=max_n {
        let v = ensemble.samples.iter().map(|s| Complex64::new(s.stats.powers()[n].norm_sqr(), 0.0)).collect();
        push("form_factor", 1, 1, n, n, v, n.min(a.dim) as i128);
    }
    for j in 1..=max_j {
        for k in 1..=max_j {
            for n in 1..=max_n {
                for m in 1..=max_n {
                    let v = tables.iter().map(|t| t[j as usize][n] * t[k as usize][m].conj()).collect();
                    push("h_covariance", j, k, n, m, v, h_covariance_exact(j, k, n, m, a.dim));
                }
            }
        }
    }
    Ok(table(rows, failures))
}
