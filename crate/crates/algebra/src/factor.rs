//! Partial factorisation over ℚ, enough to split zero sets.
//!
//! Complete for: monomial factors, univariate polynomials (rational roots
//! plus a bounded Kronecker search), and polynomials of total degree two
//! (rank of the homogenised quadratic form). Anything else is only split
//! along repeated factors and contents found with multivariate gcds; the
//! result then carries `certified = false`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::{rat, Polynomial};
use crate::{AlgebraError, Budget};

/// Distinct factors of a polynomial, multiplicities dropped (the product
/// has the same zero set as the input).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<Polynomial>,
    /// Every listed factor is proven irreducible over ℚ.
    pub certified: bool,
}

/// Candidate limit for the Kronecker search on one degree.
const KRONECKER_LIMIT: usize = 200_000;
/// Integers above this are not trial-factored.
const TRIAL_LIMIT: u64 = 1_000_000_000_000;

pub fn split_polynomial(p: &Polynomial, budget: &Budget) -> Result<Factorization, AlgebraError> {
    if p.is_constant() {
        return Ok(Factorization { factors: Vec::new(), certified: true });
    }
    let n = p.nvars();
    let mut out: Vec<Polynomial> = Vec::new();
    let mut uncertain: Vec<Polynomial> = Vec::new();
    let mut certified = true;

    let (vars, rest) = monomial_content(p);
    for v in vars {
        out.push(Polynomial::var(n, v));
    }
    let mut work = Vec::new();
    if !rest.is_constant() {
        work.push(rest.primitive());
    }
    loop {
        while let Some(q) = work.pop() {
            budget.check_time()?;
            let deg = q.total_degree().unwrap_or(0);
            let vs = q.variables();
            if deg == 1 {
                out.push(q);
                continue;
            }
            if vs.len() == 1 {
                let (fs, ok) = univariate_factors(&q, vs[0]);
                certified &= ok;
                out.extend(fs);
                continue;
            }
            if deg == 2 {
                match quadratic_split(&q) {
                    QuadraticSplit::Irreducible => out.push(q),
                    QuadraticSplit::Square(l) => out.push(l),
                    QuadraticSplit::Product(a, b) => {
                        out.push(a);
                        out.push(b);
                    }
                }
                continue;
            }
            match gcd_split(&q, budget)? {
                GcdSplit::Split(parts) => work.extend(parts.into_iter().filter(|f| !f.is_constant())),
                GcdSplit::Irreducible => out.push(q),
                GcdSplit::Unknown => {
                    uncertain.push(q.primitive());
                    out.push(q);
                }
            }
        }
        // refine: a listed factor dividing another one splits it further
        let mut list: Vec<Polynomial> = out.iter().map(Polynomial::primitive).collect();
        list.sort_by_key(|f| (f.total_degree(), f.to_string()));
        list.dedup();
        let mut refined = None;
        'pairs: for (i, a) in list.iter().enumerate() {
            for (j, b) in list.iter().enumerate() {
                if i != j && a.total_degree() < b.total_degree() {
                    if let Some(c) = b.div_exact(a) {
                        refined = Some((j, c));
                        break 'pairs;
                    }
                }
            }
        }
        if let Some((j, c)) = refined {
            let b = list.remove(j);
            uncertain.retain(|u| *u != b);
            out = list;
            work.push(c.primitive());
        } else {
            out = list;
            break;
        }
    }
    let mut normalized: Vec<Polynomial> = out.iter().map(Polynomial::primitive).collect();
    normalized.sort_by_key(|f| (f.total_degree(), f.to_string()));
    normalized.dedup();
    certified &= uncertain.is_empty();
    Ok(Factorization { factors: normalized, certified })
}

/// Pulls out every variable dividing all terms.
fn monomial_content(p: &Polynomial) -> (Vec<usize>, Polynomial) {
    let n = p.nvars();
    let mut mins = vec![u32::MAX; n];
    for (m, _) in p.terms() {
        for (k, &e) in m.exponents().iter().enumerate() {
            mins[k] = mins[k].min(e);
        }
    }
    let vars: Vec<usize> = (0..n).filter(|&v| mins[v] > 0 && mins[v] != u32::MAX).collect();
    if vars.is_empty() {
        return (vars, p.clone());
    }
    let div = Monomial::from_exponents(mins.iter().map(|&e| if e == u32::MAX { 0 } else { e }).collect());
    let rest = Polynomial::from_terms(n, p.terms().map(|(m, c)| (div.quotient_of(m).unwrap(), c.clone())));
    (vars, rest)
}

/// Greatest common divisor through the lcm: `(f) ∩ (g)` is computed by
/// eliminating `t` from `(t f, (1 - t) g)`.
pub fn gcd(f: &Polynomial, g: &Polynomial, budget: &Budget) -> Result<Polynomial, AlgebraError> {
    let n = f.nvars();
    if f.is_zero() {
        return Ok(g.primitive());
    }
    if g.is_zero() {
        return Ok(f.primitive());
    }
    if f.is_constant() || g.is_constant() {
        return Ok(Polynomial::one(n));
    }
    let t = Polynomial::var(n + 1, n);
    let one = Polynomial::one(n + 1);
    let gens = vec![&t * &f.extend_vars(1), &(&one - &t) * &g.extend_vars(1)];
    let ideal = Ideal::from_generators(n + 1, gens);
    let elim = ideal.eliminate(&[n], budget)?;
    let lcm = elim.generators().first().cloned().expect("intersection of principal ideals is nonzero");
    let prod = f * g;
    let q = prod.div_exact(&lcm).expect("lcm divides the product");
    Ok(q.primitive())
}

enum GcdSplit {
    Split(Vec<Polynomial>),
    Irreducible,
    Unknown,
}

/// Splits `q` along repeated factors or a content with respect to one
/// variable. Degree one in a variable with trivial content certifies
/// irreducibility.
fn gcd_split(q: &Polynomial, budget: &Budget) -> Result<GcdSplit, AlgebraError> {
    let n = q.nvars();
    let mut linear_certificate = false;
    for v in q.variables() {
        let g = gcd(q, &q.derivative(v), budget)?;
        if !g.is_constant() {
            let squarefree = q.div_exact(&g).expect("gcd divides");
            return Ok(GcdSplit::Split(vec![g, squarefree]));
        }
        let mut coeffs: Vec<Polynomial> = Vec::new();
        for d in 0..=q.degree_in(v) {
            let c = Polynomial::from_terms(
                n,
                q.terms().filter(|(m, _)| m.exponents()[v] == d).map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e[v] = 0;
                    (Monomial::from_exponents(e), c.clone())
                }),
            );
            if !c.is_zero() {
                coeffs.push(c);
            }
        }
        if coeffs.len() < 2 {
            continue;
        }
        let mut cont = coeffs[0].clone();
        for c in &coeffs[1..] {
            cont = gcd(&cont, c, budget)?;
            if cont.is_constant() {
                break;
            }
        }
        if !cont.is_constant() {
            let rest = q.div_exact(&cont).expect("content divides");
            return Ok(GcdSplit::Split(vec![cont, rest]));
        }
        if q.degree_in(v) == 1 {
            linear_certificate = true;
        }
    }
    Ok(if linear_certificate { GcdSplit::Irreducible } else { GcdSplit::Unknown })
}

enum QuadraticSplit {
    Irreducible,
    Square(Polynomial),
    Product(Polynomial, Polynomial),
}

/// Classifies a total-degree-two polynomial through its homogenised
/// symmetric matrix: rank ≥ 3 is irreducible, rank 2 factors over ℚ iff
/// the diagonal form `c1 L1² + c2 L2²` has `-c2/c1` a rational square,
/// rank 1 is a square.
fn quadratic_split(p: &Polynomial) -> QuadraticSplit {
    let n = p.nvars();
    let vars = p.variables();
    let k = vars.len();
    let h = k; // index of the homogenising variable
    let mut a = vec![vec![BigRational::zero(); k + 1]; k + 1];
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for (m, c) in p.terms() {
        let e = m.exponents();
        let idx: Vec<usize> = vars.iter().enumerate().filter(|(_, &v)| e[v] > 0).map(|(i, _)| i).collect();
        match (idx.len(), m.degree()) {
            (0, 0) => a[h][h] += c,
            (1, 1) => {
                a[idx[0]][h] += c * &half;
                a[h][idx[0]] += c * &half;
            }
            (1, 2) => a[idx[0]][idx[0]] += c,
            (2, 2) => {
                a[idx[0]][idx[1]] += c * &half;
                a[idx[1]][idx[0]] += c * &half;
            }
            _ => unreachable!("total degree two"),
        }
    }
    let dim = k + 1;
    let mut forms: Vec<(BigRational, Vec<BigRational>)> = Vec::new();
    loop {
        let diag = (0..dim).find(|&i| !a[i][i].is_zero());
        let u: Vec<BigRational> = match diag {
            Some(i) => unit(dim, &[i]),
            None => match (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero()) {
                Some((i, j)) => unit(dim, &[i, j]),
                None => break,
            },
        };
        let r: Vec<BigRational> =
            (0..dim).map(|i| (0..dim).map(|j| &a[i][j] * &u[j]).fold(BigRational::zero(), |s, x| s + x)).collect();
        let alpha: BigRational = (0..dim).map(|i| &r[i] * &u[i]).fold(BigRational::zero(), |s, x| s + x);
        for i in 0..dim {
            for j in 0..dim {
                let d = &r[i] * &r[j] / &alpha;
                a[i][j] -= d;
            }
        }
        forms.push((alpha.recip(), r));
        if forms.len() > 2 {
            return QuadraticSplit::Irreducible;
        }
    }
    let to_poly = |coef: &[BigRational]| -> Polynomial {
        let mut out = Polynomial::constant(n, coef[h].clone());
        for (i, &v) in vars.iter().enumerate() {
            out = &out + &Polynomial::var(n, v).scale(&coef[i]);
        }
        out
    };
    match forms.len() {
        1 => QuadraticSplit::Square(to_poly(&forms[0].1)),
        2 => {
            let ratio = -(&forms[1].0 / &forms[0].0);
            match rational_sqrt(&ratio) {
                None => QuadraticSplit::Irreducible,
                Some(s) => {
                    let l1 = &forms[0].1;
                    let l2 = &forms[1].1;
                    let minus: Vec<BigRational> = l1.iter().zip(l2).map(|(x, y)| x - &(y * &s)).collect();
                    let plus: Vec<BigRational> = l1.iter().zip(l2).map(|(x, y)| x + &(y * &s)).collect();
                    QuadraticSplit::Product(to_poly(&minus), to_poly(&plus))
                }
            }
        }
        _ => QuadraticSplit::Irreducible,
    }
}

fn unit(dim: usize, ones: &[usize]) -> Vec<BigRational> {
    let mut u = vec![BigRational::zero(); dim];
    for &i in ones {
        u[i] = BigRational::one();
    }
    u
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// univariate

type Dense = Vec<BigRational>;

fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn dense_of(p: &Polynomial, v: usize) -> Dense {
    let d = p.degree_in(v) as usize;
    let mut out = vec![BigRational::zero(); d + 1];
    for (m, c) in p.terms() {
        out[m.exponents()[v] as usize] += c;
    }
    trim(out)
}

fn poly_of(d: &[BigRational], n: usize, v: usize) -> Polynomial {
    Polynomial::from_terms(
        n,
        d.iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; n];
            e[v] = k as u32;
            (Monomial::from_exponents(e), c.clone())
        }),
    )
}

fn dense_divrem(a: &[BigRational], b: &[BigRational]) -> (Dense, Dense) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lb;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    (trim(q), trim(r))
}

fn dense_gcd(a: &[BigRational], b: &[BigRational]) -> Dense {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = dense_divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        for c in &mut x {
            *c /= &l;
        }
    }
    x
}

fn dense_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Integer coefficients with content one.
fn integerize(p: &[BigRational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in p {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let m = n.abs().to_u64()?;
    if m == 0 || m > TRIAL_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            small.push(BigInt::from(d));
            if d * d != m {
                large.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// Distinct irreducible factors of a univariate polynomial in variable `v`,
/// and whether the factorisation is complete.
fn univariate_factors(p: &Polynomial, v: usize) -> (Vec<Polynomial>, bool) {
    let n = p.nvars();
    let dense = dense_of(p, v);
    let deriv: Dense = trim(dense.iter().enumerate().skip(1).map(|(k, c)| c * rat(k as i64)).collect());
    let g = dense_gcd(&dense, &deriv);
    let mut sqfree = if g.len() > 1 { dense_divrem(&dense, &g).0 } else { dense };
    let mut out = Vec::new();
    let mut complete = true;

    // rational roots
    loop {
        if sqfree.len() <= 2 {
            break;
        }
        let ints = integerize(&sqfree);
        if ints[0].is_zero() {
            out.push(vec![BigRational::zero(), BigRational::one()]);
            sqfree = sqfree[1..].to_vec();
            continue;
        }
        let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
            complete = false;
            break;
        };
        let mut found = None;
        'search: for pn in &ps {
            for qd in &qs {
                for s in [1i64, -1] {
                    let r = BigRational::new(pn * s, qd.clone());
                    if dense_eval(&sqfree, &r).is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                let lin = vec![-r, BigRational::one()];
                sqfree = dense_divrem(&sqfree, &lin).0;
                out.push(lin);
            }
            None => break,
        }
    }
    // no rational roots left: degree ≤ 3 is irreducible, otherwise search
    let mut rest = vec![sqfree];
    let mut done = Vec::new();
    while let Some(f) = rest.pop() {
        let deg = f.len().saturating_sub(1);
        if deg <= 3 {
            if deg >= 1 {
                done.push(f);
            }
            continue;
        }
        match kronecker_factor(&f) {
            KroneckerResult::Factor(a) => {
                let b = dense_divrem(&f, &a).0;
                rest.push(a);
                rest.push(b);
            }
            KroneckerResult::Irreducible => done.push(f),
            KroneckerResult::GaveUp => {
                complete = false;
                done.push(f);
            }
        }
    }
    out.extend(done);
    (out.iter().map(|d| poly_of(d, n, v)).collect(), complete)
}

enum KroneckerResult {
    Factor(Dense),
    Irreducible,
    GaveUp,
}

/// Searches for an integer factor of degree 2..=deg/2 by interpolating
/// divisors of values at small integer points.
fn kronecker_factor(f: &[BigRational]) -> KroneckerResult {
    let ints = integerize(f);
    let fq: Dense = ints.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let deg = fq.len() - 1;
    for k in 2..=deg / 2 {
        let mut points = Vec::new();
        let mut t = 0i64;
        while points.len() < k + 1 {
            let x = BigRational::from_integer(BigInt::from(t));
            let y = dense_eval(&fq, &x);
            if !y.is_zero() {
                points.push((x, y));
            }
            t = if t <= 0 { 1 - t } else { -t };
        }
        let mut choices: Vec<Vec<BigInt>> = Vec::new();
        let mut total: usize = 1;
        for (i, (_, y)) in points.iter().enumerate() {
            let Some(ds) = divisors(&y.to_integer()) else {
                return KroneckerResult::GaveUp;
            };
            let mut signed = ds.clone();
            if i > 0 {
                signed.extend(ds.iter().map(|d| -d));
            }
            total = total.saturating_mul(signed.len());
            choices.push(signed);
        }
        if total > KRONECKER_LIMIT {
            return KroneckerResult::GaveUp;
        }
        let mut idx = vec![0usize; k + 1];
        loop {
            let values: Vec<BigRational> =
                idx.iter().zip(&choices).map(|(&i, c)| BigRational::from_integer(c[i].clone())).collect();
            let xs: Vec<&BigRational> = points.iter().map(|(x, _)| x).collect();
            let cand = interpolate(&xs, &values);
            if cand.len() == k + 1 && cand.iter().all(|c| c.is_integer()) {
                let (_, r) = dense_divrem(&fq, &cand);
                if r.is_empty() {
                    return KroneckerResult::Factor(cand);
                }
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    KroneckerResult::Irreducible
}

fn interpolate(xs: &[&BigRational], ys: &[BigRational]) -> Dense {
    let n = xs.len();
    let mut result = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial for point i
        let mut basis: Dense = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xs[j];
            }
            basis = next;
            denom *= xs[i] - xs[j];
        }
        let scale = &ys[i] / &denom;
        for (k, b) in basis.iter().enumerate() {
            result[k] += b * &scale;
        }
    }
    trim(result)
}
