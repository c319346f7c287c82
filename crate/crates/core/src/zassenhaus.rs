//! Exact factorization of univariate polynomials over Q.
//!
//! The classical route: squarefree decomposition (Yun), reduction of each
//! squarefree part to a monic integer polynomial, factorization modulo a
//! small prime (Berlekamp), quadratic Hensel lifting past the Mignotte
//! bound, and subset recombination. Factors are returned monic over Q
//! together with the leading unit.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::rat::Rat;

/// Result of factoring over Q: input = unit * prod factors[i].0 ^ factors[i].1,
/// every factor monic irreducible over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFactorization {
    pub unit: Rat,
    pub factors: Vec<(QPoly, u32)>,
}

impl QFactorization {
    /// Multiply the factorization back out.
    pub fn expand(&self) -> QPoly {
        let mut acc = QPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = &acc * f;
            }
        }
        acc
    }
}

/// Factor a nonzero polynomial over Q into monic irreducible factors.
pub fn factor_over_q(p: &QPoly) -> Result<QFactorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = p.leading();
    let monic = p.monic();
    let mut factors: Vec<(QPoly, u32)> = Vec::new();

    // Strip the Z^v part so squarefree parts have nonzero constant terms.
    let val = monic
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial");
    let core = QPoly::from_coeffs(monic.coeffs()[val..].to_vec());
    if val > 0 {
        factors.push((QPoly::var(), val as u32));
    }

    if core.deg0() > 0 {
        for (part, mult) in core.squarefree_decomposition() {
            for irr in factor_squarefree(&part)? {
                factors.push((irr, mult));
            }
        }
    }

    factors.sort_by(|a, b| {
        (a.0.deg0(), a.0.coeffs(), a.1).cmp(&(b.0.deg0(), b.0.coeffs(), b.1))
    });
    let out = QFactorization { unit, factors };
    debug_assert_eq!(out.expand(), *p, "factorization must reconstruct its input");
    Ok(out)
}

/// Factor a monic squarefree polynomial with nonzero constant term.
fn factor_squarefree(w: &QPoly) -> Result<Vec<QPoly>> {
    debug_assert!(w.is_monic() && !w.coeff(0).is_zero());
    if w.deg0() == 1 {
        return Ok(vec![w.clone()]);
    }
    // Clear denominators and take the primitive part.
    let mut den = BigInt::one();
    for c in w.coeffs() {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = w.coeffs().iter().map(|c| (c * Rat::from(den.clone())).to_integer()).collect();
    let content = ints
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let prim: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();

    // Monicize: Q(x) = l^(n-1) P(x/l) is monic with integer coefficients.
    let n = prim.len() - 1;
    let lead = prim[n].clone();
    let mut monic_int = Vec::with_capacity(n + 1);
    for (k, a) in prim.iter().enumerate() {
        monic_int.push(a * pow_bigint(&lead, (n as i64 - 1 - k as i64).max(0) as u32));
    }
    // k = n entry above used exponent 0, giving lc = lead; fix to 1 by exact division.
    monic_int[n] = BigInt::one();
    if n >= 1 {
        // entries 0..n-1 already a_k * l^(n-1-k); entry n must be a_n / l = 1.
        debug_assert_eq!(prim[n], lead);
    }

    let int_factors = factor_monic_int(&monic_int)?;

    // Map back through x -> l x and normalize monic over Q.
    let linv = Rat::from(lead).recip();
    let mut out = Vec::with_capacity(int_factors.len());
    for g in int_factors {
        let dg = g.len() - 1;
        let coeffs: Vec<Rat> = g
            .iter()
            .enumerate()
            .map(|(k, c)| Rat::from(c.clone()) * pow_rat(&linv, (dg - k) as u32))
            .collect();
        out.push(QPoly::from_coeffs(coeffs));
    }
    out.sort_by(|a, b| (a.deg0(), a.coeffs()).cmp(&(b.deg0(), b.coeffs())));
    Ok(out)
}

fn pow_bigint(b: &BigInt, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..k {
        acc *= b;
    }
    acc
}

fn pow_rat(b: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= b;
    }
    acc
}

// ---------------------------------------------------------------------------
// Integer polynomials (dense ascending BigInt) and arithmetic mod m.
// ---------------------------------------------------------------------------

type ZPoly = Vec<BigInt>;

fn ztrim(p: &mut ZPoly) {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(&mut out);
    out
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let x = a.get(k).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(k).cloned().unwrap_or_else(BigInt::zero);
        out.push(x - y);
    }
    ztrim(&mut out);
    out
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let x = a.get(k).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(k).cloned().unwrap_or_else(BigInt::zero);
        out.push(x + y);
    }
    ztrim(&mut out);
    out
}

fn zmod(p: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out: ZPoly = p.iter().map(|c| c.mod_floor(m)).collect();
    ztrim(&mut out);
    out
}

/// Coefficients reduced into (-m/2, m/2].
fn zcenter(p: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut out: ZPoly = p
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    ztrim(&mut out);
    out
}

/// Division with remainder by a monic divisor, all coefficients mod m.
fn zdivrem_monic_mod(a: &ZPoly, div: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    debug_assert!(matches!(div.last(), Some(c) if c.is_one()));
    let dd = div.len() - 1;
    let mut rem = zmod(a, m);
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        if k >= rem.len() {
            continue;
        }
        let c = rem.get(k).cloned().unwrap_or_else(BigInt::zero);
        if c.is_zero() {
            continue;
        }
        quot[k - dd] = c.clone();
        for (j, dc) in div.iter().enumerate() {
            let idx = k - dd + j;
            let t = (dc * &c).mod_floor(m);
            let cur = rem.get(idx).cloned().unwrap_or_else(BigInt::zero);
            if idx < rem.len() {
                rem[idx] = (cur - t).mod_floor(m);
            }
        }
    }
    ztrim(&mut rem);
    ztrim(&mut quot);
    (quot, rem)
}

/// Exact division test over Z for a monic divisor; returns the quotient.
fn zdiv_exact_monic(a: &ZPoly, div: &ZPoly) -> Option<ZPoly> {
    debug_assert!(matches!(div.last(), Some(c) if c.is_one()));
    let dd = div.len() - 1;
    let mut rem = a.clone();
    ztrim(&mut rem);
    if rem.is_empty() {
        return Some(Vec::new());
    }
    if rem.len() <= dd {
        return None;
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (dd..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - dd] = c.clone();
        for (j, dc) in div.iter().enumerate() {
            let t = dc * &c;
            rem[k - dd + j] -= t;
        }
    }
    ztrim(&mut rem);
    if rem.is_empty() {
        ztrim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// GF(p) polynomials on u64 coefficients.
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
struct PPoly {
    c: Vec<u64>,
    p: u64,
}

impl PPoly {
    fn trim(&mut self) {
        while matches!(self.c.last(), Some(0)) {
            self.c.pop();
        }
    }

    fn zero(p: u64) -> Self {
        PPoly { c: Vec::new(), p }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    fn from_zpoly(z: &ZPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let mut out = PPoly {
            c: z.iter()
                .map(|v| u64::try_from(v.mod_floor(&pb)).expect("residue fits u64"))
                .collect(),
            p,
        };
        out.trim();
        out
    }

    fn to_zpoly(&self) -> ZPoly {
        let mut out: ZPoly = self.c.iter().map(|&v| BigInt::from(v)).collect();
        ztrim(&mut out);
        out
    }

    fn mul(&self, other: &PPoly) -> PPoly {
        if self.is_zero() || other.is_zero() {
            return PPoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.c.iter().enumerate() {
                let t = (out[i + j] as u128 + x as u128 * y as u128) % p;
                out[i + j] = t as u64;
            }
        }
        let mut r = PPoly { c: out, p: self.p };
        r.trim();
        r
    }

    fn sub(&self, other: &PPoly) -> PPoly {
        let n = self.c.len().max(other.c.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let x = self.c.get(k).copied().unwrap_or(0);
            let y = other.c.get(k).copied().unwrap_or(0);
            out.push((x + self.p - y) % self.p);
        }
        let mut r = PPoly { c: out, p: self.p };
        r.trim();
        r
    }

    fn scale(&self, s: u64) -> PPoly {
        let p = self.p as u128;
        let mut r = PPoly {
            c: self.c.iter().map(|&x| ((x as u128 * s as u128) % p) as u64).collect(),
            p: self.p,
        };
        r.trim();
        r
    }

    fn monic(&self) -> PPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    fn divrem(&self, div: &PPoly) -> (PPoly, PPoly) {
        assert!(!div.is_zero());
        let dd = div.deg();
        let lcinv = inv_mod(div.lc(), self.p);
        let p = self.p as u128;
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (PPoly::zero(self.p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = ((rem[k] as u128 * lcinv as u128) % p) as u64;
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (j, &dc) in div.c.iter().enumerate() {
                let t = (dc as u128 * c as u128) % p;
                rem[k - dd + j] = ((rem[k - dd + j] as u128 + p - t) % p) as u64;
            }
        }
        let mut q = PPoly { c: quot, p: self.p };
        let mut r = PPoly { c: rem, p: self.p };
        q.trim();
        r.trim();
        (q, r)
    }

    fn gcd(&self, other: &PPoly) -> PPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: (g, s, t) with s*self + t*other = g, g monic.
    fn ext_gcd(&self, other: &PPoly) -> (PPoly, PPoly, PPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let (mut s0, mut s1) = (constant(1, self.p), PPoly::zero(self.p));
        let (mut t0, mut t1) = (PPoly::zero(self.p), constant(1, self.p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        let inv = inv_mod(r0.lc(), self.p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    fn derivative(&self) -> PPoly {
        if self.c.len() <= 1 {
            return PPoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = Vec::with_capacity(self.c.len() - 1);
        for (i, &c) in self.c.iter().enumerate().skip(1) {
            out.push(((c as u128 * (i as u128 % p)) % p) as u64);
        }
        let mut r = PPoly { c: out, p: self.p };
        r.trim();
        r
    }

    /// x^e mod self, by square and multiply.
    fn pow_x_mod(&self, e: u64) -> PPoly {
        let mut base = PPoly {
            c: vec![0, 1],
            p: self.p,
        };
        let (_, r) = base.divrem(self);
        base = r;
        let mut acc = constant(1, self.p);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                let (_, r) = acc.mul(&base).divrem(self);
                acc = r;
            }
            e >>= 1;
            if e > 0 {
                let (_, r) = base.mul(&base).divrem(self);
                base = r;
            }
        }
        acc
    }
}

fn constant(v: u64, p: u64) -> PPoly {
    let mut r = PPoly { c: vec![v % p], p };
    r.trim();
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat inverse; p prime.
    let mut acc: u128 = 1;
    let mut base = a as u128 % p as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc as u64
}

fn small_primes(limit: usize) -> Vec<u64> {
    let mut sieve = vec![true; limit];
    let mut out = Vec::new();
    for n in 2..limit {
        if sieve[n] {
            out.push(n as u64);
            let mut k = n * n;
            while k < limit {
                sieve[k] = false;
                k += n;
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Berlekamp factorization over GF(p).
// ---------------------------------------------------------------------------

/// Factor a monic squarefree polynomial mod p into monic irreducibles.
fn berlekamp(f: &PPoly) -> Vec<PPoly> {
    let n = f.deg();
    let p = f.p;
    if n <= 1 {
        return vec![f.clone()];
    }
    // Petr-Berlekamp matrix: row i holds x^(i p) mod f.
    let xp = f.pow_x_mod(p);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur = constant(1, p);
    for _ in 0..n {
        let mut row = vec![0u64; n];
        for (j, &c) in cur.c.iter().enumerate() {
            row[j] = c;
        }
        rows.push(row);
        let (_, r) = cur.mul(&xp).divrem(f);
        cur = r;
    }
    // Nullspace of (Q - I)^T.
    let mut mat = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            mat[j][i] = rows[i][j];
        }
    }
    for (i, row) in mat.iter_mut().enumerate() {
        row[i] = (row[i] + p - 1) % p;
    }
    let basis = nullspace(&mat, p);
    let r = basis.len();
    if r == 1 {
        return vec![f.monic()];
    }

    let mut factors = vec![f.monic()];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        let mut vp = PPoly { c: v.clone(), p };
        vp.trim();
        if vp.deg() == 0 {
            continue; // the constant vector never splits
        }
        let mut next = Vec::new();
        for u in factors {
            if u.deg() <= 1 {
                next.push(u);
                continue;
            }
            let mut pieces = vec![u];
            for c in 0..p {
                if pieces.iter().all(|q| q.deg() <= 1) {
                    break;
                }
                let shifted = vp.sub(&constant(c, p));
                let mut split = Vec::new();
                for q in pieces {
                    if q.deg() <= 1 {
                        split.push(q);
                        continue;
                    }
                    let g = q.gcd(&shifted);
                    if g.deg() > 0 && g.deg() < q.deg() {
                        let (h, rem) = q.divrem(&g);
                        debug_assert!(rem.is_zero());
                        split.push(g);
                        split.push(h.monic());
                    } else {
                        split.push(q);
                    }
                }
                pieces = split;
            }
            next.extend(pieces);
        }
        factors = next;
    }
    factors.sort_by_key(|a| (a.deg(), a.c.clone()));
    factors
}

/// Nullspace basis of a square matrix over GF(p).
fn nullspace(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = mat.len();
    let mut m: Vec<Vec<u64>> = mat.to_vec();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let pr = (row..n).find(|&r| m[r][col] != 0);
        let Some(pr) = pr else { continue };
        m.swap(row, pr);
        let inv = inv_mod(m[row][col], p);
        for entry in m[row].iter_mut() {
            *entry = (*entry as u128 * inv as u128 % p as u128) as u64;
        }
        for r in 0..n {
            if r != row && m[r][col] != 0 {
                let factor = m[r][col];
                let pivot_row = m[row].clone();
                for (entry, pv) in m[r].iter_mut().zip(&pivot_row) {
                    let t = *pv as u128 * factor as u128 % p as u128;
                    *entry = ((*entry as u128 + p as u128 - t) % p as u128) as u64;
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row;
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            let val = m[r][free];
            if val != 0 {
                v[pc] = (p - val) % p;
            }
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Hensel lifting.
// ---------------------------------------------------------------------------

/// One quadratic Hensel step: from a factorization mod m to mod m^2.
/// Inputs satisfy f = g h (mod m), s g + t h = 1 (mod m), g and h monic.
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic_mod(&zmul(s, &e), h, &m2);
    let g1 = zmod(&zadd(g, &zadd(&zmul(t, &e), &zmul(&q, g))), &m2);
    let h1 = zmod(&zadd(h, &r), &m2);

    // Lift the Bezout pair to the new modulus.
    let b = zmod(
        &zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &vec![BigInt::one()]),
        &m2,
    );
    let (c, d) = zdivrem_monic_mod(&zmul(s, &b), &h1, &m2);
    let s1 = zmod(&zsub(s, &d), &m2);
    let t1 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lift a pairwise factorization f = prod(factors) (mod p) to mod p^K >= bound.
fn hensel_lift_list(f: &ZPoly, factors: &[PPoly], p: u64, target: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![zmod(f, target)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g0 = left.iter().fold(constant(1, p), |acc, x| acc.mul(x));
    let h0 = right.iter().fold(constant(1, p), |acc, x| acc.mul(x));
    let (one, s0, t0) = g0.ext_gcd(&h0);
    debug_assert_eq!(one.deg(), 0, "lifted factors must be coprime mod p");

    let mut m = BigInt::from(p);
    let mut g = g0.to_zpoly();
    let mut h = h0.to_zpoly();
    let mut s = s0.to_zpoly();
    let mut t = t0.to_zpoly();
    while &m < target {
        let (g1, h1, s1, t1) = hensel_step(&zmod(f, &(&m * &m)), &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    let g = zmod(&g, target);
    let h = zmod(&h, target);
    let mut out = hensel_lift_list(&g, left, p, target);
    out.extend(hensel_lift_list(&h, right, p, target));
    out
}

// ---------------------------------------------------------------------------
// Driver for monic squarefree integer polynomials.
// ---------------------------------------------------------------------------

/// Factor a monic squarefree integer polynomial into monic irreducible
/// integer factors.
fn factor_monic_int(f: &ZPoly) -> Result<Vec<ZPoly>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }

    // Find a prime keeping f squarefree.
    let primes = small_primes(10_000);
    let mut chosen = None;
    for &p in &primes {
        let fp = PPoly::from_zpoly(f, p);
        if fp.deg() != n {
            continue; // cannot happen for monic f, kept for safety
        }
        let d = fp.derivative();
        if d.is_zero() {
            continue;
        }
        if fp.gcd(&d).deg() == 0 {
            chosen = Some(p);
            break;
        }
    }
    let p = chosen.ok_or_else(|| Error::Internal("no suitable prime for factorization".into()))?;

    let fp = PPoly::from_zpoly(f, p).monic();
    let modular = berlekamp(&fp);
    if modular.len() == 1 {
        return Ok(vec![f.clone()]);
    }

    // Mignotte-style bound: |coeff of any monic factor| <= 2^n * ||f||_2.
    let norm2_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm2 = BigInt::from(norm2_sq.to_biguint().unwrap_or_else(BigUint::zero).sqrt()) + 1;
    let bound: BigInt = (BigInt::one() << n) * norm2;
    let mut target = BigInt::from(p);
    while target < (&bound * 2 + 1) {
        target = &target * &target;
    }

    let lifted = hensel_lift_list(&zmod(f, &target), &modular, p, &target);

    // Subset recombination.
    let mut remaining: Vec<ZPoly> = lifted;
    let mut f_cur = f.clone();
    let mut out: Vec<ZPoly> = Vec::new();
    let mut size = 1usize;
    while 2 * size <= remaining.len() {
        let mut found = false;
        for combo in combinations(remaining.len(), size) {
            let mut prod = vec![BigInt::one()];
            for &i in &combo {
                prod = zmod(&zmul(&prod, &remaining[i]), &target);
            }
            let candidate = zcenter(&prod, &target);
            if let Some(quot) = zdiv_exact_monic(&f_cur, &candidate) {
                out.push(candidate);
                f_cur = quot;
                let keep: Vec<ZPoly> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                remaining = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if f_cur.len() > 1 {
        out.push(f_cur);
    }
    Ok(out)
}

/// All size-k index subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(combo.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}
