//! Algebraic number fields Q[t]/(Phi), their elements, and polynomials over
//! them.
//!
//! Fields are always flattened: a tower K[c] is immediately re-expressed over
//! a single primitive element, so every element everywhere is a coordinate
//! vector in the power basis of one generator. The rational field itself is
//! represented with the degree-1 minimal polynomial Z - 1.
//!
//! Factorization over a field is Trager's method: shift by a multiple of the
//! generator, take the norm by a resultant, factor the norm over Q, and lift
//! the pieces back by gcds.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::rat::{divisors, pretty, rint, Rat};
use crate::zassenhaus::factor_over_q;

// ---------------------------------------------------------------------------
// NumberField
// ---------------------------------------------------------------------------

/// A number field Q[theta]/(Phi) with Phi monic irreducible.
#[derive(Debug)]
pub struct NumberField {
    minimal_poly: QPoly,
    degree: usize,
    label: String,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minimal_poly == other.minimal_poly
    }
}
impl Eq for NumberField {}

impl NumberField {
    /// The rational field, represented by Z - 1.
    pub fn rationals() -> Arc<NumberField> {
        Arc::new(NumberField {
            minimal_poly: QPoly::from_ints(&[-1, 1]),
            degree: 1,
            label: "t".into(),
        })
    }

    /// Validating constructor: requires a monic squarefree polynomial that is
    /// irreducible over Q.
    pub fn new(minimal_poly: QPoly, label: impl Into<String>) -> Result<Arc<NumberField>> {
        let degree = minimal_poly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Unsupported("minimal polynomial must have degree >= 1".into()))?;
        if !minimal_poly.is_monic() {
            return Err(Error::Unsupported("minimal polynomial must be monic".into()));
        }
        if !minimal_poly.is_squarefree() {
            return Err(Error::NotIrreducible);
        }
        if degree > 1 {
            let f = factor_over_q(&minimal_poly)?;
            if f.factors.len() != 1 || f.factors[0].1 != 1 {
                return Err(Error::NotIrreducible);
            }
        }
        Ok(Arc::new(NumberField {
            minimal_poly,
            degree,
            label: label.into(),
        }))
    }

    /// Constructor for polynomials already certified irreducible.
    fn new_unchecked(minimal_poly: QPoly, label: impl Into<String>) -> Arc<NumberField> {
        let degree = minimal_poly.degree().expect("nonzero minimal polynomial");
        Arc::new(NumberField {
            minimal_poly,
            degree,
            label: label.into(),
        })
    }

    pub fn minimal_poly(&self) -> &QPoly {
        &self.minimal_poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Degree-1 fields behave exactly like Q.
    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    fn reduce(&self, mut coords: Vec<Rat>) -> Vec<Rat> {
        // Remainder modulo the monic minimal polynomial.
        while coords.len() > self.degree {
            let k = coords.len() - 1;
            let c = coords.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            for (j, m) in self.minimal_poly.coeffs()[..self.degree].iter().enumerate() {
                let t = m * &c;
                coords[k - self.degree + j] -= t;
            }
        }
        coords.resize(self.degree, Rat::zero());
        coords
    }
}

/// Same field test used by cross-value operations.
pub fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

// ---------------------------------------------------------------------------
// AlgNum
// ---------------------------------------------------------------------------

/// An element of a number field in the power basis 1, t, ..., t^(deg-1).
#[derive(Clone)]
pub struct AlgNum {
    field: Arc<NumberField>,
    coords: Vec<Rat>,
}

impl PartialEq for AlgNum {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.coords == other.coords
    }
}
impl Eq for AlgNum {}

impl AlgNum {
    pub fn new(field: Arc<NumberField>, coords: Vec<Rat>) -> AlgNum {
        let coords = field.reduce(coords);
        AlgNum { field, coords }
    }

    pub fn zero(field: Arc<NumberField>) -> AlgNum {
        AlgNum {
            coords: vec![Rat::zero(); field.degree()],
            field,
        }
    }

    pub fn one(field: Arc<NumberField>) -> AlgNum {
        AlgNum::from_rat(field, Rat::one())
    }

    pub fn from_rat(field: Arc<NumberField>, r: Rat) -> AlgNum {
        let mut coords = vec![Rat::zero(); field.degree()];
        coords[0] = r;
        AlgNum { field, coords }
    }

    /// The generator theta as a field element. For a degree-1 field this is
    /// the rational root of the minimal polynomial.
    pub fn generator(field: Arc<NumberField>) -> AlgNum {
        if field.degree() == 1 {
            let r = -field.minimal_poly().coeff(0);
            return AlgNum::from_rat(field, r);
        }
        let mut coords = vec![Rat::zero(); field.degree()];
        coords[1] = Rat::one();
        AlgNum { field, coords }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// Rational value when the element lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        self.coords[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coords[0].clone())
    }

    fn assert_same_field(&self, other: &AlgNum) {
        assert!(
            same_field(&self.field, &other.field),
            "algebraic numbers from different fields"
        );
    }

    pub fn add(&self, other: &AlgNum) -> AlgNum {
        self.assert_same_field(other);
        AlgNum {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &AlgNum) -> AlgNum {
        self.assert_same_field(other);
        AlgNum {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> AlgNum {
        AlgNum {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &AlgNum) -> AlgNum {
        self.assert_same_field(other);
        let n = self.field.degree();
        let mut raw = vec![Rat::zero(); 2 * n];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        AlgNum {
            coords: self.field.reduce(raw),
            field: self.field.clone(),
        }
    }

    pub fn scale(&self, r: &Rat) -> AlgNum {
        AlgNum {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| a * r).collect(),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> AlgNum {
        assert!(!self.is_zero(), "inverse of zero");
        let a = QPoly::from_coeffs(self.coords.clone());
        let (g, u, _) = a.extended_gcd(self.field.minimal_poly());
        assert!(g.is_one(), "element not invertible modulo the minimal polynomial");
        AlgNum {
            coords: self.field.reduce(u.coeffs().to_vec()),
            field: self.field.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> AlgNum {
        let mut acc = AlgNum::one(self.field.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Coordinates as a rational polynomial in the generator.
    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_coeffs(self.coords.clone())
    }

    /// Sort key used for canonical orderings.
    pub fn sort_key(&self) -> Vec<Rat> {
        self.coords.clone()
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rat() {
            return write!(f, "{}", pretty(&r));
        }
        let label = self.field.label();
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show = !mag.is_one() || k == 0;
            if show {
                write!(f, "{}", pretty(&mag))?;
            }
            if k > 0 {
                if show {
                    write!(f, "*")?;
                }
                write!(f, "{}", label)?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Embeddings between flattened fields
// ---------------------------------------------------------------------------

/// A field homomorphism determined by the image of the source generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    from: Arc<NumberField>,
    gen_image: AlgNum,
}

impl Embedding {
    pub fn new(from: Arc<NumberField>, gen_image: AlgNum) -> Embedding {
        debug_assert!(
            {
                let phi = KPoly::lift_qpoly(gen_image.field().clone(), from.minimal_poly());
                phi.eval(&gen_image).is_zero()
            },
            "generator image must satisfy the source minimal polynomial"
        );
        Embedding { from, gen_image }
    }

    pub fn identity(field: Arc<NumberField>) -> Embedding {
        let gen = AlgNum::generator(field.clone());
        Embedding { from: field, gen_image: gen }
    }

    pub fn target(&self) -> &Arc<NumberField> {
        self.gen_image.field()
    }

    pub fn map(&self, a: &AlgNum) -> AlgNum {
        assert!(same_field(a.field(), &self.from), "embedding source mismatch");
        let target = self.gen_image.field().clone();
        let mut acc = AlgNum::zero(target.clone());
        for c in a.coords().iter().rev() {
            acc = acc.mul(&self.gen_image);
            acc = acc.add(&AlgNum::from_rat(target.clone(), c.clone()));
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// KPoly
// ---------------------------------------------------------------------------

/// Dense univariate polynomial with coefficients in a number field.
#[derive(Clone, PartialEq, Eq)]
pub struct KPoly {
    field: Arc<NumberField>,
    coeffs: Vec<AlgNum>,
}

impl KPoly {
    pub fn zero(field: Arc<NumberField>) -> KPoly {
        KPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Arc<NumberField>) -> KPoly {
        let one = AlgNum::one(field.clone());
        KPoly { field, coeffs: vec![one] }
    }

    pub fn var(field: Arc<NumberField>) -> KPoly {
        let coeffs = vec![AlgNum::zero(field.clone()), AlgNum::one(field.clone())];
        KPoly { field, coeffs }
    }

    pub fn constant(c: AlgNum) -> KPoly {
        let field = c.field().clone();
        KPoly::from_coeffs(field, vec![c])
    }

    pub fn from_coeffs(field: Arc<NumberField>, coeffs: Vec<AlgNum>) -> KPoly {
        for c in &coeffs {
            assert!(same_field(c.field(), &field), "coefficient from a different field");
        }
        let mut p = KPoly { field, coeffs };
        p.trim();
        p
    }

    /// Lift a rational polynomial into K[X].
    pub fn lift_qpoly(field: Arc<NumberField>, p: &QPoly) -> KPoly {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| AlgNum::from_rat(field.clone(), c.clone()))
            .collect();
        KPoly { field, coeffs }
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> AlgNum {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| AlgNum::zero(self.field.clone()))
    }

    pub fn coeffs(&self) -> &[AlgNum] {
        &self.coeffs
    }

    pub fn leading(&self) -> AlgNum {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| AlgNum::zero(self.field.clone()))
    }

    pub fn is_monic(&self) -> bool {
        matches!(self.coeffs.last(), Some(c) if c.is_one())
    }

    pub fn add(&self, other: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        KPoly::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect();
        KPoly::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> KPoly {
        KPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &KPoly) -> KPoly {
        if self.is_zero() || other.is_zero() {
            return KPoly::zero(self.field.clone());
        }
        let mut coeffs =
            vec![AlgNum::zero(self.field.clone()); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        KPoly::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn scale(&self, c: &AlgNum) -> KPoly {
        if c.is_zero() {
            return KPoly::zero(self.field.clone());
        }
        KPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn monic(&self) -> KPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv())
    }

    pub fn derivative(&self) -> KPoly {
        if self.coeffs.len() <= 1 {
            return KPoly::zero(self.field.clone());
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&rint(i as i64 + 1)))
            .collect();
        KPoly::from_coeffs(self.field.clone(), coeffs)
    }

    pub fn eval(&self, x: &AlgNum) -> AlgNum {
        let mut acc = AlgNum::zero(self.field.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn div_rem(&self, div: &KPoly) -> (KPoly, KPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lcinv = div.leading().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (KPoly::zero(self.field.clone()), self.clone());
        }
        let mut quot = vec![AlgNum::zero(self.field.clone()); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].mul(&lcinv);
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c.clone();
            for (j, dc) in div.coeffs.iter().enumerate() {
                let t = dc.mul(&c);
                rem[k - dd + j] = rem[k - dd + j].sub(&t);
            }
        }
        (
            KPoly::from_coeffs(self.field.clone(), quot),
            KPoly::from_coeffs(self.field.clone(), rem),
        )
    }

    pub fn div_exact(&self, div: &KPoly) -> Option<KPoly> {
        let (q, r) = self.div_rem(div);
        r.is_zero().then_some(q)
    }

    /// Monic gcd over the field.
    pub fn gcd(&self, other: &KPoly) -> KPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.deg0() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).deg0() == 0
    }

    /// Yun decomposition over the field, monic squarefree parts.
    pub fn squarefree_decomposition(&self) -> Vec<(KPoly, u32)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.deg0() == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut out = Vec::new();
        let mut c = f.div_exact(&a0).expect("gcd divides");
        let mut d = df.div_exact(&a0).expect("gcd divides").sub(&c.derivative());
        let mut i = 1u32;
        while c.deg0() > 0 {
            let p = c.gcd(&d);
            if p.deg0() > 0 {
                out.push((p.clone(), i));
            }
            c = c.div_exact(&p).expect("gcd divides");
            d = d.div_exact(&p).expect("gcd divides").sub(&c.derivative());
            i += 1;
        }
        out
    }

    /// Substitute X -> a X + b.
    pub fn compose_linear(&self, a: &AlgNum, b: &AlgNum) -> KPoly {
        let lin = KPoly::from_coeffs(self.field.clone(), vec![b.clone(), a.clone()]);
        let mut acc = KPoly::zero(self.field.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&KPoly::constant(c.clone()));
        }
        acc
    }

    /// Map coefficients through a field embedding.
    pub fn map_through(&self, emb: &Embedding) -> KPoly {
        let coeffs: Vec<AlgNum> = self.coeffs.iter().map(|c| emb.map(c)).collect();
        KPoly::from_coeffs(emb.target().clone(), coeffs)
    }

    /// Reinterpret over Q when the field has degree 1.
    pub fn to_qpoly(&self) -> Option<QPoly> {
        let coeffs: Option<Vec<Rat>> = self.coeffs.iter().map(|c| c.as_rat()).collect();
        coeffs.map(QPoly::from_coeffs)
    }

    /// Norm from K[X] down to Q[X]: the resultant in the generator variable,
    /// computed by interpolation in X.
    pub fn norm(&self) -> QPoly {
        let m = self.field.degree();
        if m == 1 {
            return self.to_qpoly().expect("degree-1 field is rational");
        }
        // Lift to Q[Z][X] as a vector over Z-powers of rational polynomials in X.
        let mut by_gen_power: Vec<Vec<Rat>> = vec![vec![Rat::zero(); self.coeffs.len()]; m];
        for (xdeg, c) in self.coeffs.iter().enumerate() {
            for (t, q) in c.coords().iter().enumerate() {
                by_gen_power[t][xdeg] = q.clone();
            }
        }
        let zpolys: Vec<QPoly> = by_gen_power.into_iter().map(QPoly::from_coeffs).collect();
        let phi = self.field.minimal_poly();
        let bound = m * self.deg0();
        let mut points = Vec::with_capacity(bound + 1);
        let mut t = 0i64;
        while points.len() <= bound {
            let x = rint(t);
            // Specialize X = x: a rational polynomial in Z.
            let spec = QPoly::from_coeffs(zpolys.iter().map(|q| q.eval(&x)).collect());
            points.push((x, phi.resultant(&spec)));
            t = if t > 0 { -t } else { -t + 1 };
        }
        QPoly::interpolate(&points)
    }
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let needs_parens = cs.contains(' ') || cs.contains('+') || (k > 0 && cs.contains('*'));
            if k == 0 {
                write!(f, "{}", cs)?;
                continue;
            }
            if !c.is_one() {
                if needs_parens {
                    write!(f, "({})*", cs)?;
                } else {
                    write!(f, "{}*", cs)?;
                }
            }
            write!(f, "C")?;
            if k > 1 {
                write!(f, "^{}", k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Factorization over a number field (Trager)
// ---------------------------------------------------------------------------

/// Factorization over a field: input = unit * prod factors[i].0 ^ factors[i].1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KFactorization {
    pub unit: AlgNum,
    pub factors: Vec<(KPoly, u32)>,
}

impl KFactorization {
    pub fn expand(&self) -> KPoly {
        let mut acc = KPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

/// Factor a nonzero polynomial into monic irreducible factors over its field.
pub fn factor_over_field(p: &KPoly) -> Result<KFactorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = p.field().clone();
    let unit = p.leading();
    let monic = p.monic();
    let mut factors: Vec<(KPoly, u32)> = Vec::new();

    if field.is_rational() {
        let q = monic.to_qpoly().expect("degree-1 field is rational");
        let f = factor_over_q(&q)?;
        for (g, mult) in f.factors {
            factors.push((KPoly::lift_qpoly(field.clone(), &g), mult));
        }
    } else if monic.deg0() > 0 {
        for (part, mult) in monic.squarefree_decomposition() {
            for irr in trager_squarefree(&part)? {
                factors.push((irr, mult));
            }
        }
    }

    factors.sort_by(|a, b| {
        let ka: Vec<Vec<Rat>> = a.0.coeffs().iter().map(|c| c.sort_key()).collect();
        let kb: Vec<Vec<Rat>> = b.0.coeffs().iter().map(|c| c.sort_key()).collect();
        (a.0.deg0(), ka, a.1).cmp(&(b.0.deg0(), kb, b.1))
    });
    let out = KFactorization { unit, factors };
    debug_assert_eq!(out.expand(), *p, "factorization must reconstruct its input");
    Ok(out)
}

/// Trager's algorithm for a monic squarefree polynomial over a proper extension.
fn trager_squarefree(u: &KPoly) -> Result<Vec<KPoly>> {
    debug_assert!(u.is_monic() && !u.field().is_rational());
    if u.deg0() == 1 {
        return Ok(vec![u.clone()]);
    }
    let field = u.field().clone();
    let gen = AlgNum::generator(field.clone());
    let m = field.degree();
    let d = m * u.deg0();
    let cap = d * (d.saturating_sub(1)) / 2 + 2;
    for s in 0..cap as i64 {
        // g(X) = u(X - s*theta)
        let shift = gen.scale(&rint(-s));
        let g = u.compose_linear(&AlgNum::one(field.clone()), &shift);
        let norm = g.norm();
        if !norm.is_squarefree() {
            continue;
        }
        let nf = factor_over_q(&norm)?;
        let mut out = Vec::with_capacity(nf.factors.len());
        for (nj, mult) in nf.factors {
            debug_assert_eq!(mult, 1, "squarefree norm cannot have repeated factors");
            // Shift the rational factor back: Nj(X + s*theta), then gcd with u.
            let lifted = KPoly::lift_qpoly(field.clone(), &nj)
                .compose_linear(&AlgNum::one(field.clone()), &gen.scale(&rint(s)));
            let f = u.gcd(&lifted);
            if f.deg0() > 0 {
                out.push(f);
            }
        }
        let product = out.iter().fold(KPoly::one(field.clone()), |acc, f| acc.mul(f));
        if product != u.monic() {
            return Err(Error::Internal(
                "norm factor lifting failed to reconstruct the input".into(),
            ));
        }
        return Ok(out);
    }
    Err(Error::Internal("no squarefree shift found in Trager loop".into()))
}

// ---------------------------------------------------------------------------
// Primitive elements
// ---------------------------------------------------------------------------

/// Result of adjoining a root of an irreducible polynomial to a field.
#[derive(Debug, Clone)]
pub struct PrimitiveExtension {
    /// Flattened field Q[theta_new]/(Phi_new).
    pub field: Arc<NumberField>,
    /// theta_new = theta_old + gamma * root.
    pub gamma: u32,
    /// Image of the old generator in the new field.
    pub embed_old: AlgNum,
    /// Image of the adjoined root in the new field.
    pub embed_root: AlgNum,
}

impl PrimitiveExtension {
    pub fn embedding(&self, from: Arc<NumberField>) -> Embedding {
        Embedding::new(from, self.embed_old.clone())
    }
}

/// Adjoin a root of `h` (monic irreducible over the field of `h`) and flatten
/// to a primitive extension of Q. The generator is theta + gamma*root with
/// the smallest gamma whose resultant-built candidate minimal polynomial is
/// squarefree.
pub fn primitive_element(h: &KPoly) -> Result<PrimitiveExtension> {
    let field = h.field().clone();
    if h.is_zero() || h.deg0() == 0 {
        return Err(Error::Unsupported("cannot adjoin a root of a constant".into()));
    }
    if !h.is_monic() {
        return Err(Error::Unsupported("polynomial must be monic".into()));
    }
    // Irreducibility over the base field is part of the contract.
    if h.deg0() > 1 {
        let f = factor_over_field(h)?;
        if f.factors.len() != 1 || f.factors[0].1 != 1 {
            return Err(Error::NotIrreducible);
        }
    }

    let n_h = h.deg0();
    let m = field.degree();

    // Degree-1 h: the root already lies in the field.
    if n_h == 1 {
        let root = h.coeff(0).neg();
        return Ok(PrimitiveExtension {
            field: field.clone(),
            gamma: 0,
            embed_old: AlgNum::generator(field),
            embed_root: root,
        });
    }

    // Rational base: h itself (read over Q) is the new minimal polynomial.
    if m == 1 {
        let hq = h.to_qpoly().expect("degree-1 field is rational");
        let new_field = NumberField::new_unchecked(hq, field.label().to_string());
        let old_value = AlgNum::generator(field).as_rat().expect("rational generator");
        return Ok(PrimitiveExtension {
            embed_old: AlgNum::from_rat(new_field.clone(), old_value),
            embed_root: AlgNum::generator(new_field.clone()),
            field: new_field,
            gamma: 0,
        });
    }

    let phi = field.minimal_poly().clone();
    let gen = AlgNum::generator(field.clone());
    let cap = (m * n_h) as u32;
    for gamma in 1..=cap {
        // g(W) = gamma^n_h * h((W - theta)/gamma), monic in W over the field.
        let ginv = rint(gamma as i64).recip();
        let a = AlgNum::from_rat(field.clone(), ginv.clone());
        let b = gen.scale(&ginv).neg();
        let mut scale = Rat::one();
        for _ in 0..n_h {
            scale *= rint(gamma as i64);
        }
        let candidate_src = h.compose_linear(&a, &b).scale(&AlgNum::from_rat(field.clone(), scale));
        debug_assert!(candidate_src.is_monic());
        let candidate = candidate_src.norm();
        if !candidate.is_squarefree() {
            continue;
        }
        debug_assert!(candidate.is_monic() && candidate.deg0() == m * n_h);
        // Squarefree + h irreducible makes the candidate irreducible; the
        // factor count is an inexpensive certificate at desk scale.
        let cert = factor_over_q(&candidate)?;
        if cert.factors.len() != 1 || cert.factors[0].1 != 1 {
            return Err(Error::Internal(
                "squarefree primitive candidate unexpectedly reducible".into(),
            ));
        }
        let new_field = NumberField::new_unchecked(candidate, field.label().to_string());
        let w = AlgNum::generator(new_field.clone());

        // Recover the root: the common zero of Phi(W - gamma*C) and the lift
        // of h with theta replaced by W - gamma*C.
        let neg_gamma = AlgNum::from_rat(new_field.clone(), rint(-(gamma as i64)));
        let theta_of_c = KPoly::from_coeffs(new_field.clone(), vec![w.clone(), neg_gamma]);
        let p1 = compose_qpoly_at(&phi, &theta_of_c);
        let mut p2 = KPoly::zero(new_field.clone());
        for (cdeg, coeff) in h.coeffs().iter().enumerate() {
            // coeff is a polynomial in theta; substitute theta = W - gamma*C.
            let mapped = compose_qpoly_at(&coeff.to_qpoly(), &theta_of_c);
            let xk = KPoly::var(new_field.clone());
            let mut mono = KPoly::one(new_field.clone());
            for _ in 0..cdeg {
                mono = mono.mul(&xk);
            }
            p2 = p2.add(&mapped.mul(&mono));
        }
        let g = p1.gcd(&p2);
        if g.deg0() != 1 {
            return Err(Error::Internal(
                "primitive element gcd is not linear despite squarefree candidate".into(),
            ));
        }
        let root = g.coeff(0).neg();
        let old = w.sub(&root.scale(&rint(gamma as i64)));

        let ext = PrimitiveExtension {
            field: new_field,
            gamma,
            embed_old: old,
            embed_root: root,
        };
        debug_assert!(verify_extension(&field, h, &ext));
        return Ok(ext);
    }
    Err(Error::Internal(format!(
        "no primitive gamma found within the cap {}",
        cap
    )))
}

/// Evaluate a rational polynomial at a KPoly argument.
fn compose_qpoly_at(p: &QPoly, x: &KPoly) -> KPoly {
    let field = x.field().clone();
    let mut acc = KPoly::zero(field.clone());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&KPoly::constant(AlgNum::from_rat(field.clone(), c.clone())));
    }
    acc
}

/// Check both embeddings: Phi(embed_old) = 0 and h^(embed)(embed_root) = 0.
pub fn verify_extension(old_field: &Arc<NumberField>, h: &KPoly, ext: &PrimitiveExtension) -> bool {
    let phi_at = compose_qpoly_at(
        old_field.minimal_poly(),
        &KPoly::constant(ext.embed_old.clone()),
    );
    if !phi_at.coeff(0).is_zero() {
        return false;
    }
    let emb = Embedding::new(old_field.clone(), ext.embed_old.clone());
    let h_mapped = h.map_through(&emb);
    h_mapped.eval(&ext.embed_root).is_zero()
}

// ---------------------------------------------------------------------------
// Rational roots of polynomials over a field
// ---------------------------------------------------------------------------

/// All rational roots of a nonzero polynomial over a number field.
///
/// A rational is a root iff it annihilates every coordinate polynomial, so
/// the candidates come from divisor pairs on the gcd of the coordinates.
pub fn rational_roots(p: &KPoly) -> Result<Vec<Rat>> {
    if p.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let m = p.field().degree();
    let mut g = QPoly::zero();
    for t in 0..m {
        let coord = QPoly::from_coeffs(p.coeffs().iter().map(|c| c.coords()[t].clone()).collect());
        g = g.gcd(&coord);
    }
    debug_assert!(!g.is_zero());
    let mut roots = Vec::new();
    if g.deg0() == 0 {
        return Ok(roots);
    }
    let val = g
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero gcd");
    if val > 0 {
        roots.push(Rat::zero());
    }
    let core = QPoly::from_coeffs(g.coeffs()[val..].to_vec());
    if core.deg0() == 0 {
        return Ok(roots);
    }
    // Clear denominators to a primitive integer polynomial.
    let mut den = num_bigint::BigInt::one();
    for c in core.coeffs() {
        den = num_integer::Integer::lcm(&den, c.denom());
    }
    let ints: Vec<num_bigint::BigInt> = core
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from(den.clone())).to_integer())
        .collect();
    let trailing = ints[0].magnitude().clone();
    let leading = ints[ints.len() - 1].magnitude().clone();
    for u in divisors(&trailing) {
        for v in divisors(&leading) {
            for sign in [1i64, -1] {
                let cand = Rat::new(
                    num_bigint::BigInt::from(sign) * num_bigint::BigInt::from(u.clone()),
                    num_bigint::BigInt::from(v.clone()),
                );
                if core.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}
