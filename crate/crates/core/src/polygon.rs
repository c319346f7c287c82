//! Exact Newton polygon geometry for differential polynomials.
//!
//! Every term f x^i y0^a0...yn^an marks the point
//! (i - a1 - 2 a2 - ... - n an, a0 + ... + an). The polygon is the convex
//! hull of the marked points together with the ray towards (+inf, 0); the
//! faces reachable by minimizing a u + b v with a > 0 form a chain of
//! strictly increasing inclination mu = b/a. Strict mode keeps the b >= 0
//! restriction; relaxed mode admits negative inclinations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::numfield::{AlgNum, KPoly};
use crate::rat::{factorial, falling, pretty, Rat};

/// A marked point (u, v) with rational abscissa and integer ordinate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct NewtonPoint {
    pub u: Rat,
    pub v: u32,
}

impl NewtonPoint {
    pub fn new(u: Rat, v: u32) -> Self {
        NewtonPoint { u, v }
    }

    /// Translate by (du, dv); dv may be negative.
    pub fn translate(&self, du: &Rat, dv: i64) -> NewtonPoint {
        NewtonPoint {
            u: &self.u + du,
            v: (self.v as i64 + dv) as u32,
        }
    }
}

impl fmt::Display for NewtonPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", pretty(&self.u), self.v)
    }
}

/// A marked point plus the indices of the terms that land on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPoint {
    pub point: NewtonPoint,
    pub contributors: Vec<usize>,
}

/// Inclination value, with sentinels for the unbounded direction ranges.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Inclination {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl Inclination {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Inclination::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Inclination::NegInf => false,
            Inclination::Finite(r) => r.is_positive(),
            Inclination::PosInf => true,
        }
    }
}

impl From<Rat> for Inclination {
    fn from(r: Rat) -> Self {
        Inclination::Finite(r)
    }
}

impl fmt::Display for Inclination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inclination::NegInf => write!(f, "-inf"),
            Inclination::Finite(r) => write!(f, "{}", pretty(r)),
            Inclination::PosInf => write!(f, "+inf"),
        }
    }
}

/// An edge of the polygon: two vertices and the unique coprime direction
/// (a, b) with a > 0 supporting it; mu = b/a is the inclination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Endpoint with the larger ordinate.
    pub upper: NewtonPoint,
    /// Endpoint with the smaller ordinate.
    pub lower: NewtonPoint,
    pub a: u64,
    pub b: i64,
    pub mu: Rat,
}

/// A chain vertex with the inclinations of its adjacent faces; sentinels
/// mark the absence of a face on that side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexInfo {
    pub point: NewtonPoint,
    /// Inclination of the face above (towards larger v), or -inf.
    pub mu_low: Inclination,
    /// Inclination of the face below (towards smaller v), or +inf.
    pub mu_high: Inclination,
}

/// The computed polygon: marked points, admissible vertices and edges.
#[derive(Clone, Debug)]
pub struct PolygonView {
    pub points: Vec<MarkedPoint>,
    pub vertices: Vec<VertexInfo>,
    pub edges: Vec<Edge>,
    pub strict: bool,
}

impl PartialEq for PolygonView {
    /// Shape equality: vertices, edges and adjacent inclinations; the marked
    /// point sets may differ (e.g. a sum polygon built from row minima).
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}
impl Eq for PolygonView {}

/// Marked points of a nonzero differential polynomial, sorted, with term
/// back-references.
pub fn mark_points(f: &DiffPoly) -> Result<Vec<MarkedPoint>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out: Vec<MarkedPoint> = Vec::new();
    for (idx, t) in f.terms().iter().enumerate() {
        let p = point_of_term(&t.xexp, &t.alpha);
        match out.iter_mut().find(|m| m.point == p) {
            Some(m) => m.contributors.push(idx),
            None => out.push(MarkedPoint {
                point: p,
                contributors: vec![idx],
            }),
        }
    }
    out.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(out)
}

/// P_{i, alpha} = (i - sum j*alpha_j, |alpha|).
pub fn point_of_term(xexp: &Rat, alpha: &[u32]) -> NewtonPoint {
    let mut shift = BigInt::zero();
    let mut v = 0u32;
    for (j, &aj) in alpha.iter().enumerate() {
        shift += BigInt::from(j as u64) * BigInt::from(aj);
        v += aj;
    }
    NewtonPoint {
        u: xexp - Rat::from(shift),
        v,
    }
}

/// N(F, a, b): the argmin set of a*u + b*v over the marked points.
pub fn support(f: &DiffPoly, a: i64, b: i64) -> Result<Vec<NewtonPoint>> {
    if a == 0 && b == 0 {
        return Err(Error::Unsupported("direction (0, 0) is not allowed".into()));
    }
    let marked = mark_points(f)?;
    Ok(argmin_points(marked.iter().map(|m| m.point.clone()), a, b))
}

fn direction_key(p: &NewtonPoint, a: i64, b: i64) -> Rat {
    Rat::from(BigInt::from(a)) * &p.u + Rat::from(BigInt::from(b) * BigInt::from(p.v))
}

fn argmin_points(points: impl Iterator<Item = NewtonPoint>, a: i64, b: i64) -> Vec<NewtonPoint> {
    let mut best: Option<Rat> = None;
    let mut out: Vec<NewtonPoint> = Vec::new();
    for p in points {
        let key = direction_key(&p, a, b);
        match &best {
            Some(m) if &key > m => {}
            Some(m) if &key == m => out.push(p),
            _ => {
                best = Some(key);
                out = vec![p];
            }
        }
    }
    out.sort();
    out
}

/// Term indices of F landing in N(F, a, b).
pub fn support_term_indices(f: &DiffPoly, a: i64, b: i64) -> Vec<usize> {
    let mut best: Option<Rat> = None;
    let mut out: Vec<usize> = Vec::new();
    for (idx, t) in f.terms().iter().enumerate() {
        let key = direction_key(&point_of_term(&t.xexp, &t.alpha), a, b);
        match &best {
            Some(m) if &key > m => {}
            Some(m) if &key == m => out.push(idx),
            _ => {
                best = Some(key);
                out = vec![idx];
            }
        }
    }
    out
}

/// Build the admissible polygon chain of a nonzero polynomial.
pub fn build_polygon(f: &DiffPoly, strict_b: bool) -> Result<PolygonView> {
    let marked = mark_points(f)?;
    Ok(build_view_from_points(marked, strict_b))
}

/// Polygon of F + G computed from the per-degree row minima of the sum,
/// which reproduces `build_polygon(F + G)`.
pub fn sum_polygon(f: &DiffPoly, g: &DiffPoly, strict_b: bool) -> Result<PolygonView> {
    let sum = f.add(g)?;
    if sum.is_zero() {
        return Err(Error::Unsupported("zero sum has no polygon".into()));
    }
    let marked = mark_points(&sum)?;
    // Row minima: for each ordinate s the leftmost marked point.
    let mut minima: Vec<MarkedPoint> = Vec::new();
    for m in marked {
        match minima.iter_mut().find(|x| x.point.v == m.point.v) {
            Some(x) => {
                if m.point.u < x.point.u {
                    *x = m;
                }
            }
            None => minima.push(m),
        }
    }
    minima.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(build_view_from_points(minima, strict_b))
}

fn build_view_from_points(marked: Vec<MarkedPoint>, strict_b: bool) -> PolygonView {
    let points: Vec<NewtonPoint> = {
        let mut ps: Vec<NewtonPoint> = marked.iter().map(|m| m.point.clone()).collect();
        ps.sort();
        ps.dedup();
        ps
    };

    // Gift-wrap the chain of faces supported by (1, mu) as mu increases.
    // Start at the highest row, leftmost on ties: the mu -> -inf winner.
    let start = points
        .iter()
        .max_by(|p, q| (p.v, &q.u).cmp(&(q.v, &p.u)))
        .expect("nonempty point set")
        .clone();
    let mut chain: Vec<NewtonPoint> = vec![start.clone()];
    let mut faces: Vec<(NewtonPoint, NewtonPoint, Rat)> = Vec::new();
    let mut current = start;
    loop {
        let below: Vec<&NewtonPoint> = points.iter().filter(|p| p.v < current.v).collect();
        if below.is_empty() {
            break;
        }
        // Tie inclination towards q: mu = (u_q - u_cur) / (v_cur - v_q).
        let mut best_mu: Option<Rat> = None;
        for q in &below {
            let mu =
                (&q.u - &current.u) / Rat::from(BigInt::from(current.v as i64 - q.v as i64));
            if best_mu.as_ref().is_none_or(|m| &mu < m) {
                best_mu = Some(mu);
            }
        }
        let mu = best_mu.expect("below set is nonempty");
        let next = below
            .iter()
            .filter(|q| {
                (&q.u - &current.u)
                    == &mu * Rat::from(BigInt::from(current.v as i64 - q.v as i64))
            })
            .min_by_key(|q| q.v)
            .map(|q| (*q).clone())
            .expect("a tied point realizes the minimum");
        faces.push((current.clone(), next.clone(), mu));
        chain.push(next.clone());
        current = next;
    }
    debug_assert!(
        faces.windows(2).all(|w| w[0].2 < w[1].2),
        "face inclinations must strictly increase"
    );

    let mut edges = Vec::new();
    for (upper, lower, mu) in &faces {
        if strict_b && mu.is_negative() {
            continue;
        }
        let a = u64::try_from(mu.denom().magnitude().clone()).expect("edge direction overflow");
        let b = i64::try_from(mu.numer().clone()).expect("edge direction overflow");
        edges.push(Edge {
            upper: upper.clone(),
            lower: lower.clone(),
            a,
            b,
            mu: mu.clone(),
        });
    }

    let mut vertices = Vec::new();
    for (i, p) in chain.iter().enumerate() {
        let mu_low = if i == 0 {
            Inclination::NegInf
        } else {
            Inclination::Finite(faces[i - 1].2.clone())
        };
        let mu_high = if i == faces.len() {
            Inclination::PosInf
        } else {
            Inclination::Finite(faces[i].2.clone())
        };
        // Strict admissibility: some direction mu >= 0 supports p uniquely.
        if strict_b && !mu_high.is_positive() {
            continue;
        }
        vertices.push(VertexInfo {
            point: p.clone(),
            mu_low,
            mu_high,
        });
    }

    PolygonView {
        points: marked,
        vertices,
        edges,
        strict: strict_b,
    }
}

// ---------------------------------------------------------------------------
// Characteristic and indicial polynomials
// ---------------------------------------------------------------------------

/// H_{(F,e)}(C) = sum over N(F, a(e), b(e)) of f C^|alpha| (mu)_1^a1...(mu)_n^an.
pub fn characteristic_poly(f: &DiffPoly, e: &Edge) -> KPoly {
    characteristic_poly_dir(f, e.a as i64, e.b, &e.mu)
}

/// Characteristic polynomial for an arbitrary direction.
pub fn characteristic_poly_dir(f: &DiffPoly, a: i64, b: i64, mu: &Rat) -> KPoly {
    let field = f.field().clone();
    let mut coeffs = vec![AlgNum::zero(field.clone()); f.ydeg() as usize + 1];
    for idx in support_term_indices(f, a, b) {
        let t = &f.terms()[idx];
        let mut w = Rat::one();
        for (j, &aj) in t.alpha.iter().enumerate().skip(1) {
            for _ in 0..aj {
                w *= falling(mu, j as u32);
            }
        }
        let deg = t.ydeg() as usize;
        coeffs[deg] = coeffs[deg].add(&t.coeff.scale(&w));
    }
    KPoly::from_coeffs(field, coeffs)
}

/// The falling-factorial polynomial (X)_k = X (X-1) ... (X-k+1) over a field.
fn falling_poly(f: &DiffPoly, k: u32) -> KPoly {
    let field = f.field().clone();
    let mut acc = KPoly::one(field.clone());
    for t in 0..k {
        let lin = KPoly::from_coeffs(
            field.clone(),
            vec![
                AlgNum::from_rat(field.clone(), -crate::rat::rint(t as i64)),
                AlgNum::one(field.clone()),
            ],
        );
        acc = acc.mul(&lin);
    }
    acc
}

/// h_{(F,p)}(mu) = sum over terms at p of f (mu)_1^a1 ... (mu)_n^an, with mu
/// an indeterminate. May be identically zero.
pub fn indicial_poly(f: &DiffPoly, p: &NewtonPoint) -> KPoly {
    let field = f.field().clone();
    let mut acc = KPoly::zero(field.clone());
    for t in f.terms() {
        if point_of_term(&t.xexp, &t.alpha) != *p {
            continue;
        }
        let mut prod = KPoly::constant(t.coeff.clone());
        for (j, &aj) in t.alpha.iter().enumerate().skip(1) {
            let fp = falling_poly(f, j as u32);
            for _ in 0..aj {
                prod = prod.mul(&fp);
            }
        }
        acc = acc.add(&prod);
    }
    acc
}

/// True when every term of F has alpha_j >= k, which makes the marked-point
/// set of the k-th yj-derivative an exact translation of P(F) by (kj, -k).
pub fn translation_condition(f: &DiffPoly, j: usize, k: u32) -> bool {
    !f.is_zero()
        && f.terms()
            .iter()
            .all(|t| t.alpha.get(j).copied().unwrap_or(0) >= k)
}

/// Formal characteristic polynomial of a mixed partial derivative, built on
/// the same support N(F, a, b) translated termwise:
/// sum over N of f prod_j (alpha_j)_{k_j} C^(|alpha|-|k|) prod_j (mu)_j^(alpha_j-k_j).
pub fn formal_derivative_char_poly(
    f: &DiffPoly,
    a: i64,
    b: i64,
    mu: &Rat,
    composition: &[u32],
) -> KPoly {
    let field = f.field().clone();
    let total: u32 = composition.iter().sum();
    let mut coeffs = vec![AlgNum::zero(field.clone()); f.ydeg() as usize + 1];
    for idx in support_term_indices(f, a, b) {
        let t = &f.terms()[idx];
        if t.ydeg() < total {
            continue;
        }
        let mut w = Rat::one();
        let mut dead = false;
        for (j, &aj) in t.alpha.iter().enumerate() {
            let kj = composition.get(j).copied().unwrap_or(0);
            if kj > aj {
                dead = true;
                break;
            }
            w *= falling(&Rat::from(BigInt::from(aj)), kj);
            if j >= 1 {
                for _ in 0..(aj - kj) {
                    w *= falling(mu, j as u32);
                }
            }
        }
        if dead || w.is_zero() {
            continue;
        }
        let deg = (t.ydeg() - total) as usize;
        coeffs[deg] = coeffs[deg].add(&t.coeff.scale(&w));
    }
    KPoly::from_coeffs(field, coeffs)
}

/// Characteristic polynomial of d^k F / d yj^k on the edge translated by
/// (kj, -k). Uses the closed form when the translation condition holds,
/// otherwise computes directly on the derivative.
pub fn derivative_char_poly(f: &DiffPoly, j: usize, k: u32, e: &Edge) -> KPoly {
    if k == 0 {
        return characteristic_poly(f, e);
    }
    if translation_condition(f, j, k) {
        let mut composition = vec![0u32; f.order_n() + 1];
        composition[j] = k;
        return formal_derivative_char_poly(f, e.a as i64, e.b, &e.mu, &composition);
    }
    let d = f.partial_derivative(j, k);
    if d.is_zero() {
        return KPoly::zero(f.field().clone());
    }
    characteristic_poly_dir(&d, e.a as i64, e.b, &e.mu)
}

/// Indicial polynomial of d^k F / d yj^k at the translate of `p` by (kj, -k).
/// Under the translation condition this is evaluated in closed form on the
/// terms of F at p; otherwise it is computed directly on the derivative.
pub fn derivative_indicial_poly(f: &DiffPoly, j: usize, k: u32, p: &NewtonPoint) -> KPoly {
    if k == 0 {
        return indicial_poly(f, p);
    }
    if translation_condition(f, j, k) {
        let field = f.field().clone();
        let mut acc = KPoly::zero(field.clone());
        for t in f.terms() {
            if point_of_term(&t.xexp, &t.alpha) != *p {
                continue;
            }
            let fall = falling(&Rat::from(BigInt::from(t.alpha[j])), k);
            let mut prod = KPoly::constant(t.coeff.scale(&fall));
            for (m, &am) in t.alpha.iter().enumerate().skip(1) {
                let reduced = if m == j { am - k } else { am };
                let fp = falling_poly(f, m as u32);
                for _ in 0..reduced {
                    prod = prod.mul(&fp);
                }
            }
            acc = acc.add(&prod);
        }
        return acc;
    }
    let translated = p.translate(&Rat::from(BigInt::from((k as u64) * (j as u64))), -(k as i64));
    let d = f.partial_derivative(j, k);
    if d.is_zero() {
        return KPoly::zero(f.field().clone());
    }
    indicial_poly(&d, &translated)
}

/// q_s(c, mu_e): sum over all compositions (k_0,...,k_n) of s of
/// H_{(d^s F / dy^k, e)}(c) / (k_0! ... k_n!), every H built from the same
/// translated support.
pub fn q_s_coefficient(f: &DiffPoly, e: &Edge, c: &AlgNum, s: u32) -> AlgNum {
    let field = f.field().clone();
    let mut acc = AlgNum::zero(field);
    let n = f.order_n();
    let mut composition = vec![0u32; n + 1];
    q_s_rec(f, e, c, s, 0, &mut composition, &mut acc);
    acc
}

fn q_s_rec(
    f: &DiffPoly,
    e: &Edge,
    c: &AlgNum,
    remaining: u32,
    pos: usize,
    composition: &mut Vec<u32>,
    acc: &mut AlgNum,
) {
    let n = f.order_n();
    if pos == n {
        composition[pos] = remaining;
        let h = formal_derivative_char_poly(f, e.a as i64, e.b, &e.mu, composition);
        let mut inv_fact = Rat::one();
        for &kj in composition.iter() {
            inv_fact /= factorial(kj);
        }
        let val = h.eval(c).scale(&inv_fact);
        *acc = acc.add(&val);
        composition[pos] = 0;
        return;
    }
    for kj in 0..=remaining {
        composition[pos] = kj;
        q_s_rec(f, e, c, remaining - kj, pos + 1, composition, acc);
    }
    composition[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::DiffMonomial;
    use crate::numfield::NumberField;
    use crate::rat::{rat, rint};
    use std::sync::Arc;

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn cr(v: i64) -> AlgNum {
        AlgNum::from_rat(q(), rint(v))
    }

    fn mono(c: i64, x: (i64, i64), alpha: &[u32]) -> DiffMonomial {
        DiffMonomial {
            coeff: cr(c),
            xexp: rat(x.0, x.1),
            alpha: alpha.to_vec(),
        }
    }

    fn continuum_poly() -> DiffPoly {
        DiffPoly::from_terms(
            q(),
            vec![
                mono(1, (1, 1), &[1, 0, 1]),
                mono(-1, (1, 1), &[0, 2, 0]),
                mono(1, (0, 1), &[1, 1, 0]),
            ],
        )
    }

    fn sqrt_poly() -> DiffPoly {
        DiffPoly::from_terms(q(), vec![mono(1, (0, 1), &[2]), mono(-1, (1, 1), &[0])])
    }

    fn linear_ode() -> DiffPoly {
        // y1 - y0 - 1
        DiffPoly::from_terms(
            q(),
            vec![
                mono(1, (0, 1), &[0, 1]),
                mono(-1, (0, 1), &[1, 0]),
                mono(-1, (0, 1), &[0, 0]),
            ],
        )
    }

    fn pt(u: (i64, i64), v: u32) -> NewtonPoint {
        NewtonPoint::new(rat(u.0, u.1), v)
    }

    #[test]
    fn mark_points_examples() {
        // x y0 y2 -> (1 - 2, 2) = (-1, 2)
        let f = DiffPoly::from_terms(q(), vec![mono(1, (1, 1), &[1, 0, 1])]);
        let m = mark_points(&f).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].point, pt((-1, 1), 2));

        // the example polynomial collapses to one point with three contributors
        let m = mark_points(&continuum_poly()).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].point, pt((-1, 1), 2));
        assert_eq!(m[0].contributors.len(), 3);

        // y0^2 - x -> {(0,2), (1,0)}
        let m = mark_points(&sqrt_poly()).unwrap();
        let points: Vec<NewtonPoint> = m.iter().map(|x| x.point.clone()).collect();
        assert_eq!(points, vec![pt((0, 1), 2), pt((1, 1), 0)]);

        assert!(mark_points(&DiffPoly::zero(q())).is_err());
    }

    #[test]
    fn support_examples() {
        let f = sqrt_poly();
        // direction (2,1): tie between both points
        assert_eq!(support(&f, 2, 1).unwrap(), vec![pt((0, 1), 2), pt((1, 1), 0)]);
        // direction (1,0): leftmost only
        assert_eq!(support(&f, 1, 0).unwrap(), vec![pt((0, 1), 2)]);
        // single-point polygon supports everything
        let g = continuum_poly();
        for (a, b) in [(1, 0), (3, 2), (1, -5)] {
            assert_eq!(support(&g, a, b).unwrap(), vec![pt((-1, 1), 2)]);
        }
        assert!(support(&f, 0, 0).is_err());
    }

    #[test]
    fn polygon_of_sqrt_poly() {
        let view = build_polygon(&sqrt_poly(), true).unwrap();
        assert_eq!(view.edges.len(), 1);
        let e = &view.edges[0];
        assert_eq!((e.a, e.b), (2, 1));
        assert_eq!(e.mu, rat(1, 2));
        assert_eq!(e.upper, pt((0, 1), 2));
        assert_eq!(e.lower, pt((1, 1), 0));
        assert_eq!(view.vertices.len(), 2);
        assert_eq!(view.vertices[0].mu_low, Inclination::NegInf);
        assert_eq!(view.vertices[0].mu_high, Inclination::Finite(rat(1, 2)));
        assert_eq!(view.vertices[1].mu_high, Inclination::PosInf);
    }

    #[test]
    fn polygon_single_vertex() {
        let view = build_polygon(&continuum_poly(), true).unwrap();
        assert!(view.edges.is_empty());
        assert_eq!(view.vertices.len(), 1);
        assert_eq!(view.vertices[0].mu_low, Inclination::NegInf);
        assert_eq!(view.vertices[0].mu_high, Inclination::PosInf);
    }

    #[test]
    fn polygon_of_linear_ode() {
        // vertices (-1,1), (0,0); one edge mu = 1; (0,1) strictly above
        let view = build_polygon(&linear_ode(), true).unwrap();
        assert_eq!(view.edges.len(), 1);
        assert_eq!(view.edges[0].mu, rint(1));
        assert_eq!(view.edges[0].upper, pt((-1, 1), 1));
        assert_eq!(view.edges[0].lower, pt((0, 1), 0));
        let vs: Vec<NewtonPoint> = view.vertices.iter().map(|v| v.point.clone()).collect();
        assert_eq!(vs, vec![pt((-1, 1), 1), pt((0, 1), 0)]);
    }

    #[test]
    fn strict_mode_drops_negative_inclinations() {
        // y0 + x^(-2): relaxed polygon has the mu = -2 edge, strict does not
        let f = DiffPoly::from_terms(q(), vec![mono(1, (0, 1), &[1]), mono(1, (-2, 1), &[0])]);
        let strict = build_polygon(&f, true).unwrap();
        assert!(strict.edges.is_empty());
        let relaxed = build_polygon(&f, false).unwrap();
        assert_eq!(relaxed.edges.len(), 1);
        assert_eq!(relaxed.edges[0].mu, rint(-2));
        // strict vertices: only the one supportable with mu >= 0
        assert_eq!(strict.vertices.len(), 1);
        assert_eq!(strict.vertices[0].point, pt((-2, 1), 0));
        assert_eq!(relaxed.vertices.len(), 2);
    }

    #[test]
    fn vertical_edge_has_inclination_zero() {
        // y0 + y0^2: points (0,1), (0,2) share the abscissa
        let f = DiffPoly::from_terms(q(), vec![mono(1, (0, 1), &[1]), mono(1, (0, 1), &[2])]);
        let view = build_polygon(&f, true).unwrap();
        assert_eq!(view.edges.len(), 1);
        assert_eq!(view.edges[0].mu, rint(0));
        assert_eq!((view.edges[0].a, view.edges[0].b), (1, 0));
        // the upper endpoint of the vertical edge is not a strict vertex
        let vs: Vec<NewtonPoint> = view.vertices.iter().map(|v| v.point.clone()).collect();
        assert_eq!(vs, vec![pt((0, 1), 1)]);
    }

    #[test]
    fn characteristic_poly_examples() {
        // y0^2 - x on the mu = 1/2 edge: C^2 - 1
        let f = sqrt_poly();
        let view = build_polygon(&f, true).unwrap();
        let h = characteristic_poly(&f, &view.edges[0]);
        assert_eq!(h.to_qpoly().unwrap(), crate::qpoly::QPoly::from_ints(&[-1, 0, 1]));

        // y1 - y0 - 1 on the mu = 1 edge: C - 1 (the y0 term is off-edge)
        let f = linear_ode();
        let view = build_polygon(&f, true).unwrap();
        let h = characteristic_poly(&f, &view.edges[0]);
        assert_eq!(h.to_qpoly().unwrap(), crate::qpoly::QPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn characteristic_poly_pure_y0_edge() {
        // terms only in y0: H is the edge restriction with y0 -> C
        let f = DiffPoly::from_terms(
            q(),
            vec![mono(2, (0, 1), &[2]), mono(3, (1, 1), &[1]), mono(5, (3, 1), &[0])],
        );
        let view = build_polygon(&f, true).unwrap();
        let e = &view.edges[0]; // (0,2)-(1,1), mu = 1
        assert_eq!(e.mu, rint(1));
        let h = characteristic_poly(&f, e);
        assert_eq!(h.to_qpoly().unwrap(), crate::qpoly::QPoly::from_ints(&[0, 3, 2]));
    }

    #[test]
    fn indicial_poly_examples() {
        // the example polynomial at (-1,2): mu(mu-1) - mu^2 + mu = 0
        let f = continuum_poly();
        let h = indicial_poly(&f, &pt((-1, 1), 2));
        assert!(h.is_zero());

        // y1 - y0 - 1 at (-1,1): just mu
        let f = linear_ode();
        let h = indicial_poly(&f, &pt((-1, 1), 1));
        assert_eq!(h.to_qpoly().unwrap(), crate::qpoly::QPoly::from_ints(&[0, 1]));

        // vertex fed only by y0-pure terms: constant polynomial
        let f = sqrt_poly();
        let h = indicial_poly(&f, &pt((0, 1), 2));
        assert_eq!(h.to_qpoly().unwrap(), crate::qpoly::QPoly::from_ints(&[1]));
    }

    #[test]
    fn q_s_examples() {
        let f = sqrt_poly();
        let view = build_polygon(&f, true).unwrap();
        let e = &view.edges[0];
        let c = cr(1);
        // s = 0 reduces to H(c) = 1 - 1 = 0
        let h = characteristic_poly(&f, e);
        assert_eq!(q_s_coefficient(&f, e, &c, 0), h.eval(&c));
        // s = 1: dF/dy0 = 2 y0 -> H = 2C at C=1 -> 2
        assert_eq!(q_s_coefficient(&f, e, &c, 1), cr(2));
        // s = 2: (1/2!) d^2F/dy0^2 = 1
        assert_eq!(q_s_coefficient(&f, e, &c, 2), cr(1));
    }

    #[test]
    fn q_s_matches_shifted_coefficients() {
        // q_s agrees with the summed degree-s coefficients of the shift at
        // the extremal point; for y0^2 - x with c = 1 these are 2 and 1
        let f = sqrt_poly();
        let g = f.substitute_shift(&cr(1), &rat(1, 2));
        let c1: AlgNum = g
            .terms()
            .iter()
            .filter(|t| t.ydeg() == 1)
            .map(|t| t.coeff.clone())
            .fold(AlgNum::zero(q()), |a, b| a.add(&b));
        assert_eq!(c1, cr(2));
        let c2: AlgNum = g
            .terms()
            .iter()
            .filter(|t| t.ydeg() == 2)
            .map(|t| t.coeff.clone())
            .fold(AlgNum::zero(q()), |a, b| a.add(&b));
        assert_eq!(c2, cr(1));
    }

    #[test]
    fn derivative_char_poly_routes() {
        // F = x y1^2 satisfies the condition for j=1, k=1: formal route and
        // direct route agree for any direction
        let f = DiffPoly::from_terms(q(), vec![mono(1, (1, 1), &[0, 2])]);
        assert!(translation_condition(&f, 1, 1));
        let mu = rint(1);
        let formal = formal_derivative_char_poly(&f, 1, 1, &mu, &[0, 1]);
        let d = f.partial_derivative(1, 1);
        let direct = characteristic_poly_dir(&d, 1, 1, &mu);
        assert_eq!(formal, direct);

        // k = 0 is the identity
        let f2 = sqrt_poly();
        let v2 = build_polygon(&f2, true).unwrap();
        assert_eq!(
            derivative_char_poly(&f2, 0, 0, &v2.edges[0]),
            characteristic_poly(&f2, &v2.edges[0])
        );

        // y0^2 with j=0, k=2: constant 2
        let f3 = DiffPoly::from_terms(q(), vec![mono(1, (0, 1), &[2])]);
        let e = Edge {
            upper: pt((0, 1), 2),
            lower: pt((0, 1), 2),
            a: 1,
            b: 0,
            mu: rint(0),
        };
        let h = derivative_char_poly(&f3, 0, 2, &e);
        assert_eq!(h.to_qpoly().unwrap(), crate::qpoly::QPoly::from_ints(&[2]));
    }

    #[test]
    fn derivative_indicial_translation() {
        // d/dy1 of x y1^2 = 2 x y1: the closed form on F's terms must match
        // the direct indicial polynomial at the translated point
        let f = DiffPoly::from_terms(q(), vec![mono(1, (1, 1), &[0, 2])]);
        assert!(translation_condition(&f, 1, 1));
        let p = pt((-1, 1), 2);
        let h = derivative_indicial_poly(&f, 1, 1, &p);
        let d = f.partial_derivative(1, 1);
        let expected = indicial_poly(&d, &p.translate(&rint(1), -1));
        assert_eq!(h, expected);
        assert!(!h.is_zero());

        // a mixed instance satisfying the condition for j = 2, k = 1
        let g = DiffPoly::from_terms(
            q(),
            vec![
                mono(2, (0, 1), &[1, 0, 1]),
                mono(-3, (1, 1), &[0, 1, 2]),
                mono(1, (1, 1), &[0, 0, 1]),
            ],
        );
        assert!(translation_condition(&g, 2, 1));
        let dg = g.partial_derivative(2, 1);
        for m in crate::polygon::mark_points(&g).unwrap() {
            let closed = derivative_indicial_poly(&g, 2, 1, &m.point);
            let direct = indicial_poly(&dg, &m.point.translate(&rint(2), -1));
            assert_eq!(closed, direct);
        }
    }

    #[test]
    fn sum_polygon_examples() {
        // G = 0: polygon of F
        let f = sqrt_poly();
        let z = DiffPoly::zero(q());
        assert_eq!(sum_polygon(&f, &z, true).unwrap(), build_polygon(&f, true).unwrap());

        // F = y0^2, G = -x: the mu = 1/2 edge appears
        let f = DiffPoly::from_terms(q(), vec![mono(1, (0, 1), &[2])]);
        let g = DiffPoly::from_terms(q(), vec![mono(-1, (1, 1), &[0])]);
        let view = sum_polygon(&f, &g, true).unwrap();
        assert_eq!(view.edges.len(), 1);
        assert_eq!(view.edges[0].mu, rat(1, 2));

        // cancellation: F = y0, G = -y0 + x leaves the single vertex (1,0)
        let f = DiffPoly::from_terms(q(), vec![mono(1, (0, 1), &[1])]);
        let g = DiffPoly::from_terms(q(), vec![mono(-1, (0, 1), &[1]), mono(1, (1, 1), &[0])]);
        let view = sum_polygon(&f, &g, true).unwrap();
        assert!(view.edges.is_empty());
        assert_eq!(view.vertices.len(), 1);
        assert_eq!(view.vertices[0].point, pt((1, 1), 0));

        // zero sum is an error
        let neg = f.neg();
        assert!(sum_polygon(&f, &neg, true).is_err());
    }

    #[test]
    fn edge_direction_is_reduced() {
        // mu = 2/4 must be stored as (a,b) = (2,1)
        let f = DiffPoly::from_terms(q(), vec![mono(1, (0, 1), &[4]), mono(-1, (2, 1), &[0])]);
        let view = build_polygon(&f, true).unwrap();
        let e = &view.edges[0];
        assert_eq!((e.a, e.b), (2, 1));
        // recomputing mu from the endpoints agrees with b/a
        let recomputed =
            (&e.lower.u - &e.upper.u) / Rat::from(BigInt::from(e.upper.v as i64 - e.lower.v as i64));
        assert_eq!(recomputed, rat(e.b, e.a as i64));
    }
}
