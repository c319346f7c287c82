//! Differential polynomials F(x, y0, ..., yn) with exact rational exponents
//! of x, where yj stands for the j-th derivative of the unknown y.
//!
//! The two workhorses are `substitute_shift` (the exact expansion of
//! F(c x^mu + y), using that the k-th derivative of c x^mu is
//! c (mu)_k x^(mu-k)) and `evaluate` (the residual oracle plugging a Puiseux
//! series and its derivatives into F).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numfield::{same_field, AlgNum, Embedding, NumberField};
use crate::rat::{binomial, falling, lcm_with_denom, pretty, Rat};
use crate::series::{PuiseuxSeries, PuiseuxTerm};

/// One term f * x^i * y0^a0 ... yn^an.
#[derive(Clone, PartialEq, Debug)]
pub struct DiffMonomial {
    pub coeff: AlgNum,
    pub xexp: Rat,
    pub alpha: Vec<u32>,
}

impl DiffMonomial {
    /// Total degree |alpha| in the y-variables.
    pub fn ydeg(&self) -> u32 {
        self.alpha.iter().sum()
    }
}

/// A differential polynomial with canonically sorted, collected terms.
#[derive(Clone, PartialEq)]
pub struct DiffPoly {
    field: Arc<NumberField>,
    n: usize,
    terms: Vec<DiffMonomial>,
    nu: u64,
}

impl DiffPoly {
    pub fn zero(field: Arc<NumberField>) -> DiffPoly {
        DiffPoly {
            field,
            n: 0,
            terms: Vec::new(),
            nu: 1,
        }
    }

    /// Canonical constructor: collects equal (xexp, alpha) keys, drops zero
    /// coefficients, sorts lexicographically. The derivative order n becomes
    /// the highest variable index that actually occurs.
    pub fn from_terms(
        field: Arc<NumberField>,
        terms: impl IntoIterator<Item = DiffMonomial>,
    ) -> DiffPoly {
        let mut used = 0usize;
        let mut collected: Vec<DiffMonomial> = Vec::new();
        for t in terms {
            assert!(
                same_field(t.coeff.field(), &field),
                "monomial coefficient from a different field"
            );
            if let Some(top) = t.alpha.iter().rposition(|&a| a > 0) {
                used = used.max(top);
            }
            collected.push(t);
        }
        let n = used;
        let mut map: BTreeMap<(Rat, Vec<u32>), AlgNum> = BTreeMap::new();
        for t in collected {
            let mut alpha = t.alpha;
            alpha.truncate(n + 1);
            alpha.resize(n + 1, 0);
            let key = (t.xexp, alpha);
            match map.remove(&key) {
                Some(prev) => {
                    let sum = prev.add(&t.coeff);
                    if !sum.is_zero() {
                        map.insert(key, sum);
                    }
                }
                None => {
                    if !t.coeff.is_zero() {
                        map.insert(key, t.coeff);
                    }
                }
            }
        }
        let mut nu = 1u64;
        let terms: Vec<DiffMonomial> = map
            .into_iter()
            .map(|((xexp, alpha), coeff)| {
                nu = lcm_with_denom(nu, &xexp).expect("ramification overflow");
                DiffMonomial { coeff, xexp, alpha }
            })
            .collect();
        DiffPoly { field, n, terms, nu }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Highest derivative index; variables are y0..yn.
    pub fn order_n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[DiffMonomial] {
        &self.terms
    }

    /// Common denominator of all x-exponents.
    pub fn nu(&self) -> u64 {
        self.nu
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// ord(F) = min x-exponent; `None` (+infinity) for the zero polynomial.
    pub fn order(&self) -> Option<Rat> {
        self.terms.iter().map(|t| t.xexp.clone()).min()
    }

    /// Total degree in the y-variables (0 for the zero polynomial).
    pub fn ydeg(&self) -> u32 {
        self.terms.iter().map(|t| t.ydeg()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &DiffPoly) -> Result<DiffPoly> {
        let (a, b) = coerce_pair(self, other)?;
        let mut terms = a.terms.clone();
        terms.extend(b.terms.iter().cloned());
        Ok(DiffPoly::from_terms(a.field.clone(), terms))
    }

    pub fn neg(&self) -> DiffPoly {
        DiffPoly {
            field: self.field.clone(),
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| DiffMonomial {
                    coeff: t.coeff.neg(),
                    xexp: t.xexp.clone(),
                    alpha: t.alpha.clone(),
                })
                .collect(),
            nu: self.nu,
        }
    }

    pub fn sub(&self, other: &DiffPoly) -> Result<DiffPoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &AlgNum) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero(self.field.clone());
        }
        DiffPoly {
            field: self.field.clone(),
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| DiffMonomial {
                    coeff: t.coeff.mul(c),
                    xexp: t.xexp.clone(),
                    alpha: t.alpha.clone(),
                })
                .collect(),
            nu: self.nu,
        }
    }

    /// Product of differential polynomials (parser plumbing).
    pub fn mul(&self, other: &DiffPoly) -> Result<DiffPoly> {
        let (a, b) = coerce_pair(self, other)?;
        let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
        for s in &a.terms {
            for t in &b.terms {
                let len = s.alpha.len().max(t.alpha.len());
                let alpha = (0..len)
                    .map(|j| {
                        s.alpha.get(j).copied().unwrap_or(0) + t.alpha.get(j).copied().unwrap_or(0)
                    })
                    .collect();
                terms.push(DiffMonomial {
                    coeff: s.coeff.mul(&t.coeff),
                    xexp: &s.xexp + &t.xexp,
                    alpha,
                });
            }
        }
        Ok(DiffPoly::from_terms(a.field.clone(), terms))
    }

    /// Formal partial derivative d^k/d(yj)^k; zero when yj does not occur.
    pub fn partial_derivative(&self, j: usize, k: u32) -> DiffPoly {
        if k == 0 {
            return self.clone();
        }
        if j > self.n {
            return DiffPoly::zero(self.field.clone());
        }
        let terms = self.terms.iter().filter(|t| t.alpha[j] >= k).map(|t| {
            let fall = falling(&Rat::from(BigInt::from(t.alpha[j])), k);
            let mut alpha = t.alpha.clone();
            alpha[j] -= k;
            DiffMonomial {
                coeff: t.coeff.scale(&fall),
                xexp: t.xexp.clone(),
                alpha,
            }
        });
        DiffPoly::from_terms(self.field.clone(), terms.collect::<Vec<_>>())
    }

    /// Homogeneous part of total y-degree s.
    pub fn homogeneous_part(&self, s: u32) -> DiffPoly {
        let terms: Vec<DiffMonomial> = self
            .terms
            .iter()
            .filter(|t| t.ydeg() == s)
            .cloned()
            .collect();
        DiffPoly::from_terms(self.field.clone(), terms)
    }

    /// The alpha = 0 part; zero exactly when y = 0 solves F(y) = 0.
    pub fn constant_part(&self) -> DiffPoly {
        self.homogeneous_part(0)
    }

    /// G(y) = F(c x^mu + y), expanded exactly. The k-th derivative of c x^mu
    /// contributes c (mu)_k x^(mu - k).
    pub fn substitute_shift(&self, c: &AlgNum, mu: &Rat) -> DiffPoly {
        assert!(same_field(c.field(), &self.field), "shift coefficient field mismatch");
        if c.is_zero() {
            return self.clone();
        }
        let mut out: Vec<DiffMonomial> = Vec::new();
        // Derivative coefficients c (mu)_j for j = 0..n.
        let shifts: Vec<AlgNum> = (0..=self.n).map(|j| c.scale(&falling(mu, j as u32))).collect();
        for term in &self.terms {
            // Partial products over the variables, expanded binomially.
            let mut partial: Vec<(AlgNum, Rat, Vec<u32>)> =
                vec![(term.coeff.clone(), term.xexp.clone(), Vec::with_capacity(self.n + 1))];
            for (j, &aj) in term.alpha.iter().enumerate() {
                let mut next = Vec::with_capacity(partial.len() * (aj as usize + 1));
                for (coeff, xexp, beta) in &partial {
                    for bj in 0..=aj {
                        // choose bj copies of y_j, aj - bj copies of the shift
                        let pow = aj - bj;
                        let mut c2 = coeff.clone();
                        let mut x2 = xexp.clone();
                        if pow > 0 {
                            let shift_pow = shifts[j].pow(pow);
                            if shift_pow.is_zero() {
                                continue;
                            }
                            c2 = c2.mul(&shift_pow).scale(&Rat::from(binomial(aj, bj)));
                            x2 += (mu - Rat::from(BigInt::from(j))) * Rat::from(BigInt::from(pow));
                        }
                        let mut b2 = beta.clone();
                        b2.push(bj);
                        next.push((c2, x2, b2));
                    }
                }
                partial = next;
            }
            for (coeff, xexp, alpha) in partial {
                out.push(DiffMonomial { coeff, xexp, alpha });
            }
        }
        DiffPoly::from_terms(self.field.clone(), out)
    }

    /// Map all coefficients through a field embedding.
    pub fn map_through(&self, emb: &Embedding) -> DiffPoly {
        let terms: Vec<DiffMonomial> = self
            .terms
            .iter()
            .map(|t| DiffMonomial {
                coeff: emb.map(&t.coeff),
                xexp: t.xexp.clone(),
                alpha: t.alpha.clone(),
            })
            .collect();
        DiffPoly::from_terms(emb.target().clone(), terms)
    }

    /// Evaluate F(psi, psi', ..., psi^(n)) exactly; requires an exact series.
    pub fn evaluate_exact(&self, psi: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        if !psi.is_exact() {
            return Err(Error::Unsupported(
                "exact residual evaluation needs an exact series".into(),
            ));
        }
        self.evaluate_inner(psi)
    }

    /// Evaluate and certify the residual below `up_to`; the result is
    /// truncated there. Errors when the input truncation is too short.
    pub fn evaluate(&self, psi: &PuiseuxSeries, up_to: &Rat) -> Result<PuiseuxSeries> {
        let res = self.evaluate_inner(psi)?;
        res.require_certified_below(up_to)?;
        Ok(res.truncate(up_to))
    }

    fn evaluate_inner(&self, psi: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        let psi = coerce_series(self, psi)?;
        let mut derivs: Vec<PuiseuxSeries> = Vec::with_capacity(self.n + 1);
        derivs.push(psi);
        for _ in 0..self.n {
            let d = derivs.last().unwrap().derivative();
            derivs.push(d);
        }
        // No early truncation inside the products: a later derivative factor
        // can carry negative exponents and pull terms back below the bound.
        let mut acc = PuiseuxSeries::zero(self.field.clone());
        for term in &self.terms {
            let mut prod = PuiseuxSeries::monomial(term.coeff.clone(), term.xexp.clone());
            for (j, &aj) in term.alpha.iter().enumerate() {
                if aj > 0 {
                    prod = prod.mul(&derivs[j].pow(aj));
                }
            }
            acc = acc.add(&prod);
        }
        Ok(acc)
    }

    /// Serialize in the grammar accepted by the parser.
    pub fn to_input_string(&self) -> String {
        format!("{}", self)
    }
}

/// Unify fields (degree-1 fields lift anywhere) and variable counts.
fn coerce_pair(a: &DiffPoly, b: &DiffPoly) -> Result<(DiffPoly, DiffPoly)> {
    let n = a.n.max(b.n);
    let (fa, fb) = (&a.field, &b.field);
    let (a2, b2) = if same_field(fa, fb) {
        (a.clone(), b.clone())
    } else if fa.is_rational() {
        (lift_rational(a, fb.clone())?, b.clone())
    } else if fb.is_rational() {
        (a.clone(), lift_rational(b, fa.clone())?)
    } else {
        return Err(Error::FieldMismatch(format!(
            "no embedding between {} and {}",
            fa.minimal_poly(),
            fb.minimal_poly()
        )));
    };
    let pad = |p: &DiffPoly| -> DiffPoly {
        if p.n == n {
            p.clone()
        } else {
            DiffPoly::from_terms(p.field.clone(), p.terms.clone())
        }
    };
    Ok((pad(&a2), pad(&b2)))
}

fn lift_rational(p: &DiffPoly, target: Arc<NumberField>) -> Result<DiffPoly> {
    let terms: Result<Vec<DiffMonomial>> = p
        .terms
        .iter()
        .map(|t| {
            let r = t.coeff.as_rat().ok_or_else(|| {
                Error::FieldMismatch("non-rational coefficient in degree-1 field".into())
            })?;
            Ok(DiffMonomial {
                coeff: AlgNum::from_rat(target.clone(), r),
                xexp: t.xexp.clone(),
                alpha: t.alpha.clone(),
            })
        })
        .collect();
    Ok(DiffPoly::from_terms(target, terms?))
}

fn coerce_series(f: &DiffPoly, s: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    if same_field(s.field(), &f.field) {
        return Ok(s.clone());
    }
    if s.field().is_rational() {
        let terms: Result<Vec<PuiseuxTerm>> = s
            .terms()
            .iter()
            .map(|t| {
                let r = t.coeff.as_rat().ok_or_else(|| {
                    Error::FieldMismatch("non-rational coefficient in degree-1 field".into())
                })?;
                Ok(PuiseuxTerm {
                    coeff: AlgNum::from_rat(f.field.clone(), r),
                    exp: t.exp.clone(),
                })
            })
            .collect();
        return Ok(PuiseuxSeries::new(
            f.field.clone(),
            terms?,
            s.truncation().cloned(),
        ));
    }
    Err(Error::FieldMismatch(
        "series field does not embed into the polynomial field".into(),
    ))
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let (sign, mag) = match t.coeff.as_rat() {
                Some(r) if r.is_negative() => ("-", AlgNum::from_rat(self.field.clone(), -r)),
                _ => ("+", t.coeff.clone()),
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else if sign == "-" {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            let cs = mag.to_string();
            let composite = cs.contains(' ') || cs.contains('+') || cs.contains('*');
            let has_vars = !t.xexp.is_zero() || t.alpha.iter().any(|&a| a > 0);
            if !mag.is_one() || !has_vars {
                parts.push(if composite { format!("({})", cs) } else { cs });
            }
            if !t.xexp.is_zero() {
                if t.xexp.is_one() {
                    parts.push("x".into());
                } else if t.xexp.denom().is_one() && t.xexp.is_positive() {
                    parts.push(format!("x^{}", t.xexp.numer()));
                } else {
                    parts.push(format!("x^({})", pretty(&t.xexp)));
                }
            }
            for (j, &aj) in t.alpha.iter().enumerate() {
                if aj == 0 {
                    continue;
                }
                if aj == 1 {
                    parts.push(format!("y{}", j));
                } else {
                    parts.push(format!("y{}^{}", j, aj));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
