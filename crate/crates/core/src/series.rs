//! Truncated Puiseux series with exact rational exponents.
//!
//! A series carries a ramification index `nu` (every exponent has denominator
//! dividing it) and a truncation order: terms at or beyond the truncation are
//! unknown. `trunc == None` means the series is exact. Every operation
//! propagates the tightest sound truncation, so a zero result with `trunc`
//! None is a certified identical zero.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numfield::{same_field, AlgNum, Embedding, NumberField};
use crate::rat::{lcm_with_denom, pretty, Rat};

/// One term c * x^e of a Puiseux series.
#[derive(Clone, PartialEq, Debug)]
pub struct PuiseuxTerm {
    pub coeff: AlgNum,
    pub exp: Rat,
}

/// A truncated or exact Puiseux series over a number field.
#[derive(Clone, PartialEq)]
pub struct PuiseuxSeries {
    field: Arc<NumberField>,
    nu: u64,
    terms: Vec<PuiseuxTerm>,
    trunc: Option<Rat>,
}

impl PuiseuxSeries {
    /// Exact zero series.
    pub fn zero(field: Arc<NumberField>) -> PuiseuxSeries {
        PuiseuxSeries {
            field,
            nu: 1,
            terms: Vec::new(),
            trunc: None,
        }
    }

    pub fn monomial(coeff: AlgNum, exp: Rat) -> PuiseuxSeries {
        let field = coeff.field().clone();
        PuiseuxSeries::new(field, vec![PuiseuxTerm { coeff, exp }], None)
    }

    /// Canonicalize: sort, merge equal exponents, drop zeros and terms at or
    /// beyond the truncation order, recompute the ramification.
    pub fn new(
        field: Arc<NumberField>,
        terms: Vec<PuiseuxTerm>,
        trunc: Option<Rat>,
    ) -> PuiseuxSeries {
        let mut sorted = terms;
        sorted.sort_by(|a, b| a.exp.cmp(&b.exp));
        let mut merged: Vec<PuiseuxTerm> = Vec::with_capacity(sorted.len());
        for t in sorted {
            if let Some(bound) = &trunc {
                if &t.exp >= bound {
                    continue;
                }
            }
            match merged.last_mut() {
                Some(last) if last.exp == t.exp => {
                    last.coeff = last.coeff.add(&t.coeff);
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        let mut nu = 1u64;
        for t in &merged {
            nu = lcm_with_denom(nu, &t.exp).expect("ramification overflow");
        }
        PuiseuxSeries {
            field,
            nu,
            terms: merged,
            trunc,
        }
    }

    /// Force a ramification index; must be a multiple of the computed one.
    pub fn with_nu(mut self, nu: u64) -> PuiseuxSeries {
        assert!(nu.is_multiple_of(self.nu), "nu must be a common denominator of all exponents");
        self.nu = nu;
        self
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn nu(&self) -> u64 {
        self.nu
    }

    pub fn terms(&self) -> &[PuiseuxTerm] {
        &self.terms
    }

    pub fn truncation(&self) -> Option<&Rat> {
        self.trunc.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// No known terms. For an exact series this certifies identical zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact order: smallest exponent; `None` for the identical zero. Only
    /// meaningful on exact series (on truncated ones it is a lower-bound
    /// witness when a term exists).
    pub fn order(&self) -> Option<Rat> {
        self.terms.first().map(|t| t.exp.clone())
    }

    /// Lower bound on the order of any completion of this series:
    /// first known exponent, else the truncation, else +infinity (`None`).
    fn order_lower_bound(&self) -> Option<Rat> {
        self.terms
            .first()
            .map(|t| t.exp.clone())
            .or_else(|| self.trunc.clone())
    }

    pub fn map_through(&self, emb: &Embedding) -> PuiseuxSeries {
        let terms = self
            .terms
            .iter()
            .map(|t| PuiseuxTerm {
                coeff: emb.map(&t.coeff),
                exp: t.exp.clone(),
            })
            .collect();
        PuiseuxSeries::new(emb.target().clone(), terms, self.trunc.clone()).with_nu(self.nu)
    }

    pub fn add(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        assert!(same_field(&self.field, &other.field), "series field mismatch");
        let trunc = min_trunc(self.trunc.clone(), other.trunc.clone());
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        PuiseuxSeries::new(self.field.clone(), terms, trunc)
    }

    pub fn neg(&self) -> PuiseuxSeries {
        PuiseuxSeries {
            field: self.field.clone(),
            nu: self.nu,
            terms: self
                .terms
                .iter()
                .map(|t| PuiseuxTerm {
                    coeff: t.coeff.neg(),
                    exp: t.exp.clone(),
                })
                .collect(),
            trunc: self.trunc.clone(),
        }
    }

    pub fn sub(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        self.add(&other.neg())
    }

    /// Multiply by the monomial c * x^e.
    pub fn mul_monomial(&self, c: &AlgNum, e: &Rat) -> PuiseuxSeries {
        if c.is_zero() {
            return PuiseuxSeries::new(
                self.field.clone(),
                Vec::new(),
                self.trunc.as_ref().map(|t| t + e),
            );
        }
        let terms = self
            .terms
            .iter()
            .map(|t| PuiseuxTerm {
                coeff: t.coeff.mul(c),
                exp: &t.exp + e,
            })
            .collect();
        PuiseuxSeries::new(
            self.field.clone(),
            terms,
            self.trunc.as_ref().map(|t| t + e),
        )
    }

    pub fn mul(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        assert!(same_field(&self.field, &other.field), "series field mismatch");
        // Unknown-term interactions bound the product truncation.
        let t1 = match (&self.trunc, other.order_lower_bound()) {
            (Some(t), Some(o)) => Some(t + o),
            (Some(_), None) => None, // other is exactly zero
            (None, _) => None,
        };
        let t2 = match (&other.trunc, self.order_lower_bound()) {
            (Some(t), Some(o)) => Some(t + o),
            (Some(_), None) => None,
            (None, _) => None,
        };
        let trunc = min_trunc(t1, t2);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let exp = &a.exp + &b.exp;
                if let Some(bound) = &trunc {
                    if &exp >= bound {
                        continue;
                    }
                }
                terms.push(PuiseuxTerm {
                    coeff: a.coeff.mul(&b.coeff),
                    exp,
                });
            }
        }
        PuiseuxSeries::new(self.field.clone(), terms, trunc)
    }

    pub fn pow(&self, e: u32) -> PuiseuxSeries {
        let one = PuiseuxSeries::monomial(AlgNum::one(self.field.clone()), Rat::zero());
        let mut acc = one;
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal derivative d/dx: c x^e -> c e x^(e-1); constants vanish.
    pub fn derivative(&self) -> PuiseuxSeries {
        let terms = self
            .terms
            .iter()
            .filter(|t| !t.exp.is_zero())
            .map(|t| PuiseuxTerm {
                coeff: t.coeff.scale(&t.exp),
                exp: &t.exp - Rat::one(),
            })
            .collect();
        PuiseuxSeries::new(
            self.field.clone(),
            terms,
            self.trunc.as_ref().map(|t| t - Rat::one()),
        )
    }

    /// Keep terms with exponent < bound and cap the truncation there.
    pub fn truncate(&self, bound: &Rat) -> PuiseuxSeries {
        let trunc = match &self.trunc {
            Some(t) if t < bound => Some(t.clone()),
            _ => Some(bound.clone()),
        };
        PuiseuxSeries::new(self.field.clone(), self.terms.clone(), trunc)
    }

    /// Fails when the series cannot certify all terms below `bound`.
    pub fn require_certified_below(&self, bound: &Rat) -> Result<()> {
        match &self.trunc {
            Some(t) if t < bound => Err(Error::SeriesTooShort(pretty(bound))),
            _ => Ok(()),
        }
    }
}

fn min_trunc(a: Option<Rat>, b: Option<Rat>) -> Option<Rat> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, t) in self.terms.iter().enumerate() {
                if i > 0 {
                    write!(f, " + ")?;
                }
                let cs = t.coeff.to_string();
                let composite = cs.contains(' ') || cs.contains('+') || cs.contains('*');
                if t.exp.is_zero() {
                    if composite {
                        write!(f, "({})", cs)?;
                    } else {
                        write!(f, "{}", cs)?;
                    }
                    continue;
                }
                if !t.coeff.is_one() {
                    if composite {
                        write!(f, "({})*", cs)?;
                    } else {
                        write!(f, "{}*", cs)?;
                    }
                }
                if t.exp.is_one() {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^({})", pretty(&t.exp))?;
                }
            }
        }
        if let Some(t) = &self.trunc {
            write!(f, " + O(x^({}))", pretty(t))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
