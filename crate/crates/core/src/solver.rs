//! The differential Newton-Puiseux expansion tree.
//!
//! Each node carries a flattened number field, a partial sum y_tau, its
//! ramification nu(tau), and the shifted polynomial F_tau(y) = F(y + y_tau).
//! Expansion factors the characteristic polynomial of every admissible edge
//! (one son per irreducible factor other than C, through a fresh primitive
//! element), and turns admissible rational roots of vertex indicial
//! polynomials into parametric families. An identically zero indicial
//! polynomial ends the branch as a continuum family: no finite extension
//! contains all those solutions.
//!
//! Exact solutions leave the tree through +infinity sons: whenever the
//! constant part of F_tau vanishes, the current partial sum already solves
//! the equation and a leaf son records it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::numfield::{
    factor_over_field, primitive_element, rational_roots, AlgNum, Embedding, KPoly, NumberField,
};
use crate::polygon::{build_polygon, characteristic_poly, indicial_poly, Edge, Inclination};
use crate::qpoly::QPoly;
use crate::rat::{pretty, rint, Rat};
use crate::series::{PuiseuxSeries, PuiseuxTerm};

/// Expansion limits; the tree may be infinite without them.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Bound on deg(tau): sons with a larger leading exponent are cut.
    pub max_exponent: Rat,
    pub max_nodes: usize,
    pub max_level: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_exponent: rint(10),
            max_nodes: 10_000,
            max_level: 32,
        }
    }
}

/// Value assigned to a free parameter of a parametric family.
#[derive(Clone, Debug)]
pub enum ParamValue {
    Rational(Rat),
    /// A root of a monic polynomial, irreducible over the node's field.
    Root(QPoly),
}

pub type ParamAssignments = BTreeMap<String, ParamValue>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeStatus {
    /// Interior or pending node.
    Expandable,
    /// Terminal node whose partial sum is an exact solution.
    Leaf,
    /// Free-coefficient family at a fixed exponent.
    Parametric,
    /// Identically zero indicial polynomial: free coefficient and exponent.
    Continuum,
    /// Cut by the budget; the partial sum is a certified truncation.
    Truncated,
}

/// One node tau of the expansion tree.
#[derive(Clone, Debug)]
pub struct TreeNode {
    pub id: usize,
    pub parent: Option<usize>,
    /// K_tau, always flattened over Q.
    pub field: Arc<NumberField>,
    /// c_tau: the coefficient adjoined at this node (zero at the root).
    pub c: AlgNum,
    /// mu_tau = deg(tau).
    pub mu: Inclination,
    /// y_tau as explicit (coefficient, exponent) terms, ascending.
    pub partial_sum: Vec<(AlgNum, Rat)>,
    /// nu(tau): lcm of the parent's nu with a(e) on edge branches.
    pub nu: u64,
    /// F_tau(y) = F(y + y_tau).
    pub shifted: DiffPoly,
    pub level: u32,
    pub status: NodeStatus,
    /// Image of the input field's generator in this node's field.
    root_gen_image: AlgNum,
}

impl TreeNode {
    /// phi_tau, the minimal polynomial of the node's field generator.
    pub fn min_poly(&self) -> &QPoly {
        self.field.minimal_poly()
    }

    pub fn partial_series(&self) -> PuiseuxSeries {
        let terms = self
            .partial_sum
            .iter()
            .map(|(c, e)| PuiseuxTerm {
                coeff: c.clone(),
                exp: e.clone(),
            })
            .collect();
        PuiseuxSeries::new(self.field.clone(), terms, None).with_nu(self.nu)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionKind {
    ExactLeaf,
    Truncated,
    ParametricFamily,
    ContinuumFamily,
}

impl fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SolutionKind::ExactLeaf => "exact-leaf",
            SolutionKind::Truncated => "truncated",
            SolutionKind::ParametricFamily => "parametric-family",
            SolutionKind::ContinuumFamily => "continuum-family",
        };
        write!(f, "{}", s)
    }
}

/// Description of the free data of a parametric or continuum family.
#[derive(Clone, Debug)]
pub struct FreeParams {
    /// Parameter name usable with `--param name=value`.
    pub name: String,
    /// Fixed exponent of the free term (parametric case).
    pub mu: Option<Rat>,
    /// Admissible exponent range (continuum case), open interval.
    pub mu_range: Option<(Inclination, Inclination)>,
    pub note: String,
}

/// Residual certificate attached to an emitted solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidualCertificate {
    /// F(series) is identically zero.
    ExactZero,
    /// The exact residual F(series) has this order; all further true
    /// solution terms lie at exponents >= the series truncation.
    OrderAtLeast(Rat),
    /// Families carry their initial-condition identity instead.
    Family,
}

/// An extracted solution branch.
#[derive(Clone, Debug)]
pub struct PuiseuxSolution {
    pub nu: u64,
    pub series: PuiseuxSeries,
    /// Minimal polynomial of the generator of the coefficient field.
    pub field_min_poly: QPoly,
    pub kind: SolutionKind,
    pub free_parameters: Option<FreeParams>,
    pub residual: ResidualCertificate,
    pub node_id: usize,
}

/// The expansion tree.
#[derive(Clone, Debug)]
pub struct Tree {
    pub nodes: Vec<TreeNode>,
    /// Total y-degree of the input, the base of the degree bound.
    pub input_ydeg: u32,
}

impl Tree {
    pub fn max_level(&self) -> u32 {
        self.nodes.iter().map(|n| n.level).max().unwrap_or(0)
    }
}

/// Degree-bound report: deg(phi_tau) <= d^level must hold at every node.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl BoundsReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Leaf test for a node: every edge inclination and every vertex's upper
/// adjacent inclination lies at or below deg(tau), and y = 0 solves F_tau.
///
/// For a nonzero F_tau the bottom vertex always keeps an open direction
/// range (mu_high = +inf), so nodes of finite degree never pass; exact
/// solutions leave the tree through the +infinity sons instead, which pass
/// all three conditions trivially.
pub fn is_leaf(node: &TreeNode, strict_b: bool) -> Result<bool> {
    let view = build_polygon(&node.shifted, strict_b)?;
    let edges_done = view
        .edges
        .iter()
        .all(|e| Inclination::Finite(e.mu.clone()) <= node.mu);
    let vertices_done = view.vertices.iter().all(|v| v.mu_high <= node.mu);
    Ok(edges_done && vertices_done && node.shifted.constant_part().is_zero())
}

/// Check deg(phi_tau) <= d^level(tau) for every node.
pub fn theorem_bounds_check(tree: &Tree) -> BoundsReport {
    let d = BigInt::from(tree.input_ydeg);
    let mut violations = Vec::new();
    for node in &tree.nodes {
        let mut bound = BigInt::one();
        for _ in 0..node.level {
            bound *= &d;
        }
        if BigInt::from(node.field.degree()) > bound {
            violations.push(format!(
                "node {} at level {}: field degree {} exceeds d^level = {}",
                node.id,
                node.level,
                node.field.degree(),
                bound
            ));
        }
    }
    BoundsReport {
        checked: tree.nodes.len(),
        violations,
    }
}

/// Run the expansion on a nonzero differential polynomial.
pub fn expand(
    f: &DiffPoly,
    budget: &Budget,
    params: &ParamAssignments,
    strict_b: bool,
) -> Result<(Tree, Vec<PuiseuxSolution>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut expander = Expander {
        budget,
        params,
        strict_b,
        input: f.clone(),
        input_field: f.field().clone(),
        nodes: Vec::new(),
        solutions: Vec::new(),
        param_counter: 0,
    };
    let root = TreeNode {
        id: 0,
        parent: None,
        field: f.field().clone(),
        c: AlgNum::zero(f.field().clone()),
        mu: Inclination::NegInf,
        partial_sum: Vec::new(),
        nu: 1,
        shifted: f.clone(),
        level: 0,
        status: NodeStatus::Expandable,
        root_gen_image: AlgNum::generator(f.field().clone()),
    };
    expander.nodes.push(root);
    let mut cursor = 0;
    while cursor < expander.nodes.len() {
        expander.visit(cursor)?;
        cursor += 1;
    }
    Ok((
        Tree {
            nodes: expander.nodes,
            input_ydeg: f.ydeg(),
        },
        expander.solutions,
    ))
}

struct Expander<'a> {
    budget: &'a Budget,
    params: &'a ParamAssignments,
    strict_b: bool,
    input: DiffPoly,
    input_field: Arc<NumberField>,
    nodes: Vec<TreeNode>,
    solutions: Vec<PuiseuxSolution>,
    param_counter: usize,
}

impl Expander<'_> {
    fn visit(&mut self, idx: usize) -> Result<()> {
        if self.nodes[idx].status != NodeStatus::Expandable {
            return Ok(());
        }
        let node = self.nodes[idx].clone();
        debug_assert!(!node.shifted.is_zero(), "shift of a nonzero polynomial is nonzero");

        let view = build_polygon(&node.shifted, self.strict_b)?;
        let const_zero = node.shifted.constant_part().is_zero();

        if is_leaf(&node, self.strict_b)? {
            self.nodes[idx].status = NodeStatus::Leaf;
            self.emit_verified(idx, SolutionKind::ExactLeaf, None, None)?;
            return Ok(());
        }

        let active_edges: Vec<&Edge> = view
            .edges
            .iter()
            .filter(|e| Inclination::Finite(e.mu.clone()) > node.mu)
            .collect();
        let active_vertices: Vec<_> = view
            .vertices
            .iter()
            .filter(|v| v.mu_high > node.mu)
            .collect();

        // Exact solution through the +infinity son whenever y = 0 already
        // solves F_tau and further branches exist.
        if const_zero && (!active_edges.is_empty() || !active_vertices.is_empty()) {
            let son = TreeNode {
                id: self.nodes.len(),
                parent: Some(idx),
                field: node.field.clone(),
                c: AlgNum::zero(node.field.clone()),
                mu: Inclination::PosInf,
                partial_sum: node.partial_sum.clone(),
                nu: node.nu,
                shifted: node.shifted.clone(),
                level: node.level + 1,
                status: NodeStatus::Expandable,
                root_gen_image: node.root_gen_image.clone(),
            };
            self.nodes.push(son);
        }

        let out_of_room =
            node.level + 1 > self.budget.max_level || self.nodes.len() >= self.budget.max_nodes;

        // Edge branches, cheapest admissibility checks before factoring.
        let mut suppressed: Vec<Rat> = Vec::new();
        for e in &active_edges {
            if out_of_room || e.mu > self.budget.max_exponent {
                suppressed.push(e.mu.clone());
                continue;
            }
            self.edge_branch(idx, e)?;
        }

        // Vertex branches: indicial polynomial roots become families.
        for v in &active_vertices {
            let h = indicial_poly(&node.shifted, &v.point);
            if h.is_zero() {
                self.emit_continuum(idx, v.mu_low.clone(), v.mu_high.clone())?;
                continue;
            }
            let mut roots = rational_roots(&h)?;
            roots.retain(|mu| {
                Inclination::Finite(mu.clone()) > node.mu
                    && Inclination::Finite(mu.clone()) > v.mu_low
                    && Inclination::Finite(mu.clone()) < v.mu_high
                    && (!self.strict_b || !mu.is_negative())
            });
            for mu in roots {
                let name = self.next_param_name();
                self.emit_parametric(idx, &name, &mu)?;
                if let Some(value) = self.params.get(&name).cloned() {
                    if out_of_room || mu > self.budget.max_exponent {
                        suppressed.push(mu.clone());
                        continue;
                    }
                    self.materialize(idx, &mu, &value)?;
                }
            }
        }

        if !suppressed.is_empty() {
            suppressed.sort();
            self.nodes[idx].status = NodeStatus::Truncated;
            self.emit_verified(idx, SolutionKind::Truncated, Some(suppressed[0].clone()), None)?;
        }
        Ok(())
    }

    /// Expand one admissible edge: factor its characteristic polynomial and
    /// adjoin one root per irreducible factor other than C.
    fn edge_branch(&mut self, idx: usize, e: &Edge) -> Result<()> {
        let node = self.nodes[idx].clone();
        let h = characteristic_poly(&node.shifted, e);
        if h.is_zero() {
            // Every leading coefficient works at this inclination; report a
            // free-coefficient family exactly like a vanishing indicial
            // polynomial at a vertex.
            let name = self.next_param_name();
            self.emit_parametric(idx, &name, &e.mu)?;
            if let Some(value) = self.params.get(&name).cloned() {
                self.materialize(idx, &e.mu, &value)?;
            }
            return Ok(());
        }
        let factorization = factor_over_field(&h)?;
        for (factor, _mult) in &factorization.factors {
            if factor.deg0() == 0 {
                continue;
            }
            // Skip the factor C: its root c = 0 is not a new branch.
            if factor.deg0() == 1 && factor.coeff(0).is_zero() {
                continue;
            }
            let ext = primitive_element(factor)?;
            if ext.field.degree() != node.field.degree() * factor.deg0() {
                return Err(Error::Internal(
                    "primitive element degree mismatch".into(),
                ));
            }
            let emb = ext.embedding(node.field.clone());
            let c_new = ext.embed_root.clone();
            let mu_new = e.mu.clone();
            let nu_new = lcm_u64(node.nu, e.a);
            let mut partial: Vec<(AlgNum, Rat)> = node
                .partial_sum
                .iter()
                .map(|(c, exp)| (emb.map(c), exp.clone()))
                .collect();
            partial.push((c_new.clone(), mu_new.clone()));
            let shifted = node.shifted.map_through(&emb).substitute_shift(&c_new, &mu_new);
            self.check_branch_invariants(&node, e, &shifted)?;
            let son = TreeNode {
                id: self.nodes.len(),
                parent: Some(idx),
                field: ext.field.clone(),
                c: c_new,
                mu: Inclination::Finite(mu_new),
                partial_sum: partial,
                nu: nu_new,
                shifted,
                level: node.level + 1,
                status: NodeStatus::Expandable,
                root_gen_image: emb.map(&node.root_gen_image),
            };
            self.nodes.push(son);
        }
        Ok(())
    }

    /// The necessary initial condition kills the extremal residual term, and
    /// the shifted polygon gains an edge unless the branch terminates.
    fn check_branch_invariants(&self, node: &TreeNode, e: &Edge, shifted: &DiffPoly) -> Result<()> {
        // minimum of u + mu v over the marked points of F_tau
        let marked = crate::polygon::mark_points(&node.shifted)?;
        let line_value = marked
            .iter()
            .map(|m| &m.point.u + &e.mu * Rat::from(BigInt::from(m.point.v)))
            .min()
            .expect("nonzero polynomial has marked points");
        let const_part = shifted.constant_part();
        if let Some(ord) = const_part.order() {
            if ord <= line_value {
                return Err(Error::Internal(format!(
                    "branch inconsistent: residual order {} not above the edge line {}",
                    pretty(&ord),
                    pretty(&line_value)
                )));
            }
            // Edge gain: an inclination strictly above mu_e must appear.
            let new_view = build_polygon(shifted, self.strict_b)?;
            if !new_view.edges.iter().any(|ne| ne.mu > e.mu) {
                return Err(Error::Internal(
                    "branch inconsistent: no edge gained and y = 0 is not a solution".into(),
                ));
            }
        }
        Ok(())
    }

    /// Continue a parametric family with a concrete nonzero value.
    fn materialize(&mut self, idx: usize, mu: &Rat, value: &ParamValue) -> Result<()> {
        let node = self.nodes[idx].clone();
        let (field, emb, c_new) = match value {
            ParamValue::Rational(r) => {
                if r.is_zero() {
                    return Err(Error::Unsupported(
                        "parametric coefficient must be nonzero".into(),
                    ));
                }
                (
                    node.field.clone(),
                    Embedding::identity(node.field.clone()),
                    AlgNum::from_rat(node.field.clone(), r.clone()),
                )
            }
            ParamValue::Root(min_poly) => {
                let lifted = KPoly::lift_qpoly(node.field.clone(), min_poly);
                let ext = primitive_element(&lifted)?;
                let emb = ext.embedding(node.field.clone());
                (ext.field.clone(), emb, ext.embed_root.clone())
            }
        };
        let mut partial: Vec<(AlgNum, Rat)> = node
            .partial_sum
            .iter()
            .map(|(c, exp)| (emb.map(c), exp.clone()))
            .collect();
        partial.push((c_new.clone(), mu.clone()));
        let shifted = node.shifted.map_through(&emb).substitute_shift(&c_new, mu);
        let son = TreeNode {
            id: self.nodes.len(),
            parent: Some(idx),
            field,
            c: c_new,
            mu: Inclination::Finite(mu.clone()),
            partial_sum: partial,
            nu: lcm_u64(
                node.nu,
                crate::rat::denom_u64(mu).ok_or_else(|| Error::Internal("nu overflow".into()))?,
            ),
            shifted,
            level: node.level + 1,
            status: NodeStatus::Expandable,
            root_gen_image: emb.map(&node.root_gen_image),
        };
        self.nodes.push(son);
        Ok(())
    }

    fn next_param_name(&mut self) -> String {
        let name = format!("c{}", self.param_counter);
        self.param_counter += 1;
        name
    }

    /// Emit an exact or truncated solution after re-verifying it against the
    /// independent series oracle: F(y_tau) evaluated termwise must equal the
    /// constant part of the shifted polynomial.
    fn emit_verified(
        &mut self,
        idx: usize,
        kind: SolutionKind,
        trunc: Option<Rat>,
        free: Option<FreeParams>,
    ) -> Result<()> {
        let node = &self.nodes[idx];
        let series = node.partial_series();
        let root_emb = Embedding::new(self.input_field.clone(), node.root_gen_image.clone());
        let lifted_input = self.input.map_through(&root_emb);
        let residual = lifted_input.evaluate_exact(&series)?;
        let const_part = node.shifted.constant_part();
        let const_series = PuiseuxSeries::new(
            node.field.clone(),
            const_part
                .terms()
                .iter()
                .map(|t| PuiseuxTerm {
                    coeff: t.coeff.clone(),
                    exp: t.xexp.clone(),
                })
                .collect(),
            None,
        );
        if residual != const_series {
            return Err(Error::Internal(
                "branch inconsistent: series residual disagrees with the shifted constant part"
                    .into(),
            ));
        }
        let certificate = match kind {
            SolutionKind::ExactLeaf => {
                if !residual.is_zero() {
                    return Err(Error::Internal(
                        "branch inconsistent: leaf emitted with nonzero residual".into(),
                    ));
                }
                ResidualCertificate::ExactZero
            }
            _ => match residual.order() {
                Some(ord) => ResidualCertificate::OrderAtLeast(ord),
                None => ResidualCertificate::ExactZero,
            },
        };
        let series = match &trunc {
            Some(t) => series.truncate(t).with_nu(node.nu),
            None => series,
        };
        self.solutions.push(PuiseuxSolution {
            nu: node.nu,
            series,
            field_min_poly: node.field.minimal_poly().clone(),
            kind,
            free_parameters: free,
            residual: certificate,
            node_id: node.id,
        });
        Ok(())
    }

    fn emit_parametric(&mut self, idx: usize, name: &str, mu: &Rat) -> Result<()> {
        let node = self.nodes[idx].clone();
        let son = TreeNode {
            id: self.nodes.len(),
            parent: Some(idx),
            field: node.field.clone(),
            c: AlgNum::zero(node.field.clone()),
            mu: Inclination::Finite(mu.clone()),
            partial_sum: node.partial_sum.clone(),
            nu: node.nu,
            shifted: node.shifted.clone(),
            level: node.level + 1,
            status: NodeStatus::Parametric,
            root_gen_image: node.root_gen_image.clone(),
        };
        let node_id = son.id;
        let nu = lcm_u64(
            node.nu,
            crate::rat::denom_u64(mu).ok_or_else(|| Error::Internal("nu overflow".into()))?,
        );
        let series = son.partial_series();
        let field_min_poly = node.field.minimal_poly().clone();
        self.nodes.push(son);
        self.solutions.push(PuiseuxSolution {
            nu,
            series,
            field_min_poly,
            kind: SolutionKind::ParametricFamily,
            free_parameters: Some(FreeParams {
                name: name.to_string(),
                mu: Some(mu.clone()),
                mu_range: None,
                note: format!(
                    "y = (partial sum) + {} * x^({}) with {} a free nonzero constant",
                    name,
                    pretty(mu),
                    name
                ),
            }),
            residual: ResidualCertificate::Family,
            node_id,
        });
        Ok(())
    }

    fn emit_continuum(&mut self, idx: usize, mu_low: Inclination, mu_high: Inclination) -> Result<()> {
        let node = self.nodes[idx].clone();
        let son = TreeNode {
            id: self.nodes.len(),
            parent: Some(idx),
            field: node.field.clone(),
            c: AlgNum::zero(node.field.clone()),
            mu: node.mu.clone(),
            partial_sum: node.partial_sum.clone(),
            nu: node.nu,
            shifted: node.shifted.clone(),
            level: node.level + 1,
            status: NodeStatus::Continuum,
            root_gen_image: node.root_gen_image.clone(),
        };
        let node_id = son.id;
        // admissible range: above both the vertex's lower edge and deg(tau)
        let lo = if node.mu > mu_low { node.mu.clone() } else { mu_low };
        let name = self.next_param_name();
        let series = son.partial_series();
        let field_min_poly = node.field.minimal_poly().clone();
        let note = format!(
            "identically zero indicial polynomial: y = (partial sum) + c * x^mu solves the \
             initial condition for every nonzero c and every mu in ({}, {})",
            lo, mu_high
        );
        self.nodes.push(son);
        self.solutions.push(PuiseuxSolution {
            nu: node.nu,
            series,
            field_min_poly,
            kind: SolutionKind::ContinuumFamily,
            free_parameters: Some(FreeParams {
                name,
                mu: None,
                mu_range: Some((lo, mu_high)),
                note,
            }),
            residual: ResidualCertificate::Family,
            node_id,
        });
        Ok(())
    }
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    use num_integer::Integer;
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::DiffMonomial;
    use crate::rat::rat;

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

    fn sqrt_poly() -> DiffPoly {
        DiffPoly::from_terms(q(), vec![mono(1, (0, 1), &[2]), mono(-1, (1, 1), &[0])])
    }

    fn linear_ode() -> DiffPoly {
        DiffPoly::from_terms(
            q(),
            vec![
                mono(1, (0, 1), &[0, 1]),
                mono(-1, (0, 1), &[1, 0]),
                mono(-1, (0, 1), &[0, 0]),
            ],
        )
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

    #[test]
    fn root_node_matches_definition() {
        let f = sqrt_poly();
        let (tree, _) = expand(&f, &Budget::default(), &ParamAssignments::new(), true).unwrap();
        let root = &tree.nodes[0];
        assert_eq!(root.mu, Inclination::NegInf);
        assert_eq!(root.nu, 1);
        assert!(root.c.is_zero());
        assert_eq!(root.min_poly(), &QPoly::from_ints(&[-1, 1]));
        assert_eq!(root.shifted, f);
    }

    #[test]
    fn sqrt_poly_has_two_exact_solutions() {
        let f = sqrt_poly();
        let (tree, sols) = expand(&f, &Budget::default(), &ParamAssignments::new(), true).unwrap();
        let exact: Vec<&PuiseuxSolution> = sols
            .iter()
            .filter(|s| s.kind == SolutionKind::ExactLeaf)
            .collect();
        assert_eq!(exact.len(), 2);
        assert_eq!(sols.len(), 2, "no spurious families");
        for s in &exact {
            assert_eq!(s.nu, 2);
            assert_eq!(s.field_min_poly, QPoly::from_ints(&[-1, 1]));
            assert_eq!(s.residual, ResidualCertificate::ExactZero);
            assert_eq!(s.series.terms().len(), 1);
            assert_eq!(s.series.terms()[0].exp, rat(1, 2));
        }
        let coeffs: Vec<Rat> = exact
            .iter()
            .map(|s| s.series.terms()[0].coeff.as_rat().unwrap())
            .collect();
        assert!(coeffs.contains(&rint(1)) && coeffs.contains(&rint(-1)));
        assert!(theorem_bounds_check(&tree).ok());
    }

    #[test]
    fn exponential_truncation() {
        let f = linear_ode();
        let budget = Budget {
            max_exponent: rint(4),
            ..Budget::default()
        };
        let (tree, sols) = expand(&f, &budget, &ParamAssignments::new(), true).unwrap();
        let truncated: Vec<&PuiseuxSolution> = sols
            .iter()
            .filter(|s| s.kind == SolutionKind::Truncated)
            .collect();
        assert_eq!(truncated.len(), 1);
        let t = truncated[0];
        let expect = [
            (rint(1), rint(1)),
            (rat(1, 2), rint(2)),
            (rat(1, 6), rint(3)),
            (rat(1, 24), rint(4)),
        ];
        assert_eq!(t.series.terms().len(), 4);
        for (term, (c, e)) in t.series.terms().iter().zip(&expect) {
            assert_eq!(&term.coeff.as_rat().unwrap(), c);
            assert_eq!(&term.exp, e);
        }
        // the unknown tail starts strictly beyond the budget
        assert!(t.series.truncation().unwrap() > &rint(4));
        assert_eq!(t.residual, ResidualCertificate::OrderAtLeast(rint(4)));

        let families: Vec<&PuiseuxSolution> = sols
            .iter()
            .filter(|s| s.kind == SolutionKind::ParametricFamily)
            .collect();
        assert_eq!(families.len(), 1);
        let fam = families[0].free_parameters.as_ref().unwrap();
        assert_eq!(fam.mu, Some(rint(0)));
        assert!(theorem_bounds_check(&tree).ok());
    }

    #[test]
    fn materializing_the_constant_family() {
        // assigning c0 = 3 to the mu = 0 family of y' - y - 1 continues the
        // branch as 3 + 4x + 2x^2 + ... = 4 e^x - 1
        let f = linear_ode();
        let budget = Budget {
            max_exponent: rint(3),
            ..Budget::default()
        };
        let mut params = ParamAssignments::new();
        params.insert("c0".into(), ParamValue::Rational(rint(3)));
        let (_, sols) = expand(&f, &budget, &params, true).unwrap();
        let truncated: Vec<&PuiseuxSolution> = sols
            .iter()
            .filter(|s| s.kind == SolutionKind::Truncated)
            .collect();
        // one truncation from the main chain, one from the materialized branch
        assert_eq!(truncated.len(), 2);
        let with_const = truncated
            .iter()
            .find(|s| s.series.terms().first().map(|t| t.exp.clone()) == Some(rint(0)))
            .expect("materialized branch present");
        let coeffs: Vec<Rat> = with_const
            .series
            .terms()
            .iter()
            .map(|t| t.coeff.as_rat().unwrap())
            .collect();
        assert_eq!(coeffs, vec![rint(3), rint(4), rint(2), rat(2, 3)]);
    }

    #[test]
    fn continuum_polynomial_reports_a_continuum() {
        let f = continuum_poly();
        let (tree, sols) = expand(&f, &Budget::default(), &ParamAssignments::new(), true).unwrap();
        let continuum: Vec<&PuiseuxSolution> = sols
            .iter()
            .filter(|s| s.kind == SolutionKind::ContinuumFamily)
            .collect();
        assert_eq!(continuum.len(), 1);
        let c = continuum[0];
        let (lo, hi) = c.free_parameters.as_ref().unwrap().mu_range.clone().unwrap();
        assert_eq!(lo, Inclination::NegInf);
        assert_eq!(hi, Inclination::PosInf);
        // y = 0 is also an exact solution and is reported through the
        // +infinity son
        let exact: Vec<&PuiseuxSolution> = sols
            .iter()
            .filter(|s| s.kind == SolutionKind::ExactLeaf)
            .collect();
        assert_eq!(exact.len(), 1);
        assert!(exact[0].series.is_zero());
        assert!(theorem_bounds_check(&tree).ok());
    }

    #[test]
    fn extension_field_branch() {
        // y0^2 - 2x: the characteristic polynomial C^2 - 2 forces sqrt(2)
        let f = DiffPoly::from_terms(q(), vec![mono(1, (0, 1), &[2]), mono(-2, (1, 1), &[0])]);
        let (tree, sols) = expand(&f, &Budget::default(), &ParamAssignments::new(), true).unwrap();
        let exact: Vec<&PuiseuxSolution> = sols
            .iter()
            .filter(|s| s.kind == SolutionKind::ExactLeaf)
            .collect();
        // one branch per irreducible factor: the conjugate pair shares it
        assert_eq!(exact.len(), 1);
        let s = exact[0];
        assert_eq!(s.field_min_poly, QPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(s.nu, 2);
        assert_eq!(s.residual, ResidualCertificate::ExactZero);
        // degree bound: level-1 field degree 2 <= 2^1
        assert!(theorem_bounds_check(&tree).ok());
    }

    #[test]
    fn no_solutions_for_unsatisfiable_input() {
        // F = 1: the root has no branches and emits nothing
        let f = DiffPoly::from_terms(q(), vec![mono(1, (0, 1), &[0])]);
        let (tree, sols) = expand(&f, &Budget::default(), &ParamAssignments::new(), true).unwrap();
        assert!(sols.is_empty());
        assert_eq!(tree.nodes.len(), 1);
        assert_eq!(tree.nodes[0].status, NodeStatus::Expandable);
    }

    #[test]
    fn zero_input_is_an_error() {
        let f = DiffPoly::zero(q());
        assert!(expand(&f, &Budget::default(), &ParamAssignments::new(), true).is_err());
    }

    #[test]
    fn second_order_ramified_exact_solution() {
        // y'' = x + x^(1/2): exact solution (4/15) x^(5/2) + (1/6) x^3
        let f = DiffPoly::from_terms(
            q(),
            vec![
                mono(1, (0, 1), &[0, 0, 1]),
                mono(-1, (1, 2), &[0, 0, 0]),
                mono(-1, (1, 1), &[0, 0, 0]),
            ],
        );
        let (_, sols) = expand(&f, &Budget::default(), &ParamAssignments::new(), true).unwrap();
        let exact: Vec<&PuiseuxSolution> = sols
            .iter()
            .filter(|s| s.kind == SolutionKind::ExactLeaf)
            .collect();
        assert_eq!(exact.len(), 1);
        let s = exact[0];
        let terms: Vec<(Rat, Rat)> = s
            .series
            .terms()
            .iter()
            .map(|t| (t.coeff.as_rat().unwrap(), t.exp.clone()))
            .collect();
        assert_eq!(terms, vec![(rat(4, 15), rat(5, 2)), (rat(1, 6), rint(3))]);
        assert_eq!(s.nu, 2);
        // parametric families from the vertex roots of mu(mu-1): exponents 0, 1
        let fams: Vec<Rat> = sols
            .iter()
            .filter(|s| s.kind == SolutionKind::ParametricFamily)
            .map(|s| s.free_parameters.as_ref().unwrap().mu.clone().unwrap())
            .collect();
        assert!(fams.contains(&rint(0)) && fams.contains(&rint(1)));
    }

    #[test]
    fn leaf_test_is_literal() {
        // after the c = 1, mu = 1/2 branch of y0^2 - x the shifted
        // polynomial is y0^2 + 2 x^(1/2) y0: its bottom vertex still has an
        // open direction range, so the node itself is not a leaf; the branch
        // terminates through the +infinity son, which is one.
        let f = sqrt_poly();
        let (tree, sols) = expand(&f, &Budget::default(), &ParamAssignments::new(), true).unwrap();
        let sons: Vec<&TreeNode> = tree
            .nodes
            .iter()
            .filter(|n| n.parent == Some(0) && !n.c.is_zero())
            .collect();
        assert_eq!(sons.len(), 2);
        for son in sons {
            assert!(!is_leaf(son, true).unwrap());
            assert!(son.shifted.constant_part().is_zero());
        }
        let leaves: Vec<&TreeNode> = tree
            .nodes
            .iter()
            .filter(|n| n.status == NodeStatus::Leaf)
            .collect();
        assert_eq!(leaves.len(), 2);
        for leaf in leaves {
            assert_eq!(leaf.mu, Inclination::PosInf);
            assert!(is_leaf(leaf, true).unwrap());
        }
        assert_eq!(sols.len(), 2);
    }

    #[test]
    fn root_field_follows_the_input() {
        // input with sqrt(2) coefficients: y0 - sqrt(2) x
        let field = NumberField::new(QPoly::from_ints(&[-2, 0, 1]), "t").unwrap();
        let s = AlgNum::generator(field.clone());
        let f = DiffPoly::from_terms(
            field.clone(),
            vec![
                crate::diffpoly::DiffMonomial {
                    coeff: AlgNum::one(field.clone()),
                    xexp: rint(0),
                    alpha: vec![1],
                },
                crate::diffpoly::DiffMonomial {
                    coeff: s.neg(),
                    xexp: rint(1),
                    alpha: vec![0],
                },
            ],
        );
        let (tree, sols) = expand(&f, &Budget::default(), &ParamAssignments::new(), true).unwrap();
        assert_eq!(tree.nodes[0].field, field);
        let exact: Vec<_> = sols.iter().filter(|x| x.kind == SolutionKind::ExactLeaf).collect();
        assert_eq!(exact.len(), 1);
        assert_eq!(exact[0].series.terms()[0].coeff, s);
    }

    #[test]
    fn mu_strictly_increases_along_branches() {
        let f = linear_ode();
        let budget = Budget {
            max_exponent: rint(5),
            ..Budget::default()
        };
        let (tree, _) = expand(&f, &budget, &ParamAssignments::new(), true).unwrap();
        for node in &tree.nodes {
            if let Some(pid) = node.parent {
                if !node.c.is_zero() {
                    assert!(node.mu > tree.nodes[pid].mu);
                }
                assert_eq!(node.level, tree.nodes[pid].level + 1);
            }
        }
    }

    #[test]
    fn nu_divides_all_partial_exponents() {
        let f = sqrt_poly();
        let (tree, _) = expand(&f, &Budget::default(), &ParamAssignments::new(), true).unwrap();
        for node in &tree.nodes {
            for (_, exp) in &node.partial_sum {
                let d = crate::rat::denom_u64(exp).unwrap();
                assert_eq!(node.nu % d, 0);
            }
        }
    }
}
