//! Existential chain formulas pinning down affine combinations.
//!
//! For rationals `xi_0..xi_k` summing to one, [`synth_phi`] builds a
//! conjunction of atoms `u_a u_b q = u_c` (every `q` in the open unit interval
//! of the ring) together with bindings of some `u_i` to the inputs `x_j` and
//! the output `y`. The formula is satisfiable for inputs `a_j` and output `b`
//! exactly when `b = sum xi_j a_j`.
//!
//! Two coefficients are handled by a chain laid out on the line through
//! `x_0` and `x_1`. With `p` the smallest inverted prime and `xi_1 = u'/v'`
//! rescaled so that `v' > p`, the variable at position `i` stands for
//! `x_0 + (i/v')(x_1 - x_0)`; `x_0` sits at position 0, `x_1` at `v'` and `y`
//! at `u'`. Forward atoms `u_i u_{i+p} (1/p) = u_{i+1}` plus as many reversed
//! atoms `u_j u_{j-p} (1/p) = u_{j-1}` from the top as needed make the system
//! square; its unique solvability is checked exactly. More coefficients are
//! split by sign and joined with one more chain.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::hull_member_q;
use crate::mode::Point;
use crate::scalar::{interval_member, smallest_inverted_prime, Rational, RingSpec};

/// How many times a singular chain layout is extended before giving up.
pub const CHAIN_RETRIES: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Binding {
    /// `x_input = u_var`
    Input { var: usize, input: usize },
    /// `y = u_var`
    Output { var: usize },
}

/// `u_left u_right param = u_result`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRelation {
    pub left: usize,
    pub right: usize,
    pub param: Rational,
    pub result: usize,
}

/// Synthesis tree mirroring the recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum FormulaNode {
    /// Output equals one input.
    Identity { input: String },
    Chain {
        coefficients: [Rational; 2],
        /// `u'` and `v'`: output and second-input positions after rescaling
        output_position: i64,
        scale: i64,
        /// `(position, variable)` for every chain variable
        positions: Vec<(i64, usize)>,
        retries: usize,
    },
    Split {
        /// original coefficient indices of the two groups
        first: Vec<usize>,
        second: Vec<usize>,
        kappa: [Rational; 2],
        eta: Vec<Rational>,
        tau: Vec<Rational>,
        first_node: Box<FormulaNode>,
        second_node: Box<FormulaNode>,
        join: Box<FormulaNode>,
    },
}

/// A solved-form existential formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainFormula {
    pub arity: usize,
    pub ring: RingSpec,
    pub prime: u64,
    pub coefficients: Vec<Rational>,
    pub variables: usize,
    pub bindings: Vec<Binding>,
    pub relations: Vec<ChainRelation>,
    pub tree: FormulaNode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Slot {
    Input(usize),
    Output,
    Var(usize),
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Input(j) => write!(f, "x{j}"),
            Slot::Output => write!(f, "y"),
            Slot::Var(v) => write!(f, "u{v}"),
        }
    }
}

struct Builder {
    prime: u64,
    variables: usize,
    bindings: Vec<Binding>,
    relations: Vec<ChainRelation>,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.variables += 1;
        self.variables - 1
    }

    /// The variable standing for `slot`, creating and binding one if needed.
    fn materialize(&mut self, slot: &Slot) -> usize {
        match slot {
            Slot::Var(v) => *v,
            Slot::Input(j) => {
                let v = self.fresh();
                self.bindings.push(Binding::Input { var: v, input: *j });
                v
            }
            Slot::Output => {
                let v = self.fresh();
                self.bindings.push(Binding::Output { var: v });
                v
            }
        }
    }

    fn identity(&mut self, input: &Slot, out: &Slot) -> Result<FormulaNode> {
        match (input, out) {
            (Slot::Input(j), Slot::Var(v)) => self.bindings.push(Binding::Input { var: *v, input: *j }),
            (Slot::Var(v), Slot::Output) => self.bindings.push(Binding::Output { var: *v }),
            (Slot::Input(_), Slot::Output) => {
                let v = self.materialize(input);
                self.bindings.push(Binding::Output { var: v });
            }
            _ => {
                return Err(Error::Synthesis(format!(
                    "cannot identify {input} with {out}"
                )))
            }
        }
        Ok(FormulaNode::Identity {
            input: input.to_string(),
        })
    }

    fn build(&mut self, terms: Vec<(Slot, Rational)>, out: Slot) -> Result<FormulaNode> {
        let terms: Vec<(Slot, Rational)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        match terms.len() {
            0 => Err(Error::Synthesis("no nonzero coefficient".into())),
            1 => {
                debug_assert!(terms[0].1.is_one());
                self.identity(&terms[0].0, &out)
            }
            2 => self.chain(&terms[0].0, &terms[1].0, &terms[0].1, &terms[1].1, &out),
            _ => self.split(terms, out),
        }
    }

    fn split(&mut self, terms: Vec<(Slot, Rational)>, out: Slot) -> Result<FormulaNode> {
        let negative: Vec<usize> = (0..terms.len()).filter(|&i| terms[i].1.is_negative()).collect();
        let first: Vec<usize> = if negative.is_empty() { vec![0] } else { negative };
        let second: Vec<usize> = (0..terms.len()).filter(|i| !first.contains(i)).collect();
        let kappa0: Rational = first.iter().map(|&i| &terms[i].1).sum();
        let kappa1: Rational = second.iter().map(|&i| &terms[i].1).sum();
        let eta: Vec<Rational> = first.iter().map(|&i| &terms[i].1 / &kappa0).collect();
        let tau: Vec<Rational> = second.iter().map(|&i| &terms[i].1 / &kappa1).collect();

        let group = |idx: &[usize], weights: &[Rational], b: &mut Builder| -> Result<(Slot, FormulaNode)> {
            if idx.len() == 1 {
                let slot = terms[idx[0]].0.clone();
                let node = FormulaNode::Identity {
                    input: slot.to_string(),
                };
                return Ok((slot, node));
            }
            let z = b.fresh();
            let sub: Vec<(Slot, Rational)> = idx
                .iter()
                .zip(weights)
                .map(|(&i, w)| (terms[i].0.clone(), w.clone()))
                .collect();
            let node = b.build(sub, Slot::Var(z))?;
            Ok((Slot::Var(z), node))
        };
        let (z0, first_node) = group(&first, &eta, self)?;
        let (z1, second_node) = group(&second, &tau, self)?;
        let join = self.chain(&z0, &z1, &kappa0, &kappa1, &out)?;

        let index_of = |i: usize| match &terms[i].0 {
            Slot::Input(j) => *j,
            _ => unreachable!("split groups range over inputs"),
        };
        Ok(FormulaNode::Split {
            first: first.iter().map(|&i| index_of(i)).collect(),
            second: second.iter().map(|&i| index_of(i)).collect(),
            kappa: [kappa0, kappa1],
            eta,
            tau,
            first_node: Box::new(first_node),
            second_node: Box::new(second_node),
            join: Box::new(join),
        })
    }

    /// `out = c0 * s0 + c1 * s1` with `c0 + c1 = 1`, both nonzero.
    fn chain(&mut self, s0: &Slot, s1: &Slot, c0: &Rational, c1: &Rational, out: &Slot) -> Result<FormulaNode> {
        let p = self.prime as i64;
        let den = c1.denom().to_i64().ok_or_else(|| Error::Synthesis("denominator too large".into()))?;
        let num = c1.numer().to_i64().ok_or_else(|| Error::Synthesis("numerator too large".into()))?;
        let mult = p / den + 1;
        let scale = den * mult;
        let target = num * mult;
        let lo = 0.min(target);
        // p - 2 reversed atoms need at least 2p - 2 positions
        let base_hi = scale.max(target).max(lo + 2 * p - 3);

        for extra in 0..=CHAIN_RETRIES as i64 {
            let hi = base_hi + extra;
            let Some(layout) = chain_layout(p, lo, hi, scale) else {
                continue;
            };
            let positions: Vec<i64> = (lo..=hi).collect();
            let mut var_at = BTreeMap::new();
            for &pos in &positions {
                let v = if pos == 0 {
                    self.materialize(s0)
                } else if pos == scale {
                    self.materialize(s1)
                } else if pos == target {
                    self.materialize(out)
                } else {
                    self.fresh()
                };
                var_at.insert(pos, v);
            }
            let q = Rational::frac(1, p);
            for (a, b, c) in layout {
                self.relations.push(ChainRelation {
                    left: var_at[&a],
                    right: var_at[&b],
                    param: q.clone(),
                    result: var_at[&c],
                });
            }
            return Ok(FormulaNode::Chain {
                coefficients: [c0.clone(), c1.clone()],
                output_position: target,
                scale,
                positions: var_at.into_iter().collect(),
                retries: extra as usize,
            });
        }
        Err(Error::Synthesis(format!(
            "no uniquely solvable chain for coefficient {c1} with p = {p} within {CHAIN_RETRIES} extensions"
        )))
    }
}

/// Atoms `(left, right, result)` by position for the chain on `lo..=hi`, or
/// `None` when the layout is not uniquely solvable for the free positions.
fn chain_layout(p: i64, lo: i64, hi: i64, scale: i64) -> Option<Vec<(i64, i64, i64)>> {
    let unknowns = (hi - lo + 1 - 2) as usize;
    let mut atoms: Vec<(i64, i64, i64)> = (lo..=hi - p).map(|i| (i, i + p, i + 1)).collect();
    let mut j = hi;
    while atoms.len() < unknowns && j - p >= lo {
        atoms.push((j, j - p, j - 1));
        j -= 1;
    }
    if atoms.len() != unknowns {
        return None;
    }
    // unique solvability: the coefficient matrix on the free positions must be regular
    let fixed = |pos: i64| pos == 0 || pos == scale;
    let q = Rational::frac(1, p);
    let one_minus_q = Rational::one() - &q;
    let rows: Vec<SparseRow> = atoms
        .iter()
        .map(|&(a, b, c)| {
            let mut row = SparseRow::new(0);
            for (pos, coeff) in [(a, one_minus_q.clone()), (b, q.clone()), (c, -Rational::one())] {
                if !fixed(pos) {
                    row.add((pos - lo) as usize, &coeff);
                }
            }
            row
        })
        .collect();
    let free: Vec<usize> = (lo..=hi).filter(|&x| !fixed(x)).map(|x| (x - lo) as usize).collect();
    match sparse_solve(rows, &free, 0) {
        SparseOutcome::Unique(_) => Some(atoms),
        _ => None,
    }
}

#[derive(Clone, Debug)]
struct SparseRow {
    coeffs: BTreeMap<usize, Rational>,
    rhs: Vec<Rational>,
}

impl SparseRow {
    fn new(width: usize) -> Self {
        SparseRow {
            coeffs: BTreeMap::new(),
            rhs: vec![Rational::zero(); width],
        }
    }

    fn add(&mut self, var: usize, c: &Rational) {
        let e = self.coeffs.entry(var).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&var);
        }
    }

    /// `self += f * other`
    fn axpy(&mut self, f: &Rational, other: &SparseRow) {
        for (v, c) in &other.coeffs {
            self.add(*v, &(f * c));
        }
        for (a, b) in self.rhs.iter_mut().zip(&other.rhs) {
            *a += f * b;
        }
    }
}

enum SparseOutcome {
    Unique(BTreeMap<usize, Vec<Rational>>),
    /// consistent, with one solution (free unknowns set to zero)
    Underdetermined(BTreeMap<usize, Vec<Rational>>),
    Inconsistent,
}

/// Sparse Gaussian elimination over the listed unknowns, eliminating in the
/// given order with the shortest available pivot row.
fn sparse_solve(rows: Vec<SparseRow>, unknowns: &[usize], width: usize) -> SparseOutcome {
    let mut rows: Vec<Option<SparseRow>> = rows.into_iter().map(Some).collect();
    let mut occurs: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        for v in r.as_ref().expect("fresh row").coeffs.keys() {
            occurs.entry(*v).or_default().insert(i);
        }
    }
    let mut pivots: Vec<(usize, SparseRow)> = Vec::new();
    let mut free = Vec::new();
    for &v in unknowns {
        let holders: Vec<usize> = occurs.remove(&v).unwrap_or_default().into_iter().collect();
        let best = holders
            .iter()
            .copied()
            .min_by_key(|&i| rows[i].as_ref().map_or(usize::MAX, |r| r.coeffs.len()));
        let Some(bi) = best else {
            free.push(v);
            continue;
        };
        let pivot = rows[bi].take().expect("pivot row present");
        for w in pivot.coeffs.keys() {
            if let Some(set) = occurs.get_mut(w) {
                set.remove(&bi);
            }
        }
        let pc = pivot.coeffs[&v].clone();
        for &i in holders.iter().filter(|&&i| i != bi) {
            let r = rows[i].as_mut().expect("holder row present");
            let f = -(&r.coeffs[&v] / &pc);
            let before: BTreeSet<usize> = r.coeffs.keys().copied().collect();
            r.axpy(&f, &pivot);
            for w in pivot.coeffs.keys() {
                let has = r.coeffs.contains_key(w);
                if has && !before.contains(w) {
                    occurs.entry(*w).or_default().insert(i);
                } else if !has && before.contains(w) {
                    if let Some(set) = occurs.get_mut(w) {
                        set.remove(&i);
                    }
                }
            }
        }
        pivots.push((v, pivot));
    }
    let rows: Vec<SparseRow> = rows.into_iter().flatten().collect();
    for r in &rows {
        debug_assert!(r.coeffs.is_empty());
        if r.rhs.iter().any(|x| !x.is_zero()) {
            return SparseOutcome::Inconsistent;
        }
    }
    let mut values: BTreeMap<usize, Vec<Rational>> = free
        .iter()
        .map(|&v| (v, vec![Rational::zero(); width]))
        .collect();
    for (v, row) in pivots.iter().rev() {
        let mut val = row.rhs.clone();
        for (w, c) in &row.coeffs {
            if w == v {
                continue;
            }
            for (acc, x) in val.iter_mut().zip(&values[w]) {
                *acc -= &(c * x);
            }
        }
        let pc = &row.coeffs[v];
        values.insert(*v, val.into_iter().map(|x| x / pc).collect());
    }
    if free.is_empty() {
        SparseOutcome::Unique(values)
    } else {
        SparseOutcome::Underdetermined(values)
    }
}

/// Builds the chain formula for `xi` over the ring.
pub fn synth_phi(xi: &[Rational], ring: &RingSpec) -> Result<ChainFormula> {
    if xi.is_empty() {
        return Err(Error::EmptyInput("coefficient vector"));
    }
    let total: Rational = xi.iter().sum();
    if !total.is_one() {
        return Err(Error::CoefficientSum(total));
    }
    let mut b = Builder {
        prime: smallest_inverted_prime(ring),
        variables: 0,
        bindings: Vec::new(),
        relations: Vec::new(),
    };
    let terms = xi
        .iter()
        .enumerate()
        .map(|(j, c)| (Slot::Input(j), c.clone()))
        .collect();
    let tree = b.build(terms, Slot::Output)?;
    let phi = ChainFormula {
        arity: xi.len(),
        ring: ring.clone(),
        prime: b.prime,
        coefficients: xi.to_vec(),
        variables: b.variables,
        bindings: b.bindings,
        relations: b.relations,
        tree,
    };
    if !verify_phi(&phi, xi)? {
        return Err(Error::Synthesis("synthesized formula failed verification".into()));
    }
    Ok(phi)
}

enum Solved {
    Unique(Vec<Vec<Rational>>),
    Underdetermined(Vec<Vec<Rational>>),
    Inconsistent,
}

impl ChainFormula {
    pub fn output_var(&self) -> Option<usize> {
        self.bindings.iter().find_map(|b| match b {
            Binding::Output { var } => Some(*var),
            _ => None,
        })
    }

    pub fn parameters_in_ring(&self) -> bool {
        self.relations
            .iter()
            .all(|r| interval_member(&r.param, &self.ring, true))
    }

    /// Solves the atoms for the unbound variables given values (of common
    /// length `width`) for the inputs and, optionally, the output.
    fn solve(&self, inputs: &[Vec<Rational>], output: Option<&[Rational]>, width: usize) -> Solved {
        let mut known: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        let mut pin = |var: usize, val: &[Rational]| -> bool {
            match known.get(&var) {
                Some(prev) => prev.as_slice() == val,
                None => {
                    known.insert(var, val.to_vec());
                    true
                }
            }
        };
        for b in &self.bindings {
            let ok = match b {
                Binding::Input { var, input } => pin(*var, &inputs[*input]),
                Binding::Output { var } => match output {
                    Some(o) => pin(*var, o),
                    None => true,
                },
            };
            if !ok {
                return Solved::Inconsistent;
            }
        }
        let unknowns: Vec<usize> = (0..self.variables).filter(|v| !known.contains_key(v)).collect();
        let one_minus = |q: &Rational| Rational::one() - q;
        let rows: Vec<SparseRow> = self
            .relations
            .iter()
            .map(|r| {
                let mut row = SparseRow::new(width);
                for (var, coeff) in [
                    (r.left, one_minus(&r.param)),
                    (r.right, r.param.clone()),
                    (r.result, -Rational::one()),
                ] {
                    match known.get(&var) {
                        Some(val) => {
                            for (acc, x) in row.rhs.iter_mut().zip(val) {
                                *acc -= &(&coeff * x);
                            }
                        }
                        None => row.add(var, &coeff),
                    }
                }
                row
            })
            .collect();
        let assemble = |mut vals: BTreeMap<usize, Vec<Rational>>| -> Vec<Vec<Rational>> {
            vals.extend(known.clone());
            (0..self.variables).map(|v| vals.remove(&v).expect("every variable solved")).collect()
        };
        match sparse_solve(rows, &unknowns, width) {
            SparseOutcome::Unique(v) => Solved::Unique(assemble(v)),
            SparseOutcome::Underdetermined(v) => Solved::Underdetermined(assemble(v)),
            SparseOutcome::Inconsistent => Solved::Inconsistent,
        }
    }

    /// Symbolic value of every variable as coefficients over `x_0..x_k`, when
    /// the inputs determine all of them.
    pub fn symbolic_solution(&self) -> Option<Vec<Vec<Rational>>> {
        let k1 = self.arity;
        let basis: Vec<Vec<Rational>> = (0..k1)
            .map(|j| (0..k1).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        match self.solve(&basis, None, k1) {
            Solved::Unique(v) => Some(v),
            _ => None,
        }
    }

    /// Paper-style rendering `(∃u0)…(∃um)(x0 = u0 & … & y = um)`.
    pub fn to_text(&self) -> String {
        if self.relations.is_empty() {
            if let [Binding::Input { input, .. }, Binding::Output { .. }] = self.bindings.as_slice() {
                return format!("y = x{input}");
            }
        }
        let mut atoms: Vec<String> = Vec::new();
        for b in &self.bindings {
            if let Binding::Input { var, input } = b {
                atoms.push(format!("x{input} = u{var}"));
            }
        }
        for r in &self.relations {
            atoms.push(format!("u{} u{} {} = u{}", r.left, r.right, r.param, r.result));
        }
        for b in &self.bindings {
            if let Binding::Output { var } = b {
                atoms.push(format!("y = u{var}"));
            }
        }
        let quants: String = (0..self.variables).map(|v| format!("(∃u{v})")).collect();
        format!("{quants}({})", atoms.join(" & "))
    }
}

impl fmt::Display for ChainFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// True iff the atoms determine every variable from the inputs and the
/// output variable equals `sum xi_j x_j` identically.
pub fn verify_phi(phi: &ChainFormula, xi: &[Rational]) -> Result<bool> {
    if xi.len() != phi.arity {
        return Err(Error::DimensionMismatch {
            expected: phi.arity,
            found: xi.len(),
        });
    }
    let Some(out) = phi.output_var() else {
        return Ok(false);
    };
    Ok(match phi.symbolic_solution() {
        Some(values) => values[out] == xi,
        None => false,
    })
}

fn check_assignment(phi: &ChainFormula, a: &[Point], b: &Point) -> Result<usize> {
    if a.len() != phi.arity {
        return Err(Error::DimensionMismatch {
            expected: phi.arity,
            found: a.len(),
        });
    }
    let n = b.dim();
    if let Some(bad) = a.iter().find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    Ok(n)
}

/// A satisfying assignment of all existential variables for inputs `a` and
/// output `b`, or `None` if the formula fails there.
pub fn check_satisfaction(phi: &ChainFormula, a: &[Point], b: &Point) -> Result<Option<Vec<Point>>> {
    let n = check_assignment(phi, a, b)?;
    let inputs: Vec<Vec<Rational>> = a.iter().map(|p| p.coords().to_vec()).collect();
    Ok(match phi.solve(&inputs, Some(b.coords()), n) {
        Solved::Unique(v) | Solved::Underdetermined(v) => Some(v.into_iter().map(Point::new).collect()),
        Solved::Inconsistent => None,
    })
}

/// Satisfaction inside `C = Cnv_Q(generators)`: the bindings must lie in `C`
/// and so must every witness variable.
pub fn membership_in_convex(
    phi: &ChainFormula,
    generators: &[Point],
    a: &[Point],
    b: &Point,
) -> Result<bool> {
    check_assignment(phi, a, b)?;
    for pt in a.iter().chain(std::iter::once(b)) {
        if hull_member_q(pt, generators)?.is_none() {
            return Ok(false);
        }
    }
    let Some(witness) = check_satisfaction(phi, a, b)? else {
        return Ok(false);
    };
    for w in &witness {
        if hull_member_q(w, generators)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parses `"-1/2, 3/2"` into coefficients.
pub fn parse_coefficients(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|c| c.trim().parse()).collect()
}

/// All `(position, var)` pairs of chain nodes in the tree, for inspection.
pub fn chain_nodes(node: &FormulaNode) -> Vec<&FormulaNode> {
    let mut out = Vec::new();
    fn walk<'a>(n: &'a FormulaNode, out: &mut Vec<&'a FormulaNode>) {
        match n {
            FormulaNode::Chain { .. } => out.push(n),
            FormulaNode::Split {
                first_node,
                second_node,
                join,
                ..
            } => {
                walk(first_node, out);
                walk(second_node, out);
                walk(join, out);
            }
            FormulaNode::Identity { .. } => {}
        }
    }
    walk(node, &mut out);
    out
}
