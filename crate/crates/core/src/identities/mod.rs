//! Identity registry and the coefficient-comparison harness.
//!
//! An [`IdentityEntry`] holds two or three independently built expressions
//! for the same series. [`check`] evaluates each of them to the requested
//! order and reports the first exponent at which any two disagree.

mod registry;
pub mod theorems;
pub mod transforms;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::enumeration::{SepConfig, Variant};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::series::{LaurentSeries, Monomial};

pub use transforms::{
    sample_valid, Asv, Heine, HeineLimit, IteratedHeine, PartialTheta, PartialThetaCorollary,
    Transformation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExprTag {
    /// Direct enumeration.
    Oracle,
    /// A sum assembled from the combinatorial decomposition, or the left side
    /// of a transformation.
    Construction,
    /// The stated closed form, or the right side of a transformation.
    Closed,
}

impl ExprTag {
    pub fn name(self) -> &'static str {
        match self {
            ExprTag::Oracle => "oracle",
            ExprTag::Construction => "construction",
            ExprTag::Closed => "closed",
        }
    }
}

impl fmt::Display for ExprTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ExprTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "oracle" => Ok(ExprTag::Oracle),
            "construction" => Ok(ExprTag::Construction),
            "closed" => Ok(ExprTag::Closed),
            _ => Err(format!("unknown expression tag `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Theorem,
    Background,
    Reduction,
    Auxiliary,
    Transformation,
}

/// Builds component `i` of an expression, known below the given truncation.
pub type Builder = Arc<dyn Fn(usize, i64) -> Result<LaurentSeries> + Send + Sync>;

#[derive(Clone)]
pub struct Expression {
    pub tag: ExprTag,
    build: Builder,
}

impl Expression {
    pub fn new(tag: ExprTag, build: impl Fn(usize, i64) -> Result<LaurentSeries> + Send + Sync + 'static) -> Self {
        Expression {
            tag,
            build: Arc::new(build),
        }
    }

    /// Single-component expression.
    pub fn single(tag: ExprTag, build: impl Fn(i64) -> Result<LaurentSeries> + Send + Sync + 'static) -> Self {
        Expression::new(tag, move |_, t| build(t))
    }

    /// Component `i`, exact below `order`.
    ///
    /// Builders that pass through Laurent intermediates may come back short;
    /// they are rerun with the shortfall added until the window is reached.
    pub fn evaluate(&self, i: usize, order: i64) -> Result<LaurentSeries> {
        let mut t = order;
        let mut got = order;
        for _ in 0..8 {
            let s = (self.build)(i, t)?;
            got = s.trunc();
            if got >= order {
                return Ok(s.truncate(order));
            }
            t += order - got;
        }
        Err(Error::OutOfPrecision {
            exponent: order,
            trunc: got,
        })
    }
}

impl fmt::Debug for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expression({})", self.tag)
    }
}

#[derive(Clone, Debug)]
pub struct IdentityEntry {
    pub id: String,
    pub group: Group,
    pub description: String,
    /// The identity written out as a formula.
    pub anchor: String,
    /// Smallest order that is accepted.
    pub min_order: i64,
    /// Order used when verifying the whole registry.
    pub default_order: i64,
    /// Generating functions this entry gives a closed form for.
    pub families: Vec<(SepConfig, Variant)>,
    /// Number of independent series compared (1 except for parameter sweeps).
    pub components: usize,
    pub expressions: Vec<Expression>,
}

impl IdentityEntry {
    pub fn expression(&self, tag: ExprTag) -> Option<&Expression> {
        self.expressions.iter().find(|e| e.tag == tag)
    }

    pub fn tags(&self) -> Vec<ExprTag> {
        self.expressions.iter().map(|e| e.tag).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub exponent: i64,
    /// Which component disagreed, for entries with more than one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    /// Coefficient of `q^exponent` per expression tag, as exact `p/q` strings.
    pub values: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub order: i64,
    pub status: CheckStatus,
    pub mismatch: Option<Mismatch>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(f, "{} order {}: pass", self.id, self.order),
            Some(m) => {
                write!(f, "{} order {}: FAIL at q^{}", self.id, self.order, m.exponent)?;
                if let Some(c) = m.component {
                    write!(f, " (component {c})")?;
                }
                for (tag, v) in &m.values {
                    write!(f, " {tag}={v}")?;
                }
                Ok(())
            }
        }
    }
}

/// Adds `coeff * q^exponent` to one expression before comparing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perturbation {
    pub tag: ExprTag,
    pub exponent: i64,
    pub coeff: Rational,
}

impl Perturbation {
    pub fn new(tag: ExprTag, exponent: i64) -> Self {
        Perturbation {
            tag,
            exponent,
            coeff: rational::int(1),
        }
    }
}

/// `p/q` with the denominator always present.
pub fn exact_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn registry() -> &'static [IdentityEntry] {
    static REGISTRY: OnceLock<Vec<IdentityEntry>> = OnceLock::new();
    REGISTRY.get_or_init(registry::build)
}

pub fn lookup(id: &str) -> Result<&'static IdentityEntry> {
    registry()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// The entry giving a closed form for this generating function, if any.
pub fn closed_form_entry(cfg: &SepConfig, variant: Variant) -> Option<&'static IdentityEntry> {
    registry().iter().find(|e| {
        e.families.contains(&(*cfg, variant)) && e.expression(ExprTag::Closed).is_some()
    })
}

pub fn check(id: &str, order: i64) -> Result<CheckReport> {
    check_with(id, order, None)
}

pub fn check_with(id: &str, order: i64, perturbation: Option<&Perturbation>) -> Result<CheckReport> {
    let entry = lookup(id)?;
    if order < entry.min_order {
        return Err(Error::PreconditionViolated(format!(
            "order {order} is below the minimum {} for {id}",
            entry.min_order
        )));
    }
    if let Some(p) = perturbation {
        if entry.expression(p.tag).is_none() {
            return Err(Error::PreconditionViolated(format!("{id} has no {} expression", p.tag)));
        }
    }
    compare(&entry.id, order, entry.components, &entry.expressions, perturbation)
}

/// Evaluate every expression component by component and report the first
/// disagreement.
pub fn compare(
    id: &str,
    order: i64,
    components: usize,
    expressions: &[Expression],
    perturbation: Option<&Perturbation>,
) -> Result<CheckReport> {
    for i in 0..components {
        let mut values = Vec::with_capacity(expressions.len());
        for e in expressions {
            let mut s = e.evaluate(i, order)?;
            if let Some(p) = perturbation.filter(|p| p.tag == e.tag) {
                let bump = LaurentSeries::from_monomial(&Monomial::new(p.coeff.clone(), p.exponent), order);
                s = s.add(&bump);
            }
            values.push((e.tag, s));
        }
        let first = values
            .iter()
            .enumerate()
            .flat_map(|(j, (_, a))| values[j + 1..].iter().filter_map(move |(_, b)| a.first_mismatch(b)))
            .min();
        if let Some(k) = first {
            let values = values
                .iter()
                .map(|(tag, s)| {
                    let c = s.coefficient(k).expect("mismatch lies inside every window");
                    (tag.name().to_string(), exact_string(&c))
                })
                .collect();
            return Ok(CheckReport {
                id: id.to_string(),
                order,
                status: CheckStatus::Fail,
                mismatch: Some(Mismatch {
                    exponent: k,
                    component: (components > 1).then_some(i),
                    values,
                }),
            });
        }
    }
    Ok(CheckReport {
        id: id.to_string(),
        order,
        status: CheckStatus::Pass,
        mismatch: None,
    })
}

/// Validate and compare both sides of a transformation.
pub fn check_transformation<T: Transformation + 'static>(tr: T, order: i64) -> Result<CheckReport> {
    tr.validate()?;
    let name = tr.name();
    let tr = Arc::new(tr);
    compare(name, order, 1, &sides(tr), None)
}

/// Left side as construction, right side as closed form.
pub fn sides<T: Transformation + 'static>(tr: Arc<T>) -> [Expression; 2] {
    let l = tr.clone();
    [
        Expression::single(ExprTag::Construction, move |t| l.lhs(t)),
        Expression::single(ExprTag::Closed, move |t| tr.rhs(t)),
    ]
}

pub fn check_heine(step: i64, a: Monomial, b: Monomial, c: Monomial, t: Monomial, order: i64) -> Result<CheckReport> {
    check_transformation(Heine::new(step, a, b, c, t), order)
}

pub fn check_heine_limit(step: i64, b: Monomial, c: Monomial, twist: Monomial, order: i64) -> Result<CheckReport> {
    check_transformation(HeineLimit::new(step, b, c, twist), order)
}

pub fn check_iterated_heine(
    step: i64,
    a: Monomial,
    b: Monomial,
    c: Monomial,
    t: Monomial,
    order: i64,
) -> Result<CheckReport> {
    check_transformation(IteratedHeine::new(step, a, b, c, t), order)
}

pub fn check_asv(step: i64, x: Monomial, y: Monomial, order: i64) -> Result<CheckReport> {
    check_transformation(Asv::new(step, x, y), order)
}

pub fn check_partial_theta(a: Monomial, b: Monomial, big_a: Monomial, big_b: Monomial, order: i64) -> Result<CheckReport> {
    check_transformation(PartialTheta::new(a, b, big_a, big_b), order)
}

pub fn check_ptc(a: Monomial, big_a: Monomial, big_b: Monomial, order: i64) -> Result<CheckReport> {
    check_transformation(PartialThetaCorollary::new(a, big_a, big_b), order)
}
