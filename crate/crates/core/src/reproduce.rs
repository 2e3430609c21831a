//! The worked example on `sqr`, `sqrt` and `abs`, recomputed symbolically and
//! on its discrete model.

use crate::analysis::{
    brute_force_iip, commutant_linear, commutant_per_formula, ideal_generated, intersect_with_a,
    is_maximal_commutative, FnAlgebra, LinearModel, DEFAULT_LINEAR_CAP,
};
use crate::coeff::{FormalElem, FormalSystem, FunctionRingSpec, RingElement, ScalarKind};
use crate::error::{Error, Result};
use crate::instances::{example19_discrete, example19_formal, EXAMPLE19_FACTORS, EXAMPLE19_PRODUCT};
use crate::linalg::SubspaceBasis;
use crate::skewalg::{SkewAlgebra, SkewElem};

/// One `u_n` coefficient of the product next to the displayed one.
#[derive(Debug, Clone)]
pub struct CoefficientCheck {
    pub morphism: String,
    pub computed: String,
    pub expected: String,
    pub matches: bool,
}

#[derive(Debug, Clone)]
pub struct SymbolicReport {
    pub factors: [String; 2],
    pub product: String,
    pub coefficients: Vec<CoefficientCheck>,
    /// Morphisms in the product's support that the display does not list.
    pub unexpected: Vec<String>,
}

impl SymbolicReport {
    pub fn matches(&self) -> bool {
        self.unexpected.is_empty() && self.coefficients.iter().all(|c| c.matches)
    }
}

fn factor(alg: &SkewAlgebra<FormalSystem>, terms: &[(&str, &str)]) -> Result<SkewElem<FormalElem>> {
    let sys = alg.system();
    let cat = alg.category();
    let mut out = alg.zero();
    for (morphism, symbol) in terms {
        let term = alg.term(sys.symbol(symbol)?, cat.morphism_index(morphism)?)?;
        out = alg.add(&out, &term)?;
    }
    Ok(out)
}

/// Multiplies the two generic five-term elements and compares every
/// coefficient with the displayed expansion.
pub fn example19_symbolic() -> Result<SymbolicReport> {
    let alg = SkewAlgebra::new(example19_formal());
    let sys = alg.system();
    let cat = alg.category();
    let b1 = factor(&alg, &EXAMPLE19_FACTORS[0])?;
    let b2 = factor(&alg, &EXAMPLE19_FACTORS[1])?;
    let product = alg.mul(&b1, &b2)?;

    let mut coefficients = Vec::new();
    let mut listed = Vec::new();
    for (morphism, monomials) in EXAMPLE19_PRODUCT {
        let n = cat.morphism_index(morphism)?;
        listed.push(n);
        let object = cat.cod(n);
        let mut expected = FormalElem::zero(object);
        for monomial in monomials.iter() {
            let mut term = FormalElem::one(object);
            for (symbol, via) in monomial {
                let b = sys.symbol_index(symbol)?;
                let via = match via {
                    Some(m) => cat.morphism_index(m)?,
                    None => cat.identity(sys.home(b)),
                };
                term = term.try_mul(&sys.generator(b, via)?)?;
            }
            expected = expected.try_add(&term)?;
        }
        let computed = product
            .coeff(n)
            .cloned()
            .unwrap_or_else(|| FormalElem::zero(object));
        coefficients.push(CoefficientCheck {
            morphism: morphism.to_string(),
            computed: sys.display(&computed),
            expected: sys.display(&expected),
            matches: computed == expected,
        });
    }
    let unexpected = product
        .support()
        .filter(|n| !listed.contains(n))
        .map(|n| cat.morphism_name(n).to_string())
        .collect();
    Ok(SymbolicReport {
        factors: [alg.display(&b1), alg.display(&b2)],
        product: alg.display(&product),
        coefficients,
        unexpected,
    })
}

/// Invariants of the discrete model over `F_2`.
#[derive(Debug, Clone)]
pub struct DiscreteReport {
    pub algebra_dim: usize,
    pub base_dim: usize,
    pub top_free: bool,
    pub max_comm: bool,
    pub commutant_dim: usize,
    pub commutant_oracles_agree: bool,
    pub iip: bool,
    pub iip_candidates: u64,
    pub iip_witness: Option<String>,
    /// Dimension of the ideal generated by the witness and of its meet with `A`.
    pub witness_ideal: Option<(usize, usize)>,
    pub ideal_abs_dim: usize,
    pub ideal_abs_meet_a_dim: usize,
    /// Basis of the meet of that ideal with `A`.
    pub ideal_abs_meet_a: Vec<String>,
    /// Whether the ideal generated by `u_abs` equals the span
    /// `A_X u_abs + A_X u_sqr + A_Y u_sqrt`.
    pub ideal_abs_is_displayed_span: bool,
    /// Basis elements of the ideal of `u_abs` outside that span.
    pub ideal_abs_extra: Vec<String>,
}

pub fn example19_discrete_report() -> Result<DiscreteReport> {
    let spec = FunctionRingSpec::new(example19_discrete(), ScalarKind::Zmod(2))?;
    let alg: FnAlgebra = SkewAlgebra::new(spec);
    let model = LinearModel::new(&alg, DEFAULT_LINEAR_CAP)?;
    let sys = alg.system().system();
    let cat = alg.category();
    let coords = model.coordinates();

    let formula = commutant_per_formula(&alg)?;
    let linear = commutant_linear(&model)?;
    let max_comm = is_maximal_commutative(&alg, DEFAULT_LINEAR_CAP)?;
    if !max_comm.agree() {
        return Err(Error::OracleMismatch("maximal commutativity routes differ".into()));
    }
    let iip = brute_force_iip(&model)?;
    let witness_ideal = iip.witness.as_ref().map(|w| {
        let ideal = ideal_generated(&model, std::slice::from_ref(w));
        (ideal.dim(), intersect_with_a(&model, &ideal).dim())
    });

    let abs = cat.morphism_index("abs")?;
    let ideal = ideal_generated(&model, &[alg.unit_term(abs)]);
    let meet = intersect_with_a(&model, &ideal);
    let displayed: Vec<usize> = ["abs", "sqr", "sqrt"]
        .iter()
        .map(|m| cat.morphism_index(m))
        .collect::<Result<_>>()?;
    let span_indices: Vec<usize> = (0..model.dim())
        .filter(|&i| displayed.contains(&coords.basis_entry(i).0))
        .collect();
    let span = SubspaceBasis::coordinate(model.kind(), model.dim(), &span_indices)?;
    let extra = (0..model.dim())
        .filter(|&i| !span_indices.contains(&i))
        .filter(|&i| ideal.contains(&crate::linalg::unit(model.kind(), model.dim(), i)))
        .map(|i| alg.display(&alg.basis_element(coords, i)))
        .collect();

    Ok(DiscreteReport {
        algebra_dim: model.dim(),
        base_dim: sys.base_dimension(),
        top_free: sys.is_topologically_free().free,
        max_comm: max_comm.value(),
        commutant_dim: formula.dim(),
        commutant_oracles_agree: formula == linear,
        iip: iip.holds,
        iip_candidates: iip.candidates,
        iip_witness: iip.witness.as_ref().map(|w| alg.display(w)),
        witness_ideal,
        ideal_abs_dim: ideal.dim(),
        ideal_abs_meet_a_dim: meet.dim(),
        ideal_abs_meet_a: meet.rows().iter().map(|r| alg.display(&model.from_vector(r))).collect(),
        ideal_abs_is_displayed_span: ideal == span,
        ideal_abs_extra: extra,
    })
}
