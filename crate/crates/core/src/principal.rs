//! Principal subfields: for every irreducible factor `f_a != X - x` of the
//! defining polynomial over `L`, the field `L_a = {g(x) : f_a | g(X) - g(x)}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::matrix::{kernel, Matrix};
use crate::numfield::{coefficient_field, intersect_subfields, min_poly_over, NFElement, NumberField, Subfield};
use crate::poly::{factor_over_number_field, Poly};

/// The factors of the defining polynomial over `L` other than `X - x`.
#[derive(Clone, Debug)]
pub struct FactorSystem {
    pub field: NumberField,
    pub factors: Vec<Poly<NFElement>>,
}

impl FactorSystem {
    pub fn new(field: &NumberField) -> Result<FactorSystem> {
        let ring = field.poly_ring();
        let fac = factor_over_number_field(field, &field.defining_over_self())?;
        let linear = ring.linear(&field.generator());
        let mut factors = Vec::new();
        let mut seen_linear = false;
        for (g, m) in fac.factors {
            if m != 1 {
                return Err(Error::SquarefreeRequired);
            }
            if g == linear {
                seen_linear = true;
            } else {
                factors.push(g);
            }
        }
        if !seen_linear {
            return Err(Error::Consistency("X - x missing from the factorization".into()));
        }
        Ok(FactorSystem { field: field.clone(), factors })
    }

    pub fn r(&self) -> usize {
        self.factors.len()
    }

    /// `(X - x) * prod f_a` over the given 0-based indices.
    pub fn product(&self, indices: impl IntoIterator<Item = usize>) -> Poly<NFElement> {
        let ring = self.field.poly_ring();
        indices
            .into_iter()
            .fold(ring.linear(&self.field.generator()), |acc, a| ring.mul(&acc, &self.factors[a]))
    }
}

/// `L_a` as the kernel of `g -> (g(X) - g(x)) mod f_a`, `g` ranging over
/// rational polynomials of degree `< n`.
pub fn principal_subfield_of_factor(field: &NumberField, f_alpha: &Poly<NFElement>) -> Result<Subfield> {
    let ring = field.poly_ring();
    if f_alpha.degree().unwrap_or(0) == 0 || !ring.divides(f_alpha, &field.defining_over_self()) {
        return Err(Error::NotAFactor);
    }
    let n = field.degree();
    let d = f_alpha.degree().unwrap();
    let x = field.generator();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        // X^i - x^i
        let xi = field.pow(&x, i);
        let mut coeffs = vec![field.zero(); i + 1];
        coeffs[i] = field.add(&coeffs[i], &field.one());
        coeffs[0] = field.sub(&coeffs[0], &xi);
        let r = ring.rem(&ring.from_coeffs(coeffs), f_alpha);
        let mut col = Vec::with_capacity(d * n);
        for j in 0..d {
            col.extend(ring.coeff_or_zero(&r, j).into_coords());
        }
        cols.push(col);
    }
    let m = Matrix::from_columns(d * n, &cols, BigRational::from_integer(BigInt::from(0)));
    let elems: Vec<NFElement> = kernel(&Rationals, &m).into_iter().map(NFElement::new).collect();
    Subfield::from_span(field, &elems)
}

/// `{a : f_a divides f_K}` (0-based).
pub fn index_set_i(k: &Subfield, sys: &FactorSystem) -> Vec<usize> {
    let ring = sys.field.poly_ring();
    (0..sys.r()).filter(|&a| ring.divides(&sys.factors[a], k.min_poly())).collect()
}

/// The field generated by the coefficients of `(X - x) f_a`.
pub fn k_g_of_product(alpha: usize, sys: &FactorSystem) -> Subfield {
    coefficient_field(&sys.field, &sys.product([alpha]))
}

/// The principal subfields, deduplicated into `E` with the maps `Φ` and `Γ`
/// and the minimal polynomials `m_b` of `x` over each `E_b`.
#[derive(Clone, Debug)]
pub struct PrincipalSubfieldSet {
    pub system: FactorSystem,
    pub l_alpha: Vec<Subfield>,
    /// Distinct principal subfields sorted by dimension, then basis.
    pub e: Vec<Subfield>,
    /// `phi[a] = b` with `L_a = E_b`.
    pub phi: Vec<usize>,
    /// `gamma[b] = {a : phi[a] = b}`.
    pub gamma: Vec<Vec<usize>>,
    pub m: Vec<Poly<NFElement>>,
}

pub fn compute_principal_subfields(field: &NumberField) -> Result<PrincipalSubfieldSet> {
    let system = FactorSystem::new(field)?;
    let l_alpha = system
        .factors
        .iter()
        .map(|f| principal_subfield_of_factor(field, f))
        .collect::<Result<Vec<_>>>()?;
    let mut e: Vec<Subfield> = Vec::new();
    for l in &l_alpha {
        if !e.contains(l) {
            e.push(l.clone());
        }
    }
    e.sort_by(|a, b| a.canonical_cmp(b));
    let phi: Vec<usize> = l_alpha.iter().map(|l| e.iter().position(|x| x == l).unwrap()).collect();
    let gamma = (0..e.len()).map(|b| (0..phi.len()).filter(|&a| phi[a] == b).collect()).collect();
    let m = e.iter().map(|k| min_poly_over(field, k)).collect();
    let ps = PrincipalSubfieldSet { system, l_alpha, e, phi, gamma, m };
    let failed: Vec<String> = ps
        .verify()
        .into_iter()
        .filter(|c| !c.holds)
        .map(|c| c.name)
        .collect();
    if !failed.is_empty() {
        return Err(Error::Consistency(failed.join("; ")));
    }
    Ok(ps)
}

impl PrincipalSubfieldSet {
    pub fn field(&self) -> &NumberField {
        &self.system.field
    }

    pub fn t(&self) -> usize {
        self.e.len()
    }

    /// Whether `Q` is one of the principal subfields.
    pub fn k_in_e(&self) -> bool {
        self.e.iter().any(|k| k.dim() == 1)
    }

    /// Intersection of all `E_b` (`L` when there are none).
    pub fn intersection(&self) -> Subfield {
        let field = self.field();
        self.e
            .iter()
            .fold(Subfield::whole(field), |acc, k| intersect_subfields(field, &acc, k))
    }

    /// Invariants of the construction, each evaluated independently.
    pub fn verify(&self) -> Vec<Check> {
        let field = self.field();
        let ring = field.poly_ring();
        let n = field.degree();
        let sys = &self.system;
        let mut out = Vec::new();

        out.push(Check::new(
            "factors of f over L re-multiply to f",
            sys.product(0..sys.r()) == field.defining_over_self(),
        ));
        out.push(Check::new(
            "factors pairwise distinct",
            (0..sys.r()).all(|a| (a + 1..sys.r()).all(|b| sys.factors[a] != sys.factors[b])),
        ));
        out.push(Check::new(
            "intersection of principal subfields is Q",
            n == 1 || self.intersection().dim() == 1,
        ));
        out.push(Check::new("no principal subfield equals L", self.e.iter().all(|k| k.dim() < n)));
        out.push(Check::new(
            "each factor divides the minimal polynomial of its principal subfield",
            (0..sys.r()).all(|a| ring.divides(&sys.factors[a], &self.m[self.phi[a]])),
        ));
        let inclusions = (0..self.t()).all(|b| {
            let i = index_set_i(&self.e[b], sys);
            self.gamma[b].iter().all(|a| i.contains(a))
        });
        out.push(Check::new("Gamma(b) is contained in I(E_b)", inclusions));
        let m_formula = (0..self.t()).all(|b| {
            let indices: Vec<usize> = (0..self.t())
                .filter(|&d| self.e[b].is_subfield_of(&self.e[d]))
                .flat_map(|d| self.gamma[d].iter().copied())
                .collect();
            sys.product(indices) == self.m[b]
        });
        out.push(Check::new("m_b equals (X - x) times the factors of principal subfields above E_b", m_formula));
        out.push(Check::new(
            "each E_b is generated by the coefficients of its minimal polynomial",
            (0..self.t()).all(|b| coefficient_field(field, &self.m[b]) == self.e[b]),
        ));
        out.push(Check::new(
            "degree of m_b times dim E_b equals n",
            (0..self.t()).all(|b| self.m[b].degree().unwrap() * self.e[b].dim() == n),
        ));
        let kg = (0..sys.r()).all(|a| {
            let k = k_g_of_product(a, sys);
            k.dim() == n || k == self.e[self.phi[a]]
        });
        out.push(Check::new("a proper coefficient field of (X - x) f_a equals L_a", kg));
        out.push(Check::new("membership test agrees with the kernel description", self.membership_cross_check()));
        out
    }

    /// For each `E_b` draws a random element `g(x)` and checks `f_a | g(X) - g(x)`
    /// for every `a` in `Γ(b)`; a basis element of `L` outside `E_b` must fail.
    fn membership_cross_check(&self) -> bool {
        let field = self.field();
        let ring = field.poly_ring();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let divides_difference = |g: &NFElement, fa: &Poly<NFElement>| -> bool {
            let gx = field.lift_poly(&field.to_poly(g));
            let diff = ring.sub(&gx, &ring.constant(g.clone()));
            ring.divides(fa, &diff)
        };
        for (b, k) in self.e.iter().enumerate() {
            let mut g = field.zero();
            for v in k.basis() {
                let c = field.from_int(rng.gen_range(-9..=9));
                g = field.add(&g, &field.mul(&c, v));
            }
            for &a in &self.gamma[b] {
                if !divides_difference(&g, &self.system.factors[a]) {
                    return false;
                }
                let outside = (0..field.degree())
                    .map(|i| field.pow(&field.generator(), i))
                    .find(|e| !k.contains(e));
                if let Some(e) = outside {
                    if divides_difference(&e, &self.system.factors[a]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
