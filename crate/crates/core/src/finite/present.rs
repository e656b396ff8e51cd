//! Algebra presentations read from JSON documents.
//!
//! ```json
//! {"q": 2, "quotient": "F2[X,Y]/(X^2, X*Y, Y^2)", "R": "[1]"}
//! {"q": 2, "product": ["F2", "F4"], "R": "diagonal"}
//! {"q": 3, "table": {"dim": 2, "unit": [1, 0], "mult": [[[1,0],[0,1]],[[0,1],[0,0]]]}, "R": {"basis": ["1"]}}
//! ```
//!
//! `R` is either a generator list `"[g1, g2]"` (the subalgebra they generate),
//! `"diagonal"` (the copy of `F_q`), or `{"basis": [...]}`, an explicit spanning
//! set that must already be a subalgebra. In expressions the symbol `a` is the
//! generator of `F_q` over its prime field.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::Value;

use super::algebra::{FiniteAlgebra, Space, Vector};
use super::groebner::{MPoly, MPolyRing, Monomial};
use super::{enumeration_cap, within_cap};
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, GaloisField};
use crate::parse::{parse_expr, ExprTarget};
use crate::poly::{is_irreducible_over, PolyRing};

/// A parsed presentation: the algebra `S` and the subalgebra `R`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub algebra: FiniteAlgebra,
    pub r: Space,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    q: u64,
    quotient: Option<String>,
    product: Option<Vec<String>>,
    table: Option<TableDoc>,
    #[serde(rename = "R")]
    r: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDoc {
    dim: usize,
    unit: Vec<u32>,
    mult: Vec<Vec<Vec<u32>>>,
    names: Option<Vec<String>>,
}

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidAlgebra(msg.into()))
}

/// Parses a JSON presentation document.
pub fn parse_algebra(doc: &str) -> Result<Presentation> {
    let d: Document = serde_json::from_str(doc).map_err(|e| Error::InvalidAlgebra(e.to_string()))?;
    let field = GaloisField::new(d.q)?;
    let (algebra, symbols) = match (&d.quotient, &d.product, &d.table) {
        (Some(text), None, None) => from_quotient(&field, text)?,
        (None, Some(parts), None) => from_product(&field, parts)?,
        (None, None, Some(t)) => from_table(&field, t)?,
        _ => return invalid("exactly one of quotient, product, table is required"),
    };
    check_size(&algebra)?;
    let r = parse_r(&algebra, &symbols, &d.r)?;
    Ok(Presentation { algebra, r })
}

/// `q^dim` must stay within the enumeration cap.
fn check_size(a: &FiniteAlgebra) -> Result<()> {
    let what = format!("algebra of dimension {} over F_{}", a.dim(), a.field().order());
    within_cap(&what, a.size_of(a.dim()), enumeration_cap())
}

/// Splits `text` at top-level commas.
fn split_top(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = text[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

/// Parses `F<n>` and checks that `n` is a power of `q`; returns the exponent.
fn field_exponent(field: &GaloisField, token: &str) -> Result<u32> {
    let n: u64 = token
        .trim()
        .strip_prefix('F')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::InvalidAlgebra(format!("expected a field name like F4, got '{token}'")))?;
    let q = field.order();
    let mut k = 0;
    let mut m = 1u64;
    while m < n {
        m = m.saturating_mul(q);
        k += 1;
    }
    if m != n || k == 0 {
        return invalid(format!("F{n} is not an extension of F{q}"));
    }
    Ok(k)
}

/// Evaluation of expressions into the polynomial ring of a quotient presentation.
struct PolyTarget<'a> {
    ring: &'a MPolyRing,
    vars: &'a [String],
}

fn scalar_from_int(field: &GaloisField, n: &BigInt) -> u32 {
    let p = BigInt::from(field.characteristic());
    let r = ((n % &p) + &p) % &p;
    field.from_int(r.to_i64().expect("residue fits"))
}

impl ExprTarget for PolyTarget<'_> {
    type Value = MPoly;
    fn number(&self, n: &BigInt) -> Result<MPoly> {
        Ok(self.ring.constant(scalar_from_int(&self.ring.field, n)))
    }
    fn variable(&self, name: &str, pos: usize) -> Result<MPoly> {
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            return Ok(self.ring.var(i));
        }
        if name == "a" && self.ring.field.extension_degree() > 1 {
            return Ok(self.ring.constant(self.ring.field.generator()));
        }
        Err(Error::Syntax { pos, msg: format!("unknown symbol '{name}'") })
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        self.ring.add(a, b)
    }
    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        self.ring.sub(a, b)
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        self.ring.mul(a, b)
    }
    fn neg(&self, a: &MPoly) -> MPoly {
        self.ring.neg(a)
    }
    fn one(&self) -> MPoly {
        self.ring.constant(1)
    }
    fn div(&self, a: &MPoly, b: &MPoly, pos: usize) -> Result<MPoly> {
        match b.terms() {
            [(m, c)] if m.iter().all(|&e| e == 0) => {
                Ok(self.ring.scale(a, self.ring.field.inv(c).expect("nonzero constant")))
            }
            [] => Err(Error::Syntax { pos, msg: "division by zero".into() }),
            _ => Err(Error::Syntax { pos, msg: "division by a non-constant".into() }),
        }
    }
}

fn format_monomial(vars: &[String], m: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(m)
        .filter(|(_, e)| **e > 0)
        .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// `F<q>[X,Y,...]/(r1, r2, ...)`.
fn from_quotient(field: &GaloisField, text: &str) -> Result<(FiniteAlgebra, HashMap<String, Vector>)> {
    let text = text.trim();
    let open = text.find('[').ok_or_else(|| Error::InvalidAlgebra("expected F<q>[vars]/(relations)".into()))?;
    let close = text.find(']').ok_or_else(|| Error::InvalidAlgebra("missing ']'".into()))?;
    if field_exponent(field, &text[..open])? != 1 {
        return invalid(format!("quotient must be over F{}", field.order()));
    }
    let vars: Vec<String> = split_top(&text[open + 1..close]).into_iter().map(str::to_string).collect();
    if vars.is_empty() || vars.iter().any(|v| v.is_empty() || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')) {
        return invalid("variables must be identifiers");
    }
    if vars.iter().any(|v| v == "a") && field.extension_degree() > 1 {
        return invalid("'a' is reserved for the generator of F_q");
    }
    let rest = text[close + 1..].trim();
    let rels_text = rest
        .strip_prefix('/')
        .map(str::trim)
        .and_then(|s| s.strip_prefix('('))
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidAlgebra("expected /(relations) after the variables".into()))?;
    let ring = MPolyRing::new(field.clone(), vars.len());
    let target = PolyTarget { ring: &ring, vars: &vars };
    let rels = split_top(rels_text)
        .into_iter()
        .map(|r| parse_expr(r)?.eval(&target))
        .collect::<Result<Vec<_>>>()?;
    let gb = ring.groebner(&rels);
    let limit = 64;
    let mut basis = ring
        .standard_monomials(&gb, limit)
        .ok_or_else(|| Error::InvalidAlgebra("relations do not define a finite-dimensional algebra".into()))?;
    // Display order: by degree, then X before Y.
    basis.sort_by(|a, b| {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    if basis.is_empty() {
        return invalid("inconsistent relations: the quotient is the zero ring");
    }
    if basis.len() > limit {
        return Err(Error::TooLarge { what: "quotient dimension".into(), needed: basis.len() as u128, cap: limit as u128 });
    }
    let coords = |p: &MPoly| -> Vector {
        let nf = ring.reduce(p, &gb);
        let mut v = vec![0; basis.len()];
        for (m, c) in nf.terms() {
            let i = basis.iter().position(|b| b == m).expect("normal form uses standard monomials");
            v[i] = *c;
        }
        v
    };
    let mut table = Vec::new();
    for a in &basis {
        for b in &basis {
            let prod: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
            table.push(coords(&ring.monomial(&prod)));
        }
    }
    let unit = coords(&ring.constant(1));
    let names = basis.iter().map(|m| format_monomial(&vars, m)).collect();
    let alg = FiniteAlgebra::new(field.clone(), table, unit, names)?;
    let symbols = vars.iter().enumerate().map(|(i, v)| (v.clone(), coords(&ring.var(i)))).collect();
    Ok((alg, symbols))
}

/// Monic coefficients (lowest first) of the first irreducible of degree `k` over `F_q`.
fn first_irreducible_over(field: &GaloisField, k: u32) -> Vec<u32> {
    let ring = PolyRing::new(field.clone());
    let q = field.order();
    for code in 0.. {
        let mut c = code;
        let mut coeffs: Vec<u32> = (0..k)
            .map(|_| {
                let d = field.element(c % q);
                c /= q;
                d
            })
            .collect();
        coeffs.push(1);
        if is_irreducible_over(&ring, &ring.from_coeffs(coeffs.clone())) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// `F_{q^k1} × F_{q^k2} × ...` with basis `e_i, z_i, z_i^2, ...` per factor.
fn from_product(field: &GaloisField, parts: &[String]) -> Result<(FiniteAlgebra, HashMap<String, Vector>)> {
    if parts.is_empty() {
        return invalid("product needs at least one factor");
    }
    let degrees = parts.iter().map(|p| field_exponent(field, p)).collect::<Result<Vec<u32>>>()?;
    let dim: usize = degrees.iter().map(|&k| k as usize).sum();
    if dim > 64 {
        return Err(Error::TooLarge { what: "product dimension".into(), needed: dim as u128, cap: 64 });
    }
    let mut table = vec![vec![0u32; dim]; dim * dim];
    let mut names = Vec::with_capacity(dim);
    let mut symbols = HashMap::new();
    let mut unit = vec![0u32; dim];
    let mut offset = 0;
    for (idx, &k) in degrees.iter().enumerate() {
        let k = k as usize;
        let modulus = first_irreducible_over(field, k as u32);
        // Powers z^0 .. z^(2k-2) reduced modulo the irreducible.
        let mut powers: Vec<Vec<u32>> = Vec::with_capacity(2 * k);
        let mut cur = vec![0u32; k];
        cur[0] = 1;
        for _ in 0..(2 * k - 1) {
            powers.push(cur.clone());
            // multiply by z
            let top = cur[k - 1];
            let mut next = vec![0u32; k];
            for i in (1..k).rev() {
                next[i] = cur[i - 1];
            }
            for (i, n) in next.iter_mut().enumerate() {
                *n = field.sub(n, &field.mul(&top, &modulus[i]));
            }
            cur = next;
        }
        for i in 0..k {
            for j in 0..k {
                let row = &mut table[(offset + i) * dim + offset + j];
                row[offset..offset + k].copy_from_slice(&powers[i + j]);
            }
        }
        unit[offset] = 1;
        let n = idx + 1;
        let mut e = vec![0u32; dim];
        e[offset] = 1;
        symbols.insert(format!("e{n}"), e);
        names.push(format!("e{n}"));
        if k > 1 {
            let mut z = vec![0u32; dim];
            z[offset + 1] = 1;
            symbols.insert(format!("z{n}"), z);
            for j in 1..k {
                names.push(if j == 1 { format!("z{n}") } else { format!("z{n}^{j}") });
            }
        }
        offset += k;
    }
    let alg = FiniteAlgebra::new(field.clone(), table, unit, names)?;
    Ok((alg, symbols))
}

fn from_table(field: &GaloisField, t: &TableDoc) -> Result<(FiniteAlgebra, HashMap<String, Vector>)> {
    let dim = t.dim;
    if t.mult.len() != dim || t.mult.iter().any(|row| row.len() != dim) {
        return invalid(format!("mult must be a {dim}x{dim} array of vectors"));
    }
    let names = match &t.names {
        Some(n) => n.clone(),
        None => (0..dim).map(|i| format!("b{i}")).collect(),
    };
    let table: Vec<Vector> = t.mult.iter().flatten().cloned().collect();
    let alg = FiniteAlgebra::new(field.clone(), table, t.unit.clone(), names.clone())?;
    let symbols = names.iter().enumerate().map(|(i, n)| (n.clone(), alg.basis_vector(i))).collect();
    Ok((alg, symbols))
}

/// Evaluation of expressions into the algebra itself.
struct AlgebraTarget<'a> {
    alg: &'a FiniteAlgebra,
    symbols: &'a HashMap<String, Vector>,
}

impl ExprTarget for AlgebraTarget<'_> {
    type Value = Vector;
    fn number(&self, n: &BigInt) -> Result<Vector> {
        Ok(self.alg.scale(scalar_from_int(self.alg.field(), n), self.alg.unit()))
    }
    fn variable(&self, name: &str, pos: usize) -> Result<Vector> {
        if let Some(v) = self.symbols.get(name) {
            return Ok(v.clone());
        }
        let f = self.alg.field();
        if name == "a" && f.extension_degree() > 1 {
            return Ok(self.alg.scale(f.generator(), self.alg.unit()));
        }
        Err(Error::Syntax { pos, msg: format!("unknown symbol '{name}'") })
    }
    fn add(&self, a: &Vector, b: &Vector) -> Vector {
        self.alg.add(a, b)
    }
    fn sub(&self, a: &Vector, b: &Vector) -> Vector {
        self.alg.sub(a, b)
    }
    fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.alg.mul(a, b)
    }
    fn neg(&self, a: &Vector) -> Vector {
        self.alg.sub(&self.alg.zero(), a)
    }
    fn one(&self) -> Vector {
        self.alg.unit().clone()
    }
    fn div(&self, a: &Vector, b: &Vector, pos: usize) -> Result<Vector> {
        let unit = self.alg.unit();
        let f = self.alg.field();
        // b must be c * 1 for a nonzero scalar c.
        let Some(i) = unit.iter().position(|&u| u != 0) else {
            return Err(Error::Syntax { pos, msg: "division in the zero ring".into() });
        };
        let c = f.div(&b[i], &unit[i]).expect("nonzero unit coordinate");
        if c == 0 || self.alg.scale(c, unit) != *b {
            return Err(Error::Syntax { pos, msg: "division by a non-scalar".into() });
        }
        Ok(self.alg.scale(f.inv(&c).expect("nonzero"), a))
    }
}

fn eval_elements(alg: &FiniteAlgebra, symbols: &HashMap<String, Vector>, items: &[String]) -> Result<Vec<Vector>> {
    let target = AlgebraTarget { alg, symbols };
    items.iter().map(|s| parse_expr(s)?.eval(&target)).collect()
}

fn parse_r(alg: &FiniteAlgebra, symbols: &HashMap<String, Vector>, spec: &Value) -> Result<Space> {
    match spec {
        Value::String(s) if s.trim() == "diagonal" => Ok(alg.span(&[alg.unit().clone()])),
        Value::String(s) => {
            let inner = s
                .trim()
                .strip_prefix('[')
                .and_then(|x| x.strip_suffix(']'))
                .ok_or_else(|| Error::InvalidAlgebra(format!("R must look like \"[g1, g2]\", got '{s}'")))?;
            let items: Vec<String> = split_top(inner).into_iter().map(str::to_string).collect();
            let gens = eval_elements(alg, symbols, &items)?;
            Ok(alg.subalgebra_generated(&gens))
        }
        Value::Object(map) => {
            let basis = map
                .get("basis")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidAlgebra("R object needs a \"basis\" array".into()))?;
            let items = basis
                .iter()
                .map(|v| v.as_str().map(str::to_string).ok_or_else(|| Error::InvalidAlgebra("R basis entries must be strings".into())))
                .collect::<Result<Vec<_>>>()?;
            let space = alg.span(&eval_elements(alg, symbols, &items)?);
            if !alg.is_subalgebra(&space) {
                return invalid("R not closed: the given basis does not span a subalgebra containing 1");
            }
            Ok(space)
        }
        _ => invalid("R must be a generator list string, \"diagonal\", or {\"basis\": [...]}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_zero_quotient() {
        let p = parse_algebra(r#"{"q": 2, "quotient": "F2[X,Y]/(X^2, X*Y, Y^2)", "R": "[1]"}"#).unwrap();
        assert_eq!(p.algebra.dim(), 3);
        assert_eq!(p.algebra.names(), &["1", "X", "Y"]);
        assert_eq!(p.r.len(), 1);
    }

    #[test]
    fn truncated_polynomial_ring() {
        let p = parse_algebra(r#"{"q": 2, "quotient": "F2[Y]/(Y^3)", "R": "[1]"}"#).unwrap();
        assert_eq!(p.algebra.names(), &["1", "Y", "Y^2"]);
    }

    #[test]
    fn product_with_extension_factor() {
        let p = parse_algebra(r#"{"q": 2, "product": ["F2", "F4"], "R": "diagonal"}"#).unwrap();
        let a = &p.algebra;
        assert_eq!(a.names(), &["e1", "e2", "z2"]);
        assert_eq!(a.unit(), &vec![1, 1, 0]);
        // z2^2 = z2 + e2 in F_4 = F_2[z]/(z^2 + z + 1).
        let z = a.basis_vector(2);
        assert_eq!(a.mul(&z, &z), vec![0, 1, 1]);
    }

    #[test]
    fn explicit_table_and_basis() {
        let doc = r#"{"q": 3, "table": {"dim": 2, "unit": [1, 0], "mult": [[[1,0],[0,1]],[[0,1],[0,0]]], "names": ["1", "t"]}, "R": {"basis": ["1"]}}"#;
        let p = parse_algebra(doc).unwrap();
        assert_eq!(p.algebra.dim(), 2);
        assert_eq!(p.r, vec![vec![1, 0]]);
    }

    #[test]
    fn generator_of_base_field() {
        let p = parse_algebra(r#"{"q": 4, "quotient": "F4[X]/(X^2 + a*X + 1)", "R": "[a]"}"#).unwrap();
        assert_eq!(p.algebra.dim(), 2);
        assert_eq!(p.r.len(), 1);
    }

    #[test]
    fn errors() {
        let bad = |doc: &str| parse_algebra(doc).unwrap_err();
        assert!(bad(r#"{"q": 2, "quotient": "F2[X]/(X, X+1)", "R": "[1]"}"#).to_string().contains("inconsistent"));
        assert!(bad(r#"{"q": 2, "quotient": "F2[X,Y]/(X^2)", "R": "[1]"}"#).to_string().contains("finite-dimensional"));
        assert!(bad(r#"{"q": 2, "quotient": "F2[X]/(X^3)", "R": {"basis": ["1", "X"]}}"#).to_string().contains("R not closed"));
        assert!(bad(r#"{"q": 6, "product": ["F6"], "R": "[1]"}"#).to_string().contains("prime power"));
        assert!(bad(r#"{"q": 2, "product": ["F3"], "R": "[1]"}"#).to_string().contains("not an extension"));
        assert!(matches!(bad(r#"{"q": 2, "quotient": "F2[X]/(X^2)", "R": "[Z]"}"#), Error::Syntax { .. }));
        let table = r#"{"q": 2, "table": {"dim": 2, "unit": [1, 0], "mult": [[[1,0],[0,1]],[[0,1],[1,1]]]}, "R": "[1]"}"#;
        assert!(parse_algebra(table).is_ok());
        let non_unit = r#"{"q": 2, "table": {"dim": 2, "unit": [1, 0], "mult": [[[1,0],[0,0]],[[0,0],[0,1]]]}, "R": "[1]"}"#;
        assert!(bad(non_unit).to_string().contains("unit"));
    }
}
