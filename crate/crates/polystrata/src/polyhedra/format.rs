//! Textual dumps: one constraint per line (`a1*x1 + ... + an*xn >= b`,
//! or `= b`), terms sorted by variable name, coefficient 1 elided;
//! generator dumps as `V(..)`, `R(..)`, `L(..)`. The full space prints as
//! `true` and the empty polyhedron as `false`.

use super::poly::{Constraint, Polyhedron, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// How rational vertex coordinates are printed. Constraints are integer
/// and unaffected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RationalStyle {
    /// `3/2`
    #[default]
    Exact,
    /// `1.5` when the denominator divides a power of ten, `3/2` otherwise
    Decimal,
}

pub fn render_rational(q: &Q, style: RationalStyle) -> String {
    if q.is_integer() {
        return q.to_integer().to_string();
    }
    if style == RationalStyle::Decimal {
        // Terminating decimal exists iff the reduced denominator is 2^a·5^b.
        let mut den = q.denom().clone();
        let mut pow10 = 0u32;
        for f in [2u32, 5u32] {
            let fz = BigInt::from(f);
            while (&den % &fz).is_zero() {
                den /= &fz;
                pow10 += 1;
            }
        }
        if den.is_one() {
            let scale = BigInt::from(10u32).pow(pow10);
            let scaled = q * Q::from(scale.clone());
            let digits = scaled.to_integer();
            let neg = digits.is_negative();
            let mut s = digits.abs().to_string();
            while s.len() <= pow10 as usize {
                s.insert(0, '0');
            }
            s.insert(s.len() - pow10 as usize, '.');
            let trimmed = s.trim_end_matches('0');
            let s = if trimmed.ends_with('.') {
                format!("{trimmed}0")
            } else {
                trimmed.to_string()
            };
            return if neg { format!("-{s}") } else { s };
        }
    }
    format!("{}/{}", q.numer(), q.denom())
}

fn push_term(out: &mut String, coef: &BigInt, name: &str) {
    let first = out.is_empty();
    let mag = coef.abs();
    if coef.is_negative() {
        out.push_str(if first { "-" } else { " - " });
    } else if !first {
        out.push_str(" + ");
    }
    if !mag.is_one() {
        out.push_str(&mag.to_string());
        out.push('*');
    }
    out.push_str(name);
}

/// `names[k]` is the variable name of column `k`. Terms are emitted in
/// variable-name order. A row whose nonzero coefficients are all
/// negative is printed negated (`-i >= -6` as `i <= 6`, `-i = -6` as
/// `i = 6`) so bounds read naturally.
pub fn render_constraint(c: &Constraint, names: &[String]) -> String {
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by(|&a, &b| names[a].cmp(&names[b]));
    let nonzero: Vec<&usize> = order.iter().filter(|&&k| !c.coef[k].is_zero()).collect();
    let flip = !nonzero.is_empty() && nonzero.iter().all(|&&k| c.coef[k].is_negative());
    let mut lhs = String::new();
    for k in order {
        if !c.coef[k].is_zero() {
            let coef = if flip {
                -c.coef[k].clone()
            } else {
                c.coef[k].clone()
            };
            push_term(&mut lhs, &coef, &names[k]);
        }
    }
    if lhs.is_empty() {
        lhs.push('0');
    }
    let rel = match (c.eq, flip) {
        (true, _) => "=",
        (false, false) => ">=",
        (false, true) => "<=",
    };
    let b = if flip { -c.b.clone() } else { c.b.clone() };
    format!("{lhs} {rel} {b}")
}

/// One line per constraint; `["true"]` for ⊤, `["false"]` for ⊥.
pub fn render_polyhedron(p: &Polyhedron, names: &[String]) -> Vec<String> {
    if p.is_empty() {
        return vec!["false".to_string()];
    }
    if p.is_top() {
        return vec!["true".to_string()];
    }
    p.constraints()
        .iter()
        .map(|c| render_constraint(c, names))
        .collect()
}

/// Generator dump: `V(1, 0)`, `R(1, 1)`, `L(0, 1)` lines, vertices first.
pub fn render_generators(p: &Polyhedron, style: RationalStyle) -> Vec<String> {
    let mut out = Vec::new();
    if p.is_empty() {
        return out;
    }
    let g = p.generators();
    for v in &g.vertices {
        let coords: Vec<String> = v.iter().map(|q| render_rational(q, style)).collect();
        out.push(format!("V({})", coords.join(", ")));
    }
    for r in &g.rays {
        let coords: Vec<String> = r.iter().map(|z| z.to_string()).collect();
        out.push(format!("R({})", coords.join(", ")));
    }
    for l in &g.lines {
        let coords: Vec<String> = l.iter().map(|z| z.to_string()).collect();
        out.push(format!("L({})", coords.join(", ")));
    }
    out
}
