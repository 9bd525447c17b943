//! Symbolic rendering of exact values and parsing of printed decompositions.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use fppck::cyclotomic::{b, b_bar, omega, CyclotomicNumber, Rational};
use fppck::groups::FiniteGroup;
use num_traits::{One, Signed};

fn named_constants() -> Vec<(&'static str, CyclotomicNumber)> {
    vec![
        ("w", omega()),
        ("w^2", omega().pow(2).expect("unit")),
        ("b", b()),
        ("bbar", b_bar()),
    ]
}

fn rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `w`, `-w^2`, `6*w^2`, `bbar`, `1/3`; anything else in coefficient form.
pub fn value(x: &CyclotomicNumber) -> String {
    if let Some(r) = x.as_rational() {
        return rational(r);
    }
    for (name, c) in named_constants() {
        let Ok(ratio) = x.checked_div(&c) else { continue };
        if let Some(r) = ratio.as_rational() {
            return if r.is_one() {
                name.to_string()
            } else if (-r).is_one() {
                format!("-{name}")
            } else if r.is_negative() {
                format!("-{}*{name}", rational(&-r))
            } else {
                format!("{}*{name}", rational(r))
            };
        }
    }
    x.to_string()
}

/// Shortest word in the named generators, generators taken in index order:
/// `1`, `sigma^3`, `xi*eta^2*z`.
pub fn element_word(group: &FiniteGroup, g: usize) -> String {
    if g == group.identity() {
        return "1".to_string();
    }
    let mut gens: Vec<(&String, usize)> = group.labels().iter().map(|(n, &i)| (n, i)).collect();
    gens.sort_by_key(|&(_, i)| i);
    let orders: Vec<usize> = gens.iter().map(|&(_, i)| group.element_order(i)).collect();
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    let mut exps = vec![0usize; gens.len()];
    loop {
        let value = gens
            .iter()
            .zip(&exps)
            .fold(group.identity(), |acc, (&(_, i), &e)| group.mul(acc, group.pow(i, e as i64)));
        if value == g {
            let key = (exps.iter().filter(|&&e| e > 0).count(), exps.iter().sum());
            if best.as_ref().is_none_or(|b| key < (b.0, b.1)) {
                best = Some((key.0, key.1, exps.clone()));
            }
        }
        // odometer over exponent vectors
        let mut pos = 0;
        while pos < exps.len() {
            exps[pos] += 1;
            if exps[pos] < orders[pos] {
                break;
            }
            exps[pos] = 0;
            pos += 1;
        }
        if pos == exps.len() {
            break;
        }
    }
    let (_, _, exps) = best.expect("the named generators generate the group");
    gens.iter()
        .zip(&exps)
        .filter(|(_, &e)| e > 0)
        .map(|(&(n, _), &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

/// Parses `V0 + C[(Z/3)^2]^2`, `2V3 - V3bar`, `-V3 - V3bar` or `0` into
/// named multiplicities, dropping zero entries.
pub fn terms(text: &str) -> Result<BTreeMap<String, i64>> {
    let mut out = BTreeMap::new();
    let text = text.trim();
    if text == "0" {
        return Ok(out);
    }
    let mut sign = 1;
    let mut rest = text;
    loop {
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
            continue;
        }
        let end = rest.find([' ']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
        let coeff: i64 = if digits > 0 { term[..digits].parse()? } else { 1 };
        let mut name = term[digits..].trim();
        let mut power = 1;
        if let Some((base, exp)) = name.rsplit_once('^') {
            if let Ok(e) = exp.parse::<i64>() {
                name = base;
                power = e;
            }
        }
        if name.is_empty() {
            bail!("missing representation name in `{text}`");
        }
        *out.entry(name.to_string()).or_insert(0) += sign * coeff * power;
        let tail = tail.trim_start();
        if tail.is_empty() {
            break;
        }
        let (op, next) = tail.split_at(1);
        sign = match op {
            "+" => 1,
            "-" => -1,
            _ => bail!("expected `+` or `-` in `{text}`"),
        };
        rest = next;
    }
    out.retain(|_, m| *m != 0);
    Ok(out)
}

/// Evaluates a product formula of the shape `(k/6)(k/3 - 1)` or
/// `(k-1)(k-2)/6` at `k`, exactly.
pub fn formula(text: &str, k: i64) -> Result<i64> {
    let substituted = text.replace('k', &k.to_string());
    let mut value = Rational::one();
    let mut rest = substituted.as_str();
    while let Some(open) = rest.find('(') {
        let close = rest[open..].find(')').context("unbalanced formula")? + open;
        value *= linear(&rest[open + 1..close])?;
        rest = &rest[close + 1..];
    }
    if let Some(d) = rest.trim().strip_prefix('/') {
        value /= Rational::from_integer(d.trim().parse::<i64>()?.into());
    }
    if !value.is_integer() {
        bail!("`{text}` is not integral at k = {k}");
    }
    Ok(value.to_integer().try_into()?)
}

/// `a/b`, `a - c`, `a/b - c` with integer literals.
fn linear(expr: &str) -> Result<Rational> {
    let (head, sub) = match expr.split_once(" - ").or_else(|| expr.split_once('-').filter(|(h, _)| !h.is_empty())) {
        Some((h, s)) => (h.trim(), Some(s.trim().parse::<i64>()?)),
        None => (expr.trim(), None),
    };
    let mut v = match head.split_once('/') {
        Some((n, d)) => Rational::new(n.trim().parse::<i64>()?.into(), d.trim().parse::<i64>()?.into()),
        None => Rational::from_integer(head.parse::<i64>()?.into()),
    };
    if let Some(s) = sub {
        v -= Rational::from_integer(s.into());
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fppck::groups::{build_group, GroupKind};

    #[test]
    fn symbolic_values() {
        assert_eq!(value(&omega()), "w");
        assert_eq!(value(&(omega() * CyclotomicNumber::from(6)).conj()), "6*w^2");
        assert_eq!(value(&-b_bar()), "-bbar");
        assert_eq!(value(&CyclotomicNumber::from(-1)), "-1");
    }

    #[test]
    fn words() {
        let g = build_group(GroupKind::G21).unwrap();
        let s3 = g.element("sigma^3").unwrap();
        assert_eq!(element_word(&g, s3), "sigma^3");
        assert_eq!(element_word(&g, g.identity()), "1");
    }

    #[test]
    fn term_parsing() {
        let t = terms("V0 + C[(Z/3)^2]^2").unwrap();
        assert_eq!(t["C[(Z/3)^2]"], 2);
        assert_eq!(t["V0"], 1);
        let t = terms("-V3 - V3bar").unwrap();
        assert_eq!((t["V3"], t["V3bar"]), (-1, -1));
        assert_eq!(terms("V3^2 + V3bar + C").unwrap()["V3"], 2);
        assert_eq!(terms("2V3 + C").unwrap()["V3"], 2);
        assert!(terms("0").unwrap().is_empty());
    }

    #[test]
    fn formulas() {
        assert_eq!(formula("(k/6)(k/3 - 1)", 6).unwrap(), 1);
        assert_eq!(formula("(k/6)(k/3 - 1)", 12).unwrap(), 6);
        assert_eq!(formula("(k-1)(k-2)/6", 5).unwrap(), 2);
        assert!(formula("(k-1)(k-2)/6", 6).is_err());
    }
}
