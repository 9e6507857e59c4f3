//! Text grammars: partitions, dihedral diagrams, permutations, rationals.

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use kleintft::dihedral::DihedralDiagram;
use kleintft::perm::{Partition, Permutation};
use kleintft::Rat;

/// Parses `"3,2,1"`; input may be unsorted, the result is canonical.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        bail!("empty partition");
    }
    let mut parts = Vec::new();
    for token in trimmed.split(',') {
        let token = token.trim();
        if token.is_empty() {
            bail!("empty token in partition {text:?}");
        }
        let part: u32 = token.parse().with_context(|| format!("bad part {token:?}"))?;
        if part == 0 {
            bail!("partition parts must be positive, got 0 in {text:?}");
        }
        parts.push(part);
    }
    Partition::new(parts).map_err(|e| anyhow!("{e}"))
}

pub fn print_partition(p: &Partition) -> String {
    p.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Parses the diagram grammar `"1:a,b;2:c;3:;4:d"`, listing orbit sizes per
/// type with empty lists allowed. All four sections are required, in order.
pub fn parse_dihedral(text: &str, expected_n: Option<u32>) -> Result<DihedralDiagram> {
    let sections: Vec<&str> = text.trim().split(';').collect();
    if sections.len() != 4 {
        bail!("diagram needs four ';'-separated sections, got {}", sections.len());
    }
    let mut lists = Vec::with_capacity(4);
    for (i, section) in sections.iter().enumerate() {
        let prefix = format!("{}:", i + 1);
        let rest = section
            .trim()
            .strip_prefix(&prefix)
            .ok_or_else(|| anyhow!("section {} must start with {prefix:?}", i + 1))?;
        let mut sizes = Vec::new();
        for token in rest.split(',') {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            sizes.push(token.parse::<u32>().with_context(|| format!("bad orbit size {token:?}"))?);
        }
        lists.push(sizes);
    }
    let [t1, t2, t3, t4] = <[Vec<u32>; 4]>::try_from(lists).expect("four sections");
    let diagram = DihedralDiagram::new(t1, t2, t3, t4).map_err(|e| anyhow!("{e}"))?;
    if let Some(n) = expected_n {
        if diagram.n() != n {
            bail!("diagram sums to {}, expected {n}", diagram.n());
        }
    }
    Ok(diagram)
}

pub fn print_dihedral(d: &DihedralDiagram) -> String {
    let join = |xs: &[u32]| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    let [t1, t2, t3, t4] = d.types();
    format!("1:{};2:{};3:{};4:{}", join(t1), join(t2), join(t3), join(t4))
}

/// Parses a permutation: either cycle notation `"(1 2)(3 4)"` with 1-based
/// points (commas also accepted inside cycles, `"()"` is the identity) or an
/// image list `"2,1,3"` with 1-based images.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        bail!("empty permutation");
    }
    if trimmed == "()" || trimmed == "id" {
        return Ok(Permutation::identity(degree));
    }
    if trimmed.starts_with('(') {
        let mut cycles = Vec::new();
        let mut rest = trimmed;
        while !rest.is_empty() {
            let rest_trim = rest.trim_start();
            if !rest_trim.starts_with('(') {
                bail!("expected '(' in cycle notation at {rest_trim:?}");
            }
            let close = rest_trim.find(')').ok_or_else(|| anyhow!("unclosed cycle"))?;
            let inner = &rest_trim[1..close];
            let points: Vec<u16> = inner
                .split(|c: char| c == ' ' || c == ',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| -> Result<u16> {
                    let p: u16 = t.trim().parse().with_context(|| format!("bad point {t:?}"))?;
                    if p == 0 || p as usize > degree {
                        bail!("point {p} out of range 1..={degree}");
                    }
                    Ok(p - 1)
                })
                .collect::<Result<_>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = &rest_trim[close + 1..];
        }
        return Permutation::from_cycles(degree, &cycles).map_err(|e| anyhow!("{e}"));
    }
    let images: Vec<u16> = trimmed
        .split(',')
        .map(|t| -> Result<u16> {
            let v: u16 = t.trim().parse().with_context(|| format!("bad image {t:?}"))?;
            if v == 0 {
                bail!("images are 1-based");
            }
            Ok(v - 1)
        })
        .collect::<Result<_>>()?;
    if images.len() != degree {
        bail!("image list has length {}, expected {degree}", images.len());
    }
    Permutation::from_images(images).map_err(|e| anyhow!("{e}"))
}

/// Cycle notation with 1-based points; the identity prints as `"()"`.
pub fn print_permutation(p: &Permutation) -> String {
    let cycles = p.nontrivial_cycles();
    if cycles.is_empty() {
        return "()".to_string();
    }
    cycles
        .iter()
        .map(|c| {
            let pts: Vec<String> = c.iter().map(|&x| (x + 1).to_string()).collect();
            format!("({})", pts.join(" "))
        })
        .collect()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<Rat> {
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let n: BigInt = num.parse().with_context(|| format!("bad numerator {num:?}"))?;
    let d: BigInt = den.parse().with_context(|| format!("bad denominator {den:?}"))?;
    if d.is_zero() {
        bail!("zero denominator");
    }
    Ok(Rat::new(n, d))
}

/// Reduced form with positive denominator; integers print bare.
pub fn print_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with the given number of fractional digits;
/// presentation only, the exact value is the rational.
pub fn decimal_string(r: &Rat, digits: usize) -> String {
    let negative = r.is_negative();
    let abs = if negative { -r.clone() } else { r.clone() };
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (abs.numer() * &scale) / abs.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let mut frac = format!("{:0width$}", frac_part, width = digits);
    while frac.ends_with('0') && frac.len() > 1 {
        frac.pop();
    }
    let sign = if negative { "-" } else { "" };
    format!("{sign}{int_part}.{frac}")
}

/// Splits on a separator at parenthesis depth zero.
pub fn split_top_level(text: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(c);
            }
            c if c == sep && depth == 0 => {
                out.push(core::mem::take(&mut current));
            }
            _ => current.push(c),
        }
    }
    out.push(current);
    out
}

/// Strips one layer of parentheses, if present.
pub fn unparenthesize(text: &str) -> &str {
    let t = text.trim();
    match t.strip_prefix('(').and_then(|rest| rest.strip_suffix(')')) {
        Some(inner) => inner,
        None => t,
    }
}
