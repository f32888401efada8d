//! Exact evaluation of the crossing-number bounds for `LTQ_n` and `Q_n`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Upper,
    Lower,
}

/// A bound evaluated at one parameter value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    pub name: &'static str,
    pub n: usize,
    pub value: Rational,
    /// Smallest parameter for which the formula is evaluated; no upper limit.
    pub valid_from: usize,
    pub direction: Direction,
}

impl BoundValue {
    /// `max(0, value)`.
    pub fn clamped(&self) -> Rational {
        if self.value.is_negative() {
            Rational::zero()
        } else {
            self.value.clone()
        }
    }
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn pow2(k: usize) -> Rational {
    Rational::from_integer(BigInt::from(1) << k)
}

fn check(n: usize, from: usize, name: &str) -> Result<()> {
    if n < from {
        return Err(Error::Parameter(format!("{name} needs n >= {from}, got {n}")));
    }
    Ok(())
}

/// `(265/6)·4^{n−4} − (n² + (15 + (−1)^{n−1})/6)·2^{n−3}`, evaluated for any
/// `n >= 1` (meaningful from 6 on).
pub fn ltq_upper_closed(n: usize) -> Rational {
    let n_i = n as i64;
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let lead = Rational::new(BigInt::from(265), BigInt::from(6)) * pow2(2 * n) / pow2(8);
    let inner = int(n_i * n_i) + Rational::new(BigInt::from(15 + sign), BigInt::from(6));
    lead - inner * pow2(n) / pow2(3)
}

/// Increment from `n` to `n + 1` in the drawing recurrence.
pub fn ltq_upper_increment(n: usize) -> Rational {
    let n_i = n as i64;
    let c = if n % 2 == 1 { 2 } else { 1 };
    int(n_i * n_i - 2 * n_i + c) * pow2(n) / pow2(2)
}

pub fn ltq_upper(n: usize) -> Result<BoundValue> {
    check(n, 4, "ltq_upper")?;
    let value = match n {
        4 => int(10),
        5 => int(68),
        _ => ltq_upper_closed(n),
    };
    Ok(BoundValue { name: "ltq_upper", n, value, valid_from: 4, direction: Direction::Upper })
}

/// `4^n/20 − (n² + 1)·2^{n−1}`.
pub fn ltq_lower(n: usize) -> Result<BoundValue> {
    check(n, 2, "ltq_lower")?;
    let n_i = n as i64;
    let value = pow2(2 * n) / int(20) - int(n_i * n_i + 1) * pow2(n) / int(2);
    Ok(BoundValue { name: "ltq_lower", n, value, valid_from: 2, direction: Direction::Lower })
}

/// `cr(G_2) >= cr(G_1)/cg² − (|V_2|/2)·Δ²` for an embedding of `G_1` into `G_2`.
pub fn leighton_bound(cr_g1: &Rational, congestion: &Rational, v2: &Rational, max_degree: &Rational) -> Rational {
    cr_g1 / (congestion * congestion) - v2 / int(2) * max_degree * max_degree
}

/// `m(m−1)(m−2)(m−3)/80`.
pub fn guy_k_bound(m: u64) -> Result<BoundValue> {
    if m < 1 {
        return Err(Error::Parameter("guy_k_bound needs m >= 1".into()));
    }
    let m_r = Rational::from_integer(BigInt::from(m));
    let value = (0..4).fold(Rational::from_integer(1.into()), |acc, k| acc * (&m_r - int(k))) / int(80);
    Ok(BoundValue { name: "guy_k_bound", n: m as usize, value, valid_from: 1, direction: Direction::Lower })
}

/// Lower bound for the doubled complete graph `2K_m`: four times the `K_m` bound.
pub fn doubled_complete_bound(m: u64) -> Result<BoundValue> {
    let g = guy_k_bound(m)?;
    Ok(BoundValue { name: "doubled_complete_bound", value: g.value * int(4), ..g })
}

/// The lower bound obtained by embedding `2K_{2^n}` into `LTQ_n` with
/// congestion `2^n`.
pub fn ltq_lower_chain(n: usize) -> Result<BoundValue> {
    check(n, 2, "ltq_lower_chain")?;
    if n > 62 {
        return Err(Error::Parameter(format!("ltq_lower_chain supports n <= 62, got {n}")));
    }
    let m = 1u64 << n;
    let cr = doubled_complete_bound(m)?.value;
    let m_r = pow2(n);
    let value = leighton_bound(&cr, &m_r, &m_r, &int(n as i64));
    Ok(BoundValue { name: "ltq_lower_chain", n, value, valid_from: 2, direction: Direction::Lower })
}

/// Upper `(5/32)·4^n − ⌊(n²+1)/2⌋·2^{n−2}` and lower `4^n/20 − (n²+1)·2^{n−1}`
/// for the hypercube `Q_n`.
pub fn hypercube_bounds(n: usize) -> Result<(BoundValue, BoundValue)> {
    check(n, 3, "hypercube_bounds")?;
    let n_i = n as i64;
    let upper = int(5) * pow2(2 * n) / int(32) - int((n_i * n_i + 1) / 2) * pow2(n) / int(4);
    let lower = pow2(2 * n) / int(20) - int(n_i * n_i + 1) * pow2(n) / int(2);
    Ok((
        BoundValue { name: "q_upper", n, value: upper, valid_from: 3, direction: Direction::Upper },
        BoundValue { name: "q_lower", n, value: lower, valid_from: 3, direction: Direction::Lower },
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Text,
}

pub const CSV_HEADER: &str = "n,ltq_upper,ltq_lower_raw,ltq_lower,q_upper,q_lower_raw";

/// One row per `n`; cells outside a formula's range are left blank. The text
/// form adds the ratio `ltq_upper / 4^n`.
pub fn bounds_table(n_min: usize, n_max: usize, format: TableFormat) -> Result<String> {
    if n_min < 2 || n_min > n_max {
        return Err(Error::Parameter(format!("need 2 <= nmin <= nmax, got {n_min}..{n_max}")));
    }
    if n_max > 62 {
        return Err(Error::Parameter(format!("nmax must be at most 62, got {n_max}")));
    }
    let mut rows: Vec<Vec<String>> = Vec::new();
    for n in n_min..=n_max {
        let upper = ltq_upper(n).ok();
        let lower = ltq_lower(n)?;
        let q = hypercube_bounds(n).ok();
        let cell = |r: Option<&Rational>| r.map(format_rational).unwrap_or_default();
        let mut row = vec![
            n.to_string(),
            cell(upper.as_ref().map(|b| &b.value)),
            format_rational(&lower.value),
            format_rational(&lower.clamped()),
            cell(q.as_ref().map(|(u, _)| &u.value)),
            cell(q.as_ref().map(|(_, l)| &l.value)),
        ];
        if format == TableFormat::Text {
            let ratio = upper.map(|b| b.value / pow2(2 * n));
            row.push(cell(ratio.as_ref()));
        }
        rows.push(row);
    }
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for row in rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        TableFormat::Text => {
            let mut header: Vec<String> = CSV_HEADER.split(',').map(String::from).collect();
            header.push("ratio".into());
            let widths: Vec<usize> =
                (0..header.len()).map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0)).collect();
            for row in std::iter::once(&header).chain(rows.iter()) {
                let cells: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
                let _ = writeln!(out, "{}", cells.join("  ").trim_end());
            }
        }
    }
    Ok(out)
}
