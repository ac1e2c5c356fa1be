//! Reference tables as printed (decimal strings), with the position of any
//! bolded digit, and the per-cell agreement rule.

use serde::Serialize;

use crate::error::Result;
use crate::precision::{PrecisionContext, Real};

/// A printed value. `bold` is the 1-based significant-digit position of a
/// highlighted digit; agreement is then required only through that digit.
#[derive(Clone, Copy, Debug)]
pub struct Printed {
    pub text: &'static str,
    pub bold: Option<usize>,
}

const fn p(text: &'static str) -> Printed {
    Printed { text, bold: None }
}

const fn pb(text: &'static str, bold: usize) -> Printed {
    Printed { text, bold: Some(bold) }
}

pub const TABLE1_A: &str = "0.99";
pub const TABLE1_X: &str = "40";
pub const TABLE1_M: u64 = 42;
/// Significant digits required of each real or imaginary part.
pub const TABLE1_DIGITS: usize = 10;

/// `B_{2k}(pi)`, `k = 0..=6`, as (real, imaginary).
pub const TABLE1: [(Printed, Printed); 7] = [
    (p("3.8975364113e-1"), p("-3.6166205223e-3")),
    (p("-6.4791569264e-3"), p("-2.2873163550e-5")),
    (p("1.1939771912e-3"), p("2.9428888000e-5")),
    (p("6.7326294689e-5"), p("-3.3561255923e-7")),
    (p("6.4497172230e-6"), p("-2.2913466614e-7")),
    (p("-4.9612005443e-7"), p("4.0896790580e-9")),
    (p("-3.8100530725e-8"), p("1.6905896799e-9")),
];

pub struct Table2Column {
    pub a: &'static str,
    pub x: &'static str,
    pub m: u64,
    /// Remainder after the first `k + 1` terms, `k = 0..=6`.
    pub rows: [Printed; 7],
    pub script_e: Printed,
}

pub const TABLE2_I: Table2Column = Table2Column {
    a: "0.99",
    x: "40",
    m: 42,
    rows: [
        pb("1.568955214563456e-19", 4),
        pb("1.569130883253406e-19", 7),
        pb("1.569133239439717e-19", 9),
        pb("1.569133223520415e-19", 11),
        pb("1.569133223261265e-19", 13),
        pb("1.569133223265555e-19", 14),
        pb("1.569133223265644e-19", 16),
    ],
    script_e: p("1.569133223265642e-19"),
};

/// Column (ii); the caption gives x = 40, the printed M = 20 fits x = 20.
pub const TABLE2_II: Table2Column = Table2Column {
    a: "0.995",
    x: "40",
    m: 20,
    rows: [
        pb("1.378997750062528e-9", 6),
        pb("1.378910044963445e-9", 6),
        pb("1.378909886881488e-9", 8),
        pb("1.378909908434786e-9", 11),
        pb("1.378909908529609e-9", 12),
        pb("1.378909908508309e-9", 14),
        pb("1.378909908508144e-9", 15),
    ],
    script_e: p("1.378909908508192e-9"),
};

pub const TABLE2_II_X_HYPOTHESES: [&str; 2] = ["40", "20"];

pub struct Table3Row {
    pub a: &'static str,
    pub x: &'static str,
    pub m: u64,
    pub script_e: Printed,
    pub remainder: Printed,
}

pub const TABLE3_KMAX: usize = 5;

pub const TABLE3: [Table3Row; 8] = [
    Table3Row { a: "0.95", x: "20", m: 25, script_e: p("-2.521343284521e-11"), remainder: pb("-2.521343284522e-11", 13) },
    Table3Row { a: "0.90", x: "20", m: 21, script_e: p("-2.706560459479e-13"), remainder: pb("-2.706560459478e-13", 13) },
    Table3Row { a: "0.80", x: "20", m: 53, script_e: p("-4.827618810882e-20"), remainder: p("-4.827618810882e-20") },
    Table3Row { a: "0.70", x: "15", m: 68, script_e: p("-3.052228407002e-23"), remainder: p("-3.052228407002e-23") },
    Table3Row { a: "0.60", x: "10", m: 77, script_e: p("-6.895973422484e-22"), remainder: p("-6.895973422484e-22") },
    Table3Row { a: "0.50", x: "5", m: 50, script_e: p("-1.106145146730e-12"), remainder: p("-1.106145146730e-12") },
    Table3Row { a: "1/3", x: "3", m: 81, script_e: p("8.345377837784e-14"), remainder: pb("8.345377837735e-14", 12) },
    Table3Row { a: "0.25", x: "3", m: 324, script_e: p("-1.220075244872e-37"), remainder: p("-1.220075244872e-37") },
];

/// Significant digits in a printed mantissa.
pub fn printed_digits(text: &str) -> usize {
    let mantissa = text.split(['e', 'E']).next().unwrap_or("");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    digits.trim_start_matches('0').len()
}

/// Outcome of comparing one computed value with one printed cell.
#[derive(Serialize, Clone, Debug)]
pub struct CellCheck {
    pub row: String,
    pub column: String,
    pub printed: String,
    pub computed: String,
    pub matched_digits: usize,
    pub required_digits: usize,
    pub pass: bool,
}

/// Largest `n <= printed digits` with `|computed - printed|` at most half a
/// unit in the `n`-th significant digit of the printed value.
pub fn matched_digits(computed: &Real, printed: &str, ctx: &PrecisionContext) -> Result<usize> {
    let want = ctx.parse(printed)?;
    let n = printed_digits(printed);
    let diff = (computed - &want).abs();
    if diff.is_zero() {
        return Ok(n);
    }
    let e = want.log10_abs().floor() as i64;
    for k in (1..=n).rev() {
        let half_ulp = &Real::pow10(e - k as i64 + 1, ctx.bits()) / 2;
        if diff <= half_ulp {
            return Ok(k);
        }
    }
    Ok(0)
}

/// Checks `computed` against a printed cell; `required` overrides the
/// number of digits demanded of a cell without bold.
pub fn check_cell(
    row: impl Into<String>,
    column: impl Into<String>,
    computed: &Real,
    cell: &Printed,
    required: Option<usize>,
    ctx: &PrecisionContext,
) -> Result<CellCheck> {
    let n = printed_digits(cell.text);
    let required_digits = cell.bold.unwrap_or(required.unwrap_or(n)).min(n);
    let matched = matched_digits(computed, cell.text, ctx)?;
    Ok(CellCheck {
        row: row.into(),
        column: column.into(),
        printed: cell.text.to_string(),
        computed: computed.to_sci(n),
        matched_digits: matched,
        required_digits,
        pass: matched >= required_digits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_counts() {
        assert_eq!(printed_digits("3.8975364113e-1"), 11);
        assert_eq!(printed_digits("-2.521343284521e-11"), 13);
        assert_eq!(printed_digits("1.378909908508192e-9"), 16);
    }

    #[test]
    fn bold_positions_mark_departures_from_script_e() {
        // The bolded digit is the first one in which a row differs from
        // the final script-E row.
        for col in [&TABLE2_I, &TABLE2_II] {
            let e: Vec<char> = col.script_e.text.chars().filter(|c| c.is_ascii_digit()).collect();
            for r in &col.rows {
                let d: Vec<char> = r.text.chars().filter(|c| c.is_ascii_digit()).collect();
                let first = d.iter().zip(&e).position(|(x, y)| x != y).map(|i| i + 1);
                assert_eq!(first, r.bold, "{}", r.text);
            }
        }
    }

    #[test]
    fn agreement_rule() {
        let c = PrecisionContext::with_digits(30).unwrap();
        let v = c.parse("-2.28731635506258e-5").unwrap();
        assert_eq!(matched_digits(&v, "-2.2873163550e-5", &c).unwrap(), 10);
        let cell = check_cell("1", "im", &v, &p("-2.2873163550e-5"), Some(10), &c).unwrap();
        assert!(cell.pass);
        let w = c.parse("1.1939771912e-3").unwrap();
        assert_eq!(matched_digits(&-&w, "1.1939771912e-3", &c).unwrap(), 0);
        let b = check_cell("0", "i", &c.parse("1.568955214563447e-19").unwrap(), &TABLE2_I.rows[0], None, &c).unwrap();
        assert_eq!((b.matched_digits, b.required_digits, b.pass), (14, 4, true));
    }
}
