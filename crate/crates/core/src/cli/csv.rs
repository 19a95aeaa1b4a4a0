use std::io::{self, Write};

/// Significant digits written for every number.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`-style formatting: shortest of fixed or scientific, trailing zeros dropped.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let p = SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Minimal CSV writer: comma separated, LF line endings.
pub struct CsvWriter<W: Write> {
    out: W,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(out: W) -> Self {
        CsvWriter { out }
    }

    pub fn header<S: AsRef<str>>(&mut self, fields: &[S]) -> io::Result<()> {
        let line: Vec<&str> = fields.iter().map(AsRef::as_ref).collect();
        writeln!(self.out, "{}", line.join(","))
    }

    pub fn row(&mut self, values: &[f64]) -> io::Result<()> {
        let line: Vec<String> = values.iter().map(|&v| format_number(v)).collect();
        writeln!(self.out, "{}", line.join(","))
    }

    /// A row whose first cell is a label.
    pub fn labelled_row(&mut self, label: &str, values: &[f64]) -> io::Result<()> {
        let mut line = vec![label.to_string()];
        line.extend(values.iter().map(|&v| format_number(v)));
        writeln!(self.out, "{}", line.join(","))
    }

    pub fn text_row<S: AsRef<str>>(&mut self, cells: &[S]) -> io::Result<()> {
        self.header(cells)
    }

    pub fn comment(&mut self, text: &str) -> io::Result<()> {
        writeln!(self.out, "# {text}")
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_number(1.0 / 6.0), "0.166666666667");
        assert_eq!(format_number(0.5), "0.5");
        assert_eq!(format_number(2.0), "2");
        assert_eq!(format_number(-1.0 / 3.0), "-0.333333333333");
        assert_eq!(format_number(123456.789), "123456.789");
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
    }

    #[test]
    fn scientific_outside_fixed_range() {
        assert_eq!(format_number(1.5e-7), "1.5e-07");
        assert_eq!(format_number(1e15), "1e+15");
        assert_eq!(format_number(0.0001), "0.0001");
        assert_eq!(format_number(f64::NAN), "nan");
    }

    #[test]
    fn rounding_carries_into_exponent() {
        assert_eq!(format_number(0.99999999999999), "1");
        assert_eq!(format_number(9.9999999999999e-5), "0.0001");
    }

    #[test]
    fn writer_uses_lf() {
        let mut w = CsvWriter::new(Vec::new());
        w.header(&["x", "alpha"]).unwrap();
        w.row(&[0.5, 0.125]).unwrap();
        w.comment("note").unwrap();
        let s = String::from_utf8(w.into_inner()).unwrap();
        assert_eq!(s, "x,alpha\n0.5,0.125\n# note\n");
    }
}
