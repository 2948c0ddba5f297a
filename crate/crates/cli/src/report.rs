//! Report assembly: every emitted number carries a provenance tag
//! (computed | closed_form | paper_reference) and prints with 10
//! significant digits; `--json` emits the same fields machine-readably.

use serde::Serialize;

/// Plain decimal with 10 significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (9 - magnitude).clamp(0, 17) as usize;
    format!("{x:.decimals$}")
}

#[derive(Serialize)]
#[serde(untagged)]
enum Value {
    Number(f64),
    Int(i64),
    Text(String),
}

#[derive(Serialize)]
struct Field {
    name: &'static str,
    value: Value,
    provenance: &'static str,
}

pub struct Report {
    command: &'static str,
    fields: Vec<Field>,
}

impl Report {
    pub fn new(command: &'static str) -> Report {
        Report { command, fields: Vec::new() }
    }

    pub fn number(&mut self, name: &'static str, value: f64, provenance: &'static str) {
        self.fields.push(Field { name, value: Value::Number(value), provenance });
    }

    pub fn int(&mut self, name: &'static str, value: i64, provenance: &'static str) {
        self.fields.push(Field { name, value: Value::Int(value), provenance });
    }

    pub fn text(&mut self, name: &'static str, value: &str, provenance: &'static str) {
        self.fields.push(Field { name, value: Value::Text(value.to_string()), provenance });
    }

    pub fn emit(&self, json: bool) {
        if json {
            let obj = serde_json::json!({
                "command": self.command,
                "fields": self.fields,
            });
            println!("{}", serde_json::to_string_pretty(&obj).unwrap());
        } else {
            for f in &self.fields {
                let rendered = match &f.value {
                    Value::Number(x) => fmt_sig(*x),
                    Value::Int(i) => i.to_string(),
                    Value::Text(t) => t.clone(),
                };
                println!("{} {} [{}]", f.name, rendered, f.provenance);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(2.4964594258871586), "2.496459426");
        assert_eq!(fmt_sig(126.0 / 50.0), "2.520000000");
        assert_eq!(fmt_sig(0.0), "0.000000000");
        assert_eq!(fmt_sig(-11.48528137423857), "-11.48528137");
        assert_eq!(fmt_sig(1234567890.123), "1234567890");
    }
}
