//! Rendering of command results as JSON or indented text.

use serde_json::Value;

use crate::config::Format;
use crate::json::polynomial_from_json;

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            text(value, 0, &mut s);
            s
        }
    }
}

fn scalar(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(_) if value.get("terms").is_some() => polynomial_from_json(value).ok().map(|p| p.to_string()),
        Value::Object(m) if m.len() == 2 && m.contains_key("num") && m.contains_key("den") => {
            Some(format!("{}/{}", m["num"].as_str()?, m["den"].as_str()?))
        }
        _ => None,
    }
}

fn text(value: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(m) => {
            for (k, v) in m {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(v, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text(v, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_rendering() {
        let v = json!({
            "count": "12",
            "p": {"terms":[{"exps":{"x[1][1]":2},"coeff":"3"}]},
            "q": {"num":"3","den":"4"},
            "checks": [{"name":"a","pass":true}],
        });
        let s = render(&v, Format::Text);
        assert!(s.contains("count: 12\n"));
        assert!(s.contains("p: 3*x[1][1]^2\n"));
        assert!(s.contains("q: 3/4\n"));
        assert!(s.contains("checks:\n  -\n    name: a\n    pass: true\n"));
    }
}
