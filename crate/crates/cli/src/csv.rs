//! Flattens a JSON result into `path,re,im` rows.
//!
//! Every leaf becomes one row keyed by its dotted path. A two-element array
//! of numbers is read as a complex number; other numbers fill `re` only,
//! and strings and booleans are written to `re` verbatim.

use serde_json::Value;

pub fn to_csv(value: &Value) -> String {
    let mut out = String::from("path,re,im\n");
    walk(value, String::new(), &mut out);
    out
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn walk(v: &Value, path: String, out: &mut String) {
    match v {
        Value::Array(items) if items.len() == 2 && items.iter().all(Value::is_number) => {
            out.push_str(&format!("{},{},{}\n", quote(&path), items[0], items[1]));
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                walk(item, join(&path, &i.to_string()), out);
            }
        }
        Value::Object(map) => {
            for (k, item) in map {
                walk(item, join(&path, k), out);
            }
        }
        Value::Number(n) => out.push_str(&format!("{},{},\n", quote(&path), n)),
        Value::String(s) => out.push_str(&format!("{},{},\n", quote(&path), quote(s))),
        Value::Bool(b) => out.push_str(&format!("{},{},\n", quote(&path), b)),
        Value::Null => out.push_str(&format!("{},,\n", quote(&path))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattens_complex_pairs() {
        let v = json!({"roots": [[1.0, 0.0], [-1.0, 0.5]], "ok": true});
        assert_eq!(to_csv(&v), "path,re,im\nok,true,\nroots.0,1.0,0.0\nroots.1,-1.0,0.5\n");
    }
}
