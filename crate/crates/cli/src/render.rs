use serde_json::Value;

/// Pretty JSON with keys sorted (the default `serde_json` map is ordered).
pub fn json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialise");
    s.push('\n');
    s
}

/// Flattens a document into aligned `path  value` rows.
pub fn table(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten(v, String::new(), &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(format!("{k:<width$}  {v}").trim_end());
        out.push('\n');
    }
    out
}

fn is_scalar_list(items: &[Value]) -> bool {
    items.iter().all(|v| !v.is_object() && !v.is_array())
}

fn flatten(v: &Value, path: String, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(child, join(k), rows);
            }
        }
        Value::Array(items) if is_scalar_list(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            rows.push((path, format!("[{}]", parts.join(", "))));
        }
        Value::Array(items) if items.iter().all(|i| i.as_array().is_some_and(|a| is_scalar_list(a))) => {
            let parts: Vec<String> = items
                .iter()
                .map(|i| {
                    let inner: Vec<String> = i.as_array().unwrap().iter().map(scalar).collect();
                    format!("({})", inner.join(","))
                })
                .collect();
            rows.push((path, parts.join(" ")));
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(child, join(&i.to_string()), rows);
            }
        }
        _ => rows.push((path, scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattens_nested_documents() {
        let v = json!({"b": {"c": [1, 2]}, "a": "x", "pairs": [[2, 3], [5, 2]]});
        assert_eq!(table(&v), "a      x\nb.c    [1, 2]\npairs  (2,3) (5,2)\n");
    }
}
