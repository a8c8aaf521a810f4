use clap::ValueEnum;
use e4c_core::engine::{Certificate, Step};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One `key=value` line per field.
    Kv,
    /// A single JSON object.
    Json,
}

#[derive(Debug)]
enum Entry {
    Scalar(String, Value),
    List(Vec<usize>),
    Certificate(Certificate),
    Steps(Vec<Step>),
}

/// Ordered fields of one command's output.
#[derive(Debug, Default)]
pub struct Record {
    entries: Vec<(&'static str, Entry)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn count(&mut self, key: &'static str, v: usize) {
        self.entries.push((key, Entry::Scalar(v.to_string(), json!(v))));
    }

    pub fn flag(&mut self, key: &'static str, v: bool) {
        self.entries.push((key, Entry::Scalar(v.to_string(), json!(v))));
    }

    pub fn text(&mut self, key: &'static str, v: &str) {
        self.entries.push((key, Entry::Scalar(v.to_string(), json!(v))));
    }

    pub fn list(&mut self, key: &'static str, v: &[usize]) {
        self.entries.push((key, Entry::List(v.to_vec())));
    }

    /// Certificate fields; flattened in key-value mode, nested under
    /// `certificate` in JSON.
    pub fn certificate(&mut self, c: &Certificate) {
        self.entries.push(("certificate", Entry::Certificate(c.clone())));
    }

    /// `step=...` lines in key-value mode, a `trace` array in JSON.
    pub fn steps(&mut self, s: &[Step]) {
        self.entries.push(("trace", Entry::Steps(s.to_vec())));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Kv => self.kv(),
            Format::Json => {
                let mut s = serde_json::to_string(&self.json()).expect("json output");
                s.push('\n');
                s
            }
        }
    }

    fn kv(&self) -> String {
        let mut out = String::new();
        for (key, e) in &self.entries {
            match e {
                Entry::Scalar(s, _) => out.push_str(&format!("{key}={s}\n")),
                Entry::List(v) => {
                    let items: Vec<String> = v.iter().map(usize::to_string).collect();
                    out.push_str(&format!("{key}={}\n", items.join(" ")));
                }
                Entry::Certificate(c) => out.push_str(&c.to_kv()),
                Entry::Steps(steps) => {
                    for s in steps {
                        out.push_str(&format!("step={}\n", s.to_line()));
                    }
                }
            }
        }
        out
    }

    fn json(&self) -> Value {
        let mut map = Map::new();
        for (key, e) in &self.entries {
            let v = match e {
                Entry::Scalar(_, v) => v.clone(),
                Entry::List(v) => json!(v),
                Entry::Certificate(c) => json!(c),
                Entry::Steps(s) => json!(s),
            };
            map.insert((*key).to_string(), v);
        }
        Value::Object(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use e4c_core::engine::StepKind;
    use e4c_core::replace::PatternId;

    fn sample() -> Record {
        let mut r = Record::new();
        r.count("length", 3);
        r.list("cycle", &[0, 1, 2]);
        r.flag("found", true);
        r.steps(&[
            Step { kind: StepKind::Extend, before: 12, after: 13 },
            Step { kind: StepKind::Replace(PatternId::C4aVx), before: 13, after: 14 },
        ]);
        r
    }

    #[test]
    fn kv_lines_keep_insertion_order() {
        assert_eq!(
            sample().render(Format::Kv),
            "length=3\ncycle=0 1 2\nfound=true\nstep=extend 12 13\nstep=replace C4a_vx 13 14\n"
        );
    }

    #[test]
    fn json_is_one_object() {
        let doc: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(doc["cycle"], json!([0, 1, 2]));
        assert_eq!(
            doc["trace"][1],
            json!({"kind": "replace", "pattern": "C4a_vx", "before": 13, "after": 14})
        );
    }
}
