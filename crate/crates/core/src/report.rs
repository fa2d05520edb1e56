//! Line-oriented output: sorted `key: value` pairs, with arrays written as
//! repeated `key[]: item` lines in their original order.

use std::collections::BTreeMap;
use std::fmt::{self, Display};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(String),
    List(Vec<String>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    entries: BTreeMap<String, Value>,
    text: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.entries.insert(key.into(), Value::Scalar(value.to_string()));
        self
    }

    pub fn list<I, T>(&mut self, key: impl Into<String>, items: I) -> &mut Self
    where
        I: IntoIterator<Item = T>,
        T: Display,
    {
        let items = items.into_iter().map(|x| x.to_string()).collect();
        self.entries.insert(key.into(), Value::List(items));
        self
    }

    /// A line of the human-readable rendering.
    pub fn line(&mut self, line: impl Into<String>) -> &mut Self {
        self.text.push(line.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.get(key)
    }

    pub fn scalar(&self, key: &str) -> Option<&str> {
        match self.entries.get(key) {
            Some(Value::Scalar(s)) => Some(s),
            _ => None,
        }
    }

    /// Copies every entry and text line of `other` under `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: &Report) {
        for (k, v) in &other.entries {
            self.entries.insert(format!("{}.{}", prefix, k), v.clone());
        }
        self.text.extend(other.text.iter().cloned());
    }

    /// Copies every entry and text line of `other` unchanged.
    pub fn merge(&mut self, other: &Report) {
        for (k, v) in &other.entries {
            self.entries.insert(k.clone(), v.clone());
        }
        self.text.extend(other.text.iter().cloned());
    }

    pub fn structured(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            match v {
                Value::Scalar(s) => out.push_str(&format!("{}: {}\n", k, s)),
                Value::List(items) if items.is_empty() => out.push_str(&format!("{}: []\n", k)),
                Value::List(items) => {
                    for item in items {
                        out.push_str(&format!("{}[]: {}\n", k, item));
                    }
                }
            }
        }
        out
    }

    /// The text lines, or the structured form when none were given.
    pub fn text(&self) -> String {
        if self.text.is_empty() {
            return self.structured();
        }
        let mut out = self.text.join("\n");
        out.push('\n');
        out
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.structured())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_lists_keep_order() {
        let mut r = Report::new();
        r.set("b", 2).list("a", ["z", "y"]).list("c", Vec::<String>::new());
        assert_eq!(r.structured(), "a[]: z\na[]: y\nb: 2\nc: []\n");
        assert_eq!(r.text(), r.structured());
        r.line("hello");
        assert_eq!(r.text(), "hello\n");
    }

    #[test]
    fn absorb_prefixes_keys() {
        let mut inner = Report::new();
        inner.set("x", "1");
        let mut outer = Report::new();
        outer.absorb("s", &inner);
        assert_eq!(outer.scalar("s.x"), Some("1"));
    }
}
