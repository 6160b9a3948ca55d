//! Schema-checked access to JSON documents. Errors carry the JSON pointer of
//! the offending value.

use serde_json::Value;

use crate::error::{LabError, Result};

pub(crate) struct Node<'a> {
    pub value: &'a Value,
    pub path: String,
}

impl<'a> Node<'a> {
    pub fn root(value: &'a Value) -> Self {
        Self { value, path: String::new() }
    }

    pub fn fail<T>(&self, what: &str) -> Result<T> {
        let path = if self.path.is_empty() { "/" } else { &self.path };
        Err(LabError::Schema(format!("{path}: {what}")))
    }

    pub fn field(&self, name: &str) -> Result<Node<'a>> {
        match self.opt_field(name)? {
            Some(n) => Ok(n),
            None => self.fail(&format!("missing field \"{name}\"")),
        }
    }

    pub fn opt_field(&self, name: &str) -> Result<Option<Node<'a>>> {
        let Some(obj) = self.value.as_object() else { return self.fail("expected an object") };
        let escaped = name.replace('~', "~0").replace('/', "~1");
        Ok(obj.get(name).map(|value| Node { value, path: format!("{}/{escaped}", self.path) }))
    }

    pub fn items(&self) -> Result<Vec<Node<'a>>> {
        let Some(arr) = self.value.as_array() else { return self.fail("expected an array") };
        Ok(arr.iter().enumerate().map(|(k, value)| Node { value, path: format!("{}/{k}", self.path) }).collect())
    }

    pub fn items_exact(&self, n: usize) -> Result<Vec<Node<'a>>> {
        let items = self.items()?;
        if items.len() != n {
            return self.fail(&format!("expected {n} entries, found {}", items.len()));
        }
        Ok(items)
    }

    pub fn number(&self) -> Result<f64> {
        match self.value.as_f64() {
            Some(x) if x.is_finite() => Ok(x),
            _ => self.fail("expected a finite number"),
        }
    }

    pub fn index(&self) -> Result<usize> {
        match self.value.as_u64() {
            Some(k) => Ok(k as usize),
            None => self.fail("expected a non-negative integer"),
        }
    }

    pub fn integer(&self) -> Result<i64> {
        match self.value.as_i64() {
            Some(k) => Ok(k),
            None => self.fail("expected an integer"),
        }
    }

    pub fn string(&self) -> Result<&'a str> {
        match self.value.as_str() {
            Some(s) => Ok(s),
            None => self.fail("expected a string"),
        }
    }

    /// Either a string or an integer, rendered as a string.
    pub fn ident(&self) -> Result<String> {
        match self.value {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) if n.is_u64() => Ok(n.to_string()),
            _ => self.fail("expected a string or integer id"),
        }
    }
}
