use crate::error::{Error, Result};

/// An ordered list of real coordinate names. Angle coordinates may appear
/// inside `sin`/`cos`; they are treated as living on a circle.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Chart {
    names: Vec<String>,
    angle: Vec<bool>,
}

fn valid_ident(s: &str) -> bool {
    let mut it = s.chars();
    matches!(it.next(), Some(c) if c.is_ascii_alphabetic())
        && it.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

const RESERVED: [&str; 3] = ["i", "sin", "cos"];

impl Chart {
    pub fn new<S: AsRef<str>, T: AsRef<str>>(coords: &[S], angle_coords: &[T]) -> Result<Self> {
        let names: Vec<String> = coords.iter().map(|s| s.as_ref().to_string()).collect();
        for (k, n) in names.iter().enumerate() {
            if !valid_ident(n) || RESERVED.contains(&n.as_str()) {
                return Err(Error::InvalidChart(format!("bad coordinate name `{n}`")));
            }
            if names[..k].contains(n) {
                return Err(Error::InvalidChart(format!("duplicate coordinate `{n}`")));
            }
        }
        let mut angle = vec![false; names.len()];
        for a in angle_coords {
            let a = a.as_ref();
            let k = names
                .iter()
                .position(|n| n == a)
                .ok_or_else(|| Error::InvalidChart(format!("angle `{a}` is not a coordinate")))?;
            angle[k] = true;
        }
        Ok(Chart { names, angle })
    }

    /// Chart with plain coordinates only.
    pub fn real<S: AsRef<str>>(coords: &[S]) -> Result<Self> {
        Chart::new(coords, &[] as &[&str])
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, k: usize) -> &str {
        &self.names[k]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_angle(&self, k: usize) -> bool {
        self.angle[k]
    }

    pub fn angle_names(&self) -> Vec<&str> {
        (0..self.dim())
            .filter(|&k| self.angle[k])
            .map(|k| self.names[k].as_str())
            .collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Appends one coordinate.
    pub fn extend(&self, name: &str, angle: bool) -> Result<Chart> {
        let mut coords = self.names.clone();
        coords.push(name.to_string());
        let mut c = Chart::new(&coords, &[] as &[&str])?;
        c.angle = self.angle.clone();
        c.angle.push(angle);
        Ok(c)
    }

    /// Removes coordinate `k`; later coordinates shift down by one.
    pub fn remove(&self, k: usize) -> Chart {
        let mut c = self.clone();
        c.names.remove(k);
        c.angle.remove(k);
        c
    }

    /// `base` itself if unused, otherwise `base` followed by the first
    /// free numeric suffix.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}{k}"))
            .find(|n| self.index_of(n).is_none())
            .unwrap()
    }
}
