use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::atom::Atom;
use super::parse::{parse_ast, Ast};
use super::poly::Poly;
use super::Expr;
use crate::error::{Error, Result};

/// Coordinate chart: ordered coordinates, auxiliary parameters, quadratic
/// extensions and declared opaque functions.
///
/// Atom ranks follow declaration order (coordinates, then parameters, then
/// extensions), which fixes the monomial order for every expression built
/// over the chart.
#[derive(Debug)]
pub struct Chart {
    name: String,
    coords: Vec<Atom>,
    params: Vec<Atom>,
    extensions: Vec<Atom>,
    functions: Vec<String>,
    signature: Option<Vec<i32>>,
    tangent_base: Option<usize>,
}

#[derive(Default, Clone)]
pub struct ChartBuilder {
    name: String,
    coords: Vec<String>,
    params: Vec<String>,
    extensions: Vec<(String, String)>,
    functions: Vec<String>,
    signature: Option<Vec<i32>>,
    tangent: bool,
}

impl ChartBuilder {
    pub fn coords<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.coords
            .extend(names.iter().map(|s| s.as_ref().to_string()));
        self
    }

    pub fn params<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.params
            .extend(names.iter().map(|s| s.as_ref().to_string()));
        self
    }

    /// Adjoins `symbol` with `symbol^2 = radicand`, positive branch.
    pub fn extension(mut self, symbol: &str, radicand: &str) -> Self {
        self.extensions
            .push((symbol.to_string(), radicand.to_string()));
        self
    }

    pub fn function(mut self, head: &str) -> Self {
        self.functions.push(head.to_string());
        self
    }

    pub fn signature(mut self, sig: &[i32]) -> Self {
        self.signature = Some(sig.to_vec());
        self
    }

    /// Declares the coordinates as `(base..., fiber...)` halves.
    pub fn tangent(mut self) -> Self {
        self.tangent = true;
        self
    }

    pub fn build(self) -> Result<Arc<Chart>> {
        let mut seen = std::collections::BTreeSet::new();
        for n in self
            .coords
            .iter()
            .chain(&self.params)
            .chain(self.extensions.iter().map(|(s, _)| s))
            .chain(&self.functions)
        {
            if !is_ident(n) || n == "sqrt" {
                return Err(Error::InvalidChart(format!("bad symbol name `{n}`")));
            }
            if !seen.insert(n.clone()) {
                return Err(Error::InvalidChart(format!("duplicate symbol `{n}`")));
            }
        }
        if let Some(sig) = &self.signature {
            if sig.iter().any(|s| *s != 1 && *s != -1) {
                return Err(Error::InvalidSignature(format!("{sig:?}")));
            }
        }
        let tangent_base = if self.tangent {
            if !self.coords.len().is_multiple_of(2) || self.coords.is_empty() {
                return Err(Error::InvalidChart(
                    "tangent chart needs an even number of coordinates".into(),
                ));
            }
            Some(self.coords.len() / 2)
        } else {
            None
        };
        let mut rank = 0u32;
        let mut next = |name: &str| {
            let a = Atom::symbol(rank, name);
            rank += 1;
            a
        };
        let coords: Vec<Atom> = self.coords.iter().map(|n| next(n)).collect();
        let params: Vec<Atom> = self.params.iter().map(|n| next(n)).collect();
        let mut chart = Chart {
            name: self.name,
            coords,
            params,
            extensions: Vec::new(),
            functions: self.functions,
            signature: self.signature,
            tangent_base,
        };
        for (sym, text) in &self.extensions {
            let q = chart.parse(text)?;
            if !q.is_polynomial() || q.atoms().iter().any(|a| !a.is_symbol()) {
                return Err(Error::InvalidChart(format!(
                    "radicand of `{sym}` must be a polynomial in chart symbols"
                )));
            }
            if q.numerator().is_constant() {
                return Err(Error::InvalidChart(format!(
                    "radicand of `{sym}` is constant"
                )));
            }
            let r = chart.next_rank();
            chart
                .extensions
                .push(Atom::radical(r, sym, q.numerator().clone()));
        }
        Ok(Arc::new(chart))
    }
}

fn is_ident(s: &str) -> bool {
    let mut ch = s.chars();
    ch.next().is_some_and(|c| c.is_ascii_alphabetic())
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !s.contains("__")
}

impl Chart {
    pub fn builder(name: &str) -> ChartBuilder {
        ChartBuilder {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn next_rank(&self) -> u32 {
        (self.coords.len() + self.params.len() + self.extensions.len()) as u32
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Atom] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Atom {
        &self.coords[i]
    }

    pub fn params(&self) -> &[Atom] {
        &self.params
    }

    pub fn extensions(&self) -> &[Atom] {
        &self.extensions
    }

    pub fn functions(&self) -> &[String] {
        &self.functions
    }

    pub fn signature(&self) -> Option<&[i32]> {
        self.signature.as_deref()
    }

    pub fn tangent_base(&self) -> Option<usize> {
        self.tangent_base
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|a| a.name() == name)
    }

    pub fn symbol(&self, name: &str) -> Option<&Atom> {
        self.coords
            .iter()
            .chain(&self.params)
            .chain(&self.extensions)
            .find(|a| a.name() == name)
    }

    /// Expression for a named symbol. Panics on unknown names; meant for
    /// built-in charts.
    pub fn var(&self, name: &str) -> Expr {
        Expr::atom(
            self.symbol(name)
                .unwrap_or_else(|| panic!("chart `{}` has no symbol `{name}`", self.name)),
        )
    }

    /// Expression for the i-th coordinate.
    pub fn x(&self, i: usize) -> Expr {
        Expr::atom(&self.coords[i])
    }

    pub fn same_as(&self, other: &Chart) -> bool {
        std::ptr::eq(self, other)
            || (self.name == other.name
                && self.coords.len() == other.coords.len()
                && self
                    .coords
                    .iter()
                    .zip(&other.coords)
                    .all(|(a, b)| a == b))
    }

    /// Parses and normalizes an expression over this chart.
    pub fn parse(&self, text: &str) -> Result<Expr> {
        self.normalize(&parse_ast(text)?)
    }

    /// Canonical form of a syntax tree.
    pub fn normalize(&self, ast: &Ast) -> Result<Expr> {
        Ok(match ast {
            Ast::Num(q) => Expr::rational(q.clone()),
            Ast::Ident(name) => Expr::atom(
                self.symbol(name)
                    .ok_or_else(|| Error::UnknownIdentifier(name.clone()))?,
            ),
            Ast::Call(name, arg) => {
                let (head, order) = split_derivative(name);
                if !self.functions.iter().any(|f| f == head) {
                    return Err(Error::UnknownIdentifier(name.clone()));
                }
                let arg = self.normalize(arg)?;
                Expr::atom(&Atom::apply(head, order, arg))
            }
            Ast::Sqrt(arg) => {
                let q = self.normalize(arg)?;
                let s = self
                    .radical_for(&q)
                    .ok_or_else(|| Error::UnknownRadical(q.to_string()))?;
                Expr::atom(s)
            }
            Ast::Neg(a) => -self.normalize(a)?,
            Ast::Add(a, b) => self.normalize(a)? + self.normalize(b)?,
            Ast::Sub(a, b) => self.normalize(a)? - self.normalize(b)?,
            Ast::Mul(a, b) => self.normalize(a)? * self.normalize(b)?,
            Ast::Div(a, b) => self.normalize(a)?.try_div(&self.normalize(b)?)?,
            Ast::Pow(a, e) => {
                let e = i32::try_from(*e).map_err(|_| Error::Syntax {
                    pos: 0,
                    msg: "exponent out of range".into(),
                })?;
                self.normalize(a)?.pow(e)?
            }
        })
    }

    fn radical_for(&self, q: &Expr) -> Option<&Atom> {
        if !q.is_polynomial() {
            return None;
        }
        self.extensions
            .iter()
            .find(|s| s.radicand() == Some(q.numerator()))
    }

    /// Parses `text`, adjoining a fresh extension for every `sqrt(q)` that
    /// has no matching extension yet.
    pub fn parse_adjoining(self: &Arc<Self>, text: &str) -> Result<(Arc<Chart>, Expr)> {
        let ast = parse_ast(text)?;
        let mut chart = Arc::clone(self);
        let mut radicands = Vec::new();
        collect_sqrt(&ast, &mut radicands);
        for r in radicands {
            let q = chart.normalize(r)?;
            if chart.radical_for(&q).is_some() {
                continue;
            }
            if !q.is_polynomial() || q.atoms().iter().any(|a| !a.is_symbol()) {
                return Err(Error::UnknownRadical(q.to_string()));
            }
            let mut k = chart.extensions.len();
            let name = loop {
                let n = format!("sqrt{k}");
                if chart.symbol(&n).is_none() {
                    break n;
                }
                k += 1;
            };
            let mut extensions = chart.extensions.clone();
            extensions.push(Atom::radical(chart.next_rank(), &name, q.numerator().clone()));
            chart = Arc::new(Chart {
                name: chart.name.clone(),
                coords: chart.coords.clone(),
                params: chart.params.clone(),
                extensions,
                functions: chart.functions.clone(),
                signature: chart.signature.clone(),
                tangent_base: chart.tangent_base,
            });
        }
        let e = chart.normalize(&ast)?;
        Ok((chart, e))
    }

    pub fn from_config(cfg: &ChartConfig) -> Result<Arc<Chart>> {
        let mut b = Chart::builder(&cfg.name)
            .coords(&cfg.coordinates)
            .params(&cfg.params);
        if cfg.tangent {
            b = b.tangent();
        }
        for e in &cfg.extensions {
            if e.branch != "positive" {
                return Err(Error::Config(format!(
                    "extension `{}`: only the positive branch is supported",
                    e.symbol
                )));
            }
            b = b.extension(&e.symbol, &e.polynomial);
        }
        for f in &cfg.functions {
            b = b.function(f);
        }
        if let Some(sig) = &cfg.signature {
            b = b.signature(sig);
        }
        b.build()
    }

    pub fn load(path: &Path) -> Result<Arc<Chart>> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let cfg: ChartConfig =
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Chart::from_config(&cfg)
    }

    pub fn to_config(&self) -> ChartConfig {
        ChartConfig {
            name: self.name.clone(),
            coordinates: self.coords.iter().map(|a| a.name().to_string()).collect(),
            params: self.params.iter().map(|a| a.name().to_string()).collect(),
            tangent: self.tangent_base.is_some(),
            extensions: self
                .extensions
                .iter()
                .map(|s| ExtensionConfig {
                    symbol: s.name().to_string(),
                    polynomial: s.radicand().map(|q| q.to_string()).unwrap_or_default(),
                    branch: "positive".into(),
                })
                .collect(),
            functions: self.functions.clone(),
            signature: self.signature.clone(),
        }
    }

    /// Map from symbol name to atom, for substitution across charts.
    pub fn symbol_table(&self) -> BTreeMap<String, Atom> {
        self.coords
            .iter()
            .chain(&self.params)
            .chain(&self.extensions)
            .map(|a| (a.name().to_string(), a.clone()))
            .collect()
    }

    /// Radicand of an extension symbol as an expression.
    pub fn radicand(&self, name: &str) -> Option<Expr> {
        self.symbol(name)
            .and_then(|a| a.radicand())
            .map(|p: &Poly| Expr::from_poly(p.clone()))
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Chart) -> bool {
        self.same_as(other)
    }
}

impl Eq for Chart {}

fn split_derivative(name: &str) -> (&str, u32) {
    if let Some((head, k)) = name.rsplit_once("__") {
        if let Ok(k) = k.parse::<u32>() {
            return (head, k);
        }
    }
    (name, 0)
}

fn collect_sqrt<'a>(ast: &'a Ast, out: &mut Vec<&'a Ast>) {
    match ast {
        Ast::Sqrt(a) => {
            collect_sqrt(a, out);
            out.push(a);
        }
        Ast::Call(_, a) | Ast::Neg(a) | Ast::Pow(a, _) => collect_sqrt(a, out),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => {
            collect_sqrt(a, out);
            collect_sqrt(b, out);
        }
        Ast::Num(_) | Ast::Ident(_) => {}
    }
}

/// On-disk chart description (TOML).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartConfig {
    pub name: String,
    pub coordinates: Vec<String>,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub tangent: bool,
    #[serde(default)]
    pub extensions: Vec<ExtensionConfig>,
    #[serde(default)]
    pub functions: Vec<String>,
    #[serde(default)]
    pub signature: Option<Vec<i32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionConfig {
    pub symbol: String,
    pub polynomial: String,
    #[serde(default = "positive")]
    pub branch: String,
}

fn positive() -> String {
    "positive".into()
}
