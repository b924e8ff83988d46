//! Instance files: one cost spec and one right-hand side, rationals as `"p/q"` text.
//!
//! ```toml
//! u = "0"
//! v = "0"
//! b1 = "1"
//! b2 = "0"
//!
//! [beta]
//! prefix = ["1"]
//! tail = ["0", "0", "0"]   # a, b, s: βₖ = a·k + b + s·⌊√k⌋ past the prefix
//! ```
//!
//! Integers may also be written as bare TOML integers.

use std::path::Path;

use galegap_core::numeric::{parse_ratio, Ratio};
use galegap_core::{CostSpec, Rhs, Tail, TailSeq};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RatText {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BetaFile {
    #[serde(default)]
    prefix: Vec<RatText>,
    tail: [RatText; 3],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    u: RatText,
    v: RatText,
    b1: RatText,
    b2: RatText,
    beta: BetaFile,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub cost: CostSpec,
    pub rhs: Rhs,
}

fn field(origin: &str, name: &str, value: &RatText) -> CliResult<Ratio> {
    match value {
        RatText::Int(n) => Ok(Ratio::from_integer((*n).into())),
        RatText::Text(t) => parse_ratio(t.trim())
            .map_err(|_| CliError::parse(format!("{origin}: field `{name}`"), format!("not a rational: {t:?}"))),
    }
}

impl Instance {
    pub fn parse(text: &str, origin: &str) -> CliResult<Self> {
        let raw: InstanceFile = toml::from_str(text).map_err(|e| CliError::parse(origin, e.message().to_string() + &span_note(text, e.span())))?;
        let prefix = raw
            .beta
            .prefix
            .iter()
            .enumerate()
            .map(|(i, p)| field(origin, &format!("beta.prefix[{i}]"), p))
            .collect::<CliResult<Vec<_>>>()?;
        let [a, b, s] = &raw.beta.tail;
        let tail = Tail::new(
            field(origin, "beta.tail[0]", a)?,
            field(origin, "beta.tail[1]", b)?,
            field(origin, "beta.tail[2]", s)?,
        );
        let cost = CostSpec::new(
            field(origin, "u", &raw.u)?,
            field(origin, "v", &raw.v)?,
            TailSeq::new(prefix, tail),
        )?;
        let rhs = Rhs::new(field(origin, "b1", &raw.b1)?, field(origin, "b2", &raw.b2)?);
        Ok(Instance { cost, rhs })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let origin = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: origin.clone(), source })?;
        Self::parse(&text, &origin)
    }

    /// Inverse of [`Instance::parse`].
    pub fn to_toml(&self) -> String {
        let q = |r: &Ratio| format!("\"{r}\"");
        let beta = self.cost.beta();
        let prefix: Vec<String> = beta.prefix().iter().map(q).collect();
        let t = beta.tail();
        format!(
            "u = {}\nv = {}\nb1 = {}\nb2 = {}\n\n[beta]\nprefix = [{}]\ntail = [{}, {}, {}]\n",
            q(self.cost.u()),
            q(self.cost.v()),
            q(&self.rhs.b1),
            q(&self.rhs.b2),
            prefix.join(", "),
            q(&t.slope),
            q(&t.offset),
            q(&t.sqrt_coeff),
        )
    }
}

fn span_note(text: &str, span: Option<std::ops::Range<usize>>) -> String {
    match span {
        Some(r) => {
            let line = text[..r.start.min(text.len())].matches('\n').count() + 1;
            format!(" (line {line})")
        }
        None => String::new(),
    }
}
