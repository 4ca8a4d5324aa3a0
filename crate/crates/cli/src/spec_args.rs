//! Turning command-line flags into a grading datum.

use clap::Args;
use serde_json::Value;

use finegrad::enumerate::spec_from_json;
use finegrad::grading::{GradingSpec, Series};
use finegrad::{Error, Result, TorsionElement, TorsionGroup};

/// Flags naming one grading. Either `--spec` with canonical JSON, or the
/// individual parameters.
#[derive(Args, Debug, Clone, Default)]
pub struct SpecArgs {
    /// Canonical JSON form of the spec, as printed by `enumerate`.
    #[arg(long, conflicts_with_all = ["series", "group", "k", "q", "s", "tau", "delta"])]
    pub spec: Option<String>,
    /// Series: AI, AII, B, C or D.
    #[arg(long)]
    pub series: Option<String>,
    /// The group T: `trivial`, a rank r (elementary 2-group of order 4^r), or
    /// a comma-separated invariant-factor list such as `3,3`.
    #[arg(long = "T", value_name = "T")]
    pub group: Option<String>,
    /// Number of blocks (AI).
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of symmetric blocks.
    #[arg(long)]
    pub q: Option<usize>,
    /// Number of block pairs.
    #[arg(long)]
    pub s: Option<usize>,
    /// Comma-separated elements of T (`e` for the identity, else exponent
    /// digits such as `10` or `10 01`).
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<String>,
    /// Sign of the involution (C: -1, B and D: 1).
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<i8>,
}

fn missing(flag: &str, series: Series) -> Error {
    Error::Parse(format!("series {series} needs --{flag}"))
}

/// Parses `--T`.
pub fn parse_group(text: &str) -> Result<TorsionGroup> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("trivial") {
        return Ok(TorsionGroup::trivial());
    }
    if !text.contains(',') {
        let r: usize = text
            .parse()
            .map_err(|_| Error::Parse(format!("--T '{text}' is neither 'trivial', a rank, nor a factor list")))?;
        return Ok(TorsionGroup::elementary(r));
    }
    let factors: Vec<u64> = text
        .split(',')
        .map(|f| f.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad invariant factor '{f}'"))))
        .collect::<Result<_>>()?;
    // Split into prime powers; each must occur an even number of times.
    let mut powers: Vec<u64> = Vec::new();
    for mut f in factors.into_iter().filter(|&f| f != 1) {
        if f == 0 {
            return Err(Error::Parse("invariant factors must be positive".into()));
        }
        let mut p = 2;
        while f > 1 {
            if f % p == 0 {
                let mut q = 1;
                while f % p == 0 {
                    f /= p;
                    q *= p;
                }
                powers.push(q);
            }
            p += 1;
        }
    }
    powers.sort_unstable();
    if powers.len() % 2 == 1 || powers.chunks(2).any(|c| c[0] != c[1]) {
        return Err(Error::Domain(format!(
            "--T '{text}' is not of the form H x H, so it carries no nondegenerate bicharacter"
        )));
    }
    let orders = powers
        .chunks(2)
        .map(|c| u8::try_from(c[0]).map_err(|_| Error::Domain(format!("cyclic order {} is too large", c[0]))))
        .collect::<Result<Vec<u8>>>()?;
    TorsionGroup::new(orders)
}

fn parse_tau(text: &str, group: &TorsionGroup) -> Result<Vec<TorsionElement>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|x| TorsionElement::parse(x, group)).collect()
}

impl SpecArgs {
    pub fn to_spec(&self) -> Result<GradingSpec> {
        if let Some(text) = &self.spec {
            let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("--spec is not JSON: {e}")))?;
            return spec_from_json(&v);
        }
        let series = Series::parse(self.series.as_deref().ok_or_else(|| Error::Parse("--series or --spec is required".into()))?)?;
        let group = match &self.group {
            Some(t) => parse_group(t)?,
            None => TorsionGroup::trivial(),
        };
        match series {
            Series::AI => {
                let k = self.k.ok_or_else(|| missing("k", series))?;
                GradingSpec::ai(group, k)
            }
            Series::AII | Series::B | Series::C | Series::D => {
                let q = self.q.unwrap_or(0);
                let s = self.s.unwrap_or(0);
                let tau = match &self.tau {
                    Some(text) => parse_tau(text, &group)?,
                    None if group.is_trivial() => vec![group.identity(); q],
                    None if q == 0 => Vec::new(),
                    None => return Err(missing("tau", series)),
                };
                let expected = match series {
                    Series::C => Some(-1),
                    Series::B | Series::D => Some(1),
                    _ => None,
                };
                match (self.delta, expected) {
                    (Some(d), Some(e)) if d != e => {
                        return Err(Error::InvalidSpec(format!("series {series} has delta = {e}, not {d}")))
                    }
                    (Some(d), None) => {
                        return Err(Error::InvalidSpec(format!("series {series} takes no delta (got {d})")))
                    }
                    _ => {}
                }
                match series {
                    Series::AII => GradingSpec::aii(group, q, s, tau),
                    Series::B => {
                        if !group.is_trivial() || tau.iter().any(|x| !x.is_identity()) {
                            return Err(Error::InvalidSpec("series B needs trivial T".into()));
                        }
                        GradingSpec::b(q, s)
                    }
                    Series::C => GradingSpec::c(group, q, s, tau),
                    _ => GradingSpec::d(group, q, s, tau),
                }
            }
            _ => Err(Error::Domain(format!("series {series} is not a Lie series"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups() {
        assert!(parse_group("trivial").unwrap().is_trivial());
        assert_eq!(parse_group("2").unwrap(), TorsionGroup::elementary(2));
        assert_eq!(parse_group("3,3").unwrap().orders(), &[3]);
        assert_eq!(parse_group("6,6").unwrap().orders(), &[2, 3]);
        assert!(matches!(parse_group("2,4"), Err(Error::Domain(_))));
        assert!(matches!(parse_group("x"), Err(Error::Parse(_))));
    }

    #[test]
    fn flags_to_spec() {
        let args = SpecArgs {
            series: Some("C".into()),
            group: Some("1".into()),
            q: Some(1),
            tau: Some("11".into()),
            delta: Some(-1),
            ..Default::default()
        };
        let spec = args.to_spec().unwrap();
        assert_eq!((spec.q, spec.s, spec.r()), (1, 0, 1));
        let wrong = SpecArgs { delta: Some(1), ..args };
        assert!(matches!(wrong.to_spec(), Err(Error::InvalidSpec(_))));
    }
}
