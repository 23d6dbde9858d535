//! Line-oriented state configuration.
//!
//! ```text
//! # five-spin squeezed state
//! spins = 5
//! kind  = squeezed
//! beta  = 0.2, 0
//! base  = coherent theta=0 phi=0
//! ```
//!
//! Each non-blank, non-comment line is `key = value`. `kind` and `spins` are
//! required. Nested states (`base`, `component`, `ket`, `bra`) are written
//! inline as `<kind> key=value ...`; an inline `raw` state lists its
//! amplitudes positionally. Complex numbers are `re,im` (or just `re`), and
//! angles accept `pi`, `pi/4`, `3*pi/2` and similar.
//!
//! | kind       | keys |
//! |------------|------|
//! | `fock`     | `excitations` |
//! | `coherent` | `theta`, `phi` |
//! | `cat`      | none |
//! | `basis`    | `k`, `l`, `m` (labels of the angular basis) |
//! | `raw`      | `amplitudes` (2^N `re,im` pairs; rescaled to unit norm) |
//! | `squeezed` | `beta`, optional `base` (default `coherent theta=0 phi=0`) |
//! | `mixture`  | repeated `component = <weight> <inline state>` |
//! | `outer`    | `ket`, `bra`: the operator `|ket⟩⟨bra|` |

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DVector;

use crate::omega_map::{push_density, push_operator, push_state};
use crate::states::{cat_state, fock_state, mixture, spin_coherent, squeezed_state};
use crate::{
    decompose_angular_basis, Error, HalfInt, OmegaMap, OscillatorDensity, Result, SpinOperator, SpinState, SpinSystem,
    C64,
};

#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Fock {
        spins: usize,
        excitations: usize,
    },
    Coherent {
        spins: usize,
        theta: f64,
        phi: f64,
    },
    Cat {
        spins: usize,
    },
    Basis {
        spins: usize,
        k: usize,
        l: HalfInt,
        m: HalfInt,
    },
    Raw {
        spins: usize,
        amplitudes: Vec<C64>,
    },
    Squeezed {
        spins: usize,
        beta: C64,
        base: Box<StateSpec>,
    },
    Mixture {
        spins: usize,
        components: Vec<(f64, StateSpec)>,
    },
    Outer {
        spins: usize,
        ket: Box<StateSpec>,
        bra: Box<StateSpec>,
    },
}

/// What a specification evaluates to.
#[derive(Clone, Debug)]
pub enum Operand {
    Pure(SpinState),
    Mixed(SpinOperator),
    /// An operator that need not be a density (e.g. `|a⟩⟨b|`).
    General(SpinOperator),
}

impl Operand {
    pub fn n(&self) -> usize {
        match self {
            Operand::Pure(s) => s.n(),
            Operand::Mixed(o) | Operand::General(o) => o.n(),
        }
    }

    pub fn push(&self, omega: &OmegaMap) -> Result<OscillatorDensity> {
        match self {
            Operand::Pure(s) => push_state(omega, s),
            Operand::Mixed(rho) => push_density(omega, rho),
            Operand::General(op) => Ok(push_operator(omega, op)),
        }
    }

    /// True for states and mixtures, whose trace is one.
    pub fn is_density(&self) -> bool {
        !matches!(self, Operand::General(_))
    }
}

struct Fields<'a> {
    entries: Vec<(&'a str, &'a str)>,
    positional: Vec<&'a str>,
    context: String,
}

impl<'a> Fields<'a> {
    fn get(&self, key: &str) -> Option<&'a str> {
        let mut found = self.entries.iter().filter(|(k, _)| *k == key);
        found.next().map(|(_, v)| *v)
    }

    fn all(&self, key: &str) -> Vec<&'a str> {
        self.entries
            .iter()
            .filter(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .collect()
    }

    fn required(&self, key: &str) -> Result<&'a str> {
        self.get(key)
            .ok_or_else(|| Error::Validation(format!("{}: missing '{key}'", self.context)))
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for (k, _) in &self.entries {
            if !allowed.contains(k) {
                return Err(Error::Validation(format!("{}: unknown key '{k}'", self.context)));
            }
        }
        let mut seen: Vec<&str> = Vec::new();
        for (k, _) in &self.entries {
            if *k != "component" && seen.contains(k) {
                return Err(Error::Validation(format!("{}: key '{k}' given twice", self.context)));
            }
            seen.push(k);
        }
        Ok(())
    }
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Validation(format!("{what}: '{s}' is not a non-negative integer")))
}

/// A real number, optionally written with `pi`.
pub fn parse_real(s: &str) -> Result<f64> {
    let t: String = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_lowercase();
    let bad = || Error::Validation(format!("'{s}' is not a number"));
    if let Ok(v) = t.parse::<f64>() {
        return if v.is_finite() { Ok(v) } else { Err(bad()) };
    }
    if !t.contains("pi") {
        return Err(bad());
    }
    let (numer, denom) = match t.split_once('/') {
        Some((a, b)) => (a.to_string(), b.parse::<f64>().map_err(|_| bad())?),
        None => (t.clone(), 1.0),
    };
    let coefficient = match numer.as_str() {
        "pi" => 1.0,
        "-pi" => -1.0,
        other => {
            let c = other
                .strip_suffix("*pi")
                .or_else(|| other.strip_suffix("pi"))
                .ok_or_else(bad)?;
            c.parse::<f64>().map_err(|_| bad())?
        }
    };
    let v = coefficient * PI / denom;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

/// `re,im` or `re`.
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    match t.split_once(',') {
        Some((re, im)) => Ok(C64::new(parse_real(re)?, parse_real(im)?)),
        None => Ok(C64::new(parse_real(&t)?, 0.0)),
    }
}

fn parse_amplitudes(tokens: &[&str]) -> Result<Vec<C64>> {
    tokens.iter().map(|t| parse_complex(t)).collect()
}

fn format_complex(z: C64) -> String {
    format!("{},{}", z.re, z.im)
}

impl StateSpec {
    /// Parses a whole configuration file.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Validation(format!("line {}: expected 'key = value'", lineno + 1)))?;
            entries.push((key.trim(), value.trim()));
        }
        let fields = Fields {
            entries,
            positional: Vec::new(),
            context: "state file".into(),
        };
        let spins = parse_usize(fields.required("spins")?, "spins")?;
        SpinSystem::new(spins)?;
        let kind = fields.required("kind")?;
        Self::from_fields(kind, &fields, spins, true)
    }

    /// Parses an inline `<kind> key=value ...` description.
    pub fn parse_inline(text: &str, spins: usize) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let kind = tokens
            .next()
            .ok_or_else(|| Error::Validation("empty inline state".into()))?;
        let mut entries = Vec::new();
        let mut positional = Vec::new();
        for tok in tokens {
            match tok.split_once('=') {
                Some((k, v)) => entries.push((k, v)),
                None => positional.push(tok),
            }
        }
        let fields = Fields {
            entries,
            positional,
            context: format!("inline state '{text}'"),
        };
        Self::from_fields(kind, &fields, spins, false)
    }

    fn from_fields(kind: &str, f: &Fields<'_>, spins: usize, top: bool) -> Result<Self> {
        let with_common = |keys: &[&str]| -> Vec<String> {
            let mut v: Vec<String> = keys.iter().map(|s| s.to_string()).collect();
            if top {
                v.push("spins".into());
                v.push("kind".into());
            }
            v
        };
        let allow = |keys: &[&str]| -> Result<()> {
            let owned = with_common(keys);
            let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
            f.check_keys(&refs)
        };
        if kind != "raw" && !f.positional.is_empty() {
            return Err(Error::Validation(format!(
                "{}: unexpected '{}'",
                f.context, f.positional[0]
            )));
        }
        let spec = match kind {
            "fock" => {
                allow(&["excitations"])?;
                StateSpec::Fock {
                    spins,
                    excitations: parse_usize(f.required("excitations")?, "excitations")?,
                }
            }
            "coherent" => {
                allow(&["theta", "phi"])?;
                StateSpec::Coherent {
                    spins,
                    theta: parse_real(f.required("theta")?)?,
                    phi: f.get("phi").map(parse_real).transpose()?.unwrap_or(0.0),
                }
            }
            "cat" => {
                allow(&[])?;
                StateSpec::Cat { spins }
            }
            "basis" => {
                allow(&["k", "l", "m"])?;
                StateSpec::Basis {
                    spins,
                    k: f.get("k").map(|s| parse_usize(s, "k")).transpose()?.unwrap_or(0),
                    l: f.required("l")?.parse()?,
                    m: f.required("m")?.parse()?,
                }
            }
            "raw" => {
                allow(&["amplitudes"])?;
                let amplitudes = match f.get("amplitudes") {
                    Some(list) => parse_amplitudes(&list.split_whitespace().collect::<Vec<_>>())?,
                    None => parse_amplitudes(&f.positional)?,
                };
                StateSpec::Raw { spins, amplitudes }
            }
            "squeezed" => {
                allow(&["beta", "base"])?;
                let base = match f.get("base") {
                    Some(b) => Self::parse_inline(b, spins)?,
                    None => StateSpec::Coherent {
                        spins,
                        theta: 0.0,
                        phi: 0.0,
                    },
                };
                StateSpec::Squeezed {
                    spins,
                    beta: parse_complex(f.required("beta")?)?,
                    base: Box::new(base),
                }
            }
            "mixture" => {
                allow(&["component"])?;
                let mut components = Vec::new();
                for c in f.all("component") {
                    let (w, rest) = c
                        .trim()
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| Error::Validation(format!("component '{c}' needs a weight and a state")))?;
                    components.push((parse_real(w)?, Self::parse_inline(rest, spins)?));
                }
                if components.is_empty() {
                    return Err(Error::Validation("mixture needs at least one 'component'".into()));
                }
                StateSpec::Mixture { spins, components }
            }
            "outer" => {
                allow(&["ket", "bra"])?;
                StateSpec::Outer {
                    spins,
                    ket: Box::new(Self::parse_inline(f.required("ket")?, spins)?),
                    bra: Box::new(Self::parse_inline(f.required("bra")?, spins)?),
                }
            }
            other => return Err(Error::Validation(format!("unknown state kind '{other}'"))),
        };
        Ok(spec)
    }

    pub fn spins(&self) -> usize {
        match self {
            StateSpec::Fock { spins, .. }
            | StateSpec::Coherent { spins, .. }
            | StateSpec::Cat { spins }
            | StateSpec::Basis { spins, .. }
            | StateSpec::Raw { spins, .. }
            | StateSpec::Squeezed { spins, .. }
            | StateSpec::Mixture { spins, .. }
            | StateSpec::Outer { spins, .. } => *spins,
        }
    }

    fn pure(&self) -> Result<SpinState> {
        match self.build()? {
            Operand::Pure(s) => Ok(s),
            _ => Err(Error::Validation(format!("'{self}' is not a pure state"))),
        }
    }

    pub fn build(&self) -> Result<Operand> {
        let n = self.spins();
        SpinSystem::new(n)?;
        Ok(match self {
            StateSpec::Fock { excitations, .. } => Operand::Pure(fock_state(n, *excitations)?),
            StateSpec::Coherent { theta, phi, .. } => Operand::Pure(spin_coherent(n, *theta, *phi)?),
            StateSpec::Cat { .. } => Operand::Pure(cat_state(n)?),
            StateSpec::Basis { k, l, m, .. } => {
                let basis = decompose_angular_basis(n)?;
                let entry = basis
                    .get(*k, *l, *m)
                    .ok_or_else(|| Error::Validation(format!("no basis vector |k={k}, l={l}, m={m}⟩ for {n} spins")))?;
                Operand::Pure(entry.vector.clone())
            }
            StateSpec::Raw { amplitudes, .. } => {
                Operand::Pure(SpinState::normalized(n, DVector::from_vec(amplitudes.clone()))?)
            }
            StateSpec::Squeezed { beta, base, .. } => Operand::Pure(squeezed_state(n, *beta, &base.pure()?)?),
            StateSpec::Mixture { components, .. } => {
                let parts = components
                    .iter()
                    .map(|(w, s)| Ok((*w, s.pure()?)))
                    .collect::<Result<Vec<_>>>()?;
                Operand::Mixed(mixture(&parts)?)
            }
            StateSpec::Outer { ket, bra, .. } => Operand::General(ket.pure()?.outer(&bra.pure()?)?),
        })
    }

    fn fmt_inline(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Fock { excitations, .. } => write!(f, "fock excitations={excitations}"),
            StateSpec::Coherent { theta, phi, .. } => write!(f, "coherent theta={theta} phi={phi}"),
            StateSpec::Cat { .. } => write!(f, "cat"),
            StateSpec::Basis { k, l, m, .. } => write!(f, "basis k={k} l={l} m={m}"),
            StateSpec::Raw { amplitudes, .. } => {
                write!(f, "raw")?;
                for a in amplitudes {
                    write!(f, " {}", format_complex(*a))?;
                }
                Ok(())
            }
            StateSpec::Squeezed { beta, base, .. } => {
                write!(f, "squeezed beta={} base=(", format_complex(*beta))?;
                base.fmt_inline(f)?;
                write!(f, ")")
            }
            StateSpec::Mixture { components, .. } => {
                write!(f, "mixture")?;
                for (w, c) in components {
                    write!(f, " component=({w} ")?;
                    c.fmt_inline(f)?;
                    write!(f, ")")?;
                }
                Ok(())
            }
            StateSpec::Outer { ket, bra, .. } => {
                write!(f, "outer ket=(")?;
                ket.fmt_inline(f)?;
                write!(f, ") bra=(")?;
                bra.fmt_inline(f)?;
                write!(f, ")")
            }
        }
    }
}

/// Single-line canonical description, used in output headers.
impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "spins={} ", self.spins())?;
        self.fmt_inline(f)
    }
}
