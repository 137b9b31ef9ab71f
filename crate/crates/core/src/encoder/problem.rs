use std::fmt;
use std::str::FromStr;

use super::EncodeError;

/// What the instance forbids (or, in count mode, bounds).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// No two disjoint holes of sizes `k1` and `k2`. Size 2 means any pair.
    TwoDisjointHoles { k1: usize, k2: usize },
    /// No two interior-disjoint holes of sizes `k1` and `k2`.
    TwoInteriorDisjointHoles { k1: usize, k2: usize },
    ForbidHole { k: usize },
    ForbidGon { k: usize },
    /// Fewer than `threshold` holes of size `k`.
    CountHoles { k: usize, threshold: usize },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::TwoDisjointHoles { .. } => "two-disjoint-holes",
            Mode::TwoInteriorDisjointHoles { .. } => "two-interior-disjoint-holes",
            Mode::ForbidHole { .. } => "forbid-hole",
            Mode::ForbidGon { .. } => "forbid-gon",
            Mode::CountHoles { .. } => "count-holes",
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        match *self {
            Mode::TwoDisjointHoles { k1, k2 } | Mode::TwoInteriorDisjointHoles { k1, k2 } => vec![k1, k2],
            Mode::ForbidHole { k } | Mode::ForbidGon { k } | Mode::CountHoles { k, .. } => vec![k],
        }
    }

    /// Builds a mode from its name, sizes, and (count mode only) threshold.
    pub fn from_parts(name: &str, sizes: &[usize], threshold: Option<usize>) -> Result<Mode, EncodeError> {
        let bad = |msg: String| EncodeError::InvalidProblem(msg);
        let pair = || match sizes {
            [k1, k2] => Ok((*k1, *k2)),
            _ => Err(bad(format!("{name} takes two sizes, got {sizes:?}"))),
        };
        let single = || match sizes {
            [k] => Ok(*k),
            _ => Err(bad(format!("{name} takes one size, got {sizes:?}"))),
        };
        let mode = match name {
            "two-disjoint-holes" => pair().map(|(k1, k2)| Mode::TwoDisjointHoles { k1, k2 })?,
            "two-interior-disjoint-holes" => pair().map(|(k1, k2)| Mode::TwoInteriorDisjointHoles { k1, k2 })?,
            "forbid-hole" => Mode::ForbidHole { k: single()? },
            "forbid-gon" => Mode::ForbidGon { k: single()? },
            "count-holes" => Mode::CountHoles {
                k: single()?,
                threshold: threshold.ok_or_else(|| bad("count-holes needs a threshold".into()))?,
            },
            other => return Err(bad(format!("unknown mode {other:?}"))),
        };
        if threshold.is_some() && !matches!(mode, Mode::CountHoles { .. }) {
            return Err(bad(format!("threshold is only meaningful for count-holes, not {name}")));
        }
        Ok(mode)
    }
}

/// How orientation variables are laid out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Encoding {
    /// Six variables per triple tied together by explicit clauses.
    PaperFaithful,
    /// One variable per sorted triple; other orders are literals of it.
    #[default]
    Compact,
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Encoding::PaperFaithful => "paper-faithful",
            Encoding::Compact => "compact",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HoleProblem {
    pub n: usize,
    pub mode: Mode,
    pub encoding: Encoding,
    /// Implied 10-point window facts (two-disjoint (5,5) and its
    /// interior-disjoint variant only).
    pub hints: bool,
    /// L/R witnesses may contain the other endpoint's partner.
    pub relaxed_lr: bool,
    /// Holes of size >= 4 defined by their triangles only (no 4-gon terms).
    pub simplified_holes: bool,
}

impl HoleProblem {
    pub fn new(n: usize, mode: Mode) -> Self {
        HoleProblem {
            n,
            mode,
            encoding: Encoding::Compact,
            hints: false,
            relaxed_lr: false,
            simplified_holes: false,
        }
    }

    pub fn with_encoding(mut self, encoding: Encoding) -> Self {
        self.encoding = encoding;
        self
    }

    pub fn with_hints(mut self, on: bool) -> Self {
        self.hints = on;
        self
    }

    pub fn with_relaxed_lr(mut self, on: bool) -> Self {
        self.relaxed_lr = on;
        self
    }

    pub fn with_simplified_holes(mut self, on: bool) -> Self {
        self.simplified_holes = on;
        self
    }

    pub fn validate(&self) -> Result<(), EncodeError> {
        let bad = |msg: String| Err(EncodeError::InvalidProblem(msg));
        let (lo, hi) = match self.mode {
            Mode::TwoDisjointHoles { .. } => (2, 6),
            Mode::ForbidGon { .. } => (4, 6),
            _ => (3, 6),
        };
        for k in self.mode.sizes() {
            if k < lo || k > hi {
                return bad(format!("{} sizes must lie in {lo}..={hi}, got {k}", self.mode.name()));
            }
        }
        if self.n < 3 {
            return bad(format!("need at least 3 points, got {}", self.n));
        }
        let kmax = self.mode.sizes().into_iter().max().unwrap_or(0);
        if self.n < kmax {
            return bad(format!("n = {} is smaller than the hole size {kmax}", self.n));
        }
        if let Mode::CountHoles { threshold, .. } = self.mode {
            if threshold < 1 {
                return bad("count threshold must be at least 1".into());
            }
        }
        if self.relaxed_lr && !matches!(self.mode, Mode::TwoDisjointHoles { .. }) {
            return bad("relaxed L/R only applies to two-disjoint-holes".into());
        }
        if self.hints
            && !matches!(
                self.mode,
                Mode::TwoDisjointHoles { k1: 5, k2: 5 } | Mode::TwoInteriorDisjointHoles { k1: 5, k2: 5 }
            )
        {
            return bad(format!("hints are not implied facts for {}", self.mode_label()));
        }
        Ok(())
    }

    fn mode_label(&self) -> String {
        let sizes: Vec<String> = self.mode.sizes().iter().map(|k| k.to_string()).collect();
        format!("{} {}", self.mode.name(), sizes.join(","))
    }

    /// Sizes that need a hole (or gon) variable family, ascending.
    pub(crate) fn distinct_sizes(&self) -> Vec<usize> {
        let mut sizes = self.mode.sizes();
        sizes.sort_unstable();
        sizes.dedup();
        sizes
    }

    pub fn is_gon_mode(&self) -> bool {
        matches!(self.mode, Mode::ForbidGon { .. })
    }

    pub fn is_disjoint_mode(&self) -> bool {
        matches!(self.mode, Mode::TwoDisjointHoles { .. } | Mode::TwoInteriorDisjointHoles { .. })
    }
}

fn on_off(b: bool) -> &'static str {
    if b {
        "on"
    } else {
        "off"
    }
}

impl fmt::Display for HoleProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.mode.sizes().iter().map(|k| k.to_string()).collect();
        write!(f, "n={} mode={} sizes={}", self.n, self.mode.name(), sizes.join(","))?;
        if let Mode::CountHoles { threshold, .. } = self.mode {
            write!(f, " threshold={threshold}")?;
        }
        write!(
            f,
            " encoding={} hints={} relaxed-lr={} simplified-holes={}",
            self.encoding,
            on_off(self.hints),
            on_off(self.relaxed_lr),
            on_off(self.simplified_holes)
        )
    }
}

impl FromStr for HoleProblem {
    type Err = EncodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: String| EncodeError::InvalidProblem(msg);
        let mut n = None;
        let mut mode = None;
        let mut sizes = None;
        let mut threshold = None;
        let mut p = HoleProblem::new(0, Mode::ForbidHole { k: 3 });
        let flag = |v: &str| match v {
            "on" => Ok(true),
            "off" => Ok(false),
            other => Err(bad(format!("expected on/off, got {other:?}"))),
        };
        for token in s.split_whitespace() {
            let (key, value) = token.split_once('=').ok_or_else(|| bad(format!("malformed token {token:?}")))?;
            let num = |v: &str| v.parse::<usize>().map_err(|_| bad(format!("bad number {v:?}")));
            match key {
                "n" => n = Some(num(value)?),
                "mode" => mode = Some(value.to_string()),
                "sizes" => sizes = Some(value.split(',').map(num).collect::<Result<Vec<_>, _>>()?),
                "threshold" => threshold = Some(num(value)?),
                "encoding" => {
                    p.encoding = match value {
                        "paper-faithful" => Encoding::PaperFaithful,
                        "compact" => Encoding::Compact,
                        other => return Err(bad(format!("unknown encoding {other:?}"))),
                    }
                }
                "hints" => p.hints = flag(value)?,
                "relaxed-lr" => p.relaxed_lr = flag(value)?,
                "simplified-holes" => p.simplified_holes = flag(value)?,
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        p.n = n.ok_or_else(|| bad("missing n".into()))?;
        let name = mode.ok_or_else(|| bad("missing mode".into()))?;
        let sizes = sizes.ok_or_else(|| bad("missing sizes".into()))?;
        p.mode = Mode::from_parts(&name, &sizes, threshold)?;
        p.validate()?;
        Ok(p)
    }
}
