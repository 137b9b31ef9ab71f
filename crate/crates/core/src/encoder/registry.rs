use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::EncodeError;

/// Semantic meaning of a CNF variable. Point indices are 0-based here and
/// printed 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarTag {
    /// Triple `(a, b, c)` positively oriented (any index order).
    O(usize, usize, usize),
    /// Segment `ab` bounds `conv{a, b, c, d}`: written `E(a,b;c,d)`.
    E(usize, usize, usize, usize),
    /// Sorted 4-tuple in convex position.
    G4([usize; 4]),
    /// Point `i` strictly inside triangle `abc` (`a < b < c`).
    I(usize, [usize; 3]),
    /// Sorted triple is a 3-hole.
    H3([usize; 3]),
    /// Sorted `k`-subset (k >= 4) is a hole.
    Hole(Vec<usize>),
    /// Sorted `k`-subset (k >= 5) is a gon.
    Gon(Vec<usize>),
    /// Some `k`-hole lies left of `a -> b` (flavour depends on the mode).
    L(usize, usize, usize),
    /// Some `k`-hole lies right of `a -> b`.
    R(usize, usize, usize),
    /// Sequential-counter register: at least `j + 1` of the first `i + 1`
    /// counted variables are true.
    C(usize, usize),
}

fn join1(xs: &[usize]) -> String {
    xs.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for VarTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarTag::O(a, b, c) => write!(f, "O {}", join1(&[*a, *b, *c])),
            VarTag::E(a, b, c, d) => write!(f, "E {}", join1(&[*a, *b, *c, *d])),
            VarTag::G4(x) => write!(f, "G4 {}", join1(x)),
            VarTag::I(i, x) => write!(f, "I {} {}", i + 1, join1(x)),
            VarTag::H3(x) => write!(f, "H3 {}", join1(x)),
            VarTag::Hole(x) => write!(f, "H {}", join1(x)),
            VarTag::Gon(x) => write!(f, "G {}", join1(x)),
            VarTag::L(k, a, b) => write!(f, "L{k} {}", join1(&[*a, *b])),
            VarTag::R(k, a, b) => write!(f, "R{k} {}", join1(&[*a, *b])),
            // Counter registers are not point indices; printed as-is.
            VarTag::C(i, j) => write!(f, "C {i} {j}"),
        }
    }
}

impl FromStr for VarTag {
    type Err = EncodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EncodeError::Registry(format!("cannot parse tag {s:?}"));
        let mut parts = s.split_whitespace();
        let head = parts.next().ok_or_else(bad)?;
        let nums: Vec<usize> = parts.map(|p| p.parse::<usize>().map_err(|_| bad())).collect::<Result<_, _>>()?;
        let idx = |v: &[usize]| -> Result<Vec<usize>, EncodeError> {
            v.iter().map(|&x| x.checked_sub(1).ok_or_else(bad)).collect()
        };
        let tag = match (head, nums.len()) {
            ("O", 3) => {
                let v = idx(&nums)?;
                VarTag::O(v[0], v[1], v[2])
            }
            ("E", 4) => {
                let v = idx(&nums)?;
                VarTag::E(v[0], v[1], v[2], v[3])
            }
            ("G4", 4) => VarTag::G4(idx(&nums)?.try_into().map_err(|_| bad())?),
            ("I", 4) => {
                let v = idx(&nums)?;
                VarTag::I(v[0], [v[1], v[2], v[3]])
            }
            ("H3", 3) => VarTag::H3(idx(&nums)?.try_into().map_err(|_| bad())?),
            ("H", _) => VarTag::Hole(idx(&nums)?),
            ("G", _) => VarTag::Gon(idx(&nums)?),
            ("C", 2) => VarTag::C(nums[0], nums[1]),
            (h, 2) if h.len() > 1 && (h.starts_with('L') || h.starts_with('R')) => {
                let k: usize = h[1..].parse().map_err(|_| bad())?;
                let v = idx(&nums)?;
                if h.starts_with('L') {
                    VarTag::L(k, v[0], v[1])
                } else {
                    VarTag::R(k, v[0], v[1])
                }
            }
            _ => return Err(bad()),
        };
        Ok(tag)
    }
}

/// Bijection between tags and DIMACS ids (1-based, allocation order).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarRegistry {
    tags: Vec<VarTag>,
    ids: HashMap<VarTag, u32>,
}

impl VarRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn alloc(&mut self, tag: VarTag) -> i32 {
        debug_assert!(!self.ids.contains_key(&tag), "duplicate tag {tag}");
        self.tags.push(tag.clone());
        let id = self.tags.len() as u32;
        self.ids.insert(tag, id);
        id as i32
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn id(&self, tag: &VarTag) -> Option<u32> {
        self.ids.get(tag).copied()
    }

    pub fn tag(&self, id: u32) -> Option<&VarTag> {
        self.tags.get((id as usize).checked_sub(1)?)
    }

    /// `(id, tag)` in id order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &VarTag)> {
        self.tags.iter().enumerate().map(|(i, t)| (i as u32 + 1, t))
    }

    /// Number of variables per family letter (`O`, `E`, `G4`, ...).
    pub fn family_counts(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        for t in &self.tags {
            let name = t.to_string().split_whitespace().next().unwrap_or_default().to_string();
            match out.iter_mut().find(|(f, _)| *f == name) {
                Some((_, c)) => *c += 1,
                None => out.push((name, 1)),
            }
        }
        out
    }

    /// Sidecar text: one `"<id> <tag>"` line per variable.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (id, tag) in self.iter() {
            out.push_str(&format!("{id} {tag}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, EncodeError> {
        let mut reg = VarRegistry::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (id, tag) = line
                .split_once(' ')
                .ok_or_else(|| EncodeError::Registry(format!("line {}: {line:?}", lineno + 1)))?;
            let id: u32 = id.parse().map_err(|_| EncodeError::Registry(format!("line {}: bad id", lineno + 1)))?;
            if id as usize != reg.len() + 1 {
                return Err(EncodeError::Registry(format!("line {}: ids must be consecutive", lineno + 1)));
            }
            reg.alloc(tag.parse()?);
        }
        Ok(reg)
    }
}
