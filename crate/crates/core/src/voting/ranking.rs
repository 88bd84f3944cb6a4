use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weak order over candidates `0..m`, as tiers from best to worst.
///
/// A linear order is a ranking whose tiers are all singletons.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking {
    tiers: Vec<Vec<usize>>,
    /// Tier index of each candidate.
    rank: Vec<usize>,
}

impl Ranking {
    pub fn weak(tiers: Vec<Vec<usize>>) -> Result<Self> {
        let m: usize = tiers.iter().map(Vec::len).sum();
        let mut rank = vec![usize::MAX; m];
        for (t, tier) in tiers.iter().enumerate() {
            if tier.is_empty() {
                return Err(Error::InvalidParameter("ranking has an empty indifference class".into()));
            }
            for &c in tier {
                if c >= m || rank[c] != usize::MAX {
                    return Err(Error::InvalidParameter(format!(
                        "ranking must list each of {m} candidates exactly once"
                    )));
                }
                rank[c] = t;
            }
        }
        let mut tiers = tiers;
        for tier in &mut tiers {
            tier.sort_unstable();
        }
        Ok(Ranking { tiers, rank })
    }

    pub fn linear(order: Vec<usize>) -> Result<Self> {
        Self::weak(order.into_iter().map(|c| vec![c]).collect())
    }

    pub fn candidates(&self) -> usize {
        self.rank.len()
    }

    pub fn tiers(&self) -> &[Vec<usize>] {
        &self.tiers
    }

    pub fn is_linear(&self) -> bool {
        self.tiers.iter().all(|t| t.len() == 1)
    }

    /// Tier index of `c`; 0 is best.
    pub fn tier_of(&self, c: usize) -> usize {
        self.rank[c]
    }

    /// `a` strictly above `b`.
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }

    /// -1, 0 or 1 as `a` is below, tied with or above `b`.
    pub fn compare(&self, a: usize, b: usize) -> i8 {
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => 1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => -1,
        }
    }

    /// Candidates strictly below `c`.
    pub fn below(&self, c: usize) -> usize {
        self.tiers[self.rank[c] + 1..].iter().map(Vec::len).sum()
    }

    pub fn top(&self) -> &[usize] {
        &self.tiers[0]
    }

    /// Renders as `a>b=c` with the given candidate names.
    pub fn render(&self, names: &[String]) -> String {
        self.tiers
            .iter()
            .map(|t| t.iter().map(|&c| names[c].as_str()).collect::<Vec<_>>().join("="))
            .collect::<Vec<_>>()
            .join(">")
    }

    /// Parses `a>b=c`.
    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let mut tiers = Vec::new();
        for tier in text.split('>') {
            let mut t = Vec::new();
            for name in tier.split('=') {
                let name = name.trim();
                let c = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown candidate `{name}` in ranking `{text}`")))?;
                t.push(c);
            }
            tiers.push(t);
        }
        let r = Self::weak(tiers)?;
        if r.candidates() != names.len() {
            return Err(Error::InvalidParameter(format!(
                "ranking `{text}` lists {} of {} candidates",
                r.candidates(),
                names.len()
            )));
        }
        Ok(r)
    }

    /// Every linear order of `m` candidates, lexicographic.
    pub fn all_linear(m: usize) -> Vec<Ranking> {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..m).collect();
        loop {
            out.push(Ranking::linear(perm.clone()).expect("permutation"));
            // Next lexicographic permutation.
            let Some(i) = (1..m).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
            let j = (i..m).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor exists");
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
        out
    }

    /// Every weak order of `m` candidates, sorted by tier structure.
    pub fn all_weak(m: usize) -> Vec<Ranking> {
        let mut out = Vec::new();
        let mut assign = vec![0usize; m];
        loop {
            let used = assign.iter().copied().max().map_or(0, |t| t + 1);
            if (0..used).all(|t| assign.contains(&t)) {
                let tiers = (0..used).map(|t| (0..m).filter(|&c| assign[c] == t).collect()).collect();
                out.push(Ranking::weak(tiers).expect("ordered partition"));
            }
            let Some(pos) = (0..m).rev().find(|&i| assign[i] + 1 < m) else { break };
            assign[pos] += 1;
            for a in &mut assign[pos + 1..] {
                *a = 0;
            }
        }
        out.sort();
        out
    }
}

/// Candidate names `a, b, c, ...`.
pub fn candidate_names(m: usize) -> Vec<String> {
    (0..m)
        .map(|i| if i < 26 { char::from(b'a' + i as u8).to_string() } else { format!("c{i}") })
        .collect()
}

/// One ranking per voter over a shared candidate list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceProfile {
    candidates: Vec<String>,
    ballots: Vec<Ranking>,
}

impl PreferenceProfile {
    pub fn new(candidates: Vec<String>, ballots: Vec<Ranking>) -> Result<Self> {
        if candidates.len() < 2 {
            return Err(Error::InvalidParameter("a profile needs at least 2 candidates".into()));
        }
        if ballots.is_empty() {
            return Err(Error::InvalidParameter("a profile needs at least one ballot".into()));
        }
        if let Some(b) = ballots.iter().find(|b| b.candidates() != candidates.len()) {
            return Err(Error::InvalidParameter(format!(
                "ballot ranks {} candidates but the profile has {}",
                b.candidates(),
                candidates.len()
            )));
        }
        for (i, c) in candidates.iter().enumerate() {
            if candidates[..i].contains(c) {
                return Err(Error::InvalidParameter(format!("duplicate candidate `{c}`")));
            }
        }
        Ok(PreferenceProfile { candidates, ballots })
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }

    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }

    pub fn ballots(&self) -> &[Ranking] {
        &self.ballots
    }

    pub fn voters(&self) -> usize {
        self.ballots.len()
    }

    pub fn is_linear(&self) -> bool {
        self.ballots.iter().all(Ranking::is_linear)
    }

    /// Voters strictly preferring `a` to `b`.
    pub fn support(&self, a: usize, b: usize) -> usize {
        self.ballots.iter().filter(|r| r.prefers(a, b)).count()
    }

    /// `a; b; ...` with rankings rendered as `a>b=c`.
    pub fn label(&self) -> String {
        self.ballots.iter().map(|b| b.render(&self.candidates)).collect::<Vec<_>>().join(";")
    }

    pub fn to_file(&self) -> ProfileFile {
        ProfileFile {
            candidates: self.candidates.clone(),
            ballots: self
                .ballots
                .iter()
                .map(|b| {
                    if b.is_linear() {
                        BallotSpec::Order(b.tiers().iter().map(|t| self.candidates[t[0]].clone()).collect())
                    } else {
                        BallotSpec::Text(b.render(&self.candidates))
                    }
                })
                .collect(),
        }
    }

    pub fn from_file(file: &ProfileFile) -> Result<Self> {
        let names = &file.candidates;
        let ballots = file
            .ballots
            .iter()
            .map(|b| match b {
                BallotSpec::Text(t) => Ranking::parse(t, names),
                BallotSpec::Order(order) => Ranking::parse(&order.join(">"), names),
                BallotSpec::Tiers(tiers) => {
                    Ranking::parse(&tiers.iter().map(|t| t.join("=")).collect::<Vec<_>>().join(">"), names)
                }
            })
            .collect::<Result<_>>()?;
        Self::new(names.clone(), ballots)
    }
}

impl fmt::Display for PreferenceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Profile file: `{"candidates": [...], "ballots": [...]}`.
///
/// A ballot is a best-first list of names, a list of indifference classes,
/// or a string such as `"a>b=c"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    pub candidates: Vec<String>,
    pub ballots: Vec<BallotSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BallotSpec {
    Text(String),
    Order(Vec<String>),
    Tiers(Vec<Vec<String>>),
}

/// Parses a profile file.
pub fn parse_profile(text: &str) -> Result<PreferenceProfile> {
    let file: ProfileFile = serde_json::from_str(text)?;
    PreferenceProfile::from_file(&file)
}
