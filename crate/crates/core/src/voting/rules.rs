//! Single-winner rules and social orders. Ties go to the lowest candidate index.

use serde::{Deserialize, Serialize};

use super::ranking::{PreferenceProfile, Ranking};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VotingRule {
    Plurality,
    Borda,
    Copeland,
    Black,
}

impl VotingRule {
    pub const ALL: [VotingRule; 4] = [VotingRule::Plurality, VotingRule::Borda, VotingRule::Copeland, VotingRule::Black];

    pub fn as_str(self) -> &'static str {
        match self {
            VotingRule::Plurality => "plurality",
            VotingRule::Borda => "borda",
            VotingRule::Copeland => "copeland",
            VotingRule::Black => "black",
        }
    }

    pub fn parse(name: &str) -> Option<VotingRule> {
        Self::ALL.into_iter().find(|r| r.as_str() == name)
    }

    pub fn winner(self, profile: &PreferenceProfile) -> usize {
        match self {
            VotingRule::Plurality => plurality(profile),
            VotingRule::Borda => borda(profile),
            VotingRule::Copeland => copeland(profile),
            VotingRule::Black => blacks_rule(profile),
        }
    }

    /// Scores whose maximum (lowest index on ties) is the winner; `None` for Black's rule.
    pub fn scores(self, profile: &PreferenceProfile) -> Option<Vec<i64>> {
        match self {
            VotingRule::Plurality => Some(plurality_scores(profile)),
            VotingRule::Borda => Some(borda_scores(profile)),
            VotingRule::Copeland => Some(copeland_scores(profile)),
            VotingRule::Black => None,
        }
    }
}

/// `a` beats `b`: more voters strictly prefer `a` than strictly prefer `b`.
pub fn beats(profile: &PreferenceProfile, a: usize, b: usize) -> bool {
    profile.support(a, b) > profile.support(b, a)
}

/// The candidate beating every other in pairwise majority, if any.
pub fn condorcet_winner(profile: &PreferenceProfile) -> Option<usize> {
    let m = profile.candidate_count();
    (0..m).find(|&a| (0..m).all(|b| a == b || beats(profile, a, b)))
}

fn argmax(scores: &[i64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate() {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

/// Candidates strictly below each candidate, summed over ballots (`m-1, ..., 0` on linear ballots).
pub fn borda_scores(profile: &PreferenceProfile) -> Vec<i64> {
    (0..profile.candidate_count())
        .map(|c| profile.ballots().iter().map(|r| r.below(c) as i64).sum())
        .collect()
}

/// Pairwise wins minus pairwise losses.
pub fn copeland_scores(profile: &PreferenceProfile) -> Vec<i64> {
    let m = profile.candidate_count();
    (0..m)
        .map(|a| {
            (0..m)
                .filter(|&b| b != a)
                .map(|b| if beats(profile, a, b) { 1 } else if beats(profile, b, a) { -1 } else { 0 })
                .sum()
        })
        .collect()
}

/// Ballots placing each candidate in their top indifference class.
pub fn plurality_scores(profile: &PreferenceProfile) -> Vec<i64> {
    (0..profile.candidate_count())
        .map(|c| profile.ballots().iter().filter(|r| r.tier_of(c) == 0).count() as i64)
        .collect()
}

pub fn borda(profile: &PreferenceProfile) -> usize {
    argmax(&borda_scores(profile))
}

pub fn copeland(profile: &PreferenceProfile) -> usize {
    argmax(&copeland_scores(profile))
}

pub fn plurality(profile: &PreferenceProfile) -> usize {
    argmax(&plurality_scores(profile))
}

/// The Condorcet winner when one exists, otherwise the Borda winner.
pub fn blacks_rule(profile: &PreferenceProfile) -> usize {
    condorcet_winner(profile).unwrap_or_else(|| borda(profile))
}

/// Candidates by descending score, ties by index, as a linear order.
pub fn score_order(scores: &[i64]) -> Ranking {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].cmp(&scores[a]).then(a.cmp(&b)));
    Ranking::linear(order).expect("permutation of candidates")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voting::ranking::candidate_names;

    fn profile(ballots: &[&str]) -> PreferenceProfile {
        let names = candidate_names(3);
        let b = ballots.iter().map(|t| Ranking::parse(t, &names).unwrap()).collect();
        PreferenceProfile::new(names, b).unwrap()
    }

    #[test]
    fn unanimity() {
        let p = profile(&["b>a>c", "b>a>c", "b>a>c"]);
        assert_eq!(condorcet_winner(&p), Some(1));
        for r in VotingRule::ALL {
            assert_eq!(r.winner(&p), 1, "{r:?}");
        }
    }

    #[test]
    fn cycle_has_no_condorcet_winner() {
        let p = profile(&["a>b>c", "b>c>a", "c>a>b"]);
        assert_eq!(condorcet_winner(&p), None);
        assert_eq!(borda_scores(&p), vec![3, 3, 3]);
        assert_eq!(copeland_scores(&p), vec![0, 0, 0]);
        assert_eq!(blacks_rule(&p), 0);
    }

    #[test]
    fn scores_on_a_small_profile() {
        let p = profile(&["a>b>c", "a>b>c", "b>c>a"]);
        assert_eq!(borda_scores(&p), vec![4, 4, 1]);
        assert_eq!(copeland_scores(&p), vec![2, 0, -2]);
        assert_eq!(plurality_scores(&p), vec![2, 1, 0]);
        assert_eq!(borda(&p), 0);
        assert_eq!(score_order(&borda_scores(&p)).tiers(), &[vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn weak_ballots_count_strict_preferences_only() {
        let p = profile(&["a=b>c", "b>a>c"]);
        assert_eq!(p.support(0, 1), 0);
        assert_eq!(p.support(1, 0), 1);
        assert_eq!(condorcet_winner(&p), Some(1));
        assert_eq!(plurality_scores(&p), vec![1, 2, 0]);
    }

    #[test]
    fn names_round_trip() {
        for r in VotingRule::ALL {
            assert_eq!(VotingRule::parse(r.as_str()), Some(r));
        }
        assert_eq!(VotingRule::parse("range"), None);
    }
}
