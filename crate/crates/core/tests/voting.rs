//! Voting rules and Black's paradox against independent brute force.

use decision_axioms::calculus::{detect_paradox, implied_rule};
use decision_axioms::voting::{
    black_axiom, search_black_witnesses, PreferenceProfile, RuleFamily, VotingDomain, VotingDomainConfig, VotingRule,
};
use decision_axioms::DEFAULT_CAP;

/// Each ballot as positions: `pos[c]` is 0 for the top candidate.
fn positions(p: &PreferenceProfile) -> Vec<Vec<usize>> {
    let names = p.candidates();
    p.label()
        .split(';')
        .map(|b| {
            let order: Vec<usize> = b.split('>').map(|c| names.iter().position(|n| n == c).unwrap()).collect();
            let mut pos = vec![0; order.len()];
            for (i, &c) in order.iter().enumerate() {
                pos[c] = i;
            }
            pos
        })
        .collect()
}

fn wins(pos: &[Vec<usize>], a: usize, b: usize) -> bool {
    let n = pos.iter().filter(|p| p[a] < p[b]).count();
    2 * n > pos.len()
}

fn cw(pos: &[Vec<usize>], m: usize) -> Option<usize> {
    (0..m).find(|&a| (0..m).all(|b| a == b || wins(pos, a, b)))
}

fn argmax(scores: &[i64]) -> usize {
    let best = *scores.iter().max().unwrap();
    scores.iter().position(|&s| s == best).unwrap()
}

fn borda(pos: &[Vec<usize>], m: usize) -> usize {
    argmax(&(0..m).map(|c| pos.iter().map(|p| (m - 1 - p[c]) as i64).sum()).collect::<Vec<_>>())
}

fn copeland(pos: &[Vec<usize>], m: usize) -> usize {
    let s: Vec<i64> = (0..m)
        .map(|a| (0..m).filter(|&b| b != a).map(|b| wins(pos, a, b) as i64 - wins(pos, b, a) as i64).sum())
        .collect();
    argmax(&s)
}

#[test]
fn condorcet_winners_over_three_voters() {
    let vd = VotingDomain::new(VotingDomainConfig::winner(3, 3), DEFAULT_CAP).unwrap();
    assert_eq!(vd.profiles().len(), 216);
    let mut with_winner = 0;
    for p in vd.profiles() {
        let pos = positions(p);
        assert_eq!(decision_axioms::voting::condorcet_winner(p), cw(&pos, 3), "{}", p.label());
        with_winner += cw(&pos, 3).is_some() as usize;
    }
    assert_eq!(with_winner, 204);
}

#[test]
fn rule_tables_match_brute_force() {
    for voters in 1..=4 {
        let vd = VotingDomain::new(VotingDomainConfig::winner(3, voters), DEFAULT_CAP).unwrap();
        let table = |rule| vd.rule(&RuleFamily::Winner { rule }).unwrap();
        let (b, c, k) = (table(VotingRule::Borda), table(VotingRule::Copeland), table(VotingRule::Black));
        for (x, p) in vd.profiles().iter().enumerate() {
            let pos = positions(p);
            assert_eq!(b.outcomes()[x].0, borda(&pos, 3));
            assert_eq!(c.outcomes()[x].0, copeland(&pos, 3));
            let black = cw(&pos, 3).map(|_| copeland(&pos, 3)).unwrap_or_else(|| borda(&pos, 3));
            assert_eq!(k.outcomes()[x].0, black);
        }
    }
}

#[test]
fn black_witnesses_at_smallest_voter_count() {
    let w = search_black_witnesses(3, 5, DEFAULT_CAP).unwrap().expect("found within five voters");
    // Smallest n with both kinds of profile, by brute force here.
    let first = (1..=5)
        .find(|&n| {
            let vd = VotingDomain::new(VotingDomainConfig::winner(3, n), DEFAULT_CAP).unwrap();
            let ps: Vec<_> = vd.profiles().iter().map(positions).collect();
            ps.iter().any(|p| cw(p, 3).is_none() && borda(p, 3) != copeland(p, 3))
                && ps.iter().any(|p| cw(p, 3).is_some_and(|c| c != borda(p, 3)))
        })
        .unwrap();
    assert_eq!(w.voters, first);
    let (p, q) = w.profiles().unwrap();
    let (pp, qp) = (positions(&p), positions(&q));
    assert!(cw(&pp, 3).is_none() && borda(&pp, 3) != copeland(&pp, 3));
    assert!(cw(&qp, 3).is_some_and(|c| c != borda(&qp, 3)));

    let vd = VotingDomain::new(VotingDomainConfig::winner(3, w.voters), DEFAULT_CAP).unwrap();
    let a = black_axiom(&vd).unwrap();
    let f = implied_rule(&a, DEFAULT_CAP).unwrap();
    assert!(f.same_function(&vd.rule(&RuleFamily::Winner { rule: VotingRule::Black }).unwrap()));
    let r = detect_paradox(&a, DEFAULT_CAP).unwrap();
    assert!(r.paradox);
    assert_eq!(r.violating_profiles.len(), vd.profiles().len());
}
