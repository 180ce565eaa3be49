#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecl {

enum class VotingRule { bucklin, fallback, plurality };

inline const char* to_string(VotingRule r) {
    switch (r) {
        case VotingRule::bucklin: return "bucklin";
        case VotingRule::fallback: return "fallback";
        case VotingRule::plurality: return "plurality";
    }
    return "?";
}

inline VotingRule parse_rule(const std::string& s) {
    if (s == "bucklin") return VotingRule::bucklin;
    if (s == "fallback") return VotingRule::fallback;
    if (s == "plurality") return VotingRule::plurality;
    throw std::invalid_argument("unknown voting rule: " + s);
}

// A ballot is a sequence of candidate ids. For bucklin/plurality it is a
// full ranking of the active candidates; for fallback it is the ordered
// approved prefix and may be empty.
using Ballot = std::vector<int>;

struct Election {
    VotingRule rule{VotingRule::bucklin};
    std::vector<int> candidates; // sorted, unique, nonempty
    std::vector<Ballot> votes;

    int num_candidates() const { return static_cast<int>(candidates.size()); }
    int num_votes() const { return static_cast<int>(votes.size()); }
};

struct WinnerSet {
    std::vector<int> winners;              // sorted candidate ids
    std::optional<int> winning_level;      // majority level for bucklin/fallback
};

inline int majority_threshold(int n) {
    if (n < 0) throw std::invalid_argument("negative vote count");
    return n / 2 + 1;
}

inline bool is_candidate(const Election& e, int c) {
    return std::binary_search(e.candidates.begin(), e.candidates.end(), c);
}

inline void validate_election(const Election& e) {
    if (e.candidates.empty()) throw std::invalid_argument("election has no candidates");
    if (!std::is_sorted(e.candidates.begin(), e.candidates.end()) ||
        std::adjacent_find(e.candidates.begin(), e.candidates.end()) != e.candidates.end())
        throw std::invalid_argument("candidate set must be sorted and unique");
    const auto m = e.candidates.size();
    std::vector<char> seen(e.candidates.back() + 1, 0);
    for (const auto& v : e.votes) {
        if (e.rule != VotingRule::fallback && v.size() != m)
            throw std::invalid_argument("ranked ballot must rank every candidate");
        if (v.size() > m) throw std::invalid_argument("ballot longer than candidate set");
        for (int c : v) {
            if (!is_candidate(e, c)) throw std::invalid_argument("ballot names unknown candidate " + std::to_string(c));
            if (seen[c]) throw std::invalid_argument("ballot repeats candidate " + std::to_string(c));
            seen[c] = 1;
        }
        for (int c : v) seen[c] = 0;
    }
}

// Number of voters ranking c among their top i (approved) positions.
inline int level_score(const Election& e, int c, int level) {
    if (!is_candidate(e, c)) throw std::invalid_argument("level_score: unknown candidate");
    if (level < 1 || level > e.num_candidates()) throw std::invalid_argument("level_score: level out of range");
    int score = 0;
    for (const auto& v : e.votes) {
        const int depth = std::min<int>(level, static_cast<int>(v.size()));
        for (int p = 0; p < depth; ++p) {
            if (v[p] == c) {
                ++score;
                break;
            }
        }
    }
    return score;
}

namespace detail {

// Per-candidate counts of ballots ranking the candidate at each (approved)
// position, cumulated level by level during the winner scan.
struct LevelTally {
    std::vector<int> ids;                 // active candidates
    std::vector<std::vector<int>> at_pos; // at_pos[j][p]: ballots with ids[j] at position p+1
    std::vector<int> cum;                 // running level scores

    explicit LevelTally(const Election& e) : ids(e.candidates) {
        const int m = static_cast<int>(ids.size());
        at_pos.assign(m, std::vector<int>(m, 0));
        cum.assign(m, 0);
        std::vector<int> slot(ids.empty() ? 0 : ids.back() + 1, -1);
        for (int j = 0; j < m; ++j) slot[ids[j]] = j;
        for (const auto& v : e.votes)
            for (int p = 0; p < static_cast<int>(v.size()); ++p) at_pos[slot[v[p]]][p]++;
    }

    // Advances to `level` (1-based; must be called with 1,2,...) and returns
    // the best cumulative score and its holders.
    void advance(int level, int& best, std::vector<int>& argbest) {
        best = -1;
        argbest.clear();
        for (std::size_t j = 0; j < ids.size(); ++j) {
            cum[j] += at_pos[j][level - 1];
            if (cum[j] > best) {
                best = cum[j];
                argbest.assign(1, ids[j]);
            } else if (cum[j] == best) {
                argbest.push_back(ids[j]);
            }
        }
    }
};

} // namespace detail

inline WinnerSet bucklin_winners(const Election& e) {
    if (e.rule != VotingRule::bucklin) throw std::invalid_argument("bucklin_winners: wrong rule");
    if (e.votes.empty()) throw std::invalid_argument("bucklin_winners: empty vote list");
    const int maj = majority_threshold(e.num_votes());
    detail::LevelTally tally(e);
    int best = 0;
    std::vector<int> argbest;
    for (int level = 1; level <= e.num_candidates(); ++level) {
        tally.advance(level, best, argbest);
        if (best >= maj) return WinnerSet{std::move(argbest), level};
    }
    throw std::logic_error("bucklin_winners: no majority level"); // full rankings always majorize at level m
}

inline WinnerSet fallback_winners(const Election& e) {
    if (e.rule != VotingRule::fallback) throw std::invalid_argument("fallback_winners: wrong rule");
    if (e.votes.empty()) throw std::invalid_argument("fallback_winners: empty vote list");
    const int maj = majority_threshold(e.num_votes());
    detail::LevelTally tally(e);
    int best = 0;
    std::vector<int> argbest;
    for (int level = 1; level <= e.num_candidates(); ++level) {
        tally.advance(level, best, argbest);
        if (best >= maj) return WinnerSet{std::move(argbest), level};
    }
    // No level produced a strict majority: highest approval score wins.
    // The final cum values are the approval counts; an all-zero profile
    // makes every candidate a winner.
    return WinnerSet{std::move(argbest), std::nullopt};
}

inline WinnerSet plurality_winners(const Election& e) {
    if (e.rule != VotingRule::plurality) throw std::invalid_argument("plurality_winners: wrong rule");
    if (e.votes.empty()) throw std::invalid_argument("plurality_winners: empty vote list");
    std::vector<int> firsts(e.candidates.back() + 1, 0);
    for (const auto& v : e.votes) firsts[v.front()]++;
    int best = -1;
    std::vector<int> argbest;
    for (int c : e.candidates) {
        if (firsts[c] > best) {
            best = firsts[c];
            argbest.assign(1, c);
        } else if (firsts[c] == best) {
            argbest.push_back(c);
        }
    }
    return WinnerSet{std::move(argbest), std::nullopt};
}

inline WinnerSet winners(const Election& e) {
    switch (e.rule) {
        case VotingRule::bucklin: return bucklin_winners(e);
        case VotingRule::fallback: return fallback_winners(e);
        case VotingRule::plurality: return plurality_winners(e);
    }
    throw std::logic_error("winners: bad rule");
}

inline bool is_unique_winner(const Election& e, int c) {
    const WinnerSet w = winners(e);
    return w.winners.size() == 1 && w.winners.front() == c;
}

// Restriction to a candidate subset: ballots are filtered preserving
// relative order. Fallback ballots may become empty but stay in the list
// (the majority threshold keeps counting them).
inline Election restrict(const Election& e, const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("restrict: empty candidate subset");
    std::vector<int> sorted_keep(keep);
    std::sort(sorted_keep.begin(), sorted_keep.end());
    sorted_keep.erase(std::unique(sorted_keep.begin(), sorted_keep.end()), sorted_keep.end());
    for (int c : sorted_keep)
        if (!is_candidate(e, c)) throw std::invalid_argument("restrict: unknown candidate " + std::to_string(c));
    Election out;
    out.rule = e.rule;
    out.candidates = sorted_keep;
    out.votes.reserve(e.votes.size());
    std::vector<char> in_keep(e.candidates.back() + 1, 0);
    for (int c : sorted_keep) in_keep[c] = 1;
    for (const auto& v : e.votes) {
        Ballot b;
        b.reserve(sorted_keep.size());
        for (int c : v)
            if (in_keep[c]) b.push_back(c);
        out.votes.push_back(std::move(b));
    }
    return out;
}

} // namespace ecl
