#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecl/election.hpp"

namespace ecl {

enum class ControlFamily { AV, DV, PV, AC, DC, PC, roPC };
enum class Direction { constructive, destructive };
enum class TieRule { TE, TP, none };

inline const char* to_string(ControlFamily f) {
    switch (f) {
        case ControlFamily::AV: return "AV";
        case ControlFamily::DV: return "DV";
        case ControlFamily::PV: return "PV";
        case ControlFamily::AC: return "AC";
        case ControlFamily::DC: return "DC";
        case ControlFamily::PC: return "PC";
        case ControlFamily::roPC: return "roPC";
    }
    return "?";
}

inline const char* to_string(TieRule t) {
    switch (t) {
        case TieRule::TE: return "TE";
        case TieRule::TP: return "TP";
        case TieRule::none: return "-";
    }
    return "?";
}

struct ControlType {
    ControlFamily family{ControlFamily::DV};
    Direction direction{Direction::constructive};
    TieRule tie{TieRule::none};

    bool is_partition() const {
        return family == ControlFamily::PV || family == ControlFamily::PC || family == ControlFamily::roPC;
    }
    bool constructive() const { return direction == Direction::constructive; }
    // DCAV and DCDV are decidable in polynomial time for all three rules;
    // the generic search still answers them but they sit outside the
    // studied tables.
    bool non_paper() const {
        return direction == Direction::destructive &&
               (family == ControlFamily::AV || family == ControlFamily::DV);
    }
    bool operator==(const ControlType&) const = default;
};

inline std::string to_string(const ControlType& t) {
    std::string s = t.constructive() ? "CC" : "DC";
    s += to_string(t.family);
    return s;
}

// Parses names like CCDV, DCPC (tie carried separately).
inline ControlType parse_control(const std::string& name, TieRule tie) {
    if (name.size() < 4) throw std::invalid_argument("unknown control type: " + name);
    ControlType t;
    const std::string dir = name.substr(0, 2);
    if (dir == "CC") t.direction = Direction::constructive;
    else if (dir == "DC") t.direction = Direction::destructive;
    else throw std::invalid_argument("unknown control type: " + name);
    const std::string fam = name.substr(2);
    if (fam == "AV") t.family = ControlFamily::AV;
    else if (fam == "DV") t.family = ControlFamily::DV;
    else if (fam == "PV") t.family = ControlFamily::PV;
    else if (fam == "AC") t.family = ControlFamily::AC;
    else if (fam == "DC") t.family = ControlFamily::DC;
    else if (fam == "PC") t.family = ControlFamily::PC;
    else if (fam == "roPC") t.family = ControlFamily::roPC;
    else if (fam == "AUC") throw std::invalid_argument("adding an unlimited number of candidates is not supported");
    else throw std::invalid_argument("unknown control family: " + fam);
    t.tie = tie;
    if (t.is_partition() && tie == TieRule::none)
        throw std::invalid_argument(name + " needs a tie-handling rule (TE or TP)");
    if (!t.is_partition() && tie != TieRule::none)
        throw std::invalid_argument(name + " takes no tie-handling rule");
    return t;
}

struct ControlInstance {
    ControlType control;
    // For AC this election spans registered + pool candidates, with every
    // ballot cast over the union; the registered set is the first
    // `registered_candidates` ids. For all other types it is the election
    // itself and registered_candidates == m.
    Election election;
    int registered_candidates{0};
    int distinguished{0};
    int budget{0};                   // k; unused by partition controls
    std::vector<Ballot> pool_voters; // AV only, ballots over the registered set

    std::vector<int> registered_ids() const {
        return {election.candidates.begin(), election.candidates.begin() + registered_candidates};
    }
    std::vector<int> pool_candidate_ids() const {
        return {election.candidates.begin() + registered_candidates, election.candidates.end()};
    }
    Election registered_election() const {
        if (registered_candidates == election.num_candidates()) return election;
        return restrict(election, registered_ids());
    }
};

inline void validate_instance(const ControlInstance& inst) {
    validate_election(inst.election);
    const int m_total = inst.election.num_candidates();
    const int n = inst.election.num_votes();
    if (inst.registered_candidates < 1 || inst.registered_candidates > m_total)
        throw std::invalid_argument("instance: bad registered candidate count");
    const auto reg = inst.registered_ids();
    if (!std::binary_search(reg.begin(), reg.end(), inst.distinguished))
        throw std::invalid_argument("instance: distinguished candidate not registered");
    const int m = inst.registered_candidates;
    if (inst.budget < 0) throw std::invalid_argument("instance: negative budget");
    switch (inst.control.family) {
        case ControlFamily::AV:
            if (inst.budget > static_cast<int>(inst.pool_voters.size()))
                throw std::invalid_argument("instance: AV budget exceeds pool size");
            for (const auto& b : inst.pool_voters) {
                Election probe{inst.election.rule, reg, {b}};
                validate_election(probe);
            }
            break;
        case ControlFamily::DV:
            if (inst.budget > n) throw std::invalid_argument("instance: DV budget exceeds vote count");
            break;
        case ControlFamily::AC:
            if (m_total == m) throw std::invalid_argument("instance: AC needs pool candidates");
            if (inst.budget > m_total - m) throw std::invalid_argument("instance: AC budget exceeds pool size");
            break;
        case ControlFamily::DC:
            if (inst.budget > m - 1) throw std::invalid_argument("instance: DC budget exceeds m-1");
            break;
        default:
            break;
    }
    if (inst.control.family != ControlFamily::AC && inst.registered_candidates != m_total)
        throw std::invalid_argument("instance: pool candidates only valid for AC");
    if (inst.control.family != ControlFamily::AV && !inst.pool_voters.empty())
        throw std::invalid_argument("instance: pool voters only valid for AV");
}

enum class ActionKind {
    delete_voters,
    add_voters,
    delete_candidates,
    add_candidates,
    voter_partition,    // sel = V1 (vote indices), V2 implied
    candidate_partition // sel = C1 (candidate ids), C2 implied
};

struct ControlAction {
    ActionKind kind{ActionKind::delete_voters};
    std::vector<int> sel; // sorted indices or candidate ids
};

inline std::string to_string(const ControlAction& a) {
    std::string s;
    switch (a.kind) {
        case ActionKind::delete_voters: s = "delete_voters"; break;
        case ActionKind::add_voters: s = "add_voters"; break;
        case ActionKind::delete_candidates: s = "delete_candidates"; break;
        case ActionKind::add_candidates: s = "add_candidates"; break;
        case ActionKind::voter_partition: s = "V1"; break;
        case ActionKind::candidate_partition: s = "C1"; break;
    }
    s += '{';
    for (std::size_t i = 0; i < a.sel.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(a.sel[i]);
    }
    s += '}';
    return s;
}

enum class Verdict { yes, no, timeout };

struct Outcome {
    Verdict verdict{Verdict::no};
    std::optional<ControlAction> witness; // present iff verdict == yes
    std::int64_t elapsed_us{0};
};

namespace detail {

inline std::vector<int> tie_filtered(const WinnerSet& w, TieRule tie) {
    if (tie == TieRule::TE && w.winners.size() != 1) return {};
    return w.winners;
}

// Winners of a subelection that may have no voters: no one wins.
inline std::vector<int> sub_winners(const Election& e, TieRule tie) {
    if (e.votes.empty()) return {};
    return tie_filtered(winners(e), tie);
}

inline std::vector<int> sorted_union(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

} // namespace detail

// Two-stage voter-partition election: subelections (C,V1) and (C,V2) and a
// runoff among the surviving winners over the full vote list. Returns
// nothing when no candidate survives the tie handling.
inline std::optional<Election> apply_voter_partition(const Election& e, const std::vector<int>& v1_indices,
                                                     TieRule tie) {
    const int n = e.num_votes();
    std::vector<char> in_v1(n, 0);
    for (int i : v1_indices) {
        if (i < 0 || i >= n) throw std::invalid_argument("voter partition: bad vote index");
        if (in_v1[i]) throw std::invalid_argument("voter partition: repeated vote index");
        in_v1[i] = 1;
    }
    Election sub1{e.rule, e.candidates, {}};
    Election sub2{e.rule, e.candidates, {}};
    for (int i = 0; i < n; ++i) (in_v1[i] ? sub1 : sub2).votes.push_back(e.votes[i]);
    const auto final_set = detail::sorted_union(detail::sub_winners(sub1, tie), detail::sub_winners(sub2, tie));
    if (final_set.empty()) return std::nullopt;
    return restrict(e, final_set);
}

// Candidate partition (C1, C2). Non-runoff: C1's surviving winners join C2
// directly; runoff: both cells' survivors meet. Empty final set => nothing.
inline std::optional<Election> apply_candidate_partition(const Election& e, const std::vector<int>& c1, TieRule tie,
                                                         bool runoff) {
    std::vector<int> c1_sorted(c1);
    std::sort(c1_sorted.begin(), c1_sorted.end());
    if (std::adjacent_find(c1_sorted.begin(), c1_sorted.end()) != c1_sorted.end())
        throw std::invalid_argument("candidate partition: repeated candidate");
    for (int c : c1_sorted)
        if (!is_candidate(e, c)) throw std::invalid_argument("candidate partition: unknown candidate");
    std::vector<int> c2;
    std::set_difference(e.candidates.begin(), e.candidates.end(), c1_sorted.begin(), c1_sorted.end(),
                        std::back_inserter(c2));
    const auto cell_winners = [&](const std::vector<int>& cell) -> std::vector<int> {
        if (cell.empty()) return {};
        return detail::tie_filtered(winners(restrict(e, cell)), tie);
    };
    const auto w1 = cell_winners(c1_sorted);
    const auto final_set = runoff ? detail::sorted_union(w1, cell_winners(c2)) : detail::sorted_union(w1, c2);
    if (final_set.empty()) return std::nullopt;
    return restrict(e, final_set);
}

// Winner set of the election an action produces; empty means no candidate
// wins (possible under TE partitions or when every voter is deleted).
inline std::vector<int> final_winners(const ControlInstance& inst, const ControlAction& a) {
    const auto require = [&](bool ok, const char* msg) {
        if (!ok) throw std::invalid_argument(msg);
    };
    const auto budget_ok = [&](std::size_t sz) {
        require(static_cast<int>(sz) <= inst.budget, "action exceeds budget");
    };
    // A final election without votes scores everybody zero, so every
    // candidate wins (matters only for single-candidate instances).
    const auto winners_or_empty = [](const Election& e) -> std::vector<int> {
        if (e.votes.empty()) return e.candidates;
        return winners(e).winners;
    };
    switch (a.kind) {
        case ActionKind::delete_voters: {
            require(inst.control.family == ControlFamily::DV, "action kind does not match control type");
            budget_ok(a.sel.size());
            const int n = inst.election.num_votes();
            std::vector<char> del(n, 0);
            for (int i : a.sel) {
                require(i >= 0 && i < n, "delete_voters: bad vote index");
                require(!del[i], "delete_voters: repeated vote index");
                del[i] = 1;
            }
            Election e{inst.election.rule, inst.election.candidates, {}};
            for (int i = 0; i < n; ++i)
                if (!del[i]) e.votes.push_back(inst.election.votes[i]);
            return winners_or_empty(e);
        }
        case ActionKind::add_voters: {
            require(inst.control.family == ControlFamily::AV, "action kind does not match control type");
            budget_ok(a.sel.size());
            Election e = inst.election;
            std::vector<char> used(inst.pool_voters.size(), 0);
            for (int i : a.sel) {
                require(i >= 0 && i < static_cast<int>(inst.pool_voters.size()), "add_voters: bad pool index");
                require(!used[i], "add_voters: repeated pool index");
                used[i] = 1;
                e.votes.push_back(inst.pool_voters[i]);
            }
            return winners_or_empty(e);
        }
        case ActionKind::delete_candidates: {
            require(inst.control.family == ControlFamily::DC, "action kind does not match control type");
            budget_ok(a.sel.size());
            std::vector<int> keep = inst.election.candidates;
            for (int c : a.sel) {
                require(c != inst.distinguished, "delete_candidates: cannot delete the distinguished candidate");
                auto it = std::find(keep.begin(), keep.end(), c);
                require(it != keep.end(), "delete_candidates: unknown or repeated candidate");
                keep.erase(it);
            }
            return winners_or_empty(restrict(inst.election, keep));
        }
        case ActionKind::add_candidates: {
            require(inst.control.family == ControlFamily::AC, "action kind does not match control type");
            budget_ok(a.sel.size());
            const auto pool = inst.pool_candidate_ids();
            std::vector<int> keep = inst.registered_ids();
            std::vector<char> used(inst.election.candidates.back() + 1, 0);
            for (int c : a.sel) {
                require(std::binary_search(pool.begin(), pool.end(), c), "add_candidates: not a pool candidate");
                require(!used[c], "add_candidates: repeated candidate");
                used[c] = 1;
                keep.push_back(c);
            }
            return winners_or_empty(restrict(inst.election, keep));
        }
        case ActionKind::voter_partition: {
            require(inst.control.family == ControlFamily::PV, "action kind does not match control type");
            const auto e = apply_voter_partition(inst.election, a.sel, inst.control.tie);
            if (!e) return {};
            return winners_or_empty(*e);
        }
        case ActionKind::candidate_partition: {
            require(inst.control.family == ControlFamily::PC || inst.control.family == ControlFamily::roPC,
                    "action kind does not match control type");
            const auto e = apply_candidate_partition(inst.election, a.sel, inst.control.tie,
                                                     inst.control.family == ControlFamily::roPC);
            if (!e) return {};
            return winners_or_empty(*e);
        }
    }
    throw std::logic_error("final_winners: bad action kind");
}

inline bool goal_satisfied(const ControlInstance& inst, const ControlAction& a) {
    const auto w = final_winners(inst, a);
    const bool unique_c = w.size() == 1 && w.front() == inst.distinguished;
    return inst.control.constructive() ? unique_c : !unique_c;
}

// ---------------------------------------------------------------------------
// Trivial-case conditions. Each returns a sound verdict only: a firing
// condition is validated against the brute-force oracle in the test suite.

namespace detail {

// True when some candidate other than c precedes c in every scoring sense a
// ballot offers: for ranked ballots c sits on the last place; for fallback
// ballots c is disapproved or the ballot approves every candidate with c
// last. (A short approved prefix ending in c does NOT qualify: candidates
// outside the prefix score nothing, so c could still win.)
inline bool dominated_in_ballot(const Ballot& b, int c, int m, bool fallback) {
    if (fallback) {
        const bool approved = std::find(b.begin(), b.end(), c) != b.end();
        if (!approved) return true;
        return static_cast<int>(b.size()) == m && b.back() == c;
    }
    return !b.empty() && b.back() == c;
}

} // namespace detail

// Condition 1: the distinguished candidate is positioned last in every vote
// (fallback: last-or-disapproved). For AV both the registered and the pool
// ballots must satisfy it; for AC the ballots over all candidates are used.
inline bool condition1(const ControlInstance& inst) {
    if (!inst.control.constructive()) throw std::invalid_argument("condition1: destructive instance");
    if (inst.registered_candidates < 2) return false; // no rival to dominate c
    // Deleting candidates can strip away every dominating rival; with the
    // full budget c ends up alone and wins regardless of the votes.
    if (inst.control.family == ControlFamily::DC && inst.budget >= inst.registered_candidates - 1) return false;
    const bool fb = inst.election.rule == VotingRule::fallback;
    const int m_total = inst.election.num_candidates();
    for (const auto& b : inst.election.votes)
        if (!detail::dominated_in_ballot(b, inst.distinguished, m_total, fb)) return false;
    if (inst.control.family == ControlFamily::AV) {
        const int m = inst.registered_candidates;
        for (const auto& b : inst.pool_voters)
            if (!detail::dominated_in_ballot(b, inst.distinguished, m, fb)) return false;
    }
    return true;
}

enum class LevelMode { del, add };

namespace detail {

// Smallest level whose score meets `threshold`; m+1 when none does.
inline int first_level_reaching(const std::vector<int>& cum_scores, int threshold) {
    const int m = static_cast<int>(cum_scores.size());
    if (threshold <= 0) return 1;
    for (int i = 0; i < m; ++i)
        if (cum_scores[i] >= threshold) return i + 1;
    return m + 1;
}

inline std::vector<std::vector<int>> cumulative_scores(const Election& e) {
    const int m = e.num_candidates();
    std::vector<int> slot(e.candidates.back() + 1, -1);
    for (int j = 0; j < m; ++j) slot[e.candidates[j]] = j;
    std::vector<std::vector<int>> cum(m, std::vector<int>(m, 0));
    for (const auto& v : e.votes)
        for (int p = 0; p < static_cast<int>(v.size()); ++p) cum[slot[v[p]]][p]++;
    for (int j = 0; j < m; ++j)
        for (int p = 1; p < m; ++p) cum[j][p] += cum[j][p - 1];
    return cum;
}

} // namespace detail

// Conditions 2 (mode=del, CCDV) and 3 (mode=add, CCAV) for Bucklin and
// fallback: for every k' <= k some rival is guaranteed to reach its
// adjusted majority threshold on a level strictly below the best level the
// distinguished candidate could possibly reach.
inline bool condition_levels(const ControlInstance& inst, LevelMode mode) {
    const Election& e = inst.election;
    if (e.rule == VotingRule::plurality) throw std::invalid_argument("condition_levels: plurality has no levels");
    const int n = e.num_votes();
    const int m = e.num_candidates();
    const auto cum = detail::cumulative_scores(e);
    std::vector<int> slot(e.candidates.back() + 1, -1);
    for (int j = 0; j < m; ++j) slot[e.candidates[j]] = j;
    const int cslot = slot[inst.distinguished];
    for (int kp = 0; kp <= inst.budget; ++kp) {
        int rival_threshold, c_threshold;
        if (mode == LevelMode::del) {
            rival_threshold = (n - kp) / 2 + 1 + kp;
            c_threshold = (n - kp) / 2 + 1;
        } else {
            rival_threshold = (n + kp) / 2 + 1;
            c_threshold = (n + kp) / 2 + 1 - kp;
        }
        const int j_level = detail::first_level_reaching(cum[cslot], c_threshold);
        bool some_rival = false;
        for (int r = 0; r < m && !some_rival; ++r) {
            if (r == cslot) continue;
            const int i_level = detail::first_level_reaching(cum[r], rival_threshold);
            some_rival = i_level <= j_level - 1;
        }
        if (!some_rival) return false;
    }
    return true;
}

// The unique level-1 majority winner, if one exists.
inline std::optional<int> level1_majority_candidate(const Election& e) {
    if (e.votes.empty()) return std::nullopt;
    const int maj = majority_threshold(e.num_votes());
    std::vector<int> firsts(e.candidates.back() + 1, 0);
    for (const auto& v : e.votes)
        if (!v.empty()) firsts[v.front()]++;
    for (int c : e.candidates)
        if (firsts[c] >= maj) return c;
    return std::nullopt;
}

// Condition 4 for partition-of-voters: a level-1 majority winner w wins
// every two-stage election outright, deciding the instance either way.
inline std::optional<Outcome> condition4_decide(const ControlInstance& inst) {
    if (inst.control.family != ControlFamily::PV) throw std::invalid_argument("condition4: not a PV instance");
    const auto w = level1_majority_candidate(inst.election);
    if (!w) return std::nullopt;
    const bool goal_met = inst.control.constructive() ? (*w == inst.distinguished) : (*w != inst.distinguished);
    Outcome out;
    if (goal_met) {
        out.verdict = Verdict::yes;
        out.witness = ControlAction{ActionKind::voter_partition, {}};
    } else {
        out.verdict = Verdict::no;
    }
    return out;
}

} // namespace ecl
