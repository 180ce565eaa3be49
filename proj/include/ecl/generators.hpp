#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "ecl/control.hpp"
#include "ecl/election.hpp"
#include "ecl/rng.hpp"

namespace ecl {

enum class DistModel { IC, TM };

inline const char* to_string(DistModel d) { return d == DistModel::IC ? "IC" : "TM"; }

inline DistModel parse_dist(const std::string& s) {
    if (s == "IC") return DistModel::IC;
    if (s == "TM") return DistModel::TM;
    throw std::invalid_argument("unknown distribution model: " + s);
}

// Derives the per-trial generator seed from the master seed and the cell
// coordinates. Every draw below is a pure function of this value, so trials
// reproduce bit-identically at any parallelism degree.
inline std::uint64_t trial_seed(std::uint64_t master, VotingRule rule, ControlType control, DistModel dist, int m,
                                int n, int trial) {
    std::uint64_t h = master;
    const auto fold = [&h](std::uint64_t x) { h = mix64(h ^ (x + 0x9E3779B97F4A7C15ULL)); };
    fold(static_cast<std::uint64_t>(rule) + 1);
    fold(static_cast<std::uint64_t>(control.family) * 8 + static_cast<std::uint64_t>(control.direction) * 4 +
         static_cast<std::uint64_t>(control.tie));
    fold(static_cast<std::uint64_t>(dist) + 1);
    fold(static_cast<std::uint64_t>(m));
    fold(static_cast<std::uint64_t>(n));
    fold(static_cast<std::uint64_t>(trial));
    return h;
}

// Uniform permutation of 0..m-1 (Fisher-Yates).
inline Ballot random_ranked_vote(int m, Rng& rng) {
    if (m < 1) throw std::invalid_argument("random_ranked_vote: m must be positive");
    Ballot b(m);
    for (int i = 0; i < m; ++i) b[i] = i;
    for (int i = m - 1; i > 0; --i) std::swap(b[i], b[rng.bounded_int(i + 1)]);
    return b;
}

// Uniform permutation truncated to an independently drawn approved count
// l in {0..m}; spans sum_{l} C(m,l) l! distinct ballots.
inline Ballot random_fallback_vote(int m, Rng& rng) {
    Ballot b = random_ranked_vote(m, rng);
    b.resize(rng.bounded_int(m + 1));
    return b;
}

inline Ballot random_vote(VotingRule rule, int m, Rng& rng) {
    return rule == VotingRule::fallback ? random_fallback_vote(m, rng) : random_ranked_vote(m, rng);
}

struct TmStats {
    std::array<std::int64_t, 3> branch_counts{0, 0, 0}; // mainstream 1, mainstream 2, fresh draw
};

// Draws ballots under a fixed distribution model. For TM the two mainstream
// ballots are drawn up front (independently, so they may coincide) and each
// later ballot copies one of them with probability 1/3 each or is a fresh
// uniform draw.
class VoteSampler {
public:
    VoteSampler(VotingRule rule, DistModel dist, int m, Rng& rng) : rule_(rule), dist_(dist), m_(m) {
        if (dist_ == DistModel::TM) {
            mainstream_[0] = random_vote(rule_, m_, rng);
            mainstream_[1] = random_vote(rule_, m_, rng);
        }
    }

    Ballot draw(Rng& rng, TmStats* stats = nullptr) {
        if (dist_ == DistModel::IC) return random_vote(rule_, m_, rng);
        const int branch = rng.bounded_int(3);
        if (stats) stats->branch_counts[branch]++;
        if (branch < 2) return mainstream_[branch];
        return random_vote(rule_, m_, rng);
    }

    const Ballot& mainstream(int i) const { return mainstream_[i]; }

private:
    VotingRule rule_;
    DistModel dist_;
    int m_;
    std::array<Ballot, 2> mainstream_{};
};

inline Election gen_election(VotingRule rule, DistModel dist, int m, int n, Rng& rng, TmStats* stats = nullptr) {
    if (m < 1 || n < 0) throw std::invalid_argument("gen_election: bad size");
    VoteSampler sampler(rule, dist, m, rng);
    Election e;
    e.rule = rule;
    e.candidates.resize(m);
    for (int i = 0; i < m; ++i) e.candidates[i] = i;
    e.votes.reserve(n);
    for (int i = 0; i < n; ++i) e.votes.push_back(sampler.draw(rng, stats));
    return e;
}

// True when the chair has nothing to do: the distinguished candidate is
// already the unique winner (constructive) or already fails to be one
// (destructive) in the untouched registered election.
inline bool control_goal_already_met(const ControlInstance& inst) {
    const Election reg = inst.registered_election();
    bool unique_c;
    if (reg.votes.empty()) {
        unique_c = reg.num_candidates() == 1;
    } else {
        const auto w = winners(reg).winners;
        unique_c = w.size() == 1 && w.front() == inst.distinguished;
    }
    return inst.control.constructive() ? unique_c : !unique_c;
}

// Instance generation conventions: k = floor(n/3) clamped to the structural
// maximum of the control type; the unregistered voter list has the size of
// the registered one and shares the distribution (including the mainstream
// ballots under TM); adding-candidates instances have m spoilers and every
// ballot spans all 2m candidates. Instances whose goal is already met
// without any action are rejected and redrawn: the studied tables count
// only elections the chair actually has to attack. Draw order is part of
// the reproducibility contract: mainstreams, registered votes, pool votes,
// distinguished candidate, then redraw on rejection.
inline ControlInstance gen_instance(ControlType control, VotingRule rule, DistModel dist, int m, int n, Rng& rng) {
    if (m < 1 || n < 0) throw std::invalid_argument("gen_instance: bad size");
    if (m == 1 && control.constructive())
        throw std::invalid_argument("gen_instance: a lone candidate is always the unique winner");
    for (int attempt = 0; attempt < 100000; ++attempt) {
        ControlInstance inst;
        inst.control = control;
        inst.registered_candidates = m;
        const int k_raw = n / 3;
        const int universe = control.family == ControlFamily::AC ? 2 * m : m;
        VoteSampler sampler(rule, dist, universe, rng);
        inst.election.rule = rule;
        inst.election.candidates.resize(universe);
        for (int i = 0; i < universe; ++i) inst.election.candidates[i] = i;
        inst.election.votes.reserve(n);
        for (int i = 0; i < n; ++i) inst.election.votes.push_back(sampler.draw(rng));
        switch (control.family) {
            case ControlFamily::AV:
                inst.pool_voters.reserve(n);
                for (int i = 0; i < n; ++i) inst.pool_voters.push_back(sampler.draw(rng));
                inst.budget = k_raw;
                break;
            case ControlFamily::DV:
                inst.budget = k_raw;
                break;
            case ControlFamily::AC:
                inst.budget = std::min(k_raw, m);
                break;
            case ControlFamily::DC:
                inst.budget = std::min(k_raw, m - 1);
                break;
            default:
                inst.budget = 0;
                break;
        }
        inst.distinguished = rng.bounded_int(m);
        if (control_goal_already_met(inst)) continue;
        validate_instance(inst);
        return inst;
    }
    throw std::runtime_error("gen_instance: rejection sampling failed to find an open instance");
}

} // namespace ecl
