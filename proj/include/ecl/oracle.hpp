#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ecl/control.hpp"

namespace ecl {

struct OracleVerdict {
    bool yes = false;
    std::optional<ControlAction> witness;
    std::uint64_t witnesses_checked = 0;
};

namespace oracle_detail {

inline std::uint64_t choose(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// All size-l index combinations in lexicographic order.
inline bool for_each_combination(int count, int l, const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> idx(l);
    for (int i = 0; i < l; ++i) idx[i] = i;
    if (l > count) return false;
    for (;;) {
        if (visit(idx)) return true;
        int i = l - 1;
        while (i >= 0 && idx[i] == count - l + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < l; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline bool for_each_subset_up_to(int count, int k, const std::function<bool(const std::vector<int>&)>& visit) {
    for (int l = 0; l <= k; ++l)
        if (for_each_combination(count, l, visit)) return true;
    return false;
}

} // namespace oracle_detail

// Size of the action space the oracle walks. Voter partitions and runoff
// candidate partitions are unordered pairs; plain candidate partitions are
// ordered because C1 is tie-filtered while C2 advances directly.
inline std::uint64_t action_space_size(const ControlInstance& inst) {
    const int n = inst.election.num_votes();
    const int m = inst.registered_candidates;
    std::uint64_t t = 0;
    switch (inst.control.family) {
        case ControlFamily::DV:
            for (int l = 0; l <= inst.budget; ++l) t += oracle_detail::choose(n, l);
            return t;
        case ControlFamily::AV:
            for (int l = 0; l <= inst.budget; ++l)
                t += oracle_detail::choose(static_cast<int>(inst.pool_voters.size()), l);
            return t;
        case ControlFamily::DC:
            for (int l = 0; l <= inst.budget; ++l) t += oracle_detail::choose(m - 1, l);
            return t;
        case ControlFamily::AC:
            for (int l = 0; l <= inst.budget; ++l)
                t += oracle_detail::choose(inst.election.num_candidates() - m, l);
            return t;
        case ControlFamily::PV:
            return n == 0 ? 1 : std::uint64_t{1} << (n - 1);
        case ControlFamily::PC:
            return std::uint64_t{1} << m;
        case ControlFamily::roPC:
            return std::uint64_t{1} << (m - 1);
    }
    throw std::logic_error("action_space_size: bad family");
}

// Emits every legal action exactly once; `visit` returns true to stop.
inline void enumerate_actions(const ControlInstance& inst, const std::function<bool(const ControlAction&)>& visit) {
    const int n = inst.election.num_votes();
    const auto subset_space = [&](const std::vector<int>& universe, int k, ActionKind kind) {
        oracle_detail::for_each_subset_up_to(static_cast<int>(universe.size()), k, [&](const std::vector<int>& idx) {
            std::vector<int> ids;
            ids.reserve(idx.size());
            for (int i : idx) ids.push_back(universe[i]);
            return visit(ControlAction{kind, std::move(ids)});
        });
    };
    switch (inst.control.family) {
        case ControlFamily::DV: {
            std::vector<int> all(n);
            for (int i = 0; i < n; ++i) all[i] = i;
            subset_space(all, inst.budget, ActionKind::delete_voters);
            return;
        }
        case ControlFamily::AV: {
            std::vector<int> all(inst.pool_voters.size());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
            subset_space(all, inst.budget, ActionKind::add_voters);
            return;
        }
        case ControlFamily::DC: {
            std::vector<int> rivals;
            for (int c : inst.registered_ids())
                if (c != inst.distinguished) rivals.push_back(c);
            subset_space(rivals, inst.budget, ActionKind::delete_candidates);
            return;
        }
        case ControlFamily::AC:
            subset_space(inst.pool_candidate_ids(), inst.budget, ActionKind::add_candidates);
            return;
        case ControlFamily::PV: {
            // Unordered bipartitions: voter 0 is pinned into V1.
            if (n == 0) {
                visit(ControlAction{ActionKind::voter_partition, {}});
                return;
            }
            const std::uint64_t lim = std::uint64_t{1} << (n - 1);
            for (std::uint64_t mask = 0; mask < lim; ++mask) {
                std::vector<int> v1{0};
                for (int i = 1; i < n; ++i)
                    if (mask >> (i - 1) & 1) v1.push_back(i);
                if (visit(ControlAction{ActionKind::voter_partition, std::move(v1)})) return;
            }
            return;
        }
        case ControlFamily::PC: {
            const auto cands = inst.registered_ids();
            const int m = static_cast<int>(cands.size());
            const std::uint64_t lim = std::uint64_t{1} << m;
            for (std::uint64_t mask = 0; mask < lim; ++mask) {
                std::vector<int> c1;
                for (int i = 0; i < m; ++i)
                    if (mask >> i & 1) c1.push_back(cands[i]);
                if (visit(ControlAction{ActionKind::candidate_partition, std::move(c1)})) return;
            }
            return;
        }
        case ControlFamily::roPC: {
            std::vector<int> rivals;
            for (int c : inst.registered_ids())
                if (c != inst.distinguished) rivals.push_back(c);
            const int r = static_cast<int>(rivals.size());
            const std::uint64_t lim = std::uint64_t{1} << r;
            for (std::uint64_t mask = 0; mask < lim; ++mask) {
                std::vector<int> c1{inst.distinguished};
                for (int i = 0; i < r; ++i)
                    if (mask >> i & 1) c1.push_back(rivals[i]);
                if (visit(ControlAction{ActionKind::candidate_partition, std::move(c1)})) return;
            }
            return;
        }
    }
    throw std::logic_error("enumerate_actions: bad family");
}

// Exhaustive ground truth; intended for toy sizes. The cap is a guard rail
// against accidental non-termination.
inline OracleVerdict brute_force(const ControlInstance& inst, std::uint64_t cap = std::uint64_t{1} << 22) {
    validate_instance(inst);
    if (action_space_size(inst) > cap)
        throw std::runtime_error("brute_force: action space exceeds cap (" + std::to_string(cap) + ")");
    OracleVerdict v;
    enumerate_actions(inst, [&](const ControlAction& a) {
        ++v.witnesses_checked;
        if (goal_satisfied(inst, a)) {
            v.yes = true;
            v.witness = a;
            return true;
        }
        return false;
    });
    return v;
}

} // namespace ecl
