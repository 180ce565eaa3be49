#pragma once

#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ecl/control.hpp"
#include "ecl/election.hpp"

namespace ecl {

struct Deadline {
    std::chrono::microseconds budget{std::chrono::seconds(600)};
};

struct SolveOptions {
    bool use_conditions = true;
    bool use_preorder = true;
};

// Depth-first enumeration of all nonempty strictly increasing index lists of
// length <= k over {0..n-1}: each node is visited before its extensions,
// left branches first, so the emission order is
// (0),(0,1),(0,1,2),(0,1,3),...,(0,2),(0,2,3),... Total emissions are
// sum_{l=1..k} C(n,l).
class BoundedSublists {
public:
    BoundedSublists(int n, int k) : n_(n), k_(std::min(k, n)) { cur_.reserve(std::max(k_, 0)); }

    bool next() {
        if (!started_) {
            started_ = true;
            if (k_ <= 0 || n_ <= 0) return false;
            cur_.push_back(0);
            return true;
        }
        if (static_cast<int>(cur_.size()) < k_ && cur_.back() + 1 < n_) {
            cur_.push_back(cur_.back() + 1);
            return true;
        }
        while (!cur_.empty()) {
            if (++cur_.back() < n_) return true;
            cur_.pop_back();
        }
        return false;
    }

    const std::vector<int>& current() const { return cur_; }

private:
    int n_;
    int k_;
    bool started_ = false;
    std::vector<int> cur_;
};

// Stable ordering of vote indices by the distinguished candidate's position
// (fallback: disapproval ranks below every approved position). Ascending
// puts the vote positioning c worst first; descending the vote positioning
// c best first.
inline std::vector<int> preorder_voters(const std::vector<Ballot>& votes, int c, int m, bool ascending_for_c) {
    std::vector<int> key(votes.size());
    for (std::size_t i = 0; i < votes.size(); ++i) {
        const auto& v = votes[i];
        const auto it = std::find(v.begin(), v.end(), c);
        key[i] = it == v.end() ? m + 1 : static_cast<int>(it - v.begin()) + 1;
    }
    std::vector<int> order(votes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return ascending_for_c ? key[a] > key[b] : key[a] < key[b];
    });
    return order;
}

// Stable ordering of `candidates` by the number of ballots placing them
// strictly before c. In fallback ballots an approved candidate counts as
// before c whenever c is disapproved or approved later.
inline std::vector<int> preorder_candidates(const std::vector<Ballot>& votes, int c,
                                            const std::vector<int>& candidates, bool descending) {
    int max_id = c;
    for (int d : candidates) max_id = std::max(max_id, d);
    std::vector<int> before(max_id + 1, 0);
    for (const auto& v : votes) {
        for (int x : v) {
            if (x == c) break;
            if (x <= max_id) before[x]++;
        }
    }
    std::vector<int> order(candidates);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return descending ? before[a] > before[b] : before[a] < before[b];
    });
    return order;
}

enum class OrderTarget { voters, pool_voters, candidates, none };
enum class OrderDir { ascending, descending, none };

struct SearchPlan {
    bool check_condition1 = false;
    std::optional<LevelMode> check_levels;       // condition 2 (del) / 3 (add)
    bool check_condition4 = false;               // PV forced verdicts
    bool majority_blocks_destructive = false;    // candidate control, forced No when c majorizes level 1
    OrderTarget order_target = OrderTarget::none;
    OrderDir order_dir = OrderDir::none;
};

inline SearchPlan plan_for(ControlType t, VotingRule rule) {
    SearchPlan p;
    const bool leveled = rule != VotingRule::plurality;
    switch (t.family) {
        case ControlFamily::AV:
            if (t.constructive()) {
                p.check_condition1 = true;
                if (leveled) p.check_levels = LevelMode::add;
                p.order_target = OrderTarget::pool_voters;
                p.order_dir = OrderDir::descending;
            }
            break;
        case ControlFamily::DV:
            if (t.constructive()) {
                p.check_condition1 = true;
                if (leveled) p.check_levels = LevelMode::del;
                p.order_target = OrderTarget::voters;
                p.order_dir = OrderDir::ascending;
            }
            break;
        case ControlFamily::PV:
            p.check_condition4 = true;
            if (t.constructive()) {
                p.check_condition1 = true;
                p.order_target = OrderTarget::voters;
                p.order_dir = OrderDir::descending;
            }
            break;
        case ControlFamily::AC:
            if (t.constructive()) {
                p.check_condition1 = true;
                p.order_dir = OrderDir::ascending;
            } else {
                p.majority_blocks_destructive = true;
                p.order_dir = OrderDir::descending;
            }
            p.order_target = OrderTarget::candidates;
            break;
        case ControlFamily::DC:
            if (t.constructive()) {
                p.check_condition1 = true;
                p.order_dir = OrderDir::descending;
            } else {
                p.majority_blocks_destructive = true;
                p.order_dir = OrderDir::ascending;
            }
            p.order_target = OrderTarget::candidates;
            break;
        case ControlFamily::PC:
        case ControlFamily::roPC:
            if (t.constructive()) {
                p.order_dir = OrderDir::ascending;
            } else {
                p.majority_blocks_destructive = true;
                p.order_dir = OrderDir::descending;
            }
            p.order_target = OrderTarget::candidates;
            break;
    }
    return p;
}

namespace detail {

// Incremental position tally over a fixed candidate universe; lets the DFS
// add and remove single ballots in O(ballot length).
class ScoreBoard {
public:
    explicit ScoreBoard(const Election& shape) : rule_(shape.rule), ids_(shape.candidates) {
        m_ = static_cast<int>(ids_.size());
        slot_.assign(ids_.back() + 1, -1);
        for (int j = 0; j < m_; ++j) slot_[ids_[j]] = j;
        at_pos_.assign(static_cast<std::size_t>(m_) * m_, 0);
    }

    void add(const Ballot& b) {
        for (int p = 0; p < static_cast<int>(b.size()); ++p) at_pos_[slot_[b[p]] * m_ + p]++;
        ++nvotes_;
    }
    void remove(const Ballot& b) {
        for (int p = 0; p < static_cast<int>(b.size()); ++p) at_pos_[slot_[b[p]] * m_ + p]--;
        --nvotes_;
    }
    int nvotes() const { return nvotes_; }

    // Winner ids (sorted); empty when there are no votes.
    void winners(std::vector<int>& out) const {
        out.clear();
        if (nvotes_ == 0) return;
        if (rule_ == VotingRule::plurality) {
            int best = -1;
            for (int j = 0; j < m_; ++j) {
                const int s = at_pos_[j * m_];
                if (s > best) {
                    best = s;
                    out.assign(1, ids_[j]);
                } else if (s == best) {
                    out.push_back(ids_[j]);
                }
            }
            return;
        }
        const int maj = nvotes_ / 2 + 1;
        cum_.assign(m_, 0);
        int best = -1;
        for (int level = 0; level < m_; ++level) {
            best = -1;
            for (int j = 0; j < m_; ++j) {
                cum_[j] += at_pos_[j * m_ + level];
                if (cum_[j] > best) {
                    best = cum_[j];
                    out.assign(1, ids_[j]);
                } else if (cum_[j] == best) {
                    out.push_back(ids_[j]);
                }
            }
            if (best >= maj) return;
        }
        if (rule_ == VotingRule::fallback) return; // approval stage: argmax already in out
        throw std::logic_error("bucklin scoreboard: no majority level");
    }

    bool unique_winner_is(int c, std::vector<int>& scratch) const {
        winners(scratch);
        return scratch.size() == 1 && scratch.front() == c;
    }

    // Smallest level whose cumulative score reaches `threshold`; m+1 when
    // none does, 1 when the threshold is non-positive.
    int first_level_reaching(int candidate_id, int threshold) const {
        if (threshold <= 0) return 1;
        const int j = slot_[candidate_id];
        int cum = 0;
        for (int level = 0; level < m_; ++level) {
            cum += at_pos_[j * m_ + level];
            if (cum >= threshold) return level + 1;
        }
        return m_ + 1;
    }

    // Writes the candidate's cumulative level scores into out[0..m-1].
    void cum_row(int candidate_id, int* out) const {
        const int j = slot_[candidate_id];
        int cum = 0;
        for (int level = 0; level < m_; ++level) {
            cum += at_pos_[j * m_ + level];
            out[level] = cum;
        }
    }

private:
    VotingRule rule_;
    std::vector<int> ids_;
    int m_ = 0;
    int nvotes_ = 0;
    std::vector<int> slot_;
    std::vector<int> at_pos_;
    mutable std::vector<int> cum_;
};

class Stopwatch {
public:
    explicit Stopwatch(Deadline d) : start_(clock::now()), limit_(start_ + d.budget) {}
    bool expired() const { return clock::now() >= limit_; }
    std::int64_t elapsed_us() const {
        return std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_;
    clock::time_point limit_;
};

inline Outcome finish(Verdict v, const Stopwatch& sw, std::optional<ControlAction> witness = std::nullopt) {
    return Outcome{v, std::move(witness), sw.elapsed_us()};
}

inline ControlAction make_action(ActionKind kind, std::vector<int> sel) {
    std::sort(sel.begin(), sel.end());
    return ControlAction{kind, std::move(sel)};
}

// Walks the bounded-sublist tree applying per-ballot deltas between
// consecutive nodes. `flip(i, on)` moves ordered item i into or out of the
// current selection; `test()` evaluates the node.
template <typename Flip, typename Test>
std::optional<std::vector<int>> dfs_sublists(int n, int k, const Stopwatch& sw, bool& timed_out, Flip&& flip,
                                             Test&& test) {
    BoundedSublists stream(n, k);
    std::vector<int> prev;
    while (stream.next()) {
        const auto& cur = stream.current();
        std::size_t common = 0;
        while (common < prev.size() && common < cur.size() && prev[common] == cur[common]) ++common;
        for (std::size_t i = prev.size(); i-- > common;) flip(prev[i], false);
        for (std::size_t i = common; i < cur.size(); ++i) flip(cur[i], true);
        prev = cur;
        if (sw.expired()) {
            timed_out = true;
            break;
        }
        if (test()) return cur;
    }
    for (std::size_t i = prev.size(); i-- > 0;) flip(prev[i], false);
    return std::nullopt;
}

} // namespace detail

// The search shared by adding/deleting voters: a scoreboard holds the
// working vote list and pool items are toggled along the DFS path.
namespace detail {

inline Outcome solve_voter_modify(const ControlInstance& inst, const SearchPlan& plan, const SolveOptions& opts,
                                  const Stopwatch& sw) {
    const bool adding = inst.control.family == ControlFamily::AV;
    const auto& items = adding ? inst.pool_voters : inst.election.votes;
    const ActionKind kind = adding ? ActionKind::add_voters : ActionKind::delete_voters;
    const int c = inst.distinguished;

    ScoreBoard board(inst.election);
    for (const auto& v : inst.election.votes) board.add(v);
    std::vector<int> scratch;

    const bool want = inst.control.constructive();
    // no votes left: everybody wins, so c is unique only in a one-candidate election
    const auto goal_met = [&] {
        const bool unique_c =
            board.nvotes() == 0 ? inst.election.num_candidates() == 1 : board.unique_winner_is(c, scratch);
        return unique_c == want;
    };
    if (goal_met()) return finish(Verdict::yes, sw, make_action(kind, {}));

    std::vector<int> order;
    if (opts.use_preorder && plan.order_target != OrderTarget::none)
        order = preorder_voters(items, c, inst.registered_candidates, plan.order_dir == OrderDir::ascending);
    else {
        order.resize(items.size());
        std::iota(order.begin(), order.end(), 0);
    }
    const int item_count = static_cast<int>(order.size());

    // Identical ballots are interchangeable; skipping one and choosing a
    // later equal copy revisits the same vote multiset, so such branches
    // are cut. prev_equal[i] is the previous position carrying an equal
    // ballot, under the search order.
    std::vector<int> prev_equal(item_count, -1);
    for (int i = 1; i < item_count; ++i)
        for (int j = i - 1; j >= 0; --j)
            if (items[order[j]] == items[order[i]]) {
                prev_equal[i] = j;
                break;
            }

    // Subtree bounds in the spirit of the level-score conditions, applied at
    // every node with the current tallies. Constructive Bucklin/fallback
    // only; each clause certifies that no admissible extension can make c
    // the unique winner, so pruned subtrees cannot hide witnesses.
    const bool can_bound = opts.use_conditions && inst.control.constructive() &&
                           inst.election.rule != VotingRule::plurality;
    const int m_active = inst.election.num_candidates();
    const bool is_fallback = inst.election.rule == VotingRule::fallback;

    // suffix_top[p][j]: number of still-available ballots (positions >= p in
    // the search order) ranking c within their top j+1 approved slots.
    // suffix_pair[p][a*m+j]: of those, the ones not ranking rival slot a in
    // their top j+1; only these can widen c's margin over that rival.
    std::vector<std::vector<int>> suffix_top, suffix_pair;
    if (can_bound && adding) {
        std::vector<int> slot_of(inst.election.candidates.back() + 1, -1);
        for (int a = 0; a < m_active; ++a) slot_of[inst.election.candidates[a]] = a;
        suffix_top.assign(item_count + 1, std::vector<int>(m_active, 0));
        suffix_pair.assign(item_count + 1, std::vector<int>(static_cast<std::size_t>(m_active) * m_active, 0));
        std::vector<int> pos_of(m_active);
        for (int p = item_count - 1; p >= 0; --p) {
            suffix_top[p] = suffix_top[p + 1];
            suffix_pair[p] = suffix_pair[p + 1];
            const auto& b = items[order[p]];
            std::fill(pos_of.begin(), pos_of.end(), m_active);
            for (int i = 0; i < static_cast<int>(b.size()); ++i) pos_of[slot_of[b[i]]] = i;
            const int c_pos = pos_of[slot_of[c]];
            if (c_pos >= m_active) continue;
            for (int j = c_pos; j < m_active; ++j) suffix_top[p][j]++;
            for (int a = 0; a < m_active; ++a) {
                if (inst.election.candidates[a] == c) continue;
                for (int j = c_pos; j < std::min(pos_of[a], m_active); ++j) suffix_pair[p][a * m_active + j]++;
            }
        }
    }

    std::vector<int> cum_scratch(static_cast<std::size_t>(m_active) * m_active);
    std::vector<int> forced(m_active);
    int c_slot = 0;
    for (int a = 0; a < m_active; ++a)
        if (inst.election.candidates[a] == c) c_slot = a;
    const auto subtree_hopeless = [&](int remaining, int next_pos) {
        if (!can_bound) return false;
        const int n_cur = board.nvotes();
        for (int a = 0; a < m_active; ++a)
            board.cum_row(inst.election.candidates[a], &cum_scratch[a * m_active]);
        const int* c_cum = &cum_scratch[c_slot * m_active];

        for (int r = 0; r <= remaining; ++r) {
            if (adding) {
                const int maj = (n_cur + r) / 2 + 1;
                const auto& top = suffix_top[next_pos];
                const auto& pair = suffix_pair[next_pos];
                // forced[a]: level by which rival a reaches maj no matter
                // which ballots are added
                bool any_forced = false;
                int min_forced = m_active + 1;
                std::fill(forced.begin(), forced.end(), m_active + 1);
                for (int a = 0; a < m_active; ++a) {
                    if (a == c_slot) continue;
                    const int* rival = &cum_scratch[a * m_active];
                    for (int lvl = 0; lvl < m_active; ++lvl)
                        if (rival[lvl] >= maj) {
                            forced[a] = lvl + 1;
                            break;
                        }
                    if (forced[a] <= m_active) any_forced = true;
                    min_forced = std::min(min_forced, forced[a]);
                }
                // can c win uniquely at some level j?
                bool majority_possible = false;
                for (int j = 0; j < m_active && !majority_possible; ++j) {
                    if (j + 1 > min_forced) break; // someone reaches strictly earlier
                    if (c_cum[j] + std::min(r, top[j]) < maj) continue;
                    bool beats_all = true;
                    for (int a = 0; a < m_active && beats_all; ++a) {
                        if (a == c_slot) continue;
                        if (forced[a] < j + 1) beats_all = false; // rival already majorized below j
                        else if (c_cum[j] + std::min(r, pair[a * m_active + j]) <= cum_scratch[a * m_active + j])
                            beats_all = false;
                    }
                    majority_possible = beats_all;
                }
                // or via the fallback approval stage, which needs every
                // rival below the threshold on every level
                bool approval_possible = false;
                if (is_fallback && !majority_possible && !any_forced) {
                    approval_possible = true;
                    const int app = m_active - 1;
                    for (int a = 0; a < m_active && approval_possible; ++a) {
                        if (a == c_slot) continue;
                        if (c_cum[app] + std::min(r, pair[a * m_active + app]) <= cum_scratch[a * m_active + app])
                            approval_possible = false;
                    }
                }
                if (majority_possible || approval_possible) return false;
            } else {
                const int maj = (n_cur - r) / 2 + 1;
                const int rival_threshold = maj + r;
                int j_level = m_active + 1;
                for (int lvl = 0; lvl < m_active; ++lvl)
                    if (c_cum[lvl] >= maj) {
                        j_level = lvl + 1;
                        break;
                    }
                bool some_rival = false;
                for (int a = 0; a < m_active && !some_rival; ++a) {
                    if (a == c_slot) continue;
                    const int* rival = &cum_scratch[a * m_active];
                    for (int lvl = 0; lvl < m_active; ++lvl)
                        if (rival[lvl] >= rival_threshold) {
                            some_rival = lvl + 1 <= j_level - 1;
                            break;
                        }
                }
                if (!some_rival) return false;
            }
        }
        return true;
    };

    const auto flip = [&](int i, bool on) {
        const auto& b = items[order[i]];
        const bool insert = adding ? on : !on;
        insert ? board.add(b) : board.remove(b);
    };

    // Prefix-order DFS over increasing position lists of length <= budget,
    // with the duplicate cut and the subtree bound applied at each node.
    std::vector<int> path;
    path.reserve(std::max(inst.budget, 0));
    bool timed_out = false;
    bool found = false;
    bool descend = true; // whether the current node may still get children
    for (;;) {
        int next = -1;
        if (descend && static_cast<int>(path.size()) < inst.budget) {
            const int p = path.empty() ? -1 : path.back();
            for (int i = p + 1; i < item_count; ++i)
                if (prev_equal[i] <= p) {
                    next = i;
                    break;
                }
        }
        if (next < 0) {
            // advance to the next sibling, unwinding as needed
            while (!path.empty()) {
                const int t = path.back();
                path.pop_back();
                flip(t, false);
                const int p = path.empty() ? -1 : path.back();
                for (int i = t + 1; i < item_count; ++i)
                    if (prev_equal[i] <= p) {
                        next = i;
                        break;
                    }
                if (next >= 0) break;
            }
            if (next < 0) break; // exhausted
        }
        path.push_back(next);
        flip(next, true);
        if (sw.expired()) {
            timed_out = true;
            break;
        }
        if (goal_met()) {
            found = true;
            break;
        }
        descend = !subtree_hopeless(inst.budget - static_cast<int>(path.size()), path.back() + 1);
    }
    if (found) {
        std::vector<int> sel;
        for (int i : path) sel.push_back(order[i]);
        return finish(Verdict::yes, sw, make_action(kind, std::move(sel)));
    }
    return finish(timed_out ? Verdict::timeout : Verdict::no, sw);
}

inline Outcome solve_voter_partition(const ControlInstance& inst, const SearchPlan& plan, const SolveOptions& opts,
                                     const Stopwatch& sw) {
    const Election& e = inst.election;
    const int n = e.num_votes();
    std::vector<int> order;
    if (opts.use_preorder && plan.order_target != OrderTarget::none)
        order = preorder_voters(e.votes, inst.distinguished, inst.registered_candidates,
                                plan.order_dir == OrderDir::ascending);
    else {
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
    }

    ScoreBoard cell1(e), cell2(e);
    for (const auto& v : e.votes) cell2.add(v);
    std::vector<int> w1, w2;
    const bool want = inst.control.constructive();

    const auto evaluate = [&] {
        cell1.winners(w1);
        cell2.winners(w2);
        if (inst.control.tie == TieRule::TE) {
            if (w1.size() != 1) w1.clear();
            if (w2.size() != 1) w2.clear();
        }
        auto final_set = sorted_union(w1, w2);
        bool unique_c = false;
        if (!final_set.empty()) {
            if (final_set.size() == 1) {
                unique_c = final_set.front() == inst.distinguished;
            } else {
                const auto w = winners(restrict(e, final_set)).winners;
                unique_c = w.size() == 1 && w.front() == inst.distinguished;
            }
        }
        return unique_c == want;
    };

    if (evaluate()) return finish(Verdict::yes, sw, make_action(ActionKind::voter_partition, {}));

    bool timed_out = false;
    const auto hit = dfs_sublists(
        n, n / 2, sw, timed_out,
        [&](int i, bool on) {
            const auto& b = e.votes[order[i]];
            if (on) {
                cell2.remove(b);
                cell1.add(b);
            } else {
                cell1.remove(b);
                cell2.add(b);
            }
        },
        evaluate);
    if (hit) {
        std::vector<int> sel;
        for (int i : *hit) sel.push_back(order[i]);
        return finish(Verdict::yes, sw, make_action(ActionKind::voter_partition, std::move(sel)));
    }
    return finish(timed_out ? Verdict::timeout : Verdict::no, sw);
}

inline Outcome solve_candidate_modify(const ControlInstance& inst, const SearchPlan& plan, const SolveOptions& opts,
                                      const Stopwatch& sw) {
    const bool adding = inst.control.family == ControlFamily::AC;
    const ActionKind kind = adding ? ActionKind::add_candidates : ActionKind::delete_candidates;
    std::vector<int> items; // deletable rivals or addable spoilers
    if (adding) {
        items = inst.pool_candidate_ids();
    } else {
        for (int c : inst.election.candidates)
            if (c != inst.distinguished) items.push_back(c);
    }
    if (opts.use_preorder && plan.order_target == OrderTarget::candidates)
        items = preorder_candidates(inst.election.votes, inst.distinguished, items,
                                    plan.order_dir == OrderDir::descending);

    const auto registered = inst.registered_ids();
    const bool want = inst.control.constructive();
    std::vector<char> chosen(items.size(), 0);
    std::vector<int> keep;
    const auto evaluate = [&] {
        keep = registered;
        if (adding) {
            for (std::size_t i = 0; i < items.size(); ++i)
                if (chosen[i]) keep.push_back(items[i]);
        } else {
            keep.clear();
            keep.push_back(inst.distinguished);
            for (std::size_t i = 0; i < items.size(); ++i)
                if (!chosen[i]) keep.push_back(items[i]);
        }
        const auto e = restrict(inst.election, keep);
        if (e.votes.empty()) return (e.num_candidates() == 1) == want;
        const auto w = winners(e).winners;
        const bool unique_c = w.size() == 1 && w.front() == inst.distinguished;
        return unique_c == want;
    };

    if (evaluate()) return finish(Verdict::yes, sw, make_action(kind, {}));

    bool timed_out = false;
    const auto hit = dfs_sublists(
        static_cast<int>(items.size()), inst.budget, sw, timed_out,
        [&](int i, bool on) { chosen[i] = on; }, evaluate);
    if (hit) {
        std::vector<int> sel;
        for (int i : *hit) sel.push_back(items[i]);
        return finish(Verdict::yes, sw, make_action(kind, std::move(sel)));
    }
    return finish(timed_out ? Verdict::timeout : Verdict::no, sw);
}

inline Outcome solve_candidate_partition(const ControlInstance& inst, const SearchPlan& plan,
                                         const SolveOptions& opts, const Stopwatch& sw) {
    const Election& e = inst.election;
    const bool runoff = inst.control.family == ControlFamily::roPC;
    std::vector<int> rivals;
    for (int c : e.candidates)
        if (c != inst.distinguished) rivals.push_back(c);
    if (opts.use_preorder && plan.order_target == OrderTarget::candidates)
        rivals = preorder_candidates(e.votes, inst.distinguished, rivals,
                                     plan.order_dir == OrderDir::descending);

    const bool want = inst.control.constructive();
    std::vector<char> chosen(rivals.size(), 0);

    // The cell holding c: the pre-round cell C1 for destructive control and
    // for runoff partitions, the final-round cell C2 otherwise. A second
    // pass with c in the opposite cell covers the remaining partitions of
    // the non-runoff problem (for runoff partitions the cells are
    // symmetric, so one pass is exhaustive).
    const auto c1_of = [&](bool c_in_c1) {
        std::vector<int> c1;
        if (c_in_c1) {
            c1.push_back(inst.distinguished);
            for (std::size_t i = 0; i < rivals.size(); ++i)
                if (chosen[i]) c1.push_back(rivals[i]);
        } else {
            for (std::size_t i = 0; i < rivals.size(); ++i)
                if (!chosen[i]) c1.push_back(rivals[i]);
        }
        return c1;
    };
    const auto evaluate = [&](bool c_in_c1) {
        const auto final_e = apply_candidate_partition(e, c1_of(c_in_c1), inst.control.tie, runoff);
        bool unique_c = false;
        if (final_e) {
            if (final_e->votes.empty()) {
                unique_c = final_e->num_candidates() == 1 && final_e->candidates.front() == inst.distinguished;
            } else {
                const auto w = winners(*final_e).winners;
                unique_c = w.size() == 1 && w.front() == inst.distinguished;
            }
        }
        return unique_c == want;
    };

    const bool primary_c_in_c1 = runoff || !inst.control.constructive();
    for (int pass = 0; pass < (runoff ? 1 : 2); ++pass) {
        const bool c_in_c1 = pass == 0 ? primary_c_in_c1 : !primary_c_in_c1;
        std::fill(chosen.begin(), chosen.end(), 0);
        if (sw.expired()) return finish(Verdict::timeout, sw);
        if (evaluate(c_in_c1))
            return finish(Verdict::yes, sw, make_action(ActionKind::candidate_partition, c1_of(c_in_c1)));
        bool timed_out = false;
        const auto hit = dfs_sublists(
            static_cast<int>(rivals.size()), static_cast<int>(rivals.size()), sw, timed_out,
            [&](int i, bool on) { chosen[i] = on; }, [&] { return evaluate(c_in_c1); });
        if (hit) return finish(Verdict::yes, sw, make_action(ActionKind::candidate_partition, c1_of(c_in_c1)));
        if (timed_out) return finish(Verdict::timeout, sw);
    }
    return finish(Verdict::no, sw);
}

} // namespace detail

inline Outcome solve(const ControlInstance& inst, Deadline deadline = {}, SolveOptions opts = {}) {
    validate_instance(inst);
    detail::Stopwatch sw(deadline);
    const SearchPlan plan = plan_for(inst.control, inst.election.rule);

    if (opts.use_conditions) {
        if (plan.check_condition4) {
            if (auto forced = condition4_decide(inst)) {
                forced->elapsed_us = sw.elapsed_us();
                return *forced;
            }
        }
        if (plan.check_condition1 && condition1(inst)) return detail::finish(Verdict::no, sw);
        if (plan.check_levels && inst.election.rule != VotingRule::plurality &&
            condition_levels(inst, *plan.check_levels))
            return detail::finish(Verdict::no, sw);
        if (plan.majority_blocks_destructive) {
            const auto w = level1_majority_candidate(inst.election);
            if (w && *w == inst.distinguished) return detail::finish(Verdict::no, sw);
        }
    }

    switch (inst.control.family) {
        case ControlFamily::AV:
        case ControlFamily::DV:
            return detail::solve_voter_modify(inst, plan, opts, sw);
        case ControlFamily::PV:
            return detail::solve_voter_partition(inst, plan, opts, sw);
        case ControlFamily::AC:
        case ControlFamily::DC:
            return detail::solve_candidate_modify(inst, plan, opts, sw);
        case ControlFamily::PC:
        case ControlFamily::roPC:
            return detail::solve_candidate_partition(inst, plan, opts, sw);
    }
    throw std::logic_error("solve: bad control family");
}

} // namespace ecl
