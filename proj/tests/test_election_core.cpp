#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "ecl/election.hpp"
#include "ecl/generators.hpp"
#include "ecl/rng.hpp"

using namespace ecl;

namespace {

Election make(VotingRule rule, int m, std::vector<Ballot> votes) {
    Election e;
    e.rule = rule;
    e.candidates.resize(m);
    for (int i = 0; i < m; ++i) e.candidates[i] = i;
    e.votes = std::move(votes);
    return e;
}

// Reference winner determination by literal per-level rescans; kept naive on
// purpose so it shares nothing with the incremental tally.
std::vector<int> ref_winners(const Election& e) {
    const int n = e.num_votes();
    const int m = e.num_candidates();
    REQUIRE(n >= 1);
    const auto score = [&](int c, int level) {
        int s = 0;
        for (const auto& v : e.votes) {
            const int depth = std::min<int>(level, static_cast<int>(v.size()));
            for (int p = 0; p < depth; ++p)
                if (v[p] == c) {
                    ++s;
                    break;
                }
        }
        return s;
    };
    std::vector<int> best;
    if (e.rule == VotingRule::plurality) {
        int top = -1;
        for (int c : e.candidates) {
            int s = 0;
            for (const auto& v : e.votes) s += !v.empty() && v.front() == c;
            if (s > top) {
                top = s;
                best = {c};
            } else if (s == top) {
                best.push_back(c);
            }
        }
        return best;
    }
    const int maj = n / 2 + 1;
    for (int level = 1; level <= m; ++level) {
        int top = -1;
        best.clear();
        for (int c : e.candidates) {
            const int s = score(c, level);
            if (s > top) {
                top = s;
                best = {c};
            } else if (s == top) {
                best.push_back(c);
            }
        }
        if (top >= maj) return best;
    }
    REQUIRE(e.rule == VotingRule::fallback);
    int top = -1;
    best.clear();
    for (int c : e.candidates) {
        const int s = score(c, m);
        if (s > top) {
            top = s;
            best = {c};
        } else if (s == top) {
            best.push_back(c);
        }
    }
    return best;
}

} // namespace

TEST_CASE("majority threshold") {
    CHECK(majority_threshold(5) == 3);
    CHECK(majority_threshold(0) == 1);
    CHECK(majority_threshold(128) == 65);
}

TEST_CASE("level scores") {
    // single vote c2 c1 c3 over candidates c1,c2,c3 = 0,1,2
    const auto e = make(VotingRule::bucklin, 3, {{1, 0, 2}});
    CHECK(level_score(e, 1, 1) == 1);
    CHECK(level_score(e, 0, 2) == 1);
    CHECK(level_score(e, 2, 2) == 0);
    CHECK_THROWS_AS(level_score(e, 7, 1), std::invalid_argument);
    CHECK_THROWS_AS(level_score(e, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(level_score(e, 0, 4), std::invalid_argument);

    // disapproved candidates never score
    const auto fb = make(VotingRule::fallback, 3, {{2}});
    CHECK(level_score(fb, 0, 3) == 0);

    // full rankings: level-m score is n for every candidate, and scores are
    // monotone in the level
    Rng rng(7);
    const auto r = gen_election(VotingRule::bucklin, DistModel::IC, 5, 9, rng);
    for (int c = 0; c < 5; ++c) {
        CHECK(level_score(r, c, 5) == 9);
        for (int l = 2; l <= 5; ++l) CHECK(level_score(r, c, l) >= level_score(r, c, l - 1));
    }
}

TEST_CASE("bucklin winners") {
    const auto e1 = make(VotingRule::bucklin, 3, {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}});
    const auto w1 = bucklin_winners(e1);
    CHECK(w1.winners == std::vector<int>{0});
    CHECK(w1.winning_level == 1);

    const auto e2 = make(VotingRule::bucklin, 3, {{0, 1, 2}});
    CHECK(bucklin_winners(e2).winners == std::vector<int>{0});
    CHECK(bucklin_winners(e2).winning_level == 1);

    // no level-1/2 majority; c alone tops the level-3 scores (3,3,4,2)
    const auto e3 = make(VotingRule::bucklin, 4, {{0, 1, 2, 3}, {1, 0, 2, 3}, {2, 3, 0, 1}, {3, 2, 1, 0}});
    const auto w3 = bucklin_winners(e3);
    CHECK(w3.winners == std::vector<int>{2});
    CHECK(w3.winning_level == 3);
    CHECK(ref_winners(e3) == w3.winners);

    // four-way level-3 tie, every score exactly at the threshold
    const auto e4 = make(VotingRule::bucklin, 4, {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
    const auto w4 = bucklin_winners(e4);
    CHECK(w4.winners == std::vector<int>{0, 1, 2, 3});
    CHECK(w4.winning_level == 3);
    CHECK(ref_winners(e4) == w4.winners);

    CHECK_THROWS_AS(bucklin_winners(make(VotingRule::bucklin, 2, {})), std::invalid_argument);
}

TEST_CASE("fallback winners") {
    // no majority on any level: approval stage ties a and b
    const auto e1 = make(VotingRule::fallback, 2, {{0}, {1}, {}});
    const auto w1 = fallback_winners(e1);
    CHECK(w1.winners == std::vector<int>{0, 1});
    CHECK_FALSE(w1.winning_level.has_value());

    const auto e2 = make(VotingRule::fallback, 2, {{0}, {0}, {1}});
    const auto w2 = fallback_winners(e2);
    CHECK(w2.winners == std::vector<int>{0});
    CHECK(w2.winning_level == 1);

    // all approvals empty: every candidate wins
    const auto e3 = make(VotingRule::fallback, 3, {{}, {}});
    CHECK(fallback_winners(e3).winners == std::vector<int>{0, 1, 2});
    CHECK_FALSE(is_unique_winner(e3, 0));

    CHECK_THROWS_AS(fallback_winners(make(VotingRule::fallback, 2, {})), std::invalid_argument);
}

TEST_CASE("fallback subsumes bucklin when everyone approves everything") {
    Rng rng(42);
    for (int iter = 0; iter < 200; ++iter) {
        const int m = 1 + rng.bounded_int(4);
        const int n = 1 + rng.bounded_int(7);
        const auto bv = gen_election(VotingRule::bucklin, DistModel::IC, m, n, rng);
        Election fb = bv;
        fb.rule = VotingRule::fallback;
        const auto wb = bucklin_winners(bv);
        const auto wf = fallback_winners(fb);
        CHECK(wb.winners == wf.winners);
        CHECK(wb.winning_level == wf.winning_level);
    }
}

TEST_CASE("plurality winners") {
    const auto e1 = make(VotingRule::plurality, 3, {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}});
    CHECK(plurality_winners(e1).winners == std::vector<int>{0});
    const auto e2 = make(VotingRule::plurality, 2, {{0, 1}, {1, 0}});
    CHECK(plurality_winners(e2).winners == std::vector<int>{0, 1});
    CHECK_FALSE(is_unique_winner(e2, 0));
    CHECK_FALSE(is_unique_winner(e2, 1));
    const auto e3 = make(VotingRule::plurality, 3, {{2, 0, 1}});
    CHECK(plurality_winners(e3).winners == std::vector<int>{2});
    CHECK_FALSE(plurality_winners(e3).winning_level.has_value());
    CHECK_THROWS_AS(plurality_winners(make(VotingRule::plurality, 2, {})), std::invalid_argument);
}

TEST_CASE("winners match the naive reference on random elections") {
    Rng rng(2024);
    for (int iter = 0; iter < 600; ++iter) {
        const VotingRule rule = static_cast<VotingRule>(rng.bounded_int(3));
        const int m = 1 + rng.bounded_int(5);
        const int n = 1 + rng.bounded_int(8);
        const DistModel dist = rng.bounded_int(2) ? DistModel::TM : DistModel::IC;
        const auto e = gen_election(rule, dist, m, n, rng);
        CHECK(winners(e).winners == ref_winners(e));
    }
}

TEST_CASE("winners ignore vote order") {
    Rng rng(99);
    for (int iter = 0; iter < 100; ++iter) {
        const VotingRule rule = static_cast<VotingRule>(rng.bounded_int(3));
        const int m = 1 + rng.bounded_int(4);
        const int n = 1 + rng.bounded_int(6);
        auto e = gen_election(rule, iter % 2 ? DistModel::TM : DistModel::IC, m, n, rng);
        const auto w = winners(e).winners;
        for (int shuffle = 0; shuffle < 3; ++shuffle) {
            for (int i = n - 1; i > 0; --i) std::swap(e.votes[i], e.votes[rng.bounded_int(i + 1)]);
            CHECK(winners(e).winners == w);
        }
    }
}

TEST_CASE("restrict") {
    const auto e = make(VotingRule::bucklin, 3, {{1, 0, 2}});
    const auto same = restrict(e, {0, 1, 2});
    CHECK(same.votes == e.votes);
    CHECK(same.candidates == e.candidates);

    const auto sub = restrict(e, {0, 2});
    CHECK(sub.votes == std::vector<Ballot>{{0, 2}});

    const auto fb = make(VotingRule::fallback, 3, {{2, 0}});
    const auto fsub = restrict(fb, {1});
    CHECK(fsub.votes == std::vector<Ballot>{{}});

    CHECK_THROWS_AS(restrict(e, {}), std::invalid_argument);
    CHECK_THROWS_AS(restrict(e, {5}), std::invalid_argument);
}

TEST_CASE("restrict is idempotent and composes by intersection") {
    Rng rng(555);
    for (int iter = 0; iter < 100; ++iter) {
        const VotingRule rule = static_cast<VotingRule>(rng.bounded_int(3));
        const int m = 2 + rng.bounded_int(4);
        const int n = 1 + rng.bounded_int(5);
        const auto e = gen_election(rule, DistModel::IC, m, n, rng);
        std::vector<int> a, b;
        for (int c = 0; c < m; ++c)
            if (rng.bounded_int(2)) a.push_back(c);
        if (a.empty()) a.push_back(rng.bounded_int(m));
        for (int c : a)
            if (rng.bounded_int(2)) b.push_back(c);
        if (b.empty()) b.push_back(a[rng.bounded_int(static_cast<int>(a.size()))]);

        const auto ra = restrict(e, a);
        CHECK(restrict(ra, a).votes == ra.votes);
        const auto rab = restrict(ra, b);
        const auto rb = restrict(e, b); // b is a subset of a, so this is the intersection
        CHECK(rab.votes == rb.votes);
        CHECK(rab.candidates == rb.candidates);
    }
}
