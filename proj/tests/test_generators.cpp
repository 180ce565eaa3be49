#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "ecl/generators.hpp"

using namespace ecl;

namespace {

const ControlType CCDV{ControlFamily::DV, Direction::constructive, TieRule::none};
const ControlType CCAV{ControlFamily::AV, Direction::constructive, TieRule::none};
const ControlType CCAC{ControlFamily::AC, Direction::constructive, TieRule::none};
const ControlType CCDC{ControlFamily::DC, Direction::constructive, TieRule::none};

std::uint64_t fallback_domain_size(int m) {
    // sum over l of C(m,l) * l! = m!/(m-l)!
    std::uint64_t total = 0;
    for (int l = 0; l <= m; ++l) {
        std::uint64_t t = 1;
        for (int i = m - l + 1; i <= m; ++i) t *= i;
        total += t;
    }
    return total;
}

} // namespace

TEST_CASE("ranked votes are permutations") {
    Rng rng(1);
    for (int iter = 0; iter < 50; ++iter) {
        const int m = 1 + rng.bounded_int(6);
        auto b = random_ranked_vote(m, rng);
        REQUIRE(static_cast<int>(b.size()) == m);
        std::sort(b.begin(), b.end());
        for (int i = 0; i < m; ++i) CHECK(b[i] == i);
    }
    CHECK(random_ranked_vote(1, rng) == Ballot{0});
}

TEST_CASE("fallback votes are prefixes of permutations, all lengths reachable") {
    Rng rng(2);
    std::set<int> lengths;
    for (int iter = 0; iter < 400; ++iter) {
        const auto b = random_fallback_vote(3, rng);
        lengths.insert(static_cast<int>(b.size()));
        std::set<int> uniq(b.begin(), b.end());
        CHECK(uniq.size() == b.size());
        for (int c : b) CHECK((0 <= c && c < 3));
    }
    CHECK(lengths == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("fallback vote domain size matches the closed form") {
    CHECK(fallback_domain_size(3) == 16);
    for (int m = 1; m <= 4; ++m) {
        Rng rng(3000 + m);
        std::set<Ballot> seen;
        for (int iter = 0; iter < 200000; ++iter) seen.insert(random_fallback_vote(m, rng));
        CHECK(seen.size() == fallback_domain_size(m));
    }
}

TEST_CASE("two mainstreams model reuses its mainstream ballots") {
    Rng rng(7);
    TmStats stats;
    VoteSampler sampler(VotingRule::bucklin, DistModel::TM, 4, rng);
    const Ballot m1 = sampler.mainstream(0);
    const Ballot m2 = sampler.mainstream(1);
    for (int i = 0; i < 500; ++i) {
        TmStats before = stats;
        const Ballot b = sampler.draw(rng, &stats);
        if (stats.branch_counts[0] > before.branch_counts[0]) CHECK(b == m1);
        if (stats.branch_counts[1] > before.branch_counts[1]) CHECK(b == m2);
    }
    CHECK(stats.branch_counts[0] + stats.branch_counts[1] + stats.branch_counts[2] == 500);
    CHECK(stats.branch_counts[0] > 100);
    CHECK(stats.branch_counts[1] > 100);
    CHECK(stats.branch_counts[2] > 100);
}

TEST_CASE("instance conventions") {
    SECTION("budgets follow floor(n/3) with structural clamps") {
        Rng rng(11);
        CHECK(gen_instance(CCDV, VotingRule::bucklin, DistModel::IC, 4, 4, rng).budget == 1);
        CHECK(gen_instance(CCDV, VotingRule::bucklin, DistModel::IC, 4, 128, rng).budget == 42);
        CHECK(gen_instance(CCDC, VotingRule::bucklin, DistModel::IC, 4, 128, rng).budget == 3);
        CHECK(gen_instance(CCAC, VotingRule::bucklin, DistModel::IC, 4, 128, rng).budget == 4);
    }
    SECTION("the unregistered voter list matches the registered size") {
        Rng rng(12);
        const auto inst = gen_instance(CCAV, VotingRule::fallback, DistModel::TM, 3, 8, rng);
        CHECK(inst.pool_voters.size() == 8);
        CHECK(inst.budget == 2);
    }
    SECTION("adding-candidates instances span a doubled universe") {
        Rng rng(13);
        const auto inst = gen_instance(CCAC, VotingRule::plurality, DistModel::IC, 4, 6, rng);
        CHECK(inst.election.num_candidates() == 8);
        CHECK(inst.registered_candidates == 4);
        CHECK(inst.pool_candidate_ids() == std::vector<int>{4, 5, 6, 7});
        CHECK(inst.distinguished < 4);
        for (const auto& v : inst.election.votes) CHECK(v.size() == 8);
        const auto reg = inst.registered_election();
        CHECK(reg.num_candidates() == 4);
        for (const auto& v : reg.votes) CHECK(v.size() == 4);
    }
    SECTION("partition controls carry no budget") {
        Rng rng(14);
        const auto inst = gen_instance({ControlFamily::PV, Direction::destructive, TieRule::TP},
                                       VotingRule::bucklin, DistModel::IC, 4, 9, rng);
        CHECK(inst.budget == 0);
    }
}

TEST_CASE("identical trial seeds reproduce instances bit for bit") {
    for (const auto type : {CCDV, CCAV, CCAC}) {
        for (int trial = 0; trial < 3; ++trial) {
            const auto seed = trial_seed(42, VotingRule::fallback, type, DistModel::TM, 4, 6, trial);
            Rng a(seed), b(seed);
            const auto ia = gen_instance(type, VotingRule::fallback, DistModel::TM, 4, 6, a);
            const auto ib = gen_instance(type, VotingRule::fallback, DistModel::TM, 4, 6, b);
            CHECK(ia.election.votes == ib.election.votes);
            CHECK(ia.pool_voters == ib.pool_voters);
            CHECK(ia.distinguished == ib.distinguished);
            CHECK(ia.budget == ib.budget);
        }
    }
}

TEST_CASE("trial seeds separate cells and trials") {
    std::set<std::uint64_t> seeds;
    for (int trial = 0; trial < 10; ++trial)
        for (int m : {4, 8})
            for (int n : {4, 8})
                for (auto rule : {VotingRule::bucklin, VotingRule::fallback})
                    seeds.insert(trial_seed(1, rule, CCDV, DistModel::IC, m, n, trial));
    CHECK(seeds.size() == 10 * 2 * 2 * 2);
}
