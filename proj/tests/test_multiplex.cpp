#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "oracles.hpp"
#include "tagmux/experiment.hpp"
#include "tagmux/multiplex.hpp"

using namespace tagmux;

namespace {

Pool pool(const std::string& id, std::initializer_list<const char*> primers) {
    Pool p;
    p.id = id;
    for (const char* s : primers) p.primers.emplace_back(s);
    return p;
}

std::vector<DnaSeq> seqs(std::initializer_list<const char*> texts) {
    std::vector<DnaSeq> out;
    for (const char* t : texts) out.emplace_back(t);
    return out;
}

// Re-derives per-array assignments from a plan and validates each array.
void check_plan(const ScheduleResult& res, const HybGraph& g) {
    std::map<int, std::vector<Assignment>> by_array;
    std::set<std::uint32_t> pools_seen;
    for (const PlanEntry& e : res.plan.entries) {
        CHECK(pools_seen.insert(e.pool).second); // each pool exactly once
        by_array[e.array].push_back(
            {e.pool, g.pool_first_primer[e.pool] + e.primer_in_pool, e.tag});
    }
    CHECK(static_cast<int>(by_array.size()) == res.arrays_used);
    CHECK(pools_seen.size() == g.pool_count());
    for (auto& [array, picks] : by_array) {
        CHECK(array >= 1);
        CHECK(array <= res.arrays_used);
        CHECK(validate_assignment(picks, g));
    }
}

} // namespace

TEST_CASE("variant names round-trip") {
    for (Variant v : {Variant::PrimerDel, Variant::PrimerDelPlus, Variant::MinPot,
                      Variant::MinDeg})
        CHECK(variant_from_name(variant_name(v)) == v);
    CHECK_THROWS_AS(variant_from_name("greedy"), std::invalid_argument);
}

TEST_CASE("tag and primer potentials") {
    // P1's primer hybridizes t0 (alone) and t1 (with P2's primer).
    const std::vector<Pool> pools{pool("P1", {"AACGG"}), pool("P2", {"TTGGTT"})};
    const HybGraph g = build_hybridization_graph(pools, seqs({"TTCGTT", "AACCAA"}), 4);
    const ActiveSet all = full_active_set(g);

    CHECK(tag_potential(all, g, 0) == doctest::Approx(0.5));  // degree 1
    CHECK(tag_potential(all, g, 1) == doctest::Approx(0.25)); // degree 2
    CHECK(primer_potential(all, g, 0) == doctest::Approx(0.75));

    // Removing P2's primer lifts t1 back to degree 1.
    ActiveSet reduced = all;
    reduced.pools = {0};
    reduced.primers = {{0}};
    CHECK(tag_potential(reduced, g, 1) == doctest::Approx(0.5));
    CHECK(primer_potential(reduced, g, 0) == doctest::Approx(1.0));

    // A tag nobody hybridizes has potential 2^0; a primer hybridizing
    // nothing has potential 0.
    const HybGraph g2 = build_hybridization_graph({pool("P1", {"AAAAA"})},
                                                  seqs({"CCCCCC"}), 4);
    CHECK(tag_potential(full_active_set(g2), g2, 0) == doctest::Approx(1.0));
    CHECK(primer_potential(full_active_set(g2), g2, 0) == 0.0);
}

TEST_CASE("tag potential clamps to zero at extreme degree") {
    std::vector<Pool> pools;
    for (int i = 0; i < 70; ++i) pools.push_back(pool("P" + std::to_string(i), {"AACGG"}));
    const HybGraph g = build_hybridization_graph(pools, seqs({"TTCGTT"}), 4);
    CHECK(tag_potential(full_active_set(g), g, 0) == 0.0);
}

TEST_CASE("no conflicts: one array, full utilization") {
    const std::vector<Pool> pools{pool("P1", {"AAAAA"}), pool("P2", {"TTTTT"})};
    const HybGraph g = build_hybridization_graph(pools, seqs({"CCCCCC", "CCCGCC"}), 4);
    const ScheduleResult res = schedule(g, Variant::PrimerDel);
    CHECK(res.arrays_used == 1);
    CHECK(res.per_array_assigned == std::vector<int>{2});
    CHECK(res.avg_utilization == doctest::Approx(100.0));
    check_plan(res, g);
}

TEST_CASE("two singleton pools contending for one tag need two arrays") {
    const std::vector<Pool> pools{pool("P1", {"AACGG"}), pool("P2", {"TACGT"})};
    const std::vector<DnaSeq> tags = seqs({"TTCGTT"});
    const HybGraph g = build_hybridization_graph(pools, tags, 4);
    const ScheduleResult res = schedule(g, Variant::PrimerDel, {true});

    CHECK(res.arrays_used == 2);
    REQUIRE(res.plan.entries.size() == 2);
    // Tie on potential deletes P1's primer first, so array 1 hosts P2.
    CHECK(res.plan.entries[0].array == 1);
    CHECK(res.plan.entries[0].pool == 1);
    CHECK(res.plan.entries[0].tag == 0);
    // P1 re-enters with its full pool and lands on array 2, reusing the tag.
    CHECK(res.plan.entries[1].array == 2);
    CHECK(res.plan.entries[1].pool == 0);
    CHECK(res.plan.entries[1].tag == 0);
    check_plan(res, g);
}

TEST_CASE("utilization statistics") {
    CHECK(average_utilization({500, 480, 20}, 500) == doctest::Approx(98.0));
    CHECK(average_utilization({300}, 500) == doctest::Approx(60.0));
    CHECK(average_utilization({}, 500) == 0.0);
}

TEST_CASE("select_pool_representative uses the metric with first-wins ties") {
    // First primer hybridizes two tags, second only one, third ties second.
    const std::vector<Pool> pools{pool("P1", {"AACGG", "AAAAC", "AAACA"})};
    const std::vector<DnaSeq> tags = seqs({"TTCGTT", "AACCAA", "AGTTTT"});
    // AACGG: CG->t0, GG->CC in t1, AAC->GTT in t0/t2. AAAAC: AAAA->TTTT in
    // t2, AAC->GTT. AAACA: same tokens AAAA/AAC plus ACA->TGT absent.
    const HybGraph g = build_hybridization_graph(pools, tags, 4);
    REQUIRE(g.tags_of_primer[0].size() == 3);
    REQUIRE(g.tags_of_primer[1].size() == 2);
    REQUIRE(g.tags_of_primer[2].size() == 2);
    CHECK(select_pool_representative(g, 0, Metric::Degree) == 1); // tie broken to earlier

    // The potential metric must rank consistently with primer_potential.
    const ActiveSet all = full_active_set(g);
    const std::uint32_t rep = select_pool_representative(g, 0, Metric::Potential);
    for (std::uint32_t p = 0; p < g.primer_count(); ++p)
        CHECK(primer_potential(all, g, rep) <= primer_potential(all, g, p));
}

TEST_CASE("all variants coincide on single-primer pools") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 10; ++iter) {
        auto gen = seeded_rng({rng()});
        const std::vector<Pool> pools = random_pools(20, 1, 8, gen);
        std::vector<DnaSeq> tags;
        for (int i = 0; i < 10; ++i) tags.push_back(oracle::random_seq(gen, 8));
        const HybGraph g = build_hybridization_graph(pools, tags, 4);

        const ScheduleResult base = schedule(g, Variant::PrimerDel);
        for (Variant v : {Variant::PrimerDelPlus, Variant::MinPot, Variant::MinDeg}) {
            const ScheduleResult other = schedule(g, v);
            CHECK(other.arrays_used == base.arrays_used);
            CHECK(other.per_array_assigned == base.per_array_assigned);
            REQUIRE(other.plan.entries.size() == base.plan.entries.size());
            for (std::size_t i = 0; i < base.plan.entries.size(); ++i) {
                CHECK(other.plan.entries[i].array == base.plan.entries[i].array);
                CHECK(other.plan.entries[i].pool == base.plan.entries[i].pool);
                CHECK(other.plan.entries[i].primer_in_pool ==
                      base.plan.entries[i].primer_in_pool);
                CHECK(other.plan.entries[i].tag == base.plan.entries[i].tag);
            }
        }
    }
}

TEST_CASE("min-deg picks each pool's representative before scheduling") {
    const std::vector<Pool> pools{pool("P1", {"AACGG", "TTTTT"})};
    const std::vector<DnaSeq> tags = seqs({"TTCGTT", "AAAAAA"});
    // AACGG hybridizes t0; TTTTT hybridizes t1 via AAAA... both degree >= 1.
    const HybGraph g = build_hybridization_graph(pools, tags, 4);
    REQUIRE(g.tags_of_primer[0].size() >= 1);
    REQUIRE(g.tags_of_primer[1].size() >= 1);
    const ScheduleResult res = schedule(g, Variant::MinDeg);
    REQUIRE(res.plan.entries.size() == 1);
    CHECK(res.plan.entries[0].primer_in_pool ==
          select_pool_representative(g, 0, Metric::Degree) - g.pool_first_primer[0]);
}

TEST_CASE("random schedules validate, cover every pool, and pass the audit") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 60; ++iter) {
        auto gen = seeded_rng({rng()});
        const int n_pools = 3 + static_cast<int>(gen() % 10);
        const int pool_size = 1 + static_cast<int>(gen() % 3);
        const std::vector<Pool> pools = random_pools(n_pools, pool_size, 7, gen);
        std::vector<DnaSeq> tags;
        const int n_tags = 3 + static_cast<int>(gen() % 8);
        for (int i = 0; i < n_tags; ++i) tags.push_back(oracle::random_seq(gen, 7));
        const HybGraph g = build_hybridization_graph(pools, tags, 4);

        for (Variant v : {Variant::PrimerDel, Variant::PrimerDelPlus, Variant::MinPot,
                          Variant::MinDeg}) {
            const ScheduleResult res = schedule(g, v, {true}); // audited
            check_plan(res, g);
            CHECK(res.arrays_used >=
                  static_cast<int>((g.pool_count() + tags.size() - 1) / tags.size()));
        }
    }
}

TEST_CASE("conflict-free instances meet the pigeonhole array count exactly") {
    std::vector<Pool> pools;
    for (int i = 0; i < 5; ++i)
        pools.push_back(pool("P" + std::to_string(i + 1), {"AAAAA"}));
    // All-weak primers cannot hybridize all-strong tags.
    const HybGraph g = build_hybridization_graph(pools, seqs({"CCCCCC", "GGCGGC"}), 4);
    const ScheduleResult res = schedule(g, Variant::PrimerDel);
    CHECK(res.arrays_used == 3); // ceil(5 pools / 2 tags)
    check_plan(res, g);
}

TEST_CASE("bigger pools never need more arrays (fixed seeds)") {
    double mean5 = 0, mean2 = 0, mean1 = 0;
    for (int r = 0; r < 12; ++r) {
        auto rng = seeded_rng({static_cast<std::uint64_t>(r), 12});
        const std::vector<Pool> size5 = random_pools(60, 5, 10, rng);
        std::vector<Pool> size2, size1;
        for (const Pool& p : size5) {
            size2.push_back({p.id, {p.primers[0], p.primers[1]}});
            size1.push_back({p.id, {p.primers[0]}});
        }
        std::vector<DnaSeq> tags;
        for (int i = 0; i < 12; ++i) tags.push_back(oracle::random_seq(rng, 10));
        mean5 += schedule(size5, tags, 6, Variant::PrimerDelPlus).arrays_used;
        mean2 += schedule(size2, tags, 6, Variant::PrimerDelPlus).arrays_used;
        mean1 += schedule(size1, tags, 6, Variant::PrimerDelPlus).arrays_used;
    }
    CHECK(mean5 <= mean2);
    CHECK(mean2 <= mean1);
    CHECK(mean5 < mean1); // the pool slack must actually buy something here
}

TEST_CASE("scheduling is deterministic") {
    auto gen = seeded_rng({404});
    const std::vector<Pool> pools = random_pools(15, 2, 8, gen);
    std::vector<DnaSeq> tags;
    for (int i = 0; i < 6; ++i) tags.push_back(oracle::random_seq(gen, 8));
    const HybGraph g = build_hybridization_graph(pools, tags, 4);
    const ScheduleResult a = schedule(g, Variant::PrimerDelPlus);
    const ScheduleResult b = schedule(g, Variant::PrimerDelPlus);
    CHECK(a.arrays_used == b.arrays_used);
    CHECK(a.per_array_assigned == b.per_array_assigned);
    CHECK(a.avg_utilization == b.avg_utilization);
}
