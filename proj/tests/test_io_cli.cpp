#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "oracles.hpp"
#include "tagmux/experiment.hpp"
#include "tagmux/io.hpp"
#include "tagmux/tagset.hpp"

using namespace tagmux;
namespace fs = std::filesystem;

namespace {

#ifndef TAGMUX_CLI_PATH
#define TAGMUX_CLI_PATH "tagmux"
#endif

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tagmux_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static inline int counter = 0;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs the CLI, captures stdout, returns the exit code.
int run_cli(const std::string& args, const TempDir& dir, std::string* out = nullptr) {
    const std::string out_file = dir.file("cli_stdout.txt");
    const std::string cmd =
        std::string(TAGMUX_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    if (out) *out = slurp(out_file);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::vector<DnaSeq> small_tag_set() {
    TagSetConfig cfg;
    cfg.c = 4;
    cfg.length = 6;
    cfg.enforce_c3 = false;
    return generate_tags(cfg).tags;
}

} // namespace

TEST_CASE("tag files round-trip and honor comments") {
    std::stringstream src("# header comment\n\nACGTAA  \nTTTTTT # inline\n");
    const std::vector<DnaSeq> tags = read_tags(src, "mem");
    REQUIRE(tags.size() == 2);
    CHECK(tags[0].str() == "ACGTAA");
    CHECK(tags[1].str() == "TTTTTT");

    std::stringstream out;
    write_tags(out, tags);
    std::stringstream back(out.str());
    CHECK(read_tags(back, "mem") == tags);
}

TEST_CASE("tag parse errors carry the line number") {
    std::stringstream src("ACGT\nACGT\nACXT\n");
    try {
        read_tags(src, "tags.txt");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("tags.txt:3") != std::string::npos);
    }
}

TEST_CASE("pool files round-trip") {
    std::stringstream src("# pools\nP1\tACGTAA,TTTTTT\nP2\tGGGGGG\n");
    const std::vector<Pool> pools = read_pools(src, "mem");
    REQUIRE(pools.size() == 2);
    CHECK(pools[0].id == "P1");
    REQUIRE(pools[0].primers.size() == 2);
    CHECK(pools[0].primers[1].str() == "TTTTTT");
    CHECK(pools[1].primers.size() == 1);

    std::stringstream out;
    write_pools(out, pools);
    std::stringstream back(out.str());
    const std::vector<Pool> again = read_pools(back, "mem");
    REQUIRE(again.size() == 2);
    CHECK(again[0].primers == pools[0].primers);
    CHECK(again[1].id == "P2");
}

TEST_CASE("pool parse errors") {
    std::stringstream no_tab("P1 ACGT\n");
    CHECK_THROWS_AS(read_pools(no_tab, "mem"), ParseError);
    std::stringstream empty_primer("P1\tACGT,,ACGT\n");
    CHECK_THROWS_AS(read_pools(empty_primer, "mem"), ParseError);
    std::stringstream bad_char("P1\tACGT\nP2\tACGTX\n");
    try {
        read_pools(bad_char, "pools.tsv");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("assignment files round-trip and re-validate") {
    auto rng = seeded_rng({5});
    const std::vector<Pool> pools = random_pools(8, 2, 8, rng);
    std::vector<DnaSeq> tags;
    for (int i = 0; i < 5; ++i) tags.push_back(oracle::random_seq(rng, 8));
    const HybGraph g = build_hybridization_graph(pools, tags, 4);
    const ScheduleResult res = schedule(g, Variant::PrimerDelPlus);

    std::stringstream out;
    write_assignment(out, res.plan, pools, tags);
    std::stringstream back(out.str());
    const AssignmentPlan loaded = read_assignment(back, pools, tags, "mem");
    REQUIRE(loaded.entries.size() == res.plan.entries.size());

    std::map<int, std::vector<Assignment>> by_array;
    for (std::size_t i = 0; i < loaded.entries.size(); ++i) {
        const PlanEntry& e = loaded.entries[i];
        CHECK(e.array == res.plan.entries[i].array);
        CHECK(e.pool == res.plan.entries[i].pool);
        CHECK(e.tag == res.plan.entries[i].tag);
        by_array[e.array].push_back(
            {e.pool, g.pool_first_primer[e.pool] + e.primer_in_pool, e.tag});
    }
    for (const auto& [array, picks] : by_array) CHECK(validate_assignment(picks, g));
}

TEST_CASE("assignment parser rejects inconsistent rows") {
    const std::vector<Pool> pools{{"P1", {DnaSeq("ACGTACGT")}}};
    const std::vector<DnaSeq> tags{DnaSeq("AAAATTTT"), DnaSeq("CCCCGGGG")};
    std::stringstream bad_tag("1\tP1\tACGTACGT\t2\tAAAATTTT\n");
    CHECK_THROWS_AS(read_assignment(bad_tag, pools, tags, "mem"), ParseError);
    std::stringstream bad_pool("1\tP9\tACGTACGT\t1\tAAAATTTT\n");
    CHECK_THROWS_AS(read_assignment(bad_pool, pools, tags, "mem"), ParseError);
    std::stringstream bad_primer("1\tP1\tAAAAAAAA\t1\tAAAATTTT\n");
    CHECK_THROWS_AS(read_assignment(bad_primer, pools, tags, "mem"), ParseError);
}

TEST_CASE("report csv format") {
    std::vector<ReportRow> rows(1);
    rows[0].pools = 1000;
    rows[0].pool_size = 5;
    rows[0].tags = 500;
    rows[0].c = 7;
    rows[0].algorithm = Variant::PrimerDelPlus;
    rows[0].arrays_mean = 4.0;
    rows[0].utilization_mean = 60.4286;
    std::stringstream out;
    write_report_csv(out, rows);
    CHECK(out.str() ==
          "pools,pool_size,tags,c,algorithm,arrays_mean,utilization_mean\n"
          "1000,5,500,7,primer-del-plus,4.0,60.4\n");
}

TEST_CASE("random pools are reproducible and replicate streams stay apart") {
    const std::vector<Pool> a = random_pools(20, 3, 12, std::uint64_t{17});
    const std::vector<Pool> b = random_pools(20, 3, 12, std::uint64_t{17});
    CHECK(pools_digest(a) == pools_digest(b));
    for (const Pool& p : a)
        for (const DnaSeq& primer : p.primers) CHECK(primer.length() == 12);

    const std::uint64_t s0 = instance_seed(9, 0, 100, 2);
    CHECK(s0 == instance_seed(9, 0, 100, 2));
    CHECK(s0 != instance_seed(9, 1, 100, 2));
    CHECK(s0 != instance_seed(10, 0, 100, 2));
}

TEST_CASE("experiment rows are ordered and share instances across algorithms") {
    const std::vector<DnaSeq> tags = small_tag_set();
    REQUIRE(tags.size() >= 8);

    ExperimentSpec spec;
    spec.pool_counts = {8, 4};
    spec.pool_size = 1;
    spec.primer_length = 6;
    spec.tag_counts = {8, 4};
    spec.c = 4;
    spec.algorithms = {Variant::PrimerDel, Variant::PrimerDelPlus, Variant::MinPot,
                       Variant::MinDeg};
    spec.replicates = 3;
    spec.seed = 2024;

    const std::vector<ReportRow> rows = run_experiment(spec, tags);
    REQUIRE(rows.size() == 2 * 2 * 4);
    // Ordered by (pools, algorithm, tags); pool counts and tag counts ascend.
    CHECK(rows[0].pools == 4);
    CHECK(rows[0].tags == 4);
    CHECK(rows[1].tags == 8);
    CHECK(rows[0].algorithm == Variant::PrimerDel);
    CHECK(rows[8].pools == 8);

    // Single-primer pools: every algorithm reports identical means.
    for (int block = 0; block < 2; ++block)
        for (int t = 0; t < 2; ++t) {
            const ReportRow& base = rows[block * 8 + t];
            for (int a = 1; a < 4; ++a) {
                const ReportRow& other = rows[block * 8 + a * 2 + t];
                CHECK(other.arrays_mean == base.arrays_mean);
                CHECK(other.utilization_mean == base.utilization_mean);
            }
        }
}

TEST_CASE("cli: generate, verify, bound, tokens") {
    TempDir dir;
    std::string out;

    const std::string tag_file = dir.file("tags.txt");
    int rc = run_cli("tags generate --c 4 --length 6 --constraints c2 --limit 10 -o " +
                         tag_file,
                     dir, &out);
    CHECK(rc == 0);
    CHECK(out.find("tags=10") != std::string::npos);
    CHECK(read_tag_file(tag_file).size() == 10);

    rc = run_cli("tags verify --c 4 --length 6 --constraints c2 " + tag_file, dir, &out);
    CHECK(rc == 0);
    CHECK(out.find("feasible") != std::string::npos);

    // Duplicating a tag breaks C2: exit code 1 and a violation listing.
    std::ofstream dup(tag_file, std::ios::app);
    dup << "AAAACA\n";
    dup.close();
    rc = run_cli("tags verify --c 4 --length 6 --constraints c2 " + tag_file, dir, &out);
    CHECK(rc == 1);
    CHECK(out.find("constraint=C2") != std::string::npos);

    rc = run_cli("tags bound --c 10 --length 20", dir, &out);
    CHECK(rc == 0);
    CHECK(out.find("tags <= 1161; tokens <= 12780") != std::string::npos);

    // Weight-only generation reports the matching ceiling.
    rc = run_cli("tags generate --c 9 --min-weight 28 --max-weight 32 "
                 "--constraints c2c3 -o " +
                     dir.file("wtags.txt"),
                 dir, &out);
    CHECK(rc == 0);
    CHECK(out.find("bound=312") != std::string::npos);

    rc = run_cli("tags bound --c 9 --min-weight 28", dir, &out);
    CHECK(rc == 0);
    CHECK(out.find("tag_bound=312") != std::string::npos);

    rc = run_cli("tokens extract --c 4 ATACGA", dir, &out);
    CHECK(rc == 0);
    CHECK(out == "4 TAC\n5 CG\n6 CGA\n");

    rc = run_cli("tokens count --c 4", dir, &out);
    CHECK(rc == 0);
    CHECK(out == "76\n");
}

TEST_CASE("cli: pools, assign, experiment") {
    TempDir dir;
    std::string out;

    const std::string pool_file = dir.file("pools.tsv");
    const std::string pool_file2 = dir.file("pools2.tsv");
    int rc = run_cli("pools random --pools 30 --pool-size 2 --primer-length 20 --seed 17 -o " +
                         pool_file,
                     dir, &out);
    CHECK(rc == 0);
    rc = run_cli("pools random --pools 30 --pool-size 2 --primer-length 20 --seed 17 -o " +
                     pool_file2,
                 dir, &out);
    CHECK(rc == 0);
    CHECK(slurp(pool_file) == slurp(pool_file2)); // byte-identical for a fixed seed

    const std::string tag_file = dir.file("tags.txt");
    rc = run_cli("tags generate --c 4 --length 8 --constraints c2 -o " + tag_file, dir, &out);
    CHECK(rc == 0);

    const std::string assign_file = dir.file("assignment.tsv");
    rc = run_cli("assign --pools " + pool_file + " --tags " + tag_file +
                     " --c 7 --algorithm primer-del-plus -o " + assign_file,
                 dir, &out);
    CHECK(rc == 0);
    CHECK(out.find("arrays=") != std::string::npos);
    CHECK(out.find("util=") != std::string::npos);

    // The written plan re-validates on load.
    const std::vector<Pool> pools = read_pool_file(pool_file);
    const std::vector<DnaSeq> tags = read_tag_file(tag_file);
    const AssignmentPlan plan = read_assignment_file(assign_file, pools, tags);
    CHECK(!plan.entries.empty());

    const std::string report = dir.file("report.csv");
    rc = run_cli("experiment --pools 6 --pool-size 1 --tag-counts 5 --c 4 "
                 "--algorithm primer-del,min-deg --replicates 2 --seed 3 --tags-file " +
                     tag_file + " --report " + report,
                 dir, &out);
    CHECK(rc == 0);
    const std::string csv = slurp(report);
    CHECK(csv.find("pools,pool_size,tags,c,algorithm,arrays_mean,utilization_mean") == 0);
    CHECK(csv.find("6,1,5,4,primer-del,") != std::string::npos);
    CHECK(csv.find("6,1,5,4,min-deg,") != std::string::npos);

    // Usage errors exit with 2.
    rc = run_cli("tags generate --c 4", dir, &out);
    CHECK(rc == 2);
    rc = run_cli("bogus", dir, &out);
    CHECK(rc == 2);
    rc = run_cli("tags bound --c 3 --length 20", dir, &out);
    CHECK(rc == 2);
}
