// Command-line front end: tag set generation/verification, bound reports,
// token inspection, random pool instances, assignment, and the experiment
// harness. Exit codes: 0 success/feasible, 1 infeasible or failed
// validation, 2 usage or parse errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tagmux/experiment.hpp"
#include "tagmux/hybrid.hpp"
#include "tagmux/io.hpp"
#include "tagmux/multiplex.hpp"
#include "tagmux/tagset.hpp"
#include "tagmux/tokens.hpp"

namespace {

using namespace tagmux;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

const char* constraint_name(Constraint c) {
    switch (c) {
    case Constraint::C1: return "C1";
    case Constraint::C2: return "C2";
    case Constraint::C3: return "C3";
    }
    return "?";
}

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

bool parse_constraints(const std::string& text) {
    if (text == "c2") return false;
    if (text == "c2c3") return true;
    throw CLI::ValidationError("--constraints", "expected c2 or c2c3");
}

struct GenerateArgs {
    int c = 8;
    std::optional<int> length;
    std::optional<int> min_weight;
    std::optional<int> max_weight;
    std::string constraints = "c2c3";
    std::optional<std::size_t> limit;
    std::uint64_t node_budget = TagSetConfig::kDefaultNodeBudget;
    std::string output;
};

int run_generate(const GenerateArgs& a) {
    TagSetConfig cfg;
    cfg.c = a.c;
    cfg.length = a.length;
    cfg.min_weight = a.min_weight;
    cfg.max_weight = a.max_weight;
    cfg.enforce_c3 = parse_constraints(a.constraints);
    cfg.max_tags = a.limit;
    cfg.node_budget = a.node_budget;

    const GenerationResult result = generate_tags(cfg);
    write_tag_file(a.output, result.tags);

    std::cout << "tags=" << result.tags.size() << "\n";
    if (cfg.enforce_c3) {
        const BoundReport bound = tag_set_bound(cfg.c, cfg.length, cfg.min_weight);
        std::cout << "bound=" << bound.tag_bound << "\n";
    }
    std::cout << "nodes=" << result.nodes_explored << "\n"
              << "budget_exhausted=" << (result.budget_exhausted ? "true" : "false") << "\n";
    return kExitOk;
}

struct VerifyArgs {
    int c = 8;
    std::optional<int> length;
    std::optional<int> min_weight;
    std::optional<int> max_weight;
    std::string constraints = "c2c3";
    std::string file;
};

int run_verify(const VerifyArgs& a) {
    TagSetConfig cfg;
    cfg.c = a.c;
    cfg.length = a.length;
    cfg.min_weight = a.min_weight;
    cfg.max_weight = a.max_weight;
    cfg.enforce_c3 = parse_constraints(a.constraints);

    const std::vector<DnaSeq> tags = read_tag_file(a.file);
    const FeasibilityReport report = verify_tag_set(tags, cfg);
    if (report.ok) {
        std::cout << "feasible tags=" << tags.size() << "\n";
        return kExitOk;
    }
    for (const Violation& v : report.violations) {
        std::cout << "violation constraint=" << constraint_name(v.constraint)
                  << " offending=" << v.offending << " tags=" << join_ints(v.tag_indices);
        if (!v.positions.empty()) std::cout << " positions=" << join_ints(v.positions);
        std::cout << "\n";
    }
    std::cout << "infeasible violations=" << report.violations.size() << "\n";
    return kExitInfeasible;
}

struct BoundArgs {
    int c = 8;
    std::optional<int> length;
    std::optional<int> min_weight;
};

int run_bound(const BoundArgs& a) {
    const BoundReport r = tag_set_bound(a.c, a.length, a.min_weight);
    std::cout << "c=" << r.c << "\n"
              << "token_bound=" << r.token_bound << "\n"
              << "tail_weight_bound=" << r.tail_weight_bound << "\n";
    if (r.tags_by_length) std::cout << "tags_by_length=" << *r.tags_by_length << "\n";
    if (r.tags_by_weight) std::cout << "tags_by_weight=" << *r.tags_by_weight << "\n";
    std::cout << "tag_bound=" << r.tag_bound << "\n"
              << "tags <= " << r.tag_bound << "; tokens <= " << r.token_bound << "\n";
    return kExitOk;
}

int run_tokens_count(int c) {
    std::cout << enumerate_tokens(c).size() << "\n";
    return kExitOk;
}

int run_tokens_extract(int c, const std::string& seq_text) {
    const DnaSeq s(seq_text);
    for (const TokenOccurrence& occ : extract_tokens(s, c))
        std::cout << occ.end_pos << " " << occ.token.seq.str() << "\n";
    return kExitOk;
}

struct PoolsArgs {
    int pools = 1000;
    int pool_size = 1;
    int primer_length = 20;
    std::uint64_t seed = 1;
    std::string output;
};

int run_pools_random(const PoolsArgs& a) {
    auto rng = seeded_rng({a.seed});
    const std::vector<Pool> pools = random_pools(a.pools, a.pool_size, a.primer_length, rng);
    write_pool_file(a.output, pools);
    std::cout << "pools=" << pools.size() << " pool_size=" << a.pool_size
              << " digest=" << pools_digest(pools) << "\n";
    return kExitOk;
}

struct AssignArgs {
    std::string pool_file;
    std::string tag_file;
    int c = 7;
    std::string algorithm = "primer-del";
    std::string output;
};

int run_assign(const AssignArgs& a) {
    const std::vector<Pool> pools = read_pool_file(a.pool_file);
    const std::vector<DnaSeq> tags = read_tag_file(a.tag_file);
    const Variant variant = variant_from_name(a.algorithm);
    const ScheduleResult result = schedule(pools, tags, a.c, variant);
    write_assignment_file(a.output, result.plan, pools, tags);
    char util[32];
    std::snprintf(util, sizeof(util), "%.1f", result.avg_utilization);
    std::cout << "arrays=" << result.arrays_used << " util=" << util << "%\n";
    return kExitOk;
}

struct ExperimentArgs {
    std::vector<int> pool_counts;
    int pool_size = 1;
    int primer_length = 20;
    std::vector<int> tag_counts;
    int c = 7;
    std::vector<std::string> algorithms = {"primer-del", "primer-del-plus", "min-pot",
                                           "min-deg"};
    int replicates = 10;
    std::uint64_t seed = 1;
    std::string tags_file;
    // Tag generation fallback when no tag file is given.
    std::optional<int> tag_c;
    std::optional<int> tag_length;
    std::optional<int> tag_min_weight;
    std::optional<int> tag_max_weight;
    std::string tag_constraints = "c2c3";
    std::string report;
};

int run_experiment(const ExperimentArgs& a) {
    std::vector<DnaSeq> tags;
    if (!a.tags_file.empty()) {
        tags = read_tag_file(a.tags_file);
    } else if (a.tag_c) {
        TagSetConfig cfg;
        cfg.c = *a.tag_c;
        cfg.length = a.tag_length;
        cfg.min_weight = a.tag_min_weight;
        cfg.max_weight = a.tag_max_weight;
        cfg.enforce_c3 = parse_constraints(a.tag_constraints);
        tags = generate_tags(cfg).tags;
    } else {
        throw CLI::ValidationError("experiment",
                                   "need --tags-file or --tag-c generation flags");
    }

    ExperimentSpec spec;
    spec.pool_counts = a.pool_counts;
    spec.pool_size = a.pool_size;
    spec.primer_length = a.primer_length;
    spec.tag_counts = a.tag_counts;
    spec.c = a.c;
    for (const std::string& name : a.algorithms)
        spec.algorithms.push_back(variant_from_name(name));
    spec.replicates = a.replicates;
    spec.seed = a.seed;

    const std::vector<ReportRow> rows = run_experiment(spec, tags);
    if (a.report.empty()) {
        write_report_csv(std::cout, rows);
    } else {
        std::ofstream out(a.report);
        if (!out) throw std::runtime_error("cannot write " + a.report);
        write_report_csv(out, rows);
        std::cout << "rows=" << rows.size() << " report=" << a.report << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Universal-array tag set design and multi-array primer multiplexing"};
    app.require_subcommand(1);
    int exit_code = kExitOk;

    // tags {generate, verify, bound}
    CLI::App* tags_cmd = app.add_subcommand("tags", "Tag set operations");
    tags_cmd->require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = tags_cmd->add_subcommand("generate", "Greedy tag set construction");
    generate->add_option("--c", gen.c, "Token weight threshold")->required();
    generate->add_option("--length", gen.length, "Exact tag length");
    generate->add_option("--min-weight", gen.min_weight, "Minimum tag weight");
    generate->add_option("--max-weight", gen.max_weight, "Maximum tag weight");
    generate->add_option("--constraints", gen.constraints, "c2 or c2c3 (default c2c3)");
    generate->add_option("--limit", gen.limit, "Stop after this many tags");
    generate->add_option("--node-budget", gen.node_budget, "Search node budget");
    generate->add_option("-o,--output", gen.output, "Tag file to write")->required();
    generate->callback([&]() { exit_code = run_generate(gen); });

    VerifyArgs ver;
    CLI::App* verify = tags_cmd->add_subcommand("verify", "Check tag set feasibility");
    verify->add_option("--c", ver.c, "Token weight threshold")->required();
    verify->add_option("--length", ver.length, "Exact tag length");
    verify->add_option("--min-weight", ver.min_weight, "Minimum tag weight");
    verify->add_option("--max-weight", ver.max_weight, "Maximum tag weight");
    verify->add_option("--constraints", ver.constraints, "c2 or c2c3 (default c2c3)");
    verify->add_option("file", ver.file, "Tag file")->required();
    verify->callback([&]() { exit_code = run_verify(ver); });

    BoundArgs bnd;
    CLI::App* bound = tags_cmd->add_subcommand("bound", "Tag count upper bounds");
    bound->add_option("--c", bnd.c, "Token weight threshold")->required();
    bound->add_option("--length", bnd.length, "Exact tag length");
    bound->add_option("--min-weight", bnd.min_weight, "Minimum tag weight");
    bound->callback([&]() { exit_code = run_bound(bnd); });

    // tokens {count, extract}
    CLI::App* tokens_cmd = app.add_subcommand("tokens", "Token inspection");
    tokens_cmd->require_subcommand(1);

    int count_c = 4;
    CLI::App* tok_count = tokens_cmd->add_subcommand("count", "Token universe size");
    tok_count->add_option("--c", count_c, "Token weight threshold")->required();
    tok_count->callback([&]() { exit_code = run_tokens_count(count_c); });

    int extract_c = 4;
    std::string extract_seq;
    CLI::App* tok_extract =
        tokens_cmd->add_subcommand("extract", "Tokens ending at each position");
    tok_extract->add_option("--c", extract_c, "Token weight threshold")->required();
    tok_extract->add_option("sequence", extract_seq, "DNA sequence")->required();
    tok_extract->callback([&]() { exit_code = run_tokens_extract(extract_c, extract_seq); });

    // pools random
    CLI::App* pools_cmd = app.add_subcommand("pools", "Primer pool instances");
    pools_cmd->require_subcommand(1);
    PoolsArgs pr;
    CLI::App* pools_random_cmd =
        pools_cmd->add_subcommand("random", "Seeded random primer pools");
    pools_random_cmd->add_option("--pools", pr.pools, "Number of pools")->required();
    pools_random_cmd->add_option("--pool-size", pr.pool_size, "Primers per pool");
    pools_random_cmd->add_option("--primer-length", pr.primer_length, "Primer length");
    pools_random_cmd->add_option("--seed", pr.seed, "PRNG seed");
    pools_random_cmd->add_option("-o,--output", pr.output, "Pool file to write")->required();
    pools_random_cmd->callback([&]() { exit_code = run_pools_random(pr); });

    // assign
    AssignArgs as;
    CLI::App* assign = app.add_subcommand("assign", "Schedule pools onto arrays");
    assign->add_option("--pools", as.pool_file, "Pool file")->required();
    assign->add_option("--tags", as.tag_file, "Tag file")->required();
    assign->add_option("--c", as.c, "Hybridization weight threshold")->required();
    assign->add_option("--algorithm", as.algorithm,
                       "primer-del | primer-del-plus | min-pot | min-deg");
    assign->add_option("-o,--output", as.output, "Assignment TSV to write")->required();
    assign->callback([&]() { exit_code = run_assign(as); });

    // experiment
    ExperimentArgs ex;
    CLI::App* experiment = app.add_subcommand("experiment", "Multiplexing sweep, CSV report");
    experiment->add_option("--pools", ex.pool_counts, "Pool counts to sweep")
        ->required()
        ->delimiter(',');
    experiment->add_option("--pool-size", ex.pool_size, "Primers per pool");
    experiment->add_option("--primer-length", ex.primer_length, "Primer length");
    experiment->add_option("--tag-counts", ex.tag_counts, "Tag counts to sweep")
        ->delimiter(',');
    experiment->add_option("--c", ex.c, "Hybridization weight threshold");
    experiment->add_option("--algorithm", ex.algorithms, "Algorithms to compare")
        ->delimiter(',');
    experiment->add_option("--replicates", ex.replicates, "Instances per configuration");
    experiment->add_option("--seed", ex.seed, "Master PRNG seed");
    experiment->add_option("--tags-file", ex.tags_file, "Tag file to draw from");
    experiment->add_option("--tag-c", ex.tag_c, "Generate tags: token threshold");
    experiment->add_option("--tag-length", ex.tag_length, "Generate tags: length");
    experiment->add_option("--tag-min-weight", ex.tag_min_weight, "Generate tags: min weight");
    experiment->add_option("--tag-max-weight", ex.tag_max_weight, "Generate tags: max weight");
    experiment->add_option("--tag-constraints", ex.tag_constraints,
                           "Generate tags: c2 or c2c3");
    experiment->add_option("--report", ex.report, "CSV file (default stdout)");
    experiment->callback([&]() { exit_code = run_experiment(ex); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const tagmux::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
    return exit_code;
}
