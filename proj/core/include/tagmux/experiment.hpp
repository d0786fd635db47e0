#ifndef TAGMUX_EXPERIMENT_HPP
#define TAGMUX_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "tagmux/hybrid.hpp"
#include "tagmux/multiplex.hpp"

namespace tagmux {

// Instance generation uses std::mt19937_64 throughout; its output stream is
// fixed by the standard, so identical seeds reproduce identical instances
// within this implementation.
std::mt19937_64 seeded_rng(std::initializer_list<std::uint64_t> parts);

std::vector<Pool> random_pools(int pools, int pool_size, int primer_length,
                               std::mt19937_64& rng, int first_id = 1);
std::vector<Pool> random_pools(int pools, int pool_size, int primer_length,
                               std::uint64_t seed);

// Seed of the per-replicate instance stream. Keyed by replicate so streams
// never mix across replicates, and by the instance shape so the draw does
// not depend on sweep order; algorithms share instances by construction.
std::uint64_t instance_seed(std::uint64_t seed, int replicate, int pools, int pool_size);

// FNV-1a over the pool contents; used to check stream isolation.
std::uint64_t pools_digest(const std::vector<Pool>& pools);

struct ExperimentSpec {
    std::vector<int> pool_counts;
    int pool_size = 1;
    int primer_length = 20;
    std::vector<int> tag_counts; // empty means "use the whole tag list"
    int c = 7;                   // hybridization granularity
    std::vector<Variant> algorithms;
    int replicates = 10;
    std::uint64_t seed = 1;

    void validate() const;
};

struct ReportRow {
    int pools = 0;
    int pool_size = 0;
    int tags = 0;
    int c = 0;
    Variant algorithm = Variant::PrimerDel;
    double arrays_mean = 0.0;
    double utilization_mean = 0.0;
};

// Runs every (pool count, tag count, algorithm) combination over
// `replicates` shared instances and averages arrays used and utilization.
// Rows come out ordered by (pools, pool_size, algorithm, tags) with
// algorithms in their listed order.
std::vector<ReportRow> run_experiment(const ExperimentSpec& spec,
                                      const std::vector<DnaSeq>& tags);

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);

} // namespace tagmux

#endif // TAGMUX_EXPERIMENT_HPP
