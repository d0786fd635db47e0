#include "tagmux/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace tagmux {

std::mt19937_64 seeded_rng(std::initializer_list<std::uint64_t> parts) {
    std::vector<std::uint32_t> words;
    words.reserve(parts.size() * 2);
    for (std::uint64_t v : parts) {
        words.push_back(static_cast<std::uint32_t>(v));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

std::vector<Pool> random_pools(int pools, int pool_size, int primer_length,
                               std::mt19937_64& rng, int first_id) {
    if (pools < 1 || pool_size < 1 || primer_length < 1)
        throw std::invalid_argument("pool count, pool size and primer length must be positive");
    std::vector<Pool> out;
    out.reserve(static_cast<std::size_t>(pools));
    for (int i = 0; i < pools; ++i) {
        Pool pool;
        pool.id = "P" + std::to_string(first_id + i);
        for (int j = 0; j < pool_size; ++j) {
            std::vector<Base> bases(static_cast<std::size_t>(primer_length));
            // 4 divides 2^64, so masking two bits is exactly uniform.
            for (Base& b : bases) b = static_cast<Base>(rng() & 3);
            pool.primers.push_back(DnaSeq::from_bases(bases));
        }
        out.push_back(std::move(pool));
    }
    return out;
}

std::vector<Pool> random_pools(int pools, int pool_size, int primer_length,
                               std::uint64_t seed) {
    auto rng = seeded_rng({seed});
    return random_pools(pools, pool_size, primer_length, rng);
}

std::uint64_t instance_seed(std::uint64_t seed, int replicate, int pools, int pool_size) {
    auto rng = seeded_rng({seed, static_cast<std::uint64_t>(replicate),
                           static_cast<std::uint64_t>(pools),
                           static_cast<std::uint64_t>(pool_size)});
    return rng();
}

std::uint64_t pools_digest(const std::vector<Pool>& pools) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](unsigned char byte) {
        h ^= byte;
        h *= 1099511628211ULL;
    };
    for (const Pool& pool : pools) {
        for (char ch : pool.id) mix(static_cast<unsigned char>(ch));
        mix('\t');
        for (const DnaSeq& primer : pool.primers) {
            for (Base b : primer.bases()) mix(static_cast<unsigned char>(to_char(b)));
            mix(',');
        }
        mix('\n');
    }
    return h;
}

void ExperimentSpec::validate() const {
    if (pool_counts.empty()) throw std::invalid_argument("no pool counts");
    for (int m : pool_counts)
        if (m < 1) throw std::invalid_argument("pool counts must be positive");
    if (pool_size < 1) throw std::invalid_argument("pool size must be positive");
    if (primer_length < 1) throw std::invalid_argument("primer length must be positive");
    for (int n : tag_counts)
        if (n < 1) throw std::invalid_argument("tag counts must be positive");
    if (c < 2) throw std::invalid_argument("c must be at least 2");
    if (algorithms.empty()) throw std::invalid_argument("no algorithms");
    if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
}

std::vector<ReportRow> run_experiment(const ExperimentSpec& spec,
                                      const std::vector<DnaSeq>& tags) {
    spec.validate();
    if (tags.empty()) throw std::invalid_argument("no tags");

    std::vector<int> tag_counts = spec.tag_counts;
    if (tag_counts.empty()) tag_counts.push_back(static_cast<int>(tags.size()));
    for (int n : tag_counts)
        if (n > static_cast<int>(tags.size()))
            throw std::invalid_argument("tag count exceeds available tags");
    std::sort(tag_counts.begin(), tag_counts.end());
    tag_counts.erase(std::unique(tag_counts.begin(), tag_counts.end()), tag_counts.end());

    std::vector<int> pool_counts = spec.pool_counts;
    std::sort(pool_counts.begin(), pool_counts.end());
    pool_counts.erase(std::unique(pool_counts.begin(), pool_counts.end()),
                      pool_counts.end());

    struct Sums {
        double arrays = 0.0;
        double util = 0.0;
    };
    std::map<std::tuple<int, std::size_t, int>, Sums> sums; // (pools, algo idx, tags)

    for (int m : pool_counts) {
        for (int r = 0; r < spec.replicates; ++r) {
            auto rng = seeded_rng({instance_seed(spec.seed, r, m, spec.pool_size)});
            const std::vector<Pool> instance =
                random_pools(m, spec.pool_size, spec.primer_length, rng);
            for (int n : tag_counts) {
                const std::vector<DnaSeq> subset(tags.begin(), tags.begin() + n);
                const HybGraph graph = build_hybridization_graph(instance, subset, spec.c);
                for (std::size_t ai = 0; ai < spec.algorithms.size(); ++ai) {
                    const ScheduleResult res = schedule(graph, spec.algorithms[ai]);
                    Sums& s = sums[{m, ai, n}];
                    s.arrays += res.arrays_used;
                    s.util += res.avg_utilization;
                }
            }
        }
    }

    std::vector<ReportRow> rows;
    for (int m : pool_counts) {
        for (std::size_t ai = 0; ai < spec.algorithms.size(); ++ai) {
            for (int n : tag_counts) {
                const Sums& s = sums.at({m, ai, n});
                ReportRow row;
                row.pools = m;
                row.pool_size = spec.pool_size;
                row.tags = n;
                row.c = spec.c;
                row.algorithm = spec.algorithms[ai];
                row.arrays_mean = s.arrays / spec.replicates;
                row.utilization_mean = s.util / spec.replicates;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << "pools,pool_size,tags,c,algorithm,arrays_mean,utilization_mean\n";
    char buf[64];
    for (const ReportRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.1f,%.1f", r.arrays_mean, r.utilization_mean);
        out << r.pools << ',' << r.pool_size << ',' << r.tags << ',' << r.c << ','
            << variant_name(r.algorithm) << ',' << buf << '\n';
    }
}

} // namespace tagmux
