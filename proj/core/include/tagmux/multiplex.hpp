#ifndef TAGMUX_MULTIPLEX_HPP
#define TAGMUX_MULTIPLEX_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tagmux/hybrid.hpp"

namespace tagmux {

enum class Variant { PrimerDel, PrimerDelPlus, MinPot, MinDeg };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name); // throws on unknown name

// Deletion-priority scores. A tag with k surviving hybridizing primers has
// potential 2^-k (0 once k exceeds 64); a primer's potential sums those of
// the tags it hybridizes. Both recompute from the given surviving set.
double tag_potential(const ActiveSet& active, const HybGraph& g, std::uint32_t tag);
double primer_potential(const ActiveSet& active, const HybGraph& g, std::uint32_t primer);

enum class Metric { Potential, Degree };

// The single primer a pool is reduced to under the Min-Pot / Min-Deg
// variants: argmin of the metric over the full initial pool universe, ties
// to the earliest primer.
std::uint32_t select_pool_representative(const HybGraph& g, std::uint32_t pool, Metric metric);

struct PlanEntry {
    int array = 0; // numbered from 1
    std::uint32_t pool = 0;
    std::uint32_t primer_in_pool = 0;
    std::uint32_t tag = 0;
};

struct AssignmentPlan {
    std::vector<PlanEntry> entries;
};

struct ScheduleResult {
    AssignmentPlan plan;
    int arrays_used = 0;
    std::vector<int> per_array_assigned;
    double avg_utilization = 0.0; // percent
};

struct ScheduleOptions {
    // Recompute slack sets and potentials from scratch after every deletion
    // and compare against the incrementally maintained state. Slow; used by
    // tests to pin the incremental bookkeeping to its definition.
    bool audit_incremental = false;
};

// Multi-array scheduling: each array restores the remaining pools to their
// full primer lists, deletes maximum-potential primers until the
// assignability condition holds, assigns the survivors, and carries the
// rest over to the next array.
ScheduleResult schedule(const std::vector<Pool>& pools, const std::vector<DnaSeq>& tags,
                        int c, Variant variant, const ScheduleOptions& options = {});

// Same, with a prebuilt graph (must match the pools/tags it was built from).
ScheduleResult schedule(const HybGraph& graph, Variant variant,
                        const ScheduleOptions& options = {});

// Percent of tags used per array, averaged over all arrays but the last
// (over the single array when there is only one).
double average_utilization(const std::vector<int>& per_array_assigned,
                           std::uint32_t tag_count);

} // namespace tagmux

#endif // TAGMUX_MULTIPLEX_HPP
