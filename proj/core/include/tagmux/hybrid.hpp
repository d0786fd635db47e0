#ifndef TAGMUX_HYBRID_HPP
#define TAGMUX_HYBRID_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tagmux/seq.hpp"

namespace tagmux {

// A set of interchangeable candidate primers for one reaction. Primer order
// is meaningful: it breaks ties throughout the assignment machinery.
struct Pool {
    std::string id;
    std::vector<DnaSeq> primers;
};

// Bipartite primer/tag adjacency: a primer hybridizes a tag when one of its
// c-tokens occurs reverse-complemented inside the tag. Primers get global
// ids, contiguous per pool in input order.
struct HybGraph {
    int c = 0;
    std::uint32_t tag_count = 0;
    std::vector<std::vector<std::uint32_t>> tags_of_primer; // primer -> sorted tag ids
    std::vector<std::vector<std::uint32_t>> primers_of_tag; // tag -> sorted primer ids
    std::vector<std::uint32_t> pool_of_primer;
    std::vector<std::uint32_t> pool_first_primer; // pool -> first global primer id
    std::vector<std::uint32_t> pool_primer_count;

    std::uint32_t primer_count() const {
        return static_cast<std::uint32_t>(tags_of_primer.size());
    }
    std::uint32_t pool_count() const {
        return static_cast<std::uint32_t>(pool_first_primer.size());
    }
};

// Direct pairwise test; the graph builder must agree with it.
bool hybridizes(const DnaSeq& primer, const DnaSeq& tag, int c);

HybGraph build_hybridization_graph(const std::vector<Pool>& pools,
                                   const std::vector<DnaSeq>& tags, int c);

// The surviving pools and primers of one scheduling round (the P' the
// deletion loop whittles down). Pools appear in ascending index order and
// keep their primers in original order.
struct ActiveSet {
    std::vector<std::uint32_t> pools;
    std::vector<std::vector<std::uint32_t>> primers; // parallel to pools

    std::size_t pool_count() const { return pools.size(); }
    // Per-primer activity flags, indexed by global primer id.
    std::vector<char> primer_flags(const HybGraph& g) const;
};

ActiveSet full_active_set(const HybGraph& g);

// The two structures behind the sufficient assignability condition: pools
// owning a "private" tag (every surviving primer hybridizing that tag lives
// in the pool), and tags no surviving primer hybridizes.
struct SlackSets {
    std::vector<std::uint32_t> pools_with_private_tag; // ascending
    std::vector<std::uint32_t> free_tags;              // ascending
};

SlackSets compute_slack_sets(const ActiveSet& active, const HybGraph& g);

// |pools with private tag| + |free tags| >= |active pools|: a set passing
// this is always assignable. Not necessary, only sufficient.
bool assignable_condition_holds(const ActiveSet& active, const HybGraph& g);

struct Assignment {
    std::uint32_t pool = 0;
    std::uint32_t primer = 0; // global primer id
    std::uint32_t tag = 0;
};

// Builds a concrete assignment for a set passing the condition: each pool
// with a private tag takes its first witness pair (primer order, then tag
// order); remaining pools take their first surviving primer and the next
// free tag. Throws if the condition does not hold.
std::vector<Assignment> construct_assignment(const ActiveSet& active, const HybGraph& g);

// True iff tags are assigned one-to-one and no selected primer hybridizes
// an assigned tag other than its own.
bool validate_assignment(const std::vector<Assignment>& selection, const HybGraph& g);

} // namespace tagmux

#endif // TAGMUX_HYBRID_HPP
