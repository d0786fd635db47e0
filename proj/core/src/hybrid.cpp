#include "tagmux/hybrid.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "tagmux/tokens.hpp"

namespace tagmux {

namespace {

// Distinct token keys occurring in a sequence.
std::vector<TokenKey> distinct_tokens(const DnaSeq& s, int c) {
    std::vector<TokenKey> keys;
    const auto& codes = s.bases();
    for (int j = 0; j < s.length(); ++j) {
        AnchorPair a = anchors_at(codes, j, c);
        if (a.token) keys.push_back(a.token);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

} // namespace

bool hybridizes(const DnaSeq& primer, const DnaSeq& tag, int c) {
    if (c < 2) throw std::invalid_argument("c must be at least 2");
    const std::string tag_text = tag.str();
    for (TokenKey k : distinct_tokens(primer, c)) {
        const std::string needle = key_to_string(reverse_complement_key(k));
        if (tag_text.find(needle) != std::string::npos) return true;
    }
    return false;
}

HybGraph build_hybridization_graph(const std::vector<Pool>& pools,
                                   const std::vector<DnaSeq>& tags, int c) {
    if (c < 2) throw std::invalid_argument("c must be at least 2");
    if (tags.empty()) throw std::invalid_argument("no tags");

    HybGraph g;
    g.c = c;
    g.tag_count = static_cast<std::uint32_t>(tags.size());

    // Index every weight-{c,c+1} substring of every tag under the key of its
    // reverse complement; a primer token then finds, in one lookup, all tags
    // that contain its complement.
    std::unordered_map<TokenKey, std::vector<std::uint32_t>> tags_by_token;
    for (std::uint32_t ti = 0; ti < tags.size(); ++ti) {
        const auto& codes = tags[ti].bases();
        for (int j = 0; j < tags[ti].length(); ++j) {
            AnchorPair a = anchors_at(codes, j, c);
            for (TokenKey anchor : {a.token, a.longer}) {
                if (anchor == 0) continue;
                auto& v = tags_by_token[reverse_complement_key(anchor)];
                if (v.empty() || v.back() != ti) v.push_back(ti);
            }
        }
    }

    std::uint32_t next_id = 0;
    for (const Pool& pool : pools) {
        if (pool.primers.empty())
            throw std::invalid_argument("empty primer pool: " + pool.id);
        g.pool_first_primer.push_back(next_id);
        g.pool_primer_count.push_back(static_cast<std::uint32_t>(pool.primers.size()));
        for (const DnaSeq& primer : pool.primers) {
            std::vector<std::uint32_t> adjacent;
            for (TokenKey k : distinct_tokens(primer, c)) {
                auto it = tags_by_token.find(k);
                if (it == tags_by_token.end()) continue;
                adjacent.insert(adjacent.end(), it->second.begin(), it->second.end());
            }
            std::sort(adjacent.begin(), adjacent.end());
            adjacent.erase(std::unique(adjacent.begin(), adjacent.end()), adjacent.end());
            g.tags_of_primer.push_back(std::move(adjacent));
            g.pool_of_primer.push_back(static_cast<std::uint32_t>(g.pool_first_primer.size()) - 1);
            ++next_id;
        }
    }

    g.primers_of_tag.assign(g.tag_count, {});
    for (std::uint32_t p = 0; p < g.primer_count(); ++p)
        for (std::uint32_t t : g.tags_of_primer[p]) g.primers_of_tag[t].push_back(p);
    return g;
}

std::vector<char> ActiveSet::primer_flags(const HybGraph& g) const {
    std::vector<char> flags(g.primer_count(), 0);
    for (const auto& list : primers)
        for (std::uint32_t p : list) flags[p] = 1;
    return flags;
}

ActiveSet full_active_set(const HybGraph& g) {
    ActiveSet a;
    for (std::uint32_t pool = 0; pool < g.pool_count(); ++pool) {
        a.pools.push_back(pool);
        std::vector<std::uint32_t> ids(g.pool_primer_count[pool]);
        for (std::uint32_t i = 0; i < ids.size(); ++i) ids[i] = g.pool_first_primer[pool] + i;
        a.primers.push_back(std::move(ids));
    }
    return a;
}

SlackSets compute_slack_sets(const ActiveSet& active, const HybGraph& g) {
    constexpr int kMultiplePools = -2;
    std::vector<int> deg(g.tag_count, 0);
    std::vector<int> owner(g.tag_count, -1);
    for (std::size_t i = 0; i < active.pools.size(); ++i) {
        const int pool = static_cast<int>(active.pools[i]);
        for (std::uint32_t p : active.primers[i]) {
            for (std::uint32_t t : g.tags_of_primer[p]) {
                ++deg[t];
                if (owner[t] == -1) owner[t] = pool;
                else if (owner[t] != pool) owner[t] = kMultiplePools;
            }
        }
    }
    SlackSets s;
    std::vector<char> in_x(g.pool_count(), 0);
    for (std::uint32_t t = 0; t < g.tag_count; ++t) {
        if (deg[t] == 0) s.free_tags.push_back(t);
        else if (owner[t] >= 0) in_x[static_cast<std::uint32_t>(owner[t])] = 1;
    }
    for (std::uint32_t pool = 0; pool < g.pool_count(); ++pool)
        if (in_x[pool]) s.pools_with_private_tag.push_back(pool);
    return s;
}

bool assignable_condition_holds(const ActiveSet& active, const HybGraph& g) {
    SlackSets s = compute_slack_sets(active, g);
    return s.pools_with_private_tag.size() + s.free_tags.size() >= active.pool_count();
}

std::vector<Assignment> construct_assignment(const ActiveSet& active, const HybGraph& g) {
    constexpr int kMultiplePools = -2;
    std::vector<int> deg(g.tag_count, 0);
    std::vector<int> owner(g.tag_count, -1);
    for (std::size_t i = 0; i < active.pools.size(); ++i) {
        const int pool = static_cast<int>(active.pools[i]);
        for (std::uint32_t p : active.primers[i]) {
            for (std::uint32_t t : g.tags_of_primer[p]) {
                ++deg[t];
                if (owner[t] == -1) owner[t] = pool;
                else if (owner[t] != pool) owner[t] = kMultiplePools;
            }
        }
    }

    std::size_t free_count = 0;
    for (std::uint32_t t = 0; t < g.tag_count; ++t)
        if (deg[t] == 0) ++free_count;

    std::vector<Assignment> out;
    std::vector<std::size_t> without_witness;
    std::size_t private_pools = 0;
    for (std::size_t i = 0; i < active.pools.size(); ++i) {
        const int pool = static_cast<int>(active.pools[i]);
        bool found = false;
        for (std::uint32_t p : active.primers[i]) {
            for (std::uint32_t t : g.tags_of_primer[p]) {
                if (owner[t] == pool) {
                    out.push_back({active.pools[i], p, t});
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        if (found) ++private_pools;
        else without_witness.push_back(i);
    }
    if (private_pools + free_count < active.pool_count())
        throw std::runtime_error("condition not satisfied: set may not be assignable");

    std::uint32_t next_free = 0;
    for (std::size_t i : without_witness) {
        while (deg[next_free] != 0) ++next_free;
        out.push_back({active.pools[i], active.primers[i].front(), next_free});
        ++next_free;
    }
    std::sort(out.begin(), out.end(),
              [](const Assignment& a, const Assignment& b) { return a.pool < b.pool; });
    return out;
}

bool validate_assignment(const std::vector<Assignment>& selection, const HybGraph& g) {
    std::unordered_map<std::uint32_t, std::uint32_t> assignee; // tag -> primer
    for (const Assignment& a : selection) {
        if (!assignee.emplace(a.tag, a.primer).second) return false; // tag reused
    }
    for (const Assignment& a : selection) {
        for (std::uint32_t t : g.tags_of_primer[a.primer]) {
            auto it = assignee.find(t);
            if (it != assignee.end() && it->second != a.primer) return false;
        }
    }
    return true;
}

} // namespace tagmux
