#include "tagmux/multiplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace tagmux {

namespace {

// Potentials are sums of dyadic terms 2^-k (k clamped at 64), kept exact in
// 64.64 fixed point so that incremental maintenance matches recomputation
// bit for bit and argmax ties depend only on the documented order rule.
using PotFixed = unsigned __int128;

PotFixed pot_term(int degree) {
    return degree > 64 ? PotFixed(0) : PotFixed(1) << (64 - degree);
}

double pot_to_double(PotFixed v) { return std::ldexp(static_cast<double>(v), -64); }

std::uint64_t pair_key(std::uint32_t tag, std::uint32_t pool) {
    return (static_cast<std::uint64_t>(tag) << 32) | pool;
}

constexpr int kNoOwner = -1;

// Incrementally maintained state of one scheduling round.
struct RoundState {
    const HybGraph& g;
    std::vector<char> active;                 // per primer
    std::vector<std::uint32_t> pool_active;   // per pool: surviving primer count
    std::vector<int> deg;                     // per tag: surviving primer count
    std::vector<int> pools_on_tag;            // per tag: # pools with survivors
    std::vector<int> owner;                   // per tag: unique pool or kNoOwner
    std::vector<int> owned_count;             // per pool: # tags owned
    std::vector<PotFixed> pot;                // per primer
    std::unordered_map<std::uint64_t, int> pair_count; // (tag,pool) -> survivors
    std::size_t x_size = 0;
    std::size_t y_size = 0;
    std::size_t active_pools = 0;
    std::size_t multi_pools = 0; // active pools with > 1 survivor

    explicit RoundState(const HybGraph& graph) : g(graph) {}

    void reset(const std::vector<std::vector<std::uint32_t>>& universe,
               const std::vector<char>& pool_in_schedule) {
        active.assign(g.primer_count(), 0);
        pool_active.assign(g.pool_count(), 0);
        deg.assign(g.tag_count, 0);
        pools_on_tag.assign(g.tag_count, 0);
        owner.assign(g.tag_count, kNoOwner);
        owned_count.assign(g.pool_count(), 0);
        pot.assign(g.primer_count(), 0);
        pair_count.clear();
        x_size = y_size = active_pools = multi_pools = 0;

        for (std::uint32_t q = 0; q < g.pool_count(); ++q) {
            if (!pool_in_schedule[q]) continue;
            pool_active[q] = static_cast<std::uint32_t>(universe[q].size());
            ++active_pools;
            if (pool_active[q] > 1) ++multi_pools;
            for (std::uint32_t p : universe[q]) active[p] = 1;
        }
        for (std::uint32_t p = 0; p < g.primer_count(); ++p) {
            if (!active[p]) continue;
            const std::uint32_t q = g.pool_of_primer[p];
            for (std::uint32_t t : g.tags_of_primer[p]) {
                ++deg[t];
                if (pair_count[pair_key(t, q)]++ == 0) ++pools_on_tag[t];
            }
        }
        for (std::uint32_t t = 0; t < g.tag_count; ++t) {
            if (deg[t] == 0) {
                ++y_size;
            } else if (pools_on_tag[t] == 1) {
                set_owner(t, static_cast<int>(first_active_pool(t)));
            }
        }
        for (std::uint32_t p = 0; p < g.primer_count(); ++p) {
            if (!active[p]) continue;
            PotFixed sum = 0;
            for (std::uint32_t t : g.tags_of_primer[p]) sum += pot_term(deg[t]);
            pot[p] = sum;
        }
    }

    std::uint32_t first_active_pool(std::uint32_t tag) const {
        for (std::uint32_t q : g.primers_of_tag[tag])
            if (active[q]) return g.pool_of_primer[q];
        throw std::logic_error("tag has no surviving primer");
    }

    void set_owner(std::uint32_t tag, int new_owner) {
        const int old = owner[tag];
        if (old == new_owner) return;
        if (old != kNoOwner && --owned_count[old] == 0) --x_size;
        if (new_owner != kNoOwner && owned_count[new_owner]++ == 0) ++x_size;
        owner[tag] = new_owner;
    }

    bool condition_holds() const { return x_size + y_size >= active_pools; }

    void delete_primer(std::uint32_t p) {
        const std::uint32_t q = g.pool_of_primer[p];
        active[p] = 0;
        if (pool_active[q]-- == 2) --multi_pools;
        for (std::uint32_t t : g.tags_of_primer[p]) {
            auto it = pair_count.find(pair_key(t, q));
            if (--(it->second) == 0) {
                pair_count.erase(it);
                --pools_on_tag[t];
            }
            const int d = --deg[t];
            const PotFixed delta = pot_term(d) - pot_term(d + 1);
            if (delta != 0)
                for (std::uint32_t r : g.primers_of_tag[t])
                    if (active[r]) pot[r] += delta;
            if (d == 0) ++y_size;
            int new_owner = kNoOwner;
            if (d > 0 && pools_on_tag[t] == 1)
                new_owner = static_cast<int>(first_active_pool(t));
            set_owner(t, new_owner);
        }
        if (pool_active[q] == 0) --active_pools;
    }

    // Maximum-potential survivor; ties go to the lowest pool, then the
    // lowest primer position. PrimerDelPlus spares single-primer pools
    // until nothing else remains.
    std::uint32_t pick_victim(Variant variant) const {
        const bool spare_singles = (variant == Variant::PrimerDelPlus) && multi_pools > 0;
        long best = -1;
        PotFixed best_pot = 0;
        for (std::uint32_t q = 0; q < g.pool_count(); ++q) {
            if (pool_active[q] == 0) continue;
            if (spare_singles && pool_active[q] == 1) continue;
            const std::uint32_t first = g.pool_first_primer[q];
            for (std::uint32_t p = first; p < first + g.pool_primer_count[q]; ++p) {
                if (!active[p]) continue;
                if (best < 0 || pot[p] > best_pot) {
                    best = static_cast<long>(p);
                    best_pot = pot[p];
                }
            }
        }
        if (best < 0) throw std::logic_error("no deletable primer");
        return static_cast<std::uint32_t>(best);
    }

    ActiveSet to_active_set(const std::vector<std::vector<std::uint32_t>>& universe) const {
        ActiveSet a;
        for (std::uint32_t q = 0; q < g.pool_count(); ++q) {
            if (pool_active[q] == 0) continue;
            std::vector<std::uint32_t> survivors;
            for (std::uint32_t p : universe[q])
                if (active[p]) survivors.push_back(p);
            a.pools.push_back(q);
            a.primers.push_back(std::move(survivors));
        }
        return a;
    }

    // Recomputes everything from the activity flags and compares; throws on
    // any divergence of the incremental bookkeeping.
    void audit() const {
        std::vector<int> deg2(g.tag_count, 0);
        std::vector<int> pools2(g.tag_count, 0);
        std::unordered_map<std::uint64_t, int> pairs2;
        for (std::uint32_t p = 0; p < g.primer_count(); ++p) {
            if (!active[p]) continue;
            for (std::uint32_t t : g.tags_of_primer[p]) {
                ++deg2[t];
                if (pairs2[pair_key(t, g.pool_of_primer[p])]++ == 0) ++pools2[t];
            }
        }
        std::size_t x2 = 0, y2 = 0;
        std::vector<int> owned2(g.pool_count(), 0);
        std::vector<int> owner2(g.tag_count, kNoOwner);
        for (std::uint32_t t = 0; t < g.tag_count; ++t) {
            if (deg2[t] == 0) ++y2;
            else if (pools2[t] == 1) {
                owner2[t] = static_cast<int>(first_active_pool(t));
                if (owned2[owner2[t]]++ == 0) ++x2;
            }
        }
        if (deg2 != deg || pools2 != pools_on_tag || owner2 != owner ||
            x2 != x_size || y2 != y_size || pairs2 != pair_count)
            throw std::logic_error("incremental slack state diverged from recomputation");
        for (std::uint32_t p = 0; p < g.primer_count(); ++p) {
            if (!active[p]) continue;
            PotFixed sum = 0;
            for (std::uint32_t t : g.tags_of_primer[p]) sum += pot_term(deg2[t]);
            if (sum != pot[p])
                throw std::logic_error("incremental potential diverged from recomputation");
        }
    }
};

int active_tag_degree(const std::vector<char>& flags, const HybGraph& g, std::uint32_t tag) {
    int d = 0;
    for (std::uint32_t p : g.primers_of_tag[tag])
        if (flags[p]) ++d;
    return d;
}

} // namespace

const char* variant_name(Variant v) {
    switch (v) {
    case Variant::PrimerDel: return "primer-del";
    case Variant::PrimerDelPlus: return "primer-del-plus";
    case Variant::MinPot: return "min-pot";
    case Variant::MinDeg: return "min-deg";
    }
    return "?";
}

Variant variant_from_name(const std::string& name) {
    if (name == "primer-del") return Variant::PrimerDel;
    if (name == "primer-del-plus") return Variant::PrimerDelPlus;
    if (name == "min-pot") return Variant::MinPot;
    if (name == "min-deg") return Variant::MinDeg;
    throw std::invalid_argument("unknown algorithm: " + name);
}

double tag_potential(const ActiveSet& active, const HybGraph& g, std::uint32_t tag) {
    const std::vector<char> flags = active.primer_flags(g);
    const int d = active_tag_degree(flags, g, tag);
    return d > 64 ? 0.0 : std::ldexp(1.0, -d);
}

double primer_potential(const ActiveSet& active, const HybGraph& g, std::uint32_t primer) {
    const std::vector<char> flags = active.primer_flags(g);
    double sum = 0.0;
    for (std::uint32_t t : g.tags_of_primer[primer]) {
        const int d = active_tag_degree(flags, g, t);
        sum += d > 64 ? 0.0 : std::ldexp(1.0, -d);
    }
    return sum;
}

std::uint32_t select_pool_representative(const HybGraph& g, std::uint32_t pool, Metric metric) {
    const std::uint32_t first = g.pool_first_primer[pool];
    const std::uint32_t count = g.pool_primer_count[pool];
    std::uint32_t best = first;
    if (metric == Metric::Degree) {
        for (std::uint32_t p = first + 1; p < first + count; ++p)
            if (g.tags_of_primer[p].size() < g.tags_of_primer[best].size()) best = p;
        return best;
    }
    auto full_pot = [&](std::uint32_t p) {
        PotFixed sum = 0;
        for (std::uint32_t t : g.tags_of_primer[p])
            sum += pot_term(static_cast<int>(g.primers_of_tag[t].size()));
        return sum;
    };
    PotFixed best_pot = full_pot(first);
    for (std::uint32_t p = first + 1; p < first + count; ++p) {
        const PotFixed v = full_pot(p);
        if (v < best_pot) {
            best = p;
            best_pot = v;
        }
    }
    return best;
}

double average_utilization(const std::vector<int>& per_array_assigned,
                           std::uint32_t tag_count) {
    if (per_array_assigned.empty() || tag_count == 0) return 0.0;
    const std::size_t counted =
        per_array_assigned.size() >= 2 ? per_array_assigned.size() - 1 : 1;
    double sum = 0.0;
    for (std::size_t i = 0; i < counted; ++i)
        sum += 100.0 * per_array_assigned[i] / static_cast<double>(tag_count);
    return sum / static_cast<double>(counted);
}

ScheduleResult schedule(const HybGraph& g, Variant variant, const ScheduleOptions& options) {
    if (g.pool_count() == 0) throw std::invalid_argument("no pools");
    if (g.tag_count == 0) throw std::invalid_argument("no tags");

    // Min-Pot / Min-Deg shrink every pool to one representative up front,
    // judged against the full initial primer universe.
    std::vector<std::vector<std::uint32_t>> universe(g.pool_count());
    for (std::uint32_t q = 0; q < g.pool_count(); ++q) {
        if (variant == Variant::MinPot || variant == Variant::MinDeg) {
            const Metric m = variant == Variant::MinPot ? Metric::Potential : Metric::Degree;
            universe[q] = {select_pool_representative(g, q, m)};
        } else {
            universe[q].resize(g.pool_primer_count[q]);
            for (std::uint32_t i = 0; i < g.pool_primer_count[q]; ++i)
                universe[q][i] = g.pool_first_primer[q] + i;
        }
    }

    ScheduleResult result;
    std::vector<char> remaining(g.pool_count(), 1);
    std::size_t pools_left = g.pool_count();
    RoundState state(g);
    int array = 0;
    while (pools_left > 0) {
        ++array;
        state.reset(universe, remaining);
        while (!state.condition_holds()) {
            state.delete_primer(state.pick_victim(variant));
            if (options.audit_incremental) state.audit();
        }
        const ActiveSet act = state.to_active_set(universe);
        const std::vector<Assignment> assigned = construct_assignment(act, g);
        if (assigned.empty())
            throw std::logic_error("scheduling round assigned no pools");
        if (!validate_assignment(assigned, g))
            throw std::logic_error("scheduling round produced an invalid assignment");
        for (const Assignment& a : assigned) {
            remaining[a.pool] = 0;
            --pools_left;
            result.plan.entries.push_back(
                {array, a.pool, a.primer - g.pool_first_primer[a.pool], a.tag});
        }
        result.per_array_assigned.push_back(static_cast<int>(assigned.size()));
    }
    result.arrays_used = array;
    result.avg_utilization = average_utilization(result.per_array_assigned, g.tag_count);
    return result;
}

ScheduleResult schedule(const std::vector<Pool>& pools, const std::vector<DnaSeq>& tags,
                        int c, Variant variant, const ScheduleOptions& options) {
    return schedule(build_hybridization_graph(pools, tags, c), variant, options);
}

} // namespace tagmux
