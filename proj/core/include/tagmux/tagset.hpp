#ifndef TAGMUX_TAGSET_HPP
#define TAGMUX_TAGSET_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "tagmux/seq.hpp"
#include "tagmux/tokens.hpp"

namespace tagmux {

// Parameters of a feasible tag set. At least one of `length` and
// `min_weight` must be set; with both, length <= min_weight <= max_weight
// <= 2*length. `c` is the duplicate/complement granularity: no string of
// weight >= c may appear twice (C2), and with enforce_c3 no such string may
// co-occur with its reverse complement unless they coincide (C3).
struct TagSetConfig {
    int c = 8;
    std::optional<int> length;
    std::optional<int> min_weight;
    std::optional<int> max_weight;
    bool enforce_c3 = true;
    std::optional<std::size_t> max_tags;
    std::uint64_t node_budget = kDefaultNodeBudget;

    static constexpr std::uint64_t kDefaultNodeBudget = 400'000'000;

    void validate() const; // throws std::invalid_argument
};

// Heavy substrings (weight c or c+1) committed by accepted tags. Tokens
// carry the duplicate rule; the weight-(c+1) non-token substrings matter
// too, because a complement clash can hide in an overlap where no token
// ever repeats.
class TokenRegistry {
public:
    void insert(TokenKey k) { used_.insert(k); }
    bool contains(TokenKey k) const { return used_.count(k) != 0; }
    bool contains(const DnaSeq& s) const { return contains(key_of(s)); }
    // Commits every weight-{c,c+1} substring of an accepted tag.
    void commit_tag(const DnaSeq& tag, int c);
    std::size_t size() const { return used_.size(); }

private:
    std::unordered_set<TokenKey> used_;
};

enum class ExtendStatus { Accepted, DuplicateToken, ComplementConflict };

struct ExtendOutcome {
    ExtendStatus status = ExtendStatus::Accepted;
    std::string offending; // the suffix that triggered a rejection
    bool accepted() const { return status == ExtendStatus::Accepted; }
};

// Checks whether appending `letter` to a partial tag keeps the substring
// constraints: the at most two suffixes of weight c and c+1 ending at the
// new position must not repeat a token already used in the registry or in
// the prefix itself, nor (under C3) be the reverse complement of any heavy
// substring seen there. Commits nothing.
ExtendOutcome try_extend(const DnaSeq& prefix, Base letter,
                         const TokenRegistry& registry, const TagSetConfig& config);

struct GenerationResult {
    std::vector<DnaSeq> tags;
    std::uint64_t nodes_explored = 0;
    bool budget_exhausted = false;
};

// Depth-first greedy construction: letters are tried in the fixed order
// A, C, T, G; a letter is rejected when it completes a used token or (under
// C3) the complement of one; after a tag is accepted the search resumes by
// advancing the letter that ends the tag's first token.
GenerationResult generate_tags(const TagSetConfig& config);

enum class Constraint { C1, C2, C3 };

struct Violation {
    Constraint constraint = Constraint::C1;
    std::string offending;        // tag or substring at fault
    std::vector<int> tag_indices; // 0-based indices into the checked list
    std::vector<int> positions;   // 1-based end positions where applicable
};

struct FeasibilityReport {
    bool ok = true;
    std::vector<Violation> violations;
    bool violates(Constraint c) const;
};

// Feasibility check at token granularity: C1 per tag, C2 as "no token
// string occurs twice", C3 as "no two occurring weight-{c,c+1} substrings
// are distinct reverse complements of each other". Agrees with the
// exhaustive verifier on the overall verdict; see tests for the exact
// correspondence of the per-constraint flags.
FeasibilityReport verify_tag_set(const std::vector<DnaSeq>& tags, const TagSetConfig& config);

// Literal check: enumerates every substring of weight >= c. Quadratic in
// tag length; meant for small inputs and as the testing oracle.
FeasibilityReport verify_tag_set_exhaustive(const std::vector<DnaSeq>& tags,
                                            const TagSetConfig& config);

} // namespace tagmux

#endif // TAGMUX_TAGSET_HPP
