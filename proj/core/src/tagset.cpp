#include "tagmux/tagset.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace tagmux {

namespace {

// Greedy letter order: A first, then C, T, G.
constexpr Base kSearchOrder[4] = {Base::A, Base::C, Base::T, Base::G};

struct CheckResult {
    ExtendStatus status = ExtendStatus::Accepted;
    TokenKey offending = 0;
    TokenKey completed = 0;        // token ending at the new position, 0 if none
    TokenKey completed_longer = 0; // weight-(c+1) anchor over the token, 0 if none
};

// Substring-rule check shared by try_extend and the generator. `codes`
// already contains the candidate letter at index `end`. `seen` answers
// whether a heavy substring (weight c or c+1) has been committed, by the
// registry or earlier in the current prefix. Tracking the weight-(c+1)
// non-token substrings matters for C3: a heavy substring and its reverse
// complement can overlap inside one tag without any token repeating.
template <typename SeenFn>
CheckResult check_extension(const std::vector<Base>& codes, int end, int c,
                            bool enforce_c3, SeenFn&& seen) {
    CheckResult r;
    AnchorPair a = anchors_at(codes, end, c);
    if (a.token == 0) return r;
    r.completed = a.token;
    r.completed_longer = a.longer;
    if (seen(a.token)) {
        r.status = ExtendStatus::DuplicateToken;
        r.offending = a.token;
        return r;
    }
    if (enforce_c3) {
        // The longer anchor starts with a weak base and cannot repeat a
        // token, but either suffix may complete the complement of a
        // committed substring.
        for (TokenKey y : {a.token, a.longer}) {
            if (y == 0) continue;
            TokenKey rc = reverse_complement_key(y);
            if (rc != y && seen(rc)) {
                r.status = ExtendStatus::ComplementConflict;
                r.offending = y;
                return r;
            }
        }
    }
    return r;
}

std::vector<TokenKey> anchors_of_prefix(const std::vector<Base>& codes, int count, int c) {
    std::vector<TokenKey> out;
    for (int j = 0; j < count; ++j) {
        AnchorPair a = anchors_at(codes, j, c);
        if (a.token) out.push_back(a.token);
        if (a.longer) out.push_back(a.longer);
    }
    return out;
}

void require_verify_c(int c) {
    if (c < 2) throw std::invalid_argument("c must be at least 2");
}

struct Occurrence {
    int tag;
    int pos; // 1-based end position
};

void append_occurrences(Violation& v, const std::vector<Occurrence>& occs) {
    for (const Occurrence& o : occs) {
        v.tag_indices.push_back(o.tag);
        v.positions.push_back(o.pos);
    }
}

void finalize_report(FeasibilityReport& report, std::vector<Violation> violations) {
    std::sort(violations.begin(), violations.end(),
              [](const Violation& a, const Violation& b) {
                  if (a.constraint != b.constraint) return a.constraint < b.constraint;
                  if (a.offending != b.offending) return a.offending < b.offending;
                  return a.tag_indices < b.tag_indices;
              });
    report.violations = std::move(violations);
    report.ok = report.violations.empty();
}

void check_c1(const std::vector<DnaSeq>& tags, const TagSetConfig& config,
              std::vector<Violation>& out) {
    for (std::size_t i = 0; i < tags.size(); ++i) {
        const DnaSeq& t = tags[i];
        bool bad = (config.length && t.length() != *config.length) ||
                   (config.min_weight && t.weight() < *config.min_weight) ||
                   (config.max_weight && t.weight() > *config.max_weight);
        if (bad) out.push_back({Constraint::C1, t.str(), {static_cast<int>(i)}, {}});
    }
}

} // namespace

void TagSetConfig::validate() const {
    if (c < 4) throw std::invalid_argument("c must be at least 4");
    if (!length && !min_weight)
        throw std::invalid_argument("need a tag length or a minimum tag weight");
    if (length && *length < 1) throw std::invalid_argument("tag length must be positive");
    if (min_weight && *min_weight < 1)
        throw std::invalid_argument("minimum tag weight must be positive");
    if (max_weight && !min_weight)
        throw std::invalid_argument("max weight requires a min weight");
    if (min_weight && max_weight && *max_weight < *min_weight)
        throw std::invalid_argument("max weight below min weight");
    if (length && min_weight) {
        if (*length > *min_weight)
            throw std::invalid_argument("need length <= min weight");
        if (*min_weight > 2 * *length || (max_weight && *max_weight > 2 * *length))
            throw std::invalid_argument("weight range exceeds twice the length");
    }
    const int floor_weight = min_weight ? *min_weight : *length;
    if (c > floor_weight)
        throw std::invalid_argument("c exceeds the guaranteed tag weight; "
                                    "tags would contain no token");
}

void TokenRegistry::commit_tag(const DnaSeq& tag, int c) {
    require_verify_c(c);
    const auto& codes = tag.bases();
    for (int j = 0; j < tag.length(); ++j) {
        AnchorPair a = anchors_at(codes, j, c);
        if (a.token) used_.insert(a.token);
        if (a.longer) used_.insert(a.longer);
    }
}

ExtendOutcome try_extend(const DnaSeq& prefix, Base letter,
                         const TokenRegistry& registry, const TagSetConfig& config) {
    require_verify_c(config.c);
    std::vector<Base> codes = prefix.bases();
    const int end = static_cast<int>(codes.size());
    const std::vector<TokenKey> in_prefix = anchors_of_prefix(codes, end, config.c);
    codes.push_back(letter);
    auto seen = [&](TokenKey k) {
        return registry.contains(k) ||
               std::find(in_prefix.begin(), in_prefix.end(), k) != in_prefix.end();
    };
    CheckResult r = check_extension(codes, end, config.c, config.enforce_c3, seen);
    ExtendOutcome out;
    out.status = r.status;
    if (r.offending) out.offending = key_to_string(r.offending);
    return out;
}

GenerationResult generate_tags(const TagSetConfig& config) {
    config.validate();
    const int c = config.c;
    const bool c3 = config.enforce_c3;
    const bool has_len = config.length.has_value();
    const bool has_wt = config.min_weight.has_value();
    const int len = has_len ? *config.length : 0;
    const int min_wt = has_wt ? *config.min_weight : 0;
    const int max_wt = config.max_weight ? *config.max_weight
                                         : std::numeric_limits<int>::max();

    GenerationResult result;
    std::unordered_set<TokenKey> registry;

    std::vector<Base> prefix;
    std::vector<int> choice;      // per position: index into kSearchOrder
    std::vector<int> weights;     // cumulative weight after each position
    std::vector<TokenKey> tokens; // token completed at each position (0 if none)
    std::vector<TokenKey> longer; // weight-(c+1) anchor at each position (0 if none)

    auto seen = [&](TokenKey k) {
        if (registry.count(k)) return true;
        for (TokenKey t : tokens)
            if (t == k) return true;
        for (TokenKey t : longer)
            if (t == k) return true;
        return false;
    };
    auto pop = [&]() {
        prefix.pop_back();
        choice.pop_back();
        weights.pop_back();
        tokens.pop_back();
        longer.pop_back();
    };

    int next_letter = 0;
    while (true) {
        if (next_letter >= 4) {
            if (prefix.empty()) break; // search exhausted
            next_letter = choice.back() + 1;
            pop();
            continue;
        }
        if (result.nodes_explored >= config.node_budget) {
            result.budget_exhausted = true;
            break;
        }
        ++result.nodes_explored;

        const Base b = kSearchOrder[next_letter];
        const int new_w = (weights.empty() ? 0 : weights.back()) + weight(b);
        const int new_len = static_cast<int>(prefix.size()) + 1;

        bool completes = false;
        bool structurally_ok = true;
        if (has_len && has_wt) {
            const int remaining = len - new_len;
            if (new_w + 2 * remaining < min_wt || new_w + remaining > max_wt)
                structurally_ok = false; // weight window unreachable
            else
                completes = (new_len == len);
        } else if (has_len) {
            completes = (new_len == len);
        } else {
            if (new_w > max_wt)
                structurally_ok = false;
            else
                completes = (new_w >= min_wt);
        }
        if (!structurally_ok) {
            ++next_letter;
            continue;
        }

        prefix.push_back(b);
        CheckResult chk = check_extension(prefix, new_len - 1, c, c3, seen);
        if (chk.status != ExtendStatus::Accepted) {
            prefix.pop_back();
            ++next_letter;
            continue;
        }
        choice.push_back(next_letter);
        weights.push_back(new_w);
        tokens.push_back(chk.completed);
        longer.push_back(chk.completed_longer);

        if (completes) {
            result.tags.push_back(DnaSeq::from_bases(prefix));
            for (TokenKey t : tokens)
                if (t) registry.insert(t);
            for (TokenKey t : longer)
                if (t) registry.insert(t);
            if (config.max_tags && result.tags.size() >= *config.max_tags) break;
            // Resume by advancing the letter that ends the first token; the
            // kept stub holds no token occurrences.
            std::size_t first = 0;
            while (first < tokens.size() && tokens[first] == 0) ++first;
            while (prefix.size() > first + 1) pop();
            next_letter = choice.back() + 1;
            pop();
            continue;
        }
        next_letter = 0;
    }
    return result;
}

bool FeasibilityReport::violates(Constraint c) const {
    return std::any_of(violations.begin(), violations.end(),
                       [c](const Violation& v) { return v.constraint == c; });
}

FeasibilityReport verify_tag_set(const std::vector<DnaSeq>& tags, const TagSetConfig& config) {
    require_verify_c(config.c);
    std::vector<Violation> violations;
    check_c1(tags, config, violations);

    std::unordered_map<TokenKey, std::vector<Occurrence>> token_occ;
    std::unordered_map<TokenKey, std::vector<Occurrence>> anchor_occ;
    for (std::size_t i = 0; i < tags.size(); ++i) {
        const auto& codes = tags[i].bases();
        for (int j = 0; j < tags[i].length(); ++j) {
            AnchorPair a = anchors_at(codes, j, config.c);
            if (a.token == 0) continue;
            const Occurrence occ{static_cast<int>(i), j + 1};
            token_occ[a.token].push_back(occ);
            anchor_occ[a.token].push_back(occ);
            if (a.longer) anchor_occ[a.longer].push_back(occ);
        }
    }

    for (const auto& [key, occs] : token_occ) {
        if (occs.size() < 2) continue;
        Violation v{Constraint::C2, key_to_string(key), {}, {}};
        append_occurrences(v, occs);
        violations.push_back(std::move(v));
    }

    if (config.enforce_c3) {
        for (const auto& [key, occs] : anchor_occ) {
            TokenKey rc = reverse_complement_key(key);
            if (rc <= key) continue; // self-complements exempt; pairs handled once
            auto it = anchor_occ.find(rc);
            if (it == anchor_occ.end()) continue;
            Violation v{Constraint::C3, key_to_string(key) + "/" + key_to_string(rc), {}, {}};
            append_occurrences(v, occs);
            append_occurrences(v, it->second);
            violations.push_back(std::move(v));
        }
    }

    FeasibilityReport report;
    finalize_report(report, std::move(violations));
    return report;
}

FeasibilityReport verify_tag_set_exhaustive(const std::vector<DnaSeq>& tags,
                                            const TagSetConfig& config) {
    require_verify_c(config.c);
    std::vector<Violation> violations;
    check_c1(tags, config, violations);

    std::map<std::string, std::vector<Occurrence>> occ;
    for (std::size_t i = 0; i < tags.size(); ++i) {
        const std::string text = tags[i].str();
        const int n = tags[i].length();
        for (int s = 0; s < n; ++s) {
            int w = 0;
            for (int e = s; e < n; ++e) {
                w += weight(tags[i].at(e));
                if (w >= config.c)
                    occ[text.substr(s, e - s + 1)].push_back({static_cast<int>(i), e + 1});
            }
        }
    }

    for (const auto& [str, occs] : occ) {
        if (occs.size() < 2) continue;
        Violation v{Constraint::C2, str, {}, {}};
        append_occurrences(v, occs);
        violations.push_back(std::move(v));
    }

    if (config.enforce_c3) {
        for (const auto& [str, occs] : occ) {
            const std::string rc = reverse_complement(str);
            if (rc <= str) continue;
            auto it = occ.find(rc);
            if (it == occ.end()) continue;
            Violation v{Constraint::C3, str + "/" + rc, {}, {}};
            append_occurrences(v, occs);
            append_occurrences(v, it->second);
            violations.push_back(std::move(v));
        }
    }

    FeasibilityReport report;
    finalize_report(report, std::move(violations));
    return report;
}

} // namespace tagmux
