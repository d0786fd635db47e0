#ifndef TAGMUX_TOKENS_HPP
#define TAGMUX_TOKENS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tagmux/seq.hpp"

namespace tagmux {

// A c-token: a string of weight >= c whose proper suffixes all weigh less
// than c. Token weight is c or c+1, the heavier case only when the token
// starts with a strong base.
struct CToken {
    DnaSeq seq;
    int weight = 0;
    int tail_weight = 0; // weight of the last base
};

struct TokenOccurrence {
    int end_pos = 0; // 1-based position in the scanned sequence
    CToken token;
};

bool is_token(const DnaSeq& s, int c);

// For every position whose prefix weight reaches c, the unique minimal
// suffix of weight >= c ending there. Reports occurrences, not distinct
// token strings.
std::vector<TokenOccurrence> extract_tokens(const DnaSeq& s, int c);

// All token strings for a given c: every string of weight c plus every
// string of weight c+1 starting with C or G. Guarded to c <= 12; the
// universe grows roughly like 4 * num_strings_of_weight(c-1).
std::vector<CToken> enumerate_tokens(int c);

// The seven structural classes of c-tokens, written as
// <start base type> <middle weight> <end base type(s)>. The first five
// cover weight-c tokens and weight-(c+1) tokens ending strong; the last
// two split weight-(c+1) tokens ending weak by their next-to-last base.
enum class TokenClass {
    WeakMidStrong,    // W<c-3>S   weight c
    StrongMidStrong,  // S<c-4>S   weight c
    HeavyStrongEnd,   // S<c-3>S   weight c+1
    WeakMidWeak,      // W<c-2>W   weight c
    StrongMidWeak,    // S<c-3>W   weight c
    HeavyWeakWeak,    // S<c-3>WW  weight c+1
    HeavyStrongWeak,  // S<c-4>SW  weight c+1
};

inline constexpr int kTokenClassCount = 7;

// Generic label, e.g. "W<c-3>S".
const char* token_class_label(TokenClass cls);

// Requires c >= 4 (classes degenerate below that) and is_token(t, c).
TokenClass classify_token(const DnaSeq& t, int c);

// Class of the unique c-token suffix of the reverse complement.
TokenClass complement_suffix_class(TokenClass cls);

// Whether the reverse complement of a token in this class is itself a token.
bool complement_is_token(TokenClass cls);

// Upper bounds on how many distinct tokens, and how much total tail weight,
// can occur in a tag set that bans repeated and mutually complementary
// heavy substrings. Requires c >= 4.
struct TokenSetBounds {
    BigInt max_tokens;
    BigInt max_tail_weight;
};

TokenSetBounds feasible_token_bounds(int c);

// Tag-count ceiling derived from the token bounds: a tag of length l holds
// at least l-c+1 token occurrences, and a tag of weight >= h holds tokens
// of total tail weight at least h-c+1.
struct BoundReport {
    int c = 0;
    BigInt token_bound;
    BigInt tail_weight_bound;
    std::optional<int> length;
    std::optional<int> min_weight;
    std::optional<BigInt> tags_by_length;
    std::optional<BigInt> tags_by_weight;
    BigInt tag_bound;
};

BoundReport tag_set_bound(int c, std::optional<int> length, std::optional<int> min_weight);

// ---------------------------------------------------------------------------
// Packed-key utilities for the hot paths (greedy search, graph building).
// A key is a 1 sentinel bit followed by two bits per base, first base in the
// highest position. Fits any string up to 31 bases; tokens are far shorter.
// ---------------------------------------------------------------------------

using TokenKey = std::uint64_t;

inline constexpr TokenKey kEmptyKey = 1;

inline TokenKey key_append(TokenKey k, Base b) {
    return (k << 2) | static_cast<TokenKey>(b);
}

TokenKey key_of(const DnaSeq& s);
TokenKey reverse_complement_key(TokenKey k);
int key_length(TokenKey k);
int key_weight(TokenKey k);
std::string key_to_string(TokenKey k);
DnaSeq key_to_seq(TokenKey k);

// Suffixes of codes[0..end] ending at `end` whose weight is exactly c or
// c+1. At most two exist; the shorter one (when present) is the token at
// that position. Returns keys (0 when absent).
struct AnchorPair {
    TokenKey token = 0;   // the minimal suffix of weight >= c, if any
    TokenKey longer = 0;  // the weight-(c+1) suffix when the token weighs c
};

AnchorPair anchors_at(const std::vector<Base>& codes, int end, int c);

} // namespace tagmux

#endif // TAGMUX_TOKENS_HPP
