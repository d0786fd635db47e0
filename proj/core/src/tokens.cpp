#include "tagmux/tokens.hpp"

#include <algorithm>
#include <stdexcept>

namespace tagmux {

namespace {

void require_c(int c, int min_c) {
    if (c < min_c)
        throw std::invalid_argument("c must be at least " + std::to_string(min_c));
}

bool is_strong(Base b) { return weight(b) == 2; }

CToken make_token(DnaSeq seq) {
    CToken t;
    t.weight = seq.weight();
    t.tail_weight = seq.empty() ? 0 : weight(seq.at(seq.length() - 1));
    t.seq = std::move(seq);
    return t;
}

// Emits every string of the given weight whose first base is drawn from
// `firsts`, in lexicographic A<C<G<T order.
void emit_strings_of_weight(int target, const std::vector<Base>& firsts,
                            std::vector<CToken>& out) {
    std::vector<Base> stack;
    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            out.push_back(make_token(DnaSeq::from_bases(stack)));
            return;
        }
        const bool at_root = stack.empty();
        for (int bi = 0; bi < kBaseCount; ++bi) {
            Base b = static_cast<Base>(bi);
            if (at_root && std::find(firsts.begin(), firsts.end(), b) == firsts.end())
                continue;
            if (weight(b) > remaining) continue;
            stack.push_back(b);
            self(self, remaining - weight(b));
            stack.pop_back();
        }
    };
    rec(rec, target);
}

} // namespace

bool is_token(const DnaSeq& s, int c) {
    require_c(c, 2);
    if (s.empty() || s.weight() < c) return false;
    // Suffix weights are nested, so only the longest proper suffix matters.
    return s.weight() - weight(s.at(0)) < c;
}

std::vector<TokenOccurrence> extract_tokens(const DnaSeq& s, int c) {
    require_c(c, 2);
    std::vector<TokenOccurrence> out;
    const int n = s.length();
    for (int j = 0; j < n; ++j) {
        int w = 0;
        for (int i = j; i >= 0; --i) {
            w += weight(s.at(i));
            if (w >= c) {
                TokenOccurrence occ;
                occ.end_pos = j + 1;
                occ.token = make_token(s.substr(i, j - i + 1));
                out.push_back(std::move(occ));
                break;
            }
        }
    }
    return out;
}

std::vector<CToken> enumerate_tokens(int c) {
    require_c(c, 2);
    if (c > 12) throw std::invalid_argument("token universe too large (c > 12)");
    std::vector<CToken> out;
    emit_strings_of_weight(c, {Base::A, Base::C, Base::G, Base::T}, out);
    emit_strings_of_weight(c + 1, {Base::C, Base::G}, out);
    return out;
}

const char* token_class_label(TokenClass cls) {
    switch (cls) {
    case TokenClass::WeakMidStrong: return "W<c-3>S";
    case TokenClass::StrongMidStrong: return "S<c-4>S";
    case TokenClass::HeavyStrongEnd: return "S<c-3>S";
    case TokenClass::WeakMidWeak: return "W<c-2>W";
    case TokenClass::StrongMidWeak: return "S<c-3>W";
    case TokenClass::HeavyWeakWeak: return "S<c-3>WW";
    case TokenClass::HeavyStrongWeak: return "S<c-4>SW";
    }
    return "?";
}

TokenClass classify_token(const DnaSeq& t, int c) {
    require_c(c, 4);
    if (!is_token(t, c)) throw std::invalid_argument("not a c-token: " + t.str());
    const bool first_strong = is_strong(t.at(0));
    const bool last_strong = is_strong(t.at(t.length() - 1));
    if (t.weight() == c) {
        if (!first_strong && last_strong) return TokenClass::WeakMidStrong;
        if (first_strong && last_strong) return TokenClass::StrongMidStrong;
        if (!first_strong && !last_strong) return TokenClass::WeakMidWeak;
        return TokenClass::StrongMidWeak;
    }
    // weight c+1: starts strong; c >= 4 guarantees length >= 3
    if (last_strong) return TokenClass::HeavyStrongEnd;
    return is_strong(t.at(t.length() - 2)) ? TokenClass::HeavyStrongWeak
                                           : TokenClass::HeavyWeakWeak;
}

TokenClass complement_suffix_class(TokenClass cls) {
    switch (cls) {
    case TokenClass::WeakMidStrong: return TokenClass::StrongMidWeak;
    case TokenClass::StrongMidStrong: return TokenClass::StrongMidStrong;
    case TokenClass::HeavyStrongEnd: return TokenClass::HeavyStrongEnd;
    case TokenClass::WeakMidWeak: return TokenClass::WeakMidWeak;
    case TokenClass::StrongMidWeak: return TokenClass::WeakMidStrong;
    case TokenClass::HeavyWeakWeak: return TokenClass::WeakMidStrong;
    case TokenClass::HeavyStrongWeak: return TokenClass::StrongMidStrong;
    }
    throw std::logic_error("unreachable token class");
}

bool complement_is_token(TokenClass cls) {
    return cls != TokenClass::HeavyWeakWeak && cls != TokenClass::HeavyStrongWeak;
}

TokenSetBounds feasible_token_bounds(int c) {
    require_c(c, 4);
    const auto G = [](int n) { return num_strings_of_weight(n); };
    TokenSetBounds b;
    if (c % 2 == 1) {
        b.max_tokens = 3 * G(c - 2) + 6 * G(c - 3) + G((c - 3) / 2);
        b.max_tail_weight = 2 * G(c - 1) + 4 * G(c - 3) + 2 * G((c - 3) / 2);
    } else {
        b.max_tokens = 3 * G(c - 2) + 6 * G(c - 3) + G(c / 2) / 2;
        b.max_tail_weight =
            2 * G(c - 1) + 4 * G(c - 3) + G((c - 2) / 2) + 2 * G((c - 4) / 2);
    }
    return b;
}

BoundReport tag_set_bound(int c, std::optional<int> length, std::optional<int> min_weight) {
    require_c(c, 4);
    if (!length && !min_weight)
        throw std::invalid_argument("need a tag length or a minimum tag weight");
    if (length && *length < c)
        throw std::invalid_argument("tag length must be at least c");
    if (min_weight && *min_weight < c)
        throw std::invalid_argument("minimum tag weight must be at least c");
    if (length && min_weight &&
        !(*length <= *min_weight && *min_weight <= 2 * *length))
        throw std::invalid_argument("need length <= min weight <= 2*length");

    TokenSetBounds tb = feasible_token_bounds(c);
    BoundReport r;
    r.c = c;
    r.token_bound = tb.max_tokens;
    r.tail_weight_bound = tb.max_tail_weight;
    r.length = length;
    r.min_weight = min_weight;
    if (length) r.tags_by_length = tb.max_tokens / (*length - c + 1);
    if (min_weight) r.tags_by_weight = tb.max_tail_weight / (*min_weight - c + 1);
    if (r.tags_by_length && r.tags_by_weight)
        r.tag_bound = std::min(*r.tags_by_length, *r.tags_by_weight);
    else
        r.tag_bound = r.tags_by_length ? *r.tags_by_length : *r.tags_by_weight;
    return r;
}

TokenKey key_of(const DnaSeq& s) {
    TokenKey k = kEmptyKey;
    for (Base b : s.bases()) k = key_append(k, b);
    return k;
}

TokenKey reverse_complement_key(TokenKey k) {
    TokenKey r = kEmptyKey;
    while (k > 1) {
        r = (r << 2) | (3 - (k & 3));
        k >>= 2;
    }
    return r;
}

int key_length(TokenKey k) {
    int n = 0;
    while (k > 1) {
        ++n;
        k >>= 2;
    }
    return n;
}

int key_weight(TokenKey k) {
    int w = 0;
    while (k > 1) {
        int code = static_cast<int>(k & 3);
        w += (code == 1 || code == 2) ? 2 : 1;
        k >>= 2;
    }
    return w;
}

std::string key_to_string(TokenKey k) {
    std::string out;
    while (k > 1) {
        out.push_back(to_char(static_cast<Base>(k & 3)));
        k >>= 2;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

DnaSeq key_to_seq(TokenKey k) { return DnaSeq(key_to_string(k)); }

AnchorPair anchors_at(const std::vector<Base>& codes, int end, int c) {
    AnchorPair out;
    int w = 0;
    int start = -1;
    for (int i = end; i >= 0; --i) {
        w += weight(codes[static_cast<std::size_t>(i)]);
        if (w >= c) {
            start = i;
            break;
        }
    }
    if (start < 0) return out;
    TokenKey k = kEmptyKey;
    for (int i = start; i <= end; ++i) k = key_append(k, codes[static_cast<std::size_t>(i)]);
    out.token = k;
    if (w == c && start > 0) {
        Base left = codes[static_cast<std::size_t>(start - 1)];
        if (weight(left) == 1) {
            // One more base to the left lifts the suffix weight to exactly c+1.
            TokenKey k2 = kEmptyKey;
            for (int i = start - 1; i <= end; ++i)
                k2 = key_append(k2, codes[static_cast<std::size_t>(i)]);
            out.longer = k2;
        }
    }
    return out;
}

} // namespace tagmux
