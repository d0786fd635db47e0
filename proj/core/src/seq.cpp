#include "tagmux/seq.hpp"

#include <algorithm>
#include <stdexcept>

namespace tagmux {

Base base_from_char(char c) {
    switch (c) {
    case 'A': return Base::A;
    case 'C': return Base::C;
    case 'G': return Base::G;
    case 'T': return Base::T;
    default:
        throw std::invalid_argument(std::string("invalid DNA character '") + c +
                                    "' (expected uppercase A, C, G, or T)");
    }
}

DnaSeq::DnaSeq(std::string_view text) {
    bases_.reserve(text.size());
    for (char c : text) {
        Base b = base_from_char(c);
        bases_.push_back(b);
        weight_ += tagmux::weight(b);
    }
}

DnaSeq DnaSeq::from_bases(const std::vector<Base>& bases) {
    DnaSeq s;
    s.bases_ = bases;
    for (Base b : bases) s.weight_ += tagmux::weight(b);
    return s;
}

std::string DnaSeq::str() const {
    std::string out;
    out.reserve(bases_.size());
    for (Base b : bases_) out.push_back(to_char(b));
    return out;
}

DnaSeq DnaSeq::reverse_complement() const {
    DnaSeq out;
    out.bases_.reserve(bases_.size());
    for (auto it = bases_.rbegin(); it != bases_.rend(); ++it)
        out.bases_.push_back(complement(*it));
    out.weight_ = weight_;
    return out;
}

DnaSeq DnaSeq::substr(int pos, int len) const {
    DnaSeq out;
    out.bases_.assign(bases_.begin() + pos, bases_.begin() + pos + len);
    for (Base b : out.bases_) out.weight_ += tagmux::weight(b);
    return out;
}

int weight(const DnaSeq& s) { return s.weight(); }

DnaSeq reverse_complement(const DnaSeq& s) { return s.reverse_complement(); }

std::string reverse_complement(std::string_view s) {
    return DnaSeq(s).reverse_complement().str();
}

BigInt num_strings_of_weight(int n) {
    if (n < 0) throw std::invalid_argument("weight must be non-negative");
    if (n == 0) return 1;
    BigInt prev = 1; // f(0)
    BigInt cur = 2;  // f(1)
    for (int i = 2; i <= n; ++i) {
        BigInt next = 2 * (cur + prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

BigInt num_self_complementary_of_weight(int n) {
    if (n < 0) throw std::invalid_argument("weight must be non-negative");
    if (n % 2 != 0) return 0;
    return num_strings_of_weight(n / 2);
}

} // namespace tagmux
