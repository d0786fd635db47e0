#ifndef TAGMUX_SEQ_HPP
#define TAGMUX_SEQ_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tagmux {

using BigInt = boost::multiprecision::cpp_int;

// Bases are encoded A=0, C=1, G=2, T=3 so that complement(b) == 3-b.
enum class Base : std::uint8_t { A = 0, C = 1, G = 2, T = 3 };

constexpr int kBaseCount = 4;

constexpr Base complement(Base b) {
    return static_cast<Base>(3 - static_cast<int>(b));
}

// 2-4 rule weight: A/T count 1, C/G count 2.
constexpr int weight(Base b) {
    return (b == Base::C || b == Base::G) ? 2 : 1;
}

constexpr char to_char(Base b) {
    constexpr char chars[kBaseCount] = {'A', 'C', 'G', 'T'};
    return chars[static_cast<int>(b)];
}

// Throws std::invalid_argument for anything outside uppercase {A,C,G,T}.
Base base_from_char(char c);

// Immutable DNA sequence over {A,C,G,T} with cached 2-4 rule weight.
class DnaSeq {
public:
    DnaSeq() = default;
    explicit DnaSeq(std::string_view text);
    static DnaSeq from_bases(const std::vector<Base>& bases);

    int length() const { return static_cast<int>(bases_.size()); }
    bool empty() const { return bases_.empty(); }
    int weight() const { return weight_; }
    Base at(int i) const { return bases_[static_cast<std::size_t>(i)]; }
    const std::vector<Base>& bases() const { return bases_; }

    std::string str() const;
    DnaSeq reverse_complement() const;
    DnaSeq substr(int pos, int len) const;

    bool operator==(const DnaSeq& other) const { return bases_ == other.bases_; }
    bool operator!=(const DnaSeq& other) const { return bases_ != other.bases_; }
    bool operator<(const DnaSeq& other) const { return bases_ < other.bases_; }

private:
    std::vector<Base> bases_;
    int weight_ = 0;
};

int weight(const DnaSeq& s);
DnaSeq reverse_complement(const DnaSeq& s);
std::string reverse_complement(std::string_view s);

// Number of DNA strings of weight n. Satisfies f(0)=1, f(1)=2, f(2)=6,
// f(n) = 2 f(n-1) + 2 f(n-2): a string of weight n ends in a weak base
// (2 choices, rest weight n-1) or a strong base (2 choices, rest n-2).
BigInt num_strings_of_weight(int n);

// Number of self-complementary DNA strings of weight n: 0 for odd n
// (self-complementary strings have even length and weight), and equal to
// num_strings_of_weight(n/2) for even n (first-half bijection).
BigInt num_self_complementary_of_weight(int n);

} // namespace tagmux

#endif // TAGMUX_SEQ_HPP
