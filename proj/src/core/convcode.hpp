#pragma once

#include <cstdint>
#include <vector>

#include "util.hpp"

namespace swsc {

// Rate-1/2 feedforward convolutional code, generators 133/171 (octal),
// constraint length 7, zero-terminated. Soft decoding is max-log BCJR.
class ConvCode {
public:
    static constexpr int kConstraint = 7;
    static constexpr int kMemory = kConstraint - 1;
    static constexpr int kStates = 1 << kMemory;

    ConvCode(uint32_t g0 = 0133, uint32_t g1 = 0171);

    // info bits -> 2 * (info.size() + kMemory) coded bits.
    std::vector<uint8_t> encode(const std::vector<uint8_t>& info) const;

    // Mother-code LLRs (positive = bit 0 more likely), one per coded bit
    // including the tail; returns hard decisions for the info bits.
    std::vector<uint8_t> decode(const std::vector<double>& llr, int info_len) const;

    int coded_len(int info_len) const { return 2 * (info_len + kMemory); }

private:
    uint32_t g0_, g1_;
    // out_[state][bit] packs (c0, c1); next_[state][bit] is the successor.
    uint8_t out_[kStates][2];
    uint8_t next_[kStates][2];
};

// CRC-16/CCITT-FALSE (poly 0x1021, init 0xFFFF) over a bit sequence,
// MSB-first within the conceptual byte stream.
uint16_t crc16_bits(const std::vector<uint8_t>& bits);
void crc16_append(std::vector<uint8_t>& bits);
bool crc16_check(const std::vector<uint8_t>& bits_with_crc);

// Rate matching between the mother code and the transmitted length:
// repetition e[i] = c[i mod M] when target >= M, even puncturing
// (keep c[floor(i*M/target)]) otherwise.
std::vector<uint8_t> rate_match(const std::vector<uint8_t>& coded, int target);
// Accumulates received LLRs back onto mother-code positions (punctured
// positions stay 0).
std::vector<double> rate_dematch(const std::vector<double>& llr, int mother_len);

// Seeded Fisher-Yates permutation; apply scatters position i to perm[i].
std::vector<uint32_t> make_permutation(int n, uint64_t seed);
template <typename T>
std::vector<T> apply_permutation(const std::vector<T>& v,
                                 const std::vector<uint32_t>& perm) {
    std::vector<T> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[perm[i]] = v[i];
    return out;
}
template <typename T>
std::vector<T> invert_permutation(const std::vector<T>& v,
                                  const std::vector<uint32_t>& perm) {
    std::vector<T> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[perm[i]];
    return out;
}

}  // namespace swsc
