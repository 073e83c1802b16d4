#include "convcode.hpp"

#include <algorithm>
#include <cmath>

namespace swsc {

namespace {

inline int parity7(uint32_t v) {
    v ^= v >> 4;
    v ^= v >> 2;
    v ^= v >> 1;
    return v & 1;
}

}  // namespace

ConvCode::ConvCode(uint32_t g0, uint32_t g1) : g0_(g0), g1_(g1) {
    for (int s = 0; s < kStates; ++s) {
        for (int b = 0; b < 2; ++b) {
            // Register: current bit in the MSB, then the state (newest first).
            uint32_t reg = (static_cast<uint32_t>(b) << kMemory) | s;
            int c0 = parity7(reg & g0_);
            int c1 = parity7(reg & g1_);
            out_[s][b] = static_cast<uint8_t>((c0 << 1) | c1);
            next_[s][b] = static_cast<uint8_t>((b << (kMemory - 1)) | (s >> 1));
        }
    }
}

std::vector<uint8_t> ConvCode::encode(const std::vector<uint8_t>& info) const {
    std::vector<uint8_t> coded;
    coded.reserve(coded_len(static_cast<int>(info.size())));
    int s = 0;
    auto push = [&](int b) {
        uint8_t o = out_[s][b];
        coded.push_back((o >> 1) & 1);
        coded.push_back(o & 1);
        s = next_[s][b];
    };
    for (uint8_t b : info) push(b & 1);
    for (int i = 0; i < kMemory; ++i) push(0);
    return coded;
}

std::vector<uint8_t> ConvCode::decode(const std::vector<double>& llr,
                                      int info_len) const {
    const int T = info_len + kMemory;
    if (static_cast<int>(llr.size()) != 2 * T)
        throw SwscError("decoder LLR length mismatch");
    constexpr double kNegInf = -1e30;

    // Branch metrics: correlation +llr/2 for a 0 bit, -llr/2 for a 1 bit.
    auto gamma = [&](int t, uint8_t out) {
        double l0 = llr[2 * t], l1 = llr[2 * t + 1];
        double g = (out & 2) ? -0.5 * l0 : 0.5 * l0;
        g += (out & 1) ? -0.5 * l1 : 0.5 * l1;
        return g;
    };

    std::vector<double> alpha(static_cast<size_t>(T + 1) * kStates, kNegInf);
    alpha[0] = 0.0;
    for (int t = 0; t < T; ++t) {
        double* cur = &alpha[static_cast<size_t>(t) * kStates];
        double* nxt = &alpha[static_cast<size_t>(t + 1) * kStates];
        int bmax = t < info_len ? 2 : 1;  // tail forces zeros
        for (int s = 0; s < kStates; ++s) {
            if (cur[s] <= kNegInf) continue;
            for (int b = 0; b < bmax; ++b) {
                double m = cur[s] + gamma(t, out_[s][b]);
                int ns = next_[s][b];
                if (m > nxt[ns]) nxt[ns] = m;
            }
        }
        double mx = *std::max_element(nxt, nxt + kStates);
        for (int s = 0; s < kStates; ++s)
            if (nxt[s] > kNegInf) nxt[s] -= mx;
    }

    std::vector<uint8_t> info(info_len, 0);
    std::vector<std::vector<double>> betas(T + 1,
                                           std::vector<double>(kStates, kNegInf));
    betas[T][0] = 0.0;  // terminated
    for (int t = T - 1; t >= 0; --t) {
        int bmax = t < info_len ? 2 : 1;
        for (int s = 0; s < kStates; ++s) {
            double best = kNegInf;
            for (int b = 0; b < bmax; ++b) {
                double m = gamma(t, out_[s][b]) + betas[t + 1][next_[s][b]];
                if (m > best) best = m;
            }
            betas[t][s] = best;
        }
        double mx = *std::max_element(betas[t].begin(), betas[t].end());
        if (mx > kNegInf)
            for (double& v : betas[t])
                if (v > kNegInf) v -= mx;
    }
    for (int t = 0; t < info_len; ++t) {
        const double* a = &alpha[static_cast<size_t>(t) * kStates];
        double m0 = kNegInf, m1 = kNegInf;
        for (int s = 0; s < kStates; ++s) {
            if (a[s] <= kNegInf) continue;
            double g0v = a[s] + gamma(t, out_[s][0]) + betas[t + 1][next_[s][0]];
            double g1v = a[s] + gamma(t, out_[s][1]) + betas[t + 1][next_[s][1]];
            if (g0v > m0) m0 = g0v;
            if (g1v > m1) m1 = g1v;
        }
        info[t] = m1 > m0 ? 1 : 0;
    }
    return info;
}

// ---------------------------------------------------------------------------

uint16_t crc16_bits(const std::vector<uint8_t>& bits) {
    uint16_t crc = 0xFFFF;
    for (uint8_t b : bits) {
        uint16_t top = (crc >> 15) & 1;
        crc = static_cast<uint16_t>(crc << 1);
        if (top ^ (b & 1)) crc ^= 0x1021;
    }
    return crc;
}

void crc16_append(std::vector<uint8_t>& bits) {
    uint16_t crc = crc16_bits(bits);
    for (int i = 15; i >= 0; --i) bits.push_back((crc >> i) & 1);
}

bool crc16_check(const std::vector<uint8_t>& bits_with_crc) {
    if (bits_with_crc.size() < 16) return false;
    std::vector<uint8_t> payload(bits_with_crc.begin(), bits_with_crc.end() - 16);
    uint16_t crc = crc16_bits(payload);
    for (int i = 0; i < 16; ++i)
        if (bits_with_crc[bits_with_crc.size() - 16 + i] !=
            ((crc >> (15 - i)) & 1))
            return false;
    return true;
}

// ---------------------------------------------------------------------------

// Position i of the transmitted block carries mother bit floor(i*M/T). The
// same formula serves puncturing (T < M: an evenly spread selection) and
// repetition (T > M: copy counts differ by at most one and interleave evenly,
// never leaving a contiguous thinly-covered stretch).
std::vector<uint8_t> rate_match(const std::vector<uint8_t>& coded, int target) {
    const int m = static_cast<int>(coded.size());
    std::vector<uint8_t> out(target);
    for (int i = 0; i < target; ++i)
        out[i] = coded[static_cast<size_t>(i) * m / target];
    return out;
}

std::vector<double> rate_dematch(const std::vector<double>& llr, int mother_len) {
    const int t = static_cast<int>(llr.size());
    std::vector<double> out(mother_len, 0.0);
    for (int i = 0; i < t; ++i)
        out[static_cast<size_t>(i) * mother_len / t] += llr[i];
    return out;
}

std::vector<uint32_t> make_permutation(int n, uint64_t seed) {
    std::vector<uint32_t> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Rng rng(seed);
    rng.shuffle(perm);
    return perm;
}

}  // namespace swsc
