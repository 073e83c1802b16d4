#include "util.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <thread>

namespace swsc {

const Tolerances& tol() {
    static const Tolerances t{};
    return t;
}

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b, uint64_t c) {
    uint64_t s = master;
    uint64_t h = splitmix64(s);
    s ^= a * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL;
    h ^= splitmix64(s);
    s ^= b * 0xc2b2ae3d27d4eb4fULL + 0x452821e638d01377ULL;
    h ^= splitmix64(s);
    s ^= c * 0x165667b19e3779f9ULL + 0x13198a2e03707344ULL;
    h ^= splitmix64(s);
    return h ? h : 0x6a09e667f3bcc909ULL;
}

Rng::Rng(uint64_t seed) {
    uint64_t s = seed;
    for (auto& w : s_) w = splitmix64(s);
}

static inline uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

// xoshiro256++
uint64_t Rng::next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t Rng::next_below(uint64_t n) {
    // Rejection to avoid modulo bias.
    if (n == 0) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % n;
}

double Rng::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1, u2;
    do {
        u1 = next_double();
    } while (u1 <= 0.0);
    u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

void Rng::shuffle(std::vector<uint32_t>& v) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(next_below(i));
        std::swap(v[i - 1], v[j]);
    }
}

namespace {
std::atomic<int> g_jobs_override{0};
}

void set_default_jobs(int jobs) { g_jobs_override.store(jobs > 0 ? jobs : 0); }

int default_jobs() {
    int forced = g_jobs_override.load();
    if (forced > 0) return forced;
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

void parallel_for(size_t begin, size_t end, int jobs,
                  const std::function<void(size_t)>& body) {
    if (begin >= end) return;
    size_t count = end - begin;
    if (jobs <= 0) jobs = default_jobs();
    size_t workers = std::min<size_t>(static_cast<size_t>(jobs), count);
    if (workers <= 1) {
        for (size_t i = begin; i < end; ++i) body(i);
        return;
    }
    std::atomic<size_t> next{begin};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= end) break;
                body(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double db_to_linear(double db) {
    return std::pow(10.0, db / 10.0);
}

double xlog2x(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

}  // namespace swsc
