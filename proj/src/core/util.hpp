#pragma once

#include <cstdint>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace swsc {

// Central numeric tolerances. Discrete identities are checked to near
// machine precision; quadrature-based quantities to the accuracy the
// default node count delivers for SNR <= 20 dB.
struct Tolerances {
    double discrete = 1e-12;
    double quadrature = 1e-6;
    double containment = 1e-9;
    double unit_power = 1e-9;
    double pushforward = 1e-9;
};

const Tolerances& tol();

class SwscError : public std::runtime_error {
public:
    explicit SwscError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : SwscError {
    using SwscError::SwscError;
};
struct InfeasibleOrderError : SwscError {
    using SwscError::SwscError;
};

// ---------------------------------------------------------------------------
// Deterministic RNG. All randomness in the library flows through this
// generator so that runs are reproducible bit-for-bit across platforms;
// std::normal_distribution is implementation-defined and must not be used.

uint64_t splitmix64(uint64_t& state);

// Derives a well-separated child seed from a parent seed and a stream tag.
uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b = 0, uint64_t c = 0);

class Rng {
public:
    explicit Rng(uint64_t seed);

    uint64_t next_u64();
    // Uniform in [0,1).
    double next_double();
    // Uniform integer in [0, n).
    uint64_t next_below(uint64_t n);
    // Standard normal via Box-Muller (deterministic, no cached spare).
    double next_gaussian();
    // In-place Fisher-Yates shuffle of an index vector.
    void shuffle(std::vector<uint32_t>& v);

private:
    uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Small blocking parallel-for. Results must be written to disjoint slots so
// the merge is deterministic regardless of scheduling.
void parallel_for(size_t begin, size_t end, int jobs,
                  const std::function<void(size_t)>& body);

int default_jobs();
// Process-wide cap on worker threads (0 restores the hardware default).
void set_default_jobs(int jobs);

// Locale-independent float formatting for CSV/JSON output (dot decimal).
std::string format_double(double v);

double db_to_linear(double db);

// 0 log 0 = 0 convention; log base 2.
double xlog2x(double x);

}  // namespace swsc
