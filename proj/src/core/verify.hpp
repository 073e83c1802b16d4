#pragma once

#include <string>
#include <vector>

#include "schemes.hpp"
#include "sweeps.hpp"

namespace swsc {

struct SuiteResult {
    std::string name;
    bool pass = false;
    double max_residual = 0.0;
    double threshold = 0.0;
    std::string detail;
};

// Fixed seeded corpus of small interference channels (alphabets <= 4).
std::vector<DiscreteChannel> corpus_ics(int count, uint64_t seed = 1001);
// Smaller-alphabet members used where full sweeps run per channel.
std::vector<DiscreteChannel> corpus_ics_small(int count, uint64_t seed = 2002);
std::vector<DiscreteChannel> corpus_mac3(int count, uint64_t seed = 3003);
// Four-sender view of a small interference channel (binary S, T, U, V).
DiscreteChannel hk4_example(uint64_t seed = 4004);

SuiteResult verify_lemma1(int channels = 20, int alpha_grid = 21);
SuiteResult verify_eq5(int grid = 200);
SuiteResult verify_fm(int vectors = 1000, uint64_t seed = 5005);
SuiteResult verify_prop1(int channels = 8, uint64_t seed = 6006);
SuiteResult verify_prop2(int grid = 41);
SuiteResult verify_thm2(int grid = 41, int channels = 5);
SuiteResult verify_thm3(int eq39_grid = 21, int coverage_grid = 41);

SuiteResult run_suite(const std::string& name);
std::vector<std::string> suite_names();

}  // namespace swsc
