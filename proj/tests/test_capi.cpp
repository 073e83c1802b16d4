#include <cstdlib>
#include <string>

#include "doctest.h"
#include "swsc.h"

namespace {

std::string config_dir() {
    const char* dir = std::getenv("SWSC_CONFIG_DIR");
    return dir ? dir : "configs";
}

const char* kGaussianJson =
    R"({"type":"gaussian","snr_db":8,"inr_db":8,"map1":"4pam_natural","map2":"bpsk"})";

struct Free {
    char* s = nullptr;
    ~Free() { swsc_string_free(s); }
};

}  // namespace

TEST_CASE("channel lifecycle and error reporting") {
    swsc_channel* ch = nullptr;
    CHECK(swsc_channel_from_json(kGaussianJson, &ch) == SWSC_OK);
    REQUIRE(ch != nullptr);
    double bits = 0;
    CHECK(swsc_mutual_info(ch, 0x3, 0x0, 0, &bits) == SWSC_OK);
    CHECK(bits > 0.0);
    CHECK(swsc_mutual_info(ch, 0x3, 0x3, 0, &bits) == SWSC_ERR_INVALID);
    CHECK(std::string(swsc_last_error()).find("overlap") != std::string::npos);
    swsc_channel_free(ch);

    swsc_channel* bad = nullptr;
    CHECK(swsc_channel_from_file("/no/such/channel.json", &bad) == SWSC_ERR_CONFIG);
    CHECK(std::string(swsc_last_error()).find("/no/such/channel.json") !=
          std::string::npos);
    CHECK(swsc_channel_from_json("{oops", &bad) == SWSC_ERR_CONFIG);
}

TEST_CASE("region handles, queries and exports") {
    swsc_channel* ch = nullptr;
    REQUIRE(swsc_channel_from_file((config_dir() + "/symmetric_8db.json").c_str(),
                                   &ch) == SWSC_OK);
    swsc_region* snd = nullptr;
    REQUIRE(swsc_region_compute(ch, "snd", nullptr, 0, 0, 0, &snd) == SWSC_OK);
    swsc_region* ian = nullptr;
    REQUIRE(swsc_region_compute(ch, "ian", nullptr, 0, 0, 0, &ian) == SWSC_OK);

    double ian_sym = 0, snd_sym = 0;
    CHECK(swsc_region_max_symmetric(ian, &ian_sym) == SWSC_OK);
    CHECK(swsc_region_max_symmetric(snd, &snd_sym) == SWSC_OK);
    CHECK(ian_sym <= snd_sym + 1e-9);
    CHECK(swsc_region_contains(snd, ian_sym, ian_sym, 1e-9) == 1);
    CHECK(swsc_region_contains(ian, snd_sym + 0.2, snd_sym + 0.2, 1e-9) == 0);

    Free csv, js;
    CHECK(swsc_region_boundary_csv(snd, 64, &csv.s) == SWSC_OK);
    CHECK(std::string(csv.s).rfind("R1_bits,R2_bits,source_label", 0) == 0);
    CHECK(swsc_region_constraints_json(snd, &js.s) == SWSC_OK);
    CHECK(std::string(js.s).find("coeffs") != std::string::npos);

    swsc_region* bad = nullptr;
    CHECK(swsc_region_compute(ch, "nope", nullptr, 0, 0, 0, &bad) ==
          SWSC_ERR_CONFIG);
    CHECK(swsc_region_compute(ch, "swsc", "d1=m2@0;d2=m2@0", 0, 0, 0, &bad) ==
          SWSC_ERR_INFEASIBLE);

    swsc_region_free(snd);
    swsc_region_free(ian);
    swsc_channel_free(ch);
}

TEST_CASE("hk region over a discrete channel") {
    swsc_channel* ch = nullptr;
    // 4-ary alphabets required; build a noisy modular-sum law.
    std::string law;
    for (int x = 0; x < 4; ++x)
        for (int w = 0; w < 4; ++w)
            for (int y1 = 0; y1 < 4; ++y1)
                for (int y2 = 0; y2 < 4; ++y2) {
                    double p1 = (y1 == (x + w) % 4) ? 0.85 : 0.05;
                    double p2 = (y2 == (x + 2 * w) % 4) ? 0.85 : 0.05;
                    law += (law.empty() ? "" : ",");
                    char buf[32];
                    std::snprintf(buf, sizeof(buf), "%.6f", p1 * p2);
                    law += buf;
                }
    std::string json = std::string(R"({"type":"discrete","x_size":4,"w_size":4,)") +
                       R"("y1_size":4,"y2_size":4,"law":[)" + law +
                       R"(],"px":[0.25,0.25,0.25,0.25],"pw":[0.25,0.25,0.25,0.25]})";
    REQUIRE(swsc_channel_from_json(json.c_str(), &ch) == SWSC_OK);
    swsc_region* hk = nullptr;
    CHECK(swsc_region_hk(ch, 1, 7, 0.6, 0.2, 0.5, 0.5, &hk) == SWSC_OK);
    double sym = 0;
    CHECK(swsc_region_max_symmetric(hk, &sym) == SWSC_OK);
    CHECK(sym >= 0.0);
    swsc_region* bad = nullptr;
    CHECK(swsc_region_hk(ch, 9, 7, 0.5, 0.5, 0.5, 0.5, &bad) ==
          SWSC_ERR_INFEASIBLE);
    swsc_region_free(hk);
    swsc_channel_free(ch);
}

TEST_CASE("verify suite plumbing") {
    Free line;
    CHECK(swsc_verify("fm", &line.s) == SWSC_OK);
    CHECK(std::string(line.s).find("PASS") != std::string::npos);
    CHECK(swsc_verify("bogus", nullptr) == SWSC_ERR_CONFIG);
}

TEST_CASE("schedule dump via the c surface") {
    Free text;
    REQUIRE(swsc_schedule_dump(2, 1, 4, &text.s) == SWSC_OK);
    std::string t = text.s;
    CHECK(t.find("X2\tm1(1)\tm1(2)\tm1(3)\t1") != std::string::npos);
    CHECK(swsc_schedule_dump(0, 1, 4, &text.s) == SWSC_ERR_CONFIG);
}

TEST_CASE("simulation round trip through json") {
    const char* cfg =
        R"({"n":128,"b":4,"trials":2,"rate1":0.5,"rate2":0.5,"snr_db":30,"inr_db":20,"master_seed":9})";
    Free a, b;
    REQUIRE(swsc_simulate(cfg, "swsc", &a.s) == SWSC_OK);
    REQUIRE(swsc_simulate(cfg, "swsc", &b.s) == SWSC_OK);
    CHECK(std::string(a.s) == std::string(b.s));
    CHECK(std::string(a.s).find("\"errors\": 0") != std::string::npos);
    Free bad;
    CHECK(swsc_simulate("{\"n\":1}", "swsc", &bad.s) == SWSC_ERR_CONFIG);
    CHECK(swsc_simulate(cfg, "warp", &bad.s) == SWSC_ERR_CONFIG);
}

TEST_CASE("curve csv") {
    double inrs[2] = {6.0, 8.0};
    Free csv;
    REQUIRE(swsc_curve_csv(8.0, inrs, 2, "4pam_natural", "bpsk", &csv.s) == SWSC_OK);
    std::string t = csv.s;
    CHECK(t.rfind("inr_db,rate_bits,scheme", 0) == 0);
    CHECK(t.find("swcm") != std::string::npos);
    CHECK(t.find("snd") != std::string::npos);
}

TEST_CASE("noise-treating rectangle corners equal the mutual informations") {
    swsc_channel* ch = nullptr;
    REQUIRE(swsc_channel_from_json(kGaussianJson, &ch) == SWSC_OK);
    double i1 = 0, i2 = 0;
    REQUIRE(swsc_mutual_info(ch, 0x3, 0, 0, &i1) == SWSC_OK);
    REQUIRE(swsc_mutual_info(ch, 0x4, 0, 1, &i2) == SWSC_OK);
    swsc_region* ian = nullptr;
    REQUIRE(swsc_region_compute(ch, "ian", nullptr, 0, 0, 0, &ian) == SWSC_OK);
    CHECK(swsc_region_contains(ian, i1 - 1e-9, i2 - 1e-9, 0.0) == 1);
    CHECK(swsc_region_contains(ian, i1 + 1e-6, i2 - 1e-9, 0.0) == 0);
    CHECK(swsc_region_contains(ian, i1 - 1e-9, i2 + 1e-6, 0.0) == 0);
    swsc_region* cut = nullptr;
    REQUIRE(swsc_region_edge_loss(ian, 12, 2, 1, &cut) == SWSC_OK);
    CHECK(swsc_region_contains(cut, i1 * 11.0 / 12.0 - 1e-9, i2 - 1e-9, 0.0) == 1);
    CHECK(swsc_region_contains(cut, i1 * 11.0 / 12.0 + 1e-6, i2 - 1e-9, 0.0) == 0);
    swsc_region_free(cut);
    swsc_region_free(ian);
    swsc_channel_free(ch);
}
