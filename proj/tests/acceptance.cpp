// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "schemes.hpp"
#include "sim.hpp"
#include "sweeps.hpp"
#include "verify.hpp"

using namespace swsc;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void report(int idx, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("[%s] criterion %d (%s): %s [%.1fs]\n", pass ? "PASS" : "FAIL", idx,
                name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) { return format_double(v); }

void criterion1() {
    Timer t;
    SuiteResult res = verify_lemma1(20, 21);
    report(1, "layer-splitting identity", res.pass,
           "max residual " + fmt(res.max_residual) + " over " + res.detail, t.seconds());
}

void criterion2() {
    Timer t;
    SuiteResult res = verify_eq5(200);
    report(2, "union-of-pairs decomposition", res.pass, res.detail, t.seconds());
}

void criterion3() {
    Timer t;
    SuiteResult res = verify_fm(1000);
    report(3, "projection closed form", res.pass, res.detail, t.seconds());
}

void criterion4() {
    Timer t;
    SuiteResult res = verify_thm2(41, 5);
    report(4, "swept union reaches the joint-decoding boundary", res.pass,
           res.detail, t.seconds());
}

void criterion5() {
    Timer t;
    SuiteResult res = verify_thm3(21, 41);
    report(5, "corner combinations and vertex coverage", res.pass, res.detail,
           t.seconds());
}

void criterion6() {
    Timer t;
    // Symmetric constellation channel in the strong-but-not-very-strong
    // regime: S = 6.31 (8 dB), I = 15.85 (12 dB) < S(S+1) = 46.1.
    IcModel m;
    m.gaussian = true;
    m.g = make_symmetric_gaussian(8.0, 12.0, "4pam_natural", "bpsk");
    RsGapResult gap = rs_gap_demo(m, 3, 41);
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "margin %.3f bits (corner R1 %.6f vs best split %.6f at R2=%.6f; %s)",
                  gap.margin, gap.snd_corner_r1, gap.best_rs_r1, gap.r2_max,
                  gap.best_scheme.c_str());
    bool pass = gap.margin > 0.0005;  // positive at the reported precision
    report(6, "single-block splitting falls short of the corner", pass, buf,
           t.seconds());
}

void criterion7() {
    Timer t;
    auto pts = theory_curve(8.0, {6, 7, 8, 9, 10}, "4pam_natural", "bpsk");
    bool pass = true;
    double prev_ratio = 0.0;
    std::string detail;
    for (const auto& p : pts) {
        if (!(p.ian_subst <= p.swcm + 1e-9 && p.swcm <= p.snd + 1e-9)) pass = false;
        double ratio = p.swcm / p.ian_subst;
        if (!(ratio > prev_ratio)) pass = false;
        prev_ratio = ratio;
        detail += "inr" + fmt(p.inr_db) + ":" + fmt(p.ian_subst) + "/" +
                  fmt(p.swcm) + "/" + fmt(p.snd) + " ";
    }
    report(7, "ordered curves with growing gain", pass, detail, t.seconds());
}

void criterion8() {
    Timer t;
    SimConfig base;
    base.n = 1024;
    base.b = 12;
    base.trials = 100;
    base.map1 = "4pam_natural";
    base.map2 = "bpsk";
    base.snr_db = 8.0;
    base.inr_db = 8.0;
    base.master_seed = 1;
    bool found = false;
    std::string detail;
    for (double rate : {0.4, 0.45, 0.5}) {
        SimConfig cfg = base;
        cfg.rate1 = rate;
        cfg.rate2 = rate;
        BlerReport sw = run_swsc(cfg);
        BlerReport ia = run_ian(cfg);
        double s1 = sw.stream[0].bler(), s2 = sw.stream[1].bler();
        double i1 = ia.stream[0].bler(), i2 = ia.stream[1].bler();
        detail += "rate " + fmt(rate) + ": swsc(" + fmt(s1) + "," + fmt(s2) +
                  ") ian(" + fmt(i1) + "," + fmt(i2) + "); ";
        if (s1 < 0.1 && s2 < 0.1 && (i1 > 0.5 || i2 > 0.5)) found = true;
    }
    report(8, "link-level win over noise-treating at 8/8 dB", found, detail,
           t.seconds());
}

void criterion9() {
    Timer t;
    SimConfig cfg;
    cfg.n = 512;
    cfg.b = 8;
    cfg.trials = 20;
    cfg.rate1 = 0.8;
    cfg.rate2 = 0.8;
    cfg.snr_db = 8.0;
    cfg.inr_db = 8.0;
    cfg.master_seed = 42;
    std::string a = run_swsc(cfg).to_json();
    std::string b = run_swsc(cfg).to_json();
    bool deterministic = a == b;

    std::string two = schedule_dump(2, 1, 4);
    bool sched_two = two ==
                     "block\t1\t2\t3\t4\n"
                     "X1\t1\tm1(1)\tm1(2)\tm1(3)\n"
                     "X2\tm1(1)\tm1(2)\tm1(3)\t1\n"
                     "W\tm2(1)\tm2(2)\tm2(3)\tm2(4)\n";
    std::string three = schedule_dump(3, 1, 5);
    bool sched_three = three ==
                       "block\t1\t2\t3\t4\t5\n"
                       "X1\t1\t1\tm1(1)\tm1(2)\tm1(3)\n"
                       "X2\t1\tm1(1)\tm1(2)\tm1(3)\t1\n"
                       "X3\tm1(1)\tm1(2)\tm1(3)\t1\t1\n"
                       "W\tm2(1)\tm2(2)\tm2(3)\tm2(4)\tm2(5)\n";
    bool pass = deterministic && sched_two && sched_three;
    report(9, "determinism and schedule structure", pass,
           std::string("byte-identical reruns: ") + (deterministic ? "yes" : "no") +
               "; schedules match: " +
               ((sched_two && sched_three) ? "yes" : "no"),
           t.seconds());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
