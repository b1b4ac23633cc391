/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

// End-to-end acceptance checks, one per command-line criterion. Each prints
// exactly one "criterion N: pass|FAIL" line; the process exits non-zero if
// any requested criterion fails. Library access goes through the public C
// interface, and criteria 2 and 6 drive the installed CLI binary.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmtlab/dmtlab.h"

namespace {

using nlohmann::json;

constexpr double kIdentityTol = 1e-6;       // closed-form identities at r -> 0
constexpr double kCurveValueTol = 1e-6;     // named curve values at r = 0 and r = 1
constexpr double kDominanceSlack = 1e-9;    // pointwise curve comparisons
constexpr double kFitTolNoFeedback = 0.2;   // fitted diversity vs analytic 0.8
constexpr double kFitTolQuantized = 0.3;    // fitted diversity vs analytic 1.6
constexpr double kSigmaFactor = 3.0;        // analytic agreement band
constexpr double kPowerRatioCap = 10.0;     // long-term power constraint
constexpr std::uint64_t kSweepTrials = 10000000;
constexpr std::uint64_t kSweepSeed = 20260815;
constexpr int kOracleGridG = 401;
constexpr int kOracleGridNoisy = 101;

struct Tally {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void api(dmtlab_status status, const std::string& what) {
        if (status != DMTLAB_OK) {
            failures.push_back(what + ": " + dmtlab_last_error());
        }
    }
};

std::string fmt(double value) {
    std::ostringstream out;
    out.precision(12);
    out << value;
    return out.str();
}

// ---- criterion 1: closed-form identities at vanishing multiplexing ----

bool criterion1(Tally& t) {
    const double r = 1e-9;
    const std::array<std::pair<int, int>, 4> configs = {
        {{1, 1}, {2, 1}, {2, 2}, {3, 2}}};
    for (const auto& [m, n] : configs) {
        const double mn = static_cast<double>(m) * n;
        const std::string tag = std::to_string(m) + "x" + std::to_string(n);
        double value = 0.0;
        int unbounded = 0;

        t.api(dmtlab_d_case("csir", m, n, 0, r, &value, &unbounded), tag + " csir");
        t.expect(std::abs(value - mn) <= kIdentityTol,
                 tag + " csir at r->0: " + fmt(value) + " != " + fmt(mn));

        for (int k : {2, 4}) {
            t.api(dmtlab_d_case("csir-hat-tq", m, n, k, r, &value, &unbounded),
                  tag + " csir-hat-tq");
            t.expect(std::abs(value - mn * (1.0 + mn)) <= kIdentityTol,
                     tag + " csir-hat-tq(K=" + std::to_string(k) + ") at r->0: " + fmt(value) +
                         " != " + fmt(mn * (1.0 + mn)));
        }

        double one_bit = 0.0;
        t.api(dmtlab_d_case("csir-tq", m, n, 2, r, &one_bit, &unbounded), tag + " csir-tq");
        t.api(dmtlab_d_case("csir-tq-hat", m, n, 2, r, &value, &unbounded),
              tag + " csir-tq-hat(2)");
        t.expect(std::abs(value - one_bit) <= kIdentityTol,
                 tag + " csir-tq-hat(2) vs one perfect bit: " + fmt(value) +
                     " != " + fmt(one_bit));

        t.api(dmtlab_d_case("csir-tq-hat", m, n, 3, r, &value, &unbounded),
              tag + " csir-tq-hat(3)");
        t.expect(std::abs(value - mn * (mn + 2.0)) <= kIdentityTol,
                 tag + " csir-tq-hat(3) at r->0: " + fmt(value) + " != " + fmt(mn * (mn + 2.0)));

        // Exhaustive-grid confirmation of the three-level limit.
        double oracle = 0.0;
        t.api(dmtlab_d_noisy_oracle(m, n, r, 3, kOracleGridNoisy, &oracle),
              tag + " noisy oracle");
        double cap = 0.0;
        for (int j = 1; j <= 2; ++j) {
            double b = 0.0;
            t.api(dmtlab_b_star(m, n, r, j, &b), tag + " b_star");
            cap = std::max(cap, 1.0 + b);
        }
        const double oracle_slack = mn * cap / (kOracleGridNoisy - 1);
        t.expect(oracle <= value + 1e-9 && oracle >= value - oracle_slack - 1e-9,
                 tag + " noisy oracle " + fmt(oracle) + " outside [" +
                     fmt(value - oracle_slack) + ", " + fmt(value) + "]");

        t.api(dmtlab_d_case("csir-hat-tc-hat", m, n, 0, r, &value, &unbounded),
              tag + " csir-hat-tc-hat");
        t.expect(std::abs(value - mn * (1.0 + mn)) <= kIdentityTol,
                 tag + " csir-hat-tc-hat at r->0: " + fmt(value) +
                     " != " + fmt(mn * (1.0 + mn)));
    }
    return t.failures.empty();
}

// ---- criterion 2: figure-of-merit curve family via the CLI ----

int run_cli(const std::string& arguments) {
    const std::string command = std::string("\"") + DMTLAB_CLI_PATH + "\" " + arguments;
    const int rc = std::system(command.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

struct ParsedCurve {
    std::vector<std::pair<double, double>> breakpoints;
    std::vector<std::pair<double, double>> samples;

    double eval(double r) const {
        for (std::size_t i = 1; i < breakpoints.size(); ++i) {
            const auto& [r0, d0] = breakpoints[i - 1];
            const auto& [r1, d1] = breakpoints[i];
            if (r <= r1 || i + 1 == breakpoints.size()) {
                return d0 + (r - r0) / (r1 - r0) * (d1 - d0);
            }
        }
        return breakpoints.empty() ? 0.0 : breakpoints.front().second;
    }
};

class TempDir {
public:
    TempDir() {
        std::string pattern =
            (std::filesystem::temp_directory_path() / "dmtlab-accept-XXXXXX").string();
        std::vector<char> buf(pattern.begin(), pattern.end());
        buf.push_back('\0');
        if (mkdtemp(buf.data()) != nullptr) path_ = buf.data();
    }
    ~TempDir() {
        if (!path_.empty()) {
            std::error_code ec;
            std::filesystem::remove_all(path_, ec);
        }
    }
    bool ok() const { return !path_.empty(); }
    std::string file(const std::string& name) const { return path_ + "/" + name; }

private:
    std::string path_;
};

bool criterion2(Tally& t) {
    TempDir dir;
    if (!dir.ok()) {
        t.expect(false, "could not create a temporary directory");
        return false;
    }
    const std::string csv_path = dir.file("figure1.csv");
    const int rc = run_cli("figure1 --m 2 --n 2 --k 2 --out \"" + csv_path + "\"");
    t.expect(rc == 0, "figure1 command exited with code " + std::to_string(rc));
    if (rc != 0) return false;

    std::ifstream csv(csv_path);
    t.expect(static_cast<bool>(csv), "figure1 CSV missing");
    if (!csv) return false;

    std::map<std::string, ParsedCurve> curves;
    std::string line;
    std::getline(csv, line);  // header
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 7) {
            t.expect(false, "figure1 row has " + std::to_string(fields.size()) + " fields");
            return false;
        }
        const double r = std::stod(fields[5]);
        const double d = std::stod(fields[6]);
        if (fields[4] == "breakpoint") {
            curves[fields[0]].breakpoints.emplace_back(r, d);
        } else {
            curves[fields[0]].samples.emplace_back(r, d);
        }
    }

    t.expect(curves.size() == 7,
             "expected 7 finite curves, parsed " + std::to_string(curves.size()));
    const std::vector<std::string> feedback_cases = {
        "csir-tq", "csir-hat-tq", "csir-tq-hat", "csir-hat-tq-hat", "csir-hat-tc-hat"};
    for (const auto& name : feedback_cases) {
        t.expect(curves.count(name) == 1, "missing curve: " + name);
        if (!curves.count(name)) continue;
        const double at0 = curves[name].samples.empty() ? -1.0 : curves[name].samples[0].second;
        t.expect(std::abs(at0 - 20.0) <= kCurveValueTol,
                 name + " at r->0: " + fmt(at0) + " != 20");
    }
    for (const auto& name : {"csir", "csir-hat"}) {
        t.expect(curves.count(name) == 1, std::string("missing curve: ") + name);
        if (!curves.count(name)) continue;
        const double at0 = curves[name].samples.empty() ? -1.0 : curves[name].samples[0].second;
        t.expect(std::abs(at0 - 4.0) <= kCurveValueTol,
                 std::string(name) + " at r->0: " + fmt(at0) + " != 4");
    }

    if (curves.count("csir-tq")) {
        const double at1 = curves["csir-tq"].eval(1.0);
        t.expect(std::abs(at1 - 5.0) <= kCurveValueTol,
                 "csir-tq at r=1: " + fmt(at1) + " != 5");
    }
    if (curves.count("csir-hat-tc-hat")) {
        const double at1 = curves["csir-hat-tc-hat"].eval(1.0);
        t.expect(std::abs(at1 - 17.0) <= kCurveValueTol,
                 "csir-hat-tc-hat at r=1: " + fmt(at1) + " != 17");
    }

    // Reciprocal-training curve dominates every one-shot feedback curve.
    if (curves.count("csir-hat-tc-hat")) {
        const auto& tdd = curves["csir-hat-tc-hat"].samples;
        for (const auto& name : {"csir-tq", "csir-hat-tq", "csir-tq-hat", "csir-hat-tq-hat"}) {
            if (!curves.count(name)) continue;
            const auto& fdd = curves[name].samples;
            t.expect(fdd.size() == tdd.size(),
                     std::string(name) + " sample grid differs from csir-hat-tc-hat");
            if (fdd.size() != tdd.size()) continue;
            bool dominated = true;
            for (std::size_t i = 0; i < tdd.size(); ++i) {
                if (tdd[i].second < fdd[i].second - kDominanceSlack) dominated = false;
            }
            t.expect(dominated, std::string("csir-hat-tc-hat dips below ") + name);
            t.expect(std::abs(tdd[0].second - fdd[0].second) <= kCurveValueTol,
                     std::string(name) + " does not meet csir-hat-tc-hat at r->0");
        }
    }

    std::ifstream manifest_in(dir.file("figure1.json"));
    t.expect(static_cast<bool>(manifest_in), "figure1 manifest missing");
    if (manifest_in) {
        json manifest;
        manifest_in >> manifest;
        const auto unbounded =
            manifest.at("figure").at("unbounded_cases").get<std::vector<std::string>>();
        t.expect(unbounded == std::vector<std::string>({"csir-tc", "csir-hat-tc", "csir-tc-hat"}),
                 "manifest lists unexpected unbounded cases");
        const auto finite =
            manifest.at("figure").at("finite_cases").get<std::vector<std::string>>();
        t.expect(finite.size() == 7, "manifest finite case count != 7");
    }
    return t.failures.empty();
}

// ---- criterion 3: brute-force oracles agree with the closed forms ----

bool criterion3(Tally& t) {
    int combos = 0;
    for (int m = 1; m <= 4; ++m) {
        for (int n = 1; n <= 4; ++n) {
            if (m == 4 && n == 4) continue;  // enumeration cost grows too steeply
            const int nmin = std::min(m, n);
            for (double p : {0.5, 1.0, 2.0, 5.0}) {
                const double r_hi = p * nmin;
                const double bound =
                    p * nmin * (m + n) / static_cast<double>(kOracleGridG) + 1e-9;
                for (int j = 0; j < 20; ++j) {
                    const double r = r_hi * j / 19.0;
                    double exact = 0.0;
                    double oracle = 0.0;
                    t.api(dmtlab_g_closed(m, n, r, p, &exact), "g_closed");
                    t.api(dmtlab_g_oracle(m, n, r, p, kOracleGridG, &oracle), "g_oracle");
                    ++combos;
                    if (!(oracle >= exact - 1e-9 && oracle <= exact + bound)) {
                        t.expect(false, "g oracle mismatch at m=" + std::to_string(m) +
                                            " n=" + std::to_string(n) + " p=" + fmt(p) +
                                            " r=" + fmt(r) + ": " + fmt(oracle) + " vs " +
                                            fmt(exact));
                    }
                }
            }
        }
    }
    t.expect(combos >= 500,
             "baseline matrix covered only " + std::to_string(combos) + " combinations");

    int noisy_combos = 0;
    const std::array<std::pair<int, int>, 3> configs = {{{1, 1}, {2, 2}, {3, 2}}};
    for (const auto& [m, n] : configs) {
        const int nmin = std::min(m, n);
        for (int k = 2; k <= 4; ++k) {
            for (double r : {1e-9, 0.3, 0.9 * nmin}) {
                double exact = 0.0;
                double oracle = 0.0;
                t.api(dmtlab_d_noisy_quantized(m, n, r, k, &exact), "d_noisy_quantized");
                t.api(dmtlab_d_noisy_oracle(m, n, r, k, kOracleGridNoisy, &oracle),
                      "d_noisy_oracle");
                double cap = 0.0;
                for (int j = 1; j < k; ++j) {
                    double b = 0.0;
                    t.api(dmtlab_b_star(m, n, r, j, &b), "b_star");
                    cap = std::max(cap, 1.0 + b);
                }
                const double slack =
                    m * n * cap / static_cast<double>(kOracleGridNoisy - 1) + 1e-9;
                ++noisy_combos;
                if (!(oracle <= exact + 1e-9 && oracle >= exact - slack)) {
                    t.expect(false, "noisy oracle mismatch at m=" + std::to_string(m) +
                                        " n=" + std::to_string(n) + " K=" + std::to_string(k) +
                                        " r=" + fmt(r) + ": " + fmt(oracle) + " vs " +
                                        fmt(exact));
                }
            }
        }
    }
    t.expect(noisy_combos >= 27,
             "noisy matrix covered only " + std::to_string(noisy_combos) + " combinations");
    return t.failures.empty();
}

// ---- criteria 4 and 5: Monte Carlo slope and power-constraint checks ----

struct Sweep {
    std::vector<double> snr_db;
    std::vector<double> p_out;
    std::vector<std::uint64_t> counts;
    std::vector<double> power_ratio;
};

std::optional<Sweep> run_sweep(Tally& t, const char* protocol, int levels) {
    Sweep sweep;
    for (double snr_db = 10.0; snr_db <= 30.0 + 1e-9; snr_db += 5.0) {
        dmtlab_sim_spec spec{};
        spec.protocol = protocol;
        spec.m = 1;
        spec.n = 1;
        spec.levels = levels;
        spec.r = 0.2;
        spec.snr_db = snr_db;
        spec.trials = kSweepTrials;
        spec.seed = kSweepSeed;
        spec.workers = 1;
        dmtlab_sim_result result{};
        const dmtlab_status status = dmtlab_estimate_outage(&spec, &result);
        t.api(status, std::string(protocol) + " sweep point");
        if (status != DMTLAB_OK) return std::nullopt;
        sweep.snr_db.push_back(snr_db);
        sweep.p_out.push_back(result.outage_probability);
        sweep.counts.push_back(result.outage_count);
        sweep.power_ratio.push_back(result.mean_power_ratio);
    }
    return sweep;
}

std::optional<double> fit_sweep(Tally& t, const Sweep& sweep, const std::string& label) {
    double diversity = 0.0;
    double standard_error = 0.0;
    std::size_t used = 0;
    const dmtlab_status status =
        dmtlab_fit_diversity(sweep.snr_db.data(), sweep.p_out.data(), sweep.counts.data(),
                             sweep.snr_db.size(), &diversity, &standard_error, &used);
    t.api(status, label + " fit");
    if (status != DMTLAB_OK) return std::nullopt;
    return diversity;
}

bool criterion4(Tally& t) {
    const auto plain = run_sweep(t, "no-feedback-csir", 1);
    const auto quantized = run_sweep(t, "perfect-quantized", 2);
    if (!plain || !quantized) return false;

    const auto plain_fit = fit_sweep(t, *plain, "no-feedback");
    const auto quant_fit = fit_sweep(t, *quantized, "quantized");
    if (!plain_fit || !quant_fit) return false;

    t.expect(std::abs(*plain_fit - 0.8) <= kFitTolNoFeedback,
             "no-feedback fitted diversity " + fmt(*plain_fit) + " outside 0.8 +- " +
                 fmt(kFitTolNoFeedback));
    t.expect(std::abs(*quant_fit - 1.6) <= kFitTolQuantized,
             "quantized fitted diversity " + fmt(*quant_fit) + " outside 1.6 +- " +
                 fmt(kFitTolQuantized));
    t.expect(*quant_fit > *plain_fit,
             "quantized fit " + fmt(*quant_fit) + " not above no-feedback fit " +
                 fmt(*plain_fit));

    // Scalar Rayleigh closed form: P_out = 1 - exp(-(snr^r - 1)/snr).
    for (std::size_t i = 0; i < plain->snr_db.size(); ++i) {
        const double snr = std::pow(10.0, plain->snr_db[i] / 10.0);
        const double analytic = 1.0 - std::exp(-(std::pow(snr, 0.2) - 1.0) / snr);
        const double sigma =
            std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(kSweepTrials));
        t.expect(std::abs(plain->p_out[i] - analytic) <= kSigmaFactor * sigma,
                 "no-feedback estimate at " + fmt(plain->snr_db[i]) + " dB: " +
                     fmt(plain->p_out[i]) + " vs analytic " + fmt(analytic) + " (3 sigma " +
                     fmt(kSigmaFactor * sigma) + ")");
    }
    return t.failures.empty();
}

bool criterion5(Tally& t) {
    const auto quantized = run_sweep(t, "perfect-quantized", 2);
    if (!quantized) return false;
    for (std::size_t i = 0; i < quantized->snr_db.size(); ++i) {
        t.expect(quantized->power_ratio[i] <= kPowerRatioCap,
                 "mean power ratio at " + fmt(quantized->snr_db[i]) + " dB is " +
                     fmt(quantized->power_ratio[i]) + " > " + fmt(kPowerRatioCap));
    }
    return t.failures.empty();
}

// ---- criterion 6: bit-for-bit reproducible artifacts ----

std::optional<std::string> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool criterion6(Tally& t) {
    TempDir dir;
    if (!dir.ok()) {
        t.expect(false, "could not create a temporary directory");
        return false;
    }

    const std::string sim_args =
        "simulate --protocol perfect-quantized --m 1 --n 1 --k 2 --r 0.2 "
        "--snr-db 10:20:5 --trials 200000 --seed 7 ";
    const std::string solo_csv = dir.file("solo.csv");
    const std::string pooled_csv = dir.file("pooled.csv");
    int rc = run_cli(sim_args + "--workers 1 --out \"" + solo_csv + "\"");
    t.expect(rc == 0, "simulate (1 worker) exited with code " + std::to_string(rc));
    rc = run_cli(sim_args + "--workers 8 --out \"" + pooled_csv + "\"");
    t.expect(rc == 0, "simulate (8 workers) exited with code " + std::to_string(rc));

    const auto solo = read_bytes(solo_csv);
    const auto pooled = read_bytes(pooled_csv);
    t.expect(solo.has_value() && pooled.has_value(), "simulate CSV missing");
    if (solo && pooled) {
        t.expect(*solo == *pooled, "simulate CSV differs between 1 and 8 workers");
        t.expect(solo->find("perfect-quantized") != std::string::npos,
                 "simulate CSV lacks protocol rows");
    }
    const auto solo_fit = read_bytes(dir.file("solo.fit.csv"));
    const auto pooled_fit = read_bytes(dir.file("pooled.fit.csv"));
    t.expect(solo_fit.has_value() && pooled_fit.has_value(), "fit summary CSV missing");
    if (solo_fit && pooled_fit) {
        t.expect(*solo_fit == *pooled_fit, "fit summary differs between 1 and 8 workers");
    }

    const std::string curve_args = "curve --case csir-tq-hat --m 2 --n 2 --k 3 --dense ";
    const std::string first_csv = dir.file("curve1.csv");
    const std::string second_csv = dir.file("curve2.csv");
    rc = run_cli(curve_args + "--out \"" + first_csv + "\"");
    t.expect(rc == 0, "curve run 1 exited with code " + std::to_string(rc));
    rc = run_cli(curve_args + "--out \"" + second_csv + "\"");
    t.expect(rc == 0, "curve run 2 exited with code " + std::to_string(rc));

    const auto first = read_bytes(first_csv);
    const auto second = read_bytes(second_csv);
    t.expect(first.has_value() && second.has_value(), "curve CSV missing");
    if (first && second) {
        t.expect(*first == *second, "curve CSV differs across repeated runs");
        t.expect(!first->empty(), "curve CSV is empty");
    }
    return t.failures.empty();
}

struct CriterionSpec {
    int id;
    double budget_seconds;  // 0 disables the wall-clock check
    std::function<bool(Tally&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            selected = std::atoi(argv[++i]);
        } else if (arg.rfind("--criterion=", 0) == 0) {
            selected = std::atoi(arg.c_str() + 12);
        } else {
            std::cerr << "usage: dmtlab_acceptance [--criterion N]\n";
            return 2;
        }
    }

    const std::vector<CriterionSpec> criteria = {
        {1, 1.0, criterion1},   {2, 5.0, criterion2},   {3, 120.0, criterion3},
        {4, 600.0, criterion4}, {5, 600.0, criterion5}, {6, 0.0, criterion6},
    };

    bool all_ok = true;
    for (const auto& spec : criteria) {
        if (selected != 0 && spec.id != selected) continue;
        Tally tally;
        const auto start = std::chrono::steady_clock::now();
        bool ok = spec.run(tally);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (spec.budget_seconds > 0.0 && elapsed > spec.budget_seconds) {
            ok = false;
            tally.failures.push_back("runtime " + fmt(elapsed) + " s exceeded budget " +
                                     fmt(spec.budget_seconds) + " s");
        }
        std::ostringstream line;
        line << "criterion " << spec.id << ": " << (ok ? "pass" : "FAIL");
        line.setf(std::ios::fixed);
        line.precision(2);
        line << " (" << elapsed << " s)";
        if (!ok && !tally.failures.empty()) {
            line << " - " << tally.failures.front();
            if (tally.failures.size() > 1) {
                line << " [+" << tally.failures.size() - 1 << " more]";
            }
        }
        std::cout << line.str() << std::endl;
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
