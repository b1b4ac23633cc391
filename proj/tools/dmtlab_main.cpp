/*
 * (C) Copyright 2026 dmtlab developers
 *
 * This software is licensed under the terms of the Apache License Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

// Command-line front end. Talks to the library exclusively through the
// public C interface so the executable doubles as an API smoke test.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmtlab/dmtlab.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitFileIo = 4;
constexpr int kExitInsufficientData = 5;
constexpr int kExitParse = 6;

constexpr int kDenseSamples = 201;

int exit_code_for(dmtlab_status status) {
    switch (status) {
        case DMTLAB_OK: return kExitOk;
        case DMTLAB_ERR_DOMAIN: return kExitDomain;
        case DMTLAB_ERR_INVALID_ARG: return kExitUsage;
        case DMTLAB_ERR_UNSUPPORTED_CASE: return kExitUnsupported;
        case DMTLAB_ERR_SIZE: return kExitDomain;
        case DMTLAB_ERR_INSUFFICIENT_DATA: return kExitInsufficientData;
        case DMTLAB_ERR_INTERNAL: return kExitDomain;
    }
    return kExitDomain;
}

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void die(int code, const std::string& message) { throw CliError{code, message}; }

void check(dmtlab_status status) {
    if (status != DMTLAB_OK) die(exit_code_for(status), dmtlab_last_error());
}

std::string fmt_double(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

template <typename Int>
std::string fmt_int(Int value) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_quote(fields[i]);
    }
    out << '\n';
}

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json meta_block(std::optional<std::uint64_t> seed) {
    json meta{{"tool", "dmtlab"},
              {"version", dmtlab_version()},
              {"generated_at", now_iso8601()}};
    if (seed) meta["seed"] = *seed;
    return meta;
}

// JSON cannot carry IEEE infinities; mirror the CSV's "inf" literal.
json json_value(double value) {
    if (std::isinf(value)) return value > 0 ? json("inf") : json("-inf");
    return json(value);
}

// ---- option values merged from flag > config file > environment > default

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) die(kExitFileIo, "cannot open config file: " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        die(kExitUsage, std::string("config file is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) die(kExitUsage, "config file must hold a JSON object");
    return cfg;
}

template <typename T>
class Merged {
public:
    Merged(std::string key, std::optional<T> fallback)
        : key_(std::move(key)), fallback_(std::move(fallback)) {}

    T& flag_storage() { return flag_value_; }
    void attach(CLI::Option* option) { options_.push_back(option); }

    std::optional<T> resolve(const json& cfg) const {
        for (const CLI::Option* option : options_) {
            if (option->count() > 0) return flag_value_;
        }
        if (cfg.contains(key_)) {
            try {
                return cfg.at(key_).get<T>();
            } catch (const json::exception&) {
                die(kExitUsage, "config key '" + key_ + "' has the wrong type");
            }
        }
        return fallback_;
    }

    T require(const json& cfg) const {
        auto value = resolve(cfg);
        if (!value) die(kExitUsage, "missing required option --" + key_);
        return *value;
    }

private:
    std::string key_;
    std::optional<T> fallback_;
    std::vector<CLI::Option*> options_;
    T flag_value_{};
};

int resolve_workers(const Merged<int>& merged, const json& cfg) {
    if (auto value = merged.resolve(cfg)) {
        if (*value < 1) die(kExitUsage, "worker count must be a positive integer");
        return *value;
    }
    if (const char* env = std::getenv("DMTLAB_WORKERS")) {
        int value = 0;
        const std::string text(env);
        const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
        if (result.ec != std::errc() || result.ptr != text.data() + text.size() || value < 1) {
            die(kExitUsage, "DMTLAB_WORKERS must be a positive integer");
        }
        return value;
    }
    return 1;
}

struct OutputTarget {
    std::ofstream file;
    std::string path;

    explicit OutputTarget(const std::string& out_path) : path(out_path) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);
            if (!file) die(kExitFileIo, "cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return path.empty() ? std::cout : file; }
    void finish() {
        if (!path.empty()) {
            file.flush();
            if (!file) die(kExitFileIo, "failed writing output file: " + path);
        }
    }
};

// ---- shared case/curve helpers

struct CurveHandle {
    dmtlab_curve* ptr = nullptr;
    ~CurveHandle() { dmtlab_curve_destroy(ptr); }
};

struct CurveData {
    std::vector<double> rs;
    std::vector<double> ds;
};

CurveData fetch_breakpoints(const dmtlab_curve* curve) {
    CurveData data;
    const std::size_t count = dmtlab_curve_breakpoint_count(curve);
    data.rs.resize(count);
    data.ds.resize(count);
    check(dmtlab_curve_breakpoints(curve, data.rs.data(), data.ds.data(), count));
    return data;
}

std::string level_field(const std::string& case_name, int levels) {
    int uses = 0;
    check(dmtlab_case_uses_levels(case_name.c_str(), &uses));
    return uses ? fmt_int(levels) : std::string();
}

double analytic_reference(const std::string& protocol, int m, int n, int levels, double r) {
    double value = 0.0;
    if (protocol == "no-feedback-csir") {
        check(dmtlab_g_closed(m, n, r, 1.0, &value));
    } else if (protocol == "perfect-quantized" || protocol == "tdd-noisy-training") {
        check(dmtlab_b_star(m, n, r, levels, &value));
    } else if (protocol == "noisy-quantized-fdd") {
        check(dmtlab_d_noisy_quantized(m, n, r, levels, &value));
    } else {
        die(kExitUsage, "unknown protocol name: " + protocol);
    }
    return value;
}

// ---- simulate/fit plumbing

struct SweepSpec {
    double start = 10.0;
    double stop = 30.0;
    double step = 5.0;

    std::vector<double> points() const {
        std::vector<double> snrs;
        for (double v = start; v <= stop + 1e-9; v += step) snrs.push_back(v);
        return snrs;
    }
};

SweepSpec parse_sweep(const std::string& text) {
    SweepSpec sweep;
    std::vector<double> parts;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const std::size_t colon = text.find(':', begin);
        const std::string token =
            text.substr(begin, colon == std::string::npos ? colon : colon - begin);
        double value = 0.0;
        const auto result =
            std::from_chars(token.data(), token.data() + token.size(), value);
        if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
            die(kExitUsage, "bad --snr-db component: '" + token + "'");
        }
        parts.push_back(value);
        if (colon == std::string::npos) break;
        begin = colon + 1;
    }
    if (parts.size() != 3) die(kExitUsage, "--snr-db expects start:stop:step");
    sweep.start = parts[0];
    sweep.stop = parts[1];
    sweep.step = parts[2];
    if (!(sweep.start < sweep.stop) || !(sweep.step > 0)) {
        die(kExitUsage, "--snr-db requires start < stop and step > 0");
    }
    if (sweep.points().size() < 3) die(kExitUsage, "--snr-db sweep needs at least 3 points");
    return sweep;
}

const std::vector<std::string> kSimulateColumns = {
    "protocol", "m",       "n",     "k",      "r",       "snr_db",
    "trials",   "outages", "p_out", "ci_low", "ci_high", "mean_power_ratio"};

const std::vector<std::string> kFitColumns = {
    "protocol", "m", "n", "k", "r", "points_used", "diversity_estimate",
    "standard_error", "analytic_reference"};

struct SimPoint {
    double snr_db = 0.0;
    dmtlab_sim_result result{};
};

std::vector<std::string> simulate_row(const std::string& protocol, int m, int n, int levels,
                                      double r, const SimPoint& point) {
    return {protocol,
            fmt_int(m),
            fmt_int(n),
            fmt_int(levels),
            fmt_double(r),
            fmt_double(point.snr_db),
            fmt_int(point.result.trials),
            fmt_int(point.result.outage_count),
            fmt_double(point.result.outage_probability),
            fmt_double(point.result.ci_low),
            fmt_double(point.result.ci_high),
            fmt_double(point.result.mean_power_ratio)};
}

struct FitOutput {
    double diversity = 0.0;
    double standard_error = 0.0;
    std::size_t points_used = 0;
    double reference = 0.0;
};

FitOutput run_fit(const std::string& protocol, int m, int n, int levels, double r,
                  const std::vector<double>& snr_db, const std::vector<double>& p_out,
                  const std::vector<std::uint64_t>& counts) {
    FitOutput fit;
    check(dmtlab_fit_diversity(snr_db.data(), p_out.data(), counts.data(), snr_db.size(),
                               &fit.diversity, &fit.standard_error, &fit.points_used));
    fit.reference = analytic_reference(protocol, m, n, levels, r);
    return fit;
}

std::vector<std::string> fit_row(const std::string& protocol, int m, int n, int levels,
                                 double r, const FitOutput& fit) {
    return {protocol,
            fmt_int(m),
            fmt_int(n),
            fmt_int(levels),
            fmt_double(r),
            fmt_int(fit.points_used),
            fmt_double(fit.diversity),
            fmt_double(fit.standard_error),
            fmt_double(fit.reference)};
}

json fit_json(const FitOutput& fit) {
    return json{{"points_used", fit.points_used},
                {"diversity_estimate", fit.diversity},
                {"standard_error", fit.standard_error},
                {"analytic_reference", fit.reference}};
}

// Minimal RFC-4180 reader for the fit command.
std::vector<std::string> split_csv_line(const std::string& line, bool& ok) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    ok = true;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            if (!field.empty()) {
                ok = false;
                return fields;
            }
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) ok = false;
    fields.push_back(field);
    return fields;
}

double parse_double_field(const std::string& text) {
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
        die(kExitParse, "malformed numeric field: '" + text + "'");
    }
    return value;
}

template <typename Int>
Int parse_int_field(const std::string& text) {
    Int value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
        die(kExitParse, "malformed integer field: '" + text + "'");
    }
    return value;
}

std::filesystem::path companion_fit_path(const std::string& out_path) {
    std::filesystem::path path(out_path);
    path.replace_extension(".fit.csv");
    return path;
}

// ---- commands

struct CommandContext {
    json cfg;
    std::string format;  // "csv" or "json"
    std::string out_path;
};

int cmd_point(const CommandContext& ctx, const std::string& case_name, int m, int n,
              int levels, double r) {
    double value = 0.0;
    int unbounded = 0;
    check(dmtlab_d_case(case_name.c_str(), m, n, levels, r, &value, &unbounded));

    OutputTarget target(ctx.out_path);
    const std::string k_field = level_field(case_name, levels);
    if (ctx.format == "json") {
        json record{{"case", case_name}, {"m", m},      {"n", n},
                    {"k", k_field.empty() ? json(nullptr) : json(levels)},
                    {"r", r},            {"d", json_value(value)}};
        json doc{{"meta", meta_block(std::nullopt)}, {"records", json::array({record})}};
        target.stream() << doc.dump(2) << '\n';
    } else {
        write_csv_row(target.stream(), {"case", "m", "n", "k", "r", "d"});
        write_csv_row(target.stream(), {case_name, fmt_int(m), fmt_int(n), k_field,
                                        fmt_double(r), fmt_double(value)});
    }
    target.finish();
    return kExitOk;
}

int cmd_curve(const CommandContext& ctx, const std::string& case_name, int m, int n,
              int levels, bool dense, std::optional<double> r_max) {
    CurveHandle handle;
    check(dmtlab_curve_create(case_name.c_str(), m, n, levels, 0, &handle.ptr));
    CurveData data = fetch_breakpoints(handle.ptr);

    const double domain_hi = data.rs.back();
    const double limit = r_max ? std::min(*r_max, domain_hi) : domain_hi;
    if (r_max && (*r_max <= 0.0)) die(kExitUsage, "--r-max must be positive");
    if (limit < domain_hi) {
        // Truncate the breakpoint list and close it with the value at the cut.
        double value = 0.0;
        check(dmtlab_curve_eval(handle.ptr, limit, &value));
        std::size_t keep = 0;
        while (keep < data.rs.size() && data.rs[keep] < limit - 1e-12) ++keep;
        data.rs.resize(keep);
        data.ds.resize(keep);
        data.rs.push_back(limit);
        data.ds.push_back(value);
    }

    std::vector<std::pair<double, double>> samples;
    if (dense) {
        samples.reserve(kDenseSamples);
        for (int i = 0; i < kDenseSamples; ++i) {
            const double r = limit * static_cast<double>(i) / static_cast<double>(kDenseSamples);
            double value = 0.0;
            check(dmtlab_curve_eval(handle.ptr, r, &value));
            samples.emplace_back(r, value);
        }
    }

    OutputTarget target(ctx.out_path);
    const std::string k_field = level_field(case_name, levels);
    if (ctx.format == "json") {
        json breakpoints = json::array();
        for (std::size_t i = 0; i < data.rs.size(); ++i) {
            breakpoints.push_back({{"r", data.rs[i]}, {"d", data.ds[i]}});
        }
        json doc{{"meta", meta_block(std::nullopt)},
                 {"case", case_name},
                 {"m", m},
                 {"n", n},
                 {"k", k_field.empty() ? json(nullptr) : json(levels)},
                 {"breakpoints", breakpoints}};
        if (dense) {
            json dense_rows = json::array();
            for (const auto& [r, d] : samples) dense_rows.push_back({{"r", r}, {"d", d}});
            doc["samples"] = dense_rows;
        }
        target.stream() << doc.dump(2) << '\n';
    } else {
        write_csv_row(target.stream(), {"case", "m", "n", "k", "r", "d"});
        for (std::size_t i = 0; i < data.rs.size(); ++i) {
            write_csv_row(target.stream(), {case_name, fmt_int(m), fmt_int(n), k_field,
                                            fmt_double(data.rs[i]), fmt_double(data.ds[i])});
        }
        for (const auto& [r, d] : samples) {
            write_csv_row(target.stream(), {case_name, fmt_int(m), fmt_int(n), k_field,
                                            fmt_double(r), fmt_double(d)});
        }
    }
    target.finish();
    return kExitOk;
}

int cmd_figure1(const CommandContext& ctx, int m, int n, int levels) {
    const std::string csv_path = ctx.out_path.empty() ? "figure1.csv" : ctx.out_path;
    std::filesystem::path manifest_path(csv_path);
    manifest_path.replace_extension(".json");

    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) die(kExitFileIo, "cannot open output file: " + csv_path);

    write_csv_row(csv, {"case", "m", "n", "k", "kind", "r", "d"});
    std::vector<std::string> finite_cases;
    std::vector<std::string> unbounded_cases;
    for (std::size_t index = 0; index < dmtlab_case_count(); ++index) {
        const std::string case_name = dmtlab_case_name(index);
        CurveHandle handle;
        const dmtlab_status status =
            dmtlab_curve_create(case_name.c_str(), m, n, levels, 0, &handle.ptr);
        if (status == DMTLAB_ERR_UNSUPPORTED_CASE) {
            unbounded_cases.push_back(case_name);
            continue;
        }
        check(status);
        finite_cases.push_back(case_name);
        const std::string k_field = level_field(case_name, levels);

        const CurveData data = fetch_breakpoints(handle.ptr);
        for (std::size_t i = 0; i < data.rs.size(); ++i) {
            write_csv_row(csv, {case_name, fmt_int(m), fmt_int(n), k_field, "breakpoint",
                                fmt_double(data.rs[i]), fmt_double(data.ds[i])});
        }
        const double r_hi = data.rs.back();
        for (int i = 0; i < kDenseSamples; ++i) {
            const double r = r_hi * static_cast<double>(i) / static_cast<double>(kDenseSamples);
            double value = 0.0;
            check(dmtlab_curve_eval(handle.ptr, r, &value));
            write_csv_row(csv, {case_name, fmt_int(m), fmt_int(n), k_field, "sample",
                                fmt_double(r), fmt_double(value)});
        }
    }
    csv.flush();
    if (!csv) die(kExitFileIo, "failed writing output file: " + csv_path);

    json manifest{{"meta", meta_block(std::nullopt)},
                  {"figure",
                   {{"m", m},
                    {"n", n},
                    {"k", levels},
                    {"csv", csv_path},
                    {"samples_per_curve", kDenseSamples},
                    {"finite_cases", finite_cases},
                    {"unbounded_cases", unbounded_cases}}}};
    std::ofstream manifest_out(manifest_path, std::ios::binary);
    if (!manifest_out) {
        die(kExitFileIo, "cannot open output file: " + manifest_path.string());
    }
    manifest_out << manifest.dump(2) << '\n';
    manifest_out.flush();
    if (!manifest_out) {
        die(kExitFileIo, "failed writing output file: " + manifest_path.string());
    }
    return kExitOk;
}

int cmd_table(const CommandContext& ctx, int m, int n, int levels, double r) {
    struct Row {
        std::string case_name;
        std::string characteristic;
        std::string k_field;
        double value;
        bool unbounded;
    };
    std::vector<Row> rows;
    for (std::size_t index = 0; index < dmtlab_case_count(); ++index) {
        Row row;
        row.case_name = dmtlab_case_name(index);
        const char* characteristic = nullptr;
        check(dmtlab_case_characteristic(row.case_name.c_str(), &characteristic));
        row.characteristic = characteristic;
        row.k_field = level_field(row.case_name, levels);
        int unbounded = 0;
        check(dmtlab_d_case(row.case_name.c_str(), m, n, levels, r, &row.value, &unbounded));
        row.unbounded = unbounded != 0;
        rows.push_back(std::move(row));
    }

    OutputTarget target(ctx.out_path);
    if (ctx.format == "json") {
        json records = json::array();
        for (const Row& row : rows) {
            records.push_back({{"case", row.case_name},
                               {"characteristic", row.characteristic},
                               {"m", m},
                               {"n", n},
                               {"k", row.k_field.empty() ? json(nullptr) : json(levels)},
                               {"r", r},
                               {"d", json_value(row.value)}});
        }
        json doc{{"meta", meta_block(std::nullopt)}, {"records", records}};
        target.stream() << doc.dump(2) << '\n';
    } else {
        write_csv_row(target.stream(), {"case", "characteristic", "m", "n", "k", "r", "d"});
        for (const Row& row : rows) {
            write_csv_row(target.stream(),
                          {row.case_name, row.characteristic, fmt_int(m), fmt_int(n),
                           row.k_field, fmt_double(r), fmt_double(row.value)});
        }
    }
    target.finish();
    return kExitOk;
}

int cmd_simulate(const CommandContext& ctx, const std::string& protocol, int m, int n,
                 int levels, double r, const SweepSpec& sweep, std::uint64_t trials,
                 std::uint64_t seed, int workers) {
    const std::vector<double> snrs = sweep.points();
    std::vector<SimPoint> points;
    points.reserve(snrs.size());
    for (double snr_db : snrs) {
        dmtlab_sim_spec spec{};
        spec.protocol = protocol.c_str();
        spec.m = m;
        spec.n = n;
        spec.levels = levels;
        spec.r = r;
        spec.snr_db = snr_db;
        spec.trials = trials;
        spec.seed = seed;
        spec.workers = workers;
        SimPoint point;
        point.snr_db = snr_db;
        check(dmtlab_estimate_outage(&spec, &point.result));
        points.push_back(point);
    }

    std::vector<double> fit_snr;
    std::vector<double> fit_pout;
    std::vector<std::uint64_t> fit_counts;
    for (const SimPoint& point : points) {
        fit_snr.push_back(point.snr_db);
        fit_pout.push_back(point.result.outage_probability);
        fit_counts.push_back(point.result.outage_count);
    }

    if (ctx.format == "json") {
        json rows = json::array();
        for (const SimPoint& point : points) {
            rows.push_back({{"snr_db", point.snr_db},
                            {"trials", point.result.trials},
                            {"outages", point.result.outage_count},
                            {"p_out", point.result.outage_probability},
                            {"ci_low", point.result.ci_low},
                            {"ci_high", point.result.ci_high},
                            {"mean_power_ratio", point.result.mean_power_ratio}});
        }
        json doc{{"meta", meta_block(seed)}, {"protocol", protocol}, {"m", m},
                 {"n", n},                   {"k", levels},          {"r", r},
                 {"workers", workers},       {"points", rows},       {"fit", nullptr}};
        FitOutput fit;
        bool fit_ok = true;
        try {
            fit = run_fit(protocol, m, n, levels, r, fit_snr, fit_pout, fit_counts);
        } catch (const CliError& e) {
            if (e.code != kExitInsufficientData) throw;
            fit_ok = false;
        }
        if (fit_ok) doc["fit"] = fit_json(fit);
        OutputTarget target(ctx.out_path);
        target.stream() << doc.dump(2) << '\n';
        target.finish();
        if (!fit_ok) die(kExitInsufficientData, "fewer than 3 sweep points are usable for the fit");
        return kExitOk;
    }

    OutputTarget target(ctx.out_path);
    write_csv_row(target.stream(), kSimulateColumns);
    for (const SimPoint& point : points) {
        write_csv_row(target.stream(), simulate_row(protocol, m, n, levels, r, point));
    }
    target.finish();

    FitOutput fit;
    try {
        fit = run_fit(protocol, m, n, levels, r, fit_snr, fit_pout, fit_counts);
    } catch (const CliError& e) {
        if (e.code != kExitInsufficientData) throw;
        die(kExitInsufficientData, "fewer than 3 sweep points are usable for the fit");
    }

    if (ctx.out_path.empty()) {
        std::cout << '\n';
        write_csv_row(std::cout, kFitColumns);
        write_csv_row(std::cout, fit_row(protocol, m, n, levels, r, fit));
    } else {
        const auto fit_path = companion_fit_path(ctx.out_path);
        std::ofstream fit_file(fit_path, std::ios::binary);
        if (!fit_file) die(kExitFileIo, "cannot open output file: " + fit_path.string());
        write_csv_row(fit_file, kFitColumns);
        write_csv_row(fit_file, fit_row(protocol, m, n, levels, r, fit));
        fit_file.flush();
        if (!fit_file) die(kExitFileIo, "failed writing output file: " + fit_path.string());
    }
    return kExitOk;
}

int cmd_fit(const CommandContext& ctx, const std::string& in_path) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) die(kExitFileIo, "cannot open input file: " + in_path);

    std::string line;
    if (!std::getline(in, line)) die(kExitParse, "input CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool ok = true;
    const auto header = split_csv_line(line, ok);
    if (!ok || header != kSimulateColumns) {
        die(kExitParse, "input CSV header does not match the simulate schema");
    }

    std::string protocol;
    int m = 0;
    int n = 0;
    int levels = 0;
    double r = 0.0;
    bool first = true;
    std::vector<double> snr_db;
    std::vector<double> p_out;
    std::vector<std::uint64_t> counts;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line, ok);
        if (!ok || fields.size() != kSimulateColumns.size()) {
            die(kExitParse, "malformed CSV row: '" + line + "'");
        }
        const std::string row_protocol = fields[0];
        const int row_m = parse_int_field<int>(fields[1]);
        const int row_n = parse_int_field<int>(fields[2]);
        const int row_k = parse_int_field<int>(fields[3]);
        const double row_r = parse_double_field(fields[4]);
        if (first) {
            protocol = row_protocol;
            m = row_m;
            n = row_n;
            levels = row_k;
            r = row_r;
            first = false;
        } else if (row_protocol != protocol || row_m != m || row_n != n || row_k != levels ||
                   row_r != r) {
            die(kExitParse, "input CSV mixes more than one simulation group");
        }
        snr_db.push_back(parse_double_field(fields[5]));
        p_out.push_back(parse_double_field(fields[8]));
        counts.push_back(parse_int_field<std::uint64_t>(fields[7]));
    }
    if (first) die(kExitParse, "input CSV has no data rows");

    FitOutput fit;
    try {
        fit = run_fit(protocol, m, n, levels, r, snr_db, p_out, counts);
    } catch (const CliError& e) {
        if (e.code == kExitUsage) die(kExitParse, e.message);
        throw;
    }

    OutputTarget target(ctx.out_path);
    if (ctx.format == "json") {
        json doc{{"meta", meta_block(std::nullopt)},
                 {"protocol", protocol},
                 {"m", m},
                 {"n", n},
                 {"k", levels},
                 {"r", r},
                 {"fit", fit_json(fit)}};
        target.stream() << doc.dump(2) << '\n';
    } else {
        write_csv_row(target.stream(), kFitColumns);
        write_csv_row(target.stream(), fit_row(protocol, m, n, levels, r, fit));
    }
    target.finish();
    return kExitOk;
}

std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diversity-multiplexing tradeoff toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON file with default option values");

    // Per-subcommand storage; merged with config defaults after parsing.
    struct {
        Merged<std::string> case_name{"case", std::nullopt};
        Merged<int> m{"m", std::nullopt};
        Merged<int> n{"n", std::nullopt};
        Merged<int> k{"k", 2};
        Merged<double> r{"r", std::nullopt};
        Merged<double> r_max{"r-max", std::nullopt};
        Merged<bool> dense{"dense", false};
        Merged<std::string> format{"format", std::string("csv")};
        Merged<std::string> out{"out", std::string()};
        Merged<std::string> protocol{"protocol", std::nullopt};
        Merged<std::string> snr{"snr-db", std::string("10:30:5")};
        Merged<std::uint64_t> trials{"trials", std::uint64_t{100000}};
        Merged<std::uint64_t> seed{"seed", std::uint64_t{0}};
        Merged<int> workers{"workers", std::nullopt};
        std::string fit_input;
    } args;

    auto add_common = [&](CLI::App* cmd, bool with_case) {
        cmd->add_option("--config", config_path, "JSON file with default option values");
        if (with_case) {
            args.case_name.attach(cmd->add_option("--case", args.case_name.flag_storage(),
                                                  "case name, e.g. csir or csir-hat-tq"));
        }
        args.m.attach(cmd->add_option("--m", args.m.flag_storage(), "transmit antennas"));
        args.n.attach(cmd->add_option("--n", args.n.flag_storage(), "receive antennas"));
        args.k.attach(cmd->add_option("--k", args.k.flag_storage(), "feedback power levels K"));
        args.format.attach(cmd->add_option("--format", args.format.flag_storage(),
                                           "output format: csv or json"));
        args.out.attach(
            cmd->add_option("--out", args.out.flag_storage(), "output file (default stdout)"));
    };

    CLI::App* point = app.add_subcommand("point", "diversity of one case at one r");
    add_common(point, true);
    args.r.attach(point->add_option("--r", args.r.flag_storage(), "multiplexing gain"));

    CLI::App* curve = app.add_subcommand("curve", "exact tradeoff curve of one case");
    add_common(curve, true);
    args.r_max.attach(
        curve->add_option("--r-max", args.r_max.flag_storage(), "truncate the curve at this r"));
    args.dense.attach(
        curve->add_flag("--dense", args.dense.flag_storage(), "also emit 201 dense samples"));

    CLI::App* figure1 =
        app.add_subcommand("figure1", "all finite curves plus a manifest of unbounded cases");
    add_common(figure1, false);

    CLI::App* table = app.add_subcommand("table", "all ten cases at one r");
    add_common(table, false);
    args.r.attach(table->add_option("--r", args.r.flag_storage(), "multiplexing gain"));

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo outage sweep with fit");
    add_common(simulate, false);
    args.protocol.attach(simulate->add_option(
        "--protocol", args.protocol.flag_storage(),
        "no-feedback-csir, perfect-quantized, noisy-quantized-fdd or tdd-noisy-training"));
    args.r.attach(simulate->add_option("--r", args.r.flag_storage(), "multiplexing gain"));
    args.snr.attach(simulate->add_option("--snr-db", args.snr.flag_storage(),
                                         "sweep start:stop:step in dB"));
    args.trials.attach(
        simulate->add_option("--trials", args.trials.flag_storage(), "trials per SNR point"));
    args.seed.attach(simulate->add_option("--seed", args.seed.flag_storage(), "RNG seed"));
    args.workers.attach(
        simulate->add_option("--workers", args.workers.flag_storage(), "worker thread count"));

    CLI::App* fit = app.add_subcommand("fit", "recompute the slope fit from a simulate CSV");
    fit->add_option("input", args.fit_input, "CSV produced by the simulate command")
        ->required();
    fit->add_option("--config", config_path, "JSON file with default option values");
    args.format.attach(
        fit->add_option("--format", args.format.flag_storage(), "output format: csv or json"));
    args.out.attach(
        fit->add_option("--out", args.out.flag_storage(), "output file (default stdout)"));

    const std::string pre_config = find_config_path(argc, argv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const json cfg = load_config(pre_config);
        CommandContext ctx;
        ctx.cfg = cfg;
        ctx.format = args.format.resolve(cfg).value_or("csv");
        if (ctx.format != "csv" && ctx.format != "json") {
            die(kExitUsage, "--format must be csv or json");
        }
        ctx.out_path = args.out.resolve(cfg).value_or("");

        if (point->parsed()) {
            return cmd_point(ctx, args.case_name.require(cfg), args.m.require(cfg),
                             args.n.require(cfg), args.k.require(cfg), args.r.require(cfg));
        }
        if (curve->parsed()) {
            return cmd_curve(ctx, args.case_name.require(cfg), args.m.require(cfg),
                             args.n.require(cfg), args.k.require(cfg),
                             args.dense.resolve(cfg).value_or(false),
                             args.r_max.resolve(cfg));
        }
        if (figure1->parsed()) {
            return cmd_figure1(ctx, args.m.resolve(cfg).value_or(2),
                               args.n.resolve(cfg).value_or(2), args.k.require(cfg));
        }
        if (table->parsed()) {
            return cmd_table(ctx, args.m.require(cfg), args.n.require(cfg), args.k.require(cfg),
                             args.r.require(cfg));
        }
        if (simulate->parsed()) {
            return cmd_simulate(ctx, args.protocol.require(cfg), args.m.require(cfg),
                                args.n.require(cfg), args.k.require(cfg), args.r.require(cfg),
                                parse_sweep(args.snr.require(cfg)), args.trials.require(cfg),
                                args.seed.require(cfg), resolve_workers(args.workers, cfg));
        }
        if (fit->parsed()) {
            return cmd_fit(ctx, args.fit_input);
        }
        die(kExitUsage, "no subcommand given");
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << '\n';
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
}
