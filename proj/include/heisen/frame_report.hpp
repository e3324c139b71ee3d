#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace heisen {

/// Symmetric truncation box: k in alpha*[-k_max,k_max], l in beta*[-l_max,l_max],
/// m in [-m_max,m_max], and optionally j in [j_min, j_max].
struct Truncation {
    int k_max = 16;
    int l_max = 16;
    int m_max = 16;
    std::optional<int> j_min;
    std::optional<int> j_max;
};

struct TestResult {
    std::string id;
    double norm2 = 0;
    double frame_sum = 0;
    double ratio = 0;
};

/// Ratios for one lambda representative of a Gabor field.
struct FiberResult {
    double lambda = 0;
    double fiber_norm = 0;  // || |lambda|^{1/2} g(lambda, .) ||^2
    double min_ratio = 0;
    double max_ratio = 0;
    bool norm_ok = true;
};

struct ShellResult {
    int j = 0;
    double frame_sum = 0;  // summed over the bank
};

struct FrameReport {
    std::string kind;
    double min_ratio = 0;
    double max_ratio = 0;
    double mean_ratio = 0;
    std::vector<TestResult> tests;
    std::vector<FiberResult> per_fiber;
    std::vector<ShellResult> per_j;
    Truncation truncation;
    double tol = 0;
    bool pass = false;
    std::string error;

    /// Fills the statistics and the verdict from `tests` and `per_fiber`.
    void finalize() {
        if (tests.empty() && error.empty()) error = "empty test bank";
        double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0;
        for (const auto& t : tests) {
            lo = std::min(lo, t.ratio);
            hi = std::max(hi, t.ratio);
            sum += t.ratio;
        }
        min_ratio = tests.empty() ? 0 : lo;
        max_ratio = tests.empty() ? 0 : hi;
        mean_ratio = tests.empty() ? 0 : sum / static_cast<double>(tests.size());
        pass = error.empty() && min_ratio >= 1 - tol && max_ratio <= 1 + tol;
        for (const auto& f : per_fiber) pass = pass && f.norm_ok;
    }
};

/// FNV-1a over a canonical string, for reproducibility stamps.
inline std::string config_hash(const std::string& canonical) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 15];
    return out;
}

inline nlohmann::json to_json(const Truncation& t) {
    nlohmann::json j{{"k_max", t.k_max}, {"l_max", t.l_max}, {"m_max", t.m_max}};
    if (t.j_min) j["j_min"] = *t.j_min;
    if (t.j_max) j["j_max"] = *t.j_max;
    return j;
}

inline nlohmann::json to_json(const FrameReport& r) {
    nlohmann::json tests = nlohmann::json::array();
    for (const auto& t : r.tests)
        tests.push_back({{"id", t.id}, {"norm2", t.norm2}, {"frame_sum", t.frame_sum}, {"ratio", t.ratio}});
    nlohmann::json j{{"kind", r.kind},
                     {"min_ratio", r.min_ratio},
                     {"max_ratio", r.max_ratio},
                     {"mean_ratio", r.mean_ratio},
                     {"tests", tests},
                     {"truncation", to_json(r.truncation)},
                     {"tol", r.tol},
                     {"pass", r.pass}};
    if (!r.per_fiber.empty()) {
        auto& pf = j["per_fiber"] = nlohmann::json::array();
        for (const auto& f : r.per_fiber)
            pf.push_back({{"lambda", f.lambda},
                          {"fiber_norm", f.fiber_norm},
                          {"min_ratio", f.min_ratio},
                          {"max_ratio", f.max_ratio},
                          {"norm_ok", f.norm_ok}});
    }
    if (!r.per_j.empty()) {
        auto& pj = j["per_j"] = nlohmann::json::array();
        for (const auto& s : r.per_j) pj.push_back({{"j", s.j}, {"frame_sum", s.frame_sum}});
    }
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

}  // namespace heisen
