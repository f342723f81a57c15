#pragma once

#include <chrono>
#include <string>

#include <nlohmann/json.hpp>

namespace dbang {

enum class Verdict { Pass, Fail, Inconclusive };

std::string verdict_name(Verdict v);

// Result of one property check, or of a sweep aggregating many.
struct CheckReport {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    Verdict verdict = Verdict::Pass;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t inconclusive = 0;
    std::string counterexample;  // set on Fail
    std::string reason;          // set on Inconclusive
    nlohmann::json details = nlohmann::json::object();
    double wall_time = 0.0;

    void fail(const std::string& cex);
    void inconclude(const std::string& why);
    // Fold a per-item report into a sweep.
    void absorb(const CheckReport& item);
    nlohmann::json to_json() const;
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace dbang
