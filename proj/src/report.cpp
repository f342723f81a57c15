#include "dbang/report.hpp"

namespace dbang {

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

void CheckReport::fail(const std::string& cex) {
    if (verdict != Verdict::Fail) counterexample = cex;
    verdict = Verdict::Fail;
}

void CheckReport::inconclude(const std::string& why) {
    if (verdict == Verdict::Pass) {
        verdict = Verdict::Inconclusive;
        reason = why;
    }
}

void CheckReport::absorb(const CheckReport& item) {
    switch (item.verdict) {
    case Verdict::Pass: ++passed; break;
    case Verdict::Fail:
        ++failed;
        fail(item.counterexample);
        break;
    case Verdict::Inconclusive:
        ++inconclusive;
        inconclude(item.reason);
        break;
    }
}

nlohmann::json CheckReport::to_json() const {
    nlohmann::json d = details;
    d["passed"] = passed;
    d["failed"] = failed;
    d["inconclusive"] = inconclusive;
    if (!counterexample.empty()) d["counterexample"] = counterexample;
    if (!reason.empty()) d["reason"] = reason;
    return nlohmann::json{{"check", check}, {"params", params}, {"verdict", verdict_name(verdict)}, {"details", d}};
}

}  // namespace dbang
