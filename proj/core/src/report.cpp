#include <cmath>

#include "json.hpp"

#include "crsharp/inequalities.hpp"

namespace crsharp::inequalities {

VerificationReport::VerificationReport(std::string suite_) : suite(std::move(suite_)) {}

void VerificationReport::set_parameter(const std::string& key, double value) {
    for (auto& [k, v] : parameters) {
        if (k == key) {
            v = value;
            return;
        }
    }
    parameters.emplace_back(key, value);
}

void VerificationReport::record(const std::string& label, double residual, bool ok, bool keep) {
    ++cases_total;
    if (!ok) ++cases_failed;
    if (residual > worst_residual || std::isnan(residual)) worst_residual = residual;
    if ((!ok || keep) && details.size() < kMaxDetails) details.push_back({label, residual, ok});
}

void VerificationReport::merge(const VerificationReport& other) {
    cases_total += other.cases_total;
    cases_failed += other.cases_failed;
    if (other.worst_residual > worst_residual || std::isnan(other.worst_residual))
        worst_residual = other.worst_residual;
    for (const CaseDetail& d : other.details) {
        if (details.size() >= kMaxDetails) break;
        details.push_back({other.suite + ": " + d.label, d.residual, d.passed});
    }
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["suite"] = suite;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : parameters) {
        if (std::abs(v) < 9.0e15 && v == std::floor(v))
            params[k] = static_cast<long long>(v);
        else
            params[k] = v;
    }
    doc["parameters"] = std::move(params);
    doc["cases_total"] = cases_total;
    doc["cases_failed"] = cases_failed;
    doc["worst_residual"] = worst_residual;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const CaseDetail& d : details)
        rows.push_back({{"label", d.label}, {"residual", d.residual}, {"passed", d.passed}});
    doc["details"] = std::move(rows);
    return doc.dump(2);
}

}  // namespace crsharp::inequalities
