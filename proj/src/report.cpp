#include "qdamp/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdamp {

namespace {

CheckStatus judge(double residual, double tolerance) {
  return (std::isfinite(residual) && residual <= tolerance) ? CheckStatus::kPass
                                                            : CheckStatus::kFail;
}

}  // namespace

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kSkipped:
      return "skipped";
  }
  return "unknown";
}

void VerificationReport::add(std::string name, std::string equation, double residual,
                             double tolerance, std::optional<std::size_t> margin,
                             std::vector<std::size_t> dims, std::string note) {
  CheckRecord r;
  r.name = std::move(name);
  r.equation = std::move(equation);
  r.residual = residual;
  r.tolerance = tolerance;
  r.margin = margin;
  r.dims = std::move(dims);
  r.status = judge(residual, tolerance);
  r.reason = std::move(note);
  records_.push_back(std::move(r));
}

void VerificationReport::add_skipped(std::string name, std::string equation,
                                     std::vector<std::size_t> dims, std::string reason) {
  CheckRecord r;
  r.name = std::move(name);
  r.equation = std::move(equation);
  r.residual = std::nan("");
  r.tolerance = std::nan("");
  r.dims = std::move(dims);
  r.status = CheckStatus::kSkipped;
  r.reason = std::move(reason);
  records_.push_back(std::move(r));
}

void VerificationReport::merge(const VerificationReport& other) {
  records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

const CheckRecord& VerificationReport::at(const std::string& name) const {
  for (const auto& r : records_) {
    if (r.name == name) return r;
  }
  throw std::out_of_range("VerificationReport: no check named '" + name + "'");
}

bool VerificationReport::all_passed() const {
  return std::none_of(records_.begin(), records_.end(),
                      [](const CheckRecord& r) { return r.status == CheckStatus::kFail; });
}

std::size_t VerificationReport::count(CheckStatus status) const {
  return static_cast<std::size_t>(std::count_if(
      records_.begin(), records_.end(), [&](const CheckRecord& r) { return r.status == status; }));
}

void VerificationReport::override_tolerance(double tolerance) {
  for (auto& r : records_) {
    if (r.status == CheckStatus::kSkipped) continue;
    r.tolerance = tolerance;
    r.status = judge(r.residual, tolerance);
  }
}

void VerificationReport::sort_by_name() {
  std::stable_sort(records_.begin(), records_.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& r : records_) {
    nlohmann::json j;
    j["name"] = r.name;
    j["equation"] = r.equation;
    const bool skipped = r.status == CheckStatus::kSkipped;
    j["residual"] = skipped ? nlohmann::json(nullptr) : nlohmann::json(r.residual);
    j["tolerance"] = skipped ? nlohmann::json(nullptr) : nlohmann::json(r.tolerance);
    j["margin"] = r.margin ? nlohmann::json(*r.margin) : nlohmann::json(nullptr);
    j["dims"] = r.dims;
    j["pass"] = r.status == CheckStatus::kPass;
    j["status"] = to_string(r.status);
    if (!r.reason.empty()) j["reason"] = r.reason;
    checks.push_back(std::move(j));
  }
  nlohmann::json out;
  out["checks"] = std::move(checks);
  out["summary"] = {{"passed", count(CheckStatus::kPass)},
                    {"failed", count(CheckStatus::kFail)},
                    {"skipped", count(CheckStatus::kSkipped)},
                    {"all_passed", all_passed()}};
  return out;
}

}  // namespace qdamp
