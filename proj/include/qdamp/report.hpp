#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qdamp {

enum class CheckStatus { kPass, kFail, kSkipped };

struct CheckRecord {
  std::string name;
  // The identity being checked, written out.
  std::string equation;
  double residual = 0.0;
  double tolerance = 0.0;
  std::optional<std::size_t> margin;
  std::vector<std::size_t> dims;
  CheckStatus status = CheckStatus::kPass;
  // Set for skipped checks and for notes attached to a result.
  std::string reason;

  bool passed() const { return status == CheckStatus::kPass; }
};

class VerificationReport {
 public:
  // Status is derived: pass iff residual <= tolerance (and residual is finite).
  void add(std::string name, std::string equation, double residual, double tolerance,
           std::optional<std::size_t> margin, std::vector<std::size_t> dims,
           std::string note = {});
  void add_skipped(std::string name, std::string equation, std::vector<std::size_t> dims,
                   std::string reason);
  void merge(const VerificationReport& other);

  const std::vector<CheckRecord>& records() const noexcept { return records_; }
  const CheckRecord& at(const std::string& name) const;
  bool all_passed() const;  // skipped checks do not count as failures
  std::size_t count(CheckStatus status) const;

  // Replace every tolerance and recompute statuses.
  void override_tolerance(double tolerance);
  void sort_by_name();

  nlohmann::json to_json() const;

 private:
  std::vector<CheckRecord> records_;
};

std::string to_string(CheckStatus status);

}  // namespace qdamp
