#pragma once

// Structured verification output shared by the library and the CLI.

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fcg {

enum class ClaimStatus { pass, fail, skipped };
const char* to_string(ClaimStatus s);

struct Claim {
  std::string id;
  ClaimStatus status = ClaimStatus::pass;
  std::string detail;
  std::string witness;
  std::optional<double> seconds;  // only filled when timing is requested
};

struct VerificationReport {
  std::string title;
  /// Named results (count, hdim, ...), in insertion order.
  std::vector<std::pair<std::string, std::string>> values;
  std::vector<Claim> claims;

  Claim& check(std::string id, bool ok, std::string detail, std::string witness = {});
  void skip(std::string id, std::string detail);
  void set(std::string key, std::string value);
  std::optional<std::string> value(const std::string& key) const;
  const Claim* claim(const std::string& id) const;
  bool passed() const;
  /// Appends claims and values of `other`, prefixing ids.
  void merge(const VerificationReport& other, const std::string& prefix = {});
};

enum class OutputFormat { text, kv, json };
std::string render(const VerificationReport& report, OutputFormat format);

}  // namespace fcg
