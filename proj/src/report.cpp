#include "fcg/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace fcg {

namespace {

std::string seconds_string(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

// kv values are single-line; escape newlines and backslashes.
std::string kv_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\n')
      out += "\\n";
    else if (c == '\\')
      out += "\\\\";
    else
      out += c;
  }
  return out;
}

}  // namespace

const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::pass: return "pass";
    case ClaimStatus::fail: return "fail";
    case ClaimStatus::skipped: return "skipped";
  }
  return "?";
}

Claim& VerificationReport::check(std::string id, bool ok, std::string detail,
                                 std::string witness) {
  claims.push_back({std::move(id), ok ? ClaimStatus::pass : ClaimStatus::fail,
                    std::move(detail), std::move(witness), std::nullopt});
  return claims.back();
}

void VerificationReport::skip(std::string id, std::string detail) {
  claims.push_back({std::move(id), ClaimStatus::skipped, std::move(detail), {}, std::nullopt});
}

void VerificationReport::set(std::string key, std::string value) {
  for (auto& kv : values)
    if (kv.first == key) {
      kv.second = std::move(value);
      return;
    }
  values.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> VerificationReport::value(const std::string& key) const {
  for (const auto& kv : values)
    if (kv.first == key) return kv.second;
  return std::nullopt;
}

const Claim* VerificationReport::claim(const std::string& id) const {
  for (const Claim& c : claims)
    if (c.id == id) return &c;
  return nullptr;
}

bool VerificationReport::passed() const {
  return std::none_of(claims.begin(), claims.end(),
                      [](const Claim& c) { return c.status == ClaimStatus::fail; });
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (const auto& [k, v] : other.values) set(prefix + k, v);
  for (Claim c : other.claims) {
    c.id = prefix + c.id;
    claims.push_back(std::move(c));
  }
}

std::string render(const VerificationReport& report, OutputFormat format) {
  std::ostringstream out;
  switch (format) {
    case OutputFormat::text: {
      if (!report.title.empty()) out << report.title << '\n';
      for (const auto& [k, v] : report.values) out << "  " << k << ": " << v << '\n';
      for (const Claim& c : report.claims) {
        out << "  [" << to_string(c.status) << "] " << c.id;
        if (!c.detail.empty()) out << "  " << c.detail;
        if (c.seconds) out << "  (" << seconds_string(*c.seconds) << " s)";
        out << '\n';
        if (!c.witness.empty()) out << "      witness: " << c.witness << '\n';
      }
      out << "  result: " << (report.passed() ? "pass" : "fail") << '\n';
      break;
    }
    case OutputFormat::kv: {
      if (!report.title.empty()) out << "title=" << kv_escape(report.title) << '\n';
      for (const auto& [k, v] : report.values) out << k << '=' << kv_escape(v) << '\n';
      for (const Claim& c : report.claims) {
        out << "claim." << c.id << ".status=" << to_string(c.status) << '\n';
        if (!c.detail.empty()) out << "claim." << c.id << ".detail=" << kv_escape(c.detail) << '\n';
        if (!c.witness.empty())
          out << "claim." << c.id << ".witness=" << kv_escape(c.witness) << '\n';
        if (c.seconds) out << "claim." << c.id << ".timing=" << seconds_string(*c.seconds) << '\n';
      }
      out << "result=" << (report.passed() ? "pass" : "fail") << '\n';
      break;
    }
    case OutputFormat::json: {
      nlohmann::ordered_json j;
      j["title"] = report.title;
      j["values"] = nlohmann::ordered_json::object();
      for (const auto& [k, v] : report.values) j["values"][k] = v;
      j["claims"] = nlohmann::ordered_json::array();
      for (const Claim& c : report.claims) {
        nlohmann::ordered_json jc;
        jc["id"] = c.id;
        jc["status"] = to_string(c.status);
        jc["detail"] = c.detail;
        jc["witness"] = c.witness;
        if (c.seconds) jc["timing"] = *c.seconds;
        j["claims"].push_back(std::move(jc));
      }
      j["result"] = report.passed() ? "pass" : "fail";
      out << j.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

}  // namespace fcg
