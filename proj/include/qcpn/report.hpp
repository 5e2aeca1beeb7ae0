#ifndef QCPN_REPORT_HPP
#define QCPN_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcpn/scalar.hpp"

namespace qcpn {

/// Outcome of one verification.  A passing report carries no witness; a
/// failing one always does.
struct VerificationReport {
  std::string check;
  int n = 0;
  std::optional<int> k;
  bool pass = false;
  std::optional<ScalarRat> coefficient;
  std::optional<std::string> witness;
  std::vector<std::string> notes;
  double wall_ms = 0.0;

  static VerificationReport ok(std::string check, int n, std::optional<int> k = std::nullopt) {
    VerificationReport r;
    r.check = std::move(check);
    r.n = n;
    r.k = k;
    r.pass = true;
    return r;
  }
  static VerificationReport failed(std::string check, int n, std::optional<int> k,
                                   std::string witness) {
    VerificationReport r;
    r.check = std::move(check);
    r.n = n;
    r.k = k;
    r.pass = false;
    r.witness = witness.empty() ? std::string("(unspecified)") : std::move(witness);
    return r;
  }

  /// JSON line; `with_time` is off for byte-identical output across runs.
  nlohmann::json to_json(bool with_time = false) const {
    nlohmann::json j{{"check", check}, {"n", n}, {"status", pass ? "pass" : "fail"}};
    if (k) j["k"] = *k;
    if (coefficient) {
      j["coefficient"] = coefficient->to_text();
      j["coefficient_json"] = coefficient->to_json();
    }
    if (witness) j["witness"] = *witness;
    if (!notes.empty()) j["notes"] = notes;
    if (with_time) j["wall_ms"] = wall_ms;
    return j;
  }
};

}  // namespace qcpn

#endif  // QCPN_REPORT_HPP
