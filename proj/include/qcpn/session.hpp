#ifndef QCPN_SESSION_HPP
#define QCPN_SESSION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcpn/calculus.hpp"
#include "qcpn/report.hpp"

namespace qcpn {

struct SessionConfig {
  int n = 1;
  int k_max = 4;
  int oracle_degree = 3;
  std::size_t term_limit = 2'000'000;
  std::uint64_t seed = 20240601;
  std::string cache_dir;  // empty: no cache
  ActionAnsatz ansatz = ActionAnsatz::PrintedRows;
  int oracle_pairs = 100;
  int hopf_words = 50;
  int factoring_pairs = 200;
  int rewrite_triples = 200;

  /// Throws std::invalid_argument on out-of-range settings.
  void validate() const;
};

using ReportSink = std::function<void(const VerificationReport&)>;

/// Scalar identities: conversion, q-Pascal, geometric sums.
std::vector<VerificationReport> scalar_suite(int q_step);

/// Oracle certification of the presentation, the Z-grading, the rewriting
/// invariants and normal-form / oracle agreement on random pairs.
std::vector<VerificationReport> presentation_suite(const Algebra& alg, const SessionConfig& cfg);

/// U_q relations on V and V (x) V; counit, antipode and coproduct identities.
std::vector<VerificationReport> hopf_suite(const Algebra& alg, const SessionConfig& cfg);

/// Loads the action table from the cache or solves it.  On an inconsistent
/// system the report names the relation and no table is returned.
struct TableSetup {
  std::optional<ActionTable> table;
  std::vector<VerificationReport> reports;
};
TableSetup setup_action_table(const Algebra& alg, const SessionConfig& cfg);

/// Factoring, derivation law, submodule, projection and unit round trips.
std::vector<VerificationReport> calculus_suite(const Calculus& calc, const SessionConfig& cfg);

/// The line-bundle checks for k = 1..k_max.
std::vector<VerificationReport> curvature_suite(const Calculus& calc, const SessionConfig& cfg);

/// Runs everything in order; returns the process exit code
/// (0 all pass, 1 some check failed, 2 resource limit or inconsistent table).
int run_verify_all(const SessionConfig& cfg, const ReportSink& sink);

/// Wraps a check with wall-clock timing.
VerificationReport timed(const std::function<VerificationReport()>& f);

}  // namespace qcpn

#endif  // QCPN_SESSION_HPP
