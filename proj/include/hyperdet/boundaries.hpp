#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace hyperdet {

enum class BoundaryCase { HPC, KnownRates, UnknownRates };

enum class Verdict { Undetectable, DetectableDegree, DetectableScan, DetectableBoth, Indeterminate };

std::string to_string(BoundaryCase c);
std::string to_string(Verdict v);

// Finite-sample position of an instance relative to the detection boundary.
//
// b1 is the degree-test ratio and b2 the scan ratio; both compare against 1
// at the sharp constant. Asymptotic side conditions are reported in
// `diagnostics` and never change the verdict.
struct BoundaryReport {
  BoundaryCase boundary_case = BoundaryCase::KnownRates;
  double b1 = 0.0;
  double b2 = 0.0;
  std::optional<double> p0_prime;
  std::optional<double> hpc_threshold;
  Verdict verdict = Verdict::Indeterminate;
  std::map<std::string, double> diagnostics;
};

inline constexpr double kDefaultMargin = 1.0;

// (m! log_{1/p0} N)^{1/(m-1)} with log_{1/p0} N = ln N / ln(1/p0).
double hpc_threshold(std::uint32_t num_vertices, std::uint32_t arity, double p0);

// DetectableDegree iff b1 > margin, DetectableScan iff b2 > 1 (both gives
// DetectableBoth), Undetectable iff b1 < 1/margin and b2 < 1, else
// Indeterminate.
Verdict classify_verdict(double b1, double b2, double margin = kDefaultMargin);

// Known p0, p1:
//   b1 = ((p1 - p0)/sqrt(p0)) (n^2/N)^{m/2}
//   b2 = (n-1)...(n-m+1) H_{p0}(p1) / (m! ln(N/n))
BoundaryReport known_boundary(std::uint32_t num_vertices, std::uint32_t arity,
                              std::uint32_t planted_size, double p0, double p1,
                              double margin = kDefaultMargin);

// Unknown rates: the same ratios at the calibrated background p0', with the
// degree exponent (m+1)/4. Diagnostics carry the n^2-vs-N regime indicator
// and the (2m-1)/4 extension ratio.
BoundaryReport unknown_boundary(std::uint32_t num_vertices, std::uint32_t arity,
                                std::uint32_t planted_size, double p0, double p1,
                                double margin = kDefaultMargin);

// log N / n^{m-1} and log(1 v 1/(n^{m-1} p)) / log(N/n). Small values
// suggest the asymptotic regime applies; advisory only.
std::map<std::string, double> regime_diagnostics(std::uint32_t num_vertices,
                                                 std::uint32_t arity,
                                                 std::uint32_t planted_size, double rate);

}  // namespace hyperdet
