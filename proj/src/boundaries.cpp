#include "hyperdet/boundaries.hpp"

#include <cmath>

#include "hyperdet/combinatorics.hpp"
#include "hyperdet/error.hpp"
#include "hyperdet/models.hpp"

namespace hyperdet {

std::string to_string(BoundaryCase c) {
  switch (c) {
    case BoundaryCase::HPC: return "HPC";
    case BoundaryCase::KnownRates: return "KnownRates";
    case BoundaryCase::UnknownRates: return "UnknownRates";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Undetectable: return "Undetectable";
    case Verdict::DetectableDegree: return "DetectableDegree";
    case Verdict::DetectableScan: return "DetectableScan";
    case Verdict::DetectableBoth: return "DetectableBoth";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

double hpc_threshold(std::uint32_t num_vertices, std::uint32_t arity, double p0) {
  if (!(p0 > 0.0 && p0 < 1.0)) throw DomainError("hpc_threshold requires p0 in (0,1)");
  if (num_vertices < 2) throw DomainError("hpc_threshold requires N >= 2");
  if (arity < 2) throw DomainError("hpc_threshold requires m >= 2");
  const double log_base = std::log(static_cast<double>(num_vertices)) / std::log(1.0 / p0);
  return std::pow(static_cast<double>(factorial(arity)) * log_base, 1.0 / (arity - 1.0));
}

Verdict classify_verdict(double b1, double b2, double margin) {
  const bool degree = b1 > margin;
  const bool scan = b2 > 1.0;
  if (degree && scan) return Verdict::DetectableBoth;
  if (degree) return Verdict::DetectableDegree;
  if (scan) return Verdict::DetectableScan;
  if (b1 < 1.0 / margin && b2 < 1.0) return Verdict::Undetectable;
  return Verdict::Indeterminate;
}

namespace {

void check_boundary_inputs(std::uint32_t num_vertices, std::uint32_t arity,
                           std::uint32_t planted_size, double p0, double p1) {
  if (arity < 2) throw DomainError("boundary requires m >= 2");
  if (planted_size <= arity) throw DomainError("boundary requires n > m");
  if (planted_size >= num_vertices) throw DomainError("boundary requires n < N (log(N/n) > 0)");
  if (!(p0 > 0.0 && p0 < 1.0)) throw DomainError("boundary requires p0 in (0,1)");
  if (!(p1 >= p0 && p1 <= 1.0)) throw DomainError("boundary requires p0 <= p1 <= 1");
}

double degree_ratio(double p_background, double p1, double n, double big_n, double exponent) {
  return (p1 - p_background) / std::sqrt(p_background) * std::pow(n * n / big_n, exponent);
}

double scan_ratio(std::uint32_t num_vertices, std::uint32_t arity, std::uint32_t planted_size,
                  double p_background, double p1) {
  const double factors = static_cast<double>(falling_factorial(planted_size - 1, arity - 1));
  const double log_ratio = std::log(static_cast<double>(num_vertices) / planted_size);
  return factors * kl_bernoulli(p_background, p1) /
         (static_cast<double>(factorial(arity)) * log_ratio);
}

}  // namespace

BoundaryReport known_boundary(std::uint32_t num_vertices, std::uint32_t arity,
                              std::uint32_t planted_size, double p0, double p1, double margin) {
  check_boundary_inputs(num_vertices, arity, planted_size, p0, p1);
  const double n = planted_size;
  const double big_n = num_vertices;
  BoundaryReport report;
  report.boundary_case = p1 == 1.0 ? BoundaryCase::HPC : BoundaryCase::KnownRates;
  report.b1 = degree_ratio(p0, p1, n, big_n, arity / 2.0);
  report.b2 = scan_ratio(num_vertices, arity, planted_size, p0, p1);
  report.verdict = classify_verdict(report.b1, report.b2, margin);
  report.hpc_threshold = hpc_threshold(num_vertices, arity, p0);
  try {
    report.p0_prime = calibrated_background(num_vertices, arity, planted_size, p0, p1);
  } catch (const CalibrationInfeasibleError&) {
  }
  report.diagnostics = regime_diagnostics(num_vertices, arity, planted_size, p0);
  report.diagnostics["N^m_p0"] = std::pow(big_n, arity) * p0;
  report.diagnostics["n^m_p1"] = std::pow(n, arity) * p1;
  report.diagnostics["margin"] = margin;
  return report;
}

BoundaryReport unknown_boundary(std::uint32_t num_vertices, std::uint32_t arity,
                                std::uint32_t planted_size, double p0, double p1,
                                double margin) {
  check_boundary_inputs(num_vertices, arity, planted_size, p0, p1);
  const double p0p = calibrated_background(num_vertices, arity, planted_size, p0, p1);
  const double n = planted_size;
  const double big_n = num_vertices;
  const double m = arity;
  BoundaryReport report;
  report.boundary_case = BoundaryCase::UnknownRates;
  report.p0_prime = p0p;
  report.b1 = degree_ratio(p0p, p1, n, big_n, (m + 1.0) / 4.0);
  report.b2 = scan_ratio(num_vertices, arity, planted_size, p0p, p1);
  report.verdict = classify_verdict(report.b1, report.b2, margin);
  report.diagnostics = regime_diagnostics(num_vertices, arity, planted_size, p0p);
  const double n2 = n * n;
  report.diagnostics["n2_over_N"] = n2 / big_n;
  // 1 selects the loose 2-path test (n^2 >= N), 0 the tight 2-path test.
  report.diagnostics["prefer_hl2pt"] = n2 >= big_n ? 1.0 : 0.0;
  report.diagnostics["extension_ratio"] = degree_ratio(p0p, p1, n, big_n, (2.0 * m - 1.0) / 4.0);
  report.diagnostics["p0_N^m_minus_2n"] = p0 * std::pow(big_n, m) - 2.0 * n;
  report.diagnostics["N^(m-1)_p0"] = std::pow(big_n, m - 1.0) * p0;
  report.diagnostics["margin"] = margin;
  return report;
}

std::map<std::string, double> regime_diagnostics(std::uint32_t num_vertices,
                                                 std::uint32_t arity,
                                                 std::uint32_t planted_size, double rate) {
  if (planted_size >= num_vertices) throw DomainError("regime diagnostics require n < N");
  const double n = planted_size;
  const double big_n = num_vertices;
  const double spread = std::pow(n, arity - 1.0);
  std::map<std::string, double> out;
  out["logN_over_n^(m-1)"] = std::log(big_n) / spread;
  out["sparsity_ratio"] = std::log(std::max(1.0, 1.0 / (spread * rate))) / std::log(big_n / n);
  return out;
}

}  // namespace hyperdet
