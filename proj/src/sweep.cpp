#include <cmath>
#include <ostream>

#include "hyperdet/error.hpp"
#include "hyperdet/experiments.hpp"

namespace hyperdet {

namespace {

void apply_axis(SweepRecord& cell, const std::string& name, double value) {
  auto as_count = [&](const char* what) {
    if (!(value >= 0.0) || value != std::floor(value) || value > 4294967295.0) {
      throw ConfigError(std::string("sweep axis ") + what + " needs nonnegative integers");
    }
    return static_cast<std::uint32_t>(value);
  };
  if (name == "N") cell.num_vertices = as_count("N");
  else if (name == "n") cell.planted_size = as_count("n");
  else if (name == "p0") cell.p0 = value;
  else if (name == "p1") cell.p1 = value;
  else throw ConfigError("unknown sweep axis '" + name + "' (expected N, n, p0 or p1)");
}

}  // namespace

std::vector<SweepRecord> sweep(const SweepSpec& spec, const RunOptions& options) {
  for (const SweepAxis& axis : spec.axes) {
    if (axis.values.empty()) throw ConfigError("sweep axis '" + axis.name + "' has no values");
    SweepRecord probe;
    apply_axis(probe, axis.name, axis.values.front());
  }
  std::size_t cells = 1;
  for (const SweepAxis& axis : spec.axes) cells *= axis.values.size();

  std::vector<SweepRecord> records;
  records.reserve(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    SweepRecord cell;
    cell.num_vertices = spec.num_vertices;
    cell.arity = spec.arity;
    cell.planted_size = spec.planted_size;
    cell.p0 = spec.p0;
    cell.p1 = spec.p1;
    // Mixed-radix decode with the first axis most significant.
    std::size_t rest = c;
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      const SweepAxis& axis = spec.axes[a];
      apply_axis(cell, axis.name, axis.values[rest % axis.values.size()]);
      rest /= axis.values.size();
    }
    try {
      if (spec.boundary == BoundaryCase::UnknownRates) {
        cell.boundary = unknown_boundary(cell.num_vertices, cell.arity, cell.planted_size,
                                         cell.p0, cell.p1);
      } else {
        cell.boundary = known_boundary(cell.num_vertices, cell.arity, cell.planted_size,
                                       cell.p0, cell.p1);
      }
      cell.p0_prime = cell.boundary->p0_prime;
      const NullModel null{cell.num_vertices, cell.arity, cell.p0};
      PlantedModel alt;
      alt.num_vertices = cell.num_vertices;
      alt.arity = cell.arity;
      alt.planted_size = cell.planted_size;
      alt.p0 = cell.p0;
      alt.p1 = cell.p1;
      if (spec.boundary == BoundaryCase::UnknownRates) alt.p0 = *cell.p0_prime;
      RunOptions cell_options = options;
      cell_options.cell = c;
      cell_options.null_p0_grid = spec.null_p0_grid;
      cell.risk = estimate_risk(spec.test, null, alt, spec.reps, spec.seed, cell_options);
    } catch (const Error& e) {
      cell.error = e.what();
    }
    records.push_back(std::move(cell));
  }
  return records;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << "N,m,n,p0,p1,p0_prime,b1,b2,verdict,test,threshold,type1,se1,type2,se2,risk,reps,seed\n";
  for (const SweepRecord& r : records) {
    out << r.num_vertices << ',' << r.arity << ',' << r.planted_size << ',' << format_real(r.p0)
        << ',' << format_real(r.p1) << ',';
    if (r.p0_prime) out << format_real(*r.p0_prime);
    out << ',';
    if (r.boundary && r.error.empty()) {
      out << format_real(r.boundary->b1) << ',' << format_real(r.boundary->b2) << ','
          << to_string(r.boundary->verdict);
    } else {
      out << ",,Error";
    }
    out << ',';
    if (r.risk) {
      const RiskEstimate& k = *r.risk;
      out << k.test << ',' << format_real(k.threshold_used) << ',' << format_real(k.type1) << ','
          << format_real(k.se_type1) << ',' << format_real(k.type2) << ','
          << format_real(k.se_type2) << ',' << format_real(k.risk) << ',' << k.reps << ','
          << k.seed;
    } else {
      out << ",,,,,,,,";
    }
    out << '\n';
  }
}

}  // namespace hyperdet
