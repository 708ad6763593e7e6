#pragma once

#include <string_view>

#include "hyperdet/experiments.hpp"

namespace hyperdet {

// JSON sweep configuration:
//
//   {
//     "fixed":  {"N": 20, "m": 3, "n": 10, "p0": 0.2, "p1": 0.5},
//     "axes":   [{"name": "p1", "values": [0.22, 0.5, 0.8]}],
//     "test":   "HST",
//     "policy": {"kind": "MCQuantile", "alpha": 0.05, "reps": 200},
//     "reps":   200,
//     "seed":   7
//   }
//
// Optional keys: "policy" (default_policy of the test when absent), "scan_n", "scan_mode" (exact|greedy|auto), "restarts",
// "budget", "boundary" (known|unknown), "null_p0_grid", "star_denominator"
// (N-m! | N-m). "axes" may also be an object {"p1": [...]}, in file order.
// Policy kinds: MCQuantile{alpha,reps}, Fixed{t}, AnalyticScanKnown{eta?},
// AnalyticScanUnknown, GaussianQuantile{alpha}.
SweepSpec sweep_spec_from_json(std::string_view text);

}  // namespace hyperdet
