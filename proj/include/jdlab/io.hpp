#pragma once

// File formats.
//
//   Matrix:     {"rows": n, "cols": n, "entries": [[re, im], ...]}   row-major
//   Ensemble:   {"m": m, "n": n, "mats": [Matrix, ...]}
//   Diagonals:  {"m": m, "n": n, "d": [[[re, im], ...], ...]}       d[k][i] = d_i(k)
//   Setup:      {"n", "m", "seed" (or null), "lambda", "a": [re, im],
//                "tpos": [i, j] (1-based), "real_only", "U", "diag", "R": [Matrix, ...]}
//   Factors:    {"n": n, "factors": [{"i": i, "j": j, "a": [re, im]}, ...]}  1-based
//   Sweep CSV:  lambda,d,y_min,y_pred,r_pred,converged
//
// Doubles are written in shortest round-trip form, so re-reading a file
// reproduces every entry exactly.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "json.hpp"
#include "jdlab/ensemble.hpp"
#include "jdlab/matrix.hpp"
#include "jdlab/solver.hpp"

namespace jdlab::io {

using json = nlohmann::json;

json to_json(const Mat& a);
Mat mat_from_json(const json& j);

json to_json(const Ensemble& e);
Ensemble ensemble_from_json(const json& j);

json to_json(const DiagonalSet& d);
DiagonalSet diagonal_set_from_json(const json& j);

json to_json(const PerturbationSetup& s);
PerturbationSetup setup_from_json(const json& j);

json factors_to_json(std::size_t n, std::span<const Transvection> factors);
std::vector<Transvection> factors_from_json(const json& j);

void write_sweep_csv(std::ostream& os, const SweepReport& report);
json sweep_summary(const SweepReport& report);

json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline. Throws Error when the file cannot be written.
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace jdlab::io
