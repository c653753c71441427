#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "beurling/config.hpp"
#include "beurling/geometry.hpp"
#include "beurling/grid.hpp"

namespace beurling {

struct RatioRow {
  std::string experiment;
  std::string test_id;
  int depth = 0;
  double input = 0.0;
  double output = 0.0;
  double ratio = 0.0;  // output / input, or 0 when input <= 1e-12
  std::string verdict;
};

struct DepthSummary {
  int depth = 0;
  double max_ratio = 0.0;
};

struct RatioReport {
  std::string experiment;
  std::vector<RatioRow> rows;
  std::vector<DepthSummary> summary;
  std::map<std::string, bool> verdicts;

  bool verdict(const std::string& name) const;
  double max_ratio() const;
};

/// Header "experiment,test_id,depth,input_seminorm,output_seminorm,ratio,verdict",
/// one line per row, then one "summary" line per depth and one "flag" line per
/// verdict (ratio column 1 or 0).
void write_csv(std::ostream& out, const RatioReport& report);
void write_csv_file(const std::string& path, const RatioReport& report);

struct TestFunction {
  std::string id;
  std::function<Complex(Complex)> eval;
};

/// Deterministic in (cfg.seed, index). h sets the smoothing width of the
/// indicator-like members.
std::vector<TestFunction> make_test_family(const ExperimentConfig& cfg, const std::string& family,
                                           double h);

double ratio_of(double output, double input);

/// Campanato sweeps of f and B_Ω f at depths J−1, J, J+1. The input column is
/// the full norm (seminorm + sup over Ω).
RatioReport run_invariance_experiment(const ExperimentConfig& cfg);

/// Λ^ω and Λ^ω̃ estimates of B_Ω f on pairs near ∂Ω, per pair-distance band
/// [2^{-b}, 2^{1-b}), b = 4..7, so distances 2^{-7}..2^{-3}. The depth column holds b.
RatioReport run_lift_experiment(const ExperimentConfig& cfg);

/// Bloch collar suprema of Bχ_Ω at n (input column) and 2n (output column).
RatioReport run_bloch_experiment(const ExperimentConfig& cfg);

/// K / (V + S) over a holomorphic family: K Campanato, V Bloch, S sup norm.
RatioReport run_embedding_experiment(const ExperimentConfig& cfg);

/// Whole-plane Campanato value of the extension over the domain value.
RatioReport run_extension_experiment(const ExperimentConfig& cfg);

struct DecompositionReport {
  Square q;
  double reconstruction_residue = 0.0;
  double omega_side = 0.0;
  /// (1/|Q|) ∫_{Q∩Ω} |B_Ω f_j − (B_Ω f_j)_{Q|Ω}|, j = 1,2,3.
  double local[3] = {0.0, 0.0, 0.0};
  double normalized[3] = {0.0, 0.0, 0.0};
  double ring_tail = 0.0;
  double ring_tail_normalized = 0.0;
};

/// f = f₁ + f₂ + f₃ around Q for member `test_index` of the configured family.
DecompositionReport proof_decomposition_check(const ExperimentConfig& cfg, const Square& q,
                                              int test_index = 0);

/// proof_decomposition_check over 20 random squares per family member.
RatioReport run_decomposition_experiment(const ExperimentConfig& cfg, int squares = 20);

RatioReport run_experiment(const std::string& name, const ExperimentConfig& cfg);

}  // namespace beurling
