#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmst/ensemble.hpp"
#include "pmst/qmat.hpp"
#include "pmst/reconstruction.hpp"
#include "pmst/witness.hpp"

namespace pmst {

/// Scenario file contents: states (kets or density matrices; complex numbers
/// as [re, im] pairs everywhere), optional weights, optional POVMs, optional
/// seed. Parsing failures name the offending field.
struct ScenarioPayload {
  int dimension = 0;
  std::vector<DensityMatrix> states;           // every state, in file order
  std::vector<std::optional<PureState>> kets;  // set where the file had a ket
  std::vector<double> weights;                 // empty when absent
  std::vector<Povm> povms;
  std::optional<std::uint64_t> seed;

  /// All states as kets; fails if any state was given as a matrix.
  std::vector<PureState> require_kets() const;
  WeightedEnsemble as_ensemble(bool completed,
                               const Tolerances& tol = Tolerances::defaults()) const;

  static ScenarioPayload from_ensemble(const WeightedEnsemble& e);
};

std::string scenario_to_json(const ScenarioPayload& s);
ScenarioPayload scenario_from_json(const std::string& text);

std::string behavior_to_json(const Behavior& b);
Behavior behavior_from_json(const std::string& text);

std::string delta_chain_to_json(const DeltaChain& c);
DeltaChain delta_chain_from_json(const std::string& text);

std::string report_to_json(const ReconstructionReport& r);
ReconstructionReport report_from_json(const std::string& text);

// file helpers
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit hex digest, used to stamp result files with their inputs.
std::string content_digest(std::string_view bytes);

}  // namespace pmst
