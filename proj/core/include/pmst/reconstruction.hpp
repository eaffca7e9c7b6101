#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmst/ensemble.hpp"
#include "pmst/qmat.hpp"

namespace pmst {

/// The explicit chain of robustness constants propagating the input errors
/// delta_o (overlap deviation) and delta_p (impurity) down to per-family
/// trace-distance bounds. Quantities that become undefined at the given noise
/// are +infinity with the corresponding feasibility flag cleared.
struct DeltaChain {
  double delta_o = 0.0;
  double delta_p = 0.0;
  int dim = 0;
  std::vector<double> f;

  double dz_prime = 0.0;
  double dz = 0.0;
  double dx_prime = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dxx = 0.0;
  double dyy = 0.0;
  std::vector<double> dpsi;

  bool cond1 = false;  // dz_prime < 1/(D-1)^2
  bool cond3 = false;  // discriminant of the Y system nonnegative
  bool cond5 = false;  // discrimination-certificate refutation applies
  double cond5_lhs = 0.0;

  bool all_feasible() const { return cond1 && cond3 && cond5; }
};

/// Evaluates every recurrence verbatim. Requires f_j > D-1 for all j.
DeltaChain delta_chain(double delta_o, double delta_p, int dim,
                       const std::vector<double>& f);

struct BasisRecovery {
  Matrix unitary;                  // maps the recovered basis onto |k>
  std::vector<double> bounds;      // per-state trace-distance bound
  double purified_overlap = 0.0;   // max off-diagonal overlap after purification
};

/// Step 1: purify the D prepared Z states, orthonormalize them with the
/// pretty good measurement Gamma G^{-1/2}, and return the unitary carrying
/// the result onto the computational basis.
BasisRecovery recover_z_basis(const std::vector<DensityMatrix>& z_states,
                              const Tolerances& tol = Tolerances::defaults());

/// Step 2: the diagonal unitary V |Z_k> = e^{-i sum_{j<k} theta_j} |Z_k>
/// making <Z_k|X''_k> and <Z_{k+1}|X''_k> real nonnegative.
Matrix fix_x_phases(const std::vector<DensityMatrix>& x_states,
                    const Tolerances& tol = Tolerances::defaults());

/// Steps 3-5: decides Y_k vs conj(Y_k) per k from the purified Y states and
/// enforces a consistent pattern via the YY overlaps. Returns the conjugation
/// flag; throws StageFailure on an inconsistent pattern.
bool detect_conjugation(const std::vector<DensityMatrix>& y_states,
                        const std::vector<DensityMatrix>& yy_states,
                        const DeltaChain& chain,
                        const Tolerances& tol = Tolerances::defaults());

struct StateCheck {
  std::string label;
  double distance = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct ReconstructionReport {
  SymOp symmetry;
  DeltaChain chain;
  std::vector<StateCheck> checks;
  bool all_feasible = false;
  bool all_within_bounds = false;
  double max_distance = 0.0;
};

struct ReconstructOptions {
  std::size_t num_targets = 0;
  std::optional<std::vector<double>> f;  // default: 1/min_k tr(psi_j Z_k)
};

/// Runs the full pipeline on `prepared`, where `reference` lists the target
/// states followed by the canonical fiducial set (matching order). The chain
/// is fed the measured delta_o / delta_p of the actual inputs.
ReconstructionReport reconstruct(
    const std::vector<DensityMatrix>& prepared,
    const std::vector<PureState>& reference, const ReconstructOptions& options,
    const Tolerances& tol = Tolerances::defaults());

}  // namespace pmst
