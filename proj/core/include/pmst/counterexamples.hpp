#pragma once

#include <string>
#include <vector>

#include "pmst/qmat.hpp"

namespace pmst {

/// Sorted multiset of |arg tr(psi_i psi_j psi_k)| over triples i < j < k.
/// Invariant under global unitaries and (as absolute values) conjugation.
struct InvariantProfile {
  std::vector<double> phases;  // ascending, in [0, pi]
  int undefined = 0;           // triples whose product modulus is negligible
};

/// The one-parameter qutrit SIC family: nine states
/// (|a> + e^{i(t + s)} |b>)/sqrt2 with s in {0, 2pi/3, -2pi/3} and (a, b)
/// cycling over (1,2), (2,3), (3,1). Each family satisfies
/// sum_k psi_k / 3 = I and tr(psi_i psi_j) = 1/4 (|<psi_i|psi_j>| = 1/2)
/// for every pair at every t.
std::vector<PureState> sic_family(double t);

InvariantProfile bargmann_profile(const std::vector<PureState>& states,
                                  const Tolerances& tol = Tolerances::defaults());

struct EmbeddedQubitPair {
  std::vector<PureState> embedded;  // qubit ensemble inside C^3
  std::vector<PureState> lifted;    // overlap-matched, generically 3D
  int embedded_span = 0;
  int lifted_span = 0;
};

/// Three qubit states |1>, b21|1>+b22|2>, b31|1>+b32 e^{i beta}|2> together
/// with an overlap-matched partner whose third state leaves the qubit span.
EmbeddedQubitPair embedded_qubit_pair(double b21, double b22, double b31,
                                      double b32, double beta,
                                      const Tolerances& tol = Tolerances::defaults());

enum class Verdict { NotEquivalent, Inconclusive };
const char* to_string(Verdict v);

/// "not-equivalent" when the Gram entries agree within tol_value but the
/// sorted invariant profiles differ beyond it, or the span ranks differ;
/// "inconclusive" otherwise (matching profiles never prove equivalence).
Verdict wigner_violation_check(const std::vector<PureState>& a,
                               const std::vector<PureState>& b,
                               double tol_value,
                               const Tolerances& tol = Tolerances::defaults());

}  // namespace pmst
