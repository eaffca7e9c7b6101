#include "pmst/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pmst {

std::vector<PureState> sic_family(double t) {
  const double s2 = std::numbers::sqrt2;
  const double offsets[3] = {0.0, 2.0 * std::numbers::pi / 3.0,
                             -2.0 * std::numbers::pi / 3.0};
  const int cycles[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  std::vector<PureState> out;
  out.reserve(9);
  for (double off : offsets) {
    for (const auto& ab : cycles) {
      Vector v = Vector::Zero(3);
      v[ab[0]] = 1.0 / s2;
      v[ab[1]] = std::exp(Complex(0.0, t + off)) / s2;
      out.emplace_back(std::move(v));
    }
  }
  return out;
}

InvariantProfile bargmann_profile(const std::vector<PureState>& states,
                                  const Tolerances& tol) {
  const int n = static_cast<int>(states.size());
  if (n < 3) throw InvalidInput("profile needs at least three states");
  InvariantProfile out;
  out.phases.reserve(n * (n - 1) * (n - 2) / 6);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const Complex z = states[i].amplitudes().dot(states[j].amplitudes()) *
                          states[j].amplitudes().dot(states[k].amplitudes()) *
                          states[k].amplitudes().dot(states[i].amplitudes());
        if (std::abs(z) < tol.triple_modulus_floor) {
          ++out.undefined;
        } else {
          out.phases.push_back(std::abs(std::arg(z)));
        }
      }
    }
  }
  std::sort(out.phases.begin(), out.phases.end());
  return out;
}

namespace {

int span_rank(const std::vector<PureState>& states) {
  const int d = states.front().dim();
  Matrix m(d, static_cast<int>(states.size()));
  for (std::size_t k = 0; k < states.size(); ++k)
    m.col(static_cast<int>(k)) = states[k].amplitudes();
  Eigen::JacobiSVD<Matrix> svd(m);
  const double smax = svd.singularValues()[0];
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-10 * std::max(smax, 1.0)) ++rank;
  return rank;
}

}  // namespace

EmbeddedQubitPair embedded_qubit_pair(double b21, double b22, double b31,
                                      double b32, double beta,
                                      const Tolerances& tol) {
  if (b21 < 0.0 || b22 < 0.0 || b31 < 0.0 || b32 < 0.0)
    throw InvalidInput("amplitudes must be nonnegative");
  if (std::abs(b21 * b21 + b22 * b22 - 1.0) > tol.behavior_normalization ||
      std::abs(b31 * b31 + b32 * b32 - 1.0) > tol.behavior_normalization)
    throw InvalidInput("rows must be normalized");
  if (b22 < tol.phase_floor)
    throw InvalidInput("b22 = 0 leaves the lifted third state undefined");

  const Complex inner = b21 * b31 + b22 * b32 * std::exp(Complex(0.0, beta));
  const double t32 = (std::abs(inner) - b21 * b31) / b22;
  double t33_sq = 1.0 - b31 * b31 - t32 * t32;
  if (t33_sq < -1e-12)
    throw InvalidInput("t33 turned imaginary; input outside the valid range");
  // rounding dust below working precision counts as the degenerate case,
  // otherwise sqrt would lift it above the span-rank cutoff
  if (t33_sq < 1e-14) t33_sq = 0.0;

  EmbeddedQubitPair out;
  Vector v1 = Vector::Zero(3), v2 = Vector::Zero(3), v3 = Vector::Zero(3);
  v1[0] = 1.0;
  v2[0] = b21;
  v2[1] = b22;
  v3[0] = b31;
  v3[1] = b32 * std::exp(Complex(0.0, beta));
  out.embedded = {PureState(v1), PureState(v2), PureState(v3)};

  Vector w3 = Vector::Zero(3);
  w3[0] = b31;
  w3[1] = t32;
  w3[2] = std::sqrt(t33_sq);
  out.lifted = {PureState(v1), PureState(v2), PureState(w3)};

  out.embedded_span = span_rank(out.embedded);
  out.lifted_span = span_rank(out.lifted);
  return out;
}

const char* to_string(Verdict v) {
  return v == Verdict::NotEquivalent ? "not-equivalent" : "inconclusive";
}

Verdict wigner_violation_check(const std::vector<PureState>& a,
                               const std::vector<PureState>& b,
                               double tol_value, const Tolerances& tol) {
  if (a.size() != b.size() || a.empty())
    throw InvalidInput("sets must have equal, nonzero size");
  if (a.front().dim() != b.front().dim())
    throw InvalidInput("sets must have equal dimension");

  bool gram_match = true;
  for (std::size_t i = 0; i < a.size() && gram_match; ++i)
    for (std::size_t j = i + 1; j < a.size() && gram_match; ++j)
      gram_match = std::abs(overlap(a[i], a[j]) - overlap(b[i], b[j])) <= tol_value;

  if (a.size() >= 3 && gram_match) {
    const InvariantProfile pa = bargmann_profile(a, tol);
    const InvariantProfile pb = bargmann_profile(b, tol);
    bool profiles_differ = pa.undefined != pb.undefined;
    if (!profiles_differ) {
      for (std::size_t i = 0; i < pa.phases.size(); ++i) {
        if (std::abs(pa.phases[i] - pb.phases[i]) > tol.profile_match) {
          profiles_differ = true;
          break;
        }
      }
    }
    if (profiles_differ) return Verdict::NotEquivalent;
  }
  if (span_rank(a) != span_rank(b)) return Verdict::NotEquivalent;
  return Verdict::Inconclusive;
}

}  // namespace pmst
