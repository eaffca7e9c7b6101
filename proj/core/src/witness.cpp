#include "pmst/witness.hpp"

#include <cmath>
#include <limits>

namespace pmst {

Behavior::Behavior(int x, int y, int b, std::vector<double> table,
                   const Tolerances& tol)
    : x_(x), y_(y), b_(b), table_(std::move(table)) {
  if (x_ < 1 || y_ < 1 || b_ < 2) throw InvalidInput("behavior shape invalid");
  if (table_.size() != static_cast<std::size_t>(x_) * y_ * b_)
    throw InvalidInput("behavior table size mismatch");
  for (double v : table_)
    if (v < -tol.behavior_normalization)
      throw InvalidInput("behavior has a negative probability");
  for (int xx = 0; xx < x_; ++xx) {
    for (int yy = 0; yy < y_; ++yy) {
      double s = 0.0;
      for (int bb = 0; bb < b_; ++bb) s += p(xx, yy, bb);
      if (std::abs(s - 1.0) > tol.behavior_normalization)
        throw InvalidInput("behavior cell (" + std::to_string(xx) + "," +
                           std::to_string(yy) + ") is not normalized");
    }
  }
}

std::size_t Behavior::index(int x, int y, int b) const {
  if (x < 0 || x >= x_ || y < 0 || y >= y_ || b < 0 || b >= b_)
    throw InvalidInput("behavior index out of range");
  return (static_cast<std::size_t>(x) * y_ + y) * b_ + b;
}

int PairIndexer::y_of(int i, int j) const {
  if (!(i > j && j >= 0 && i < n)) throw InvalidInput("pair index requires i > j");
  // pairs with second index < j come first
  return j * (n - 1) - j * (j - 1) / 2 + (i - j - 1);
}

std::pair<int, int> PairIndexer::pair_of(int y) const {
  if (y < 0 || y >= count()) throw InvalidInput("pair label out of range");
  int j = 0;
  int block = n - 1;
  while (y >= block) {
    y -= block;
    ++j;
    --block;
  }
  return {j + 1 + y, j};
}

StateWitness build_state_witness(const WeightedEnsemble& e) {
  if (!e.completed)
    throw InvalidInput("state witness needs a completed ensemble");
  const int n = e.size();
  StateWitness w;
  w.ensemble = e;
  w.pairs = PairIndexer{n};
  w.coeff = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      // pure reference states: ||psi_i - psi_j||_1 = 2 sqrt(1 - tr psi_i psi_j)
      const double t = overlap(e.states[i], e.states[j]);
      w.coeff(i, j) =
          e.weights[i] * e.weights[j] * 2.0 * std::sqrt(std::max(0.0, 1.0 - t));
    }
  }
  w.w_star = 1.0 - 1.0 / e.dim;
  return w;
}

Behavior ideal_behavior(const WeightedEnsemble& e) {
  if (!e.completed)
    throw InvalidInput("ideal behavior needs a completed ensemble");
  const int n = e.size();
  const PairIndexer pairs{n};
  std::vector<double> table(static_cast<std::size_t>(n) * pairs.count() * 2, 0.0);
  std::vector<DensityMatrix> rho;
  rho.reserve(n);
  for (const auto& s : e.states) rho.emplace_back(s);
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) {
      const int y = pairs.y_of(i, j);
      const Povm m = helstrom(rho[i], rho[j]);
      for (int x = 0; x < n; ++x) {
        const double p2 =
            (rho[x].matrix() * m.element(1).matrix()).trace().real();
        table[(static_cast<std::size_t>(x) * pairs.count() + y) * 2 + 0] =
            1.0 - p2;
        table[(static_cast<std::size_t>(x) * pairs.count() + y) * 2 + 1] = p2;
      }
    }
  }
  return Behavior(n, pairs.count(), 2, std::move(table));
}

double eval_witness(const StateWitness& w, const Behavior& p) {
  const int n = w.pairs.n;
  if (p.X() < n || p.Y() < w.pairs.count() || p.B() < 2)
    throw InvalidInput("behavior is smaller than the witness scenario");
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      const int y = w.pairs.y_of(i, j);
      total += w.coeff(i, j) * (p.p(i, y, 1) - p.p(j, y, 1));
    }
  }
  return total;
}

CVector cvec(const std::vector<DensityMatrix>& rho,
             const std::vector<double>& weights) {
  if (rho.size() != weights.size())
    throw InvalidInput("one weight per state required");
  for (double a : weights)
    if (!(a > 0.0)) throw InvalidInput("weights must be positive");
  const int n = static_cast<int>(rho.size());
  CVector out;
  out.c = Eigen::MatrixXd::Zero(n, n);
  out.d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      const double aa = std::sqrt(weights[i] * weights[j]);
      const double td = trace_distance(rho[i], rho[j]);
      const double ov = overlap(rho[i], rho[j]);
      out.c(i, j) = aa * td;
      out.d(i, j) = 2.0 * aa * std::sqrt(std::max(0.0, 1.0 - ov));
      out.c_norm_sq += out.c(i, j) * out.c(i, j);
      out.d_norm_sq += out.d(i, j) * out.d(i, j);
    }
  }
  return out;
}

OverlapBounds robust_overlap_bounds(double epsilon,
                                    const std::vector<double>& weights,
                                    int dim) {
  if (epsilon < 0.0 || epsilon > 1.0 - 1.0 / dim)
    throw InvalidInput("witness deficit out of range [0, 1 - 1/D]");
  if (weights.size() < 2) throw InvalidInput("need at least two weights");
  double sum_sq = 0.0;
  double smallest = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
  for (double a : weights) {
    if (!(a > 0.0)) throw InvalidInput("weights must be positive");
    sum_sq += a * a;
    if (a < smallest) {
      second = smallest;
      smallest = a;
    } else if (a < second) {
      second = a;
    }
  }
  OverlapBounds out;
  out.delta_p = 2.0 * epsilon / sum_sq;
  out.delta_o = std::sqrt(8.0 * epsilon) / std::sqrt(smallest * second);
  return out;
}

}  // namespace pmst
