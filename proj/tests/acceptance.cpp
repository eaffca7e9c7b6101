// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exit code is the number of failed criteria. Two checks are known to sit
// beyond reach of the published constants they pin (see the lines printed
// for criteria 6 and 10): the 4-decimal discrimination certificate bottoms
// out at -4.8e-6 against a -1e-6 gate, and the t=pi triple-product profile
// does contain pi-valued phases. Both are asserted as stated, not loosened.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "pmst/certificates.hpp"
#include "pmst/counterexamples.hpp"
#include "pmst/ensemble.hpp"
#include "pmst/povm_selftest.hpp"
#include "pmst/random.hpp"
#include "pmst/reconstruction.hpp"
#include "pmst/tomography.hpp"
#include "pmst/wigner_qubit.hpp"
#include "pmst/witness.hpp"

using namespace pmst;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

WeightedEnsemble random_completed(int d, int m, Rng& rng) {
  std::vector<PureState> states;
  for (int i = 0; i < m; ++i) states.push_back(random_pure_state(d, rng));
  return complete_ensemble(states);
}

Behavior realization(const WeightedEnsemble& e,
                     const std::vector<DensityMatrix>& rho,
                     const std::vector<Povm>& pair_povms) {
  const int n = e.size();
  const PairIndexer pairs{n};
  std::vector<double> table(static_cast<std::size_t>(n) * pairs.count() * 2);
  for (int y = 0; y < pairs.count(); ++y) {
    for (int x = 0; x < n; ++x) {
      const double p2 =
          (rho[x].matrix() * pair_povms[y].element(1).matrix()).trace().real();
      table[(static_cast<std::size_t>(x) * pairs.count() + y) * 2 + 0] =
          1.0 - p2;
      table[(static_cast<std::size_t>(x) * pairs.count() + y) * 2 + 1] = p2;
    }
  }
  return Behavior(n, pairs.count(), 2, std::move(table));
}

// ---------------------------------------------------------------- criterion 1
void criterion_1() {
  Rng rng(1001);
  int bad_saturation = 0;
  int bad_soundness = 0;
  for (int d = 2; d <= 5; ++d) {
    for (int trial = 0; trial < 200; ++trial) {
      const WeightedEnsemble e =
          random_completed(d, 1 + static_cast<int>(rng.bits() % 5), rng);
      const StateWitness w = build_state_witness(e);
      if (std::abs(eval_witness(w, ideal_behavior(e)) - (1.0 - 1.0 / d)) >
          1e-9)
        ++bad_saturation;
    }
    for (int trial = 0; trial < 250; ++trial) {
      const WeightedEnsemble e =
          random_completed(d, 1 + static_cast<int>(rng.bits() % 4), rng);
      const StateWitness w = build_state_witness(e);
      const int n = e.size();
      std::vector<DensityMatrix> rho;
      std::vector<Povm> povms;
      for (int x = 0; x < n; ++x) rho.push_back(random_density_matrix(d, rng));
      const PairIndexer pairs{n};
      for (int y = 0; y < pairs.count(); ++y)
        povms.push_back(random_povm(d, 2, rng));
      if (eval_witness(w, realization(e, rho, povms)) > w.w_star + 1e-9)
        ++bad_soundness;
    }
  }
  report(1, bad_saturation == 0 && bad_soundness == 0,
         fmt("witness maximum 1-1/D: %d saturation misses, %d soundness "
             "violations (800 + 1000 trials, D=2..5, tol 1e-9)",
             bad_saturation, bad_soundness));
}

// ---------------------------------------------------------------- criterion 2
void criterion_2() {
  Rng rng(1002);
  int violations = 0;
  int trials = 0;
  for (int d = 2; d <= 5; ++d) {
    for (double p : {1e-5, 1e-4}) {
      for (int trial = 0; trial < 50; ++trial) {
        ++trials;
        const WeightedEnsemble e =
            random_completed(d, 1 + static_cast<int>(rng.bits() % 4), rng);
        const StateWitness w = build_state_witness(e);
        const int n = e.size();
        std::vector<DensityMatrix> rho;
        for (const auto& s : e.states)
          rho.emplace_back(HermitianOperator(
              Matrix((1.0 - p) * s.projector().matrix() +
                     p * Matrix::Identity(d, d) / d)));
        std::vector<Povm> povms;
        const PairIndexer pairs{n};
        povms.reserve(pairs.count());
        for (int j = 0; j < n; ++j)
          for (int i = j + 1; i < n; ++i) povms.push_back(helstrom(rho[i], rho[j]));
        // reorder into y order
        std::vector<Povm> ordered(povms.size(), Povm{});
        int idx = 0;
        for (int j = 0; j < n; ++j)
          for (int i = j + 1; i < n; ++i) ordered[pairs.y_of(i, j)] = povms[idx++];
        const double eps =
            std::max(0.0, w.w_star - eval_witness(w, realization(e, rho, ordered)));
        const auto bounds = robust_overlap_bounds(eps, e.weights, d);
        for (int i = 0; i < n; ++i) {
          if (1.0 - purity(rho[i]) > bounds.delta_p + 1e-12) ++violations;
          for (int j = 0; j < i; ++j) {
            const double dev =
                std::abs(overlap(rho[i], rho[j]) -
                         overlap(DensityMatrix(e.states[i]),
                                 DensityMatrix(e.states[j])));
            if (dev > bounds.delta_o + 1e-12) ++violations;
          }
        }
      }
    }
  }
  report(2, violations == 0,
         fmt("overlap/impurity domination under depolarizing p in {1e-5,1e-4}: "
             "%d violations over %d trials (D=2..5)",
             violations, trials));
}

// ---------------------------------------------------------------- criterion 3
void criterion_3() {
  Rng rng(1003);
  int wrong = 0;
  int total = 0;
  for (int d = 3; d <= 6; ++d) {
    for (int trial = 0; trial < 400; ++trial) {
      ++total;
      const bool anti = trial % 2 == 1;
      std::vector<PureState> refs;
      {
        std::vector<PureState> targets;
        const int m = 1 + static_cast<int>(rng.bits() % 3);
        for (int i = 0; i < m; ++i) targets.push_back(random_pure_state(d, rng));
        refs = randomize_basis(targets, rng.bits()).states;
        for (const auto& s : fiducial_set(d).all()) refs.push_back(s);
      }
      const SymOp hidden{haar_unitary(d, rng), anti};
      std::vector<DensityMatrix> prepared;
      prepared.reserve(refs.size());
      for (const auto& s : refs) prepared.push_back(hidden.apply(DensityMatrix(s)));
      const std::size_t m = refs.size() - (5 * d - 6);
      const ReconstructionReport r = reconstruct(prepared, refs, {m, std::nullopt});
      if (r.symmetry.conjugate != anti || r.max_distance >= 1e-8) ++wrong;
    }
  }
  report(3, wrong == 0,
         fmt("zero-noise reconstruction, D=3..6, 200 unitary + 200 "
             "anti-unitary images each: %d/%d failed (tol 1e-8)",
             wrong, total));
}

// ---------------------------------------------------------------- criterion 4
void criterion_4() {
  Rng rng(1004);
  const int d = 3;
  const double p = 1e-6;
  int violations = 0;
  int feasible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PureState> refs =
        randomize_basis({random_pure_state(d, rng)}, rng.bits()).states;
    for (const auto& s : fiducial_set(d).all()) refs.push_back(s);
    const SymOp hidden{haar_unitary(d, rng), trial % 2 == 1};
    std::vector<DensityMatrix> prepared;
    for (const auto& s : refs) {
      const Matrix img = hidden.apply(DensityMatrix(s)).matrix();
      prepared.emplace_back(HermitianOperator(Matrix(
          (1.0 - p) * img + p * Matrix::Identity(d, d) / d)));
    }
    const ReconstructionReport r = reconstruct(prepared, refs, {1, std::nullopt});
    if (r.all_feasible) {
      ++feasible;
      if (!r.all_within_bounds) ++violations;
    }
  }
  report(4, violations == 0,
         fmt("chain-bound domination at depolarizing p=1e-6, D=3: %d "
             "violations over 100 trials (%d trials had all three flags "
             "feasible; the measured delta_o ~ 2e-6 sits beyond the "
             "discrimination-feasibility threshold ~ 2.6e-8)",
             violations, feasible));
}

// ---------------------------------------------------------------- criterion 5
void criterion_5() {
  double worst = 0.0;
  for (int d = 2; d <= 50; ++d) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(tridiagonal_operator(d));
    const auto expect = tridiagonal_spectrum(d);
    for (int j = 0; j < d; ++j)
      worst = std::max(worst, std::abs(eig.eigenvalues()[j] - expect[j]));
  }
  report(5, worst <= 1e-12,
         fmt("tridiagonal spectrum matches 1-cos(pi j/D) for D<=50, worst "
             "deviation %.2e (tol 1e-12)",
             worst));
}

// ---------------------------------------------------------------- criterion 6
void criterion_6() {
  double worst_exact = 0.0;
  double worst_yys = 0.0;
  for (int d = 3; d <= 5; ++d) {
    for (int k = 0; k + 2 < d; ++k) {
      worst_exact = std::min(worst_exact, certificate_check("xx", k, d).min_eig);
      worst_exact =
          std::min(worst_exact, certificate_check("yy-recovery", k, d).min_eig);
      worst_yys = std::min(worst_yys, certificate_check("yys", k, d).min_eig);
    }
  }
  const bool exact_ok = worst_exact >= -1e-9;
  const bool yys_ok = worst_yys >= -1e-6;
  report(6, exact_ok && yys_ok,
         fmt("printed certificates, D=3..5: XX/YY-recovery min eig %.2e "
             "(gate -1e-9, %s); 4-decimal discrimination certificate min eig "
             "%.4e against gate -1e-6, %s (the published rounding floors it "
             "at -4.8e-6; the refined-mu variant is PSD to machine precision)",
             worst_exact, exact_ok ? "ok" : "violated", worst_yys,
             yys_ok ? "ok" : "violated"));
}

// ---------------------------------------------------------------- criterion 7
void criterion_7() {
  Rng rng(1007);
  int bad = 0;
  int total = 0;
  for (int d = 2; d <= 6; ++d) {
    for (int trial = 0; trial < 500; ++trial) {
      ++total;
      const PureState psi =
          randomize_basis({random_pure_state(d, rng)}, rng.bits()).states[0];
      double mn = 1.0;
      for (int k = 0; k < d; ++k)
        mn = std::min(mn, std::norm(psi.amplitudes()[k]));
      const auto cert = tomography_operator(psi, 1.0 / mn);
      const Matrix proj = psi.projector().matrix();
      const bool gap_ok =
          psd_min_eig(HermitianOperator(Matrix(proj - cert.h.matrix()))) >=
          -1e-8;
      const bool trace_ok =
          std::abs((cert.h.matrix() * proj).trace().real() - 1.0) <= 1e-8;
      const bool caps_ok = cert.lambda.lpNorm<1>() <= cert.lambda_cap + 1e-9 &&
                           cert.mu.lpNorm<1>() <= cert.mu_cap + 1e-9 &&
                           cert.nu.lpNorm<1>() <= cert.mu_cap + 1e-9;
      if (!(gap_ok && trace_ok && caps_ok)) ++bad;
    }
  }
  report(7, bad == 0,
         fmt("tomography certificates on %d random generic states (D=2..6): "
             "%d failures (PSD gap tol -1e-8, unit trace tol 1e-8, 1-norm "
             "caps)",
             total, bad));
}

// ---------------------------------------------------------------- criterion 8
void criterion_8() {
  const Povm p = example_povm();
  const auto ext = is_extremal(p);

  double worst_kernel = 0.0;
  const PovmWitness w = build_povm_witness(p);
  for (int b = 0; b < 3; ++b)
    worst_kernel = std::max(
        worst_kernel, std::abs((w.selftest.kernel_projectors[b].matrix() *
                                p.element(b).matrix())
                                   .trace()
                                   .real()));

  const bool sizes_ok = w.selftest.x == 16 && w.scenario.y_povm == 120;
  const double ideal = eval_povm_witness(w, ideal_povm_behavior(w));
  const bool ideal_ok = std::abs(ideal - 2.0 / 3.0) <= 1e-9;

  Rng rng(1008);
  int beat = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Behavior sub = substituted_povm_behavior(w, random_povm(3, 3, rng));
    if (eval_povm_witness(w, sub) >= 2.0 / 3.0) ++beat;
  }
  report(8,
         ext.extremal && worst_kernel <= 1e-12 && sizes_ok && ideal_ok &&
             beat == 0,
         fmt("rank-(1,1,2) example end to end: extremal=%s, max |tr(Z_b M_b)| "
             "= %.1e (tol 1e-12), X=%d Y=%d, ideal value %.12f, %d/1000 "
             "substituted POVMs reached 2/3",
             ext.extremal ? "yes" : "no", worst_kernel, w.selftest.x,
             w.scenario.y_povm, ideal, beat));
}

// ---------------------------------------------------------------- criterion 9
void criterion_9() {
  Rng rng(1009);
  const PovmWitness w = build_povm_witness(example_povm());
  const Povm& ref = w.selftest.povm;
  int violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const double s = std::pow(10.0, -6.0 + 4.0 * rng.uniform());  // 1e-6..1e-2
    const Povm noise = random_povm(3, 3, rng);
    std::vector<HermitianOperator> elems;
    for (int b = 0; b < 3; ++b)
      elems.emplace_back(Matrix((1.0 - s) * ref.element(b).matrix() +
                                s * noise.element(b).matrix()));
    const Povm perturbed(elems);
    double delta = 0.0;
    for (int b = 0; b < 3; ++b)
      delta += (w.selftest.kernel_projectors[b].matrix() *
                perturbed.element(b).matrix())
                   .trace()
                   .real();
    const PovmRobustness bound = povm_robustness(w.selftest, 0.0, delta);
    for (int b = 0; b < 3; ++b) {
      Eigen::SelfAdjointEigenSolver<Matrix> eig(perturbed.element(b).matrix() -
                                                ref.element(b).matrix());
      if (eig.eigenvalues().cwiseAbs().maxCoeff() > bound.bound) ++violations;
    }
  }
  report(9, violations == 0,
         fmt("POVM robustness bound dominates 500 random perturbations "
             "satisfying the kernel-penalty hypothesis: %d violations",
             violations));
}

// --------------------------------------------------------------- criterion 10
void criterion_10() {
  const auto count_near = [](const std::vector<double>& xs, double v) {
    int n = 0;
    for (double x : xs)
      if (std::abs(x - v) <= 1e-9) ++n;
    return n;
  };
  const Verdict v = wigner_violation_check(sic_family(0.0), sic_family(kPi), 1e-8);
  const InvariantProfile p0 = bargmann_profile(sic_family(0.0));
  const InvariantProfile ppi = bargmann_profile(sic_family(kPi));
  const int zeros_at_0 = count_near(p0.phases, 0.0);
  const int pis_at_0 = count_near(p0.phases, kPi);
  const int zeros_at_pi = count_near(ppi.phases, 0.0);
  const int pis_at_pi = count_near(ppi.phases, kPi);
  const bool verdict_ok = v == Verdict::NotEquivalent;
  const bool zero_sig_ok = zeros_at_0 > 0 && zeros_at_pi == 0;
  const bool pi_sig_ok = pis_at_0 > 0 && pis_at_pi == 0;  // as stated

  Rng rng(1010);
  int rank_bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double b21 = 0.1 + 0.8 * rng.uniform();
    const double b31 = 0.1 + 0.8 * rng.uniform();
    const double beta = 0.3 + 2.0 * rng.uniform();
    const auto pair = embedded_qubit_pair(b21, std::sqrt(1.0 - b21 * b21), b31,
                                          std::sqrt(1.0 - b31 * b31), beta);
    bool grams_equal = true;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        grams_equal = grams_equal &&
                      std::abs(overlap(pair.embedded[i], pair.embedded[j]) -
                               overlap(pair.lifted[i], pair.lifted[j])) < 1e-12;
    if (!grams_equal || pair.embedded_span != 2 || pair.lifted_span != 3)
      ++rank_bad;
  }
  report(10, verdict_ok && zero_sig_ok && pi_sig_ok && rank_bad == 0,
         fmt("counterexamples: sic(0) vs sic(pi) verdict %s; |phi|=0 "
             "signature holds (%d at t=0, %d at t=pi); |phi|=pi-absence "
             "gate %s (%d at t=0, %d at t=pi -- the pi-valued triples are "
             "real: 12 products equal -1/8 exactly); embedded pairs: %d/100 "
             "failed rank/overlap split",
             to_string(v), zeros_at_0, zeros_at_pi,
             pi_sig_ok ? "holds" : "violated", pis_at_0, pis_at_pi, rank_bad));
}

// --------------------------------------------------------------- criterion 11
void criterion_11() {
  Rng rng(1011);
  int noisy_violations = 0;
  int zero_noise_bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng.bits() % 9);
    std::vector<BlochVector> ms;
    for (int k = 0; k < n; ++k) {
      BlochVector v(rng.gaussian(), rng.gaussian(), rng.gaussian());
      ms.push_back(0.999 * v / v.norm());
    }
    const Eigen::Quaterniond q(rng.gaussian(), rng.gaussian(), rng.gaussian(),
                               rng.gaussian());
    Eigen::Matrix3d r = q.normalized().toRotationMatrix();
    if (trial % 2 == 1) r.col(1) *= -1.0;

    // zero-noise exactness
    std::vector<BlochVector> exact;
    for (const auto& m : ms) exact.push_back(r * m);
    const BlochAlignment a0 = align_bloch(ms, exact, 0.0);
    for (double res : a0.residuals)
      if (res >= 1e-9) ++zero_noise_bad;

    // noisy residual domination at delta <= 1e-4
    const double delta = 1e-4;
    std::vector<BlochVector> noisy;
    bool ok = true;
    for (const auto& m : ms) {
      BlochVector kick(rng.gaussian(), rng.gaussian(), rng.gaussian());
      BlochVector v = r * m + (delta / 10.0) * kick;
      if (v.norm() > 1.0) v /= v.norm();
      noisy.push_back(v);
    }
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        ok = std::abs(ms[i].dot(ms[j]) - noisy[i].dot(noisy[j])) <= delta;
    if (!ok) continue;
    const BlochAlignment a = align_bloch(ms, noisy, delta);
    for (double res : a.residuals)
      if (res > a.bound) ++noisy_violations;
  }
  report(11, noisy_violations == 0 && zero_noise_bad == 0,
         fmt("qubit alignment over 500 random ensembles (N<=10): %d "
             "zero-noise residuals above 1e-9 (rotations and reflections), "
             "%d noisy residuals above the sqrt(N delta)+sqrt(delta' c') "
             "bound at delta=1e-4",
             zero_noise_bad, noisy_violations));
}

}  // namespace

int main() {
  std::printf("acceptance suite\n================\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("================\n%d of 11 criteria failed\n", failures);
  if (failures > 0)
    std::printf(
        "the failing gates pin published 4-decimal coefficients and a "
        "published phase claim verbatim; the measured values above are the "
        "exact ground truth and are reproduced by the unit suites\n");
  return failures;
}
