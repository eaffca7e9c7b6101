// Command-line front end: builds witnesses, runs reconstructions, checks
// certificates, and reproduces the counterexample families. File formats are
// JSON with complex numbers as [re, im]; see the README for examples.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "pmst/certificates.hpp"
#include "pmst/counterexamples.hpp"
#include "pmst/ensemble.hpp"
#include "pmst/povm_selftest.hpp"
#include "pmst/reconstruction.hpp"
#include "pmst/serialization.hpp"
#include "pmst/tomography.hpp"
#include "pmst/witness.hpp"

using namespace pmst;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kCertificationFailure = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PMST_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
    throw InvalidInput("PMST_SEED must be a nonnegative integer");
  }
  return 1;
}

json result_header(const std::string& command, const std::string& input_bytes) {
  json j;
  j["command"] = command;
  j["inputs_digest"] = content_digest(input_bytes);
  return j;
}

void emit(const json& result, const std::string& out_path) {
  if (!out_path.empty()) write_text_file(out_path, result.dump(2) + "\n");
}

ScenarioPayload load_scenario(const std::string& path, std::string& bytes) {
  bytes = read_text_file(path);
  return scenario_from_json(bytes);
}

Povm first_povm(const ScenarioPayload& s) {
  if (s.povms.empty())
    throw InvalidInput("povms: the scenario file carries no POVM");
  return s.povms.front();
}

int run_complete(const std::string& scenario_path, const std::string& out,
                 bool randomize, std::uint64_t seed, const Tolerances& tol) {
  std::string bytes;
  const ScenarioPayload in = load_scenario(scenario_path, bytes);
  std::vector<PureState> kets = in.require_kets();
  if (randomize) {
    // rotate into a generic basis first, so every state has support on the
    // whole computational basis and the f_j stay finite
    const std::uint64_t used = in.seed ? *in.seed : seed;
    kets = randomize_basis(kets, used, tol).states;
  }
  const WeightedEnsemble e = complete_ensemble(kets, tol);

  ScenarioPayload payload = ScenarioPayload::from_ensemble(e);
  payload.seed = randomize ? std::optional<std::uint64_t>(in.seed ? *in.seed : seed)
                           : in.seed;
  if (!out.empty()) write_text_file(out, scenario_to_json(payload));

  std::printf("completion\n");
  std::printf("  input states   %zu\n", in.states.size());
  std::printf("  extra states   %d\n", e.size() - static_cast<int>(in.states.size()));
  std::printf("  lambda*        %.17g\n", e.weights.front());
  std::printf("  dimension      %d\n", e.dim);
  return kOk;
}

int run_witness_build(const std::string& scenario_path, const std::string& out) {
  std::string bytes;
  const ScenarioPayload in = load_scenario(scenario_path, bytes);
  const StateWitness w = build_state_witness(in.as_ensemble(true));

  json r = result_header("witness build", bytes);
  r["w_star"] = w.w_star;
  r["preparations"] = w.pairs.n;
  r["measurements"] = w.pairs.count();
  json coeffs = json::array();
  for (int i = 0; i < w.pairs.n; ++i)
    for (int j = 0; j < i; ++j)
      coeffs.push_back({{"i", i}, {"j", j}, {"w", w.coeff(i, j)}});
  r["coefficients"] = std::move(coeffs);
  emit(r, out);

  std::printf("witness: %d preparations, %d dichotomic measurements, "
              "maximum %.17g\n",
              w.pairs.n, w.pairs.count(), w.w_star);
  return kOk;
}

int run_witness_ideal(const std::string& scenario_path, const std::string& out) {
  std::string bytes;
  const ScenarioPayload in = load_scenario(scenario_path, bytes);
  const WeightedEnsemble e = in.as_ensemble(true);
  const Behavior b = ideal_behavior(e);
  if (!out.empty()) write_text_file(out, behavior_to_json(b));
  const double value = eval_witness(build_state_witness(e), b);
  std::printf("ideal behavior written: X=%d Y=%d B=%d, witness value %.17g\n",
              b.X(), b.Y(), b.B(), value);
  return kOk;
}

int run_witness_eval(const std::string& scenario_path,
                     const std::string& behavior_path, const std::string& out) {
  std::string bytes, bbytes;
  const ScenarioPayload in = load_scenario(scenario_path, bytes);
  const Behavior b = behavior_from_json(read_text_file(behavior_path));
  const StateWitness w = build_state_witness(in.as_ensemble(true));
  const double value = eval_witness(w, b);

  json r = result_header("witness eval", bytes);
  r["value"] = value;
  r["w_star"] = w.w_star;
  r["deficit"] = w.w_star - value;
  emit(r, out);
  std::printf("witness value %.17g (maximum %.17g, deficit %.17g)\n", value,
              w.w_star, w.w_star - value);
  return kOk;
}

int run_delta_chain(double d_o, double d_p, int dim,
                    const std::vector<double>& f, const std::string& out) {
  const DeltaChain c = delta_chain(d_o, d_p, dim, f);
  json r = result_header("delta-chain", "");
  r["chain"] = json::parse(delta_chain_to_json(c));
  emit(r, out);

  std::printf("delta chain (D=%d, do=%g, dp=%g)\n", dim, d_o, d_p);
  std::printf("  dz'  %-22.17g dz   %-22.17g\n", c.dz_prime, c.dz);
  std::printf("  dx'  %-22.17g dx   %-22.17g\n", c.dx_prime, c.dx);
  std::printf("  dy   %-22.17g dxx  %-22.17g\n", c.dy, c.dxx);
  std::printf("  dyy  %-22.17g\n", c.dyy);
  for (std::size_t j = 0; j < c.dpsi.size(); ++j)
    std::printf("  dpsi[%zu] %.17g (f=%g)\n", j, c.dpsi[j], c.f[j]);
  std::printf("  feasible: cond1=%s cond3=%s cond5=%s\n",
              c.cond1 ? "yes" : "no", c.cond3 ? "yes" : "no",
              c.cond5 ? "yes" : "no");
  return c.all_feasible() ? kOk : kCertificationFailure;
}

int run_reconstruct(const std::string& prepared_path,
                    const std::string& reference_path, std::size_t targets,
                    const std::vector<double>& f, const std::string& out) {
  std::string pbytes, rbytes;
  const ScenarioPayload prepared = load_scenario(prepared_path, pbytes);
  const ScenarioPayload reference = load_scenario(reference_path, rbytes);

  ReconstructOptions options;
  options.num_targets = targets;
  if (!f.empty()) options.f = f;
  const ReconstructionReport report =
      reconstruct(prepared.states, reference.require_kets(), options);

  json r = result_header("reconstruct", pbytes + rbytes);
  r["report"] = json::parse(report_to_json(report));
  emit(r, out);

  std::printf("reconstruction: %s symmetry, max distance %.3e\n",
              report.symmetry.conjugate ? "anti-unitary" : "unitary",
              report.max_distance);
  std::printf("  chain feasible: %s; distances within bounds: %s\n",
              report.all_feasible ? "yes" : "no",
              report.all_within_bounds ? "yes" : "no");
  for (const auto& c : report.checks)
    std::printf("  %-8s dist %-12.5e bound %-12.5e %s\n", c.label.c_str(),
                c.distance, c.bound, c.pass ? "ok" : "EXCEEDED");
  return (report.all_feasible && report.all_within_bounds)
             ? kOk
             : kCertificationFailure;
}

int run_povm_example(const std::string& out) {
  const Povm p = example_povm();
  const PovmWitness w = build_povm_witness(p);
  if (!out.empty()) {
    ScenarioPayload payload;
    payload.dimension = 3;
    payload.povms.push_back(p);
    for (const auto& s : w.state_witness.ensemble.states) {
      payload.kets.emplace_back(s);
      payload.states.emplace_back(s);
    }
    payload.weights = w.state_witness.ensemble.weights;
    write_text_file(out, scenario_to_json(payload));
  }
  std::printf("example POVM: D=3, outcomes=3, ranks (1,1,2)\n");
  std::printf("  scenario: X=%d preparations, %d dichotomic measurements + "
              "one %d-outcome measurement\n",
              w.selftest.x, w.scenario.y_povm, w.selftest.b);
  return kOk;
}

int run_povm_extremal(const std::string& scenario_path, const Tolerances& tol) {
  std::string bytes;
  const ScenarioPayload in = load_scenario(scenario_path, bytes);
  if (in.povms.empty())
    throw InvalidInput("povms: the scenario file carries no POVM");
  bool all = true;
  for (std::size_t i = 0; i < in.povms.size(); ++i) {
    const ExtremalityResult res = is_extremal(in.povms[i], tol);
    all = all && res.extremal;
    std::printf("povm[%zu]: %s (min Gram eigenvalue %.3e)\n", i,
                res.extremal ? "extremal" : "not extremal", res.min_gram_eig);
  }
  return all ? kOk : kCertificationFailure;
}

int run_povm_witness(const std::string& scenario_path, const std::string& out) {
  std::string bytes;
  const ScenarioPayload in = load_scenario(scenario_path, bytes);
  const PovmWitness w = build_povm_witness(in.povms.empty()
                                               ? std::vector<Povm>{first_povm(in)}
                                               : in.povms);
  json r = result_header("povm witness", bytes);
  r["x"] = w.selftest.x;
  r["y"] = w.selftest.y;
  r["b"] = w.selftest.b;
  r["w_star"] = w.state_witness.w_star;
  r["reference_extremal"] = w.reference_extremal;
  json labels = json::array();
  for (const auto& [i, b] : w.scenario.kernel_labels)
    labels.push_back({{"i", i}, {"b", b}});
  r["kernel_labels"] = std::move(labels);
  r["ensemble"] =
      json::parse(scenario_to_json(
          ScenarioPayload::from_ensemble(w.state_witness.ensemble)));
  emit(r, out);

  if (!w.reference_extremal)
    std::printf("warning: POVM is not extremal; the witness is still defined "
                "but self-testing is void\n");
  std::printf("POVM witness: X=%d, Y=%d (last has %d outcomes), max %.17g\n",
              w.selftest.x, w.selftest.y, w.selftest.b,
              w.state_witness.w_star);
  return kOk;
}

int run_povm_bound(const std::string& scenario_path, double eps, double delta,
                   const std::string& out) {
  std::string bytes;
  const ScenarioPayload in = load_scenario(scenario_path, bytes);
  const PovmWitness w = build_povm_witness(first_povm(in));
  const PovmRobustness r = povm_robustness(w.selftest, eps, delta);

  json j = result_header("povm bound", bytes);
  j["epsilon"] = r.epsilon;
  j["delta"] = r.delta;
  j["eps_prime"] = r.eps_prime;
  j["gram_inv_norm"] = r.gram_inv_norm;
  j["bound"] = r.bound;
  emit(j, out);
  std::printf("robustness: eps'=%.17g, ||G^-1||=%.17g, bound=%.17g\n",
              r.eps_prime, r.gram_inv_norm, r.bound);
  return kOk;
}

int run_counterexample_sic(double t, double tprime, double match_tol,
                           const std::string& out) {
  const auto a = sic_family(t);
  const auto b = sic_family(tprime);
  const Verdict v = wigner_violation_check(a, b, match_tol);
  const InvariantProfile pa = bargmann_profile(a);
  const InvariantProfile pb = bargmann_profile(b);

  json r = result_header("counterexample sic", "");
  r["t"] = t;
  r["tprime"] = tprime;
  r["verdict"] = to_string(v);
  r["profile_t"] = pa.phases;
  r["profile_tprime"] = pb.phases;
  emit(r, out);
  std::printf("sic(%g) vs sic(%g): %s\n", t, tprime, to_string(v));
  return kOk;
}

int run_counterexample_embedded(double b21, double b31, double beta,
                                std::optional<double> b22,
                                std::optional<double> b32,
                                const std::string& out) {
  const double a22 = b22 ? *b22 : std::sqrt(std::max(0.0, 1.0 - b21 * b21));
  const double a32 = b32 ? *b32 : std::sqrt(std::max(0.0, 1.0 - b31 * b31));
  const EmbeddedQubitPair pair = embedded_qubit_pair(b21, a22, b31, a32, beta);
  const Verdict v = wigner_violation_check(pair.embedded, pair.lifted, 1e-8);

  json r = result_header("counterexample embedded", "");
  r["verdict"] = to_string(v);
  r["embedded_span"] = pair.embedded_span;
  r["lifted_span"] = pair.lifted_span;
  emit(r, out);
  std::printf("embedded pair: spans %d vs %d, verdict %s\n",
              pair.embedded_span, pair.lifted_span, to_string(v));
  return kOk;
}

int run_certify(int dim_max, double psd_floor, double yys_floor,
                const std::string& out) {
  bool ok = true;
  json rows = json::array();
  std::printf("%-14s %-4s %-4s %-14s %s\n", "certificate", "D", "k", "min eig",
              "status");
  for (int d = 3; d <= dim_max; ++d) {
    for (int k = 0; k + 2 < d; ++k) {
      for (const std::string name : {"xx", "yys", "yy-recovery"}) {
        const Certificate c = certificate_check(name, k, d);
        const double floor = (name == "yys") ? yys_floor : psd_floor;
        const bool pass = c.min_eig >= floor;
        ok = ok && pass;
        std::printf("%-14s %-4d %-4d %-14.4e %s\n", name.c_str(), d, k,
                    c.min_eig, pass ? "ok" : "FAIL");
        rows.push_back({{"name", name},
                        {"dim", d},
                        {"k", k},
                        {"min_eig", c.min_eig},
                        {"pass", pass}});
      }
    }
  }
  const auto refined = yy_discrimination_refined();
  const double refined_eig =
      yy_discrimination_certificate(refined, 0, 3).min_eig;
  std::printf("%-14s %-4d %-4d %-14.4e %s (mu=%.10f)\n", "yys-refined", 3, 0,
              refined_eig, refined_eig >= psd_floor ? "ok" : "FAIL",
              refined.mu);
  ok = ok && refined_eig >= psd_floor;

  json r = result_header("certify", "");
  r["certificates"] = std::move(rows);
  r["yys_refined_mu"] = refined.mu;
  r["yys_refined_min_eig"] = refined_eig;
  emit(r, out);
  return ok ? kOk : kCertificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Self-testing witnesses for prepare-and-measure scenarios: ensemble "
      "completion, witness evaluation, robust reconstruction with explicit "
      "error chains, POVM extremality certification, and counterexamples."};
  app.require_subcommand(1);

  std::string scenario, behavior, reference, prepared, out;

  auto* complete = app.add_subcommand("complete", "Complete an ensemble so it "
                                                  "resolves the identity");
  bool randomize = false;
  std::uint64_t seed = 0;
  bool seed_given = false;
  complete->add_option("--scenario", scenario, "scenario file with kets")
      ->required();
  complete->add_flag("--randomize", randomize,
                     "apply a seeded Haar basis change until every state is "
                     "generic before completing");
  complete
      ->add_option("--seed", seed,
                   "PRNG seed for --randomize (default: PMST_SEED env var, "
                   "then 1; a seed in the file's metadata wins)")
      ->each([&](const std::string&) { seed_given = true; });
  Tolerances tol;
  complete->add_option("--tol-completion", tol.completion_residual,
                       "identity-resolution residual (default 1e-9)");
  complete->add_option("--tol-genericity", tol.genericity_floor,
                       "min basis component after --randomize (default 1e-3)");
  complete->add_option("--out", out, "output scenario file");

  auto* witness = app.add_subcommand("witness", "State-ensemble witness");
  auto* wbuild = witness->add_subcommand("build", "coefficient table");
  wbuild->add_option("--scenario", scenario, "completed ensemble")->required();
  wbuild->add_option("--out", out, "result file");
  auto* wideal = witness->add_subcommand("ideal", "saturating behavior");
  wideal->add_option("--scenario", scenario, "completed ensemble")->required();
  wideal->add_option("--out", out, "behavior file");
  auto* weval = witness->add_subcommand("eval", "evaluate on a behavior");
  weval->add_option("--scenario", scenario, "completed ensemble")->required();
  weval->add_option("--behavior", behavior, "behavior file")->required();
  weval->add_option("--out", out, "result file");

  auto* rec = app.add_subcommand("reconstruct", "Run the full reconstruction "
                                                "pipeline with error chains");
  std::size_t targets = 0;
  std::vector<double> fvals;
  rec->add_option("--prepared", prepared, "scenario with prepared states")
      ->required();
  rec->add_option("--reference", reference,
                  "scenario with reference kets (targets then fiducials)")
      ->required();
  rec->add_option("--targets", targets, "number of target states")->required();
  rec->add_option("--f", fvals, "per-target f_j overrides")->delimiter(',');
  rec->add_option("--out", out, "report file");

  auto* chain = app.add_subcommand("delta-chain", "Evaluate the robustness "
                                                  "constant recurrences");
  double d_o = 0.0, d_p = 0.0;
  int dim = 3;
  chain->add_option("--do", d_o, "overlap deviation delta_o")->required();
  chain->add_option("--dp", d_p, "impurity delta_p")->required();
  chain->add_option("--dim", dim, "dimension D >= 3")->required();
  chain->add_option("--f", fvals, "f_j values (comma separated)")
      ->delimiter(',');
  chain->add_option("--out", out, "result file");

  auto* povm = app.add_subcommand("povm", "POVM self-testing");
  auto* pexample = povm->add_subcommand("example", "rank-(1,1,2) qutrit POVM");
  pexample->add_option("--out", out, "scenario file");
  auto* pext = povm->add_subcommand("extremal", "extremality check");
  pext->add_option("--scenario", scenario, "scenario with povms")->required();
  pext->add_option("--tol-extremal", tol.extremal_gram,
                   "min Gram eigenvalue declaring extremality (default 1e-9)");
  pext->add_option("--tol-kernel", tol.kernel_rel,
                   "relative kernel eigenvalue cutoff (default 1e-9)");
  auto* pwit = povm->add_subcommand("witness", "build the POVM witness");
  pwit->add_option("--scenario", scenario, "scenario with povms")->required();
  pwit->add_option("--out", out, "result file");
  auto* pbound = povm->add_subcommand("bound", "robustness bound");
  double eps = 0.0, delta = 0.0;
  pbound->add_option("--scenario", scenario, "scenario with povms")->required();
  pbound->add_option("--eps", eps, "state-layer error")->required();
  pbound->add_option("--delta", delta, "kernel-overlap penalty")->required();
  pbound->add_option("--out", out, "result file");

  auto* cex = app.add_subcommand("counterexample", "Overlap-matched ensembles "
                                                   "with no symmetry relating "
                                                   "them");
  auto* csic = cex->add_subcommand("sic", "SIC family profile comparison");
  double t = 0.0, tprime = 0.0, match_tol = 1e-8;
  csic->add_option("--t", t, "first parameter")->required();
  csic->add_option("--tprime", tprime, "second parameter")->required();
  csic->add_option("--tol-match", match_tol,
                   "profile/Gram comparison tolerance (default 1e-8)");
  csic->add_option("--out", out, "result file");
  auto* cemb = cex->add_subcommand("embedded", "embedded qubit triple");
  double b21 = 0.5, b31 = 0.5, beta = 1.0;
  std::optional<double> b22, b32;
  cemb->add_option("--b21", b21, "first amplitude")->required();
  cemb->add_option("--b31", b31, "second amplitude")->required();
  cemb->add_option("--beta", beta, "relative phase")->required();
  double b22v = 0.0, b32v = 0.0;
  auto* o22 = cemb->add_option("--b22", b22v, "override sqrt(1-b21^2)");
  auto* o32 = cemb->add_option("--b32", b32v, "override sqrt(1-b31^2)");
  cemb->add_option("--out", out, "result file");

  auto* certify = app.add_subcommand("certify", "Run every recovery and "
                                                "discrimination certificate");
  int dim_max = 5;
  double psd_floor = -1e-9;
  double yys_floor = -1e-5;
  certify->add_option("--dim-max", dim_max, "largest dimension (default 5)");
  certify->add_option("--psd-floor", psd_floor,
                      "pass threshold for exact certificates (default -1e-9)");
  certify->add_option(
      "--yys-floor", yys_floor,
      "pass threshold for the published 4-decimal certificate (default -1e-5, "
      "its rounding scale)");
  certify->add_option("--out", out, "result file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!seed_given) seed = default_seed();

    if (complete->parsed())
      return run_complete(scenario, out, randomize, seed, tol);
    if (witness->parsed()) {
      if (wbuild->parsed()) return run_witness_build(scenario, out);
      if (wideal->parsed()) return run_witness_ideal(scenario, out);
      if (weval->parsed()) return run_witness_eval(scenario, behavior, out);
      throw CLI::CallForHelp();
    }
    if (rec->parsed())
      return run_reconstruct(prepared, reference, targets, fvals, out);
    if (chain->parsed()) return run_delta_chain(d_o, d_p, dim, fvals, out);
    if (povm->parsed()) {
      if (pexample->parsed()) return run_povm_example(out);
      if (pext->parsed()) return run_povm_extremal(scenario, tol);
      if (pwit->parsed()) return run_povm_witness(scenario, out);
      if (pbound->parsed()) return run_povm_bound(scenario, eps, delta, out);
      throw CLI::CallForHelp();
    }
    if (cex->parsed()) {
      if (csic->parsed()) return run_counterexample_sic(t, tprime, match_tol, out);
      if (cemb->parsed()) {
        if (o22->count()) b22 = b22v;
        if (o32->count()) b32 = b32v;
        return run_counterexample_embedded(b21, b31, beta, b22, b32, out);
      }
      throw CLI::CallForHelp();
    }
    if (certify->parsed())
      return run_certify(dim_max, psd_floor, yys_floor, out);
  } catch (const InvalidInput& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kInputError;
  } catch (const StageFailure& e) {
    std::fprintf(stderr, "certification failed: %s\n", e.what());
    return kCertificationFailure;
  } catch (const CLI::CallForHelp&) {
    std::fprintf(stderr, "%s\n", app.help().c_str());
    return kInputError;
  }
  return kInputError;
}
