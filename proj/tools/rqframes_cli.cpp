// rqframes command line: generate families, analyze them, perturb them and
// run the perturbation theorem suite.
//
// Exit status: 0 on success, 1 when a theorem report fails containment,
// 2 on any error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rqframes/rqframes.hpp"

namespace {

using namespace rqframes;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw parse_error("cannot write " + out_path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

json bounds_json(double lower, double upper) { return {{"lower", lower}, {"upper", upper}}; }

json analyze_family(const frame_family& f) {
  const qmatrix a = frame_operator(f);
  const auto fb = spectrum_bounds(a);
  const auto rb = riesz_bounds(f);
  json out = {{"dim", f.dim()},
              {"rank", f.rank()},
              {"node_count", f.node_count()},
              {"frame_operator", to_json(a)},
              {"bounds", bounds_json(fb.lower, fb.upper)},
              {"is_frame", fb.is_frame()},
              {"bessel_bound", fb.upper},
              {"riesz_bounds", bounds_json(rb.lower, rb.upper)}};
  if (fb.is_frame()) {
    const auto db = frame_bounds(canonical_dual(f));
    out["dual_bounds"] = bounds_json(db.lower, db.upper);
    out["predicted_dual_bounds"] = bounds_json(1 / fb.upper, 1 / fb.lower);
    double residual = 0, discrepancy = 0;
    for (std::size_t a_idx = 0; a_idx < f.dim(); ++a_idx)
      for (const quaternion& q : {quaternion(1), quaternion::i(), quaternion::j(), quaternion::k()}) {
        const qvector phi = qvector::unit(f.dim(), a_idx) * q;
        const qvector r1 = reconstruct(f, phi);
        const qvector r2 = reconstruct_dual_form(f, phi);
        residual = std::max(residual, norm(r1 - phi));
        discrepancy = std::max(discrepancy, norm(r1 - r2));
      }
    out["reconstruction_residual"] = residual;
    out["decomposition_forms_discrepancy"] = discrepancy;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-n continuous frames on right quaternionic spaces: generation, analysis and perturbation checks"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "json";
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::size_t> trials_flag;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Write output to this path instead of stdout");
  };

  // gen
  auto* gen = app.add_subcommand("gen", "Emit a random frame-family JSON");
  std::string gen_config;
  std::optional<std::size_t> gen_dim, gen_rank, gen_nodes;
  std::size_t gen_trial = 0;
  gen->add_option("--config", gen_config, "Experiment config JSON");
  gen->add_option("--dim", gen_dim, "Dimension d");
  gen->add_option("--rank", gen_rank, "Vectors per node n");
  gen->add_option("--nodes", gen_nodes, "Quadrature node count");
  gen->add_option("--trial", gen_trial, "Trial index (selects the per-trial seed)");
  gen->add_option("--seed", seed_flag, "Base seed");
  add_common(gen);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Print frame operator, bounds, dual bounds and reconstruction residual");
  std::string analyze_path;
  analyze->add_option("family", analyze_path, "Frame-family JSON")->required();
  add_common(analyze);

  // perturb
  auto* perturb = app.add_subcommand("perturb", "Emit a perturbed copy of a family");
  std::string perturb_path, mode_name = "free";
  double scale = 0;
  perturb->add_option("family", perturb_path, "Frame-family JSON")->required();
  perturb->add_option("--mode", mode_name, "kappa_admissible | gamma_admissible | free");
  perturb->add_option("--scale", scale, "Perturbation scale t")->required();
  perturb->add_option("--seed", seed_flag, "Seed for perturbation directions");
  add_common(perturb);

  // check
  auto* check = app.add_subcommand("check", "Evaluate one theorem on a family and its perturbation");
  std::string check_a, check_b, theorem_name;
  check->add_option("family", check_a, "Reference frame-family JSON")->required();
  check->add_option("perturbed", check_b, "Perturbed family JSON")->required();
  check->add_option("--theorem", theorem_name, "T_kappa | T_sum | T_dual_weighted | T_gap | T_riesz")->required();
  check->add_option("--seed", seed_flag, "Sampling seed (T_gap)");
  add_common(check);

  // verify
  auto* verify = app.add_subcommand("verify", "Run the full randomized theorem suite");
  std::string verify_config;
  unsigned threads = 0;
  bool no_wall_time = false;
  verify->add_option("--config", verify_config, "Experiment config JSON");
  verify->add_option("--seed", seed_flag, "Override the config seed");
  verify->add_option("--trials", trials_flag, "Override the config trial count");
  verify->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  verify->add_flag("--no-wall-time", no_wall_time, "Omit the wall-time field from JSON output");
  add_common(verify);

  // gap
  auto* gap_cmd = app.add_subcommand("gap", "Print delta(K, L) for K, L the spans of two families");
  std::string gap_a, gap_b;
  gap_cmd->add_option("familyA", gap_a, "Family spanning K")->required();
  gap_cmd->add_option("familyB", gap_b, "Family spanning L")->required();
  add_common(gap_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      experiment_config cfg = gen_config.empty() ? experiment_config{} : experiment_config_from_json(read_json_file(gen_config));
      if (gen_dim) cfg.dim = *gen_dim;
      if (gen_rank) cfg.rank = *gen_rank;
      if (gen_nodes) cfg.node_count = *gen_nodes;
      if (seed_flag) cfg.seed = *seed_flag;
      emit(to_json(generate_frame(cfg, gen_trial)).dump(2), out_path);
      return 0;
    }
    if (*analyze) {
      emit(analyze_family(frame_family_from_json(read_json_file(analyze_path))).dump(2), out_path);
      return 0;
    }
    if (*perturb) {
      const auto f = frame_family_from_json(read_json_file(perturb_path));
      const auto g = generate_perturbation(f, scale, perturbation_mode_from_string(mode_name), seed_flag.value_or(1));
      emit(to_json(g).dump(2), out_path);
      return 0;
    }
    if (*check) {
      const auto f = frame_family_from_json(read_json_file(check_a));
      const auto g = frame_family_from_json(read_json_file(check_b));
      check_options opt;
      opt.seed = seed_flag.value_or(0);
      const auto report = check_theorem(theorem_from_string(theorem_name), f, g, opt);
      emit(to_json(report).dump(2), out_path);
      return report.passed() ? 0 : 1;
    }
    if (*verify) {
      experiment_config cfg =
          verify_config.empty() ? experiment_config{} : experiment_config_from_json(read_json_file(verify_config));
      if (seed_flag) cfg.seed = *seed_flag;
      if (trials_flag) cfg.trials = *trials_flag;
      const auto rep = run_suite(cfg, threads == 0 ? std::thread::hardware_concurrency() : threads);
      emit(format == "csv" ? to_csv(rep) : to_json(rep, !no_wall_time).dump(2), out_path);
      return rep.all_passed() ? 0 : 1;
    }
    if (*gap_cmd) {
      const auto a = frame_family_from_json(read_json_file(gap_a));
      const auto b = frame_family_from_json(read_json_file(gap_b));
      const double delta = gap(orthonormalize(a.flattened()), orthonormalize(b.flattened()));
      emit(json{{"gap", delta}}.dump(2), out_path);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
