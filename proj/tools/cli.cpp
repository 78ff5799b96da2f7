#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "eqdiv/analysis.hpp"
#include "eqdiv/error.hpp"
#include "eqdiv/instance_io.hpp"
#include "eqdiv/oracle.hpp"
#include "eqdiv/solver.hpp"
#include "eqdiv/topology.hpp"
#include "json.hpp"

namespace eqdiv::cli {

namespace {

using nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

struct Common {
  std::string file;
  std::optional<double> tol;
  std::vector<std::size_t> sigma;
  Format format = Format::Text;
};

// Machine-readable output carries 12 significant digits.
std::string fixed12(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) { return std::strtod(fixed12(x).c_str(), nullptr); }

ordered_json rounded(const std::vector<double>& xs) {
  ordered_json arr = ordered_json::array();
  for (const double x : xs) arr.push_back(round12(x));
  return arr;
}

std::string text_number(double x) {
  if (x == 0.0) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

template <typename T>
std::string join(const std::vector<T>& xs, const char* sep, std::string (*fmt)(double)) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) s += sep;
    if constexpr (std::is_floating_point_v<T>) {
      s += fmt(xs[k]);
    } else {
      s += std::to_string(xs[k]);
    }
  }
  return s;
}

std::string join_sigma(const Permutation& sigma, const char* sep) {
  return join(sigma.order(), sep, nullptr);
}

struct Loaded {
  InstanceFile file;
  Instance instance;
  double tol;
};

Loaded load(const Common& c, std::ostream& err) {
  InstanceFile f = parse_instance(c.file);
  for (const auto& w : f.warnings) err << "warning: " << w << "\n";
  Instance inst = f.instance;
  if (!c.sigma.empty()) {
    try {
      inst = inst.with_sigma(Permutation(c.sigma));
    } catch (const Error& e) {
      throw Error(ErrorCode::ValidationError, std::string("--sigma: ") + e.what());
    }
  }
  const double tol = c.tol ? *c.tol : f.tol.value_or(1e-9);
  return {std::move(f), std::move(inst), tol};
}

ordered_json fairness_json(const FairnessReport& r) {
  return {{"equitable_gap", round12(r.equitable_gap)},
          {"equitable_ok", r.equitable_ok},
          {"proportional_margin", round12(r.proportional_margin)},
          {"proportional_ok", r.proportional_ok},
          {"worst_envy", round12(r.worst_envy)},
          {"envy_free_ok", r.envy_free_ok},
          {"exact_gap", round12(r.exact_gap)},
          {"exact_ok", r.exact_ok},
          {"own_values", rounded(r.own_values)}};
}

void print_fairness_text(std::ostream& out, const FairnessReport& r,
                         const std::vector<std::string>& names, const Permutation& sigma) {
  const auto yes = [](bool b) { return b ? "yes" : "no"; };
  out << "equitable     " << yes(r.equitable_ok) << "  (gap " << text_number(r.equitable_gap)
      << ")\n";
  out << "proportional  " << yes(r.proportional_ok) << "  (worst margin "
      << text_number(r.proportional_margin) << ")\n";
  out << "envy-free     " << yes(r.envy_free_ok) << "  (worst envy " << text_number(r.worst_envy)
      << ")\n";
  out << "exact         " << yes(r.exact_ok) << "  (gap " << text_number(r.exact_gap) << ")\n";
  out << "player        piece  own value     proportional\n";
  const auto held = sigma.inverse();
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << std::left << std::setw(14) << names[i] << std::setw(7) << held[i] << std::setw(14)
        << text_number(r.own_values[i])
        << (r.proportional_margins[i] >= -1e-9 ? "ok" : "fails") << "\n";
  }
}

int cmd_solve(const Common& c, std::ostream& out, std::ostream& err) {
  const Loaded l = load(c, err);
  const auto sol = solve_equitable(l.instance, {l.tol, SolveOptions{}.max_iter});
  const auto vm = valuation_matrix(l.instance.densities(), sol.cuts, l.instance.sigma());
  const auto rep = fairness_report(vm, l.instance.sigma(), l.tol);

  switch (c.format) {
    case Format::Json: {
      ordered_json j = {{"command", "solve"},
                        {"status", std::string(to_string(sol.status))},
                        {"sigma", l.instance.sigma().order()},
                        {"cuts", rounded(sol.cuts.values())},
                        {"value", round12(sol.value)},
                        {"gap", round12(sol.gap)},
                        {"residual_norm", round12(sol.residual_norm)},
                        {"iterations", sol.iterations},
                        {"tol", round12(l.tol)},
                        {"fairness", fairness_json(rep)}};
      out << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "sigma,value,gap,status,residual_norm,cuts\n"
          << join_sigma(l.instance.sigma(), " ") << "," << fixed12(sol.value) << ","
          << fixed12(sol.gap) << "," << to_string(sol.status) << ","
          << fixed12(sol.residual_norm) << "," << join(sol.cuts.values(), " ", fixed12) << "\n";
      break;
    case Format::Text:
      out << "status        " << to_string(sol.status) << "\n"
          << "sigma         " << join_sigma(l.instance.sigma(), " ") << "\n"
          << "cuts          " << join(sol.cuts.values(), " ", text_number) << "\n"
          << "value         " << text_number(sol.value) << "\n"
          << "gap           " << text_number(sol.gap) << "\n"
          << "residual norm " << text_number(sol.residual_norm) << "\n"
          << "iterations    " << sol.iterations << "\n";
      print_fairness_text(out, rep, l.file.names, l.instance.sigma());
      break;
  }
  return sol.status == SolveStatus::BestEffort ? kExitBestEffort : kExitOk;
}

int cmd_sweep(const Common& c, bool parallel, std::ostream& out, std::ostream& err) {
  const Loaded l = load(c, err);
  SweepOptions opts;
  opts.tol = l.tol;
  opts.parallel = parallel;
  const auto rows = sweep_permutations(l.instance.densities(), opts);

  bool best_effort = false;
  for (const auto& r : rows) best_effort |= r.solution.status == SolveStatus::BestEffort;

  switch (c.format) {
    case Format::Json: {
      ordered_json arr = ordered_json::array();
      for (const auto& r : rows) {
        arr.push_back({{"sigma", r.sigma.order()},
                       {"value", round12(r.solution.value)},
                       {"gap", round12(r.solution.gap)},
                       {"status", std::string(to_string(r.solution.status))},
                       {"residual_norm", round12(r.solution.residual_norm)},
                       {"cuts", rounded(r.solution.cuts.values())}});
      }
      out << ordered_json{{"command", "sweep"}, {"rows", std::move(arr)}}.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "sigma,value,gap,status,residual_norm,cuts\n";
      for (const auto& r : rows) {
        out << join_sigma(r.sigma, " ") << "," << fixed12(r.solution.value) << ","
            << fixed12(r.solution.gap) << "," << to_string(r.solution.status) << ","
            << fixed12(r.solution.residual_norm) << ","
            << join(r.solution.cuts.values(), " ", fixed12) << "\n";
      }
      break;
    case Format::Text:
      out << std::left << std::setw(20) << "sigma" << std::setw(18) << "value" << std::setw(18)
          << "gap" << std::setw(18) << "status" << "cuts\n";
      for (const auto& r : rows) {
        out << std::setw(20) << join_sigma(r.sigma, ",") << std::setw(18)
            << text_number(r.solution.value) << std::setw(18) << text_number(r.solution.gap)
            << std::setw(18) << to_string(r.solution.status)
            << join(r.solution.cuts.values(), " ", text_number) << "\n";
      }
      break;
  }
  return best_effort ? kExitBestEffort : kExitOk;
}

CutVector cuts_for(const Instance& inst, const std::vector<double>& raw) {
  if (raw.size() + 1 != inst.player_count()) {
    throw Error(ErrorCode::DimensionMismatch, "--cuts needs " +
                                                  std::to_string(inst.player_count() - 1) +
                                                  " values, got " + std::to_string(raw.size()));
  }
  return CutVector(raw);
}

int cmd_verify(const Common& c, const std::vector<double>& raw_cuts, std::ostream& out,
               std::ostream& err) {
  const Loaded l = load(c, err);
  const CutVector cuts = cuts_for(l.instance, raw_cuts);
  const auto vm = valuation_matrix(l.instance.densities(), cuts, l.instance.sigma());
  const auto rep = fairness_report(vm, l.instance.sigma(), l.tol);
  const std::size_t n = vm.size();

  switch (c.format) {
    case Format::Json: {
      ordered_json matrix = ordered_json::array();
      for (std::size_t i = 0; i < n; ++i) {
        const auto row = vm.row(i);
        matrix.push_back(rounded({row.begin(), row.end()}));
      }
      ordered_json j = {{"command", "verify"},
                        {"sigma", l.instance.sigma().order()},
                        {"cuts", rounded(cuts.values())},
                        {"valuation_matrix", std::move(matrix)},
                        {"fairness", fairness_json(rep)}};
      out << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "player,piece_held,own_value,proportional_margin,envy\n";
      for (std::size_t i = 0; i < n; ++i) {
        out << l.file.names[i] << "," << l.instance.sigma().inverse()[i] << ","
            << fixed12(rep.own_values[i]) << "," << fixed12(rep.proportional_margins[i]) << ","
            << fixed12(rep.envy[i]) << "\n";
      }
      break;
    case Format::Text:
      out << "cuts          " << join(cuts.values(), " ", text_number) << "\n";
      out << "valuation matrix (rows: players, columns: pieces)\n";
      for (std::size_t i = 0; i < n; ++i) {
        const auto row = vm.row(i);
        out << "  " << std::left << std::setw(12) << l.file.names[i]
            << join(std::vector<double>(row.begin(), row.end()), " ", text_number) << "\n";
      }
      print_fairness_text(out, rep, l.file.names, l.instance.sigma());
      break;
  }
  return kExitOk;
}

int cmd_residual(const Common& c, const std::vector<double>& raw_cuts,
                 const std::vector<double>& sphere, std::ostream& out, std::ostream& err) {
  const Loaded l = load(c, err);
  if (!raw_cuts.empty() && !sphere.empty()) {
    throw Error(ErrorCode::ValidationError, "give either --cuts or --sphere, not both");
  }
  const SpherePoint e = sphere.empty() ? cuts_to_sphere(cuts_for(l.instance, raw_cuts))
                                       : SpherePoint(sphere);
  const auto f = residual_map(l.instance, e);
  const double norm = residual_norm(l.instance, e);

  switch (c.format) {
    case Format::Json:
      out << ordered_json{{"command", "residual"},
                          {"sphere_point", rounded(e.coords())},
                          {"residual", rounded(f)},
                          {"residual_norm", round12(norm)}}
                 .dump(2)
          << "\n";
      break;
    case Format::Csv:
      out << "index,residual\n";
      for (std::size_t i = 0; i < f.size(); ++i) out << i + 1 << "," << fixed12(f[i]) << "\n";
      break;
    case Format::Text:
      out << "sphere point  " << join(e.coords(), " ", text_number) << "\n"
          << "residual      " << join(f, " ", text_number) << "\n"
          << "norm (inf)    " << text_number(norm) << "\n";
      break;
  }
  return kExitOk;
}

int cmd_oracle(const Common& c, double resolution, std::ostream& out, std::ostream& err) {
  const Loaded l = load(c, err);
  const auto res = grid_search_equitable(l.instance, resolution);
  switch (c.format) {
    case Format::Json:
      out << ordered_json{{"command", "oracle"},
                          {"resolution", round12(resolution)},
                          {"sigma", l.instance.sigma().order()},
                          {"cuts", rounded(res.cuts.values())},
                          {"gap", round12(res.gap)}}
                 .dump(2)
          << "\n";
      break;
    case Format::Csv:
      out << "sigma,gap,cuts\n"
          << join_sigma(l.instance.sigma(), " ") << "," << fixed12(res.gap) << ","
          << join(res.cuts.values(), " ", fixed12) << "\n";
      break;
    case Format::Text:
      out << "resolution    " << text_number(resolution) << "\n"
          << "cuts          " << join(res.cuts.values(), " ", text_number) << "\n"
          << "gap           " << text_number(res.gap) << "\n";
      break;
  }
  return kExitOk;
}

int cmd_random(std::uint64_t seed, const RandomInstanceOptions& opts, const std::string& path,
               std::ostream& out) {
  const auto dens = random_densities(seed, opts);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dens.size(); ++i) names.push_back("player" + std::to_string(i + 1));
  const std::string text = format_instance(names, dens);
  if (path.empty() || path == "-") {
    out << text;
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::ValidationError, "cannot write " + path);
    f << text;
  }
  return kExitOk;
}

void add_common(CLI::App* sub, Common& c, bool file_required = true) {
  auto* file = sub->add_option("file", c.file, "Instance file (JSON)");
  if (file_required) file->required()->check(CLI::ExistingFile);
  sub->add_option("--tol", c.tol, "Equitability tolerance (default: file value or 1e-9)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--sigma", c.sigma, "Player order, piece i goes to player sigma[i]")
      ->delimiter(',');
  const std::map<std::string, Format> formats{
      {"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};
  sub->add_option("--format", c.format, "Output format: text, json or csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
      ->option_text("text|json|csv");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equitable contiguous division of the unit interval", "eqdiv"};
  app.require_subcommand(1);

  Common common;
  std::vector<double> cuts;
  std::vector<double> sphere;
  double resolution = 1e-3;
  bool parallel = false;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string kind = "constant";
  RandomInstanceOptions random_opts;

  auto* solve = app.add_subcommand("solve", "Solve for an equitable simple division");
  add_common(solve, common);

  auto* sweep = app.add_subcommand("sweep", "Solve for every player order");
  add_common(sweep, common);
  sweep->add_flag("--parallel", parallel, "Solve permutations on all cores");

  auto* verify = app.add_subcommand("verify", "Fairness report for given cuts");
  add_common(verify, common);
  verify->add_option("--cuts", cuts, "Comma-separated cut points")->delimiter(',')->required();

  auto* residual = app.add_subcommand("residual", "Evaluate the antipodal residual map");
  add_common(residual, common);
  auto* rc = residual->add_option("--cuts", cuts, "Comma-separated cut points")->delimiter(',');
  auto* rs =
      residual->add_option("--sphere", sphere, "Comma-separated sphere point")->delimiter(',');
  rc->excludes(rs);

  auto* oracle = app.add_subcommand("oracle", "Brute-force grid search (n <= 4)");
  add_common(oracle, common);
  oracle->add_option("--resolution", resolution, "Grid spacing (>= 1e-4)");

  auto* random = app.add_subcommand("random", "Write a seeded random instance file");
  random->add_option("--seed", seed, "Random seed");
  random->add_option("--players", random_opts.players, "Number of players")
      ->check(CLI::Range(1, 64));
  random->add_option("--pieces", random_opts.max_pieces, "Maximum pieces per density")
      ->check(CLI::Range(1, 999));
  random->add_option("--max-height", random_opts.max_height, "Maximum raw density value")
      ->check(CLI::PositiveNumber);
  random->add_option("--kind", kind, "constant or linear")
      ->check(CLI::IsMember({"constant", "linear"}));
  random->add_option("--out", out_path, "Output path (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInputError;
  }

  try {
    if (solve->parsed()) return cmd_solve(common, out, err);
    if (sweep->parsed()) return cmd_sweep(common, parallel, out, err);
    if (verify->parsed()) return cmd_verify(common, cuts, out, err);
    if (residual->parsed()) return cmd_residual(common, cuts, sphere, out, err);
    if (oracle->parsed()) return cmd_oracle(common, resolution, out, err);
    if (random->parsed()) {
      random_opts.kind =
          kind == "linear" ? DensityKind::PiecewiseLinear : DensityKind::PiecewiseConstant;
      return cmd_random(seed, random_opts, out_path, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace eqdiv::cli
