#include "eqdiv/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "eqdiv/error.hpp"
#include "json.hpp"

namespace eqdiv {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, path + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) field_error(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) field_error(path + "." + key, "missing");
  return *it;
}

std::vector<double> number_array(const json& j, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) {
      field_error(path + "[" + std::to_string(k) + "]", "expected a number");
    }
    out.push_back(j[k].get<double>());
  }
  return out;
}

DensityKind parse_kind(const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "piecewise_constant") return DensityKind::PiecewiseConstant;
    if (s == "piecewise_linear") return DensityKind::PiecewiseLinear;
  }
  field_error(path, "expected \"piecewise_constant\" or \"piecewise_linear\"");
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending token.
    const auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                    e.what());
  }
}

}  // namespace

std::string_view kind_name(DensityKind kind) noexcept {
  return kind == DensityKind::PiecewiseConstant ? "piecewise_constant" : "piecewise_linear";
}

InstanceFile parse_instance_text(std::string_view text) {
  const json root = parse_json(text);
  if (!root.is_object()) field_error("<root>", "expected an object");

  const json& players = require(root, "players", "<root>");
  if (!players.is_array() || players.empty()) {
    field_error("players", "expected a non-empty array");
  }

  std::vector<std::string> names;
  std::vector<RawDensity> raw;
  std::vector<Density> densities;
  std::vector<std::string> warnings;
  std::set<std::string> seen;

  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string path = "players[" + std::to_string(i) + "]";
    const json& p = players[i];
    const json& name = require(p, "name", path);
    if (!name.is_string()) field_error(path + ".name", "expected a string");
    const auto nm = name.get<std::string>();
    if (!seen.insert(nm).second) field_error(path + ".name", "duplicate name \"" + nm + "\"");

    const json& dens = require(p, "density", path);
    RawDensity rd;
    rd.kind = parse_kind(require(dens, "kind", path + ".density"), path + ".density.kind");
    rd.breakpoints = number_array(require(dens, "breakpoints", path + ".density"),
                                  path + ".density.breakpoints");
    rd.values = number_array(require(dens, "values", path + ".density"),
                             path + ".density.values");
    try {
      densities.push_back(Density::validate_and_normalize(rd));
    } catch (const Error& e) {
      throw Error(ErrorCode::ValidationError, path + " (" + nm + "): " + e.what());
    }
    if (densities.back().scale() != 1.0) {
      std::ostringstream msg;
      msg.precision(12);
      msg << path << " (" << nm << "): density normalized, total mass was "
          << densities.back().scale();
      warnings.push_back(msg.str());
    }
    names.push_back(nm);
    raw.push_back(std::move(rd));
  }

  std::optional<Permutation> sigma;
  if (const auto it = root.find("sigma"); it != root.end() && !it->is_null()) {
    if (!it->is_array()) field_error("sigma", "expected an array of integers");
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < it->size(); ++k) {
      const json& v = (*it)[k];
      if (!v.is_number_integer() || v.get<long long>() < 0) {
        field_error("sigma[" + std::to_string(k) + "]", "expected a nonnegative integer");
      }
      order.push_back(v.get<std::size_t>());
    }
    if (order.size() != names.size()) {
      throw Error(ErrorCode::ValidationError, "sigma has " + std::to_string(order.size()) +
                                                  " entries for " +
                                                  std::to_string(names.size()) + " players");
    }
    try {
      sigma = Permutation(std::move(order));
    } catch (const Error& e) {
      throw Error(ErrorCode::ValidationError, std::string("sigma: ") + e.what());
    }
  }

  std::optional<double> tol;
  if (const auto it = root.find("tol"); it != root.end() && !it->is_null()) {
    if (!it->is_number() || !(it->get<double>() > 0.0)) {
      field_error("tol", "expected a positive number");
    }
    tol = it->get<double>();
  }

  const std::size_t n = densities.size();
  Instance inst(std::move(densities), sigma ? *sigma : Permutation::identity(n));
  return InstanceFile{std::move(names), std::move(raw), std::move(inst), tol, std::move(warnings)};
}

InstanceFile parse_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance_text(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string format_instance(const std::vector<std::string>& names,
                            const std::vector<RawDensity>& densities,
                            const std::optional<Permutation>& sigma, std::optional<double> tol) {
  ordered_json players = ordered_json::array();
  for (std::size_t i = 0; i < densities.size(); ++i) {
    const auto& d = densities[i];
    players.push_back({{"name", i < names.size() ? names[i] : "player" + std::to_string(i)},
                       {"density",
                        {{"kind", std::string(kind_name(d.kind))},
                         {"breakpoints", d.breakpoints},
                         {"values", d.values}}}});
  }
  ordered_json root = {{"players", std::move(players)}};
  if (sigma) root["sigma"] = sigma->order();
  if (tol) root["tol"] = *tol;
  return root.dump(2) + "\n";
}

std::vector<RawDensity> random_densities(std::uint64_t seed, const RandomInstanceOptions& options) {
  if (options.players == 0 || options.max_pieces == 0 || options.max_pieces > 999 ||
      !(options.max_height > 0.0)) {
    throw Error(ErrorCode::ValidationError, "invalid random instance options");
  }
  std::mt19937_64 rng(seed);
  // Draws are mapped by hand: std distributions differ between standard
  // libraries and the output has to be reproducible.
  const auto below = [&rng](std::uint64_t m) { return rng() % m; };
  const auto thousandths = [](std::uint64_t k) { return static_cast<double>(k) / 1000.0; };
  const auto height_units = static_cast<std::uint64_t>(options.max_height * 1000.0);

  std::vector<RawDensity> out;
  for (std::size_t i = 0; i < options.players; ++i) {
    RawDensity d;
    d.kind = options.kind;
    const std::size_t pieces = 1 + below(options.max_pieces);
    std::set<std::uint64_t> interior;
    while (interior.size() + 1 < pieces) interior.insert(1 + below(999));
    d.breakpoints.push_back(0.0);
    for (const auto k : interior) d.breakpoints.push_back(thousandths(k));
    d.breakpoints.push_back(1.0);

    const std::size_t count = options.kind == DensityKind::PiecewiseConstant ? pieces : pieces + 1;
    do {
      d.values.clear();
      for (std::size_t k = 0; k < count; ++k) d.values.push_back(thousandths(below(height_units + 1)));
    } while (std::all_of(d.values.begin(), d.values.end(), [](double v) { return v == 0.0; }));
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace eqdiv
