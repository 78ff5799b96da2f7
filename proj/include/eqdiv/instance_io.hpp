#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eqdiv/instance.hpp"
#include "eqdiv/measure.hpp"

namespace eqdiv {

/// A parsed instance file:
///
///   { "players": [ { "name": "alice",
///                    "density": { "kind": "piecewise_constant" | "piecewise_linear",
///                                 "breakpoints": [0, ..., 1],
///                                 "values": [...] } } ],
///     "sigma": [optional ints],
///     "tol": optional number }
struct InstanceFile {
  std::vector<std::string> names;
  std::vector<RawDensity> raw;
  Instance instance;
  std::optional<double> tol;
  /// One note per density that had to be rescaled to unit mass.
  std::vector<std::string> warnings;
};

/// Throws Error with ParseError (syntax, with line and column, or a bad
/// field, with its path) or ValidationError (density or sigma rejected).
InstanceFile parse_instance_text(std::string_view text);
InstanceFile parse_instance(const std::filesystem::path& path);

std::string_view kind_name(DensityKind kind) noexcept;

/// Serializes densities in the instance-file schema (pretty-printed JSON).
std::string format_instance(const std::vector<std::string>& names,
                            const std::vector<RawDensity>& densities,
                            const std::optional<Permutation>& sigma = std::nullopt,
                            std::optional<double> tol = std::nullopt);

struct RandomInstanceOptions {
  std::size_t players = 3;
  std::size_t max_pieces = 5;
  double max_height = 4.0;
  DensityKind kind = DensityKind::PiecewiseConstant;
};

/// Seeded random densities. Breakpoints and values are multiples of 1e-3,
/// so the output is short and survives a text round trip exactly. Every
/// density has positive mass. Identical seeds give identical output.
std::vector<RawDensity> random_densities(std::uint64_t seed, const RandomInstanceOptions& options);

}  // namespace eqdiv
