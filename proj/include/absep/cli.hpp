#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "absep/states.hpp"
#include "absep/unitaries.hpp"

namespace absep::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kDetected = 0;
inline constexpr int kError = 1;
inline constexpr int kInconclusive = 2;

struct UnitarySpec {
  enum class Kind { Named, Identity, Search, Haar, File } kind = Kind::Identity;
  NamedUnitary named = NamedUnitary::U1;
  std::optional<double> phi1, phi2;
  std::uint64_t seed = 0;
  std::string path;
};

/// paper:U1..U4[:phi1,phi2] | identity | search | haar:SEED | file:PATH
UnitarySpec parse_unitary_spec(const std::string& text);

/// Named states for `gen-state`: rho1, rho2, rho3, rho4, bell, maxmix4,
/// maxmix, isotropic, random, random-pure.
struct StateRequest {
  std::string name;
  double p = 1.0;
  double b = 1.5;
  int dim_a = 2;
  int dim_b = 2;
  std::uint64_t seed = 42;
};
DensityMatrix generate_state(const StateRequest& request);

/// Runs the command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace absep::cli
