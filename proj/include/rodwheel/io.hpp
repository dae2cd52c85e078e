#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rodwheel/sim.hpp"

namespace rodwheel {

/// Bad scenario file or CSV content.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse a JSON scenario document:
///   params      {m, g, r, mu, ell, legacy_potential}   (optional, defaults to 5, 9.81, 1, 1, 2)
///   initial_state  [10 numbers, canonical order]        (required)
///   controller  {kind, k_p, k_d, k_theta, a, v_ref, clamp} (optional, default none)
///   integration {dt, duration}                          (optional, default 0.01, 8)
///   output      {path, sample_stride}                   (optional)
///   audit       {energy, constraints}                   (optional booleans)
/// Gains given alongside kind case1/case2 start from that preset and turn it into custom.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

inline constexpr std::string_view kCsvHeader =
    "t,c1,c2,phi,theta,psi,beta,dphi,dtheta,dpsi,dbeta,u,E,lambda1,lambda2";

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double v);
double parse_double(std::string_view text);

/// Writes every stride-th sample, and always the last one.
void write_csv(std::ostream& os, const Trajectory& traj, int stride = 1);
void write_csv(const std::filesystem::path& path, const Trajectory& traj, int stride = 1);

std::vector<Sample> read_csv(std::istream& is);

}  // namespace rodwheel
