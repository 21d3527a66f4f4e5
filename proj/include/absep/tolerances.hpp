#pragma once

namespace absep::tol {

// Numeric slack shared by every module. Strict inequalities are decided
// against `strict`; margins are always reported alongside verdicts.
inline constexpr double hermiticity = 1e-12;
inline constexpr double psd_floor = -1e-10;
inline constexpr double reconstruction = 1e-10;
inline constexpr double trace = 1e-12;
inline constexpr double imaginary_residue = 1e-10;
inline constexpr double unitarity = 1e-10;
inline constexpr double polar_trigger = 1e-8;
inline constexpr double zero_normalizer = 1e-12;
inline constexpr double strict = 1e-9;
inline constexpr double trace_preservation = 1e-10;
inline constexpr double jordan_dead_zone = 1e-12;

inline constexpr int jacobi_max_sweeps = 100;

}  // namespace absep::tol
