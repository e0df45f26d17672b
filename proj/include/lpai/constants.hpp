#pragma once

#include <numbers>

// CODATA 2018 values and Rb-87 D2 line data.
namespace lpai::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double boltzmann = 1.380649e-23;      // J/K
inline constexpr double bohr_magneton = 9.2740100783e-24;  // J/T
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg

inline constexpr double rb87_mass = 86.909180527 * atomic_mass_unit;
inline constexpr double rb87_d2_wavelength = 780.241e-9;  // m, vacuum
inline constexpr double rb87_d2_linewidth = two_pi * 6.0666e6;  // rad/s
inline constexpr double rb87_hyperfine_splitting = 6.834682610904e9;  // Hz

inline constexpr double gauss_per_cm = 1e-2;  // 1 G/cm in T/m

}  // namespace lpai::constants
