#pragma once

// Hartree atomic units everywhere inside the library. Conversions only at
// the boundary.

namespace pbo::units {

inline constexpr double kBohrPerAngstrom = 1.8897259886;
inline constexpr double kAuTimePerFs = 41.341374575751;
inline constexpr double kBoltzmannHaPerK = 3.166811563e-6;
inline constexpr double kElectronMassPerAmu = 1822.888486;
inline constexpr double kHartreePerWavenumber = 4.556335e-6;  // cm^-1 -> Ha
inline constexpr double kCelsiusOffset = 273.15;
inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double angstrom_to_bohr(double a) { return a * kBohrPerAngstrom; }
inline constexpr double bohr_to_angstrom(double b) { return b / kBohrPerAngstrom; }
inline constexpr double fs_to_au(double fs) { return fs * kAuTimePerFs; }
inline constexpr double amu_to_au(double m) { return m * kElectronMassPerAmu; }
inline constexpr double celsius_to_kelvin(double c) { return c + kCelsiusOffset; }

}  // namespace pbo::units
