#pragma once

#include <map>
#include <string>
#include <utility>
#include <variant>

#include "qmeson/quantity.hpp"

namespace qmeson {

enum class Species { K, D, Bd, Bs };

std::string species_name(Species s);
Species species_from_name(const std::string& name);
inline constexpr Species kAllSpecies[] = {Species::K, Species::D, Species::Bd,
                                          Species::Bs};

/// 1 MeV expressed as hbar * s^-1 (E / hbar).
inline constexpr double kMevOverHbar = 1.519267e21;

/// Measured width-difference ratio plus mean lifetime (D, B_d inputs).
struct WidthRatioInput {
  Quantity dgamma_over_gamma;  // (Gamma_L - Gamma_H) / ((Gamma_L + Gamma_H)/2)
  Quantity mean_lifetime;      // s
};

/// Measured per-eigenstate mean lifetimes (K, B_s inputs).
struct LifetimeInput {
  Quantity tau_light;  // s
  Quantity tau_heavy;  // s
};

struct RawObservables {
  Species species = Species::K;
  std::variant<WidthRatioInput, LifetimeInput> input;
  Quantity delta_m;    // hbar s^-1
  Quantity rest_mass;  // hbar s^-1 (converted from MeV by the loader)
};

struct MesonParams {
  Species species = Species::K;
  Quantity gamma_light;  // s^-1
  Quantity gamma_heavy;  // s^-1
  Quantity delta_m;      // hbar s^-1
  Quantity rest_mass;    // hbar s^-1
};

/// Gamma_L = (2 + r)/(2 tau), Gamma_H = (2 - r)/(2 tau); errors first order
/// with asymmetric branches propagated coherently.
std::pair<Quantity, Quantity> widths_from_ratio(const Quantity& dgamma_over_gamma,
                                                const Quantity& tau);

/// Gamma = 1/tau, |dGamma| = dtau/tau^2.
std::pair<Quantity, Quantity> widths_from_lifetimes(const Quantity& tau_light,
                                                    const Quantity& tau_heavy);

/// (Gamma_L - Gamma_H)/(Gamma_L + Gamma_H) with propagated error.
Quantity width_asymmetry(const MesonParams& params);

/// Validates the raw block and derives decay rates.
MesonParams make_params(const RawObservables& raw);

struct MesonDataset {
  int schema_version = 0;
  std::string source;
  std::map<Species, RawObservables> raw;
  std::map<Species, MesonParams> params;

  const MesonParams& of(Species s) const { return params.at(s); }
};

MesonDataset load_dataset(const std::string& json_text);
MesonDataset load_dataset_file(const std::string& path);

/// The dataset compiled into the library (same content as data/mesons.json).
const std::string& builtin_dataset_json();

/// Resolution order: explicit path > QMESON_DATASET env var > builtin.
MesonDataset resolve_dataset(const std::string& explicit_path = "");

std::string meson_params_to_json(const MesonParams& params);
MesonParams meson_params_from_json(const std::string& json_text);

}  // namespace qmeson
