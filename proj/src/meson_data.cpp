#include "qmeson/meson_data.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qmeson {

using nlohmann::json;

std::string species_name(Species s) {
  switch (s) {
    case Species::K: return "K";
    case Species::D: return "D";
    case Species::Bd: return "Bd";
    case Species::Bs: return "Bs";
  }
  throw std::logic_error("species_name: bad enum");
}

Species species_from_name(const std::string& name) {
  for (Species s : kAllSpecies)
    if (species_name(s) == name) return s;
  throw std::invalid_argument("unknown species '" + name + "' (expected K, D, Bd or Bs)");
}

std::pair<Quantity, Quantity> widths_from_ratio(const Quantity& dgamma_over_gamma,
                                                const Quantity& tau) {
  const double r = dgamma_over_gamma.value;
  const double t = tau.value;
  if (t <= 0.0) throw std::domain_error("widths_from_ratio: mean lifetime must be positive");
  if (std::abs(r) >= 2.0)
    throw std::domain_error("widths_from_ratio: |dGamma/Gamma| must be < 2 for positive widths");

  const double gl = (2.0 + r) / (2.0 * t);
  const double gh = (2.0 - r) / (2.0 * t);
  const std::array<Quantity, 2> in{dgamma_over_gamma, tau};
  const std::array<double, 2> grad_l{1.0 / (2.0 * t), -gl / t};
  const std::array<double, 2> grad_h{-1.0 / (2.0 * t), -gh / t};
  return {propagate_with_gradient(gl, grad_l, in, "s^-1"),
          propagate_with_gradient(gh, grad_h, in, "s^-1")};
}

std::pair<Quantity, Quantity> widths_from_lifetimes(const Quantity& tau_light,
                                                    const Quantity& tau_heavy) {
  const auto invert = [](const Quantity& tau) {
    if (tau.value <= 0.0)
      throw std::domain_error("widths_from_lifetimes: lifetime must be positive");
    const std::array<Quantity, 1> in{tau};
    const std::array<double, 1> grad{-1.0 / (tau.value * tau.value)};
    return propagate_with_gradient(1.0 / tau.value, grad, in, "s^-1");
  };
  return {invert(tau_light), invert(tau_heavy)};
}

Quantity width_asymmetry(const MesonParams& params) {
  const double gl = params.gamma_light.value;
  const double gh = params.gamma_heavy.value;
  const double sum = gl + gh;
  const std::array<Quantity, 2> in{params.gamma_light, params.gamma_heavy};
  const std::array<double, 2> grad{2.0 * gh / (sum * sum), -2.0 * gl / (sum * sum)};
  return propagate_with_gradient((gl - gh) / sum, grad, in, "");
}

namespace {

void validate(const MesonParams& p) {
  if (p.gamma_light.value <= 0.0 || p.gamma_heavy.value <= 0.0)
    throw std::domain_error("meson params: decay rates must be positive");
  if (p.delta_m.value <= 0.0)
    throw std::domain_error("meson params: delta_m must be positive");
  if (p.species == Species::K) {
    // The K eigenstate widths differ by a factor ~571; a dataset that does
    // not reproduce that is mislabeled or corrupted.
    const double ratio = p.gamma_light.value / p.gamma_heavy.value;
    if (std::abs(ratio / 571.0 - 1.0) > 0.10)
      throw std::domain_error("meson params: K width ratio out of range, got " +
                              std::to_string(ratio));
  }
}

}  // namespace

MesonParams make_params(const RawObservables& raw) {
  const bool wants_lifetimes =
      raw.species == Species::K || raw.species == Species::Bs;
  if (wants_lifetimes != std::holds_alternative<LifetimeInput>(raw.input))
    throw std::invalid_argument(
        "make_params: " + species_name(raw.species) +
        (wants_lifetimes ? " requires lifetime inputs" : " requires width-ratio inputs"));

  MesonParams p;
  p.species = raw.species;
  p.delta_m = raw.delta_m;
  p.rest_mass = raw.rest_mass;
  if (const auto* lt = std::get_if<LifetimeInput>(&raw.input)) {
    std::tie(p.gamma_light, p.gamma_heavy) =
        widths_from_lifetimes(lt->tau_light, lt->tau_heavy);
  } else {
    const auto& wr = std::get<WidthRatioInput>(raw.input);
    std::tie(p.gamma_light, p.gamma_heavy) =
        widths_from_ratio(wr.dgamma_over_gamma, wr.mean_lifetime);
  }
  validate(p);
  return p;
}

namespace {

Quantity quantity_from_json(const json& j) {
  const double v = j.at("value").get<double>();
  const std::string unit = j.value("unit", "");
  if (j.contains("err_plus") || j.contains("err_minus"))
    return Quantity::asymmetric(v, j.at("err_plus").get<double>(),
                                j.at("err_minus").get<double>(), unit);
  return Quantity::symmetric(v, j.value("err", 0.0), unit);
}

json quantity_to_json(const Quantity& q) {
  json j{{"value", q.value}};
  if (q.symmetric_errors())
    j["err"] = q.err_plus();
  else {
    j["err_plus"] = q.err_plus();
    j["err_minus"] = q.err_minus();
  }
  if (!q.unit.empty()) j["unit"] = q.unit;
  return j;
}

}  // namespace

MesonDataset load_dataset(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("dataset: malformed JSON: ") + e.what());
  }

  MesonDataset ds;
  ds.schema_version = root.at("schema_version").get<int>();
  if (ds.schema_version != 1)
    throw std::runtime_error("dataset: unsupported schema_version " +
                             std::to_string(ds.schema_version));
  ds.source = root.value("source", "");

  const auto& species = root.at("species");
  for (Species s : kAllSpecies) {
    const auto name = species_name(s);
    if (!species.contains(name))
      throw std::runtime_error("dataset: missing species " + name);
    const auto& block = species.at(name);

    RawObservables raw;
    raw.species = s;
    raw.delta_m = quantity_from_json(block.at("delta_m"));
    Quantity rest_mev = quantity_from_json(block.at("rest_mass_mev"));
    raw.rest_mass = Quantity{rest_mev.value * kMevOverHbar,
                             rest_mev.dev_up * kMevOverHbar,
                             rest_mev.dev_down * kMevOverHbar, "hbar s^-1"};

    const std::string kind = block.at("input_kind").get<std::string>();
    if (kind == "lifetimes") {
      raw.input = LifetimeInput{quantity_from_json(block.at("tau_light")),
                                quantity_from_json(block.at("tau_heavy"))};
    } else if (kind == "width_ratio") {
      raw.input = WidthRatioInput{quantity_from_json(block.at("dgamma_over_gamma")),
                                  quantity_from_json(block.at("mean_lifetime"))};
    } else {
      throw std::runtime_error("dataset: unknown input_kind '" + kind + "'");
    }

    ds.raw[s] = raw;
    ds.params[s] = make_params(raw);
  }
  return ds;
}

MesonDataset load_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("dataset: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_dataset(buf.str());
}

MesonDataset resolve_dataset(const std::string& explicit_path) {
  if (!explicit_path.empty()) return load_dataset_file(explicit_path);
  if (const char* env = std::getenv("QMESON_DATASET"); env && *env)
    return load_dataset_file(env);
  return load_dataset(builtin_dataset_json());
}

std::string meson_params_to_json(const MesonParams& params) {
  json j{{"schema_version", 1},
         {"species", species_name(params.species)},
         {"gamma_light", quantity_to_json(params.gamma_light)},
         {"gamma_heavy", quantity_to_json(params.gamma_heavy)},
         {"delta_m", quantity_to_json(params.delta_m)},
         {"rest_mass", quantity_to_json(params.rest_mass)}};
  return j.dump(2);
}

MesonParams meson_params_from_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  MesonParams p;
  p.species = species_from_name(j.at("species").get<std::string>());
  p.gamma_light = quantity_from_json(j.at("gamma_light"));
  p.gamma_heavy = quantity_from_json(j.at("gamma_heavy"));
  p.delta_m = quantity_from_json(j.at("delta_m"));
  p.rest_mass = quantity_from_json(j.at("rest_mass"));
  return p;
}

}  // namespace qmeson
