#ifndef STOCHSCL_CLI_REGISTRY_HPP
#define STOCHSCL_CLI_REGISTRY_HPP

#include <functional>
#include <string>

#include "stochscl/core/models.hpp"

namespace stochscl::cli {

/// param(name, fallback) resolves a builder parameter from the config.
using ParamReader = std::function<double(const std::string&, double)>;

/// Throws ConfigError naming the offending key for unknown names.
core::FluxModel build_flux(const std::string& name, const ParamReader& param);
core::NoiseModel build_noise(const std::string& name, const ParamReader& param);
std::function<double(double)> build_u0(const std::string& name, const ParamReader& param);

/// Fixed-order text listing of every registered builder and its parameters;
/// byte-stable across runs.
std::string list_models();

}  // namespace stochscl::cli

#endif
